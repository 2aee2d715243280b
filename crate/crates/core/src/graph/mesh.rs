//! Subdivisions of a metric graph.
//!
//! A [`Mesh`] refines a graph at finitely many interior edge points. Nodes
//! are the original vertices followed by the interior points (sorted by edge
//! and parameter), segments are the resulting edge pieces oriented along
//! their parent edge. This canonical ordering is what makes every echelon
//! form downstream deterministic.

use super::{AugmentedMetricGraph, GraphError, Vertex};
use crate::scalar::{cmp, Scalar};
use thiserror::Error;

pub type NodeIx = usize;
pub type SegIx = usize;

/// An interior point of an edge, at fractional position `0 < t < 1` along
/// the edge orientation.
#[derive(Debug, Clone, PartialEq)]
pub struct SubdivisionPoint<S> {
    pub edge: usize,
    pub t: S,
}

#[derive(Debug, Clone, PartialEq)]
pub enum MeshNode<S> {
    Vertex(usize),
    Interior { edge: usize, t: S },
}

/// A piece of an edge between consecutive mesh nodes, oriented along the
/// parent edge (`t0 < t1`).
#[derive(Debug, Clone, PartialEq)]
pub struct MeshSegment<S> {
    pub edge: usize,
    pub src: NodeIx,
    pub dst: NodeIx,
    pub t0: S,
    pub t1: S,
    pub length: S,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MeshError {
    #[error("unknown edge index {0}")]
    UnknownEdge(usize),
    #[error("subdivision parameter out of range on edge `{0}` (need 0 < t < 1)")]
    ParameterOutOfRange(String),
}

#[derive(Debug, Clone)]
pub struct Mesh<S: Scalar> {
    graph: AugmentedMetricGraph<S>,
    points: Vec<SubdivisionPoint<S>>,
    nodes: Vec<MeshNode<S>>,
    segments: Vec<MeshSegment<S>>,
    /// Per node: incident segments with a flag telling whether the node is
    /// the source end. An unsubdivided loop contributes two incidences.
    incidences: Vec<Vec<(SegIx, bool)>>,
}

impl<S: Scalar> Mesh<S> {
    /// Mesh with no interior points.
    pub fn base(graph: AugmentedMetricGraph<S>) -> Self {
        Mesh::new(graph, Vec::new()).expect("empty point set is always valid")
    }

    /// Build the mesh refining `graph` at `points`. Coincident points
    /// collapse to a single node.
    pub fn new(
        graph: AugmentedMetricGraph<S>,
        mut points: Vec<SubdivisionPoint<S>>,
    ) -> Result<Self, MeshError> {
        for p in &points {
            let edge = graph
                .edges()
                .get(p.edge)
                .ok_or(MeshError::UnknownEdge(p.edge))?;
            if p.t <= S::zero() || p.t >= S::one() {
                return Err(MeshError::ParameterOutOfRange(edge.id.clone()));
            }
        }
        points.sort_by(|a, b| a.edge.cmp(&b.edge).then_with(|| cmp(&a.t, &b.t)));
        points.dedup_by(|a, b| a.edge == b.edge && a.t == b.t);

        let mut nodes: Vec<MeshNode<S>> = (0..graph.vertex_count()).map(MeshNode::Vertex).collect();
        let mut per_edge: Vec<Vec<(NodeIx, S)>> = vec![Vec::new(); graph.edge_count()];
        for p in &points {
            nodes.push(MeshNode::Interior {
                edge: p.edge,
                t: p.t.clone(),
            });
            per_edge[p.edge].push((nodes.len() - 1, p.t.clone()));
        }

        let mut segments = Vec::new();
        for (e, edge) in graph.edges().iter().enumerate() {
            let mut stops: Vec<(NodeIx, S)> = vec![(edge.src, S::zero())];
            stops.extend(per_edge[e].iter().cloned());
            stops.push((edge.dst, S::one()));
            for pair in stops.windows(2) {
                let (src, t0) = pair[0].clone();
                let (dst, t1) = pair[1].clone();
                let length = (t1.clone() - t0.clone()) * edge.length.clone();
                segments.push(MeshSegment {
                    edge: e,
                    src,
                    dst,
                    t0,
                    t1,
                    length,
                });
            }
        }

        let mut incidences = vec![Vec::new(); nodes.len()];
        for (s, seg) in segments.iter().enumerate() {
            incidences[seg.src].push((s, true));
            incidences[seg.dst].push((s, false));
        }

        Ok(Mesh {
            graph,
            points,
            nodes,
            segments,
            incidences,
        })
    }

    pub fn graph(&self) -> &AugmentedMetricGraph<S> {
        &self.graph
    }

    pub fn points(&self) -> &[SubdivisionPoint<S>] {
        &self.points
    }

    pub fn nodes(&self) -> &[MeshNode<S>] {
        &self.nodes
    }

    pub fn segments(&self) -> &[MeshSegment<S>] {
        &self.segments
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn segment_count(&self) -> usize {
        self.segments.len()
    }

    pub fn vertex_node(&self, v: usize) -> NodeIx {
        debug_assert!(v < self.graph.vertex_count());
        v
    }

    pub fn incidences(&self, n: NodeIx) -> &[(SegIx, bool)] {
        &self.incidences[n]
    }

    /// The mesh node sitting exactly at `(edge, t)`, if any. `t = 0` and
    /// `t = 1` resolve to the endpoint vertices.
    pub fn node_at(&self, edge: usize, t: &S) -> Option<NodeIx> {
        if *t == S::zero() {
            return Some(self.graph.edges()[edge].src);
        }
        if *t == S::one() {
            return Some(self.graph.edges()[edge].dst);
        }
        self.nodes.iter().position(|n| match n {
            MeshNode::Interior { edge: e, t: s } => *e == edge && s == t,
            MeshNode::Vertex(_) => false,
        })
    }

    /// A finer mesh containing both the existing and the extra points.
    pub fn refined(&self, extra: Vec<SubdivisionPoint<S>>) -> Result<Mesh<S>, MeshError> {
        let mut points = self.points.clone();
        points.extend(extra);
        Mesh::new(self.graph.clone(), points)
    }

    /// Human-readable node label: the vertex id, or `edge@t` for interior
    /// points.
    pub fn node_name(&self, n: NodeIx) -> String {
        match &self.nodes[n] {
            MeshNode::Vertex(v) => self.graph.vertices()[*v].id.clone(),
            MeshNode::Interior { edge, t } => {
                format!("{}@{}", self.graph.edges()[*edge].id, t)
            }
        }
    }

    /// Materialize the subdivision as a graph in its own right: every
    /// interior point becomes a degree-2 genus-0 vertex. Returns the graph
    /// together with the node labels, indexed like the mesh nodes.
    pub fn to_graph(&self) -> (AugmentedMetricGraph<S>, Vec<String>) {
        let mut names: Vec<String> = Vec::with_capacity(self.node_count());
        let taken: std::collections::HashSet<&str> = self
            .graph
            .vertices()
            .iter()
            .map(|v| v.id.as_str())
            .collect();
        for n in 0..self.node_count() {
            let mut name = self.node_name(n);
            while matches!(&self.nodes[n], MeshNode::Interior { .. }) && taken.contains(name.as_str())
            {
                name.push('\'');
            }
            names.push(name);
        }
        let vertices = (0..self.node_count())
            .map(|n| match &self.nodes[n] {
                MeshNode::Vertex(v) => self.graph.vertices()[*v].clone(),
                MeshNode::Interior { .. } => Vertex {
                    id: names[n].clone(),
                    genus: 0,
                    picrank: 0,
                },
            })
            .collect();
        let edges = self
            .segments
            .iter()
            .enumerate()
            .map(|(i, seg)| {
                let id = format!("{}#{}", self.graph.edges()[seg.edge].id, i);
                (
                    id,
                    names[seg.src].clone(),
                    names[seg.dst].clone(),
                    seg.length.clone(),
                )
            })
            .collect();
        let graph = AugmentedMetricGraph::new(vertices, edges)
            .expect("subdividing a valid graph yields a valid graph");
        (graph, names)
    }
}

/// Refine a graph at the given interior points.
///
/// The result has a degree-2 genus-0 vertex at each point; segment lengths
/// sum to the original edge lengths and the Betti number is unchanged.
pub fn subdivide<S: Scalar>(
    graph: &AugmentedMetricGraph<S>,
    points: Vec<SubdivisionPoint<S>>,
) -> Result<(AugmentedMetricGraph<S>, Vec<String>), GraphError> {
    let mesh = Mesh::new(graph.clone(), points).map_err(|e| match e {
        MeshError::UnknownEdge(_) => GraphError::UnknownVertex("edge index".into()),
        MeshError::ParameterOutOfRange(id) => GraphError::NonPositiveLength(id),
    })?;
    Ok(mesh.to_graph())
}
