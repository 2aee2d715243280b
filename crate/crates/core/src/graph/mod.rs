//! Augmented metric graphs: the dual graphs of semistable curve models.
//!
//! A graph carries a genus and a Picard rank at every vertex and a positive
//! length on every edge. Loops and parallel edges are allowed; the graph
//! must be connected. All data is immutable after construction.

mod mesh;
mod parse;
mod region;

pub use mesh::{subdivide, Mesh, MeshError, MeshNode, MeshSegment, NodeIx, SegIx, SubdivisionPoint};
pub use parse::{parse_rational, parse_skeleton, serialize_skeleton, ParseError};
pub use region::{extract_region, parse_region_literal, OpenSet, Region, RegionError};

use crate::dim::Dimension;
use crate::scalar::Scalar;
use serde::Serialize;
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

/// How the Picard groups of the positive-genus reduction components behave.
///
/// * `Torsion`: every component contributes rank 0 (residue field algebraic
///   over a finite field).
/// * `Complex`: every positive-genus component contributes infinite rank
///   (residue field the complex numbers).
/// * `Explicit`: each vertex contributes the rank recorded on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ResidueModel {
    Torsion,
    Complex,
    Explicit,
}

impl fmt::Display for ResidueModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ResidueModel::Torsion => "torsion",
            ResidueModel::Complex => "complex",
            ResidueModel::Explicit => "explicit",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for ResidueModel {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "torsion" => Ok(ResidueModel::Torsion),
            "complex" => Ok(ResidueModel::Complex),
            "explicit" => Ok(ResidueModel::Explicit),
            _ => Err(()),
        }
    }
}

/// Vertex datum: identifier, genus of the reduction component, and its
/// Picard rank (only meaningful under [`ResidueModel::Explicit`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub genus: u32,
    pub picrank: u32,
}

/// Edge datum: identifier, endpoint vertex indices (ordered; this fixes the
/// reference orientation) and a positive length.
#[derive(Debug, Clone, PartialEq)]
pub struct Edge<S> {
    pub id: String,
    pub src: usize,
    pub dst: usize,
    pub length: S,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph has no vertices")]
    Empty,
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("non-positive length on edge `{0}`")]
    NonPositiveLength(String),
    #[error("picrank on genus-0 vertex `{0}`")]
    PicrankOnGenusZero(String),
    #[error("disconnected graph")]
    Disconnected,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AugmentedMetricGraph<S> {
    vertices: Vec<Vertex>,
    edges: Vec<Edge<S>>,
    vertex_lookup: HashMap<String, usize>,
    edge_lookup: HashMap<String, usize>,
}

impl<S: Scalar> AugmentedMetricGraph<S> {
    /// Validate and build a graph. Endpoints are given by vertex id.
    pub fn new(
        vertices: Vec<Vertex>,
        edges: Vec<(String, String, String, S)>,
    ) -> Result<Self, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut vertex_lookup = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_lookup.insert(v.id.clone(), i).is_some() {
                return Err(GraphError::DuplicateId(v.id.clone()));
            }
            if v.genus == 0 && v.picrank > 0 {
                return Err(GraphError::PicrankOnGenusZero(v.id.clone()));
            }
        }
        let mut edge_lookup = HashMap::new();
        let mut resolved = Vec::with_capacity(edges.len());
        for (i, (id, a, b, length)) in edges.into_iter().enumerate() {
            if edge_lookup.insert(id.clone(), i).is_some() {
                return Err(GraphError::DuplicateId(id));
            }
            if length <= S::zero() {
                return Err(GraphError::NonPositiveLength(id));
            }
            let src = *vertex_lookup
                .get(&a)
                .ok_or_else(|| GraphError::UnknownVertex(a.clone()))?;
            let dst = *vertex_lookup
                .get(&b)
                .ok_or_else(|| GraphError::UnknownVertex(b.clone()))?;
            resolved.push(Edge {
                id,
                src,
                dst,
                length,
            });
        }
        let g = AugmentedMetricGraph {
            vertices,
            edges: resolved,
            vertex_lookup,
            edge_lookup,
        };
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge<S>] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_ix(&self, id: &str) -> Option<usize> {
        self.vertex_lookup.get(id).copied()
    }

    pub fn edge_ix(&self, id: &str) -> Option<usize> {
        self.edge_lookup.get(id).copied()
    }

    /// Number of edge-endpoint incidences at a vertex; a loop counts twice.
    pub fn valence(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| (e.src == v) as usize + (e.dst == v) as usize)
            .sum()
    }

    /// First Betti number `E - V + 1` of the connected graph.
    pub fn betti(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count()
    }

    /// Vertices with positive genus, in input order.
    pub fn positive_genus_vertices(&self) -> Vec<&str> {
        self.vertices
            .iter()
            .filter(|v| v.genus > 0)
            .map(|v| v.id.as_str())
            .collect()
    }

    /// Total Picard rank of the positive-genus reduction components under
    /// the given residue model.
    pub fn picard_rank_sum(&self, model: ResidueModel) -> Dimension {
        match model {
            ResidueModel::Torsion => Dimension::Finite(0),
            ResidueModel::Complex => {
                if self.vertices.iter().any(|v| v.genus > 0) {
                    Dimension::Infinite
                } else {
                    Dimension::Finite(0)
                }
            }
            ResidueModel::Explicit => Dimension::Finite(
                self.vertices
                    .iter()
                    .filter(|v| v.genus > 0)
                    .map(|v| v.picrank as usize)
                    .sum(),
            ),
        }
    }

    /// Picard rank contributed by a subset of vertices (used for scope-local
    /// duality obstructions).
    pub fn picard_rank_over<'a>(
        &self,
        vertex_ixs: impl Iterator<Item = usize>,
        model: ResidueModel,
    ) -> Dimension {
        let mut total = Dimension::Finite(0);
        for v in vertex_ixs {
            let vertex = &self.vertices[v];
            if vertex.genus == 0 {
                continue;
            }
            total = total
                + match model {
                    ResidueModel::Torsion => Dimension::Finite(0),
                    ResidueModel::Complex => Dimension::Infinite,
                    ResidueModel::Explicit => Dimension::Finite(vertex.picrank as usize),
                };
        }
        total
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for e in &self.edges {
                for (a, b) in [(e.src, e.dst), (e.dst, e.src)] {
                    if a == v && !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

#[cfg(test)]
pub(crate) mod testutil {
    use super::*;

    /// Terse builder for test graphs: vertices as `(id, genus, picrank)`,
    /// edges as `(id, src, dst, numerator, denominator)`.
    pub fn graph<S: Scalar>(
        vertices: &[(&str, u32, u32)],
        edges: &[(&str, &str, &str, i64, i64)],
    ) -> AugmentedMetricGraph<S> {
        AugmentedMetricGraph::new(
            vertices
                .iter()
                .map(|&(id, genus, picrank)| Vertex {
                    id: id.into(),
                    genus,
                    picrank,
                })
                .collect(),
            edges
                .iter()
                .map(|&(id, a, b, p, q)| {
                    (
                        id.to_string(),
                        a.to_string(),
                        b.to_string(),
                        crate::scalar::ratio(p, q),
                    )
                })
                .collect(),
        )
        .expect("valid test graph")
    }

    /// One vertex, one loop of length 2.
    pub fn circle<S: Scalar>() -> AugmentedMetricGraph<S> {
        graph(&[("v", 0, 0)], &[("e", "v", "v", 2, 1)])
    }

    /// Two vertices joined by three parallel edges.
    pub fn theta<S: Scalar>() -> AugmentedMetricGraph<S> {
        graph(
            &[("v1", 0, 0), ("v2", 0, 0)],
            &[
                ("e1", "v1", "v2", 1, 1),
                ("e2", "v1", "v2", 1, 1),
                ("e3", "v1", "v2", 3, 2),
            ],
        )
    }

    /// Two loops joined by a bridge.
    pub fn dumbbell<S: Scalar>() -> AugmentedMetricGraph<S> {
        graph(
            &[("v1", 0, 0), ("v2", 0, 0)],
            &[
                ("l1", "v1", "v1", 1, 1),
                ("b", "v1", "v2", 2, 1),
                ("l2", "v2", "v2", 1, 1),
            ],
        )
    }

    /// Path on two vertices, length 1.
    pub fn path<S: Scalar>() -> AugmentedMetricGraph<S> {
        graph(&[("v1", 0, 0), ("v2", 0, 0)], &[("e", "v1", "v2", 1, 1)])
    }

    /// Star with `k` spokes of length 1 around a center `c`.
    pub fn star<S: Scalar>(k: usize) -> AugmentedMetricGraph<S> {
        let mut vertices = vec![("c".to_string(), 0, 0)];
        let mut edges = Vec::new();
        for i in 0..k {
            vertices.push((format!("w{}", i + 1), 0, 0));
            edges.push((
                format!("s{}", i + 1),
                "c".to_string(),
                format!("w{}", i + 1),
            ));
        }
        AugmentedMetricGraph::new(
            vertices
                .into_iter()
                .map(|(id, genus, picrank)| Vertex {
                    id,
                    genus,
                    picrank,
                })
                .collect(),
            edges
                .into_iter()
                .map(|(id, a, b)| (id, a, b, crate::scalar::int(1)))
                .collect(),
        )
        .unwrap()
    }
}
