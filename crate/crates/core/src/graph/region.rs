//! Open subsets of a subdivided metric graph.
//!
//! An [`OpenSet`] is a union of whole nodes and open segments such that a
//! node brings along every incident segment; this is exactly the shape of a
//! connected component of the graph minus finitely many interior cut
//! points. Segments may dangle: an endpoint outside the set is a boundary
//! incidence, and a cut point reached from both sides counts twice.

use super::mesh::{Mesh, NodeIx, SegIx, SubdivisionPoint};
use super::AugmentedMetricGraph;
use crate::scalar::Scalar;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RegionError {
    #[error("unknown seed vertex `{0}`")]
    UnknownSeed(String),
    #[error("seed lies on a cut point")]
    SeedOnCut,
    #[error("region is empty")]
    EmptyRegion,
    #[error("invalid cut: {0}")]
    BadCut(String),
    #[error("region is not strictly simple")]
    NotStrictlySimple,
}

/// A set of nodes and segments, open in the metric-graph topology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenSet {
    nodes: Vec<bool>,
    segments: Vec<bool>,
}

impl OpenSet {
    pub fn empty<S: Scalar>(mesh: &Mesh<S>) -> Self {
        OpenSet {
            nodes: vec![false; mesh.node_count()],
            segments: vec![false; mesh.segment_count()],
        }
    }

    /// The whole graph as a scope.
    pub fn whole<S: Scalar>(mesh: &Mesh<S>) -> Self {
        OpenSet {
            nodes: vec![true; mesh.node_count()],
            segments: vec![true; mesh.segment_count()],
        }
    }

    pub fn from_parts(nodes: Vec<bool>, segments: Vec<bool>) -> Self {
        OpenSet { nodes, segments }
    }

    pub fn has_node(&self, n: NodeIx) -> bool {
        self.nodes[n]
    }

    pub fn has_segment(&self, s: SegIx) -> bool {
        self.segments[s]
    }

    pub fn node_ixs(&self) -> impl Iterator<Item = NodeIx> + '_ {
        self.nodes
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i)
    }

    pub fn seg_ixs(&self) -> impl Iterator<Item = SegIx> + '_ {
        self.segments
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i)
    }

    pub fn is_empty(&self) -> bool {
        !self.nodes.iter().any(|&b| b) && !self.segments.iter().any(|&b| b)
    }

    /// Whether every in-set node has all its incident segments in the set.
    pub fn is_open<S: Scalar>(&self, mesh: &Mesh<S>) -> bool {
        self.node_ixs()
            .all(|n| mesh.incidences(n).iter().all(|&(s, _)| self.segments[s]))
    }

    pub fn intersection(&self, other: &OpenSet) -> OpenSet {
        OpenSet {
            nodes: self
                .nodes
                .iter()
                .zip(&other.nodes)
                .map(|(a, b)| a & b)
                .collect(),
            segments: self
                .segments
                .iter()
                .zip(&other.segments)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn union(&self, other: &OpenSet) -> OpenSet {
        OpenSet {
            nodes: self
                .nodes
                .iter()
                .zip(&other.nodes)
                .map(|(a, b)| a | b)
                .collect(),
            segments: self
                .segments
                .iter()
                .zip(&other.segments)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    /// Boundary incidences: pairs of an in-set segment and an endpoint that
    /// is not in the set. A segment missing both endpoints contributes two.
    pub fn boundary<S: Scalar>(&self, mesh: &Mesh<S>) -> Vec<(SegIx, NodeIx)> {
        let mut out = Vec::new();
        for s in self.seg_ixs() {
            let seg = &mesh.segments()[s];
            if !self.nodes[seg.src] {
                out.push((s, seg.src));
            }
            if !self.nodes[seg.dst] {
                out.push((s, seg.dst));
            }
        }
        out
    }

    pub fn boundary_count<S: Scalar>(&self, mesh: &Mesh<S>) -> usize {
        self.boundary(mesh).len()
    }

    /// Number of independent cycles lying entirely inside the set (over the
    /// core subgraph of segments with both endpoints in the set).
    pub fn cycle_rank<S: Scalar>(&self, mesh: &Mesh<S>) -> usize {
        let mut uf = UnionFind::new(mesh.node_count());
        let mut extra = 0;
        for s in self.seg_ixs() {
            let seg = &mesh.segments()[s];
            if self.nodes[seg.src] && self.nodes[seg.dst] && !uf.union(seg.src, seg.dst) {
                extra += 1;
            }
        }
        extra
    }

    /// Connected components; two cells are connected when they share an
    /// in-set node.
    pub fn components<S: Scalar>(&self, mesh: &Mesh<S>) -> Vec<OpenSet> {
        let mut uf = UnionFind::new(mesh.node_count() + mesh.segment_count());
        let seg_cell = |s: SegIx| mesh.node_count() + s;
        for s in self.seg_ixs() {
            let seg = &mesh.segments()[s];
            if self.nodes[seg.src] {
                uf.union(seg_cell(s), seg.src);
            }
            if self.nodes[seg.dst] {
                uf.union(seg_cell(s), seg.dst);
            }
        }
        let mut roots: Vec<usize> = Vec::new();
        let mut out: Vec<OpenSet> = Vec::new();
        let root_slot = |root: usize, roots: &mut Vec<usize>, out: &mut Vec<OpenSet>| {
            if let Some(pos) = roots.iter().position(|&r| r == root) {
                pos
            } else {
                roots.push(root);
                out.push(OpenSet {
                    nodes: vec![false; self.nodes.len()],
                    segments: vec![false; self.segments.len()],
                });
                roots.len() - 1
            }
        };
        for n in self.node_ixs() {
            let slot = root_slot(uf.find(n), &mut roots, &mut out);
            out[slot].nodes[n] = true;
        }
        for s in self.seg_ixs() {
            let slot = root_slot(uf.find(seg_cell(s)), &mut roots, &mut out);
            out[slot].segments[s] = true;
        }
        out
    }

    /// Components without boundary (whole compact pieces of the graph).
    pub fn compact_component_count<S: Scalar>(&self, mesh: &Mesh<S>) -> usize {
        self.components(mesh)
            .iter()
            .filter(|c| c.boundary_count(mesh) == 0)
            .count()
    }

    /// Transport the set onto a finer mesh of the same graph. Every cell of
    /// the fine mesh lies inside a unique cell of the coarse mesh and
    /// inherits its membership.
    pub fn refine_to<S: Scalar>(&self, coarse: &Mesh<S>, fine: &Mesh<S>) -> OpenSet {
        use super::mesh::MeshNode;
        let coarse_seg_containing = |edge: usize, t0: &S, t1: &S| -> SegIx {
            coarse
                .segments()
                .iter()
                .position(|seg| seg.edge == edge && seg.t0 <= *t0 && *t1 <= seg.t1)
                .expect("fine segment must lie inside a coarse segment")
        };
        let nodes = fine
            .nodes()
            .iter()
            .map(|n| match n {
                MeshNode::Vertex(v) => self.nodes[coarse.vertex_node(*v)],
                MeshNode::Interior { edge, t } => match coarse.node_at(*edge, t) {
                    Some(cn) => self.nodes[cn],
                    None => self.segments[coarse_seg_containing(*edge, t, t)],
                },
            })
            .collect();
        let segments = fine
            .segments()
            .iter()
            .map(|seg| self.segments[coarse_seg_containing(seg.edge, &seg.t0, &seg.t1)])
            .collect();
        OpenSet { nodes, segments }
    }
}

/// A seeded region: the connected component of the graph minus the cut
/// points that contains the seed vertex.
#[derive(Debug, Clone)]
pub struct Region {
    pub seed: NodeIx,
    pub cut_nodes: Vec<NodeIx>,
    pub set: OpenSet,
    /// Boundary incidences `k`; a cut point reached from both sides counts
    /// twice.
    pub boundary_count: usize,
    /// True when the region is a tree with at least one boundary leg, so
    /// that its closure is the one-point union of `k` half-open intervals
    /// up to proper homotopy.
    pub strictly_simple: bool,
}

impl Region {
    /// Extract the component of `seed` on a mesh whose cut nodes are given
    /// explicitly (they must be mesh nodes).
    pub fn extract_on<S: Scalar>(
        mesh: &Mesh<S>,
        seed: NodeIx,
        cut_nodes: &[NodeIx],
    ) -> Result<Region, RegionError> {
        if cut_nodes.contains(&seed) {
            return Err(RegionError::SeedOnCut);
        }
        let is_cut = {
            let mut v = vec![false; mesh.node_count()];
            for &c in cut_nodes {
                v[c] = true;
            }
            v
        };
        let mut set = OpenSet::empty(mesh);
        let mut queue = vec![seed];
        set.nodes[seed] = true;
        while let Some(n) = queue.pop() {
            for &(s, _) in mesh.incidences(n) {
                set.segments[s] = true;
                let seg = &mesh.segments()[s];
                for other in [seg.src, seg.dst] {
                    if !is_cut[other] && !set.nodes[other] {
                        set.nodes[other] = true;
                        queue.push(other);
                    }
                }
            }
        }
        if set.is_empty() {
            return Err(RegionError::EmptyRegion);
        }
        debug_assert!(set.is_open(mesh));
        let boundary_count = set.boundary_count(mesh);
        let strictly_simple = set.cycle_rank(mesh) == 0 && boundary_count >= 1;
        Ok(Region {
            seed,
            cut_nodes: cut_nodes.to_vec(),
            set,
            boundary_count,
            strictly_simple,
        })
    }
}

/// Parse a region literal `seed=v1 cut=e1:1/3 cut=e2:1/2`.
pub fn parse_region_literal<S: Scalar>(
    graph: &AugmentedMetricGraph<S>,
    text: &str,
) -> Result<(String, Vec<SubdivisionPoint<S>>), RegionError> {
    let mut seed: Option<String> = None;
    let mut cuts = Vec::new();
    for tok in text.split_whitespace() {
        if let Some(v) = tok.strip_prefix("seed=") {
            if seed.replace(v.to_string()).is_some() {
                return Err(RegionError::BadCut("duplicate seed".into()));
            }
        } else if let Some(c) = tok.strip_prefix("cut=") {
            let (edge_id, t) = c
                .split_once(':')
                .ok_or_else(|| RegionError::BadCut(format!("expected `cut=edge:t` in `{}`", tok)))?;
            let edge = graph
                .edge_ix(edge_id)
                .ok_or_else(|| RegionError::BadCut(format!("unknown edge `{}`", edge_id)))?;
            let t: S = crate::graph::parse_rational(t)
                .ok_or_else(|| RegionError::BadCut(format!("bad parameter `{}`", t)))?;
            cuts.push(SubdivisionPoint { edge, t });
        } else {
            return Err(RegionError::BadCut(format!("unexpected token `{}`", tok)));
        }
    }
    let seed = seed.ok_or_else(|| RegionError::BadCut("missing seed=".into()))?;
    Ok((seed, cuts))
}

/// Build the mesh subdividing `graph` at the cut points and extract the
/// region of `seed_id`.
pub fn extract_region<S: Scalar>(
    graph: &AugmentedMetricGraph<S>,
    seed_id: &str,
    cuts: Vec<SubdivisionPoint<S>>,
) -> Result<(Mesh<S>, Region), RegionError> {
    let seed = graph
        .vertex_ix(seed_id)
        .ok_or_else(|| RegionError::UnknownSeed(seed_id.to_string()))?;
    let mesh =
        Mesh::new(graph.clone(), cuts.clone()).map_err(|e| RegionError::BadCut(e.to_string()))?;
    let cut_nodes: Vec<NodeIx> = cuts
        .iter()
        .map(|p| {
            mesh.node_at(p.edge, &p.t)
                .expect("cut points are mesh nodes by construction")
        })
        .collect();
    let region = Region::extract_on(&mesh, mesh.vertex_node(seed), &cut_nodes)?;
    Ok((mesh, region))
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when the two were already connected.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}
