//! Deterministic fixture generators.
//!
//! Everything takes an explicit RNG so that callers (the resolution-audit
//! witness, the test suites) stay reproducible; seed a `ChaCha8Rng` with a
//! fixed value and the byte stream is pinned.

use crate::graph::{AugmentedMetricGraph, Mesh, SubdivisionPoint, Vertex};
use crate::potential::{DiscreteMeasure, PlFunction};
use crate::scalar::{ratio, Scalar};
use rand::seq::SliceRandom;
use rand::Rng;

/// Random rational in `[-9, 9]` with denominator up to 9.
pub fn small_rational<S: Scalar>(rng: &mut impl Rng) -> S {
    ratio(rng.gen_range(-9..=9), rng.gen_range(1..=9))
}

/// Random positive rational with numerator and denominator up to 9.
pub fn small_positive_rational<S: Scalar>(rng: &mut impl Rng) -> S {
    ratio(rng.gen_range(1..=9), rng.gen_range(1..=9))
}

/// Random interior parameter `p/q` with `0 < p/q < 1`.
pub fn interior_parameter<S: Scalar>(rng: &mut impl Rng) -> S {
    let q = rng.gen_range(2..=16);
    ratio(rng.gen_range(1..q), q)
}

/// Random connected graph with at most `max_edges` edges (and at least one):
/// a random tree plus extra edges, which may be loops or parallels. All
/// vertices have genus 0.
pub fn random_connected_graph<S: Scalar>(
    rng: &mut impl Rng,
    max_edges: usize,
) -> AugmentedMetricGraph<S> {
    let max_edges = max_edges.max(1);
    let n = rng.gen_range(1..=max_edges.min(8));
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for i in 0..n {
        vertices.push(Vertex {
            id: format!("v{}", i + 1),
            genus: 0,
            picrank: 0,
        });
        if i > 0 {
            let parent = rng.gen_range(0..i);
            edges.push((i, parent));
        }
    }
    let extra = rng.gen_range(0..=max_edges - edges.len());
    for _ in 0..extra {
        edges.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    let edges = edges
        .into_iter()
        .enumerate()
        .map(|(i, (a, b))| {
            (
                format!("e{}", i + 1),
                format!("v{}", a + 1),
                format!("v{}", b + 1),
                small_positive_rational(rng),
            )
        })
        .collect();
    AugmentedMetricGraph::new(vertices, edges).expect("generated graph is valid")
}

/// Random 2-vertex-connected graph: a cycle with random chords (two
/// parallel edges when only two vertices are drawn). Dipole Green
/// functions on these attain their extrema exactly at the two support
/// points, with no flat branches.
pub fn random_biconnected_graph<S: Scalar>(
    rng: &mut impl Rng,
    max_edges: usize,
) -> AugmentedMetricGraph<S> {
    let max_edges = max_edges.max(2);
    let n = rng.gen_range(2..=max_edges.min(8));
    let vertices = (0..n)
        .map(|i| Vertex {
            id: format!("v{}", i + 1),
            genus: 0,
            picrank: 0,
        })
        .collect();
    let mut ends: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    if n == 2 {
        ends = vec![(0, 1), (1, 0)];
    }
    let chords = rng.gen_range(0..=max_edges - ends.len());
    for _ in 0..chords {
        ends.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    let edges = ends
        .into_iter()
        .enumerate()
        .map(|(i, (a, b))| {
            (
                format!("e{}", i + 1),
                format!("v{}", a + 1),
                format!("v{}", b + 1),
                small_positive_rational(rng),
            )
        })
        .collect();
    AugmentedMetricGraph::new(vertices, edges).expect("generated graph is valid")
}

/// Sprinkle positive genus (and Picard ranks) onto some vertices.
pub fn with_random_genus<S: Scalar>(
    rng: &mut impl Rng,
    graph: &AugmentedMetricGraph<S>,
) -> AugmentedMetricGraph<S> {
    let vertices = graph
        .vertices()
        .iter()
        .map(|v| {
            let genus = if rng.gen_bool(0.4) {
                rng.gen_range(1..=2)
            } else {
                0
            };
            Vertex {
                id: v.id.clone(),
                genus,
                picrank: if genus > 0 { rng.gen_range(0..=3) } else { 0 },
            }
        })
        .collect();
    rebuild(graph, vertices)
}

fn rebuild<S: Scalar>(
    graph: &AugmentedMetricGraph<S>,
    vertices: Vec<Vertex>,
) -> AugmentedMetricGraph<S> {
    let names: Vec<String> = vertices.iter().map(|v| v.id.clone()).collect();
    let edges = graph
        .edges()
        .iter()
        .map(|e| {
            (
                e.id.clone(),
                names[e.src].clone(),
                names[e.dst].clone(),
                e.length.clone(),
            )
        })
        .collect();
    AugmentedMetricGraph::new(vertices, edges).expect("rebuild preserves validity")
}

/// Random interior subdivision points, at most one random parameter per
/// pick (coincident picks collapse later).
pub fn random_subdivision_points<S: Scalar>(
    rng: &mut impl Rng,
    graph: &AugmentedMetricGraph<S>,
    count: usize,
) -> Vec<SubdivisionPoint<S>> {
    (0..count)
        .map(|_| SubdivisionPoint {
            edge: rng.gen_range(0..graph.edge_count()),
            t: interior_parameter(rng),
        })
        .collect()
}

/// Random piecewise-linear function on a mesh.
pub fn random_pl<S: Scalar>(rng: &mut impl Rng, mesh: &Mesh<S>) -> PlFunction<S> {
    PlFunction {
        values: (0..mesh.node_count())
            .map(|_| small_rational(rng))
            .collect(),
    }
}

/// Random rational measure of total mass zero, supported on mesh nodes.
pub fn random_mass_zero_measure<S: Scalar>(
    rng: &mut impl Rng,
    mesh: &Mesh<S>,
) -> DiscreteMeasure<S> {
    let n = mesh.node_count();
    let picks = rng.gen_range(2..=n.max(2).min(5));
    let mut nodes: Vec<usize> = (0..n).collect();
    nodes.shuffle(rng);
    nodes.truncate(picks.min(n));
    let mut atoms: Vec<(usize, S)> = Vec::new();
    let mut total = S::zero();
    for (i, &node) in nodes.iter().enumerate() {
        if i + 1 == nodes.len() {
            atoms.push((node, -total.clone()));
        } else {
            let w: S = small_rational(rng);
            total = total + w.clone();
            atoms.push((node, w));
        }
    }
    DiscreteMeasure::new(atoms)
}

/// Random measure guaranteed to have nonzero total mass.
pub fn random_nonzero_mass_measure<S: Scalar>(
    rng: &mut impl Rng,
    mesh: &Mesh<S>,
) -> DiscreteMeasure<S> {
    let mut mu = random_mass_zero_measure(rng, mesh);
    let bump: S = ratio(rng.gen_range(1..=9), rng.gen_range(1..=9));
    let node = rng.gen_range(0..mesh.node_count());
    mu = mu.add(&DiscreteMeasure::new(vec![(node, bump)]));
    debug_assert!(!mu.mass().is_zero());
    mu
}

/// The same graph with vertices and edges listed in a random order and
/// random edge orientations flipped.
pub fn random_permutation<S: Scalar>(
    rng: &mut impl Rng,
    graph: &AugmentedMetricGraph<S>,
) -> AugmentedMetricGraph<S> {
    let mut vertices: Vec<Vertex> = graph.vertices().to_vec();
    vertices.shuffle(rng);
    let names: Vec<String> = graph
        .vertices()
        .iter()
        .map(|v| v.id.clone())
        .collect();
    let mut edges: Vec<(String, String, String, S)> = graph
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = if rng.gen_bool(0.5) {
                (e.src, e.dst)
            } else {
                (e.dst, e.src)
            };
            (
                e.id.clone(),
                names[a].clone(),
                names[b].clone(),
                e.length.clone(),
            )
        })
        .collect();
    edges.shuffle(rng);
    AugmentedMetricGraph::new(vertices, edges).expect("permutation preserves validity")
}
