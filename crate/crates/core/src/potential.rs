//! Piecewise-linear potential theory on a subdivided metric graph.
//!
//! The measure-valued Laplacian `ddc` sends a PL function to the atomic
//! measure of outgoing-slope sums; its kernel on a compact connected graph
//! is the constants and its cokernel is detected by total mass. Green
//! functions are solved exactly, pinned to zero at a basepoint.

use crate::graph::{AugmentedMetricGraph, Mesh, NodeIx, SubdivisionPoint};
use crate::linalg::Matrix;
use crate::scalar::{cmp, Scalar};
use thiserror::Error;

/// A piecewise-linear function: one value per mesh node, interpolated
/// affinely along each segment.
#[derive(Debug, Clone, PartialEq)]
pub struct PlFunction<S> {
    pub values: Vec<S>,
}

impl<S: Scalar> PlFunction<S> {
    pub fn zero(mesh: &Mesh<S>) -> Self {
        PlFunction {
            values: vec![S::zero(); mesh.node_count()],
        }
    }

    pub fn constant(mesh: &Mesh<S>, c: S) -> Self {
        PlFunction {
            values: vec![c; mesh.node_count()],
        }
    }

    pub fn scale(&self, a: &S) -> Self {
        PlFunction {
            values: self.values.iter().map(|v| v.clone() * a.clone()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        PlFunction {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        PlFunction {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    /// Values at the nodes of a coarser mesh this function refines.
    pub fn restrict_to(&self, fine: &Mesh<S>, coarse: &Mesh<S>) -> PlFunction<S> {
        use crate::graph::MeshNode;
        let values = coarse
            .nodes()
            .iter()
            .map(|n| match n {
                MeshNode::Vertex(v) => self.values[fine.vertex_node(*v)].clone(),
                MeshNode::Interior { edge, t } => {
                    let ix = fine
                        .node_at(*edge, t)
                        .expect("coarse node must exist in the finer mesh");
                    self.values[ix].clone()
                }
            })
            .collect();
        PlFunction { values }
    }
}

/// A finite atomic measure supported on mesh nodes. Atoms are kept sorted
/// by node with zero weights dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteMeasure<S> {
    atoms: Vec<(NodeIx, S)>,
}

impl<S: Scalar> DiscreteMeasure<S> {
    pub fn new(atoms: Vec<(NodeIx, S)>) -> Self {
        let mut merged: Vec<(NodeIx, S)> = Vec::new();
        let mut atoms = atoms;
        atoms.sort_by_key(|(n, _)| *n);
        for (n, w) in atoms {
            match merged.last_mut() {
                Some((m, acc)) if *m == n => {
                    *acc = acc.clone() + w;
                }
                _ => merged.push((n, w)),
            }
        }
        merged.retain(|(_, w)| !w.is_zero());
        DiscreteMeasure { atoms: merged }
    }

    pub fn zero() -> Self {
        DiscreteMeasure { atoms: Vec::new() }
    }

    pub fn atoms(&self) -> &[(NodeIx, S)] {
        &self.atoms
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn mass(&self) -> S {
        self.atoms.iter().map(|(_, w)| w.clone()).sum()
    }

    pub fn weight_at(&self, n: NodeIx) -> S {
        self.atoms
            .iter()
            .find(|(m, _)| *m == n)
            .map(|(_, w)| w.clone())
            .unwrap_or_else(S::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        DiscreteMeasure::new(atoms)
    }

    pub fn scale(&self, a: &S) -> Self {
        DiscreteMeasure::new(
            self.atoms
                .iter()
                .map(|(n, w)| (*n, w.clone() * a.clone()))
                .collect(),
        )
    }

    pub fn to_dense(&self, len: usize) -> Vec<S> {
        let mut out = vec![S::zero(); len];
        for (n, w) in &self.atoms {
            out[*n] = w.clone();
        }
        out
    }

    pub fn from_dense(values: &[S]) -> Self {
        DiscreteMeasure::new(
            values
                .iter()
                .enumerate()
                .map(|(n, w)| (n, w.clone()))
                .collect(),
        )
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum PotentialError {
    #[error("no solution: total mass nonzero")]
    NonzeroMass,
    #[error("unknown node `{0}`")]
    UnknownSite(String),
    #[error("bad measure literal: {0}")]
    BadLiteral(String),
}

/// The measure-valued Laplacian: the atom at each node is the sum of the
/// outgoing slopes of `f` there.
pub fn ddc<S: Scalar>(mesh: &Mesh<S>, f: &PlFunction<S>) -> DiscreteMeasure<S> {
    assert_eq!(f.values.len(), mesh.node_count());
    let mut weights = vec![S::zero(); mesh.node_count()];
    for (n, w) in weights.iter_mut().enumerate() {
        for &(s, at_src) in mesh.incidences(n) {
            let seg = &mesh.segments()[s];
            let (here, there) = if at_src {
                (seg.src, seg.dst)
            } else {
                (seg.dst, seg.src)
            };
            let slope =
                (f.values[there].clone() - f.values[here].clone()) / seg.length.clone();
            *w = w.clone() + slope;
        }
    }
    DiscreteMeasure::from_dense(&weights)
}

/// Matrix of `ddc` in the node basis: row `n` gives the atom at node `n`.
pub fn ddc_matrix<S: Scalar>(mesh: &Mesh<S>) -> Matrix<S> {
    let n = mesh.node_count();
    let mut m: Matrix<S> = Matrix::zero(n, n);
    for seg in mesh.segments() {
        let c = S::one() / seg.length.clone();
        // contribution of the segment to the atoms at both of its ends;
        // for a loop segment the two cancel, as they should
        m[(seg.src, seg.dst)] = m[(seg.src, seg.dst)].clone() + c.clone();
        m[(seg.src, seg.src)] = m[(seg.src, seg.src)].clone() - c.clone();
        m[(seg.dst, seg.src)] = m[(seg.dst, seg.src)].clone() + c.clone();
        m[(seg.dst, seg.dst)] = m[(seg.dst, seg.dst)].clone() - c;
    }
    m
}

/// Exact Green-function solve: the unique PL function with `ddc f = mu` and
/// `f(basepoint) = 0`. Fails exactly when the total mass is nonzero.
pub fn green_solve<S: Scalar>(
    mesh: &Mesh<S>,
    mu: &DiscreteMeasure<S>,
    basepoint: NodeIx,
) -> Result<PlFunction<S>, PotentialError> {
    if !mu.mass().is_zero() {
        return Err(PotentialError::NonzeroMass);
    }
    let n = mesh.node_count();
    let mut system = ddc_matrix(mesh);
    let mut rhs = mu.to_dense(n);
    // replace the basepoint equation by the pin `f(basepoint) = 0`
    for j in 0..n {
        system[(basepoint, j)] = S::zero();
    }
    system[(basepoint, basepoint)] = S::one();
    rhs[basepoint] = S::zero();
    let values = system
        .solve(&rhs)
        .expect("pinned Laplacian of a connected graph is invertible");
    let f = PlFunction { values };
    debug_assert_eq!(&ddc(mesh, &f), mu);
    Ok(f)
}

/// Basis of the space of harmonic functions (`ddc f = 0`) on the compact
/// graph. For a connected graph this is one constant function.
pub fn harmonic_space<S: Scalar>(mesh: &Mesh<S>) -> Vec<PlFunction<S>> {
    ddc_matrix(mesh)
        .kernel_basis()
        .into_iter()
        .map(|values| PlFunction { values })
        .collect()
}

/// Dimension of the cokernel of `ddc` on the compact graph, computed by
/// rank. Cross-checked by the audit witness: mass-zero measures solve,
/// nonzero-mass measures are rejected.
pub fn ddc_cokernel_dim<S: Scalar>(mesh: &Mesh<S>) -> usize {
    mesh.node_count() - ddc_matrix(mesh).rank()
}

/// Report of the kernel/cokernel audit of `0 → H → L⁰ → L¹ → 0`.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ResolutionAudit {
    pub ker_dim: usize,
    pub coker_dim: usize,
    /// Random mass-zero measures solved and round-tripped exactly.
    pub witness_solved: usize,
    /// Random nonzero-mass measures rejected by the solver.
    pub witness_rejected: usize,
    pub pass: bool,
}

/// Compute kernel and cokernel dimensions of `ddc` and exercise the solver
/// on random witnesses (seeded, so the report is reproducible).
pub fn resolution_audit<S: Scalar>(mesh: &Mesh<S>) -> ResolutionAudit {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    let ker_dim = harmonic_space(mesh).len();
    let coker_dim = ddc_cokernel_dim(mesh);
    let mut witness_solved = 0;
    let mut witness_rejected = 0;
    let trials = 5;
    for _ in 0..trials {
        let mu = crate::gen::random_mass_zero_measure(&mut rng, mesh);
        if let Ok(f) = green_solve(mesh, &mu, 0) {
            if ddc(mesh, &f) == mu {
                witness_solved += 1;
            }
        }
        let nu = crate::gen::random_nonzero_mass_measure(&mut rng, mesh);
        if green_solve(mesh, &nu, 0) == Err(PotentialError::NonzeroMass) {
            witness_rejected += 1;
        }
    }
    let pass = ker_dim == 1
        && coker_dim == 1
        && witness_solved == trials
        && witness_rejected == trials;
    ResolutionAudit {
        ker_dim,
        coker_dim,
        witness_solved,
        witness_rejected,
        pass,
    }
}

/// A point of the graph a measure atom can sit on.
#[derive(Debug, Clone, PartialEq)]
pub enum Site<S> {
    Vertex(String),
    EdgePoint { edge: String, t: S },
}

impl<S: Scalar> Site<S> {
    /// Parse `v1` or `e2@1/3`.
    pub fn parse(tok: &str) -> Result<Self, PotentialError> {
        match tok.split_once('@') {
            None => Ok(Site::Vertex(tok.to_string())),
            Some((edge, t)) => {
                let t: S = crate::graph::parse_rational(t)
                    .ok_or_else(|| PotentialError::BadLiteral(format!("bad parameter `{}`", t)))?;
                if t <= S::zero() || t >= S::one() {
                    return Err(PotentialError::BadLiteral(format!(
                        "parameter out of range in `{}`",
                        tok
                    )));
                }
                Ok(Site::EdgePoint {
                    edge: edge.to_string(),
                    t,
                })
            }
        }
    }
}

/// Parse a measure literal `v1:1 e2@1/3:-1` into site/weight pairs.
pub fn parse_measure_literal<S: Scalar>(text: &str) -> Result<Vec<(Site<S>, S)>, PotentialError> {
    let mut atoms = Vec::new();
    for tok in text.split_whitespace() {
        let (site, weight) = tok
            .rsplit_once(':')
            .ok_or_else(|| PotentialError::BadLiteral(format!("expected `site:weight` in `{}`", tok)))?;
        let w: S = crate::graph::parse_rational(weight)
            .ok_or_else(|| PotentialError::BadLiteral(format!("bad weight `{}`", weight)))?;
        atoms.push((Site::parse(site)?, w));
    }
    Ok(atoms)
}

/// A Green solve together with the mesh it lives on.
#[derive(Debug, Clone)]
pub struct GreenSolution<S: Scalar> {
    pub mesh: Mesh<S>,
    pub measure: DiscreteMeasure<S>,
    pub function: PlFunction<S>,
    pub basepoint: NodeIx,
}

/// Solve `ddc f = mu` at graph level: atoms at edge-interior sites trigger
/// subdivision there first.
pub fn green_solve_on_graph<S: Scalar>(
    graph: &AugmentedMetricGraph<S>,
    atoms: &[(Site<S>, S)],
    basepoint: Option<&Site<S>>,
) -> Result<GreenSolution<S>, PotentialError> {
    let mut points = Vec::new();
    let mut site_point = |site: &Site<S>| -> Result<(), PotentialError> {
        if let Site::EdgePoint { edge, t } = site {
            let e = graph
                .edge_ix(edge)
                .ok_or_else(|| PotentialError::UnknownSite(edge.clone()))?;
            points.push(SubdivisionPoint {
                edge: e,
                t: t.clone(),
            });
        }
        Ok(())
    };
    for (site, _) in atoms {
        site_point(site)?;
    }
    if let Some(site) = basepoint {
        site_point(site)?;
    }
    let mesh = Mesh::new(graph.clone(), points).expect("validated interior parameters");
    let resolve = |site: &Site<S>| -> Result<NodeIx, PotentialError> {
        match site {
            Site::Vertex(id) => graph
                .vertex_ix(id)
                .map(|v| mesh.vertex_node(v))
                .ok_or_else(|| PotentialError::UnknownSite(id.clone())),
            Site::EdgePoint { edge, t } => {
                let e = graph
                    .edge_ix(edge)
                    .ok_or_else(|| PotentialError::UnknownSite(edge.clone()))?;
                Ok(mesh.node_at(e, t).expect("site was added to the mesh"))
            }
        }
    };
    let measure = DiscreteMeasure::new(
        atoms
            .iter()
            .map(|(site, w)| resolve(site).map(|n| (n, w.clone())))
            .collect::<Result<Vec<_>, _>>()?,
    );
    let base = match basepoint {
        Some(site) => resolve(site)?,
        None => 0,
    };
    let function = green_solve(&mesh, &measure, base)?;
    Ok(GreenSolution {
        mesh,
        measure,
        function,
        basepoint: base,
    })
}

/// Maximum principle check for a dipole solution: the minimum value is
/// attained at `x`, the maximum at `y`, and every other extremal node is
/// joined to the corresponding support by a path of zero slope (a branch
/// carrying no current). On graphs without such flat branches this says the
/// extrema sit exactly at the two support points.
pub fn extrema_pinned_to_supports<S: Scalar>(
    mesh: &Mesh<S>,
    f: &PlFunction<S>,
    x: NodeIx,
    y: NodeIx,
) -> bool {
    let (argmin, argmax) = extrema_nodes(f);
    if !argmin.contains(&x) || !argmax.contains(&y) {
        return false;
    }
    let flat_component = |start: NodeIx| -> Vec<NodeIx> {
        let mut seen = vec![false; mesh.node_count()];
        seen[start] = true;
        let mut queue = vec![start];
        while let Some(n) = queue.pop() {
            for &(s, _) in mesh.incidences(n) {
                let seg = &mesh.segments()[s];
                if f.values[seg.src] != f.values[seg.dst] {
                    continue;
                }
                for other in [seg.src, seg.dst] {
                    if !seen[other] {
                        seen[other] = true;
                        queue.push(other);
                    }
                }
            }
        }
        (0..mesh.node_count()).filter(|&n| seen[n]).collect()
    };
    argmin == flat_component(x) && argmax == flat_component(y)
}

/// Nodes where a function attains its minimum and maximum.
pub fn extrema_nodes<S: Scalar>(f: &PlFunction<S>) -> (Vec<NodeIx>, Vec<NodeIx>) {
    let min = f
        .values
        .iter()
        .min_by(|a, b| cmp(*a, *b))
        .expect("nonempty function");
    let max = f
        .values
        .iter()
        .max_by(|a, b| cmp(*a, *b))
        .expect("nonempty function");
    let argmin = f
        .values
        .iter()
        .enumerate()
        .filter(|(_, v)| *v == min)
        .map(|(i, _)| i)
        .collect();
    let argmax = f
        .values
        .iter()
        .enumerate()
        .filter(|(_, v)| *v == max)
        .map(|(i, _)| i)
        .collect();
    (argmin, argmax)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::testutil::{circle, dumbbell, path, theta};
    use crate::scalar::{int, ratio};
    use crate::Rat;
    use num_traits::Zero;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pt(edge: usize, p: i64, q: i64) -> SubdivisionPoint<Rat> {
        SubdivisionPoint {
            edge,
            t: ratio(p, q),
        }
    }

    #[test]
    fn ddc_of_constant_is_zero() {
        let mesh = Mesh::base(theta::<Rat>());
        let f = PlFunction::constant(&mesh, ratio(7, 3));
        assert!(ddc(&mesh, &f).is_zero());
    }

    /// Hand oracle: hat function on a subdivided path. Slopes out of the
    /// midpoint are -2 on both sides, slopes out of the endpoints +2.
    #[test]
    fn ddc_hat_function_on_path() {
        let mesh = Mesh::new(path::<Rat>(), vec![pt(0, 1, 2)]).unwrap();
        // nodes: v1 = 0, v2 = 1, midpoint = 2
        let f = PlFunction {
            values: vec![int(0), int(0), int(1)],
        };
        let mu = ddc(&mesh, &f);
        assert_eq!(mu.weight_at(0), int::<Rat>(2));
        assert_eq!(mu.weight_at(1), int::<Rat>(2));
        assert_eq!(mu.weight_at(2), int::<Rat>(-4));
        assert!(mu.mass().is_zero());
    }

    #[test]
    fn ddc_is_linear() {
        let mesh = Mesh::new(dumbbell::<Rat>(), vec![pt(0, 1, 3), pt(1, 1, 2)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..10 {
            let g = crate::gen::random_pl::<Rat>(&mut rng, &mesh);
            let h = crate::gen::random_pl::<Rat>(&mut rng, &mesh);
            let a: Rat = crate::gen::small_rational(&mut rng);
            let b: Rat = crate::gen::small_rational(&mut rng);
            let combo = g.scale(&a).add(&h.scale(&b));
            let lhs = ddc(&mesh, &combo);
            let rhs = ddc(&mesh, &g).scale(&a).add(&ddc(&mesh, &h).scale(&b));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn mass_of_ddc_vanishes_on_random_input() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let g = crate::gen::random_connected_graph::<Rat>(&mut rng, 12);
            let points = crate::gen::random_subdivision_points(&mut rng, &g, 3);
            let mesh = Mesh::new(g, points).unwrap();
            let f = crate::gen::random_pl::<Rat>(&mut rng, &mesh);
            assert!(ddc(&mesh, &f).mass().is_zero());
        }
    }

    /// Oracle: the 2x2 pinned Laplacian system for the path solves to
    /// values (0, 1).
    #[test]
    fn green_on_path_matches_two_by_two_solve() {
        let mesh = Mesh::base(path::<Rat>());
        let mu = DiscreteMeasure::new(vec![(0, int(1)), (1, int(-1))]);
        // By hand: unknowns (f0, f1), pin f0 = 0; the equation at v2 reads
        // (f0 - f1)/1 = -1, so f1 = 1.
        let by_hand = vec![int::<Rat>(0), int::<Rat>(1)];
        let f = green_solve(&mesh, &mu, 0).unwrap();
        assert_eq!(f.values, by_hand);
        assert_eq!(ddc(&mesh, &f), mu);
    }

    /// Oracle: circle of circumference 2 with antipodal source and sink;
    /// symmetry forces slope 1/2 on both arcs, so the gap is 1/2.
    #[test]
    fn green_on_circle_antipodal() {
        let mesh = Mesh::new(circle::<Rat>(), vec![pt(0, 1, 2)]).unwrap();
        let q = mesh.node_at(0, &ratio(1, 2)).unwrap();
        let mu = DiscreteMeasure::new(vec![(0, int(1)), (q, int(-1))]);
        let f = green_solve(&mesh, &mu, 0).unwrap();
        assert_eq!(f.values[0], int::<Rat>(0));
        assert_eq!(f.values[q], ratio::<Rat>(1, 2));
        // slopes along the two oriented arcs
        let s0 = &mesh.segments()[0];
        let slope0 = (f.values[s0.dst].clone() - f.values[s0.src].clone()) / s0.length.clone();
        assert_eq!(slope0, ratio::<Rat>(1, 2));
        let s1 = &mesh.segments()[1];
        let slope1 = (f.values[s1.dst].clone() - f.values[s1.src].clone()) / s1.length.clone();
        assert_eq!(slope1, ratio::<Rat>(-1, 2));
    }

    #[test]
    fn zero_measure_solves_to_zero_function() {
        let mesh = Mesh::base(theta::<Rat>());
        let f = green_solve(&mesh, &DiscreteMeasure::zero(), 1).unwrap();
        assert_eq!(f, PlFunction::zero(&mesh));
    }

    #[test]
    fn nonzero_mass_is_rejected() {
        let mesh = Mesh::base(theta::<Rat>());
        let mu = DiscreteMeasure::new(vec![(0, int(1))]);
        assert_eq!(green_solve(&mesh, &mu, 0), Err(PotentialError::NonzeroMass));
    }

    #[test]
    fn basepoint_change_shifts_by_constant() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let g = crate::gen::random_connected_graph::<Rat>(&mut rng, 15);
        let mesh = Mesh::base(g);
        let mu = crate::gen::random_mass_zero_measure::<Rat>(&mut rng, &mesh);
        let f0 = green_solve(&mesh, &mu, 0).unwrap();
        let f1 = green_solve(&mesh, &mu, mesh.node_count() - 1).unwrap();
        let diff = f0.sub(&f1);
        assert!(diff.values.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn round_trip_is_exact_on_random_measures() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..15 {
            let g = crate::gen::random_connected_graph::<Rat>(&mut rng, 20);
            let points = crate::gen::random_subdivision_points(&mut rng, &g, 2);
            let mesh = Mesh::new(g, points).unwrap();
            let mu = crate::gen::random_mass_zero_measure::<Rat>(&mut rng, &mesh);
            let f = green_solve(&mesh, &mu, 0).unwrap();
            assert_eq!(ddc(&mesh, &f), mu);
        }
    }

    #[test]
    fn maximum_principle_for_dipoles() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..10 {
            let g = crate::gen::random_connected_graph::<Rat>(&mut rng, 15);
            let mesh = Mesh::base(g);
            if mesh.node_count() < 2 {
                continue;
            }
            let x = 0;
            let y = mesh.node_count() - 1;
            let mu = DiscreteMeasure::new(vec![(x, int(1)), (y, int(-1))]);
            let f = green_solve(&mesh, &mu, x).unwrap();
            assert!(extrema_pinned_to_supports(&mesh, &f, x, y));
        }
    }

    /// On a circle every arc carries current, so the extrema are attained at
    /// the two support points and nowhere else.
    #[test]
    fn maximum_principle_is_strict_without_flat_branches() {
        let mesh = Mesh::new(
            circle::<Rat>(),
            vec![pt(0, 1, 5), pt(0, 2, 5), pt(0, 3, 5)],
        )
        .unwrap();
        let x = 0;
        let y = mesh.node_at(0, &ratio(2, 5)).unwrap();
        let mu = DiscreteMeasure::new(vec![(x, int(1)), (y, int(-1))]);
        let f = green_solve(&mesh, &mu, x).unwrap();
        let (argmin, argmax) = extrema_nodes(&f);
        assert_eq!(argmin, vec![x]);
        assert_eq!(argmax, vec![y]);
    }

    #[test]
    fn refinement_invariance_of_green_solves() {
        let g = theta::<Rat>();
        let coarse = Mesh::new(g.clone(), vec![pt(0, 1, 2)]).unwrap();
        let source = coarse.node_at(0, &ratio(1, 2)).unwrap();
        let mu = DiscreteMeasure::new(vec![(source, int(1)), (1, int(-1))]);
        let f_coarse = green_solve(&coarse, &mu, 0).unwrap();

        let fine = coarse
            .refined(vec![pt(0, 1, 4), pt(1, 1, 3), pt(2, 5, 7)])
            .unwrap();
        let source_fine = fine.node_at(0, &ratio(1, 2)).unwrap();
        let mu_fine = DiscreteMeasure::new(vec![(source_fine, int(1)), (1, int(-1))]);
        let f_fine = green_solve(&fine, &mu_fine, 0).unwrap();
        assert_eq!(f_fine.restrict_to(&fine, &coarse), f_coarse);
    }

    #[test]
    fn harmonic_space_is_the_constants() {
        for g in [circle::<Rat>(), theta(), path()] {
            let mesh = Mesh::base(g);
            let basis = harmonic_space(&mesh);
            assert_eq!(basis.len(), 1);
            let f = &basis[0];
            assert!(f.values.windows(2).all(|w| w[0] == w[1]));
            assert!(!f.values[0].is_zero());
        }
    }

    #[test]
    fn resolution_audit_passes_on_fixtures() {
        for g in [circle::<Rat>(), theta(), dumbbell()] {
            let audit = resolution_audit(&Mesh::base(g));
            assert_eq!(audit.ker_dim, 1);
            assert_eq!(audit.coker_dim, 1);
            assert!(audit.pass);
        }
    }

    #[test]
    fn measure_literal_parsing() {
        let atoms = parse_measure_literal::<Rat>("v1:1 e2@1/3:-1").unwrap();
        assert_eq!(atoms.len(), 2);
        assert_eq!(atoms[0].0, Site::Vertex("v1".into()));
        assert_eq!(atoms[0].1, int::<Rat>(1));
        assert_eq!(
            atoms[1].0,
            Site::EdgePoint {
                edge: "e2".into(),
                t: ratio(1, 3)
            }
        );
        assert!(parse_measure_literal::<Rat>("v1").is_err());
        assert!(parse_measure_literal::<Rat>("e2@5/3:1").is_err());
        assert!(parse_measure_literal::<Rat>("").unwrap().is_empty());
    }

    #[test]
    fn graph_level_solve_subdivides_at_interior_atoms() {
        let g = theta::<Rat>();
        let atoms = parse_measure_literal::<Rat>("e1@1/3:2 v2:-2").unwrap();
        let sol = green_solve_on_graph(&g, &atoms, None).unwrap();
        assert_eq!(sol.mesh.node_count(), 3);
        assert_eq!(ddc(&sol.mesh, &sol.function), sol.measure);
        assert_eq!(sol.function.values[sol.basepoint], int::<Rat>(0));
    }

    #[test]
    fn solve_works_with_f64_scalars() {
        let g = path::<f64>();
        let mesh = Mesh::base(g);
        let mu = DiscreteMeasure::new(vec![(0, 1.0), (1, -1.0)]);
        let f = green_solve(&mesh, &mu, 0).unwrap();
        assert_eq!(f.values, vec![0.0, 1.0]);
    }
}
