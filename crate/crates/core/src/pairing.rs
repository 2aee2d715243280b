//! Duality pairing matrices, Mayer–Vietoris audits, and Hodge tables for
//! strictly simple regions.
//!
//! For a scope the four pairings `H^{p,q} × H_c^{1-p,1-q} → ℝ` are
//! assembled as exact rational matrices of wedge-integrals between
//! representatives, on a common collared mesh. Perfectness is decided by
//! exact rank, with one model-level correction: positive-genus vertices
//! inside the scope contribute their Picard rank to the `(1,1)` side at
//! the sequence-bookkeeping level, which shows up as a dimension
//! obstruction rather than as a singular matrix.

use crate::dim::Dimension;
use crate::dolbeault::{collar_refine, integrate, wedge, ScopeComplex, Support};
use crate::graph::{AugmentedMetricGraph, Mesh, OpenSet, Region, RegionError, ResidueModel};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::sequences::{HodgeEntry, HodgeTable, Provenance};
use serde::Serialize;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum PairingError {
    #[error("cohomology is infinite dimensional in the model for this scope")]
    InfiniteDimensional,
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Region(#[from] RegionError),
}

/// The Picard rank carried by the positive-genus vertices inside a scope.
pub fn scope_rank<S: Scalar>(
    graph: &AugmentedMetricGraph<S>,
    mesh: &Mesh<S>,
    set: &OpenSet,
    model: ResidueModel,
) -> Dimension {
    let inside = (0..graph.vertex_count()).filter(|&v| set.has_node(mesh.vertex_node(v)));
    graph.picard_rank_over(inside, model)
}

/// One duality pairing: rows are full-support classes of bidegree `(p,q)`,
/// columns compactly supported classes of the complementary bidegree.
#[derive(Debug, Clone)]
pub struct PairingReport<S> {
    pub p: u8,
    pub q: u8,
    pub matrix: Matrix<S>,
    pub rank: usize,
    pub full_dim: usize,
    pub compact_dim: usize,
    /// Full-side dimension after the model correction (differs from
    /// `full_dim` only at `(1,1)` when the scope carries Picard rank).
    pub model_full_dim: Dimension,
}

impl<S: Scalar> PairingReport<S> {
    pub fn is_perfect(&self) -> bool {
        self.model_full_dim == Dimension::Finite(self.full_dim)
            && self.full_dim == self.compact_dim
            && self.rank == self.full_dim
    }
}

fn pairing_entry<S: Scalar>(
    mesh: &Mesh<S>,
    full: &ScopeComplex<S>,
    p: u8,
    q: u8,
    a: &[S],
    compact: &ScopeComplex<S>,
    b: &[S],
) -> S {
    let left = full.to_form(p, q, a);
    let right = compact.to_form(1 - p, 1 - q, b);
    let product = wedge(mesh, &left, &right).expect("complementary bidegrees wedge to (1,1)");
    integrate(mesh, &product).expect("wedge of complementary classes is a (1,1)-form")
}

fn assemble_pairing<S: Scalar>(
    graph: &AugmentedMetricGraph<S>,
    mesh: &Mesh<S>,
    full: &ScopeComplex<S>,
    compact: &ScopeComplex<S>,
    model: ResidueModel,
    p: u8,
    q: u8,
) -> PairingReport<S> {
    let rows = full.basis(p, q);
    let cols = compact.basis(1 - p, 1 - q);
    let mut matrix: Matrix<S> = Matrix::zero(rows.dim, cols.dim);
    for (i, a) in rows.reps.iter().enumerate() {
        for (j, b) in cols.reps.iter().enumerate() {
            matrix[(i, j)] = pairing_entry(mesh, full, p, q, a, compact, b);
        }
    }
    let rank = matrix.rank();
    let s = scope_rank(graph, mesh, full.set(), model);
    let model_full_dim = if (p, q) == (1, 1) {
        Dimension::Finite(rows.dim) + s
    } else {
        Dimension::Finite(rows.dim)
    };
    PairingReport {
        p,
        q,
        matrix,
        rank,
        full_dim: rows.dim,
        compact_dim: cols.dim,
        model_full_dim,
    }
}

/// The duality pairing matrix at one bidegree, on a scope. Refuses scopes
/// whose model dimension is infinite at the requested bidegree.
pub fn pairing_matrix<S: Scalar>(
    graph: &AugmentedMetricGraph<S>,
    mesh: &Mesh<S>,
    set: &OpenSet,
    model: ResidueModel,
    p: u8,
    q: u8,
) -> Result<PairingReport<S>, PairingError> {
    let s = scope_rank(graph, mesh, set, model);
    let touches_top = (p, q) == (1, 1) || (1 - p, 1 - q) == (1, 1);
    if touches_top && s == Dimension::Infinite {
        return Err(PairingError::InfiniteDimensional);
    }
    let (fine, fine_set) = collar_refine(mesh, set);
    let full = ScopeComplex::new(&fine, &fine_set, Support::Full);
    let compact = ScopeComplex::new(&fine, &fine_set, Support::Compact);
    Ok(assemble_pairing(graph, &fine, &full, &compact, model, p, q))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "verdict", content = "reason")]
pub enum PdCheckVerdict {
    Perfect,
    Degenerate(String),
}

impl fmt::Display for PdCheckVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PdCheckVerdict::Perfect => write!(f, "perfect"),
            PdCheckVerdict::Degenerate(_) => write!(f, "degenerate"),
        }
    }
}

/// Rank certificate for the four pairings of a scope.
#[derive(Debug, Clone)]
pub struct PdCheck<S> {
    pub verdict: PdCheckVerdict,
    pub pairings: Vec<PairingReport<S>>,
    /// Total achieved rank over the four matrices.
    pub rank_sum: usize,
    /// Total model-expected dimension (the `r/n` of the verdict line).
    pub expected_sum: Dimension,
}

impl<S: Scalar> PdCheck<S> {
    pub fn is_perfect(&self) -> bool {
        self.verdict == PdCheckVerdict::Perfect
    }
}

/// Check perfectness of all four pairings on a scope. Never errors: an
/// infinite model dimension is a degenerate verdict with a reason.
pub fn pd_check<S: Scalar>(
    graph: &AugmentedMetricGraph<S>,
    mesh: &Mesh<S>,
    set: &OpenSet,
    model: ResidueModel,
) -> PdCheck<S> {
    let s = scope_rank(graph, mesh, set, model);
    if s == Dimension::Infinite {
        return PdCheck {
            verdict: PdCheckVerdict::Degenerate(
                "infinite-dimensional (1,1)-cohomology in the model".to_string(),
            ),
            pairings: Vec::new(),
            rank_sum: 0,
            expected_sum: Dimension::Infinite,
        };
    }
    let (fine, fine_set) = collar_refine(mesh, set);
    let full = ScopeComplex::new(&fine, &fine_set, Support::Full);
    let compact = ScopeComplex::new(&fine, &fine_set, Support::Compact);
    let mut pairings = Vec::new();
    for (p, q) in [(0u8, 0u8), (0, 1), (1, 0), (1, 1)] {
        pairings.push(assemble_pairing(
            graph, &fine, &full, &compact, model, p, q,
        ));
    }
    let rank_sum = pairings.iter().map(|r| r.rank).sum();
    let expected_sum = pairings
        .iter()
        .fold(Dimension::Finite(0), |acc, r| acc + r.model_full_dim);
    let mut reason = None;
    for r in &pairings {
        if r.model_full_dim != Dimension::Finite(r.full_dim) {
            reason = Some(format!(
                "dimension obstruction at ({},{}): model dimension {} exceeds cochain dimension {}",
                r.p, r.q, r.model_full_dim, r.full_dim
            ));
            break;
        }
        if r.full_dim != r.compact_dim {
            reason = Some(format!(
                "pairing at ({},{}) is not square: {}x{}",
                r.p, r.q, r.full_dim, r.compact_dim
            ));
            break;
        }
        if r.rank != r.full_dim {
            reason = Some(format!(
                "pairing at ({},{}) is singular: rank {} of {}",
                r.p, r.q, r.rank, r.full_dim
            ));
            break;
        }
    }
    PdCheck {
        verdict: match reason {
            None => PdCheckVerdict::Perfect,
            Some(r) => PdCheckVerdict::Degenerate(r),
        },
        pairings,
        rank_sum,
        expected_sum,
    }
}

/// An open cover of a scope by two open sets on a common mesh.
#[derive(Debug, Clone)]
pub struct Cover<S: Scalar> {
    pub mesh: Mesh<S>,
    pub union: OpenSet,
    pub u1: OpenSet,
    pub u2: OpenSet,
    pub intersection: OpenSet,
}

impl<S: Scalar> Cover<S> {
    pub fn new(mesh: Mesh<S>, u1: OpenSet, u2: OpenSet) -> Self {
        let union = u1.union(&u2);
        let intersection = u1.intersection(&u2);
        Cover {
            mesh,
            union,
            u1,
            u2,
            intersection,
        }
    }
}

/// Names of the four scopes of a cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CoverScope {
    Union,
    U1,
    U2,
    Intersection,
}

impl fmt::Display for CoverScope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CoverScope::Union => "U",
            CoverScope::U1 => "U1",
            CoverScope::U2 => "U2",
            CoverScope::Intersection => "U12",
        };
        f.write_str(s)
    }
}

impl<S: Scalar> Cover<S> {
    pub fn scope(&self, which: CoverScope) -> &OpenSet {
        match which {
            CoverScope::Union => &self.union,
            CoverScope::U1 => &self.u1,
            CoverScope::U2 => &self.u2,
            CoverScope::Intersection => &self.intersection,
        }
    }
}

/// One verified condition of the Mayer–Vietoris audit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MvCheck {
    pub name: String,
    pub ok: bool,
}

/// Exactness audit of the six-term sequence
/// `0 → H^{p,0}(U) → H^{p,0}(U1)⊕H^{p,0}(U2) → H^{p,0}(U12)
///    → H^{p,1}(U) → H^{p,1}(U1)⊕H^{p,1}(U2) → H^{p,1}(U12) → 0`
/// with explicit restriction maps on common-subdivision cochains. The
/// connecting map is audited at rank level: both of its forced ranks must
/// agree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MvAudit {
    pub p: u8,
    pub dims: [usize; 6],
    pub restriction_ranks: [usize; 4],
    pub checks: Vec<MvCheck>,
    pub exact: bool,
}

fn restriction_map<S: Scalar>(
    from: &ScopeComplex<S>,
    to: &ScopeComplex<S>,
    p: u8,
    q: u8,
) -> Matrix<S> {
    let from_basis = from.basis(p, q);
    let to_dim = to.basis(p, q).dim;
    let cols = from_basis
        .reps
        .iter()
        .map(|rep| {
            let restricted = to.restrict_from(from, p, q, rep);
            to.class_coords(p, q, &restricted)
        })
        .collect();
    Matrix::from_cols(cols, to_dim)
}

pub fn mv_audit<S: Scalar>(cover: &Cover<S>, p: u8) -> MvAudit {
    let mesh = &cover.mesh;
    let cu = ScopeComplex::new(mesh, &cover.union, Support::Full);
    let c1 = ScopeComplex::new(mesh, &cover.u1, Support::Full);
    let c2 = ScopeComplex::new(mesh, &cover.u2, Support::Full);
    let c12 = ScopeComplex::new(mesh, &cover.intersection, Support::Full);

    let dims = [
        cu.basis(p, 0).dim,
        c1.basis(p, 0).dim + c2.basis(p, 0).dim,
        c12.basis(p, 0).dim,
        cu.basis(p, 1).dim,
        c1.basis(p, 1).dim + c2.basis(p, 1).dim,
        c12.basis(p, 1).dim,
    ];

    // restriction to the two pieces, stacked; then difference of
    // restrictions into the intersection
    let stack = |q: u8| -> (Matrix<S>, Matrix<S>) {
        let to1 = restriction_map(&cu, &c1, p, q);
        let to2 = restriction_map(&cu, &c2, p, q);
        let r_in = to1.vstack(&to2);
        let from1 = restriction_map(&c1, &c12, p, q);
        let from2 = restriction_map(&c2, &c12, p, q).mul_scalar(&-S::one());
        let r_out = from1.hstack(&from2);
        (r_in, r_out)
    };
    let (r1, r2) = stack(0);
    let (r3, r4) = stack(1);

    let ranks = [r1.rank(), r2.rank(), r3.rank(), r4.rank()];
    let zero_q0 = r2.mul(&r1).is_zero();
    let zero_q1 = r4.mul(&r3).is_zero();

    let mut checks = vec![
        MvCheck {
            name: "restrictions compose to zero (q=0)".into(),
            ok: zero_q0,
        },
        MvCheck {
            name: "restrictions compose to zero (q=1)".into(),
            ok: zero_q1,
        },
        MvCheck {
            name: "exact at H(U): first map injective".into(),
            ok: ranks[0] == dims[0],
        },
        MvCheck {
            name: "exact at the sum (q=0): kernel matches image".into(),
            ok: dims[1] - ranks[1] == ranks[0],
        },
        MvCheck {
            name: "connecting map has a consistent rank".into(),
            ok: dims[2] - ranks[1] == dims[3] - ranks[2],
        },
        MvCheck {
            name: "exact at the sum (q=1): kernel matches image".into(),
            ok: dims[4] - ranks[3] == ranks[2],
        },
        MvCheck {
            name: "exact at H(U12): last map surjective".into(),
            ok: ranks[3] == dims[5],
        },
    ];
    let alternating: i64 = dims
        .iter()
        .enumerate()
        .map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) })
        .sum();
    checks.push(MvCheck {
        name: "alternating dimension sum is zero".into(),
        ok: alternating == 0,
    });
    let exact = checks.iter().all(|c| c.ok);
    MvAudit {
        p,
        dims,
        restriction_ranks: ranks,
        checks,
        exact,
    }
}

/// Verdict propagation across a cover: if three of the four scopes have
/// perfect duality, so does the fourth; if exactly one of the three is
/// degenerate, the fourth must be degenerate too (otherwise the other
/// three would force it perfect). Two or more degenerate givens determine
/// nothing.
#[derive(Debug, Clone)]
pub struct Propagation<S> {
    pub target: CoverScope,
    pub given: Vec<(CoverScope, PdCheckVerdict)>,
    pub predicted: Option<PdCheckVerdict>,
    pub direct: PdCheck<S>,
    /// `None` when the lemma does not determine the target.
    pub confirmed: Option<bool>,
}

pub fn three_of_four<S: Scalar>(
    cover: &Cover<S>,
    graph: &AugmentedMetricGraph<S>,
    model: ResidueModel,
    target: CoverScope,
) -> Propagation<S> {
    let all = [
        CoverScope::Union,
        CoverScope::U1,
        CoverScope::U2,
        CoverScope::Intersection,
    ];
    let given: Vec<(CoverScope, PdCheckVerdict)> = all
        .iter()
        .filter(|&&s| s != target)
        .map(|&s| {
            (
                s,
                pd_check(graph, &cover.mesh, cover.scope(s), model).verdict,
            )
        })
        .collect();
    let degenerate = given
        .iter()
        .filter(|(_, v)| !matches!(v, PdCheckVerdict::Perfect))
        .count();
    let predicted = match degenerate {
        0 => Some(PdCheckVerdict::Perfect),
        1 => Some(PdCheckVerdict::Degenerate(
            "forced by the three-of-four principle".to_string(),
        )),
        _ => None,
    };
    let direct = pd_check(graph, &cover.mesh, cover.scope(target), model);
    let confirmed = predicted.as_ref().map(|p| {
        matches!(p, PdCheckVerdict::Perfect) == matches!(direct.verdict, PdCheckVerdict::Perfect)
    });
    Propagation {
        target,
        given,
        predicted,
        direct,
        confirmed,
    }
}

/// Hodge tables (full and compact support) of a strictly simple region,
/// checked against the star formula whenever the theorem applies.
#[derive(Debug, Clone, Serialize)]
pub struct SubsetHodge {
    pub boundary_count: usize,
    pub full: HodgeTable,
    pub compact: HodgeTable,
    /// False when the region touches positive-genus vertices while the
    /// global rank datum is nonzero; the tables are then engine values
    /// outside the scope of the star formula.
    pub within_theorem: bool,
}

pub fn subset_hodge<S: Scalar>(
    graph: &AugmentedMetricGraph<S>,
    mesh: &Mesh<S>,
    region: &Region,
    model: ResidueModel,
) -> Result<SubsetHodge, PairingError> {
    if !region.strictly_simple {
        return Err(RegionError::NotStrictlySimple.into());
    }
    let k = region.boundary_count;
    let full_dims = ScopeComplex::new(mesh, &region.set, Support::Full).dims();
    let (fine, fine_set) = collar_refine(mesh, &region.set);
    let compact_dims = ScopeComplex::new(&fine, &fine_set, Support::Compact).dims();

    let global_rank_zero = graph.picard_rank_sum(model).is_zero();
    let region_rank_zero = scope_rank(graph, mesh, &region.set, model).is_zero();
    let within_theorem = global_rank_zero || region_rank_zero;
    if within_theorem {
        let expected_full = [[1, 0], [k - 1, 0]];
        let expected_compact = [[0, k - 1], [0, 1]];
        if full_dims != expected_full || compact_dims != expected_compact {
            return Err(PairingError::Inconsistent(format!(
                "strictly simple region with k = {} computed tables {:?} / {:?}",
                k, full_dims, compact_dims
            )));
        }
    }
    let table = |dims: [[usize; 2]; 2]| HodgeTable {
        entries: [
            [
                HodgeEntry {
                    value: Dimension::Finite(dims[0][0]),
                    provenance: Provenance::ComputedByCochain,
                },
                HodgeEntry {
                    value: Dimension::Finite(dims[0][1]),
                    provenance: Provenance::ComputedByCochain,
                },
            ],
            [
                HodgeEntry {
                    value: Dimension::Finite(dims[1][0]),
                    provenance: Provenance::ComputedByCochain,
                },
                HodgeEntry {
                    value: Dimension::Finite(dims[1][1]),
                    provenance: Provenance::ComputedByCochain,
                },
            ],
        ],
    };
    Ok(SubsetHodge {
        boundary_count: k,
        full: table(full_dims),
        compact: table(compact_dims),
        within_theorem,
    })
}
