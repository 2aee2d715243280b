//! Dimension bookkeeping for the exact sequences linking affine and
//! harmonic function cohomology to the bigraded Hodge numbers.
//!
//! Three sequences drive the verdicts:
//!
//! * resolution: `0 → H → L⁰ → L¹ → 0`, audited through the potential
//!   module (kernel = constants, cokernel = total mass);
//! * harmonic: `0 → S → H¹(affine) → H¹(harmonic) → 0`, which pins
//!   `dim H¹(affine) = dim S + 1`;
//! * exponential: `0 → H^{1,0} → H^{0,1} → H¹(affine) → H^{1,1} → 0`,
//!   which produces `h^{1,1}` once the other terms are known.
//!
//! Here `S` is the total Picard rank of the positive-genus reduction
//! components under the chosen residue model. Duality holds exactly when it
//! vanishes, and every verdict is double-checked through two independent
//! routes that must agree or the run aborts.

use crate::dim::Dimension;
use crate::dolbeault::{ScopeComplex, Support};
use crate::graph::{AugmentedMetricGraph, Mesh, OpenSet, ResidueModel};
use crate::potential;
use crate::scalar::Scalar;
use serde::Serialize;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SequenceError {
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
    #[error("check requires the torsion residue model")]
    RequiresTorsionModel,
}

/// Where a Hodge-table entry comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ComputedByCochain,
    DerivedBySequence,
    ModelValue,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Provenance::ComputedByCochain => "computed-by-cochain",
            Provenance::DerivedBySequence => "derived-by-sequence",
            Provenance::ModelValue => "model-value",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HodgeEntry {
    pub value: Dimension,
    pub provenance: Provenance,
}

/// The 2x2 table of Hodge numbers `h^{p,q}` with provenance tags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HodgeTable {
    /// Indexed `entries[p][q]`.
    pub entries: [[HodgeEntry; 2]; 2],
}

impl HodgeTable {
    pub fn value(&self, p: usize, q: usize) -> Dimension {
        self.entries[p][q].value
    }

    pub fn is_symmetric(&self) -> bool {
        self.value(0, 0) == self.value(1, 1) && self.value(1, 0) == self.value(0, 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PdVerdict {
    Holds,
    Fails,
    FailsInfinite,
}

impl fmt::Display for PdVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PdVerdict::Holds => "holds",
            PdVerdict::Fails => "fails",
            PdVerdict::FailsInfinite => "fails-infinite",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PdOutcome {
    pub verdict: PdVerdict,
    pub reason: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Finiteness {
    Finite,
    Infinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exactness {
    Exact,
    Broken,
    NotCheckable,
}

impl fmt::Display for Exactness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Exactness::Exact => "yes",
            Exactness::Broken => "no",
            Exactness::NotCheckable => "n/a",
        };
        f.write_str(s)
    }
}

impl Serialize for Exactness {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SequenceId {
    Resolution,
    Harmonic,
    Exponential,
}

impl fmt::Display for SequenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SequenceId::Resolution => "resolution",
            SequenceId::Harmonic => "harmonic",
            SequenceId::Exponential => "exponential",
        };
        f.write_str(s)
    }
}

/// Exactness audit of one sequence instance at the dimension level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceAudit {
    pub id: SequenceId,
    pub terms: Vec<Dimension>,
    pub exactness: Exactness,
}

/// Dimension of the first cohomology of the sheaf of affine functions:
/// the Picard rank sum plus one, with infinity absorbing.
pub fn affine_h1<S: Scalar>(
    graph: &AugmentedMetricGraph<S>,
    model: ResidueModel,
) -> Dimension {
    graph.picard_rank_sum(model) + Dimension::Finite(1)
}

/// The whole-graph cochain complex (full support on the base mesh).
pub fn whole_complex<S: Scalar>(graph: &AugmentedMetricGraph<S>) -> ScopeComplex<S> {
    let mesh = Mesh::base(graph.clone());
    let set = OpenSet::whole(&mesh);
    ScopeComplex::new(&mesh, &set, Support::Full)
}

fn exponential_h11(aff: Dimension, h01: usize, h10: usize) -> Dimension {
    match aff {
        Dimension::Infinite => Dimension::Infinite,
        Dimension::Finite(a) => {
            let v = a as i64 - h01 as i64 + h10 as i64;
            assert!(v >= 0, "exactness cannot produce a negative dimension");
            Dimension::Finite(v as usize)
        }
    }
}

/// The global Hodge table. `h^{0,0}`, `h^{0,1}` and `h^{1,0}` come from the
/// cochain engine through independent rank routes that must agree with the
/// Betti number; `h^{1,1}` is produced by exactness of the exponential
/// sequence and cross-checked against the cochain cokernel whenever the
/// rank datum vanishes.
pub fn hodge_table<S: Scalar>(
    graph: &AugmentedMetricGraph<S>,
    model: ResidueModel,
) -> Result<HodgeTable, SequenceError> {
    let complex = whole_complex(graph);
    let h00 = complex.basis(0, 0).dim;
    let h01 = complex.basis(0, 1).dim;
    let h10 = complex.basis(1, 0).dim;
    let h11_cochain = complex.basis(1, 1).dim;
    let b = graph.betti();
    if h00 != 1 {
        return Err(SequenceError::Inconsistent(format!(
            "h00 = {} on a connected graph",
            h00
        )));
    }
    if h01 != b || h10 != b {
        return Err(SequenceError::Inconsistent(format!(
            "independent rank routes disagree: h01 = {}, h10 = {}, betti = {}",
            h01, h10, b
        )));
    }
    let s = graph.picard_rank_sum(model);
    let aff = affine_h1(graph, model);
    let h11 = exponential_h11(aff, h01, h10);
    if s.is_zero() {
        if h11_cochain != 1 || h11 != Dimension::Finite(1) {
            return Err(SequenceError::Inconsistent(format!(
                "h11 routes disagree: cochain {}, sequence {}",
                h11_cochain, h11
            )));
        }
    }
    let computed = Provenance::ComputedByCochain;
    Ok(HodgeTable {
        entries: [
            [
                HodgeEntry {
                    value: Dimension::Finite(h00),
                    provenance: computed,
                },
                HodgeEntry {
                    value: Dimension::Finite(h01),
                    provenance: computed,
                },
            ],
            [
                HodgeEntry {
                    value: Dimension::Finite(h10),
                    provenance: if s.is_zero() {
                        computed
                    } else {
                        Provenance::ModelValue
                    },
                },
                HodgeEntry {
                    value: h11,
                    provenance: Provenance::DerivedBySequence,
                },
            ],
        ],
    })
}

/// Poincaré-duality verdict through two routes that must agree: the rank
/// datum vanishing, and the table criterion `h^{1,1} = 1 ∧ h^{1,0} =
/// h^{0,1}`.
pub fn pd_verdict<S: Scalar>(
    graph: &AugmentedMetricGraph<S>,
    model: ResidueModel,
) -> Result<(PdOutcome, HodgeTable), SequenceError> {
    let s = graph.picard_rank_sum(model);
    let route_rank = match s {
        Dimension::Finite(0) => PdVerdict::Holds,
        Dimension::Finite(_) => PdVerdict::Fails,
        Dimension::Infinite => PdVerdict::FailsInfinite,
    };
    let table = hodge_table(graph, model)?;
    let route_table = if table.value(1, 1) == Dimension::Infinite {
        PdVerdict::FailsInfinite
    } else if table.value(1, 1) == Dimension::Finite(1)
        && table.value(1, 0) == table.value(0, 1)
    {
        PdVerdict::Holds
    } else {
        PdVerdict::Fails
    };
    if route_rank != route_table {
        return Err(SequenceError::Inconsistent(format!(
            "duality routes disagree: rank datum says {}, table says {}",
            route_rank, route_table
        )));
    }
    let reason = match route_rank {
        PdVerdict::Holds => "rank datum S = 0; table is symmetric".to_string(),
        PdVerdict::Fails => format!("S = {}; h11 = {} differs from 1", s, table.value(1, 1)),
        PdVerdict::FailsInfinite => "S is infinite; h11 is infinite".to_string(),
    };
    Ok((
        PdOutcome {
            verdict: route_rank,
            reason,
        },
        table,
    ))
}

/// Whether the `(1,1)`-cohomology is finite dimensional: it fails to be
/// exactly when the model is complex and some vertex has positive genus.
pub fn finiteness_verdict<S: Scalar>(
    graph: &AugmentedMetricGraph<S>,
    model: ResidueModel,
) -> Finiteness {
    let infinite =
        model == ResidueModel::Complex && graph.vertices().iter().any(|v| v.genus > 0);
    debug_assert_eq!(infinite, !graph.picard_rank_sum(model).is_finite());
    if infinite {
        Finiteness::Infinite
    } else {
        Finiteness::Finite
    }
}

/// Symmetry of the two degree-one Hodge numbers under the torsion model
/// (where the table is a theorem): both must be finite and equal.
pub fn hodge_symmetry_check<S: Scalar>(
    graph: &AugmentedMetricGraph<S>,
    model: ResidueModel,
) -> Result<(usize, usize), SequenceError> {
    if model != ResidueModel::Torsion {
        return Err(SequenceError::RequiresTorsionModel);
    }
    let table = hodge_table(graph, model)?;
    match (table.value(1, 0), table.value(0, 1)) {
        (Dimension::Finite(a), Dimension::Finite(b)) if a == b => Ok((a, b)),
        (h10, h01) => Err(SequenceError::Inconsistent(format!(
            "degree-one symmetry fails: h10 = {}, h01 = {}",
            h10, h01
        ))),
    }
}

fn alternating_sum(terms: &[Dimension]) -> Exactness {
    let mut sum: i64 = 0;
    for (i, t) in terms.iter().enumerate() {
        match t {
            Dimension::Infinite => return Exactness::NotCheckable,
            Dimension::Finite(n) => {
                let signed = *n as i64;
                sum += if i % 2 == 0 { signed } else { -signed };
            }
        }
    }
    if sum == 0 {
        Exactness::Exact
    } else {
        Exactness::Broken
    }
}

/// Audit every sequence instance at the dimension level. Terms involving
/// infinity are reported as not checkable rather than silently passed.
pub fn sequence_audit<S: Scalar>(
    graph: &AugmentedMetricGraph<S>,
    model: ResidueModel,
) -> Result<Vec<SequenceAudit>, SequenceError> {
    let mesh = Mesh::base(graph.clone());
    let resolution = potential::resolution_audit(&mesh);
    let resolution_audit = SequenceAudit {
        id: SequenceId::Resolution,
        terms: vec![
            Dimension::Finite(resolution.ker_dim),
            Dimension::Finite(resolution.coker_dim),
        ],
        exactness: if resolution.pass {
            Exactness::Exact
        } else {
            Exactness::Broken
        },
    };

    let s = graph.picard_rank_sum(model);
    let aff = affine_h1(graph, model);
    let harmonic_h1 = Dimension::Finite(potential::ddc_cokernel_dim(&mesh));
    let harmonic_audit = SequenceAudit {
        id: SequenceId::Harmonic,
        terms: vec![s, aff, harmonic_h1],
        exactness: alternating_sum(&[s, aff, harmonic_h1]),
    };

    let table = hodge_table(graph, model)?;
    let terms = vec![table.value(1, 0), table.value(0, 1), aff, table.value(1, 1)];
    let exponential_audit = SequenceAudit {
        id: SequenceId::Exponential,
        terms: terms.clone(),
        exactness: alternating_sum(&terms),
    };

    Ok(vec![resolution_audit, harmonic_audit, exponential_audit])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::testutil::{circle, dumbbell, graph, path, theta};
    use crate::Rat;
    use Dimension::{Finite, Infinite};

    fn genus_one_loop(picrank: u32) -> crate::graph::AugmentedMetricGraph<Rat> {
        graph(&[("v", 1, picrank)], &[("e", "v", "v", 1, 1)])
    }

    #[test]
    fn affine_h1_dimensions() {
        assert_eq!(affine_h1(&theta::<Rat>(), ResidueModel::Torsion), Finite(1));
        assert_eq!(
            affine_h1(&genus_one_loop(2), ResidueModel::Explicit),
            Finite(3)
        );
        assert_eq!(
            affine_h1(&genus_one_loop(0), ResidueModel::Complex),
            Infinite
        );
        // two ranks summing to 2 give 3
        let g: crate::graph::AugmentedMetricGraph<Rat> = graph(
            &[("a", 1, 1), ("b", 1, 1)],
            &[("e1", "a", "b", 1, 1), ("e2", "a", "b", 1, 1)],
        );
        assert_eq!(affine_h1(&g, ResidueModel::Explicit), Finite(3));
    }

    fn values(t: &HodgeTable) -> [Dimension; 4] {
        [t.value(0, 0), t.value(0, 1), t.value(1, 0), t.value(1, 1)]
    }

    #[test]
    fn hodge_table_on_fixtures() {
        let t = hodge_table(&theta::<Rat>(), ResidueModel::Torsion).unwrap();
        assert_eq!(values(&t), [Finite(1), Finite(2), Finite(2), Finite(1)]);
        assert_eq!(t.entries[1][1].provenance, Provenance::DerivedBySequence);
        assert_eq!(t.entries[1][0].provenance, Provenance::ComputedByCochain);
        assert!(t.is_symmetric());

        let t = hodge_table(&genus_one_loop(0), ResidueModel::Torsion).unwrap();
        assert_eq!(values(&t), [Finite(1), Finite(1), Finite(1), Finite(1)]);

        let t = hodge_table(&path::<Rat>(), ResidueModel::Torsion).unwrap();
        assert_eq!(values(&t), [Finite(1), Finite(0), Finite(0), Finite(1)]);
    }

    /// Alternating sum of the exponential sequence with the model value for
    /// h10: terms (1, 1, 3, h11) force h11 = 3.
    #[test]
    fn derived_h11_for_positive_rank() {
        let t = hodge_table(&genus_one_loop(2), ResidueModel::Explicit).unwrap();
        assert_eq!(values(&t), [Finite(1), Finite(1), Finite(1), Finite(3)]);
        assert_eq!(t.entries[1][1].provenance, Provenance::DerivedBySequence);
        assert_eq!(t.entries[1][0].provenance, Provenance::ModelValue);
        assert!(!t.is_symmetric());
    }

    #[test]
    fn infinite_h11_under_complex_model() {
        let t = hodge_table(&genus_one_loop(0), ResidueModel::Complex).unwrap();
        assert_eq!(t.value(1, 1), Infinite);
    }

    #[test]
    fn pd_verdict_matrix() {
        use PdVerdict::*;
        let flat = theta::<Rat>();
        let pointed = genus_one_loop(1);
        let cases = [
            (&flat, ResidueModel::Torsion, Holds),
            (&pointed, ResidueModel::Torsion, Holds),
            (&flat, ResidueModel::Explicit, Holds),
            (&pointed, ResidueModel::Explicit, Fails),
            (&flat, ResidueModel::Complex, Holds),
            (&pointed, ResidueModel::Complex, FailsInfinite),
        ];
        for (g, model, expected) in cases {
            let (outcome, _) = pd_verdict(g, model).unwrap();
            assert_eq!(outcome.verdict, expected, "{:?}", model);
        }
    }

    #[test]
    fn table_symmetry_iff_duality_holds() {
        for (g, model) in [
            (theta::<Rat>(), ResidueModel::Torsion),
            (genus_one_loop(1), ResidueModel::Explicit),
            (genus_one_loop(3), ResidueModel::Torsion),
            (dumbbell::<Rat>(), ResidueModel::Explicit),
        ] {
            let (outcome, table) = pd_verdict(&g, model).unwrap();
            assert_eq!(outcome.verdict == PdVerdict::Holds, table.is_symmetric());
        }
    }

    #[test]
    fn finiteness_cases() {
        assert_eq!(
            finiteness_verdict(&theta::<Rat>(), ResidueModel::Complex),
            Finiteness::Finite
        );
        let genus2 = graph::<Rat>(&[("v", 2, 0)], &[("e", "v", "v", 1, 1)]);
        assert_eq!(
            finiteness_verdict(&genus2, ResidueModel::Complex),
            Finiteness::Infinite
        );
        assert_eq!(
            finiteness_verdict(&genus2, ResidueModel::Torsion),
            Finiteness::Finite
        );
    }

    #[test]
    fn symmetry_check_on_torsion_fixtures() {
        assert_eq!(
            hodge_symmetry_check(&theta::<Rat>(), ResidueModel::Torsion).unwrap(),
            (2, 2)
        );
        assert_eq!(
            hodge_symmetry_check(&circle::<Rat>(), ResidueModel::Torsion).unwrap(),
            (1, 1)
        );
        assert_eq!(
            hodge_symmetry_check(&path::<Rat>(), ResidueModel::Torsion).unwrap(),
            (0, 0)
        );
        assert_eq!(
            hodge_symmetry_check(&theta::<Rat>(), ResidueModel::Complex),
            Err(SequenceError::RequiresTorsionModel)
        );
    }

    #[test]
    fn sequence_audits_on_fixtures() {
        // theta, torsion: exponential terms (2, 2, 1, 1), alternating sum 0
        let audits = sequence_audit(&theta::<Rat>(), ResidueModel::Torsion).unwrap();
        let exp = audits.iter().find(|a| a.id == SequenceId::Exponential).unwrap();
        assert_eq!(exp.terms, vec![Finite(2), Finite(2), Finite(1), Finite(1)]);
        assert_eq!(exp.exactness, Exactness::Exact);

        // circle with an explicit rank-3 vertex: harmonic terms (3, 4, 1)
        let g: crate::graph::AugmentedMetricGraph<Rat> =
            graph(&[("v", 1, 3)], &[("e", "v", "v", 2, 1)]);
        let audits = sequence_audit(&g, ResidueModel::Explicit).unwrap();
        let harmonic = audits.iter().find(|a| a.id == SequenceId::Harmonic).unwrap();
        assert_eq!(harmonic.terms, vec![Finite(3), Finite(4), Finite(1)]);
        assert_eq!(harmonic.exactness, Exactness::Exact);

        // complex model with positive genus: infinite terms are not checkable
        let audits = sequence_audit(&g, ResidueModel::Complex).unwrap();
        let harmonic = audits.iter().find(|a| a.id == SequenceId::Harmonic).unwrap();
        assert_eq!(harmonic.exactness, Exactness::NotCheckable);
        let exp = audits.iter().find(|a| a.id == SequenceId::Exponential).unwrap();
        assert_eq!(exp.exactness, Exactness::NotCheckable);

        // the resolution audit delegates to the potential module
        let resolution = audits.iter().find(|a| a.id == SequenceId::Resolution).unwrap();
        assert_eq!(resolution.terms, vec![Finite(1), Finite(1)]);
        assert_eq!(resolution.exactness, Exactness::Exact);
    }

    #[test]
    fn verdicts_invariant_under_subdivision_and_permutation() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        let g = genus_one_loop(1);
        let (reference, _) = pd_verdict(&g, ResidueModel::Explicit).unwrap();
        for _ in 0..5 {
            let points = crate::gen::random_subdivision_points(&mut rng, &g, 3);
            let (refined, _) = crate::graph::subdivide(&g, points).unwrap();
            let (outcome, _) = pd_verdict(&refined, ResidueModel::Explicit).unwrap();
            assert_eq!(outcome.verdict, reference.verdict);

            let permuted = crate::gen::random_permutation(&mut rng, &g);
            let (outcome, _) = pd_verdict(&permuted, ResidueModel::Explicit).unwrap();
            assert_eq!(outcome.verdict, reference.verdict);
        }
    }

    #[test]
    fn affine_h1_is_one_for_torsion_on_random_graphs() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..10 {
            let g = crate::gen::random_connected_graph::<Rat>(&mut rng, 10);
            assert_eq!(affine_h1(&g, ResidueModel::Torsion), Finite(1));
        }
    }
}
