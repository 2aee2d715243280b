//! Exact-arithmetic cohomology engine for augmented metric graphs.
//!
//! The crate models the skeleton of a projective non-archimedean curve as a
//! metric graph whose vertices carry a genus and a Picard-rank datum. On top
//! of that it provides
//!
//! * piecewise-linear potential theory (the measure-valued Laplacian `ddc`,
//!   exact Green-function solves, harmonic kernels),
//! * a discrete calculus of bigraded forms with `d'`, `d''`, wedge products
//!   and integration, and the resulting cohomology in bidegrees `(p,q)`
//!   with `p,q ∈ {0,1}`, with full or compact support, over the whole graph
//!   or over open regions,
//! * the dimension bookkeeping that links the cohomology of affine and
//!   harmonic functions to the `(1,1)`-cohomology, with Poincaré-duality
//!   verdicts, a finiteness verdict, and exactness audits,
//! * explicit duality pairing matrices, Mayer–Vietoris audits, and Hodge
//!   tables for strictly simple regions.
//!
//! All core math is generic over a field [`scalar::Scalar`]; the [`Rat`]
//! alias pins the exact-rational instantiation used everywhere by default.
//! There is no floating-point tolerance anywhere: every rank, kernel and
//! verdict is decided exactly.

pub mod dim;
pub mod dolbeault;
pub mod gen;
pub mod graph;
pub mod linalg;
pub mod pairing;
pub mod potential;
pub mod scalar;
pub mod sequences;

pub use dim::Dimension;
pub use dolbeault::{cohomology, d_prime, d_second, integrate, wedge, Form, Support};
pub use graph::{
    extract_region, parse_region_literal, parse_skeleton, serialize_skeleton, subdivide,
    AugmentedMetricGraph, Mesh, OpenSet, Region, ResidueModel, SubdivisionPoint,
};
pub use pairing::{mv_audit, pairing_matrix, pd_check, subset_hodge, three_of_four, Cover};
pub use potential::{
    ddc, green_solve, harmonic_space, resolution_audit, DiscreteMeasure, PlFunction,
};
pub use scalar::Scalar;
pub use sequences::{
    affine_h1, finiteness_verdict, hodge_symmetry_check, hodge_table, pd_verdict, sequence_audit,
    HodgeTable, PdVerdict,
};

/// Exact rational scalar: the default coefficient field.
pub type Rat = num::BigRational;

/// Augmented metric graph over exact rationals.
pub type RatGraph = AugmentedMetricGraph<Rat>;

/// Mesh over exact rationals.
pub type RatMesh = Mesh<Rat>;
