//! Discrete calculus of bigraded forms on a subdivided metric graph.
//!
//! On a curve the only bidegrees are `(p,q) ∈ {0,1}²`. Functions are
//! piecewise linear; `(1,0)`- and `(0,1)`-forms carry one coefficient per
//! oriented segment (flipping sign under orientation reversal); `(1,1)`-
//! forms are atomic measures on nodes plus a piecewise-constant density
//! that shows up in wedge products. `d''` of a function takes slopes, `d''`
//! of a `(1,0)`-form takes coefficient jumps and vertex sums, so `d'' ∘ d'`
//! is exactly the measure-valued Laplacian from the potential module.

mod cohomology;

pub use cohomology::{
    collar_refine, cohomology, CohomologyBasis, ScopeComplex, Support,
};

use crate::graph::Mesh;
use crate::potential::{DiscreteMeasure, PlFunction};
use crate::scalar::Scalar;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormError {
    #[error("degree overflow: d'' is not defined on bidegree ({0},{1})")]
    DegreeOverflow(u8, u8),
    #[error("d' expects bidegree (0,0), got ({0},{1})")]
    NotAFunction(u8, u8),
    #[error("wedge overflows bidegree: ({0},{1}) ∧ ({2},{3})")]
    WedgeOverflow(u8, u8, u8, u8),
    #[error("integration expects bidegree (1,1), got ({0},{1})")]
    NotTopDegree(u8, u8),
    #[error("form data does not match the mesh")]
    MeshMismatch,
}

/// A bigraded form. The data layout is indexed by the mesh the form lives
/// on: node values for functions and atoms, segment coefficients for the
/// degree-one parts.
#[derive(Debug, Clone, PartialEq)]
pub enum Form<S> {
    /// Bidegree (0,0).
    Function(PlFunction<S>),
    /// Bidegree (1,0): coefficient per oriented segment.
    OneZero(Vec<S>),
    /// Bidegree (0,1): coefficient per oriented segment.
    ZeroOne(Vec<S>),
    /// Bidegree (1,1): atoms per node plus density per segment.
    Measure { atoms: Vec<S>, density: Vec<S> },
}

impl<S: Scalar> Form<S> {
    pub fn bidegree(&self) -> (u8, u8) {
        match self {
            Form::Function(_) => (0, 0),
            Form::OneZero(_) => (1, 0),
            Form::ZeroOne(_) => (0, 1),
            Form::Measure { .. } => (1, 1),
        }
    }

    pub fn zero(mesh: &Mesh<S>, p: u8, q: u8) -> Self {
        let nodes = vec![S::zero(); mesh.node_count()];
        let segs = vec![S::zero(); mesh.segment_count()];
        match (p, q) {
            (0, 0) => Form::Function(PlFunction { values: nodes }),
            (1, 0) => Form::OneZero(segs),
            (0, 1) => Form::ZeroOne(segs),
            (1, 1) => Form::Measure {
                atoms: nodes,
                density: segs,
            },
            _ => panic!("bidegree out of range"),
        }
    }

    pub fn from_measure(mesh: &Mesh<S>, mu: &DiscreteMeasure<S>) -> Self {
        Form::Measure {
            atoms: mu.to_dense(mesh.node_count()),
            density: vec![S::zero(); mesh.segment_count()],
        }
    }

    fn check(&self, mesh: &Mesh<S>) -> Result<(), FormError> {
        let ok = match self {
            Form::Function(f) => f.values.len() == mesh.node_count(),
            Form::OneZero(a) | Form::ZeroOne(a) => a.len() == mesh.segment_count(),
            Form::Measure { atoms, density } => {
                atoms.len() == mesh.node_count() && density.len() == mesh.segment_count()
            }
        };
        if ok {
            Ok(())
        } else {
            Err(FormError::MeshMismatch)
        }
    }

    pub fn scale(&self, a: &S) -> Self {
        let s = |v: &Vec<S>| v.iter().map(|x| x.clone() * a.clone()).collect::<Vec<S>>();
        match self {
            Form::Function(f) => Form::Function(f.scale(a)),
            Form::OneZero(v) => Form::OneZero(s(v)),
            Form::ZeroOne(v) => Form::ZeroOne(s(v)),
            Form::Measure { atoms, density } => Form::Measure {
                atoms: s(atoms),
                density: s(density),
            },
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let s = |a: &Vec<S>, b: &Vec<S>| {
            a.iter()
                .zip(b)
                .map(|(x, y)| x.clone() + y.clone())
                .collect::<Vec<S>>()
        };
        match (self, other) {
            (Form::Function(f), Form::Function(g)) => Form::Function(f.add(g)),
            (Form::OneZero(a), Form::OneZero(b)) => Form::OneZero(s(a, b)),
            (Form::ZeroOne(a), Form::ZeroOne(b)) => Form::ZeroOne(s(a, b)),
            (
                Form::Measure { atoms, density },
                Form::Measure {
                    atoms: a2,
                    density: d2,
                },
            ) => Form::Measure {
                atoms: s(atoms, a2),
                density: s(density, d2),
            },
            _ => panic!("bidegree mismatch in form addition"),
        }
    }
}

fn slopes<S: Scalar>(mesh: &Mesh<S>, f: &PlFunction<S>) -> Vec<S> {
    mesh.segments()
        .iter()
        .map(|seg| {
            (f.values[seg.dst].clone() - f.values[seg.src].clone()) / seg.length.clone()
        })
        .collect()
}

fn divergence<S: Scalar>(mesh: &Mesh<S>, coeffs: &[S]) -> Vec<S> {
    let mut atoms = vec![S::zero(); mesh.node_count()];
    for (s, seg) in mesh.segments().iter().enumerate() {
        atoms[seg.src] = atoms[seg.src].clone() + coeffs[s].clone();
        atoms[seg.dst] = atoms[seg.dst].clone() - coeffs[s].clone();
    }
    atoms
}

/// The `d''` differential. Defined on bidegrees `(p, 0)`; the `(p, 1)`
/// bidegrees are top degree in `q`.
pub fn d_second<S: Scalar>(mesh: &Mesh<S>, form: &Form<S>) -> Result<Form<S>, FormError> {
    form.check(mesh)?;
    match form {
        Form::Function(f) => Ok(Form::ZeroOne(slopes(mesh, f))),
        Form::OneZero(a) => Ok(Form::Measure {
            atoms: divergence(mesh, a),
            density: vec![S::zero(); mesh.segment_count()],
        }),
        _ => {
            let (p, q) = form.bidegree();
            Err(FormError::DegreeOverflow(p, q))
        }
    }
}

/// The `d'` differential on functions: the slope form in bidegree (1,0).
pub fn d_prime<S: Scalar>(mesh: &Mesh<S>, form: &Form<S>) -> Result<Form<S>, FormError> {
    form.check(mesh)?;
    match form {
        Form::Function(f) => Ok(Form::OneZero(slopes(mesh, f))),
        _ => {
            let (p, q) = form.bidegree();
            Err(FormError::NotAFunction(p, q))
        }
    }
}

/// Wedge product with graded-commutative signs. A non-constant function
/// factor against degree-one data contributes its segmentwise average, which
/// keeps every integral exact (piecewise-constant coefficients cannot hold
/// an affine product, but its integral only sees the average).
pub fn wedge<S: Scalar>(
    mesh: &Mesh<S>,
    left: &Form<S>,
    right: &Form<S>,
) -> Result<Form<S>, FormError> {
    left.check(mesh)?;
    right.check(mesh)?;
    let avg = |f: &PlFunction<S>, seg: &crate::graph::MeshSegment<S>| {
        (f.values[seg.src].clone() + f.values[seg.dst].clone())
            / (S::one() + S::one())
    };
    let times_function = |f: &PlFunction<S>, other: &Form<S>| -> Form<S> {
        match other {
            Form::Function(g) => Form::Function(PlFunction {
                values: f
                    .values
                    .iter()
                    .zip(&g.values)
                    .map(|(a, b)| a.clone() * b.clone())
                    .collect(),
            }),
            Form::OneZero(a) => Form::OneZero(
                mesh.segments()
                    .iter()
                    .zip(a)
                    .map(|(seg, c)| avg(f, seg) * c.clone())
                    .collect(),
            ),
            Form::ZeroOne(a) => Form::ZeroOne(
                mesh.segments()
                    .iter()
                    .zip(a)
                    .map(|(seg, c)| avg(f, seg) * c.clone())
                    .collect(),
            ),
            Form::Measure { atoms, density } => Form::Measure {
                atoms: f
                    .values
                    .iter()
                    .zip(atoms)
                    .map(|(a, b)| a.clone() * b.clone())
                    .collect(),
                density: mesh
                    .segments()
                    .iter()
                    .zip(density)
                    .map(|(seg, c)| avg(f, seg) * c.clone())
                    .collect(),
            },
        }
    };
    match (left, right) {
        (Form::Function(f), _) => Ok(times_function(f, right)),
        (_, Form::Function(f)) => Ok(times_function(f, left)),
        (Form::OneZero(a), Form::ZeroOne(b)) => Ok(Form::Measure {
            atoms: vec![S::zero(); mesh.node_count()],
            density: a
                .iter()
                .zip(b)
                .map(|(x, y)| x.clone() * y.clone())
                .collect(),
        }),
        (Form::ZeroOne(b), Form::OneZero(a)) => Ok(Form::Measure {
            atoms: vec![S::zero(); mesh.node_count()],
            density: a
                .iter()
                .zip(b)
                .map(|(x, y)| -(x.clone() * y.clone()))
                .collect(),
        }),
        _ => {
            let (p1, q1) = left.bidegree();
            let (p2, q2) = right.bidegree();
            Err(FormError::WedgeOverflow(p1, q1, p2, q2))
        }
    }
}

/// Integrate a (1,1)-form: atom weights plus density times length.
pub fn integrate<S: Scalar>(mesh: &Mesh<S>, form: &Form<S>) -> Result<S, FormError> {
    form.check(mesh)?;
    match form {
        Form::Measure { atoms, density } => {
            let atom_sum: S = atoms.iter().cloned().sum();
            let density_sum: S = mesh
                .segments()
                .iter()
                .zip(density)
                .map(|(seg, d)| d.clone() * seg.length.clone())
                .sum();
            Ok(atom_sum + density_sum)
        }
        _ => {
            let (p, q) = form.bidegree();
            Err(FormError::NotTopDegree(p, q))
        }
    }
}

/// Serialize a form as segment/node lines under an orientation table, so
/// the sign convention of every coefficient is explicit.
pub fn render_form<S: Scalar>(mesh: &Mesh<S>, form: &Form<S>) -> String {
    let mut out = String::new();
    let (p, q) = form.bidegree();
    out.push_str(&format!("# bidegree ({},{})\n", p, q));
    out.push_str("# orientation:\n");
    for (i, seg) in mesh.segments().iter().enumerate() {
        out.push_str(&format!(
            "#   s{} = {}[{},{}] ({} -> {})\n",
            i,
            mesh.graph().edges()[seg.edge].id,
            seg.t0,
            seg.t1,
            mesh.node_name(seg.src),
            mesh.node_name(seg.dst),
        ));
    }
    match form {
        Form::Function(f) => {
            for (n, v) in f.values.iter().enumerate() {
                out.push_str(&format!("{}={}\n", mesh.node_name(n), v));
            }
        }
        Form::OneZero(a) | Form::ZeroOne(a) => {
            for (s, c) in a.iter().enumerate() {
                out.push_str(&format!("s{}={}\n", s, c));
            }
        }
        Form::Measure { atoms, density } => {
            for (n, v) in atoms.iter().enumerate() {
                if !v.is_zero() {
                    out.push_str(&format!("{}={}\n", mesh.node_name(n), v));
                }
            }
            for (s, c) in density.iter().enumerate() {
                if !c.is_zero() {
                    out.push_str(&format!("s{}={}\n", s, c));
                }
            }
        }
    }
    out
}

impl<S: Scalar> fmt::Display for Form<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, q) = self.bidegree();
        write!(f, "form({},{})", p, q)
    }
}
