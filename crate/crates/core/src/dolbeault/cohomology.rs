//! Cochain complexes and cohomology of open scopes.
//!
//! For a scope `W` (an open set of nodes and segments on a mesh) the
//! full-support complexes are
//!
//! ```text
//! p = 0:  values on nodes and on dangling leg ends  --slope-->  segment coefficients
//! p = 1:  segment coefficients  --divergence-->  atoms on nodes
//! ```
//!
//! A dangling leg end (an in-scope segment whose endpoint is outside the
//! scope) carries its own value coordinate, one per incidence, which is how
//! a half-open leg supports a free slope. Compactly supported cochains
//! vanish on every segment and node adjacent to a boundary point; atoms are
//! finitely supported anyway, so the `(1,1)` space keeps all scope nodes.
//! Before a compact complex is assembled, every boundary-adjacent segment
//! is split so that each leg has at least two segments; dimensions are
//! invariant under this and any further refinement.

use crate::graph::{Mesh, NodeIx, OpenSet, SegIx, SubdivisionPoint};
use crate::linalg::Matrix;
use crate::potential::PlFunction;
use crate::scalar::{ratio, Scalar};

use super::Form;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Support {
    Full,
    Compact,
}

/// Split every boundary-adjacent segment of the scope: at the midpoint when
/// one endpoint is missing, at the third points when both are. After this
/// every leg consists of at least two segments and every scope node has at
/// most one boundary-adjacent incidence.
pub fn collar_refine<S: Scalar>(mesh: &Mesh<S>, set: &OpenSet) -> (Mesh<S>, OpenSet) {
    let mut extra: Vec<SubdivisionPoint<S>> = Vec::new();
    for s in set.seg_ixs() {
        let seg = &mesh.segments()[s];
        let missing = !set.has_node(seg.src) as usize + !set.has_node(seg.dst) as usize;
        let span = seg.t1.clone() - seg.t0.clone();
        match missing {
            0 => {}
            1 => extra.push(SubdivisionPoint {
                edge: seg.edge,
                t: seg.t0.clone() + span * ratio(1, 2),
            }),
            _ => {
                extra.push(SubdivisionPoint {
                    edge: seg.edge,
                    t: seg.t0.clone() + span.clone() * ratio(1, 3),
                });
                extra.push(SubdivisionPoint {
                    edge: seg.edge,
                    t: seg.t0.clone() + span * ratio(2, 3),
                });
            }
        }
    }
    let fine = mesh.refined(extra).expect("collar points are interior");
    let fine_set = set.refine_to(mesh, &fine);
    (fine, fine_set)
}

/// The two-row cochain complex of a scope at a given support.
#[derive(Debug, Clone)]
pub struct ScopeComplex<S: Scalar> {
    mesh: Mesh<S>,
    set: OpenSet,
    support: Support,
    nodes: Vec<NodeIx>,
    segs: Vec<SegIx>,
    /// Boundary incidences `(segment, missing at source end?)`.
    phantoms: Vec<(SegIx, bool)>,
    node_pos: Vec<Option<usize>>,
    seg_pos: Vec<Option<usize>>,
    /// Coordinates of the degree-(q=0) spaces actually used, depending on
    /// support: full uses all scope nodes/segments, compact only interior
    /// ones.
    fn_nodes: Vec<NodeIx>,
    fn_node_pos: Vec<Option<usize>>,
    coeff_segs: Vec<SegIx>,
    coeff_seg_pos: Vec<Option<usize>>,
    /// Slope map `C^{0,0} -> C^{0,1}`.
    d0: Matrix<S>,
    /// Divergence map `C^{1,0} -> C^{1,1}`.
    d1: Matrix<S>,
}

/// A cohomology basis: exact dimension plus representatives as forms on the
/// complex's mesh (extended by zero outside the scope).
#[derive(Debug, Clone)]
pub struct CohomologyBasis<S: Scalar> {
    pub p: u8,
    pub q: u8,
    pub support: Support,
    pub dim: usize,
    /// Representatives in the local cochain coordinates of the complex.
    pub reps: Vec<Vec<S>>,
}

impl<S: Scalar> ScopeComplex<S> {
    /// Assemble the complex. For compact support the scope must already be
    /// collared (see [`collar_refine`]); the public [`cohomology`] entry
    /// point takes care of that.
    pub fn new(mesh: &Mesh<S>, set: &OpenSet, support: Support) -> Self {
        let nodes: Vec<NodeIx> = set.node_ixs().collect();
        let segs: Vec<SegIx> = set.seg_ixs().collect();
        let mut phantoms: Vec<(SegIx, bool)> = Vec::new();
        for &s in &segs {
            let seg = &mesh.segments()[s];
            if !set.has_node(seg.src) {
                phantoms.push((s, true));
            }
            if !set.has_node(seg.dst) {
                phantoms.push((s, false));
            }
        }
        let mut node_pos = vec![None; mesh.node_count()];
        for (i, &n) in nodes.iter().enumerate() {
            node_pos[n] = Some(i);
        }
        let mut seg_pos = vec![None; mesh.segment_count()];
        for (i, &s) in segs.iter().enumerate() {
            seg_pos[s] = Some(i);
        }

        // boundary-adjacent cells (only relevant for compact support)
        let boundary_adjacent_node = |n: NodeIx| {
            mesh.incidences(n).iter().any(|&(s, _)| {
                seg_pos[s].is_some() && {
                    let seg = &mesh.segments()[s];
                    !set.has_node(seg.src) || !set.has_node(seg.dst)
                }
            })
        };
        let (fn_nodes, coeff_segs): (Vec<NodeIx>, Vec<SegIx>) = match support {
            Support::Full => (nodes.clone(), segs.clone()),
            Support::Compact => {
                if cfg!(debug_assertions) {
                    for &n in &nodes {
                        let adjacent = mesh
                            .incidences(n)
                            .iter()
                            .filter(|&&(s, _)| {
                                seg_pos[s].is_some() && {
                                    let seg = &mesh.segments()[s];
                                    !set.has_node(seg.src) || !set.has_node(seg.dst)
                                }
                            })
                            .count();
                        debug_assert!(
                            adjacent <= 1,
                            "compact support requires a collared scope"
                        );
                    }
                }
                (
                    nodes
                        .iter()
                        .copied()
                        .filter(|&n| !boundary_adjacent_node(n))
                        .collect(),
                    segs.iter()
                        .copied()
                        .filter(|&s| {
                            let seg = &mesh.segments()[s];
                            set.has_node(seg.src) && set.has_node(seg.dst)
                        })
                        .collect(),
                )
            }
        };
        let mut fn_node_pos = vec![None; mesh.node_count()];
        for (i, &n) in fn_nodes.iter().enumerate() {
            fn_node_pos[n] = Some(i);
        }
        let mut coeff_seg_pos = vec![None; mesh.segment_count()];
        for (i, &s) in coeff_segs.iter().enumerate() {
            coeff_seg_pos[s] = Some(i);
        }

        // Slope map. Full support: one row per scope segment, with phantom
        // coordinates for missing endpoints. Compact support: one row per
        // interior segment; values vanish at non-interior nodes.
        let c00 = fn_nodes.len()
            + match support {
                Support::Full => phantoms.len(),
                Support::Compact => 0,
            };
        let mut d0: Matrix<S> = Matrix::zero(coeff_segs.len(), c00);
        let mut phantom_pos_of = |s: SegIx, at_src: bool| -> usize {
            fn_nodes.len()
                + phantoms
                    .iter()
                    .position(|&(ps, pr)| ps == s && pr == at_src)
                    .expect("phantom incidence exists")
        };
        for (row, &s) in coeff_segs.iter().enumerate() {
            let seg = &mesh.segments()[s];
            let inv_len = S::one() / seg.length.clone();
            let mut add = |node: NodeIx, at_src: bool, sign: S| {
                let col = if set.has_node(node) {
                    fn_node_pos[node]
                } else if support == Support::Full {
                    Some(phantom_pos_of(s, at_src))
                } else {
                    unreachable!("interior segments have in-scope endpoints")
                };
                if let Some(col) = col {
                    d0[(row, col)] = d0[(row, col)].clone() + sign;
                }
            };
            add(seg.dst, false, inv_len.clone());
            add(seg.src, true, -inv_len);
        }

        // Divergence map: one row per scope node (the (1,1) coordinate
        // space), one column per coefficient segment.
        let mut d1: Matrix<S> = Matrix::zero(nodes.len(), coeff_segs.len());
        for (col, &s) in coeff_segs.iter().enumerate() {
            let seg = &mesh.segments()[s];
            if let Some(row) = node_pos[seg.src] {
                d1[(row, col)] = d1[(row, col)].clone() + S::one();
            }
            if let Some(row) = node_pos[seg.dst] {
                d1[(row, col)] = d1[(row, col)].clone() - S::one();
            }
        }

        ScopeComplex {
            mesh: mesh.clone(),
            set: set.clone(),
            support,
            nodes,
            segs,
            phantoms,
            node_pos,
            seg_pos,
            fn_nodes,
            fn_node_pos,
            coeff_segs,
            coeff_seg_pos,
            d0,
            d1,
        }
    }

    pub fn mesh(&self) -> &Mesh<S> {
        &self.mesh
    }

    pub fn set(&self) -> &OpenSet {
        &self.set
    }

    pub fn support(&self) -> Support {
        self.support
    }

    pub fn boundary_count(&self) -> usize {
        self.phantoms.len()
    }

    /// Cochain space dimension at a bidegree.
    pub fn cochain_dim(&self, p: u8, q: u8) -> usize {
        match (p, q) {
            (0, 0) => self.d0.cols(),
            (0, 1) | (1, 0) => self.coeff_segs.len(),
            (1, 1) => self.nodes.len(),
            _ => panic!("bidegree out of range"),
        }
    }

    fn differential(&self, p: u8) -> &Matrix<S> {
        match p {
            0 => &self.d0,
            1 => &self.d1,
            _ => panic!("bidegree out of range"),
        }
    }

    /// Cohomology dimension and representatives at a bidegree.
    pub fn basis(&self, p: u8, q: u8) -> CohomologyBasis<S> {
        let d = self.differential(p);
        let reps: Vec<Vec<S>> = match q {
            0 => d.kernel_basis(),
            1 => {
                let pivots = d.transpose().row_space_pivots();
                let dim = self.cochain_dim(p, 1);
                (0..dim)
                    .filter(|j| !pivots.contains(j))
                    .map(|j| {
                        let mut v = vec![S::zero(); dim];
                        v[j] = S::one();
                        v
                    })
                    .collect()
            }
            _ => panic!("bidegree out of range"),
        };
        // representatives are cocycles with independent classes
        debug_assert!(self.verify_reps(p, q, &reps));
        CohomologyBasis {
            p,
            q,
            support: self.support,
            dim: reps.len(),
            reps,
        }
    }

    /// Check that representatives are cocycles (for q = 0) and that their
    /// classes are independent over the coboundary image (for q = 1).
    fn verify_reps(&self, p: u8, q: u8, reps: &[Vec<S>]) -> bool {
        let d = self.differential(p);
        if q == 0 {
            if !reps
                .iter()
                .all(|r| d.apply(r).iter().all(|x| x.is_zero()))
            {
                return false;
            }
            let m = Matrix::from_rows(reps.to_vec());
            return m.rank() == reps.len();
        }
        let image = d.transpose();
        let stacked = if reps.is_empty() {
            image.clone()
        } else {
            image.vstack(&Matrix::from_rows(reps.to_vec()))
        };
        stacked.rank() == image.rank() + reps.len()
    }

    pub fn dims(&self) -> [[usize; 2]; 2] {
        // [p][q]
        [
            [self.basis(0, 0).dim, self.basis(0, 1).dim],
            [self.basis(1, 0).dim, self.basis(1, 1).dim],
        ]
    }

    /// Coordinates of a cocycle's class in the basis of `basis(p, q)`.
    /// Solves over the image for q = 1.
    pub fn class_coords(&self, p: u8, q: u8, cocycle: &[S]) -> Vec<S> {
        let basis = self.basis(p, q);
        if basis.dim == 0 {
            return Vec::new();
        }
        let rep_cols = columns(&basis.reps, self.cochain_dim(p, q));
        let system = match q {
            0 => rep_cols,
            1 => {
                let image_cols = self.differential(p).clone();
                image_cols.hstack(&rep_cols)
            }
            _ => panic!("bidegree out of range"),
        };
        let x = system
            .solve(cocycle)
            .expect("cocycle lies in image + representative span");
        let offset = system.cols() - basis.dim;
        x[offset..].to_vec()
    }

    /// Expand a local `(0,0)` or `(1,1)` cochain to a dense node vector on
    /// the mesh (zero outside the scope; leg-end coordinates are dropped).
    pub fn node_expansion(&self, p: u8, q: u8, v: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.mesh.node_count()];
        match (p, q) {
            (0, 0) => {
                for (i, &n) in self.fn_nodes.iter().enumerate() {
                    out[n] = v[i].clone();
                }
            }
            (1, 1) => {
                for (i, &n) in self.nodes.iter().enumerate() {
                    out[n] = v[i].clone();
                }
            }
            _ => panic!("not a node-valued bidegree"),
        }
        out
    }

    /// Expand a local `(1,0)` or `(0,1)` cochain to a dense segment vector.
    pub fn seg_expansion(&self, v: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.mesh.segment_count()];
        for (i, &s) in self.coeff_segs.iter().enumerate() {
            out[s] = v[i].clone();
        }
        out
    }

    /// Materialize a local cochain as a global form.
    pub fn to_form(&self, p: u8, q: u8, v: &[S]) -> Form<S> {
        match (p, q) {
            (0, 0) => Form::Function(PlFunction {
                values: self.node_expansion(0, 0, v),
            }),
            (1, 0) => Form::OneZero(self.seg_expansion(v)),
            (0, 1) => Form::ZeroOne(self.seg_expansion(v)),
            (1, 1) => Form::Measure {
                atoms: self.node_expansion(1, 1, v),
                density: vec![S::zero(); self.mesh.segment_count()],
            },
            _ => panic!("bidegree out of range"),
        }
    }

    /// Restrict a cocycle from a larger scope on the same mesh into this
    /// complex's coordinates. Both complexes must have full support.
    pub fn restrict_from(&self, bigger: &ScopeComplex<S>, p: u8, q: u8, v: &[S]) -> Vec<S> {
        assert_eq!(self.support, Support::Full);
        assert_eq!(bigger.support, Support::Full);
        match (p, q) {
            (0, 0) => {
                let mut out = Vec::with_capacity(self.cochain_dim(0, 0));
                for &n in &self.fn_nodes {
                    out.push(v[bigger.fn_node_pos[n].expect("scope inclusion")].clone());
                }
                for &(s, at_src) in &self.phantoms {
                    let seg = &bigger.mesh.segments()[s];
                    let missing = if at_src { seg.src } else { seg.dst };
                    let coord = match bigger.fn_node_pos[missing] {
                        Some(i) => i,
                        None => {
                            bigger.fn_nodes.len()
                                + bigger
                                    .phantoms
                                    .iter()
                                    .position(|&(ps, pr)| ps == s && pr == at_src)
                                    .expect("incidence is also a boundary of the larger scope")
                        }
                    };
                    out.push(v[coord].clone());
                }
                out
            }
            (1, 0) | (0, 1) => self
                .coeff_segs
                .iter()
                .map(|&s| v[bigger.coeff_seg_pos[s].expect("scope inclusion")].clone())
                .collect(),
            (1, 1) => self
                .nodes
                .iter()
                .map(|&n| v[bigger.node_pos[n].expect("scope inclusion")].clone())
                .collect(),
            _ => panic!("bidegree out of range"),
        }
    }

    /// Apply the differential to a local cochain (p, 0) -> (p, 1).
    pub fn coboundary(&self, p: u8, v: &[S]) -> Vec<S> {
        self.differential(p).apply(v)
    }
}

fn columns<S: Scalar>(cols: &[Vec<S>], rows: usize) -> Matrix<S> {
    let mut m: Matrix<S> = Matrix::zero(rows, cols.len());
    for (j, col) in cols.iter().enumerate() {
        for (i, x) in col.iter().enumerate() {
            m[(i, j)] = x.clone();
        }
    }
    m
}

/// Cohomology of a scope at a bidegree. For compact support the scope is
/// collared first; the returned complex owns the (possibly refined) mesh
/// the representatives live on.
pub fn cohomology<S: Scalar>(
    mesh: &Mesh<S>,
    set: &OpenSet,
    p: u8,
    q: u8,
    support: Support,
) -> (ScopeComplex<S>, CohomologyBasis<S>) {
    let complex = match support {
        Support::Full => ScopeComplex::new(mesh, set, Support::Full),
        Support::Compact => {
            let (fine, fine_set) = collar_refine(mesh, set);
            ScopeComplex::new(&fine, &fine_set, Support::Compact)
        }
    };
    let basis = complex.basis(p, q);
    (complex, basis)
}
