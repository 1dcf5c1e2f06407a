//! Linear relations as graph subspaces of H × K.
//!
//! A relation from `H` to `K` stores the dimensions of both spaces and an
//! orthonormal basis of its graph, with the H-block occupying the first
//! `h_dim` coordinates and the K-block the remaining `k_dim`. Everything --
//! parts, flips, adjoint, intersection, span, composition, scalar shift,
//! inverse -- is computed at subspace level, so partial domains and
//! nontrivial multivalued parts need no special casing.

use nalgebra::DMatrix;

use crate::check::{CheckResult, TolerancePolicy};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::subspace::{self, Subspace};

/// A linear relation between `H` (dimension `h_dim`) and `K` (dimension
/// `k_dim`): a subspace of H × K. In finite dimension every relation is
/// closed and equals its own double adjoint.
#[derive(Clone, Debug)]
pub struct LinearRelation<T: Scalar> {
    h_dim: usize,
    k_dim: usize,
    graph: Subspace<T>,
}

/// Domain, range, kernel and multivalued part of a relation.
#[derive(Clone, Debug)]
pub struct RelationParts<T: Scalar> {
    /// {h : (h, k) ∈ S}, subspace of H.
    pub dom: Subspace<T>,
    /// {k : (h, k) ∈ S}, subspace of K.
    pub ran: Subspace<T>,
    /// {h : (h, 0) ∈ S}, subspace of H.
    pub ker: Subspace<T>,
    /// {k : (0, k) ∈ S}, subspace of K.
    pub mul: Subspace<T>,
}

/// An operator given by a matrix action, optionally restricted to a domain
/// subspace. Absent domain means everywhere defined.
#[derive(Clone, Debug)]
pub struct OperatorSpec<T: Scalar> {
    /// k_dim × h_dim action.
    pub matrix: DMatrix<T>,
    pub domain: Option<Subspace<T>>,
}

impl<T: Scalar> LinearRelation<T> {
    pub fn new(h_dim: usize, k_dim: usize, graph: Subspace<T>) -> Result<Self> {
        if graph.ambient_dim() != h_dim + k_dim {
            return Err(Error::DimensionMismatch {
                context: "relation graph",
                expected: h_dim + k_dim,
                actual: graph.ambient_dim(),
            });
        }
        Ok(LinearRelation { h_dim, k_dim, graph })
    }

    /// The zero relation {0} ⊆ H × K.
    pub fn zero(h_dim: usize, k_dim: usize) -> Self {
        LinearRelation {
            h_dim,
            k_dim,
            graph: Subspace::zero(h_dim + k_dim),
        }
    }

    /// Everywhere-defined zero operator (graph H × {0}), as opposed to the
    /// zero relation {0}.
    pub fn zero_total(h_dim: usize, k_dim: usize, tol: &TolerancePolicy) -> Self {
        LinearRelation::from_total_matrix(&DMatrix::zeros(k_dim, h_dim), tol)
    }

    /// Graph of the identity operator on an n-dimensional space.
    pub fn identity(n: usize) -> Self {
        let f = std::f64::consts::FRAC_1_SQRT_2;
        let mut basis = DMatrix::zeros(2 * n, n);
        for i in 0..n {
            basis[(i, i)] = T::from_real(f);
            basis[(n + i, i)] = T::from_real(f);
        }
        LinearRelation {
            h_dim: n,
            k_dim: n,
            graph: Subspace::new_unchecked(2 * n, basis),
        }
    }

    /// The full relation H × K.
    pub fn full(h_dim: usize, k_dim: usize) -> Self {
        LinearRelation {
            h_dim,
            k_dim,
            graph: Subspace::full(h_dim + k_dim),
        }
    }

    /// Graph {(d, M·d) : d ∈ domain} of an operator; everywhere defined when
    /// no domain restriction is given.
    pub fn from_operator(spec: &OperatorSpec<T>, tol: &TolerancePolicy) -> Result<Self> {
        let k_dim = spec.matrix.nrows();
        let h_dim = spec.matrix.ncols();
        let domain_basis = match &spec.domain {
            Some(d) => {
                if d.ambient_dim() != h_dim {
                    return Err(Error::DimensionMismatch {
                        context: "operator domain",
                        expected: h_dim,
                        actual: d.ambient_dim(),
                    });
                }
                d.basis().clone()
            }
            None => DMatrix::identity(h_dim, h_dim),
        };
        let d = domain_basis.ncols();
        let images = &spec.matrix * &domain_basis;
        let mut spanners = DMatrix::zeros(h_dim + k_dim, d);
        spanners.rows_mut(0, h_dim).copy_from(&domain_basis);
        spanners.rows_mut(h_dim, k_dim).copy_from(&images);
        Ok(LinearRelation {
            h_dim,
            k_dim,
            graph: subspace::orthonormal_basis(&spanners, tol),
        })
    }

    /// Everywhere-defined operator with the given matrix.
    pub fn from_total_matrix(matrix: &DMatrix<T>, tol: &TolerancePolicy) -> Self {
        LinearRelation::from_operator(
            &OperatorSpec {
                matrix: matrix.clone(),
                domain: None,
            },
            tol,
        )
        .expect("total operator dimensions are consistent by construction")
    }

    /// Relation spanned by explicit columns of length `h_dim + k_dim`
    /// (H-block first).
    pub fn from_spanners(
        h_dim: usize,
        k_dim: usize,
        spanners: &DMatrix<T>,
        tol: &TolerancePolicy,
    ) -> Result<Self> {
        if spanners.nrows() != h_dim + k_dim {
            return Err(Error::DimensionMismatch {
                context: "relation spanners",
                expected: h_dim + k_dim,
                actual: spanners.nrows(),
            });
        }
        Ok(LinearRelation {
            h_dim,
            k_dim,
            graph: subspace::orthonormal_basis(spanners, tol),
        })
    }

    pub fn h_dim(&self) -> usize {
        self.h_dim
    }

    pub fn k_dim(&self) -> usize {
        self.k_dim
    }

    pub fn graph(&self) -> &Subspace<T> {
        &self.graph
    }

    pub fn graph_dim(&self) -> usize {
        self.graph.dim()
    }

    /// H-block (first `h_dim` rows) of the graph basis.
    fn h_block(&self) -> DMatrix<T> {
        self.graph.basis().rows(0, self.h_dim).into_owned()
    }

    /// K-block (last `k_dim` rows) of the graph basis.
    fn k_block(&self) -> DMatrix<T> {
        self.graph.basis().rows(self.h_dim, self.k_dim).into_owned()
    }

    /// Domain, range, kernel and multivalued part. The kernel is {X·c : Y·c = 0}
    /// for the graph blocks [X; Y]; the multivalued part is symmetric. The
    /// blocks of the orthonormal graph basis live on unit scale, so rank
    /// decisions here run against that scale: components below the rank
    /// threshold of a unit vector count as zero.
    pub fn parts(&self, tol: &TolerancePolicy) -> RelationParts<T> {
        let x = self.h_block();
        let y = self.k_block();
        let dom = subspace::column_space_with_floor(&x, tol, 1.0);
        let ran = subspace::column_space_with_floor(&y, tol, 1.0);
        let ker = subspace::column_space_with_floor(
            &(&x * subspace::null_space_with_floor(&y, tol, 1.0).basis()),
            tol,
            1.0,
        );
        let mul = subspace::column_space_with_floor(
            &(&y * subspace::null_space_with_floor(&x, tol, 1.0).basis()),
            tol,
            1.0,
        );
        RelationParts { dom, ran, ker, mul }
    }

    /// Closure of the relation. Every subspace of a finite-dimensional space
    /// is closed, so this is the identity; it exists so that callers written
    /// against the general calculus have the operation available.
    pub fn closure(&self) -> Self {
        self.clone()
    }

    /// Flip V(h, k) = (k, −h); the result relates K to H.
    pub fn flip_v(&self) -> LinearRelation<T> {
        let x = self.h_block();
        let y = self.k_block();
        let g = self.graph.dim();
        let mut basis = DMatrix::zeros(self.k_dim + self.h_dim, g);
        basis.rows_mut(0, self.k_dim).copy_from(&y);
        basis.rows_mut(self.k_dim, self.h_dim).copy_from(&(-&x));
        LinearRelation {
            h_dim: self.k_dim,
            k_dim: self.h_dim,
            graph: Subspace::new_unchecked(self.k_dim + self.h_dim, basis),
        }
    }

    /// Flip W(k, h) = (−h, k) used in the range decomposition of the shifted
    /// operator matrix; takes a relation between K and H to one between H
    /// and K.
    pub fn flip_w(&self) -> LinearRelation<T> {
        let x = self.h_block();
        let y = self.k_block();
        let g = self.graph.dim();
        let mut basis = DMatrix::zeros(self.k_dim + self.h_dim, g);
        basis.rows_mut(0, self.k_dim).copy_from(&(-&y));
        basis.rows_mut(self.k_dim, self.h_dim).copy_from(&x);
        LinearRelation {
            h_dim: self.k_dim,
            k_dim: self.h_dim,
            graph: Subspace::new_unchecked(self.k_dim + self.h_dim, basis),
        }
    }

    /// Adjoint S* = V(S)^⊥, a relation from K to H. Equivalently, (k', h')
    /// belongs to S* iff ⟨k, k'⟩ = ⟨h, h'⟩ for every (h, k) in S.
    pub fn adjoint(&self, tol: &TolerancePolicy) -> LinearRelation<T> {
        let flipped = self.flip_v();
        LinearRelation {
            h_dim: self.k_dim,
            k_dim: self.h_dim,
            graph: flipped.graph.complement(tol),
        }
    }

    fn check_same_spaces(&self, other: &Self) -> Result<()> {
        if self.h_dim != other.h_dim || self.k_dim != other.k_dim {
            return Err(Error::AmbientMismatch {
                left: self.h_dim + self.k_dim,
                right: other.h_dim + other.k_dim,
            });
        }
        Ok(())
    }

    /// Graph-level intersection S ∩ T.
    pub fn intersect(&self, other: &Self, tol: &TolerancePolicy) -> Result<Self> {
        self.check_same_spaces(other)?;
        Ok(LinearRelation {
            h_dim: self.h_dim,
            k_dim: self.k_dim,
            graph: self.graph.intersect(&other.graph, tol)?,
        })
    }

    /// Linear span S ∨ T of the union of two relations.
    pub fn vee(&self, other: &Self, tol: &TolerancePolicy) -> Result<Self> {
        self.check_same_spaces(other)?;
        Ok(LinearRelation {
            h_dim: self.h_dim,
            k_dim: self.k_dim,
            graph: self.graph.sum(&other.graph, tol)?,
        })
    }

    /// Composition self ∘ inner = {(h, l) : ∃k, (h, k) ∈ inner, (k, l) ∈ self},
    /// computed exactly at subspace level by embedding both graphs into
    /// H × K × L and projecting the intersection onto (h, l).
    pub fn compose(&self, inner: &Self, tol: &TolerancePolicy) -> Result<Self> {
        if inner.k_dim != self.h_dim {
            return Err(Error::DimensionMismatch {
                context: "composition inner range / outer domain",
                expected: self.h_dim,
                actual: inner.k_dim,
            });
        }
        let h = inner.h_dim;
        let k = inner.k_dim;
        let l = self.k_dim;
        let ambient = h + k + l;

        // {(h, k, l) : (h, k) ∈ inner} = graph(inner) ⊕ {0}×{0}×L
        let gi = inner.graph.dim();
        let mut a = DMatrix::zeros(ambient, gi + l);
        a.view_mut((0, 0), (h + k, gi)).copy_from(inner.graph.basis());
        a.view_mut((h + k, gi), (l, l))
            .copy_from(&DMatrix::identity(l, l));
        let a = Subspace::new_unchecked(ambient, a);

        // {(h, k, l) : (k, l) ∈ self} = H×{0}×{0} ⊕ graph(self)
        let go = self.graph.dim();
        let mut b = DMatrix::zeros(ambient, h + go);
        b.view_mut((0, 0), (h, h)).copy_from(&DMatrix::identity(h, h));
        b.view_mut((h, h), (k + l, go)).copy_from(self.graph.basis());
        let b = Subspace::new_unchecked(ambient, b);

        let meet = a.intersect(&b, tol)?;
        let g = meet.dim();
        let mut projected = DMatrix::zeros(h + l, g);
        projected
            .rows_mut(0, h)
            .copy_from(&meet.basis().rows(0, h).into_owned());
        projected
            .rows_mut(h, l)
            .copy_from(&meet.basis().rows(h + k, l).into_owned());
        Ok(LinearRelation {
            h_dim: h,
            k_dim: l,
            graph: subspace::orthonormal_basis(&projected, tol),
        })
    }

    /// R + λI = {(h, k + λh) : (h, k) ∈ R}; requires a square relation.
    pub fn add_scalar(&self, lambda: T, tol: &TolerancePolicy) -> Result<Self> {
        if self.h_dim != self.k_dim {
            return Err(Error::DimensionMismatch {
                context: "scalar shift needs a square relation",
                expected: self.h_dim,
                actual: self.k_dim,
            });
        }
        let x = self.h_block();
        let y = self.k_block();
        let shifted = &y + &x * lambda;
        let g = self.graph.dim();
        let mut spanners = DMatrix::zeros(self.h_dim + self.k_dim, g);
        spanners.rows_mut(0, self.h_dim).copy_from(&x);
        spanners.rows_mut(self.h_dim, self.k_dim).copy_from(&shifted);
        Ok(LinearRelation {
            h_dim: self.h_dim,
            k_dim: self.k_dim,
            graph: subspace::orthonormal_basis(&spanners, tol),
        })
    }

    /// Inverse relation {(k, h) : (h, k) ∈ R}; always exists.
    pub fn inverse(&self) -> Self {
        let x = self.h_block();
        let y = self.k_block();
        let g = self.graph.dim();
        let mut basis = DMatrix::zeros(self.k_dim + self.h_dim, g);
        basis.rows_mut(0, self.k_dim).copy_from(&y);
        basis.rows_mut(self.k_dim, self.h_dim).copy_from(&x);
        LinearRelation {
            h_dim: self.k_dim,
            k_dim: self.h_dim,
            graph: Subspace::new_unchecked(self.k_dim + self.h_dim, basis),
        }
    }

    /// c·R = {(h, c·k) : (h, k) ∈ R}.
    pub fn scale(&self, factor: T, tol: &TolerancePolicy) -> Self {
        let x = self.h_block();
        let y = self.k_block();
        let scaled = &y * factor;
        let g = self.graph.dim();
        let mut spanners = DMatrix::zeros(self.h_dim + self.k_dim, g);
        spanners.rows_mut(0, self.h_dim).copy_from(&x);
        spanners.rows_mut(self.h_dim, self.k_dim).copy_from(&scaled);
        LinearRelation {
            h_dim: self.h_dim,
            k_dim: self.k_dim,
            graph: subspace::column_space_with_floor(&spanners, tol, 1.0),
        }
    }

    /// −R = {(h, −k) : (h, k) ∈ R}.
    pub fn neg(&self) -> Self {
        let x = self.h_block();
        let y = self.k_block();
        let g = self.graph.dim();
        let mut basis = DMatrix::zeros(self.h_dim + self.k_dim, g);
        basis.rows_mut(0, self.h_dim).copy_from(&x);
        basis.rows_mut(self.h_dim, self.k_dim).copy_from(&(-&y));
        LinearRelation {
            h_dim: self.h_dim,
            k_dim: self.k_dim,
            graph: Subspace::new_unchecked(self.h_dim + self.k_dim, basis),
        }
    }

    /// Operator part: the multivalued component of the output is projected
    /// away, {(h, (I − P_mul)·k) : (h, k) ∈ R}. Coincides with R when R is
    /// an operator.
    pub fn operator_part(&self, tol: &TolerancePolicy) -> Self {
        let mul = self.parts(tol).mul;
        if mul.dim() == 0 {
            return self.clone();
        }
        let x = self.h_block();
        let y = self.k_block();
        let projected = &y - mul.projector() * &y;
        let g = self.graph.dim();
        let mut spanners = DMatrix::zeros(self.h_dim + self.k_dim, g);
        spanners.rows_mut(0, self.h_dim).copy_from(&x);
        spanners.rows_mut(self.h_dim, self.k_dim).copy_from(&projected);
        LinearRelation {
            h_dim: self.h_dim,
            k_dim: self.k_dim,
            graph: subspace::orthonormal_basis(&spanners, tol),
        }
    }

    /// Is the multivalued part trivial?
    pub fn is_operator(&self, tol: &TolerancePolicy) -> CheckResult {
        let mul = self.parts(tol).mul;
        mul.equals(&Subspace::zero(self.k_dim), tol)
            .expect("ambient dims agree by construction")
    }

    /// Is dom R the whole of H? (In finite dimension, "densely defined"
    /// means exactly this.)
    pub fn is_everywhere_defined(&self, tol: &TolerancePolicy) -> CheckResult {
        let dom = self.parts(tol).dom;
        dom.equals(&Subspace::full(self.h_dim), tol)
            .expect("ambient dims agree by construction")
    }

    /// Is ran R the whole of K?
    pub fn is_surjective(&self, tol: &TolerancePolicy) -> CheckResult {
        let ran = self.parts(tol).ran;
        ran.equals(&Subspace::full(self.k_dim), tol)
            .expect("ambient dims agree by construction")
    }

    /// Symmetry as graph containment R ⊆ R*, meaningful for relations too.
    pub fn is_symmetric(&self, tol: &TolerancePolicy) -> Result<CheckResult> {
        if self.h_dim != self.k_dim {
            return Err(Error::DimensionMismatch {
                context: "symmetry needs a square relation",
                expected: self.h_dim,
                actual: self.k_dim,
            });
        }
        let adj = self.adjoint(tol);
        adj.graph.contains(&self.graph, tol)
    }

    /// Images of the columns of `x` (all required to lie in dom R) under the
    /// operator R. Fails on relations with nontrivial multivalued part and on
    /// columns outside the domain.
    pub fn apply(&self, x: &DMatrix<T>, tol: &TolerancePolicy) -> Result<DMatrix<T>> {
        if x.nrows() != self.h_dim {
            return Err(Error::DimensionMismatch {
                context: "operator application",
                expected: self.h_dim,
                actual: x.nrows(),
            });
        }
        if !self.is_operator(tol).verdict {
            return Err(Error::NotAnOperator {
                context: "operator application",
            });
        }
        if x.ncols() == 0 || self.h_dim == 0 {
            return Ok(DMatrix::zeros(self.k_dim, x.ncols()));
        }
        let gx = self.h_block();
        let gy = self.k_block();
        if gx.ncols() == 0 {
            // zero graph: only the zero vector is in the domain
            let residual = x.norm();
            if residual > tol.subspace_eq_tol * residual.max(1.0) {
                return Err(Error::OutsideDomain { residual });
            }
            return Ok(DMatrix::zeros(self.k_dim, x.ncols()));
        }
        let cutoff = tol.rank_threshold(
            crate::subspace::operator_norm(&gx),
            gx.nrows(),
            gx.ncols(),
        );
        let coeffs = crate::svd::pseudo_solve(&gx, x, cutoff);
        let residual = (&gx * &coeffs - x).norm();
        if residual > tol.subspace_eq_tol * x.norm().max(1.0) {
            return Err(Error::OutsideDomain { residual });
        }
        Ok(&gy * coeffs)
    }

    /// Matrix of an everywhere-defined operator.
    pub fn to_matrix(&self, tol: &TolerancePolicy) -> Result<DMatrix<T>> {
        if !self.is_everywhere_defined(tol).verdict {
            return Err(Error::NotEverywhereDefined {
                context: "matrix extraction",
            });
        }
        self.apply(&DMatrix::identity(self.h_dim, self.h_dim), tol)
    }
}

/// Maximal violation of the adjointness pairing ⟨Sx, y⟩ = ⟨x, Ty⟩ over unit
/// vectors x ∈ dom S, y ∈ dom T: the spectral norm of the pairing-defect
/// form expressed in orthonormal domain bases. Zero (within tolerance)
/// exactly when S ⊆ T* and T ⊆ S*.
pub fn pairing_defect<T: Scalar>(
    s: &LinearRelation<T>,
    t: &LinearRelation<T>,
    tol: &TolerancePolicy,
) -> Result<f64> {
    if t.h_dim() != s.k_dim() || t.k_dim() != s.h_dim() {
        return Err(Error::DimensionMismatch {
            context: "pairing defect: T must map K back to H",
            expected: s.k_dim(),
            actual: t.h_dim(),
        });
    }
    if !s.is_operator(tol).verdict {
        return Err(Error::NotAnOperator {
            context: "pairing defect (S)",
        });
    }
    if !t.is_operator(tol).verdict {
        return Err(Error::NotAnOperator {
            context: "pairing defect (T)",
        });
    }
    let x = s.parts(tol).dom;
    let y = t.parts(tol).dom;
    let sx = s.apply(x.basis(), tol)?;
    let ty = t.apply(y.basis(), tol)?;
    // E[j, i] = ⟨S x_i, y_j⟩ − ⟨x_i, T y_j⟩
    let defect_form = y.basis().adjoint() * sx - ty.adjoint() * x.basis();
    Ok(subspace::operator_norm(&defect_form))
}
