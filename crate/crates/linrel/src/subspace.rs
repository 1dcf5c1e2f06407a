//! Dense-matrix foundations and tolerance-aware subspace arithmetic.
//!
//! A [`Subspace`] is an ambient dimension plus an orthonormal basis stored
//! column-wise; it is the universal carrier for domains, ranges, kernels and
//! graphs. All decisions (rank, containment, equality) go through one
//! [`TolerancePolicy`].

use nalgebra::DMatrix;

use crate::check::{CheckResult, TolerancePolicy};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::svd::jacobi_svd;

/// Singular values of `m`, sorted in descending order. Empty shapes have no
/// singular values.
pub fn singular_values<T: Scalar>(m: &DMatrix<T>) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    jacobi_svd(m).sigma
}

/// Largest singular value of `m`; zero for empty shapes.
pub fn operator_norm<T: Scalar>(m: &DMatrix<T>) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Number of singular values above the effective threshold of the policy.
pub fn rank<T: Scalar>(m: &DMatrix<T>, tol: &TolerancePolicy) -> usize {
    let sv = singular_values(m);
    let sigma_max = sv.first().copied().unwrap_or(0.0);
    let threshold = tol.rank_threshold(sigma_max, m.nrows(), m.ncols());
    sv.iter().take_while(|&&s| s > threshold).count()
}

/// Column space of `m` with an orthonormal basis of the numerical rank.
pub fn orthonormal_basis<T: Scalar>(m: &DMatrix<T>, tol: &TolerancePolicy) -> Subspace<T> {
    column_space_with_floor(m, tol, 0.0)
}

/// Like [`orthonormal_basis`] but rank-deciding against
/// `max(σ_max, scale_floor)`. Spanner sets arising as coordinate projections
/// of orthonormal bases live on unit scale; ranking them against their own
/// (possibly tiny) σ_max would promote directions that are really zero.
pub(crate) fn column_space_with_floor<T: Scalar>(
    m: &DMatrix<T>,
    tol: &TolerancePolicy,
    scale_floor: f64,
) -> Subspace<T> {
    let ambient = m.nrows();
    if ambient == 0 || m.ncols() == 0 {
        return Subspace::zero(ambient);
    }
    let svd = jacobi_svd(m);
    let sigma_max = svd.sigma.first().copied().unwrap_or(0.0);
    let threshold = tol.rank_threshold(sigma_max.max(scale_floor), m.nrows(), m.ncols());
    let r = svd.sigma.iter().take_while(|&&s| s > threshold).count();
    Subspace::new_unchecked(ambient, svd.u.columns(0, r).into_owned())
}

/// Right null space of `m`: {x : m·x = 0}, as a subspace of the column index
/// space. Read off the trailing right-singular vectors, which the one-sided
/// Jacobi decomposition provides for every column regardless of shape.
pub(crate) fn null_space<T: Scalar>(m: &DMatrix<T>, tol: &TolerancePolicy) -> Subspace<T> {
    null_space_with_floor(m, tol, 0.0)
}

/// Null space ranked against `max(σ_max, scale_floor)`; see
/// [`column_space_with_floor`].
pub(crate) fn null_space_with_floor<T: Scalar>(
    m: &DMatrix<T>,
    tol: &TolerancePolicy,
    scale_floor: f64,
) -> Subspace<T> {
    let n = m.ncols();
    if n == 0 {
        return Subspace::zero(0);
    }
    if m.nrows() == 0 {
        return Subspace::full(n);
    }
    let svd = jacobi_svd(m);
    let sigma_max = svd.sigma.first().copied().unwrap_or(0.0);
    let threshold = tol.rank_threshold(sigma_max.max(scale_floor), m.nrows(), m.ncols());
    let r = svd.sigma.iter().take_while(|&&s| s > threshold).count();
    Subspace::new_unchecked(n, svd.v.columns(r, n - r).into_owned())
}

/// A linear subspace of an ambient coordinate space, stored as an orthonormal
/// basis (ambient_dim × dim, columns pairwise orthonormal).
#[derive(Clone, Debug)]
pub struct Subspace<T: Scalar> {
    ambient_dim: usize,
    basis: DMatrix<T>,
}

impl<T: Scalar> Subspace<T> {
    /// Wraps a basis that is orthonormal by construction (SVD output or a
    /// unitary shuffle of one).
    pub(crate) fn new_unchecked(ambient_dim: usize, basis: DMatrix<T>) -> Self {
        debug_assert_eq!(basis.nrows(), ambient_dim);
        debug_assert!(Self::orthonormality_defect(&basis) <= 1e-9);
        Subspace { ambient_dim, basis }
    }

    /// Wraps an explicitly orthonormal basis, checking the invariant
    /// `basisᴴ·basis = I` entrywise.
    pub fn from_orthonormal(basis: DMatrix<T>) -> Result<Self> {
        let defect = Self::orthonormality_defect(&basis);
        if defect > 1e-9 {
            return Err(Error::Precondition(format!(
                "basis columns are not orthonormal (defect {defect:.3e})"
            )));
        }
        if basis.ncols() > basis.nrows() {
            return Err(Error::DimensionMismatch {
                context: "subspace basis",
                expected: basis.nrows(),
                actual: basis.ncols(),
            });
        }
        Ok(Subspace {
            ambient_dim: basis.nrows(),
            basis,
        })
    }

    fn orthonormality_defect(basis: &DMatrix<T>) -> f64 {
        let k = basis.ncols();
        let gram = basis.adjoint() * basis;
        let mut defect: f64 = 0.0;
        for i in 0..k {
            for j in 0..k {
                let expect = if i == j { T::one() } else { T::zero() };
                defect = defect.max((gram[(i, j)] - expect).modulus());
            }
        }
        defect
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: DMatrix::zeros(ambient_dim, 0),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: DMatrix::identity(ambient_dim, ambient_dim),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &DMatrix<T> {
        &self.basis
    }

    /// Orthogonal projector `P = B·Bᴴ` onto the subspace.
    pub fn projector(&self) -> DMatrix<T> {
        &self.basis * self.basis.adjoint()
    }

    /// Orthogonal complement within the ambient space: the null space of
    /// Bᴴ, whose singular values are exactly the ones of the orthonormal
    /// basis.
    pub fn complement(&self, tol: &TolerancePolicy) -> Subspace<T> {
        if self.dim() == 0 {
            return Subspace::full(self.ambient_dim);
        }
        if self.dim() == self.ambient_dim {
            return Subspace::zero(self.ambient_dim);
        }
        null_space(&self.basis.adjoint(), tol)
    }

    fn check_same_ambient(&self, other: &Subspace<T>) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch {
                left: self.ambient_dim,
                right: other.ambient_dim,
            });
        }
        Ok(())
    }

    /// Smallest subspace containing both: column space of the concatenated
    /// bases.
    pub fn sum(&self, other: &Subspace<T>, tol: &TolerancePolicy) -> Result<Subspace<T>> {
        self.check_same_ambient(other)?;
        let mut joined = DMatrix::zeros(self.ambient_dim, self.dim() + other.dim());
        joined.columns_mut(0, self.dim()).copy_from(&self.basis);
        joined
            .columns_mut(self.dim(), other.dim())
            .copy_from(&other.basis);
        Ok(column_space_with_floor(&joined, tol, 1.0))
    }

    /// Intersection via De Morgan: `(A^⊥ + B^⊥)^⊥`, exact in finite
    /// dimension.
    pub fn intersect(&self, other: &Subspace<T>, tol: &TolerancePolicy) -> Result<Subspace<T>> {
        self.check_same_ambient(other)?;
        let sum = self.complement(tol).sum(&other.complement(tol), tol)?;
        Ok(sum.complement(tol))
    }

    /// Does `self ⊇ other`? Decided by the residual `‖(I − P_self)·B_other‖₂`.
    pub fn contains(&self, other: &Subspace<T>, tol: &TolerancePolicy) -> Result<CheckResult> {
        self.check_same_ambient(other)?;
        let residual = &other.basis - &self.basis * (self.basis.adjoint() * &other.basis);
        let norm = operator_norm(&residual);
        Ok(CheckResult::from_upper_bound(
            norm,
            tol.subspace_eq_tol,
            "containment residual",
        ))
    }

    /// Subspace equality via the spectral norm of the projector difference
    /// (the sine of the largest principal angle).
    pub fn equals(&self, other: &Subspace<T>, tol: &TolerancePolicy) -> Result<CheckResult> {
        self.check_same_ambient(other)?;
        let diff = self.projector() - other.projector();
        let norm = operator_norm(&diff);
        Ok(CheckResult::from_upper_bound(
            norm,
            tol.subspace_eq_tol,
            "projector difference",
        ))
    }

    /// Nonincreasing cosines of the principal angles between two subspaces:
    /// the singular values of `B_selfᴴ·B_other`, clamped into [0, 1].
    pub fn principal_angle_cosines(&self, other: &Subspace<T>) -> Result<Vec<f64>> {
        self.check_same_ambient(other)?;
        let overlap = self.basis.adjoint() * &other.basis;
        Ok(singular_values(&overlap)
            .into_iter()
            .map(|s| s.clamp(0.0, 1.0))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::Complex;

    fn tol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    fn line(v: &[f64]) -> Subspace<f64> {
        let m = DMatrix::from_column_slice(v.len(), 1, v);
        orthonormal_basis(&m, &tol())
    }

    #[test]
    fn orthonormal_basis_rank_one_projection() {
        // column space of [[1,0],[0,0]] is span{e1}
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.0]);
        let s = orthonormal_basis(&m, &tol());
        assert_eq!(s.dim(), 1);
        assert!(s.equals(&line(&[1.0, 0.0]), &tol()).unwrap().verdict);
    }

    #[test]
    fn orthonormal_basis_identity_is_full() {
        let m = DMatrix::<f64>::identity(2, 2);
        let s = orthonormal_basis(&m, &tol());
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn orthonormal_basis_rank_deficient() {
        // [[1,2],[2,4]] has determinant 0, so rank 1 with span (1,2)/√5
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        let s = orthonormal_basis(&m, &tol());
        assert_eq!(s.dim(), 1);
        let expected = line(&[1.0, 2.0]);
        assert!(s.equals(&expected, &tol()).unwrap().verdict);
    }

    #[test]
    fn rank_examples() {
        let tol = tol();
        assert_eq!(rank(&DMatrix::<f64>::zeros(3, 3), &tol), 0);
        assert_eq!(rank(&DMatrix::<f64>::identity(3, 3), &tol), 3);
        // closed-form 2×2 singular values: σ_min ≈ 5e-16 falls below the
        // threshold 1e-10 · σ_max · 2
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 1.0 + 1e-15]);
        assert_eq!(rank(&m, &tol), 1);
    }

    #[test]
    fn complement_examples() {
        let t = tol();
        let e1 = line(&[1.0, 0.0]);
        let c = e1.complement(&t);
        assert!(c.equals(&line(&[0.0, 1.0]), &t).unwrap().verdict);

        let zero3 = Subspace::<f64>::zero(3);
        assert_eq!(zero3.complement(&t).dim(), 3);

        // diagonal line in ℝ²: complement is the antidiagonal
        let diag = line(&[1.0, 1.0]);
        let anti = diag.complement(&t);
        assert!(anti.equals(&line(&[1.0, -1.0]), &t).unwrap().verdict);
    }

    #[test]
    fn complement_dimension_is_exact() {
        let t = tol();
        for ambient in 0..5 {
            for d in 0..=ambient {
                let mut m = DMatrix::<f64>::zeros(ambient, d);
                for i in 0..d {
                    m[(i, i)] = 1.0;
                }
                let s = Subspace::from_orthonormal(m).unwrap();
                assert_eq!(s.dim() + s.complement(&t).dim(), ambient);
            }
        }
    }

    #[test]
    fn sum_examples() {
        let t = tol();
        let e1 = line(&[1.0, 0.0, 0.0]);
        let e2 = line(&[0.0, 1.0, 0.0]);
        let s = e1.sum(&e2, &t).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&e1, &t).unwrap().verdict);

        let a = line(&[1.0, 0.0]);
        assert!(a
            .sum(&Subspace::zero(2), &t)
            .unwrap()
            .equals(&a, &t)
            .unwrap()
            .verdict);

        // span{(1,0)} + span{(1,1)} covers ℝ²
        let b = line(&[1.0, 1.0]);
        assert_eq!(a.sum(&b, &t).unwrap().dim(), 2);
    }

    #[test]
    fn intersect_examples() {
        let t = tol();
        let e1 = line(&[1.0, 0.0]);
        let e2 = line(&[0.0, 1.0]);
        assert_eq!(e1.intersect(&e2, &t).unwrap().dim(), 0);

        let full = Subspace::<f64>::full(2);
        let diag = line(&[1.0, 1.0]);
        assert!(full
            .intersect(&diag, &t)
            .unwrap()
            .equals(&diag, &t)
            .unwrap()
            .verdict);

        // span{e1,e2} ∩ span{e2,e3} = span{e2} in ℝ³
        let a = orthonormal_basis(
            &DMatrix::from_row_slice(3, 2, &[1.0, 0.0, 0.0, 1.0, 0.0, 0.0]),
            &t,
        );
        let b = orthonormal_basis(
            &DMatrix::from_row_slice(3, 2, &[0.0, 0.0, 1.0, 0.0, 0.0, 1.0]),
            &t,
        );
        let meet = a.intersect(&b, &t).unwrap();
        assert_eq!(meet.dim(), 1);
        assert!(meet.equals(&line(&[0.0, 1.0, 0.0]), &t).unwrap().verdict);
    }

    #[test]
    fn contains_examples() {
        let t = tol();
        let full = Subspace::<f64>::full(2);
        let e1 = line(&[1.0, 0.0]);
        assert!(full.contains(&e1, &t).unwrap().verdict);
        let diag = line(&[1.0, 1.0]);
        let r = e1.contains(&diag, &t).unwrap();
        assert!(!r.verdict);
        assert!(r.margin < 0.0);

        let plane = orthonormal_basis(
            &DMatrix::from_row_slice(3, 2, &[1.0, 0.0, 0.0, 1.0, 0.0, 0.0]),
            &t,
        );
        let inside = line(&[1.0, 1.0, 0.0]);
        assert!(plane.contains(&inside, &t).unwrap().verdict);
    }

    #[test]
    fn equals_examples() {
        let t = tol();
        let e1 = line(&[1.0, 0.0]);
        let r = e1.equals(&e1, &t).unwrap();
        assert!(r.verdict);
        assert!((r.margin - t.subspace_eq_tol).abs() < 1e-15);

        let e2 = line(&[0.0, 1.0]);
        let r = e1.equals(&e2, &t).unwrap();
        assert!(!r.verdict);
        // ‖P_A − P_B‖₂ = 1 for orthogonal lines
        assert!((r.margin - (t.subspace_eq_tol - 1.0)).abs() < 1e-12);

        // sign-independence: span{(1,0)} = span{(−1,0)}
        let neg = line(&[-1.0, 0.0]);
        assert!(e1.equals(&neg, &t).unwrap().verdict);
    }

    #[test]
    fn projector_examples() {
        let t = tol();
        let e1 = line(&[1.0, 0.0]);
        let p = e1.projector();
        assert_eq!(p, DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.0]));

        let full = Subspace::<f64>::full(2);
        assert_eq!(full.projector(), DMatrix::identity(2, 2));

        let diag = line(&[1.0, 1.0]);
        let p = diag.projector();
        let expected = DMatrix::from_row_slice(2, 2, &[0.5, 0.5, 0.5, 0.5]);
        assert!((p - expected).norm() < 1e-12);
        let _ = t;
    }

    #[test]
    fn operator_norm_examples() {
        assert_eq!(operator_norm(&DMatrix::<f64>::identity(4, 4)), 1.0);
        assert_eq!(operator_norm(&DMatrix::<f64>::zeros(3, 2)), 0.0);
        // singular values {2, 1} read off MᴴM
        let m = DMatrix::from_row_slice(2, 2, &[0.0, 2.0, -1.0, 0.0]);
        assert!((operator_norm(&m) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn principal_angle_examples() {
        let t = tol();
        let e1 = line(&[1.0, 0.0]);
        assert_eq!(e1.principal_angle_cosines(&e1).unwrap(), vec![1.0]);
        let e2 = line(&[0.0, 1.0]);
        let c = e1.principal_angle_cosines(&e2).unwrap();
        assert!(c[0].abs() < 1e-15);
        let diag = line(&[1.0, 1.0]);
        let c = e1.principal_angle_cosines(&diag).unwrap();
        assert!((c[0] - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        let _ = t;
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let t = tol();
        let a = Subspace::<f64>::full(2);
        let b = Subspace::<f64>::full(3);
        assert!(matches!(
            a.sum(&b, &t),
            Err(Error::AmbientMismatch { .. })
        ));
        assert!(a.intersect(&b, &t).is_err());
        assert!(a.contains(&b, &t).is_err());
        assert!(a.equals(&b, &t).is_err());
        assert!(a.principal_angle_cosines(&b).is_err());
    }

    #[test]
    fn from_orthonormal_rejects_skewed_basis() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0]);
        assert!(Subspace::from_orthonormal(m).is_err());
    }

    #[test]
    fn complex_subspace_roundtrip() {
        let t = tol();
        let m = DMatrix::from_row_slice(
            2,
            1,
            &[Complex::new(1.0, 1.0), Complex::new(0.0, -1.0)],
        );
        let s = orthonormal_basis(&m, &t);
        assert_eq!(s.dim(), 1);
        assert!(s.equals(&s, &t).unwrap().verdict);
        let c = s.complement(&t);
        assert_eq!(c.dim(), 1);
        // complement is orthogonal: all principal cosines ~ 0
        let cosines = s.principal_angle_cosines(&c).unwrap();
        assert!(cosines[0] < 1e-12);
    }

    #[test]
    fn null_space_basics() {
        let t = tol();
        // wide matrix: nullspace needs directions outside the thin SVD
        let m = DMatrix::from_row_slice(1, 3, &[1.0, 0.0, 0.0]);
        let n = null_space(&m, &t);
        assert_eq!(n.dim(), 2);
        assert!(operator_norm(&(&m * n.basis())) < 1e-12);
    }
}
