//! One-sided Jacobi singular value decomposition.
//!
//! Cyclic one-sided Jacobi orthogonalizes the columns of A by plane
//! rotations; the accumulated rotations form V, the normalized columns form
//! U and their norms the singular values, so A = U·Σ·Vᴴ with V square
//! unitary. The method is slow compared to bidiagonalization but delivers
//! high relative accuracy and is immune to the deflation pathologies of
//! shift-based implementations on near-degenerate inputs, which is what the
//! tolerance-aware subspace decisions in this crate need. Dimensions here
//! stay double digit, so the extra sweeps cost nothing.

use nalgebra::DMatrix;

use crate::scalar::Scalar;

const MAX_SWEEPS: usize = 200;

/// A = U·Σ·Vᴴ. `u` is rows × cols with zero columns past the column rank;
/// `sigma` has one entry per column of A, sorted descending; `v` is a full
/// cols × cols unitary.
#[derive(Clone, Debug)]
pub struct Svd<T: Scalar> {
    pub u: DMatrix<T>,
    pub sigma: Vec<f64>,
    pub v: DMatrix<T>,
}

pub fn jacobi_svd<T: Scalar>(m: &DMatrix<T>) -> Svd<T> {
    let rows = m.nrows();
    let n = m.ncols();
    let mut a = m.clone();
    let mut v: DMatrix<T> = DMatrix::identity(n, n);
    if rows == 0 || n == 0 {
        return Svd {
            u: DMatrix::zeros(rows, n),
            sigma: vec![0.0; n],
            v,
        };
    }

    // couplings below ~50 ulp of the column norms are roundoff; chasing them
    // makes the sweep loop ping-pong at the eps floor without improving the
    // factorization
    let coupling_floor = 64.0 * f64::EPSILON;
    // rank-deficient inputs drive tail columns to the eps scale while they
    // stay mutually parallel; pairs involving such columns rotate forever
    // without changing the factorization, so they count as zero
    let zero_column = {
        let frob = a.norm();
        (f64::EPSILON * frob) * (f64::EPSILON * frob)
    };
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..n {
            for j in (i + 1)..n {
                let mut aa = 0.0_f64;
                let mut bb = 0.0_f64;
                let mut cc = T::zero();
                for r in 0..rows {
                    let x = a[(r, i)];
                    let y = a[(r, j)];
                    aa += x.modulus_squared();
                    bb += y.modulus_squared();
                    cc += x.conjugate() * y;
                }
                if aa <= zero_column || bb <= zero_column {
                    continue;
                }
                let cmod = cc.modulus();
                if cmod <= coupling_floor * (aa * bb).sqrt() {
                    continue;
                }
                rotated = true;
                // annihilate the Gram off-diagonal: cot 2θ = (b − a)/(2|c|),
                // phase carries the complex argument of c
                let tau = (bb - aa) / (2.0 * cmod);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let cos = 1.0 / (1.0 + t * t).sqrt();
                let sin = t * cos;
                let phase = cc * T::from_real(1.0 / cmod);
                let (rc, rs) = (T::from_real(cos), T::from_real(sin));
                for r in 0..rows {
                    let x = a[(r, i)];
                    let y = a[(r, j)];
                    a[(r, i)] = x * rc - phase.conjugate() * y * rs;
                    a[(r, j)] = phase * x * rs + y * rc;
                }
                for r in 0..n {
                    let x = v[(r, i)];
                    let y = v[(r, j)];
                    v[(r, i)] = x * rc - phase.conjugate() * y * rs;
                    v[(r, j)] = phase * x * rs + y * rc;
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    assert!(converged, "jacobi svd did not converge in {MAX_SWEEPS} sweeps");

    let mut order: Vec<usize> = (0..n).collect();
    let norms: Vec<f64> = (0..n).map(|i| a.column(i).norm()).collect();
    order.sort_by(|&x, &y| norms[y].partial_cmp(&norms[x]).unwrap());

    let mut u = DMatrix::zeros(rows, n);
    let mut sigma = vec![0.0; n];
    let mut v_sorted = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        sigma[dst] = norms[src];
        v_sorted.set_column(dst, &v.column(src));
        if norms[src] > 0.0 {
            let inv = T::from_real(1.0 / norms[src]);
            u.set_column(dst, &(a.column(src) * inv));
        }
    }
    Svd {
        u,
        sigma,
        v: v_sorted,
    }
}

/// Least-squares solution of A·X = B through the pseudo-inverse
/// X = V·Σ⁺·Uᴴ·B, with singular values at or below `cutoff` treated as zero.
pub fn pseudo_solve<T: Scalar>(a: &DMatrix<T>, b: &DMatrix<T>, cutoff: f64) -> DMatrix<T> {
    let svd = jacobi_svd(a);
    let mut y = svd.u.adjoint() * b;
    for (i, &s) in svd.sigma.iter().enumerate() {
        let scale = if s > cutoff { 1.0 / s } else { 0.0 };
        for c in 0..y.ncols() {
            y[(i, c)] *= T::from_real(scale);
        }
    }
    &svd.v * y
}
