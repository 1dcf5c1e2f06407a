//! Deterministic, seeded generators for well-conditioned random instances:
//! subspaces, relations, partial operators, mutually adjoint pairs,
//! symmetric / skew / unitary operators and controlled perturbations.
//!
//! Reproducibility contract: every generator is a pure function of
//! (config, arguments). Randomness comes from a ChaCha8 stream seeded with
//! `GenConfig::seed` and Gaussians from an explicit Box–Muller transform, so
//! counterexamples are replayable; the algorithm identifier travels in
//! output metadata. Degenerate draws are retried up to a hard cap and then
//! reported as errors rather than silently skewing the distribution.
//!
//! Instance conditioning: operator draws are normalized to operator norm
//! [`OPERATOR_NORM_TARGET`] and kept away from singularity, and the
//! structured perturbations below push the pairing defect in the direction
//! the perturbed criterion actually measures (skew directions against
//! Hermitian bases, Hermitian directions against skew bases, a multiplicative
//! Hermitian factor against unitaries). That keeps a defect of δ detectable
//! on the default ±2^k probe grid instead of hiding beyond its largest
//! magnitude.

use nalgebra::DMatrix;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::check::TolerancePolicy;
use crate::error::{Error, Result};
use crate::relation::{pairing_defect, LinearRelation, OperatorSpec};
use crate::scalar::{FieldTag, Scalar};
use crate::subspace::{self, Subspace};

/// Identifier of the pseudo-random recipe, recorded in counterexample dumps.
pub const GENERATOR_ALGORITHM: &str = "chacha8+box-muller/v1";

/// Operator norm all random operator draws are scaled to.
pub const OPERATOR_NORM_TARGET: f64 = 0.75;

/// Relative lower bound on σ_min/σ_max for square operator draws.
pub const CONDITION_FLOOR: f64 = 0.05;

/// Absolute σ_min floor enforced on structured perturbation results.
const PERTURBED_MIN_SV: f64 = 0.02;

const MAX_RETRIES: usize = 100;

/// Configuration of one deterministic draw.
#[derive(Clone, Copy, Debug)]
pub struct GenConfig {
    pub seed: u64,
    pub field: FieldTag,
    /// Largest ambient dimension the campaign mixes draw.
    pub max_dim: usize,
    /// Minimum relative singular-value separation enforced on generated
    /// bases.
    pub margin_floor: f64,
}

impl GenConfig {
    pub fn new(seed: u64, field: FieldTag) -> Self {
        GenConfig {
            seed,
            field,
            max_dim: 6,
            margin_floor: 1e-4,
        }
    }

    /// Per-trial config: seed ⊕ trial-index, so fan-out order never affects
    /// results.
    pub fn with_trial(&self, trial: u64) -> Self {
        GenConfig {
            seed: self.seed ^ trial,
            ..*self
        }
    }

    /// Per-operation stream: distinct generator operations must not decode
    /// the same ChaCha stream, or a perturbation direction can replay the
    /// base draw it is supposed to perturb.
    fn rng_salted(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt)
    }
}

mod salt {
    pub const SUBSPACE: u64 = 0x5355_4253;
    pub const RELATION: u64 = 0x5245_4c41;
    pub const OPERATOR: u64 = 0x4f50_4552;
    pub const ADJOINT_PAIR: u64 = 0x4144_4a50;
    pub const SYMMETRIC: u64 = 0x5359_4d4d;
    pub const SKEW: u64 = 0x534b_4557;
    pub const UNITARY: u64 = 0x554e_4954;
    pub const SYMMETRIC_SINGULAR: u64 = 0x5349_4e47;
    pub const SUBRELATION: u64 = 0x5355_4252;
    pub const RESPAN: u64 = 0x5245_5350;
    pub const PERTURB_PAIRING: u64 = 0x5045_5254;
    pub const PERTURB_SYMMETRIC: u64 = 0x5053_5953;
    pub const PERTURB_SKEW: u64 = 0x5053_4b57;
    pub const PERTURB_UNITARY: u64 = 0x5055_4e49;
    pub const RESTRICT: u64 = 0x5245_5354;
}

fn gaussian<T: Scalar, R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> DMatrix<T> {
    DMatrix::from_fn(rows, cols, |_, _| T::sample_normal(rng))
}

fn subspace_from<T: Scalar>(
    rng: &mut ChaCha8Rng,
    cfg: &GenConfig,
    ambient: usize,
    dim: usize,
    tol: &TolerancePolicy,
) -> Result<Subspace<T>> {
    if dim > ambient {
        return Err(Error::DimensionMismatch {
            context: "random subspace",
            expected: ambient,
            actual: dim,
        });
    }
    if dim == 0 {
        return Ok(Subspace::zero(ambient));
    }
    for _ in 0..MAX_RETRIES {
        let g: DMatrix<T> = gaussian(rng, ambient, dim);
        let sv = subspace::singular_values(&g);
        let sigma_max = sv.first().copied().unwrap_or(0.0);
        let sigma_min = sv.last().copied().unwrap_or(0.0);
        if sigma_max > 0.0 && sigma_min >= cfg.margin_floor * sigma_max {
            let s = subspace::orthonormal_basis(&g, tol);
            if s.dim() == dim {
                return Ok(s);
            }
        }
    }
    Err(Error::DegenerateGeneration {
        attempts: MAX_RETRIES,
    })
}

/// Random `dim`-dimensional subspace of an `ambient`-dimensional space:
/// orthonormalized Gaussian, deterministic in the config.
pub fn random_subspace<T: Scalar>(
    cfg: &GenConfig,
    ambient: usize,
    dim: usize,
    tol: &TolerancePolicy,
) -> Result<Subspace<T>> {
    debug_assert_eq!(cfg.field, T::FIELD);
    subspace_from(&mut cfg.rng_salted(salt::SUBSPACE), cfg, ambient, dim, tol)
}

/// Random relation with a graph of the requested dimension; may have a
/// nontrivial multivalued part.
pub fn random_relation<T: Scalar>(
    cfg: &GenConfig,
    h_dim: usize,
    k_dim: usize,
    graph_dim: usize,
    tol: &TolerancePolicy,
) -> Result<LinearRelation<T>> {
    let graph = subspace_from(&mut cfg.rng_salted(salt::RELATION), cfg, h_dim + k_dim, graph_dim, tol)?;
    LinearRelation::new(h_dim, k_dim, graph)
}

fn scaled_gaussian_matrix<T: Scalar>(
    rng: &mut ChaCha8Rng,
    rows: usize,
    cols: usize,
) -> DMatrix<T> {
    let g: DMatrix<T> = gaussian(rng, rows, cols);
    let norm = subspace::operator_norm(&g);
    if norm == 0.0 {
        g
    } else {
        g * T::from_real(OPERATOR_NORM_TARGET / norm)
    }
}

fn conditioned_matrix<T: Scalar>(
    rng: &mut ChaCha8Rng,
    rows: usize,
    cols: usize,
    make: impl Fn(DMatrix<T>) -> DMatrix<T>,
) -> Result<DMatrix<T>> {
    if rows == 0 || cols == 0 {
        return Ok(DMatrix::zeros(rows, cols));
    }
    for _ in 0..MAX_RETRIES {
        let raw = make(gaussian(rng, rows, cols));
        let sv = subspace::singular_values(&raw);
        let sigma_max = sv.first().copied().unwrap_or(0.0);
        // one σ per column; only the first min(rows, cols) can be nonzero
        let sigma_min = sv.get(rows.min(cols).saturating_sub(1)).copied().unwrap_or(0.0);
        if sigma_max > 0.0 && sigma_min >= CONDITION_FLOOR * sigma_max {
            return Ok(raw * T::from_real(OPERATOR_NORM_TARGET / sigma_max));
        }
    }
    Err(Error::DegenerateGeneration {
        attempts: MAX_RETRIES,
    })
}

/// Random operator: a Gaussian action restricted to a random domain of the
/// requested dimension. The result always satisfies `is_operator`.
pub fn random_operator<T: Scalar>(
    cfg: &GenConfig,
    h_dim: usize,
    k_dim: usize,
    domain_dim: usize,
    tol: &TolerancePolicy,
) -> Result<LinearRelation<T>> {
    let mut rng = cfg.rng_salted(salt::OPERATOR);
    let matrix = scaled_gaussian_matrix(&mut rng, k_dim, h_dim);
    let domain = subspace_from(&mut rng, cfg, h_dim, domain_dim, tol)?;
    LinearRelation::from_operator(
        &OperatorSpec {
            matrix,
            domain: Some(domain),
        },
        tol,
    )
}

/// Mutually adjoint pair by construction: a conditioned total matrix and its
/// conjugate transpose.
pub fn random_adjoint_pair<T: Scalar>(
    cfg: &GenConfig,
    h_dim: usize,
    k_dim: usize,
    tol: &TolerancePolicy,
) -> Result<(LinearRelation<T>, LinearRelation<T>)> {
    let mut rng = cfg.rng_salted(salt::ADJOINT_PAIR);
    let a = conditioned_matrix(&mut rng, k_dim, h_dim, |g| g)?;
    let s = LinearRelation::from_total_matrix(&a, tol);
    let t = LinearRelation::from_total_matrix(&a.adjoint(), tol);
    Ok((s, t))
}

/// Random everywhere defined Hermitian operator (B + Bᴴ)/2, conditioned away
/// from singularity.
pub fn random_symmetric<T: Scalar>(
    cfg: &GenConfig,
    dim: usize,
    tol: &TolerancePolicy,
) -> Result<LinearRelation<T>> {
    let mut rng = cfg.rng_salted(salt::SYMMETRIC);
    let a = conditioned_matrix(&mut rng, dim, dim, |b| (&b + b.adjoint()) * T::from_real(0.5))?;
    Ok(LinearRelation::from_total_matrix(&a, tol))
}

/// Random everywhere defined skew-Hermitian operator (B − Bᴴ)/2. No
/// conditioning: real skew matrices of odd dimension are singular by nature.
pub fn random_skew_adjoint<T: Scalar>(
    cfg: &GenConfig,
    dim: usize,
    tol: &TolerancePolicy,
) -> Result<LinearRelation<T>> {
    if dim == 1 && T::FIELD == FieldTag::Real {
        // the only real skew 1×1 matrix is [0]
        return Ok(LinearRelation::from_total_matrix(
            &DMatrix::zeros(1, 1),
            tol,
        ));
    }
    let mut rng = cfg.rng_salted(salt::SKEW);
    let g: DMatrix<T> = gaussian(&mut rng, dim, dim);
    let skew = (&g - g.adjoint()) * T::from_real(0.5);
    let norm = subspace::operator_norm(&skew);
    let a = if norm == 0.0 {
        skew
    } else {
        skew * T::from_real(OPERATOR_NORM_TARGET / norm)
    };
    Ok(LinearRelation::from_total_matrix(&a, tol))
}

/// Random unitary: orthonormalized square Gaussian.
pub fn random_unitary<T: Scalar>(
    cfg: &GenConfig,
    dim: usize,
    tol: &TolerancePolicy,
) -> Result<LinearRelation<T>> {
    let mut rng = cfg.rng_salted(salt::UNITARY);
    let basis = subspace_from::<T>(&mut rng, cfg, dim, dim, tol)?;
    Ok(LinearRelation::from_total_matrix(basis.basis(), tol))
}

/// A pair with a controlled pairing violation.
#[derive(Clone, Debug)]
pub struct PerturbedPair<T: Scalar> {
    pub s: LinearRelation<T>,
    pub t: LinearRelation<T>,
    /// pairing_defect(S, T′)/δ; strictly positive for δ > 0.
    pub defect_ratio: f64,
}

/// T′ = T + δ·E for a random matrix E of unit operator norm. For a clean
/// total adjoint pair the resulting pairing defect is exactly δ.
pub fn perturb_pairing<T: Scalar>(
    cfg: &GenConfig,
    s: &LinearRelation<T>,
    t: &LinearRelation<T>,
    delta: f64,
    tol: &TolerancePolicy,
) -> Result<PerturbedPair<T>> {
    if delta < 0.0 {
        return Err(Error::Precondition("perturbation size must be ≥ 0".into()));
    }
    let base = t.to_matrix(tol).map_err(|_| Error::NotEverywhereDefined {
        context: "perturb_pairing needs a total T",
    })?;
    if delta == 0.0 {
        return Ok(PerturbedPair {
            s: s.clone(),
            t: t.clone(),
            defect_ratio: 0.0,
        });
    }
    let mut rng = cfg.rng_salted(salt::PERTURB_PAIRING);
    for _ in 0..MAX_RETRIES {
        let e: DMatrix<T> = gaussian(&mut rng, base.nrows(), base.ncols());
        let norm = subspace::operator_norm(&e);
        if norm == 0.0 {
            continue;
        }
        let t_prime =
            LinearRelation::from_total_matrix(&(&base + e * T::from_real(delta / norm)), tol);
        let defect = pairing_defect(s, &t_prime, tol)?;
        if defect > 0.0 {
            return Ok(PerturbedPair {
                s: s.clone(),
                t: t_prime,
                defect_ratio: defect / delta,
            });
        }
    }
    Err(Error::DegenerateGeneration {
        attempts: MAX_RETRIES,
    })
}

fn perturb_square_by<T: Scalar>(
    rng: &mut ChaCha8Rng,
    base: &DMatrix<T>,
    delta: f64,
    direction: impl Fn(DMatrix<T>) -> DMatrix<T>,
    tol: &TolerancePolicy,
) -> Result<LinearRelation<T>> {
    let n = base.nrows();
    for _ in 0..MAX_RETRIES {
        let d = direction(gaussian(rng, n, n));
        let norm = subspace::operator_norm(&d);
        if norm == 0.0 {
            continue;
        }
        let candidate = base + &d * T::from_real(delta / norm);
        let sv = subspace::singular_values(&candidate);
        if sv.last().copied().unwrap_or(0.0) >= PERTURBED_MIN_SV {
            return Ok(LinearRelation::from_total_matrix(&candidate, tol));
        }
    }
    Err(Error::DegenerateGeneration {
        attempts: MAX_RETRIES,
    })
}

/// S + δ·W for a unit-norm skew-Hermitian W: breaks self-adjointness with a
/// pairing defect of exactly 2δ for Hermitian S.
pub fn perturb_symmetric<T: Scalar>(
    cfg: &GenConfig,
    s: &LinearRelation<T>,
    delta: f64,
    tol: &TolerancePolicy,
) -> Result<LinearRelation<T>> {
    let base = s.to_matrix(tol)?;
    perturb_square_by(
        &mut cfg.rng_salted(salt::PERTURB_SYMMETRIC),
        &base,
        delta,
        |g| (&g - g.adjoint()) * T::from_real(0.5),
        tol,
    )
}

/// S + δ·P for a unit-norm Hermitian P: breaks skew-adjointness with a
/// pairing defect (against −S′) of exactly 2δ for skew S.
pub fn perturb_skew_adjoint<T: Scalar>(
    cfg: &GenConfig,
    s: &LinearRelation<T>,
    delta: f64,
    tol: &TolerancePolicy,
) -> Result<LinearRelation<T>> {
    let base = s.to_matrix(tol)?;
    perturb_square_by(
        &mut cfg.rng_salted(salt::PERTURB_SKEW),
        &base,
        delta,
        |g| (&g + g.adjoint()) * T::from_real(0.5),
        tol,
    )
}

/// U·(I + δ·P) for a unit-norm Hermitian P: stretches some singular value to
/// 1 ± δ, so the result is invertible but decisively non-unitary.
pub fn perturb_unitary<T: Scalar>(
    cfg: &GenConfig,
    u: &LinearRelation<T>,
    delta: f64,
    tol: &TolerancePolicy,
) -> Result<LinearRelation<T>> {
    let base = u.to_matrix(tol)?;
    let n = base.nrows();
    let mut rng = cfg.rng_salted(salt::PERTURB_UNITARY);
    for _ in 0..MAX_RETRIES {
        let p = {
            let g: DMatrix<T> = gaussian(&mut rng, n, n);
            (&g + g.adjoint()) * T::from_real(0.5)
        };
        let norm = subspace::operator_norm(&p);
        if norm == 0.0 {
            continue;
        }
        let factor = DMatrix::identity(n, n) + &p * T::from_real(delta / norm);
        return Ok(LinearRelation::from_total_matrix(&(&base * factor), tol));
    }
    Err(Error::DegenerateGeneration {
        attempts: MAX_RETRIES,
    })
}

/// Random sub-relation: the span of `graph_dim` random combinations of the
/// graph basis vectors, so the result is contained in `rel` by construction.
pub fn random_subrelation<T: Scalar>(
    cfg: &GenConfig,
    rel: &LinearRelation<T>,
    graph_dim: usize,
    tol: &TolerancePolicy,
) -> Result<LinearRelation<T>> {
    let g = rel.graph_dim();
    if graph_dim > g {
        return Err(Error::DimensionMismatch {
            context: "sub-relation graph dimension",
            expected: g,
            actual: graph_dim,
        });
    }
    if graph_dim == 0 {
        return Ok(LinearRelation::zero(rel.h_dim(), rel.k_dim()));
    }
    let mut rng = cfg.rng_salted(salt::SUBRELATION);
    for _ in 0..MAX_RETRIES {
        let coeffs: DMatrix<T> = gaussian(&mut rng, g, graph_dim);
        let spanners = rel.graph().basis() * coeffs;
        let sub = LinearRelation::from_spanners(rel.h_dim(), rel.k_dim(), &spanners, tol)?;
        if sub.graph_dim() == graph_dim {
            return Ok(sub);
        }
    }
    Err(Error::DegenerateGeneration {
        attempts: MAX_RETRIES,
    })
}

/// The same relation rebuilt from a different spanning set (a random change
/// of basis of the graph).
pub fn respan<T: Scalar>(
    cfg: &GenConfig,
    rel: &LinearRelation<T>,
    tol: &TolerancePolicy,
) -> Result<LinearRelation<T>> {
    let g = rel.graph_dim();
    if g == 0 {
        return Ok(rel.clone());
    }
    let mut rng = cfg.rng_salted(salt::RESPAN);
    for _ in 0..MAX_RETRIES {
        let coeffs: DMatrix<T> = gaussian(&mut rng, g, g);
        let spanners = rel.graph().basis() * coeffs;
        let re = LinearRelation::from_spanners(rel.h_dim(), rel.k_dim(), &spanners, tol)?;
        if re.graph_dim() == g {
            return Ok(re);
        }
    }
    Err(Error::DegenerateGeneration {
        attempts: MAX_RETRIES,
    })
}

/// Hermitian with a forced kernel: P·A·P for a Hermitian A and the projector
/// P onto a random (dim − 1)-dimensional subspace.
pub fn random_symmetric_singular<T: Scalar>(
    cfg: &GenConfig,
    dim: usize,
    tol: &TolerancePolicy,
) -> Result<LinearRelation<T>> {
    if dim == 0 {
        return Ok(LinearRelation::zero(0, 0));
    }
    let mut rng = cfg.rng_salted(salt::SYMMETRIC_SINGULAR);
    let a = conditioned_matrix(&mut rng, dim, dim, |b| (&b + b.adjoint()) * T::from_real(0.5))?;
    let sub = subspace_from::<T>(&mut rng, cfg, dim, dim - 1, tol)?;
    let p = sub.projector();
    Ok(LinearRelation::from_total_matrix(&(&p * a * &p), tol))
}

/// Same action as `s_total` on a random domain of the requested dimension;
/// the adjoint of the result picks up the multivalued part (dom)^⊥.
pub fn restrict_to_partial<T: Scalar>(
    s_total: &LinearRelation<T>,
    cfg: &GenConfig,
    domain_dim: usize,
    tol: &TolerancePolicy,
) -> Result<LinearRelation<T>> {
    let matrix = s_total.to_matrix(tol)?;
    let domain = subspace_from(&mut cfg.rng_salted(salt::RESTRICT), cfg, s_total.h_dim(), domain_dim, tol)?;
    LinearRelation::from_operator(
        &OperatorSpec {
            matrix,
            domain: Some(domain),
        },
        tol,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characterize::oracle_mutually_adjoint;
    use nalgebra::Complex;

    fn tol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    #[test]
    fn random_subspace_bounds_and_determinism() {
        let t = tol();
        let cfg = GenConfig::new(42, FieldTag::Real);
        assert_eq!(random_subspace::<f64>(&cfg, 3, 0, &t).unwrap().dim(), 0);
        assert_eq!(random_subspace::<f64>(&cfg, 3, 3, &t).unwrap().dim(), 3);
        assert!(random_subspace::<f64>(&cfg, 2, 3, &t).is_err());

        let a = random_subspace::<f64>(&cfg, 3, 1, &t).unwrap();
        let b = random_subspace::<f64>(&cfg, 3, 1, &t).unwrap();
        assert_eq!(a.basis(), b.basis(), "same config must give identical bits");

        let other = random_subspace::<f64>(&GenConfig::new(43, FieldTag::Real), 3, 1, &t).unwrap();
        assert_ne!(a.basis(), other.basis());
    }

    #[test]
    fn random_relation_spans_requested_graph() {
        let t = tol();
        let cfg = GenConfig::new(7, FieldTag::Real);
        assert_eq!(
            random_relation::<f64>(&cfg, 2, 3, 0, &t).unwrap().graph_dim(),
            0
        );
        assert_eq!(
            random_relation::<f64>(&cfg, 2, 3, 5, &t).unwrap().graph_dim(),
            5
        );
        let r = random_relation::<f64>(&cfg, 2, 3, 4, &t).unwrap();
        let r2 = random_relation::<f64>(&cfg, 2, 3, 4, &t).unwrap();
        assert_eq!(r.graph().basis(), r2.graph().basis());
    }

    #[test]
    fn random_operator_is_operator_with_dual_identity() {
        let t = tol();
        for seed in 0..10 {
            let cfg = GenConfig::new(seed, FieldTag::Real);
            let r = random_operator::<f64>(&cfg, 4, 3, 2, &t).unwrap();
            assert!(r.is_operator(&t).verdict);
            let parts = r.parts(&t);
            assert_eq!(parts.dom.dim(), 2);
            // mul(adjoint) = complement(dom)
            let adj_mul = r.adjoint(&t).parts(&t).mul;
            assert!(adj_mul
                .equals(&parts.dom.complement(&t), &t)
                .unwrap()
                .verdict);
        }
        let cfg = GenConfig::new(3, FieldTag::Real);
        assert_eq!(
            random_operator::<f64>(&cfg, 4, 3, 0, &t).unwrap().graph_dim(),
            0
        );
        assert!(random_operator::<f64>(&cfg, 4, 3, 4, &t)
            .unwrap()
            .is_everywhere_defined(&t)
            .verdict);
    }

    #[test]
    fn adjoint_pairs_pass_the_oracle() {
        let t = tol();
        for seed in 0..20 {
            let cfg = GenConfig::new(seed, FieldTag::Real);
            let (s, tt) = random_adjoint_pair::<f64>(&cfg, 3, 3, &t).unwrap();
            assert!(oracle_mutually_adjoint(&s, &tt, &t).verdict);
            let cfg = GenConfig::new(seed, FieldTag::Complex);
            let (s, tt) = random_adjoint_pair::<Complex<f64>>(&cfg, 2, 4, &t).unwrap();
            assert!(oracle_mutually_adjoint(&s, &tt, &t).verdict);
        }
    }

    #[test]
    fn symmetric_skew_unitary_families() {
        let t = tol();
        for seed in 0..10 {
            let cfg = GenConfig::new(seed, FieldTag::Real);
            let s = random_symmetric::<f64>(&cfg, 4, &t).unwrap();
            assert!(s.is_symmetric(&t).unwrap().verdict);

            let w = random_skew_adjoint::<f64>(&cfg, 4, &t).unwrap();
            let m = w.to_matrix(&t).unwrap();
            assert!((&m + m.adjoint()).norm() < 1e-12);

            let u = random_unitary::<f64>(&cfg, 4, &t).unwrap();
            let um = u.to_matrix(&t).unwrap();
            assert!((um.adjoint() * &um - DMatrix::identity(4, 4)).norm() < 1e-10);

            let cfg_c = GenConfig::new(seed, FieldTag::Complex);
            let s = random_symmetric::<Complex<f64>>(&cfg_c, 3, &t).unwrap();
            let m = s.to_matrix(&t).unwrap();
            assert!((&m - m.adjoint()).norm() < 1e-12);
        }
    }

    #[test]
    fn perturbation_controls_the_defect() {
        let t = tol();
        let cfg = GenConfig::new(11, FieldTag::Real);
        let (s, tt) = random_adjoint_pair::<f64>(&cfg, 3, 3, &t).unwrap();

        // δ = 0 leaves the pair untouched
        let clean = perturb_pairing(&cfg, &s, &tt, 0.0, &t).unwrap();
        assert!(clean
            .t
            .graph()
            .equals(tt.graph(), &t)
            .unwrap()
            .verdict);

        // for a clean total pair the defect equals δ exactly
        for delta in [0.05, 0.1, 0.5] {
            let p = perturb_pairing(&cfg, &s, &tt, delta, &t).unwrap();
            let defect = pairing_defect(&p.s, &p.t, &t).unwrap();
            assert!((defect - delta).abs() < 1e-10, "defect {defect} vs {delta}");
            assert!((p.defect_ratio - 1.0).abs() < 1e-10);
        }

        // worked 1×1 example: S = [1], T = [1], δ = 1 can reach [2]
        let one = LinearRelation::from_total_matrix(&DMatrix::from_row_slice(1, 1, &[1.0]), &t);
        let p = perturb_pairing(&cfg, &one, &one, 1.0, &t).unwrap();
        let m = p.t.to_matrix(&t).unwrap()[(0, 0)];
        assert!((m - 2.0).abs() < 1e-12 || (m - 0.0).abs() < 1e-12);
        assert!((pairing_defect(&p.s, &p.t, &t).unwrap() - 1.0).abs() < 1e-12);

        // non-total T is rejected
        let partial = restrict_to_partial(&tt, &cfg, 1, &t).unwrap();
        assert!(perturb_pairing(&cfg, &s, &partial, 0.1, &t).is_err());
    }

    #[test]
    fn structured_perturbations_have_exact_defects() {
        let t = tol();
        for seed in 0..10 {
            let cfg = GenConfig::new(seed, FieldTag::Real);
            let s = random_symmetric::<f64>(&cfg, 4, &t).unwrap();
            let sp = perturb_symmetric(&cfg, &s, 0.1, &t).unwrap();
            let defect = pairing_defect(&sp, &sp, &t).unwrap();
            assert!((defect - 0.2).abs() < 1e-10);

            let w = random_skew_adjoint::<f64>(&cfg, 4, &t).unwrap();
            let wp = perturb_skew_adjoint(&cfg, &w, 0.1, &t).unwrap();
            let defect = pairing_defect(&wp, &wp.neg(), &t).unwrap();
            assert!((defect - 0.2).abs() < 1e-10);

            let u = random_unitary::<f64>(&cfg, 3, &t).unwrap();
            let up = perturb_unitary(&cfg, &u, 0.1, &t).unwrap();
            let um = up.to_matrix(&t).unwrap();
            // the Gram spectrum now sticks out of {1} by about (1±δ)² − 1
            let gram_dev = (um.adjoint() * &um - DMatrix::identity(3, 3)).norm();
            assert!(gram_dev > 0.15, "gram deviation {gram_dev}");
        }
    }

    #[test]
    fn perturbations_above_threshold_break_the_oracle() {
        let t = tol();
        for seed in 0..20 {
            let cfg = GenConfig::new(seed, FieldTag::Real);
            let (s, tt) = random_adjoint_pair::<f64>(&cfg, 3, 3, &t).unwrap();
            let p = perturb_pairing(&cfg, &s, &tt, 0.1, &t).unwrap();
            assert!(!oracle_mutually_adjoint(&p.s, &p.t, &t).verdict);
        }
    }

    #[test]
    fn restriction_respects_dual_identity() {
        let t = tol();
        let cfg = GenConfig::new(5, FieldTag::Real);
        let (s, _) = random_adjoint_pair::<f64>(&cfg, 4, 4, &t).unwrap();
        let unchanged = restrict_to_partial(&s, &cfg, 4, &t).unwrap();
        assert!(unchanged.graph().equals(s.graph(), &t).unwrap().verdict);
        assert_eq!(restrict_to_partial(&s, &cfg, 0, &t).unwrap().graph_dim(), 0);

        let partial = restrict_to_partial(&s, &cfg, 2, &t).unwrap();
        let parts = partial.parts(&t);
        let adj_mul = partial.adjoint(&t).parts(&t).mul;
        assert!(adj_mul
            .equals(&parts.dom.complement(&t), &t)
            .unwrap()
            .verdict);
    }

    #[test]
    fn trial_seed_mixing_is_xor() {
        let cfg = GenConfig::new(0b1010, FieldTag::Real);
        assert_eq!(cfg.with_trial(0).seed, 0b1010);
        assert_eq!(cfg.with_trial(0b0110).seed, 0b1100);
    }
}
