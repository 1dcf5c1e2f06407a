//! Block operator matrix M_{S,T}(h, k) = (−Tk, Sh) on H × K, resolvent-set
//! membership, resolvent norms, and the resolvent-norm criterion for mutual
//! adjointness with its self-adjoint, skew-adjoint and unitary
//! specializations.
//!
//! The criterion quantifies over all nonzero real t; the artifact evaluates
//! the finite default grid {±2^k : k = −3..3}. The bound for all t reduces to
//! the real pairing identity plus surjectivity, the decisive quadratic form
//! being affine in t, so a grid spanning three decades of magnitude catches
//! every detectable pairing violation produced by the generators; the report
//! additionally records the pairing defect, which is the exact algebraic
//! reduction.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::check::{CheckResult, TolerancePolicy};
use crate::error::{Error, Result};
use crate::relation::{pairing_defect, LinearRelation};
use crate::scalar::Scalar;
use crate::subspace::{self, Subspace};

/// Absolute slack allowed on the ‖R(t)‖ ≤ 1/|t| comparison, absorbing
/// singular-value roundoff.
pub const NORM_SLACK: f64 = 1e-8;

/// Default probe grid {±2^k : k = −3..3}, ascending.
pub fn default_grid() -> Vec<f64> {
    let mut grid: Vec<f64> = (-3..=3).map(|k| -(2.0_f64.powi(k))).collect();
    grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut pos: Vec<f64> = (-3..=3).map(|k| 2.0_f64.powi(k)).collect();
    pos.sort_by(|a, b| a.partial_cmp(b).unwrap());
    grid.extend(pos);
    grid
}

/// The relation on (H×K) → (H×K) with graph
/// {((h, k), (−Tk, Sh)) : h ∈ dom S, k ∈ dom T}, for operators S: H→K and
/// T: K→H.
#[derive(Clone, Debug)]
pub struct OperatorMatrix<T: Scalar> {
    relation: LinearRelation<T>,
    h_dim: usize,
    k_dim: usize,
}

impl<T: Scalar> OperatorMatrix<T> {
    pub fn relation(&self) -> &LinearRelation<T> {
        &self.relation
    }

    pub fn h_dim(&self) -> usize {
        self.h_dim
    }

    pub fn k_dim(&self) -> usize {
        self.k_dim
    }

    pub fn to_matrix(&self, tol: &TolerancePolicy) -> Result<DMatrix<T>> {
        self.relation.to_matrix(tol)
    }
}

/// Graph-level assembly of the block relation; valid for arbitrary relations
/// S, T, which is what lets non-injective inputs in the unitary corollary
/// fail probes instead of erroring.
fn pair_matrix_relation<T: Scalar>(
    s: &LinearRelation<T>,
    t: &LinearRelation<T>,
) -> LinearRelation<T> {
    let h = s.h_dim();
    let k = s.k_dim();
    let n = h + k;
    let gs = s.graph().dim();
    let gt = t.graph().dim();
    // S-graph columns (x, y) contribute ((x, 0), (0, y)); T-graph columns
    // (u, v) contribute ((0, u), (−v, 0)). The blocks stay orthonormal.
    let mut basis = DMatrix::zeros(2 * n, gs + gt);
    basis
        .view_mut((0, 0), (h, gs))
        .copy_from(&s.graph().basis().rows(0, h).into_owned());
    basis
        .view_mut((n + h, 0), (k, gs))
        .copy_from(&s.graph().basis().rows(h, k).into_owned());
    basis
        .view_mut((h, gs), (k, gt))
        .copy_from(&t.graph().basis().rows(0, k).into_owned());
    basis
        .view_mut((n, gs), (h, gt))
        .copy_from(&(-t.graph().basis().rows(k, h).into_owned()));
    LinearRelation::new(n, n, Subspace::new_unchecked(2 * n, basis))
        .expect("block dimensions are consistent by construction")
}

fn require_pair<T: Scalar>(
    s: &LinearRelation<T>,
    t: &LinearRelation<T>,
    tol: &TolerancePolicy,
    context: &'static str,
) -> Result<()> {
    if t.h_dim() != s.k_dim() || t.k_dim() != s.h_dim() {
        return Err(Error::DimensionMismatch {
            context: "operator matrix: S: H→K requires T: K→H",
            expected: s.k_dim(),
            actual: t.h_dim(),
        });
    }
    if !s.is_operator(tol).verdict || !t.is_operator(tol).verdict {
        return Err(Error::NotAnOperator { context });
    }
    Ok(())
}

/// Operator matrix M_{S,T} for operators S: H→K, T: K→H.
pub fn build_matrix<T: Scalar>(
    s: &LinearRelation<T>,
    t: &LinearRelation<T>,
    tol: &TolerancePolicy,
) -> Result<OperatorMatrix<T>> {
    require_pair(s, t, tol, "operator matrix")?;
    Ok(OperatorMatrix {
        relation: pair_matrix_relation(s, t),
        h_dim: s.h_dim(),
        k_dim: s.k_dim(),
    })
}

/// One evaluation of the resolvent criterion at a nonzero real t.
#[derive(Clone, Debug, Serialize)]
pub struct ResolventProbe {
    pub t: f64,
    pub in_resolvent_set: CheckResult,
    /// ‖R(t)‖; present exactly when t lies in the resolvent set.
    pub norm: Option<f64>,
    /// 1/|t|.
    pub bound: f64,
    /// In the resolvent set and ‖R(t)‖ ≤ 1/|t| + NORM_SLACK.
    pub satisfied: CheckResult,
}

/// Result of probing a grid: probes in grid order, the pairing defect of the
/// pair, extra named conditions (used by the unitary corollary), the overall
/// verdict (all probes satisfied and all conditions true) and the
/// ground-truth oracle.
#[derive(Clone, Debug, Serialize)]
pub struct NieminenReport {
    pub criterion_id: String,
    pub conditions: Vec<(String, CheckResult)>,
    pub probes: Vec<ResolventProbe>,
    pub pairing_defect: f64,
    pub overall: CheckResult,
    pub oracle: CheckResult,
}

/// Shared probe machinery: the shifted relation degenerates the same way at
/// every t when M is not a total operator, so that part is computed once.
struct ProbeEngine<T: Scalar> {
    matrix: Option<DMatrix<T>>,
    structural_failure: Option<CheckResult>,
}

impl<T: Scalar> ProbeEngine<T> {
    fn new(s: &LinearRelation<T>, t: &LinearRelation<T>, tol: &TolerancePolicy) -> Self {
        let m = pair_matrix_relation(s, t);
        let structural = m.is_operator(tol).and(&m.is_everywhere_defined(tol));
        if structural.verdict {
            let matrix = m
                .to_matrix(tol)
                .expect("total operator extraction after structural check");
            ProbeEngine {
                matrix: Some(matrix),
                structural_failure: None,
            }
        } else {
            ProbeEngine {
                matrix: None,
                structural_failure: Some(structural),
            }
        }
    }

    fn probe(&self, t: f64, tol: &TolerancePolicy) -> Result<ResolventProbe> {
        if t == 0.0 {
            return Err(Error::Precondition(
                "resolvent probes quantify over nonzero real t only".to_string(),
            ));
        }
        let bound = 1.0 / t.abs();
        if let Some(structural) = &self.structural_failure {
            let in_set = CheckResult::fail(
                structural.margin.min(-tol.subspace_eq_tol),
                format!("M_S,T is not an everywhere defined operator: {}", structural.trace),
            );
            return Ok(ResolventProbe {
                t,
                in_resolvent_set: in_set.clone(),
                norm: None,
                bound,
                satisfied: in_set,
            });
        }
        let m = self.matrix.as_ref().unwrap();
        let n = m.nrows();
        let shifted = m - DMatrix::identity(n, n) * T::from_real(t);
        let sv = subspace::singular_values(&shifted);
        let sigma_max = sv.first().copied().unwrap_or(0.0);
        let sigma_min = sv.last().copied().unwrap_or(0.0);
        let threshold = tol.rank_threshold(sigma_max, n, n);
        let in_set = CheckResult::from_lower_bound(sigma_min, threshold, "sigma_min(M - t)");
        if !in_set.verdict {
            return Ok(ResolventProbe {
                t,
                in_resolvent_set: in_set.clone(),
                norm: None,
                bound,
                satisfied: in_set,
            });
        }
        let inverse = shifted.clone().try_inverse();
        match inverse {
            Some(inv) => {
                let norm = subspace::operator_norm(&inv);
                let norm_ok =
                    CheckResult::from_upper_bound(norm, bound + NORM_SLACK, "resolvent norm");
                Ok(ResolventProbe {
                    t,
                    in_resolvent_set: in_set.clone(),
                    norm: Some(norm),
                    bound,
                    satisfied: in_set.and(&norm_ok),
                })
            }
            None => {
                // LU refused what the rank test accepted: treat as outside
                let in_set = CheckResult::fail(-threshold, "shifted matrix is singular");
                Ok(ResolventProbe {
                    t,
                    in_resolvent_set: in_set.clone(),
                    norm: None,
                    bound,
                    satisfied: in_set,
                })
            }
        }
    }
}

/// Does the nonzero real t belong to the resolvent set of M_{S,T}? True iff
/// S and T are everywhere defined and M − t is invertible at the rank
/// threshold.
pub fn in_resolvent_set<T: Scalar>(
    s: &LinearRelation<T>,
    t: &LinearRelation<T>,
    t_val: f64,
    tol: &TolerancePolicy,
) -> Result<CheckResult> {
    require_pair(s, t, tol, "resolvent set")?;
    let engine = ProbeEngine::new(s, t, tol);
    Ok(engine.probe(t_val, tol)?.in_resolvent_set)
}

/// ‖R_{S,T}(t)‖ = ‖(M − t)^{-1}‖; errs when t is outside the resolvent set.
pub fn resolvent_norm<T: Scalar>(
    s: &LinearRelation<T>,
    t: &LinearRelation<T>,
    t_val: f64,
    tol: &TolerancePolicy,
) -> Result<f64> {
    require_pair(s, t, tol, "resolvent norm")?;
    let engine = ProbeEngine::new(s, t, tol);
    let probe = engine.probe(t_val, tol)?;
    probe.norm.ok_or(Error::NotInResolventSet { t: t_val })
}

fn validate_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::Precondition("probe grid must be nonempty".to_string()));
    }
    if grid.iter().any(|&t| t == 0.0) {
        return Err(Error::Precondition(
            "probe grid must not contain zero".to_string(),
        ));
    }
    Ok(())
}

fn assemble_report<T: Scalar>(
    criterion_id: &str,
    s: &LinearRelation<T>,
    t: &LinearRelation<T>,
    grid: &[f64],
    conditions: Vec<(String, CheckResult)>,
    oracle: CheckResult,
    tol: &TolerancePolicy,
) -> Result<NieminenReport> {
    validate_grid(grid)?;
    let defect = pairing_defect(s, t, tol)?;
    let engine = ProbeEngine::new(s, t, tol);
    let probes: Vec<ResolventProbe> = grid
        .iter()
        .map(|&tv| engine.probe(tv, tol))
        .collect::<Result<_>>()?;
    let probes_ok = CheckResult::all(probes.iter().map(|p| &p.satisfied));
    let overall = conditions
        .iter()
        .fold(probes_ok, |acc, (_, c)| acc.and(c));
    Ok(NieminenReport {
        criterion_id: criterion_id.to_string(),
        conditions,
        probes,
        pairing_defect: defect,
        overall,
        oracle,
    })
}

/// The resolvent-norm criterion for a pair of operators: S and T are
/// everywhere defined and mutually adjoint iff every nonzero real t lies in
/// the resolvent set of M_{S,T} with ‖R(t)‖ ≤ 1/|t| (evaluated on the grid).
pub fn nieminen_criterion<T: Scalar>(
    s: &LinearRelation<T>,
    t: &LinearRelation<T>,
    grid: &[f64],
    tol: &TolerancePolicy,
) -> Result<NieminenReport> {
    require_pair(s, t, tol, "resolvent criterion")?;
    let oracle = crate::characterize::oracle_mutually_adjoint(s, t, tol);
    assemble_report("nieminen", s, t, grid, Vec::new(), oracle, tol)
}

/// Self-adjointness criterion: apply the pair criterion with T := S.
pub fn selfadjoint_nieminen<T: Scalar>(
    s: &LinearRelation<T>,
    grid: &[f64],
    tol: &TolerancePolicy,
) -> Result<NieminenReport> {
    require_square(s)?;
    require_pair(s, s, tol, "self-adjoint criterion")?;
    let oracle = crate::characterize::oracle_mutually_adjoint(s, s, tol);
    assemble_report("nieminen-selfadjoint", s, s, grid, Vec::new(), oracle, tol)
}

/// Skew-adjointness criterion: apply the pair criterion with T := −S; the
/// oracle checks S* = −S.
pub fn skewadjoint_nieminen<T: Scalar>(
    s: &LinearRelation<T>,
    grid: &[f64],
    tol: &TolerancePolicy,
) -> Result<NieminenReport> {
    require_square(s)?;
    let neg = s.neg();
    require_pair(s, &neg, tol, "skew-adjoint criterion")?;
    let oracle = s
        .adjoint(tol)
        .graph()
        .equals(neg.graph(), tol)
        .expect("square relation dims agree");
    assemble_report("nieminen-skew", s, &neg, grid, Vec::new(), oracle, tol)
}

/// Unitarity criterion: probe M_{U, U⁻¹} where U⁻¹ enters through its
/// operator part. A nontrivial multivalued part of the inverse (ker U ≠ {0})
/// is reported as a failed condition, not an error.
pub fn unitary_nieminen<T: Scalar>(
    u: &LinearRelation<T>,
    grid: &[f64],
    tol: &TolerancePolicy,
) -> Result<NieminenReport> {
    if !u.is_operator(tol).verdict {
        return Err(Error::NotAnOperator {
            context: "unitary criterion",
        });
    }
    let inverse = u.inverse();
    let kernel_trivial = u
        .parts(tol)
        .ker
        .equals(&Subspace::zero(u.h_dim()), tol)
        .expect("ambient dims agree");
    let inverse_operator = inverse.is_operator(tol);
    let inv_op = inverse.operator_part(tol);

    let oracle = u
        .is_everywhere_defined(tol)
        .and(&u.is_surjective(tol))
        .and(
            &u.adjoint(tol)
                .graph()
                .equals(inverse.graph(), tol)
                .expect("adjoint and inverse live in the same product space"),
        );
    let conditions = vec![
        ("kernel_trivial".to_string(), kernel_trivial),
        ("inverse_is_operator".to_string(), inverse_operator),
    ];
    let mut report = assemble_report("nieminen-unitary", u, &inv_op, grid, conditions, oracle, tol)?;
    report.criterion_id = "nieminen-unitary".to_string();
    Ok(report)
}

fn require_square<T: Scalar>(s: &LinearRelation<T>) -> Result<()> {
    if s.h_dim() != s.k_dim() {
        return Err(Error::DimensionMismatch {
            context: "criterion needs a square operator",
            expected: s.h_dim(),
            actual: s.k_dim(),
        });
    }
    Ok(())
}
