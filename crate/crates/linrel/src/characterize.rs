//! Executable checkers for the range-kernel characterizations of mutually
//! adjoint operator pairs, plus the ground-truth adjointness oracle the
//! equivalence suites test against.
//!
//! Every checker evaluates all sides of its statement (no short-circuiting)
//! and returns a [`CriterionReport`] whose named conditions the test harness
//! can compare pairwise. One-way results carry the verified consequence in
//! `conclusion_verified`.

use serde::Serialize;

use crate::check::{CheckResult, TolerancePolicy};
use crate::error::{Error, Result};
use crate::relation::{pairing_defect, LinearRelation};
use crate::scalar::Scalar;
use crate::subspace::Subspace;

/// Outcome of one criterion: named per-condition verdicts, their
/// conjunction, and (where the statement asserts a consequence) an
/// independently verified conclusion.
#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub criterion_id: String,
    pub conditions: Vec<(String, CheckResult)>,
    pub overall: CheckResult,
    pub conclusion_verified: Option<CheckResult>,
}

impl CriterionReport {
    fn new(
        criterion_id: &str,
        conditions: Vec<(String, CheckResult)>,
        conclusion_verified: Option<CheckResult>,
    ) -> Self {
        let overall = CheckResult::all(conditions.iter().map(|(_, c)| c));
        CriterionReport {
            criterion_id: criterion_id.to_string(),
            conditions,
            overall,
            conclusion_verified,
        }
    }

    pub fn condition(&self, name: &str) -> Option<&CheckResult> {
        self.conditions
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, c)| c)
    }

    /// All conditions (and the conclusion, when present) sit clear of the
    /// tolerance boundary, so equivalence assertions are meaningful.
    pub fn all_decisive(&self, tol: &TolerancePolicy) -> bool {
        self.conditions.iter().all(|(_, c)| c.is_decisive(tol))
            && self
                .conclusion_verified
                .as_ref()
                .map_or(true, |c| c.is_decisive(tol))
    }
}

fn require_operator<T: Scalar>(
    r: &LinearRelation<T>,
    tol: &TolerancePolicy,
    context: &'static str,
) -> Result<()> {
    if !r.is_operator(tol).verdict {
        return Err(Error::NotAnOperator { context });
    }
    Ok(())
}

fn require_pair_dims<T: Scalar>(s: &LinearRelation<T>, t: &LinearRelation<T>) -> Result<()> {
    if t.h_dim() != s.k_dim() || t.k_dim() != s.h_dim() {
        return Err(Error::DimensionMismatch {
            context: "S: H→K requires T: K→H",
            expected: s.k_dim(),
            actual: t.h_dim(),
        });
    }
    Ok(())
}

fn require_same_spaces<T: Scalar>(s: &LinearRelation<T>, t: &LinearRelation<T>) -> Result<()> {
    if s.h_dim() != t.h_dim() || s.k_dim() != t.k_dim() {
        return Err(Error::AmbientMismatch {
            left: s.h_dim() + s.k_dim(),
            right: t.h_dim() + t.k_dim(),
        });
    }
    Ok(())
}

/// Ground truth: S* = T and T* = S with both everywhere-defined operators
/// (the finite-dimensional reading of "densely defined").
pub fn oracle_mutually_adjoint<T: Scalar>(
    s: &LinearRelation<T>,
    t: &LinearRelation<T>,
    tol: &TolerancePolicy,
) -> CheckResult {
    if t.h_dim() != s.k_dim() || t.k_dim() != s.h_dim() {
        return CheckResult::fail(-1.0, "oracle: space dimensions do not pair up");
    }
    let adj_s = s.adjoint(tol);
    let adj_t = t.adjoint(tol);
    let s_star_is_t = adj_s
        .graph()
        .equals(t.graph(), tol)
        .expect("dims checked above");
    let t_star_is_s = adj_t
        .graph()
        .equals(s.graph(), tol)
        .expect("dims checked above");
    s_star_is_t
        .and(&t_star_is_s)
        .and(&s.is_operator(tol))
        .and(&t.is_operator(tol))
        .and(&s.is_everywhere_defined(tol))
        .and(&t.is_everywhere_defined(tol))
}

/// Three equivalent formulations of the inclusion S ⊆ T:
///   (i)   graph containment,
///   (ii)  ker S ⊆ ker T and ran S ⊆ ran(S ∩ T),
///   (iii) ran S ⊆ ran T and ker(S ∨ T) ⊆ ker T.
pub fn arens_inclusion<T: Scalar>(
    s: &LinearRelation<T>,
    t: &LinearRelation<T>,
    tol: &TolerancePolicy,
) -> Result<CriterionReport> {
    require_same_spaces(s, t)?;
    let sp = s.parts(tol);
    let tp = t.parts(tol);
    let meet = s.intersect(t, tol)?.parts(tol);
    let join = s.vee(t, tol)?.parts(tol);

    let i = t.graph().contains(s.graph(), tol)?;
    let ii = tp
        .ker
        .contains(&sp.ker, tol)?
        .and(&meet.ran.contains(&sp.ran, tol)?);
    let iii = tp
        .ran
        .contains(&sp.ran, tol)?
        .and(&tp.ker.contains(&join.ker, tol)?);

    Ok(CriterionReport::new(
        "arens",
        vec![
            ("i".to_string(), i),
            ("ii".to_string(), ii),
            ("iii".to_string(), iii),
        ],
        None,
    ))
}

/// Three equivalent formulations of the equality S = T:
///   (i)   graph equality,
///   (ii)  ker S = ker T and ran S + ran T ⊆ ran(S ∩ T),
///   (iii) ran S = ran T and ker(S ∨ T) ⊆ ker(S ∩ T).
pub fn arens_equality<T: Scalar>(
    s: &LinearRelation<T>,
    t: &LinearRelation<T>,
    tol: &TolerancePolicy,
) -> Result<CriterionReport> {
    require_same_spaces(s, t)?;
    let sp = s.parts(tol);
    let tp = t.parts(tol);
    let meet = s.intersect(t, tol)?.parts(tol);
    let join = s.vee(t, tol)?.parts(tol);

    let i = s.graph().equals(t.graph(), tol)?;
    let ran_sum = sp.ran.sum(&tp.ran, tol)?;
    let ii = sp
        .ker
        .equals(&tp.ker, tol)?
        .and(&meet.ran.contains(&ran_sum, tol)?);
    let iii = sp
        .ran
        .equals(&tp.ran, tol)?
        .and(&meet.ker.contains(&join.ker, tol)?);

    Ok(CriterionReport::new(
        "arens-eq",
        vec![
            ("i".to_string(), i),
            ("ii".to_string(), ii),
            ("iii".to_string(), iii),
        ],
        None,
    ))
}

/// Under the precondition S ⊆ T (violations are errors): S = T iff kernels
/// and ranges agree.
pub fn arens_equality_under_inclusion<T: Scalar>(
    s: &LinearRelation<T>,
    t: &LinearRelation<T>,
    tol: &TolerancePolicy,
) -> Result<CriterionReport> {
    require_same_spaces(s, t)?;
    let incl = t.graph().contains(s.graph(), tol)?;
    if !incl.verdict {
        return Err(Error::Precondition(format!(
            "arens-eq-incl requires S ⊆ T; {}",
            incl.trace
        )));
    }
    let sp = s.parts(tol);
    let tp = t.parts(tol);
    let i = s.graph().equals(t.graph(), tol)?;
    let ii = sp
        .ker
        .equals(&tp.ker, tol)?
        .and(&sp.ran.equals(&tp.ran, tol)?);
    Ok(CriterionReport::new(
        "arens-eq-incl",
        vec![("i".to_string(), i), ("ii".to_string(), ii)],
        None,
    ))
}

/// Sufficient condition for mutual adjointness: ran(S ∩ T*) = K and
/// ran(T ∩ S*) = H. The conclusion is verified via the oracle; the converse
/// is not claimed.
pub fn gen_stone<T: Scalar>(
    s: &LinearRelation<T>,
    t: &LinearRelation<T>,
    tol: &TolerancePolicy,
) -> Result<CriterionReport> {
    require_pair_dims(s, t)?;
    require_operator(s, tol, "gen-stone (S)")?;
    require_operator(t, tol, "gen-stone (T)")?;
    let s0 = s.intersect(&t.adjoint(tol), tol)?;
    let t0 = t.intersect(&s.adjoint(tol), tol)?;
    let ran_s0_full = s0
        .parts(tol)
        .ran
        .equals(&Subspace::full(s.k_dim()), tol)?;
    let ran_t0_full = t0
        .parts(tol)
        .ran
        .equals(&Subspace::full(s.h_dim()), tol)?;
    Ok(CriterionReport::new(
        "gen-stone",
        vec![
            ("ran_s_cap_t_star_full".to_string(), ran_s0_full),
            ("ran_t_cap_s_star_full".to_string(), ran_t0_full),
        ],
        Some(oracle_mutually_adjoint(s, t, tol)),
    ))
}

/// Surjective formally adjoint pairs are mutually adjoint: pairing defect
/// within tolerance plus surjectivity of both operators.
pub fn surjective_pair<T: Scalar>(
    s: &LinearRelation<T>,
    t: &LinearRelation<T>,
    tol: &TolerancePolicy,
) -> Result<CriterionReport> {
    require_pair_dims(s, t)?;
    require_operator(s, tol, "surjective-pair (S)")?;
    require_operator(t, tol, "surjective-pair (T)")?;
    let defect = pairing_defect(s, t, tol)?;
    let pairing = CheckResult::from_upper_bound(defect, tol.subspace_eq_tol, "pairing defect");
    Ok(CriterionReport::new(
        "surjective-pair",
        vec![
            ("pairing".to_string(), pairing),
            ("s_surjective".to_string(), s.is_surjective(tol)),
            ("t_surjective".to_string(), t.is_surjective(tol)),
        ],
        Some(oracle_mutually_adjoint(s, t, tol)),
    ))
}

/// ran(S ∩ S*) = H forces S to be everywhere defined and self-adjoint.
pub fn selfadjoint_via_range<T: Scalar>(
    s: &LinearRelation<T>,
    tol: &TolerancePolicy,
) -> Result<CriterionReport> {
    require_square(s)?;
    require_operator(s, tol, "selfadjoint-range")?;
    let s0 = s.intersect(&s.adjoint(tol), tol)?;
    let ran_full = s0
        .parts(tol)
        .ran
        .equals(&Subspace::full(s.h_dim()), tol)?;
    let selfadj = s
        .adjoint(tol)
        .graph()
        .equals(s.graph(), tol)?
        .and(&s.is_everywhere_defined(tol));
    Ok(CriterionReport::new(
        "selfadjoint-range",
        vec![("ran_s_cap_s_star_full".to_string(), ran_full)],
        Some(selfadj),
    ))
}

/// Surjective symmetric operators are everywhere defined and self-adjoint.
pub fn stone_surjective_symmetric<T: Scalar>(
    s: &LinearRelation<T>,
    tol: &TolerancePolicy,
) -> Result<CriterionReport> {
    require_square(s)?;
    require_operator(s, tol, "stone")?;
    Ok(CriterionReport::new(
        "stone",
        vec![
            ("symmetric".to_string(), s.is_symmetric(tol)?),
            ("surjective".to_string(), s.is_surjective(tol)),
        ],
        Some(oracle_mutually_adjoint(s, s, tol)),
    ))
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

/// S identifies the adjoint of T:
///   (i)  T everywhere defined and S = T*,
///   (ii) (a) (ran T)^⊥ = ker S and (b) ran S + ran T* ⊆ ran(S ∩ T*).
/// Statement (i) lands in `conclusion_verified`; the two (ii) conditions are
/// the report's conditions, so tests can assert the biconditional.
pub fn adjoint_identification<T: Scalar>(
    s: &LinearRelation<T>,
    t: &LinearRelation<T>,
    tol: &TolerancePolicy,
) -> Result<CriterionReport> {
    require_pair_dims(s, t)?;
    require_operator(s, tol, "adjoint-ident (S)")?;
    require_operator(t, tol, "adjoint-ident (T)")?;
    let t_star = t.adjoint(tol);
    let s0 = s.intersect(&t_star, tol)?;
    let sp = s.parts(tol);
    let tp = t.parts(tol);
    let tsp = t_star.parts(tol);

    let ii_a = tp.ran.complement(tol).equals(&sp.ker, tol)?;
    let ran_sum = sp.ran.sum(&tsp.ran, tol)?;
    let ii_b = s0.parts(tol).ran.contains(&ran_sum, tol)?;

    let statement_i = t
        .is_everywhere_defined(tol)
        .and(&s.graph().equals(t_star.graph(), tol)?);

    Ok(CriterionReport::new(
        "adjoint-ident",
        vec![("ii_a".to_string(), ii_a), ("ii_b".to_string(), ii_b)],
        Some(statement_i),
    ))
}

/// Two-variable improvement of the classical ran(I + S*S) theorem: with
/// S₀ = S ∩ T* and T₀ = T ∩ S*,
///   (i)  S, T everywhere defined and mutually adjoint,
///   (ii) ran(I + T₀S₀) = H and ran(I + S₀T₀) = K.
/// Statement (i) is the oracle in `conclusion_verified`.
pub fn von_neumann_ranges<T: Scalar>(
    s: &LinearRelation<T>,
    t: &LinearRelation<T>,
    tol: &TolerancePolicy,
) -> Result<CriterionReport> {
    require_pair_dims(s, t)?;
    require_operator(s, tol, "von-neumann (S)")?;
    require_operator(t, tol, "von-neumann (T)")?;
    let s0 = s.intersect(&t.adjoint(tol), tol)?;
    let t0 = t.intersect(&s.adjoint(tol), tol)?;
    let one = T::one();
    let prod_h = t0.compose(&s0, tol)?.add_scalar(one, tol)?;
    let prod_k = s0.compose(&t0, tol)?.add_scalar(one, tol)?;
    let ran_h = prod_h
        .parts(tol)
        .ran
        .equals(&Subspace::full(s.h_dim()), tol)?;
    let ran_k = prod_k
        .parts(tol)
        .ran
        .equals(&Subspace::full(s.k_dim()), tol)?;
    Ok(CriterionReport::new(
        "von-neumann",
        vec![
            ("ran_i_plus_t0s0_full".to_string(), ran_h),
            ("ran_i_plus_s0t0_full".to_string(), ran_k),
        ],
        Some(oracle_mutually_adjoint(s, t, tol)),
    ))
}

/// Specialization T := S* of the two-variable theorem for an everywhere
/// defined operator S. In finite dimension closedness, self-adjointness of
/// S*S and SS*, and fullness of ran(I + S*S), ran(I + SS*) all hold
/// identically; the checker confirms each.
pub fn closedness_via_ranges<T: Scalar>(
    s: &LinearRelation<T>,
    tol: &TolerancePolicy,
) -> Result<CriterionReport> {
    require_operator(s, tol, "closedness")?;
    if !s.is_everywhere_defined(tol).verdict {
        return Err(Error::NotEverywhereDefined {
            context: "closedness",
        });
    }
    let s_star = s.adjoint(tol);
    let star_s = s_star.compose(s, tol)?;
    let s_star_prod = s.compose(&s_star, tol)?;
    let one = T::one();
    let selfadj_star_s = star_s
        .adjoint(tol)
        .graph()
        .equals(star_s.graph(), tol)?;
    let selfadj_s_star = s_star_prod
        .adjoint(tol)
        .graph()
        .equals(s_star_prod.graph(), tol)?;
    let ran_h = star_s
        .add_scalar(one, tol)?
        .parts(tol)
        .ran
        .equals(&Subspace::full(s.h_dim()), tol)?;
    let ran_k = s_star_prod
        .add_scalar(one, tol)?
        .parts(tol)
        .ran
        .equals(&Subspace::full(s.k_dim()), tol)?;
    let closed = {
        let c = s.closure();
        c.graph().equals(s.graph(), tol)?
    };
    Ok(CriterionReport::new(
        "closedness",
        vec![
            ("selfadjoint_s_star_s".to_string(), selfadj_star_s),
            ("selfadjoint_s_s_star".to_string(), selfadj_s_star),
            ("ran_i_plus_s_star_s_full".to_string(), ran_h),
            ("ran_i_plus_s_s_star_full".to_string(), ran_k),
        ],
        Some(closed),
    ))
}

/// Characterization of operators T that arise as the adjoint of an
/// everywhere defined symmetric operator. With T₀ = T ∩ T*:
///   (i)  such an S exists -- operationalized as: T everywhere defined,
///        T* an operator, and T* ⊆ T (then S := T* witnesses),
///   (ii) (a) ker T = (ran T*)^⊥ and (b) ran T₀ = ran T** = ran T*.
pub fn symmetric_adjoint_characterization<T: Scalar>(
    t: &LinearRelation<T>,
    tol: &TolerancePolicy,
) -> Result<CriterionReport> {
    require_square(t)?;
    require_operator(t, tol, "symmetric-adjoint")?;
    let t_star = t.adjoint(tol);
    let t_star_star = t_star.adjoint(tol);
    let t0 = t.intersect(&t_star, tol)?;

    let tp = t.parts(tol);
    let tsp = t_star.parts(tol);
    let tssp = t_star_star.parts(tol);
    let t0p = t0.parts(tol);

    let ii_a = tp.ker.equals(&tsp.ran.complement(tol), tol)?;
    let ii_b = t0p
        .ran
        .equals(&tssp.ran, tol)?
        .and(&tssp.ran.equals(&tsp.ran, tol)?);

    let statement_i = t
        .is_everywhere_defined(tol)
        .and(&t_star.is_operator(tol))
        .and(&t.graph().contains(t_star.graph(), tol)?);

    Ok(CriterionReport::new(
        "symmetric-adjoint",
        vec![("ii_a".to_string(), ii_a), ("ii_b".to_string(), ii_b)],
        Some(statement_i),
    ))
}
