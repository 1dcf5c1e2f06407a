//! Randomized theorem-verification campaigns.
//!
//! Each theorem id maps to an instance mix (clean constructions that satisfy
//! the statement, perturbations and partial restrictions that break it) and
//! an assertion: equivalence statements must agree on every instance whose
//! margins clear the guard band, one-way statements may never show satisfied
//! conditions with a failed conclusion, and resolvent criteria must accept
//! mutually adjoint pairs and reject constructed violations. Violated
//! assertions produce replayable counterexample problem files.

use nalgebra::Complex;
use serde::Serialize;

use crate::characterize::{self, CriterionReport};
use crate::check::TolerancePolicy;
use crate::error::{Error, Result};
use crate::generate::{self, GenConfig};
use crate::problem::{describe_relation, CheckReportBody, ProblemFile, ProblemMeta};
use crate::relation::LinearRelation;
use crate::resolvent;
use crate::scalar::{FieldTag, Scalar};

/// The registered criteria / theorem suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TheoremId {
    Arens,
    ArensEq,
    ArensEqIncl,
    GenStone,
    SurjectivePair,
    SelfadjointRange,
    Stone,
    AdjointIdent,
    VonNeumann,
    Closedness,
    SymmetricAdjoint,
    Nieminen,
    NieminenSelfadjoint,
    NieminenSkew,
    NieminenUnitary,
}

impl TheoremId {
    pub const ALL: [TheoremId; 15] = [
        TheoremId::Arens,
        TheoremId::ArensEq,
        TheoremId::ArensEqIncl,
        TheoremId::GenStone,
        TheoremId::SurjectivePair,
        TheoremId::SelfadjointRange,
        TheoremId::Stone,
        TheoremId::AdjointIdent,
        TheoremId::VonNeumann,
        TheoremId::Closedness,
        TheoremId::SymmetricAdjoint,
        TheoremId::Nieminen,
        TheoremId::NieminenSelfadjoint,
        TheoremId::NieminenSkew,
        TheoremId::NieminenUnitary,
    ];

    pub fn canonical(&self) -> &'static str {
        match self {
            TheoremId::Arens => "arens",
            TheoremId::ArensEq => "arens-eq",
            TheoremId::ArensEqIncl => "arens-eq-incl",
            TheoremId::GenStone => "gen-stone",
            TheoremId::SurjectivePair => "surjective-pair",
            TheoremId::SelfadjointRange => "selfadjoint-range",
            TheoremId::Stone => "stone",
            TheoremId::AdjointIdent => "adjoint-ident",
            TheoremId::VonNeumann => "von-neumann",
            TheoremId::Closedness => "closedness",
            TheoremId::SymmetricAdjoint => "symmetric-adjoint",
            TheoremId::Nieminen => "nieminen",
            TheoremId::NieminenSelfadjoint => "nieminen-selfadjoint",
            TheoremId::NieminenSkew => "nieminen-skew",
            TheoremId::NieminenUnitary => "nieminen-unitary",
        }
    }

    /// Accepts canonical ids plus the long operation names.
    pub fn parse(id: &str) -> Result<TheoremId> {
        let norm = id.trim().to_ascii_lowercase().replace('_', "-");
        let found = match norm.as_str() {
            "arens" | "arens-inclusion" => TheoremId::Arens,
            "arens-eq" | "arens-equality" => TheoremId::ArensEq,
            "arens-eq-incl" | "arens-equality-under-inclusion" => TheoremId::ArensEqIncl,
            "gen-stone" => TheoremId::GenStone,
            "surjective-pair" => TheoremId::SurjectivePair,
            "selfadjoint-range" | "selfadjoint-via-range" => TheoremId::SelfadjointRange,
            "stone" | "stone-surjective-symmetric" => TheoremId::Stone,
            "adjoint-ident" | "adjoint-identification" => TheoremId::AdjointIdent,
            "von-neumann" | "von-neumann-ranges" => TheoremId::VonNeumann,
            "closedness" | "closedness-via-ranges" => TheoremId::Closedness,
            "symmetric-adjoint" | "symmetric-adjoint-characterization" => {
                TheoremId::SymmetricAdjoint
            }
            "nieminen" | "nieminen-criterion" => TheoremId::Nieminen,
            "nieminen-selfadjoint" | "selfadjoint-nieminen" => TheoremId::NieminenSelfadjoint,
            "nieminen-skew" | "skewadjoint-nieminen" => TheoremId::NieminenSkew,
            "nieminen-unitary" | "unitary-nieminen" => TheoremId::NieminenUnitary,
            _ => return Err(Error::UnknownCriterion(id.to_string())),
        };
        Ok(found)
    }

    /// Does the criterion take a pair (S, T) rather than S alone?
    pub fn requires_pair(&self) -> bool {
        matches!(
            self,
            TheoremId::Arens
                | TheoremId::ArensEq
                | TheoremId::ArensEqIncl
                | TheoremId::GenStone
                | TheoremId::SurjectivePair
                | TheoremId::AdjointIdent
                | TheoremId::VonNeumann
                | TheoremId::Nieminen
        )
    }
}

/// Run one registered check against a problem's relations.
pub fn run_check<T: Scalar>(
    id: TheoremId,
    s: &LinearRelation<T>,
    t: Option<&LinearRelation<T>>,
    grid: &[f64],
    tol: &TolerancePolicy,
) -> Result<CheckReportBody> {
    let need_t = || -> Result<&LinearRelation<T>> {
        t.ok_or_else(|| {
            Error::Precondition(format!("criterion `{}` needs T", id.canonical()))
        })
    };
    let body = match id {
        TheoremId::Arens => CheckReportBody::Criterion(characterize::arens_inclusion(
            s,
            need_t()?,
            tol,
        )?),
        TheoremId::ArensEq => {
            CheckReportBody::Criterion(characterize::arens_equality(s, need_t()?, tol)?)
        }
        TheoremId::ArensEqIncl => CheckReportBody::Criterion(
            characterize::arens_equality_under_inclusion(s, need_t()?, tol)?,
        ),
        TheoremId::GenStone => {
            CheckReportBody::Criterion(characterize::gen_stone(s, need_t()?, tol)?)
        }
        TheoremId::SurjectivePair => {
            CheckReportBody::Criterion(characterize::surjective_pair(s, need_t()?, tol)?)
        }
        TheoremId::SelfadjointRange => {
            CheckReportBody::Criterion(characterize::selfadjoint_via_range(s, tol)?)
        }
        TheoremId::Stone => {
            CheckReportBody::Criterion(characterize::stone_surjective_symmetric(s, tol)?)
        }
        TheoremId::AdjointIdent => {
            CheckReportBody::Criterion(characterize::adjoint_identification(s, need_t()?, tol)?)
        }
        TheoremId::VonNeumann => {
            CheckReportBody::Criterion(characterize::von_neumann_ranges(s, need_t()?, tol)?)
        }
        TheoremId::Closedness => {
            CheckReportBody::Criterion(characterize::closedness_via_ranges(s, tol)?)
        }
        TheoremId::SymmetricAdjoint => {
            CheckReportBody::Criterion(characterize::symmetric_adjoint_characterization(s, tol)?)
        }
        TheoremId::Nieminen => {
            CheckReportBody::Nieminen(resolvent::nieminen_criterion(s, need_t()?, grid, tol)?)
        }
        TheoremId::NieminenSelfadjoint => {
            CheckReportBody::Nieminen(resolvent::selfadjoint_nieminen(s, grid, tol)?)
        }
        TheoremId::NieminenSkew => {
            CheckReportBody::Nieminen(resolvent::skewadjoint_nieminen(s, grid, tol)?)
        }
        TheoremId::NieminenUnitary => {
            CheckReportBody::Nieminen(resolvent::unitary_nieminen(s, grid, tol)?)
        }
    };
    Ok(body)
}

/// Parameters of one verification campaign.
#[derive(Clone, Debug)]
pub struct CampaignConfig {
    pub theorem: TheoremId,
    pub trials: usize,
    pub seed: u64,
    pub field: FieldTag,
    pub max_dim: usize,
    pub grid: Option<Vec<f64>>,
    pub tol: TolerancePolicy,
}

/// A replayable assertion failure.
#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub trial: u64,
    pub detail: String,
    pub problem: ProblemFile,
}

/// Aggregate outcome of a campaign. Serialization of this struct is the
/// machine-format report and is byte-reproducible for fixed seed and flags.
#[derive(Clone, Debug, Serialize)]
pub struct CampaignSummary {
    pub theorem: String,
    pub field: FieldTag,
    pub seed: u64,
    pub trials: usize,
    /// Instances whose margins cleared the guard band and were asserted.
    pub checked: usize,
    /// Instances skipped because some margin sat in the guard band.
    pub skipped: usize,
    /// Checked instances on which the statement held true.
    pub true_positive: usize,
    /// Checked instances on which the statement was (consistently) false.
    pub true_negative: usize,
    pub generator: String,
    pub violations: Vec<Violation>,
}

impl CampaignSummary {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

enum Outcome {
    Skipped,
    Pass { positive: bool },
    Violation { detail: String },
}

struct Trial<T: Scalar> {
    s: LinearRelation<T>,
    t: Option<LinearRelation<T>>,
    outcome: Outcome,
}

pub fn run_campaign(cc: &CampaignConfig) -> Result<CampaignSummary> {
    if cc.trials == 0 {
        return Err(Error::Precondition(
            "verification campaigns need trials ≥ 1".to_string(),
        ));
    }
    cc.tol.validate()?;
    match cc.field {
        FieldTag::Real => run_typed::<f64>(cc),
        FieldTag::Complex => run_typed::<Complex<f64>>(cc),
    }
}

fn run_typed<T: Scalar>(cc: &CampaignConfig) -> Result<CampaignSummary> {
    let mut summary = CampaignSummary {
        theorem: cc.theorem.canonical().to_string(),
        field: cc.field,
        seed: cc.seed,
        trials: cc.trials,
        checked: 0,
        skipped: 0,
        true_positive: 0,
        true_negative: 0,
        generator: generate::GENERATOR_ALGORITHM.to_string(),
        violations: Vec::new(),
    };
    for trial in 0..cc.trials as u64 {
        let result = run_trial::<T>(cc, trial)?;
        match result.outcome {
            Outcome::Skipped => summary.skipped += 1,
            Outcome::Pass { positive } => {
                summary.checked += 1;
                if positive {
                    summary.true_positive += 1;
                } else {
                    summary.true_negative += 1;
                }
            }
            Outcome::Violation { detail } => {
                summary.checked += 1;
                summary.violations.push(Violation {
                    trial,
                    detail,
                    problem: dump_problem(cc, trial, &result.s, result.t.as_ref()),
                });
            }
        }
    }
    Ok(summary)
}

fn dump_problem<T: Scalar>(
    cc: &CampaignConfig,
    trial: u64,
    s: &LinearRelation<T>,
    t: Option<&LinearRelation<T>>,
) -> ProblemFile {
    ProblemFile {
        field: cc.field,
        h_dim: s.h_dim(),
        k_dim: s.k_dim(),
        s: describe_relation(s, &cc.tol),
        t: t.map(|t| describe_relation(t, &cc.tol)),
        checks: vec![cc.theorem.canonical().to_string()],
        tol: None,
        meta: Some(ProblemMeta {
            generator: generate::GENERATOR_ALGORITHM.to_string(),
            seed: cc.seed,
            trial,
            theorem: cc.theorem.canonical().to_string(),
            note: None,
        }),
    }
}

fn cfg_for<T: Scalar>(cc: &CampaignConfig, trial: u64) -> GenConfig {
    let mut cfg = GenConfig::new(cc.seed, T::FIELD);
    cfg.max_dim = cc.max_dim;
    cfg.with_trial(trial)
}

/// 1 ..= max, stepping with the trial index.
fn dim_cycle(trial: u64, max: usize, phase: u64) -> usize {
    1 + ((trial / 5 + phase) % max.max(1) as u64) as usize
}

fn run_trial<T: Scalar>(cc: &CampaignConfig, trial: u64) -> Result<Trial<T>> {
    let tol = &cc.tol;
    let cfg = cfg_for::<T>(cc, trial);
    let category = trial % 5;
    let n = dim_cycle(trial, cc.max_dim, 0);
    // second dimension sweeps square and rectangular shapes
    let m = dim_cycle(trial, cc.max_dim, trial % 3);
    let grid = cc.grid.clone().unwrap_or_else(resolvent::default_grid);

    match cc.theorem {
        TheoremId::Arens => {
            let (s, t) = relation_pair(&cfg, n, m, category, tol)?;
            let report = characterize::arens_inclusion(&s, &t, tol)?;
            Ok(Trial {
                outcome: equivalence_outcome(&report, &["i", "ii", "iii"], tol),
                s,
                t: Some(t),
            })
        }
        TheoremId::ArensEq => {
            let (s, t) = relation_pair(&cfg, n, m, (category + 2) % 5, tol)?;
            let report = characterize::arens_equality(&s, &t, tol)?;
            Ok(Trial {
                outcome: equivalence_outcome(&report, &["i", "ii", "iii"], tol),
                s,
                t: Some(t),
            })
        }
        TheoremId::ArensEqIncl => {
            let t_rel = generate::random_relation::<T>(&cfg, n, m, (trial as usize) % (n + m), tol)?;
            let s = match category {
                0 | 1 => {
                    let sub = t_rel.graph_dim() * 2 / 3;
                    generate::random_subrelation(&cfg, &t_rel, sub, tol)?
                }
                2 => generate::respan(&cfg, &t_rel, tol)?,
                3 => t_rel.clone(),
                _ => generate::random_subrelation(&cfg, &t_rel, 0, tol)?,
            };
            let report = characterize::arens_equality_under_inclusion(&s, &t_rel, tol)?;
            Ok(Trial {
                outcome: equivalence_outcome(&report, &["i", "ii"], tol),
                s,
                t: Some(t_rel),
            })
        }
        TheoremId::GenStone => {
            let (s, t) = operator_pair_mix(&cfg, n, category, tol)?;
            let report = characterize::gen_stone(&s, &t, tol)?;
            Ok(Trial {
                outcome: implication_outcome(&report, tol),
                s,
                t: Some(t),
            })
        }
        TheoremId::SurjectivePair => {
            let (s, t) = operator_pair_mix(&cfg, n, category, tol)?;
            let report = characterize::surjective_pair(&s, &t, tol)?;
            Ok(Trial {
                outcome: implication_outcome(&report, tol),
                s,
                t: Some(t),
            })
        }
        TheoremId::SelfadjointRange => {
            let s = square_operator_mix(&cfg, n, category, tol)?;
            let report = characterize::selfadjoint_via_range(&s, tol)?;
            Ok(Trial {
                outcome: implication_outcome(&report, tol),
                s,
                t: None,
            })
        }
        TheoremId::Stone => {
            let s = symmetric_mix(&cfg, n, category, tol)?;
            let report = characterize::stone_surjective_symmetric(&s, tol)?;
            Ok(Trial {
                outcome: implication_outcome(&report, tol),
                s,
                t: None,
            })
        }
        TheoremId::AdjointIdent => {
            let (s, t) = adjoint_statement_mix(&cfg, n, m, category, tol)?;
            let report = characterize::adjoint_identification(&s, &t, tol)?;
            Ok(Trial {
                outcome: biconditional_outcome(&report, tol),
                s,
                t: Some(t),
            })
        }
        TheoremId::VonNeumann => {
            let (s, t) = adjoint_statement_mix(&cfg, n, m, category, tol)?;
            let report = characterize::von_neumann_ranges(&s, &t, tol)?;
            Ok(Trial {
                outcome: biconditional_outcome(&report, tol),
                s,
                t: Some(t),
            })
        }
        TheoremId::Closedness => {
            let s = total_operator_mix(&cfg, n, m, category, tol)?;
            let report = characterize::closedness_via_ranges(&s, tol)?;
            let all_true = report.overall.verdict
                && report.conclusion_verified.as_ref().map_or(false, |c| c.verdict);
            let outcome = if !report.all_decisive(tol) {
                Outcome::Skipped
            } else if all_true {
                Outcome::Pass { positive: true }
            } else {
                Outcome::Violation {
                    detail: "a closedness condition failed on a total operator".to_string(),
                }
            };
            Ok(Trial { outcome, s, t: None })
        }
        TheoremId::SymmetricAdjoint => {
            let t_rel = symmetric_statement_mix(&cfg, n, category, tol)?;
            let report = characterize::symmetric_adjoint_characterization(&t_rel, tol)?;
            Ok(Trial {
                outcome: biconditional_outcome(&report, tol),
                s: t_rel,
                t: None,
            })
        }
        TheoremId::Nieminen => {
            let (s, t, constructed_valid) = nieminen_pair_mix(&cfg, n, m, category, tol)?;
            let report = resolvent::nieminen_criterion(&s, &t, &grid, tol)?;
            Ok(Trial {
                outcome: nieminen_outcome(&report, constructed_valid),
                s,
                t: Some(t),
            })
        }
        TheoremId::NieminenSelfadjoint => {
            let (s, constructed_valid) = selfadjoint_family_mix(&cfg, n, category, tol)?;
            let report = resolvent::selfadjoint_nieminen(&s, &grid, tol)?;
            Ok(Trial {
                outcome: nieminen_outcome(&report, constructed_valid),
                s,
                t: None,
            })
        }
        TheoremId::NieminenSkew => {
            let (s, constructed_valid) = skew_family_mix(&cfg, n, category, tol)?;
            let report = resolvent::skewadjoint_nieminen(&s, &grid, tol)?;
            Ok(Trial {
                outcome: nieminen_outcome(&report, constructed_valid),
                s,
                t: None,
            })
        }
        TheoremId::NieminenUnitary => {
            let (s, constructed_valid) = unitary_family_mix(&cfg, n, category, tol)?;
            let report = resolvent::unitary_nieminen(&s, &grid, tol)?;
            Ok(Trial {
                outcome: nieminen_outcome(&report, constructed_valid),
                s,
                t: None,
            })
        }
    }
}

/// Mixed relation pairs for the Arens suites: related (S ⊆ T), re-spanned
/// equal, and unrelated draws.
fn relation_pair<T: Scalar>(
    cfg: &GenConfig,
    h: usize,
    k: usize,
    category: u64,
    tol: &TolerancePolicy,
) -> Result<(LinearRelation<T>, LinearRelation<T>)> {
    let total = h + k;
    let gt = 1 + (cfg.seed as usize) % total;
    match category {
        0 | 1 => {
            let t = generate::random_relation::<T>(cfg, h, k, gt, tol)?;
            let s = generate::random_subrelation(cfg, &t, gt * 2 / 3, tol)?;
            Ok((s, t))
        }
        2 | 3 => {
            let t = generate::random_relation::<T>(cfg, h, k, gt, tol)?;
            let other = cfg.with_trial(0x9e3779b97f4a7c15);
            let gs = 1 + (gt + 1) % total;
            let s = generate::random_relation::<T>(&other, h, k, gs, tol)?;
            Ok((s, t))
        }
        _ => {
            let t = generate::random_relation::<T>(cfg, h, k, gt, tol)?;
            let s = generate::respan(cfg, &t, tol)?;
            Ok((s, t))
        }
    }
}

/// Operator pairs for the one-way pair criteria: clean adjoint pairs,
/// perturbations, partial restrictions and the zero witnesses.
fn operator_pair_mix<T: Scalar>(
    cfg: &GenConfig,
    n: usize,
    category: u64,
    tol: &TolerancePolicy,
) -> Result<(LinearRelation<T>, LinearRelation<T>)> {
    match category {
        0 | 1 => generate::random_adjoint_pair(cfg, n, n, tol),
        2 => {
            let (s, t) = generate::random_adjoint_pair(cfg, n, n, tol)?;
            let p = generate::perturb_pairing(cfg, &s, &t, 0.3, tol)?;
            Ok((p.s, p.t))
        }
        3 => {
            let (s, t) = generate::random_adjoint_pair(cfg, n, n, tol)?;
            let s_partial = generate::restrict_to_partial(&s, cfg, n.saturating_sub(1), tol)?;
            Ok((s_partial, t))
        }
        _ => Ok((LinearRelation::zero_total(n, n, tol), LinearRelation::zero_total(n, n, tol))),
    }
}

fn square_operator_mix<T: Scalar>(
    cfg: &GenConfig,
    n: usize,
    category: u64,
    tol: &TolerancePolicy,
) -> Result<LinearRelation<T>> {
    match category {
        0 | 1 => generate::random_symmetric(cfg, n, tol),
        2 => generate::random_symmetric_singular(cfg, n, tol),
        3 => generate::random_operator(cfg, n, n, n, tol),
        _ => Ok(LinearRelation::zero_total(n, n, tol)),
    }
}

fn symmetric_mix<T: Scalar>(
    cfg: &GenConfig,
    n: usize,
    category: u64,
    tol: &TolerancePolicy,
) -> Result<LinearRelation<T>> {
    match category {
        0 | 1 => generate::random_symmetric(cfg, n, tol),
        2 => generate::random_symmetric_singular(cfg, n, tol),
        3 => {
            let s = generate::random_symmetric(cfg, n, tol)?;
            generate::restrict_to_partial(&s, cfg, n.saturating_sub(1), tol)
        }
        _ => generate::random_operator(cfg, n, n, n, tol),
    }
}

/// Pairs for the biconditional suites: clean (statement true), δ = 0.1
/// perturbations, partial restrictions, unrelated.
fn adjoint_statement_mix<T: Scalar>(
    cfg: &GenConfig,
    h: usize,
    k: usize,
    category: u64,
    tol: &TolerancePolicy,
) -> Result<(LinearRelation<T>, LinearRelation<T>)> {
    let (s, t) = generate::random_adjoint_pair(cfg, h, k, tol)?;
    match category {
        0 | 1 => Ok((s, t)),
        2 => {
            let p = generate::perturb_pairing(cfg, &s, &t, 0.1, tol)?;
            Ok((p.s, p.t))
        }
        3 => {
            let s_partial = generate::restrict_to_partial(&s, cfg, h.saturating_sub(1), tol)?;
            Ok((s_partial, t))
        }
        _ => {
            let other = cfg.with_trial(0x51ed2701);
            let (_, t2) = generate::random_adjoint_pair::<T>(&other, h, k, tol)?;
            Ok((s, t2))
        }
    }
}

fn total_operator_mix<T: Scalar>(
    cfg: &GenConfig,
    h: usize,
    k: usize,
    category: u64,
    tol: &TolerancePolicy,
) -> Result<LinearRelation<T>> {
    match category {
        0 | 1 => Ok(generate::random_adjoint_pair(cfg, h, k, tol)?.0),
        2 => Ok(LinearRelation::zero_total(h, k, tol)),
        3 => {
            // rank-deficient total action
            let base = generate::random_adjoint_pair::<T>(cfg, h, k, tol)?.0;
            let matrix = base.to_matrix(tol)?;
            let sub = generate::random_subspace::<T>(cfg, h, h.saturating_sub(1), tol)?;
            Ok(LinearRelation::from_total_matrix(
                &(matrix * sub.projector()),
                tol,
            ))
        }
        _ => generate::random_operator(cfg, h, k, h, tol),
    }
}

fn symmetric_statement_mix<T: Scalar>(
    cfg: &GenConfig,
    n: usize,
    category: u64,
    tol: &TolerancePolicy,
) -> Result<LinearRelation<T>> {
    match category {
        0 | 1 => generate::random_symmetric(cfg, n, tol),
        2 => {
            let n = n.max(perturbable_symmetric_min_dim::<T>());
            let s = generate::random_symmetric(cfg, n, tol)?;
            generate::perturb_symmetric(cfg, &s, 0.1, tol)
        }
        3 => {
            let s = generate::random_symmetric(cfg, n, tol)?;
            generate::restrict_to_partial(&s, cfg, n.saturating_sub(1), tol)
        }
        _ => generate::random_operator(cfg, n, n, n, tol),
    }
}

/// Real 1×1 operators cannot be pushed off the Hermitian cone.
fn perturbable_symmetric_min_dim<T: Scalar>() -> usize {
    match T::FIELD {
        FieldTag::Real => 2,
        FieldTag::Complex => 1,
    }
}

fn nieminen_pair_mix<T: Scalar>(
    cfg: &GenConfig,
    h: usize,
    k: usize,
    category: u64,
    tol: &TolerancePolicy,
) -> Result<(LinearRelation<T>, LinearRelation<T>, Option<bool>)> {
    let (s, t) = generate::random_adjoint_pair(cfg, h, k, tol)?;
    match category {
        0 | 1 => Ok((s, t, Some(true))),
        2 | 3 => {
            let p = generate::perturb_pairing(cfg, &s, &t, 0.1, tol)?;
            Ok((p.s, p.t, Some(false)))
        }
        _ => {
            let s_partial = generate::restrict_to_partial(&s, cfg, h.saturating_sub(1), tol)?;
            Ok((s_partial, t, Some(false)))
        }
    }
}

fn selfadjoint_family_mix<T: Scalar>(
    cfg: &GenConfig,
    n: usize,
    category: u64,
    tol: &TolerancePolicy,
) -> Result<(LinearRelation<T>, Option<bool>)> {
    match category {
        0 | 1 => Ok((generate::random_symmetric(cfg, n, tol)?, Some(true))),
        2 | 3 => {
            let n = n.max(perturbable_symmetric_min_dim::<T>());
            let s = generate::random_symmetric(cfg, n, tol)?;
            Ok((generate::perturb_symmetric(cfg, &s, 0.1, tol)?, Some(false)))
        }
        _ => {
            let s = generate::random_symmetric(cfg, n, tol)?;
            Ok((
                generate::restrict_to_partial(&s, cfg, n.saturating_sub(1), tol)?,
                Some(false),
            ))
        }
    }
}

fn skew_family_mix<T: Scalar>(
    cfg: &GenConfig,
    n: usize,
    category: u64,
    tol: &TolerancePolicy,
) -> Result<(LinearRelation<T>, Option<bool>)> {
    match category {
        0 | 1 => Ok((generate::random_skew_adjoint(cfg, n, tol)?, Some(true))),
        2 | 3 => {
            let s = generate::random_skew_adjoint(cfg, n, tol)?;
            Ok((
                generate::perturb_skew_adjoint(cfg, &s, 0.1, tol)?,
                Some(false),
            ))
        }
        _ => {
            let n = n.max(2);
            let s = generate::random_skew_adjoint(cfg, n, tol)?;
            Ok((
                generate::restrict_to_partial(&s, cfg, n - 1, tol)?,
                Some(false),
            ))
        }
    }
}

fn unitary_family_mix<T: Scalar>(
    cfg: &GenConfig,
    n: usize,
    category: u64,
    tol: &TolerancePolicy,
) -> Result<(LinearRelation<T>, Option<bool>)> {
    match category {
        0 | 1 => Ok((generate::random_unitary(cfg, n, tol)?, Some(true))),
        2 | 3 => {
            let u = generate::random_unitary(cfg, n, tol)?;
            Ok((generate::perturb_unitary(cfg, &u, 0.1, tol)?, Some(false)))
        }
        _ => {
            // force a kernel: U times the projector onto a proper subspace
            let u = generate::random_unitary::<T>(cfg, n, tol)?;
            let matrix = u.to_matrix(tol)?;
            let sub = generate::random_subspace::<T>(cfg, n, n.saturating_sub(1), tol)?;
            Ok((
                LinearRelation::from_total_matrix(&(matrix * sub.projector()), tol),
                Some(false),
            ))
        }
    }
}

/// Equivalence suites: all statements must agree when every margin clears
/// the guard band.
fn equivalence_outcome(
    report: &CriterionReport,
    names: &[&str],
    tol: &TolerancePolicy,
) -> Outcome {
    if !report.all_decisive(tol) {
        return Outcome::Skipped;
    }
    let verdicts: Vec<bool> = names
        .iter()
        .map(|n| report.condition(n).expect("statement present").verdict)
        .collect();
    if verdicts.windows(2).all(|w| w[0] == w[1]) {
        Outcome::Pass {
            positive: verdicts[0],
        }
    } else {
        Outcome::Violation {
            detail: format!(
                "equivalent statements disagree: {:?}",
                names.iter().zip(&verdicts).collect::<Vec<_>>()
            ),
        }
    }
}

/// Biconditional suites where statement (i) lives in `conclusion_verified`
/// and statement (ii) is the conjunction of the conditions.
fn biconditional_outcome(report: &CriterionReport, tol: &TolerancePolicy) -> Outcome {
    if !report.all_decisive(tol) {
        return Outcome::Skipped;
    }
    let i = report
        .conclusion_verified
        .as_ref()
        .expect("biconditional reports carry statement (i)")
        .verdict;
    let ii = report.overall.verdict;
    if i == ii {
        Outcome::Pass { positive: i }
    } else {
        Outcome::Violation {
            detail: format!("statement (i) = {i} but (ii) = {ii}"),
        }
    }
}

/// One-way suites: satisfied conditions force the verified conclusion.
fn implication_outcome(report: &CriterionReport, tol: &TolerancePolicy) -> Outcome {
    if !report.all_decisive(tol) {
        return Outcome::Skipped;
    }
    let conclusion = report
        .conclusion_verified
        .as_ref()
        .expect("one-way reports verify their conclusion")
        .verdict;
    if report.overall.verdict && !conclusion {
        Outcome::Violation {
            detail: "conditions hold but the verified conclusion fails".to_string(),
        }
    } else {
        Outcome::Pass {
            positive: report.overall.verdict,
        }
    }
}

/// Resolvent suites: the oracle may never accept while the grid rejects, and
/// constructed instances must land on their designed side.
fn nieminen_outcome(report: &resolvent::NieminenReport, constructed_valid: Option<bool>) -> Outcome {
    if report.oracle.verdict && !report.overall.verdict {
        return Outcome::Violation {
            detail: "mutually adjoint by oracle but a probe failed".to_string(),
        };
    }
    match constructed_valid {
        Some(true) if !report.oracle.verdict => Outcome::Violation {
            detail: "clean construction fails the adjointness oracle".to_string(),
        },
        Some(false) if report.overall.verdict => Outcome::Violation {
            detail: format!(
                "constructed violation (pairing defect {:.3e}) passed every probe",
                report.pairing_defect
            ),
        },
        _ => Outcome::Pass {
            positive: report.overall.verdict,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn id_parsing_accepts_aliases() {
        assert_eq!(TheoremId::parse("arens").unwrap(), TheoremId::Arens);
        assert_eq!(
            TheoremId::parse("arens_inclusion").unwrap(),
            TheoremId::Arens
        );
        assert_eq!(
            TheoremId::parse("von_neumann_ranges").unwrap(),
            TheoremId::VonNeumann
        );
        assert_eq!(
            TheoremId::parse("selfadjoint_via_range").unwrap(),
            TheoremId::SelfadjointRange
        );
        assert_eq!(
            TheoremId::parse("NIEMINEN-SKEW").unwrap(),
            TheoremId::NieminenSkew
        );
        assert!(TheoremId::parse("frobnicate").is_err());
        for id in TheoremId::ALL {
            assert_eq!(TheoremId::parse(id.canonical()).unwrap(), id);
        }
    }

    #[test]
    fn zero_trials_rejected() {
        let cc = CampaignConfig {
            theorem: TheoremId::Arens,
            trials: 0,
            seed: 1,
            field: FieldTag::Real,
            max_dim: 4,
            grid: None,
            tol: TolerancePolicy::default(),
        };
        assert!(matches!(run_campaign(&cc), Err(Error::Precondition(_))));
    }

    #[test]
    fn small_campaigns_run_clean() {
        for theorem in TheoremId::ALL {
            for field in [FieldTag::Real, FieldTag::Complex] {
                let cc = CampaignConfig {
                    theorem,
                    trials: 20,
                    seed: 20260810,
                    field,
                    max_dim: 4,
                    grid: None,
                    tol: TolerancePolicy::default(),
                };
                let summary = run_campaign(&cc).unwrap();
                assert!(
                    summary.passed(),
                    "{} over {field}: {:?}",
                    theorem.canonical(),
                    summary
                        .violations
                        .iter()
                        .map(|v| (v.trial, v.detail.clone()))
                        .collect::<Vec<_>>()
                );
                assert_eq!(summary.checked + summary.skipped, 20);
            }
        }
    }

    #[test]
    fn campaigns_are_reproducible() {
        let cc = CampaignConfig {
            theorem: TheoremId::VonNeumann,
            trials: 30,
            seed: 7,
            field: FieldTag::Real,
            max_dim: 5,
            grid: None,
            tol: TolerancePolicy::default(),
        };
        let a = serde_json::to_string(&run_campaign(&cc).unwrap()).unwrap();
        let b = serde_json::to_string(&run_campaign(&cc).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
