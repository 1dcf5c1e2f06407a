//! Command-line front end: problem checking, adjoint dumps, randomized
//! theorem-verification campaigns and resolvent norm profiles.
//!
//! Exit status contract: 0 when every requested verdict is true (or the
//! campaign finds no violation), 1 when some verdict is false or a violation
//! was found, 2 on input errors and precondition failures.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::check::TolerancePolicy;
use crate::error::{Error, Result};
use crate::problem::{
    adjoint_report, AdjointReport, CheckOutcome, CheckReportBody, CheckRunReport, ProblemFile,
    ProblemInstance, TypedProblem,
};
use crate::relation::LinearRelation;
use crate::resolvent;
use crate::scalar::Scalar;
use crate::verify::{self, CampaignConfig, CampaignSummary, TheoremId};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "linrel",
    about = "Calculus of linear relations: adjoints, range-kernel criteria, resolvent norms",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalFlags,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalFlags {
    /// Relative rank threshold (defaults to 1e-10).
    #[arg(long, global = true)]
    pub tol_rank: Option<f64>,
    /// Subspace equality threshold (defaults to 1e-8).
    #[arg(long, global = true)]
    pub tol_subspace: Option<f64>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Machine,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the checks requested by a problem file.
    Check {
        problem: PathBuf,
        /// Comma-separated nonzero t values overriding the resolvent grid.
        #[arg(long)]
        grid: Option<String>,
    },
    /// Print the adjoint of S: graph basis and the four parts.
    Adjoint { problem: PathBuf },
    /// Verify a theorem on randomized instances; dumps a replayable
    /// counterexample problem file on violation.
    VerifyTheorem {
        id: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "real")]
        field: String,
        #[arg(long, default_value_t = 6)]
        dim_max: usize,
        /// Comma-separated nonzero t values overriding the resolvent grid.
        #[arg(long)]
        grid: Option<String>,
        /// Directory for counterexample dumps (defaults to the working
        /// directory).
        #[arg(long)]
        dump_dir: Option<PathBuf>,
    },
    /// Emit "t,norm,bound,satisfied" rows for ±t over a log-spaced grid.
    NormProfile {
        problem: PathBuf,
        #[arg(long)]
        t_min: f64,
        #[arg(long)]
        t_max: f64,
        #[arg(long, default_value_t = 25)]
        points: usize,
    },
}

fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let grid: Vec<f64> = spec
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| Error::Precondition(format!("bad grid value `{s}`: {e}")))
        })
        .collect::<Result<_>>()?;
    if grid.is_empty() || grid.iter().any(|&t| t == 0.0 || !t.is_finite()) {
        return Err(Error::Precondition(
            "grid values must be finite and nonzero".to_string(),
        ));
    }
    Ok(grid)
}

impl GlobalFlags {
    fn tolerance(&self) -> Result<TolerancePolicy> {
        let tol = TolerancePolicy {
            rank_rel_eps: self.tol_rank.unwrap_or(1e-10),
            subspace_eq_tol: self.tol_subspace.unwrap_or(1e-8),
        };
        tol.validate()?;
        Ok(tol)
    }
}

/// Run the parsed command line, writing reports to `out`; returns the exit
/// status.
pub fn run(cli: &Cli, out: &mut dyn Write) -> i32 {
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(err) => {
            let _ = writeln!(out, "error: {err}");
            EXIT_ERROR
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let tol = cli.global.tolerance()?;
    match &cli.command {
        Command::Check { problem, grid } => {
            let grid = match grid {
                Some(g) => Some(parse_grid(g)?),
                None => None,
            };
            cmd_check(problem, grid, tol, cli.global.format, out)
        }
        Command::Adjoint { problem } => cmd_adjoint(problem, tol, cli.global.format, out),
        Command::VerifyTheorem {
            id,
            trials,
            seed,
            field,
            dim_max,
            grid,
            dump_dir,
        } => {
            let theorem = TheoremId::parse(id)?;
            if *trials == 0 {
                return Err(Error::Precondition("--trials must be ≥ 1".to_string()));
            }
            let grid = match grid {
                Some(g) => Some(parse_grid(g)?),
                None => None,
            };
            let cc = CampaignConfig {
                theorem,
                trials: *trials,
                seed: *seed,
                field: field.parse()?,
                max_dim: *dim_max,
                grid,
                tol,
            };
            cmd_verify_theorem(&cc, dump_dir.as_deref(), cli.global.format, out)
        }
        Command::NormProfile {
            problem,
            t_min,
            t_max,
            points,
        } => cmd_norm_profile(problem, *t_min, *t_max, *points, tol, out),
    }
}

fn cmd_check(
    path: &std::path::Path,
    grid: Option<Vec<f64>>,
    tol: TolerancePolicy,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<i32> {
    let file = ProblemFile::parse_file(path)?;
    let instance = file.instantiate(tol)?;
    let report = match instance {
        ProblemInstance::Real(tp) => run_checks(&file, &tp, grid.as_deref()),
        ProblemInstance::Complex(tp) => run_checks(&file, &tp, grid.as_deref()),
    };
    match format {
        OutputFormat::Machine => {
            writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
        }
        OutputFormat::Text => render_check_text(&report, out)?,
    }
    Ok(if report.had_errors {
        EXIT_ERROR
    } else if report.all_passed {
        EXIT_OK
    } else {
        EXIT_FAILED
    })
}

fn run_checks<T: Scalar>(
    file: &ProblemFile,
    tp: &TypedProblem<T>,
    grid: Option<&[f64]>,
) -> CheckRunReport {
    let default_grid = resolvent::default_grid();
    let grid = grid.unwrap_or(&default_grid);
    let mut results = Vec::new();
    let mut all_passed = true;
    let mut had_errors = false;
    for id_text in &tp.checks {
        let id = TheoremId::parse(id_text).expect("ids validated at parse time");
        let outcome = match verify::run_check(id, &tp.s, tp.t.as_ref(), grid, &tp.tol) {
            Ok(report) => CheckOutcome::Ok { report },
            Err(err) => {
                had_errors = true;
                CheckOutcome::Error {
                    message: err.to_string(),
                }
            }
        };
        if outcome.verdict() != Some(true) {
            all_passed = false;
        }
        results.push((id.canonical().to_string(), outcome));
    }
    CheckRunReport {
        problem: file.clone(),
        results,
        all_passed,
        had_errors,
    }
}

fn render_check_text(report: &CheckRunReport, out: &mut dyn Write) -> Result<()> {
    for (id, outcome) in &report.results {
        match outcome {
            CheckOutcome::Error { message } => writeln!(out, "{id}: ERROR {message}")?,
            CheckOutcome::Ok { report } => match report {
                CheckReportBody::Criterion(r) => {
                    writeln!(
                        out,
                        "{id}: {}",
                        if r.overall.verdict { "PASS" } else { "FAIL" }
                    )?;
                    for (name, c) in &r.conditions {
                        writeln!(
                            out,
                            "  condition {name}: {} (margin {:+.3e}) {}",
                            verdict_str(c.verdict),
                            c.margin,
                            c.trace
                        )?;
                    }
                    if let Some(c) = &r.conclusion_verified {
                        writeln!(
                            out,
                            "  conclusion: {} (margin {:+.3e})",
                            verdict_str(c.verdict),
                            c.margin
                        )?;
                    }
                }
                CheckReportBody::Nieminen(r) => {
                    writeln!(
                        out,
                        "{id}: {} (pairing defect {:.3e}, oracle {})",
                        if r.overall.verdict { "PASS" } else { "FAIL" },
                        r.pairing_defect,
                        verdict_str(r.oracle.verdict)
                    )?;
                    for (name, c) in &r.conditions {
                        writeln!(out, "  condition {name}: {}", verdict_str(c.verdict))?;
                    }
                    for p in &r.probes {
                        writeln!(
                            out,
                            "  t = {:+.6}: {} norm {} bound {:.6e}",
                            p.t,
                            verdict_str(p.satisfied.verdict),
                            p.norm
                                .map(|n| format!("{n:.6e}"))
                                .unwrap_or_else(|| "-".to_string()),
                            p.bound
                        )?;
                    }
                }
            },
        }
    }
    writeln!(
        out,
        "result: {}",
        if report.had_errors {
            "ERROR"
        } else if report.all_passed {
            "PASS"
        } else {
            "FAIL"
        }
    )?;
    Ok(())
}

fn verdict_str(v: bool) -> &'static str {
    if v {
        "true"
    } else {
        "false"
    }
}

fn cmd_adjoint(
    path: &std::path::Path,
    tol: TolerancePolicy,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<i32> {
    let file = ProblemFile::parse_file(path)?;
    let report = match file.instantiate(tol)? {
        ProblemInstance::Real(tp) => adjoint_report(&tp.s, &tp.tol),
        ProblemInstance::Complex(tp) => adjoint_report(&tp.s, &tp.tol),
    };
    match format {
        OutputFormat::Machine => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
        OutputFormat::Text => render_adjoint_text(&report, out)?,
    }
    Ok(EXIT_OK)
}

fn render_adjoint_text(report: &AdjointReport, out: &mut dyn Write) -> Result<()> {
    writeln!(
        out,
        "adjoint S*: relation from K (dim {}) to H (dim {})",
        report.from_dim, report.to_dim
    )?;
    writeln!(out, "graph basis (columns):")?;
    writeln!(out, "{}", json_matrix_text(&report.graph_basis))?;
    writeln!(out, "dom S* (dim {}):", report.dom_dim)?;
    writeln!(out, "{}", json_matrix_text(&report.dom_basis))?;
    writeln!(out, "ran S* (dim {}):", report.ran_dim)?;
    writeln!(out, "{}", json_matrix_text(&report.ran_basis))?;
    writeln!(out, "ker S* (dim {}):", report.ker_dim)?;
    writeln!(out, "{}", json_matrix_text(&report.ker_basis))?;
    writeln!(out, "mul S* (dim {}):", report.mul_dim)?;
    writeln!(out, "{}", json_matrix_text(&report.mul_basis))?;
    Ok(())
}

fn json_matrix_text(m: &crate::problem::JsonMatrix) -> String {
    use crate::problem::Entry;
    if m.is_empty() || m[0].is_empty() {
        return "  (empty)".to_string();
    }
    m.iter()
        .map(|row| {
            let cells: Vec<String> = row
                .iter()
                .map(|e| match e {
                    Entry::Real(x) => format!("{x:+.6}"),
                    Entry::Pair([re, im]) => format!("{re:+.6}{im:+.6}i"),
                })
                .collect();
            format!("  [ {} ]", cells.join("  "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn cmd_verify_theorem(
    cc: &CampaignConfig,
    dump_dir: Option<&std::path::Path>,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<i32> {
    let summary = verify::run_campaign(cc)?;
    for violation in &summary.violations {
        let dir = dump_dir.unwrap_or_else(|| std::path::Path::new("."));
        let name = format!(
            "counterexample-{}-{}-trial{}.json",
            summary.theorem, summary.seed, violation.trial
        );
        let path = dir.join(name);
        std::fs::write(&path, violation.problem.to_canonical_json())?;
        writeln!(out, "counterexample written to {}", path.display())?;
    }
    match format {
        OutputFormat::Machine => writeln!(out, "{}", serde_json::to_string_pretty(&summary)?)?,
        OutputFormat::Text => render_campaign_text(&summary, out)?,
    }
    Ok(if summary.passed() {
        EXIT_OK
    } else {
        EXIT_FAILED
    })
}

fn render_campaign_text(summary: &CampaignSummary, out: &mut dyn Write) -> Result<()> {
    writeln!(
        out,
        "theorem {} over {} field: {} trials, {} checked, {} skipped (guard band)",
        summary.theorem, summary.field, summary.trials, summary.checked, summary.skipped
    )?;
    writeln!(
        out,
        "  statement true on {} instances, false on {} instances",
        summary.true_positive, summary.true_negative
    )?;
    if summary.violations.is_empty() {
        writeln!(out, "  no violations")?;
    } else {
        for v in &summary.violations {
            writeln!(out, "  VIOLATION at trial {}: {}", v.trial, v.detail)?;
        }
    }
    Ok(())
}

fn cmd_norm_profile(
    path: &std::path::Path,
    t_min: f64,
    t_max: f64,
    points: usize,
    tol: TolerancePolicy,
    out: &mut dyn Write,
) -> Result<i32> {
    if !(t_min > 0.0 && t_max > t_min) {
        return Err(Error::Precondition(
            "need 0 < t_min < t_max for the norm profile".to_string(),
        ));
    }
    if points < 2 {
        return Err(Error::Precondition("need points ≥ 2".to_string()));
    }
    let file = ProblemFile::parse_file(path)?;
    match file.instantiate(tol)? {
        ProblemInstance::Real(tp) => norm_profile_rows(&tp, t_min, t_max, points, out),
        ProblemInstance::Complex(tp) => norm_profile_rows(&tp, t_min, t_max, points, out),
    }
}

fn norm_profile_rows<T: Scalar>(
    tp: &TypedProblem<T>,
    t_min: f64,
    t_max: f64,
    points: usize,
    out: &mut dyn Write,
) -> Result<i32> {
    let t_rel: &LinearRelation<T> = tp.t.as_ref().ok_or_else(|| {
        Error::Precondition("norm-profile needs both S and T".to_string())
    })?;
    let ratio = t_max / t_min;
    let magnitudes: Vec<f64> = (0..points)
        .map(|i| t_min * ratio.powf(i as f64 / (points - 1) as f64))
        .collect();
    let mut grid: Vec<f64> = magnitudes.iter().map(|&t| -t).collect();
    grid.reverse();
    grid.extend(magnitudes.iter().copied());

    writeln!(out, "t,norm,bound,satisfied")?;
    for &t in &grid {
        let bound = 1.0 / t.abs();
        let (norm_text, satisfied) = match resolvent::in_resolvent_set(&tp.s, t_rel, t, &tp.tol) {
            Ok(in_set) if in_set.verdict => {
                let norm = resolvent::resolvent_norm(&tp.s, t_rel, t, &tp.tol)?;
                (
                    format!("{norm}"),
                    norm <= bound + resolvent::NORM_SLACK,
                )
            }
            Ok(_) => ("nan".to_string(), false),
            Err(e) => return Err(e),
        };
        writeln!(out, "{t},{norm_text},{bound},{satisfied}")?;
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parser() {
        assert_eq!(parse_grid("1, -2,0.5").unwrap(), vec![1.0, -2.0, 0.5]);
        assert!(parse_grid("1,0").is_err());
        assert!(parse_grid("abc").is_err());
        assert!(parse_grid("").is_err());
    }

    #[test]
    fn tolerance_flags_validated() {
        let flags = GlobalFlags {
            tol_rank: Some(-1.0),
            tol_subspace: None,
            format: OutputFormat::Text,
        };
        assert!(flags.tolerance().is_err());
    }
}
