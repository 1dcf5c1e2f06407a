//! Tolerance policy and the margin-carrying boolean verdicts every checker
//! returns.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numerical tolerances shared by all rank and subspace decisions.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct TolerancePolicy {
    /// Relative rank cutoff: singular values of `M` below
    /// `rank_rel_eps · σ_max(M) · max(rows, cols)` count as zero.
    pub rank_rel_eps: f64,
    /// Threshold on projector-difference / residual norms deciding subspace
    /// equality and containment.
    pub subspace_eq_tol: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        TolerancePolicy {
            rank_rel_eps: 1e-10,
            subspace_eq_tol: 1e-8,
        }
    }
}

impl TolerancePolicy {
    pub fn validate(&self) -> Result<()> {
        if !(self.rank_rel_eps > 0.0) {
            return Err(Error::InvalidTolerance(format!(
                "rank_rel_eps must be strictly positive, got {}",
                self.rank_rel_eps
            )));
        }
        if !(self.subspace_eq_tol > 0.0) {
            return Err(Error::InvalidTolerance(format!(
                "subspace_eq_tol must be strictly positive, got {}",
                self.subspace_eq_tol
            )));
        }
        Ok(())
    }

    /// Effective rank threshold for a matrix with extreme singular value
    /// `sigma_max`; exactly zero matrices get a zero threshold.
    pub fn rank_threshold(&self, sigma_max: f64, rows: usize, cols: usize) -> f64 {
        if sigma_max == 0.0 {
            0.0
        } else {
            self.rank_rel_eps * sigma_max * rows.max(cols) as f64
        }
    }
}

/// Boolean verdict plus a signed margin: how far the decisive quantity sits
/// from its tolerance threshold. Each producing operation declares the sign
/// convention; in all of them `margin > 0 ⟺ verdict`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub verdict: bool,
    pub margin: f64,
    pub trace: String,
}

impl CheckResult {
    /// Verdict true iff `value ≤ threshold`; margin is `threshold − value`.
    pub fn from_upper_bound(value: f64, threshold: f64, what: &str) -> Self {
        CheckResult {
            verdict: value <= threshold,
            margin: threshold - value,
            trace: format!("{what} = {value:.3e} vs threshold {threshold:.3e}"),
        }
    }

    /// Verdict true iff `value > threshold`; margin is `value − threshold`.
    pub fn from_lower_bound(value: f64, threshold: f64, what: &str) -> Self {
        CheckResult {
            verdict: value > threshold,
            margin: value - threshold,
            trace: format!("{what} = {value:.3e} vs threshold {threshold:.3e}"),
        }
    }

    pub fn pass(margin: f64, trace: impl Into<String>) -> Self {
        CheckResult {
            verdict: true,
            margin,
            trace: trace.into(),
        }
    }

    pub fn fail(margin: f64, trace: impl Into<String>) -> Self {
        CheckResult {
            verdict: false,
            margin,
            trace: trace.into(),
        }
    }

    /// Conjunction: verdicts AND together, the margin is the weakest one.
    pub fn and(&self, other: &CheckResult) -> CheckResult {
        let margin = if self.verdict == other.verdict {
            if self.verdict {
                self.margin.min(other.margin)
            } else {
                // both failed: report the most decisive failure
                self.margin.min(other.margin)
            }
        } else if self.verdict {
            other.margin
        } else {
            self.margin
        };
        CheckResult {
            verdict: self.verdict && other.verdict,
            margin,
            trace: format!("{}; {}", self.trace, other.trace),
        }
    }

    pub fn all<'a>(mut results: impl Iterator<Item = &'a CheckResult>) -> CheckResult {
        let first = match results.next() {
            Some(r) => r.clone(),
            None => CheckResult::pass(f64::INFINITY, "vacuous conjunction"),
        };
        results.fold(first, |acc, r| acc.and(r))
    }

    /// Guard band for equivalence testing: a decision counts as decisive when
    /// it sits clear of the tolerance boundary on its side. True verdicts can
    /// carry at most `subspace_eq_tol` of margin by construction, so the band
    /// is one decade below the threshold on the true side and one decade
    /// above it on the false side.
    pub fn is_decisive(&self, tol: &TolerancePolicy) -> bool {
        self.margin >= 0.9 * tol.subspace_eq_tol || self.margin <= -10.0 * tol.subspace_eq_tol
    }
}
