//! Problem files, typed instances and check reports.
//!
//! A problem file is a JSON document naming the scalar field, the space
//! dimensions, the relation S (and optionally T), the criteria to run and
//! optional tolerance overrides:
//!
//! ```json
//! {
//!   "field": "real",
//!   "h_dim": 2, "k_dim": 2,
//!   "S": {"kind": "operator", "matrix": [[0.0, 1.0], [1.0, 0.0]], "domain_basis": null},
//!   "T": null,
//!   "checks": ["selfadjoint-range"],
//!   "tol": {"rank_rel_eps": 1e-10, "subspace_eq_tol": 1e-8}
//! }
//! ```
//!
//! Matrices are row lists. Complex entries are `[re, im]` pairs and are only
//! accepted when `field` is `"complex"`. `S.matrix` is k_dim × h_dim and
//! `T.matrix` h_dim × k_dim; `domain_basis` and `graph_spanners` carry the
//! spanning vectors as columns, with the relation's own domain block first
//! (h_dim + k_dim rows for S, k_dim + h_dim rows for T). Counterexample
//! dumps produced by theorem campaigns are problem files themselves, with
//! replay metadata under `meta`.

use nalgebra::{Complex, DMatrix};
use serde::{Deserialize, Serialize};

use crate::characterize::CriterionReport;
use crate::check::TolerancePolicy;
use crate::error::{Error, Result};
use crate::relation::{LinearRelation, OperatorSpec};
use crate::resolvent::NieminenReport;
use crate::scalar::{FieldTag, Scalar};
use crate::subspace;

/// One matrix entry: a bare number over ℝ, or an `[re, im]` pair over ℂ.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Real(f64),
    Pair([f64; 2]),
}

pub type JsonMatrix = Vec<Vec<Entry>>;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum RelationDesc {
    Operator {
        matrix: JsonMatrix,
        #[serde(default)]
        domain_basis: Option<JsonMatrix>,
    },
    Relation { graph_spanners: JsonMatrix },
}

#[derive(Clone, Copy, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TolOverride {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_rel_eps: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subspace_eq_tol: Option<f64>,
}

impl TolOverride {
    pub fn apply(&self, base: TolerancePolicy) -> TolerancePolicy {
        TolerancePolicy {
            rank_rel_eps: self.rank_rel_eps.unwrap_or(base.rank_rel_eps),
            subspace_eq_tol: self.subspace_eq_tol.unwrap_or(base.subspace_eq_tol),
        }
    }
}

/// Replay metadata carried by generated counterexample dumps.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemMeta {
    pub generator: String,
    pub seed: u64,
    pub trial: u64,
    pub theorem: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub field: FieldTag,
    pub h_dim: usize,
    pub k_dim: usize,
    #[serde(rename = "S")]
    pub s: RelationDesc,
    #[serde(rename = "T", default, skip_serializing_if = "Option::is_none")]
    pub t: Option<RelationDesc>,
    pub checks: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<TolOverride>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<ProblemMeta>,
}

/// A problem instantiated over its scalar field.
pub enum ProblemInstance {
    Real(TypedProblem<f64>),
    Complex(TypedProblem<Complex<f64>>),
}

pub struct TypedProblem<T: Scalar> {
    pub h_dim: usize,
    pub k_dim: usize,
    pub s: LinearRelation<T>,
    pub t: Option<LinearRelation<T>>,
    pub tol: TolerancePolicy,
    pub checks: Vec<String>,
}

fn entry_to_scalar<T: Scalar>(entry: &Entry, field: FieldTag, at: &str) -> Result<T> {
    match entry {
        Entry::Real(x) => Ok(T::from_re_im(*x, 0.0)),
        Entry::Pair([re, im]) => {
            if field == FieldTag::Real {
                return Err(Error::InvalidProblem(format!(
                    "{at}: complex entry [{re}, {im}] in a real-field problem"
                )));
            }
            Ok(T::from_re_im(*re, *im))
        }
    }
}

fn parse_matrix<T: Scalar>(
    json: &JsonMatrix,
    rows: usize,
    cols: usize,
    field: FieldTag,
    what: &str,
) -> Result<DMatrix<T>> {
    if json.len() != rows {
        return Err(Error::InvalidProblem(format!(
            "{what}: expected {rows} rows, got {}",
            json.len()
        )));
    }
    let mut m = DMatrix::zeros(rows, cols);
    for (i, row) in json.iter().enumerate() {
        if row.len() != cols {
            return Err(Error::InvalidProblem(format!(
                "{what}, row {i}: expected {cols} entries, got {}",
                row.len()
            )));
        }
        for (j, e) in row.iter().enumerate() {
            m[(i, j)] = entry_to_scalar(e, field, &format!("{what}[{i}][{j}]"))?;
        }
    }
    Ok(m)
}

/// Columns of a spanning matrix given as a row list with a known row count
/// but a data-dependent column count.
fn parse_spanners<T: Scalar>(
    json: &JsonMatrix,
    rows: usize,
    field: FieldTag,
    what: &str,
) -> Result<DMatrix<T>> {
    if json.len() != rows {
        return Err(Error::InvalidProblem(format!(
            "{what}: expected {rows} rows, got {}",
            json.len()
        )));
    }
    let cols = json.first().map_or(0, |r| r.len());
    parse_matrix(json, rows, cols, field, what)
}

fn build_relation<T: Scalar>(
    desc: &RelationDesc,
    from_dim: usize,
    to_dim: usize,
    field: FieldTag,
    tol: &TolerancePolicy,
    what: &str,
) -> Result<LinearRelation<T>> {
    match desc {
        RelationDesc::Operator {
            matrix,
            domain_basis,
        } => {
            let m = parse_matrix(matrix, to_dim, from_dim, field, &format!("{what}.matrix"))?;
            let domain = match domain_basis {
                None => None,
                Some(db) => {
                    let spanners =
                        parse_spanners::<T>(db, from_dim, field, &format!("{what}.domain_basis"))?;
                    Some(subspace::orthonormal_basis(&spanners, tol))
                }
            };
            LinearRelation::from_operator(&OperatorSpec { matrix: m, domain }, tol)
        }
        RelationDesc::Relation { graph_spanners } => {
            let spanners = parse_spanners::<T>(
                graph_spanners,
                from_dim + to_dim,
                field,
                &format!("{what}.graph_spanners"),
            )?;
            LinearRelation::from_spanners(from_dim, to_dim, &spanners, tol)
        }
    }
}

impl ProblemFile {
    pub fn parse_str(text: &str) -> Result<ProblemFile> {
        let problem: ProblemFile =
            serde_json::from_str(text).map_err(|e| Error::InvalidProblem(format!("{e}")))?;
        problem.validate()?;
        Ok(problem)
    }

    pub fn parse_file(path: &std::path::Path) -> Result<ProblemFile> {
        let text = std::fs::read_to_string(path)?;
        ProblemFile::parse_str(&text)
    }

    fn validate(&self) -> Result<()> {
        if let Some(tol) = &self.tol {
            tol.apply(TolerancePolicy::default()).validate()?;
        }
        for id in &self.checks {
            crate::verify::TheoremId::parse(id)?;
        }
        Ok(())
    }

    /// Canonical serialization; `serialize(parse(f))` is the canonical form
    /// of `f`.
    pub fn to_canonical_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("problem files serialize");
        out.push('\n');
        out
    }

    pub fn tolerance(&self, base: TolerancePolicy) -> TolerancePolicy {
        self.tol.map_or(base, |o| o.apply(base))
    }

    pub fn instantiate(&self, base_tol: TolerancePolicy) -> Result<ProblemInstance> {
        let tol = self.tolerance(base_tol);
        tol.validate()?;
        match self.field {
            FieldTag::Real => Ok(ProblemInstance::Real(self.instantiate_typed(tol)?)),
            FieldTag::Complex => Ok(ProblemInstance::Complex(self.instantiate_typed(tol)?)),
        }
    }

    fn instantiate_typed<T: Scalar>(&self, tol: TolerancePolicy) -> Result<TypedProblem<T>> {
        let s = build_relation(&self.s, self.h_dim, self.k_dim, self.field, &tol, "S")?;
        let t = match &self.t {
            None => None,
            Some(desc) => Some(build_relation(
                desc, self.k_dim, self.h_dim, self.field, &tol, "T",
            )?),
        };
        Ok(TypedProblem {
            h_dim: self.h_dim,
            k_dim: self.k_dim,
            s,
            t,
            tol,
            checks: self.checks.clone(),
        })
    }
}

fn scalar_to_entry<T: Scalar>(x: T, field: FieldTag) -> Entry {
    let (re, im) = x.re_im();
    match field {
        FieldTag::Real => Entry::Real(re),
        FieldTag::Complex => Entry::Pair([re, im]),
    }
}

pub fn matrix_to_json<T: Scalar>(m: &DMatrix<T>, field: FieldTag) -> JsonMatrix {
    (0..m.nrows())
        .map(|i| {
            (0..m.ncols())
                .map(|j| scalar_to_entry(m[(i, j)], field))
                .collect()
        })
        .collect()
}

/// Describe a relation for a problem file: total operators by their matrix,
/// partial operators by matrix plus domain basis, everything else by graph
/// spanners.
pub fn describe_relation<T: Scalar>(
    rel: &LinearRelation<T>,
    tol: &TolerancePolicy,
) -> RelationDesc {
    let field = T::FIELD;
    if rel.is_operator(tol).verdict {
        if let Ok(matrix) = rel.to_matrix(tol) {
            return RelationDesc::Operator {
                matrix: matrix_to_json(&matrix, field),
                domain_basis: None,
            };
        }
        let dom = rel.parts(tol).dom;
        if let Ok(images) = rel.apply(dom.basis(), tol) {
            // action on the domain extended by zero off it
            let matrix = images * dom.basis().adjoint();
            return RelationDesc::Operator {
                matrix: matrix_to_json(&matrix, field),
                domain_basis: Some(matrix_to_json(dom.basis(), field)),
            };
        }
    }
    RelationDesc::Relation {
        graph_spanners: matrix_to_json(rel.graph().basis(), field),
    }
}

/// Outcome of one requested check.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum CheckOutcome {
    Ok {
        #[serde(flatten)]
        report: CheckReportBody,
    },
    Error {
        message: String,
    },
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum CheckReportBody {
    Criterion(CriterionReport),
    Nieminen(NieminenReport),
}

impl CheckOutcome {
    pub fn verdict(&self) -> Option<bool> {
        match self {
            CheckOutcome::Ok { report } => Some(match report {
                CheckReportBody::Criterion(r) => r.overall.verdict,
                CheckReportBody::Nieminen(r) => r.overall.verdict,
            }),
            CheckOutcome::Error { .. } => None,
        }
    }
}

/// Full report of a `check` run: the problem echoed back, one outcome per
/// requested criterion, and the aggregate verdict.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRunReport {
    pub problem: ProblemFile,
    pub results: Vec<(String, CheckOutcome)>,
    pub all_passed: bool,
    pub had_errors: bool,
}

/// Adjoint dump: the graph basis of S* and the four parts of S*.
#[derive(Clone, Debug, Serialize)]
pub struct AdjointReport {
    /// Dimension of the space the adjoint maps from (K).
    pub from_dim: usize,
    /// Dimension of the space the adjoint maps to (H).
    pub to_dim: usize,
    pub graph_basis: JsonMatrix,
    pub dom_dim: usize,
    pub dom_basis: JsonMatrix,
    pub ran_dim: usize,
    pub ran_basis: JsonMatrix,
    pub ker_dim: usize,
    pub ker_basis: JsonMatrix,
    pub mul_dim: usize,
    pub mul_basis: JsonMatrix,
}

pub fn adjoint_report<T: Scalar>(s: &LinearRelation<T>, tol: &TolerancePolicy) -> AdjointReport {
    let adj = s.adjoint(tol);
    let parts = adj.parts(tol);
    let field = T::FIELD;
    AdjointReport {
        from_dim: adj.h_dim(),
        to_dim: adj.k_dim(),
        graph_basis: matrix_to_json(adj.graph().basis(), field),
        dom_dim: parts.dom.dim(),
        dom_basis: matrix_to_json(parts.dom.basis(), field),
        ran_dim: parts.ran.dim(),
        ran_basis: matrix_to_json(parts.ran.basis(), field),
        ker_dim: parts.ker.dim(),
        ker_basis: matrix_to_json(parts.ker.basis(), field),
        mul_dim: parts.mul.dim(),
        mul_basis: matrix_to_json(parts.mul.basis(), field),
    }
}
