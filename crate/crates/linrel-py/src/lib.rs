//! Python bindings: the `Relation` type plus the checkers, resolvent
//! criteria, generators and theorem campaigns, over ℝ or ℂ.
//!
//! Matrices cross the boundary as nested lists (row-major); entries may be
//! ints, floats or Python complex numbers, with complex entries only
//! accepted when `field="complex"`. Structured reports come back as JSON
//! strings so Python callers can `json.loads` them.

use nalgebra::{Complex, DMatrix};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyList;

use linrel::relation::{LinearRelation, OperatorSpec};
use linrel::resolvent;
use linrel::scalar::{FieldTag, Scalar};
use linrel::subspace;
use linrel::verify::{self, CampaignConfig, TheoremId};
use linrel::{generate, CheckResult, TolerancePolicy};

fn err(e: linrel::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_field(field: &str) -> PyResult<FieldTag> {
    field.parse::<FieldTag>().map_err(err)
}

fn tolerance(tol_rank: Option<f64>, tol_subspace: Option<f64>) -> PyResult<TolerancePolicy> {
    let tol = TolerancePolicy {
        rank_rel_eps: tol_rank.unwrap_or(1e-10),
        subspace_eq_tol: tol_subspace.unwrap_or(1e-8),
    };
    tol.validate().map_err(err)?;
    Ok(tol)
}

fn parse_matrix<T: Scalar>(rows: &[Vec<Complex<f64>>]) -> PyResult<DMatrix<T>> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut m = DMatrix::zeros(nrows, ncols);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != ncols {
            return Err(PyValueError::new_err(format!(
                "row {i} has {} entries, expected {ncols}",
                row.len()
            )));
        }
        for (j, z) in row.iter().enumerate() {
            if T::FIELD == FieldTag::Real && z.im != 0.0 {
                return Err(PyValueError::new_err(format!(
                    "complex entry at [{i}][{j}] in a real-field relation"
                )));
            }
            m[(i, j)] = T::from_re_im(z.re, z.im);
        }
    }
    Ok(m)
}

fn matrix_to_py<T: Scalar>(py: Python<'_>, m: &DMatrix<T>) -> PyResult<Py<PyAny>> {
    let rows = PyList::empty(py);
    for i in 0..m.nrows() {
        let row = PyList::empty(py);
        for j in 0..m.ncols() {
            let (re, im) = m[(i, j)].re_im();
            match T::FIELD {
                FieldTag::Real => row.append(re)?,
                FieldTag::Complex => row.append(Complex::new(re, im))?,
            }
        }
        rows.append(row)?;
    }
    Ok(rows.into_any().unbind())
}

fn check_to_py(py: Python<'_>, c: &CheckResult) -> PyResult<Py<PyAny>> {
    Ok((c.verdict, c.margin).into_pyobject(py)?.into_any().unbind())
}

#[derive(Clone)]
enum Inner {
    Real(LinearRelation<f64>),
    Complex(LinearRelation<Complex<f64>>),
}

macro_rules! with_inner {
    ($inner:expr, $r:ident => $body:expr) => {
        match $inner {
            Inner::Real($r) => $body,
            Inner::Complex($r) => $body,
        }
    };
}

/// Lift a typed relation back into the dynamic wrapper.
trait IntoInner: Scalar {
    fn wrap(rel: LinearRelation<Self>) -> Inner;
}

impl IntoInner for f64 {
    fn wrap(rel: LinearRelation<f64>) -> Inner {
        Inner::Real(rel)
    }
}

impl IntoInner for Complex<f64> {
    fn wrap(rel: LinearRelation<Complex<f64>>) -> Inner {
        Inner::Complex(rel)
    }
}

/// A linear relation between finite-dimensional spaces H and K: a subspace
/// of H × K represented by an orthonormal graph basis.
#[pyclass(skip_from_py_object)]
#[derive(Clone)]
struct Relation {
    inner: Inner,
    tol: TolerancePolicy,
}

impl Relation {
    fn new(inner: Inner) -> Self {
        Relation {
            inner,
            tol: TolerancePolicy::default(),
        }
    }

    fn same_field<'a>(&self, other: &'a Relation, what: &str) -> PyResult<&'a Relation> {
        let ok = matches!(
            (&self.inner, &other.inner),
            (Inner::Real(_), Inner::Real(_)) | (Inner::Complex(_), Inner::Complex(_))
        );
        if ok {
            Ok(other)
        } else {
            Err(PyValueError::new_err(format!(
                "{what}: relations live over different scalar fields"
            )))
        }
    }
}

fn build_operator<T: Scalar + IntoInner>(
    matrix: &[Vec<Complex<f64>>],
    domain_basis: Option<&Vec<Vec<Complex<f64>>>>,
    tol: &TolerancePolicy,
) -> PyResult<Inner> {
    let m = parse_matrix::<T>(matrix)?;
    let domain = match domain_basis {
        None => None,
        Some(db) => {
            let spanners = parse_matrix::<T>(db)?;
            if spanners.nrows() != m.ncols() {
                return Err(PyValueError::new_err(format!(
                    "domain basis needs {} rows, got {}",
                    m.ncols(),
                    spanners.nrows()
                )));
            }
            Some(subspace::orthonormal_basis(&spanners, tol))
        }
    };
    LinearRelation::from_operator(&OperatorSpec { matrix: m, domain }, tol)
        .map(T::wrap)
        .map_err(err)
}

fn build_spanners<T: Scalar + IntoInner>(
    h_dim: usize,
    k_dim: usize,
    spanners: &[Vec<Complex<f64>>],
    tol: &TolerancePolicy,
) -> PyResult<Inner> {
    let m = parse_matrix::<T>(spanners)?;
    LinearRelation::from_spanners(h_dim, k_dim, &m, tol)
        .map(T::wrap)
        .map_err(err)
}

#[pymethods]
impl Relation {
    /// Operator with the given (k_dim × h_dim) matrix, optionally restricted
    /// to the span of the domain_basis columns.
    #[staticmethod]
    #[pyo3(signature = (matrix, domain_basis=None, field="real"))]
    fn from_matrix(
        matrix: Vec<Vec<Complex<f64>>>,
        domain_basis: Option<Vec<Vec<Complex<f64>>>>,
        field: &str,
    ) -> PyResult<Relation> {
        let tol = TolerancePolicy::default();
        let inner = match parse_field(field)? {
            FieldTag::Real => build_operator::<f64>(&matrix, domain_basis.as_ref(), &tol)?,
            FieldTag::Complex => {
                build_operator::<Complex<f64>>(&matrix, domain_basis.as_ref(), &tol)?
            }
        };
        Ok(Relation::new(inner))
    }

    /// Relation spanned by columns of length h_dim + k_dim (H block first).
    #[staticmethod]
    #[pyo3(signature = (h_dim, k_dim, spanners, field="real"))]
    fn from_spanners(
        h_dim: usize,
        k_dim: usize,
        spanners: Vec<Vec<Complex<f64>>>,
        field: &str,
    ) -> PyResult<Relation> {
        let tol = TolerancePolicy::default();
        let inner = match parse_field(field)? {
            FieldTag::Real => build_spanners::<f64>(h_dim, k_dim, &spanners, &tol)?,
            FieldTag::Complex => build_spanners::<Complex<f64>>(h_dim, k_dim, &spanners, &tol)?,
        };
        Ok(Relation::new(inner))
    }

    #[staticmethod]
    #[pyo3(signature = (n, field="real"))]
    fn identity(n: usize, field: &str) -> PyResult<Relation> {
        let inner = match parse_field(field)? {
            FieldTag::Real => Inner::Real(LinearRelation::identity(n)),
            FieldTag::Complex => Inner::Complex(LinearRelation::identity(n)),
        };
        Ok(Relation::new(inner))
    }

    #[getter]
    fn h_dim(&self) -> usize {
        with_inner!(&self.inner, r => r.h_dim())
    }

    #[getter]
    fn k_dim(&self) -> usize {
        with_inner!(&self.inner, r => r.k_dim())
    }

    #[getter]
    fn graph_dim(&self) -> usize {
        with_inner!(&self.inner, r => r.graph_dim())
    }

    #[getter]
    fn field(&self) -> &'static str {
        match &self.inner {
            Inner::Real(_) => "real",
            Inner::Complex(_) => "complex",
        }
    }

    fn graph_basis(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        with_inner!(&self.inner, r => matrix_to_py(py, r.graph().basis()))
    }

    fn adjoint(&self) -> Relation {
        let inner = match &self.inner {
            Inner::Real(r) => Inner::Real(r.adjoint(&self.tol)),
            Inner::Complex(r) => Inner::Complex(r.adjoint(&self.tol)),
        };
        Relation::new(inner)
    }

    fn inverse(&self) -> Relation {
        let inner = match &self.inner {
            Inner::Real(r) => Inner::Real(r.inverse()),
            Inner::Complex(r) => Inner::Complex(r.inverse()),
        };
        Relation::new(inner)
    }

    fn neg(&self) -> Relation {
        let inner = match &self.inner {
            Inner::Real(r) => Inner::Real(r.neg()),
            Inner::Complex(r) => Inner::Complex(r.neg()),
        };
        Relation::new(inner)
    }

    /// self ∘ inner.
    fn compose(&self, inner: &Relation) -> PyResult<Relation> {
        self.same_field(inner, "compose")?;
        let combined = match (&self.inner, &inner.inner) {
            (Inner::Real(a), Inner::Real(b)) => Inner::Real(a.compose(b, &self.tol).map_err(err)?),
            (Inner::Complex(a), Inner::Complex(b)) => {
                Inner::Complex(a.compose(b, &self.tol).map_err(err)?)
            }
            _ => unreachable!("fields checked above"),
        };
        Ok(Relation::new(combined))
    }

    fn intersect(&self, other: &Relation) -> PyResult<Relation> {
        self.same_field(other, "intersect")?;
        let combined = match (&self.inner, &other.inner) {
            (Inner::Real(a), Inner::Real(b)) => {
                Inner::Real(a.intersect(b, &self.tol).map_err(err)?)
            }
            (Inner::Complex(a), Inner::Complex(b)) => {
                Inner::Complex(a.intersect(b, &self.tol).map_err(err)?)
            }
            _ => unreachable!("fields checked above"),
        };
        Ok(Relation::new(combined))
    }

    fn vee(&self, other: &Relation) -> PyResult<Relation> {
        self.same_field(other, "vee")?;
        let combined = match (&self.inner, &other.inner) {
            (Inner::Real(a), Inner::Real(b)) => Inner::Real(a.vee(b, &self.tol).map_err(err)?),
            (Inner::Complex(a), Inner::Complex(b)) => {
                Inner::Complex(a.vee(b, &self.tol).map_err(err)?)
            }
            _ => unreachable!("fields checked above"),
        };
        Ok(Relation::new(combined))
    }

    /// R + λ·I on a square relation.
    fn add_scalar(&self, lam: Complex<f64>) -> PyResult<Relation> {
        let inner = match &self.inner {
            Inner::Real(r) => {
                if lam.im != 0.0 {
                    return Err(PyValueError::new_err("complex shift on a real relation"));
                }
                Inner::Real(r.add_scalar(lam.re, &self.tol).map_err(err)?)
            }
            Inner::Complex(r) => Inner::Complex(r.add_scalar(lam, &self.tol).map_err(err)?),
        };
        Ok(Relation::new(inner))
    }

    /// Dimensions of domain, range, kernel and multivalued part.
    fn parts(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let dict = pyo3::types::PyDict::new(py);
        with_inner!(&self.inner, r => {
            let parts = r.parts(&self.tol);
            dict.set_item("dom", parts.dom.dim())?;
            dict.set_item("ran", parts.ran.dim())?;
            dict.set_item("ker", parts.ker.dim())?;
            dict.set_item("mul", parts.mul.dim())?;
        });
        Ok(dict.into_any().unbind())
    }

    /// (verdict, margin) of the multivalued part being trivial.
    fn is_operator(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        with_inner!(&self.inner, r => check_to_py(py, &r.is_operator(&self.tol)))
    }

    fn is_everywhere_defined(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        with_inner!(&self.inner, r => check_to_py(py, &r.is_everywhere_defined(&self.tol)))
    }

    fn is_surjective(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        with_inner!(&self.inner, r => check_to_py(py, &r.is_surjective(&self.tol)))
    }

    fn is_symmetric(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        with_inner!(&self.inner, r => {
            let c = r.is_symmetric(&self.tol).map_err(err)?;
            check_to_py(py, &c)
        })
    }

    /// Matrix of an everywhere-defined operator.
    fn to_matrix(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        with_inner!(&self.inner, r => {
            let m = r.to_matrix(&self.tol).map_err(err)?;
            matrix_to_py(py, &m)
        })
    }

    fn __repr__(&self) -> String {
        format!(
            "Relation(field={}, h_dim={}, k_dim={}, graph_dim={})",
            self.field(),
            self.h_dim(),
            self.k_dim(),
            self.graph_dim()
        )
    }
}

/// Maximal violation of <Sx, y> = <x, Ty> over unit vectors.
#[pyfunction]
fn pairing_defect(s: &Relation, t: &Relation) -> PyResult<f64> {
    s.same_field(t, "pairing_defect")?;
    match (&s.inner, &t.inner) {
        (Inner::Real(a), Inner::Real(b)) => {
            linrel::relation::pairing_defect(a, b, &s.tol).map_err(err)
        }
        (Inner::Complex(a), Inner::Complex(b)) => {
            linrel::relation::pairing_defect(a, b, &s.tol).map_err(err)
        }
        _ => unreachable!(),
    }
}

/// (verdict, margin): S* = T and T* = S with both everywhere defined.
#[pyfunction]
fn oracle_mutually_adjoint(py: Python<'_>, s: &Relation, t: &Relation) -> PyResult<Py<PyAny>> {
    s.same_field(t, "oracle_mutually_adjoint")?;
    let c = match (&s.inner, &t.inner) {
        (Inner::Real(a), Inner::Real(b)) => {
            linrel::characterize::oracle_mutually_adjoint(a, b, &s.tol)
        }
        (Inner::Complex(a), Inner::Complex(b)) => {
            linrel::characterize::oracle_mutually_adjoint(a, b, &s.tol)
        }
        _ => unreachable!(),
    };
    check_to_py(py, &c)
}

/// Run one registered criterion; returns the full report as a JSON string.
#[pyfunction]
#[pyo3(signature = (criterion, s, t=None, grid=None, tol_rank=None, tol_subspace=None))]
fn check(
    criterion: &str,
    s: &Relation,
    t: Option<&Relation>,
    grid: Option<Vec<f64>>,
    tol_rank: Option<f64>,
    tol_subspace: Option<f64>,
) -> PyResult<String> {
    let id = TheoremId::parse(criterion).map_err(err)?;
    let tol = tolerance(tol_rank, tol_subspace)?;
    let grid = grid.unwrap_or_else(resolvent::default_grid);
    if let Some(t) = t {
        s.same_field(t, "check")?;
    }
    let body = match &s.inner {
        Inner::Real(sr) => {
            let tr = match t {
                Some(Relation {
                    inner: Inner::Real(tr),
                    ..
                }) => Some(tr),
                _ => None,
            };
            verify::run_check(id, sr, tr, &grid, &tol).map_err(err)?
        }
        Inner::Complex(sr) => {
            let tr = match t {
                Some(Relation {
                    inner: Inner::Complex(tr),
                    ..
                }) => Some(tr),
                _ => None,
            };
            verify::run_check(id, sr, tr, &grid, &tol).map_err(err)?
        }
    };
    serde_json::to_string(&body).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// ‖R_{S,T}(t)‖ for a nonzero real t in the resolvent set.
#[pyfunction]
fn resolvent_norm(s: &Relation, t: &Relation, t_val: f64) -> PyResult<f64> {
    s.same_field(t, "resolvent_norm")?;
    match (&s.inner, &t.inner) {
        (Inner::Real(a), Inner::Real(b)) => {
            resolvent::resolvent_norm(a, b, t_val, &s.tol).map_err(err)
        }
        (Inner::Complex(a), Inner::Complex(b)) => {
            resolvent::resolvent_norm(a, b, t_val, &s.tol).map_err(err)
        }
        _ => unreachable!(),
    }
}

/// (verdict, margin) of t belonging to the resolvent set of M_{S,T}.
#[pyfunction]
fn in_resolvent_set(py: Python<'_>, s: &Relation, t: &Relation, t_val: f64) -> PyResult<Py<PyAny>> {
    s.same_field(t, "in_resolvent_set")?;
    let c = match (&s.inner, &t.inner) {
        (Inner::Real(a), Inner::Real(b)) => {
            resolvent::in_resolvent_set(a, b, t_val, &s.tol).map_err(err)?
        }
        (Inner::Complex(a), Inner::Complex(b)) => {
            resolvent::in_resolvent_set(a, b, t_val, &s.tol).map_err(err)?
        }
        _ => unreachable!(),
    };
    check_to_py(py, &c)
}

/// The default probe grid {±2^k : k = −3..3}.
#[pyfunction]
fn default_grid() -> Vec<f64> {
    resolvent::default_grid()
}

/// Run a randomized verification campaign; returns the summary as JSON.
#[pyfunction]
#[pyo3(signature = (theorem, trials=100, seed=0, field="real", dim_max=6))]
fn verify_theorem(
    theorem: &str,
    trials: usize,
    seed: u64,
    field: &str,
    dim_max: usize,
) -> PyResult<String> {
    let cc = CampaignConfig {
        theorem: TheoremId::parse(theorem).map_err(err)?,
        trials,
        seed,
        field: parse_field(field)?,
        max_dim: dim_max,
        grid: None,
        tol: TolerancePolicy::default(),
    };
    let summary = verify::run_campaign(&cc).map_err(err)?;
    serde_json::to_string(&summary).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn gen_cfg(seed: u64, field: FieldTag) -> generate::GenConfig {
    generate::GenConfig::new(seed, field)
}

/// Seeded mutually adjoint pair: a random total matrix and its conjugate
/// transpose.
#[pyfunction]
#[pyo3(signature = (seed, h_dim, k_dim, field="real"))]
fn random_adjoint_pair(
    seed: u64,
    h_dim: usize,
    k_dim: usize,
    field: &str,
) -> PyResult<(Relation, Relation)> {
    let tol = TolerancePolicy::default();
    match parse_field(field)? {
        FieldTag::Real => {
            let (s, t) =
                generate::random_adjoint_pair::<f64>(&gen_cfg(seed, FieldTag::Real), h_dim, k_dim, &tol)
                    .map_err(err)?;
            Ok((Relation::new(Inner::Real(s)), Relation::new(Inner::Real(t))))
        }
        FieldTag::Complex => {
            let (s, t) = generate::random_adjoint_pair::<Complex<f64>>(
                &gen_cfg(seed, FieldTag::Complex),
                h_dim,
                k_dim,
                &tol,
            )
            .map_err(err)?;
            Ok((
                Relation::new(Inner::Complex(s)),
                Relation::new(Inner::Complex(t)),
            ))
        }
    }
}

/// Seeded random operator on a random domain of the given dimension.
#[pyfunction]
#[pyo3(signature = (seed, h_dim, k_dim, domain_dim, field="real"))]
fn random_operator(
    seed: u64,
    h_dim: usize,
    k_dim: usize,
    domain_dim: usize,
    field: &str,
) -> PyResult<Relation> {
    let tol = TolerancePolicy::default();
    let inner = match parse_field(field)? {
        FieldTag::Real => Inner::Real(
            generate::random_operator::<f64>(
                &gen_cfg(seed, FieldTag::Real),
                h_dim,
                k_dim,
                domain_dim,
                &tol,
            )
            .map_err(err)?,
        ),
        FieldTag::Complex => Inner::Complex(
            generate::random_operator::<Complex<f64>>(
                &gen_cfg(seed, FieldTag::Complex),
                h_dim,
                k_dim,
                domain_dim,
                &tol,
            )
            .map_err(err)?,
        ),
    };
    Ok(Relation::new(inner))
}

/// T′ = T + δ·E for a random unit-norm E; returns (S, T′, defect/δ).
#[pyfunction]
fn perturb_pairing(
    seed: u64,
    s: &Relation,
    t: &Relation,
    delta: f64,
) -> PyResult<(Relation, Relation, f64)> {
    s.same_field(t, "perturb_pairing")?;
    match (&s.inner, &t.inner) {
        (Inner::Real(a), Inner::Real(b)) => {
            let p = generate::perturb_pairing(&gen_cfg(seed, FieldTag::Real), a, b, delta, &s.tol)
                .map_err(err)?;
            Ok((
                Relation::new(Inner::Real(p.s)),
                Relation::new(Inner::Real(p.t)),
                p.defect_ratio,
            ))
        }
        (Inner::Complex(a), Inner::Complex(b)) => {
            let p =
                generate::perturb_pairing(&gen_cfg(seed, FieldTag::Complex), a, b, delta, &s.tol)
                    .map_err(err)?;
            Ok((
                Relation::new(Inner::Complex(p.s)),
                Relation::new(Inner::Complex(p.t)),
                p.defect_ratio,
            ))
        }
        _ => unreachable!(),
    }
}

#[pymodule]
fn linrel_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Relation>()?;
    m.add_function(wrap_pyfunction!(pairing_defect, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_mutually_adjoint, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(resolvent_norm, m)?)?;
    m.add_function(wrap_pyfunction!(in_resolvent_set, m)?)?;
    m.add_function(wrap_pyfunction!(default_grid, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorem, m)?)?;
    m.add_function(wrap_pyfunction!(random_adjoint_pair, m)?)?;
    m.add_function(wrap_pyfunction!(random_operator, m)?)?;
    m.add_function(wrap_pyfunction!(perturb_pairing, m)?)?;
    Ok(())
}
