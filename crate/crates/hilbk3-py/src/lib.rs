//! Python bindings: exact `q`-series, the quasi-Jacobi generators and fits, the WDVV
//! solver, `E^Hilb` brackets on Fock space and the assembled Gromov–Witten tables.
//!
//! Rational numbers cross the boundary as `fractions.Fraction`, big integers as `int`.

use hilbk3::coeff::{json, Gq, QSeries};
use hilbk3::fock::nakajima::parse_monomial;
use hilbk3::fock::{ehilb_bracket, Engine, Evaluator, SurfaceModel};
use hilbk3::gw::{self, GWTable, HypTable, Theorem};
use hilbk3::jacobi::{self, GeneratorName, QJacFit};
use hilbk3::report::Report;
use hilbk3::wdvv::{self, CoeffTable, Pot};
use num_bigint::BigInt;
use num_rational::BigRational;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use std::collections::BTreeMap;

fn err(e: hilbk3::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn gq_pair(c: &Gq) -> (BigRational, BigRational) {
    (c.re.clone(), c.im.clone())
}

fn report_rows(r: Report) -> Vec<(String, bool, String)> {
    r.checks.into_iter().map(|c| (c.name, c.ok, c.detail)).collect()
}

/// A truncated `q`-series whose coefficients are rational functions of `s = (−y)^{1/2}`.
#[pyclass(name = "QSeries", module = "hilbk3", frozen)]
pub struct PyQSeries {
    inner: QSeries,
}

impl From<QSeries> for PyQSeries {
    fn from(inner: QSeries) -> Self {
        PyQSeries { inner }
    }
}

#[pymethods]
impl PyQSeries {
    /// Lowest stored power of `q`.
    #[getter]
    fn q_min(&self) -> i64 {
        self.inner.q_min()
    }

    /// Highest power of `q` that is known.
    #[getter]
    fn q_max(&self) -> i64 {
        self.inner.q_max()
    }

    /// True if every coefficient is a Laurent polynomial in `s`.
    fn is_laurent(&self) -> bool {
        self.inner.is_laurent()
    }

    /// The `q^n` coefficient as `{e: (re, im)}` over powers `s^e`; fails for rational rows.
    fn row(&self, n: i64) -> PyResult<BTreeMap<i64, (BigRational, BigRational)>> {
        let r = self.inner.try_coeff(n).ok_or_else(|| PyValueError::new_err(format!("q^{n} is beyond the precision")))?;
        let l = r.as_laurent().ok_or_else(|| PyValueError::new_err(format!("q^{n} coefficient {r} is not a Laurent polynomial")))?;
        Ok(l.terms().map(|(e, c)| (e, gq_pair(c))).collect())
    }

    /// The `q^n` coefficient as text.
    fn row_str(&self, n: i64) -> PyResult<String> {
        self.inner.try_coeff(n).map(|r| r.to_string()).ok_or_else(|| PyValueError::new_err(format!("q^{n} is beyond the precision")))
    }

    /// `q d/dq`.
    fn dq(&self) -> Self {
        self.inner.dq().into()
    }

    /// `y d/dy`.
    fn dz(&self) -> Self {
        self.inner.dz().into()
    }

    /// Drops every power above `q^n`.
    fn truncate(&self, n: i64) -> Self {
        self.inner.truncate(n).into()
    }

    /// The multiplicative inverse.
    fn invert(&self) -> PyResult<Self> {
        self.inner.invert().map(Into::into).map_err(err)
    }

    /// The JSON encoding shared with the command-line tool.
    fn to_json(&self) -> String {
        json::to_json(&self.inner).to_string()
    }

    /// Reads the JSON encoding.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let v: serde_json::Value = serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        json::from_json(&v).map(Into::into).map_err(err)
    }

    fn __add__(&self, o: &Self) -> Self {
        self.inner.add(&o.inner).into()
    }

    fn __sub__(&self, o: &Self) -> Self {
        self.inner.sub(&o.inner).into()
    }

    fn __mul__(&self, o: &Self) -> Self {
        self.inner.mul(&o.inner).into()
    }

    fn __neg__(&self) -> Self {
        self.inner.neg().into()
    }

    fn __eq__(&self, o: &Self) -> bool {
        self.inner == o.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("QSeries(q_min={}, q_max={})", self.inner.q_min(), self.inner.q_max())
    }
}

/// The series of a named generator (`F`, `wp`, `E4`, `Delta`, ...) through `q^{q_max}`.
#[pyfunction]
fn series(name: &str, q_max: i64) -> PyResult<PyQSeries> {
    let g: GeneratorName = name.parse().map_err(err)?;
    Ok(jacobi::series(g, q_max).into())
}

/// A quasi-Jacobi form recovered from its expansion.
#[pyclass(name = "QJacFit", module = "hilbk3", frozen)]
pub struct PyQJacFit {
    inner: QJacFit,
}

#[pymethods]
impl PyQJacFit {
    /// The weight, when homogeneous.
    #[getter]
    fn weight(&self) -> Option<i64> {
        self.inner.weight
    }

    /// Twice the index.
    #[getter]
    fn index2(&self) -> i64 {
        self.inner.index2
    }

    /// Highest `q`-order used for the coefficients.
    #[getter]
    fn fit_through(&self) -> i64 {
        self.inner.fit_through
    }

    /// Highest `q`-order checked on held-out data.
    #[getter]
    fn verified_through(&self) -> i64 {
        self.inner.verified_through
    }

    /// No negative powers of `w` at `z = 0`.
    #[getter]
    fn holomorphic(&self) -> bool {
        self.inner.holomorphic
    }

    /// `(monomial, (re, im))` for each nonzero term.
    #[getter]
    fn terms(&self) -> Vec<(String, (BigRational, BigRational))> {
        self.inner.terms.iter().map(|(m, c)| (m.to_string(), gq_pair(c))).collect()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

/// Fits `target` as `F^{index2}` times a polynomial in the generators of weight at most `weight_max`.
#[pyfunction]
#[pyo3(signature = (target, weight_max, index2, w_order = None))]
fn fit(target: &PyQSeries, weight_max: i64, index2: i64, w_order: Option<i64>) -> PyResult<PyQJacFit> {
    let r = match w_order {
        Some(w) => jacobi::qjac_fit_with(&target.inner, weight_max, index2, w),
        None => jacobi::qjac_fit(&target.inner, weight_max, index2),
    };
    r.map(|inner| PyQJacFit { inner }).map_err(err)
}

/// Coefficients of the potentials `H`, `I`, `T`.
#[pyclass(name = "CoeffTable", module = "hilbk3", frozen)]
pub struct PyCoeffTable {
    inner: CoeffTable,
}

fn parse_pot(p: &str) -> PyResult<Pot> {
    match p {
        "H" => Ok(Pot::H),
        "I" => Ok(Pot::I),
        "T" => Ok(Pot::T),
        _ => Err(PyValueError::new_err(format!("unknown potential {p:?}; expected H, I or T"))),
    }
}

#[pymethods]
impl PyCoeffTable {
    /// The coefficient of `q^d y^k` in potential `pot`, if determined.
    fn get(&self, pot: &str, d: i64, k: i64) -> PyResult<Option<BigRational>> {
        Ok(self.inner.get(parse_pot(pot)?, d, k))
    }

    /// The potential as a series.
    fn series(&self, pot: &str) -> PyResult<PyQSeries> {
        Ok(self.inner.to_series(parse_pot(pot)?).into())
    }

    /// The table as CSV.
    fn to_csv(&self) -> String {
        self.inner.to_csv()
    }

    /// The table as JSON.
    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    /// Runs the residual and closed-form checks: `[(name, ok, detail)]`.
    fn verify(&self) -> Vec<(String, bool, String)> {
        report_rows(wdvv::verify_all(&self.inner))
    }
}

/// Solves the WDVV recursion through `q^{q_max}`.
#[pyfunction]
#[pyo3(signature = (q_max, k_window = 14))]
fn wdvv_solve(q_max: i64, k_window: i64) -> PyResult<PyCoeffTable> {
    wdvv::solve(q_max, k_window).map(|inner| PyCoeffTable { inner }).map_err(err)
}

/// A lattice model of the surface cohomology.
#[pyclass(name = "SurfaceModel", module = "hilbk3", frozen)]
pub struct PySurfaceModel {
    inner: SurfaceModel,
}

#[pymethods]
impl PySurfaceModel {
    /// Looks a model up by name (`k3-rank24` or `small`).
    #[new]
    #[pyo3(signature = (name = "k3-rank24"))]
    fn new(name: &str) -> PyResult<Self> {
        SurfaceModel::by_name(name).map(|inner| PySurfaceModel { inner }).map_err(err)
    }

    /// Model name.
    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    /// Rank of the total cohomology.
    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    /// Names of the basis classes.
    #[getter]
    fn class_names(&self) -> Vec<String> {
        (0..self.inner.rank()).map(|i| self.inner.class_name(i).to_string()).collect()
    }

    /// The intersection pairing of two classes given as text, e.g. `"B+F"`.
    fn pair(&self, a: &str, b: &str) -> PyResult<BigRational> {
        let a = self.inner.parse_class(a).map_err(err)?;
        let b = self.inner.parse_class(b).map_err(err)?;
        Ok(self.inner.pair(&a, &b))
    }

    fn __repr__(&self) -> String {
        format!("SurfaceModel({:?})", self.inner.name())
    }
}

/// Evaluates `E^Hilb` brackets `⟨μ, ν⟩_q` on a fixed model to a fixed `q`-order.
#[pyclass(name = "Hilb", module = "hilbk3", frozen)]
pub struct PyHilb {
    engine: Engine,
    eval: Evaluator,
}

#[pymethods]
impl PyHilb {
    /// Builds the operator engine for `model` and series through `q^{q_max}`.
    #[new]
    #[pyo3(signature = (model = "k3-rank24", q_max = 3))]
    fn new(model: &str, q_max: i64) -> PyResult<Self> {
        let m = SurfaceModel::by_name(model).map_err(err)?;
        Ok(PyHilb { engine: Engine::new(m), eval: Evaluator::new(q_max).map_err(err)? })
    }

    /// The surface model.
    #[getter]
    fn model(&self) -> PySurfaceModel {
        PySurfaceModel { inner: self.engine.model().clone() }
    }

    /// Precision of the returned series.
    #[getter]
    fn q_max(&self) -> i64 {
        self.eval.q_max()
    }

    /// `⟨μ, ν⟩_q` for monomials written like `"p(-2,w) p(-1,F) 1"`.
    fn bracket(&self, py: Python<'_>, mu: &str, nu: &str) -> PyResult<PyQSeries> {
        let model = self.engine.model();
        let mu = parse_monomial(model, mu).map_err(err)?;
        let nu = parse_monomial(model, nu).map_err(err)?;
        py.detach(|| ehilb_bracket(&self.engine, &self.eval, &mu, &nu)).map(Into::into).map_err(err)
    }
}

/// Genus-zero hyperelliptic invariants `H_{g,h}` and BPS counts `h_{g,h}`.
#[pyclass(name = "HypTable", module = "hilbk3", frozen)]
pub struct PyHypTable {
    inner: HypTable,
}

#[pymethods]
impl PyHypTable {
    /// `H_{g,h}`.
    fn virtual_count(&self, g: i64, h: i64) -> BigRational {
        self.inner.virtual_count(g, h)
    }

    /// `h_{g,h}`.
    fn bps(&self, g: i64, h: i64) -> BigRational {
        self.inner.bps(g, h)
    }

    /// BPS counts as CSV.
    fn to_csv(&self) -> String {
        self.inner.to_csv()
    }

    /// Checks against the printed table: `[(name, ok, detail)]`.
    fn verify(&self) -> Vec<(String, bool, String)> {
        report_rows(gw::verify_hyperelliptic(&self.inner))
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

/// Hyperelliptic tables for `h ≤ h_max`, `g ≤ g_max`.
#[pyfunction]
#[pyo3(signature = (h_max, g_max = 6))]
fn hyperelliptic_table(h_max: i64, g_max: i64) -> PyResult<PyHypTable> {
    gw::hyperelliptic_tables(h_max, g_max).map(|inner| PyHypTable { inner }).map_err(err)
}

/// Invariants read off an assembled series, indexed by `(h, k)` for `q^{h−1} y^k`.
#[pyclass(name = "GWTable", module = "hilbk3", frozen)]
pub struct PyGWTable {
    inner: GWTable,
}

#[pymethods]
impl PyGWTable {
    /// The entry at `(h, k)`.
    fn get(&self, h: i64, k: i64) -> BigRational {
        self.inner.get(h, k)
    }

    /// Nonzero entries.
    fn entries(&self) -> BTreeMap<(i64, i64), BigRational> {
        self.inner.rows.clone()
    }

    /// The table as CSV.
    fn to_csv(&self) -> String {
        self.inner.to_csv()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

fn parse_theorem(kind: &str, d: u32) -> PyResult<Theorem> {
    Ok(match kind {
        "fibers" => Theorem::Fibers(d),
        "curve" => Theorem::CurveClass(d),
        "a-class" => Theorem::AClass(d),
        "incidence" => Theorem::Incidence(d),
        "fiber-incidence" => Theorem::FiberIncidence,
        _ => {
            return Err(PyValueError::new_err(format!(
                "unknown series {kind:?}; expected fibers, curve, a-class, incidence or fiber-incidence"
            )))
        }
    })
}

/// The closed-form series `kind` for `Hilb^d` through `q^{q_max}`.
#[pyfunction]
fn gw_series(kind: &str, d: u32, q_max: i64) -> PyResult<PyQSeries> {
    gw::theorem_qseries(parse_theorem(kind, d)?, q_max).map(Into::into).map_err(err)
}

/// The series `kind` for `Hilb^d` as a table of invariants.
#[pyfunction]
fn gw_table(kind: &str, d: u32, q_max: i64) -> PyResult<PyGWTable> {
    gw::theorem_series(parse_theorem(kind, d)?, q_max).map(|inner| PyGWTable { inner }).map_err(err)
}

/// Genus-zero counts of rational curves on a K3 surface, `[n_0, ..., n_{h_max}]`.
#[pyfunction]
fn yau_zaslow(h_max: usize) -> Vec<BigInt> {
    gw::yau_zaslow(h_max)
}

/// Theta-function identities through `q^{q_max}`: `[(name, ok, detail)]`.
#[pyfunction]
fn verify_theta_identities(q_max: i64) -> Vec<(String, bool, String)> {
    report_rows(jacobi::verify_theta_identities(q_max))
}

/// Differential identities of the generators through `q^{q_max}`: `[(name, ok, detail)]`.
#[pyfunction]
fn verify_differential_identities(q_max: i64) -> Vec<(String, bool, String)> {
    report_rows(jacobi::verify_differential_identities(q_max))
}

/// The Python module.
#[pymodule(name = "hilbk3")]
pub fn hilbk3_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyQSeries>()?;
    m.add_class::<PyQJacFit>()?;
    m.add_class::<PyCoeffTable>()?;
    m.add_class::<PySurfaceModel>()?;
    m.add_class::<PyHilb>()?;
    m.add_class::<PyHypTable>()?;
    m.add_class::<PyGWTable>()?;
    m.add_function(wrap_pyfunction!(series, m)?)?;
    m.add_function(wrap_pyfunction!(fit, m)?)?;
    m.add_function(wrap_pyfunction!(wdvv_solve, m)?)?;
    m.add_function(wrap_pyfunction!(hyperelliptic_table, m)?)?;
    m.add_function(wrap_pyfunction!(gw_series, m)?)?;
    m.add_function(wrap_pyfunction!(gw_table, m)?)?;
    m.add_function(wrap_pyfunction!(yau_zaslow, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theta_identities, m)?)?;
    m.add_function(wrap_pyfunction!(verify_differential_identities, m)?)?;
    Ok(())
}
