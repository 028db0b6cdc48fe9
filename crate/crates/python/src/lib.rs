use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use dtoric_core::dephasing::{self, LogicalFrame, NoiseKind, NoiseModel, ObservableRecord};
use dtoric_core::engine::{self, DistanceOutcome, StabilizerGroup, VerifyOptions};
use dtoric_core::lattice::{self, BuildTarget};
use dtoric_core::{CodeSpec, LogicalPair, PauliOperator};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn noise(kind: &str, gamma: f64, convention: f64) -> PyResult<NoiseModel> {
    let kind: NoiseKind = kind.parse().map_err(err)?;
    NoiseModel::with_convention(kind, gamma, convention).map_err(err)
}

fn record_dict<'py>(py: Python<'py>, r: &ObservableRecord) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("t", r.t)?;
    for (name, v) in ObservableRecord::NAMES.iter().zip(r.values()) {
        d.set_item(*name, v)?;
    }
    Ok(d)
}

fn json_value<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

/// An n-qubit Pauli operator with a phase in {1, i, -1, -i}.
#[pyclass(name = "Pauli", module = "dtoric", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPauli(PauliOperator);

#[pymethods]
impl PyPauli {
    #[new]
    fn new(text: &str, n: usize) -> PyResult<Self> {
        PauliOperator::parse(text, n).map(Self).map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (n, x, z, phase = 0))]
    fn from_masks(n: usize, x: u64, z: u64, phase: u8) -> PyResult<Self> {
        PauliOperator::from_masks(n, x, z, phase).map(Self).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn x_mask(&self) -> u64 {
        self.0.x_mask()
    }

    #[getter]
    fn z_mask(&self) -> u64 {
        self.0.z_mask()
    }

    #[getter]
    fn weight(&self) -> usize {
        self.0.weight()
    }

    /// 1-based qubit indices where the operator acts nontrivially.
    fn support(&self) -> Vec<usize> {
        let s = self.0.support();
        (0..self.0.n()).filter(|q| s >> q & 1 == 1).map(|q| q + 1).collect()
    }

    fn is_hermitian(&self) -> bool {
        self.0.is_hermitian()
    }

    fn commutes(&self, other: &PyPauli) -> PyResult<bool> {
        self.0.commutes(&other.0).map_err(err)
    }

    fn __mul__(&self, other: &PyPauli) -> PyResult<Self> {
        self.0.multiply(&other.0).map(Self).map_err(err)
    }

    fn __eq__(&self, other: &PyPauli) -> bool {
        self.0 == other.0
    }

    fn __hash__(&self) -> u64 {
        let (n, x, z, p) = (self.0.n() as u64, self.0.x_mask(), self.0.z_mask(), self.0.phase() as u64);
        x.rotate_left(17) ^ z.rotate_left(41) ^ (n << 2) ^ p
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Pauli('{}', {})", self.0, self.0.n())
    }
}

/// A stabilizer code with optional logical pairs, declared parameters and layout.
#[pyclass(name = "Code", module = "dtoric", frozen)]
struct PyCode(CodeSpec);

impl PyCode {
    fn pairs(&self) -> PyResult<Vec<LogicalPair>> {
        match &self.0.logical_pairs {
            Some(p) => Ok(p.clone()),
            None => engine::find_logical_set(&self.0).map(|s| s.pairs).map_err(err),
        }
    }
}

#[pymethods]
impl PyCode {
    #[new]
    fn new(n: usize, stabilizers: Vec<String>) -> PyResult<Self> {
        let refs: Vec<&str> = stabilizers.iter().map(String::as_str).collect();
        CodeSpec::from_strings(n, &refs).map(Self).map_err(err)
    }

    /// `unit`, `two_horizontal`, `two_vertical`, `grid_2x2`, `grid:<p>` or `lshape:<v>,<h>[,matrix]`.
    #[staticmethod]
    fn build(target: &str) -> PyResult<Self> {
        let t: BuildTarget = target.parse().map_err(err)?;
        t.build().map(Self).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        CodeSpec::from_json(text).map(Self).map_err(err)
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n
    }

    #[getter]
    fn m(&self) -> usize {
        self.0.m()
    }

    #[getter]
    fn k(&self) -> usize {
        StabilizerGroup::new(&self.0).k()
    }

    #[getter]
    fn stabilizers(&self) -> Vec<PyPauli> {
        self.0.stabilizers.iter().copied().map(PyPauli).collect()
    }

    #[getter]
    fn logical_pairs(&self) -> Option<Vec<(PyPauli, PyPauli)>> {
        self.0.logical_pairs.as_ref().map(|ps| ps.iter().map(|p| (PyPauli(p.x), PyPauli(p.z))).collect())
    }

    /// Synthesized logical pairs `(X̄, Z̄)` of low weight.
    fn find_logical_set(&self) -> PyResult<Vec<(PyPauli, PyPauli)>> {
        let set = engine::find_logical_set(&self.0).map_err(err)?;
        Ok(set.pairs.iter().map(|p| (PyPauli(p.x), PyPauli(p.z))).collect())
    }

    /// Human-readable violations of the given pairs; empty when valid.
    fn check_logicals(&self, pairs: Vec<(PyRef<'_, PyPauli>, PyRef<'_, PyPauli>)>) -> Vec<String> {
        let pairs: Vec<LogicalPair> = pairs.iter().map(|(x, z)| LogicalPair::new(x.0, z.0)).collect();
        engine::verify_logical_set(&self.0, &pairs).violations.iter().map(|v| v.to_string()).collect()
    }

    /// `(d, witness)`, or `(None, None)` when no logical of weight ≤ `w_max` exists.
    #[pyo3(signature = (w_max = 4, method = "symplectic"))]
    fn distance(&self, w_max: usize, method: &str) -> PyResult<(Option<usize>, Option<String>)> {
        let out = match method {
            "symplectic" => engine::distance_symplectic(&self.0, w_max),
            "kl" => engine::distance_kl_oracle(&self.0, w_max),
            other => return Err(PyValueError::new_err(format!("unknown method {other:?}"))),
        }
        .map_err(err)?;
        Ok(match out {
            DistanceOutcome::Exact { distance, witness } => (Some(distance), Some(witness.to_string())),
            DistanceOutcome::Exceeds { .. } => (None, None),
        })
    }

    #[pyo3(signature = (w_max = 4, kl = false))]
    fn verify<'py>(&self, py: Python<'py>, w_max: usize, kl: bool) -> PyResult<Bound<'py, PyAny>> {
        json_value(py, &engine::verify_code(&self.0, VerifyOptions { w_max, kl }).to_json())
    }

    /// Dense amplitudes of |0…0⟩_L, indexed with qubit 1 as bit 0.
    fn codeword_zero(&self) -> PyResult<Vec<Complex64>> {
        engine::codeword_zero(&self.0).map(|s| s.into_amplitudes()).map_err(err)
    }

    /// Bloch coordinates and leakage-weighted expectations over `t_grid`.
    #[pyo3(signature = (theta, phi, kind, gamma, t_grid, convention = 1.0, pair = 1))]
    #[allow(clippy::too_many_arguments)]
    fn bloch_and_leakage<'py>(
        &self,
        py: Python<'py>,
        theta: f64,
        phi: f64,
        kind: &str,
        gamma: f64,
        t_grid: Vec<f64>,
        convention: f64,
        pair: usize,
    ) -> PyResult<Vec<Bound<'py, PyDict>>> {
        let model = noise(kind, gamma, convention)?;
        let index = pair.checked_sub(1).ok_or_else(|| PyValueError::new_err("pair is 1-based"))?;
        let records =
            dephasing::bloch_and_leakage(&self.0, &self.pairs()?, index, theta, phi, &model, &t_grid).map_err(err)?;
        records.iter().map(|r| record_dict(py, r)).collect()
    }

    /// Monte Carlo estimate at one time: `(mean, standard_error)` dictionaries.
    #[pyo3(signature = (theta, phi, kind, gamma, t, samples, seed, convention = 1.0, pair = 1))]
    #[allow(clippy::too_many_arguments)]
    fn monte_carlo<'py>(
        &self,
        py: Python<'py>,
        theta: f64,
        phi: f64,
        kind: &str,
        gamma: f64,
        t: f64,
        samples: u64,
        seed: u64,
        convention: f64,
        pair: usize,
    ) -> PyResult<(Bound<'py, PyDict>, Bound<'py, PyDict>)> {
        let model = noise(kind, gamma, convention)?;
        let index = pair.checked_sub(1).ok_or_else(|| PyValueError::new_err("pair is 1-based"))?;
        let frame = LogicalFrame::new(&self.0, &self.pairs()?, index).map_err(err)?;
        let rec =
            py.detach(|| dephasing::monte_carlo_oracle(&frame, theta, phi, &model, t, samples, seed)).map_err(err)?;
        let se = PyDict::new(py);
        for (name, v) in ObservableRecord::NAMES.iter().zip(rec.se) {
            se.set_item(*name, v)?;
        }
        Ok((record_dict(py, &rec.mean)?, se))
    }

    fn __repr__(&self) -> String {
        format!("Code(n={}, m={})", self.0.n, self.0.m())
    }
}

/// Closed-form `(n, m, k, d)` of the `p × p` grid.
#[pyfunction]
fn family_parameters(p: usize) -> PyResult<(usize, usize, usize, usize)> {
    let fp = lattice::family_parameters(p).map_err(err)?;
    Ok((fp.n, fp.m, fp.k, fp.d))
}

/// Analytic observables of the six-qubit unit cell.
#[pyfunction]
fn closed_form<'py>(
    py: Python<'py>,
    kind: &str,
    theta: f64,
    phi: f64,
    gamma: f64,
    t: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let kind: NoiseKind = kind.parse().map_err(err)?;
    record_dict(py, &dephasing::closed_form(kind, theta, phi, gamma, t))
}

#[pymodule]
fn dtoric(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPauli>()?;
    m.add_class::<PyCode>()?;
    m.add_function(wrap_pyfunction!(family_parameters, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
