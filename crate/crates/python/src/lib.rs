//! Python bindings: encodings, matrix elements, couplings, classification,
//! Stark maps and the many-spin Hamiltonian.

use ::molqubit as mq;
use ::molqubit::{EncodingSpec, InteractionKind, MultipoleElements, XxzCouplings, DEFAULT_TOL};
use nalgebra::{DMatrix, Matrix4, Vector3};
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

create_exception!(molqubit, ConvergenceError, PyRuntimeError, "Rotational basis too small for the requested state.");

fn to_py(err: mq::Error) -> PyErr {
    match err {
        mq::Error::ConvergenceFailure { .. } => ConvergenceError::new_err(err.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn kind(name: &str) -> PyResult<InteractionKind> {
    name.parse().map_err(to_py)
}

fn rows4(m: &Matrix4<f64>) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

fn rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

fn vec3(v: [f64; 3]) -> Vector3<f64> {
    Vector3::new(v[0], v[1], v[2])
}

/// Single-molecule matrix elements of one encoding.
#[pyclass(name = "Elements", from_py_object)]
#[derive(Clone)]
struct PyElements(MultipoleElements);

#[pymethods]
impl PyElements {
    #[new]
    #[pyo3(signature = (kind="dipole", diag_up=0.0, diag_down=0.0, trans_0=0.0, trans_p1=0.0, trans_m1=0.0, trans_p2=0.0, trans_m2=0.0))]
    #[allow(clippy::too_many_arguments)]
    fn new(
        kind: &str,
        diag_up: f64,
        diag_down: f64,
        trans_0: f64,
        trans_p1: f64,
        trans_m1: f64,
        trans_p2: f64,
        trans_m2: f64,
    ) -> PyResult<Self> {
        let kind = self::kind(kind)?;
        if kind == InteractionKind::Dipole && (trans_p2 != 0.0 || trans_m2 != 0.0) {
            return Err(PyValueError::new_err("dipole elements have no p = +-2 components"));
        }
        Ok(Self(MultipoleElements { kind, diag_up, diag_down, trans_0, trans_p1, trans_m1, trans_p2, trans_m2 }))
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.0.kind.as_str()
    }
    #[getter]
    fn diag_up(&self) -> f64 {
        self.0.diag_up
    }
    #[getter]
    fn diag_down(&self) -> f64 {
        self.0.diag_down
    }
    #[getter]
    fn trans_0(&self) -> f64 {
        self.0.trans_0
    }
    #[getter]
    fn trans_p1(&self) -> f64 {
        self.0.trans_p1
    }
    #[getter]
    fn trans_m1(&self) -> f64 {
        self.0.trans_m1
    }
    #[getter]
    fn trans_p2(&self) -> f64 {
        self.0.trans_p2
    }
    #[getter]
    fn trans_m2(&self) -> f64 {
        self.0.trans_m2
    }

    fn transition(&self, p: i32) -> f64 {
        self.0.transition(p)
    }

    /// Same encoding with up and down exchanged.
    fn swapped(&self) -> Self {
        Self(self.0.swapped())
    }

    fn couplings(&self) -> PyCouplings {
        PyCouplings(mq::xxz(&self.0))
    }

    /// Two-molecule Hamiltonian projected on the qubit pair, 4x4 rows.
    fn projection(&self) -> PyResult<Vec<Vec<f64>>> {
        let h = match self.0.kind {
            InteractionKind::Dipole => mq::oracle_project_dipole(&self.0),
            InteractionKind::Quadrupole => mq::oracle_project_quadrupole(&self.0),
        }
        .map_err(to_py)?;
        Ok(rows4(&h))
    }

    /// Couplings read off [`Self::projection`].
    fn projected_couplings(&self) -> PyResult<PyCouplings> {
        let h = match self.0.kind {
            InteractionKind::Dipole => mq::oracle_project_dipole(&self.0),
            InteractionKind::Quadrupole => mq::oracle_project_quadrupole(&self.0),
        }
        .map_err(to_py)?;
        Ok(PyCouplings(mq::couplings_from_projection(self.0.kind, &h)))
    }

    #[pyo3(signature = (tol=DEFAULT_TOL))]
    fn diagram_class(&self, tol: f64) -> PyResult<String> {
        Ok(mq::diagram_class(&self.0, tol).map_err(to_py)?.code().to_string())
    }

    fn __repr__(&self) -> String {
        let e = &self.0;
        format!(
            "Elements(kind={:?}, diag_up={}, diag_down={}, trans_0={}, trans_p1={}, trans_m1={}, trans_p2={}, trans_m2={})",
            e.kind.as_str(),
            e.diag_up,
            e.diag_down,
            e.trans_0,
            e.trans_p1,
            e.trans_m1,
            e.trans_p2,
            e.trans_m2
        )
    }
}

/// XXZ couplings `J_z`, `J_perp`, `W`, `V` in reduced units.
#[pyclass(name = "Couplings", from_py_object)]
#[derive(Clone)]
struct PyCouplings(XxzCouplings);

#[pymethods]
impl PyCouplings {
    #[new]
    #[pyo3(signature = (kind, j_z, j_perp, w=0.0, v=0.0))]
    fn new(kind: &str, j_z: f64, j_perp: f64, w: f64, v: f64) -> PyResult<Self> {
        Ok(Self(XxzCouplings::new(self::kind(kind)?, j_z, j_perp, w, v)))
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.0.kind.as_str()
    }
    #[getter]
    fn j_z(&self) -> f64 {
        self.0.j_z
    }
    #[getter]
    fn j_perp(&self) -> f64 {
        self.0.j_perp
    }
    #[getter]
    fn w(&self) -> f64 {
        self.0.w
    }
    #[getter]
    fn v(&self) -> f64 {
        self.0.v
    }

    /// Class code such as `"1/0"`.
    #[pyo3(signature = (tol=DEFAULT_TOL))]
    fn classify(&self, tol: f64) -> PyResult<String> {
        Ok(mq::classify(&self.0, tol).map_err(to_py)?.code().to_string())
    }

    /// 4x4 pair matrix in the basis uu, ud, du, dd.
    fn pair_matrix(&self) -> Vec<Vec<f64>> {
        rows4(&mq::xxz_pair_matrix(&self.0))
    }

    fn __repr__(&self) -> String {
        let c = &self.0;
        format!("Couplings(kind={:?}, j_z={}, j_perp={}, w={}, v={})", c.kind.as_str(), c.j_z, c.j_perp, c.w, c.v)
    }
}

/// One classified grid point.
#[pyclass(name = "Classification", frozen, skip_from_py_object)]
struct PyClassification {
    #[pyo3(get)]
    eta: f64,
    #[pyo3(get)]
    code: String,
    #[pyo3(get)]
    name: String,
    #[pyo3(get)]
    elements: PyElements,
    #[pyo3(get)]
    couplings: PyCouplings,
}

impl From<mq::Classification> for PyClassification {
    fn from(c: mq::Classification) -> Self {
        Self {
            eta: c.eta,
            code: c.class.code().to_string(),
            name: c.class.name().to_string(),
            elements: PyElements(c.elements),
            couplings: PyCouplings(c.couplings),
        }
    }
}

#[pymethods]
impl PyClassification {
    fn __repr__(&self) -> String {
        format!("Classification(eta={}, class='{} {}')", self.eta, self.code, self.name)
    }
}

/// Qubit encoding from the compact `N,M_N[,spin]:N,M_N[,spin]` grammar.
#[pyclass(name = "Encoding", frozen, skip_from_py_object)]
struct PyEncoding(EncodingSpec);

#[pymethods]
impl PyEncoding {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        Ok(Self(spec.parse().map_err(to_py)?))
    }

    fn default_n_max(&self) -> u32 {
        self.0.default_n_max()
    }

    #[pyo3(signature = (kind, eta, tol=DEFAULT_TOL, n_max=None))]
    fn classify(&self, kind: &str, eta: f64, tol: f64, n_max: Option<u32>) -> PyResult<PyClassification> {
        let c = mq::classify_encoding(&self.0, self::kind(kind)?, eta, tol, n_max).map_err(to_py)?;
        Ok(c.into())
    }

    /// Classifies every point of an ascending grid.
    #[pyo3(signature = (kind, etas, tol=DEFAULT_TOL, n_max=None))]
    fn scan(&self, kind: &str, etas: Vec<f64>, tol: f64, n_max: Option<u32>) -> PyResult<Vec<PyClassification>> {
        let rows = mq::classify_scan(&self.0, self::kind(kind)?, &etas, tol, n_max).map_err(to_py)?;
        Ok(rows.into_iter().map(Into::into).collect())
    }

    /// Intervals `(eta_start, eta_end, code)` of constant class.
    #[pyo3(signature = (kind, etas, tol=DEFAULT_TOL, n_max=None))]
    fn crossover_scan(
        &self,
        kind: &str,
        etas: Vec<f64>,
        tol: f64,
        n_max: Option<u32>,
    ) -> PyResult<Vec<(f64, f64, String)>> {
        let spans = mq::crossover_scan(&self.0, self::kind(kind)?, &etas, tol, n_max).map_err(to_py)?;
        Ok(spans.into_iter().map(|s| (s.eta_start, s.eta_end, s.class.code().to_string())).collect())
    }

    fn __repr__(&self) -> String {
        format!("Encoding('{}')", self.0)
    }
}

#[pyfunction]
fn wigner_3j(j1: u32, j2: u32, j3: u32, m1: i32, m2: i32, m3: i32) -> f64 {
    mq::wigner_3j(j1, j2, j3, m1, m2, m3)
}

/// Stark Hamiltonian block for one `M_N`, as rows.
#[pyfunction]
fn stark_block(m: i32, eta: f64, n_max: u32) -> PyResult<Vec<Vec<f64>>> {
    Ok(rows(&mq::build_stark_block(m, eta, n_max).map_err(to_py)?))
}

/// Adiabatically labelled state: `(energy, coefficients)` with coefficients
/// indexed from `N = |m|`.
#[pyfunction]
#[pyo3(signature = (label, m, eta, n_max=None))]
fn dressed_state(label: u32, m: i32, eta: f64, n_max: Option<u32>) -> PyResult<(f64, Vec<f64>)> {
    let n_max = n_max.unwrap_or_else(|| mq::default_n_max(label, m));
    let s = mq::dressed_state(label, m, eta, n_max).map_err(to_py)?;
    Ok((s.energy, s.coeffs.as_slice().to_vec()))
}

/// Rows `(eta, label, m, energy)` sorted by eta, label, m.
#[pyfunction]
#[pyo3(signature = (etas, label_max=2, n_max=None))]
fn stark_map(etas: Vec<f64>, label_max: u32, n_max: Option<u32>) -> PyResult<Vec<(f64, u32, i32, f64)>> {
    let n_max = n_max.unwrap_or_else(|| mq::default_n_max(label_max, label_max as i32));
    let levels = mq::stark_map(&etas, label_max, n_max).map_err(to_py)?;
    Ok(levels.into_iter().map(|l| (l.eta, l.label, l.m, l.energy)).collect())
}

#[pyfunction]
fn geometric_prefactor(kind: &str, theta: f64, r: f64) -> PyResult<f64> {
    mq::geometric_prefactor(self::kind(kind)?, theta, r).map_err(to_py)
}

/// Dense many-spin Hamiltonian for molecules at `positions`.
#[pyfunction]
#[pyo3(signature = (positions, couplings, axis=[0.0, 0.0, 1.0]))]
fn lattice_hamiltonian(positions: Vec<[f64; 3]>, couplings: PyCouplings, axis: [f64; 3]) -> PyResult<Vec<Vec<f64>>> {
    let geom = mq::Geometry::new(positions.into_iter().map(vec3).collect(), vec3(axis)).map_err(to_py)?;
    let h = mq::lattice_hamiltonian(&geom, &couplings.0).map_err(to_py)?;
    Ok(rows(&h.matrix))
}

/// Reduced field `eta` from debye, MHz and kV/cm.
#[pyfunction]
fn convert_field(d_debye: f64, b_e_mhz: f64, e_kv_cm: f64) -> PyResult<f64> {
    mq::convert_field(d_debye, b_e_mhz, e_kv_cm).map_err(to_py)
}

#[pymodule(name = "molqubit")]
fn molqubit_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("ConvergenceError", m.py().get_type::<ConvergenceError>())?;
    m.add("DEFAULT_TOL", DEFAULT_TOL)?;
    m.add_class::<PyElements>()?;
    m.add_class::<PyCouplings>()?;
    m.add_class::<PyClassification>()?;
    m.add_class::<PyEncoding>()?;
    m.add_function(wrap_pyfunction!(wigner_3j, m)?)?;
    m.add_function(wrap_pyfunction!(stark_block, m)?)?;
    m.add_function(wrap_pyfunction!(dressed_state, m)?)?;
    m.add_function(wrap_pyfunction!(stark_map, m)?)?;
    m.add_function(wrap_pyfunction!(geometric_prefactor, m)?)?;
    m.add_function(wrap_pyfunction!(lattice_hamiltonian, m)?)?;
    m.add_function(wrap_pyfunction!(convert_field, m)?)?;
    Ok(())
}
