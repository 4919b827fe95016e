//! Python bindings for the trapped-ion gate toolkit.
//!
//! Pulse sequences cross the boundary as lists of `(z, t)` tuples; designs
//! are a `GateDesign` class that round-trips through JSON.

use num_complex::Complex64 as C64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use ion_gate_forge::error::IonGateError;
use ion_gate_forge::fastgate as fg;
use ion_gate_forge::fockspace::FockSpace;
use ion_gate_forge::hamiltonians::IonTrapConfig;
use ion_gate_forge::verify as vf;

fn to_py_err(e: IonGateError) -> PyErr {
    match e {
        IonGateError::DomainError(_) | IonGateError::IndexOutOfRange(_) => {
            PyValueError::new_err(e.to_string())
        }
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

fn sequence(events: Vec<(f64, f64)>) -> PyResult<fg::PulseSequence> {
    fg::PulseSequence::new(
        events
            .into_iter()
            .map(|(z, t)| fg::KickEvent { z, t })
            .collect(),
    )
    .map_err(to_py_err)
}

/// A solved pulse schedule.
#[pyclass(name = "GateDesign", module = "ion_gate_forge_py", from_py_object)]
#[derive(Clone)]
struct PyGateDesign {
    inner: fg::GateDesign,
}

#[pymethods]
impl PyGateDesign {
    #[getter]
    fn protocol(&self) -> &'static str {
        match self.inner.protocol {
            fg::Protocol::I => "I",
            fg::Protocol::II => "II",
            fg::Protocol::Custom => "Custom",
        }
    }
    #[getter]
    fn gamma(&self) -> Option<f64> {
        self.inner.gamma
    }
    #[getter]
    fn tau1(&self) -> f64 {
        self.inner.tau1
    }
    #[getter]
    fn tau2(&self) -> f64 {
        self.inner.tau2
    }
    #[getter]
    fn tau3(&self) -> Option<f64> {
        self.inner.tau3
    }
    #[getter]
    fn scale_n(&self) -> usize {
        self.inner.scale_n
    }
    #[getter]
    fn total_time_t(&self) -> f64 {
        self.inner.total_time_t
    }
    #[getter]
    fn theta(&self) -> f64 {
        self.inner.theta
    }
    #[getter]
    fn residual_cc(&self) -> f64 {
        self.inner.residual_cc
    }
    #[getter]
    fn residual_cr(&self) -> f64 {
        self.inner.residual_cr
    }
    #[getter]
    fn pulse_pairs_np(&self) -> usize {
        self.inner.pulse_pairs_np
    }

    /// The kick schedule as a list of (z, t) tuples.
    fn expand(&self) -> PyResult<Vec<(f64, f64)>> {
        let seq = self.inner.expand().map_err(to_py_err)?;
        Ok(seq.events().iter().map(|e| (e.z, e.t)).collect())
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string_pretty(&self.inner)
            .map_err(|e| PyRuntimeError::new_err(e.to_string()))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner: fg::GateDesign =
            serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(PyGateDesign { inner })
    }

    fn __repr__(&self) -> String {
        format!(
            "GateDesign(protocol={}, N={}, T={:.6}, theta={:.12})",
            self.protocol(),
            self.inner.scale_n,
            self.inner.total_time_t,
            self.inner.theta
        )
    }
}

/// Solve a Protocol I schedule for the target two-qubit phase.
#[pyfunction]
#[pyo3(signature = (eta=0.178, nu=1.0, target_theta=std::f64::consts::FRAC_PI_4))]
fn design_protocol_i(eta: f64, nu: f64, target_theta: f64) -> PyResult<PyGateDesign> {
    fg::design_protocol_i(eta, nu, target_theta)
        .map(|inner| PyGateDesign { inner })
        .map_err(to_py_err)
}

/// Solve a Protocol II schedule of the given total duration.
#[pyfunction]
#[pyo3(signature = (total_time, eta=0.178, nu=1.0, target_theta=std::f64::consts::FRAC_PI_4))]
fn design_protocol_ii(
    total_time: f64,
    eta: f64,
    nu: f64,
    target_theta: f64,
) -> PyResult<PyGateDesign> {
    fg::design_protocol_ii(eta, nu, total_time, target_theta)
        .map(|inner| PyGateDesign { inner })
        .map_err(to_py_err)
}

/// Commensurability residuals (C_com, C_stretch) of a kick schedule.
#[pyfunction]
#[pyo3(signature = (events, nu=1.0))]
fn commensurability(events: Vec<(f64, f64)>, nu: f64) -> PyResult<(C64, C64)> {
    Ok(fg::commensurability(&sequence(events)?, nu))
}

/// Analytic two-qubit phase Theta of a kick schedule.
#[pyfunction]
#[pyo3(signature = (events, eta=0.178, nu=1.0))]
fn gate_phase(events: Vec<(f64, f64)>, eta: f64, nu: f64) -> PyResult<f64> {
    Ok(fg::gate_phase(&sequence(events)?, eta, nu))
}

/// Maximum stretch-mode excursion (X_r, P_r) in ground-state units.
#[pyfunction]
#[pyo3(signature = (events, eta=0.178, nu=1.0))]
fn max_excursion(events: Vec<(f64, f64)>, eta: f64, nu: f64) -> PyResult<(f64, f64)> {
    Ok(fg::max_excursion(&sequence(events)?, eta, nu))
}

/// Sampled phase-space trajectory of one mode as (t, X, P) tuples.
#[pyfunction]
#[pyo3(signature = (events, nu_mode, kick_scale, alpha0=C64::new(0.0, 0.0), dt=0.02))]
fn trajectory(
    events: Vec<(f64, f64)>,
    nu_mode: f64,
    kick_scale: f64,
    alpha0: C64,
    dt: f64,
) -> PyResult<Vec<(f64, f64, f64)>> {
    let samples = fg::coherent_trajectory(
        &sequence(events)?,
        nu_mode,
        kick_scale,
        alpha0,
        dt,
        fg::TrajectoryMode::Com,
        (1, 1),
    )
    .map_err(to_py_err)?;
    Ok(samples.iter().map(|s| (s.t, s.x, s.p)).collect())
}

/// Exact Fock-space phase report for a design: per-configuration phases,
/// extracted theta, motional dependence over the standard battery, and
/// phase-space closure error.
#[pyfunction]
#[pyo3(signature = (design, eta=0.178, nu=1.0, dim=48))]
fn extract_phases<'py>(
    py: Python<'py>,
    design: &PyGateDesign,
    eta: f64,
    nu: f64,
    dim: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let seq = design.inner.expand().map_err(to_py_err)?;
    let cfg = IonTrapConfig::new(nu, eta, 0.0, 0.0, 2).map_err(to_py_err)?;
    let plan = vf::SimulationPlan {
        seq,
        cfg,
        dim_com: dim,
        dim_str: dim,
        initial: vf::MotionalInit::Coherent {
            alpha_c: C64::new(0.0, 0.0),
            alpha_r: C64::new(0.0, 0.0),
        },
    };
    let report = vf::extract_phases(&plan).map_err(to_py_err)?;
    let out = PyDict::new(py);
    let phi = PyDict::new(py);
    for (k, v) in &report.phi {
        phi.set_item(k, v)?;
    }
    out.set_item("phi", phi)?;
    out.set_item("theta_extracted", report.theta_extracted)?;
    out.set_item("motional_dependence", report.motional_dependence)?;
    out.set_item("closure_error", report.closure_error)?;
    Ok(out)
}

/// Truth table of the three-pulse controlled-phase gate on two ions:
/// diagonal amplitudes for |gg>, |ge>, |eg>, |ee> and the leakage bound.
#[pyfunction]
#[pyo3(signature = (eta=0.1, omega=0.05, dim=8))]
fn cz95_truth_table<'py>(
    py: Python<'py>,
    eta: f64,
    omega: f64,
    dim: usize,
) -> PyResult<Bound<'py, PyDict>> {
    use ion_gate_forge::cz95::{cz95_gate, truth_table, CZ95Register};
    let reg = CZ95Register::new(2, FockSpace::new(dim).map_err(to_py_err)?, eta, omega)
        .map_err(to_py_err)?;
    let gate = cz95_gate(&reg, 0, 1).map_err(to_py_err)?;
    let tt = truth_table(&reg, &gate).map_err(to_py_err)?;
    let out = PyDict::new(py);
    out.set_item("inputs", vec!["gg", "ge", "eg", "ee"])?;
    out.set_item("phases", tt.phases.to_vec())?;
    out.set_item("leakage", tt.leakage)?;
    Ok(out)
}

/// Worst-case population error of the red-sideband approximation against
/// the full kick Hamiltonian over one pi pulse.
#[pyfunction]
#[pyo3(signature = (omega, eta=0.1, nu=1.0, dim=16, steps=160))]
fn sideband_population_error(
    omega: f64,
    eta: f64,
    nu: f64,
    dim: usize,
    steps: usize,
) -> PyResult<f64> {
    let cfg = IonTrapConfig::new(nu, eta, omega, -nu, 1).map_err(to_py_err)?;
    let space = FockSpace::new(dim).map_err(to_py_err)?;
    ion_gate_forge::hamiltonians::sideband_population_error(&cfg, space, steps).map_err(to_py_err)
}

#[pymodule]
fn ion_gate_forge_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGateDesign>()?;
    m.add_function(wrap_pyfunction!(design_protocol_i, m)?)?;
    m.add_function(wrap_pyfunction!(design_protocol_ii, m)?)?;
    m.add_function(wrap_pyfunction!(commensurability, m)?)?;
    m.add_function(wrap_pyfunction!(gate_phase, m)?)?;
    m.add_function(wrap_pyfunction!(max_excursion, m)?)?;
    m.add_function(wrap_pyfunction!(trajectory, m)?)?;
    m.add_function(wrap_pyfunction!(extract_phases, m)?)?;
    m.add_function(wrap_pyfunction!(cz95_truth_table, m)?)?;
    m.add_function(wrap_pyfunction!(sideband_population_error, m)?)?;
    Ok(())
}
