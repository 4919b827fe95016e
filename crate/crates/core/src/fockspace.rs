//! Truncated-Fock-space states, operators, propagators and fidelities.
//!
//! Everything downstream (sideband Hamiltonians, the CZ'95 gate, the kicked
//! fast gate and its verifier) is built on the types here. All values are
//! immutable after construction.

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;

use crate::error::{IonGateError, Result};
use crate::linalg;

/// Ordered list of factor dimensions of a composite basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basis(Vec<usize>);

impl Basis {
    pub fn new(factors: Vec<usize>) -> Self {
        assert!(!factors.is_empty() && factors.iter().all(|&d| d >= 1));
        Basis(factors)
    }

    pub fn single(dim: usize) -> Self {
        Basis(vec![dim])
    }

    pub fn factors(&self) -> &[usize] {
        &self.0
    }

    pub fn total_dim(&self) -> usize {
        self.0.iter().product()
    }
}

/// Truncated harmonic oscillator with levels 0..dim-1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockSpace {
    dim: usize,
}

impl FockSpace {
    pub fn new(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(IonGateError::DomainError(format!(
                "Fock truncation dimension must be >= 2, got {dim}"
            )));
        }
        Ok(FockSpace { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> Basis {
        Basis::single(self.dim)
    }
}

#[derive(Debug, Clone)]
pub struct StateVector {
    amplitudes: Array1<C64>,
    basis: Basis,
}

impl StateVector {
    pub fn new(amplitudes: Array1<C64>, basis: Basis) -> Result<Self> {
        if amplitudes.len() != basis.total_dim() {
            return Err(IonGateError::BasisMismatch(format!(
                "amplitude length {} vs basis dimension {}",
                amplitudes.len(),
                basis.total_dim()
            )));
        }
        Ok(StateVector { amplitudes, basis })
    }

    /// Basis state |i> of a composite basis, i a flat index.
    pub fn basis_state(basis: Basis, index: usize) -> Self {
        let mut amp = Array1::zeros(basis.total_dim());
        amp[index] = C64::new(1.0, 0.0);
        StateVector {
            amplitudes: amp,
            basis,
        }
    }

    /// Number state |n> of a single Fock factor.
    pub fn number_state(space: FockSpace, n: usize) -> Result<Self> {
        if n >= space.dim() {
            return Err(IonGateError::IndexOutOfRange(format!(
                "number state {n} in dim {}",
                space.dim()
            )));
        }
        Ok(Self::basis_state(space.basis(), n))
    }

    pub fn amplitudes(&self) -> &Array1<C64> {
        &self.amplitudes
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        check_same_basis(&self.basis, &other.basis)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Expectation value <a> of the lowering operator on a single-mode state.
    pub fn mean_lowering(&self) -> C64 {
        let dim = self.amplitudes.len();
        let mut acc = C64::new(0.0, 0.0);
        for n in 1..dim {
            acc += self.amplitudes[n - 1].conj() * self.amplitudes[n] * (n as f64).sqrt();
        }
        acc
    }

    pub fn to_density(&self) -> DensityOperator {
        let n = self.amplitudes.len();
        let mut m = Array2::zeros((n, n));
        for i in 0..n {
            for j in 0..n {
                m[[i, j]] = self.amplitudes[i] * self.amplitudes[j].conj();
            }
        }
        DensityOperator {
            matrix: m,
            basis: self.basis.clone(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct DensityOperator {
    matrix: Array2<C64>,
    basis: Basis,
}

impl DensityOperator {
    pub fn new(matrix: Array2<C64>, basis: Basis) -> Result<Self> {
        if matrix.nrows() != basis.total_dim() || matrix.ncols() != basis.total_dim() {
            return Err(IonGateError::BasisMismatch(format!(
                "matrix {}x{} vs basis dimension {}",
                matrix.nrows(),
                matrix.ncols(),
                basis.total_dim()
            )));
        }
        Ok(DensityOperator { matrix, basis })
    }

    pub fn matrix(&self) -> &Array2<C64> {
        &self.matrix
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn trace(&self) -> C64 {
        (0..self.matrix.nrows()).map(|i| self.matrix[[i, i]]).sum()
    }

    /// Diagonal populations.
    pub fn populations(&self) -> Vec<f64> {
        (0..self.matrix.nrows())
            .map(|i| self.matrix[[i, i]].re)
            .collect()
    }

    /// Hermiticity, unit trace and positivity checks at the stated tolerances.
    pub fn check_physical(&self) -> Result<()> {
        let herm = linalg::hermiticity_defect(&self.matrix);
        if herm > 1e-12 {
            return Err(IonGateError::DomainError(format!(
                "density operator not Hermitian, defect {herm:.3e}"
            )));
        }
        let tr = self.trace();
        if (tr.re - 1.0).abs() > 1e-12 || tr.im.abs() > 1e-12 {
            return Err(IonGateError::DomainError(format!(
                "density operator trace {tr} != 1"
            )));
        }
        let (w, _) = linalg::eigh(&self.matrix);
        if let Some(min) = w.iter().cloned().reduce(f64::min) {
            if min < -1e-12 {
                return Err(IonGateError::DomainError(format!(
                    "density operator has eigenvalue {min:.3e} < 0"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct Operator {
    matrix: Array2<C64>,
    basis: Basis,
}

impl Operator {
    pub fn new(matrix: Array2<C64>, basis: Basis) -> Result<Self> {
        if matrix.nrows() != basis.total_dim() || matrix.ncols() != basis.total_dim() {
            return Err(IonGateError::BasisMismatch(format!(
                "matrix {}x{} vs basis dimension {}",
                matrix.nrows(),
                matrix.ncols(),
                basis.total_dim()
            )));
        }
        Ok(Operator { matrix, basis })
    }

    pub fn identity(basis: Basis) -> Self {
        let n = basis.total_dim();
        Operator {
            matrix: linalg::eye(n),
            basis,
        }
    }

    pub fn matrix(&self) -> &Array2<C64> {
        &self.matrix
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn dagger(&self) -> Operator {
        Operator {
            matrix: linalg::dagger(&self.matrix),
            basis: self.basis.clone(),
        }
    }

    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        check_same_basis(&self.basis, psi.basis())?;
        let amp = self.matrix.dot(psi.amplitudes());
        StateVector::new(amp, self.basis.clone())
    }

    pub fn compose(&self, rhs: &Operator) -> Result<Operator> {
        check_same_basis(&self.basis, &rhs.basis)?;
        Operator::new(self.matrix.dot(&rhs.matrix), self.basis.clone())
    }

    pub fn unitarity_defect(&self) -> f64 {
        linalg::unitarity_defect(&self.matrix)
    }

    pub fn hermiticity_defect(&self) -> f64 {
        linalg::hermiticity_defect(&self.matrix)
    }
}

pub(crate) fn check_same_basis(a: &Basis, b: &Basis) -> Result<()> {
    if a != b {
        return Err(IonGateError::BasisMismatch(format!(
            "{:?} vs {:?}",
            a.factors(),
            b.factors()
        )));
    }
    Ok(())
}

/// Lowering and raising operators on a truncated Fock space,
/// <n-1|a|n> = sqrt(n).
pub fn ladder_ops(space: FockSpace) -> (Operator, Operator) {
    let dim = space.dim();
    let mut a = Array2::zeros((dim, dim));
    for n in 1..dim {
        a[[n - 1, n]] = C64::new((n as f64).sqrt(), 0.0);
    }
    let adag = linalg::dagger(&a);
    (
        Operator {
            matrix: a,
            basis: space.basis(),
        },
        Operator {
            matrix: adag,
            basis: space.basis(),
        },
    )
}

fn top_levels(dim: usize) -> usize {
    (dim as f64 * 0.1).ceil() as usize
}

/// Population of the top 10% of levels of a single-mode vector.
pub fn edge_population(amplitudes: &Array1<C64>) -> f64 {
    let dim = amplitudes.len();
    let k = top_levels(dim).max(1);
    amplitudes.iter().skip(dim - k).map(|z| z.norm_sqr()).sum()
}

/// Kick factor exp(-i p (a + a^dag)).
///
/// Fails with `TruncationLeakage` when a displaced vacuum puts more than
/// 1e-10 of its population into the top 10% of levels.
pub fn displacement_op(space: FockSpace, p: f64) -> Result<Operator> {
    let dim = space.dim();
    let (a, adag) = ladder_ops(space);
    let gen = (a.matrix() + adag.matrix()) * C64::new(0.0, -p);
    let u = linalg::expm(&gen);
    let mut vac = Array1::zeros(dim);
    vac[0] = C64::new(1.0, 0.0);
    let displaced = u.dot(&vac);
    let leak = edge_population(&displaced);
    if leak > 1e-10 {
        return Err(IonGateError::TruncationLeakage(format!(
            "displacement p={p}: vacuum leaks {leak:.3e} into the top levels of dim {dim}"
        )));
    }
    Operator::new(u, space.basis())
}

/// Coherent state |alpha>, amplitudes proportional to alpha^n / sqrt(n!).
pub fn coherent_state(space: FockSpace, alpha: C64) -> Result<StateVector> {
    let dim = space.dim();
    let mut amp = Array1::zeros(dim);
    let mut term = C64::new(1.0, 0.0); // alpha^n / sqrt(n!)
    amp[0] = term;
    for n in 1..dim {
        term *= alpha / C64::new((n as f64).sqrt(), 0.0);
        amp[n] = term;
    }
    // captured Poisson mass; reject if the truncation drops more than 1e-10
    let captured: f64 = amp.iter().map(|z| z.norm_sqr()).sum::<f64>() * (-alpha.norm_sqr()).exp();
    if 1.0 - captured > 1e-10 {
        return Err(IonGateError::TruncationLeakage(format!(
            "coherent state |alpha| = {:.3} loses {:.3e} population at dim {dim}",
            alpha.norm(),
            1.0 - captured
        )));
    }
    let norm: f64 = amp.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let amp = amp.mapv(|z| z / norm);
    StateVector::new(amp, space.basis())
}

/// Thermal state with mean occupation nbar, p_n = nbar^n / (1+nbar)^(n+1),
/// renormalized over the truncation.
pub fn thermal_state(space: FockSpace, nbar: f64) -> Result<DensityOperator> {
    if nbar < 0.0 {
        return Err(IonGateError::DomainError(format!("nbar = {nbar} < 0")));
    }
    let dim = space.dim();
    if nbar > 0.0 {
        let tail = (nbar / (1.0 + nbar)).powi(dim as i32);
        if tail > 1e-10 {
            return Err(IonGateError::TruncationLeakage(format!(
                "thermal tail mass {tail:.3e} beyond dim {dim} for nbar {nbar}"
            )));
        }
    }
    let mut m = Array2::zeros((dim, dim));
    let ratio = nbar / (1.0 + nbar);
    let mut p = 1.0 / (1.0 + nbar);
    let mut total = 0.0;
    for n in 0..dim {
        m[[n, n]] = C64::new(p, 0.0);
        total += p;
        p *= ratio;
    }
    let m = m.mapv(|z| z / total);
    DensityOperator::new(m, space.basis())
}

/// exp(-i H t) |psi> for a Hermitian generator.
pub fn propagate(h: &Operator, t: f64, psi: &StateVector) -> Result<StateVector> {
    check_same_basis(h.basis(), psi.basis())?;
    let defect = h.hermiticity_defect();
    if defect > 1e-10 {
        return Err(IonGateError::NonHermitian(defect));
    }
    let u = linalg::expm(&(h.matrix() * C64::new(0.0, -t)));
    let amp = u.dot(psi.amplitudes());
    StateVector::new(amp, psi.basis().clone())
}

/// Propagator exp(-i H t) as an operator, for repeated application.
pub fn propagator(h: &Operator, t: f64) -> Result<Operator> {
    let defect = h.hermiticity_defect();
    if defect > 1e-10 {
        return Err(IonGateError::NonHermitian(defect));
    }
    Operator::new(
        linalg::expm(&(h.matrix() * C64::new(0.0, -t))),
        h.basis().clone(),
    )
}

/// Either side of a fidelity comparison.
pub enum StateKind<'a> {
    Pure(&'a StateVector),
    Mixed(&'a DensityOperator),
}

/// |<a|b>|^2 for pure states, Uhlmann fidelity for mixed ones.
pub fn state_fidelity(a: StateKind<'_>, b: StateKind<'_>) -> Result<f64> {
    use StateKind::*;
    match (a, b) {
        (Pure(x), Pure(y)) => Ok(x.inner(y)?.norm_sqr()),
        (Pure(x), Mixed(r)) | (Mixed(r), Pure(x)) => {
            check_same_basis(x.basis(), r.basis())?;
            let v = r.matrix().dot(x.amplitudes());
            let f: C64 = x
                .amplitudes()
                .iter()
                .zip(v.iter())
                .map(|(a, b)| a.conj() * b)
                .sum();
            Ok(f.re.max(0.0))
        }
        (Mixed(r), Mixed(s)) => {
            check_same_basis(r.basis(), s.basis())?;
            let sr = linalg::sqrtm_psd(r.matrix());
            let inner = sr.dot(s.matrix()).dot(&sr);
            let root = linalg::sqrtm_psd(&inner);
            let tr: f64 = (0..root.nrows()).map(|i| root[[i, i]].re).sum();
            Ok((tr * tr).clamp(0.0, 1.0))
        }
    }
}
