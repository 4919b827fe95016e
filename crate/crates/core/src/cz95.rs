//! The Cirac-Zoller 1995 controlled-phase gate: three-level ions
//! (|g>, |e0>, |e1>) sharing one center-of-mass phonon bus, carrier
//! rotations and sideband pulses as exact pulse-area exponentials, and the
//! three-step gate with its truth table.
//!
//! Register basis ordering: ion 0 level, ion 1 level, ..., phonon number;
//! levels are g = 0, e0 = 1, e1 = 2.

use ndarray::Array2;
use num_complex::Complex64 as C64;
use std::f64::consts::FRAC_PI_2;

use crate::error::{IonGateError, Result};
use crate::fockspace::{Basis, FockSpace, Operator, StateVector};
use crate::linalg::{expm, eye, kron};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IonInternalLevel {
    G,
    E0,
    /// Auxiliary level, used only by the sign-flip step.
    E1,
}

impl IonInternalLevel {
    pub fn index(self) -> usize {
        match self {
            IonInternalLevel::G => 0,
            IonInternalLevel::E0 => 1,
            IonInternalLevel::E1 => 2,
        }
    }
}

/// A register of three-level ions coupled to the COM phonon bus.
#[derive(Debug, Clone, Copy)]
pub struct CZ95Register {
    pub num_ions: usize,
    pub phonon_space: FockSpace,
    pub eta: f64,
    pub omega: f64,
}

impl CZ95Register {
    pub fn new(num_ions: usize, phonon_space: FockSpace, eta: f64, omega: f64) -> Result<Self> {
        if num_ions == 0 {
            return Err(IonGateError::DomainError("num_ions must be >= 1".into()));
        }
        Ok(CZ95Register {
            num_ions,
            phonon_space,
            eta,
            omega,
        })
    }

    pub fn basis(&self) -> Basis {
        let mut factors = vec![3usize; self.num_ions];
        factors.push(self.phonon_space.dim());
        Basis::new(factors)
    }

    /// Sideband coupling prefactor (eta / sqrt(N)) (Omega / 2) entering the
    /// physical pulse durations; the pulse-area unitaries below do not
    /// depend on it.
    pub fn effective_sideband_coupling(&self) -> f64 {
        self.eta / (self.num_ions as f64).sqrt() * self.omega / 2.0
    }

    /// Physical duration of a k-pi sideband pulse at the coupling above.
    pub fn sideband_pulse_duration(&self, k: f64) -> f64 {
        k * FRAC_PI_2 / self.effective_sideband_coupling()
    }

    fn check_ion(&self, ion: usize) -> Result<()> {
        if ion >= self.num_ions {
            return Err(IonGateError::IndexOutOfRange(format!(
                "ion {ion} in register of {}",
                self.num_ions
            )));
        }
        Ok(())
    }

    /// Lift a 3x3 single-ion matrix to the full register (identity on the
    /// other ions and the phonon bus).
    fn lift_single_ion(&self, ion: usize, m: &Array2<C64>) -> Array2<C64> {
        let mut full = eye(1);
        for i in 0..self.num_ions {
            full = if i == ion {
                kron(&full, m)
            } else {
                kron(&full, &eye(3))
            };
        }
        kron(&full, &eye(self.phonon_space.dim()))
    }
}

/// Carrier rotation V = exp[-i k (pi/2) (|e0><g| e^{-i phi} + h.c.)] on one
/// ion, identity on everything else.
pub fn carrier_rotation(reg: &CZ95Register, ion: usize, k: f64, phi: f64) -> Result<Operator> {
    reg.check_ion(ion)?;
    let angle = k * FRAC_PI_2;
    let (s, c) = angle.sin_cos();
    let mut v = eye(3);
    v[[0, 0]] = C64::new(c, 0.0);
    v[[1, 1]] = C64::new(c, 0.0);
    v[[0, 1]] = C64::new(0.0, -s) * C64::from_polar(1.0, phi);
    v[[1, 0]] = C64::new(0.0, -s) * C64::from_polar(1.0, -phi);
    Operator::new(reg.lift_single_ion(ion, &v), reg.basis())
}

/// Sideband pulse U = exp[-i k (pi/2) (|e_q><g| a e^{-i phi} + h.c.)] on one
/// ion and the shared bus. q selects the excited level: 0 -> e0, 1 -> e1.
pub fn sideband_pulse(
    reg: &CZ95Register,
    ion: usize,
    k: f64,
    q: usize,
    phi: f64,
) -> Result<Operator> {
    reg.check_ion(ion)?;
    if q > 1 {
        return Err(IonGateError::IndexOutOfRange(format!(
            "q = {q}, expected 0 or 1"
        )));
    }
    if reg.phonon_space.dim() < 3 {
        return Err(IonGateError::DomainError(
            "sideband pulse needs phonon truncation >= 3".into(),
        ));
    }
    let eq = q + 1; // level index of e_q
    let mut raise = Array2::zeros((3, 3));
    raise[[eq, 0]] = C64::new(1.0, 0.0);

    let (a, _) = crate::fockspace::ladder_ops(reg.phonon_space);
    // |e_q><g| (x) a e^{-i phi} on (ion, bus), identity on the other ions
    let mut half = eye(1);
    for i in 0..reg.num_ions {
        half = if i == ion {
            kron(&half, &raise)
        } else {
            kron(&half, &eye(3))
        };
    }
    let half = kron(&half, a.matrix()) * C64::from_polar(1.0, -phi);
    let gen = (&half + &crate::linalg::dagger(&half)) * C64::new(k * FRAC_PI_2, 0.0);
    let u = expm(&(gen * C64::new(0.0, -1.0)));
    Operator::new(u, reg.basis())
}

/// The three-step gate U_m^{1,0} U_n^{2,1} U_m^{1,0}: a pi pulse on ion m's
/// e0 sideband, a 2 pi pulse on ion n's auxiliary e1 sideband, and the
/// first pulse again. Diagonal phase (1,1,1,-1) on the computational basis
/// with the bus returned to |0>.
pub fn cz95_gate(reg: &CZ95Register, m: usize, n: usize) -> Result<Operator> {
    if m == n {
        return Err(IonGateError::IndexOutOfRange(format!("m = n = {m}")));
    }
    reg.check_ion(m)?;
    reg.check_ion(n)?;
    let u_m = sideband_pulse(reg, m, 1.0, 0, 0.0)?;
    let u_n = sideband_pulse(reg, n, 2.0, 1, 0.0)?;
    u_m.compose(&u_n)?.compose(&u_m)
}

/// Flat register index for ion levels `levels` and phonon number `n_ph`.
pub fn register_index(reg: &CZ95Register, levels: &[IonInternalLevel], n_ph: usize) -> usize {
    assert_eq!(levels.len(), reg.num_ions);
    let mut idx = 0;
    for l in levels {
        idx = idx * 3 + l.index();
    }
    idx * reg.phonon_space.dim() + n_ph
}

/// Diagonal phases of the four computational states (gg, ge, eg, ee with the
/// bus in |0>) under `gate`, plus the worst off-table leakage norm.
#[derive(Debug, Clone)]
pub struct TruthTable {
    /// <in| gate |in> for in = |gg0>, |ge0>, |eg0>, |ee0>.
    pub phases: [C64; 4],
    /// max over inputs of the output norm outside the four-state table.
    pub leakage: f64,
}

pub fn truth_table(reg: &CZ95Register, gate: &Operator) -> Result<TruthTable> {
    if reg.num_ions < 2 {
        return Err(IonGateError::DomainError(
            "truth table needs >= 2 ions".into(),
        ));
    }
    use IonInternalLevel::{E0, G};
    let table: Vec<usize> = [[G, G], [G, E0], [E0, G], [E0, E0]]
        .iter()
        .map(|pair| {
            let mut levels = vec![G; reg.num_ions];
            levels[0] = pair[0];
            levels[1] = pair[1];
            register_index(reg, &levels, 0)
        })
        .collect();

    let mut phases = [C64::new(0.0, 0.0); 4];
    let mut leakage = 0.0f64;
    for (slot, &idx) in table.iter().enumerate() {
        let input = StateVector::basis_state(reg.basis(), idx);
        let out = gate.apply(&input)?;
        phases[slot] = out.amplitudes()[idx];
        let off: f64 = out
            .amplitudes()
            .iter()
            .enumerate()
            .filter(|(i, _)| !table.contains(i))
            .map(|(_, z)| z.norm_sqr())
            .sum();
        leakage = leakage.max(off.sqrt());
    }
    Ok(TruthTable { phases, leakage })
}

#[cfg(test)]
mod tests {
    use super::*;
    use IonInternalLevel::{E0, E1, G};

    fn reg(dim: usize) -> CZ95Register {
        CZ95Register::new(2, FockSpace::new(dim).unwrap(), 0.1, 0.05).unwrap()
    }

    #[test]
    fn carrier_pi_pulse() {
        let r = reg(4);
        let v = carrier_rotation(&r, 0, 1.0, 0.0).unwrap();
        let idx_g = register_index(&r, &[G, G], 0);
        let idx_e = register_index(&r, &[E0, G], 0);
        let input = StateVector::basis_state(r.basis(), idx_g);
        let out = v.apply(&input).unwrap();
        assert!((out.amplitudes()[idx_e] - C64::new(0.0, -1.0)).norm() < 1e-12);
    }

    #[test]
    fn carrier_two_pi_is_minus_identity_on_subspace() {
        let r = reg(4);
        let v = carrier_rotation(&r, 1, 2.0, 0.7).unwrap();
        for (levels, expect) in [
            ([G, G], -1.0),
            ([G, E0], -1.0),
            ([G, E1], 1.0), // auxiliary level untouched
        ] {
            let idx = register_index(&r, &levels, 2);
            let input = StateVector::basis_state(r.basis(), idx);
            let out = v.apply(&input).unwrap();
            assert!((out.amplitudes()[idx] - C64::new(expect, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn carrier_zero_area_is_identity() {
        let r = reg(4);
        let v = carrier_rotation(&r, 0, 0.0, 1.3).unwrap();
        assert!(crate::linalg::max_norm(&(v.matrix() - &eye(3 * 3 * 4))) < 1e-13);
    }

    #[test]
    fn sideband_pi_pulse_swaps() {
        // |g,1> -> -i |e_q, 0>
        let r = reg(4);
        let u = sideband_pulse(&r, 0, 1.0, 0, 0.0).unwrap();
        let idx_g1 = register_index(&r, &[G, G], 1);
        let idx_e0 = register_index(&r, &[E0, G], 0);
        let out = u
            .apply(&StateVector::basis_state(r.basis(), idx_g1))
            .unwrap();
        assert!((out.amplitudes()[idx_e0] - C64::new(0.0, -1.0)).norm() < 1e-12);
    }

    #[test]
    fn sideband_keeps_ground_vacuum() {
        let r = reg(4);
        for (k, q) in [(1.0, 0), (2.0, 1), (0.7, 0)] {
            let u = sideband_pulse(&r, 1, k, q, 0.3).unwrap();
            let idx = register_index(&r, &[G, G], 0);
            let out = u.apply(&StateVector::basis_state(r.basis(), idx)).unwrap();
            assert!((out.amplitudes()[idx] - C64::new(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn sideband_two_pi_flips_sign() {
        // k=2, q=1: |g,1> -> -|g,1>
        let r = reg(4);
        let u = sideband_pulse(&r, 0, 2.0, 1, 0.0).unwrap();
        let idx = register_index(&r, &[G, G], 1);
        let out = u.apply(&StateVector::basis_state(r.basis(), idx)).unwrap();
        assert!((out.amplitudes()[idx] - C64::new(-1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn gate_truth_table() {
        let r = reg(8);
        let gate = cz95_gate(&r, 0, 1).unwrap();
        assert!(gate.unitarity_defect() < 1e-10);
        let tt = truth_table(&r, &gate).unwrap();
        let expect = [1.0, 1.0, 1.0, -1.0];
        for (p, e) in tt.phases.iter().zip(expect) {
            assert!(
                (p - C64::new(e, 0.0)).norm() < 1e-9,
                "phases {:?}",
                tt.phases
            );
        }
        assert!(tt.leakage < 1e-10);
    }

    #[test]
    fn phonon_bus_restored() {
        let r = reg(8);
        let gate = cz95_gate(&r, 0, 1).unwrap();
        for levels in [[G, G], [G, E0], [E0, G], [E0, E0]] {
            let idx = register_index(&r, &levels, 0);
            let out = gate
                .apply(&StateVector::basis_state(r.basis(), idx))
                .unwrap();
            // population with phonon number != 0
            let mut bad = 0.0;
            for (i, z) in out.amplitudes().iter().enumerate() {
                if i % r.phonon_space.dim() != 0 {
                    bad += z.norm_sqr();
                }
            }
            assert!(bad < 1e-10, "phonon leakage {bad:.3e} for {levels:?}");
        }
    }

    #[test]
    fn auxiliary_level_unpopulated() {
        let r = reg(8);
        let gate = cz95_gate(&r, 0, 1).unwrap();
        for levels in [[G, G], [G, E0], [E0, G], [E0, E0]] {
            let idx = register_index(&r, &levels, 0);
            let out = gate
                .apply(&StateVector::basis_state(r.basis(), idx))
                .unwrap();
            let dim_ph = r.phonon_space.dim();
            let mut e1_pop = 0.0;
            for (i, z) in out.amplitudes().iter().enumerate() {
                let l0 = i / (3 * dim_ph);
                let l1 = (i / dim_ph) % 3;
                if l0 == 2 || l1 == 2 {
                    e1_pop += z.norm_sqr();
                }
            }
            assert!(e1_pop < 1e-10);
        }
    }

    #[test]
    fn gate_diagonal_on_computational_block() {
        let r = reg(8);
        let gate = cz95_gate(&r, 0, 1).unwrap();
        let idxs: Vec<usize> = [[G, G], [G, E0], [E0, G], [E0, E0]]
            .iter()
            .map(|l| register_index(&r, l, 0))
            .collect();
        for (a, &i) in idxs.iter().enumerate() {
            for (b, &j) in idxs.iter().enumerate() {
                if a != b {
                    assert!(gate.matrix()[[i, j]].norm() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn perturbed_pulse_area_leaks() {
        let r = reg(8);
        let u1 = sideband_pulse(&r, 0, 1.01, 0, 0.0).unwrap();
        let u2 = sideband_pulse(&r, 1, 2.0, 1, 0.0).unwrap();
        let u3 = sideband_pulse(&r, 0, 1.0, 0, 0.0).unwrap();
        let gate = u1.compose(&u2).unwrap().compose(&u3).unwrap();
        let tt = truth_table(&r, &gate).unwrap();
        assert!(tt.leakage > 0.0);
    }

    #[test]
    fn identity_truth_table() {
        let r = reg(8);
        let tt = truth_table(&r, &Operator::identity(r.basis())).unwrap();
        for p in tt.phases {
            assert!((p - C64::new(1.0, 0.0)).norm() < 1e-14);
        }
        assert!(tt.leakage < 1e-14);
    }

    #[test]
    fn composes_to_cnot() {
        // H on the target built from carrier rotations: H ~ Ry(pi/2) Rx(pi) Ry(pi),
        // with Ry(theta) = carrier(k = theta/pi, phi = -pi/2), Rx from phi = 0.
        let r = reg(8);
        let ry_half = carrier_rotation(&r, 1, 0.5, -std::f64::consts::FRAC_PI_2).unwrap();
        let rx_pi = carrier_rotation(&r, 1, 1.0, 0.0).unwrap();
        let ry_pi = carrier_rotation(&r, 1, 1.0, -std::f64::consts::FRAC_PI_2).unwrap();
        let h = ry_half.compose(&rx_pi).unwrap().compose(&ry_pi).unwrap();
        let cz = cz95_gate(&r, 0, 1).unwrap();
        let cnot = h.compose(&cz).unwrap().compose(&h).unwrap();

        let idxs: Vec<usize> = [[G, G], [G, E0], [E0, G], [E0, E0]]
            .iter()
            .map(|l| register_index(&r, l, 0))
            .collect();
        // expected |amplitudes|: control = ion 0; target flipped iff control set
        let expect = [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, 1.0, 0.0],
        ];
        // fix the global phase from the largest element of the first column
        let phase = cnot.matrix()[[idxs[0], idxs[0]]];
        let phase = phase / phase.norm();
        for (a, &i) in idxs.iter().enumerate() {
            for (b, &j) in idxs.iter().enumerate() {
                let got = cnot.matrix()[[i, j]] / phase;
                assert!(
                    (got - C64::new(expect[a][b], 0.0)).norm() < 1e-9,
                    "CNOT block mismatch at ({a},{b}): {got}"
                );
            }
        }
    }
}
