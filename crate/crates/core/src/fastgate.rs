//! Closed-form engine for the kicked fast gate: commensurability conditions
//! on the kick times, the accumulated two-qubit phase, coherent phase-space
//! trajectories, and the Protocol I / Protocol II schedule solvers.
//!
//! Conventions, fixed once and used by both the solvers and the Fock-space
//! verifier:
//!   * a kick of scalar weight p at time t maps a coherent amplitude
//!     alpha -> alpha - i p (a vertical jump in (X, P));
//!   * between kicks the amplitude rotates freely, alpha -> alpha e^{-i nu dt};
//!   * per qubit configuration (s1, s2) the scalar kicks are
//!     p_com = 2 z eta_c (s1 + s2) on the COM mode and
//!     p_str = z eta_r (s1 - s2) on the stretch mode.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{IonGateError, Result};
use crate::roots::{brent, newton2};

pub const SQRT3: f64 = 1.732_050_807_568_877_2;

/// One momentum-kick event: weight z (integer for physical schedules, real
/// analytically) applied at time t.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KickEvent {
    pub z: f64,
    pub t: f64,
}

/// Ordered kick schedule. Times are strictly increasing; the empty sequence
/// is legal and means free evolution.
#[derive(Debug, Clone, PartialEq)]
pub struct PulseSequence {
    events: Vec<KickEvent>,
}

impl PulseSequence {
    pub fn new(events: Vec<KickEvent>) -> Result<Self> {
        for w in events.windows(2) {
            if w[1].t <= w[0].t {
                return Err(IonGateError::DomainError(format!(
                    "kick times must be strictly increasing ({} then {})",
                    w[0].t, w[1].t
                )));
            }
        }
        Ok(PulseSequence { events })
    }

    pub fn empty() -> Self {
        PulseSequence { events: vec![] }
    }

    pub fn events(&self) -> &[KickEvent] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    /// t_last - t_first (0 for fewer than two events).
    pub fn total_time(&self) -> f64 {
        match (self.events.first(), self.events.last()) {
            (Some(a), Some(b)) => b.t - a.t,
            _ => 0.0,
        }
    }

    /// Sum of |z| over the events.
    pub fn total_weight(&self) -> f64 {
        self.events.iter().map(|e| e.z.abs()).sum()
    }
}

/// Commensurability sums (C_c, C_r) = (Sum z_k e^{-i nu t_k},
/// Sum z_k e^{-i sqrt(3) nu t_k}). Both must vanish for the motion of both
/// modes to close.
pub fn commensurability(seq: &PulseSequence, nu: f64) -> (C64, C64) {
    let mut cc = C64::new(0.0, 0.0);
    let mut cr = C64::new(0.0, 0.0);
    for e in seq.events() {
        cc += C64::from_polar(e.z, -nu * e.t);
        cr += C64::from_polar(e.z, -SQRT3 * nu * e.t);
    }
    (cc, cr)
}

/// Two-qubit gate phase
/// Theta = 4 eta^2 Sum_{k<m} z_k z_m [sin(sqrt3 nu dt_km)/sqrt3 - sin(nu dt_km)],
/// dt_km = t_k - t_m.
pub fn gate_phase(seq: &PulseSequence, eta: f64, nu: f64) -> f64 {
    let ev = seq.events();
    let mut acc = 0.0;
    for m in 1..ev.len() {
        for k in 0..m {
            let dt = ev[k].t - ev[m].t;
            acc += ev[k].z * ev[m].z * ((SQRT3 * nu * dt).sin() / SQRT3 - (nu * dt).sin());
        }
    }
    4.0 * eta * eta * acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TrajectoryMode {
    Com,
    Stretch,
}

impl std::fmt::Display for TrajectoryMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TrajectoryMode::Com => write!(f, "com"),
            TrajectoryMode::Stretch => write!(f, "stretch"),
        }
    }
}

/// One phase-space sample: (X + iP)/sqrt2 is the coherent amplitude <a>.
#[derive(Debug, Clone, Copy)]
pub struct TrajectorySample {
    pub t: f64,
    pub x: f64,
    pub p: f64,
    pub mode: TrajectoryMode,
    pub qubit_config: (i8, i8),
}

/// Phase angle nu (t_k - t_first) of each event, plus the total angle.
fn event_angles(seq: &PulseSequence, nu: f64) -> (Vec<f64>, f64) {
    let t0 = seq.events().first().map_or(0.0, |e| e.t);
    let th: Vec<f64> = seq.events().iter().map(|e| nu * (e.t - t0)).collect();
    let total = th.last().copied().unwrap_or(0.0);
    (th, total)
}

/// Final coherent amplitude after the kicked evolution, from the closed form
/// alpha~ = e^{-i theta_N} (alpha0 - i Sum p_k e^{i theta_k}).
pub fn final_amplitude(seq: &PulseSequence, nu_mode: f64, kick_scale: f64, alpha0: C64) -> C64 {
    let (th, total) = event_angles(seq, nu_mode);
    let mut s = C64::new(0.0, 0.0);
    for (e, &a) in seq.events().iter().zip(&th) {
        s += C64::from_polar(kick_scale * e.z, a);
    }
    C64::from_polar(1.0, -total) * (alpha0 - C64::new(0.0, 1.0) * s)
}

/// Sampled phase-space trajectory from the first event to the last (one free
/// period starting at t = 0 when the sequence is empty). Kicks are
/// instantaneous vertical jumps of -i p; between kicks the amplitude rotates
/// at nu_mode. `mode` and `qubit_config` only label the samples.
pub fn coherent_trajectory(
    seq: &PulseSequence,
    nu_mode: f64,
    kick_scale: f64,
    alpha0: C64,
    sample_dt: f64,
    mode: TrajectoryMode,
    qubit_config: (i8, i8),
) -> Result<Vec<TrajectorySample>> {
    if !(sample_dt > 0.0) {
        return Err(IonGateError::DomainError(format!(
            "sample_dt = {sample_dt} must be > 0"
        )));
    }
    let sample = |t: f64, a: C64| TrajectorySample {
        t,
        x: 2.0f64.sqrt() * a.re,
        p: 2.0f64.sqrt() * a.im,
        mode,
        qubit_config,
    };

    let mut out = Vec::new();
    if seq.is_empty() {
        let t_end = 2.0 * PI / nu_mode;
        let mut t = 0.0;
        while t < t_end + sample_dt / 2.0 {
            out.push(sample(t, alpha0 * C64::from_polar(1.0, -nu_mode * t)));
            t += sample_dt;
        }
        return Ok(out);
    }

    let mut alpha = alpha0;
    let mut t_now = seq.events()[0].t;
    for (i, e) in seq.events().iter().enumerate() {
        // free rotation up to this event, sampled; the segment start is
        // already present as the previous post-kick sample
        let mut t = t_now + sample_dt;
        while t < e.t {
            out.push(sample(
                t,
                alpha * C64::from_polar(1.0, -nu_mode * (t - t_now)),
            ));
            t += sample_dt;
        }
        alpha *= C64::from_polar(1.0, -nu_mode * (e.t - t_now));
        t_now = e.t;
        if i > 0 || e.t == seq.events()[0].t {
            out.push(sample(e.t, alpha)); // pre-kick sample
        }
        alpha -= C64::new(0.0, kick_scale * e.z);
        out.push(sample(e.t, alpha)); // post-kick sample
    }
    Ok(out)
}

/// Global phase accumulated by the kicked motion relative to free evolution:
/// xi = -Sum_{k<m} p_m p_k sin(theta_k - theta_m) - Re[alpha0 Sum p_k e^{-i theta_k}].
pub fn accumulated_phase(seq: &PulseSequence, nu_mode: f64, kick_scale: f64, alpha0: C64) -> f64 {
    let (th, _) = event_angles(seq, nu_mode);
    let p: Vec<f64> = seq.events().iter().map(|e| kick_scale * e.z).collect();
    let mut xi = 0.0;
    for m in 1..p.len() {
        for k in 0..m {
            xi -= p[m] * p[k] * (th[k] - th[m]).sin();
        }
    }
    let mut s = C64::new(0.0, 0.0);
    for (pk, &a) in p.iter().zip(&th) {
        s += C64::from_polar(*pk, -a);
    }
    xi - (alpha0 * s).re
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Protocol {
    I,
    II,
    Custom,
}

/// A solved gate schedule. `theta` is the achieved two-qubit phase;
/// residuals are the commensurability magnitudes on re-substitution.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GateDesign {
    pub protocol: Protocol,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    pub tau1: f64,
    pub tau2: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau3: Option<f64>,
    #[serde(rename = "scale_N")]
    pub scale_n: usize,
    #[serde(rename = "total_time_T")]
    pub total_time_t: f64,
    pub theta: f64,
    #[serde(rename = "residual_Cc")]
    pub residual_cc: f64,
    #[serde(rename = "residual_Cr")]
    pub residual_cr: f64,
    #[serde(rename = "pulse_pairs_Np")]
    pub pulse_pairs_np: usize,
}

impl GateDesign {
    /// Re-expand the kick schedule this design describes. Custom designs
    /// carry no schedule and expand to free evolution.
    pub fn expand(&self) -> Result<PulseSequence> {
        match self.protocol {
            Protocol::I => {
                let gamma = self.gamma.ok_or_else(|| {
                    IonGateError::DomainError("Protocol I design without gamma".into())
                })?;
                expand_protocol_i(gamma, self.tau1, self.tau2, self.scale_n)
            }
            Protocol::II => {
                let tau3 = self.tau3.ok_or_else(|| {
                    IonGateError::DomainError("Protocol II design without tau3".into())
                })?;
                expand_protocol_ii(self.tau1, self.tau2, tau3, self.scale_n)
            }
            Protocol::Custom => Ok(PulseSequence::empty()),
        }
    }
}

/// Protocol I schedule (z, t) = N{(gamma, -tau1), (1, -tau2), (-1, tau2), (-gamma, tau1)}.
pub fn expand_protocol_i(
    gamma: f64,
    tau1: f64,
    tau2: f64,
    scale_n: usize,
) -> Result<PulseSequence> {
    if !(gamma > 0.0 && gamma < 1.0 + 1e-12) {
        return Err(IonGateError::DomainError(format!(
            "gamma = {gamma} outside (0, 1]"
        )));
    }
    if !(tau1 > tau2 && tau2 > 0.0) {
        return Err(IonGateError::DomainError(format!(
            "need tau1 > tau2 > 0, got ({tau1}, {tau2})"
        )));
    }
    let n = scale_n as f64;
    PulseSequence::new(vec![
        KickEvent {
            z: gamma * n,
            t: -tau1,
        },
        KickEvent { z: n, t: -tau2 },
        KickEvent { z: -n, t: tau2 },
        KickEvent {
            z: -gamma * n,
            t: tau1,
        },
    ])
}

/// Protocol II schedule (z, t) = N{(-2,-tau1), (3,-tau2), (-2,-tau3),
/// (2,tau3), (-3,tau2), (2,tau1)}.
pub fn expand_protocol_ii(
    tau1: f64,
    tau2: f64,
    tau3: f64,
    scale_n: usize,
) -> Result<PulseSequence> {
    if !(tau1 > tau2 && tau2 > tau3 && tau3 > 0.0) {
        return Err(IonGateError::DomainError(format!(
            "need tau1 > tau2 > tau3 > 0, got ({tau1}, {tau2}, {tau3})"
        )));
    }
    let n = scale_n as f64;
    PulseSequence::new(vec![
        KickEvent {
            z: -2.0 * n,
            t: -tau1,
        },
        KickEvent {
            z: 3.0 * n,
            t: -tau2,
        },
        KickEvent {
            z: -2.0 * n,
            t: -tau3,
        },
        KickEvent {
            z: 2.0 * n,
            t: tau3,
        },
        KickEvent {
            z: -3.0 * n,
            t: tau2,
        },
        KickEvent {
            z: 2.0 * n,
            t: tau1,
        },
    ])
}

/// Branch-start angle: smallest u > pi with sqrt3 sin u = sin(sqrt3 u),
/// where the Protocol I solution branch emerges as tau2 -> 0.
fn protocol_i_branch_start() -> f64 {
    brent(
        |u| SQRT3 * u.sin() - (SQRT3 * u).sin(),
        3.2,
        3.6,
        1e-15,
        200,
    )
    .expect("bracketed by construction")
}

/// Solve the Protocol I branch equation
/// sin(sqrt3 u2) sin(u1) = sin(u2) sin(sqrt3 u1) for u1 given u2 (angles
/// u = nu tau), scanning [u1c - 0.05, u1c + 1.3] for the first root with
/// sin(u1) < 0 (so that gamma = -sin(u2)/sin(u1) > 0).
fn protocol_i_u1(u2: f64, u1c: f64) -> Result<f64> {
    let h = |u1: f64| (SQRT3 * u2).sin() * u1.sin() - u2.sin() * (SQRT3 * u1).sin();
    let lo = u1c - 0.05;
    let hi = u1c + 1.3;
    let scan = 128;
    let mut a = lo;
    let mut fa = h(a);
    for i in 1..=scan {
        let b = lo + (hi - lo) * i as f64 / scan as f64;
        let fb = h(b);
        if fa * fb <= 0.0 {
            let root = brent(h, a, b, 1e-15, 200)?;
            if root.sin() < 0.0 {
                return Ok(root);
            }
        }
        a = b;
        fa = fb;
    }
    Err(IonGateError::NoConvergence(format!(
        "no Protocol I branch root for u2 = {u2}"
    )))
}

fn build_design_i(eta: f64, nu: f64, u1: f64, u2: f64, scale_n: usize) -> Result<GateDesign> {
    let gamma = -u2.sin() / u1.sin();
    let tau1 = u1 / nu;
    let tau2 = u2 / nu;
    let seq = expand_protocol_i(gamma, tau1, tau2, scale_n)?;
    let (cc, cr) = commensurability(&seq, nu);
    let theta = gate_phase(&seq, eta, nu);
    Ok(GateDesign {
        protocol: Protocol::I,
        gamma: Some(gamma),
        tau1,
        tau2,
        tau3: None,
        scale_n,
        total_time_t: seq.total_time(),
        theta,
        residual_cc: cc.norm(),
        residual_cr: cr.norm(),
        // gamma is a real weight; the nearest whole pulse-pair count is reported
        pulse_pairs_np: seq.total_weight().round() as usize,
    })
}

/// Design a Protocol I schedule hitting `target_theta` exactly.
///
/// Strategy: eliminate gamma through C_c = 0, reduce C_r = 0 to a single
/// branch equation parameterized by u2 = nu tau2, locate the gamma in (0, 1]
/// segment, pick the smallest integer N with N^2 max Theta_1 >= target, then
/// solve N^2 Theta_1(u2) = target by bisection on the branch.
pub fn design_protocol_i(eta: f64, nu: f64, target_theta: f64) -> Result<GateDesign> {
    if !(target_theta > 0.0) {
        return Err(IonGateError::DomainError(format!(
            "target gate phase {target_theta} must be > 0 (the Protocol I branch \
             accumulates positive phase; flip the qubit basis for negative targets)"
        )));
    }
    if !(eta > 0.0) || !(nu > 0.0) {
        return Err(IonGateError::DomainError("need eta > 0 and nu > 0".into()));
    }
    let u1c = protocol_i_branch_start();

    // upper end of the physical segment: gamma(u2) = 1
    let gamma_minus_1 = |u2: f64| -> f64 {
        match protocol_i_u1(u2, u1c) {
            Ok(u1) => -u2.sin() / u1.sin() - 1.0,
            Err(_) => f64::NAN,
        }
    };
    let u2_max = brent(gamma_minus_1, 1e-4, 0.35, 1e-13, 200)?;

    let theta1 = |u2: f64| -> Result<f64> {
        let u1 = protocol_i_u1(u2, u1c)?;
        Ok(build_design_i(eta, nu, u1, u2, 1)?.theta)
    };
    let theta1_max = theta1(u2_max)?;
    if !(theta1_max > 0.0) {
        return Err(IonGateError::NoConvergence(format!(
            "Protocol I branch yields non-positive max phase {theta1_max}"
        )));
    }
    let scale_n = (target_theta / theta1_max).sqrt().ceil().max(1.0) as usize;
    let n2 = (scale_n * scale_n) as f64;

    // solve N^2 Theta_1(u2) = target on (0, u2_max]
    let f = |u2: f64| theta1(u2).map_or(f64::NAN, |t| n2 * t - target_theta);
    let u2 = brent(f, 1e-6, u2_max, 1e-14, 200)?;
    let u1 = protocol_i_u1(u2, u1c)?;
    let design = build_design_i(eta, nu, u1, u2, scale_n)?;
    if design.residual_cc > 1e-9 || design.residual_cr > 1e-9 {
        return Err(IonGateError::NoConvergence(format!(
            "Protocol I residuals ({:.3e}, {:.3e}) above 1e-9",
            design.residual_cc, design.residual_cr
        )));
    }
    Ok(design)
}

/// Solve the Protocol II commensurability system
///   -2 sin(u1) + 3 sin(u2) - 2 sin(u3) = 0
///   -2 sin(s u1) + 3 sin(s u2) - 2 sin(s u3) = 0,  s = sqrt3
/// for (u2, u3) given u1, by damped Newton: first from the small-u1
/// asymptotic start (0.8835, 0.3252) u1, then from a 32-point restart grid.
fn protocol_ii_solve(u1: f64) -> Result<(f64, f64)> {
    let f = |u2: f64, u3: f64| {
        (
            -2.0 * u1.sin() + 3.0 * u2.sin() - 2.0 * u3.sin(),
            -2.0 * (SQRT3 * u1).sin() + 3.0 * (SQRT3 * u2).sin() - 2.0 * (SQRT3 * u3).sin(),
        )
    };
    let jac = |u2: f64, u3: f64| {
        [
            [3.0 * u2.cos(), -2.0 * u3.cos()],
            [
                3.0 * SQRT3 * (SQRT3 * u2).cos(),
                -2.0 * SQRT3 * (SQRT3 * u3).cos(),
            ],
        ]
    };
    let ok = |u2: f64, u3: f64| u3 > 0.0 && u2 > u3 && u1 > u2;

    let mut starts = vec![(0.8835 * u1, 0.3252 * u1)];
    for i in 0..8 {
        for j in 0..4 {
            // 32 restarts filling the 0 < u3 < u2 < u1 wedge
            let u2 = (i as f64 + 1.0) / 9.0 * u1;
            let u3 = (j as f64 + 1.0) / 5.0 * u2;
            starts.push((u2, u3));
        }
    }
    for s in starts {
        if let Some((u2, u3)) = newton2(f, jac, s, 1e-13, 200) {
            if ok(u2, u3) {
                return Ok((u2, u3));
            }
        }
    }
    Err(IonGateError::NoConvergence(format!(
        "Protocol II system unsolved at u1 = {u1} after 32 restarts"
    )))
}

/// Design a Protocol II schedule of total duration `total_time` reaching at
/// least `target_theta`: tau1 = T/2 is fixed, the commensurability system
/// determines (tau2, tau3), and N is the smallest integer with
/// N^2 Theta_1 >= target.
pub fn design_protocol_ii(
    eta: f64,
    nu: f64,
    total_time: f64,
    target_theta: f64,
) -> Result<GateDesign> {
    if !(total_time > 0.0) {
        return Err(IonGateError::DomainError(format!(
            "T = {total_time} must be > 0"
        )));
    }
    if !(target_theta > 0.0) {
        return Err(IonGateError::DomainError(format!(
            "target gate phase {target_theta} must be > 0"
        )));
    }
    if !(eta > 0.0) || !(nu > 0.0) {
        return Err(IonGateError::DomainError("need eta > 0 and nu > 0".into()));
    }
    let u1 = nu * total_time / 2.0;
    let (u2, u3) = protocol_ii_solve(u1)?;
    let (tau1, tau2, tau3) = (u1 / nu, u2 / nu, u3 / nu);

    let seq1 = expand_protocol_ii(tau1, tau2, tau3, 1)?;
    let theta1 = gate_phase(&seq1, eta, nu);
    if theta1.abs() < 1e-300 {
        return Err(IonGateError::NoConvergence(
            "Protocol II branch phase vanished".into(),
        ));
    }
    let scale_n = (target_theta / theta1.abs()).sqrt().ceil().max(1.0) as usize;

    let seq = expand_protocol_ii(tau1, tau2, tau3, scale_n)?;
    let (cc, cr) = commensurability(&seq, nu);
    let design = GateDesign {
        protocol: Protocol::II,
        gamma: None,
        tau1,
        tau2,
        tau3: Some(tau3),
        scale_n,
        total_time_t: seq.total_time(),
        theta: gate_phase(&seq, eta, nu),
        residual_cc: cc.norm(),
        residual_cr: cr.norm(),
        pulse_pairs_np: seq.total_weight().round() as usize,
    };
    if design.residual_cc > 1e-9 || design.residual_cr > 1e-9 {
        return Err(IonGateError::NoConvergence(format!(
            "Protocol II residuals ({:.3e}, {:.3e}) above 1e-9",
            design.residual_cc, design.residual_cr
        )));
    }
    Ok(design)
}

/// Maximum stretch-mode phase-space excursion (X_r, P_r) in ground-state
/// units, over the worst qubit configuration (s1, s2) = (+1, -1) and densely
/// sampled time, starting from the motional ground state.
pub fn max_excursion(seq: &PulseSequence, eta: f64, nu: f64) -> (f64, f64) {
    if seq.is_empty() {
        return (0.0, 0.0);
    }
    let eta_r = eta * (4.0 / 3.0f64).powf(0.25);
    let nu_r = SQRT3 * nu;
    let kick_scale = 2.0 * eta_r; // z eta_r (s1 - s2) at (+1, -1)
    let dt = 2.0 * PI / nu_r / 512.0;
    let samples = coherent_trajectory(
        seq,
        nu_r,
        kick_scale,
        C64::new(0.0, 0.0),
        dt,
        TrajectoryMode::Stretch,
        (1, -1),
    )
    .expect("positive sample_dt");
    let mut xr = 0.0f64;
    let mut pr = 0.0f64;
    for s in &samples {
        xr = xr.max(s.x.abs());
        pr = pr.max(s.p.abs());
    }
    (xr, pr)
}

/// The factorized gate unitary U = e^{i Theta s1z s2z} e^{-i nu_c T a+a}
/// e^{-i nu_r T b+b}: its three parameters.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct FactorizedGate {
    pub theta: f64,
    /// free-evolution angle nu_c T of the COM mode
    pub com_angle: f64,
    /// free-evolution angle nu_r T of the stretch mode
    pub stretch_angle: f64,
}

impl FactorizedGate {
    /// Phase e^{i theta s1 s2} acquired by qubit configuration (s1, s2).
    pub fn qubit_phase(&self, s1: i8, s2: i8) -> C64 {
        C64::from_polar(1.0, self.theta * s1 as f64 * s2 as f64)
    }
}

/// Factor parameters of an accepted design (DesignRejected when the
/// commensurability residuals exceed 1e-9).
pub fn factorized_gate(design: &GateDesign, nu: f64) -> Result<FactorizedGate> {
    if design.residual_cc > 1e-9 || design.residual_cr > 1e-9 {
        return Err(IonGateError::DesignRejected(format!(
            "residuals ({:.3e}, {:.3e}) exceed 1e-9",
            design.residual_cc, design.residual_cr
        )));
    }
    Ok(FactorizedGate {
        theta: design.theta,
        com_angle: nu * design.total_time_t,
        stretch_angle: SQRT3 * nu * design.total_time_t,
    })
}
