//! Command-line front end: design pulse schedules, verify them against exact
//! Fock-space simulation, and emit trajectory / sweep tables for plotting.
//!
//! Exit codes: 0 success, 2 usage error, 3 numerical failure, 4 verification
//! mismatch.

use std::fs;
use std::io::{self, Write as IoWrite};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C64;

use ion_gate_forge::cz95::{
    cz95_gate, register_index, truth_table, CZ95Register, IonInternalLevel,
};
use ion_gate_forge::error::IonGateError;
use ion_gate_forge::fastgate::{
    coherent_trajectory, design_protocol_i, design_protocol_ii, max_excursion, GateDesign,
    TrajectoryMode,
};
use ion_gate_forge::fockspace::{FockSpace, StateVector};
use ion_gate_forge::hamiltonians::IonTrapConfig;
use ion_gate_forge::verify::{
    extract_phases, kick_scales, phase_distance, thermal_gate_test, MotionalInit, SimulationPlan,
    CONFIGS,
};

/// All times are dimensionless (nu t); the trap frequency is the unit.
const NU: f64 = 1.0;

const EXIT_USAGE: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;
const EXIT_MISMATCH: u8 = 4;

#[derive(Parser)]
#[command(
    name = "ion-gate-forge",
    version,
    about = "Trapped-ion two-qubit gate design and verification toolkit"
)]
struct Cli {
    /// key=value configuration file (falls back to $ION_GATE_FORGE_CONFIG)
    #[arg(long, global = true, value_name = "FILE")]
    config_file: Option<PathBuf>,

    /// output path; "-" streams to stdout (the default)
    #[arg(short, long, global = true, value_name = "PATH")]
    output: Option<String>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProtoArg {
    #[value(name = "I", alias = "i", alias = "1")]
    I,
    #[value(name = "II", alias = "ii", alias = "2")]
    II,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConfigArg {
    Pp,
    Pm,
    Mp,
    Mm,
}

impl ConfigArg {
    fn signs(self) -> (i8, i8) {
        match self {
            ConfigArg::Pp => (1, 1),
            ConfigArg::Pm => (1, -1),
            ConfigArg::Mp => (-1, 1),
            ConfigArg::Mm => (-1, -1),
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve a pulse schedule and print it as JSON
    Design {
        #[arg(long, value_enum)]
        protocol: ProtoArg,
        /// total gate duration nu*T (required for protocol II)
        #[arg(long = "T", value_name = "NU_T")]
        total_time: Option<f64>,
        /// Lamb-Dicke parameter override
        #[arg(long)]
        eta: Option<f64>,
        /// target two-qubit phase override
        #[arg(long)]
        target_theta: Option<f64>,
    },
    /// Re-simulate a design file exactly and report the extracted phases
    Verify {
        design_file: PathBuf,
        /// also decompose a thermal state of this mean occupation
        #[arg(long)]
        nbar: Option<f64>,
        /// Fock truncation override applied to both modes
        #[arg(long)]
        dims: Option<usize>,
        /// Lamb-Dicke parameter override
        #[arg(long)]
        eta: Option<f64>,
    },
    /// Emit the coherent phase-space trajectory of a design as CSV
    Trajectory {
        design_file: PathBuf,
        /// qubit configuration (s1, s2): pp, pm, mp or mm
        #[arg(long, value_enum, default_value = "pp")]
        config: ConfigArg,
        /// initial coherent amplitude, "RE", "RE,IM" or "RE+IMi"
        #[arg(long, default_value = "0")]
        alpha0: String,
        /// sampling step in nu*t
        #[arg(long, default_value_t = 0.02)]
        dt: f64,
        /// Lamb-Dicke parameter override
        #[arg(long)]
        eta: Option<f64>,
    },
    /// Sweep protocol II over gate durations and emit a CSV table
    Sweep {
        #[arg(long, value_enum)]
        protocol: ProtoArg,
        /// smallest nu*T
        #[arg(long)]
        tmin: f64,
        /// largest nu*T
        #[arg(long)]
        tmax: f64,
        /// number of log-spaced durations
        #[arg(long, default_value_t = 25)]
        points: usize,
        /// worker threads (default: all cores)
        #[arg(long)]
        jobs: Option<usize>,
        /// Lamb-Dicke parameter override
        #[arg(long)]
        eta: Option<f64>,
        /// target two-qubit phase override
        #[arg(long)]
        target_theta: Option<f64>,
    },
    /// Evaluate the three-pulse controlled-phase gate on two ions
    Cz95 {
        /// print the four-input truth table
        #[arg(long, conflicts_with = "input")]
        truth_table: bool,
        /// single input state: gg, ge, eg or ee
        #[arg(long)]
        input: Option<String>,
        /// Lamb-Dicke parameter override
        #[arg(long)]
        eta: Option<f64>,
    },
}

/// Run-wide defaults, overridable by a key=value config file and then by
/// command-line flags.
#[derive(Debug, Clone)]
struct RunConfig {
    eta: f64,
    target_theta: f64,
    dim_com: Option<usize>,
    dim_str: Option<usize>,
    output: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            eta: 0.178,
            target_theta: std::f64::consts::FRAC_PI_4,
            dim_com: None,
            dim_str: None,
            output: None,
        }
    }
}

impl RunConfig {
    fn load(explicit: Option<&Path>) -> Result<Self, String> {
        let mut rc = RunConfig::default();
        let env_path = std::env::var_os("ION_GATE_FORGE_CONFIG").map(PathBuf::from);
        let path = match (explicit, &env_path) {
            (Some(p), _) => Some(p.to_path_buf()),
            (None, Some(p)) => Some(p.clone()),
            (None, None) => None,
        };
        let Some(path) = path else { return Ok(rc) };
        let text = fs::read_to_string(&path)
            .map_err(|e| format!("cannot read config file {}: {e}", path.display()))?;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("{}:{}: expected key=value", path.display(), lineno + 1))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |e: String| format!("{}:{}: {key}: {e}", path.display(), lineno + 1);
            match key {
                "eta" => rc.eta = value.parse::<f64>().map_err(|e| bad(e.to_string()))?,
                "target_theta" => {
                    rc.target_theta = value.parse::<f64>().map_err(|e| bad(e.to_string()))?
                }
                "dim_com" => {
                    rc.dim_com = Some(value.parse::<usize>().map_err(|e| bad(e.to_string()))?)
                }
                "dim_str" => {
                    rc.dim_str = Some(value.parse::<usize>().map_err(|e| bad(e.to_string()))?)
                }
                "output" => rc.output = Some(value.to_string()),
                _ => {
                    return Err(format!(
                        "{}:{}: unknown config key `{key}`",
                        path.display(),
                        lineno + 1
                    ))
                }
            }
        }
        Ok(rc)
    }
}

fn exit_for(err: &IonGateError) -> u8 {
    match err {
        IonGateError::DomainError(_)
        | IonGateError::IndexOutOfRange(_)
        | IonGateError::BasisMismatch(_) => EXIT_USAGE,
        _ => EXIT_NUMERICAL,
    }
}

fn open_output(path: Option<&str>) -> io::Result<Box<dyn IoWrite>> {
    match path {
        None | Some("-") => Ok(Box::new(io::stdout().lock())),
        Some(p) => Ok(Box::new(fs::File::create(p)?)),
    }
}

/// Parse "RE", "RE,IM", "RE+IMi" / "RE-IMi" (also plain "IMi", "i", "-i").
fn parse_complex(s: &str) -> Result<C64, String> {
    let s = s.trim().replace(' ', "");
    if s.is_empty() {
        return Err("empty amplitude".into());
    }
    if let Some((re, im)) = s.split_once(',') {
        let re = re.parse::<f64>().map_err(|e| format!("{re}: {e}"))?;
        let im = im.parse::<f64>().map_err(|e| format!("{im}: {e}"))?;
        return Ok(C64::new(re, im));
    }
    if let Some(body) = s.strip_suffix(['i', 'j']) {
        // split RE and IM at the last +/- that is not an exponent sign
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            if (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
                split = Some(k);
                break;
            }
        }
        let (re_str, im_str) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let re = re_str
            .parse::<f64>()
            .map_err(|e| format!("{re_str}: {e}"))?;
        let im = match im_str {
            "" | "+" => 1.0,
            "-" => -1.0,
            other => other.parse::<f64>().map_err(|e| format!("{other}: {e}"))?,
        };
        return Ok(C64::new(re, im));
    }
    s.parse::<f64>()
        .map(|re| C64::new(re, 0.0))
        .map_err(|e| format!("{s}: {e}"))
}

fn load_design(path: &Path) -> Result<GateDesign, String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read design file {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

/// Fock truncation large enough for the worst-case coherent amplitude the
/// sequence can reach in each mode, from the exact kick-prefix trajectory.
fn auto_dims(
    seq: &ion_gate_forge::fastgate::PulseSequence,
    cfg: &IonTrapConfig,
    a0: f64,
) -> (usize, usize) {
    let mut amax = [0.0f64; 2];
    for &(_, s1, s2) in &CONFIGS {
        let (kc, kr) = kick_scales(cfg, s1, s2);
        for (slot, (nu_mode, scale)) in [(cfg.nu_c(), kc), (cfg.nu_r(), kr)].into_iter().enumerate()
        {
            let mut alpha = C64::new(0.0, 0.0);
            let mut t_now = seq.events().first().map_or(0.0, |e| e.t);
            for e in seq.events() {
                alpha *= C64::from_polar(1.0, -nu_mode * (e.t - t_now));
                t_now = e.t;
                alpha -= C64::new(0.0, scale * e.z);
                amax[slot] = amax[slot].max(alpha.norm());
            }
        }
    }
    let need = |amax: f64| -> usize {
        let a = a0 + amax;
        ((a * a + 7.0 * a + 12.0).ceil() as usize).max(16)
    };
    (need(amax[0]), need(amax[1]))
}

fn emit_json<T: serde::Serialize>(out: Option<&str>, value: &T) -> io::Result<()> {
    let mut w = open_output(out)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)
}

fn cmd_design(
    protocol: ProtoArg,
    total_time: Option<f64>,
    rc: &RunConfig,
    out: Option<&str>,
) -> u8 {
    let design = match protocol {
        ProtoArg::I => design_protocol_i(rc.eta, NU, rc.target_theta),
        ProtoArg::II => {
            let Some(t) = total_time else {
                eprintln!("error: protocol II requires --T <NU_T>");
                return EXIT_USAGE;
            };
            design_protocol_ii(rc.eta, NU, t, rc.target_theta)
        }
    };
    match design {
        Ok(d) => {
            eprintln!(
                "total gate time: nu T = {:.6} = {:.6} (2 pi / nu); Theta = {:.12}",
                d.total_time_t,
                d.total_time_t / std::f64::consts::TAU,
                d.theta
            );
            if let Err(e) = emit_json(out, &d) {
                eprintln!("error: {e}");
                return EXIT_NUMERICAL;
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_for(&e)
        }
    }
}

fn cmd_verify(
    design_file: &Path,
    nbar: Option<f64>,
    dims: Option<usize>,
    rc: &RunConfig,
    out: Option<&str>,
) -> u8 {
    let design = match load_design(design_file) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let run = || -> Result<(ion_gate_forge::verify::PhaseReport, bool), IonGateError> {
        let seq = design.expand()?;
        let cfg = IonTrapConfig::new(NU, rc.eta, 0.0, 0.0, 2)?;
        // headroom covers the largest member of the standard motional
        // battery (number state n = 5) and, for a thermal run, every number
        // component with population above 1e-6 plus the tail-mass guard of
        // the thermal-state constructor (tail <= 1e-10)
        let mut a0 = 5.0f64.sqrt();
        let mut floor = 0usize;
        if let Some(nbar) = nbar.filter(|&n| n > 0.0) {
            let log_ratio = (nbar / (1.0 + nbar)).ln();
            let n_max = ((1e-6 * (1.0 + nbar)).ln() / log_ratio).ceil().max(0.0);
            a0 = a0.max(n_max.sqrt());
            floor = (10.0 * std::f64::consts::LN_10 / -log_ratio).ceil() as usize + 1;
        }
        let (auto_c, auto_r) = auto_dims(&seq, &cfg, a0);
        let dim_com = dims.or(rc.dim_com).unwrap_or(auto_c.max(floor));
        let dim_str = dims.or(rc.dim_str).unwrap_or(auto_r.max(floor));
        let plan = SimulationPlan {
            seq: seq.clone(),
            cfg,
            dim_com,
            dim_str,
            initial: MotionalInit::Coherent {
                alpha_c: C64::new(0.0, 0.0),
                alpha_r: C64::new(0.0, 0.0),
            },
        };
        let mut report = extract_phases(&plan)?;
        if let Some(nbar) = nbar {
            let thermal = SimulationPlan {
                initial: MotionalInit::Thermal {
                    nbar_c: nbar,
                    nbar_r: nbar,
                },
                ..plan.clone()
            };
            let spread = thermal_gate_test(&thermal, &design)?;
            report.motional_dependence = report.motional_dependence.max(spread);
        }
        let ok = phase_distance(report.theta_extracted, design.theta) <= 1e-6
            && report.motional_dependence <= 1e-6;
        Ok((report, ok))
    };
    match run() {
        Ok((report, ok)) => {
            if let Err(e) = emit_json(out, &report) {
                eprintln!("error: {e}");
                return EXIT_NUMERICAL;
            }
            if ok {
                0
            } else {
                eprintln!("verification mismatch: extracted phases disagree with the design");
                EXIT_MISMATCH
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_for(&e)
        }
    }
}

fn cmd_trajectory(
    design_file: &Path,
    config: ConfigArg,
    alpha0: &str,
    dt: f64,
    rc: &RunConfig,
    out: Option<&str>,
) -> u8 {
    let design = match load_design(design_file) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let alpha0 = match parse_complex(alpha0) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: --alpha0 {e}");
            return EXIT_USAGE;
        }
    };
    let run = || -> Result<Vec<ion_gate_forge::fastgate::TrajectorySample>, IonGateError> {
        let seq = design.expand()?;
        let cfg = IonTrapConfig::new(NU, rc.eta, 0.0, 0.0, 2)?;
        let (s1, s2) = config.signs();
        let (kc, kr) = kick_scales(&cfg, s1, s2);
        let mut rows = coherent_trajectory(
            &seq,
            cfg.nu_c(),
            kc,
            alpha0,
            dt,
            TrajectoryMode::Com,
            (s1, s2),
        )?;
        rows.extend(coherent_trajectory(
            &seq,
            cfg.nu_r(),
            kr,
            alpha0,
            dt,
            TrajectoryMode::Stretch,
            (s1, s2),
        )?);
        Ok(rows)
    };
    match run() {
        Ok(rows) => {
            let write = || -> io::Result<()> {
                let mut w = csv::Writer::from_writer(open_output(out)?);
                w.write_record(["t", "mode", "s1", "s2", "X", "P"])?;
                for r in &rows {
                    w.write_record([
                        format!("{}", r.t),
                        r.mode.to_string(),
                        format!("{}", r.qubit_config.0),
                        format!("{}", r.qubit_config.1),
                        format!("{}", r.x),
                        format!("{}", r.p),
                    ])?;
                }
                w.flush()
            };
            if let Err(e) = write() {
                eprintln!("error: {e}");
                return EXIT_NUMERICAL;
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_for(&e)
        }
    }
}

fn cmd_sweep(
    protocol: ProtoArg,
    tmin: f64,
    tmax: f64,
    points: usize,
    jobs: Option<usize>,
    rc: &RunConfig,
    out: Option<&str>,
) -> u8 {
    if protocol != ProtoArg::II {
        eprintln!("error: sweep supports --protocol II only");
        return EXIT_USAGE;
    }
    if !(tmin > 0.0 && tmax > tmin) {
        eprintln!("error: need 0 < tmin < tmax");
        return EXIT_USAGE;
    }
    if points == 0 {
        eprintln!("error: need at least one point");
        return EXIT_USAGE;
    }
    let ts: Vec<f64> = (0..points)
        .map(|i| {
            if points == 1 {
                tmin
            } else {
                tmin * (tmax / tmin).powf(i as f64 / (points - 1) as f64)
            }
        })
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build();
    let pool = match pool {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_NUMERICAL;
        }
    };
    use rayon::prelude::*;
    let (eta, target) = (rc.eta, rc.target_theta);
    // (Np, Xr, Pr, residual_theta) per duration; None marks non-convergence
    let rows: Vec<Option<(usize, f64, f64, f64)>> = pool.install(|| {
        ts.par_iter()
            .map(|&t| {
                let design = design_protocol_ii(eta, NU, t, target).ok()?;
                let seq = design.expand().ok()?;
                let (xr, pr) = max_excursion(&seq, eta, NU);
                Some((design.pulse_pairs_np, xr, pr, design.theta - target))
            })
            .collect()
    });

    let write = || -> io::Result<()> {
        let mut w = csv::Writer::from_writer(open_output(out)?);
        w.write_record(["T", "Np", "Xr", "Pr", "residual_theta"])?;
        for (t, row) in ts.iter().zip(&rows) {
            match row {
                Some((np, xr, pr, res)) => w.write_record([
                    format!("{t}"),
                    format!("{np}"),
                    format!("{xr}"),
                    format!("{pr}"),
                    format!("{res}"),
                ])?,
                None => w.write_record([&format!("{t}"), "NA", "NA", "NA", "NA"])?,
            }
        }
        w.flush()
    };
    if let Err(e) = write() {
        eprintln!("error: {e}");
        return EXIT_NUMERICAL;
    }
    let converged = rows.iter().filter(|r| r.is_some()).count();
    if (converged as f64) < 0.9 * points as f64 {
        eprintln!("error: only {converged}/{points} sweep points converged (need 90%)");
        EXIT_NUMERICAL
    } else {
        0
    }
}

fn cmd_cz95(want_table: bool, input: Option<&str>, rc: &RunConfig, out: Option<&str>) -> u8 {
    if !want_table && input.is_none() {
        eprintln!("error: pass --truth-table or --input {{gg,ge,eg,ee}}");
        return EXIT_USAGE;
    }
    let run = || -> Result<(serde_json::Value, bool), IonGateError> {
        let reg = CZ95Register::new(2, FockSpace::new(8)?, rc.eta, 0.05)?;
        let gate = cz95_gate(&reg, 0, 1)?;
        if want_table {
            let tt = truth_table(&reg, &gate)?;
            let expect = [1.0, 1.0, 1.0, -1.0];
            let ok = tt
                .phases
                .iter()
                .zip(expect)
                .all(|(p, e)| (p - C64::new(e, 0.0)).norm() <= 1e-9);
            let value = serde_json::json!({
                "inputs": ["gg", "ge", "eg", "ee"],
                "phases": tt.phases.iter().map(|p| [p.re, p.im]).collect::<Vec<_>>(),
                "leakage": tt.leakage,
            });
            return Ok((value, ok));
        }
        let input = input.expect("checked above");
        let levels: Vec<IonInternalLevel> = input
            .chars()
            .map(|c| match c {
                'g' => Ok(IonInternalLevel::G),
                'e' => Ok(IonInternalLevel::E0),
                other => Err(IonGateError::DomainError(format!(
                    "input level `{other}` (want g or e)"
                ))),
            })
            .collect::<Result<_, _>>()?;
        if levels.len() != 2 {
            return Err(IonGateError::DomainError(format!(
                "input `{input}` must name exactly two ions"
            )));
        }
        let idx = register_index(&reg, &levels, 0);
        let state = StateVector::basis_state(reg.basis(), idx);
        let final_state = gate.apply(&state)?;
        let amp = final_state.amplitudes()[idx];
        let expect = if input == "ee" { -1.0 } else { 1.0 };
        let ok = (amp - C64::new(expect, 0.0)).norm() <= 1e-9;
        let value = serde_json::json!({
            "input": input,
            "amplitude": [amp.re, amp.im],
            "leakage": 1.0 - amp.norm_sqr(),
        });
        Ok((value, ok))
    };
    match run() {
        Ok((value, ok)) => {
            if let Err(e) = emit_json(out, &value) {
                eprintln!("error: {e}");
                return EXIT_NUMERICAL;
            }
            if ok {
                0
            } else {
                eprintln!("verification mismatch: controlled-phase pattern violated");
                EXIT_MISMATCH
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_for(&e)
        }
    }
}

fn run(cli: Cli) -> u8 {
    let mut rc = match RunConfig::load(cli.config_file.as_deref()) {
        Ok(rc) => rc,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    if let Some(o) = cli.output {
        rc.output = Some(o);
    }
    let out = rc.output.clone();
    let out = out.as_deref();

    match cli.cmd {
        Cmd::Design {
            protocol,
            total_time,
            eta,
            target_theta,
        } => {
            if let Some(eta) = eta {
                rc.eta = eta;
            }
            if let Some(t) = target_theta {
                rc.target_theta = t;
            }
            cmd_design(protocol, total_time, &rc, out)
        }
        Cmd::Verify {
            design_file,
            nbar,
            dims,
            eta,
        } => {
            if let Some(eta) = eta {
                rc.eta = eta;
            }
            cmd_verify(&design_file, nbar, dims, &rc, out)
        }
        Cmd::Trajectory {
            design_file,
            config,
            alpha0,
            dt,
            eta,
        } => {
            if let Some(eta) = eta {
                rc.eta = eta;
            }
            cmd_trajectory(&design_file, config, &alpha0, dt, &rc, out)
        }
        Cmd::Sweep {
            protocol,
            tmin,
            tmax,
            points,
            jobs,
            eta,
            target_theta,
        } => {
            if let Some(eta) = eta {
                rc.eta = eta;
            }
            if let Some(t) = target_theta {
                rc.target_theta = t;
            }
            cmd_sweep(protocol, tmin, tmax, points, jobs, &rc, out)
        }
        Cmd::Cz95 {
            truth_table,
            input,
            eta,
        } => {
            if let Some(eta) = eta {
                rc.eta = eta;
            }
            cmd_cz95(truth_table, input.as_deref(), &rc, out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(run(cli))
}

#[cfg(test)]
mod tests {
    use super::parse_complex;
    use num_complex::Complex64 as C64;

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("1.5").unwrap(), C64::new(1.5, 0.0));
        assert_eq!(parse_complex("1,0.3").unwrap(), C64::new(1.0, 0.3));
        assert_eq!(parse_complex("1+0.3i").unwrap(), C64::new(1.0, 0.3));
        assert_eq!(parse_complex("-0.3j").unwrap(), C64::new(0.0, -0.3));
        assert_eq!(parse_complex("2e-2-1e-1i").unwrap(), C64::new(0.02, -0.1));
        assert_eq!(parse_complex("-i").unwrap(), C64::new(0.0, -1.0));
        assert!(parse_complex("frog").is_err());
    }
}
