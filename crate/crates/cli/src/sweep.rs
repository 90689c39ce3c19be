//! Sweep execution: one CSV row per axis point, computed in parallel and
//! written in axis order.

use anyhow::{bail, Context, Result};
use rayon::prelude::*;

use dqd_core::bath::{
    absorption_rate_closed, dephasing_b2, emission_rate, relaxation_rate, thermal_occupation,
    BathSpec, DeviceGeometry,
};
use dqd_core::gates::{
    extract_timescales, not_gate_channel, phase_gate_channel, thermal_populations, Channel,
    GateKind,
};
use dqd_core::measure::{d_not_closed, d_phase_closed, maximal_deviation_norm};
use dqd_core::register::{additivity_check, RegisterSpec};

use crate::config::{RunConfig, SweepAxis};

/// All scalar inputs of one sweep row, SI units.
#[derive(Clone, Copy, Debug)]
struct Point {
    axis_value: f64,
    eps: f64,
    temp: f64,
    dot_a: f64,
    sep_l: f64,
    tau: f64,
    t: f64,
}

fn points(config: &RunConfig) -> Result<Vec<Point>> {
    let hbar = 1.054_571_817e-34;
    config
        .sweep
        .points()
        .into_iter()
        .map(|value| {
            let mut eps = config.gate.splitting_eps();
            let mut temp = config.bath.temperature();
            let mut dot_a = config.geometry.dot_size_a();
            let mut sep_l = config.geometry.separation_l();
            match config.sweep.axis {
                SweepAxis::Eps => eps = value,
                SweepAxis::Temperature => temp = value,
                SweepAxis::Separation => sep_l = value,
                SweepAxis::DotSize => dot_a = value,
                SweepAxis::Tau => eps = std::f64::consts::PI * hbar / value,
                SweepAxis::Time => {}
            }
            let tau = std::f64::consts::PI * hbar / eps;
            let t = if config.sweep.axis == SweepAxis::Time {
                if value > tau * (1.0 + 1e-12) {
                    bail!("sweep point t = {value:e} s exceeds the gate duration τ = {tau:e} s");
                }
                value
            } else {
                tau
            };
            Ok(Point {
                axis_value: value,
                eps,
                temp,
                dot_a,
                sep_l,
                tau,
                t,
            })
        })
        .collect()
}

fn input_headers() -> Vec<&'static str> {
    vec![
        "axis",
        "axis_value",
        "eps_J",
        "T_K",
        "L_m",
        "a_m",
        "tau_s",
        "t_s",
    ]
}

fn input_cells(config: &RunConfig, p: &Point) -> Vec<String> {
    vec![
        config.sweep.axis.name().to_string(),
        fmt(p.axis_value),
        fmt(p.eps),
        fmt(p.temp),
        fmt(p.sep_l),
        fmt(p.dot_a),
        fmt(p.tau),
        fmt(p.t),
    ]
}

/// Shortest round-trip decimal representation; exponential notation outside
/// a comfortable positional range.
fn fmt(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let ax = x.abs();
    if (1e-4..1e15).contains(&ax) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn row_geometry(p: &Point) -> Result<DeviceGeometry<f64>> {
    DeviceGeometry::new(p.dot_a, p.sep_l).map_err(Into::into)
}

fn row_bath(p: &Point) -> Result<BathSpec<f64>> {
    BathSpec::new(p.temp).map_err(Into::into)
}

/// CSV table: header plus rows.
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

fn run_rows(
    config: &RunConfig,
    extra_header: &[&str],
    row_fn: impl Fn(&Point) -> Result<Vec<String>> + Sync,
) -> Result<Table> {
    let pts = points(config)?;
    let rows: Result<Vec<Vec<String>>> = pts
        .par_iter()
        .map(|p| {
            let mut cells = input_cells(config, p);
            cells.extend(row_fn(p)?);
            Ok(cells)
        })
        .collect();
    let mut header: Vec<String> = input_headers().into_iter().map(String::from).collect();
    header.extend(extra_header.iter().map(|s| s.to_string()));
    Ok(Table {
        header,
        rows: rows?,
    })
}

pub fn run_rates(config: &RunConfig) -> Result<Table> {
    if config.sweep.axis == SweepAxis::Time {
        bail!("rates do not depend on the evolution time; sweep eps, T, L, a or tau instead");
    }
    run_rows(
        config,
        &[
            "N_th",
            "W_a_per_s",
            "W_e_per_s",
            "Gamma_per_s",
            "T1_s",
            "T2_s",
        ],
        |p| {
            let geometry = row_geometry(p)?;
            let bath = row_bath(p)?;
            let n_th = if p.temp == 0.0 {
                0.0
            } else {
                thermal_occupation(p.eps, p.temp)?
            };
            let w_a = absorption_rate_closed(&config.material, &geometry, p.eps, &bath)?;
            let w_e = emission_rate(&config.material, &geometry, p.eps, &bath)?;
            let gamma = w_a + w_e;
            let (t1, t2) = extract_timescales(gamma)?;
            Ok(vec![
                fmt(n_th),
                fmt(w_a),
                fmt(w_e),
                fmt(gamma),
                fmt(t1),
                fmt(t2),
            ])
        },
    )
}

pub fn run_gate_not(config: &RunConfig) -> Result<Table> {
    run_rows(
        config,
        &["Gamma_per_s", "Gamma_t", "p_plus_th", "p_minus_th", "D_not"],
        |p| {
            let geometry = row_geometry(p)?;
            let bath = row_bath(p)?;
            let gamma = relaxation_rate(&config.material, &geometry, p.eps, &bath)?;
            let pops = thermal_populations(p.eps, p.temp);
            let d = d_not_closed(gamma, p.t, p.eps, p.temp);
            Ok(vec![
                fmt(gamma),
                fmt(gamma * p.t),
                fmt(pops.p_plus),
                fmt(pops.p_minus),
                fmt(d),
            ])
        },
    )
}

pub fn run_gate_phase(config: &RunConfig) -> Result<Table> {
    run_rows(config, &["B2", "D_pi"], |p| {
        let geometry = row_geometry(p)?;
        let bath = row_bath(p)?;
        let b2 = dephasing_b2(&config.material, &geometry, &bath, p.t, &config.quadrature)?;
        let d = d_phase_closed(b2)?;
        Ok(vec![fmt(b2), fmt(d)])
    })
}

/// (actual, ideal) channel pair for the configured gate at a sweep point.
fn channel_pair(config: &RunConfig, p: &Point) -> Result<(Channel<f64>, Channel<f64>, f64)> {
    let geometry = row_geometry(p)?;
    let bath = row_bath(p)?;
    match config.gate.kind {
        GateKind::Not => {
            let gamma = relaxation_rate(&config.material, &geometry, p.eps, &bath)?;
            let actual = not_gate_channel(gamma, p.eps, p.temp, p.t)?;
            let ideal = not_gate_channel(0.0, p.eps, p.temp, p.t)?;
            let d_closed = d_not_closed(gamma, p.t, p.eps, p.temp);
            Ok((actual, ideal, d_closed))
        }
        GateKind::Phase => {
            let b2 = dephasing_b2(&config.material, &geometry, &bath, p.t, &config.quadrature)?;
            let actual = phase_gate_channel(b2, p.eps, p.t)?;
            let ideal = phase_gate_channel(0.0, p.eps, p.t)?;
            let d_closed = d_phase_closed(b2)?;
            Ok((actual, ideal, d_closed))
        }
    }
}

pub fn run_measure(config: &RunConfig) -> Result<Table> {
    run_rows(
        config,
        &["gate", "D_closed", "D_optimized", "abs_diff", "converged"],
        |p| {
            let (actual, ideal, d_closed) = channel_pair(config, p)?;
            let report = maximal_deviation_norm(&actual, &ideal, &config.optimizer)?;
            Ok(vec![
                config.gate.kind.to_string(),
                fmt(d_closed),
                fmt(report.d_value),
                fmt((report.d_value - d_closed).abs()),
                report.converged.to_string(),
            ])
        },
    )
}

pub fn run_register(config: &RunConfig) -> Result<Table> {
    let n = config.register_count;
    let mut extra: Vec<String> = vec![
        "gate".into(),
        "n".into(),
        "D_register".into(),
        "sum_singles".into(),
    ];
    for q in 1..=n {
        extra.push(format!("D_q{q}"));
    }
    extra.extend([
        "relative_gap".into(),
        "bound_satisfied".into(),
        "converged".into(),
    ]);
    let extra_refs: Vec<&str> = extra.iter().map(|s| s.as_str()).collect();

    run_rows(config, &extra_refs, |p| {
        let (actual, ideal, _) = channel_pair(config, p)?;
        let pairs = (0..n).map(|_| (actual.clone(), ideal.clone())).collect();
        let spec = RegisterSpec::new(pairs)?;
        let report = additivity_check(&spec, &config.optimizer, 1e-6)?;
        let mut cells = vec![
            config.gate.kind.to_string(),
            n.to_string(),
            fmt(report.d_register),
            fmt(report.sum_singles),
        ];
        for d in &report.d_singles {
            cells.push(fmt(*d));
        }
        cells.push(fmt(report.relative_gap));
        cells.push(report.bound_satisfied.to_string());
        cells.push(report.converged.to_string());
        Ok(cells)
    })
}

pub fn run_subcommand(name: &str, config: &RunConfig) -> Result<Table> {
    match name {
        "rates" => run_rates(config),
        "gate-not" => run_gate_not(config),
        "gate-phase" => run_gate_phase(config),
        "measure" => run_measure(config),
        "register" => run_register(config),
        other => bail!("unknown subcommand `{other}`"),
    }
    .with_context(|| format!("running `{name}` sweep"))
}
