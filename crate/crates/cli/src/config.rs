//! Run configuration: line-oriented `key = value` files.
//!
//! Grammar: one `key = value` pair per line, `#` starts a comment, keys are
//! dotted namespaces (`material.sound_speed`). Values are numbers with an
//! optional unit suffix; recognized suffixes are `ueV`, `meV` (energy), `K`,
//! `mK` (temperature), `nm`, `um` (length), `s`, `ns`, `ps` (time). Without
//! a suffix the value is taken in the SI base unit of the key (J, K, m, s).
//! Unknown keys, bad units and out-of-range values are rejected with the
//! offending line number.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Result};
use dqd_core::bath::{BathSpec, DeviceGeometry, MaterialSpec, QuadratureConfig};
use dqd_core::gates::{GateKind, GateSpec};
use dqd_core::measure::OptimizerConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepAxis {
    Eps,
    Temperature,
    Separation,
    DotSize,
    Tau,
    Time,
}

impl SweepAxis {
    fn parse(s: &str) -> Option<Self> {
        match s {
            "eps" => Some(Self::Eps),
            "T" => Some(Self::Temperature),
            "L" => Some(Self::Separation),
            "a" => Some(Self::DotSize),
            "tau" => Some(Self::Tau),
            "t" => Some(Self::Time),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Eps => "eps",
            Self::Temperature => "T",
            Self::Separation => "L",
            Self::DotSize => "a",
            Self::Tau => "tau",
            Self::Time => "t",
        }
    }

    fn dimension(&self) -> Dimension {
        match self {
            Self::Eps => Dimension::Energy,
            Self::Temperature => Dimension::Temperature,
            Self::Separation | Self::DotSize => Dimension::Length,
            Self::Tau | Self::Time => Dimension::Time,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepScale {
    Linear,
    Log,
}

#[derive(Clone, Copy, Debug)]
pub struct Sweep {
    pub axis: SweepAxis,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
    pub scale: SweepScale,
}

impl Sweep {
    /// The axis values, `steps` points from min to max inclusive.
    pub fn points(&self) -> Vec<f64> {
        let n = self.steps;
        (0..n)
            .map(|i| {
                let f = i as f64 / (n - 1) as f64;
                match self.scale {
                    SweepScale::Linear => self.min + (self.max - self.min) * f,
                    SweepScale::Log => (self.min.ln() + (self.max.ln() - self.min.ln()) * f).exp(),
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub material: MaterialSpec<f64>,
    pub geometry: DeviceGeometry<f64>,
    pub bath: BathSpec<f64>,
    pub gate: GateSpec<f64>,
    pub sweep: Sweep,
    pub quadrature: QuadratureConfig<f64>,
    pub optimizer: OptimizerConfig<f64>,
    pub register_count: usize,
    pub output_path: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Dimension {
    Energy,
    Temperature,
    Length,
    Time,
    Dimensionless,
}

impl Dimension {
    fn base_unit(&self) -> &'static str {
        match self {
            Dimension::Energy => "J",
            Dimension::Temperature => "K",
            Dimension::Length => "m",
            Dimension::Time => "s",
            Dimension::Dimensionless => "",
        }
    }
}

/// (suffix, dimension, factor to SI base unit)
const UNITS: &[(&str, Dimension, f64)] = &[
    ("ueV", Dimension::Energy, 1e-6 * 1.602_176_634e-19),
    ("meV", Dimension::Energy, 1e-3 * 1.602_176_634e-19),
    ("mK", Dimension::Temperature, 1e-3),
    ("nm", Dimension::Length, 1e-9),
    ("um", Dimension::Length, 1e-6),
    ("ns", Dimension::Time, 1e-9),
    ("ps", Dimension::Time, 1e-12),
    ("K", Dimension::Temperature, 1.0),
    ("s", Dimension::Time, 1.0),
];

struct Entry {
    value: String,
    line: usize,
    used: bool,
}

struct RawConfig {
    entries: BTreeMap<String, Entry>,
}

impl RawConfig {
    fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (idx, raw_line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw_line.find('#') {
                Some(pos) => &raw_line[..pos],
                None => raw_line,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("line {line_no}: expected `key = value`"))?;
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if key.is_empty() || value.is_empty() {
                bail!("line {line_no}: empty key or value");
            }
            if let Some(prev) = entries.insert(
                key.clone(),
                Entry {
                    value,
                    line: line_no,
                    used: false,
                },
            ) {
                bail!(
                    "line {line_no}: duplicate key `{key}` (first set on line {})",
                    prev.line
                );
            }
        }
        Ok(Self { entries })
    }

    fn take(&mut self, key: &str) -> Option<(String, usize)> {
        self.entries.get_mut(key).map(|e| {
            e.used = true;
            (e.value.clone(), e.line)
        })
    }

    fn require(&mut self, key: &str) -> Result<(String, usize)> {
        self.take(key)
            .ok_or_else(|| anyhow!("missing required key `{key}`"))
    }

    fn reject_unknown(&self) -> Result<()> {
        for (key, entry) in &self.entries {
            if !entry.used {
                bail!("line {}: unknown key `{key}`", entry.line);
            }
        }
        Ok(())
    }
}

/// Parse a value with optional unit suffix into the SI base unit of `dim`.
fn parse_quantity(raw: &str, dim: Dimension, key: &str, line: usize) -> Result<f64> {
    let raw = raw.trim();
    for (suffix, unit_dim, factor) in UNITS {
        if let Some(number) = raw.strip_suffix(suffix) {
            let number = number.trim();
            if number.is_empty() {
                continue;
            }
            // guard against eating the exponent of "3e-9" etc.
            let Ok(x) = number.parse::<f64>() else {
                continue;
            };
            if *unit_dim != dim {
                bail!(
                    "line {line}: unit `{suffix}` invalid for key `{key}` (expected {})",
                    dim.base_unit()
                );
            }
            return Ok(x * factor);
        }
    }
    raw.parse::<f64>()
        .map_err(|_| anyhow!("line {line}: cannot parse value `{raw}` for key `{key}`"))
}

fn parse_usize(raw: &str, key: &str, line: usize) -> Result<usize> {
    raw.trim()
        .parse::<usize>()
        .map_err(|_| anyhow!("line {line}: key `{key}` needs a nonnegative integer, got `{raw}`"))
}

pub fn parse_config(text: &str) -> Result<RunConfig> {
    let mut raw = RawConfig::parse(text)?;

    let quantity = |raw: &mut RawConfig, key: &str, dim: Dimension| -> Result<f64> {
        let (value, line) = raw.require(key)?;
        parse_quantity(&value, dim, key, line)
    };

    // field-response modulus in V/m, taken as a bare number
    let piezo = quantity(
        &mut raw,
        "material.piezo_modulus_M",
        Dimension::Dimensionless,
    )?;
    let density = quantity(&mut raw, "material.mass_density", Dimension::Dimensionless)?;
    let sound = quantity(&mut raw, "material.sound_speed", Dimension::Dimensionless)?;
    let material =
        MaterialSpec::new(piezo, density, sound).map_err(|e| anyhow!("material: {e}"))?;

    let dot_a = quantity(&mut raw, "geometry.dot_size_a", Dimension::Length)?;
    let sep_l = quantity(&mut raw, "geometry.separation_L", Dimension::Length)?;
    let geometry = DeviceGeometry::new(dot_a, sep_l).map_err(|e| anyhow!("geometry: {e}"))?;

    let temp = quantity(&mut raw, "bath.temperature", Dimension::Temperature)?;
    let bath = BathSpec::new(temp).map_err(|e| anyhow!("bath: {e}"))?;

    let (kind_raw, kind_line) = raw.require("gate.kind")?;
    let kind = match kind_raw.to_ascii_uppercase().as_str() {
        "NOT" => GateKind::Not,
        "PHASE" => GateKind::Phase,
        other => bail!("line {kind_line}: gate.kind must be NOT or PHASE, got `{other}`"),
    };
    let eps = quantity(&mut raw, "gate.splitting_eps", Dimension::Energy)?;
    let gate = GateSpec::from_splitting(kind, eps).map_err(|e| anyhow!("gate: {e}"))?;

    let (axis_raw, axis_line) = raw.require("sweep.axis")?;
    let axis = SweepAxis::parse(&axis_raw).ok_or_else(|| {
        anyhow!("line {axis_line}: sweep.axis must be one of eps, T, L, a, tau, t")
    })?;
    let min = quantity(&mut raw, "sweep.min", axis.dimension())?;
    let max = quantity(&mut raw, "sweep.max", axis.dimension())?;
    let (steps_raw, steps_line) = raw.require("sweep.steps")?;
    let steps = parse_usize(&steps_raw, "sweep.steps", steps_line)?;
    let scale = match raw.take("sweep.scale") {
        None => SweepScale::Linear,
        Some((v, line)) => match v.as_str() {
            "lin" | "linear" => SweepScale::Linear,
            "log" => SweepScale::Log,
            other => bail!("line {line}: sweep.scale must be lin or log, got `{other}`"),
        },
    };
    if steps < 2 {
        bail!("line {steps_line}: sweep.steps must be at least 2");
    }
    if min >= max {
        bail!("sweep.min must be smaller than sweep.max (got {min} and {max})");
    }
    if scale == SweepScale::Log && min <= 0.0 {
        bail!("log-scale sweeps need a positive sweep.min");
    }
    let sweep = Sweep {
        axis,
        min,
        max,
        steps,
        scale,
    };

    let quad_tol = match raw.take("quadrature.relative_tolerance") {
        None => 1e-6,
        Some((v, line)) => parse_quantity(
            &v,
            Dimension::Dimensionless,
            "quadrature.relative_tolerance",
            line,
        )?,
    };
    let quad_refine = match raw.take("quadrature.max_refinements") {
        None => 8,
        Some((v, line)) => parse_usize(&v, "quadrature.max_refinements", line)?,
    };
    let quad_cutoff = match raw.take("quadrature.q_cutoff_factor") {
        None => 12.0,
        Some((v, line)) => parse_quantity(
            &v,
            Dimension::Dimensionless,
            "quadrature.q_cutoff_factor",
            line,
        )?,
    };
    let quadrature = QuadratureConfig::new(quad_tol, quad_refine, quad_cutoff)
        .map_err(|e| anyhow!("quadrature: {e}"))?;

    let mut optimizer = OptimizerConfig::<f64>::default();
    if let Some((v, line)) = raw.take("optimizer.multistart_count") {
        optimizer.multistart_count = parse_usize(&v, "optimizer.multistart_count", line)?.max(1);
    }
    if let Some((v, line)) = raw.take("optimizer.local_tolerance") {
        let tol = parse_quantity(
            &v,
            Dimension::Dimensionless,
            "optimizer.local_tolerance",
            line,
        )?;
        if tol <= 0.0 {
            bail!("line {line}: optimizer.local_tolerance must be positive");
        }
        optimizer.local_tolerance = tol;
    }
    if let Some((v, line)) = raw.take("optimizer.max_iterations") {
        optimizer.max_iterations = parse_usize(&v, "optimizer.max_iterations", line)?;
    }
    if let Some((v, line)) = raw.take("optimizer.rng_seed") {
        optimizer.rng_seed = v
            .trim()
            .parse::<u64>()
            .map_err(|_| anyhow!("line {line}: optimizer.rng_seed must be a 64-bit integer"))?;
    }

    let register_count = match raw.take("register.count") {
        None => 2,
        Some((v, line)) => {
            let n = parse_usize(&v, "register.count", line)?;
            if !(1..=3).contains(&n) {
                bail!("line {line}: register.count must be 1, 2 or 3");
            }
            n
        }
    };

    let (output_path, _) = raw.require("output_path")?;

    raw.reject_unknown()?;

    Ok(RunConfig {
        material,
        geometry,
        bath,
        gate,
        sweep,
        quadrature,
        optimizer,
        register_count,
        output_path,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base_config() -> String {
        "\
# GaAs-like example
material.piezo_modulus_M = 1.4e9
material.mass_density = 5317
material.sound_speed = 5110
geometry.dot_size_a = 25 nm
geometry.separation_L = 120 nm
bath.temperature = 30 mK
gate.kind = NOT
gate.splitting_eps = 30 ueV
sweep.axis = T
sweep.min = 10 mK
sweep.max = 1 K
sweep.steps = 5
output_path = out.csv
"
        .to_string()
    }

    #[test]
    fn parses_base_config_with_units() {
        let cfg = parse_config(&base_config()).unwrap();
        assert!((cfg.bath.temperature() - 0.030).abs() < 1e-15);
        assert!((cfg.geometry.dot_size_a() - 25e-9).abs() < 1e-22);
        assert!((cfg.gate.splitting_eps() - 30e-6 * 1.602176634e-19).abs() < 1e-30);
        // τ auto-derived as πħ/ε
        let tau = std::f64::consts::PI * 1.054571817e-34 / cfg.gate.splitting_eps();
        assert!((cfg.gate.duration_tau() / tau - 1.0).abs() < 1e-12);
        assert_eq!(cfg.sweep.steps, 5);
        assert!((cfg.sweep.min - 0.010).abs() < 1e-15);
        assert!((cfg.sweep.max - 1.0).abs() < 1e-15);
        assert_eq!(cfg.register_count, 2);
    }

    #[test]
    fn missing_key_is_named() {
        let text = base_config().replace("bath.temperature = 30 mK\n", "");
        let err = parse_config(&text).unwrap_err().to_string();
        assert!(err.contains("bath.temperature"), "{err}");
    }

    #[test]
    fn unknown_key_is_rejected_with_line() {
        let text = format!("{}mystery.knob = 7\n", base_config());
        let err = parse_config(&text).unwrap_err().to_string();
        assert!(err.contains("unknown key `mystery.knob`"), "{err}");
        assert!(err.contains("line 15"), "{err}");
    }

    #[test]
    fn wrong_unit_dimension_is_rejected() {
        let text = base_config().replace("bath.temperature = 30 mK", "bath.temperature = 30 nm");
        let err = parse_config(&text).unwrap_err().to_string();
        assert!(err.contains("invalid for key `bath.temperature`"), "{err}");
    }

    #[test]
    fn sweep_validation() {
        let text = base_config().replace("sweep.steps = 5", "sweep.steps = 1");
        assert!(parse_config(&text).is_err());
        let text = base_config().replace("sweep.min = 10 mK", "sweep.min = 2 K");
        assert!(parse_config(&text).is_err());
    }

    #[test]
    fn exponent_numbers_do_not_lose_suffix() {
        let text = base_config().replace("sweep.max = 1 K", "sweep.max = 2e0 K");
        let cfg = parse_config(&text).unwrap();
        assert!((cfg.sweep.max - 2.0).abs() < 1e-15);
        // bare exponent numbers still parse
        let text2 = base_config().replace("sweep.max = 1 K", "sweep.max = 1.5e0");
        let cfg2 = parse_config(&text2).unwrap();
        assert!((cfg2.sweep.max - 1.5).abs() < 1e-15);
    }

    #[test]
    fn log_sweep_points() {
        let sweep = Sweep {
            axis: SweepAxis::Temperature,
            min: 0.01,
            max: 1.0,
            steps: 3,
            scale: SweepScale::Log,
        };
        let pts = sweep.points();
        assert!((pts[0] - 0.01).abs() < 1e-15);
        assert!((pts[1] - 0.1).abs() < 1e-12);
        assert!((pts[2] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn duplicate_key_rejected() {
        let text = format!("{}bath.temperature = 40 mK\n", base_config());
        let err = parse_config(&text).unwrap_err().to_string();
        assert!(err.contains("duplicate key"), "{err}");
    }
}
