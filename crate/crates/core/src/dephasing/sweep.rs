//! Time sweeps, CSV export and the local-noise reconciliation table.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI};
use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use super::{closed_form, monte_carlo_oracle, LogicalFrame, NoiseKind, NoiseModel, ObservableRecord};
use crate::code::{CodeSpec, LogicalPair};
use crate::error::NoiseError;

/// Reference angles and `γt` values used for cross-checks.
pub const THETAS: [f64; 5] = [0.0, FRAC_PI_4, FRAC_PI_2, 3.0 * FRAC_PI_4, PI];
pub const PHIS: [f64; 5] = [0.0, FRAC_PI_3, FRAC_PI_2, PI, 3.0 * FRAC_PI_2];
pub const GAMMA_TS: [f64; 5] = [0.0, 0.1, 0.5, 1.0, 5.0];

pub const CSV_HEADER: &str =
    "t,gamma,theta,phi,kind,source,r_x,r_y,r_z,p_x,p_y,p_z,se_r_x,se_r_y,se_r_z,se_p_x,se_p_y,se_p_z";

/// `start:stop:steps`, i.e. `steps` equal intervals and `steps + 1` points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TimeGrid {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl TimeGrid {
    pub fn new(start: f64, stop: f64, steps: usize) -> Result<Self, NoiseError> {
        if !(start.is_finite() && stop.is_finite()) || start < 0.0 {
            return Err(NoiseError::InvalidGrid(format!("times must be finite and >= 0, got {start}:{stop}")));
        }
        if stop < start {
            return Err(NoiseError::InvalidGrid(format!("stop {stop} is before start {start}")));
        }
        if steps == 0 && stop != start {
            return Err(NoiseError::InvalidGrid("zero steps needs start == stop".into()));
        }
        Ok(Self { start, stop, steps })
    }

    pub fn points(&self) -> Vec<f64> {
        if self.steps == 0 {
            return vec![self.start];
        }
        (0..=self.steps)
            .map(|i| {
                if i == self.steps {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * i as f64 / self.steps as f64
                }
            })
            .collect()
    }
}

impl FromStr for TimeGrid {
    type Err = NoiseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || NoiseError::InvalidGrid(format!("expected start:stop:steps, got {s:?}"));
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, c] = parts.as_slice() else { return Err(bad()) };
        let start: f64 = a.trim().parse().map_err(|_| bad())?;
        let stop: f64 = b.trim().parse().map_err(|_| bad())?;
        let steps: usize = c.trim().parse().map_err(|_| bad())?;
        Self::new(start, stop, steps)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Engine,
    ClosedForm,
    MonteCarlo,
}

impl Source {
    pub fn as_str(self) -> &'static str {
        match self {
            Source::Engine => "engine",
            Source::ClosedForm => "closed_form",
            Source::MonteCarlo => "monte_carlo",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    pub kind: NoiseKind,
    pub theta: f64,
    pub phi: f64,
    pub gamma: f64,
    pub convention: f64,
    pub grid: TimeGrid,
    pub mc_samples: u64,
    pub seed: Option<u64>,
    /// 0-based logical pair used as the Bloch frame.
    pub pair_index: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub gamma: f64,
    pub theta: f64,
    pub phi: f64,
    pub kind: NoiseKind,
    pub source: Source,
    pub record: ObservableRecord,
    pub se: Option<[f64; 6]>,
}

/// Engine and closed-form rows at every grid time, plus Monte Carlo rows
/// when `mc_samples > 0` (a seed is then mandatory).
/// True when the code and Bloch frame are those the closed form describes.
fn matches_unit_frame(code: &CodeSpec, pairs: &[LogicalPair], pair_index: usize) -> bool {
    let unit = crate::lattice::build_unit();
    let unit_pair = unit.logical_pairs.as_ref().and_then(|p| p.first());
    code.n == unit.n && code.stabilizers == unit.stabilizers && pairs.get(pair_index) == unit_pair
}

pub fn run_sweep(code: &CodeSpec, pairs: &[LogicalPair], cfg: &SweepConfig) -> Result<Vec<SweepRow>, NoiseError> {
    let model = NoiseModel::with_convention(cfg.kind, cfg.gamma, cfg.convention)?;
    let seed = match (cfg.mc_samples, cfg.seed) {
        (0, _) => None,
        (_, Some(s)) => Some(s),
        (_, None) => return Err(NoiseError::InvalidModel("Monte Carlo sampling needs an explicit seed".into())),
    };
    let frame = LogicalFrame::new(code, pairs, cfg.pair_index)?;
    let state = frame.state(cfg.theta, cfg.phi)?;
    let row = |source, record, se| SweepRow {
        gamma: cfg.gamma,
        theta: cfg.theta,
        phi: cfg.phi,
        kind: cfg.kind,
        source,
        record,
        se,
    };
    let has_closed_form = matches_unit_frame(code, pairs, cfg.pair_index);
    let mut rows = Vec::new();
    for t in cfg.grid.points() {
        rows.push(row(Source::Engine, frame.evaluate(&state, &model, t)?, None));
        if has_closed_form {
            rows.push(row(Source::ClosedForm, closed_form(cfg.kind, cfg.theta, cfg.phi, cfg.gamma, t), None));
        }
        if let Some(seed) = seed {
            let mc = monte_carlo_oracle(&frame, cfg.theta, cfg.phi, &model, t, cfg.mc_samples, seed)?;
            rows.push(row(Source::MonteCarlo, mc.mean, Some(mc.se)));
        }
    }
    Ok(rows)
}

/// Shortest round-trip decimal, switching to exponent form for very large
/// or small magnitudes.
pub fn format_float(x: f64) -> String {
    format!("{x:?}")
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let mut fields = vec![
            format_float(r.record.t),
            format_float(r.gamma),
            format_float(r.theta),
            format_float(r.phi),
            r.kind.to_string(),
            r.source.as_str().to_string(),
        ];
        fields.extend(r.record.values().iter().map(|&v| format_float(v)));
        match r.se {
            Some(se) => fields.extend(se.iter().map(|&v| format_float(v))),
            None => fields.extend(std::iter::repeat_n(String::new(), 6)),
        }
        let _ = writeln!(out, "{}", fields.join(","));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConventionTrial {
    pub convention: f64,
    /// Largest |engine − closed form| per observable over the grid.
    pub max_deviation: [f64; 6],
    pub agrees: [bool; 6],
}

/// Engine under local noise against the local closed form, for several
/// exponent conventions, over the reference `(θ, φ, γt)` grid with `γ = 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReconciliationReport {
    pub tolerance: f64,
    pub grid_points: usize,
    pub trials: Vec<ConventionTrial>,
}

impl ReconciliationReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "local dephasing: engine vs closed form, {} grid points, tolerance {:e}\n",
            self.grid_points, self.tolerance
        );
        let _ = writeln!(out, "{:>10} {}", "convention", ObservableRecord::NAMES.map(|n| format!("{n:>12}")).join(" "));
        for t in &self.trials {
            let devs = t.max_deviation.map(|d| format!("{d:>12.3e}")).join(" ");
            let _ = writeln!(out, "{:>10} {devs}", t.convention);
            let marks = t.agrees.map(|a| format!("{:>12}", if a { "match" } else { "differ" })).join(" ");
            let _ = writeln!(out, "{:>10} {marks}", "");
        }
        out
    }
}

pub fn reconcile_local(
    code: &CodeSpec,
    pairs: &[LogicalPair],
    conventions: &[f64],
    tolerance: f64,
) -> Result<ReconciliationReport, NoiseError> {
    let frame = LogicalFrame::new(code, pairs, 0)?;
    let mut trials = Vec::new();
    let mut grid_points = 0;
    for &convention in conventions {
        let model = NoiseModel::with_convention(NoiseKind::Local, 1.0, convention)?;
        let mut max_deviation = [0.0f64; 6];
        grid_points = 0;
        for &theta in &THETAS {
            for &phi in &PHIS {
                let state = frame.state(theta, phi)?;
                for &t in &GAMMA_TS {
                    let engine = frame.evaluate(&state, &model, t)?;
                    let closed = closed_form(NoiseKind::Local, theta, phi, 1.0, t);
                    for (k, d) in max_deviation.iter_mut().enumerate() {
                        *d = d.max((engine.values()[k] - closed.values()[k]).abs());
                    }
                    grid_points += 1;
                }
            }
        }
        trials.push(ConventionTrial { convention, max_deviation, agrees: max_deviation.map(|d| d <= tolerance) });
    }
    Ok(ReconciliationReport { tolerance, grid_points, trials })
}
