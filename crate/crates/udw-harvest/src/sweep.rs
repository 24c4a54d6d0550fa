//! Parameter sweeps, the four figure presets and the CSV/JSON emission
//! used by the command-line front end.
//!
//! CSV contract: '.' decimal separator, ',' field separator, '\n' line
//! endings, no quoting, 17 significant digits (lossless f64 round trip),
//! fixed column order
//! `axis_value,L,abs_LAB,abs_M,abs_M_plus,abs_M_minus,negativity,err_M`.
//! Rows are emitted in ascending axis order regardless of how many worker
//! threads computed them; a failed point carries an `ERROR:<kind>` sentinel
//! in its second column.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::elements::{compute_elements, EvaluationContext};
use crate::error::{HarvestError, Result};
use crate::types::{Coupling, MatrixElements, PairConfig};

/// Which scenario parameter the sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepAxis {
    Delay,
    Separation,
}

/// Selectable output quantities; the CSV schema always carries the full
/// column set, so this list is validated but does not change the emitted
/// columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputQuantity {
    L,
    LAb,
    M,
    MPlus,
    MMinus,
    N,
}

/// A sweep of one axis of a base configuration.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepRequest {
    pub base: PairConfig,
    pub axis: SweepAxis,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outputs: Option<Vec<OutputQuantity>>,
}

impl SweepRequest {
    pub fn validate(&self) -> Result<()> {
        if !(self.start < self.stop) {
            return Err(HarvestError::InvalidConfig(format!(
                "sweep start {} must be below stop {}",
                self.start, self.stop
            )));
        }
        if self.points < 2 {
            return Err(HarvestError::InvalidConfig(format!(
                "sweep needs at least 2 points, got {}",
                self.points
            )));
        }
        self.base.clone().validate()?;
        Ok(())
    }

    pub fn config_at(&self, axis_value: f64) -> PairConfig {
        let mut cfg = self.base.clone();
        match self.axis {
            SweepAxis::Delay => cfg.delay = axis_value,
            SweepAxis::Separation => cfg.separation = axis_value,
        }
        cfg
    }

    pub fn axis_values(&self) -> Vec<f64> {
        let n = self.points;
        (0..n)
            .map(|i| self.start + (self.stop - self.start) * i as f64 / (n - 1) as f64)
            .collect()
    }
}

/// One computed sweep point, or the error that killed it.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub axis_value: f64,
    pub outcome: std::result::Result<MatrixElements, String>,
}

/// Full sweep result.
#[derive(Debug, Clone)]
pub struct SweepRun {
    pub rows: Vec<SweepRow>,
    pub any_failed: bool,
}

/// The four published scenarios: ΩT = 4, |x_Δ|/T = 5, σ/T = 0.05, delay
/// swept over [0, 10] with 201 points, λ̄ = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureScenario {
    /// (a) derivative coupling, n = 1.
    A,
    /// (b) derivative coupling, n = 3.
    B,
    /// (c) amplitude coupling, n = 1, ΛT = 0.02.
    C,
    /// (d) amplitude coupling, n = 3.
    D,
}

impl FigureScenario {
    pub fn parse(tag: &str) -> Result<FigureScenario> {
        match tag {
            "a" => Ok(FigureScenario::A),
            "b" => Ok(FigureScenario::B),
            "c" => Ok(FigureScenario::C),
            "d" => Ok(FigureScenario::D),
            other => Err(HarvestError::InvalidConfig(format!(
                "unknown figure scenario '{other}', expected a|b|c|d"
            ))),
        }
    }
}

/// Sweep request for one of the figure presets.
pub fn figure_preset(which: FigureScenario) -> SweepRequest {
    let (dim, coupling, ir_cutoff) = match which {
        FigureScenario::A => (1, Coupling::Derivative, None),
        FigureScenario::B => (3, Coupling::Derivative, None),
        FigureScenario::C => (1, Coupling::Amplitude, Some(0.02)),
        FigureScenario::D => (3, Coupling::Amplitude, None),
    };
    SweepRequest {
        base: PairConfig {
            dim,
            coupling,
            gap: 4.0,
            smearing: 0.05,
            delay: 0.0,
            separation: 5.0,
            time_offset: 0.0,
            coupling_strength: 1.0,
            ir_cutoff,
        },
        axis: SweepAxis::Delay,
        start: 0.0,
        stop: 10.0,
        points: 201,
        outputs: None,
    }
}

/// Runs a sweep, optionally on a dedicated thread pool of `threads`
/// workers. Points are computed in parallel and re-assembled in axis
/// order.
pub fn run_sweep(request: &SweepRequest, threads: Option<usize>, rel_tol: Option<f64>) -> Result<SweepRun> {
    request.validate()?;
    let values = request.axis_values();
    let compute_all = |values: &[f64]| -> Vec<SweepRow> {
        values
            .par_iter()
            .map(|&axis_value| {
                let outcome = compute_point(request, axis_value, rel_tol)
                    .map_err(|e| e.kind().to_string());
                SweepRow {
                    axis_value,
                    outcome,
                }
            })
            .collect()
    };
    let rows = match threads {
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .map_err(|e| HarvestError::InvalidConfig(e.to_string()))?;
            pool.install(|| compute_all(&values))
        }
        None => compute_all(&values),
    };
    let any_failed = rows.iter().any(|r| r.outcome.is_err());
    Ok(SweepRun { rows, any_failed })
}

fn compute_point(
    request: &SweepRequest,
    axis_value: f64,
    rel_tol: Option<f64>,
) -> Result<MatrixElements> {
    let mut ctx = EvaluationContext::new(request.config_at(axis_value))?;
    if let Some(tol) = rel_tol {
        ctx.spec.rel_tol = tol;
    }
    compute_elements(&ctx)
}

pub const CSV_HEADER: &str = "axis_value,L,abs_LAB,abs_M,abs_M_plus,abs_M_minus,negativity,err_M";

fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

/// Renders a sweep as CSV text per the column contract.
pub fn to_csv(run: &SweepRun) -> String {
    let mut out = String::with_capacity(96 * (run.rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in &run.rows {
        match &row.outcome {
            Ok(e) => {
                out.push_str(&fmt(row.axis_value));
                for v in [
                    e.local_noise,
                    e.cross_noise.norm(),
                    e.correlation.norm(),
                    e.correlation_plus.norm(),
                    e.correlation_minus.norm(),
                    e.negativity,
                    e.errors.correlation,
                ] {
                    out.push(',');
                    out.push_str(&fmt(v));
                }
            }
            Err(kind) => {
                out.push_str(&fmt(row.axis_value));
                out.push_str(&format!(",ERROR:{kind},,,,,,"));
            }
        }
        out.push('\n');
    }
    out
}

/// Computes one configuration and renders the JSON document emitted by the
/// `compute` subcommand.
pub fn run_compute(config: PairConfig, rel_tol: Option<f64>) -> Result<serde_json::Value> {
    let mut ctx = EvaluationContext::new(config)?;
    if let Some(tol) = rel_tol {
        ctx.spec.rel_tol = tol;
    }
    let e = compute_elements(&ctx)?;
    Ok(json!({
        "config": serde_json::to_value(&ctx.config).map_err(|err| HarvestError::InvalidConfig(err.to_string()))?,
        "L": e.local_noise,
        "L_AB_re": e.cross_noise.re,
        "L_AB_im": e.cross_noise.im,
        "M_re": e.correlation.re,
        "M_im": e.correlation.im,
        "M_plus_re": e.correlation_plus.re,
        "M_plus_im": e.correlation_plus.im,
        "M_minus_re": e.correlation_minus.re,
        "M_minus_im": e.correlation_minus.im,
        "negativity": e.negativity,
        "err_L": e.errors.local_noise,
        "err_L_AB": e.errors.cross_noise,
        "err_M": e.errors.correlation,
        "err_M_plus": e.errors.correlation_plus,
        "err_M_minus": e.errors.correlation_minus,
    }))
}
