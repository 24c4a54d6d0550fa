//! Thin command-line front end over the library: single-point computation,
//! sweeps, the four figure presets, and the two oracle checks.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numerical
//! non-convergence. Configuration errors print a machine-readable JSON
//! object with an `error` field.

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use udw_harvest::elements::{correlation_m, CorrelationPath, EvaluationContext};
use udw_harvest::oracle::{
    discrete_mode_elements, leading_order_signal, rho_b_signal, trace_norm, ModeBox,
    SignalScenario,
};
use udw_harvest::sweep::{
    figure_preset, run_compute, run_sweep, to_csv, FigureScenario, SweepRequest,
};
use udw_harvest::{local_noise, HarvestError, PairConfig};

#[derive(Parser)]
#[command(name = "udw-harvest", version, about = "Detector-pair entanglement harvesting toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute all matrix elements for one configuration file.
    Compute {
        #[arg(long)]
        config: String,
        #[arg(long)]
        out: Option<String>,
        #[arg(long)]
        rel_tol: Option<f64>,
    },
    /// Run a sweep request file and emit CSV.
    Sweep {
        #[arg(long)]
        config: String,
        #[arg(long)]
        out: Option<String>,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        rel_tol: Option<f64>,
    },
    /// Run one of the published presets a|b|c|d and emit CSV.
    Figure2 {
        scenario: String,
        #[arg(long)]
        out: Option<String>,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        rel_tol: Option<f64>,
    },
    /// Compare the discrete-mode box sum against the continuum elements.
    OracleCheck {
        #[arg(long)]
        config: Option<String>,
    },
    /// Exercise the mediated-signaling simulator presets.
    SignalCheck,
}

fn emit(out: Option<&str>, payload: &str) -> std::io::Result<()> {
    match out {
        Some(path) => fs::write(path, payload),
        None => std::io::stdout().write_all(payload.as_bytes()),
    }
}

fn fail(err: HarvestError) -> ExitCode {
    let doc = serde_json::json!({
        "error": err.kind(),
        "message": err.to_string(),
    });
    println!("{doc}");
    ExitCode::from(err.exit_code() as u8)
}

fn load_config(path: &str) -> Result<PairConfig, HarvestError> {
    let text =
        fs::read_to_string(path).map_err(|e| HarvestError::InvalidConfig(e.to_string()))?;
    serde_json::from_str(&text).map_err(|e| HarvestError::InvalidConfig(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => fail(e),
    }
}

fn run(cli: Cli) -> Result<ExitCode, HarvestError> {
    match cli.command {
        Command::Compute {
            config,
            out,
            rel_tol,
        } => {
            let cfg = load_config(&config)?;
            let doc = run_compute(cfg, rel_tol)?;
            let payload = format!("{}\n", serde_json::to_string_pretty(&doc).unwrap());
            emit(out.as_deref(), &payload)
                .map_err(|e| HarvestError::InvalidConfig(e.to_string()))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep {
            config,
            out,
            threads,
            rel_tol,
        } => {
            let text = fs::read_to_string(&config)
                .map_err(|e| HarvestError::InvalidConfig(e.to_string()))?;
            let request: SweepRequest = serde_json::from_str(&text)
                .map_err(|e| HarvestError::InvalidConfig(e.to_string()))?;
            run_sweep_and_emit(&request, threads, rel_tol, out.as_deref())
        }
        Command::Figure2 {
            scenario,
            out,
            threads,
            rel_tol,
        } => {
            let request = figure_preset(FigureScenario::parse(&scenario)?);
            run_sweep_and_emit(&request, threads, rel_tol, out.as_deref())
        }
        Command::OracleCheck { config } => {
            let cfg = match config {
                Some(path) => load_config(&path)?,
                None => {
                    // Figure (a) scenario at full light contact.
                    let mut cfg = figure_preset(FigureScenario::A).base;
                    cfg.delay = 5.0;
                    cfg
                }
            };
            let mbox = ModeBox::for_config(&cfg);
            let sum = discrete_mode_elements(&cfg, &mbox)?;
            let ctx = EvaluationContext::new(cfg)?;
            let (l, _) = local_noise(&ctx)?;
            let (m, _) = correlation_m(&ctx, CorrelationPath::Analytic)?;
            let l_rel = (sum.local_noise - l).abs() / l;
            let m_rel = (sum.correlation.norm() - m.norm()).abs() / m.norm();
            println!("continuum     L = {l:.8e}   |M| = {:.8e}", m.norm());
            println!(
                "mode sum      L = {:.8e}   |M| = {:.8e}   (box L={}, N={})",
                sum.local_noise,
                sum.correlation.norm(),
                mbox.box_length,
                mbox.mode_cut
            );
            println!("relative gap  L: {l_rel:.2e}   |M|: {m_rel:.2e}");
            if !sum.converged || l_rel > 0.02 || m_rel > 0.02 {
                return Err(HarvestError::NonConvergence(
                    "mode sum disagrees with the continuum beyond 2%".into(),
                ));
            }
            println!("oracle-check: PASS");
            Ok(ExitCode::SUCCESS)
        }
        Command::SignalCheck => {
            let commuting = SignalScenario::commuting(0.35);
            let (_, norm_commuting) = rho_b_signal(&commuting)?;
            println!("commuting preset   ||rho_B_signal||_1 = {norm_commuting:.3e}");
            let lambdas = [1e-2, 10f64.powf(-2.5), 1e-3];
            let mut norms = Vec::new();
            for &l in &lambdas {
                let sc = SignalScenario::field_like(l);
                let (sig, norm) = rho_b_signal(&sc)?;
                let lead = leading_order_signal(&sc)?;
                let residual = trace_norm(&(&sig - &lead));
                println!(
                    "field-like λ={l:.1e}  ||signal|| = {norm:.6e}  ||signal - leading|| = {residual:.3e}"
                );
                norms.push(norm);
            }
            let slope = {
                let xs: Vec<f64> = lambdas.iter().map(|l| l.ln()).collect();
                let ys: Vec<f64> = norms.iter().map(|v| v.ln()).collect();
                let mx = xs.iter().sum::<f64>() / 3.0;
                let my = ys.iter().sum::<f64>() / 3.0;
                let num: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
                let den: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
                num / den
            };
            println!("fitted ||signal|| ~ λ^{slope:.3}");
            if norm_commuting > 1e-12 || (slope - 2.0).abs() > 0.05 {
                return Err(HarvestError::NonConvergence(
                    "signaling structure check failed".into(),
                ));
            }
            println!("signal-check: PASS");
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_sweep_and_emit(
    request: &SweepRequest,
    threads: Option<usize>,
    rel_tol: Option<f64>,
    out: Option<&str>,
) -> Result<ExitCode, HarvestError> {
    let run = run_sweep(request, threads, rel_tol)?;
    let csv = to_csv(&run);
    emit(out, &csv).map_err(|e| HarvestError::InvalidConfig(e.to_string()))?;
    if run.any_failed {
        Ok(ExitCode::from(3))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}
