//! `dampgpe`: run the damped-GPE experiments from a TOML config.
//!
//! Exit codes: 0 success, 1 usage or config error, 2 numerical failure,
//! 3 finished with warnings.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dampgpe::config::ExperimentConfig;
use dampgpe::experiments::{self, GroundStateFlags};
use dampgpe::Error;

#[derive(Parser)]
#[command(name = "dampgpe", version, about = "Damped Gross-Pitaevskii experiments for a 1D trapped condensate")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// TOML config; every key is optional.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output directory (overrides output.directory).
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Also write the plotting scripts.
    #[arg(long)]
    emit_plots: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Relax to a stationary state and write state.csv and report.txt.
    GroundState {
        #[command(flatten)]
        common: Common,
        /// Also time the adiabatic turn-on method.
        #[arg(long)]
        adiabatic_compare: bool,
        /// Relax from an odd oscillator state instead.
        #[arg(long)]
        odd_parity: bool,
        /// Oscillator level to start from (odd; with --odd-parity).
        #[arg(long, value_name = "N")]
        start_n: Option<usize>,
    },
    /// Mode and condensate populations for the damping sweep.
    Fig1 {
        #[command(flatten)]
        common: Common,
    },
    /// Condensate width for the damping sweep, with damped-sinusoid fits.
    Fig2 {
        #[command(flatten)]
        common: Common,
    },
    /// BdG spectrum of the relaxed condensate.
    Spectrum {
        #[command(flatten)]
        common: Common,
        /// Also solve on grids with dx doubled and halved.
        #[arg(long)]
        dx_halve: bool,
    },
    /// Divergence map of the integrator over |Λ|·dt, c_n and run length.
    StabilityScan {
        #[command(flatten)]
        common: Common,
    },
    /// Estimate Λ from the quantum-kinetic growth rate W+.
    Wplus {
        #[command(flatten)]
        common: Common,
        /// SI parameter file (defaults to the shipped MIT-like set).
        #[arg(value_name = "PARAM_FILE")]
        param_file: Option<PathBuf>,
    },
}

enum Status {
    Ok,
    Warnings(Vec<String>),
    Failed(String),
}

fn load(common: &Common) -> Result<(ExperimentConfig, PathBuf), Error> {
    let mut cfg = match &common.config {
        Some(p) => ExperimentConfig::load(p)?,
        None => ExperimentConfig::default(),
    };
    if let Some(out) = &common.out {
        cfg.output.directory = out.clone();
    }
    cfg.output.emit_plots |= common.emit_plots;
    cfg.validate()?;
    let out = cfg.output.directory.clone();
    std::fs::create_dir_all(&out)?;
    Ok((cfg, out))
}

fn warnings(list: Vec<String>) -> Status {
    if list.is_empty() {
        Status::Ok
    } else {
        Status::Warnings(list)
    }
}

fn run(command: Command) -> Result<Status, Error> {
    match command {
        Command::GroundState { common, adiabatic_compare, odd_parity, start_n } => {
            let (cfg, out) = load(&common)?;
            let flags = GroundStateFlags { adiabatic_compare, odd_parity, start_n };
            let o = experiments::run_ground_state(&cfg, flags, &out)?;
            let r = &o.report;
            println!("mu = {:.12}", r.mu);
            println!("residual = {:.3e}", r.residual_l2);
            println!("phase flatness = {:.3e} rad", r.phase_flatness_rad);
            println!("simulated time = {}", r.elapsed_sim_time);
            if let Some(odd) = &o.odd {
                println!("zero crossings = {}, phase jump = {:.6}", odd.zero_crossings, odd.phase_jump);
            }
            if let Some(a) = &o.adiabatic {
                match a.ratio {
                    Some(ratio) => println!(
                        "adiabatic/damped time ratio {}{:.1}",
                        if a.ratio_is_lower_bound { ">= " } else { "" },
                        ratio
                    ),
                    None => println!("damped run did not reach the residual threshold"),
                }
            }
            println!("wrote {}", out.join("report.txt").display());
            if !o.converged() {
                return Ok(Status::Failed(format!(
                    "relaxation did not converge within t = {} (report written)",
                    r.elapsed_sim_time
                )));
            }
            Ok(warnings(o.warnings))
        }
        Command::Fig1 { common } => {
            let (cfg, out) = load(&common)?;
            let o = experiments::run_fig1(&cfg, &out)?;
            for (run, rate) in o.sweep.runs.iter().zip(&o.decay_rates) {
                println!(
                    "lambda = {:<6} |b|^2(0) = {:.6}  decay rate = {:.4}  |b_g|^2 spread = {:.4}",
                    run.lambda,
                    run.mode_population[0],
                    rate,
                    run.condensate_oscillation()
                );
            }
            println!("wrote {}", out.join("fig1.csv").display());
            Ok(warnings(o.warnings))
        }
        Command::Fig2 { common } => {
            let (cfg, out) = load(&common)?;
            let o = experiments::run_fig2(&cfg, &out)?;
            let nu = o.predicted_frequency()?;
            for (run, fit) in o.sweep.runs.iter().zip(&o.fits) {
                match fit {
                    Ok(f) => println!(
                        "lambda = {:<6} nu = {:.5} (BdG {:.5})  decay = {:.4}  rms/A = {:.4}",
                        run.lambda,
                        f.params.frequency,
                        nu,
                        f.params.decay_rate,
                        f.rms_residual / f.params.amplitude
                    ),
                    Err(e) => println!("lambda = {:<6} fit failed: {e}", run.lambda),
                }
            }
            println!("wrote {}", out.join("fits.txt").display());
            Ok(warnings(o.warnings))
        }
        Command::Spectrum { common, dx_halve } => {
            let (cfg, out) = load(&common)?;
            let o = experiments::run_spectrum(&cfg, dx_halve, &out)?;
            for m in &o.spectrum.modes {
                println!("{:>3}  {:.8}  {:+}", m.index, m.energy, m.parity);
            }
            if let Some(r) = &o.refinement {
                for (k, ratio) in r.ratios.iter().enumerate().take(3) {
                    println!("mode {} convergence ratio {:.3}", k + 1, ratio);
                }
            }
            Ok(warnings(o.warnings))
        }
        Command::StabilityScan { common } => {
            let (cfg, out) = load(&common)?;
            let o = experiments::run_stability_scan(&cfg, &out)?;
            for (c, tf, th) in &o.thresholds {
                match th {
                    Some(v) => println!("c_n = {c:<5} t_final = {tf:<4} diverges from |lambda|*dt = {v}"),
                    None => println!("c_n = {c:<5} t_final = {tf:<4} no divergence in scanned range"),
                }
            }
            println!("wrote {}", out.join("scan.csv").display());
            Ok(Status::Ok)
        }
        Command::Wplus { common, param_file } => {
            let (cfg, out) = load(&common)?;
            let file = param_file.or(cfg.wplus_params.clone());
            let o = experiments::run_wplus(file.as_deref(), &out)?;
            print!("{}", o.record().render());
            Ok(Status::Ok)
        }
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Config(_) | Error::Parse(_) | Error::Io(_) | Error::ModeIndex { .. } | Error::GridMismatch(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    // clap exits with 2 on usage errors; this tool reserves 2 for numerics.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Warnings(list)) => {
            for w in list {
                eprintln!("warning: {w}");
            }
            ExitCode::from(3)
        }
        Ok(Status::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
