//! Named experiments behind the command line tool. Each `run_*` function
//! computes its results, writes its files into `out`, and returns the
//! numbers so callers (and tests) can check them without re-reading files.

use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::analysis::{self, DampedSinusoidFit, WPlusParams};
use crate::bdg::{self, BdgSpectrum};
use crate::config::{ExperimentConfig, StabilityPolicy};
use crate::dynamics::{self, EvolveOptions, GpeParams, Propagator, TrapPotential};
use crate::error::{Error, Result};
use crate::ground_state::{self, AdiabaticReport, OddParityReport, RelaxOptions, RelaxationReport};
use crate::grid::{self, ComplexField, Grid1D};
use crate::output::{self, fmt_f64, lambda_label, CsvTable, Record};
use crate::projection;

/// Scan runs whose norm grows past this factor count as diverged even while
/// still finite.
pub const BLOW_UP_NORM: f64 = 1e6;

fn relax_options(cfg: &ExperimentConfig) -> RelaxOptions {
    RelaxOptions {
        dt: cfg.integrator.dt,
        t_max: cfg.relax.t_max,
        phase_tol: cfg.relax.phase_tol,
        residual_tol: cfg.relax.residual_tol,
        check_every: cfg.relax.check_every,
        guarded: guarded(cfg),
        ..RelaxOptions::default()
    }
}

/// Under the warn policy an over-threshold step has already been reported by
/// `cfg.check()`; the run then goes ahead and only an actual blow-up stops it.
fn guarded(cfg: &ExperimentConfig) -> bool {
    cfg.stability_policy == StabilityPolicy::Fail
}

/// Ground state of the configured condensate: fixed-`c_n` relaxation from the
/// Thomas-Fermi profile, or fixed-`μ` relaxation when `physics.mu` is set.
pub fn relax_ground_state(cfg: &ExperimentConfig, grid: Grid1D, opts: &RelaxOptions) -> Result<RelaxationReport> {
    let trap = TrapPotential::Harmonic;
    let start = ground_state::thomas_fermi_profile(grid, cfg.physics.c_n)?;
    match cfg.physics.mu {
        Some(mu) => ground_state::relax_fixed_mu(&start, &trap, mu, cfg.physics.c_n, cfg.physics.lambda, opts),
        None => ground_state::relax_fixed_c(&start, &trap, cfg.physics.c_n, cfg.physics.lambda, opts),
    }
}

/// Tightly relaxed condensate and its BdG modes on `grid`, integrating with
/// step `dt`.
pub fn condensate_and_spectrum(cfg: &ExperimentConfig, grid: Grid1D, dt: f64) -> Result<(RelaxationReport, BdgSpectrum)> {
    let opts = RelaxOptions {
        dt,
        t_max: cfg.spectrum.t_max,
        residual_tol: cfg.spectrum.residual_tol,
        ..relax_options(cfg)
    };
    let report = relax_ground_state(cfg, grid, &opts)?;
    if report.residual_l2 > bdg::CONDENSATE_RESIDUAL_LIMIT {
        return Err(Error::NotConverged(format!(
            "condensate residual {:.3e} after t = {} is too large to linearize about",
            report.residual_l2, report.elapsed_sim_time
        )));
    }
    let op = bdg::build_bdg_operator(&report.final_state, &TrapPotential::Harmonic, report.mu, report.c_n_corrected)?;
    let spectrum = bdg::solve_modes(&op, cfg.spectrum.n_modes)?;
    Ok((report, spectrum))
}

fn relaxation_record(rec: &mut Record, r: &RelaxationReport) {
    rec.num("mu", r.mu)
        .num("c_n", r.c_n_corrected)
        .num("residual_l2", r.residual_l2)
        .num("phase_flatness_rad", r.phase_flatness_rad)
        .text("iterations", r.iterations)
        .num("simulated_time", r.elapsed_sim_time)
        .text(
            "time_to_residual",
            r.time_to_residual.map_or_else(|| "none".to_string(), fmt_f64),
        )
        .num("final_norm_sq", r.final_norm_sq)
        .text("converged", r.converged);
}

// ---------------------------------------------------------------- ground state

#[derive(Debug, Clone, Copy, Default)]
pub struct GroundStateFlags {
    pub adiabatic_compare: bool,
    pub odd_parity: bool,
    pub start_n: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct AdiabaticComparison {
    pub damped_time: Option<f64>,
    pub adiabatic: AdiabaticReport,
    /// Adiabatic over damped time. When the adiabatic ramp never converged
    /// this is a lower bound computed from the longest ramp tried.
    pub ratio: Option<f64>,
    pub ratio_is_lower_bound: bool,
}

#[derive(Debug, Clone)]
pub struct GroundStateOutcome {
    pub report: RelaxationReport,
    pub odd: Option<OddParityReport>,
    pub adiabatic: Option<AdiabaticComparison>,
    pub warnings: Vec<String>,
}

impl GroundStateOutcome {
    pub fn converged(&self) -> bool {
        self.report.converged
    }
}

pub fn run_ground_state(cfg: &ExperimentConfig, flags: GroundStateFlags, out: &Path) -> Result<GroundStateOutcome> {
    let warnings = cfg.check()?;
    let grid = cfg.grid.build()?;
    let opts = relax_options(cfg);
    let trap = TrapPotential::Harmonic;

    let mut rec = Record::new();
    rec.text("units", crate::units::CONVENTION);
    let (report, odd) = if flags.odd_parity {
        let n = flags.start_n.unwrap_or(1);
        let odd = ground_state::odd_parity_state(grid, &trap, cfg.physics.c_n, cfg.physics.lambda, n, &opts)?;
        rec.text("method", "relax_fixed_c (odd parity)").text("start_n", n);
        (odd.relaxation.clone(), Some(odd))
    } else {
        let method = if cfg.physics.mu.is_some() { "relax_fixed_mu" } else { "relax_fixed_c" };
        rec.text("method", method);
        (relax_ground_state(cfg, grid, &opts)?, None)
    };
    relaxation_record(&mut rec, &report);
    if let Some(o) = &odd {
        rec.text("zero_crossings", o.zero_crossings)
            .num("phase_jump", o.phase_jump)
            .num("left_phase_flatness", o.left_flatness)
            .num("right_phase_flatness", o.right_flatness)
            .num("antisymmetry_violation", o.antisymmetry_violation);
    }

    let adiabatic = if flags.adiabatic_compare {
        let a = ground_state::adiabatic_turn_on(
            grid,
            &trap,
            cfg.physics.c_n,
            cfg.integrator.dt,
            cfg.adiabatic.first_ramp,
            cfg.adiabatic.max_ramp,
            cfg.relax.residual_tol,
        )?;
        let damped_time = report.time_to_residual;
        let (ratio, lower) = match (damped_time, a.time_to_convergence) {
            (Some(d), Some(t)) => (Some(t / d), false),
            (Some(d), None) => (a.attempts.last().map(|(ramp, _)| ramp / d), true),
            _ => (None, false),
        };
        rec.text("damped_time_to_residual", damped_time.map_or_else(|| "none".into(), fmt_f64));
        rec.text(
            "adiabatic_time_to_residual",
            a.time_to_convergence.map_or_else(|| format!("> {}", cfg.adiabatic.max_ramp), fmt_f64),
        );
        for (ramp, res) in &a.attempts {
            rec.num(&format!("adiabatic_residual_ramp_{ramp}"), *res);
        }
        rec.text("speedup_ratio", ratio.map_or_else(|| "none".into(), |r| format!("{}{}", if lower { ">= " } else { "" }, fmt_f64(r))));
        Some(AdiabaticComparison { damped_time, adiabatic: a, ratio, ratio_is_lower_bound: lower })
    } else {
        None
    };
    for w in &warnings {
        rec.text("warning", w);
    }

    output::state_table(&report.final_state).write(&out.join("state.csv"))?;
    rec.write(&out.join("report.txt"))?;
    Ok(GroundStateOutcome { report, odd, adiabatic, warnings })
}

// ---------------------------------------------------------------- sweeps

/// One damped evolution of the Λ sweep.
#[derive(Debug, Clone)]
pub struct SweepRun {
    pub lambda: f64,
    pub times: Vec<f64>,
    pub widths: Vec<f64>,
    /// `|b_i|²` of the seeded mode.
    pub mode_population: Vec<f64>,
    pub condensate_population: Vec<f64>,
    pub max_relative_residual: f64,
}

impl SweepRun {
    /// Envelope decay rate of the mode population.
    pub fn population_decay_rate(&self) -> Result<f64> {
        analysis::envelope_decay_rate(&self.times, &self.mode_population)
    }

    /// Standard deviation of `|b_g|²` over the run: the size of the
    /// condensate-population oscillation.
    pub fn condensate_oscillation(&self) -> f64 {
        let n = self.condensate_population.len() as f64;
        let mean = self.condensate_population.iter().sum::<f64>() / n;
        (self.condensate_population.iter().map(|p| (p - mean).powi(2)).sum::<f64>() / n).sqrt()
    }
}

#[derive(Debug, Clone)]
pub struct Sweep {
    pub condensate: RelaxationReport,
    pub spectrum: BdgSpectrum,
    pub mode_index: usize,
    pub runs: Vec<SweepRun>,
}

/// Relax, solve, excite (seeding or trap modulation), evolve and project for
/// every configured Λ. The runs are independent and execute in parallel.
pub fn run_sweep(cfg: &ExperimentConfig) -> Result<Sweep> {
    cfg.check()?;
    let grid = cfg.grid.build()?;
    let (condensate, spectrum) = condensate_and_spectrum(cfg, grid, cfg.integrator.dt)?;
    let i = cfg.seed.mode_index;
    let (psi0, trap) = match &cfg.trap_modulation {
        None => (
            projection::seed_mode(&spectrum, i, Complex64::new(cfg.seed.amplitude, 0.0))?,
            TrapPotential::Harmonic,
        ),
        Some(m) => (
            spectrum.condensate.clone(),
            TrapPotential::HarmonicModulated { eta: m.eta, omega: m.omega, t_off: m.t_off },
        ),
    };
    let runs = cfg
        .figures
        .lambdas
        .par_iter()
        .map(|&lambda| -> Result<SweepRun> {
            let params = GpeParams::new(spectrum.c_n, spectrum.mu, lambda, trap.clone())?;
            let mut opts = EvolveOptions::stride(cfg.integrator.record_stride).with_snapshots();
            if !guarded(cfg) {
                opts = opts.unguarded();
            }
            let traj = dynamics::evolve(&psi0, cfg.integrator.t_final, cfg.integrator.dt, &params, opts)?;
            if let dynamics::RunStatus::Diverged { t, dt } = traj.status {
                return Err(Error::Diverged { t, dt });
            }
            let pops = projection::populations_along(&traj, &spectrum)
                .map_err(|e| Error::NotConverged(format!("projection for lambda = {lambda}: {e}")))?;
            Ok(SweepRun {
                lambda,
                widths: traj.widths(),
                mode_population: pops.mode(i).to_vec(),
                condensate_population: pops.condensate.clone(),
                max_relative_residual: pops.max_relative_residual(),
                times: pops.times,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Sweep { condensate, spectrum, mode_index: i, runs })
}

#[derive(Debug, Clone)]
pub struct Fig1Outcome {
    pub sweep: Sweep,
    pub decay_rates: Vec<f64>,
    pub condensate_oscillation: Vec<f64>,
    pub warnings: Vec<String>,
}

pub fn run_fig1(cfg: &ExperimentConfig, out: &Path) -> Result<Fig1Outcome> {
    let mut warnings = cfg.check()?;
    let sweep = run_sweep(cfg)?;
    let i = sweep.mode_index;
    let mut header = vec!["t".to_string()];
    for r in &sweep.runs {
        header.push(format!("b{i}_{}", lambda_label(r.lambda)));
        header.push(format!("bg2_{}", lambda_label(r.lambda)));
    }
    let mut table = CsvTable::new(header);
    for k in 0..sweep.runs[0].times.len() {
        let mut row = vec![sweep.runs[0].times[k]];
        for r in &sweep.runs {
            row.push(r.mode_population[k]);
            row.push(r.condensate_population[k]);
        }
        table.push_floats(&row);
    }
    table.write(&out.join("fig1.csv"))?;
    let decay_rates = sweep.runs.iter().map(SweepRun::population_decay_rate).collect::<Result<Vec<_>>>()?;
    let condensate_oscillation: Vec<f64> = sweep.runs.iter().map(SweepRun::condensate_oscillation).collect();
    let mut rec = Record::new();
    rec.num("mu", sweep.spectrum.mu).num(&format!("epsilon_{i}"), sweep.spectrum.mode(i)?.energy);
    for (k, r) in sweep.runs.iter().enumerate() {
        let l = lambda_label(r.lambda);
        rec.num(&format!("initial_population_{l}"), r.mode_population[0])
            .num(&format!("decay_rate_{l}"), decay_rates[k])
            .num(&format!("condensate_oscillation_{l}"), condensate_oscillation[k])
            .num(&format!("max_relative_residual_{l}"), r.max_relative_residual);
        if r.max_relative_residual > 0.05 {
            warnings.push(format!(
                "lambda = {}: {:.1}% of the excitation lies outside the {}-mode basis",
                r.lambda,
                100.0 * r.max_relative_residual,
                sweep.spectrum.modes.len()
            ));
        }
    }
    for w in &warnings {
        rec.text("warning", w);
    }
    rec.write(&out.join("fig1_summary.txt"))?;
    if cfg.output.emit_plots {
        output::write_text(&out.join("fig1.py"), output::FIG1_SCRIPT)?;
    }
    Ok(Fig1Outcome { sweep, decay_rates, condensate_oscillation, warnings })
}

#[derive(Debug, Clone)]
pub struct Fig2Outcome {
    pub sweep: Sweep,
    /// One fit per Λ; `Err` records a fit failure without aborting.
    pub fits: Vec<std::result::Result<DampedSinusoidFit, String>>,
    pub warnings: Vec<String>,
}

impl Fig2Outcome {
    /// BdG prediction `ε_i / 2π` for the width-oscillation frequency.
    pub fn predicted_frequency(&self) -> Result<f64> {
        Ok(self.sweep.spectrum.mode(self.sweep.mode_index)?.energy / std::f64::consts::TAU)
    }
}

/// Damped-sinusoid fit of every width series; failures are kept per series.
pub fn fit_widths(sweep: &Sweep) -> Vec<std::result::Result<DampedSinusoidFit, String>> {
    sweep
        .runs
        .par_iter()
        .map(|r| analysis::fit_damped_sinusoid(&r.times, &r.widths, None).map_err(|e| e.to_string()))
        .collect()
}

pub fn run_fig2(cfg: &ExperimentConfig, out: &Path) -> Result<Fig2Outcome> {
    let mut warnings = cfg.check()?;
    let sweep = run_sweep(cfg)?;
    let mut header = vec!["t".to_string()];
    header.extend(sweep.runs.iter().map(|r| format!("width_{}", lambda_label(r.lambda))));
    let mut table = CsvTable::new(header);
    for k in 0..sweep.runs[0].times.len() {
        let mut row = vec![sweep.runs[0].times[k]];
        row.extend(sweep.runs.iter().map(|r| r.widths[k]));
        table.push_floats(&row);
    }
    table.write(&out.join("fig2.csv"))?;

    let fits = fit_widths(&sweep);
    let mut text = String::new();
    for (r, fit) in sweep.runs.iter().zip(&fits) {
        let label = lambda_label(r.lambda);
        match fit {
            Ok(f) => {
                if !f.converged {
                    warnings.push(format!("width fit for lambda = {} did not converge", r.lambda));
                }
                text.push_str(&f.to_record(&label));
            }
            Err(e) => {
                warnings.push(format!("width fit for lambda = {} failed: {e}", r.lambda));
                text.push_str(&format!("[{label}]\nerror = {e}\n"));
            }
        }
        text.push('\n');
    }
    output::write_text(&out.join("fits.txt"), &text)?;
    if cfg.output.emit_plots {
        output::write_text(&out.join("fig2.py"), output::FIG2_SCRIPT)?;
    }
    Ok(Fig2Outcome { sweep, fits, warnings })
}

// ---------------------------------------------------------------- spectrum

#[derive(Debug, Clone)]
pub struct GridRefinement {
    /// `(n_points, ε_i)` on the coarse, default and refined grids.
    pub levels: Vec<(usize, Vec<f64>)>,
    /// `(ε(coarse) - ε(default)) / (ε(default) - ε(fine))` per mode; about 4
    /// for second-order convergence.
    pub ratios: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct SpectrumOutcome {
    pub spectrum: BdgSpectrum,
    pub kohn_error: f64,
    pub refinement: Option<GridRefinement>,
    pub warnings: Vec<String>,
}

/// Largest deviation `|ε_1 - 1|` accepted by `spectrum` before it warns.
pub const KOHN_TOLERANCE: f64 = 2e-3;

fn coarsened(grid: &Grid1D) -> Result<Grid1D> {
    grid::make_grid(grid.n_points() / 2 + 1, grid.x_max())
}

pub fn run_spectrum(cfg: &ExperimentConfig, dx_halve: bool, out: &Path) -> Result<SpectrumOutcome> {
    let mut warnings = cfg.check()?;
    let grid = cfg.grid.build()?;
    let dt = cfg.integrator.dt;
    let (_, spectrum) = condensate_and_spectrum(cfg, grid, dt)?;
    let kohn_error = (spectrum.mode(1)?.energy - 1.0).abs();
    if kohn_error > KOHN_TOLERANCE {
        warnings.push(format!("Kohn mode energy off by {kohn_error:.3e}"));
    }
    let mut table = CsvTable::new(["i", "energy", "parity"]);
    for m in &spectrum.modes {
        table.push(vec![m.index.to_string(), fmt_f64(m.energy), m.parity.to_string()]);
    }
    table.write(&out.join("spectrum.csv"))?;

    let refinement = if dx_halve {
        // The explicit step must shrink with dx²: the RK4 bound involves the
        // largest discrete kinetic energy.
        let fine = grid.refined();
        let coarse = coarsened(&grid)?;
        let e_fine = condensate_and_spectrum(cfg, fine, dt / 4.0)?.1.energies();
        let e_coarse = condensate_and_spectrum(cfg, coarse, dt)?.1.energies();
        let e_mid = spectrum.energies();
        let ratios = (0..e_mid.len())
            .map(|k| (e_coarse[k] - e_mid[k]) / (e_mid[k] - e_fine[k]))
            .collect();
        let mut t = CsvTable::new(["i", "energy_coarse", "energy", "energy_fine", "ratio"]);
        let r: &Vec<f64> = &ratios;
        for k in 0..e_mid.len() {
            t.push(vec![
                (k + 1).to_string(),
                fmt_f64(e_coarse[k]),
                fmt_f64(e_mid[k]),
                fmt_f64(e_fine[k]),
                fmt_f64(r[k]),
            ]);
        }
        t.write(&out.join("spectrum_refinement.csv"))?;
        Some(GridRefinement {
            levels: vec![
                (coarse.n_points(), e_coarse),
                (grid.n_points(), e_mid),
                (fine.n_points(), e_fine),
            ],
            ratios,
        })
    } else {
        None
    };
    Ok(SpectrumOutcome { spectrum, kohn_error, refinement, warnings })
}

// ---------------------------------------------------------------- stability scan

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanCell {
    pub lambda_dt: f64,
    pub c_n: f64,
    pub t_final: f64,
    pub stable: bool,
}

#[derive(Debug, Clone)]
pub struct ScanOutcome {
    pub cells: Vec<ScanCell>,
    /// `(c_n, t_final, smallest diverging |Λ|·dt)`; `None` when no scanned
    /// value diverged.
    pub thresholds: Vec<(f64, f64, Option<f64>)>,
}

/// Integrates the relaxed condensate at `Λ = -lambda_dt/dt` without the
/// stability guard and reports whether it stayed bounded.
fn scan_cell(psi: &ComplexField, mu: f64, c_n: f64, lambda_dt: f64, dt: f64, t_final: f64) -> Result<bool> {
    let params = GpeParams::harmonic(c_n, mu, -lambda_dt / dt)?;
    let mut prop = Propagator::new(*psi.grid(), params)?;
    let mut values = psi.values().to_vec();
    let n0 = grid::norm_sq(psi);
    let steps = dynamics::step_count(t_final, dt);
    for s in 0..steps {
        if prop.step(&mut values, s as f64 * dt, dt).is_err() {
            return Ok(false);
        }
        if s % 50 == 0 {
            let n: f64 = psi.grid().integrate(&values.iter().map(|v| v.norm_sqr()).collect::<Vec<_>>());
            if !(n < BLOW_UP_NORM * n0) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn run_stability_scan(cfg: &ExperimentConfig, out: &Path) -> Result<ScanOutcome> {
    cfg.validate()?;
    let s = &cfg.scan;
    let grid = grid::make_grid(s.n_points, s.x_max)?;
    let relax = RelaxOptions { dt: s.dt, ..relax_options(cfg) };
    let condensates = s
        .c_n
        .par_iter()
        .map(|&c| {
            let start = ground_state::thomas_fermi_profile(grid, c)?;
            let r = ground_state::relax_fixed_c(&start, &TrapPotential::Harmonic, c, cfg.physics.lambda, &relax)?;
            Ok((c, r.final_state, r.mu))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut jobs = Vec::new();
    for (c, psi, mu) in &condensates {
        for &tf in &s.t_final {
            for &ldt in &s.lambda_dt {
                jobs.push((*c, psi, *mu, tf, ldt));
            }
        }
    }
    let cells = jobs
        .par_iter()
        .map(|&(c_n, psi, mu, t_final, lambda_dt)| {
            Ok(ScanCell { lambda_dt, c_n, t_final, stable: scan_cell(psi, mu, c_n, lambda_dt, s.dt, t_final)? })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut thresholds = Vec::new();
    for &c in &s.c_n {
        for &tf in &s.t_final {
            let first = cells
                .iter()
                .filter(|x| x.c_n == c && x.t_final == tf && !x.stable)
                .map(|x| x.lambda_dt)
                .fold(None, |acc: Option<f64>, v| Some(acc.map_or(v, |a| a.min(v))));
            thresholds.push((c, tf, first));
        }
    }
    let mut table = CsvTable::new(["lambda_dt", "c_n", "t_final", "stable"]);
    for x in &cells {
        table.push(vec![fmt_f64(x.lambda_dt), fmt_f64(x.c_n), fmt_f64(x.t_final), x.stable.to_string()]);
    }
    table.write(&out.join("scan.csv"))?;
    let mut rec = Record::new();
    rec.text("grid_points", s.n_points).num("x_max", s.x_max).num("dt", s.dt);
    for (c, tf, th) in &thresholds {
        rec.text(&format!("threshold_c{c}_t{tf}"), th.map_or_else(|| "none".into(), fmt_f64));
    }
    rec.write(&out.join("scan_summary.txt"))?;
    Ok(ScanOutcome { cells, thresholds })
}

// ---------------------------------------------------------------- W+

#[derive(Debug, Clone, Copy)]
pub struct WPlusOutcome {
    pub params: WPlusParams,
    pub w_plus: f64,
    pub lambda: f64,
    pub damping_time: f64,
}

impl WPlusOutcome {
    pub fn record(&self) -> Record {
        let mut rec = Record::new();
        rec.num("w_plus_per_s", self.w_plus)
            .num("lambda", self.lambda)
            .num("damping_time_s", self.damping_time)
            .num("scattering_length_m", self.params.scattering_length)
            .num("temperature_k", self.params.temperature)
            .num("trap_omega_rad_per_s", self.params.trap_omega);
        rec
    }
}

/// Evaluates `W⁺` from `param_file`, or from the shipped MIT-like set.
pub fn run_wplus(param_file: Option<&Path>, out: &Path) -> Result<WPlusOutcome> {
    let params = match param_file {
        Some(p) => {
            let text = std::fs::read_to_string(p)?;
            WPlusParams::from_toml(&text).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?
        }
        None => WPlusParams::from_toml(analysis::MIT_LIKE_PARAMS)?,
    };
    let w = analysis::w_plus(&params)?;
    let est = analysis::lambda_estimate(w, params.trap_omega)?;
    let outcome = WPlusOutcome { params, w_plus: w, lambda: est.lambda, damping_time: est.damping_time };
    outcome.record().write(&out.join("wplus.txt"))?;
    Ok(outcome)
}
