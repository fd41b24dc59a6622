//! Stationary states found by damped relaxation.
//!
//! Evolving the damped equation at fixed `μ` drives any reasonable start
//! toward a solution of `(H - μ)ψ = 0`. Because the evolution does not
//! conserve the norm, [`relax_fixed_mu`] converges to a state of arbitrary
//! norm and then rescales the nonlinearity so the unit-norm state solves the
//! same equation. [`relax_fixed_c`] instead renormalizes periodically and
//! tracks `μ`, which hits a requested `c_n` directly.

use num_complex::Complex64;

use crate::dynamics::{self, GpeParams, Propagator, TrapPotential};
use crate::error::{Error, Result};
use crate::grid::{self, ComplexField, Grid1D};

/// Default relative density cut for phase measurements.
pub const DEFAULT_DENSITY_CUT: f64 = 1e-6;

/// Knobs shared by the relaxation solvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelaxOptions {
    pub dt: f64,
    pub t_max: f64,
    /// Converged once the phase spread (radians) falls below this...
    pub phase_tol: f64,
    /// ...and the equilibrium residual of the unit-norm state below this.
    pub residual_tol: f64,
    /// Steps between convergence checks (and renormalizations for fixed c_n).
    pub check_every: usize,
    pub density_cut: f64,
    /// Keep stepping to `t_max` after convergence.
    pub run_to_t_max: bool,
    /// Refuse steps failing the stability guard. Cleared by callers that
    /// already warned about the step; divergence is still an error.
    pub guarded: bool,
}

impl Default for RelaxOptions {
    fn default() -> Self {
        Self {
            dt: dynamics::DEFAULT_DT,
            t_max: 30.0,
            phase_tol: 1e-6,
            residual_tol: 1e-5,
            check_every: 50,
            density_cut: DEFAULT_DENSITY_CUT,
            run_to_t_max: false,
            guarded: true,
        }
    }
}

/// Result of a relaxation run.
#[derive(Debug, Clone)]
pub struct RelaxationReport {
    /// Unit-norm state.
    pub final_state: ComplexField,
    pub mu: f64,
    /// Nonlinearity for which `final_state` solves the equilibrium equation.
    pub c_n_corrected: f64,
    /// RK4 steps taken.
    pub iterations: usize,
    pub elapsed_sim_time: f64,
    /// Phase spread modulo `π` (see [`phase_flatness_mod_pi`]).
    pub phase_flatness_rad: f64,
    pub residual_l2: f64,
    pub converged: bool,
    /// First checked time at which the residual fell below the tolerance.
    pub time_to_residual: Option<f64>,
    /// Norm of the field before the final renormalization.
    pub final_norm_sq: f64,
}

pub(crate) fn static_potential(grid: &Grid1D, trap: &TrapPotential) -> Vec<f64> {
    trap.sample(grid, f64::INFINITY)
}

fn h_psi(psi: &ComplexField, trap: &TrapPotential, c_n: f64) -> Vec<Complex64> {
    let grid = psi.grid();
    let pot = static_potential(grid, trap);
    let mut out = vec![Complex64::new(0.0, 0.0); grid.n_points()];
    dynamics::hamiltonian_kernel(psi.values(), &pot, c_n, grid.dx(), &mut out);
    out
}

/// `⟨ψ|H|ψ⟩ / ⟨ψ|ψ⟩` for the static trap.
pub fn chemical_potential(psi: &ComplexField, trap: &TrapPotential, c_n: f64) -> Result<f64> {
    let n = grid::norm_sq(psi);
    if n <= 0.0 {
        return Err(Error::InvalidField("chemical potential of a zero field".into()));
    }
    let h = ComplexField::new(*psi.grid(), h_psi(psi, trap, c_n))?;
    Ok(grid::inner(psi, &h)?.re / n)
}

/// L2 norm of `(H - μ)ψ`.
pub fn residual(psi: &ComplexField, trap: &TrapPotential, mu: f64, c_n: f64) -> f64 {
    let grid = psi.grid();
    let h = h_psi(psi, trap, c_n);
    let r: Vec<f64> = h
        .iter()
        .zip(psi.values())
        .map(|(hp, p)| (hp - p * mu).norm_sqr())
        .collect();
    grid.integrate(&r).sqrt()
}

/// Spread `max - min` of the unwrapped phase over samples with
/// `|ψ|² >= density_cut · max|ψ|²`.
pub fn phase_flatness(psi: &ComplexField, density_cut: f64) -> Result<f64> {
    phase_flatness_where(psi, density_cut, |_| true)
}

/// [`phase_flatness`] restricted to grid positions accepted by `region`.
pub fn phase_flatness_where(
    psi: &ComplexField,
    density_cut: f64,
    region: impl Fn(f64) -> bool,
) -> Result<f64> {
    let grid = psi.grid();
    let values = psi.values();
    let support: Vec<usize> = (0..grid.n_points()).filter(|&j| region(grid.x(j))).collect();
    let peak = support
        .iter()
        .map(|&j| values[j])
        .max_by(|a, b| a.norm_sqr().total_cmp(&b.norm_sqr()))
        .unwrap_or_default();
    let cut = density_cut * peak.norm_sqr();
    if peak.norm_sqr() == 0.0 {
        return Err(Error::InvalidField("phase of a zero field".into()));
    }
    let reference = peak.conj() / peak.norm();
    let mut phases = Vec::new();
    let mut prev: Option<f64> = None;
    for &j in &support {
        if values[j].norm_sqr() < cut || values[j].norm_sqr() == 0.0 {
            continue;
        }
        let raw = (values[j] * reference).arg();
        let unwrapped = match prev {
            None => raw,
            Some(p) => {
                let mut d = raw - p.rem_euclid(std::f64::consts::TAU);
                d = (d + std::f64::consts::PI).rem_euclid(std::f64::consts::TAU) - std::f64::consts::PI;
                p + d
            }
        };
        phases.push(unwrapped);
        prev = Some(unwrapped);
    }
    if phases.is_empty() {
        return Err(Error::InvalidField("no samples above the density cut".into()));
    }
    let max = phases.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = phases.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(max - min)
}

/// Phase spread modulo `π`: sign changes of a real profile (nodes) do not
/// count. Identical to [`phase_flatness`] for nodeless states.
pub fn phase_flatness_mod_pi(psi: &ComplexField, density_cut: f64) -> Result<f64> {
    let doubled: Vec<Complex64> = psi
        .values()
        .iter()
        .map(|&v| if v.norm() > 0.0 { v * v / v.norm() } else { v })
        .collect();
    Ok(0.5 * phase_flatness(&ComplexField::new(*psi.grid(), doubled)?, density_cut)?)
}

/// 1D Thomas-Fermi chemical potential `½(3c_n/2)^{2/3}` for the harmonic trap.
pub fn thomas_fermi_mu(c_n: f64) -> f64 {
    0.5 * (1.5 * c_n).powf(2.0 / 3.0)
}

/// Unit-norm Thomas-Fermi profile `sqrt(max(μ - x²/2, 0)/c_n)`; falls back to
/// the oscillator ground state when `c_n = 0`.
pub fn thomas_fermi_profile(grid: Grid1D, c_n: f64) -> Result<ComplexField> {
    if c_n <= 0.0 {
        return grid::ho_eigenstate(0, grid);
    }
    let mu = thomas_fermi_mu(c_n);
    ComplexField::from_real_fn(grid, |x| ((mu - 0.5 * x * x).max(0.0) / c_n).sqrt())?.normalized()
}

fn check_inputs(psi0: &ComplexField, trap: &TrapPotential, lambda: f64, opts: &RelaxOptions) -> Result<()> {
    if !(lambda < 0.0) {
        return Err(Error::Config(format!("relaxation needs lambda < 0, got {lambda}")));
    }
    if grid::norm_sq(psi0) <= 0.0 {
        return Err(Error::InvalidField("relaxation start is a zero field".into()));
    }
    if opts.check_every == 0 {
        return Err(Error::Config("check_every must be >= 1".into()));
    }
    let guard = dynamics::stability_guard(lambda, opts.dt);
    if opts.guarded && !guard.pass {
        return Err(Error::Unstable(guard.to_string()));
    }
    trap.validate(psi0.grid())
}

/// Relaxes at fixed `μ` with nonlinearity `c_n_estimate`, then renormalizes:
/// the unit-norm state solves the equilibrium equation with
/// `c_n_corrected = c_n_estimate · ∫|ψ_final|²`.
pub fn relax_fixed_mu(
    psi0: &ComplexField,
    trap: &TrapPotential,
    mu: f64,
    c_n_estimate: f64,
    lambda: f64,
    opts: &RelaxOptions,
) -> Result<RelaxationReport> {
    check_inputs(psi0, trap, lambda, opts)?;
    let grid = *psi0.grid();
    let params = GpeParams::new(c_n_estimate, mu, lambda, trap.clone())?;
    let mut prop = Propagator::new(grid, params)?;
    let steps = dynamics::step_count(opts.t_max, opts.dt);
    let mut psi = psi0.values().to_vec();
    let mut time_to_residual = None;
    let mut taken = 0;
    while taken < steps {
        let chunk = opts.check_every.min(steps - taken);
        for s in 0..chunk {
            prop.step(&mut psi, (taken + s) as f64 * opts.dt, opts.dt)?;
        }
        taken += chunk;
        let field = ComplexField::new(grid, psi.clone())?;
        let n = grid::norm_sq(&field);
        if n <= 0.0 {
            return Err(Error::NotConverged("field relaxed to zero; mu is below the lowest level".into()));
        }
        let res = residual(&field, trap, mu, c_n_estimate) / n.sqrt();
        let t = taken as f64 * opts.dt;
        if res < opts.residual_tol && time_to_residual.is_none() {
            time_to_residual = Some(t);
        }
        if res < opts.residual_tol
            && phase_flatness_mod_pi(&field, opts.density_cut)? < opts.phase_tol
            && !opts.run_to_t_max
        {
            break;
        }
    }
    let field = ComplexField::new(grid, psi)?;
    let final_norm_sq = grid::norm_sq(&field);
    let c_n_corrected = c_n_estimate * final_norm_sq;
    let state = field.normalized()?.phase_aligned();
    let residual_l2 = residual(&state, trap, mu, c_n_corrected);
    let phase_flatness_rad = phase_flatness_mod_pi(&state, opts.density_cut)?;
    Ok(RelaxationReport {
        converged: residual_l2 < opts.residual_tol && phase_flatness_rad < opts.phase_tol,
        final_state: state,
        mu,
        c_n_corrected,
        iterations: taken,
        elapsed_sim_time: taken as f64 * opts.dt,
        phase_flatness_rad,
        residual_l2,
        time_to_residual,
        final_norm_sq,
    })
}

/// Relaxes at fixed `c_n`, renormalizing to unit norm and resetting
/// `μ ← chemical_potential(ψ)` every `check_every` steps.
pub fn relax_fixed_c(
    psi0: &ComplexField,
    trap: &TrapPotential,
    c_n: f64,
    lambda: f64,
    opts: &RelaxOptions,
) -> Result<RelaxationReport> {
    check_inputs(psi0, trap, lambda, opts)?;
    let grid = *psi0.grid();
    let start = psi0.normalized()?;
    let mut mu = chemical_potential(&start, trap, c_n)?;
    let mut prop = Propagator::new(grid, GpeParams::new(c_n, mu, lambda, trap.clone())?)?;
    let steps = dynamics::step_count(opts.t_max, opts.dt);
    let mut psi = start.into_values();
    let mut time_to_residual = None;
    let mut taken = 0;
    let mut last_norm = 1.0;
    while taken < steps {
        let chunk = opts.check_every.min(steps - taken);
        for s in 0..chunk {
            prop.step(&mut psi, (taken + s) as f64 * opts.dt, opts.dt)?;
        }
        taken += chunk;
        let raw = ComplexField::new(grid, std::mem::take(&mut psi))?;
        last_norm = grid::norm_sq(&raw);
        let field = raw.normalized()?;
        mu = chemical_potential(&field, trap, c_n)?;
        prop.set_mu(mu);
        let res = residual(&field, trap, mu, c_n);
        let t = taken as f64 * opts.dt;
        if res < opts.residual_tol && time_to_residual.is_none() {
            time_to_residual = Some(t);
        }
        let done = res < opts.residual_tol
            && phase_flatness_mod_pi(&field, opts.density_cut)? < opts.phase_tol;
        psi = field.into_values();
        if done && !opts.run_to_t_max {
            break;
        }
    }
    let state = ComplexField::new(grid, psi)?.phase_aligned();
    let residual_l2 = residual(&state, trap, mu, c_n);
    let phase_flatness_rad = phase_flatness_mod_pi(&state, opts.density_cut)?;
    Ok(RelaxationReport {
        converged: residual_l2 < opts.residual_tol && phase_flatness_rad < opts.phase_tol,
        final_state: state,
        mu,
        c_n_corrected: c_n,
        iterations: taken,
        elapsed_sim_time: taken as f64 * opts.dt,
        phase_flatness_rad,
        residual_l2,
        time_to_residual,
        final_norm_sq: last_norm,
    })
}

/// Diagnostics of an odd-parity stationary state.
#[derive(Debug, Clone)]
pub struct OddParityReport {
    pub relaxation: RelaxationReport,
    pub zero_crossings: usize,
    /// Phase difference across the origin, wrapped to `[0, π]`.
    pub phase_jump: f64,
    pub left_flatness: f64,
    pub right_flatness: f64,
    /// `max |ψ(x) + ψ(-x)|`.
    pub antisymmetry_violation: f64,
}

/// Sign changes of the (phase-aligned) real profile, ignoring samples below
/// `1e-10` of the peak magnitude.
pub fn zero_crossings(psi: &ComplexField) -> usize {
    let aligned = psi.phase_aligned();
    let peak = aligned.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
    let signs: Vec<f64> = aligned
        .values()
        .iter()
        .filter(|v| v.norm() > 1e-10 * peak)
        .map(|v| v.re.signum())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// `max_j |ψ(x_j) + ψ(-x_j)|`.
pub fn antisymmetry_violation(psi: &ComplexField) -> f64 {
    let v = psi.values();
    let n = v.len();
    (0..n).map(|j| (v[j] + v[n - 1 - j]).norm()).fold(0.0, f64::max)
}

/// `max_j |ψ(x_j) - ψ(-x_j)|`.
pub fn symmetry_violation(psi: &ComplexField) -> f64 {
    let v = psi.values();
    let n = v.len();
    (0..n).map(|j| (v[j] - v[n - 1 - j]).norm()).fold(0.0, f64::max)
}

/// Relaxes from the odd oscillator state `start_n` at fixed `c_n`. Parity is
/// conserved by the evolution, the node count is not.
pub fn odd_parity_state(
    grid: Grid1D,
    trap: &TrapPotential,
    c_n: f64,
    lambda: f64,
    start_n: usize,
    opts: &RelaxOptions,
) -> Result<OddParityReport> {
    if start_n % 2 == 0 {
        return Err(Error::Config(format!("odd-parity start needs an odd level, got {start_n}")));
    }
    if !trap.is_even() {
        return Err(Error::Config("odd-parity relaxation needs an even trap".into()));
    }
    let start = grid::ho_eigenstate(start_n, grid)?;
    let relaxation = relax_fixed_c(&start, trap, c_n, lambda, opts)?;
    let state = &relaxation.final_state;
    let c = grid.center();
    let jump = (state.values()[c + 1] * state.values()[c - 1].conj()).arg().abs();
    let left_flatness = phase_flatness_where(state, opts.density_cut, |x| x < 0.0)?;
    let right_flatness = phase_flatness_where(state, opts.density_cut, |x| x > 0.0)?;
    Ok(OddParityReport {
        zero_crossings: zero_crossings(state),
        phase_jump: jump,
        left_flatness,
        right_flatness,
        antisymmetry_violation: antisymmetry_violation(state),
        relaxation,
    })
}

/// Outcome of the adiabatic turn-on benchmark.
#[derive(Debug, Clone)]
pub struct AdiabaticReport {
    /// `(ramp duration, final residual)` for every ramp tried.
    pub attempts: Vec<(f64, f64)>,
    /// Shortest ramp whose end state met the residual tolerance.
    pub time_to_convergence: Option<f64>,
    pub final_state: ComplexField,
    pub mu: f64,
}

/// Undamped evolution from the oscillator ground state while `c_n` ramps
/// linearly from 0 to `c_target`. Ramp durations double from `first_ramp`
/// until the final residual meets `residual_tol` or `max_ramp` is exceeded.
pub fn adiabatic_turn_on(
    grid: Grid1D,
    trap: &TrapPotential,
    c_target: f64,
    dt: f64,
    first_ramp: f64,
    max_ramp: f64,
    residual_tol: f64,
) -> Result<AdiabaticReport> {
    if !(first_ramp > 0.0 && max_ramp >= first_ramp) {
        return Err(Error::Config("adiabatic ramp durations must satisfy 0 < first <= max".into()));
    }
    let start = grid::ho_eigenstate(0, grid)?.normalized()?;
    let mut attempts = Vec::new();
    let mut ramp = first_ramp;
    let mut last = (start.clone(), 0.5);
    while ramp <= max_ramp * (1.0 + 1e-12) {
        let mu0 = chemical_potential(&start, trap, 0.0)?;
        let mut prop = Propagator::new(grid, GpeParams::new(0.0, mu0, 0.0, trap.clone())?)?;
        let steps = dynamics::step_count(ramp, dt);
        let mut psi = start.values().to_vec();
        for s in 0..steps {
            let frac = ((s as f64 + 0.5) / steps as f64).min(1.0);
            prop.set_c_n(c_target * frac);
            prop.step(&mut psi, s as f64 * dt, dt)?;
        }
        let field = ComplexField::new(grid, psi)?.normalized()?;
        let mu = chemical_potential(&field, trap, c_target)?;
        let res = residual(&field, trap, mu, c_target);
        attempts.push((ramp, res));
        last = (field, mu);
        if res < residual_tol {
            return Ok(AdiabaticReport {
                attempts,
                time_to_convergence: Some(ramp),
                final_state: last.0,
                mu: last.1,
            });
        }
        ramp *= 2.0;
    }
    Ok(AdiabaticReport {
        attempts,
        time_to_convergence: None,
        final_state: last.0,
        mu: last.1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{ho_eigenstate, make_grid};

    fn harmonic() -> TrapPotential {
        TrapPotential::Harmonic
    }

    #[test]
    fn chemical_potential_of_ho_states() {
        let g = make_grid(801, 10.0).unwrap();
        let dx2 = g.dx() * g.dx();
        let phi0 = ho_eigenstate(0, g).unwrap();
        let phi1 = ho_eigenstate(1, g).unwrap();
        assert!((chemical_potential(&phi0, &harmonic(), 0.0).unwrap() - 0.5).abs() < dx2);
        assert!((chemical_potential(&phi1, &harmonic(), 0.0).unwrap() - 1.5).abs() < dx2);
        assert!(chemical_potential(&ComplexField::zeros(g), &harmonic(), 0.0).is_err());
    }

    #[test]
    fn residual_of_exact_ho_ground_state() {
        // Truncation residual is dx²/24 · ‖φ0''''‖ ≈ 0.107 dx².
        let g = make_grid(1025, 12.0).unwrap();
        let phi0 = ho_eigenstate(0, g).unwrap();
        assert!(residual(&phi0, &harmonic(), 0.5, 0.0) < 1e-4);
        assert!((residual(&phi0, &harmonic(), 1.5, 0.0) - 1.0).abs() < 1e-3);
    }

    #[test]
    fn phase_flatness_cases() {
        let g = make_grid(201, 5.0).unwrap();
        let gauss = ho_eigenstate(0, g).unwrap();
        assert_eq!(phase_flatness(&gauss, 1e-4).unwrap(), 0.0);

        // e^{i k x} on a Gaussian: the spread is k times the supported width,
        // i.e. 2·k·x_c with x_c where the density falls to the cut.
        let k = 0.01;
        let tilted = ComplexField::from_fn(g, |x| {
            Complex64::from_polar((-(x * x) / 2.0).exp(), k * x)
        })
        .unwrap();
        let cut: f64 = 1e-4;
        let x_c = (-cut.ln()).sqrt();
        let last_in = (0..g.n_points())
            .map(|j| g.x(j))
            .filter(|x| *x <= x_c)
            .fold(f64::NEG_INFINITY, f64::max);
        let expect = 2.0 * k * last_in;
        assert!((phase_flatness(&tilted, cut).unwrap() - expect).abs() < 1e-12);

        assert!(phase_flatness(&ComplexField::zeros(g), 1e-4).is_err());
    }

    #[test]
    fn unwrapping_handles_large_linear_phase() {
        let g = make_grid(401, 4.0).unwrap();
        let wound = ComplexField::from_fn(g, |x| Complex64::from_polar(1.0, 3.0 * x)).unwrap();
        let spread = phase_flatness(&wound, 1e-6).unwrap();
        assert!((spread - 24.0).abs() < 1e-9, "{spread}");
    }

    #[test]
    fn fixed_mu_linear_limit() {
        let g = make_grid(257, 8.0).unwrap();
        let start = ComplexField::from_real_fn(g, |x| (-(x * x) / 1.5).exp()).unwrap();
        let opts = RelaxOptions { t_max: 20.0, residual_tol: 1e-9, ..RelaxOptions::default() };
        // The discrete ground level sits slightly below 0.5; use it as μ.
        let mu = discrete_ground_level(g);
        let r = relax_fixed_mu(&start, &harmonic(), mu, 0.0, -2.0, &opts).unwrap();
        assert_eq!(r.c_n_corrected, 0.0);
        assert!(r.residual_l2 < 1e-8, "{}", r.residual_l2);
        let phi0 = ho_eigenstate(0, g).unwrap();
        assert!(r.final_state.l2_distance(&phi0).unwrap() < 1e-3);
    }

    fn discrete_ground_level(g: Grid1D) -> f64 {
        let opts = RelaxOptions { t_max: 20.0, residual_tol: 1e-11, ..RelaxOptions::default() };
        let r = relax_fixed_c(&ho_eigenstate(0, g).unwrap(), &harmonic(), 0.0, -2.0, &opts).unwrap();
        r.mu
    }

    #[test]
    fn fixed_mu_renormalization_rule() {
        let g = make_grid(257, 10.0).unwrap();
        let start = ho_eigenstate(0, g).unwrap();
        let opts = RelaxOptions { t_max: 20.0, ..RelaxOptions::default() };
        let r = relax_fixed_mu(&start, &harmonic(), 4.0, 10.0, -2.0, &opts).unwrap();
        assert!(r.converged);
        assert!((grid::norm_sq(&r.final_state) - 1.0).abs() < 1e-10);
        assert!((r.c_n_corrected - 10.0 * r.final_norm_sq).abs() < 1e-12);
        assert!(residual(&r.final_state, &harmonic(), 4.0, r.c_n_corrected) < 1e-5);
    }

    #[test]
    fn fixed_c_linear_limit() {
        // The three-point Laplacian shifts the ground level by -dx²/32.
        let mut errors = Vec::new();
        for n in [257, 513] {
            let g = make_grid(n, 12.0).unwrap();
            let start = ComplexField::from_real_fn(g, |x| (-(x * x) / 3.0).exp()).unwrap();
            let opts = RelaxOptions { residual_tol: 1e-9, ..RelaxOptions::default() };
            let r = relax_fixed_c(&start, &harmonic(), 0.0, -2.0, &opts).unwrap();
            assert!(r.converged);
            let dx2 = g.dx() * g.dx();
            assert!((r.mu - (0.5 - dx2 / 32.0)).abs() < dx2 * dx2);
            assert!(r.final_state.l2_distance(&ho_eigenstate(0, g).unwrap()).unwrap() < dx2);
            errors.push(0.5 - r.mu);
        }
        let ratio = errors[0] / errors[1];
        assert!((ratio - 4.0).abs() < 0.05, "{ratio}");
    }

    #[test]
    fn rejects_bad_inputs() {
        let g = make_grid(51, 5.0).unwrap();
        let phi = ho_eigenstate(0, g).unwrap();
        let opts = RelaxOptions::default();
        assert!(relax_fixed_c(&phi, &harmonic(), 1.0, 0.0, &opts).is_err());
        assert!(relax_fixed_c(&ComplexField::zeros(g), &harmonic(), 1.0, -1.0, &opts).is_err());
        let fast = RelaxOptions { dt: 0.1, ..opts };
        assert!(matches!(
            relax_fixed_c(&phi, &harmonic(), 1.0, -1.0, &fast),
            Err(Error::Unstable(_))
        ));
        assert!(odd_parity_state(g, &harmonic(), 1.0, -1.0, 2, &opts).is_err());
    }

    #[test]
    fn odd_state_in_linear_limit_is_first_excited() {
        let g = make_grid(257, 8.0).unwrap();
        let opts = RelaxOptions { t_max: 10.0, ..RelaxOptions::default() };
        let r = odd_parity_state(g, &harmonic(), 0.0, -2.0, 1, &opts).unwrap();
        assert!((r.relaxation.mu - 1.5).abs() < 1e-3);
        assert_eq!(r.zero_crossings, 1);
        assert!((r.phase_jump - std::f64::consts::PI).abs() < 1e-12);
        assert!(r.antisymmetry_violation < 1e-14);
    }

    #[test]
    fn thomas_fermi_limits() {
        assert!((thomas_fermi_mu(50.0) - 8.8914).abs() < 1e-3);
        let g = make_grid(101, 10.0).unwrap();
        let tf = thomas_fermi_profile(g, 50.0).unwrap();
        assert!((grid::norm_sq(&tf) - 1.0).abs() < 1e-12);
    }
}
