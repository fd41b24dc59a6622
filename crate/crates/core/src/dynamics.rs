//! Right-hand sides of the standard and damped GPE, and a fixed-step RK4
//! propagator.
//!
//! The damped equation in the frame rotating at the chemical potential is
//!
//! ```text
//! dψ/dt = -i (1 + iΛ) (H[ψ] - μ) ψ,   H = -½ D² + V(x, t) + c_n |ψ|²
//! ```
//!
//! with `D²` the three-point Laplacian and `ψ = 0` outside the grid.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{self, ComplexField, Grid1D};

/// Largest `|Λ|·dt` the RK4 integrator is trusted with.
pub const STABILITY_THRESHOLD: f64 = 0.03;

/// Default integration step in units of 1/ω.
pub const DEFAULT_DT: f64 = 1e-3;

/// Confining potential.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TrapPotential {
    /// `V = x²/2`.
    Harmonic,
    /// `V = ½(1 + η sin Ωt) x²` for `t < t_off`, then the static trap.
    HarmonicModulated { eta: f64, omega: f64, t_off: f64 },
    /// Values of `V` at each grid point.
    Tabulated { values: Vec<f64> },
}

impl TrapPotential {
    pub fn validate(&self, grid: &Grid1D) -> Result<()> {
        match self {
            TrapPotential::Harmonic => Ok(()),
            TrapPotential::HarmonicModulated { eta, omega, t_off } => {
                if !(eta.is_finite() && *eta >= 0.0) {
                    return Err(Error::Config(format!("modulation eta must be >= 0, got {eta}")));
                }
                if !(t_off.is_finite() && *t_off >= 0.0) {
                    return Err(Error::Config(format!("modulation t_off must be >= 0, got {t_off}")));
                }
                if !omega.is_finite() {
                    return Err(Error::Config("modulation omega must be finite".into()));
                }
                Ok(())
            }
            TrapPotential::Tabulated { values } => {
                if values.len() != grid.n_points() {
                    return Err(Error::Config(format!(
                        "tabulated potential has {} values, grid has {} points",
                        values.len(),
                        grid.n_points()
                    )));
                }
                if values.iter().any(|v| !v.is_finite()) {
                    return Err(Error::Config("tabulated potential has non-finite values".into()));
                }
                Ok(())
            }
        }
    }

    pub fn is_time_dependent(&self) -> bool {
        matches!(self, TrapPotential::HarmonicModulated { eta, t_off, .. } if *eta > 0.0 && *t_off > 0.0)
    }

    /// Even under `x -> -x` on a symmetric grid.
    pub fn is_even(&self) -> bool {
        match self {
            TrapPotential::Tabulated { values } => {
                let n = values.len();
                (0..n).all(|j| values[j] == values[n - 1 - j])
            }
            _ => true,
        }
    }

    /// Samples `V(x_j, t)`.
    pub fn sample(&self, grid: &Grid1D, t: f64) -> Vec<f64> {
        let mut out = vec![0.0; grid.n_points()];
        self.sample_into(grid, t, &mut out);
        out
    }

    fn spring_factor(&self, t: f64) -> f64 {
        match self {
            TrapPotential::HarmonicModulated { eta, omega, t_off } if t < *t_off => {
                1.0 + eta * (omega * t).sin()
            }
            _ => 1.0,
        }
    }

    fn sample_into(&self, grid: &Grid1D, t: f64, out: &mut [f64]) {
        match self {
            TrapPotential::Tabulated { values } => out.copy_from_slice(values),
            _ => {
                let k = self.spring_factor(t);
                for (j, v) in out.iter_mut().enumerate() {
                    let x = grid.x(j);
                    *v = 0.5 * k * x * x;
                }
            }
        }
    }
}

/// Physical parameters of the (damped) GPE.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GpeParams {
    c_n: f64,
    mu: f64,
    lambda: f64,
    trap: TrapPotential,
}

impl GpeParams {
    pub fn new(c_n: f64, mu: f64, lambda: f64, trap: TrapPotential) -> Result<Self> {
        if !(c_n.is_finite() && c_n >= 0.0) {
            return Err(Error::Config(format!("c_n must be finite and >= 0, got {c_n}")));
        }
        if !mu.is_finite() {
            return Err(Error::Config(format!("mu must be finite, got {mu}")));
        }
        if !(lambda.is_finite() && lambda <= 0.0) {
            return Err(Error::Config(format!(
                "lambda must be finite and <= 0 (negative values damp), got {lambda}"
            )));
        }
        Ok(Self { c_n, mu, lambda, trap })
    }

    /// Harmonic trap shorthand.
    pub fn harmonic(c_n: f64, mu: f64, lambda: f64) -> Result<Self> {
        Self::new(c_n, mu, lambda, TrapPotential::Harmonic)
    }

    pub fn c_n(&self) -> f64 {
        self.c_n
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn trap(&self) -> &TrapPotential {
        &self.trap
    }

    pub fn with_mu(&self, mu: f64) -> Result<Self> {
        Self::new(self.c_n, mu, self.lambda, self.trap.clone())
    }

    pub fn with_lambda(&self, lambda: f64) -> Result<Self> {
        Self::new(self.c_n, self.mu, lambda, self.trap.clone())
    }

    pub fn with_c_n(&self, c_n: f64) -> Result<Self> {
        Self::new(c_n, self.mu, self.lambda, self.trap.clone())
    }

    pub fn with_trap(&self, trap: TrapPotential) -> Result<Self> {
        Self::new(self.c_n, self.mu, self.lambda, trap)
    }
}

/// Writes `(-½D² + V + c_n|ψ|²) ψ` into `out`.
pub(crate) fn hamiltonian_kernel(
    psi: &[Complex64],
    potential: &[f64],
    c_n: f64,
    dx: f64,
    out: &mut [Complex64],
) {
    let n = psi.len();
    let kin = 0.5 / (dx * dx);
    let zero = Complex64::new(0.0, 0.0);
    for j in 0..n {
        let left = if j > 0 { psi[j - 1] } else { zero };
        let right = if j + 1 < n { psi[j + 1] } else { zero };
        // (left + right) is evaluated identically at mirrored points, which
        // keeps parity exact on a symmetric grid.
        let lap = (left + right) - psi[j] * 2.0;
        out[j] = -lap * kin + psi[j] * (potential[j] + c_n * psi[j].norm_sqr());
    }
}

/// `(-½D² + V(t) + c_n|ψ|²) ψ`.
pub fn apply_hamiltonian(psi: &ComplexField, params: &GpeParams, t: f64) -> ComplexField {
    let grid = *psi.grid();
    let pot = params.trap.sample(&grid, t);
    let mut out = vec![Complex64::new(0.0, 0.0); grid.n_points()];
    hamiltonian_kernel(psi.values(), &pot, params.c_n, grid.dx(), &mut out);
    ComplexField::new(grid, out).expect("hamiltonian of a finite field is finite")
}

/// `dψ/dt = -i(1 + iΛ)(H - μ)ψ`.
pub fn apply_damped_rhs(psi: &ComplexField, params: &GpeParams, t: f64) -> ComplexField {
    let h = apply_hamiltonian(psi, params, t);
    let factor = Complex64::new(params.lambda, -1.0);
    let values = h
        .values()
        .iter()
        .zip(psi.values())
        .map(|(hp, p)| factor * (hp - p * params.mu))
        .collect();
    ComplexField::new(*psi.grid(), values).expect("finite rhs")
}

/// Energy functional `∫ ½|∇ψ|² + V|ψ|² + ½c_n|ψ|⁴`, discretized consistently
/// with the finite-difference Hamiltonian.
pub fn energy(psi: &ComplexField, params: &GpeParams, t: f64) -> f64 {
    let grid = psi.grid();
    let v = psi.values();
    let n = v.len();
    let dx = grid.dx();
    let pot = params.trap.sample(grid, t);
    let zero = Complex64::new(0.0, 0.0);
    let mut kinetic = 0.0;
    for j in 0..=n {
        let a = if j > 0 { v[j - 1] } else { zero };
        let b = if j < n { v[j] } else { zero };
        kinetic += (b - a).norm_sqr();
    }
    kinetic *= 0.5 / dx;
    let local: f64 = (0..n)
        .map(|j| {
            let d = v[j].norm_sqr();
            grid.weight(j) * (pot[j] * d + 0.5 * params.c_n * d * d)
        })
        .sum();
    kinetic + local
}

/// Outcome of [`stability_guard`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityCheck {
    pub product: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl std::fmt::Display for StabilityCheck {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let verdict = if self.pass { "ok" } else { "exceeds" };
        write!(
            f,
            "|lambda|*dt = {:.3e} {} threshold {:.3e}",
            self.product, verdict, self.threshold
        )
    }
}

/// Fails when `|Λ|·dt` exceeds [`STABILITY_THRESHOLD`].
pub fn stability_guard(lambda: f64, dt: f64) -> StabilityCheck {
    let product = lambda.abs() * dt;
    StabilityCheck {
        product,
        threshold: STABILITY_THRESHOLD,
        pass: product <= STABILITY_THRESHOLD,
    }
}

/// Reusable RK4 integrator with scratch buffers.
#[derive(Debug, Clone)]
pub struct Propagator {
    params: GpeParams,
    grid: Grid1D,
    base_potential: Vec<f64>,
    potential: Vec<f64>,
    k: [Vec<Complex64>; 4],
    stage: Vec<Complex64>,
    hpsi: Vec<Complex64>,
}

impl Propagator {
    pub fn new(grid: Grid1D, params: GpeParams) -> Result<Self> {
        params.trap.validate(&grid)?;
        let base_potential = params.trap.sample(&grid, f64::INFINITY);
        let n = grid.n_points();
        let zero = vec![Complex64::new(0.0, 0.0); n];
        Ok(Self {
            potential: base_potential.clone(),
            base_potential,
            params,
            grid,
            k: [zero.clone(), zero.clone(), zero.clone(), zero.clone()],
            stage: zero.clone(),
            hpsi: zero,
        })
    }

    pub fn params(&self) -> &GpeParams {
        &self.params
    }

    pub fn set_mu(&mut self, mu: f64) {
        self.params.mu = mu;
    }

    pub fn set_c_n(&mut self, c_n: f64) {
        self.params.c_n = c_n;
    }

    fn update_potential(&mut self, t: f64) {
        if self.params.trap.is_time_dependent() {
            let k = self.params.trap.spring_factor(t);
            for (v, b) in self.potential.iter_mut().zip(&self.base_potential) {
                *v = k * b;
            }
        }
    }

    // Evaluates the damped rhs at `self.stage` into `self.k[slot]`.
    fn rhs(&mut self, t: f64, slot: usize) {
        self.update_potential(t);
        hamiltonian_kernel(&self.stage, &self.potential, self.params.c_n, self.grid.dx(), &mut self.hpsi);
        let factor = Complex64::new(self.params.lambda, -1.0);
        let mu = self.params.mu;
        let out = &mut self.k[slot];
        for ((o, h), p) in out.iter_mut().zip(&self.hpsi).zip(&self.stage) {
            *o = factor * (h - p * mu);
        }
    }

    /// One classical RK4 step in place. Does not consult the stability guard.
    pub fn step(&mut self, psi: &mut [Complex64], t: f64, dt: f64) -> Result<()> {
        self.stage.copy_from_slice(psi);
        self.rhs(t, 0);
        for j in 0..psi.len() {
            self.stage[j] = psi[j] + self.k[0][j] * (0.5 * dt);
        }
        self.rhs(t + 0.5 * dt, 1);
        for j in 0..psi.len() {
            self.stage[j] = psi[j] + self.k[1][j] * (0.5 * dt);
        }
        self.rhs(t + 0.5 * dt, 2);
        for j in 0..psi.len() {
            self.stage[j] = psi[j] + self.k[2][j] * dt;
        }
        self.rhs(t + dt, 3);
        let sixth = dt / 6.0;
        let mut finite = true;
        for j in 0..psi.len() {
            psi[j] += (self.k[0][j] + (self.k[1][j] + self.k[2][j]) * 2.0 + self.k[3][j]) * sixth;
            finite &= psi[j].re.is_finite() && psi[j].im.is_finite();
        }
        if finite {
            Ok(())
        } else {
            Err(Error::Diverged { t: t + dt, dt })
        }
    }
}

/// One RK4 step of the damped GPE.
pub fn rk4_step(psi: &ComplexField, t: f64, dt: f64, params: &GpeParams) -> Result<ComplexField> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::Config(format!("dt must be positive, got {dt}")));
    }
    let check = stability_guard(params.lambda, dt);
    if !check.pass {
        return Err(Error::Unstable(check.to_string()));
    }
    let mut prop = Propagator::new(*psi.grid(), params.clone())?;
    let mut values = psi.values().to_vec();
    prop.step(&mut values, t, dt)?;
    ComplexField::new(*psi.grid(), values)
}

/// Observables recorded along a trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Observables {
    pub norm_sq: f64,
    pub width: f64,
    pub energy: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RunStatus {
    Completed,
    Diverged { t: f64, dt: f64 },
}

/// Time-ordered record of an evolution.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub observables: Vec<Observables>,
    /// Empty unless snapshots were requested; otherwise aligned with `times`.
    pub snapshots: Vec<ComplexField>,
    pub status: RunStatus,
    /// Last finite state reached.
    pub final_state: ComplexField,
}

impl Trajectory {
    pub fn diverged(&self) -> bool {
        matches!(self.status, RunStatus::Diverged { .. })
    }

    pub fn widths(&self) -> Vec<f64> {
        self.observables.iter().map(|o| o.width).collect()
    }

    pub fn norms(&self) -> Vec<f64> {
        self.observables.iter().map(|o| o.norm_sq).collect()
    }
}

/// Recording and guard settings for [`evolve`].
#[derive(Debug, Clone, Copy)]
pub struct EvolveOptions {
    pub record_stride: usize,
    pub store_snapshots: bool,
    /// When false the stability guard is skipped (instability scans).
    pub enforce_stability: bool,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        Self {
            record_stride: 100,
            store_snapshots: false,
            enforce_stability: true,
        }
    }
}

impl EvolveOptions {
    pub fn stride(record_stride: usize) -> Self {
        Self { record_stride, ..Self::default() }
    }

    pub fn with_snapshots(mut self) -> Self {
        self.store_snapshots = true;
        self
    }

    pub fn unguarded(mut self) -> Self {
        self.enforce_stability = false;
        self
    }
}

/// Number of fixed steps covering `t_final`.
pub(crate) fn step_count(t_final: f64, dt: f64) -> usize {
    (t_final / dt - 1e-9).ceil().max(1.0) as usize
}

/// Integrates from `t = 0` to `t_final`. Divergence stops the run and is
/// reported through [`Trajectory::status`] with everything recorded so far.
pub fn evolve(
    psi0: &ComplexField,
    t_final: f64,
    dt: f64,
    params: &GpeParams,
    options: EvolveOptions,
) -> Result<Trajectory> {
    if !(t_final.is_finite() && t_final > 0.0) {
        return Err(Error::Config(format!("t_final must be positive, got {t_final}")));
    }
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::Config(format!("dt must be positive, got {dt}")));
    }
    if options.record_stride == 0 {
        return Err(Error::Config("record_stride must be >= 1".into()));
    }
    if options.enforce_stability {
        let check = stability_guard(params.lambda, dt);
        if !check.pass {
            return Err(Error::Unstable(check.to_string()));
        }
    }
    let grid = *psi0.grid();
    let mut prop = Propagator::new(grid, params.clone())?;
    let steps = step_count(t_final, dt);
    let mut psi = psi0.values().to_vec();
    let mut traj = Trajectory {
        times: Vec::new(),
        observables: Vec::new(),
        snapshots: Vec::new(),
        status: RunStatus::Completed,
        final_state: psi0.clone(),
    };
    let record = |traj: &mut Trajectory, values: &[Complex64], t: f64| -> Result<()> {
        let field = ComplexField::new(grid, values.to_vec())?;
        traj.times.push(t);
        traj.observables.push(Observables {
            norm_sq: grid::norm_sq(&field),
            width: grid::width(&field).unwrap_or(0.0),
            energy: energy(&field, params, t),
        });
        if options.store_snapshots {
            traj.snapshots.push(field);
        }
        Ok(())
    };
    record(&mut traj, &psi, 0.0)?;
    let mut last_good = psi.clone();
    for step in 0..steps {
        let t = step as f64 * dt;
        if let Err(Error::Diverged { t, dt }) = prop.step(&mut psi, t, dt) {
            traj.status = RunStatus::Diverged { t, dt };
            traj.final_state = ComplexField::new(grid, last_good)?;
            return Ok(traj);
        }
        let done = step + 1;
        if done % options.record_stride == 0 || done == steps {
            record(&mut traj, &psi, done as f64 * dt)?;
        }
        last_good.copy_from_slice(&psi);
    }
    traj.final_state = ComplexField::new(grid, psi)?;
    Ok(traj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{ho_eigenstate, inner, make_grid, norm_sq};

    fn interior_max_dev(a: &ComplexField, b: &ComplexField, lo: f64) -> f64 {
        let g = a.grid();
        (0..g.n_points())
            .filter(|&j| g.x(j).abs() < lo)
            .map(|j| (a.values()[j] - b.values()[j]).norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn hamiltonian_on_ho_states() {
        let g = make_grid(801, 10.0).unwrap();
        let p = GpeParams::harmonic(0.0, 0.0, 0.0).unwrap();
        let dx2 = g.dx() * g.dx();
        for (n, e) in [(0usize, 0.5), (1, 1.5)] {
            let phi = ho_eigenstate(n, g).unwrap();
            let h = apply_hamiltonian(&phi, &p, 0.0);
            let dev = interior_max_dev(&h, &phi.scaled(Complex64::new(e, 0.0)), 6.0);
            assert!(dev < 0.5 * dx2, "n={n} dev={dev}");
        }
    }

    #[test]
    fn rhs_reduces_to_gpe_when_undamped() {
        let g = make_grid(101, 6.0).unwrap();
        let phi = ho_eigenstate(2, g).unwrap();
        let p = GpeParams::harmonic(3.0, 0.7, 0.0).unwrap();
        let rhs = apply_damped_rhs(&phi, &p, 0.0);
        let h = apply_hamiltonian(&phi, &p, 0.0);
        for j in 0..g.n_points() {
            let expect = (h.values()[j] - phi.values()[j] * 0.7) * Complex64::new(0.0, -1.0);
            assert!((rhs.values()[j] - expect).norm() < 1e-14);
        }
    }

    #[test]
    fn rejects_positive_lambda_and_negative_c() {
        assert!(GpeParams::harmonic(1.0, 0.0, 0.1).is_err());
        assert!(GpeParams::harmonic(-1.0, 0.0, -0.1).is_err());
        assert!(GpeParams::harmonic(f64::NAN, 0.0, -0.1).is_err());
    }

    #[test]
    fn guard_thresholds() {
        let ok = stability_guard(-2.0, 1e-3);
        assert!(ok.pass);
        assert!((ok.product - 0.002).abs() < 1e-15);
        let bad = stability_guard(-0.5, 0.1);
        assert!(!bad.pass);
        assert!(bad.to_string().contains("exceeds"));
        assert!(stability_guard(0.0, 10.0).pass);
    }

    #[test]
    fn rk4_step_rejects_unstable_and_detects_divergence() {
        let g = make_grid(21, 3.0).unwrap();
        let phi = ho_eigenstate(0, g).unwrap();
        let p = GpeParams::harmonic(0.0, 0.5, -1.0).unwrap();
        assert!(matches!(rk4_step(&phi, 0.0, 0.1, &p), Err(Error::Unstable(_))));

        let huge = ComplexField::from_real_fn(g, |_| 1e300).unwrap();
        let mut prop = Propagator::new(g, GpeParams::harmonic(1.0, 0.0, 0.0).unwrap()).unwrap();
        let mut v = huge.into_values();
        assert!(matches!(prop.step(&mut v, 0.0, 1e-3), Err(Error::Diverged { .. })));
    }

    #[test]
    fn norm_conserved_without_damping() {
        let g = make_grid(201, 10.0).unwrap();
        let psi = ComplexField::from_real_fn(g, |x| (-(x - 1.0).powi(2) / 2.0).exp())
            .unwrap()
            .normalized()
            .unwrap();
        let p = GpeParams::harmonic(5.0, 1.0, 0.0).unwrap();
        let traj = evolve(&psi, 2.0, 1e-3, &p, EvolveOptions::stride(100)).unwrap();
        let n0 = traj.observables[0].norm_sq;
        for o in &traj.observables {
            assert!((o.norm_sq - n0).abs() < 1e-9);
        }
        assert_eq!(traj.times.len(), 21);
        assert!((traj.times[20] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn damping_with_high_mu_decays_norm() {
        let g = make_grid(101, 8.0).unwrap();
        let psi = ho_eigenstate(0, g).unwrap();
        // μ below the level energy: Λ(H - μ) with Λ < 0 shrinks the field.
        let p = GpeParams::harmonic(0.0, 0.0, -0.5).unwrap();
        let traj = evolve(&psi, 1.0, 1e-3, &p, EvolveOptions::stride(100)).unwrap();
        let last = traj.observables.last().unwrap().norm_sq;
        assert!((last - (-0.5f64).exp()).abs() < 1e-3, "{last}");
    }

    #[test]
    fn modulated_trap_switches_off() {
        let g = make_grid(5, 1.0).unwrap();
        let trap = TrapPotential::HarmonicModulated { eta: 0.5, omega: 2.0, t_off: 1.0 };
        let on = trap.sample(&g, 0.25 * std::f64::consts::PI);
        let off = trap.sample(&g, 2.0);
        assert!((on[4] - 0.5 * 1.5).abs() < 1e-12);
        assert!((off[4] - 0.5).abs() < 1e-12);
        assert!(trap.is_time_dependent());
        assert!(TrapPotential::Tabulated { values: vec![0.0; 4] }.validate(&g).is_err());
        assert!(TrapPotential::HarmonicModulated { eta: -1.0, omega: 1.0, t_off: 1.0 }
            .validate(&g)
            .is_err());
    }

    #[test]
    fn single_step_matches_propagator() {
        let g = make_grid(41, 5.0).unwrap();
        let psi = ho_eigenstate(1, g).unwrap();
        let p = GpeParams::harmonic(2.0, 1.0, -0.2).unwrap();
        let a = rk4_step(&psi, 0.0, 1e-3, &p).unwrap();
        let traj = evolve(&psi, 1e-3, 1e-3, &p, EvolveOptions::stride(1)).unwrap();
        assert!(a.l2_distance(&traj.final_state).unwrap() < 1e-15);
        assert!((norm_sq(&a) - inner(&a, &a).unwrap().re).abs() < 1e-15);
    }
}
