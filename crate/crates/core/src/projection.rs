//! Quasiparticle projection.
//!
//! A field is expanded about the condensate as
//!
//! ```text
//! ψ = e^{-iμt} [ (1 + b_g) ψ_g + Σ_i ( u_i b_i + v_i* b_i* ) ]
//! ```
//!
//! and the coefficients are recovered with the Bogoliubov orthogonality
//! relations: `b_i = ∫ u_i* δ - v_i* δ*`.

use num_complex::Complex64;

use crate::bdg::BdgSpectrum;
use crate::dynamics::Trajectory;
use crate::error::{Error, Result};
use crate::grid::{self, check_same_grid, ComplexField};

/// Largest relative norm change a seeded excitation may cause.
pub const SEED_NORM_GUARD: f64 = 0.5;

/// Expansion coefficients at one instant.
#[derive(Debug, Clone)]
pub struct ModeAmplitudes {
    pub t: f64,
    pub b_g: Complex64,
    /// `b[i - 1]` belongs to mode `i`.
    pub b: Vec<Complex64>,
    /// L2 norm of the part of `δ` outside the mode basis.
    pub residual_outside_basis: f64,
    /// L2 norm of `δ` itself.
    pub delta_norm: f64,
}

impl ModeAmplitudes {
    pub fn populations(&self) -> Vec<f64> {
        self.b.iter().map(|b| b.norm_sqr()).collect()
    }

    pub fn condensate_population(&self) -> f64 {
        self.b_g.norm_sqr()
    }
}

/// `ψ_g + b u_i + b* v_i*`: the condensate with a coherent excitation of
/// mode `i` (1-based) at `t = 0`.
pub fn seed_mode(spectrum: &BdgSpectrum, i: usize, b: Complex64) -> Result<ComplexField> {
    let mode = spectrum.mode(i)?;
    let psi_g = &spectrum.condensate;
    let excited = psi_g
        .add_scaled(b, &mode.u)?
        .add_scaled(b.conj(), &mode.v.conj())?;
    let before = grid::norm_sq(psi_g);
    let after = grid::norm_sq(&excited);
    let change = (after / before - 1.0).abs();
    if change >= SEED_NORM_GUARD {
        return Err(Error::Config(format!(
            "seeding mode {i} with |b| = {:.3} changes the norm by {:.0}% (limit {:.0}%)",
            b.norm(),
            100.0 * change,
            100.0 * SEED_NORM_GUARD
        )));
    }
    Ok(excited)
}

/// Extracts `b_g` and `b_i` from the lab-frame field `psi` at time `t`.
pub fn project(psi: &ComplexField, spectrum: &BdgSpectrum, t: f64) -> Result<ModeAmplitudes> {
    check_same_grid(psi, &spectrum.condensate)?;
    project_rotating(&psi.scaled(Complex64::from_polar(1.0, spectrum.mu * t)), spectrum, t)
}

/// Same as [`project`] for a field already in the frame rotating at `μ`,
/// which is what [`crate::dynamics::evolve`] produces.
pub fn project_rotating(chi: &ComplexField, spectrum: &BdgSpectrum, t: f64) -> Result<ModeAmplitudes> {
    let psi_g = &spectrum.condensate;
    check_same_grid(chi, psi_g)?;
    let b_g = grid::inner(psi_g, chi)? - 1.0;
    let delta = chi.add_scaled(-(b_g + 1.0), psi_g)?;
    let delta_conj = delta.conj();
    let mut b = Vec::with_capacity(spectrum.modes.len());
    let mut remainder = delta.clone();
    for mode in &spectrum.modes {
        let bi = grid::inner(&mode.u, &delta)? - grid::inner(&mode.v, &delta_conj)?;
        remainder = remainder
            .add_scaled(-bi, &mode.u)?
            .add_scaled(-bi.conj(), &mode.v.conj())?;
        b.push(bi);
    }
    Ok(ModeAmplitudes {
        t,
        b_g,
        b,
        residual_outside_basis: grid::norm_sq(&remainder).sqrt(),
        delta_norm: grid::norm_sq(&delta).sqrt(),
    })
}

/// Rebuilds the field from its expansion coefficients.
pub fn reconstruct(amplitudes: &ModeAmplitudes, spectrum: &BdgSpectrum) -> Result<ComplexField> {
    let mut chi = spectrum.condensate.scaled(1.0 + amplitudes.b_g);
    for (mode, &bi) in spectrum.modes.iter().zip(&amplitudes.b) {
        chi = chi.add_scaled(bi, &mode.u)?.add_scaled(bi.conj(), &mode.v.conj())?;
    }
    Ok(chi.scaled(Complex64::from_polar(1.0, -spectrum.mu * amplitudes.t)))
}

/// Population time series along a trajectory.
#[derive(Debug, Clone)]
pub struct PopulationSeries {
    pub times: Vec<f64>,
    /// `|b_g|²`.
    pub condensate: Vec<f64>,
    /// `modes[i - 1][k]` is `|b_i|²` at `times[k]`.
    pub modes: Vec<Vec<f64>>,
    pub residual_outside_basis: Vec<f64>,
    pub delta_norm: Vec<f64>,
}

impl PopulationSeries {
    pub fn mode(&self, i: usize) -> &[f64] {
        &self.modes[i - 1]
    }

    /// Largest `residual / |δ|` along the series.
    pub fn max_relative_residual(&self) -> f64 {
        self.residual_outside_basis
            .iter()
            .zip(&self.delta_norm)
            .filter(|(_, d)| **d > 0.0)
            .map(|(r, d)| r / d)
            .fold(0.0, f64::max)
    }
}

/// Projects every stored snapshot of `trajectory`. Snapshots are rotating-frame
/// fields, so no `e^{iμt}` factor is applied.
pub fn populations_along(trajectory: &Trajectory, spectrum: &BdgSpectrum) -> Result<PopulationSeries> {
    if trajectory.snapshots.len() != trajectory.times.len() || trajectory.snapshots.is_empty() {
        return Err(Error::MissingSnapshots(
            "trajectory has no stored snapshots; re-run evolve with snapshot recording enabled".into(),
        ));
    }
    let amps = trajectory
        .snapshots
        .iter()
        .zip(&trajectory.times)
        .map(|(chi, &t)| project_rotating(chi, spectrum, t))
        .collect::<Result<Vec<_>>>()?;
    let n_modes = spectrum.modes.len();
    Ok(PopulationSeries {
        times: trajectory.times.clone(),
        condensate: amps.iter().map(|a| a.condensate_population()).collect(),
        modes: (0..n_modes)
            .map(|i| amps.iter().map(|a| a.b[i].norm_sqr()).collect())
            .collect(),
        residual_outside_basis: amps.iter().map(|a| a.residual_outside_basis).collect(),
        delta_norm: amps.iter().map(|a| a.delta_norm).collect(),
    })
}
