//! Quantum-kinetic estimate of the damping constant.
//!
//! `W⁺(N) = 4m(akT)²/(πħ³) · e^{2μ/kT} · (μ_N/kT) K₁(μ_N/kT)` is the rate at
//! which thermal atoms enter the condensate; `Λ ≈ -W⁺/ω`. This is the only
//! place in the crate that works in SI units.

use serde::{Deserialize, Serialize};

use super::bessel::bessel_k1;
use crate::error::{Error, Result};

pub const HBAR: f64 = 1.054_571_817e-34;
pub const BOLTZMANN: f64 = 1.380_649e-23;
pub const ATOMIC_MASS_UNIT: f64 = 1.660_539_066_60e-27;

/// Largest `μ/kT` accepted before `e^{2μ/kT}` is considered an overflow.
pub const MAX_MU_OVER_KT: f64 = 200.0;

/// Documented MIT-like sodium parameters shipped with the tool.
pub const MIT_LIKE_PARAMS: &str = include_str!("../../data/mit_like_wplus.toml");

/// Inputs of `W⁺(N)`, all SI.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WPlusParams {
    /// s-wave scattering length `a` (m).
    pub scattering_length: f64,
    /// Temperature `T` (K).
    pub temperature: f64,
    /// Chemical potential `μ` in the fugacity factor (J).
    pub mu: f64,
    /// Condensate chemical potential `μ_N` (J).
    pub mu_n: f64,
    /// Atomic mass (kg).
    pub mass: f64,
    /// Trap angular frequency `ω` (rad/s).
    pub trap_omega: f64,
}

impl WPlusParams {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("scattering_length", self.scattering_length),
            ("temperature", self.temperature),
            ("mu", self.mu),
            ("mu_n", self.mu_n),
            ("mass", self.mass),
            ("trap_omega", self.trap_omega),
        ];
        for (name, value) in fields {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::Config(format!("{name} must be positive, got {value}")));
            }
        }
        Ok(())
    }

    pub fn kt(&self) -> f64 {
        BOLTZMANN * self.temperature
    }

    /// Parses a TOML parameter file. Syntax errors carry line and column.
    pub fn from_toml(text: &str) -> Result<Self> {
        let p: WPlusParams = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        p.validate()?;
        Ok(p)
    }
}

/// `W⁺(N)` in 1/s.
pub fn w_plus(p: &WPlusParams) -> Result<f64> {
    p.validate()?;
    let kt = p.kt();
    let mu_ratio = p.mu / kt;
    if mu_ratio > MAX_MU_OVER_KT {
        return Err(Error::Domain(format!(
            "mu/kT = {mu_ratio:.1} overflows the fugacity factor (limit {MAX_MU_OVER_KT})"
        )));
    }
    let z = p.mu_n / kt;
    let prefactor = 4.0 * p.mass * (p.scattering_length * kt).powi(2)
        / (std::f64::consts::PI * HBAR.powi(3));
    Ok(prefactor * (2.0 * mu_ratio).exp() * z * bessel_k1(z)?)
}

/// `Λ = -W⁺/ω` and the damping time `1/W⁺`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaEstimate {
    pub lambda: f64,
    /// Seconds; infinite when `W⁺ = 0`.
    pub damping_time: f64,
}

pub fn lambda_estimate(w_plus_rate: f64, trap_omega: f64) -> Result<LambdaEstimate> {
    if !(w_plus_rate.is_finite() && w_plus_rate >= 0.0) {
        return Err(Error::Domain(format!("W+ must be >= 0, got {w_plus_rate}")));
    }
    if !(trap_omega.is_finite() && trap_omega > 0.0) {
        return Err(Error::Domain(format!("trap omega must be > 0, got {trap_omega}")));
    }
    Ok(LambdaEstimate {
        lambda: if w_plus_rate == 0.0 { 0.0 } else { -w_plus_rate / trap_omega },
        damping_time: 1.0 / w_plus_rate,
    })
}
