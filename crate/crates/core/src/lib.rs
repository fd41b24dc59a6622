//! Simulation toolkit for a trapped 1D Bose-Einstein condensate evolving
//! under the phenomenologically damped Gross-Pitaevskii equation.
//!
//! The crate covers the damped dynamics of coherent excitations, Bogoliubov
//! quasiparticle spectra and projections, a damped-relaxation eigenstate
//! solver, and the post-processing used by the `dampgpe` command line tool.

pub mod analysis;
pub mod bdg;
pub mod config;
pub mod dynamics;
pub mod error;
pub mod experiments;
pub mod ground_state;
pub mod grid;
pub mod output;
pub mod projection;

pub use error::{Error, Result};

/// Unit conventions.
///
/// Everything outside [`analysis::w_plus`] is dimensionless with
/// `ħ = m = ω = 1`: lengths in `sqrt(ħ/mω)`, times in `1/ω`, energies in `ħω`.
pub mod units {
    /// Label written into output metadata.
    pub const CONVENTION: &str = "harmonic-oscillator units (hbar = m = omega = 1)";
}
