//! Scalar post-processing: damped-sinusoid fits, envelope decay rates and
//! the quantum-kinetic damping estimate.

mod bessel;
mod fit;
mod wplus;

pub use bessel::{bessel_k0, bessel_k1};
pub use fit::{
    envelope_decay, envelope_decay_rate, fit_damped_sinusoid, DampedSinusoidFit,
    DampedSinusoidParams, EnvelopeDecay,
};
pub use wplus::{
    lambda_estimate, w_plus, LambdaEstimate, WPlusParams, ATOMIC_MASS_UNIT, BOLTZMANN, HBAR,
    MIT_LIKE_PARAMS,
};
