//! Modified Bessel functions of the second kind, orders 0 and 1.
//!
//! Power series for `z <= 2`, Steed's continued fraction (Temme's CF2) above.

use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const SERIES_LIMIT: f64 = 2.0;
const EPS: f64 = 1e-16;
const MAX_TERMS: usize = 10_000;

/// `K_1(z)` for `z > 0`.
pub fn bessel_k1(z: f64) -> Result<f64> {
    check_domain(z)?;
    Ok(if z <= SERIES_LIMIT { k1_series(z) } else { k01_continued_fraction(z).1 })
}

/// `K_0(z)` for `z > 0`.
pub fn bessel_k0(z: f64) -> Result<f64> {
    check_domain(z)?;
    Ok(if z <= SERIES_LIMIT { k0_series(z) } else { k01_continued_fraction(z).0 })
}

fn check_domain(z: f64) -> Result<()> {
    if z.is_finite() && z > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("modified Bessel K needs z > 0, got {z}")))
    }
}

fn k0_series(z: f64) -> f64 {
    let q = 0.25 * z * z;
    let log_term = (0.5 * z).ln() + EULER_GAMMA;
    let mut term = 1.0; // q^k / (k!)^2
    let mut harmonic = 0.0;
    let mut i0 = 1.0;
    let mut tail = 0.0;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        term *= q / (kf * kf);
        harmonic += 1.0 / kf;
        i0 += term;
        tail += harmonic * term;
        if term < EPS * i0 {
            break;
        }
    }
    -log_term * i0 + tail
}

fn k1_series(z: f64) -> f64 {
    let q = 0.25 * z * z;
    // term_k = q^k / (k! (k+1)!)
    let mut term = 1.0;
    let mut psi_k1 = -EULER_GAMMA; // ψ(k+1)
    let mut psi_k2 = 1.0 - EULER_GAMMA; // ψ(k+2)
    let mut i1_sum = term;
    let mut digamma_sum = (psi_k1 + psi_k2) * term;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        term *= q / (kf * (kf + 1.0));
        psi_k1 += 1.0 / kf;
        psi_k2 += 1.0 / (kf + 1.0);
        i1_sum += term;
        digamma_sum += (psi_k1 + psi_k2) * term;
        if term < EPS * i1_sum {
            break;
        }
    }
    let i1 = 0.5 * z * i1_sum;
    1.0 / z + (0.5 * z).ln() * i1 - 0.25 * z * digamma_sum
}

// Returns (K0, K1).
fn k01_continued_fraction(x: f64) -> (f64, f64) {
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..MAX_TERMS {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < EPS {
            break;
        }
    }
    h *= a1;
    let k0 = (std::f64::consts::PI / (2.0 * x)).sqrt() * (-x).exp() / s;
    let k1 = k0 * (x + 0.5 - h) / x;
    (k0, k1)
}
