//! Helpers for the acceptance run: criterion outcomes, report lines and the
//! few independent oracles the criteria need.

use std::fmt;
use std::time::Duration;

/// Outcome of one acceptance criterion.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub id: String,
    pub name: String,
    pub pass: bool,
    /// Measured quantities, one `key = value` per entry.
    pub details: Vec<String>,
    pub elapsed: Duration,
}

impl Verdict {
    pub fn new(id: impl Into<String>, name: impl Into<String>) -> Self {
        Self { id: id.into(), name: name.into(), pass: true, details: Vec::new(), elapsed: Duration::ZERO }
    }

    /// Records a measured value and whether it meets its requirement.
    pub fn check(&mut self, ok: bool, detail: impl Into<String>) -> &mut Self {
        let d = detail.into();
        self.pass &= ok;
        self.details.push(if ok { d } else { format!("{d} [x]") });
        self
    }

    /// A failure that prevented measurement altogether.
    pub fn error(&mut self, err: impl fmt::Display) -> &mut Self {
        self.check(false, format!("error: {err}"))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} criterion {:<3} {:<32} ({:>6.1}s)  {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.details.join("; ")
        )
    }
}

/// Relative deviation `|a/b - 1|`.
pub fn rel(a: f64, b: f64) -> f64 {
    (a / b - 1.0).abs()
}

/// `K_ν(z) = ∫_0^∞ e^{-z cosh t} cosh(νt) dt` by the trapezoidal rule, which
/// converges geometrically for this doubly-exponentially decaying integrand.
pub fn bessel_k_quadrature(nu: f64, z: f64) -> f64 {
    let h = 1e-3;
    let mut sum = 0.5 * (-z).exp();
    let mut k = 1;
    loop {
        let t = k as f64 * h;
        let term = (-z * t.cosh()).exp() * (nu * t).cosh();
        sum += term;
        if z * t.cosh() > 750.0 || (term < 1e-300 && t > 1.0) {
            break;
        }
        k += 1;
    }
    sum * h
}

/// Max over samples of `|x|`-ratio spread: `max/min` of positive values.
pub fn spread_ratio(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::MIN, f64::max);
    let min = values.iter().copied().fold(f64::MAX, f64::min);
    max / min
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadrature_reference_values() {
        // tabulated K_1(1) and K_0(1)
        assert!((bessel_k_quadrature(1.0, 1.0) - 0.601_907_230_197_235).abs() < 1e-12);
        assert!((bessel_k_quadrature(0.0, 1.0) - 0.421_024_438_240_708).abs() < 1e-12);
    }

    #[test]
    fn verdict_formatting() {
        let mut v = Verdict::new("4", "Kohn mode");
        v.check(true, "eps1 = 1.0001");
        assert!(v.to_string().starts_with("PASS criterion 4"));
        v.check(false, "eps3 = 3.1");
        assert!(!v.pass);
        assert!(v.to_string().starts_with("FAIL") && v.to_string().contains("[x]"));
    }
}
