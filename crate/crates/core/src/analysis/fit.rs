//! Damped-sinusoid fits and envelope decay rates.

use std::f64::consts::{PI, TAU};

use nalgebra::{Matrix5, Vector5};

use crate::error::{Error, Result};

const MAX_ITERATIONS: usize = 200;
const PARAM_TOL: f64 = 1e-8;

/// `A e^{-γt} sin(2πνt + φ) + B`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DampedSinusoidParams {
    pub amplitude: f64,
    pub decay_rate: f64,
    pub frequency: f64,
    pub phase: f64,
    pub offset: f64,
}

impl DampedSinusoidParams {
    pub fn eval(&self, t: f64) -> f64 {
        self.amplitude * (-self.decay_rate * t).exp() * (TAU * self.frequency * t + self.phase).sin()
            + self.offset
    }

    fn to_vector(self) -> Vector5<f64> {
        Vector5::new(self.amplitude, self.decay_rate, self.frequency, self.phase, self.offset)
    }

    fn from_vector(v: &Vector5<f64>) -> Self {
        Self { amplitude: v[0], decay_rate: v[1], frequency: v[2], phase: v[3], offset: v[4] }
    }

    // A >= 0 and φ in (-π, π].
    fn canonical(mut self) -> Self {
        if self.amplitude < 0.0 {
            self.amplitude = -self.amplitude;
            self.phase += PI;
        }
        if self.frequency < 0.0 {
            self.frequency = -self.frequency;
            self.phase = PI - self.phase;
        }
        self.phase = PI - (PI - self.phase).rem_euclid(TAU);
        self
    }
}

/// Fitted parameters plus diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DampedSinusoidFit {
    pub params: DampedSinusoidParams,
    pub rms_residual: f64,
    pub converged: bool,
    pub iterations: usize,
}

impl DampedSinusoidFit {
    /// `name = value` lines.
    pub fn to_record(&self, label: &str) -> String {
        let p = &self.params;
        format!(
            "[{label}]\namplitude = {:.12e}\ndecay_rate = {:.12e}\nfrequency = {:.12e}\nphase = {:.12e}\noffset = {:.12e}\nrms_residual = {:.12e}\nconverged = {}\niterations = {}\n",
            p.amplitude, p.decay_rate, p.frequency, p.phase, p.offset, self.rms_residual, self.converged, self.iterations
        )
    }
}

fn validate_series(times: &[f64], values: &[f64], min_len: usize) -> Result<()> {
    if times.len() != values.len() {
        return Err(Error::Fit(format!(
            "{} times but {} values",
            times.len(),
            values.len()
        )));
    }
    if times.len() < min_len {
        return Err(Error::Fit(format!("need at least {min_len} samples, got {}", times.len())));
    }
    if times.iter().chain(values).any(|v| !v.is_finite()) {
        return Err(Error::Fit("series contains non-finite samples".into()));
    }
    if times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Fit("times must be strictly increasing".into()));
    }
    Ok(())
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Least-squares slope and intercept.
fn linear_regression(x: &[f64], y: &[f64]) -> (f64, f64) {
    let (mx, my) = (mean(x), mean(y));
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    (slope, my - slope * mx)
}

fn local_maxima(values: &[f64]) -> Vec<usize> {
    (1..values.len().saturating_sub(1))
        .filter(|&k| values[k] > values[k - 1] && values[k] >= values[k + 1])
        .collect()
}

fn periodogram(times: &[f64], centered: &[f64], nu: f64) -> f64 {
    let (mut re, mut im) = (0.0, 0.0);
    for (t, y) in times.iter().zip(centered) {
        let (s, c) = (TAU * nu * t).sin_cos();
        re += y * c;
        im += y * s;
    }
    re * re + im * im
}

fn dominant_frequency(times: &[f64], centered: &[f64]) -> f64 {
    let span = times[times.len() - 1] - times[0];
    let mut steps: Vec<f64> = times.windows(2).map(|w| w[1] - w[0]).collect();
    steps.sort_by(f64::total_cmp);
    let nyquist = 0.5 / steps[steps.len() / 2];
    let df = 0.1 / span;
    let mut best = (0.0, f64::NEG_INFINITY);
    let mut nu = 0.5 / span;
    while nu <= nyquist {
        let p = periodogram(times, centered, nu);
        if p > best.1 {
            best = (nu, p);
        }
        nu += df;
    }
    // golden-section refinement inside the winning bin
    let (mut lo, mut hi) = ((best.0 - df).max(1e-12), best.0 + df);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..60 {
        let a = hi - g * (hi - lo);
        let b = lo + g * (hi - lo);
        if periodogram(times, centered, a) > periodogram(times, centered, b) {
            hi = b;
        } else {
            lo = a;
        }
    }
    0.5 * (lo + hi)
}

// Linear least squares for (c1, c2, B) at fixed γ and ν.
fn linear_part(times: &[f64], values: &[f64], decay: f64, nu: f64) -> (DampedSinusoidParams, f64) {
    let mut ata = nalgebra::Matrix3::<f64>::zeros();
    let mut atb = nalgebra::Vector3::<f64>::zeros();
    for (&t, &y) in times.iter().zip(values) {
        let e = (-decay * t).exp();
        let (s, c) = (TAU * nu * t).sin_cos();
        let row = nalgebra::Vector3::new(e * s, e * c, 1.0);
        ata += row * row.transpose();
        atb += row * y;
    }
    let sol = ata.lu().solve(&atb).unwrap_or_else(nalgebra::Vector3::zeros);
    let params = DampedSinusoidParams {
        amplitude: sol[0].hypot(sol[1]),
        decay_rate: decay,
        frequency: nu,
        phase: sol[1].atan2(sol[0]),
        offset: sol[2],
    };
    (params, sum_sq(times, values, &params))
}

fn sum_sq(times: &[f64], values: &[f64], p: &DampedSinusoidParams) -> f64 {
    times.iter().zip(values).map(|(&t, &y)| (y - p.eval(t)).powi(2)).sum()
}

fn initial_guess(times: &[f64], values: &[f64]) -> DampedSinusoidParams {
    let offset = mean(values);
    let centered: Vec<f64> = values.iter().map(|v| v - offset).collect();
    let nu = dominant_frequency(times, &centered);
    let magnitude: Vec<f64> = centered.iter().map(|v| v.abs()).collect();
    let peaks: Vec<usize> = local_maxima(&magnitude)
        .into_iter()
        .filter(|&k| magnitude[k] > 0.0)
        .collect();
    let decay = if peaks.len() >= 2 {
        let x: Vec<f64> = peaks.iter().map(|&k| times[k]).collect();
        let y: Vec<f64> = peaks.iter().map(|&k| magnitude[k].ln()).collect();
        -linear_regression(&x, &y).0
    } else {
        0.0
    };
    // polish the decay seed on the linear sub-problem
    let mut best = linear_part(times, values, decay, nu);
    for factor in [0.0, 0.25, 0.5, 0.75, 1.5, 2.0, 3.0] {
        let trial = linear_part(times, values, decay * factor, nu);
        if trial.1 < best.1 {
            best = trial;
        }
    }
    best.0
}

/// Fits `A e^{-γt} sin(2πνt + φ) + B` by Levenberg-Marquardt-damped
/// Gauss-Newton iterations. Without an initial guess the seed comes from the
/// series mean, the dominant periodogram peak and a log-envelope regression.
pub fn fit_damped_sinusoid(
    times: &[f64],
    values: &[f64],
    initial_guess_override: Option<DampedSinusoidParams>,
) -> Result<DampedSinusoidFit> {
    validate_series(times, values, 20)?;
    let m = mean(values);
    let spread = values.iter().map(|v| (v - m).abs()).fold(0.0, f64::max);
    if spread <= 1e-14 * (1.0 + m.abs()) {
        return Err(Error::Fit("series is constant".into()));
    }
    let seed = initial_guess_override.unwrap_or_else(|| initial_guess(times, values));

    let mut p = seed.to_vector();
    let mut cost = sum_sq(times, values, &DampedSinusoidParams::from_vector(&p));
    let mut damping = 1e-3;
    let mut converged = false;
    let mut iterations = 0;
    while iterations < MAX_ITERATIONS {
        iterations += 1;
        let cur = DampedSinusoidParams::from_vector(&p);
        let mut jtj = Matrix5::<f64>::zeros();
        let mut jtr = Vector5::<f64>::zeros();
        for (&t, &y) in times.iter().zip(values) {
            let e = (-cur.decay_rate * t).exp();
            let (s, c) = (TAU * cur.frequency * t + cur.phase).sin_cos();
            let a = cur.amplitude;
            let row = Vector5::new(e * s, -t * a * e * s, TAU * t * a * e * c, a * e * c, 1.0);
            jtj += row * row.transpose();
            jtr += row * (y - cur.eval(t));
        }
        let mut accepted = false;
        while damping < 1e16 {
            let mut lhs = jtj;
            for k in 0..5 {
                lhs[(k, k)] += damping * jtj[(k, k)].max(1e-300);
            }
            let Some(step) = lhs.lu().solve(&jtr) else {
                damping *= 10.0;
                continue;
            };
            let trial = p + step;
            let trial_cost = sum_sq(times, values, &DampedSinusoidParams::from_vector(&trial));
            if trial_cost.is_finite() && trial_cost <= cost {
                let rel = (0..5)
                    .map(|k| step[k].abs() / (trial[k].abs() + 1e-6))
                    .fold(0.0, f64::max);
                p = trial;
                cost = trial_cost;
                damping = (damping * 0.3).max(1e-12);
                accepted = true;
                if rel < PARAM_TOL {
                    converged = true;
                }
                break;
            }
            damping *= 10.0;
        }
        if converged {
            break;
        }
        if !accepted {
            // no downhill step exists at any damping: a stationary point
            converged = true;
            break;
        }
    }
    let params = DampedSinusoidParams::from_vector(&p).canonical();
    Ok(DampedSinusoidFit {
        params,
        rms_residual: (cost / times.len() as f64).sqrt(),
        converged: converged && params.frequency > 0.0,
        iterations,
    })
}

/// Decay-rate fit of a positive, possibly oscillating series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeDecay {
    /// `-d ln(envelope)/dt`; positive for decay.
    pub rate: f64,
    /// Whether local maxima (rather than the whole series) were regressed.
    pub used_maxima: bool,
    pub samples_used: usize,
    /// Samples discarded for being at or below `1e-12`.
    pub dropped: usize,
}

/// Regresses `ln` of the envelope (local maxima, or the series itself when it
/// has fewer than three) against time.
pub fn envelope_decay(times: &[f64], values: &[f64]) -> Result<EnvelopeDecay> {
    validate_series(times, values, 10)?;
    let kept: Vec<(f64, f64)> = times
        .iter()
        .zip(values)
        .filter(|(_, v)| **v > 1e-12)
        .map(|(t, v)| (*t, *v))
        .collect();
    let dropped = times.len() - kept.len();
    if kept.len() < 2 {
        return Err(Error::Fit("fewer than two samples above 1e-12".into()));
    }
    let ys: Vec<f64> = kept.iter().map(|p| p.1).collect();
    let maxima = local_maxima(&ys);
    let (used_maxima, points): (bool, Vec<(f64, f64)>) = if maxima.len() >= 3 {
        (true, maxima.iter().map(|&k| kept[k]).collect())
    } else {
        (false, kept)
    };
    let x: Vec<f64> = points.iter().map(|p| p.0).collect();
    let y: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    Ok(EnvelopeDecay {
        rate: -linear_regression(&x, &y).0,
        used_maxima,
        samples_used: points.len(),
        dropped,
    })
}

/// [`envelope_decay`] rate only.
pub fn envelope_decay_rate(times: &[f64], values: &[f64]) -> Result<f64> {
    Ok(envelope_decay(times, values)?.rate)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synth(p: &DampedSinusoidParams, n: usize, t_end: f64) -> (Vec<f64>, Vec<f64>) {
        let times: Vec<f64> = (0..n).map(|k| t_end * k as f64 / (n - 1) as f64).collect();
        let values = times.iter().map(|&t| p.eval(t)).collect();
        (times, values)
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn recovers_noiseless_parameters() {
        let truth = DampedSinusoidParams {
            amplitude: 0.1,
            decay_rate: 0.06,
            frequency: 0.32,
            phase: 0.4,
            offset: 1.2,
        };
        let (t, y) = synth(&truth, 400, 20.0);
        let fit = fit_damped_sinusoid(&t, &y, None).unwrap();
        let p = fit.params;
        assert!(fit.converged);
        assert!(rel(p.amplitude, 0.1) < 1e-6);
        assert!(rel(p.decay_rate, 0.06) < 1e-6);
        assert!(rel(p.frequency, 0.32) < 1e-6);
        assert!(rel(p.phase, 0.4) < 1e-6);
        assert!(rel(p.offset, 1.2) < 1e-6);
    }

    #[test]
    fn exact_across_parameter_grid() {
        for &decay in &[0.02, 0.1, 0.3] {
            for &nu in &[0.15, 0.3, 0.6] {
                for &phase in &[-2.0, 0.3, 2.5] {
                    let truth = DampedSinusoidParams { amplitude: 0.2, decay_rate: decay, frequency: nu, phase, offset: 0.8 };
                    let (t, y) = synth(&truth, 300, 15.0);
                    let p = fit_damped_sinusoid(&t, &y, None).unwrap().params;
                    assert!(rel(p.decay_rate, decay) < 1e-6, "{decay} {nu} {phase}: {p:?}");
                    assert!(rel(p.frequency, nu) < 1e-6, "{decay} {nu} {phase}: {p:?}");
                    assert!((p.phase - phase).abs() < 1e-6, "{decay} {nu} {phase}: {p:?}");
                    assert!(rel(p.amplitude, 0.2) < 1e-6);
                }
            }
        }
    }

    #[test]
    fn rejects_degenerate_series() {
        let t: Vec<f64> = (0..30).map(|k| k as f64).collect();
        assert!(fit_damped_sinusoid(&t, &vec![1.0; 30], None).is_err());
        assert!(fit_damped_sinusoid(&t[..10], &vec![1.0; 10], None).is_err());
        assert!(fit_damped_sinusoid(&t, &vec![1.0; 29], None).is_err());
    }

    #[test]
    fn canonical_form() {
        let p = DampedSinusoidParams { amplitude: -1.0, decay_rate: 0.0, frequency: 1.0, phase: 0.5, offset: 0.0 }.canonical();
        assert_eq!(p.amplitude, 1.0);
        assert!((p.phase - (0.5 + PI - TAU)).abs() < 1e-12);
        for t in [0.1, 0.7] {
            let orig = DampedSinusoidParams { amplitude: -1.0, decay_rate: 0.0, frequency: 1.0, phase: 0.5, offset: 0.0 };
            assert!((p.eval(t) - orig.eval(t)).abs() < 1e-12);
        }
        assert!(p.phase > -PI && p.phase <= PI);
    }

    #[test]
    fn pure_exponential_rate() {
        let t: Vec<f64> = (0..50).map(|k| 0.1 * k as f64).collect();
        let y: Vec<f64> = t.iter().map(|t| (-0.4 * t).exp()).collect();
        let d = envelope_decay(&t, &y).unwrap();
        assert!(!d.used_maxima);
        assert!((d.rate - 0.4).abs() < 1e-6);
    }

    #[test]
    fn oscillating_envelope() {
        let t: Vec<f64> = (0..600).map(|k| 0.02 * k as f64).collect();
        let y: Vec<f64> = t.iter().map(|t| (-0.3 * t).exp() * (1.0 + 0.2 * (5.0 * t).cos())).collect();
        let d = envelope_decay(&t, &y).unwrap();
        assert!(d.used_maxima);
        assert!((d.rate - 0.3).abs() < 1e-3, "{}", d.rate);
        let flat: Vec<f64> = t.iter().map(|t| 0.5 + 0.01 * (5.0 * t).cos()).collect();
        assert!(envelope_decay_rate(&t, &flat).unwrap().abs() < 1e-3);
    }

    #[test]
    fn small_samples_dropped() {
        let t: Vec<f64> = (0..40).map(|k| k as f64).collect();
        let y: Vec<f64> = t.iter().map(|t| (-2.0 * t).exp()).collect();
        let d = envelope_decay(&t, &y).unwrap();
        assert!(d.dropped > 0);
        assert!((d.rate - 2.0).abs() < 1e-6);
    }
}
