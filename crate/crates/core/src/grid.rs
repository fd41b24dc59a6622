//! Uniform 1D grids, complex fields sampled on them, and basic observables.
//!
//! Quantities are in harmonic-oscillator units (see [`crate::units`]).
//! Integrals use the trapezoidal rule.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Highest harmonic-oscillator level [`ho_eigenstate`] will build.
pub const HO_MAX_LEVEL: usize = 40;

/// Symmetric uniform grid on `[-x_max, x_max]` with an odd number of points,
/// so that `x = 0` is always a sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid1D {
    n_points: usize,
    x_max: f64,
    dx: f64,
}

/// Builds a symmetric grid. `n_points` must be odd and at least 3.
pub fn make_grid(n_points: usize, x_max: f64) -> Result<Grid1D> {
    if n_points < 3 {
        return Err(Error::Config(format!(
            "grid needs at least 3 points, got {n_points}"
        )));
    }
    if n_points % 2 == 0 {
        return Err(Error::Config(format!(
            "grid n_points must be odd so that x = 0 is a grid point, got {n_points}"
        )));
    }
    if !(x_max.is_finite() && x_max > 0.0) {
        return Err(Error::Config(format!(
            "grid x_max must be positive and finite, got {x_max}"
        )));
    }
    Ok(Grid1D {
        n_points,
        x_max,
        dx: 2.0 * x_max / (n_points - 1) as f64,
    })
}

impl Grid1D {
    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    /// Index of the sample at `x = 0`.
    pub fn center(&self) -> usize {
        (self.n_points - 1) / 2
    }

    /// Position of sample `j`. Mirrored samples are exact negatives.
    pub fn x(&self, j: usize) -> f64 {
        (j as f64 - self.center() as f64) * self.dx
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n_points).map(|j| self.x(j)).collect()
    }

    /// Trapezoidal quadrature weight of sample `j`.
    pub fn weight(&self, j: usize) -> f64 {
        if j == 0 || j + 1 == self.n_points {
            0.5 * self.dx
        } else {
            self.dx
        }
    }

    /// Trapezoidal integral of real samples.
    pub fn integrate(&self, values: &[f64]) -> f64 {
        debug_assert_eq!(values.len(), self.n_points);
        values
            .iter()
            .enumerate()
            .map(|(j, v)| self.weight(j) * v)
            .sum()
    }

    /// Grid with the spacing halved over the same box.
    pub fn refined(&self) -> Grid1D {
        Grid1D {
            n_points: 2 * self.n_points - 1,
            x_max: self.x_max,
            dx: self.dx / 2.0,
        }
    }

    fn same_as(&self, other: &Grid1D) -> bool {
        self.n_points == other.n_points && self.x_max == other.x_max
    }
}

/// Complex wave function sampled on a [`Grid1D`].
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexField {
    grid: Grid1D,
    values: Vec<Complex64>,
}

impl ComplexField {
    pub fn new(grid: Grid1D, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.n_points {
            return Err(Error::InvalidField(format!(
                "field has {} samples but grid has {} points",
                values.len(),
                grid.n_points
            )));
        }
        if let Some(j) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::InvalidField(format!(
                "non-finite sample at index {j} (x = {})",
                grid.x(j)
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: Grid1D) -> Self {
        Self {
            grid,
            values: vec![Complex64::new(0.0, 0.0); grid.n_points],
        }
    }

    /// Samples `f(x)` at each grid point.
    pub fn from_fn(grid: Grid1D, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        Self::new(grid, (0..grid.n_points).map(|j| f(grid.x(j))).collect())
    }

    /// Samples a real profile.
    pub fn from_real_fn(grid: Grid1D, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::from_fn(grid, |x| Complex64::new(f(x), 0.0))
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn density(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.norm_sqr()).collect()
    }

    pub fn scaled(&self, factor: Complex64) -> ComplexField {
        ComplexField {
            grid: self.grid,
            values: self.values.iter().map(|v| v * factor).collect(),
        }
    }

    /// `self + factor * other`.
    pub fn add_scaled(&self, factor: Complex64, other: &ComplexField) -> Result<ComplexField> {
        check_same_grid(self, other)?;
        Ok(ComplexField {
            grid: self.grid,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + factor * b)
                .collect(),
        })
    }

    pub fn conj(&self) -> ComplexField {
        ComplexField {
            grid: self.grid,
            values: self.values.iter().map(|v| v.conj()).collect(),
        }
    }

    /// Unit-norm copy of the field.
    pub fn normalized(&self) -> Result<ComplexField> {
        let n = norm_sq(self);
        if n <= 0.0 {
            return Err(Error::InvalidField("cannot normalize a zero field".into()));
        }
        Ok(self.scaled(Complex64::new(1.0 / n.sqrt(), 0.0)))
    }

    /// Trapezoidal L2 distance to another field.
    pub fn l2_distance(&self, other: &ComplexField) -> Result<f64> {
        check_same_grid(self, other)?;
        let diff: Vec<f64> = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm_sqr())
            .collect();
        Ok(self.grid.integrate(&diff).sqrt())
    }

    /// Copy with the global phase rotated so the largest-magnitude sample is
    /// real and positive.
    pub fn phase_aligned(&self) -> ComplexField {
        let peak = self
            .values
            .iter()
            .copied()
            .max_by(|a, b| a.norm_sqr().total_cmp(&b.norm_sqr()))
            .unwrap_or_default();
        if peak.norm() == 0.0 {
            return self.clone();
        }
        self.scaled(peak.conj() / peak.norm())
    }
}

pub(crate) fn check_same_grid(f: &ComplexField, g: &ComplexField) -> Result<()> {
    if f.grid.same_as(&g.grid) {
        Ok(())
    } else {
        Err(Error::GridMismatch(format!(
            "({} points, x_max {}) vs ({} points, x_max {})",
            f.grid.n_points, f.grid.x_max, g.grid.n_points, g.grid.x_max
        )))
    }
}

/// Trapezoidal approximation of `∫ f*(x) g(x) dx`.
pub fn inner(f: &ComplexField, g: &ComplexField) -> Result<Complex64> {
    check_same_grid(f, g)?;
    let grid = f.grid;
    Ok(f
        .values
        .iter()
        .zip(&g.values)
        .enumerate()
        .map(|(j, (a, b))| a.conj() * b * grid.weight(j))
        .sum())
}

/// `∫ |f|² dx`.
pub fn norm_sq(f: &ComplexField) -> f64 {
    f.grid.integrate(&f.density())
}

/// Density-weighted standard deviation of position.
pub fn width(f: &ComplexField) -> Result<f64> {
    let density = f.density();
    let grid = f.grid;
    let total = grid.integrate(&density);
    if total <= 0.0 {
        return Err(Error::InvalidField("width of a zero-norm field".into()));
    }
    let (mut m1, mut m2) = (0.0, 0.0);
    for (j, d) in density.iter().enumerate() {
        let x = grid.x(j);
        let w = grid.weight(j) * d;
        m1 += w * x;
        m2 += w * x * x;
    }
    m1 /= total;
    m2 /= total;
    Ok((m2 - m1 * m1).max(0.0).sqrt())
}

/// Unit-normalized harmonic-oscillator eigenfunction `φ_n`, parity `(-1)^n`.
pub fn ho_eigenstate(n: usize, grid: Grid1D) -> Result<ComplexField> {
    if n > HO_MAX_LEVEL {
        return Err(Error::Config(format!(
            "harmonic-oscillator level {n} out of range (max {HO_MAX_LEVEL})"
        )));
    }
    ComplexField::from_real_fn(grid, |x| hermite_function(n, x))
}

// Stable three-term recurrence for the normalized Hermite functions.
fn hermite_function(n: usize, x: f64) -> f64 {
    let mut prev = 0.0;
    let mut cur = std::f64::consts::PI.powf(-0.25) * (-0.5 * x * x).exp();
    for k in 0..n {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn three_point_grid() {
        let g = make_grid(3, 1.0).unwrap();
        assert_eq!(g.points(), vec![-1.0, 0.0, 1.0]);
        assert_eq!(g.dx(), 1.0);
    }

    #[test]
    fn spacing_of_default_like_grid() {
        let g = make_grid(257, 16.0).unwrap();
        assert_eq!(g.dx(), 0.125);
        let p = g.points();
        for j in 0..257 {
            assert_eq!(p[j], -p[256 - j]);
        }
        assert!(p.windows(2).all(|w| w[1] > w[0]));
        assert!((g.dx() * 256.0 - 32.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(matches!(make_grid(4, 1.0), Err(Error::Config(m)) if m.contains("odd")));
        assert!(make_grid(1, 1.0).is_err());
        assert!(make_grid(5, 0.0).is_err());
        assert!(make_grid(5, -2.0).is_err());
    }

    #[test]
    fn gaussian_normalization_and_orthogonality() {
        let g = make_grid(513, 10.0).unwrap();
        let phi0 = ho_eigenstate(0, g).unwrap();
        let phi1 = ho_eigenstate(1, g).unwrap();
        assert!((inner(&phi0, &phi0).unwrap().re - 1.0).abs() < 1e-10);
        assert!(inner(&phi0, &phi1).unwrap().norm() < 1e-10);
    }

    #[test]
    fn ho_states_orthonormal() {
        let g = make_grid(513, 10.0).unwrap();
        let states: Vec<_> = (0..=5).map(|n| ho_eigenstate(n, g).unwrap()).collect();
        for (i, a) in states.iter().enumerate() {
            for (j, b) in states.iter().enumerate() {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((inner(a, b).unwrap() - expect).norm() < 1e-8, "{i},{j}");
            }
        }
    }

    #[test]
    fn ho_state_shapes() {
        let g = make_grid(1001, 8.0).unwrap();
        let phi0 = ho_eigenstate(0, g).unwrap();
        assert!((width(&phi0).unwrap() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-6);

        let phi1 = ho_eigenstate(1, g).unwrap();
        assert_eq!(phi1.values()[g.center()].re, 0.0);
        for j in 0..g.n_points() {
            assert_eq!(phi1.values()[j].re, -phi1.values()[g.n_points() - 1 - j].re);
        }

        let phi3 = ho_eigenstate(3, g).unwrap();
        let re: Vec<f64> = phi3
            .values()
            .iter()
            .map(|v| v.re)
            .filter(|v| v.abs() > 1e-12)
            .collect();
        let changes = re.windows(2).filter(|w| w[0].signum() != w[1].signum()).count();
        assert_eq!(changes, 3);
        assert!(ho_eigenstate(HO_MAX_LEVEL + 1, g).is_err());
    }

    #[test]
    fn norm_sq_homogeneity() {
        let g = make_grid(513, 10.0).unwrap();
        let phi0 = ho_eigenstate(0, g).unwrap();
        assert!((norm_sq(&phi0) - 1.0).abs() < 1e-10);
        assert!((norm_sq(&phi0.scaled(c(2.0, 0.0))) - 4.0).abs() < 1e-9);
        assert_eq!(norm_sq(&ComplexField::zeros(g)), 0.0);
    }

    #[test]
    fn width_translation_invariant() {
        let g = make_grid(1001, 10.0).unwrap();
        let shifted = ComplexField::from_real_fn(g, |x| (-(x - 1.0).powi(2) / 2.0).exp()).unwrap();
        assert!((width(&shifted).unwrap() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-6);
        assert!(width(&ComplexField::zeros(g)).is_err());
    }

    #[test]
    fn rejects_non_finite_and_mismatched() {
        let g = make_grid(5, 1.0).unwrap();
        let mut v = vec![c(0.0, 0.0); 5];
        v[2] = c(f64::NAN, 0.0);
        assert!(ComplexField::new(g, v).is_err());
        assert!(ComplexField::new(g, vec![c(0.0, 0.0); 4]).is_err());
        let h = make_grid(7, 1.0).unwrap();
        let err = inner(&ComplexField::zeros(g), &ComplexField::zeros(h));
        assert!(matches!(err, Err(Error::GridMismatch(_))));
    }

    fn field_strategy(n: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
        proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n)
    }

    proptest! {
        #[test]
        fn inner_conjugate_symmetric_and_linear(
            a in field_strategy(21),
            b in field_strategy(21),
            d in field_strategy(21),
            alpha in (-2.0f64..2.0, -2.0f64..2.0),
            beta in (-2.0f64..2.0, -2.0f64..2.0),
        ) {
            let g = make_grid(21, 3.0).unwrap();
            let mk = |v: &Vec<(f64, f64)>| {
                ComplexField::new(g, v.iter().map(|&(r, i)| c(r, i)).collect()).unwrap()
            };
            let (f, h, k) = (mk(&a), mk(&b), mk(&d));
            let fh = inner(&f, &h).unwrap();
            let hf = inner(&h, &f).unwrap();
            prop_assert!((fh - hf.conj()).norm() < 1e-12);

            let (al, be) = (c(alpha.0, alpha.1), c(beta.0, beta.1));
            let combo = h.scaled(al).add_scaled(be, &k).unwrap();
            let lhs = inner(&f, &combo).unwrap();
            let rhs = al * fh + be * inner(&f, &k).unwrap();
            prop_assert!((lhs - rhs).norm() < 1e-12);
        }

        #[test]
        fn width_phase_invariant(theta in -3.2f64..3.2, shift in -2.0f64..2.0) {
            let g = make_grid(201, 8.0).unwrap();
            let f = ComplexField::from_fn(g, |x| {
                c((-(x - shift).powi(2)).exp(), 0.3 * x * (-(x * x) / 4.0).exp())
            }).unwrap();
            let rotated = f.scaled(Complex64::from_polar(1.0, theta));
            prop_assert!((width(&f).unwrap() - width(&rotated).unwrap()).abs() < 1e-12);
        }
    }
}
