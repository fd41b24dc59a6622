//! Bogoliubov-de Gennes spectrum about a relaxed condensate.
//!
//! For a real condensate `ψ_g` the linearized problem is
//!
//! ```text
//! [ L   M ] [u]     [u]      L = -½D² + V + 2c_n ψ_g² - μ
//! [-M  -L ] [v] = ε [v],     M = c_n ψ_g²
//! ```
//!
//! With `f = u + v` and `g = u - v` it splits into `(L+M) f = ε g` and
//! `(L-M) g = ε f`. Since `L+M` is positive semidefinite, `ε²` are the
//! eigenvalues of the symmetric matrix `S (L-M) S` with `S = (L+M)^{1/2}`,
//! and `g = S h` for its eigenvectors `h`. Everything is solved densely.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::dynamics::TrapPotential;
use crate::error::{Error, Result};
use crate::ground_state::{self, static_potential};
use crate::grid::{self, ComplexField, Grid1D};

/// Energies at or below this are treated as the condensate's zero mode.
pub const EPSILON_FLOOR: f64 = 1e-3;

/// Largest grid the dense solver accepts.
pub const MAX_DENSE_POINTS: usize = 1025;

/// Residual the condensate must satisfy before an operator is built.
pub const CONDENSATE_RESIDUAL_LIMIT: f64 = 1e-4;

/// Quasiparticle mode with Bogoliubov normalization `∫|u|² - |v|² = 1`.
#[derive(Debug, Clone)]
pub struct QuasiparticleMode {
    /// 1-based, in order of increasing energy.
    pub index: usize,
    pub energy: f64,
    pub u: ComplexField,
    pub v: ComplexField,
    /// +1 even, -1 odd.
    pub parity: i8,
}

impl QuasiparticleMode {
    /// `∫ |u|² + |v|²`.
    pub fn total_weight(&self) -> f64 {
        grid::norm_sq(&self.u) + grid::norm_sq(&self.v)
    }
}

/// Modes about a fixed condensate.
#[derive(Debug, Clone)]
pub struct BdgSpectrum {
    pub condensate: ComplexField,
    pub mu: f64,
    pub c_n: f64,
    pub trap: TrapPotential,
    pub modes: Vec<QuasiparticleMode>,
    /// Largest relative eigen-residual of the `-ε` partners `(v, u)`.
    pub pairing_violation: f64,
    /// Zero-mode energy found by the solve (before the floor cut).
    pub zero_mode_energy: f64,
}

impl BdgSpectrum {
    pub fn mode(&self, index: usize) -> Result<&QuasiparticleMode> {
        if index == 0 || index > self.modes.len() {
            return Err(Error::ModeIndex { index, available: self.modes.len() });
        }
        Ok(&self.modes[index - 1])
    }

    pub fn energies(&self) -> Vec<f64> {
        self.modes.iter().map(|m| m.energy).collect()
    }

    pub fn grid(&self) -> &Grid1D {
        self.condensate.grid()
    }
}

/// The linearized operator, stored as its tridiagonal `L` and diagonal `M`.
#[derive(Debug, Clone)]
pub struct BdgOperator {
    condensate: ComplexField,
    mu: f64,
    c_n: f64,
    trap: TrapPotential,
    l_diag: Vec<f64>,
    l_off: f64,
    m_diag: Vec<f64>,
}

/// Builds the BdG operator about `psi_g`, which must be a converged,
/// unit-norm stationary state of `(μ, c_n)` with a removable global phase.
pub fn build_bdg_operator(
    psi_g: &ComplexField,
    trap: &TrapPotential,
    mu: f64,
    c_n: f64,
) -> Result<BdgOperator> {
    let grid = *psi_g.grid();
    if grid.n_points() > MAX_DENSE_POINTS {
        return Err(Error::Config(format!(
            "dense BdG solve limited to {MAX_DENSE_POINTS} points, grid has {}",
            grid.n_points()
        )));
    }
    trap.validate(&grid)?;
    let aligned = psi_g.phase_aligned();
    let peak = aligned.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
    let max_imag = aligned.values().iter().map(|v| v.im.abs()).fold(0.0, f64::max);
    if max_imag > 1e-6 * peak {
        return Err(Error::NotConverged(format!(
            "condensate phase is not flat (imaginary part {max_imag:.2e} after alignment)"
        )));
    }
    let norm = grid::norm_sq(&aligned);
    if (norm - 1.0).abs() > 1e-6 {
        return Err(Error::NotConverged(format!("condensate norm {norm} is not 1")));
    }
    let real = ComplexField::new(
        grid,
        aligned.values().iter().map(|v| Complex64::new(v.re, 0.0)).collect(),
    )?;
    let res = ground_state::residual(&real, trap, mu, c_n);
    if res > CONDENSATE_RESIDUAL_LIMIT {
        return Err(Error::NotConverged(format!(
            "condensate residual {res:.3e} exceeds {CONDENSATE_RESIDUAL_LIMIT:.0e}"
        )));
    }
    let pot = static_potential(&grid, trap);
    let dx2 = grid.dx() * grid.dx();
    let dens: Vec<f64> = real.values().iter().map(|v| v.re * v.re).collect();
    let l_diag = (0..grid.n_points())
        .map(|j| 1.0 / dx2 + pot[j] + 2.0 * c_n * dens[j] - mu)
        .collect();
    let m_diag = dens.iter().map(|d| c_n * d).collect();
    Ok(BdgOperator {
        condensate: real,
        mu,
        c_n,
        trap: trap.clone(),
        l_diag,
        l_off: -0.5 / dx2,
        m_diag,
    })
}

impl BdgOperator {
    pub fn size(&self) -> usize {
        self.l_diag.len()
    }

    pub fn condensate(&self) -> &ComplexField {
        &self.condensate
    }

    fn l_times(&self, x: &[f64]) -> Vec<f64> {
        let n = x.len();
        (0..n)
            .map(|j| {
                let left = if j > 0 { x[j - 1] } else { 0.0 };
                let right = if j + 1 < n { x[j + 1] } else { 0.0 };
                self.l_diag[j] * x[j] + self.l_off * (left + right)
            })
            .collect()
    }

    /// `(L u + M v, -M u - L v)` for real vectors.
    pub fn apply(&self, u: &[f64], v: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let lu = self.l_times(u);
        let lv = self.l_times(v);
        let top = (0..u.len()).map(|j| lu[j] + self.m_diag[j] * v[j]).collect();
        let bottom = (0..u.len()).map(|j| -self.m_diag[j] * u[j] - lv[j]).collect();
        (top, bottom)
    }

    /// Dense `L` block.
    pub fn l_matrix(&self) -> DMatrix<f64> {
        let n = self.size();
        DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                self.l_diag[i]
            } else if i.abs_diff(j) == 1 {
                self.l_off
            } else {
                0.0
            }
        })
    }

    pub fn m_diagonal(&self) -> &[f64] {
        &self.m_diag
    }

    /// Dense `[[L, M], [-M, -L]]`.
    pub fn full_matrix(&self) -> DMatrix<f64> {
        let n = self.size();
        let l = self.l_matrix();
        let mut out = DMatrix::zeros(2 * n, 2 * n);
        out.view_mut((0, 0), (n, n)).copy_from(&l);
        out.view_mut((n, n), (n, n)).copy_from(&(-&l));
        for j in 0..n {
            out[(j, n + j)] = self.m_diag[j];
            out[(n + j, j)] = -self.m_diag[j];
        }
        out
    }
}

fn parity_of(u: &ComplexField) -> i8 {
    let even = ground_state::symmetry_violation(u);
    let odd = ground_state::antisymmetry_violation(u);
    if even <= odd {
        1
    } else {
        -1
    }
}

fn to_field(grid: Grid1D, x: &DVector<f64>) -> Result<ComplexField> {
    ComplexField::new(grid, x.iter().map(|&r| Complex64::new(r, 0.0)).collect())
}

fn project_out(f: &ComplexField, psi_g: &ComplexField) -> Result<ComplexField> {
    let overlap = grid::inner(psi_g, f)?;
    f.add_scaled(-overlap, psi_g)
}

/// Solves for the `n_modes` lowest positive-energy modes.
pub fn solve_modes(op: &BdgOperator, n_modes: usize) -> Result<BdgSpectrum> {
    let n = op.size();
    if n_modes == 0 || n_modes >= n / 2 {
        return Err(Error::Config(format!(
            "n_modes must be between 1 and {} for a {n}-point grid, got {n_modes}",
            n / 2 - 1
        )));
    }
    let grid = *op.condensate.grid();
    let l = op.l_matrix();
    let m = DMatrix::from_diagonal(&DVector::from_column_slice(&op.m_diag));
    let a = &l + &m;
    let b = &l - &m;

    let eig_a = SymmetricEigen::try_new(a, 1e-14, 0).ok_or_else(|| Error::Eigensolver {
        size: n,
        reason: "L + M eigendecomposition did not converge".into(),
    })?;
    let min_a = eig_a.eigenvalues.min();
    if min_a < -1e-8 * eig_a.eigenvalues.max().abs().max(1.0) {
        return Err(Error::Eigensolver {
            size: n,
            reason: format!("L + M is not positive semidefinite (min eigenvalue {min_a:.3e})"),
        });
    }
    let sqrt_vals = eig_a.eigenvalues.map(|x| x.max(0.0).sqrt());
    let q = &eig_a.eigenvectors;
    let s = q * DMatrix::from_diagonal(&sqrt_vals) * q.transpose();
    let mut k = &s * &b * &s;
    k = (&k + k.transpose()) * 0.5;
    let eig_k = SymmetricEigen::try_new(k, 1e-14, 0).ok_or_else(|| Error::Eigensolver {
        size: n,
        reason: "reduced BdG eigendecomposition did not converge".into(),
    })?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig_k.eigenvalues[i].total_cmp(&eig_k.eigenvalues[j]));
    let zero_mode_energy = eig_k.eigenvalues[order[0]].max(0.0).sqrt();

    let psi_g = &op.condensate;
    let mut modes = Vec::with_capacity(n_modes);
    let mut pairing_violation: f64 = 0.0;
    for &idx in &order {
        if modes.len() == n_modes {
            break;
        }
        let w = eig_k.eigenvalues[idx];
        if w <= EPSILON_FLOOR * EPSILON_FLOOR {
            continue;
        }
        let eps = w.sqrt();
        let h = eig_k.eigenvectors.column(idx);
        let g = &s * h;
        let f = (&b * &g) / eps;
        let weights: Vec<f64> = (0..n).map(|j| grid.weight(j)).collect();
        let fg: f64 = (0..n).map(|j| weights[j] * f[j] * g[j]).sum();
        if !(fg > 0.0) {
            return Err(Error::Eigensolver {
                size: n,
                reason: format!("mode with energy {eps:.6} has non-positive Bogoliubov norm"),
            });
        }
        let scale = 1.0 / fg.sqrt();
        let mut u = (&f + &g) * (0.5 * scale);
        let mut v = (&f - &g) * (0.5 * scale);
        let peak = u.iter().copied().max_by(|x, y| x.abs().total_cmp(&y.abs())).unwrap_or(1.0);
        if peak < 0.0 {
            u = -u;
            v = -v;
        }

        let (pu, pv) = op.apply(v.as_slice(), u.as_slice());
        let resid: f64 = (0..n)
            .map(|j| (pu[j] + eps * v[j]).powi(2) + (pv[j] + eps * u[j]).powi(2))
            .sum::<f64>()
            .sqrt();
        let size: f64 = (u.norm_squared() + v.norm_squared()).sqrt();
        pairing_violation = pairing_violation.max(resid / (eps * size));

        let u = project_out(&to_field(grid, &u)?, psi_g)?;
        let v = project_out(&to_field(grid, &v)?, psi_g)?;
        modes.push(QuasiparticleMode {
            index: modes.len() + 1,
            energy: eps,
            parity: parity_of(&u),
            u,
            v,
        });
    }
    Ok(BdgSpectrum {
        condensate: op.condensate.clone(),
        mu: op.mu,
        c_n: op.c_n,
        trap: op.trap.clone(),
        modes,
        pairing_violation,
        zero_mode_energy,
    })
}

/// Largest violation of the Bogoliubov orthonormality and symplectic
/// relations over all mode pairs.
pub fn check_orthogonality(spectrum: &BdgSpectrum) -> f64 {
    let modes = &spectrum.modes;
    let mut worst: f64 = 0.0;
    for (i, a) in modes.iter().enumerate() {
        for (j, b) in modes.iter().enumerate() {
            let uu = grid::inner(&a.u, &b.u).unwrap_or_default();
            let vv = grid::inner(&a.v, &b.v).unwrap_or_default();
            let delta = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((uu - vv - delta).norm());
            // ∫ u_i v_j - v_i u_j without conjugation.
            let uv = grid::inner(&a.u.conj(), &b.v).unwrap_or_default();
            let vu = grid::inner(&a.v.conj(), &b.u).unwrap_or_default();
            worst = worst.max((uv - vu).norm());
        }
    }
    worst
}
