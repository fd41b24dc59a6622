#![allow(dead_code)]

use dampgpe::bdg::{self, BdgSpectrum};
use dampgpe::dynamics::TrapPotential;
use dampgpe::ground_state::{self, RelaxOptions, RelaxationReport};
use dampgpe::grid::{make_grid, Grid1D};
use nalgebra::DMatrix;
use num_complex::Complex64;

pub fn tight() -> RelaxOptions {
    RelaxOptions { residual_tol: 1e-10, t_max: 80.0, ..RelaxOptions::default() }
}

pub fn ground(grid: Grid1D, c_n: f64) -> RelaxationReport {
    let start = ground_state::thomas_fermi_profile(grid, c_n).unwrap();
    // RK4 at Λ = −2 needs a shorter step once dx drops below the default
    let dt = if grid.dx() < 0.04 { 2.5e-4 } else { 1e-3 };
    let opts = RelaxOptions { dt, ..tight() };
    let r = ground_state::relax_fixed_c(&start, &TrapPotential::Harmonic, c_n, -2.0, &opts).unwrap();
    assert!(r.converged, "reference ground state did not converge: {}", r.residual_l2);
    r
}

pub fn spectrum(n_points: usize, x_max: f64, c_n: f64, n_modes: usize) -> BdgSpectrum {
    let grid = make_grid(n_points, x_max).unwrap();
    let r = ground(grid, c_n);
    let op = bdg::build_bdg_operator(&r.final_state, &TrapPotential::Harmonic, r.mu, c_n).unwrap();
    bdg::solve_modes(&op, n_modes).unwrap()
}

/// Eigenvalues of the damped equation linearized about the condensate, built
/// directly from the Hamiltonian blocks. With δ = a + ib the linearization is
/// d(a, b)/dt = [[Λ(L+M), L-M], [-(L+M), Λ(L-M)]] (a, b). Returned sorted by
/// oscillation frequency, positive-frequency branch only.
pub fn damped_linear_eigenvalues(spec: &BdgSpectrum, lambda: f64) -> Vec<Complex64> {
    let mut ev: Vec<Complex64> = damped_linear_spectrum(spec, lambda).into_iter().filter(|z| z.im > 1e-6).collect();
    ev.sort_by(|x, y| x.im.total_cmp(&y.im));
    ev
}

/// Every eigenvalue of the damped linearization, overdamped (real) ones included.
pub fn damped_linear_spectrum(spec: &BdgSpectrum, lambda: f64) -> Vec<Complex64> {
    let op = bdg::build_bdg_operator(&spec.condensate, &spec.trap, spec.mu, spec.c_n).unwrap();
    let l = op.l_matrix();
    let m = op.m_diagonal();
    let n = l.nrows();
    let mut a = l.clone();
    let mut b = l.clone();
    for j in 0..n {
        a[(j, j)] += m[j];
        b[(j, j)] -= m[j];
    }
    let mut big = DMatrix::<f64>::zeros(2 * n, 2 * n);
    big.view_mut((0, 0), (n, n)).copy_from(&(&a * lambda));
    big.view_mut((0, n), (n, n)).copy_from(&b);
    big.view_mut((n, 0), (n, n)).copy_from(&(-&a));
    big.view_mut((n, n), (n, n)).copy_from(&(&b * lambda));
    big.complex_eigenvalues().iter().map(|z| Complex64::new(z.re, z.im)).collect()
}
