use dampgpe::config::ExperimentConfig;
use dampgpe::experiments::{self, GroundStateFlags};
use dampgpe::output::parse_record;
use std::fs;
use std::path::Path;

fn small() -> ExperimentConfig {
    let mut cfg = ExperimentConfig::default();
    cfg.grid.n_points = 129;
    cfg.grid.x_max = 10.0;
    cfg.integrator.t_final = 2.0;
    cfg.figures.lambdas = vec![-0.1, -0.5];
    cfg.spectrum.n_modes = 4;
    cfg
}

fn header(path: &Path) -> String {
    fs::read_to_string(path).unwrap().lines().next().unwrap().to_string()
}

fn record(path: &Path) -> Vec<(String, String)> {
    parse_record(&fs::read_to_string(path).unwrap())
}

fn value<'a>(rec: &'a [(String, String)], key: &str) -> &'a str {
    rec.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str()).unwrap_or_else(|| panic!("missing {key}"))
}

/// Every numeric field of the data rows carries at least 12 significant digits.
fn check_precision(path: &Path) {
    let text = fs::read_to_string(path).unwrap();
    for line in text.lines().skip(1).take(5) {
        for field in line.split(',') {
            if field.contains('e') {
                let mantissa = field.split('e').next().unwrap().trim_start_matches('-');
                assert!(mantissa.chars().filter(char::is_ascii_digit).count() >= 12, "{field}");
            }
        }
    }
}

#[test]
fn ground_state_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = experiments::run_ground_state(&small(), GroundStateFlags::default(), dir.path()).unwrap();
    assert!(o.converged());
    assert_eq!(header(&dir.path().join("state.csv")), "x,re,im,density,phase");
    check_precision(&dir.path().join("state.csv"));
    assert_eq!(fs::read_to_string(dir.path().join("state.csv")).unwrap().lines().count(), 130);
    let rec = record(&dir.path().join("report.txt"));
    let mu: f64 = value(&rec, "mu").parse().unwrap();
    assert!((mu - o.report.mu).abs() < 1e-12);
    for key in ["c_n", "residual_l2", "phase_flatness_rad", "iterations", "simulated_time", "converged"] {
        value(&rec, key);
    }
}

#[test]
fn odd_parity_report() {
    let dir = tempfile::tempdir().unwrap();
    let flags = GroundStateFlags { odd_parity: true, start_n: Some(3), ..Default::default() };
    let o = experiments::run_ground_state(&small(), flags, dir.path()).unwrap();
    let odd = o.odd.unwrap();
    assert_eq!(odd.zero_crossings, 1);
    let rec = record(&dir.path().join("report.txt"));
    assert_eq!(value(&rec, "zero_crossings"), "1");
    let jump: f64 = value(&rec, "phase_jump").parse().unwrap();
    assert!((jump - std::f64::consts::PI).abs() < 1e-6);
}

#[test]
fn fig1_files_and_initial_population() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = small();
    cfg.output.emit_plots = true;
    let o = experiments::run_fig1(&cfg, dir.path()).unwrap();
    assert_eq!(header(&dir.path().join("fig1.csv")), "t,b2_lam0.1,bg2_lam0.1,b2_lam0.5,bg2_lam0.5");
    check_precision(&dir.path().join("fig1.csv"));
    assert!(dir.path().join("fig1.py").exists());
    for r in &o.sweep.runs {
        assert!((r.mode_population[0] - 0.25).abs() < 1e-6);
    }
    assert!(o.decay_rates[1] > o.decay_rates[0]);
    let rec = record(&dir.path().join("fig1_summary.txt"));
    value(&rec, "decay_rate_lam0.5");
}

#[test]
fn fig2_files() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = small();
    cfg.integrator.t_final = 8.0;
    let o = experiments::run_fig2(&cfg, dir.path()).unwrap();
    assert_eq!(header(&dir.path().join("fig2.csv")), "t,width_lam0.1,width_lam0.5");
    assert!(!dir.path().join("fig2.py").exists());
    let fits = fs::read_to_string(dir.path().join("fits.txt")).unwrap();
    assert!(fits.contains("lam0.1") && fits.contains("lam0.5"));
    assert_eq!(o.fits.len(), 2);
}

#[test]
fn sweep_is_deterministic() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let cfg = small();
    experiments::run_fig1(&cfg, a.path()).unwrap();
    experiments::run_fig1(&cfg, b.path()).unwrap();
    assert_eq!(fs::read(a.path().join("fig1.csv")).unwrap(), fs::read(b.path().join("fig1.csv")).unwrap());
}

#[test]
fn trap_modulation_path() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = small();
    cfg.trap_modulation = Some(dampgpe::config::TrapModulationConfig { eta: 0.2, omega: 1.74, t_off: 1.0 });
    let o = experiments::run_fig1(&cfg, dir.path()).unwrap();
    for r in &o.sweep.runs {
        assert!(r.mode_population[0] < 1e-12);
        assert!(r.mode_population.iter().cloned().fold(0.0, f64::max) > 1e-6);
    }
}

#[test]
fn spectrum_files() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = small();
    cfg.physics.c_n = 0.0;
    let o = experiments::run_spectrum(&cfg, true, dir.path()).unwrap();
    assert_eq!(header(&dir.path().join("spectrum.csv")), "i,energy,parity");
    assert_eq!(header(&dir.path().join("spectrum_refinement.csv")), "i,energy_coarse,energy,energy_fine,ratio");
    let dx2 = 0.15625f64.powi(2);
    for (k, e) in o.spectrum.energies().iter().enumerate() {
        let n = (k + 1) as f64;
        assert!((e - (n - dx2 * (2.0 * n * n + 2.0 * n) / 32.0)).abs() < 1e-3, "{n}: {e}");
    }
    let r = o.refinement.unwrap();
    assert!((r.ratios[1] - 4.0).abs() < 0.5, "{:?}", r.ratios);
}

#[test]
fn stability_scan_files() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = small();
    cfg.scan.lambda_dt = vec![0.002, 0.05];
    cfg.scan.c_n = vec![0.0, 50.0];
    cfg.scan.t_final = vec![5.0];
    let o = experiments::run_stability_scan(&cfg, dir.path()).unwrap();
    assert_eq!(header(&dir.path().join("scan.csv")), "lambda_dt,c_n,t_final,stable");
    assert_eq!(o.cells.len(), 4);
    for c in &o.cells {
        assert_eq!(c.stable, c.lambda_dt < 0.01, "{c:?}");
    }
}

#[test]
fn wplus_scaling() {
    let dir = tempfile::tempdir().unwrap();
    let base = experiments::run_wplus(None, dir.path()).unwrap();
    assert!(base.lambda < 0.0 && (0.01..=0.1).contains(&base.lambda.abs()));
    assert!(dir.path().join("wplus.txt").exists());
    let text = dampgpe::analysis::MIT_LIKE_PARAMS;
    let edit = |key: &str, factor: f64| -> String {
        text.lines()
            .map(|l| match l.split_once('=') {
                Some((k, v)) if k.trim() == key => format!("{k}= {:e}", v.trim().parse::<f64>().unwrap() * factor),
                _ => l.to_string(),
            })
            .collect::<Vec<_>>()
            .join("\n")
    };
    let p = dir.path().join("a2.toml");
    fs::write(&p, edit("scattering_length", 2.0)).unwrap();
    let doubled_a = experiments::run_wplus(Some(&p), dir.path()).unwrap();
    assert!((doubled_a.w_plus / base.w_plus - 4.0).abs() < 1e-9);
    fs::write(&p, edit("trap_omega", 2.0)).unwrap();
    let doubled_w = experiments::run_wplus(Some(&p), dir.path()).unwrap();
    assert!((doubled_w.w_plus / base.w_plus - 1.0).abs() < 1e-12);
    assert!((doubled_w.lambda / base.lambda - 0.5).abs() < 1e-12);
    fs::write(&p, "scattering_length = \"oops\"\n").unwrap();
    let err = experiments::run_wplus(Some(&p), dir.path()).unwrap_err();
    assert!(err.to_string().contains("line 1"), "{err}");
}

#[test]
fn defaults_round_trip_and_overrides() {
    let cfg = ExperimentConfig::default();
    assert_eq!(ExperimentConfig::from_toml(&cfg.to_toml().unwrap()).unwrap(), cfg);
    assert_eq!((cfg.grid.n_points, cfg.grid.x_max, cfg.integrator.dt), (513, 12.0, 1e-3));
    assert_eq!((cfg.physics.c_n, cfg.spectrum.n_modes, cfg.seed.mode_index), (50.0, 10, 2));
    assert_eq!(cfg.figures.lambdas, vec![-0.03, -0.1, -0.25, -0.5]);
    let partial = ExperimentConfig::from_toml("[grid]\nn_points = 257\n").unwrap();
    assert_eq!(partial.grid.n_points, 257);
    assert_eq!(partial.grid.x_max, 12.0);
    assert!(ExperimentConfig::from_toml("[grid]\nbogus = 1\n").is_err());
}
