//! Full acceptance run. Each criterion prints one PASS/FAIL line; the test
//! fails if any criterion fails. Criteria 1-7 pin quantitative anchors of
//! the reference scenario, 8-12 are property checks on the oracles, the
//! loss channel, limits/symmetries, the symplectic diagnostic and output
//! determinism.

use dce_bell::gaussian::{apply_loss_minus_via_ancilla, wigner};
use dce_bell::output::{sweep_table, write_csv};
use dce_bell::pseudospin::{
    correlator_xx_quadrature, correlator_zz_quadrature, CorrelatorPair,
};
use dce_bell::sweep::{Axis, AxisParam};
use dce_bell::{
    apply_loss_minus, bell_for_params, bell_with_loss, correlator_xx, correlator_zz,
    derive_mode_pair, grid_sweep, output_covariance, symplectic_eigenvalues,
    violation_threshold, CircuitParams, ModePair, StandardForm, SweepSpec,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::f64::consts::PI;

fn baseline(temperature: f64, epsilon: f64) -> CircuitParams {
    CircuitParams {
        omega_d: 20.0 * PI * 1e9,
        epsilon,
        delta_omega: 0.0,
        v: 1.2e8,
        l0_eff: 5e-4,
        temperature,
    }
}

type Check = Result<String, String>;

fn require(cond: bool, detail: String) -> Check {
    if cond {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c01_baseline_point() -> Check {
    let p = baseline(0.015, 0.6);
    let f = derive_mode_pair(&p).map_err(|e| e.to_string())?.f;
    let b = bell_for_params(&p).map_err(|e| e.to_string())?.b_value;
    require(
        (b - 2.025).abs() <= 1e-3 && (f - 0.0786).abs() <= 2e-4,
        format!("b = {b:.6} (want 2.025 +- 0.001), f = {f:.6} (want 0.0786 +- 0.0002)"),
    )
}

fn c02_detuning_cutoff() -> Check {
    let t = violation_threshold(&baseline(0.020, 0.6), None, AxisParam::DeltaOmegaFrac, (0.0, 0.4))
        .map_err(|e| e.to_string())?;
    require((t - 0.27).abs() <= 0.01, format!("detuning cutoff {t:.4} (want 0.27 +- 0.01)"))
}

fn c03_temperature_cutoff() -> Check {
    let t = violation_threshold(&baseline(0.020, 0.6), None, AxisParam::Temperature, (0.020, 0.060))
        .map_err(|e| e.to_string())?;
    let t_mk = t * 1e3;
    require((t_mk - 42.0).abs() <= 2.0, format!("temperature cutoff {t_mk:.2} mK (want 42 +- 2)"))
}

fn c04_loss_cutoff() -> Check {
    let eta = violation_threshold(&baseline(0.020, 0.6), None, AxisParam::Eta, (0.1, 1.0))
        .map_err(|e| e.to_string())?;
    require((eta - 0.35).abs() <= 0.02, format!("loss cutoff {eta:.4} (want 0.35 +- 0.02)"))
}

fn c05_detuned_temperature_cutoff() -> Check {
    // best case over eta <= 1 is eta = 1, so the lossless threshold is the
    // largest violating temperature
    let mut p = baseline(0.020, 0.6);
    p.delta_omega = 0.2 * p.omega_d;
    let t = violation_threshold(&p, Some(1.0), AxisParam::Temperature, (0.010, 0.035))
        .map_err(|e| e.to_string())?;
    let t_mk = t * 1e3;
    require(
        (t_mk - 28.0).abs() <= 2.0,
        format!("detuned temperature cutoff {t_mk:.2} mK (want 28 +- 2)"),
    )
}

fn c06_drive_threshold() -> Check {
    let eps = violation_threshold(&baseline(0.035, 0.6), None, AxisParam::Epsilon, (0.0, 0.6))
        .map_err(|e| e.to_string())?;
    require((eps - 0.35).abs() <= 0.05, format!("drive threshold {eps:.4} (want 0.35 +- 0.05)"))
}

fn c07_high_temperature_loss_demand() -> Check {
    let eta = violation_threshold(&baseline(0.040, 0.6), None, AxisParam::Eta, (0.1, 1.0))
        .map_err(|e| e.to_string())?;
    require(eta > 0.8, format!("eta threshold at 40 mK is {eta:.4} (want > 0.8)"))
}

fn c08_oracle_equivalence() -> Check {
    let mut rng = StdRng::seed_from_u64(0xacce97);
    let mut max_rel_xx: f64 = 0.0;
    let mut max_abs_zz: f64 = 0.0;
    for _ in 0..100 {
        let n = 1.0 + rng.gen::<f64>();
        let m = 1.0 + rng.gen::<f64>();
        let rho: f64 = 0.95 * rng.gen::<f64>();
        let s = StandardForm::new(n, m, rho * (n * m).sqrt());
        let xx_c = correlator_xx(&s).map_err(|e| e.to_string())?;
        let xx_q = correlator_xx_quadrature(&s, 1e-8).map_err(|e| e.to_string())?;
        max_rel_xx = max_rel_xx.max((xx_q - xx_c).abs() / xx_c.abs().max(1.0));
        let zz_c = correlator_zz(&s).map_err(|e| e.to_string())?;
        let zz_q = correlator_zz_quadrature(&s).map_err(|e| e.to_string())?;
        max_abs_zz = max_abs_zz.max((zz_q - zz_c).abs());
    }
    require(
        max_rel_xx <= 1e-6 && max_abs_zz <= 1e-12,
        format!("100 draws: max rel dev xx {max_rel_xx:.3e} (<= 1e-6), max abs dev zz {max_abs_zz:.3e} (<= 1e-12)"),
    )
}

fn c09_loss_channel() -> Check {
    let p = baseline(0.020, 0.6);
    let s = output_covariance(&derive_mode_pair(&p).map_err(|e| e.to_string())?);
    // ancilla construction vs closed form
    let mut max_dev: f64 = 0.0;
    for eta in [0.0, 0.1, 0.35, 0.5, 0.9, 1.0] {
        let a = apply_loss_minus_via_ancilla(&s, eta).map_err(|e| e.to_string())?;
        let b = apply_loss_minus(&s, eta).map_err(|e| e.to_string())?;
        for (x, y) in [(a.n, b.n), (a.m, b.m), (a.r, b.r)] {
            max_dev = max_dev.max((x - y).abs());
        }
    }
    if max_dev > 1e-12 {
        return Err(format!("ancilla vs closed form dev {max_dev:.3e} > 1e-12"));
    }
    // semigroup
    for (e1, e2) in [(0.9, 0.8), (0.3, 0.7), (0.55, 0.55)] {
        let two = apply_loss_minus(&apply_loss_minus(&s, e1).unwrap(), e2).unwrap();
        let one = apply_loss_minus(&s, e1 * e2).unwrap();
        let dev = (two.n - one.n).abs().max((two.m - one.m).abs()).max((two.r - one.r).abs());
        if dev > 1e-12 {
            return Err(format!("semigroup dev {dev:.3e} > 1e-12 at ({e1}, {e2})"));
        }
    }
    // eta = 1 identity and exact equality with the lossless pipeline
    if apply_loss_minus(&s, 1.0).unwrap() != s {
        return Err("eta = 1 is not the identity".to_string());
    }
    let b_max = bell_for_params(&p).unwrap().b_value;
    if bell_with_loss(&p, 1.0).unwrap().b_value != b_max {
        return Err("B^L(1) != B_max".to_string());
    }
    // monotone in eta
    let mut prev = -1.0;
    for i in 0..=50 {
        let b = bell_with_loss(&p, i as f64 / 50.0).unwrap().b_value;
        if b < prev {
            return Err(format!("B^L not nondecreasing at eta = {}", i as f64 / 50.0));
        }
        prev = b;
    }
    Ok(format!("construction dev {max_dev:.3e}, semigroup and limits exact, monotone over 51 points"))
}

fn c10_limits_and_symmetry() -> Check {
    // vacuum: exact (0, 1, 2)
    let vac = bell_for_params(&baseline(0.0, 0.0)).map_err(|e| e.to_string())?;
    if (vac.xx, vac.zz, vac.b_value) != (0.0, 1.0, 2.0) {
        return Err(format!("vacuum gave ({}, {}, {})", vac.xx, vac.zz, vac.b_value));
    }
    // epsilon = 0: no violation, equality only at T = 0. Below ~8 mK the
    // thermal occupation underflows against 1.0 in f64, so the strict
    // inequality is checked at representable temperatures only.
    for t in [0.010, 0.015, 0.030, 0.060] {
        let o = bell_for_params(&baseline(t, 0.0)).unwrap();
        if !(o.b_value < 2.0) {
            return Err(format!("epsilon = 0 at T = {t} K gave b = {}", o.b_value));
        }
    }
    // detuning sign flip relabels the pair and leaves b unchanged
    let mut p = baseline(0.020, 0.6);
    p.delta_omega = 0.15 * p.omega_d;
    let b_pos = bell_for_params(&p).unwrap().b_value;
    let pair = derive_mode_pair(&p).unwrap();
    let flipped = ModePair {
        omega_plus: pair.omega_minus,
        omega_minus: pair.omega_plus,
        n_plus: pair.n_minus,
        n_minus: pair.n_plus,
        f: pair.f,
        perturbative_warning: pair.perturbative_warning,
    };
    let s = output_covariance(&flipped);
    let CorrelatorPair { xx, zz, .. } =
        dce_bell::pseudospin::correlators(&s).map_err(|e| e.to_string())?;
    let b_neg = 2.0 * xx.hypot(zz);
    require(
        (b_pos - b_neg).abs() <= 1e-12 * b_pos,
        format!("b({}) = {b_pos:.12}, b(-delta) = {b_neg:.12}", 0.15),
    )
}

fn c11_symplectic_diagnostic() -> Check {
    let mut max_dev: f64 = 0.0;
    for k in 1..=40 {
        let f = 0.005 * k as f64;
        let pair = ModePair {
            omega_plus: 1.0,
            omega_minus: 1.0,
            n_plus: 0.0,
            n_minus: 0.0,
            f,
            perturbative_warning: false,
        };
        let d = symplectic_eigenvalues(&output_covariance(&pair));
        max_dev = max_dev.max((d.nu_min - (1.0 - f).powi(2)).abs());
        if d.physical {
            return Err(format!("state at f = {f} not flagged unphysical"));
        }
        if max_dev > 1e-12 {
            return Err(format!("nu_min dev {max_dev:.3e} > 1e-12 at f = {f}"));
        }
    }
    Ok(format!("nu_min = (1-f)^2 within {max_dev:.3e} over f in (0, 0.2], all flagged"))
}

fn c12_determinism() -> Check {
    let spec = SweepSpec {
        base: baseline(0.020, 0.6),
        loss_eta: None,
        axis1: Axis::linspace(AxisParam::Epsilon, 0.0, 0.6, 41).unwrap(),
        axis2: Some(Axis::linspace(AxisParam::Temperature, 0.010, 0.040, 7).unwrap()),
    };
    let mut bufs = Vec::new();
    for _ in 0..3 {
        let rows = grid_sweep(&spec).map_err(|e| e.to_string())?;
        let mut buf = Vec::new();
        write_csv(&sweep_table(&spec, &rows), &mut buf).map_err(|e| e.to_string())?;
        bufs.push(buf);
    }
    require(
        bufs[0] == bufs[1] && bufs[1] == bufs[2],
        format!("3 identical invocations, {} bytes each", bufs[0].len()),
    )
}

// quick sanity anchor for the quadrature stack used by criterion 8
fn wigner_origin_sane() -> bool {
    let s = StandardForm::new(1.00618, 1.00618, 0.15720);
    let w0 = wigner(&s, [0.0; 4]).unwrap();
    (w0 * PI.powi(2) * s.det_arg() - 1.0).abs() < 1e-14
}

#[test]
fn acceptance() {
    assert!(wigner_origin_sane());
    let criteria: Vec<(&str, fn() -> Check)> = vec![
        ("01 baseline point B and f", c01_baseline_point),
        ("02 detuning cutoff 0.27", c02_detuning_cutoff),
        ("03 temperature cutoff 42 mK", c03_temperature_cutoff),
        ("04 loss cutoff 0.35", c04_loss_cutoff),
        ("05 detuned temperature cutoff 28 mK", c05_detuned_temperature_cutoff),
        ("06 drive threshold 0.35 at 35 mK", c06_drive_threshold),
        ("07 loss demand > 0.8 at 40 mK", c07_high_temperature_loss_demand),
        ("08 oracle equivalence", c08_oracle_equivalence),
        ("09 loss-channel checks", c09_loss_channel),
        ("10 limits and symmetry", c10_limits_and_symmetry),
        ("11 symplectic diagnostic", c11_symplectic_diagnostic),
        ("12 determinism", c12_determinism),
    ];
    let mut failures = Vec::new();
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                println!("FAIL {name}: {detail}");
                failures.push(name);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
