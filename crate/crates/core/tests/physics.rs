use std::f64::consts::{FRAC_PI_2, LN_2, PI};

use approx::assert_abs_diff_eq;
use num_complex::Complex64 as C64;

use atomtele::analysis::{
    critical_time, decay_time_thresholds, evaluate, evaluate_with_rates, fidelity_with_rates,
    product_chi_closed, product_concurrence_closed, psi0_dicke_limit, psi0_infinite_separation,
};
use atomtele::couplings::{collective_damping, dipole_shift};
use atomtele::dynamics::{
    evolve_lindblad, evolve_x_analytic, initial_density, x_coefficients, XState,
};
use atomtele::teleport::chi_vector;
use atomtele::{coupling_pair, CouplingRates, GeometryParams, InitialState, StepControl};

#[test]
fn threshold_report() {
    let report = decay_time_thresholds().unwrap();
    let tail = report.get("bell1_infinite_tail").unwrap();
    let extinction = report.get("bell1_extinction").unwrap();
    let all = report.get("bell2_all_distances").unwrap();
    assert_abs_diff_eq!(tail.value, 0.5804, epsilon = 5e-3);
    assert_abs_diff_eq!(extinction.value, 1.0431, epsilon = 1e-3);
    assert_abs_diff_eq!(all.value, 0.5190, epsilon = 1e-3);
    // Independent high-precision values of the same definitions.
    assert_abs_diff_eq!(tail.value, LN_2 / (1.0 + 0.19426465), epsilon = 1e-7);
    assert_abs_diff_eq!(extinction.value, LN_2 / (1.0 - 0.33547881), epsilon = 1e-7);
    assert_abs_diff_eq!(all.value, LN_2 / (1.0 + 0.33547881), epsilon = 1e-7);
    assert_abs_diff_eq!(tail.r_extremum, 1.20791636, epsilon = 1e-5);
    for t in &report.thresholds {
        assert!(
            t.residual <= t.tolerance,
            "{}: residual {}",
            t.name,
            t.residual
        );
        assert!(t.bracket.1 - t.bracket.0 <= t.tolerance);
    }
}

#[test]
fn critical_times_at_the_minimum() {
    let geom = GeometryParams::perpendicular(0.6737).unwrap();
    assert_abs_diff_eq!(
        critical_time(InitialState::Bell1, &geom).unwrap(),
        LN_2 / 0.6645,
        epsilon = 1e-3
    );
    assert_abs_diff_eq!(
        critical_time(InitialState::Bell2, &geom).unwrap(),
        LN_2 / 1.3355,
        epsilon = 1e-3
    );
    let far = fidelity_with_rates(
        InitialState::Bell1,
        &CouplingRates::independent(),
        1.0,
        100.0,
        LN_2,
    )
    .unwrap();
    assert_abs_diff_eq!(far, 2.0 / 3.0, epsilon = 1e-15);
}

#[test]
fn psi0_and_psi3_give_identical_fidelity() {
    for &r in &[0.05, 1.0 / 6.0, 0.6737, 5.0] {
        let geom = GeometryParams::perpendicular(r).unwrap();
        for i in 0..=600 {
            let gt = i as f64 * 0.005;
            let a = evaluate(InitialState::Bell0, &geom, gt).unwrap().fidelity;
            let b = evaluate(InitialState::Bell3, &geom, gt).unwrap().fidelity;
            assert!((a - b).abs() <= 1e-12, "r={r} gt={gt}");
        }
    }
}

#[test]
fn psi0_fidelity_peaks_at_quarter_periods() {
    let omega0 = 100.0;
    let geom = GeometryParams::new(1.0 / 6.0, FRAC_PI_2, 1.0, omega0).unwrap();
    let dt = PI / (2.0 * omega0) / 2000.0;
    let n = (5.5 * PI / (2.0 * omega0) / dt) as usize;
    let f: Vec<f64> = (0..=n)
        .map(|i| {
            evaluate(InitialState::Bell0, &geom, i as f64 * dt)
                .unwrap()
                .fidelity
        })
        .collect();
    let peaks: Vec<f64> = (1..n)
        .filter(|&i| f[i] > f[i - 1] && f[i] >= f[i + 1])
        .map(|i| i as f64 * dt)
        .collect();
    assert_eq!(peaks.len(), 5, "{peaks:?}");
    for (k, t) in peaks.iter().enumerate() {
        let expect = (k + 1) as f64 * PI / (2.0 * omega0);
        assert!(
            (t - expect).abs() < PI / (20.0 * omega0),
            "k={} t={t}",
            k + 1
        );
    }
}

#[test]
fn psi0_limits_match_pipeline() {
    let near = GeometryParams::perpendicular(1e-3).unwrap();
    let far = GeometryParams::perpendicular(100.0).unwrap();
    for i in 0..=300 {
        let gt = i as f64 * 0.01;
        let a = evaluate(InitialState::Bell0, &near, gt).unwrap();
        let d = psi0_dicke_limit(gt, 1.0, 100.0);
        assert_abs_diff_eq!(a.fidelity, d.fidelity, epsilon = 1e-3);
        assert_abs_diff_eq!(a.concurrence, d.concurrence, epsilon = 1e-3);
        assert_abs_diff_eq!(a.purity, d.purity, epsilon = 1e-3);
        let b = evaluate(InitialState::Bell0, &far, gt).unwrap();
        let s = psi0_infinite_separation(gt, 1.0, 100.0);
        assert_abs_diff_eq!(b.fidelity, s.fidelity, epsilon = 1e-3);
        assert_abs_diff_eq!(b.concurrence, s.concurrence, epsilon = 1e-3);
        assert_abs_diff_eq!(b.purity, s.purity, epsilon = 1e-3);
    }
}

#[test]
fn product_state_channel() {
    let geom = GeometryParams::perpendicular(0.05).unwrap();
    let rates = coupling_pair(&geom).unwrap();
    let dt = 1e-5;
    let (mut best_t, mut best_c) = (0.0, 0.0);
    for i in 0..=10_000 {
        let gt = i as f64 * dt;
        let c = evaluate(InitialState::ProductEG, &geom, gt)
            .unwrap()
            .concurrence;
        assert_abs_diff_eq!(
            c,
            product_concurrence_closed(gt, 1.0, &rates),
            epsilon = 1e-9
        );
        if c > best_c {
            (best_t, best_c) = (gt, c);
        }
    }
    assert_abs_diff_eq!(best_c, 0.9688, epsilon = 2e-3);
    assert_abs_diff_eq!(best_t, 0.032, epsilon = 2e-3);
    assert_abs_diff_eq!(best_c, 0.96730, epsilon = 1e-5);
}

#[test]
fn product_state_never_beats_classical() {
    let mut worst = f64::NEG_INFINITY;
    let mut c_max: f64 = 0.0;
    for j in 0..=295 {
        let geom = GeometryParams::perpendicular(0.05 + j as f64 * 0.01).unwrap();
        for i in 1..=500 {
            let m = evaluate(InitialState::ProductEG, &geom, i as f64 * 0.01).unwrap();
            worst = worst.max(m.fidelity);
            c_max = c_max.max(m.concurrence);
        }
    }
    assert!(worst <= 2.0 / 3.0 + 1e-9, "{worst}");
    assert!(c_max > 0.9, "{c_max}");
}

#[test]
fn product_overlaps_ignore_the_dipole_shift() {
    let x0 = initial_density(InitialState::ProductEG);
    for &(g12, omega) in &[(0.3, 2.0), (-0.2, 40.0), (0.98, 23.0)] {
        for i in 0..=50 {
            let t = i as f64 * 0.06;
            let base = chi_vector(
                &evolve_x_analytic(&x0, &CouplingRates::new(g12, omega), 1.0, 100.0, t).unwrap(),
            );
            let shifted = chi_vector(
                &evolve_x_analytic(&x0, &CouplingRates::new(g12, omega + 7.5), 1.0, 100.0, t)
                    .unwrap(),
            );
            let closed = product_chi_closed(t, 1.0, g12);
            for n in 0..4 {
                assert!((base.0[n] - shifted.0[n]).abs() <= 1e-12);
                assert!((base.0[n] - closed.0[n]).abs() <= 1e-12);
            }
        }
    }
}

/// One-excitation block with the swapped pairing: c1 with e^{-(γ+2iΩ)t}.
fn swapped_pairing(x0: &XState, rates: &CouplingRates, t: f64) -> (f64, f64, C64) {
    let k = x_coefficients(x0, rates, 1.0).unwrap();
    let (ep, em, e2) = (
        (-(1.0 + rates.gamma12) * t).exp(),
        (-(1.0 - rates.gamma12) * t).exp(),
        (-2.0 * t).exp(),
    );
    let sym = k.a1.re * (ep - e2) + k.b1.re * ep;
    let anti = k.a2.re * (em - e2) + k.b2.re * em;
    let rot = C64::from_polar((-t).exp(), -2.0 * rates.omega12 * t);
    let (o1, o2) = (k.c1 * rot, k.c2 * rot.conj());
    (
        sym + anti + (o1 + o2).re,
        sym + anti - (o1 + o2).re,
        C64::new(sym - anti, 0.0) + o1 - o2,
    )
}

#[test]
fn swapped_coherence_pairing_disagrees_with_master_equation() {
    let geom = GeometryParams::perpendicular(0.3).unwrap();
    let rates = coupling_pair(&geom).unwrap();
    let x0 = initial_density(InitialState::ProductEG);
    let t = 0.4;
    let reference = evolve_lindblad(
        &x0.to_density(),
        &rates,
        1.0,
        100.0,
        t,
        &StepControl::default(),
    )
    .unwrap();
    let ours = evolve_x_analytic(&x0, &rates, 1.0, 100.0, t).unwrap();
    assert!(ours.to_density().max_abs_diff(&reference) < 1e-6);
    let (p22, p33, c23) = swapped_pairing(&x0, &rates, t);
    let gap = (c23 - reference.get(1, 2))
        .norm()
        .max((p22 - reference.get(1, 1).re).abs())
        .max((p33 - reference.get(2, 2).re).abs());
    assert!(gap > 1e-2, "swapped pairing unexpectedly agrees: {gap}");
    // Negating Ω₁₂ maps one form onto the other.
    let flipped = CouplingRates::new(rates.gamma12, -rates.omega12);
    let (q22, q33, d23) = swapped_pairing(&x0, &flipped, t);
    assert_abs_diff_eq!(q22, ours.p22, epsilon = 1e-14);
    assert_abs_diff_eq!(q33, ours.p33, epsilon = 1e-14);
    assert!((d23 - ours.c23).norm() < 1e-14);
}

#[test]
fn coupling_values() {
    let g = GeometryParams::perpendicular(0.25).unwrap();
    assert_abs_diff_eq!(
        collective_damping(&g).unwrap(),
        0.5679112453529781,
        epsilon = 1e-12
    );
    let g = GeometryParams::perpendicular(0.5).unwrap();
    assert_abs_diff_eq!(
        dipole_shift(&g).unwrap(),
        0.2145437638129434,
        epsilon = 1e-12
    );
    let g = GeometryParams::perpendicular(0.05).unwrap();
    assert_abs_diff_eq!(dipole_shift(&g).unwrap(), 23.082541374162, epsilon = 1e-9);
}

#[test]
fn bell2_near_contact_stays_nonclassical() {
    let rates = coupling_pair(&GeometryParams::perpendicular(1e-3).unwrap()).unwrap();
    let m = evaluate_with_rates(InitialState::Bell2, &rates, 1.0, 100.0, 5.0).unwrap();
    assert!(m.fidelity > 0.999);
}
