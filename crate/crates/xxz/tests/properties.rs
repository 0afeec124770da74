//! Property-based invariants across the library.

use proptest::prelude::*;

use xxz::bethe::{self, Anisotropy};
use xxz::correlations::SpinCorrelators;
use xxz::entanglement;
use xxz::rdm;
use xxz::scanner::{self, SweepConfig, SweepResult};

fn anisotropy() -> impl Strategy<Value = f64> {
    -3.0..1.0f64
}

/// Correlator triples that always assemble into a physical density
/// matrix: eigenvalues (1 + tzz +/- 2m)/4 and (1 - tzz)/4 +/- |txx|/2.
fn physical_correlators() -> impl Strategy<Value = SpinCorrelators> {
    (-1.0..1.0f64, 0.0..1.0f64, -1.0..1.0f64).prop_map(|(tzz, fx, fm)| {
        let txx = (fx - 0.5) * (1.0 - tzz);
        let m = (fm * 0.5) * (1.0 + tzz);
        SpinCorrelators::new(1, txx, txx, tzz, m, false).unwrap()
    })
}

proptest! {
    #[test]
    fn nu_delta_round_trip(delta in -0.999..0.999f64) {
        let nu = bethe::nu_of_delta(Anisotropy::new(delta).unwrap()).unwrap().nu;
        prop_assert!((0.0..1.0).contains(&nu));
        prop_assert!(((std::f64::consts::PI * nu).cos() - delta).abs() < 1e-12);
    }

    #[test]
    fn energy_branch_and_error_budget(delta in anisotropy()) {
        let e = bethe::ground_energy(Anisotropy::new(delta).unwrap()).unwrap();
        prop_assert!(e.quad_error <= 1e-10);
        if delta <= -1.0 {
            prop_assert_eq!(e.e0, delta / 4.0);
        } else {
            // critical branch sits at or below the product-state line
            prop_assert!(e.e0 <= delta / 4.0 + 1e-12);
        }
    }

    #[test]
    fn rdm_is_physical(c in physical_correlators()) {
        let rho = rdm::build_two_spin(&c).unwrap();
        prop_assert!((rho.trace() - 1.0).abs() < 1e-12);
        let eigs = rho.eigenvalues();
        prop_assert!(eigs.iter().all(|&e| e >= -1e-9));
        // tracing out one site recovers the magnetization
        prop_assert!((rho.partial_trace().magnetization() - c.m).abs() < 1e-12);
    }

    #[test]
    fn wootters_matches_closed_form(c in physical_correlators()) {
        let rho = rdm::build_two_spin(&c).unwrap();
        let w = entanglement::wootters_concurrence(&rho).unwrap();
        let (_, closed) = entanglement::concurrence_ssb(&c).unwrap();
        prop_assert!((w - closed).abs() < 1e-9, "wootters {} vs closed {}", w, closed);
    }

    #[test]
    fn magnetization_never_lowers_the_pre_max_value(c in physical_correlators()) {
        // sqrt((1+tzz)^2 - (pz+qz)^2) <= 1 + tzz, so the broken-symmetry
        // pre-max value dominates the symmetric one
        let (ct, _) = entanglement::concurrence_symmetric(&c);
        let (ct_ssb, c_ssb) = entanglement::concurrence_ssb(&c).unwrap();
        prop_assert!(ct_ssb >= ct - 1e-12);
        prop_assert!(c_ssb >= 0.0);
    }

    #[test]
    fn ssb_form_reduces_at_zero_magnetization(
        tzz in -1.0..1.0f64,
        fx in 0.0..1.0f64,
    ) {
        let txx = (fx - 0.5) * (1.0 - tzz);
        let c = SpinCorrelators::symmetric(1, txx, tzz).unwrap();
        let sym = entanglement::concurrence_symmetric(&c);
        let ssb = entanglement::concurrence_ssb(&c).unwrap();
        prop_assert_eq!(sym, ssb);
    }

    #[test]
    fn entropy_is_symmetric_and_bounded(m in -1.0..=1.0f64) {
        let s = entanglement::entropy_one_site(m).unwrap();
        let s_neg = entanglement::entropy_one_site(-m).unwrap();
        prop_assert!((0.0..=1.0 + 1e-12).contains(&s));
        prop_assert!((s - s_neg).abs() < 1e-12);
    }

    #[test]
    fn detector_quiet_on_random_cubics(
        a in -1.0..1.0f64,
        b in -1.0..1.0f64,
        c in -1.0..1.0f64,
        e in -1.0..1.0f64,
    ) {
        let f = |x: f64| a * x * x * x + b * x * x + c * x + e;
        let sweep = synthetic_sweep(-2.0, 0.9, 240, f);
        let reports = scanner::detect(&sweep, "s").unwrap();
        prop_assert!(reports.is_empty(), "false positives: {:?}", reports);
    }

    #[test]
    fn detector_flags_a_random_interior_step(
        loc in -0.7..0.6f64,
        height in 0.5..2.0f64,
    ) {
        let f = move |x: f64| 0.2 * x + if x < loc { 0.0 } else { height };
        let sweep = synthetic_sweep(-0.9, 0.9, 240, f);
        let reports = scanner::detect(&sweep, "s").unwrap();
        prop_assert_eq!(reports.len(), 1, "reports: {:?}", reports);
        prop_assert_eq!(reports[0].kind, scanner::Kind::Jump);
        prop_assert!((reports[0].location - loc).abs() < 0.02);
    }
}

/// A single-signal sweep container for detector properties.
fn synthetic_sweep(lo: f64, hi: f64, n: usize, f: impl Fn(f64) -> f64) -> SweepResult {
    let grid: Vec<f64> = (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect();
    let series: Vec<f64> = grid.iter().map(|&g| f(g)).collect();
    let transition = (lo < -1.0 && hi > -1.0).then(|| scanner::TransitionLimits {
        location: -1.0,
        eps: scanner::SIDE_EPS,
        left: vec![f(-1.0 - scanner::SIDE_EPS)],
        right: vec![f(-1.0 + scanner::SIDE_EPS)],
    });
    SweepResult {
        config: SweepConfig { lo, hi, n_points: n, rs: vec![1], ssb: false },
        grid,
        signals: vec![("s".to_string(), series)],
        transition,
    }
}

/// Non-proptest spot check: scanning a sweep after a JSON round trip gives
/// identical reports.
#[test]
fn reports_survive_json_round_trip() {
    let config = SweepConfig::new(-1.5, -0.5, 120, vec![1], false).unwrap();
    let result = scanner::sweep(&config).unwrap();
    let text = serde_json::to_string(&result).unwrap();
    let back: SweepResult = serde_json::from_str(&text).unwrap();
    let direct = scanner::detect_classified(&result, "c_1").unwrap();
    let reread = scanner::detect_classified(&back, "c_1").unwrap();
    assert_eq!(direct, reread);
    assert!(!direct.is_empty());
}
