use approx::assert_relative_eq;
use hs_oscillator::dual::Dual;
use hs_oscillator::hs_terms::*;
use hs_oscillator::ladder_sum::perturbation_sums;
use hs_oscillator::{Error, Level, OscillatorModel};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn pure() -> OscillatorModel {
    OscillatorModel::pure_quartic()
}

/// 1.5^{-2/3} evaluated through logarithms rather than powf.
fn one_point_five_pre() -> f64 {
    (-(2.0 / 3.0) * 1.5f64.ln()).exp()
}

#[test]
fn unperturbed_examples() {
    assert_eq!(e0(Level(0), 1.0).unwrap(), 0.25);
    assert_eq!(e0(Level(2), 1.0).unwrap(), 6.25);
    assert_relative_eq!(e0(Level(0), 1.5).unwrap(), 0.25 * one_point_five_pre(), max_relative = 1e-15);
    assert!((e0(Level(0), 1.5).unwrap() - 0.19078).abs() < 1e-5);
    assert_eq!(e0(Level(0), 0.0), Err(Error::NonPositiveRegulator(0.0)));
    assert!(e0(Level(0), -2.0).is_err());
}

#[test]
fn first_order_examples() {
    assert_eq!(e1(Level(0), 0.25, 0.0).unwrap(), 0.0);
    assert_relative_eq!(e1(Level(0), 1.0, 0.0).unwrap(), 3.0 / 16.0, max_relative = 1e-15);
    assert_relative_eq!(e1(Level(1), 1.0, 1.0).unwrap(), 0.1875, max_relative = 1e-15);
    assert!(e1(Level(0), 0.0, 0.0).is_err());
}

#[test]
fn second_order_examples() {
    // −[3/640 + (2/96)(1 − 3/2)²] at n=0, Z=1
    let expected = -(3.0 / 640.0 + (2.0 / 96.0) * 0.25);
    assert_relative_eq!(e2(Level(0), 1.0, 0.0).unwrap(), expected, max_relative = 1e-14);
    // the (n+1)(n+2) bracket vanishes at Z(1−X) = 3/2
    let g = e2_groups(Level(0), 1.5, 0.0).unwrap();
    assert_eq!(g[2], 0.0);
    assert_relative_eq!(e2(Level(0), 1.5, 0.0).unwrap(), -3.0 / 640.0 * one_point_five_pre(), max_relative = 1e-14);
    assert!(e2(Level(3), -1.0, 0.0).is_err());
}

#[test]
fn third_order_example_at_vanishing_bracket() {
    // n = 0, Z = 3/2: only the (n+1)..(n+4)/(2¹²(2n+5)²) group and its share
    // of the braced subtraction survive.
    let c = 24.0 / 102_400.0;
    let surviving = c * ((9.0 / 4.0) * 1.5 - 201.0 / 16.0) - c * (1.5 / 4.0 - 1.0 / 16.0);
    assert_relative_eq!(surviving, -9.5 * c, max_relative = 1e-14);
    assert_relative_eq!(e3(Level(0), 1.5, 0.0).unwrap(), surviving * one_point_five_pre(), max_relative = 1e-13);
    let groups = e3_groups(Level(0), 1.5, 0.0).unwrap();
    for i in [0, 1, 2, 3, 4, 6] {
        assert_eq!(groups[i], 0.0, "group {i}");
    }
}

#[test]
fn norm_examples() {
    assert_relative_eq!(first_order_norm(Level(0), 1.5, 0.0).unwrap(), 24.0 / 102_400.0, max_relative = 1e-14);
    // same through X: Z(1 − X) = 3/2 with Z = 3, X = 1/2
    assert_relative_eq!(first_order_norm(Level(0), 3.0, 0.5).unwrap(), 24.0 / 102_400.0, max_relative = 1e-14);
}

#[test]
fn vanishing_groups_for_lowest_levels() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let z = rng.gen_range(0.05..20.0);
        let x = rng.gen_range(0.0..3.0);
        for n in [0, 1] {
            let g2 = e2_groups(Level(n), z, x).unwrap();
            assert_eq!(g2[1], 0.0);
            let g3 = e3_groups(Level(n), z, x).unwrap();
            // b-, n(n−1)(n+1)(n+2)-, n(n−1)(n−2)(n−3)- and d-weighted groups
            for i in [1, 3, 4, 6] {
                assert_eq!(g3[i], 0.0, "n={n} group {i}");
            }
            let gn = norm_groups_at(Level(n), z, x).unwrap();
            assert_eq!(gn[2], 0.0);
            assert_eq!(gn[3], 0.0);
        }
        // n = 2, 3: only the four-fold product groups vanish
        for n in [2, 3] {
            let g3 = e3_groups(Level(n), z, x).unwrap();
            assert_eq!(g3[4], 0.0);
            assert_eq!(g3[6], 0.0);
            assert_eq!(norm_groups_at(Level(n), z, x).unwrap()[3], 0.0);
        }
    }
}

#[test]
fn partial_sum_examples() {
    let m = pure();
    assert_eq!(partial_sum(Level(3), 2.0, &m, 0).unwrap(), e0(Level(3), 2.0).unwrap());
    let closed = 3f64.powf(4.0 / 3.0) / 2f64.powf(7.0 / 3.0) * (1.0f64 / 8.0).cbrt();
    assert_relative_eq!(partial_sum(Level(0), 1.5, &m, 1).unwrap(), closed, max_relative = 1e-14);
    assert!((closed - 0.42926).abs() < 1e-5);
    assert_eq!(partial_sum(Level(0), 1.5, &m, 4), Err(Error::OrderOutOfRange(4)));
    assert!(partial_sum(Level(0), 0.0, &m, 1).is_err());
}

#[test]
fn h_expect_0_is_first_order_partial_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let n = Level(rng.gen_range(0..10));
        let z = rng.gen_range(0.05..30.0);
        let m = OscillatorModel::with_g(rng.gen_range(0.0..5.0)).unwrap();
        assert_eq!(h_expect_0(n, z, &m).unwrap(), partial_sum(n, z, &m, 1).unwrap());
    }
    assert_relative_eq!(h_expect_0(Level(0), 1.5, &pure()).unwrap(), 0.429_26, epsilon = 1e-5);
}

#[test]
fn h_expect_1_without_norm_is_third_order_sum() {
    let t = terms_generic(2, 2.5, 0.3);
    let zero_norm = TermSet { norm1: 0.0, ..t };
    assert_relative_eq!(zero_norm.h_expect_1(), t.partial_sum(3), max_relative = 1e-15);
    assert!(t.h_expect_1() != t.partial_sum(3));
}

#[test]
fn x_polynomial_examples() {
    let p = x_polynomial(Level(4), 2.0, 0).unwrap();
    assert_eq!(p.coeffs, vec![e0(Level(4), 2.0).unwrap()]);
    for k in 0..=3 {
        let p = x_polynomial(Level(1), 3.0, k).unwrap();
        assert_eq!(p.degree(), k as usize);
        assert_relative_eq!(p.coeffs[0], partial_sum(Level(1), 3.0, &pure(), k).unwrap(), max_relative = 1e-13);
    }
    let z: f64 = 2.7;
    let p = x_polynomial(Level(0), z, 1).unwrap();
    assert_relative_eq!(p.coeffs[1], z.cbrt() / 4.0, max_relative = 1e-13);
    assert!(x_polynomial(Level(0), 1.0, 4).is_err());
}

#[test]
fn curve_tags_round_trip() {
    for c in [Curve::PartialSum(0), Curve::PartialSum(3), Curve::Corrections(2), Curve::HExpect0, Curve::HExpect1] {
        assert_eq!(Curve::from_tag(&c.tag()), Some(c));
    }
    assert_eq!(Curve::from_tag("k4"), None);
    assert_eq!(Curve::from_tag("zz"), None);
    assert_eq!(Curve::from_tag(""), None);
}

#[test]
fn energy_unit_scales_outputs() {
    let s = 3.7;
    let base = OscillatorModel::new(0.4, 1.0).unwrap();
    let scaled = OscillatorModel::new(0.4, s).unwrap();
    let v = partial_sum(Level(2), 3.0, &base, 3).unwrap();
    let w = partial_sum(Level(2), 3.0, &scaled, 3).unwrap();
    assert_eq!(base.to_caller_units(v) * s, scaled.to_caller_units(w));
}

/// Richardson-extrapolated central difference of `f` at `z`.
fn richardson(f: impl Fn(f64) -> f64, z: f64) -> f64 {
    let h = 1e-2 * z;
    let d = |h: f64| (f(z + h) - f(z - h)) / (2.0 * h);
    (4.0 * d(h / 2.0) - d(h)) / 3.0
}

#[test]
fn dual_derivatives_match_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let curves = [Curve::PartialSum(1), Curve::PartialSum(2), Curve::PartialSum(3), Curve::HExpect1, Curve::Corrections(3)];
    for i in 0..100 {
        let n = Level(rng.gen_range(0..8));
        let z = rng.gen_range(0.2..15.0);
        let m = OscillatorModel::with_g(rng.gen_range(0.0..3.0)).unwrap();
        let curve = curves[i % curves.len()];
        let analytic = curve_with_derivative(&ClosedFormTerms, curve, n, z, &m).unwrap().d;
        let numeric = richardson(|zz| curve_with_derivative(&ClosedFormTerms, curve, n, zz, &m).unwrap().v, z);
        let scale = analytic.abs().max(1e-3 * curve_with_derivative(&ClosedFormTerms, curve, n, z, &m).unwrap().v.abs());
        assert!(
            (analytic - numeric).abs() <= 1e-6 * scale,
            "{curve:?} n={n} z={z}: {analytic} vs {numeric}"
        );
    }
}

#[test]
fn closed_forms_match_ladder_sums() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..20 {
        let n = Level(rng.gen_range(0..=5));
        let z = rng.gen_range(0.1..8.0);
        let x = rng.gen_range(0.0..3.0);
        let brute = perturbation_sums(n, z, x).unwrap();
        let pairs = [
            (e1(n, z, x).unwrap(), brute.e1),
            (e2(n, z, x).unwrap(), brute.e2),
            (e3(n, z, x).unwrap(), brute.e3),
            (first_order_norm(n, z, x).unwrap(), brute.norm1),
        ];
        for (a, b) in pairs {
            assert_relative_eq!(a, b, max_relative = 1e-8);
        }
    }
}

#[test]
fn term_source_matches_scalar_path() {
    let t = ClosedFormTerms.terms(Level(3), Dual::new(2.2, 0.0), Dual::new(0.4, 0.0));
    assert_eq!(t.e3.v, e3(Level(3), 2.2, 0.4).unwrap());
    assert_eq!(t.e3.d, 0.0);
}

#[test]
fn term_values_snapshot() {
    let m = OscillatorModel::with_g(2.0).unwrap();
    let v = term_values(Level(1), 8.0, &m).unwrap();
    assert_relative_eq!(v.x, 0.5, max_relative = 1e-15);
    assert_eq!(v.e2, e2(Level(1), 8.0, v.x).unwrap());
    assert!(v.e0 > 0.0 && v.norm1 >= 0.0);
}

proptest! {
    #[test]
    fn norm_is_nonnegative(n in 0u32..30, z in 0.01f64..100.0, x in 0.0f64..10.0) {
        prop_assert!(first_order_norm(Level(n), z, x).unwrap() >= 0.0);
        prop_assert!(e0(Level(n), z).unwrap() > 0.0);
    }

    #[test]
    fn x_polynomial_reproduces_partial_sum(
        n in 0u32..=8, z in 0.1f64..10.0, k in 0u32..=3,
        xs in proptest::collection::vec(0.0f64..4.0, 10),
    ) {
        let p = x_polynomial(Level(n), z, k).unwrap();
        for x in xs {
            let direct = terms_generic(n, z, x).partial_sum(k);
            let scale = direct.abs().max(terms_generic(n, z, x).e0);
            prop_assert!((p.eval(x) - direct).abs() <= 1e-10 * scale, "x={x}: {} vs {direct}", p.eval(x));
        }
    }
}
