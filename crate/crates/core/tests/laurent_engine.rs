//! Laurent expansions at integer points, multiple Stieltjes constants and the
//! restricted one-variable expansion.
//!
//! Cauchy integrals use radius 0.2: the next singularity of the diagonal oracle
//! sits at u = −1/2.

use ezeta::contour::{taylor_coefficient, Polydisc};
use ezeta::expansion::LaurentExpansion;
use ezeta::laurent::{
    double_euler_gamma, double_slice, expand, multiple_stieltjes, multiple_stieltjes_contour, multiple_stieltjes_table,
    restricted_expand, stieltjes_generating_function, stieltjes_sum,
};
use ezeta::mb::ez_eval_mb;
use ezeta::series::ez_value;
use ezeta::zeta::{stieltjes_table, zeta};
use ezeta::{Cdd, Dd, Error, EvalConfig};

const OFFSETS: [(f64, f64); 3] = [(0.013, 0.007), (-0.011, 0.004), (0.006, -0.012)];

fn near(m: &[i64], shift: usize) -> Vec<Cdd> {
    m.iter()
        .enumerate()
        .map(|(i, &c)| {
            let (a, b) = OFFSETS[(i + shift) % OFFSETS.len()];
            Cdd::from_f64(c as f64 + a * (1.0 + i as f64 * 0.3), b)
        })
        .collect()
}

#[test]
fn expansions_reproduce_values_near_the_center() {
    let cfg = EvalConfig::default();
    for m in [vec![2i64, 1, 1], vec![1, 1], vec![1, 2], vec![3, 1], vec![0, 0], vec![-1, 0], vec![1, -1], vec![1, 1, 1], vec![0, 1, -1]] {
        let e = expand(&m, 6, &cfg).unwrap();
        for shift in 0..2 {
            let s = near(&m, shift);
            let want = ez_eval_mb(&s, &cfg).unwrap();
            let got = e.evaluate(&s);
            assert!((got - want).abs() < 1e-10 * want.abs().max(1.0), "{m:?}: {got} vs {want}");
        }
    }
}

#[test]
fn leading_term_at_two_one_one() {
    // ζ_3 ≈ ζ(2)/((s_2+s_3−2)(s_3−1)) with its two denominators
    let cfg = EvalConfig::default();
    let e = expand(&[2, 1, 1], 2, &cfg).unwrap();
    let zeta2 = Cdd::real(Dd::PI.sqr() / Dd::from_f64(6.0));
    let t = e.terms.iter().find(|t| t.denominator.len() == 2).expect("double pole term");
    assert!((t.numerator.coeff(&[0, 0, 0]) - zeta2).abs() < 1e-28);
    let text: Vec<String> = t.denominator.iter().map(ToString::to_string).collect();
    assert!(text.iter().any(|d| d.contains("s3")) && text.iter().any(|d| d.contains("s2")), "{text:?}");
}

#[test]
fn json_round_trip_is_exact_to_the_printed_digits() {
    let cfg = EvalConfig::default();
    let e = expand(&[1, 2, 1], 3, &cfg).unwrap();
    let json = e.to_json();
    let back = LaurentExpansion::from_json(&json).unwrap();
    assert_eq!(back.to_json(), json);
    let s = near(&[1, 2, 1], 1);
    assert!((back.evaluate(&s) - e.evaluate(&s)).abs() < 1e-27 * e.evaluate(&s).abs());
    assert!(LaurentExpansion::from_json(&serde_json::json!({"center": [1]})).is_err());
}

#[test]
fn order_cap_is_enforced() {
    let cfg = EvalConfig::default();
    assert!(matches!(expand(&[1, 1], cfg.order_cap + 1, &cfg), Err(Error::OrderCapExceeded { .. })));
}

#[test]
fn multiple_stieltjes_match_cauchy_integrals() {
    let cfg = EvalConfig::default();
    for n in [vec![0u8, 0], vec![1, 0], vec![0, 1], vec![2, 1], vec![1, 3]] {
        let a = multiple_stieltjes(&n, &cfg.precision).unwrap();
        let b = multiple_stieltjes_contour(&n, 64, &cfg.precision).unwrap();
        assert!((a - b).abs() < 1e-20, "γ_{n:?}: {a} vs {b}");
    }
    // depth 3 on a small polydisc: the nearest singular hyperplane is at distance 1/2
    let idx = vec![vec![0u8, 0, 0], vec![1, 0, 1], vec![0, 2, 0]];
    let pd = Polydisc::new(vec![Cdd::ONE; 3], 0.05, 20);
    let oracle = pd.coefficients(|s| stieltjes_generating_function(s, &cfg.precision), &idx).unwrap();
    for (n, b) in idx.iter().zip(oracle) {
        let a = multiple_stieltjes(n, &cfg.precision).unwrap();
        assert!((a - b).abs() < 1e-18, "γ_{n:?}: {a} vs {b}");
    }
}

#[test]
fn last_index_zero_gives_classical_constants() {
    let cfg = EvalConfig::default();
    let g = stieltjes_table(6, &cfg.precision).unwrap();
    let t = multiple_stieltjes_table(2, 6, &cfg.precision).unwrap();
    for n in 0..=6u8 {
        assert!((t.coeff(&[n, 0]) - Cdd::real(g[n as usize])).abs() < 1e-25, "n = {n}");
    }
}

#[test]
fn coefficient_functions_of_double_zeta() {
    let cfg = EvalConfig::default();
    let ctx = &cfg.precision;
    for (a, b) in [(0.2, 0.0), (0.0, 0.25), (-0.15, 0.1)] {
        let s1 = Cdd::from_f64(1.0 + a, b);
        let a0 = double_slice(0, s1, ctx).unwrap();
        assert!((a0 - zeta(s1, ctx).unwrap()).abs() < 1e-15, "A_0({s1})");
        let a1 = double_slice(1, s1, ctx).unwrap();
        assert!((a1 - double_euler_gamma(s1, ctx).unwrap()).abs() < 1e-12, "A_1({s1})");
    }
    let (s1, u) = (Cdd::from_f64(1.2, 0.1), Cdd::from_f64(0.02, -0.01));
    let mut acc = Cdd::ZERO;
    for n2 in (0..=12u8).rev() {
        acc = acc * u + double_slice(n2, s1, ctx).unwrap();
    }
    // the slices resum (s_2−1)ζ_2
    let want = u * ez_eval_mb(&[s1, Cdd::ONE + u], &cfg).unwrap();
    assert!((acc - want).abs() < 1e-12 * want.abs(), "{acc} vs {want}");
}

/// `(ζ(1+u)² − ζ(2+2u))/2 · u²`, analytic at `u = 0`.
fn diagonal(u: Cdd, cfg: &EvalConfig) -> ezeta::Result<Cdd> {
    let z = zeta(Cdd::ONE + u, &cfg.precision)?;
    Ok((z * z - zeta(Cdd::from_i64(2) + u.mul_f64(2.0), &cfg.precision)?).mul_f64(0.5) * u * u)
}

#[test]
fn restricted_expansion_on_the_diagonal() {
    let cfg = EvalConfig::default();
    let r = restricted_expand(&[1, 1], 5, &cfg).unwrap();
    assert_eq!(r.restricted, vec![1, 2]);
    assert_eq!(r.pole_order(), 2);
    for p in -2..=5 {
        let want = taylor_coefficient(|u| diagonal(u, &cfg), Cdd::ZERO, (p + 2) as usize, 0.2, 128).unwrap();
        assert!((r.coefficient(p) - want).abs() < 1e-22, "power {p}: {} vs {want}", r.coefficient(p));
    }
    assert!((r.coefficient(-2) - Cdd::from_f64(0.5, 0.0)).abs() < 1e-30);
    assert!((r.coefficient(-1) - Cdd::real(Dd::EULER)).abs() < 1e-29);
}

#[test]
fn restricted_expansion_with_fixed_coordinates() {
    let cfg = EvalConfig::default();
    let r = restricted_expand(&[2, 1, 1], 6, &cfg).unwrap();
    assert_eq!(r.restricted, vec![2, 3]);
    let u = Cdd::from_f64(0.01, 0.004);
    let s = [Cdd::from_i64(2), Cdd::ONE + u, Cdd::ONE + u];
    let want = ez_eval_mb(&s, &cfg).unwrap();
    assert!((r.evaluate(u) - want).abs() < 1e-14 * want.abs(), "{} vs {want}", r.evaluate(u));
    // no coordinate equal to 1: plain Taylor series
    let t = restricted_expand(&[2, 3], 2, &cfg).unwrap();
    assert!(t.restricted.is_empty());
    assert!((t.coefficient(0) - ez_value(&[Cdd::from_i64(2), Cdd::from_i64(3)], &cfg).unwrap()).abs() < 1e-28);
    assert!(matches!(restricted_expand(&[0, 1], 2, &cfg), Err(Error::NotPositive { .. })));
}

#[test]
fn diagonal_sums_of_stieltjes_constants() {
    let cfg = EvalConfig::default();
    for n in 0..=4 {
        // Σ_{|n|=N} γ_(n) is the u^N coefficient of uζ_2(1+u,1+u) − 1/(2u)
        let want = taylor_coefficient(|u| diagonal(u, &cfg), Cdd::ZERO, n + 1, 0.2, 128).unwrap();
        let got = stieltjes_sum(n, 2, &cfg).unwrap();
        assert!((got - want).abs() < 1e-22, "N = {n}: {got} vs {want}");
    }
}
