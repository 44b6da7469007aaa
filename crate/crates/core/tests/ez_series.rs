//! Convergent-domain evaluation of ζ_r against closed forms and Cauchy integrals.

use ezeta::contour::Polydisc;
use ezeta::series::{ez_deriv, ez_taylor, ez_value, ez_value_with_error, in_domain, DomainDescriptor};
use ezeta::zeta::zeta;
use ezeta::{Cdd, Dd, Error, EvalConfig};
use proptest::prelude::*;

fn re(v: &[f64]) -> Vec<Cdd> {
    v.iter().map(|&x| Cdd::from_f64(x, 0.0)).collect()
}

fn z1(s: f64) -> Cdd {
    zeta(Cdd::from_f64(s, 0.0), &EvalConfig::default().precision).unwrap()
}

#[test]
fn euler_closed_forms() {
    let cfg = EvalConfig::default();
    let pi2 = Cdd::real(Dd::PI.sqr());
    let cases: Vec<(Vec<f64>, Cdd)> = vec![
        (vec![1.0, 2.0], z1(3.0)),
        (vec![2.0, 2.0], (z1(2.0) * z1(2.0) - z1(4.0)).mul_f64(0.5)),
        (vec![1.0, 3.0], z1(4.0).mul_f64(0.25)),
        (vec![2.0, 2.0, 2.0], pi2 * pi2 * pi2 / Cdd::from_i64(5040)),
        (vec![1.0, 1.0, 2.0], z1(4.0)),
    ];
    for (s, want) in cases {
        let v = ez_value(&re(&s), &cfg).unwrap();
        assert!((v - want).abs() < 1e-27, "ζ{s:?} = {v}, expected {want}");
    }
}

#[test]
fn domain_predicate_and_errors() {
    assert!(in_domain(&re(&[0.5, 2.5])));
    assert!(!in_domain(&re(&[0.5, 1.4])));
    assert!(!in_domain(&re(&[3.0, 1.0])));
    assert!(in_domain(&re(&[-1.0, 2.5, 1.6])));
    assert!(!in_domain(&re(&[-1.0, 1.5, 1.6])));
    let d = DomainDescriptor::new(3);
    assert_eq!(d.bound(1), 3.0);
    assert_eq!(d.bound(3), 1.0);
    match ez_value(&re(&[2.0, 0.5]), &EvalConfig::default()) {
        Err(Error::OutOfDomain { condition, .. }) => assert!(condition.contains("s_2"), "{condition}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn error_estimate_is_honest() {
    let cfg = EvalConfig::default();
    let (v, e) = ez_value_with_error(&re(&[1.0, 2.0]), &cfg).unwrap();
    assert!(e < 1e-25);
    assert!((v - z1(3.0)).abs() <= e.max(1e-30) * 10.0);
}

#[test]
fn derivatives_match_polydisc_integrals() {
    let cfg = EvalConfig::default();
    let q = vec![Cdd::from_f64(2.2, 0.4), Cdd::from_f64(1.9, -0.3)];
    let pd = Polydisc::new(q.clone(), 0.3, 48);
    let idx: Vec<Vec<u8>> = vec![vec![1, 0], vec![0, 1], vec![2, 1], vec![1, 3]];
    let oracle = pd.coefficients(|p| ez_value(p, &cfg), &idx).unwrap();
    for (l, o) in idx.iter().zip(oracle) {
        let fact: f64 = l.iter().map(|&k| (1..=k as u32).product::<u32>() as f64).product();
        let d = ez_deriv(l, &q, &cfg).unwrap();
        assert!((d - o.mul_f64(fact)).abs() < 1e-22 * d.abs().max(1.0), "∂^{l:?}: {d} vs {o}");
    }
}

#[test]
fn taylor_jet_reconstructs_values() {
    let cfg = EvalConfig::default();
    let q = re(&[2.0, 2.0, 2.0]);
    let jet = ez_taylor(&q, 14, &cfg).unwrap();
    let d = [Cdd::from_f64(0.01, 0.005), Cdd::from_f64(-0.01, 0.0), Cdd::from_f64(0.005, -0.01)];
    let p: Vec<Cdd> = q.iter().zip(&d).map(|(a, b)| *a + *b).collect();
    let v = ez_value(&p, &cfg).unwrap();
    assert!((jet.eval_at(&d) - v).abs() < 1e-24, "{:e}", (jet.eval_at(&d) - v).abs());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// ζ_2(a,b) + ζ_2(b,a) + ζ(a+b) = ζ(a)ζ(b) with both orders in the domain.
    #[test]
    fn harmonic_symmetry(ar in 1.2f64..4.0, ai in -3.0f64..3.0, br in 1.2f64..4.0, bi in -3.0f64..3.0) {
        prop_assume!(ar + br > 2.3);
        let cfg = EvalConfig::default();
        let (a, b) = (Cdd::from_f64(ar, ai), Cdd::from_f64(br, bi));
        let lhs = ez_value(&[a, b], &cfg).unwrap() + ez_value(&[b, a], &cfg).unwrap() + zeta(a + b, &cfg.precision).unwrap();
        let rhs = zeta(a, &cfg.precision).unwrap() * zeta(b, &cfg.precision).unwrap();
        prop_assert!((lhs - rhs).abs() < 10.0 * cfg.tol() * rhs.abs().max(1.0), "{} vs {}", lhs, rhs);
    }
}
