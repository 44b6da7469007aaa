//! Near-point formulas for ζ_2 and ζ_3 against the Mellin–Barnes continuation.

use ezeta::limits::{corollary_dropped_terms, zeta2_corollary, zeta2_near, zeta3_near, ApproachSpec, NearPoint};
use ezeta::mb::ez_eval_mb;
use ezeta::{Cdd, Error, EvalConfig};

fn dir(v: &[(f64, f64)]) -> Vec<Cdd> {
    v.iter().map(|&(a, b)| Cdd::from_f64(a, b)).collect()
}

/// |formula − ζ_r(m+ε)| at `ε = t·d`.
fn residual<F>(m: &[i64], d: &[Cdd], t: f64, formula: F) -> f64
where
    F: Fn(&ApproachSpec) -> Cdd,
{
    let cfg = EvalConfig::default();
    let eps = ApproachSpec::along(d, t);
    (formula(&eps) - ez_eval_mb(&eps.point(m), &cfg).unwrap()).abs()
}

fn assert_linear(m: &[i64], d: &[Cdd], formula: impl Fn(&ApproachSpec) -> Cdd + Copy) {
    let (a, b) = (residual(m, d, 1e-3, formula), residual(m, d, 1e-4, formula));
    // first order: the residual drops tenfold; a residual already at rounding level is fine too
    assert!(b < 1e-24 || (a / b > 7.0 && a / b < 13.0), "{m:?} along {d:?}: {a:e} then {b:e}");
}

#[test]
fn depth_two_error_is_first_order() {
    let cfg = EvalConfig::default();
    let d = dir(&[(0.6, 0.3), (0.5, -0.4)]);
    for m in [[2i64, 0], [1, 0], [3, -1], [0, -2], [-1, -1], [0, 0], [-2, 0]] {
        assert_linear(&m, &d, |e| zeta2_near(&m, e, &cfg).unwrap().total());
    }
    for m in [[0i64, 0], [-1, 0], [0, -1], [-2, -1]] {
        assert_linear(&m, &d, |e| zeta2_corollary(&m, e, &cfg).unwrap().total());
    }
}

#[test]
fn limit_at_the_origin_depends_on_the_direction() {
    let cfg = EvalConfig::default();
    let t = 1e-6;
    for lambda in [0.0, 1.0 / 3.0, 0.5, 1.0, 2.5] {
        let eps = ApproachSpec::real(&[t * (1.0 - lambda), t * lambda]);
        let exact = 1.0 / 3.0 + lambda / 12.0;
        let v = ez_eval_mb(&eps.point(&[0, 0]), &cfg).unwrap();
        let c = zeta2_corollary(&[0, 0], &eps, &cfg).unwrap();
        assert!((v.re.to_f64() - exact).abs() < 1e-5, "λ = {lambda}: {v}");
        assert!((c.total() - v).abs() < 1e-5, "λ = {lambda}: corollary {}", c.total());
    }
}

#[test]
fn strongly_unbalanced_approach() {
    // |ε1| = 1000·|ε2|: the corollary still tracks the function to O(|ε|)
    let cfg = EvalConfig::default();
    for m in [[0i64, 0], [-1, 0], [0, -1]] {
        let eps = ApproachSpec::real(&[1e-4, 1e-7]);
        let c = zeta2_corollary(&m, &eps, &cfg).unwrap().total();
        let v = ez_eval_mb(&eps.point(&m), &cfg).unwrap();
        assert!((c - v).abs() < 1e-3, "{m:?}: {c} vs {v}");
    }
}

#[test]
fn corollary_drops_only_vanishing_terms() {
    let cfg = EvalConfig::default();
    for m in [[0i64, 0], [-1, 0], [0, -1], [-3, -2], [-2, -2]] {
        for (label, v) in corollary_dropped_terms(&m, &cfg).unwrap() {
            assert!(v.abs() < 1e-30, "{m:?} {label}: {v}");
        }
    }
}

#[test]
fn depth_three_error_is_first_order() {
    let cfg = EvalConfig::default();
    let d = dir(&[(0.6, 0.3), (0.5, -0.4), (0.7, 0.2)]);
    for m in [[1i64, 1, 0], [1, 0, 2], [2, 1, -1]] {
        assert_linear(&m, &d, |e| match zeta3_near(&m, e, &cfg).unwrap() {
            NearPoint::Value(v) => v.total(),
            NearPoint::Indeterminate { reason, .. } => panic!("{m:?}: {reason}"),
        });
    }
}

#[test]
fn depth_three_indeterminate_points() {
    let cfg = EvalConfig::default();
    for m in [[1i64, 0, 1], [2, -1, 1], [0, 0, 1]] {
        let eps = ApproachSpec::real(&[1e-4, 2e-4, 3e-4]);
        assert!(matches!(zeta3_near(&m, &eps, &cfg).unwrap(), NearPoint::Indeterminate { .. }), "{m:?}");
    }
    // the surviving term is ε2/ε3-sized, so the function itself has direction-dependent values
    let m = [1i64, 0, 1];
    let at = |d: &[f64]| ez_eval_mb(&ApproachSpec::real(d).point(&m), &cfg).unwrap();
    let (a, b) = (at(&[1e-6, 1e-6, 1e-6]), at(&[1e-6, 3e-6, 1e-6]));
    assert!((a - b).abs() > 1e-3, "{a} vs {b}");
}

#[test]
fn guards() {
    let cfg = EvalConfig::default();
    let ok = ApproachSpec::real(&[1e-3, 2e-3]);
    assert!(matches!(zeta2_near(&[1, 1], &ok, &cfg), Err(Error::InvalidArgument(_))));
    assert!(matches!(zeta2_corollary(&[1, 0], &ok, &cfg), Err(Error::InvalidArgument(_))));
    assert!(matches!(zeta2_near(&[0, 0], &ApproachSpec::real(&[1e-3]), &cfg), Err(Error::InvalidArgument(_))));
    let cancel = ApproachSpec::real(&[1e-3, -1e-3]);
    assert!(matches!(zeta2_corollary(&[0, 0], &cancel, &cfg), Err(Error::InvalidApproach { .. })));
    assert!(matches!(zeta2_near(&[2, -1], &cancel, &cfg), Err(Error::InvalidApproach { .. })));
}

#[test]
fn result_structure() {
    let cfg = EvalConfig::default();
    let v = zeta2_near(&[2, 0], &ApproachSpec::real(&[1e-3, 2e-3]), &cfg).unwrap();
    assert_eq!(v.principal.len(), 1);
    assert!(v.principal[0].pole.contains("ε1+ε2"), "{}", v.principal[0].pole);
    let sum = v.groups.iter().fold(Cdd::ZERO, |a, g| a + g.1);
    assert_eq!(sum, v.finite_part);
    let json = v.to_json(20);
    for key in ["principal", "groups", "finite_part", "total", "error_order"] {
        assert!(json.get(key).is_some(), "{key}");
    }
    assert_eq!(json["error_order"][0], "O(|ε2|)");
}
