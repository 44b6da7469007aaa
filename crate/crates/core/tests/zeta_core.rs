//! Riemann ζ, Γ and Stieltjes constants against independent references.

use ezeta::contour::taylor_coefficient;
use ezeta::gamma::gamma;
use ezeta::zeta::{laurent_at, stieltjes, stieltjes_table, to_classical_stieltjes, zeta, zeta_deriv};
use ezeta::{Cdd, Dd, Error, PrecisionContext};
use proptest::prelude::*;

fn ctx() -> PrecisionContext {
    PrecisionContext::default()
}

fn d(s: &str) -> Dd {
    Dd::parse(s).unwrap()
}

/// ζ(s) = η(s)/(1 − 2^{1−s}) with η from Borwein's accelerated alternating series.
fn zeta_borwein(s: Cdd) -> Cdd {
    const N: usize = 70;
    // d_k = n Σ_{i≤k} (n+i−1)! 4^i / ((n−i)! (2i)!)
    let mut term = Dd::ONE / Dd::from_f64(N as f64); // i = 0 term of the sum, times 1/n
    let mut dk = vec![Dd::ZERO; N + 1];
    let mut acc = Dd::ZERO;
    for i in 0..=N {
        if i > 0 {
            let (n, i) = (N as f64, i as f64);
            term = term * Dd::from_f64((n + i - 1.0) * (n - i + 1.0) * 4.0) / Dd::from_f64((2.0 * i - 1.0) * (2.0 * i));
        }
        acc += term;
        dk[i] = acc * Dd::from_f64(N as f64);
    }
    let dn = dk[N];
    let mut eta = Cdd::ZERO;
    for k in 0..N {
        let w = (dk[k] - dn) / dn;
        let ln = Dd::from_f64((k + 1) as f64).ln();
        let p = (-s * Cdd::real(ln)).exp();
        let t = p * Cdd::real(w);
        eta = if k % 2 == 0 { eta - t } else { eta + t };
    }
    let two = (Cdd::real(Dd::LN2) * (Cdd::ONE - s)).exp();
    eta / (Cdd::ONE - two)
}

#[test]
fn special_values() {
    let c = ctx();
    let close = |s: f64, want: Dd| {
        let v = zeta(Cdd::from_f64(s, 0.0), &c).unwrap();
        assert!((v - Cdd::real(want)).abs() < 1e-28, "ζ({s}) = {v}");
    };
    close(0.0, d("-0.5"));
    close(-1.0, Dd::ONE / Dd::from_f64(-12.0));
    close(-3.0, Dd::ONE / Dd::from_f64(120.0));
    close(-2.0, Dd::ZERO);
    close(2.0, Dd::PI.sqr() / Dd::from_f64(6.0));
    close(4.0, Dd::PI.sqr().sqr() / Dd::from_f64(90.0));
}

#[test]
fn pole_is_an_error() {
    assert_eq!(zeta(Cdd::ONE, &ctx()), Err(Error::PoleAt1));
}

#[test]
fn matches_alternating_series() {
    let c = ctx();
    for (re, im) in [(0.5, 14.134725), (0.3, -2.0), (2.5, 1.0), (1.0, 3.0), (3.7, -4.5), (0.05, 0.5)] {
        let s = Cdd::from_f64(re, im);
        let a = zeta(s, &c).unwrap();
        let b = zeta_borwein(s);
        assert!((a - b).abs() < 1e-27 * b.abs().max(1.0), "s = {s}: {a} vs {b}");
    }
}

#[test]
fn stieltjes_against_contour_and_literature() {
    let c = ctx();
    let g = stieltjes_table(6, &c).unwrap();
    for n in 0..=6 {
        let oracle = taylor_coefficient(|s| Ok(zeta(s, &c)? - (s - Cdd::ONE).recip()), Cdd::ONE, n, 0.5, 96).unwrap();
        assert!((oracle - Cdd::real(g[n])).abs() < 1e-20, "γ_{n}: {} vs {}", g[n].to_decimal(25), oracle);
    }
    // classical γ_1, γ_2 in the literature normalization
    let lit1 = d("-0.0728158454836767248605863758749547");
    let lit2 = d("-0.009690363192872318484");
    assert!((to_classical_stieltjes(1, g[1]) - lit1).abs().to_f64() < 1e-30);
    assert!((to_classical_stieltjes(2, g[2]) - lit2).abs().to_f64() < 1e-21);
    assert!((stieltjes(0, &c).unwrap() - Dd::EULER).abs().to_f64() < 1e-31);
    assert!((stieltjes(1, &c).unwrap() - d("0.0728158454836767248605863758749547")).abs().to_f64() < 1e-30);
}

#[test]
fn laurent_at_integers_reproduces_values() {
    let c = ctx();
    for m in [-3i64, 0, 1, 2] {
        let l = laurent_at(m, 20, &c).unwrap();
        let s = Cdd::from_f64(m as f64 + 0.05, -0.03);
        let v = zeta(s, &c).unwrap();
        assert!((l.evaluate(s) - v).abs() < 1e-25, "m = {m}: {:e}", (l.evaluate(s) - v).abs());
    }
}

#[test]
fn derivatives_match_cauchy_integrals() {
    let c = ctx();
    let s0 = Cdd::from_f64(-0.7, 2.1);
    let mut fact = 1.0;
    for n in 1..=4 {
        fact *= n as f64;
        let a = zeta_deriv(n, s0, &c).unwrap();
        let b = taylor_coefficient(|s| zeta(s, &c), s0, n, 0.5, 64).unwrap().mul_f64(fact);
        assert!((a - b).abs() < 1e-22 * b.abs().max(1.0), "n = {n}: {a} vs {b}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn functional_equation(re in -3.0f64..4.0, im in -12.0f64..12.0) {
        prop_assume!((re - 1.0).abs() > 0.1 || im.abs() > 0.1);
        prop_assume!(re.abs() > 0.1 || im.abs() > 0.1);
        let c = ctx();
        let s = Cdd::from_f64(re, im);
        let pi = Cdd::real(Dd::PI);
        // ζ(s) = 2^s π^{s−1} sin(πs/2) Γ(1−s) ζ(1−s)
        let f = (s * Cdd::real(Dd::LN2)).exp()
            * ((s - Cdd::ONE) * pi.ln()).exp()
            * (pi * s).mul_f64(0.5).sin()
            * gamma(&(Cdd::ONE - s))
            * zeta(Cdd::ONE - s, &c).unwrap();
        let v = zeta(s, &c).unwrap();
        prop_assert!((v - f).abs() < 1e-24 * v.abs().max(1.0), "s = {}: {} vs {}", s, v, f);
    }

    #[test]
    fn gamma_reflection(re in -4.0f64..4.0, im in -8.0f64..8.0) {
        prop_assume!(im.abs() > 0.05 || (re - re.round()).abs() > 0.05);
        let z = Cdd::from_f64(re, im);
        let pi = Cdd::real(Dd::PI);
        let lhs = gamma(&z) * gamma(&(Cdd::ONE - z)) * (pi * z).sin();
        prop_assert!((lhs - pi).abs() < 1e-26 * lhs.abs().max(1.0) + 1e-27, "z = {}: {}", z, lhs);
    }
}

#[test]
fn gamma_at_integers() {
    let mut f = 1.0;
    for n in 1..20 {
        if n > 1 {
            f *= (n - 1) as f64;
        }
        let g = gamma(&Cdd::from_f64(n as f64, 0.0));
        assert!((g.re.to_f64() / f - 1.0).abs() < 1e-15 && g.im.to_f64() == 0.0, "Γ({n})");
    }
}

#[test]
fn log_gamma_jet_matches_hurwitz_values() {
    // log Γ(z0+δ): coefficient n ≥ 2 is (−1)^n ζ(n, z0)/n
    let c = ctx();
    let sh = ezeta::jet::shape(1, 14);
    for z0 in [4usize, 34] {
        let lg = gamma(&ezeta::Jet::variable(&sh, 0, Cdd::from_f64(z0 as f64, 0.0))).ln();
        for n in 2..=14usize {
            let mut h = zeta(Cdd::from_f64(n as f64, 0.0), &c).unwrap();
            for k in 1..z0 {
                h -= Cdd::real(Dd::from_f64(k as f64).powi(-(n as i32)));
            }
            let want = h.mul_f64(if n % 2 == 0 { 1.0 } else { -1.0 }) / Cdd::from_i64(n as i64);
            let got = lg.coeff(&[n as u8]);
            // Γ is built at argument ≥ 30 and the log cancels about ψ(30)^n of the precision
            let tol = 1e-30 * 3.5f64.powi(n as i32);
            assert!((got - want).abs() < tol, "z0 = {z0}, n = {n}: {got} vs {want}");
        }
    }
}

#[test]
fn trivial_zeros() {
    let c = ctx();
    for k in 1..=5 {
        let v = zeta(Cdd::from_f64(-2.0 * k as f64, 0.0), &c).unwrap();
        assert!(v.abs() < c.tol, "ζ(−{}) = {v}", 2 * k);
    }
}

#[test]
fn stieltjes_independent_of_contour_radius() {
    let c = ctx();
    let g = stieltjes_table(4, &c).unwrap();
    for n in 0..=4 {
        let f = |s: Cdd| Ok(zeta(s, &c)? - (s - Cdd::ONE).recip());
        let a = taylor_coefficient(f, Cdd::ONE, n, 0.25, 64).unwrap();
        let b = taylor_coefficient(f, Cdd::ONE, n, 0.6, 128).unwrap();
        assert!((a - b).abs() < 10.0 * c.tol && (a - Cdd::real(g[n])).abs() < 10.0 * c.tol, "γ_{n}: {a} / {b}");
    }
}
