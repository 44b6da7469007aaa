//! Complex Gamma function.
//!
//! Stirling's series at `|w| ≥ 30` after shifting with the recurrence
//! Γ(z) = Γ(z+K)/(z(z+1)⋯(z+K−1)); reflection far in the left half-plane.
//! Everything is generic over [`Num`], so Taylor coefficients come for free.

use crate::bernoulli::bernoulli;
use crate::dd::{Cdd, Dd};
use crate::jet::Num;

const SHIFT_TARGET: f64 = 30.0;
const REFLECT_BELOW: f64 = -20.0;

/// log Γ(w) by Stirling's series; `w` must have real part of at least ~30.
fn ln_gamma_stirling<T: Num>(w: &T) -> T {
    let lnw = w.ln();
    let mut acc = w.add_const(Cdd::from_f64(-0.5, 0.0)).mul_ref(&lnw) - w.clone();
    acc = acc.add_const(Cdd::real(Dd::HALF_LN_2PI));
    let inv = w.recip();
    let inv2 = inv.mul_ref(&inv);
    let mut pw = inv; // w^{1-2k}
    let wabs = w.cst().abs();
    for k in 1..40usize {
        let n = 2 * k;
        let coef = bernoulli(n) / Dd::from_f64((n * (n - 1)) as f64);
        let term = pw.scale(Cdd::real(coef));
        let mag = coef.to_f64().abs() * wabs.powi(1 - n as i32);
        acc = acc + term;
        if mag < 1e-34 * (1.0 + acc.cst().abs()) {
            break;
        }
        pw = pw.mul_ref(&inv2);
    }
    acc
}

fn shift_count(z: Cdd) -> usize {
    let re = z.re.to_f64();
    let im = z.im.to_f64();
    if re * re + im * im >= SHIFT_TARGET * SHIFT_TARGET && re > 0.0 {
        0
    } else {
        (SHIFT_TARGET - re).max(0.0).ceil() as usize
    }
}

/// z(z+1)⋯(z+K−1)
fn rising<T: Num>(z: &T, k: usize) -> T {
    let mut p = z.lift(Cdd::ONE);
    for i in 0..k {
        p = p.mul_ref(&z.add_const(Cdd::from_i64(i as i64)));
    }
    p
}

/// Γ(z). At poles of the scalar version the result is infinite.
pub fn gamma<T: Num>(z: &T) -> T {
    let c = z.cst();
    if c.re.to_f64() < REFLECT_BELOW {
        // Γ(z) = π / (sin(πz) Γ(1−z))
        let pz = z.scale(Cdd::real(Dd::PI));
        let one_minus = (-z.clone()).add_const(Cdd::ONE);
        let den = pz.sin().mul_ref(&gamma(&one_minus));
        return den.recip().scale(Cdd::real(Dd::PI));
    }
    let k = shift_count(c);
    let lg = ln_gamma_stirling(&z.add_const(Cdd::from_i64(k as i64)));
    if k == 0 {
        lg.exp()
    } else {
        lg.exp().div(&rising(z, k))
    }
}

/// 1/Γ(z), entire: exact zeros at non-positive integers.
pub fn rgamma<T: Num>(z: &T) -> T {
    let c = z.cst();
    if c.re.to_f64() < REFLECT_BELOW {
        // 1/Γ(z) = sin(πz) Γ(1−z) / π
        let pz = z.scale(Cdd::real(Dd::PI));
        let one_minus = (-z.clone()).add_const(Cdd::ONE);
        if let Some(n) = c.as_integer() {
            if n <= 0 && z.is_pure_constant() {
                return z.lift(Cdd::ZERO);
            }
        }
        return pz.sin().mul_ref(&gamma(&one_minus)).scale(Cdd::real(Dd::PI.recip()));
    }
    let k = shift_count(c);
    let lg = ln_gamma_stirling(&z.add_const(Cdd::from_i64(k as i64)));
    let inv = (-lg).exp();
    if k == 0 {
        inv
    } else {
        rising(z, k).mul_ref(&inv)
    }
}

/// Γ for a complex scalar, with a `None` at the poles.
pub fn gamma_checked(z: Cdd) -> Option<Cdd> {
    if let Some(n) = z.as_integer() {
        if n <= 0 {
            return None;
        }
    }
    Some(gamma(&z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::{shape, Jet};

    fn rel(a: Cdd, b: Cdd) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn integer_and_half_integer() {
        assert!(rel(gamma(&Cdd::from_f64(5.0, 0.0)), Cdd::from_f64(24.0, 0.0)) < 1e-29);
        let sqrt_pi = Dd::PI.sqrt();
        assert!(rel(gamma(&Cdd::from_f64(0.5, 0.0)), Cdd::real(sqrt_pi)) < 1e-29);
        assert!(rgamma(&Cdd::from_f64(-3.0, 0.0)).abs() < 1e-30);
        assert!(rgamma(&Cdd::from_f64(-30.0, 0.0)).abs() < 1e-30);
        assert!(gamma_checked(Cdd::from_f64(0.0, 0.0)).is_none());
    }

    #[test]
    fn complex_reference_values() {
        // reference digits from an independent 40-digit evaluation
        let cases = [
            ((1.0, 1.0), ("0.4980156681183560427136911174621981", "-0.1549498283018106851249551304838866")),
            ((-2.5, 0.3), ("-0.6138229974377414904505845469005683", "-0.2112326149370417766139268803677174")),
            ((0.5, 30.0), ("-8.373647696713258179087720112748786e-21", "1.866537652294492119141987479336789e-21")),
            ((-35.5, 0.25), ("2.400607039363282657734193019623626e-41", "2.999740284634671787448850767436604e-41")),
        ];
        for ((x, y), (re, im)) in cases {
            let want = Cdd::new(Dd::parse(re).unwrap(), Dd::parse(im).unwrap());
            let got = gamma(&Cdd::from_f64(x, y));
            assert!(rel(got, want) < 1e-29, "Γ({x}+{y}i): {got} vs {want}");
        }
    }

    #[test]
    fn rgamma_jet_at_pole() {
        // (1/Γ)'(−n) = (−1)^n n!
        let sh = shape(1, 3);
        let z = Jet::variable(&sh, 0, Cdd::from_f64(-3.0, 0.0));
        let r = rgamma(&z);
        assert!(r.coeff(&[0]).abs() < 1e-30);
        assert!(rel(r.coeff(&[1]), Cdd::from_f64(-6.0, 0.0)) < 1e-29);
    }
}
