//! Riemann zeta-function, its derivatives, Stieltjes constants and one-variable
//! Laurent/Taylor expansions.
//!
//! Evaluation is Euler–Maclaurin summation with an adaptive cut-off, plus the
//! functional equation for Re s < −1/2. The code is generic over [`Num`], so the
//! same routine yields values (on `Cdd`) and Taylor coefficients (on `Jet`).
//!
//! Stieltjes constants are normalized so that γ_n is the coefficient of
//! (s−1)^n in ζ(s) − 1/(s−1). The classical constant is (−1)^n n! γ_n.

use crate::bernoulli::bernoulli_over_factorial_table;
use crate::dd::{Cdd, Dd};
use crate::error::{Error, Result};
use crate::gamma::gamma;
use crate::jet::{shape, Jet, Num};
use crate::precision::PrecisionContext;
use once_cell::sync::Lazy;
use std::sync::RwLock;

static LOG_TABLE: Lazy<RwLock<Vec<Dd>>> = Lazy::new(|| RwLock::new(vec![Dd::ZERO, Dd::ZERO]));

/// log n, memoized.
pub fn ln_int(n: usize) -> Dd {
    {
        let t = LOG_TABLE.read().unwrap();
        if n < t.len() {
            return t[n];
        }
    }
    if n > 1 << 16 {
        return Dd::from_f64(n as f64).ln();
    }
    let mut t = LOG_TABLE.write().unwrap();
    while t.len() <= n {
        let k = t.len();
        t.push(Dd::from_f64(k as f64).ln());
    }
    t[n]
}

/// `n^{-s}` for a positive integer n.
#[inline]
pub(crate) fn int_pow_neg<T: Num>(n: usize, s: &T) -> T {
    if n == 1 {
        return s.lift(Cdd::ONE);
    }
    s.scale(Cdd::real(-ln_int(n))).exp()
}

/// Euler–Maclaurin with cut-off `n`; returns the value and an estimate of the
/// truncation error, or `None` if the Bernoulli terms stop decreasing first.
fn zeta_em<T: Num>(s: &T, n: usize, eps: f64) -> Option<(T, f64)> {
    let mut sum = s.lift(Cdd::ONE);
    for k in 2..n {
        sum = sum + int_pow_neg(k, s);
    }
    let nd = Cdd::from_i64(n as i64);
    let npow = int_pow_neg(n, s); // N^{-s}
    let sm1 = s.add_const(-Cdd::ONE);
    sum = sum + npow.scale(nd).div(&sm1);
    sum = sum + npow.scale(Cdd::from_f64(0.5, 0.0));
    let inv_n = Cdd::real(Dd::from_f64(n as f64).recip());
    let inv_n2 = inv_n * inv_n;
    let bf = bernoulli_over_factorial_table(200);
    let mut poch = s.clone(); // (s)_{2k-1}
    let mut nfac = npow.scale(inv_n); // N^{1-s-2k}
    let mut prev = f64::INFINITY;
    for k in 1..95usize {
        let t = poch.mul_ref(&nfac).scale(Cdd::real(bf[2 * k]));
        let m = t.mag();
        sum = sum + t;
        let scale = sum.mag().max(1e-300);
        if m <= eps * scale {
            return Some((sum, m));
        }
        if m > prev && k > 3 {
            return None;
        }
        prev = m;
        let a = s.add_const(Cdd::from_i64(2 * k as i64 - 1));
        let b = s.add_const(Cdd::from_i64(2 * k as i64));
        poch = poch.mul_ref(&a).mul_ref(&b);
        nfac = nfac.scale(inv_n2);
    }
    None
}

fn initial_cutoff(c: Cdd) -> usize {
    20 + (c.abs() * 0.5).ceil() as usize
}

/// ζ at a scalar or jet argument, with an error estimate.
pub(crate) fn zeta_num<T: Num>(s: &T, ctx: &PrecisionContext) -> Result<(T, f64)> {
    let c = s.cst();
    if c.is_integer_value(1) {
        return Err(Error::PoleAt1);
    }
    if c.re.to_f64() < -0.5 {
        if s.is_pure_constant() {
            if let Some(n) = c.as_integer() {
                if n < 0 && n % 2 == 0 {
                    return Ok((s.lift(Cdd::ZERO), 0.0));
                }
            }
        }
        // ζ(s) = 2^s π^{s−1} sin(πs/2) Γ(1−s) ζ(1−s)
        let one_minus = (-s.clone()).add_const(Cdd::ONE);
        let (z, e) = zeta_num(&one_minus, ctx)?;
        let two_s = s.pow_base(Dd::LN2);
        let pi_s = s.add_const(-Cdd::ONE).pow_base(Dd::PI.ln());
        let sine = s.scale(Cdd::real(Dd::HALF_PI)).sin();
        let factor = two_s.mul_ref(&pi_s).mul_ref(&sine).mul_ref(&gamma(&one_minus));
        let err = e * factor.mag() + 1e-32 * factor.mag() * z.mag();
        return Ok((factor.mul_ref(&z), err));
    }
    let eps = ctx.eps();
    let mut n = initial_cutoff(c);
    for _ in 0..5 {
        if let Some((v, e)) = zeta_em(s, n, eps) {
            return Ok((v, e));
        }
        n *= 2;
    }
    Err(Error::precision("zeta (Euler–Maclaurin)", f64::INFINITY, ctx.tol))
}

fn check_err(what: &str, value_mag: f64, err: f64, ctx: &PrecisionContext) -> Result<()> {
    if err > ctx.tol * value_mag.max(1.0) {
        Err(Error::precision(what, err, ctx.tol))
    } else {
        Ok(())
    }
}

/// ζ(s) for complex s ≠ 1.
pub fn zeta(s: Cdd, ctx: &PrecisionContext) -> Result<Cdd> {
    let (v, e) = zeta_num(&s, ctx)?;
    check_err("zeta", v.abs(), e, ctx)?;
    Ok(v)
}

/// ζ at a jet argument (Taylor expansion of ζ composed with the jet).
pub fn zeta_jet(s: &Jet, ctx: &PrecisionContext) -> Result<Jet> {
    let (v, e) = zeta_num(s, ctx)?;
    check_err("zeta jet", v.max_abs(), e, ctx)?;
    Ok(v)
}

/// n-th derivative ζ^{(n)}(s).
pub fn zeta_deriv(n: usize, s: Cdd, ctx: &PrecisionContext) -> Result<Cdd> {
    if n == 0 {
        return zeta(s, ctx);
    }
    let t = zeta_taylor(s, n, ctx)?;
    let mut f = Dd::ONE;
    for k in 2..=n {
        f *= Dd::from_f64(k as f64);
    }
    Ok(t[n].scale(f))
}

/// Taylor coefficients ζ^{(k)}(s)/k! for k = 0..=order.
pub fn zeta_taylor(s: Cdd, order: usize, ctx: &PrecisionContext) -> Result<Vec<Cdd>> {
    let sh = shape(1, order);
    let j = zeta_jet(&Jet::variable(&sh, 0, s), ctx)?;
    Ok((0..=order).map(|k| j.coeff(&[k as u8])).collect())
}

/// Taylor coefficients of ζ(1+δ) − 1/δ at δ = 0, with cut-off `n`.
fn regular_part_at_one(order: usize, n: usize) -> (Vec<Cdd>, f64) {
    let sh = shape(1, order);
    let s = Jet::variable(&sh, 0, Cdd::ONE);
    let mut sum = Jet::constant(&sh, Cdd::ONE);
    for k in 2..n {
        sum = sum + int_pow_neg(k, &s);
    }
    // (N^{-δ} − 1)/δ = Σ_j (−log N)^{j+1} δ^j/(j+1)!
    let ln_n = ln_int(n);
    let mut c = vec![Cdd::ZERO; order + 1];
    let mut p = -ln_n;
    let mut fact = Dd::ONE;
    for (j, cj) in c.iter_mut().enumerate() {
        *cj = Cdd::real(p / fact);
        p *= -ln_n;
        fact *= Dd::from_f64((j + 2) as f64);
    }
    sum = sum + Jet::from_coeffs(&sh, c);
    let npow = int_pow_neg(n, &s);
    sum = sum + npow.scale(Cdd::from_f64(0.5, 0.0));
    let inv_n = Cdd::real(Dd::from_f64(n as f64).recip());
    let bf = bernoulli_over_factorial_table(200);
    let mut poch = s.clone();
    let mut nfac = npow.scale(inv_n);
    let mut last = f64::INFINITY;
    for k in 1..95usize {
        let t = poch.mul_ref(&nfac).scale(Cdd::real(bf[2 * k]));
        last = t.max_abs();
        sum = sum + t;
        if last < 1e-36 {
            break;
        }
        poch = poch
            .mul_ref(&s.add_const(Cdd::from_i64(2 * k as i64 - 1)))
            .mul_ref(&s.add_const(Cdd::from_i64(2 * k as i64)));
        nfac = nfac.scale(inv_n * inv_n);
    }
    ((0..=order).map(|k| sum.coeff(&[k as u8])).collect(), last)
}

/// Stieltjes constants γ_0..=γ_order with an error estimate
/// from two independent cut-offs.
pub fn stieltjes_table(order: usize, ctx: &PrecisionContext) -> Result<Vec<Dd>> {
    let n1 = 24 + 2 * order;
    let (a, _) = regular_part_at_one(order, n1);
    let (b, _) = regular_part_at_one(order, n1 + 16);
    let err = a.iter().zip(&b).map(|(x, y)| (*x - *y).abs()).fold(0.0, f64::max);
    let scale = b.iter().map(|v| v.abs()).fold(0.0, f64::max);
    if err > ctx.tol * scale.max(1.0) {
        return Err(Error::precision("Stieltjes constants", err, ctx.tol));
    }
    Ok(b.into_iter().map(|v| v.re).collect())
}

/// γ_n, the coefficient of (s−1)^n in ζ(s) − 1/(s−1).
pub fn stieltjes(n: usize, ctx: &PrecisionContext) -> Result<Dd> {
    Ok(stieltjes_table(n, ctx)?[n])
}

/// Convert γ_n to the classical (−1)^n n! γ_n.
pub fn to_classical_stieltjes(n: usize, gamma_n: Dd) -> Dd {
    let mut f = Dd::ONE;
    for k in 2..=n {
        f *= Dd::from_f64(k as f64);
    }
    if n % 2 == 1 {
        -(gamma_n * f)
    } else {
        gamma_n * f
    }
}

/// Laurent/Taylor expansion of ζ at an integer point.
#[derive(Clone, Debug, PartialEq)]
pub struct ZetaLaurent1D {
    pub center: i64,
    pub has_pole: bool,
    /// c_0..c_N: Taylor coefficients of the regular part.
    pub coefficients: Vec<Cdd>,
}

impl ZetaLaurent1D {
    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Value of the truncated expansion at s.
    pub fn evaluate(&self, s: Cdd) -> Cdd {
        let d = s - Cdd::from_i64(self.center);
        let mut acc = Cdd::ZERO;
        for c in self.coefficients.iter().rev() {
            acc = acc * d + *c;
        }
        if self.has_pole {
            acc += d.recip();
        }
        acc
    }
}

pub fn laurent_at(m: i64, order: usize, ctx: &PrecisionContext) -> Result<ZetaLaurent1D> {
    if m == 1 {
        let g = stieltjes_table(order, ctx)?;
        return Ok(ZetaLaurent1D { center: 1, has_pole: true, coefficients: g.into_iter().map(Cdd::real).collect() });
    }
    let c = zeta_taylor(Cdd::from_i64(m), order, ctx)?;
    Ok(ZetaLaurent1D { center: m, has_pole: false, coefficients: c })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    fn d(s: &str) -> Dd {
        Dd::parse(s).unwrap()
    }

    #[test]
    fn special_values() {
        let c = ctx();
        let z2 = zeta(Cdd::from_f64(2.0, 0.0), &c).unwrap();
        let pi2_6 = Dd::PI * Dd::PI / Dd::from_f64(6.0);
        assert!((z2.re - pi2_6).abs().hi < 1e-30);
        assert!((zeta(Cdd::ZERO, &c).unwrap() - Cdd::from_f64(-0.5, 0.0)).abs() < 1e-30);
        let m1 = zeta(Cdd::from_f64(-1.0, 0.0), &c).unwrap();
        assert!((m1.re + Dd::ONE / Dd::from_f64(12.0)).abs().hi < 1e-30);
        assert_eq!(zeta(Cdd::ONE, &c), Err(Error::PoleAt1));
    }

    #[test]
    fn trivial_zeros_through_jets() {
        // the scalar path returns exact zeros; jets exercise the general formula
        let sh = shape(1, 2);
        for k in 1..=5 {
            let s = Jet::variable(&sh, 0, Cdd::from_i64(-2 * k));
            let z = zeta_jet(&s, &ctx()).unwrap();
            assert!(z.constant_term().abs() < 1e-25, "k={k}");
        }
    }

    #[test]
    fn derivative_values() {
        let c = ctx();
        let v = zeta_deriv(1, Cdd::ZERO, &c).unwrap();
        assert!((v.re + Dd::HALF_LN_2PI).abs().hi < 1e-29);
        // ζ'(2) to 30 digits, independent reference
        let z = zeta_deriv(1, Cdd::from_f64(2.0, 0.0), &c).unwrap();
        assert!((z.re - d("-0.9375482543158437537025740945678")).abs().hi < 1e-29);
    }

    #[test]
    fn stieltjes_values() {
        let c = ctx();
        let g = stieltjes_table(2, &c).unwrap();
        assert!((g[0] - Dd::EULER).abs().hi < 1e-30);
        assert!((g[1] - d("0.07281584548367672486058637587490131913773633833")).abs().hi < 1e-29);
        // classical γ_2 = −0.00969036319287231848453038603521252...
        let classical = to_classical_stieltjes(2, g[2]);
        assert!((classical - d("-0.009690363192872318484530386035217")).abs().hi < 1e-29);
    }

    #[test]
    fn laurent_at_zero() {
        let l = laurent_at(0, 1, &ctx()).unwrap();
        assert!(!l.has_pole);
        assert!((l.coefficients[1].re + Dd::HALF_LN_2PI).abs().hi < 1e-29);
    }
}
