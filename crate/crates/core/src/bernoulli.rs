//! Bernoulli numbers, computed exactly and rounded once.

use crate::dd::Dd;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use std::sync::{Arc, RwLock};

struct Tables {
    b: Arc<Vec<Dd>>,
    b_over_fact: Arc<Vec<Dd>>,
}

static CACHE: Lazy<RwLock<Tables>> =
    Lazy::new(|| RwLock::new(Tables { b: Arc::new(Vec::new()), b_over_fact: Arc::new(Vec::new()) }));

fn bigint_to_dd(n: &BigInt) -> Dd {
    let hi = n.to_f64().unwrap_or(f64::INFINITY);
    if !hi.is_finite() {
        return Dd::from_f64(hi);
    }
    let back = BigInt::from(hi as i128);
    let exact_hi = if hi.abs() < 1e38 { back } else { num_traits::FromPrimitive::from_f64(hi).unwrap() };
    let lo = (n - exact_hi).to_f64().unwrap_or(0.0);
    Dd::new(hi, lo)
}

pub(crate) fn rational_to_dd(q: &BigRational) -> Dd {
    // scale so both parts fit comfortably before dividing
    let num = q.numer();
    let den = q.denom();
    let nb = num.bits() as i64;
    let db = den.bits() as i64;
    let shift_n = (nb - 200).max(0);
    let shift_d = (db - 200).max(0);
    let n = bigint_to_dd(&(num >> shift_n as usize));
    let d = bigint_to_dd(&(den >> shift_d as usize));
    let mut v = n / d;
    let e = shift_n - shift_d;
    // apply the binary exponent in safe steps
    let mut e = e;
    while e != 0 {
        let step = e.clamp(-900, 900);
        v = v.ldexp(step as i32);
        e -= step;
    }
    v
}

/// Exact B_0..=B_n (with B_1 = -1/2) via the Akiyama–Tanigawa transform.
fn exact(n: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(n + 1);
    let mut a: Vec<BigRational> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        a.push(BigRational::new(BigInt::one(), BigInt::from(m + 1)));
        for j in (1..=m).rev() {
            let diff = &a[j - 1] - &a[j];
            a[j - 1] = diff * BigRational::from_integer(BigInt::from(j));
        }
        out.push(a[0].clone());
    }
    // the transform yields B_1 = +1/2
    if n >= 1 {
        out[1] = -out[1].clone();
    }
    out
}

fn ensure(n: usize) -> (Arc<Vec<Dd>>, Arc<Vec<Dd>>) {
    {
        let t = CACHE.read().unwrap();
        if t.b.len() > n {
            return (t.b.clone(), t.b_over_fact.clone());
        }
    }
    let mut t = CACHE.write().unwrap();
    if t.b.len() <= n {
        let target = (n + 1).max(2 * t.b.len()).max(64);
        let ex = exact(target);
        let mut fact = BigInt::one();
        let mut b = Vec::with_capacity(ex.len());
        let mut bf = Vec::with_capacity(ex.len());
        for (k, q) in ex.iter().enumerate() {
            if k > 0 {
                fact *= BigInt::from(k);
            }
            b.push(if q.is_zero() { Dd::ZERO } else { rational_to_dd(q) });
            let over = q / BigRational::from_integer(fact.clone());
            bf.push(if over.is_zero() { Dd::ZERO } else { rational_to_dd(&over) });
            debug_assert!(k < 2 || k % 2 == 0 || q.abs().is_zero());
        }
        t.b = Arc::new(b);
        t.b_over_fact = Arc::new(bf);
    }
    (t.b.clone(), t.b_over_fact.clone())
}

/// B_n with the convention B_1 = -1/2.
pub fn bernoulli(n: usize) -> Dd {
    ensure(n).0[n]
}

/// B_n / n!.
pub fn bernoulli_over_factorial(n: usize) -> Dd {
    ensure(n).1[n]
}

/// Table of B_k / k! for k = 0..=n.
pub fn bernoulli_over_factorial_table(n: usize) -> Arc<Vec<Dd>> {
    ensure(n).1
}
