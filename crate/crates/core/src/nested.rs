//! Nested Euler–Maclaurin summation for ζ_k.
//!
//! The index chain is cut at `N`: with heads
//! `H_j = Σ_{n_1<…<n_j≤N} Π n_i^{-t_i}` and tails over indices beyond `N`,
//! `ζ_k(t) = Σ_j H_j(t_1..t_j) · T_{k−j}(t_{j+1}..t_k)`.
//! Each tail has the asymptotic expansion `T_i = Σ_Q c_Q^{(i)} N^{i−S_i−Q}` where `S_i`
//! is the sum of the last `i` arguments, built one level at a time from the
//! Euler–Maclaurin expansion of `Σ_{n>N} n^{-w}`.
//!
//! The formula continues ζ_k meromorphically; it is accurate where the arguments are
//! moderate in size (heads do not cancel badly), which covers every use in this crate.
//!
//! On jets, a factor `1/(w−1)` whose constant term is exactly zero is kept as a
//! symbolic linear pole, so the result at an integer point is an extended Laurent
//! expansion: a sum of Taylor numerators over products of linear forms.

use crate::bernoulli::bernoulli_over_factorial_table;
use crate::dd::{Cdd, Dd};
use crate::error::{Error, Result};
use crate::jet::{Jet, Num};
use crate::precision::PrecisionContext;
use crate::zeta::{int_pow_neg, ln_int};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Number of asymptotic terms kept per tail level.
const TAIL_TERMS: usize = 56;

fn cutoff(args: &[Cdd]) -> usize {
    let m = args.iter().map(|t| t.abs()).fold(0.0, f64::max);
    let s: f64 = args.iter().map(|t| t.abs()).sum();
    30 + (m + 0.5 * s).ceil() as usize
}

fn suffix_sums<T: Num>(t: &[T]) -> Vec<T> {
    // out[i] = sum of the last i arguments, out[0] unused
    let k = t.len();
    let mut out: Vec<T> = Vec::with_capacity(k + 1);
    out.push(t[0].lift(Cdd::ZERO));
    for i in 1..=k {
        let prev = out[i - 1].clone();
        out.push(prev + t[k - i].clone());
    }
    out
}

/// Heads `H_0..H_k` at cut-off `n`.
fn heads<T: Num>(t: &[T], n: usize) -> Vec<T> {
    let k = t.len();
    let mut h: Vec<T> = (0..=k).map(|j| t[0].lift(if j == 0 { Cdd::ONE } else { Cdd::ZERO })).collect();
    for m in 1..=n {
        for j in (1..=k.min(m)).rev() {
            let p = int_pow_neg(m, &t[j - 1]);
            let add = h[j - 1].mul_ref(&p);
            h[j] = h[j].clone() + add;
        }
    }
    h
}

fn hyperplane_name(i: usize, k: usize, q: usize) -> String {
    let j = k - i + 1;
    let l = i as i64 - q as i64;
    if j == k {
        format!("s_{k} = {l}")
    } else {
        format!("s_{j}+…+s_{k} = {l}")
    }
}

/// ζ_k(t) on complex scalars, with an error estimate.
pub fn ez_em(t: &[Cdd], ctx: &PrecisionContext) -> Result<(Cdd, f64)> {
    let k = t.len();
    if k == 0 {
        return Ok((Cdd::ONE, 0.0));
    }
    let eps = ctx.eps();
    let mut n = cutoff(t);
    for _ in 0..4 {
        let (v, e) = ez_em_at(t, n)?;
        if e <= eps * v.abs().max(1.0) {
            return Ok((v, e));
        }
        n = n * 3 / 2;
    }
    let (v, e) = ez_em_at(t, n)?;
    if e <= ctx.tol * v.abs().max(1.0) {
        Ok((v, e))
    } else {
        Err(Error::precision("nested Euler–Maclaurin", e, ctx.tol))
    }
}

fn ez_em_at(t: &[Cdd], n: usize) -> Result<(Cdd, f64)> {
    let k = t.len();
    let bf = bernoulli_over_factorial_table(TAIL_TERMS + 2);
    let s = suffix_sums(t);
    let h = heads(t, n);
    let ln_n = ln_int(n);
    let inv_n = Cdd::real(Dd::from_f64(n as f64).recip());
    let mut prev = vec![Cdd::ZERO; TAIL_TERMS + 1];
    prev[0] = Cdd::ONE;
    let mut total = h[k];
    let mut err = 0.0f64;
    for i in 1..=k {
        let mut cur = vec![Cdd::ZERO; TAIL_TERMS + 1];
        for q in 0..=TAIL_TERMS {
            let cq = prev[q];
            if cq.is_zero() {
                continue;
            }
            let w = s[i] + Cdd::from_i64(q as i64 + 1 - i as i64);
            let wm1 = w - Cdd::ONE;
            if wm1.is_zero() {
                return Err(Error::OnSingularHyperplane { hyperplane: hyperplane_name(i, k, q) });
            }
            cur[q] += cq / wm1;
            let mut poch = Cdd::ONE;
            for p in 1..=TAIL_TERMS - q {
                if p >= 2 {
                    poch *= w + Cdd::from_i64(p as i64 - 2);
                }
                let b = bf[p];
                if !b.is_zero() {
                    cur[q + p] += cq * poch.scale(b);
                }
            }
        }
        // T_i = N^{i−S_i} Σ_Q c_Q N^{−Q}
        let pref = (-(s[i] - Cdd::from_i64(i as i64)).scale(ln_n)).exp();
        let mut sum = Cdd::ZERO;
        let mut pw = Cdd::ONE;
        let mut last = [0.0f64; 2];
        for (qq, c) in cur.iter().enumerate() {
            let term = *c * pw;
            sum += term;
            if qq + 2 > TAIL_TERMS {
                last[qq + 2 - TAIL_TERMS - 1] = term.abs();
            }
            pw *= inv_n;
        }
        let ti = sum * pref;
        let contrib = h[k - i] * ti;
        total += contrib;
        err += (last[0] + last[1]) * pref.abs() * h[k - i].abs();
        prev = cur;
    }
    Ok((total, err))
}

/// Sum of Taylor numerators over products of linear forms.
///
/// A pole is a linear form `Σ a_i δ_i` in the jet variables, stored by its integer
/// coefficients; each key is a sorted list of such forms (with repetition).
#[derive(Clone, Debug)]
pub struct PoleSum {
    pub terms: BTreeMap<Vec<Vec<i64>>, Jet>,
}

impl PoleSum {
    pub fn zero() -> PoleSum {
        PoleSum { terms: BTreeMap::new() }
    }

    pub fn from_jet(j: Jet) -> PoleSum {
        let mut terms = BTreeMap::new();
        terms.insert(Vec::new(), j);
        PoleSum { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|j| j.max_abs() == 0.0)
    }

    pub fn axpy(&mut self, k: Cdd, o: &PoleSum) {
        for (key, j) in &o.terms {
            match self.terms.get_mut(key) {
                Some(t) => t.axpy(k, j),
                None => {
                    self.terms.insert(key.clone(), j.scale(k));
                }
            }
        }
    }

    pub fn add_assign(&mut self, o: &PoleSum) {
        self.axpy(Cdd::ONE, o)
    }

    pub fn mul_jet(&self, j: &Jet) -> PoleSum {
        PoleSum { terms: self.terms.iter().map(|(k, v)| (k.clone(), v.mul_ref(j))).collect() }
    }

    fn with_pole(&self, form: &[i64]) -> PoleSum {
        let mut terms = BTreeMap::new();
        for (k, v) in &self.terms {
            let mut key = k.clone();
            key.push(form.to_vec());
            key.sort();
            terms.insert(key, v.clone());
        }
        PoleSum { terms }
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|j| j.max_abs()).fold(0.0, f64::max)
    }

    /// Value at the displacement `d` (off the pole set).
    pub fn eval_at(&self, d: &[Cdd]) -> Cdd {
        let mut acc = Cdd::ZERO;
        for (key, j) in &self.terms {
            let mut v = j.eval_at(d);
            for form in key {
                let mut l = Cdd::ZERO;
                for (a, x) in form.iter().zip(d) {
                    l += x.mul_f64(*a as f64);
                }
                v /= l;
            }
            acc += v;
        }
        acc
    }
}

/// Integer coefficients of an affine jet with zero constant term.
pub(crate) fn integer_linear_form(l: &Jet) -> Result<Vec<i64>> {
    let bad = || Error::InvalidArgument("pole factor is not an integral linear form".into());
    for (m, c) in l.iter() {
        let deg: usize = m.iter().map(|&e| e as usize).sum();
        if deg >= 2 && !c.is_zero() {
            return Err(bad());
        }
    }
    l.linear_part()
        .iter()
        .map(|c| {
            let r = c.re.round();
            if c.im.is_zero() && (c.re - r).is_zero() {
                Ok(r.to_f64() as i64)
            } else {
                Err(bad())
            }
        })
        .collect()
}

/// ζ_k at jet arguments. Exactly singular `1/(w−1)` factors become symbolic poles.
pub fn ez_em_jet(t: &[Jet], ctx: &PrecisionContext) -> Result<PoleSum> {
    let centers: Vec<Cdd> = t.iter().map(|j| j.constant_term()).collect();
    let n0 = cutoff(&centers);
    let (a, ea) = ez_em_jet_at(t, n0)?;
    if ea <= ctx.eps() * a.max_abs().max(1.0) {
        return Ok(a);
    }
    let (b, eb) = ez_em_jet_at(t, n0 * 2)?;
    if eb <= ctx.tol * b.max_abs().max(1.0) {
        Ok(b)
    } else {
        Err(Error::precision("nested Euler–Maclaurin (jet)", eb, ctx.tol))
    }
}

pub(crate) fn ez_em_jet_at(t: &[Jet], n: usize) -> Result<(PoleSum, f64)> {
    let k = t.len();
    assert!(k > 0);
    let sh: Arc<_> = t[0].shape().clone();
    let order = sh.order;
    let bf = bernoulli_over_factorial_table(TAIL_TERMS + 2);
    let s = suffix_sums(t);
    let h = heads(t, n);
    let ln_n = ln_int(n);
    let inv_n = Cdd::real(Dd::from_f64(n as f64).recip());

    let mut prev: Vec<PoleSum> = (0..=TAIL_TERMS).map(|_| PoleSum::zero()).collect();
    prev[0] = PoleSum::from_jet(Jet::constant(&sh, Cdd::ONE));
    let mut total = PoleSum::from_jet(h[k].clone());
    let mut err = 0.0f64;
    for i in 1..=k {
        // w_q = S_i − (i−1) + q = w0 + q + Δ with Δ nilpotent
        let w0 = s[i].constant_term() + Cdd::from_i64(1 - i as i64);
        let mut delta = s[i].clone();
        delta.coeffs_mut()[0] = Cdd::ZERO;
        let mut dpow = vec![Jet::constant(&sh, Cdd::ONE)];
        for _ in 0..order {
            let next = dpow.last().unwrap().mul_ref(&delta);
            dpow.push(next);
        }
        let dz = delta.max_abs() == 0.0;
        let dmax = if dz { 0 } else { order };
        // acc[Q][d]: coefficient of Δ^d in c_Q^{(i)}, from the p ≥ 1 part
        let mut acc: Vec<Vec<PoleSum>> = (0..=TAIL_TERMS).map(|_| (0..=dmax).map(|_| PoleSum::zero()).collect()).collect();
        let mut cur: Vec<PoleSum> = (0..=TAIL_TERMS).map(|_| PoleSum::zero()).collect();
        for q in 0..=TAIL_TERMS {
            let cq = &prev[q];
            if cq.terms.is_empty() {
                continue;
            }
            let wq = w0 + Cdd::from_i64(q as i64);
            // p = 0
            let mut wm1 = delta.add_const(wq - Cdd::ONE);
            if (wq - Cdd::ONE).is_zero() {
                if dz {
                    return Err(Error::OnSingularHyperplane { hyperplane: hyperplane_name(i, k, q) });
                }
                wm1.coeffs_mut()[0] = Cdd::ZERO;
                let form = integer_linear_form(&wm1)?;
                cur[q].add_assign(&cq.with_pole(&form));
            } else {
                cur[q].add_assign(&cq.mul_jet(&wm1.recip()));
            }
            // p ≥ 1: (w)_{p−1} as a polynomial in Δ
            let mut poly = vec![Cdd::ZERO; dmax + 1];
            poly[0] = Cdd::ONE;
            for p in 1..=TAIL_TERMS - q {
                if p >= 2 {
                    let a = wq + Cdd::from_i64(p as i64 - 2);
                    for d in (0..=dmax).rev() {
                        let lower = if d > 0 { poly[d - 1] } else { Cdd::ZERO };
                        poly[d] = poly[d] * a + lower;
                    }
                }
                let b = bf[p];
                if b.is_zero() {
                    continue;
                }
                for d in 0..=dmax {
                    if !poly[d].is_zero() {
                        acc[q + p][d].axpy(poly[d].scale(b), cq);
                    }
                }
            }
        }
        for (qq, row) in acc.into_iter().enumerate() {
            for (d, ps) in row.into_iter().enumerate() {
                if ps.terms.is_empty() {
                    continue;
                }
                if d == 0 {
                    cur[qq].add_assign(&ps);
                } else {
                    cur[qq].add_assign(&ps.mul_jet(&dpow[d]));
                }
            }
        }
        // T_i = N^{i−S_i} Σ_Q c_Q N^{−Q}
        let pref = s[i].add_const(Cdd::from_i64(-(i as i64))).scale(Cdd::real(-ln_n)).exp();
        let mut sum = PoleSum::zero();
        let mut pw = Cdd::ONE;
        for (qq, c) in cur.iter().enumerate() {
            sum.axpy(pw, c);
            if qq + 2 > TAIL_TERMS {
                err += c.max_abs() * pw.abs() * pref.max_abs() * h[k - i].max_abs();
            }
            pw *= inv_n;
        }
        let contrib = sum.mul_jet(&pref.mul_ref(&h[k - i]));
        total.add_assign(&contrib);
        prev = cur;
    }
    Ok((total, err))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::shape;
    use crate::zeta::zeta;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    #[test]
    fn depth_one_matches_zeta() {
        for s in [(2.0, 0.0), (0.5, 3.0), (-1.5, 0.5), (3.25, -2.0)] {
            let z = Cdd::from_f64(s.0, s.1);
            let (v, _) = ez_em(&[z], &ctx()).unwrap();
            let want = zeta(z, &ctx()).unwrap();
            assert!((v - want).abs() < 1e-26, "{s:?}: {}", (v - want).abs());
        }
    }

    #[test]
    fn euler_sum_and_harmonic_product() {
        let z3 = zeta(Cdd::from_f64(3.0, 0.0), &ctx()).unwrap();
        let (v, _) = ez_em(&[Cdd::ONE, Cdd::from_f64(2.0, 0.0)], &ctx()).unwrap();
        assert!((v - z3).abs() < 1e-28);
        let a = Cdd::from_f64(1.7, 0.3);
        let b = Cdd::from_f64(2.2, -0.4);
        let ab = ez_em(&[a, b], &ctx()).unwrap().0;
        let ba = ez_em(&[b, a], &ctx()).unwrap().0;
        let lhs = zeta(a, &ctx()).unwrap() * zeta(b, &ctx()).unwrap();
        let rhs = ab + ba + zeta(a + b, &ctx()).unwrap();
        assert!((lhs - rhs).abs() < 1e-27);
    }

    #[test]
    fn singular_hyperplane_reported() {
        let r = ez_em(&[Cdd::from_f64(3.0, 0.0), Cdd::ONE], &ctx());
        assert!(matches!(r, Err(Error::OnSingularHyperplane { .. })));
    }

    #[test]
    fn jet_poles_at_one_one() {
        // ζ_2 near (1,1): poles along δ_2 and δ_1+δ_2
        let sh = shape(2, 2);
        let t = [Jet::variable(&sh, 0, Cdd::ONE), Jet::variable(&sh, 1, Cdd::ONE)];
        let ps = ez_em_jet(&t, &ctx()).unwrap();
        let d = [Cdd::from_f64(0.013, 0.002), Cdd::from_f64(-0.004, 0.011)];
        let v = ps.eval_at(&d);
        let s = [Cdd::ONE + d[0], Cdd::ONE + d[1]];
        let w = ez_em(&s, &ctx()).unwrap().0;
        // truncation at order 2 with two poles leaves O(|δ|)
        assert!((v - w).abs() < 1e-3 * w.abs(), "{v} vs {w}");
        assert!(ps.terms.contains_key(&vec![vec![0, 1], vec![1, 1]]));
    }
}
