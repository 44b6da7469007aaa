//! Mellin–Barnes continuation of ζ_r.
//!
//! `ζ_r(s) = ζ_{r−1}(…, s_{r−1}+s_r−1)/(s_r−1)
//!         + Σ_{k<M} binom(−s_r,k) ζ_{r−1}(…, s_{r−1}+s_r+k) ζ(−k)
//!         + I(s; M−η)/Γ(s_r)`,
//! with `I(s;α) = (1/2πi) ∫_{(α)} Γ(s_r+z)Γ(−z) ζ_{r−1}(…, s_{r−1}+s_r+z) ζ(−z) dz`.
//!
//! The integral is computed by the trapezoid rule on a truncated vertical line.
//! The integrand is analytic in a strip around the line, so the rule converges
//! geometrically and each step halving roughly squares the error; the reported bound
//! is built from that (a heuristic certificate, not interval arithmetic).
//! All of it runs on jets too, which gives the Taylor coefficients of the integral term.

use crate::dd::{Cdd, Dd};
use crate::error::{Error, Result};
use crate::expansion::{LaurentExpansion, LinearFactor};
use crate::gamma::{gamma, rgamma};
use crate::jet::{shape, Jet, Num};
use crate::nested::{ez_em, ez_em_jet};
use crate::precision::{EvalConfig, MbConfig, PrecisionContext};
use crate::series::format_point;
use crate::stuffle::AffineForm;
use crate::zeta::{laurent_at, zeta, zeta_jet, zeta_num};
use rayon::prelude::*;

/// `M_r(m) = max_j {r − j − (m_j + … + m_r)}`.
pub fn capital_m(m: &[i64]) -> i64 {
    let r = m.len() as i64;
    let mut best = i64::MIN;
    let mut acc = 0;
    for j in (1..=m.len()).rev() {
        acc += m[j - 1];
        best = best.max(r - j as i64 - acc);
    }
    best
}

/// The region `Re(s_j+…+s_r) > r−j−M+η` for all `j`, where `I(s; M−η)` is analytic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegionCheck {
    pub depth: usize,
    pub m: i64,
    pub eta: f64,
}

impl RegionCheck {
    pub fn violation(&self, s: &[Cdd]) -> Option<String> {
        let r = self.depth;
        let mut acc = 0.0;
        for j in (1..=r).rev() {
            acc += s[j - 1].re.to_f64();
            let bound = (r - j) as f64 - self.m as f64 + self.eta;
            if acc <= bound {
                return Some(format!("Re(s_{j}+…+s_{r}) = {acc} must exceed {bound} (M = {}, η = {})", self.m, self.eta));
            }
        }
        None
    }

    pub fn holds(&self, s: &[Cdd]) -> bool {
        self.violation(s).is_none()
    }
}

pub fn region_ok(s: &[Cdd], m: i64, eta: f64) -> bool {
    RegionCheck { depth: s.len(), m, eta }.holds(s)
}

/// The singular hyperplane through `s`, if any:
/// `s_r = 1`; `s_{r−1}+s_r ∈ {2,1,0,−2,−4,…}`; `s(j,r) = l` with `l ≤ r−j+1`, `j ≤ r−2`.
pub fn singular_hyperplane(s: &[Cdd]) -> Option<String> {
    let r = s.len();
    if r == 0 {
        return None;
    }
    if s[r - 1].is_integer_value(1) {
        return Some(format!("s_{r} = 1"));
    }
    if r >= 2 {
        let v = s[r - 1] + s[r - 2];
        if let Some(n) = v.as_integer() {
            if n == 2 || n == 1 || n == 0 || (n < 0 && n % 2 == 0) {
                return Some(format!("s_{}+s_{r} = {n}", r - 1));
            }
        }
    }
    let mut acc = s[r - 1] + if r >= 2 { s[r - 2] } else { Cdd::ZERO };
    for j in (1..=r.saturating_sub(2)).rev() {
        acc += s[j - 1];
        if let Some(n) = acc.as_integer() {
            if n <= (r - j + 1) as i64 {
                return Some(format!("s_{j}+…+s_{r} = {n}"));
            }
        }
    }
    None
}

/// Contour offset used for a point: `M_r(round(s))+1` (at least 1),
/// raised if needed so the point lies in the analyticity region.
pub fn choose_m(s: &[Cdd], eta: f64) -> i64 {
    let rounded: Vec<i64> = s.iter().map(|x| x.re.to_f64().round() as i64).collect();
    let mut m = (capital_m(&rounded) + 1).max(1);
    while !region_ok(s, m, eta) {
        m += 1;
    }
    m
}

/// Things the integrand needs that differ between values and jets.
pub(crate) trait MbNum: Num {
    fn zeta_multi(args: &[Self], ctx: &PrecisionContext) -> Result<Self>;
}

impl MbNum for Cdd {
    fn zeta_multi(args: &[Cdd], ctx: &PrecisionContext) -> Result<Cdd> {
        if args.len() == 1 {
            return Ok(zeta_num(&args[0], ctx)?.0);
        }
        Ok(ez_em(args, ctx)?.0)
    }
}

impl MbNum for Jet {
    fn zeta_multi(args: &[Jet], ctx: &PrecisionContext) -> Result<Jet> {
        if args.len() == 1 {
            return zeta_jet(&args[0], ctx);
        }
        let ps = ez_em_jet(args, ctx)?;
        let mut out = Jet::zero(args[0].shape());
        for (k, v) in ps.terms {
            if !k.is_empty() {
                return Err(Error::InvalidArgument("integrand factor met a pole".into()));
            }
            out = out + v;
        }
        Ok(out)
    }
}

/// `Γ(s_r+z)Γ(−z) ζ_{r−1}(s_1,…,s_{r−2}, s_{r−1}+s_r+z) ζ(−z)`.
fn integrand<T: MbNum>(s: &[T], z: Cdd, ctx: &PrecisionContext) -> Result<T> {
    let r = s.len();
    let sr = &s[r - 1];
    let mut args: Vec<T> = s[..r - 2].to_vec();
    args.push((s[r - 2].clone() + sr.clone()).add_const(z));
    let inner = T::zeta_multi(&args, ctx)?;
    let g1 = gamma(&sr.add_const(z));
    let tail = gamma(&-z) * zeta(-z, ctx)?;
    Ok(g1.mul_ref(&inner).scale(tail))
}

/// Half-width of a strip around `Re z = α` free of integrand singularities.
fn strip_width<T: Num>(s: &[T], alpha: f64) -> f64 {
    let r = s.len();
    let sr = s[r - 1].cst().re.to_f64();
    // Γ(−z): poles at z = 0,1,2,…; Γ(s_r+z): at z = −s_r−n; ζ(−z): at z = −1
    let mut d = (alpha - alpha.floor()).min(alpha.ceil() - alpha);
    d = d.min(sr + alpha).min(alpha + 1.0);
    // ζ_{r−1} argument must stay inside its domain
    let mut acc = 0.0;
    for j in (1..=r).rev() {
        acc += s[j - 1].cst().re.to_f64();
        if j < r {
            d = d.min(acc + alpha - (r - j) as f64);
        }
    }
    d
}

/// `(1/2π) ∫ g(α+iy) dy` by the trapezoid rule with step halving; value and error bound.
pub(crate) fn line_integral<T, G>(g: G, alpha: f64, strip: f64, cfg: &MbConfig, target: f64) -> Result<(T, f64)>
where
    T: Num,
    G: Fn(Cdd) -> Result<T> + Sync,
{
    let node = |y: f64| g(Cdd::from_f64(alpha, y));
    // a power of two keeps every node k·h exact; rounded nodes cap accuracy near 1e-18
    let mut h = 2f64.powi(cfg.step.min(strip / 2.0).log2().floor() as i32);
    // truncation: walk out until the integrand is negligible against its peak
    let peak = node(0.0)?.mag().max(1e-300);
    let mut t = cfg.imag_truncation;
    loop {
        let edge = node(t)?.mag().max(node(-t)?.mag());
        if edge < 1e-3 * target * peak.min(1.0) || t > 400.0 {
            break;
        }
        t += 5.0;
    }
    let count = |h: f64| (t / h).ceil() as i64;
    let eval_range = |h: f64, odd_only: bool| -> Result<Vec<T>> {
        let n = count(h);
        let ks: Vec<i64> = (-n..=n).filter(|k| !odd_only || k.rem_euclid(2) == 1).collect();
        ks.par_iter().map(|&k| node(k as f64 * h)).collect()
    };
    let sum = |v: &[T]| -> T {
        let mut acc = v[0].lift(Cdd::ZERO);
        for x in v {
            acc = acc + x.clone();
        }
        acc
    };
    let mut total = sum(&eval_range(h, false)?);
    let hd = |h: f64| Dd::from_f64(h) / Dd::TWO_PI;
    let mut value = total.scale(Cdd::real(hd(h)));
    let edge = node(t)?.mag().max(node(-t)?.mag());
    for _ in 0..cfg.max_halvings {
        // the new nodes are the odd multiples of h/2 (the old grid spans ±t too)
        h /= 2.0;
        let fresh = eval_range(h, true)?;
        total = total + sum(&fresh);
        let next = total.scale(Cdd::real(hd(h)));
        let diff = (next.clone() - value).mag();
        value = next;
        let scale = value.mag().max(1e-300);
        // geometric convergence: the new error is about diff²/scale
        let bound = 100.0 * diff * diff / scale + edge * t + 1e-31 * scale;
        if diff * diff / scale < target * 1e-2 {
            return Ok((value, bound.max(diff * 1e-6)));
        }
    }
    Err(Error::precision("Mellin–Barnes quadrature", value.mag(), target))
}

/// `I(s; α)` on complex values.
pub fn mb_integral(s: &[Cdd], alpha: f64, ctx: &PrecisionContext, cfg: &MbConfig) -> Result<Cdd> {
    Ok(mb_integral_with_error(s, alpha, ctx, cfg)?.0)
}

/// `I(s; α)` with its quadrature error bound.
pub fn mb_integral_with_error(s: &[Cdd], alpha: f64, ctx: &PrecisionContext, cfg: &MbConfig) -> Result<(Cdd, f64)> {
    integral_generic(s, alpha, ctx, cfg)
}

fn integral_generic<T: MbNum>(s: &[T], alpha: f64, ctx: &PrecisionContext, cfg: &MbConfig) -> Result<(T, f64)> {
    if s.len() < 2 {
        return Err(Error::InvalidArgument("the Mellin–Barnes integral needs depth ≥ 2".into()));
    }
    if alpha.fract() == 0.0 {
        return Err(Error::RegionViolation { condition: format!("α = {alpha} is a pole line of Γ(−z)") });
    }
    let cst: Vec<Cdd> = s.iter().map(|x| x.cst()).collect();
    let m = alpha.ceil() as i64;
    let eta = m as f64 - alpha;
    if let Some(c) = (RegionCheck { depth: s.len(), m, eta }).violation(&cst) {
        return Err(Error::RegionViolation { condition: c });
    }
    let strip = strip_width(s, alpha);
    let target = ctx.eps() * 1e2;
    line_integral(|z| integrand(s, z, ctx), alpha, strip, cfg, target)
}

/// `I(s; M−η)/Γ(s_r)`, the integral branch of the recursion.
pub fn integral_branch(s: &[Cdd], m: i64, cfg: &EvalConfig) -> Result<Cdd> {
    let rg = rgamma(&s[s.len() - 1]);
    if rg.is_zero() {
        return Ok(Cdd::ZERO);
    }
    Ok(rg * mb_integral(s, m as f64 - cfg.mb.eta, &cfg.precision, &cfg.mb)?)
}

/// ζ_r(s) anywhere off the singular hyperplanes.
pub fn ez_eval_mb(s: &[Cdd], cfg: &EvalConfig) -> Result<Cdd> {
    if s.is_empty() {
        return Err(Error::InvalidArgument("empty point".into()));
    }
    if let Some(h) = singular_hyperplane(s) {
        return Err(Error::OnSingularHyperplane { hyperplane: h });
    }
    if s.len() == 1 {
        return zeta(s[0], &cfg.precision);
    }
    ez_eval_mb_with_m(s, choose_m(s, cfg.mb.eta), cfg)
}

/// The recursion with an explicit contour offset `M ≥ 1`.
pub fn ez_eval_mb_with_m(s: &[Cdd], m: i64, cfg: &EvalConfig) -> Result<Cdd> {
    let r = s.len();
    if r == 1 {
        return zeta(s[0], &cfg.precision);
    }
    if let Some(h) = singular_hyperplane(s) {
        return Err(Error::OnSingularHyperplane { hyperplane: h });
    }
    if m < 1 {
        return Err(Error::InvalidArgument(format!("contour offset M = {m} must be positive")));
    }
    let eta = cfg.mb.eta;
    if let Some(c) = (RegionCheck { depth: r, m, eta }).violation(s) {
        return Err(Error::RegionViolation { condition: format!("{c} at {}", format_point(s)) });
    }
    let sr = s[r - 1];
    let merged = |k: i64| -> Vec<Cdd> {
        let mut a = s[..r - 2].to_vec();
        a.push(s[r - 2] + sr + Cdd::from_i64(k));
        a
    };
    let mut total = ez_eval_mb(&merged(-1), cfg)? / (sr - Cdd::ONE);
    let mut binom = Cdd::ONE;
    for k in 0..m {
        if k > 0 {
            binom = binom * (-sr - Cdd::from_i64(k - 1)) / Cdd::from_i64(k);
        }
        if k >= 2 && k % 2 == 0 {
            continue; // ζ(−k) = 0
        }
        let zk = zeta(Cdd::from_i64(-k), &cfg.precision)?;
        total += binom * zk * ez_eval_mb(&merged(k), cfg)?;
    }
    total += integral_branch(s, m, cfg)?;
    Ok(total)
}

/// Taylor jet of `F_z(s) = Γ(s_l+z)/Γ(s_l) · ζ_{l−1}(s_1,…,s_{l−2}, s_{l−1}+s_l+z)` at `k`.
pub fn f_jet(k: &[i64], z: Cdd, order: usize, ctx: &PrecisionContext) -> Result<Jet> {
    let l = k.len();
    if l < 2 {
        return Err(Error::InvalidArgument("F needs depth ≥ 2".into()));
    }
    let sh = shape(l, order);
    let s: Vec<Jet> = k.iter().enumerate().map(|(i, &v)| Jet::variable(&sh, i, Cdd::from_i64(v))).collect();
    let mut args: Vec<Jet> = s[..l - 2].to_vec();
    args.push((s[l - 2].clone() + s[l - 1].clone()).add_const(z));
    let probe: Vec<Cdd> = args.iter().map(|a| a.constant_term()).collect();
    if let Some(h) = singular_hyperplane(&probe) {
        return Err(Error::OnSingularHyperplane { hyperplane: format!("{h} (inner argument)") });
    }
    let inner = Jet::zeta_multi(&args, ctx)?;
    let sl = &s[l - 1];
    Ok(gamma(&sl.add_const(z)).mul_ref(&rgamma(sl)).mul_ref(&inner))
}

/// `∂^n F_z(k)`, the mixed partial derivative of `F_z` at the integer point `k`.
pub fn f_deriv(n: &[u8], k: &[i64], z: Cdd, cfg: &EvalConfig) -> Result<Cdd> {
    if n.len() != k.len() {
        return Err(Error::InvalidArgument("multi-index and point differ in length".into()));
    }
    let order: usize = n.iter().map(|&x| x as usize).sum();
    cfg.check_order(order)?;
    let j = f_jet(k, z, order, &cfg.precision)?;
    let mut f = Dd::ONE;
    for &ni in n {
        for t in 2..=ni as usize {
            f *= Dd::from_f64(t as f64);
        }
    }
    Ok(j.coeff(n).scale(f))
}

/// Binomial row `binom(a, n)`, n = 0..=a: how `(s_{r−1}+s_r−c)^a` redistributes over
/// `(s_{r−1}−m_{r−1})^n (s_r−m_r)^{a−n}`.
pub fn redistribute_merged_variable(a: u32) -> Vec<u64> {
    let mut row = vec![1u64];
    for k in 0..a as u64 {
        let next = row[k as usize] * (a as u64 - k) / (k + 1);
        row.push(next);
    }
    row
}

fn one_dim_expansion(m: i64, order: usize, cfg: &EvalConfig) -> Result<LaurentExpansion> {
    let l = laurent_at(m, order, &cfg.precision)?;
    let sh = shape(1, order);
    let mut e = LaurentExpansion::from_jet(&[m], Jet::from_coeffs(&sh, l.coefficients.clone()), cfg.precision.digits);
    if l.has_pole {
        let pole = LaurentExpansion::from_jet(&[m], Jet::constant(&sh, Cdd::ONE), cfg.precision.digits)
            .divide_by(LinearFactor { coeffs: vec![1], c: 1 });
        e = e.add(&pole);
    }
    Ok(e)
}

/// Expansion of a depth-`l` term at any integer center, in its own variables.
pub(crate) fn expand_any(m: &[i64], order: usize, cfg: &EvalConfig) -> Result<LaurentExpansion> {
    if m.len() == 1 {
        one_dim_expansion(m[0], order, cfg)
    } else if m.iter().all(|&x| x >= 1) {
        crate::laurent::expand_positive(m, order, cfg)
    } else {
        expand_nonpositive(m, order, cfg)
    }
}

/// Laurent expansion of ζ_r at an integer point with some coordinate `≤ 0`, from the
/// recursion above with `M = max(M_r(m)+1, 1)`: the `1/(s_r−1)` branch and the
/// finite sum are expanded recursively, the integral branch termwise through jets
/// of `F_z` integrated against `Γ(−z)ζ(−z)`.
pub fn expand_nonpositive(m: &[i64], order: usize, cfg: &EvalConfig) -> Result<LaurentExpansion> {
    let r = m.len();
    if r < 2 {
        return Err(Error::InvalidArgument("depth 1 expansions are laurent_at's job".into()));
    }
    cfg.check_order(order)?;
    let digits = cfg.precision.digits;
    let sh = shape(r, order);
    let mm = (capital_m(m) + 1).max(1);
    // images of the inner variables: w_i = s_i (i ≤ r−2), w_{r−1} = s_{r−1}+s_r+c
    let images = |c: i64| -> Vec<AffineForm> {
        let mut v: Vec<AffineForm> = (1..=r - 2).map(|i| AffineForm::var(r, i)).collect();
        v.push(AffineForm::var(r, r - 1).plus(&AffineForm::var(r, r)).shifted(c));
        v
    };
    let inner = |c: i64| -> Result<LaurentExpansion> {
        let mut center: Vec<i64> = m[..r - 2].to_vec();
        center.push(m[r - 2] + m[r - 1] + c);
        expand_any(&center, order, cfg)?.substitute(m, &images(c))
    };
    let s: Vec<Jet> = m.iter().enumerate().map(|(i, &v)| Jet::variable(&sh, i, Cdd::from_i64(v))).collect();
    let sr = &s[r - 1];

    // 1/(s_r − 1) branch
    let first = inner(-1)?;
    let mut total = if m[r - 1] == 1 {
        first.divide_by(LinearFactor::suffix(r, r, 1))
    } else {
        first.mul_jet(&sr.add_const(-Cdd::ONE).recip())
    };
    // finite sum
    let mut binom = Jet::constant(&sh, Cdd::ONE);
    for k in 0..mm {
        if k > 0 {
            binom = binom.mul_ref(&(-sr.clone()).add_const(Cdd::from_i64(1 - k))).scale(Cdd::from_i64(k).recip());
        }
        if k >= 2 && k % 2 == 0 {
            continue;
        }
        let zk = zeta(Cdd::from_i64(-k), &cfg.precision)?;
        total = total.add(&inner(k)?.mul_jet(&binom.scale(zk)));
    }
    // integral branch
    let (ij, _) = integral_generic(&s, mm as f64 - cfg.mb.eta, &cfg.precision, &cfg.mb)?;
    let branch = ij.mul_ref(&rgamma(sr));
    total = total.add(&LaurentExpansion::from_jet(m, branch, digits));
    total.order = order;
    Ok(total)
}
