//! Laurent expansions of ζ_r at positive integer points.
//!
//! [`expand_positive`] executes the stuffle plan bottom-up: Taylor leaves come from
//! jets of the nested Euler–Maclaurin formula, all-ones leaves from the multiple
//! Stieltjes constants, and isolations combine those by exact products of
//! expansions. The multiple Stieltjes constants are the Taylor coefficients of
//! `G(s) = Π_{k=2}^r L_k(s) · ζ_r(s) − 1/L_1(s)` at `(1,…,1)`, `L_k = s_k+…+s_r−(r−k+1)`.
//!
//! The restricted expansion sets every coordinate equal to 1 at the center to one
//! variable `s` and works with one-variable Laurent series. It needs nothing beyond
//! γ_n and derivatives of ζ_k inside the domain: isolations use the same stuffle
//! splits, and the all-ones diagonal uses
//! `l·ζ_l(s,…,s) = ζ_{l−1}(s,…,s)ζ(s) − Σ_i ζ_{l−1}(s,…,2s,…,s)`.

use crate::contour::Polydisc;
use crate::dd::{Cdd, Dd};
use crate::error::{Error, Result};
use crate::expansion::{LaurentExpansion, LinearFactor};
use crate::jet::{shape, Jet};
use crate::mb::{expand_any, ez_eval_mb};
use crate::nested::{ez_em, ez_em_jet, ez_em_jet_at, PoleSum};
use crate::precision::{EvalConfig, PrecisionContext};
use crate::stuffle::{classify_case, expansion_plan, CaseTag, ExpansionPlan, Rule, ZetaTerm};
use crate::zeta::{stieltjes_table, zeta, zeta_jet, zeta_taylor};
use once_cell::sync::Lazy;
use serde_json::{json, Value};
use std::collections::HashMap;
use std::sync::Mutex;

fn check_positive(m: &[i64]) -> Result<()> {
    if m.is_empty() {
        return Err(Error::InvalidArgument("empty center".into()));
    }
    classify_case(m).map(|_| ())
}

fn pole_free(ps: PoleSum, sh: &std::sync::Arc<crate::jet::Shape>) -> Result<Jet> {
    let mut out = Jet::zero(sh);
    for (k, v) in ps.terms {
        if !k.is_empty() {
            return Err(Error::ConsistencyFailure { detail: "Taylor leaf produced a pole".into() });
        }
        out = out + v;
    }
    Ok(out)
}

fn taylor_leaf(term: &ZetaTerm, m: &[i64], order: usize, cfg: &EvalConfig) -> Result<LaurentExpansion> {
    let sh = shape(m.len(), order);
    let args: Vec<Jet> = term
        .args
        .iter()
        .map(|f| {
            let a: Vec<Cdd> = f.coeffs.iter().map(|&c| Cdd::from_i64(c as i64)).collect();
            Jet::linear(&sh, Cdd::from_i64(f.at_integer(m)), &a)
        })
        .collect();
    let j = if args.len() == 1 { zeta_jet(&args[0], &cfg.precision)? } else { pole_free(ez_em_jet(&args, &cfg.precision)?, &sh)? };
    Ok(LaurentExpansion::from_jet(m, j, cfg.precision.digits))
}

/// Own-variable expansion of ζ_l at `(1,…,1)`:
/// `1/(L_1⋯L_l) + G(s)/(L_2⋯L_l)`.
fn all_ones_own(l: usize, order: usize, cfg: &EvalConfig) -> Result<LaurentExpansion> {
    let ones = vec![1i64; l];
    if l == 1 {
        return expand_any(&ones, order, cfg);
    }
    let sh = shape(l, order);
    let digits = cfg.precision.digits;
    let g = multiple_stieltjes_table(l, order, &cfg.precision)?;
    let mut lead = LaurentExpansion::from_jet(&ones, Jet::constant(&sh, Cdd::ONE), digits);
    let mut rest = LaurentExpansion::from_jet(&ones, g, digits);
    for k in 1..=l {
        let f = LinearFactor::suffix(l, k, (l - k + 1) as i64);
        lead = lead.divide_by(f.clone());
        if k >= 2 {
            rest = rest.divide_by(f);
        }
    }
    Ok(lead.add(&rest))
}

/// Laurent expansion of ζ_r at a point with every coordinate `≥ 1`, numerators
/// truncated at total order `order`.
pub fn expand_positive(m: &[i64], order: usize, cfg: &EvalConfig) -> Result<LaurentExpansion> {
    check_positive(m)?;
    cfg.check_order(order)?;
    let plan = expansion_plan(m)?;
    let mut memo: HashMap<ZetaTerm, LaurentExpansion> = HashMap::new();
    execute(&ZetaTerm::identity(m.len()), &plan, m, order, cfg, &mut memo)?;
    let mut out = memo.remove(&ZetaTerm::identity(m.len())).expect("plan expands the root");
    out.order = order;
    Ok(out)
}

fn execute(
    term: &ZetaTerm,
    plan: &ExpansionPlan,
    m: &[i64],
    order: usize,
    cfg: &EvalConfig,
    memo: &mut HashMap<ZetaTerm, LaurentExpansion>,
) -> Result<()> {
    if memo.contains_key(term) {
        return Ok(());
    }
    let step = plan.step_for(term).ok_or_else(|| Error::ConsistencyFailure { detail: format!("plan has no step for {term}") })?;
    let e = match step.rule {
        Rule::DepthReduce => unreachable!("step_for skips markers"),
        Rule::TaylorExpand => taylor_leaf(term, m, order, cfg)?,
        Rule::Lse2Expand => all_ones_own(term.depth, order, cfg)?.substitute(m, &term.args)?,
        Rule::StuffleIsolate => {
            let expr = step.expression.as_ref().expect("isolation carries its identity");
            let mut acc = LaurentExpansion::zero(m, order, cfg.precision.digits);
            for mono in &expr.terms {
                let mut prod: Option<LaurentExpansion> = None;
                for f in &mono.factors {
                    execute(f, plan, m, order, cfg, memo)?;
                    let fe = &memo[f];
                    prod = Some(match prod {
                        None => fe.clone(),
                        Some(p) => p.mul(fe),
                    });
                }
                acc = acc.axpy(Cdd::from_i64(mono.coeff), &prod.expect("monomials are non-empty"));
            }
            acc
        }
    };
    memo.insert(term.clone(), e);
    Ok(())
}

/// Laurent expansion at any integer point: positive points through the stuffle plan,
/// the rest through the Mellin–Barnes recursion.
pub fn expand(m: &[i64], order: usize, cfg: &EvalConfig) -> Result<LaurentExpansion> {
    cfg.check_order(order)?;
    expand_any(m, order, cfg)
}

fn suffix_jet(sh: &std::sync::Arc<crate::jet::Shape>, r: usize, k: usize) -> Jet {
    let a: Vec<Cdd> = (1..=r).map(|i| if i >= k { Cdd::ONE } else { Cdd::ZERO }).collect();
    Jet::linear(sh, Cdd::ZERO, &a)
}

/// `G` at cut-off `n`. The only term with the factor `L_1` is the full chain
/// `n^{−L_1}/(L_1⋯L_r)`, which combines with `−1/L_1` into `(n^{−L_1}−1)/L_1`.
fn g_at_cutoff(r: usize, order: usize, n: usize) -> Result<(Jet, f64)> {
    let sh = shape(r, order);
    let t: Vec<Jet> = (0..r).map(|i| Jet::variable(&sh, i, Cdd::ONE)).collect();
    let (ps, err) = ez_em_jet_at(&t, n)?;
    let forms: Vec<Vec<i64>> = (1..=r).map(|k| (1..=r).map(|i| i64::from(i >= k)).collect()).collect();
    let mut full = forms.clone();
    full.sort();
    let ln_n = crate::zeta::ln_int(n);
    let mut a = Vec::with_capacity(order + 1);
    let mut p = -ln_n;
    let mut fact = Dd::ONE;
    for j in 0..=order {
        a.push(Cdd::real(p / fact));
        p *= -ln_n;
        fact *= Dd::from_f64((j + 2) as f64);
    }
    let mut g = suffix_jet(&sh, r, 1).compose_series(&a);
    for (key, num) in ps.terms {
        if key == full {
            continue;
        }
        if key.iter().any(|f| !forms[1..].contains(f)) {
            return Err(Error::ConsistencyFailure { detail: format!("unexpected pole {key:?} at (1,…,1)") });
        }
        let mut prod = num;
        for k in 2..=r {
            if !key.contains(&forms[k - 1]) {
                prod = prod.mul_ref(&suffix_jet(&sh, r, k));
            }
        }
        g = g + prod;
    }
    Ok((g, err))
}

static G_CACHE: Lazy<Mutex<HashMap<(usize, usize, u32), Jet>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// Jet of all multiple Stieltjes constants γ_(n) of depth `r` with `|n| ≤ order`.
pub fn multiple_stieltjes_table(r: usize, order: usize, ctx: &PrecisionContext) -> Result<Jet> {
    if r == 0 {
        return Err(Error::InvalidArgument("depth must be positive".into()));
    }
    let key = (r, order, ctx.digits);
    if let Some(j) = G_CACHE.lock().unwrap().get(&key) {
        return Ok(j.clone());
    }
    let sh = shape(r, order);
    let g = if r == 1 {
        Jet::from_coeffs(&sh, stieltjes_table(order, ctx)?.into_iter().map(Cdd::real).collect())
    } else {
        // poles are only visible to jets of order ≥ 1
        let work = order.max(1);
        let n = 40 + 2 * work + 4 * r;
        let (a, _) = g_at_cutoff(r, work, n)?;
        let (b, eb) = g_at_cutoff(r, work, n + 12)?;
        let (a, b) = (a.reshape(&sh), b.reshape(&sh));
        let diff = (a - b.clone()).max_abs().max(eb);
        if diff > ctx.tol {
            return Err(Error::precision("multiple Stieltjes constants", diff, ctx.tol));
        }
        b
    };
    G_CACHE.lock().unwrap().insert(key, g.clone());
    Ok(g)
}

/// γ_(n₁,…,n_r).
pub fn multiple_stieltjes(n: &[u8], ctx: &PrecisionContext) -> Result<Cdd> {
    let order = n.iter().map(|&x| x as usize).sum();
    Ok(multiple_stieltjes_table(n.len(), order, ctx)?.coeff(n))
}

/// `G(s)` evaluated directly (for contour extraction and checks).
pub fn stieltjes_generating_function(s: &[Cdd], ctx: &PrecisionContext) -> Result<Cdd> {
    let r = s.len();
    let l = |k: usize| -> Cdd {
        let mut acc = Cdd::from_i64(-((r - k + 1) as i64));
        for x in &s[k - 1..] {
            acc += *x;
        }
        acc
    };
    let z = if r == 1 { zeta(s[0], ctx)? } else { ez_em(s, ctx)?.0 };
    let mut prod = z;
    for k in 2..=r {
        prod *= l(k);
    }
    Ok(prod - l(1).recip())
}

/// γ_(n) by Cauchy integration of `G` on the polydisc of radius 1/4 around `(1,…,1)`.
pub fn multiple_stieltjes_contour(n: &[u8], nodes: usize, ctx: &PrecisionContext) -> Result<Cdd> {
    let pd = Polydisc::new(vec![Cdd::ONE; n.len()], 0.25, nodes);
    Ok(pd.coefficients(|s| stieltjes_generating_function(s, ctx), &[n.to_vec()])?[0])
}

/// `A_{n₂}(s₁) = (−1)^{n₂}/(s₁−1)^{n₂+1} + Σ_{n₁} γ_(n₁,n₂)(s₁−1)^{n₁}`, the coefficient
/// functions of ζ_2 in powers of `s₂−1` when `|s₂−1| < |s₁−1|`.
///
/// The `n₁` series has radius about 1 and is cut at total order 24 (the highest
/// the table reaches at 30 digits), so use `|s₁−1| ≤ 1/4`.
pub fn double_slice(n2: u8, s1: Cdd, ctx: &PrecisionContext) -> Result<Cdd> {
    const ORDER: usize = 24;
    let terms = ORDER.checked_sub(n2 as usize).ok_or(Error::OrderCapExceeded { requested: n2 as usize, cap: ORDER })?;
    let table = multiple_stieltjes_table(2, ORDER, ctx)?;
    let d = s1 - Cdd::ONE;
    let mut acc = Cdd::ZERO;
    for n1 in (0..=terms).rev() {
        acc = acc * d + table.coeff(&[n1 as u8, n2]);
    }
    let pole = d.powi(n2 as i32 + 1).recip();
    Ok(acc + if n2.is_multiple_of(2) { pole } else { -pole })
}

/// `γ_2(s₁) = ζ(s₁)γ − ζ_2(1,s₁) − ζ(s₁+1)`.
pub fn double_euler_gamma(s1: Cdd, ctx: &PrecisionContext) -> Result<Cdd> {
    let g0 = Cdd::real(stieltjes_table(0, ctx)?[0]);
    Ok(zeta(s1, ctx)? * g0 - ez_em(&[Cdd::ONE, s1], ctx)?.0 - zeta(s1 + Cdd::ONE, ctx)?)
}

/// One-variable Laurent series with a known-valid range of powers `low..valid`.
#[derive(Clone, Debug)]
struct ULaurent {
    low: i32,
    c: Vec<Cdd>,
}

impl ULaurent {
    fn valid(&self) -> i32 {
        self.low + self.c.len() as i32
    }

    fn coeff(&self, p: i32) -> Cdd {
        if p < self.low || p >= self.valid() {
            Cdd::ZERO
        } else {
            self.c[(p - self.low) as usize]
        }
    }

    fn axpy(&self, k: Cdd, o: &ULaurent) -> ULaurent {
        let low = self.low.min(o.low);
        let valid = self.valid().min(o.valid());
        ULaurent { low, c: (low..valid).map(|p| self.coeff(p) + k * o.coeff(p)).collect() }
    }

    fn mul(&self, o: &ULaurent) -> ULaurent {
        let low = self.low + o.low;
        let valid = (self.valid() + o.low).min(o.valid() + self.low);
        let mut c = vec![Cdd::ZERO; (valid - low).max(0) as usize];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                let p = i + j;
                if p < c.len() {
                    c[p] += *a * *b;
                }
            }
        }
        ULaurent { low, c }
    }

    fn scale(&self, k: Cdd) -> ULaurent {
        ULaurent { low: self.low, c: self.c.iter().map(|v| *v * k).collect() }
    }
}

/// A term's arguments as (center, number of restricted coordinates summed).
type Args = Vec<(i64, i64)>;

fn quasi_shuffle(a: &[(i64, i64)], b: &[(i64, i64)]) -> Vec<Args> {
    if a.is_empty() {
        return vec![b.to_vec()];
    }
    if b.is_empty() {
        return vec![a.to_vec()];
    }
    let mut out = Vec::new();
    let prefix = |x: (i64, i64), rest: Vec<Args>, out: &mut Vec<Args>| {
        for mut w in rest {
            w.insert(0, x);
            out.push(w);
        }
    };
    prefix(a[0], quasi_shuffle(&a[1..], b), &mut out);
    prefix(b[0], quasi_shuffle(a, &b[1..]), &mut out);
    prefix((a[0].0 + b[0].0, a[0].1 + b[0].1), quasi_shuffle(&a[1..], &b[1..]), &mut out);
    out
}

struct Restricted<'a> {
    w: i32,
    cfg: &'a EvalConfig,
    gammas: Vec<Dd>,
    memo: HashMap<Args, ULaurent>,
}

impl Restricted<'_> {
    fn power_scaled(&self, c: Vec<Cdd>, k: i64) -> Vec<Cdd> {
        let kk = Cdd::from_i64(k);
        let mut p = Cdd::ONE;
        c.into_iter()
            .map(|v| {
                let out = v * p;
                p *= kk;
                out
            })
            .collect()
    }

    fn eval(&mut self, args: &Args) -> Result<ULaurent> {
        if let Some(v) = self.memo.get(args) {
            return Ok(v.clone());
        }
        let v = self.compute(args)?;
        self.memo.insert(args.clone(), v.clone());
        Ok(v)
    }

    fn compute(&mut self, args: &Args) -> Result<ULaurent> {
        let w = self.w as usize;
        let l = args.len();
        let ctx = &self.cfg.precision;
        if l == 1 {
            let (c, k) = args[0];
            if c == 1 {
                if k == 0 {
                    return Err(Error::ConsistencyFailure { detail: "ζ(1) in a restricted term".into() });
                }
                let mut co = vec![Cdd::from_i64(k).recip()];
                co.extend(self.power_scaled(self.gammas.iter().map(|g| Cdd::real(*g)).collect(), k));
                return Ok(ULaurent { low: -1, c: co });
            }
            return Ok(ULaurent { low: 0, c: self.power_scaled(zeta_taylor(Cdd::from_i64(c), w, ctx)?, k) });
        }
        let centers: Vec<i64> = args.iter().map(|a| a.0).collect();
        match classify_case(&centers)? {
            CaseTag::C(j) if j == l => {
                let sh = shape(1, w);
                let jets: Vec<Jet> = args.iter().map(|&(c, k)| Jet::linear(&sh, Cdd::from_i64(c), &[Cdd::from_i64(k)])).collect();
                let t = pole_free(ez_em_jet(&jets, ctx)?, &sh)?;
                Ok(ULaurent { low: 0, c: t.coeffs().to_vec() })
            }
            CaseTag::C(j) => {
                let (a, b) = (&args[..j], &args[j..]);
                let mut acc = self.eval(&a.to_vec())?.mul(&self.eval(&b.to_vec())?);
                let mut count = 0i64;
                for t in quasi_shuffle(a, b) {
                    if &t == args {
                        count += 1;
                    } else {
                        acc = acc.axpy(-Cdd::ONE, &self.eval(&t)?);
                    }
                }
                Ok(acc.scale(Cdd::from_i64(count).recip()))
            }
            CaseTag::AllOnes => {
                if args.iter().any(|a| a.1 != 1) {
                    return Err(Error::ConsistencyFailure { detail: "all-ones term off the diagonal".into() });
                }
                let shorter: Args = args[1..].to_vec();
                let mut acc = self.eval(&shorter)?.mul(&self.eval(&vec![(1, 1)])?);
                for i in 0..l - 1 {
                    let mut t = shorter.clone();
                    t[i] = (2, 2);
                    acc = acc.axpy(-Cdd::ONE, &self.eval(&t)?);
                }
                Ok(acc.scale(Cdd::from_i64(l as i64).recip()))
            }
        }
    }
}

/// One-variable expansion of ζ_r on the line where every coordinate equal to 1 at
/// the center is replaced by a common `s`; other coordinates stay at the center.
#[derive(Clone, Debug, PartialEq)]
pub struct RestrictedExpansion {
    pub center: Vec<i64>,
    /// 1-based indices of the restricted coordinates.
    pub restricted: Vec<usize>,
    /// Power of `(s−1)` of the first coefficient.
    pub low: i32,
    pub coefficients: Vec<Cdd>,
}

impl RestrictedExpansion {
    pub fn coefficient(&self, power: i32) -> Cdd {
        if power < self.low || power >= self.low + self.coefficients.len() as i32 {
            Cdd::ZERO
        } else {
            self.coefficients[(power - self.low) as usize]
        }
    }

    pub fn pole_order(&self) -> usize {
        self.coefficients.iter().position(|c| !c.is_zero()).map_or(0, |i| (-(self.low + i as i32)).max(0) as usize)
    }

    /// Value at `s = 1+u`.
    pub fn evaluate(&self, u: Cdd) -> Cdd {
        let mut acc = Cdd::ZERO;
        for c in self.coefficients.iter().rev() {
            acc = acc * u + *c;
        }
        acc * if self.low < 0 { u.powi(-self.low).recip() } else { u.powi(self.low) }
    }

    pub fn to_json(&self, digits: u32) -> Value {
        let coeffs: Vec<Value> = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(i, c)| json!({"power": self.low + i as i32, "value": [c.re.to_decimal(digits), c.im.to_decimal(digits)]}))
            .collect();
        json!({"center": self.center, "restricted": self.restricted, "coefficients": coeffs})
    }
}

/// Restricted expansion with coefficients of `(s−1)^p` for `p ≤ order`.
pub fn restricted_expand(m: &[i64], order: usize, cfg: &EvalConfig) -> Result<RestrictedExpansion> {
    check_positive(m)?;
    cfg.check_order(order)?;
    let r = m.len();
    let args: Args = m.iter().map(|&c| (c, i64::from(c == 1))).collect();
    let mut w = (order + 2 * r + 2) as i32;
    loop {
        let mut st = Restricted { w, cfg, gammas: stieltjes_table(w as usize, &cfg.precision)?, memo: HashMap::new() };
        let u = st.eval(&args)?;
        if u.valid() > order as i32 {
            let c = (u.low..=order as i32).map(|p| u.coeff(p)).collect();
            let restricted = (1..=r).filter(|&i| m[i - 1] == 1).collect();
            return Ok(RestrictedExpansion { center: m.to_vec(), restricted, low: u.low, coefficients: c });
        }
        w += (r + 2) as i32;
        if w as usize > 4 * (order + r) + 40 {
            return Err(Error::precision("restricted expansion order", f64::INFINITY, cfg.tol()));
        }
    }
}

/// `Σ_{n₁+…+n_r=N} γ_(n)`, from the restricted expansion, checked against the direct sum.
pub fn stieltjes_sum(n: usize, r: usize, cfg: &EvalConfig) -> Result<Cdd> {
    if r == 0 {
        return Err(Error::InvalidArgument("depth must be positive".into()));
    }
    cfg.check_order(n)?;
    let p = n as i32 - r as i32 + 1;
    let re = restricted_expand(&vec![1; r], p.max(0) as usize, cfg)?;
    let mut fact = Dd::ONE;
    for k in 2..r {
        fact *= Dd::from_f64(k as f64);
    }
    let b = re.coefficient(p).scale(fact);
    let table = multiple_stieltjes_table(r, n, &cfg.precision)?;
    let mut a = Cdd::ZERO;
    for (mono, c) in table.iter() {
        if mono.iter().map(|&e| e as usize).sum::<usize>() == n {
            a += *c;
        }
    }
    let diff = (a - b).abs();
    if diff > 10.0 * cfg.tol() * b.abs().max(1.0) {
        return Err(Error::ConsistencyFailure { detail: format!("composition sum {a} vs restricted coefficient {b}") });
    }
    Ok(b)
}

/// `[ζ_r(s) − ζ(s_1+…+s_r−(r−1))/Π_{k=2}^r L_k(s)] · Π_{k=3}^r L_k(s)`, which stays
/// bounded near every positive integer point.
pub fn lemma1_remainder(s: &[Cdd], cfg: &EvalConfig) -> Result<Cdd> {
    let r = s.len();
    let l = |k: usize| -> Cdd {
        let mut acc = Cdd::from_i64(-((r - k + 1) as i64));
        for x in &s[k - 1..] {
            acc += *x;
        }
        acc
    };
    let z = ez_eval_mb(s, cfg)?;
    let mut lead = zeta(l(1) + Cdd::ONE, &cfg.precision)?;
    for k in 2..=r {
        lead /= l(k);
    }
    let mut out = z - lead;
    for k in 3..=r {
        out *= l(k);
    }
    Ok(out)
}

/// Fixed, well-spread complex unit directions (deterministic stand-ins for random ones).
pub(crate) fn probe_directions(r: usize, count: usize) -> Vec<Vec<Cdd>> {
    const PHI: f64 = 0.618_033_988_749_895;
    let mut x = 0.3137;
    (0..count)
        .map(|_| {
            let v: Vec<Cdd> = (0..r)
                .map(|_| {
                    x = (x + PHI).fract();
                    let th = 2.0 * std::f64::consts::PI * x;
                    x = (x + PHI).fract();
                    Cdd::from_f64((0.5 + x) * th.cos(), (0.5 + x) * th.sin())
                })
                .collect();
            let norm = v.iter().map(|c| c.abs().powi(2)).sum::<f64>().sqrt();
            v.into_iter().map(|c| c.mul_f64(1.0 / norm)).collect()
        })
        .collect()
}

/// Checks numerically that [`lemma1_remainder`] does not blow up along five
/// directions into the positive integer point `m`.
pub fn lemma1_pole_check(m: &[i64], cfg: &EvalConfig) -> bool {
    if check_positive(m).is_err() {
        return false;
    }
    let r = m.len();
    for d in probe_directions(r, 5) {
        let at = |t: f64| -> Result<f64> {
            let s: Vec<Cdd> = m.iter().zip(&d).map(|(&mi, di)| Cdd::from_i64(mi) + di.mul_f64(t)).collect();
            Ok(lemma1_remainder(&s, cfg)?.abs())
        };
        let vals: Result<Vec<f64>> = [1e-2, 1e-3, 1e-4].iter().map(|&t| at(t)).collect();
        match vals {
            Ok(v) if v.iter().all(|x| x.is_finite()) => {
                if v[2] > 5.0 * v[0].max(v[1]) + 1e-6 {
                    return false;
                }
            }
            _ => return false,
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stieltjes_slice_is_classical() {
        let ctx = PrecisionContext::default();
        let g = stieltjes_table(3, &ctx).unwrap();
        for n in 0..=3u8 {
            let v = multiple_stieltjes(&[n, 0], &ctx).unwrap();
            assert!((v - Cdd::real(g[n as usize])).abs() < 1e-25, "n={n}: {v}");
        }
    }

    #[test]
    fn diagonal_leading_terms() {
        let cfg = EvalConfig::default();
        let e = restricted_expand(&[1, 1], 1, &cfg).unwrap();
        assert_eq!(e.low, -2);
        assert!((e.coefficient(-2) - Cdd::from_f64(0.5, 0.0)).abs() < 1e-28);
        let g = stieltjes_table(0, &cfg.precision).unwrap()[0];
        assert!((e.coefficient(-1) - Cdd::real(g)).abs() < 1e-26);
    }

    #[test]
    fn quasi_shuffle_counts() {
        // Delannoy numbers D(1,1) = 3, D(2,1) = 5
        assert_eq!(quasi_shuffle(&[(1, 0)], &[(2, 0)]).len(), 3);
        assert_eq!(quasi_shuffle(&[(1, 0), (3, 0)], &[(2, 0)]).len(), 5);
    }
}
