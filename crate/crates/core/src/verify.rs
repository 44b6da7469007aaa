//! Named numerical self-checks. Each suite runs a fixed set of identities or
//! limits and records the residual of every check against its tolerance.

use crate::dd::Cdd;
use crate::error::{Error, Result};
use crate::laurent::{double_euler_gamma, double_slice, lemma1_pole_check, multiple_stieltjes};
use crate::limits::{zeta2_corollary, zeta2_near, zeta3_near, ApproachSpec, NearPoint};
use crate::mb::{ez_eval_mb, ez_eval_mb_with_m};
use crate::precision::EvalConfig;
use crate::series::ez_value;
use crate::stuffle::{stuffle_product, AffineForm, StuffleExpression, ZetaTerm};
use crate::zeta::{stieltjes_table, zeta};
use serde_json::{json, Value};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Stuffle,
    Lemma1,
    Remarks,
    Corollary,
    MbClosure,
    Limits,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Stuffle, Suite::Lemma1, Suite::Remarks, Suite::Corollary, Suite::MbClosure, Suite::Limits];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Stuffle => "stuffle",
            Suite::Lemma1 => "lemma1",
            Suite::Remarks => "remarks",
            Suite::Corollary => "corollary",
            Suite::MbClosure => "mb-closure",
            Suite::Limits => "limits",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite '{s}'")))
    }
}

/// One check: passes when `residual <= tolerance`.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Set when the computation itself failed.
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite.name(),
            "passed": self.passed(),
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "passed": c.passed,
                "residual": format!("{:.3e}", c.residual),
                "tolerance": format!("{:.3e}", c.tolerance),
                "error": c.error,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            match &c.error {
                Some(e) => out.push_str(&format!("{tag} {}: {e}\n", c.name)),
                None => out.push_str(&format!("{tag} {}: residual {:.3e} (tolerance {:.3e})\n", c.name, c.residual, c.tolerance)),
            }
        }
        let n = self.checks.iter().filter(|c| c.passed).count();
        out.push_str(&format!("{}: {n}/{} passed\n", self.suite, self.checks.len()));
        out
    }
}

struct Recorder {
    checks: Vec<Check>,
}

impl Recorder {
    fn push(&mut self, name: impl Into<String>, tolerance: f64, residual: Result<f64>) {
        let name = name.into();
        let check = match residual {
            Ok(r) => Check { name, residual: r, tolerance, passed: r.is_finite() && r <= tolerance, error: None },
            Err(e) => Check { name, residual: f64::NAN, tolerance, passed: false, error: Some(e.to_string()) },
        };
        self.checks.push(check);
    }
}

pub fn run(suite: Suite, cfg: &EvalConfig) -> Report {
    let mut rec = Recorder { checks: Vec::new() };
    match suite {
        Suite::Stuffle => stuffle_suite(&mut rec, cfg),
        Suite::Lemma1 => lemma1_suite(&mut rec, cfg),
        Suite::Remarks => remarks_suite(&mut rec, cfg),
        Suite::Corollary => corollary_suite(&mut rec, cfg),
        Suite::MbClosure => mb_closure_suite(&mut rec, cfg),
        Suite::Limits => limits_suite(&mut rec, cfg),
    }
    Report { suite, checks: rec.checks }
}

/// Deterministic points with every real part in `[lo, lo+2)` and imaginary parts in `[−2, 2)`.
pub fn sample_points(r: usize, count: usize, lo: f64, seed: u64) -> Vec<Vec<Cdd>> {
    const ALPHA: f64 = 0.754_877_666_246_692_7;
    const BETA: f64 = 0.569_840_290_998_053_3;
    let mut x = (seed as f64 * 0.137).fract();
    let mut y = (seed as f64 * 0.291).fract();
    (0..count)
        .map(|_| {
            (0..r)
                .map(|_| {
                    x = (x + ALPHA).fract();
                    y = (y + BETA).fract();
                    Cdd::from_f64(lo + 2.0 * x, 4.0 * y - 2.0)
                })
                .collect()
        })
        .collect()
}

fn term_value(t: &ZetaTerm, s: &[Cdd], cfg: &EvalConfig) -> Result<Cdd> {
    let args: Vec<Cdd> = t.args.iter().map(|a| a.at(s)).collect();
    ez_value(&args, cfg)
}

/// `|lhs − rhs|` relative to `max(1, |lhs|)` for a product identity `a·b = expr`.
fn product_residual(a: &ZetaTerm, b: &ZetaTerm, expr: &StuffleExpression, s: &[Cdd], cfg: &EvalConfig) -> Result<f64> {
    let lhs = term_value(a, s, cfg)? * term_value(b, s, cfg)?;
    let rhs = expr.evaluate(|t| term_value(t, s, cfg))?;
    Ok((lhs - rhs).abs() / lhs.abs().max(1.0))
}

fn delannoy(m: usize, n: usize) -> u64 {
    let mut d = vec![vec![1u64; n + 1]; m + 1];
    for i in 1..=m {
        for j in 1..=n {
            d[i][j] = d[i - 1][j] + d[i][j - 1] + d[i - 1][j - 1];
        }
    }
    d[m][n]
}

fn explicit(r: usize, words: &[&[&[usize]]]) -> Vec<ZetaTerm> {
    words
        .iter()
        .map(|w| {
            ZetaTerm::new(
                w.iter()
                    .map(|vars| vars[1..].iter().fold(AffineForm::var(r, vars[0]), |a, &v| a.plus(&AffineForm::var(r, v))))
                    .collect(),
            )
        })
        .collect()
}

fn stuffle_suite(rec: &mut Recorder, cfg: &EvalConfig) {
    let tol = 10.0 * cfg.tol();
    // (name, j, r, the written-out terms if any)
    let a: &[&[&[usize]]] = &[&[&[1], &[2], &[3]], &[&[1], &[2, 3]], &[&[1], &[3], &[2]], &[&[1, 3], &[2]], &[&[3], &[1], &[2]]];
    let b: &[&[&[usize]]] = &[&[&[1], &[2], &[3]], &[&[1, 2], &[3]], &[&[2], &[1], &[3]], &[&[2], &[1, 3]], &[&[2], &[3], &[1]]];
    let h: &[&[&[usize]]] = &[&[&[1], &[2]], &[&[2], &[1]], &[&[1, 2]]];
    let cases: [(&str, usize, usize, Option<&[&[&[usize]]]>); 4] =
        [("ζ·ζ", 1, 2, Some(h)), ("ζ2·ζ", 2, 3, Some(a)), ("ζ·ζ2", 1, 3, Some(b)), ("ζ3·ζ", 3, 4, None)];
    for (i, (name, j, r, words)) in cases.into_iter().enumerate() {
        let expr = match stuffle_product(j, r) {
            Ok(e) => e,
            Err(e) => {
                rec.push(format!("{name} decomposition"), 0.0, Err(e));
                continue;
            }
        };
        if let Some(words) = words {
            let expected = explicit(r, words);
            let mismatch = expr.len() != expected.len() || expected.iter().any(|t| expr.coefficient_of(t) != 1);
            rec.push(format!("{name} terms"), 0.0, Ok(if mismatch { 1.0 } else { 0.0 }));
        }
        let left = ZetaTerm::range(r, 1, j);
        let right = ZetaTerm::range(r, j + 1, r);
        for (k, s) in sample_points(r, 3, 1.5, 11 + i as u64).iter().enumerate() {
            rec.push(format!("{name} point {k}"), tol, product_residual(&left, &right, &expr, s, cfg));
        }
    }
    for r in 2..=6 {
        for j in 1..r {
            let got = stuffle_product(j, r).map(|e| e.len() as f64);
            let want = delannoy(j, r - j) as f64;
            rec.push(format!("term count j={j} r={r} is D({j},{}) = {want}", r - j), 0.0, got.map(|g| (g - want).abs()));
        }
    }
}

fn lemma1_suite(rec: &mut Recorder, cfg: &EvalConfig) {
    for m in [vec![1, 1], vec![1, 1, 1], vec![3, 2]] {
        let ok = lemma1_pole_check(&m, cfg);
        rec.push(format!("remainder bounded at {m:?}"), 0.0, Ok(if ok { 0.0 } else { 1.0 }));
    }
    // (s₂−1)(s₁+s₂−2)ζ₂(s) → 1 at (1,1): the defect is O(|ε|)
    for (k, d) in [(1.0, 1.0), (0.3, 1.0), (1.0, -0.4)].into_iter().enumerate() {
        let t = 1e-4;
        let res = (|| -> Result<f64> {
            let e = [Cdd::from_f64(d.0 * t, 0.2 * t), Cdd::from_f64(d.1 * t, 0.0)];
            let s = [Cdd::ONE + e[0], Cdd::ONE + e[1]];
            let v = e[1] * (e[0] + e[1]) * ez_eval_mb(&s, cfg)?;
            Ok((v - Cdd::ONE).abs())
        })();
        rec.push(format!("(s2-1)(s1+s2-2)ζ2 → 1, direction {k}, |ε| ~ {t:e}"), 20.0 * t, res);
    }
}

fn remarks_suite(rec: &mut Recorder, cfg: &EvalConfig) {
    let ctx = &cfg.precision;
    let g = stieltjes_table(4, ctx);
    for n in 0..=4u8 {
        let res = match &g {
            Ok(g) => multiple_stieltjes(&[n, 0], ctx).map(|v| (v - Cdd::real(g[n as usize])).abs()),
            Err(e) => Err(e.clone()),
        };
        rec.push(format!("γ_({n},0) = γ_{n}"), 1e-20, res);
    }
    for k in 0..4 {
        let th = 0.3 + k as f64 * std::f64::consts::FRAC_PI_2;
        let s1 = Cdd::from_f64(1.0 + 0.25 * th.cos(), 0.25 * th.sin());
        let res = (|| Ok((double_slice(0, s1, ctx)? - zeta(s1, ctx)?).abs()))();
        rec.push(format!("A0 = ζ at s1 = {}", short(s1)), 1e-15, res);
    }
    for k in 0..3 {
        let th = -0.8 + 0.8 * k as f64;
        let s1 = Cdd::from_f64(1.0 + 0.2 * th.cos(), 0.2 * th.sin());
        let res = (|| Ok((double_slice(1, s1, ctx)? - double_euler_gamma(s1, ctx)?).abs()))();
        rec.push(format!("A1 = ζ(s1)γ − ζ2(1,s1) − ζ(s1+1) at s1 = {}", short(s1)), 1e-12, res);
    }
}

fn short(z: Cdd) -> String {
    format!("{:.4}{:+.4}i", z.re.to_f64(), z.im.to_f64())
}

/// Residuals of an approximation against MB at two scales: the O-term holds when
/// the residual shrinks at least linearly, checked as `r(t/10) ≤ 0.3·r(t)` or `r(t/10)` negligible.
fn linear_decay<F>(f: F, t: f64, floor: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let r1 = f(t)?;
    let r2 = f(t / 10.0)?;
    if r2 <= floor {
        return Ok(0.0);
    }
    Ok(r2 / r1.max(1e-300))
}

fn corollary_suite(rec: &mut Recorder, cfg: &EvalConfig) {
    let dirs = [[Cdd::from_f64(1.0, 0.0), Cdd::from_f64(1.0, 0.0)], [Cdd::from_f64(0.4, 0.1), Cdd::from_f64(-1.0, 0.3)]];
    for m in [[0i64, 0], [-1, 0], [0, -1]] {
        for (k, d) in dirs.iter().enumerate() {
            let residual = |t: f64| -> Result<f64> {
                let eps = ApproachSpec::along(d, t);
                let v = zeta2_corollary(&m, &eps, cfg)?;
                Ok((v.total() - ez_eval_mb(&eps.point(&m), cfg)?).abs())
            };
            rec.push(format!("corollary at {m:?}, direction {k}: O(|ε|) decay ratio"), 0.3, linear_decay(residual, 1e-3, 1e-20));
        }
    }
    // the finite part along ε = t·(1−λ, λ) at the origin is 1/3 + λ/12
    for lam in [0.5, 1.0 / 3.0, 1.0] {
        let res = (|| -> Result<f64> {
            let eps = ApproachSpec::real(&[1.0 - lam, lam]);
            let v = zeta2_corollary(&[0, 0], &ApproachSpec::along(&eps.eps, 1e-6), cfg)?;
            Ok((v.finite_part - Cdd::from_f64(1.0 / 3.0 + lam / 12.0, 0.0)).abs())
        })();
        rec.push(format!("finite part at (0,0) with λ = {lam:.4} is 1/3 + λ/12"), 1e-5, res);
    }
}

fn mb_closure_suite(rec: &mut Recorder, cfg: &EvalConfig) {
    let tol = 10.0 * cfg.tol();
    for (r, count) in [(2, 4), (3, 2)] {
        for (k, s) in sample_points(r, count, 1.6, 5 + r as u64).iter().enumerate() {
            let res = (|| Ok((ez_eval_mb(s, cfg)? - ez_value(s, cfg)?).abs()))();
            rec.push(format!("depth {r} point {k}: MB vs series"), tol, res);
        }
    }
    let shifted = [
        vec![Cdd::from_f64(1.3, 0.7), Cdd::from_f64(-0.05, 0.1)],
        vec![Cdd::from_f64(-1.7, 0.4), Cdd::from_f64(0.6, -0.3)],
        vec![Cdd::from_f64(0.7, 0.2), Cdd::from_f64(-0.4, 0.3), Cdd::from_f64(0.35, -0.1)],
    ];
    for s in &shifted {
        let m = crate::mb::choose_m(s, cfg.mb.eta);
        let res = (|| Ok((ez_eval_mb_with_m(s, m, cfg)? - ez_eval_mb_with_m(s, m + 1, cfg)?).abs()))();
        rec.push(format!("contour shift M={m} vs M={} at depth {}", m + 1, s.len()), tol, res);
    }
}

fn limits_suite(rec: &mut Recorder, cfg: &EvalConfig) {
    let d2 = [Cdd::from_f64(0.7, 0.2), Cdd::from_f64(1.0, -0.1)];
    for m in [[2i64, 0], [1, 0], [3, -1], [0, -2], [-1, -1]] {
        let residual = |t: f64| -> Result<f64> {
            let eps = ApproachSpec::along(&d2, t);
            let v = zeta2_near(&m, &eps, cfg)?;
            Ok((v.total() - ez_eval_mb(&eps.point(&m), cfg)?).abs())
        };
        rec.push(format!("ζ2 near {m:?}: O(|ε2|) decay ratio"), 0.3, linear_decay(residual, 1e-3, 1e-20));
    }
    let d3 = [Cdd::from_f64(0.6, 0.1), Cdd::from_f64(-0.5, 0.2), Cdd::from_f64(1.0, 0.0)];
    for m in [[1i64, 1, 0], [1, 0, 2]] {
        let residual = |t: f64| -> Result<f64> {
            let eps = ApproachSpec::along(&d3, t);
            match zeta3_near(&m, &eps, cfg)? {
                NearPoint::Value(v) => Ok((v.total() - ez_eval_mb(&eps.point(&m), cfg)?).abs()),
                NearPoint::Indeterminate { reason, .. } => Err(Error::ConsistencyFailure { detail: reason }),
            }
        };
        rec.push(format!("ζ3 near {m:?}: O(|ε|) decay ratio"), 0.3, linear_decay(residual, 1e-3, 1e-20));
    }
    for m in [[1i64, 0, 1], [2, -1, 1], [0, 0, 1]] {
        let got = zeta3_near(&m, &ApproachSpec::along(&d3, 1e-3), cfg);
        let res = match got {
            Ok(NearPoint::Indeterminate { .. }) => Ok(0.0),
            Ok(NearPoint::Value(_)) => Ok(1.0),
            Err(e) => Err(e),
        };
        rec.push(format!("ζ3 at {m:?} is indeterminate"), 0.0, res);
    }
}
