//! Closed-form values of ζ_2 and ζ_3 near integer points with non-positive coordinates.
//!
//! Every formula drops the Mellin–Barnes integral term, which vanishes to first
//! order; the result carries the symbolic O-terms this leaves, never a numeric bound.
//! Depth three is reduced to depth two either through the recursion in `s_3` or,
//! when `m_3 ≥ 2`, through a stuffle identity. Where `m_2 ≤ 0` and `m_3 = 1`, an
//! `O(|ε_2|)/(s_3−1)` term survives and no limit value follows, so the answer is
//! [`NearPoint::Indeterminate`].

use crate::dd::Cdd;
use crate::error::{Error, Result};
use crate::mb::{capital_m, ez_eval_mb, singular_hyperplane};
use crate::precision::EvalConfig;
use crate::zeta::{stieltjes_table, zeta};
use serde_json::{json, Value};

/// Offsets `ε` from the integer center.
#[derive(Clone, Debug, PartialEq)]
pub struct ApproachSpec {
    pub eps: Vec<Cdd>,
}

impl ApproachSpec {
    pub fn new(eps: Vec<Cdd>) -> Self {
        ApproachSpec { eps }
    }

    pub fn real(eps: &[f64]) -> Self {
        ApproachSpec { eps: eps.iter().map(|&e| Cdd::from_f64(e, 0.0)).collect() }
    }

    /// `ε = t·direction`.
    pub fn along(direction: &[Cdd], t: f64) -> Self {
        ApproachSpec { eps: direction.iter().map(|d| d.mul_f64(t)).collect() }
    }

    /// Which offsets are nonzero.
    pub fn nonzero(&self) -> Vec<bool> {
        self.eps.iter().map(|e| !e.is_zero()).collect()
    }

    pub fn point(&self, m: &[i64]) -> Vec<Cdd> {
        m.iter().zip(&self.eps).map(|(&mi, e)| Cdd::from_i64(mi) + *e).collect()
    }
}

/// A term that diverges as `ε → 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct PrincipalTerm {
    pub value: Cdd,
    /// The vanishing factor, e.g. `1/(ε1+ε2)`.
    pub pole: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NearPointValue {
    pub principal: Vec<PrincipalTerm>,
    /// Labelled bounded contributions; they sum to `finite_part`.
    pub groups: Vec<(String, Cdd)>,
    pub finite_part: Cdd,
    /// The dropped terms, e.g. `["O(|ε2|)", "O(|ε1+ε2|)"]`.
    pub error_order: Vec<String>,
}

impl NearPointValue {
    fn new(principal: Vec<PrincipalTerm>, groups: Vec<(String, Cdd)>, error_order: Vec<String>) -> Self {
        let finite_part = groups.iter().fold(Cdd::ZERO, |a, g| a + g.1);
        NearPointValue { principal, groups, finite_part, error_order }
    }

    /// Principal terms plus finite part.
    pub fn total(&self) -> Cdd {
        self.principal.iter().fold(self.finite_part, |a, p| a + p.value)
    }

    pub fn to_json(&self, digits: u32) -> Value {
        let c = |v: Cdd| json!([v.re.to_decimal(digits), v.im.to_decimal(digits)]);
        json!({
            "principal": self.principal.iter().map(|p| json!({"pole": p.pole, "value": c(p.value)})).collect::<Vec<_>>(),
            "groups": self.groups.iter().map(|(l, v)| json!({"term": l, "value": c(*v)})).collect::<Vec<_>>(),
            "finite_part": c(self.finite_part),
            "total": c(self.total()),
            "error_order": self.error_order,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum NearPoint {
    Value(NearPointValue),
    /// The available formulas leave a term whose limit depends on the approach.
    Indeterminate { center: Vec<i64>, reason: String },
}

fn invalid(reason: impl Into<String>) -> Error {
    Error::InvalidApproach { reason: reason.into() }
}

fn check_len(eps: &ApproachSpec, r: usize) -> Result<()> {
    if eps.eps.len() != r {
        return Err(Error::InvalidArgument(format!("expected {r} offsets, got {}", eps.eps.len())));
    }
    Ok(())
}

/// `ζ(1+x) − 1/x`.
fn zeta_regular_at_one(x: Cdd, cfg: &EvalConfig) -> Result<Cdd> {
    if x.abs() < 0.25 {
        let g = stieltjes_table(40, &cfg.precision)?;
        let mut acc = Cdd::ZERO;
        for v in g.iter().rev() {
            acc = acc * x + Cdd::real(*v);
        }
        Ok(acc)
    } else {
        Ok(zeta(Cdd::ONE + x, &cfg.precision)? - x.recip())
    }
}

/// `c+ε`-style label, dropping a zero constant.
fn shifted(c: i64, eps: &str) -> String {
    if c == 0 {
        eps.to_string()
    } else if eps.starts_with('−') {
        format!("{c}{eps}")
    } else {
        format!("{c}+{eps}")
    }
}

/// `binom(a, k)` for complex `a`.
fn binom(a: Cdd, k: i64) -> Cdd {
    let mut b = Cdd::ONE;
    for i in 0..k {
        b = b * (a - Cdd::from_i64(i)) / Cdd::from_i64(i + 1);
    }
    b
}

/// ζ_2 near `(m_1, m_2)` with `m_2 ≤ 0`:
/// `ζ(m_1+m_2−1+ε_1+ε_2)/(m_2−1+ε_2) + Σ_{k≤M_2(m)} binom(−m_2−ε_2,k) ζ(−k) ζ(m_1+m_2+k+ε_1+ε_2) + O(|ε_2|)`.
///
/// A factor `ζ(1+ε_1+ε_2)` is split into its pole and regular part; the pole counts as
/// principal when its coefficient does not vanish at `ε = 0`. Where such a pole
/// occurs the approach needs `ε_2 ≠ 0` and `ε_1+ε_2 ≠ 0`.
pub fn zeta2_near(m: &[i64], eps: &ApproachSpec, cfg: &EvalConfig) -> Result<NearPointValue> {
    check_len(eps, 2)?;
    if m.len() != 2 || m[1] > 0 {
        return Err(Error::InvalidArgument("zeta2_near needs a center (m1, m2) with m2 ≤ 0".into()));
    }
    let (e1, e2) = (eps.eps[0], eps.eps[1]);
    let x = e1 + e2;
    let mut terms: Vec<(String, Cdd, bool, i64)> = Vec::new();
    // (label, coefficient, coefficient vanishes at ε = 0, ζ center)
    let sum = |c: i64| shifted(c, "ε1+ε2");
    terms.push((format!("ζ({})/({})", sum(m[0] + m[1] - 1), shifted(m[1] - 1, "ε2")), (Cdd::from_i64(m[1] - 1) + e2).recip(), false, m[0] + m[1] - 1));
    for k in 0..=capital_m(m) {
        if k >= 2 && k % 2 == 0 {
            continue;
        }
        let c = binom(Cdd::from_i64(-m[1]) - e2, k) * zeta(Cdd::from_i64(-k), &cfg.precision)?;
        terms.push((format!("binom({},{k})ζ({})ζ({})", shifted(-m[1], "−ε2"), -k, sum(m[0] + m[1] + k)), c, k > -m[1], m[0] + m[1] + k));
    }
    let mut principal = Vec::new();
    let mut groups = Vec::new();
    for (label, c, vanishes, center) in terms {
        if center == 1 {
            if e2.is_zero() || x.is_zero() {
                return Err(invalid("the pole at ζ(1) needs ε2 ≠ 0 and ε1+ε2 ≠ 0"));
            }
            let pole = c / x;
            let regular = c * zeta_regular_at_one(x, cfg)?;
            if vanishes {
                groups.push((label, pole + regular));
            } else {
                principal.push(PrincipalTerm { value: pole, pole: "1/(ε1+ε2)".into() });
                groups.push((format!("{label} − pole"), regular));
            }
        } else {
            groups.push((label, c * zeta(Cdd::from_i64(center) + x, &cfg.precision)?));
        }
    }
    Ok(NearPointValue::new(principal, groups, vec!["O(|ε2|)".into()]))
}

/// ζ_2 near `(m_1, m_2)` with both coordinates `≤ 0`, in three explicit groups:
/// `ζ(m_1+m_2−1)/(m_2−1)`, `Σ_{k≤−m_2} binom(−m_2,k) ζ(−k) ζ(m_1+m_2+k)`, and
/// `((−1)^K/K!) (m_2+ε_2)⋯(−m_1+ε_2)/(ε_1+ε_2) · ζ(m_1+m_2−1)` with `K = 1−m_1−m_2`,
/// up to `O(|ε_2|) + O(|ε_1+ε_2|)`. Only `ε_1+ε_2 ≠ 0` is required.
pub fn zeta2_corollary(m: &[i64], eps: &ApproachSpec, cfg: &EvalConfig) -> Result<NearPointValue> {
    check_len(eps, 2)?;
    if m.len() != 2 || m[0] > 0 || m[1] > 0 {
        return Err(Error::InvalidArgument("zeta2_corollary needs m1 ≤ 0 and m2 ≤ 0".into()));
    }
    let (m1, m2) = (m[0], m[1]);
    let (e1, e2) = (eps.eps[0], eps.eps[1]);
    let x = e1 + e2;
    if x.is_zero() {
        return Err(invalid("ε1+ε2 = 0"));
    }
    let ctx = &cfg.precision;
    let zm = zeta(Cdd::from_i64(m1 + m2 - 1), ctx)?;
    let g1 = zm / Cdd::from_i64(m2 - 1);
    let mut g2 = Cdd::ZERO;
    for k in 0..=-m2 {
        g2 += binom(Cdd::from_i64(-m2), k) * zeta(Cdd::from_i64(-k), ctx)? * zeta(Cdd::from_i64(m1 + m2 + k), ctx)?;
    }
    let kk = 1 - m1 - m2;
    let mut poly = Cdd::ONE;
    for j in m2..=-m1 {
        poly *= Cdd::from_i64(j) + e2;
    }
    let mut fact = Cdd::ONE;
    for j in 2..=kk {
        fact *= Cdd::from_i64(j);
    }
    let sign = if kk % 2 == 0 { Cdd::ONE } else { -Cdd::ONE };
    let g3 = sign * poly / (fact * x) * zm;
    let groups = vec![
        (format!("ζ({})/({})", m1 + m2 - 1, m2 - 1), g1),
        (format!("Σ_{{k≤{}}} binom({},k)ζ(−k)ζ({}+k)", -m2, -m2, m1 + m2), g2),
        (format!("(−1)^{kk}/{kk}! · Π_{{j={m2}}}^{{{}}}(j+ε2)/(ε1+ε2) · ζ({})", -m1, m1 + m2 - 1), g3),
    ];
    Ok(NearPointValue::new(Vec::new(), groups, vec!["O(|ε2|)".into(), "O(|ε1+ε2|)".into()]))
}

/// Terms the corollary drops, evaluated at `ε = 0`: the summands with
/// `−m_2 < k ≤ −m_1−m_2` and the γ-term. Each is exactly zero.
pub fn corollary_dropped_terms(m: &[i64], cfg: &EvalConfig) -> Result<Vec<(String, Cdd)>> {
    let (m1, m2) = (m[0], m[1]);
    let ctx = &cfg.precision;
    let mut out = Vec::new();
    for k in (-m2 + 1)..=(-m1 - m2) {
        let v = binom(Cdd::from_i64(-m2), k) * zeta(Cdd::from_i64(-k), ctx)? * zeta(Cdd::from_i64(m1 + m2 + k), ctx)?;
        out.push((format!("k = {k}"), v));
    }
    let mut prod = Cdd::ONE;
    for j in m2..=-m1 {
        prod *= Cdd::from_i64(j);
    }
    let gamma = Cdd::real(stieltjes_table(0, ctx)?[0]);
    out.push(("γ-term".into(), prod * zeta(Cdd::from_i64(m1 + m2 - 1), ctx)? * gamma));
    Ok(out)
}

/// ζ_2 at `center + eps` for a factor inside a depth-three formula.
fn zeta2_piece(center: [i64; 2], eps: [Cdd; 2], cfg: &EvalConfig) -> Result<(Cdd, bool, Vec<String>)> {
    if center[1] <= 0 {
        let v = zeta2_near(&center, &ApproachSpec::new(eps.to_vec()), cfg)?;
        return Ok((v.total(), !v.principal.is_empty(), v.error_order));
    }
    let s = [Cdd::from_i64(center[0]) + eps[0], Cdd::from_i64(center[1]) + eps[1]];
    let v = ez_eval_mb(&s, cfg).map_err(|e| match e {
        Error::OnSingularHyperplane { hyperplane } => invalid(format!("approach meets {hyperplane}")),
        other => other,
    })?;
    let c = [Cdd::from_i64(center[0]), Cdd::from_i64(center[1])];
    Ok((v, singular_hyperplane(&c).is_some(), Vec::new()))
}

struct Collector {
    principal: Vec<PrincipalTerm>,
    groups: Vec<(String, Cdd)>,
    errors: Vec<String>,
}

impl Collector {
    fn push(&mut self, label: String, value: Cdd, singular: bool, errors: Vec<String>) {
        if singular {
            self.principal.push(PrincipalTerm { value, pole: label });
        } else {
            self.groups.push((label, value));
        }
        for e in errors {
            if !self.errors.contains(&e) {
                self.errors.push(e);
            }
        }
    }
}

fn eps_label(i: usize) -> String {
    format!("ε{i}")
}

/// Recursion in the last variable with the integral dropped; needs `m_3 ≤ 0`.
fn zeta3_recursion(m: [i64; 3], e: [Cdd; 3], names: [usize; 3], cfg: &EvalConfig, out: &mut Collector, scale: Cdd) -> Result<()> {
    let ctx = &cfg.precision;
    let s3 = Cdd::from_i64(m[2]) + e[2];
    let merged_eps = e[1] + e[2];
    let (a, sa, ea) = zeta2_piece([m[0], m[1] + m[2] - 1], [e[0], merged_eps], cfg)?;
    let tag = |c: i64| format!("ζ_2(s{},s{}+s{}{c:+})", names[0], names[1], names[2]);
    out.push(format!("{}/(s{}−1)", tag(-1), names[2]), scale * a / (s3 - Cdd::ONE), sa, ea);
    for k in 0..=capital_m(&m) {
        if k >= 2 && k % 2 == 0 {
            continue;
        }
        let c = binom(-s3, k) * zeta(Cdd::from_i64(-k), ctx)?;
        let (b, sb, eb) = zeta2_piece([m[0], m[1] + m[2] + k], [e[0], merged_eps], cfg)?;
        out.push(format!("binom(−s{},{k})ζ(−{k}){}", names[2], tag(k)), scale * c * b, sb, eb);
    }
    let o = format!("O(|{}|)", eps_label(names[2]));
    if !out.errors.contains(&o) {
        out.errors.push(o);
    }
    Ok(())
}

/// ζ_3 near an integer point treated by the available formulas.
///
/// `m_3 ≤ 0`: recursion in `s_3`. `m_2 ≤ 0, m_3 ≥ 2`: the stuffle identity
/// `ζ_3(s_1,s_2,s_3) = ζ(s_3)ζ_2(s_1,s_2) − ζ_2(s_1+s_3,s_2) − ζ_3(s_1,s_3,s_2) − ζ_2(s_1,s_2+s_3) − ζ_3(s_3,s_1,s_2)`.
/// `m_2 ≤ 0, m_3 = 1`: [`NearPoint::Indeterminate`].
pub fn zeta3_near(m: &[i64], eps: &ApproachSpec, cfg: &EvalConfig) -> Result<NearPoint> {
    check_len(eps, 3)?;
    if m.len() != 3 {
        return Err(Error::InvalidArgument("zeta3_near needs a depth-three center".into()));
    }
    let mm = [m[0], m[1], m[2]];
    let e = [eps.eps[0], eps.eps[1], eps.eps[2]];
    if mm[1] <= 0 && mm[2] == 1 {
        return Ok(NearPoint::Indeterminate {
            center: m.to_vec(),
            reason: "ζ(s3)·ζ_2(s1,s2) leaves a term O(|ε2|)/(s3−1); the limit depends on the approach".into(),
        });
    }
    let mut out = Collector { principal: Vec::new(), groups: Vec::new(), errors: Vec::new() };
    if mm[2] <= 0 {
        zeta3_recursion(mm, e, [1, 2, 3], cfg, &mut out, Cdd::ONE)?;
    } else if mm[1] <= 0 && mm[2] >= 2 {
        let ctx = &cfg.precision;
        let z3 = zeta(Cdd::from_i64(mm[2]) + e[2], ctx)?;
        let (a, sa, ea) = zeta2_piece([mm[0], mm[1]], [e[0], e[1]], cfg)?;
        out.push("ζ(s3)ζ_2(s1,s2)".into(), z3 * a, sa, ea);
        let (b, sb, eb) = zeta2_piece([mm[0] + mm[2], mm[1]], [e[0] + e[2], e[1]], cfg)?;
        out.push("−ζ_2(s1+s3,s2)".into(), -b, sb, eb);
        zeta3_recursion([mm[0], mm[2], mm[1]], [e[0], e[2], e[1]], [1, 3, 2], cfg, &mut out, -Cdd::ONE)?;
        let (c, sc, ec) = zeta2_piece([mm[0], mm[1] + mm[2]], [e[0], e[1] + e[2]], cfg)?;
        out.push("−ζ_2(s1,s2+s3)".into(), -c, sc, ec);
        zeta3_recursion([mm[2], mm[0], mm[1]], [e[2], e[0], e[1]], [3, 1, 2], cfg, &mut out, -Cdd::ONE)?;
    } else {
        return Err(Error::UnsupportedCenter { center: format!("{m:?}") });
    }
    Ok(NearPoint::Value(NearPointValue::new(out.principal, out.groups, out.errors)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corollary_groups_at_origin() {
        let cfg = EvalConfig::default();
        let t = 1e-3;
        let v = zeta2_corollary(&[0, 0], &ApproachSpec::real(&[t, t]), &cfg).unwrap();
        let want = [1.0 / 12.0, 0.25, 1.0 / 24.0];
        for (g, w) in v.groups.iter().zip(want) {
            assert!((g.1 - Cdd::from_f64(w, 0.0)).abs() < 1e-15, "{} = {}", g.0, g.1);
        }
        assert!((v.finite_part - Cdd::from_f64(0.375, 0.0)).abs() < 1e-15);
    }

    #[test]
    fn guards() {
        let cfg = EvalConfig::default();
        assert!(matches!(zeta2_corollary(&[0, 0], &ApproachSpec::real(&[1e-3, -1e-3]), &cfg), Err(Error::InvalidApproach { .. })));
        assert!(matches!(zeta2_near(&[2, 0], &ApproachSpec::real(&[1e-3, 0.0]), &cfg), Err(Error::InvalidApproach { .. })));
        assert!(matches!(zeta3_near(&[1, 0, 1], &ApproachSpec::real(&[1e-3; 3]), &cfg), Ok(NearPoint::Indeterminate { .. })));
        assert!(matches!(zeta3_near(&[1, 1, 1], &ApproachSpec::real(&[1e-3; 3]), &cfg), Err(Error::UnsupportedCenter { .. })));
    }
}
