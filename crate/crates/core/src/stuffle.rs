//! Harmonic (stuffle) product of multiple zeta terms and the rewriting plan for
//! expansions at positive integer points.
//!
//! Arguments are affine forms in the ambient variables `s_1..s_r`. The product of two
//! terms splits the joint summation range on the largest index, which gives the
//! quasi-shuffle recursion on last letters:
//! `(a,x)*(b,y) = (a*(b,y), x) + ((a,x)*b, y) + (a*b, x+y)`.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// `Σ c_i s_i + shift` with non-negative integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineForm {
    pub coeffs: Vec<u32>,
    pub shift: i64,
}

impl AffineForm {
    /// The variable `s_i` (1-based) among `r`.
    pub fn var(r: usize, i: usize) -> Self {
        let mut coeffs = vec![0; r];
        coeffs[i - 1] = 1;
        AffineForm { coeffs, shift: 0 }
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn plus(&self, o: &AffineForm) -> AffineForm {
        AffineForm { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(), shift: self.shift + o.shift }
    }

    pub fn shifted(&self, k: i64) -> AffineForm {
        AffineForm { coeffs: self.coeffs.clone(), shift: self.shift + k }
    }

    /// Value at an integer point.
    pub fn at_integer(&self, m: &[i64]) -> i64 {
        self.coeffs.iter().zip(m).map(|(&c, &x)| c as i64 * x).sum::<i64>() + self.shift
    }

    pub fn at(&self, s: &[crate::dd::Cdd]) -> crate::dd::Cdd {
        let mut acc = crate::dd::Cdd::from_i64(self.shift);
        for (&c, x) in self.coeffs.iter().zip(s) {
            if c != 0 {
                acc += x.mul_f64(c as f64);
            }
        }
        acc
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            match c {
                0 => {}
                1 => parts.push(format!("s{}", i + 1)),
                _ => parts.push(format!("{c}s{}", i + 1)),
            }
        }
        let mut out = parts.join("+");
        if self.shift > 0 {
            out += &format!("+{}", self.shift);
        } else if self.shift < 0 {
            out += &format!("{}", self.shift);
        }
        if out.is_empty() {
            out.push('0');
        }
        write!(f, "{out}")
    }
}

/// `ζ_depth(args)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ZetaTerm {
    pub depth: usize,
    pub args: Vec<AffineForm>,
}

impl ZetaTerm {
    pub fn new(args: Vec<AffineForm>) -> Self {
        ZetaTerm { depth: args.len(), args }
    }

    /// `ζ_r(s_1,…,s_r)`.
    pub fn identity(r: usize) -> Self {
        ZetaTerm::new((1..=r).map(|i| AffineForm::var(r, i)).collect())
    }

    /// `ζ(s_{from}, …, s_{to})` inside `r` ambient variables (1-based, inclusive).
    pub fn range(r: usize, from: usize, to: usize) -> Self {
        ZetaTerm::new((from..=to).map(|i| AffineForm::var(r, i)).collect())
    }

    pub fn center(&self, m: &[i64]) -> Vec<i64> {
        self.args.iter().map(|a| a.at_integer(m)).collect()
    }
}

impl fmt::Display for ZetaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.args.iter().map(|x| x.to_string()).collect();
        if self.depth == 1 {
            write!(f, "ζ({})", a[0])
        } else {
            write!(f, "ζ_{}({})", self.depth, a.join(","))
        }
    }
}

/// Integer multiple of a product of zeta terms (factors kept sorted).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Monomial {
    pub coeff: i64,
    pub factors: Vec<ZetaTerm>,
}

/// Formal integer combination of products of zeta terms, kept normalized.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StuffleExpression {
    pub terms: Vec<Monomial>,
}

fn sort_key(f: &[ZetaTerm]) -> (usize, usize, Vec<ZetaTerm>) {
    (f.len(), f.iter().map(|t| t.depth).max().unwrap_or(0), f.to_vec())
}

impl StuffleExpression {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(coeff: i64, factors: Vec<ZetaTerm>) -> Self {
        StuffleExpression { terms: vec![Monomial { coeff, factors }] }.normalized()
    }

    /// Merge equal products, drop zeros, sort by (number of factors, depth, args).
    pub fn normalized(&self) -> Self {
        let mut acc: BTreeMap<(usize, usize, Vec<ZetaTerm>), i64> = BTreeMap::new();
        for t in &self.terms {
            let mut f = t.factors.clone();
            f.sort();
            *acc.entry(sort_key(&f)).or_insert(0) += t.coeff;
        }
        let mut terms: Vec<Monomial> =
            acc.into_iter().filter(|(_, c)| *c != 0).map(|((_, _, factors), coeff)| Monomial { coeff, factors }).collect();
        // single-factor terms: higher depth first
        terms.sort_by(|a, b| {
            let ka = (a.factors.len(), std::cmp::Reverse(a.factors.iter().map(|t| t.depth).max().unwrap_or(0)), &a.factors);
            let kb = (b.factors.len(), std::cmp::Reverse(b.factors.iter().map(|t| t.depth).max().unwrap_or(0)), &b.factors);
            ka.cmp(&kb)
        });
        StuffleExpression { terms }
    }

    pub fn add(&self, o: &StuffleExpression) -> Self {
        let mut t = self.terms.clone();
        t.extend(o.terms.iter().cloned());
        StuffleExpression { terms: t }.normalized()
    }

    pub fn scale(&self, k: i64) -> Self {
        StuffleExpression { terms: self.terms.iter().map(|m| Monomial { coeff: m.coeff * k, factors: m.factors.clone() }).collect() }
            .normalized()
    }

    pub fn sub(&self, o: &StuffleExpression) -> Self {
        self.add(&o.scale(-1))
    }

    pub fn is_zero(&self) -> bool {
        self.normalized().terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the single-factor term `t`.
    pub fn coefficient_of(&self, t: &ZetaTerm) -> i64 {
        self.terms.iter().filter(|m| m.factors.len() == 1 && &m.factors[0] == t).map(|m| m.coeff).sum()
    }

    /// Numerical value given an evaluator for single terms.
    pub fn evaluate<F>(&self, mut eval: F) -> Result<crate::dd::Cdd>
    where
        F: FnMut(&ZetaTerm) -> Result<crate::dd::Cdd>,
    {
        let mut acc = crate::dd::Cdd::ZERO;
        for m in &self.terms {
            let mut p = crate::dd::Cdd::from_i64(m.coeff);
            for f in &m.factors {
                p *= eval(f)?;
            }
            acc += p;
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("expression serializes")
    }
}

impl fmt::Display for StuffleExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, m) in self.terms.iter().enumerate() {
            let body: Vec<String> = m.factors.iter().map(|t| t.to_string()).collect();
            let sign = if m.coeff < 0 { "-" } else if i > 0 { "+" } else { "" };
            let mag = m.coeff.unsigned_abs();
            let sep = if i > 0 { " " } else { "" };
            if mag == 1 {
                write!(f, "{sep}{sign}{}{}", if i > 0 { " " } else { "" }, body.join("·"))?;
            } else {
                write!(f, "{sep}{sign}{}{mag}·{}", if i > 0 { " " } else { "" }, body.join("·"))?;
            }
        }
        Ok(())
    }
}

fn quasi_shuffle(a: &[AffineForm], b: &[AffineForm], out: &mut Vec<Vec<AffineForm>>) {
    if a.is_empty() {
        out.push(b.to_vec());
        return;
    }
    if b.is_empty() {
        out.push(a.to_vec());
        return;
    }
    let (x, ap) = a.split_last().unwrap();
    let (y, bp) = b.split_last().unwrap();
    let mut tmp = Vec::new();
    quasi_shuffle(ap, b, &mut tmp);
    for mut w in tmp.drain(..) {
        w.push(x.clone());
        out.push(w);
    }
    quasi_shuffle(a, bp, &mut tmp);
    for mut w in tmp.drain(..) {
        w.push(y.clone());
        out.push(w);
    }
    quasi_shuffle(ap, bp, &mut tmp);
    for mut w in tmp.drain(..) {
        w.push(x.plus(y));
        out.push(w);
    }
}

/// The terms of `a · b` expanded as single zeta terms.
pub fn stuffle_terms(a: &ZetaTerm, b: &ZetaTerm) -> StuffleExpression {
    let mut words = Vec::new();
    quasi_shuffle(&a.args, &b.args, &mut words);
    StuffleExpression { terms: words.into_iter().map(|w| Monomial { coeff: 1, factors: vec![ZetaTerm::new(w)] }).collect() }
        .normalized()
}

/// `ζ_j(s_1..s_j) · ζ_{r−j}(s_{j+1}..s_r)` decomposed into single zeta terms.
pub fn stuffle_product(j: usize, r: usize) -> Result<StuffleExpression> {
    if j == 0 || j >= r {
        return Err(Error::InvalidArgument(format!("need 1 ≤ j ≤ r−1, got j={j}, r={r}")));
    }
    Ok(stuffle_terms(&ZetaTerm::range(r, 1, j), &ZetaTerm::range(r, j + 1, r)))
}

/// `target = a·b − (every other term of the decomposition of a·b)`.
pub fn isolate_in_product(a: &ZetaTerm, b: &ZetaTerm, target: &ZetaTerm) -> Result<StuffleExpression> {
    let terms = stuffle_terms(a, b);
    match terms.coefficient_of(target) {
        0 => return Err(Error::TargetAbsent),
        1 => {}
        _ => return Err(Error::TargetAmbiguous),
    }
    let product = StuffleExpression::single(1, vec![a.clone(), b.clone()]);
    let target_expr = StuffleExpression::single(1, vec![target.clone()]);
    Ok(product.sub(&terms.sub(&target_expr)))
}

/// Isolation within the product `ζ_j(s_1..s_j)·ζ_{r−j}(s_{j+1}..s_r)`.
pub fn isolate_target(j: usize, r: usize, target: &ZetaTerm) -> Result<StuffleExpression> {
    if j == 0 || j >= r {
        return Err(Error::InvalidArgument(format!("need 1 ≤ j ≤ r−1, got j={j}, r={r}")));
    }
    isolate_in_product(&ZetaTerm::range(r, 1, j), &ZetaTerm::range(r, j + 1, r), target)
}

/// Which step of the induction applies at a positive integer point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaseTag {
    /// `m_j > 1` and every later coordinate equals 1 (`j = r`: `m_r > 1`).
    C(usize),
    AllOnes,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseTag::C(j) => write!(f, "C{j}"),
            CaseTag::AllOnes => write!(f, "ALL_ONES"),
        }
    }
}

pub fn classify_case(m: &[i64]) -> Result<CaseTag> {
    if let Some((i, &v)) = m.iter().enumerate().find(|(_, &v)| v < 1) {
        return Err(Error::NotPositive { index: i + 1, value: v });
    }
    match m.iter().rposition(|&v| v > 1) {
        Some(j) => Ok(CaseTag::C(j + 1)),
        None => Ok(CaseTag::AllOnes),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    StuffleIsolate,
    TaylorExpand,
    Lse2Expand,
    DepthReduce,
}

/// One rewrite or leaf-evaluation step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanStep {
    pub rule: Rule,
    pub term: ZetaTerm,
    /// Value of the term's arguments at the expansion center.
    pub center: Vec<i64>,
    pub case: CaseTag,
    /// For `stuffle-isolate`: the identity `term = expression`.
    pub expression: Option<StuffleExpression>,
    /// `(depth, depth − j)`, strictly smaller for every term an isolation produces.
    pub measure: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionPlan {
    pub center: Vec<i64>,
    pub steps: Vec<PlanStep>,
}

fn measure(depth: usize, case: CaseTag) -> (usize, usize) {
    match case {
        CaseTag::C(j) => (depth, depth - j),
        CaseTag::AllOnes => (depth, 0),
    }
}

fn position_of(u: &ZetaTerm, a: &AffineForm) -> usize {
    u.args
        .iter()
        .position(|x| x.coeffs.iter().zip(&a.coeffs).all(|(p, q)| p >= q))
        .unwrap_or(u.depth)
}

/// Product split used when `term` is in case `C_j` with `j < depth`.
pub fn split_factors(term: &ZetaTerm, j: usize) -> (ZetaTerm, ZetaTerm) {
    (ZetaTerm::new(term.args[..j].to_vec()), ZetaTerm::new(term.args[j..].to_vec()))
}

impl ExpansionPlan {
    /// The step that expands `t` (depth-reduce markers are skipped).
    pub fn step_for(&self, t: &ZetaTerm) -> Option<&PlanStep> {
        self.steps.iter().find(|s| &s.term == t && s.rule != Rule::DepthReduce)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plan serializes")
    }
}

/// Rewriting plan for `ζ_r(s)` at the positive integer point `m`.
///
/// Steps appear in the order the induction visits them: an isolation, then the other
/// depth-r terms left to right, then the lower-depth terms, then the two product
/// factors. Each distinct term appears once.
pub fn expansion_plan(m: &[i64]) -> Result<ExpansionPlan> {
    classify_case(m)?;
    let mut plan = ExpansionPlan { center: m.to_vec(), steps: Vec::new() };
    visit(&ZetaTerm::identity(m.len()), m, &mut plan, None)?;
    Ok(plan)
}

fn visit(t: &ZetaTerm, m: &[i64], plan: &mut ExpansionPlan, parent: Option<(usize, usize)>) -> Result<()> {
    if plan.step_for(t).is_some() {
        return Ok(());
    }
    let c = t.center(m);
    let case = classify_case(&c)?;
    let me = measure(t.depth, case);
    if let Some(p) = parent {
        assert!(me < p, "induction measure must decrease: {me:?} !< {p:?} at {t}");
    }
    let step = |rule, expression| PlanStep { rule, term: t.clone(), center: c.clone(), case, expression, measure: me };
    match case {
        CaseTag::C(j) if j == t.depth => {
            plan.steps.push(step(Rule::TaylorExpand, None));
            Ok(())
        }
        CaseTag::AllOnes => {
            plan.steps.push(step(Rule::Lse2Expand, None));
            Ok(())
        }
        CaseTag::C(j) => {
            let (a, b) = split_factors(t, j);
            let expr = isolate_in_product(&a, &b, t)?;
            plan.steps.push(step(Rule::StuffleIsolate, Some(expr.clone())));
            let singles: Vec<&ZetaTerm> =
                expr.terms.iter().filter(|mono| mono.factors.len() == 1).map(|mono| &mono.factors[0]).collect();
            // left to right: by the position the j-th argument moved to
            let key = &t.args[j - 1];
            let mut ordered = singles.clone();
            ordered.sort_by_key(|u| (position_of(u, key), (*u).clone()));
            for &u in &ordered {
                if u.depth == t.depth && u != t {
                    visit(u, m, plan, Some(me))?;
                }
            }
            for &u in &ordered {
                if u.depth < t.depth && plan.step_for(u).is_none() {
                    let at = plan.steps.len();
                    visit(u, m, plan, Some(me))?;
                    let inner = &plan.steps[at];
                    let marker = PlanStep { rule: Rule::DepthReduce, expression: None, ..inner.clone() };
                    plan.steps.insert(at, marker);
                }
            }
            visit(&a, m, plan, Some(me))?;
            visit(&b, m, plan, Some(me))?;
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_product_terms() {
        let e = stuffle_product(1, 2).unwrap();
        assert_eq!(e.len(), 3);
        assert_eq!(e.to_string(), "ζ_2(s2,s1) + ζ_2(s1,s2) + ζ(s1+s2)");
    }

    #[test]
    fn classify() {
        assert_eq!(classify_case(&[2, 1, 1]).unwrap(), CaseTag::C(1));
        assert_eq!(classify_case(&[3, 2]).unwrap(), CaseTag::C(2));
        assert_eq!(classify_case(&[1, 1]).unwrap(), CaseTag::AllOnes);
        assert!(matches!(classify_case(&[1, 0]), Err(Error::NotPositive { index: 2, value: 0 })));
    }
}

#[cfg(test)]
mod plan_tests {
    use super::*;

    #[test]
    fn example_plan_order() {
        let p = expansion_plan(&[2, 1, 1]).unwrap();
        let isolations: Vec<String> =
            p.steps.iter().filter(|s| s.rule == Rule::StuffleIsolate).map(|s| s.term.to_string()).collect();
        assert_eq!(isolations, ["ζ_3(s1,s2,s3)", "ζ_3(s2,s1,s3)", "ζ_2(s1+s2,s3)"]);
        for s in &p.steps {
            eprintln!("{:?} {} {:?} {}", s.rule, s.term, s.center, s.expression.as_ref().map(|e| e.to_string()).unwrap_or_default());
        }
        let last = p.steps.last().unwrap();
        assert_eq!(last.rule, Rule::Lse2Expand);
        assert_eq!(last.term.to_string(), "ζ_2(s2,s3)");
    }
}
