//! Extended Laurent expansions: Taylor numerators over products of linear forms.
//!
//! A term `N(δ) / Π_k L_k(s)` stores `N` as a jet in `δ = s − m` truncated at total
//! order `N`, and each `L_k(s) = Σ_i a_i s_i − c` symbolically. The linear forms in a
//! denominator need not be coordinates, and numerator and denominator variables need
//! not match.

use crate::dd::{Cdd, Dd};
use crate::error::{Error, Result};
use crate::jet::{lexicographic_indices, multi_index_key, shape, Jet};
use crate::nested::PoleSum;
use crate::stuffle::AffineForm;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use std::fmt;

/// `Σ_i coeffs_i s_i − c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearFactor {
    pub coeffs: Vec<i64>,
    pub c: i64,
}

impl LinearFactor {
    /// `s_j + … + s_r − c` (1-based `j`).
    pub fn suffix(r: usize, j: usize, c: i64) -> Self {
        let coeffs = (1..=r).map(|i| if i >= j { 1 } else { 0 }).collect();
        LinearFactor { coeffs, c }
    }

    /// The `j` for which this is `s(j,r) − c`, if it has that shape.
    pub fn suffix_start(&self) -> Option<usize> {
        let j = self.coeffs.iter().position(|&a| a != 0)?;
        if self.coeffs[j..].iter().all(|&a| a == 1) {
            Some(j + 1)
        } else {
            None
        }
    }

    /// The form through the center `m` with the given displacement coefficients.
    pub fn through(coeffs: Vec<i64>, m: &[i64]) -> Self {
        let c = coeffs.iter().zip(m).map(|(a, x)| a * x).sum();
        LinearFactor { coeffs, c }
    }

    pub fn eval(&self, s: &[Cdd]) -> Cdd {
        let mut acc = Cdd::from_i64(-self.c);
        for (&a, x) in self.coeffs.iter().zip(s) {
            if a != 0 {
                acc += x.mul_f64(a as f64);
            }
        }
        acc
    }

    pub fn vanishes_at(&self, m: &[i64]) -> bool {
        self.coeffs.iter().zip(m).map(|(a, x)| a * x).sum::<i64>() == self.c
    }

    fn to_json(&self) -> Value {
        match self.suffix_start() {
            Some(j) => json!({"j": j, "c": self.c}),
            None => json!({"coeffs": self.coeffs, "c": self.c}),
        }
    }

    fn from_json(v: &Value, r: usize) -> Result<Self> {
        let bad = || Error::InvalidArgument("malformed linear factor".into());
        let c = v.get("c").and_then(Value::as_i64).ok_or_else(bad)?;
        if let Some(j) = v.get("j").and_then(Value::as_u64) {
            if j == 0 || j as usize > r {
                return Err(bad());
            }
            return Ok(LinearFactor::suffix(r, j as usize, c));
        }
        let coeffs: Vec<i64> =
            v.get("coeffs").and_then(Value::as_array).ok_or_else(bad)?.iter().map(|x| x.as_i64().ok_or_else(bad)).collect::<Result<_>>()?;
        if coeffs.len() != r {
            return Err(bad());
        }
        Ok(LinearFactor { coeffs, c })
    }
}

impl fmt::Display for LinearFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &a) in self.coeffs.iter().enumerate() {
            match a {
                0 => {}
                1 => parts.push(format!("s{}", i + 1)),
                -1 => parts.push(format!("-s{}", i + 1)),
                _ => parts.push(format!("{a}s{}", i + 1)),
            }
        }
        let mut out = parts.join("+").replace("+-", "-");
        if self.c > 0 {
            out += &format!("-{}", self.c);
        } else if self.c < 0 {
            out += &format!("+{}", -self.c);
        }
        write!(f, "({out})")
    }
}

#[derive(Clone, Debug)]
pub struct FractionTerm {
    /// Sorted; repeated factors mean higher-order poles.
    pub denominator: Vec<LinearFactor>,
    pub numerator: Jet,
}

#[derive(Clone, Debug)]
pub struct LaurentExpansion {
    pub center: Vec<i64>,
    pub order: usize,
    pub digits: u32,
    pub terms: Vec<FractionTerm>,
}

impl LaurentExpansion {
    pub fn zero(center: &[i64], order: usize, digits: u32) -> Self {
        LaurentExpansion { center: center.to_vec(), order, digits, terms: Vec::new() }
    }

    pub fn from_jet(center: &[i64], numerator: Jet, digits: u32) -> Self {
        let order = numerator.order();
        LaurentExpansion { center: center.to_vec(), order, digits, terms: vec![FractionTerm { denominator: vec![], numerator }] }
    }

    /// Convert a pole sum whose poles are linear forms in `δ = s − center`.
    pub fn from_pole_sum(center: &[i64], ps: PoleSum, order: usize, digits: u32) -> Self {
        let mut e = LaurentExpansion::zero(center, order, digits);
        for (key, num) in ps.terms {
            let denominator = key.into_iter().map(|f| LinearFactor::through(f, center)).collect();
            e.terms.push(FractionTerm { denominator, numerator: num });
        }
        e.normalized()
    }

    pub fn nvars(&self) -> usize {
        self.center.len()
    }

    pub fn shape(&self) -> std::sync::Arc<crate::jet::Shape> {
        shape(self.nvars(), self.order)
    }

    /// Sort denominators, merge terms over equal denominators, drop zero numerators.
    pub fn normalized(mut self) -> Self {
        let mut acc: BTreeMap<Vec<LinearFactor>, Jet> = BTreeMap::new();
        for mut t in self.terms.drain(..) {
            t.denominator.sort();
            match acc.get_mut(&t.denominator) {
                Some(j) => j.axpy(Cdd::ONE, &t.numerator),
                None => {
                    acc.insert(t.denominator, t.numerator);
                }
            }
        }
        // fewest factors (regular part) last, highest pole order first
        let mut terms: Vec<FractionTerm> = acc
            .into_iter()
            .filter(|(_, n)| n.max_abs() != 0.0)
            .map(|(denominator, numerator)| FractionTerm { denominator, numerator })
            .collect();
        terms.sort_by(|a, b| b.denominator.len().cmp(&a.denominator.len()).then_with(|| a.denominator.cmp(&b.denominator)));
        self.terms = terms;
        self
    }

    pub fn add(&self, o: &LaurentExpansion) -> Self {
        self.axpy(Cdd::ONE, o)
    }

    pub fn axpy(&self, k: Cdd, o: &LaurentExpansion) -> Self {
        assert_eq!(self.center, o.center);
        let mut out = self.clone();
        out.order = self.order.min(o.order);
        for t in &o.terms {
            out.terms.push(FractionTerm { denominator: t.denominator.clone(), numerator: t.numerator.scale(k) });
        }
        out.normalized()
    }

    pub fn scale(&self, k: Cdd) -> Self {
        let mut out = self.clone();
        for t in &mut out.terms {
            t.numerator = t.numerator.scale(k);
        }
        out.normalized()
    }

    pub fn mul(&self, o: &LaurentExpansion) -> Self {
        assert_eq!(self.center, o.center);
        let mut out = LaurentExpansion::zero(&self.center, self.order.min(o.order), self.digits.min(o.digits));
        for a in &self.terms {
            for b in &o.terms {
                let mut d = a.denominator.clone();
                d.extend(b.denominator.iter().cloned());
                out.terms.push(FractionTerm { denominator: d, numerator: a.numerator.mul_ref(&b.numerator) });
            }
        }
        out.normalized()
    }

    pub fn mul_jet(&self, j: &Jet) -> Self {
        let mut out = self.clone();
        for t in &mut out.terms {
            t.numerator = t.numerator.mul_ref(j);
        }
        out.normalized()
    }

    /// Multiply by `1/L`.
    pub fn divide_by(&self, l: LinearFactor) -> Self {
        let mut out = self.clone();
        for t in &mut out.terms {
            t.denominator.push(l.clone());
        }
        out.normalized()
    }

    /// Re-express in ambient variables: own variable `w_a = images[a](s)`.
    /// The images must map the ambient center onto this expansion's center.
    pub fn substitute(&self, ambient_center: &[i64], images: &[AffineForm]) -> Result<Self> {
        let r = ambient_center.len();
        if images.len() != self.nvars() {
            return Err(Error::InvalidArgument("substitution arity mismatch".into()));
        }
        for (a, f) in images.iter().enumerate() {
            if f.at_integer(ambient_center) != self.center[a] {
                return Err(Error::InvalidArgument(format!("substitution does not map the center: {f}")));
            }
        }
        let sh = shape(r, self.order);
        let img_jets: Vec<Jet> = images
            .iter()
            .map(|f| {
                let a: Vec<Cdd> = f.coeffs.iter().map(|&c| Cdd::from_i64(c as i64)).collect();
                Jet::linear(&sh, Cdd::ZERO, &a)
            })
            .collect();
        let mut out = LaurentExpansion::zero(ambient_center, self.order, self.digits);
        for t in &self.terms {
            let numerator = t.numerator.substitute(&sh, &img_jets);
            let denominator = t
                .denominator
                .iter()
                .map(|l| {
                    let mut coeffs = vec![0i64; r];
                    let mut c = l.c;
                    for (a, &la) in l.coeffs.iter().enumerate() {
                        if la == 0 {
                            continue;
                        }
                        for (i, &fc) in images[a].coeffs.iter().enumerate() {
                            coeffs[i] += la * fc as i64;
                        }
                        c -= la * images[a].shift;
                    }
                    LinearFactor { coeffs, c }
                })
                .collect();
            out.terms.push(FractionTerm { denominator, numerator });
        }
        Ok(out.normalized())
    }

    /// Lower the numerator order.
    pub fn truncate(&self, order: usize) -> Self {
        let sh = shape(self.nvars(), order.min(self.order));
        let mut out = self.clone();
        out.order = sh.order;
        for t in &mut out.terms {
            t.numerator = t.numerator.reshape(&sh);
        }
        out
    }

    fn displacement(&self, s: &[Cdd]) -> Vec<Cdd> {
        s.iter().zip(&self.center).map(|(x, &m)| *x - Cdd::from_i64(m)).collect()
    }

    /// Value of the truncated expansion at `s` (off the denominator zero set).
    pub fn evaluate(&self, s: &[Cdd]) -> Cdd {
        let d = self.displacement(s);
        let mut acc = Cdd::ZERO;
        for t in &self.terms {
            let mut v = t.numerator.eval_at(&d);
            for l in &t.denominator {
                v /= l.eval(s);
            }
            acc += v;
        }
        acc
    }

    /// Size of the highest included order at `s`: `Σ_terms |N_top(δ)| / Π|L(s)|`.
    pub fn last_order_magnitude(&self, s: &[Cdd]) -> f64 {
        let d = self.displacement(s);
        let mut acc = 0.0;
        for t in &self.terms {
            let mut top = Cdd::ZERO;
            for (m, c) in t.numerator.iter() {
                if m.iter().map(|&e| e as usize).sum::<usize>() == self.order && !c.is_zero() {
                    let mut v = *c;
                    for (k, &e) in m.iter().enumerate() {
                        if e > 0 {
                            v *= d[k].powi(e as i32);
                        }
                    }
                    top += v;
                }
            }
            let mut den = 1.0;
            for l in &t.denominator {
                den *= l.eval(s).abs();
            }
            acc += top.abs() / den;
        }
        acc
    }

    /// The term over exactly this (sorted) denominator.
    pub fn term(&self, denominator: &[LinearFactor]) -> Option<&FractionTerm> {
        let mut d = denominator.to_vec();
        d.sort();
        self.terms.iter().find(|t| t.denominator == d)
    }

    pub fn to_json(&self) -> Value {
        let idx = lexicographic_indices(self.nvars(), self.order);
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|t| {
                let mut num = Map::new();
                for m in &idx {
                    let c = t.numerator.coeff(m);
                    num.insert(multi_index_key(m), json!([c.re.to_decimal(self.digits), c.im.to_decimal(self.digits)]));
                }
                json!({
                    "denominator": t.denominator.iter().map(LinearFactor::to_json).collect::<Vec<_>>(),
                    "numerator": Value::Object(num),
                })
            })
            .collect();
        json!({"center": self.center, "order": self.order, "digits": self.digits, "terms": terms})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::InvalidArgument(format!("malformed expansion JSON: {what}"));
        let center: Vec<i64> = v
            .get("center")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("center"))?
            .iter()
            .map(|x| x.as_i64().ok_or_else(|| bad("center")))
            .collect::<Result<_>>()?;
        let order = v.get("order").and_then(Value::as_u64).ok_or_else(|| bad("order"))? as usize;
        let digits = v.get("digits").and_then(Value::as_u64).ok_or_else(|| bad("digits"))? as u32;
        let r = center.len();
        let sh = shape(r, order);
        let mut out = LaurentExpansion::zero(&center, order, digits);
        for t in v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("terms"))? {
            let denominator = t
                .get("denominator")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("denominator"))?
                .iter()
                .map(|f| LinearFactor::from_json(f, r))
                .collect::<Result<Vec<_>>>()?;
            let mut numerator = Jet::zero(&sh);
            for (k, val) in t.get("numerator").and_then(Value::as_object).ok_or_else(|| bad("numerator"))? {
                let m: Vec<u8> = k.split(',').map(|x| x.trim().parse::<u8>().map_err(|_| bad("index"))).collect::<Result<_>>()?;
                let pair = val.as_array().ok_or_else(|| bad("value"))?;
                let parse = |x: &Value| x.as_str().and_then(Dd::parse).ok_or_else(|| bad("number"));
                if pair.len() != 2 || m.len() != r {
                    return Err(bad("value"));
                }
                numerator.set_coeff(&m, Cdd::new(parse(&pair[0])?, parse(&pair[1])?));
            }
            out.terms.push(FractionTerm { denominator, numerator });
        }
        Ok(out.normalized())
    }
}
