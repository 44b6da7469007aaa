//! Truncated multivariate Taylor series ("jets") over complex double-double.
//!
//! A jet in `nvars` variables of order `N` stores every coefficient of total degree
//! at most `N`; products are truncated at degree `N`. Monomials are ordered by total
//! degree, then lexicographically, so the coefficients of degree `≤ d` form a prefix.
//!
//! The `Num` trait lets the same numerical code run on plain complex numbers and on
//! jets, which is how derivatives and Taylor coefficients are obtained throughout.

use crate::dd::{Cdd, Dd};
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex};

pub type MultiIndex = Vec<u8>;

#[derive(Debug)]
pub struct Shape {
    pub nvars: usize,
    pub order: usize,
    monos: Vec<MultiIndex>,
    degree: Vec<usize>,
    /// `prefix[d]` = number of monomials of degree `≤ d`
    prefix: Vec<usize>,
    /// `add[i][j]` = index of mono_i + mono_j, for j < prefix[order - deg_i]
    add: Vec<Vec<u32>>,
    index: HashMap<MultiIndex, usize>,
}

static SHAPES: Lazy<Mutex<HashMap<(usize, usize), Arc<Shape>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// Shared shape descriptor for `nvars` variables truncated at total order `order`.
pub fn shape(nvars: usize, order: usize) -> Arc<Shape> {
    let mut m = SHAPES.lock().unwrap();
    m.entry((nvars, order)).or_insert_with(|| Arc::new(Shape::build(nvars, order))).clone()
}

fn monomials_of_degree(nvars: usize, d: usize, out: &mut Vec<MultiIndex>) {
    fn rec(nvars: usize, left: usize, cur: &mut MultiIndex, out: &mut Vec<MultiIndex>) {
        let i = cur.len();
        if i + 1 == nvars {
            cur.push(left as u8);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for v in (0..=left).rev() {
            cur.push(v as u8);
            rec(nvars, left - v, cur, out);
            cur.pop();
        }
    }
    if nvars == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return;
    }
    let mut cur = Vec::with_capacity(nvars);
    rec(nvars, d, &mut cur, out);
}

impl Shape {
    fn build(nvars: usize, order: usize) -> Shape {
        let mut monos = Vec::new();
        let mut prefix = Vec::with_capacity(order + 1);
        for d in 0..=order {
            monomials_of_degree(nvars, d, &mut monos);
            prefix.push(monos.len());
            if nvars == 0 {
                // only the constant exists; keep prefix flat
            }
        }
        let degree: Vec<usize> = monos.iter().map(|m| m.iter().map(|&x| x as usize).sum()).collect();
        let index: HashMap<MultiIndex, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut add = Vec::with_capacity(monos.len());
        for (i, mi) in monos.iter().enumerate() {
            let lim = prefix[order - degree[i]];
            let row: Vec<u32> = monos[..lim]
                .iter()
                .map(|mj| {
                    let s: MultiIndex = mi.iter().zip(mj).map(|(a, b)| a + b).collect();
                    index[&s] as u32
                })
                .collect();
            add.push(row);
        }
        Shape { nvars, order, monos, degree, prefix, add, index }
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn monomials(&self) -> &[MultiIndex] {
        &self.monos
    }

    pub fn degree_of(&self, i: usize) -> usize {
        self.degree[i]
    }

    pub fn index_of(&self, m: &[u8]) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Number of monomials of total degree at most `d`.
    pub fn count_upto(&self, d: usize) -> usize {
        self.prefix[d.min(self.order)]
    }
}

#[derive(Clone)]
pub struct Jet {
    shape: Arc<Shape>,
    c: Vec<Cdd>,
}

impl fmt::Debug for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (mono, v) in self.shape.monos.iter().zip(&self.c) {
            if !v.is_zero() {
                m.entry(mono, &format!("{:.12}", v));
            }
        }
        m.finish()
    }
}

impl Jet {
    pub fn zero(shape: &Arc<Shape>) -> Jet {
        Jet { shape: shape.clone(), c: vec![Cdd::ZERO; shape.len()] }
    }

    pub fn constant(shape: &Arc<Shape>, v: Cdd) -> Jet {
        let mut j = Jet::zero(shape);
        j.c[0] = v;
        j
    }

    /// `v + δ_i`, the i-th coordinate variable expanded at `v`.
    pub fn variable(shape: &Arc<Shape>, i: usize, v: Cdd) -> Jet {
        Jet::linear(shape, v, &unit(shape.nvars, i))
    }

    /// `v + Σ a_k δ_k`.
    pub fn linear(shape: &Arc<Shape>, v: Cdd, a: &[Cdd]) -> Jet {
        let mut j = Jet::constant(shape, v);
        if shape.order >= 1 {
            for (k, ak) in a.iter().enumerate() {
                let mut m = vec![0u8; shape.nvars];
                m[k] = 1;
                j.c[shape.index[&m]] = *ak;
            }
        }
        j
    }

    pub fn from_coeffs(shape: &Arc<Shape>, c: Vec<Cdd>) -> Jet {
        assert_eq!(c.len(), shape.len());
        Jet { shape: shape.clone(), c }
    }

    pub fn shape(&self) -> &Arc<Shape> {
        &self.shape
    }

    pub fn coeffs(&self) -> &[Cdd] {
        &self.c
    }

    pub fn coeffs_mut(&mut self) -> &mut [Cdd] {
        &mut self.c
    }

    pub fn nvars(&self) -> usize {
        self.shape.nvars
    }

    pub fn order(&self) -> usize {
        self.shape.order
    }

    pub fn constant_term(&self) -> Cdd {
        self.c[0]
    }

    /// Coefficient of `δ^m`; zero when `m` exceeds the truncation order.
    pub fn coeff(&self, m: &[u8]) -> Cdd {
        self.shape.index.get(m).map(|&i| self.c[i]).unwrap_or(Cdd::ZERO)
    }

    pub fn set_coeff(&mut self, m: &[u8], v: Cdd) {
        let i = self.shape.index[m];
        self.c[i] = v;
    }

    /// Coefficients of the degree-one monomials, in variable order.
    pub fn linear_part(&self) -> Vec<Cdd> {
        (0..self.shape.nvars).map(|k| self.coeff(&unit_mono(self.shape.nvars, k))).collect()
    }

    /// True if every coefficient of positive degree is zero.
    pub fn is_constant(&self) -> bool {
        self.c[1..].iter().all(|v| v.is_zero())
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().map(|v| v.abs()).fold(0.0, f64::max)
    }

    pub fn scale(&self, k: Cdd) -> Jet {
        Jet { shape: self.shape.clone(), c: self.c.iter().map(|v| *v * k).collect() }
    }

    pub fn add_const(&self, k: Cdd) -> Jet {
        let mut j = self.clone();
        j.c[0] += k;
        j
    }

    fn check(&self, o: &Jet) {
        debug_assert!(
            Arc::ptr_eq(&self.shape, &o.shape)
                || (self.shape.nvars == o.shape.nvars && self.shape.order == o.shape.order),
            "jet shapes differ"
        );
    }

    pub fn mul_ref(&self, o: &Jet) -> Jet {
        self.check(o);
        let s = &*self.shape;
        let mut out = vec![Cdd::ZERO; s.len()];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let row = &s.add[i];
            for (j, &k) in row.iter().enumerate() {
                let b = o.c[j];
                if b.is_zero() {
                    continue;
                }
                out[k as usize] += *a * b;
            }
        }
        Jet { shape: self.shape.clone(), c: out }
    }

    pub fn add_ref(&self, o: &Jet) -> Jet {
        self.check(o);
        Jet { shape: self.shape.clone(), c: self.c.iter().zip(&o.c).map(|(a, b)| *a + *b).collect() }
    }

    pub fn sub_ref(&self, o: &Jet) -> Jet {
        self.check(o);
        Jet { shape: self.shape.clone(), c: self.c.iter().zip(&o.c).map(|(a, b)| *a - *b).collect() }
    }

    /// In-place `self += k * o`.
    pub fn axpy(&mut self, k: Cdd, o: &Jet) {
        self.check(o);
        for (a, b) in self.c.iter_mut().zip(&o.c) {
            if !b.is_zero() {
                *a += k * *b;
            }
        }
    }

    /// `Σ_k a_k f^k` where `f = self - constant_term`; `a.len()` may exceed the order.
    pub fn compose_series(&self, a: &[Cdd]) -> Jet {
        let n = self.shape.order.min(a.len().saturating_sub(1));
        let mut f = self.clone();
        f.c[0] = Cdd::ZERO;
        // Horner: (((a_n f + a_{n-1}) f + ...) f + a_0)
        let mut acc = Jet::constant(&self.shape, a[n]);
        for k in (0..n).rev() {
            acc = acc.mul_ref(&f);
            acc.c[0] += a[k];
        }
        acc
    }

    pub fn exp(&self) -> Jet {
        let e0 = self.c[0].exp();
        let n = self.shape.order;
        let s = &*self.shape;
        let nl = s.count_upto(1);
        if n >= 2 && self.c[nl..].iter().all(|v| v.is_zero()) {
            // affine: exp(c + Σ a_i δ_i) = e^c Π_i a_i^{k_i}/k_i!
            let tables: Vec<Vec<Cdd>> = (0..s.nvars)
                .map(|i| {
                    let a = self.coeff(&unit_mono(s.nvars, i));
                    let mut v = vec![Cdd::ONE];
                    for k in 1..=n {
                        let last = v[k - 1];
                        v.push(last * a / Cdd::from_i64(k as i64));
                    }
                    v
                })
                .collect();
            let c = s
                .monos
                .iter()
                .map(|m| {
                    let mut t = e0;
                    for (i, &e) in m.iter().enumerate() {
                        if e > 0 {
                            t *= tables[i][e as usize];
                        }
                    }
                    t
                })
                .collect();
            return Jet { shape: self.shape.clone(), c };
        }
        let mut a = Vec::with_capacity(n + 1);
        let mut t = e0;
        for k in 0..=n {
            if k > 0 {
                t /= Cdd::from_i64(k as i64);
            }
            a.push(t);
        }
        self.compose_series(&a)
    }

    /// Principal logarithm of the constant term, extended by the series of log(1+x).
    pub fn ln(&self) -> Jet {
        let c0 = self.c[0];
        let n = self.shape.order;
        let mut a = Vec::with_capacity(n + 1);
        a.push(c0.ln());
        for k in 1..=n {
            let sgn = if k % 2 == 1 { 1.0 } else { -1.0 };
            a.push(Cdd::real(Dd::from_f64(sgn) / Dd::from_f64(k as f64)));
        }
        // compose on self/c0 so that powers of 1/c0 cannot under- or overflow
        self.scale(c0.recip()).compose_series(&a)
    }

    pub fn recip(&self) -> Jet {
        let inv = self.c[0].recip();
        let n = self.shape.order;
        let a: Vec<Cdd> = (0..=n).map(|k| if k % 2 == 0 { Cdd::ONE } else { -Cdd::ONE }).collect();
        self.scale(inv).compose_series(&a).scale(inv)
    }

    /// Evaluate the truncated polynomial at the displacement `d`.
    pub fn eval_at(&self, d: &[Cdd]) -> Cdd {
        let s = &*self.shape;
        let mut pows: Vec<Vec<Cdd>> = d
            .iter()
            .map(|x| {
                let mut v = vec![Cdd::ONE];
                for _ in 0..s.order {
                    let last = *v.last().unwrap();
                    v.push(last * *x);
                }
                v
            })
            .collect();
        if pows.is_empty() {
            pows.push(vec![Cdd::ONE]);
        }
        let mut acc = Cdd::ZERO;
        for (m, c) in s.monos.iter().zip(&self.c) {
            if c.is_zero() {
                continue;
            }
            let mut t = *c;
            for (k, &e) in m.iter().enumerate() {
                if e > 0 {
                    t *= pows[k][e as usize];
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute `δ_i ↦ images[i]` (each image a jet in the target shape with zero
    /// constant term). Degrees are preserved for linear images.
    pub fn substitute(&self, target: &Arc<Shape>, images: &[Jet]) -> Jet {
        assert_eq!(images.len(), self.shape.nvars);
        let s = &*self.shape;
        let mut powers: Vec<Option<Jet>> = vec![None; s.len()];
        powers[0] = Some(Jet::constant(target, Cdd::ONE));
        let mut out = Jet::constant(target, self.c[0]);
        for i in 1..s.len() {
            let m = &s.monos[i];
            let k = m.iter().position(|&e| e > 0).unwrap();
            let mut prev = m.clone();
            prev[k] -= 1;
            let pi = s.index[&prev];
            let img = powers[pi].as_ref().unwrap().mul_ref(&images[k]);
            if !self.c[i].is_zero() {
                out.axpy(self.c[i], &img);
            }
            powers[i] = Some(img);
        }
        out
    }

    /// Re-truncate into a shape with the same variables and a different order.
    pub fn reshape(&self, target: &Arc<Shape>) -> Jet {
        assert_eq!(target.nvars, self.shape.nvars);
        let mut out = Jet::zero(target);
        for (m, v) in self.shape.monos.iter().zip(&self.c) {
            if let Some(&i) = target.index.get(m) {
                out.c[i] = *v;
            }
        }
        out
    }

    /// Iterate over `(multi-index, coefficient)` pairs in storage order.
    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &Cdd)> {
        self.shape.monos.iter().zip(self.c.iter())
    }
}

fn unit(n: usize, i: usize) -> Vec<Cdd> {
    let mut v = vec![Cdd::ZERO; n];
    v[i] = Cdd::ONE;
    v
}

fn unit_mono(n: usize, i: usize) -> MultiIndex {
    let mut v = vec![0u8; n];
    v[i] = 1;
    v
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        self.add_ref(&o)
    }
}
impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        self.sub_ref(&o)
    }
}
impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        self.mul_ref(&o)
    }
}
impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet { shape: self.shape, c: self.c.into_iter().map(|v| -v).collect() }
    }
}
impl<'a> Add<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn add(self, o: &Jet) -> Jet {
        self.add_ref(o)
    }
}
impl<'a> Sub<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn sub(self, o: &Jet) -> Jet {
        self.sub_ref(o)
    }
}
impl<'a> Mul<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn mul(self, o: &Jet) -> Jet {
        self.mul_ref(o)
    }
}

/// Field-like operations shared by complex scalars and jets.
pub trait Num: Clone + Send + Sync + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self> {
    fn cst(&self) -> Cdd;
    /// The constant `v` in the same shape as `self`.
    fn lift(&self, v: Cdd) -> Self;
    fn scale(&self, k: Cdd) -> Self;
    fn add_const(&self, k: Cdd) -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn recip(&self) -> Self;
    /// True when the value carries no infinitesimal part.
    fn is_pure_constant(&self) -> bool;
    /// Largest coefficient magnitude, used for truncation decisions.
    fn mag(&self) -> f64;

    fn mul_ref(&self, o: &Self) -> Self {
        self.clone() * o.clone()
    }

    fn div(&self, o: &Self) -> Self {
        self.mul_ref(&o.recip())
    }

    /// `x^w` for a real positive base `x`.
    fn pow_base(&self, ln_base: Dd) -> Self {
        self.scale(Cdd::real(ln_base)).exp()
    }

    fn sin(&self) -> Self {
        let iz = self.scale(Cdd::I);
        (iz.exp() - (-iz).exp()).scale(Cdd::from_f64(0.0, -0.5))
    }
}

impl Num for Cdd {
    #[inline]
    fn cst(&self) -> Cdd {
        *self
    }
    #[inline]
    fn lift(&self, v: Cdd) -> Cdd {
        v
    }
    #[inline]
    fn scale(&self, k: Cdd) -> Cdd {
        *self * k
    }
    #[inline]
    fn add_const(&self, k: Cdd) -> Cdd {
        *self + k
    }
    fn exp(&self) -> Cdd {
        Cdd::exp(*self)
    }
    fn ln(&self) -> Cdd {
        Cdd::ln(*self)
    }
    fn recip(&self) -> Cdd {
        Cdd::recip(*self)
    }
    fn is_pure_constant(&self) -> bool {
        true
    }
    fn mag(&self) -> f64 {
        self.abs()
    }
    #[inline]
    fn mul_ref(&self, o: &Cdd) -> Cdd {
        *self * *o
    }
    fn div(&self, o: &Cdd) -> Cdd {
        *self / *o
    }
    fn sin(&self) -> Cdd {
        Cdd::sin(*self)
    }
}

impl Num for Jet {
    fn cst(&self) -> Cdd {
        self.c[0]
    }
    fn lift(&self, v: Cdd) -> Jet {
        Jet::constant(&self.shape, v)
    }
    fn scale(&self, k: Cdd) -> Jet {
        Jet::scale(self, k)
    }
    fn add_const(&self, k: Cdd) -> Jet {
        Jet::add_const(self, k)
    }
    fn exp(&self) -> Jet {
        Jet::exp(self)
    }
    fn ln(&self) -> Jet {
        Jet::ln(self)
    }
    fn recip(&self) -> Jet {
        Jet::recip(self)
    }
    fn is_pure_constant(&self) -> bool {
        self.is_constant()
    }
    fn mag(&self) -> f64 {
        self.max_abs()
    }
    fn mul_ref(&self, o: &Jet) -> Jet {
        Jet::mul_ref(self, o)
    }
}

/// Format a multi-index as `"n1,n2,..."`.
pub fn multi_index_key(m: &[u8]) -> String {
    m.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

/// All multi-indices of length `nvars` with total degree `≤ order`, in lexicographic order.
pub fn lexicographic_indices(nvars: usize, order: usize) -> Vec<MultiIndex> {
    let mut v: Vec<MultiIndex> = shape(nvars, order).monos.clone();
    v.sort();
    v
}
