//! Double-double real and complex arithmetic.
//!
//! A `Dd` is an unevaluated sum `hi + lo` of two `f64` with `|lo| <= ulp(hi)/2`,
//! giving roughly 106 bits (about 31 decimal digits). Elementary functions are
//! accurate to a few units in the last place of that format.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

/// Decimal digits the format carries reliably.
pub const MAX_DIGITS: u32 = 31;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    pub const PI: Dd = Dd { hi: std::f64::consts::PI, lo: 1.2246467991473532e-16 };
    pub const TWO_PI: Dd = Dd { hi: std::f64::consts::TAU, lo: 2.4492935982947064e-16 };
    pub const HALF_PI: Dd = Dd { hi: std::f64::consts::FRAC_PI_2, lo: 6.123233995736766e-17 };
    pub const LN2: Dd = Dd { hi: std::f64::consts::LN_2, lo: 2.3190468138462996e-17 };
    /// log(2π)/2
    pub const HALF_LN_2PI: Dd = Dd { hi: 0.9189385332046728, lo: -3.8782941580672414e-17 };
    /// Euler's constant, only used as a reference value.
    pub const EULER: Dd = Dd { hi: 0.5772156649015329, lo: -4.942915152430645e-18 };

    #[inline]
    pub const fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn new(hi: f64, lo: f64) -> Dd {
        let (h, l) = quick_two_sum(hi, lo);
        Dd { hi: h, lo: l }
    }

    pub fn from_i64(n: i64) -> Dd {
        let hi = n as f64;
        // exact for |n| < 2^53, and the remainder captures the rest
        let lo = (n as i128 - hi as i128) as f64;
        Dd::new(hi, lo)
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.hi == 0.0
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    #[inline]
    pub fn abs(self) -> Dd {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Dd {
        let (p1, p2) = two_prod(self.hi, b);
        let (s, e) = quick_two_sum(p1, p2 + self.lo * b);
        Dd { hi: s, lo: e }
    }

    /// Multiply by an exact power of two.
    #[inline]
    pub fn ldexp(self, e: i32) -> Dd {
        let f = 2f64.powi(e);
        Dd { hi: self.hi * f, lo: self.lo * f }
    }

    pub fn sqr(self) -> Dd {
        self * self
    }

    pub fn recip(self) -> Dd {
        Dd::ONE / self
    }

    pub fn floor(self) -> Dd {
        let hi = self.hi.floor();
        if hi == self.hi {
            let lo = self.lo.floor();
            Dd::new(hi, lo)
        } else {
            Dd { hi, lo: 0.0 }
        }
    }

    pub fn round(self) -> Dd {
        (self + Dd::from_f64(0.5)).floor()
    }

    pub fn sqrt(self) -> Dd {
        if self.hi <= 0.0 {
            return Dd::ZERO;
        }
        let x = 1.0 / self.hi.sqrt();
        let ax = self.hi * x;
        let ax_dd = Dd::from_f64(ax);
        let diff = (self - ax_dd * ax_dd).hi * (x * 0.5);
        ax_dd + Dd::from_f64(diff)
    }

    pub fn powi(self, n: i32) -> Dd {
        if n == 0 {
            return Dd::ONE;
        }
        let mut base = self;
        let mut e = n.unsigned_abs();
        let mut acc = Dd::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base * base;
            e >>= 1;
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    pub fn exp(self) -> Dd {
        if self.hi.is_nan() {
            return self;
        }
        if self.hi > 709.0 {
            return Dd::from_f64(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Dd::ZERO;
        }
        let k = (self.hi / Dd::LN2.hi).round();
        let r = self - Dd::LN2.mul_f64(k);
        // reduce further so the Taylor series converges quickly
        let r = r.ldexp(-10);
        let mut term = r;
        let mut s = r;
        let mut n = 1.0;
        loop {
            n += 1.0;
            term = term * r / Dd::from_f64(n);
            s += term;
            if term.hi.abs() <= 1e-34 * s.hi.abs() {
                break;
            }
        }
        // expm1 doubling: e^{2x} - 1 = (e^x - 1)(e^x + 1)
        for _ in 0..10 {
            s = s.mul_f64(2.0) + s * s;
        }
        (s + Dd::ONE).ldexp(k as i32)
    }

    pub fn ln(self) -> Dd {
        if self.hi <= 0.0 {
            return Dd::from_f64(f64::NAN);
        }
        if (self.hi - 1.0).abs() < 0.125 {
            // 2 atanh(u) with u = (x-1)/(x+1) keeps relative accuracy near 1
            let u = (self - Dd::ONE) / (self + Dd::ONE);
            let u2 = u * u;
            let mut pw = u;
            let mut s = u;
            let mut k = 1.0;
            loop {
                pw *= u2;
                k += 2.0;
                let t = pw / Dd::from_f64(k);
                s += t;
                if t.hi.abs() <= 1e-34 * s.hi.abs() {
                    break;
                }
            }
            return s.mul_f64(2.0);
        }
        let y = Dd::from_f64(self.hi.ln());
        // one Newton step on exp(y) = x doubles the correct digits
        y + self * (-y).exp() - Dd::ONE
    }

    /// sin and cos together.
    pub fn sin_cos(self) -> (Dd, Dd) {
        if self.hi.abs() < 1e-300 {
            return (self, Dd::ONE);
        }
        let k = (self.hi / Dd::TWO_PI.hi).round();
        let r = self - Dd::TWO_PI.mul_f64(k);
        let q = (r.hi / Dd::HALF_PI.hi).round();
        let t = r - Dd::HALF_PI.mul_f64(q);
        let (s, c) = sin_cos_taylor(t);
        match (q as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }

    pub fn sin(self) -> Dd {
        self.sin_cos().0
    }

    pub fn cos(self) -> Dd {
        self.sin_cos().1
    }

    pub fn atan2(y: Dd, x: Dd) -> Dd {
        if x.is_zero() && y.is_zero() {
            return Dd::ZERO;
        }
        let z = Dd::from_f64(y.hi.atan2(x.hi));
        let (s, c) = z.sin_cos();
        // Newton on the angle: z + (y cos z - x sin z)/(x cos z + y sin z)
        let num = y * c - x * s;
        let den = x * c + y * s;
        z + num / den
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_decimal(self, digits: u32) -> String {
        if !self.is_finite() {
            return format!("{}", self.hi);
        }
        if self.is_zero() {
            return "0".to_string();
        }
        let neg = self.hi < 0.0;
        let mut x = self.abs();
        let mut e = x.hi.log10().floor() as i32;
        x *= Dd::from_f64(10.0).powi(-e);
        if x.hi >= 10.0 {
            x /= Dd::from_f64(10.0);
            e += 1;
        } else if x.hi < 1.0 {
            x *= Dd::from_f64(10.0);
            e -= 1;
        }
        let n = digits.max(1) as usize;
        let mut ds: Vec<u8> = Vec::with_capacity(n + 1);
        for _ in 0..=n {
            let d = x.hi.floor().clamp(0.0, 9.0);
            ds.push(d as u8);
            x = (x - Dd::from_f64(d)) * Dd::from_f64(10.0);
        }
        // round on the extra digit
        if ds[n] >= 5 {
            let mut i = n;
            loop {
                if i == 0 {
                    ds.insert(0, 1);
                    e += 1;
                    break;
                }
                i -= 1;
                if ds[i] == 9 {
                    ds[i] = 0;
                } else {
                    ds[i] += 1;
                    break;
                }
            }
        }
        ds.truncate(n);
        while ds.len() > 1 && *ds.last().unwrap() == 0 {
            ds.pop();
        }
        let body: String = ds.iter().map(|d| char::from(b'0' + d)).collect();
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        if (-6..21).contains(&e) {
            if e < 0 {
                out.push_str("0.");
                for _ in 0..(-e - 1) {
                    out.push('0');
                }
                out.push_str(&body);
            } else {
                let ip = (e + 1) as usize;
                if body.len() <= ip {
                    out.push_str(&body);
                    for _ in body.len()..ip {
                        out.push('0');
                    }
                } else {
                    out.push_str(&body[..ip]);
                    out.push('.');
                    out.push_str(&body[ip..]);
                }
            }
        } else {
            out.push_str(&body[..1]);
            if body.len() > 1 {
                out.push('.');
                out.push_str(&body[1..]);
            }
            out.push_str(&format!("e{}", e));
        }
        out
    }

    /// Parse a decimal literal such as `-1.25e-3` exactly enough for 31 digits.
    pub fn parse(text: &str) -> Option<Dd> {
        let t = text.trim();
        if t.is_empty() {
            return None;
        }
        let (neg, body) = match t.as_bytes()[0] {
            b'-' => (true, &t[1..]),
            b'+' => (false, &t[1..]),
            _ => (false, t),
        };
        let (mant, exp) = match body.find(['e', 'E']) {
            Some(i) => (&body[..i], body[i + 1..].parse::<i32>().ok()?),
            None => (body, 0),
        };
        let mut digits = String::new();
        let mut frac = 0i32;
        let mut seen_dot = false;
        for ch in mant.chars() {
            match ch {
                '0'..='9' => {
                    digits.push(ch);
                    if seen_dot {
                        frac += 1;
                    }
                }
                '.' if !seen_dot => seen_dot = true,
                '_' => {}
                _ => return None,
            }
        }
        if digits.is_empty() {
            return None;
        }
        let trimmed = digits.trim_start_matches('0');
        // keep at most 36 significant digits
        let keep = trimmed.len().min(36);
        let dropped = (trimmed.len() - keep) as i32;
        let mut v = Dd::ZERO;
        let ten = Dd::from_f64(10.0);
        for ch in trimmed[..keep].chars() {
            v = v * ten + Dd::from_f64((ch as u8 - b'0') as f64);
        }
        let scale = exp - frac + dropped;
        if scale != 0 {
            v = if scale > 0 { v * ten.powi(scale) } else { v / ten.powi(-scale) };
        }
        Some(if neg { -v } else { v })
    }
}

fn sin_cos_taylor(t: Dd) -> (Dd, Dd) {
    // |t| <= pi/4; halve three times and use double-angle formulas
    let h = t.ldexp(-3);
    let h2 = h * h;
    let mut s = h;
    let mut term = h;
    let mut n = 1.0;
    loop {
        term = -(term * h2) / Dd::from_f64((n + 1.0) * (n + 2.0));
        n += 2.0;
        s += term;
        if term.hi.abs() <= 1e-34 * h.hi.abs() {
            break;
        }
    }
    // cos(h) - 1 = -2 sin^2(h/2) is avoided: compute cos from sin accurately
    let mut c = (Dd::ONE - s * s).sqrt();
    for _ in 0..3 {
        let s2 = (s * c).mul_f64(2.0);
        let c2 = c * c - s * s;
        s = s2;
        c = c2;
    }
    (s, c)
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (h, l) = quick_two_sum(s1, s2 + t2);
        Dd { hi: h, lo: l }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, b.hi);
        let p2 = p2 + (self.hi * b.lo + self.lo * b.hi);
        let (h, l) = quick_two_sum(p1, p2);
        Dd { hi: h, lo: l }
    }
}

impl Div for Dd {
    type Output = Dd;
    #[inline]
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (h, l) = quick_two_sum(q1, q2);
        Dd { hi: h, lo: l } + Dd::from_f64(q3)
    }
}

impl AddAssign for Dd {
    #[inline]
    fn add_assign(&mut self, b: Dd) {
        *self = *self + b;
    }
}
impl SubAssign for Dd {
    #[inline]
    fn sub_assign(&mut self, b: Dd) {
        *self = *self - b;
    }
}
impl MulAssign for Dd {
    #[inline]
    fn mul_assign(&mut self, b: Dd) {
        *self = *self * b;
    }
}
impl DivAssign for Dd {
    #[inline]
    fn div_assign(&mut self, b: Dd) {
        *self = *self / b;
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, o: &Dd) -> Option<Ordering> {
        match self.hi.partial_cmp(&o.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&o.lo),
            c => c,
        }
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Dd {
        Dd::from_f64(x)
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(f.precision().unwrap_or(32) as u32))
    }
}

/// Complex number over `Dd`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Cdd {
    pub re: Dd,
    pub im: Dd,
}

impl Cdd {
    pub const ZERO: Cdd = Cdd { re: Dd::ZERO, im: Dd::ZERO };
    pub const ONE: Cdd = Cdd { re: Dd::ONE, im: Dd::ZERO };
    pub const I: Cdd = Cdd { re: Dd::ZERO, im: Dd::ONE };

    #[inline]
    pub const fn new(re: Dd, im: Dd) -> Cdd {
        Cdd { re, im }
    }

    #[inline]
    pub const fn real(re: Dd) -> Cdd {
        Cdd { re, im: Dd::ZERO }
    }

    #[inline]
    pub fn from_f64(re: f64, im: f64) -> Cdd {
        Cdd { re: Dd::from_f64(re), im: Dd::from_f64(im) }
    }

    pub fn from_i64(n: i64) -> Cdd {
        Cdd::real(Dd::from_i64(n))
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    #[inline]
    pub fn conj(self) -> Cdd {
        Cdd { re: self.re, im: -self.im }
    }

    #[inline]
    pub fn scale(self, k: Dd) -> Cdd {
        Cdd { re: self.re * k, im: self.im * k }
    }

    #[inline]
    pub fn mul_f64(self, k: f64) -> Cdd {
        Cdd { re: self.re.mul_f64(k), im: self.im.mul_f64(k) }
    }

    /// |z|^2 in double-double.
    pub fn norm_sqr(self) -> Dd {
        self.re * self.re + self.im * self.im
    }

    /// |z| as a plain double, for error estimates and comparisons.
    #[inline]
    pub fn abs(self) -> f64 {
        self.re.to_f64().hypot(self.im.to_f64())
    }

    pub fn abs_dd(self) -> Dd {
        self.norm_sqr().sqrt()
    }

    pub fn recip(self) -> Cdd {
        // scale to avoid overflow in |z|^2
        let m = self.re.hi.abs().max(self.im.hi.abs());
        if m == 0.0 {
            return Cdd::from_f64(f64::INFINITY, 0.0);
        }
        let e = -(m.log2().floor() as i32);
        let z = Cdd { re: self.re.ldexp(e), im: self.im.ldexp(e) };
        let d = z.norm_sqr();
        Cdd { re: (z.re / d).ldexp(e), im: (-z.im / d).ldexp(e) }
    }

    pub fn exp(self) -> Cdd {
        let r = self.re.exp();
        let (s, c) = self.im.sin_cos();
        Cdd { re: r * c, im: r * s }
    }

    /// Principal logarithm.
    pub fn ln(self) -> Cdd {
        let m = self.re.hi.abs().max(self.im.hi.abs());
        let e = -(m.log2().floor() as i32);
        let z = Cdd { re: self.re.ldexp(e), im: self.im.ldexp(e) };
        let re = z.norm_sqr().ln().mul_f64(0.5) - Dd::LN2.mul_f64(e as f64);
        Cdd { re, im: Dd::atan2(self.im, self.re) }
    }

    /// Principal power `self^w`.
    pub fn pow(self, w: Cdd) -> Cdd {
        if self.is_zero() {
            return Cdd::ZERO;
        }
        (w * self.ln()).exp()
    }

    pub fn powi(self, n: i32) -> Cdd {
        if n == 0 {
            return Cdd::ONE;
        }
        let mut base = self;
        let mut e = n.unsigned_abs();
        let mut acc = Cdd::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base * base;
            e >>= 1;
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    pub fn sin(self) -> Cdd {
        let iz = Cdd::I * self;
        ((iz).exp() - (-iz).exp()) / Cdd::from_f64(0.0, 2.0)
    }

    /// Nearest Gaussian integer distance test: true if `self` equals the integer `n` exactly.
    pub fn is_integer_value(self, n: i64) -> bool {
        self.im.is_zero() && self.re == Dd::from_i64(n)
    }

    /// Returns the integer value if `self` is exactly a real integer.
    pub fn as_integer(self) -> Option<i64> {
        if !self.im.is_zero() {
            return None;
        }
        let r = self.re.round();
        if r == self.re && r.hi.abs() < 9.0e15 {
            Some(r.to_f64() as i64)
        } else {
            None
        }
    }
}

impl Neg for Cdd {
    type Output = Cdd;
    #[inline]
    fn neg(self) -> Cdd {
        Cdd { re: -self.re, im: -self.im }
    }
}
impl Add for Cdd {
    type Output = Cdd;
    #[inline]
    fn add(self, b: Cdd) -> Cdd {
        Cdd { re: self.re + b.re, im: self.im + b.im }
    }
}
impl Sub for Cdd {
    type Output = Cdd;
    #[inline]
    fn sub(self, b: Cdd) -> Cdd {
        Cdd { re: self.re - b.re, im: self.im - b.im }
    }
}
impl Mul for Cdd {
    type Output = Cdd;
    #[inline]
    fn mul(self, b: Cdd) -> Cdd {
        if self.im.is_zero() && b.im.is_zero() {
            return Cdd::real(self.re * b.re);
        }
        Cdd { re: self.re * b.re - self.im * b.im, im: self.re * b.im + self.im * b.re }
    }
}
impl Div for Cdd {
    type Output = Cdd;
    #[inline]
    fn div(self, b: Cdd) -> Cdd {
        if b.im.is_zero() {
            return Cdd { re: self.re / b.re, im: self.im / b.re };
        }
        self * b.recip()
    }
}
impl AddAssign for Cdd {
    #[inline]
    fn add_assign(&mut self, b: Cdd) {
        *self = *self + b;
    }
}
impl SubAssign for Cdd {
    #[inline]
    fn sub_assign(&mut self, b: Cdd) {
        *self = *self - b;
    }
}
impl MulAssign for Cdd {
    #[inline]
    fn mul_assign(&mut self, b: Cdd) {
        *self = *self * b;
    }
}
impl DivAssign for Cdd {
    #[inline]
    fn div_assign(&mut self, b: Cdd) {
        *self = *self / b;
    }
}
impl From<Dd> for Cdd {
    fn from(x: Dd) -> Cdd {
        Cdd::real(x)
    }
}
impl From<f64> for Cdd {
    fn from(x: f64) -> Cdd {
        Cdd::from_f64(x, 0.0)
    }
}

impl fmt::Display for Cdd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = f.precision().unwrap_or(32) as u32;
        if self.im.is_zero() {
            write!(f, "{}", self.re.to_decimal(d))
        } else if self.im.hi < 0.0 {
            write!(f, "{}-{}i", self.re.to_decimal(d), (-self.im).to_decimal(d))
        } else {
            write!(f, "{}+{}i", self.re.to_decimal(d), self.im.to_decimal(d))
        }
    }
}

/// Parse `a`, `a+bi`, `a-bi`, `bi`.
pub fn parse_complex(text: &str) -> Option<Cdd> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return None;
    }
    if let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) {
        // find split between real and imaginary parts: last sign not after 'e'
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            if (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
                split = Some(k);
                break;
            }
        }
        let (re, im) = match split {
            Some(k) => (Dd::parse(&body[..k])?, &body[k..]),
            None => (Dd::ZERO, body),
        };
        let im = match im {
            "" | "+" => Dd::ONE,
            "-" => -Dd::ONE,
            s => Dd::parse(s)?,
        };
        Some(Cdd::new(re, im))
    } else {
        Some(Cdd::real(Dd::parse(&t)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: Dd, b: Dd) -> f64 {
        ((a - b).to_f64() / b.to_f64()).abs()
    }

    #[test]
    fn constants_consistent() {
        assert!(rel(Dd::PI.mul_f64(2.0), Dd::TWO_PI) < 1e-31);
        assert!(rel(Dd::from_f64(2.0).ln(), Dd::LN2) < 1e-31);
        assert!(rel(Dd::PI.sqr().sqrt(), Dd::PI) < 1e-31);
    }

    #[test]
    fn exp_ln_roundtrip() {
        for &x in &[1e-12, 0.3, 1.0, 2.5, 17.0, 40.0, 1.0 + 1e-9] {
            let d = Dd::from_f64(x);
            assert!(rel(d.ln().exp(), d) < 1e-30, "x={x}");
            assert!((d.exp().ln() - d).abs().hi < 1e-30 * x.max(1.0));
            assert!(rel((-d).exp() * d.exp(), Dd::ONE) < 1e-30);
        }
    }

    #[test]
    fn ln_near_one_is_accurate() {
        // ln(1 + 2^-30) = 2^-30 - 2^-61 + 2^-92/3 - ...
        let e = 2f64.powi(-30);
        let x = Dd::ONE + Dd::from_f64(e);
        let expect = Dd::from_f64(e) - Dd::from_f64(e * e * 0.5) + Dd::from_f64(e * e * e) / Dd::from_f64(3.0)
            - Dd::from_f64(e * e * e * e * 0.25);
        assert!(rel(x.ln(), expect) < 1e-30);
    }

    #[test]
    fn trig_identities() {
        for &x in &[0.1, 1.0, 3.0, -7.5, 100.25] {
            let (s, c) = Dd::from_f64(x).sin_cos();
            assert!((s * s + c * c - Dd::ONE).abs().hi < 4e-31);
            assert!((s.hi - x.sin()).abs() < 1e-15);
            let a = Dd::atan2(s, c);
            let k = ((Dd::from_f64(x) - a) / Dd::TWO_PI).round();
            assert!((Dd::from_f64(x) - a - Dd::TWO_PI * k).abs().hi < 1e-29);
        }
        assert!((Dd::PI.sin()).abs().hi < 1e-31);
    }

    #[test]
    fn decimal_roundtrip() {
        let x = Dd::PI;
        let s = x.to_decimal(31);
        assert_eq!(&s[..20], "3.141592653589793238");
        let y = Dd::parse(&s).unwrap();
        assert!(rel(x, y) < 1e-30);
        assert_eq!(Dd::from_f64(-0.0625).to_decimal(10), "-0.0625");
        assert_eq!(Dd::from_f64(1e-9).to_decimal(5), "1e-9");
        assert_eq!(Dd::from_f64(120.0).to_decimal(5), "120");
    }

    #[test]
    fn complex_parsing() {
        let z = parse_complex("0.5-2.25i").unwrap();
        assert_eq!(z, Cdd::from_f64(0.5, -2.25));
        assert_eq!(parse_complex("3").unwrap(), Cdd::from_f64(3.0, 0.0));
        assert_eq!(parse_complex("-i").unwrap(), Cdd::from_f64(0.0, -1.0));
        let w = parse_complex("1e-3+1e-3i").unwrap();
        assert!((w - Cdd::from_f64(1e-3, 1e-3)).abs() < 1e-19);
        assert!((w.re * Dd::from_f64(1000.0) - Dd::ONE).abs().hi < 1e-31);
    }

    #[test]
    fn complex_log_exp() {
        let z = Cdd::from_f64(-1.25, 3.5);
        let w = z.ln().exp();
        assert!((w - z).abs() < 1e-30);
        let p = z.pow(Cdd::from_f64(2.0, 0.0));
        assert!((p - z * z).abs() < 1e-29);
    }
}
