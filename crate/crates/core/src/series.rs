//! Evaluation of ζ_r inside its domain of absolute convergence.
//!
//! The nested sum is cut at `N`; everything beyond the cut is represented by the
//! asymptotic tail expansion of [`crate::nested`], whose size at the last kept order
//! is the reported error. Inside the domain every head and tail is convergent, so
//! this is the reference path the other evaluators are tested against.

use crate::dd::Cdd;
use crate::error::{Error, Result};
use crate::jet::{shape, Jet};
use crate::nested::{ez_em, ez_em_jet};
use crate::precision::EvalConfig;

/// The domain `Re s(j,r) > r−j+1` for all `j`, with `s(j,r) = s_j+…+s_r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DomainDescriptor {
    pub depth: usize,
}

impl DomainDescriptor {
    pub fn new(depth: usize) -> Self {
        DomainDescriptor { depth }
    }

    /// Right-hand side of the `j`-th condition (1-based).
    pub fn bound(&self, j: usize) -> f64 {
        (self.depth - j + 1) as f64
    }

    /// First violated condition as text, if any.
    pub fn violation(&self, s: &[Cdd]) -> Option<String> {
        assert_eq!(s.len(), self.depth);
        let r = self.depth;
        let mut acc = 0.0;
        for j in (1..=r).rev() {
            acc += s[j - 1].re.to_f64();
            if acc <= self.bound(j) {
                let lhs = if j == r { format!("Re s_{r}") } else { format!("Re(s_{j}+…+s_{r})") };
                return Some(format!("{lhs} > {} fails ({acc})", r - j + 1));
            }
        }
        None
    }

    pub fn contains(&self, s: &[Cdd]) -> bool {
        self.violation(s).is_none()
    }
}

pub fn in_domain(s: &[Cdd]) -> bool {
    !s.is_empty() && DomainDescriptor::new(s.len()).contains(s)
}

fn guard(s: &[Cdd], cfg: &EvalConfig) -> Result<()> {
    if s.is_empty() {
        return Err(Error::InvalidArgument("empty point".into()));
    }
    if let Some(cond) = DomainDescriptor::new(s.len()).violation(s) {
        return Err(Error::OutOfDomain { point: format_point(s), condition: cond });
    }
    let n = 30.0 + s.iter().map(|x| x.abs()).sum::<f64>() * 2.0;
    if n * s.len() as f64 > cfg.term_budget as f64 {
        return Err(Error::precision("series term budget", f64::INFINITY, cfg.tol()));
    }
    Ok(())
}

pub(crate) fn format_point(s: &[Cdd]) -> String {
    let parts: Vec<String> = s.iter().map(|x| format!("{}", x)).collect();
    format!("({})", parts.join(", "))
}

/// ζ_r(s) for `s` in the domain of absolute convergence.
pub fn ez_value(s: &[Cdd], cfg: &EvalConfig) -> Result<Cdd> {
    guard(s, cfg)?;
    Ok(ez_em(s, &cfg.precision)?.0)
}

/// ζ_r(s) together with its truncation estimate.
pub fn ez_value_with_error(s: &[Cdd], cfg: &EvalConfig) -> Result<(Cdd, f64)> {
    guard(s, cfg)?;
    ez_em(s, &cfg.precision)
}

/// Partial derivative `∂^{l_1}_{s_1}⋯∂^{l_r}_{s_r} ζ_r` at `q`.
pub fn ez_deriv(l: &[u8], q: &[Cdd], cfg: &EvalConfig) -> Result<Cdd> {
    if l.len() != q.len() {
        return Err(Error::InvalidArgument("multi-index and point differ in length".into()));
    }
    if l.iter().all(|&x| x == 0) {
        return ez_value(q, cfg);
    }
    let order: usize = l.iter().map(|&x| x as usize).sum();
    let t = ez_taylor(q, order, cfg)?;
    let mut f = crate::dd::Dd::ONE;
    for &li in l {
        for k in 2..=li as usize {
            f *= crate::dd::Dd::from_f64(k as f64);
        }
    }
    Ok(t.coeff(l).scale(f))
}

/// Taylor jet of ζ_r at `q`, truncated at total order `order`.
pub fn ez_taylor(q: &[Cdd], order: usize, cfg: &EvalConfig) -> Result<Jet> {
    guard(q, cfg)?;
    cfg.check_order(order)?;
    let sh = shape(q.len(), order);
    let args: Vec<Jet> = q.iter().enumerate().map(|(i, &v)| Jet::variable(&sh, i, v)).collect();
    let ps = ez_em_jet(&args, &cfg.precision)?;
    debug_assert!(ps.terms.keys().all(|k| k.is_empty()));
    Ok(ps.terms.into_values().next().unwrap_or_else(|| Jet::zero(&sh)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[f64]) -> Vec<Cdd> {
        v.iter().map(|&x| Cdd::from_f64(x, 0.0)).collect()
    }

    #[test]
    fn domain_predicate() {
        assert!(in_domain(&p(&[1.0, 2.0])));
        assert!(!in_domain(&p(&[2.0, 1.0])));
        assert!(!in_domain(&p(&[1.0, 1.0, 1.0])));
        assert!(in_domain(&p(&[1.0, 1.0, 2.0])));
    }

    #[test]
    fn out_of_domain_is_an_error() {
        let e = ez_value(&p(&[2.0, 1.0]), &EvalConfig::default());
        assert!(matches!(e, Err(Error::OutOfDomain { .. })));
    }

    #[test]
    fn zero_multi_index_is_the_value() {
        let cfg = EvalConfig::default();
        let q = p(&[1.0, 2.0]);
        assert_eq!(ez_deriv(&[0, 0], &q, &cfg).unwrap(), ez_value(&q, &cfg).unwrap());
    }
}
