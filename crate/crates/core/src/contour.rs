//! Cauchy contour extraction of Taylor coefficients on a polydisc.
//!
//! The trapezoid rule on a circle converges geometrically, so a few dozen nodes per
//! variable give full precision for functions analytic on a slightly larger disc.
//! Used as an independent oracle for jet-based coefficients.

use crate::dd::{Cdd, Dd};
use crate::error::Result;
use rayon::prelude::*;

/// Node count per variable and radius; the offsets keep nodes off lines like
/// `δ_1 + δ_2 = 0` where some integrands have poles.
#[derive(Clone, Debug)]
pub struct Polydisc {
    pub center: Vec<Cdd>,
    pub radius: Vec<f64>,
    pub nodes: usize,
}

impl Polydisc {
    pub fn new(center: Vec<Cdd>, radius: f64, nodes: usize) -> Self {
        let r = center.len();
        Polydisc { center, radius: vec![radius; r], nodes }
    }

    fn offset(&self, i: usize) -> f64 {
        // irrational-ish shifts, distinct per variable
        0.1234567 + 0.2970_9431 * i as f64
    }

    /// Coefficient of `Π δ_i^{n_i}` for every multi-index in `indices`.
    pub fn coefficients<F>(&self, f: F, indices: &[Vec<u8>]) -> Result<Vec<Cdd>>
    where
        F: Fn(&[Cdd]) -> Result<Cdd> + Sync,
    {
        let r = self.center.len();
        let k = self.nodes;
        let total = k.pow(r as u32);
        let unit = |i: usize, a: usize| -> Cdd {
            let th = Dd::TWO_PI * Dd::from_f64(a as f64) / Dd::from_f64(k as f64) + Dd::from_f64(self.offset(i) / k as f64);
            let (s, c) = th.sin_cos();
            Cdd::new(c, s)
        };
        let samples: Vec<(Vec<usize>, Cdd)> = (0..total)
            .into_par_iter()
            .map(|flat| {
                let mut idx = vec![0usize; r];
                let mut x = flat;
                for slot in idx.iter_mut() {
                    *slot = x % k;
                    x /= k;
                }
                let p: Vec<Cdd> = (0..r).map(|i| self.center[i] + unit(i, idx[i]).mul_f64(self.radius[i])).collect();
                f(&p).map(|v| (idx, v))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut out = Vec::with_capacity(indices.len());
        for n in indices {
            let mut acc = Cdd::ZERO;
            for (idx, v) in &samples {
                let mut w = *v;
                for i in 0..r {
                    if n[i] > 0 {
                        w *= unit(i, idx[i]).conj().powi(n[i] as i32);
                    }
                }
                acc += w;
            }
            let mut den = Dd::from_f64(total as f64);
            for i in 0..r {
                den *= Dd::from_f64(self.radius[i]).powi(n[i] as i32);
            }
            out.push(acc.scale(den.recip()));
        }
        Ok(out)
    }
}

/// One-variable convenience: `f^{(n)}(c)/n!` from a circle of radius `rho`.
pub fn taylor_coefficient<F>(f: F, center: Cdd, n: usize, rho: f64, nodes: usize) -> Result<Cdd>
where
    F: Fn(Cdd) -> Result<Cdd> + Sync,
{
    let pd = Polydisc::new(vec![center], rho, nodes);
    Ok(pd.coefficients(|p| f(p[0]), &[vec![n as u8]])?[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_coefficients() {
        // e^{x+2y}: coefficient of x^1 y^2 is 4/2 = 2
        let pd = Polydisc::new(vec![Cdd::ZERO, Cdd::ZERO], 0.5, 40);
        let c = pd.coefficients(|p| Ok((p[0] + p[1].mul_f64(2.0)).exp()), &[vec![1, 2], vec![0, 0]]).unwrap();
        assert!((c[0] - Cdd::from_f64(2.0, 0.0)).abs() < 1e-28, "{}", c[0]);
        assert!((c[1] - Cdd::ONE).abs() < 1e-28);
    }
}
