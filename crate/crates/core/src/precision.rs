//! Precision and evaluation settings.

use crate::dd::MAX_DIGITS;
use crate::error::{Error, Result};

pub const DEFAULT_DIGITS: u32 = 30;
pub const MIN_DIGITS: u32 = 15;

/// Target precision. `tol` is the relative tolerance `10^(5-digits)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrecisionContext {
    pub digits: u32,
    pub tol: f64,
}

impl PrecisionContext {
    /// Fails with `PrecisionUnreachable` above what double-double arithmetic carries.
    pub fn new(digits: u32) -> Result<Self> {
        if digits < MIN_DIGITS {
            return Err(Error::InvalidArgument(format!("digits must be at least {MIN_DIGITS}, got {digits}")));
        }
        if digits > MAX_DIGITS {
            return Err(Error::precision(
                format!("{digits}-digit context (arithmetic carries {MAX_DIGITS})"),
                10f64.powi(-(MAX_DIGITS as i32)),
                10f64.powi(-(digits as i32)),
            ));
        }
        Ok(PrecisionContext { digits, tol: 10f64.powi(5 - digits as i32) })
    }

    /// Working epsilon used for internal truncation decisions, well below `tol`.
    pub fn eps(&self) -> f64 {
        (self.tol * 1e-4).max(1e-32)
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext::new(DEFAULT_DIGITS).expect("default digits are valid")
    }
}

/// Settings for the Mellin–Barnes quadrature.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MbConfig {
    /// Offset of the integration line below the integer `M`.
    pub eta: f64,
    /// Starting half-length of the truncated vertical line; extended until the tails are negligible.
    pub imag_truncation: f64,
    /// Starting trapezoid step; halved until two levels agree.
    pub step: f64,
    /// Maximum number of step halvings.
    pub max_halvings: u32,
}

impl Default for MbConfig {
    fn default() -> Self {
        MbConfig { eta: 0.5, imag_truncation: 12.0, step: 0.25, max_halvings: 7 }
    }
}

/// Everything an evaluation needs beyond its arguments.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalConfig {
    pub precision: PrecisionContext,
    /// Upper bound on the number of summed terms in a series evaluation.
    pub term_budget: u64,
    /// Largest total Taylor order an expansion may request.
    pub order_cap: usize,
    pub mb: MbConfig,
}

impl EvalConfig {
    pub fn with_digits(digits: u32) -> Result<Self> {
        Ok(EvalConfig { precision: PrecisionContext::new(digits)?, ..EvalConfig::default() })
    }

    pub fn tol(&self) -> f64 {
        self.precision.tol
    }

    pub(crate) fn check_order(&self, order: usize) -> Result<()> {
        if order > self.order_cap {
            Err(Error::OrderCapExceeded { requested: order, cap: self.order_cap })
        } else {
            Ok(())
        }
    }
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            precision: PrecisionContext::default(),
            term_budget: 10_000_000,
            order_cap: 24,
            mb: MbConfig::default(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_from_digits() {
        let c = PrecisionContext::new(30).unwrap();
        assert!((c.tol - 1e-25).abs() < 1e-40);
        assert!(PrecisionContext::new(14).is_err());
        assert!(matches!(PrecisionContext::new(40), Err(Error::PrecisionUnreachable { .. })));
    }
}
