//! Euler–Zagier multiple zeta-functions.
//!
//! Numerical evaluation of ζ_r(s₁,…,s_r) anywhere off its singular hyperplanes,
//! Laurent expansions (with symbolic linear-form denominators) at integer points,
//! single and multiple Stieltjes constants, the Mellin–Barnes continuation and
//! closed-form near-point limit formulas in depth two and three.
//!
//! All arithmetic is double-double (about 31 significant digits).

pub mod dd;
pub mod error;

pub use dd::{Cdd, Dd};
pub use error::{Error, Result};
pub mod precision;
pub mod bernoulli;
pub mod jet;
pub mod gamma;

pub use jet::{Jet, MultiIndex, Num};
pub use precision::{EvalConfig, MbConfig, PrecisionContext};
pub mod zeta;
pub mod nested;
pub mod series;
pub mod contour;
pub mod stuffle;
pub mod expansion;
pub mod mb;
pub mod laurent;
pub mod limits;
pub mod verify;
