//! Gauss cubature rules on the parabolic biangle and minimal cubature rules on
//! the square `[-1,1]^2` that attain Möller's lower bound, built from
//! Koornwinder-type orthogonal polynomials, together with independent moment
//! oracles that certify each rule's degree of polynomial exactness.
//!
//! The crate is organised bottom-up:
//!
//! * [`opq1d`]: one-variable orthogonal polynomials, Golub–Welsch Gauss rules
//!   and the quasi-orthogonal polynomials that supply the diagonal nodes of the
//!   odd-degree rules.
//! * [`biangle`]: the symmetric map `(x1, x2) -> (x1 + x2, x1 x2)`, the
//!   Koornwinder bases and the Gauss cubature rules on the biangle.
//! * [`squaremin`]: minimal rules on the square (even and odd degree), the
//!   weight functions and the `Q`-bases used for common-zero checks.
//! * [`composed`]: rules for weights composed with the Chebyshev polynomial
//!   `T_ℓ` and the rotation orbits behind them.
//! * [`oracle`]: reference moments and the exactness certifier.
//!
//! ```
//! use mincuba::{squaremin, Gamma, Weight1D, WeightSpec};
//!
//! let spec = WeightSpec::square(Weight1D::jacobi(-0.5, -0.5).unwrap(), Gamma::MinusHalf);
//! let rule = squaremin::minimal_rule_even(&spec, 3).unwrap();
//! assert_eq!(rule.len(), squaremin::moller_bound(6));
//! assert!((rule.mass() - std::f64::consts::PI.powi(2)).abs() < 1e-12);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` also rejects NaN

pub mod biangle;
pub mod composed;
mod error;
pub mod exec;
pub mod opq1d;
pub mod oracle;
mod rule;
pub mod squaremin;

pub use error::{Error, Result};
pub use exec::Execution;
pub use rule::{CubatureRule2D, Domain, Gamma, Weight1D, WeightFamily, WeightSpec};
