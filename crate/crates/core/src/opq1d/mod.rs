//! One-variable orthogonal polynomials and Gauss quadrature.

mod gauss;
mod jacobi;
mod quasi;
mod tridiag;

pub use gauss::{gauss_rule, golub_welsch, QuadratureRule1D};
pub use jacobi::{eval_jacobi_standard, eval_jacobi_standard_derivative};
pub use quasi::{diagonal_zero_set, quasi_s, quasi_s_derivative};
pub use tridiag::{symmetric_tridiagonal_eigen, TridiagonalEigen};

use crate::{Error, Result};
use statrs::function::gamma::gamma;

/// Three-term recurrence of a monic orthogonal polynomial family,
/// `π_{k+1}(t) = (t - a_k) π_k(t) - b_k π_{k-1}(t)`, plus the zeroth moment
/// `mu0 = ∫ w`.
///
/// `a` holds `a_0..a_{L-1}` and `b` holds `b_1..b_{L-1}`, so the data covers
/// polynomials up to degree `L` for Gauss rules and `L - 1` for orthonormal
/// evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceCoeffs {
    a: Vec<f64>,
    b: Vec<f64>,
    mu0: f64,
}

impl RecurrenceCoeffs {
    pub fn new(a: Vec<f64>, b: Vec<f64>, mu0: f64) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::InvalidParameter("empty recurrence".into()));
        }
        if b.len() + 1 != a.len() {
            return Err(Error::InvalidParameter(format!(
                "expected {} off-diagonal coefficients, got {}",
                a.len() - 1,
                b.len()
            )));
        }
        if !(mu0 > 0.0 && mu0.is_finite()) {
            return Err(Error::InvalidParameter(format!("mu0 must be positive, got {mu0}")));
        }
        if let Some(bad) = b.iter().find(|&&v| !(v > 0.0 && v.is_finite())) {
            return Err(Error::InvalidParameter(format!("recurrence b_k must be positive, got {bad}")));
        }
        if a.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("non-finite recurrence a_k".into()));
        }
        Ok(Self { a, b, mu0 })
    }

    /// Number of diagonal coefficients `L`.
    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn a(&self) -> &[f64] {
        &self.a
    }

    /// Off-diagonal coefficients; `b()[k - 1]` is `b_k`.
    pub fn b(&self) -> &[f64] {
        &self.b
    }

    pub fn mu0(&self) -> f64 {
        self.mu0
    }

    pub(crate) fn require(&self, len: usize) -> Result<()> {
        if self.len() < len {
            Err(Error::InsufficientRecurrence { required: len, available: self.len() })
        } else {
            Ok(())
        }
    }

    /// `sqrt(b_k)`, the off-diagonal of the Jacobi matrix.
    #[inline]
    fn sqrt_b(&self, k: usize) -> f64 {
        self.b[k - 1].sqrt()
    }
}

pub(crate) fn check_jacobi_params(alpha: f64, beta: f64) -> Result<()> {
    if !(alpha > -1.0 && beta > -1.0 && alpha.is_finite() && beta.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "Jacobi parameters must exceed -1, got alpha={alpha}, beta={beta}"
        )));
    }
    Ok(())
}

/// Total mass of the Jacobi weight `(1-t)^α (1+t)^β` on `[-1, 1]`.
pub fn jacobi_mass(alpha: f64, beta: f64) -> f64 {
    let ab = alpha + beta;
    2f64.powf(ab + 1.0) * gamma(alpha + 1.0) * gamma(beta + 1.0) / gamma(ab + 2.0)
}

/// Monic recurrence for the Jacobi weight `(1-t)^α (1+t)^β` with `m` diagonal
/// coefficients.
pub fn jacobi_recurrence(alpha: f64, beta: f64, m: usize) -> Result<RecurrenceCoeffs> {
    check_jacobi_params(alpha, beta)?;
    if m == 0 {
        return Err(Error::InvalidParameter("recurrence length must be at least 1".into()));
    }
    let ab = alpha + beta;
    let mut a = Vec::with_capacity(m);
    let mut b = Vec::with_capacity(m.saturating_sub(1));
    a.push((beta - alpha) / (ab + 2.0));
    for k in 1..m {
        let kf = k as f64;
        let s = 2.0 * kf + ab;
        a.push((beta * beta - alpha * alpha) / (s * (s + 2.0)));
        let bk = if k == 1 {
            // (k + α + β) cancels against (2k + α + β - 1) at k = 1
            4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab).powi(2) * (3.0 + ab))
        } else {
            4.0 * kf * (kf + alpha) * (kf + beta) * (kf + ab) / (s * s * (s + 1.0) * (s - 1.0))
        };
        b.push(bk);
    }
    RecurrenceCoeffs::new(a, b, jacobi_mass(alpha, beta))
}

/// Orthonormal values `p_0(t), ..., p_n(t)`.
pub(crate) fn orthonormal_values(rc: &RecurrenceCoeffs, n: usize, t: f64) -> Vec<f64> {
    let mut p = Vec::with_capacity(n + 1);
    p.push(1.0 / rc.mu0.sqrt());
    if n >= 1 {
        p.push((t - rc.a[0]) * p[0] / rc.sqrt_b(1));
    }
    for k in 1..n {
        let next = ((t - rc.a[k]) * p[k] - rc.sqrt_b(k) * p[k - 1]) / rc.sqrt_b(k + 1);
        p.push(next);
    }
    p
}

/// Orthonormal values and first derivatives at `t`, degrees `0..=n`.
pub(crate) fn orthonormal_values_deriv(rc: &RecurrenceCoeffs, n: usize, t: f64) -> (Vec<f64>, Vec<f64>) {
    let p = orthonormal_values(rc, n, t);
    let mut d = Vec::with_capacity(n + 1);
    d.push(0.0);
    if n >= 1 {
        d.push(p[0] / rc.sqrt_b(1));
    }
    for k in 1..n {
        let next = (p[k] + (t - rc.a[k]) * d[k] - rc.sqrt_b(k) * d[k - 1]) / rc.sqrt_b(k + 1);
        d.push(next);
    }
    (p, d)
}

/// Values `p_j(x1)` and divided differences `(p_j(x1) - p_j(x2)) / (x1 - x2)`
/// for `j = 0..=n`. The divided differences are produced by their own
/// recurrence, so `x1 == x2` yields the derivative without cancellation.
pub(crate) fn orthonormal_divided(rc: &RecurrenceCoeffs, n: usize, x1: f64, x2: f64) -> (Vec<f64>, Vec<f64>) {
    let p = orthonormal_values(rc, n, x1);
    let mut q = Vec::with_capacity(n + 1);
    q.push(0.0);
    if n >= 1 {
        q.push(p[0] / rc.sqrt_b(1));
    }
    for k in 1..n {
        let next = (p[k] + (x2 - rc.a[k]) * q[k] - rc.sqrt_b(k) * q[k - 1]) / rc.sqrt_b(k + 1);
        q.push(next);
    }
    (p, q)
}

/// Orthonormal polynomial `p_n(w; t)` with `∫ p_n² w = 1`.
pub fn eval_orthonormal(rc: &RecurrenceCoeffs, n: usize, t: f64) -> Result<f64> {
    if n >= rc.len() {
        return Err(Error::InsufficientRecurrence { required: n + 1, available: rc.len() });
    }
    Ok(orthonormal_values(rc, n, t)[n])
}
