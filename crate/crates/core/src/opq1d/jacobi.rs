use super::check_jacobi_params;
use crate::Result;

/// Classical Jacobi polynomial `P_n^{(α,β)}(t)` normalised by
/// `P_n^{(α,β)}(1) = binom(n + α, n)`.
pub fn eval_jacobi_standard(alpha: f64, beta: f64, n: usize, t: f64) -> Result<f64> {
    check_jacobi_params(alpha, beta)?;
    Ok(jacobi_unchecked(alpha, beta, n, t))
}

/// `d/dt P_n^{(α,β)}(t) = (n + α + β + 1)/2 · P_{n-1}^{(α+1,β+1)}(t)`.
pub fn eval_jacobi_standard_derivative(alpha: f64, beta: f64, n: usize, t: f64) -> Result<f64> {
    check_jacobi_params(alpha, beta)?;
    Ok(jacobi_derivative_unchecked(alpha, beta, n, t))
}

pub(crate) fn jacobi_unchecked(alpha: f64, beta: f64, n: usize, t: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let ab = alpha + beta;
    let mut p0 = 1.0;
    let mut p1 = 0.5 * (ab + 2.0) * t + 0.5 * (alpha - beta);
    for k in 2..=n {
        let k = k as f64;
        let s = 2.0 * k + ab;
        let c0 = 2.0 * k * (k + ab) * (s - 2.0);
        let c1 = (s - 1.0) * (s * (s - 2.0) * t + alpha * alpha - beta * beta);
        let c2 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * s;
        let p2 = (c1 * p1 - c2 * p0) / c0;
        p0 = p1;
        p1 = p2;
    }
    p1
}

pub(crate) fn jacobi_derivative_unchecked(alpha: f64, beta: f64, n: usize, t: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    0.5 * (n as f64 + alpha + beta + 1.0) * jacobi_unchecked(alpha + 1.0, beta + 1.0, n - 1, t)
}
