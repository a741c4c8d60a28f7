use crate::opq1d::{jacobi_recurrence, orthonormal_divided, orthonormal_values};
use crate::{Error, Gamma, Result};

/// Which of the two families of orthogonal polynomials of `W_γ` of a given
/// degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QBranch {
    One,
    Two,
}

/// Koornwinder polynomial of the Jacobi weight `(a, b)` evaluated at the pair
/// `(y1, y2)` directly, bypassing the biangle coordinates.
fn koornwinder_at(a: f64, b: f64, gamma: Gamma, n: usize, k: usize, y1: f64, y2: f64) -> Result<f64> {
    let rc = jacobi_recurrence(a, b, n + 2)?;
    Ok(match gamma {
        Gamma::MinusHalf => {
            let p1 = orthonormal_values(&rc, n, y1);
            let p2 = orthonormal_values(&rc, n, y2);
            if k == n {
                std::f64::consts::SQRT_2 * p1[n] * p2[n]
            } else {
                p1[n] * p2[k] + p2[n] * p1[k]
            }
        }
        Gamma::PlusHalf => {
            let (p1, q) = orthonormal_divided(&rc, n + 1, y1, y2);
            q[n + 1] * p1[k] - p1[n + 1] * q[k]
        }
    })
}

/// Orthogonal polynomial `_{branch}Q_{k,n}` of `W_{α,β,γ}` at `(x1, x2)`.
///
/// With `c∓ = cos(θ1 ∓ θ2) = x1 x2 ± √(1-x1²) √(1-x2²)` and `K(w', N, k)` the
/// Koornwinder polynomial of the Jacobi weight `w'` at `(c-, c+)`:
///
/// * `n = 2N`: branch one is `K(w, N, k)`, `0 ≤ k ≤ N`; branch two is
///   `(x1² - x2²) K(w^{1,1}, N-1, k)`, `0 ≤ k ≤ N-1`;
/// * `n = 2N+1`: branch one is `(x1 + x2) K(w^{0,1}, N, k)`, branch two
///   `(x1 - x2) K(w^{1,0}, N, k)`, `0 ≤ k ≤ N`;
///
/// where `w^{i,j} = (1-t)^i (1+t)^j w`.
#[allow(clippy::too_many_arguments)]
pub fn eval_q_basis(
    alpha: f64,
    beta: f64,
    gamma: Gamma,
    n: usize,
    branch: QBranch,
    k: usize,
    x1: f64,
    x2: f64,
) -> Result<f64> {
    if !(x1.abs() <= 1.0 && x2.abs() <= 1.0) {
        return Err(Error::OutsideDomain(x1, x2));
    }
    let r = (1.0 - x1 * x1).sqrt() * (1.0 - x2 * x2).sqrt();
    let cm = (x1 * x2 + r).clamp(-1.0, 1.0);
    let cp = (x1 * x2 - r).clamp(-1.0, 1.0);
    let big_n = n / 2;
    let bad_k = |max: usize| Error::InvalidParameter(format!("index k = {k} exceeds {max}"));
    if n.is_multiple_of(2) {
        match branch {
            QBranch::One => {
                if k > big_n {
                    return Err(bad_k(big_n));
                }
                koornwinder_at(alpha, beta, gamma, big_n, k, cm, cp)
            }
            QBranch::Two => {
                if big_n == 0 || k + 1 > big_n {
                    return Err(bad_k(big_n.saturating_sub(1)));
                }
                let v = koornwinder_at(alpha + 1.0, beta + 1.0, gamma, big_n - 1, k, cm, cp)?;
                Ok((x1 * x1 - x2 * x2) * v)
            }
        }
    } else {
        if k > big_n {
            return Err(bad_k(big_n));
        }
        match branch {
            QBranch::One => Ok((x1 + x2) * koornwinder_at(alpha, beta + 1.0, gamma, big_n, k, cm, cp)?),
            QBranch::Two => Ok((x1 - x2) * koornwinder_at(alpha + 1.0, beta, gamma, big_n, k, cm, cp)?),
        }
    }
}
