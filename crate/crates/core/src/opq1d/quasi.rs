use super::check_jacobi_params;
use super::jacobi::{jacobi_derivative_unchecked, jacobi_unchecked};
use crate::{Error, Gamma, Result};

/// The quasi-orthogonal combination whose zeros give the diagonal nodes of the
/// odd-degree minimal rules, with `A = P_m^{(α,β+1)}(1) P_m^{(α+1,β)}(2t²-1)` and
/// `B = P_m^{(α,β+1)}(2t²-1) P_m^{(α+1,β)}(1)`:
/// `S_m^{(-1/2)} = A + B`, `S_m^{(+1/2)} = A - B`.
///
/// Even in `t` by construction.
pub fn quasi_s(alpha: f64, beta: f64, m: usize, gamma: Gamma, t: f64) -> Result<f64> {
    check_jacobi_params(alpha, beta)?;
    Ok(s_unchecked(alpha, beta, m, gamma, t).0)
}

/// `d/dt` of [`quasi_s`].
pub fn quasi_s_derivative(alpha: f64, beta: f64, m: usize, gamma: Gamma, t: f64) -> Result<f64> {
    check_jacobi_params(alpha, beta)?;
    Ok(s_unchecked(alpha, beta, m, gamma, t).1)
}

fn sign_of(gamma: Gamma) -> f64 {
    match gamma {
        Gamma::MinusHalf => 1.0,
        Gamma::PlusHalf => -1.0,
    }
}

fn s_unchecked(alpha: f64, beta: f64, m: usize, gamma: Gamma, t: f64) -> (f64, f64) {
    let x = 2.0 * t * t - 1.0;
    let c1 = jacobi_unchecked(alpha, beta + 1.0, m, 1.0);
    let c2 = jacobi_unchecked(alpha + 1.0, beta, m, 1.0);
    let sg = sign_of(gamma);
    let v = c1 * jacobi_unchecked(alpha + 1.0, beta, m, x) + sg * c2 * jacobi_unchecked(alpha, beta + 1.0, m, x);
    let dx = c1 * jacobi_derivative_unchecked(alpha + 1.0, beta, m, x)
        + sg * c2 * jacobi_derivative_unchecked(alpha, beta + 1.0, m, x);
    (v, dx * 4.0 * t)
}

/// The `2m + 1` diagonal abscissae of the odd-degree minimal rule of degree
/// `4m + 1`, sorted ascending.
///
/// * `MinusHalf`: zeros of `t S_m^{(-1/2)}(t)` on `[-1, 1]`.
/// * `PlusHalf`: zeros of `t S_{m+1}^{(+1/2)}(t) / (1 - t²)` on `(-1, 1)`;
///   `S^{(+1/2)}` always vanishes at `±1` and those zeros are not nodes.
///
/// The count is verified and a mismatch is reported as [`Error::ZeroCount`].
pub fn diagonal_zero_set(alpha: f64, beta: f64, m: usize, gamma: Gamma) -> Result<Vec<f64>> {
    check_jacobi_params(alpha, beta)?;
    if m == 0 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    let deg = match gamma {
        Gamma::MinusHalf => m,
        Gamma::PlusHalf => m + 1,
    };
    let f = |t: f64| s_unchecked(alpha, beta, deg, gamma, t);

    let grid_n = 64 * deg;
    let grid: Vec<f64> = (0..=grid_n).map(|i| i as f64 / grid_n as f64).collect();
    let vals: Vec<f64> = grid.iter().map(|&t| f(t).0).collect();
    let vmax = vals.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let tiny = 1e-12 * vmax;

    let mut positive = Vec::new();
    // Interior sign changes. The last grid interval touches t = 1, where the
    // `+` combination vanishes identically; the search stops short of it.
    let last = if gamma == Gamma::PlusHalf { grid_n - 1 } else { grid_n };
    let mut i = 0;
    while i < last {
        let (a, b) = (grid[i], grid[i + 1]);
        let (fa, fb) = (vals[i], vals[i + 1]);
        if i > 0 && fa.abs() <= tiny {
            // zero on a grid point
            positive.push(a);
        } else if fa * fb < 0.0 && (b < 1.0 || fb.abs() > tiny) {
            positive.push(refine(&f, a, b, fa));
        }
        i += 1;
    }
    if gamma == Gamma::PlusHalf {
        let (a, fa) = (grid[grid_n - 1], vals[grid_n - 1]);
        // an interior zero squeezed into the final interval shows up as a sign
        // change of S / (1 - t) between a and 1
        let (_, d1) = f(1.0);
        if fa * -d1 < 0.0 {
            let g = |t: f64| {
                let (v, d) = f(t);
                if t < 1.0 {
                    (v / (1.0 - t), (d * (1.0 - t) + v) / (1.0 - t).powi(2))
                } else {
                    (-d1, 0.0)
                }
            };
            positive.push(refine(&g, a, 1.0 - 1e-15, fa / (1.0 - a)));
        }
    } else if vals[grid_n].abs() <= tiny {
        positive.push(1.0);
    }
    positive.retain(|&t| t > 0.0);

    let mut zeros: Vec<f64> = positive.iter().rev().map(|&t| -t).collect();
    zeros.push(0.0);
    zeros.extend(positive.iter().copied());
    let expected = 2 * m + 1;
    if zeros.len() != expected {
        return Err(Error::ZeroCount { expected, found: zeros.len() });
    }
    Ok(zeros)
}

/// Bisection to 1e-14 followed by three Newton steps kept inside the bracket.
fn refine<F: Fn(f64) -> (f64, f64)>(f: &F, mut a: f64, mut b: f64, mut fa: f64) -> f64 {
    while b - a > 1e-14 {
        let mid = 0.5 * (a + b);
        let fm = f(mid).0;
        if fm == 0.0 {
            return mid;
        }
        if fa * fm < 0.0 {
            b = mid;
        } else {
            a = mid;
            fa = fm;
        }
    }
    let mut t = 0.5 * (a + b);
    for _ in 0..3 {
        let (v, d) = f(t);
        if d == 0.0 || v == 0.0 {
            break;
        }
        let next = t - v / d;
        if (next - t).abs() > 1e-12 {
            break;
        }
        t = next;
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn values_at_one() {
        // the + combination cancels at t = 1; the - combination doubles
        for &(a, b, m) in &[(0.0, 0.0, 1), (-0.5, 0.5, 3), (1.5, -0.2, 6)] {
            assert_eq!(quasi_s(a, b, m, Gamma::PlusHalf, 1.0).unwrap(), 0.0);
            assert_eq!(quasi_s(a, b, m, Gamma::PlusHalf, -1.0).unwrap(), 0.0);
        }
        // P_1^{(0,1)}(1) = 1 and P_1^{(1,0)}(1) = 2
        assert!((quasi_s(0.0, 0.0, 1, Gamma::MinusHalf, 1.0).unwrap() - 4.0).abs() < 1e-15);
    }

    #[test]
    fn chebyshev_m1_sets() {
        for gamma in [Gamma::MinusHalf, Gamma::PlusHalf] {
            let z = diagonal_zero_set(-0.5, -0.5, 1, gamma).unwrap();
            assert_eq!(z.len(), 3);
            assert_eq!(z[1], 0.0);
            assert_eq!(z[0], -z[2]);
            assert!(z[2] > 0.0 && z[2] < 1.0);
            let s = match gamma {
                Gamma::MinusHalf => 1,
                Gamma::PlusHalf => 2,
            };
            assert!(quasi_s(-0.5, -0.5, s, gamma, z[2]).unwrap().abs() < 1e-13);
        }
    }

    #[test]
    fn derivative_matches_difference() {
        let h = 1e-6;
        for gamma in [Gamma::MinusHalf, Gamma::PlusHalf] {
            for &t in &[-0.8, 0.1, 0.6] {
                let fd = (quasi_s(0.3, 0.7, 4, gamma, t + h).unwrap() - quasi_s(0.3, 0.7, 4, gamma, t - h).unwrap())
                    / (2.0 * h);
                let d = quasi_s_derivative(0.3, 0.7, 4, gamma, t).unwrap();
                assert!((d - fd).abs() < 1e-5 * fd.abs().max(1.0));
            }
        }
    }

    #[test]
    fn zero_close_to_one() {
        // the largest zero sits inside the last grid interval
        let z = diagonal_zero_set(-0.8880674022904289, 0.10028453269638683, 6, Gamma::MinusHalf).unwrap();
        assert_eq!(z.len(), 13);
        assert!(z[12] > 0.997 && z[12] < 1.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(diagonal_zero_set(0.0, 0.0, 0, Gamma::MinusHalf).is_err());
        assert!(quasi_s(-1.2, 0.0, 2, Gamma::MinusHalf, 0.0).is_err());
    }

    proptest! {
        #[test]
        fn s_is_even(a in -0.95f64..2.0, b in -0.95f64..2.0, m in 0usize..12, t in -1.0f64..1.0, plus in any::<bool>()) {
            let g = if plus { Gamma::PlusHalf } else { Gamma::MinusHalf };
            prop_assert_eq!(quasi_s(a, b, m, g, t).unwrap(), quasi_s(a, b, m, g, -t).unwrap());
        }

        #[test]
        fn zero_sets_have_2m_plus_1_points(a in -0.9f64..2.0, b in -0.9f64..2.0, m in 1usize..10, plus in any::<bool>()) {
            let g = if plus { Gamma::PlusHalf } else { Gamma::MinusHalf };
            let deg = if plus { m + 1 } else { m };
            let z = diagonal_zero_set(a, b, m, g).unwrap();
            prop_assert_eq!(z.len(), 2 * m + 1);
            prop_assert!(z.windows(2).all(|w| w[0] < w[1]));
            let scale = (0..=200).map(|i| quasi_s(a, b, deg, g, i as f64 / 200.0).unwrap().abs()).fold(0.0, f64::max);
            for &t in &z {
                prop_assert!(t.abs() <= 1.0);
                prop_assert!((t * quasi_s(a, b, deg, g, t).unwrap()).abs() <= 1e-10 * scale);
            }
        }
    }
}
