//! The parabolic biangle `Ω = {u1² ≥ 4u2, 1 + u2 ≥ |u1|}`, image of the
//! triangle `x1 ≤ x2` under `(x1, x2) -> (x1 + x2, x1 x2)`, with its
//! Koornwinder bases and Gauss cubature rules.
//!
//! Integrals over `Ω` against `𝒲_γ` are normalised by
//! `∫_Ω f 𝒲_γ du = ½ ∫∫_{[-1,1]²} f(x1 + x2, x1 x2) w(x1) w(x2) |x1 - x2|^{2γ+1} dx`.

use crate::opq1d::{gauss_rule, orthonormal_divided, orthonormal_values, RecurrenceCoeffs};
use crate::{CubatureRule2D, Error, Gamma, Result, Weight1D, WeightSpec};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BianglePoint {
    pub u1: f64,
    pub u2: f64,
}

pub fn map_x_to_u(x1: f64, x2: f64) -> BianglePoint {
    BianglePoint { u1: x1 + x2, u2: x1 * x2 }
}

pub fn in_omega(p: BianglePoint) -> bool {
    in_omega_tol(p, 0.0)
}

/// Membership with both constraints relaxed by `tol`.
pub fn in_omega_tol(p: BianglePoint, tol: f64) -> bool {
    p.u1 * p.u1 - 4.0 * p.u2 >= -tol && 1.0 + p.u2 - p.u1.abs() >= -tol
}

/// Recovers `x1 ≤ x2` with `x1 + x2 = u1`, `x1 x2 = u2`. The larger-magnitude
/// root is computed first and the other one from the product.
pub fn recover_x(p: BianglePoint) -> Result<(f64, f64)> {
    if !in_omega_tol(p, 1e-13) {
        return Err(Error::OutsideDomain(p.u1, p.u2));
    }
    let disc = (p.u1 * p.u1 - 4.0 * p.u2).max(0.0);
    let big = 0.5 * (p.u1 + disc.sqrt().copysign(p.u1));
    let small = if big == 0.0 { 0.0 } else { p.u2 / big };
    Ok(if big <= small { (big, small) } else { (small, big) })
}

/// Orthonormal Koornwinder polynomial `P_k^{n,γ}`, `0 ≤ k ≤ n`, at a point of `Ω`.
///
/// `γ = -1/2`: `p_n(x1) p_k(x2) + p_n(x2) p_k(x1)`, or `√2 p_n(x1) p_n(x2)` for `k = n`.
/// `γ = +1/2`: `(p_{n+1}(x1) p_k(x2) - p_{n+1}(x2) p_k(x1)) / (x1 - x2)`, evaluated
/// through a recurrence for divided differences so that it stays accurate on
/// the parabola `x1 = x2`.
pub fn eval_koornwinder(rc: &RecurrenceCoeffs, n: usize, k: usize, gamma: Gamma, p: BianglePoint) -> Result<f64> {
    if k > n {
        return Err(Error::InvalidParameter(format!("index k = {k} exceeds degree n = {n}")));
    }
    let (x1, x2) = recover_x(p)?;
    match gamma {
        Gamma::MinusHalf => {
            rc.require(n + 1)?;
            let p1 = orthonormal_values(rc, n, x1);
            let p2 = orthonormal_values(rc, n, x2);
            Ok(if k == n {
                std::f64::consts::SQRT_2 * p1[n] * p2[n]
            } else {
                p1[n] * p2[k] + p2[n] * p1[k]
            })
        }
        Gamma::PlusHalf => {
            rc.require(n + 2)?;
            let (p1, q) = orthonormal_divided(rc, n + 1, x1, x2);
            Ok(q[n + 1] * p1[k] - p1[n + 1] * q[k])
        }
    }
}

/// Gauss cubature of degree `2n - 1` on `Ω` for `𝒲_γ`, with `n(n+1)/2` nodes.
///
/// `γ = -1/2`: nodes `(t_j + t_k, t_j t_k)`, `j ≤ k`, from the `n`-point Gauss
/// rule of `w`, weights `λ_j λ_k` (halved for `j = k`).
/// `γ = +1/2`: nodes from the `(n+1)`-point rule, `j < k`, weights
/// `λ_j λ_k (t_j - t_k)²`.
pub fn gauss_cubature_biangle(weight: &Weight1D, n: usize, gamma: Gamma) -> Result<CubatureRule2D> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let m = match gamma {
        Gamma::MinusHalf => n,
        Gamma::PlusHalf => n + 1,
    };
    let rc = weight.recurrence(m)?;
    let g = gauss_rule(&rc, m)?;
    let mut nodes = Vec::with_capacity(n * (n + 1) / 2);
    let mut weights = Vec::with_capacity(n * (n + 1) / 2);
    for k in 0..m {
        for j in 0..=k {
            let (tj, tk) = (g.nodes[j], g.nodes[k]);
            let (lj, lk) = (g.weights[j], g.weights[k]);
            let w = match gamma {
                Gamma::MinusHalf if j == k => 0.5 * lj * lk,
                Gamma::MinusHalf => lj * lk,
                Gamma::PlusHalf if j == k => continue,
                Gamma::PlusHalf => lj * lk * (tj - tk) * (tj - tk),
            };
            let p = map_x_to_u(tj, tk);
            if !in_omega_tol(p, 1e-13) {
                return Err(Error::OutsideDomain(p.u1, p.u2));
            }
            nodes.push([p.u1, p.u2]);
            weights.push(w);
        }
    }
    let expected = n * (n + 1) / 2;
    if nodes.len() != expected {
        return Err(Error::NodeCount { expected, found: nodes.len() });
    }
    let spec = WeightSpec::biangle(weight.clone(), gamma);
    Ok(CubatureRule2D::new(nodes, weights, 2 * n - 1, spec, n))
}

/// `∫_Ω u1^a u2^b 𝒲_γ du`, exactly, from a tensor Gauss rule with `a + 2b + 2`
/// points per axis.
pub fn biangle_moment(rc: &RecurrenceCoeffs, gamma: Gamma, a: usize, b: usize) -> Result<f64> {
    biangle_integral(rc, gamma, a + 2 * b, |u1, u2| u1.powi(a as i32) * u2.powi(b as i32))
}

/// `∫_Ω f 𝒲_γ du` for a polynomial `f` of degree at most `deg` in `(x1, x2)`
/// after substitution. Returns the values for every function of `fs`.
pub fn biangle_integrals<F>(rc: &RecurrenceCoeffs, gamma: Gamma, deg: usize, fs: F, count: usize) -> Result<Vec<f64>>
where
    F: Fn(f64, f64, &mut [f64]),
{
    let pts = deg + 2;
    rc.require(pts)?;
    let g = gauss_rule(rc, pts)?;
    let mut total = vec![0.0; count];
    let mut buf = vec![0.0; count];
    for (i, (&xi, &li)) in g.nodes.iter().zip(&g.weights).enumerate() {
        for (&xk, &lk) in g.nodes.iter().zip(&g.weights).skip(i) {
            let sym = if xk == xi { 0.5 } else { 1.0 };
            let w = sym
                * li
                * lk
                * match gamma {
                    Gamma::MinusHalf => 1.0,
                    Gamma::PlusHalf => (xi - xk) * (xi - xk),
                };
            fs(xi + xk, xi * xk, &mut buf);
            for (t, v) in total.iter_mut().zip(&buf) {
                *t += w * v;
            }
        }
    }
    Ok(total)
}

fn biangle_integral<F: Fn(f64, f64) -> f64>(rc: &RecurrenceCoeffs, gamma: Gamma, deg: usize, f: F) -> Result<f64> {
    Ok(biangle_integrals(rc, gamma, deg, |u1, u2, out| out[0] = f(u1, u2), 1)?[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opq1d::{jacobi_recurrence, orthonormal_values_deriv};
    use proptest::prelude::*;
    use std::f64::consts::{PI, SQRT_2};

    fn cheb() -> RecurrenceCoeffs {
        jacobi_recurrence(-0.5, -0.5, 30).unwrap()
    }

    #[test]
    fn map_examples() {
        assert_eq!(map_x_to_u(1.0, 1.0), BianglePoint { u1: 2.0, u2: 1.0 });
        assert_eq!(map_x_to_u(1.0, -1.0), BianglePoint { u1: 0.0, u2: -1.0 });
        let p = map_x_to_u(0.3, 0.3);
        assert_eq!(p.u1 * p.u1, 4.0 * p.u2);
    }

    #[test]
    fn membership() {
        assert!(in_omega(BianglePoint { u1: 0.0, u2: 0.0 }));
        assert!(!in_omega(BianglePoint { u1: 0.0, u2: 1.0 }));
        assert!(in_omega(BianglePoint { u1: 2.0, u2: 1.0 }));
        assert!(!in_omega(BianglePoint { u1: 1.5, u2: 0.2 }));
    }

    #[test]
    fn root_recovery() {
        for &(a, b) in &[(0.3, 0.7), (-1.0, 1.0), (1e-9, 0.999), (-0.5, -0.5), (0.0, 0.0)] {
            let (x1, x2) = recover_x(map_x_to_u(a, b)).unwrap();
            assert!((x1 - a.min(b)).abs() < 1e-12 && (x2 - a.max(b)).abs() < 1e-12);
        }
        assert!(recover_x(BianglePoint { u1: 0.0, u2: 1.0 }).is_err());
    }

    #[test]
    fn koornwinder_constants() {
        let rc = cheb();
        let v = eval_koornwinder(&rc, 0, 0, Gamma::MinusHalf, BianglePoint { u1: 0.4, u2: -0.3 }).unwrap();
        assert!((v - SQRT_2 / PI).abs() < 1e-15);
        // n = 1, k = 0 with x1 = 0 reduces to p_1(s) / √π
        for &s in &[0.0, 0.6, -0.9] {
            let v = eval_koornwinder(&rc, 1, 0, Gamma::MinusHalf, map_x_to_u(0.0, s)).unwrap();
            let p1 = (2.0 / PI).sqrt() * s;
            assert!((v - p1 / PI.sqrt()).abs() < 1e-15);
        }
        assert!(eval_koornwinder(&rc, 1, 2, Gamma::MinusHalf, map_x_to_u(0.0, 0.0)).is_err());
        assert!(eval_koornwinder(&rc, 1, 0, Gamma::MinusHalf, BianglePoint { u1: 0.0, u2: 1.0 }).is_err());
    }

    /// `p'_{n+1}(x) p_k(x) - p'_k(x) p_{n+1}(x)`, the limit on the parabola.
    fn confluent(rc: &RecurrenceCoeffs, n: usize, k: usize, x: f64) -> f64 {
        let (p, d) = orthonormal_values_deriv(rc, n + 1, x);
        d[n + 1] * p[k] - d[k] * p[n + 1]
    }

    #[test]
    fn plus_half_on_parabola() {
        let rc = jacobi_recurrence(0.5, -0.3, 12).unwrap();
        for n in 0..8 {
            for k in 0..=n {
                for &x in &[-0.8, 0.0, 0.35] {
                    let on = eval_koornwinder(&rc, n, k, Gamma::PlusHalf, map_x_to_u(x, x)).unwrap();
                    let c = confluent(&rc, n, k, x);
                    assert!((on - c).abs() < 1e-12 * c.abs().max(1.0));
                    // u1² - 4u2 = 1e-6
                    let near = eval_koornwinder(&rc, n, k, Gamma::PlusHalf, map_x_to_u(x - 5e-4, x + 5e-4)).unwrap();
                    assert!((near - c).abs() < 1e-4 * c.abs().max(1.0));
                }
            }
        }
    }

    #[test]
    fn one_node_chebyshev_rule() {
        let r = gauss_cubature_biangle(&Weight1D::chebyshev(), 1, Gamma::MinusHalf).unwrap();
        assert_eq!(r.nodes(), &[[0.0, 0.0]]);
        assert!((r.weights()[0] - PI * PI / 2.0).abs() < 1e-13);
    }

    #[test]
    fn counts() {
        let r = gauss_cubature_biangle(&Weight1D::chebyshev(), 20, Gamma::MinusHalf).unwrap();
        assert_eq!((r.len(), r.degree()), (210, 39));
        let w = Weight1D::jacobi(0.2, 0.1).unwrap();
        assert_eq!(gauss_cubature_biangle(&w, 2, Gamma::PlusHalf).unwrap().len(), 3);
        assert!(gauss_cubature_biangle(&w, 0, Gamma::PlusHalf).is_err());
    }

    #[test]
    fn moment_examples() {
        let c = cheb();
        assert!((biangle_moment(&c, Gamma::MinusHalf, 0, 0).unwrap() - PI * PI / 2.0).abs() < 1e-13);
        let sym = jacobi_recurrence(0.7, 0.7, 30).unwrap();
        assert!(biangle_moment(&sym, Gamma::MinusHalf, 1, 0).unwrap().abs() < 1e-15);
        let leg = jacobi_recurrence(0.0, 0.0, 30).unwrap();
        assert!((biangle_moment(&leg, Gamma::PlusHalf, 0, 0).unwrap() - 4.0 / 3.0).abs() < 1e-14);
    }

    fn grid_scale(rc: &RecurrenceCoeffs, n: usize, k: usize, g: Gamma) -> f64 {
        let mut s: f64 = 0.0;
        for i in 0..50 {
            for j in i..50 {
                let x1 = -1.0 + 2.0 * i as f64 / 49.0;
                let x2 = -1.0 + 2.0 * j as f64 / 49.0;
                s = s.max(eval_koornwinder(rc, n, k, g, map_x_to_u(x1, x2)).unwrap().abs());
            }
        }
        s
    }

    fn params() -> impl Strategy<Value = (f64, f64, usize, bool)> {
        (prop::sample::select(vec![-0.5, 0.0, 0.5, 1.3]), prop::sample::select(vec![-0.5, 0.0, 0.5, -0.8]), 1usize..10, any::<bool>())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn rule_invariants((a, b, n, plus) in params()) {
            let g = if plus { Gamma::PlusHalf } else { Gamma::MinusHalf };
            let w = Weight1D::jacobi(a, b).unwrap();
            let r = gauss_cubature_biangle(&w, n, g).unwrap();
            prop_assert_eq!(r.len(), n * (n + 1) / 2);
            prop_assert!(r.weights().iter().all(|&w| w > 0.0));
            for p in r.nodes() {
                let inside = in_omega_tol(BianglePoint { u1: p[0], u2: p[1] }, 1e-13);
                prop_assert!(inside);
            }
            let rc = w.recurrence(4 * n + 2).unwrap();
            for d in 0..2 * n {
                for i in 0..=d {
                    let (ea, eb) = (i, d - i);
                    let exact = biangle_moment(&rc, g, ea, eb).unwrap();
                    let got = r.integrate(|u1, u2| u1.powi(ea as i32) * u2.powi(eb as i32));
                    let scale = exact.abs().max(r.mass() * 2f64.powi(ea as i32));
                    prop_assert!((got - exact).abs() <= 1e-11 * scale, "a={ea} b={eb}");
                }
            }
        }

        #[test]
        fn nodes_are_common_zeros((a, b, n, plus) in params()) {
            let g = if plus { Gamma::PlusHalf } else { Gamma::MinusHalf };
            let w = Weight1D::jacobi(a, b).unwrap();
            let r = gauss_cubature_biangle(&w, n, g).unwrap();
            let rc = w.recurrence(n + 2).unwrap();
            for k in 0..=n {
                let scale = grid_scale(&rc, n, k, g);
                for p in r.nodes() {
                    let v = eval_koornwinder(&rc, n, k, g, BianglePoint { u1: p[0], u2: p[1] }).unwrap();
                    prop_assert!(v.abs() <= 1e-9 * scale);
                }
            }
        }
    }

    #[test]
    fn orthonormal_gram_matrix() {
        for g in [Gamma::MinusHalf, Gamma::PlusHalf] {
            let w = Weight1D::jacobi(0.3, -0.4).unwrap();
            let rc = w.recurrence(8).unwrap();
            for big_n in 0..=3 {
                let r = gauss_cubature_biangle(&w, big_n + 2, g).unwrap();
                let basis: Vec<(usize, usize)> = (0..=big_n).flat_map(|n| (0..=n).map(move |k| (n, k))).collect();
                for &(n1, k1) in &basis {
                    for &(n2, k2) in &basis {
                        let v = r.integrate(|u1, u2| {
                            let p = BianglePoint { u1, u2 };
                            eval_koornwinder(&rc, n1, k1, g, p).unwrap() * eval_koornwinder(&rc, n2, k2, g, p).unwrap()
                        });
                        let e = if (n1, k1) == (n2, k2) { 1.0 } else { 0.0 };
                        assert!((v - e).abs() < 1e-9, "{g:?} ({n1},{k1}) ({n2},{k2}) {v}");
                    }
                }
            }
        }
    }
}
