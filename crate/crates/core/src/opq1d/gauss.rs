use super::{orthonormal_values, symmetric_tridiagonal_eigen, RecurrenceCoeffs};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// An `m`-point Gauss rule: increasing nodes, positive weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule1D {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule1D {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&t, &w)| w * f(t)).sum()
    }
}

/// Golub–Welsch: nodes are the eigenvalues of the Jacobi matrix built from the
/// first `m` recurrence coefficients.
///
/// The weights `mu0 z_k²` from the first eigenvector components lose relative
/// accuracy where `z_k` is small, so they are recomputed as Christoffel numbers
/// `1 / Σ_{j<m} p_j(t_k)²`, which agree with `mu0 z_k²` in exact arithmetic.
pub fn gauss_rule(rc: &RecurrenceCoeffs, m: usize) -> Result<QuadratureRule1D> {
    let (mut nodes, _) = golub_welsch(rc, m)?;
    for t in nodes.iter_mut() {
        *t = polish(rc, m, *t);
    }
    let weights = nodes
        .iter()
        .map(|&t| 1.0 / orthonormal_values(rc, m - 1, t).iter().map(|p| p * p).sum::<f64>())
        .collect();
    Ok(QuadratureRule1D { nodes, weights })
}

/// Two guarded Newton steps on `√b_m p_m`, which needs no coefficient beyond
/// those of the Jacobi matrix.
fn polish(rc: &RecurrenceCoeffs, m: usize, mut t: f64) -> f64 {
    if m == 1 {
        return rc.a()[0];
    }
    for _ in 0..2 {
        let (p, d) = super::orthonormal_values_deriv(rc, m - 1, t);
        let (a, sb) = (rc.a()[m - 1], rc.b()[m - 2].sqrt());
        let v = (t - a) * p[m - 1] - sb * p[m - 2];
        let dv = p[m - 1] + (t - a) * d[m - 1] - sb * d[m - 2];
        if dv == 0.0 {
            break;
        }
        let step = v / dv;
        if !(step.abs() < 1e-10) {
            break;
        }
        t -= step;
    }
    t
}

/// Nodes and eigenvector weights `mu0 z_k²` straight from the eigensolver.
pub fn golub_welsch(rc: &RecurrenceCoeffs, m: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if m == 0 {
        return Err(Error::InvalidParameter("Gauss rule needs at least one node".into()));
    }
    rc.require(m)?;
    let off: Vec<f64> = rc.b()[..m - 1].iter().map(|b| b.sqrt()).collect();
    let eig = symmetric_tridiagonal_eigen(&rc.a()[..m], &off)?;
    let weights = eig.first_components.iter().map(|z| rc.mu0() * z * z).collect();
    Ok((eig.values, weights))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opq1d::{eval_orthonormal, jacobi_recurrence};
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    #[test]
    fn chebyshev_small() {
        let rc = jacobi_recurrence(-0.5, -0.5, 2).unwrap();
        let r1 = gauss_rule(&rc, 1).unwrap();
        assert!(r1.nodes[0].abs() < 1e-16);
        assert!((r1.weights[0] - PI).abs() < 1e-14);
        let r2 = gauss_rule(&rc, 2).unwrap();
        assert!((r2.nodes[0] + FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((r2.nodes[1] - FRAC_1_SQRT_2).abs() < 1e-15);
        for w in &r2.weights {
            assert!((w - PI / 2.0).abs() < 1e-14);
        }
    }

    #[test]
    fn legendre_two_point() {
        let rc = jacobi_recurrence(0.0, 0.0, 2).unwrap();
        let r = gauss_rule(&rc, 2).unwrap();
        let x = 1.0 / 3f64.sqrt();
        assert!((r.nodes[0] + x).abs() < 1e-15 && (r.nodes[1] - x).abs() < 1e-15);
        assert!((r.weights[0] - 1.0).abs() < 1e-14 && (r.weights[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn chebyshev_closed_form() {
        let m = 25;
        let rc = jacobi_recurrence(-0.5, -0.5, m).unwrap();
        let r = gauss_rule(&rc, m).unwrap();
        for k in 0..m {
            let exact = -((2 * k + 1) as f64 * PI / (2 * m) as f64).cos();
            assert!((r.nodes[k] - exact).abs() < 1e-14);
            assert!((r.weights[k] - PI / m as f64).abs() < 1e-13);
        }
    }

    #[test]
    fn requires_enough_coefficients() {
        let rc = jacobi_recurrence(0.0, 0.0, 3).unwrap();
        assert!(matches!(gauss_rule(&rc, 4), Err(Error::InsufficientRecurrence { .. })));
        assert!(gauss_rule(&rc, 0).is_err());
    }

    #[test]
    fn christoffel_weights_match_eigenvectors() {
        for &(a, b) in &[(-0.5, -0.5), (0.0, 0.0), (1.5, -0.3), (-0.9, 2.0)] {
            let rc = jacobi_recurrence(a, b, 20).unwrap();
            let r = gauss_rule(&rc, 20).unwrap();
            let (_, w) = golub_welsch(&rc, 20).unwrap();
            for (x, y) in r.weights.iter().zip(&w) {
                assert!((x - y).abs() < 1e-12 * y);
            }
        }
    }

    fn params() -> impl Strategy<Value = (f64, f64, usize)> {
        (-0.95f64..3.0, -0.95f64..3.0, 1usize..30)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn exact_to_degree_2m_minus_1((a, b, m) in params()) {
            let rc = jacobi_recurrence(a, b, m + 5).unwrap();
            let r = gauss_rule(&rc, m).unwrap();
            let reference = gauss_rule(&rc, m + 5).unwrap();
            for j in 0..2 * m {
                let lhs = r.integrate(|t| t.powi(j as i32));
                let rhs = reference.integrate(|t| t.powi(j as i32));
                let scale = reference.integrate(|t| t.abs().powi(j as i32));
                prop_assert!((lhs - rhs).abs() <= 1e-12 * scale.max(rhs.abs()), "j={j}");
            }
        }

        #[test]
        fn nodes_increase_and_mass((a, b, m) in params()) {
            let rc = jacobi_recurrence(a, b, m).unwrap();
            let r = gauss_rule(&rc, m).unwrap();
            prop_assert!(r.nodes.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(r.nodes.iter().all(|&t| t > -1.0 && t < 1.0));
            prop_assert!(r.weights.iter().all(|&w| w > 0.0));
            let mass: f64 = r.weights.iter().sum();
            prop_assert!((mass - rc.mu0()).abs() <= 1e-13 * rc.mu0());
        }

        #[test]
        fn nodes_interlace((a, b, m) in params()) {
            let rc = jacobi_recurrence(a, b, m + 1).unwrap();
            let r = gauss_rule(&rc, m).unwrap();
            let s = gauss_rule(&rc, m + 1).unwrap();
            for k in 0..m {
                prop_assert!(s.nodes[k] < r.nodes[k] && r.nodes[k] < s.nodes[k + 1]);
            }
        }

        #[test]
        fn nodes_are_zeros((a, b, m) in params()) {
            let rc = jacobi_recurrence(a, b, m + 1).unwrap();
            let r = gauss_rule(&rc, m).unwrap();
            let scale = (0..1000)
                .map(|i| -1.0 + 2.0 * i as f64 / 999.0)
                .map(|t| eval_orthonormal(&rc, m, t).unwrap().abs())
                .fold(0.0, f64::max);
            for &t in &r.nodes {
                prop_assert!(eval_orthonormal(&rc, m, t).unwrap().abs() <= 1e-10 * scale);
            }
        }

        #[test]
        fn symmetric_weight_gives_mirror_rule(a in -0.95f64..3.0, m in 1usize..30) {
            let rc = jacobi_recurrence(a, a, m).unwrap();
            let r = gauss_rule(&rc, m).unwrap();
            for k in 0..m {
                prop_assert!((r.nodes[k] + r.nodes[m - 1 - k]).abs() <= 1e-13);
                prop_assert!((r.weights[k] - r.weights[m - 1 - k]).abs() <= 1e-13 * r.weights[k]);
            }
        }
    }
}
