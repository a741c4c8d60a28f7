//! Minimal cubature rules on `[-1, 1]²` whose node counts equal Möller's lower
//! bound, for the weights
//!
//! `W_γ(x) = w(cos(θ1 - θ2)) w(cos(θ1 + θ2)) (1 - x1²)^γ (1 - x2²)^γ |x1² - x2²|`,
//! `x_i = cos θ_i`, `γ = ±1/2`.

mod qbasis;

pub use qbasis::{eval_q_basis, QBranch};

use crate::exec::Execution;
use crate::opq1d::{diagonal_zero_set, gauss_rule};
use crate::oracle::{basis_indices, basis_position, MomentSource, SquareOracle, TestBasis};
use crate::rule::power;
use crate::{CubatureRule2D, Error, Gamma, Result, Weight1D, WeightFamily, WeightSpec};
use nalgebra::{DMatrix, DVector};

/// Lower bound `n(n+1)/2 + ⌊n/2⌋` on the node count of a cubature rule of
/// degree `2n - 1` for a centrally symmetric weight.
pub fn moller_bound(n: usize) -> usize {
    n * (n + 1) / 2 + n / 2
}

/// Pointwise value of a square or composed weight; `+∞` where a negative
/// exponent meets its singular set.
pub fn weight_w(spec: &WeightSpec, x1: f64, x2: f64) -> Result<f64> {
    if !(x1.abs() < 1.0 && x2.abs() < 1.0) {
        return Err(Error::OutsideDomain(x1, x2));
    }
    let g = spec.gamma.value();
    let edge = power(1.0 - x1 * x1, g) * power(1.0 - x2 * x2, g);
    let ell = match spec.family {
        WeightFamily::Square => 1,
        WeightFamily::Composed { ell } => ell,
        WeightFamily::Biangle => return Err(Error::InvalidParameter("biangle weight is not a square weight".into())),
    };
    let (y1, y2) = if ell == 1 { (x1, x2) } else { (chebyshev_t(ell, x1), chebyshev_t(ell, x2)) };
    if let Some((a, b)) = spec.weight.jacobi_params() {
        let core = power((y1 - y2).abs(), 2.0 * a + 1.0) * power((y1 + y2).abs(), 2.0 * b + 1.0);
        return Ok(core * edge);
    }
    // w(cos ℓ(θ1 ∓ θ2)) with cos ℓ(θ1 ∓ θ2) = y1 y2 ± √(1 - y1²) √(1 - y2²)
    let r = (1.0 - y1 * y1).max(0.0).sqrt() * (1.0 - y2 * y2).max(0.0).sqrt();
    let w = |t: f64| spec.weight.density(t.clamp(-1.0, 1.0));
    match (w(y1 * y2 + r), w(y1 * y2 - r)) {
        (Some(a), Some(b)) => Ok(a * b * (y1 * y1 - y2 * y2).abs() * edge),
        _ => Err(Error::Unsupported("weight has no density".into())),
    }
}

pub(crate) fn chebyshev_t(n: usize, x: f64) -> f64 {
    let (mut a, mut b) = (1.0, x);
    if n == 0 {
        return 1.0;
    }
    for _ in 1..n {
        let c = 2.0 * x * b - a;
        a = b;
        b = c;
    }
    b
}

/// `(s, t) = (cos((θ_j - θ_k)/2), cos((θ_j + θ_k)/2))` for `t_j = cos θ_j`,
/// `t_k = cos θ_k`.
pub fn half_angle_point(tj: f64, tk: f64) -> (f64, f64) {
    let (a, b) = (tj.clamp(-1.0, 1.0).acos(), tk.clamp(-1.0, 1.0).acos());
    (((a - b) / 2.0).cos(), ((a + b) / 2.0).cos())
}

/// The four images `(s,t), (t,s), (-s,-t), (-t,-s)`.
pub(crate) fn four_images(s: f64, t: f64) -> [[f64; 2]; 4] {
    [[s, t], [t, s], [-s, -t], [-t, -s]]
}

/// Merges nodes whose coordinates agree within `tol`, adding their weights.
pub(crate) fn merge_nodes(nodes: Vec<[f64; 2]>, weights: Vec<f64>, tol: f64) -> (Vec<[f64; 2]>, Vec<f64>) {
    let mut pairs: Vec<([f64; 2], f64)> = nodes.into_iter().zip(weights).collect();
    pairs.sort_by(|a, b| a.0[0].total_cmp(&b.0[0]).then(a.0[1].total_cmp(&b.0[1])));
    let mut out: Vec<([f64; 2], f64)> = Vec::with_capacity(pairs.len());
    for (p, w) in pairs {
        let mut merged = false;
        for q in out.iter_mut().rev() {
            if p[0] - q.0[0] > tol {
                break;
            }
            if (p[1] - q.0[1]).abs() <= tol {
                q.1 += w;
                merged = true;
                break;
            }
        }
        if !merged {
            out.push((p, w));
        }
    }
    out.into_iter().unzip()
}

fn square_spec_check(spec: &WeightSpec) -> Result<()> {
    if spec.family != WeightFamily::Square {
        return Err(Error::InvalidParameter("expected a square weight specification".into()));
    }
    Ok(())
}

/// Minimal rule of degree `4m - 1` with `2m(m+1)` nodes for `W_γ`.
///
/// `γ = -1/2`: the four images of `(s_{jk}, t_{jk})`, `j ≤ k`, from the
/// `m`-point Gauss rule of `w`, each with weight `λ_j λ_k / 2`, halved again
/// for `j = k`.
/// `γ = +1/2`: the same from the `(m+1)`-point rule with `j < k`, weight
/// `λ_j λ_k (t_j - t_k)² / 8`.
pub fn minimal_rule_even(spec: &WeightSpec, m: usize) -> Result<CubatureRule2D> {
    square_spec_check(spec)?;
    if m == 0 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    let pts = match spec.gamma {
        Gamma::MinusHalf => m,
        Gamma::PlusHalf => m + 1,
    };
    let g = gauss_rule(&spec.weight.recurrence(pts)?, pts)?;
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for k in 0..pts {
        for j in 0..=k {
            let (lj, lk) = (g.weights[j], g.weights[k]);
            let w = match spec.gamma {
                Gamma::MinusHalf if j == k => 0.25 * lj * lk,
                Gamma::MinusHalf => 0.5 * lj * lk,
                Gamma::PlusHalf if j == k => continue,
                Gamma::PlusHalf => lj * lk * (g.nodes[j] - g.nodes[k]).powi(2) / 8.0,
            };
            let (s, t) = half_angle_point(g.nodes[j], g.nodes[k]);
            for p in four_images(s, t) {
                nodes.push(p);
                weights.push(w);
            }
        }
    }
    let (nodes, weights) = merge_nodes(nodes, weights, 1e-12);
    let expected = moller_bound(2 * m);
    if nodes.len() != expected {
        return Err(Error::NodeCount { expected, found: nodes.len() });
    }
    Ok(CubatureRule2D::new(nodes, weights, 4 * m - 1, spec.clone(), m))
}

/// Node orbits of the odd-degree rule; every orbit shares one weight.
pub fn odd_rule_orbits(alpha: f64, beta: f64, gamma: Gamma, m: usize) -> Result<Vec<Vec<[f64; 2]>>> {
    if m == 0 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    let (pts, strict) = match gamma {
        Gamma::MinusHalf => (m, false),
        Gamma::PlusHalf => (m + 1, true),
    };
    let shifted = Weight1D::jacobi(alpha + 1.0, beta)?;
    let g = gauss_rule(&shifted.recurrence(pts)?, pts)?;
    let mut orbits = Vec::new();
    for k in 0..pts {
        for j in 0..=k {
            if strict && j == k {
                continue;
            }
            let (s, t) = half_angle_point(g.nodes[j], g.nodes[k]);
            orbits.push(four_images(s, t).to_vec());
        }
    }
    for &xi in &diagonal_zero_set(alpha, beta, m, gamma)? {
        if xi == 0.0 {
            orbits.push(vec![[0.0, 0.0]]);
        } else if xi > 0.0 {
            orbits.push(vec![[xi, xi], [-xi, -xi]]);
        }
    }
    Ok(orbits)
}

/// Minimal rule of degree `4m + 1` with `2(m+1)² - 1` nodes for the Jacobi
/// weight `W_{α,β,γ}`.
///
/// Off-diagonal orbits come from the Gauss rule of `(1-t)^{α+1}(1+t)^β`
/// (`m` points for `γ = -1/2`, `m + 1` points and `j < k` for `γ = +1/2`); the
/// `2m + 1` diagonal points `(ξ, ξ)` are the zeros from
/// [`diagonal_zero_set`]. The weights solve the symmetry-reduced moment system
/// by SVD least squares; the rule is rejected unless the residual is below
/// `1e-9 ‖b‖` and every weight is positive.
pub fn minimal_rule_odd(alpha: f64, beta: f64, gamma: Gamma, m: usize) -> Result<CubatureRule2D> {
    minimal_rule_odd_with(alpha, beta, gamma, m, Execution::default())
}

pub fn minimal_rule_odd_with(alpha: f64, beta: f64, gamma: Gamma, m: usize, exec: Execution) -> Result<CubatureRule2D> {
    let spec = WeightSpec::square(Weight1D::jacobi(alpha, beta)?, gamma);
    let orbits = odd_rule_orbits(alpha, beta, gamma, m)?;
    let count: usize = orbits.iter().map(Vec::len).sum();
    let expected = moller_bound(2 * m + 1);
    if count != expected {
        return Err(Error::NodeCount { expected, found: count });
    }

    let degree = 4 * m + 1;
    let oracle = SquareOracle::new(&spec, exec)?;
    let moments = oracle.moments(TestBasis::Chebyshev, degree)?;
    // symmetric even test functions T_i(x1) T_j(x2) + T_j(x1) T_i(x2), i ≤ j
    let rows: Vec<(usize, usize)> =
        basis_indices(degree).into_iter().filter(|&(i, j)| i <= j && (i + j) % 2 == 0).collect();
    let tvals = |x: f64| -> Vec<f64> { (0..=degree).map(|k| crate::squaremin::chebyshev_t(k, x)).collect() };
    let orbit_t: Vec<Vec<(Vec<f64>, Vec<f64>)>> =
        orbits.iter().map(|o| o.iter().map(|p| (tvals(p[0]), tvals(p[1]))).collect()).collect();
    let a = DMatrix::from_fn(rows.len(), orbits.len(), |r, c| {
        let (i, j) = rows[r];
        orbit_t[c].iter().map(|(t1, t2)| t1[i] * t2[j] + t1[j] * t2[i]).sum::<f64>()
    });
    let b = DVector::from_iterator(
        rows.len(),
        rows.iter().map(|&(i, j)| moments[basis_position(i, j)] + moments[basis_position(j, i)]),
    );
    let svd = a.clone().svd(true, true);
    let lambda = svd.solve(&b, 1e-14).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let residual = (&a * &lambda - &b).norm();
    let tolerance = 1e-9 * b.norm();
    if !(residual <= tolerance) {
        return Err(Error::MomentResidual { residual, tolerance });
    }

    let mut nodes = Vec::with_capacity(count);
    let mut weights = Vec::with_capacity(count);
    for (orbit, &w) in orbits.iter().zip(lambda.iter()) {
        if !(w > 0.0) {
            return Err(Error::NonpositiveWeight { weight: w, x1: orbit[0][0], x2: orbit[0][1] });
        }
        for p in orbit {
            nodes.push(*p);
            weights.push(w);
        }
    }
    Ok(CubatureRule2D::new(nodes, weights, degree, spec, m))
}
