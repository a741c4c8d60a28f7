//! Weights composed with the Chebyshev polynomial `T_ℓ`,
//! `W^{(ℓ)}(x) = w(cos ℓ(θ1-θ2)) w(cos ℓ(θ1+θ2)) |T_ℓ(x1)² - T_ℓ(x2)²| / √(1-x1²)√(1-x2²)`,
//! and their minimal rules of degree `4ℓm - 1` built by unfolding the
//! `ℓ = 1` rule through `T_ℓ`.

use crate::opq1d::{gauss_rule, jacobi_recurrence, orthonormal_values};
use crate::squaremin::{chebyshev_t, four_images, half_angle_point, merge_nodes, moller_bound};
use crate::{CubatureRule2D, Error, Result, Weight1D, WeightSpec};
use std::f64::consts::PI;

/// `w^{(ℓ)}(t) = w(T_ℓ(t)) √(1 - T_ℓ(t)²) / √(1 - t²)`.
pub fn w_ell_value(weight: &Weight1D, ell: usize, t: f64) -> Result<f64> {
    if !(t.abs() < 1.0) {
        return Err(Error::OutsideDomain(t, 0.0));
    }
    if ell == 0 {
        return Err(Error::InvalidParameter("ell must be at least 1".into()));
    }
    let tl = (ell as f64 * t.acos()).cos();
    let root = (1.0 - t * t).sqrt();
    if let Some((a, b)) = weight.jacobi_params() {
        // merge the half powers into the Jacobi factors so that a zero of
        // 1 ± T_ℓ never meets an infinite w
        let v = crate::rule::power(1.0 - tl, a + 0.5) * crate::rule::power(1.0 + tl, b + 0.5);
        return Ok(v / root);
    }
    let w = weight.density(tl).ok_or_else(|| Error::Unsupported("weight has no density".into()))?;
    Ok(w * (1.0 - tl * tl).max(0.0).sqrt() / root)
}

/// `max_{0 ≤ k < ℓm} |∫ p_m(w; T_ℓ(t)) T_k(t) w^{(ℓ)}(t) dt|`, which vanishes
/// exactly when `p_m(w; T_ℓ)` is orthogonal of degree `ℓm` for `w^{(ℓ)}`.
///
/// With `t = cos θ` the measure is `w(cos ℓθ) |sin ℓθ| dθ`; `[0, π]` is split
/// at `jπ/ℓ` and each piece carries a Gauss–Jacobi rule that absorbs the
/// endpoint behaviour of the Jacobi weight.
pub fn composed_op_identity_check(weight: &Weight1D, ell: usize, m: usize) -> Result<f64> {
    let (alpha, beta) = weight
        .jacobi_params()
        .ok_or_else(|| Error::Unsupported("identity check needs a Jacobi weight".into()))?;
    if ell == 0 {
        return Err(Error::InvalidParameter("ell must be at least 1".into()));
    }
    let rc = weight.recurrence(m + 1)?;
    let npts = 64 + ell * m;
    let kmax = ell * m;
    let mut sums = vec![0.0; kmax];
    for j in 0..ell {
        // on piece j, cos ℓθ = ±cos φ with φ ∈ [0, π]; the sign swaps α and β
        let (el, er) = if j % 2 == 0 { (2.0 * alpha + 1.0, 2.0 * beta + 1.0) } else { (2.0 * beta + 1.0, 2.0 * alpha + 1.0) };
        let g = gauss_rule(&jacobi_recurrence(er, el, npts)?, npts)?;
        let c = 2f64.powf(alpha + beta + 1.0) / ell as f64 * PI / 2.0;
        for (&x, &wx) in g.nodes.iter().zip(&g.weights) {
            let phi = 0.5 * (1.0 + x) * PI;
            let sl = ((0.5 * phi).sin() / (1.0 + x)).powf(el);
            let sr = ((0.5 * phi).cos() / (1.0 - x)).powf(er);
            let s = if j % 2 == 0 { phi.cos() } else { -phi.cos() };
            let theta = (j as f64 * PI + phi) / ell as f64;
            let pm = orthonormal_values(&rc, m, s)[m];
            let w = c * wx * sl * sr * pm;
            for (k, acc) in sums.iter_mut().enumerate() {
                *acc += w * (k as f64 * theta).cos();
            }
        }
    }
    Ok(sums.iter().fold(0.0f64, |a, v| a.max(v.abs())))
}

/// `|∫ T_ℓ(t)^i dt/√(1-t²) - ∫ t^i dt/√(1-t²)|`, both sides from the
/// 200-point Gauss–Chebyshev rule.
pub fn folding_identity_check(ell: usize, i: usize) -> f64 {
    let n = 200;
    let (mut lhs, mut rhs) = (0.0, 0.0);
    for k in 1..=n {
        let t = ((2 * k - 1) as f64 * PI / (2 * n) as f64).cos();
        lhs += chebyshev_t(ell, t).powi(i as i32);
        rhs += t.powi(i as i32);
    }
    let w = PI / n as f64;
    (w * lhs - w * rhs).abs()
}

/// Distinct solutions `u` of `T_ℓ(u) = s` with their angular multiplicities:
/// the number of `ν ∈ {0..ℓ-1}` with `cos((arccos s + 2πν)/ℓ) = u`.
pub fn chebyshev_preimages(ell: usize, s: f64) -> Vec<(f64, usize)> {
    let th = s.clamp(-1.0, 1.0).acos();
    let mut out: Vec<(f64, usize)> = Vec::with_capacity(ell);
    for nu in 0..ell {
        let u = ((th + 2.0 * PI * nu as f64) / ell as f64).cos();
        match out.iter_mut().find(|(v, _)| (v - u).abs() <= 1e-12) {
            Some(e) => e.1 += 1,
            None => out.push((u, 1)),
        }
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out
}

/// Preimages of one point under `(u, v) -> (T_ℓ(u), T_ℓ(v))`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitSet {
    pub points: Vec<[f64; 2]>,
    /// Product of the angular multiplicities of the two coordinates.
    pub multiplicities: Vec<usize>,
    pub theta: f64,
    pub phi: f64,
    pub ell: usize,
}

impl OrbitSet {
    fn preimage(ell: usize, s: f64, t: f64, theta: f64, phi: f64) -> Self {
        let (mut points, mut multiplicities) = (Vec::new(), Vec::new());
        for (u, mu) in chebyshev_preimages(ell, s) {
            for &(v, mv) in &chebyshev_preimages(ell, t) {
                points.push([u, v]);
                multiplicities.push(mu * mv);
            }
        }
        Self { points, multiplicities, theta, phi, ell }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// `(X^-, X^+)` for `s = cos θ`, `t = cos φ`: the preimages of `(-s, -t)` and
/// of `(s, t)`.
pub fn orbit_sets(ell: usize, theta: f64, phi: f64) -> Result<(OrbitSet, OrbitSet)> {
    if ell == 0 {
        return Err(Error::InvalidParameter("ell must be at least 1".into()));
    }
    let (s, t) = (theta.cos(), phi.cos());
    Ok((OrbitSet::preimage(ell, -s, -t, theta, phi), OrbitSet::preimage(ell, s, t, theta, phi)))
}

/// Closed-form `(|X^-|, |X^+|)`: a coordinate `s` has `ℓ` preimages in
/// general, `⌊ℓ/2⌋ + 1` for `s = 1` and `⌈ℓ/2⌉` for `s = -1`.
pub fn orbit_cardinalities(ell: usize, s: f64, t: f64) -> (usize, usize) {
    let count = |c: f64| {
        if c == 1.0 {
            ell / 2 + 1
        } else if c == -1.0 {
            ell.div_ceil(2)
        } else {
            ell
        }
    };
    (count(-s) * count(-t), count(s) * count(t))
}

/// Minimal rule of degree `4ℓm - 1` with `2ℓ²m² + 2ℓm` nodes for
/// `W^{(ℓ)}_{-1/2}`.
///
/// Each node `b` of the `ℓ = 1` rule (weight `λ_b`) is replaced by its
/// preimages `(u, v)` under `T_ℓ`, weighted `λ_b mult(u) mult(v) / ℓ²`.
pub fn composed_rule(weight: &Weight1D, ell: usize, m: usize) -> Result<CubatureRule2D> {
    let spec = WeightSpec::composed(weight.clone(), ell)?;
    if m == 0 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    let g = gauss_rule(&weight.recurrence(m)?, m)?;
    let l2 = (ell * ell) as f64;
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for k in 0..m {
        for j in 0..=k {
            let mut base = 0.5 * g.weights[j] * g.weights[k];
            if j == k {
                base *= 0.5;
            }
            let (s, t) = half_angle_point(g.nodes[j], g.nodes[k]);
            for b in four_images(s, t) {
                let (_, orbit) = orbit_sets(ell, b[0].clamp(-1.0, 1.0).acos(), b[1].clamp(-1.0, 1.0).acos())?;
                for (p, &mult) in orbit.points.iter().zip(&orbit.multiplicities) {
                    nodes.push(*p);
                    weights.push(base * mult as f64 / l2);
                }
            }
        }
    }
    let (nodes, weights) = merge_nodes(nodes, weights, 1e-12);
    let expected = moller_bound(2 * ell * m);
    if nodes.len() != expected {
        return Err(Error::NodeCount { expected, found: nodes.len() });
    }
    Ok(CubatureRule2D::new(nodes, weights, 4 * ell * m - 1, spec, m))
}
