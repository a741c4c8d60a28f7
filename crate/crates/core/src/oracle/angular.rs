//! Reference integration of the square weights in rotated half-angle
//! coordinates `ψ1 = (θ1 - θ2)/2`, `ψ2 = (θ1 + θ2)/2`, `x_i = cos θ_i`.
//!
//! In these coordinates `|T_ℓ(x1) ∓ T_ℓ(x2)| = 2 |sin ℓψ1 sin ℓψ2|` (resp.
//! `2 |cos ℓψ1 cos ℓψ2|`), so every non-smooth line of the weight is a grid
//! line `ψ_i ∈ (π / 2ℓ) Z`. Each tile of side `π / 2ℓ` carries a tensor rule
//! whose one-dimensional factor absorbs the endpoint behaviour exactly:
//! Gauss–Legendre for integer exponents, Gauss–Jacobi otherwise.

use super::TestBasis;
use crate::exec::{chunked_sum, Execution};
use crate::opq1d::{gauss_rule, jacobi_recurrence, QuadratureRule1D};
use crate::{Error, Gamma, Result, WeightFamily, WeightSpec};
use std::f64::consts::PI;

/// `2^{p+q} |sin ℓψ1 sin ℓψ2|^p |cos ℓψ1 cos ℓψ2|^q (sin θ1 sin θ2)^{2γ+1}`
/// with `p = 2α + 1`, `q = 2β + 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularWeight {
    pub p: f64,
    pub q: f64,
    pub ell: usize,
    pub gamma: Gamma,
}

impl AngularWeight {
    pub fn from_spec(spec: &WeightSpec) -> Result<Self> {
        let (alpha, beta) = spec
            .weight
            .jacobi_params()
            .ok_or_else(|| Error::Unsupported("reference moments need a Jacobi weight".into()))?;
        let ell = match spec.family {
            WeightFamily::Square => 1,
            WeightFamily::Composed { ell } => ell,
            WeightFamily::Biangle => {
                return Err(Error::Unsupported("angular oracle applies to square weights".into()))
            }
        };
        Ok(Self { p: 2.0 * alpha + 1.0, q: 2.0 * beta + 1.0, ell, gamma: spec.gamma })
    }

    fn integer_exponents(&self) -> bool {
        let int = |e: f64| e >= 0.0 && e.fract() == 0.0;
        int(self.p) && int(self.q)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct LadderOptions {
    /// Points per tile and axis on the first level; derived from the degree
    /// when `None`.
    pub n0: Option<usize>,
    pub tol: f64,
    pub max_levels: usize,
    /// Run exactly this many levels and skip the stopping test.
    pub fixed_levels: Option<usize>,
}

impl Default for LadderOptions {
    fn default() -> Self {
        Self { n0: None, tol: 1e-13, max_levels: 12, fixed_levels: None }
    }
}

#[derive(Debug, Clone)]
pub struct LadderOutcome {
    /// Integrals of the basis, ordered by `(degree, i)`.
    pub values: Vec<f64>,
    /// Scaled disagreement between consecutive levels.
    pub history: Vec<f64>,
    pub points_per_axis: usize,
}

/// Integrates every function of `basis` up to `max_degree` against `weight`
/// in one pass per level, doubling the per-tile order until two levels agree
/// to `tol` relative to `max(|I|, mass)`.
pub fn integrate_basis(
    weight: &AngularWeight,
    basis: TestBasis,
    max_degree: usize,
    mass: f64,
    exec: Execution,
    opts: LadderOptions,
) -> Result<LadderOutcome> {
    let ell = weight.ell as f64;
    let h = PI / (2.0 * ell);
    let mut n = opts.n0.unwrap_or(8 + (0.5 * (max_degree as f64 + 4.0 * ell) * h).ceil() as usize);
    let levels = opts.fixed_levels.unwrap_or(opts.max_levels);
    let mut prev: Option<Vec<f64>> = None;
    let mut history = Vec::new();
    for _ in 0..levels {
        let cur = one_level(weight, basis, max_degree, n, exec)?;
        if let Some(p) = &prev {
            let diff = cur
                .iter()
                .zip(p)
                .map(|(a, b)| (a - b).abs() / a.abs().max(mass))
                .fold(0.0, f64::max);
            history.push(diff);
            if opts.fixed_levels.is_none() && diff <= opts.tol {
                return Ok(LadderOutcome { values: cur, history, points_per_axis: n });
            }
        }
        prev = Some(cur);
        n *= 2;
    }
    match (opts.fixed_levels, prev) {
        (Some(_), Some(values)) => Ok(LadderOutcome { values, history, points_per_axis: n / 2 }),
        _ => Err(Error::OracleNonConvergence {
            levels,
            estimate: history.last().copied().unwrap_or(f64::INFINITY),
        }),
    }
}

/// `(ψ, weight)` along one axis with `intervals` tiles of width `h`.
fn axis_nodes(w: &AngularWeight, n: usize, intervals: usize) -> Result<Vec<(f64, f64)>> {
    let ell = w.ell as f64;
    let h = PI / (2.0 * ell);
    let smooth = w.integer_exponents();
    // tile parity decides which exponent sits at which end
    let rule_for = |el: f64, er: f64| -> Result<QuadratureRule1D> {
        let (a, b) = if smooth { (0.0, 0.0) } else { (er, el) };
        gauss_rule(&jacobi_recurrence(a, b, n)?, n)
    };
    let factor = |d: f64, e: f64| -> f64 {
        if e == 0.0 {
            1.0
        } else if smooth {
            (ell * d).sin().powi(e as i32)
        } else {
            // sin(ℓδ) / (2δ/h), analytic and positive on the tile
            ((ell * d).sin() / (2.0 * d / h)).powf(e)
        }
    };
    let even = rule_for(w.p, w.q)?;
    let odd = rule_for(w.q, w.p)?;
    let mut out = Vec::with_capacity(n * intervals);
    for k in 0..intervals {
        let (rule, el, er) = if k % 2 == 0 { (&even, w.p, w.q) } else { (&odd, w.q, w.p) };
        for (&x, &wt) in rule.nodes.iter().zip(&rule.weights) {
            let dl = 0.5 * (1.0 + x) * h;
            let dr = 0.5 * (1.0 - x) * h;
            let psi = k as f64 * h + dl;
            out.push((psi, wt * factor(dl, el) * factor(dr, er) * 0.5 * h));
        }
    }
    Ok(out)
}

pub(crate) fn fill_basis_1d(basis: TestBasis, x: f64, out: &mut [f64]) {
    out[0] = 1.0;
    if out.len() == 1 {
        return;
    }
    out[1] = x;
    for k in 2..out.len() {
        out[k] = match basis {
            TestBasis::Chebyshev => 2.0 * x * out[k - 1] - out[k - 2],
            TestBasis::Monomial => x * out[k - 1],
        };
    }
}

fn one_level(w: &AngularWeight, basis: TestBasis, deg: usize, n: usize, exec: Execution) -> Result<Vec<f64>> {
    let ell = w.ell;
    let a1 = axis_nodes(w, n, 2 * ell)?;
    let a2 = axis_nodes(w, n, 4 * ell)?;
    let d1 = deg + 1;
    let plus = w.gamma == Gamma::PlusHalf;
    let grid = chunked_sum(exec, &a1, 1, d1 * d1, |chunk, acc| {
        let mut b1 = vec![0.0; d1];
        let mut b2 = vec![0.0; d1];
        for &(psi1, w1) in chunk {
            for &(psi2, w2) in &a2 {
                let th1 = psi1 + psi2;
                let th2 = psi2 - psi1;
                let mut wt = w1 * w2;
                if plus {
                    let s = th1.sin() * th2.sin();
                    wt *= s * s;
                }
                fill_basis_1d(basis, th1.cos(), &mut b1);
                fill_basis_1d(basis, th2.cos(), &mut b2);
                for (i, &v1) in b1.iter().enumerate() {
                    let c = wt * v1;
                    let row = &mut acc[i * d1..i * d1 + d1 - i];
                    for (r, &v2) in row.iter_mut().zip(&b2[..d1 - i]) {
                        *r += c * v2;
                    }
                }
            }
        }
    });
    let scale = 0.5 * 2f64.powf(w.p + w.q);
    let mut out = Vec::with_capacity(d1 * (d1 + 1) / 2);
    for d in 0..=deg {
        for i in 0..=d {
            out.push(scale * grid[i * d1 + (d - i)]);
        }
    }
    Ok(out)
}
