//! Reference moments for every supported weight and the exactness certifier.
//!
//! Test functions are indexed by `(i, j)` and ordered by `(i + j, i)`, so the
//! moments up to degree `D` are a prefix of the moments up to any `D' > D`.
//! Two bases span the same polynomial space `Π_D`:
//!
//! * [`TestBasis::Monomial`]: `x1^i x2^j` (biangle: `u1^i u2^j`);
//! * [`TestBasis::Chebyshev`]: `T_i(x1) T_j(x2)` (biangle: `T_i(u1/2) T_j(u2)`).
//!
//! Monomial errors at degree `D + 1` shrink roughly like `2^{-D}`, so the
//! Chebyshev basis is the default for certification.

pub mod angular;

pub use angular::{integrate_basis, AngularWeight, LadderOptions, LadderOutcome};

use crate::biangle::biangle_integrals;
use crate::exec::{chunked_sum, Execution};
use crate::{CubatureRule2D, Domain, Error, Gamma, Result, Weight1D, WeightFamily, WeightSpec};
use angular::fill_basis_1d;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::Mutex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TestBasis {
    Monomial,
    #[default]
    Chebyshev,
}

/// `(i, j)` for every test function up to `max_degree`, in moment order.
pub fn basis_indices(max_degree: usize) -> Vec<(usize, usize)> {
    (0..=max_degree).flat_map(|d| (0..=d).map(move |i| (i, d - i))).collect()
}

/// Number of test functions of total degree `≤ max_degree`.
pub fn basis_len(max_degree: usize) -> usize {
    (max_degree + 1) * (max_degree + 2) / 2
}

/// Position of `(i, j)` in [`basis_indices`].
pub fn basis_position(i: usize, j: usize) -> usize {
    let d = i + j;
    d * (d + 1) / 2 + i
}

/// Values of every test function up to `max_degree` at one node.
pub fn eval_basis(basis: TestBasis, domain: Domain, max_degree: usize, x1: f64, x2: f64, out: &mut Vec<f64>) {
    let mut b1 = vec![0.0; max_degree + 1];
    let mut b2 = vec![0.0; max_degree + 1];
    let y1 = match (basis, domain) {
        (TestBasis::Chebyshev, Domain::Biangle) => 0.5 * x1,
        _ => x1,
    };
    fill_basis_1d(basis, y1, &mut b1);
    fill_basis_1d(basis, x2, &mut b2);
    out.clear();
    for d in 0..=max_degree {
        for i in 0..=d {
            out.push(b1[i] * b2[d - i]);
        }
    }
}

/// Supremum of `|f_{ij}|` over the bounding box of the domain.
fn basis_scale(basis: TestBasis, domain: Domain, i: usize) -> f64 {
    match (basis, domain) {
        (TestBasis::Monomial, Domain::Biangle) => 2f64.powi(i as i32),
        _ => 1.0,
    }
}

/// A supplier of exact moments of the test functions.
pub trait MomentSource: Send + Sync {
    fn domain(&self) -> Domain;
    /// `∫ W`.
    fn mass(&self) -> f64;
    /// Moments of all test functions up to `max_degree`, in moment order.
    fn moments(&self, basis: TestBasis, max_degree: usize) -> Result<Vec<f64>>;
}

/// Moments of the square and composed weights from the angular integrator.
#[derive(Debug)]
pub struct SquareOracle {
    weight: AngularWeight,
    spec: WeightSpec,
    exec: Execution,
    cache: Mutex<HashMap<TestBasis, (usize, Vec<f64>)>>,
}

impl SquareOracle {
    pub fn new(spec: &WeightSpec, exec: Execution) -> Result<Self> {
        let weight = AngularWeight::from_spec(spec)?;
        Ok(Self { weight, spec: spec.clone(), exec, cache: Mutex::new(HashMap::new()) })
    }

    /// Full ladder output, bypassing the cache.
    pub fn ladder(&self, basis: TestBasis, max_degree: usize, opts: LadderOptions) -> Result<LadderOutcome> {
        integrate_basis(&self.weight, basis, max_degree, self.mass(), self.exec, opts)
    }

    /// Whether every test function of index `(i, j)` integrates to zero by
    /// symmetry.
    fn vanishes(&self, i: usize, j: usize) -> bool {
        if (i + j) % 2 == 1 {
            return true;
        }
        // W is even in x1 alone when |T_ℓ(x1) - T_ℓ(x2)| and |T_ℓ(x1) + T_ℓ(x2)|
        // swap into each other with equal exponents, or when T_ℓ is even
        let reflect = self.weight.p == self.weight.q || self.weight.ell.is_multiple_of(2);
        reflect && i % 2 == 1
    }
}

impl MomentSource for SquareOracle {
    fn domain(&self) -> Domain {
        Domain::Square
    }

    fn mass(&self) -> f64 {
        self.spec.mass()
    }

    fn moments(&self, basis: TestBasis, max_degree: usize) -> Result<Vec<f64>> {
        let len = basis_len(max_degree);
        if let Some((_, v)) = self.cache.lock().unwrap().get(&basis).filter(|(d, _)| *d >= max_degree) {
            return Ok(v[..len].to_vec());
        }
        let mut v = self.ladder(basis, max_degree, LadderOptions::default())?.values;
        for (k, (i, j)) in basis_indices(max_degree).into_iter().enumerate() {
            if self.vanishes(i, j) {
                v[k] = 0.0;
            }
        }
        v.truncate(len);
        self.cache.lock().unwrap().insert(basis, (max_degree, v.clone()));
        Ok(v)
    }
}

/// Moments on the biangle from a tensor Gauss rule of `w`.
#[derive(Debug, Clone)]
pub struct BiangleOracle {
    weight: Weight1D,
    gamma: Gamma,
}

impl BiangleOracle {
    pub fn new(weight: Weight1D, gamma: Gamma) -> Self {
        Self { weight, gamma }
    }
}

impl MomentSource for BiangleOracle {
    fn domain(&self) -> Domain {
        Domain::Biangle
    }

    fn mass(&self) -> f64 {
        WeightSpec::biangle(self.weight.clone(), self.gamma).mass()
    }

    fn moments(&self, basis: TestBasis, max_degree: usize) -> Result<Vec<f64>> {
        let rc = self.weight.recurrence(max_degree + 2)?;
        let count = basis_len(max_degree);
        biangle_integrals(
            &rc,
            self.gamma,
            max_degree,
            |u1, u2, out| {
                let mut v = Vec::with_capacity(count);
                eval_basis(basis, Domain::Biangle, max_degree, u1, u2, &mut v);
                out.copy_from_slice(&v);
            },
            count,
        )
    }
}

/// The oracle matching a weight specification.
pub fn oracle_for(spec: &WeightSpec, exec: Execution) -> Result<Box<dyn MomentSource>> {
    match spec.family {
        WeightFamily::Biangle => Ok(Box::new(BiangleOracle::new(spec.weight.clone(), spec.gamma))),
        _ => Ok(Box::new(SquareOracle::new(spec, exec)?)),
    }
}

/// `∫∫ x1^i x2^j W dx` over the square.
pub fn square_moment(spec: &WeightSpec, i: usize, j: usize) -> Result<f64> {
    if spec.family != WeightFamily::Square {
        return Err(Error::InvalidParameter("square_moment expects a square weight".into()));
    }
    let o = SquareOracle::new(spec, Execution::default())?;
    if o.vanishes(i, j) {
        return Ok(0.0);
    }
    Ok(o.moments(TestBasis::Monomial, i + j)?[basis_position(i, j)])
}

/// `∫∫ x1^i x2^j W^{(ℓ)} dx` for the composed weight built from Jacobi `w`.
pub fn composed_moment(weight: &Weight1D, ell: usize, i: usize, j: usize) -> Result<f64> {
    let spec = WeightSpec::composed(weight.clone(), ell)?;
    let o = SquareOracle::new(&spec, Execution::default())?;
    if o.vanishes(i, j) {
        return Ok(0.0);
    }
    Ok(o.moments(TestBasis::Monomial, i + j)?[basis_position(i, j)])
}

/// Outcome of an exactness check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactnessReport {
    pub basis: TestBasis,
    pub max_degree_tested: usize,
    /// Largest `D` such that every test function of degree `≤ D` is within
    /// tolerance; `-1` if the mass itself fails.
    pub certified_degree: i64,
    pub worst_rel_error: f64,
    /// Largest relative error per total degree `0..=max_degree_tested`.
    pub per_degree: Vec<f64>,
    /// Every test function out of tolerance, as `(i, j, rel_error)`.
    pub failures: Vec<(usize, usize, f64)>,
}

impl ExactnessReport {
    pub fn certifies(&self, degree: usize) -> bool {
        self.certified_degree >= degree as i64
    }

    /// Largest relative error among test functions of total degree `d`.
    pub fn error_at(&self, d: usize) -> Option<f64> {
        self.per_degree.get(d).copied()
    }
}

/// Certifies `rule` against `source` in the Chebyshev basis.
pub fn certify(rule: &CubatureRule2D, source: &dyn MomentSource, max_degree: usize, rel_tol: f64) -> Result<ExactnessReport> {
    certify_with(rule, source, max_degree, rel_tol, TestBasis::Chebyshev, Execution::default())
}

/// Relative error of each test function is
/// `|Q(f) - I(f)| / max(|I(f)|, mass · sup|f|)`.
pub fn certify_with(
    rule: &CubatureRule2D,
    source: &dyn MomentSource,
    max_degree: usize,
    rel_tol: f64,
    basis: TestBasis,
    exec: Execution,
) -> Result<ExactnessReport> {
    let domain = source.domain();
    if domain != rule.domain() {
        return Err(Error::InvalidParameter("rule and moment source live on different domains".into()));
    }
    let moments = source.moments(basis, max_degree)?;
    let count = moments.len();
    let pairs: Vec<([f64; 2], f64)> = rule.nodes().iter().copied().zip(rule.weights().iter().copied()).collect();
    let sums = chunked_sum(exec, &pairs, 64, count, |chunk, acc| {
        let mut v = Vec::with_capacity(count);
        for (p, w) in chunk {
            eval_basis(basis, domain, max_degree, p[0], p[1], &mut v);
            for (a, b) in acc.iter_mut().zip(&v) {
                *a += w * b;
            }
        }
    });
    let mass = source.mass();
    let mut per_degree = vec![0.0f64; max_degree + 1];
    let mut failures = Vec::new();
    for (k, (i, j)) in basis_indices(max_degree).into_iter().enumerate() {
        let scale = moments[k].abs().max(mass * basis_scale(basis, domain, i));
        let err = (sums[k] - moments[k]).abs() / scale;
        per_degree[i + j] = per_degree[i + j].max(err);
        if !(err <= rel_tol) {
            failures.push((i, j, err));
        }
    }
    let certified_degree = per_degree.iter().position(|&e| !(e <= rel_tol)).map_or(max_degree as i64, |d| d as i64 - 1);
    let worst_rel_error = per_degree.iter().fold(0.0f64, |a, &b| a.max(b));
    Ok(ExactnessReport { basis, max_degree_tested: max_degree, certified_degree, worst_rel_error, per_degree, failures })
}
