use crate::opq1d::{jacobi_mass, jacobi_recurrence, RecurrenceCoeffs};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Integration domain of a rule. Biangle nodes are stored as `(u1, u2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Domain {
    Biangle,
    Square,
}

/// The exponent `γ ∈ {-1/2, +1/2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Gamma {
    MinusHalf,
    PlusHalf,
}

impl Gamma {
    pub fn value(self) -> f64 {
        match self {
            Gamma::MinusHalf => -0.5,
            Gamma::PlusHalf => 0.5,
        }
    }

    pub fn from_value(v: f64) -> Result<Self> {
        if v == -0.5 {
            Ok(Gamma::MinusHalf)
        } else if v == 0.5 {
            Ok(Gamma::PlusHalf)
        } else {
            Err(Error::InvalidParameter(format!("gamma must be -0.5 or 0.5, got {v}")))
        }
    }
}

/// The one-variable weight `w` on `[-1, 1]`.
#[derive(Debug, Clone)]
pub enum Weight1D {
    /// `(1 - t)^α (1 + t)^β`
    Jacobi { alpha: f64, beta: f64 },
    /// Caller-supplied recurrence; `density` is only needed for pointwise
    /// weight evaluation.
    Custom { recurrence: RecurrenceCoeffs, density: Option<fn(f64) -> f64> },
}

impl Weight1D {
    pub fn jacobi(alpha: f64, beta: f64) -> Result<Self> {
        crate::opq1d::check_jacobi_params(alpha, beta)?;
        Ok(Weight1D::Jacobi { alpha, beta })
    }

    pub fn chebyshev() -> Self {
        Weight1D::Jacobi { alpha: -0.5, beta: -0.5 }
    }

    pub fn jacobi_params(&self) -> Option<(f64, f64)> {
        match *self {
            Weight1D::Jacobi { alpha, beta } => Some((alpha, beta)),
            Weight1D::Custom { .. } => None,
        }
    }

    /// Recurrence data with at least `len` diagonal coefficients.
    pub fn recurrence(&self, len: usize) -> Result<RecurrenceCoeffs> {
        match self {
            Weight1D::Jacobi { alpha, beta } => jacobi_recurrence(*alpha, *beta, len.max(1)),
            Weight1D::Custom { recurrence, .. } => {
                recurrence.require(len)?;
                Ok(recurrence.clone())
            }
        }
    }

    pub fn mass(&self) -> f64 {
        match self {
            Weight1D::Jacobi { alpha, beta } => jacobi_mass(*alpha, *beta),
            Weight1D::Custom { recurrence, .. } => recurrence.mu0(),
        }
    }

    /// Pointwise `w(t)`, if known.
    pub fn density(&self, t: f64) -> Option<f64> {
        match self {
            Weight1D::Jacobi { alpha, beta } => Some(power(1.0 - t, *alpha) * power(1.0 + t, *beta)),
            Weight1D::Custom { density, .. } => density.map(|f| f(t)),
        }
    }
}

/// `x^e` for `x ≥ 0` with the conventions `0^0 = 1`, `0^{e<0} = ∞`.
pub(crate) fn power(x: f64, e: f64) -> f64 {
    let x = x.max(0.0);
    if e == 0.0 {
        1.0
    } else if x == 0.0 {
        if e > 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        x.powf(e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightFamily {
    /// `𝒲_γ` on the parabolic biangle.
    Biangle,
    /// `W_γ` on the square.
    Square,
    /// `W^{(ℓ)}_{-1/2}` on the square.
    Composed { ell: usize },
}

/// A two-variable weight: family, the underlying `w` and `γ`.
#[derive(Debug, Clone)]
pub struct WeightSpec {
    pub family: WeightFamily,
    pub weight: Weight1D,
    pub gamma: Gamma,
}

impl WeightSpec {
    pub fn biangle(weight: Weight1D, gamma: Gamma) -> Self {
        Self { family: WeightFamily::Biangle, weight, gamma }
    }

    pub fn square(weight: Weight1D, gamma: Gamma) -> Self {
        Self { family: WeightFamily::Square, weight, gamma }
    }

    pub fn composed(weight: Weight1D, ell: usize) -> Result<Self> {
        if ell == 0 {
            return Err(Error::InvalidParameter("ell must be at least 1".into()));
        }
        Ok(Self { family: WeightFamily::Composed { ell }, weight, gamma: Gamma::MinusHalf })
    }

    pub fn domain(&self) -> Domain {
        match self.family {
            WeightFamily::Biangle => Domain::Biangle,
            _ => Domain::Square,
        }
    }

    pub fn ell(&self) -> usize {
        match self.family {
            WeightFamily::Composed { ell } => ell,
            _ => 1,
        }
    }

    /// `∫ W`, in closed form.
    pub fn mass(&self) -> f64 {
        let mu0 = self.weight.mass();
        match (self.family, self.gamma) {
            (WeightFamily::Biangle, Gamma::MinusHalf) => 0.5 * mu0 * mu0,
            (WeightFamily::Square, Gamma::MinusHalf) | (WeightFamily::Composed { .. }, _) => mu0 * mu0,
            // ∫∫ (x1 - x2)² w w = 2 (mu0 μ2 - μ1²), with μ_k the moments of w
            (fam, Gamma::PlusHalf) => {
                let rc = self.weight.recurrence(2).expect("recurrence of length 2");
                let (a0, b1) = (rc.a()[0], rc.b()[0]);
                let mu1 = a0 * mu0;
                let mu2 = (b1 + a0 * a0) * mu0;
                let tensor = 2.0 * (mu0 * mu2 - mu1 * mu1);
                match fam {
                    WeightFamily::Biangle => 0.5 * tensor,
                    _ => tensor / 4.0,
                }
            }
        }
    }
}

/// A two-variable cubature rule with its declared degree and provenance.
#[derive(Debug, Clone)]
pub struct CubatureRule2D {
    nodes: Vec<[f64; 2]>,
    weights: Vec<f64>,
    degree: usize,
    spec: WeightSpec,
    /// `n` for biangle rules, `m` for square and composed rules.
    param: usize,
}

impl CubatureRule2D {
    /// Builds a rule with nodes sorted lexicographically.
    pub fn new(nodes: Vec<[f64; 2]>, weights: Vec<f64>, degree: usize, spec: WeightSpec, param: usize) -> Self {
        assert_eq!(nodes.len(), weights.len(), "node and weight counts differ");
        let mut pairs: Vec<([f64; 2], f64)> = nodes.into_iter().zip(weights).collect();
        pairs.sort_by(|a, b| a.0[0].total_cmp(&b.0[0]).then(a.0[1].total_cmp(&b.0[1])));
        let (nodes, weights) = pairs.into_iter().unzip();
        Self { nodes, weights, degree, spec, param }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[[f64; 2]] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Declared degree of exactness.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn domain(&self) -> Domain {
        self.spec.domain()
    }

    pub fn spec(&self) -> &WeightSpec {
        &self.spec
    }

    pub fn param(&self) -> usize {
        self.param
    }

    pub fn mass(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn integrate<F: Fn(f64, f64) -> f64>(&self, f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(p, w)| w * f(p[0], p[1])).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn gamma_round_trip() {
        for g in [Gamma::MinusHalf, Gamma::PlusHalf] {
            assert_eq!(Gamma::from_value(g.value()).unwrap(), g);
        }
        assert!(Gamma::from_value(0.0).is_err());
    }

    #[test]
    fn closed_form_masses() {
        let cheb = Weight1D::chebyshev();
        assert!((WeightSpec::biangle(cheb.clone(), Gamma::MinusHalf).mass() - PI * PI / 2.0).abs() < 1e-13);
        assert!((WeightSpec::square(cheb.clone(), Gamma::MinusHalf).mass() - PI * PI).abs() < 1e-13);
        // ∫∫ sin²θ1 sin²θ2 dθ = π²/4
        assert!((WeightSpec::square(cheb, Gamma::PlusHalf).mass() - PI * PI / 4.0).abs() < 1e-13);
        let leg = Weight1D::jacobi(0.0, 0.0).unwrap();
        assert!((WeightSpec::biangle(leg, Gamma::PlusHalf).mass() - 4.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn nodes_are_sorted() {
        let spec = WeightSpec::square(Weight1D::chebyshev(), Gamma::MinusHalf);
        let r = CubatureRule2D::new(vec![[0.5, 0.0], [-0.5, 1.0], [-0.5, -1.0]], vec![1.0, 2.0, 3.0], 1, spec, 1);
        assert_eq!(r.nodes(), &[[-0.5, -1.0], [-0.5, 1.0], [0.5, 0.0]]);
        assert_eq!(r.weights(), &[3.0, 2.0, 1.0]);
        assert_eq!(r.mass(), 6.0);
    }

    #[test]
    fn composed_requires_positive_ell() {
        assert!(WeightSpec::composed(Weight1D::chebyshev(), 0).is_err());
    }
}
