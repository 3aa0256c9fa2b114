use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Tolerance on total mass for distributions and joints.
pub const MASS_TOL: f64 = 1e-12;

fn check_weights(w: &[f64]) -> Result<()> {
    if w.is_empty() {
        return Err(Error::InvalidDistribution("no outcomes".into()));
    }
    if let Some(bad) = w.iter().find(|x| !(x.is_finite() && **x >= 0.0)) {
        return Err(Error::InvalidDistribution(format!("weight {bad} is not a probability")));
    }
    let total: f64 = w.iter().sum();
    if (total - 1.0).abs() > MASS_TOL {
        return Err(Error::InvalidDistribution(format!("weights sum to {total}")));
    }
    Ok(())
}

/// A finite distribution with labelled outcomes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscreteDistribution {
    outcomes: Vec<String>,
    weights: Vec<f64>,
}

impl DiscreteDistribution {
    /// Outcomes are labelled `0..k`.
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        let outcomes = (0..weights.len()).map(|i| i.to_string()).collect();
        Self::with_labels(outcomes, weights)
    }

    pub fn with_labels(outcomes: Vec<String>, weights: Vec<f64>) -> Result<Self> {
        if outcomes.len() != weights.len() {
            return Err(Error::DimensionMismatch(format!("{} labels for {} weights", outcomes.len(), weights.len())));
        }
        check_weights(&weights)?;
        let mut sorted: Vec<&String> = outcomes.iter().collect();
        sorted.sort();
        if sorted.windows(2).any(|p| p[0] == p[1]) {
            return Err(Error::InvalidDistribution("duplicate outcome label".into()));
        }
        Ok(Self { outcomes, weights })
    }

    /// Rescales non-negative masses to total one.
    pub fn normalized(mut masses: Vec<f64>) -> Result<Self> {
        let total: f64 = masses.iter().sum();
        if !(total > 0.0 && total.is_finite()) {
            return Err(Error::InvalidDistribution(format!("cannot normalize total mass {total}")));
        }
        masses.iter_mut().for_each(|m| *m /= total);
        Self::new(masses)
    }

    pub fn uniform(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidDistribution("no outcomes".into()));
        }
        Self::new(vec![1.0 / k as f64; k])
    }

    pub fn point_mass(k: usize, at: usize) -> Result<Self> {
        if at >= k {
            return Err(Error::DimensionMismatch(format!("outcome {at} of {k}")));
        }
        let mut w = vec![0.0; k];
        w[at] = 1.0;
        Self::new(w)
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn outcomes(&self) -> &[String] {
        &self.outcomes
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Joint law of `(X, Y)` on a finite grid, stored row-major by `x`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscreteJoint {
    rows: usize,
    cols: usize,
    mass: Vec<f64>,
    px: Vec<f64>,
    py: Vec<f64>,
}

impl DiscreteJoint {
    pub fn new(rows: usize, cols: usize, mass: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 || mass.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {rows}x{cols} joint", mass.len())));
        }
        check_weights(&mass)?;
        let px = (0..rows).map(|x| mass[x * cols..(x + 1) * cols].iter().sum()).collect();
        let py = (0..cols).map(|y| (0..rows).map(|x| mass[x * cols + y]).sum()).collect();
        Ok(Self { rows, cols, mass, px, py })
    }

    /// `P(x, y) = prior(x) K(y | x)` for a row-stochastic `channel`.
    pub fn from_channel(prior: &DiscreteDistribution, channel: &[Vec<f64>]) -> Result<Self> {
        if channel.len() != prior.len() {
            return Err(Error::DimensionMismatch("channel rows must match prior".into()));
        }
        let cols = channel.first().map_or(0, Vec::len);
        let mut mass = Vec::with_capacity(prior.len() * cols);
        for (row, &p) in channel.iter().zip(prior.weights()) {
            if row.len() != cols {
                return Err(Error::DimensionMismatch("ragged channel".into()));
            }
            mass.extend(row.iter().map(|k| p * k));
        }
        Self::new(prior.len(), cols, mass)
    }

    /// The product of two marginals.
    pub fn independent(px: &DiscreteDistribution, py: &DiscreteDistribution) -> Result<Self> {
        let mass = px.weights().iter().flat_map(|a| py.weights().iter().map(move |b| a * b)).collect();
        Self::new(px.len(), py.len(), mass)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn cells(&self) -> usize {
        self.mass.len()
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.mass[x * self.cols + y]
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    pub fn px(&self) -> &[f64] {
        &self.px
    }

    pub fn py(&self) -> &[f64] {
        &self.py
    }

    /// Product of the marginals, flattened in the same order as `mass`.
    pub fn product_mass(&self) -> Vec<f64> {
        self.px.iter().flat_map(|a| self.py.iter().map(move |b| a * b)).collect()
    }

    /// `P(y | x)`, or `None` when `x` has no mass.
    pub fn conditional(&self, x: usize, y: usize) -> Option<f64> {
        (self.px[x] > 0.0).then(|| self.get(x, y) / self.px[x])
    }
}
