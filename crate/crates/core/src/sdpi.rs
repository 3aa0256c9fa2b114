//! Contraction coefficients of discrete Markov kernels.

use crate::error::{Error, Result};
use crate::measures::{renyi_divergence, DiscreteDistribution};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Dirichlet, Distribution};
use serde::{Deserialize, Serialize};

/// Row-stochastic matrix `K(y | x)`, stored row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarkovKernel {
    inputs: usize,
    outputs: usize,
    data: Vec<f64>,
}

impl MarkovKernel {
    pub fn new(inputs: usize, outputs: usize, data: Vec<f64>) -> Result<Self> {
        if inputs == 0 || outputs == 0 || data.len() != inputs * outputs {
            return Err(Error::InvalidKernel(format!("{} entries for {inputs}x{outputs}", data.len())));
        }
        if data.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(Error::InvalidKernel("negative or non-finite entry".into()));
        }
        for (x, row) in data.chunks(outputs).enumerate() {
            let s: f64 = row.iter().sum();
            if (s - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidKernel(format!("row {x} sums to {s}")));
            }
        }
        Ok(Self { inputs, outputs, data })
    }

    /// Binary symmetric channel with crossover `λ ∈ [0, 1]`.
    pub fn bsc(lambda: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::InvalidParameter { name: "lambda", value: lambda });
        }
        Self::new(2, 2, vec![1.0 - lambda, lambda, lambda, 1.0 - lambda])
    }

    pub fn identity(k: usize) -> Result<Self> {
        let mut d = vec![0.0; k * k];
        (0..k).for_each(|i| d[i * k + i] = 1.0);
        Self::new(k, k, d)
    }

    /// Every input maps to the same output law.
    pub fn constant(inputs: usize, row: &DiscreteDistribution) -> Result<Self> {
        Self::new(inputs, row.len(), row.weights().repeat(inputs))
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn outputs(&self) -> usize {
        self.outputs
    }

    pub fn row(&self, x: usize) -> &[f64] {
        &self.data[x * self.outputs..(x + 1) * self.outputs]
    }

    /// The output law `μK`.
    pub fn push(&self, mu: &DiscreteDistribution) -> Result<DiscreteDistribution> {
        if mu.len() != self.inputs {
            return Err(Error::DimensionMismatch(format!("{} inputs, measure has {}", self.inputs, mu.len())));
        }
        let mut out = vec![0.0; self.outputs];
        for (x, &m) in mu.weights().iter().enumerate() {
            for (o, k) in out.iter_mut().zip(self.row(x)) {
                *o += m * k;
            }
        }
        DiscreteDistribution::normalized(out)
    }
}

/// `max_{x, x'} TV(K(·|x), K(·|x'))`.
pub fn dobrushin_coefficient(k: &MarkovKernel) -> f64 {
    let mut best: f64 = 0.0;
    for a in 0..k.inputs() {
        for b in a + 1..k.inputs() {
            let tv: f64 = 0.5 * k.row(a).iter().zip(k.row(b)).map(|(p, q)| (p - q).abs()).sum::<f64>();
            best = best.max(tv);
        }
    }
    best.min(1.0)
}

/// Contraction of every operator-convex φ-divergence through `BSC(λ)`: `(1-2λ)²`.
pub fn eta_operator_convex_bsc(lambda: f64) -> Result<f64> {
    if !(0.0..=0.5).contains(&lambda) {
        return Err(Error::LambdaOutOfRange(lambda));
    }
    Ok((1.0 - 2.0 * lambda).powi(2))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Contraction {
    Exact(f64),
    /// Only an upper bound on the coefficient is known.
    UpperBound(f64),
}

impl Contraction {
    pub fn value(&self) -> f64 {
        match *self {
            Self::Exact(v) | Self::UpperBound(v) => v,
        }
    }
}

/// Hellinger-`p` contraction through `BSC(λ)`: exact `(1-2λ)²` for `p ≤ 2`
/// (operator convex), and only the upper bound `|1-2λ|` for `p > 2`.
pub fn hellinger_contraction_bsc(lambda: f64, p: f64) -> Result<Contraction> {
    if !(p > 1.0) {
        return Err(Error::OrderAtMostOne(p));
    }
    let eta = eta_operator_convex_bsc(lambda)?;
    Ok(if p <= 2.0 { Contraction::Exact(eta) } else { Contraction::UpperBound(eta.sqrt()) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TensorMode {
    /// The product kernel contracts like one copy.
    MaxPreserving,
    /// `1 - (1 - η)^n`.
    Power,
}

pub fn tensorize_eta(eta: f64, n: u32, mode: TensorMode) -> Result<f64> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::EtaOutOfRange(eta));
    }
    if n == 0 {
        return Err(Error::InvalidParameter { name: "n", value: 0.0 });
    }
    Ok(match mode {
        TensorMode::MaxPreserving => eta,
        TensorMode::Power => 1.0 - (1.0 - eta).powi(n as i32),
    })
}

/// Contraction bound for an `(ε, δ)`-LDP mechanism: `1 - (1-δ)e^{-ε}`.
pub fn ldp_contraction_bound(epsilon: f64, delta: f64) -> Result<f64> {
    if !(epsilon >= 0.0) {
        return Err(Error::InvalidParameter { name: "epsilon", value: epsilon });
    }
    if !(0.0..=1.0).contains(&delta) {
        return Err(Error::InvalidParameter { name: "delta", value: delta });
    }
    Ok((1.0 - (1.0 - delta) * (-epsilon).exp()).clamp(0.0, 1.0))
}

/// `D_α(νK ‖ μK) / D_α(ν ‖ μ)`.
pub fn renyi_sdpi_ratio(
    k: &MarkovKernel,
    mu: &DiscreteDistribution,
    nu: &DiscreteDistribution,
    alpha: f64,
) -> Result<f64> {
    if !(alpha > 1.0) {
        return Err(Error::AlphaAtMostOne(alpha));
    }
    let den = renyi_divergence(nu, mu, alpha)?;
    if den == 0.0 {
        return Err(Error::ZeroDenominator);
    }
    let num = renyi_divergence(&k.push(nu)?, &k.push(mu)?, alpha)?;
    Ok(num / den)
}

/// Largest observed `D(νK‖μK)/D(ν‖μ)` over `pairs` random pairs drawn from a
/// flat Dirichlet. A diagnostic lower estimate of the contraction coefficient.
pub fn sampled_contraction<D>(k: &MarkovKernel, divergence: D, pairs: usize, seed: u64) -> Result<f64>
where
    D: Fn(&DiscreteDistribution, &DiscreteDistribution) -> Result<f64>,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dir = Dirichlet::new_with_size(1.0, k.inputs()).map_err(|e| Error::InvalidKernel(e.to_string()))?;
    let mut best: f64 = 0.0;
    let mut seen = 0;
    while seen < pairs {
        let mu = DiscreteDistribution::normalized(dir.sample(&mut rng))?;
        let nu = DiscreteDistribution::normalized(dir.sample(&mut rng))?;
        let den = divergence(&nu, &mu)?;
        if !(den > 0.0) || den.is_infinite() {
            continue;
        }
        seen += 1;
        let num = divergence(&k.push(&nu)?, &k.push(&mu)?)?;
        best = best.max(num / den);
    }
    Ok(best)
}
