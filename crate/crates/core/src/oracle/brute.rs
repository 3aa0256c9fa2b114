//! Direct summation of the defining formulas, for small joints only.

use crate::error::{Error, Result};
use crate::measures::{DiscreteJoint, DivergenceSpec};

pub const MAX_CELLS: usize = 10_000;

/// Evaluates `spec` on `j` by plain loops over every cell. Sibson's measure
/// goes through its variational form with the optimal output law, not the
/// closed-form sum used by the measures module.
pub fn brute_force_divergence(j: &DiscreteJoint, spec: &DivergenceSpec) -> Result<f64> {
    if j.cells() > MAX_CELLS {
        return Err(Error::TooLarge(j.cells()));
    }
    spec.validate()?;
    let (rows, cols) = (j.rows(), j.cols());
    let px: Vec<f64> = (0..rows).map(|x| (0..cols).map(|y| j.get(x, y)).sum()).collect();
    let py: Vec<f64> = (0..cols).map(|y| (0..rows).map(|x| j.get(x, y)).sum()).collect();
    let cells = || (0..rows).flat_map(|x| (0..cols).map(move |y| (x, y)));

    let renyi_against = |q: &dyn Fn(usize, usize) -> f64, alpha: f64| -> f64 {
        let mut s = 0.0;
        for (x, y) in cells() {
            let p = j.get(x, y);
            let qq = q(x, y);
            if p > 0.0 {
                if qq == 0.0 {
                    return f64::INFINITY;
                }
                s += p.powf(alpha) * qq.powf(1.0 - alpha);
            }
        }
        s.ln() / (alpha - 1.0)
    };
    let product = |x: usize, y: usize| px[x] * py[y];

    let v = match *spec {
        DivergenceSpec::Renyi { alpha } => renyi_against(&product, alpha),
        DivergenceSpec::SibsonMI { alpha } => {
            let mut qstar = vec![0.0; cols];
            for (y, q) in qstar.iter_mut().enumerate() {
                let inner: f64 = (0..rows)
                    .filter(|&x| px[x] > 0.0)
                    .map(|x| px[x] * (j.get(x, y) / px[x]).powf(alpha))
                    .sum();
                *q = inner.powf(1.0 / alpha);
            }
            let z: f64 = qstar.iter().sum();
            qstar.iter_mut().for_each(|q| *q /= z);
            renyi_against(&|x, y| px[x] * qstar[y], alpha)
        }
        DivergenceSpec::MaxLeakage => {
            let mut s = 0.0;
            for y in 0..cols {
                let mut best: f64 = 0.0;
                for x in 0..rows {
                    if px[x] > 0.0 {
                        best = best.max(j.get(x, y) / px[x]);
                    }
                }
                s += best;
            }
            s.ln()
        }
        DivergenceSpec::HellingerP { p } => {
            let mut s = 0.0;
            for (x, y) in cells() {
                let (a, b) = (j.get(x, y), product(x, y));
                if a > 0.0 && b == 0.0 {
                    return Ok(f64::INFINITY);
                }
                if b > 0.0 {
                    s += a.powf(p) * b.powf(1.0 - p);
                }
            }
            (s - 1.0) / (p - 1.0)
        }
        DivergenceSpec::ChiSquare => {
            let mut s = 0.0;
            for (x, y) in cells() {
                let (a, b) = (j.get(x, y), product(x, y));
                if b > 0.0 {
                    s += (a - b) * (a - b) / b;
                } else if a > 0.0 {
                    return Ok(f64::INFINITY);
                }
            }
            s
        }
        DivergenceSpec::Kl | DivergenceSpec::MutualInformation => {
            let mut s = 0.0;
            for (x, y) in cells() {
                let (a, b) = (j.get(x, y), product(x, y));
                if a > 0.0 {
                    s += a * (a / b).ln();
                }
            }
            s
        }
        DivergenceSpec::EGammaZeta { gamma, zeta } => {
            let mut s = 0.0;
            for (x, y) in cells() {
                s += (zeta * j.get(x, y) - gamma * product(x, y)).max(0.0);
            }
            s - (zeta - gamma).max(0.0)
        }
    };
    Ok(v)
}
