//! Adaptive Simpson quadrature with optional breakpoints, and Gauss–Hermite
//! nodes for expectations under a standard normal.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Stopping rule for adaptive rules: an interval is accepted once its error
/// estimate is below `max(abs, rel * |integral|)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_depth: u32,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { abs: 1e-9, rel: 1e-8, max_depth: 48 }
    }
}

impl Tolerance {
    pub fn tight(abs: f64) -> Self {
        Self { abs, rel: abs, max_depth: 60 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    /// Sum of the local error estimates of intervals that hit the depth limit.
    pub unresolved: f64,
    pub evaluations: usize,
}

struct Simpson<'a, F: Fn(f64) -> f64> {
    f: &'a F,
    max_depth: u32,
    evals: usize,
    unresolved: f64,
}

impl<F: Fn(f64) -> f64> Simpson<'_, F> {
    #[allow(clippy::too_many_arguments)]
    fn refine(&mut self, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, eps: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = (self.f)(lm);
        let frm = (self.f)(rm);
        self.evals += 2;
        let h = (b - a) / 12.0;
        let left = h * (fa + 4.0 * flm + fm);
        let right = h * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if delta.abs() <= 15.0 * eps {
            return left + right + delta / 15.0;
        }
        if depth >= self.max_depth || !delta.is_finite() {
            self.unresolved += delta.abs() / 15.0;
            return left + right + delta / 15.0;
        }
        self.refine(a, m, fa, flm, fm, left, 0.5 * eps, depth + 1)
            + self.refine(m, b, fm, frm, fb, right, 0.5 * eps, depth + 1)
    }
}

/// Integrates `f` over `[a, b]`, splitting first at every interior breakpoint.
/// Breakpoints outside the interval are ignored.
pub fn integrate_with_breaks<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    tol: Tolerance,
) -> Result<Integral> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidParameter { name: "integration limit", value: if a.is_finite() { b } else { a } });
    }
    if a == b {
        return Ok(Integral { value: 0.0, unresolved: 0.0, evaluations: 0 });
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let mut knots = vec![lo];
    let mut inner: Vec<f64> = breaks.iter().copied().filter(|x| *x > lo && *x < hi).collect();
    inner.sort_by(|x, y| x.total_cmp(y));
    inner.dedup();
    knots.extend(inner);
    knots.push(hi);

    // Start from a few uniform panels per piece so narrow features are seen.
    const PANELS: usize = 8;
    let mut pieces = Vec::with_capacity((knots.len() - 1) * PANELS);
    let mut s = Simpson { f: &f, max_depth: tol.max_depth, evals: 0, unresolved: 0.0 };
    let mut coarse = 0.0;
    for w in knots.windows(2) {
        let step = (w[1] - w[0]) / PANELS as f64;
        for i in 0..PANELS {
            let x0 = w[0] + step * i as f64;
            let x1 = if i + 1 == PANELS { w[1] } else { x0 + step };
            let f0 = f(x0);
            let fm = f(0.5 * (x0 + x1));
            let f1 = f(x1);
            let whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
            coarse += whole;
            pieces.push((x0, x1, f0, fm, f1, whole));
        }
    }
    s.evals += 3 * pieces.len();
    let budget = tol.abs.max(tol.rel * coarse.abs());
    let total_len = hi - lo;
    let mut value = 0.0;
    for (x0, x1, f0, fm, f1, whole) in pieces {
        let eps = budget * (x1 - x0) / total_len;
        value += s.refine(x0, x1, f0, fm, f1, whole, eps, 0);
    }
    let out = Integral { value: sign * value, unresolved: s.unresolved, evaluations: s.evals };
    if !out.value.is_finite() || s.unresolved > 10.0 * tol.abs.max(tol.rel * value.abs()) {
        return Err(Error::QuadratureFailure { estimate: out.value, error: s.unresolved });
    }
    Ok(out)
}

pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: Tolerance) -> Result<Integral> {
    integrate_with_breaks(f, a, b, &[], tol)
}

/// Gauss–Hermite rule for `∫ e^{-x²} f(x) dx`.
#[derive(Debug, Clone)]
pub struct GaussHermite {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussHermite {
    /// Nodes by Newton iteration on the orthonormal Hermite recurrence.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let pim4 = std::f64::consts::PI.powf(-0.25);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        let nf = n as f64;
        let mut z = 0.0;
        for i in 0..m {
            z = match i {
                0 => (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-1.0 / 6.0),
                1 => z - 1.14 * nf.powf(0.426) / z,
                2 => 1.86 * z - 0.86 * nodes[0],
                3 => 1.91 * z - 0.91 * nodes[1],
                _ => 2.0 * z - nodes[i - 2],
            };
            let mut pp = 0.0;
            for _ in 0..100 {
                let mut p1 = pim4;
                let mut p2 = 0.0;
                for j in 0..n {
                    let p3 = p2;
                    p2 = p1;
                    let jf = j as f64;
                    p1 = z * (2.0 / (jf + 1.0)).sqrt() * p2 - (jf / (jf + 1.0)).sqrt() * p3;
                }
                pp = (2.0 * nf).sqrt() * p2;
                let dz = p1 / pp;
                z -= dz;
                if dz.abs() <= 1e-15 * z.abs().max(1.0) {
                    break;
                }
            }
            nodes[i] = z;
            nodes[n - 1 - i] = -z;
            weights[i] = 2.0 / (pp * pp);
            weights[n - 1 - i] = weights[i];
        }
        Self { nodes, weights }
    }

    /// `E[f(Z)]` for `Z ~ N(0, 1)`.
    pub fn normal_expectation<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        let s2 = std::f64::consts::SQRT_2;
        let terms: Vec<f64> = self.nodes.iter().zip(&self.weights).map(|(x, w)| w * f(s2 * x)).collect();
        crate::numeric::pairwise_sum(&terms) / std::f64::consts::PI.sqrt()
    }
}
