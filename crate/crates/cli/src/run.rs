//! Table runs: one row per n, computed in parallel, written in n order.

use crate::config::{Format, ModelParams, RunConfig, Setting};
use anyhow::anyhow;
use rayon::prelude::*;
use riskbounds::models::table::{bernoulli_row, gaussian_row, noisy_row, BoundRow};
use riskbounds::models::{
    BernoulliUniformModel, GaussianModel, HideAndSeekBounds, HideAndSeekModel, NoisyBernoulliModel, ThetaRule,
};
use riskbounds::oracle::{mc_risk, Estimator, RiskEstimate, RiskModel};
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;

#[derive(Debug)]
pub enum RunError {
    Config(anyhow::Error),
    Numeric { n: u32, source: anyhow::Error },
    Io(anyhow::Error),
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Config(e) => write!(f, "configuration error: {e:#}"),
            Self::Numeric { n, source } => write!(f, "numerical failure at n={n}: {source:#}"),
            Self::Io(e) => write!(f, "output error: {e:#}"),
        }
    }
}

enum Model {
    Bernoulli(BernoulliUniformModel),
    Noisy(NoisyBernoulliModel),
    Gaussian(GaussianModel),
    HideAndSeek(HideAndSeekModel),
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum Row {
    Bounds {
        #[serde(flatten)]
        bounds: BoundRow,
        mc_risk: Option<McRisk>,
        best_method: &'static str,
    },
    HideAndSeek {
        n: u32,
        theta: f64,
        #[serde(flatten)]
        bounds: HideAndSeekBounds,
        upper: f64,
        best_method: &'static str,
    },
}

#[derive(Debug, Serialize)]
pub struct McRisk {
    pub estimator: &'static str,
    #[serde(flatten)]
    pub estimate: RiskEstimate,
}

#[derive(Serialize)]
struct Document<'a> {
    config: &'a RunConfig,
    rows: &'a [Row],
}

/// Seed of the Monte-Carlo run at sample size `n`.
pub fn point_seed(seed: u64, n: u32) -> u64 {
    seed ^ (n as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

fn build(cfg: &RunConfig, n: u32) -> riskbounds::Result<Model> {
    Ok(match &cfg.model {
        ModelParams::Bernoulli => Model::Bernoulli(BernoulliUniformModel::new(n)?),
        ModelParams::NoisyBernoulli { lambda } => Model::Noisy(NoisyBernoulliModel::new(n, *lambda)?),
        ModelParams::Gaussian { sigma_w2, sigma2 } => Model::Gaussian(GaussianModel::new(n, *sigma_w2, *sigma2)?),
        ModelParams::HideAndSeek { d, m, b, theta_rule } => {
            let rule: ThetaRule = theta_rule.parse().expect("theta rule checked while resolving");
            Model::HideAndSeek(HideAndSeekModel::new(*d, *m, *b, rule.theta(n), n)?)
        }
    })
}

fn hide_and_seek_best(b: &HideAndSeekBounds) -> &'static str {
    let mut best = ("mi", b.mi);
    if b.ml > best.1 {
        best = ("ml", b.ml);
    }
    if b.nips_valid && b.nips > best.1 {
        best = ("nips", b.nips);
    }
    best.0
}

fn compute(cfg: &RunConfig, n: u32, model: &Model) -> anyhow::Result<Row> {
    let (bounds, sim, estimator): (BoundRow, &dyn RiskModel, Estimator) = match model {
        Model::Bernoulli(m) => (bernoulli_row(m, &cfg.bounds)?, m, Estimator::PosteriorMedian),
        Model::Noisy(m) => (noisy_row(m, &cfg.bounds)?, m, Estimator::PosteriorMedian),
        Model::Gaussian(m) => (gaussian_row(m, &cfg.bounds)?, m, Estimator::PosteriorMean),
        Model::HideAndSeek(m) => {
            let bounds = m.bounds();
            return Ok(Row::HideAndSeek {
                n,
                theta: m.theta,
                bounds,
                upper: 1.0 - 1.0 / m.d as f64,
                best_method: hide_and_seek_best(&bounds),
            });
        }
    };
    let mc_risk = match cfg.trials {
        Some(trials) => Some(McRisk { estimator: estimator.name(), estimate: mc_risk(sim, estimator, trials, point_seed(cfg.seed, n))? }),
        None => None,
    };
    if bounds.columns().iter().any(|b| !b.value.is_finite()) {
        return Err(anyhow!("non-finite bound"));
    }
    let best_method = bounds.best().tag();
    Ok(Row::Bounds { bounds, mc_risk, best_method })
}

/// Computes every row, failing on the smallest n that fails.
pub fn compute_rows(cfg: &RunConfig) -> Result<Vec<Row>, RunError> {
    let models = cfg
        .n
        .iter()
        .map(|&n| build(cfg, n).map_err(|e| RunError::Config(anyhow!("n={n}: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let results: Vec<anyhow::Result<Row>> =
        cfg.n.par_iter().zip(models.par_iter()).map(|(&n, m)| compute(cfg, n, m)).collect();
    results
        .into_iter()
        .zip(&cfg.n)
        .map(|(r, &n)| r.map_err(|source| RunError::Numeric { n, source }))
        .collect()
}

/// Shortest representation that reads back to the same `f64`, switching to
/// exponent notation for very small or very large magnitudes.
pub fn num(x: f64) -> String {
    let a = x.abs();
    if x != 0.0 && a.is_finite() && !(1e-5..1e15).contains(&a) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

pub fn header(cfg: &RunConfig) -> Vec<&'static str> {
    let mut h = vec!["n", "bound_mi", "bound_ml", "bound_sibson", "bound_hellinger", "bound_egz"];
    if cfg.setting == Setting::NoisyBernoulli {
        h.push("bound_sdpi");
    }
    h.push("upper_bound");
    if cfg.trials.is_some() {
        h.push("mc_risk");
    }
    h.push("best_method");
    h
}

fn record(cfg: &RunConfig, row: &Row) -> Vec<String> {
    let mut out = Vec::new();
    match row {
        Row::Bounds { bounds, mc_risk, best_method } => {
            out.push(bounds.n.to_string());
            out.extend([&bounds.mi, &bounds.ml, &bounds.sibson, &bounds.hellinger, &bounds.egz].map(|b| num(b.value)));
            if let Some(s) = &bounds.sdpi {
                out.push(num(s.value));
            }
            out.push(num(bounds.upper));
            if let Some(mc) = mc_risk {
                out.push(num(mc.estimate.mean));
            }
            out.push(best_method.to_string());
        }
        Row::HideAndSeek { n, bounds, upper, best_method, .. } => {
            out.push(n.to_string());
            out.extend([num(bounds.mi), num(bounds.ml), String::new(), String::new(), String::new()]);
            out.push(num(*upper));
            debug_assert!(cfg.trials.is_none());
            out.push(best_method.to_string());
        }
    }
    out
}

pub fn to_csv(cfg: &RunConfig, rows: &[Row]) -> anyhow::Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header(cfg))?;
    for row in rows {
        w.write_record(record(cfg, row))?;
    }
    Ok(w.into_inner()?)
}

pub fn to_json(cfg: &RunConfig, rows: &[Row]) -> anyhow::Result<Vec<u8>> {
    let mut s = serde_json::to_vec_pretty(&Document { config: cfg, rows })?;
    s.push(b'\n');
    Ok(s)
}

fn sidecar(path: &std::path::Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

pub fn run(cfg: &RunConfig) -> Result<(), RunError> {
    let rows = compute_rows(cfg)?;
    let body = match cfg.format {
        Format::Csv => to_csv(cfg, &rows),
        Format::Json => to_json(cfg, &rows),
    }
    .map_err(RunError::Io)?;
    let io = |e: std::io::Error| RunError::Io(e.into());
    match &cfg.out {
        Some(path) => {
            std::fs::write(path, &body).map_err(io)?;
            if cfg.format == Format::Csv {
                let doc = to_json(cfg, &rows).map_err(RunError::Io)?;
                std::fs::write(sidecar(path), doc).map_err(io)?;
            }
        }
        None => std::io::stdout().lock().write_all(&body).map_err(io)?,
    }
    Ok(())
}
