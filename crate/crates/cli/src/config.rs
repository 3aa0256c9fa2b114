//! Command-line flags, the optional TOML file, and their merge into a
//! resolved [`RunConfig`]. Flags win over the file, the file over defaults.

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use riskbounds::bounds::ParamGrid;
use riskbounds::models::table::BoundOptions;
use riskbounds::models::ThetaRule;
use riskbounds::DivergenceSpec;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

#[derive(Parser, Debug)]
#[command(name = "riskbounds", version, about = "Lower bounds on Bayesian risk from information measures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Uniform prior on the coin bias, n tosses, absolute loss.
    Bernoulli(CommonArgs),
    /// Coin tosses passed through a binary symmetric channel.
    NoisyBernoulli {
        #[command(flatten)]
        common: CommonArgs,
        /// Crossover probability of the channel.
        #[arg(long)]
        lambda: Option<f64>,
    },
    /// Gaussian prior and Gaussian noise, absolute loss.
    Gaussian {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long = "sigma-w2")]
        sigma_w2: Option<f64>,
        #[arg(long)]
        sigma2: Option<f64>,
    },
    /// Distributed Hide-and-Seek, 0-1 loss.
    HideAndSeek {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        d: Option<u32>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        b: Option<f64>,
        /// `n^-2`, `1/(4n)`, or a constant such as `0.01`.
        #[arg(long = "theta-rule")]
        theta_rule: Option<String>,
    },
    /// Run the sandwich, data-processing, oracle and ordering suites.
    Validate(ValidateArgs),
}

#[derive(Args, Debug, Default)]
pub struct CommonArgs {
    /// Sample sizes: `1..50`, `1..=50`, `7`, or `1,2,5`.
    #[arg(long)]
    pub n: Option<String>,
    /// Optimize the measure parameters at every n.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub optimize: Option<bool>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub zeta: Option<f64>,
    /// Monte-Carlo trials for the `mc_risk` column (omit to skip it).
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// TOML file with the same keys as the flags (underscores for dashes).
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ValidateArgs {
    /// Smaller suites, for a run under a minute.
    #[arg(long)]
    pub quick: bool,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Corrupt one closed form to check that the suites notice.
    #[arg(long, hide = true, value_enum)]
    pub mutate: Option<Mutation>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    ChiSquare,
    Sibson,
    Leakage,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Setting {
    Bernoulli,
    NoisyBernoulli,
    Gaussian,
    HideAndSeek,
}

/// Keys accepted in a config file. Unknown keys are rejected.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub n: Option<String>,
    pub optimize: Option<bool>,
    pub alpha: Option<f64>,
    pub p: Option<f64>,
    pub gamma: Option<f64>,
    pub zeta: Option<f64>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub lambda: Option<f64>,
    pub sigma_w2: Option<f64>,
    pub sigma2: Option<f64>,
    pub d: Option<u32>,
    pub m: Option<u32>,
    pub b: Option<f64>,
    pub theta_rule: Option<String>,
    pub alpha_grid: Option<Vec<f64>>,
    pub p_grid: Option<Vec<f64>>,
    pub gamma_grid: Option<Vec<f64>>,
    pub zeta_grid: Option<Vec<f64>>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "setting", rename_all = "kebab-case")]
pub enum ModelParams {
    Bernoulli,
    NoisyBernoulli { lambda: f64 },
    Gaussian { sigma_w2: f64, sigma2: f64 },
    HideAndSeek { d: u32, m: u32, b: f64, theta_rule: String },
}

/// Everything a run needs, after merging flags, file and defaults.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub setting: Setting,
    pub n: Vec<u32>,
    pub model: ModelParams,
    pub bounds: BoundOptions,
    pub trials: Option<usize>,
    pub seed: u64,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[serde(skip)]
    pub format: Format,
}

/// Parses `1..50` (inclusive), `1..=50`, a single value, or a comma list.
pub fn parse_n_range(s: &str) -> Result<Vec<u32>> {
    let s = s.trim();
    let mut out: Vec<u32> = if let Some((a, b)) = s.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        let (lo, hi): (u32, u32) = (a.trim().parse()?, b.trim().parse()?);
        if lo > hi {
            bail!("empty n range {s:?}");
        }
        (lo..=hi).collect()
    } else {
        s.split(',').map(|x| x.trim().parse::<u32>()).collect::<std::result::Result<_, _>>()?
    };
    out.sort_unstable();
    out.dedup();
    if out.is_empty() {
        bail!("empty n range {s:?}");
    }
    Ok(out)
}

fn grid(values: Option<Vec<f64>>, wrap: fn(Vec<f64>) -> ParamGrid, default: ParamGrid) -> Result<ParamGrid> {
    match values {
        Some(v) if v.is_empty() => bail!("parameter grids must not be empty"),
        Some(v) => Ok(wrap(v)),
        None => Ok(default),
    }
}

impl RunConfig {
    pub fn resolve(command: Command) -> Result<Self> {
        let (setting, common, extra) = match command {
            Command::Bernoulli(c) => (Setting::Bernoulli, c, Extra::default()),
            Command::NoisyBernoulli { common, lambda } => {
                (Setting::NoisyBernoulli, common, Extra { lambda, ..Default::default() })
            }
            Command::Gaussian { common, sigma_w2, sigma2 } => {
                (Setting::Gaussian, common, Extra { sigma_w2, sigma2, ..Default::default() })
            }
            Command::HideAndSeek { common, d, m, b, theta_rule } => {
                (Setting::HideAndSeek, common, Extra { d, m, b, theta_rule, ..Default::default() })
            }
            Command::Validate(_) => bail!("validate has no run configuration"),
        };
        let file = match &common.config {
            Some(path) => FileConfig::load(path)?,
            None => FileConfig::default(),
        };

        let gaussian = setting == Setting::Gaussian;
        let default_n = match setting {
            Setting::HideAndSeek => "2..100",
            _ => "1..50",
        };
        let n = parse_n_range(common.n.as_deref().or(file.n.as_deref()).unwrap_or(default_n))?;

        let model = match setting {
            Setting::Bernoulli => ModelParams::Bernoulli,
            Setting::NoisyBernoulli => {
                ModelParams::NoisyBernoulli { lambda: extra.lambda.or(file.lambda).unwrap_or(0.25) }
            }
            Setting::Gaussian => ModelParams::Gaussian {
                sigma_w2: extra.sigma_w2.or(file.sigma_w2).unwrap_or(1.0),
                sigma2: extra.sigma2.or(file.sigma2).unwrap_or(2.0),
            },
            Setting::HideAndSeek => {
                let rule = extra.theta_rule.or(file.theta_rule).unwrap_or_else(|| "n^-2".into());
                rule.parse::<ThetaRule>().map_err(anyhow::Error::msg)?;
                ModelParams::HideAndSeek {
                    d: extra.d.or(file.d).unwrap_or(512),
                    m: extra.m.or(file.m).unwrap_or(10),
                    b: extra.b.or(file.b).unwrap_or(1536.0),
                    theta_rule: rule,
                }
            }
        };

        let (p_default, g_default) = if gaussian { (1.5, 2.0) } else { (2.0, 3.0) };
        let bounds = BoundOptions {
            optimize: common.optimize.or(file.optimize).unwrap_or(false),
            alpha: common.alpha.or(file.alpha).unwrap_or(2.0),
            p: common.p.or(file.p).unwrap_or(p_default),
            gamma: common.gamma.or(file.gamma).unwrap_or(g_default),
            zeta: common.zeta.or(file.zeta).unwrap_or(1.5),
            alpha_grid: grid(file.alpha_grid, ParamGrid::Alpha, ParamGrid::default_alpha())?,
            order_grid: grid(file.p_grid, ParamGrid::Order, ParamGrid::default_order())?,
            gamma_zeta_grid: match (file.gamma_grid, file.zeta_grid) {
                (None, None) => ParamGrid::default_gamma_zeta(),
                (g, z) => {
                    let ParamGrid::GammaZeta { gamma, zeta } = ParamGrid::default_gamma_zeta() else { unreachable!() };
                    let (g, z) = (g.unwrap_or(gamma), z.unwrap_or(zeta));
                    if g.is_empty() || z.is_empty() {
                        bail!("parameter grids must not be empty");
                    }
                    ParamGrid::GammaZeta { gamma: g, zeta: z }
                }
            },
        };

        check_measures(&bounds)?;

        let trials = common.trials.or(file.trials);
        if trials.is_some() && setting == Setting::HideAndSeek {
            bail!("hide-and-seek has no simulator; drop --trials");
        }
        Ok(Self {
            setting,
            n,
            model,
            bounds,
            trials,
            seed: common.seed.or(file.seed).unwrap_or(0),
            out: common.out.or(file.out),
            format: common.format.or(file.format).unwrap_or(Format::Csv),
        })
    }
}

/// Rejects measure parameters outside their domains, grids included.
fn check_measures(o: &BoundOptions) -> Result<()> {
    let mut specs = vec![
        DivergenceSpec::SibsonMI { alpha: o.alpha },
        DivergenceSpec::HellingerP { p: o.p },
        DivergenceSpec::EGammaZeta { gamma: o.gamma, zeta: o.zeta },
    ];
    for g in [&o.alpha_grid, &o.order_grid, &o.gamma_zeta_grid] {
        match g {
            ParamGrid::Alpha(v) => specs.extend(v.iter().map(|&alpha| DivergenceSpec::SibsonMI { alpha })),
            ParamGrid::Order(v) => specs.extend(v.iter().map(|&p| DivergenceSpec::HellingerP { p })),
            ParamGrid::GammaZeta { gamma, zeta } => specs.extend(
                gamma.iter().flat_map(|&g| zeta.iter().map(move |&z| DivergenceSpec::EGammaZeta { gamma: g, zeta: z })),
            ),
        }
    }
    for s in specs {
        s.validate().map_err(|e| anyhow::anyhow!("{e}"))?;
    }
    Ok(())
}

#[derive(Default)]
struct Extra {
    lambda: Option<f64>,
    sigma_w2: Option<f64>,
    sigma2: Option<f64>,
    d: Option<u32>,
    m: Option<u32>,
    b: Option<f64>,
    theta_rule: Option<String>,
}
