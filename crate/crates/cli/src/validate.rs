//! Self-checks: closed forms against independent oracles, data processing,
//! bounds against simulated risk, and the bound ordering on the coin model.

use crate::config::{Mutation, ValidateArgs};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use riskbounds::bounds::ml_bound;
use riskbounds::measures::{
    chi_square, e_gamma_zeta_pair, hellinger_p, kl_divergence, renyi_divergence, total_variation, QuadraturePolicy,
};
use riskbounds::models::table::{bernoulli_row, gaussian_row, noisy_row, BoundOptions, BoundRow};
use riskbounds::models::{BernoulliUniformModel, GaussianModel, NoisyBernoulliModel};
use riskbounds::oracle::{brute_force_divergence, mc_risk, Estimator, RiskModel};
use riskbounds::{DiscreteDistribution, DiscreteJoint, DivergenceSpec, MarkovKernel};
use std::f64::consts::PI;

/// The closed forms under test. Swappable so that a corrupted formula can be
/// shown to fail the suites.
#[derive(Clone, Copy)]
pub struct ClosedForms {
    pub chi_square: fn(&BernoulliUniformModel) -> f64,
    pub sibson: fn(&BernoulliUniformModel, f64) -> f64,
    pub leakage: fn(&BernoulliUniformModel) -> f64,
}

impl Default for ClosedForms {
    fn default() -> Self {
        Self {
            chi_square: |m| m.hellinger(2.0).expect("finite"),
            sibson: |m, a| m.sibson(a).expect("finite"),
            leakage: |m| m.maximal_leakage().upper,
        }
    }
}

impl ClosedForms {
    pub fn mutated(m: Mutation) -> Self {
        let base = Self::default();
        match m {
            Mutation::ChiSquare => Self { chi_square: |m| 1.001 * m.hellinger(2.0).expect("finite"), ..base },
            Mutation::Sibson => Self { sibson: |m, a| m.sibson(a).expect("finite") + 1e-3, ..base },
            Mutation::Leakage => Self { leakage: |m| m.maximal_leakage().upper - 0.01, ..base },
        }
    }
}

pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub result: Result<String, String>,
}

struct Plan {
    oracle_n: u32,
    chi_square_n: u32,
    joints: usize,
    triples: usize,
    sandwich_n: Vec<u32>,
    trials: usize,
    optimized_sandwich: bool,
    ordering_n: Vec<u32>,
}

impl Plan {
    fn new(quick: bool) -> Self {
        if quick {
            Self {
                oracle_n: 8,
                chi_square_n: 85,
                joints: 50,
                triples: 50,
                sandwich_n: vec![1, 5, 10],
                trials: 20_000,
                optimized_sandwich: false,
                ordering_n: vec![1, 2, 5, 10, 20],
            }
        } else {
            Self {
                oracle_n: 20,
                chi_square_n: 85,
                joints: 200,
                triples: 200,
                sandwich_n: vec![1, 2, 5, 10, 25, 50],
                trials: 100_000,
                optimized_sandwich: true,
                ordering_n: (1..=50).collect(),
            }
        }
    }
}

fn check(suite: &'static str, name: impl Into<String>, result: Result<String, String>) -> Check {
    Check { suite, name: name.into(), result }
}

fn oracle_suite(forms: &ClosedForms, plan: &Plan, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let mut out = Vec::new();

    let mut worst = 0.0f64;
    let mut failure = None;
    'outer: for n in 1..=plan.oracle_n {
        let model = BernoulliUniformModel::new(n).expect("n >= 1");
        let mixed = match model.mixed_joint(QuadraturePolicy::default()) {
            Ok(m) => m,
            Err(e) => {
                failure = Some(format!("n={n}: {e}"));
                break;
            }
        };
        for a in [1.5, 2.0, 3.0] {
            let quad = mixed.sibson(a).unwrap_or(f64::NAN);
            let err = ((forms.sibson)(&model, a) - quad).abs() / quad.abs().max(1.0);
            worst = worst.max(err);
            if !(err <= 1e-6) {
                failure = Some(format!("n={n} alpha={a}: error {err:.2e}"));
                break 'outer;
            }
        }
    }
    out.push(check(
        "oracle",
        format!("sibson closed form vs quadrature, n<={}", plan.oracle_n),
        failure.map_or(Ok(format!("max error {worst:.1e}")), Err),
    ));

    let mut bad = None;
    for n in 1..=plan.chi_square_n {
        let model = BernoulliUniformModel::new(n).expect("n >= 1");
        let central: f64 = (1..=n).map(|k| 2.0 * k as f64 / (2.0 * k as f64 - 1.0)).product();
        let expect = (n as f64 + 1.0) / (2.0 * n as f64 + 1.0) * central - 1.0;
        let got = (forms.chi_square)(&model);
        if (got - expect).abs() > 1e-10 * expect.abs().max(1.0) {
            bad = Some(format!("n={n}: {got} vs {expect}"));
            break;
        }
    }
    out.push(check("oracle", format!("chi-square central-binomial identity, n<={}", plan.chi_square_n), bad.map_or(Ok("ok".into()), Err)));

    let mut bad = None;
    for n in 1..=500 {
        let model = BernoulliUniformModel::new(n).expect("n >= 1");
        let v = ml_bound((forms.leakage)(&model), &model.small_ball()).map(|b| b.value).unwrap_or(f64::NAN);
        let expect = 1.0 / (8.0 * (2.0 + (PI * n as f64 / 2.0).sqrt()));
        if !((v - expect).abs() <= 1e-12 * expect) {
            bad = Some(format!("n={n}: {v} vs {expect}"));
            break;
        }
    }
    out.push(check("oracle", "leakage bound closed form, n<=500", bad.map_or(Ok("ok".into()), Err)));

    let specs = [
        DivergenceSpec::Renyi { alpha: 0.5 },
        DivergenceSpec::Renyi { alpha: 2.0 },
        DivergenceSpec::SibsonMI { alpha: 2.0 },
        DivergenceSpec::MaxLeakage,
        DivergenceSpec::HellingerP { p: 1.5 },
        DivergenceSpec::ChiSquare,
        DivergenceSpec::Kl,
        DivergenceSpec::MutualInformation,
        DivergenceSpec::EGammaZeta { gamma: 2.0, zeta: 1.5 },
    ];
    let mut bad = None;
    'joints: for t in 0..plan.joints {
        let j = DiscreteJoint::new(4, 4, random_dist(rng, 16).weights().to_vec()).expect("valid joint");
        for s in &specs {
            let (a, b) = (s.evaluate(&j), brute_force_divergence(&j, s));
            match (a, b) {
                (Ok(a), Ok(b)) if (a - b).abs() <= 1e-10 => {}
                (a, b) => {
                    bad = Some(format!("joint {t} {s:?}: {a:?} vs {b:?}"));
                    break 'joints;
                }
            }
        }
    }
    out.push(check("oracle", format!("measures vs brute force on {} 4x4 joints", plan.joints), bad.map_or(Ok("ok".into()), Err)));
    out
}

fn random_dist(rng: &mut ChaCha8Rng, k: usize) -> DiscreteDistribution {
    DiscreteDistribution::normalized((0..k).map(|_| rng.gen::<f64>() + 1e-3).collect()).expect("positive weights")
}

fn dpi_suite(plan: &Plan, rng: &mut ChaCha8Rng) -> Vec<Check> {
    type Div = fn(&DiscreteDistribution, &DiscreteDistribution) -> riskbounds::Result<f64>;
    let divs: [(&str, Div); 7] = [
        ("kl", kl_divergence),
        ("chi-square", chi_square),
        ("hellinger-1.5", |p, q| hellinger_p(p, q, 1.5)),
        ("hellinger-3", |p, q| hellinger_p(p, q, 3.0)),
        ("e-gamma-zeta", |p, q| e_gamma_zeta_pair(p, q, 2.0, 1.5)),
        ("renyi-2", |p, q| renyi_divergence(p, q, 2.0)),
        ("total-variation", total_variation),
    ];
    let mut worst: Vec<Option<String>> = vec![None; divs.len()];
    for t in 0..plan.triples {
        let (p, q) = (random_dist(rng, 4), random_dist(rng, 4));
        let rows: Vec<f64> = (0..4).flat_map(|_| random_dist(rng, 3).weights().to_vec()).collect();
        let k = MarkovKernel::new(4, 3, rows).expect("stochastic rows");
        let (pk, qk) = (k.push(&p).expect("sizes match"), k.push(&q).expect("sizes match"));
        for (i, (_, d)) in divs.iter().enumerate() {
            let ok = matches!((d(&pk, &qk), d(&p, &q)), (Ok(a), Ok(b)) if a <= b + 1e-10);
            if !ok && worst[i].is_none() {
                worst[i] = Some(format!("triple {t}"));
            }
        }
    }
    divs.iter()
        .zip(worst)
        .map(|((name, _), bad)| {
            check("dpi", format!("{name} on {} random triples", plan.triples), bad.map_or(Ok("ok".into()), Err))
        })
        .collect()
}

fn sandwich_row(setting: &str, row: riskbounds::Result<BoundRow>, sim: &dyn RiskModel, est: Estimator, plan: &Plan, seed: u64) -> Check {
    let name = |n: u32| format!("{setting} n={n}");
    let row = match row {
        Ok(r) => r,
        Err(e) => return check("sandwich", setting.to_string(), Err(e.to_string())),
    };
    let risk = match mc_risk(sim, est, plan.trials, seed ^ row.n as u64) {
        Ok(r) => r,
        Err(e) => return check("sandwich", name(row.n), Err(e.to_string())),
    };
    let ceiling = risk.mean + 3.0 * risk.std_error;
    let over: Vec<String> = row
        .columns()
        .iter()
        .filter(|b| !(b.value <= ceiling))
        .map(|b| format!("{} {:.6} > {:.6}", b.method.tag(), b.value, ceiling))
        .collect();
    let result = if over.is_empty() { Ok(format!("risk {:.6}", risk.mean)) } else { Err(over.join(", ")) };
    check("sandwich", name(row.n), result)
}

fn sandwich_suite(plan: &Plan, seed: u64) -> Vec<Check> {
    let mut options = vec![BoundOptions::default()];
    if plan.optimized_sandwich {
        options.push(BoundOptions::optimized());
    }
    let mut out = Vec::new();
    for &n in &plan.sandwich_n {
        let clean = BernoulliUniformModel::new(n).expect("n >= 1");
        let noisy = NoisyBernoulliModel::new(n, 0.25).expect("valid channel");
        let gauss = GaussianModel::new(n, 1.0, 2.0).expect("positive variances");
        for (i, o) in options.iter().enumerate() {
            let tag = if i == 0 { "fixed" } else { "optimized" };
            let gauss_opts = if i == 0 { BoundOptions::fixed(2.0, 1.5, 2.0, 1.5) } else { o.clone() };
            out.push(sandwich_row(&format!("bernoulli {tag}"), bernoulli_row(&clean, o), &clean, Estimator::PosteriorMedian, plan, seed));
            out.push(sandwich_row(&format!("noisy-bernoulli {tag}"), noisy_row(&noisy, o), &noisy, Estimator::PosteriorMedian, plan, seed));
            out.push(sandwich_row(&format!("gaussian {tag}"), gaussian_row(&gauss, &gauss_opts), &gauss, Estimator::PosteriorMean, plan, seed));
        }
    }
    out
}

fn ordering_suite(plan: &Plan) -> Vec<Check> {
    let o = BoundOptions::optimized();
    let mut bad = None;
    for &n in &plan.ordering_n {
        let row = bernoulli_row(&BernoulliUniformModel::new(n).expect("n >= 1"), &o);
        match row {
            Ok(r) => {
                let chain = [r.egz.value, r.sibson.value, r.hellinger.value, r.mi.value];
                if chain.windows(2).any(|w| w[0] + 1e-9 < w[1]) || r.egz.value > r.upper {
                    bad = Some(format!("n={n}: {chain:?}"));
                    break;
                }
            }
            Err(e) => {
                bad = Some(format!("n={n}: {e}"));
                break;
            }
        }
    }
    let name = format!("E >= Sibson >= Hellinger >= MI on {} values of n", plan.ordering_n.len());
    vec![check("ordering", name, bad.map_or(Ok("ok".into()), Err))]
}

pub fn run_suites(args: &ValidateArgs, forms: &ClosedForms) -> Vec<Check> {
    let plan = Plan::new(args.quick);
    let seed = args.seed.unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = oracle_suite(forms, &plan, &mut rng);
    checks.extend(dpi_suite(&plan, &mut rng));
    checks.extend(sandwich_suite(&plan, seed));
    checks.extend(ordering_suite(&plan));
    checks
}

/// Prints one line per check and a summary; returns whether all passed.
pub fn report(checks: &[Check]) -> bool {
    let mut failed = 0;
    for c in checks {
        match &c.result {
            Ok(d) => println!("PASS [{}] {}: {d}", c.suite, c.name),
            Err(d) => {
                failed += 1;
                println!("FAIL [{}] {}: {d}", c.suite, c.name);
            }
        }
    }
    println!("{} checks, {failed} failed", checks.len());
    failed == 0
}
