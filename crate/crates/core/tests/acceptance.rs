//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use riskbounds::bounds::{hellinger_bound, ml_bound, sibson_bound};
use riskbounds::measures::{
    chi_square, e_gamma_zeta_pair, hellinger_p, kl_divergence, renyi_divergence, total_variation, QuadraturePolicy,
};
use riskbounds::models::table::{bernoulli_row, gaussian_row, noisy_row, BoundOptions, BoundRow};
use riskbounds::models::{BernoulliUniformModel, GaussianModel, HideAndSeekModel, NoisyBernoulliModel, ThetaRule};
use riskbounds::oracle::{brute_force_divergence, mc_risk, Estimator, RiskModel};
use riskbounds::sdpi::{dobrushin_coefficient, renyi_sdpi_ratio, sampled_contraction};
use riskbounds::{DiscreteDistribution, DiscreteJoint, DivergenceSpec, MarkovKernel};
use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn within_time(start: Instant, limit: Duration, detail: String) -> Outcome {
    let t = start.elapsed();
    if t < limit {
        Ok(format!("{detail}; {:.2}s", t.as_secs_f64()))
    } else {
        Err(format!("{detail}; took {:.2}s, limit {}s", t.as_secs_f64(), limit.as_secs()))
    }
}

fn bernoulli_ml_closed_form() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for n in 1..=500u32 {
        let model = BernoulliUniformModel::new(n).unwrap();
        let v = ml_bound(model.maximal_leakage().upper, &model.small_ball()).unwrap().value;
        let nf = n as f64;
        let expect = 1.0 / (8.0 * (2.0 + (PI * nf / 2.0).sqrt()));
        worst = worst.max(rel(v, expect));
        if rel(v, expect) > 1e-12 {
            return Err(format!("n={n}: {v} vs {expect}"));
        }
        if n >= 41 && v < 1.0 / (5.0 * (2.0 * PI * nf).sqrt()) {
            return Err(format!("n={n}: {v} below 1/(5 sqrt(2 pi n))"));
        }
    }
    within_time(start, Duration::from_secs(1), format!("max rel err {worst:.1e}"))
}

fn chi_square_closed_form() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for n in 1..=85u32 {
        let model = BernoulliUniformModel::new(n).unwrap();
        // 4^n / C(2n, n) = prod (2k) / (2k - 1)
        let central: f64 = (1..=n).map(|k| 2.0 * k as f64 / (2.0 * k as f64 - 1.0)).product();
        let moment = (n as f64 + 1.0) / (2.0 * n as f64 + 1.0) * central;
        let chi2 = model.hellinger(2.0).unwrap();
        let err = rel(chi2 + 1.0, moment);
        worst = worst.max(err);
        if err > 1e-10 {
            return Err(format!("n={n}: chi2+1 = {} vs {moment}", chi2 + 1.0));
        }
        let b = hellinger_bound(chi2, 2.0, &model.small_ball()).unwrap().value;
        let closed = (2.0 / 27.0) / (chi2 + 1.0);
        if rel(b, closed) > 1e-12 {
            return Err(format!("n={n}: bound {b} vs (2/27)/(chi2+1) = {closed}"));
        }
        if b < 7.0 / (72.0 * (PI * n as f64).sqrt()) {
            return Err(format!("n={n}: bound {b} below 7/(72 sqrt(pi n))"));
        }
    }
    within_time(start, Duration::from_secs(1), format!("max rel err {worst:.1e}"))
}

fn quadrature_oracle() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for n in 1..=20u32 {
        let model = BernoulliUniformModel::new(n).unwrap();
        let mixed = model.mixed_joint(QuadraturePolicy::default()).unwrap();
        for a in [1.5, 2.0, 3.0] {
            let pairs = [
                ("sibson", model.sibson(a).unwrap(), mixed.sibson(a).unwrap()),
                ("hellinger", model.hellinger(a).unwrap(), (mixed.hellinger_moment(a).unwrap() - 1.0) / (a - 1.0)),
            ];
            for (name, closed, quad) in pairs {
                let err = (closed - quad).abs() / quad.abs().max(1.0);
                worst = worst.max(err);
                if err > 1e-6 {
                    return Err(format!("{name} n={n} order {a}: {closed} vs {quad}"));
                }
            }
        }
    }
    within_time(start, Duration::from_secs(30), format!("max err {worst:.1e}"))
}

fn check_row(setting: &str, row: &BoundRow, model: &dyn RiskModel, est: Estimator, worst: &mut f64) -> Outcome {
    let risk = mc_risk(model, est, 100_000, 0x5eed ^ row.n as u64).map_err(|e| e.to_string())?;
    let ceiling = risk.mean + 3.0 * risk.std_error;
    for b in row.columns() {
        *worst = worst.max(b.value / ceiling);
        if b.value > ceiling {
            return Err(format!(
                "{setting} n={} {}: bound {} above risk {} + 3se",
                row.n,
                b.method.tag(),
                b.value,
                risk.mean
            ));
        }
    }
    Ok(String::new())
}

fn sandwich() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let options = [BoundOptions::default(), BoundOptions::optimized()];
    let gaussian_fixed = BoundOptions::fixed(2.0, 1.5, 2.0, 1.5);
    for n in [1u32, 2, 5, 10, 25, 50] {
        let clean = BernoulliUniformModel::new(n).unwrap();
        let noisy = NoisyBernoulliModel::new(n, 0.25).unwrap();
        let gauss = GaussianModel::new(n, 1.0, 2.0).unwrap();
        for o in &options {
            let row = bernoulli_row(&clean, o).map_err(|e| e.to_string())?;
            check_row("bernoulli", &row, &clean, Estimator::PosteriorMedian, &mut worst)?;
            let row = noisy_row(&noisy, o).map_err(|e| e.to_string())?;
            check_row("noisy-bernoulli", &row, &noisy, Estimator::PosteriorMedian, &mut worst)?;
        }
        for o in [&gaussian_fixed, &options[1]] {
            let row = gaussian_row(&gauss, o).map_err(|e| e.to_string())?;
            check_row("gaussian", &row, &gauss, Estimator::PosteriorMean, &mut worst)?;
        }
    }
    within_time(start, Duration::from_secs(300), format!("max bound/ceiling {worst:.3}"))
}

fn bound_ordering() -> Outcome {
    let start = Instant::now();
    let o = BoundOptions::optimized();
    for n in 1..=50u32 {
        let r = bernoulli_row(&BernoulliUniformModel::new(n).unwrap(), &o).map_err(|e| e.to_string())?;
        let chain = [r.egz.value, r.sibson.value, r.hellinger.value, r.mi.value];
        if chain.windows(2).any(|w| w[0] + 1e-9 < w[1]) || r.egz.value > r.upper {
            return Err(format!("n={n}: egz/sibson/hellinger/mi = {chain:?}, upper {}", r.upper));
        }
    }
    within_time(start, Duration::from_secs(600), "E >= Sibson >= Hellinger >= MI for n=1..50".into())
}

fn sdpi_counterexample() -> Outcome {
    let k = MarkovKernel::bsc(0.2).unwrap();
    let mu = DiscreteDistribution::uniform(2).unwrap();
    let nu = DiscreteDistribution::point_mass(2, 0).unwrap();
    let r6 = renyi_sdpi_ratio(&k, &mu, &nu, 6.0).unwrap();
    let r10 = renyi_sdpi_ratio(&k, &mu, &nu, 10.0).unwrap();
    let dob = dobrushin_coefficient(&k);
    let detail = format!("ratio(6) {r6:.5}, ratio(10) {r10:.5}, dobrushin {dob}");
    if (r6 - 0.6138).abs() <= 5e-4 && r6 > dob && r10 > r6 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn noisy_bernoulli() -> Outcome {
    for n in 1..=50u32 {
        let model = NoisyBernoulliModel::new(n, 0.25).unwrap();
        let chi2 = model.clean().hellinger(2.0).unwrap();
        let sdpi = model.bound().unwrap().value;
        let clean = hellinger_bound(chi2, 2.0, &model.small_ball()).unwrap().value;
        let closed = (2.0 / 27.0) / (0.25 * chi2 + 1.0);
        if rel(sdpi, closed) > 1e-12 || sdpi <= clean {
            return Err(format!("n={n}: sdpi {sdpi}, closed form {closed}, noiseless {clean}"));
        }
    }
    Ok("lambda=0.25, n=1..50".into())
}

fn gaussian_constants() -> Outcome {
    let mut worst = 0.0f64;
    for (n, sw, s) in [(0u32, 1.0, 2.0), (1, 1.0, 2.0), (10, 1.0, 2.0), (3, 0.5, 4.0), (50, 2.0, 0.5)] {
        let model = GaussianModel::new(n, sw, s).unwrap();
        let v = model.hellinger_three_halves_relaxed().unwrap().value;
        let expect = 81.0 * (2.0 * PI).sqrt() / 2048.0 * (sw / (1.0 + n as f64 * sw / s)).sqrt();
        worst = worst.max(rel(v, expect));
        if rel(v, expect) > 1e-12 {
            return Err(format!("p=3/2 n={n}: {v} vs {expect}"));
        }
    }
    let model = GaussianModel::new(10, 1.0, 2.0).unwrap();
    let i2 = model.sibson(2.0).unwrap();
    let got = sibson_bound(i2, 2.0, &model.small_ball()).unwrap().value;
    let c = (2.0 / (PI * model.sigma_w_sq())).sqrt();
    let rho_max = (-i2).exp() / c;
    let grid = (1..=1_000_000)
        .map(|i| {
            let rho = rho_max * i as f64 / 1e6;
            rho * (1.0 - (i2.exp() * c * rho).sqrt())
        })
        .fold(f64::NEG_INFINITY, f64::max);
    if (got - grid).abs() > 1e-8 {
        return Err(format!("sibson alpha=2: {got} vs grid {grid}"));
    }
    Ok(format!("p=3/2 max rel err {worst:.1e}; sibson vs grid {:.1e}", (got - grid).abs()))
}

fn hide_and_seek() -> Outcome {
    let rule: ThetaRule = "n^-2".parse().unwrap();
    let mut prev = f64::NEG_INFINITY;
    let mut problems = Vec::new();
    for n in 2..=200u32 {
        let b = HideAndSeekModel::new(512, 10, 1536.0, rule.theta(n), n).unwrap().bounds();
        if b.ml < prev {
            problems.push(format!("ml decreases at n={n}"));
        }
        if !(b.ml > b.mi && b.ml > b.nips) {
            problems.push(format!("n={n}: ml {:.4} mi {:.4} nips {:.4}", b.ml, b.mi, b.nips));
        }
        prev = b.ml;
    }
    let cross = (1..=200u32).find(|&n| {
        let b = HideAndSeekModel::new(512, 10, 1536.0, 0.01, n).unwrap().bounds();
        b.mi > b.ml
    });
    match cross {
        Some(n) if (23..=27).contains(&n) => {}
        other => problems.push(format!("theta=0.01 crossover at {other:?}")),
    }
    let detail = format!("theta=0.01 crossover at n={}", cross.unwrap_or(0));
    if problems.is_empty() {
        Ok(detail)
    } else {
        let shown: Vec<_> = problems.iter().take(3).cloned().collect();
        Err(format!("{detail}; {} violations: {}", problems.len(), shown.join("; ")))
    }
}

fn random_dist(rng: &mut ChaCha8Rng, k: usize) -> DiscreteDistribution {
    DiscreteDistribution::normalized((0..k).map(|_| rng.gen::<f64>() + 1e-3).collect()).unwrap()
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    type Div = Box<dyn Fn(&DiscreteDistribution, &DiscreteDistribution) -> f64>;
    let divs: Vec<(&str, Div)> = vec![
        ("kl", Box::new(|p, q| kl_divergence(p, q).unwrap())),
        ("chi2", Box::new(|p, q| chi_square(p, q).unwrap())),
        ("hellinger-1.5", Box::new(|p, q| hellinger_p(p, q, 1.5).unwrap())),
        ("hellinger-3", Box::new(|p, q| hellinger_p(p, q, 3.0).unwrap())),
        ("egz-2-1.5", Box::new(|p, q| e_gamma_zeta_pair(p, q, 2.0, 1.5).unwrap())),
        ("egz-0.5-1", Box::new(|p, q| e_gamma_zeta_pair(p, q, 0.5, 1.0).unwrap())),
        ("renyi-0.5", Box::new(|p, q| renyi_divergence(p, q, 0.5).unwrap())),
        ("renyi-2", Box::new(|p, q| renyi_divergence(p, q, 2.0).unwrap())),
        ("tv", Box::new(|p, q| total_variation(p, q).unwrap())),
    ];
    for t in 0..200 {
        let p = random_dist(&mut rng, 4);
        let q = random_dist(&mut rng, 4);
        let rows: Vec<f64> = (0..4).flat_map(|_| random_dist(&mut rng, 3).weights().to_vec()).collect();
        let k = MarkovKernel::new(4, 3, rows).unwrap();
        let (pk, qk) = (k.push(&p).unwrap(), k.push(&q).unwrap());
        for (name, d) in &divs {
            if d(&pk, &qk) > d(&p, &q) + 1e-10 {
                return Err(format!("DPI fails for {name} on triple {t}"));
            }
        }
    }
    let specs = [
        DivergenceSpec::Renyi { alpha: 0.5 },
        DivergenceSpec::Renyi { alpha: 2.0 },
        DivergenceSpec::SibsonMI { alpha: 1.5 },
        DivergenceSpec::SibsonMI { alpha: 4.0 },
        DivergenceSpec::MaxLeakage,
        DivergenceSpec::HellingerP { p: 1.5 },
        DivergenceSpec::HellingerP { p: 3.0 },
        DivergenceSpec::ChiSquare,
        DivergenceSpec::Kl,
        DivergenceSpec::MutualInformation,
        DivergenceSpec::EGammaZeta { gamma: 2.0, zeta: 1.5 },
    ];
    for t in 0..200 {
        let j = DiscreteJoint::new(4, 4, random_dist(&mut rng, 16).weights().to_vec()).unwrap();
        for s in &specs {
            let (a, b) = (s.evaluate(&j).unwrap(), brute_force_divergence(&j, s).unwrap());
            if (a - b).abs() > 1e-10 {
                return Err(format!("joint {t}, {s:?}: measures {a} vs brute force {b}"));
            }
        }
    }
    let model = BernoulliUniformModel::new(5).unwrap();
    let r1 = mc_risk(&model, Estimator::PosteriorMedian, 20_000, 7).unwrap();
    let r2 = mc_risk(&model, Estimator::PosteriorMedian, 20_000, 7).unwrap();
    let gauss = GaussianModel::new(3, 1.0, 2.0).unwrap();
    let g1 = mc_risk(&gauss, Estimator::SampleMean, 20_000, 11).unwrap();
    let g2 = mc_risk(&gauss, Estimator::SampleMean, 20_000, 11).unwrap();
    let k = MarkovKernel::bsc(0.1).unwrap();
    let kl = |p: &DiscreteDistribution, q: &DiscreteDistribution| kl_divergence(p, q);
    let s1 = sampled_contraction(&k, kl, 500, 3).unwrap();
    let s2 = sampled_contraction(&k, kl, 500, 3).unwrap();
    let same = r1.mean.to_bits() == r2.mean.to_bits()
        && r1.std_error.to_bits() == r2.std_error.to_bits()
        && g1.mean.to_bits() == g2.mean.to_bits()
        && s1.to_bits() == s2.to_bits();
    if !same {
        return Err("seeded outputs differ between runs".into());
    }
    Ok("DPI on 200 triples, brute force on 200 joints, seeded outputs bit-identical".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("bernoulli maximal leakage closed form", bernoulli_ml_closed_form),
        ("chi-square closed form", chi_square_closed_form),
        ("gamma sums vs quadrature", quadrature_oracle),
        ("sandwich against Monte Carlo risk", sandwich),
        ("bound ordering on bernoulli", bound_ordering),
        ("renyi contraction counterexample", sdpi_counterexample),
        ("noisy bernoulli contraction", noisy_bernoulli),
        ("gaussian constants", gaussian_constants),
        ("hide-and-seek", hide_and_seek),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
