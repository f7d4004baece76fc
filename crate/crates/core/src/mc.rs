//! Floating-point Monte Carlo cross-validation of the symbolic results.
//!
//! Paths accumulate independent stationary increments on a uniform grid;
//! per-path RNG streams derive deterministically from `(seed, path index)`,
//! so a fixed seed reproduces bit-identical results on one platform. Only
//! two points per path are retained (an interior time and the horizon);
//! no full paths are stored.
//!
//! Statistical acceptance is 5 standard errors. A failed check triggers
//! one re-run with doubled paths before it is reported.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, Gamma as GammaDist, Normal, Poisson as PoissonDist};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::levy::{named_process, ProcessKind};
use crate::polyring::{MPoly, Rat, Var};
use crate::tsh;

/// Simulation configuration with exact parameters; floats enter only when
/// sampling.
#[derive(Clone, Debug)]
pub struct SimConfig {
    pub process: ProcessKind,
    pub params: BTreeMap<String, Rat>,
    pub horizon: f64,
    pub steps: usize,
    pub paths: usize,
    pub seed: u64,
}

/// Two retained points per path: the state at an interior time `s` and at
/// the horizon `t`.
#[derive(Clone, Debug)]
pub struct Ensemble {
    pub s: f64,
    pub t: f64,
    pub points: Vec<(f64, f64)>,
}

fn param_f64(cfg: &SimConfig, name: &str, default: Option<f64>) -> Result<f64> {
    match cfg.params.get(name) {
        Some(r) => Ok(r.to_f64()),
        None => default.ok_or_else(|| {
            Error::BadParameter(format!("{} needs parameter {name}", cfg.process.token()))
        }),
    }
}

enum Sampler {
    Brownian(Normal<f64>),
    Poisson(PoissonDist<f64>),
    Gamma(GammaDist<f64>),
    /// Negative binomial increments as a Poisson-Gamma mixture.
    Pascal { shape: f64, scale: f64 },
}

impl Sampler {
    fn new(cfg: &SimConfig, dt: f64) -> Result<Sampler> {
        match cfg.process {
            ProcessKind::Brownian => {
                let s = param_f64(cfg, "s", Some(1.0))?;
                let sd = (s * s * dt).sqrt();
                Ok(Sampler::Brownian(Normal::new(0.0, sd).map_err(|e| {
                    Error::BadParameter(format!("brownian: {e}"))
                })?))
            }
            ProcessKind::Poisson => {
                let lambda = param_f64(cfg, "lambda", None)?;
                Ok(Sampler::Poisson(PoissonDist::new(lambda * dt).map_err(
                    |e| Error::BadParameter(format!("poisson: {e}")),
                )?))
            }
            ProcessKind::Gamma => {
                let lambda = param_f64(cfg, "lambda", Some(1.0))?;
                Ok(Sampler::Gamma(
                    GammaDist::new(lambda * dt, 1.0)
                        .map_err(|e| Error::BadParameter(format!("gamma: {e}")))?,
                ))
            }
            ProcessKind::Pascal => {
                let p = param_f64(cfg, "p", None)?;
                if !(0.0..1.0).contains(&p) || p == 0.0 {
                    return Err(Error::BadParameter(format!(
                        "pascal needs 0 < p < 1, got {p}"
                    )));
                }
                Ok(Sampler::Pascal {
                    shape: dt,
                    scale: p / (1.0 - p),
                })
            }
            other => Err(Error::UnknownProcess(format!(
                "{} is not simulable (discrete-time walk)",
                other.token()
            ))),
        }
    }

    fn sample(&self, rng: &mut ChaCha12Rng) -> f64 {
        match self {
            Sampler::Brownian(d) => d.sample(rng),
            Sampler::Poisson(d) => d.sample(rng),
            Sampler::Gamma(d) => d.sample(rng),
            Sampler::Pascal { shape, scale } => {
                let mixing = GammaDist::new(*shape, *scale)
                    .expect("positive shape")
                    .sample(rng);
                if mixing <= 0.0 {
                    0.0
                } else {
                    PoissonDist::new(mixing).expect("positive mean").sample(rng)
                }
            }
        }
    }
}

/// Simulate the ensemble; the interior time is the grid point nearest to
/// half the horizon.
pub fn simulate(cfg: &SimConfig) -> Result<Ensemble> {
    if cfg.paths == 0 {
        return Err(Error::BadParameter("need at least one path".into()));
    }
    if cfg.steps == 0 {
        return Err(Error::BadParameter("need at least one step".into()));
    }
    let dt = cfg.horizon / cfg.steps as f64;
    let sampler = Sampler::new(cfg, dt)?;
    let mid_step = (cfg.steps / 2).max(1);
    let mut points = Vec::with_capacity(cfg.paths);
    for path in 0..cfg.paths {
        let mut rng = ChaCha12Rng::seed_from_u64(cfg.seed);
        rng.set_stream(path as u64 + 1);
        let mut x = 0.0;
        let mut x_mid = 0.0;
        for step in 0..cfg.steps {
            x += sampler.sample(&mut rng);
            if step + 1 == mid_step {
                x_mid = x;
            }
        }
        points.push((x_mid, x));
    }
    Ok(Ensemble {
        s: mid_step as f64 * dt,
        t: cfg.horizon,
        points,
    })
}

/// One martingale check: the sample mean of `Q_k(X_t, t)` against 0 at 5
/// standard errors, plus an OLS regression of
/// `Q_k(X_t, t) - Q_k(X_s, s)` on `X_s` whose intercept and slope must
/// also vanish at 5 standard errors.
#[derive(Clone, Debug, Serialize)]
pub struct MartingaleCheck {
    pub k: usize,
    pub mean: f64,
    pub std_error: f64,
    pub mean_pass: bool,
    pub intercept: f64,
    pub intercept_se: f64,
    pub slope: f64,
    pub slope_se: f64,
    pub regression_pass: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct McReport {
    pub process: String,
    pub paths: usize,
    pub seed: u64,
    pub retried: bool,
    /// Sample mean of `X_t` and its symbolic expectation.
    pub mean_x: f64,
    pub expected_mean_x: f64,
    pub mean_x_pass: bool,
    pub checks: Vec<MartingaleCheck>,
    pub pass: bool,
    pub elapsed_ms: u128,
}

const TOLERANCE_SE: f64 = 5.0;

/// Evaluate `Q_k(x, t)` quickly: precompiled `(coeff, x_exp, t_exp)` terms.
fn compile_xt(poly: &MPoly, time_var: &str) -> Vec<(f64, u32, u32)> {
    let x = Var::new("x");
    let t = Var::new(time_var);
    poly.terms()
        .map(|(m, c)| (c.to_f64(), m.exponent(&x), m.exponent(&t)))
        .collect()
}

fn eval_compiled(terms: &[(f64, u32, u32)], x: f64, t: f64) -> f64 {
    terms
        .iter()
        .map(|(c, ex, et)| c * x.powi(*ex as i32) * t.powi(*et as i32))
        .sum()
}

fn mean_and_se(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// OLS of `y` on `x`: returns (intercept, intercept_se, slope, slope_se).
fn regression(xs: &[f64], ys: &[f64]) -> (f64, f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let intercept = my - slope * mx;
    let rss: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let sigma2 = rss / (n - 2.0);
    let slope_se = if sxx > 0.0 {
        (sigma2 / sxx).sqrt()
    } else {
        f64::INFINITY
    };
    let intercept_se = (sigma2 * (1.0 / n + mx * mx / sxx.max(f64::MIN_POSITIVE))).sqrt();
    (intercept, intercept_se, slope, slope_se)
}

fn run_once(cfg: &SimConfig, kmax: usize, order: usize) -> Result<McReport> {
    let start = std::time::Instant::now();
    let params_sym: BTreeMap<String, MPoly> = cfg
        .params
        .iter()
        .map(|(k, v)| (k.clone(), MPoly::constant(v.clone())))
        .collect();
    let proc = named_process(cfg.process, &params_sym, order.max(kmax))?;
    let q = tsh::q_table(&proc, kmax)?;
    let ensemble = simulate(cfg)?;

    // E[X_t] = t * m_1(alpha)
    let m1 = proc
        .alpha
        .moment(1)
        .as_constant()
        .map(|r| r.to_f64())
        .unwrap_or(f64::NAN);
    let expected_mean_x = m1 * ensemble.t;
    let xt: Vec<f64> = ensemble.points.iter().map(|(_, x)| *x).collect();
    let xs: Vec<f64> = ensemble.points.iter().map(|(s, _)| *s).collect();
    let (mean_x, se_x) = mean_and_se(&xt);
    let mean_x_pass = (mean_x - expected_mean_x).abs() <= TOLERANCE_SE * se_x;

    let mut checks = Vec::with_capacity(kmax);
    let mut all_pass = mean_x_pass;
    for k in 1..=kmax {
        let terms = compile_xt(&q[k].poly, &proc.time_var);
        let at_t: Vec<f64> = xt
            .iter()
            .map(|&x| eval_compiled(&terms, x, ensemble.t))
            .collect();
        let at_s: Vec<f64> = xs
            .iter()
            .map(|&x| eval_compiled(&terms, x, ensemble.s))
            .collect();
        let (mean, se) = mean_and_se(&at_t);
        let mean_pass = mean.abs() <= TOLERANCE_SE * se;
        let diffs: Vec<f64> = at_t.iter().zip(&at_s).map(|(a, b)| a - b).collect();
        let (intercept, intercept_se, slope, slope_se) = regression(&xs, &diffs);
        let regression_pass = intercept.abs() <= TOLERANCE_SE * intercept_se
            && slope.abs() <= TOLERANCE_SE * slope_se;
        let pass = mean_pass && regression_pass;
        all_pass &= pass;
        checks.push(MartingaleCheck {
            k,
            mean,
            std_error: se,
            mean_pass,
            intercept,
            intercept_se,
            slope,
            slope_se,
            regression_pass,
            pass,
        });
    }
    Ok(McReport {
        process: proc.to_string(),
        paths: cfg.paths,
        seed: cfg.seed,
        retried: false,
        mean_x,
        expected_mean_x,
        mean_x_pass,
        checks,
        pass: all_pass,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// Run the martingale checks for `k = 1..=kmax`; on failure, re-run once
/// with doubled paths and report that outcome flagged as retried.
pub fn martingale_check(cfg: &SimConfig, kmax: usize, order: usize) -> Result<McReport> {
    let report = run_once(cfg, kmax, order)?;
    if report.pass {
        return Ok(report);
    }
    let mut doubled = cfg.clone();
    doubled.paths *= 2;
    let mut retry = run_once(&doubled, kmax, order)?;
    retry.retried = true;
    Ok(retry)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(process: ProcessKind, params: &[(&str, &str)], paths: usize) -> SimConfig {
        SimConfig {
            process,
            params: params
                .iter()
                .map(|(k, v)| (k.to_string(), v.parse().unwrap()))
                .collect(),
            horizon: 1.0,
            steps: 8,
            paths,
            seed: 42,
        }
    }

    #[test]
    fn simulation_is_deterministic() {
        let c = cfg(ProcessKind::Poisson, &[("lambda", "2")], 500);
        let a = simulate(&c).unwrap();
        let b = simulate(&c).unwrap();
        assert_eq!(a.points, b.points);
        let mut c2 = c.clone();
        c2.seed = 43;
        let d = simulate(&c2).unwrap();
        assert_ne!(a.points, d.points);
    }

    #[test]
    fn poisson_mean_within_tolerance() {
        let c = cfg(ProcessKind::Poisson, &[("lambda", "2")], 20_000);
        let e = simulate(&c).unwrap();
        let xt: Vec<f64> = e.points.iter().map(|(_, x)| *x).collect();
        let (mean, se) = mean_and_se(&xt);
        assert!((mean - 2.0).abs() <= 5.0 * se, "mean {mean}, se {se}");
    }

    #[test]
    fn brownian_is_centered() {
        let c = cfg(ProcessKind::Brownian, &[("s", "1")], 20_000);
        let e = simulate(&c).unwrap();
        let xt: Vec<f64> = e.points.iter().map(|(_, x)| *x).collect();
        let (mean, se) = mean_and_se(&xt);
        assert!(mean.abs() <= 5.0 * se);
    }

    #[test]
    fn gamma_mean_near_horizon_times_lambda() {
        let mut c = cfg(ProcessKind::Gamma, &[("lambda", "1")], 20_000);
        c.horizon = 2.0;
        let e = simulate(&c).unwrap();
        let xt: Vec<f64> = e.points.iter().map(|(_, x)| *x).collect();
        let (mean, se) = mean_and_se(&xt);
        assert!((mean - 2.0).abs() <= 5.0 * se);
    }

    #[test]
    fn martingale_checks_pass_for_core_processes() {
        for (kind, params) in [
            (ProcessKind::Brownian, vec![("s", "1")]),
            (ProcessKind::Poisson, vec![("lambda", "2")]),
            (ProcessKind::Gamma, vec![("lambda", "1")]),
        ] {
            let c = cfg(kind, &params, 20_000);
            let report = martingale_check(&c, 4, 6).unwrap();
            assert!(
                report.pass,
                "{}: {:?}",
                report.process,
                report
                    .checks
                    .iter()
                    .filter(|ch| !ch.pass)
                    .collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn pascal_increments_have_negative_binomial_mean() {
        // mean of X_1 is d = p/q
        let c = cfg(ProcessKind::Pascal, &[("p", "1/3")], 20_000);
        let e = simulate(&c).unwrap();
        let xt: Vec<f64> = e.points.iter().map(|(_, x)| *x).collect();
        let (mean, se) = mean_and_se(&xt);
        assert!((mean - 0.5).abs() <= 5.0 * se, "mean {mean}, se {se}");
    }

    #[test]
    fn walks_are_rejected() {
        let c = cfg(ProcessKind::UniformWalk, &[], 10);
        assert!(simulate(&c).is_err());
    }
}
