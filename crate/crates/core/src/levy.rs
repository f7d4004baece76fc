//! Process umbrae: builders that turn a Lévy triplet or a named process
//! into the umbra `alpha` whose dot-family `{t . alpha}` represents the
//! process.
//!
//! Jump measures are restricted to finite discrete atom lists or explicit
//! moment lists, so every integral reduces to a finite sum and everything
//! stays exact.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyring::{FSeries, MPoly, Rat};
use crate::umbra::{ops, SpecialUmbra, Umbra};

/// A finite surrogate for the Lévy measure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Measure {
    /// Finite list of `(location, weight)` atoms; weights must be
    /// nonnegative.
    Discrete { atoms: Vec<(Rat, Rat)> },
    /// Raw moments `m_2, m_3, ...` of the measure umbra (its first moment
    /// is zero by construction).
    Moments { moments: Vec<Rat> },
}

impl Measure {
    pub fn empty() -> Measure {
        Measure::Discrete { atoms: Vec::new() }
    }

    /// The umbra associated with the measure: `m_1 = 0` and
    /// `m_n = sum_i w_i x_i^n` for `n >= 2`.
    pub fn gamma_umbra(&self, order: usize) -> Umbra {
        let mut higher = vec![MPoly::zero(); order];
        match self {
            Measure::Discrete { atoms } => {
                for (loc, weight) in atoms {
                    let mut pow = loc.clone() * loc.clone();
                    for m in higher.iter_mut().skip(1) {
                        *m = &*m + &MPoly::constant(weight.clone() * &pow);
                        pow = pow * loc;
                    }
                }
            }
            Measure::Moments { moments } => {
                for (i, m) in moments.iter().enumerate() {
                    if i + 1 < higher.len() {
                        higher[i + 1] = MPoly::constant(m.clone());
                    }
                }
            }
        }
        Umbra::from_higher_moments(higher)
    }

    fn validate(&self) -> Result<()> {
        if let Measure::Discrete { atoms } = self {
            for (loc, weight) in atoms {
                if weight.is_negative() {
                    return Err(Error::BadParameter(format!(
                        "negative weight {weight} at atom {loc}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Normal-form characteristics of a Lévy process: drift-plus-large-jump
/// constant, Gaussian variance, and the jump measure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevySpec {
    pub c0: Rat,
    pub s2: Rat,
    #[serde(default = "Measure::empty")]
    pub measure: Measure,
}

impl LevySpec {
    pub fn validate(&self) -> Result<()> {
        if self.s2.is_negative() {
            return Err(Error::BadParameter(format!(
                "negative Gaussian variance {}",
                self.s2
            )));
        }
        self.measure.validate()
    }

    /// With a discrete measure, the normal-form constant relates to a raw
    /// drift `m` by `c0 = m + sum_{|x_i| >= 1} w_i x_i`.
    pub fn c0_from_drift(m: &Rat, atoms: &[(Rat, Rat)]) -> Rat {
        let mut c0 = m.clone();
        for (loc, weight) in atoms {
            if loc.abs() >= Rat::one() {
                c0 = c0 + loc.clone() * weight.clone();
            }
        }
        c0
    }
}

/// A config-file wrapper: a triplet plus an optional truncation order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LevyConfig {
    #[serde(flatten)]
    pub spec: LevySpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
}

impl LevyConfig {
    pub fn from_json(json: &str) -> Result<LevyConfig> {
        serde_json::from_str(json).map_err(|e| Error::Parse(format!("levy config: {e}")))
    }
}

/// The supported named processes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ProcessKind {
    Brownian,
    Poisson,
    Gamma,
    Pascal,
    UniformWalk,
    BernoulliHalfWalk,
    BernoulliWalk,
}

impl ProcessKind {
    pub const ALL: [ProcessKind; 7] = [
        ProcessKind::Brownian,
        ProcessKind::Poisson,
        ProcessKind::Gamma,
        ProcessKind::Pascal,
        ProcessKind::UniformWalk,
        ProcessKind::BernoulliHalfWalk,
        ProcessKind::BernoulliWalk,
    ];

    pub fn token(self) -> &'static str {
        match self {
            ProcessKind::Brownian => "brownian",
            ProcessKind::Poisson => "poisson",
            ProcessKind::Gamma => "gamma",
            ProcessKind::Pascal => "pascal",
            ProcessKind::UniformWalk => "uniform_walk",
            ProcessKind::BernoulliHalfWalk => "bernoulli_half_walk",
            ProcessKind::BernoulliWalk => "bernoulli_walk",
        }
    }

    /// Discrete-time processes use `n` as their time symbol.
    pub fn is_walk(self) -> bool {
        matches!(
            self,
            ProcessKind::UniformWalk | ProcessKind::BernoulliHalfWalk | ProcessKind::BernoulliWalk
        )
    }
}

impl FromStr for ProcessKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<ProcessKind> {
        ProcessKind::ALL
            .into_iter()
            .find(|k| k.token() == s)
            .ok_or_else(|| Error::UnknownProcess(s.to_string()))
    }
}

/// The umbra of a process at unit time, plus presentation metadata.
#[derive(Clone, Debug)]
pub struct ProcessUmbra {
    pub alpha: Umbra,
    pub label: String,
    pub params: BTreeMap<String, MPoly>,
    /// The symbol used for the time parameter (`t`, or `n` for walks).
    pub time_var: String,
}

impl ProcessUmbra {
    pub fn order(&self) -> usize {
        self.alpha.order()
    }
}

impl fmt::Display for ProcessUmbra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)?;
        if !self.params.is_empty() {
            let ps: Vec<String> = self
                .params
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            write!(f, "({})", ps.join(", "))?;
        }
        Ok(())
    }
}

/// The umbra of the triplet: the partition umbra of
/// `c0 chi ++ s delta ++ gamma`. Its cumulants are
/// `(c0, s^2 + m_2, m_3, ..., m_N)`, which is asserted.
pub fn from_triplet(spec: &LevySpec, order: usize) -> Result<ProcessUmbra> {
    spec.validate()?;
    let chi = Umbra::special(SpecialUmbra::Singleton, order);
    let drift = ops::scale_rat(&spec.c0, &chi);
    // s delta has the single nonzero moment m_2 = s^2, so it can be built
    // from the variance directly and no square root is ever taken.
    let mut gauss_higher = vec![MPoly::zero(); order];
    if order >= 2 {
        gauss_higher[1] = MPoly::constant(spec.s2.clone());
    }
    let gauss = Umbra::from_higher_moments(gauss_higher);
    let gamma = spec.measure.gamma_umbra(order);
    let inner = ops::disjoint_sum(&drift, &ops::disjoint_sum(&gauss, &gamma));
    let alpha = ops::partition(&inner);
    let kappa = ops::cumulant(&alpha);
    assert!(
        kappa.similar(&inner),
        "triplet cumulants must reproduce the disjoint sum"
    );
    Ok(ProcessUmbra {
        alpha,
        label: "triplet".to_string(),
        params: BTreeMap::from([
            ("c0".to_string(), MPoly::constant(spec.c0.clone())),
            ("s2".to_string(), MPoly::constant(spec.s2.clone())),
        ]),
        time_var: "t".to_string(),
    })
}

/// Build a named process umbra. Parameters may be symbolic; positivity is
/// enforced only for rational constants.
pub fn named_process(
    kind: ProcessKind,
    params: &BTreeMap<String, MPoly>,
    order: usize,
) -> Result<ProcessUmbra> {
    let get = |name: &str, default: Option<MPoly>| -> Result<MPoly> {
        match params.get(name) {
            Some(p) => Ok(p.clone()),
            None => default.ok_or_else(|| {
                Error::BadParameter(format!("{} needs parameter {name}", kind.token()))
            }),
        }
    };
    let positive = |name: &str, p: &MPoly| -> Result<()> {
        if let Some(c) = p.as_constant() {
            if c.is_zero() || c.is_negative() {
                return Err(Error::BadParameter(format!(
                    "{} needs {name} > 0, got {c}",
                    kind.token()
                )));
            }
        }
        Ok(())
    };

    let mut kept: BTreeMap<String, MPoly> = BTreeMap::new();
    let alpha = match kind {
        ProcessKind::Brownian => {
            let s = get("s", Some(MPoly::one()))?;
            positive("s", &s)?;
            kept.insert("s".into(), s.clone());
            // t . beta . (s delta)
            let delta = Umbra::special(SpecialUmbra::Delta, order);
            ops::partition(&ops::scale(&s, &delta))
        }
        ProcessKind::Poisson => {
            let lambda = get("lambda", None)?;
            positive("lambda", &lambda)?;
            kept.insert("lambda".into(), lambda.clone());
            // t . lambda . beta
            ops::dot_poly(&lambda, &Umbra::special(SpecialUmbra::Bell, order))
        }
        ProcessKind::Gamma => {
            let lambda = get("lambda", Some(MPoly::one()))?;
            positive("lambda", &lambda)?;
            kept.insert("lambda".into(), lambda.clone());
            // (lambda t) . ubar
            ops::dot_poly(&lambda, &Umbra::special(SpecialUmbra::BooleanUnity, order))
        }
        ProcessKind::Pascal => {
            let p = bernoulli_fraction(kind, &get("p", None)?)?;
            kept.insert("p".into(), MPoly::constant(p.clone()));
            let q = Rat::one() - &p;
            let d = &p / &q;
            // t . ubar . d . beta, chained right to left
            let d_beta = ops::dot_poly(
                &MPoly::constant(d),
                &Umbra::special(SpecialUmbra::Bell, order),
            );
            ops::dot(&Umbra::special(SpecialUmbra::BooleanUnity, order), &d_beta)
        }
        ProcessKind::UniformWalk => {
            // n . (-1 . iota): uniform increments on [0, 1]
            ops::inverse(&Umbra::special(SpecialUmbra::Bernoulli, order))
        }
        ProcessKind::BernoulliHalfWalk => {
            // n . [(1/2)(-1 . eta + u)]: Bernoulli(1/2) increments,
            // gf (1 + e^z)/2
            let half = MPoly::constant(Rat::new(1, 2));
            let eta = Umbra::special(SpecialUmbra::Euler, order);
            let u = Umbra::special(SpecialUmbra::Unity, order);
            ops::scale(&half, &ops::add(&ops::inverse(&eta), &u))
        }
        ProcessKind::BernoulliWalk => {
            let p = bernoulli_fraction(kind, &get("p", None)?)?;
            kept.insert("p".into(), MPoly::constant(p.clone()));
            // n . (-1 . mu) with f(mu, z) = 1/(p e^z + q)
            ops::inverse(&bernoulli_mu(&p, order))
        }
    };
    Ok(ProcessUmbra {
        alpha,
        label: kind.token().to_string(),
        params: kept,
        time_var: if kind.is_walk() { "n" } else { "t" }.to_string(),
    })
}

fn bernoulli_fraction(kind: ProcessKind, p: &MPoly) -> Result<Rat> {
    let c = p
        .as_constant()
        .ok_or_else(|| Error::BadParameter(format!("{} needs a rational p", kind.token())))?;
    if c.is_negative() || c.is_zero() || c >= Rat::one() {
        return Err(Error::BadParameter(format!(
            "{} needs 0 < p < 1, got {c}",
            kind.token()
        )));
    }
    Ok(c)
}

/// The umbra `mu` with `f(mu, z) = 1/(p e^z + (1 - p))`; its inverse
/// `-1 . mu` is a Bernoulli(p) increment.
pub fn bernoulli_mu(p: &Rat, order: usize) -> Umbra {
    let q = Rat::one() - p;
    let den = &FSeries::exp_z(order).mul_rat(p) + &FSeries::constant(MPoly::constant(q), order);
    let gf = FSeries::one(order)
        .div(&den)
        .expect("constant term p + q = 1");
    Umbra::from_egf(&gf).expect("reciprocal of a unit gf")
}

/// Sum of two independent processes: `t . (a + g)`.
pub fn sum_process(p1: &ProcessUmbra, p2: &ProcessUmbra) -> ProcessUmbra {
    assert_eq!(
        p1.time_var, p2.time_var,
        "cannot sum processes over different time symbols"
    );
    let mut params = p1.params.clone();
    for (k, v) in &p2.params {
        params
            .entry(format!("rhs_{k}"))
            .or_insert_with(|| v.clone());
    }
    ProcessUmbra {
        alpha: ops::add(&p1.alpha, &p2.alpha),
        label: format!("{}+{}", p1.label, p2.label),
        params,
        time_var: p1.time_var.clone(),
    }
}

/// The closed-form moment generating function `phi(z)^t` of a named
/// process, expanded as a series with the time symbol kept symbolic. An
/// independent oracle against `egf(t . alpha)`.
pub fn closed_form_mgf(
    kind: ProcessKind,
    params: &BTreeMap<String, MPoly>,
    time: &MPoly,
    order: usize,
) -> Result<FSeries> {
    let get = |name: &str, default: Option<MPoly>| -> Result<MPoly> {
        match params.get(name) {
            Some(p) => Ok(p.clone()),
            None => default.ok_or_else(|| {
                Error::BadParameter(format!("{} needs parameter {name}", kind.token()))
            }),
        }
    };
    let base = match kind {
        ProcessKind::Brownian => {
            // exp(s^2 z^2 / 2)
            let s = get("s", Some(MPoly::one()))?;
            let mut arg = FSeries::zero(order);
            if order >= 2 {
                arg.set_coeff(2, (&s * &s).mul_rat(&Rat::new(1, 2)));
            }
            arg.exp().expect("constant term 0")
        }
        ProcessKind::Poisson => {
            // exp(lambda (e^z - 1))
            let lambda = get("lambda", None)?;
            FSeries::expm1(order)
                .mul_poly(&lambda)
                .exp()
                .expect("constant term 0")
        }
        ProcessKind::Gamma => {
            // (1 - z)^{-lambda}
            let lambda = get("lambda", Some(MPoly::one()))?;
            FSeries::one_plus_cz(&MPoly::from_int(-1), order)
                .pow_symbolic(&(-&lambda))
                .expect("constant term 1")
        }
        ProcessKind::Pascal => {
            // q / (1 - p e^z)
            let p = bernoulli_fraction(kind, &get("p", None)?)?;
            let q = Rat::one() - &p;
            let den =
                &FSeries::constant(MPoly::one(), order) - &FSeries::exp_z(order).mul_rat(&p);
            FSeries::constant(MPoly::constant(q), order)
                .div(&den)
                .expect("constant term 1 - p != 0")
        }
        ProcessKind::UniformWalk => {
            // (e^z - 1)/z
            FSeries::expm1(order + 1).shift_down(1)
        }
        ProcessKind::BernoulliHalfWalk => {
            // (1 + e^z)/2
            (&FSeries::one(order) + &FSeries::exp_z(order)).mul_rat(&Rat::new(1, 2))
        }
        ProcessKind::BernoulliWalk => {
            // p e^z + q
            let p = bernoulli_fraction(kind, &get("p", None)?)?;
            let q = Rat::one() - &p;
            &FSeries::exp_z(order).mul_rat(&p) + &FSeries::constant(MPoly::constant(q), order)
        }
    };
    base.pow_symbolic(time)
}

#[cfg(test)]
mod tests {
    use super::*;

    const N: usize = 10;

    fn rat(s: &str) -> Rat {
        s.parse().unwrap()
    }

    fn params(kv: &[(&str, &str)]) -> BTreeMap<String, MPoly> {
        kv.iter()
            .map(|(k, v)| (k.to_string(), v.parse().unwrap()))
            .collect()
    }

    #[test]
    fn standard_gaussian_moments() {
        let spec = LevySpec {
            c0: Rat::zero(),
            s2: Rat::one(),
            measure: Measure::empty(),
        };
        let p = from_triplet(&spec, 6).unwrap();
        let expect = [1i64, 0, 1, 0, 3, 0, 15];
        for (n, e) in expect.iter().enumerate() {
            assert_eq!(p.alpha.moment(n), &MPoly::from_int(*e), "n={n}");
        }
    }

    #[test]
    fn zero_triplet_is_augmentation() {
        let spec = LevySpec {
            c0: Rat::zero(),
            s2: Rat::zero(),
            measure: Measure::empty(),
        };
        let p = from_triplet(&spec, N).unwrap();
        assert!(p
            .alpha
            .similar(&Umbra::special(SpecialUmbra::Augmentation, N)));
    }

    #[test]
    fn pure_drift_is_deterministic() {
        let spec = LevySpec {
            c0: Rat::one(),
            s2: Rat::zero(),
            measure: Measure::empty(),
        };
        let p = from_triplet(&spec, N).unwrap();
        // exp(c0 z): all moments 1
        assert!(p.alpha.similar(&Umbra::special(SpecialUmbra::Unity, N)));
        let t = MPoly::var("t");
        let walked = ops::dot_poly(&t, &p.alpha);
        for k in 0..=4usize {
            assert_eq!(walked.moment(k), &t.pow(k as u32), "E[(t.a)^{k}] = t^{k}");
        }
    }

    #[test]
    fn triplet_cumulants_are_normal_form() {
        let spec = LevySpec {
            c0: rat("1/2"),
            s2: rat("1"),
            measure: Measure::Discrete {
                atoms: vec![(rat("1"), rat("2/3")), (rat("-2"), rat("1/6"))],
            },
        };
        let p = from_triplet(&spec, 6).unwrap();
        let kappa = ops::cumulant(&p.alpha);
        assert_eq!(kappa.moment(1), &MPoly::constant(rat("1/2")));
        // s^2 + m_2 = 1 + (2/3 + 4/6)
        let m2 = rat("2/3") + rat("4/6");
        assert_eq!(kappa.moment(2), &MPoly::constant(rat("1") + m2));
        // m_3 = 2/3 - 8/6
        assert_eq!(kappa.moment(3), &MPoly::constant(rat("2/3") + rat("-8/6")));
    }

    #[test]
    fn negative_variance_rejected() {
        let spec = LevySpec {
            c0: Rat::zero(),
            s2: rat("-1"),
            measure: Measure::empty(),
        };
        assert!(from_triplet(&spec, N).is_err());
        let bad_measure = LevySpec {
            c0: Rat::zero(),
            s2: Rat::zero(),
            measure: Measure::Discrete {
                atoms: vec![(rat("1"), rat("-1"))],
            },
        };
        assert!(from_triplet(&bad_measure, N).is_err());
    }

    #[test]
    fn compound_poisson_decomposition() {
        // triplet(c0, s, nu) = triplet(c0, s, 0) + triplet(0, 0, nu)
        let atoms = vec![(rat("1/2"), rat("3")), (rat("-1"), rat("1/4"))];
        let full = LevySpec {
            c0: rat("2"),
            s2: rat("1/3"),
            measure: Measure::Discrete {
                atoms: atoms.clone(),
            },
        };
        let smooth = LevySpec {
            c0: rat("2"),
            s2: rat("1/3"),
            measure: Measure::empty(),
        };
        let jumps = LevySpec {
            c0: Rat::zero(),
            s2: Rat::zero(),
            measure: Measure::Discrete { atoms },
        };
        let a = from_triplet(&full, 8).unwrap().alpha;
        let b = ops::add(
            &from_triplet(&smooth, 8).unwrap().alpha,
            &from_triplet(&jumps, 8).unwrap().alpha,
        );
        assert!(a.similar(&b));
    }

    #[test]
    fn poisson_low_moments() {
        let p = named_process(ProcessKind::Poisson, &params(&[("lambda", "l")]), N).unwrap();
        let t = MPoly::var("t");
        let walked = ops::dot_poly(&t, &p.alpha);
        assert_eq!(walked.moment(1), &"l*t".parse().unwrap());
        assert_eq!(walked.moment(2), &"l^2*t^2 + l*t".parse().unwrap());
    }

    #[test]
    fn gamma_moments_are_rising_factorials() {
        let p = named_process(ProcessKind::Gamma, &params(&[("lambda", "1")]), N).unwrap();
        let t = MPoly::var("t");
        let walked = ops::dot_poly(&t, &p.alpha);
        // t(t+1)...(t+n-1)
        let mut rising = MPoly::one();
        for n in 1..=5usize {
            rising = &rising * &(&t + &MPoly::from_int(n as i64 - 1));
            assert_eq!(walked.moment(n), &rising, "n={n}");
        }
    }

    #[test]
    fn pascal_increment_mean() {
        let p = named_process(ProcessKind::Pascal, &params(&[("p", "1/3")]), N).unwrap();
        // d = p/q = 1/2
        assert_eq!(p.alpha.moment(1), &MPoly::constant(rat("1/2")));
    }

    #[test]
    fn named_mgf_oracles_match() {
        let t = MPoly::var("t");
        let n = MPoly::var("n");
        let cases: Vec<(ProcessKind, BTreeMap<String, MPoly>)> = vec![
            (ProcessKind::Brownian, params(&[("s", "2")])),
            (ProcessKind::Brownian, params(&[("s", "s")])),
            (ProcessKind::Poisson, params(&[("lambda", "3/2")])),
            (ProcessKind::Gamma, params(&[("lambda", "2")])),
            (ProcessKind::Pascal, params(&[("p", "1/3")])),
            (ProcessKind::UniformWalk, params(&[])),
            (ProcessKind::BernoulliHalfWalk, params(&[])),
            (ProcessKind::BernoulliWalk, params(&[("p", "2/5")])),
        ];
        for (kind, ps) in cases {
            let proc = named_process(kind, &ps, 8).unwrap();
            let time = if kind.is_walk() { &n } else { &t };
            let lhs = ops::dot_poly(time, &proc.alpha).egf();
            let rhs = closed_form_mgf(kind, &ps, time, 8).unwrap();
            assert_eq!(lhs, rhs, "{}", kind.token());
        }
    }

    #[test]
    fn bernoulli_mu_construction_matches_dot_chain() {
        // mu = -1 . chi . p . beta
        let p = rat("2/5");
        let mu = bernoulli_mu(&p, N);
        let beta = Umbra::special(SpecialUmbra::Bell, N);
        let p_beta = ops::dot_poly(&MPoly::constant(p), &beta);
        let chain = ops::inverse(&ops::cumulant(&p_beta));
        assert!(mu.similar(&chain));
    }

    #[test]
    fn sum_process_distributes() {
        let b = named_process(ProcessKind::Brownian, &params(&[("s", "1")]), N).unwrap();
        let po = named_process(ProcessKind::Poisson, &params(&[("lambda", "2")]), N).unwrap();
        let s = sum_process(&b, &po);
        // cumulants add componentwise
        let ks = ops::cumulant(&s.alpha);
        let expect = ops::disjoint_sum(&ops::cumulant(&b.alpha), &ops::cumulant(&po.alpha));
        assert!(ks.similar(&expect));
        // neutral element
        let eps_proc = ProcessUmbra {
            alpha: Umbra::special(SpecialUmbra::Augmentation, N),
            label: "eps".into(),
            params: BTreeMap::new(),
            time_var: "t".into(),
        };
        assert!(sum_process(&b, &eps_proc).alpha.similar(&b.alpha));
    }

    #[test]
    fn distributivity_at_symbolic_time() {
        // t . (a + g) = t . a + t . g
        let b = named_process(ProcessKind::Brownian, &params(&[("s", "1")]), 8).unwrap();
        let po = named_process(ProcessKind::Poisson, &params(&[("lambda", "2")]), 8).unwrap();
        let t = MPoly::var("t");
        let lhs = ops::dot_poly(&t, &ops::add(&b.alpha, &po.alpha));
        let rhs = ops::add(
            &ops::dot_poly(&t, &b.alpha),
            &ops::dot_poly(&t, &po.alpha),
        );
        assert!(lhs.similar(&rhs));
    }

    #[test]
    fn config_json_round_trip() {
        let json =
            r#"{"c0":"1/2","s2":"1","measure":{"atoms":[["1","2/3"],["-2","1/6"]]},"order":12}"#;
        let cfg = LevyConfig::from_json(json).unwrap();
        assert_eq!(cfg.order, Some(12));
        assert_eq!(cfg.spec.c0, rat("1/2"));
        match &cfg.spec.measure {
            Measure::Discrete { atoms } => assert_eq!(atoms.len(), 2),
            _ => panic!("expected atoms"),
        }
        let moments_json = r#"{"c0":"0","s2":"0","measure":{"moments":["1","1/2"]}}"#;
        let cfg = LevyConfig::from_json(moments_json).unwrap();
        match &cfg.spec.measure {
            Measure::Moments { moments } => assert_eq!(moments.len(), 2),
            _ => panic!("expected moments"),
        }
    }
}
