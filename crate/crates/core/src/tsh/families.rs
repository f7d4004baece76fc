//! Classical polynomial families as time-space harmonic polynomials.
//!
//! Each family table carries two independently computed columns: the
//! `umbral` column from the moment calculus, and the `classical` column
//! extracted from the family's generating function by the series oracle.
//! The stated transform (identity, Stirling matrix, scalar `k!`, or a Bell
//! matrix over auxiliary moments) relates them exactly, and each family
//! check verifies every relation symbolically.
//!
//! Families whose literature form uses an ordinary generating function
//! (Laguerre, Krawtchouk, pseudo-Narumi) are flagged; coefficient
//! extraction then skips the `k!` and the column relation carries it
//! instead.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::combinat::{bell_triangle, factorial, stirling1};
use crate::error::{Error, Result};
use crate::levy::{bernoulli_mu, named_process, ProcessKind};
use crate::polyring::{FSeries, MPoly, Rat};
use crate::umbra::{ops, SpecialUmbra, Umbra};

use super::{q_table, q_table_with_time, TshPoly, VerifyOutcome};

/// The supported families.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    Hermite,
    PoissonCharlier,
    Laguerre,
    Actuarial,
    Meixner1,
    BernoulliPoly,
    EulerPoly,
    Krawtchouk,
    PseudoNarumi,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::Hermite,
        Family::PoissonCharlier,
        Family::Laguerre,
        Family::Actuarial,
        Family::Meixner1,
        Family::BernoulliPoly,
        Family::EulerPoly,
        Family::Krawtchouk,
        Family::PseudoNarumi,
    ];

    pub fn token(self) -> &'static str {
        match self {
            Family::Hermite => "hermite",
            Family::PoissonCharlier => "poisson_charlier",
            Family::Laguerre => "laguerre",
            Family::Actuarial => "actuarial",
            Family::Meixner1 => "meixner1",
            Family::BernoulliPoly => "bernoulli_poly",
            Family::EulerPoly => "euler_poly",
            Family::Krawtchouk => "krawtchouk",
            Family::PseudoNarumi => "pseudo_narumi",
        }
    }

    /// Default rational parameters.
    pub fn default_params(self) -> BTreeMap<String, Rat> {
        let mut m = BTreeMap::new();
        match self {
            Family::Hermite => {
                m.insert("s".into(), Rat::one());
            }
            Family::PoissonCharlier | Family::Actuarial => {
                m.insert("lambda".into(), Rat::one());
            }
            Family::Meixner1 => {
                m.insert("p".into(), Rat::new(1, 2));
            }
            Family::Krawtchouk => {
                m.insert("p".into(), Rat::new(1, 3));
            }
            Family::PseudoNarumi => {
                m.insert("a".into(), Rat::from_int(2));
            }
            Family::Laguerre | Family::BernoulliPoly | Family::EulerPoly => {}
        }
        m
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.token() == s)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// One degree of a family table.
#[derive(Clone, Debug)]
pub struct FamilyRow {
    pub k: usize,
    pub classical: MPoly,
    pub umbral: MPoly,
    pub transform_row: Option<Vec<MPoly>>,
}

#[derive(Clone, Debug)]
pub struct FamilyTable {
    pub family: String,
    pub params: BTreeMap<String, Rat>,
    pub order: usize,
    pub rows: Vec<FamilyRow>,
}

impl Serialize for FamilyRow {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("FamilyRow", 4)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("classical", &self.classical.to_string())?;
        st.serialize_field("umbral", &self.umbral.to_string())?;
        let row: Option<Vec<String>> = self
            .transform_row
            .as_ref()
            .map(|r| r.iter().map(|p| p.to_string()).collect());
        st.serialize_field("transform_row", &row)?;
        st.end()
    }
}

impl Serialize for FamilyTable {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("FamilyTable", 4)?;
        st.serialize_field("family", &self.family)?;
        let params: BTreeMap<&String, String> = self
            .params
            .iter()
            .map(|(k, v)| (k, v.to_string()))
            .collect();
        st.serialize_field("params", &params)?;
        st.serialize_field("order", &self.order)?;
        st.serialize_field("rows", &self.rows)?;
        st.end()
    }
}

/// Build a family table at the given maximum degree and truncation order.
pub fn family_table(
    family: Family,
    params: &BTreeMap<String, Rat>,
    kmax: usize,
    order: usize,
) -> Result<FamilyTable> {
    build(family, params, kmax, order).map(|(t, _)| t)
}

/// Run every exact identity the family is subject to: the column relation,
/// the transform against the process polynomials, and the auxiliary umbra
/// similarities.
pub fn family_verify(
    family: Family,
    params: &BTreeMap<String, Rat>,
    kmax: usize,
    order: usize,
) -> Result<Vec<(String, VerifyOutcome)>> {
    build(family, params, kmax, order).map(|(_, c)| c)
}

fn get_param(
    family: Family,
    params: &BTreeMap<String, Rat>,
    name: &str,
) -> Result<Rat> {
    params
        .get(name)
        .cloned()
        .or_else(|| family.default_params().get(name).cloned())
        .ok_or_else(|| {
            Error::BadParameter(format!("{} needs parameter {name}", family.token()))
        })
}

fn positive_param(family: Family, name: &str, value: &Rat) -> Result<()> {
    if value.is_zero() || value.is_negative() {
        return Err(Error::BadParameter(format!(
            "{} needs {name} > 0, got {value}",
            family.token()
        )));
    }
    Ok(())
}

fn unit_interval_param(family: Family, name: &str, value: &Rat) -> Result<()> {
    if value.is_zero() || value.is_negative() || *value >= Rat::one() {
        return Err(Error::BadParameter(format!(
            "{} needs 0 < {name} < 1, got {value}",
            family.token()
        )));
    }
    Ok(())
}

/// `k! c_k` (exponential) or `c_k` (ordinary) for `k = 0..=kmax`.
fn classical_column(gf: &FSeries, kmax: usize, egf: bool) -> Vec<MPoly> {
    (0..=kmax)
        .map(|k| {
            if egf {
                gf.coeff(k).mul_rat(&factorial(k))
            } else {
                gf.coeff(k).clone()
            }
        })
        .collect()
}

/// Moments of `shift + w` where `shift` is deterministic.
fn shifted_moments(shift: &MPoly, w: &Umbra, kmax: usize) -> Vec<MPoly> {
    let det = Umbra::deterministic(shift, w.order());
    ops::add(&det, w).moments()[..=kmax].to_vec()
}

/// `sum_{j=1..k} Q_j B_{k,j}(m_1, ..., m_{k-j+1})` plus the Bell row itself.
fn bell_transform(q: &[TshPoly], m: &[MPoly], k: usize) -> (MPoly, Vec<MPoly>) {
    if k == 0 {
        return (MPoly::one(), Vec::new());
    }
    let bell = bell_triangle(k, &m[..k]);
    let mut acc = MPoly::zero();
    let mut row = Vec::with_capacity(k);
    for j in 1..=k {
        acc = &acc + &(&q[j].poly * &bell[k][j]);
        row.push(bell[k][j].clone());
    }
    (acc, row)
}

fn check_column(
    checks: &mut Vec<(String, VerifyOutcome)>,
    family: Family,
    k: usize,
    umbral: &MPoly,
    classical: &MPoly,
    egf: bool,
) {
    // EGF families: umbral = classical. OGF families: umbral = k! classical.
    let rhs = if egf {
        classical.clone()
    } else {
        classical.mul_rat(&factorial(k))
    };
    checks.push((
        format!("{}.columns.k{k}", family.token()),
        VerifyOutcome::from_equality(
            &format!("{} column relation at k={k}", family.token()),
            umbral,
            &rhs,
        ),
    ));
}

fn check_transform(
    checks: &mut Vec<(String, VerifyOutcome)>,
    family: Family,
    k: usize,
    target: &MPoly,
    transformed: &MPoly,
) {
    checks.push((
        format!("{}.transform.k{k}", family.token()),
        VerifyOutcome::from_equality(
            &format!("{} transform at k={k}", family.token()),
            target,
            transformed,
        ),
    ));
}

fn check_similarity(
    checks: &mut Vec<(String, VerifyOutcome)>,
    family: Family,
    label: &str,
    lhs: &Umbra,
    rhs: &Umbra,
) {
    let outcome = if lhs.similar(rhs) {
        VerifyOutcome::pass()
    } else {
        VerifyOutcome::fail(format!("{label}: {lhs} vs {rhs}"))
    };
    checks.push((format!("{}.similarity.{label}", family.token()), outcome));
}

fn build(
    family: Family,
    params: &BTreeMap<String, Rat>,
    kmax: usize,
    order: usize,
) -> Result<(FamilyTable, Vec<(String, VerifyOutcome)>)> {
    if kmax > order {
        return Err(Error::DegreeTooLarge {
            degree: kmax,
            order,
        });
    }
    let mut checks: Vec<(String, VerifyOutcome)> = Vec::new();
    let x = MPoly::var("x");
    let t = MPoly::var("t");
    let n = MPoly::var("n");

    let (rows, used_params): (Vec<FamilyRow>, BTreeMap<String, Rat>) = match family {
        Family::Hermite => {
            let s = get_param(family, params, "s")?;
            positive_param(family, "s", &s)?;
            let proc = named_process(
                ProcessKind::Brownian,
                &BTreeMap::from([("s".to_string(), MPoly::constant(s.clone()))]),
                order,
            )?;
            let q = q_table(&proc, kmax)?;
            // gf: exp(x z - s^2 t z^2 / 2)
            let mut arg = FSeries::zero(order);
            arg.set_coeff(1, x.clone());
            arg.set_coeff(2, (&t * &MPoly::constant(s.pow(2))).mul_rat(&Rat::new(-1, 2)));
            let gf = arg.exp().expect("constant term 0");
            let classical = classical_column(&gf, kmax, true);
            let mut rows = Vec::new();
            for k in 0..=kmax {
                let umbral = q[k].poly.clone();
                check_column(&mut checks, family, k, &umbral, &classical[k], true);
                rows.push(FamilyRow {
                    k,
                    classical: classical[k].clone(),
                    umbral,
                    transform_row: None,
                });
            }
            (rows, BTreeMap::from([("s".to_string(), s)]))
        }

        Family::PoissonCharlier => {
            let lambda = get_param(family, params, "lambda")?;
            positive_param(family, "lambda", &lambda)?;
            let proc = named_process(
                ProcessKind::Poisson,
                &BTreeMap::from([("lambda".to_string(), MPoly::constant(lambda.clone()))]),
                order,
            )?;
            let q = q_table(&proc, kmax)?;
            // umbral route: x . chi + (-lambda t) . u
            let chi = Umbra::special(SpecialUmbra::Singleton, order);
            let u = Umbra::special(SpecialUmbra::Unity, order);
            let minus_lt = (&t * &MPoly::constant(lambda.clone())).mul_rat(&Rat::from_int(-1));
            let source = ops::add(&ops::dot_poly(&x, &chi), &ops::dot_poly(&minus_lt, &u));
            // gf: e^{-lambda t z} (1+z)^x
            let expfac = FSeries::z(order)
                .mul_poly(&minus_lt)
                .exp()
                .expect("constant term 0");
            let gf = &expfac
                * &FSeries::one_plus_cz(&MPoly::one(), order)
                    .pow_symbolic(&x)
                    .expect("constant term 1");
            let classical = classical_column(&gf, kmax, true);
            let mut rows = Vec::new();
            for k in 0..=kmax {
                let umbral = source.moment(k).clone();
                check_column(&mut checks, family, k, &umbral, &classical[k], true);
                // Stirling transform: classical_k = sum_j s(k,j) Q_j
                let mut transformed = MPoly::zero();
                let mut row = Vec::with_capacity(k + 1);
                for j in 0..=k {
                    let s1 = stirling1(k, j);
                    transformed = &transformed + &q[j].poly.mul_rat(&s1);
                    row.push(MPoly::constant(s1));
                }
                check_transform(&mut checks, family, k, &classical[k], &transformed);
                rows.push(FamilyRow {
                    k,
                    classical: classical[k].clone(),
                    umbral,
                    transform_row: Some(row),
                });
            }
            (rows, BTreeMap::from([("lambda".to_string(), lambda)]))
        }

        Family::Laguerre => {
            let proc = named_process(ProcessKind::Gamma, &BTreeMap::new(), order)?;
            let q = q_table(&proc, kmax)?;
            // umbral route: x + t . (-chi)
            let chi = Umbra::special(SpecialUmbra::Singleton, order);
            let neg_chi = ops::scale(&MPoly::from_int(-1), &chi);
            let dotted = ops::dot_poly(&t, &neg_chi);
            let umbral_m = shifted_moments(&x, &dotted, kmax);
            // ogf: (1-z)^t e^{zx}
            let gf = &FSeries::one_plus_cz(&MPoly::from_int(-1), order)
                .pow_symbolic(&t)
                .expect("constant term 1")
                * &FSeries::z(order).mul_poly(&x).exp().expect("constant term 0");
            let classical = classical_column(&gf, kmax, false);
            let mut rows = Vec::new();
            for k in 0..=kmax {
                check_column(&mut checks, family, k, &umbral_m[k], &classical[k], false);
                // the umbral route must equal the process polynomial
                check_transform(&mut checks, family, k, &q[k].poly, &umbral_m[k]);
                rows.push(FamilyRow {
                    k,
                    classical: classical[k].clone(),
                    umbral: umbral_m[k].clone(),
                    transform_row: Some(vec![MPoly::constant(factorial(k))]),
                });
            }
            // -1 . ubar = -chi
            let ubar = Umbra::special(SpecialUmbra::BooleanUnity, order);
            check_similarity(
                &mut checks,
                family,
                "inverse_boolean_unity_is_neg_chi",
                &ops::inverse(&ubar),
                &neg_chi,
            );
            (rows, BTreeMap::new())
        }

        Family::Actuarial => {
            let lambda = get_param(family, params, "lambda")?;
            positive_param(family, "lambda", &lambda)?;
            let proc = named_process(
                ProcessKind::Gamma,
                &BTreeMap::from([("lambda".to_string(), MPoly::constant(lambda.clone()))]),
                order,
            )?;
            let q = q_table(&proc, kmax)?;
            // gamma~ = (chi . (-chi))^{<-1>}, by reversion of 1 + log(1-z)
            let chi = Umbra::special(SpecialUmbra::Singleton, order);
            let neg_chi = ops::scale(&MPoly::from_int(-1), &chi);
            let gamma_tilde = ops::comp_inverse(&ops::cumulant(&neg_chi))?;
            // umbral: (lambda t + x . beta . gamma~)^k
            let lt = &t * &MPoly::constant(lambda.clone());
            let dotted = ops::dot_poly(&x, &ops::partition(&gamma_tilde));
            let umbral_m = shifted_moments(&lt, &dotted, kmax);
            // gf: exp(lambda t z + x (1 - e^z))
            let arg = &FSeries::z(order).mul_poly(&lt)
                - &FSeries::expm1(order).mul_poly(&x);
            let gf = arg.exp().expect("constant term 0");
            let classical = classical_column(&gf, kmax, true);
            let m_tilde = gamma_tilde.higher_moments().to_vec();
            let mut rows = Vec::new();
            for k in 0..=kmax {
                check_column(&mut checks, family, k, &umbral_m[k], &classical[k], true);
                let (transformed, row) = bell_transform(&q, &m_tilde, k);
                check_transform(&mut checks, family, k, &classical[k], &transformed);
                rows.push(FamilyRow {
                    k,
                    classical: classical[k].clone(),
                    umbral: umbral_m[k].clone(),
                    transform_row: if k == 0 { None } else { Some(row) },
                });
            }
            (rows, BTreeMap::from([("lambda".to_string(), lambda)]))
        }

        Family::Meixner1 => {
            let p = get_param(family, params, "p")?;
            unit_interval_param(family, "p", &p)?;
            let proc = named_process(
                ProcessKind::Pascal,
                &BTreeMap::from([("p".to_string(), MPoly::constant(p.clone()))]),
                order,
            )?;
            let q = q_table(&proc, kmax)?;
            // rho = -1 . chi + chi/p
            let chi = Umbra::special(SpecialUmbra::Singleton, order);
            let rho = ops::add(
                &ops::inverse(&chi),
                &ops::scale(&MPoly::constant(p.recip()), &chi),
            );
            // umbral: (x . rho - t . chi)^k
            let source = ops::add(
                &ops::dot_poly(&x, &rho),
                &ops::dot_poly(&(-&t), &chi),
            );
            // gf: (1 + z/p)^x (1 + z)^{-x-t}
            let gf = &FSeries::one_plus_cz(&MPoly::constant(p.recip()), order)
                .pow_symbolic(&x)
                .expect("constant term 1")
                * &FSeries::one_plus_cz(&MPoly::one(), order)
                    .pow_symbolic(&(-&(&x + &t)))
                    .expect("constant term 1");
            let classical = classical_column(&gf, kmax, true);
            let kappa_rho = ops::cumulant(&rho);
            let m_rho = kappa_rho.higher_moments().to_vec();
            let mut rows = Vec::new();
            for k in 0..=kmax {
                let umbral = source.moment(k).clone();
                check_column(&mut checks, family, k, &umbral, &classical[k], true);
                let (transformed, row) = bell_transform(&q, &m_rho, k);
                check_transform(&mut checks, family, k, &classical[k], &transformed);
                rows.push(FamilyRow {
                    k,
                    classical: classical[k].clone(),
                    umbral,
                    transform_row: if k == 0 { None } else { Some(row) },
                });
            }
            (rows, BTreeMap::from([("p".to_string(), p)]))
        }

        Family::BernoulliPoly => {
            let proc = named_process(ProcessKind::UniformWalk, &BTreeMap::new(), order)?;
            let q = q_table(&proc, kmax)?;
            // umbral: (x + n . iota)^k
            let iota = Umbra::special(SpecialUmbra::Bernoulli, order);
            let dotted = ops::dot_poly(&n, &iota);
            let umbral_m = shifted_moments(&x, &dotted, kmax);
            // gf: (z/(e^z - 1))^n e^{zx}
            let gf = &SpecialUmbra::Bernoulli
                .gf(order)
                .pow_symbolic(&n)
                .expect("constant term 1")
                * &FSeries::z(order).mul_poly(&x).exp().expect("constant term 0");
            let classical = classical_column(&gf, kmax, true);
            let mut rows = Vec::new();
            for k in 0..=kmax {
                check_column(&mut checks, family, k, &umbral_m[k], &classical[k], true);
                // identity transform against the uniform walk polynomials
                check_transform(&mut checks, family, k, &q[k].poly, &umbral_m[k]);
                rows.push(FamilyRow {
                    k,
                    classical: classical[k].clone(),
                    umbral: umbral_m[k].clone(),
                    transform_row: None,
                });
            }
            (rows, BTreeMap::new())
        }

        Family::EulerPoly => {
            let proc = named_process(ProcessKind::BernoulliHalfWalk, &BTreeMap::new(), order)?;
            let q = q_table(&proc, kmax)?;
            // umbral: (x + n . [(1/2)(-1 . u + eta)])^k
            let u = Umbra::special(SpecialUmbra::Unity, order);
            let eta = Umbra::special(SpecialUmbra::Euler, order);
            let half = MPoly::constant(Rat::new(1, 2));
            let incr = ops::scale(&half, &ops::add(&ops::inverse(&u), &eta));
            let dotted = ops::dot_poly(&n, &incr);
            let umbral_m = shifted_moments(&x, &dotted, kmax);
            // gf: (2/(e^z + 1))^n e^{zx}
            let two_over = FSeries::constant(MPoly::from_int(2), order)
                .div(&(&FSeries::one(order) + &FSeries::exp_z(order)))
                .expect("constant term 2");
            let gf = &two_over.pow_symbolic(&n).expect("constant term 1")
                * &FSeries::z(order).mul_poly(&x).exp().expect("constant term 0");
            let classical = classical_column(&gf, kmax, true);
            let mut rows = Vec::new();
            for k in 0..=kmax {
                check_column(&mut checks, family, k, &umbral_m[k], &classical[k], true);
                check_transform(&mut checks, family, k, &q[k].poly, &umbral_m[k]);
                rows.push(FamilyRow {
                    k,
                    classical: classical[k].clone(),
                    umbral: umbral_m[k].clone(),
                    transform_row: None,
                });
            }
            (rows, BTreeMap::new())
        }

        Family::Krawtchouk => {
            let p = get_param(family, params, "p")?;
            unit_interval_param(family, "p", &p)?;
            let q_rat = Rat::one() - &p;
            let d = &p / &q_rat;
            let proc = named_process(
                ProcessKind::BernoulliWalk,
                &BTreeMap::from([("p".to_string(), MPoly::constant(p.clone()))]),
                order,
            )?;
            let q = q_table(&proc, kmax)?;
            // rho' = -1 . chi - chi/d
            let chi = Umbra::special(SpecialUmbra::Singleton, order);
            let rho = ops::add(
                &ops::inverse(&chi),
                &ops::scale(&MPoly::constant(-d.recip()), &chi),
            );
            // umbral: (n . chi + x . rho')^k
            let source = ops::add(&ops::dot_poly(&n, &chi), &ops::dot_poly(&x, &rho));
            // ogf: (1 - z/d)^x (1 + z)^{n - x}
            let gf = &FSeries::one_plus_cz(&MPoly::constant(-d.recip()), order)
                .pow_symbolic(&x)
                .expect("constant term 1")
                * &FSeries::one_plus_cz(&MPoly::one(), order)
                    .pow_symbolic(&(&n - &x))
                    .expect("constant term 1");
            let classical = classical_column(&gf, kmax, false);
            let kappa_rho = ops::cumulant(&rho);
            let m_rho = kappa_rho.higher_moments().to_vec();
            let mut rows = Vec::new();
            for k in 0..=kmax {
                let umbral = source.moment(k).clone();
                check_column(&mut checks, family, k, &umbral, &classical[k], false);
                let (transformed, row) = bell_transform(&q, &m_rho, k);
                check_transform(&mut checks, family, k, &umbral, &transformed);
                rows.push(FamilyRow {
                    k,
                    classical: classical[k].clone(),
                    umbral,
                    transform_row: if k == 0 { None } else { Some(row) },
                });
            }
            // (chi . (-1 . chi - chi/d))^{<-1>} = mu
            let mu = bernoulli_mu(&p, order);
            let inv = ops::comp_inverse(&kappa_rho)?;
            check_similarity(
                &mut checks,
                family,
                "inverse_of_kraw_cumulant_is_mu",
                &inv,
                &mu,
            );
            (rows, BTreeMap::from([("p".to_string(), p)]))
        }

        Family::PseudoNarumi => {
            let a = get_param(family, params, "a")?;
            positive_param(family, "a", &a)?;
            if a.to_integer().is_none() {
                return Err(Error::BadParameter(format!(
                    "pseudo_narumi needs a positive integer a, got {a}"
                )));
            }
            // time polynomial a*n over the uniform walk taken in blocks
            let an = n.mul_rat(&a);
            let iota = Umbra::special(SpecialUmbra::Bernoulli, order);
            let walk = ops::inverse(&iota);
            let q = q_table_with_time(&walk, &an, kmax)?;
            // u^{<-1>}_P, built one order up so the primitive lands on `order`
            let u_hi = Umbra::special(SpecialUmbra::Unity, order + 1);
            let u_inv_hi = ops::comp_inverse(&u_hi)?;
            let base = ops::primitive(&u_inv_hi)?;
            // umbral: ((an) . u^{<-1>}_P + x . chi)^k
            let chi = Umbra::special(SpecialUmbra::Singleton, order);
            let source = ops::add(&ops::dot_poly(&an, &base), &ops::dot_poly(&x, &chi));
            // ogf: (log(1+z)/z)^{an} (1+z)^x
            let log_over_z = FSeries::log1p(order + 1).shift_down(1);
            let gf = &log_over_z.pow_symbolic(&an).expect("constant term 1")
                * &FSeries::one_plus_cz(&MPoly::one(), order)
                    .pow_symbolic(&x)
                    .expect("constant term 1");
            let classical = classical_column(&gf, kmax, false);
            let u_inv = ops::comp_inverse(&Umbra::special(SpecialUmbra::Unity, order))?;
            let m_uinv = u_inv.higher_moments().to_vec();
            let mut rows = Vec::new();
            for k in 0..=kmax {
                let umbral = source.moment(k).clone();
                check_column(&mut checks, family, k, &umbral, &classical[k], false);
                let (transformed, row) = bell_transform(&q, &m_uinv, k);
                check_transform(&mut checks, family, k, &umbral, &transformed);
                rows.push(FamilyRow {
                    k,
                    classical: classical[k].clone(),
                    umbral,
                    transform_row: if k == 0 { None } else { Some(row) },
                });
            }
            // u^{<-1>}_P . beta = iota
            let beta = Umbra::special(SpecialUmbra::Bell, order);
            check_similarity(
                &mut checks,
                family,
                "primitive_inverse_unity_dot_bell_is_bernoulli",
                &ops::dot(&base, &beta),
                &iota,
            );
            (rows, BTreeMap::from([("a".to_string(), a)]))
        }
    };

    Ok((
        FamilyTable {
            family: family.token().to_string(),
            params: used_params,
            order,
            rows,
        },
        checks,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    const N: usize = 10;
    const KMAX: usize = 8;

    fn p(s: &str) -> MPoly {
        s.parse().unwrap()
    }

    fn run(family: Family) -> (FamilyTable, Vec<(String, VerifyOutcome)>) {
        build(family, &family.default_params(), KMAX, N).unwrap()
    }

    #[test]
    fn all_families_verify() {
        for family in Family::ALL {
            let (_, checks) = run(family);
            for (id, outcome) in checks {
                assert!(outcome.pass, "{id}: {:?}", outcome.witness);
            }
        }
    }

    #[test]
    fn hermite_k2_is_x2_minus_t() {
        let (table, _) = run(Family::Hermite);
        assert_eq!(table.rows[2].classical, p("x^2 - t"));
        assert_eq!(table.rows[2].umbral, p("x^2 - t"));
    }

    #[test]
    fn poisson_charlier_k1() {
        let mut params = BTreeMap::new();
        params.insert("lambda".to_string(), Rat::from_int(1));
        let (table, _) = build(Family::PoissonCharlier, &params, 2, N).unwrap();
        // s(1,1) Q_1 = x - lambda t
        assert_eq!(table.rows[1].classical, p("x - t"));
    }

    #[test]
    fn bernoulli_poly_k2_against_oracle() {
        let (table, _) = run(Family::BernoulliPoly);
        // B_2(x, n) from the gf: x^2 - n x + n^2/4 - n/12
        assert_eq!(
            table.rows[2].classical,
            p("x^2 - n*x + 1/4*n^2 - 1/12*n")
        );
        // at n = 1 this is the classical B_2(x) = x^2 - x + 1/6
        let nv = crate::polyring::Var::new("n");
        assert_eq!(
            table.rows[2].classical.substitute(&nv, &MPoly::one()),
            p("x^2 - x + 1/6")
        );
    }

    #[test]
    fn laguerre_row_has_scalar_transform() {
        let (table, _) = run(Family::Laguerre);
        assert_eq!(
            table.rows[3].transform_row,
            Some(vec![MPoly::constant(factorial(3))])
        );
    }

    #[test]
    fn krawtchouk_similarity_orientation() {
        // the compositional inverse of chi . (-1 . chi - chi/d) matches mu
        // itself; applying -1 . on top lands on the Bernoulli increment,
        // not on mu.
        let p = Rat::new(1, 3);
        let d = Rat::new(1, 2); // p/q for p = 1/3
        let chi = Umbra::special(SpecialUmbra::Singleton, N);
        let rho = ops::add(
            &ops::inverse(&chi),
            &ops::scale(&MPoly::constant(-d.recip()), &chi),
        );
        let inv = ops::comp_inverse(&ops::cumulant(&rho)).unwrap();
        let mu = bernoulli_mu(&p, N);
        assert!(inv.similar(&mu));
        assert!(!ops::inverse(&inv).similar(&mu));
        // -1 . mu is the Bernoulli(p) increment: mean p, all power moments p
        let incr = ops::inverse(&inv);
        assert_eq!(incr.moment(1), &MPoly::constant(p.clone()));
        assert_eq!(incr.moment(2), &MPoly::constant(p));
    }

    #[test]
    fn unknown_family_token() {
        assert!(matches!(
            "legendre".parse::<Family>(),
            Err(Error::UnknownFamily(_))
        ));
        assert_eq!(
            "krawtchouk".parse::<Family>().unwrap(),
            Family::Krawtchouk
        );
    }

    #[test]
    fn bad_parameters_rejected() {
        let mut params = BTreeMap::new();
        params.insert("p".to_string(), Rat::from_int(2));
        assert!(build(Family::Krawtchouk, &params, 4, N).is_err());
        let mut params = BTreeMap::new();
        params.insert("a".to_string(), Rat::new(1, 2));
        assert!(build(Family::PseudoNarumi, &params, 4, N).is_err());
    }

    #[test]
    fn table_serializes() {
        let (table, _) = build(Family::Hermite, &BTreeMap::new(), 3, 6).unwrap();
        let json = serde_json::to_value(&table).unwrap();
        assert_eq!(json["family"], "hermite");
        assert_eq!(json["rows"][2]["classical"], "x^2 - t");
    }
}
