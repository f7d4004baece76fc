//! Time-space harmonic polynomials `Q_k(x, t) = E[(x - t . alpha)^k]`.
//!
//! Two exact routes compute every `Q_k`: the binomial expansion over the
//! moments of `-t . alpha`, and the complete Bell polynomial in the
//! cumulants. The harmonicity verifier expands the conditional evaluation
//! symbolically: with fresh symbols `s <= t` and `y` for the observed
//! state, `E[(y + (t-s).alpha' + (-t).alpha'')^k]` must be free of `t` and
//! equal to `Q_k(y, s)`.

pub mod families;

use crate::combinat::{bell_complete, binomial};
use crate::error::{Error, Result};
use crate::levy::{self, ProcessUmbra};
use crate::polyring::{fresh_var, MPoly, Monomial, Rat, Var};
use crate::umbra::{ops, Umbra};

/// A time-space harmonic polynomial of degree `k` in `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct TshPoly {
    pub k: usize,
    pub poly: MPoly,
}

/// Outcome of an exact identity check, with a reproducible witness on
/// failure.
#[derive(Clone, Debug)]
pub struct VerifyOutcome {
    pub pass: bool,
    pub witness: Option<String>,
}

impl VerifyOutcome {
    pub fn pass() -> Self {
        VerifyOutcome {
            pass: true,
            witness: None,
        }
    }

    pub fn fail(witness: String) -> Self {
        VerifyOutcome {
            pass: false,
            witness: Some(witness),
        }
    }

    pub fn from_equality(label: &str, lhs: &MPoly, rhs: &MPoly) -> Self {
        if lhs == rhs {
            VerifyOutcome::pass()
        } else {
            VerifyOutcome::fail(format!("{label}: lhs = {lhs}, rhs = {rhs}"))
        }
    }
}

/// `Q_0..Q_kmax` for the process, by binomial expansion:
/// `Q_k = sum_j C(k,j) x^{k-j} E[(-t . alpha)^j]`.
pub fn q_table(p: &ProcessUmbra, kmax: usize) -> Result<Vec<TshPoly>> {
    let time = MPoly::var(&p.time_var);
    q_table_with_time(&p.alpha, &time, kmax)
}

/// Same, but with an arbitrary polynomial in place of the time symbol
/// (e.g. `a*n` for walks taken in blocks of `a` steps).
pub fn q_table_with_time(alpha: &Umbra, time: &MPoly, kmax: usize) -> Result<Vec<TshPoly>> {
    if kmax > alpha.order() {
        return Err(Error::DegreeTooLarge {
            degree: kmax,
            order: alpha.order(),
        });
    }
    let shifted = ops::dot_poly(&(-time), alpha);
    let x = Var::new("x");
    let mut table = Vec::with_capacity(kmax + 1);
    for k in 0..=kmax {
        let mut q = MPoly::zero();
        for j in 0..=k {
            let xpow = MPoly::monomial(Monomial::var(x.clone(), (k - j) as u32), Rat::one());
            q = &q + &(&xpow * shifted.moment(j)).mul_rat(&binomial(k, j));
        }
        table.push(TshPoly { k, poly: q });
    }
    Ok(table)
}

pub fn q_poly(p: &ProcessUmbra, k: usize) -> Result<TshPoly> {
    Ok(q_table(p, k)?.pop().unwrap())
}

/// The dual route: `Q_k = Y_k(x - t kappa_1, -t kappa_2, ..., -t kappa_k)`
/// where `kappa_j` are the cumulants of `alpha` and `Y_k` is the complete
/// Bell polynomial.
pub fn q_table_bell(p: &ProcessUmbra, kmax: usize) -> Result<Vec<TshPoly>> {
    if kmax > p.alpha.order() {
        return Err(Error::DegreeTooLarge {
            degree: kmax,
            order: p.alpha.order(),
        });
    }
    let time = MPoly::var(&p.time_var);
    let kappa = ops::cumulant(&p.alpha);
    let x = MPoly::var("x");
    let mut args: Vec<MPoly> = Vec::with_capacity(kmax);
    for j in 1..=kmax {
        let scaled = &(-&time) * kappa.moment(j);
        args.push(if j == 1 { &x + &scaled } else { scaled });
    }
    Ok((0..=kmax)
        .map(|k| TshPoly {
            k,
            poly: bell_complete(k, &args[..k]),
        })
        .collect())
}

fn avoid_list<'a>(p: &'a ProcessUmbra, time: &'a MPoly) -> Vec<&'a MPoly> {
    let mut avoid: Vec<&MPoly> = p.alpha.moments().iter().collect();
    avoid.push(time);
    avoid
}

/// Verify time-space harmonicity of `Q_k` for every `k <= kmax`. With
/// `zeta = (t-s) . alpha' + (-t) . alpha''`, the expansion of
/// `E[(y + zeta)^k]` must contain no `t` and equal `Q_k(y, s)`.
pub fn tsh_verify_upto(p: &ProcessUmbra, kmax: usize) -> Result<Vec<VerifyOutcome>> {
    let tv = Var::new(&p.time_var);
    let time = MPoly::var(&p.time_var);
    let avoid = avoid_list(p, &time);
    let sv = fresh_var(if p.time_var == "s" { "r" } else { "s" }, &avoid);
    let yv = fresh_var("y", &avoid);
    let s = MPoly::monomial(Monomial::var(sv.clone(), 1), Rat::one());
    let y = MPoly::monomial(Monomial::var(yv.clone(), 1), Rat::one());

    let q = q_table(p, kmax)?;
    let zeta = ops::add(
        &ops::dot_poly(&(&time - &s), &p.alpha),
        &ops::dot_poly(&(-&time), &p.alpha),
    );
    let mut outcomes = Vec::with_capacity(kmax + 1);
    for k in 0..=kmax {
        let mut expanded = MPoly::zero();
        for j in 0..=k {
            let ypow = MPoly::monomial(Monomial::var(yv.clone(), (k - j) as u32), Rat::one());
            expanded = &expanded + &(&ypow * zeta.moment(j)).mul_rat(&binomial(k, j));
        }
        if expanded.contains_var(&tv) {
            outcomes.push(VerifyOutcome::fail(format!(
                "k={k}: conditional expectation still depends on {tv}: {expanded}"
            )));
            continue;
        }
        let expected = q[k].poly.substitute(&Var::new("x"), &y).substitute(&tv, &s);
        outcomes.push(VerifyOutcome::from_equality(
            &format!("k={k}: E[Q_k(X_t,t) | X_s] vs Q_k(X_s,s)"),
            &expanded,
            &expected,
        ));
    }
    Ok(outcomes)
}

pub fn tsh_verify(p: &ProcessUmbra, k: usize) -> Result<VerifyOutcome> {
    Ok(tsh_verify_upto(p, k)?.pop().unwrap())
}

/// The Appell property `dQ_k/dx = k Q_{k-1}`.
pub fn appell_check(p: &ProcessUmbra, k: usize) -> Result<VerifyOutcome> {
    let q = q_table(p, k)?;
    if k == 0 {
        return Ok(VerifyOutcome::from_equality(
            "k=0: dQ_0/dx",
            &q[0].poly.derivative(&Var::new("x")),
            &MPoly::zero(),
        ));
    }
    let lhs = q[k].poly.derivative(&Var::new("x"));
    let rhs = q[k - 1].poly.mul_rat(&Rat::from_int(k as i64));
    Ok(VerifyOutcome::from_equality(
        &format!("k={k}: dQ_k/dx vs k Q_(k-1)"),
        &lhs,
        &rhs,
    ))
}

/// The Sheffer identity
/// `Q_k(x, t+v) = sum_j C(k,j) P_j(v) Q_{k-j}(x, t)` with `P_j(v) = Q_j(0, v)`.
pub fn sheffer_check(p: &ProcessUmbra, k: usize) -> Result<VerifyOutcome> {
    let tv = Var::new(&p.time_var);
    let time = MPoly::var(&p.time_var);
    let avoid = avoid_list(p, &time);
    let vv = fresh_var("v", &avoid);
    let v = MPoly::monomial(Monomial::var(vv, 1), Rat::one());
    let x = Var::new("x");

    let q = q_table(p, k)?;
    let lhs = q[k].poly.substitute(&tv, &(&time + &v));
    let mut rhs = MPoly::zero();
    for j in 0..=k {
        let pj = q[j]
            .poly
            .substitute(&x, &MPoly::zero())
            .substitute(&tv, &v);
        rhs = &rhs + &(&pj * &q[k - j].poly).mul_rat(&binomial(k, j));
    }
    Ok(VerifyOutcome::from_equality(
        &format!("k={k}: Q_k(x,t+v) vs Sheffer convolution"),
        &lhs,
        &rhs,
    ))
}

/// The product rule for a sum of independent processes:
/// `Q_k(w + y, t) = sum_j C(k,j) Q'_j(w, t) Q''_{k-j}(y, t)`.
pub fn sum_process_check(p1: &ProcessUmbra, p2: &ProcessUmbra, k: usize) -> Result<VerifyOutcome> {
    let sum = levy::sum_process(p1, p2);
    let time = MPoly::var(&sum.time_var);
    let mut avoid = avoid_list(&sum, &time);
    let a1 = avoid_list(p1, &time);
    let a2 = avoid_list(p2, &time);
    avoid.extend(a1);
    avoid.extend(a2);
    let wv = fresh_var("w", &avoid);
    let yv = fresh_var("y", &avoid);
    let w = MPoly::monomial(Monomial::var(wv, 1), Rat::one());
    let y = MPoly::monomial(Monomial::var(yv, 1), Rat::one());
    let x = Var::new("x");

    let q = q_table(&sum, k)?;
    let q1 = q_table(p1, k)?;
    let q2 = q_table(p2, k)?;
    let lhs = q[k].poly.substitute(&x, &(&w + &y));
    let mut rhs = MPoly::zero();
    for j in 0..=k {
        let left = q1[j].poly.substitute(&x, &w);
        let right = q2[k - j].poly.substitute(&x, &y);
        rhs = &rhs + &(&left * &right).mul_rat(&binomial(k, j));
    }
    Ok(VerifyOutcome::from_equality(
        &format!("k={k}: Q_k(w+y,t) vs product formula"),
        &lhs,
        &rhs,
    ))
}
