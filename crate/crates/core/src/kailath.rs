//! Kailath-Segall polynomials: the recursion expressing iterated
//! stochastic integrals through the variations of a process, its complete
//! Bell closed form, its inversion, and the symmetric-function and
//! jump-path oracles.
//!
//! Under the power-sum substitution (variations of a finite pure-jump path
//! are power sums of the jumps) the polynomials reduce to elementary
//! symmetric functions, which gives two fully independent checks.

use crate::combinat::{
    bell_complete, bell_triangle, binomial, elementary_direct, elementary_from_powersums,
    factorial, power_sums,
};
use crate::polyring::{MPoly, Rat, Var};
use crate::umbra::{ops, SpecialUmbra, Umbra};

/// The variations `sigma_1..sigma_n`: symbolic indeterminates by default,
/// or any polynomial (e.g. rational) values.
#[derive(Clone, Debug)]
pub struct Variations(Vec<MPoly>);

impl Variations {
    /// Symbols `s1..sn`.
    pub fn symbolic(n: usize) -> Variations {
        Variations((1..=n).map(|i| MPoly::var(&format!("s{i}"))).collect())
    }

    pub fn from_values(values: Vec<MPoly>) -> Variations {
        Variations(values)
    }

    /// Power sums of the given jump sizes: `sigma_i = sum_s x_s^i`.
    pub fn from_jumps(jumps: &[Rat], n: usize) -> Variations {
        let xs: Vec<MPoly> = jumps.iter().map(|j| MPoly::constant(j.clone())).collect();
        Variations(power_sums(&xs, n))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// 1-indexed access.
    pub fn sigma(&self, i: usize) -> &MPoly {
        &self.0[i - 1]
    }

    pub fn values(&self) -> &[MPoly] {
        &self.0
    }
}

/// The degree-`n` Kailath-Segall polynomial in the variations.
#[derive(Clone, Debug, PartialEq)]
pub struct KsPoly {
    pub n: usize,
    pub poly: MPoly,
}

/// The recursion
/// `P_n = (1/n)(P_{n-1} sigma_1 - P_{n-2} sigma_2 + ... + (-1)^{n+1} P_0 sigma_n)`.
pub fn ks_poly(n: usize, sigma: &Variations) -> KsPoly {
    assert!(n <= sigma.len(), "need {n} variations, got {}", sigma.len());
    let mut ps: Vec<MPoly> = vec![MPoly::one()];
    for m in 1..=n {
        let mut acc = MPoly::zero();
        for i in 1..=m {
            let term = &ps[m - i] * sigma.sigma(i);
            let sign = if i % 2 == 1 { 1 } else { -1 };
            acc = &acc + &term.mul_rat(&Rat::from_int(sign));
        }
        ps.push(acc.mul_rat(&Rat::new(1, m as i64)));
    }
    KsPoly {
        n,
        poly: ps.pop().unwrap(),
    }
}

/// The complete Bell closed form:
/// `P_n = Y_n(0! sigma_1, -1! sigma_2, ..., (-1)^{n-1} (n-1)! sigma_n) / n!`.
pub fn ks_via_bell(n: usize, sigma: &Variations) -> KsPoly {
    assert!(n <= sigma.len(), "need {n} variations, got {}", sigma.len());
    let args: Vec<MPoly> = (1..=n)
        .map(|i| {
            let mut c = factorial(i - 1);
            if i % 2 == 0 {
                c = -c;
            }
            sigma.sigma(i).mul_rat(&c)
        })
        .collect();
    KsPoly {
        n,
        poly: bell_complete(n, &args).mul_rat(&factorial(n).recip()),
    }
}

/// Inversion: recover the `n`-th variation from `c_i = i! P_i`:
/// `sigma_n = sum_j ((-1)^{n-j} / (n-1)_{n-j}) B_{n,j}(c_1, ..., c_{n-j+1})`.
pub fn ks_invert(n: usize, c: &[MPoly]) -> MPoly {
    assert!(n >= 1 && n <= c.len(), "need {n} inputs, got {}", c.len());
    let bell = bell_triangle(n, c);
    let mut acc = MPoly::zero();
    for j in 1..=n {
        // (n-1)_{n-j} = (n-1)(n-2)...(j)
        let mut ff = Rat::one();
        for i in 0..(n - j) {
            ff = ff * Rat::from_int(n as i64 - 1 - i as i64);
        }
        let mut coeff = ff.recip();
        if (n - j) % 2 == 1 {
            coeff = -coeff;
        }
        acc = &acc + &bell[n][j].mul_rat(&coeff);
    }
    acc
}

/// Substitute power sums for the variations and compare against the
/// elementary symmetric function `e_n(x_1..x_m)`, by Newton's identities
/// and by direct expansion. Returns a failure witness on mismatch.
pub fn newton_oracle_check(n: usize, m: usize) -> Result<(), String> {
    assert!(n <= m, "need n <= m");
    let xs: Vec<MPoly> = (1..=m).map(|i| MPoly::var(&format!("x{i}"))).collect();
    let ps = power_sums(&xs, n.max(1));
    let ks = ks_poly(n, &Variations::from_values(ps.clone())).poly;
    let newton = elementary_from_powersums(n, &ps);
    let direct = elementary_direct(n, &xs);
    if ks != newton {
        return Err(format!(
            "KS({n}) != Newton e_{n} on {m} indeterminates: {ks} vs {newton}"
        ));
    }
    if ks != direct {
        return Err(format!(
            "KS({n}) != direct e_{n} on {m} indeterminates: {ks} vs {direct}"
        ));
    }
    Ok(())
}

/// Evaluation on a finite pure-jump path.
#[derive(Clone, Debug, PartialEq)]
pub struct JumpEval {
    /// `X^{(n)} = sum_s (jump_s)^n`.
    pub variation: Rat,
    /// The iterated integral, `e_n` of the jumps.
    pub iterated_integral: Rat,
    /// Whether the Kailath-Segall polynomial evaluated at the variations
    /// reproduces the iterated integral.
    pub ks_consistent: bool,
}

/// Variations and iterated integrals of a drift-free, diffusion-free path
/// with the given jumps.
pub fn jump_path_eval(jumps: &[Rat], n: usize) -> JumpEval {
    assert!(n >= 1, "need n >= 1");
    let xs: Vec<MPoly> = jumps.iter().map(|j| MPoly::constant(j.clone())).collect();
    let variation = jumps
        .iter()
        .map(|j| j.pow(n as i32))
        .fold(Rat::zero(), |a, b| a + b);
    let iterated_integral = elementary_direct(n, &xs)
        .as_constant()
        .expect("constant inputs give a constant");
    let sigma = Variations::from_jumps(jumps, n);
    let ks = ks_poly(n, &sigma)
        .poly
        .as_constant()
        .expect("constant inputs give a constant");
    JumpEval {
        variation,
        ks_consistent: ks == iterated_integral,
        iterated_integral,
    }
}

/// The umbra `psi = (chi . chi) sigma` with moments
/// `(-1)^{n-1} (n-1)! sigma_n`: the scaled-variation umbra driving the
/// recursion.
pub fn psi_umbra(sigma: &Variations) -> Umbra {
    let n = sigma.len();
    let chichi = ops::dot(
        &Umbra::special(SpecialUmbra::Singleton, n),
        &Umbra::special(SpecialUmbra::Singleton, n),
    );
    let sigma_umbra = Umbra::from_higher_moments(sigma.values().to_vec());
    ops::product(&chichi, &sigma_umbra)
}

/// Check the moment recursion `E[Y^n] = E[psi (Y + psi)^{n-1}]` where
/// `Y = beta . psi` (so `E[Y^n] = n! P_n`) and the right side expands by
/// uncorrelation as `sum_j C(n-1, j) E[Y^{n-1-j}] E[psi^{j+1}]`.
pub fn upsilon_recursion_check(n: usize, sigma: &Variations) -> Result<(), String> {
    assert!(n >= 1 && n <= sigma.len());
    let psi = psi_umbra(sigma);
    let upsilon = ops::partition(&psi);
    // E[Y^n] = n! P_n
    let expected_moment = ks_poly(n, sigma).poly.mul_rat(&factorial(n));
    if upsilon.moment(n) != &expected_moment {
        return Err(format!(
            "E[Y^{n}] != {n}! P_{n}: {} vs {}",
            upsilon.moment(n),
            expected_moment
        ));
    }
    let mut rhs = MPoly::zero();
    for j in 0..=(n - 1) {
        rhs = &rhs
            + &(upsilon.moment(n - 1 - j) * psi.moment(j + 1)).mul_rat(&binomial(n - 1, j));
    }
    if upsilon.moment(n) != &rhs {
        return Err(format!(
            "recursion fails at n={n}: {} vs {}",
            upsilon.moment(n),
            rhs
        ));
    }
    // inversion: chi . Y = psi
    let inverted = ops::dot(
        &Umbra::special(SpecialUmbra::Singleton, sigma.len()),
        &upsilon,
    );
    if !inverted.similar(&psi) {
        return Err(format!("chi . Y != psi at n={n}"));
    }
    Ok(())
}

/// Fresh variation symbols for `sigma_1..sigma_n` avoiding collisions.
pub fn default_sigma_var(i: usize) -> Var {
    Var::new(&format!("s{i}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MPoly {
        s.parse().unwrap()
    }

    fn rat(s: &str) -> Rat {
        s.parse().unwrap()
    }

    #[test]
    fn low_degree_polynomials() {
        let sigma = Variations::symbolic(3);
        assert_eq!(ks_poly(1, &sigma).poly, p("s1"));
        assert_eq!(ks_poly(2, &sigma).poly, p("1/2*s1^2 - 1/2*s2"));
        assert_eq!(
            ks_poly(3, &sigma).poly,
            p("1/6*s1^3 - 1/2*s1*s2 + 1/3*s3")
        );
    }

    #[test]
    fn bell_route_matches_recursion() {
        let sigma = Variations::symbolic(10);
        for n in 1..=10 {
            assert_eq!(ks_poly(n, &sigma), ks_via_bell(n, &sigma), "n={n}");
        }
    }

    #[test]
    fn inversion_round_trip() {
        let sigma = Variations::symbolic(10);
        for n in 1..=10 {
            let c: Vec<MPoly> = (1..=n)
                .map(|i| ks_poly(i, &sigma).poly.mul_rat(&factorial(i)))
                .collect();
            assert_eq!(ks_invert(n, &c), *sigma.sigma(n), "n={n}");
        }
    }

    #[test]
    fn inversion_low_cases() {
        let sigma = Variations::symbolic(2);
        assert_eq!(ks_invert(1, &[p("s1")]), p("s1"));
        let c = vec![p("s1"), p("s1^2 - s2")];
        assert_eq!(ks_invert(2, &c), *sigma.sigma(2));
    }

    #[test]
    fn newton_oracle_small() {
        assert!(newton_oracle_check(1, 1).is_ok());
        assert!(newton_oracle_check(2, 3).is_ok());
        assert!(newton_oracle_check(4, 4).is_ok());
    }

    #[test]
    fn e2_of_three_indeterminates() {
        // (p1^2 - p2)/2 = x1 x2 + x1 x3 + x2 x3
        let xs: Vec<MPoly> = (1..=3).map(|i| MPoly::var(&format!("x{i}"))).collect();
        let ps = power_sums(&xs, 2);
        let ks = ks_poly(2, &Variations::from_values(ps)).poly;
        assert_eq!(ks, p("x1*x2 + x1*x3 + x2*x3"));
    }

    #[test]
    fn jump_paths() {
        let e = jump_path_eval(&[Rat::one()], 1);
        assert_eq!(e.variation, Rat::one());
        assert_eq!(e.iterated_integral, Rat::one());
        assert!(e.ks_consistent);

        let e = jump_path_eval(&[rat("1"), rat("2")], 2);
        assert_eq!(e.variation, rat("5"));
        assert_eq!(e.iterated_integral, rat("2"));
        assert!(e.ks_consistent);

        let e = jump_path_eval(&[rat("1/2"), rat("-1/3"), rat("2")], 3);
        assert_eq!(e.iterated_integral, rat("-1/3"));
        assert!(e.ks_consistent);
    }

    #[test]
    fn upsilon_recursion() {
        let sigma = Variations::symbolic(8);
        for n in 1..=8 {
            upsilon_recursion_check(n, &sigma).unwrap();
        }
    }
}
