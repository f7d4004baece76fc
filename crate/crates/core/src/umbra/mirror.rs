//! Generating-function mirrors of the operations in [`super::ops`].
//!
//! Each operation admits two computation routes: the moment-domain formula
//! (falling factorials and Bell polynomials) and the generating-function
//! identity. They agree exactly up to the truncation order on every input;
//! the verification suites assert this on randomized umbrae.
//!
//! For the dot-product of two umbrae the mirror is
//! `f(gamma . alpha, z) = f(gamma, log f(alpha, z))`, which reproduces the
//! factorial-moment formula identically (in particular `u . alpha` is
//! similar to `alpha` on both routes).

use crate::error::Result;
use crate::polyring::{FSeries, MPoly};
use crate::umbra::{ops, SpecialUmbra, Umbra};

fn one(order: usize) -> FSeries {
    FSeries::one(order)
}

/// `f(a + b, z) = f(a, z) f(b, z)`.
pub fn add(a: &Umbra, b: &Umbra) -> Umbra {
    Umbra::from_egf(&(&a.egf() * &b.egf())).expect("product of egfs is an egf")
}

/// `f(a ++ b, z) = f(a, z) + f(b, z) - 1`.
pub fn disjoint_sum(a: &Umbra, b: &Umbra) -> Umbra {
    let gf = &(&a.egf() + &b.egf()) - &one(a.order());
    Umbra::from_egf(&gf).expect("constant term 1")
}

/// `f(a -- b, z) = f(a, z) - f(b, z) + 1`.
pub fn disjoint_diff(a: &Umbra, b: &Umbra) -> Umbra {
    let gf = &(&a.egf() - &b.egf()) + &one(a.order());
    Umbra::from_egf(&gf).expect("constant term 1")
}

/// `f(c a, z) = f(a, c z)`.
pub fn scale(c: &MPoly, a: &Umbra) -> Umbra {
    Umbra::from_egf(&a.egf().scale_var(c)).expect("scaling preserves the constant term")
}

/// `f(w . a, z) = f(a, z)^w`.
pub fn dot_poly(w: &MPoly, a: &Umbra) -> Umbra {
    let gf = a.egf().pow_symbolic(w).expect("an egf has constant term 1");
    Umbra::from_egf(&gf).expect("power of an egf is an egf")
}

/// `f(gamma . alpha, z) = f(gamma, log f(alpha, z))`.
pub fn dot(gamma: &Umbra, alpha: &Umbra) -> Umbra {
    let lg = alpha.egf().log().expect("an egf has constant term 1");
    let gf = gamma.egf().compose(&lg).expect("log has constant term 0");
    Umbra::from_egf(&gf).expect("composition of egfs is an egf")
}

/// The cumulant umbra through its moment-domain definition `chi . a`;
/// mirrors the series-log route in [`ops::cumulant`].
pub fn cumulant_via_dot(a: &Umbra) -> Umbra {
    ops::dot(&Umbra::special(SpecialUmbra::Singleton, a.order()), a)
}

/// `f(beta . a, z) = exp(f(a, z) - 1)`.
pub fn partition(a: &Umbra) -> Umbra {
    let gf = (&a.egf() - &one(a.order()))
        .exp()
        .expect("constant term 0");
    Umbra::from_egf(&gf).expect("exp of a zero-constant series has constant term 1")
}

/// `f(gamma . beta . alpha, z) = f(gamma, f(alpha, z) - 1)`.
pub fn compose(gamma: &Umbra, alpha: &Umbra) -> Umbra {
    let inner = &alpha.egf() - &one(alpha.order());
    let gf = gamma
        .egf()
        .compose(&inner)
        .expect("inner constant term 0");
    Umbra::from_egf(&gf).expect("composition of egfs is an egf")
}

/// The compositional inverse through Lagrange inversion instead of the
/// iterative reversion used by [`ops::comp_inverse`].
pub fn comp_inverse_lagrange(a: &Umbra) -> Result<Umbra> {
    let shifted = &a.egf() - &one(a.order());
    let reverted = shifted.revert_lagrange()?;
    Umbra::from_egf(&(&reverted + &one(a.order())))
}

/// `f(a_P, z) = (f(a, z) - 1)/z`.
pub fn primitive(a: &Umbra) -> Result<Umbra> {
    let gf = (&a.egf() - &one(a.order())).shift_down(1);
    Umbra::from_egf(&gf)
}

/// `E[(a)_k] = E[(a . chi)^k]`: the factorial moment extracted from the
/// generating function `f(a, log(1 + z))`.
pub fn falling_moment(a: &Umbra, k: usize) -> MPoly {
    let n = a.order();
    let gf = a
        .egf()
        .compose(&FSeries::log1p(n))
        .expect("log(1+z) has constant term 0");
    let a_dot_chi = Umbra::from_egf(&gf).expect("composition of egfs is an egf");
    a_dot_chi.moment(k).clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::Rat;
    use crate::umbra::SpecialUmbra::*;

    const N: usize = 8;

    fn sp(kind: SpecialUmbra) -> Umbra {
        Umbra::special(kind, N)
    }

    /// A fixed asymmetric umbra with rational moments.
    fn sample() -> Umbra {
        Umbra::from_higher_moments(
            (1..=N)
                .map(|i| MPoly::constant(Rat::new(2 * i as i64 - 3, i as i64 + 1)))
                .collect(),
        )
    }

    #[test]
    fn mirrors_agree_on_fixed_inputs() {
        let a = sample();
        let b = sp(BooleanUnity);
        assert!(ops::add(&a, &b).similar(&add(&a, &b)));
        assert!(ops::disjoint_sum(&a, &b).similar(&disjoint_sum(&a, &b)));
        assert!(ops::disjoint_diff(&a, &b).similar(&disjoint_diff(&a, &b)));
        let c: MPoly = "2/3".parse().unwrap();
        assert!(ops::scale(&c, &a).similar(&scale(&c, &a)));
        let t = MPoly::var("t");
        assert!(ops::dot_poly(&t, &a).similar(&dot_poly(&t, &a)));
        assert!(ops::dot(&b, &a).similar(&dot(&b, &a)));
        assert!(ops::cumulant(&a).similar(&cumulant_via_dot(&a)));
        assert!(ops::partition(&a).similar(&partition(&a)));
        assert!(ops::compose(&b, &a).similar(&compose(&b, &a)));
        for k in 0..=N {
            assert_eq!(ops::falling_moment(&a, k), falling_moment(&a, k));
        }
    }

    #[test]
    fn dot_with_unity_is_identity_on_both_routes() {
        let a = sample();
        let u = sp(Unity);
        assert!(ops::dot(&u, &a).similar(&a));
        assert!(dot(&u, &a).similar(&a));
    }

    #[test]
    fn lagrange_matches_iterative_reversion() {
        let a = sample();
        assert!(ops::comp_inverse(&a)
            .unwrap()
            .similar(&comp_inverse_lagrange(&a).unwrap()));
    }

    #[test]
    fn primitive_mirror() {
        let u = sp(Unity);
        assert!(ops::primitive(&u).unwrap().similar(&primitive(&u).unwrap()));
    }
}
