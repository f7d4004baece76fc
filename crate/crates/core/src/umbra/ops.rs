//! The auxiliary-umbra operations, computed in the moment domain.
//!
//! Binary operations require equal truncation orders and panic otherwise;
//! all public construction paths normalize the order at the boundary.

use crate::combinat::{
    bell_triangle, binomial, falling_factorial, stirling1,
};
use crate::error::{Error, Result};
use crate::polyring::{MPoly, Rat};

use super::{SpecialUmbra, Umbra};

fn check_orders(a: &Umbra, b: &Umbra) {
    assert_eq!(a.order(), b.order(), "umbra order mismatch");
}

/// Sum of two uncorrelated umbrae: moments by binomial convolution.
pub fn add(a: &Umbra, b: &Umbra) -> Umbra {
    check_orders(a, b);
    let n = a.order();
    let mut moments = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut acc = MPoly::zero();
        for k in 0..=i {
            acc = &acc + &(a.moment(k) * b.moment(i - k)).mul_rat(&binomial(i, k));
        }
        moments.push(acc);
    }
    Umbra::from_moments(moments)
}

/// Disjoint sum: `m_n = a_n + b_n` for `n >= 1`.
pub fn disjoint_sum(a: &Umbra, b: &Umbra) -> Umbra {
    check_orders(a, b);
    let mut moments = vec![MPoly::one()];
    for i in 1..=a.order() {
        moments.push(a.moment(i) + b.moment(i));
    }
    Umbra::from_moments(moments)
}

/// Disjoint difference: `m_n = a_n - b_n` for `n >= 1`.
pub fn disjoint_diff(a: &Umbra, b: &Umbra) -> Umbra {
    check_orders(a, b);
    let mut moments = vec![MPoly::one()];
    for i in 1..=a.order() {
        moments.push(a.moment(i) - b.moment(i));
    }
    Umbra::from_moments(moments)
}

/// Rescale by `c`: `m_n = c^n a_n`.
pub fn scale(c: &MPoly, a: &Umbra) -> Umbra {
    let mut moments = Vec::with_capacity(a.order() + 1);
    let mut pow = MPoly::one();
    for m in a.moments() {
        moments.push(m * &pow);
        pow = &pow * c;
    }
    Umbra::from_moments(moments)
}

pub fn scale_rat(c: &Rat, a: &Umbra) -> Umbra {
    scale(&MPoly::constant(c.clone()), a)
}

/// The dot-product `w . a` for a polynomial multiplier:
/// `m_i = sum_j (w)_j B_{i,j}(a_1, ..., a_{i-j+1})`.
pub fn dot_poly(w: &MPoly, a: &Umbra) -> Umbra {
    let n = a.order();
    let bell = bell_triangle(n, a.higher_moments());
    let ff: Vec<MPoly> = (0..=n).map(|j| falling_factorial(w, j)).collect();
    let mut moments = vec![MPoly::one()];
    for i in 1..=n {
        let mut acc = MPoly::zero();
        for j in 1..=i {
            if bell[i][j].is_zero() {
                continue;
            }
            acc = &acc + &(&ff[j] * &bell[i][j]);
        }
        moments.push(acc);
    }
    Umbra::from_moments(moments)
}

/// The inverse umbra `-1 . a`.
pub fn inverse(a: &Umbra) -> Umbra {
    dot_poly(&MPoly::from_int(-1), a)
}

/// The dot-product `gamma . alpha` of two umbrae:
/// `m_i = sum_j E[(gamma)_j] B_{i,j}(a_1, ..., a_{i-j+1})`.
pub fn dot(gamma: &Umbra, alpha: &Umbra) -> Umbra {
    check_orders(gamma, alpha);
    let n = alpha.order();
    let bell = bell_triangle(n, alpha.higher_moments());
    let fm: Vec<MPoly> = (0..=n).map(|j| falling_moment(gamma, j)).collect();
    let mut moments = vec![MPoly::one()];
    for i in 1..=n {
        let mut acc = MPoly::zero();
        for j in 1..=i {
            if bell[i][j].is_zero() || fm[j].is_zero() {
                continue;
            }
            acc = &acc + &(&fm[j] * &bell[i][j]);
        }
        moments.push(acc);
    }
    Umbra::from_moments(moments)
}

/// The cumulant umbra `chi . a`, computed through the log of the
/// generating function; the moment-domain route is [`super::mirror`]'s
/// `cumulant_via_dot`.
pub fn cumulant(a: &Umbra) -> Umbra {
    let lg = a.egf().log().expect("an egf has constant term 1");
    // f(cumulant, z) = 1 + log f(a, z)
    let gf = &lg + &crate::polyring::FSeries::one(a.order());
    Umbra::from_egf(&gf).expect("constant term restored to 1")
}

/// The partition umbra `beta . a`: `m_k` is the complete Bell polynomial
/// `Y_k(a_1, ..., a_k)`.
pub fn partition(a: &Umbra) -> Umbra {
    let n = a.order();
    let bell = bell_triangle(n, a.higher_moments());
    let mut moments = vec![MPoly::one()];
    for k in 1..=n {
        let mut acc = MPoly::zero();
        for j in 1..=k {
            acc = &acc + &bell[k][j];
        }
        moments.push(acc);
    }
    Umbra::from_moments(moments)
}

/// The composition umbra `gamma . beta . alpha`:
/// `m_i = sum_j E[gamma^j] B_{i,j}(a_1, ..., a_{i-j+1})`.
pub fn compose(gamma: &Umbra, alpha: &Umbra) -> Umbra {
    check_orders(gamma, alpha);
    let n = alpha.order();
    let bell = bell_triangle(n, alpha.higher_moments());
    let mut moments = vec![MPoly::one()];
    for i in 1..=n {
        let mut acc = MPoly::zero();
        for j in 1..=i {
            if bell[i][j].is_zero() {
                continue;
            }
            acc = &acc + &(gamma.moment(j) * &bell[i][j]);
        }
        moments.push(acc);
    }
    Umbra::from_moments(moments)
}

/// The compositional inverse: the umbra whose shifted generating function
/// is the series reversion of `f(a, z) - 1`. Needs a nonzero constant
/// first moment.
pub fn comp_inverse(a: &Umbra) -> Result<Umbra> {
    match a.moment(1).as_constant() {
        Some(c) if !c.is_zero() => {}
        _ => {
            return Err(Error::NotInvertible(format!(
                "first moment {} is not a nonzero rational constant",
                a.moment(1)
            )))
        }
    }
    let shifted = &a.egf() - &crate::polyring::FSeries::one(a.order());
    let reverted = shifted.revert()?;
    let gf = &reverted + &crate::polyring::FSeries::one(a.order());
    Umbra::from_egf(&gf)
}

/// The primitive umbra, with generating function `(f(a, z) - 1)/z`:
/// `m_n = a_{n+1}/(n+1)`. Loses one order of truncation; the first moment
/// must be 1 so that the result is again an umbra.
pub fn primitive(a: &Umbra) -> Result<Umbra> {
    if !a.moment(1).is_one() {
        return Err(Error::BadConstantTerm(format!(
            "primitive needs first moment 1, got {}",
            a.moment(1)
        )));
    }
    assert!(a.order() >= 1, "primitive needs order >= 1");
    let mut moments = Vec::with_capacity(a.order());
    for n in 0..a.order() {
        moments.push(a.moment(n + 1).mul_rat(&Rat::new(1, n as i64 + 1)));
    }
    Ok(Umbra::from_moments(moments))
}

/// The factorial moment `E[(a)_k] = sum_j s(k,j) a_j`.
pub fn falling_moment(a: &Umbra, k: usize) -> MPoly {
    assert!(k <= a.order(), "factorial moment index exceeds order");
    let mut acc = MPoly::zero();
    for j in 0..=k {
        let s = stirling1(k, j);
        if s.is_zero() {
            continue;
        }
        acc = &acc + &a.moment(j).mul_rat(&s);
    }
    acc
}

/// The product of two uncorrelated umbrae: joint moments factorize, so
/// `m_n = a_n b_n`.
pub fn product(a: &Umbra, b: &Umbra) -> Umbra {
    check_orders(a, b);
    let moments = a
        .moments()
        .iter()
        .zip(b.moments())
        .map(|(x, y)| x * y)
        .collect();
    Umbra::from_moments(moments)
}

/// Shorthand for the special umbrae at a given order.
pub fn special(kind: SpecialUmbra, order: usize) -> Umbra {
    Umbra::special(kind, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::umbra::SpecialUmbra::*;

    const N: usize = 10;

    fn sp(kind: crate::umbra::SpecialUmbra) -> Umbra {
        Umbra::special(kind, N)
    }

    fn p(s: &str) -> MPoly {
        s.parse().unwrap()
    }

    #[test]
    fn augmentation_is_neutral_for_add() {
        let chi = sp(Singleton);
        assert!(add(&chi, &sp(Augmentation)).similar(&chi));
    }

    #[test]
    fn sum_of_two_singletons() {
        let chi = sp(Singleton);
        let s = add(&chi, &chi);
        assert_eq!(s.moment(1), &MPoly::from_int(2));
        assert_eq!(s.moment(2), &MPoly::from_int(2));
    }

    #[test]
    fn inverse_cancels_to_augmentation() {
        let beta = sp(Bell);
        assert!(add(&inverse(&beta), &beta).similar(&sp(Augmentation)));
    }

    #[test]
    fn disjoint_sum_adds_moments() {
        let chi = sp(Singleton);
        let d = disjoint_sum(&chi, &chi);
        assert_eq!(d.moment(1), &MPoly::from_int(2));
        assert!(d.moment(2).is_zero());
        assert!(disjoint_sum(&chi, &sp(Augmentation)).similar(&chi));
        let z = disjoint_diff(&chi, &chi);
        assert!(z.similar(&sp(Augmentation)));
    }

    #[test]
    fn scale_examples() {
        let delta = sp(Delta);
        assert!(scale(&MPoly::one(), &delta).similar(&delta));
        let s = scale(&MPoly::var("s"), &delta);
        assert_eq!(s.moment(2), &p("s^2"));
        let chi = sp(Singleton);
        let c = scale(&MPoly::constant(Rat::new(1, 3)), &chi);
        assert_eq!(c.moment(1), &MPoly::constant(Rat::new(1, 3)));
    }

    #[test]
    fn dot_poly_examples() {
        let chi = sp(Singleton);
        assert!(dot_poly(&MPoly::one(), &chi).similar(&chi));
        let t = MPoly::var("t");
        let tchi = dot_poly(&t, &chi);
        assert_eq!(tchi.moment(2), &p("t^2 - t"));
        let u = sp(Unity);
        let n = MPoly::var("n");
        assert_eq!(dot_poly(&n, &u).moment(1), &n);
    }

    #[test]
    fn bell_and_singleton_dot_products() {
        let beta = sp(Bell);
        let chi = sp(Singleton);
        let u = sp(Unity);
        assert!(dot(&beta, &chi).similar(&u), "beta . chi");
        assert!(dot(&chi, &beta).similar(&u), "chi . beta");
        let iota = sp(Bernoulli);
        assert!(dot(&u, &iota).similar(&iota), "u . a is a");
    }

    #[test]
    fn cumulant_examples() {
        let beta = sp(Bell);
        assert!(cumulant(&beta).similar(&sp(Unity)));
        assert!(cumulant(&sp(Augmentation)).similar(&sp(Augmentation)));
        // second cumulant is the variance m_2 - m_1^2
        let a = Umbra::from_higher_moments(vec![p("x"), p("t"), MPoly::zero()]);
        assert_eq!(cumulant(&a).moment(2), &p("-x^2 + t"));
    }

    #[test]
    fn partition_examples() {
        let chi = sp(Singleton);
        assert!(partition(&chi).similar(&sp(Unity)));
        let a = Umbra::from_higher_moments(vec![MPoly::one(), MPoly::zero()]);
        // Y_2(1, 0) = 1
        assert_eq!(partition(&a).moment(2), &MPoly::one());
    }

    #[test]
    fn partition_of_cumulant_is_identity() {
        let ubar = sp(BooleanUnity);
        assert!(partition(&cumulant(&ubar)).similar(&ubar));
    }

    #[test]
    fn composition_identities() {
        let chi = sp(Singleton);
        let gamma = sp(Bernoulli);
        // chi is a two-sided identity for composition
        assert!(compose(&gamma, &chi).similar(&gamma));
        assert!(compose(&chi, &gamma).similar(&gamma));
        // u . beta . a is the partition umbra
        assert!(compose(&sp(Unity), &gamma).similar(&partition(&gamma)));
    }

    #[test]
    fn compositional_inverse_round_trip() {
        let chi = sp(Singleton);
        assert!(comp_inverse(&chi).unwrap().similar(&chi));
        let u = sp(Unity);
        let inv = comp_inverse(&u).unwrap();
        assert!(compose(&inv, &u).similar(&chi));
        assert!(compose(&u, &inv).similar(&chi));
    }

    #[test]
    fn comp_inverse_needs_nonzero_first_moment() {
        assert!(matches!(
            comp_inverse(&sp(Delta)),
            Err(Error::NotInvertible(_))
        ));
        let sym = Umbra::from_higher_moments(vec![p("x")]);
        assert!(matches!(comp_inverse(&sym), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn primitive_examples() {
        let u = sp(Unity);
        let up = primitive(&u).unwrap();
        assert_eq!(up.order(), N - 1);
        for n in 0..up.order() {
            assert_eq!(
                up.moment(n).as_constant().unwrap(),
                Rat::new(1, n as i64 + 1)
            );
        }
        let chi_p = primitive(&sp(Singleton)).unwrap();
        assert!(chi_p.higher_moments().iter().all(|m| m.is_zero()));
        assert!(primitive(&sp(Bernoulli)).is_err());
    }

    #[test]
    fn factorial_moments() {
        let u = sp(Unity);
        assert!(falling_moment(&u, 2).is_zero());
        assert_eq!(falling_moment(&u, 1), MPoly::one());
        let beta = sp(Bell);
        for k in 0..=8 {
            assert!(falling_moment(&beta, k).is_one(), "k={k}");
        }
    }

    #[test]
    fn chi_dot_chi_moments() {
        // E[(chi . chi)^n] = (-1)^{n-1} (n-1)!
        let chi = sp(Singleton);
        let cc = dot(&chi, &chi);
        for n in 1..=N {
            let mut expect = crate::combinat::factorial(n - 1);
            if n % 2 == 0 {
                expect = -expect;
            }
            assert_eq!(cc.moment(n).as_constant().unwrap(), expect, "n={n}");
        }
    }
}
