//! Umbrae: truncated moment sequences and the auxiliary-umbra operations.
//!
//! An umbra of order `N` is the sequence `m_0 = 1, m_1, ..., m_N` of its
//! moments, each a polynomial. Similarity is componentwise moment equality.
//! Binary operations always treat their operands as uncorrelated, so joint
//! moments factorize and only the sequences matter.
//!
//! Every operation in [`ops`] has a generating-function mirror in
//! [`mirror`]; the two computation routes agree exactly up to the
//! truncation order, which the test suites exercise as the module's master
//! property.

pub mod mirror;
pub mod ops;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::polyring::{FSeries, MPoly, Rat};

/// A truncated moment sequence with `m_0 = 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Umbra {
    moments: Vec<MPoly>,
}

impl Umbra {
    /// Build from moments `m_0..m_N`; `m_0` must be 1.
    pub fn from_moments(moments: Vec<MPoly>) -> Umbra {
        assert!(!moments.is_empty(), "an umbra needs m_0");
        assert!(moments[0].is_one(), "m_0 must be 1, got {}", moments[0]);
        Umbra { moments }
    }

    /// Build from `m_1..m_N` with the implicit `m_0 = 1`.
    pub fn from_higher_moments(mut higher: Vec<MPoly>) -> Umbra {
        let mut moments = vec![MPoly::one()];
        moments.append(&mut higher);
        Umbra { moments }
    }

    /// Moments of an exponential generating function (`m_n = n! c_n`);
    /// fails unless the constant term is 1.
    pub fn from_egf(f: &FSeries) -> Result<Umbra> {
        Ok(Umbra {
            moments: f.moments()?,
        })
    }

    /// The exponential generating function `1 + sum m_n z^n / n!`.
    pub fn egf(&self) -> FSeries {
        FSeries::from_moments(&self.moments)
    }

    pub fn order(&self) -> usize {
        self.moments.len() - 1
    }

    pub fn moment(&self, k: usize) -> &MPoly {
        &self.moments[k]
    }

    pub fn moments(&self) -> &[MPoly] {
        &self.moments
    }

    /// Moments `m_1..m_N`, the argument list for Bell polynomials.
    pub fn higher_moments(&self) -> &[MPoly] {
        &self.moments[1..]
    }

    pub fn truncate(&self, order: usize) -> Umbra {
        assert!(order <= self.order(), "cannot extend a truncated umbra");
        Umbra {
            moments: self.moments[..=order].to_vec(),
        }
    }

    /// Similarity: componentwise moment equality up to the smaller order.
    pub fn similar(&self, other: &Umbra) -> bool {
        let n = self.order().min(other.order());
        self.moments[..=n] == other.moments[..=n]
    }

    /// A deterministic value `c` seen as an umbra: `m_n = c^n`.
    pub fn deterministic(c: &MPoly, order: usize) -> Umbra {
        let mut moments = Vec::with_capacity(order + 1);
        let mut pow = MPoly::one();
        for _ in 0..=order {
            moments.push(pow.clone());
            pow = &pow * c;
        }
        Umbra { moments }
    }

    /// Build one of the special umbrae at the given order. Moments are
    /// derived from the registry generating functions, never hardcoded.
    pub fn special(kind: SpecialUmbra, order: usize) -> Umbra {
        Umbra::from_egf(&kind.gf(order)).expect("registry gf has constant term 1")
    }
}

impl fmt::Display for Umbra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, m) in self.moments.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "]")
    }
}

/// The registry of named umbrae.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SpecialUmbra {
    /// `f = 1`; moments `(1, 0, 0, ...)`.
    Augmentation,
    /// `f = exp(z)`; all moments 1.
    Unity,
    /// `f = 1 + z`; moments `(1, 1, 0, ...)`.
    Singleton,
    /// `f = 1/(1 - z)`; moments `n!`.
    BooleanUnity,
    /// `f = exp(e^z - 1)`; moments the Bell numbers.
    Bell,
    /// `f = z/(e^z - 1)`; moments the Bernoulli numbers.
    Bernoulli,
    /// `f = 2 e^z / (1 + e^{2z})`; moments the Euler numbers.
    Euler,
    /// `f = 1 + z^2/2`; moments `(1, 0, 1, 0, 0, ...)`.
    Delta,
}

impl SpecialUmbra {
    pub const ALL: [SpecialUmbra; 8] = [
        SpecialUmbra::Augmentation,
        SpecialUmbra::Unity,
        SpecialUmbra::Singleton,
        SpecialUmbra::BooleanUnity,
        SpecialUmbra::Bell,
        SpecialUmbra::Bernoulli,
        SpecialUmbra::Euler,
        SpecialUmbra::Delta,
    ];

    /// The registry generating function, truncated at `order`.
    pub fn gf(self, order: usize) -> FSeries {
        match self {
            SpecialUmbra::Augmentation => FSeries::one(order),
            SpecialUmbra::Unity => FSeries::exp_z(order),
            SpecialUmbra::Singleton => FSeries::one_plus_cz(&MPoly::one(), order),
            SpecialUmbra::BooleanUnity => FSeries::one(order)
                .div(&FSeries::one_plus_cz(&MPoly::from_int(-1), order))
                .expect("1 - z is a unit"),
            SpecialUmbra::Bell => FSeries::expm1(order).exp().expect("constant term 0"),
            SpecialUmbra::Bernoulli => {
                // z / (e^z - 1), computed one order higher to survive the
                // cancellation of the common factor z
                FSeries::z(order + 1)
                    .div(&FSeries::expm1(order + 1))
                    .expect("(e^z - 1)/z is a unit")
            }
            SpecialUmbra::Euler => {
                let num = FSeries::exp_z(order).mul_rat(&Rat::from_int(2));
                let den = &FSeries::one(order)
                    + &FSeries::z(order)
                        .mul_rat(&Rat::from_int(2))
                        .exp()
                        .expect("constant term 0");
                num.div(&den).expect("1 + e^{2z} has constant term 2")
            }
            SpecialUmbra::Delta => {
                let mut s = FSeries::one(order);
                if order >= 2 {
                    s.set_coeff(2, MPoly::constant(Rat::new(1, 2)));
                }
                s
            }
        }
    }

    /// The CLI token for this umbra.
    pub fn token(self) -> &'static str {
        match self {
            SpecialUmbra::Augmentation => "eps",
            SpecialUmbra::Unity => "u",
            SpecialUmbra::Singleton => "chi",
            SpecialUmbra::BooleanUnity => "ubar",
            SpecialUmbra::Bell => "bell",
            SpecialUmbra::Bernoulli => "bernoulli",
            SpecialUmbra::Euler => "euler",
            SpecialUmbra::Delta => "delta",
        }
    }
}

impl FromStr for SpecialUmbra {
    type Err = Error;

    fn from_str(s: &str) -> Result<SpecialUmbra> {
        SpecialUmbra::ALL
            .into_iter()
            .find(|k| k.token() == s)
            .ok_or_else(|| {
                Error::Parse(format!(
                    "unknown umbra {s:?}; expected one of eps, u, chi, ubar, bell, bernoulli, euler, delta"
                ))
            })
    }
}

/// Serialize as `{"order": N, "moments": ["...", ...]}` with canonical
/// polynomial strings.
impl serde::Serialize for Umbra {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = ser.serialize_struct("Umbra", 2)?;
        st.serialize_field("order", &self.order())?;
        let strings: Vec<String> = self.moments.iter().map(|m| m.to_string()).collect();
        st.serialize_field("moments", &strings)?;
        st.end()
    }
}

impl<'de> serde::Deserialize<'de> for Umbra {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        struct Raw {
            order: usize,
            moments: Vec<String>,
        }
        let raw = Raw::deserialize(de)?;
        if raw.moments.len() != raw.order + 1 {
            return Err(serde::de::Error::custom(format!(
                "expected {} moments for order {}, got {}",
                raw.order + 1,
                raw.order,
                raw.moments.len()
            )));
        }
        let mut moments = Vec::with_capacity(raw.moments.len());
        for s in &raw.moments {
            moments.push(s.parse::<MPoly>().map_err(serde::de::Error::custom)?);
        }
        if !moments[0].is_one() {
            return Err(serde::de::Error::custom("m_0 must be 1"));
        }
        Ok(Umbra { moments })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat;

    const N: usize = 10;

    #[test]
    fn special_moment_tables() {
        let eps = Umbra::special(SpecialUmbra::Augmentation, N);
        assert!(eps.higher_moments().iter().all(|m| m.is_zero()));

        let u = Umbra::special(SpecialUmbra::Unity, N);
        assert!(u.moments().iter().all(|m| m.is_one()));

        let chi = Umbra::special(SpecialUmbra::Singleton, N);
        assert!(chi.moment(1).is_one());
        assert!(chi.moments()[2..].iter().all(|m| m.is_zero()));

        let ubar = Umbra::special(SpecialUmbra::BooleanUnity, N);
        for (n, m) in ubar.moments().iter().enumerate() {
            assert_eq!(m.as_constant().unwrap(), combinat::factorial(n));
        }

        let bell = Umbra::special(SpecialUmbra::Bell, 6);
        let bells = [1, 1, 2, 5, 15, 52, 203];
        for (n, b) in bells.iter().enumerate() {
            assert_eq!(bell.moment(n).as_constant().unwrap(), Rat::from_int(*b));
        }

        let delta = Umbra::special(SpecialUmbra::Delta, N);
        assert!(delta.moment(1).is_zero());
        assert!(delta.moment(2).is_one());
        assert!(delta.moments()[3..].iter().all(|m| m.is_zero()));
    }

    #[test]
    fn bernoulli_and_euler_numbers() {
        let iota = Umbra::special(SpecialUmbra::Bernoulli, N);
        let expect = [
            "1", "-1/2", "1/6", "0", "-1/30", "0", "1/42", "0", "-1/30", "0", "5/66",
        ];
        for (n, e) in expect.iter().enumerate() {
            assert_eq!(iota.moment(n).as_constant().unwrap(), e.parse().unwrap());
        }

        let eta = Umbra::special(SpecialUmbra::Euler, N);
        let expect = [1i64, 0, -1, 0, 5, 0, -61, 0, 1385, 0, -50521];
        for (n, e) in expect.iter().enumerate() {
            assert_eq!(eta.moment(n).as_constant().unwrap(), Rat::from_int(*e));
        }
    }

    #[test]
    fn gf_reconstruction_round_trip() {
        for kind in SpecialUmbra::ALL {
            let gf = kind.gf(N);
            let umbra = Umbra::special(kind, N);
            assert_eq!(umbra.egf(), gf, "{:?}", kind);
        }
    }

    #[test]
    fn egf_examples() {
        let chi = Umbra::special(SpecialUmbra::Singleton, N);
        assert_eq!(chi.egf(), FSeries::one_plus_cz(&MPoly::one(), N));
        let u = Umbra::special(SpecialUmbra::Unity, N);
        assert_eq!(u.egf(), FSeries::exp_z(N));
    }

    #[test]
    fn token_round_trip() {
        for kind in SpecialUmbra::ALL {
            assert_eq!(kind.token().parse::<SpecialUmbra>().unwrap(), kind);
        }
        assert!("nope".parse::<SpecialUmbra>().is_err());
    }

    #[test]
    fn json_round_trip() {
        let u = Umbra::from_higher_moments(vec![
            "x - 1/2".parse().unwrap(),
            "t^2".parse().unwrap(),
        ]);
        let json = serde_json::to_string(&u).unwrap();
        let back: Umbra = serde_json::from_str(&json).unwrap();
        assert_eq!(u, back);
    }

    #[test]
    #[should_panic(expected = "m_0 must be 1")]
    fn bad_zeroth_moment_panics() {
        Umbra::from_moments(vec![MPoly::zero()]);
    }
}
