//! Truncated formal power series in the reserved variable `z` with
//! polynomial coefficients.
//!
//! A series of order `N` stores the coefficients of `z^0 .. z^N`; every
//! operation is exact modulo `z^{N+1}`. Binary operations truncate to the
//! smaller order. No convergence questions arise anywhere: everything is
//! formal.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::mpoly::MPoly;
use super::rat::Rat;
use crate::combinat;
use crate::error::{Error, Result};

/// `c_0 + c_1 z + ... + c_N z^N` with `MPoly` coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FSeries {
    coeffs: Vec<MPoly>,
}

impl FSeries {
    /// The zero series of the given truncation order.
    pub fn zero(order: usize) -> FSeries {
        FSeries {
            coeffs: vec![MPoly::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> FSeries {
        FSeries::constant(MPoly::one(), order)
    }

    pub fn constant(c: MPoly, order: usize) -> FSeries {
        let mut s = FSeries::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `z`.
    pub fn z(order: usize) -> FSeries {
        let mut s = FSeries::zero(order);
        if order >= 1 {
            s.coeffs[1] = MPoly::one();
        }
        s
    }

    /// Build from explicit coefficients `c_0..c_N`.
    pub fn from_coeffs(coeffs: Vec<MPoly>) -> FSeries {
        assert!(!coeffs.is_empty(), "a series needs at least c_0");
        FSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &MPoly {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[MPoly] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, k: usize, c: MPoly) {
        self.coeffs[k] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> FSeries {
        assert!(order <= self.order(), "cannot extend a truncated series");
        FSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn mul_rat(&self, c: &Rat) -> FSeries {
        FSeries {
            coeffs: self.coeffs.iter().map(|p| p.mul_rat(c)).collect(),
        }
    }

    pub fn mul_poly(&self, c: &MPoly) -> FSeries {
        FSeries {
            coeffs: self.coeffs.iter().map(|p| p * c).collect(),
        }
    }

    /// Substitute `z -> c*z`: the k-th coefficient picks up `c^k`.
    pub fn scale_var(&self, c: &MPoly) -> FSeries {
        let mut pow = MPoly::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for p in &self.coeffs {
            out.push(p * &pow);
            pow = &pow * c;
        }
        FSeries { coeffs: out }
    }

    /// Divide by `z^k`; the first `k` coefficients must vanish. Loses `k`
    /// orders of truncation.
    pub fn shift_down(&self, k: usize) -> FSeries {
        assert!(k <= self.order(), "shift beyond truncation order");
        assert!(
            self.coeffs[..k].iter().all(|c| c.is_zero()),
            "shift_down needs valuation >= {k}"
        );
        FSeries {
            coeffs: self.coeffs[k..].to_vec(),
        }
    }

    /// Exact quotient. The divisor's leading nonzero coefficient must be a
    /// rational constant and its valuation must not exceed the dividend's;
    /// the result loses `val(divisor)` orders of truncation.
    pub fn div(&self, divisor: &FSeries) -> Result<FSeries> {
        let n = self.order().min(divisor.order());
        let vb = divisor
            .valuation()
            .filter(|&v| v <= n)
            .ok_or_else(|| Error::DivisorNotUnit("division by zero series".into()))?;
        let lead = divisor.coeffs[vb].as_constant().ok_or_else(|| {
            Error::DivisorNotUnit(format!(
                "leading coefficient {} is not a rational constant",
                divisor.coeffs[vb]
            ))
        })?;
        if self.coeffs[..vb.min(self.coeffs.len())]
            .iter()
            .any(|c| !c.is_zero())
        {
            return Err(Error::DivisorNotUnit(format!(
                "dividend valuation is below divisor valuation {vb}"
            )));
        }
        let out_order = n - vb;
        let a = |i: usize| &self.coeffs[i + vb];
        let b = |i: usize| &divisor.coeffs[i + vb];
        let inv = lead.recip();
        let mut out: Vec<MPoly> = Vec::with_capacity(out_order + 1);
        for k in 0..=out_order {
            let mut acc = a(k).clone();
            for j in 1..=k {
                acc = &acc - &(b(j) * &out[k - j]);
            }
            out.push(acc.mul_rat(&inv));
        }
        Ok(FSeries { coeffs: out })
    }

    /// `exp` of a series with zero constant term.
    pub fn exp(&self) -> Result<FSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::BadConstantTerm(format!(
                "exp needs constant term 0, got {}",
                self.coeffs[0]
            )));
        }
        let n = self.order();
        let mut out = FSeries::one(n);
        let mut term = FSeries::one(n);
        for j in 1..=n {
            term = &term * self;
            term = term.mul_rat(&Rat::new(1, j as i64));
            out = &out + &term;
        }
        Ok(out)
    }

    /// `log` of a series with constant term 1.
    pub fn log(&self) -> Result<FSeries> {
        if !self.coeffs[0].is_one() {
            return Err(Error::BadConstantTerm(format!(
                "log needs constant term 1, got {}",
                self.coeffs[0]
            )));
        }
        let n = self.order();
        let u = self - &FSeries::one(n);
        let mut out = FSeries::zero(n);
        let mut pow = FSeries::one(n);
        for j in 1..=n {
            pow = &pow * &u;
            let sign = if j % 2 == 1 { 1 } else { -1 };
            out = &out + &pow.mul_rat(&Rat::new(sign, j as i64));
        }
        Ok(out)
    }

    /// Composition `self(inner)`; the inner series needs zero constant term.
    pub fn compose(&self, inner: &FSeries) -> Result<FSeries> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::BadConstantTerm(format!(
                "composition needs inner constant term 0, got {}",
                inner.coeffs[0]
            )));
        }
        let n = self.order().min(inner.order());
        let mut out = FSeries::constant(self.coeffs[self.order()].clone(), n);
        for k in (0..self.order()).rev() {
            out = &(&out * inner) + &FSeries::constant(self.coeffs[k].clone(), n);
        }
        Ok(out)
    }

    /// Compositional inverse of a series with zero constant term and
    /// invertible rational linear coefficient: `self(revert(self)) = z`.
    pub fn revert(&self) -> Result<FSeries> {
        let c1 = self.invertible_linear_coeff()?;
        let n = self.order();
        let mut g = FSeries::z(n).mul_rat(&c1.recip());
        for m in 2..=n {
            let h = self.compose(&g).expect("inner constant term is 0");
            let correction = h.coeffs[m].mul_rat(&c1.recip());
            g.coeffs[m] = &g.coeffs[m] - &correction;
        }
        Ok(g)
    }

    /// Compositional inverse by the Lagrange inversion formula:
    /// `g_m = [z^{m-1}] (z/f)^m / m`. An independent route used to
    /// cross-check [`FSeries::revert`].
    pub fn revert_lagrange(&self) -> Result<FSeries> {
        self.invertible_linear_coeff()?;
        let n = self.order();
        let base = FSeries::z(n).div(self)?; // z/f, order n-1
        let mut g = FSeries::zero(n);
        let mut pow = FSeries::one(base.order());
        for m in 1..=n {
            pow = &pow * &base;
            if m - 1 <= pow.order() {
                g.coeffs[m] = pow.coeffs[m - 1].mul_rat(&Rat::new(1, m as i64));
            }
        }
        Ok(g)
    }

    fn invertible_linear_coeff(&self) -> Result<Rat> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NotInvertible(format!(
                "reversion needs constant term 0, got {}",
                self.coeffs[0]
            )));
        }
        if self.order() < 1 {
            return Err(Error::NotInvertible("order 0 series".into()));
        }
        match self.coeffs[1].as_constant() {
            Some(c) if !c.is_zero() => Ok(c),
            _ => Err(Error::NotInvertible(format!(
                "linear coefficient {} is not a nonzero rational constant",
                self.coeffs[1]
            ))),
        }
    }

    /// `self^e = exp(e * log(self))` for a symbolic polynomial exponent;
    /// needs constant term 1.
    pub fn pow_symbolic(&self, exponent: &MPoly) -> Result<FSeries> {
        if !self.coeffs[0].is_one() {
            return Err(Error::BadConstantTerm(format!(
                "symbolic power needs constant term 1, got {}",
                self.coeffs[0]
            )));
        }
        self.log()?.mul_poly(exponent).exp()
    }

    /// Moments `(m_0, ..., m_N)` of the exponential generating function
    /// `self`, i.e. `m_n = n! c_n`; needs constant term 1.
    pub fn moments(&self) -> Result<Vec<MPoly>> {
        if !self.coeffs[0].is_one() {
            return Err(Error::BadConstantTerm(format!(
                "a generating function has constant term 1, got {}",
                self.coeffs[0]
            )));
        }
        Ok(self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c.mul_rat(&combinat::factorial(n)))
            .collect())
    }

    /// The exponential generating function of a moment list:
    /// `c_n = m_n / n!`.
    pub fn from_moments(moments: &[MPoly]) -> FSeries {
        FSeries {
            coeffs: moments
                .iter()
                .enumerate()
                .map(|(n, m)| m.mul_rat(&combinat::factorial(n).recip()))
                .collect(),
        }
    }

    /// `exp(z)` truncated at `order`.
    pub fn exp_z(order: usize) -> FSeries {
        FSeries::z(order).exp().expect("z has constant term 0")
    }

    /// `exp(z) - 1` truncated at `order`.
    pub fn expm1(order: usize) -> FSeries {
        &FSeries::exp_z(order) - &FSeries::one(order)
    }

    /// `log(1 + z)` truncated at `order`.
    pub fn log1p(order: usize) -> FSeries {
        (&FSeries::one(order) + &FSeries::z(order))
            .log()
            .expect("constant term 1")
    }

    /// `1 + c z` truncated at `order`.
    pub fn one_plus_cz(c: &MPoly, order: usize) -> FSeries {
        let mut s = FSeries::one(order);
        if order >= 1 {
            s.coeffs[1] = c.clone();
        }
        s
    }
}

impl Add for &FSeries {
    type Output = FSeries;
    fn add(self, rhs: &FSeries) -> FSeries {
        let n = self.order().min(rhs.order());
        FSeries {
            coeffs: (0..=n)
                .map(|k| &self.coeffs[k] + &rhs.coeffs[k])
                .collect(),
        }
    }
}

impl Sub for &FSeries {
    type Output = FSeries;
    fn sub(self, rhs: &FSeries) -> FSeries {
        let n = self.order().min(rhs.order());
        FSeries {
            coeffs: (0..=n)
                .map(|k| &self.coeffs[k] - &rhs.coeffs[k])
                .collect(),
        }
    }
}

impl Neg for &FSeries {
    type Output = FSeries;
    fn neg(self) -> FSeries {
        FSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &FSeries {
    type Output = FSeries;
    fn mul(self, rhs: &FSeries) -> FSeries {
        let n = self.order().min(rhs.order());
        let mut out = vec![MPoly::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        FSeries { coeffs: out }
    }
}

impl fmt::Display for FSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                f.write_str(" + ")?;
            }
            if k == 0 {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "z^{k}")?;
            } else if c.is_constant() {
                write!(f, "{c}*z^{k}")?;
            } else {
                write!(f, "({c})*z^{k}")?;
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::mpoly::Var;

    const N: usize = 10;

    #[test]
    fn exp_series_coefficients() {
        let e = FSeries::exp_z(N);
        for k in 0..=N {
            assert_eq!(
                e.coeff(k).as_constant().unwrap(),
                combinat::factorial(k).recip()
            );
        }
    }

    #[test]
    fn exp_times_exp_of_opposite_sign_is_one() {
        let e = FSeries::exp_z(N);
        let em = (-&FSeries::z(N)).exp().unwrap();
        assert_eq!(&e * &em, FSeries::one(N));
    }

    #[test]
    fn bernoulli_numbers_via_division() {
        // z / (e^z - 1): coefficients of z^k are B_k / k!
        let quotient = FSeries::z(N + 1).div(&FSeries::expm1(N + 1)).unwrap();
        let expect = [
            Rat::one(),
            Rat::new(-1, 2),
            Rat::new(1, 12),
            Rat::zero(),
            Rat::new(-1, 720),
        ];
        for (k, e) in expect.iter().enumerate() {
            assert_eq!(&quotient.coeff(k).as_constant().unwrap(), e, "z^{k}");
        }
    }

    #[test]
    fn division_by_non_unit_fails() {
        // 1 / (e^z - 1): divisor valuation exceeds dividend valuation
        let r = FSeries::one(N).div(&FSeries::expm1(N));
        assert!(matches!(r, Err(Error::DivisorNotUnit(_))));
        // divisor with non-constant leading coefficient
        let x = MPoly::var("x");
        let r = FSeries::one(N).div(&FSeries::constant(x, N));
        assert!(matches!(r, Err(Error::DivisorNotUnit(_))));
    }

    #[test]
    fn log_of_bell_gf_is_expm1() {
        let bell_gf = FSeries::expm1(N).exp().unwrap();
        assert_eq!(bell_gf.log().unwrap(), FSeries::expm1(N));
    }

    #[test]
    fn exp_log_precondition_errors() {
        assert!(matches!(
            FSeries::one(N).exp(),
            Err(Error::BadConstantTerm(_))
        ));
        assert!(matches!(
            FSeries::z(N).log(),
            Err(Error::BadConstantTerm(_))
        ));
    }

    #[test]
    fn compose_with_identity() {
        let f = FSeries::exp_z(N);
        assert_eq!(f.compose(&FSeries::z(N)).unwrap(), f);
    }

    #[test]
    fn compose_inverse_pair_of_log_and_exp() {
        // u(z) = 1 - e^z is the compositional inverse of tau(z) = log(1 - z)
        let u = &FSeries::one(N) - &FSeries::exp_z(N);
        let tau = (&FSeries::one(N) - &FSeries::z(N)).log().unwrap();
        assert_eq!(tau.compose(&u).unwrap(), FSeries::z(N));
    }

    #[test]
    fn compose_linear_coefficient_is_chain_rule() {
        let f = FSeries::exp_z(N);
        let g = FSeries::z(N).mul_rat(&Rat::new(3, 7));
        let h = f.compose(&g).unwrap();
        assert_eq!(
            h.coeff(1),
            &(f.coeff(1) * g.coeff(1))
        );
    }

    #[test]
    fn binomial_series_has_falling_factorial_coefficients() {
        // (1+z)^x: coefficient of z^k is (x)_k / k!
        let x = MPoly::var("x");
        let s = FSeries::one_plus_cz(&MPoly::one(), N)
            .pow_symbolic(&x)
            .unwrap();
        for k in 0..=4usize {
            let expect =
                combinat::falling_factorial(&x, k).mul_rat(&combinat::factorial(k).recip());
            assert_eq!(s.coeff(k), &expect, "z^{k}");
        }
    }

    #[test]
    fn zero_exponent_power_is_one() {
        let f = FSeries::exp_z(N);
        assert_eq!(f.pow_symbolic(&MPoly::zero()).unwrap(), FSeries::one(N));
    }

    #[test]
    fn symbolic_power_of_one_minus_z() {
        // (1-z)^t, coefficient of z^2 is t(t-1)/2
        let t = MPoly::var("t");
        let s = FSeries::one_plus_cz(&MPoly::from_int(-1), N)
            .pow_symbolic(&t)
            .unwrap();
        let expect: MPoly = "1/2*t^2 - 1/2*t".parse().unwrap();
        assert_eq!(s.coeff(2), &expect);
    }

    #[test]
    fn moments_of_named_generating_functions() {
        // 1 + z: the sequence (1, 1, 0, 0, ...)
        let m = FSeries::one_plus_cz(&MPoly::one(), 5).moments().unwrap();
        assert_eq!(m[0], MPoly::one());
        assert_eq!(m[1], MPoly::one());
        assert!(m[2..].iter().all(|p| p.is_zero()));

        // 1/(1-z): n!
        let geo = FSeries::one(6)
            .div(&FSeries::one_plus_cz(&MPoly::from_int(-1), 6))
            .unwrap();
        let m = geo.moments().unwrap();
        for (n, p) in m.iter().enumerate() {
            assert_eq!(p.as_constant().unwrap(), combinat::factorial(n));
        }

        // exp(e^z - 1): Bell numbers
        let bell = FSeries::expm1(6).exp().unwrap();
        let m = bell.moments().unwrap();
        let bells = [1, 1, 2, 5, 15, 52, 203];
        for (n, b) in bells.iter().enumerate() {
            assert_eq!(m[n].as_constant().unwrap(), Rat::from_int(*b));
        }
    }

    #[test]
    fn revert_agrees_with_lagrange_and_round_trips() {
        // f = e^z - 1, inverse log(1+z)
        let f = FSeries::expm1(N);
        let g = f.revert().unwrap();
        assert_eq!(g, FSeries::log1p(N));
        assert_eq!(g, f.revert_lagrange().unwrap());
        assert_eq!(f.compose(&g).unwrap(), FSeries::z(N));
        assert_eq!(g.compose(&f).unwrap(), FSeries::z(N));
    }

    #[test]
    fn revert_requires_unit_linear_coefficient() {
        let mut s = FSeries::zero(N);
        s.set_coeff(2, MPoly::one());
        assert!(matches!(s.revert(), Err(Error::NotInvertible(_))));
        let sym = FSeries::z(N).mul_poly(&MPoly::var("t"));
        assert!(matches!(sym.revert(), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn scale_var_substitutes_cz() {
        let c = MPoly::var("s");
        let scaled = FSeries::exp_z(4).scale_var(&c);
        for k in 0..=4usize {
            let expect = MPoly::monomial(
                crate::polyring::mpoly::Monomial::var(Var::new("s"), k as u32),
                combinat::factorial(k).recip(),
            );
            assert_eq!(scaled.coeff(k), &expect);
        }
    }
}
