//! Sparse multivariate polynomials over exact rationals.
//!
//! Terms are kept in a `BTreeMap` keyed by monomial under graded
//! lexicographic order, so iteration (and therefore printing) is canonical
//! and deterministic. The standard indeterminates `x, t, s, v, w, y, n` take
//! precedence in that order; any other registered name sorts after them
//! alphabetically. The series variable `z` is reserved and rejected as a
//! polynomial indeterminate.
//!
//! Invariants:
//! - no zero coefficients are stored
//! - monomials store no zero exponents and keep variables sorted

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use super::rat::Rat;
use crate::error::{Error, Result};

/// The reserved formal-series variable name.
pub const SERIES_VAR: &str = "z";

const BUILTIN_PRECEDENCE: [&str; 7] = ["x", "t", "s", "v", "w", "y", "n"];

fn var_rank(name: &str) -> (u8, &str) {
    match BUILTIN_PRECEDENCE.iter().position(|&b| b == name) {
        Some(i) => (i as u8, ""),
        None => (BUILTIN_PRECEDENCE.len() as u8, name),
    }
}

/// A named indeterminate. Names must match `[A-Za-z][A-Za-z0-9_]*` and may
/// not be the reserved series variable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Var(Arc<str>);

impl Var {
    /// Panics on an invalid or reserved name; use [`Var::try_new`] for
    /// fallible construction from user input.
    pub fn new(name: &str) -> Var {
        Var::try_new(name).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn try_new(name: &str) -> Result<Var> {
        let mut chars = name.chars();
        let head_ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic());
        let tail_ok = chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !head_ok || !tail_ok {
            return Err(Error::Parse(format!("invalid indeterminate name {name:?}")));
        }
        if name == SERIES_VAR {
            return Err(Error::Parse(format!(
                "{SERIES_VAR:?} is reserved for the series variable"
            )));
        }
        Ok(Var(Arc::from(name)))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Var {
    fn cmp(&self, other: &Self) -> Ordering {
        var_rank(&self.0)
            .cmp(&var_rank(&other.0))
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A power product of indeterminates, e.g. `x^2*t`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    /// The empty product.
    pub fn unit() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(v: Var, exp: u32) -> Monomial {
        if exp == 0 {
            Monomial::unit()
        } else {
            Monomial(vec![(v, exp)])
        }
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, v: &Var) -> u32 {
        self.0
            .iter()
            .find(|(w, _)| w == v)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn vars(&self) -> impl Iterator<Item = &Var> {
        self.0.iter().map(|(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            match (self.0.get(i), other.0.get(j)) {
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    Ordering::Less => {
                        out.push((va.clone(), *ea));
                        i += 1;
                    }
                    Ordering::Greater => {
                        out.push((vb.clone(), *eb));
                        j += 1;
                    }
                    Ordering::Equal => {
                        out.push((va.clone(), ea + eb));
                        i += 1;
                        j += 1;
                    }
                },
                (Some((va, ea)), None) => {
                    out.push((va.clone(), *ea));
                    i += 1;
                }
                (None, Some((vb, eb))) => {
                    out.push((vb.clone(), *eb));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Monomial(out)
    }

    fn without(&self, v: &Var) -> Monomial {
        Monomial(self.0.iter().filter(|(w, _)| w != v).cloned().collect())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, ties broken variable by
    /// variable in precedence order (a higher exponent on an earlier
    /// variable wins).
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, (v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A sparse multivariate polynomial with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl MPoly {
    pub fn zero() -> MPoly {
        MPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> MPoly {
        MPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> MPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::unit(), c);
        }
        MPoly { terms }
    }

    pub fn from_int(n: i64) -> MPoly {
        MPoly::constant(Rat::from_int(n))
    }

    /// The polynomial consisting of the single indeterminate `name`.
    pub fn var(name: &str) -> MPoly {
        MPoly::monomial(Monomial::var(Var::new(name), 1), Rat::one())
    }

    pub fn monomial(m: Monomial, c: Rat) -> MPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_unit())
    }

    /// `Some(c)` iff the polynomial is the constant `c` (zero included).
    pub fn as_constant(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            return Some(Rat::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_unit() {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: &Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn contains_var(&self, v: &Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn vars_used(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.vars().cloned())
            .collect()
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn mul_rat(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, r)| (m.clone(), r * c))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> MPoly {
        let mut out = MPoly::one();
        for _ in 0..exp {
            out = &out * self;
        }
        out
    }

    /// Replace every occurrence of `v` by `rep`.
    pub fn substitute(&self, v: &Var, rep: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        let mut rep_pows: Vec<MPoly> = vec![MPoly::one()];
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                out.add_term(m.clone(), c.clone());
                continue;
            }
            while rep_pows.len() <= e as usize {
                let next = rep_pows.last().unwrap() * rep;
                rep_pows.push(next);
            }
            let rest = MPoly::monomial(m.without(v), c.clone());
            out = &out + &(&rest * &rep_pows[e as usize]);
        }
        out
    }

    /// Partial derivative with respect to `v`.
    pub fn derivative(&self, v: &Var) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let lowered = m.without(v).mul(&Monomial::var(v.clone(), e - 1));
            out.add_term(lowered, c * &Rat::from_int(e as i64));
        }
        out
    }

    /// Evaluate at a full floating-point assignment; every variable used
    /// must be present.
    pub fn eval_f64(&self, vals: &BTreeMap<String, f64>) -> Result<f64> {
        let mut total = 0.0;
        for (m, c) in &self.terms {
            let mut term = c.to_f64();
            for (v, e) in &m.0 {
                let x = vals.get(v.name()).ok_or_else(|| {
                    Error::BadParameter(format!("no value for indeterminate {v}"))
                })?;
                term *= x.powi(*e as i32);
            }
            total += term;
        }
        Ok(total)
    }

    /// Serialize as a map from monomial strings to rational strings.
    pub fn to_string_map(&self) -> BTreeMap<String, String> {
        self.terms
            .iter()
            .map(|(m, c)| (m.to_string(), c.to_string()))
            .collect()
    }

    pub fn from_string_map(map: &BTreeMap<String, String>) -> Result<MPoly> {
        let mut out = MPoly::zero();
        for (mstr, cstr) in map {
            let mono: MPoly = mstr.parse()?;
            let coeff: Rat = cstr.parse()?;
            out = &out + &mono.mul_rat(&coeff);
        }
        Ok(out)
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // leading term first
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if m.is_unit() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for MPoly {
    type Err = Error;

    /// Parse the canonical textual form: a signed sum of terms, each a `*`
    /// product of rationals and `var[^exp]` factors. No parentheses.
    fn from_str(s: &str) -> Result<MPoly> {
        parse_poly(s)
    }
}

#[derive(Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Caret,
    Star,
    Slash,
    Plus,
    Minus,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' => {
                chars.next();
            }
            '0'..='9' => {
                let mut num = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        num.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Num(num));
            }
            'a'..='z' | 'A'..='Z' => {
                let mut id = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        id.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Ident(id));
            }
            '^' => {
                chars.next();
                toks.push(Tok::Caret);
            }
            '*' => {
                chars.next();
                toks.push(Tok::Star);
            }
            '/' => {
                chars.next();
                toks.push(Tok::Slash);
            }
            '+' => {
                chars.next();
                toks.push(Tok::Plus);
            }
            '-' => {
                chars.next();
                toks.push(Tok::Minus);
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(toks)
}

fn parse_poly(s: &str) -> Result<MPoly> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut out = MPoly::zero();
    let mut pos = 0;
    let mut first = true;
    while pos < toks.len() {
        let mut sign = Rat::one();
        loop {
            match toks.get(pos) {
                Some(Tok::Minus) => {
                    sign = -sign;
                    pos += 1;
                }
                Some(Tok::Plus) => {
                    if first && pos == 0 {
                        return Err(Error::Parse("leading '+' not allowed".into()));
                    }
                    pos += 1;
                }
                _ => break,
            }
        }
        let (term, next) = parse_term(&toks, pos)?;
        out = &out + &term.mul_rat(&sign);
        pos = next;
        first = false;
        if pos < toks.len() && !matches!(toks[pos], Tok::Plus | Tok::Minus) {
            return Err(Error::Parse("expected '+' or '-' between terms".into()));
        }
    }
    Ok(out)
}

fn parse_term(toks: &[Tok], mut pos: usize) -> Result<(MPoly, usize)> {
    let mut coeff = Rat::one();
    let mut mono = Monomial::unit();
    loop {
        match toks.get(pos) {
            Some(Tok::Num(n)) => {
                pos += 1;
                let mut r: Rat = n.parse()?;
                if let Some(Tok::Slash) = toks.get(pos) {
                    match toks.get(pos + 1) {
                        Some(Tok::Num(d)) => {
                            let den: Rat = d.parse()?;
                            if den.is_zero() {
                                return Err(Error::Parse("zero denominator".into()));
                            }
                            r = r / den;
                            pos += 2;
                        }
                        _ => return Err(Error::Parse("expected denominator after '/'".into())),
                    }
                }
                coeff = coeff * r;
            }
            Some(Tok::Ident(name)) => {
                pos += 1;
                let v = Var::try_new(name)?;
                let mut exp = 1u32;
                if let Some(Tok::Caret) = toks.get(pos) {
                    match toks.get(pos + 1) {
                        Some(Tok::Num(e)) => {
                            exp = e
                                .parse()
                                .map_err(|_| Error::Parse(format!("bad exponent {e:?}")))?;
                            pos += 2;
                        }
                        _ => return Err(Error::Parse("expected exponent after '^'".into())),
                    }
                }
                mono = mono.mul(&Monomial::var(v, exp));
            }
            _ => return Err(Error::Parse("expected a factor".into())),
        }
        if let Some(Tok::Star) = toks.get(pos) {
            pos += 1;
            continue;
        }
        break;
    }
    Ok((MPoly::monomial(mono, coeff), pos))
}

/// Pick a variable named `base` (or `base0`, `base1`, ...) not occurring in
/// any of `avoid`.
pub fn fresh_var(base: &str, avoid: &[&MPoly]) -> Var {
    let clean = Var::new(base);
    if !avoid.iter().any(|p| p.contains_var(&clean)) {
        return clean;
    }
    for i in 0.. {
        let v = Var::new(&format!("{base}{i}"));
        if !avoid.iter().any(|p| p.contains_var(&v)) {
            return v;
        }
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MPoly {
        s.parse().unwrap()
    }

    #[test]
    fn series_var_is_reserved() {
        assert!(Var::try_new("z").is_err());
        assert!(Var::try_new("x").is_ok());
        assert!(Var::try_new("2a").is_err());
        assert!(Var::try_new("").is_err());
    }

    #[test]
    fn difference_of_squares() {
        let a = p("x + t");
        let b = p("x - t");
        assert_eq!(&a * &b, p("x^2 - t^2"));
    }

    #[test]
    fn additive_identity() {
        let a = p("3/4*x^2*t - 1/2");
        assert_eq!(&a + &MPoly::zero(), a);
    }

    #[test]
    fn falling_factorial_expansion_collapses() {
        // t(t-1) + t = t^2
        let t = MPoly::var("t");
        let tt = &t * &(&t - &MPoly::one());
        assert_eq!(&tt + &t, &t * &t);
    }

    #[test]
    fn canonical_display() {
        assert_eq!(p("t + x^2 - 1/2").to_string(), "x^2 + t - 1/2");
        assert_eq!(p("x*t - t*x").to_string(), "0");
        assert_eq!(p("2*x*x").to_string(), "2*x^2");
        // x precedes t in the precedence order
        assert_eq!(p("t*x").to_string(), "x*t");
        assert_eq!((-&p("x")).to_string(), "-x");
    }

    #[test]
    fn display_parse_roundtrip() {
        for s in ["x^2 + t - 1/2", "-3/4*x*t + s^3", "0", "5", "-x - 1"] {
            let q = p(s);
            assert_eq!(p(&q.to_string()), q);
        }
    }

    #[test]
    fn string_map_roundtrip() {
        let q = p("3/4*x^2*t - s + 2");
        let map = q.to_string_map();
        assert_eq!(MPoly::from_string_map(&map).unwrap(), q);
    }

    #[test]
    fn substitute_and_derivative() {
        let q = p("x^2 - s^2*t");
        let sub = q.substitute(&Var::new("x"), &p("w + y"));
        assert_eq!(sub, p("w^2 + 2*w*y + y^2 - s^2*t"));
        let d = q.derivative(&Var::new("x"));
        assert_eq!(d, p("2*x"));
        assert_eq!(q.derivative(&Var::new("w")), MPoly::zero());
    }

    #[test]
    fn graded_lex_order() {
        let m = |s: &str| p(s).terms.keys().next().unwrap().clone();
        assert!(m("x^2") > m("x*t"));
        assert!(m("x*t") > m("t^2"));
        assert!(m("t^3") > m("x^2"), "degree dominates");
        assert!(m("x") > m("t"));
    }

    #[test]
    fn eval_f64() {
        let q = p("x^2 - 2*t");
        let mut vals = BTreeMap::new();
        vals.insert("x".to_string(), 3.0);
        vals.insert("t".to_string(), 0.5);
        assert_eq!(q.eval_f64(&vals).unwrap(), 8.0);
        assert!(q.eval_f64(&BTreeMap::new()).is_err());
    }
}
