//! Sparse multivariate polynomials over `Rat` in the fixed indeterminates
//! `l` (the degeneracy parameter lambda), `x`, `y` and `t`.
//!
//! Terms live in a `BTreeMap` keyed by `Monomial`, whose `Ord` is graded
//! lexicographic with exponent vectors compared in the order `l, x, y, t`.
//! Zero coefficients are never stored, so structural equality is polynomial
//! equality.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::{self, Deserializer, MapAccess, SeqAccess, Visitor};
use serde::ser::{SerializeMap, SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use super::Rat;
use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Lambda,
    X,
    Y,
    T,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::Lambda, Var::X, Var::Y, Var::T];

    pub fn index(self) -> usize {
        self as usize
    }

    /// ASCII name used in serialization and on the command line.
    pub fn name(self) -> &'static str {
        match self {
            Var::Lambda => "l",
            Var::X => "x",
            Var::Y => "y",
            Var::T => "t",
        }
    }

    pub fn from_name(s: &str) -> Result<Var, Error> {
        match s {
            "l" => Ok(Var::Lambda),
            "x" => Ok(Var::X),
            "y" => Ok(Var::Y),
            "t" => Ok(Var::T),
            other => Err(Error::UnknownVar(other.to_string())),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Partial assignment of rational values to variables.
pub type Bindings = BTreeMap<Var, Rat>;

/// Parses `NAME=RATIONAL`, e.g. `l=-1/3`.
pub fn parse_binding(s: &str) -> Result<(Var, Rat), Error> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| Error::ParseBinding(s.to_string()))?;
    Ok((Var::from_name(name.trim())?, value.parse()?))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial([u32; 4]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 4]);

    pub fn var(v: Var) -> Self {
        let mut e = [0; 4];
        e[v.index()] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exps: [u32; 4]) -> Self {
        Monomial(exps)
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn exponents(&self) -> [u32; 4] {
        self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0; 4]
    }

    fn with_exponent(mut self, v: Var, e: u32) -> Self {
        self.0[v.index()] = e;
        self
    }
}

// Monomial product adds exponents.
#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for Monomial {
    type Output = Monomial;
    fn mul(self, rhs: Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(rhs.0) {
            *a += b;
        }
        Monomial(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for v in Var::ALL {
            let e = self.exponent(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::term(c, Monomial::ONE)
    }

    pub fn int(n: i64) -> Self {
        Poly::constant(Rat::from_int(n))
    }

    pub fn var(v: Var) -> Self {
        Poly::term(Rat::one(), Monomial::var(v))
    }

    pub fn lambda() -> Self {
        Poly::var(Var::Lambda)
    }

    pub fn term(c: Rat, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    /// Collects terms, summing duplicates and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rat)>>(iter: I) -> Self {
        let mut terms: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for (m, c) in iter {
            *terms.entry(m).or_insert_with(Rat::zero) += &c;
        }
        terms.retain(|_, c| !c.is_zero());
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (ascending graded-lex) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// The value if the polynomial is constant (zero included).
    pub fn constant_value(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Coefficient of `v^e`, as a polynomial in the remaining variables.
    pub fn coefficient_of(&self, v: Var, e: u32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exponent(v) == e)
                .map(|(m, c)| (m.with_exponent(v, 0), c.clone()))
                .collect(),
        }
    }

    pub fn mentions(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes the bound variables by their values; unbound variables stay symbolic.
    pub fn eval(&self, bindings: &Bindings) -> Poly {
        if bindings.is_empty() || self.is_zero() {
            return self.clone();
        }
        let mut powers: HashMap<(Var, u32), Rat> = HashMap::new();
        let mut out: HashMap<Monomial, Rat> = HashMap::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut mono = *m;
            for (&v, val) in bindings {
                let e = m.exponent(v);
                if e == 0 {
                    continue;
                }
                let p = powers.entry((v, e)).or_insert_with(|| val.pow(e));
                coeff *= p;
                mono = mono.with_exponent(v, 0);
            }
            if !coeff.is_zero() {
                *out.entry(mono).or_insert_with(Rat::zero) += &coeff;
            }
        }
        Poly::from_terms(out)
    }

    /// Replaces every occurrence of `v` by `q` and re-expands.
    pub fn substitute(&self, v: Var, q: &Poly) -> Poly {
        if !self.mentions(v) {
            return self.clone();
        }
        // Group by the exponent of `v`: self = sum_e rest_e * v^e.
        let mut by_exp: BTreeMap<u32, Vec<(Monomial, Rat)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            by_exp
                .entry(m.exponent(v))
                .or_default()
                .push((m.with_exponent(v, 0), c.clone()));
        }
        let mut acc = Poly::zero();
        let mut q_pow = Poly::one();
        let mut cur = 0;
        for (e, rest) in by_exp {
            while cur < e {
                q_pow = &q_pow * q;
                cur += 1;
            }
            acc = &acc + &(&Poly::from_terms(rest) * &q_pow);
        }
        acc
    }

    /// Canonical human-readable form, e.g. `1 - 3*l + 2*l^2`.
    pub fn to_human(&self) -> String {
        self.to_string()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("polynomial serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Poly, Error> {
        Ok(serde_json::from_str(s)?)
    }
}

impl From<Rat> for Poly {
    fn from(c: Rat) -> Self {
        Poly::constant(c)
    }
}

impl From<Var> for Poly {
    fn from(v: Var) -> Self {
        Poly::var(v)
    }
}

impl From<i64> for Poly {
    fn from(n: i64) -> Self {
        Poly::int(n)
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut terms = big.terms.clone();
        for (m, c) in &small.terms {
            match terms.get_mut(m) {
                Some(a) => {
                    *a += c;
                    if a.is_zero() {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(*m, c.clone());
                }
            }
        }
        Poly { terms }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut acc: HashMap<Monomial, Rat> =
            HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let prod = ca * cb;
                match acc.get_mut(&(*ma * *mb)) {
                    Some(slot) => *slot += &prod,
                    None => {
                        acc.insert(*ma * *mb, prod);
                    }
                }
            }
        }
        let mut terms: BTreeMap<Monomial, Rat> = acc.into_iter().collect();
        terms.retain(|_, c| !c.is_zero());
        Poly { terms }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::zero(), |acc, p| &acc + &p)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match (i, sign) {
                (0, "-") => f.write_str("-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

struct MonomialJson<'a>(&'a Monomial);

impl Serialize for MonomialJson<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let present: Vec<Var> = Var::ALL
            .into_iter()
            .filter(|v| self.0.exponent(*v) > 0)
            .collect();
        let mut map = serializer.serialize_map(Some(present.len()))?;
        for v in present {
            map.serialize_entry(v.name(), &self.0.exponent(v))?;
        }
        map.end()
    }
}

struct TermJson<'a>(&'a Monomial, &'a Rat);

impl Serialize for TermJson<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("m", &MonomialJson(self.0))?;
        map.serialize_entry("c", self.1)?;
        map.end()
    }
}

/// `[{"m": {"l": 1, "x": 2}, "c": "-3/2"}, ...]` in canonical term order.
impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (m, c) in &self.terms {
            seq.serialize_element(&TermJson(m, c))?;
        }
        seq.end()
    }
}

struct MonomialVisitor;

impl<'de> Visitor<'de> for MonomialVisitor {
    type Value = Monomial;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a map from variable names (l, x, y, t) to exponents")
    }

    fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Monomial, A::Error> {
        let mut exps = [0u32; 4];
        let mut seen = [false; 4];
        while let Some((name, e)) = access.next_entry::<String, u32>()? {
            let v = Var::from_name(&name).map_err(de::Error::custom)?;
            if std::mem::replace(&mut seen[v.index()], true) {
                return Err(de::Error::custom(format!("duplicate variable {name:?}")));
            }
            exps[v.index()] = e;
        }
        Ok(Monomial(exps))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    m: MonomialDe,
    c: Rat,
}

struct MonomialDe(Monomial);

impl<'de> Deserialize<'de> for MonomialDe {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer
            .deserialize_map(MonomialVisitor)
            .map(MonomialDe)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct TermsVisitor;
        impl<'de> Visitor<'de> for TermsVisitor {
            type Value = Poly;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an array of {\"m\": ..., \"c\": ...} terms")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Poly, A::Error> {
                let mut terms = Vec::new();
                while let Some(t) = seq.next_element::<RawTerm>()? {
                    terms.push((t.m.0, t.c));
                }
                Ok(Poly::from_terms(terms))
            }
        }
        deserializer.deserialize_seq(TermsVisitor)
    }
}
