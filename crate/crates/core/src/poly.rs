//! Exact Laurent polynomials with arbitrary-precision integer coefficients.
//!
//! [`LaurentPoly1`] is a polynomial in `q`, [`LaurentPoly2`] a polynomial in
//! `(a, z)`. Both keep their terms in a `BTreeMap` keyed by exponent and never
//! store a zero coefficient, so structural equality is polynomial equality.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

/// Exponent monoid of a Laurent polynomial ring.
pub trait Exponent: Copy + Ord + Hash + fmt::Debug {
    const VARS: &'static str;
    fn origin() -> Self;
    fn plus(self, other: Self) -> Self;
    fn write_monomial(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result;
    fn key(&self) -> String;
}

impl Exponent for i64 {
    const VARS: &'static str = "q";
    fn origin() -> Self {
        0
    }
    fn plus(self, other: Self) -> Self {
        self + other
    }
    fn write_monomial(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q^{self}")
    }
    fn key(&self) -> String {
        self.to_string()
    }
}

/// `(a-exponent, z-exponent)`.
impl Exponent for (i64, i64) {
    const VARS: &'static str = "az";
    fn origin() -> Self {
        (0, 0)
    }
    fn plus(self, other: Self) -> Self {
        (self.0 + other.0, self.1 + other.1)
    }
    fn write_monomial(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a^{}*z^{}", self.0, self.1)
    }
    fn key(&self) -> String {
        format!("{},{}", self.0, self.1)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent<E: Exponent> {
    terms: BTreeMap<E, BigInt>,
}

pub type LaurentPoly1 = Laurent<i64>;
pub type LaurentPoly2 = Laurent<(i64, i64)>;

impl<E: Exponent> Laurent<E> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(1, E::origin())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, E::origin())
    }

    pub fn monomial(c: impl Into<BigInt>, e: E) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c.into());
        p
    }

    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (E, C)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: E) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (E, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn add_term(&mut self, e: E, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Multiplies by the monomial with exponent `e`.
    pub fn shift_by(&self, e: E) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.plus(e), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    fn map_exponents(&self, f: impl Fn(E) -> E) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.add_term(f(*e), c.clone());
        }
        out
    }
}

impl LaurentPoly1 {
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    /// The balanced quantum integer `[n] = q^{n-1} + q^{n-3} + ... + q^{1-n}`.
    pub fn qint(n: u32) -> Self {
        let n = n as i64;
        Self::from_terms((0..n).map(|i| (n - 1 - 2 * i, 1)))
    }

    /// `q - q^{-1}`.
    pub fn q_minus_qinv() -> Self {
        Self::from_terms([(1, 1), (-1, -1)])
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        self.shift_by(k)
    }

    /// `(min_deg, max_deg)`, or `None` for the zero polynomial.
    pub fn support(&self) -> Option<(i64, i64)> {
        let lo = *self.terms.keys().next()?;
        let hi = *self.terms.keys().next_back()?;
        Some((lo, hi))
    }

    /// Substitutes `q -> q^{-1}`.
    pub fn bar(&self) -> Self {
        self.map_exponents(|e| -e)
    }

    pub fn is_bar_symmetric(&self) -> bool {
        *self == self.bar()
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`
    /// over the integers.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (d_lo, d_hi) = d.support()?;
        let (s_lo, _) = match self.support() {
            None => return Some(Self::zero()),
            Some(s) => s,
        };
        let d_lead = &d.terms[&d_hi];
        let floor = s_lo - d_lo;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((_, r_hi)) = rem.support() {
            let e = r_hi - d_hi;
            if e < floor {
                return None;
            }
            let c = &rem.terms[&r_hi];
            if !(c % d_lead).is_zero() {
                return None;
            }
            let t = Self::monomial(c / d_lead, e);
            rem = &rem - &(&t * d);
            quot += t;
        }
        Some(quot)
    }
}

impl LaurentPoly2 {
    pub fn a() -> Self {
        Self::monomial(1, (1, 0))
    }

    pub fn z() -> Self {
        Self::monomial(1, (0, 1))
    }

    /// `a^i z^j`.
    pub fn az(i: i64, j: i64) -> Self {
        Self::monomial(1, (i, j))
    }

    /// Extreme `a`-exponents over all nonzero terms.
    pub fn adeg_range(&self) -> Option<(i64, i64)> {
        let mut it = self.terms.keys().map(|(a, _)| *a);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), a| (lo.min(a), hi.max(a))))
    }

    pub fn zdeg_range(&self) -> Option<(i64, i64)> {
        let mut it = self.terms.keys().map(|(_, z)| *z);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), z| (lo.min(z), hi.max(z))))
    }

    /// `(a - a^{-1}) z^{-1}`, the value of the two-component unlink.
    pub fn delta() -> Self {
        Self::from_terms([((1, -1), 1), ((-1, -1), -1)])
    }

    /// Substitutes `a -> -a^{-1}`.
    pub fn mirror(&self) -> Self {
        let mut out = Self::zero();
        for ((i, j), c) in &self.terms {
            let c = if i.rem_euclid(2) == 1 { -c } else { c.clone() };
            out.add_term((-i, *j), c);
        }
        out
    }

    /// Evaluates at `a = q^{a_power}`, `z = z_sign * (q - q^{-1})`.
    ///
    /// Negative powers of `z` are cleared by exact division; `None` if the
    /// result is not a Laurent polynomial in `q`.
    pub fn specialize(&self, a_power: i64, z_sign: i64) -> Option<LaurentPoly1> {
        let z_lo = self.zdeg_range().map_or(0, |(lo, _)| lo.min(0));
        let clear = (-z_lo) as u32;
        let zq = LaurentPoly1::q_minus_qinv().scale(&BigInt::from(z_sign));
        let mut num = LaurentPoly1::zero();
        for ((i, j), c) in &self.terms {
            let term = LaurentPoly1::monomial(c.clone(), i * a_power);
            num += &term * &zq.pow((j - z_lo) as u32);
        }
        num.div_exact(&zq.pow(clear))
    }
}

impl<E: Exponent> fmt::Display for Laurent<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if c.is_negative() {
                write!(f, "{c}*")?;
            } else {
                write!(f, "+{c}*")?;
            }
            e.write_monomial(f)?;
        }
        Ok(())
    }
}

impl<E: Exponent> fmt::Debug for Laurent<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

struct Coefficients<'a, E: Exponent>(&'a BTreeMap<E, BigInt>);

impl<E: Exponent> Serialize for Coefficients<'_, E> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (e, c) in self.0 {
            match c.to_i64() {
                Some(small) => map.serialize_entry(&e.key(), &small)?,
                None => map.serialize_entry(&e.key(), &c.to_string())?,
            }
        }
        map.end()
    }
}

/// `{"q": {"-1": 1, "1": 1}}`, keys in increasing exponent order.
impl<E: Exponent> Serialize for Laurent<E> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(1))?;
        map.serialize_entry(E::VARS, &Coefficients(&self.terms))?;
        map.end()
    }
}

impl<E: Exponent> Neg for &Laurent<E> {
    type Output = Laurent<E>;
    fn neg(self) -> Laurent<E> {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl<E: Exponent> Neg for Laurent<E> {
    type Output = Laurent<E>;
    fn neg(self) -> Laurent<E> {
        -&self
    }
}

impl<E: Exponent> AddAssign<&Laurent<E>> for Laurent<E> {
    fn add_assign(&mut self, rhs: &Laurent<E>) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl<E: Exponent> AddAssign for Laurent<E> {
    fn add_assign(&mut self, rhs: Laurent<E>) {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
    }
}

impl<E: Exponent> SubAssign<&Laurent<E>> for Laurent<E> {
    fn sub_assign(&mut self, rhs: &Laurent<E>) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl<E: Exponent> Add for &Laurent<E> {
    type Output = Laurent<E>;
    fn add(self, rhs: &Laurent<E>) -> Laurent<E> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<E: Exponent> Sub for &Laurent<E> {
    type Output = Laurent<E>;
    fn sub(self, rhs: &Laurent<E>) -> Laurent<E> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<E: Exponent> Mul for &Laurent<E> {
    type Output = Laurent<E>;
    fn mul(self, rhs: &Laurent<E>) -> Laurent<E> {
        let mut out = Laurent::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1.plus(*e2), c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<E: Exponent> $tr for Laurent<E> {
            type Output = Laurent<E>;
            fn $m(self, rhs: Laurent<E>) -> Laurent<E> {
                (&self).$m(&rhs)
            }
        }
        impl<E: Exponent> $tr<&Laurent<E>> for Laurent<E> {
            type Output = Laurent<E>;
            fn $m(self, rhs: &Laurent<E>) -> Laurent<E> {
                (&self).$m(rhs)
            }
        }
        impl<E: Exponent> $tr<Laurent<E>> for &Laurent<E> {
            type Output = Laurent<E>;
            fn $m(self, rhs: Laurent<E>) -> Laurent<E> {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<E: Exponent> std::iter::Sum for Laurent<E> {
    fn sum<I: Iterator<Item = Laurent<E>>>(iter: I) -> Self {
        iter.fold(Laurent::zero(), |mut acc, p| {
            acc += p;
            acc
        })
    }
}

impl<E: Exponent> Zero for Laurent<E> {
    fn zero() -> Self {
        Laurent::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<E: Exponent> One for Laurent<E> {
    fn one() -> Self {
        Laurent::one()
    }
}
