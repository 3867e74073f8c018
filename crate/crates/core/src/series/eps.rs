//! Truncated formal power series in one parameter, with opt-in bounded
//! Laurent tails.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{factorial, format_rational, parse_rational, rational_sqrt, Rational};
use super::{Coefficient, SeriesError};

/// A series `Σ c_k ε^k` known through degree `order`.
///
/// Terms above `order` are dropped when they arise and the value is then
/// marked as truncated. Exponents below zero are only stored when the series
/// was built with a negative `floor` (Laurent mode).
#[derive(Clone, Debug)]
pub struct EpsSeries {
    terms: BTreeMap<i32, Rational>,
    order: i32,
    floor: i32,
    truncated: bool,
}

impl PartialEq for EpsSeries {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.terms == other.terms
    }
}

impl Eq for EpsSeries {}

impl EpsSeries {
    pub fn zero(order: i32) -> Self {
        EpsSeries {
            terms: BTreeMap::new(),
            order,
            floor: 0,
            truncated: false,
        }
    }

    pub fn one(order: i32) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: i32) -> Self {
        Self::term(c, 0, order)
    }

    /// `ε` itself.
    pub fn eps(order: i32) -> Self {
        Self::term(Rational::one(), 1, order)
    }

    /// Single term `c ε^exp`. A negative `exp` switches the series into
    /// Laurent mode with that exponent as its floor.
    pub fn term(c: Rational, exp: i32, order: i32) -> Self {
        Self::from_terms([(exp, c)], order)
    }

    /// Builds a series from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed. The floor is the smallest exponent given (or 0).
    pub fn from_terms<I>(terms: I, order: i32) -> Self
    where
        I: IntoIterator<Item = (i32, Rational)>,
    {
        let mut out = Self::zero(order);
        for (k, c) in terms {
            out.floor = out.floor.min(k);
            out.accumulate(k, c);
        }
        out
    }

    /// Power series with the given coefficients `[c0, c1, ...]`.
    pub fn from_coefficients(coeffs: &[Rational], order: i32) -> Self {
        Self::from_terms(
            coeffs.iter().enumerate().map(|(k, c)| (k as i32, c.clone())),
            order,
        )
    }

    /// Series in `ε²` with coefficients `[c0, c2, c4, ...]`.
    pub fn even_from_coefficients(coeffs: &[Rational], order: i32) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (2 * k as i32, c.clone())),
            order,
        )
    }

    fn accumulate(&mut self, k: i32, c: Rational) {
        if c.is_zero() {
            return;
        }
        if k > self.order {
            self.truncated = true;
            return;
        }
        debug_assert!(k >= self.floor, "exponent {k} below floor {}", self.floor);
        let entry = self.terms.entry(k).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    /// Allows exponents down to `floor` (Laurent mode). The floor never rises
    /// above the current valuation.
    pub fn with_floor(mut self, floor: i32) -> Self {
        self.floor = floor.min(self.valuation().unwrap_or(floor)).min(0);
        self
    }

    /// Re-truncates at `order`. Raising the order keeps the stored terms; the
    /// new top coefficients are only meaningful if the series was not
    /// truncated before.
    pub fn with_order(mut self, order: i32) -> Self {
        if order < self.order && self.terms.range(order + 1..).next().is_some() {
            self.truncated = true;
        }
        self.terms.retain(|&k, _| k <= order);
        self.order = order;
        self
    }

    pub fn order(&self) -> i32 {
        self.order
    }

    pub fn floor(&self) -> i32 {
        self.floor
    }

    /// True when terms above `order` were discarded while producing this
    /// value.
    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: i32) -> Rational {
        self.terms.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> + '_ {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    /// True if only even exponents occur.
    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|k| k % 2 == 0)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let mut out = self.clone();
        out.floor = self.floor.min(other.floor);
        out.truncated |= other.truncated;
        for (&k, c) in &other.terms {
            out.accumulate(k, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.checked_add(&other.neg())
    }

    /// Cauchy product truncated at the common order.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let floor = self.floor.min(other.floor);
        if let (Some(va), Some(vb)) = (self.valuation(), other.valuation()) {
            if va + vb < floor {
                return Err(SeriesError::LaurentUnderflow {
                    exponent: va + vb,
                    floor,
                });
            }
        }
        let mut out = Self::zero(self.order);
        out.floor = floor;
        out.truncated = self.truncated || other.truncated;
        for (&ka, ca) in &self.terms {
            for (&kb, cb) in &other.terms {
                out.accumulate(ka + kb, ca * cb);
            }
        }
        Ok(out)
    }

    fn check_order(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order != other.order {
            return Err(SeriesError::TruncationMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            let mut z = Self::zero(self.order);
            z.floor = self.floor;
            return z;
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= r;
        }
        out
    }

    /// Multiplies by `ε^k`.
    pub fn shift(&self, k: i32) -> Result<Self, SeriesError> {
        let mut out = Self::zero(self.order);
        out.floor = self.floor;
        out.truncated = self.truncated;
        if let Some(v) = self.valuation() {
            if v + k < self.floor {
                return Err(SeriesError::LaurentUnderflow {
                    exponent: v + k,
                    floor: self.floor,
                });
            }
        }
        for (&e, c) in &self.terms {
            out.accumulate(e + k, c.clone());
        }
        Ok(out)
    }

    /// `f(ε) ↦ f(−ε)`.
    pub fn flip(&self) -> Self {
        let mut out = self.clone();
        for (k, c) in out.terms.iter_mut() {
            if k % 2 != 0 {
                *c = -c.clone();
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.order);
        acc.floor = self.floor;
        for _ in 0..n {
            acc = acc.checked_mul(self).expect("same order");
        }
        acc
    }

    /// Multiplicative inverse. The result has valuation `-v` where `v` is the
    /// valuation of `self`, so `v > 0` requires a floor of at most `-v`.
    ///
    /// Missing coefficients above `order` are taken as zero, which is exact
    /// when `self` is a polynomial of degree at most `order`.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        let v = self.valuation().ok_or(SeriesError::ZeroSeries)?;
        if -v < self.floor {
            return Err(SeriesError::LaurentUnderflow {
                exponent: -v,
                floor: self.floor,
            });
        }
        let lead = self.coeff(v);
        let len = (self.order + v + 1).max(0) as usize;
        let unit: Vec<Rational> = (0..len).map(|j| self.coeff(v + j as i32) / &lead).collect();
        let mut inv = vec![Rational::zero(); len];
        if len > 0 {
            inv[0] = Rational::one();
        }
        for n in 1..len {
            let mut acc = Rational::zero();
            for k in 1..=n {
                if !unit[k].is_zero() {
                    acc += &unit[k] * &inv[n - k];
                }
            }
            inv[n] = -acc;
        }
        let mut out = Self::zero(self.order);
        out.floor = self.floor;
        out.truncated = self.truncated || self.terms.len() > 1;
        for (j, c) in inv.into_iter().enumerate() {
            out.accumulate(j as i32 - v, c / &lead);
        }
        Ok(out)
    }

    /// Square root with positive leading coefficient.
    pub fn sqrt(&self) -> Result<Self, SeriesError> {
        let v = self.valuation().ok_or(SeriesError::ZeroSeries)?;
        if v % 2 != 0 {
            return Err(SeriesError::OddLeadingExponent(v));
        }
        let lead = self.coeff(v);
        let root = rational_sqrt(&lead).ok_or_else(|| SeriesError::NonSquareLeading(lead.clone()))?;
        let half = v / 2;
        let len = (self.order - half + 1).max(0) as usize;
        let unit: Vec<Rational> = (0..len).map(|j| self.coeff(v + j as i32) / &lead).collect();
        let mut s = vec![Rational::zero(); len];
        if len > 0 {
            s[0] = Rational::one();
        }
        let two = Rational::from_integer(BigInt::from(2));
        for n in 1..len {
            let mut acc = unit[n].clone();
            for k in 1..n {
                acc -= &s[k] * &s[n - k];
            }
            s[n] = acc / &two;
        }
        let mut out = Self::zero(self.order);
        out.floor = self.floor;
        out.truncated = self.truncated || self.terms.len() > 1;
        for (j, c) in s.into_iter().enumerate() {
            out.accumulate(half + j as i32, c * &root);
        }
        Ok(out)
    }

    /// `exp(kε) = Σ (kε)^j / j!`.
    pub fn exp_series(k: &Rational, order: i32) -> Self {
        Self::exponential_part(k, order, |_| true)
    }

    /// Odd part of `exp(kε)`.
    pub fn sinh_series(k: &Rational, order: i32) -> Self {
        Self::exponential_part(k, order, |j| j % 2 == 1)
    }

    /// Even part of `exp(kε)`.
    pub fn cosh_series(k: &Rational, order: i32) -> Self {
        Self::exponential_part(k, order, |j| j % 2 == 0)
    }

    fn exponential_part(k: &Rational, order: i32, keep: impl Fn(u32) -> bool) -> Self {
        let mut out = Self::zero(order);
        if order < 0 {
            out.truncated = true;
            return out;
        }
        let mut power = Rational::one();
        for j in 0..=order as u32 {
            if keep(j) {
                out.accumulate(j as i32, &power / Rational::from_integer(factorial(j)));
            }
            power *= k;
        }
        out.truncated = !k.is_zero();
        out
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&EpsSeries> for &EpsSeries {
            type Output = EpsSeries;
            fn $method(self, rhs: &EpsSeries) -> EpsSeries {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<EpsSeries> for EpsSeries {
            type Output = EpsSeries;
            fn $method(self, rhs: EpsSeries) -> EpsSeries {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &EpsSeries {
    type Output = EpsSeries;
    fn neg(self) -> EpsSeries {
        EpsSeries::neg(self)
    }
}

impl Neg for EpsSeries {
    type Output = EpsSeries;
    fn neg(self) -> EpsSeries {
        EpsSeries::neg(&self)
    }
}

pub(crate) fn write_monomial_coeff(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &Rational,
    vars: &str,
) -> fmt::Result {
    let negative = c.is_negative();
    let abs = c.abs();
    if first {
        if negative {
            write!(f, "-")?;
        }
    } else {
        write!(f, " {} ", if negative { "-" } else { "+" })?;
    }
    if vars.is_empty() {
        write!(f, "{}", format_rational(&abs))
    } else if abs.is_one() {
        write!(f, "{vars}")
    } else {
        write!(f, "{}*{vars}", format_rational(&abs))
    }
}

pub(crate) fn power_name(name: &str, k: i32) -> String {
    match k {
        0 => String::new(),
        1 => name.to_string(),
        _ => format!("{name}^{k}"),
    }
}

impl fmt::Display for EpsSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&k, c)) in self.terms.iter().enumerate() {
            write_monomial_coeff(f, i == 0, c, &power_name("eps", k))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct EpsSeriesWire {
    terms: Vec<(i32, String)>,
    order: i32,
}

impl Serialize for EpsSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        EpsSeriesWire {
            terms: self
                .terms
                .iter()
                .map(|(&k, c)| (k, format_rational(c)))
                .collect(),
            order: self.order,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for EpsSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let wire = EpsSeriesWire::deserialize(d)?;
        let mut terms = Vec::with_capacity(wire.terms.len());
        for (k, text) in wire.terms {
            if k > wire.order {
                return Err(serde::de::Error::custom(format!(
                    "exponent {k} exceeds order {}",
                    wire.order
                )));
            }
            terms.push((k, parse_rational(&text).map_err(serde::de::Error::custom)?));
        }
        Ok(EpsSeries::from_terms(terms, wire.order))
    }
}

impl Coefficient for EpsSeries {
    fn is_zero(&self) -> bool {
        EpsSeries::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        let mut z = EpsSeries::zero(self.order);
        z.floor = self.floor;
        z
    }
    fn rational_like(&self, r: Rational) -> Self {
        let mut c = EpsSeries::constant(r, self.order);
        c.floor = self.floor;
        c
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        EpsSeries::neg(self)
    }
    fn scaled(&self, r: &Rational) -> Self {
        self.scale(r)
    }
    fn flip_eps(&self) -> Self {
        self.flip()
    }
    fn eps_coefficient(&self, k: i32) -> Self {
        let mut out = EpsSeries::constant(self.coeff(k), self.order);
        out.floor = self.floor;
        out
    }
    fn eps_valuation(&self) -> Option<i32> {
        self.valuation()
    }
    fn constant_term(&self) -> Rational {
        self.coeff(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rational::{int, rat};

    fn s(coeffs: &[i64], order: i32) -> EpsSeries {
        EpsSeries::from_coefficients(&coeffs.iter().map(|&c| int(c)).collect::<Vec<_>>(), order)
    }

    #[test]
    fn add_examples() {
        assert_eq!(&s(&[1, 1], 8) + &s(&[-1], 8), EpsSeries::eps(8));
        assert_eq!(&s(&[3, 4], 8) + &EpsSeries::zero(8), s(&[3, 4], 8));
        assert_eq!(&s(&[0, 1, -1], 8) + &s(&[0, 0, 1], 8), EpsSeries::eps(8));
    }

    #[test]
    fn add_rejects_mismatched_orders() {
        let err = s(&[1], 4).checked_add(&s(&[1], 5)).unwrap_err();
        assert_eq!(err, SeriesError::TruncationMismatch { left: 4, right: 5 });
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&s(&[1, 1], 2) * &s(&[1, -1], 2), s(&[1, 0, -1], 2));
        let laurent = EpsSeries::term(int(1), -1, 8);
        assert_eq!(&EpsSeries::eps(8) * &laurent, EpsSeries::one(8));
        let product = &EpsSeries::exp_series(&int(2), 8) * &EpsSeries::exp_series(&int(-2), 8);
        assert_eq!(product, EpsSeries::one(8));
    }

    #[test]
    fn mul_truncates_and_flags() {
        let p = &s(&[0, 0, 1], 3) * &s(&[0, 0, 1], 3);
        assert!(p.is_zero());
        assert!(p.is_truncated());
    }

    #[test]
    fn mul_underflow_is_an_error() {
        let a = EpsSeries::term(int(1), -1, 8).with_floor(-1);
        let err = a.checked_mul(&a).unwrap_err();
        assert!(matches!(err, SeriesError::LaurentUnderflow { exponent: -2, floor: -1 }));
    }

    #[test]
    fn invert_examples() {
        let geometric = s(&[1, -1], 6).invert().unwrap();
        assert_eq!(geometric, s(&[1, 1, 1, 1, 1, 1, 1], 6));
        assert_eq!(EpsSeries::constant(int(2), 4).invert().unwrap(), EpsSeries::constant(rat(1, 2), 4));
        assert_eq!(EpsSeries::zero(4).invert().unwrap_err(), SeriesError::ZeroSeries);
    }

    #[test]
    fn invert_sinh_by_long_division() {
        // 1/sinh(2ε) at order 3 from the sinh expansion computed to order 5.
        let sinh = EpsSeries::sinh_series(&int(2), 5).with_floor(-2);
        let inv = sinh.invert().unwrap().with_order(3);
        // (2ε)^{-1} (1 - (2ε)^2/6 + 7 (2ε)^4/360)
        let expected = EpsSeries::from_terms(
            [(-1, rat(1, 2)), (1, rat(-1, 3)), (3, rat(7, 45))],
            3,
        );
        assert_eq!(inv, expected);
    }

    #[test]
    fn invert_needs_laurent_permission() {
        let err = EpsSeries::eps(4).invert().unwrap_err();
        assert!(matches!(err, SeriesError::LaurentUnderflow { .. }));
    }

    #[test]
    fn sqrt_examples() {
        let a = EpsSeries::term(int(16), 2, 8);
        assert_eq!(a.sqrt().unwrap(), EpsSeries::term(int(4), 1, 8));
        assert_eq!(EpsSeries::constant(int(9), 8).sqrt().unwrap(), EpsSeries::constant(int(3), 8));
        assert_eq!(EpsSeries::eps(8).sqrt().unwrap_err(), SeriesError::OddLeadingExponent(1));
        assert!(matches!(
            EpsSeries::constant(int(2), 8).sqrt().unwrap_err(),
            SeriesError::NonSquareLeading(_)
        ));
    }

    #[test]
    fn sqrt_of_scaled_sinh() {
        // 2ε·4·sinh(2ε), computed one order higher so the root is exact at 5.
        let arg = &EpsSeries::term(int(8), 1, 6) * &EpsSeries::sinh_series(&int(2), 6);
        let root = arg.sqrt().unwrap().with_order(5);
        assert_eq!(root.coeff(1), int(4));
        assert_eq!(root.coeff(3), rat(4 * 4, 12));
        let back = &root * &root;
        assert_eq!(back, arg.clone().with_order(5));
    }

    #[test]
    fn exponential_examples() {
        assert_eq!(EpsSeries::exp_series(&int(2), 2), s(&[1, 2, 2], 2));
        assert_eq!(
            EpsSeries::sinh_series(&int(2), 3),
            EpsSeries::from_terms([(1, int(2)), (3, rat(4, 3))], 3)
        );
        assert_eq!(EpsSeries::exp_series(&int(0), 5), EpsSeries::one(5));
    }

    #[test]
    fn flip_negates_odd_terms() {
        assert_eq!(s(&[1, 2, 3], 4).flip(), s(&[1, -2, 3], 4));
    }

    #[test]
    fn display() {
        assert_eq!(s(&[1, -2, 0, 1], 4).to_string(), "1 - 2*eps + eps^3");
        assert_eq!(EpsSeries::term(rat(-1, 3), 2, 4).to_string(), "-1/3*eps^2");
        assert_eq!(EpsSeries::zero(3).to_string(), "0");
    }

    #[test]
    fn json_shape() {
        let a = EpsSeries::from_terms([(0, int(1)), (2, rat(1, 3))], 8);
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(text, r#"{"terms":[[0,"1"],[2,"1/3"]],"order":8}"#);
        let back: EpsSeries = serde_json::from_str(&text).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<EpsSeries>(r#"{"terms":[[9,"1"]],"order":8}"#).is_err());
    }
}
