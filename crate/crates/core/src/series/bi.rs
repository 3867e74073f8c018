//! Truncated series in two commuting parameters `ε` and `h`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::eps::{power_name, write_monomial_coeff};
use super::rational::{factorial, format_rational, parse_rational, Rational};
use super::{Coefficient, EpsSeries, SeriesError};

/// `Σ c_{ij} ε^i h^j`, truncated at total degree `i + j ≤ order`.
///
/// `ε`-exponents are non-negative; `h`-exponents may go down to `h_floor`
/// (at most one negative power is needed for `1/sinh(h)`).
#[derive(Clone, Debug)]
pub struct BiSeries {
    terms: BTreeMap<(i32, i32), Rational>,
    order: i32,
    h_floor: i32,
    truncated: bool,
}

impl PartialEq for BiSeries {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.terms == other.terms
    }
}

impl Eq for BiSeries {}

impl BiSeries {
    pub fn zero(order: i32) -> Self {
        BiSeries {
            terms: BTreeMap::new(),
            order,
            h_floor: 0,
            truncated: false,
        }
    }

    pub fn one(order: i32) -> Self {
        Self::term(Rational::one(), 0, 0, order)
    }

    pub fn constant(c: Rational, order: i32) -> Self {
        Self::term(c, 0, 0, order)
    }

    pub fn eps(order: i32) -> Self {
        Self::term(Rational::one(), 1, 0, order)
    }

    pub fn h(order: i32) -> Self {
        Self::term(Rational::one(), 0, 1, order)
    }

    /// `c ε^i h^j`; a negative `j` sets the `h` floor.
    pub fn term(c: Rational, i: i32, j: i32, order: i32) -> Self {
        Self::from_terms([((i, j), c)], order)
    }

    pub fn from_terms<I>(terms: I, order: i32) -> Self
    where
        I: IntoIterator<Item = ((i32, i32), Rational)>,
    {
        let mut out = Self::zero(order);
        for ((i, j), c) in terms {
            assert!(i >= 0, "negative ε-exponent {i}");
            out.h_floor = out.h_floor.min(j);
            out.accumulate(i, j, c);
        }
        out
    }

    /// Embeds a series in `ε`.
    pub fn from_eps(s: &EpsSeries, order: i32) -> Self {
        Self::from_terms(s.terms().map(|(k, c)| ((k, 0), c.clone())), order)
    }

    /// Reads a one-variable series as a series in `h`.
    pub fn from_h(s: &EpsSeries, order: i32) -> Self {
        let mut out = Self::from_terms(s.terms().map(|(k, c)| ((0, k), c.clone())), order);
        out.h_floor = out.h_floor.min(s.floor());
        out.truncated |= s.is_truncated();
        out
    }

    /// `exp(k ε h)`.
    pub fn exp_eps_h(k: &Rational, order: i32) -> Self {
        let mut out = Self::zero(order);
        let mut power = Rational::one();
        let mut j = 0u32;
        while 2 * j as i32 <= order {
            out.accumulate(j as i32, j as i32, &power / Rational::from_integer(factorial(j)));
            power *= k;
            j += 1;
        }
        out.truncated = !k.is_zero();
        out
    }

    fn accumulate(&mut self, i: i32, j: i32, c: Rational) {
        if c.is_zero() {
            return;
        }
        if i + j > self.order {
            self.truncated = true;
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    /// Lowers the permitted `h`-exponent.
    pub fn with_h_floor(mut self, floor: i32) -> Self {
        self.h_floor = self.h_floor.min(floor);
        self
    }

    pub fn order(&self) -> i32 {
        self.order
    }

    pub fn h_floor(&self) -> i32 {
        self.h_floor
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: i32, j: i32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i32, i32), &Rational)> + '_ {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    /// Smallest `h`-exponent present.
    pub fn min_h_exponent(&self) -> Option<i32> {
        self.terms.keys().map(|&(_, j)| j).min()
    }

    pub fn with_order(mut self, order: i32) -> Self {
        if self.terms.keys().any(|&(i, j)| i + j > order) {
            self.truncated = true;
        }
        self.terms.retain(|&(i, j), _| i + j <= order);
        self.order = order;
        self
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let mut out = self.clone();
        out.h_floor = self.h_floor.min(other.h_floor);
        out.truncated |= other.truncated;
        for (&(i, j), c) in &other.terms {
            out.accumulate(i, j, c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let h_floor = self.h_floor.min(other.h_floor);
        if let (Some(a), Some(b)) = (self.min_h_exponent(), other.min_h_exponent()) {
            if a + b < h_floor {
                return Err(SeriesError::LaurentUnderflow {
                    exponent: a + b,
                    floor: h_floor,
                });
            }
        }
        let mut out = Self::zero(self.order);
        out.h_floor = h_floor;
        out.truncated = self.truncated || other.truncated;
        for (&(ia, ja), ca) in &self.terms {
            for (&(ib, jb), cb) in &other.terms {
                out.accumulate(ia + ib, ja + jb, ca * cb);
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
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut out = self.clone();
        if r.is_zero() {
            out.terms.clear();
            return out;
        }
        for c in out.terms.values_mut() {
            *c *= r;
        }
        out
    }

    pub fn flip_eps(&self) -> Self {
        let mut out = self.clone();
        for (&(i, _), c) in out.terms.iter_mut() {
            if i % 2 != 0 {
                *c = -c.clone();
            }
        }
        out
    }

    /// Coefficient of `h^j` as a series in `ε`.
    pub fn h_coefficient(&self, j: i32) -> EpsSeries {
        EpsSeries::from_terms(
            self.terms
                .iter()
                .filter(|(&(_, jj), _)| jj == j)
                .map(|(&(i, _), c)| (i, c.clone())),
            self.order,
        )
    }

    /// The `ε^i` part as a one-variable series in `h`.
    pub fn eps_part_in_h(&self, i: i32) -> EpsSeries {
        EpsSeries::from_terms(
            self.terms
                .iter()
                .filter(|(&(ii, _), _)| ii == i)
                .map(|(&(_, j), c)| (j, c.clone())),
            self.order,
        )
    }

    /// Substitutes `h = k·ε`, giving a Laurent series in `ε` at `order`.
    pub fn specialize_h(&self, k: &Rational, order: i32) -> EpsSeries {
        let mut terms = Vec::new();
        for (&(i, j), c) in &self.terms {
            let factor = if j >= 0 {
                num_traits::pow(k.clone(), j as usize)
            } else {
                num_traits::pow(k.recip(), (-j) as usize)
            };
            terms.push((i + j, c * factor));
        }
        EpsSeries::from_terms(terms, order)
    }
}

impl std::ops::Add<&BiSeries> for &BiSeries {
    type Output = BiSeries;
    fn add(self, rhs: &BiSeries) -> BiSeries {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl std::ops::Sub<&BiSeries> for &BiSeries {
    type Output = BiSeries;
    fn sub(self, rhs: &BiSeries) -> BiSeries {
        self.checked_add(&rhs.neg()).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl std::ops::Mul<&BiSeries> for &BiSeries {
    type Output = BiSeries;
    fn mul(self, rhs: &BiSeries) -> BiSeries {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl fmt::Display for BiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (&(i, j), c)) in self.terms.iter().enumerate() {
            let vars = [power_name("eps", i), power_name("h", j)]
                .into_iter()
                .filter(|s| !s.is_empty())
                .collect::<Vec<_>>()
                .join("*");
            write_monomial_coeff(f, n == 0, c, &vars)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct BiSeriesWire {
    terms: Vec<(i32, i32, String)>,
    order: i32,
}

impl Serialize for BiSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        BiSeriesWire {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| (i, j, format_rational(c)))
                .collect(),
            order: self.order,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BiSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let wire = BiSeriesWire::deserialize(d)?;
        let mut terms = Vec::new();
        for (i, j, text) in wire.terms {
            if i < 0 || i + j > wire.order {
                return Err(serde::de::Error::custom(format!("bad exponent pair ({i}, {j})")));
            }
            terms.push(((i, j), parse_rational(&text).map_err(serde::de::Error::custom)?));
        }
        Ok(BiSeries::from_terms(terms, wire.order))
    }
}

impl Coefficient for BiSeries {
    fn is_zero(&self) -> bool {
        BiSeries::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        let mut z = BiSeries::zero(self.order);
        z.h_floor = self.h_floor;
        z
    }
    fn rational_like(&self, r: Rational) -> Self {
        let mut c = BiSeries::constant(r, self.order);
        c.h_floor = self.h_floor;
        c
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn scaled(&self, r: &Rational) -> Self {
        self.scale(r)
    }
    fn flip_eps(&self) -> Self {
        BiSeries::flip_eps(self)
    }
    fn eps_coefficient(&self, k: i32) -> Self {
        let mut out = BiSeries::from_h(&self.eps_part_in_h(k), self.order);
        out.h_floor = self.h_floor;
        out
    }
    fn eps_valuation(&self) -> Option<i32> {
        self.terms.keys().map(|&(i, _)| i).min()
    }
    fn constant_term(&self) -> Rational {
        self.coeff(0, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rational::{int, rat};

    #[test]
    fn total_degree_truncation() {
        let a = &BiSeries::eps(3) * &BiSeries::h(3);
        assert_eq!(a, BiSeries::term(int(1), 1, 1, 3));
        let b = &a * &a;
        assert!(b.is_zero());
        assert!(b.is_truncated());
    }

    #[test]
    fn eps_over_sinh_h_is_exact() {
        // ε/(2 sinh h) has total degree ≥ 0, so products stay exact.
        let order = 6;
        let sinh = EpsSeries::sinh_series(&int(1), order + 2).with_floor(-1);
        let inv = sinh.invert().unwrap().with_order(order + 1).scale(&rat(1, 2));
        let s = &BiSeries::eps(order) * &BiSeries::from_h(&inv, order);
        assert_eq!(s.coeff(1, -1), rat(1, 2));
        assert_eq!(s.coeff(1, 1), rat(-1, 12));
        let two_sinh = BiSeries::from_h(&EpsSeries::sinh_series(&int(1), order), order).scale(&int(2));
        assert_eq!(&s * &two_sinh, BiSeries::eps(order));
    }

    #[test]
    fn exp_eps_h_inverse() {
        let p = &BiSeries::exp_eps_h(&int(1), 8) * &BiSeries::exp_eps_h(&int(-1), 8);
        assert_eq!(p, BiSeries::one(8));
    }

    #[test]
    fn flip_only_touches_eps() {
        let a = BiSeries::from_terms([((1, 0), int(1)), ((0, 1), int(1)), ((1, 1), int(2))], 4);
        let f = a.flip_eps();
        assert_eq!(f.coeff(1, 0), int(-1));
        assert_eq!(f.coeff(0, 1), int(1));
        assert_eq!(f.coeff(1, 1), int(-2));
    }

    #[test]
    fn display_and_json() {
        let a = BiSeries::from_terms([((1, -1), rat(1, 2)), ((1, 1), rat(-1, 12))], 4);
        assert_eq!(a.to_string(), "1/2*eps*h^-1 - 1/12*eps*h");
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(text, r#"{"terms":[[1,-1,"1/2"],[1,1,"-1/12"]],"order":4}"#);
        let back: BiSeries = serde_json::from_str(&text).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn specialize_h_to_eps() {
        // e^{εh} at h = 2ε is e^{2ε²}.
        let e = BiSeries::exp_eps_h(&int(1), 8).specialize_h(&int(2), 8);
        assert_eq!(e.coeff(2), int(2));
        assert_eq!(e.coeff(4), int(2));
    }
}
