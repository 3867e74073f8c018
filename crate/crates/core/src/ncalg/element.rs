use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::basis::{Alphabet, PbwMonomial, Word};
use crate::series::{Coefficient, Rational};

/// Finite linear combination of PBW monomials with series coefficients.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct NcElement<S> {
    terms: BTreeMap<PbwMonomial, S>,
}

impl<S: Coefficient> Default for NcElement<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Coefficient> NcElement<S> {
    pub fn zero() -> Self {
        NcElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(m: PbwMonomial, c: S) -> Self {
        let mut out = Self::zero();
        out.add_term(m, c);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (PbwMonomial, S)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn add_term(&mut self, m: PbwMonomial, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = existing.plus(&c);
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
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

    pub fn coeff(&self, m: &PbwMonomial) -> Option<&S> {
        self.terms.get(m)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &S)> + '_ {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.negated())
    }

    /// Multiplies every coefficient by the scalar `s`.
    pub fn scale(&self, s: &S) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (*m, c.times(s))))
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (*m, c.scaled(r))))
    }

    /// Applies `f` to every coefficient, dropping terms that become zero.
    pub fn map<T: Coefficient>(&self, f: impl Fn(&S) -> T) -> NcElement<T> {
        NcElement::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// The commutative product of the classical limit: exponents add.
    pub fn classical_mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.classical_mul(mb), ca.times(cb));
            }
        }
        out
    }

    /// The part of `ε`-degree `k` of every coefficient.
    pub fn eps_coefficient(&self, k: i32) -> Self {
        self.map(|c| c.eps_coefficient(k))
    }

    /// Lowest `ε`-degree over all coefficients.
    pub fn eps_valuation(&self) -> Option<i32> {
        self.terms.values().filter_map(|c| c.eps_valuation()).min()
    }

    /// Evaluates the parameter-free part as a function of `(x1, x2, x3)`.
    pub fn evaluate_classical(&self, x: [f64; 3]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| crate::series::rational::to_f64(&c.constant_term()) * m.evaluate(x))
            .sum()
    }

    pub fn display_with(&self, alphabet: &Alphabet) -> String {
        format_linear(
            self.terms
                .iter()
                .map(|(m, c)| ((!m.is_unit()).then(|| m.display_with(alphabet)), c.to_string())),
        )
    }
}

/// Prints `Σ c·b` with signs pulled out of single-term coefficients;
/// a `None` basis element stands for the unit.
pub(crate) fn format_linear(terms: impl Iterator<Item = (Option<String>, String)>) -> String {
    let mut out = String::new();
    for (i, (basis, coeff)) in terms.enumerate() {
        let single = !coeff[1..].contains(" + ") && !coeff[1..].contains(" - ");
        let (negative, body) = match coeff.strip_prefix('-') {
            Some(rest) if single => (true, rest.to_string()),
            _ => (false, coeff.clone()),
        };
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let body = if single { body } else { format!("({body})") };
        match basis {
            None => out.push_str(&body),
            Some(b) if body == "1" => out.push_str(&b),
            Some(b) => out.push_str(&format!("{body}*{b}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl<S: Coefficient> fmt::Display for NcElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&Alphabet::X))
    }
}

#[derive(Serialize, Deserialize)]
struct TermWire<S> {
    n1: u32,
    n2: u32,
    n3: u32,
    m: i32,
    coeff: S,
}

#[derive(Serialize, Deserialize)]
struct ElementWire<S> {
    terms: Vec<TermWire<S>>,
}

impl<S: Coefficient + Serialize> Serialize for NcElement<S> {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        ElementWire {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermWire {
                    n1: m.n1,
                    n2: m.n2,
                    n3: m.n3,
                    m: m.m,
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de, S: Coefficient + Deserialize<'de>> Deserialize<'de> for NcElement<S> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let wire = ElementWire::<S>::deserialize(d)?;
        Ok(NcElement::from_terms(
            wire.terms
                .into_iter()
                .map(|t| (PbwMonomial::new(t.n1, t.n2, t.n3, t.m), t.coeff)),
        ))
    }
}

/// Element of the free algebra on the five letters, before normal ordering.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeElement<S> {
    terms: BTreeMap<Word, S>,
}

impl<S: Coefficient> Default for FreeElement<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Coefficient> FreeElement<S> {
    pub fn zero() -> Self {
        FreeElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn word(w: Word, c: S) -> Self {
        let mut out = Self::zero();
        out.add_term(w, c);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, S)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (w, c) in terms {
            out.add_term(w, c);
        }
        out
    }

    /// Reads a normal-form element back as a combination of ordered words.
    pub fn from_element(e: &NcElement<S>) -> Self {
        Self::from_terms(e.terms().map(|(m, c)| (m.word(), c.clone())))
    }

    pub fn add_term(&mut self, w: Word, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(existing) => {
                let sum = existing.plus(&c);
                if sum.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &S)> + '_ {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale_rational(&-Rational::from_integer(1.into())))
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), c.scaled(r))))
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), c.times(s))))
    }

    /// Concatenation product of the free algebra.
    pub fn concat(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                out.add_term(w, ca.times(cb));
            }
        }
        out
    }

    /// Reverses every word and flips `ε ↦ −ε` in the coefficients.
    pub fn reverse_flip(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| {
            let mut r = w.clone();
            r.reverse();
            (r, c.flip_eps())
        }))
    }
}
