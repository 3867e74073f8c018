use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ncalg::format_linear;
use crate::ncalg::{Alphabet, NcElement, PbwMonomial};
use crate::series::Coefficient;

/// Finite sum of `c · (a ⊗ b)` over pairs of basis monomials.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorElement<S> {
    terms: BTreeMap<(PbwMonomial, PbwMonomial), S>,
}

/// Finite sum of `c · (a ⊗ b ⊗ d)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor3Element<S> {
    terms: BTreeMap<(PbwMonomial, PbwMonomial, PbwMonomial), S>,
}

fn accumulate<K: Ord, S: Coefficient>(terms: &mut BTreeMap<K, S>, k: K, c: S) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(&k) {
        Some(existing) => {
            let sum = existing.plus(&c);
            if sum.is_zero() {
                terms.remove(&k);
            } else {
                *existing = sum;
            }
        }
        None => {
            terms.insert(k, c);
        }
    }
}

impl<S: Coefficient> Default for TensorElement<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Coefficient> TensorElement<S> {
    pub fn zero() -> Self {
        TensorElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(a: PbwMonomial, b: PbwMonomial, c: S) -> Self {
        let mut out = Self::zero();
        out.add_term(a, b, c);
        out
    }

    /// `f ⊗ g` expanded over both bases.
    pub fn pure(f: &NcElement<S>, g: &NcElement<S>) -> Self {
        let mut out = Self::zero();
        for (a, ca) in f.terms() {
            for (b, cb) in g.terms() {
                out.add_term(*a, *b, ca.times(cb));
            }
        }
        out
    }

    pub fn add_term(&mut self, a: PbwMonomial, b: PbwMonomial, c: S) {
        accumulate(&mut self.terms, (a, b), c);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(PbwMonomial, PbwMonomial), &S)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, a: &PbwMonomial, b: &PbwMonomial) -> Option<&S> {
        self.terms.get(&(*a, *b))
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

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_term(*a, *b, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_term(*a, *b, c.negated());
        }
        out
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = Self::zero();
        for ((a, b), c) in &self.terms {
            out.add_term(*a, *b, c.times(s));
        }
        out
    }

    pub fn map<T: Coefficient>(&self, f: impl Fn(&S) -> T) -> TensorElement<T> {
        let mut out = TensorElement::zero();
        for ((a, b), c) in &self.terms {
            out.add_term(*a, *b, f(c));
        }
        out
    }

    pub fn eps_valuation(&self) -> Option<i32> {
        self.terms.values().filter_map(|c| c.eps_valuation()).min()
    }

    pub fn display_with(&self, alphabet: &Alphabet) -> String {
        format_linear(self.terms.iter().map(|((a, b), c)| {
            let basis = format!("{} ⊗ {}", a.display_with(alphabet), b.display_with(alphabet));
            (Some(basis), c.to_string())
        }))
    }
}

impl<S: Coefficient> fmt::Display for TensorElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&Alphabet::X))
    }
}

impl<S: Coefficient> Default for Tensor3Element<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Coefficient> Tensor3Element<S> {
    pub fn zero() -> Self {
        Tensor3Element {
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, a: PbwMonomial, b: PbwMonomial, d: PbwMonomial, c: S) {
        accumulate(&mut self.terms, (a, b, d), c);
    }

    pub fn terms(
        &self,
    ) -> impl Iterator<Item = (&(PbwMonomial, PbwMonomial, PbwMonomial), &S)> + '_ {
        self.terms.iter()
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

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((a, b, d), c) in &other.terms {
            out.add_term(*a, *b, *d, c.negated());
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct MonomialWire {
    n1: u32,
    n2: u32,
    n3: u32,
    m: i32,
}

impl From<&PbwMonomial> for MonomialWire {
    fn from(m: &PbwMonomial) -> Self {
        MonomialWire {
            n1: m.n1,
            n2: m.n2,
            n3: m.n3,
            m: m.m,
        }
    }
}

impl From<MonomialWire> for PbwMonomial {
    fn from(w: MonomialWire) -> Self {
        PbwMonomial::new(w.n1, w.n2, w.n3, w.m)
    }
}

#[derive(Serialize, Deserialize)]
struct TensorTermWire<S> {
    left: MonomialWire,
    right: MonomialWire,
    coeff: S,
}

#[derive(Serialize, Deserialize)]
struct TensorWire<S> {
    terms: Vec<TensorTermWire<S>>,
}

impl<S: Coefficient + Serialize> Serialize for TensorElement<S> {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        TensorWire {
            terms: self
                .terms
                .iter()
                .map(|((a, b), c)| TensorTermWire {
                    left: a.into(),
                    right: b.into(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de, S: Coefficient + Deserialize<'de>> Deserialize<'de> for TensorElement<S> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let wire = TensorWire::<S>::deserialize(d)?;
        let mut out = TensorElement::zero();
        for t in wire.terms {
            out.add_term(t.left.into(), t.right.into(), t.coeff);
        }
        Ok(out)
    }
}
