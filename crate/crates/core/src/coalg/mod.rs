//! Coproduct, counit and the bialgebra checks on the quotient algebra.
//!
//! Tensor legs are always in normal form, so an element of `F ⊗ F` is zero
//! exactly when its expansion is empty. That turns the coideal condition
//! `Δ(I) ⊂ I ⊗ F + F ⊗ I` into a decidable emptiness test on the image of a
//! relation.

mod tensor;

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

pub use tensor::{Tensor3Element, TensorElement};

use crate::ncalg::{FreeElement, Generator, NcElement, PbwMonomial, RewriteSystem, Rule};
use crate::series::Coefficient;

/// Lowest `ε`-order at which the quantum coproduct departs from the
/// classical one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum DeformationOrder {
    At(i32),
    /// No difference up to the truncation order.
    Undeformed,
}

impl fmt::Display for DeformationOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeformationOrder::At(k) => write!(f, "{k}"),
            DeformationOrder::Undeformed => write!(f, "inf"),
        }
    }
}

/// The quotient algebra together with its coproduct.
pub struct Bialgebra<S: Coefficient> {
    system: RewriteSystem<S>,
    cache: Mutex<HashMap<PbwMonomial, TensorElement<S>>>,
}

impl<S: Coefficient> Bialgebra<S> {
    pub fn new(system: RewriteSystem<S>) -> Self {
        Bialgebra {
            system,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn system(&self) -> &RewriteSystem<S> {
        &self.system
    }

    fn one(&self) -> S {
        self.system.one().clone()
    }

    pub fn unit_tensor(&self) -> TensorElement<S> {
        TensorElement::basis(PbwMonomial::UNIT, PbwMonomial::UNIT, self.one())
    }

    /// `Δx1 = 1⊗x1 + x1⊗1`, `Δx2 = x2⊗e^{−x1} + e^{x1}⊗x2` (same for `x3`),
    /// `Δe^{±x1} = e^{±x1}⊗e^{±x1}`.
    pub fn generator_coproduct(&self, g: Generator) -> TensorElement<S> {
        let one = self.one();
        let m = PbwMonomial::of(g);
        let e_plus = PbwMonomial::of(Generator::EPlus);
        let e_minus = PbwMonomial::of(Generator::EMinus);
        let mut t = TensorElement::zero();
        match g {
            Generator::X1 => {
                t.add_term(PbwMonomial::UNIT, m, one.clone());
                t.add_term(m, PbwMonomial::UNIT, one);
            }
            Generator::X2 | Generator::X3 => {
                t.add_term(m, e_minus, one.clone());
                t.add_term(e_plus, m, one);
            }
            Generator::EPlus | Generator::EMinus => t.add_term(m, m, one),
        }
        t
    }

    /// Componentwise star product `(a⊗b)(c⊗d) = ac ⊗ bd`.
    pub fn star_tensor(&self, s: &TensorElement<S>, t: &TensorElement<S>) -> TensorElement<S> {
        let mut out = TensorElement::zero();
        for ((a, b), cs) in s.terms() {
            for ((c, d), ct) in t.terms() {
                let scalar = cs.times(ct);
                if scalar.is_zero() {
                    continue;
                }
                let left = self.system.monomial_product(a, c);
                let right = self.system.monomial_product(b, d);
                for (l, cl) in left.terms() {
                    let lc = scalar.times(cl);
                    for (r, cr) in right.terms() {
                        out.add_term(*l, *r, lc.times(cr));
                    }
                }
            }
        }
        out
    }

    /// Coproduct of a word, extended multiplicatively from the letters.
    pub fn coproduct_word(&self, word: &[Generator]) -> TensorElement<S> {
        word.iter().fold(self.unit_tensor(), |acc, &g| {
            self.star_tensor(&acc, &self.generator_coproduct(g))
        })
    }

    pub fn coproduct_monomial(&self, m: &PbwMonomial) -> TensorElement<S> {
        if let Some(hit) = self.cache.lock().ok().and_then(|c| c.get(m).cloned()) {
            return hit;
        }
        let t = self.coproduct_word(&m.word());
        if let Ok(mut cache) = self.cache.lock() {
            cache.insert(*m, t.clone());
        }
        t
    }

    pub fn coproduct(&self, f: &NcElement<S>) -> TensorElement<S> {
        let mut out = TensorElement::zero();
        for (m, c) in f.terms() {
            for ((a, b), d) in self.coproduct_monomial(m).terms() {
                out.add_term(*a, *b, c.times(d));
            }
        }
        out
    }

    /// Coproduct of a free-algebra element, computed word by word without
    /// normal-ordering the input first.
    pub fn coproduct_free(&self, f: &FreeElement<S>) -> TensorElement<S> {
        let mut out = TensorElement::zero();
        for (w, c) in f.terms() {
            for ((a, b), d) in self.coproduct_word(w).terms() {
                out.add_term(*a, *b, c.times(d));
            }
        }
        out
    }

    /// `Δ(lhs − rhs)` of a rule, reduced in `F ⊗ F`. Zero means the relation
    /// lies in a coideal.
    pub fn coideal_check(&self, rule: Rule) -> TensorElement<S> {
        self.coproduct_free(&self.system.relation(rule))
    }

    /// `(Δ⊗id)Δf − (id⊗Δ)Δf`.
    pub fn coassoc_defect(&self, f: &NcElement<S>) -> Tensor3Element<S> {
        let delta = self.coproduct(f);
        let mut left = Tensor3Element::zero();
        let mut right = Tensor3Element::zero();
        for ((a, b), c) in delta.terms() {
            for ((a1, a2), d) in self.coproduct_monomial(a).terms() {
                left.add_term(*a1, *a2, *b, c.times(d));
            }
            for ((b1, b2), d) in self.coproduct_monomial(b).terms() {
                right.add_term(*a, *b1, *b2, c.times(d));
            }
        }
        left.sub(&right)
    }

    /// Counit: `ct(x_i) = 0`, `ct(e^{±x1}) = 1`, multiplicative.
    pub fn counit(&self, f: &NcElement<S>) -> S {
        f.terms()
            .filter(|(m, _)| m.n1 == 0 && m.n2 == 0 && m.n3 == 0)
            .fold(self.one().zero_like(), |acc, (_, c)| acc.plus(c))
    }

    /// Counit of a free-algebra element, letter by letter.
    pub fn counit_free(&self, f: &FreeElement<S>) -> S {
        f.terms()
            .filter(|(w, _)| w.iter().all(|g| g.is_exponential()))
            .fold(self.one().zero_like(), |acc, (_, c)| acc.plus(c))
    }

    /// `((ct⊗id)Δf − f, (id⊗ct)Δf − f)`; both vanish for a counit.
    pub fn counit_defects(&self, f: &NcElement<S>) -> (NcElement<S>, NcElement<S>) {
        let delta = self.coproduct(f);
        let mut left = NcElement::zero();
        let mut right = NcElement::zero();
        for ((a, b), c) in delta.terms() {
            if a.n1 == 0 && a.n2 == 0 && a.n3 == 0 {
                left.add_term(*b, c.clone());
            }
            if b.n1 == 0 && b.n2 == 0 && b.n3 == 0 {
                right.add_term(*a, c.clone());
            }
        }
        (left.sub(f), right.sub(f))
    }

    /// The undeformed coproduct: the generator table extended with the
    /// commutative product on both legs.
    pub fn classical_coproduct(&self, f: &NcElement<S>) -> TensorElement<S> {
        let mut out = TensorElement::zero();
        for (m, c) in f.terms() {
            let t = m.word().iter().fold(self.unit_tensor(), |acc, &g| {
                classical_tensor_mul(&acc, &self.generator_coproduct(g))
            });
            for ((a, b), d) in t.terms() {
                out.add_term(*a, *b, c.times(d));
            }
        }
        out
    }

    /// `Δf − Δ_classical f`.
    pub fn deformation_defect(&self, f: &NcElement<S>) -> TensorElement<S> {
        self.coproduct(f).sub(&self.classical_coproduct(f))
    }

    pub fn deformation_order(&self, f: &NcElement<S>) -> DeformationOrder {
        match self.deformation_defect(f).eps_valuation() {
            Some(k) => DeformationOrder::At(k),
            None => DeformationOrder::Undeformed,
        }
    }
}

fn classical_tensor_mul<S: Coefficient>(s: &TensorElement<S>, t: &TensorElement<S>) -> TensorElement<S> {
    let mut out = TensorElement::zero();
    for ((a, b), cs) in s.terms() {
        for ((c, d), ct) in t.terms() {
            out.add_term(a.classical_mul(c), b.classical_mul(d), cs.times(ct));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::default_x_system;
    use crate::series::{rational::int, EpsSeries};
    use Generator::*;

    const N: i32 = 8;

    fn bialg() -> Bialgebra<EpsSeries> {
        Bialgebra::new(default_x_system(N))
    }

    fn mono(n1: u32, n2: u32, n3: u32, m: i32) -> PbwMonomial {
        PbwMonomial::new(n1, n2, n3, m)
    }

    #[test]
    fn generator_coproducts() {
        let b = bialg();
        let one = EpsSeries::one(N);
        let mut expected = TensorElement::zero();
        expected.add_term(PbwMonomial::UNIT, mono(1, 0, 0, 0), one.clone());
        expected.add_term(mono(1, 0, 0, 0), PbwMonomial::UNIT, one.clone());
        assert_eq!(b.coproduct(&b.system().generator(X1)), expected);
        let e = b.coproduct(&b.system().generator(EPlus));
        assert_eq!(e, TensorElement::basis(mono(0, 0, 0, 1), mono(0, 0, 0, 1), one));
    }

    #[test]
    fn coproduct_of_x2_squared() {
        let b = bialg();
        let x2sq = b.system().monomial(mono(0, 2, 0, 0));
        let got = b.coproduct(&x2sq);
        let one = EpsSeries::one(N);
        let two_cosh = EpsSeries::cosh_series(&int(2), N).scale(&int(2));
        let mut expected = TensorElement::zero();
        expected.add_term(mono(0, 2, 0, 0), mono(0, 0, 0, -2), one.clone());
        expected.add_term(mono(0, 1, 0, 1), mono(0, 1, 0, -1), two_cosh);
        expected.add_term(mono(0, 0, 0, 2), mono(0, 2, 0, 0), one);
        assert_eq!(got, expected);
    }

    #[test]
    fn star_tensor_examples() {
        let b = bialg();
        let one = EpsSeries::one(N);
        let x1 = mono(1, 0, 0, 0);
        let s = TensorElement::basis(x1, PbwMonomial::UNIT, one.clone());
        let t = TensorElement::basis(PbwMonomial::UNIT, x1, one.clone());
        assert_eq!(b.star_tensor(&s, &t), TensorElement::basis(x1, x1, one.clone()));

        let e = TensorElement::basis(mono(0, 0, 0, 1), PbwMonomial::UNIT, one.clone());
        let x2 = TensorElement::basis(mono(0, 1, 0, 0), PbwMonomial::UNIT, one.clone());
        let q = EpsSeries::exp_series(&int(2), N);
        assert_eq!(
            b.star_tensor(&e, &x2),
            TensorElement::basis(mono(0, 1, 0, 1), PbwMonomial::UNIT, q)
        );
        let any = b.coproduct(&b.system().monomial(mono(1, 1, 1, -1)));
        assert_eq!(b.star_tensor(&b.unit_tensor(), &any), any);
    }

    #[test]
    fn every_relation_is_coideal() {
        let b = bialg();
        for rule in Rule::ALL {
            assert!(b.coideal_check(rule).is_zero(), "{rule}");
        }
    }

    #[test]
    fn a_non_relation_is_not_killed() {
        let b = bialg();
        let w = FreeElement::word(vec![X2, X1], EpsSeries::one(N));
        assert!(!b.coproduct_free(&w).is_zero());
    }

    #[test]
    fn coassociativity_examples() {
        let b = bialg();
        let s = b.system();
        let x1 = s.generator(X1);
        assert!(b.coassoc_defect(&x1).is_zero());
        assert!(b.coassoc_defect(&s.generator(EPlus)).is_zero());
        let x2x3 = s.star(&s.generator(X2), &s.generator(X3));
        assert!(b.coassoc_defect(&x2x3).is_zero());
    }

    #[test]
    fn counit_examples() {
        let b = bialg();
        let s = b.system();
        assert!(b.counit(&s.generator(X2)).is_zero());
        assert_eq!(b.counit(&s.monomial(mono(0, 0, 0, 2))), EpsSeries::one(N));
        let r3 = s.relation(Rule::X3X2);
        assert!(b.counit_free(&r3).is_zero());
        let (l, r) = b.counit_defects(&s.monomial(mono(1, 2, 1, -2)));
        assert!(l.is_zero() && r.is_zero());
    }

    #[test]
    fn deformation_orders() {
        let b = bialg();
        let s = b.system();
        let x2sq = s.star(&s.generator(X2), &s.generator(X2));
        assert_eq!(b.deformation_order(&x2sq), DeformationOrder::At(2));
        assert_eq!(b.deformation_order(&s.generator(X1)), DeformationOrder::Undeformed);
        assert_eq!(b.deformation_order(&s.generator(EPlus)), DeformationOrder::Undeformed);
    }

    #[test]
    fn tensor_json_shape() {
        let t = TensorElement::basis(mono(0, 1, 0, 0), mono(0, 0, 0, -1), EpsSeries::one(2));
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(
            json,
            r#"{"terms":[{"left":{"n1":0,"n2":1,"n3":0,"m":0},"right":{"n1":0,"n2":0,"n3":0,"m":-1},"coeff":{"terms":[[0,"1"]],"order":2}}]}"#
        );
        let back: TensorElement<EpsSeries> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
    }
}
