//! The oriented relations of the quotient and the normal-ordering engine.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::basis::{termination_measure, Generator, PbwMonomial, Word};
use super::element::{FreeElement, NcElement};
use crate::series::Coefficient;

use Generator::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn exponential(self) -> Generator {
        match self {
            Sign::Plus => EPlus,
            Sign::Minus => EMinus,
        }
    }

    fn suffix(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

/// One oriented rewrite rule; the left side is always a length-2 word that
/// is out of PBW order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    /// `x2 x1 → x1 x2 − 2ε x2`
    X2X1,
    /// `x3 x1 → x1 x3 + 2ε x3`
    X3X1,
    /// `x3 x2 → x2 x3 − s (e^{2x1} − e^{−2x1})`
    X3X2,
    /// `e^{±x1} x1 → x1 e^{±x1}`
    ExpX1(Sign),
    /// `e^{±x1} x2 → q^{±1} x2 e^{±x1}`
    ExpX2(Sign),
    /// `e^{±x1} x3 → q^{∓1} x3 e^{±x1}`
    ExpX3(Sign),
    /// `e^{±x1} e^{∓x1} → 1`
    ExpInverse(Sign),
}

impl Rule {
    /// Every oriented rule, including both orientations of `e^{±x1} e^{∓x1}`.
    pub const ALL: [Rule; 11] = [
        Rule::X2X1,
        Rule::X3X1,
        Rule::X3X2,
        Rule::ExpX1(Sign::Plus),
        Rule::ExpX1(Sign::Minus),
        Rule::ExpX2(Sign::Plus),
        Rule::ExpX2(Sign::Minus),
        Rule::ExpX3(Sign::Plus),
        Rule::ExpX3(Sign::Minus),
        Rule::ExpInverse(Sign::Plus),
        Rule::ExpInverse(Sign::Minus),
    ];

    pub fn lhs(self) -> [Generator; 2] {
        match self {
            Rule::X2X1 => [X2, X1],
            Rule::X3X1 => [X3, X1],
            Rule::X3X2 => [X3, X2],
            Rule::ExpX1(s) => [s.exponential(), X1],
            Rule::ExpX2(s) => [s.exponential(), X2],
            Rule::ExpX3(s) => [s.exponential(), X3],
            Rule::ExpInverse(Sign::Plus) => [EPlus, EMinus],
            Rule::ExpInverse(Sign::Minus) => [EMinus, EPlus],
        }
    }

    /// The rule whose left side is `a b`, if that pair is reducible.
    pub fn matching(a: Generator, b: Generator) -> Option<Rule> {
        let sign = |g| if g == EPlus { Sign::Plus } else { Sign::Minus };
        match (a, b) {
            (X2, X1) => Some(Rule::X2X1),
            (X3, X1) => Some(Rule::X3X1),
            (X3, X2) => Some(Rule::X3X2),
            (e, X1) if e.is_exponential() => Some(Rule::ExpX1(sign(e))),
            (e, X2) if e.is_exponential() => Some(Rule::ExpX2(sign(e))),
            (e, X3) if e.is_exponential() => Some(Rule::ExpX3(sign(e))),
            (EPlus, EMinus) => Some(Rule::ExpInverse(Sign::Plus)),
            (EMinus, EPlus) => Some(Rule::ExpInverse(Sign::Minus)),
            _ => None,
        }
    }

    pub fn label(self) -> String {
        match self {
            Rule::X2X1 => "R1".into(),
            Rule::X3X1 => "R2".into(),
            Rule::X3X2 => "R3".into(),
            Rule::ExpX1(s) => format!("R4{}", s.suffix()),
            Rule::ExpX2(s) => format!("R5{}", s.suffix()),
            Rule::ExpX3(s) => format!("R6{}", s.suffix()),
            Rule::ExpInverse(s) => format!("R7{}", s.suffix()),
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// The scalars that parameterize the rule set.
#[derive(Clone, Debug, PartialEq)]
pub struct RuleScalars<S> {
    /// `[x1, x2] = shift · x2` and `[x1, x3] = −shift · x3`.
    pub shift: S,
    /// `[x2, x3] = sinh_coeff · (e^{2x1} − e^{−2x1})`.
    pub sinh_coeff: S,
    /// `e^{x1} x2 = q · x2 e^{x1}`.
    pub q: S,
    /// The inverse of `q`.
    pub q_inv: S,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
    /// Picks a uniformly random redex at every step.
    Random(u64),
}

/// Rewrite system for the quotient algebra. Immutable once built; the
/// internal cache only memoizes normal forms of words.
pub struct RewriteSystem<S: Coefficient> {
    scalars: RuleScalars<S>,
    one: S,
    cache: Mutex<HashMap<Word, NcElement<S>>>,
}

impl<S: Coefficient> Clone for RewriteSystem<S> {
    fn clone(&self) -> Self {
        RewriteSystem::new(self.scalars.clone())
    }
}

impl<S: Coefficient> fmt::Debug for RewriteSystem<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RewriteSystem")
            .field("scalars", &self.scalars)
            .finish()
    }
}

impl<S: Coefficient> RewriteSystem<S> {
    pub fn new(scalars: RuleScalars<S>) -> Self {
        let one = scalars.q.one_like();
        RewriteSystem {
            scalars,
            one,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn scalars(&self) -> &RuleScalars<S> {
        &self.scalars
    }

    /// The scalar `1` with this system's truncation settings.
    pub fn one(&self) -> &S {
        &self.one
    }

    pub fn constant(&self, r: crate::series::Rational) -> S {
        self.one.rational_like(r)
    }

    pub fn unit(&self) -> NcElement<S> {
        NcElement::monomial(PbwMonomial::UNIT, self.one.clone())
    }

    pub fn generator(&self, g: Generator) -> NcElement<S> {
        NcElement::monomial(PbwMonomial::of(g), self.one.clone())
    }

    pub fn scalar(&self, s: S) -> NcElement<S> {
        NcElement::monomial(PbwMonomial::UNIT, s)
    }

    pub fn monomial(&self, m: PbwMonomial) -> NcElement<S> {
        NcElement::monomial(m, self.one.clone())
    }

    /// Right-hand side of a rule as `(coefficient, word)` pairs.
    pub fn rhs(&self, rule: Rule) -> Vec<(S, Word)> {
        let one = self.one.clone();
        let s = &self.scalars;
        match rule {
            Rule::X2X1 => vec![(one, vec![X1, X2]), (s.shift.negated(), vec![X2])],
            Rule::X3X1 => vec![(one, vec![X1, X3]), (s.shift.clone(), vec![X3])],
            Rule::X3X2 => vec![
                (one, vec![X2, X3]),
                (s.sinh_coeff.negated(), vec![EPlus, EPlus]),
                (s.sinh_coeff.clone(), vec![EMinus, EMinus]),
            ],
            Rule::ExpX1(sign) => vec![(one, vec![X1, sign.exponential()])],
            Rule::ExpX2(Sign::Plus) => vec![(s.q.clone(), vec![X2, EPlus])],
            Rule::ExpX2(Sign::Minus) => vec![(s.q_inv.clone(), vec![X2, EMinus])],
            Rule::ExpX3(Sign::Plus) => vec![(s.q_inv.clone(), vec![X3, EPlus])],
            Rule::ExpX3(Sign::Minus) => vec![(s.q.clone(), vec![X3, EMinus])],
            Rule::ExpInverse(_) => vec![(one, vec![])],
        }
    }

    /// The relation `lhs − rhs` as a free-algebra element; these generate the
    /// ideal that is divided out.
    pub fn relation(&self, rule: Rule) -> FreeElement<S> {
        let mut out = FreeElement::word(rule.lhs().to_vec(), self.one.clone());
        for (c, w) in self.rhs(rule) {
            out.add_term(w, c.negated());
        }
        out
    }

    /// Positions `i` where `word[i] word[i+1]` is a rule's left side.
    pub fn redexes(word: &[Generator]) -> Vec<usize> {
        (0..word.len().saturating_sub(1))
            .filter(|&i| Rule::matching(word[i], word[i + 1]).is_some())
            .collect()
    }

    pub fn is_irreducible(word: &[Generator]) -> bool {
        Self::redexes(word).is_empty()
    }

    /// One rewrite step at position `i`, or `None` if nothing matches there.
    pub fn rewrite_at(&self, word: &[Generator], i: usize) -> Option<Vec<(S, Word)>> {
        let rule = Rule::matching(*word.get(i)?, *word.get(i + 1)?)?;
        let out: Vec<(S, Word)> = self
            .rhs(rule)
            .into_iter()
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, middle)| {
                let mut w = Vec::with_capacity(word.len());
                w.extend_from_slice(&word[..i]);
                w.extend(middle);
                w.extend_from_slice(&word[i + 2..]);
                (c, w)
            })
            .collect();
        if cfg!(debug_assertions) {
            let before = termination_measure(word);
            for (_, w) in &out {
                debug_assert!(
                    termination_measure(w) < before,
                    "rule {rule} did not decrease the termination measure"
                );
            }
        }
        Some(out)
    }

    pub fn normal_form_word(&self, word: &[Generator]) -> NcElement<S> {
        Normalizer::new(self, Strategy::Leftmost).word(word)
    }

    pub fn normal_form(&self, f: &FreeElement<S>) -> NcElement<S> {
        self.normal_form_with(f, Strategy::Leftmost)
    }

    pub fn normal_form_with(&self, f: &FreeElement<S>, strategy: Strategy) -> NcElement<S> {
        let mut nz = Normalizer::new(self, strategy);
        let mut out = NcElement::zero();
        for (w, c) in f.terms() {
            for (m, d) in nz.word(w).terms() {
                out.add_term(*m, c.times(d));
            }
        }
        out
    }

    /// Normal form of the concatenation `a · b` of two basis monomials.
    pub fn monomial_product(&self, a: &PbwMonomial, b: &PbwMonomial) -> NcElement<S> {
        let mut w = a.word();
        w.extend(b.word());
        self.normal_form_word(&w)
    }

    /// The star product on normal-form elements.
    pub fn star(&self, f: &NcElement<S>, g: &NcElement<S>) -> NcElement<S> {
        let mut out = NcElement::zero();
        for (ma, ca) in f.terms() {
            for (mb, cb) in g.terms() {
                let c = ca.times(cb);
                if c.is_zero() {
                    continue;
                }
                for (m, d) in self.monomial_product(ma, mb).terms() {
                    out.add_term(*m, c.times(d));
                }
            }
        }
        out
    }

    pub fn commutator(&self, f: &NcElement<S>, g: &NcElement<S>) -> NcElement<S> {
        self.star(f, g).sub(&self.star(g, f))
    }

    pub fn power(&self, f: &NcElement<S>, n: u32) -> NcElement<S> {
        (0..n).fold(self.unit(), |acc, _| self.star(&acc, f))
    }

    /// The `ε`-reflection: the anti-automorphism that fixes every generator
    /// and sends `ε ↦ −ε`. On the ordered basis it reverses each monomial's
    /// word before re-normalizing.
    pub fn eps_flip(&self, f: &NcElement<S>) -> NcElement<S> {
        self.normal_form(&FreeElement::from_element(f).reverse_flip())
    }

    /// Number of memoized word normal forms.
    pub fn cache_len(&self) -> usize {
        self.cache.lock().map(|c| c.len()).unwrap_or(0)
    }
}

struct Normalizer<'a, S: Coefficient> {
    system: &'a RewriteSystem<S>,
    strategy: Strategy,
    rng: ChaCha8Rng,
    memo: HashMap<Word, NcElement<S>>,
}

impl<'a, S: Coefficient> Normalizer<'a, S> {
    fn new(system: &'a RewriteSystem<S>, strategy: Strategy) -> Self {
        let seed = match strategy {
            Strategy::Random(seed) => seed,
            _ => 0,
        };
        Normalizer {
            system,
            strategy,
            rng: ChaCha8Rng::seed_from_u64(seed),
            memo: HashMap::new(),
        }
    }

    fn shared(&self) -> bool {
        self.strategy == Strategy::Leftmost
    }

    fn word(&mut self, word: &[Generator]) -> NcElement<S> {
        if let Some(hit) = self.memo.get(word) {
            return hit.clone();
        }
        if self.shared() {
            if let Some(hit) = self.system.cache.lock().ok().and_then(|c| c.get(word).cloned()) {
                return hit;
            }
        }
        let redexes = RewriteSystem::<S>::redexes(word);
        let result = match self.pick(&redexes) {
            None => {
                let m = PbwMonomial::from_ordered_word(word)
                    .expect("irreducible words are ordered monomials");
                NcElement::monomial(m, self.system.one.clone())
            }
            Some(i) => {
                let mut out = NcElement::zero();
                for (c, w) in self.system.rewrite_at(word, i).unwrap_or_default() {
                    for (m, d) in self.word(&w).terms() {
                        out.add_term(*m, c.times(d));
                    }
                }
                out
            }
        };
        if self.shared() {
            if let Ok(mut cache) = self.system.cache.lock() {
                cache.insert(word.to_vec(), result.clone());
            }
        } else {
            self.memo.insert(word.to_vec(), result.clone());
        }
        result
    }

    fn pick(&mut self, redexes: &[usize]) -> Option<usize> {
        match self.strategy {
            Strategy::Leftmost => redexes.first().copied(),
            Strategy::Rightmost => redexes.last().copied(),
            Strategy::Random(_) => redexes.choose(&mut self.rng).copied(),
        }
    }
}
