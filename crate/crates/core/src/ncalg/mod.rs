//! The quotient algebra `F`: words in `x1, x2, x3, e^{±x1}`, rewritten to the
//! ordered basis `x1^{n1} x2^{n2} x3^{n3} e^{m x1}`.
//!
//! The rewrite engine is generic over the coefficient ring so the same code
//! drives the one-parameter algebra (coefficients in `ε`) and the
//! two-parameter algebra of [`crate::uhsl2`] (coefficients in `ε, h`).

mod basis;
mod element;
mod rewrite;

use thiserror::Error;

pub use basis::{termination_measure, Alphabet, Generator, PbwMonomial, Word};
pub use element::{FreeElement, NcElement};
pub(crate) use element::format_linear;
pub use rewrite::{RewriteSystem, Rule, RuleScalars, Sign, Strategy};

use crate::series::{rational::int, EpsSeries, Rational, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("the parameter A must be a series in eps^2, got {0}")]
    OddParameter(String),
    #[error("truncation order must be at least 1, got {0}")]
    OrderTooSmall(i32),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Rule scalars of `F` for a given even series `A(ε²)`:
/// shift `2ε`, `[x2,x3] = εA (e^{2x1} − e^{−2x1})`, `q = e^{2ε}`.
pub fn x_rule_scalars(order: i32, a: &EpsSeries) -> Result<RuleScalars<EpsSeries>, AlgebraError> {
    if order < 1 {
        return Err(AlgebraError::OrderTooSmall(order));
    }
    if !a.is_even() {
        return Err(AlgebraError::OddParameter(a.to_string()));
    }
    let a = a.clone().with_order(order);
    let eps = EpsSeries::eps(order);
    Ok(RuleScalars {
        shift: eps.scale(&int(2)),
        sinh_coeff: eps.checked_mul(&a)?,
        q: EpsSeries::exp_series(&int(2), order),
        q_inv: EpsSeries::exp_series(&int(-2), order),
    })
}

/// The algebra `F` at truncation `order` with parameter `A(ε²)`.
pub fn x_system(order: i32, a: &EpsSeries) -> Result<RewriteSystem<EpsSeries>, AlgebraError> {
    Ok(RewriteSystem::new(x_rule_scalars(order, a)?))
}

/// `A(ε²)` from its coefficients `[c0, c2, c4, ...]`.
pub fn a_series(coeffs: &[Rational], order: i32) -> EpsSeries {
    EpsSeries::even_from_coefficients(coeffs, order)
}

/// `F` with the default parameter `A = 4`.
pub fn default_x_system(order: i32) -> RewriteSystem<EpsSeries> {
    x_system(order, &a_series(&[int(4)], order)).expect("constant A is even")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Coefficient;
    use Generator::*;

    const N: i32 = 8;

    fn sys() -> RewriteSystem<EpsSeries> {
        default_x_system(N)
    }

    fn term(c: EpsSeries, m: PbwMonomial) -> NcElement<EpsSeries> {
        NcElement::monomial(m, c)
    }

    fn eps_times(k: i64) -> EpsSeries {
        EpsSeries::term(int(k), 1, N)
    }

    #[test]
    fn rejects_odd_parameter() {
        let odd = EpsSeries::from_coefficients(&[int(4), int(1)], N);
        assert!(matches!(x_system(N, &odd), Err(AlgebraError::OddParameter(_))));
        assert!(matches!(x_system(0, &a_series(&[int(4)], 0)), Err(AlgebraError::OrderTooSmall(0))));
    }

    #[test]
    fn reorders_x2_x1() {
        let s = sys();
        let got = s.normal_form_word(&[X2, X1]);
        let expected = s
            .monomial(PbwMonomial::new(1, 1, 0, 0))
            .add(&term(eps_times(-2), PbwMonomial::of(X2)));
        assert_eq!(got, expected);
    }

    #[test]
    fn ordered_words_are_fixed() {
        let s = sys();
        assert_eq!(s.normal_form_word(&[X1, X2]), s.monomial(PbwMonomial::new(1, 1, 0, 0)));
        assert_eq!(s.normal_form_word(&[]), s.unit());
    }

    #[test]
    fn reorders_x3_x2_into_exponentials() {
        let s = sys();
        let got = s.normal_form_word(&[X3, X2]);
        let expected = s
            .monomial(PbwMonomial::new(0, 1, 1, 0))
            .add(&term(eps_times(-4), PbwMonomial::new(0, 0, 0, 2)))
            .add(&term(eps_times(4), PbwMonomial::new(0, 0, 0, -2)));
        assert_eq!(got, expected);
    }

    #[test]
    fn star_examples() {
        let s = sys();
        let x1 = s.generator(X1);
        assert_eq!(s.star(&x1, &x1), s.monomial(PbwMonomial::new(2, 0, 0, 0)));
        assert_eq!(s.star(&s.generator(EPlus), &s.generator(EMinus)), s.unit());
        let c = s.commutator(&s.generator(X2), &s.generator(X3));
        let expected = term(eps_times(4), PbwMonomial::new(0, 0, 0, 2))
            .add(&term(eps_times(-4), PbwMonomial::new(0, 0, 0, -2)));
        assert_eq!(c, expected);
    }

    #[test]
    fn commutator_examples() {
        let s = sys();
        let [x1, x2, e] = [X1, X2, EPlus].map(|g| s.generator(g));
        assert_eq!(s.commutator(&x1, &x2), term(eps_times(2), PbwMonomial::of(X2)));
        assert!(s.commutator(&x1, &e).is_zero());
        assert!(s.commutator(&x2, &x2).is_zero());
        let x3 = s.generator(X3);
        assert_eq!(s.commutator(&x1, &x3), term(eps_times(-2), PbwMonomial::of(X3)));
    }

    #[test]
    fn exponentials_twist_x2_and_x3() {
        let s = sys();
        let got = s.normal_form_word(&[EPlus, X2]);
        let q = EpsSeries::exp_series(&int(2), N);
        assert_eq!(got, term(q, PbwMonomial::new(0, 1, 0, 1)));
        let got = s.normal_form_word(&[EMinus, X3]);
        assert_eq!(got, term(EpsSeries::exp_series(&int(2), N), PbwMonomial::new(0, 0, 1, -1)));
    }

    #[test]
    fn classical_product_examples() {
        let s = sys();
        let x1x2 = s.monomial(PbwMonomial::new(1, 1, 0, 0));
        assert_eq!(s.generator(X2).classical_mul(&s.generator(X1)), x1x2);
        assert_eq!(s.generator(EPlus).classical_mul(&s.generator(EMinus)), s.unit());
        assert_eq!(
            x1x2.classical_mul(&s.monomial(PbwMonomial::new(0, 0, 0, 2))),
            s.monomial(PbwMonomial::new(1, 1, 0, 2))
        );
    }

    #[test]
    fn eps_flip_examples() {
        let s = sys();
        let a = term(eps_times(2), PbwMonomial::of(X2));
        assert_eq!(s.eps_flip(&a), term(eps_times(-2), PbwMonomial::of(X2)));
        let sq = s.monomial(PbwMonomial::new(2, 0, 0, 0));
        assert_eq!(s.eps_flip(&sq), sq);
        // x1 x2 reflects to x2 x1 = x1 x2 − 2ε x2.
        let x1x2 = s.monomial(PbwMonomial::new(1, 1, 0, 0));
        assert_eq!(
            s.eps_flip(&x1x2),
            x1x2.add(&term(eps_times(-2), PbwMonomial::of(X2)))
        );
        assert_eq!(s.eps_flip(&s.eps_flip(&x1x2)), x1x2);
    }

    #[test]
    fn reversed_words_normalize_to_the_reflection() {
        let s = sys();
        let w = vec![X3, EPlus, X2, X1, EMinus];
        let mut r = w.clone();
        r.reverse();
        assert_eq!(s.normal_form_word(&r), s.eps_flip(&s.normal_form_word(&w)));
    }

    #[test]
    fn classical_limit_of_commutators() {
        let s = sys();
        let c = s.commutator(&s.generator(X2), &s.generator(X3)).eps_coefficient(1);
        // 2 · 4 sinh(2 x1) = 4 (e^{2x1} − e^{−2x1})
        assert_eq!(c.coeff(&PbwMonomial::new(0, 0, 0, 2)).unwrap().constant_term(), int(4));
        assert_eq!(c.coeff(&PbwMonomial::new(0, 0, 0, -2)).unwrap().constant_term(), int(-4));
    }

    #[test]
    fn relations_normalize_to_zero() {
        let s = sys();
        for rule in Rule::ALL {
            assert!(s.normal_form(&s.relation(rule)).is_zero(), "{rule}");
        }
    }

    #[test]
    fn display_and_json() {
        let s = sys();
        let e = s.normal_form_word(&[X2, X1]);
        assert_eq!(e.to_string(), "-2*eps*x2 + x1*x2");
        let q = s.normal_form_word(&[EPlus, X2]);
        assert!(q.to_string().starts_with("(1 + 2*eps + 2*eps^2"));
        let json = serde_json::to_string(&e).unwrap();
        assert_eq!(
            json,
            r#"{"terms":[{"n1":0,"n2":1,"n3":0,"m":0,"coeff":{"terms":[[1,"-2"]],"order":8}},{"n1":1,"n2":1,"n3":0,"m":0,"coeff":{"terms":[[0,"1"]],"order":8}}]}"#
        );
        let back: NcElement<EpsSeries> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, e);
    }
}
