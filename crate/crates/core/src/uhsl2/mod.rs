//! The quantum group `U_h(sl(2,R))` inside the quantized algebra, and the
//! two-parameter form with generators `ξ1, ξ2, ξ3, Ê± = e^{±hξ1/2}`.
//!
//! With `h = 2ε` the generators `z1 = x1/ε`, `z2 = x2/λ`, `z3 = x3/λ` satisfy
//! the `U_h(sl2)` relations, where `λ² = 2εA sinh(2ε)`. The checks use `λ²`
//! directly, so no square root is needed unless generators are rescaled
//! one at a time.

mod limits;
mod xi;

use thiserror::Error;

use crate::coalg::{Bialgebra, TensorElement};
use crate::ncalg::{x_system, AlgebraError, Generator, NcElement, PbwMonomial, RewriteSystem};
use crate::series::rational::int;
use crate::series::{EpsSeries, SeriesError};

pub use crate::report::{RelationCheck, VerificationReport};
pub use limits::{limit_eps_to_zero, limit_eps_to_zero_tensor, limit_h_to_zero, limit_h_to_zero_tensor, limits_report};
pub use xi::{
    specialization_report, specialize_eps_one, xi_algebra_build, xi_bialgebra_report, xi_relations_report,
    xi_rule_scalars, z_rule_scalars_in_h, XiAlgebra,
};

/// Extra `ε`-orders used when a Laurent inverse is involved; results are
/// truncated back to the requested order.
pub const WORKING_MARGIN: i32 = 4;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum UhError {
    #[error("pole at h = 0 remains in {0}")]
    PoleAtHZero(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// `λ² = 2εA(ε²) sinh(2ε)`.
pub fn lambda_squared(order: i32, a: &EpsSeries) -> Result<EpsSeries, UhError> {
    let a = a.clone().with_order(order);
    let two_eps = EpsSeries::term(int(2), 1, order);
    Ok(two_eps.checked_mul(&a)?.checked_mul(&EpsSeries::sinh_series(&int(2), order))?)
}

/// Scale factors `x_i = λ_i z_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSubstitution {
    pub lambda1: EpsSeries,
    pub lambda2: EpsSeries,
    pub lambda3: EpsSeries,
}

impl GeneratorSubstitution {
    /// `λ1 = ε`, `λ2 = λ3 = √λ²`. Needs `A(0)` to be a rational square.
    pub fn standard(order: i32, a: &EpsSeries) -> Result<Self, UhError> {
        // the root loses one order, so compute one higher
        let lambda = lambda_squared(order + 1, a)?.sqrt()?.with_order(order);
        Ok(GeneratorSubstitution {
            lambda1: EpsSeries::eps(order),
            lambda2: lambda.clone(),
            lambda3: lambda,
        })
    }

    /// Inverse with room for products of two rescaled generators.
    fn inverse(s: &EpsSeries) -> Result<EpsSeries, UhError> {
        let v = s.valuation().unwrap_or(0);
        Ok(s.clone().with_floor(-2 * v).invert()?)
    }

    pub fn z(&self, sys: &RewriteSystem<EpsSeries>, g: Generator) -> Result<NcElement<EpsSeries>, UhError> {
        let x = sys.generator(g);
        let scale = match g {
            Generator::X1 => Self::inverse(&self.lambda1)?,
            Generator::X2 => Self::inverse(&self.lambda2)?,
            Generator::X3 => Self::inverse(&self.lambda3)?,
            _ => return Ok(x),
        };
        Ok(x.scale(&scale))
    }
}

fn truncate(e: &NcElement<EpsSeries>, order: i32) -> NcElement<EpsSeries> {
    e.map(|c| c.clone().with_order(order))
}

fn truncate_tensor(t: &TensorElement<EpsSeries>, order: i32) -> TensorElement<EpsSeries> {
    t.map(|c| c.clone().with_order(order))
}

fn compare(name: &str, lhs: &NcElement<EpsSeries>, rhs: &NcElement<EpsSeries>, order: i32) -> RelationCheck {
    let diff = truncate(&lhs.sub(rhs), order);
    let detail = if diff.is_zero() { truncate(lhs, order).to_string() } else { diff.to_string() };
    RelationCheck::new(name, diff.is_zero(), detail)
}

/// The `U_h(sl2)` relations for `z_i`, checked in the `x`-presentation with
/// `h = 2ε` and `e^{hz1/2} = e^{x1}`.
pub fn z_commutators(order: i32, a: &EpsSeries) -> Result<VerificationReport, UhError> {
    use Generator::*;
    let w = order + WORKING_MARGIN;
    let sys = x_system(w, &a.clone().with_order(w))?;
    let g = |x| sys.generator(x);
    let eps = EpsSeries::eps(w);
    let mut report = VerificationReport::default();

    report.push(compare(
        "[z1,z2] = 2 z2",
        &sys.commutator(&g(X1), &g(X2)),
        &g(X2).scale(&eps.scale(&int(2))),
        order,
    ));
    report.push(compare(
        "[z1,z3] = -2 z3",
        &sys.commutator(&g(X1), &g(X3)),
        &g(X3).scale(&eps.scale(&int(-2))),
        order,
    ));

    let inv_lambda2 = lambda_squared(w, a)?.with_floor(-2).invert()?;
    let inv_two_sinh = EpsSeries::sinh_series(&int(2), w).scale(&int(2)).with_floor(-1).invert()?;
    let e2 = sys.monomial(PbwMonomial::new(0, 0, 0, 2));
    let em2 = sys.monomial(PbwMonomial::new(0, 0, 0, -2));
    report.push(compare(
        "[z2,z3] = sinh(h z1)/sinh(h)",
        &sys.commutator(&g(X2), &g(X3)).scale(&inv_lambda2),
        &e2.sub(&em2).scale(&inv_two_sinh),
        order,
    ));

    for (e, name) in [(EPlus, "[z1, e^{hz1/2}] = 0"), (EMinus, "[z1, e^{-hz1/2}] = 0")] {
        report.push(compare(name, &sys.commutator(&g(X1), &g(e)), &NcElement::zero(), order));
    }
    let q = |k: i64| EpsSeries::exp_series(&int(k), w);
    let twists = [
        (EPlus, X2, 2, "e^{hz1/2} z2 = e^{h} z2 e^{hz1/2}"),
        (EMinus, X2, -2, "e^{-hz1/2} z2 = e^{-h} z2 e^{-hz1/2}"),
        (EPlus, X3, -2, "e^{hz1/2} z3 = e^{-h} z3 e^{hz1/2}"),
        (EMinus, X3, 2, "e^{-hz1/2} z3 = e^{h} z3 e^{-hz1/2}"),
    ];
    for (e, x, k, name) in twists {
        let lhs = sys.star(&g(e), &g(x));
        let rhs = sys.star(&g(x), &g(e)).scale(&q(k));
        report.push(compare(name, &lhs, &rhs, order));
    }
    report.push(compare(
        "e^{hz1/2} e^{-hz1/2} = 1",
        &sys.star(&g(EPlus), &g(EMinus)),
        &sys.unit(),
        order,
    ));
    Ok(report)
}

/// The coproduct table keeps its form under `x_i = λ_i z_i`.
pub fn z_coproducts(order: i32, a: &EpsSeries) -> Result<VerificationReport, UhError> {
    use Generator::*;
    let w = order + WORKING_MARGIN;
    let bialg = Bialgebra::new(x_system(w, &a.clone().with_order(w))?);
    let sys = bialg.system();
    let sub = GeneratorSubstitution::standard(w, a)?;
    let e_plus = PbwMonomial::of(EPlus);
    let e_minus = PbwMonomial::of(EMinus);
    let mut report = VerificationReport::default();

    let pure = |f: &NcElement<EpsSeries>, m: PbwMonomial, left: bool| {
        let mut t = TensorElement::zero();
        for (fm, c) in f.terms() {
            if left {
                t.add_term(*fm, m, c.clone());
            } else {
                t.add_term(m, *fm, c.clone());
            }
        }
        t
    };
    let mut check = |name: &str, got: TensorElement<EpsSeries>, want: TensorElement<EpsSeries>| {
        let diff = truncate_tensor(&got.sub(&want), order);
        let detail = if diff.is_zero() { truncate_tensor(&got, order).to_string() } else { diff.to_string() };
        report.push(RelationCheck::new(name, diff.is_zero(), detail));
    };

    let z1 = sub.z(sys, X1)?;
    check(
        "Δz1 = 1⊗z1 + z1⊗1",
        bialg.coproduct(&z1),
        pure(&z1, PbwMonomial::UNIT, false).add(&pure(&z1, PbwMonomial::UNIT, true)),
    );
    for (x, name) in [
        (X2, "Δz2 = z2⊗e^{-hz1/2} + e^{hz1/2}⊗z2"),
        (X3, "Δz3 = z3⊗e^{-hz1/2} + e^{hz1/2}⊗z3"),
    ] {
        let z = sub.z(sys, x)?;
        check(
            name,
            bialg.coproduct(&z),
            pure(&z, e_minus, true).add(&pure(&z, e_plus, false)),
        );
    }
    for (e, name) in [
        (e_plus, "Δe^{hz1/2} = e^{hz1/2}⊗e^{hz1/2}"),
        (e_minus, "Δe^{-hz1/2} = e^{-hz1/2}⊗e^{-hz1/2}"),
    ] {
        check(name, bialg.coproduct(&sys.monomial(e)), TensorElement::basis(e, e, sys.one().clone()));
    }
    let z2z3 = sys.star(&sub.z(sys, X2)?, &sub.z(sys, X3)?);
    let (l, r) = bialg.counit_defects(&z2z3);
    report.push(RelationCheck::new(
        "counit axioms on z2 z3",
        truncate(&l, order).is_zero() && truncate(&r, order).is_zero(),
        format!("{}; {}", truncate(&l, order), truncate(&r, order)),
    ));
    Ok(report)
}

/// The default `A = 4`.
pub fn default_a(order: i32) -> EpsSeries {
    EpsSeries::constant(int(4), order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::a_series;
    use crate::series::rational::rat;

    #[test]
    fn z_relations_hold() {
        for order in [4, 8] {
            let report = z_commutators(order, &default_a(order)).unwrap();
            assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
        }
        let a = a_series(&[int(4), rat(-3, 5), int(2)], 8);
        assert!(z_commutators(8, &a).unwrap().passed());
    }

    #[test]
    fn z_commutator_value() {
        let report = z_commutators(4, &default_a(4)).unwrap();
        let c = report.checks.iter().find(|c| c.name.starts_with("[z2,z3]")).unwrap();
        assert_eq!(c.detail, "(-1/4*eps^-1 + 1/6*eps - 7/90*eps^3)*e-^2 + (1/4*eps^-1 - 1/6*eps + 7/90*eps^3)*e+^2");
    }

    #[test]
    fn z_coproducts_hold() {
        let report = z_coproducts(6, &default_a(6)).unwrap();
        assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
        let a = a_series(&[int(9), int(1)], 6);
        assert!(z_coproducts(6, &a).unwrap().passed());
        assert!(z_coproducts(6, &a_series(&[int(2)], 6)).is_err());
    }

    #[test]
    fn substitution_squares_to_lambda_squared() {
        let order = 7;
        let sub = GeneratorSubstitution::standard(order, &default_a(order)).unwrap();
        let sq = &sub.lambda2 * &sub.lambda3;
        assert_eq!(sq, lambda_squared(order, &default_a(order)).unwrap());
        assert_eq!(sub.lambda2.coeff(1), int(4));
    }

    #[test]
    fn a_wrong_inverse_twist_is_detected() {
        // e^{x1} x3 = e^{+2ε} x3 e^{x1} contradicts [z1,z3] = -2 z3
        let order = 4;
        let w = order + WORKING_MARGIN;
        let sys = crate::ncalg::default_x_system(w);
        let lhs = sys.star(&sys.generator(Generator::EPlus), &sys.generator(Generator::X3));
        let rhs = sys
            .star(&sys.generator(Generator::X3), &sys.generator(Generator::EPlus))
            .scale(&EpsSeries::exp_series(&int(2), w));
        assert!(!compare("wrong", &lhs, &rhs, order).holds);
    }
}
