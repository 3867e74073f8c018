use crate::coalg::Bialgebra;
use crate::ncalg::{Alphabet, FreeElement, Generator, NcElement, PbwMonomial, RewriteSystem, Rule, RuleScalars, Strategy};
use crate::series::rational::{int, rat};
use crate::series::{BiSeries, EpsSeries};

use super::{RelationCheck, UhError, VerificationReport};

/// The two-parameter algebra: a rewrite system over `BiSeries` scalars
/// together with its coproduct.
pub struct XiAlgebra {
    order: i32,
    bialgebra: Bialgebra<BiSeries>,
}

impl XiAlgebra {
    pub fn order(&self) -> i32 {
        self.order
    }

    pub fn system(&self) -> &RewriteSystem<BiSeries> {
        self.bialgebra.system()
    }

    pub fn bialgebra(&self) -> &Bialgebra<BiSeries> {
        &self.bialgebra
    }

    pub fn xi(&self, g: Generator) -> NcElement<BiSeries> {
        self.system().generator(g)
    }

    pub fn display(&self, e: &NcElement<BiSeries>) -> String {
        e.display_with(&Alphabet::XI)
    }
}

/// `1/(2 sinh t)` as a Laurent series in one variable, exact to `order`.
fn inv_two_sinh(order: i32) -> Result<EpsSeries, UhError> {
    let sinh = EpsSeries::sinh_series(&int(1), order + 2).with_floor(-1);
    Ok(sinh.invert()?.with_order(order).scale(&rat(1, 2)).with_floor(-order))
}

/// Shift `2ε`, commutator coefficient `ε/(2 sinh h)`, twists `e^{±εh}`.
///
/// Each scalar has total degree `≥ 0`, so truncation by total degree keeps
/// every product exact. A product of `k` commutator corrections carries
/// `ε^k h^{-k}`, hence the `h`-floor of `-order`.
pub fn xi_rule_scalars(order: i32) -> Result<RuleScalars<BiSeries>, UhError> {
    let inv = BiSeries::from_h(&inv_two_sinh(order)?, order);
    let sinh_coeff = BiSeries::eps(order).checked_mul(&inv)?.with_h_floor(-order);
    Ok(RuleScalars {
        shift: BiSeries::eps(order).scale(&int(2)),
        sinh_coeff,
        q: BiSeries::exp_eps_h(&int(1), order),
        q_inv: BiSeries::exp_eps_h(&int(-1), order),
    })
}

pub fn xi_algebra_build(order: i32) -> Result<XiAlgebra, UhError> {
    if order < 1 {
        return Err(crate::ncalg::AlgebraError::OrderTooSmall(order).into());
    }
    Ok(XiAlgebra {
        order,
        bialgebra: Bialgebra::new(RewriteSystem::new(xi_rule_scalars(order)?)),
    })
}

/// The `U_h(sl2)` scalars as series in `h`: shift 2, `1/(2 sinh h)`, `e^{±h}`.
pub fn z_rule_scalars_in_h(order: i32) -> Result<RuleScalars<EpsSeries>, UhError> {
    Ok(RuleScalars {
        shift: EpsSeries::constant(int(2), order),
        sinh_coeff: inv_two_sinh(order)?,
        q: EpsSeries::exp_series(&int(1), order),
        q_inv: EpsSeries::exp_series(&int(-1), order),
    })
}

/// Sets `ε = 1`, keeping `h`-degrees up to `hmax`. Only meaningful when every
/// contributing `ε^i h^j` with `j ≤ hmax` lies within the truncation.
pub fn specialize_eps_one(c: &BiSeries, hmax: i32) -> EpsSeries {
    EpsSeries::from_terms(
        c.terms().filter(|((_, j), _)| *j <= hmax).map(|((_, j), v)| (j, v.clone())),
        hmax,
    )
}

fn check_eq(name: &str, xi: &XiAlgebra, lhs: &NcElement<BiSeries>, rhs: &NcElement<BiSeries>) -> RelationCheck {
    let diff = lhs.sub(rhs);
    let detail = if diff.is_zero() { xi.display(lhs) } else { xi.display(&diff) };
    RelationCheck::new(name, diff.is_zero(), detail)
}

pub fn xi_relations_report(xi: &XiAlgebra) -> VerificationReport {
    use Generator::*;
    let sys = xi.system();
    let n = xi.order();
    let g = |x| sys.generator(x);
    let eps = BiSeries::eps(n);
    let mut report = VerificationReport::default();

    let nf = sys.normal_form_word(&[X2, X1]);
    let want = sys
        .monomial(PbwMonomial::new(1, 1, 0, 0))
        .add(&g(X2).scale(&eps.scale(&int(-2))));
    report.push(check_eq("xi2 xi1 = xi1 xi2 - 2 eps xi2", xi, &nf, &want));
    report.push(check_eq(
        "[xi1,xi2] = 2 eps xi2",
        xi,
        &sys.commutator(&g(X1), &g(X2)),
        &g(X2).scale(&eps.scale(&int(2))),
    ));
    report.push(check_eq(
        "[xi1,xi3] = -2 eps xi3",
        xi,
        &sys.commutator(&g(X1), &g(X3)),
        &g(X3).scale(&eps.scale(&int(-2))),
    ));
    let sinh_h = BiSeries::from_h(&EpsSeries::sinh_series(&int(1), n), n).scale(&int(2));
    let e2 = sys.monomial(PbwMonomial::new(0, 0, 0, 2));
    let em2 = sys.monomial(PbwMonomial::new(0, 0, 0, -2));
    // [ξ2,ξ3]·2 sinh h = ε(Ê² − Ê⁻²), avoiding a second inversion
    report.push(check_eq(
        "[xi2,xi3] = eps sinh(h xi1)/sinh(h)",
        xi,
        &sys.commutator(&g(X2), &g(X3)).scale(&sinh_h),
        &e2.sub(&em2).scale(&eps),
    ));
    let q = |k: i64| BiSeries::exp_eps_h(&int(k), n);
    for (e, x, k, name) in [
        (EPlus, X2, 1, "E+ xi2 = e^{eps h} xi2 E+"),
        (EMinus, X2, -1, "E- xi2 = e^{-eps h} xi2 E-"),
        (EPlus, X3, -1, "E+ xi3 = e^{-eps h} xi3 E+"),
        (EMinus, X3, 1, "E- xi3 = e^{eps h} xi3 E-"),
    ] {
        let lhs = sys.star(&g(e), &g(x));
        let rhs = sys.star(&g(x), &g(e)).scale(&q(k));
        report.push(check_eq(name, xi, &lhs, &rhs));
    }
    report.push(check_eq("E+ E- = 1", xi, &sys.star(&g(EPlus), &g(EMinus)), &sys.unit()));
    report
}

fn sample_elements(sys: &RewriteSystem<BiSeries>) -> Vec<NcElement<BiSeries>> {
    use Generator::*;
    let mut out: Vec<_> = Generator::ALL.iter().map(|&g| sys.generator(g)).collect();
    out.push(sys.normal_form_word(&[X3, X2]));
    out.push(sys.normal_form_word(&[X3, X2, X1]));
    out.push(sys.normal_form_word(&[EPlus, X3, X2]));
    out
}

/// Coideal, coassociativity, counit, strategy independence and
/// associativity, all over `BiSeries` scalars.
pub fn xi_bialgebra_report(xi: &XiAlgebra) -> VerificationReport {
    use Generator::*;
    let b = xi.bialgebra();
    let sys = xi.system();
    let mut report = VerificationReport::default();
    for rule in Rule::ALL {
        let t = b.coideal_check(rule);
        report.push(RelationCheck::new(format!("coideal {rule}"), t.is_zero(), t.to_string()));
    }
    for (i, f) in sample_elements(sys).iter().enumerate() {
        let label = xi.display(f);
        let d = b.coassoc_defect(f);
        report.push(RelationCheck::new(
            format!("coassociativity #{i}"),
            d.is_zero(),
            format!("{label}: {} terms left", d.len()),
        ));
        let (l, r) = b.counit_defects(f);
        report.push(RelationCheck::new(
            format!("counit #{i}"),
            l.is_zero() && r.is_zero(),
            label,
        ));
    }
    let words: [&[Generator]; 3] = [&[X3, X2, X1], &[X3, EPlus, X3, X2, X2], &[EMinus, X3, X1, X2, EPlus]];
    for (i, w) in words.iter().enumerate() {
        let f = FreeElement::word(w.to_vec(), sys.one().clone());
        let reference = sys.normal_form_with(&f, Strategy::Leftmost);
        let agree = [Strategy::Rightmost, Strategy::Random(7), Strategy::Random(99)]
            .into_iter()
            .all(|s| sys.normal_form_with(&f, s) == reference);
        report.push(RelationCheck::new(format!("strategy independence #{i}"), agree, xi.display(&reference)));
    }
    let x = |g| sys.generator(g);
    let triples = [
        (x(X3), x(X2), x(X1)),
        (x(X3), x(EPlus), x(X2)),
        (sys.normal_form_word(&[X3, X3]), x(X2), x(EMinus)),
    ];
    for (i, (a, bb, c)) in triples.iter().enumerate() {
        let left = sys.star(&sys.star(a, bb), c);
        let right = sys.star(a, &sys.star(bb, c));
        report.push(check_eq(&format!("associativity #{i}"), xi, &left, &right));
    }
    report
}

/// Compares the two-parameter algebra at `ε = 1` with `U_h(sl2)` in `h`,
/// up to `h`-degree `order / 2` (the `e^{εh}` twist fills total degree twice
/// as fast as `h`-degree).
pub fn specialization_report(order: i32) -> Result<VerificationReport, UhError> {
    use Generator::*;
    let hmax = order / 2;
    let xi_scalars = xi_rule_scalars(order)?;
    let z_scalars = z_rule_scalars_in_h(hmax)?;
    let mut report = VerificationReport::default();
    let pairs = [
        ("shift", &xi_scalars.shift, &z_scalars.shift),
        ("commutator coefficient", &xi_scalars.sinh_coeff, &z_scalars.sinh_coeff),
        ("twist e^{eps h}", &xi_scalars.q, &z_scalars.q),
        ("twist e^{-eps h}", &xi_scalars.q_inv, &z_scalars.q_inv),
    ];
    for (name, xs, zs) in pairs {
        let spec = specialize_eps_one(xs, hmax);
        report.push(RelationCheck::new(
            format!("eps := 1 on {name}"),
            spec == *zs,
            format!("{spec} vs {zs}"),
        ));
    }

    // normal forms of short words, with room for two commutator corrections
    let xi = xi_algebra_build(2 * hmax + 8)?;
    let z = RewriteSystem::new(z_rule_scalars_in_h(hmax + 6)?);
    let words: [&[Generator]; 3] = [&[X3, X2, X1], &[X3, EPlus, X2], &[X3, X3, X2, EMinus]];
    for w in words {
        let from_xi = xi.system().normal_form_word(w).map(|c| specialize_eps_one(c, hmax));
        let from_z = z.normal_form_word(w).map(|c| c.clone().with_order(hmax));
        report.push(RelationCheck::new(
            format!("eps := 1 normal form of {}", word_name(w)),
            from_xi == from_z,
            from_z.display_with(&Alphabet::XI),
        ));
    }

    // h := 2ε alone gives e^{2ε²} for the twist, not the e^{2ε} of the x-system
    let twist = xi_scalars.q.specialize_h(&int(2), order);
    let x_twist = EpsSeries::exp_series(&int(2), order);
    report.push(RelationCheck::new(
        "h := 2 eps alone does not give the x-twist",
        twist != x_twist,
        format!("{twist}"),
    ));
    Ok(report)
}

fn word_name(w: &[Generator]) -> String {
    w.iter()
        .map(|g| Alphabet::XI.name(*g))
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations_hold() {
        let xi = xi_algebra_build(6).unwrap();
        let r = xi_relations_report(&xi);
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn commutator_leading_terms() {
        let xi = xi_algebra_build(4).unwrap();
        let c = xi.system().commutator(&xi.xi(Generator::X2), &xi.xi(Generator::X3));
        let e2 = c.coeff(&PbwMonomial::new(0, 0, 0, 2)).unwrap();
        assert_eq!(e2.coeff(1, -1), rat(1, 2));
        assert_eq!(e2.coeff(1, 1), rat(-1, 12));
        assert_eq!(e2.coeff(1, 3), rat(7, 720));
    }

    #[test]
    fn bialgebra_suite_passes() {
        let xi = xi_algebra_build(4).unwrap();
        let r = xi_bialgebra_report(&xi);
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn eps_one_is_uh_sl2() {
        let r = specialization_report(6).unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn specialize_examples() {
        let q = BiSeries::exp_eps_h(&int(1), 6);
        assert_eq!(specialize_eps_one(&q, 3), EpsSeries::exp_series(&int(1), 3));
        let c = BiSeries::from_terms([((1, -1), rat(1, 2)), ((3, 0), int(5))], 6);
        assert_eq!(specialize_eps_one(&c, 2), EpsSeries::from_terms([(-1, rat(1, 2)), (0, int(5))], 2));
    }
}
