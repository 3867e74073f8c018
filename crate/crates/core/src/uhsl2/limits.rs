use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::coalg::TensorElement;
use crate::ncalg::{Alphabet, Generator, NcElement, PbwMonomial};
use crate::series::rational::{factorial, int, Rational};
use crate::series::{BiSeries, Coefficient, EpsSeries};

use super::xi::XiAlgebra;
use super::{RelationCheck, UhError, VerificationReport};

/// Rewrites `ξ1^a ξ2^b ξ3^c Ê^m` as `Σ_k f_k ξ1^{a+k} ξ2^b ξ3^c`, using
/// `ξ2^b ξ3^c Ê^m = e^{mεh(c−b)} Ê^m ξ2^b ξ3^c` and
/// `Ê^m = Σ_k (mh/2)^k ξ1^k / k!`.
fn expand(m: &PbwMonomial, order: i32) -> Vec<(PbwMonomial, BiSeries)> {
    if m.m == 0 {
        return vec![(*m, BiSeries::one(order))];
    }
    let twist = BiSeries::exp_eps_h(&int(m.m as i64 * (m.n3 as i64 - m.n2 as i64)), order);
    let half_m = Rational::new(m.m.into(), 2.into());
    let mut power = Rational::one();
    let mut out = Vec::new();
    for k in 0..=order.max(0) as u32 {
        let c = &power / Rational::from(factorial(k));
        let hk = BiSeries::term(c, 0, k as i32, order);
        out.push((PbwMonomial::new(m.n1 + k, m.n2, m.n3, 0), &hk * &twist));
        power *= &half_m;
    }
    out
}

fn regular_part(c: &BiSeries, label: &dyn Fn() -> String) -> Result<EpsSeries, UhError> {
    if c.terms().any(|((_, j), v)| j < 0 && !v.is_zero()) {
        return Err(UhError::PoleAtHZero(label()));
    }
    Ok(c.h_coefficient(0))
}

/// The `h → 0` limit: expand `Ê^{±1}` in `hξ1/2` and keep the `h⁰` part.
pub fn limit_h_to_zero(e: &NcElement<BiSeries>) -> Result<NcElement<EpsSeries>, UhError> {
    let Some(order) = e.terms().next().map(|(_, c)| c.order()) else {
        return Ok(NcElement::zero());
    };
    let mut acc: BTreeMap<PbwMonomial, BiSeries> = BTreeMap::new();
    for (m, c) in e.terms() {
        for (mm, f) in expand(m, order) {
            let term = c.times(&f);
            let slot = acc.entry(mm).or_insert_with(|| BiSeries::zero(order).with_h_floor(-order));
            *slot = slot.plus(&term);
        }
    }
    let mut out = NcElement::zero();
    for (m, c) in acc {
        out.add_term(m, regular_part(&c, &|| e.display_with(&Alphabet::XI))?);
    }
    Ok(out)
}

pub fn limit_h_to_zero_tensor(t: &TensorElement<BiSeries>) -> Result<TensorElement<EpsSeries>, UhError> {
    let Some(order) = t.terms().next().map(|(_, c)| c.order()) else {
        return Ok(TensorElement::zero());
    };
    let mut acc: BTreeMap<(PbwMonomial, PbwMonomial), BiSeries> = BTreeMap::new();
    for ((a, b), c) in t.terms() {
        let right = expand(b, order);
        for (ma, fa) in expand(a, order) {
            let ca = c.times(&fa);
            for (mb, fb) in &right {
                let slot = acc
                    .entry((ma, *mb))
                    .or_insert_with(|| BiSeries::zero(order).with_h_floor(-order));
                *slot = slot.plus(&ca.times(fb));
            }
        }
    }
    let mut out = TensorElement::zero();
    for ((a, b), c) in acc {
        out.add_term(a, b, regular_part(&c, &|| t.to_string())?);
    }
    Ok(out)
}

/// The `ε → 0` limit: the `ε⁰` part of every coefficient.
pub fn limit_eps_to_zero(e: &NcElement<BiSeries>) -> NcElement<BiSeries> {
    e.map(|c| c.eps_coefficient(0))
}

pub fn limit_eps_to_zero_tensor(t: &TensorElement<BiSeries>) -> TensorElement<BiSeries> {
    t.map(|c| c.eps_coefficient(0))
}

fn check<T: PartialEq + std::fmt::Display>(name: &str, got: &T, want: &T) -> RelationCheck {
    RelationCheck::new(name, got == want, got.to_string())
}

/// The relations and coproducts of both one-parameter limits and of the
/// classical corner.
pub fn limits_report(xi: &XiAlgebra) -> Result<VerificationReport, UhError> {
    use Generator::*;
    let n = xi.order();
    let sys = xi.system();
    let b = xi.bialgebra();
    let g = |x| sys.generator(x);
    let mono = |x| PbwMonomial::of(x);
    let mut report = VerificationReport::default();

    let c12 = sys.commutator(&g(X1), &g(X2));
    let c13 = sys.commutator(&g(X1), &g(X3));
    let c23 = sys.commutator(&g(X2), &g(X3));
    let eps_times = |k: i64, x: Generator| NcElement::monomial(mono(x), EpsSeries::term(int(k), 1, n));

    let show = |e: &NcElement<EpsSeries>| e.display_with(&Alphabet::XI);
    let h0 = |name: &str, e: &NcElement<BiSeries>, want: NcElement<EpsSeries>| -> Result<RelationCheck, UhError> {
        let got = limit_h_to_zero(e)?;
        Ok(RelationCheck::new(name, got == want, show(&got)))
    };
    report.push(h0("h->0: [xi2,xi3] = eps xi1", &c23, eps_times(1, X1))?);
    report.push(h0("h->0: [xi1,xi2] = 2 eps xi2", &c12, eps_times(2, X2))?);
    report.push(h0("h->0: [xi1,xi3] = -2 eps xi3", &c13, eps_times(-2, X3))?);

    let one = EpsSeries::one(n);
    let primitive = |x| {
        let mut t = TensorElement::zero();
        t.add_term(PbwMonomial::UNIT, mono(x), one.clone());
        t.add_term(mono(x), PbwMonomial::UNIT, one.clone());
        t
    };
    for x in [X1, X2, X3] {
        let got = limit_h_to_zero_tensor(&b.coproduct(&g(x)))?;
        report.push(check(&format!("h->0: Δ{} is primitive", Alphabet::XI.name(x)), &got, &primitive(x)));
    }
    let got = limit_h_to_zero_tensor(&b.coproduct(&g(EPlus)))?;
    report.push(check(
        "h->0: ΔE+ = 1⊗1",
        &got,
        &TensorElement::basis(PbwMonomial::UNIT, PbwMonomial::UNIT, one.clone()),
    ));

    for (name, e) in [("eps->0: [xi1,xi2] = 0", &c12), ("eps->0: [xi2,xi3] = 0", &c23), ("eps->0: [xi1,xi3] = 0", &c13)] {
        let got = limit_eps_to_zero(e);
        report.push(RelationCheck::new(name, got.is_zero(), got.to_string()));
    }
    for x in [X2, X3] {
        let d = b.coproduct(&g(x));
        let got = limit_eps_to_zero_tensor(&d);
        report.push(check(
            &format!("eps->0: Δ{} keeps its h-deformation", Alphabet::XI.name(x)),
            &got,
            &d,
        ));
    }

    // classical corner: both limits
    let corner = limit_h_to_zero(&limit_eps_to_zero(&c23))?;
    report.push(RelationCheck::new("both limits: [xi2,xi3] = 0", corner.is_zero(), corner.to_string()));
    let corner = limit_h_to_zero_tensor(&limit_eps_to_zero_tensor(&b.coproduct(&g(X2))))?;
    report.push(check("both limits: Δxi2 is primitive", &corner, &primitive(X2)));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::uhsl2::xi_algebra_build;

    #[test]
    fn limits_hold() {
        let xi = xi_algebra_build(6).unwrap();
        let r = limits_report(&xi).unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn h_limit_of_commutator() {
        let xi = xi_algebra_build(5).unwrap();
        let c = xi.system().commutator(&xi.xi(Generator::X2), &xi.xi(Generator::X3));
        let got = limit_h_to_zero(&c).unwrap();
        assert_eq!(got.display_with(&Alphabet::XI), "eps*xi1");
    }

    #[test]
    fn pole_is_reported() {
        let n = 4;
        let bad = NcElement::monomial(PbwMonomial::UNIT, BiSeries::term(int(1), 1, -1, n));
        assert!(matches!(limit_h_to_zero(&bad), Err(UhError::PoleAtHZero(_))));
    }

    #[test]
    fn eps_limit_drops_commutators() {
        let xi = xi_algebra_build(4).unwrap();
        let c = xi.system().commutator(&xi.xi(Generator::X1), &xi.xi(Generator::X2));
        assert!(limit_eps_to_zero(&c).is_zero());
    }
}
