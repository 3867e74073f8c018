use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{Config, FrontendError};
use crate::coalg::{Bialgebra, DeformationOrder};
use crate::gauge::{bernoulli_identity_check, c_series, cnk_from_b, solve_gauge, verify_gauge};
use crate::ncalg::{x_system, Generator, NcElement, RewriteSystem, Rule, Strategy, Word};
use crate::poisson::{self, PoissonConfig};
use crate::report::{RelationCheck, VerificationReport};
use crate::series::rational::rat;
use crate::series::{EpsSeries, Rational};
use crate::uhsl2::{
    limits_report, specialization_report, xi_algebra_build, xi_bialgebra_report, xi_relations_report,
    z_commutators, z_coproducts,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Bialgebra,
    Gauge,
    Poisson,
    Uh,
    All,
}

impl Suite {
    pub fn parts(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![Suite::Bialgebra, Suite::Gauge, Suite::Poisson, Suite::Uh],
            s => vec![s],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Bialgebra => "bialgebra",
            Suite::Gauge => "gauge",
            Suite::Poisson => "poisson",
            Suite::Uh => "uh",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = FrontendError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bialgebra" => Ok(Suite::Bialgebra),
            "gauge" => Ok(Suite::Gauge),
            "poisson" => Ok(Suite::Poisson),
            "uh" => Ok(Suite::Uh),
            "all" => Ok(Suite::All),
            other => Err(FrontendError::UnknownSuite(other.to_string())),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Section {
    pub suite: String,
    pub report: VerificationReport,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CheckReport {
    pub sections: Vec<Section>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.sections.iter().all(|s| s.report.passed())
    }

    /// One `PASS`/`FAIL` line per check.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.sections {
            for c in &s.report.checks {
                let tag = if c.holds { "PASS" } else { "FAIL" };
                out.push_str(&format!("{tag} {}/{}", s.suite, c.name));
                if !c.holds {
                    out.push_str(&format!(": {}", c.detail));
                }
                out.push('\n');
            }
        }
        let total: usize = self.sections.iter().map(|s| s.report.checks.len()).sum();
        let failed: usize = self.sections.iter().map(|s| s.report.failures().count()).sum();
        out.push_str(&format!("{} checks, {failed} failed\n", total));
        out
    }
}

pub fn run_checks(suite: Suite, config: &Config) -> Result<CheckReport, FrontendError> {
    let mut out = CheckReport::default();
    for part in suite.parts() {
        let report = match part {
            Suite::Bialgebra => bialgebra_checks(config)?,
            Suite::Gauge => gauge_checks(config)?,
            Suite::Poisson => poisson_checks(config)?,
            Suite::Uh => uh_checks(config)?,
            Suite::All => unreachable!(),
        };
        out.sections.push(Section {
            suite: part.name().to_string(),
            report,
        });
    }
    Ok(out)
}

fn all_words(max_len: usize) -> Vec<Word> {
    let mut words = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for g in Generator::ALL {
                let mut v: Word = w.clone();
                v.push(g);
                next.push(v);
            }
        }
        words.extend(next.iter().cloned());
        layer = next;
    }
    words
}

fn sample_elements(sys: &RewriteSystem<EpsSeries>) -> Vec<NcElement<EpsSeries>> {
    let g = |x| sys.generator(x);
    use Generator::*;
    let mut out: Vec<_> = Generator::ALL.iter().map(|&x| g(x)).collect();
    out.push(sys.star(&g(X2), &g(X3)));
    out.push(sys.star(&g(X3), &g(X2)));
    out.push(sys.star(&sys.star(&g(EPlus), &g(X2)), &g(X1)));
    out.push(sys.power(&g(X2).add(&g(EMinus)), 2));
    out
}

fn bialgebra_checks(config: &Config) -> Result<VerificationReport, FrontendError> {
    let sys = x_system(config.order, &config.a_series())?;
    let bi = Bialgebra::new(sys);
    let sys = bi.system();
    let mut report = VerificationReport::default();

    let words = all_words(3);
    let strategies = [Strategy::Rightmost, Strategy::Random(config.seed), Strategy::Random(config.seed + 1)];
    let mut disagree = Vec::new();
    for w in &words {
        let reference = sys.normal_form_word(w);
        let free = crate::ncalg::FreeElement::word(w.clone(), sys.one().clone());
        if strategies.iter().any(|&s| sys.normal_form_with(&free, s) != reference) {
            disagree.push(format!("{w:?}"));
        }
    }
    report.push(RelationCheck::new(
        format!("confluence on {} words of length <= 3", words.len()),
        disagree.is_empty(),
        disagree.join(", "),
    ));

    for rule in Rule::ALL {
        let t = bi.coideal_check(rule);
        report.push(RelationCheck::new(format!("coideal {rule}"), t.is_zero(), t.to_string()));
    }

    for (i, f) in sample_elements(sys).iter().enumerate() {
        let d = bi.coassoc_defect(f);
        report.push(RelationCheck::new(
            format!("coassociativity sample {i}"),
            d.is_zero(),
            format!("{} defect terms", d.len()),
        ));
        let (l, r) = bi.counit_defects(f);
        report.push(RelationCheck::new(
            format!("counit sample {i}"),
            l.is_zero() && r.is_zero(),
            format!("{l}; {r}"),
        ));
    }

    let x2 = sys.generator(Generator::X2);
    let order = bi.deformation_order(&sys.star(&x2, &x2));
    report.push(RelationCheck::new(
        "deformation order of x2*x2 is 2",
        order == DeformationOrder::At(2),
        order.to_string(),
    ));

    let samples = sample_elements(sys);
    let mut flip_ok = true;
    for f in &samples {
        for g in &samples {
            let lhs = sys.eps_flip(&sys.star(f, g));
            let rhs = sys.star(&sys.eps_flip(g), &sys.eps_flip(f));
            flip_ok &= lhs == rhs;
        }
    }
    report.push(RelationCheck::new(
        "eps-flip is an anti-automorphism",
        flip_ok,
        format!("{} pairs", samples.len() * samples.len()),
    ));
    Ok(report)
}

fn gauge_checks(config: &Config) -> Result<VerificationReport, FrontendError> {
    let model = config.raw_model()?;
    let mut report = VerificationReport::default();
    let solution = solve_gauge(&model, config.kmax)?;
    let table = cnk_from_b(&model, config.nmax)?;
    report.push(RelationCheck::new(
        format!("gauge reproduces c^n_k for n <= {}", config.nmax),
        verify_gauge(&model, &solution, config.nmax),
        format!("a = {:?}", solution.entries().map(|(k, v)| format!("a{k}={v}")).collect::<Vec<_>>()),
    ));
    let half = model.b(2) / Rational::from_integer(2.into());
    report.push(RelationCheck::new(
        "a2 = b2/2",
        solution.a(2) == half,
        format!("a2 = {}, c^2_2 = {}", solution.a(2), table.get(2, 2)),
    ));
    report.push(RelationCheck::new(
        "alternating binomial identity for B^ up to 20",
        bernoulli_identity_check(20),
        "",
    ));
    let n = 12;
    let lhs = c_series(true, n);
    let rhs = EpsSeries::exp_series(&rat(2, 1), n).checked_mul(&c_series(false, n)).map_err(crate::gauge::GaugeError::from)?;
    report.push(RelationCheck::new(
        "c(+eps) = e^{2 eps} c(-eps) to order 12",
        lhs == rhs,
        format!("{lhs}"),
    ));
    Ok(report)
}

fn poisson_checks(config: &Config) -> Result<VerificationReport, FrontendError> {
    let pc = PoissonConfig {
        samples: config.samples,
        seed: config.seed,
        tol: config.tol,
        ..PoissonConfig::default()
    };
    let r = poisson::verify(&pc)?;
    let mut report = VerificationReport::default();
    report.push(RelationCheck::new(
        "integrated cobracket matches the dual Poisson bivector",
        r.bivector_ok,
        format!("max relative residual {:.3e}", r.max_relative_residual),
    ));
    report.push(RelationCheck::new(
        "single scaling constant",
        r.kappa_ok,
        format!("kappa = {:.12}, spread {:.3e}", r.kappa, r.kappa_spread),
    ));
    report.push(RelationCheck::new(
        "multiplicativity",
        r.multiplicativity_ok,
        format!("max residual {:.3e}", r.max_multiplicativity_residual),
    ));
    report.push(RelationCheck::new(
        "Jacobi identity",
        r.jacobi_ok,
        format!("max residual {:.3e}", r.max_jacobi_residual),
    ));
    Ok(report)
}

fn uh_checks(config: &Config) -> Result<VerificationReport, FrontendError> {
    let a = config.a_series();
    let mut report = z_commutators(config.order, &a)?;
    report.extend(z_coproducts(config.order, &a)?);
    let xi = xi_algebra_build(config.order)?;
    report.extend(xi_relations_report(&xi));
    report.extend(xi_bialgebra_report(&xi));
    report.extend(limits_report(&xi)?);
    report.extend(specialization_report(config.order)?);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names() {
        assert_eq!("uh".parse::<Suite>().unwrap(), Suite::Uh);
        assert!(matches!("nope".parse::<Suite>(), Err(FrontendError::UnknownSuite(_))));
        assert_eq!(Suite::All.parts().len(), 4);
    }

    #[test]
    fn gauge_and_bialgebra_suites_pass() {
        let config = Config {
            order: 6,
            ..Config::default()
        };
        let report = run_checks(Suite::Gauge, &config).unwrap();
        assert!(report.passed(), "{}", report.to_text());
        let report = run_checks(Suite::Bialgebra, &config).unwrap();
        assert!(report.passed(), "{}", report.to_text());
        assert!(report.to_text().contains("PASS bialgebra/coideal R3"));
    }
}
