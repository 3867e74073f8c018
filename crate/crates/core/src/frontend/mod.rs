//! Parsing, evaluation, configuration and the named check suites.

mod checks;
mod config;
mod parse;

use std::fmt;
use std::sync::OnceLock;

use serde_json::json;
use thiserror::Error;

use crate::coalg::{Bialgebra, TensorElement};
use crate::gauge::GaugeError;
use crate::ncalg::{x_system, AlgebraError, Alphabet, NcElement, RewriteSystem};
use crate::poisson::PoissonError;
use crate::series::{BiSeries, Coefficient, EpsSeries};
use crate::uhsl2::{xi_algebra_build, UhError, XiAlgebra};

pub use checks::{run_checks, CheckReport, Section, Suite};
pub use config::{parse_a_list, parse_b_list, Config, ConfigError, OutputFormat, ENV_PREFIX};
pub use parse::{parse, Expr, ParseError, Symbol};

#[derive(Debug, Error)]
pub enum FrontendError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("expression mixes the x- and xi-alphabets")]
    MixedAlphabets,
    #[error("`h` is only available together with xi-symbols")]
    HWithoutXi,
    #[error("unknown suite `{0}` (bialgebra|gauge|poisson|uh|all)")]
    UnknownSuite(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Gauge(#[from] GaugeError),
    #[error(transparent)]
    Poisson(#[from] PoissonError),
    #[error(transparent)]
    Uh(#[from] UhError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    X,
    Xi,
}

/// Decides which algebra a set of expressions lives in.
pub fn flavor(exprs: &[&Expr]) -> Result<Flavor, FrontendError> {
    let mut syms = Vec::new();
    for e in exprs {
        e.symbols(&mut syms);
    }
    let has_x = syms.iter().any(|s| matches!(s, Symbol::X(_)));
    let has_xi = syms.iter().any(|s| matches!(s, Symbol::Xi(_)));
    let has_h = syms.contains(&Symbol::H);
    match (has_x, has_xi || has_h) {
        (true, true) if !has_xi => Err(FrontendError::HWithoutXi),
        (true, true) => Err(FrontendError::MixedAlphabets),
        (_, true) => Ok(Flavor::Xi),
        _ => Ok(Flavor::X),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    X(NcElement<EpsSeries>),
    Xi(NcElement<BiSeries>),
}

impl Value {
    pub fn is_zero(&self) -> bool {
        match self {
            Value::X(e) => e.is_zero(),
            Value::Xi(e) => e.is_zero(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Value::X(e) => json!({"alphabet": "x", "element": e}),
            Value::Xi(e) => json!({"alphabet": "xi", "element": e}),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::X(e) => f.write_str(&e.display_with(&Alphabet::X)),
            Value::Xi(e) => f.write_str(&e.display_with(&Alphabet::XI)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum TensorValue {
    X(TensorElement<EpsSeries>),
    Xi(TensorElement<BiSeries>),
}

impl TensorValue {
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            TensorValue::X(t) => json!({"alphabet": "x", "tensor": t}),
            TensorValue::Xi(t) => json!({"alphabet": "xi", "tensor": t}),
        }
    }
}

impl fmt::Display for TensorValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TensorValue::X(t) => f.write_str(&t.display_with(&Alphabet::X)),
            TensorValue::Xi(t) => f.write_str(&t.display_with(&Alphabet::XI)),
        }
    }
}

/// Interprets `e` in `sys`; `eps` and `h` are supplied by `param`.
pub fn eval_in<S: Coefficient>(
    e: &Expr,
    sys: &RewriteSystem<S>,
    param: &impl Fn(Symbol) -> Option<S>,
) -> Result<NcElement<S>, FrontendError> {
    Ok(match e {
        Expr::Number(r) => sys.scalar(sys.constant(r.clone())),
        Expr::Symbol(Symbol::X(g)) | Expr::Symbol(Symbol::Xi(g)) => sys.generator(*g),
        Expr::Symbol(s) => sys.scalar(param(*s).ok_or(FrontendError::HWithoutXi)?),
        Expr::Neg(a) => eval_in(a, sys, param)?.neg(),
        Expr::Sum(a, b) => eval_in(a, sys, param)?.add(&eval_in(b, sys, param)?),
        Expr::Difference(a, b) => eval_in(a, sys, param)?.sub(&eval_in(b, sys, param)?),
        Expr::Star(a, b) => sys.star(&eval_in(a, sys, param)?, &eval_in(b, sys, param)?),
        Expr::Power(a, n) => sys.power(&eval_in(a, sys, param)?, *n),
    })
}

/// Evaluates expressions against a configuration, building each algebra
/// on first use.
pub struct Evaluator {
    config: Config,
    x: OnceLock<Result<Bialgebra<EpsSeries>, AlgebraError>>,
    xi: OnceLock<Result<XiAlgebra, UhError>>,
}

impl Evaluator {
    pub fn new(config: Config) -> Self {
        Evaluator {
            config,
            x: OnceLock::new(),
            xi: OnceLock::new(),
        }
    }

    pub fn config(&self) -> &Config {
        &self.config
    }

    pub fn x_bialgebra(&self) -> Result<&Bialgebra<EpsSeries>, FrontendError> {
        let n = self.config.order;
        self.x
            .get_or_init(|| x_system(n, &self.config.a_series()).map(Bialgebra::new))
            .as_ref()
            .map_err(|e| e.clone().into())
    }

    pub fn xi_algebra(&self) -> Result<&XiAlgebra, FrontendError> {
        self.xi
            .get_or_init(|| xi_algebra_build(self.config.order))
            .as_ref()
            .map_err(|e| FrontendError::Uh(e.clone()))
    }

    fn eval_all(&self, exprs: &[&Expr]) -> Result<Vec<Value>, FrontendError> {
        let n = self.config.order;
        match flavor(exprs)? {
            Flavor::X => {
                let sys = self.x_bialgebra()?.system();
                let param = |s: Symbol| (s == Symbol::Eps).then(|| EpsSeries::eps(n));
                exprs.iter().map(|e| Ok(Value::X(eval_in(e, sys, &param)?))).collect()
            }
            Flavor::Xi => {
                let sys = self.xi_algebra()?.system();
                let param = |s: Symbol| match s {
                    Symbol::Eps => Some(BiSeries::eps(n)),
                    Symbol::H => Some(BiSeries::h(n)),
                    _ => None,
                };
                exprs.iter().map(|e| Ok(Value::Xi(eval_in(e, sys, &param)?))).collect()
            }
        }
    }

    pub fn eval(&self, e: &Expr) -> Result<Value, FrontendError> {
        Ok(self.eval_all(&[e])?.remove(0))
    }

    pub fn normalize(&self, text: &str) -> Result<Value, FrontendError> {
        self.eval(&parse(text)?)
    }

    pub fn product(&self, a: &str, b: &str) -> Result<Value, FrontendError> {
        let (ea, eb) = (parse(a)?, parse(b)?);
        let star = Expr::Star(Box::new(ea), Box::new(eb));
        self.eval(&star)
    }

    pub fn commutator(&self, a: &str, b: &str) -> Result<Value, FrontendError> {
        let (ea, eb) = (parse(a)?, parse(b)?);
        let ab = Expr::Star(Box::new(ea.clone()), Box::new(eb.clone()));
        let ba = Expr::Star(Box::new(eb), Box::new(ea));
        self.eval(&Expr::Difference(Box::new(ab), Box::new(ba)))
    }

    pub fn coproduct(&self, text: &str) -> Result<TensorValue, FrontendError> {
        Ok(match self.normalize(text)? {
            Value::X(e) => TensorValue::X(self.x_bialgebra()?.coproduct(&e)),
            Value::Xi(e) => TensorValue::Xi(self.xi_algebra()?.bialgebra().coproduct(&e)),
        })
    }
}
