//! Expression syntax:
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' NAT)?
//! base   := RATIONAL | SYMBOL | '(' expr ')'
//! ```
//!
//! Symbols are `x1 x2 x3 e+ e-`, `xi1 xi2 xi3 E+ E-`, `eps` and `h`.

use std::fmt;

use num_traits::Signed;
use thiserror::Error;

use crate::ncalg::Generator;
use crate::series::rational::{format_rational, parse_rational};
use crate::series::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symbol {
    X(Generator),
    Xi(Generator),
    Eps,
    H,
}

impl Symbol {
    pub fn parse(name: &str) -> Option<Symbol> {
        use Generator::*;
        Some(match name {
            "x1" => Symbol::X(X1),
            "x2" => Symbol::X(X2),
            "x3" => Symbol::X(X3),
            "e+" => Symbol::X(EPlus),
            "e-" => Symbol::X(EMinus),
            "xi1" => Symbol::Xi(X1),
            "xi2" => Symbol::Xi(X2),
            "xi3" => Symbol::Xi(X3),
            "E+" => Symbol::Xi(EPlus),
            "E-" => Symbol::Xi(EMinus),
            "eps" => Symbol::Eps,
            "h" => Symbol::H,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        use crate::ncalg::Alphabet;
        match self {
            Symbol::X(g) => Alphabet::X.name(g),
            Symbol::Xi(g) => Alphabet::XI.name(g),
            Symbol::Eps => "eps",
            Symbol::H => "h",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    /// A non-negative rational literal.
    Number(Rational),
    Symbol(Symbol),
    Neg(Box<Expr>),
    Sum(Box<Expr>, Box<Expr>),
    Difference(Box<Expr>, Box<Expr>),
    Star(Box<Expr>, Box<Expr>),
    Power(Box<Expr>, u32),
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Sum(..) | Expr::Difference(..) | Expr::Neg(_) => 1,
            Expr::Star(..) => 2,
            Expr::Power(..) => 3,
            Expr::Number(_) | Expr::Symbol(_) => 4,
        }
    }

    pub fn symbols(&self, out: &mut Vec<Symbol>) {
        match self {
            Expr::Number(_) => {}
            Expr::Symbol(s) => out.push(*s),
            Expr::Neg(a) | Expr::Power(a, _) => a.symbols(out),
            Expr::Sum(a, b) | Expr::Difference(a, b) | Expr::Star(a, b) => {
                a.symbols(out);
                b.symbols(out);
            }
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, min: u8, lead: bool) -> fmt::Result {
        let bare_neg = matches!(self, Expr::Neg(_)) && !lead;
        if self.precedence() < min || bare_neg {
            write!(f, "(")?;
            self.write(f, 1, true)?;
            return write!(f, ")");
        }
        match self {
            Expr::Number(r) if r.is_negative() => write!(f, "({})", format_rational(r)),
            Expr::Number(r) => write!(f, "{}", format_rational(r)),
            Expr::Symbol(s) => write!(f, "{}", s.name()),
            Expr::Neg(a) => {
                write!(f, "-")?;
                a.write(f, 2, false)
            }
            Expr::Sum(a, b) | Expr::Difference(a, b) => {
                a.write(f, 1, lead)?;
                write!(f, "{}", if matches!(self, Expr::Sum(..)) { " + " } else { " - " })?;
                b.write(f, 2, false)
            }
            Expr::Star(a, b) => {
                a.write(f, 2, false)?;
                write!(f, "*")?;
                b.write(f, 3, false)
            }
            Expr::Power(a, n) => {
                a.write(f, 4, false)?;
                write!(f, "^{n}")
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 1, true)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("{line}:{column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{line}:{column}: unknown symbol `{name}`")]
    UnknownSymbol { line: usize, column: usize, name: String },
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Number(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<(Token, Pos)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let syntax = |pos: Pos, message: String| ParseError::Syntax {
        line: pos.line,
        column: pos.column,
        message,
    };
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column: col };
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let start = i;
        let token = match c {
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '^' => Token::Caret,
            '(' => Token::LParen,
            ')' => Token::RParen,
            d if d.is_ascii_digit() => {
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                if i + 2 < chars.len() && chars[i + 1] == '/' && chars[i + 2].is_ascii_digit() {
                    i += 2;
                    while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                        i += 1;
                    }
                }
                let lit: String = chars[start..=i].iter().collect();
                Token::Number(parse_rational(&lit).map_err(|e| syntax(pos, e.to_string()))?)
            }
            a if a.is_ascii_alphabetic() => {
                while i + 1 < chars.len() && chars[i + 1].is_ascii_alphanumeric() {
                    i += 1;
                }
                let mut name: String = chars[start..=i].iter().collect();
                if (name == "e" || name == "E") && i + 1 < chars.len() && matches!(chars[i + 1], '+' | '-') {
                    i += 1;
                    name.push(chars[i]);
                }
                Token::Ident(name)
            }
            other => return Err(syntax(pos, format!("unexpected character `{other}`"))),
        };
        col += i + 1 - start;
        i += 1;
        out.push((token, pos));
    }
    out.push((Token::End, Pos { line, column: col }));
    Ok(out)
}

struct Parser {
    tokens: Vec<(Token, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.at].0
    }

    fn pos(&self) -> Pos {
        self.tokens[self.at].1
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.at].0.clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        Self::error_at(self.pos(), message)
    }

    fn error_at(p: Pos, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            line: p.line,
            column: p.column,
            message: message.into(),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = if *self.peek() == Token::Minus {
            self.bump();
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Token::Plus => {
                    self.bump();
                    acc = Expr::Sum(Box::new(acc), Box::new(self.term()?));
                }
                Token::Minus => {
                    self.bump();
                    acc = Expr::Difference(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.factor()?;
        while *self.peek() == Token::Star {
            self.bump();
            acc = Expr::Star(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.base()?;
        if *self.peek() != Token::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        match self.bump() {
            Token::Number(n) if n.is_integer() => {
                let n: u32 = n
                    .to_integer()
                    .try_into()
                    .map_err(|_| Self::error_at(pos, "exponent too large"))?;
                Ok(Expr::Power(Box::new(base), n))
            }
            _ => Err(Self::error_at(pos, "expected a non-negative integer exponent")),
        }
    }

    fn base(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Token::Number(r) => Ok(Expr::Number(r)),
            Token::Ident(name) => Symbol::parse(&name).map(Expr::Symbol).ok_or(ParseError::UnknownSymbol {
                line: pos.line,
                column: pos.column,
                name,
            }),
            Token::LParen => {
                let e = self.expr()?;
                match self.bump() {
                    Token::RParen => Ok(e),
                    _ => Err(self.error("expected `)`")),
                }
            }
            Token::End => Err(self.error("unexpected end of input")),
            t => Err(Self::error_at(pos, format!("unexpected {t:?}"))),
        }
    }
}

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { tokens: lex(text)?, at: 0 };
    let e = p.expr()?;
    if *p.peek() != Token::End {
        return Err(p.error("trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rational::int;
    use Generator::*;

    fn sym(s: Symbol) -> Box<Expr> {
        Box::new(Expr::Symbol(s))
    }

    #[test]
    fn products_are_left_associative() {
        let e = parse("x3*x2*x1").unwrap();
        let inner = Expr::Star(sym(Symbol::X(X3)), sym(Symbol::X(X2)));
        assert_eq!(e, Expr::Star(Box::new(inner), sym(Symbol::X(X1))));
    }

    #[test]
    fn difference_of_products() {
        let e = parse("x2*x3 - x3*x2").unwrap();
        assert!(matches!(e, Expr::Difference(ref a, ref b)
            if matches!(**a, Expr::Star(..)) && matches!(**b, Expr::Star(..))));
    }

    #[test]
    fn scalar_multiplier_and_exponentials() {
        let e = parse("e+*x2 - (1+2*eps)*x2*e+").unwrap();
        let mut syms = Vec::new();
        e.symbols(&mut syms);
        assert_eq!(
            syms,
            vec![Symbol::X(EPlus), Symbol::X(X2), Symbol::Eps, Symbol::X(X2), Symbol::X(EPlus)]
        );
        assert_eq!(e.to_string(), "e+*x2 - (1 + 2*eps)*x2*e+");
    }

    #[test]
    fn powers_and_rationals() {
        let e = parse("3/4*x1^2").unwrap();
        let want = Expr::Star(
            Box::new(Expr::Number(Rational::new(3.into(), 4.into()))),
            Box::new(Expr::Power(sym(Symbol::X(X1)), 2)),
        );
        assert_eq!(e, want);
        assert_eq!(parse("E-^3").unwrap(), Expr::Power(sym(Symbol::Xi(EMinus)), 3));
        assert_eq!(parse("-2").unwrap(), Expr::Neg(Box::new(Expr::Number(int(2)))));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse("x1 +\n  y7").unwrap_err(),
            ParseError::UnknownSymbol {
                line: 2,
                column: 3,
                name: "y7".into()
            }
        );
        assert!(matches!(parse("x1^x2"), Err(ParseError::Syntax { line: 1, column: 4, .. })));
        assert!(matches!(parse("(x1"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("x1 x2"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("x1 % 2"), Err(ParseError::Syntax { column: 4, .. })));
    }

    #[test]
    fn printing_parenthesizes_minimally() {
        for text in ["-x1*x2 + x3", "x1 - (x2 - x3)", "(x1 + x2)^2", "x1*(x2*x3)", "x1 + (-x2)", "-(-x1)", "(x1^2)^3"] {
            assert_eq!(parse(text).unwrap().to_string(), text);
        }
    }
}
