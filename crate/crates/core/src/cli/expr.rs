//! Expression language for elements of `P`.
//!
//! ```text
//! expr   := ['-'] term {('+'|'-') term}
//! term   := factor {'*' factor}
//! factor := base ['^' uint]
//! base   := rational | 'pi' ['^-' uint] | 'x'i | 'q'j | 'y'j | 'e'i | 'f'j
//!         | 'X' | 'Xb' | 'Xf' | '(' expr ')' | call
//! call   := ('Dl'|'Dr'|'Lap'|'Eul'|'Ber') '(' expr ')'
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{Signature, SuperElement, VectorPart};
use crate::fermionic::berezin;
use crate::operators::{dirac_left, dirac_right, euler, laplace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("unexpected character {found:?} at position {pos}")]
    Lex { pos: usize, found: char },
    #[error("expected {expected} at position {pos}")]
    Parse { pos: usize, expected: String },
    #[error("unknown name {name:?} at position {pos}")]
    UnknownName { pos: usize, name: String },
    #[error("{var}{index} is outside 1..={max} for signature {sig}")]
    Index {
        var: char,
        index: usize,
        max: usize,
        sig: String,
    },
    #[error("zero denominator at position {pos}")]
    ZeroDenominator { pos: usize },
    #[error("exponent too large at position {pos}")]
    Exponent { pos: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    /// `x_i`
    Bosonic,
    /// `x̀_j`
    Grassmann,
    /// `ỳ_j`
    Parameter,
    /// `e_i`
    Clifford,
    /// `è_j`
    Weyl,
}

impl Generator {
    fn letter(self) -> char {
        match self {
            Generator::Bosonic => 'x',
            Generator::Grassmann => 'q',
            Generator::Parameter => 'y',
            Generator::Clifford => 'e',
            Generator::Weyl => 'f',
        }
    }

    fn from_letter(c: &str) -> Option<Self> {
        Some(match c {
            "x" => Generator::Bosonic,
            "q" => Generator::Grassmann,
            "y" => Generator::Parameter,
            "e" => Generator::Clifford,
            "f" => Generator::Weyl,
            _ => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Operator {
    DiracLeft,
    DiracRight,
    Laplace,
    Euler,
    Berezin,
}

impl Operator {
    fn name(self) -> &'static str {
        match self {
            Operator::DiracLeft => "Dl",
            Operator::DiracRight => "Dr",
            Operator::Laplace => "Lap",
            Operator::Euler => "Eul",
            Operator::Berezin => "Ber",
        }
    }

    fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "Dl" => Operator::DiracLeft,
            "Dr" => Operator::DiracRight,
            "Lap" => Operator::Laplace,
            "Eul" => Operator::Euler,
            "Ber" => Operator::Berezin,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Non-negative rational literal.
    Number(BigRational),
    /// `pi` (exponent 1) or `pi^-k`.
    Pi(i32),
    Gen(Generator, usize),
    Vector(VectorPart),
    Call(Operator, Box<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn mentions_parameters(&self) -> bool {
        match self {
            Expr::Gen(Generator::Parameter, _) => true,
            Expr::Number(_) | Expr::Pi(_) | Expr::Gen(..) | Expr::Vector(_) => false,
            Expr::Call(_, a) | Expr::Neg(a) | Expr::Pow(a, _) => a.mentions_parameters(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.mentions_parameters() || b.mentions_parameters()
            }
        }
    }

    pub fn evaluate(&self, sig: Signature) -> Result<SuperElement, ExprError> {
        Ok(match self {
            Expr::Number(q) => SuperElement::from_rational(sig, q.clone()),
            Expr::Pi(k) => SuperElement::pi(sig, *k),
            Expr::Gen(g, i) => {
                let max = match g {
                    Generator::Bosonic | Generator::Clifford => sig.m,
                    Generator::Grassmann | Generator::Weyl => sig.grassmann_count(),
                    Generator::Parameter => sig.param_count(),
                };
                if !(1..=max).contains(i) {
                    return Err(ExprError::Index {
                        var: g.letter(),
                        index: *i,
                        max,
                        sig: sig.to_string(),
                    });
                }
                match g {
                    Generator::Bosonic => SuperElement::x(sig, *i),
                    Generator::Grassmann => SuperElement::q(sig, *i),
                    Generator::Parameter => SuperElement::y(sig, *i),
                    Generator::Clifford => SuperElement::e(sig, *i),
                    Generator::Weyl => SuperElement::f(sig, *i),
                }
            }
            Expr::Vector(part) => SuperElement::vector_variable(sig, *part),
            Expr::Call(op, a) => {
                let a = a.evaluate(sig)?;
                match op {
                    Operator::DiracLeft => dirac_left(&a),
                    Operator::DiracRight => dirac_right(&a),
                    Operator::Laplace => laplace(&a),
                    Operator::Euler => euler(&a),
                    Operator::Berezin => berezin(&a),
                }
            }
            Expr::Neg(a) => -a.evaluate(sig)?,
            Expr::Add(a, b) => &a.evaluate(sig)? + &b.evaluate(sig)?,
            Expr::Sub(a, b) => &a.evaluate(sig)? - &b.evaluate(sig)?,
            Expr::Mul(a, b) => &a.evaluate(sig)? * &b.evaluate(sig)?,
            Expr::Pow(a, k) => a.evaluate(sig)?.pow(*k),
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Level {
    Sum,
    Term,
    Factor,
}

fn needed(e: &Expr) -> Level {
    match e {
        Expr::Add(..) | Expr::Sub(..) | Expr::Neg(_) => Level::Sum,
        Expr::Mul(..) => Level::Term,
        _ => Level::Factor,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, e: &Expr, slot: Level) -> fmt::Result {
    // a slot accepts expressions that bind at least as tightly
    if needed(e) >= slot {
        write!(f, "{e}")
    } else {
        write!(f, "({e})")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Number(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Expr::Pi(1) => f.write_str("pi"),
            Expr::Pi(k) => write!(f, "pi^{k}"),
            Expr::Gen(g, i) => write!(f, "{}{i}", g.letter()),
            Expr::Vector(VectorPart::Full) => f.write_str("X"),
            Expr::Vector(VectorPart::Bosonic) => f.write_str("Xb"),
            Expr::Vector(VectorPart::Fermionic) => f.write_str("Xf"),
            Expr::Call(op, a) => write!(f, "{}({a})", op.name()),
            Expr::Neg(a) => {
                f.write_str("-")?;
                write_at(f, a, Level::Term)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                write_at(f, a, Level::Sum)?;
                f.write_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                write_at(f, b, Level::Term)
            }
            Expr::Mul(a, b) => {
                write_at(f, a, Level::Term)?;
                f.write_str("*")?;
                write_at(f, b, Level::Factor)
            }
            Expr::Pow(a, k) => {
                // the base of a power must itself be a base
                match **a {
                    Expr::Pow(..) | Expr::Mul(..) | Expr::Add(..) | Expr::Sub(..) | Expr::Neg(_) => {
                        write!(f, "({a})")?
                    }
                    _ => write!(f, "{a}")?,
                }
                write!(f, "^{k}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Indexed(String, usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Token)>, ExprError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let simple = match c {
            '+' => Some(Token::Plus),
            '-' => Some(Token::Minus),
            '*' => Some(Token::Star),
            '/' => Some(Token::Slash),
            '^' => Some(Token::Caret),
            '(' => Some(Token::LParen),
            ')' => Some(Token::RParen),
            _ => None,
        };
        if let Some(t) = simple {
            out.push((pos, t));
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|(_, c)| c).collect();
            out.push((pos, Token::Int(s.parse().expect("digits parse"))));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_alphabetic() {
                i += 1;
            }
            let name: String = chars[start..i].iter().map(|(_, c)| c).collect();
            if Generator::from_letter(&name).is_some() && i < chars.len() && chars[i].1.is_ascii_digit() {
                let s = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[s..i].iter().map(|(_, c)| c).collect();
                let index = digits.parse().map_err(|_| ExprError::Exponent { pos })?;
                out.push((pos, Token::Indexed(name, index)));
            } else {
                out.push((pos, Token::Ident(name)));
            }
        } else {
            return Err(ExprError::Lex { pos, found: c });
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn eat(&mut self, t: &Token) -> bool {
        if self.peek() == Some(t) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Token, what: &str) -> Result<(), ExprError> {
        if self.eat(&t) {
            Ok(())
        } else {
            Err(ExprError::Parse {
                pos: self.pos(),
                expected: what.into(),
            })
        }
    }

    fn uint(&mut self) -> Result<BigInt, ExprError> {
        match self.peek().cloned() {
            Some(Token::Int(v)) => {
                self.at += 1;
                Ok(v)
            }
            _ => Err(ExprError::Parse {
                pos: self.pos(),
                expected: "unsigned integer".into(),
            }),
        }
    }

    fn small(&mut self) -> Result<u32, ExprError> {
        let pos = self.pos();
        let v = self.uint()?;
        u32::try_from(v).ok().filter(|k| *k <= 4096).ok_or(ExprError::Exponent { pos })
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut acc = if self.eat(&Token::Minus) {
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            if self.eat(&Token::Plus) {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat(&Token::Minus) {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.factor()?;
        while self.eat(&Token::Star) {
            acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        let base = self.base()?;
        if self.eat(&Token::Caret) {
            let k = self.small()?;
            Ok(Expr::Pow(Box::new(base), k))
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<Expr, ExprError> {
        let pos = self.pos();
        let Some(token) = self.peek().cloned() else {
            return Err(ExprError::Parse {
                pos,
                expected: "expression".into(),
            });
        };
        self.at += 1;
        match token {
            Token::Int(num) => {
                if self.eat(&Token::Slash) {
                    let den = self.uint()?;
                    if den.is_zero() {
                        return Err(ExprError::ZeroDenominator { pos });
                    }
                    Ok(Expr::Number(BigRational::new(num, den)))
                } else {
                    Ok(Expr::Number(BigRational::from_integer(num)))
                }
            }
            Token::Indexed(name, i) => Ok(Expr::Gen(
                Generator::from_letter(&name).expect("lexer only indexes generators"),
                i,
            )),
            Token::Ident(name) => match name.as_str() {
                "pi" => {
                    // pi^-k is a single base; pi^k is a power of pi
                    if self.peek() == Some(&Token::Caret)
                        && self.tokens.get(self.at + 1).map(|(_, t)| t) == Some(&Token::Minus)
                    {
                        self.at += 2;
                        let k = self.small()?;
                        Ok(Expr::Pi(-(k as i32)))
                    } else {
                        Ok(Expr::Pi(1))
                    }
                }
                "X" => Ok(Expr::Vector(VectorPart::Full)),
                "Xb" => Ok(Expr::Vector(VectorPart::Bosonic)),
                "Xf" => Ok(Expr::Vector(VectorPart::Fermionic)),
                other => {
                    let Some(op) = Operator::from_name(other) else {
                        return Err(ExprError::UnknownName {
                            pos,
                            name: other.into(),
                        });
                    };
                    self.expect(Token::LParen, "'('")?;
                    let inner = self.expr()?;
                    self.expect(Token::RParen, "')'")?;
                    Ok(Expr::Call(op, Box::new(inner)))
                }
            },
            Token::LParen => {
                let inner = self.expr()?;
                self.expect(Token::RParen, "')'")?;
                Ok(inner)
            }
            _ => Err(ExprError::Parse {
                pos,
                expected: "expression".into(),
            }),
        }
    }
}

pub fn parse(text: &str) -> Result<Expr, ExprError> {
    let tokens = lex(text)?;
    let mut parser = Parser {
        tokens,
        at: 0,
        end: text.len(),
    };
    let e = parser.expr()?;
    if parser.at != parser.tokens.len() {
        return Err(ExprError::Parse {
            pos: parser.pos(),
            expected: "end of input".into(),
        });
    }
    Ok(e)
}

/// Parses and evaluates in `sig`.
pub fn eval(text: &str, sig: Signature) -> Result<SuperElement, ExprError> {
    parse(text)?.evaluate(sig)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        let sig = Signature::new(3, 1);
        assert_eq!(eval("Dl(X)", sig).unwrap(), SuperElement::one(sig));
        assert!(eval("q1*q2 + q2*q1", sig).unwrap().is_zero());
        let sig = Signature::new(0, 1);
        assert_eq!(eval("Ber(q1*q2)", sig).unwrap(), SuperElement::one(sig));
    }

    #[test]
    fn precedence() {
        let sig = Signature::new(2, 0);
        assert_eq!(
            eval("-x1*x2 + 3/2*x1^2", sig).unwrap(),
            &(-(&SuperElement::x(sig, 1) * &SuperElement::x(sig, 2)))
                + &SuperElement::x(sig, 1).pow(2).scale(&crate::algebra::rational(3, 2))
        );
        assert_eq!(eval("(x1 + x2)^2 - x1^2 - x2^2", sig).unwrap(), eval("2*x1*x2", sig).unwrap());
        assert_eq!(eval("e1^2", sig).unwrap(), SuperElement::from_integer(sig, -1));
        assert_eq!(eval("pi^-1*pi^2", sig).unwrap(), SuperElement::pi(sig, 1));
    }

    #[test]
    fn errors_carry_positions() {
        let sig = Signature::new(2, 1);
        assert_eq!(parse("x1 $ x2"), Err(ExprError::Lex { pos: 3, found: '$' }));
        assert!(matches!(parse("x1 +"), Err(ExprError::Parse { pos: 4, .. })));
        assert!(matches!(parse("Foo(x1)"), Err(ExprError::UnknownName { pos: 0, .. })));
        assert!(matches!(eval("x3", sig), Err(ExprError::Index { var: 'x', index: 3, max: 2, .. })));
        assert!(matches!(eval("y1", sig), Err(ExprError::Index { var: 'y', .. })));
        assert!(matches!(parse("1/0"), Err(ExprError::ZeroDenominator { .. })));
        assert!(matches!(parse("Dl x1"), Err(ExprError::Parse { .. })));
        assert!(matches!(parse("(x1"), Err(ExprError::Parse { .. })));
    }

    #[test]
    fn printing_round_trips() {
        for text in [
            "-x1*x2 + 3/2*x1^2",
            "-(x1 + x2)*e1",
            "Dl(X)*(Xf - Xb)^3",
            "pi^-2*x1 - (-x2)",
            "x1*(x2*x3)",
            "(x1^2)^3",
            "x1 - (x2 - x3)",
        ] {
            let e = parse(text).unwrap();
            assert_eq!(parse(&e.to_string()).unwrap(), e, "{text} -> {e}");
        }
    }

    #[test]
    fn element_display_reparses() {
        let sig = Signature::with_params(3, 1);
        let a = eval("-2/3*pi^-1*x1^2*q2*y1*e1*e3*f1^2 + q1*f2 - 5", sig).unwrap();
        assert_eq!(eval(&a.to_string(), sig).unwrap(), a);
    }
}
