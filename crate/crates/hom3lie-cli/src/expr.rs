//! Rational expressions over named parameters.
//!
//! Grammar (left associative, unary minus binds tightest):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | primary
//! primary := integer | identifier | '(' expr ')'
//! ```
//!
//! A literal `p/q` is an ordinary division of two integers.

use std::collections::BTreeMap;
use std::fmt;

use hom3lie::Scalar;
use num::{BigInt, Zero};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScalarExpr {
    Int(BigInt),
    Var(String),
    Neg(Box<ScalarExpr>),
    Add(Box<ScalarExpr>, Box<ScalarExpr>),
    Sub(Box<ScalarExpr>, Box<ScalarExpr>),
    Mul(Box<ScalarExpr>, Box<ScalarExpr>),
    Div(Box<ScalarExpr>, Box<ScalarExpr>),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("syntax error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unbound parameter `{0}`")]
    Unbound(String),
    #[error("division by zero in `{0}`")]
    DivisionByZero(String),
}

pub type Bindings = BTreeMap<String, Scalar>;

impl ScalarExpr {
    pub fn int(n: i64) -> Self {
        ScalarExpr::Int(BigInt::from(n))
    }

    pub fn eval(&self, b: &Bindings) -> Result<Scalar, EvalError> {
        use ScalarExpr::*;
        Ok(match self {
            Int(n) => Scalar::from_integer(n.clone()),
            Var(name) => b.get(name).cloned().ok_or_else(|| EvalError::Unbound(name.clone()))?,
            Neg(x) => -x.eval(b)?,
            Add(x, y) => x.eval(b)? + y.eval(b)?,
            Sub(x, y) => x.eval(b)? - y.eval(b)?,
            Mul(x, y) => x.eval(b)? * y.eval(b)?,
            Div(x, y) => {
                let d = y.eval(b)?;
                if d.is_zero() {
                    return Err(EvalError::DivisionByZero(self.to_string()));
                }
                x.eval(b)? / d
            }
        })
    }

    /// Identifiers in order of first appearance.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        use ScalarExpr::*;
        match self {
            Int(_) => {}
            Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Neg(x) => x.collect_vars(out),
            Add(x, y) | Sub(x, y) | Mul(x, y) | Div(x, y) => {
                x.collect_vars(out);
                y.collect_vars(out);
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            ScalarExpr::Add(..) | ScalarExpr::Sub(..) => 1,
            ScalarExpr::Mul(..) | ScalarExpr::Div(..) => 2,
            ScalarExpr::Neg(_) => 3,
            _ => 4,
        }
    }
}

impl fmt::Display for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ScalarExpr::*;
        let wrap = |f: &mut fmt::Formatter<'_>, e: &ScalarExpr, paren: bool| {
            if paren {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            Int(n) => write!(f, "{n}"),
            Var(v) => write!(f, "{v}"),
            Neg(x) => {
                write!(f, "-")?;
                wrap(f, x, x.precedence() < 3)
            }
            Add(x, y) | Sub(x, y) | Mul(x, y) | Div(x, y) => {
                let p = self.precedence();
                let op = match self {
                    Add(..) => " + ",
                    Sub(..) => " - ",
                    Mul(..) => "*",
                    _ => "/",
                };
                wrap(f, x, x.precedence() < p)?;
                write!(f, "{op}")?;
                wrap(f, y, y.precedence() <= p)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("digits");
            out.push((start, Tok::Int(n)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
        } else if "+-*/()".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            let ch = text[i..].chars().next().expect("in range");
            return Err(ParseError {
                offset: i,
                message: format!("unexpected character `{ch}`"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn error<T>(&self, message: &str) -> Result<T, ParseError> {
        Err(ParseError {
            offset: self.offset(),
            message: message.to_string(),
        })
    }

    fn expr(&mut self) -> Result<ScalarExpr, ParseError> {
        let mut left = self.term()?;
        while let Some(Tok::Sym(c @ ('+' | '-'))) = self.peek() {
            let c = *c;
            self.pos += 1;
            let right = self.term()?;
            left = if c == '+' {
                ScalarExpr::Add(Box::new(left), Box::new(right))
            } else {
                ScalarExpr::Sub(Box::new(left), Box::new(right))
            };
        }
        Ok(left)
    }

    fn term(&mut self) -> Result<ScalarExpr, ParseError> {
        let mut left = self.unary()?;
        while let Some(Tok::Sym(c @ ('*' | '/'))) = self.peek() {
            let c = *c;
            self.pos += 1;
            let right = self.unary()?;
            left = if c == '*' {
                ScalarExpr::Mul(Box::new(left), Box::new(right))
            } else {
                ScalarExpr::Div(Box::new(left), Box::new(right))
            };
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<ScalarExpr, ParseError> {
        if let Some(Tok::Sym('-')) = self.peek() {
            self.pos += 1;
            return Ok(ScalarExpr::Neg(Box::new(self.unary()?)));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<ScalarExpr, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(ScalarExpr::Int(n))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(ScalarExpr::Var(s))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::Sym(')')) {
                    return self.error("expected `)`");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(_) => self.error("expected a number, identifier or `(`"),
            None => self.error("unexpected end of expression"),
        }
    }
}

pub fn parse_scalar_expr(text: &str) -> Result<ScalarExpr, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        end: text.len(),
    };
    let e = p.expr()?;
    if p.pos != toks.len() {
        return p.error("unexpected trailing input");
    }
    Ok(e)
}

/// `n` or `p/q`.
pub fn fmt_rational(x: &Scalar) -> String {
    hom3lie::linalg::fmt_scalar(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use hom3lie::linalg::{frac, int};

    fn eval(text: &str, b: &[(&str, Scalar)]) -> Result<Scalar, EvalError> {
        let b = b.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
        parse_scalar_expr(text).unwrap().eval(&b)
    }

    #[test]
    fn precedence_and_literals() {
        assert_eq!(eval("3/4 + 2*lambda", &[("lambda", frac(1, 2))]), Ok(frac(7, 4)));
        let b = [("a1", int(2)), ("s1", int(1)), ("a2", int(1)), ("s2", int(1))];
        assert_eq!(eval("-(a1*s1 - a2*s2)/s1", &b), Ok(int(-1)));
        assert_eq!(eval("1 - 2 - 3", &[]), Ok(int(-4)));
        assert_eq!(eval("12/2/3", &[]), Ok(int(2)));
        assert_eq!(eval("-2*3", &[]), Ok(int(-6)));
        assert_eq!(eval("--2", &[]), Ok(int(2)));
    }

    #[test]
    fn evaluation_errors() {
        assert_eq!(
            eval("1/(s1 - s1)", &[("s1", int(1))]),
            Err(EvalError::DivisionByZero("1/(s1 - s1)".into()))
        );
        assert_eq!(eval("x + 1", &[]), Err(EvalError::Unbound("x".into())));
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        assert_eq!(parse_scalar_expr("1 + * 2").unwrap_err().offset, 4);
        assert_eq!(parse_scalar_expr("(1 + 2").unwrap_err().offset, 6);
        assert_eq!(parse_scalar_expr("1 $ 2").unwrap_err().offset, 2);
        assert_eq!(parse_scalar_expr("1 2").unwrap_err().offset, 2);
        assert_eq!(parse_scalar_expr("").unwrap_err().offset, 0);
    }

    #[test]
    fn printing_is_minimal_and_reparses() {
        for text in ["a - (b - c)", "(a - b) - c", "-(a*b)", "a/(b*c)", "a*b/c", "-a*b", "r1*r2*(lambda - 1)"] {
            let e = parse_scalar_expr(text).unwrap();
            assert_eq!(parse_scalar_expr(&e.to_string()).unwrap(), e, "{text}");
        }
        assert_eq!(parse_scalar_expr("(a - b) - c").unwrap().to_string(), "a - b - c");
        assert_eq!(parse_scalar_expr("-(a*b)").unwrap().to_string(), "-(a*b)");
    }
}
