//! Closed-form metric component expressions: parsing and Taylor-mode
//! evaluation in the jet algebra.
//!
//! The grammar covers what analytic surface metrics need: literals, the
//! coordinates `y1, y2`, the four arithmetic operators, integer powers with
//! `^`, unary minus, and the functions `exp`, `log`, `sin`, `cos`, `sqrt`.
//! Precedence is `^` above unary minus above `* /` above `+ -`, with the
//! binary operators left-associative.

use crate::error::{Error, Result};
use crate::jet::Jet2;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Exp,
    Log,
    Sin,
    Cos,
    Sqrt,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sqrt => "sqrt",
        }
    }
}

/// Abstract syntax tree of a metric component expression.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Number(f64),
    /// Coordinate `y1` or `y2` (1-based).
    Var(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    /// Integer power of a subexpression.
    Pow(Box<Expr>, i64),
    Call(Func, Box<Expr>),
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(..) => 3,
            Expr::Pow(..) => 4,
            Expr::Number(_) | Expr::Var(_) | Expr::Call(..) => 5,
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn paren(f: &mut fmt::Formatter<'_>, e: &Expr, need: bool) -> fmt::Result {
            if need {
                write!(f, "(")?;
                write!(f, "{e}")?;
                write!(f, ")")
            } else {
                write!(f, "{e}")
            }
        }
        match self {
            Expr::Number(v) => write!(f, "{v}"),
            Expr::Var(i) => write!(f, "y{i}"),
            Expr::Neg(e) => {
                write!(f, "-")?;
                paren(f, e, e.precedence() < 3)
            }
            Expr::Add(a, b) => {
                paren(f, a, a.precedence() < 1)?;
                write!(f, " + ")?;
                paren(f, b, b.precedence() <= 1)
            }
            Expr::Sub(a, b) => {
                paren(f, a, a.precedence() < 1)?;
                write!(f, " - ")?;
                paren(f, b, b.precedence() <= 1)
            }
            Expr::Mul(a, b) => {
                paren(f, a, a.precedence() < 2)?;
                write!(f, "*")?;
                paren(f, b, b.precedence() <= 2)
            }
            Expr::Div(a, b) => {
                paren(f, a, a.precedence() < 2)?;
                write!(f, "/")?;
                paren(f, b, b.precedence() <= 2)
            }
            Expr::Pow(a, n) => {
                paren(f, a, a.precedence() < 5)?;
                write!(f, "^{n}")
            }
            Expr::Call(func, e) => write!(f, "{}({e})", func.name()),
        }
    }
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            text: text.as_bytes(),
            pos: 0,
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::SyntaxError {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.text.get(self.pos), Some(b' ' | b'\t' | b'\n' | b'\r')) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += 1;
                Ok(())
            }
            Some(got) => Err(self.error(format!(
                "expected '{}', found '{}'",
                c as char, got as char
            ))),
            None => Err(self.error(format!("expected '{}', found end of input", c as char))),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(b'/') => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let exponent = self.integer()?;
            Ok(Expr::Pow(Box::new(base), exponent))
        } else {
            Ok(base)
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.text.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.text.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if self.pos == start || (self.pos == start + 1 && self.text[start] == b'-') {
            return Err(self.error("expected integer exponent"));
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.error("exponent out of range"))
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => self.identifier(),
            Some(c) => Err(self.error(format!("unexpected character '{}'", c as char))),
            None => Err(self.error("expected expression, found end of input")),
        }
    }

    fn number(&mut self) -> Result<Expr> {
        self.skip_ws();
        let start = self.pos;
        while self.text.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if self.text.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            while self.text.get(self.pos).is_some_and(u8::is_ascii_digit) {
                self.pos += 1;
            }
        }
        if matches!(self.text.get(self.pos), Some(b'e' | b'E')) {
            let mark = self.pos;
            self.pos += 1;
            if matches!(self.text.get(self.pos), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if self.text.get(self.pos).is_some_and(u8::is_ascii_digit) {
                while self.text.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    self.pos += 1;
                }
            } else {
                self.pos = mark; // not an exponent, leave the 'e' alone
            }
        }
        let s = std::str::from_utf8(&self.text[start..self.pos]).unwrap();
        s.parse()
            .map(Expr::Number)
            .map_err(|_| self.error(format!("bad numeric literal '{s}'")))
    }

    fn identifier(&mut self) -> Result<Expr> {
        self.skip_ws();
        let start = self.pos;
        while self
            .text
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric())
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.text[start..self.pos]).unwrap();
        match name {
            "y1" => Ok(Expr::Var(1)),
            "y2" => Ok(Expr::Var(2)),
            "exp" | "log" | "sin" | "cos" | "sqrt" => {
                let func = match name {
                    "exp" => Func::Exp,
                    "log" => Func::Log,
                    "sin" => Func::Sin,
                    "cos" => Func::Cos,
                    _ => Func::Sqrt,
                };
                self.expect(b'(')?;
                let arg = self.expr()?;
                self.expect(b')')?;
                Ok(Expr::Call(func, Box::new(arg)))
            }
            _ => {
                self.pos = start;
                Err(self.error(format!("unknown identifier '{name}'")))
            }
        }
    }
}

/// Parses an expression with standard precedence and left associativity.
pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser::new(text);
    let e = p.expr()?;
    if let Some(c) = p.peek() {
        return Err(p.error(format!("unexpected trailing character '{}'", c as char)));
    }
    Ok(e)
}

/// Evaluates an expression to its Taylor jet at `base` to order `order`.
pub fn eval_jet(e: &Expr, base: [f64; 2], order: usize) -> Result<Jet2> {
    match e {
        Expr::Number(v) => Ok(Jet2::constant(*v, order)),
        Expr::Var(i) => {
            let mut j = Jet2::constant(base[i - 1], order);
            if order >= 1 {
                j = j + Jet2::variable(*i, order);
            }
            Ok(j)
        }
        Expr::Neg(inner) => Ok(-eval_jet(inner, base, order)?),
        Expr::Add(a, b) => Ok(eval_jet(a, base, order)? + eval_jet(b, base, order)?),
        Expr::Sub(a, b) => Ok(eval_jet(a, base, order)? - eval_jet(b, base, order)?),
        Expr::Mul(a, b) => Ok(eval_jet(a, base, order)?.mul(&eval_jet(b, base, order)?)),
        Expr::Div(a, b) => eval_jet(a, base, order)?.div(&eval_jet(b, base, order)?),
        Expr::Pow(a, n) => eval_jet(a, base, order)?.powi(*n),
        Expr::Call(func, arg) => {
            let j = eval_jet(arg, base, order)?;
            match func {
                Func::Exp => Ok(j.exp()),
                Func::Log => j.ln(),
                Func::Sin => Ok(j.sin()),
                Func::Cos => Ok(j.cos()),
                Func::Sqrt => j.sqrt(),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_reciprocal_square() {
        let e = parse("1/(y2^2)").unwrap();
        assert_eq!(
            e,
            Expr::Div(
                Box::new(Expr::Number(1.0)),
                Box::new(Expr::Pow(Box::new(Expr::Var(2)), 2))
            )
        );
    }

    #[test]
    fn parses_left_associative_sums() {
        let e = parse("1 + 2*y1 - y2").unwrap();
        assert_eq!(
            e,
            Expr::Sub(
                Box::new(Expr::Add(
                    Box::new(Expr::Number(1.0)),
                    Box::new(Expr::Mul(
                        Box::new(Expr::Number(2.0)),
                        Box::new(Expr::Var(1))
                    ))
                )),
                Box::new(Expr::Var(2))
            )
        );
    }

    #[test]
    fn unary_minus_binds_below_power() {
        let e = parse("-y1^2").unwrap();
        assert_eq!(e, Expr::Neg(Box::new(Expr::Pow(Box::new(Expr::Var(1)), 2))));
    }

    #[test]
    fn reports_error_position() {
        let err = parse("exp(").unwrap_err();
        assert_eq!(
            err,
            Error::SyntaxError {
                position: 4,
                message: "expected expression, found end of input".into()
            }
        );
    }

    #[test]
    fn eval_reciprocal_square_is_binomial_series() {
        // 1/(y2^2) at (0, 1): 1 - 2 u2 + 3 u2^2.
        let e = parse("1/(y2^2)").unwrap();
        let j = eval_jet(&e, [0.0, 1.0], 2).unwrap();
        assert!((j.get(0, 0) - 1.0).abs() < 1e-14);
        assert!((j.get(0, 1) + 2.0).abs() < 1e-14);
        assert!((j.get(0, 2) - 3.0).abs() < 1e-14);
        assert!(j.get(1, 0).abs() < 1e-14);
    }

    #[test]
    fn eval_affine_expression_tracks_base() {
        let e = parse("y1 + 2").unwrap();
        for base in [[0.0, 0.0], [3.5, -1.0], [-0.25, 8.0]] {
            let j = eval_jet(&e, base, 3).unwrap();
            assert_eq!(j.get(0, 0), base[0] + 2.0);
            assert_eq!(j.get(1, 0), 1.0);
            assert_eq!(j.get(0, 1), 0.0);
        }
    }

    #[test]
    fn sqrt_at_branch_point_is_domain_error() {
        let e = parse("sqrt(y1)").unwrap();
        assert!(matches!(
            eval_jet(&e, [0.0, 0.0], 2),
            Err(Error::DomainError(_))
        ));
    }

    #[test]
    fn division_by_vanishing_expression() {
        let e = parse("1/y1").unwrap();
        assert_eq!(
            eval_jet(&e, [0.0, 0.0], 2),
            Err(Error::DivisionByZeroConstantTerm)
        );
    }

    #[test]
    fn print_parse_round_trip() {
        let corpus = [
            "1/(y2^2)",
            "1 + 2*y1 - y2",
            "exp(2*y1)",
            "sqrt(1 + y1^2 + y2^2)",
            "-y1^2 + cos(y2)/(1 + y1)",
            "(1 + (y1^2 + y2^2)/4)^-2",
            "sin(y1)*cos(y2) - log(2 + y1)",
            "1 - y1*y2/(3 - y2)",
        ];
        for text in corpus {
            let tree = parse(text).unwrap();
            let printed = tree.to_string();
            let reparsed = parse(&printed)
                .unwrap_or_else(|e| panic!("reparse of '{printed}' failed: {e}"));
            assert_eq!(tree, reparsed, "round trip changed tree for '{text}'");
        }
    }

    #[test]
    fn first_order_jets_match_finite_differences() {
        let corpus = [
            ("exp(2*y1)", [0.1, 0.0]),
            ("1/(y2^2)", [0.0, 1.3]),
            ("sqrt(1 + y1^2 + y2^2)", [0.2, -0.4]),
            ("sin(y1)*cos(y2)", [0.5, 0.25]),
            ("log(2 + y1 - y2)", [0.1, 0.2]),
            ("(1 + (y1^2 + y2^2)/4)^-2", [0.3, -0.2]),
        ];
        let h = 1e-5;
        for (text, base) in corpus {
            let tree = parse(text).unwrap();
            let jet = eval_jet(&tree, base, 2).unwrap();
            let value = |y1: f64, y2: f64| {
                eval_jet(&tree, [y1, y2], 0).map(|j| j.get(0, 0)).unwrap()
            };
            let d1 = (value(base[0] + h, base[1]) - value(base[0] - h, base[1])) / (2.0 * h);
            let d2 = (value(base[0], base[1] + h) - value(base[0], base[1] - h)) / (2.0 * h);
            assert!((jet.get(1, 0) - d1).abs() < 1e-6, "{text}: d1");
            assert!((jet.get(0, 1) - d2).abs() < 1e-6, "{text}: d2");
        }
    }
}
