//! A small expression language in one variable `x`, with symbolic
//! differentiation. Used for the spatial profiles of manufactured solutions.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' unary)?          exponent must not depend on x
//! atom  := number | 'x' | 'pi' | func '(' expr ')' | '(' expr ')'
//! func  := sin | cos | sinh | cosh | exp
//! ```

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    X,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, f64),
    Sin(Box<Expr>),
    Cos(Box<Expr>),
    Sinh(Box<Expr>),
    Cosh(Box<Expr>),
    Exp(Box<Expr>),
}

use Expr::*;

fn b(e: Expr) -> Box<Expr> {
    Box::new(e)
}

impl Expr {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Const(c) => *c,
            X => x,
            Neg(a) => -a.eval(x),
            Add(l, r) => l.eval(x) + r.eval(x),
            Sub(l, r) => l.eval(x) - r.eval(x),
            Mul(l, r) => l.eval(x) * r.eval(x),
            Div(l, r) => l.eval(x) / r.eval(x),
            Pow(a, p) => {
                let v = a.eval(x);
                if p.fract() == 0.0 && p.abs() < i32::MAX as f64 {
                    v.powi(*p as i32)
                } else {
                    v.powf(*p)
                }
            }
            Sin(a) => a.eval(x).sin(),
            Cos(a) => a.eval(x).cos(),
            Sinh(a) => a.eval(x).sinh(),
            Cosh(a) => a.eval(x).cosh(),
            Exp(a) => a.eval(x).exp(),
        }
    }

    fn is_const(&self) -> Option<f64> {
        match self {
            Const(c) => Some(*c),
            _ => None,
        }
    }

    fn depends_on_x(&self) -> bool {
        match self {
            Const(_) => false,
            X => true,
            Neg(a) | Pow(a, _) | Sin(a) | Cos(a) | Sinh(a) | Cosh(a) | Exp(a) => a.depends_on_x(),
            Add(l, r) | Sub(l, r) | Mul(l, r) | Div(l, r) => l.depends_on_x() || r.depends_on_x(),
        }
    }

    /// d/dx
    pub fn derivative(&self) -> Expr {
        match self {
            Const(_) => Const(0.0),
            X => Const(1.0),
            Neg(a) => neg(a.derivative()),
            Add(l, r) => add(l.derivative(), r.derivative()),
            Sub(l, r) => sub(l.derivative(), r.derivative()),
            Mul(l, r) => add(
                mul(l.derivative(), (**r).clone()),
                mul((**l).clone(), r.derivative()),
            ),
            Div(l, r) => div(
                sub(
                    mul(l.derivative(), (**r).clone()),
                    mul((**l).clone(), r.derivative()),
                ),
                pow((**r).clone(), 2.0),
            ),
            Pow(a, p) => mul(mul(Const(*p), pow((**a).clone(), p - 1.0)), a.derivative()),
            Sin(a) => mul(Cos(a.clone()), a.derivative()),
            Cos(a) => neg(mul(Sin(a.clone()), a.derivative())),
            Sinh(a) => mul(Cosh(a.clone()), a.derivative()),
            Cosh(a) => mul(Sinh(a.clone()), a.derivative()),
            Exp(a) => mul(Exp(a.clone()), a.derivative()),
        }
    }
}

// constructors with constant folding, so repeated differentiation stays small

fn neg(a: Expr) -> Expr {
    match a {
        Const(c) => Const(-c),
        Neg(inner) => *inner,
        a => Neg(b(a)),
    }
}

fn add(l: Expr, r: Expr) -> Expr {
    match (l.is_const(), r.is_const()) {
        (Some(x), Some(y)) => Const(x + y),
        (Some(0.0), _) => r,
        (_, Some(0.0)) => l,
        _ => Add(b(l), b(r)),
    }
}

fn sub(l: Expr, r: Expr) -> Expr {
    match (l.is_const(), r.is_const()) {
        (Some(x), Some(y)) => Const(x - y),
        (Some(0.0), _) => neg(r),
        (_, Some(0.0)) => l,
        _ => Sub(b(l), b(r)),
    }
}

fn mul(l: Expr, r: Expr) -> Expr {
    match (l.is_const(), r.is_const()) {
        (Some(x), Some(y)) => Const(x * y),
        (Some(0.0), _) | (_, Some(0.0)) => Const(0.0),
        (Some(1.0), _) => r,
        (_, Some(1.0)) => l,
        _ => Mul(b(l), b(r)),
    }
}

fn div(l: Expr, r: Expr) -> Expr {
    match (l.is_const(), r.is_const()) {
        (Some(x), Some(y)) => Const(x / y),
        (Some(0.0), _) => Const(0.0),
        (_, Some(1.0)) => l,
        _ => Div(b(l), b(r)),
    }
}

fn pow(a: Expr, p: f64) -> Expr {
    if p == 0.0 {
        return Const(1.0);
    }
    if p == 1.0 {
        return a;
    }
    match a {
        Const(c) => Const(c.powf(p)),
        a => Pow(b(a), p),
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Const(c) => write!(f, "{c}"),
            X => write!(f, "x"),
            Neg(a) => write!(f, "-({a})"),
            Add(l, r) => write!(f, "({l} + {r})"),
            Sub(l, r) => write!(f, "({l} - {r})"),
            Mul(l, r) => write!(f, "({l} * {r})"),
            Div(l, r) => write!(f, "({l} / {r})"),
            Pow(a, p) => write!(f, "({a})^({p})"),
            Sin(a) => write!(f, "sin({a})"),
            Cos(a) => write!(f, "cos({a})"),
            Sinh(a) => write!(f, "sinh({a})"),
            Cosh(a) => write!(f, "cosh({a})"),
            Exp(a) => write!(f, "exp({a})"),
        }
    }
}

impl FromStr for Expr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Expr> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(e)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Add(b(lhs), b(self.term()?));
            } else if self.eat(b'-') {
                lhs = Sub(b(lhs), b(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(b'*') {
                lhs = Mul(b(lhs), b(self.unary()?));
            } else if self.eat(b'/') {
                lhs = Div(b(lhs), b(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(b'-') {
            Ok(Neg(b(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let at = self.pos;
            let exponent = self.unary()?;
            if exponent.depends_on_x() {
                return Err(Error::Parse { pos: at, msg: "exponent must be constant".into() });
            }
            return Ok(Pow(b(base), exponent.eval(0.0)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let word = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default();
                let func: fn(Box<Expr>) -> Expr = match word {
                    "x" => return Ok(X),
                    "pi" => return Ok(Const(std::f64::consts::PI)),
                    "sin" => Sin,
                    "cos" => Cos,
                    "sinh" => Sinh,
                    "cosh" => Cosh,
                    "exp" => Exp,
                    _ => {
                        return Err(Error::Parse {
                            pos: start,
                            msg: format!("unknown identifier '{word}'"),
                        })
                    }
                };
                if !self.eat(b'(') {
                    return Err(self.error("expected '(' after function name"));
                }
                let arg = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(func(b(arg)))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<Expr> {
        let start = self.pos;
        let digits = |p: &mut Self| {
            while p.pos < p.src.len() && (p.src[p.pos].is_ascii_digit() || p.src[p.pos] == b'.') {
                p.pos += 1;
            }
        };
        digits(self);
        if self.pos < self.src.len() && matches!(self.src[self.pos], b'e' | b'E') {
            let save = self.pos;
            self.pos += 1;
            if self.pos < self.src.len() && matches!(self.src[self.pos], b'+' | b'-') {
                self.pos += 1;
            }
            if self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                digits(self);
            } else {
                self.pos = save;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default();
        text.parse::<f64>()
            .map(Const)
            .map_err(|_| Error::Parse { pos: start, msg: format!("bad number '{text}'") })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn parse(s: &str) -> Expr {
        s.parse().unwrap()
    }

    #[test]
    fn precedence() {
        assert_eq!(parse("1 + 2 * 3").eval(0.0), 7.0);
        assert_eq!(parse("-2^2").eval(0.0), -4.0);
        assert_eq!(parse("2^-1").eval(0.0), 0.5);
        assert_eq!(parse("(1 - x) * x").eval(0.5), 0.25);
        assert_eq!(parse("8 / 4 / 2").eval(0.0), 1.0);
        assert_eq!(parse("1.5e1 + x").eval(1.0), 16.0);
    }

    #[test]
    fn functions() {
        let e = parse("sin(pi*x) + exp(x) - cosh(x)/2 + sinh(0)*cos(x)");
        let x = 0.3f64;
        let expected = (PI * x).sin() + x.exp() - x.cosh() / 2.0;
        assert!((e.eval(x) - expected).abs() < 1e-15);
    }

    #[test]
    fn errors() {
        for bad in ["", "1 +", "sin x", "foo(x)", "x^x", "(1", "1 2", "3 $"] {
            assert!(bad.parse::<Expr>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn derivatives_against_known_forms() {
        let e = parse("x*(1-x)");
        let d1 = e.derivative();
        let d2 = d1.derivative();
        for &x in &[0.0, 0.2, 0.9] {
            assert!((d1.eval(x) - (1.0 - 2.0 * x)).abs() < 1e-15);
            assert!((d2.eval(x) + 2.0).abs() < 1e-15);
        }
        let s = parse("sin(pi*x)").derivative().derivative();
        assert!((s.eval(0.25) + PI * PI * (PI / 4.0).sin()).abs() < 1e-12);
        let q = parse("1/(1+x^2)").derivative();
        assert!((q.eval(1.0) + 0.5).abs() < 1e-15);
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let e = parse("exp(-x) * sinh(2*x) + cos(3*x)^3 - x^2.5");
        let d = e.derivative();
        let step = 1e-6;
        for m in 1..20 {
            let x = m as f64 / 20.0;
            let fd = (e.eval(x + step) - e.eval(x - step)) / (2.0 * step);
            assert!((fd - d.eval(x)).abs() < 1e-7 * (1.0 + fd.abs()), "x = {x}");
        }
    }

    #[test]
    fn display_round_trips() {
        let e = parse("sin(pi*x) - 2*x^3/(1+exp(x))");
        let again = parse(&e.to_string());
        for m in 0..10 {
            let x = m as f64 / 9.0;
            assert!((e.eval(x) - again.eval(x)).abs() < 1e-14);
        }
    }
}
