use num_traits::{One, Zero};

use crate::error::AlgebraError;
use crate::power::PowerElem;
use crate::rational::{parse_decimal, Q};
use crate::ring::DimRing;

use super::{Quantity, QuantityError, UnitExpr, UnitRegistry};

/// Syntax tree of a quantity expression; byte offsets are kept for errors.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Q),
    Unit { symbol: String, pos: usize },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
    End,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, QuantityError> {
    let mut out = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some(&(i, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
        } else if c.is_ascii_digit() || c == '.' {
            let mut s = String::new();
            while let Some(&(_, d)) = it.peek() {
                if d.is_ascii_digit() || d == '.' {
                    s.push(d);
                    it.next();
                } else {
                    break;
                }
            }
            out.push((Tok::Num(s), i));
        } else if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&(_, d)) = it.peek() {
                if d.is_alphanumeric() || d == '_' {
                    s.push(d);
                    it.next();
                } else {
                    break;
                }
            }
            out.push((Tok::Ident(s), i));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), i));
            it.next();
        } else {
            return Err(QuantityError::Parse { pos: i, msg: format!("unexpected character `{c}`") });
        }
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, QuantityError> {
        Err(QuantityError::Parse { pos: self.pos(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<Expr, QuantityError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Op('+') => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Op('-') => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, QuantityError> {
        let mut lhs = self.juxtaposed()?;
        loop {
            match self.peek() {
                Tok::Op('*') => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.juxtaposed()?));
                }
                Tok::Op('/') => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.juxtaposed()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    /// `36.7 cm^3`: a factor followed directly by unit factors multiplies
    /// them, binding tighter than `*` and `/`.
    fn juxtaposed(&mut self) -> Result<Expr, QuantityError> {
        let mut lhs = self.signed()?;
        while matches!(self.peek(), Tok::Ident(_) | Tok::Op('(')) {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        if matches!(self.peek(), Tok::Num(_)) {
            return self.err("a number cannot follow another factor directly");
        }
        Ok(lhs)
    }

    fn signed(&mut self) -> Result<Expr, QuantityError> {
        if *self.peek() == Tok::Op('-') {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.signed()?)));
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<Expr, QuantityError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Op('^') {
            return Ok(base);
        }
        self.bump();
        let start = self.pos();
        let negative = match self.peek() {
            Tok::Op('-') => {
                self.bump();
                true
            }
            Tok::Op('+') => {
                self.bump();
                false
            }
            _ => false,
        };
        match self.bump() {
            (Tok::Num(s), _) if s.chars().all(|c| c.is_ascii_digit()) => {
                let n: i64 = s
                    .parse()
                    .map_err(|_| QuantityError::Parse { pos: start, msg: format!("exponent {s} is too large") })?;
                Ok(Expr::Pow(Box::new(base), if negative { -n } else { n }))
            }
            _ => Err(QuantityError::Parse { pos: start, msg: "malformed exponent: expected an integer".into() }),
        }
    }

    fn atom(&mut self) -> Result<Expr, QuantityError> {
        let pos = self.pos();
        match self.bump() {
            (Tok::Num(s), _) => {
                parse_decimal(&s).map(Expr::Num).map_err(|_| QuantityError::Parse { pos, msg: format!("malformed number `{s}`") })
            }
            (Tok::Ident(symbol), _) => Ok(Expr::Unit { symbol, pos }),
            (Tok::Op('('), _) => {
                let e = self.expr()?;
                if *self.peek() != Tok::Op(')') {
                    return self.err("expected `)`");
                }
                self.bump();
                Ok(e)
            }
            (Tok::End, _) => Err(QuantityError::Parse { pos, msg: "unexpected end of input".into() }),
            (Tok::Op(c), _) => Err(QuantityError::Parse { pos, msg: format!("unexpected `{c}`") }),
        }
    }
}

/// Parses a quantity expression. Unit symbols are not resolved here.
pub fn parse_expr(src: &str) -> Result<Expr, QuantityError> {
    let mut p = Parser { toks: lex(src)?, at: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.err("unexpected input after the expression");
    }
    Ok(e)
}

impl UnitRegistry {
    fn mismatch(&self, e: AlgebraError) -> QuantityError {
        match e {
            AlgebraError::DimensionMismatch { left, right } => {
                QuantityError::DimensionMismatch { left: self.pretty(&left), right: self.pretty(&right) }
            }
            AlgebraError::DivisionByZero => QuantityError::DivisionByZero,
            e => QuantityError::Algebra(e),
        }
    }

    fn power(&self, x: &PowerElem, n: i64) -> Result<PowerElem, QuantityError> {
        let r = self.ring();
        let base = if n < 0 { r.reciprocal(x).map_err(|e| self.mismatch(e))? } else { x.clone() };
        let mut acc = r.one();
        for _ in 0..n.unsigned_abs() {
            acc = r.mul(&acc, &base);
        }
        Ok(acc)
    }

    pub fn eval(&self, e: &Expr) -> Result<Quantity, QuantityError> {
        let r = self.ring();
        let dimless = || crate::dim::Dim(vec![0; self.rank()]);
        Ok(match e {
            Expr::Num(q) => Quantity { value: self.coherent(q.clone(), dimless())?, unit: UnitExpr::default() },
            Expr::Unit { symbol, pos } => {
                let (d, f) = self.unit(symbol).ok_or_else(|| QuantityError::UnknownUnit { symbol: symbol.clone(), pos: *pos })?;
                Quantity { value: self.coherent(f.clone(), d.clone())?, unit: UnitExpr::symbol(symbol) }
            }
            Expr::Neg(a) => {
                let a = self.eval(a)?;
                Quantity { value: r.neg(&a.value), unit: a.unit }
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                let b = if matches!(e, Expr::Sub(..)) { r.neg(&b.value) } else { b.value };
                let value = r.add(&a.value, &b).map_err(|e| self.mismatch(e))?;
                Quantity { value, unit: a.unit }
            }
            Expr::Mul(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                Quantity { value: r.odot(&a.value, &b.value)?, unit: a.unit.times(&b.unit) }
            }
            Expr::Div(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                let inv = self.power(&b.value, -1)?;
                Quantity { value: r.odot(&a.value, &inv)?, unit: a.unit.times(&b.unit.powi(-1)) }
            }
            Expr::Pow(a, n) => {
                let a = self.eval(a)?;
                Quantity { value: self.power(&a.value, *n)?, unit: a.unit.powi(*n) }
            }
        })
    }

    pub fn evaluate(&self, src: &str) -> Result<Quantity, QuantityError> {
        self.eval(&parse_expr(src)?)
    }

    /// Parses a unit expression such as `L/min` or `s^-1`. Numbers other
    /// than a leading `1` are refused.
    pub fn parse_unit(&self, src: &str) -> Result<UnitExpr, QuantityError> {
        fn pure(e: &Expr) -> bool {
            match e {
                Expr::Num(q) => q.is_one(),
                Expr::Unit { .. } => true,
                Expr::Mul(a, b) | Expr::Div(a, b) => pure(a) && pure(b),
                Expr::Pow(a, _) => pure(a),
                _ => false,
            }
        }
        let e = parse_expr(src)?;
        if !pure(&e) {
            return Err(QuantityError::Parse { pos: 0, msg: format!("`{src}` is not a unit expression") });
        }
        Ok(self.eval(&e)?.unit)
    }

    /// Re-expresses `q` in `target`; the underlying element is unchanged.
    pub fn convert(&self, q: &Quantity, target: &str) -> Result<Quantity, QuantityError> {
        let unit = self.parse_unit(target)?;
        let (d, f) = self.resolve(&unit)?;
        let have = self.ring().dim(&q.value);
        if d != have {
            return Err(QuantityError::Incompatible { from: self.pretty(&have), to: self.pretty(&d) });
        }
        debug_assert!(!f.is_zero());
        Ok(Quantity { value: q.value.clone(), unit })
    }
}
