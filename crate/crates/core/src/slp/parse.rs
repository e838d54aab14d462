//! Polynomial expressions to straight-line programs.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ['^' integer]
//! atom   := integer ['/' integer] | 'x' index | '(' expr ')'
//! ```
//!
//! Variables are `x1 .. xn`. Rational literals are cleared: each polynomial
//! is multiplied by a positive integer so that all constants are integers;
//! the multiplier is reported alongside the program.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use super::Slp;

const MAX_EXPONENT: u32 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}, column {column}: unknown variable {name:?} (expected x1..x{n})")]
    UnknownVariable {
        line: usize,
        column: usize,
        name: String,
        n: usize,
    },
    #[error("line {line}: {message}")]
    Header { line: usize, message: String },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match self {
            ParseError::Syntax { line, .. }
            | ParseError::UnknownVariable { line, .. }
            | ParseError::Header { line, .. } => *line,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(String),
    Op(char),
}

#[derive(Clone, Debug)]
enum Expr {
    Var(usize),
    Const(BigInt, BigInt),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    n: usize,
    text: &'a str,
}

fn tokenize(text: &str, line: usize) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Num(s.parse().unwrap()), col));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Var(chars[start..i].iter().collect()), col));
        } else if "+-*^()/".contains(c) {
            out.push((Tok::Op(c), col));
            i += 1;
        } else {
            return Err(ParseError::Syntax {
                line,
                column: col,
                message: format!("unexpected character {c:?}"),
            });
        }
    }
    Ok(out)
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn column(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|t| t.1)
            .unwrap_or(self.text.chars().count() + 1)
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            line: self.line,
            column: self.column(),
            message: message.into(),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat('-') {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            acc = Expr::Mul(Box::new(acc), Box::new(self.unary()?));
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            return Ok(match self.unary()? {
                Expr::Const(a, b) => Expr::Const(-a, b),
                e => Expr::Neg(Box::new(e)),
            });
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            let col = self.column();
            match self.peek().cloned() {
                Some(Tok::Num(k)) => {
                    self.pos += 1;
                    let k: u32 = k
                        .try_into()
                        .ok()
                        .filter(|&k| k <= MAX_EXPONENT)
                        .ok_or_else(|| ParseError::Syntax {
                            line: self.line,
                            column: col,
                            message: "exponent too large".into(),
                        })?;
                    return Ok(Expr::Pow(Box::new(base), k));
                }
                _ => return Err(self.err("expected a non-negative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let col = self.column();
        match self.peek().cloned() {
            Some(Tok::Num(a)) => {
                self.pos += 1;
                if self.eat('/') {
                    match self.peek().cloned() {
                        Some(Tok::Num(b)) if !b.is_zero() => {
                            self.pos += 1;
                            let g = a.gcd(&b);
                            if g.is_zero() {
                                return Ok(Expr::Const(BigInt::zero(), BigInt::one()));
                            }
                            Ok(Expr::Const(a / &g, b / g))
                        }
                        _ => Err(self.err("expected a nonzero integer denominator")),
                    }
                } else {
                    Ok(Expr::Const(a, BigInt::one()))
                }
            }
            Some(Tok::Var(name)) => {
                self.pos += 1;
                let idx = name
                    .strip_prefix('x')
                    .and_then(|d| d.parse::<usize>().ok())
                    .filter(|&i| i >= 1 && i <= self.n && !name[1..].starts_with('0'));
                match idx {
                    Some(i) => Ok(Expr::Var(i - 1)),
                    None => Err(ParseError::UnknownVariable {
                        line: self.line,
                        column: col,
                        name,
                        n: self.n,
                    }),
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(Tok::Op(c)) => Err(self.err(format!("unexpected {c:?}"))),
            None => Err(self.err("unexpected end of expression")),
        }
    }
}

/// Lowest common denominator of an expression's value, by structure.
fn denominator(e: &Expr) -> BigInt {
    match e {
        Expr::Var(_) => BigInt::one(),
        Expr::Const(_, b) => b.clone(),
        Expr::Add(a, b) | Expr::Sub(a, b) => denominator(a).lcm(&denominator(b)),
        Expr::Mul(a, b) => denominator(a) * denominator(b),
        Expr::Neg(a) => denominator(a),
        Expr::Pow(a, k) => num_traits::pow(denominator(a), *k as usize),
    }
}

struct Emitter<'s> {
    slp: &'s mut Slp<BigInt>,
    inputs: Vec<usize>,
    consts: HashMap<BigInt, usize>,
}

impl Emitter<'_> {
    fn constant(&mut self, c: BigInt) -> usize {
        if let Some(&i) = self.consts.get(&c) {
            return i;
        }
        let i = self.slp.param(c.clone());
        self.consts.insert(c, i);
        i
    }

    fn scaled(&mut self, node: usize, factor: &BigInt) -> usize {
        if factor.is_one() {
            node
        } else {
            let c = self.constant(factor.clone());
            self.slp.mul(c, node)
        }
    }

    /// Emits `denominator(e) * e`, which has integer coefficients.
    fn emit(&mut self, e: &Expr) -> usize {
        match e {
            Expr::Var(i) => self.inputs[*i],
            Expr::Const(a, _) => self.constant(a.clone()),
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                let (da, db) = (denominator(a), denominator(b));
                let d = da.lcm(&db);
                let na = self.emit(a);
                let na = self.scaled(na, &(&d / &da));
                let nb = self.emit(b);
                let nb = self.scaled(nb, &(&d / &db));
                if matches!(e, Expr::Add(..)) {
                    self.slp.add(na, nb)
                } else {
                    self.slp.sub(na, nb)
                }
            }
            Expr::Mul(a, b) => {
                let na = self.emit(a);
                let nb = self.emit(b);
                self.slp.mul(na, nb)
            }
            Expr::Neg(a) => {
                let na = self.emit(a);
                let z = self.constant(BigInt::zero());
                self.slp.sub(z, na)
            }
            Expr::Pow(a, k) => {
                if *k == 0 {
                    return self.constant(BigInt::one());
                }
                let base = self.emit(a);
                let mut acc: Option<usize> = None;
                let mut sq = base;
                let mut k = *k;
                loop {
                    if k & 1 == 1 {
                        acc = Some(match acc {
                            None => sq,
                            Some(x) => self.slp.mul(x, sq),
                        });
                    }
                    k >>= 1;
                    if k == 0 {
                        break;
                    }
                    sq = self.slp.mul(sq, sq);
                }
                acc.unwrap()
            }
        }
    }
}

/// Parses one polynomial per entry of `lines` (`(line number, text)`) into a
/// single program over `x1..xn`. Returns the program and, per polynomial, the
/// positive integer it was multiplied by to clear denominators.
pub fn parse_polys(
    lines: &[(usize, &str)],
    n: usize,
) -> Result<(Slp<BigInt>, Vec<BigInt>), ParseError> {
    let mut exprs = Vec::with_capacity(lines.len());
    for &(line, text) in lines {
        let toks = tokenize(text, line)?;
        let mut p = Parser {
            toks,
            pos: 0,
            line,
            n,
            text,
        };
        let e = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(p.err("trailing input"));
        }
        exprs.push(e);
    }
    let mut slp = Slp::new(n);
    let inputs = (0..n).map(|i| slp.input(i)).collect();
    let mut em = Emitter {
        slp: &mut slp,
        inputs,
        consts: HashMap::new(),
    };
    let mut outs = Vec::with_capacity(exprs.len());
    let mut mults = Vec::with_capacity(exprs.len());
    for e in &exprs {
        outs.push(em.emit(e));
        mults.push(denominator(e));
    }
    slp.set_outputs(outs);
    Ok((slp, mults))
}
