//! The `eval` grammar: named atoms, integers, `*`, `^-1`, `^n`, `+`, `-`, parentheses,
//! `tr_sigma(..)`, `tr_c3(..)` and `random(k)`.
//!
//! Products of group atoms stay in G_2; anything involving sums, integers or traces is
//! evaluated in the group ring of the chosen quotient.

use std::sync::Arc;

use morava::groupring::RingElt;
use morava::quotients::QuotientGroup;
use morava::{Fgl, GElt, MoravaError, Result};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(i64),
    Name(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut n = 0;
    while n < cs.len() {
        let c = cs[n];
        if c.is_whitespace() {
            n += 1;
        } else if c.is_ascii_digit() {
            let start = n;
            while n < cs.len() && cs[n].is_ascii_digit() {
                n += 1;
            }
            let t: String = cs[start..n].iter().collect();
            out.push(Tok::Int(t.parse().map_err(|_| MoravaError::Parse(format!("integer {t}")))?));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = n;
            while n < cs.len() && (cs[n].is_ascii_alphanumeric() || cs[n] == '_') {
                n += 1;
            }
            out.push(Tok::Name(cs[start..n].iter().collect()));
        } else if "+-*^()".contains(c) {
            out.push(Tok::Op(c));
            n += 1;
        } else {
            return Err(MoravaError::Parse(format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

const ATOM_PREC: u32 = 16;

#[derive(Clone, Debug)]
pub enum Value {
    Int(i64),
    Group(GElt),
    Ring(RingElt),
}

pub struct Evaluator<'a> {
    pub fgl: Fgl,
    /// Precision of group elements.
    pub prec: u32,
    /// Ring context, built on first use.
    pub ring: &'a dyn Fn() -> Result<(Arc<QuotientGroup>, u32)>,
    pub rng: &'a mut ChaCha8Rng,
    toks: Vec<Tok>,
    pos: usize,
}

impl<'a> Evaluator<'a> {
    pub fn new(
        fgl: Fgl,
        prec: u32,
        ring: &'a dyn Fn() -> Result<(Arc<QuotientGroup>, u32)>,
        rng: &'a mut ChaCha8Rng,
    ) -> Self {
        Evaluator { fgl, prec, ring, rng, toks: Vec::new(), pos: 0 }
    }

    pub fn eval(&mut self, src: &str) -> Result<Value> {
        self.toks = lex(src)?;
        self.pos = 0;
        let v = self.sum()?;
        if self.pos != self.toks.len() {
            return Err(MoravaError::Parse(format!("trailing input at token {}", self.pos)));
        }
        match v {
            Value::Group(g) => Ok(Value::Group(g.reduce(self.prec)?)),
            v => Ok(v),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(MoravaError::Parse(format!("expected '{c}'")))
        }
    }

    fn to_ring(&self, v: Value) -> Result<RingElt> {
        let (q, n) = (self.ring)()?;
        match v {
            Value::Int(c) => Ok(RingElt::from_int(&q, c, n)),
            Value::Group(g) => RingElt::from_gelt(&q, &g, n),
            Value::Ring(r) => Ok(r),
        }
    }

    fn sum(&mut self) -> Result<Value> {
        let negate = self.eat('-');
        let first = self.product()?;
        let mut acc = if negate { self.neg(first)? } else { first };
        loop {
            if self.eat('+') {
                let rhs = self.product()?;
                acc = self.add(acc, rhs, false)?;
            } else if self.eat('-') {
                let rhs = self.product()?;
                acc = self.add(acc, rhs, true)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn neg(&self, v: Value) -> Result<Value> {
        match v {
            Value::Int(c) => Ok(Value::Int(-c)),
            v => Ok(Value::Ring(self.to_ring(v)?.neg())),
        }
    }

    fn add(&self, a: Value, b: Value, sub: bool) -> Result<Value> {
        if let (Value::Int(x), Value::Int(y)) = (&a, &b) {
            return Ok(Value::Int(if sub { x - y } else { x + y }));
        }
        let (a, b) = (self.to_ring(a)?, self.to_ring(b)?);
        Ok(Value::Ring(if sub { a.try_sub(&b)? } else { a.try_add(&b)? }))
    }

    fn product(&mut self) -> Result<Value> {
        let mut acc = self.power()?;
        while self.eat('*') {
            let rhs = self.power()?;
            acc = self.mul(acc, rhs)?;
        }
        Ok(acc)
    }

    fn mul(&self, a: Value, b: Value) -> Result<Value> {
        match (a, b) {
            (Value::Int(x), Value::Int(y)) => Ok(Value::Int(x * y)),
            (Value::Group(g), Value::Group(h)) => Ok(Value::Group(g.try_mul(&h)?)),
            (Value::Int(c), v) | (v, Value::Int(c)) => Ok(Value::Ring(self.to_ring(v)?.scale_int(c))),
            (a, b) => Ok(Value::Ring(self.to_ring(a)?.try_mul(&self.to_ring(b)?)?)),
        }
    }

    fn power(&mut self) -> Result<Value> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let inverse = self.eat('-');
        let e = match self.peek() {
            Some(Tok::Int(e)) => *e,
            _ => return Err(MoravaError::Parse("expected an exponent".into())),
        };
        self.pos += 1;
        match base {
            Value::Group(g) => {
                let g = if inverse { g.inv() } else { g };
                Ok(Value::Group(g.pow(e as u64)))
            }
            Value::Ring(r) if !inverse => {
                let mut acc = self.to_ring(Value::Int(1))?;
                for _ in 0..e {
                    acc = acc.try_mul(&r)?;
                }
                Ok(Value::Ring(acc))
            }
            Value::Int(c) if !inverse => Ok(Value::Int(c.pow(e as u32))),
            _ => Err(MoravaError::Parse("only group elements have inverses".into())),
        }
    }

    fn atom(&mut self) -> Result<Value> {
        let tok = self.peek().cloned().ok_or_else(|| MoravaError::Parse("unexpected end of input".into()))?;
        self.pos += 1;
        match tok {
            Tok::Int(c) => Ok(Value::Int(c)),
            Tok::Op('(') => {
                let v = self.sum()?;
                self.expect(')')?;
                Ok(v)
            }
            Tok::Name(name) if ["tr_sigma", "tr_c3", "random"].contains(&name.as_str()) => {
                self.expect('(')?;
                let v = self.sum()?;
                self.expect(')')?;
                match name.as_str() {
                    "random" => {
                        let k = match v {
                            Value::Int(k) if k >= 0 => k as usize,
                            _ => return Err(MoravaError::Parse("random(k) takes a support size".into())),
                        };
                        let (q, n) = (self.ring)()?;
                        Ok(Value::Ring(RingElt::random(&q, n, k, self.rng)))
                    }
                    "tr_sigma" => Ok(Value::Ring(self.to_ring(v)?.tr_sigma()?)),
                    _ => Ok(Value::Ring(self.to_ring(v)?.tr_c3()?)),
                }
            }
            // atoms carry enough precision for any quotient; group results are reduced at the end
            Tok::Name(name) => Ok(Value::Group(GElt::named(&name, self.fgl, self.prec.max(ATOM_PREC))?)),
            Tok::Op(c) => Err(MoravaError::Parse(format!("unexpected '{c}'"))),
        }
    }
}

/// Names tried when printing a group element.
pub const KNOWN: [&str; 15] = [
    "e",
    "i",
    "j",
    "k",
    "omega",
    "alpha",
    "pi",
    "alpha_i",
    "alpha_j",
    "alpha_k",
    "eps",
    "sigma",
    "bracket_1pi",
    "bracket_jmk",
    "pi0",
];

/// A name for g (or -g), if it is one of the standard elements.
pub fn recognise(g: &GElt) -> Option<String> {
    for name in KNOWN {
        if let Ok(x) = GElt::named(name, g.fgl(), g.prec()) {
            if x == *g {
                return Some(name.to_string());
            }
            if x.neg() == *g {
                return Some(format!("-{name}"));
            }
        }
    }
    None
}
