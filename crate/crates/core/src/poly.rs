//! Sparse multivariate polynomials over an exact field.
//!
//! Terms are kept sorted strictly decreasing in the native lex order of the
//! ring (variable 0 highest), with no zero coefficients. Other monomial
//! orders are handled by permuting variables into native position (see
//! [`crate::groebner`]).

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::monomial::Monomial;
use crate::ring::{Ring, RingContext};

#[derive(Debug, Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, Coeff)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

pub(crate) fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Checked binary arithmetic; rejects operands from different rings.
pub fn poly_arith(a: &Polynomial, b: &Polynomial, op: ArithOp) -> Result<Polynomial> {
    if !same_ring(&a.ring, &b.ring) {
        return Err(Error::RingMismatch);
    }
    Ok(match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
    })
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Ring, c: Coeff) -> Self {
        Self::term(ring, c, Monomial::one(ring.num_vars()))
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn var(ring: &Ring, idx: usize) -> Self {
        Self::term(ring, ring.field().one(), Monomial::var(ring.num_vars(), idx))
    }

    pub fn term(ring: &Ring, c: Coeff, m: Monomial) -> Self {
        assert_eq!(m.nvars(), ring.num_vars());
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn monomial(ring: &Ring, m: Monomial) -> Self {
        Self::term(ring, ring.field().one(), m)
    }

    /// Builds a canonical polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Monomial, Coeff)>) -> Self {
        let mut terms: Vec<_> = terms.into_iter().collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, Coeff)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = &*lc + &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial { ring: ring.clone(), terms: out }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Coeff)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&Coeff> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Scale so the leading coefficient is one. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(c) if !c.is_one() => self.scale(&c.inv().expect("nonzero leading coefficient")),
            _ => self.clone(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// `c * m * self`.
    pub fn mul_term(&self, c: &Coeff, m: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        // multiplication by a monomial preserves the order of terms
        let terms = self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub(crate) fn into_terms(self) -> Vec<(Monomial, Coeff)> {
        self.terms
    }

    /// Trusted constructor: `terms` must already be canonical.
    pub(crate) fn from_sorted(ring: &Ring, terms: Vec<(Monomial, Coeff)>) -> Self {
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    fn assert_ring(&self, other: &Self) {
        assert!(same_ring(&self.ring, &other.ring), "{}", Error::RingMismatch);
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_ring(other);
        self.merge(other, |c| c.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_ring(other);
        self.merge(other, |c| -c)
    }

    /// `self - c * m * other` without materializing the product.
    pub(crate) fn sub_mul_term(&self, c: &Coeff, m: &Monomial, other: &Self) -> Self {
        let neg = -c;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|(t, k)| (t.mul(m), k * &neg)).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((ma, _)), Some((mb, _))) => match ma.cmp(mb) {
                    std::cmp::Ordering::Greater => out.push(a.next().unwrap().clone()),
                    std::cmp::Ordering::Less => out.push(b.next().unwrap()),
                    std::cmp::Ordering::Equal => {
                        let (ma, ca) = a.next().unwrap();
                        let (_, cb) = b.next().unwrap();
                        let s = ca + &cb;
                        if !s.is_zero() {
                            out.push((ma.clone(), s));
                        }
                    }
                },
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (None, None) => break,
            }
        }
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    fn merge(&self, other: &Self, map_other: impl Fn(&Coeff) -> Coeff) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.cmp(mb) {
                std::cmp::Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((mb.clone(), map_other(cb)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let s = ca + &map_other(cb);
                    if !s.is_zero() {
                        out.push((ma.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(m, c)| (m.clone(), map_other(c))));
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_ring(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ring);
        }
        let mut prods = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                prods.push((ma.mul(mb), ca * cb));
            }
        }
        Self::from_terms(&self.ring, prods)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Simultaneous substitution `v -> assignment[v]` (variables without an
    /// entry are kept). Images must live in `target`; unassigned variables
    /// must exist there at the same index.
    pub fn substitute(&self, assignment: &[Option<Polynomial>], target: &Ring) -> Result<Self> {
        for img in assignment.iter().flatten() {
            if !same_ring(img.ring(), target) {
                return Err(Error::RingMismatch);
            }
        }
        let nv = self.ring.num_vars();
        if assignment.len() > nv {
            return Err(Error::InvalidInput("assignment longer than variable list".into()));
        }
        let mut power_cache: HashMap<(usize, u16), Polynomial> = HashMap::new();
        let mut acc = Self::zero(target);
        for (m, c) in &self.terms {
            let mut term = Self::constant(target, c.clone());
            for (v, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let factor = match assignment.get(v).and_then(|a| a.as_ref()) {
                    Some(img) => power_cache
                        .entry((v, e))
                        .or_insert_with(|| img.pow(e as u32))
                        .clone(),
                    None => {
                        if v >= target.num_vars() {
                            return Err(Error::RingMismatch);
                        }
                        let nv = target.num_vars();
                        Self::monomial(target, Monomial::from_vars(nv, std::iter::repeat_n(v, e as usize)))
                    }
                };
                term = term.mul(&factor);
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Evaluate at a point (one coordinate per variable).
    pub fn evaluate(&self, point: &[Coeff]) -> Coeff {
        assert_eq!(point.len(), self.ring.num_vars());
        let mut acc = self.ring.field().zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = &t * &point[v].pow(e as u32);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Polynomial) -> Option<Polynomial> {
        self.assert_ring(d);
        let (dm, dc) = d.leading_term()?;
        let dc_inv = dc.inv().ok()?;
        let mut rest = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rest.leading_term() {
            let q = m.div(dm)?;
            let qc = c * &dc_inv;
            rest = rest.sub_mul_term(&qc, &q, d);
            quot.push((q, qc));
        }
        Some(Polynomial { ring: self.ring.clone(), terms: quot })
    }

    /// Move into `target`, which has `k` extra leading auxiliary variables.
    pub fn extend_front(&self, target: &Ring, k: usize) -> Self {
        debug_assert_eq!(target.num_vars(), self.ring.num_vars() + k);
        let terms = self.terms.iter().map(|(m, c)| (m.extend_front(k), c.clone())).collect();
        Polynomial { ring: target.clone(), terms }
    }

    /// Drop `k` leading auxiliary variables; `None` if any of them occurs.
    pub fn strip_front(&self, target: &Ring, k: usize) -> Option<Self> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| m.strip_front(k).map(|m| (m, c.clone())))
            .collect::<Option<Vec<_>>>()?;
        Some(Polynomial { ring: target.clone(), terms })
    }

    /// Rename variable `v` to `perm[v]`.
    pub(crate) fn permute(&self, perm: &[usize]) -> Self {
        Self::from_terms(&self.ring, self.terms.iter().map(|(m, c)| (m.permute(perm), c.clone())))
    }

    /// Reinterpret the coefficients in another ring with the same variables.
    pub fn with_ring(&self, target: &Ring) -> Result<Self> {
        if target.num_vars() != self.ring.num_vars() || target.field() != self.ring.field() {
            return Err(Error::RingMismatch);
        }
        Ok(Polynomial { ring: target.clone(), terms: self.terms.clone() })
    }

    pub fn parse(ring: &Ring, s: &str) -> Result<Self> {
        Parser::new(ring, s).parse()
    }

    /// Render a monomial with the ring's variable names (`1` for the unit).
    pub fn render_monomial(ring: &RingContext, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(v, &e)| {
                if e == 1 {
                    ring.var_name(v)
                } else {
                    format!("{}^{}", ring.var_name(v), e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = Self::render_monomial(&self.ring, m);
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push(Tok::Num(digits.parse().unwrap()));
            }
            c if c.is_ascii_alphabetic() => {
                // letters, then digits, then an optional `_digits` suffix
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphabetic() {
                    i += 1;
                }
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i + 1 < chars.len() && chars[i] == '_' && chars[i + 1].is_ascii_digit() {
                    i += 1;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Ring,
    src: &'a str,
    toks: Vec<Tok>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(ring: &'a Ring, src: &'a str) -> Self {
        Parser { ring, src, toks: Vec::new(), pos: 0 }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} in `{}`", self.src))
    }

    fn parse(mut self) -> Result<Polynomial> {
        self.toks = tokenize(self.src)?;
        if self.toks.is_empty() {
            return Err(self.err("empty polynomial"));
        }
        let p = self.expr()?;
        if self.pos != self.toks.len() {
            return Err(self.err("trailing input"));
        }
        Ok(p)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.ring);
        let mut sign = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -1
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.product()?;
            acc = if sign < 0 { acc.sub(&t) } else { acc.add(&t) };
            match self.peek() {
                Some(Tok::Plus) => sign = 1,
                Some(Tok::Minus) => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn product(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    acc = acc.mul(&self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.peek() != Some(&Tok::Caret) {
            return Ok(1);
        }
        self.pos += 1;
        match self.toks.get(self.pos) {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                u32::try_from(n).map_err(|_| self.err("exponent too large"))
            }
            _ => Err(self.err("expected exponent")),
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let tok = self.toks.get(self.pos).cloned().ok_or_else(|| self.err("unexpected end"))?;
        self.pos += 1;
        let base = match tok {
            Tok::Num(num) => {
                let mut q = BigRational::from_integer(num);
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    match self.toks.get(self.pos).cloned() {
                        Some(Tok::Num(den)) if den != BigInt::from(0) => {
                            self.pos += 1;
                            q /= BigRational::from_integer(den);
                        }
                        _ => return Err(self.err("expected nonzero denominator")),
                    }
                }
                Polynomial::constant(self.ring, self.ring.field().from_rational(&q)?)
            }
            Tok::Ident(name) => {
                let idx = self
                    .ring
                    .var_index(&name)
                    .ok_or_else(|| self.err(&format!("unknown variable `{name}`")))?;
                Polynomial::var(self.ring, idx)
            }
            Tok::LParen => {
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                inner
            }
            Tok::Minus => return Ok(self.factor()?.neg()),
            _ => return Err(self.err("unexpected token")),
        };
        let e = self.exponent()?;
        Ok(if e == 1 { base } else { base.pow(e) })
    }
}
