//! Expression reader for polynomials and exact values.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := unary (('*'|'/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' exp)?
//! atom   := integer | 'a' | 'q' | 'sqrt' '(' expr ')' | '(' expr ')'
//! exp    := ['-'] integer | '(' ['-'] integer ['/' '2'] ')'
//! ```
//!
//! Half-integer exponents are only allowed on `a` and `q`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{factor_poly, Factored, LaurentError, LaurentPoly, Monomial, Result, Scalar, Surd};

struct Val {
    surd: Surd,
    factored: Option<Factored>,
}

impl Val {
    fn factored(&self) -> Result<Factored> {
        if let Some(f) = &self.factored {
            return Ok(f.clone());
        }
        let s =
            self.surd.lower().map_err(|_| LaurentError::UnsupportedRadical("square root of an expression containing radicals".into()))?;
        factored_of(&s)
    }
}

pub(crate) fn factored_of(s: &Scalar) -> Result<Factored> {
    let mut f = factor_poly(s.numerator()).ok_or(LaurentError::UnsupportedRadical("sqrt of zero".into()))?;
    for (fac, e) in s.denominator_factors() {
        let mut one = Factored::one();
        one.factors.insert(fac.clone(), -(*e as i32));
        f = f.mul(&one);
    }
    Ok(f)
}

struct Parser<'s> {
    src: &'s [u8],
    pos: usize,
}

impl<'s> Parser<'s> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(LaurentError::Parse { offset: self.pos, message: msg.into() })
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

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn small_int(&mut self) -> Result<i32> {
        let neg = self.eat(b'-');
        let n = self.integer()?;
        let v: i32 = match i32::try_from(&n) {
            Ok(v) if v.abs() < (1 << 28) => v,
            _ => return self.err("exponent out of range"),
        };
        Ok(if neg { -v } else { v })
    }

    /// Doubled exponent.
    fn exponent(&mut self) -> Result<i32> {
        if self.eat(b'(') {
            let n = self.small_int()?;
            let e2 = if self.eat(b'/') {
                let d = self.integer()?;
                if d == BigInt::from(1) {
                    2 * n
                } else if d == BigInt::from(2) {
                    n
                } else {
                    return self.err("exponent denominator must be 1 or 2");
                }
            } else {
                2 * n
            };
            self.expect(b')')?;
            Ok(e2)
        } else {
            Ok(2 * self.small_int()?)
        }
    }

    fn expr(&mut self) -> Result<Val> {
        let mut neg = false;
        if self.eat(b'-') {
            neg = true;
        } else {
            self.eat(b'+');
        }
        let mut acc = self.term()?;
        if neg {
            acc = negate(acc);
        }
        loop {
            if self.eat(b'+') {
                let t = self.term()?;
                acc = Val { surd: acc.surd.add(&t.surd), factored: None };
            } else if self.eat(b'-') {
                let t = self.term()?;
                acc = Val { surd: acc.surd.sub(&t.surd), factored: None };
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Val> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                let r = self.unary()?;
                acc = Val { surd: acc.surd.mul(&r.surd), factored: acc.factored.zip(r.factored).map(|(x, y)| x.mul(&y)) };
            } else if self.eat(b'/') {
                let at = self.pos;
                let r = self.unary()?;
                if let (Some(f), Ok(_)) = (&r.factored, r.surd.lower()) {
                    let inv = Scalar::from_factored(&f.inv());
                    acc = Val { surd: acc.surd.mul_scalar(&inv), factored: acc.factored.map(|x| x.div(f)) };
                    continue;
                }
                let surd = acc.surd.div(&r.surd).map_err(|e| match e {
                    LaurentError::DivisionByZero => LaurentError::Parse { offset: at, message: "division by zero".into() },
                    other => other,
                })?;
                acc = Val { surd, factored: acc.factored.zip(r.factored).map(|(x, y)| x.div(&y)) };
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Val> {
        if self.eat(b'-') {
            return Ok(negate(self.unary()?));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Val> {
        self.skip_ws();
        let c = self.peek();
        match c {
            Some(b'a') | Some(b'q') => {
                self.pos += 1;
                let e2 = if self.eat(b'^') { self.exponent()? } else { 2 };
                let m = if c == Some(b'a') { Monomial::doubled(e2, 0) } else { Monomial::doubled(0, e2) };
                let mut f = Factored::one();
                f.unit = m;
                Ok(Val { surd: Surd::from(LaurentPoly::unit(m)), factored: Some(f) })
            }
            _ => {
                let base = self.atom()?;
                if self.eat(b'^') {
                    let at = self.pos;
                    let e2 = self.exponent()?;
                    if e2 % 2 != 0 {
                        return Err(LaurentError::Parse { offset: at, message: "half-integer exponent on a compound base".into() });
                    }
                    let n = e2 / 2;
                    Ok(Val { surd: base.surd.pow(n)?, factored: base.factored.map(|f| f.pow(n)) })
                } else {
                    Ok(base)
                }
            }
        }
    }

    fn atom(&mut self) -> Result<Val> {
        match self.peek() {
            Some(d) if d.is_ascii_digit() => {
                let n = self.integer()?;
                let r = BigRational::from_integer(n);
                let factored = if r == BigRational::from_integer(0.into()) { None } else { Some(Factored::constant(r.clone())) };
                Ok(Val { surd: Surd::from(Scalar::from_rational(r)), factored })
            }
            Some(b'(') => {
                self.pos += 1;
                let mut v = self.expr()?;
                self.expect(b')')?;
                if v.factored.is_none() {
                    if let Ok(s) = v.surd.lower() {
                        if !s.is_zero() {
                            v.factored = Some(factored_of(&s)?);
                        }
                    }
                }
                Ok(v)
            }
            Some(b's') => {
                if !self.src[self.pos..].starts_with(b"sqrt") {
                    return self.err("unknown identifier");
                }
                self.pos += 4;
                self.expect(b'(')?;
                let v = self.expr()?;
                self.expect(b')')?;
                let f = v.factored()?;
                let surd = Surd::sqrt(&f)?;
                Ok(Val { surd, factored: None })
            }
            Some(c) => self.err(format!("unexpected '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }

    fn finish(&mut self) -> Result<()> {
        if self.peek().is_some() {
            return self.err("trailing input");
        }
        Ok(())
    }
}

fn negate(v: Val) -> Val {
    Val { surd: v.surd.neg(), factored: v.factored.map(|f| f.mul(&Factored::constant(BigRational::from_integer((-1).into())))) }
}

pub fn parse_surd(s: &str) -> Result<Surd> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    let v = p.expr()?;
    p.finish()?;
    Ok(v.surd)
}

pub fn parse_scalar(s: &str) -> Result<Scalar> {
    parse_surd(s)?.lower().map_err(|_| LaurentError::Parse { offset: 0, message: "value contains radicals".into() })
}

pub fn parse_poly(s: &str) -> Result<LaurentPoly> {
    parse_scalar(s)?.lower().map_err(|_| LaurentError::Parse { offset: 0, message: "not a Laurent polynomial".into() })
}
