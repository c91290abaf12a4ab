use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::{Factored, LaurentError, LaurentPoly, Monomial, Result, Scalar};

/// Formal square-root symbol. Distinct radicands are treated as multiplicatively
/// independent, which holds for distinct normalized irreducible factors and primes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Radicand {
    MinusOne,
    Int(BigInt),
    Poly(LaurentPoly),
}

impl Radicand {
    pub fn square(&self) -> Scalar {
        match self {
            Radicand::MinusOne => Scalar::integer(-1),
            Radicand::Int(n) => Scalar::from_rational(BigRational::from_integer(n.clone())),
            Radicand::Poly(p) => Scalar::from_poly(p.clone()),
        }
    }
}

impl fmt::Display for Radicand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Radicand::MinusOne => write!(f, "sqrt(-1)"),
            Radicand::Int(n) => write!(f, "sqrt({n})"),
            Radicand::Poly(p) => write!(f, "sqrt({p})"),
        }
    }
}

type Signature = BTreeSet<Radicand>;

/// `sum_S c_S * prod_{r in S} sqrt(r)` with `c_S` exact [`Scalar`]s.
#[derive(Clone, Debug, Default)]
pub struct Surd {
    terms: BTreeMap<Signature, Scalar>,
}

impl Surd {
    pub fn zero() -> Self {
        Surd::default()
    }

    pub fn one() -> Self {
        Surd::from(Scalar::one())
    }

    pub fn integer(c: i64) -> Self {
        Surd::from(Scalar::integer(c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BTreeSet<Radicand>, &Scalar)> {
        self.terms.iter()
    }

    fn insert(&mut self, sig: Signature, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&sig) {
            None => {
                self.terms.insert(sig, c);
            }
            Some(old) => {
                let s = old.add(&c);
                if !s.is_zero() {
                    self.terms.insert(sig, s);
                }
            }
        }
    }

    /// Exact square root of a factored value.
    pub fn sqrt(f: &Factored) -> Result<Surd> {
        let mut sig = Signature::new();
        let mut outside = Factored::one();

        let c = &f.coeff;
        if c.is_negative() {
            sig.insert(Radicand::MinusOne);
        }
        let n = c.numer().abs() * c.denom();
        let (sq, rest) = square_split(&n);
        outside = outside.mul(&Factored::constant(BigRational::new(sq, c.denom().clone())));
        for p in rest {
            sig.insert(Radicand::Int(p));
        }

        let (ua, uq) = (f.unit.a2(), f.unit.q2());
        let odd = Monomial::doubled(ua.rem_euclid(2), uq.rem_euclid(2));
        let even = f.unit / odd;
        outside.unit = even.sqrt().expect("even part has even exponents");
        if !odd.is_one() {
            sig.insert(Radicand::Poly(LaurentPoly::unit(odd)));
        }

        for (fac, e) in &f.factors {
            let k = e.div_euclid(2);
            let r = e.rem_euclid(2);
            if k != 0 {
                let mut one = Factored::one();
                one.factors.insert(fac.clone(), k);
                outside = outside.mul(&one);
            }
            if r == 1 {
                sig.insert(Radicand::Poly(fac.poly().clone()));
            }
        }
        let mut out = Surd::zero();
        out.insert(sig, Scalar::from_factored(&outside));
        Ok(out)
    }

    /// The radical-free value, if every radical has cancelled.
    pub fn lower(&self) -> Result<Scalar> {
        match self.terms.len() {
            0 => Ok(Scalar::zero()),
            1 => {
                let (sig, c) = self.terms.iter().next().unwrap();
                if sig.is_empty() {
                    Ok(c.clone())
                } else {
                    Err(LaurentError::NotLowerable)
                }
            }
            _ => Err(LaurentError::NotLowerable),
        }
    }

    pub fn lower_poly(&self) -> Result<LaurentPoly> {
        self.lower()?.lower()
    }

    pub fn add(&self, rhs: &Surd) -> Surd {
        let mut out = self.clone();
        for (s, c) in &rhs.terms {
            out.insert(s.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Surd) -> Surd {
        self.add(&rhs.neg())
    }

    /// Complex conjugate, with `q`, `a` and every polynomial radicand taken as real.
    pub fn conj(&self) -> Surd {
        Surd {
            terms: self.terms.iter().map(|(s, c)| (s.clone(), if s.contains(&Radicand::MinusOne) { c.neg() } else { c.clone() })).collect(),
        }
    }

    pub fn neg(&self) -> Surd {
        Surd { terms: self.terms.iter().map(|(s, c)| (s.clone(), c.neg())).collect() }
    }

    pub fn mul(&self, rhs: &Surd) -> Surd {
        let mut out = Surd::zero();
        for (s1, c1) in &self.terms {
            for (s2, c2) in &rhs.terms {
                let mut c = c1.mul(c2);
                for r in s1.intersection(s2) {
                    c = c.mul(&r.square());
                }
                let sig: Signature = s1.symmetric_difference(s2).cloned().collect();
                out.insert(sig, c);
            }
        }
        out
    }

    pub fn mul_scalar(&self, k: &Scalar) -> Surd {
        if k.is_zero() {
            return Surd::zero();
        }
        Surd { terms: self.terms.iter().map(|(s, c)| (s.clone(), c.mul(k))).collect() }
    }

    /// Inverse of a single-term value.
    pub fn inv(&self) -> Result<Surd> {
        if self.terms.len() != 1 {
            return if self.is_zero() {
                Err(LaurentError::DivisionByZero)
            } else {
                Err(LaurentError::UnsupportedRadical("inverse of a sum of radicals".into()))
            };
        }
        let (sig, c) = self.terms.iter().next().unwrap();
        let mut den = c.clone();
        for r in sig {
            den = den.mul(&r.square());
        }
        let mut out = Surd::zero();
        out.insert(sig.clone(), den.inv()?);
        Ok(out)
    }

    pub fn div(&self, rhs: &Surd) -> Result<Surd> {
        Ok(self.mul(&rhs.inv()?))
    }

    /// Text accepted by the expression reader that denotes the same value.
    pub fn to_expr(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        if let Some(c) = self.terms.get(&Signature::new()).filter(|_| self.terms.len() == 1) {
            return c.to_expr();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(sig, c)| {
                let mut t = format!("({})", c.to_expr());
                for r in sig {
                    match r {
                        Radicand::MinusOne => t.push_str("*sqrt(-1)"),
                        Radicand::Int(n) => t.push_str(&format!("*sqrt({n})")),
                        Radicand::Poly(p) => t.push_str(&format!("*sqrt({p})")),
                    }
                }
                t
            })
            .collect();
        parts.join(" + ")
    }

    pub fn pow(&self, n: i32) -> Result<Surd> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = Surd::one();
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }
}

/// Splits `n > 0` as `s^2 * prod p_i` with distinct `p_i`. Trial division up to 10^5;
/// a larger cofactor is kept whole.
fn square_split(n: &BigInt) -> (BigInt, Vec<BigInt>) {
    let mut n = n.clone();
    let mut sq = BigInt::one();
    let mut rest = Vec::new();
    let mut p = BigInt::from(2u32);
    let limit = BigInt::from(100_000u32);
    while &p * &p <= n && p <= limit {
        let mut e = 0u32;
        while n.is_multiple_of(&p) {
            n /= &p;
            e += 1;
        }
        for _ in 0..e / 2 {
            sq *= &p;
        }
        if e % 2 == 1 {
            rest.push(p.clone());
        }
        p += 1;
    }
    if n > BigInt::one() {
        rest.push(n);
    }
    rest.sort();
    (sq, rest)
}

impl From<Scalar> for Surd {
    fn from(c: Scalar) -> Self {
        let mut s = Surd::zero();
        s.insert(Signature::new(), c);
        s
    }
}

impl From<LaurentPoly> for Surd {
    fn from(p: LaurentPoly) -> Self {
        Surd::from(Scalar::from_poly(p))
    }
}

impl PartialEq for Surd {
    fn eq(&self, other: &Surd) -> bool {
        self.terms.len() == other.terms.len() && self.terms.iter().all(|(s, c)| other.terms.get(s).is_some_and(|d| c == d))
    }
}

impl Eq for Surd {}

impl Add for &Surd {
    type Output = Surd;
    fn add(self, rhs: &Surd) -> Surd {
        Surd::add(self, rhs)
    }
}

impl Sub for &Surd {
    type Output = Surd;
    fn sub(self, rhs: &Surd) -> Surd {
        Surd::sub(self, rhs)
    }
}

impl Mul for &Surd {
    type Output = Surd;
    fn mul(self, rhs: &Surd) -> Surd {
        Surd::mul(self, rhs)
    }
}

impl Neg for &Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd::neg(self)
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (sig, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{c}]")?;
            for r in sig {
                write!(f, "*{r}")?;
            }
        }
        Ok(())
    }
}
