use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use super::{factor_poly, Factor, Factored, LaurentError, LaurentPoly, Result};

/// Quotient `num / prod f^e` with the denominator kept factored. Common denominators
/// are formed as least common multiples over factor keys and cancelled by trial division,
/// so no polynomial GCD is ever needed.
#[derive(Clone, Debug)]
pub struct Scalar {
    num: LaurentPoly,
    den: BTreeMap<Factor, u32>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Scalar::from_poly(LaurentPoly::one())
    }

    pub fn from_poly(num: LaurentPoly) -> Self {
        Scalar { num, den: BTreeMap::new() }
    }

    pub fn from_rational(c: BigRational) -> Self {
        Scalar::from_poly(LaurentPoly::constant(c))
    }

    pub fn integer(c: i64) -> Self {
        Scalar::from_poly(LaurentPoly::integer(c))
    }

    pub fn new(num: LaurentPoly, den: &LaurentPoly) -> Result<Self> {
        let f = factor_poly(den).ok_or(LaurentError::DivisionByZero)?;
        Ok(Scalar::from_factored(&f.inv()).mul_poly(&num))
    }

    pub fn from_factored(f: &Factored) -> Self {
        let mut num = LaurentPoly::monomial(f.unit, f.coeff.clone());
        let mut den = BTreeMap::new();
        for (fac, e) in &f.factors {
            if *e > 0 {
                num = &num * &fac.poly().pow(*e as u32);
            } else {
                den.insert(fac.clone(), e.unsigned_abs());
            }
        }
        let mut s = Scalar { num, den };
        s.reduce();
        s
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator_factors(&self) -> &BTreeMap<Factor, u32> {
        &self.den
    }

    pub fn denominator(&self) -> LaurentPoly {
        self.den.iter().fold(LaurentPoly::one(), |acc, (f, e)| &acc * &f.poly().pow(*e))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_empty()
    }

    /// The polynomial value, if the denominator divides the numerator.
    pub fn lower(&self) -> Result<LaurentPoly> {
        if self.den.is_empty() {
            Ok(self.num.clone())
        } else {
            Err(LaurentError::NotDivisible)
        }
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let keys: Vec<Factor> = self.den.keys().cloned().collect();
        for f in keys {
            let e = self.den.get_mut(&f).unwrap();
            while *e > 0 {
                match self.num.divide_exact(f.poly()) {
                    Ok(q) => {
                        self.num = q;
                        *e -= 1;
                    }
                    Err(_) => break,
                }
            }
            if *e == 0 {
                self.den.remove(&f);
            }
        }
    }

    fn lift(&self, lcm: &BTreeMap<Factor, u32>) -> LaurentPoly {
        let mut n = self.num.clone();
        for (f, e) in lcm {
            let have = self.den.get(f).copied().unwrap_or(0);
            if *e > have {
                n = &n * &f.poly().pow(e - have);
            }
        }
        n
    }

    fn lcm(&self, rhs: &Scalar) -> BTreeMap<Factor, u32> {
        let mut l = self.den.clone();
        for (f, e) in &rhs.den {
            let slot = l.entry(f.clone()).or_insert(0);
            *slot = (*slot).max(*e);
        }
        l
    }

    pub fn add(&self, rhs: &Scalar) -> Scalar {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            let mut s = Scalar { num: &self.num + &rhs.num, den: self.den.clone() };
            s.reduce();
            return s;
        }
        let l = self.lcm(rhs);
        let mut s = Scalar { num: &self.lift(&l) + &rhs.lift(&l), den: l };
        s.reduce();
        s
    }

    pub fn sub(&self, rhs: &Scalar) -> Scalar {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Scalar {
        Scalar { num: -&self.num, den: self.den.clone() }
    }

    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        let mut den = self.den.clone();
        for (f, e) in &rhs.den {
            *den.entry(f.clone()).or_insert(0) += e;
        }
        let mut s = Scalar { num: &self.num * &rhs.num, den };
        if !s.den.is_empty() {
            s.reduce();
        }
        s
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Scalar {
        self.mul(&Scalar::from_poly(p.clone()))
    }

    pub fn scale(&self, c: &BigRational) -> Scalar {
        Scalar { num: self.num.scale(c), den: self.den.clone() }.normalized_zero()
    }

    fn normalized_zero(mut self) -> Scalar {
        if self.num.is_zero() {
            self.den.clear();
        }
        self
    }

    pub fn inv(&self) -> Result<Scalar> {
        let f = factor_poly(&self.num).ok_or(LaurentError::DivisionByZero)?;
        let den_poly = self.denominator();
        let mut out = Scalar::from_factored(&f.inv());
        out = out.mul_poly(&den_poly);
        Ok(out)
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(self.mul(&rhs.inv()?))
    }

    pub fn pow(&self, n: i32) -> Result<Scalar> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Scalar {
        let num = f(&self.num);
        let den = self.den.iter().fold(LaurentPoly::one(), |acc, (fac, e)| &acc * &f(fac.poly()).pow(*e));
        Scalar::new(num, &den).expect("substitution produced a zero denominator")
    }

    /// `a -> q^n`. Panics if a denominator factor vanishes under the substitution.
    pub fn substitute_a(&self, n: i32) -> Scalar {
        self.map(|p| p.substitute_a(n))
    }

    pub fn try_substitute_a(&self, n: i32) -> Result<Scalar> {
        let num = self.num.substitute_a(n);
        let den = self.den.iter().fold(LaurentPoly::one(), |acc, (fac, e)| &acc * &fac.poly().substitute_a(n).pow(*e));
        Scalar::new(num, &den)
    }

    pub fn invert_q(&self) -> Scalar {
        self.map(LaurentPoly::invert_q)
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        let l = self.lcm(other);
        self.lift(&l) == other.lift(&l)
    }
}

impl Eq for Scalar {}

impl From<LaurentPoly> for Scalar {
    fn from(p: LaurentPoly) -> Self {
        Scalar::from_poly(p)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::add(self, rhs)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::sub(self, rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::mul(self, rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/(", self.num)?;
        let mut first = true;
        for (fac, e) in &self.den {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{fac}")?;
            if *e != 1 {
                write!(f, "^{e}")?;
            }
        }
        write!(f, ")")
    }
}

impl Scalar {
    /// Text accepted by the expression reader that denotes the same value.
    pub fn to_expr(&self) -> String {
        if self.den.is_empty() {
            return self.num.to_string();
        }
        let den: Vec<String> = self.den.iter().map(|(f, e)| if *e == 1 { format!("{f}") } else { format!("{f}^{e}") }).collect();
        format!("({})/({})", self.num, den.join("*"))
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.is_one()
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        if !self.den.is_empty() {
            return None;
        }
        if self.num.is_zero() {
            return Some(BigRational::from_integer(0.into()));
        }
        match self.num.as_monomial() {
            Some((m, c)) if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }
}
