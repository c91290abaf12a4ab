use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::{fmt_exponent, Monomial};
use super::{LaurentError, Result};

/// Finite sum of rational multiples of [`Monomial`]s. Zero coefficients are never stored,
/// so structural equality is mathematical equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(Monomial::ONE, BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        LaurentPoly::monomial(Monomial::ONE, c)
    }

    pub fn integer(c: i64) -> Self {
        LaurentPoly::constant(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn monomial(m: Monomial, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    pub fn unit(m: Monomial) -> Self {
        LaurentPoly::monomial(m, BigRational::one())
    }

    /// `a^a * q^q` with integer exponents, coefficient `c`.
    pub fn term(c: i64, a: i32, q: i32) -> Self {
        LaurentPoly::monomial(Monomial::ints(a, q), BigRational::from_integer(c.into()))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigRational)>>(it: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::ONE).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order: `a`-exponent descending, then `q`-exponent descending.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> + '_ {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: Monomial) -> BigRational {
        self.terms.get(&m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> Option<(Monomial, &BigRational)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    pub fn trailing(&self) -> Option<(Monomial, &BigRational)> {
        self.terms.iter().next().map(|(m, c)| (*m, c))
    }

    /// The single term of a one-term polynomial.
    pub fn as_monomial(&self) -> Option<(Monomial, &BigRational)> {
        if self.terms.len() == 1 {
            self.leading()
        } else {
            None
        }
    }

    /// Inclusive range of doubled `a` exponents.
    pub fn a_range(&self) -> Option<(i32, i32)> {
        let lo = self.terms.keys().map(|m| m.a2()).min()?;
        let hi = self.terms.keys().map(|m| m.a2()).max()?;
        Some((lo, hi))
    }

    /// Inclusive range of doubled `q` exponents.
    pub fn q_range(&self) -> Option<(i32, i32)> {
        let lo = self.terms.keys().map(|m| m.q2()).min()?;
        let hi = self.terms.keys().map(|m| m.q2()).max()?;
        Some((lo, hi))
    }

    pub fn depends_on_a(&self) -> bool {
        self.terms.keys().any(|m| m.a2() != 0)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    pub fn mul_monomial(&self, u: Monomial) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(m, x)| (*m * u, x.clone())).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = LaurentPoly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn map_monomials(&self, f: impl Fn(Monomial) -> Monomial) -> Self {
        LaurentPoly::from_terms(self.terms.iter().map(|(m, c)| (f(*m), c.clone())))
    }

    /// `a -> q^n`.
    pub fn substitute_a(&self, n: i32) -> Self {
        self.map_monomials(|m| m.substitute_a(n))
    }

    /// `q -> q^-1`.
    pub fn invert_q(&self) -> Self {
        self.map_monomials(Monomial::invert_q)
    }

    /// `a -> a^-1`, `q -> q^-1`.
    pub fn invert_all(&self) -> Self {
        self.map_monomials(Monomial::inv)
    }

    /// Sum of coefficients, i.e. the value at `a = q = 1`.
    pub fn eval_at_one(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |s, c| s + c)
    }

    /// Value at rational `a`, `q`; exponents must be integers.
    pub fn eval(&self, a: &BigRational, q: &BigRational) -> Result<BigRational> {
        let mut s = BigRational::zero();
        for (m, c) in &self.terms {
            if m.has_half_exponent() {
                return Err(LaurentError::HalfIntegerEvaluation);
            }
            let pa = rational_pow(a, m.a2() / 2)?;
            let pq = rational_pow(q, m.q2() / 2)?;
            s += c * pa * pq;
        }
        Ok(s)
    }

    /// Exact quotient `self / d`.
    ///
    /// Lex-leading-term division. Every quotient monomial must fit the box spanned by the
    /// exponent ranges of `self` and `d`, otherwise the division cannot be exact.
    pub fn divide_exact(&self, d: &LaurentPoly) -> Result<LaurentPoly> {
        let Some((dm, dc)) = d.leading() else {
            return Err(LaurentError::DivisionByZero);
        };
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        if d.len() == 1 {
            let inv = dc.recip();
            let u = dm.inv();
            return Ok(LaurentPoly { terms: self.terms.iter().map(|(m, c)| (*m * u, c * &inv)).collect() });
        }
        let (pa_lo, pa_hi) = self.a_range().unwrap();
        let (pq_lo, pq_hi) = self.q_range().unwrap();
        let (da_lo, da_hi) = d.a_range().unwrap();
        let (dq_lo, dq_hi) = d.q_range().unwrap();
        let (a_lo, a_hi) = (pa_lo - da_lo, pa_hi - da_hi);
        let (q_lo, q_hi) = (pq_lo - dq_lo, pq_hi - dq_hi);
        if a_lo > a_hi || q_lo > q_hi {
            return Err(LaurentError::NotDivisible);
        }
        let dc_inv = dc.recip();
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm / dm;
            if qm.a2() < a_lo || qm.a2() > a_hi || qm.q2() < q_lo || qm.q2() > q_hi {
                return Err(LaurentError::NotDivisible);
            }
            let qc = rc * &dc_inv;
            for (m, c) in &d.terms {
                rem.add_term(*m * qm, -(c * &qc));
            }
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }
}

pub(crate) fn rational_pow(x: &BigRational, n: i32) -> Result<BigRational> {
    if n < 0 {
        if x.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        Ok(num_traits::pow(x.recip(), n.unsigned_abs() as usize))
    } else {
        Ok(num_traits::pow(x.clone(), n as usize))
    }
}

impl From<Monomial> for LaurentPoly {
    fn from(m: Monomial) -> Self {
        LaurentPoly::unit(m)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut acc: std::collections::HashMap<Monomial, BigRational> = std::collections::HashMap::with_capacity(self.len() * rhs.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                *acc.entry(*m1 * *m2).or_insert_with(BigRational::zero) += c1 * c2;
            }
        }
        LaurentPoly { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                write!(f, "{abs}")?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            match (m.a2(), m.q2()) {
                (a, 0) => fmt_exponent(f, 'a', a)?,
                (0, q) => fmt_exponent(f, 'q', q)?,
                (a, q) => {
                    fmt_exponent(f, 'a', a)?;
                    write!(f, "*")?;
                    fmt_exponent(f, 'q', q)?;
                }
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = LaurentError;
    fn from_str(s: &str) -> Result<Self> {
        super::expr::parse_poly(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_printing() {
        assert_eq!(p("q + a").to_string(), "a + q");
        assert_eq!(p("-2*a^3*q^-10 + a^(1/2)").to_string(), "-2*a^3*q^-10 + a^(1/2)");
        assert_eq!(p("q^2 - q^2").to_string(), "0");
        assert_eq!(p("3/2*q^(-1/2) - 1").to_string(), "-1 + 3/2*q^(-1/2)");
    }

    #[test]
    fn exact_division_basic() {
        let a = p("q^3 - q^-3");
        let b = p("q - q^-1");
        assert_eq!(a.divide_exact(&b).unwrap(), p("q^2 + 1 + q^-2"));
        assert_eq!(p("q + 1").divide_exact(&p("q - 1")), Err(LaurentError::NotDivisible));
        assert_eq!(a.divide_exact(&LaurentPoly::zero()), Err(LaurentError::DivisionByZero));
    }

    #[test]
    fn division_by_two_variable_binomial() {
        let d = p("a*q - a^-1*q^-1");
        let x = p("a^2 - 3*q + a^-1*q^(1/2)");
        assert_eq!((&x * &d).divide_exact(&d).unwrap(), x);
        assert_eq!(x.divide_exact(&d), Err(LaurentError::NotDivisible));
    }

    #[test]
    fn substitution_and_inversion() {
        assert_eq!(p("a*q - a^-1").substitute_a(2).to_string(), "q^3 - q^-2");
        assert_eq!(p("a*q^2 + q^(1/2)").invert_q().to_string(), "a*q^-2 + q^(-1/2)");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        #[test]
        fn ring_axioms(x in crate::laurent::poly_strategy(), y in crate::laurent::poly_strategy(), z in crate::laurent::poly_strategy()) {
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x - &x, LaurentPoly::zero());
        }

        #[test]
        fn print_parse_roundtrip(x in crate::laurent::poly_strategy()) {
            let s = x.to_string();
            prop_assert_eq!(s.parse::<LaurentPoly>().unwrap(), x);
        }

        #[test]
        fn division_inverts_multiplication(x in crate::laurent::poly_strategy(), y in crate::laurent::poly_strategy()) {
            prop_assume!(!y.is_zero());
            prop_assert_eq!((&x * &y).divide_exact(&y).unwrap(), x);
        }

        #[test]
        fn division_reports_non_divisibility(x in crate::laurent::poly_strategy(), y in crate::laurent::poly_strategy()) {
            prop_assume!(!y.is_zero());
            match x.divide_exact(&y) {
                Ok(qt) => prop_assert_eq!(&qt * &y, x),
                Err(e) => prop_assert_eq!(e, LaurentError::NotDivisible),
            }
        }
    }
}
