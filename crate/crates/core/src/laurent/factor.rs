use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{LaurentPoly, Monomial};

/// A polynomial normalized up to units: its lex-smallest term sits at exponent zero and
/// its lex-leading coefficient is one. Two polynomials that differ by `c * monomial`
/// normalize to the same `Factor`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor(LaurentPoly);

impl Factor {
    /// Splits `p = c * u * f`. Returns `None` for the zero polynomial.
    pub fn normalize(p: &LaurentPoly) -> Option<(BigRational, Monomial, Factor)> {
        let (lo, _) = p.trailing()?;
        let (_, lead) = p.leading()?;
        let c = lead.clone();
        let f = p.mul_monomial(lo.inv()).scale(&c.recip());
        Some((c, lo, Factor(f)))
    }

    pub fn poly(&self) -> &LaurentPoly {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0)
    }
}

/// Integer coefficients of the `n`-th cyclotomic polynomial, constant term first.
pub fn cyclotomic(n: u32) -> Vec<i64> {
    assert!(n > 0);
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = int_poly_div(&num, &cyclotomic(d));
        }
    }
    num
}

fn int_poly_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let lead = den[dn];
    let mut out = vec![0i64; rem.len() - dn];
    for k in (0..out.len()).rev() {
        let c = rem[k + dn] / lead;
        out[k] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[k + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    out
}

fn cyclotomic_in(n: u32, y: Monomial) -> LaurentPoly {
    LaurentPoly::from_terms(cyclotomic(n).into_iter().enumerate().map(|(k, c)| (y.pow(k as i32), BigRational::from_integer(c.into()))))
}

/// `c * u * prod f_i^{e_i}` with integer (possibly negative) exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factored {
    pub coeff: BigRational,
    pub unit: Monomial,
    pub factors: BTreeMap<Factor, i32>,
}

impl Factored {
    pub fn one() -> Self {
        Factored { coeff: BigRational::one(), unit: Monomial::ONE, factors: BTreeMap::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        assert!(!c.is_zero(), "Factored cannot hold zero");
        Factored { coeff: c, ..Factored::one() }
    }

    fn push(&mut self, f: Factor, e: i32) {
        if f.is_one() || e == 0 {
            return;
        }
        let slot = self.factors.entry(f.clone()).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.factors.remove(&f);
        }
    }

    pub fn mul(&self, rhs: &Factored) -> Factored {
        let mut out = self.clone();
        out.coeff *= &rhs.coeff;
        out.unit = out.unit * rhs.unit;
        for (f, e) in &rhs.factors {
            out.push(f.clone(), *e);
        }
        out
    }

    pub fn inv(&self) -> Factored {
        Factored { coeff: self.coeff.recip(), unit: self.unit.inv(), factors: self.factors.iter().map(|(f, e)| (f.clone(), -e)).collect() }
    }

    pub fn div(&self, rhs: &Factored) -> Factored {
        self.mul(&rhs.inv())
    }

    pub fn pow(&self, n: i32) -> Factored {
        let base = if n < 0 { self.inv() } else { self.clone() };
        let k = n.unsigned_abs();
        Factored {
            coeff: num_traits::pow(base.coeff.clone(), k as usize),
            unit: base.unit.pow(k as i32),
            factors: base.factors.iter().map(|(f, e)| (f.clone(), e * k as i32)).collect(),
        }
    }

    /// Numerator and denominator as expanded polynomials.
    pub fn split(&self) -> (LaurentPoly, LaurentPoly) {
        let mut num = LaurentPoly::monomial(self.unit, self.coeff.clone());
        let mut den = LaurentPoly::one();
        for (f, e) in &self.factors {
            if *e > 0 {
                num = &num * &f.poly().pow(*e as u32);
            } else {
                den = &den * &f.poly().pow(e.unsigned_abs());
            }
        }
        (num, den)
    }
}

impl fmt::Display for Factored {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*{}", self.coeff, self.unit)?;
        for (fac, e) in &self.factors {
            write!(f, "*{fac}^{e}")?;
        }
        Ok(())
    }
}

/// Factors `p` into a unit times normalized factors. Binomials split completely into
/// cyclotomic pieces in a primitive monomial; other polynomials have cyclotomic factors
/// in `q^(1/2)` removed by trial division and the rest kept as one opaque factor.
/// Returns `None` for zero.
pub fn factor_poly(p: &LaurentPoly) -> Option<Factored> {
    let (c, u, f) = Factor::normalize(p)?;
    let mut out = Factored { coeff: c, unit: u, factors: BTreeMap::new() };
    if f.is_one() {
        return Some(out);
    }
    if f.poly().len() == 2 {
        let (x, _) = f.poly().leading().unwrap();
        let (_, c0) = f.poly().trailing().unwrap();
        let g = (x.a2().unsigned_abs()).gcd(&x.q2().unsigned_abs());
        let y = Monomial::doubled(x.a2() / g as i32, x.q2() / g as i32);
        if c0 == &-BigRational::one() {
            for d in divisors(g) {
                out.push(Factor(cyclotomic_in(d, y)), 1);
            }
            return Some(out);
        }
        if c0.is_one() {
            for d in divisors(2 * g) {
                if g % d != 0 {
                    out.push(Factor(cyclotomic_in(d, y)), 1);
                }
            }
            return Some(out);
        }
        out.push(f, 1);
        return Some(out);
    }
    let mut rest = f.poly().clone();
    if !rest.depends_on_a() {
        let (lo, hi) = rest.q_range().unwrap();
        let span = (hi - lo) as u32;
        let y = Monomial::doubled(0, 1);
        for d in 1..=span {
            if euler_phi(d) > span {
                continue;
            }
            let cyc = cyclotomic_in(d, y);
            while rest.len() > 1 {
                match rest.divide_exact(&cyc) {
                    Ok(qt) => {
                        out.push(Factor(cyc.clone()), 1);
                        rest = qt;
                    }
                    Err(_) => break,
                }
            }
        }
    }
    let (c2, u2, f2) = Factor::normalize(&rest).unwrap();
    out.coeff *= c2;
    out.unit = out.unit * u2;
    out.push(f2, 1);
    Some(out)
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn euler_phi(n: u32) -> u32 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn expand(f: &Factored) -> LaurentPoly {
        let (n, d) = f.split();
        n.divide_exact(&d).unwrap()
    }

    #[test]
    fn cyclotomic_table() {
        assert_eq!(cyclotomic(1), vec![-1, 1]);
        assert_eq!(cyclotomic(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic(14), vec![1, -1, 1, -1, 1, -1, 1]);
    }

    #[test]
    fn q_number_splits_into_cyclotomics() {
        let x = p("q^6 - q^-6");
        let f = factor_poly(&x).unwrap();
        // q^12 - 1 = y^24 - 1 with y = q^(1/2)
        assert_eq!(f.factors.len(), 8);
        assert_eq!(expand(&f), x);
    }

    #[test]
    fn two_variable_binomial() {
        let x = p("a*q^3 - a^-1*q^-3");
        let f = factor_poly(&x).unwrap();
        assert_eq!(f.factors.len(), 3);
        assert_eq!(expand(&f), x);
        let y = p("a^(1/2)*q + 2");
        let g = factor_poly(&y).unwrap();
        assert_eq!(g.factors.len(), 1);
        assert_eq!(expand(&g), y);
    }

    #[test]
    fn trial_division_of_q_products() {
        let x = &(&p("q^2 - q^-2") * &p("q^3 + q^-3")) * &p("q^2 + 3");
        let f = factor_poly(&x).unwrap();
        assert_eq!(expand(&f), x);
        assert!(f.factors.len() >= 4);
    }

    #[test]
    fn normalization_is_unit_invariant() {
        let x = p("a - 3*q^2 + a^-1*q^(1/2)");
        let y = &x * &p("-5/3*a^(3/2)*q^-7");
        assert_eq!(Factor::normalize(&x).unwrap().2, Factor::normalize(&y).unwrap().2);
    }
}
