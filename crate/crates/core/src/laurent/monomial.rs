use std::fmt;
use std::ops::{Div, Mul};

/// `a^(a2/2) q^(q2/2)`. Exponents are stored doubled so half-integers stay exact.
///
/// The derived order is lexicographic in `(a, q)`; canonical printing walks it
/// in reverse (highest `a` first, then highest `q`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    a2: i32,
    q2: i32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { a2: 0, q2: 0 };

    pub const fn doubled(a2: i32, q2: i32) -> Self {
        Monomial { a2, q2 }
    }

    pub const fn ints(a: i32, q: i32) -> Self {
        Monomial { a2: 2 * a, q2: 2 * q }
    }

    pub const fn a2(self) -> i32 {
        self.a2
    }

    pub const fn q2(self) -> i32 {
        self.q2
    }

    pub fn is_one(self) -> bool {
        self.a2 == 0 && self.q2 == 0
    }

    pub fn inv(self) -> Self {
        Monomial { a2: -self.a2, q2: -self.q2 }
    }

    pub fn pow(self, n: i32) -> Self {
        Monomial { a2: self.a2 * n, q2: self.q2 * n }
    }

    /// Square root when both doubled exponents are even.
    pub fn sqrt(self) -> Option<Self> {
        if self.a2 % 2 == 0 && self.q2 % 2 == 0 {
            Some(Monomial { a2: self.a2 / 2, q2: self.q2 / 2 })
        } else {
            None
        }
    }

    /// `a -> q^n`.
    pub fn substitute_a(self, n: i32) -> Self {
        Monomial { a2: 0, q2: self.q2 + n * self.a2 }
    }

    pub fn invert_q(self) -> Self {
        Monomial { a2: self.a2, q2: -self.q2 }
    }

    pub fn has_half_exponent(self) -> bool {
        self.a2 % 2 != 0 || self.q2 % 2 != 0
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    fn mul(self, rhs: Monomial) -> Monomial {
        Monomial { a2: self.a2 + rhs.a2, q2: self.q2 + rhs.q2 }
    }
}

impl Div for Monomial {
    type Output = Monomial;
    fn div(self, rhs: Monomial) -> Monomial {
        Monomial { a2: self.a2 - rhs.a2, q2: self.q2 - rhs.q2 }
    }
}

pub(crate) fn fmt_exponent(f: &mut fmt::Formatter<'_>, var: char, e2: i32) -> fmt::Result {
    if e2 == 2 {
        write!(f, "{var}")
    } else if e2 % 2 == 0 {
        write!(f, "{var}^{}", e2 / 2)
    } else {
        write!(f, "{var}^({e2}/2)")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a2, self.q2) {
            (0, 0) => write!(f, "1"),
            (a, 0) => fmt_exponent(f, 'a', a),
            (0, q) => fmt_exponent(f, 'q', q),
            (a, q) => {
                fmt_exponent(f, 'a', a)?;
                write!(f, "*")?;
                fmt_exponent(f, 'q', q)
            }
        }
    }
}
