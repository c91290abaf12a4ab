use std::fmt;
use std::str::FromStr;

use super::{Partition, ReptheoryError};

/// Composite representation `(mu; nu)`: `mu` built from fundamentals, `nu` from
/// antifundamentals. `(mu; 0)` is the ordinary representation `mu`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RepLabel {
    pub mu: Partition,
    pub nu: Partition,
}

impl RepLabel {
    pub fn new(mu: Partition, nu: Partition) -> Self {
        RepLabel { mu, nu }
    }

    pub fn singlet() -> Self {
        RepLabel::default()
    }

    pub fn ordinary(mu: Partition) -> Self {
        RepLabel { mu, nu: Partition::empty() }
    }

    pub fn conj(&self) -> Self {
        RepLabel { mu: self.nu.clone(), nu: self.mu.clone() }
    }

    pub fn is_singlet(&self) -> bool {
        self.mu.is_empty() && self.nu.is_empty()
    }

    /// Minimal `N` for which the label is a nonzero `U(N)` representation.
    pub fn min_rank(&self) -> usize {
        self.mu.len() + self.nu.len()
    }

    /// `N`-row highest weight `lambda_i = mu_i + nu_1`, `lambda_{N+1-j} = nu_1 - nu_j`.
    pub fn to_partition(&self, n: usize) -> Result<Partition, ReptheoryError> {
        if self.min_rank() > n {
            return Err(ReptheoryError::LabelTooWide { label: self.to_string(), n });
        }
        Partition::new(self.shifted_weight(n))
    }

    /// Unshifted `U(N)` weight `(mu_1, .., 0, .., -nu_2, -nu_1)`.
    pub fn weight(&self, n: usize) -> Vec<i64> {
        let mut w = vec![0i64; n];
        for (i, &m) in self.mu.rows().iter().enumerate() {
            w[i] = m as i64;
        }
        for (j, &v) in self.nu.rows().iter().enumerate() {
            w[n - 1 - j] -= v as i64;
        }
        w
    }

    fn shifted_weight(&self, n: usize) -> Vec<u32> {
        let shift = self.nu.row(1) as i64;
        self.weight(n).into_iter().map(|x| (x + shift) as u32).collect()
    }
}

impl fmt::Display for RepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};{})", self.mu, self.nu)
    }
}

impl FromStr for RepLabel {
    type Err = ReptheoryError;

    /// `"(21;0)"`, `"(2^2 1^2;0)"` or ordinary `"[2,1]"`.
    fn from_str(s: &str) -> Result<Self, ReptheoryError> {
        let t = s.trim();
        let bad = |m: &str| ReptheoryError::Parse { input: s.to_string(), message: m.to_string() };
        if let Some(inner) = t.strip_prefix('[').and_then(|x| x.strip_suffix(']')) {
            return Ok(RepLabel::ordinary(inner.parse()?));
        }
        let inner = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')).ok_or_else(|| bad("expected (mu;nu) or [rows]"))?;
        let (m, n) = inner.split_once(';').ok_or_else(|| bad("missing ';'"))?;
        Ok(RepLabel { mu: m.parse()?, nu: n.parse()? })
    }
}

/// Irreducible channel `label` with multiplicity index `r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Channel {
    pub label: RepLabel,
    pub r: u8,
}

impl Channel {
    pub fn new(label: RepLabel, r: u8) -> Self {
        Channel { label, r }
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.label, self.r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(s: &str) -> RepLabel {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(l("(21;0)").to_string(), "(21;0)");
        assert_eq!(l("[2,1]"), l("(21;0)"));
        assert_eq!(l("[]"), RepLabel::singlet());
        assert_eq!(l("(2^2 1^2;0)").mu.rows(), &[2, 2, 1, 1]);
        assert_eq!(l("(21;0)").conj(), l("(0;21)"));
        assert!("21".parse::<RepLabel>().is_err());
    }

    #[test]
    fn composite_to_partition() {
        assert_eq!(l("(21;21)").to_partition(6).unwrap().rows(), &[4, 3, 2, 2, 1]);
        assert_eq!(l("(1;1)").to_partition(3).unwrap().rows(), &[2, 1]);
        assert_eq!(l("(0;21)").to_partition(3).unwrap().rows(), &[2, 1]);
        assert!(matches!(l("(21;21)").to_partition(3), Err(ReptheoryError::LabelTooWide { .. })));
    }
}
