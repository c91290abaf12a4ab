use std::fmt;
use std::str::FromStr;

use super::ReptheoryError;

/// Young diagram as weakly decreasing positive row lengths.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn new(mut rows: Vec<u32>) -> Result<Self, ReptheoryError> {
        while rows.last() == Some(&0) {
            rows.pop();
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(ReptheoryError::Parse { input: format!("{rows:?}"), message: "rows must be weakly decreasing".into() });
        }
        Ok(Partition(rows))
    }

    pub fn rows(&self) -> &[u32] {
        &self.0
    }

    /// `lambda_i`, 1-based, zero past the last row.
    pub fn row(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn transpose(&self) -> Partition {
        let w = self.row(1);
        Partition((1..=w).map(|j| self.0.iter().filter(|&&r| r >= j).count() as u32).collect())
    }

    /// `sum_i lambda_i (lambda_i + 1 - 2i)`, twice the total content.
    pub fn kappa(&self) -> i64 {
        self.0.iter().enumerate().map(|(i, &l)| l as i64 * (l as i64 + 1 - 2 * (i as i64 + 1))).sum()
    }

    /// Boxes as `(row, column)`, both 1-based.
    pub fn boxes(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &l)| (1..=l).map(move |j| (i as u32 + 1, j)))
    }

    pub fn hook(&self, i: u32, j: u32) -> u32 {
        let t = self.transpose();
        self.row(i as usize) - j + t.row(j as usize) - i + 1
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        if self.0.iter().any(|&r| r > 9) {
            let s: Vec<String> = self.0.iter().map(|r| r.to_string()).collect();
            return write!(f, "{}", s.join(","));
        }
        let mut groups: Vec<(u32, usize)> = Vec::new();
        for &r in &self.0 {
            match groups.last_mut() {
                Some((v, n)) if *v == r => *n += 1,
                _ => groups.push((r, 1)),
            }
        }
        let mut prev_power = false;
        for (v, n) in groups {
            if prev_power {
                write!(f, " ")?;
            }
            if n > 1 {
                write!(f, "{v}^{n}")?;
                prev_power = true;
            } else {
                write!(f, "{v}")?;
                prev_power = false;
            }
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = ReptheoryError;

    /// `"321"`, `"2^2 1^2"`, `"31^3"`, `"0"` or the comma form `"4,2"`.
    fn from_str(s: &str) -> Result<Self, ReptheoryError> {
        let bad = |m: &str| ReptheoryError::Parse { input: s.to_string(), message: m.to_string() };
        let t = s.trim();
        if t.is_empty() || t == "0" {
            return Ok(Partition::empty());
        }
        let mut rows = Vec::new();
        if t.contains(',') {
            for part in t.split(',') {
                rows.push(part.trim().parse::<u32>().map_err(|_| bad("bad row"))?);
            }
            return Partition::new(rows);
        }
        let b = t.as_bytes();
        let mut i = 0;
        while i < b.len() {
            let c = b[i];
            if c.is_ascii_whitespace() {
                i += 1;
                continue;
            }
            if !c.is_ascii_digit() {
                return Err(bad("unexpected character"));
            }
            let v = (c - b'0') as u32;
            i += 1;
            let mut count = 1usize;
            if i < b.len() && b[i] == b'^' {
                i += 1;
                let start = i;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                if start == i {
                    return Err(bad("missing multiplicity after '^'"));
                }
                count = t[start..i].parse().map_err(|_| bad("bad multiplicity"))?;
            }
            rows.extend(std::iter::repeat_n(v, count));
        }
        Partition::new(rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compact_forms() {
        for (s, rows) in [
            ("321", vec![3, 2, 1]),
            ("2^3", vec![2, 2, 2]),
            ("31^3", vec![3, 1, 1, 1]),
            ("2^2 1^2", vec![2, 2, 1, 1]),
            ("41^2", vec![4, 1, 1]),
            ("0", vec![]),
        ] {
            let p: Partition = s.parse().unwrap();
            assert_eq!(p.rows(), rows.as_slice());
            assert_eq!(p.to_string(), s);
        }
        assert!("12".parse::<Partition>().is_err());
        assert_eq!("10,2".parse::<Partition>().unwrap().to_string(), "10,2");
    }

    #[test]
    fn transpose_and_kappa() {
        let p: Partition = "42".parse().unwrap();
        assert_eq!(p.transpose().rows(), &[2, 2, 1, 1]);
        assert_eq!(p.kappa(), 10);
        assert_eq!("21".parse::<Partition>().unwrap().kappa(), 0);
        assert_eq!(p.hook(1, 1), 5);
    }
}
