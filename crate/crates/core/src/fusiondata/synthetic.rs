//! Exact fixture data that satisfies unitarity and backcoupling by construction.
//!
//! Eigenvalues are the bare 3j phases, so all fusion entries are rational constants.
//! The nested-frame matrix is a product of rational Householder reflections and the
//! alternating frame is then defined by the backcoupling relation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::laurent::{Scalar, Surd};
use crate::reptheory::{BraidingEigenvalues, Channel, ChannelTable, PhaseEigenvalues, RepLabel};

use super::{BasisKey, Frame, FusionDataset, FusionKey};

pub struct SyntheticModel {
    pub dataset: FusionDataset,
    pub eigenvalues: PhaseEigenvalues,
}

fn lab(s: &str) -> RepLabel {
    s.parse().unwrap()
}

/// `R (x) Rbar = (0;0) + 2 (1;1)`, `R (x) R = (42;0) + 2 (321;0)` for `R = (21;0)`.
pub fn toy_table() -> ChannelTable {
    let r = lab("(21;0)");
    let rb = r.conj();
    let mut t = ChannelTable::new();
    for (a, b) in [(&r, &rb), (&rb, &r)] {
        t.push(a, b, RepLabel::singlet(), &[1]);
        t.push(a, b, lab("(1;1)"), &[1, -1]);
    }
    t.push_with_conjugate(&r, &r, lab("(42;0)"), &[1]);
    t.push_with_conjugate(&r, &r, lab("(321;0)"), &[1, -1]);
    t
}

fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Product of Householder reflections `I - 2 v v^T / v.v` with `v` supported on one block.
fn random_orthogonal(n: usize, blocks: &[Vec<usize>], rng: &mut StdRng, reflections: usize) -> Vec<Vec<BigRational>> {
    let mut m: Vec<Vec<BigRational>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect()).collect();
    let usable: Vec<&Vec<usize>> = blocks.iter().filter(|b| b.len() > 1).collect();
    if usable.is_empty() {
        return m;
    }
    for k in 0..reflections {
        let block = usable[k % usable.len()];
        let mut v = vec![BigRational::zero(); n];
        loop {
            for &i in block {
                v[i] = rational(rng.gen_range(-3..=3));
            }
            if block.iter().filter(|&&i| !v[i].is_zero()).count() > 1 {
                break;
            }
        }
        let vv: BigRational = v.iter().map(|x| x * x).sum();
        let mv: Vec<BigRational> = m.iter().map(|row| row.iter().zip(&v).map(|(a, b)| a * b).sum()).collect();
        let c = rational(2) / vv;
        for (i, row) in m.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x -= &c * &mv[i] * &v[j];
            }
        }
    }
    m
}

impl SyntheticModel {
    /// Toy channel table, five states per frame.
    pub fn toy(seed: u64, commuting: bool) -> Self {
        Self::build(toy_table(), seed, commuting)
    }

    /// Builtin `[2,1]` table, ten states per frame.
    pub fn full(seed: u64, commuting: bool) -> Self {
        Self::build(ChannelTable::builtin(), seed, commuting)
    }

    /// With `commuting`, the nested-frame matrix keeps the sign `{t r1}{t r2}` sectors
    /// apart, which makes the alternating-frame matrix invariant under the multiplicity
    /// swap with phases.
    pub fn build(table: ChannelTable, seed: u64, commuting: bool) -> Self {
        let r = lab("(21;0)");
        let rb = r.conj();
        let eig = PhaseEigenvalues { table: table.clone() };
        let nested = Frame::nested(&r);
        let alt = Frame::alternating(&r);
        let ks = nested.side_basis(&table).unwrap();
        let us = nested.middle_basis(&table).unwrap();
        assert_eq!(ks.len(), us.len());
        let phase = |k: &BasisKey, x: u8| table.phase(&rb, &r, &Channel::new(k.channel.clone(), x)).unwrap();
        let blocks: Vec<Vec<usize>> = if commuting {
            let mut plus = Vec::new();
            let mut minus = Vec::new();
            for (i, k) in ks.iter().enumerate() {
                if phase(k, k.left) * phase(k, k.right) > 0 {
                    plus.push(i);
                } else {
                    minus.push(i);
                }
            }
            vec![plus, minus]
        } else {
            vec![(0..ks.len()).collect()]
        };
        let mut rng = StdRng::seed_from_u64(seed);
        let b = random_orthogonal(ks.len(), &blocks, &mut rng, 2 * ks.len());

        let mut ds = FusionDataset::new(table.clone(), r.clone());
        for (i, k) in ks.iter().enumerate() {
            for (j, u) in us.iter().enumerate() {
                let key = FusionKey { frame: nested.clone(), side: k.clone(), middle: u.clone() };
                ds.set(key, Surd::from(Scalar::from_rational(b[i][j].clone())));
            }
        }
        let idx = |k: &BasisKey| ks.iter().position(|x| x == k).unwrap();
        let ev = |ri: &RepLabel, rj: &RepLabel, k: &BasisKey, x: u8| -> i64 {
            eig.eigenvalue(ri, rj, &Channel::new(k.channel.clone(), x), false).unwrap().sign as i64
        };
        let sides = alt.side_basis(&table).unwrap();
        let middles = alt.middle_basis(&table).unwrap();
        for s in &sides {
            for t in &middles {
                let row_s = &b[idx(&s.flipped())];
                let row_t = &b[idx(t)];
                let mut acc = BigRational::zero();
                for (j, u) in us.iter().enumerate() {
                    let l = eig.eigenvalue(&r, &r, &Channel::new(u.channel.clone(), u.right), true).unwrap().sign as i64;
                    acc += &row_s[j] * &row_t[j] * rational(l);
                }
                let ph = table.phase(&r, &rb, &Channel::new(t.channel.clone(), t.left)).unwrap() as i64
                    * table.phase(&r, &rb, &Channel::new(t.channel.clone(), t.right)).unwrap() as i64;
                let pre = ev(&r, &rb, s, s.left) * ev(&r, &rb, t, t.right) * ph;
                let key = FusionKey { frame: alt.clone(), side: s.clone(), middle: t.clone() };
                ds.set(key, Surd::from(Scalar::from_rational(acc * rational(pre))));
            }
        }
        SyntheticModel { dataset: ds, eigenvalues: eig }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusiondata::{validate_backcoupling, validate_unitarity};

    #[test]
    fn fixtures_validate() {
        for m in [SyntheticModel::toy(1, false), SyntheticModel::toy(2, true), SyntheticModel::full(3, true)] {
            let u = validate_unitarity(&m.dataset).unwrap();
            assert!(u.passed(), "{:?}", u.frames.iter().map(|f| f.violations.len()).collect::<Vec<_>>());
            let b = validate_backcoupling(&m.dataset, &m.eigenvalues).unwrap();
            assert!(b.passed());
        }
    }
}
