use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::laurent::{factor_poly, Factored, LaurentPoly, Monomial, Scalar};

use super::{Partition, RepLabel, ReptheoryError};

/// `[n] = (q^n - q^-n) / (q - q^-1)`.
pub fn q_number(n: i32) -> Factored {
    q_binomial(Monomial::ints(0, n)).div(&q_binomial(Monomial::ints(0, 1)))
}

/// `[N + c] = (a q^c - a^-1 q^-c) / (q - q^-1)` at `a = q^N`.
pub fn shifted_q_number(c: i32) -> Factored {
    q_binomial(Monomial::ints(1, c)).div(&q_binomial(Monomial::ints(0, 1)))
}

fn q_binomial(m: Monomial) -> Factored {
    let p = &LaurentPoly::unit(m) - &LaurentPoly::unit(m.inv());
    factor_poly(&p).expect("nonzero binomial")
}

fn ordinary_qdim(p: &Partition) -> Factored {
    let mut f = Factored::one();
    for (i, j) in p.boxes() {
        f = f.mul(&shifted_q_number(j as i32 - i as i32));
        f = f.div(&q_number(p.hook(i, j) as i32));
    }
    f
}

/// Quantum dimension with `a = q^N` kept symbolic, as a factored product.
pub fn quantum_dimension_factored(label: &RepLabel) -> Factored {
    let mut f = ordinary_qdim(&label.mu).mul(&ordinary_qdim(&label.nu));
    for (i, &mi) in label.mu.rows().iter().enumerate() {
        for (j, &nj) in label.nu.rows().iter().enumerate() {
            let (i, j) = (i as i32 + 1, j as i32 + 1);
            let (mi, nj) = (mi as i32, nj as i32);
            f = f.mul(&shifted_q_number(mi + nj - i - j + 1));
            f = f.mul(&shifted_q_number(1 - i - j));
            f = f.div(&shifted_q_number(mi - i - j + 1));
            f = f.div(&shifted_q_number(nj - i - j + 1));
        }
    }
    f
}

pub fn quantum_dimension(label: &RepLabel) -> Scalar {
    Scalar::from_factored(&quantum_dimension_factored(label))
}

/// Classical `U(N)` dimension from the Weyl formula.
pub fn classical_dimension(label: &RepLabel, n: usize) -> Result<BigInt, ReptheoryError> {
    let l = label.to_partition(n)?;
    let mut d = BigRational::one();
    for i in 1..=n {
        for j in i + 1..=n {
            let num = l.row(i) as i64 - l.row(j) as i64 + (j - i) as i64;
            d *= BigRational::new(num.into(), ((j - i) as i64).into());
        }
    }
    Ok(d.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::LaurentError;

    fn l(s: &str) -> RepLabel {
        s.parse().unwrap()
    }

    /// `prod_{i<j} [l_i - l_j + j - i] / [j - i]` evaluated directly in `q`.
    fn weyl_qdim(p: &Partition, n: usize) -> Scalar {
        let qn = |k: i64| -> Scalar {
            let num = &LaurentPoly::term(1, 0, k as i32) - &LaurentPoly::term(1, 0, -(k as i32));
            Scalar::new(num, &"q - q^-1".parse().unwrap()).unwrap()
        };
        let mut acc = Scalar::one();
        for i in 1..=n {
            for j in i + 1..=n {
                let top = p.row(i) as i64 - p.row(j) as i64 + (j - i) as i64;
                acc = acc.mul(&qn(top)).div(&qn((j - i) as i64)).unwrap();
            }
        }
        acc
    }

    #[test]
    fn matches_weyl_formula_at_fixed_rank() -> Result<(), LaurentError> {
        for s in ["(21;0)", "(0;21)", "(1;1)", "(2;1^2)", "(21;21)", "(321;0)", "(2;2)", "(31^3;0)", "(2^2 1^2;0)"] {
            let label = l(s);
            let dim = quantum_dimension(&label);
            for n in label.min_rank().max(2)..=7 {
                let at_n = dim.substitute_a(n as i32);
                let weyl = weyl_qdim(&label.to_partition(n).unwrap(), n);
                assert_eq!(at_n, weyl, "{s} at N={n}");
            }
        }
        Ok(())
    }

    #[test]
    fn classical_dimensions_fill_the_tensor_square() {
        use super::super::ChannelTable;
        let t = ChannelTable::builtin();
        let r = l("(21;0)");
        for n in 4..=7 {
            let dr = classical_dimension(&r, n).unwrap();
            for rj in [r.clone(), r.conj()] {
                let total: BigInt = t.channels(&r, &rj).unwrap().iter().map(|e| classical_dimension(&e.channel.label, n).unwrap()).sum();
                assert_eq!(total, &dr * &dr, "N={n}");
            }
        }
    }

    #[test]
    fn adjoint_dimension() {
        let d = quantum_dimension(&l("(1;1)"));
        let f = quantum_dimension(&l("(1;0)"));
        assert_eq!(d, f.mul(&f).sub(&Scalar::one()));
    }
}
