use crate::laurent::{LaurentPoly, Monomial};

use super::{Channel, ChannelTable, RepLabel, ReptheoryError};

/// `q^{C_R / 2}` for the `U(N)` quadratic Casimir at `a = q^N`:
/// `C = kappa_mu + kappa_nu + N (|mu| + |nu|)`.
pub fn twist(label: &RepLabel) -> Monomial {
    let s = (label.mu.size() + label.nu.size()) as i32;
    let k = (label.mu.kappa() + label.nu.kappa()) as i32;
    Monomial::doubled(s, k)
}

/// Braiding eigenvalue `sign * monomial`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Eigenvalue {
    pub sign: i8,
    pub monomial: Monomial,
}

impl Eigenvalue {
    pub fn pow(self, n: i32) -> Eigenvalue {
        let sign = if self.sign < 0 && n % 2 != 0 { -1 } else { 1 };
        Eigenvalue { sign, monomial: self.monomial.pow(n) }
    }

    pub fn to_poly(self) -> LaurentPoly {
        LaurentPoly::term(self.sign as i64, 0, 0).mul_monomial(self.monomial)
    }
}

/// Which eigenvalue each braid generator sees. `parallel` is `true` for like-oriented strands.
pub trait BraidingEigenvalues: Send + Sync {
    fn eigenvalue(&self, ri: &RepLabel, rj: &RepLabel, ch: &Channel, parallel: bool) -> Result<Eigenvalue, ReptheoryError>;
    fn table(&self) -> &ChannelTable;
}

/// Global adjustments to the Casimir eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Framing {
    /// Extra factor on every like-oriented eigenvalue.
    pub parallel: Monomial,
    /// Extra factor on every oppositely oriented eigenvalue.
    pub antiparallel: Monomial,
    /// `q^x -> q^-x` on the Casimir part (mirror image).
    pub mirror: bool,
}

impl Default for Framing {
    fn default() -> Self {
        Framing { parallel: Monomial::ONE, antiparallel: Monomial::ONE, mirror: false }
    }
}

/// `lambda^(+-)_{R_i,R_j;t,r} = {R_i,R_j,t,r} (q^{(C_i + C_j - C_t)/2})^(+-1)`.
#[derive(Clone, Debug)]
pub struct CasimirEigenvalues {
    pub table: ChannelTable,
    pub framing: Framing,
}

impl CasimirEigenvalues {
    pub fn new(table: ChannelTable) -> Self {
        CasimirEigenvalues { table, framing: Framing::default() }
    }

    pub fn builtin() -> Self {
        CasimirEigenvalues::new(ChannelTable::builtin())
    }
}

impl BraidingEigenvalues for CasimirEigenvalues {
    fn eigenvalue(&self, ri: &RepLabel, rj: &RepLabel, ch: &Channel, parallel: bool) -> Result<Eigenvalue, ReptheoryError> {
        let sign = self.table.phase(ri, rj, ch)?;
        let base = twist(ri) * twist(rj) * twist(&ch.label).inv();
        let mut m = if parallel { base } else { base.inv() };
        if self.framing.mirror {
            m = m.inv();
        }
        m = m * if parallel { self.framing.parallel } else { self.framing.antiparallel };
        Ok(Eigenvalue { sign, monomial: m })
    }

    fn table(&self) -> &ChannelTable {
        &self.table
    }
}

/// Eigenvalues equal to the bare 3j phases. Used for `q`-independent fixture data.
#[derive(Clone, Debug)]
pub struct PhaseEigenvalues {
    pub table: ChannelTable,
}

impl BraidingEigenvalues for PhaseEigenvalues {
    fn eigenvalue(&self, ri: &RepLabel, rj: &RepLabel, ch: &Channel, _parallel: bool) -> Result<Eigenvalue, ReptheoryError> {
        Ok(Eigenvalue { sign: self.table.phase(ri, rj, ch)?, monomial: Monomial::ONE })
    }

    fn table(&self) -> &ChannelTable {
        &self.table
    }
}

/// `lambda^(+-)` with the builtin `[2,1]` table and no framing change.
pub fn braiding_eigenvalue(ri: &RepLabel, rj: &RepLabel, ch: &Channel, parallel: bool) -> Result<Eigenvalue, ReptheoryError> {
    CasimirEigenvalues::builtin().eigenvalue(ri, rj, ch, parallel)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(s: &str) -> RepLabel {
        s.parse().unwrap()
    }

    /// `sum_i w_i (w_i + N + 1 - 2i)` on the unshifted weight.
    fn casimir_at(label: &RepLabel, n: usize) -> i64 {
        label.weight(n).iter().enumerate().map(|(i, &w)| w * (w + n as i64 + 1 - 2 * (i as i64 + 1))).sum()
    }

    #[test]
    fn twist_matches_weight_casimir() {
        for s in ["(21;0)", "(0;21)", "(1;1)", "(21;21)", "(2;1^2)", "(42;0)", "(2^2 1^2;0)", "(0;321)"] {
            let label = l(s);
            for n in label.min_rank().max(3)..=6 {
                let m = twist(&label).substitute_a(n as i32);
                assert_eq!(m.q2() as i64, casimir_at(&label, n), "{s} N={n}");
            }
        }
    }

    #[test]
    fn reference_eigenvalues() {
        let r = l("(21;0)");
        let e = braiding_eigenvalue(&r, &r.conj(), &Channel::new(RepLabel::singlet(), 0), false).unwrap();
        assert_eq!(e.to_poly().to_string(), "a^-3");
        let e = braiding_eigenvalue(&r, &r, &Channel::new(l("(42;0)"), 0), true).unwrap();
        assert_eq!(e.to_poly().to_string(), "q^-5");
        let e = braiding_eigenvalue(&r, &r, &Channel::new(l("(321;0)"), 1), true).unwrap();
        assert_eq!(e.sign, -1);
        assert_eq!(twist(&r).to_string(), "a^(3/2)");
    }

    #[test]
    fn eigenvalue_powers() {
        let e = Eigenvalue { sign: -1, monomial: Monomial::ints(1, 2) };
        assert_eq!(e.pow(-3).to_poly().to_string(), "-a^-3*q^-6");
        assert_eq!(e.pow(2).to_poly().to_string(), "a^2*q^4");
    }
}
