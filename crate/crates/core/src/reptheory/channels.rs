use std::collections::BTreeMap;

use super::{Channel, RepLabel, ReptheoryError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChannelEntry {
    pub channel: Channel,
    /// 3j phase `{R_i, R_j, t, r}`.
    pub phase: i8,
}

/// Irreducible decompositions of the pairwise tensor products that occur, in a fixed
/// order, with their multiplicity indices and 3j phases.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChannelTable {
    products: BTreeMap<(RepLabel, RepLabel), Vec<ChannelEntry>>,
}

fn lab(s: &str) -> RepLabel {
    s.parse().expect("builtin label")
}

impl ChannelTable {
    pub fn new() -> Self {
        ChannelTable::default()
    }

    /// Appends `label` with one entry per phase, i.e. multiplicity `phases.len()`.
    pub fn push(&mut self, ri: &RepLabel, rj: &RepLabel, label: RepLabel, phases: &[i8]) {
        let list = self.products.entry((ri.clone(), rj.clone())).or_default();
        for (r, &phase) in phases.iter().enumerate() {
            list.push(ChannelEntry { channel: Channel::new(label.clone(), r as u8), phase });
        }
    }

    /// Adds `ri (x) rj` and its conjugate product `ri* (x) rj*` with the same phases.
    pub fn push_with_conjugate(&mut self, ri: &RepLabel, rj: &RepLabel, label: RepLabel, phases: &[i8]) {
        self.push(ri, rj, label.clone(), phases);
        if (ri.conj(), rj.conj()) != (ri.clone(), rj.clone()) {
            self.push(&ri.conj(), &rj.conj(), label.conj(), phases);
        }
    }

    /// Table for `R = [2,1]`: the products `R (x) Rbar`, `Rbar (x) R`, `R (x) R`,
    /// `Rbar (x) Rbar`.
    pub fn builtin() -> Self {
        let r = lab("(21;0)");
        let rb = r.conj();
        let mut t = ChannelTable::new();
        let mixed: [(&str, &[i8]); 7] = [
            ("(0;0)", &[1]),
            ("(1;1)", &[1, -1]),
            ("(2;2)", &[1]),
            ("(2;1^2)", &[-1]),
            ("(1^2;2)", &[-1]),
            ("(1^2;1^2)", &[1]),
            ("(21;21)", &[1]),
        ];
        for (s, ph) in mixed {
            t.push(&r, &rb, lab(s), ph);
            t.push(&rb, &r, lab(s), ph);
        }
        let parallel: [(&str, &[i8]); 7] = [
            ("(42;0)", &[1]),
            ("(2^3;0)", &[1]),
            ("(31^3;0)", &[1]),
            ("(321;0)", &[1, -1]),
            ("(41^2;0)", &[-1]),
            ("(3^2;0)", &[-1]),
            ("(2^2 1^2;0)", &[-1]),
        ];
        for (s, ph) in parallel {
            t.push_with_conjugate(&r, &r, lab(s), ph);
        }
        t
    }

    pub fn pairs(&self) -> impl Iterator<Item = &(RepLabel, RepLabel)> {
        self.products.keys()
    }

    pub fn channels(&self, ri: &RepLabel, rj: &RepLabel) -> Result<&[ChannelEntry], ReptheoryError> {
        self.products
            .get(&(ri.clone(), rj.clone()))
            .map(Vec::as_slice)
            .ok_or_else(|| ReptheoryError::UnknownProduct(ri.to_string(), rj.to_string()))
    }

    pub fn multiplicity(&self, ri: &RepLabel, rj: &RepLabel, t: &RepLabel) -> u8 {
        self.channels(ri, rj).map(|cs| cs.iter().filter(|e| &e.channel.label == t).count() as u8).unwrap_or(0)
    }

    pub fn phase(&self, ri: &RepLabel, rj: &RepLabel, ch: &Channel) -> Result<i8, ReptheoryError> {
        self.channels(ri, rj)?.iter().find(|e| &e.channel == ch).map(|e| e.phase).ok_or_else(|| ReptheoryError::NotInProduct {
            channel: ch.to_string(),
            left: ri.to_string(),
            right: rj.to_string(),
        })
    }

    /// Distinct labels of `ri (x) rj` in table order.
    pub fn labels(&self, ri: &RepLabel, rj: &RepLabel) -> Result<Vec<RepLabel>, ReptheoryError> {
        let mut out: Vec<RepLabel> = Vec::new();
        for e in self.channels(ri, rj)? {
            if !out.contains(&e.channel.label) {
                out.push(e.channel.label.clone());
            }
        }
        Ok(out)
    }
}
