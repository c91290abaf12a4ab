use proptest::prelude::*;

use super::*;
use crate::fusiondata::synthetic::{toy_table, SyntheticModel};
use crate::reptheory::{quantum_dimension_factored, CasimirEigenvalues, RepLabel};

fn lab(s: &str) -> RepLabel {
    s.parse().unwrap()
}

fn color() -> RepLabel {
    lab("(21;0)")
}

fn alt() -> Frame {
    Frame::alternating(&color())
}

fn key(t: &str, l: u8, r: u8) -> BasisKey {
    BasisKey::new(lab(t), l, r)
}

fn state_from(frame: &Frame, basis: Basis, keys: &[BasisKey], coeffs: &[i64]) -> BlockState {
    let mut s = BlockState::new(frame.clone(), basis);
    for (k, &c) in keys.iter().zip(coeffs) {
        s.set(k.clone(), Surd::integer(c));
    }
    s
}

fn random_side(frame: Frame, table: ChannelTable) -> impl Strategy<Value = BlockState> {
    let keys = frame.side_basis(&table).unwrap();
    proptest::collection::vec(-4i64..=4, keys.len()).prop_map(move |c| state_from(&frame, Basis::Side, &keys, &c))
}

fn full_model() -> &'static SyntheticModel {
    static M: std::sync::OnceLock<SyntheticModel> = std::sync::OnceLock::new();
    M.get_or_init(|| SyntheticModel::full(5, false))
}

fn toy_models() -> &'static [SyntheticModel] {
    static M: std::sync::OnceLock<Vec<SyntheticModel>> = std::sync::OnceLock::new();
    M.get_or_init(|| (0..4).map(|seed| SyntheticModel::toy(seed, false)).collect())
}

fn mf_frame() -> Frame {
    let r = color();
    Frame::new(r.clone(), r.conj(), r.conj(), r)
}

#[test]
fn braid_identities() {
    let eig = CasimirEigenvalues::builtin();
    let t = ChannelTable::builtin();
    let keys = alt().side_basis(&t).unwrap();
    let coeffs: Vec<i64> = (1..=keys.len() as i64).collect();
    let s = state_from(&alt(), Basis::Side, &keys, &coeffs);
    let same = braid(&s, 1, -1, 0, &eig).unwrap();
    assert_eq!(same.coeffs, s.coeffs);
    let back = braid(&braid(&s, 1, -1, 1, &eig).unwrap(), 1, -1, -1, &eig).unwrap();
    assert_eq!(back, s);
    let b13 = braid(&braid(&s, 1, -1, 1, &eig).unwrap(), 3, -1, 1, &eig).unwrap();
    let b31 = braid(&braid(&s, 3, -1, 1, &eig).unwrap(), 1, -1, 1, &eig).unwrap();
    assert_eq!(b13, b31);
    assert!(matches!(braid(&s, 2, -1, 1, &eig), Err(BlocksError::WrongBasis { .. })));
    assert!(matches!(braid(&s, 1, 1, 1, &eig), Err(BlocksError::Orientation { .. })));
    assert!(matches!(braid(&s, 4, 1, 1, &eig), Err(BlocksError::BadPosition(4))));
}

#[test]
fn braid_on_diagonal_multiplicity_free_state_cancels() {
    let eig = CasimirEigenvalues::builtin();
    let mut s = BlockState::new(alt(), Basis::Side);
    for k in alt().side_basis(eig.table()).unwrap() {
        if k.left == k.right {
            s.set(k, Surd::integer(3));
        }
    }
    let out = mutate_x_braided(&s, &eig).unwrap();
    assert_eq!(out, s);
}

#[test]
fn change_basis_is_an_involution_and_maps_rows() {
    let ds = &full_model().dataset;
    let (rows, cols, mat) = ds.matrix(&alt()).unwrap();
    for (i, k) in rows.iter().enumerate() {
        let s = BlockState::basis_vector(alt(), Basis::Side, k.clone());
        let mid = change_basis(&s, ds).unwrap();
        assert_eq!(mid.basis, Basis::Middle);
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(mid.coeff(c), mat[i][j]);
        }
        assert_eq!(change_basis(&mid, ds).unwrap(), s);
    }
    let zero = BlockState::new(alt(), Basis::Side);
    assert_eq!(change_basis(&zero, ds).unwrap(), BlockState::new(alt(), Basis::Middle));
    let other = Frame::new(color(), color(), color().conj(), color().conj());
    assert!(matches!(change_basis(&BlockState::new(other, Basis::Side), ds), Err(BlocksError::Fusion(_))));
}

#[test]
fn cap_pairs_basis_states() {
    let t = ChannelTable::builtin();
    let keys = alt().side_basis(&t).unwrap();
    for a in &keys {
        for b in &keys {
            let v = cap(&BlockState::basis_vector(alt(), Basis::Side, a.clone()), &BlockState::basis_vector(alt(), Basis::Side, b.clone()))
                .unwrap();
            assert_eq!(v, Surd::integer((a == b) as i64));
        }
    }
    let mid = BlockState::new(alt(), Basis::Middle);
    assert!(matches!(cap(&mid, &BlockState::new(alt(), Basis::Side)), Err(BlocksError::FrameMismatch(..))));
}

#[test]
fn two_boundary_state() {
    let t = ChannelTable::builtin();
    let two = boundary_state(2, &alt(), &t).unwrap();
    assert_eq!(two.legs(), 2);
    for (keys, w) in &two.entries {
        assert_eq!(keys[1], keys[0].flipped());
        let sign = if keys[0].channel == lab("(1;1)") && keys[0].left != keys[0].right { -1 } else { 1 };
        assert_eq!(*w, Surd::integer(sign));
    }
    // the trivial tangle: one term per side-basis state, each weight squared to one
    let total = two.entries.values().fold(Surd::zero(), |acc, w| acc.add(&w.mul(w)));
    assert_eq!(total, Surd::integer(alt().side_basis(&t).unwrap().len() as i64));
    assert_eq!(total, Surd::integer(10));
    assert!(matches!(boundary_state(1, &alt(), &t), Err(BlocksError::BadBoundaryCount(1))));
}

#[test]
fn three_boundary_weights() {
    let t = ChannelTable::builtin();
    let three = boundary_state(3, &alt(), &t).unwrap();
    let s = key("(0;0)", 0, 0);
    assert_eq!(three.entries[&vec![s.clone(), s.clone(), s]], Surd::one());
    let legs = vec![key("(1;1)", 0, 0), key("(1;1)", 0, 1), key("(1;1)", 1, 0)];
    let inv_root = Surd::sqrt(&quantum_dimension_factored(&lab("(1;1)"))).unwrap().inv().unwrap();
    assert_eq!(three.entries[&legs], inv_root.neg());
}

#[test]
fn capping_three_boundaries_gives_two() {
    for t in [ChannelTable::builtin(), toy_table()] {
        let three = boundary_state(3, &alt(), &t).unwrap();
        let bra = MultiBoundaryState::closing_bra(&alt(), &t).unwrap();
        let capped = three.contract(2, &bra).unwrap();
        assert_eq!(capped, boundary_state(2, &alt(), &t).unwrap());
        let four = boundary_state(4, &alt(), &t).unwrap();
        assert_eq!(four.contract(3, &bra).unwrap(), three);
    }
}

#[test]
fn mutation_examples() {
    let t = ChannelTable::builtin();
    let k01 = key("(1;1)", 0, 1);
    let k10 = key("(1;1)", 1, 0);
    let s = BlockState::basis_vector(alt(), Basis::Side, k01.clone());
    assert_eq!(mutate_x(&s, &t).unwrap().coeff(&k01), Surd::integer(-1));
    let y = mutate_y(&s, &t).unwrap();
    assert_eq!(y.coeff(&k10), Surd::integer(-1));
    assert!(y.coeff(&k01).is_zero());
    let z = mutate_z(&s, &t).unwrap();
    assert_eq!(z.coeff(&k10), Surd::one());
    let diag = BlockState::basis_vector(alt(), Basis::Side, key("(1;1)", 1, 1));
    for f in [mutate_x, mutate_y, mutate_z] {
        assert_eq!(f(&diag, &t).unwrap(), diag);
    }
    let mid = BlockState::new(alt(), Basis::Middle);
    assert!(matches!(mutate_y(&mid, &t), Err(BlocksError::WrongBasis { .. })));
}

#[test]
fn dump_lists_coefficients() {
    let s = BlockState::basis_vector(alt(), Basis::Side, key("(1;1)", 0, 1));
    let d = s.dump();
    assert!(d.starts_with("frame (21;0) (0;21) (21;0) (0;21) basis side\n"), "{d}");
    assert!(d.contains("(1;1)#0,1 = 1"), "{d}");
}

#[test]
fn tangle_difference_examples() {
    let t = ChannelTable::builtin();
    let f = BlockState::basis_vector(mf_frame(), Basis::Side, key("(1;1)", 0, 1));
    assert_eq!(tangle_difference(&f, &f, &t).unwrap(), Surd::one());
    let d = BlockState::basis_vector(mf_frame(), Basis::Side, key("(1;1)", 1, 1));
    assert!(tangle_difference(&d, &f, &t).unwrap().is_zero());
    let other = BlockState::new(alt(), Basis::Side);
    assert!(matches!(tangle_difference(&f, &other, &t), Err(BlocksError::FrameMismatch(..))));
}

/// `sum_{k, k'} {k} a^{k''~}_{k'} a^{k'~}_{k} f_k |k''>` in the alternating frame: the braid word
/// after substituting the backcoupling rule into both exchange brackets.
fn backcoupled_y(f: &BlockState, ds: &FusionDataset) -> BlockState {
    let t = ds.table();
    let (rows, cols, a) = ds.matrix(&alt()).unwrap();
    let row = |k: &BasisKey| rows.iter().position(|x| x == k).unwrap();
    let col = |k: &BasisKey| cols.iter().position(|x| x == k).unwrap();
    let mut out = BlockState::new(alt(), Basis::Side);
    for out_key in &rows {
        let mut acc = Surd::zero();
        for (k, v) in &f.coeffs {
            let ph = side_phases(t, &alt(), k).unwrap();
            for mid in &cols {
                let x = a[row(&out_key.flipped())][col(mid)].mul(&a[row(&mid.flipped())][col(k)]);
                acc = acc.add(&x.mul(v).mul(&Surd::integer(ph)));
            }
        }
        out.set(out_key.clone(), acc);
    }
    out
}

fn trace(op: impl Fn(&BlockState) -> BlockState, keys: &[BasisKey]) -> Surd {
    keys.iter().fold(Surd::zero(), |acc, k| acc.add(&op(&BlockState::basis_vector(alt(), Basis::Side, k.clone())).coeff(k)))
}

/// With `q`-independent real data every exchange bracket squares to the identity, so the
/// braid word is conjugate to `b1 b3^-1` and has its trace. The index swap has a different
/// trace, so no such dataset can make the two agree.
#[test]
fn braid_word_y_is_conjugate_to_x_on_real_phase_data() {
    for seed in 0..3 {
        let m = SyntheticModel::toy(seed, seed % 2 == 1);
        let t = toy_table();
        let keys = alt().side_basis(&t).unwrap();
        let braided = trace(|s| mutate_y_braided(s, &m.dataset, &m.eigenvalues).unwrap(), &keys);
        let x = trace(|s| mutate_x(s, &t).unwrap(), &keys);
        let swap = trace(|s| mutate_y(s, &t).unwrap(), &keys);
        assert_eq!(braided, x);
        assert_eq!(x, Surd::integer(1));
        assert_eq!(swap, Surd::integer(3));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mutations_are_involutions(s in random_side(alt(), ChannelTable::builtin())) {
        let t = ChannelTable::builtin();
        prop_assert_eq!(mutate_x(&mutate_x(&s, &t).unwrap(), &t).unwrap(), s.clone());
        prop_assert_eq!(mutate_y(&mutate_y(&s, &t).unwrap(), &t).unwrap(), s.clone());
        prop_assert_eq!(mutate_z(&mutate_z(&s, &t).unwrap(), &t).unwrap(), s);
    }

    #[test]
    fn braided_x_matches_closed_form(s in random_side(alt(), ChannelTable::builtin())) {
        let eig = CasimirEigenvalues::builtin();
        prop_assert_eq!(mutate_x_braided(&s, &eig).unwrap(), mutate_x(&s, eig.table()).unwrap());
    }

    #[test]
    fn braided_y_matches_backcoupled_form(seed in 0u64..4, s in random_side(alt(), toy_table())) {
        let m = &toy_models()[seed as usize];
        prop_assert_eq!(mutate_y_braided(&s, &m.dataset, &m.eigenvalues).unwrap(), backcoupled_y(&s, &m.dataset));
    }

    #[test]
    fn change_basis_round_trips(s in random_side(alt(), ChannelTable::builtin())) {
        let m = full_model();
        let back = change_basis(&change_basis(&s, &m.dataset).unwrap(), &m.dataset).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn tangle_difference_is_the_cap_difference(
        f in random_side(mf_frame(), ChannelTable::builtin()),
        g in random_side(mf_frame(), ChannelTable::builtin()),
    ) {
        let t = ChannelTable::builtin();
        let lhs = tangle_difference(&f, &g, &t).unwrap();
        let rhs = cap(&g, &f).unwrap().sub(&cap(&g, &mutate_y(&f, &t).unwrap()).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}
