//! Acceptance suite: one line per criterion, `PASS`, `FAIL` or `SKIPPED`.
//!
//! Criteria 1-4 need a real fusion dataset, read from the file named by `SIXJ_DATASET`.
//! Without it they are skipped. Known-red sub-items print `FAIL` without failing the run.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use knotblocks::blocks::{self, Basis, BlockState};
use knotblocks::fusiondata::synthetic::{toy_table, SyntheticModel};
use knotblocks::fusiondata::{self, BasisKey, Frame, FusionDataset, FusionKey, LoadOptions};
use knotblocks::knots::{self, golden, EvalOptions};
use knotblocks::laurent::{BigRational, LaurentPoly, Monomial, Surd};
use knotblocks::reptheory::{quantum_dimension, BraidingEigenvalues, CasimirEigenvalues, ChannelTable, RepLabel};

/// Wall-clock limit for evaluating both knots on the real dataset.
const TIME_LIMIT: Duration = Duration::from_secs(60);
/// Random states per mutation property.
const STATE_CASES: usize = 1000;
/// Random cases per polynomial-kernel property.
const KERNEL_CASES: usize = 10_000;
const SEED: u64 = 20_240_601;
/// Classical `U(N)` dimensions of `[2,1]`.
const CLASSICAL_DIMS: [(i32, i64); 3] = [(4, 20), (5, 40), (6, 70)];
/// Sub-items allowed to fail; see the ledger entry on the braid-word mutate_y.
const KNOWN_RED: &[&str] = &["6c"];

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    Skipped,
}

struct Line {
    id: &'static str,
    title: &'static str,
    status: Status,
    detail: String,
}

impl Line {
    fn new(id: &'static str, title: &'static str, ok: bool, detail: impl Into<String>) -> Self {
        Line { id, title, status: if ok { Status::Pass } else { Status::Fail }, detail: detail.into() }
    }

    fn skipped(id: &'static str, title: &'static str, detail: impl Into<String>) -> Self {
        Line { id, title, status: Status::Skipped, detail: detail.into() }
    }

    fn print(&self) {
        let s = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        };
        let indent = if self.id.len() > 1 { "    " } else { "" };
        println!("{indent}[{}] {}: {s} ({})", self.id, self.title, self.detail);
    }
}

fn color() -> RepLabel {
    "(21;0)".parse().unwrap()
}

fn random_state(rng: &mut StdRng, frame: &Frame, keys: &[BasisKey]) -> BlockState {
    let mut s = BlockState::new(frame.clone(), Basis::Side);
    for k in keys {
        s.set(k.clone(), Surd::integer(rng.gen_range(-4..=4)));
    }
    s
}

fn random_poly(rng: &mut StdRng) -> LaurentPoly {
    let n = rng.gen_range(0..6);
    LaurentPoly::from_terms((0..n).map(|_| {
        let m = Monomial::doubled(rng.gen_range(-6..6), rng.gen_range(-10..10));
        (m, BigRational::new(rng.gen_range(-5i64..6).into(), rng.gen_range(1i64..4).into()))
    }))
}

fn count(cases: usize, mut ok: impl FnMut(usize) -> bool) -> usize {
    (0..cases).filter(|&i| ok(i)).count()
}

// Criteria 1-4

struct Computed {
    kt: LaurentPoly,
    conway: LaurentPoly,
    elapsed: Duration,
}

fn compute(ds: &FusionDataset) -> Result<Computed, String> {
    let opts = EvalOptions::default();
    let start = Instant::now();
    let kt = knots::evaluate(&knots::builtin_program("kt").unwrap(), "kt", ds, &opts).map_err(|e| e.to_string())?;
    let conway = knots::evaluate(&knots::builtin_program("conway").unwrap(), "conway", ds, &opts).map_err(|e| e.to_string())?;
    Ok(Computed { kt: kt.polynomial, conway: conway.polynomial, elapsed: start.elapsed() })
}

fn dataset_criteria(lines: &mut Vec<Line>) {
    const T1: &str = "golden reproduction";
    const T2: &str = "difference factorization";
    const T3: &str = "specializations";
    const T4: &str = "q-inversion symmetry";
    let Ok(path) = std::env::var("SIXJ_DATASET") else {
        let why = "no fusion dataset; set SIXJ_DATASET";
        for (id, t) in [("1", T1), ("2", T2), ("3", T3), ("4", T4)] {
            lines.push(Line::skipped(id, t, why));
        }
        return;
    };
    let computed =
        fusiondata::load(std::path::Path::new(&path), &LoadOptions::default()).map_err(|e| e.to_string()).and_then(|ds| compute(&ds));
    let c = match computed {
        Ok(c) => c,
        Err(e) => {
            for (id, t) in [("1", T1), ("2", T2), ("3", T3), ("4", T4)] {
                lines.push(Line::new(id, t, false, format!("evaluation failed: {e}")));
            }
            return;
        }
    };
    let kt_ref = golden::golden(golden::KINOSHITA_TERASAKA);
    let c_ref = golden::golden(golden::CONWAY);
    let exact = c.kt == kt_ref && c.conway == c_ref;
    let fast = c.elapsed < TIME_LIMIT;
    let mut detail = format!("exact match {exact}, {:.1} s of {} s", c.elapsed.as_secs_f64(), TIME_LIMIT.as_secs());
    if !exact {
        if let Some(cal) = knots::Calibration::fit(&c.kt, &kt_ref) {
            detail += &format!("; calibrated ({cal}) conway match {}, not counted", cal.apply(&c.conway) == c_ref);
        }
    }
    lines.push(Line::new("1", T1, exact && fast, detail));

    let d = &c.kt - &c.conway;
    lines.push(Line::new("2", T2, d == golden::golden(golden::DIFFERENCE_FACTORED), "exact"));

    let jones = golden::golden(golden::JONES);
    let j = c.kt.substitute_a(2) == jones && c.conway.substitute_a(2) == jones;
    let z = d.substitute_a(3).is_zero();
    let f4 = d.substitute_a(4) == golden::golden(golden::SL4_DIFFERENCE_FACTORED);
    lines.push(Line::new("3", T3, j && z && f4, format!("a=q^2 jones {j}, a=q^3 zero {z}, a=q^4 factorization {f4}")));

    let sym = c.kt.invert_q() == c.kt && c.conway.invert_q() == c.conway;
    lines.push(Line::new("4", T4, sym, "exact"));
}

// Criterion 5

/// Flips the sign of one nonzero entry; unitarity must then name its column.
fn corrupt(ds: &FusionDataset) -> (FusionDataset, FusionKey) {
    let mut bad = ds.clone();
    let (key, value) = ds.entries().find(|(_, v)| !v.is_zero()).map(|(k, v)| (k.clone(), v.clone())).unwrap();
    bad.set(key.clone(), value.neg());
    (bad, key)
}

fn validators(ds: &FusionDataset, eig: &dyn BraidingEigenvalues) -> (bool, bool, usize) {
    let u = fusiondata::validate_unitarity(ds).unwrap();
    let b = fusiondata::validate_backcoupling(ds, eig).unwrap();
    (u.passed(), b.passed(), u.frames.len())
}

fn criterion_5(lines: &mut Vec<Line>) {
    let mut ok = true;
    let mut notes = Vec::new();
    let models: Vec<(&str, SyntheticModel)> = vec![
        ("toy", SyntheticModel::toy(SEED, false)),
        ("toy commuting", SyntheticModel::toy(SEED, true)),
        ("full", SyntheticModel::full(SEED, false)),
    ];
    for (name, m) in &models {
        let (u, b, frames) = validators(&m.dataset, &m.eigenvalues);
        ok &= u && b;
        notes.push(format!("{name}: unitarity {u} and backcoupling {b} on {frames} frames"));
        let (bad, key) = corrupt(&m.dataset);
        let report = fusiondata::validate_unitarity(&bad).unwrap();
        let named = report
            .frames
            .iter()
            .filter(|f| f.frame == key.frame)
            .flat_map(|f| &f.violations)
            .any(|v| v.column == key.middle || v.other == key.middle);
        ok &= !report.passed() && named;
        notes.push(format!("{name} corrupted: detected {}, column {} named {named}", !report.passed(), key.middle));
    }
    if let Ok(path) = std::env::var("SIXJ_DATASET") {
        match fusiondata::load(std::path::Path::new(&path), &LoadOptions::default()) {
            Ok(ds) => {
                let eig = CasimirEigenvalues::new(ds.table().clone());
                let (u, b, frames) = validators(&ds, &eig);
                ok &= u && b;
                notes.push(format!("dataset: unitarity {u} and backcoupling {b} on {frames} frames"));
            }
            Err(e) => {
                ok = false;
                notes.push(format!("dataset: {e}"));
            }
        }
    } else {
        notes.push("synthetic data only".into());
    }
    lines.push(Line::new("5", "dataset validators", ok, notes.join("; ")));
}

// Criterion 6

fn criterion_6(lines: &mut Vec<Line>, rng: &mut StdRng) {
    let t = ChannelTable::builtin();
    let r = color();
    let alt = Frame::alternating(&r);
    let mf = Frame::new(r.clone(), r.conj(), r.conj(), r);
    let keys = alt.side_basis(&t).unwrap();

    let inv = count(STATE_CASES, |_| {
        let s = random_state(rng, &alt, &keys);
        let x = blocks::mutate_x(&blocks::mutate_x(&s, &t).unwrap(), &t).unwrap();
        let y = blocks::mutate_y(&blocks::mutate_y(&s, &t).unwrap(), &t).unwrap();
        let z = blocks::mutate_z(&blocks::mutate_z(&s, &t).unwrap(), &t).unwrap();
        x == s && y == s && z == s
    });
    let a = Line::new("6a", "mutations are involutions", inv == STATE_CASES, format!("{inv}/{STATE_CASES} states"));

    let free: Vec<BasisKey> = keys.iter().filter(|k| t.multiplicity(alt.label(1), alt.label(2), &k.channel) == 1).cloned().collect();
    let id = count(STATE_CASES, |_| {
        let s = random_state(rng, &alt, &free);
        [blocks::mutate_x, blocks::mutate_y, blocks::mutate_z].iter().all(|f| f(&s, &t).unwrap() == s)
    });
    let b = Line::new("6b", "identity on multiplicity-free states", id == STATE_CASES, format!("{id}/{STATE_CASES} states"));

    let m = SyntheticModel::toy(SEED, false);
    let toy = toy_table();
    let toy_keys = alt.side_basis(&toy).unwrap();
    let same = count(STATE_CASES, |_| {
        let s = random_state(rng, &alt, &toy_keys);
        blocks::mutate_y_braided(&s, &m.dataset, &m.eigenvalues).unwrap() == blocks::mutate_y(&s, &toy).unwrap()
    });
    let c = Line::new(
        "6c",
        "closed-form mutate_y equals the braid word",
        same == STATE_CASES,
        format!("{same}/{STATE_CASES} states; real q-independent data make the word conjugate to mutate_x, whose trace differs from the index swap"),
    );

    let mf_keys = mf.side_basis(&t).unwrap();
    let td = count(STATE_CASES, |_| {
        let f = random_state(rng, &mf, &mf_keys);
        let g = random_state(rng, &mf, &mf_keys);
        let lhs = blocks::tangle_difference(&f, &g, &t).unwrap();
        let rhs = blocks::cap(&g, &f).unwrap().sub(&blocks::cap(&g, &blocks::mutate_y(&f, &t).unwrap()).unwrap());
        lhs == rhs
    });
    let d = Line::new("6d", "tangle_difference equals the cap difference", td == STATE_CASES, format!("{td}/{STATE_CASES} pairs"));

    let subs = [a, b, c, d];
    let ok = subs.iter().all(|l| l.status == Status::Pass);
    let failed: Vec<&str> = subs.iter().filter(|l| l.status == Status::Fail).map(|l| l.id).collect();
    let detail = if ok { "all sub-items".to_string() } else { format!("failing: {}", failed.join(", ")) };
    lines.push(Line::new("6", "mutation mechanics", ok, detail));
    lines.extend(subs);
}

// Criterion 7

fn criterion_7(lines: &mut Vec<Line>) {
    let r = color();
    let dim = quantum_dimension(&r);
    let m = SyntheticModel::full(SEED, false);
    let opts = EvalOptions { threads: None, eigenvalues: Some(std::sync::Arc::new(m.eigenvalues.clone())) };
    let unknot = knots::evaluate(&knots::builtin_program("unknot").unwrap(), "unknot", &m.dataset, &opts).unwrap();
    let unk = unknot.polynomial.is_one() && unknot.unnormalized == dim;
    let mut notes = vec![format!("unknot P = {}, W = dim_q {unk}", unknot.polynomial)];
    let mut ok = unk;
    for (n, expected) in CLASSICAL_DIMS {
        let at_n = dim.substitute_a(n).lower().map(|p| p.eval_at_one());
        let hit = at_n.as_ref().ok() == Some(&BigRational::from_integer(expected.into()));
        ok &= hit;
        notes.push(format!("N={n}: {}", at_n.map(|v| v.to_string()).unwrap_or_else(|e| e.to_string())));
    }
    lines.push(Line::new("7", "normalization", ok, notes.join(", ")));
}

// Criterion 8

fn criterion_8(lines: &mut Vec<Line>, rng: &mut StdRng) {
    let ring = count(KERNEL_CASES, |_| {
        let (x, y, z) = (random_poly(rng), random_poly(rng), random_poly(rng));
        &(&x + &y) + &z == &x + &(&y + &z)
            && &x + &y == &y + &x
            && &(&x * &y) * &z == &x * &(&y * &z)
            && &x * &y == &y * &x
            && &x * &(&y + &z) == &(&x * &y) + &(&x * &z)
            && &x + &-&x == LaurentPoly::zero()
            && &x * &LaurentPoly::one() == x
    });
    let div = count(KERNEL_CASES, |_| {
        let (x, y) = (random_poly(rng), random_poly(rng));
        y.is_zero() || (&x * &y).divide_exact(&y).ok() == Some(x)
    });
    let subst = count(KERNEL_CASES, |_| {
        let (x, y) = (random_poly(rng), random_poly(rng));
        let n = rng.gen_range(-6..=6);
        (&x * &y).substitute_a(n) == &x.substitute_a(n) * &y.substitute_a(n)
            && (&x + &y).substitute_a(n) == &x.substitute_a(n) + &y.substitute_a(n)
            && (&x * &y).invert_q() == &x.invert_q() * &y.invert_q()
    });
    let ok = ring == KERNEL_CASES && div == KERNEL_CASES && subst == KERNEL_CASES;
    let detail = format!("ring axioms {ring}, exact division {div}, substitution {subst} of {KERNEL_CASES} each");
    lines.push(Line::new("8", "polynomial kernel", ok, detail));
}

fn main() -> ExitCode {
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut lines = Vec::new();
    dataset_criteria(&mut lines);
    criterion_5(&mut lines);
    criterion_6(&mut lines, &mut rng);
    criterion_7(&mut lines);
    criterion_8(&mut lines, &mut rng);

    for l in &lines {
        l.print();
    }
    let top = lines.iter().filter(|l| l.id.len() == 1);
    let (mut pass, mut fail, mut skip) = (0, 0, 0);
    for l in top {
        match l.status {
            Status::Pass => pass += 1,
            Status::Fail => fail += 1,
            Status::Skipped => skip += 1,
        }
    }
    let unexpected: Vec<&str> =
        lines.iter().filter(|l| l.status == Status::Fail && l.id.len() > 1 && !KNOWN_RED.contains(&l.id)).map(|l| l.id).collect();
    let top_unexpected: Vec<&str> = lines
        .iter()
        .filter(|l| l.status == Status::Fail && l.id.len() == 1)
        .filter(|l| {
            !lines.iter().any(|s| s.id.len() > 1 && s.id.starts_with(l.id) && KNOWN_RED.contains(&s.id) && s.status == Status::Fail)
        })
        .map(|l| l.id)
        .collect();
    println!("acceptance: {pass} passed, {fail} failed, {skip} skipped; known red: {}", KNOWN_RED.join(", "));
    if unexpected.is_empty() && top_unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {}", unexpected.iter().chain(&top_unexpected).copied().collect::<Vec<_>>().join(", "));
        ExitCode::FAILURE
    }
}
