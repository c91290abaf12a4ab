//! Line format, version 1.
//!
//! ```text
//! VERSION 1
//! COLOR (21;0)
//! CHANNELS (21;0) (0;21) ; (0;0) + ; (1;1) + -
//! FRAME (21;0) (0;21) (21;0) (0;21)
//! PERMUTE <R1> <R2> <R3> <R4> ; <label> ; <p0> <p1> ..
//! SIXJ <R1> <R2> <R3> <R4> ; <t>#<r3>,<r4> ; <s>#<r1>,<r2> ; <value>
//! ```
//!
//! `#` starts a comment line. `CHANNELS` lines replace the builtin `[2,1]` table and must
//! precede all `SIXJ` lines. `PERMUTE` maps stored multiplicity index `i` of `label` to
//! `p_i` in every slot of that frame carrying `label`; it is applied after reading.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::laurent::{parse_surd, Surd};
use crate::reptheory::{ChannelTable, RepLabel};

use super::{BasisKey, Frame, FusionDataset, FusionError, FusionKey, Result};

type Rescale = Arc<dyn Fn(&FusionKey, &Surd) -> Surd + Send + Sync>;

#[derive(Clone, Default)]
pub struct LoadOptions {
    /// Fill `conj(frame)` from `frame` by conjugating every label, for frames absent
    /// from the file.
    pub derive_conjugate_frames: bool,
    /// Applied to every stored value after reading, e.g. to change vertex normalization.
    pub rescale: Option<Rescale>,
}

impl std::fmt::Debug for LoadOptions {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LoadOptions")
            .field("derive_conjugate_frames", &self.derive_conjugate_frames)
            .field("rescale", &self.rescale.is_some())
            .finish()
    }
}

struct Line<'a> {
    no: usize,
    text: &'a str,
}

impl Line<'_> {
    fn err<T>(&self, col: usize, msg: impl Into<String>) -> Result<T> {
        Err(FusionError::Parse { line: self.no, col: col + 1, message: msg.into() })
    }
}

/// Splits on `sep` outside parentheses, keeping byte offsets.
fn split_top(s: &str, base: usize, sep: fn(char) -> bool) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ if depth == 0 && sep(c) => {
                out.push((base + start, &s[start..i]));
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push((base + start, &s[start..]));
    out.into_iter()
        .map(|(o, t)| {
            let lead = t.len() - t.trim_start().len();
            (o + lead, t.trim())
        })
        .filter(|(_, t)| !t.is_empty() || sep(';'))
        .collect()
}

fn fields(s: &str, base: usize) -> Vec<(usize, &str)> {
    split_top(s, base, |c| c == ';')
}

fn words(s: &str, base: usize) -> Vec<(usize, &str)> {
    split_top(s, base, char::is_whitespace).into_iter().filter(|(_, t)| !t.is_empty()).collect()
}

fn parse_label(line: &Line, col: usize, s: &str) -> Result<RepLabel> {
    s.parse().or_else(|e| line.err(col, format!("{e}")))
}

fn parse_frame(line: &Line, col: usize, s: &str) -> Result<Frame> {
    let ws = words(s, col);
    if ws.len() != 4 {
        return line.err(col, format!("expected four frame labels, found {}", ws.len()));
    }
    let mut labels = Vec::with_capacity(4);
    for (c, w) in ws {
        labels.push(parse_label(line, c, w)?);
    }
    let [a, b, c, d]: [RepLabel; 4] = labels.try_into().unwrap();
    Ok(Frame::new(a, b, c, d))
}

fn parse_key(line: &Line, col: usize, s: &str) -> Result<BasisKey> {
    let Some(hash) = s.rfind('#') else {
        return line.err(col, "expected <label>#<r>,<r>");
    };
    let label = parse_label(line, col, s[..hash].trim())?;
    let rs = &s[hash + 1..];
    let Some((a, b)) = rs.split_once(',') else {
        return line.err(col + hash + 1, "expected two multiplicity indices");
    };
    let idx = |t: &str, off: usize| -> Result<u8> {
        t.trim().parse::<u8>().or_else(|_| line.err(col + hash + 1 + off, format!("bad index '{}'", t.trim())))
    };
    Ok(BasisKey::new(label, idx(a, 0)?, idx(b, a.len() + 1)?))
}

pub fn load(path: &std::path::Path, opts: &LoadOptions) -> Result<FusionDataset> {
    let text = std::fs::read_to_string(path).map_err(|source| FusionError::Io { path: path.display().to_string(), source })?;
    parse_dataset(&text, opts)
}

pub fn parse_dataset(text: &str, opts: &LoadOptions) -> Result<FusionDataset> {
    let mut version_seen = false;
    let mut color: RepLabel = "(21;0)".parse().unwrap();
    let mut custom: Option<ChannelTable> = None;
    let mut data: Option<FusionDataset> = None;
    let mut declared: Vec<Frame> = Vec::new();
    let mut permutes: Vec<(Frame, RepLabel, Vec<u8>)> = Vec::new();
    let mut key_lines: BTreeMap<FusionKey, usize> = BTreeMap::new();

    for (i, raw) in text.lines().enumerate() {
        let line = Line { no: i + 1, text: raw };
        let t = raw.trim_start();
        let indent = raw.len() - t.len();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let (kw, rest) = t.split_once(char::is_whitespace).unwrap_or((t, ""));
        let rest_col = indent + kw.len() + 1;
        if !version_seen {
            if kw != "VERSION" {
                return line.err(indent, "file must start with VERSION");
            }
            if rest.trim() != "1" {
                return Err(FusionError::UnsupportedVersion(rest.trim().to_string()));
            }
            version_seen = true;
            continue;
        }
        match kw {
            "COLOR" => {
                if data.is_some() {
                    return line.err(indent, "COLOR must precede SIXJ records");
                }
                color = parse_label(&line, rest_col, rest.trim())?;
            }
            "CHANNELS" => {
                if data.is_some() {
                    return line.err(indent, "CHANNELS must precede SIXJ records");
                }
                let fs = fields(rest, rest_col);
                let pair = words(fs[0].1, fs[0].0);
                if pair.len() != 2 {
                    return line.err(fs[0].0, "expected two labels");
                }
                let ri = parse_label(&line, pair[0].0, pair[0].1)?;
                let rj = parse_label(&line, pair[1].0, pair[1].1)?;
                let table = custom.get_or_insert_with(ChannelTable::new);
                for &(c, f) in &fs[1..] {
                    let ws = words(f, c);
                    if ws.len() < 2 {
                        return line.err(c, "expected <label> <phase>..");
                    }
                    let label = parse_label(&line, ws[0].0, ws[0].1)?;
                    let mut phases = Vec::new();
                    for (pc, p) in &ws[1..] {
                        phases.push(match *p {
                            "+" | "+1" => 1,
                            "-" | "-1" => -1,
                            _ => return line.err(*pc, format!("bad phase '{p}'")),
                        });
                    }
                    table.push(&ri, &rj, label, &phases);
                }
            }
            "FRAME" => declared.push(parse_frame(&line, rest_col, rest)?),
            "PERMUTE" => {
                let fs = fields(rest, rest_col);
                if fs.len() != 3 {
                    return line.err(rest_col, "expected <frame> ; <label> ; <permutation>");
                }
                let frame = parse_frame(&line, fs[0].0, fs[0].1)?;
                let label = parse_label(&line, fs[1].0, fs[1].1)?;
                let mut perm = Vec::new();
                for (c, w) in words(fs[2].1, fs[2].0) {
                    perm.push(w.parse::<u8>().or_else(|_| line.err(c, "bad index"))?);
                }
                let mut sorted = perm.clone();
                sorted.sort();
                if sorted != (0..perm.len() as u8).collect::<Vec<_>>() {
                    return line.err(fs[2].0, "not a permutation");
                }
                permutes.push((frame, label, perm));
            }
            "SIXJ" => {
                let ds =
                    data.get_or_insert_with(|| FusionDataset::new(custom.clone().unwrap_or_else(ChannelTable::builtin), color.clone()));
                let fs = fields(rest, rest_col);
                if fs.len() != 4 {
                    return line.err(rest_col, format!("expected 4 ';'-separated fields, found {}", fs.len()));
                }
                let frame = parse_frame(&line, fs[0].0, fs[0].1)?;
                let side = parse_key(&line, fs[1].0, fs[1].1)?;
                let middle = parse_key(&line, fs[2].0, fs[2].1)?;
                let value = parse_surd(fs[3].1).or_else(|e| match e {
                    crate::laurent::LaurentError::Parse { offset, message } => line.err(fs[3].0 + offset, message),
                    other => line.err(fs[3].0, other.to_string()),
                })?;
                let key = FusionKey { frame, side, middle };
                if !ds.is_admissible(&key)? {
                    return Err(FusionError::InadmissibleKey { line: line.no, key: key.to_string() });
                }
                if key_lines.insert(key.clone(), line.no).is_some() {
                    return Err(FusionError::DuplicateKey { line: line.no, key: key.to_string() });
                }
                ds.insert(key, value)?;
            }
            other => return line.err(indent, format!("unknown record '{other}'")),
        }
        let _ = line.text;
    }
    if !version_seen {
        return Err(FusionError::Parse { line: 1, col: 1, message: "missing VERSION".into() });
    }
    let mut ds = data.unwrap_or_else(|| FusionDataset::new(custom.unwrap_or_else(ChannelTable::builtin), color));
    for f in declared {
        ds.declare_frame(f);
    }
    for (frame, label, perm) in permutes {
        apply_permutation(&mut ds, &frame, &label, &perm);
    }
    if opts.derive_conjugate_frames {
        derive_conjugates(&mut ds);
    }
    if let Some(f) = &opts.rescale {
        for (k, v) in ds.entries_mut().iter_mut() {
            *v = f(k, v);
        }
    }
    Ok(ds)
}

fn apply_permutation(ds: &mut FusionDataset, frame: &Frame, label: &RepLabel, perm: &[u8]) {
    let map = |k: &BasisKey| -> BasisKey {
        if &k.channel != label {
            return k.clone();
        }
        let p = |r: u8| perm.get(r as usize).copied().unwrap_or(r);
        BasisKey::new(k.channel.clone(), p(k.left), p(k.right))
    };
    let old = std::mem::take(ds.entries_mut());
    for (k, v) in old {
        let k = if &k.frame == frame { FusionKey { frame: k.frame.clone(), side: map(&k.side), middle: map(&k.middle) } } else { k };
        ds.entries_mut().insert(k, v);
    }
}

fn derive_conjugates(ds: &mut FusionDataset) {
    let frames: Vec<Frame> = ds.frames().cloned().collect();
    for f in frames {
        let c = f.conj();
        if ds.has_frame(&c) {
            continue;
        }
        let add: Vec<(FusionKey, Surd)> = ds
            .entries()
            .filter(|(k, _)| k.frame == f)
            .map(|(k, v)| {
                let conj_key = |b: &BasisKey| BasisKey::new(b.channel.conj(), b.left, b.right);
                (FusionKey { frame: c.clone(), side: conj_key(&k.side), middle: conj_key(&k.middle) }, v.clone())
            })
            .collect();
        ds.declare_frame(c);
        for (k, v) in add {
            ds.set(k, v);
        }
    }
}

pub fn format_dataset(ds: &FusionDataset) -> String {
    let mut out = String::from("VERSION 1\n");
    writeln!(out, "COLOR {}", ds.color()).unwrap();
    if ds.table() != &ChannelTable::builtin() {
        for (ri, rj) in ds.table().pairs() {
            write!(out, "CHANNELS {ri} {rj}").unwrap();
            let entries = ds.table().channels(ri, rj).unwrap();
            for label in ds.table().labels(ri, rj).unwrap() {
                write!(out, " ; {label}").unwrap();
                for e in entries.iter().filter(|e| e.channel.label == label) {
                    out.push_str(if e.phase > 0 { " +" } else { " -" });
                }
            }
            out.push('\n');
        }
    }
    for f in ds.frames() {
        writeln!(out, "FRAME {f}").unwrap();
    }
    for (k, v) in ds.entries() {
        writeln!(out, "SIXJ {} ; {} ; {} ; {}", k.frame, k.side, k.middle, v.to_expr()).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "\
VERSION 1
# two-channel toy
CHANNELS (1;0) (0;1) ; (0;0) + ; (1;1) +
CHANNELS (0;1) (1;0) ; (0;0) + ; (1;1) +
COLOR (1;0)
SIXJ (1;0) (0;1) (1;0) (0;1) ; (0;0)#0,0 ; (0;0)#0,0 ; 1/((a - a^-1)/(q - q^-1))
SIXJ (1;0) (0;1) (1;0) (0;1) ; (1;1)#0,0 ; (0;0)#0,0 ; sqrt(1 - 1/((a - a^-1)/(q - q^-1))^2)
";

    #[test]
    fn reads_custom_tables_and_values() {
        let ds = parse_dataset(SMALL, &LoadOptions::default()).unwrap();
        assert_eq!(ds.len(), 2);
        assert_eq!(ds.color().to_string(), "(1;0)");
        let again = parse_dataset(&format_dataset(&ds), &LoadOptions::default()).unwrap();
        assert_eq!(again.len(), 2);
        for (k, v) in ds.entries() {
            assert_eq!(again.get(k), Some(v), "{k}");
        }
    }

    #[test]
    fn reports_positions() {
        let bad = "VERSION 1\nSIXJ (21;0) (0;21) (21;0) ; (0;0)#0,0 ; (0;0)#0,0 ; 1\n";
        match parse_dataset(bad, &LoadOptions::default()) {
            Err(FusionError::Parse { line, col, .. }) => assert_eq!((line, col), (2, 6)),
            other => panic!("{other:?}"),
        }
        let bad = "VERSION 1\nSIXJ (21;0) (0;21) (21;0) (0;21) ; (0;0)#0,0 ; (0;0)#0,0 ; 1 + * q\n";
        match parse_dataset(bad, &LoadOptions::default()) {
            Err(FusionError::Parse { line, col, .. }) => assert_eq!((line, col), (2, 64)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_inadmissible_and_duplicate_keys() {
        let inad = "VERSION 1\nSIXJ (21;0) (0;21) (21;0) (0;21) ; (42;0)#0,0 ; (0;0)#0,0 ; 1\n";
        assert!(matches!(parse_dataset(inad, &LoadOptions::default()), Err(FusionError::InadmissibleKey { line: 2, .. })));
        let mult = "VERSION 1\nSIXJ (21;0) (0;21) (21;0) (0;21) ; (1;1)#2,0 ; (0;0)#0,0 ; 1\n";
        assert!(matches!(parse_dataset(mult, &LoadOptions::default()), Err(FusionError::InadmissibleKey { .. })));
        let dup = "VERSION 1\n\
SIXJ (21;0) (0;21) (21;0) (0;21) ; (0;0)#0,0 ; (0;0)#0,0 ; 1\n\
SIXJ (21;0) (0;21) (21;0) (0;21) ; (0;0)#0,0 ; (0;0)#0,0 ; 2\n";
        assert!(matches!(parse_dataset(dup, &LoadOptions::default()), Err(FusionError::DuplicateKey { line: 3, .. })));
        assert!(matches!(parse_dataset("VERSION 2\n", &LoadOptions::default()), Err(FusionError::UnsupportedVersion(_))));
    }

    #[test]
    fn permutation_and_conjugate_frames() {
        let text = "VERSION 1\n\
PERMUTE (21;0) (0;21) (21;0) (0;21) ; (1;1) ; 1 0\n\
SIXJ (21;0) (0;21) (21;0) (0;21) ; (1;1)#0,1 ; (0;0)#0,0 ; 5\n";
        let opts = LoadOptions { derive_conjugate_frames: true, ..Default::default() };
        let ds = parse_dataset(text, &opts).unwrap();
        let r: RepLabel = "(21;0)".parse().unwrap();
        let key = |f: Frame, ch: &str| FusionKey { frame: f, side: BasisKey::new(ch.parse().unwrap(), 1, 0), middle: BasisKey::singlet() };
        assert_eq!(ds.get(&key(Frame::alternating(&r), "(1;1)")), Some(&Surd::integer(5)));
        assert_eq!(ds.get(&key(Frame::alternating(&r).conj(), "(1;1)")), Some(&Surd::integer(5)));
    }
}
