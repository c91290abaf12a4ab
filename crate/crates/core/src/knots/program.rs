//! Quasi-plat evaluation programs, one instruction per line:
//!
//! ```text
//! COLOR (21;0)
//! BOUNDARY 3 FRAME R Rbar R Rbar
//! FLIP b3
//! FUSE b1 FRAME Rbar R R Rbar conj
//! BRAID b1 pos2 + pow-3
//! FUSE b1
//! CAP b1
//! CONTRACT b2 b3
//! ```
//!
//! `BOUNDARY n` emits legs numbered consecutively from `b1` across the program; leg `i`
//! of an `n`-boundary state starts on `|phi^(1)_{t; r_i, r_{i+1}}>`. Frame labels are
//! composite labels or `R` / `Rbar` for the declared color. `FUSE` changes basis with the
//! matrix of the leg's frame, or of the named frame after relabeling the leg to it; `conj`
//! conjugates the entries relative to the default (`a` forward, `a^*` backward). `FLIP`
//! swaps the two multiplicity indices of every key. `CAP` projects a side-basis leg on the
//! singlet. `CONTRACT` pairs two legs key by key.

use std::fmt;
use std::str::FromStr;

use crate::fusiondata::Frame;
use crate::reptheory::RepLabel;

use super::KnotsError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instruction {
    Boundary { n: usize, frame: Frame },
    Braid { leg: usize, position: usize, sign: i8, power: i32 },
    Fuse { leg: usize, frame: Option<Frame>, conj: bool },
    Flip { leg: usize },
    Cap { leg: usize },
    Contract { a: usize, b: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangleProgram {
    pub color: RepLabel,
    pub instructions: Vec<Instruction>,
}

fn ill(line: usize, message: impl Into<String>) -> KnotsError {
    KnotsError::IllFormed { line, message: message.into() }
}

fn parse_leg(line: usize, s: &str) -> Result<usize, KnotsError> {
    s.strip_prefix('b')
        .and_then(|n| n.parse::<usize>().ok())
        .filter(|&n| n > 0)
        .ok_or_else(|| ill(line, format!("expected a leg b<k>, found '{s}'")))
}

fn parse_frame_label(line: usize, s: &str, color: &RepLabel) -> Result<RepLabel, KnotsError> {
    match s {
        "R" => Ok(color.clone()),
        "Rbar" => Ok(color.conj()),
        _ => s.parse().map_err(|e| ill(line, format!("{e}"))),
    }
}

fn parse_frame(line: usize, ws: &[&str], color: &RepLabel) -> Result<Frame, KnotsError> {
    if ws.len() != 4 {
        return Err(ill(line, format!("a frame needs four labels, found {}", ws.len())));
    }
    let l: Vec<RepLabel> = ws.iter().map(|w| parse_frame_label(line, w, color)).collect::<Result<_, _>>()?;
    let [a, b, c, d]: [RepLabel; 4] = l.try_into().unwrap();
    Ok(Frame::new(a, b, c, d))
}

impl FromStr for TangleProgram {
    type Err = KnotsError;

    fn from_str(text: &str) -> Result<Self, KnotsError> {
        let mut color: RepLabel = "(21;0)".parse().unwrap();
        let mut instructions = Vec::new();
        let mut lines = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let no = i + 1;
            let t = raw.split('#').next().unwrap().trim();
            if t.is_empty() {
                continue;
            }
            let ws: Vec<&str> = t.split_whitespace().collect();
            let ins = match ws[0] {
                "COLOR" => {
                    if !instructions.is_empty() {
                        return Err(ill(no, "COLOR must come first"));
                    }
                    if ws.len() != 2 {
                        return Err(ill(no, "expected COLOR <label>"));
                    }
                    color = ws[1].parse().map_err(|e| ill(no, format!("{e}")))?;
                    continue;
                }
                "BOUNDARY" => {
                    let n = ws.get(1).and_then(|n| n.parse::<usize>().ok()).ok_or_else(|| ill(no, "expected BOUNDARY <n>"))?;
                    if n < 2 {
                        return Err(ill(no, "a boundary state needs n >= 2"));
                    }
                    if ws.get(2) != Some(&"FRAME") {
                        return Err(ill(no, "expected FRAME after the boundary count"));
                    }
                    Instruction::Boundary { n, frame: parse_frame(no, &ws[3..], &color)? }
                }
                "BRAID" => {
                    if ws.len() != 5 {
                        return Err(ill(no, "expected BRAID b<k> pos<i> <+|-> pow<m>"));
                    }
                    let leg = parse_leg(no, ws[1])?;
                    let position = ws[2]
                        .strip_prefix("pos")
                        .and_then(|p| p.parse::<usize>().ok())
                        .filter(|p| (1..=3).contains(p))
                        .ok_or_else(|| ill(no, format!("bad position '{}'", ws[2])))?;
                    let sign = match ws[3] {
                        "+" => 1,
                        "-" => -1,
                        s => return Err(ill(no, format!("bad sign '{s}'"))),
                    };
                    let power = ws[4]
                        .strip_prefix("pow")
                        .and_then(|p| p.parse::<i32>().ok())
                        .ok_or_else(|| ill(no, format!("bad power '{}'", ws[4])))?;
                    Instruction::Braid { leg, position, sign, power }
                }
                "FUSE" => {
                    let leg = parse_leg(no, ws.get(1).copied().unwrap_or(""))?;
                    let mut rest = &ws[2..];
                    let conj = rest.last() == Some(&"conj");
                    if conj {
                        rest = &rest[..rest.len() - 1];
                    }
                    let frame = match rest {
                        [] => None,
                        ["FRAME", labels @ ..] => Some(parse_frame(no, labels, &color)?),
                        _ => return Err(ill(no, "expected FUSE b<k> [FRAME <R1> <R2> <R3> <R4>] [conj]")),
                    };
                    Instruction::Fuse { leg, frame, conj }
                }
                "FLIP" | "CAP" => {
                    if ws.len() != 2 {
                        return Err(ill(no, format!("expected {} b<k>", ws[0])));
                    }
                    let leg = parse_leg(no, ws[1])?;
                    if ws[0] == "FLIP" {
                        Instruction::Flip { leg }
                    } else {
                        Instruction::Cap { leg }
                    }
                }
                "CONTRACT" => {
                    if ws.len() != 3 {
                        return Err(ill(no, "expected CONTRACT b<i> b<j>"));
                    }
                    Instruction::Contract { a: parse_leg(no, ws[1])?, b: parse_leg(no, ws[2])? }
                }
                kw => return Err(ill(no, format!("unknown instruction '{kw}'"))),
            };
            instructions.push(ins);
            lines.push(no);
        }
        let p = TangleProgram { color, instructions };
        p.check_lines(&lines)?;
        Ok(p)
    }
}

/// Where each leg was emitted and what has consumed it.
#[derive(Clone, Debug)]
pub(crate) struct LegInfo {
    pub boundary: usize,
    pub slot: usize,
}

impl TangleProgram {
    pub fn parse(text: &str) -> Result<Self, KnotsError> {
        text.parse()
    }

    /// Every leg is emitted before use, used after neither a cap nor a contraction, and
    /// eventually capped or contracted.
    pub fn check(&self) -> Result<(), KnotsError> {
        let lines: Vec<usize> = (1..=self.instructions.len()).collect();
        self.check_lines(&lines)
    }

    fn check_lines(&self, lines: &[usize]) -> Result<(), KnotsError> {
        let mut closed: Vec<bool> = Vec::new();
        for (ins, &no) in self.instructions.iter().zip(lines) {
            let open = |leg: usize| -> Result<(), KnotsError> {
                match closed.get(leg - 1) {
                    None => Err(ill(no, format!("leg b{leg} used before it is emitted"))),
                    Some(true) => Err(ill(no, format!("leg b{leg} used after it was closed"))),
                    Some(false) => Ok(()),
                }
            };
            match ins {
                Instruction::Boundary { n, .. } => closed.extend(std::iter::repeat_n(false, *n)),
                Instruction::Braid { leg, .. } | Instruction::Fuse { leg, .. } | Instruction::Flip { leg } => open(*leg)?,
                Instruction::Cap { leg } => {
                    open(*leg)?;
                    closed[leg - 1] = true;
                }
                Instruction::Contract { a, b } => {
                    if a == b {
                        return Err(ill(no, "a leg cannot be contracted with itself"));
                    }
                    open(*a)?;
                    open(*b)?;
                    closed[a - 1] = true;
                    closed[b - 1] = true;
                }
            }
        }
        if let Some(i) = closed.iter().position(|c| !c) {
            return Err(ill(lines.last().copied().unwrap_or(0), format!("leg b{} is never capped or contracted", i + 1)));
        }
        if closed.is_empty() {
            return Err(ill(0, "program emits no boundary"));
        }
        Ok(())
    }

    pub(crate) fn legs(&self) -> Vec<LegInfo> {
        let mut out = Vec::new();
        let mut b = 0;
        for ins in &self.instructions {
            if let Instruction::Boundary { n, .. } = ins {
                out.extend((0..*n).map(|slot| LegInfo { boundary: b, slot }));
                b += 1;
            }
        }
        out
    }

    pub(crate) fn boundaries(&self) -> Vec<(usize, &Frame)> {
        self.instructions
            .iter()
            .filter_map(|i| match i {
                Instruction::Boundary { n, frame } => Some((*n, frame)),
                _ => None,
            })
            .collect()
    }

    /// Positions of the instructions in which the two programs differ.
    pub fn diff(&self, other: &TangleProgram) -> Vec<usize> {
        let n = self.instructions.len().max(other.instructions.len());
        (0..n).filter(|&i| self.instructions.get(i) != other.instructions.get(i)).collect()
    }
}

struct FrameText<'a>(&'a Frame, &'a RepLabel);

impl fmt::Display for FrameText<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0 .0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if l == self.1 {
                write!(f, "R")?;
            } else if *l == self.1.conj() {
                write!(f, "Rbar")?;
            } else {
                write!(f, "{l}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for TangleProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "COLOR {}", self.color)?;
        for ins in &self.instructions {
            match ins {
                Instruction::Boundary { n, frame } => writeln!(f, "BOUNDARY {n} FRAME {}", FrameText(frame, &self.color))?,
                Instruction::Braid { leg, position, sign, power } => {
                    writeln!(f, "BRAID b{leg} pos{position} {} pow{power}", if *sign > 0 { '+' } else { '-' })?
                }
                Instruction::Fuse { leg, frame, conj } => {
                    write!(f, "FUSE b{leg}")?;
                    if let Some(fr) = frame {
                        write!(f, " FRAME {}", FrameText(fr, &self.color))?;
                    }
                    if *conj {
                        write!(f, " conj")?;
                    }
                    writeln!(f)?;
                }
                Instruction::Flip { leg } => writeln!(f, "FLIP b{leg}")?,
                Instruction::Cap { leg } => writeln!(f, "CAP b{leg}")?,
                Instruction::Contract { a, b } => writeln!(f, "CONTRACT b{a} b{b}")?,
            }
        }
        Ok(())
    }
}

const UNKNOT: &str = "\
COLOR (21;0)
BOUNDARY 2 FRAME R Rbar R Rbar
CAP b1
CAP b2
";

/// Shared by both knots; `{P1}` and `{P2}` are the two parallel-braid powers that differ.
const MUTANT_TEMPLATE: &str = "\
COLOR (21;0)
# boundary i: legs (i; r1 r2), (i; r2 r3), (i; r3 r1)
BOUNDARY 3 FRAME R Rbar R Rbar
# boundary j: legs (j; r6 r7), (j; r7 r8), (j; r8 r6)
BOUNDARY 3 FRAME R Rbar R Rbar
# boundary t: legs (t; r10 r11), (t; r11 r12), (t; r12 r10)
BOUNDARY 3 FRAME R Rbar R Rbar
FUSE b2 FRAME Rbar R R Rbar conj
BRAID b2 pos2 + pow{P1}
FUSE b2
CAP b2
FUSE b1 FRAME Rbar R R Rbar
BRAID b1 pos2 + pow{P2}
FUSE b1 conj
CAP b1
FLIP b4
FUSE b4 conj
BRAID b4 pos2 - pow-2
FUSE b4
CAP b4
FLIP b5
FUSE b7
CONTRACT b7 b5
FLIP b3
FUSE b3
CONTRACT b3 b6
FUSE b8 FRAME Rbar R R Rbar
BRAID b8 pos2 + pow3
FUSE b8
CAP b8
FUSE b9 FRAME Rbar R R Rbar conj
BRAID b9 pos2 + pow-2
FUSE b9 conj
CAP b9
";

/// `kt`, `conway` or `unknot`.
pub fn builtin_program(name: &str) -> Result<TangleProgram, KnotsError> {
    let text = match name {
        "unknot" => UNKNOT.to_string(),
        "kt" => MUTANT_TEMPLATE.replace("{P1}", "-3").replace("{P2}", "2"),
        "conway" => MUTANT_TEMPLATE.replace("{P1}", "2").replace("{P2}", "-3"),
        _ => return Err(KnotsError::UnknownName(name.to_string())),
    };
    text.parse()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_parse_and_round_trip() {
        for name in ["kt", "conway", "unknot"] {
            let p = builtin_program(name).unwrap();
            let again: TangleProgram = p.to_string().parse().unwrap();
            assert_eq!(again, p, "{name}");
        }
        assert!(matches!(builtin_program("trefoil"), Err(KnotsError::UnknownName(_))));
    }

    #[test]
    fn mutant_programs_differ_in_two_braid_powers() {
        let kt = builtin_program("kt").unwrap();
        let c = builtin_program("conway").unwrap();
        assert_eq!(kt.instructions.len(), c.instructions.len());
        let d = kt.diff(&c);
        assert_eq!(d.len(), 2);
        let powers = |p: &TangleProgram| -> Vec<i32> {
            d.iter()
                .map(|&i| match p.instructions[i] {
                    Instruction::Braid { sign: 1, power, .. } => power,
                    ref other => panic!("{other:?}"),
                })
                .collect()
        };
        assert_eq!(powers(&kt), vec![-3, 2]);
        assert_eq!(powers(&c), vec![2, -3]);
        assert_eq!(builtin_program("unknot").unwrap().instructions.len(), 3);
    }

    #[test]
    fn ill_formed_programs() {
        let cases = [
            ("BOUNDARY 2 FRAME R Rbar R Rbar\nCAP b1\n", 2, "never capped"),
            ("CAP b1\n", 1, "before it is emitted"),
            ("BOUNDARY 2 FRAME R Rbar R Rbar\nCAP b1\nCAP b1\nCAP b2\n", 3, "after it was closed"),
            ("BOUNDARY 2 FRAME R Rbar R Rbar\nCONTRACT b1 b1\n", 2, "itself"),
            ("BOUNDARY 2 FRAME R Rbar R\n", 1, "four labels"),
            ("BOUNDARY 2 FRAME R Rbar R Rbar\nBRAID b1 pos4 + pow1\n", 2, "bad position"),
            ("BOUNDARY 2 FRAME R Rbar R Rbar\nTWIST b1\n", 2, "unknown instruction"),
            ("BOUNDARY 1 FRAME R Rbar R Rbar\n", 1, "n >= 2"),
            ("", 0, "no boundary"),
        ];
        for (text, line, msg) in cases {
            match text.parse::<TangleProgram>() {
                Err(KnotsError::IllFormed { line: l, message }) => {
                    assert_eq!(l, line, "{text}");
                    assert!(message.contains(msg), "{message}");
                }
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn comments_and_explicit_labels() {
        let p: TangleProgram = "COLOR (1;0)  # fundamental\nBOUNDARY 2 FRAME (1;0) (0;1) R Rbar\nCONTRACT b1 b2 # pair\n".parse().unwrap();
        assert_eq!(p.color, "(1;0)".parse().unwrap());
        assert_eq!(p.to_string(), "COLOR (1;0)\nBOUNDARY 2 FRAME R Rbar R Rbar\nCONTRACT b1 b2\n");
    }
}
