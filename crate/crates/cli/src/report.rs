use std::collections::BTreeMap;
use std::fmt::{Display, Write as _};

use serde::Serialize;
use serde_json::Value;

use knotblocks::fusiondata::{BackcouplingReport, UnitarityReport};

#[derive(Serialize)]
pub struct Violation {
    pub identity: &'static str,
    pub frame: String,
    pub key: String,
    pub detail: String,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    None,
    Text(String),
    Validation { unitarity: bool, frames: usize, backcoupling: bool, identities: usize, violations: Vec<Violation> },
    Polynomial { text: String, color: String, normalization: String },
    Difference { text: String, check: Option<bool> },
}

impl Outcome {
    pub fn validation(u: &UnitarityReport, b: &BackcouplingReport) -> Outcome {
        let mut violations = Vec::new();
        for f in &u.frames {
            if f.rows != f.columns {
                violations.push(Violation {
                    identity: "unitarity",
                    frame: f.frame.to_string(),
                    key: String::new(),
                    detail: format!("{} rows, {} columns", f.rows, f.columns),
                });
            }
            for v in &f.violations {
                violations.push(Violation {
                    identity: "unitarity",
                    frame: f.frame.to_string(),
                    key: format!("{} . {}", v.column, v.other),
                    detail: v.value.to_expr(),
                });
            }
        }
        for v in &b.violations {
            violations.push(Violation {
                identity: "backcoupling",
                frame: String::new(),
                key: format!("{} / {}", v.side, v.middle),
                detail: format!("lhs {} rhs {}", v.lhs.to_expr(), v.rhs.to_expr()),
            });
        }
        Outcome::Validation { unitarity: u.passed(), frames: u.frames.len(), backcoupling: b.passed(), identities: b.checked, violations }
    }
}

#[derive(Serialize)]
pub struct RunReport {
    pub command: &'static str,
    pub inputs: BTreeMap<&'static str, Value>,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
    pub failed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl RunReport {
    pub fn new(command: &'static str) -> Self {
        RunReport { command, inputs: BTreeMap::new(), outcome: Outcome::None, warning: None, failed: false, elapsed_ms: None }
    }

    pub fn input(&mut self, key: &'static str, value: impl Display) {
        let s = value.to_string();
        let v = match s.parse::<i64>() {
            Ok(n) => Value::from(n),
            Err(_) if s == "true" || s == "false" => Value::from(s == "true"),
            Err(_) => Value::from(s),
        };
        self.inputs.insert(key, v);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match &self.outcome {
            Outcome::None => {}
            Outcome::Text(t) => out.push_str(t),
            Outcome::Validation { unitarity, frames, backcoupling, identities, violations } => {
                let verdict = |ok: bool| if ok { "PASS" } else { "FAIL" };
                writeln!(out, "unitarity: {} (all {} frames)", verdict(*unitarity), frames).unwrap();
                for v in violations.iter().filter(|v| v.identity == "unitarity") {
                    writeln!(out, "  {} {}: {}", v.frame, v.key, v.detail).unwrap();
                }
                writeln!(out, "backcoupling: {} ({} identities)", verdict(*backcoupling), identities).unwrap();
                for v in violations.iter().filter(|v| v.identity == "backcoupling") {
                    writeln!(out, "  {}: {}", v.key, v.detail).unwrap();
                }
            }
            Outcome::Polynomial { text, .. } => writeln!(out, "{text}").unwrap(),
            Outcome::Difference { text, check } => {
                writeln!(out, "{text}").unwrap();
                if let Some(ok) = check {
                    writeln!(out, "check-factored: {}", if *ok { "PASS" } else { "FAIL" }).unwrap();
                }
            }
        }
        out
    }
}
