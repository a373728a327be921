//! The text format describing a synthesis problem.
//!
//! ```text
//! # three inputs, two outputs
//! vars 3
//! out F1 = 0,2,4,7
//! out F2 = 0,2,3,4
//! set pop 300
//! ```
//!
//! `vars` comes first and fixes the input count. Each `out` line names
//! an output and lists the input rows (minterm indices, most
//! significant variable first) where it is 1; an empty list is the
//! constant-0 function. `set key value` lines carry defaults for the
//! command line, which can still override them. `#` starts a comment
//! anywhere on a line.

use crate::ga::OutputTarget;
use crate::table::{TableError, TruthTable, MAX_VARS};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ProblemError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("missing a `vars` declaration")]
    MissingVars,
    #[error("no outputs declared")]
    NoOutputs,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputSpec {
    pub name: String,
    pub minterms: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitSpec {
    pub vars: u8,
    pub outputs: Vec<OutputSpec>,
    /// `set` lines in file order; later entries override earlier ones.
    pub settings: Vec<(String, String)>,
}

impl CircuitSpec {
    pub fn parse(text: &str) -> Result<CircuitSpec, ProblemError> {
        let mut vars: Option<u8> = None;
        let mut outputs: Vec<OutputSpec> = Vec::new();
        let mut settings: Vec<(String, String)> = Vec::new();

        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let err = |message: String| ProblemError::Line { line: line_no, message };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (word, rest) = match line.split_once(char::is_whitespace) {
                Some((w, r)) => (w, r.trim()),
                None => (line, ""),
            };
            match word {
                "vars" => {
                    if vars.is_some() {
                        return Err(err("`vars` declared twice".into()));
                    }
                    let v: u8 = rest
                        .parse()
                        .map_err(|_| err(format!("bad variable count {rest:?}")))?;
                    if v == 0 || v > MAX_VARS {
                        return Err(err(format!("variable count must be 1..={MAX_VARS}, got {v}")));
                    }
                    vars = Some(v);
                }
                "out" => {
                    let v = vars.ok_or_else(|| err("`out` before `vars`".into()))?;
                    let (name, list) = rest
                        .split_once('=')
                        .ok_or_else(|| err("expected `out NAME = minterms`".into()))?;
                    let name = name.trim();
                    if name.is_empty() || name.contains(char::is_whitespace) {
                        return Err(err(format!("bad output name {name:?}")));
                    }
                    if outputs.iter().any(|o| o.name == name) {
                        return Err(err(format!("output {name:?} declared twice")));
                    }
                    let mut minterms = Vec::new();
                    for part in list.split(',') {
                        let part = part.trim();
                        if part.is_empty() {
                            continue;
                        }
                        let m: u64 =
                            part.parse().map_err(|_| err(format!("bad minterm {part:?}")))?;
                        if m >= 1u64 << v {
                            return Err(err(format!(
                                "minterm {m} out of range for {v} variable(s)"
                            )));
                        }
                        minterms.push(m);
                    }
                    outputs.push(OutputSpec { name: name.to_string(), minterms });
                }
                "set" => {
                    let (key, value) = match rest.split_once(char::is_whitespace) {
                        Some((k, v)) if !v.trim().is_empty() => (k, v.trim()),
                        _ => return Err(err("expected `set key value`".into())),
                    };
                    settings.push((key.to_string(), value.to_string()));
                }
                other => return Err(err(format!("unknown directive {other:?}"))),
            }
        }

        let vars = vars.ok_or(ProblemError::MissingVars)?;
        if outputs.is_empty() {
            return Err(ProblemError::NoOutputs);
        }
        Ok(CircuitSpec { vars, outputs, settings })
    }

    /// Builder for problems constructed in code.
    pub fn new(vars: u8, outputs: &[(&str, &[u64])]) -> CircuitSpec {
        CircuitSpec {
            vars,
            outputs: outputs
                .iter()
                .map(|(name, m)| OutputSpec { name: name.to_string(), minterms: m.to_vec() })
                .collect(),
            settings: Vec::new(),
        }
    }

    pub fn tables(&self) -> Result<Vec<TruthTable>, TableError> {
        self.outputs
            .iter()
            .map(|o| TruthTable::from_minterms(self.vars, &o.minterms))
            .collect()
    }

    pub fn targets(&self) -> Result<Vec<OutputTarget>, TableError> {
        self.outputs
            .iter()
            .map(|o| {
                Ok(OutputTarget {
                    name: o.name.clone(),
                    table: TruthTable::from_minterms(self.vars, &o.minterms)?,
                })
            })
            .collect()
    }
}
