//! The line-oriented specification file format.
//!
//! ```text
//! # comment
//! name: minepump
//! aps: p m h
//! dom: G((p && X(p)) -> X(X(!h)))
//! goal: G(m -> X(!p))
//! goal: G(h -> X(p))
//! bc: F(h && m)
//! ```
//!
//! `aps` declares the alphabet and must appear once, before any formula line.
//! At least one `goal` is required; commands that search additionally require
//! at least one `bc`. A `#` starts a comment anywhere on a line.

use std::path::Path;

use thiserror::Error;

use goalfix_core::ltl::{parse_with_alphabet, Alphabet, AlphabetError, Formula, ParseError};
use goalfix_core::objectives::{Specification, SpecificationError};

#[derive(Debug, Clone)]
pub struct SpecFile {
    pub name: Option<String>,
    pub alphabet: Alphabet,
    pub dom: Vec<Formula>,
    pub goals: Vec<Formula>,
    pub bcs: Vec<Formula>,
}

#[derive(Debug, Error)]
pub enum SpecFileError {
    #[error("line {line}: expected `key: value`")]
    MissingColon { line: usize },
    #[error("line {line}: unknown key `{key}` (expected name, aps, dom, goal, or bc)")]
    UnknownKey { line: usize, key: String },
    #[error("exactly one `aps:` line is required, before any formula")]
    MissingAps,
    #[error("line {line}: duplicate `aps:` declaration")]
    DuplicateAps { line: usize },
    #[error("line {line}: `aps:` must come before any formula line")]
    ApsAfterFormula { line: usize },
    #[error("invalid alphabet: {0}")]
    Alphabet(#[from] AlphabetError),
    #[error("line {line}: {source}")]
    Formula {
        line: usize,
        #[source]
        source: ParseError,
    },
    #[error(transparent)]
    Spec(#[from] SpecificationError),
}

impl SpecFile {
    pub fn parse(text: &str) -> Result<SpecFile, SpecFileError> {
        let mut name = None;
        let mut alphabet: Option<Alphabet> = None;
        let mut raw_formulas: Vec<(usize, &'static str, String)> = Vec::new();
        for (index, raw) in text.lines().enumerate() {
            let line = index + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once(':') else {
                return Err(SpecFileError::MissingColon { line });
            };
            let value = value.trim();
            match key.trim() {
                "name" => name = Some(value.to_owned()),
                "aps" => {
                    if alphabet.is_some() {
                        return Err(SpecFileError::DuplicateAps { line });
                    }
                    if !raw_formulas.is_empty() {
                        return Err(SpecFileError::ApsAfterFormula { line });
                    }
                    let names = value.split([' ', ',', '\t']).filter(|s| !s.is_empty());
                    alphabet = Some(Alphabet::new(names)?);
                }
                "dom" => raw_formulas.push((line, "dom", value.to_owned())),
                "goal" => raw_formulas.push((line, "goal", value.to_owned())),
                "bc" => raw_formulas.push((line, "bc", value.to_owned())),
                other => {
                    return Err(SpecFileError::UnknownKey {
                        line,
                        key: other.to_owned(),
                    })
                }
            }
        }
        let alphabet = alphabet.ok_or(SpecFileError::MissingAps)?;
        let mut dom = Vec::new();
        let mut goals = Vec::new();
        let mut bcs = Vec::new();
        for (line, kind, text) in raw_formulas {
            let formula = parse_with_alphabet(&text, &alphabet)
                .map_err(|source| SpecFileError::Formula { line, source })?;
            match kind {
                "dom" => dom.push(formula),
                "goal" => goals.push(formula),
                _ => bcs.push(formula),
            }
        }
        // surfaces the no-goals error early
        Specification::new(alphabet.clone(), dom.clone(), goals.clone())?;
        Ok(SpecFile {
            name,
            alphabet,
            dom,
            goals,
            bcs,
        })
    }

    pub fn load(path: &Path) -> Result<SpecFile, crate::CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            crate::CliError::Input(format!("cannot read {}: {e}", path.display()))
        })?;
        SpecFile::parse(&text)
            .map_err(|e| crate::CliError::Input(format!("{}: {e}", path.display())))
    }

    pub fn specification(&self) -> Specification {
        Specification::new(self.alphabet.clone(), self.dom.clone(), self.goals.clone())
            .expect("validated during parsing")
    }
}
