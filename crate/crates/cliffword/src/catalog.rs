//! File formats and rendering: the one-word-per-line basis format, the
//! structured (JSON) catalog format and the text tables.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::construct::min_length_4char;
use crate::equivalence::InvariantProfile;
use crate::error::Error as CoreError;
use crate::search::{ClassCatalog, ClassEntry};
use crate::word::{Alphabet, Character, Word, WordMatrix};

/// Errors from reading the text formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {col}: invalid character '{ch}'")]
    BadCharacter { line: usize, col: usize, ch: char },
    #[error("line {line}: word length {len} differs from {expected}")]
    RaggedRows {
        line: usize,
        len: usize,
        expected: usize,
    },
    #[error("no words found")]
    Empty,
    #[error("invalid word matrix: {0}")]
    Matrix(CoreError),
    #[error("invalid catalog: {0}")]
    Catalog(String),
}

/// Parse the basis format: one word per line, `#` comments and blank lines
/// ignored.
pub fn parse_basis(text: &str) -> Result<WordMatrix, ParseError> {
    let mut rows: Vec<Word> = Vec::new();
    let mut expected = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut letters = Vec::with_capacity(trimmed.len());
        for (col, ch) in trimmed.chars().enumerate() {
            match Character::from_char(ch) {
                Some(c) => letters.push(c),
                None => {
                    return Err(ParseError::BadCharacter {
                        line,
                        col: col + 1,
                        ch,
                    })
                }
            }
        }
        if !rows.is_empty() && letters.len() != expected {
            return Err(ParseError::RaggedRows {
                line,
                len: letters.len(),
                expected,
            });
        }
        expected = letters.len();
        rows.push(Word::new(&letters).map_err(ParseError::Matrix)?);
    }
    if rows.is_empty() {
        return Err(ParseError::Empty);
    }
    WordMatrix::new(rows).map_err(ParseError::Matrix)
}

/// One word per line, LF endings.
pub fn render_basis(matrix: &WordMatrix) -> String {
    let mut out = String::new();
    for w in matrix.rows() {
        out.push_str(&w.to_string());
        out.push('\n');
    }
    out
}

/// Serialized form of one catalog class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogClassFile {
    pub p: usize,
    pub representative: Vec<String>,
    pub invariants: InvariantProfile,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchParams {
    pub letters: usize,
    pub alphabet: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub search: SearchParams,
}

/// The structured catalog document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogFile {
    pub m: usize,
    pub alphabet: String,
    pub classes: Vec<CatalogClassFile>,
    pub provenance: Provenance,
}

impl From<&ClassCatalog> for CatalogFile {
    fn from(catalog: &ClassCatalog) -> CatalogFile {
        CatalogFile {
            m: catalog.m,
            alphabet: catalog.alphabet.to_string(),
            classes: catalog
                .classes
                .iter()
                .map(|c| CatalogClassFile {
                    p: c.p,
                    representative: c.representative.rows().iter().map(Word::to_string).collect(),
                    invariants: c.profile.clone(),
                })
                .collect(),
            provenance: Provenance {
                tool: "cliffword".to_string(),
                version: env!("CARGO_PKG_VERSION").to_string(),
                search: SearchParams {
                    letters: catalog.m,
                    alphabet: catalog.alphabet.to_string(),
                },
            },
        }
    }
}

fn alphabet_from_str(s: &str) -> Result<Alphabet, ParseError> {
    match s {
        "IXZ" => Ok(Alphabet::Three),
        "IXZA" => Ok(Alphabet::Four),
        other => Err(ParseError::Catalog(format!("unknown alphabet '{other}'"))),
    }
}

impl CatalogFile {
    pub fn into_catalog(self) -> Result<ClassCatalog, ParseError> {
        let alphabet = alphabet_from_str(&self.alphabet)?;
        let classes = self
            .classes
            .into_iter()
            .map(|c| {
                let rows = c
                    .representative
                    .iter()
                    .map(|s| s.parse::<Word>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(ParseError::Matrix)?;
                let representative = WordMatrix::new(rows).map_err(ParseError::Matrix)?;
                if representative.p() != c.p {
                    return Err(ParseError::Catalog(format!(
                        "class lists p={} but has {} rows",
                        c.p,
                        representative.p()
                    )));
                }
                Ok(ClassEntry {
                    representative,
                    p: c.p,
                    profile: c.invariants,
                })
            })
            .collect::<Result<Vec<_>, ParseError>>()?;
        Ok(ClassCatalog {
            m: self.m,
            alphabet,
            classes,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatalogFormat {
    Text,
    Structured,
}

/// Deterministic catalog rendering. Structured mode is the JSON document,
/// one class per line so large catalogs stay diffable; text mode lists one
/// block per class in catalog order.
pub fn render_catalog(catalog: &ClassCatalog, format: CatalogFormat) -> String {
    match format {
        CatalogFormat::Structured => {
            let file = CatalogFile::from(catalog);
            let mut out = String::new();
            out.push_str("{\n");
            out.push_str(&format!("  \"m\": {},\n", file.m));
            out.push_str(&format!(
                "  \"alphabet\": {},\n",
                serde_json::to_string(&file.alphabet).expect("string serializes")
            ));
            if file.classes.is_empty() {
                out.push_str("  \"classes\": [],\n");
            } else {
                out.push_str("  \"classes\": [\n");
                let last = file.classes.len() - 1;
                for (i, class) in file.classes.iter().enumerate() {
                    out.push_str("    ");
                    out.push_str(&serde_json::to_string(class).expect("class serializes"));
                    out.push_str(if i < last { ",\n" } else { "\n" });
                }
                out.push_str("  ],\n");
            }
            out.push_str(&format!(
                "  \"provenance\": {}\n",
                serde_json::to_string(&file.provenance).expect("provenance serializes")
            ));
            out.push_str("}\n");
            out
        }
        CatalogFormat::Text => {
            let mut out = format!(
                "m={} alphabet={} classes={}\n",
                catalog.m,
                catalog.alphabet,
                catalog.classes.len()
            );
            for entry in &catalog.classes {
                out.push('\n');
                out.push_str(&format!("p={}\n", entry.p));
                for w in entry.representative.rows() {
                    out.push_str(&w.to_string());
                    out.push('\n');
                }
                out.push_str(&format!("[ {} ]\n", entry.profile));
            }
            out
        }
    }
}

/// Parse the structured catalog format.
pub fn parse_catalog(text: &str) -> Result<ClassCatalog, ParseError> {
    let file: CatalogFile =
        serde_json::from_str(text).map_err(|e| ParseError::Catalog(e.to_string()))?;
    file.into_catalog()
}

/// Render the minimal-length table for `p = 2..=18`: the 4-character `m`
/// row from the closed formula and the search-backed 3-character `m~` row.
/// `max_ps[i]` is the largest reachable `p` at word length `i + 1`; `m~`
/// entries past the search cap print as `?`.
pub fn render_min_length_table(max_ps: &[usize]) -> String {
    let ps: Vec<usize> = (2..=18).collect();
    let mut header = String::from("p ");
    let mut m_row = String::from("m ");
    let mut mt_row = String::from("m~");
    for &p in &ps {
        header.push_str(&format!("{p:>3}"));
        m_row.push_str(&format!("{:>3}", min_length_4char(p).expect("p >= 2")));
        let mt = max_ps.iter().position(|&mp| mp >= p).map(|i| i + 1);
        match mt {
            Some(m) => mt_row.push_str(&format!("{m:>3}")),
            None => mt_row.push_str(&format!("{:>3}", '?')),
        }
    }
    format!("{header}\n{m_row}\n{mt_row}\n")
}
