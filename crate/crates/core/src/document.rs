//! The band file format.
//!
//! ```text
//! # comment
//! name: B
//! elements: e x1 x2
//! identity: e
//! e  x1 x2
//! x1 x1 x2
//! x2 x2 x2
//! ```
//!
//! Header lines are `key: value`. `elements` and `identity` are required;
//! other keys are kept as metadata. `identity: auto` means the listed
//! elements have no identity and one is adjoined as element 0. The rows
//! follow the header, one per element in declaration order. A JSON object
//! with the fields of [`BandDocument`] is accepted instead.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::band::{Band, BandError, Element};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandDocument {
    pub elements: Vec<String>,
    /// `None` for `auto`.
    #[serde(with = "identity_field")]
    pub identity: Option<String>,
    pub table: Vec<Vec<String>>,
    #[serde(default)]
    pub metadata: BTreeMap<String, String>,
}

mod identity_field {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<String>, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(v.as_deref().unwrap_or("auto"))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<String>, D::Error> {
        let s = String::deserialize(d)?;
        Ok((s != "auto").then_some(s))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("line {line}, column {col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("line {line}, column {col}: duplicate element `{label}`")]
    DuplicateLabel { line: usize, col: usize, label: String },
    #[error("line {line}, column {col}: unknown element `{label}`")]
    UnknownLabel { line: usize, col: usize, label: String },
    #[error("line {line}: row has {got} entries, expected {expected}")]
    Ragged { line: usize, got: usize, expected: usize },
    #[error("expected {expected} table rows, found {got}")]
    RowCount { got: usize, expected: usize },
    #[error("missing `{0}` header")]
    MissingHeader(&'static str),
    #[error("the element list is empty")]
    EmptyElements,
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Band(#[from] BandError),
}

fn valid_label(l: &str) -> bool {
    !l.is_empty() && !l.contains(|c: char| c.is_whitespace() || c == ':' || c == '#') && l != "auto"
}

/// 1-based character column of each whitespace-separated token.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (col, (i, c)) in line.char_indices().enumerate() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some((col + 1, i)),
            (true, Some((scol, si))) => {
                out.push((scol, &line[si..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some((scol, si)) = start {
        out.push((scol, &line[si..]));
    }
    out
}

impl BandDocument {
    /// Parses either format; JSON is recognised by a leading `{`.
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let doc = if text.trim_start().starts_with('{') {
            serde_json::from_str::<BandDocument>(text).map_err(|e| DocumentError::Json(e.to_string()))?
        } else {
            Self::parse_text(text)?
        };
        doc.check()?;
        Ok(doc)
    }

    fn parse_text(text: &str) -> Result<Self, DocumentError> {
        let mut elements: Option<(usize, Vec<(usize, String)>)> = None;
        let mut identity: Option<Option<String>> = None;
        let mut metadata = BTreeMap::new();
        let mut rows: Vec<(usize, Vec<(usize, String)>)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("");
            if content.trim().is_empty() {
                continue;
            }
            if let Some((key, value)) = content.split_once(':') {
                let col = content.len() - content.trim_start().len() + 1;
                if !rows.is_empty() {
                    return Err(DocumentError::Syntax { line, col, message: "header line after table rows".into() });
                }
                let key = key.trim();
                let value_col = key.chars().count() + col + 1;
                match key {
                    "elements" => {
                        let toks = tokens(value)
                            .into_iter()
                            .map(|(c, t)| (c + value_col - 1, t.to_string()))
                            .collect();
                        elements = Some((line, toks));
                    }
                    "identity" => {
                        let v = value.trim();
                        identity = Some((v != "auto").then(|| v.to_string()));
                    }
                    k if !k.is_empty() && !k.contains(char::is_whitespace) => {
                        metadata.insert(k.to_string(), value.trim().to_string());
                    }
                    _ => return Err(DocumentError::Syntax { line, col, message: format!("bad header key `{key}`") }),
                }
            } else {
                let toks = tokens(content).into_iter().map(|(c, t)| (c, t.to_string())).collect();
                rows.push((line, toks));
            }
        }
        let (eline, elements) = elements.ok_or(DocumentError::MissingHeader("elements"))?;
        let identity = identity.ok_or(DocumentError::MissingHeader("identity"))?;
        let mut seen = HashSet::new();
        for (col, l) in &elements {
            if !valid_label(l) {
                return Err(DocumentError::Syntax { line: eline, col: *col, message: format!("bad element name `{l}`") });
            }
            if !seen.insert(l.as_str()) {
                return Err(DocumentError::DuplicateLabel { line: eline, col: *col, label: l.clone() });
            }
        }
        let n = elements.len();
        for (line, row) in &rows {
            if row.len() != n {
                return Err(DocumentError::Ragged { line: *line, got: row.len(), expected: n });
            }
            for (col, l) in row {
                if !seen.contains(l.as_str()) {
                    return Err(DocumentError::UnknownLabel { line: *line, col: *col, label: l.clone() });
                }
            }
        }
        Ok(BandDocument {
            elements: elements.into_iter().map(|(_, l)| l).collect(),
            identity,
            table: rows.into_iter().map(|(_, r)| r.into_iter().map(|(_, l)| l).collect()).collect(),
            metadata,
        })
    }

    /// Structural checks shared by both formats. Positions refer to table
    /// rows and entries when the source was JSON.
    fn check(&self) -> Result<(), DocumentError> {
        if self.elements.is_empty() {
            return Err(DocumentError::EmptyElements);
        }
        let mut seen = HashSet::new();
        for (i, l) in self.elements.iter().enumerate() {
            if !valid_label(l) {
                return Err(DocumentError::Syntax { line: 0, col: i + 1, message: format!("bad element name `{l}`") });
            }
            if !seen.insert(l.as_str()) {
                return Err(DocumentError::DuplicateLabel { line: 0, col: i + 1, label: l.clone() });
            }
        }
        if let Some(id) = &self.identity {
            if !seen.contains(id.as_str()) {
                return Err(DocumentError::UnknownLabel { line: 0, col: 0, label: id.clone() });
            }
        }
        let n = self.elements.len();
        if self.table.len() != n {
            return Err(DocumentError::RowCount { got: self.table.len(), expected: n });
        }
        for (r, row) in self.table.iter().enumerate() {
            if row.len() != n {
                return Err(DocumentError::Ragged { line: r + 1, got: row.len(), expected: n });
            }
            if let Some((c, l)) = row.iter().enumerate().find(|(_, l)| !seen.contains(l.as_str())) {
                return Err(DocumentError::UnknownLabel { line: r + 1, col: c + 1, label: l.clone() });
            }
        }
        for (k, v) in &self.metadata {
            if k.is_empty() || k.contains(|c: char| c.is_whitespace() || c == ':' || c == '#')
                || k == "elements" || k == "identity" || v.contains(['\n', '#']) || v.trim() != v
            {
                return Err(DocumentError::Syntax { line: 0, col: 0, message: format!("bad metadata entry `{k}`") });
            }
        }
        Ok(())
    }

    /// The text format, with columns aligned.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            out.push_str(&format!("{k}: {v}\n"));
        }
        out.push_str(&format!("elements: {}\n", self.elements.join(" ")));
        out.push_str(&format!("identity: {}\n", self.identity.as_deref().unwrap_or("auto")));
        let width = self.elements.iter().map(|l| l.chars().count()).max().unwrap_or(1);
        for row in &self.table {
            let cells: Vec<String> = row.iter().map(|l| format!("{l:<width$}")).collect();
            out.push_str(cells.join(" ").trim_end());
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    /// Builds and validates the band. An identity is adjoined at index 0
    /// when the document says `auto` or `adjoin` is set.
    pub fn to_band(&self, adjoin: bool) -> Result<Band, DocumentError> {
        self.check()?;
        let index = |l: &String| self.elements.iter().position(|x| x == l).expect("checked");
        let table: Vec<Vec<Element>> =
            self.table.iter().map(|r| r.iter().map(index).collect()).collect();
        match (&self.identity, adjoin) {
            (Some(id), false) => Ok(Band::new(table, index(id), Some(self.elements.clone()))?),
            _ => Ok(Band::with_adjoined_identity(
                table,
                Some(self.elements.clone()),
                &self.adjoined_identity_label(),
            )?),
        }
    }

    /// The label given to an adjoined identity: `e` unless already taken.
    pub fn adjoined_identity_label(&self) -> String {
        ["e", "1", "ε"]
            .into_iter()
            .find(|c| !self.elements.iter().any(|l| l == c))
            .map(String::from)
            .unwrap_or_else(|| format!("e{}", self.elements.len()))
    }

    /// The document describing `band`, identity included.
    pub fn from_band(band: &Band) -> Self {
        let labels = band.labels().to_vec();
        BandDocument {
            table: band
                .elements()
                .map(|x| band.elements().map(|y| labels[band.mul(x, y)].clone()).collect())
                .collect(),
            identity: Some(labels[band.identity()].clone()),
            elements: labels,
            metadata: BTreeMap::new(),
        }
    }
}
