//! Finite left regular bands given by their multiplication tables.
//!
//! A [`Band`] is only ever constructed through validation, so every value of
//! the type satisfies the identity law, idempotency, `xyx = xy` and
//! associativity.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Index of a band element. Indices are the canonical order; labels are for
/// display only.
pub type Element = usize;

/// The law broken by an [`AxiomViolation`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axiom {
    /// `ex = xe = x` for the designated identity `e`.
    Identity,
    /// `xx = x`.
    Idempotent,
    /// `xyx = xy`.
    LeftRegular,
    /// `(xy)z = x(yz)`.
    Associative,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Axiom::Identity => "identity law",
            Axiom::Idempotent => "idempotency x*x = x",
            Axiom::LeftRegular => "left regularity x*y*x = x*y",
            Axiom::Associative => "associativity",
        };
        f.write_str(name)
    }
}

/// One witness of a failed axiom: the law and the elements it fails on.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AxiomViolation {
    pub law: Axiom,
    pub elements: Vec<Element>,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {:?}", self.law, self.elements)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BandError {
    #[error("a band needs at least one element")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },
    #[error("entry ({row}, {col}) = {value} is not an element index below {n}")]
    OutOfRange { row: usize, col: usize, value: usize, n: usize },
    #[error("identity index {identity} is out of range for {n} elements")]
    BadIdentity { identity: usize, n: usize },
    #[error("{got} labels given for {n} elements")]
    LabelCount { got: usize, n: usize },
    #[error("{} axiom violation(s), first: {}", .0.len(), .0[0])]
    Axioms(Vec<AxiomViolation>),
}

/// A validated finite left regular band with a designated identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Band {
    n: usize,
    identity: Element,
    table: Vec<Element>,
    labels: Vec<String>,
}

impl Band {
    /// Validates `table` (row `x`, column `y` holds `xy`) and builds a band.
    ///
    /// On failure every violated axiom instance is returned, not only the
    /// first one.
    pub fn new(
        table: Vec<Vec<Element>>,
        identity: Element,
        labels: Option<Vec<String>>,
    ) -> Result<Self, BandError> {
        let n = table.len();
        if n == 0 {
            return Err(BandError::Empty);
        }
        if identity >= n {
            return Err(BandError::BadIdentity { identity, n });
        }
        let mut flat = Vec::with_capacity(n * n);
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != n {
                return Err(BandError::Ragged { row, len: entries.len(), expected: n });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= n {
                    return Err(BandError::OutOfRange { row, col, value, n });
                }
                flat.push(value);
            }
        }
        let labels = match labels {
            Some(labels) if labels.len() != n => {
                return Err(BandError::LabelCount { got: labels.len(), n })
            }
            Some(labels) => labels,
            None => default_labels(n, identity),
        };
        let band = Band { n, identity, table: flat, labels };
        let violations = band.violations();
        if violations.is_empty() {
            Ok(band)
        } else {
            Err(BandError::Axioms(violations))
        }
    }

    /// Builds a band from a table without identity by adjoining a fresh
    /// identity at index 0. The input elements shift to `1..=n`.
    pub fn with_adjoined_identity(
        table: Vec<Vec<Element>>,
        labels: Option<Vec<String>>,
        identity_label: &str,
    ) -> Result<Self, BandError> {
        let n = table.len();
        if n == 0 {
            return Err(BandError::Empty);
        }
        let mut full = Vec::with_capacity(n + 1);
        full.push((0..=n).collect::<Vec<_>>());
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != n {
                return Err(BandError::Ragged { row, len: entries.len(), expected: n });
            }
            let mut shifted = Vec::with_capacity(n + 1);
            shifted.push(row + 1);
            for (col, &value) in entries.iter().enumerate() {
                if value >= n {
                    return Err(BandError::OutOfRange { row, col, value, n });
                }
                shifted.push(value + 1);
            }
            full.push(shifted);
        }
        let labels = match labels {
            Some(labels) if labels.len() != n => {
                return Err(BandError::LabelCount { got: labels.len(), n })
            }
            Some(labels) => {
                let mut all = Vec::with_capacity(n + 1);
                all.push(identity_label.to_string());
                all.extend(labels);
                Some(all)
            }
            None => None,
        };
        Band::new(full, 0, labels)
    }

    /// The one-element band `{e}`.
    pub fn trivial() -> Self {
        Band::new(vec![vec![0]], 0, None).expect("trivial band is valid")
    }

    fn violations(&self) -> Vec<AxiomViolation> {
        let mut out = Vec::new();
        let e = self.identity;
        for x in 0..self.n {
            if self.mul(e, x) != x || self.mul(x, e) != x {
                out.push(AxiomViolation { law: Axiom::Identity, elements: vec![x] });
            }
            if self.mul(x, x) != x {
                out.push(AxiomViolation { law: Axiom::Idempotent, elements: vec![x] });
            }
        }
        for x in 0..self.n {
            for y in 0..self.n {
                let xy = self.mul(x, y);
                if self.mul(xy, x) != xy {
                    out.push(AxiomViolation { law: Axiom::LeftRegular, elements: vec![x, y] });
                }
                for z in 0..self.n {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        out.push(AxiomViolation {
                            law: Axiom::Associative,
                            elements: vec![x, y, z],
                        });
                    }
                }
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn identity(&self) -> Element {
        self.identity
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.n
    }

    /// All elements except the identity, in index order.
    pub fn non_identity(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.n).filter(move |&x| x != self.identity)
    }

    #[inline]
    pub fn mul(&self, x: Element, y: Element) -> Element {
        self.table[x * self.n + y]
    }

    pub fn label(&self, x: Element) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn element_by_label(&self, label: &str) -> Option<Element> {
        self.labels.iter().position(|l| l == label)
    }

    /// The table as rows, row `x` column `y` holding `xy`.
    pub fn rows(&self) -> Vec<Vec<Element>> {
        self.table.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// `x ≤ y` iff `xy = y` (prefix order in a free band).
    #[inline]
    pub fn leq(&self, x: Element, y: Element) -> bool {
        self.mul(x, y) == y
    }

    #[inline]
    pub fn lt(&self, x: Element, y: Element) -> bool {
        x != y && self.leq(x, y)
    }

    /// `x ⪯ y` iff `yx = y` (letter containment in a free band).
    #[inline]
    pub fn preceq(&self, x: Element, y: Element) -> bool {
        self.mul(y, x) == y
    }

    /// Mutual `⪯`.
    #[inline]
    pub fn approx(&self, x: Element, y: Element) -> bool {
        self.preceq(x, y) && self.preceq(y, x)
    }

    /// `x ∼_c y` iff `xc = yc`.
    #[inline]
    pub fn sim(&self, c: Element, x: Element, y: Element) -> bool {
        self.mul(x, c) == self.mul(y, c)
    }

    /// Relabels without touching the table.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, BandError> {
        if labels.len() != self.n {
            return Err(BandError::LabelCount { got: labels.len(), n: self.n });
        }
        self.labels = labels;
        Ok(self)
    }
}

fn default_labels(n: usize, identity: Element) -> Vec<String> {
    (0..n)
        .map(|i| if i == identity { "e".to_string() } else { format!("s{i}") })
        .collect()
}

/// Validates a raw table, returning the band or every violated axiom.
pub fn validate_band(table: Vec<Vec<Element>>, identity: Element) -> Result<Band, BandError> {
    Band::new(table, identity, None)
}
