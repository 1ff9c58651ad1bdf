//! Finite join semilattices and their embedding `ν` into a free semilattice.
//!
//! `ν(x)` is the set of letters `𝔞_t` over all `t` with `x ⊄ t`. It is an
//! injective join homomorphism into the free semilattice on the elements of
//! `L`; the constructor re-checks both properties before returning.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Index of an element (class) of a finite semilattice.
pub type ClassId = usize;

/// A word of a free semilattice: a finite set of letters, each letter named by
/// the class id it is indexed by.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SemWord(BTreeSet<ClassId>);

impl SemWord {
    pub fn new() -> Self {
        SemWord(BTreeSet::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, letter: ClassId) -> bool {
        self.0.contains(&letter)
    }

    pub fn insert(&mut self, letter: ClassId) {
        self.0.insert(letter);
    }

    pub fn letters(&self) -> impl Iterator<Item = ClassId> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &SemWord) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_proper_subset(&self, other: &SemWord) -> bool {
        self.0.len() < other.0.len() && self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &SemWord) -> SemWord {
        SemWord(self.0.union(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &SemWord) -> SemWord {
        SemWord(self.0.difference(&other.0).copied().collect())
    }
}

impl FromIterator<ClassId> for SemWord {
    fn from_iter<I: IntoIterator<Item = ClassId>>(iter: I) -> Self {
        SemWord(iter.into_iter().collect())
    }
}

impl fmt::Display for SemWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("∅");
        }
        let parts: Vec<String> = self.0.iter().map(|t| format!("𝔞{t}")).collect();
        f.write_str(&parts.join(""))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemilatticeError {
    #[error("join table is not square")]
    NotSquare,
    #[error("join table entry out of range")]
    OutOfRange,
    #[error("join is not idempotent at {0}")]
    NotIdempotent(ClassId),
    #[error("join is not commutative at ({0}, {1})")]
    NotCommutative(ClassId, ClassId),
    #[error("join is not associative at ({0}, {1}, {2})")]
    NotAssociative(ClassId, ClassId, ClassId),
    #[error("{0} is not neutral for join")]
    BadBottom(ClassId),
}

/// A finite join semilattice with a least element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteSemilattice {
    m: usize,
    join: Vec<ClassId>,
    bottom: ClassId,
}

impl FiniteSemilattice {
    pub fn new(join: Vec<Vec<ClassId>>, bottom: ClassId) -> Result<Self, SemilatticeError> {
        let m = join.len();
        if join.iter().any(|r| r.len() != m) || bottom >= m {
            return Err(SemilatticeError::NotSquare);
        }
        if join.iter().flatten().any(|&v| v >= m) {
            return Err(SemilatticeError::OutOfRange);
        }
        let l = FiniteSemilattice { m, join: join.concat(), bottom };
        for x in 0..m {
            if l.join(x, x) != x {
                return Err(SemilatticeError::NotIdempotent(x));
            }
            if l.join(bottom, x) != x {
                return Err(SemilatticeError::BadBottom(bottom));
            }
            for y in 0..m {
                if l.join(x, y) != l.join(y, x) {
                    return Err(SemilatticeError::NotCommutative(x, y));
                }
                for z in 0..m {
                    if l.join(l.join(x, y), z) != l.join(x, l.join(y, z)) {
                        return Err(SemilatticeError::NotAssociative(x, y, z));
                    }
                }
            }
        }
        Ok(l)
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    pub fn bottom(&self) -> ClassId {
        self.bottom
    }

    #[inline]
    pub fn join(&self, x: ClassId, y: ClassId) -> ClassId {
        self.join[x * self.m + y]
    }

    /// `x ⊆ y` iff `y ∪ x = y`.
    #[inline]
    pub fn leq(&self, x: ClassId, y: ClassId) -> bool {
        self.join(y, x) == y
    }

    /// Length of the longest strictly increasing chain from the bottom to `x`.
    pub fn heights(&self) -> Vec<usize> {
        let mut order: Vec<ClassId> = (0..self.m).collect();
        let below = |x: ClassId| (0..self.m).filter(|&y| self.leq(y, x)).count();
        order.sort_by_key(|&x| below(x));
        let mut height = vec![0; self.m];
        for &x in &order {
            height[x] = (0..self.m)
                .filter(|&y| y != x && self.leq(y, x))
                .map(|y| height[y] + 1)
                .max()
                .unwrap_or(0);
        }
        height
    }

    /// Classes sorted by ascending height, ties by id. Position in this list
    /// decides which free generator the letter `𝔞_t` becomes.
    pub fn rank_order(&self) -> Vec<ClassId> {
        let h = self.heights();
        let mut order: Vec<ClassId> = (0..self.m).collect();
        order.sort_by_key(|&x| (h[x], x));
        order
    }
}

/// The map `ν` from classes to free-semilattice words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NuMap {
    image: Vec<SemWord>,
}

impl NuMap {
    pub fn image(&self, x: ClassId) -> &SemWord {
        &self.image[x]
    }

    pub fn images(&self) -> &[SemWord] {
        &self.image
    }
}

/// `ν(x) = { 𝔞_t : x ⊄ t }`.
pub fn nu(l: &FiniteSemilattice) -> NuMap {
    let image: Vec<SemWord> =
        (0..l.len()).map(|x| (0..l.len()).filter(|&t| !l.leq(x, t)).collect()).collect();
    for x in 0..l.len() {
        for y in 0..l.len() {
            assert_eq!(
                image[l.join(x, y)],
                image[x].union(&image[y]),
                "ν is not a join homomorphism at ({x}, {y})"
            );
            assert!(x == y || image[x] != image[y], "ν is not injective at ({x}, {y})");
        }
    }
    NuMap { image }
}

/// Semilattice order `x ⊆ y`.
pub fn sl_leq(l: &FiniteSemilattice, x: ClassId, y: ClassId) -> bool {
    l.leq(x, y)
}
