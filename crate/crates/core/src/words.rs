//! Words of the free left regular band and its letters.
//!
//! A [`FreeWord`] is a sequence of pairwise distinct letters; the product
//! concatenates and then drops every letter already seen. The prefix order is
//! `≤`, letter-set inclusion is `⪯`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::band::Element;

/// A free generator.
///
/// The derived order is the registry rank: every base letter precedes every
/// fresh letter, base letters follow their index, and fresh letters follow
/// creation order `(round, owner, tag)` with the empty tag first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    Base(u32),
    Fresh { round: u32, owner: Element, tag: Option<Element> },
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Base(k) => write!(f, "a{k}"),
            Letter::Fresh { round, owner, tag: Some(t) } => write!(f, "t:{owner}:{t}:{round}"),
            Letter::Fresh { round, owner, tag: None } => write!(f, "t:{owner}:-:{round}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("malformed letter `{0}`")]
    BadLetter(String),
    #[error("letter {0} occurs twice")]
    RepeatedLetter(Letter),
    #[error("`{prefix}` is not a proper prefix of `{word}`")]
    NotPrefix { prefix: FreeWord, word: FreeWord },
    #[error("separator inputs have equal letter sets")]
    EqualLetterSets,
    #[error("letter {0} of a Δ-word does not occur in b")]
    MissingFromB(Letter),
}

impl FromStr for Letter {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || WordError::BadLetter(s.to_string());
        if let Some(k) = s.strip_prefix('a') {
            return k.parse().map(Letter::Base).map_err(|_| bad());
        }
        let rest = s.strip_prefix("t:").ok_or_else(bad)?;
        let parts: Vec<&str> = rest.split(':').collect();
        let [owner, tag, round] = parts.as_slice() else { return Err(bad()) };
        let owner = owner.parse().map_err(|_| bad())?;
        let tag = match *tag {
            "-" => None,
            t => Some(t.parse().map_err(|_| bad())?),
        };
        let round = round.parse().map_err(|_| bad())?;
        Ok(Letter::Fresh { round, owner, tag })
    }
}

/// An element of the free left regular band.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FreeWord(Vec<Letter>);

impl FreeWord {
    /// The empty word, the identity.
    pub fn empty() -> Self {
        FreeWord(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Result<Self, WordError> {
        let mut seen = BTreeSet::new();
        for &l in &letters {
            if !seen.insert(l) {
                return Err(WordError::RepeatedLetter(l));
            }
        }
        Ok(FreeWord(letters))
    }

    /// `a_{k1} a_{k2} ...`; panics on a repeated index.
    pub fn base(indices: &[u32]) -> Self {
        FreeWord::new(indices.iter().map(|&k| Letter::Base(k)).collect())
            .expect("base word with distinct letters")
    }

    /// The reduced form of an arbitrary letter sequence: first occurrences
    /// kept in order.
    pub fn reduce(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut seen = BTreeSet::new();
        FreeWord(letters.into_iter().filter(|l| seen.insert(*l)).collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, l: Letter) -> bool {
        self.0.contains(&l)
    }

    pub fn position(&self, l: Letter) -> Option<usize> {
        self.0.iter().position(|&x| x == l)
    }

    pub fn letter_set(&self) -> BTreeSet<Letter> {
        self.0.iter().copied().collect()
    }

    /// `w1 w2`: `w1` followed by the letters of `w2` not already present.
    pub fn product(&self, other: &FreeWord) -> FreeWord {
        let mut out = self.0.clone();
        for &l in &other.0 {
            if !self.0.contains(&l) {
                out.push(l);
            }
        }
        FreeWord(out)
    }

    /// Prefix order `≤`.
    pub fn is_prefix_of(&self, other: &FreeWord) -> bool {
        other.0.starts_with(&self.0)
    }

    /// `⪯`: every letter of `self` occurs in `other`.
    pub fn letters_within(&self, other: &FreeWord) -> bool {
        self.0.iter().all(|l| other.0.contains(l))
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for FreeWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let letters = s
            .split_whitespace()
            .filter(|t| *t != "ε")
            .map(str::parse)
            .collect::<Result<Vec<Letter>, _>>()?;
        FreeWord::new(letters)
    }
}

impl FromIterator<Letter> for FreeWord {
    /// Reduces the sequence.
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        FreeWord::reduce(iter)
    }
}

pub fn fw_product(w1: &FreeWord, w2: &FreeWord) -> FreeWord {
    w1.product(w2)
}

pub fn fw_leq(w1: &FreeWord, w2: &FreeWord) -> bool {
    w1.is_prefix_of(w2)
}

pub fn fw_preceq(w1: &FreeWord, w2: &FreeWord) -> bool {
    w1.letters_within(w2)
}

/// The linear order `<^ℱ`: shorter letter sets first, then the rank-sorted
/// letter sets lexicographically, then the letter sequences.
pub fn canonical_compare(w1: &FreeWord, w2: &FreeWord) -> Ordering {
    w1.len()
        .cmp(&w2.len())
        .then_with(|| w1.letter_set().into_iter().cmp(w2.letter_set()))
        .then_with(|| w1.0.cmp(&w2.0))
}

/// Sorts the images of a semilattice word's letters by rank.
pub fn arrow<T: Copy>(letters: impl IntoIterator<Item = T>, letter_of: impl Fn(T) -> Letter) -> FreeWord {
    let mut out: Vec<Letter> = letters.into_iter().map(letter_of).collect();
    out.sort();
    FreeWord::new(out).expect("letter map must be injective")
}

/// `Δ(x)`: the suffix of `x` after its proper prefix `parent`.
pub fn delta_word(x: &FreeWord, parent: &FreeWord) -> Result<FreeWord, WordError> {
    if parent.len() >= x.len() || !parent.is_prefix_of(x) {
        return Err(WordError::NotPrefix { prefix: parent.clone(), word: x.clone() });
    }
    Ok(FreeWord(x.0[parent.len()..].to_vec()))
}

/// The `(x, y)`-separator in `b` for `Δ(x) = dx`, `Δ(y) = dy`: the last letter
/// of `b` in `dy ∖ dx` after which no letter of `dx ∖ dy` occurs.
pub fn separator(dx: &FreeWord, dy: &FreeWord, b: &FreeWord) -> Result<Option<Letter>, WordError> {
    let sx = dx.letter_set();
    let sy = dy.letter_set();
    if sx == sy {
        return Err(WordError::EqualLetterSets);
    }
    if let Some(&l) = sx.union(&sy).find(|l| !b.contains(**l)) {
        return Err(WordError::MissingFromB(l));
    }
    let last_x_only = b.0.iter().rposition(|l| sx.contains(l) && !sy.contains(l));
    let last_y_only = b.0.iter().rposition(|l| sy.contains(l) && !sx.contains(l));
    Ok(match (last_y_only, last_x_only) {
        (Some(y), Some(x)) if y > x => Some(b.0[y]),
        (Some(y), None) => Some(b.0[y]),
        _ => None,
    })
}

/// Letters in use and the ids assigned to them, in creation order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphabetRegistry {
    ids: BTreeMap<Letter, u32>,
    next_round: u32,
}

impl AlphabetRegistry {
    pub fn new() -> Self {
        AlphabetRegistry { ids: BTreeMap::new(), next_round: 1 }
    }

    /// Returns the id of `letter`, assigning the next free id if new.
    pub fn intern(&mut self, letter: Letter) -> u32 {
        let next = self.ids.len() as u32;
        *self.ids.entry(letter).or_insert(next)
    }

    pub fn id(&self, letter: Letter) -> Option<u32> {
        self.ids.get(&letter).copied()
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Interned letters in rank order.
    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.ids.keys().copied()
    }

    /// Starts a new Modification round and returns its stamp.
    pub fn begin_round(&mut self) -> u32 {
        let r = self.next_round;
        self.next_round += 1;
        r
    }

    /// Mints and interns a fresh letter for the given round.
    pub fn fresh(&mut self, round: u32, owner: Element, tag: Option<Element>) -> Letter {
        let l = Letter::Fresh { round, owner, tag };
        assert!(self.id(l).is_none(), "fresh letter {l} minted twice");
        self.intern(l);
        l
    }
}
