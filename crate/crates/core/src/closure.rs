//! Finite subbands of the free left regular band, built as closures of seed
//! words.

use std::collections::HashSet;

use thiserror::Error;

use crate::band::{Band, BandError, Element};
use crate::words::{canonical_compare, FreeWord};

pub const DEFAULT_CLOSURE_CAP: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosureError {
    #[error("no seed words given")]
    NoSeeds,
    #[error("closure exceeds {0} elements")]
    CapExceeded(usize),
    #[error("closure has no identity; adjoin the empty word")]
    NoIdentity,
    #[error(transparent)]
    Band(#[from] BandError),
}

/// A subband of the free band together with the word behind each element.
#[derive(Clone, Debug)]
pub struct Subband {
    pub band: Band,
    pub words: Vec<FreeWord>,
}

impl Subband {
    pub fn word(&self, x: Element) -> &FreeWord {
        &self.words[x]
    }

    pub fn element_of(&self, w: &FreeWord) -> Option<Element> {
        self.words.iter().position(|v| v == w)
    }
}

/// The least set containing `seeds` (and the empty word if requested) closed
/// under the word product.
///
/// Elements are numbered in `<^ℱ` order, so the empty word, when present, is
/// element 0. Labels are the words themselves.
pub fn close_under_product(
    seeds: &[FreeWord],
    adjoin_identity: bool,
    cap: usize,
) -> Result<Subband, ClosureError> {
    if seeds.is_empty() {
        return Err(ClosureError::NoSeeds);
    }
    let mut words: Vec<FreeWord> = Vec::new();
    let mut seen: HashSet<FreeWord> = HashSet::new();
    let push = |w: FreeWord, words: &mut Vec<FreeWord>, seen: &mut HashSet<FreeWord>| {
        if seen.insert(w.clone()) {
            words.push(w);
        }
    };
    if adjoin_identity {
        push(FreeWord::empty(), &mut words, &mut seen);
    }
    for s in seeds {
        push(s.clone(), &mut words, &mut seen);
    }
    let mut done = 0;
    // Every product involving at least one element from `done..` is new work.
    while done < words.len() {
        let frontier = words.len();
        for i in 0..frontier {
            for j in 0..frontier {
                if i < done && j < done {
                    continue;
                }
                let p = words[i].product(&words[j]);
                push(p, &mut words, &mut seen);
                if words.len() > cap {
                    return Err(ClosureError::CapExceeded(cap));
                }
            }
        }
        done = frontier;
    }
    words.sort_by(canonical_compare);
    let identity = if words[0].is_empty() || words.len() == 1 {
        0
    } else {
        return Err(ClosureError::NoIdentity);
    };
    let index = |w: &FreeWord| words.iter().position(|v| v == w).expect("closed");
    let table: Vec<Vec<Element>> = words
        .iter()
        .map(|x| words.iter().map(|y| index(&x.product(y))).collect())
        .collect();
    let labels = words.iter().map(|w| w.to_string().replace(' ', "")).collect();
    let band = Band::new(table, identity, Some(labels))?;
    Ok(Subband { band, words })
}
