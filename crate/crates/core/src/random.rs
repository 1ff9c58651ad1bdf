//! Random test material: free words, subbands of the free band, semilattices.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::closure::{close_under_product, ClosureError, Subband};
use crate::semilattice::FiniteSemilattice;
use crate::words::FreeWord;

/// A nonempty word over `a1..=a{generators}` with distinct letters.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, generators: u32) -> FreeWord {
    let mut letters: Vec<u32> = (1..=generators).collect();
    letters.shuffle(rng);
    let len = rng.gen_range(1..=generators as usize);
    FreeWord::base(&letters[..len])
}

/// The closure of `1..=max_seeds` random words, with the empty word adjoined.
pub fn random_subband<R: Rng + ?Sized>(
    rng: &mut R,
    generators: u32,
    max_seeds: usize,
    cap: usize,
) -> Result<Subband, ClosureError> {
    let count = rng.gen_range(1..=max_seeds);
    let seeds: Vec<FreeWord> = (0..count).map(|_| random_word(rng, generators)).collect();
    close_under_product(&seeds, true, cap)
}

/// A random finite join semilattice with at most `max_size` elements: the
/// principal ideals of a random partial order, closed under union, with the
/// empty set as bottom. Class ids are shuffled.
pub fn random_semilattice<R: Rng + ?Sized>(rng: &mut R, max_size: usize) -> FiniteSemilattice {
    assert!(max_size >= 1);
    loop {
        let points = rng.gen_range(1..=4usize);
        let mut below = vec![vec![false; points]; points];
        for (j, row) in below.iter_mut().enumerate() {
            row[j] = true;
            for cell in row.iter_mut().take(j) {
                *cell = rng.gen_bool(0.4);
            }
        }
        // transitive closure
        for k in 0..points {
            for i in 0..points {
                for j in 0..points {
                    if below[i][k] && below[k][j] {
                        below[i][j] = true;
                    }
                }
            }
        }
        let mut sets: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        sets.insert(BTreeSet::new());
        for row in &below {
            sets.insert((0..points).filter(|&j| row[j]).collect());
        }
        loop {
            let snapshot: Vec<_> = sets.iter().cloned().collect();
            let before = sets.len();
            for a in &snapshot {
                for b in &snapshot {
                    sets.insert(a.union(b).copied().collect());
                }
            }
            if sets.len() == before || sets.len() > max_size {
                break;
            }
        }
        if sets.len() > max_size {
            continue;
        }
        let mut elems: Vec<BTreeSet<usize>> = sets.into_iter().collect();
        elems.shuffle(rng);
        let id = |s: &BTreeSet<usize>| elems.iter().position(|t| t == s).unwrap();
        let join: Vec<Vec<usize>> = elems
            .iter()
            .map(|a| elems.iter().map(|b| id(&a.union(b).copied().collect())).collect())
            .collect();
        let bottom = id(&BTreeSet::new());
        return FiniteSemilattice::new(join, bottom).expect("union closure is a semilattice");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn words_are_reduced() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let w = random_word(&mut rng, 5);
            assert!(!w.is_empty() && w.len() <= 5);
            assert_eq!(w.letter_set().len(), w.len());
        }
    }

    #[test]
    fn semilattices_respect_size() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let l = random_semilattice(&mut rng, 8);
            assert!(!l.is_empty() && l.len() <= 8);
        }
    }

    #[test]
    fn same_seed_same_subband() {
        let a = random_subband(&mut ChaCha8Rng::seed_from_u64(11), 5, 4, 512).unwrap();
        let b = random_subband(&mut ChaCha8Rng::seed_from_u64(11), 5, 4, 512).unwrap();
        assert_eq!(a.words, b.words);
    }
}
