//! The sets `S_c`: elements whose identification with their ancestor under
//! `∼` first happens at `c`.

use serde::{Deserialize, Serialize};

use crate::band::{Band, Element};
use crate::tree::AncestorTree;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SSets {
    sets: Vec<Vec<Element>>,
}

impl SSets {
    /// `S_c = { s ≠ e : s ∼_c α(s), and s ≁_{c′} α(s) for every c′ < c }`.
    ///
    /// `c′` ranges over every element strictly below `c`, not only the
    /// ancestor chain of `c`.
    pub fn new(band: &Band, tree: &AncestorTree) -> Self {
        let mut sets = vec![Vec::new(); band.len()];
        for c in band.non_identity() {
            let below: Vec<Element> = band.elements().filter(|&x| band.lt(x, c)).collect();
            sets[c] = band
                .non_identity()
                .filter(|&s| {
                    let a = tree.alpha(s);
                    band.sim(c, s, a) && below.iter().all(|&d| !band.sim(d, s, a))
                })
                .collect();
            debug_assert!(sets[c].contains(&c));
        }
        SSets { sets }
    }

    /// `S_c` in index order; empty for the identity.
    pub fn get(&self, c: Element) -> &[Element] {
        &self.sets[c]
    }

    pub fn contains(&self, c: Element, s: Element) -> bool {
        self.sets[c].binary_search(&s).is_ok()
    }

    /// `S_b ⊆ S_c` as plain sets.
    pub fn is_subset(&self, b: Element, c: Element) -> bool {
        self.sets[b].iter().all(|&s| self.contains(c, s))
    }
}

pub fn s_sets(band: &Band, tree: &AncestorTree) -> SSets {
    SSets::new(band, tree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::tree::ancestor_tree;

    fn named(b: &Band, s: &SSets, c: &str) -> Vec<String> {
        let mut v: Vec<String> =
            s.get(b.element_by_label(c).unwrap()).iter().map(|&x| b.label(x).to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn band_b_sets() {
        let b = fixtures::band_b();
        let t = ancestor_tree(&b).unwrap();
        let s = s_sets(&b, &t);
        assert_eq!(named(&b, &s, "x1"), ["x1"]);
        assert_eq!(named(&b, &s, "x2"), ["x2", "y0"]);
        assert_eq!(named(&b, &s, "x3"), ["x3", "y0", "y1", "y2"]);
        assert_eq!(named(&b, &s, "y0"), ["y0"]);
        assert_eq!(named(&b, &s, "y1"), ["y1", "y2"]);
        assert_eq!(named(&b, &s, "y2"), ["y1", "y2"]);
        assert!(s.get(0).is_empty());
    }

    #[test]
    fn every_c_lies_in_its_own_set() {
        let b = fixtures::band_b();
        let t = ancestor_tree(&b).unwrap();
        let s = s_sets(&b, &t);
        for c in b.non_identity() {
            assert!(s.contains(c, c));
            for &x in s.get(c) {
                let a = t.alpha(x);
                assert!(b.sim(c, x, a));
                for d in b.elements().filter(|&d| b.lt(d, c)) {
                    assert!(!b.sim(d, x, a));
                }
            }
        }
        assert!(s.is_subset(b.element_by_label("y1").unwrap(), b.element_by_label("x3").unwrap()));
        assert!(!s.is_subset(b.element_by_label("x2").unwrap(), b.element_by_label("x3").unwrap()));
    }
}
