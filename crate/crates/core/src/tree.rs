//! The Hasse diagram of `≤` and the ancestor map of right hereditary bands.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::band::{Band, Element};

/// An element with two incomparable lower covers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NotRightHereditary {
    pub element: Element,
    pub covers: (Element, Element),
}

impl fmt::Display for NotRightHereditary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "element {} has incomparable lower covers {} and {}",
            self.element, self.covers.0, self.covers.1
        )
    }
}

impl std::error::Error for NotRightHereditary {}

/// The Hasse diagram of `≤` for a right hereditary band: a tree rooted at
/// the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AncestorTree {
    root: Element,
    parent: Vec<Option<Element>>,
    children: Vec<Vec<Element>>,
}

/// Lower covers of `s` under `≤`, in index order.
pub fn lower_covers(band: &Band, s: Element) -> Vec<Element> {
    let below: Vec<Element> = band.elements().filter(|&x| band.lt(x, s)).collect();
    below
        .iter()
        .copied()
        .filter(|&x| !below.iter().any(|&y| band.lt(x, y)))
        .collect()
}

impl AncestorTree {
    /// Computes the transitive reduction of `≤` and checks that every
    /// non-identity element has exactly one lower cover.
    pub fn new(band: &Band) -> Result<Self, NotRightHereditary> {
        let n = band.len();
        let mut parent = vec![None; n];
        let mut children = vec![Vec::new(); n];
        for s in band.non_identity() {
            let covers = lower_covers(band, s);
            match covers.as_slice() {
                [p] => {
                    parent[s] = Some(*p);
                    children[*p].push(s);
                }
                [p, q, ..] => {
                    return Err(NotRightHereditary { element: s, covers: (*p, *q) });
                }
                [] => unreachable!("the identity lies strictly below every other element"),
            }
        }
        Ok(AncestorTree { root: band.identity(), parent, children })
    }

    pub fn root(&self) -> Element {
        self.root
    }

    /// The ancestor `α(s)`; `None` only for the identity.
    pub fn parent(&self, s: Element) -> Option<Element> {
        self.parent[s]
    }

    /// `α(s)` for a non-identity element.
    pub fn alpha(&self, s: Element) -> Element {
        self.parent[s].expect("the identity has no ancestor")
    }

    /// Descendants (immediate children) of `s` in index order.
    pub fn children(&self, s: Element) -> &[Element] {
        &self.children[s]
    }

    /// Path from the root down to `s`, both inclusive.
    pub fn chain(&self, s: Element) -> Vec<Element> {
        let mut out = vec![s];
        let mut cur = s;
        while let Some(p) = self.parent[cur] {
            out.push(p);
            cur = p;
        }
        out.reverse();
        out
    }

    pub fn depth(&self, s: Element) -> usize {
        self.chain(s).len() - 1
    }

    /// Breadth-first order from the root, children visited in index order.
    pub fn bfs(&self) -> Vec<Element> {
        let mut out = Vec::with_capacity(self.parent.len());
        let mut queue = VecDeque::from([self.root]);
        while let Some(x) = queue.pop_front() {
            out.push(x);
            queue.extend(self.children[x].iter().copied());
        }
        out
    }
}

/// Computes the ancestor tree or a witness that the band is not right
/// hereditary.
pub fn ancestor_tree(band: &Band) -> Result<AncestorTree, NotRightHereditary> {
    AncestorTree::new(band)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn band_b_tree_matches_figure() {
        let b = fixtures::band_b();
        let t = ancestor_tree(&b).unwrap();
        let el = |s: &str| b.element_by_label(s).unwrap();
        let parent = |s: &str| b.label(t.alpha(el(s))).to_string();
        assert_eq!(parent("y0"), "x1");
        assert_eq!(parent("y1"), "y0");
        assert_eq!(parent("x1"), "e");
        assert_eq!(parent("x2"), "e");
        assert_eq!(parent("x3"), "e");
        assert_eq!(parent("y2"), "x2");
        assert_eq!(t.chain(el("y1")), vec![0, el("x1"), el("y0"), el("y1")]);
        assert_eq!(t.bfs(), vec![0, 1, 2, 3, 4, 6, 5]);
    }

    #[test]
    fn trivial_band_has_empty_tree() {
        let t = ancestor_tree(&Band::trivial()).unwrap();
        assert_eq!(t.parent(0), None);
        assert!(t.children(0).is_empty());
        assert_eq!(t.bfs(), vec![0]);
    }

    #[test]
    fn diamond_is_not_right_hereditary() {
        let err = ancestor_tree(&fixtures::diamond()).unwrap_err();
        assert_eq!(err, NotRightHereditary { element: 3, covers: (1, 2) });
    }

    #[test]
    fn parent_is_a_cover() {
        let b = fixtures::band_b();
        let t = ancestor_tree(&b).unwrap();
        for s in b.non_identity() {
            let p = t.alpha(s);
            assert!(b.lt(p, s));
            assert!(!b.elements().any(|x| b.lt(p, x) && b.lt(x, s)));
            assert_eq!(t.chain(s)[0], b.identity());
        }
    }
}
