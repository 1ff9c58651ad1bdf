//! Isomorphism of finite bands by backtracking.

use crate::band::{Band, Element};

/// Cheap isomorphism invariants of one element.
fn signature(band: &Band, x: Element) -> (usize, usize, usize, usize) {
    let above = band.elements().filter(|&y| band.leq(x, y)).count();
    let below = band.elements().filter(|&y| band.leq(y, x)).count();
    let fixes = band.elements().filter(|&y| band.mul(x, y) == x).count();
    let absorbs = band.elements().filter(|&y| band.mul(y, x) == x).count();
    (above, below, fixes, absorbs)
}

struct Search<'a> {
    a: &'a Band,
    b: &'a Band,
    candidates: Vec<Vec<Element>>,
    /// Pairs `(u, v)` of `a` with `uv = p`, indexed by `p`.
    factors: Vec<Vec<(Element, Element)>>,
    fwd: Vec<Option<Element>>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn consistent(&self, x: Element) -> bool {
        let fx = self.fwd[x].unwrap();
        let as_product = self.factors[x].iter().all(|&(u, v)| match (self.fwd[u], self.fwd[v]) {
            (Some(fu), Some(fv)) => self.b.mul(fu, fv) == fx,
            _ => true,
        });
        as_product && self.a.elements().all(|y| {
            let Some(fy) = self.fwd[y] else { return true };
            let check = |p: Element, q: Element| match self.fwd[p] {
                Some(fp) => fp == q,
                None => !self.used[q],
            };
            check(self.a.mul(x, y), self.b.mul(fx, fy)) && check(self.a.mul(y, x), self.b.mul(fy, fx))
        })
    }

    fn extend(&mut self, x: Element) -> bool {
        if x == self.a.len() {
            return true;
        }
        if self.fwd[x].is_some() {
            return self.extend(x + 1);
        }
        for i in 0..self.candidates[x].len() {
            let fx = self.candidates[x][i];
            if self.used[fx] {
                continue;
            }
            self.fwd[x] = Some(fx);
            self.used[fx] = true;
            if self.consistent(x) && self.extend(x + 1) {
                return true;
            }
            self.fwd[x] = None;
            self.used[fx] = false;
        }
        false
    }
}

/// An isomorphism `a → b` as an element table, sending identity to identity.
pub fn find_isomorphism(a: &Band, b: &Band) -> Option<Vec<Element>> {
    if a.len() != b.len() {
        return None;
    }
    let sig_b: Vec<_> = b.elements().map(|y| signature(b, y)).collect();
    let candidates: Vec<Vec<Element>> = a
        .elements()
        .map(|x| {
            let s = signature(a, x);
            b.elements().filter(|&y| sig_b[y] == s).collect()
        })
        .collect();
    let mut sa: Vec<_> = a.elements().map(|x| signature(a, x)).collect();
    let mut sb = sig_b.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }
    let mut factors = vec![Vec::new(); a.len()];
    for u in a.elements() {
        for v in a.elements() {
            factors[a.mul(u, v)].push((u, v));
        }
    }
    let mut s = Search { a, b, candidates, factors, fwd: vec![None; a.len()], used: vec![false; b.len()] };
    s.fwd[a.identity()] = Some(b.identity());
    s.used[b.identity()] = true;
    if !s.consistent(a.identity()) || !s.extend(0) {
        return None;
    }
    let f: Vec<Element> = s.fwd.into_iter().map(Option::unwrap).collect();
    debug_assert!(is_isomorphism(a, b, &f));
    Some(f)
}

pub fn is_isomorphism(a: &Band, b: &Band, f: &[Element]) -> bool {
    let mut seen = vec![false; b.len()];
    f.len() == a.len()
        && a.len() == b.len()
        && f.iter().all(|&y| y < b.len() && !std::mem::replace(&mut seen[y], true))
        && a.elements().all(|x| a.elements().all(|y| f[a.mul(x, y)] == b.mul(f[x], f[y])))
}

pub fn are_isomorphic(a: &Band, b: &Band) -> bool {
    find_isomorphism(a, b).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::close_under_product;
    use crate::fixtures;
    use crate::words::FreeWord;

    #[test]
    fn band_b_matches_closure_of_its_images() {
        let seeds: Vec<FreeWord> = ["a1", "a2 a1", "a2 a3 a1", "a1 a2", "a1 a2 a3", "a2 a1 a3"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        let sb = close_under_product(&seeds, true, 64).unwrap();
        let b = fixtures::band_b();
        let f = find_isomorphism(&b, &sb.band).unwrap();
        assert!(is_isomorphism(&b, &sb.band, &f));
    }

    #[test]
    fn non_isomorphic_pairs() {
        assert!(!are_isomorphic(&fixtures::diamond(), &fixtures::h_band()));
        assert!(!are_isomorphic(&fixtures::band_b(), &fixtures::diamond()));
        assert!(are_isomorphic(&fixtures::diamond(), &fixtures::diamond()));
    }

    #[test]
    fn relabelled_band_is_isomorphic() {
        let b = fixtures::h_band();
        // swap + and -
        let p = [0, 2, 1, 3];
        let rows: Vec<Vec<Element>> =
            (0..4).map(|x| (0..4).map(|y| p[b.mul(p[x], p[y])]).collect()).collect();
        let c = Band::new(rows, 0, None).unwrap();
        assert_eq!(find_isomorphism(&b, &c).map(|f| is_isomorphism(&b, &c, &f)), Some(true));
    }
}
