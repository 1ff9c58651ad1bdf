//! Membership in the quasivariety generated by the free left regular band,
//! decided by separating homomorphisms into the three-element band `H`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::band::{Band, Element};

/// The elements of `H`. `+` and `-` are left zeros; `0` acts as identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum HElem {
    Plus,
    Minus,
    Zero,
}

impl HElem {
    pub const ALL: [HElem; 3] = [HElem::Zero, HElem::Plus, HElem::Minus];
}

impl std::ops::Mul for HElem {
    type Output = HElem;

    fn mul(self, other: HElem) -> HElem {
        match self {
            HElem::Zero => other,
            x => x,
        }
    }
}

impl fmt::Display for HElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HElem::Plus => "+",
            HElem::Minus => "-",
            HElem::Zero => "0",
        })
    }
}

/// One homomorphism per separated pair, shared where one map separates many.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QvarCertificate {
    pub homomorphisms: Vec<Vec<HElem>>,
    /// `(x, y, k)`: homomorphism `k` sends `x` and `y` apart.
    pub separations: Vec<(Element, Element, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum QvarResult {
    Member(QvarCertificate),
    /// No homomorphism into `H` separates this pair.
    NotMember { x: Element, y: Element },
}

impl QvarResult {
    pub fn is_member(&self) -> bool {
        matches!(self, QvarResult::Member(_))
    }
}

pub fn is_homomorphism(band: &Band, phi: &[HElem]) -> bool {
    band.elements()
        .all(|x| band.elements().all(|y| phi[band.mul(x, y)] == phi[x] * phi[y]))
}

struct Search<'a> {
    band: &'a Band,
    value: Vec<Option<HElem>>,
    trail: Vec<Element>,
}

impl Search<'_> {
    /// Assigns and propagates every product that becomes determined.
    fn assign(&mut self, v: Element, h: HElem) -> bool {
        let mut queue = vec![(v, h)];
        while let Some((v, h)) = queue.pop() {
            match self.value[v] {
                Some(old) if old == h => continue,
                Some(_) => return false,
                None => {
                    self.value[v] = Some(h);
                    self.trail.push(v);
                }
            }
            for u in self.band.elements() {
                let Some(hu) = self.value[u] else { continue };
                queue.push((self.band.mul(u, v), hu * h));
                queue.push((self.band.mul(v, u), h * hu));
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().unwrap();
            self.value[v] = None;
        }
    }

    fn complete(&mut self) -> bool {
        let Some(v) = self.value.iter().position(Option::is_none) else { return true };
        for h in HElem::ALL {
            let mark = self.trail.len();
            if self.assign(v, h) && self.complete() {
                return true;
            }
            self.undo(mark);
        }
        false
    }
}

/// A homomorphism `band → H` with `φ(x) ≠ φ(y)`, if one exists.
pub fn separating_homomorphism(band: &Band, x: Element, y: Element) -> Option<Vec<HElem>> {
    for hx in HElem::ALL {
        for hy in HElem::ALL.into_iter().filter(|&h| h != hx) {
            let mut s = Search { band, value: vec![None; band.len()], trail: Vec::new() };
            if s.assign(x, hx) && s.assign(y, hy) && s.complete() {
                let phi: Vec<HElem> = s.value.into_iter().map(Option::unwrap).collect();
                debug_assert!(is_homomorphism(band, &phi));
                return Some(phi);
            }
        }
    }
    None
}

/// Whether every pair of distinct elements is separated by a homomorphism
/// into `H`, equivalently whether `band` embeds into a direct power of `H`.
/// The identity is treated as an ordinary element.
pub fn qvar_membership(band: &Band) -> QvarResult {
    let mut homs: Vec<Vec<HElem>> = Vec::new();
    let mut separations = Vec::new();
    for x in band.elements() {
        for y in x + 1..band.len() {
            let k = match homs.iter().position(|phi| phi[x] != phi[y]) {
                Some(k) => k,
                None => match separating_homomorphism(band, x, y) {
                    Some(phi) => {
                        homs.push(phi);
                        homs.len() - 1
                    }
                    None => return QvarResult::NotMember { x, y },
                },
            };
            separations.push((x, y, k));
        }
    }
    QvarResult::Member(QvarCertificate { homomorphisms: homs, separations })
}

/// Re-checks a certificate against the band.
pub fn verify_certificate(band: &Band, cert: &QvarCertificate) -> bool {
    cert.homomorphisms.iter().all(|phi| phi.len() == band.len() && is_homomorphism(band, phi))
        && band.elements().all(|x| {
            (x + 1..band.len()).all(|y| {
                cert.separations
                    .iter()
                    .any(|&(a, b, k)| (a, b) == (x, y) && cert.homomorphisms[k][x] != cert.homomorphisms[k][y])
            })
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn member(band: &Band) -> QvarCertificate {
        match qvar_membership(band) {
            QvarResult::Member(c) => {
                assert!(verify_certificate(band, &c));
                c
            }
            QvarResult::NotMember { x, y } => panic!("pair ({x}, {y}) not separated"),
        }
    }

    #[test]
    fn h_table() {
        use HElem::*;
        assert_eq!(Plus * Minus, Plus);
        assert_eq!(Minus * Zero, Minus);
        assert_eq!(Zero * Minus, Minus);
        assert_eq!(Zero * Zero, Zero);
    }

    #[test]
    fn h_band_is_member() {
        member(&fixtures::h_band());
    }

    #[test]
    fn diamond_is_member() {
        member(&fixtures::diamond());
    }

    #[test]
    fn band_b_is_member() {
        let c = member(&fixtures::band_b());
        assert!(!c.homomorphisms.is_empty());
    }

    #[test]
    fn tampered_certificate_fails() {
        let band = fixtures::diamond();
        let mut c = member(&band);
        c.homomorphisms[0] = vec![HElem::Plus, HElem::Minus, HElem::Zero, HElem::Zero];
        assert!(!verify_certificate(&band, &c));
    }
}
