//! The support semilattice: the quotient of a band by mutual `⪯`.

use serde::{Deserialize, Serialize};

use crate::band::{Band, Element};
use crate::semilattice::{ClassId, FiniteSemilattice};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportQuotient {
    class_of: Vec<ClassId>,
    classes: Vec<Vec<Element>>,
    lattice: FiniteSemilattice,
}

impl SupportQuotient {
    /// Classes are numbered by their smallest element index.
    pub fn new(band: &Band) -> Self {
        let n = band.len();
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<Element>> = Vec::new();
        for x in band.elements() {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let members: Vec<Element> = band.elements().filter(|&y| band.approx(x, y)).collect();
            for &y in &members {
                class_of[y] = id;
            }
            classes.push(members);
        }
        let m = classes.len();
        let mut join = vec![vec![0; m]; m];
        for (cx, xs) in classes.iter().enumerate() {
            for (cy, ys) in classes.iter().enumerate() {
                let j = class_of[band.mul(xs[0], ys[0])];
                for &x in xs {
                    for &y in ys {
                        assert_eq!(class_of[band.mul(x, y)], j, "σ(xy) is not well defined");
                    }
                }
                join[cx][cy] = j;
            }
        }
        let lattice = FiniteSemilattice::new(join, class_of[band.identity()])
            .expect("support quotient of a left regular band is a semilattice");
        SupportQuotient { class_of, classes, lattice }
    }

    /// `σ(x)`.
    pub fn class_of(&self, x: Element) -> ClassId {
        self.class_of[x]
    }

    pub fn classes(&self) -> &[Vec<Element>] {
        &self.classes
    }

    pub fn lattice(&self) -> &FiniteSemilattice {
        &self.lattice
    }
}

pub fn support_quotient(band: &Band) -> SupportQuotient {
    SupportQuotient::new(band)
}
