//! Everything derived from a right hereditary band that the local order
//! search and the embedder need, computed once.

use serde::{Deserialize, Serialize};

use crate::band::{Band, Element};
use crate::semilattice::{nu, ClassId, NuMap, SemWord};
use crate::ssets::SSets;
use crate::support::SupportQuotient;
use crate::tree::{AncestorTree, NotRightHereditary};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Analysis {
    pub band: Band,
    pub tree: AncestorTree,
    pub quotient: SupportQuotient,
    pub nu: NuMap,
    pub ssets: SSets,
    delta: Vec<SemWord>,
    generator: Vec<u32>,
}

impl Analysis {
    pub fn new(band: Band) -> Result<Self, NotRightHereditary> {
        let tree = AncestorTree::new(&band)?;
        let quotient = SupportQuotient::new(&band);
        let nu = nu(quotient.lattice());
        let ssets = SSets::new(&band, &tree);
        let delta = band
            .elements()
            .map(|s| match tree.parent(s) {
                None => SemWord::new(),
                Some(a) => nu
                    .image(quotient.class_of(s))
                    .difference(nu.image(quotient.class_of(a))),
            })
            .collect();
        let mut generator = vec![0; quotient.classes().len()];
        for (pos, class) in quotient.lattice().rank_order().into_iter().enumerate() {
            generator[class] = pos as u32 + 1;
        }
        Ok(Analysis { band, tree, quotient, nu, ssets, delta, generator })
    }

    /// `δ_ν(s) = ν(σ(s)) ∖ ν(σ(α(s)))`, empty for the identity.
    pub fn delta_nu(&self, s: Element) -> &SemWord {
        &self.delta[s]
    }

    /// `ν(σ(s))`.
    pub fn nu_of(&self, s: Element) -> &SemWord {
        self.nu.image(self.quotient.class_of(s))
    }

    /// `σ(x) ⊆ σ(y)`.
    pub fn support_leq(&self, x: Element, y: Element) -> bool {
        self.quotient
            .lattice()
            .leq(self.quotient.class_of(x), self.quotient.class_of(y))
    }

    /// Index `k` of the free generator `a_k` that the letter `𝔞_t` maps to.
    /// Classes are numbered `1..` by ascending height, ties by class id.
    pub fn generator_of(&self, class: ClassId) -> u32 {
        self.generator[class]
    }

    pub fn alpha(&self, s: Element) -> Element {
        self.tree.alpha(s)
    }
}

/// `δ_ν(s)`; `None` for the identity.
pub fn delta_nu(analysis: &Analysis, s: Element) -> Option<&SemWord> {
    (s != analysis.band.identity()).then(|| analysis.delta_nu(s))
}
