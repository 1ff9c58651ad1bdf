//! The map `h` into the free left regular band and its refinement into an
//! embedding.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::Analysis;
use crate::band::{AxiomViolation, Band, BandError, Element};
use crate::local_order::{find_local_linear_order, verify_local_linear_order, LocalLinearOrder, OrderViolation};
use crate::tree::NotRightHereditary;
use crate::words::{arrow, fw_leq, AlphabetRegistry, FreeWord, Letter};

/// `χ(c)` flattened: each element of the vector with the chain element whose
/// set it came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiVector {
    pub entries: Vec<(Element, Element)>,
}

impl ChiVector {
    pub fn elements(&self) -> Vec<Element> {
        self.entries.iter().map(|&(y, _)| y).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum EmbedFault {
    #[error("χ({c}) lists {element} twice")]
    RepeatedInChi { c: Element, element: Element },
    #[error("supplied order is not a local linear order: {0}")]
    InvalidOrder(OrderViolation),
    #[error("h({x}{y}) ≠ h({x})h({y})")]
    NotHomomorphism { x: Element, y: Element },
    #[error("letters of h({c}) do not match ν(σ({c}))")]
    SupportMismatch { c: Element },
    #[error("modification at {c}: part sets overlap or leave H_c")]
    PartsOverlap { c: Element },
    #[error("modification at {c}: images of children {x}, {y} still comparable")]
    ChildrenComparable { c: Element, x: Element, y: Element },
    #[error("modification at {c}: kernel did not strictly shrink")]
    KernelNotShrinking { c: Element },
    #[error("modification at {c}: images of {x}, {y} became comparable")]
    IncomparabilityLost { c: Element, x: Element, y: Element },
    #[error("embedding loop exceeded {0} rounds")]
    RoundBound(usize),
    #[error("final map is not an embedding: {0}")]
    Verification(EmbeddingFailure),
}

/// `χ(c) = (χ(α(c)), y_1, …, y_n)` with `y_1 ⊏_c … ⊏_c y_n` enumerating `S_c`.
pub fn chi(analysis: &Analysis, llo: &LocalLinearOrder, c: Element) -> Result<ChiVector, EmbedFault> {
    let mut entries = Vec::new();
    let mut seen = BTreeSet::new();
    for owner in analysis.tree.chain(c) {
        for &y in llo.order(owner) {
            if !seen.insert(y) {
                return Err(EmbedFault::RepeatedInChi { c, element: y });
            }
            entries.push((y, owner));
        }
    }
    Ok(ChiVector { entries })
}

/// A map from band elements to free words with the letters it has used.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementMap {
    pub image: Vec<FreeWord>,
    pub registry: AlphabetRegistry,
    /// Number of Modification rounds applied.
    pub round: u32,
}

impl ElementMap {
    pub fn from_images(image: Vec<FreeWord>) -> Self {
        let mut registry = AlphabetRegistry::new();
        for w in &image {
            for &l in w.letters() {
                registry.intern(l);
            }
        }
        ElementMap { image, registry, round: 0 }
    }

    pub fn get(&self, x: Element) -> &FreeWord {
        &self.image[x]
    }

    /// Distinct letters occurring in the images.
    pub fn rank(&self) -> usize {
        self.image.iter().flat_map(|w| w.letters().iter().copied()).collect::<BTreeSet<Letter>>().len()
    }

    /// `label = word` per element.
    pub fn render(&self, band: &Band) -> String {
        band.elements().map(|x| format!("{} = {}\n", band.label(x), self.image[x])).collect()
    }

    /// Parses [`render`](Self::render) output. Every element must appear once.
    pub fn parse(text: &str, band: &Band) -> Result<Self, MapParseError> {
        let mut image: Vec<Option<FreeWord>> = vec![None; band.len()];
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (label, word) = content.split_once('=').ok_or(MapParseError::Syntax { line })?;
            let label = label.trim();
            let x = band
                .element_by_label(label)
                .ok_or_else(|| MapParseError::UnknownLabel { line, label: label.to_string() })?;
            let w: FreeWord = word
                .trim()
                .parse()
                .map_err(|e: crate::words::WordError| MapParseError::Word { line, message: e.to_string() })?;
            if image[x].replace(w).is_some() {
                return Err(MapParseError::Duplicate { line, label: label.to_string() });
            }
        }
        let image = image
            .into_iter()
            .enumerate()
            .map(|(x, w)| w.ok_or_else(|| MapParseError::Missing { label: band.label(x).to_string() }))
            .collect::<Result<_, _>>()?;
        Ok(ElementMap::from_images(image))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapParseError {
    #[error("line {line}: expected `label = word`")]
    Syntax { line: usize },
    #[error("line {line}: unknown element `{label}`")]
    UnknownLabel { line: usize, label: String },
    #[error("line {line}: {message}")]
    Word { line: usize, message: String },
    #[error("line {line}: second image given for `{label}`")]
    Duplicate { line: usize, label: String },
    #[error("no image given for `{label}`")]
    Missing { label: String },
}

fn check_homomorphism(band: &Band, image: &[FreeWord]) -> Option<(Element, Element)> {
    for x in band.elements() {
        for y in band.elements() {
            if image[band.mul(x, y)] != image[x].product(&image[y]) {
                return Some((x, y));
            }
        }
    }
    None
}

/// `h(ε) = ε` and `h(c) = h(α(c)) · →δ(y_1) ⋯ →δ(y_n)` over `S_c` in `⊏_c`
/// order, with the letter `𝔞_t` sent to `a_k` for `k` the rank of `t`.
pub fn build_h(analysis: &Analysis, llo: &LocalLinearOrder) -> Result<ElementMap, EmbedFault> {
    let band = &analysis.band;
    let letter_of = |t| Letter::Base(analysis.generator_of(t));
    let mut image = vec![FreeWord::empty(); band.len()];
    for c in analysis.tree.bfs() {
        let Some(parent) = analysis.tree.parent(c) else { continue };
        let mut w = image[parent].clone();
        for &y in llo.order(c) {
            w = w.product(&arrow(analysis.delta_nu(y).letters(), letter_of));
        }
        image[c] = w;
    }
    for c in band.elements() {
        let want: BTreeSet<Letter> = analysis.nu_of(c).letters().map(letter_of).collect();
        if image[c].letter_set() != want {
            return Err(EmbedFault::SupportMismatch { c });
        }
    }
    if let Some((x, y)) = check_homomorphism(band, &image) {
        return Err(EmbedFault::NotHomomorphism { x, y });
    }
    Ok(ElementMap::from_images(image))
}

/// Unordered pairs `(s1, s2)`, `s1 < s2`, with equal images.
pub fn kernel(map: &ElementMap) -> BTreeSet<(Element, Element)> {
    let n = map.image.len();
    let mut out = BTreeSet::new();
    for x in 0..n {
        for y in x + 1..n {
            if map.image[x] == map.image[y] {
                out.insert((x, y));
            }
        }
    }
    out
}

fn comparable(u: &FreeWord, v: &FreeWord) -> bool {
    fw_leq(u, v) || fw_leq(v, u)
}

/// One application of Modification, as recorded in a trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Round {
    pub c: Element,
    /// Letters substituted in this round.
    pub substituted: Vec<Letter>,
    /// `S_{cx}` for each child `x`, then `S_{c∅}` under `None`.
    pub parts: Vec<(Option<Element>, Vec<Element>)>,
    pub image: Vec<FreeWord>,
    pub kernel: Vec<(Element, Element)>,
}

/// Modification at `c`: every letter `a` outside `h(c)` in an image of
/// `s ∈ S_{cx}` becomes `a t_c^x t′_c`. Checks every property the procedure
/// is meant to guarantee and returns the new map with its trace entry.
pub fn modification(band: &Band, analysis: &Analysis, map: &ElementMap, c: Element) -> Result<(ElementMap, Round), EmbedFault> {
    let children = analysis.tree.children(c).to_vec();
    let hc = map.get(c).letter_set();
    let big_c: BTreeSet<Letter> = map
        .image
        .iter()
        .flat_map(|w| w.letters().iter().copied())
        .filter(|l| !hc.contains(l))
        .collect();

    let mut registry = map.registry.clone();
    let round = registry.begin_round();
    let t_empty = registry.fresh(round, c, None);
    let t_child: Vec<Letter> = children.iter().map(|&b| registry.fresh(round, c, Some(b))).collect();
    let t_prime: Vec<Letter> = std::iter::once(t_empty).chain(t_child.iter().copied()).collect();

    let h_set: BTreeSet<Element> = band
        .elements()
        .filter(|&s| map.get(s).letters().iter().any(|l| big_c.contains(l)))
        .collect();
    let mut tag: Vec<Option<Letter>> = vec![None; band.len()];
    let mut parts = Vec::new();
    for (i, &b) in children.iter().enumerate() {
        let part: Vec<Element> = band
            .elements()
            .filter(|&s| {
                let cs = band.mul(c, s);
                band.elements().any(|y| band.leq(b, y) && band.mul(y, s) == cs)
            })
            .collect();
        for &s in &part {
            if tag[s].is_some() || !h_set.contains(&s) {
                return Err(EmbedFault::PartsOverlap { c });
            }
            tag[s] = Some(t_child[i]);
        }
        parts.push((Some(b), part));
    }
    let rest: Vec<Element> = h_set.iter().copied().filter(|&s| tag[s].is_none()).collect();
    for &s in &rest {
        tag[s] = Some(t_empty);
    }
    parts.push((None, rest));

    let image: Vec<FreeWord> = band
        .elements()
        .map(|s| match tag[s] {
            None => map.get(s).clone(),
            Some(tx) => map
                .get(s)
                .letters()
                .iter()
                .flat_map(|&a| {
                    if big_c.contains(&a) {
                        let mut block = vec![a, tx];
                        block.extend(t_prime.iter().copied());
                        block
                    } else {
                        vec![a]
                    }
                })
                .collect(),
        })
        .collect();
    let next = ElementMap { image, registry, round: map.round + 1 };

    if let Some((x, y)) = check_homomorphism(band, &next.image) {
        return Err(EmbedFault::NotHomomorphism { x, y });
    }
    for (i, &x) in children.iter().enumerate() {
        for &y in &children[i + 1..] {
            if comparable(next.get(x), next.get(y)) {
                return Err(EmbedFault::ChildrenComparable { c, x, y });
            }
        }
    }
    let before = kernel(map);
    let after = kernel(&next);
    if !(after.is_subset(&before) && after.len() < before.len()) {
        return Err(EmbedFault::KernelNotShrinking { c });
    }
    for x in band.elements() {
        for y in x + 1..band.len() {
            if !comparable(map.get(x), map.get(y)) && comparable(next.get(x), next.get(y)) {
                return Err(EmbedFault::IncomparabilityLost { c, x, y });
            }
        }
    }
    let entry = Round {
        c,
        substituted: big_c.into_iter().collect(),
        parts,
        image: next.image.clone(),
        kernel: after.into_iter().collect(),
    };
    Ok((next, entry))
}

/// The first element in breadth-first order with two children whose images
/// are prefix-comparable.
pub fn next_modification_site(analysis: &Analysis, map: &ElementMap) -> Option<Element> {
    analysis.tree.bfs().into_iter().find(|&c| {
        let ch = analysis.tree.children(c);
        ch.iter()
            .enumerate()
            .any(|(i, &x)| ch[i + 1..].iter().any(|&y| comparable(map.get(x), map.get(y))))
    })
}

/// Applies Modification until no element has two comparable children.
pub fn run_embedding_algorithm(analysis: &Analysis, initial: ElementMap) -> Result<(ElementMap, Vec<Round>), EmbedFault> {
    let bound = kernel(&initial).len() + 1;
    let mut map = initial;
    let mut trace = Vec::new();
    while let Some(c) = next_modification_site(analysis, &map) {
        if trace.len() >= bound {
            return Err(EmbedFault::RoundBound(bound));
        }
        let (next, entry) = modification(&analysis.band, analysis, &map, c)?;
        map = next;
        trace.push(entry);
    }
    Ok((map, trace))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FailureKind {
    IdentityNotEmpty,
    NotHomomorphism,
    NotInjective,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingFailure {
    pub kind: FailureKind,
    pub witness: (Element, Element),
}

impl fmt::Display for EmbeddingFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, y) = self.witness;
        match self.kind {
            FailureKind::IdentityNotEmpty => write!(f, "identity {x} is not sent to the empty word"),
            FailureKind::NotHomomorphism => write!(f, "product of {x} and {y} is not preserved"),
            FailureKind::NotInjective => write!(f, "{x} and {y} have the same image"),
        }
    }
}

/// Exhaustive check that `image` is an injective monoid homomorphism.
pub fn verify_embedding(band: &Band, image: &[FreeWord]) -> Result<(), EmbeddingFailure> {
    let e = band.identity();
    if !image[e].is_empty() {
        return Err(EmbeddingFailure { kind: FailureKind::IdentityNotEmpty, witness: (e, e) });
    }
    if let Some(w) = check_homomorphism(band, image) {
        return Err(EmbeddingFailure { kind: FailureKind::NotHomomorphism, witness: w });
    }
    for x in band.elements() {
        for y in x + 1..band.len() {
            if image[x] == image[y] {
                return Err(EmbeddingFailure { kind: FailureKind::NotInjective, witness: (x, y) });
            }
        }
    }
    Ok(())
}

/// A verified embedding with everything that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub order: LocalLinearOrder,
    pub initial: ElementMap,
    pub map: ElementMap,
    pub rounds: usize,
    pub rank: usize,
    pub trace: Vec<Round>,
}

/// Builds `h` from `order` and refines it into an embedding.
pub fn embed_with_order(analysis: &Analysis, order: LocalLinearOrder) -> Result<Embedding, EmbedFault> {
    verify_local_linear_order(analysis, &order).map_err(EmbedFault::InvalidOrder)?;
    for c in analysis.band.non_identity() {
        chi(analysis, &order, c)?;
    }
    let initial = build_h(analysis, &order)?;
    let (map, trace) = run_embedding_algorithm(analysis, initial.clone())?;
    verify_embedding(&analysis.band, &map.image).map_err(EmbedFault::Verification)?;
    Ok(Embedding { rounds: trace.len(), rank: map.rank(), order, initial, map, trace })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum Verdict {
    NotLrb(Vec<AxiomViolation>),
    NotRightHereditary(NotRightHereditary),
    NoLocalLinearOrder,
    Embeddable(Box<Embedding>),
    /// One of the internal checks failed. Never expected; reported rather
    /// than hidden.
    Fault(EmbedFault),
}

impl Verdict {
    pub fn is_embeddable(&self) -> bool {
        matches!(self, Verdict::Embeddable(_))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Verdict::NotLrb(_) => "not-lrb",
            Verdict::NotRightHereditary(_) => "not-right-hereditary",
            Verdict::NoLocalLinearOrder => "no-local-linear-order",
            Verdict::Embeddable(_) => "embeddable",
            Verdict::Fault(_) => "internal-fault",
        }
    }
}

/// The full decision procedure on a validated band.
pub fn decide_embeddable(band: &Band) -> Verdict {
    let analysis = match Analysis::new(band.clone()) {
        Ok(a) => a,
        Err(w) => return Verdict::NotRightHereditary(w),
    };
    let Some(order) = find_local_linear_order(&analysis) else {
        return Verdict::NoLocalLinearOrder;
    };
    match embed_with_order(&analysis, order) {
        Ok(e) => Verdict::Embeddable(Box::new(e)),
        Err(f) => Verdict::Fault(f),
    }
}

/// Validates a raw table first; axiom failures become [`Verdict::NotLrb`].
pub fn decide_table(table: Vec<Vec<Element>>, identity: Element, labels: Option<Vec<String>>) -> Result<Verdict, BandError> {
    match Band::new(table, identity, labels) {
        Ok(b) => Ok(decide_embeddable(&b)),
        Err(BandError::Axioms(v)) => Ok(Verdict::NotLrb(v)),
        Err(e) => Err(e),
    }
}
