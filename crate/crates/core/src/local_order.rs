//! Local linear orders: one linear order `⊏_b` on every set `S_b`.
//!
//! A family is a local linear order when, for all `x, y ∈ S_b`:
//!
//! 1. `δ_ν(x) ⊊ δ_ν(y)` implies `x ⊏_b y`;
//! 2. `σ(x) ⊆ σ(α(y))` implies `x ⊏_b y`;
//! 3. whenever `S_b ⊆ S_c`, `x ⊏_b y` implies `x ⊏_c y`.
//!
//! Conditions 1 and 2 do not depend on `b`, only on membership. The search
//! first tries one global order (a topological sort of every forced pair);
//! restrictions of a single order satisfy condition 3 for free. If the forced
//! pairs are cyclic, an exhaustive backtracking search over pair orientations
//! decides the question.

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeMap, BinaryHeap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::Analysis;
use crate::band::Element;
use crate::closure::Subband;
use crate::words::{canonical_compare, delta_word, separator, FreeWord, WordError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalLinearOrder {
    order_of: Vec<Vec<Element>>,
}

impl LocalLinearOrder {
    /// `order_of[b]` lists `S_b` from first to last; the identity's entry is
    /// empty.
    pub fn new(order_of: Vec<Vec<Element>>) -> Self {
        LocalLinearOrder { order_of }
    }

    pub fn order(&self, b: Element) -> &[Element] {
        &self.order_of[b]
    }

    pub fn position(&self, b: Element, x: Element) -> Option<usize> {
        self.order_of[b].iter().position(|&s| s == x)
    }

    /// `x ⊏_b y`.
    pub fn before(&self, b: Element, x: Element, y: Element) -> bool {
        match (self.position(b, x), self.position(b, y)) {
            (Some(i), Some(j)) => i < j,
            _ => false,
        }
    }

    /// One line per non-identity `b`: `b: s1 < s2 < ...`, using labels.
    pub fn render(&self, analysis: &Analysis) -> String {
        let band = &analysis.band;
        let mut out = String::new();
        for b in band.non_identity() {
            let items: Vec<&str> = self.order_of[b].iter().map(|&x| band.label(x)).collect();
            out.push_str(&format!("{}: {}\n", band.label(b), items.join(" < ")));
        }
        out
    }

    /// Parses the [`render`](Self::render) format. Lines for singleton sets
    /// may be omitted. The result is not verified.
    pub fn parse(text: &str, analysis: &Analysis) -> Result<Self, OrderParseError> {
        let band = &analysis.band;
        let lookup = |l: &str, line: usize| {
            band.element_by_label(l)
                .ok_or_else(|| OrderParseError::UnknownLabel { line, label: l.to_string() })
        };
        let mut order_of: Vec<Option<Vec<Element>>> = vec![None; band.len()];
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (head, tail) =
                content.split_once(':').ok_or(OrderParseError::Syntax { line })?;
            let b = lookup(head.trim(), line)?;
            let items = tail
                .split('<')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|l| lookup(l, line))
                .collect::<Result<Vec<_>, _>>()?;
            if order_of[b].replace(items).is_some() {
                return Err(OrderParseError::Duplicate { line, label: head.trim().to_string() });
            }
        }
        let mut out = Vec::with_capacity(band.len());
        for b in band.elements() {
            let set = analysis.ssets.get(b);
            out.push(match order_of[b].take() {
                Some(v) => v,
                None if set.len() <= 1 => set.to_vec(),
                None => {
                    return Err(OrderParseError::Missing { label: band.label(b).to_string() })
                }
            });
        }
        Ok(LocalLinearOrder { order_of: out })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderParseError {
    #[error("line {line}: expected `b: s1 < s2 < ...`")]
    Syntax { line: usize },
    #[error("line {line}: unknown element `{label}`")]
    UnknownLabel { line: usize, label: String },
    #[error("line {line}: second order given for `{label}`")]
    Duplicate { line: usize, label: String },
    #[error("no order given for `{label}`, whose set has several elements")]
    Missing { label: String },
}

/// Which of the three defining conditions failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrderViolation {
    /// `order(b)` is not a permutation of `S_b`.
    Malformed { b: Element },
    /// Condition 1: `δ_ν(x) ⊊ δ_ν(y)` but `y ⊏_b x`.
    DeltaContainment { b: Element, x: Element, y: Element },
    /// Condition 2: `σ(x) ⊆ σ(α(y))` but `y ⊏_b x`.
    SupportContainment { b: Element, x: Element, y: Element },
    /// Condition 3: `S_b ⊆ S_c`, `x ⊏_b y` but `y ⊏_c x`.
    Restriction { b: Element, c: Element, x: Element, y: Element },
}

impl OrderViolation {
    /// 1, 2 or 3 for the condition broken; 0 for a malformed family.
    pub fn condition(&self) -> u8 {
        match self {
            OrderViolation::Malformed { .. } => 0,
            OrderViolation::DeltaContainment { .. } => 1,
            OrderViolation::SupportContainment { .. } => 2,
            OrderViolation::Restriction { .. } => 3,
        }
    }
}

impl fmt::Display for OrderViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderViolation::Malformed { b } => write!(f, "order for {b} is not a permutation of S_{b}"),
            OrderViolation::DeltaContainment { b, x, y } => {
                write!(f, "condition 1 at b={b}: δ({x}) ⊊ δ({y}) but {x} is not before {y}")
            }
            OrderViolation::SupportContainment { b, x, y } => {
                write!(f, "condition 2 at b={b}: σ({x}) ⊆ σ(α({y})) but {x} is not before {y}")
            }
            OrderViolation::Restriction { b, c, x, y } => write!(
                f,
                "condition 3 at (b={b}, c={c}): {x} before {y} in S_{b} but not in S_{c}"
            ),
        }
    }
}

/// Whether conditions 1 or 2 force `x` before `y` in any `S_b` holding both.
pub fn forced_before(analysis: &Analysis, x: Element, y: Element) -> bool {
    x != y
        && (analysis.delta_nu(x).is_proper_subset(analysis.delta_nu(y))
            || analysis.support_leq(x, analysis.alpha(y)))
}

/// Two elements forced into both orders within one `S_b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForcedConflict {
    pub b: Element,
    pub x: Element,
    pub y: Element,
}

/// Every pair `(x, y)` in `S_b` forced by conditions 1 or 2, for each `b`.
pub fn base_constraints(
    analysis: &Analysis,
) -> Result<BTreeMap<Element, Vec<(Element, Element)>>, ForcedConflict> {
    let mut out = BTreeMap::new();
    for b in analysis.band.non_identity() {
        let set = analysis.ssets.get(b);
        let mut pairs = Vec::new();
        for &x in set {
            for &y in set {
                if forced_before(analysis, x, y) {
                    if forced_before(analysis, y, x) {
                        return Err(ForcedConflict { b, x: x.min(y), y: x.max(y) });
                    }
                    pairs.push((x, y));
                }
            }
        }
        out.insert(b, pairs);
    }
    Ok(out)
}

/// Checks all three conditions exhaustively and reports the first failure.
pub fn verify_local_linear_order(
    analysis: &Analysis,
    llo: &LocalLinearOrder,
) -> Result<(), OrderViolation> {
    let band = &analysis.band;
    if llo.order_of.len() != band.len() {
        return Err(OrderViolation::Malformed { b: band.identity() });
    }
    for b in band.non_identity() {
        let mut got = llo.order(b).to_vec();
        got.sort_unstable();
        if got != analysis.ssets.get(b) {
            return Err(OrderViolation::Malformed { b });
        }
    }
    for b in band.non_identity() {
        let order = llo.order(b);
        for (i, &y) in order.iter().enumerate() {
            for &x in &order[i + 1..] {
                // x comes after y; neither condition may force x before y.
                if analysis.delta_nu(x).is_proper_subset(analysis.delta_nu(y)) {
                    return Err(OrderViolation::DeltaContainment { b, x, y });
                }
                if analysis.support_leq(x, analysis.alpha(y)) {
                    return Err(OrderViolation::SupportContainment { b, x, y });
                }
            }
        }
    }
    for b in band.non_identity() {
        for c in band.non_identity() {
            if b == c || !analysis.ssets.is_subset(b, c) {
                continue;
            }
            let order = llo.order(b);
            for (i, &x) in order.iter().enumerate() {
                for &y in &order[i + 1..] {
                    if !llo.before(c, x, y) {
                        return Err(OrderViolation::Restriction { b, c, x, y });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Which search tier produced the answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchTier {
    /// One topological order of all forced pairs, restricted to each set.
    Global,
    /// Exhaustive backtracking over pair orientations.
    Backtracking,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub order: Option<LocalLinearOrder>,
    pub tier: SearchTier,
    /// Whether the forced pairs formed an acyclic digraph.
    pub global_acyclic: bool,
}

/// Finds a local linear order if one exists.
pub fn find_local_linear_order(analysis: &Analysis) -> Option<LocalLinearOrder> {
    search(analysis).order
}

/// Runs both tiers as needed and reports which one answered.
pub fn search(analysis: &Analysis) -> SearchOutcome {
    if let Some(order) = global_order(analysis) {
        debug_assert_eq!(verify_local_linear_order(analysis, &order), Ok(()));
        return SearchOutcome { order: Some(order), tier: SearchTier::Global, global_acyclic: true };
    }
    let order = backtracking_order(analysis);
    if let Some(o) = &order {
        assert_eq!(verify_local_linear_order(analysis, o), Ok(()), "backtracking produced an invalid order");
    }
    SearchOutcome { order, tier: SearchTier::Backtracking, global_acyclic: false }
}

/// Topologically sorts every forced pair at once, smallest index first among
/// unconstrained elements. `None` if the forced pairs contain a cycle.
pub fn global_order(analysis: &Analysis) -> Option<LocalLinearOrder> {
    let band = &analysis.band;
    let n = band.len();
    let constraints = base_constraints(analysis).ok()?;
    let mut succ = vec![Vec::new(); n];
    let mut indegree = vec![0usize; n];
    let mut edges: Vec<(Element, Element)> = constraints.into_values().flatten().collect();
    edges.sort_unstable();
    edges.dedup();
    for (x, y) in edges {
        succ[x].push(y);
        indegree[y] += 1;
    }
    let mut ready: BinaryHeap<Reverse<Element>> =
        band.non_identity().filter(|&x| indegree[x] == 0).map(Reverse).collect();
    let mut rank = vec![usize::MAX; n];
    let mut next = 0;
    while let Some(Reverse(x)) = ready.pop() {
        rank[x] = next;
        next += 1;
        for &y in &succ[x] {
            indegree[y] -= 1;
            if indegree[y] == 0 {
                ready.push(Reverse(y));
            }
        }
    }
    if next != n - 1 {
        return None;
    }
    let order_of = band
        .elements()
        .map(|b| {
            let mut set = analysis.ssets.get(b).to_vec();
            set.sort_by_key(|&x| rank[x]);
            set
        })
        .collect();
    Some(LocalLinearOrder { order_of })
}

/// The pair-orientation problem behind the backtracking tier.
///
/// One boolean per equivalence class of (set, pair) slots, where a pair in
/// `S_b` is tied to the same pair in every `S_c ⊇ S_b`. `true` orients the
/// pair as (smaller index, larger index).
struct PairProblem {
    sets: Vec<Vec<Element>>,
    /// `slot[set][i][j]` for `i < j` positions within the set.
    slot: Vec<Vec<Vec<usize>>>,
    classes: usize,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut c = x;
    while parent[c] != r {
        let next = parent[c];
        parent[c] = r;
        c = next;
    }
    r
}

impl PairProblem {
    fn new(analysis: &Analysis) -> Self {
        let mut sets: Vec<Vec<Element>> =
            analysis.band.non_identity().map(|b| analysis.ssets.get(b).to_vec()).collect();
        sets.sort();
        sets.dedup();
        let mut raw = Vec::new();
        let mut count = 0;
        for s in &sets {
            let k = s.len();
            let mut m = vec![vec![usize::MAX; k]; k];
            for (i, row) in m.iter_mut().enumerate() {
                for cell in row.iter_mut().skip(i + 1) {
                    *cell = count;
                    count += 1;
                }
            }
            raw.push(m);
        }
        let mut parent: Vec<usize> = (0..count).collect();
        for (a, sa) in sets.iter().enumerate() {
            for (c, sc) in sets.iter().enumerate() {
                if a == c || !sa.iter().all(|x| sc.binary_search(x).is_ok()) {
                    continue;
                }
                for i in 0..sa.len() {
                    for j in i + 1..sa.len() {
                        let ci = sc.binary_search(&sa[i]).unwrap();
                        let cj = sc.binary_search(&sa[j]).unwrap();
                        let (p, q) = (find(&mut parent, raw[a][i][j]), find(&mut parent, raw[c][ci][cj]));
                        parent[p] = q;
                    }
                }
            }
        }
        let mut class_id = BTreeMap::new();
        let mut slot = raw;
        for m in slot.iter_mut() {
            for row in m.iter_mut() {
                for cell in row.iter_mut().filter(|c| **c != usize::MAX) {
                    let root = find(&mut parent, *cell);
                    let next = class_id.len();
                    *cell = *class_id.entry(root).or_insert(next);
                }
            }
        }
        PairProblem { sets, slot, classes: class_id.len() }
    }

    /// Orientation of positions `(i, j)` of set `s` under `assign`:
    /// `Some(true)` iff the element at `i` comes first.
    fn get(&self, assign: &[Option<bool>], s: usize, i: usize, j: usize) -> Option<bool> {
        if i < j {
            assign[self.slot[s][i][j]]
        } else {
            assign[self.slot[s][j][i]].map(|v| !v)
        }
    }

    /// Records "position i before position j" in set `s`. `false` on conflict.
    fn set(&self, assign: &mut [Option<bool>], s: usize, i: usize, j: usize, changed: &mut bool) -> bool {
        let (cell, value) = if i < j { (self.slot[s][i][j], true) } else { (self.slot[s][j][i], false) };
        match assign[cell] {
            Some(v) => v == value,
            None => {
                assign[cell] = Some(value);
                *changed = true;
                true
            }
        }
    }

    /// Closes every set under transitivity. `false` on conflict.
    fn propagate(&self, assign: &mut [Option<bool>]) -> bool {
        loop {
            let mut changed = false;
            for s in 0..self.sets.len() {
                let k = self.sets[s].len();
                for i in 0..k {
                    for j in 0..k {
                        if i == j || self.get(assign, s, i, j) != Some(true) {
                            continue;
                        }
                        for l in 0..k {
                            if l == i || l == j || self.get(assign, s, j, l) != Some(true) {
                                continue;
                            }
                            if !self.set(assign, s, i, l, &mut changed) {
                                return false;
                            }
                        }
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn solve(&self, assign: &mut Vec<Option<bool>>) -> bool {
        if !self.propagate(assign) {
            return false;
        }
        let Some(free) = assign.iter().position(Option::is_none) else { return true };
        for value in [true, false] {
            let mut trial = assign.clone();
            trial[free] = Some(value);
            if self.solve(&mut trial) {
                *assign = trial;
                return true;
            }
        }
        false
    }
}

/// Exhaustive search; `None` only if no local linear order exists.
pub fn backtracking_order(analysis: &Analysis) -> Option<LocalLinearOrder> {
    let problem = PairProblem::new(analysis);
    let mut assign = vec![None; problem.classes];
    let mut changed = false;
    for (s, set) in problem.sets.iter().enumerate() {
        for (i, &x) in set.iter().enumerate() {
            for (j, &y) in set.iter().enumerate() {
                if forced_before(analysis, x, y) && !problem.set(&mut assign, s, i, j, &mut changed) {
                    return None;
                }
            }
        }
    }
    if !problem.solve(&mut assign) {
        return None;
    }
    let orders: Vec<Vec<Element>> = problem
        .sets
        .iter()
        .enumerate()
        .map(|(s, set)| {
            let mut idx: Vec<usize> = (0..set.len()).collect();
            // Rank = number of elements placed before it.
            idx.sort_by_key(|&i| {
                (0..set.len()).filter(|&j| j != i && problem.get(&assign, s, j, i) == Some(true)).count()
            });
            idx.into_iter().map(|i| set[i]).collect()
        })
        .collect();
    let order_of = analysis
        .band
        .elements()
        .map(|b| {
            let set = analysis.ssets.get(b);
            if set.is_empty() {
                return Vec::new();
            }
            let s = problem.sets.binary_search_by(|p| p.as_slice().cmp(set)).expect("set listed");
            orders[s].clone()
        })
        .collect();
    Some(LocalLinearOrder { order_of })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubbandOrderError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("order on S_{b} is not transitive at ({x}, {y}, {z})")]
    NotTransitive { b: Element, x: Element, y: Element, z: Element },
}

/// The order on `S_b` that every finite subband of the free band carries:
/// elements with different `Δ` letter sets are compared by the separator
/// test in the word `b`, elements with equal `Δ` letter sets by reversed
/// `<^ℱ`.
pub fn subband_local_order(
    subband: &Subband,
    analysis: &Analysis,
) -> Result<LocalLinearOrder, SubbandOrderError> {
    let band = &analysis.band;
    let deltas: Vec<Option<FreeWord>> = band
        .elements()
        .map(|x| {
            analysis
                .tree
                .parent(x)
                .map(|p| delta_word(subband.word(x), subband.word(p)))
                .transpose()
        })
        .collect::<Result<_, _>>()?;
    let mut order_of = vec![Vec::new(); band.len()];
    for b in band.non_identity() {
        let set = analysis.ssets.get(b);
        let k = set.len();
        let mut before = vec![vec![false; k]; k];
        for i in 0..k {
            for j in 0..k {
                if i == j {
                    continue;
                }
                let (x, y) = (set[i], set[j]);
                let dx = deltas[x].as_ref().expect("non-identity");
                let dy = deltas[y].as_ref().expect("non-identity");
                before[i][j] = if dx.letter_set() != dy.letter_set() {
                    separator(dx, dy, subband.word(b))?.is_some()
                } else {
                    canonical_compare(subband.word(y), subband.word(x)) == Ordering::Less
                };
            }
        }
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    if before[i][j] && before[j][l] && !before[i][l] {
                        return Err(SubbandOrderError::NotTransitive {
                            b,
                            x: set[i],
                            y: set[j],
                            z: set[l],
                        });
                    }
                }
            }
        }
        let mut idx: Vec<usize> = (0..k).collect();
        idx.sort_by_key(|&i| (0..k).filter(|&j| before[j][i]).count());
        order_of[b] = idx.into_iter().map(|i| set[i]).collect();
    }
    Ok(LocalLinearOrder { order_of })
}
