//! Acceptance criteria. `acceptance_report` prints one PASS/FAIL line per
//! criterion and asserts every criterion known to be attainable.

#![allow(clippy::needless_range_loop)]

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use lrb_core::analysis::Analysis;
use lrb_core::band::{Band, Element};
use lrb_core::closure::{close_under_product, Subband};
use lrb_core::document::BandDocument;
use lrb_core::embed::{decide_embeddable, embed_with_order, kernel, verify_embedding, Embedding, Verdict};
use lrb_core::enumerate::{all_lrb_tables, lrbs_up_to_isomorphism};
use lrb_core::fixtures;
use lrb_core::fuzz::{case_seed, case_subband};
use lrb_core::iso::{find_isomorphism, is_isomorphism};
use lrb_core::local_order::{find_local_linear_order, subband_local_order, verify_local_linear_order, LocalLinearOrder};
use lrb_core::qvar::{qvar_membership, verify_certificate, QvarResult};
use lrb_core::random::random_semilattice;
use lrb_core::semilattice::{nu, FiniteSemilattice};
use lrb_core::tree::ancestor_tree;
use lrb_core::words::FreeWord;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SEMILATTICE_SEED: u64 = 3;
const SEMILATTICE_COUNT: usize = 300;
const SEMILATTICE_MAX: usize = 8;
const FUZZ_SEED: u64 = 42;
const FUZZ_COUNT: usize = 200;
const FUZZ_GENERATORS: u32 = 5;
const FUZZ_MAX_SEEDS: usize = 4;
const FUZZ_CAP: usize = 512;
const COMPLETENESS_MAX: usize = 4;
const TIME_BUDGET_SECS: u64 = 60;

type Outcome = Result<String, String>;

fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn load_fixture(name: &str) -> Result<Band, String> {
    let text = std::fs::read_to_string(fixture_path(name)).map_err(|e| format!("{name}: {e}"))?;
    let doc = BandDocument::parse(&text).map_err(|e| format!("{name}: {e}"))?;
    doc.to_band(false).map_err(|e| format!("{name}: {e}"))
}

fn w(s: &str) -> FreeWord {
    s.parse().expect("test word")
}

/// Embeddable fixture bands, from files and from code.
fn fixture_bands() -> Vec<(String, Band)> {
    let mut out = Vec::new();
    for name in ["bandB", "H", "tworounds", "diamond"] {
        out.push((name.to_string(), load_fixture(name).expect("fixture loads")));
    }
    out.push(("two-element".into(), fixtures::two_element()));
    out.push(("trivial".into(), Band::trivial()));
    out
}

fn fuzz_subbands() -> Vec<(usize, Subband)> {
    (0..FUZZ_COUNT)
        .filter_map(|i| {
            case_subband(case_seed(FUZZ_SEED, i), FUZZ_GENERATORS, FUZZ_MAX_SEEDS, FUZZ_CAP).ok().map(|sb| (i, sb))
        })
        .collect()
}

fn incomparable(u: &FreeWord, v: &FreeWord) -> bool {
    let prefix = |a: &FreeWord, b: &FreeWord| a.letters().len() <= b.letters().len() && b.letters().starts_with(a.letters());
    !prefix(u, v) && !prefix(v, u)
}

fn equal_pairs(image: &[FreeWord]) -> BTreeSet<(Element, Element)> {
    let mut out = BTreeSet::new();
    for x in 0..image.len() {
        for y in x + 1..image.len() {
            if image[x] == image[y] {
                out.insert((x, y));
            }
        }
    }
    out
}

// ---------------------------------------------------------------- criterion 1

fn criterion_1() -> Outcome {
    let band = load_fixture("bandB")?;
    let analysis = Analysis::new(band.clone()).map_err(|e| e.to_string())?;
    let forced = "x2: y0 < x2\nx3: y0 < y1 < y2 < x3\ny1: y1 < y2\ny2: y1 < y2\n";
    let order = LocalLinearOrder::parse(forced, &analysis).map_err(|e| e.to_string())?;
    let e = embed_with_order(&analysis, order).map_err(|e| e.to_string())?;
    let expected = [
        ("x1", "a1"),
        ("x2", "a2 a1"),
        ("x3", "a2 a3 a1"),
        ("y0", "a1 a2"),
        ("y1", "a1 a2 a3"),
        ("y2", "a2 a1 a3"),
    ];
    for (label, word) in expected {
        let x = band.element_by_label(label).ok_or(format!("no {label}"))?;
        if e.initial.get(x) != &w(word) {
            return Err(format!("h({label}) = {}, expected {word}", e.initial.get(x)));
        }
    }
    if !kernel(&e.initial).is_empty() {
        return Err("initial kernel not empty".into());
    }
    if e.rounds != 0 || e.map != e.initial {
        return Err(format!("{} Modification rounds", e.rounds));
    }
    Ok("h table exact, kernel empty, 0 rounds".into())
}

// ---------------------------------------------------------------- criterion 2

fn criterion_2() -> Outcome {
    let band = load_fixture("bandBprime")?;
    let analysis = Analysis::new(band.clone()).map_err(|e| format!("not right hereditary: {e}"))?;
    let id = |l: &str| band.element_by_label(l).expect("label");
    let order = find_local_linear_order(&analysis).ok_or("no local linear order")?;
    let e = embed_with_order(&analysis, order).map_err(|e| e.to_string())?;
    let initial_kernel: BTreeSet<(Element, Element)> =
        [("x1", "x2"), ("y1", "y2"), ("y1", "y3"), ("y2", "y3")].iter().map(|&(a, b)| (id(a), id(b))).collect();
    if kernel(&e.initial) != initial_kernel {
        return Err(format!("initial kernel {:?}", kernel(&e.initial)));
    }
    if e.rounds != 2 {
        return Err(format!("{} rounds", e.rounds));
    }
    // t_c^d is written t:c:d:round, with c and d element indices (e = 0).
    let after_eps = [
        ("x1", "a1 t:0:1:1 t:0:-:1 t:0:2:1 t:0:3:1"),
        ("x2", "a1 t:0:2:1 t:0:-:1 t:0:1:1 t:0:3:1"),
        ("x3", "a2 t:0:3:1 t:0:-:1 t:0:1:1 t:0:2:1 a1"),
        ("y1", "a1 t:0:1:1 t:0:-:1 t:0:2:1 t:0:3:1 a2"),
        ("y2", "a1 t:0:1:1 t:0:-:1 t:0:2:1 t:0:3:1 a2"),
        ("y3", "a1 t:0:2:1 t:0:-:1 t:0:1:1 t:0:3:1 a2"),
    ];
    let after_x1 = [
        ("x1", "a1 t:0:1:1 t:0:-:1 t:0:2:1 t:0:3:1"),
        ("x2", "a1 t:0:2:1 t:0:-:1 t:0:1:1 t:0:3:1"),
        ("x3", "a2 t:1:4:2 t:1:-:2 t:1:5:2 t:0:3:1 t:0:-:1 t:0:1:1 t:0:2:1 a1"),
        ("y1", "a1 t:0:1:1 t:0:-:1 t:0:2:1 t:0:3:1 a2 t:1:4:2 t:1:-:2 t:1:5:2"),
        ("y2", "a1 t:0:1:1 t:0:-:1 t:0:2:1 t:0:3:1 a2 t:1:5:2 t:1:-:2 t:1:4:2"),
        ("y3", "a1 t:0:2:1 t:0:-:1 t:0:1:1 t:0:3:1 a2 t:1:-:2 t:1:4:2 t:1:5:2"),
    ];
    for (round, (site, expected)) in [("e", &after_eps), ("x1", &after_x1)].iter().enumerate() {
        let r = &e.trace[round];
        if r.c != id(site) {
            return Err(format!("round {} at {}", round + 1, band.label(r.c)));
        }
        for (label, word) in expected.iter() {
            if r.image[id(label)] != w(word) {
                return Err(format!("round {}: h({label}) = {}", round + 1, r.image[id(label)]));
            }
        }
    }
    if !kernel(&e.map).is_empty() {
        return Err("final kernel not empty".into());
    }
    Ok("kernel, both rounds and final map match".into())
}

// ---------------------------------------------------------------- criterion 3

fn sl_leq(l: &FiniteSemilattice, x: usize, y: usize) -> bool {
    l.join(x, y) == y
}

fn check_semilattice(l: &FiniteSemilattice) -> Result<(), String> {
    let n = l.len();
    let oracle: Vec<BTreeSet<usize>> = (0..n).map(|x| (0..n).filter(|&t| !sl_leq(l, x, t)).collect()).collect();
    let nu_map = nu(l);
    for x in 0..n {
        let got: BTreeSet<usize> = nu_map.image(x).letters().collect();
        if got != oracle[x] {
            return Err(format!("ν({x}) differs from its definition"));
        }
    }
    for x in 0..n {
        for y in 0..n {
            let joined: BTreeSet<usize> = oracle[x].union(&oracle[y]).copied().collect();
            if oracle[l.join(x, y)] != joined {
                return Err(format!("ν not a homomorphism at ({x}, {y})"));
            }
            if x != y && oracle[x] == oracle[y] {
                return Err(format!("ν not injective at ({x}, {y})"));
            }
            if !oracle[x].contains(&y) && !sl_leq(l, x, y) {
                return Err(format!("letter lemma fails at ({x}, {y})"));
            }
        }
    }
    let strict: Vec<(usize, usize)> =
        (0..n).flat_map(|x| (0..n).map(move |x2| (x, x2))).filter(|&(x, x2)| x != x2 && sl_leq(l, x, x2)).collect();
    let d = |(x, x2): (usize, usize)| -> BTreeSet<usize> { oracle[x2].difference(&oracle[x]).copied().collect() };
    for &p in &strict {
        for &q in &strict {
            let (dp, dq) = (d(p), d(q));
            if dp.is_subset(&dq) && !sl_leq(l, q.0, p.0) {
                return Err(format!("difference lemma fails at {p:?}, {q:?}"));
            }
            if dp == dq && p != q {
                return Err(format!("equal differences at {p:?} and {q:?}"));
            }
        }
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEMILATTICE_SEED);
    let mut sizes = BTreeMap::new();
    for i in 0..SEMILATTICE_COUNT {
        let l = random_semilattice(&mut rng, SEMILATTICE_MAX);
        if l.len() > SEMILATTICE_MAX {
            return Err(format!("semilattice {i} has {} elements", l.len()));
        }
        check_semilattice(&l).map_err(|e| format!("semilattice {i}: {e}"))?;
        *sizes.entry(l.len()).or_insert(0usize) += 1;
    }
    Ok(format!("{SEMILATTICE_COUNT} semilattices, sizes {sizes:?}"))
}

// ---------------------------------------------------------------- criterion 4

fn criterion_4() -> Outcome {
    let cases = fuzz_subbands();
    if cases.len() != FUZZ_COUNT {
        return Err(format!("only {} of {FUZZ_COUNT} closures within the cap", cases.len()));
    }
    for (i, sb) in &cases {
        ancestor_tree(&sb.band).map_err(|e| format!("case {i}: {e}"))?;
        let a = Analysis::new(sb.band.clone()).map_err(|e| format!("case {i}: {e}"))?;
        let order = subband_local_order(sb, &a).map_err(|e| format!("case {i}: {e}"))?;
        verify_local_linear_order(&a, &order).map_err(|e| format!("case {i}: {e}"))?;
    }
    let largest = cases.iter().map(|(_, sb)| sb.band.len()).max().unwrap_or(0);
    Ok(format!("{} subbands, largest {largest} elements", cases.len()))
}

// ---------------------------------------------------------------- criterion 5

fn round_trip(band: &Band, e: &Embedding) -> Result<(), String> {
    let seeds: Vec<FreeWord> = e.map.image.iter().filter(|w| !w.is_empty()).cloned().collect();
    let seeds = if seeds.is_empty() { vec![FreeWord::empty()] } else { seeds };
    let back = close_under_product(&seeds, true, band.len() + 1).map_err(|e| e.to_string())?;
    let f = find_isomorphism(band, &back.band).ok_or("closure of the witness is not isomorphic")?;
    if !is_isomorphism(band, &back.band, &f) {
        return Err("reported isomorphism is wrong".into());
    }
    Ok(())
}

fn embeddable_corpus() -> Vec<(String, Band, Embedding)> {
    let mut out = Vec::new();
    for (name, band) in fixture_bands() {
        if let Verdict::Embeddable(e) = decide_embeddable(&band) {
            out.push((name, band, *e));
        }
    }
    for (i, sb) in fuzz_subbands() {
        if let Verdict::Embeddable(e) = decide_embeddable(&sb.band) {
            out.push((format!("fuzz case {i}"), sb.band, *e));
        }
    }
    out
}

fn criterion_5(corpus: &[(String, Band, Embedding)]) -> Outcome {
    let expected = fixture_bands().len() - 1 + FUZZ_COUNT;
    if corpus.len() != expected {
        return Err(format!("{} embeddable inputs, expected {expected}", corpus.len()));
    }
    for (name, band, e) in corpus {
        round_trip(band, e).map_err(|m| format!("{name}: {m}"))?;
    }
    Ok(format!("{} witnesses close back to their band", corpus.len()))
}

// ---------------------------------------------------------------- criterion 6

fn check_rounds(e: &Embedding) -> Result<usize, String> {
    let mut prev = e.initial.image.clone();
    for (k, r) in e.trace.iter().enumerate() {
        let before = equal_pairs(&prev);
        let after = equal_pairs(&r.image);
        if !(after.is_subset(&before) && after.len() < before.len()) {
            return Err(format!("round {}: kernel {} -> {}", k + 1, before.len(), after.len()));
        }
        let recorded: BTreeSet<_> = r.kernel.iter().copied().collect();
        if recorded != after {
            return Err(format!("round {}: recorded kernel differs", k + 1));
        }
        for x in 0..prev.len() {
            for y in 0..prev.len() {
                if incomparable(&prev[x], &prev[y]) && !incomparable(&r.image[x], &r.image[y]) {
                    return Err(format!("round {}: ({x}, {y}) became comparable", k + 1));
                }
            }
        }
        prev = r.image.clone();
    }
    if !equal_pairs(&prev).is_empty() {
        return Err("final kernel not empty".into());
    }
    Ok(e.trace.len())
}

fn criterion_6(corpus: &[(String, Band, Embedding)]) -> Outcome {
    let mut runs = 0;
    let mut rounds = 0;
    let mut all: Vec<(String, Band)> = corpus.iter().map(|(n, b, _)| (n.clone(), b.clone())).collect();
    for k in 0..=COMPLETENESS_MAX {
        for (i, t) in all_lrb_tables(k).into_iter().enumerate() {
            all.push((format!("table {k}/{i}"), Band::new(t, 0, None).map_err(|e| e.to_string())?));
        }
    }
    for (i, b) in lrbs_up_to_isomorphism(COMPLETENESS_MAX + 1).into_iter().enumerate() {
        all.push((format!("class {}/{i}", COMPLETENESS_MAX + 1), b));
    }
    for (name, band) in &all {
        match decide_embeddable(band) {
            Verdict::Embeddable(e) => {
                rounds += check_rounds(&e).map_err(|m| format!("{name}: {m}"))?;
                runs += 1;
            }
            Verdict::Fault(f) => return Err(format!("{name}: {f}")),
            _ => {}
        }
    }
    if rounds == 0 {
        return Err("no Modification round exercised".into());
    }
    Ok(format!("{runs} runs, {rounds} rounds checked"))
}

// ---------------------------------------------------------------- criterion 7

/// Structure recomputed from the multiplication table alone.
struct Oracle {
    n: usize,
    alpha: Vec<Element>,
    s: Vec<BTreeSet<Element>>,
    /// `δ(s)` as the set of elements `u` whose letter is new in `s`.
    delta: Vec<BTreeSet<Element>>,
}

fn right_hereditary_oracle(band: &Band) -> Option<Oracle> {
    let n = band.len();
    let e = band.identity();
    let mul = |x, y| band.mul(x, y);
    let below = |x: Element, y: Element| x != y && mul(x, y) == y;
    let mut alpha = vec![e; n];
    for s in 0..n {
        if s == e {
            continue;
        }
        let lower: Vec<Element> = (0..n).filter(|&u| below(u, s)).collect();
        let covers: Vec<Element> =
            lower.iter().copied().filter(|&u| !lower.iter().any(|&v| below(u, v))).collect();
        if covers.len() != 1 {
            return None;
        }
        alpha[s] = covers[0];
    }
    let missing = |x: Element| -> BTreeSet<Element> { (0..n).filter(|&u| mul(u, x) != u).collect() };
    let delta: Vec<BTreeSet<Element>> =
        (0..n).map(|s| missing(s).difference(&missing(alpha[s])).copied().collect()).collect();
    let mut s = vec![BTreeSet::new(); n];
    for c in 0..n {
        if c == e {
            continue;
        }
        for x in 0..n {
            if x == e {
                continue;
            }
            let a = alpha[x];
            let meets = |d: Element| mul(x, d) == mul(a, d);
            if meets(c) && !(0..n).any(|d| below(d, c) && meets(d)) {
                s[c].insert(x);
            }
        }
    }
    Some(Oracle { n, alpha, s, delta })
}

impl Oracle {
    fn forced(&self, band: &Band, x: Element, y: Element) -> bool {
        let ay = self.alpha[y];
        (self.delta[x].is_subset(&self.delta[y]) && self.delta[x] != self.delta[y]) || band.mul(ay, x) == ay
    }

    fn locally_valid(&self, band: &Band, order: &[Element]) -> bool {
        (0..order.len()).all(|i| order[i + 1..].iter().all(|&x| !self.forced(band, x, order[i])))
    }

    fn consistent(&self, fam: &BTreeMap<Element, Vec<Element>>, b: Element, c: Element) -> bool {
        if !self.s[b].is_subset(&self.s[c]) {
            return true;
        }
        let pos = |x: Element| fam[&c].iter().position(|&y| y == x).unwrap();
        fam[&b].windows(2).all(|p| pos(p[0]) < pos(p[1]))
    }

    fn accepts(&self, band: &Band, fam: &BTreeMap<Element, Vec<Element>>) -> bool {
        fam.iter().all(|(&b, o)| {
            o.iter().copied().collect::<BTreeSet<_>>() == self.s[b] && self.locally_valid(band, o)
        }) && fam.keys().all(|&b| fam.keys().all(|&c| b == c || self.consistent(fam, b, c)))
    }

    /// Whether any family of linear orders satisfies all three conditions.
    fn exists(&self, band: &Band) -> bool {
        let sites: Vec<Element> = (0..self.n).filter(|&b| b != band.identity()).collect();
        let candidates: Vec<Vec<Vec<Element>>> = sites
            .iter()
            .map(|&b| {
                permutations(&self.s[b].iter().copied().collect::<Vec<_>>())
                    .into_iter()
                    .filter(|o| self.locally_valid(band, o))
                    .collect()
            })
            .collect();
        let mut fam = BTreeMap::new();
        self.extend(&sites, &candidates, 0, &mut fam)
    }

    fn extend(
        &self,
        sites: &[Element],
        candidates: &[Vec<Vec<Element>>],
        k: usize,
        fam: &mut BTreeMap<Element, Vec<Element>>,
    ) -> bool {
        if k == sites.len() {
            return true;
        }
        let b = sites[k];
        for o in &candidates[k] {
            fam.insert(b, o.clone());
            let ok = sites[..k].iter().all(|&c| self.consistent(fam, b, c) && self.consistent(fam, c, b));
            if ok && self.extend(sites, candidates, k + 1, fam) {
                return true;
            }
        }
        fam.remove(&b);
        false
    }
}

fn permutations(xs: &[Element]) -> Vec<Vec<Element>> {
    if xs.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..xs.len() {
        let mut rest = xs.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn criterion_7() -> Outcome {
    let mut tables = 0;
    let mut exists = 0;
    let mut not_rh = 0;
    for k in 0..=COMPLETENESS_MAX {
        for (i, t) in all_lrb_tables(k).into_iter().enumerate() {
            tables += 1;
            let name = format!("table {k}/{i}");
            let band = Band::new(t, 0, None).map_err(|e| format!("{name}: {e}"))?;
            let oracle = right_hereditary_oracle(&band);
            let analysis = Analysis::new(band.clone()).ok();
            if oracle.is_some() != analysis.is_some() {
                return Err(format!("{name}: right hereditary check disagrees"));
            }
            let verdict = decide_embeddable(&band);
            let (Some(oracle), Some(analysis)) = (oracle, analysis) else {
                not_rh += 1;
                if !matches!(verdict, Verdict::NotRightHereditary(_)) {
                    return Err(format!("{name}: verdict {}", verdict.kind()));
                }
                continue;
            };
            for b in band.non_identity() {
                let lib: BTreeSet<Element> = analysis.ssets.get(b).iter().copied().collect();
                if lib != oracle.s[b] || analysis.alpha(b) != oracle.alpha[b] {
                    return Err(format!("{name}: S-set or parent of {b} differs"));
                }
            }
            let brute = oracle.exists(&band);
            let found = find_local_linear_order(&analysis);
            if brute != found.is_some() {
                return Err(format!("{name}: search {} but brute force {brute}", found.is_some()));
            }
            if let Some(o) = &found {
                let fam: BTreeMap<Element, Vec<Element>> =
                    band.non_identity().map(|b| (b, o.order(b).to_vec())).collect();
                if !oracle.accepts(&band, &fam) {
                    return Err(format!("{name}: returned order fails the brute-force check"));
                }
            }
            exists += brute as usize;
            match verdict {
                Verdict::Embeddable(e) => {
                    verify_embedding(&band, &e.map.image).map_err(|f| format!("{name}: {f}"))?;
                    let distinct: std::collections::HashSet<&FreeWord> = e.map.image.iter().collect();
                    if distinct.len() != band.len() {
                        return Err(format!("{name}: witness not injective"));
                    }
                    for x in band.elements() {
                        for y in band.elements() {
                            if e.map.image[band.mul(x, y)] != e.map.image[x].product(&e.map.image[y]) {
                                return Err(format!("{name}: witness not a homomorphism at ({x}, {y})"));
                            }
                        }
                    }
                }
                Verdict::NoLocalLinearOrder if !brute => {}
                v => return Err(format!("{name}: verdict {}", v.kind())),
            }
        }
    }
    Ok(format!("{tables} tables: {exists} with an order family, {not_rh} not right hereditary"))
}

// ---------------------------------------------------------------- criterion 8

fn qvar_ok(band: &Band) -> bool {
    match qvar_membership(band) {
        QvarResult::Member(cert) => verify_certificate(band, &cert),
        QvarResult::NotMember { .. } => false,
    }
}

fn criterion_8(corpus: &[(String, Band, Embedding)]) -> Outcome {
    let diamond = load_fixture("diamond")?;
    if !matches!(decide_embeddable(&diamond), Verdict::NotRightHereditary(_)) {
        return Err("diamond is not rejected as not right hereditary".into());
    }
    if !qvar_ok(&diamond) {
        return Err("diamond fails the quasivariety test".into());
    }
    for (name, band, _) in corpus {
        if !qvar_ok(band) {
            return Err(format!("{name}: embeddable but not in the quasivariety"));
        }
    }
    Ok(format!("diamond separates; {} embeddable inputs in the quasivariety", corpus.len()))
}

// ---------------------------------------------------------------- report

/// Criteria that cannot pass; reported but not asserted.
const UNATTAINABLE: [usize; 1] = [2];

#[test]
fn acceptance_report() {
    let start = Instant::now();
    let corpus = embeddable_corpus();
    let results: Vec<(usize, &str, Outcome)> = vec![
        (1, "B golden h table under the forced order", criterion_1()),
        (2, "B-prime golden kernel and two rounds", criterion_2()),
        (3, "nu embedding and its two lemmas on random semilattices", criterion_3()),
        (4, "subbands of a free band carry a verified local order", criterion_4()),
        (5, "witness closures are isomorphic to the input", criterion_5(&corpus)),
        (6, "kernel shrinks and incomparability survives every round", criterion_6(&corpus)),
        (7, "order search agrees with brute force on all small tables", criterion_7()),
        (8, "diamond separates the quasivariety from embeddability", criterion_8(&corpus)),
    ];
    let elapsed = start.elapsed();
    let mut report = String::new();
    for (n, title, r) in &results {
        match r {
            Ok(detail) => report.push_str(&format!("PASS criterion {n}: {title} ({detail})\n")),
            Err(why) => report.push_str(&format!("FAIL criterion {n}: {title} ({why})\n")),
        }
    }
    report.push_str(&format!("acceptance time {:.2}s (budget {TIME_BUDGET_SECS}s)\n", elapsed.as_secs_f64()));
    // Written to the raw handle so the report shows without --nocapture.
    let _ = std::io::stderr().write_all(report.as_bytes());
    for (n, _, r) in &results {
        if !UNATTAINABLE.contains(n) {
            assert!(r.is_ok(), "criterion {n}: {}", r.as_ref().unwrap_err());
        }
    }
    assert!(elapsed.as_secs() < TIME_BUDGET_SECS);
}

#[test]
#[ignore = "the B-prime table is not associative"]
fn criterion_2_band_b_prime() {
    criterion_2().unwrap();
}

#[test]
fn band_b_prime_fails_at_validation() {
    let err = criterion_2().unwrap_err();
    assert!(err.contains("associativ"), "{err}");
}
