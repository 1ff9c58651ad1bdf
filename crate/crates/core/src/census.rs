//! Classification of every small left regular band with identity.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::analysis::Analysis;
use crate::band::{Band, Element};
use crate::embed::{decide_embeddable, verify_embedding, Verdict};
use crate::enumerate::lrbs_up_to_isomorphism;
use crate::local_order::search;
use crate::qvar::qvar_membership;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    /// Number of non-identity elements.
    pub size: usize,
    pub index: usize,
    pub verdict: String,
    pub rounds: Option<usize>,
    pub rank: Option<usize>,
    /// Whether the single global order sufficed; `None` when the band is not
    /// right hereditary.
    pub global_order: Option<bool>,
    pub qvar: bool,
    /// Same verdict after a random relabelling of the non-identity elements.
    pub relabel_consistent: bool,
    pub table: String,
}

impl CensusRow {
    /// The local order search needed backtracking and still succeeded.
    pub fn tiers_disagree(&self) -> bool {
        self.global_order == Some(false) && self.verdict == "embeddable"
    }
}

pub const CSV_HEADER: &str = "size,index,verdict,rounds,rank,global_order,qvar,relabel_consistent,table";

impl CensusRow {
    pub fn csv(&self) -> String {
        let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.size,
            self.index,
            self.verdict,
            opt(self.rounds),
            opt(self.rank),
            self.global_order.map(|b| b.to_string()).unwrap_or_default(),
            self.qvar,
            self.relabel_consistent,
            self.table
        )
    }
}

/// Rows separated by `/`, entries by spaces.
pub fn compact_table(band: &Band) -> String {
    band.rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("/")
}

/// `band` with the non-identity elements permuted by `perm` (identity at 0).
pub fn relabel(band: &Band, perm: &[Element]) -> Band {
    let n = band.len();
    let f = |x: Element| if x == 0 { 0 } else { perm[x - 1] };
    let mut rows = vec![vec![0; n]; n];
    for x in 0..n {
        for y in 0..n {
            rows[f(x)][f(y)] = f(band.mul(x, y));
        }
    }
    Band::new(rows, 0, None).expect("relabelling preserves the axioms")
}

pub fn classify(band: &Band, size: usize, index: usize, rng: &mut ChaCha8Rng) -> CensusRow {
    let verdict = decide_embeddable(band);
    let (rounds, rank) = match &verdict {
        Verdict::Embeddable(e) => {
            assert_eq!(verify_embedding(band, &e.map.image), Ok(()));
            (Some(e.rounds), Some(e.rank))
        }
        _ => (None, None),
    };
    let global_order = Analysis::new(band.clone()).ok().map(|a| search(&a).global_acyclic);
    let mut perm: Vec<Element> = (1..band.len()).collect();
    perm.shuffle(rng);
    let relabelled = decide_embeddable(&relabel(band, &perm));
    CensusRow {
        size,
        index,
        verdict: verdict.kind().to_string(),
        rounds,
        rank,
        global_order,
        qvar: qvar_membership(band).is_member(),
        relabel_consistent: relabelled.kind() == verdict.kind(),
        table: compact_table(band),
    }
}

/// Every isomorphism class with `0..=max_size` non-identity elements.
pub fn run_census(max_size: usize, seed: u64) -> Vec<CensusRow> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for size in 0..=max_size {
        for (index, band) in lrbs_up_to_isomorphism(size).iter().enumerate() {
            out.push(classify(band, size, index, &mut rng));
        }
    }
    out
}
