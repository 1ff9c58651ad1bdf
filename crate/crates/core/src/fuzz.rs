//! Randomized end-to-end checks on subbands of the free band.
//!
//! Every finite subband of the free left regular band is right hereditary
//! and carries a local linear order, so each random closure must pass the
//! whole pipeline. Any failure is a bug and is reported with the seed that
//! reproduces it.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::analysis::Analysis;
use crate::closure::{close_under_product, ClosureError, Subband};
use crate::embed::{decide_embeddable, verify_embedding, Verdict};
use crate::iso::find_isomorphism;
use crate::local_order::{subband_local_order, verify_local_linear_order};
use crate::qvar::qvar_membership;
use crate::random::random_subband;
use crate::words::FreeWord;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzConfig {
    pub seed: u64,
    pub count: usize,
    pub generators: u32,
    pub max_seeds: usize,
    pub cap: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzFailure {
    pub case: usize,
    pub case_seed: u64,
    pub words: Vec<String>,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzSummary {
    pub passed: usize,
    /// `(case, case_seed)` of closures over the cap.
    pub skipped: Vec<(usize, u64)>,
    pub total_rounds: usize,
    pub failure: Option<FuzzFailure>,
}

/// The seed of case `case`, replayable with [`fuzz_case`].
pub fn case_seed(seed: u64, case: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(case as u64)
}

pub enum CaseOutcome {
    Passed { rounds: usize },
    Skipped,
    Failed { words: Vec<FreeWord>, message: String },
}

/// The closure behind one case seed.
pub fn case_subband(case_seed: u64, generators: u32, max_seeds: usize, cap: usize) -> Result<Subband, ClosureError> {
    random_subband(&mut ChaCha8Rng::seed_from_u64(case_seed), generators, max_seeds, cap)
}

/// Runs every check on one subband.
pub fn check_subband(sb: &Subband) -> Result<usize, String> {
    let analysis = Analysis::new(sb.band.clone()).map_err(|e| format!("not right hereditary: {e}"))?;
    let order = subband_local_order(sb, &analysis).map_err(|e| format!("order construction: {e}"))?;
    verify_local_linear_order(&analysis, &order).map_err(|v| format!("word order rejected: {v}"))?;
    let e = match decide_embeddable(&sb.band) {
        Verdict::Embeddable(e) => e,
        v => return Err(format!("verdict {}", v.kind())),
    };
    verify_embedding(&sb.band, &e.map.image).map_err(|f| format!("witness: {f}"))?;
    let seeds: Vec<FreeWord> = e.map.image.iter().filter(|w| !w.is_empty()).cloned().collect();
    let back = if seeds.is_empty() {
        close_under_product(&[FreeWord::empty()], true, sb.band.len() + 1)
    } else {
        close_under_product(&seeds, true, sb.band.len() + 1)
    }
    .map_err(|e| format!("witness closure: {e}"))?;
    if find_isomorphism(&sb.band, &back.band).is_none() {
        return Err("witness closure is not isomorphic to the input".into());
    }
    let back_analysis = Analysis::new(back.band.clone()).map_err(|e| format!("witness closure: {e}"))?;
    let back_order = subband_local_order(&back, &back_analysis).map_err(|e| format!("witness order: {e}"))?;
    verify_local_linear_order(&back_analysis, &back_order).map_err(|v| format!("witness order: {v}"))?;
    if !qvar_membership(&sb.band).is_member() {
        return Err("embeddable band fails the quasivariety test".into());
    }
    Ok(e.rounds)
}

pub fn fuzz_case(case_seed: u64, generators: u32, max_seeds: usize, cap: usize) -> CaseOutcome {
    let sb = match case_subband(case_seed, generators, max_seeds, cap) {
        Ok(sb) => sb,
        Err(ClosureError::CapExceeded(_)) => return CaseOutcome::Skipped,
        Err(e) => return CaseOutcome::Failed { words: Vec::new(), message: e.to_string() },
    };
    match check_subband(&sb) {
        Ok(rounds) => CaseOutcome::Passed { rounds },
        Err(message) => CaseOutcome::Failed { words: sb.words.clone(), message },
    }
}

/// Runs `config.count` cases and stops at the first failure.
pub fn fuzz_subbands(config: &FuzzConfig) -> FuzzSummary {
    let mut summary = FuzzSummary::default();
    for case in 0..config.count {
        let s = case_seed(config.seed, case);
        match fuzz_case(s, config.generators, config.max_seeds, config.cap) {
            CaseOutcome::Passed { rounds } => {
                summary.passed += 1;
                summary.total_rounds += rounds;
            }
            CaseOutcome::Skipped => summary.skipped.push((case, s)),
            CaseOutcome::Failed { words, message } => {
                summary.failure = Some(FuzzFailure {
                    case,
                    case_seed: s,
                    words: words.iter().map(|w| w.to_string()).collect(),
                    message,
                });
                break;
            }
        }
    }
    summary
}
