mod report;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lrb_core::analysis::Analysis;
use lrb_core::band::{Band, BandError};
use lrb_core::census::{run_census, CSV_HEADER};
use lrb_core::closure::DEFAULT_CLOSURE_CAP;
use lrb_core::document::{BandDocument, DocumentError};
use lrb_core::embed::{decide_embeddable, embed_with_order, verify_embedding, ElementMap, Verdict};
use lrb_core::fuzz::{fuzz_subbands, FuzzConfig};
use lrb_core::local_order::{find_local_linear_order, LocalLinearOrder};
use lrb_core::qvar::qvar_membership;
use lrb_core::words::FreeWord;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "lrb", version, about = "Embeddings of finite left regular bands into free left regular bands")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Treat the table as having no identity and adjoin one.
    #[arg(long, global = true)]
    adjoin_identity: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the band axioms.
    Validate { file: PathBuf },
    /// Ancestor tree, support classes, nu, delta, S-sets and a local linear order.
    Analyze { file: PathBuf },
    /// Run the full decision procedure and print a witness embedding.
    Embed {
        file: PathBuf,
        /// Use this local linear order instead of searching for one.
        #[arg(long)]
        order: Option<PathBuf>,
        /// Show chi vectors and every Modification round.
        #[arg(long)]
        trace: bool,
    },
    /// Re-check a witness: either a JSON report from `embed --json`, or a
    /// band file followed by `label = word` lines.
    Verify { input: PathBuf, witness: Option<PathBuf> },
    /// Decide membership in the quasivariety of the free left regular band.
    Qvar { file: PathBuf },
    /// Classify every band with up to `max-size` non-identity elements (CSV).
    Census {
        #[arg(long, default_value_t = 4)]
        max_size: usize,
        /// Seed for the relabelling cross-check.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random subbands of a free band through the whole pipeline.
    Fuzz {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 5)]
        generators: u32,
        #[arg(long, default_value_t = 4)]
        max_seeds: usize,
        #[arg(long, default_value_t = DEFAULT_CLOSURE_CAP)]
        cap: usize,
    },
}

/// Input problems; reported on stderr with exit status 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

enum Loaded {
    Band(Band),
    NotLrb(Vec<String>, Vec<lrb_core::band::AxiomViolation>),
}

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load(path: &Path, adjoin: bool) -> Result<Loaded, InputError> {
    let doc = BandDocument::parse(&read(path)?).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    match doc.to_band(adjoin) {
        Ok(b) => Ok(Loaded::Band(b)),
        Err(DocumentError::Band(BandError::Axioms(v))) => {
            let mut labels = doc.elements.clone();
            if adjoin || doc.identity.is_none() {
                labels.insert(0, doc.adjoined_identity_label());
            }
            Ok(Loaded::NotLrb(labels, v))
        }
        Err(e) => Err(InputError(format!("{}: {e}", path.display()))),
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn out(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn emit(json_mode: bool, text: String, value: Value) {
    if json_mode {
        out(&format!("{}\n", serde_json::to_string_pretty(&value).expect("json")));
    } else {
        out(&text);
    }
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode, InputError> {
    let json_mode = cli.json;
    let adjoin = cli.adjoin_identity;
    match cli.command {
        Command::Validate { file } => match load(&file, adjoin)? {
            Loaded::Band(b) => {
                emit(
                    json_mode,
                    format!("valid left regular band with {} elements\n", b.len()),
                    json!({"valid": true, "elements": b.labels()}),
                );
                Ok(status(true))
            }
            Loaded::NotLrb(labels, v) => {
                emit(
                    json_mode,
                    report::violations_text(&labels, &v),
                    json!({"valid": false, "violations": report::violations_json(&labels, &v)}),
                );
                Ok(status(false))
            }
        },
        Command::Analyze { file } => {
            let band = match load(&file, adjoin)? {
                Loaded::Band(b) => b,
                Loaded::NotLrb(labels, v) => {
                    emit(json_mode, report::violations_text(&labels, &v), json!({"verdict": "not-lrb", "violations": report::violations_json(&labels, &v)}));
                    return Ok(status(false));
                }
            };
            match Analysis::new(band.clone()) {
                Err(w) => {
                    emit(
                        json_mode,
                        report::not_rh_text(&band, &w),
                        json!({"right_hereditary": false, "witness": report::not_rh_json(&band, &w)}),
                    );
                    Ok(status(false))
                }
                Ok(a) => {
                    let order = find_local_linear_order(&a);
                    emit(json_mode, report::analysis_text(&a, order.as_ref()), report::analysis_json(&a, order.as_ref()));
                    Ok(status(order.is_some()))
                }
            }
        }
        Command::Embed { file, order, trace } => {
            let band = match load(&file, adjoin)? {
                Loaded::Band(b) => b,
                Loaded::NotLrb(labels, v) => {
                    emit(json_mode, report::violations_text(&labels, &v), json!({"verdict": "not-lrb", "violations": report::violations_json(&labels, &v)}));
                    return Ok(status(false));
                }
            };
            let verdict = match order {
                None => decide_embeddable(&band),
                Some(path) => {
                    let a = match Analysis::new(band.clone()) {
                        Ok(a) => a,
                        Err(w) => return Err(InputError(format!("cannot force an order: {w}"))),
                    };
                    let llo = LocalLinearOrder::parse(&read(&path)?, &a)
                        .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
                    Verdict::Embeddable(Box::new(
                        embed_with_order(&a, llo).map_err(|e| InputError(format!("{}: {e}", path.display())))?,
                    ))
                }
            };
            match &verdict {
                Verdict::Embeddable(e) => {
                    let a = Analysis::new(band).expect("embeddable bands are right hereditary");
                    emit(json_mode, report::embedding_text(&a, e, trace), report::embedding_json(&a, e, trace));
                    Ok(status(true))
                }
                v => {
                    emit(json_mode, report::verdict_text(&band, v), report::verdict_json(&band, v));
                    Ok(status(false))
                }
            }
        }
        Command::Verify { input, witness } => {
            let (band, image) = match witness {
                None => {
                    let v: Value = serde_json::from_str(&read(&input)?)
                        .map_err(|e| InputError(format!("{}: {e}", input.display())))?;
                    let doc: BandDocument = serde_json::from_value(v["band"].clone())
                        .map_err(|e| InputError(format!("{}: band: {e}", input.display())))?;
                    let band = doc.to_band(false)?;
                    let image = witness_from_json(&band, &v["witness"])?;
                    (band, image)
                }
                Some(w) => {
                    let band = match load(&input, adjoin)? {
                        Loaded::Band(b) => b,
                        Loaded::NotLrb(..) => return Err(InputError(format!("{}: not a left regular band", input.display()))),
                    };
                    let text = read(&w)?;
                    let image = if text.trim_start().starts_with('{') {
                        let v: Value = serde_json::from_str(&text)?;
                        witness_from_json(&band, &v["witness"])?
                    } else {
                        ElementMap::parse(&text, &band).map_err(|e| InputError(format!("{}: {e}", w.display())))?.image
                    };
                    (band, image)
                }
            };
            match verify_embedding(&band, &image) {
                Ok(()) => {
                    emit(json_mode, "OK: injective homomorphism\n".into(), json!({"ok": true}));
                    Ok(status(true))
                }
                Err(f) => {
                    let (x, y) = f.witness;
                    let pair = [band.label(x), band.label(y)];
                    emit(
                        json_mode,
                        format!("failed: {:?} at ({}, {})\n", f.kind, pair[0], pair[1]),
                        json!({"ok": false, "kind": format!("{:?}", f.kind), "witness": pair}),
                    );
                    Ok(status(false))
                }
            }
        }
        Command::Qvar { file } => {
            let band = match load(&file, adjoin)? {
                Loaded::Band(b) => b,
                Loaded::NotLrb(labels, v) => {
                    emit(json_mode, report::violations_text(&labels, &v), json!({"verdict": "not-lrb"}));
                    return Ok(status(false));
                }
            };
            let r = qvar_membership(&band);
            emit(json_mode, report::qvar_text(&band, &r), report::qvar_json(&band, &r));
            Ok(status(r.is_member()))
        }
        Command::Census { max_size, seed } => {
            let rows = run_census(max_size, seed);
            for r in rows.iter().filter(|r| r.tiers_disagree()) {
                eprintln!("global order failed, backtracking succeeded: size {} index {}", r.size, r.index);
            }
            let clean = rows.iter().all(|r| r.relabel_consistent && r.verdict != "internal-fault");
            if json_mode {
                out(&format!("{}\n", serde_json::to_string_pretty(&rows).expect("json")));
            } else {
                let mut csv = format!("{CSV_HEADER}\n");
                for r in &rows {
                    csv.push_str(&r.csv());
                    csv.push('\n');
                }
                out(&csv);
            }
            Ok(status(clean))
        }
        Command::Fuzz { seed, count, generators, max_seeds, cap } => {
            if generators == 0 || max_seeds == 0 {
                return Err(InputError("generators and max-seeds must be positive".into()));
            }
            let summary = fuzz_subbands(&FuzzConfig { seed, count, generators, max_seeds, cap });
            for (case, s) in &summary.skipped {
                eprintln!("skipped case {case} (seed {s}): closure over {cap} elements");
            }
            let mut text = format!(
                "{} passed, {} skipped, {} Modification round(s) in total\n",
                summary.passed,
                summary.skipped.len(),
                summary.total_rounds
            );
            if let Some(f) = &summary.failure {
                text.push_str(&format!(
                    "FAILED case {} (seed {}): {}\n  words: {}\n",
                    f.case,
                    f.case_seed,
                    f.message,
                    f.words.join(", ")
                ));
            }
            emit(json_mode, text, serde_json::to_value(&summary).expect("json"));
            Ok(status(summary.failure.is_none()))
        }
    }
}

fn witness_from_json(band: &Band, v: &Value) -> Result<Vec<FreeWord>, InputError> {
    let obj = v.as_object().ok_or_else(|| InputError("report has no witness".into()))?;
    band.elements()
        .map(|x| {
            let w = obj
                .get(band.label(x))
                .and_then(Value::as_str)
                .ok_or_else(|| InputError(format!("witness lacks `{}`", band.label(x))))?;
            w.parse::<FreeWord>().map_err(InputError::from)
        })
        .collect()
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
