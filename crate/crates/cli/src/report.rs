//! Human and JSON renderings of analyses and verdicts.

use std::collections::BTreeMap;
use std::fmt::Write;

use lrb_core::analysis::Analysis;
use lrb_core::band::{AxiomViolation, Band};
use lrb_core::document::BandDocument;
use lrb_core::embed::{chi, ElementMap, Embedding, Verdict};
use lrb_core::local_order::{search, LocalLinearOrder};
use lrb_core::qvar::QvarResult;
use lrb_core::tree::NotRightHereditary;
use serde_json::{json, Value};

fn names(band: &Band, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| band.label(x).to_string()).collect()
}

fn set_text(band: &Band, xs: &[usize]) -> String {
    format!("{{{}}}", names(band, xs).join(", "))
}

pub fn violations_text(band_labels: &[String], v: &[AxiomViolation]) -> String {
    let mut out = format!("not a left regular band: {} violation(s)\n", v.len());
    for a in v.iter().take(20) {
        let els: Vec<&str> = a.elements.iter().map(|&x| band_labels[x].as_str()).collect();
        let _ = writeln!(out, "  {} fails at ({})", a.law, els.join(", "));
    }
    if v.len() > 20 {
        let _ = writeln!(out, "  ... {} more", v.len() - 20);
    }
    out
}

pub fn violations_json(band_labels: &[String], v: &[AxiomViolation]) -> Value {
    json!(v
        .iter()
        .map(|a| json!({
            "law": a.law.to_string(),
            "elements": a.elements.iter().map(|&x| band_labels[x].clone()).collect::<Vec<_>>(),
        }))
        .collect::<Vec<_>>())
}

pub fn not_rh_text(band: &Band, w: &NotRightHereditary) -> String {
    format!(
        "not right hereditary: {} has lower covers {} and {}\n",
        band.label(w.element),
        band.label(w.covers.0),
        band.label(w.covers.1)
    )
}

pub fn not_rh_json(band: &Band, w: &NotRightHereditary) -> Value {
    json!({
        "element": band.label(w.element),
        "covers": [band.label(w.covers.0), band.label(w.covers.1)],
    })
}

fn semword_text(a: &Analysis, w: &lrb_core::semilattice::SemWord) -> String {
    let mut g: Vec<u32> = w.letters().map(|t| a.generator_of(t)).collect();
    g.sort();
    if g.is_empty() {
        "∅".into()
    } else {
        g.iter().map(|k| format!("a{k}")).collect::<Vec<_>>().join(" ")
    }
}

fn map_json(band: &Band, map: &ElementMap) -> Value {
    let m: BTreeMap<String, String> =
        band.elements().map(|x| (band.label(x).to_string(), map.get(x).to_string())).collect();
    json!(m)
}

pub fn analysis_text(a: &Analysis, order: Option<&LocalLinearOrder>) -> String {
    let band = &a.band;
    let mut out = String::new();
    let _ = writeln!(out, "right hereditary band with {} elements", band.len());
    let _ = writeln!(out, "\nsupport classes (generator, members):");
    for class in a.quotient.lattice().rank_order() {
        let _ = writeln!(out, "  a{}: {}", a.generator_of(class), set_text(band, &a.quotient.classes()[class]));
    }
    let _ = writeln!(out, "\nelement  parent  nu              delta           S");
    for x in band.elements() {
        let parent = a.tree.parent(x).map(|p| band.label(p).to_string()).unwrap_or_else(|| "-".into());
        let _ = writeln!(
            out,
            "  {:<7}{:<8}{:<16}{:<16}{}",
            band.label(x),
            parent,
            semword_text(a, a.nu_of(x)),
            semword_text(a, a.delta_nu(x)),
            set_text(band, a.ssets.get(x))
        );
    }
    match order {
        Some(o) => {
            let _ = writeln!(out, "\nlocal linear order:");
            for line in o.render(a).lines() {
                let _ = writeln!(out, "  {line}");
            }
        }
        None => {
            let _ = writeln!(out, "\nno local linear order exists");
        }
    }
    out
}

pub fn analysis_json(a: &Analysis, order: Option<&LocalLinearOrder>) -> Value {
    let band = &a.band;
    let outcome = search(a);
    json!({
        "right_hereditary": true,
        "elements": band.labels(),
        "parent": band.elements().map(|x| a.tree.parent(x).map(|p| band.label(p).to_string())).collect::<Vec<_>>(),
        "support_classes": a.quotient.lattice().rank_order().into_iter()
            .map(|c| json!({"generator": a.generator_of(c), "members": names(band, &a.quotient.classes()[c])}))
            .collect::<Vec<_>>(),
        "nu": band.elements().map(|x| semword_text(a, a.nu_of(x))).collect::<Vec<_>>(),
        "delta": band.elements().map(|x| semword_text(a, a.delta_nu(x))).collect::<Vec<_>>(),
        "s_sets": band.elements().map(|x| names(band, a.ssets.get(x))).collect::<Vec<_>>(),
        "local_linear_order": order.map(|o| o.render(a)),
        "global_order_sufficed": outcome.global_acyclic,
    })
}

pub fn embedding_text(a: &Analysis, e: &Embedding, trace: bool) -> String {
    let band = &a.band;
    let mut out = String::new();
    let _ = writeln!(out, "embeddable: {} Modification round(s), {} letters", e.rounds, e.rank);
    let _ = writeln!(out, "\nlocal linear order:");
    for line in e.order.render(a).lines() {
        let _ = writeln!(out, "  {line}");
    }
    if trace {
        let _ = writeln!(out, "\nchi:");
        for c in band.non_identity() {
            if let Ok(v) = chi(a, &e.order, c) {
                let _ = writeln!(out, "  {}: ({})", band.label(c), names(band, &v.elements()).join(", "));
            }
        }
        let _ = writeln!(out, "\ninitial h:");
        for line in e.initial.render(band).lines() {
            let _ = writeln!(out, "  {line}");
        }
        for (i, r) in e.trace.iter().enumerate() {
            let subst: Vec<String> = r.substituted.iter().map(|l| l.to_string()).collect();
            let _ = writeln!(out, "\nround {} at c = {}, C = {{{}}}", i + 1, band.label(r.c), subst.join(", "));
            for (tag, part) in &r.parts {
                let t = tag.map(|b| band.label(b).to_string()).unwrap_or_else(|| "∅".into());
                let _ = writeln!(out, "  S[{},{}] = {}", band.label(r.c), t, set_text(band, part));
            }
            for x in band.elements() {
                let _ = writeln!(out, "  {} = {}", band.label(x), r.image[x]);
            }
            let k: Vec<String> =
                r.kernel.iter().map(|&(x, y)| format!("({}, {})", band.label(x), band.label(y))).collect();
            let _ = writeln!(out, "  kernel: {{{}}}", k.join(", "));
        }
    }
    let _ = writeln!(out, "\nwitness:");
    out.push_str(&e.map.render(band));
    out
}

pub fn embedding_json(a: &Analysis, e: &Embedding, trace: bool) -> Value {
    let band = &a.band;
    let mut v = json!({
        "verdict": "embeddable",
        "band": serde_json::to_value(BandDocument::from_band(band)).expect("serializable"),
        "local_linear_order": e.order.render(a),
        "rounds": e.rounds,
        "rank": e.rank,
        "witness": map_json(band, &e.map),
    });
    if trace {
        v["initial"] = map_json(band, &e.initial);
        v["trace"] = json!(e
            .trace
            .iter()
            .map(|r| json!({
                "c": band.label(r.c),
                "substituted": r.substituted.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
                "parts": r.parts.iter().map(|(t, p)| json!({
                    "tag": t.map(|b| band.label(b).to_string()),
                    "members": names(band, p),
                })).collect::<Vec<_>>(),
                "images": band.elements().map(|x| (band.label(x).to_string(), r.image[x].to_string())).collect::<BTreeMap<_, _>>(),
                "kernel": r.kernel.iter().map(|&(x, y)| [band.label(x), band.label(y)]).collect::<Vec<_>>(),
            }))
            .collect::<Vec<_>>());
    }
    v
}

pub fn verdict_text(band: &Band, v: &Verdict) -> String {
    match v {
        Verdict::NotLrb(vs) => violations_text(band.labels(), vs),
        Verdict::NotRightHereditary(w) => not_rh_text(band, w),
        Verdict::NoLocalLinearOrder => "right hereditary, but no local linear order exists\n".into(),
        Verdict::Fault(f) => format!("internal fault: {f}\n"),
        Verdict::Embeddable(_) => unreachable!("rendered with the analysis"),
    }
}

pub fn verdict_json(band: &Band, v: &Verdict) -> Value {
    match v {
        Verdict::NotLrb(vs) => json!({"verdict": v.kind(), "violations": violations_json(band.labels(), vs)}),
        Verdict::NotRightHereditary(w) => json!({"verdict": v.kind(), "witness": not_rh_json(band, w)}),
        Verdict::NoLocalLinearOrder => json!({"verdict": v.kind()}),
        Verdict::Fault(f) => json!({"verdict": v.kind(), "fault": f.to_string()}),
        Verdict::Embeddable(_) => unreachable!("rendered with the analysis"),
    }
}

pub fn qvar_text(band: &Band, r: &QvarResult) -> String {
    match r {
        QvarResult::NotMember { x, y } => format!(
            "not in the quasivariety: no homomorphism into H separates {} and {}\n",
            band.label(*x),
            band.label(*y)
        ),
        QvarResult::Member(c) => {
            let mut out = format!(
                "in the quasivariety: {} homomorphism(s) into H separate all pairs\n",
                c.homomorphisms.len()
            );
            for (k, phi) in c.homomorphisms.iter().enumerate() {
                let cells: Vec<String> =
                    band.elements().map(|x| format!("{}->{}", band.label(x), phi[x])).collect();
                let _ = writeln!(out, "  phi{}: {}", k + 1, cells.join(" "));
            }
            out
        }
    }
}

pub fn qvar_json(band: &Band, r: &QvarResult) -> Value {
    match r {
        QvarResult::NotMember { x, y } => json!({"member": false, "unseparated": [band.label(*x), band.label(*y)]}),
        QvarResult::Member(c) => json!({
            "member": true,
            "homomorphisms": c.homomorphisms.iter().map(|phi| {
                band.elements().map(|x| (band.label(x).to_string(), phi[x].to_string())).collect::<BTreeMap<_, _>>()
            }).collect::<Vec<_>>(),
            "separations": c.separations.iter().map(|&(x, y, k)| json!([band.label(x), band.label(y), k + 1])).collect::<Vec<_>>(),
        }),
    }
}
