//! Deterministic text and JSON rendering of reports.

use std::fmt::Write as _;

use serde::{de::DeserializeOwned, Serialize};

use crate::arcs::TypedCircuit;
use crate::checks::{CheckResult, Status};
use crate::classify::{AnalysisReport, ClassificationResult, CorpusVerdict};
use crate::relation::Valency;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Json,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> serde_json::Result<T> {
    serde_json::from_str(text)
}

/// `0 -(1,2)-> 1 -(1,2)-> 2 -(1,2)-> 0`.
pub fn format_circuit(c: &TypedCircuit) -> String {
    let mut s = c.vertices[0].to_string();
    for (k, ty) in c.arc_types.iter().enumerate() {
        let next = c.vertices[(k + 1) % c.vertices.len()];
        write!(s, " -{ty}-> {next}").unwrap();
    }
    s
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Holds => "holds",
        Status::Vacuous => "vacuous",
        Status::Fails => "fails",
    }
}

fn check_line(out: &mut String, c: &CheckResult) {
    write!(
        out,
        "  {}: {} (fired {})",
        c.check,
        status_word(c.status),
        c.instances
    )
    .unwrap();
    if let Some(d) = &c.detail {
        write!(out, " {d}").unwrap();
    }
    out.push('\n');
}

pub fn render_analysis(r: &AnalysisReport, format: Format) -> String {
    match format {
        Format::Json => to_json(r),
        Format::Text => analysis_text(r),
    }
}

fn analysis_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let w = &mut out;
    writeln!(w, "order: {}", r.order).unwrap();
    writeln!(w, "arcs: {}", r.arc_count).unwrap();
    match &r.certificate {
        Some(c) => writeln!(w, "certificate: {c}").unwrap(),
        None => writeln!(w, "certificate: none").unwrap(),
    }
    writeln!(w, "strongly connected: {}", r.strongly_connected).unwrap();
    writeln!(w, "not undirected: {}", r.not_undirected).unwrap();
    writeln!(w, "diameter: {}", r.diameter).unwrap();
    writeln!(w, "types:").unwrap();
    for tv in &r.types {
        match tv.valency {
            Valency::Constant(k) => writeln!(w, "  {} k={k}", tv.ty).unwrap(),
            Valency::NonConstant => writeln!(w, "  {} k=non-constant", tv.ty).unwrap(),
        }
    }
    let s = &r.scheme;
    writeln!(w, "wdr: {}", s.is_wdr).unwrap();
    if let Some(x) = &s.wdr_witness {
        writeln!(
            w,
            "  witness: p^{}_{{{},{}}} is {} at {:?} but {} at {:?}",
            x.h, x.i, x.j, x.count1, x.pair1, x.count2, x.pair2
        )
        .unwrap();
    }
    writeln!(w, "commutative: {}", s.commutative).unwrap();
    writeln!(w, "regular: {}", s.regular).unwrap();
    if s.is_wdr {
        writeln!(w, "max valency: {}", s.max_valency).unwrap();
        writeln!(w, "thin: {}", s.thin).unwrap();
        writeln!(w, "quasi-thin: {}", s.quasi_thin).unwrap();
        match s.equivalenced {
            Some(k) => writeln!(w, "equivalenced: {k}").unwrap(),
            None => writeln!(w, "equivalenced: no").unwrap(),
        }
    }
    if let Some(id) = &r.identities {
        writeln!(
            w,
            "identities: {}",
            if id.holds() { "hold" } else { "fail" }
        )
        .unwrap();
        if let Some(v) = &id.first_violation {
            writeln!(w, "  violation: {v:?}").unwrap();
        }
    }
    if let (Some(pr), Some(cr)) = (&r.purity, &r.configs) {
        writeln!(w, "arc types:").unwrap();
        for e in &pr.entries {
            let cfg = cr.get(e.q);
            let (c, d) = cfg.map_or((false, false), |c| (c.c_exists, c.d_exists));
            writeln!(
                w,
                "  q={} {}: {} C={} D={}",
                e.q,
                e.arc_type,
                if e.pure { "pure" } else { "mixed" },
                c,
                d
            )
            .unwrap();
            if let Some(wit) = &e.mixed_witness {
                writeln!(w, "    witness: {}", format_circuit(wit)).unwrap();
            }
        }
    }
    if let Some(m) = &r.mixed_arcs {
        writeln!(w, "mixed iff C or D: {}", m.consistent).unwrap();
    }
    if let Some(d) = &r.delta {
        if let Some(n) = d.bipartite_n {
            writeln!(w, "symmetric arc valency: {n}").unwrap();
        }
    }
    let checks: Vec<&CheckResult> = r.all_checks().collect();
    if !checks.is_empty() {
        writeln!(w, "checks:").unwrap();
        for c in checks {
            check_line(w, c);
        }
    }
    let failures = r.failures();
    writeln!(w, "failures: {}", failures.len()).unwrap();
    out
}

pub fn render_classification(r: &ClassificationResult, format: Format) -> String {
    match format {
        Format::Json => to_json(r),
        Format::Text => classification_text(r),
    }
}

fn classification_text(r: &ClassificationResult) -> String {
    let catalog = crate::cayley::catalog();
    let mut out = String::new();
    writeln!(out, "candidates: {}", r.candidates).unwrap();
    for s in &r.survivors {
        let tag = s.catalog_index.map_or("unmatched".to_string(), |i| {
            format!("catalog ({})", catalog[i].label)
        });
        writeln!(
            out,
            "{} diameter={} {} {}",
            s.source.label(),
            s.report.diameter,
            s.certificate,
            tag
        )
        .unwrap();
    }
    writeln!(
        out,
        "survivors: {} / catalog matched: {} / unmatched: {}",
        r.survivors.len(),
        r.distinct_catalog_matches(),
        r.unmatched.len()
    )
    .unwrap();
    out
}

pub fn render_corpus(v: &CorpusVerdict, format: Format) -> String {
    match format {
        Format::Json => to_json(v),
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "members: {}", v.members).unwrap();
            writeln!(out, "skipped: {}", v.skipped).unwrap();
            writeln!(out, "applicable: {}", v.applicable).unwrap();
            writeln!(
                out,
                "mixed iff C or D: {} consistent, {} inconsistent",
                v.mixed_arc_consistent, v.mixed_arc_inconsistent
            )
            .unwrap();
            for (name, t) in &v.checks {
                writeln!(
                    out,
                    "  {name}: {} holds, {} vacuous, {} fails",
                    t.holds, t.vacuous, t.fails
                )
                .unwrap();
            }
            for f in &v.failures {
                writeln!(
                    out,
                    "counterexample: {} {} {}",
                    f.member,
                    f.check,
                    f.detail.as_deref().unwrap_or("")
                )
                .unwrap();
            }
            writeln!(out, "failures: {}", v.failures.len()).unwrap();
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::cayley_cyclic;
    use crate::classify::analyze;

    #[test]
    fn triangle_text_lines() {
        let r = analyze(&cayley_cyclic(3, [1]).unwrap()).unwrap();
        let text = render_analysis(&r, Format::Text);
        for line in ["wdr: true", "regular: true", "diameter: 2"] {
            assert!(text.lines().any(|l| l == line), "{line}\n{text}");
        }
    }

    #[test]
    fn json_round_trip() {
        let r = analyze(&cayley_cyclic(6, [1, 2, 3, 5]).unwrap()).unwrap();
        let back: AnalysisReport = from_json(&render_analysis(&r, Format::Json)).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn circuit_format() {
        let c = TypedCircuit {
            vertices: vec![0, 1, 2],
            arc_types: vec![crate::relation::TwoWayType::arc(2); 3],
        };
        assert_eq!(format_circuit(&c), "0 -(1,2)-> 1 -(1,2)-> 2 -(1,2)-> 0");
    }
}
