//! End-to-end analysis and the exhaustive searches.
//!
//! Searches treat candidates as independent work items. Results are collected
//! in enumeration order, so serial and parallel runs produce the same output.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arcs::{
    config_report, purity_report, verify_mixed_characterization, CircuitMode, ConfigReport,
    MixedArcVerdict, PurityReport,
};
use crate::cayley::{catalog, enumerate_circulants, CayleySpec};
use crate::checks::{conditional_checks, CheckResult, Status};
use crate::delta::{check_delta_structure, DeltaReport};
use crate::digraph::{Digraph, VertexSet};
use crate::error::{Error, Result};
use crate::iso::{canonical_certificate, Certificate, MAX_ISO_ORDER};
use crate::relation::{RelationPartition, TwoWayType, Valency};
use crate::scheme::{IdentityReport, IntersectionTensor, SchemeReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    /// Not weakly distance-regular; nothing after the tensor was computed.
    Tensor,
    /// Not commutative or not regular; structural checks skipped.
    Hypotheses,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeValency {
    #[serde(rename = "type")]
    pub ty: TwoWayType,
    pub valency: Valency,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub order: usize,
    pub arc_count: usize,
    /// Absent above the isomorphism order limit.
    pub certificate: Option<Certificate>,
    pub strongly_connected: bool,
    pub not_undirected: bool,
    pub diameter: u32,
    pub types: Vec<TypeValency>,
    pub scheme: SchemeReport,
    pub identities: Option<IdentityReport>,
    pub purity: Option<PurityReport>,
    pub configs: Option<ConfigReport>,
    pub mixed_arcs: Option<MixedArcVerdict>,
    pub delta: Option<DeltaReport>,
    pub checks: Option<Vec<CheckResult>>,
    pub stopped_at: Option<Stage>,
}

impl AnalysisReport {
    /// Weakly distance-regular, commutative and regular.
    pub fn hypotheses_hold(&self) -> bool {
        self.scheme.hypotheses_hold()
    }

    /// Every check that ran, structural ones included.
    pub fn all_checks(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks
            .iter()
            .flatten()
            .chain(self.delta.iter().flat_map(|d| d.checks.iter()))
    }

    /// Names of failed checks, plus the mixed-arc characterization if it fails.
    pub fn failures(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .all_checks()
            .filter(|c| c.status == Status::Fails)
            .map(|c| c.check.clone())
            .collect();
        if self.mixed_arcs.as_ref().is_some_and(|m| !m.consistent) {
            out.push(MIXED_ARC_CHARACTERIZATION.into());
        }
        out
    }
}

pub const MIXED_ARC_CHARACTERIZATION: &str = "mixed_arc_characterization";

/// In-memory products of an analysis, for callers that need more than the report.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub digraph: Digraph,
    pub partition: RelationPartition,
    pub tensor: Option<IntersectionTensor>,
    pub report: AnalysisReport,
}

pub fn analyze(d: &Digraph) -> Result<AnalysisReport> {
    analyze_full(d).map(|a| a.report)
}

pub fn analyze_full(d: &Digraph) -> Result<Analysis> {
    let part = RelationPartition::new(d)?;
    let certificate =
        (d.order() <= MAX_ISO_ORDER).then(|| canonical_certificate(d).expect("order checked"));
    let types = part
        .types()
        .iter()
        .zip(part.valencies())
        .map(|(&ty, &valency)| TypeValency { ty, valency })
        .collect();
    let mut report = AnalysisReport {
        order: d.order(),
        arc_count: d.arc_count(),
        certificate,
        strongly_connected: true,
        not_undirected: !d.is_undirected(),
        diameter: part.diameter(),
        types,
        scheme: SchemeReport {
            is_wdr: false,
            wdr_witness: None,
            commutative: false,
            regular: false,
            max_valency: 0,
            thin: false,
            quasi_thin: false,
            equivalenced: None,
        },
        identities: None,
        purity: None,
        configs: None,
        mixed_arcs: None,
        delta: None,
        checks: None,
        stopped_at: None,
    };
    let tensor = match IntersectionTensor::compute(&part) {
        Ok(t) => t,
        Err(w) => {
            report.scheme = SchemeReport::failed(w);
            report.stopped_at = Some(Stage::Tensor);
            return Ok(Analysis {
                digraph: d.clone(),
                partition: part,
                tensor: None,
                report,
            });
        }
    };
    report.scheme = tensor.flags();
    report.identities = Some(tensor.check_identities());
    let purity = purity_report(d, &part, CircuitMode::Walk);
    let configs = config_report(&tensor, &purity);
    report.mixed_arcs = verify_mixed_characterization(&purity, &configs, &report.scheme);
    if report.scheme.hypotheses_hold() {
        report.delta = check_delta_structure(&part, &tensor, &report.scheme);
        report.checks = Some(conditional_checks(d, &part, &tensor, &purity, &configs));
    } else {
        report.stopped_at = Some(Stage::Hypotheses);
    }
    report.purity = Some(purity);
    report.configs = Some(configs);
    Ok(Analysis {
        digraph: d.clone(),
        partition: part,
        tensor: Some(tensor),
        report,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Cayley(CayleySpec),
    Arcs {
        order: usize,
        arcs: Vec<(usize, usize)>,
    },
}

impl Source {
    pub fn from_digraph(d: &Digraph) -> Self {
        Source::Arcs {
            order: d.order(),
            arcs: d.arcs().collect(),
        }
    }

    pub fn digraph(&self) -> Digraph {
        match self {
            Source::Cayley(spec) => spec.digraph(),
            Source::Arcs { order, arcs } => {
                Digraph::new(*order, arcs, false).expect("valid stored arcs")
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            Source::Cayley(spec) => spec.to_string(),
            Source::Arcs { order, arcs } => {
                let a: Vec<String> = arcs.iter().map(|(u, v)| format!("{u}>{v}")).collect();
                format!("n{order}:{}", a.join(","))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Survivor {
    pub source: Source,
    pub certificate: Certificate,
    /// Index into the diameter-2 catalog, when isomorphic to an entry.
    pub catalog_index: Option<usize>,
    pub report: AnalysisReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationResult {
    pub candidates: usize,
    pub survivors: Vec<Survivor>,
    /// Survivor indices with no catalog match.
    pub unmatched: Vec<usize>,
}

impl ClassificationResult {
    pub fn matched_catalog(&self) -> BTreeMap<usize, usize> {
        self.survivors
            .iter()
            .enumerate()
            .filter_map(|(i, s)| s.catalog_index.map(|c| (i, c)))
            .collect()
    }

    /// Distinct catalog entries hit by some survivor.
    pub fn distinct_catalog_matches(&self) -> usize {
        let mut hit: Vec<usize> = self
            .survivors
            .iter()
            .filter_map(|s| s.catalog_index)
            .collect();
        hit.sort_unstable();
        hit.dedup();
        hit.len()
    }
}

pub fn catalog_certificates() -> Vec<Certificate> {
    catalog()
        .iter()
        .map(|e| canonical_certificate(&e.digraph()).expect("catalog orders are small"))
        .collect()
}

/// Cheap rejection: strong connectivity and constant valencies.
fn passes_prefilter(d: &Digraph) -> Option<RelationPartition> {
    if !d.is_strongly_connected() {
        return None;
    }
    let part = RelationPartition::new(d).ok()?;
    part.has_constant_valencies().then_some(part)
}

fn survives_scheme(part: &RelationPartition, diameter: Option<u32>) -> bool {
    match IntersectionTensor::compute(part) {
        Ok(t) => {
            let flags = t.flags();
            flags.commutative
                && flags.regular
                && diameter.is_none_or(|want| part.diameter() == want)
        }
        Err(_) => false,
    }
}

fn survivor_of(source: Source, d: &Digraph) -> Survivor {
    let report = analyze(d).expect("strongly connected survivor");
    let certificate = report
        .certificate
        .clone()
        .expect("search orders are within the iso limit");
    Survivor {
        source,
        certificate,
        catalog_index: None,
        report,
    }
}

fn finish(candidates: usize, found: Vec<Survivor>) -> ClassificationResult {
    let catalog = catalog_certificates();
    let mut seen: HashSet<Certificate> = HashSet::new();
    let mut survivors = Vec::new();
    for mut s in found {
        if !seen.insert(s.certificate.clone()) {
            continue;
        }
        s.catalog_index = catalog.iter().position(|c| *c == s.certificate);
        survivors.push(s);
    }
    let unmatched = survivors
        .iter()
        .enumerate()
        .filter(|(_, s)| s.catalog_index.is_none())
        .map(|(i, _)| i)
        .collect();
    ClassificationResult {
        candidates,
        survivors,
        unmatched,
    }
}

/// Circulants on `n_min..=n_max` vertices that are not undirected, strongly
/// connected, weakly distance-regular, commutative, regular, and of the given
/// diameter if one is set. Deduplicated by certificate.
pub fn search_circulants(
    n_min: usize,
    n_max: usize,
    diameter: Option<u32>,
) -> Result<ClassificationResult> {
    if n_max > MAX_ISO_ORDER {
        return Err(Error::InvalidRange(format!(
            "max order {n_max} above {MAX_ISO_ORDER}"
        )));
    }
    let specs: Vec<CayleySpec> = enumerate_circulants(n_min, n_max, true)?.collect();
    let found: Vec<Survivor> = specs
        .par_iter()
        .filter_map(|spec| {
            let d = spec.digraph();
            let part = passes_prefilter(&d)?;
            survives_scheme(&part, diameter).then(|| survivor_of(Source::Cayley(spec.clone()), &d))
        })
        .collect();
    Ok(finish(specs.len(), found))
}

pub const MAX_EXHAUSTIVE_ORDER: usize = 5;

fn digraph_from_mask(n: usize, pairs: &[(usize, usize)], mask: u64) -> Digraph {
    let mut rows = vec![VertexSet::EMPTY; n];
    for (bit, &(u, v)) in pairs.iter().enumerate() {
        if mask >> bit & 1 == 1 {
            rows[u].insert(v);
        }
    }
    Digraph::from_out_rows(n, rows)
}

/// Every simple digraph on at most `max_n` vertices, filtered as in
/// [`search_circulants`]. With `prune`, strong connectivity and valency
/// constancy are checked before the tensor; without it every candidate runs
/// through the full analysis.
pub fn search_all_digraphs(
    max_n: usize,
    diameter: Option<u32>,
    prune: bool,
) -> Result<ClassificationResult> {
    if max_n == 0 || max_n > MAX_EXHAUSTIVE_ORDER {
        return Err(Error::InvalidRange(format!(
            "max order must be in 1..={MAX_EXHAUSTIVE_ORDER}, got {max_n}"
        )));
    }
    let mut candidates = 0usize;
    let mut found = Vec::new();
    for n in 1..=max_n {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
            .collect();
        let total = 1u64 << pairs.len();
        candidates += total as usize;
        let batch: Vec<Survivor> = (0..total)
            .into_par_iter()
            .filter_map(|mask| {
                let d = digraph_from_mask(n, &pairs, mask);
                if prune {
                    if d.is_undirected() {
                        return None;
                    }
                    let part = passes_prefilter(&d)?;
                    survives_scheme(&part, diameter)
                        .then(|| survivor_of(Source::from_digraph(&d), &d))
                } else {
                    let report = analyze(&d).ok()?;
                    let keep = report.not_undirected
                        && report.hypotheses_hold()
                        && diameter.is_none_or(|want| report.diameter == want);
                    keep.then(|| Survivor {
                        source: Source::from_digraph(&d),
                        certificate: report.certificate.clone().expect("small order"),
                        catalog_index: None,
                        report,
                    })
                }
            })
            .collect();
        found.extend(batch);
    }
    Ok(finish(candidates, found))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub holds: usize,
    pub vacuous: usize,
    pub fails: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub member: String,
    pub check: String,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusVerdict {
    pub members: usize,
    /// Members that are not strongly connected.
    pub skipped: usize,
    /// Members satisfying all three hypotheses.
    pub applicable: usize,
    pub mixed_arc_consistent: usize,
    pub mixed_arc_inconsistent: usize,
    pub checks: BTreeMap<String, Tally>,
    pub failures: Vec<Counterexample>,
}

impl CorpusVerdict {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first_failure(&self) -> Option<&Counterexample> {
        self.failures.first()
    }
}

/// Analyzes every member and aggregates the structural verdicts. Failures are
/// listed in input order.
pub fn corpus_verify<I>(members: I) -> CorpusVerdict
where
    I: IntoIterator<Item = (String, Digraph)>,
{
    let members: Vec<(String, Digraph)> = members.into_iter().collect();
    let reports: Vec<Option<AnalysisReport>> =
        members.par_iter().map(|(_, d)| analyze(d).ok()).collect();
    let mut verdict = CorpusVerdict {
        members: members.len(),
        ..Default::default()
    };
    for ((label, _), report) in members.iter().zip(reports) {
        let Some(report) = report else {
            verdict.skipped += 1;
            continue;
        };
        if !report.hypotheses_hold() {
            continue;
        }
        verdict.applicable += 1;
        if let Some(m) = &report.mixed_arcs {
            if m.consistent {
                verdict.mixed_arc_consistent += 1;
            } else {
                verdict.mixed_arc_inconsistent += 1;
                verdict.failures.push(Counterexample {
                    member: label.clone(),
                    check: MIXED_ARC_CHARACTERIZATION.into(),
                    detail: Some(format!(
                        "{:?}",
                        m.entries
                            .iter()
                            .filter(|e| !e.consistent)
                            .collect::<Vec<_>>()
                    )),
                });
            }
        }
        for c in report.all_checks() {
            let tally = verdict.checks.entry(c.check.clone()).or_default();
            match c.status {
                Status::Holds => tally.holds += 1,
                Status::Vacuous => tally.vacuous += 1,
                Status::Fails => {
                    tally.fails += 1;
                    verdict.failures.push(Counterexample {
                        member: label.clone(),
                        check: c.check.clone(),
                        detail: c.detail.clone(),
                    });
                }
            }
        }
    }
    verdict
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::cayley_cyclic;

    #[test]
    fn triangle_report() {
        let r = analyze(&cayley_cyclic(3, [1]).unwrap()).unwrap();
        assert!(r.scheme.is_wdr && r.scheme.commutative && r.scheme.regular && r.scheme.thin);
        assert_eq!(r.diameter, 2);
        assert!(r.mixed_arcs.is_some());
        assert_eq!(r.stopped_at, None);
        assert!(r.failures().is_empty());
    }

    #[test]
    fn chorded_cycle_stops_at_tensor() {
        let d = Digraph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)], true).unwrap();
        let r = analyze(&d).unwrap();
        assert!(!r.scheme.is_wdr);
        assert!(r.scheme.wdr_witness.is_some());
        assert_eq!(r.stopped_at, Some(Stage::Tensor));
        assert!(r.purity.is_none() && r.mixed_arcs.is_none() && r.checks.is_none());
    }

    #[test]
    fn not_strongly_connected_is_an_error() {
        let d = Digraph::new(3, &[(0, 1), (1, 2)], true).unwrap();
        assert!(matches!(
            analyze(&d),
            Err(Error::NotStronglyConnected { .. })
        ));
    }

    #[test]
    fn search_range_errors() {
        assert!(search_circulants(1, 4, None).is_err());
        assert!(search_all_digraphs(6, None, true).is_err());
        assert!(search_all_digraphs(0, None, true).is_err());
    }

    #[test]
    fn empty_corpus_passes() {
        let v = corpus_verify(Vec::new());
        assert!(v.passed());
        assert_eq!(v.members, 0);
    }
}
