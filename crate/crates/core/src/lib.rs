//! Two-way distance schemes of digraphs: intersection numbers, regularity,
//! arc purity, and exhaustive classification of small weakly
//! distance-regular digraphs.

pub mod arcs;
pub mod cayley;
pub mod checks;
pub mod classify;
pub mod delta;
pub mod digraph;
pub mod error;
pub mod input;
pub mod iso;
pub mod relation;
pub mod report;
pub mod scheme;

pub use arcs::{circuits_through_arc, purity_report, Circuit, CircuitMode, PurityReport};
pub use cayley::{
    catalog, cayley_cyclic, cayley_product, enumerate_circulants, CatalogEntry, CayleySpec,
};
pub use classify::{
    analyze, analyze_full, corpus_verify, search_all_digraphs, search_circulants, AnalysisReport,
    ClassificationResult, CorpusVerdict,
};
pub use digraph::{Digraph, DistanceMatrix, VertexSet};
pub use error::{Error, Result};
pub use input::parse_input;
pub use iso::{are_isomorphic, canonical_certificate, canonical_labeling, Certificate};
pub use relation::{RelationPartition, TwoWayType, Valency};
pub use report::Format;
pub use scheme::{IntersectionTensor, SchemeReport, TypeSet};
