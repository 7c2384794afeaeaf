//! Circuits through arcs, purity of arc types and the configurations
//! C(q) and D(q).
//!
//! A circuit of length `q` is a closed walk `(w_0, .., w_{q-1})` with
//! `(w_t, w_{t+1 mod q})` an arc for every `t`. Vertices may repeat unless
//! [`CircuitMode::Simple`] is requested.

use serde::{Deserialize, Serialize};

use crate::digraph::{Digraph, VertexSet};
use crate::error::{Error, Result};
use crate::relation::{RelationPartition, TwoWayType};
use crate::scheme::{IntersectionTensor, SchemeReport};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CircuitMode {
    /// Closed walks; vertex repetition allowed.
    #[default]
    Walk,
    /// Closed walks with pairwise distinct vertices.
    Simple,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Circuit {
    pub vertices: Vec<usize>,
}

impl Circuit {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Consecutive steps, including the closing one.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let q = self.vertices.len();
        (0..q).map(move |t| (self.vertices[t], self.vertices[(t + 1) % q]))
    }
}

/// Enumerates every circuit of length `q` in which `arc` is a step, each
/// cyclic class once, rotated so that `arc` occupies positions 0 and 1.
///
/// When the arc occurs several times in one closed walk, the lexicographically
/// smallest such rotation represents the class. Output order is lexicographic.
pub fn circuits_through_arc(
    d: &Digraph,
    arc: (usize, usize),
    q: usize,
    mode: CircuitMode,
) -> Result<Circuits<'_>> {
    if q < 2 {
        return Err(Error::CircuitTooShort(q));
    }
    let (u, v) = arc;
    if !d.has_arc(u, v) {
        return Err(Error::NotAnArc(u, v));
    }
    let to_u: Vec<u32> = d
        .distances_to(u)
        .into_iter()
        .map(|x| x.map_or(u32::MAX, |x| x as u32))
        .collect();
    let mut it = Circuits {
        d,
        q,
        mode,
        to_u,
        path: vec![u, v],
        stack: Vec::new(),
        done: false,
    };
    if q > 2 {
        let first = it.candidates(v, 2);
        it.stack.push(first);
    }
    Ok(it)
}

pub struct Circuits<'a> {
    d: &'a Digraph,
    q: usize,
    mode: CircuitMode,
    to_u: Vec<u32>,
    path: Vec<usize>,
    stack: Vec<VertexSet>,
    done: bool,
}

impl Circuits<'_> {
    /// Admissible vertices for position `len` after `last`.
    fn candidates(&self, last: usize, len: usize) -> VertexSet {
        // arcs still to traverse after placing the candidate
        let remaining = (self.q - len) as u32;
        let mut c: VertexSet = self
            .d
            .out_neighbors(last)
            .iter()
            .filter(|&w| self.to_u[w] <= remaining && (remaining > 1 || self.to_u[w] == 1))
            .collect();
        if self.mode == CircuitMode::Simple {
            for &w in &self.path {
                c = c.difference(VertexSet::singleton(w));
            }
        }
        c
    }

    fn is_representative(&self, walk: &[usize]) -> bool {
        let q = walk.len();
        let (u, v) = (walk[0], walk[1]);
        (1..q)
            .filter(|&r| walk[r] == u && walk[(r + 1) % q] == v)
            .all(|r| {
                let rotated = walk[r..].iter().chain(&walk[..r]);
                walk.iter().cmp(rotated) != std::cmp::Ordering::Greater
            })
    }
}

impl Iterator for Circuits<'_> {
    type Item = Circuit;

    fn next(&mut self) -> Option<Circuit> {
        if self.done {
            return None;
        }
        if self.q == 2 {
            self.done = true;
            let (u, v) = (self.path[0], self.path[1]);
            return self.d.has_arc(v, u).then(|| Circuit {
                vertices: vec![u, v],
            });
        }
        loop {
            let Some(top) = self.stack.last_mut() else {
                self.done = true;
                return None;
            };
            let Some(c) = top.first() else {
                self.stack.pop();
                self.path.pop();
                continue;
            };
            *top = top.difference(VertexSet::singleton(c));
            self.path.push(c);
            if self.path.len() == self.q {
                let found = self
                    .is_representative(&self.path)
                    .then(|| self.path.clone());
                self.path.pop();
                if let Some(vertices) = found {
                    return Some(Circuit { vertices });
                }
            } else {
                let next = self.candidates(c, self.path.len());
                self.stack.push(next);
            }
        }
    }
}

/// A circuit together with the type of each of its steps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypedCircuit {
    pub vertices: Vec<usize>,
    pub arc_types: Vec<TwoWayType>,
}

impl TypedCircuit {
    pub fn new(c: &Circuit, part: &RelationPartition) -> Self {
        TypedCircuit {
            vertices: c.vertices.clone(),
            arc_types: c.arcs().map(|(a, b)| part.type_of(a, b)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PurityEntry {
    pub q: u32,
    pub arc_type: TwoWayType,
    pub pure: bool,
    pub mixed_witness: Option<TypedCircuit>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PurityReport {
    pub entries: Vec<PurityEntry>,
}

impl PurityReport {
    pub fn get(&self, q: u32) -> Option<&PurityEntry> {
        self.entries.iter().find(|e| e.q == q)
    }

    /// `Some(pure)` when `(1, q-1)` is present.
    pub fn is_pure(&self, q: u32) -> Option<bool> {
        self.get(q).map(|e| e.pure)
    }
}

/// First circuit of length `q` through an arc of type `(1, q-1)` that uses an
/// arc of a type outside `allowed`. Arcs and circuits are scanned in
/// lexicographic order.
pub(crate) fn find_offending_circuit(
    d: &Digraph,
    part: &RelationPartition,
    q: u32,
    allowed: &[TwoWayType],
    mode: CircuitMode,
) -> Option<Circuit> {
    let pairs = part.pairs(TwoWayType::arc(q - 1));
    for arc in pairs {
        let circuits = circuits_through_arc(d, arc, q as usize, mode).expect("valid arc");
        for c in circuits {
            if c.arcs()
                .any(|(a, b)| !allowed.contains(&part.type_of(a, b)))
            {
                return Some(c);
            }
        }
    }
    None
}

pub fn purity_report(d: &Digraph, part: &RelationPartition, mode: CircuitMode) -> PurityReport {
    let entries = part
        .arc_types()
        .map(|t| {
            let q = t.backward + 1;
            let witness = find_offending_circuit(d, part, q, &[t], mode);
            PurityEntry {
                q,
                arc_type: t,
                pure: witness.is_none(),
                mixed_witness: witness.map(|c| TypedCircuit::new(&c, part)),
            }
        })
        .collect();
    PurityReport { entries }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEntry {
    pub q: u32,
    /// Whether `(1, q-2)` occurs at all.
    pub lower_present: bool,
    /// Purity of `(1, q-2)` when present.
    pub lower_pure: Option<bool>,
    /// `p^{(1,q-2)}_{(1,q-1),(1,q-1)}`.
    pub c_value: u32,
    /// `p^{(1,q-1)}_{(1,q-2),(q-2,1)}`.
    pub d_value: u32,
    pub c_exists: bool,
    pub d_exists: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigReport {
    pub entries: Vec<ConfigEntry>,
}

impl ConfigReport {
    pub fn get(&self, q: u32) -> Option<&ConfigEntry> {
        self.entries.iter().find(|e| e.q == q)
    }
}

pub fn config_report(t: &IntersectionTensor, pr: &PurityReport) -> ConfigReport {
    let entries = pr
        .entries
        .iter()
        .map(|e| {
            let q = e.q;
            let (lower_present, lower_pure, c_value, d_value) = if q >= 3 {
                let lower = TwoWayType::arc(q - 2);
                let top = TwoWayType::arc(q - 1);
                (
                    t.contains(lower),
                    pr.is_pure(q - 1),
                    t.p(lower, top, top),
                    t.p(top, lower, lower.conjugate()),
                )
            } else {
                (false, None, 0, 0)
            };
            let pure = lower_pure == Some(true);
            ConfigEntry {
                q,
                lower_present,
                lower_pure,
                c_value,
                d_value,
                c_exists: lower_present && pure && c_value != 0,
                d_exists: lower_present && pure && d_value != 0,
            }
        })
        .collect();
    ConfigReport { entries }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixedArcEntry {
    pub q: u32,
    pub mixed: bool,
    pub c_exists: bool,
    pub d_exists: bool,
    pub consistent: bool,
}

/// Per-q comparison of "mixed" against "C(q) or D(q)".
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixedArcVerdict {
    pub entries: Vec<MixedArcEntry>,
    pub consistent: bool,
}

/// `None` when the digraph is not commutative, regular and weakly
/// distance-regular; the characterization does not apply then.
pub fn verify_mixed_characterization(
    pr: &PurityReport,
    cr: &ConfigReport,
    flags: &SchemeReport,
) -> Option<MixedArcVerdict> {
    if !flags.hypotheses_hold() {
        return None;
    }
    let entries: Vec<MixedArcEntry> = pr
        .entries
        .iter()
        .map(|p| {
            let (c, d) = cr
                .get(p.q)
                .map_or((false, false), |e| (e.c_exists, e.d_exists));
            MixedArcEntry {
                q: p.q,
                mixed: !p.pure,
                c_exists: c,
                d_exists: d,
                consistent: !p.pure == (c || d),
            }
        })
        .collect();
    let consistent = entries.iter().all(|e| e.consistent);
    Some(MixedArcVerdict {
        entries,
        consistent,
    })
}
