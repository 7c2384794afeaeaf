//! Two-way distance types and the partition of `V×V` they induce.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::digraph::{Digraph, DistanceMatrix, VertexSet};
use crate::error::{Error, Result};

/// The pair `(∂(x,y), ∂(y,x))`. Ordered lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoWayType {
    pub forward: u32,
    pub backward: u32,
}

impl TwoWayType {
    pub const IDENTITY: TwoWayType = TwoWayType {
        forward: 0,
        backward: 0,
    };

    pub const fn new(forward: u32, backward: u32) -> Self {
        TwoWayType { forward, backward }
    }

    /// Arc type `(1, r)`.
    pub const fn arc(r: u32) -> Self {
        TwoWayType {
            forward: 1,
            backward: r,
        }
    }

    /// `(a, b)* = (b, a)`.
    pub const fn conjugate(self) -> Self {
        TwoWayType {
            forward: self.backward,
            backward: self.forward,
        }
    }

    pub fn is_identity(self) -> bool {
        self == Self::IDENTITY
    }

    pub fn is_arc(self) -> bool {
        self.forward == 1
    }

    pub fn is_symmetric(self) -> bool {
        self.forward == self.backward
    }
}

impl fmt::Display for TwoWayType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.forward, self.backward)
    }
}

impl FromStr for TwoWayType {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| format!("expected (a,b), got {s:?}"))?;
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| format!("expected (a,b), got {s:?}"))?;
        let a = a.trim().parse().map_err(|e| format!("{s:?}: {e}"))?;
        let b = b.trim().parse().map_err(|e| format!("{s:?}: {e}"))?;
        Ok(TwoWayType::new(a, b))
    }
}

// Serialized as the compact string "(a,b)" so types can key JSON maps.
impl Serialize for TwoWayType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TwoWayType {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Valency of a relation: constant across vertices, or not.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Valency {
    Constant(usize),
    NonConstant,
}

impl Valency {
    pub fn constant(self) -> Option<usize> {
        match self {
            Valency::Constant(k) => Some(k),
            Valency::NonConstant => None,
        }
    }
}

/// The relations `Γ_ĩ` of a strongly connected digraph.
///
/// Types are indexed by their position in the sorted list `types`; every
/// lookup structure below is keyed by that index.
#[derive(Clone, Debug)]
pub struct RelationPartition {
    order: usize,
    types: Vec<TwoWayType>,
    conjugate: Vec<usize>,
    pair_type: Vec<usize>,
    /// `fibers[x * r + i] = Γ_i(x)`.
    fibers: Vec<VertexSet>,
    valencies: Vec<Valency>,
    diameter: u32,
}

impl RelationPartition {
    pub fn new(d: &Digraph) -> Result<Self> {
        let dist = d.distance_matrix()?;
        Ok(Self::from_distances(&dist))
    }

    pub fn from_distances(dist: &DistanceMatrix) -> Self {
        let n = dist.order();
        let mut types: Vec<TwoWayType> = Vec::new();
        for x in 0..n {
            for y in 0..n {
                types.push(TwoWayType::new(dist.get(x, y), dist.get(y, x)));
            }
        }
        let raw = types.clone();
        types.sort_unstable();
        types.dedup();
        let r = types.len();
        let index_of = |t: &TwoWayType| types.binary_search(t).expect("type present");
        let pair_type: Vec<usize> = raw.iter().map(index_of).collect();
        let conjugate = types.iter().map(|t| index_of(&t.conjugate())).collect();
        let mut fibers = vec![VertexSet::EMPTY; n * r];
        for x in 0..n {
            for y in 0..n {
                fibers[x * r + pair_type[x * n + y]].insert(y);
            }
        }
        let valencies = (0..r)
            .map(|i| {
                let k = fibers[i].len();
                if (1..n).all(|x| fibers[x * r + i].len() == k) {
                    Valency::Constant(k)
                } else {
                    Valency::NonConstant
                }
            })
            .collect();
        RelationPartition {
            order: n,
            types,
            conjugate,
            pair_type,
            fibers,
            valencies,
            diameter: dist.diameter(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn types(&self) -> &[TwoWayType] {
        &self.types
    }

    pub fn rank(&self) -> usize {
        self.types.len()
    }

    pub fn diameter(&self) -> u32 {
        self.diameter
    }

    pub fn index_of(&self, t: TwoWayType) -> Option<usize> {
        self.types.binary_search(&t).ok()
    }

    pub fn require_index(&self, t: TwoWayType) -> Result<usize> {
        self.index_of(t).ok_or(Error::UnknownType(t))
    }

    pub fn contains(&self, t: TwoWayType) -> bool {
        self.index_of(t).is_some()
    }

    pub fn conjugate_index(&self, i: usize) -> usize {
        self.conjugate[i]
    }

    pub fn identity_index(&self) -> usize {
        0
    }

    /// Index of the type of `(x, y)`.
    pub fn type_index(&self, x: usize, y: usize) -> usize {
        self.pair_type[x * self.order + y]
    }

    /// `∂̃(x, y)`.
    pub fn type_of(&self, x: usize, y: usize) -> TwoWayType {
        self.types[self.type_index(x, y)]
    }

    /// `Γ_i(x)` by type index.
    pub fn fiber_by_index(&self, x: usize, i: usize) -> VertexSet {
        self.fibers[x * self.types.len() + i]
    }

    /// `Γ_ĩ(x)`; empty when the type does not occur.
    pub fn fiber(&self, x: usize, t: TwoWayType) -> VertexSet {
        self.index_of(t)
            .map_or(VertexSet::EMPTY, |i| self.fiber_by_index(x, i))
    }

    pub fn valencies(&self) -> &[Valency] {
        &self.valencies
    }

    pub fn valency(&self, t: TwoWayType) -> Option<Valency> {
        self.index_of(t).map(|i| self.valencies[i])
    }

    pub fn has_constant_valencies(&self) -> bool {
        self.valencies.iter().all(|v| v.constant().is_some())
    }

    /// All ordered pairs of type `t`, lexicographically.
    pub fn pairs(&self, t: TwoWayType) -> Vec<(usize, usize)> {
        let Some(i) = self.index_of(t) else {
            return Vec::new();
        };
        (0..self.order)
            .flat_map(|x| self.fiber_by_index(x, i).iter().map(move |y| (x, y)))
            .collect()
    }

    /// Arc types `(1, r)` present, ascending in `r`.
    pub fn arc_types(&self) -> impl Iterator<Item = TwoWayType> + '_ {
        self.types.iter().copied().filter(|t| t.is_arc())
    }
}
