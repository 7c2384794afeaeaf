//! Immutable simple digraphs on at most 64 vertices.
//!
//! Adjacency is stored as one `u64` bit row per vertex in both directions,
//! so neighbourhood intersections and BFS frontiers are word operations.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 64;

/// A set of vertices of a digraph with at most 64 vertices.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Elements in ascending order.
    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;

    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for VertexIter {}

/// A finite simple digraph: vertices `0..order`, no loops, no multiple arcs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    order: usize,
    out_rows: Vec<VertexSet>,
    in_rows: Vec<VertexSet>,
}

impl Digraph {
    /// Validates and builds a digraph.
    ///
    /// Duplicates are rejected rather than merged. With `require_not_undirected`
    /// at least one arc must lack its reverse.
    pub fn new(
        order: usize,
        arcs: &[(usize, usize)],
        require_not_undirected: bool,
    ) -> Result<Self> {
        if order == 0 || order > MAX_ORDER {
            return Err(Error::InvalidOrder {
                order,
                max: MAX_ORDER,
            });
        }
        let mut out_rows = vec![VertexSet::EMPTY; order];
        let mut in_rows = vec![VertexSet::EMPTY; order];
        for &(u, v) in arcs {
            if u >= order || v >= order {
                return Err(Error::VertexOutOfRange { u, v, order });
            }
            if u == v {
                return Err(Error::Loop(u));
            }
            if out_rows[u].contains(v) {
                return Err(Error::DuplicateArc(u, v));
            }
            out_rows[u].insert(v);
            in_rows[v].insert(u);
        }
        let d = Digraph {
            order,
            out_rows,
            in_rows,
        };
        if require_not_undirected && d.is_undirected() {
            return Err(Error::Undirected);
        }
        Ok(d)
    }

    /// Builds from raw out-neighbour rows. Caller guarantees no loops and rows
    /// restricted to `0..order`.
    pub(crate) fn from_out_rows(order: usize, out_rows: Vec<VertexSet>) -> Self {
        debug_assert!(order <= MAX_ORDER && out_rows.len() == order);
        let mut in_rows = vec![VertexSet::EMPTY; order];
        for (u, row) in out_rows.iter().enumerate() {
            debug_assert!(!row.contains(u));
            for v in row.iter() {
                in_rows[v].insert(u);
            }
        }
        Digraph {
            order,
            out_rows,
            in_rows,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn arc_count(&self) -> usize {
        self.out_rows.iter().map(|r| r.len()).sum()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.order && self.out_rows[u].contains(v)
    }

    pub fn out_neighbors(&self, u: usize) -> VertexSet {
        self.out_rows[u]
    }

    pub fn in_neighbors(&self, v: usize) -> VertexSet {
        self.in_rows[v]
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out_rows[u].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_rows[v].len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order)
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out_rows
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().map(move |v| (u, v)))
    }

    /// True when every arc has its reverse (vacuously true without arcs).
    pub fn is_undirected(&self) -> bool {
        self.out_rows == self.in_rows
    }

    /// Vertices reachable from `source` (including itself).
    pub fn reachable_from(&self, source: usize) -> VertexSet {
        let mut seen = VertexSet::singleton(source);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for u in frontier.iter() {
                next = next.union(self.out_rows[u]);
            }
            frontier = next.difference(seen);
            seen = seen.union(frontier);
        }
        seen
    }

    fn reaching(&self, target: usize) -> VertexSet {
        let mut seen = VertexSet::singleton(target);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for u in frontier.iter() {
                next = next.union(self.in_rows[u]);
            }
            frontier = next.difference(seen);
            seen = seen.union(frontier);
        }
        seen
    }

    /// First ordered pair `(x, y)` with no path from `x` to `y`.
    pub fn unreachable_pair(&self) -> Option<(usize, usize)> {
        let all = self.vertices();
        (0..self.order).find_map(|x| {
            all.difference(self.reachable_from(x))
                .first()
                .map(|y| (x, y))
        })
    }

    pub fn is_strongly_connected(&self) -> bool {
        let all = self.vertices();
        self.reachable_from(0) == all && self.reaching(0) == all
    }

    /// BFS distances from `source`; `None` marks unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.order];
        dist[source] = Some(0);
        let mut seen = VertexSet::singleton(source);
        let mut frontier = seen;
        let mut level = 0;
        while !frontier.is_empty() {
            level += 1;
            let mut next = VertexSet::EMPTY;
            for u in frontier.iter() {
                next = next.union(self.out_rows[u]);
            }
            frontier = next.difference(seen);
            for v in frontier.iter() {
                dist[v] = Some(level);
            }
            seen = seen.union(frontier);
        }
        dist
    }

    /// BFS distances to `target` along arcs, i.e. `∂(w, target)` for every `w`.
    pub fn distances_to(&self, target: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.order];
        dist[target] = Some(0);
        let mut seen = VertexSet::singleton(target);
        let mut frontier = seen;
        let mut level = 0;
        while !frontier.is_empty() {
            level += 1;
            let mut next = VertexSet::EMPTY;
            for u in frontier.iter() {
                next = next.union(self.in_rows[u]);
            }
            frontier = next.difference(seen);
            for v in frontier.iter() {
                dist[v] = Some(level);
            }
            seen = seen.union(frontier);
        }
        dist
    }

    /// All-pairs distances; fails with a witness pair if some pair has no path.
    pub fn distance_matrix(&self) -> Result<DistanceMatrix> {
        let n = self.order;
        let mut entries = Vec::with_capacity(n * n);
        for x in 0..n {
            for (y, d) in self.distances_from(x).into_iter().enumerate() {
                match d {
                    Some(d) => entries.push(d as u32),
                    None => return Err(Error::NotStronglyConnected { from: x, to: y }),
                }
            }
        }
        Ok(DistanceMatrix { order: n, entries })
    }

    /// Subdigraph induced on `vertices`, relabelled in ascending order.
    /// Returns the digraph and the map from new labels to old ones.
    pub fn induced(&self, vertices: VertexSet) -> (Digraph, Vec<usize>) {
        let map: Vec<usize> = vertices.iter().collect();
        let mut index = vec![usize::MAX; self.order];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let rows = map
            .iter()
            .map(|&u| {
                self.out_rows[u]
                    .intersection(vertices)
                    .iter()
                    .map(|v| index[v])
                    .collect()
            })
            .collect();
        (Digraph::from_out_rows(map.len(), rows), map)
    }

    /// The digraph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Digraph {
        assert_eq!(perm.len(), self.order);
        let mut rows = vec![VertexSet::EMPTY; self.order];
        for (u, v) in self.arcs() {
            rows[perm[u]].insert(perm[v]);
        }
        Digraph::from_out_rows(self.order, rows)
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Digraph")
            .field("order", &self.order)
            .field("arcs", &self.arcs().collect::<Vec<_>>())
            .finish()
    }
}

/// One-way distances `∂(x, y)` of a strongly connected digraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    order: usize,
    entries: Vec<u32>,
}

impl DistanceMatrix {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, x: usize, y: usize) -> u32 {
        self.entries[x * self.order + y]
    }

    pub fn diameter(&self) -> u32 {
        self.entries.iter().copied().max().unwrap_or(0)
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        self.entries.chunks(self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Digraph {
        Digraph::new(3, &[(0, 1), (1, 2), (2, 0)], true).unwrap()
    }

    #[test]
    fn builds_directed_triangle() {
        let d = triangle();
        assert_eq!(d.order(), 3);
        assert_eq!(d.arcs().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 0)]);
        assert!(!d.is_undirected());
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            Digraph::new(2, &[(0, 1), (1, 0)], true),
            Err(Error::Undirected)
        );
        assert_eq!(Digraph::new(3, &[(0, 0)], false), Err(Error::Loop(0)));
        assert_eq!(
            Digraph::new(3, &[(0, 1), (0, 1)], false),
            Err(Error::DuplicateArc(0, 1))
        );
        assert!(matches!(
            Digraph::new(3, &[(0, 3)], false),
            Err(Error::VertexOutOfRange { .. })
        ));
        assert!(matches!(
            Digraph::new(0, &[], false),
            Err(Error::InvalidOrder { .. })
        ));
        assert!(matches!(
            Digraph::new(65, &[], false),
            Err(Error::InvalidOrder { .. })
        ));
        // symmetric input is fine when the flag is off
        assert!(Digraph::new(2, &[(0, 1), (1, 0)], false).is_ok());
    }

    #[test]
    fn strong_connectivity() {
        assert!(triangle().is_strongly_connected());
        let two = Digraph::new(4, &[(0, 1), (1, 0), (2, 3), (3, 2)], false).unwrap();
        assert!(!two.is_strongly_connected());
        assert_eq!(two.unreachable_pair(), Some((0, 2)));
        assert_eq!(
            two.distance_matrix(),
            Err(Error::NotStronglyConnected { from: 0, to: 2 })
        );
        let path = Digraph::new(3, &[(0, 1), (1, 2)], true).unwrap();
        assert_eq!(path.unreachable_pair(), Some((1, 0)));
    }

    #[test]
    fn triangle_distances() {
        let m = triangle().distance_matrix().unwrap();
        assert_eq!(m.get(0, 2), 2);
        assert_eq!(m.get(2, 0), 1);
        assert_eq!(m.get(1, 1), 0);
        assert_eq!(m.diameter(), 2);
    }

    #[test]
    fn vertex_set_ops() {
        let s: VertexSet = [1, 5, 63].into_iter().collect();
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![1, 5, 63]);
        assert_eq!(s.len(), 3);
        assert_eq!(VertexSet::full(64).len(), 64);
        assert_eq!(s.first(), Some(1));
    }

    #[test]
    fn induced_keeps_labels() {
        let d = triangle();
        let (sub, map) = d.induced([0, 2].into_iter().collect());
        assert_eq!(map, vec![0, 2]);
        assert_eq!(sub.arcs().collect::<Vec<_>>(), vec![(1, 0)]);
    }
}
