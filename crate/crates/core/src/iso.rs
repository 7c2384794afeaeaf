//! Isomorphism testing and canonical certificates for digraphs of order ≤ 16.
//!
//! Two independent routes:
//!
//! * [`canonical_certificate`] computes a lexicographically minimal encoding
//!   over vertex orderings. Position `k` contributes the chunk
//!   `(class(v_k), ∂(v_0,v_k), ∂(v_k,v_0), .., ∂(v_{k-1},v_k), ∂(v_k,v_{k-1}))`,
//!   so only candidates with the smallest chunk are expanded at each node.
//!   Automorphisms discovered at equal leaves prune sibling subtrees in the
//!   same orbit. The certificate is the adjacency matrix under the winning
//!   ordering.
//! * [`are_isomorphic`] is a plain backtracking search for a distance
//!   preserving bijection.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::digraph::{Digraph, VertexSet};
use crate::error::{Error, Result};

pub const MAX_ISO_ORDER: usize = 16;
const UNREACHABLE: u32 = u32::MAX;
const MAX_STORED_AUTOMORPHISMS: usize = 512;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Certificate(Vec<u8>);

impl Certificate {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    pub fn from_hex(s: &str) -> std::result::Result<Self, hex::FromHexError> {
        hex::decode(s).map(Certificate)
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Debug for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Certificate({})", self.to_hex())
    }
}

impl Serialize for Certificate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for Certificate {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Certificate::from_hex(&s).map_err(serde::de::Error::custom)
    }
}

fn check_order(d: &Digraph) -> Result<()> {
    if d.order() > MAX_ISO_ORDER {
        return Err(Error::OrderTooLarge {
            order: d.order(),
            max: MAX_ISO_ORDER,
        });
    }
    Ok(())
}

struct Profile {
    n: usize,
    dist: Vec<u32>,
    invariants: Vec<Vec<u32>>,
}

impl Profile {
    fn new(d: &Digraph) -> Self {
        let n = d.order();
        let mut dist = vec![UNREACHABLE; n * n];
        for x in 0..n {
            for (y, v) in d.distances_from(x).into_iter().enumerate() {
                if let Some(v) = v {
                    dist[x * n + y] = v as u32;
                }
            }
        }
        // (out-degree, in-degree, sorted two-way types from the vertex)
        let invariants = (0..n)
            .map(|x| {
                let mut types: Vec<(u32, u32)> =
                    (0..n).map(|y| (dist[x * n + y], dist[y * n + x])).collect();
                types.sort_unstable();
                let mut inv = vec![d.out_degree(x) as u32, d.in_degree(x) as u32];
                inv.extend(types.into_iter().flat_map(|(a, b)| [a, b]));
                inv
            })
            .collect();
        Profile {
            n,
            dist,
            invariants,
        }
    }

    fn dist(&self, x: usize, y: usize) -> u32 {
        self.dist[x * self.n + y]
    }

    /// Rank of each vertex's invariant among the distinct invariant values.
    fn classes(&self) -> Vec<u32> {
        let mut distinct = self.invariants.clone();
        distinct.sort();
        distinct.dedup();
        self.invariants
            .iter()
            .map(|inv| distinct.binary_search(inv).unwrap() as u32)
            .collect()
    }

    fn sorted_invariants(&self) -> Vec<Vec<u32>> {
        let mut v = self.invariants.clone();
        v.sort();
        v
    }
}

struct CanonSearch<'a> {
    profile: &'a Profile,
    classes: Vec<u32>,
    best: Option<(Vec<usize>, Vec<Vec<u32>>)>,
    automorphisms: Vec<Vec<usize>>,
}

impl CanonSearch<'_> {
    fn chunk(&self, prefix: &[usize], c: usize) -> Vec<u32> {
        let mut chunk = Vec::with_capacity(1 + 2 * prefix.len());
        chunk.push(self.classes[c]);
        for &p in prefix {
            chunk.push(self.profile.dist(p, c));
            chunk.push(self.profile.dist(c, p));
        }
        chunk
    }

    fn search(&mut self, prefix: &mut Vec<usize>, chunks: &mut Vec<Vec<u32>>, used: VertexSet) {
        let n = self.profile.n;
        if prefix.len() == n {
            match self.compare_with_best(chunks) {
                Some(Ordering::Equal) => {
                    let best = &self.best.as_ref().expect("compared against best").0;
                    if self.automorphisms.len() < MAX_STORED_AUTOMORPHISMS {
                        let mut gamma = vec![0; n];
                        for i in 0..n {
                            gamma[best[i]] = prefix[i];
                        }
                        self.automorphisms.push(gamma);
                    }
                }
                Some(Ordering::Less) => self.best = Some((prefix.clone(), chunks.clone())),
                _ => {}
            }
            return;
        }

        let free = VertexSet::full(n).difference(used);
        let mut min_chunk: Option<Vec<u32>> = None;
        let mut candidates = Vec::new();
        for c in free.iter() {
            let ch = self.chunk(prefix, c);
            match min_chunk.as_ref().map(|m| ch.cmp(m)) {
                None | Some(Ordering::Less) => {
                    min_chunk = Some(ch);
                    candidates.clear();
                    candidates.push(c);
                }
                Some(Ordering::Equal) => candidates.push(c),
                Some(Ordering::Greater) => {}
            }
        }
        chunks.push(min_chunk.expect("free vertex exists"));

        let mut explored: Vec<usize> = Vec::new();
        for c in candidates {
            // the best may have improved while exploring an earlier sibling
            if self.compare_with_best(chunks).is_none() {
                break;
            }
            if !explored.is_empty() && self.same_orbit_as_explored(prefix, c, &explored) {
                continue;
            }
            explored.push(c);
            prefix.push(c);
            self.search(prefix, chunks, used.union(VertexSet::singleton(c)));
            prefix.pop();
        }
        chunks.pop();
    }

    /// Order of the chunk prefix relative to the best leaf's prefix; `None`
    /// when it is already worse. No best yet counts as `Less`.
    fn compare_with_best(&self, chunks: &[Vec<u32>]) -> Option<Ordering> {
        let Some((_, best)) = &self.best else {
            return Some(Ordering::Less);
        };
        match chunks.iter().cmp(best[..chunks.len()].iter()) {
            Ordering::Greater => None,
            o => Some(o),
        }
    }

    fn same_orbit_as_explored(&self, prefix: &[usize], c: usize, explored: &[usize]) -> bool {
        let n = self.profile.n;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for gamma in &self.automorphisms {
            if prefix.iter().all(|&v| gamma[v] == v) {
                any = true;
                for (v, &w) in gamma.iter().enumerate() {
                    let (a, b) = (find(&mut parent, v), find(&mut parent, w));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        if !any {
            return false;
        }
        let root = find(&mut parent, c);
        explored.iter().any(|&e| find(&mut parent, e) == root)
    }
}

/// A vertex ordering `λ` (position → vertex) achieving the canonical form.
pub fn canonical_labeling(d: &Digraph) -> Result<Vec<usize>> {
    check_order(d)?;
    let profile = Profile::new(d);
    let mut search = CanonSearch {
        classes: profile.classes(),
        profile: &profile,
        best: None,
        automorphisms: Vec::new(),
    };
    search.search(&mut Vec::new(), &mut Vec::new(), VertexSet::EMPTY);
    Ok(search.best.expect("at least one leaf").0)
}

/// Relabelling-invariant certificate: order byte, then the adjacency matrix
/// under the canonical ordering, row-major, packed 8 entries per byte.
pub fn canonical_certificate(d: &Digraph) -> Result<Certificate> {
    let lambda = canonical_labeling(d)?;
    let n = d.order();
    let mut bytes = vec![n as u8];
    let mut acc = 0u8;
    let mut filled = 0;
    for i in 0..n {
        for j in 0..n {
            acc = acc << 1 | d.has_arc(lambda[i], lambda[j]) as u8;
            filled += 1;
            if filled == 8 {
                bytes.push(acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        bytes.push(acc << (8 - filled));
    }
    Ok(Certificate(bytes))
}

/// A bijection `f` with `(u,v)` an arc of `a` iff `(f(u),f(v))` is an arc of
/// `b`, if one exists.
pub fn are_isomorphic(a: &Digraph, b: &Digraph) -> Result<Option<Vec<usize>>> {
    check_order(a)?;
    check_order(b)?;
    if a.order() != b.order() || a.arc_count() != b.arc_count() {
        return Ok(None);
    }
    let pa = Profile::new(a);
    let pb = Profile::new(b);
    if pa.sorted_invariants() != pb.sorted_invariants() {
        return Ok(None);
    }
    let n = a.order();
    let order = mapping_order(a);
    let mut image = vec![usize::MAX; n];
    if extend(&pa, &pb, &order, 0, &mut image, VertexSet::EMPTY) {
        Ok(Some(image))
    } else {
        Ok(None)
    }
}

/// Vertices of `a` in BFS order over the underlying graph, so each newly
/// mapped vertex is adjacent to an earlier one where possible.
fn mapping_order(a: &Digraph) -> Vec<usize> {
    let n = a.order();
    let mut seen = VertexSet::EMPTY;
    let mut order = Vec::with_capacity(n);
    for start in 0..n {
        if seen.contains(start) {
            continue;
        }
        seen.insert(start);
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for w in a
                .out_neighbors(u)
                .union(a.in_neighbors(u))
                .difference(seen)
                .iter()
            {
                seen.insert(w);
                queue.push_back(w);
            }
        }
    }
    order
}

fn extend(
    pa: &Profile,
    pb: &Profile,
    order: &[usize],
    k: usize,
    image: &mut [usize],
    used: VertexSet,
) -> bool {
    if k == order.len() {
        return true;
    }
    let u = order[k];
    for w in VertexSet::full(pb.n).difference(used).iter() {
        if pa.invariants[u] != pb.invariants[w] {
            continue;
        }
        let consistent = order[..k].iter().all(|&x| {
            let fx = image[x];
            pa.dist(x, u) == pb.dist(fx, w) && pa.dist(u, x) == pb.dist(w, fx)
        });
        if !consistent {
            continue;
        }
        image[u] = w;
        if extend(
            pa,
            pb,
            order,
            k + 1,
            image,
            used.union(VertexSet::singleton(w)),
        ) {
            return true;
        }
        image[u] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::cayley_cyclic;

    fn is_iso_map(a: &Digraph, b: &Digraph, f: &[usize]) -> bool {
        (0..a.order()).all(|u| (0..a.order()).all(|v| a.has_arc(u, v) == b.has_arc(f[u], f[v])))
    }

    #[test]
    fn reversal_of_triangle() {
        let a = cayley_cyclic(3, [1]).unwrap();
        let b = cayley_cyclic(3, [2]).unwrap();
        let f = are_isomorphic(&a, &b).unwrap().unwrap();
        assert!(is_iso_map(&a, &b, &f));
        assert_eq!(
            canonical_certificate(&a).unwrap(),
            canonical_certificate(&b).unwrap()
        );
    }

    #[test]
    fn degree_mismatch() {
        let a = cayley_cyclic(6, [1, 3, 4]).unwrap();
        let b = cayley_cyclic(6, [1, 2, 3, 5]).unwrap();
        assert_eq!(are_isomorphic(&a, &b).unwrap(), None);
        assert_ne!(
            canonical_certificate(&a).unwrap(),
            canonical_certificate(&b).unwrap()
        );
    }

    #[test]
    fn order_limit() {
        let big = cayley_cyclic(17, [1]).unwrap();
        assert!(matches!(
            canonical_certificate(&big),
            Err(Error::OrderTooLarge { .. })
        ));
        assert!(matches!(
            are_isomorphic(&big, &big),
            Err(Error::OrderTooLarge { .. })
        ));
    }

    #[test]
    fn certificate_hex_round_trip() {
        let c = canonical_certificate(&cayley_cyclic(4, [1, 2]).unwrap()).unwrap();
        assert_eq!(Certificate::from_hex(&c.to_hex()).unwrap(), c);
        assert_eq!(c.as_bytes()[0], 4);
    }

    #[test]
    fn handles_disconnected_input() {
        let a = Digraph::new(4, &[(0, 1), (2, 3)], false).unwrap();
        let b = Digraph::new(4, &[(3, 2), (1, 0)], false).unwrap();
        let c = Digraph::new(4, &[(0, 1), (1, 2)], false).unwrap();
        assert!(are_isomorphic(&a, &b).unwrap().is_some());
        assert_eq!(
            canonical_certificate(&a).unwrap(),
            canonical_certificate(&b).unwrap()
        );
        assert!(are_isomorphic(&a, &c).unwrap().is_none());
        assert_ne!(
            canonical_certificate(&a).unwrap(),
            canonical_certificate(&c).unwrap()
        );
    }
}
