//! Components `Δ_q` of the arc-type digraphs `(V, Γ_{1,q-1})` and their
//! expected shapes: complete bipartite for `q = 2`, and
//! `Cay(Z_q × Z_m, {(1,0), .., (1,m-1)})` when `p^{(2,q-2)}_{(1,q-1),(1,q-1)} = m > 0`.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::cayley::cayley_product;
use crate::checks::{CheckResult, Status};
use crate::digraph::{Digraph, VertexSet};
use crate::error::{Error, Result};
use crate::iso::{are_isomorphic, MAX_ISO_ORDER};
use crate::relation::{RelationPartition, TwoWayType};
use crate::scheme::{IntersectionTensor, SchemeReport};

/// The weak component of `(V, Γ_{1,q-1})` containing `x`, keeping only arcs of
/// type `(1, q-1)`, with the map from component labels to original vertices.
pub fn delta_component(
    part: &RelationPartition,
    q: u32,
    x: usize,
) -> Result<(Digraph, Vec<usize>)> {
    let (rows, comp) = component_rows(part, q, x)?;
    let d = Digraph::from_out_rows(part.order(), rows);
    Ok(d.induced(comp))
}

fn component_rows(
    part: &RelationPartition,
    q: u32,
    x: usize,
) -> Result<(Vec<VertexSet>, VertexSet)> {
    let ty = TwoWayType::arc(q.saturating_sub(1));
    let i = part
        .index_of(ty)
        .filter(|_| q >= 2)
        .ok_or(Error::TypeAbsent(ty))?;
    let rows: Vec<VertexSet> = (0..part.order())
        .map(|u| part.fiber_by_index(u, i))
        .collect();
    let back = part.conjugate_index(i);
    let mut comp = VertexSet::singleton(x);
    let mut queue = VecDeque::from([x]);
    while let Some(u) = queue.pop_front() {
        let next = rows[u].union(part.fiber_by_index(u, back)).difference(comp);
        for w in next.iter() {
            comp.insert(w);
            queue.push_back(w);
        }
    }
    Ok((rows, comp))
}

/// Distinct components of `(V, Γ_{1,q-1})`, each by its smallest vertex.
fn component_roots(part: &RelationPartition, q: u32) -> Result<Vec<usize>> {
    let mut covered = VertexSet::EMPTY;
    let mut roots = Vec::new();
    for x in 0..part.order() {
        if !covered.contains(x) {
            let (_, comp) = component_rows(part, q, x)?;
            covered = covered.union(comp);
            roots.push(x);
        }
    }
    Ok(roots)
}

/// Whether `d` is `K_{n,n}`: connected, symmetric, bipartite with both parts of
/// size `n`, every cross pair joined and no pair inside a part joined.
pub fn is_complete_bipartite(d: &Digraph, n: usize) -> std::result::Result<(), String> {
    let order = d.order();
    if order != 2 * n {
        return Err(format!("order {order}, expected {}", 2 * n));
    }
    let mut side = vec![None; order];
    side[0] = Some(false);
    let mut queue = VecDeque::from([0]);
    while let Some(u) = queue.pop_front() {
        let s = side[u].unwrap();
        for w in d.out_neighbors(u).union(d.in_neighbors(u)).iter() {
            match side[w] {
                None => {
                    side[w] = Some(!s);
                    queue.push_back(w);
                }
                Some(t) if t == s => return Err(format!("odd cycle through {u} and {w}")),
                _ => {}
            }
        }
    }
    if side.iter().any(|s| s.is_none()) {
        return Err("not connected".into());
    }
    let left = side.iter().filter(|s| **s == Some(false)).count();
    if left != n {
        return Err(format!("parts of sizes {left} and {}", order - left));
    }
    for u in 0..order {
        for v in 0..order {
            let cross = side[u] != side[v];
            if cross != d.has_arc(u, v) {
                return Err(format!(
                    "pair ({u},{v}): cross={cross} arc={}",
                    d.has_arc(u, v)
                ));
            }
        }
    }
    Ok(())
}

pub const SYMMETRIC_ARC_COMPONENT_BIPARTITE: &str = "symmetric_arc_component_bipartite";
pub const ARC_COMPONENT_CAYLEY_STRUCTURE: &str = "arc_component_cayley_structure";
pub const ARC_POWERS_COLLAPSE: &str = "arc_powers_collapse";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaReport {
    /// `k_{1,1}` when `(1,1)` occurs.
    pub bipartite_n: Option<usize>,
    /// `(q, m)` pairs for which the Cayley shape was checked.
    pub cayley_instances: Vec<(u32, u32)>,
    pub checks: Vec<CheckResult>,
}

impl DeltaReport {
    pub fn status(&self, check: &str) -> Option<Status> {
        self.checks
            .iter()
            .find(|c| c.check == check)
            .map(|c| c.status)
    }
}

/// `None` unless the scheme is regular and commutative.
pub fn check_delta_structure(
    part: &RelationPartition,
    t: &IntersectionTensor,
    flags: &SchemeReport,
) -> Option<DeltaReport> {
    if !(flags.is_wdr && flags.regular && flags.commutative) {
        return None;
    }
    let mut bip = CheckResult::new(SYMMETRIC_ARC_COMPONENT_BIPARTITE);
    let mut cay = CheckResult::new(ARC_COMPONENT_CAYLEY_STRUCTURE);
    let mut powers = CheckResult::new(ARC_POWERS_COLLAPSE);

    let bipartite_n = t.valency(TwoWayType::arc(1));
    if let Some(n) = bipartite_n {
        for root in component_roots(part, 2).expect("(1,1) present") {
            let (comp, map) = delta_component(part, 2, root).expect("(1,1) present");
            record(
                &mut bip,
                is_complete_bipartite(&comp, n)
                    .map_err(|e| format!("component of {}: {e}", map[0])),
            );
        }
    }

    let mut cayley_instances = Vec::new();
    for a in part.arc_types() {
        let q = a.backward + 1;
        if q < 3 {
            continue;
        }
        let m = t.p(TwoWayType::new(2, q - 2), a, a);
        if m == 0 {
            continue;
        }
        cayley_instances.push((q, m));
        let (qs, ms) = (q as usize, m as usize);
        for root in component_roots(part, q).expect("arc type present") {
            let (comp, map) = delta_component(part, q, root).expect("arc type present");
            let verdict = if comp.order() != qs * ms {
                Err(format!(
                    "component of {} has order {}, expected {}",
                    map[0],
                    comp.order(),
                    qs * ms
                ))
            } else if comp.order() > MAX_ISO_ORDER {
                Err(format!("component of {} exceeds isomorphism limit", map[0]))
            } else {
                let model =
                    cayley_product(qs, ms, (0..ms).map(|j| (1, j))).expect("valid product group");
                match are_isomorphic(&comp, &model) {
                    Ok(Some(_)) => Ok(()),
                    Ok(None) => Err(format!(
                        "q={q} m={m}: component of {} not isomorphic",
                        map[0]
                    )),
                    Err(e) => Err(e.to_string()),
                }
            };
            record(&mut cay, verdict);
        }
        for l in 1..q {
            let p = t.power(a, l as usize).expect("arc type present");
            let want = TwoWayType::new(l, q - l);
            let ok = p.len() == 1 && p.contains(&want);
            record(
                &mut powers,
                if ok {
                    Ok(())
                } else {
                    Err(format!("q={q} l={l}: power {p:?}"))
                },
            );
        }
    }

    Some(DeltaReport {
        bipartite_n,
        cayley_instances,
        checks: vec![bip, cay, powers],
    })
}

fn record(c: &mut CheckResult, verdict: std::result::Result<(), String>) {
    match verdict {
        Ok(()) => c.fired(true, String::new),
        Err(e) => c.fired(false, || e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::cayley_cyclic;

    #[test]
    fn component_of_z4() {
        let d = cayley_cyclic(4, [1, 2]).unwrap();
        let part = RelationPartition::new(&d).unwrap();
        let (comp, map) = delta_component(&part, 2, 0).unwrap();
        assert_eq!(map, vec![0, 2]);
        assert_eq!(comp.arcs().collect::<Vec<_>>(), vec![(0, 1), (1, 0)]);
        assert!(is_complete_bipartite(&comp, 1).is_ok());
        assert!(matches!(
            delta_component(&part, 5, 0),
            Err(Error::TypeAbsent(_))
        ));
    }

    #[test]
    fn triangle_component_is_whole() {
        let d = cayley_cyclic(3, [1]).unwrap();
        let part = RelationPartition::new(&d).unwrap();
        let (comp, map) = delta_component(&part, 3, 0).unwrap();
        assert_eq!(map, vec![0, 1, 2]);
        assert_eq!(comp, d);
    }

    #[test]
    fn bipartite_rejections() {
        let tri =
            Digraph::new(3, &[(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)], false).unwrap();
        assert!(is_complete_bipartite(&tri, 1).is_err());
        let path =
            Digraph::new(4, &[(0, 1), (1, 0), (1, 2), (2, 1), (2, 3), (3, 2)], false).unwrap();
        assert!(is_complete_bipartite(&path, 2).is_err());
        let c4 = Digraph::new(
            4,
            &[
                (0, 1),
                (1, 0),
                (1, 2),
                (2, 1),
                (2, 3),
                (3, 2),
                (3, 0),
                (0, 3),
            ],
            false,
        )
        .unwrap();
        assert!(is_complete_bipartite(&c4, 2).is_ok());
    }
}
