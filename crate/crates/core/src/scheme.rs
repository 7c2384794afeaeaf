//! Intersection numbers and the algebra of relations.
//!
//! A digraph is weakly distance-regular when, for every pair `(x, y)` of type
//! `h`, the count `|{z : ∂̃(x,z) = i, ∂̃(z,y) = j}|` depends only on the three
//! types. [`IntersectionTensor::compute`] verifies that constancy pair by pair
//! and stops at the first violation.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::digraph::VertexSet;
use crate::error::{Error, Result};
use crate::relation::{RelationPartition, TwoWayType, Valency};

pub type TypeSet = BTreeSet<TwoWayType>;

/// Two pairs of the same type `h` with different counts for `(i, j)`.
///
/// A non-constant valency `k_i` is reported as `h = (0,0)`, `j = i*`, since
/// `p^{(0,0)}_{i,i*}(x,x) = |Γ_i(x)|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WdrWitness {
    pub h: TwoWayType,
    pub i: TwoWayType,
    pub j: TwoWayType,
    pub pair1: (usize, usize),
    pub pair2: (usize, usize),
    pub count1: usize,
    pub count2: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionTensor {
    types: Vec<TwoWayType>,
    conjugate: Vec<usize>,
    valencies: Vec<usize>,
    /// `p[(h * r + i) * r + j] = p^h_{i,j}`.
    p: Vec<u32>,
}

impl IntersectionTensor {
    pub fn compute(part: &RelationPartition) -> std::result::Result<Self, WdrWitness> {
        let n = part.order();
        let r = part.rank();
        let types = part.types();

        if let Some(i) = part
            .valencies()
            .iter()
            .position(|v| *v == Valency::NonConstant)
        {
            let k0 = part.fiber_by_index(0, i).len();
            let y = (1..n)
                .find(|&y| part.fiber_by_index(y, i).len() != k0)
                .expect("non-constant valency has a differing vertex");
            return Err(WdrWitness {
                h: TwoWayType::IDENTITY,
                i: types[i],
                j: types[i].conjugate(),
                pair1: (0, 0),
                pair2: (y, y),
                count1: k0,
                count2: part.fiber_by_index(y, i).len(),
            });
        }

        let mut p = vec![0u32; r * r * r];
        let mut reference: Vec<Option<(usize, usize)>> = vec![None; r];
        let mut scratch = vec![0u32; r * r];
        for x in 0..n {
            for y in 0..n {
                let h = part.type_index(x, y);
                scratch.iter_mut().for_each(|c| *c = 0);
                for z in 0..n {
                    scratch[part.type_index(x, z) * r + part.type_index(z, y)] += 1;
                }
                let block = &mut p[h * r * r..(h + 1) * r * r];
                match reference[h] {
                    None => {
                        block.copy_from_slice(&scratch);
                        reference[h] = Some((x, y));
                    }
                    Some(first) => {
                        if let Some(idx) = (0..r * r).find(|&k| block[k] != scratch[k]) {
                            return Err(WdrWitness {
                                h: types[h],
                                i: types[idx / r],
                                j: types[idx % r],
                                pair1: first,
                                pair2: (x, y),
                                count1: block[idx] as usize,
                                count2: scratch[idx] as usize,
                            });
                        }
                    }
                }
            }
        }

        let valencies = part
            .valencies()
            .iter()
            .map(|v| v.constant().expect("checked above"))
            .collect();
        Ok(IntersectionTensor {
            types: types.to_vec(),
            conjugate: (0..r).map(|i| part.conjugate_index(i)).collect(),
            valencies,
            p,
        })
    }

    /// Builds a tensor from explicit entries. Used by tests and bindings that
    /// already hold intersection numbers.
    pub fn from_parts(types: Vec<TwoWayType>, valencies: Vec<usize>, p: Vec<u32>) -> Result<Self> {
        let r = types.len();
        assert_eq!(valencies.len(), r);
        assert_eq!(p.len(), r * r * r);
        let conjugate = types
            .iter()
            .map(|t| {
                types
                    .binary_search(&t.conjugate())
                    .map_err(|_| Error::UnknownType(t.conjugate()))
            })
            .collect::<Result<_>>()?;
        Ok(IntersectionTensor {
            types,
            conjugate,
            valencies,
            p,
        })
    }

    pub fn types(&self) -> &[TwoWayType] {
        &self.types
    }

    pub fn rank(&self) -> usize {
        self.types.len()
    }

    pub fn index_of(&self, t: TwoWayType) -> Option<usize> {
        self.types.binary_search(&t).ok()
    }

    fn require(&self, t: TwoWayType) -> Result<usize> {
        self.index_of(t).ok_or(Error::UnknownType(t))
    }

    pub fn contains(&self, t: TwoWayType) -> bool {
        self.index_of(t).is_some()
    }

    pub fn conjugate_index(&self, i: usize) -> usize {
        self.conjugate[i]
    }

    pub fn valency_at(&self, i: usize) -> usize {
        self.valencies[i]
    }

    pub fn valency(&self, t: TwoWayType) -> Option<usize> {
        self.index_of(t).map(|i| self.valencies[i])
    }

    /// `p^h_{i,j}` by index.
    pub fn at(&self, h: usize, i: usize, j: usize) -> u32 {
        let r = self.types.len();
        self.p[(h * r + i) * r + j]
    }

    /// `p^h_{i,j}`; zero when any type is absent.
    pub fn p(&self, h: TwoWayType, i: TwoWayType, j: TwoWayType) -> u32 {
        match (self.index_of(h), self.index_of(i), self.index_of(j)) {
            (Some(h), Some(i), Some(j)) => self.at(h, i, j),
            _ => 0,
        }
    }

    /// Every nonzero entry as `(h, i, j, p)`, in index order.
    pub fn nonzero_entries(
        &self,
    ) -> impl Iterator<Item = (TwoWayType, TwoWayType, TwoWayType, u32)> + '_ {
        let r = self.types.len();
        self.p
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(move |(k, &v)| {
                (
                    self.types[k / (r * r)],
                    self.types[k / r % r],
                    self.types[k % r],
                    v,
                )
            })
    }

    pub fn raw(&self) -> &[u32] {
        &self.p
    }

    pub(crate) fn product_idx(&self, e: &[usize], f: &[usize]) -> Vec<usize> {
        (0..self.rank())
            .filter(|&h| e.iter().any(|&i| f.iter().any(|&j| self.at(h, i, j) != 0)))
            .collect()
    }

    fn indices(&self, set: &TypeSet) -> Result<Vec<usize>> {
        set.iter().map(|&t| self.require(t)).collect()
    }

    fn to_set(&self, idx: &[usize]) -> TypeSet {
        idx.iter().map(|&i| self.types[i]).collect()
    }

    /// `EF = {Γ_h : Σ_{i∈E, j∈F} p^h_{i,j} ≠ 0}`.
    pub fn relation_product(&self, e: &TypeSet, f: &TypeSet) -> Result<TypeSet> {
        let e = self.indices(e)?;
        let f = self.indices(f)?;
        Ok(self.to_set(&self.product_idx(&e, &f)))
    }

    /// `Γ_a Γ_b`.
    pub fn product(&self, a: TwoWayType, b: TwoWayType) -> Result<TypeSet> {
        let a = self.require(a)?;
        let b = self.require(b)?;
        Ok(self.to_set(&self.product_idx(&[a], &[b])))
    }

    /// The `l`-fold product `Γ_t^l`, `l ≥ 1`, folded from the left.
    pub fn power(&self, t: TwoWayType, l: usize) -> Result<TypeSet> {
        assert!(l >= 1);
        let t = self.require(t)?;
        let mut acc = vec![t];
        for _ in 1..l {
            acc = self.product_idx(&acc, &[t]);
        }
        Ok(self.to_set(&acc))
    }

    /// Smallest set containing `generators` and closed under
    /// `(Γ_a, Γ_b) ↦ Γ_{a*}Γ_b`. Always contains `(0,0)`.
    pub fn closed_subset(&self, generators: &TypeSet) -> Result<TypeSet> {
        let r = self.rank();
        let mut member = vec![false; r];
        for i in self.indices(generators)? {
            member[i] = true;
        }
        member[0] = true;
        loop {
            let current: Vec<usize> = (0..r).filter(|&i| member[i]).collect();
            let stars: Vec<usize> = current.iter().map(|&i| self.conjugate[i]).collect();
            let mut grew = false;
            for h in self.product_idx(&stars, &current) {
                if !member[h] {
                    member[h] = true;
                    grew = true;
                }
            }
            if !grew {
                return Ok(self.to_set(&current));
            }
        }
    }

    pub fn is_commutative(&self) -> bool {
        let r = self.rank();
        (0..r).all(|h| (0..r).all(|i| (i + 1..r).all(|j| self.at(h, i, j) == self.at(h, j, i))))
    }

    /// `Γ_{i*}(Γ_i Γ_i) = {Γ_i}` for every type, identity included.
    pub fn is_regular(&self) -> bool {
        (0..self.rank()).all(|i| {
            let sq = self.product_idx(&[i], &[i]);
            self.product_idx(&[self.conjugate[i]], &sq) == [i]
        })
    }

    /// Whether `(Γ_{i*}Γ_i)Γ_i = Γ_{i*}(Γ_iΓ_i)` for every type.
    pub fn regularity_products_associate(&self) -> bool {
        (0..self.rank()).all(|i| {
            let c = self.conjugate[i];
            let left = self.product_idx(&self.product_idx(&[c], &[i]), &[i]);
            let right = self.product_idx(&[c], &self.product_idx(&[i], &[i]));
            left == right
        })
    }

    pub fn flags(&self) -> SchemeReport {
        let max_valency = self.valencies.iter().copied().max().unwrap_or(1);
        let nonidentity = &self.valencies[1..];
        let equivalenced = match nonidentity.first() {
            Some(&k) if nonidentity.iter().all(|&v| v == k) => Some(k),
            _ => None,
        };
        SchemeReport {
            is_wdr: true,
            wdr_witness: None,
            commutative: self.is_commutative(),
            regular: self.is_regular(),
            max_valency,
            thin: max_valency == 1,
            quasi_thin: max_valency == 2,
            equivalenced,
        }
    }

    /// Checks `k_f p^f_{d,e} = k_d p^d_{f,e*} = k_e p^e_{d*,f}` for all triples
    /// and `|Γ_dΓ_e| ≤ gcd(k_d, k_e)` for all pairs.
    pub fn check_identities(&self) -> IdentityReport {
        let r = self.rank();
        let k = |i: usize| self.valencies[i] as u64;
        let mut report = IdentityReport::default();
        for d in 0..r {
            for e in 0..r {
                for f in 0..r {
                    report.triples_checked += 1;
                    let a = k(f) * self.at(f, d, e) as u64;
                    let b = k(d) * self.at(d, f, self.conjugate[e]) as u64;
                    let c = k(e) * self.at(e, self.conjugate[d], f) as u64;
                    if (a != b || b != c) && report.first_violation.is_none() {
                        report.first_violation = Some(IdentityViolation::Triple {
                            d: self.types[d],
                            e: self.types[e],
                            f: self.types[f],
                            values: [a, b, c],
                        });
                    }
                }
                report.pairs_checked += 1;
                let size = self.product_idx(&[d], &[e]).len();
                let bound = gcd(self.valencies[d], self.valencies[e]);
                if size > bound && report.first_violation.is_none() {
                    report.first_violation = Some(IdentityViolation::ProductBound {
                        d: self.types[d],
                        e: self.types[e],
                        size,
                        gcd: bound,
                    });
                }
            }
        }
        report
    }
}

pub(crate) fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `P_{i,j}(x, y) = Γ_i(x) ∩ Γ_{j*}(y)`.
pub fn pset(
    part: &RelationPartition,
    i: TwoWayType,
    j: TwoWayType,
    x: usize,
    y: usize,
) -> VertexSet {
    part.fiber(x, i).intersection(part.fiber(y, j.conjugate()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeReport {
    pub is_wdr: bool,
    pub wdr_witness: Option<WdrWitness>,
    pub commutative: bool,
    pub regular: bool,
    /// Zero when the digraph is not weakly distance-regular.
    pub max_valency: usize,
    pub thin: bool,
    pub quasi_thin: bool,
    pub equivalenced: Option<usize>,
}

impl SchemeReport {
    pub fn failed(witness: WdrWitness) -> Self {
        SchemeReport {
            is_wdr: false,
            wdr_witness: Some(witness),
            commutative: false,
            regular: false,
            max_valency: 0,
            thin: false,
            quasi_thin: false,
            equivalenced: None,
        }
    }

    /// Weakly distance-regular, commutative and regular.
    pub fn hypotheses_hold(&self) -> bool {
        self.is_wdr && self.commutative && self.regular
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IdentityViolation {
    Triple {
        d: TwoWayType,
        e: TwoWayType,
        f: TwoWayType,
        values: [u64; 3],
    },
    ProductBound {
        d: TwoWayType,
        e: TwoWayType,
        size: usize,
        gcd: usize,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub triples_checked: usize,
    pub pairs_checked: usize,
    pub first_violation: Option<IdentityViolation>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.first_violation.is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::Digraph;

    fn t(a: u32, b: u32) -> TwoWayType {
        TwoWayType::new(a, b)
    }

    fn set(ts: &[TwoWayType]) -> TypeSet {
        ts.iter().copied().collect()
    }

    fn triangle_tensor() -> (RelationPartition, IntersectionTensor) {
        let d = Digraph::new(3, &[(0, 1), (1, 2), (2, 0)], true).unwrap();
        let part = RelationPartition::new(&d).unwrap();
        let tensor = IntersectionTensor::compute(&part).unwrap();
        (part, tensor)
    }

    #[test]
    fn triangle_entries() {
        let (part, tensor) = triangle_tensor();
        assert_eq!(tensor.p(t(2, 1), t(1, 2), t(1, 2)), 1);
        assert_eq!(tensor.p(t(1, 2), t(1, 2), t(1, 2)), 0);
        assert_eq!(
            tensor
                .relation_product(&set(&[t(1, 2)]), &set(&[t(1, 2)]))
                .unwrap(),
            set(&[t(2, 1)])
        );
        assert_eq!(
            tensor.closed_subset(&set(&[t(1, 2)])).unwrap(),
            set(&[t(0, 0), t(1, 2), t(2, 1)])
        );
        assert_eq!(pset(&part, t(1, 2), t(1, 2), 0, 2), VertexSet::singleton(1));
        assert!(tensor.check_identities().holds());
        let flags = tensor.flags();
        assert!(flags.commutative && flags.regular && flags.thin);
        assert_eq!(flags.equivalenced, Some(1));
    }

    #[test]
    fn identity_products() {
        let (_, tensor) = triangle_tensor();
        let id = set(&[TwoWayType::IDENTITY]);
        assert_eq!(tensor.relation_product(&id, &id).unwrap(), id);
        assert_eq!(tensor.closed_subset(&id).unwrap(), id);
        assert_eq!(
            tensor.relation_product(&set(&[t(5, 5)]), &id),
            Err(Error::UnknownType(t(5, 5)))
        );
    }

    #[test]
    fn pset_identity_is_source() {
        let (part, _) = triangle_tensor();
        for (x, y) in [(0, 1), (1, 0), (2, 2)] {
            let h = part.type_of(x, y);
            assert_eq!(
                pset(&part, TwoWayType::IDENTITY, h, x, y),
                VertexSet::singleton(x)
            );
        }
    }

    #[test]
    fn chorded_cycle_is_not_wdr() {
        let d = Digraph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)], true).unwrap();
        let part = RelationPartition::new(&d).unwrap();
        let w = IntersectionTensor::compute(&part).unwrap_err();
        assert_ne!(w.count1, w.count2);
        assert_eq!(part.type_of(w.pair1.0, w.pair1.1), w.h);
        assert_eq!(part.type_of(w.pair2.0, w.pair2.1), w.h);
    }

    #[test]
    fn gcd_bound_example() {
        assert_eq!(gcd(2, 3), 1);
        assert_eq!(gcd(4, 6), 2);
        assert_eq!(gcd(0, 5), 5);
    }

    #[test]
    fn detects_broken_identity() {
        let (_, tensor) = triangle_tensor();
        let mut raw = tensor.raw().to_vec();
        // corrupt p^{(2,1)}_{(1,2),(1,2)}
        let r = tensor.rank();
        raw[(2 * r + 1) * r + 1] = 2;
        let broken =
            IntersectionTensor::from_parts(tensor.types().to_vec(), vec![1, 1, 1], raw).unwrap();
        assert!(!broken.check_identities().holds());
    }
}
