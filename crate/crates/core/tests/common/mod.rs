//! Independent reference computations shared by the integration tests. None of
//! these call into the library beyond building digraphs and reading arcs.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use wdr_core::{Digraph, TwoWayType};

pub const INF: usize = usize::MAX;

pub fn floyd_warshall(d: &Digraph) -> Vec<Vec<usize>> {
    let n = d.order();
    let mut dist = vec![vec![INF; n]; n];
    for (x, row) in dist.iter_mut().enumerate() {
        row[x] = 0;
    }
    for (u, v) in d.arcs() {
        dist[u][v] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if dist[i][k] != INF && dist[k][j] != INF && dist[i][k] + dist[k][j] < dist[i][j] {
                    dist[i][j] = dist[i][k] + dist[k][j];
                }
            }
        }
    }
    dist
}

pub fn two_way(dist: &[Vec<usize>], x: usize, y: usize) -> TwoWayType {
    TwoWayType::new(dist[x][y] as u32, dist[y][x] as u32)
}

/// Intersection numbers keyed by `(h, i, j)`, nonzero entries only, with valencies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleTensor {
    pub types: Vec<TwoWayType>,
    pub valencies: BTreeMap<TwoWayType, usize>,
    pub entries: BTreeMap<(TwoWayType, TwoWayType, TwoWayType), u32>,
}

/// Triple loop over `(x, y, z)`. `None` when some count depends on the pair.
pub fn brute_force_tensor(d: &Digraph) -> Option<OracleTensor> {
    let n = d.order();
    let dist = floyd_warshall(d);
    let ty = |x: usize, y: usize| two_way(&dist, x, y);
    let types: BTreeSet<TwoWayType> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .map(|(x, y)| ty(x, y))
        .collect();
    let mut valencies = BTreeMap::new();
    for &t in &types {
        let counts: BTreeSet<usize> = (0..n)
            .map(|x| (0..n).filter(|&y| ty(x, y) == t).count())
            .collect();
        if counts.len() != 1 {
            return None;
        }
        valencies.insert(t, *counts.iter().next().unwrap());
    }
    let mut entries = BTreeMap::new();
    let mut seen: BTreeMap<(TwoWayType, TwoWayType, TwoWayType), u32> = BTreeMap::new();
    let mut first_pair: BTreeMap<TwoWayType, (usize, usize)> = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            let h = ty(x, y);
            let is_first = *first_pair.entry(h).or_insert((x, y)) == (x, y);
            let mut local: BTreeMap<(TwoWayType, TwoWayType), u32> = BTreeMap::new();
            for z in 0..n {
                *local.entry((ty(x, z), ty(z, y))).or_default() += 1;
            }
            for &i in &types {
                for &j in &types {
                    let c = local.get(&(i, j)).copied().unwrap_or(0);
                    if is_first {
                        seen.insert((h, i, j), c);
                    } else if seen[&(h, i, j)] != c {
                        return None;
                    }
                }
            }
        }
    }
    for (k, v) in seen {
        if v != 0 {
            entries.insert(k, v);
        }
    }
    Some(OracleTensor {
        types: types.into_iter().collect(),
        valencies,
        entries,
    })
}

type Matrix = Vec<Vec<u32>>;

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut c = vec![vec![0; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                c[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    c
}

/// Reads `p^h_{i,j}` off `A_i A_j = Σ_h p^h_{i,j} A_h` with 0/1 relation matrices.
/// `None` when a product is not constant on some relation.
pub fn matrix_tensor(d: &Digraph) -> Option<OracleTensor> {
    let n = d.order();
    let dist = floyd_warshall(d);
    let mut mats: BTreeMap<TwoWayType, Matrix> = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            mats.entry(two_way(&dist, x, y))
                .or_insert_with(|| vec![vec![0; n]; n])[x][y] = 1;
        }
    }
    let types: Vec<TwoWayType> = mats.keys().copied().collect();
    let mut valencies = BTreeMap::new();
    for (&t, m) in &mats {
        let sums: BTreeSet<u32> = m.iter().map(|row| row.iter().sum()).collect();
        if sums.len() != 1 {
            return None;
        }
        valencies.insert(t, *sums.iter().next().unwrap() as usize);
    }
    let mut entries = BTreeMap::new();
    for &i in &types {
        for &j in &types {
            let prod = mat_mul(&mats[&i], &mats[&j]);
            for &h in &types {
                let values: BTreeSet<u32> = (0..n)
                    .flat_map(|x| (0..n).map(move |y| (x, y)))
                    .filter(|&(x, y)| mats[&h][x][y] == 1)
                    .map(|(x, y)| prod[x][y])
                    .collect();
                if values.len() != 1 {
                    return None;
                }
                let v = *values.iter().next().unwrap();
                if v != 0 {
                    entries.insert((h, i, j), v);
                }
            }
        }
    }
    Some(OracleTensor {
        types,
        valencies,
        entries,
    })
}

/// Word lengths over `s` in `Z_n`, by iterated sumsets: `len[g]` is the least
/// `k` with `g ∈ k·s`, `len[0] = 0`, `INF` if unreachable.
pub fn circulant_word_lengths(n: usize, s: &[usize]) -> Vec<usize> {
    let mut len = vec![INF; n];
    len[0] = 0;
    let mut frontier: BTreeSet<usize> = BTreeSet::from([0]);
    let mut k = 0;
    while !frontier.is_empty() {
        k += 1;
        let next: BTreeSet<usize> = frontier
            .iter()
            .flat_map(|&g| s.iter().map(move |&c| (g + c) % n))
            .filter(|&g| len[g] == INF)
            .collect();
        for &g in &next {
            len[g] = k;
        }
        frontier = next;
    }
    len
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let n = used.len();
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Tries every bijection. Only for tiny orders.
pub fn brute_force_isomorphic(a: &Digraph, b: &Digraph) -> bool {
    if a.order() != b.order() || a.arc_count() != b.arc_count() {
        return false;
    }
    assert!(a.order() <= 7, "brute-force isomorphism is factorial");
    let arcs: Vec<(usize, usize)> = a.arcs().collect();
    permutations(a.order())
        .into_iter()
        .any(|p| arcs.iter().all(|&(u, v)| b.has_arc(p[u], p[v])))
}

/// Every closed walk `w_0 .. w_{q-1}` with `(w_0, w_1) = arc`, grouped into
/// cyclic classes. Each class is represented by its smallest rotation that
/// puts the arc first.
pub fn brute_force_circuits(d: &Digraph, arc: (usize, usize), q: usize) -> BTreeSet<Vec<usize>> {
    let n = d.order();
    let mut out = BTreeSet::new();
    let free = q - 2;
    let total = n.pow(free as u32);
    for code in 0..total {
        let mut w = vec![arc.0, arc.1];
        let mut c = code;
        for _ in 0..free {
            w.push(c % n);
            c /= n;
        }
        if !(0..q).all(|k| d.has_arc(w[k], w[(k + 1) % q])) {
            continue;
        }
        let rep = (0..q)
            .filter(|&r| w[r] == arc.0 && w[(r + 1) % q] == arc.1)
            .map(|r| (0..q).map(|k| w[(r + k) % q]).collect::<Vec<_>>())
            .min()
            .unwrap();
        out.insert(rep);
    }
    out
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Random simple digraph: each ordered pair is an arc with probability `p`.
pub fn random_digraph(rng: &mut StdRng, n: usize, p: f64) -> Digraph {
    let arcs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|&(u, v)| u != v)
        .filter(|_| rng.gen_bool(p))
        .collect();
    Digraph::new(n, &arcs, false).unwrap()
}

pub fn random_permutation(rng: &mut StdRng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        p.swap(i, j);
    }
    p
}

/// Library tensor, flattened to the oracle's shape.
pub fn library_tensor(t: &wdr_core::IntersectionTensor) -> OracleTensor {
    let types = t.types().to_vec();
    let valencies = types
        .iter()
        .map(|&ty| (ty, t.valency(ty).unwrap()))
        .collect();
    let entries = t
        .nonzero_entries()
        .map(|(h, i, j, v)| ((h, i, j), v))
        .collect();
    OracleTensor {
        types,
        valencies,
        entries,
    }
}

/// Digraphs on `2..=max_n` vertices with arbitrary arc sets.
pub fn arb_digraph(max_n: usize) -> impl Strategy<Value = Digraph> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1)).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)));
            let arcs: Vec<_> = pairs
                .zip(bits)
                .filter(|(_, b)| *b)
                .map(|(p, _)| p)
                .collect();
            Digraph::new(n, &arcs, false).unwrap()
        })
    })
}
