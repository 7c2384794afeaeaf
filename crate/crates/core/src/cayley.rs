//! Cayley digraphs over `Z_n` and `Z_q × Z_m`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::digraph::{Digraph, VertexSet, MAX_ORDER};
use crate::error::{Error, Result};

/// `Cay(G, S)` for an abelian group `G` given by its cyclic factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CayleySpec {
    Cyclic {
        n: usize,
        connection: BTreeSet<usize>,
    },
    Product {
        q: usize,
        m: usize,
        connection: BTreeSet<(usize, usize)>,
    },
}

impl CayleySpec {
    pub fn cyclic(n: usize, connection: impl IntoIterator<Item = usize>) -> Result<Self> {
        let connection: BTreeSet<usize> = connection.into_iter().collect();
        if !(2..=MAX_ORDER).contains(&n) {
            return Err(Error::InvalidCayley(format!(
                "group order {n} outside 2..={MAX_ORDER}"
            )));
        }
        if connection.is_empty() {
            return Err(Error::InvalidCayley("empty connection set".into()));
        }
        if connection.contains(&0) {
            return Err(Error::InvalidCayley("identity in connection set".into()));
        }
        if let Some(&s) = connection.iter().find(|&&s| s >= n) {
            return Err(Error::InvalidCayley(format!(
                "{s} is not a residue mod {n}"
            )));
        }
        Ok(CayleySpec::Cyclic { n, connection })
    }

    /// `Z_q × Z_m`; `m = 1` normalizes to `Z_q`.
    pub fn product(
        q: usize,
        m: usize,
        connection: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let connection: BTreeSet<(usize, usize)> = connection.into_iter().collect();
        if q < 2 || m < 1 || q * m > MAX_ORDER {
            return Err(Error::InvalidCayley(format!(
                "group Z_{q} x Z_{m} not supported"
            )));
        }
        if connection.is_empty() {
            return Err(Error::InvalidCayley("empty connection set".into()));
        }
        if connection.contains(&(0, 0)) {
            return Err(Error::InvalidCayley("identity in connection set".into()));
        }
        if let Some(&(a, b)) = connection.iter().find(|&&(a, b)| a >= q || b >= m) {
            return Err(Error::InvalidCayley(format!(
                "({a},{b}) is not in Z_{q} x Z_{m}"
            )));
        }
        if m == 1 {
            return Self::cyclic(q, connection.into_iter().map(|(a, _)| a));
        }
        Ok(CayleySpec::Product { q, m, connection })
    }

    pub fn order(&self) -> usize {
        match self {
            CayleySpec::Cyclic { n, .. } => *n,
            CayleySpec::Product { q, m, .. } => q * m,
        }
    }

    /// Whether `S = -S`, i.e. the digraph is undirected.
    pub fn is_symmetric(&self) -> bool {
        match self {
            CayleySpec::Cyclic { n, connection } => connection
                .iter()
                .all(|&s| connection.contains(&((n - s) % n))),
            CayleySpec::Product { q, m, connection } => connection
                .iter()
                .all(|&(a, b)| connection.contains(&((q - a) % q, (m - b) % m))),
        }
    }

    pub fn out_degree(&self) -> usize {
        match self {
            CayleySpec::Cyclic { connection, .. } => connection.len(),
            CayleySpec::Product { connection, .. } => connection.len(),
        }
    }

    /// Arcs `x → x + s`. Vertex `(a, b)` of a product group is `a * m + b`.
    pub fn digraph(&self) -> Digraph {
        match self {
            CayleySpec::Cyclic { n, connection } => {
                let rows = (0..*n)
                    .map(|x| {
                        connection
                            .iter()
                            .map(|s| (x + s) % n)
                            .collect::<VertexSet>()
                    })
                    .collect();
                Digraph::from_out_rows(*n, rows)
            }
            CayleySpec::Product { q, m, connection } => {
                let rows = (0..q * m)
                    .map(|v| {
                        let (a, b) = (v / m, v % m);
                        connection
                            .iter()
                            .map(|&(s, t)| ((a + s) % q) * m + (b + t) % m)
                            .collect::<VertexSet>()
                    })
                    .collect();
                Digraph::from_out_rows(q * m, rows)
            }
        }
    }
}

pub fn cayley_cyclic(n: usize, s: impl IntoIterator<Item = usize>) -> Result<Digraph> {
    Ok(CayleySpec::cyclic(n, s)?.digraph())
}

pub fn cayley_product(
    q: usize,
    m: usize,
    s: impl IntoIterator<Item = (usize, usize)>,
) -> Result<Digraph> {
    Ok(CayleySpec::product(q, m, s)?.digraph())
}

impl fmt::Display for CayleySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CayleySpec::Cyclic { n, connection } => {
                let s: Vec<String> = connection.iter().map(|s| s.to_string()).collect();
                write!(f, "cay:zn:{n}:{}", s.join(","))
            }
            CayleySpec::Product { q, m, connection } => {
                let s: Vec<String> = connection.iter().map(|(a, b)| format!("{a}.{b}")).collect();
                write!(f, "cay:prod:{q}x{m}:{}", s.join(","))
            }
        }
    }
}

impl FromStr for CayleySpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidCayley(format!("{msg} in {text:?}"));
        let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad("bad integer"));
        let mut parts = text.trim().splitn(4, ':');
        if parts.next() != Some("cay") {
            return Err(bad("missing cay: prefix"));
        }
        let kind = parts.next().ok_or_else(|| bad("missing group kind"))?;
        let group = parts.next().ok_or_else(|| bad("missing group"))?;
        let elements = parts.next().ok_or_else(|| bad("missing connection set"))?;
        let items = elements.split(',').filter(|s| !s.trim().is_empty());
        match kind {
            "zn" => {
                let n = num(group)?;
                let s = items.map(num).collect::<Result<Vec<_>>>()?;
                CayleySpec::cyclic(n, s)
            }
            "prod" => {
                let (q, m) = group
                    .split_once('x')
                    .ok_or_else(|| bad("expected <q>x<m>"))?;
                let s = items
                    .map(|it| {
                        let (a, b) = it.split_once('.').ok_or_else(|| bad("expected <a>.<b>"))?;
                        Ok((num(a)?, num(b)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                CayleySpec::product(num(q)?, num(m)?, s)
            }
            _ => Err(bad("unknown group kind")),
        }
    }
}

impl Serialize for CayleySpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CayleySpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub label: &'static str,
    pub spec: CayleySpec,
}

impl CatalogEntry {
    pub fn digraph(&self) -> Digraph {
        self.spec.digraph()
    }
}

const CATALOG: [(&str, usize, &[usize]); 9] = [
    ("i", 3, &[1]),
    ("ii", 4, &[1, 2]),
    ("iii", 6, &[1, 3, 4]),
    ("iv", 6, &[1, 2, 3, 5]),
    ("v", 8, &[1, 2, 5, 6]),
    ("vi", 8, &[1, 2, 3, 5, 7]),
    ("vii", 12, &[1, 3, 4, 7, 9, 10]),
    ("viii", 12, &[1, 3, 4, 5, 7, 9, 11]),
    ("ix", 12, &[1, 2, 3, 5, 7, 8, 9, 11]),
];

/// The nine circulants of the diameter-2 classification, in order (i)–(ix).
pub fn catalog() -> Vec<CatalogEntry> {
    CATALOG
        .iter()
        .map(|&(label, n, s)| CatalogEntry {
            label,
            spec: CayleySpec::cyclic(n, s.iter().copied()).expect("catalog entries are valid"),
        })
        .collect()
}

pub const MAX_CIRCULANT_ORDER: usize = 16;

/// Every nonempty `S ⊆ {1..n-1}` for `n` in `n_min..=n_max`, `n` ascending and
/// `S` by bitmask ascending (bit `k` stands for residue `k + 1`).
pub fn enumerate_circulants(
    n_min: usize,
    n_max: usize,
    exclude_undirected: bool,
) -> Result<impl Iterator<Item = CayleySpec>> {
    if !(2 <= n_min && n_min <= n_max && n_max <= MAX_CIRCULANT_ORDER) {
        return Err(Error::InvalidRange(format!(
            "need 2 <= min <= max <= {MAX_CIRCULANT_ORDER}, got [{n_min}, {n_max}]"
        )));
    }
    Ok((n_min..=n_max).flat_map(move |n| {
        (1u32..1 << (n - 1)).filter_map(move |mask| {
            let s = (0..n - 1).filter(|k| mask >> k & 1 == 1).map(|k| k + 1);
            let spec = CayleySpec::cyclic(n, s).expect("nonempty subset of units");
            (!exclude_undirected || !spec.is_symmetric()).then_some(spec)
        })
    }))
}
