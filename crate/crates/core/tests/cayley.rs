mod common;

use common::{circulant_word_lengths, INF};
use wdr_core::{
    are_isomorphic, canonical_certificate, catalog, cayley_cyclic, cayley_product,
    enumerate_circulants, CayleySpec, RelationPartition,
};

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn types_match_difference_reading() {
    for spec in enumerate_circulants(3, 12, false).unwrap() {
        let CayleySpec::Cyclic { n, connection } = &spec else {
            unreachable!()
        };
        let s: Vec<usize> = connection.iter().copied().collect();
        let d = spec.digraph();
        let len = circulant_word_lengths(*n, &s);
        let Ok(part) = RelationPartition::new(&d) else {
            assert!(len.contains(&INF), "{spec}");
            continue;
        };
        for x in 0..*n {
            for y in 0..*n {
                let g = (y + n - x) % n;
                let want = wdr_core::TwoWayType::new(len[g] as u32, len[(n - g) % n] as u32);
                assert_eq!(part.type_of(x, y), want, "{spec} ({x},{y})");
            }
        }
    }
}

#[test]
fn enumeration_counts() {
    // Z4: seven nonempty subsets of {1,2,3}; {2}, {1,3}, {1,2,3} are symmetric.
    assert_eq!(enumerate_circulants(4, 4, true).unwrap().count(), 4);
    assert_eq!(enumerate_circulants(4, 4, false).unwrap().count(), 7);
    // 2^(n-1) - 1 subsets minus 2^(symmetric orbits) - 1 symmetric ones.
    for n in 3..=12usize {
        let orbits = n / 2;
        let want = (1usize << (n - 1)) - (1usize << orbits);
        assert_eq!(
            enumerate_circulants(n, n, true).unwrap().count(),
            want,
            "n={n}"
        );
    }
}

#[test]
fn multiplier_isomorphism() {
    for (n, s) in [
        (8, vec![1, 2, 5, 6]),
        (12, vec![1, 3, 4, 7, 9, 10]),
        (7, vec![1, 2, 4]),
        (9, vec![1, 3, 7]),
    ] {
        let d = cayley_cyclic(n, s.iter().copied()).unwrap();
        let cert = canonical_certificate(&d).unwrap();
        for u in (1..n).filter(|&u| gcd(u, n) == 1) {
            let e = cayley_cyclic(n, s.iter().map(|&c| c * u % n)).unwrap();
            assert!(are_isomorphic(&d, &e).unwrap().is_some(), "n={n} u={u}");
            assert_eq!(canonical_certificate(&e).unwrap(), cert, "n={n} u={u}");
        }
    }
}

#[test]
fn catalog_entries_are_pairwise_non_isomorphic() {
    let certs: Vec<_> = catalog()
        .iter()
        .map(|e| canonical_certificate(&e.digraph()).unwrap())
        .collect();
    for i in 0..certs.len() {
        for j in 0..i {
            assert_ne!(certs[i], certs[j]);
        }
    }
    let labels: Vec<&str> = catalog().iter().map(|e| e.label).collect();
    assert_eq!(
        labels,
        ["i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix"]
    );
}

#[test]
fn product_group_examples() {
    // Z3 x Z2 with {(1,0),(1,1)} is the lexicographic product of a triangle with two points.
    let d = cayley_product(3, 2, [(1, 0), (1, 1)]).unwrap();
    assert_eq!(d.order(), 6);
    assert!((0..6).all(|v| d.out_degree(v) == 2 && d.in_degree(v) == 2));
    assert!(d.has_arc(0, 2) && d.has_arc(0, 3) && !d.has_arc(0, 1));
    // m = 1 degenerates to the cyclic group.
    assert_eq!(
        cayley_product(3, 1, [(1, 0)]).unwrap(),
        cayley_cyclic(3, [1]).unwrap()
    );
    // Z2 x Z2 is not cyclic.
    let klein = cayley_product(2, 2, [(1, 0), (0, 1)]).unwrap();
    let c4 = cayley_cyclic(4, [1, 3]).unwrap();
    assert!(are_isomorphic(&klein, &c4).unwrap().is_some());
    let spec: CayleySpec = "cay:prod:3x2:1.0,1.1".parse().unwrap();
    assert_eq!(spec.digraph(), d);
    assert_eq!(spec.to_string(), "cay:prod:3x2:1.0,1.1");
}

#[test]
fn cayley_string_errors() {
    for bad in [
        "cay:zn:6:0",
        "cay:zn:6:6",
        "cay:zn:1:1",
        "cay:zn:6:",
        "cay:prod:3x2:0.0",
        "cay:prod:3:1.0",
        "zn:6:1",
    ] {
        assert!(bad.parse::<CayleySpec>().is_err(), "{bad}");
    }
    assert!(cayley_cyclic(6, []).is_err());
}
