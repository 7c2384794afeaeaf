"""Smoke test for the wdr extension module.

Build and install first:
    pip install maturin
    maturin build --release -m crates/python/Cargo.toml -o dist
    pip install dist/wdr-*.whl
"""

import sys

import wdr


def main():
    tri = wdr.Digraph.parse("n 3\n0 1\n1 2\n2 0\n")
    assert tri.order == 3 and tri.arc_count == 3
    assert tri == wdr.Digraph.from_spec("cay:zn:3:1")
    assert tri.distance_matrix() == [[0, 1, 2], [2, 0, 1], [1, 2, 0]]

    report = wdr.analyze(tri)
    scheme = report["scheme"]
    assert scheme["is_wdr"] and scheme["regular"] and scheme["commutative"]
    assert report["diameter"] == 2

    types = wdr.two_way_types(wdr.Digraph.from_spec("cay:zn:6:1,2,3,5"))
    assert types == [((0, 0), 1), ((1, 1), 3), ((1, 2), 1), ((2, 1), 1)], types

    p = wdr.intersection_numbers(tri)
    assert ((1, 2), (2, 1), (2, 1), 1) in p

    moved = tri.relabel([2, 0, 1])
    assert wdr.certificate(moved) == wdr.certificate(tri)
    assert wdr.are_isomorphic(tri, moved) is not None

    try:
        wdr.Digraph.parse("n 2\n0 1\n1 0\n")
    except ValueError:
        pass
    else:
        raise AssertionError("undirected input accepted")

    labels = [label for label, _ in wdr.catalog()]
    assert labels == ["i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix"]

    result = wdr.search_circulants(3, 12, 2)
    matched = sorted(s["catalog_index"] for s in result["survivors"])
    assert matched == list(range(9)) and result["unmatched"] == []

    print("smoke test passed: %d survivors" % len(result["survivors"]))
    return 0


if __name__ == "__main__":
    sys.exit(main())
