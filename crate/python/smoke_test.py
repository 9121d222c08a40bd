#!/usr/bin/env python3
"""Smoke test for the pentagonal_py extension module.

Locates the cdylib built by `cargo build -p pentagonal-py --release` (or the
debug build), exposes it on the import path as `pentagonal_py`, and exercises
the main types and operations end to end.

Run from the repository root:

    cargo build -p pentagonal-py --release
    python3 python/smoke_test.py
"""

import pathlib
import shutil
import sys
import tempfile


def load_module():
    root = pathlib.Path(__file__).resolve().parent.parent
    candidates = [
        root / "target" / "release" / "libpentagonal_py.so",
        root / "target" / "debug" / "libpentagonal_py.so",
        root / "target" / "release" / "libpentagonal_py.dylib",
        root / "target" / "debug" / "libpentagonal_py.dylib",
    ]
    lib = next((c for c in candidates if c.exists()), None)
    if lib is None:
        sys.exit("build the extension first: cargo build -p pentagonal-py --release")
    tmp = tempfile.mkdtemp(prefix="pentagonal_py_")
    shutil.copy(lib, pathlib.Path(tmp) / "pentagonal_py.so")
    sys.path.insert(0, tmp)
    import pentagonal_py

    return pentagonal_py


def main():
    pg = load_module()

    # Graph construction and serialization.
    c5 = pg.cycle(5)
    assert c5.n == 5 and c5.edge_count() == 5
    assert c5.to_graph6() == "Dhc"
    assert pg.Graph.from_graph6("Dhc").edges() == c5.edges()
    assert c5.neighbors(0) == [1, 4]
    assert c5.nth_neighborhood(0, 2) == [2, 3]

    # The Grötzsch facts.
    g = pg.grotzsch()
    assert g.n == 11 and g.edge_count() == 20
    assert pg.is_pentagonal(g)
    chi, assignment = pg.chromatic_number(g)
    assert chi == 4
    assert all(assignment[u] != assignment[v] for u, v in g.edges())
    assert pg.odd_hole_number(g) == 5
    assert pg.clique_number(g) == 2
    assert pg.are_isomorphic(pg.mycielskian(pg.cycle(5)), g)
    assert pg.kappa_profile(g) == (3, 0)
    assert pg.bfs_levelling(g, 10) == [[10], [5, 6, 7, 8, 9], [0, 1, 2, 3, 4]]

    prof = pg.profile(g)
    assert prof["chi"] == 4 and prof["pentagonal"] and prof["kappa2"] == 3

    # Petersen: twelve induced pentagons, nothing longer among odd cycles.
    p = pg.petersen()
    odd = pg.induced_cycles(p, 3, 10, "odd")
    assert len(odd) == 12 and all(len(c) == 5 for c in odd)
    assert pg.max_hole_length(p) == 6

    # Bound formulas and the per-graph report.
    assert pg.bound_2rad(2, 5) == 580
    assert pg.bound_pentagonal_main() == 58000
    assert pg.bound_longoddhole(2) == 12
    report = pg.check_bounds(g)
    assert report["violations"] == 0
    assert any(e["id"] == "pentagonal-main" and e["applicable"] for e in report["entries"])

    # Oracle agreement on a small graph.
    assert pg.brute_force_chromatic(pg.cycle(7)) == 3
    assert pg.chromatic_number(pg.cycle(7))[0] == 3

    # Certifying extraction: C6 from a root falls back to a stable prefix.
    out = pg.extract_stable_levelling(pg.cycle(6), 0, 1, 1)
    assert out["outcome"] == "stable"

    # Covering search: found for C5, absent for the Grötzsch graph.
    found = pg.search_one_covering(pg.cycle(5), 3)
    assert found["verdict"] == "found"
    absent = pg.search_one_covering(pg.grotzsch(), 4)
    assert absent["verdict"] == "absent"

    # Error mapping.
    try:
        pg.cycle(2)
    except ValueError:
        pass
    else:
        raise AssertionError("cycle(2) should raise ValueError")

    print("smoke test: all checks passed")


if __name__ == "__main__":
    main()
