"""Smoke test for the eternal_domination extension module.

Build first, e.g. `maturin develop -m crates/py/Cargo.toml`, or
`cargo build --release -p eternal-py` and put target/release/libeternal_domination.so
on PYTHONPATH as eternal_domination.so.
"""

import eternal_domination as ed


def main():
    p3 = ed.Graph.path(3)
    assert (p3.n, p3.m) == (3, 2)
    assert ed.static_number(p3) == (1, [0, 1, 0])
    assert ed.eternal_number(p3) == 2
    assert ed.eternal_number(ed.Graph.complete(3), "roman") == 2
    assert ed.eternal_number(ed.Graph.cycle(4)) == 2

    house = ed.Graph.parse("p ed 5 6\ne 0 1\ne 0 3\ne 0 4\ne 1 2\ne 2 3\ne 3 4\n")
    assert ed.static_number(house)[0] == 2
    gadget = ed.build_reduction(house, "t1")
    assert gadget.n == 17
    assert ed.eternal_number(gadget) == 4

    fam = ed.safe_family(ed.Graph.path(2), 1)
    assert fam == [[1, 0], [0, 1]], fam

    rep = ed.verify_reduction(ed.Graph.path(2), "t2")
    assert rep["relation_holds"] is True, rep

    for grid in ("t4", "t8", "t3", "t6"):
        w = ed.grid_verify(grid, 12)
        assert w["ok"], (grid, w["index_histogram"])
        survived, _ = ed.grid_simulate(grid, rounds=200, seed=1)
        assert survived, grid

    try:
        ed.Graph(2, [(0, 0)])
    except ValueError as e:
        assert "self-loop" in str(e)
    else:
        raise AssertionError("self-loop accepted")

    print("eternal_domination smoke test: ok")


if __name__ == "__main__":
    main()
