#!/usr/bin/env python3
"""Smoke test for the exchg_py extension module.

Builds nothing itself: run `cargo build -p exchg-py` (or `--release`)
first, then `python3 python/smoke_test.py`.  The script locates the
compiled cdylib under target/, loads it, and exercises the main entry
points end to end with exact rational arithmetic.
"""

import importlib.util
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load_module():
    names = ["libexchg_py.so", "exchg_py.so", "libexchg_py.dylib", "exchg_py.pyd"]
    for profile in ("debug", "release"):
        for name in names:
            candidate = ROOT / "target" / profile / name
            if candidate.exists():
                spec = importlib.util.spec_from_file_location("exchg_py", candidate)
                module = importlib.util.module_from_spec(spec)
                spec.loader.exec_module(module)
                return module
    sys.exit("exchg_py cdylib not found; run `cargo build -p exchg-py` first")


def main():
    ex = load_module()

    space = ex.Space(["a", "b"], 2)
    assert space.size == 4
    assert space.keys() == ["aa", "ab", "ba", "bb"]

    f = ex.Gamble(space, {"aa": "1", "ab": "1/2", "ba": "-1/2", "bb": "0"})
    proj = f.project()
    assert proj.is_invariant()
    assert proj.values() == {"aa": "1", "ab": "0", "ba": "0", "bb": "0"}
    assert proj.project() == proj, "projection must be idempotent"

    counts = f.to_counts()
    assert counts.values() == [("2,0", "1"), ("1,1", "0"), ("0,2", "0")]
    assert counts.lift() == proj, "lift inverts the count map on the image"

    poly = f.to_poly()
    assert poly.degree == 2
    assert poly.eval(["1/2", "1/2"]) == "1/4"
    lifted = poly.elevate(4)
    assert lifted.eval(["1/3", "2/3"]) == poly.eval(["1/3", "2/3"])

    good = [{"aa": "1", "ab": "0", "ba": "0", "bb": "-1/2"}]
    verdict = ex.desirability_check(space, good)
    assert verdict["coherent"] and verdict["exchangeable"]

    kernel = [{"aa": "0", "ab": "1", "ba": "-1", "bb": "0"}]
    verdict = ex.desirability_check(space, kernel)
    assert verdict["coherent"] and not verdict["exchangeable"]
    assert verdict["certificate"], "failure must carry a certificate"

    rep = ex.desirability_represent(space, good)
    assert len(rep) == 1
    assert rep[0].values() == [("2,0", "1"), ("1,1", "0"), ("0,2", "-1/2")]
    polys = ex.desirability_represent_poly(space, good)
    assert polys[0].degree == 2

    target = ex.Gamble(space, {"aa": "2", "ab": "0", "ba": "0", "bb": "-1"})
    assert ex.cone_member(space, good, target)
    outside = ex.Gamble(space, {"aa": "-1", "ab": "0", "ba": "0", "bb": "0"})
    assert not ex.cone_member(space, good, outside)

    zero = {"aa": "0", "ab": "0", "ba": "0", "bb": "0"}
    swap = {"aa": "0", "ab": "1", "ba": "-1", "bb": "0"}
    pool = [zero, swap]
    entries = [([0, 1], [0, 1]), ([0], [0]), ([1], [1])]
    report = ex.choice_check(space, pool, entries)
    assert report["axioms_pass"] and report["compatible"]

    bad_entries = [([0, 1], [1]), ([0], [0]), ([1], [1])]
    report = ex.choice_check(space, pool, bad_entries)
    assert not report["compatible"]

    table = ex.choice_represent(space, pool, entries)
    assert len(table) >= 1

    gens = [(1, {"a": "1", "b": "-1/2"})]
    report = ex.countable_check(["a", "b"], gens, horizon=3)
    assert report["passed"] and len(report["degrees"]) == 3

    polys = ex.countable_represent(["a", "b"], gens, horizon=3)
    assert polys and polys[0].degree == 1

    print("smoke test passed")


if __name__ == "__main__":
    main()
