#!/usr/bin/env python3
"""Build the extension module, import it, and cross-check a few solves."""

import json
import pathlib
import shutil
import subprocess
import sys
import tempfile
from fractions import Fraction

ROOT = pathlib.Path(__file__).resolve().parents[1]

EDGE_CUT = json.dumps(
    {
        "ground_set": 2,
        "functions": [{"type": "directed_edge", "support": [1, 2], "capacity": 1}],
        "penalty": {"type": "quadratic", "a": ["2", "0"], "c": ["1", "1"]},
    }
)

SINGLE_VERTEX_NET = json.dumps(
    {
        "vertices": [1],
        "arcs": [
            {"from": "s", "to": "1", "cap": {"slope": "1", "base": "0", "side": "source"}},
            {"from": "1", "to": "t", "cap": {"const": 1}},
        ],
    }
)


def frac(text):
    return Fraction(text)


def build_and_import():
    subprocess.run(
        ["cargo", "build", "--release", "-p", "dsfm-py"], cwd=ROOT, check=True
    )
    built = ROOT / "target" / "release" / "libdsfm.so"
    if not built.exists():  # e.g. macOS
        built = ROOT / "target" / "release" / "libdsfm.dylib"
    stage = pathlib.Path(tempfile.mkdtemp(prefix="dsfm-py-"))
    shutil.copy(built, stage / "dsfm.so")
    sys.path.insert(0, str(stage))
    import dsfm

    return dsfm


def check_edge_cut(dsfm):
    instance = dsfm.Instance.from_json(EDGE_CUT)
    assert instance.n == 2 and instance.function_count == 1
    result = instance.solve("1/1000")
    assert [frac(v) for v in result.x] == [1, 1], result.x
    assert result.y == [1, -1], result.y
    assert result.threshold("1/2") == [1, 2]
    assert result.threshold("1") == [1, 2]
    assert result.threshold("3/2") == []
    doc = json.loads(result.to_json())
    assert doc["y"] == [1, -1]
    print("edge cut: x = (1, 1), thresholds flip at 1")


def cross_check(dsfm, instance, result, alphas):
    delta = Fraction(result.delta).limit_denominator(10**12) + Fraction(1, 10**9)
    for alpha in alphas:
        chosen = result.threshold(alpha)
        achieved = frac(instance.value_at(alpha, chosen))
        _, best = instance.brute_force_min(alpha)
        excess = achieved - frac(best)
        assert 0 <= excess <= delta, (alpha, chosen, str(excess), result.delta)


def check_generated(dsfm):
    alphas = [f"{k}/2" for k in range(-8, 9)]
    for seed in range(5):
        instance = dsfm.Instance.generate(seed, n=5, functions=2)
        result = instance.solve("1/100")
        cross_check(dsfm, instance, result, alphas)
        round_trip = dsfm.Instance.from_json(instance.to_json())
        assert round_trip.to_json() == instance.to_json()
    print("5 generated instances within certificate of brute force")


def check_parametric(dsfm):
    lambdas, tau = dsfm.parametric_breakpoints(SINGLE_VERTEX_NET, "1/4", "0", "2")
    assert lambdas == ["5/4"], lambdas
    assert tau == [(1, "5/4")], tau
    print("single-vertex network flips at 5/4")


def main():
    dsfm = build_and_import()
    check_edge_cut(dsfm)
    check_generated(dsfm)
    check_parametric(dsfm)
    print("smoke test passed")


if __name__ == "__main__":
    main()
