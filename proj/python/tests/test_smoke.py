import json
from fractions import Fraction

import pytest

import distgraph as dg


def test_sphere():
    assert dg.sphere_cardinality(5, 2) == 40
    pts = dg.sphere(2, 5)
    assert len(pts) == 8
    assert all(x * x + y * y == 5 for x, y in pts)


def test_big_counts_are_python_ints():
    n = dg.count("P7", 8, 10)
    assert isinstance(n, int)
    assert n == dg.sphere_cardinality(8, 10) ** 7


def test_count_and_admissible():
    assert dg.count("K3", 5, 1) == 0
    assert dg.count("K3", 5, 2) == dg.count("K3", 5, 2, use_symmetry=False)
    assert dg.admissible("K3", 5, 1, 8) == [2, 4, 6, 8]


def test_evaluate():
    v = dg.evaluate("P1", 5, 2, ["delta", "ones:3"])
    assert v["value"] == pytest.approx(1.0, rel=1e-12)
    assert v["n_config"] == 40
    with pytest.raises(dg.AdmissibilityError):
        dg.evaluate("K3", 5, 3, ["ball"])
    with pytest.raises(dg.ValidationError):
        dg.evaluate("K3", 5, 2, ["ball"], strategy="tree")


def test_sweep_and_fit():
    rows, csv = dg.sweep("P1", 5, [16, 24, 32, 40, 48, 56, 64], ["ball"], ["3/2"])
    assert csv.startswith("lambda,n_config,form_value,norm_product,ratio,log_lambda,log_ratio\n")
    f = dg.fit([r["lambda"] for r in rows], [r["ratio"] for r in rows])
    assert abs(f["slope"] + 5 / 6) < 0.25
    assert dg.fit_csv(csv) == f
    assert dg.fit([1, 2, 4, 8], [3 * x**-0.5 for x in [1, 2, 4, 8]])["slope"] == pytest.approx(-0.5, abs=1e-9)


def test_regions():
    assert dg.hull_membership("P1", 5, [Fraction(1, 2), Fraction(1, 2)]) == "boundary"
    assert dg.classify("K3", 7, ["1/2", "1/2", "1/2"]) == "boundary"
    assert dg.conjectured_exponent(5, ["2/3", "2/3"]) == Fraction(-5, 6)
    assert dg.interpolated_exponent(5, "1/2", "2/3", "1/3") == Fraction(-7, 6)
    assert (Fraction(2, 3), Fraction(2, 3)) in dg.region_vertices("P1", 5)
    rep = json.loads(dg.cross_validate("P2", 7, 100, 1))
    assert rep["disagreements"] == []
    with pytest.raises(ValueError):
        dg.hull_membership("P1", 4, ["1/2", "1/2"])


def test_probe():
    r = dg.probe("P2", 5, ["S", "delta", "S"], [4, 8, 12, 16])
    assert abs(r["fit"]["slope"]) < 1e-9


def test_cli_passthrough():
    code, out, err = dg.run_cli(["sphere", "--d", "5", "--lambda", "2", "--count-only"])
    assert (code, out) == (0, "40\n")
    assert err.startswith("# ")
    assert dg.run_cli(["count", "--graph", "P1", "--d", "9", "--lambda", "30", "--max-points", "5"])[0] == 4
