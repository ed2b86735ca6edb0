"""Smoke tests for the Python package."""

from fractions import Fraction

import pytest

import pandora


def test_example1():
    e = pandora.Instance.canonical("example1")
    assert e.size == 3
    assert e.cost([1, 2]) == 20
    a = pandora.solve(e)
    assert a.utility == Fraction(21, 2)
    assert a.unique is True
    assert pandora.evaluate(e, a.witness) == Fraction(21, 2)
    f = pandora.solve(e, "fixed")
    assert f.utility == 10
    assert pandora.evaluate(e, f.witness) == 10


def test_unit_demand_pair():
    u = pandora.Instance.canonical("unit_demand_pair")
    s = pandora.solve(u, "impulsive")
    assert s.utility == Fraction(1, 9)
    assert pandora.evaluate(u, {"order": [0, 1]}) == Fraction(1, 9)
    z, never = pandora.reservation_value([(0, Fraction(2, 3)), (2, Fraction(1, 3))], 1)
    assert z == Fraction(-1, 3) and never


def test_instance_from_dict_round_trip():
    data = {
        "boxes": [{"atoms": [["0", "1/2"], ["10", "1/2"]]}, {"atoms": [["4", "1"]]}],
        "cost": {"kind": "additive", "per_box": ["1", "3"]},
    }
    inst = pandora.Instance(data)
    assert pandora.Instance(inst.data) == inst
    assert pandora.solve(inst, "weitzman").utility == pandora.solve(inst).utility


def test_errors_map_to_python_exceptions():
    with pytest.raises(pandora.ParseError):
        pandora.Instance("{ not json")
    with pytest.raises(pandora.DomainError):
        pandora.Instance.canonical("nope")
    big = pandora.Instance.canonical("hardness_baseline_100000")
    with pytest.raises(pandora.CapabilityError):
        pandora.solve(big)
    assert issubclass(pandora.ParseError, pandora.DomainError)
    assert issubclass(pandora.DomainError, ValueError)


def test_gap_and_validation():
    g = pandora.gap(pandora.Instance.canonical("xos_lift_example1"))
    assert g["opt_adaptive"] == Fraction(69, 4)
    assert g["opt_fixed_order"] == 17
    v = pandora.validate(pandora.Instance.canonical("example1"), "subadditive")
    assert v["pass"] is False


def test_transforms():
    e = pandora.Instance.canonical("subadditive4")
    d = pandora.discretize(e, Fraction(1, 2))
    assert d.size == 4
    assert pandora.kappa(e, Fraction(1, 2)) > 0
    lifted, m = pandora.bernoullify(pandora.Instance.canonical("example1"))
    assert m["original_size"] == 3
    assert pandora.solve(lifted).utility == Fraction(21, 2)


def test_hardness():
    p = pandora.hardness_params(100000)
    assert (p["alpha"], p["beta"], p["M"]) == (729, 27, 135)
    assert pandora.verify_family(100000)["pass"] is True
    r = pandora.distinguish(4096, beta=4, trials=2000, seed=1)
    assert r["counts_exact"] is True


def test_suites_and_corpus():
    assert pandora.run_suite("T44", 10)["pass"] is True
    assert pandora.run_corpus()["pass"] is True
    assert "additive" in pandora.random_families()
