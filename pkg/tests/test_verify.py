"""Self-check harness plumbing (small sample sizes to stay fast)."""

import json

import pytest

from cksim.verify import SUITES, TOLERANCES, run_suites, to_json


def test_suite_registry():
    assert set(SUITES) == {"brackets", "casimir", "split", "oracle", "geometry"}


def test_unknown_suite_name():
    with pytest.raises(ValueError):
        run_suites(names=("orbits",))


def test_named_subset_runs_only_that_suite():
    report = run_suites(names=("brackets",), samples=30, seed=5)
    assert list(report["suites"]) == ["brackets"]
    assert report["seed"] == 5
    assert report["pass"] is True


def test_all_alias():
    # "all" must behave exactly like the default
    a = run_suites(names=("all",), samples=20, seed=3)
    b = run_suites(samples=20, seed=3)
    assert to_json(a) == to_json(b)
    assert set(a["suites"]) == set(SUITES)


def test_report_serializes_deterministically():
    r1 = run_suites(names=("casimir",), samples=40, seed=9)
    r2 = run_suites(names=("casimir",), samples=40, seed=9)
    assert to_json(r1) == to_json(r2)
    doc = json.loads(to_json(r1))
    assert doc["suites"]["casimir"]["pass"] is True


def test_seed_changes_the_draw():
    r1 = run_suites(names=("brackets",), samples=40, seed=1)
    r2 = run_suites(names=("brackets",), samples=40, seed=2)
    assert to_json(r1) != to_json(r2)


def test_tolerances_are_pinned():
    assert TOLERANCES["bracket"] == 1e-9
    assert TOLERANCES["dual_path"] == 1e-10
    assert TOLERANCES["conservation"] == 1e-6
    assert TOLERANCES["split"] == 1e-12
    assert TOLERANCES["super_relation"] == 1e-13
    assert TOLERANCES["kappa_continuity"] == 1e-5


def test_per_signature_breakdown_present():
    report = run_suites(names=("brackets",), samples=25, seed=11)
    per_sig = report["suites"]["brackets"]["per_signature"]
    assert len(per_sig) == 9
    for stats in per_sig.values():
        assert stats["max"] < 1e-9
