import pathlib

import pytest

import statgeo

SCENARIOS = pathlib.Path(__file__).resolve().parents[2] / "scenarios"


def test_registries():
    ids = [c["id"] for c in statgeo.list_checks()]
    assert ids == sorted(ids)
    assert "thm_3_13_ricci_symmetry" in ids
    names = {b["name"] for b in statgeo.list_builtins()}
    assert {"normal_family", "upper_half_space", "light_cone"} <= names


def test_hessian_scenario():
    report = statgeo.run(SCENARIOS / "upper_half_space_hessian.json")
    assert report["schema_version"] == "1"
    fit = next(c for c in report["checks"] if c["check_id"] == "hessian_constant_fit")
    assert fit["outcome"] == "PASS"
    assert fit["extras"]["c"] == pytest.approx(4.0, abs=1e-6)
    assert report["summary"]["failed"] == 0


def test_dict_scenario_and_overrides():
    scenario = {
        "name": "plane",
        "ambient": {"name": "flat", "dim": 4, "index": 1, "connection": {"kind": "from_K"}},
        "submanifold": {"name": "minkowski_lightlike_plane"},
        "checks": ["thm_3_13_ricci_symmetry"],
    }
    a = statgeo.run(scenario, samples=4, seed=2, timing=False)
    b = statgeo.run(scenario, samples=4, seed=2, timing=False)
    assert a == b
    assert "timing" not in a
    assert a["numerics"]["samples"] == 4
    assert a["checks"][0]["outcome"] == "PASS"
    assert a["checks"][0]["label"] == "Theorem 3.13"


def test_errors():
    with pytest.raises(statgeo.ScenarioError, match="lemma_9_9"):
        statgeo.run({"ambient": {"name": "flat"}, "checks": ["lemma_9_9"]})
    with pytest.raises(ValueError):
        statgeo.run("{not json")
    with pytest.raises(statgeo.FixtureError):
        statgeo.run({"ambient": {"name": "flat", "dim": 4}, "submanifold": {"name": "light_cone"},
                     "checks": ["lemma_3_2"]})
