import json
import math

import numpy as np
import pytest

import archipelago as ar


def test_catalog_and_generators():
    names = ar.model_names()
    assert len(names) == 11
    assert ar.find_model("qubit_ququart").terms == [(1, 1), (2, 13), (3, 3)]
    gens = ar.su_generators(4)
    assert len(gens) == 15
    expected = np.zeros((4, 4))
    expected[2, 3] = expected[3, 2] = 1
    assert np.array_equal(gens[12], expected)
    with pytest.raises(ar.UnsupportedDimension):
        ar.su_generators(5)


def test_states_and_ppt():
    rho = ar.build_state("qubit_ququart", [0, 0, 0])
    assert np.allclose(rho, np.eye(8) / 8)
    assert ar.is_physical("qubit_ququart", [0.25, 0.25, 0.0])
    assert not ar.is_physical("qubit_ququart", [0.3, 0.4, 0.3])
    assert not ar.is_ppt("two_qubit", [-0.6, -0.6, -0.6])
    pt = ar.partial_transpose(ar.build_state("two_qubit", [-0.6, -0.6, -0.6]), 2, 2)
    assert np.linalg.eigvalsh(pt).min() == pytest.approx(-0.2)
    assert not ar.is_psd(np.diag([0.0, -1.0]))
    assert np.array_equal(ar.leading_principal_minors(np.diag([0.0, -1.0])), [0.0, 0.0])
    with pytest.raises(ar.ArityError):
        ar.build_state("two_qubit", [0.1])
    with pytest.raises(ar.UnknownName):
        ar.find_model("nope")


def test_thresholds():
    d = ar.derive_thresholds("two_qubit")
    assert d["converged"]
    assert d["additive"] == pytest.approx(1.0, rel=1e-5)
    assert d["multiplicative_form"] == "1/729"
    with pytest.raises(ar.UnsupportedModel):
        ar.derive_thresholds("hadamard_qutrit7")


def test_closed_forms_and_dilog():
    assert ar.dilog(1.0) == pytest.approx(math.pi**2 / 6, abs=1e-12)
    assert ar.closed_form("qq_additive") == pytest.approx(2 / 3 * (math.sqrt(2) - 1), abs=1e-15)
    assert "eq5" in ar.closed_form_names()
    with pytest.raises(ar.DomainError):
        ar.dilog(1.5)


def test_probabilities():
    est = ar.mc_probabilities("two_qubit", ["ppt", "full"], samples=20000, seed=3)
    assert est["full"]["value"] == 1.0
    assert abs(est["ppt"]["value"] - 0.5) < 4 * est["ppt"]["std_error"] + 1e-12
    again = ar.mc_probabilities("two_qubit", ["ppt"], samples=20000, seed=3, workers=2)
    assert again["ppt"]["hits"] == est["ppt"]["hits"]
    g = ar.grid_probabilities("two_param_qutrit", ["bound_any"], resolution=400)
    assert abs(g["bound_any"]["value"] - ar.closed_form("tpq_bound")) < 5e-3


def test_report_cloud_and_render():
    report = ar.verify(samples=100000, models=["two_qubit"])
    assert report["summary"]["total"] == len(report["records"])
    csv = ar.export_cloud("qubit_ququart", "full", points=5)
    lines = csv.strip().splitlines()
    assert lines[0] == "t1,t2,t3,region" and len(lines) == 6
    cloud = json.loads(ar.export_cloud("qubit_ququart", "ent_add", points=5, format="json"))
    assert len(cloud["points"]) == 5
    svg, counts = ar.render_2d("two_param_ququart", 20)
    assert svg.startswith("<?xml") and sum(counts.values()) == 400
