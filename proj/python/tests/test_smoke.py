import math

import pytest

import duopoly


def test_catalog():
    ids = duopoly.catalog_ids()
    assert "linear-particular" in ids
    assert len(ids) == 8
    info = duopoly.model_info("two-product")
    assert info["dimension"] == 2
    assert info["kind"] == "fixed-point"


def test_solve_linear_trace():
    t = duopoly.solve("linear-particular", start=([40.0], [60.0]), fixed=30)
    assert t["status"] == "Completed"
    x30, y30 = t["points"][30]
    assert x30[0] == pytest.approx(49.51219, abs=1e-5)
    assert y30[0] == pytest.approx(45.85366, abs=1e-5)


def test_bounds_counts():
    rows = duopoly.bounds("linear-particular", start=([40.0], [60.0]))
    assert [r["a_priori"] for r in rows] == [41, 53, 66, 79, 91]
    assert [r["a_posteriori"] for r in rows] == [14, 18, 23, 27, 32]


def test_proximity_model():
    t = duopoly.solve("disjoint-1d", tol=1e-5)
    assert t["status"] == "Converged"
    x, y = t["points"][-1]
    assert abs(x[0] - 1) < 1e-4 and abs(y[0] - 2) < 1e-4
    assert len(t["pair_gaps"]) == len(t["points"])


def test_verify_and_shrink():
    ok = duopoly.verify("cournot-classic", samples=2000, seed=1)
    assert all(r["passed"] for r in ok)
    bad = duopoly.verify("cournot-classic", samples=2000, seed=1, shrink=0.8)
    assert not bad[0]["passed"]


def test_oracle():
    r = duopoly.oracle_equilibrium("cournot-classic", grid=101)
    x, y = r["point"]
    assert x[0] == pytest.approx(80 / 3, abs=1e-6)
    assert y[0] == pytest.approx(110 / 3, abs=1e-6)


def test_bound_helpers():
    assert duopoly.contraction_factor(0.5, 0.125, 1 / 3, 1 / 6) == pytest.approx(5 / 6)
    assert duopoly.iterations_for_a_priori(0.5, 85.0, 1e-5) == 25
    assert duopoly.a_priori_fixed(0.5, 85.0, 11) == pytest.approx(170 * 2**-11)
    assert math.isclose(duopoly.a_posteriori_fixed(0.5, 1.0), 1.0)


def test_reference_table():
    t = duopoly.reference_table(16, k_override=4 * math.sqrt(2) / 9)
    assert [r[1] for r in t["rows"]] == ["9", "12", "15", "18", "20"]


def test_errors():
    with pytest.raises(duopoly.DuopolyError):
        duopoly.model_info("nope")
    with pytest.raises(ValueError):
        duopoly.solve("linear-particular", start=([500.0], [60.0]))
