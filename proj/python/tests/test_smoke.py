import json
import math

import pytest

import cyweyl


def test_builtin_descriptors_satisfy_dimension_identity():
    for name in cyweyl.builtin_names():
        assert cyweyl.descriptor(name).dimension_identity_holds(), name


def test_unknown_space_raises_value_error():
    with pytest.raises(ValueError):
        cyweyl.descriptor("Nowhere")


def test_invariant_map_round_trip():
    x = (2.0, 1.0)
    y = (cyweyl.rho1(x), cyweyl.rho2("b2", x))
    assert y == pytest.approx((5.0, 4.0))
    assert cyweyl.rho_inverse("b2", y) == pytest.approx(x)
    with pytest.raises(ValueError):
        cyweyl.rho_inverse("b2", (1.0, 0.5))


def test_weyl_group_order():
    assert len(cyweyl.weyl_group("g2")) == 12


def test_rank_one_limit_and_profile_ode():
    assert cyweyl.transversal_rank_one(5, 0, 1.0, 0.0) == pytest.approx(32.0)
    p = cyweyl.RadialProfile(8, 3, 1.0, C1=1.0)
    assert p.g(0.0) == 0.5
    assert max(abs(p.ode_residual(s)) for s in (0.1, 1.0, 5.0, 20.0)) < 1e-6


def test_verify_builtin():
    ok, checks = cyweyl.verify("SU(3)/SO(3)")
    assert ok
    assert all(c["pass"] for c in checks)


def test_solve_small_problem():
    problem = {
        "l": 2,
        "domain": {"lower": [-0.5, -0.5], "upper": [0.5, 0.5]},
        "A": [["1 + 0.1*y1", 0.2], ["0.1*y2", 1]],
        "B": [[[0.05, 0], [0, 0.02]], [[0, 0.03], [0.03, 0.04]]],
        "sigma": [1, 0.3],
        "n": 1,
        "f0": "3*y1 + 0.5*(y1^2 + y2^2)",
        "normalize_f0": True,
    }
    r = cyweyl.solve_problem(json.dumps(problem), (9, 9))
    assert r["status"] == "converged"
    assert r["t"][-1] == 1.0
    assert len(r["f"]) == 81
    assert all(math.isfinite(v) for v in r["f"])
