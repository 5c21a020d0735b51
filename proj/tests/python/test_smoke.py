import math

import numpy as np
import pytest

import singosc4 as so


def test_oscillator_energy():
    p = so.SystemParams(omega=1.5)
    sec = so.sector(p, 0, 0)
    assert so.energy(p, 4, sec) == pytest.approx(1.5 * 6)
    assert so.euler_states(4, sec) == ["0", "1", "2"]
    assert so.polar_states(4, sec) == [(0, 2), (1, 1), (2, 0)]


def test_coefficients_are_orthogonal_and_agree():
    p = so.SystemParams(c1=0.5, c2=2.0)
    sec = so.sector(p, "1/2", "1/2")
    w_cg = so.coefficient_table(5, sec, "cg")
    w_3f2 = so.coefficient_table(5, sec, "3f2")
    w_quad = so.coefficient_table(5, sec, "quad", p)
    assert w_cg.shape == (3, 3)
    assert np.abs(w_cg @ w_cg.T - np.eye(3)).max() < 1e-12
    assert np.abs(w_cg - w_3f2).max() < 1e-10
    assert np.abs(np.abs(w_quad) - np.abs(w_cg)).max() < 1e-8


def test_spheroidal_limits():
    sec = so.sector(so.SystemParams(c1=0.5), 1, 0)
    assert so.euler_states(6, sec) == ["1", "2", "3"]
    sol = so.solve_spheroidal(6, sec, 0.0)
    lam = [so.lambda_eigenvalue(j, sec) for j in (1, 2, 3)]
    assert sol["q_values"] == lam
    assert np.array_equal(np.abs(sol["U"]), np.eye(3))
    sol = so.solve_spheroidal(6, sec, 3.0)
    assert max(sol["residual_u"] + sol["residual_v"]) < 1e-10


def test_errors():
    with pytest.raises(ValueError):
        so.sector(so.SystemParams(), "1/2", 0)
    with pytest.raises(ValueError):
        so.sector(so.SystemParams(), "0.5", "0.5")
    with pytest.raises(ValueError):
        so.SystemParams(c1=-1.0)


def test_ks_map():
    x, y, z, _ = so.ks_map(0.3, -1.2, 0.7, 2.0)
    r2 = 0.3**2 + 1.2**2 + 0.7**2 + 2.0**2
    assert math.isclose(x * x + y * y + z * z, r2 * r2, rel_tol=1e-14)


def test_verify_and_cli():
    rep = so.run_verify(["c6", "c10"])
    assert rep["results"]["passed"] is True
    assert [c["id"] for c in rep["results"]["criteria"]] == ["c6", "c10"]
    code, out, _ = so.run_cli(["spectrum", "--n-max", "2"])
    assert code == 0
    assert out.startswith("# singosc4 spectrum schema=1")
    assert so.run_cli(["spectrum", "--m", "1/2"])[0] == 1
