import math

import pytest

import gkl

P1_ORIGIN = 0.70763110708245108949  # frozen mpmath value of P_1(0, 0), n = 1


def test_kernel_values():
    p = gkl.poisson_kernel(1.0, [0.0], [0.0])
    assert p.sign == 1
    assert float(p) == pytest.approx(P1_ORIGIN, rel=1e-9)
    assert p.log_magnitude == pytest.approx(math.log(P1_ORIGIN), rel=1e-9)
    assert gkl.dx_poisson_kernel(1.0, [0.0], [0.0], 1).value == 0.0
    assert math.isfinite(gkl.dt_poisson_kernel(0.5, [1.0, 2.0], [0.0, -1.0]).value)


def test_far_tail_is_log_only():
    v = gkl.poisson_kernel(0.01, [30.0], [-30.0])
    assert v.sign == 1
    assert v.log_magnitude < -700.0


def test_bounds():
    k = gkl.k_bound(1.0, [0.0], [0.0])
    assert set(k["terms"]) == {"K1", "K2", "K3", "K4"}
    assert float(k["total"]) == pytest.approx(math.exp(-0.01) + 1.0, rel=1e-12)
    z = gkl.z_bound(0.5, [20.0], [15.0])
    assert set(z["terms"]) == {"Z1", "Z2", "Z3", "Z4"}
    assert gkl.k2_tilde_1d(0.5, 3.0, 2.0) > 0.0
    assert gkl.in_sharpness_set(0.01, [10.0], [9.99], "E1")


def test_input_errors():
    with pytest.raises(ValueError):
        gkl.poisson_kernel(1.0, [0.0], [0.0, 1.0])
    with pytest.raises(ValueError):
        gkl.poisson_kernel(-1.0, [0.0], [0.0])
    with pytest.raises(ValueError):
        gkl.in_sharpness_set(1.0, [0.0], [0.0], "E9")


def test_lipschitz():
    prof = gkl.glip_profile("const(2)", 1, 0.5, [0.1, 1.0], [[0.0], [3.0]])
    assert prof["seminorm"] == 0.0
    assert [p["t"] for p in prof["profile"]] == [0.1, 1.0]
    c = gkl.lip_constant("const(1)", 1, 0.5, [([0.0], [1.0]), ([2.0], [5.0])])
    assert c == 0.0


def test_suites():
    assert len(gkl.suite_names()) == 12
    (res,) = gkl.run_suites(["lemma22"])
    assert res["suite"] == "lemma22"
    assert res["pass"]
    assert all(r["pass"] for r in res["rows"])
    with pytest.raises(gkl.ConfigError, match="sweep.sed"):
        gkl.run_suites(["lemma22"], "sweep.sed = 1\n")
    with pytest.raises(ValueError):
        gkl.run_suites(["nosuch"])
