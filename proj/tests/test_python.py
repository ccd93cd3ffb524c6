import json
import math

import pytest

import confining


def test_cli_roundtrip():
    code, out, err = confining.cli(["sigma", "--format", "json"])
    assert code == 0, err
    report = json.loads(out)
    assert report["series"]["verdict"] == "divergent"


def test_cli_usage_error():
    code, _, err = confining.cli(["classify", "--format", "yaml"])
    assert code == 2


def test_iterlog_values():
    assert confining.iterlog(1, 7.5) == 7.5
    assert confining.iterlog(2, math.e) == pytest.approx(1.0)
    assert confining.iterlog_threshold(2) == pytest.approx(math.e)
    with pytest.raises(Exception):
        confining.iterlog(3, 2.0)  # below the admissibility edge


def test_xk_deep_depth():
    # X_1 = 1/(1+s) stays computable far past the underflow horizon of t
    assert confining.xk_from_s(1, 700.0) == pytest.approx(1.0 / 701.0)
    assert confining.xk_from_s(1, 1e6) == pytest.approx(1.0 / (1.0 + 1e6))


def test_critical_coefficients():
    assert confining.critical_coeff(1, 5.0) == 0.75
    assert confining.critical_coeff(2, 5.0) == pytest.approx(0.75 - 1.0 / 5.0)
    # explicit borderline coefficient for one log and unit exponent
    assert confining.counterexample_potential(1, 1.0, 20.0) == pytest.approx(0.85)


def test_classify_power():
    verdict = confining.classify_power(1.0)
    assert verdict["verdict"] == "limit_point"
    assert verdict["sigma_dominant"] == pytest.approx(-0.6180339887498949, abs=1e-6)


def test_hardy_quotient():
    assert confining.hardy_quotient("sine") == pytest.approx(2.5849979312277327)
    assert confining.hardy_quotient("power", 0.01) == pytest.approx(1.0404)


def test_geometry():
    assert confining.reach("disk", 2.0) == pytest.approx(2.0)
    assert confining.reach("ellipse", 2.0, 1.0) == pytest.approx(0.5)
    d, gx, gy = confining.dist("disk", 2.0, 0.0, 1.0, 0.0)
    assert d == pytest.approx(1.0)
    assert (gx, gy) == (pytest.approx(-1.0), pytest.approx(0.0))
