import math

import numpy as np
import pytest

from randroot.errors import NumericError
from randroot.quadrature import _WG, _WGK, _XGK, adaptive_quadrature, _panel


def monomial_integral(k, a, b):
    return (b ** (k + 1) - a ** (k + 1)) / (k + 1)


def test_weights_normalized():
    # both rules integrate 1 over [-1, 1] exactly
    assert abs(_WGK.sum() - 2.0) < 1e-14
    assert abs(_WG.sum() - 2.0) < 1e-14
    assert np.all(np.diff(_XGK) > 0)


@pytest.mark.parametrize("k", range(0, 23))
def test_kronrod_rule_exact_through_degree_22(k):
    # a 15-point Kronrod extension integrates polynomials up to degree 22 exactly;
    # any wrong digit in the tabulated nodes/weights breaks this at degree ~10+
    a, b = -0.73, 1.19
    value, _ = _panel(lambda x: x**k, a, b)
    assert value == pytest.approx(monomial_integral(k, a, b), rel=2e-13, abs=1e-14)


@pytest.mark.parametrize("k", range(0, 14))
def test_gauss_subrule_exact_through_degree_13(k):
    a, b = -0.4, 0.9
    center, half = 0.5 * (a + b), 0.5 * (b - a)
    nodes = center + half * _XGK[1:15:2]
    value = half * float(_WG @ nodes**k)
    assert value == pytest.approx(monomial_integral(k, a, b), rel=2e-13, abs=1e-15)


def test_adaptive_known_integrals():
    res = adaptive_quadrature(lambda x: 1.0 / (1.0 + x * x), 0.0, 1.0, tol=1e-12)
    assert res.converged
    assert res.value == pytest.approx(math.pi / 4.0, abs=1e-12)

    res = adaptive_quadrature(np.exp, -1.0, 2.0, tol=1e-12)
    assert res.value == pytest.approx(math.e**2 - math.exp(-1), rel=1e-13)
    assert res.abs_error_estimate >= 0
    assert res.evaluations % 15 == 0


def test_adaptive_resolves_sharp_peak():
    # narrow Lorentzian needs many subdivisions but stays well under the caps
    w = 1e-5
    res = adaptive_quadrature(lambda x: w / (w * w + (x - 0.3) ** 2), 0.0, 1.0, tol=1e-10)
    exact = math.atan(0.7 / w) - math.atan(-0.3 / w)
    assert res.converged
    assert res.value == pytest.approx(exact, abs=1e-9)


def test_budget_exhaustion_reports_not_converged():
    w = 1e-7
    res = adaptive_quadrature(
        lambda x: w / (w * w + (x - 0.5) ** 2), 0.0, 1.0, tol=1e-13, max_depth=3
    )
    assert not res.converged
    assert res.abs_error_estimate > 1e-13


def test_degenerate_and_invalid_intervals():
    assert adaptive_quadrature(np.exp, 1.0, 1.0).value == 0.0
    with pytest.raises(NumericError):
        adaptive_quadrature(np.exp, 2.0, 1.0)
    with pytest.raises(NumericError):
        adaptive_quadrature(lambda x: np.full_like(x, np.nan), 0.0, 1.0)
