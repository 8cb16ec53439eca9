"""Kac-Rice density and expected real-root counts.

For p(x) = sum_i a_i xi_i x^i with xi_i i.i.d. standard normal, write

    M(x) = sum a_i^2 x^(2i)          (variance of p)
    A(x) = sum i^2 a_i^2 x^(2i-2)    (variance of p')
    B(x) = sum i a_i^2 x^(2i-1)      (covariance of p and p')

The expected number of real roots in (a, b) is (1/pi) * integral of the
density f = sqrt(A*M - B^2)/M.  The discriminant A*M - B^2 is never formed by
subtraction; it equals the positive double sum

    1/2 * sum_{i,j} (i-j)^2 a_i^2 a_j^2 x^(2(i+j-1)) = sum_m c_m x^(2m-2)

(the table's convolution coefficients), which near x = 1 avoids the ~log10(n)
digits the subtraction S2 - S1^2 would lose.  Everything is evaluated by
log-sum-exp on the log-scale tables.

The Kac family (gamma = 0) has closed forms: M(x) = (1 - x^(2n+2))/(1 - x^2)
and, with X = x^2 and phi(X) = X M'(X)/M(X),

    f(x)^2 = d phi/dX = 1/(X-1)^2 - (n+1)^2 X^n / (X^(n+1) - 1)^2,

evaluated through series fallbacks near X = 1, which makes density and root
counts O(1) per point up to n ~ 10^6.

Intervals reaching past x = 1 are always mapped back onto (0, 1) through the
substitution u = 1/x, whose integrand is the density of the reciprocal
(coefficient-reversed) family; infinite endpoints are never integrated
improperly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterDomainError, QuadratureError, TableStateError
from .families import (
    CoefficientTable,
    FamilyKind,
    PolynomialClass,
    coefficient_table,
    reciprocal_table,
)
from .quadrature import QuadratureResult, adaptive_quadrature

__all__ = [
    "KacRiceTriple",
    "kac_rice_eval",
    "density",
    "expected_roots_interval",
    "expected_roots_real_line",
    "expected_roots_real_line_result",
    "expected_internal_equilibria",
    "relation_residuals",
    "kac_log_variance",
    "kac_density",
    "kac_triple",
]


@dataclass(frozen=True)
class KacRiceTriple:
    """Log variance, ratio sums and density at one point.

    ``s1 = B/M``, ``s2 = A/M``, ``log_amb = log(A*M - B^2)``; the invariant
    f^2 = exp(log_amb - 2*log_m) holds whenever both logs are finite.
    """

    x: float
    log_m: float
    s1: float
    s2: float
    log_amb: float
    f: float


# ---------------------------------------------------------------------------
# generic log-sum-exp evaluation
# ---------------------------------------------------------------------------

def _log_m_s1_s2(table: CoefficientTable, x: float) -> tuple[float, float, float]:
    """(log M, B/M, A/M) at x >= 0; needs only the squared coefficients."""
    la = table.log_sq_coeff
    n = table.n
    if x == 0.0:
        return float(la[0]), 0.0, float(np.exp(la[1] - la[0]))
    i = np.arange(n + 1, dtype=float)
    terms = la + 2.0 * i * math.log(x)
    peak = terms.max()
    w = np.exp(terms - peak)
    total = w.sum()
    log_m = peak + math.log(total)
    p = w / total
    s1 = float((i * p).sum()) / x
    s2 = float((i * i * p).sum()) / (x * x)
    return float(log_m), s1, s2


def _log_amb(table: CoefficientTable, x: float) -> float:
    lc = table.log_conv_coeff
    if x == 0.0:
        return float(lc[1])  # c_1 = a_0^2 a_1^2, times x^0
    m = np.arange(len(lc), dtype=float)
    terms = lc + (2.0 * m - 2.0) * math.log(x)
    finite = np.isfinite(terms)
    peak = terms[finite].max()
    return float(peak + math.log(np.exp(terms[finite] - peak).sum()))


def kac_rice_eval(table: CoefficientTable, x: float) -> KacRiceTriple:
    """Evaluate (M, B/M, A/M, A*M - B^2, f) at x >= 0 in log scale.

    Negative x is handled upstream through evenness of the density.
    """
    if x < 0:
        raise ParameterDomainError(f"kac_rice_eval requires x >= 0, got {x!r}")
    if not table.has_convolution:
        raise TableStateError("table was built without convolution coefficients")
    log_m, s1, s2 = _log_m_s1_s2(table, x)
    log_amb = _log_amb(table, x)
    f = math.exp(0.5 * log_amb - log_m)
    return KacRiceTriple(float(x), log_m, s1, s2, log_amb, f)


def _density_array(table: CoefficientTable, xs: np.ndarray) -> np.ndarray:
    """Vectorized f(|x|); drives the quadrature."""
    la = table.log_sq_coeff
    lc = table.log_conv_coeff
    xs = np.abs(np.asarray(xs, dtype=float))
    out = np.empty(xs.shape)
    zero = xs == 0.0
    out[zero] = math.exp(0.5 * (la[1] - la[0]))
    if zero.all():
        return out
    lx = np.log(xs[~zero])
    i2 = 2.0 * np.arange(len(la))
    t = la[None, :] + lx[:, None] * i2[None, :]
    peak = t.max(axis=1)
    log_m = peak + np.log(np.exp(t - peak[:, None]).sum(axis=1))
    finite = np.isfinite(lc)
    m2 = 2.0 * np.arange(len(lc))[finite] - 2.0
    t = lc[finite][None, :] + lx[:, None] * m2[None, :]
    peak = t.max(axis=1)
    log_amb = peak + np.log(np.exp(t - peak[:, None]).sum(axis=1))
    out[~zero] = np.exp(0.5 * log_amb - log_m)
    return out


def density(table: CoefficientTable, x):
    """Kac-Rice density f(|x|) = sqrt(A*M - B^2)/M; accepts scalars or arrays."""
    if not table.has_convolution:
        raise TableStateError("table was built without convolution coefficients")
    arr = np.asarray(x, dtype=float)
    res = _density_array(table, np.atleast_1d(arr))
    return float(res[0]) if arr.ndim == 0 else res.reshape(arr.shape)


# ---------------------------------------------------------------------------
# Kac (gamma = 0) closed forms
# ---------------------------------------------------------------------------

# Taylor coefficients of csch^2(v) - 1/v^2 = sum c_k v^(2k-2), k >= 1.
_CSCH2 = (-1.0 / 3, 1.0 / 15, -2.0 / 189, 7.0 / 4725, -2.0 / 10395, 1382.0 / 58046625)
# Odd coefficients of 1/(e^v - 1) - 1/v + 1/2 = sum d_k v^(2k-1), k >= 1.
_EXPM1_INV = (1.0 / 12, -1.0 / 720, 1.0 / 30240, -1.0 / 1209600)
_SERIES_CUT = 0.25  # switch to series once |(n+1) ln X| drops below this


def kac_log_variance(n: int, x: float) -> float:
    """log M(x) = log((1 - x^(2n+2))/(1 - x^2)) for the Kac family, O(1)."""
    big = n + 1
    x = abs(float(x))
    if x == 0.0:
        return 0.0
    u = 2.0 * math.log(x)
    if u == 0.0:
        return math.log(big)
    w = big * u
    if u > 0:
        lo = w + math.log1p(-math.exp(-w)) if w > 36.0 else math.log(math.expm1(w))
        return lo - math.log(math.expm1(u))
    return math.log(-math.expm1(w)) - math.log(-math.expm1(u))


def kac_density(n: int, x) -> float | np.ndarray:
    """Kac density in O(1) per point; series fallback keeps full precision near |x| = 1."""
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 0:
        return _kac_density_scalar(n, float(arr))
    return np.array([_kac_density_scalar(n, float(v)) for v in arr.ravel()]).reshape(arr.shape)


def _kac_density_scalar(n: int, x: float) -> float:
    big = n + 1
    x = abs(x)
    if x == 0.0:
        return 1.0
    if x > 1.0:
        return _kac_density_scalar(n, 1.0 / x) / (x * x)
    s = -math.log(x)  # x = e^{-s}, s >= 0
    v = big * s
    if v == 0.0:
        return math.sqrt(n * (n + 2) / 12.0)
    if v >= _SERIES_CUT:
        one_m_x2 = -math.expm1(-2.0 * s)
        one_m_x2big = -math.expm1(-2.0 * v)
        f2 = 1.0 / one_m_x2**2 - big * big * math.exp(-2.0 * n * s) / one_m_x2big**2
    else:
        f2 = 0.0
        for k, c in enumerate(_CSCH2, start=1):
            f2 += c * s ** (2 * k - 2) * (1.0 - float(big) ** (2 * k))
        f2 *= math.exp(2.0 * s) / 4.0
    return math.sqrt(max(f2, 0.0))


def _kac_phi(n: int, u: float) -> float:
    """phi(X) = X M'(X)/M(X) at u = ln X; equals B/(M) * x at X = x^2."""
    big = n + 1
    if abs(big * u) < _SERIES_CUT:
        phi = 0.5 * n
        for k, d in enumerate(_EXPM1_INV, start=1):
            phi += d * u ** (2 * k - 1) * (float(big) ** (2 * k) - 1.0)
        return phi
    w = big * u
    term_big = big * math.exp(-w) if w > 36.0 else big / math.expm1(w)
    term_one = math.exp(-u) if u > 36.0 else 1.0 / math.expm1(u)
    return (big - 1.0) + term_big - term_one


def kac_triple(n: int, x: float) -> KacRiceTriple:
    """Closed-form KacRiceTriple for the Kac family, O(1) per point."""
    if x < 0:
        raise ParameterDomainError(f"kac_triple requires x >= 0, got {x!r}")
    if x == 0.0:
        return KacRiceTriple(0.0, 0.0, 0.0, 1.0, 0.0, 1.0)
    f = _kac_density_scalar(n, x)
    log_m = kac_log_variance(n, x)
    u = 2.0 * math.log(x)
    phi = _kac_phi(n, u)
    s1 = phi / x
    s2 = f * f + phi * phi / (x * x)
    log_amb = 2.0 * math.log(f) + 2.0 * log_m
    return KacRiceTriple(float(x), log_m, s1, s2, log_amb, f)


# ---------------------------------------------------------------------------
# expected root counts
# ---------------------------------------------------------------------------

def _positive_segments(a: float, b: float) -> list[tuple[float, float]]:
    """Fold (a, b) onto the positive half line using evenness of f."""
    segments = []
    if a < 0:
        segments.append((max(-b, 0.0), -a))
    if b > 0:
        segments.append((max(a, 0.0), b))
    return [(lo, hi) for lo, hi in segments if hi > lo]


def _unit_legs(a: float, b: float) -> list[tuple[float, float, bool]]:
    """Decompose (a, b) into legs (lo, hi, reversed) with 0 <= lo < hi <= 1.

    A reversed leg integrates the reciprocal family's density over (lo, hi),
    which equals the original integral over (1/hi, 1/lo).
    """
    legs = []
    for lo, hi in _positive_segments(a, b):
        if lo < 1.0:
            legs.append((lo, min(hi, 1.0), False))
        if hi > 1.0:
            inv_hi = 0.0 if math.isinf(hi) else 1.0 / hi
            legs.append((inv_hi, 1.0 / max(lo, 1.0), True))
    return legs


def _integrate_legs(direct, reciprocal, a, b, tol) -> QuadratureResult:
    legs = _unit_legs(a, b)
    if not legs:
        return QuadratureResult(0.0, 0.0, 0, True)
    per_leg = tol / len(legs)
    total = QuadratureResult(0.0, 0.0, 0, True)
    for lo, hi, use_reciprocal in legs:
        integrand = reciprocal if use_reciprocal else direct
        total = total + adaptive_quadrature(
            lambda xs, g=integrand: g(xs) / math.pi, lo, hi, tol=per_leg
        )
    return total


def _validate_interval(a: float, b: float, tol: float) -> None:
    if math.isnan(a) or math.isnan(b) or not a < b:
        raise ParameterDomainError(f"need a < b, got ({a!r}, {b!r})")
    if not tol > 0:
        raise ParameterDomainError(f"tolerance must be positive, got {tol!r}")


def expected_roots_interval(
    table: CoefficientTable, a: float, b: float, tol: float = 1e-9
) -> QuadratureResult:
    """(1/pi) * integral of f over (a, b); endpoints may be +-inf."""
    _validate_interval(a, b, tol)
    if not table.has_convolution:
        raise TableStateError("table was built without convolution coefficients")
    recip = reciprocal_table(table)
    return _integrate_legs(
        lambda xs: _density_array(table, xs),
        lambda xs: _density_array(recip, xs),
        a, b, tol,
    )


def kac_expected_roots_interval(n: int, a: float, b: float, tol: float = 1e-9) -> QuadratureResult:
    """Interval root count for the Kac family via the closed-form density."""
    _validate_interval(a, b, tol)
    fn = lambda xs: kac_density(n, xs)  # Kac coefficients are palindromic
    return _integrate_legs(fn, fn, a, b, tol)


def expected_roots_real_line_result(
    family: PolynomialClass, n: int, tol: float = 1e-9
) -> QuadratureResult:
    """Full-line expected root count as a QuadratureResult.

    Symmetric families use 4 * E(0, 1); otherwise the count is
    2 * (E(0, 1) + E_reciprocal(0, 1)), the reciprocal leg covering (1, inf).
    """
    if not tol > 0:
        raise ParameterDomainError(f"tolerance must be positive, got {tol!r}")
    if family.kind is FamilyKind.GAMMA and family.gamma == 0.0:
        leg = kac_expected_roots_interval(n, 0.0, 1.0, tol / 4.0)
        return QuadratureResult(4.0 * leg.value, 4.0 * leg.abs_error_estimate,
                                leg.evaluations, leg.converged)
    table = coefficient_table(family, n, with_convolution=True)
    direct = lambda xs: _density_array(table, xs)
    leg = adaptive_quadrature(lambda xs: direct(xs) / math.pi, 0.0, 1.0, tol=tol / 4.0)
    if family.is_symmetric:
        return QuadratureResult(4.0 * leg.value, 4.0 * leg.abs_error_estimate,
                                leg.evaluations, leg.converged)
    recip = reciprocal_table(table)
    other = adaptive_quadrature(
        lambda xs: _density_array(recip, xs) / math.pi, 0.0, 1.0, tol=tol / 4.0
    )
    return QuadratureResult(
        2.0 * (leg.value + other.value),
        2.0 * (leg.abs_error_estimate + other.abs_error_estimate),
        leg.evaluations + other.evaluations,
        leg.converged and other.converged,
    )


def expected_roots_real_line(family: PolynomialClass, n: int, tol: float = 1e-9) -> float:
    result = expected_roots_real_line_result(family, n, tol)
    if not result.converged:
        raise QuadratureError(
            f"root-count quadrature did not converge for {family.label()} at n={n} "
            f"(error estimate {result.abs_error_estimate:.3e})"
        )
    return result.value


def expected_internal_equilibria(family: PolynomialClass, n: int, tol: float = 1e-9) -> float:
    """Expected internal equilibria: half the expected number of real roots."""
    return 0.5 * expected_roots_real_line(family, n, tol)


# ---------------------------------------------------------------------------
# finite-difference residuals of the B = M'/2 and A = (x M')'/(4x) relations
# ---------------------------------------------------------------------------

def relation_residuals(table: CoefficientTable, x: float, h: float | None = None) -> tuple[float, float]:
    """Residuals of the derivative relations, normalized by M(x).

    r1 = |B/M - (finite difference of M)/(2M)| and r2 the analogue for
    A = (x M')'/(4x); both should vanish to O(h^2) + roundoff.
    """
    if not x > 0:
        raise ParameterDomainError(f"relation_residuals requires x > 0, got {x!r}")
    if h is None:
        h = max(1e-6, 1e-8 * x)
    log_m0, s1_0, s2_0 = _log_m_s1_s2(table, x)

    def scaled(y: float) -> tuple[float, float]:
        # (M(y)/M(x), y * M'(y)/M(x)); M' = 2B so y*M'(y) = 2y*S1(y)*M(y)
        log_m, s1, _ = _log_m_s1_s2(table, y)
        ratio = math.exp(log_m - log_m0)
        return ratio, 2.0 * y * s1 * ratio

    m_plus, g_plus = scaled(x + h)
    m_minus, g_minus = scaled(x - h)
    fd_mprime = (m_plus - m_minus) / (2.0 * h)       # M'(x)/M(x)
    fd_xmprime = (g_plus - g_minus) / (2.0 * h)      # (x M'(x))'/M(x)
    r1 = abs(s1_0 - 0.5 * fd_mprime)
    r2 = abs(s2_0 - fd_xmprime / (4.0 * x))
    return r1, r2
