"""Leading orders, Laplace-point approximants, and scaling-law fits.

The sums defining M_n concentrate around the index i* = floor(n*t) where
t = x^(1/gamma)/(1 + x^(1/gamma)) maximizes J(t) = gamma*I(t) + t*log(x),
I(t) = -t*log(t) - (1-t)*log(1-t).  With K = n*t*(1-t)/gamma = n/|J''(t)| the
Laplace approximations are

    M_n(x)           ~ C(n,i*)^(2*gamma) * x^(2*i*)   * sqrt(pi * K)
    A_n*M_n - B_n^2  ~ C(n,i*)^(4*gamma) * x^(4*i*-2) * (pi/2) * K^2.

``log_gram_approx``'s primary value carries the binomial prefactor to the
single 2*gamma power; numerically only the squared prefactor (the secondary
field) reproduces the exact double sum, and both are exposed so diagnostics
can report the gap.  Both approximants flag points outside the validity
window x >= (log n)^(4*gamma)/n^gamma instead of raising.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np
from scipy.special import gammaln

from .errors import NumericError, ParameterDomainError
from .families import (
    FamilyKind,
    PolynomialClass,
    alpha_beta_family,
    coefficient_table,
    legendre,
)
from .kacrice import expected_roots_real_line

__all__ = [
    "EntropyTerms",
    "entropy_terms",
    "ConcentrationParams",
    "concentration_params",
    "LaplaceApprox",
    "GramApprox",
    "log_variance_approx",
    "log_gram_approx",
    "leading_order",
    "ScalingFit",
    "ScalingFitError",
    "scaling_fit",
    "alpha_beta_ratio_check",
]


class EntropyTerms(NamedTuple):
    entropy: float          # I(t)
    action: float           # J(t) = gamma*I(t) + t*log(x)
    action_prime: float     # J'(t) = gamma*log((1-t)/t) + log(x)
    action_double_prime: float  # J''(t) = -gamma/(t*(1-t))


def entropy_terms(t: float, gamma: float, x: float) -> EntropyTerms:
    if not 0.0 < t < 1.0:
        raise ParameterDomainError(f"need t in (0, 1), got {t!r}")
    if not x > 0:
        raise ParameterDomainError(f"need x > 0, got {x!r}")
    entropy = -t * math.log(t) - (1.0 - t) * math.log(1.0 - t)
    log_x = math.log(x)
    return EntropyTerms(
        entropy,
        gamma * entropy + t * log_x,
        gamma * math.log((1.0 - t) / t) + log_x,
        -gamma / (t * (1.0 - t)),
    )


@dataclass(frozen=True)
class ConcentrationParams:
    """Saddle point t in (0, 1/2] and its integer index i* = floor(n*t)."""

    gamma: float
    x: float
    n: int
    t: float
    i_star: int


def concentration_params(gamma: float, x: float, n: int) -> ConcentrationParams:
    if not gamma > 0:
        raise ParameterDomainError(f"need gamma > 0, got {gamma!r}")
    if not 0.0 < x <= 1.0:
        raise ParameterDomainError(f"need 0 < x <= 1, got {x!r}")
    power = x ** (1.0 / gamma)
    t = power / (1.0 + power)
    return ConcentrationParams(gamma, x, n, t, int(math.floor(n * t)))


def _in_window(gamma: float, n: int, x: float) -> bool:
    return x >= math.log(n) ** (4.0 * gamma) / n**gamma


def _log_binom(n: float, k: float) -> float:
    return float(gammaln(n + 1.0) - (gammaln(k + 1.0) + gammaln(n - k + 1.0)))


class LaplaceApprox(NamedTuple):
    log_value: float
    in_validity_window: bool


class GramApprox(NamedTuple):
    log_value: float                    # binomial prefactor to one 2*gamma power
    log_value_squared_prefactor: float  # prefactor squared (matches the double sum)
    in_validity_window: bool


def log_variance_approx(gamma: float, n: int, x: float) -> LaplaceApprox:
    """Laplace approximation of log M_n(x) for the gamma family."""
    params = concentration_params(gamma, x, n)
    peak = n * x ** (1.0 / gamma) / (gamma * (1.0 + x ** (1.0 / gamma)) ** 2)
    value = (
        2.0 * gamma * _log_binom(float(n), float(params.i_star))
        + 2.0 * params.i_star * math.log(x)
        + 0.5 * math.log(math.pi)
        + 0.5 * math.log(peak)
    )
    return LaplaceApprox(value, _in_window(gamma, n, x))


def log_gram_approx(gamma: float, n: int, x: float) -> GramApprox:
    """Laplace approximation of log(A_n*M_n - B_n^2) for the gamma family."""
    params = concentration_params(gamma, x, n)
    peak = n * x ** (1.0 / gamma) / (gamma * (1.0 + x ** (1.0 / gamma)) ** 2)
    log_binom = _log_binom(float(n), float(params.i_star))
    shared = (
        (4.0 * params.i_star - 2.0) * math.log(x)
        + math.log(math.pi / 2.0)
        + 2.0 * math.log(peak)
    )
    return GramApprox(
        2.0 * gamma * log_binom + shared,
        4.0 * gamma * log_binom + shared,
        _in_window(gamma, n, x),
    )


def leading_order(family: PolynomialClass, n) -> float:
    """Leading-order expected root count: sqrt(2*gamma*n), (2/pi)*log(n) at
    gamma = 0, or sqrt(2n) for the alpha/beta family (parameter independent)."""
    if not n >= 2:
        raise ParameterDomainError(f"leading order needs n >= 2, got {n!r}")
    if family.kind is FamilyKind.GAMMA:
        if family.gamma == 0.0:
            return (2.0 / math.pi) * math.log(n)
        return math.sqrt(2.0 * family.gamma * n)
    return math.sqrt(2.0 * n)


@dataclass(frozen=True)
class ScalingFit:
    """Least-squares growth fit of expected root counts against n.

    For gamma = 0 the regression is E N against log(n) (logarithmic growth);
    otherwise log(E N) against log(n), with slope expected near 1/2.
    """

    family: PolynomialClass
    n_values: tuple[int, ...]
    en_values: tuple[float, ...]
    slope: float
    intercept: float
    r_squared: float
    max_rel_dev_from_leading: float


class ScalingFitError(NumericError):
    """Carries the per-n rows that did complete before the failure."""

    def __init__(self, message: str, rows: list[tuple[int, float]]):
        super().__init__(message)
        self.rows = rows


def scaling_fit(family: PolynomialClass, n_values: Sequence[int], tol: float = 1e-9) -> ScalingFit:
    ns = [int(v) for v in n_values]
    if len(ns) < 4 or any(b <= a for a, b in zip(ns, ns[1:])):
        raise ParameterDomainError("need at least 4 strictly increasing n values")
    rows: list[tuple[int, float]] = []
    for n in ns:
        try:
            rows.append((n, expected_roots_real_line(family, n, tol)))
        except NumericError as exc:
            raise ScalingFitError(
                f"quadrature failed at n={n} ({exc}); {len(rows)} of {len(ns)} values completed",
                rows,
            ) from exc
    en = np.array([v for _, v in rows])
    log_n = np.log(np.array(ns, dtype=float))
    is_kac = family.kind is FamilyKind.GAMMA and family.gamma == 0.0
    y = en if is_kac else np.log(en)
    slope, intercept = np.polyfit(log_n, y, 1)
    predicted = slope * log_n + intercept
    ss_res = float(((y - predicted) ** 2).sum())
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r_squared = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    dev = max(abs(v / leading_order(family, n) - 1.0) for n, v in rows)
    return ScalingFit(family, tuple(ns), tuple(float(v) for v in en),
                      float(slope), float(intercept), float(r_squared), float(dev))


def alpha_beta_ratio_check(alpha: float, beta: float, n: int, i: int) -> tuple[float, float]:
    """(exact a_i^2 ratio against alpha=beta=0, exp(h(i/n)) approximant).

    h(t) = (alpha+beta)*I(t) + I'(t)*(alpha*(1-t) - beta*t) with
    I'(t) = log((1-t)/t).  Diagnostic only; both values are returned with no
    pass/fail contract.
    """
    if not 1 <= i <= n - 1:
        raise ParameterDomainError(f"need 1 <= i <= n-1, got i={i}, n={n}")
    log_ab = coefficient_table(alpha_beta_family(alpha, beta), n).log_sq_coeff[i]
    log_00 = coefficient_table(legendre(), n).log_sq_coeff[i]
    exact = math.exp(float(log_ab - log_00))
    t = i / n
    entropy = -t * math.log(t) - (1.0 - t) * math.log(1.0 - t)
    slope = math.log((1.0 - t) / t)
    h = (alpha + beta) * entropy + slope * (alpha * (1.0 - t) - beta * t)
    return exact, math.exp(h)
