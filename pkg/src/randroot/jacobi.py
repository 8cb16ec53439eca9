"""Jacobi polynomials, their roots, and the identities tying them to M_n.

The alpha/beta family's variance function factors through a Jacobi polynomial:

    M_n(x) = (1 - x^2)^n * J_n^(alpha,beta)((1 + x^2)/(1 - x^2)),    |x| < 1,

so the 2n zeros of M_n are +-i*sqrt(r_k) with r_k = (1 - s_k)/(1 + s_k) built
from the Jacobi roots s_1 < ... < s_n in (-1, 1).  That representation gives
the density as a positive root sum, f^2 = sum_k r_k/(x^2 + r_k)^2, and the
finite-n bracket sqrt(n)*(1-s_max)/(1+s_max) <= E N <= sqrt(n)*(1+s_max)/(1-s_max).

Polynomials are evaluated by the standard three-term recurrence (the explicit
binomial sum cancels badly); roots come from the symmetric tridiagonal
recurrence matrix (Golub-Welsch) refined by one Newton step.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

from .errors import NumericError, ParameterDomainError
from .families import alpha_beta_family, coefficient_table
from .kacrice import _log_m_s1_s2

__all__ = [
    "jacobi_eval",
    "jacobi_derivative",
    "JacobiRootSet",
    "jacobi_roots",
    "log_variance_via_jacobi",
    "density_via_roots",
    "BoundsReport",
    "root_bounds",
    "ultraspherical_bounds",
    "density_endpoints",
    "derivative_recurrence_residual",
]

_ASYMMETRY_NOTE = "derivation of the bracket assumes alpha == beta; containment for alpha != beta is checked empirically"


def _check_ab(alpha: float, beta: float) -> None:
    if not (alpha > -1.0 and beta > -1.0):
        raise ParameterDomainError(f"need alpha, beta > -1, got ({alpha!r}, {beta!r})")


def jacobi_eval(n: int, alpha: float, beta: float, x):
    """J_n^(alpha,beta)(x) by the three-term recurrence; scalar or array x."""
    _check_ab(alpha, beta)
    if n < 0:
        raise ParameterDomainError(f"degree must be >= 0, got {n}")
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    p_prev = np.ones_like(x, dtype=float)
    if n == 0:
        return float(p_prev) if scalar else p_prev
    apb = alpha + beta
    p_cur = 0.5 * ((apb + 2.0) * x + (alpha - beta))
    for k in range(2, n + 1):
        c1 = 2.0 * k * (k + apb) * (2.0 * k + apb - 2.0)
        c2 = (2.0 * k + apb - 1.0) * ((2.0 * k + apb) * (2.0 * k + apb - 2.0) * x + alpha * alpha - beta * beta)
        c3 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * (2.0 * k + apb)
        p_prev, p_cur = p_cur, (c2 * p_cur - c3 * p_prev) / c1
    return float(p_cur) if scalar else p_cur


def jacobi_derivative(n: int, alpha: float, beta: float, x):
    """d/dx J_n^(alpha,beta)(x) = (n + alpha + beta + 1)/2 * J_{n-1}^(alpha+1,beta+1)(x)."""
    if n == 0:
        x = np.asarray(x, dtype=float)
        return 0.0 if x.ndim == 0 else np.zeros_like(x)
    return 0.5 * (n + alpha + beta + 1.0) * jacobi_eval(n - 1, alpha + 1.0, beta + 1.0, x)


def _recurrence_matrix(n: int, alpha: float, beta: float) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal and off-diagonal of the symmetric (Golub-Welsch) matrix."""
    apb = alpha + beta
    k = np.arange(n, dtype=float)
    diag = np.empty(n)
    diag[0] = (beta - alpha) / (apb + 2.0)
    if n > 1:
        kk = k[1:]
        diag[1:] = (beta * beta - alpha * alpha) / ((2.0 * kk + apb) * (2.0 * kk + apb + 2.0))
    kk = np.arange(1, n, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):  # k = 1 slot is replaced below
        off_sq = (4.0 * kk * (kk + alpha) * (kk + beta) * (kk + apb)
                  / ((2.0 * kk + apb) ** 2 * ((2.0 * kk + apb) ** 2 - 1.0)))
    if n > 1:
        # k = 1 in the cancelled limit form, valid even at alpha + beta = -1
        off_sq[0] = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + apb) ** 2 * (3.0 + apb))
    return diag, np.sqrt(off_sq)


@dataclass(frozen=True)
class JacobiRootSet:
    """Sorted roots s_1 < ... < s_n of J_n^(alpha,beta) and r_k = (1-s_k)/(1+s_k).

    All roots lie strictly inside (-1, 1); r is strictly decreasing and for
    alpha = beta satisfies r_k * r_{n+1-k} = 1.
    """

    n: int
    alpha: float
    beta: float
    roots: np.ndarray
    r: np.ndarray


def jacobi_roots(n: int, alpha: float, beta: float) -> JacobiRootSet:
    """Roots as eigenvalues of the recurrence matrix, plus one Newton polish."""
    _check_ab(alpha, beta)
    if n < 1:
        raise ParameterDomainError(f"degree must be >= 1, got {n}")
    diag, off = _recurrence_matrix(n, alpha, beta)
    try:
        s = diag if n == 1 else eigvalsh_tridiagonal(diag, off)
    except Exception as exc:  # pragma: no cover - LAPACK failure is exceptional
        raise NumericError(
            f"tridiagonal eigensolver failed for n={n}, alpha={alpha}, beta={beta}: {exc}"
        ) from exc
    s = np.sort(np.asarray(s, dtype=float))
    deriv = jacobi_derivative(n, alpha, beta, s)
    step = np.where(deriv != 0.0, jacobi_eval(n, alpha, beta, s) / np.where(deriv == 0.0, 1.0, deriv), 0.0)
    s = s - step
    if alpha == beta:
        s = 0.5 * (s - s[::-1])  # enforce the exact s_k = -s_{n+1-k} symmetry
    s = np.sort(s)
    if not ((s > -1.0).all() and (s < 1.0).all() and (np.diff(s) > 0).all() or n == 1):
        raise NumericError(
            f"root set failed validation for n={n}, alpha={alpha}, beta={beta}: {s}"
        )
    r = (1.0 - s) / (1.0 + s)
    s.flags.writeable = False
    r.flags.writeable = False
    return JacobiRootSet(n, float(alpha), float(beta), s, r)


def log_variance_via_jacobi(n: int, alpha: float, beta: float, x: float) -> float:
    """log M_n(x) through the (1 - x^2)^n * J_n((1+x^2)/(1-x^2)) identity.

    Runs the recurrence with running rescaling so degrees well past the plain
    evaluator's overflow point stay representable.  Requires |x| < 1.
    """
    _check_ab(alpha, beta)
    if not abs(x) < 1.0:
        raise ParameterDomainError(f"identity requires |x| < 1, got {x!r}")
    x2 = x * x
    arg = (1.0 + x2) / (1.0 - x2)
    apb = alpha + beta
    log_scale = 0.0
    p_prev, p_cur = 1.0, 0.5 * ((apb + 2.0) * arg + (alpha - beta))
    if n == 0:
        p_cur = 1.0
    for k in range(2, n + 1):
        c1 = 2.0 * k * (k + apb) * (2.0 * k + apb - 2.0)
        c2 = (2.0 * k + apb - 1.0) * ((2.0 * k + apb) * (2.0 * k + apb - 2.0) * arg + alpha * alpha - beta * beta)
        c3 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * (2.0 * k + apb)
        p_prev, p_cur = p_cur, (c2 * p_cur - c3 * p_prev) / c1
        mag = abs(p_cur)
        if mag > 1e120:
            p_prev /= mag
            p_cur /= mag
            log_scale += math.log(mag)
    if p_cur <= 0.0:
        raise NumericError(f"Jacobi value unexpectedly non-positive at arg={arg!r}")
    return n * math.log1p(-x2) + log_scale + math.log(p_cur)


def density_via_roots(rootset: JacobiRootSet, x):
    """f(x) = sqrt(sum_k r_k / (x^2 + r_k)^2); scalar or array x."""
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x2 = np.atleast_1d(x) ** 2
    r = rootset.r
    f = np.sqrt((r[None, :] / (x2[:, None] + r[None, :]) ** 2).sum(axis=1))
    return float(f[0]) if scalar else f.reshape(x.shape)


@dataclass(frozen=True)
class BoundsReport:
    """A lower/upper bracket on the full-line expected root count."""

    n: int
    alpha: float
    beta: float
    lower: float
    upper: float
    method: str  # "jacobi_root" or "ultraspherical_closed_form"
    note: str = ""


def root_bounds(n: int, alpha: float, beta: float) -> BoundsReport:
    """Bracket from the largest Jacobi root s_max."""
    s_max = float(jacobi_roots(n, alpha, beta).roots[-1])
    sqrt_n = math.sqrt(n)
    note = "" if alpha == beta else _ASYMMETRY_NOTE
    return BoundsReport(
        n, float(alpha), float(beta),
        sqrt_n * (1.0 - s_max) / (1.0 + s_max),
        sqrt_n * (1.0 + s_max) / (1.0 - s_max),
        "jacobi_root", note,
    )


def ultraspherical_bounds(n: int, alpha: float) -> BoundsReport:
    """Closed-form bracket for alpha = beta."""
    if not alpha > -1.0:
        raise ParameterDomainError(f"need alpha > -1, got {alpha!r}")
    if n < 1:
        raise ParameterDomainError(f"degree must be >= 1, got {n}")
    if n == 1:
        lower = 2.0 / math.pi  # (n+2a)/(2n+2a-1) is identically 1 at n = 1
    else:
        lower = (2.0 / math.pi) * math.sqrt(n * (n + 2.0 * alpha) / (2.0 * n + 2.0 * alpha - 1.0))
    upper = (2.0 * math.sqrt(n) / math.pi) * (
        1.0 + math.log(2.0) + 0.5 * math.log((n + alpha) / (1.0 + alpha))
    )
    return BoundsReport(n, float(alpha), float(alpha), lower, upper, "ultraspherical_closed_form")


def density_endpoints(n: int, alpha: float, beta: float) -> tuple[float, float]:
    """Closed forms (f(0), f(1)) for the alpha/beta family."""
    _check_ab(alpha, beta)
    f0 = math.sqrt(n * (n + beta) / (1.0 + alpha))
    s = 2.0 * n + alpha + beta
    if n == 1:
        # the factor (n+alpha+beta)/(s-1) is identically 1 here; cancel it so
        # alpha + beta = -1 does not turn into 0/0
        f1 = math.sqrt((1.0 + alpha) * (1.0 + beta)) / s
    else:
        f1 = math.sqrt(n * (n + alpha) * (n + beta) * (n + alpha + beta) / (s - 1.0)) / s
    return f0, f1


def derivative_recurrence_residual(n: int, alpha: float, beta: float, x: float) -> float:
    """Residual of the M_n'/M_n/M_{n-1} recurrence, normalized by M_n(x).

    Checks x*(2n+a+b)*M_n'(x) = n*(2n+a+b+b-a)*M_n(x)
    - 2*(1-x^2)*(n+a)*(n+b)*M_{n-1}(x), with M_n' = 2*B_n taken analytically.
    (The asymmetry term carries the factor n: differentiating
    (1-x^2)^n J_n((1+x^2)/(1-x^2)) and eliminating J_n' leaves n*(b-a), as
    brute-force expansion at small n confirms.)
    """
    _check_ab(alpha, beta)
    if n < 2:
        raise ParameterDomainError(f"recurrence residual needs n >= 2, got {n}")
    if not x > 0:
        raise ParameterDomainError(f"need x > 0, got {x!r}")
    family = alpha_beta_family(alpha, beta)
    log_m_n, s1_n, _ = _log_m_s1_s2(coefficient_table(family, n), x)
    log_m_prev, _, _ = _log_m_s1_s2(coefficient_table(family, n - 1), x)
    s = 2.0 * n + alpha + beta
    ratio_prev = math.exp(log_m_prev - log_m_n)
    residual = (
        x * s * 2.0 * s1_n
        - n * (s + beta - alpha)
        + 2.0 * (1.0 - x * x) * (n + alpha) * (n + beta) * ratio_prev
    )
    return abs(residual)
