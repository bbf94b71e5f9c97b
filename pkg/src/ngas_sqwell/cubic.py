"""Positive root of the variational cubic for ``u = 1/a**2``.

Minimizing the square-well energy over the width leads to a depressed cubic

    u**3 - P u - Q = 0      (anharmonic and harmonic oscillators)
    u**3 + P u - Q = 0      (double well)

with ``P, Q >= 0``.  Both shapes have exactly one positive root.  For the
anharmonic cubic Cardano's radical form only stays real while
``rho = 4 P**3 / (27 Q**2) <= 1``; past that point the three roots are real
and the largest one is taken from the trigonometric form, which joins the
radical form continuously at ``rho = 1``.

All functions broadcast over numpy arrays.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ngas_sqwell.errors import NoPhysicalRoot
from ngas_sqwell.model import OscillatorSpec, SystemKind, c_n, quartic_coefficient

# Below this Q the harmonic limit u = sqrt(P) is exact to double precision.
Q_NEGLIGIBLE = 1e-30
NEWTON_STEPS = 2


@dataclass(frozen=True)
class CubicCoefficients:
    P: float
    Q: float
    rho: float


def _scalar_or_array(x):
    x = np.asarray(x, dtype=float)
    return float(x) if x.ndim == 0 else x


def _coefficient_arrays(g, lam, n):
    n = np.asarray(n, dtype=float)
    nn = n * n * np.pi**2
    P = (4.0 / 3.0) * abs(g) * c_n(n) / nn
    Q = 16.0 * lam / nn * quartic_coefficient(n)
    return P, Q


def discriminant_ratio(P, Q):
    """``rho = 4 P**3 / (27 Q**2)``, with ``+inf`` where ``Q == 0``."""
    P = np.asarray(P, dtype=float)
    Q = np.asarray(Q, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        rho = np.where(Q > 0, 4.0 * P**3 / (27.0 * np.where(Q > 0, Q, 1.0) ** 2), np.inf)
    return _scalar_or_array(rho)


def coefficients(spec: OscillatorSpec, n) -> CubicCoefficients:
    """Cubic coefficients for square-well level ``n`` (``n`` may be an array)."""
    P, Q = _coefficient_arrays(spec.g, spec.lam, n)
    return CubicCoefficients(_scalar_or_array(P), _scalar_or_array(Q), discriminant_ratio(P, Q))


def residual(kind: SystemKind, coeffs: CubicCoefficients, u):
    """Left-hand side of the cubic evaluated at ``u``."""
    u = np.asarray(u, dtype=float)
    sign = SystemKind(kind).quadratic_sign
    return _scalar_or_array(u**3 - sign * coeffs.P * u - coeffs.Q)


def cardano_root(P, Q):
    """Largest root of ``u**3 - P u - Q`` by Cardano's radicals.

    For ``rho > 1`` the square root turns imaginary; the principal complex
    cube roots are then used and the (real) sum is returned, which is the
    analytic continuation of the ``rho <= 1`` branch.
    """
    P = np.asarray(P, dtype=float)
    Q = np.asarray(Q, dtype=float)
    rho = np.asarray(discriminant_ratio(P, Q))
    s = np.sqrt((1.0 - rho).astype(complex))
    scale = np.cbrt(Q / 2.0)
    # principal complex cube roots; for rho <= 1 these are the real ones
    u = scale * ((1.0 + s) ** (1.0 / 3.0) + (1.0 - s) ** (1.0 / 3.0))
    return _scalar_or_array(u.real)


def trigonometric_root(P, Q):
    """Largest root of ``u**3 - P u - Q`` in trigonometric form.

    Natural for ``rho >= 1`` (three real roots); below that the hyperbolic
    continuation ``cosh(arccosh(.)/3)`` is used so the formula stays valid.
    """
    P = np.asarray(P, dtype=float)
    Q = np.asarray(Q, dtype=float)
    r = np.sqrt(P / 3.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        arg = Q / (2.0 * r**3)
        u = np.where(
            arg <= 1.0,
            2.0 * r * np.cos(np.arccos(np.clip(arg, -1.0, 1.0)) / 3.0),
            2.0 * r * np.cosh(np.arccosh(np.maximum(arg, 1.0)) / 3.0),
        )
    return _scalar_or_array(u)


def _aho_root(P, Q):
    rho = np.asarray(discriminant_ratio(P, Q))
    one_real = rho <= 1.0
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.sqrt(np.where(one_real, 1.0 - rho, 0.0))
        radical = np.cbrt(Q / 2.0) * (np.cbrt(1.0 + s) + np.cbrt(1.0 - s))
        trig = trigonometric_root(P, np.where(one_real, P, Q))
    u = np.where(one_real, radical, trig)
    return np.where(Q < Q_NEGLIGIBLE, np.sqrt(P), u)


def _dwo_root(P, Q):
    rho = np.asarray(discriminant_ratio(P, Q))
    with np.errstate(invalid="ignore"):
        t = np.sqrt(rho + 1.0)
        A = np.cbrt(t + 1.0)
        B = np.cbrt(t - 1.0)
        # A - B written as (A**3 - B**3)/(A**2 + AB + B**2) to dodge cancellation at large rho
        u = np.cbrt(Q / 2.0) * 2.0 / (A * A + A * B + B * B)
    return np.where(np.isfinite(rho), u, 0.0)


def solve_positive_root(kind: SystemKind, coeffs: CubicCoefficients):
    """The unique positive root of the kind-appropriate cubic.

    Raises:
        NoPhysicalRoot: if ``P == Q == 0`` anywhere (free particle).
    """
    kind = SystemKind(kind)
    P = np.asarray(coeffs.P, dtype=float)
    Q = np.asarray(coeffs.Q, dtype=float)
    if np.any((P <= 0) & (Q <= 0)):
        raise NoPhysicalRoot("P = Q = 0: the cubic has no positive root")
    if kind is SystemKind.SHO:
        return _scalar_or_array(np.sqrt(P))
    if kind is SystemKind.DWO:
        if np.any(Q <= 0):
            raise NoPhysicalRoot("double-well cubic needs Q > 0")
        u = _dwo_root(P, Q)
    else:
        u = _aho_root(P, Q)
    sign = kind.quadratic_sign
    for _ in range(NEWTON_STEPS):
        u = u - (u**3 - sign * P * u - Q) / (3.0 * u * u - sign * P)
    return _scalar_or_array(u)


def bisection_root(kind: SystemKind, coeffs: CubicCoefficients, rtol: float = 1e-15) -> float:
    """Slow bracketing root finder, kept as an oracle for the closed forms."""
    sign = SystemKind(kind).quadratic_sign
    P, Q = float(coeffs.P), float(coeffs.Q)
    f = lambda u: u**3 - sign * P * u - Q  # noqa: E731
    lo, hi = 0.0, 1.0 + np.sqrt(P) + np.cbrt(Q)
    while f(hi) <= 0:
        hi *= 2.0
    while hi - lo > rtol * hi:
        mid = 0.5 * (lo + hi)
        if f(mid) > 0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)
