"""Square-well eigenfunctions and their x**2, x**4 matrix elements.

States are ``cos(n pi x / 2a)/sqrt(a)`` for odd ``n`` and
``sin(n pi x / 2a)/sqrt(a)`` for even ``n``.  Products of two such states are
sums of cosines, so every matrix element reduces to

    j_p(z) = integral_{-1}^{1} t**p cos(z t) dt

which has an elementary closed form.  When both states sit in the same well
the arguments are integer multiples of pi and the closed forms collapse to
rational functions of ``n`` and ``m``.

The quadrature routines are deliberately independent of all of this and
exist to check it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ngas_sqwell import quadrature
from ngas_sqwell.errors import OutOfDomain, QuadratureFailure, UnsupportedPower

SUPPORTED_POWERS = (2, 4)
_SERIES_CUTOFF = 3.0
_SERIES_TERMS = 32


@dataclass(frozen=True)
class BasisState:
    n: int
    a: float

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"square-well index must be >= 1, got {self.n}")
        if not self.a > 0:
            raise ValueError(f"half-width must be positive, got {self.a}")

    @property
    def parity(self) -> int:
        return 1 if self.n % 2 else -1

    @property
    def wavenumber(self) -> float:
        return self.n * math.pi / (2.0 * self.a)


def _profile(n, a, x):
    """Wavefunction formula without the wall check (continues past |x| = a)."""
    k = n * np.pi / (2.0 * a)
    return np.where(np.asarray(n) % 2 == 1, np.cos(k * x), np.sin(k * x)) / np.sqrt(a)


def wavefunction(state: BasisState, x):
    """Amplitude of ``state`` at ``x``; raises :class:`OutOfDomain` beyond the walls."""
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > state.a * (1.0 + 1e-15)):
        raise OutOfDomain(f"|x| exceeds the half-width a={state.a}")
    psi = _profile(state.n, state.a, x)
    psi = np.where(np.abs(x) >= state.a, 0.0, psi)
    return float(psi) if psi.ndim == 0 else psi


def _check_power(k):
    if k not in SUPPORTED_POWERS:
        raise UnsupportedPower(f"x**{k} is not supported; use one of {SUPPORTED_POWERS}")


# -- same-width closed forms ------------------------------------------------


def _moment_at_multiple_of_pi(p, j):
    """``j_p(j pi)`` for integer ``j >= 0``."""
    j = np.asarray(j)
    zero = j == 0
    q2 = (np.where(zero, 1, j) * np.pi) ** 2
    sign = np.where(j % 2 == 0, 1.0, -1.0)
    if p == 0:
        val = np.zeros(q2.shape)
    elif p == 2:
        val = 4.0 * sign / q2
    else:
        val = 8.0 * sign * (1.0 / q2 - 6.0 / (q2 * q2))
    return np.where(zero, 2.0 / (p + 1), val)


def x_power_element(k: int, n, m, a: float = 1.0):
    """``<n|x**k|m>`` with both states in the well of half-width ``a``.

    Broadcasts over ``n`` and ``m``.  Opposite-parity pairs give exactly 0.
    """
    _check_power(k)
    n = np.asarray(n)
    m = np.asarray(m)
    same = (n - m) % 2 == 0
    par = np.where(n % 2 == 1, 1.0, -1.0)
    diff = np.abs(n - m) // 2
    tot = (n + m) // 2
    val = 0.5 * (_moment_at_multiple_of_pi(k, diff) + par * _moment_at_multiple_of_pi(k, tot))
    out = np.where(same, val, 0.0) * a**k
    return float(out) if out.ndim == 0 else out


# -- general (mixed-width) closed forms ---------------------------------------


def cosine_moment(p: int, z):
    """``j_p(z) = int_{-1}^{1} t**p cos(z t) dt`` for p in {0, 2, 4}."""
    z = np.abs(np.asarray(z, dtype=float))
    small = z < _SERIES_CUTOFF
    zs = np.where(small, z, 0.0)
    series = np.zeros_like(z)
    term = np.ones_like(z)
    for k in range(_SERIES_TERMS):
        series = series + term * 2.0 / (p + 2 * k + 1)
        term = -term * zs * zs / ((2 * k + 1) * (2 * k + 2))
    zl = np.where(small, 1.0, z)
    s, c = np.sin(zl), np.cos(zl)
    if p == 0:
        closed = 2.0 * s / zl
    elif p == 2:
        closed = 2.0 * (s / zl + 2.0 * c / zl**2 - 2.0 * s / zl**3)
    elif p == 4:
        closed = 2.0 * (
            s / zl + 4.0 * c / zl**2 - 12.0 * s / zl**3 - 24.0 * c / zl**4 + 24.0 * s / zl**5
        )
    else:
        raise UnsupportedPower(f"cosine moment of order {p} not implemented")
    out = np.where(small, series, closed)
    return float(out) if out.ndim == 0 else out


def box_integral(p: int, n, a, m, b, limit):
    """``int_{-limit}^{limit} x**p phi_n(x; a) phi_m(x; b) dx``.

    The two states may live in wells of different widths; the trigonometric
    formulas are used as written over the whole range, including past a
    narrower well's walls.  Broadcasts over every argument.
    """
    n = np.asarray(n)
    m = np.asarray(m)
    alpha = n * np.pi / (2.0 * np.asarray(a, dtype=float))
    beta = m * np.pi / (2.0 * np.asarray(b, dtype=float))
    par = np.where(n % 2 == 1, 1.0, -1.0)
    same = (n - m) % 2 == 0
    L = np.asarray(limit, dtype=float)
    val = 0.5 * (cosine_moment(p, (alpha - beta) * L) + par * cosine_moment(p, (alpha + beta) * L))
    out = np.where(same, val * L ** (p + 1) / np.sqrt(a * b), 0.0)
    return float(out) if out.ndim == 0 else out


# -- quadrature oracle ------------------------------------------------------------


def _profile_ld(n: int, a, x):
    k = n * quadrature.PI / (2 * quadrature.LD(a))
    return (np.cos(k * x) if n % 2 else np.sin(k * x)) / np.sqrt(quadrature.LD(a))


def quadrature_integral(p: int, n: int, a: float, m: int, b: float, limit: float, tol: float):
    """Adaptive Gauss-Kronrod evaluation of the same integral as :func:`box_integral`.

    Raises:
        QuadratureFailure: if the error estimate stays above ``tol``.
    """

    def f(x):
        return x**p * _profile_ld(n, a, x) * _profile_ld(m, b, x)

    # roughly one panel per half-oscillation of the product
    waves = (n / a + m / b) * limit
    value, err = quadrature.gauss_kronrod(f, -limit, limit, tol, initial_panels=max(2, int(waves)))
    if not err <= tol:
        raise QuadratureFailure(f"quadrature error estimate {float(err):.3e} exceeds {tol:.3e}")
    return float(value)


def quadrature_element(k: int, n: int, m: int, a: float = 1.0, tol: float | None = None):
    """Numeric ``<n|x**k|m>`` over ``[-a, a]``, target absolute error ``1e-13 a**k``."""
    _check_power(k)
    if tol is None:
        tol = 1e-13 * a**k
    return quadrature_integral(k, int(n), a, int(m), a, a, tol)
