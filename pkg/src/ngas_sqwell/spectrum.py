"""Leading-order energies from the optimized infinite square well.

For each level the width is fixed by minimizing the square-well average of
the oscillator Hamiltonian, and the depth by demanding that the well's own
eigenvalue reproduces that average.  The double well reuses every
anharmonic formula with ``g -> -g``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ngas_sqwell import cubic
from ngas_sqwell.model import (
    LevelIndex,
    OscillatorSpec,
    SystemKind,
    WellParams,
    c_n,
    quartic_coefficient,
    validate,
)


@dataclass(frozen=True)
class WellSolution:
    level: LevelIndex
    params: WellParams
    E_lo: float


def _as_level(level) -> LevelIndex:
    return level if isinstance(level, LevelIndex) else LevelIndex(level)


def expectation_H(spec: OscillatorSpec, n, u):
    """``<n|H|n>`` in a square well with ``u = 1/a**2``.

    Broadcasts over ``n`` and ``u``.
    """
    n = np.asarray(n, dtype=float)
    u = np.asarray(u, dtype=float)
    nn = n * n * np.pi**2
    sg = spec.kind.quadratic_sign * spec.g
    out = nn / 8.0 * u + sg * c_n(n) / 6.0 / u + spec.lam * quartic_coefficient(n) / (u * u)
    return float(out) if out.ndim == 0 else out


def _closed_forms(spec: OscillatorSpec, n, u):
    """(E_lo, h) from the stationarity-reduced formulas."""
    n = np.asarray(n, dtype=float)
    nn = n * n * np.pi**2
    if spec.kind is SystemKind.SHO:
        h = spec.g * c_n(n) / 6.0 / u
        return nn / 8.0 * u + h, h
    sg = spec.kind.quadratic_sign * spec.g
    E = 3.0 * nn / 16.0 * u + sg * c_n(n) / 12.0 / u
    h = nn / 16.0 * u + sg * c_n(n) / 12.0 / u
    return E, h


def solve_levels(spec: OscillatorSpec, n):
    """Vectorized ``(u, h, E_lo)`` for an array of square-well indices."""
    n = np.asarray(n)
    u = np.asarray(cubic.solve_positive_root(spec.kind, cubic.coefficients(spec, n)), dtype=float)
    E, h = _closed_forms(spec, n, u)
    return u, np.asarray(h, dtype=float), np.asarray(E, dtype=float)


def lo_energy(spec: OscillatorSpec, level) -> WellSolution:
    """Optimized well and leading-order energy for one level.

    ``level`` is a :class:`LevelIndex` or a square-well index ``n >= 1``.
    """
    validate(spec)
    level = _as_level(level)
    u, h, E = solve_levels(spec, level.n)
    return WellSolution(level=level, params=WellParams(u=float(u), h=float(h)), E_lo=float(E))


def depth(spec: OscillatorSpec, n, u):
    """Well depth ``h`` that makes the well eigenvalue equal ``<H>``."""
    h = _closed_forms(spec, n, np.asarray(u, dtype=float))[1]
    h = np.asarray(h)
    return float(h) if h.ndim == 0 else h


def dwo_ref_energy(E_lo, lam, g=1.0):
    """Double-well energy measured from the bottom of the wells.

    The minima of ``-g x**2/2 + lam x**4`` sit at ``-g**2/(16 lam)``.
    """
    if not lam > 0:
        raise ValueError(f"lambda must be positive, got {lam!r}")
    return E_lo + g * g / (16.0 * lam)


def sho_asymptotic_ratio() -> float:
    """Large-level limit of ``E_lo / (n_s + 1/2)`` for the harmonic oscillator."""
    return math.pi / (2.0 * math.sqrt(3.0))
