"""Finite-difference eigenvalues used as the "exact" column of the tables.

``-1/2 d^2/dx^2 + V(x)`` on ``[-L, L]`` with Dirichlet walls becomes a
symmetric tridiagonal matrix under second-order central differences.  Its
lowest eigenvalues are isolated by Sturm-sequence bisection, and the
``O(h**2)`` discretization error is removed by Richardson extrapolation over
successive grid doublings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numba
import numpy as np

from ngas_sqwell._parallel import parallel_map
from ngas_sqwell.errors import ConfigTooSmall, NotConverged
from ngas_sqwell.model import LevelIndex, OscillatorSpec, SystemKind, validate

MIN_POINTS = 1000
BOUNDARY_MARGIN = 25.0
GRID_TOL = 1e-6


@dataclass(frozen=True)
class ReferenceConfig:
    """Box half-width ``L``, base grid intervals ``N`` and Richardson depth."""

    L: float
    N: int = 8000
    refine: int = 2

    def __post_init__(self):
        if not self.L > 0:
            raise ValueError(f"L must be positive, got {self.L}")
        if self.N < MIN_POINTS:
            raise ValueError(f"N must be at least {MIN_POINTS}, got {self.N}")
        if self.refine < 1:
            raise ValueError("refine must be >= 1 so that convergence can be checked")


@dataclass(frozen=True)
class ReferenceSpectrum:
    levels: tuple[LevelIndex, ...]
    energies: np.ndarray
    shifted: np.ndarray | None
    grid_change: np.ndarray
    config: ReferenceConfig

    @property
    def table_values(self) -> np.ndarray:
        """Energies as tabulated: bottom-referenced for the double well."""
        return self.shifted if self.shifted is not None else self.energies


# -- tridiagonal kernels -------------------------------------------------------


@numba.njit(cache=True, nogil=True)
def sturm_count(diag, off, sigma):
    """Number of eigenvalues below ``sigma`` (LDL^T inertia count)."""
    count = 0
    d = diag[0] - sigma
    if d < 0.0:
        count += 1
    for i in range(1, diag.size):
        if d == 0.0:
            d = 1e-300
        d = (diag[i] - sigma) - off[i - 1] * off[i - 1] / d
        if d < 0.0:
            count += 1
    return count


@numba.njit(cache=True, nogil=True)
def bisect_eigenvalue(diag, off, k, lo, hi, rtol):
    """The ``k``-th smallest eigenvalue (0-based) inside ``[lo, hi]``."""
    while hi - lo > rtol * max(1.0, abs(lo), abs(hi)):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if sturm_count(diag, off, mid) > k:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


@numba.njit(cache=True, nogil=True)
def _tridiagonal_solve(diag, off, shift, rhs):
    n = diag.size
    c = np.empty(n)
    x = np.empty(n)
    b0 = diag[0] - shift
    c[0] = off[0] / b0 if n > 1 else 0.0
    x[0] = rhs[0] / b0
    for i in range(1, n):
        denom = diag[i] - shift - off[i - 1] * c[i - 1]
        if denom == 0.0:
            denom = 1e-300
        if i < n - 1:
            c[i] = off[i] / denom
        x[i] = (rhs[i] - off[i - 1] * x[i - 1]) / denom
    for i in range(n - 2, -1, -1):
        x[i] -= c[i] * x[i + 1]
    return x


def gershgorin_bounds(diag, off):
    r = np.zeros_like(diag)
    r[:-1] += np.abs(off)
    r[1:] += np.abs(off)
    return float(np.min(diag - r)), float(np.max(diag + r))


def tridiagonal_eigenvalues(diag, off, ks, rtol=1e-15):
    """Selected eigenvalues of the symmetric tridiagonal matrix (diag, off)."""
    diag = np.ascontiguousarray(diag, dtype=float)
    off = np.ascontiguousarray(off, dtype=float)
    lo, hi = gershgorin_bounds(diag, off)
    return np.array(parallel_map(lambda k: bisect_eigenvalue(diag, off, int(k), lo, hi, rtol), ks))


def eigenvector(diag, off, energy, iterations=3):
    """Normalized eigenvector for an eigenvalue already found, by inverse iteration."""
    diag = np.ascontiguousarray(diag, dtype=float)
    off = np.ascontiguousarray(off, dtype=float)
    # nudge off the eigenvalue so the shifted matrix stays invertible
    shift = energy - 1e-10 * max(1.0, abs(energy))
    v = np.random.default_rng(0).standard_normal(diag.size)
    for _ in range(iterations):
        v = _tridiagonal_solve(diag, off, shift, v)
        v /= np.linalg.norm(v)
    return v


# -- discretization --------------------------------------------------------------


def hamiltonian(spec: OscillatorSpec, L: float, N: int):
    """Grid and tridiagonal Hamiltonian on the ``N - 1`` interior points."""
    h = 2.0 * L / N
    x = -L + h * np.arange(1, N)
    diag = 1.0 / (h * h) + spec.potential(x)
    off = np.full(N - 2, -0.5 / (h * h))
    return x, diag, off


def _coarse_estimate(spec: OscillatorSpec, k_max: int, L: float) -> float:
    _, diag, off = hamiltonian(spec, L, 2000)
    return float(tridiagonal_eigenvalues(diag, off, [k_max], rtol=1e-8)[0])


def default_config(spec: OscillatorSpec, levels) -> ReferenceConfig:
    """Box wide enough that ``V(L)`` clears the top requested level by the margin."""
    validate(spec)
    k_max = max(_as_levels(levels)).n_s
    # generous first guess, then one coarse solve for the actual top level
    guess = 4.0 * (k_max + 1.0) * max(1.0, spec.lam) ** (1.0 / 3.0)
    E_max = _coarse_estimate(spec, k_max, max(8.0, _margin_width(spec, guess)))
    if spec.kind is SystemKind.SHO:
        L = 2.0 * math.sqrt(2.0 * E_max / spec.g)
    else:
        L = max(8.0, 1.5 * (max(E_max, 0.0) / spec.lam) ** 0.25)
    return ReferenceConfig(L=max(L, _margin_width(spec, E_max)))


def _margin_width(spec: OscillatorSpec, E_max: float) -> float:
    """Smallest ``L`` with ``V(L) >= E_max + margin``, padded by 5%."""
    target = E_max + BOUNDARY_MARGIN
    lo, hi = 0.0, 1.0
    while spec.potential(hi) < target or hi < _outer_minimum(spec):
        hi *= 2.0
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if spec.potential(mid) >= target and mid >= _outer_minimum(spec):
            hi = mid
        else:
            lo = mid
    return 1.05 * hi


def _outer_minimum(spec: OscillatorSpec) -> float:
    if spec.kind is SystemKind.DWO:
        return math.sqrt(spec.g / (4.0 * spec.lam))
    return 0.0


def _as_levels(levels) -> tuple[LevelIndex, ...]:
    out = tuple(lv if isinstance(lv, LevelIndex) else LevelIndex(lv) for lv in levels)
    if not out:
        raise ValueError("at least one level is required")
    return out


def richardson(estimates):
    """Richardson table for an ``O(h**2)`` scheme; rows are successive grids.

    Returns the best estimate and its change from the finest entry of the
    previous column.
    """
    column = [np.asarray(e, dtype=float) for e in estimates]
    runner_up = column[-1]
    order = 1
    while len(column) > 1:
        runner_up = column[-1]
        f = 4.0**order
        column = [(f * fine - coarse) / (f - 1.0) for coarse, fine in zip(column, column[1:])]
        order += 1
    return column[0], column[0] - runner_up


def solve_exact(spec: OscillatorSpec, levels, cfg: ReferenceConfig | None = None) -> ReferenceSpectrum:
    """Reference eigenvalues for the requested levels.

    ``levels`` holds :class:`LevelIndex` values or square-well indices ``n``.

    Raises:
        ConfigTooSmall: if ``V(+/-L)`` does not clear the highest computed
            eigenvalue by the required margin.
        NotConverged: if the two best extrapolations disagree beyond
            ``1e-6 * max(1, |E|)``.
    """
    validate(spec)
    levels = _as_levels(levels)
    cfg = cfg or default_config(spec, levels)
    ks = np.arange(max(levels).n_s + 1)
    per_grid = []
    for i in range(cfg.refine + 1):
        _, diag, off = hamiltonian(spec, cfg.L, cfg.N * 2**i)
        per_grid.append(tridiagonal_eigenvalues(diag, off, ks))
    best, change = richardson(per_grid)

    wall = float(spec.potential(cfg.L))
    if wall - best[-1] < BOUNDARY_MARGIN:
        raise ConfigTooSmall(
            f"V(L)={wall:.3g} clears the top eigenvalue {best[-1]:.6g} by less than {BOUNDARY_MARGIN}"
        )
    scale = np.maximum(1.0, np.abs(best))
    bad = np.abs(change) > GRID_TOL * scale
    picks = np.array([lv.n_s for lv in levels])
    energies = best[picks]
    shifted = None
    if spec.kind is SystemKind.DWO:
        shifted = energies + spec.g**2 / (16.0 * spec.lam)
    result = ReferenceSpectrum(levels, energies, shifted, change[picks], cfg)
    if np.any(bad[picks]):
        raise NotConverged(f"grid refinement changed eigenvalues by up to {np.max(np.abs(change)):.2e}", result)
    return result
