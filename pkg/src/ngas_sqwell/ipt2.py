"""Second-order correction on top of the optimized square well.

The unperturbed Hamiltonian for level ``n`` is the square well optimized for
that level; the perturbation is ``H' = V(x) - h``.  Its diagonal element
vanishes by construction, so the first correction is second order:

    delta2 = sum_{m != n} <n|H'|m>**2 / (E_n - E_m)

Two choices of intermediate states are supported.

``"own"`` (default)
    each intermediate level ``m`` sits in the well optimized for *its own*
    level, with unperturbed energy ``E_m`` equal to its leading-order
    energy.  Matrix elements are integrated over the width of level ``n``.
    This is the construction behind the published tables.

``"shared"``
    every intermediate state sits in level ``n``'s well, so the
    denominators are ``(n**2 - m**2) pi**2 u / 8``.

Opposite-parity states never contribute, so only ``m = n +/- 2, 4, ...`` are
summed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ngas_sqwell import matel
from ngas_sqwell.errors import NotConverged
from ngas_sqwell.model import OscillatorSpec, SystemKind, validate
from ngas_sqwell.spectrum import WellSolution, _as_level, lo_energy, solve_levels

INTERMEDIATE_STATES = ("own", "shared")


@dataclass(frozen=True)
class TruncationPolicy:
    """Stop once a whole block of terms is below ``tol * |partial sum|``."""

    tol: float = 1e-12
    m_max: int = 200_000
    block: int = 512

    def __post_init__(self):
        if self.tol < 0:
            raise ValueError("tol must be non-negative")
        if self.m_max < 1 or self.block < 1:
            raise ValueError("m_max and block must be positive")


@dataclass(frozen=True)
class PerturbationOperator:
    """``H' = +/- g x**2/2 + lam x**4 - h`` for the level being corrected."""

    kind: SystemKind
    g: float
    lam: float
    h: float

    @classmethod
    def for_level(cls, spec: OscillatorSpec, well: WellSolution) -> PerturbationOperator:
        return cls(spec.kind, spec.g, spec.lam, well.params.h)

    @property
    def quadratic(self) -> float:
        return SystemKind(self.kind).quadratic_sign * 0.5 * self.g

    def __call__(self, x):
        x = np.asarray(x)
        x2 = x * x
        return self.quadratic * x2 + self.lam * x2 * x2 - self.h


@dataclass(frozen=True)
class Delta2Result:
    E_lo: float
    delta2: float
    m_last: int
    n_terms: int
    achieved_tol: float
    converged: bool

    @property
    def E2(self) -> float:
        return self.E_lo + self.delta2


def hprime_element(op: PerturbationOperator, well: WellSolution, n, m, ket_a=None):
    """``<n|H'|m>`` integrated over the width of ``well``.

    The bra is level ``n`` of ``well``.  The ket is level ``m`` of the same
    well unless ``ket_a`` gives it a half-width of its own.  Broadcasts over
    ``m`` and ``ket_a``.
    """
    a = well.params.a
    m = np.asarray(m)
    if ket_a is None:
        out = (
            op.quadratic * matel.x_power_element(2, n, m, a)
            + op.lam * matel.x_power_element(4, n, m, a)
            - op.h * (m == n)
        )
    else:
        b = np.asarray(ket_a, dtype=float)
        out = (
            op.quadratic * matel.box_integral(2, n, a, m, b, a)
            + op.lam * matel.box_integral(4, n, a, m, b, a)
            - op.h * matel.box_integral(0, n, a, m, b, a)
        )
    out = np.asarray(out, dtype=float)
    return float(out) if out.ndim == 0 else out


def _terms(spec, well, op, ms, intermediate, eta):
    n = well.level.n
    if intermediate == "own":
        u_m, _, E_m = solve_levels(spec, ms)
        el = hprime_element(op, well, n, ms, ket_a=1.0 / np.sqrt(u_m))
        den = well.E_lo - E_m
    else:
        el = hprime_element(op, well, n, ms)
        den = (n * n - ms * ms) * np.pi**2 * well.params.u / 8.0
    return eta * eta * el * el / den


def delta2(
    spec: OscillatorSpec,
    level,
    trunc: TruncationPolicy | None = None,
    intermediate: str = "own",
    eta: float = 1.0,
    strict: bool = False,
) -> Delta2Result:
    """Second-order correction for one level.

    ``level`` is a :class:`LevelIndex` or square-well index ``n``.  ``eta``
    scales the perturbation (the result scales as ``eta**2``).

    Raises:
        NotConverged: only when ``strict`` is set and ``trunc.m_max`` is
            reached first; otherwise the result carries ``converged=False``.
    """
    validate(spec)
    if intermediate not in INTERMEDIATE_STATES:
        raise ValueError(f"intermediate must be one of {INTERMEDIATE_STATES}, got {intermediate!r}")
    trunc = trunc or TruncationPolicy()
    well = lo_energy(spec, _as_level(level))
    op = PerturbationOperator.for_level(spec, well)
    n = well.level.n

    total = 0.0
    n_terms = 0
    m_last = 0
    achieved = math.inf
    converged = False
    start = 2 - n % 2  # first m with the parity of n
    while start <= trunc.m_max:
        stop = min(start + 2 * trunc.block, trunc.m_max + 1)
        ms = np.arange(start, stop, 2)
        ms = ms[ms != n]
        start = stop
        if ms.size == 0:
            continue
        t = _terms(spec, well, op, ms, intermediate, eta)
        total += math.fsum(t)
        n_terms += ms.size
        m_last = int(ms[-1])
        biggest = float(np.max(np.abs(t)))
        # convergence is only judged on blocks above level n
        if m_last > n:
            achieved = biggest / abs(total) if total != 0 else (0.0 if biggest == 0 else math.inf)
            if achieved < trunc.tol or total == 0:
                converged = True
                break
    result = Delta2Result(well.E_lo, total, m_last, n_terms, achieved, converged)
    if strict and not converged:
        raise NotConverged(
            f"second-order sum for n={n} stopped at m={m_last} with relative term {achieved:.2e}",
            result,
        )
    return result


def e2(spec: OscillatorSpec, level, **kwargs) -> float:
    """``E_lo + delta2``; raises :class:`NotConverged` if the sum did not converge."""
    kwargs.setdefault("strict", True)
    return delta2(spec, level, **kwargs).E2
