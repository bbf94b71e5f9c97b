"""Domain types and the combinatorial constants of the square-well basis.

Level indices come in two conventions.  Oscillator tables count from zero
(``n_s``); the square-well formulas count from one (``n = n_s + 1``).  Every
public entry point that talks to users takes ``n_s``; everything below the
surface works with ``n``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from ngas_sqwell.errors import InvalidCoupling


class SystemKind(str, enum.Enum):
    AHO = "aho"
    DWO = "dwo"
    SHO = "sho"

    @property
    def quadratic_sign(self) -> int:
        """Sign in front of ``g x**2 / 2``; the double well flips it."""
        return -1 if self is SystemKind.DWO else 1


@dataclass(frozen=True)
class OscillatorSpec:
    """Dimensionless oscillator ``p**2/2 +/- g x**2/2 + lam x**4``."""

    kind: SystemKind
    g: float = 1.0
    lam: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", SystemKind(self.kind))

    def potential(self, x):
        x = np.asarray(x, dtype=float)
        x2 = x * x
        return self.kind.quadratic_sign * 0.5 * self.g * x2 + self.lam * x2 * x2


@dataclass(frozen=True, order=True)
class LevelIndex:
    """Square-well level ``n >= 1``; the oscillator label is ``n - 1``."""

    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"square-well index must be an integer >= 1, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))

    @classmethod
    def from_ns(cls, n_s: int) -> LevelIndex:
        return cls(int(n_s) + 1)

    @property
    def n_s(self) -> int:
        return self.n - 1

    @property
    def parity(self) -> int:
        """+1 for cosine (even) states, -1 for sine (odd) states."""
        return 1 if self.n % 2 else -1


@dataclass(frozen=True)
class WellParams:
    """Optimized square well: half-width ``a``, depth ``h`` and ``u = 1/a**2``."""

    u: float
    h: float

    def __post_init__(self):
        if not self.u > 0:
            raise ValueError(f"u = 1/a**2 must be positive, got {self.u!r}")

    @property
    def a(self) -> float:
        return 1.0 / math.sqrt(self.u)

    @classmethod
    def from_width(cls, a: float, h: float) -> WellParams:
        if not a > 0:
            raise ValueError(f"half-width must be positive, got {a!r}")
        return cls(u=1.0 / (a * a), h=h)


def validate(spec: OscillatorSpec) -> OscillatorSpec:
    """Return ``spec`` unchanged, or raise :class:`InvalidCoupling`."""
    g, lam = spec.g, spec.lam
    if not (math.isfinite(g) and math.isfinite(lam)):
        raise InvalidCoupling(f"couplings must be finite (g={g!r}, lambda={lam!r})")
    if not g > 0:
        raise InvalidCoupling(f"{spec.kind.value}: need g > 0, got g={g!r}")
    if spec.kind is SystemKind.SHO:
        if lam != 0:
            raise InvalidCoupling(f"sho: lambda must be 0, got {lam!r}")
    elif not lam > 0:
        # the double well with lam = 0 has no ground state at all
        raise InvalidCoupling(f"{spec.kind.value}: need lambda > 0, got lambda={lam!r}")
    return spec


def c_n(n):
    """``1 - 6/(n**2 pi**2)``; accepts scalars or integer arrays."""
    n = np.asarray(n, dtype=float)
    out = 1.0 - 6.0 / (n * n * np.pi**2)
    return float(out) if out.ndim == 0 else out


def quartic_coefficient(n):
    """``<n|x**4|n>`` in a unit well: ``1/5 - 4 c_n/(n**2 pi**2)``."""
    n = np.asarray(n, dtype=float)
    nn = n * n * np.pi**2
    out = 0.2 - 4.0 * (1.0 - 6.0 / nn) / nn
    return float(out) if out.ndim == 0 else out
