"""Infinite-square-well approximation for the quartic anharmonic, double-well
and harmonic oscillators: leading-order energies, second-order corrections
and a finite-difference reference solver."""

from ngas_sqwell.errors import (
    ConfigTooSmall,
    InvalidCoupling,
    NoPhysicalRoot,
    NotConverged,
    OutOfDomain,
    QuadratureFailure,
    UnsupportedPower,
)
from ngas_sqwell.ipt2 import Delta2Result, TruncationPolicy, delta2, e2
from ngas_sqwell.model import LevelIndex, OscillatorSpec, SystemKind, WellParams, c_n, validate
from ngas_sqwell.reference import ReferenceConfig, solve_exact
from ngas_sqwell.spectrum import WellSolution, dwo_ref_energy, lo_energy, sho_asymptotic_ratio

__version__ = "0.1.0"

__all__ = [
    "ConfigTooSmall",
    "Delta2Result",
    "InvalidCoupling",
    "LevelIndex",
    "NoPhysicalRoot",
    "NotConverged",
    "OscillatorSpec",
    "OutOfDomain",
    "QuadratureFailure",
    "ReferenceConfig",
    "SystemKind",
    "TruncationPolicy",
    "UnsupportedPower",
    "WellParams",
    "WellSolution",
    "c_n",
    "delta2",
    "dwo_ref_energy",
    "e2",
    "lo_energy",
    "sho_asymptotic_ratio",
    "solve_exact",
    "validate",
]
