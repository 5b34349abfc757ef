"""Bound-state tower of the square-well-regularized inverse-square potential.

For ``k R << 1`` the matching condition fixes the bound-state momenta to

    k_n = (c / r0) * exp[(B - (n + 1/2) pi) / nu],   B = phi0 + arg Gamma(1 + i nu),

for every integer ``n``. The levels form a geometric sequence with ratio
``exp(-pi / nu)`` that accumulates at zero energy and is unbounded below. The
cutoff radius ``R`` has dropped out; only the zero-energy phase ``phi0`` and
the scale ``r0`` remain. ``B`` plays the role of the phase that selects a
self-adjoint extension of the bare ``-alpha/r^2`` Hamiltonian.

The amplitude ``c`` is 2. It follows from matching ``r^(1/2) K_{i nu}(k r)``,
whose small-``r`` form is ``r^(1/2) sin(nu log(k r / 2) - arg Gamma(1 + i nu))``,
to the zero-energy exterior solution ``r^(1/2) cos(nu log(r / r0) + phi0)``;
the shooting oracle reproduces it to better than 1e-7 in the ``k R <= 1e-3``
regime. ``prefactor`` is exposed so other normalisations of ``c`` can be
compared; ``PREFACTOR_HALF`` (``c = 1/2``) puts every level off by a factor 4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, LevelRangeError
from .specialfn import arg_gamma_one_plus_i_nu

__all__ = [
    "PREFACTOR_MATCHED",
    "PREFACTOR_HALF",
    "SpectrumLevel",
    "SpectrumParams",
    "bound_state_k",
    "case_phase_B",
    "levels",
    "spectrum_ratio",
]

PREFACTOR_MATCHED = 2.0
PREFACTOR_HALF = 0.5

_LOG_MAX = math.log(1.7976931348623157e308)
_LOG_TINY = math.log(2.2250738585072014e-308)


@dataclass(frozen=True)
class SpectrumParams:
    """Inputs of the spectrum; units with ``r0 = 1`` and ``2m = 1`` by default."""

    nu: float
    phi0: float
    r0: float = 1.0
    mass2: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.nu) and self.nu > 0):
            raise DomainError(f"nu must be finite and > 0, got {self.nu}")
        if not math.isfinite(self.phi0):
            raise DomainError(f"phi0 must be finite, got {self.phi0}")
        if not (math.isfinite(self.r0) and self.r0 > 0):
            raise DomainError(f"r0 must be finite and > 0, got {self.r0}")
        if not (math.isfinite(self.mass2) and self.mass2 > 0):
            raise DomainError(f"mass2 (= 2m) must be finite and > 0, got {self.mass2}")


@dataclass(frozen=True)
class SpectrumLevel:
    n: int
    k: float
    E_B: float


def case_phase_B(params: SpectrumParams) -> float:
    """``B = phi0 + arg Gamma(1 + i nu)``, with no reduction modulo 2 pi."""
    return params.phi0 + arg_gamma_one_plus_i_nu(params.nu)


def spectrum_ratio(params: SpectrumParams) -> float:
    """``k_{n+1} / k_n = exp(-pi / nu)``."""
    return math.exp(-math.pi / params.nu)


def _log_k(params: SpectrumParams, n: int, prefactor: float) -> float:
    return (math.log(prefactor / params.r0)
            + (case_phase_B(params) - (n + 0.5) * math.pi) / params.nu)


def bound_state_k(params: SpectrumParams, n: int, prefactor: float = PREFACTOR_MATCHED) -> SpectrumLevel:
    """Level ``n`` of the tower, valid as physics only where ``k R << 1``.

    Raises :class:`LevelRangeError` when ``k`` or ``E_B = k**2 / (2m)``
    overflows (large negative ``n``) or ``k`` underflows (large positive
    ``n``); the error carries the last representable level on that side.
    """
    if int(n) != n:
        raise DomainError(f"level index must be an integer, got {n}")
    n = int(n)
    if not prefactor > 0:
        raise DomainError(f"prefactor must be > 0, got {prefactor}")
    log_k = _log_k(params, n, prefactor)
    log_e = 2.0 * log_k - math.log(params.mass2)
    # log k is affine in n with slope -pi/nu
    slope = math.pi / params.nu
    if log_e > _LOG_MAX or log_k > _LOG_MAX:
        excess = max(log_e - _LOG_MAX, 2.0 * (log_k - _LOG_MAX))
        max_level = n + math.ceil(excess / (2.0 * slope))
        raise LevelRangeError(
            f"level n={n} overflows (log E_B = {log_e:.1f}); "
            f"lowest representable level is n={max_level}", max_level,
        )
    if log_k < _LOG_TINY or 2.0 * log_k - math.log(params.mass2) < _LOG_TINY:
        deficit = max(_LOG_TINY - log_k, 0.5 * (_LOG_TINY - log_e))
        max_level = n - math.ceil(deficit / slope)
        raise LevelRangeError(
            f"level n={n} underflows (log k = {log_k:.1f}); "
            f"highest representable level is n={max_level}", max_level,
        )
    k = math.exp(log_k)
    return SpectrumLevel(n, k, k * k / params.mass2)


def levels(params: SpectrumParams, n_min: int, n_max: int,
           prefactor: float = PREFACTOR_MATCHED) -> list[SpectrumLevel]:
    """Levels ``n_min .. n_max`` inclusive, in order of increasing ``n``."""
    if n_max < n_min:
        raise DomainError(f"empty level range [{n_min}, {n_max}]")
    return [bound_state_k(params, n, prefactor) for n in range(n_min, n_max + 1)]
