"""Direct numerical checks of the analytic results.

Everything here works from the radial equation itself,

    psi'' = (2m V(r) - E2) psi,
    2m V(r) = -beta**2 / R**2           for r < R,
            = -(nu**2 + 1/4) / r**2     for r > R,

with ``E2 = 2mE`` (``-k**2`` for a bound state). Lengths are in units of
``r0``. The interior is integrated with fixed-step RK4 from ``r_min = 1e-6 R``
using the regular solution as starting data; the exterior bound-state solution
is taken directly as ``r^(1/2) K_{i nu}(k r)`` because inward integration of
the decaying solution is unstable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .errors import BracketError, DomainError, SingularInputError
from .flow import FlowParams, omega_of_x
from .specialfn import (
    arg_gamma_one_plus_i_nu,
    bessel_k_imag_order,
    bessel_k_imag_order_derivative,
)

__all__ = [
    "PotentialSpec",
    "WaveSolution",
    "closed_zero_energy",
    "find_bound_states",
    "integrate_radial",
    "matching_function",
    "matching_residual",
    "shoot_bound_state",
    "small_r_phase",
]

INTERIOR = "interior"
EXTERIOR = "exterior"

R_MIN_FRACTION = 1e-6


@dataclass(frozen=True)
class PotentialSpec:
    """Square well of depth ``beta**2 / R**2`` inside an attractive ``1/r**2`` tail."""

    nu: float
    beta: float
    R: float

    def __post_init__(self):
        if not (math.isfinite(self.nu) and self.nu > 0):
            raise DomainError(f"nu must be finite and > 0, got {self.nu}")
        if not (math.isfinite(self.beta) and self.beta >= 0):
            raise DomainError(f"beta must be finite and >= 0, got {self.beta}")
        if not (math.isfinite(self.R) and self.R > 0):
            raise DomainError(f"R must be finite and > 0, got {self.R}")

    @property
    def tail_strength(self) -> float:
        """``2m alpha = nu**2 + 1/4``."""
        return self.nu**2 + 0.25

    @property
    def K0(self) -> float:
        """Zero-energy interior wavenumber ``beta / R``."""
        return self.beta / self.R

    def interior_K2(self, energy_k2: float) -> float:
        """``K**2 = beta**2 / R**2 + E2``; equals ``beta**2/R**2 - k**2`` for bound states."""
        return self.K0**2 + energy_k2

    @classmethod
    def from_flow(cls, nu: float, phi0: float, R: float, n: int = 1) -> "PotentialSpec":
        """Well depth re-solved from the matching condition at ``x = R / r0``."""
        from .riemann import beta_n

        om = omega_of_x(FlowParams(nu, phi0, n), math.log(R))
        return cls(nu, beta_n(om, n).beta, R)


@dataclass
class WaveSolution:
    """Sampled reduced radial wavefunction; ``normalization`` is the interior amplitude."""

    r: np.ndarray
    psi: np.ndarray
    dpsi: np.ndarray
    region: np.ndarray
    normalization: float = 1.0


def _regular_start(K2: float, r: float) -> tuple[float, float]:
    """``(psi, psi')`` of the regular interior solution at ``r``."""
    if K2 > 0:
        K = math.sqrt(K2)
        return math.sin(K * r), K * math.cos(K * r)
    if K2 < 0:
        kap = math.sqrt(-K2)
        return math.sinh(kap * r), kap * math.cosh(kap * r)
    return r, 1.0


def _rk4(q, r: np.ndarray, y0: tuple[float, float]) -> tuple[np.ndarray, np.ndarray]:
    """RK4 for psi'' = q(r) psi on the (possibly non-uniform) grid ``r``."""
    psi = np.empty_like(r)
    dpsi = np.empty_like(r)
    p, d = y0
    psi[0], dpsi[0] = p, d
    for i in range(len(r) - 1):
        h = r[i + 1] - r[i]
        rm = r[i] + 0.5 * h
        qa, qm, qb = q(r[i]), q(rm), q(r[i + 1])
        k1p, k1d = d, qa * p
        k2p, k2d = d + 0.5 * h * k1d, qm * (p + 0.5 * h * k1p)
        k3p, k3d = d + 0.5 * h * k2d, qm * (p + 0.5 * h * k2p)
        k4p, k4d = d + h * k3d, qb * (p + h * k3p)
        p = p + h / 6.0 * (k1p + 2 * k2p + 2 * k3p + k4p)
        d = d + h / 6.0 * (k1d + 2 * k2d + 2 * k3d + k4d)
        psi[i + 1], dpsi[i + 1] = p, d
    return psi, dpsi


def integrate_radial(
    spec: PotentialSpec,
    energy_k2: float,
    r_max: float,
    steps: int | tuple[int, int] = 2000,
    r_min: float | None = None,
) -> WaveSolution:
    """Integrate the radial equation outward from ``r_min`` to ``r_max``.

    Parameters
    ----------
    spec : PotentialSpec
    energy_k2 : float
        ``2mE``; negative for bound states.
    r_max : float
        Outer radius. If ``r_max <= R`` only the interior is integrated.
    steps : int or (int, int)
        RK4 steps in the interior (uniform in ``r``) and exterior (uniform in
        ``log r``). A single int is used for both.
    r_min : float, optional
        Start radius, default ``1e-6 R``.

    Returns
    -------
    WaveSolution
        Samples including a node exactly at ``R``, so no step straddles the
        potential discontinuity. The interior starts with unit amplitude.
    """
    n_in, n_out = (steps, steps) if isinstance(steps, int) else steps
    R = spec.R
    if r_min is None:
        r_min = R_MIN_FRACTION * R
    if not 0 < r_min < R:
        raise DomainError(f"need 0 < r_min < R, got r_min={r_min}, R={R}")
    if not r_max > r_min:
        raise DomainError(f"need r_max > r_min, got {r_max}")

    K2 = spec.interior_K2(energy_k2)
    r_in = np.linspace(r_min, min(R, r_max), n_in + 1)
    psi, dpsi = _rk4(lambda r: -K2, r_in, _regular_start(K2, r_min))
    if r_max <= R:
        return WaveSolution(r_in, psi, dpsi, np.full(len(r_in), INTERIOR))

    lam = spec.tail_strength
    r_out = np.geomspace(R, r_max, n_out + 1)
    psi_o, dpsi_o = _rk4(lambda r: -lam / (r * r) - energy_k2, r_out, (psi[-1], dpsi[-1]))
    r = np.concatenate([r_in, r_out[1:]])
    region = np.array([INTERIOR] * len(r_in) + [EXTERIOR] * (len(r_out) - 1))
    return WaveSolution(r, np.concatenate([psi, psi_o[1:]]),
                        np.concatenate([dpsi, dpsi_o[1:]]), region)


def closed_zero_energy(spec: PotentialSpec, phi0: float, r, r0: float = 1.0, derivative: bool = False):
    """Zero-energy solution with unit exterior amplitude.

    Exterior: ``(r/r0)^(1/2) cos(nu ln(r/r0) + phi0)``. Interior: the
    ``sin(K0 r)`` solution scaled to agree with the exterior value at ``R``.
    The two pieces also share a derivative at ``R`` exactly when ``beta``
    solves the matching condition at ``x = R / r0``.
    """
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("closed_zero_energy requires r > 0")
    nu, R, K0 = spec.nu, spec.R, spec.K0
    phase = nu * np.log(r / r0) + phi0
    amp = math.cos(nu * math.log(R / r0) + phi0) * math.sqrt(R / r0) / math.sin(K0 * R)
    inside = r < R
    if not derivative:
        ext = np.sqrt(r / r0) * np.cos(phase)
        inn = amp * np.sin(K0 * r)
    else:
        ext = (0.5 * np.cos(phase) - nu * np.sin(phase)) / np.sqrt(r * r0)
        inn = amp * K0 * np.cos(K0 * r)
    out = np.where(inside, inn, ext)
    return float(out) if out.ndim == 0 else out


def matching_residual(nu: float, phi0: float, ln_x: float, beta: float) -> float:
    """Signed ``beta cot beta - [1/2 - nu tan(nu ln x + phi0)]``."""
    om = omega_of_x(FlowParams(nu, phi0, 1), ln_x)
    if om.is_singular:
        raise SingularInputError(f"ln_x={ln_x} is a singular point ({om.kind})")
    lhs = 1.0 if beta == 0 else beta / math.tan(beta)
    return lhs - (0.5 - nu * math.tan(nu * ln_x + phi0))


def _exterior_bound(nu: float, k: float, R: float) -> tuple[float, float]:
    """``(psi, psi')`` of ``r^(1/2) K_{i nu}(k r)`` at ``r = R``."""
    z = k * R
    kv = bessel_k_imag_order(nu, z)
    dkv = bessel_k_imag_order_derivative(nu, z)
    sr = math.sqrt(R)
    return sr * kv, 0.5 * kv / sr + sr * k * dkv


def _interior_at_R(spec: PotentialSpec, k: float, steps: int, exact: bool) -> tuple[float, float]:
    K2 = spec.interior_K2(-k * k)
    if exact:
        return _regular_start(K2, spec.R)
    sol = integrate_radial(spec, -k * k, spec.R, steps=(steps, 1))
    return float(sol.psi[-1]), float(sol.dpsi[-1])


def matching_function(spec: PotentialSpec, k: float, steps: int = 2000, exact_interior: bool = False) -> float:
    """Wronskian of interior and exterior bound-state solutions at ``R``.

    Zero exactly where the log-derivatives agree, but unlike the difference of
    log-derivatives it has no poles at nodes of either solution. Scaled by
    ``1 / (R^(1/2) K0)`` so its magnitude is O(1).
    """
    if not k > 0:
        raise DomainError(f"k must be > 0, got {k}")
    p_in, d_in = _interior_at_R(spec, k, steps, exact_interior)
    p_ex, d_ex = _exterior_bound(spec.nu, k, spec.R)
    scale = math.sqrt(spec.R) * max(spec.K0, 1.0 / spec.R)
    return (d_in * p_ex - p_in * d_ex) / scale


def shoot_bound_state(
    spec: PotentialSpec,
    k_bracket: tuple[float, float],
    steps: int = 2000,
    exact_interior: bool = False,
    rtol: float = 1e-12,
) -> float:
    """Bound-state momentum inside ``k_bracket`` by shooting.

    The bracket must enclose exactly one sign change of
    :func:`matching_function`; narrow it rather than relying on which root a
    wider bracket happens to converge to.
    """
    a, b = map(float, k_bracket)
    if not 0 < a < b:
        raise DomainError(f"need 0 < k_lo < k_hi, got {k_bracket}")
    fa = matching_function(spec, a, steps, exact_interior)
    fb = matching_function(spec, b, steps, exact_interior)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if (fa > 0) == (fb > 0):
        raise BracketError(
            f"matching function has no sign change on [{a}, {b}]: f = ({fa:.6g}, {fb:.6g})",
            endpoints=(a, b), values=(fa, fb),
        )
    return optimize.brentq(
        lambda k: matching_function(spec, k, steps, exact_interior), a, b, xtol=1e-300, rtol=rtol,
    )


def find_bound_states(
    spec: PotentialSpec,
    k_min: float,
    k_max: float,
    points_per_cycle: int = 12,
    steps: int = 2000,
    exact_interior: bool = False,
) -> list[float]:
    """All bound-state momenta in ``[k_min, k_max]``, in decreasing order.

    Scans a log-uniform grid fine enough to see every oscillation of the
    matching function (period ``pi / nu`` in ``log k`` at small ``k R``) and
    shoots inside each sign change.
    """
    if not 0 < k_min < k_max:
        raise DomainError(f"need 0 < k_min < k_max, got ({k_min}, {k_max})")
    cycles = math.log(k_max / k_min) * spec.nu / math.pi
    npts = max(8, int(math.ceil(cycles * points_per_cycle)) + 1)
    ks = np.geomspace(k_min, k_max, npts)
    fs = [matching_function(spec, float(k), steps, exact_interior) for k in ks]
    roots = []
    for i in range(npts - 1):
        if (fs[i] > 0) != (fs[i + 1] > 0):
            roots.append(shoot_bound_state(spec, (ks[i], ks[i + 1]), steps, exact_interior))
    return sorted(roots, reverse=True)


def small_r_phase(nu: float, k: float, r):
    """Small-distance form ``r^(1/2) sin(nu log(k r / 2) - arg Gamma(1 + i nu))``.

    Proportional to ``r^(1/2) K_{i nu}(k r)`` (with factor
    ``-(pi / (nu sinh(pi nu)))^(1/2)``) up to O((k r)^2). Requires
    ``k r <= 1e-2``.
    """
    r = np.asarray(r, dtype=float)
    if not (nu > 0 and k > 0):
        raise DomainError(f"need nu > 0 and k > 0, got nu={nu}, k={k}")
    if np.any(r <= 0) or np.any(k * r > 1e-2):
        raise DomainError("small_r_phase requires 0 < k r <= 1e-2")
    out = np.sqrt(r) * np.sin(nu * np.log(0.5 * k * r) - arg_gamma_one_plus_i_nu(nu))
    return float(out) if out.ndim == 0 else out
