"""Running of the short-range coupling with the cutoff ratio x = R / r0.

Matching the square-well interior to the zero-energy exterior solution at
``r = R`` gives

    beta cot beta = 1/omega = 1/2 - nu * tan(nu * ln x + phi0),

so ``omega`` is periodic in ``ln x`` with period ``pi / nu`` and so is every
branch ``beta_n``. Along a branch, ``beta`` is continuous through the poles of
the tangent (``omega = 0``, where ``beta = n pi``) and drops by exactly ``pi``
as ``ln x`` increases through each zero of ``1/omega``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, InvSqError, ResolutionError
from .riemann import (
    INVERSE_OMEGA_ZERO,
    OMEGA_ZERO,
    OmegaValue,
    beta_n,
)

__all__ = [
    "FlowParams",
    "FlowSample",
    "FlowTrace",
    "Jump",
    "SingularPoint",
    "cycle_period",
    "detect_discontinuities",
    "omega_of_x",
    "one_sided_limits",
    "singular_points",
    "trace_flow",
]

OK = "ok"
ERROR = "error"

DEFAULT_EXCLUSION = 1e-6
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class FlowParams:
    """Long-range strength ``nu``, zero-energy phase ``phi0``, branch ``n``."""

    nu: float
    phi0: float
    n: int = 1

    def __post_init__(self):
        if not (math.isfinite(self.nu) and self.nu > 0):
            raise DomainError(f"nu must be finite and > 0, got {self.nu}")
        if not math.isfinite(self.phi0):
            raise DomainError(f"phi0 must be finite, got {self.phi0}")
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"branch index n must be an integer >= 1, got {self.n}")


@dataclass(frozen=True)
class SingularPoint:
    ln_x: float
    kind: str  # OMEGA_ZERO or INVERSE_OMEGA_ZERO


@dataclass(frozen=True)
class Jump:
    """A discontinuity of ``beta`` at ``ln_x_star``.

    ``magnitude`` is ``left - right``: the coupling is larger on the
    small-``x`` side.
    """

    ln_x_star: float
    magnitude: float
    left: float
    right: float

    @property
    def quantum(self) -> int:
        """Nearest integer multiple of pi."""
        return round(self.magnitude / math.pi)


@dataclass(frozen=True)
class FlowSample:
    ln_x: float
    omega: OmegaValue
    beta: float  # NaN unless flag == "ok"
    flag: str
    message: str = ""


@dataclass
class FlowTrace:
    params: FlowParams
    samples: list[FlowSample]
    jumps: list[Jump] = field(default_factory=list)
    excluded: list[SingularPoint] = field(default_factory=list)

    @property
    def ln_x(self) -> np.ndarray:
        return np.array([s.ln_x for s in self.samples])

    @property
    def beta(self) -> np.ndarray:
        return np.array([s.beta for s in self.samples])

    @property
    def inverse_omega(self) -> np.ndarray:
        return np.array([s.omega.inverse_omega for s in self.samples])

    @property
    def flags(self) -> list[str]:
        return [s.flag for s in self.samples]

    @property
    def ok(self) -> np.ndarray:
        return np.array([s.flag == OK for s in self.samples])


def cycle_period(params: FlowParams) -> float:
    """Period of the flow in ``ln x``: ``pi / nu``."""
    return math.pi / params.nu


def omega_of_x(params: FlowParams, ln_x: float) -> OmegaValue:
    """``omega`` at cutoff ratio ``x = exp(ln_x)``.

    Values of ``1/omega`` (or of ``cos`` of the phase) that vanish to within
    their own rounding error are snapped to the exact singular cases.
    """
    ln_x = float(ln_x)
    if not math.isfinite(ln_x):
        raise DomainError(f"ln_x must be finite, got {ln_x}")
    nu = params.nu
    theta = nu * ln_x + params.phi0
    # absolute rounding error carried by theta
    dtheta = 4 * _EPS * (abs(nu * ln_x) + abs(params.phi0) + 1.0)
    cos_t = math.cos(theta)
    if abs(cos_t) <= dtheta:
        # 1/omega = -nu tan(theta) -> -/+inf; keep the side we rounded onto
        sign = -1.0 if math.sin(theta) * cos_t > 0 else 1.0
        return OmegaValue.from_inverse(sign * math.inf)
    tan_t = math.tan(theta)
    inv = 0.5 - nu * tan_t
    if abs(inv) <= nu * (1.0 + tan_t * tan_t) * dtheta:
        return OmegaValue.from_inverse(0.0)
    return OmegaValue.from_inverse(inv)


def singular_points(params: FlowParams, ln_x_min: float, ln_x_max: float) -> list[SingularPoint]:
    """Closed-form zeros of ``1/omega`` and of ``omega`` within a range.

    Zeros of ``1/omega`` sit at ``nu ln x + phi0 = arctan(1/(2 nu)) + m pi``
    (the jump sites); zeros of ``omega`` at ``nu ln x + phi0 = (m + 1/2) pi``
    (removable points with ``beta = n pi``). Sorted by ``ln_x``.
    """
    if not (math.isfinite(ln_x_min) and math.isfinite(ln_x_max) and ln_x_min <= ln_x_max):
        raise DomainError(f"need a finite interval, got [{ln_x_min}, {ln_x_max}]")
    nu, phi0 = params.nu, params.phi0
    lo, hi = nu * ln_x_min + phi0, nu * ln_x_max + phi0
    out = []
    for offset, kind in ((math.atan(0.5 / nu), INVERSE_OMEGA_ZERO), (0.5 * math.pi, OMEGA_ZERO)):
        m_lo = math.ceil((lo - offset) / math.pi)
        m_hi = math.floor((hi - offset) / math.pi)
        for m in range(m_lo, m_hi + 1):
            s = (offset + m * math.pi - phi0) / nu
            if ln_x_min <= s <= ln_x_max:
                out.append(SingularPoint(s, kind))
    out.sort(key=lambda p: p.ln_x)
    return out


def _beta_at(params: FlowParams, ln_x: float) -> float:
    om = omega_of_x(params, ln_x)
    return beta_n(om, params.n).beta


def trace_flow(
    params: FlowParams,
    ln_x_min: float,
    ln_x_max: float,
    samples: int,
    exclusion: float = DEFAULT_EXCLUSION,
    detect: bool = True,
) -> FlowTrace:
    """Sample ``beta_n`` on a uniform ``ln x`` grid.

    Nodes within ``exclusion`` of a singular point are flagged with the type of
    that point and not evaluated. Solver failures are attached to their node
    with flag ``"error"``. With ``detect=True`` the jumps are filled in by
    :func:`detect_discontinuities`.
    """
    if samples < 2:
        raise DomainError(f"need at least 2 samples, got {samples}")
    if not (math.isfinite(ln_x_min) and math.isfinite(ln_x_max) and ln_x_min < ln_x_max):
        raise DomainError(f"need a finite, nonempty interval, got [{ln_x_min}, {ln_x_max}]")
    if not exclusion > 0:
        raise DomainError(f"exclusion window must be > 0, got {exclusion}")

    grid = np.linspace(ln_x_min, ln_x_max, samples)
    sing = singular_points(params, ln_x_min - exclusion, ln_x_max + exclusion)
    sing_x = np.array([p.ln_x for p in sing])

    out = []
    for s in grid:
        s = float(s)
        om = omega_of_x(params, s)
        near = None
        if sing:
            i = int(np.argmin(np.abs(sing_x - s)))
            if abs(sing_x[i] - s) <= exclusion:
                near = sing[i].kind
        if near is None and om.is_singular:
            near = om.kind
        if near is not None:
            out.append(FlowSample(s, om, math.nan, near))
            continue
        try:
            beta = beta_n(om, params.n).beta
        except InvSqError as exc:
            out.append(FlowSample(s, om, math.nan, ERROR, str(exc)))
            continue
        out.append(FlowSample(s, om, beta, OK))

    trace = FlowTrace(params, out, excluded=[p for p in sing if ln_x_min <= p.ln_x <= ln_x_max])
    if detect:
        trace.jumps = detect_discontinuities(trace, params, exclusion=exclusion)
    return trace


def one_sided_limits(
    params: FlowParams, ln_x_star: float, eps: float = DEFAULT_EXCLUSION, levels: int = 7
) -> tuple[float, float]:
    """Left and right limits of ``beta`` at ``ln_x_star``.

    Samples at ``ln_x_star -/+ eps * 2**-k`` for ``k < levels`` and
    extrapolates a straight line in the offset to zero.
    """
    offsets = eps * 0.5 ** np.arange(levels)
    left = [_beta_at(params, ln_x_star - d) for d in offsets]
    right = [_beta_at(params, ln_x_star + d) for d in offsets]
    left_lim = np.polynomial.polynomial.polyfit(offsets, left, 1)[0]
    right_lim = np.polynomial.polynomial.polyfit(offsets, right, 1)[0]
    return float(left_lim), float(right_lim)


def detect_discontinuities(
    trace: FlowTrace, params: FlowParams, exclusion: float = DEFAULT_EXCLUSION
) -> list[Jump]:
    """Locate and measure the jumps of a traced branch.

    Every adjacent pair of evaluated nodes whose ``beta`` values differ by
    ``pi / 2`` or more must straddle a zero of ``1/omega``; otherwise the grid
    is too coarse and :class:`ResolutionError` names the interval. Each zero of
    ``1/omega`` inside the traced range yields one :class:`Jump`, measured from
    extrapolated one-sided limits rather than from the grid.
    """
    x = trace.ln_x
    if len(x) == 0:
        return []
    sites = [p.ln_x for p in singular_points(params, float(x[0]), float(x[-1]))
             if p.kind == INVERSE_OMEGA_ZERO]

    ok_idx = [i for i, s in enumerate(trace.samples) if s.flag == OK]
    for i, j in zip(ok_idx, ok_idx[1:]):
        a, b = trace.samples[i], trace.samples[j]
        if abs(b.beta - a.beta) >= 0.5 * math.pi:
            if not any(a.ln_x < s < b.ln_x for s in sites):
                raise ResolutionError(
                    f"beta changes by {abs(b.beta - a.beta):.3f} on [{a.ln_x}, {b.ln_x}] "
                    "without a zero of 1/omega in between; refine the grid",
                    interval=(a.ln_x, b.ln_x),
                )

    jumps = []
    for s in sites:
        left, right = one_sided_limits(params, s, eps=exclusion)
        jumps.append(Jump(s, left - right, left, right))
    return jumps
