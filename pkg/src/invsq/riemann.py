"""Closed-form roots of ``beta * cot(beta) = 1/omega``.

The roots are written as exponentials of arg-integrals over (0, 1), the form
obtained by recasting the transcendental equation as a Riemann boundary-value
problem:

    lambda(t)   = 1 + (omega t / 2) log((1 - t) / (1 + t))
    Lambda0(t)  = lambda(t) + i pi omega t / 2
    Omega_n(t)  = Lambda0(t)**2 + n**2 pi**2 omega**2 t**2

    beta_0 = sqrt(omega - 1) / omega * exp( (1/pi) int_0^1 arg Lambda0(t) dt/t )
    beta_n = n pi * exp( (1/pi) int_0^1 arg Omega_n(t) dt/t ),   n >= 1

Only the positive sign is implemented. For ``omega > 0`` the branch-``n`` root
lies in ``(n pi, (n + 1/2) pi)``, for ``omega < 0`` in ``((n - 1/2) pi, n pi)``.

``oracle_root`` solves the same equation by bracketing and is the independent
check of the quadrature route.
"""

from __future__ import annotations

import math
import sys
import warnings
from dataclasses import dataclass

from scipy import integrate

from .errors import (
    BracketError,
    DomainError,
    NumericalError,
    SingularInputError,
    UnsupportedBranchError,
)

__all__ = [
    "OmegaValue",
    "BranchRoot",
    "integrand_values",
    "beta0",
    "beta_n",
    "oracle_root",
    "root_residual",
    "expected_interval",
]

REGULAR = "regular"
OMEGA_ZERO = "omega-zero"
INVERSE_OMEGA_ZERO = "inverse-omega-zero"

# the exponent integral must be known to this absolute accuracy
_EXPONENT_TOL = 1e-9
_V_MAX = 700.0
_EPS = sys.float_info.epsilon


@dataclass(frozen=True)
class OmegaValue:
    """``omega`` together with ``1/omega`` so both infinite limits are exact.

    Use :meth:`from_omega` or :meth:`from_inverse` rather than the raw
    constructor.
    """

    omega: float
    inverse_omega: float

    @classmethod
    def from_omega(cls, omega: float) -> "OmegaValue":
        omega = float(omega)
        if math.isnan(omega):
            raise DomainError("omega is NaN")
        if omega == 0.0:
            return cls(0.0, math.inf)
        if math.isinf(omega):
            return cls(omega, 0.0)
        return cls(omega, 1.0 / omega)

    @classmethod
    def from_inverse(cls, inverse_omega: float) -> "OmegaValue":
        inverse_omega = float(inverse_omega)
        if math.isnan(inverse_omega):
            raise DomainError("1/omega is NaN")
        if inverse_omega == 0.0:
            return cls(math.inf, 0.0)
        if math.isinf(inverse_omega):
            return cls(0.0, inverse_omega)
        return cls(1.0 / inverse_omega, inverse_omega)

    @property
    def kind(self) -> str:
        if self.omega == 0.0:
            return OMEGA_ZERO
        if self.inverse_omega == 0.0:
            return INVERSE_OMEGA_ZERO
        return REGULAR

    @property
    def is_singular(self) -> bool:
        return self.kind != REGULAR


@dataclass(frozen=True)
class BranchRoot:
    """A root ``beta = sqrt(2 m alpha_s)`` of ``beta cot beta = 1/omega``.

    ``abserr`` is the quadrature error estimate on the exponent integral
    (zero for roots produced by bracketing).
    """

    beta: float
    branch: int
    residual: float
    inverse_omega: float
    method: str
    abserr: float = 0.0


def _as_omega(omega) -> OmegaValue:
    if isinstance(omega, OmegaValue):
        return omega
    return OmegaValue.from_omega(omega)


def root_residual(beta: float, inverse_omega: float) -> float:
    """``|beta cot beta - 1/omega|``, using the limit 1 at ``beta = 0``."""
    lhs = 1.0 if beta == 0.0 else beta / math.tan(beta)
    return abs(lhs - inverse_omega)


def _residual_bound(inverse_omega: float, beta: float = 0.0) -> float:
    bound = 1e-8 * max(1.0, abs(inverse_omega))
    if beta > 0.0:
        # a few ulps of beta times the slope of beta cot beta; near n pi with
        # |1/omega| beyond ~1e8 this floor exceeds the relative bound
        s = math.sin(beta)
        slope = abs(math.cos(beta) / s - beta / (s * s)) if s != 0.0 else math.inf
        bound = max(bound, 8.0 * _EPS * beta * slope)
    return bound


def expected_interval(inverse_omega: float, n: int) -> tuple[float, float]:
    """Root interval of branch ``n`` for the sign of ``1/omega``."""
    if inverse_omega > 0:
        return n * math.pi, (n + 0.5) * math.pi
    return (n - 0.5) * math.pi, n * math.pi


def _lam(t, w, log_s=None):
    # log1p keeps lambda accurate as t -> 0; near t = 1 the caller passes
    # log_s = log(1 - t) exactly instead of forming 1 - t
    if log_s is None:
        log_s = math.log1p(-t)
    return 1.0 + 0.5 * w * t * (log_s - math.log1p(t))


def _arg_lambda0(t, w, log_s=None):
    # Im Lambda0 has the sign of omega, so atan2 never crosses its branch cut
    # for t in (0, 1); the value is continuous and -> 0 as t -> 0+.
    return math.atan2(0.5 * math.pi * w * t, _lam(t, w, log_s))


def _arg_omega_n(t, w, n, log_s=None):
    # Re Omega_n = lambda^2 + (n^2 - 1/4) pi^2 w^2 t^2 > 0 for n >= 1, so the
    # principal value is already the continuous branch starting from 0.
    lam = _lam(t, w, log_s)
    wt = w * t
    re = lam * lam + (n * n - 0.25) * (math.pi * wt) ** 2
    im = math.pi * lam * wt
    return math.atan2(im, re)


def integrand_values(omega, n: int, t: float) -> tuple[float, float, float]:
    """``(lambda(t), arg Lambda0(t), arg Omega_n(t))`` at a single ``t``."""
    om = _as_omega(omega)
    if om.is_singular:
        raise SingularInputError(f"integrand undefined for singular omega ({om.kind})")
    t = float(t)
    if not 0.0 < t < 1.0:
        raise DomainError(f"t must lie in (0, 1), got {t}")
    w = om.omega
    return float(_lam(t, w)), float(_arg_lambda0(t, w)), float(_arg_omega_n(t, w, n))


def _exponent_integral(f, w: float) -> tuple[float, float]:
    """int_0^1 f(t) dt / t for an integrand with f(t) = O(omega t) at t -> 0.

    ``f(t, log_s)`` also receives ``log(1 - t)`` (``None`` means compute it).
    Structure sits at t ~ 1/|omega| and t ~ 1/sqrt|omega|, so (0, 1/2) is
    integrated in u = log t. Near t = 1 the integrand creeps toward its limit
    like 1/log(1 - t), which defeats quadrature in t; (1/2, 1) is integrated in
    v = -log(1 - t) instead, with a breakpoint where lambda changes sign.
    """
    a = abs(w)
    t_min = 1e-18 / max(1.0, a)
    split = 0.5
    candidates = [0.1 / a, 1.0 / a, 10.0 / a, 1.0 / math.sqrt(a)]
    points = sorted({math.log(p) for p in candidates if t_min < p < split})
    v_lo, v_hi = math.log(2.0), _V_MAX
    v_points = sorted({v for v in (math.log(10.0), 2.0 / a + math.log(2.0)) if v_lo < v < v_hi})

    def high(v):
        t = -math.expm1(-v)
        return f(t, -v) * math.exp(-v) / t

    # the integral is O(omega) for small omega; keep the absolute target relative to it
    opts = dict(epsabs=1e-14 * min(1.0, a), epsrel=1e-13, limit=500)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        low, err_low = integrate.quad(
            lambda u: f(math.exp(u), None), math.log(t_min), math.log(split),
            points=points or None, **opts,
        )
        hi, err_hi = integrate.quad(high, v_lo, v_hi, points=v_points or None, **opts)
    # f is linear in t below t_min; beyond v_hi the weight exp(-v) is below 1e-300
    head = f(t_min, None)
    return low + hi + head, err_low + err_hi


def beta0(omega) -> BranchRoot:
    """Branch-0 root, real only for ``omega >= 1``; lies in ``[0, pi/2)``."""
    om = _as_omega(omega)
    if om.is_singular:
        raise SingularInputError(f"beta0 undefined for singular omega ({om.kind})")
    w = om.omega
    if w <= 0.0:
        raise DomainError(f"beta0 requires omega > 0, got {w}")
    if w < 1.0:
        raise UnsupportedBranchError(
            f"beta0 is imaginary for 0 < omega < 1 (omega={w}); "
            "only the branches n >= 1 carry real roots here"
        )
    if w == 1.0:
        return BranchRoot(0.0, 0, 0.0, 1.0, "closed-form")
    exponent, abserr = _exponent_integral(lambda t, ls: _arg_lambda0(t, w, ls), w)
    if abserr > _EXPONENT_TOL:
        raise NumericalError(f"beta0 quadrature reached only abserr={abserr:.3e} (omega={w})")
    beta = math.sqrt(w - 1.0) / w * math.exp(exponent / math.pi)
    return _checked(BranchRoot(beta, 0, root_residual(beta, om.inverse_omega),
                               om.inverse_omega, "closed-form", abserr))


def beta_n(omega, n: int) -> BranchRoot:
    """Branch-``n`` root (``n >= 1``) from the closed-form arg integral.

    Parameters
    ----------
    omega : float or OmegaValue
        Finite, nonzero ``omega``.
    n : int
        Branch index, ``n >= 1``.
    """
    om = _as_omega(omega)
    if om.is_singular:
        raise SingularInputError(f"beta_n undefined for singular omega ({om.kind})")
    n = int(n)
    if n < 1:
        raise DomainError(f"branch index must be >= 1, got {n}")
    w = om.omega
    exponent, abserr = _exponent_integral(lambda t, ls: _arg_omega_n(t, w, n, ls), w)
    if abserr > _EXPONENT_TOL:
        raise NumericalError(
            f"beta_n quadrature reached only abserr={abserr:.3e} (omega={w}, n={n})"
        )
    beta = n * math.pi * math.exp(exponent / math.pi)
    return _checked(BranchRoot(beta, n, root_residual(beta, om.inverse_omega),
                               om.inverse_omega, "closed-form", abserr))


def _checked(root: BranchRoot) -> BranchRoot:
    bound = _residual_bound(root.inverse_omega, root.beta)
    if not root.residual <= bound:
        raise NumericalError(
            f"root residual {root.residual:.3e} exceeds "
            f"{bound:.3e} (branch {root.branch}, "
            f"1/omega={root.inverse_omega})"
        )
    return root


def oracle_root(inverse_omega: float, n: int, side: int = 1, max_iter: int = 200) -> BranchRoot:
    """Bracketed root of ``beta cot beta = inverse_omega`` on branch ``n``.

    Works on ``g(beta) = beta cos beta - c sin beta``, which shares the roots of
    ``beta cot beta - c`` inside the bracket but has no poles. Iterates
    Illinois-style false position with bisection fallback.

    ``side`` picks the limit for ``inverse_omega == 0``: ``+1`` gives
    ``(n + 1/2) pi`` (approached from omega > 0), ``-1`` gives ``(n - 1/2) pi``.
    """
    c = float(inverse_omega)
    n = int(n)
    if n < 1:
        raise DomainError(f"branch index must be >= 1, got {n}")
    if math.isnan(c):
        raise DomainError("1/omega is NaN")
    if math.isinf(c):
        return BranchRoot(n * math.pi, n, 0.0, c, "bracket")
    if c == 0.0:
        beta = (n + 0.5 * (1 if side >= 0 else -1)) * math.pi
        return BranchRoot(beta, n, 0.0, 0.0, "bracket")

    def g(b):
        return b * math.cos(b) - c * math.sin(b)

    a, b = expected_interval(c, n)
    ga, gb = g(a), g(b)
    if ga == 0.0 or gb == 0.0 or (ga > 0) == (gb > 0):
        raise BracketError(
            f"no sign change on branch {n} for 1/omega={c}", endpoints=(a, b), values=(ga, gb)
        )
    tol = 1e-12 * max(1.0, abs(c))
    side_kept = 0
    for _ in range(max_iter):
        x = (a * gb - b * ga) / (gb - ga)
        if not a < x < b:
            x = 0.5 * (a + b)
        gx = g(x)
        if gx == 0.0 or root_residual(x, c) <= tol:
            break
        if (gx > 0) == (ga > 0):
            a, ga = x, gx
            if side_kept == -1:
                gb *= 0.5
            side_kept = -1
        else:
            b, gb = x, gx
            if side_kept == 1:
                ga *= 0.5
            side_kept = 1
        if b - a <= 4 * math.ulp(b):
            break
    else:
        raise NumericalError(f"bracketing did not converge in {max_iter} iterations "
                             f"(1/omega={c}, n={n}, bracket=({a}, {b}))")
    return BranchRoot(x, n, root_residual(x, c), c, "bracket")
