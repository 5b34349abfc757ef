"""Special functions: the phase of Gamma(1 + i nu) and K_{i nu}(z).

Both quantities enter the bound-state problem of the attractive inverse-square
potential. ``arg_gamma_one_plus_i_nu`` has two evaluators: a fast one built on
``scipy.special.loggamma`` and a slow, dependency-free series used as the
reference. ``bessel_k_imag_order`` uses the integral representation

    K_{i nu}(z) = int_0^inf exp(-z cosh t) cos(nu t) dt,   z > 0,

which is real for real ``z`` and valid for every real order.
"""

from __future__ import annotations

import math
import warnings

import numpy as np
from scipy import integrate, special

from .errors import DomainError, NumericalError

__all__ = [
    "arg_gamma_one_plus_i_nu",
    "arg_gamma_series",
    "bessel_k_imag_order",
    "bessel_k_imag_order_derivative",
]

# exp(-z (cosh T - 1)) < 1e-16 sets the truncation point of the K integral.
_LOG_TRUNCATION = math.log(1e16)


def _check_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


def arg_gamma_one_plus_i_nu(nu: float) -> float:
    """Phase of Gamma(1 + i nu), continuous in ``nu`` and zero at ``nu = 0``.

    This is ``Im log Gamma(1 + i nu)`` on the branch that is analytic along the
    real ``nu`` axis. It coincides with the principal argument for
    ``|nu| < 4.5`` or so; beyond that it keeps growing like ``nu log nu`` rather
    than wrapping into (-pi, pi].
    """
    nu = _check_finite("nu", nu)
    if nu == 0.0:
        return 0.0
    return float(special.loggamma(complex(1.0, nu)).imag)


def arg_gamma_series(nu: float, terms: int = 200_000) -> float:
    """Reference value of arg Gamma(1 + i nu) from the product formula.

    Uses ``sum_j [nu/j - arctan(nu/j)] - euler_gamma * nu``. The first
    ``terms`` summands are added explicitly; the remainder is summed through
    the odd-power expansion of ``x - arctan x`` with Hurwitz zeta tails, which
    converges as long as ``terms > |nu|``.
    """
    nu = _check_finite("nu", nu)
    if nu == 0.0:
        return 0.0
    if terms <= 2 * abs(nu):
        raise DomainError(f"need terms > 2|nu| for the tail expansion (terms={terms}, nu={nu})")
    j = np.arange(1, terms + 1, dtype=float)
    x = nu / j
    # reverse order: small terms first
    head = math.fsum((x - np.arctan(x))[::-1])
    tail = 0.0
    for m in range(1, 40):
        p = 2 * m + 1
        term = (-1) ** (m + 1) * nu**p / p * special.zeta(p, terms + 1)
        tail += term
        if abs(term) < 1e-18 * max(1.0, abs(tail)):
            break
    return head + tail - np.euler_gamma * nu


def _k_integral(nu: float, z: float, weight_power: int) -> float:
    """exp(z) * int_0^T cosh(t)^p exp(-z cosh t) cos(nu t) dt for p in {0, 1}."""
    upper = math.acosh(1.0 + _LOG_TRUNCATION / z)

    if weight_power == 0:
        def g(t):
            return math.exp(-z * (math.cosh(t) - 1.0))
    else:
        def g(t):
            c = math.cosh(t)
            return c * math.exp(-z * (c - 1.0))

    # integrand magnitude reaches ~1/z for p = 1
    scale = max(1.0, 1.0 / z) if weight_power else 1.0
    kwargs = dict(epsabs=1e-14, epsrel=1e-13, limit=400, full_output=1)
    if nu != 0.0:
        kwargs.update(weight="cos", wvar=nu)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        value, abserr = integrate.quad(g, 0.0, upper, **kwargs)[:2]
    failed = abserr > 1e-9 * max(scale, abs(value))
    if failed:
        raise NumericalError(
            f"K_(i nu) quadrature did not converge: nu={nu}, z={z}, "
            f"estimate={value!r}, abserr={abserr:.3e}, upper={upper:.3f}"
        )
    return value


def bessel_k_imag_order(nu: float, z: float) -> float:
    """Modified Bessel function of the second kind, imaginary order ``i nu``.

    Parameters
    ----------
    nu : float
        Real order parameter; ``K_{i nu}`` is even in ``nu``.
    z : float
        Positive real argument.

    Returns
    -------
    float
        ``K_{i nu}(z)``. For ``z`` below about ``nu`` the function oscillates in
        ``log z`` and changes sign.
    """
    nu = abs(_check_finite("nu", nu))
    z = _check_finite("z", z)
    if z <= 0.0:
        raise DomainError(f"K_(i nu)(z) requires z > 0, got z={z}")
    return math.exp(-z) * _k_integral(nu, z, 0)


def bessel_k_imag_order_derivative(nu: float, z: float) -> float:
    """d/dz K_{i nu}(z) = -int_0^inf cosh(t) exp(-z cosh t) cos(nu t) dt."""
    nu = abs(_check_finite("nu", nu))
    z = _check_finite("z", z)
    if z <= 0.0:
        raise DomainError(f"K_(i nu)'(z) requires z > 0, got z={z}")
    return -math.exp(-z) * _k_integral(nu, z, 1)
