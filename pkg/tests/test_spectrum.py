import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from invsq.errors import DomainError, LevelRangeError
from invsq.specialfn import arg_gamma_series
from invsq.spectrum import (
    PREFACTOR_HALF,
    SpectrumParams,
    bound_state_k,
    case_phase_B,
    levels,
    spectrum_ratio,
)

# 1 + arg Gamma(1 + i), mpmath
B_NU1_PHI1 = 0.698359679532466802112468342203
# (c/2) exp(arg Gamma(1 + i) - pi/2) for c = 1/2 and c = 2, mpmath
K0_HALF = 0.0768742869902245999144680326897
K0_MATCHED = 0.307497147960898399657872130759


def test_params_validation():
    for bad in [dict(nu=0.0, phi0=0.0), dict(nu=1.0, phi0=0.0, r0=0.0), dict(nu=1.0, phi0=0.0, mass2=-1.0)]:
        with pytest.raises(DomainError):
            SpectrumParams(**bad)


def test_case_phase_reference():
    assert case_phase_B(SpectrumParams(1.0, 1.0)) == pytest.approx(B_NU1_PHI1, abs=1e-12)
    assert case_phase_B(SpectrumParams(1.0, 1.0)) == pytest.approx(1.0 + arg_gamma_series(1.0), abs=1e-12)


def test_case_phase_small_nu_limit():
    assert case_phase_B(SpectrumParams(1e-9, 0.37)) == pytest.approx(0.37, abs=1e-8)


def test_case_phase_is_affine_without_reduction():
    a = case_phase_B(SpectrumParams(2.0, 0.3))
    b = case_phase_B(SpectrumParams(2.0, 0.3 + 2 * math.pi))
    assert b - a == pytest.approx(2 * math.pi, abs=1e-12)


def test_ground_level_reference_values():
    params = SpectrumParams(1.0, 0.0)
    assert bound_state_k(params, 0).k == pytest.approx(K0_MATCHED, rel=1e-12)
    assert bound_state_k(params, 0, prefactor=PREFACTOR_HALF).k == pytest.approx(K0_HALF, rel=1e-12)


def test_ratio_closed_form():
    assert spectrum_ratio(SpectrumParams(1.0, 0.0)) == pytest.approx(0.0432139182637722497744, rel=1e-14)
    assert spectrum_ratio(SpectrumParams(1e6, 0.0)) == pytest.approx(1.0, abs=1e-5)


@pytest.mark.parametrize("nu, phi0", [(1.0, 0.0), (2.0, 0.5), (0.7, -1.2), (5.0, 3.0)])
def test_geometric_tower(nu, phi0):
    params = SpectrumParams(nu, phi0)
    ns = np.arange(-3, 6)
    logk = np.array([math.log(bound_state_k(params, int(n)).k) for n in ns])
    assert np.allclose(np.diff(logk), -math.pi / nu, atol=1e-12)
    ks = np.exp(logk)
    assert np.all(np.diff(ks) < 0)
    ratio = spectrum_ratio(params)
    for a, b in zip(ks, ks[1:]):
        assert b == pytest.approx(ratio * a, rel=1e-12)


def test_consecutive_ratio_nu_one():
    params = SpectrumParams(1.0, 0.0)
    k0, k1 = bound_state_k(params, 0).k, bound_state_k(params, 1).k
    assert k0 / k1 == pytest.approx(math.exp(math.pi), rel=1e-12)
    assert k0 / k1 == pytest.approx(23.1406926327792690057, rel=1e-12)


@given(st.floats(0.2, 10), st.floats(-5, 5), st.integers(-5, 5))
def test_phase_shift_relabels_levels(nu, phi0, n):
    a = bound_state_k(SpectrumParams(nu, phi0 + math.pi), n + 1).k
    b = bound_state_k(SpectrumParams(nu, phi0), n).k
    assert a == pytest.approx(b, rel=1e-12)


def test_scale_covariance():
    p1, p2 = SpectrumParams(1.5, 0.2, r0=1.0), SpectrumParams(1.5, 0.2, r0=2.0)
    for n in range(-2, 3):
        l1, l2 = bound_state_k(p1, n), bound_state_k(p2, n)
        assert l2.k == pytest.approx(l1.k / 2, rel=1e-13)
        assert l2.E_B == pytest.approx(l1.E_B / 4, rel=1e-13)


def test_binding_energy_uses_mass():
    lv = bound_state_k(SpectrumParams(1.0, 0.0, mass2=4.0), 0)
    assert lv.E_B == pytest.approx(lv.k**2 / 4.0)


def test_unbounded_below_and_overflow():
    params = SpectrumParams(1.0, 0.0)
    energies = [bound_state_k(params, n).E_B for n in range(0, -110, -10)]
    assert all(a < b for a, b in zip(energies, energies[1:]))
    with pytest.raises(LevelRangeError) as info:
        bound_state_k(params, -10_000)
    lowest = info.value.max_level
    assert math.isfinite(bound_state_k(params, lowest).E_B)
    with pytest.raises(LevelRangeError):
        bound_state_k(params, lowest - 2)


def test_underflow_reports_highest_level():
    params = SpectrumParams(1.0, 0.0)
    with pytest.raises(LevelRangeError) as info:
        bound_state_k(params, 10_000)
    assert bound_state_k(params, info.value.max_level).k > 0


def test_levels_range():
    lv = levels(SpectrumParams(1.0, 0.0), 0, 3)
    assert [x.n for x in lv] == [0, 1, 2, 3]
    with pytest.raises(DomainError):
        levels(SpectrumParams(1.0, 0.0), 3, 0)
