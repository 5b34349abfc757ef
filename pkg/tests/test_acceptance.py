"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line (visible without ``-s``)
before asserting. Run just this file with ``pytest tests/test_acceptance.py``.
"""

import math
import time

import numpy as np
import pytest
from scipy import optimize

from invsq.flow import FlowParams, cycle_period, omega_of_x, singular_points, trace_flow
from invsq.oracle import PotentialSpec, find_bound_states, matching_residual, shoot_bound_state
from invsq.riemann import beta0, beta_n, oracle_root
from invsq.specialfn import arg_gamma_one_plus_i_nu, arg_gamma_series, bessel_k_imag_order
from invsq.spectrum import PREFACTOR_HALF, SpectrumParams, bound_state_k, case_phase_B, spectrum_ratio

OMEGAS = (0.1, -0.1, 0.5, -0.5, 1.5, -1.5, 2.0, 5.0, -5.0, 20.0)
BRANCHES = (1, 2, 3, 16)
FIGURES = ((0.5, 1.0, 1), (3.0, 1.0, 1), (3.0, 1.0, 16), (2.0, 0.0, 1), (2.0, 0.0, 2), (2.0, 0.0, 3))


@pytest.fixture
def report(capsys):
    def emit(number, ok, text):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'}  criterion {number}: {text}")
    return emit


def _k0_series(z, terms=60):
    q = z * z / 4.0
    term, harmonic, i0, tail = 1.0, 0.0, 0.0, 0.0
    for k in range(terms):
        if k > 0:
            term *= q / (k * k)
            harmonic += 1.0 / k
        i0 += term
        tail += term * harmonic
    return -(math.log(z / 2.0) + np.euler_gamma) * i0 + tail


def _shoot_top_levels(nu, phi0, R, count=2):
    spec = PotentialSpec.from_flow(nu, phi0, R)
    k_hi = 1e-3 / R
    k_lo = k_hi * math.exp(-math.pi / nu * (count + 0.5))
    return find_bound_states(spec, k_lo, k_hi)[:count]


def _tower_level(params, k):
    return round((case_phase_B(params) - params.nu * math.log(k / 2.0)) / math.pi - 0.5)


def test_criterion_1_closed_form_matches_oracle(report):
    t0 = time.perf_counter()
    worst_diff = worst_res = 0.0
    for w in OMEGAS:
        for n in BRANCHES:
            closed = beta_n(w, n)
            worst_diff = max(worst_diff, abs(closed.beta - oracle_root(1.0 / w, n).beta))
            worst_res = max(worst_res, closed.residual / max(1.0, abs(1.0 / w)))
    elapsed = time.perf_counter() - t0
    ok = worst_diff <= 1e-6 and worst_res <= 1e-6 and elapsed < 60
    report(1, ok, f"max|dbeta|={worst_diff:.2e} max scaled residual={worst_res:.2e} "
                  f"({len(OMEGAS) * len(BRANCHES)} roots, {elapsed:.2f}s)")
    assert ok


def test_criterion_2_figure_traces(report):
    worst_jump = worst_site = worst_period = worst_step = 0.0
    n_jumps = 0
    for nu, phi0, n in FIGURES:
        params = FlowParams(nu, phi0, n)
        period = cycle_period(params)
        lo, hi = -4.0, -4.0 + 2 * period
        trace = trace_flow(params, lo, hi, 1200)
        zeros = [p.ln_x for p in singular_points(params, lo, hi) if p.kind == "inverse-omega-zero"]
        assert len(trace.jumps) == len(zeros) > 0
        for j, z in zip(trace.jumps, zeros):
            worst_jump = max(worst_jump, abs(j.magnitude - math.pi))
            worst_site = max(worst_site, abs(j.ln_x_star - z))
            n_jumps += 1
        # away from the jump sites consecutive nodes move by far less than pi
        ok_idx = np.flatnonzero(trace.ok)
        for a, b in zip(ok_idx, ok_idx[1:]):
            if not any(trace.ln_x[a] < z < trace.ln_x[b] for z in zeros):
                worst_step = max(worst_step, abs(trace.beta[b] - trace.beta[a]))
        first = trace_flow(params, lo, lo + period, 400, detect=False)
        second = trace_flow(params, lo + period, lo + 2 * period, 400, detect=False)
        both = first.ok & second.ok
        worst_period = max(worst_period, float(np.max(np.abs(first.beta[both] - second.beta[both]))))
    ok = worst_jump <= 1e-6 and worst_site <= 1e-9 and worst_period <= 1e-8 and worst_step < math.pi / 2
    report(2, ok, f"{n_jumps} jumps, max||jump|-pi|={worst_jump:.2e}, site error={worst_site:.1e}, "
                  f"period mismatch={worst_period:.2e}, largest smooth step={worst_step:.3f}")
    assert ok


def test_criterion_3_limits(report):
    d_plus = abs(beta_n(1e-3, 1).beta - math.pi)
    d_minus = abs(beta_n(-1e-3, 1).beta - math.pi)
    d_inf = abs(beta0(1e4).beta - math.pi / 2)
    at_one = beta0(1.0).beta
    ok = d_plus <= 5e-3 and d_minus <= 5e-3 and d_inf <= 1e-3 and at_one == 0.0
    report(3, ok, f"|beta_1(+-1e-3)-pi|=({d_plus:.2e}, {d_minus:.2e}) "
                  f"|beta0(1e4)-pi/2|={d_inf:.2e} beta0(1)={at_one}")
    assert ok


def test_criterion_4_spectrum(report):
    t0 = time.perf_counter()
    params = SpectrumParams(1.0, 0.0)
    ratio_err = max(
        abs(bound_state_k(params, n).k / bound_state_k(params, n + 1).k / math.exp(math.pi) - 1.0)
        for n in range(-3, 5)
    )
    ratio_err = max(ratio_err, abs(spectrum_ratio(params) * math.exp(math.pi) - 1.0))

    shots = {R: _shoot_top_levels(1.0, 0.0, R) for R in (1e-3, 1e-4)}
    level_err = 0.0
    labelled = {}
    for R, ks in shots.items():
        assert len(ks) == 2
        ns = [_tower_level(params, k) for k in ks]
        assert ns[1] == ns[0] + 1
        labelled[R] = dict(zip(ns, ks))
        for n, k in zip(ns, ks):
            level_err = max(level_err, abs(k / bound_state_k(params, n).k - 1.0))
    common = set(labelled[1e-3]) & set(labelled[1e-4])
    assert common
    cut_err = max(abs(labelled[1e-3][n] / labelled[1e-4][n] - 1.0) for n in common)
    n0, k0 = next(iter(labelled[1e-3].items()))
    half = k0 / bound_state_k(params, n0, prefactor=PREFACTOR_HALF).k
    elapsed = time.perf_counter() - t0
    ok = ratio_err <= 1e-12 and level_err <= 1e-2 and cut_err <= 1e-2 and elapsed < 60
    report(4, ok, f"ratio error={ratio_err:.1e}, shooting vs tower={level_err:.2e}, "
                  f"R->R/10 change={cut_err:.2e}, shooting/(1/(2r0) tower)={half:.4f}, {elapsed:.1f}s")
    assert ok


def test_criterion_5_case_phase(report):
    worst = 0.0
    parts = []
    for nu, phi0 in ((1.0, 0.0), (1.0, 1.0), (2.0, 0.5)):
        params = SpectrumParams(nu, phi0)
        for k in _shoot_top_levels(nu, phi0, 1e-3):
            err = abs(k / bound_state_k(params, _tower_level(params, k)).k - 1.0)
            worst = max(worst, err)
        parts.append(f"B({nu:g},{phi0:g})={case_phase_B(params):.6f}")
    ok = worst <= 1e-2
    report(5, ok, f"max relative level error={worst:.2e}; " + ", ".join(parts))
    assert ok


def test_criterion_6_special_functions(report):
    ag_series = arg_gamma_series(1.0)
    ag_fast = arg_gamma_one_plus_i_nu(1.0)
    e_ag = max(abs(ag_series + 0.3016403), abs(ag_fast - ag_series))
    k00 = bessel_k_imag_order(0.0, 1.0)
    e_k = max(abs(k00 - 0.42102444), abs(k00 - _k0_series(1.0)))

    nu = 1.0
    f = lambda z: bessel_k_imag_order(nu, z)
    grid = np.geomspace(1e-4, 1e-2, 80)
    vals = [f(z) for z in grid]
    zeros = [optimize.brentq(f, a, b, xtol=1e-18, rtol=1e-14)
             for a, b, fa, fb in zip(grid, grid[1:], vals, vals[1:]) if fa * fb < 0]
    e_phase = 0.0
    for z in zeros:
        phase = nu * math.log(z / 2.0) - ag_fast
        e_phase = max(e_phase, abs(phase - math.pi * round(phase / math.pi)))
    ok = e_ag <= 1e-6 and e_k <= 1e-7 and e_phase <= 1e-3 and len(zeros) > 0
    report(6, ok, f"arg Gamma(1+i)={ag_series:.10f} (err {e_ag:.1e}), K_i0(1)={k00:.10f} (err {e_k:.1e}), "
                  f"small-r phase err={e_phase:.1e} over {len(zeros)} zeros")
    assert ok


def test_criterion_7_flow_self_consistency(report):
    nu, phi0 = 3.0, 1.0
    params = FlowParams(nu, phi0, 1)
    rng = np.random.default_rng(20261015)
    worst, used = 0.0, 0
    while used < 100:
        s = float(rng.uniform(-6.0, 6.0))
        om = omega_of_x(params, s)
        if om.is_singular:
            continue
        worst = max(worst, abs(matching_residual(nu, phi0, s, beta_n(om, 1).beta)))
        used += 1
    ok = worst <= 1e-8
    report(7, ok, f"max residual over {used} random ln x = {worst:.2e}")
    assert ok


def test_shooting_is_not_an_artifact_of_the_bracket():
    # the bracket-free scan and a direct bracketed shot land on the same level
    spec = PotentialSpec.from_flow(1.0, 0.0, 1e-3)
    scanned = _shoot_top_levels(1.0, 0.0, 1e-3)[0]
    direct = shoot_bound_state(spec, (scanned * 0.8, scanned * 1.2))
    assert direct == pytest.approx(scanned, rel=1e-10)
