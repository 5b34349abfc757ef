"""Cross-checks of the analytic results against the independent oracles."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .flow import FlowParams, omega_of_x, singular_points, trace_flow
from .oracle import PotentialSpec, find_bound_states, matching_residual
from .riemann import beta_n, oracle_root
from .specialfn import arg_gamma_one_plus_i_nu, arg_gamma_series
from .spectrum import SpectrumParams, bound_state_k, case_phase_B

OMEGA_GRID = (0.1, -0.1, 0.5, -0.5, 1.5, -1.5, 2.0, 5.0, -5.0, 20.0)
BRANCHES = (1, 2, 3, 16)
FIGURE_PARAMS = ((0.5, 1.0, 1), (3.0, 1.0, 1), (3.0, 1.0, 16), (2.0, 0.0, 1), (2.0, 0.0, 2), (2.0, 0.0, 3))
CASE_PARAMS = ((1.0, 0.0), (1.0, 1.0), (2.0, 0.5))


@dataclass(frozen=True)
class CheckResult:
    name: str
    worst: float
    tolerance: float
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.worst <= self.tolerance

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f"  ({self.detail})" if self.detail else ""
        return f"{status}  {self.name}: worst={self.worst:.3e} tol={self.tolerance:.1e}{extra}"


def check_closed_form_vs_oracle(omegas=OMEGA_GRID, branches=BRANCHES) -> list[CheckResult]:
    worst_diff = worst_res = 0.0
    for w in omegas:
        for n in branches:
            closed = beta_n(w, n)
            ref = oracle_root(1.0 / w, n)
            worst_diff = max(worst_diff, abs(closed.beta - ref.beta))
            worst_res = max(worst_res, closed.residual / max(1.0, abs(1.0 / w)))
    return [
        CheckResult("closed form vs bracketing oracle |dbeta|", worst_diff, 1e-6),
        CheckResult("closed form scaled root residual", worst_res, 1e-6),
    ]


def check_flow_self_consistency(nu=3.0, phi0=1.0, count=100, seed=0) -> CheckResult:
    rng = np.random.default_rng(seed)
    params = FlowParams(nu, phi0, 1)
    worst = 0.0
    done = 0
    while done < count:
        s = float(rng.uniform(-5.0, 5.0))
        om = omega_of_x(params, s)
        if om.is_singular:
            continue
        beta = beta_n(om, 1).beta
        worst = max(worst, abs(matching_residual(nu, phi0, s, beta)))
        done += 1
    return CheckResult(f"flow residual at {count} random ln x (nu={nu}, phi0={phi0})", worst, 1e-8)


def check_jumps(cases=FIGURE_PARAMS, ln_x_range=(-4.0, 2.0), samples=600) -> CheckResult:
    worst = 0.0
    count = 0
    for nu, phi0, n in cases:
        params = FlowParams(nu, phi0, n)
        trace = trace_flow(params, *ln_x_range, samples)
        expected = [p for p in singular_points(params, *ln_x_range) if p.kind == "inverse-omega-zero"]
        if len(trace.jumps) != len(expected):
            return CheckResult("jump magnitudes equal pi", math.inf, 1e-6,
                               f"{len(trace.jumps)} jumps for {len(expected)} zeros at {params}")
        for j in trace.jumps:
            worst = max(worst, abs(j.magnitude - math.pi))
            count += 1
    return CheckResult("jump magnitudes equal pi", worst, 1e-6, f"{count} jumps")


def shooting_levels(nu: float, phi0: float, R: float, kR_max: float = 1e-3, count: int = 2):
    """Highest ``count`` shooting levels with ``k R <= kR_max``, paired with the analytic tower.

    Returns a list of ``(n, k_shoot, k_tower)``.
    """
    spec = PotentialSpec.from_flow(nu, phi0, R)
    k_hi = kR_max / R
    k_lo = k_hi * math.exp(-math.pi / nu * (count + 0.5))
    ks = find_bound_states(spec, k_lo, k_hi)[:count]
    sp = SpectrumParams(nu, phi0)
    out = []
    for k in ks:
        # nearest level of the analytic tower
        n = round((case_phase_B(sp) - nu * math.log(k / 2.0)) / math.pi - 0.5)
        out.append((n, k, bound_state_k(sp, n).k))
    return out


def check_shooting(cases=CASE_PARAMS, radii=(1e-3, 1e-4)) -> list[CheckResult]:
    worst_level = worst_cut = 0.0
    for nu, phi0 in cases:
        per_R = {}
        for R in radii:
            lv = shooting_levels(nu, phi0, R)
            for n, k, kt in lv:
                worst_level = max(worst_level, abs(k / kt - 1.0))
            per_R[R] = {n: k for n, k, _ in lv}
        common = set.intersection(*(set(d) for d in per_R.values()))
        for n in common:
            ks = [per_R[R][n] for R in radii]
            worst_cut = max(worst_cut, max(ks) / min(ks) - 1.0)
    return [
        CheckResult("shooting vs analytic tower (kR <= 1e-3)", worst_level, 1e-2),
        CheckResult("cutoff independence R -> R/10", worst_cut, 1e-2),
    ]


def check_arg_gamma(nus=(0.5, 1.0, 3.0)) -> CheckResult:
    worst = max(abs(arg_gamma_one_plus_i_nu(v) - arg_gamma_series(v)) / abs(arg_gamma_series(v))
                for v in nus)
    return CheckResult("arg Gamma(1+i nu) fast vs series (relative)", worst, 1e-10)


def run_all(quick: bool = False) -> list[CheckResult]:
    results = [check_arg_gamma()]
    results += check_closed_form_vs_oracle()
    results.append(check_flow_self_consistency())
    results.append(check_jumps(samples=300 if quick else 600))
    if not quick:
        results += check_shooting()
    return results
