"""Compare ODE shooting levels with the analytic geometric tower.

For each (nu, phi0) the well strength is re-solved from the matching condition
at two cutoff radii, the shallowest levels with k R <= 1e-3 are found by
shooting, and each is paired with the nearest analytic level.

    python3 scripts/spectrum_check.py --out results/spectrum_check.csv
"""

import argparse
import math
from pathlib import Path

from invsq import export
from invsq.spectrum import PREFACTOR_HALF, SpectrumParams, bound_state_k
from invsq.verify import CASE_PARAMS, shooting_levels

HEADER = ("nu", "phi0", "R", "n", "k_shoot", "k_tower", "rel_err", "k_tower_half_prefactor")


def main():
    ap = argparse.ArgumentParser(description="shooting vs analytic spectrum")
    ap.add_argument("--out", type=Path, default=Path("results/spectrum_check.csv"))
    ap.add_argument("--radii", type=float, nargs="+", default=[1e-3, 1e-4])
    ap.add_argument("--levels", type=int, default=3)
    args = ap.parse_args()

    rows = []
    for nu, phi0 in CASE_PARAMS:
        params = SpectrumParams(nu, phi0)
        for R in args.radii:
            for n, k, kt in shooting_levels(nu, phi0, R, count=args.levels):
                half = bound_state_k(params, n, prefactor=PREFACTOR_HALF).k
                rows.append((nu, phi0, R, n, k, kt, k / kt - 1.0, half))
                print(f"nu={nu:g} phi0={phi0:g} R={R:.0e} n={n:3d} k={k:.9e} "
                      f"tower={kt:.9e} rel={k / kt - 1:+.2e} k/half-prefactor={k / half:.4f}")
    path = export.write_table(args.out, HEADER, rows)
    worst = max(abs(r[6]) for r in rows)
    print(f"wrote {path}; worst relative deviation {worst:.2e} ({'within' if worst <= 1e-2 else 'outside'} 1%)")
    return 0 if worst <= 1e-2 else 1


if __name__ == "__main__":
    raise SystemExit(main())
