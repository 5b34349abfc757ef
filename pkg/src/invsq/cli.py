"""Command-line interface.

Subcommands: ``solve``, ``flow``, ``spectrum``, ``singularities``, ``verify``.
Parameters may also come from a flat ``key = value`` file given with
``--config``; flags on the command line take precedence. Output files go to
``--output-dir`` (default ``$INVSQ_OUTPUT_DIR`` or the working directory).

Exit status: 0 success, 1 failed verification, 2 invalid input, 3 numerical
failure.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from pathlib import Path

from . import export
from .errors import DomainError, NumericalError
from .flow import FlowParams, singular_points, trace_flow
from .riemann import beta0, beta_n, oracle_root
from .spectrum import SpectrumParams, case_phase_B, levels, spectrum_ratio

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

OUTPUT_ENV = "INVSQ_OUTPUT_DIR"


def read_config(path) -> dict[str, str]:
    """Parse a flat ``key = value`` file; ``#`` starts a comment."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DomainError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def _finite(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"must be finite: {text!r}")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text!r}")
    return value


def _int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key = value parameter file")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--output-dir", default=None,
                        help=f"directory for emitted files (default ${OUTPUT_ENV} or .)")

    parser = argparse.ArgumentParser(
        prog="invsq",
        description="Running coupling, limit cycles and bound states of the "
                    "square-well-regularized inverse-square potential.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    parser.subcommands = sub.choices

    p = sub.add_parser("solve", parents=[common], help="root of beta cot beta = 1/omega")
    p.add_argument("--omega", type=_finite, required=False)
    p.add_argument("--n", type=_int, default=1, help="branch index (0 for beta0)")

    p = sub.add_parser("flow", parents=[common], help="trace beta along ln x")
    p.add_argument("--nu", type=_finite)
    p.add_argument("--phi0", type=_finite, default=0.0)
    p.add_argument("--n", type=_positive_int, default=1)
    p.add_argument("--lnx-min", type=_finite, default=-4.0)
    p.add_argument("--lnx-max", type=_finite, default=2.0)
    p.add_argument("--samples", type=_int, default=1000)
    p.add_argument("--exclusion", type=_finite, default=1e-6)

    p = sub.add_parser("spectrum", parents=[common], help="bound-state tower")
    p.add_argument("--nu", type=_finite)
    p.add_argument("--phi0", type=_finite, default=0.0)
    p.add_argument("--n-min", type=_int, default=0)
    p.add_argument("--n-max", type=_int, default=3)
    p.add_argument("--r0", type=_finite, default=1.0)
    p.add_argument("--mass2", type=_finite, default=1.0, help="2m")

    p = sub.add_parser("singularities", parents=[common], help="zeros of omega and 1/omega")
    p.add_argument("--nu", type=_finite)
    p.add_argument("--phi0", type=_finite, default=0.0)
    p.add_argument("--lnx-min", type=_finite, default=-4.0)
    p.add_argument("--lnx-max", type=_finite, default=2.0)

    p = sub.add_parser("verify", parents=[common], help="run the oracle cross-checks")
    p.add_argument("--quick", action="store_true", help="skip the shooting checks")
    return parser


def parse_args(argv=None) -> argparse.Namespace:
    """Parse flags, filling anything not given on the command line from ``--config``."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        try:
            values = read_config(args.config)
        except OSError as exc:
            parser.error(f"cannot read config: {exc}")
        except DomainError as exc:
            parser.error(str(exc))
        sub = parser.subcommands[args.command]
        known = {a.dest: a for a in sub._actions}
        for key, text in values.items():
            if key not in known or key in ("config", "help"):
                parser.error(f"unknown config key {key!r} for '{args.command}'")
            action = known[key]
            if action.nargs == 0:
                value = text.lower() in ("1", "true", "yes", "on")
            elif action.type is not None:
                try:
                    value = action.type(text)
                except argparse.ArgumentTypeError as exc:
                    parser.error(f"config key {key!r}: {exc}")
            else:
                value = text
            sub.set_defaults(**{key: value})
        args = parser.parse_args(argv)
    return args


def _require(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise DomainError("missing required parameter(s): " + ", ".join("--" + m.replace("_", "-") for m in missing))


def _out(args, stem: str) -> Path:
    base = Path(args.output_dir or os.environ.get(OUTPUT_ENV) or ".")
    return base / f"{stem}.{args.format}"


def cmd_solve(args) -> int:
    _require(args, "omega")
    if args.n < 0:
        raise DomainError(f"--n must be >= 0, got {args.n}")
    root = beta0(args.omega) if args.n == 0 else beta_n(args.omega, args.n)
    print(f"beta = {export.fmt(root.beta)}")
    print(f"branch = {root.branch}")
    print(f"residual = {root.residual:.3e}")
    if args.n >= 1:
        ref = oracle_root(1.0 / args.omega, args.n)
        print(f"oracle = {export.fmt(ref.beta)}")
    return EXIT_OK


def cmd_flow(args) -> int:
    _require(args, "nu")
    params = FlowParams(args.nu, args.phi0, args.n)
    trace = trace_flow(params, args.lnx_min, args.lnx_max, args.samples, exclusion=args.exclusion)
    errors = [s for s in trace.samples if s.flag == "error"]
    f1 = export.write_table(_out(args, "flow"), export.FLOW_HEADER, export.flow_rows(trace), args.format)
    f2 = export.write_table(_out(args, "jumps"), export.JUMP_HEADER, export.jump_rows(trace.jumps), args.format)
    print(f"wrote {f1} ({len(trace.samples)} samples) and {f2} ({len(trace.jumps)} jumps)")
    for j in trace.jumps:
        print(f"jump at ln_x = {export.fmt(j.ln_x_star)}: {export.fmt(j.magnitude)} "
              f"= {j.magnitude / math.pi:.9f} pi")
    if errors:
        for s in errors:
            print(f"node ln_x = {s.ln_x}: {s.message}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


def cmd_spectrum(args) -> int:
    _require(args, "nu")
    params = SpectrumParams(args.nu, args.phi0, args.r0, args.mass2)
    lv = levels(params, args.n_min, args.n_max)
    path = export.write_table(_out(args, "spectrum"), export.SPECTRUM_HEADER, export.spectrum_rows(lv), args.format)
    print(f"B = {export.fmt(case_phase_B(params))}")
    print(f"ratio k_(n+1)/k_n = {export.fmt(spectrum_ratio(params))}")
    print(f"wrote {path} ({len(lv)} levels)")
    return EXIT_OK


def cmd_singularities(args) -> int:
    _require(args, "nu")
    params = FlowParams(args.nu, args.phi0, 1)
    pts = singular_points(params, args.lnx_min, args.lnx_max)
    path = export.write_table(_out(args, "singularities"), export.SINGULAR_HEADER,
                              export.singular_rows(pts), args.format)
    print(f"wrote {path} ({len(pts)} points)")
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import run_all

    results = run_all(quick=args.quick)
    for r in results:
        print(r.line())
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if not failed else EXIT_VERIFY_FAILED


COMMANDS = {
    "solve": cmd_solve,
    "flow": cmd_flow,
    "spectrum": cmd_spectrum,
    "singularities": cmd_singularities,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    args = parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except DomainError as exc:
        print(f"invsq {args.command}: invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"invsq {args.command}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
