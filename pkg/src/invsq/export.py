"""CSV and JSON emission with fixed 12-significant-digit formatting."""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path
from typing import Iterable, Sequence

from .flow import FlowTrace, Jump, SingularPoint
from .oracle import WaveSolution
from .spectrum import SpectrumLevel

FLOW_HEADER = ("ln_x", "omega_inv", "beta", "flag")
JUMP_HEADER = ("ln_x_star", "magnitude")
SINGULAR_HEADER = ("ln_x", "type")
SPECTRUM_HEADER = ("n", "k", "E_B")
WAVE_HEADER = ("r", "psi", "region")


def fmt(value) -> str:
    """Text form of one cell: floats to 12 significant digits, ``nan``/``inf`` spelled out."""
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return f"{value:.12g}"
    return str(value)


def _json_value(value):
    if isinstance(value, float):
        return float(f"{value:.12g}") if math.isfinite(value) else None
    return value


def flow_rows(trace: FlowTrace) -> list[tuple]:
    return [(s.ln_x, s.omega.inverse_omega, s.beta, s.flag) for s in trace.samples]


def jump_rows(jumps: Iterable[Jump]) -> list[tuple]:
    return [(j.ln_x_star, j.magnitude) for j in jumps]


def singular_rows(points: Iterable[SingularPoint]) -> list[tuple]:
    return [(p.ln_x, p.kind) for p in points]


def spectrum_rows(levels: Iterable[SpectrumLevel]) -> list[tuple]:
    return [(lv.n, lv.k, lv.E_B) for lv in levels]


def wave_rows(sol: WaveSolution) -> list[tuple]:
    return [(float(r), float(p), str(g)) for r, p, g in zip(sol.r, sol.psi, sol.region)]


def write_table(path, header: Sequence[str], rows: Iterable[Sequence], fmt_name: str = "csv") -> Path:
    """Write ``rows`` under ``header`` as CSV or as a JSON list of records."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if fmt_name == "csv":
        with path.open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            for row in rows:
                w.writerow([fmt(v) for v in row])
    elif fmt_name == "json":
        records = [{k: _json_value(v) for k, v in zip(header, row)} for row in rows]
        path.write_text(json.dumps(records, indent=1) + "\n")
    else:
        raise ValueError(f"unknown output format {fmt_name!r}")
    return path


def read_csv(path, header: Sequence[str]) -> list[dict]:
    """Parse a CSV written by :func:`write_table`, checking the header."""
    with Path(path).open(newline="") as fh:
        reader = csv.reader(fh)
        got = next(reader)
        if tuple(got) != tuple(header):
            raise ValueError(f"{path}: header {got} != expected {list(header)}")
        out = []
        for row in reader:
            rec = {}
            for key, cell in zip(header, row):
                try:
                    rec[key] = int(cell) if key == "n" else float(cell)
                except ValueError:
                    rec[key] = cell
            out.append(rec)
    return out
