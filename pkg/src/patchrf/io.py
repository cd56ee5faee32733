"""Result emission: CSV sweeps, Touchstone one-port files, Smith-chart
point lists and JSON reports.

All numeric fields are written with ``repr`` so they re-parse to the
identical float, and output is deterministic byte-for-byte for identical
inputs.
"""
from __future__ import annotations

import json
import math
from pathlib import Path

from .network import SweepResult, smith_coordinates

SWEEP_CSV_HEADER = "freq_hz,s11_db,s11_re,s11_im,zin_re_ohm,zin_im_ohm"
SMITH_CSV_HEADER = "freq_hz,gamma_re,gamma_im"

_UNIT_FACTORS = {"hz": 1.0, "khz": 1e3, "mhz": 1e6, "ghz": 1e9}


def write_sweep_csv(path: str | Path, sweep: SweepResult) -> None:
    lines = [SWEEP_CSV_HEADER]
    for p in sweep.points:
        db = 20.0 * math.log10(max(abs(p.s11), 1e-30))
        lines.append(
            ",".join(
                repr(v)
                for v in (p.f, db, p.s11.real, p.s11.imag, p.zin.real, p.zin.imag)
            )
        )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_smith_csv(path: str | Path, sweep: SweepResult, z_ref: float) -> None:
    lines = [SMITH_CSV_HEADER]
    for p in sweep.points:
        x, y = smith_coordinates(p.zin, z_ref)
        lines.append(",".join(repr(v) for v in (p.f, x, y)))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_touchstone_oneport(path: str | Path, sweep: SweepResult, z_ref: float) -> None:
    """Touchstone v1 one-port, real/imaginary format, frequencies in Hz."""
    lines = ["! one-port reflection data", f"# Hz S RI R {z_ref:g}"]
    for p in sweep.points:
        lines.append(f"{p.f!r} {p.s11.real!r} {p.s11.imag!r}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_touchstone_oneport(path: str | Path) -> tuple[list[float], list[complex], float]:
    """Parse a one-port Touchstone v1 file; returns (freqs, s11, z_ref)."""
    factor = 1.0
    fmt = "ri"
    z_ref = 50.0
    freqs: list[float] = []
    values: list[complex] = []
    saw_options = False
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("!"):
            continue
        if line.startswith("#"):
            tokens = line[1:].lower().split()
            saw_options = True
            for i, tok in enumerate(tokens):
                if tok in _UNIT_FACTORS:
                    factor = _UNIT_FACTORS[tok]
                elif tok in ("ri", "ma", "db"):
                    fmt = tok
                elif tok == "r" and i + 1 < len(tokens):
                    z_ref = float(tokens[i + 1])
            continue
        parts = line.split()
        if len(parts) < 3:
            raise ValueError(f"malformed Touchstone data line: {raw!r}")
        f, a, b = (float(p) for p in parts[:3])
        if fmt == "ri":
            s = complex(a, b)
        elif fmt == "ma":
            s = a * complex(math.cos(math.radians(b)), math.sin(math.radians(b)))
        else:  # db
            mag = 10.0 ** (a / 20.0)
            s = mag * complex(math.cos(math.radians(b)), math.sin(math.radians(b)))
        freqs.append(f * factor)
        values.append(s)
    if not saw_options:
        raise ValueError("missing Touchstone option line")
    return freqs, values, z_ref


def write_json_report(path: str | Path, payload: dict) -> None:
    Path(path).write_text(
        json.dumps(payload, indent=2, allow_nan=False) + "\n", encoding="utf-8"
    )
