"""Byte-stable artifact writers.

Floats are rendered as decimal strings with 18 significant digits (one
more than a double needs to round-trip), so rerunning an experiment with
the same configuration reproduces the file byte for byte.  Every file
starts with a single comment line holding the resolved configuration,
seed included.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path


def fmt18(x) -> str:
    """18-significant-digit decimal rendering of a float-like value."""
    v = float(x)
    if v != v or v in (float("inf"), float("-inf")):
        raise ValueError("non-finite value in artifact")
    return format(v, ".18g")


def render_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return ""
    if isinstance(v, int):
        return str(v)
    if isinstance(v, (float, Fraction)):
        return fmt18(v)
    return str(v)


def config_comment(config: dict) -> str:
    parts = [f"{k}={render_value(v)}" for k, v in sorted(config.items())]
    return "# " + " ".join(parts)


def write_csv(path, header, rows, config: dict) -> None:
    """CSV with a leading config comment line; LF line endings."""
    lines = [config_comment(config), ",".join(header)]
    for row in rows:
        lines.append(",".join(render_value(v) for v in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")


def _stringify(obj):
    if isinstance(obj, dict):
        return {str(k): _stringify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_stringify(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, int):
        return obj
    if isinstance(obj, (float, Fraction)):
        return fmt18(obj)
    return str(obj)


def write_json(path, obj, config: dict) -> None:
    """JSON body (floats stringified at 18 digits, keys sorted) preceded
    by the same comment line as the CSV writers."""
    body = json.dumps(_stringify(obj), sort_keys=True, indent=2)
    Path(path).write_text(config_comment(config) + "\n" + body + "\n",
                          encoding="ascii")


def read_body(path) -> str:
    """File contents without the leading comment line."""
    text = Path(path).read_text(encoding="ascii")
    lines = text.split("\n")
    if lines and lines[0].startswith("#"):
        lines = lines[1:]
    return "\n".join(lines)


def load_json(path):
    return json.loads(read_body(path))


def summary_rows(summary):
    """Per-sample rows (sample_index, beta, c, hit_count, first_hit_q)."""
    rows = []
    for r in summary.results:
        b = fmt18(r.beta.as_float)
        for c in summary.config.c_list:
            fh = r.first_hit[c]
            rows.append((r.index, b, fmt18(c), r.counts[c],
                         fh if fh is not None else ""))
    return rows


SAMPLE_HEADER = ("sample_index", "beta", "c", "hit_count", "first_hit_q")
HIT_HEADER = ("q", "a", "distance", "threshold")
SCANF_HEADER = ("j", "f_value", "frac_distance")
OVERLAP_HEADER = ("q", "r", "gcd", "measure_q", "measure_r",
                  "measure_intersection", "bound", "satisfied")
SERIES_HEADER = ("x", "G", "H", "psiG", "psiH", "reference",
                 "ratio_G", "ratio_H")


def write_summary_csv(path, summary, config: dict) -> None:
    write_csv(path, SAMPLE_HEADER, summary_rows(summary), config)


def summary_json(summary) -> dict:
    cfg = summary.config
    return {
        "samples": cfg.samples,
        "seed": cfg.seed,
        "per_c": {
            fmt18(c): {
                "fraction_with_hit": fmt18(summary.fraction_with_hit[c]),
                "mean_count": fmt18(summary.mean_count[c]),
                "median_count": fmt18(summary.median_count[c]),
            }
            for c in cfg.c_list
        },
    }
