"""Command-line front end.

Every subcommand resolves its configuration from defaults, an optional
`--config` file (one `key = value` per line, `#` comments, unknown keys
rejected) and command-line flags, flags winning.  The resolved
configuration, seed included, is written as the first comment line of
every artifact, and identical configurations reproduce artifacts byte
for byte.

Exit codes: 0 success, 1 validation/usage error, 2 precision-floor
abort (the requested precision cannot resolve the thresholds asked
for).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import artifacts
from .approx import lemma_key_family
from .betaspec import resolve_beta
from .chain import run_witness
from .divisors import IterLogWeight, series
from .eqsets import (check_size, density_report, overlap_report,
                     overlap_sweep, quantized_family, tail_union_measure)
from .experiments import (ExperimentConfig, run_critical_experiment,
                          run_f_experiment)
from .fixedpoint import PrecisionFloorError
from .rubin import make_params, scan_small_divisors
from .scans import CriticalForm, critical_hits, reduce_49
from .torus import FULL_CIRCLE, IntervalUnion, TorusInterval


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; the contract wants 1
    def error(self, message):
        raise UsageError(message)


def _residue(text: str):
    y, z = (int(v) for v in text.split(","))
    return y, z


def _clist(text: str):
    return tuple(float(v) for v in text.split(","))


def _grid(text: str):
    return [int(float(v)) for v in text.split(",")]


def build_parser():
    top = _Parser(prog="smalldiv", add_help=True)
    sub = top.add_subparsers(dest="command")
    common = _Parser(add_help=False)
    common.add_argument("--threads", type=int, default=None,
                        help="worker threads, 0 = auto")
    common.add_argument("--precision", type=int, default=None,
                        help="beta precision in bits (96..128)")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--config", default=None, help="key = value file")
    common.add_argument("--out", default=None, help="artifact path")

    parsers = {}

    def cmd(name, **kw):
        parsers[name] = sub.add_parser(name, parents=[common], **kw)
        return parsers[name]

    p = cmd("scan-f", help="small-divisor scan of the two-sine model")
    p.add_argument("--n", type=int)
    p.add_argument("--rho", type=float)
    p.add_argument("--beta")
    p.add_argument("--c", type=float)
    p.add_argument("--jmax", type=int)
    p.add_argument("--samples", type=int, help="sampled-beta experiment mode")
    p.add_argument("--c-list", type=_clist)
    p.add_argument("--summary", help="optional JSON summary path")

    p = cmd("critical", help="endpoint-form hits / sampled experiment")
    p.add_argument("--form", type=int, choices=(48, 49, 410, 411))
    p.add_argument("--mu", type=float)
    p.add_argument("--c", type=float)
    p.add_argument("--beta")
    p.add_argument("--qmax", type=int)
    p.add_argument("--residue", type=_residue)
    p.add_argument("--samples", type=int)
    p.add_argument("--c-list", type=_clist)
    p.add_argument("--summary")

    p = cmd("limsup", help="measure of a tail union of target arc sets")
    p.add_argument("--q0", type=int)
    p.add_argument("--q1", type=int)
    p.add_argument("--c", type=float)
    p.add_argument("--x", type=float)
    p.add_argument("--B", type=float)
    p.add_argument("--residue", type=_residue)

    p = cmd("eq-size", help="exact disjointness/measure of one arc set")
    p.add_argument("--q", type=int)
    p.add_argument("--qlo", type=int)
    p.add_argument("--qhi", type=int)
    p.add_argument("--c", type=float)
    p.add_argument("--x", type=float)
    p.add_argument("--B", type=float)

    p = cmd("overlap", help="pairwise intersection bound sweep")
    p.add_argument("--q", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--qlo", type=int)
    p.add_argument("--qhi", type=int)
    p.add_argument("--c", type=float)
    p.add_argument("--x", type=float)
    p.add_argument("--B", type=float)

    p = cmd("density", help="relative density of one arc set in an arc")
    p.add_argument("--q", type=int)
    p.add_argument("--c", type=float)
    p.add_argument("--x", type=float)
    p.add_argument("--B", type=float)
    p.add_argument("--u-center", type=float)
    p.add_argument("--u-radius", type=float)

    p = cmd("divisor-series", help="weighted divisor partial sums")
    p.add_argument("--grid", type=_grid)
    p.add_argument("--k", type=int)
    p.add_argument("--eps", type=float)
    p.add_argument("--y", type=int)
    p.add_argument("--z", type=int)
    p.add_argument("--psi-c", type=float)
    p.add_argument("--psi-mu", type=float)

    p = cmd("chain", help="witness construction and inequality replay")
    p.add_argument("--n", type=int)
    p.add_argument("--rho", type=float)
    p.add_argument("--j", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--c", type=float)

    p = cmd("reduce49", help="odd-denominator reformulation check")
    p.add_argument("--beta")
    p.add_argument("--c", type=float)
    p.add_argument("--qmax", type=int)

    return top, parsers


_GLOBAL_DEFAULTS = {"threads": 0, "precision": 128, "seed": 0}

_CMD_DEFAULTS = {
    "scan-f": {"n": 3, "rho": 2.0, "c_list": None, "samples": None},
    "critical": {"form": 48, "mu": 1.0, "residue": (1, 0),
                 "c_list": None, "samples": None},
    "limsup": {"x": 0.0, "B": 0.0, "residue": (1, 0)},
    "eq-size": {"x": 0.0, "B": 0.0},
    "overlap": {"qlo": 50, "qhi": 400, "x": 0.0, "B": 0.0},
    "density": {"x": 0.0, "B": 0.0, "u_center": 0.0, "u_radius": 0.5},
    "divisor-series": {"k": 3, "eps": 1.0, "y": 1, "z": 0},
    "chain": {},
    "reduce49": {},
}

_REQUIRED = {
    "scan-f": ("c", "jmax"),
    "critical": ("c", "qmax"),
    "limsup": ("q0", "q1", "c"),
    "eq-size": ("c",),
    "overlap": ("c",),
    "density": ("q", "c"),
    "divisor-series": ("grid",),
    "chain": ("n", "rho", "j", "k", "c"),
    "reduce49": ("beta", "c", "qmax"),
}


def _parse_config_file(path, typemap):
    values = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key = value")
        key, _, val = line.partition("=")
        dest = key.strip().replace("-", "_")
        if dest not in typemap:
            raise UsageError(f"{path}:{lineno}: unknown key {key.strip()!r}")
        conv = typemap[dest] or str
        try:
            values[dest] = conv(val.strip())
        except (TypeError, ValueError) as exc:
            raise UsageError(f"{path}:{lineno}: bad value for {dest}: {exc}")
    return values


def _resolve(args, parser) -> dict:
    """defaults < config file < flags, as a plain dict."""
    typemap = {a.dest: a.type for a in parser._actions
               if a.dest not in ("help", "config", "out")}
    typemap["out"] = str
    cfg = dict(_GLOBAL_DEFAULTS)
    cfg.update(_CMD_DEFAULTS[args.command])
    if args.config is not None:
        cfg.update(_parse_config_file(args.config, typemap))
    for dest in typemap:
        v = getattr(args, dest, None)
        if v is not None:
            cfg[dest] = v
    for dest in typemap:
        cfg.setdefault(dest, None)
    if not 96 <= cfg["precision"] <= 128:
        raise UsageError("precision must be between 96 and 128 bits")
    if cfg["threads"] < 0:
        raise UsageError("threads must be nonnegative")
    for dest in _REQUIRED[args.command]:
        if cfg.get(dest) is None:
            raise UsageError(f"missing required option --{dest.replace('_', '-')}")
    return cfg


def _comment_config(cfg) -> dict:
    out = {}
    for k, v in cfg.items():
        # paths do not affect results; keeping them out preserves
        # byte-identity across output locations
        if v is None or k in ("config", "out", "summary"):
            continue
        if isinstance(v, (tuple, list)):
            v = ",".join(str(x) for x in v)
        out[k] = v
    return out


def _floor_check(threshold: float, precision: int):
    if threshold < 2.0 ** -precision:
        raise PrecisionFloorError(
            f"threshold {threshold:.3e} below the {precision}-bit resolution"
        )


def _emit_csv(cfg, header, rows):
    meta = _comment_config(cfg)
    if cfg.get("out"):
        artifacts.write_csv(cfg["out"], header, rows, meta)
    else:
        sys.stdout.write(artifacts.config_comment(meta) + "\n")
        sys.stdout.write(",".join(header) + "\n")
        for row in rows:
            sys.stdout.write(",".join(artifacts.render_value(v) for v in row) + "\n")


def _emit_json(cfg, obj):
    meta = _comment_config(cfg)
    if cfg.get("out"):
        artifacts.write_json(cfg["out"], obj, meta)
    else:
        import json
        sys.stdout.write(artifacts.config_comment(meta) + "\n")
        sys.stdout.write(
            json.dumps(artifacts._stringify(obj), sort_keys=True, indent=2) + "\n"
        )


def _beta(cfg):
    return resolve_beta(cfg["beta"], seed=cfg["seed"], precision=cfg["precision"])


def _override(cfg):
    # in experiment mode "rand" (or no beta) means fresh per-sample draws
    b = cfg.get("beta")
    return None if b in (None, "rand") else b


def _run_scan_f(cfg) -> int:
    _floor_check(cfg["c"] / cfg["jmax"], cfg["precision"])
    c_list = cfg["c_list"] or (cfg["c"],)
    if cfg["samples"]:
        ecfg = ExperimentConfig(
            samples=cfg["samples"], seed=cfg["seed"], c_list=c_list,
            j_max=cfg["jmax"], n=cfg["n"], rho=cfg["rho"],
            beta_override=_override(cfg), threads=cfg["threads"],
        )
        summary = run_f_experiment(ecfg)
        _emit_csv(cfg, artifacts.SAMPLE_HEADER, artifacts.summary_rows(summary))
        if cfg.get("summary"):
            artifacts.write_json(cfg["summary"], artifacts.summary_json(summary),
                                 _comment_config(cfg))
        return 0
    if cfg["beta"] is None:
        raise UsageError("missing required option --beta")
    p = make_params(cfg["n"], cfg["rho"], _beta(cfg))
    hits = scan_small_divisors(p, cfg["c"], cfg["jmax"], threads=cfg["threads"])
    rows = [(h.j, h.f_value, h.frac_distance) for h in hits]
    _emit_csv(cfg, artifacts.SCANF_HEADER, rows)
    return 0


def _run_critical(cfg) -> int:
    _floor_check(cfg["c"] / cfg["qmax"] ** cfg["mu"], cfg["precision"])
    c_list = cfg["c_list"] or (cfg["c"],)
    if cfg["samples"]:
        ecfg = ExperimentConfig(
            samples=cfg["samples"], seed=cfg["seed"], c_list=c_list,
            q_max=cfg["qmax"], form=cfg["form"], mu=cfg["mu"],
            residue=cfg["residue"], beta_override=_override(cfg),
            threads=cfg["threads"],
        )
        summary = run_critical_experiment(ecfg)
        _emit_csv(cfg, artifacts.SAMPLE_HEADER, artifacts.summary_rows(summary))
        if cfg.get("summary"):
            artifacts.write_json(cfg["summary"], artifacts.summary_json(summary),
                                 _comment_config(cfg))
        return 0
    if cfg["beta"] is None:
        raise UsageError("missing required option --beta")
    hits = critical_hits(_beta(cfg), CriticalForm(cfg["form"], cfg["mu"], cfg["c"]),
                         cfg["qmax"], residue=cfg["residue"],
                         threads=cfg["threads"])
    rows = [(h.q, h.a, h.distance, h.threshold) for h in hits]
    _emit_csv(cfg, artifacts.HIT_HEADER, rows)
    return 0


def _run_limsup(cfg) -> int:
    psi, fam = lemma_key_family(cfg["x"], cfg["B"], cfg["c"])
    m = tail_union_measure(cfg["q0"], cfg["q1"], psi, fam, FULL_CIRCLE,
                           residue=cfg["residue"])
    _emit_json(cfg, {"q0": cfg["q0"], "q1": cfg["q1"], "measure": float(m)})
    return 0


def _eq_report_row(rep):
    return (rep.q, rep.precondition_value, rep.precondition_ok,
            rep.disjoint, rep.measure, rep.matches_2psi)


def _run_eq_size(cfg) -> int:
    psi, fam = lemma_key_family(cfg["x"], cfg["B"], cfg["c"])
    if cfg.get("q"):
        rep = check_size(cfg["q"], psi, fam)
        _emit_json(cfg, {
            "q": rep.q, "precondition_value": float(rep.precondition_value),
            "precondition_ok": rep.precondition_ok, "disjoint": rep.disjoint,
            "measure": float(rep.measure), "matches_2psi": rep.matches_2psi,
        })
        return 0
    if not (cfg.get("qlo") and cfg.get("qhi")):
        raise UsageError("need --q or both --qlo and --qhi")
    header = ("q", "precondition_value", "precondition_ok", "disjoint",
              "measure", "matches_2psi")
    rows = [_eq_report_row(check_size(q, psi, fam))
            for q in range(cfg["qlo"], cfg["qhi"] + 1)]
    _emit_csv(cfg, header, rows)
    return 0


def _overlap_row(rep):
    return (rep.q, rep.r, rep.gcd_qr, rep.measure_q, rep.measure_r,
            rep.measure_intersection, rep.bound, rep.satisfied)


def _run_overlap(cfg) -> int:
    if cfg.get("q") and cfg.get("r"):
        psi, fam = lemma_key_family(cfg["x"], cfg["B"], cfg["c"])
        rep = overlap_report(cfg["q"], cfg["r"], psi, fam)
        _emit_csv(cfg, artifacts.OVERLAP_HEADER, [_overlap_row(rep)])
        return 0
    psi, fam = quantized_family(cfg["x"], cfg["B"], cfg["c"], cfg["qhi"])
    reports = overlap_sweep(psi, fam, cfg["qlo"], cfg["qhi"])
    _emit_csv(cfg, artifacts.OVERLAP_HEADER,
              [_overlap_row(r) for r in reports])
    return 0


def _run_density(cfg) -> int:
    psi, fam = lemma_key_family(cfg["x"], cfg["B"], cfg["c"])
    from fractions import Fraction
    if cfg["u_radius"] >= 0.5:
        U = FULL_CIRCLE
    else:
        U = IntervalUnion.from_arcs(
            [TorusInterval(Fraction(cfg["u_center"]), Fraction(cfg["u_radius"]))]
        )
    rep = density_report(cfg["q"], U, psi, fam)
    _emit_json(cfg, {"q": rep.q, "ratio": float(rep.ratio),
                     "passes_half": rep.passes_half})
    return 0


def _run_divisor_series(cfg) -> int:
    w = IterLogWeight(cfg["k"], cfg["eps"])
    psi = None
    if cfg.get("psi_c"):
        from .approx import ApproxFunction
        psi = ApproxFunction.power(cfg["psi_c"], cfg.get("psi_mu") or 1.0)
    s = series(cfg["grid"], w, psi=psi, y=cfg["y"], z=cfg["z"])
    rows = [
        (s.grid[i], s.G[i], s.H[i], s.psiG[i], s.psiH[i],
         s.reference[i], s.ratio_G[i], s.ratio_H[i])
        for i in range(len(s.grid))
    ]
    _emit_csv(cfg, artifacts.SERIES_HEADER, rows)
    return 0


def _run_chain(cfg) -> int:
    rep = run_witness(cfg["n"], cfg["rho"], cfg["j"], cfg["k"], cfg["c"])
    _emit_json(cfg, {
        "j": rep.j,
        "final_pass": rep.final_pass,
        "all_steps_pass": rep.all_steps_pass,
        "steps": [
            {"name": s.name, "lhs": s.lhs, "rhs": s.rhs,
             "passed": s.passed, "margin": s.margin}
            for s in rep.steps
        ],
    })
    return 0


def _run_reduce49(cfg) -> int:
    _floor_check(cfg["c"] / cfg["qmax"], cfg["precision"])
    chk = reduce_49(_beta(cfg), cfg["c"], cfg["qmax"], threads=cfg["threads"])
    _emit_json(cfg, {
        "direct_count": len(chk.direct),
        "reduced_count": len(chk.reduced),
        "exact_bijection": chk.exact_bijection,
        "bracket_low_ok": chk.bracket_low_ok,
        "bracket_high_ok": chk.bracket_high_ok,
        "boundary_count": chk.boundary_count,
        "passed": chk.passed,
    })
    return 0


_RUNNERS = {
    "scan-f": _run_scan_f,
    "critical": _run_critical,
    "limsup": _run_limsup,
    "eq-size": _run_eq_size,
    "overlap": _run_overlap,
    "density": _run_density,
    "divisor-series": _run_divisor_series,
    "chain": _run_chain,
    "reduce49": _run_reduce49,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    top, parsers = build_parser()
    if not argv:
        top.print_usage(sys.stderr)
        return 1
    try:
        args = top.parse_args(argv)
        if args.command is None:
            top.print_usage(sys.stderr)
            return 1
        cfg = _resolve(args, parsers[args.command])
        cfg["command"] = args.command
        return _RUNNERS[args.command](cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except PrecisionFloorError as exc:
        print(f"precision floor: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
