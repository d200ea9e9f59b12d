"""Command line front end: evaluate, tabulate, verify, identify.

Exit codes: 0 on success (for `verify`, only when the suite passes),
1 when a verify suite fails, 2 on bad input or a domain error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import charts, families, harness
from ._scalars import get_backend
from .errors import AskeyError
from .polyrec import build_monic_sequence, evaluate


def _parse_params(text: str) -> dict:
    out = {}
    if not text:
        return out
    for chunk in text.split(","):
        if "=" not in chunk:
            raise ValueError(f"bad --params entry {chunk!r} (expected name=value)")
        key, _, raw = chunk.partition("=")
        raw = raw.strip()
        try:
            val: complex | float = float(raw)
        except ValueError:
            val = complex(raw.replace(" ", ""))
        out[key.strip()] = val
    return out


def _parse_coords(text: str, chart: str) -> tuple:
    parts = [p for p in text.split(",") if p.strip()]
    dim = charts.chart_dim(chart)
    if len(parts) != dim:
        raise ValueError(f"chart {chart} needs {dim} coordinates, got {len(parts)}")
    be = get_backend()
    return tuple(be.scalar(float(p)) for p in parts)


def _cmd_eval(args) -> int:
    inst = families.FamilyInstance(args.family, _parse_params(args.params))
    rc = families.recurrence_coeffs(inst)
    polys = build_monic_sequence(rc, args.n)
    value = evaluate(polys[args.n], args.x)
    if isinstance(value, complex) and abs(value.imag) <= 1e-12 * (1 + abs(value)):
        value = value.real
    print(repr(value))
    return 0


def _cmd_eval_chart(args) -> int:
    p = charts.ChartPoint(args.chart, _parse_coords(args.coords, args.chart))
    rc = charts.chart_recurrence(p)
    polys = build_monic_sequence(rc, args.n)
    print(repr(float(evaluate(polys[args.n], args.x))))
    return 0


def _cmd_table(args) -> int:
    coords = _parse_coords(args.coords, args.chart)
    print(harness.emit_table(args.chart, coords, args.nmax, format=args.format))
    return 0


def _cmd_verify(args) -> int:
    config = {}
    for key in ("seed", "samples", "nmax", "tol", "backend"):
        val = getattr(args, key)
        if val is not None:
            config["n_max" if key == "nmax" else key] = val
    report = harness.run_suite(args.suite, config)
    print(json.dumps(report.to_json(), sort_keys=True))
    return 0 if report.passed else 1


def _cmd_identify(args) -> int:
    with open(args.input, "r", encoding="utf-8") as fh:
        samples = json.load(fh)
    result = harness.identify(samples)
    print(json.dumps({"schema": 1, "candidates": list(result.candidates)}, sort_keys=True))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="askeycharts",
        description="Recurrence-coefficient charts for the Askey scheme.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a monic family polynomial")
    p.add_argument("--family", required=True, choices=sorted(families.FAMILY_PARAMS))
    p.add_argument("--params", default="", help="comma list name=value")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", type=float, required=True)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("eval-chart", help="evaluate a monic chart polynomial")
    p.add_argument("--chart", required=True, choices=list(charts.CHARTS))
    p.add_argument("--coords", required=True, help="comma list of coordinates")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", type=float, required=True)
    p.set_defaults(func=_cmd_eval_chart)

    p = sub.add_parser("table", help="emit a coefficient table at a chart point")
    p.add_argument("--chart", required=True, choices=list(charts.CHARTS))
    p.add_argument("--coords", required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--format", default="csv", choices=("csv", "json"))
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("verify", help="run a verification suite, JSON report on stdout")
    p.add_argument("suite", choices=list(harness.SUITES))
    p.add_argument("--seed", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--nmax", type=int)
    p.add_argument("--tol", type=float)
    p.add_argument("--backend", choices=("binary64", "highprec"))
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("identify", help="rank charts/families fitting sampled (n, B, C)")
    p.add_argument("--input", required=True, help="JSON array of {n, B, C} objects")
    p.set_defaults(func=_cmd_identify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (AskeyError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
