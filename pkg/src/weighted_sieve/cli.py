"""Command-line entry point.

    weighted-sieve sievefn F 5.6
    weighted-sieve bounds theorem2 --theta 0.95
    weighted-sieve series --modulus 30
    weighted-sieve count --a 1 --b 2 --N 100001 --variant small_prime --theta 0.8
    weighted-sieve reproduce --format text

Exit status: 0 success, 1 a reproduce check failed, 2 invalid parameters,
3 computation error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field
from typing import Any

from . import bounds, golden
from .counting import VARIANTS, RepresentationQuery, count_representations, as_prediction
from .errors import ComputationError, DomainError
from .sieve_functions import buchstab_w, lower_f, upper_F
from .singular_series import predicted_count, singular_coefficient

SCHEMA = 1
THREADS_ENV = "WEIGHTED_SIEVE_THREADS"
TOLERANCES = {"default": 1e-8, "strict": 1e-10}

ALLOWED = {
    "sievefn": {"function", "argument"},
    "bounds": {"which", "theta"},
    "series": {"modulus", "eps"},
    "count": {"a", "b", "N", "variant", "theta", "kappa", "c", "d", "r", "witnesses"},
    "reproduce": {"tolerance_profile"},
}


@dataclass
class RunConfig:
    command: str
    parameters: dict[str, Any] = field(default_factory=dict)
    output_format: str = "json"
    tolerance: float | None = None
    thread_count: int = 1

    def validate(self) -> None:
        if self.command not in ALLOWED:
            raise DomainError(f"unknown command {self.command!r}")
        unknown = set(self.parameters) - ALLOWED[self.command]
        if unknown:
            raise DomainError(f"unknown parameter(s) for {self.command}: {', '.join(sorted(unknown))}")
        if self.output_format not in ("json", "csv", "text"):
            raise DomainError(f"output_format must be json, csv or text")
        if self.thread_count < 1:
            raise DomainError("thread_count must be positive")
        if self.tolerance is not None and not 0 < self.tolerance < 1:
            raise DomainError("tolerance must lie in (0, 1)")


def _num(x: float) -> float | None:
    """Round to 12 significant digits; infinities become None."""
    if x is None or not math.isfinite(x):
        return None
    return float(f"{x:.12g}")


def _clean(obj):
    if isinstance(obj, float):
        return _num(obj)
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def _breakdown_report(b: bounds.BoundBreakdown) -> dict:
    rows = [{"component": k, "value": v, "weight": float(b.weights[k])}
            for k, v in b.components.items()]
    return {
        "theorem": b.label,
        "theta": getattr(b.profile, "theta", None),
        "rows": rows,
        "positive_total": b.positive_total,
        "negative_total": b.negative_total,
        "total": b.weighted_sum,
        "combined": b.combined,
        "notes": list(b.notes),
    }


def _sievefn(p, tol):
    fn = {"F": upper_F, "f": lower_f, "w": buchstab_w}.get(p.get("function"))
    if fn is None:
        raise DomainError("function must be one of F, f, w")
    arg = float(p["argument"])
    r = fn(arg)
    return {"function": p["function"], "argument": arg, "value": r.value, "abs_error": r.abs_error}


def _bounds(p, tol):
    which = p.get("which")
    if p.get("theta") is not None and which != "theorem2":
        raise DomainError("--theta applies only to bounds theorem2")
    if which == "theorem1":
        return _breakdown_report(bounds.theorem1_bound(tol=tol))
    if which == "theorem2":
        theta = float(p.get("theta") or bounds.THETA_PUBLISHED)
        return _breakdown_report(bounds.theorem2_margin(theta, tol=tol))
    if which == "theorem5":
        return _breakdown_report(bounds.theorem5_upper(tol=tol))
    if which == "threshold":
        t = bounds.theorem2_threshold(tol=tol)
        return {"theta_star": t, "margin_at_root": bounds.theorem2_margin(t, tol).combined}
    raise DomainError("bounds target must be theorem1, theorem2, theorem5 or threshold")


def _series(p, tol):
    s = singular_coefficient(int(p["modulus"]), float(p.get("eps") or 1e-12))
    return {
        "modulus": s.modulus,
        "odd_prime_factors": list(s.odd_prime_factors),
        "local_factor": s.local_factor,
        "twin_constant": s.twin_constant,
        "twin_abs_error": s.twin_abs_error,
        "value": s.value,
    }


def _count(p, tol, threads):
    def opt(name, conv):
        return conv(p[name]) if p.get(name) is not None else None

    q = RepresentationQuery(
        a=int(p["a"]), b=int(p["b"]), N=int(p["N"]),
        variant=p.get("variant") or "base",
        theta=opt("theta", float), kappa=opt("kappa", float),
        c=opt("c", int), d=opt("d", int), r=int(p.get("r") or 2),
    )
    res = count_representations(q, witnesses=bool(p.get("witnesses")),
                                 segments=threads, workers=threads)
    print(f"count finished in {res.elapsed:.3f} s", file=sys.stderr)
    out = {"a": q.a, "b": q.b, "N": q.N, "variant": q.variant, "theta": q.theta,
           "kappa": q.kappa, "c": q.c, "d": q.d, "r": q.r, "count": res.count}
    if q.N >= 3:
        out["empirical_ratio"] = res.count / predicted_count(as_prediction(q))
    if res.witnesses is not None:
        out["witnesses"] = [list(w) for w in res.witnesses]
    out["notes"] = list(res.notes)
    return out


def reproduce_rows(tol: float) -> list[dict]:
    """One row per published constant, with band and verdict."""
    rows = []
    for row_set, b in (
        (golden.THEOREM1_ROWS, bounds.theorem1_bound(tol=tol)),
        (golden.THEOREM2_ROWS, bounds.theorem2_margin(bounds.THETA_PUBLISHED, tol)),
        (golden.THEOREM5_ROWS, bounds.theorem5_upper(tol=tol)),
    ):
        for r in row_set:
            v = golden.breakdown_value(b, r.name)
            rows.append({"component": golden.display_name(r), "paper_value": r.printed,
                         "computed": v, "band": list(r.band()), "pass": r.passes(v)})
    t = bounds.theorem2_threshold(tol=tol)
    rows.append({"component": "theorem2:theta_star", "paper_value": "0.9409", "computed": t,
                 "band": [0.94, 0.9409], "pass": 0.94 < t <= 0.9409})
    return rows


def _reproduce(p, tol):
    profile = p.get("tolerance_profile") or "default"
    if profile not in TOLERANCES:
        raise DomainError("tolerance_profile must be strict or default")
    rows = reproduce_rows(tol if tol is not None else TOLERANCES[profile])
    return {"tolerance_profile": profile, "rows": rows, "all_pass": all(r["pass"] for r in rows)}


def _render(command: str, report: dict, fmt: str) -> str:
    report = _clean(report)
    if fmt == "json":
        return json.dumps({"schema": SCHEMA, "command": command, **report}, indent=2)
    rows = report.get("rows")
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        if rows:
            keys = list(rows[0])
            w.writerow(keys)
            for r in rows:
                w.writerow([json.dumps(r[k]) if isinstance(r[k], list) else r[k] for k in keys])
        else:
            keys = [k for k in report if not isinstance(report[k], list)]
            w.writerow(keys)
            w.writerow([report[k] for k in keys])
        return buf.getvalue().rstrip("\r\n")
    lines = []
    for k, v in report.items():
        if k == "rows":
            continue
        if isinstance(v, list) and k == "witnesses":
            v = f"{len(v)} pairs"
        lines.append(f"{k}: {v}")
    if rows:
        keys = list(rows[0])
        table = [keys] + [[str(r[k]) for k in keys] for r in rows]
        widths = [max(len(row[i]) for row in table) for i in range(len(keys))]
        lines.extend("  ".join(c.ljust(wd) for c, wd in zip(row, widths)).rstrip() for row in table)
    return "\n".join(lines)


def run(config: RunConfig) -> tuple[int, str]:
    """Execute one command; returns (exit status, serialized report)."""
    try:
        config.validate()
        p, tol = config.parameters, config.tolerance
        if config.command == "sievefn":
            report = _sievefn(p, tol)
        elif config.command == "bounds":
            report = _bounds(p, tol if tol is not None else bounds.DEFAULT_TOL)
        elif config.command == "series":
            report = _series(p, tol)
        elif config.command == "count":
            report = _count(p, tol, config.thread_count)
        else:
            report = _reproduce(p, tol)
    except (DomainError, KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, KeyError):
            exc = f"missing parameter {exc}"
        return 2, f"error: {exc}"
    except (ComputationError, ArithmeticError) as exc:
        return 3, f"computation error: {exc}"
    text = _render(config.command, report, config.output_format)
    if config.command == "reproduce" and not report["all_pass"]:
        return 1, text
    return 0, text


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default=argparse.SUPPRESS)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    common.add_argument("--tolerance", type=float, default=argparse.SUPPRESS,
                        help="quadrature tolerance override")

    parser = argparse.ArgumentParser(prog="weighted-sieve", description=__doc__.split("\n")[0],
                                     parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sievefn", parents=[common], help="evaluate F, f or w")
    p.add_argument("function", choices=("F", "f", "w"))
    p.add_argument("argument", type=float)

    p = sub.add_parser("bounds", parents=[common], help="theorem constants")
    p.add_argument("which", choices=("theorem1", "theorem2", "theorem5", "threshold"))
    p.add_argument("--theta", type=float)

    p = sub.add_parser("series", parents=[common], help="singular series C(m)")
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument("--eps", type=float)

    p = sub.add_parser("count", parents=[common], help="exact representation count")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--variant", choices=VARIANTS, default="base")
    p.add_argument("--theta", type=float)
    p.add_argument("--kappa", type=float)
    p.add_argument("--c", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--witnesses", action="store_true")

    p = sub.add_parser("reproduce", parents=[common], help="check every published constant")
    p.add_argument("--tolerance-profile", dest="tolerance_profile",
                   choices=tuple(TOLERANCES), default="default")
    return parser


def config_from_args(argv: list[str] | None = None) -> RunConfig:
    ns = vars(_parser().parse_args(argv))
    command = ns.pop("command")
    fmt = ns.pop("format", "json")
    tol = ns.pop("tolerance", None)
    threads = ns.pop("threads", None)
    if threads is None:
        env = os.environ.get(THREADS_ENV)
        threads = int(env) if env else 1
    return RunConfig(command, ns, fmt, tol, threads)


def main(argv: list[str] | None = None) -> int:
    try:
        config = config_from_args(argv)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    status, text = run(config)
    stream = sys.stderr if status in (2, 3) else sys.stdout
    print(text, file=stream)
    return status


if __name__ == "__main__":
    sys.exit(main())
