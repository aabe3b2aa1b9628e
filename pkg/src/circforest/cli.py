"""Command line front end.

Every command emits ``{"family", "command", "rows": [...]}`` (JSON), the
same rows as CSV with a header, or an aligned plain table. Exact integers
are written as decimal strings. Exit status: 0 success, 1 bad input,
2 a computed value broke a proven identity (no document is printed).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import mpmath as mp

from . import asymptotics
from .arithmetic import verify_arithmetic_structure
from .dsl import format_family, parse_family
from .engine import char_poly, forest_count, forest_count_oracle, q_at_minus_one
from .errors import DomainError, InvariantViolation
from .families import build_family
from .model import edge_list_text, expand, graph_text

log = logging.getLogger("circforest")

COMMANDS = ("poly", "count", "oracle", "verify", "mahler", "converge", "expand")
RANGE_COMMANDS = ("count", "oracle", "verify")
PRECISION_ENV = "CIRCFOREST_PRECISION"
SLOW_N = 2000
DEFAULTS = {"format": None, "precision": asymptotics.DEFAULT_PRECISION, "n_max": 50, "n_min": 3, "jobs": 1}


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; 2 is reserved here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="circforest", description="Rooted spanning forests of circulant foliations.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--family", help='family descriptor, e.g. "GP(n,2)"')
    parser.add_argument("--n", type=int, help="number of layers")
    parser.add_argument("--range", dest="n_range", help="inclusive range a..b of n")
    parser.add_argument("--format", help="json, csv or table; expand also takes edge-list, graph-text")
    parser.add_argument("--precision", type=int, help=f"decimal digits for numerics (env {PRECISION_ENV})")
    parser.add_argument("--n-max", dest="n_max", type=int, help="largest n for converge")
    parser.add_argument("--n-min", dest="n_min", type=int, help="smallest n for converge")
    parser.add_argument("--jobs", type=int, help="worker processes for range sweeps")
    parser.add_argument("--config", help="JSON file with defaults for any of the flags above")
    parser.add_argument("--allow-disconnected", action="store_true", default=None,
                        help="accept a disconnected base graph with a warning")
    return parser


def parse_range(text: str) -> list[int]:
    try:
        lo, hi = (int(x) for x in text.split(".."))
    except ValueError:
        raise DomainError(f"bad range {text!r}; expected a..b") from None
    if lo < 1 or hi < lo:
        raise DomainError(f"range {text!r} must satisfy 1 <= a <= b")
    return list(range(lo, hi + 1))


def resolve_options(args: argparse.Namespace) -> dict:
    """Flags win over the config file, which wins over the environment."""
    opts = dict(DEFAULTS)
    env = os.environ.get(PRECISION_ENV)
    if env:
        try:
            opts["precision"] = int(env)
        except ValueError:
            raise DomainError(f"{PRECISION_ENV} must be an integer, got {env!r}") from None
    if args.config:
        try:
            with open(args.config) as fh:
                config = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise DomainError(f"cannot read config {args.config}: {exc}") from None
        for key, value in config.items():
            opts[key.replace("-", "_")] = value
    for key, value in vars(args).items():
        if value is not None and key != "config":
            opts[key] = value
    if "range" in opts:
        opts.setdefault("n_range", opts.pop("range"))
    return opts


def _num(x, digits) -> str:
    return mp.nstr(x, digits, strip_zeros=False) if x is not None else ""


def _count_row(report) -> dict:
    return {
        "n": report.n,
        "f": str(report.f_n),
        "f_base": str(report.f_base),
        "formal": report.formal,
        "method": report.method,
    }


def _row(command: str, spec, n: int) -> dict:
    if command == "count":
        return _count_row(forest_count(spec, n))
    if command == "oracle":
        if not spec.is_valid_n(n):
            return {"n": n, "skipped": f"n must exceed {2 * spec.max_jump}"}
        return _count_row(forest_count_oracle(spec, n))
    if command == "verify":
        if not spec.is_valid_n(n):
            return {"n": n, "skipped": f"n must exceed {2 * spec.max_jump}"}
        r = verify_arithmetic_structure(spec, n)
        return {
            "n": r.n,
            "f": str(r.f_n),
            "f_base": str(r.f_base),
            "q_minus_one": str(r.q_minus_one),
            "p": str(r.square_free_p),
            "a": str(r.a_n),
            "parity": r.parity,
            "verified": r.verified,
        }
    raise ValueError(command)


def _sweep(command, spec, ns, jobs):
    if jobs > 1 and len(ns) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_row, [command] * len(ns), [spec] * len(ns), ns))
    return [_row(command, spec, n) for n in ns]


def execute(opts: dict) -> tuple[str, str | None]:
    """Run a command; returns (canonical family text, rendered document)."""
    command = opts["command"]
    if not opts.get("family"):
        raise DomainError("--family is required")
    desc = parse_family(opts["family"])
    spec = build_family(desc, allow_disconnected=bool(opts.get("allow_disconnected")))
    family = format_family(desc)
    fmt = opts["format"] or ("edge-list" if command == "expand" else "json")
    precision = int(opts["precision"])
    if precision < 5:
        raise DomainError("precision must be at least 5 digits")

    ns = None
    if opts.get("n_range") is not None:
        ns = parse_range(str(opts["n_range"]))
    if opts.get("n") is not None:
        if ns is not None:
            raise DomainError("give either --n or --range, not both")
        ns = [int(opts["n"])]
    if desc.n is not None:
        if ns is not None and ns != [desc.n]:
            raise DomainError(f"family binds n={desc.n}, which conflicts with the requested n")
        ns = [desc.n]
    if ns is not None and any(n < 1 for n in ns):
        raise DomainError("n must be positive")
    if ns is not None and max(ns) > SLOW_N:
        log.warning("n > %d: the resultant determinant grows with n and may be slow", SLOW_N)

    if command == "expand":
        if not ns or len(ns) != 1:
            raise DomainError("expand needs a single --n")
        graph = expand(spec, ns[0])
        if fmt in ("json", "csv", "table"):
            rows = []
            for u, v, c in graph.edges:
                (ku, iu), (kv, iv) = graph.label(u), graph.label(v)
                rows.append({"u": f"{ku + 1},{iu + 1}", "v": f"{kv + 1},{iv + 1}", "multiplicity": c})
            return family, render(family, command, rows, fmt)
        if fmt == "edge-list":
            return family, edge_list_text(graph)
        if fmt == "graph-text":
            return family, graph_text(graph, family)
        raise DomainError(f"unknown format {fmt!r} for expand")

    if fmt not in ("json", "csv", "table"):
        raise DomainError(f"unknown format {fmt!r}")

    if command == "poly":
        bundle = char_poly(spec)
        rows = [{
            "q": [str(c) for c in bundle.q.coeffs],
            "f_z": [str(c) for c in bundle.f_z.coeffs],
            "s": bundle.shift,
            "eta": str(bundle.eta),
            "m": bundle.m,
            "m_prime": bundle.m_prime,
            "q1": str(bundle.base_count),
            "qm1": str(q_at_minus_one(spec)),
        }]
    elif command in RANGE_COMMANDS:
        if not ns:
            raise DomainError(f"{command} needs --n or --range")
        rows = _sweep(command, spec, ns, max(1, int(opts["jobs"])))
    elif command == "mahler":
        r = asymptotics.mahler_report(spec, precision)
        rows = [{
            "a_roots": _num(r.a_roots, precision),
            "a_quadrature": _num(r.a_quadrature, precision),
            "discrepancy": _num(r.discrepancy, 5),
            "error_roots": _num(r.error_roots, 5),
            "error_quadrature": _num(r.error_quadrature, 5),
            "roots": [_num(w, precision) for w in r.roots_used.roots],
        }]
    elif command == "converge":
        n_max, n_min = int(opts["n_max"]), int(opts["n_min"])
        if n_max < 3 or n_min < 1 or n_min > n_max:
            raise DomainError("converge needs 1 <= n-min <= n-max and n-max >= 3")
        report = asymptotics.convergence_report(spec, n_max, n_min=n_min, precision=precision)
        rows = [
            {
                "n": row.n,
                "nth_root": _num(row.nth_root, 15),
                "ratio": _num(row.ratio, 15),
                "A": _num(report.growth_constant, 15),
                "formal": row.formal,
            }
            for row in report.rows
        ]
    else:
        raise DomainError(f"unknown command {command!r}")
    return family, render(family, command, rows, fmt)


def _cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list):
        return " ".join(_cell(v) for v in value)
    return str(value)


def _columns(rows) -> list[str]:
    cols: list[str] = []
    for row in rows:
        for key in row:
            if key not in cols:
                cols.append(key)
    if "skipped" in cols:
        cols.remove("skipped")
        cols.append("skipped")
    return cols


def render(family: str, command: str, rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"family": family, "command": command, "rows": rows}, indent=2) + "\n"
    cols = _columns(rows)
    table = [[_cell(row.get(c, "")) for c in cols] for row in rows]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(cols)
        writer.writerows(table)
        return buf.getvalue()
    widths = [max([len(c)] + [len(r[i]) for r in table]) for i, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
    lines += ["  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() for r in table]
    return "\n".join(lines) + "\n"


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        opts = resolve_options(args)
        _, document = execute(opts)
    except InvariantViolation as exc:
        print(f"circforest: invariant violated: {exc}", file=stderr)
        return 2
    except DomainError as exc:
        print(f"circforest: error: {exc}", file=stderr)
        return 1
    stdout.write(document)
    return 0


def main(argv=None):
    logging.basicConfig(format="circforest: %(levelname)s: %(message)s")
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
