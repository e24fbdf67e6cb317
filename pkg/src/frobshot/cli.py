"""Command-line interface.

Every command prints an output record (``--format json``, the default) or a
flat table (``csv``/``md``).  Integers are written as decimal strings and
rationals as ``"p/q"`` so that no consumer loses precision.

Exit codes: 0 success, 2 input error, 3 guard exceeded, 4 certificate failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from importlib import resources
from typing import Any, Iterable, Sequence

from . import __version__
from .bounds import BoundReport, bound_bdr, bound_erdos_graham, bound_report, bound_selmer, \
    bound_vitek, frobenius_bound_esm
from .core import NTuple, reduce_tuple, validate_tuple
from .enclosure import DEFAULT_PRECISION
from .errors import FrobshotError, InputError
from .esmgen import Esm4Instance, asymptotic_report, verify_esm_family
from .lattice import (MAX_VORONOI_RANK, covering_radius_bounds, covering_radius_exact,
                      grassmann_coords, is_esm, lattice_determinant_sq, minkowski_holds,
                      null_lattice_basis, successive_minima)
from .semigroup import frobenius_exact

SCHEMA_VERSION = "1.0"

# (tuple, squared common minimum, minimum classical bound, its name, esm bound)
PUBLISHED_TABLES: dict[str, list[tuple[tuple[int, ...], int, int, str, int]]] = {
    "n4": [
        ((9337, 9961, 11593, 67367), 1802, 91235853, "bdr", 10995433),
        ((33199, 38351, 47759, 152057), 3218, 1346684400, "bdr", 55055950),
    ],
    "n5": [
        ((39221, 46967, 47869, 62839, 206749), 524, 1719019240, "bdr", 66231577),
        ((1867558, 2348176, 2918749, 5249843, 26695349), 5591, 4778060891200, "bdr",
         14595157176),
    ],
    "n6": [
        ((6595, 90709, 110483, 121833, 147472, 462217), 209, 1015946371, "erdos_graham",
         168600688),
        ((5958323, 14864655, 19945128, 28191201, 28507523, 117697394), 1915,
         134180083643479, "bdr", 104669816535),
    ],
}


# ---------------------------------------------------------------------------
# serialization

def to_jsonable(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, Fraction):
        return str(obj.numerator) if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, float):
        return obj
    if isinstance(obj, NTuple):
        return [str(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def parse_number(s: str) -> int | Fraction:
    """Inverse of :func:`to_jsonable` for numbers."""
    return Fraction(s) if "/" in s else int(s)


def make_record(command: str, tuple_: Sequence[int] | None, results: dict,
                elapsed_ms: float | None) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "input": None if tuple_ is None else [str(x) for x in tuple_],
        "results": to_jsonable(results),
        "timing_ms": elapsed_ms,
    }


def error_record(command: str, exc: BaseException) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "error": {"type": type(exc).__name__, "message": str(exc)},
    }


def load_schema() -> dict:
    text = resources.files("frobshot").joinpath("schema/output.schema.json").read_text()
    return json.loads(text)


def _flatten(prefix: str, obj: Any, out: dict) -> None:
    if isinstance(obj, dict):
        for k, v in obj.items():
            _flatten(f"{prefix}.{k}" if prefix else k, v, out)
    elif isinstance(obj, list) and any(isinstance(v, (dict, list)) for v in obj):
        for i, v in enumerate(obj):
            _flatten(f"{prefix}.{i}", v, out)
    elif isinstance(obj, list):
        out[prefix] = " ".join("" if v is None else str(v) for v in obj)
    else:
        out[prefix] = "" if obj is None else str(obj)


def record_rows(record: dict) -> tuple[list[str], list[list[str]]]:
    """Headers and rows for csv/md: the record's ``rows`` list if it has one, else key/value pairs."""
    results = record.get("results", {})
    if isinstance(results.get("rows"), list) and results["rows"]:
        flat = []
        for row in results["rows"]:
            d: dict = {}
            _flatten("", row, d)
            flat.append(d)
        headers = list(dict.fromkeys(k for d in flat for k in d))
        return headers, [[d.get(h, "") for h in headers] for d in flat]
    d = {}
    _flatten("", {k: v for k, v in record.items() if k != "results"}, d)
    _flatten("results", results, d)
    return ["key", "value"], [[k, v] for k, v in d.items()]


def render(records: Iterable[dict], fmt: str, out) -> None:
    records = list(records) if fmt != "json" else records
    if fmt == "json":
        for rec in records:
            out.write(json.dumps(rec, sort_keys=False) + "\n")
        return
    if fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        if len(records) > 1 or records and records[0].get("command") == "sweep":
            # one row per record
            flat = []
            for rec in records:
                d: dict = {}
                _flatten("", rec, d)
                flat.append(d)
            headers = list(dict.fromkeys(k for d in flat for k in d))
            if flat:
                writer.writerow(headers)
            for d in flat:
                writer.writerow([d.get(h, "") for h in headers])
            return
        for rec in records:
            headers, rows = record_rows(rec)
            writer.writerow(headers)
            writer.writerows(rows)
        return
    if fmt == "md":
        if len(records) > 1 or records and records[0].get("command") == "sweep":
            flat = []
            for rec in records:
                d = {}
                _flatten("", rec, d)
                flat.append(d)
            if not flat:
                return
            headers = list(dict.fromkeys(k for d in flat for k in d))
            rows = [[d.get(h, "") for h in headers] for d in flat]
            _write_md(out, headers, rows)
            return
        for rec in records:
            headers, rows = record_rows(rec)
            _write_md(out, headers, rows)
        return
    raise ValueError(f"unknown format {fmt!r}")


def _write_md(out, headers, rows) -> None:
    out.write("| " + " | ".join(headers) + " |\n")
    out.write("|" + "---|" * len(headers) + "\n")
    for row in rows:
        out.write("| " + " | ".join(str(c) for c in row) + " |\n")


# ---------------------------------------------------------------------------
# commands; each returns (input tuple or None, results dict)

def _report_results(rep: BoundReport) -> dict:
    bounds = {}
    for e in rep.entries:
        bounds[e.name] = {"kind": e.kind, "value": e.value, "applicable": e.applicable,
                          "below_exact": e.below_exact, "note": e.note}
    res: dict[str, Any] = {"bounds": bounds, "sq_minima": list(rep.minima.sq_minima)}
    if rep.covering is not None:
        res["covering_radius_sq"] = {"lower": rep.covering.lower_sq, "upper": rep.covering.upper_sq,
                                     "exact": rep.covering.exact_sq}
    if rep.exact is not None:
        res["frobenius"] = rep.exact.value
        res["aliev_gruber_status"] = rep.aliev_gruber_status
    elif rep.exact_note:
        res["exact_omitted"] = rep.exact_note
    res["reduced"] = list(rep.reduced)
    return res


def cmd_exact(args) -> tuple:
    a = validate_tuple(args.tuple)
    red = reduce_tuple(a)
    f = frobenius_exact(red.reduced, args.max_modulus)
    res: dict[str, Any] = {"frobenius": f.value}
    if red.removed:
        res["reduced"] = list(red.reduced)
        res["removed"] = [{"value": r.value, "coefficients": list(r.coefficients)}
                          for r in red.removed]
    return a.entries, res


def cmd_bounds(args) -> tuple:
    a = validate_tuple(args.tuple)
    rep = bound_report(a, with_exact=args.exact, precision=args.precision,
                       bdr_mode=args.bdr_mode, max_modulus=args.max_modulus)
    return a.entries, _report_results(rep)


def cmd_lattice(args) -> tuple:
    a = validate_tuple(args.tuple)
    basis = null_lattice_basis(a)
    g = grassmann_coords(basis)
    m = successive_minima(basis)
    res: dict[str, Any] = {
        "basis": [list(c) for c in basis.columns],
        "det_sq": lattice_determinant_sq(basis),
        "norm_sq": a.norm_sq,
        "grassmann": list(g.coords),
        "orientation_flipped": g.orientation_flipped,
        "sq_minima": list(m.sq_minima),
        "witnesses": [list(w) for w in m.witnesses],
        "enumeration": {"radius_sq": m.search_radius_sq, "vectors": m.enumerated},
        "esm": is_esm(m),
        "minkowski": minkowski_holds(m, a.norm_sq, args.precision),
    }
    if basis.rank <= MAX_VORONOI_RANK:
        cov = covering_radius_exact(basis, args.precision)
    else:
        cov = covering_radius_bounds(m, args.precision)
    res["covering_radius_sq"] = {"lower": cov.lower_sq, "upper": cov.upper_sq, "exact": cov.exact_sq}
    return a.entries, res


def table_rows(which: str, precision: int = DEFAULT_PRECISION) -> list[dict]:
    rows = []
    for entries, lam_sq, lit, lit_name, esm in PUBLISHED_TABLES[which]:
        a = validate_tuple(entries)
        m = successive_minima(null_lattice_basis(a))
        lits = {"bdr": bound_bdr(a), "erdos_graham": bound_erdos_graham(a),
                "selmer": bound_selmer(a), "vitek": bound_vitek(a)}
        best = min(lits, key=lambda k: (lits[k], k))
        esm_val = frobenius_bound_esm(a, m, precision)
        rows.append({
            "tuple": list(entries),
            "sq_minima": list(m.sq_minima),
            "esm_lattice": is_esm(m),
            "min_literature": lits[best],
            "min_literature_name": best,
            "esm_bound": esm_val,
            "published_sq_lambda": lam_sq,
            "published_min_literature": lit,
            "published_min_literature_name": lit_name,
            "published_esm_bound": esm,
            "diff_sq_lambda": max(m.sq_minima) - lam_sq if is_esm(m) else None,
            "diff_min_literature": lits[best] - lit,
            "diff_esm_bound": esm_val - esm,
            "matches": is_esm(m) and m.sq_minima[0] == lam_sq and lits[best] == lit
                       and best == lit_name and esm_val == esm,
        })
    return rows


def cmd_table(args) -> tuple:
    return None, {"table": args.which, "rows": table_rows(args.which, args.precision)}


def _parse_s(spec: str) -> list[int]:
    if ".." in spec:
        lo, hi = spec.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in spec.split(",")]


def _instance_results(inst: Esm4Instance) -> dict:
    return {
        "t": inst.t,
        "tuple": list(inst.tuple) if inst.tuple else None,
        "basis": [list(x) for x in inst.basis],
        "checks": dict(inst.checks),
        "certified": inst.certified,
        "near_orthogonal_ratios": list(inst.near_ortho.ratios) if inst.near_ortho else None,
        "gcd_certificate": {"d": inst.gcd.d, "t2_minus_49_mod_13": inst.gcd.t2_minus_49_mod_13,
                            "residue_certified": inst.gcd.residue_certified,
                            "fallback": inst.gcd.fallback},
        "sq_minima": list(inst.sq_minima) if inst.sq_minima else None,
        "orientation_flipped": inst.orientation_flipped,
    }


def cmd_esm_family(args) -> tuple:
    if args.t is not None:
        ts = [args.t]
    else:
        ts = [13 * s + 2 for s in _parse_s(args.s)]
    rows = [_instance_results(verify_esm_family(t)) for t in ts]
    res: dict[str, Any] = {"rows": rows}
    if args.asymptotics:
        rep = asymptotic_report(ts, args.precision)
        res["asymptotics"] = {
            "slope_min_literature": rep.slope_literature,
            "slope_esm_bound": rep.slope_esm,
            "ratio_increasing": rep.ratio_increasing,
            "rows": [{"t": r.t, "min_literature": r.min_literature,
                      "min_literature_name": r.min_literature_name, "esm_bound": r.esm_bound}
                     for r in rep.rows],
        }
    return None, res


# ---------------------------------------------------------------------------
# sweep

def random_reduced_tuples(count: int, seed: int, sizes: Sequence[int] = (3, 4, 5),
                          a1_range: tuple[int, int] = (3, 200), max_entry: int = 5000
                          ) -> list[tuple[int, ...]]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.choice(list(sizes))
        a1 = rng.randint(*a1_range)
        if max_entry - a1 < n - 1:
            continue
        rest = rng.sample(range(a1 + 1, max_entry + 1), n - 1)
        try:
            a = validate_tuple([a1, *rest])
        except InputError:
            continue
        if reduce_tuple(a).removed:
            continue
        out.append(a.entries)
    return out


def sweep_one(entries: tuple[int, ...], precision: int = DEFAULT_PRECISION,
              exact_covering_rank: int = 3) -> dict:
    a = NTuple(entries)
    rep = bound_report(a, with_exact=True, precision=precision,
                       exact_covering=(a.n - 1) <= exact_covering_rank)
    res = _report_results(rep)
    checks = {}
    f = rep.exact.value
    for e in rep.entries:
        if e.kind == "upper" and e.applicable and e.value is not None:
            checks[e.name] = e.value >= f
    cov = rep.covering
    if cov.exact_sq is not None:
        checks["covering_in_jarnik"] = cov.lower_sq <= cov.exact_sq <= cov.upper_sq
        checks["main_exact_le_jarnik"] = rep.get("main_exact").value <= rep.get("main_jarnik").value
    checks["aliev_gruber"] = rep.aliev_gruber_status in ("strict", "boundary")
    res["checks"] = checks
    res["aliev_gruber_boundary"] = rep.aliev_gruber_status == "boundary"
    res["sandwich_ok"] = all(checks.values())
    return res


def _sweep_job(job):
    entries, precision, rank = job
    t0 = time.perf_counter()
    res = sweep_one(entries, precision, rank)
    return entries, res, (time.perf_counter() - t0) * 1000


def iter_sweep(args):
    tuples = random_reduced_tuples(args.count, args.seed, args.sizes,
                                   (args.min_a1, args.max_a1), args.max_entry)
    jobs = [(t, args.precision, args.exact_covering_rank) for t in tuples]
    if args.jobs and args.jobs > 1 and jobs:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            yield from ex.map(_sweep_job, jobs)  # map preserves input order
    else:
        for job in jobs:
            yield _sweep_job(job)


# ---------------------------------------------------------------------------
# argument parsing

def _precision_default() -> int:
    env = os.environ.get("FROBSHOT_PRECISION")
    return int(env) if env else DEFAULT_PRECISION


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "md"), default="json")
    common.add_argument("--precision", type=int, default=_precision_default(),
                        help="working precision in bits for enclosures (default 128, "
                             "or $FROBSHOT_PRECISION)")
    common.add_argument("--no-timing", action="store_true",
                        help="write timing_ms as null so output is byte-for-byte reproducible")

    parser = argparse.ArgumentParser(prog="frobshot", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def tuple_cmd(name, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("tuple", nargs="+", type=int, metavar="A")
        return p

    p = tuple_cmd("exact", "exact Frobenius number (after reduction)")
    p.add_argument("--max-modulus", type=int, default=None)
    p.set_defaults(func=cmd_exact)

    p = tuple_cmd("bounds", "every bound, optionally with the exact value")
    p.add_argument("--exact", action="store_true", help="also compute the exact Frobenius number")
    p.add_argument("--bdr-mode", choices=("first-three", "best-triple"), default="first-three")
    p.add_argument("--max-modulus", type=int, default=None)
    p.set_defaults(func=cmd_bounds)

    p = tuple_cmd("lattice", "null lattice invariants")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("table", parents=[common], help="recompute a comparison table")
    p.add_argument("which", choices=sorted(PUBLISHED_TABLES))
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("esm-family", parents=[common], help="certify the 4-tuple ESM family")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--t", type=int)
    g.add_argument("--s", help="s, s1,s2,... or lo..hi; t = 13 s + 2")
    p.add_argument("--asymptotics", action="store_true")
    p.set_defaults(func=cmd_esm_family)

    p = sub.add_parser("sweep", parents=[common], help="random sandwich-property sweep")
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sizes", type=lambda s: [int(x) for x in s.split(",")], default=[3, 4, 5])
    p.add_argument("--min-a1", type=int, default=3)
    p.add_argument("--max-a1", type=int, default=200)
    p.add_argument("--max-entry", type=int, default=5000)
    p.add_argument("--exact-covering-rank", type=int, default=3,
                   help="compute the exact covering radius up to this rank")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=None)

    sub.add_parser("schema", help="print the output JSON schema").set_defaults(func=None)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "schema":
        out.write(json.dumps(load_schema(), indent=2) + "\n")
        return 0
    timing = not args.no_timing
    try:
        if args.command == "sweep":
            records = (make_record("sweep", entries, res, ms if timing else None)
                       for entries, res, ms in iter_sweep(args))
            render(records, args.format, out)
            return 0
        t0 = time.perf_counter()
        tuple_, res = args.func(args)
        ms = (time.perf_counter() - t0) * 1000 if timing else None
        render([make_record(args.command, tuple_, res, ms)], args.format, out)
        return 0
    except FrobshotError as exc:
        out.write(json.dumps(error_record(args.command, exc)) + "\n")
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
