"""Command-line front end.

Subcommands:
  quad D                  one quadratic field: discriminant, unit, class data
  biquad D1 D2            one biquadratic field: the full report
  scan --bound N          every biquadratic field generated by |d1|,|d2| <= N

Exit codes: 0 success, 1 invalid input / IO error, 2 formula-vs-oracle
mismatch, 3 search budget exhausted.  The enumeration budget comes from
--budget, else the POLYA_ORACLE_BUDGET environment variable, else a generous
default; each field gets its own budget.
"""

from __future__ import annotations

import argparse
import itertools
import multiprocessing
import sys

from .biquadratic import biquadratic_field
from .errors import (Budget, BudgetExceededError, DomainError, InvalidInputError,
                     default_budget_units)
from .intmath import squarefree_part
from .lattice import AmbiguousIdealOracle
from .polya import polya_order_quad, polya_report, verify_biquad, verify_quad
from .quadratic import quadratic_field
from .report import biquad_record, quad_record, render_records


def _add_format_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="newline-delimited JSON")
    p.add_argument("--csv", action="store_true", help="CSV with a header row")
    p.add_argument("--text", action="store_true", help="fixed-width table (default)")


def _resolve_format(args) -> str:
    chosen = [f for f in ("json", "csv", "text") if getattr(args, f, False)]
    if getattr(args, "format", None):
        chosen.append(args.format)
    if len(set(chosen)) > 1:
        raise InvalidInputError("choose at most one output format")
    return chosen[0] if chosen else "text"


def _budget_units(args) -> int:
    if args.budget is not None:
        if args.budget <= 0:
            raise InvalidInputError("--budget must be positive")
        return args.budget
    return default_budget_units()


def _cmd_quad(args) -> int:
    k = quadratic_field(args.d)
    status = "unchecked"
    if args.verify:
        status, _ = verify_quad(k, Budget(_budget_units(args)))
    rec = quad_record(k, polya_order_quad(k), status)
    sys.stdout.write(render_records([rec], _resolve_format(args)))
    return 2 if status == "mismatch" else 0


def _cmd_biquad(args) -> int:
    K = biquadratic_field(args.d1, args.d2)
    oracle = AmbiguousIdealOracle(K, _budget_units(args))
    rep = polya_report(K, oracle)
    status = "unchecked"
    if args.verify:
        status, _ = verify_biquad(K, oracle)
    rec = biquad_record(K, rep, status)
    fmt = _resolve_format(args)
    sys.stdout.write(render_records([rec], fmt))
    if args.chain and fmt == "text":
        h30, h21, h10, h32 = rep.chain
        sys.stdout.write(
            f"chain: (H3:H2)={h32}  (H2:H1)={h21}  (H1:H0)={h10}  "
            f"product={h32 * h21 * h10} = 2^s_K = (H3:H0)={h30}\n")
    return 2 if status == "mismatch" else 0


def _scan_tasks(bound: int, real_only: bool, imag_only: bool):
    """Each field exactly once, keyed and ordered by its canonical triple."""
    vals = [v for v in range(-bound, bound + 1)
            if v not in (0, 1) and squarefree_part(v) == v]
    generators: dict[tuple[int, int, int], tuple[int, int]] = {}
    for a, b in itertools.combinations(vals, 2):
        triple = tuple(sorted((a, b, squarefree_part(a * b))))
        generators.setdefault(triple, (a, b))
    out = []
    for triple in sorted(generators):
        is_real = all(v > 0 for v in triple)
        if (real_only and not is_real) or (imag_only and is_real):
            continue
        out.append(generators[triple])
    return out


def _scan_worker(task):
    a, b, verify, units = task
    K = biquadratic_field(a, b)
    oracle = AmbiguousIdealOracle(K, units)
    try:
        rep = polya_report(K, oracle)
    except BudgetExceededError:
        return "budget_abort", K.d
    status = "unchecked"
    if verify:
        try:
            status, _ = verify_biquad(K, oracle)
        except BudgetExceededError:
            status = "budget_exceeded"
    return "record", biquad_record(K, rep, status)


def _cmd_scan(args) -> int:
    if args.bound < 2:
        raise InvalidInputError("--bound must be at least 2")
    if args.real_only and args.imag_only:
        raise InvalidInputError("--real-only and --imag-only are exclusive")
    fmt = _resolve_format(args)
    units = _budget_units(args)
    tasks = [(a, b, args.verify, units)
             for a, b in _scan_tasks(args.bound, args.real_only, args.imag_only)]
    if args.jobs > 1:
        with multiprocessing.Pool(args.jobs) as pool:
            results = pool.map(_scan_worker, tasks)
    else:
        results = [_scan_worker(t) for t in tasks]
    records, aborted = [], []
    for kind, payload in results:
        if kind == "record":
            records.append(payload)
        else:
            aborted.append(payload)
    rendered = render_records(records, fmt) if records else ""
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(rendered)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return 1
    else:
        sys.stdout.write(rendered)
    for triple in aborted:
        print(f"warning: budget exhausted before the report for {triple}",
              file=sys.stderr)
    if any(r.verify_status == "mismatch" for r in records):
        return 2
    if aborted or any(r.verify_status == "budget_exceeded" for r in records):
        return 3
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polyabiquad",
        description="Orders of Polya groups (strongly ambiguous ideal classes) "
                    "of quadratic and bicyclic biquadratic number fields, with "
                    "an independent brute-force verifier.")
    sub = parser.add_subparsers(dest="command", required=True)

    q = sub.add_parser("quad", help="one quadratic field Q(sqrt(d))")
    q.add_argument("d", type=int)
    q.add_argument("--verify", action="store_true",
                   help="check the formula against direct class enumeration")
    q.add_argument("--budget", type=int, default=None)
    _add_format_flags(q)
    q.set_defaults(func=_cmd_quad)

    b = sub.add_parser("biquad", help="one biquadratic field Q(sqrt(d1),sqrt(d2))")
    b.add_argument("d1", type=int)
    b.add_argument("d2", type=int)
    b.add_argument("--verify", action="store_true",
                   help="run the ambiguous-ideal oracle against the formulas")
    b.add_argument("--chain", action="store_true",
                   help="also spell out the subgroup chain indices")
    b.add_argument("--budget", type=int, default=None)
    _add_format_flags(b)
    b.set_defaults(func=_cmd_biquad)

    s = sub.add_parser("scan", help="all fields with |d1|,|d2| <= bound")
    s.add_argument("--bound", type=int, required=True)
    s.add_argument("--real-only", action="store_true")
    s.add_argument("--imag-only", action="store_true")
    s.add_argument("--verify", action="store_true")
    s.add_argument("--out", type=str, default=None)
    s.add_argument("--format", choices=("text", "json", "csv"), default=None)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--budget", type=int, default=None)
    _add_format_flags(s)
    s.set_defaults(func=_cmd_scan)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InvalidInputError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
