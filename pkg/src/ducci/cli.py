"""``ducci`` command-line front end.

Exit codes:
    0  success / formula and simulation agree
    1  usage or parse error
    2  verified disagreement (or a failed identity)
    3  enumeration or step budget exceeded
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from .core import BudgetExceeded, ModTuple, TupleParseError, check_modulus, parse_tuple
from .identities import run_all
from .orbit import TransitionGraph, build_graph, kernel, orbit_info, predecessors, sequence
from .period import PeriodReport, sweep, verify

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DISAGREE = 2
EXIT_BUDGET = 3

SWEEP_COLUMNS = [
    "m",
    "formula_period",
    "simulated_period",
    "formula_length",
    "simulated_length",
    "agrees",
    "notes",
]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _fmt_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list):
        return ";".join(map(str, v))
    return str(v)


def _key_values(pairs) -> str:
    return "".join(f"{k}: {_fmt_value(v)}\n" for k, v in pairs)


def render_dot(g: TransitionGraph) -> str:
    lines = [f'digraph "Z_{g.m}^{g.n}" {{', "  node [shape=circle];"]
    for v in g.nodes:
        lines.append(f'  "{v.label()}";')
    for src, dst in g.edge_list():
        lines.append(f'  "{src.label()}" -> "{dst.label()}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_graph_json(g: TransitionGraph) -> str:
    doc = {
        "m": g.m,
        "n": g.n,
        "roots": None if g.component_roots is None else [str(r) for r in g.component_roots],
        "nodes": [v.label() for v in g.nodes],
        "successor": {v.label(): g.edges[v].label() for v in g.nodes},
    }
    return _dump_json(doc)


def render_report_text(r: PeriodReport) -> str:
    pairs = [
        ("m", r.m),
        ("formula_period", r.formula_period),
        ("simulated_period", r.simulated_period),
        ("formula_length", r.formula_length),
        ("simulated_length", r.simulated_length),
        ("agrees", r.agrees),
        ("notes", r.notes),
    ]
    for c in r.candidate_checks:
        pairs.append(
            (f"candidate_check[{c.p}^{c.e}]", f"D^{c.candidate}(0,0,1) returns: {_fmt_value(c.returns)}")
        )
    return _key_values(pairs)


def render_sweep_csv(reports: list[PeriodReport]) -> str:
    buf = io.StringIO(newline="")
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(SWEEP_COLUMNS)
    for r in reports:
        d = r.as_dict()
        w.writerow([_fmt_value(d[c]) for c in SWEEP_COLUMNS])
    return buf.getvalue()


def _tuple_arg(text: str) -> ModTuple:
    try:
        return parse_tuple(text)
    except TupleParseError as e:
        raise UsageError(str(e)) from None
    except ValueError as e:
        raise UsageError(str(e)) from None


def _modulus_arg(text: str) -> int:
    try:
        m = int(text)
        check_modulus(m)
    except ValueError as e:
        raise UsageError(f"bad modulus {text!r}: {e}") from None
    return m


def cmd_step(args) -> tuple[str, int]:
    u = _tuple_arg(args.tuple)
    if args.count < 0:
        raise UsageError("--count must be non-negative")
    seq = sequence(u, args.count)
    if args.format == "json":
        return _dump_json([str(v) for v in seq]), EXIT_OK
    return "".join(f"{v}\n" for v in seq), EXIT_OK


def cmd_orbit(args) -> tuple[str, int]:
    u = _tuple_arg(args.tuple)
    info = orbit_info(u)
    if args.format == "json":
        doc = {"tuple": str(u), "len": info.len, "per": info.per, "cycle_entry": str(info.cycle_entry)}
        return _dump_json(doc), EXIT_OK
    pairs = [("tuple", u), ("len", info.len), ("per", info.per), ("cycle_entry", info.cycle_entry)]
    return _key_values(pairs), EXIT_OK


def _report_exit(r: PeriodReport) -> int:
    return EXIT_DISAGREE if r.agrees is False else EXIT_OK


def cmd_period(args) -> tuple[str, int]:
    m = _modulus_arg(args.m)
    r = verify(m, simulate=args.simulate)
    if args.format == "json":
        return _dump_json(r.as_dict()), _report_exit(r)
    return render_report_text(r), _report_exit(r)


def cmd_length(args) -> tuple[str, int]:
    m = _modulus_arg(args.m)
    r = verify(m, simulate=args.simulate)
    doc = {
        "m": m,
        "formula_length": r.formula_length,
        "simulated_length": r.simulated_length,
        "agrees": None if r.simulated_length is None else r.simulated_length == r.formula_length,
    }
    code = EXIT_DISAGREE if doc["agrees"] is False else EXIT_OK
    if args.format == "json":
        return _dump_json(doc), code
    return _key_values(doc.items()), code


def cmd_sweep(args) -> tuple[str, int]:
    lo = _modulus_arg(args.m_lo)
    hi = _modulus_arg(args.m_hi)
    if lo > hi:
        raise UsageError(f"m_lo ({lo}) must not exceed m_hi ({hi})")
    jobs = args.jobs if args.jobs is not None else (os.cpu_count() or 1)
    reports = sweep(lo, hi, simulate=args.simulate, jobs=jobs)
    if any(r.agrees is False for r in reports):
        code = EXIT_DISAGREE
    elif any("budget-exceeded" in r.notes for r in reports):
        code = EXIT_BUDGET
    else:
        code = EXIT_OK
    if args.format == "json":
        return _dump_json([r.as_dict() for r in reports]), code
    return render_sweep_csv(reports), code


def cmd_graph(args) -> tuple[str, int]:
    m = _modulus_arg(args.m)
    n = args.n
    if n < 2:
        raise UsageError("dimension must be at least 2")
    roots = [_tuple_arg(t) for t in args.root or []]
    for r in roots:
        if r.m != m or r.n != n:
            raise UsageError(f"root {r} is not in Z_{m}^{n}")
    g = build_graph(m, n, roots or None)
    if args.format == "json":
        return render_graph_json(g), EXIT_OK
    return render_dot(g), EXIT_OK


def cmd_kernel(args) -> tuple[str, int]:
    m = _modulus_arg(args.m)
    if args.n < 2:
        raise UsageError("dimension must be at least 2")
    k = kernel(m, args.n)
    if args.format == "json":
        return _dump_json({"m": m, "n": args.n, "size": len(k), "tuples": [str(v) for v in k]}), EXIT_OK
    return "".join(f"{v}\n" for v in k), EXIT_OK


def cmd_pred(args) -> tuple[str, int]:
    u = _tuple_arg(args.tuple)
    preds = predecessors(u)
    if args.format == "json":
        return _dump_json({"tuple": str(u), "predecessors": [str(v) for v in preds]}), EXIT_OK
    return "".join(f"{v}\n" for v in preds), EXIT_OK


def cmd_identities(args) -> tuple[str, int]:
    if args.max_r < 6:
        raise UsageError("--max-r must be at least 6")
    try:
        moduli = [int(x) for x in args.moduli.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad modulus list {args.moduli!r}") from None
    if not moduli:
        raise UsageError("--moduli must list at least one modulus")
    for m in moduli:
        check_modulus(m)
    results = run_all(args.max_r, moduli, seed=args.seed)
    code = EXIT_OK if all(r.passed for r in results) else EXIT_DISAGREE
    if args.format == "json":
        doc = [
            {
                "name": r.name,
                "passed": r.passed,
                "checked": r.checked,
                "failed": r.failure_count,
                "failures": r.failures,
                "notes": r.notes,
            }
            for r in results
        ]
        return _dump_json(doc), code
    return "".join(r.line() + "\n" for r in results), code


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ducci", description="Ducci sequences on Z_m^n.")
    p.add_argument("--out", help="write output to this file instead of stdout")
    # Also accepted after the subcommand; SUPPRESS keeps the top-level value otherwise.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, help: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, help=help, parents=[common])

    s = add("step", help="print u, D(u), ..., D^count(u)")
    s.add_argument("tuple", help='tuple literal, e.g. "(3,4,4) mod 6"')
    s.add_argument("--count", type=int, default=1)
    s.add_argument("--format", choices=["text", "json"], default="text")
    s.set_defaults(func=cmd_step)

    s = add("orbit", help="Len, Per and cycle entry of a tuple")
    s.add_argument("tuple")
    s.add_argument("--format", choices=["text", "json"], default="text")
    s.set_defaults(func=cmd_orbit)

    for name, func, what in (("period", cmd_period, "P_m(3)"), ("length", cmd_length, "L_m(3)")):
        s = add(name, help=f"closed-form {what}, optionally checked by simulation")
        s.add_argument("m")
        mode = s.add_mutually_exclusive_group()
        mode.add_argument("--simulate", dest="simulate", action="store_true")
        mode.add_argument("--formula-only", dest="simulate", action="store_false")
        s.set_defaults(simulate=False)
        s.add_argument("--format", choices=["text", "json"], default="text")
        s.set_defaults(func=func)

    s = add("sweep", help="period reports for a range of moduli")
    s.add_argument("m_lo")
    s.add_argument("m_hi")
    s.add_argument("--simulate", action="store_true")
    s.add_argument("--format", choices=["csv", "json"], default="csv")
    s.add_argument("--jobs", type=int, default=None)
    s.set_defaults(func=cmd_sweep)

    s = add("graph", help="transition graph of D")
    s.add_argument("m")
    s.add_argument("n", type=int)
    s.add_argument("--root", action="append", help="tuple literal; repeatable")
    s.add_argument("--format", choices=["dot", "json"], default="dot")
    s.set_defaults(func=cmd_graph)

    s = add("identities", help="run the coefficient and number-theory batteries")
    s.add_argument("--max-r", type=int, default=2000)
    s.add_argument("--moduli", default="2,3,5,6,16,101")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--format", choices=["text", "json"], default="text")
    s.set_defaults(func=cmd_identities)

    s = add("kernel", help="tuples lying on a Ducci cycle")
    s.add_argument("m")
    s.add_argument("n", type=int)
    s.add_argument("--format", choices=["text", "json"], default="text")
    s.set_defaults(func=cmd_kernel)

    s = add("pred", help="predecessors of a tuple")
    s.add_argument("tuple")
    s.add_argument("--format", choices=["text", "json"], default="text")
    s.set_defaults(func=cmd_pred)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text, code = args.func(args)
    except UsageError as e:
        print(f"ducci: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as e:
        print(f"ducci: budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as e:
        print(f"ducci: error: {e}", file=sys.stderr)
        return EXIT_USAGE

    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
