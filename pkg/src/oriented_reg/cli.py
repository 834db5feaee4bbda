"""Command-line front end: ``oriented-reg {reg,betti,hgraph,gen,verify}``.

Exit codes: 0 ok, 1 parse or I/O error, 2 failed precondition, 3 oracle
cap exceeded, 4 a verify sweep found a disagreement.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import os
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import __version__
from .errors import (
    FamilyError,
    NoApplicableMethod,
    OrientedRegError,
    PreconditionFailed,
    TooLarge,
)
from .families import FAMILIES, FamilySpec, parse_params
from .formulas import dispatch_regularity
from .graph import WeightedOrientedGraph
from .homology import DEFAULT_MAX_VARS, graded_betti
from .hypergraph import build_labeled_hypergraph
from .monomial import Monomial, MonomialIdeal, edge_ideal, polarize

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_PRECONDITION = 2
EXIT_CAP = 3
EXIT_DISAGREE = 4

FAMILY_ALIASES = {"property-p": "random-p"}


class InputError(Exception):
    """Unreadable or malformed input; maps to exit 1."""


# input


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def load_graph(path: str) -> WeightedOrientedGraph:
    text = _read(path)
    try:
        return WeightedOrientedGraph.from_json(text)
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: not a valid graph file: {exc}") from exc


def load_ideal_ordered(path: str) -> tuple[MonomialIdeal, list[Monomial]]:
    """The ideal plus its minimal generators in the order the input lists them.

    Accepts a graph file (its edge ideal), ``{"generators": [...]}`` or
    plain text such as ``(a*b, b*c^2)``.
    """
    text = _read(path)
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        data = None
    try:
        if isinstance(data, dict) and "generators" in data:
            listed = [Monomial.parse(g) for g in data["generators"]]
            ideal = MonomialIdeal(listed, data.get("variables"))
        elif isinstance(data, dict) and "edges" in data:
            D = WeightedOrientedGraph.from_dict(data)
            ideal = edge_ideal(D)
            listed = [Monomial({a: 1}) * Monomial({b: D.weight(b)}) for a, b in D.edges]
        elif data is not None:
            raise InputError(f"{path}: JSON input must be a graph or have a 'generators' key")
        else:
            ideal = MonomialIdeal.parse(text)
            body = text.strip().removeprefix("(").removesuffix(")")
            listed = [Monomial.parse(t) for t in re.split(r"[,\s]+", body) if t]
    except InputError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: cannot parse ideal: {exc}") from exc
    order = list(dict.fromkeys(m for m in listed if m in ideal.generators))
    return ideal, order


def load_ideal(path: str) -> MonomialIdeal:
    return load_ideal_ordered(path)[0]


def _cap(args) -> int:
    cap = args.max_polar_vars
    if cap != DEFAULT_MAX_VARS:
        print(
            f"WARNING: oracle cap changed from {DEFAULT_MAX_VARS} to {cap} polarized variables; "
            "run time grows exponentially with this number",
            file=sys.stderr,
        )
    return cap


def _workers(requested: int | None) -> int | None:
    if not requested or requested <= 1:
        return None
    bound = os.environ.get("ORIENTED_REG_THREADS")
    if bound:
        try:
            requested = min(requested, max(1, int(bound)))
        except ValueError:
            pass
    return requested if requested > 1 else None


def _fail(kind: str, message: str, **extra) -> None:
    print(json.dumps({"error": kind, "message": message, **extra}), file=sys.stderr)


# reg


def cmd_reg(args) -> int:
    D = load_graph(args.input)
    cap = _cap(args)
    try:
        res = dispatch_regularity(
            D,
            allow_oracle=not args.no_oracle,
            method=args.method,
            field=args.field,
            max_vars=cap,
            workers=_workers(args.parallel),
        )
    except PreconditionFailed as exc:
        _fail("PreconditionFailed", str(exc), predicate=exc.predicate, detail=exc.detail)
        return EXIT_PRECONDITION
    except TooLarge as exc:
        _fail("TooLarge", str(exc), count=exc.count, cap=exc.cap)
        return EXIT_CAP
    except NoApplicableMethod as exc:
        if isinstance(exc.__cause__, TooLarge):
            _fail("TooLarge", str(exc))
            return EXIT_CAP
        _fail("NoApplicableMethod", str(exc))
        return EXIT_PRECONDITION

    if args.json:
        print(json.dumps(res.to_dict(), indent=2))
        return EXIT_OK
    print(f"reg(I(D))   = {res.reg_ideal}")
    print(f"reg(R/I(D)) = {res.reg_quotient}")
    print(f"method      = {res.method}")
    for c in res.checks:
        mark = "ok  " if c.ok else "fail"
        print(f"  [{mark}] {c.name}" + (f"  ({c.detail})" if c.detail else ""))
    for note in res.notes:
        print(f"  note: {note}")
    return EXIT_OK


# betti


def cmd_betti(args) -> int:
    ideal = load_ideal(args.input)
    cap = _cap(args)
    try:
        table = graded_betti(ideal, args.field, max_vars=cap, workers=_workers(args.parallel))
    except TooLarge as exc:
        _fail("TooLarge", str(exc), count=exc.count, cap=exc.cap)
        return EXIT_CAP
    except OrientedRegError as exc:
        _fail(type(exc).__name__, str(exc))
        return EXIT_PARSE
    if args.quotient:
        table = table.to_quotient()
    if args.format in ("human", "both"):
        print(f"{'R/I' if args.quotient else 'I'} = {ideal}   field {table.field}")
        print(table.macaulay_str())
        print(f"regularity: {table.regularity}")
    if args.format == "both":
        print()
    if args.format in ("csv", "both"):
        sys.stdout.write(table.to_csv())
    return EXIT_OK


# hgraph


def cmd_hgraph(args) -> int:
    ideal, gens = load_ideal_ordered(args.input)
    names = None
    if not ideal.is_squarefree():
        ideal, _ = polarize(ideal)
        print(f"polarized: {ideal}")
        gens, names = None, ideal.variables
    try:
        H = build_labeled_hypergraph(ideal, gens)
    except OrientedRegError as exc:
        _fail(type(exc).__name__, str(exc))
        return EXIT_PARSE
    print(H.table(names))
    return EXIT_OK


# gen


def _family(name: str) -> str:
    name = FAMILY_ALIASES.get(name, name)
    if name not in FAMILIES:
        raise InputError(f"unknown family {name!r}; choose from {sorted(FAMILIES)}")
    return name


def cmd_gen(args) -> int:
    name = _family(args.family)
    params = parse_params(args.params or "")
    if name == "random-p":
        params.setdefault("seed", args.seed)
    try:
        D = FamilySpec(name, params).build()
    except TypeError as exc:
        raise InputError(f"bad parameters for {name}: {exc}") from exc
    print(D.to_json(indent=2))
    return EXIT_OK


# verify


def parse_range(text: str) -> list[int]:
    """``"3"``, ``"1..5"`` (inclusive) or ``"2,4,7"``."""
    out: list[int] = []
    try:
        for part in text.split(","):
            part = part.strip()
            if ".." in part:
                lo, hi = part.split("..", 1)
                out.extend(range(int(lo), int(hi) + 1))
            elif part:
                out.append(int(part))
    except ValueError:
        raise InputError(f"bad range {text!r}; use N, A..B or A,B,C") from None
    return out


def _heavy_placements(n: int, cyclic: bool) -> list[tuple[int, ...]]:
    idx = list(range(1, n + 1)) if cyclic else list(range(n + 1))
    out = []
    for k in range(len(idx) + 1):
        for combo in itertools.combinations(idx, k):
            out.append(combo)
    return out


def sweep_instances(args) -> list[FamilySpec]:
    """Every instance named by the family and range flags, in a fixed order."""
    name = _family(args.family)
    extra = parse_params(args.params or "")
    wmax = args.wmax if args.wmax is not None else 3
    specs: list[FamilySpec] = []

    if name == "random-p":
        seeds = parse_range(args.seeds) if args.seeds else [args.seed]
        sizes = parse_range(args.size) if args.size else [5]
        for size in sizes:
            for s in seeds:
                specs.append(FamilySpec(name, {"seed": s, "vertices": size, "wmax": wmax}))
        return specs

    if name in ("sink-path", "sink-cycle"):
        cyclic = name == "sink-cycle"
        lengths = parse_range(args.n) if args.n else ([3, 4, 5, 6] if cyclic else [1, 2, 3, 4, 5])
        limit = args.max_heavy
        for n in lengths:
            for placement in _heavy_placements(n, cyclic):
                if limit is not None and len(placement) > limit:
                    continue
                names = [f"x{i}" for i in placement]
                for ws in itertools.product(range(2, wmax + 1), repeat=len(placement)):
                    spec = FamilySpec(name, {"n": n, "vplus": names, "weights": list(ws)})
                    try:
                        spec.build()
                    except FamilyError:
                        continue
                    specs.append(spec)
        return specs

    axes = {}
    for flag, key in (("n", "n"), ("m", "m"), ("r", "r"), ("w", "weights")):
        value = getattr(args, flag)
        if value is not None:
            axes[key] = parse_range(value)
    keys = list(axes)
    for combo in itertools.product(*(axes[k] for k in keys)):
        params = dict(extra)
        params.update(zip(keys, combo))
        specs.append(FamilySpec(name, params))
    return specs


@dataclass(frozen=True)
class SweepRow:
    family: str
    instance: int
    method: str
    formula: int | None
    oracle: int | None
    agree: bool
    elapsed_ms: float
    status: str = "ok"


@dataclass
class SweepReport:
    rows: list[SweepRow] = field(default_factory=list)

    @property
    def summary(self) -> dict[str, int]:
        tally = {"instances": len(self.rows), "agree": 0, "disagree": 0, "no_formula": 0, "too_large": 0, "error": 0}
        for r in self.rows:
            if r.status == "ok":
                tally["agree" if r.agree else "disagree"] += 1
            else:
                tally[r.status.replace("-", "_")] += 1
        return tally

    def disagreements(self) -> list[SweepRow]:
        return [r for r in self.rows if r.status == "ok" and not r.agree]

    def to_csv(self, timing: bool = False) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\r\n")
        head = ["family", "instance", "method", "formula", "oracle", "agree", "status"]
        w.writerow(head + (["elapsed_ms"] if timing else []))
        for r in self.rows:
            cells = [
                r.family, r.instance, r.method,
                "" if r.formula is None else r.formula,
                "" if r.oracle is None else r.oracle,
                "true" if r.agree else "false",
                r.status,
            ]
            w.writerow(cells + ([f"{r.elapsed_ms:.1f}"] if timing else []))
        return buf.getvalue()


def run_instance(task) -> SweepRow:
    """Formula (no oracle fallback) against the oracle in the requested fields.

    Values are in the quotient convention ``reg(R/I(D))``.
    """
    idx, spec, fields, cap = task
    t0 = time.perf_counter()
    label = spec.label()
    try:
        D = spec.build()
    except FamilyError as exc:
        return SweepRow(label, idx, "", None, None, False, 0.0, "error")
    try:
        res = dispatch_regularity(D, allow_oracle=False)
        method, formula = res.method, res.reg_quotient
    except (NoApplicableMethod, PreconditionFailed):
        method, formula = "", None
    try:
        ideal = edge_ideal(D)
        values = {f: graded_betti(ideal, f, max_vars=cap).regularity - 1 for f in fields}
    except TooLarge:
        ms = (time.perf_counter() - t0) * 1000
        return SweepRow(label, idx, method, formula, None, False, ms, "too-large")
    ms = (time.perf_counter() - t0) * 1000
    oracle = values[fields[0]]
    if len(set(values.values())) > 1:
        # the two fields disagree: report the field mismatch as a disagreement
        return SweepRow(label, idx, method, formula, oracle, False, ms, "ok")
    if formula is None:
        return SweepRow(label, idx, method, None, oracle, False, ms, "no-formula")
    return SweepRow(label, idx, method, formula, oracle, formula == oracle, ms, "ok")


def run_sweep(specs, fields=("gf2",), cap: int = DEFAULT_MAX_VARS, workers: int | None = None) -> SweepReport:
    tasks = [(k, s, tuple(fields), cap) for k, s in enumerate(specs)]
    if workers:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(run_instance, tasks, chunksize=4))
    else:
        rows = [run_instance(t) for t in tasks]
    return SweepReport(rows)


def cmd_verify(args) -> int:
    cap = _cap(args)
    specs = sweep_instances(args)
    fields = ("gf2", "qq") if args.field == "both" else (args.field,)
    report = run_sweep(specs, fields, cap, _workers(args.parallel))
    text = report.to_csv(timing=args.timing)
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise InputError(f"cannot write {args.output}: {exc.strerror}") from exc
    else:
        sys.stdout.write(text)
    s = report.summary
    print(
        "summary: " + " ".join(f"{k}={v}" for k, v in s.items()),
        file=sys.stderr,
    )
    if s["disagree"]:
        for r in report.disagreements():
            print(f"DISAGREE {r.family}: formula {r.formula} ({r.method}) vs oracle {r.oracle}", file=sys.stderr)
        return EXIT_DISAGREE
    if s["too_large"]:
        return EXIT_CAP
    if s["error"]:
        return EXIT_PARSE
    return EXIT_OK


# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="oriented-reg",
        description="Regularity of edge ideals of weighted oriented graphs.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--seed", type=int, default=0, help="seed for random families (default 0)")
    p.add_argument(
        "--max-polar-vars", type=int, default=DEFAULT_MAX_VARS,
        help=f"oracle cap on polarized variables (default {DEFAULT_MAX_VARS})",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def oracle_flags(sp, both=False):
        choices = ["gf2", "qq"] + (["both"] if both else [])
        sp.add_argument("--field", choices=choices, default="gf2")
        sp.add_argument("--parallel", type=int, default=None, metavar="N",
                        help="worker processes, bounded by ORIENTED_REG_THREADS")

    sp = sub.add_parser("reg", help="regularity of I(D) for a JSON graph file")
    sp.add_argument("input", help="graph file, or - for stdin")
    sp.add_argument("--method", default="auto",
                    help="auto, oracle, or a method tag such as property-p, added-edges, sink-path")
    sp.add_argument("--no-oracle", action="store_true", help="fail instead of falling back to the oracle")
    sp.add_argument("--json", action="store_true", help="print the result as JSON")
    oracle_flags(sp)
    sp.set_defaults(func=cmd_reg)

    sp = sub.add_parser("betti", help="graded Betti table of an ideal or edge ideal")
    sp.add_argument("input", help="graph file, generators JSON or text like (a*b, b*c)")
    sp.add_argument("--format", choices=["human", "csv", "both"], default="both")
    sp.add_argument("--quotient", action="store_true", help="report R/I instead of I")
    oracle_flags(sp)
    sp.set_defaults(func=cmd_betti)

    sp = sub.add_parser("hgraph", help="labeled hypergraph of a monomial ideal")
    sp.add_argument("input", help="graph file, generators JSON or text")
    sp.set_defaults(func=cmd_hgraph)

    sp = sub.add_parser("gen", help="emit a family member as a JSON graph")
    sp.add_argument("--family", required=True, help=f"one of {', '.join(sorted(FAMILIES))}")
    sp.add_argument("--params", default="", help="k=v,... with ':' between list items")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("verify", help="sweep a family comparing formulas with the oracle")
    sp.add_argument("--family", required=True)
    sp.add_argument("--params", default="", help="fixed parameters added to every instance")
    for flag in ("n", "m", "r", "w"):
        sp.add_argument(f"--{flag}", default=None, help="value or range A..B")
    sp.add_argument("--wmax", type=int, default=None, help="largest weight tried (default 3)")
    sp.add_argument("--max-heavy", type=int, default=None, help="cap on the number of heavy vertices")
    sp.add_argument("--seeds", default=None, help="seed range for random-p")
    sp.add_argument("--size", default=None, help="vertex count range for random-p (default 5)")
    sp.add_argument("--timing", action="store_true", help="add an elapsed_ms column")
    sp.add_argument("-o", "--output", default=None, help="write the CSV here instead of stdout")
    oracle_flags(sp, both=True)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        _fail("InputError", str(exc))
        return EXIT_PARSE
    except FamilyError as exc:
        _fail(type(exc).__name__, str(exc))
        return EXIT_PARSE
    except PreconditionFailed as exc:
        _fail("PreconditionFailed", str(exc), predicate=exc.predicate, detail=exc.detail)
        return EXIT_PRECONDITION
    except TooLarge as exc:
        _fail("TooLarge", str(exc), count=exc.count, cap=exc.cap)
        return EXIT_CAP
    except OrientedRegError as exc:
        _fail(type(exc).__name__, str(exc))
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
