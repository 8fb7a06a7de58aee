"""Command-line interface.

Every file-based command echoes the canonical serialization of its input
graph (as comment lines in text mode, as a string field in machine mode)
so reports are auditable.  Machine mode emits one JSON object per run with
a schema_version field; every numeric value is an exact integer or a
"p/q" string, never a float.

Exit codes: 0 success (for `laufer`: lattice L-space), 1 `laufer`
not-L-space, 2 errors (parse failures, violated preconditions).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from pathlib import Path

from .arith import (ArithmeticDomainError, format_rational, hj_expand,
                    hj_value, parse_rational)
from .classify import ClassificationReport, classify, enumerate_and_classify
from .diagonal import (DegenerateFormError, MarkedGraph,
                       NotNegativeDefiniteError, derationalizer,
                       is_negative_definite, rooted_diagonalize, surger)
from .graph import (GraphError, ParseError, PlumbingGraph,
                    blow_down_candidates, is_minimal, minimalize,
                    parse_graph, serialize)
from .laufer import LATTICE_L_SPACE, laufer_run
from .pi1 import abelianization_invariants, mumford_presentation

SCHEMA_VERSION = "1"


class _CliError(Exception):
    def __init__(self, message: str, code: int = 2):
        super().__init__(message)
        self.code = code


def _load(path: str) -> PlumbingGraph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise _CliError(f"cannot read {path}: {e}")
    try:
        return parse_graph(text)
    except ParseError as e:
        where = f" (line {e.line})" if e.line is not None else ""
        raise _CliError(f"parse error in {path}{where}: {e}")


def _echo_lines(g: PlumbingGraph) -> list[str]:
    return ["# " + line for line in serialize(g).splitlines()]


def _emit_machine(command: str, payload: dict, g: PlumbingGraph | None) -> None:
    report = {"schema_version": SCHEMA_VERSION, "command": command}
    if g is not None:
        report["input_echo"] = serialize(g)
    report.update(payload)
    print(json.dumps(report, indent=2, sort_keys=True))


def _frac(x: Fraction | int) -> str:
    return format_rational(Fraction(x))


def cmd_validate(args: argparse.Namespace) -> int:
    g = _load(args.file)
    minimal = is_minimal(g)
    n_blowdowns = len(blow_down_candidates(g))
    nd = is_negative_definite(g)
    if args.format == "machine":
        _emit_machine("validate", {
            "valid": True,
            "minimal": minimal,
            "blow_downs_available": n_blowdowns,
            "negative_definite": nd,
        }, g)
    else:
        print("\n".join(_echo_lines(g)))
        parts = ["valid"]
        parts.append("minimal" if minimal else
                     f"NOT minimal ({n_blowdowns} blow-down"
                     f"{'s' if n_blowdowns != 1 else ''} available)")
        parts.append("negative-definite" if nd else "NOT negative-definite")
        print(", ".join(parts))
    return 0


def _cycle_str(g: PlumbingGraph, z: dict[str, int]) -> str:
    return ",".join(f"{v}:{z.get(v, 0)}" for v in g.ids)


def cmd_laufer(args: argparse.Namespace) -> int:
    g = _load(args.file)
    if not is_minimal(g):
        if not args.minimalize:
            raise _CliError(
                "graph is not minimal; pass --minimalize to blow it down "
                "first")
        g = minimalize(g)
    early_exit = not args.no_early_exit
    try:
        result = laufer_run(g, tie_break=args.tie_break,
                            trace_wanted=args.trace,
                            early_exit=early_exit, seed=args.seed)
    except NotNegativeDefiniteError as e:
        raise _CliError(f"not negative definite: {e}")

    trace_lines = []
    if args.trace and result.trace is not None:
        for step in result.trace.steps:
            trace_lines.append(
                f"step={step.index} vertex={step.chosen_vertex} "
                f"chi={step.chi_after} "
                f"cycle={_cycle_str(g, step.cycle_after)}")
    if args.format == "machine":
        payload = {
            "verdict": result.verdict,
            "chi": result.chi_min,
            "steps": result.n_steps,
            "z_min": result.z_min,
        }
        if args.trace:
            payload["trace"] = trace_lines
        _emit_machine("laufer", payload, g)
    else:
        print("\n".join(_echo_lines(g)))
        for line in trace_lines:
            print(line)
        print(f"verdict={result.verdict} chi={result.chi_min} "
              f"steps={result.n_steps}")
        if result.z_min is not None:
            print(f"z_min={_cycle_str(g, result.z_min)}")
    return 0 if result.verdict == LATTICE_L_SPACE else 1


def _report_payload(r: ClassificationReport) -> dict:
    payload = {
        "negative_definite": r.negative_definite,
        "minimal": r.minimal,
        "very_bad_witness": r.very_bad_witness,
        "proper_e8_witness": r.proper_e8_witness,
        "insulated": r.insulated,
        "insulation_violation": list(r.insulation_violation)
        if r.insulation_violation else None,
        "laufer_verdict": r.laufer_verdict,
        "prediction": r.prediction,
    }
    if r.minimalized is not None:
        payload["minimalized"] = serialize(r.minimalized)
    return payload


def _report_text(r: ClassificationReport) -> list[str]:
    lines = [
        f"negative_definite={r.negative_definite}",
        f"minimal={r.minimal}",
        f"very_bad_witness={r.very_bad_witness}",
        "proper_e8_witness=" + (
            ",".join(f"{role}:{v}" for role, v in r.proper_e8_witness.items())
            if r.proper_e8_witness else "None"),
        f"insulated={r.insulated}",
        "insulation_violation=" + (
            f"{r.insulation_violation[0]}:{r.insulation_violation[1]}"
            if r.insulation_violation else "None"),
        f"laufer_verdict={r.laufer_verdict}",
        f"prediction={r.prediction}",
    ]
    if r.minimalized is not None:
        lines.append("minimalized_to:")
        lines.extend("  " + ln for ln in serialize(r.minimalized).splitlines())
    return lines


def cmd_classify(args: argparse.Namespace) -> int:
    g = _load(args.file)
    report = classify(g)
    if args.format == "machine":
        _emit_machine("classify", _report_payload(report), g)
    else:
        print("\n".join(_echo_lines(g)))
        print("\n".join(_report_text(report)))
    return 0


def _marked(g: PlumbingGraph, root: str) -> MarkedGraph:
    if root not in g:
        raise _CliError(f"unknown vertex {root!r}")
    return MarkedGraph(g, root)


def cmd_derationalize(args: argparse.Namespace) -> int:
    g = _load(args.file)
    mg = _marked(g, args.root)
    try:
        form = rooted_diagonalize(g, args.root)
        slope = derationalizer(mg)
    except (DegenerateFormError, NotNegativeDefiniteError) as e:
        raise _CliError(f"cannot derationalize: {e}")
    delta = form.entries[args.root]
    if args.format == "machine":
        _emit_machine("derationalize", {
            "root": args.root,
            "delta": _frac(delta),
            "derationalizer": _frac(slope),
            "diagonal": {v: _frac(x) for v, x in form.entries.items()},
        }, g)
    else:
        print("\n".join(_echo_lines(g)))
        print(f"delta={_frac(delta)} derationalizer={_frac(slope)}")
        print("diagonal=" + ",".join(
            f"{v}:{_frac(form.entries[v])}" for v in g.ids))
    return 0


def cmd_surger(args: argparse.Namespace) -> int:
    g = _load(args.file)
    mg = _marked(g, args.root)
    try:
        coef = parse_rational(args.coef)
        result = surger(mg, coef)
    except (ValueError, ArithmeticDomainError) as e:
        raise _CliError(f"cannot surger: {e}")
    if args.format == "machine":
        _emit_machine("surger", {
            "root": args.root,
            "coef": _frac(coef),
            "result": serialize(result),
        }, g)
    else:
        print("\n".join(_echo_lines(g)))
        print(serialize(result), end="")
    return 0


def _word_str(word) -> str:
    if not word:
        return "1"
    parts = []
    for gen, exp in word:
        parts.append(gen if exp == 1 else f"{gen}^{exp}")
    return " ".join(parts)


def cmd_pi1(args: argparse.Namespace) -> int:
    g = _load(args.file)
    pres = mumford_presentation(g)
    divisors = abelianization_invariants(pres) if args.abelianization else None
    if args.format == "machine":
        payload = {
            "generators": list(pres.generators),
            "relations": [[[gen, exp] for gen, exp in word]
                          for word in pres.relations],
            "neighbor_ordering": {v: list(o)
                                  for v, o in pres.neighbor_ordering.items()},
        }
        if divisors is not None:
            payload["h1_divisors"] = divisors
        _emit_machine("pi1", payload, g)
    else:
        print("\n".join(_echo_lines(g)))
        print("gens: " + ", ".join(pres.generators))
        for word in pres.relations:
            print(_word_str(word))
        if divisors is not None:
            print("H1 divisors: " + ", ".join(str(d) for d in divisors))
    return 0


def cmd_hjcf(args: argparse.Namespace) -> int:
    try:
        r = parse_rational(args.rational)
        entries = hj_expand(r)
    except (ValueError, ArithmeticDomainError) as e:
        raise _CliError(f"cannot expand: {e}")
    assert hj_value(entries) == r
    if args.format == "machine":
        _emit_machine("hjcf", {"rational": _frac(r), "entries": entries},
                      None)
    else:
        print(f"value={_frac(r)}")
        print("entries=" + ",".join(str(a) for a in entries))
    return 0


def _parse_weight_range(text: str) -> tuple[int, int]:
    try:
        lo_s, hi_s = text.split("..", 1)
        lo, hi = int(lo_s), int(hi_s)
    except ValueError:
        raise _CliError(f"bad weight range {text!r}; expected a..b")
    if lo > hi:
        raise _CliError(f"empty weight range {text!r}")
    return lo, hi


def cmd_enumerate(args: argparse.Namespace) -> int:
    lo, hi = _parse_weight_range(args.weights)
    out_dir = Path(args.out) if args.out else None
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
    counts: dict[str, int] = {}
    total = 0
    try:
        stream = enumerate_and_classify(args.max_vertices, lo, hi)
        for i, (g, report) in enumerate(stream):
            total += 1
            counts[report.prediction] = counts.get(report.prediction, 0) + 1
            if out_dir is not None:
                body = serialize(g) + "\n".join(_report_text(report)) + "\n"
                (out_dir / f"graph_{len(g):02d}_{i:06d}.txt").write_text(
                    body, encoding="utf-8")
    except ValueError as e:
        raise _CliError(str(e))
    summary = {"total": total, "by_prediction": counts}
    if args.format == "machine":
        _emit_machine("enumerate", summary, None)
    else:
        print(f"total={total}")
        for key in sorted(counts):
            print(f"{key}={counts[key]}")
    return 0


class _Parser(argparse.ArgumentParser):
    """Argument parser that accepts negative rationals and weight ranges
    (-3/2, -3..-2) as values rather than mistaking them for options."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = re.compile(r"^-\d")


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="plumbcalc",
        description="Exact calculator for negative-definite plumbing trees")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    def add(name: str, func, help_: str, file_arg: bool = True):
        p = sub.add_parser(name, help=help_)
        if file_arg:
            p.add_argument("file", help="plumbing graph file")
        p.add_argument("--format", choices=("text", "machine"),
                       default="text")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "parse and summarize a graph file")

    p = add("laufer", cmd_laufer, "run the minimal-cycle algorithm")
    p.add_argument("--trace", action="store_true",
                   help="print one line per iteration")
    p.add_argument("--tie-break", choices=("first", "last", "max", "random"),
                   default="first")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-early-exit", action="store_true",
                   help="always iterate to the minimal cycle")
    p.add_argument("--minimalize", action="store_true",
                   help="blow down a non-minimal input first")

    add("classify", cmd_classify, "structural report and prediction")

    p = add("derationalize", cmd_derationalize,
            "diagonal entry and filling slope at a root")
    p.add_argument("--root", required=True)

    p = add("surger", cmd_surger, "attach a continued-fraction chain")
    p.add_argument("--root", required=True)
    p.add_argument("--coef", required=True, help="surgery coefficient p/q")

    p = add("pi1", cmd_pi1, "fundamental group presentation")
    p.add_argument("--abelianization", action="store_true")

    p = sub.add_parser("hjcf", help="continued-fraction expansion")
    p.add_argument("rational", help="rational number p/q")
    p.add_argument("--format", choices=("text", "machine"), default="text")
    p.set_defaults(func=cmd_hjcf)

    p = sub.add_parser("enumerate",
                       help="classify all small trees in a weight range")
    p.add_argument("--max-vertices", type=int, required=True)
    p.add_argument("--weights", required=True, help="range a..b")
    p.add_argument("--out", help="directory for per-graph reports")
    p.add_argument("--format", choices=("text", "machine"), default="text")
    p.set_defaults(func=cmd_enumerate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code
    except GraphError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
