"""Command line front end: ``ratgroup {eval,canon,equal,analyze,dot,verify,gen}``.

Exit status is 0 on success, 1 for a failed property or an inequality, and
2 for usage, parse and input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import elements as el
from .cycles import analyze_cycles, is_oblivious, lipschitz_report
from .errors import RationalError
from .expr import parse_expr
from .generators import GeneratorSpec, gen_element, gen_machine
from .normalization import equal, minimize
from .transducer import check_word, eval_prefix, load, serialize, to_dict, to_dot
from .verify import SUITES, run_suite


def load_element(arg: str) -> el.Element:
    """A machine file (raw element) or an expression."""
    if os.path.isfile(arg):
        return el.raw(load(arg), label=arg)
    return parse_expr(arg)


def _emit(args, text: str, data) -> None:
    if args.format == "json":
        print(json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        print(text)


def cmd_eval(args) -> int:
    e = load_element(args.expr)
    w = check_word(args.word)
    out = eval_prefix(e.forward, w)
    _emit(args, out, {"expr": str(e), "input": w, "output": out})
    return 0


def cmd_canon(args) -> int:
    e = load_element(args.expr)
    form = minimize(e.forward)
    text = f"restrictions: {form.restriction_count}\n" + serialize(form.machine).rstrip("\n")
    _emit(args, text, {"restriction_count": form.restriction_count, "machine": to_dict(form.machine)})
    return 0


def cmd_equal(args) -> int:
    a, b = load_element(args.a), load_element(args.b)
    same = equal(a.forward, b.forward)
    _emit(args, "equal" if same else "not equal", {"equal": same})
    return 0 if same else 1


def _fmt_ratio(r) -> str | None:
    return None if r is None else str(r)


def cmd_analyze(args) -> int:
    e = load_element(args.expr)
    T = e.forward
    report = analyze_cycles(T)
    lip = lipschitz_report(T)
    lines = [f"accessible states: {report.accessible_count}"]
    sccs = []
    for info in report.sccs:
        names = [T.name(s) for s in info.states]
        lines.append(
            f"scc {{{', '.join(names)}}}: period {info.period}, "
            f"min output per cycle {info.min_output_per_cycle}, "
            f"empty-output cycle {'yes' if info.has_empty_output_cycle else 'no'}"
        )
        sccs.append({
            "states": names,
            "period": info.period,
            "min_output_per_cycle": info.min_output_per_cycle,
            "has_empty_output_cycle": info.has_empty_output_cycle,
        })
    lines.append(
        f"output/cycle length ratio: min {lip.min_ratio}, max {lip.max_ratio}"
        + ("; empty-output cycle (not bilipschitz evidence)" if lip.has_empty_output_cycle else "")
    )
    data = {
        "accessible_count": report.accessible_count,
        "sccs": sccs,
        "lipschitz": {
            "min_ratio": _fmt_ratio(lip.min_ratio),
            "max_ratio": _fmt_ratio(lip.max_ratio),
            "has_empty_output_cycle": lip.has_empty_output_cycle,
        },
    }
    if args.p is not None:
        machine = is_oblivious(T, args.p)
        witnessed = machine
        if not witnessed:
            try:
                witnessed = is_oblivious(minimize(T).machine, args.p)
            except RationalError:
                pass
        if witnessed:
            verdict = "oblivious"
        elif e.op == "fp" and e.args[0] == args.p:
            verdict = "not oblivious"
        else:
            verdict = "undetermined"
        lines.append(f"machine oblivious to {args.p}: {'yes' if machine else 'no'}")
        lines.append(f"element: {verdict}" + (" (witnessed)" if witnessed else ""))
        data["p"] = args.p
        data["machine_oblivious"] = machine
        data["element"] = verdict
    _emit(args, "\n".join(lines), data)
    return 0


def cmd_dot(args) -> int:
    e = load_element(args.expr)
    T = minimize(e.forward).machine if args.canonical else e.forward
    sys.stdout.write(to_dot(T))
    return 0


def cmd_verify(args) -> int:
    results = run_suite(args.suite, seed=args.seed, p=args.p)
    ok = all(r.passed for r in results)
    if args.format == "json":
        print(json.dumps({"passed": ok, "suites": [r.to_dict(args.timing) for r in results]}, indent=2, sort_keys=True))
    else:
        for r in results:
            print(r.summary(args.timing))
            for case in r.failures:
                print(f"  counterexample {case.name}: {case.witness}")
        print("all passed" if ok else "FAILED")
    return 0 if ok else 1


def cmd_gen(args) -> int:
    spec = GeneratorSpec(seed=args.seed, depth=args.depth, max_states=args.max_states)
    if args.kind == "machine":
        T = gen_machine(spec)
        _emit(args, serialize(T).rstrip("\n"), to_dict(T))
    else:
        e = gen_element(spec)
        _emit(args, str(e), {"expr": str(e), "states": e.forward.num_states})
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ratgroup", description=__doc__.splitlines()[0])
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[fmt], help="apply an element to a finite word")
    p.add_argument("expr")
    p.add_argument("word")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("canon", parents=[fmt], help="canonical machine and restriction count")
    p.add_argument("expr", help="expression or machine file")
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("equal", parents=[fmt], help="exit 0 when two elements are equal")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_equal)

    p = sub.add_parser("analyze", parents=[fmt], help="cycle periods and obliviousness")
    p.add_argument("expr")
    p.add_argument("--p", type=int)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("dot", help="DOT state diagram")
    p.add_argument("expr")
    p.add_argument("--canonical", action="store_true")
    p.set_defaults(func=cmd_dot)

    p = sub.add_parser("verify", parents=[fmt], help="run a property suite")
    p.add_argument("suite", choices=sorted(SUITES) + ["all"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--p", type=int)
    p.add_argument("--timing", action="store_true", help="include wall-clock times (not byte-stable)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", parents=[fmt], help="random element or machine")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--max-states", type=int, default=8)
    p.add_argument("--kind", choices=("element", "machine"), default="element")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (RationalError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
