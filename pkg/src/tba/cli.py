"""``tba``: command-line front end.

Exit codes: 0 holds / valid, 1 countermodel or failure, 2 usage or I/O error,
3 bounded search inconclusive.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import conditions as cond
from . import logic, quantifiers, suite, topology
from .errors import TBAError
from .formula import parse_formula, parse_sequent, to_text
from .operators import (
    ENUMERATION_MAX_POINTS, Operator, all_tables, cube_check_tables, sample_tables,
)  # fmt: skip
from .serialization import dumps, element_to_json, load_model, model_to_json, operator_from_json
from .topology import OperatorRole

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _shared() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--max-points", type=int, default=2)
    p.add_argument("--assume", action="append", default=[], metavar="ROLE:COND,...")
    p.add_argument("--strategy", choices=logic.STRATEGIES)
    return p


def build_parser() -> argparse.ArgumentParser:
    shared = _shared()
    ap = _Parser(prog="tba", description="Workbench for operators on finite Boolean algebras of sets.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check-conditions", parents=[shared], help="check conditions on an operator")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("-m", "--model", help="model file; its closure is checked")
    src.add_argument("-o", "--operator", help="operator file")
    src.add_argument("-t", "--table", help="comma-separated masks, e.g. 0,3,3,3")
    p.add_argument("--role", default="C", help="derive this role (C, I, E, B, F) from the closure of a model")
    p.add_argument("-c", "--conditions", help="comma-separated names; default: every catalogued condition")

    for name, flag, what, summary in (
        ("eval", "-f", "formula", "value of a formula in a model"),
        ("valid", "-f", "formula", "is a formula top in a model"),
        ("consequence", "-s", "sequent", "does a sequent hold in a model"),
    ):
        p = sub.add_parser(name, parents=[shared], help=summary)
        p.add_argument("-m", "--model", required=True)
        p.add_argument(flag, dest="text", required=True, help=what)

    p = sub.add_parser("search", parents=[shared], help="look for a countermodel")
    goal = p.add_mutually_exclusive_group(required=True)
    goal.add_argument("-f", "--formula")
    goal.add_argument("-s", "--sequent")

    p = sub.add_parser("cube", parents=[shared], help="check the cube of opposition")
    p.add_argument("--points", type=int, default=2)
    p.add_argument("--exhaustive", action="store_true")

    sub.add_parser("topology-roundtrip", parents=[shared], help="derive and reconstruct every finite topology")
    sub.add_parser("monoid", parents=[shared], help="composition bounds on finite topologies")

    p = sub.add_parser("barcan", parents=[shared], help="Barcan formula experiments")
    p.add_argument("-m", "--model", help="check one operator (the model's closure) instead of scanning")
    p.add_argument("--role", default="C")
    p.add_argument("--sort-size", type=int, default=2)

    p = sub.add_parser("report", parents=[shared], help="named reports")
    p.add_argument("name", choices=("paper-suite", "negation-map", "border-recovery", "quantifier-probe"))
    p.add_argument("--criteria", help="comma-separated criterion numbers (paper-suite only)")
    return ap


# -- helpers ---------------------------------------------------------------------------------


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(dumps(payload))
    else:
        print(text)


def _operator_from_args(args) -> Operator:
    if args.table:
        masks = [int(x) for x in args.table.replace(" ", "").split(",") if x]
        n = (len(masks) - 1).bit_length()
        return Operator(n, masks)
    if args.operator:
        with open(args.operator, encoding="utf-8") as fh:
            return operator_from_json(json.load(fh))
    m = load_model(args.model)
    return topology.derive(m.closure, OperatorRole.CLOSURE, args.role)


def _all_condition_names() -> list[str]:
    return [c.value for c in cond.ConditionId]


# -- commands ----------------------------------------------------------------------------------


def cmd_check_conditions(args) -> int:
    f = _operator_from_args(args)
    names = [c.strip() for c in args.conditions.split(",")] if args.conditions else _all_condition_names()
    rows = []
    for name in names:
        r = cond.check(name, f)
        rows.append({"condition": r.condition, "holds": r.holds, "witness": r.witness, "approximate": r.approximate})
    all_ok = all(r["holds"] for r in rows)
    text = "\n".join(
        f"{r['condition']:<10} {'holds' if r['holds'] else 'fails'}"
        + (f"  witness {dumps(r['witness'])}" if r["witness"] else "")
        + ("  (approximate)" if r["approximate"] else "")
        for r in rows
    )
    _emit(args, {"operator": {"points": f.n, "table": list(f.table)}, "results": rows}, text)
    return EXIT_OK if all_ok else EXIT_FAIL


def cmd_eval(args) -> int:
    m = load_model(args.model)
    f = parse_formula(args.text)
    v = logic.eval_formula(f, m)
    _emit(args, {"formula": to_text(f), "value": element_to_json(v)}, str(list(v.points)))
    return EXIT_OK


def cmd_valid(args) -> int:
    m = load_model(args.model)
    f = parse_formula(args.text)
    v = logic.eval_formula(f, m)
    ok = v.bits == (1 << m.n) - 1
    _emit(args, {"formula": to_text(f), "valid": ok, "value": element_to_json(v)},
          f"{'valid' if ok else 'not valid'}: value {list(v.points)}")  # fmt: skip
    return EXIT_OK if ok else EXIT_FAIL


def cmd_consequence(args) -> int:
    m = load_model(args.model)
    s = parse_sequent(args.text)
    ok = logic.consequence(s, m)
    _emit(args, {"sequent": to_text(s), "mode": s.mode, "holds": ok}, "holds" if ok else "fails")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_search(args) -> int:
    goal = parse_sequent(args.sequent) if args.sequent else parse_sequent(args.formula)
    res = logic.search(
        goal, max_points=args.max_points, assumptions=logic.parse_assumptions(args.assume),
        strategy=args.strategy, samples=args.samples, seed=args.seed,
    )  # fmt: skip
    payload = {
        "goal": to_text(goal), "status": res.status, "strategy": res.strategy,
        "max_points": res.max_points, "candidates": res.candidates,
        "model": model_to_json(res.model) if res.model else None,
    }  # fmt: skip
    if args.format == "json":
        print(dumps(payload))
    elif res.found:
        # the model alone, so the output can be fed straight back with -m
        print(dumps(model_to_json(res.model)))
    else:
        label = "VALID" if res.status == "valid" else "INCONCLUSIVE (no countermodel in bounded search)"
        print(f"{label}: {res.candidates} operators searched with strategy {res.strategy}")
    return {"valid": EXIT_OK, "countermodel": EXIT_FAIL}.get(res.status, EXIT_INCONCLUSIVE)


def cmd_cube(args) -> int:
    n = args.points
    exhaustive = args.exhaustive or n <= ENUMERATION_MAX_POINTS
    if exhaustive and n > ENUMERATION_MAX_POINTS:
        raise TBAError(f"exhaustive cube checks are limited to {ENUMERATION_MAX_POINTS} points")
    tables = all_tables(n) if exhaustive else sample_tables(n, args.samples, args.seed)
    good = int(cube_check_tables(tables, n).sum())
    total = len(tables)
    _emit(args, {"points": n, "exhaustive": exhaustive, "passed": good, "operators": total},
          f"{good}/{total} operators pass" + ("" if exhaustive else " (sampled)"))  # fmt: skip
    return EXIT_OK if good == total else EXIT_FAIL


def cmd_topology_roundtrip(args) -> int:
    if not 1 <= args.max_points <= 4:
        raise TBAError("topology round trips need --max-points between 1 and 4")
    roles = list(OperatorRole)
    rows = []
    ok = True
    for n in range(1, args.max_points + 1):
        c = np.array([t.table for t in topology.finite_topologies(n)], dtype=np.int64)
        derived = {r: topology.derive_tables(c, OperatorRole.CLOSURE, r, n) for r in roles}
        axiom_fail = roundtrip_fail = 0
        for r in roles:
            ax = topology.axiom_tables(derived[r], r, n)
            axiom_fail += int((~np.logical_and.reduce(list(ax.values()))).sum())
            for s in roles:
                roundtrip_fail += int((topology.derive_tables(derived[r], r, s, n) != derived[s]).any(axis=1).sum())
        rows.append({"points": n, "topologies": len(c), "axiom_failures": axiom_fail, "roundtrip_failures": roundtrip_fail})
        ok &= axiom_fail == 0 and roundtrip_fail == 0
    text = "\n".join(
        f"n={r['points']}: {r['topologies']} topologies, {r['axiom_failures']} axiom failures, "
        f"{r['roundtrip_failures']} round-trip failures"
        for r in rows
    )
    _emit(args, {"rows": rows}, text)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_monoid(args) -> int:
    res = suite.criterion_10() if args.max_points >= 4 else None
    if res is None:
        raise TBAError("the monoid report covers every topology on up to 4 points; use --max-points 4")
    _emit(args, {"passed": res.passed, "details": res.details},
          "\n".join(f"{k}: {v}" for k, v in res.details.items()))  # fmt: skip
    return EXIT_OK if res.passed else EXIT_FAIL


def cmd_barcan(args) -> int:
    if args.model:
        m = load_model(args.model)
        f = topology.derive(m.closure, OperatorRole.CLOSURE, args.role)
        sort = quantifiers.QuantSort.individuals(f.n, args.sort_size)
        rep = quantifiers.barcan_check(f, sort, samples=args.samples, seed=args.seed)
        ok = all(v["holds"] or not v["precondition_holds"] for v in rep.forms.values())
        payload = {"operator": list(f.table), "terms": rep.terms, "exhaustive": rep.exhaustive, "forms": rep.forms}
        text = "\n".join(
            f"{k}: precondition {v['precondition']} {'holds' if v['precondition_holds'] else 'fails'}; "
            f"form {'holds' if v['holds'] else 'fails'}" for k, v in rep.forms.items()
        )
        _emit(args, payload, text)
        return EXIT_OK if ok else EXIT_FAIL
    res = suite.criterion_13()
    _emit(args, {"passed": res.passed, "details": res.details},
          "\n".join(f"{k}: {v}" for k, v in res.details.items()) or "all hold")  # fmt: skip
    return EXIT_OK if res.passed else EXIT_FAIL


def cmd_report(args) -> int:
    if args.name == "paper-suite":
        numbers = [int(x) for x in args.criteria.split(",")] if args.criteria else None
        if numbers and any(not 1 <= k <= len(suite.CRITERIA) for k in numbers):
            raise TBAError(f"criteria are numbered 1..{len(suite.CRITERIA)}")
        results = suite.run_suite(numbers)
        payload = {
            "criteria": [
                {"number": r.number, "title": r.title, "passed": r.passed, "report_only": r.report_only,
                 "details": r.details}
                for r in results
            ]
        }  # fmt: skip
        text = "\n".join(r.line() for r in results)
        _emit(args, payload, text)
        return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL
    if args.name == "negation-map":
        rows = logic.negation_property_map(min(args.max_points, ENUMERATION_MAX_POINTS))
        text = "\n".join(
            f"{r['property']:<22} {r['negation']:<6} holding {r['holding']} "
            f"minimal Kuratowski subsets {r['minimal_conditions']}" for r in rows
        )
        _emit(args, {"rows": rows}, text)
        return EXIT_OK
    if args.name == "border-recovery":
        rows = logic.border_recovery_report(min(args.max_points, ENUMERATION_MAX_POINTS))
        text = "\n".join(
            f"{r['property']:<18} {r['negation']:<5} plain {r['plain']}/{r['operators']} "
            f"guarded {r['guarded']}/{r['operators']} Kuratowski plain {r['plain_kuratowski']}/{r['kuratowski']} "
            f"guarded {r['guarded_kuratowski']}/{r['kuratowski']}" for r in rows
        )
        _emit(args, {"rows": rows}, text)
        return EXIT_OK
    rows = quantifiers.open_complement_probe(min(args.max_points, ENUMERATION_MAX_POINTS))
    _emit(args, {"rows": rows}, "\n".join(str(r) for r in rows))
    return EXIT_OK


COMMANDS = {
    "check-conditions": cmd_check_conditions,
    "eval": cmd_eval,
    "valid": cmd_valid,
    "consequence": cmd_consequence,
    "search": cmd_search,
    "cube": cmd_cube,
    "topology-roundtrip": cmd_topology_roundtrip,
    "monoid": cmd_monoid,
    "barcan": cmd_barcan,
    "report": cmd_report,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (TBAError, OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"tba: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
