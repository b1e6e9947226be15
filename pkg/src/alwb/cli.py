"""Command-line front end.

Exit codes: 0 valid/accepted/yes, 1 invalid/rejected/no, 2 unknown up to
the search bound, 3 usage or input error.  With --machine the output is
line-oriented ``key=value`` pairs.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from .errors import AlwbError
from .formulas import (
    NameTable, parse_consecution, parse_formula, print_consecution,
    print_formula,
)
from .infinitary import SCHEMAS, approx_decide, instantiate
from .linear import DEFAULT_SCENARIO_BUDGET
from .logics import Invalid, UnknownUpToBound, Valid, decide, decide_in_model, get_logic
from .models import (
    MVUnit, RationalChain, check_strongly_decreasing, evaluate, format_element,
    is_designated, model_spec, parse_element, parse_model_spec, refutes,
)
from .proofs import Accepted, check_proof, load_proof
from .translations import tau_flip, tau_luk_to_lu, translate_consecution

BUDGET_ENV = "ALWB_SCENARIO_BUDGET"


@dataclass
class Config:
    scenario_budget: int = DEFAULT_SCENARIO_BUDGET
    search_bound: int = 32
    sample_count: int = 10_000
    machine: bool = False


def _emit(config: Config, human: list[str], machine: list[tuple[str, str]]) -> None:
    lines = [f"{k}={v}" for k, v in machine] if config.machine else human
    for line in lines:
        print(line)


def _read_text(value: str, file_value: str | None) -> str:
    if file_value is not None:
        if file_value == "-":
            return sys.stdin.read().strip()
        with open(file_value, encoding="utf-8") as handle:
            return handle.read().strip()
    if value is None:
        raise AlwbError("missing input (pass it inline or with --file)")
    return value


def _witness_items(verdict: Invalid, labeler=None) -> list[tuple[str, str]]:
    items = []
    for index in sorted(verdict.assignment):
        name = labeler(index) if labeler else f"p{index}"
        items.append((name, format_element(verdict.assignment[index])))
    model = verdict.model
    if isinstance(model, RationalChain) and model.point is not None:
        items.append(("f", format_element(model.point)))
    return items


def _report_verdict(config: Config, verdict, labeler=None) -> int:
    if isinstance(verdict, Valid):
        _emit(config, ["VALID"], [("verdict", "valid")])
        return 0
    if isinstance(verdict, Invalid):
        items = _witness_items(verdict, labeler)
        witness = ", ".join(f"{k}={v}" for k, v in items)
        _emit(config,
              ["INVALID", f"witness: {witness}", f"model: {model_spec(verdict.model)}"],
              [("verdict", "invalid"), ("model", model_spec(verdict.model))]
              + [(f"witness.{k}", v) for k, v in items])
        return 1
    assert isinstance(verdict, UnknownUpToBound)
    _emit(config, [f"UNKNOWN_UP_TO_BOUND={verdict.bound}"],
          [("verdict", "unknown"), ("bound", str(verdict.bound))])
    return 2


def _parse_assignment(model, text: str, table: NameTable) -> dict:
    assignment = {}
    depth = 0
    current = []
    chunks = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            chunks.append("".join(current))
            current = []
        else:
            current.append(ch)
    chunks.append("".join(current))
    for chunk in chunks:
        if not chunk.strip():
            continue
        name, eq, value = chunk.partition("=")
        if not eq:
            raise AlwbError(f"bad assignment entry {chunk!r}")
        name = name.strip().strip('"')
        index = table.lookup(name)
        if index is None:
            raise AlwbError(f"variable {name!r} does not occur in the formula")
        assignment[index] = parse_element(model, value.strip().strip('"'))
    return assignment


def cmd_decide(args, config: Config) -> int:
    text = _read_text(args.consecution, args.file)
    if args.logic is not None:
        logic, notice = get_logic(args.logic)
        if notice and not config.machine:
            print(f"note: {notice}", file=sys.stderr)
        consecution = parse_consecution(text, pointed=logic.language != "ab")
        verdict = decide(logic, consecution, budget=config.scenario_budget)
    else:
        model = parse_model_spec(args.model)
        consecution = parse_consecution(text)
        verdict = decide_in_model(model, consecution, config.search_bound,
                                  budget=config.scenario_budget)
    return _report_verdict(config, verdict)


def cmd_eval(args, config: Config) -> int:
    model = parse_model_spec(args.model)
    table = NameTable()
    pointed = not (isinstance(model, RationalChain) and model.point is None)
    formula = parse_formula(args.formula, pointed=pointed, table=table)
    assignment = _parse_assignment(model, args.assign or "", table)
    value = evaluate(model, assignment, formula)
    designated = is_designated(model, value)
    _emit(config,
          [f"{format_element(value)}, {'designated' if designated else 'not designated'}"],
          [("value", format_element(value)),
           ("designated", "true" if designated else "false")])
    return 0


def cmd_translate(args, config: Config) -> int:
    mapper = {"luk2lu": tau_luk_to_lu, "flip": tau_flip}[args.map]
    if args.formula is not None:
        out = print_formula(mapper(parse_formula(args.formula)))
        _emit(config, [out], [("formula", out)])
    else:
        consecution = parse_consecution(_read_text(args.consecution, args.file))
        out = print_consecution(translate_consecution(consecution, mapper))
        _emit(config, [out], [("consecution", out)])
    return 0


def cmd_approx(args, config: Config) -> int:
    schema = SCHEMAS[args.rule]
    if (args.logic is None) == (args.model is None):
        raise AlwbError("pass exactly one of --logic or --model")
    if args.logic is not None:
        logic, notice = get_logic(args.logic)
        if notice and not config.machine:
            print(f"note: {notice}", file=sys.stderr)
        verdict = approx_decide(schema, args.n, logic=logic,
                                budget=config.scenario_budget)
    else:
        verdict = approx_decide(schema, args.n, model=parse_model_spec(args.model),
                                bound=config.search_bound,
                                budget=config.scenario_budget)
    return _report_verdict(config, verdict,
                           labeler=lambda i: schema.var_label(i, args.n))


def cmd_check_proof(args, config: Config) -> int:
    proof = load_proof(args.path)
    result = check_proof(proof)
    if isinstance(result, Accepted):
        _emit(config, ["ACCEPTED"], [("result", "accepted")])
        return 0
    _emit(config, [f"REJECTED at step {result.step}: {result.reason}"],
          [("result", "rejected"), ("step", str(result.step)),
           ("reason", result.reason)])
    return 1


def cmd_sds_check(args, config: Config) -> int:
    model = parse_model_spec(args.model)
    prefix = tuple(parse_element(model, part)
                   for part in _split_top_level(args.seq))
    ok = check_strongly_decreasing(model, prefix, args.n_cap)
    _emit(config,
          [f"strongly decreasing (n_cap={args.n_cap}): {'yes' if ok else 'no'}"],
          [("result", "true" if ok else "false")])
    return 0 if ok else 1


def _split_top_level(text: str) -> list[str]:
    parts, depth, current = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    parts.append("".join(current))
    return [p for p in (p.strip() for p in parts) if p]


def cmd_witness_verify(args, config: Config) -> int:
    model = parse_model_spec(args.model)
    table = NameTable()
    pointed = not (isinstance(model, RationalChain) and model.point is None)
    consecution = parse_consecution(_read_text(args.consecution, args.file),
                                    pointed=pointed, table=table)
    assignment = _parse_assignment(model, args.assign or "", table)
    ok = refutes(model, assignment, consecution)
    _emit(config, [f"refutes: {'yes' if ok else 'no'}"],
          [("refutes", "true" if ok else "false")])
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="alwb",
        description="Exact decision procedures for Abelian-family logics")
    parser.add_argument("--machine", action="store_true",
                        help="print line-oriented key=value output")
    parser.add_argument("--budget", type=int, default=None,
                        help=f"scenario budget (default 2^20, env {BUDGET_ENV})")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="decide a consecution in a logic or model")
    p.add_argument("--logic", help="ab, pab, lu, lustar, pab-f, pab-negf, "
                                   "pab-fneq0, ab-as-pab, luk (aliases rab, luinf)")
    p.add_argument("--model", help='model spec, e.g. "Q@-1" or "Q@-1 x Q@0"')
    p.add_argument("--bound", type=int, default=None,
                   help="search bound for discrete models (default 32)")
    p.add_argument("--file", help="read the consecution from a file ('-' = stdin)")
    p.add_argument("consecution", nargs="?", help='e.g. "p, p->q |- q"')
    p.set_defaults(handler=cmd_decide)

    p = sub.add_parser("eval", help="evaluate a formula in a model")
    p.add_argument("--model", required=True)
    p.add_argument("--assign", default="", help='e.g. p=3,q=1/2 or p="(0,1)"')
    p.add_argument("--formula", required=True)
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("translate", help="apply a formula translation")
    p.add_argument("--map", required=True, choices=["luk2lu", "flip"])
    p.add_argument("--formula")
    p.add_argument("--consecution")
    p.add_argument("--file")
    p.set_defaults(handler=cmd_translate)

    p = sub.add_parser("approx", help="decide a finite approximant of a rule")
    p.add_argument("--rule", required=True, choices=sorted(SCHEMAS))
    p.add_argument("--n", required=True, type=int, help="premise cutoff")
    p.add_argument("--logic")
    p.add_argument("--model")
    p.add_argument("--bound", type=int, default=None)
    p.set_defaults(handler=cmd_approx)

    p = sub.add_parser("check-proof", help="check a Hilbert-style proof file")
    p.add_argument("path")
    p.set_defaults(handler=cmd_check_proof)

    p = sub.add_parser("sds-check", help="check a strongly decreasing prefix")
    p.add_argument("--model", required=True)
    p.add_argument("--seq", required=True, help='e.g. "1,1/2,1/4"')
    p.add_argument("--n-cap", type=int, default=4)
    p.set_defaults(handler=cmd_sds_check)

    p = sub.add_parser("witness-verify", help="check that an assignment refutes")
    p.add_argument("--model", required=True)
    p.add_argument("--assign", default="")
    p.add_argument("--consecution")
    p.add_argument("--file")
    p.set_defaults(handler=cmd_witness_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    budget = args.budget
    if budget is None:
        budget = int(os.environ.get(BUDGET_ENV, DEFAULT_SCENARIO_BUDGET))
    config = Config(scenario_budget=budget, machine=args.machine)
    if getattr(args, "bound", None) is not None:
        config.search_bound = args.bound
    if config.scenario_budget <= 0 or config.search_bound < 0:
        print("error: budget and bound must be positive", file=sys.stderr)
        return 3
    try:
        return args.handler(args, config)
    except AlwbError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
