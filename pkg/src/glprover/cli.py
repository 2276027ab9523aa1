"""Batch command-line surface.

Exit statuses: 0 = theorem proved (or check passed), 1 = refuted / rejected
(countermodel or report emitted), 2 = usage or input error, 3 = resource
budget exceeded.  Internal self-check failures exit with 4; they indicate an
engine bug, never bad input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import henkin, hilbert, semantics, sequent
from .errors import BudgetExceededError, InternalCheckError
from .syntax import ParseError, parse, pretty

PROVED, REFUTED, USAGE_ERROR, BUDGET_ERROR, INTERNAL_ERROR = 0, 1, 2, 3, 4


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return USAGE_ERROR


def _emit(text: str, destination: str | None):
    """Write to a file, or to stdout when the destination is '-'."""
    if destination is None:
        return
    if destination == "-":
        sys.stdout.write(text)
    else:
        with open(destination, "w") as fh:
            fh.write(text)


def _read_formula(args) -> "tuple[object, int] | object":
    text = args.formula
    if text is None and getattr(args, "file", None):
        try:
            with open(args.file) as fh:
                text = fh.read().strip()
        except OSError as exc:
            return None, _fail(str(exc))
    if text is None:
        return None, _fail("no formula given (inline argument or --file)")
    try:
        return parse(text), -1
    except ParseError as exc:
        return None, _fail(str(exc))


def cmd_prove(args) -> int:
    formula, status = _read_formula(args)
    if formula is None:
        return status
    try:
        result = sequent.search(formula, max_steps=args.max_steps)
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return BUDGET_ERROR
    if isinstance(result, sequent.Proved):
        print(f"proved: {pretty(formula)}")
        if args.emit_proof:
            d = result.derivation
            if args.format == "structured":
                _emit(sequent.derivation_to_json(d), args.emit_proof)
            elif args.format == "graph":
                _emit(sequent.derivation_to_dot(d), args.emit_proof)
            else:
                _emit(sequent.derivation_to_text(d), args.emit_proof)
        return PROVED
    print(f"refuted: {pretty(formula)} (countermodel with "
          f"{len(result.countermodel.frame.worlds)} worlds, false at world {result.falsified_at})")
    if args.emit_countermodel:
        m, w = result.countermodel, result.falsified_at
        if args.format == "graph":
            _emit(semantics.model_to_dot(m, w), args.emit_countermodel)
        else:
            _emit(semantics.model_to_json(m, w), args.emit_countermodel)
    return REFUTED


def cmd_check_model(args) -> int:
    try:
        with open(args.model) as fh:
            model, _ = semantics.model_from_json(fh.read())
    except (OSError, ValueError) as exc:
        return _fail(f"cannot read model: {exc}")
    try:
        formula = parse(args.formula)
    except ParseError as exc:
        return _fail(str(exc))
    if args.world not in model.frame.worlds:
        return _fail(f"world {args.world} is not in the model")
    problems = semantics.itf_report(model.frame)
    if semantics.holds(model, formula, args.world):
        if not problems:
            print(f"holds: {pretty(formula)} at world {args.world}; frame is ITF")
            return PROVED
        print(f"holds at world {args.world}, but the frame is not ITF:")
    else:
        print(f"does not hold: {pretty(formula)} at world {args.world}")
    for problem in problems:
        print(f"  - {problem}")
    return REFUTED


def cmd_oracle(args) -> int:
    formula, status = _read_formula(args)
    if formula is None:
        return status
    if args.max_worlds < 1:
        return _fail("--max-worlds must be at least 1")
    try:
        verdict = semantics.oracle_valid(formula, args.max_worlds, eval_budget=args.eval_budget)
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return BUDGET_ERROR
    if isinstance(verdict, semantics.ValidUpTo):
        print(f"valid on every ITF frame with up to {verdict.bound} worlds")
        return PROVED
    print(f"falsified at world {verdict.world}")
    _emit(semantics.model_to_json(verdict.model, verdict.world), args.emit_countermodel or "-")
    return REFUTED


def cmd_henkin(args) -> int:
    formula, status = _read_formula(args)
    if formula is None:
        return status
    try:
        outcome = henkin.build_standard_model(formula, max_candidates=args.eval_budget)
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return BUDGET_ERROR
    except InternalCheckError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return INTERNAL_ERROR
    if outcome is None:
        print(f"theorem: {pretty(formula)} (no standard countermodel)")
        return PROVED
    sm, world = outcome
    index = sm.worlds.index(world)
    print(f"refuted: standard model with {len(sm.worlds)} worlds, false at world {index}")
    if args.emit_model:
        _emit(semantics.model_to_json(sm.model, index), args.emit_model)
    if args.emit_worlds:
        doc = henkin.world_lists_to_dict(sm)
        _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.emit_worlds)
    return REFUTED


def cmd_bisim(args) -> int:
    models = []
    for path in (args.model_a, args.model_b):
        try:
            with open(path) as fh:
                model, _ = semantics.model_from_json(fh.read())
        except (OSError, ValueError) as exc:
            return _fail(f"cannot read model {path}: {exc}")
        models.append(model)
    pairs = semantics.largest_bisimulation(models[0], models[1])
    print(json.dumps(sorted([x, y] for x, y in pairs)))
    return PROVED


def cmd_check_proof(args) -> int:
    try:
        with open(args.proof) as fh:
            proof = hilbert.proof_from_json(fh.read())
    except (OSError, ValueError, ParseError) as exc:
        return _fail(f"cannot read proof: {exc}")
    conclusion, report = hilbert.check_proof_detailed(proof)
    if conclusion is not None:
        print(f"accepted: {pretty(conclusion)}")
        return PROVED
    print(f"rejected: {report}")
    return REFUTED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="glprover",
        description="Decision procedure for Goedel-Loeb provability logic: "
                    "prove a formula in the labelled sequent calculus or emit a "
                    "finite irreflexive-transitive countermodel.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_formula_args(p):
        p.add_argument("formula", nargs="?", help="formula in concrete syntax (inline wins over --file)")
        p.add_argument("--file", help="read the formula from a file")

    p = sub.add_parser("prove", help="run sequent proof search")
    add_formula_args(p)
    p.add_argument("--emit-proof", metavar="PATH", help="write the derivation to PATH ('-' for stdout)")
    p.add_argument("--emit-countermodel", metavar="PATH", help="write the countermodel to PATH ('-' for stdout)")
    p.add_argument("--format", choices=("text", "structured", "graph"), default="text")
    p.add_argument("--max-steps", type=int, default=sequent.DEFAULT_MAX_STEPS)
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("check-model", help="check a formula in a model file")
    p.add_argument("model", help="model file (JSON)")
    p.add_argument("formula")
    p.add_argument("world", type=int)
    p.set_defaults(func=cmd_check_model)

    p = sub.add_parser("oracle", help="exhaustive bounded ITF validity check")
    add_formula_args(p)
    p.add_argument("--max-worlds", type=int, required=True)
    p.add_argument("--eval-budget", type=int, default=semantics.DEFAULT_EVAL_BUDGET)
    p.add_argument("--emit-countermodel", metavar="PATH")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("henkin", help="standard countermodel from maximal consistent lists")
    add_formula_args(p)
    p.add_argument("--eval-budget", type=int, default=henkin.DEFAULT_CANDIDATE_BUDGET,
                   help="refuse when 2^(number of subformulas) exceeds this ceiling")
    p.add_argument("--emit-model", metavar="PATH")
    p.add_argument("--emit-worlds", metavar="PATH", help="write the index-to-list sidecar")
    p.set_defaults(func=cmd_henkin)

    p = sub.add_parser("bisim", help="largest bisimulation between two model files")
    p.add_argument("model_a")
    p.add_argument("model_b")
    p.set_defaults(func=cmd_bisim)

    p = sub.add_parser("check-proof", help="check a Hilbert-style proof file")
    p.add_argument("proof")
    p.set_defaults(func=cmd_check_proof)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, matching our table; re-raise others
        return USAGE_ERROR if exc.code else 0
    try:
        return args.func(args)
    except InternalCheckError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return INTERNAL_ERROR


def console_entry():
    sys.exit(main())
