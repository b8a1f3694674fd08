"""Command-line entry point.

Exit codes: 0 success (or Win / valid / halted / no violation), 1 for the
negative counterpart (Lose, invalid, not halted, violation found), 2 usage
or input errors, 3 resource limit or bit budget exceeded.  Output is
byte-deterministic for fixed inputs and seed; wall-clock timings only
appear behind ``--timing``.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import fgh, generators
from .game import GameFormatError, parse_game, serialize_game, validate
from .minsky import MachineFormatError, parse_machine, run_bounded
from .oracle import decide_fullobs, min_credit
from .solver import (
    LOSE,
    RESOURCE_LIMIT,
    WIN,
    build_safety_game,
    decide,
    solve_safety,
    tree_to_dot,
)
from .strategy import MealyStrategy, extract_strategy, simulate

EXIT_OK = 0
EXIT_NO = 1
EXIT_USAGE = 2
EXIT_LIMIT = 3


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_game(path: str):
    return parse_game(_read_text(path))


def _emit(args, text_lines: list[str], doc) -> None:
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        for line in text_lines:
            print(line)


def _verdict_exit(verdict: str) -> int:
    if verdict == WIN:
        return EXIT_OK
    if verdict == LOSE:
        return EXIT_NO
    return EXIT_LIMIT


def _cmd_check(args) -> int:
    try:
        g = _load_game(args.game)
    except GameFormatError as e:
        _emit(args, [f"invalid: {e}"], {"valid": False, "errors": [str(e)]})
        return EXIT_NO
    errs = validate(g)
    if errs:
        _emit(args, [f"invalid: {'; '.join(errs)}"], {"valid": False, "errors": errs})
        return EXIT_NO
    _emit(args, ["valid"], {"valid": True, "errors": []})
    return EXIT_OK


def _cmd_solve(args) -> int:
    g = _load_game(args.game)
    report = decide(
        g, args.credit, max_nodes=args.limits_nodes, max_time=args.limits_time
    )
    doc = report.to_dict(include_elapsed=args.timing)
    lines = [f"{report.verdict}"] + [
        f"{k}: {v}" for k, v in doc.items() if k != "verdict"
    ]
    if args.dot:
        arena, _ = build_safety_game(
            g, args.credit, max_nodes=args.limits_nodes, max_time=args.limits_time
        )
        _write_text(args.dot, tree_to_dot(arena))
    _emit(args, lines, doc)
    return _verdict_exit(report.verdict)


def _cmd_strategy(args) -> int:
    g = _load_game(args.game)
    arena, report = build_safety_game(
        g, args.credit, max_nodes=args.limits_nodes, max_time=args.limits_time
    )
    if not arena.complete:
        _emit(args, [RESOURCE_LIMIT], report.to_dict(include_elapsed=args.timing))
        return EXIT_LIMIT
    winning = solve_safety(arena)
    if arena.ROOT not in winning:
        _emit(args, [LOSE], {"verdict": LOSE})
        return EXIT_NO
    strat = extract_strategy(arena, winning)
    _write_text(args.output, strat.to_json())
    if args.dot:
        _write_text(args.dot, strat.to_dot())
    if args.output not in (None, "-"):
        _emit(
            args,
            [f"{WIN}", f"controller states: {len(strat.output)}"],
            {"verdict": WIN, "controller_states": len(strat.output)},
        )
    return EXIT_OK


def _cmd_simulate(args) -> int:
    g = _load_game(args.game)
    strat = MealyStrategy.from_json(_read_text(args.strategy))
    kwargs = {"seed": args.seed}
    if args.adam == "exhaustive":
        kwargs["depth"] = args.depth
    else:
        kwargs["steps"] = args.steps
    result = simulate(g, args.credit, strat, args.adam, **kwargs)
    doc = {
        "violated": result.violated,
        "min_energy_seen": result.min_energy_seen,
        "steps": result.steps,
    }
    _emit(
        args,
        [
            f"violated: {result.violated}",
            f"min_energy_seen: {result.min_energy_seen}",
            f"steps: {result.steps}",
        ],
        doc,
    )
    return EXIT_NO if result.violated else EXIT_OK


def _cmd_oracle(args) -> int:
    g = _load_game(args.game)
    table = min_credit(g)
    doc: dict = {"values": table.to_dict()}
    lines = [f"{q}: {'inf' if v is None else v}" for q, v in table.values.items()]
    code = EXIT_OK
    if args.credit is not None:
        verdict = decide_fullobs(g, args.credit)
        doc["verdict"] = verdict
        lines.insert(0, verdict)
        code = _verdict_exit(verdict)
    _emit(args, lines, doc)
    return code


def _cmd_gen(args) -> int:
    if args.generator == "pump":
        game = generators.gen_pump(args.m)
    else:
        machine = parse_machine(_read_text(args.machine))
        if args.generator == "minsky":
            game = generators.gen_minsky_game(machine)
        else:
            game = generators.gen_full(machine)
    _write_text(args.output, serialize_game(game))
    return EXIT_OK


def _cmd_minsky_run(args) -> int:
    machine = parse_machine(_read_text(args.machine))
    run = run_bounded(machine, args.bound, args.step_limit)
    doc = {
        "outcome": run.outcome.kind,
        "counter": run.outcome.counter,
        "step": run.outcome.step,
        "max_counter": run.max_counter,
        "trace_length": len(run.configs),
    }
    _emit(
        args,
        [f"{run.outcome.kind}"]
        + [f"{k}: {v}" for k, v in doc.items() if k != "outcome" and v is not None],
        doc,
    )
    return EXIT_OK if run.halted else EXIT_NO


def _parse_vector(text: str) -> tuple[int, ...]:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise ValueError("empty vector")
    outer_first = [int(p) for p in parts]
    return tuple(reversed(outer_first))  # stored innermost-first


def _cmd_fgh(args) -> int:
    if args.fgh_cmd == "eval":
        value = fgh.fast_growing(args.i, args.x, bit_budget=args.budget)
        _emit(args, [str(value)], {"value": value})
        return EXIT_OK
    if args.fgh_cmd == "phi":
        state = fgh.RewriteState(_parse_vector(args.a), args.x)
        value = fgh.eval_phi(state, bit_budget=args.budget)
        _emit(args, [str(value)], {"value": value})
        return EXIT_OK
    # rewrite
    state = fgh.RewriteState(_parse_vector(args.a), args.x)
    if args.rules:
        rules = [fgh.parse_rule(r.strip()) for r in args.rules.split(",")]
    else:
        rules = fgh.proper_sequence(state, max_steps=args.max_steps)
    result = fgh.replay(state, rules)
    lines = []
    if args.trace:
        lines.extend(s.describe() for s in result.states)
    if result.final is not None:
        lines.append(str(result.final))
    doc = {
        "rules": [str(r) for r in rules],
        "final": result.final,
    }
    if args.trace:
        doc["trace"] = [s.describe() for s in result.states]
    _emit(args, lines, doc)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="poeg",
        description="Partial-observation energy games: solve, extract and "
        "probe strategies, and generate hardness constructions.",
    )
    top.add_argument("--format", choices=["text", "json"], default="text")
    top.add_argument("--seed", type=int, default=0)
    top.add_argument("--timing", action="store_true", help="include wall-clock times")
    sub = top.add_subparsers(dest="command", required=True)

    def add_limits(p):
        p.add_argument("--limits-nodes", type=int, default=10**6)
        p.add_argument("--limits-time", type=float, default=60.0)

    p = sub.add_parser("check", help="validate a game file")
    p.add_argument("game")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("solve", help="decide the fixed initial credit problem")
    p.add_argument("game")
    p.add_argument("--credit", type=int, required=True)
    p.add_argument("--dot", help="write the belief tree in DOT format")
    add_limits(p)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("strategy", help="extract a winning controller")
    p.add_argument("game")
    p.add_argument("--credit", type=int, required=True)
    p.add_argument("-o", "--output", default="-")
    p.add_argument("--dot")
    add_limits(p)
    p.set_defaults(func=_cmd_strategy)

    p = sub.add_parser("simulate", help="play a controller against an adversary")
    p.add_argument("game")
    p.add_argument("--credit", type=int, required=True)
    p.add_argument("--strategy", required=True)
    p.add_argument("--adam", choices=["random", "greedy", "exhaustive"], default="random")
    p.add_argument("--steps", type=int, default=10**4)
    p.add_argument("--depth", type=int)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("oracle", help="full-observation minimal credits")
    p.add_argument("game")
    p.add_argument("--credit", type=int)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("gen", help="generate benchmark games")
    gsub = p.add_subparsers(dest="generator", required=True)
    g = gsub.add_parser("minsky", help="machine-simulation game")
    g.add_argument("--machine", required=True)
    g.add_argument("-o", "--output", default="-")
    g.set_defaults(func=_cmd_gen)
    g = gsub.add_parser("pump", help="energy-pumping gadget")
    g.add_argument("--m", type=int, required=True)
    g.add_argument("-o", "--output", default="-")
    g.set_defaults(func=_cmd_gen)
    g = gsub.add_parser("full", help="combined hardness construction")
    g.add_argument("--machine", required=True)
    g.add_argument("-o", "--output", default="-")
    g.set_defaults(func=_cmd_gen)

    p = sub.add_parser("minsky", help="counter machine commands")
    msub = p.add_subparsers(dest="minsky_cmd", required=True)
    r = msub.add_parser("run", help="bounded simulation")
    r.add_argument("--machine", required=True)
    r.add_argument("--bound", type=int, required=True)
    r.add_argument("--step-limit", type=int)
    r.set_defaults(func=_cmd_minsky_run)

    p = sub.add_parser("fgh", help="fast-growing function tools")
    fsub = p.add_subparsers(dest="fgh_cmd", required=True)
    e = fsub.add_parser("eval", help="F_i(x)")
    e.add_argument("--i", type=int, required=True)
    e.add_argument("--x", type=int, required=True)
    e.add_argument("--budget", type=int, default=fgh.DEFAULT_BIT_BUDGET)
    e.set_defaults(func=_cmd_fgh)
    ph = fsub.add_parser("phi", help="composed value of a count vector")
    ph.add_argument("--a", required=True, help="outermost-first counts, e.g. 1,0,0")
    ph.add_argument("--x", type=int, required=True)
    ph.add_argument("--budget", type=int, default=fgh.DEFAULT_BIT_BUDGET)
    ph.set_defaults(func=_cmd_fgh)
    rw = fsub.add_parser("rewrite", help="replay rules (default: proper schedule)")
    rw.add_argument("--a", required=True)
    rw.add_argument("--x", type=int, required=True)
    rw.add_argument("--rules", help="comma-separated, e.g. N1_1,N2,N0")
    rw.add_argument("--trace", action="store_true", help="one state per line")
    rw.add_argument("--max-steps", type=int, default=10**6)
    rw.add_argument("--budget", type=int, default=fgh.DEFAULT_BIT_BUDGET)
    rw.set_defaults(func=_cmd_fgh)

    return top


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else 0
    try:
        return args.func(args)
    except (GameFormatError, MachineFormatError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except fgh.BudgetExceeded as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_LIMIT
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main(argv=None))
