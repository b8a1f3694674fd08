"""Deterministic two-counter machines and the bounded halting check.

Machines follow the guarded-decrement discipline: a non-final state either
increments one counter, or carries a decrement/zero-test pair on the same
counter, so counters never go negative and runs are deterministic.  The
bounded halting question is settled by one simulation: it either halts,
drives a counter past the bound, revisits a configuration (so it cycles
forever), or exhausts the step budget |M| * bound^2 that any short halting
witness fits in.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import NamedTuple

INC, DEC, ZERO = "inc", "dec", "0?"

HALTED = "Halted"
BOUND_EXCEEDED = "BoundExceeded"
CYCLE_DETECTED = "CycleDetected"
STEP_LIMIT = "StepLimit"


class MachineFormatError(ValueError):
    """A machine document is malformed or breaks the determinism discipline."""


class MachineTransition(NamedTuple):
    src: str
    op: str  # one of inc / dec / 0?
    counter: int  # 1 or 2
    dst: str


@dataclass(frozen=True)
class MinskyMachine:
    states: tuple[str, ...]
    initial: str
    final: str
    delta: tuple[MachineTransition, ...]

    @property
    def size(self) -> int:
        """|M|, by convention the number of control states."""
        return len(self.states)


def validate_machine(m: MinskyMachine) -> list[str]:
    errs: list[str] = []
    declared = set()
    for q in m.states:
        if not isinstance(q, str) or not q:
            errs.append(f"state identifier {q!r} is not a nonempty string")
        elif q in declared:
            errs.append(f"state {q!r} declared twice")
        declared.add(q)
    if m.initial not in declared:
        errs.append(f"initial state {m.initial!r} is not declared")
    if m.final not in declared:
        errs.append(f"final state {m.final!r} is not declared")

    outgoing: dict[str, list[MachineTransition]] = {q: [] for q in m.states}
    for i, t in enumerate(m.delta):
        where = f"delta[{i}]"
        if t.src not in declared:
            errs.append(f"{where}: unknown source {t.src!r}")
            continue
        if t.dst not in declared:
            errs.append(f"{where}: unknown target {t.dst!r}")
        if t.op not in (INC, DEC, ZERO):
            errs.append(f"{where}: unknown instruction {t.op!r}")
        if t.counter not in (1, 2):
            errs.append(f"{where}: counter must be 1 or 2")
        outgoing[t.src].append(t)

    for q in m.states:
        outs = outgoing[q]
        if q == m.final:
            if outs:
                errs.append(f"final state {q!r} must have no outgoing transitions")
            continue
        ops = sorted(t.op for t in outs)
        if ops == [INC]:
            continue
        if ops == sorted([DEC, ZERO]) and len({t.counter for t in outs}) == 1:
            continue
        errs.append(
            f"state {q!r} must have one increment or a decrement/zero-test pair "
            f"on one counter (has {[t.op for t in outs]})"
        )
    return errs


@dataclass(frozen=True)
class RunOutcome:
    kind: str  # Halted / BoundExceeded / CycleDetected / StepLimit
    counter: int | None = None  # for BoundExceeded
    step: int | None = None


@dataclass(frozen=True)
class MachineRun:
    configs: list[tuple[str, tuple[int, int]]]  # (state, (c1, c2)), start included
    taken: list[MachineTransition]
    outcome: RunOutcome

    @property
    def halted(self) -> bool:
        return self.outcome.kind == HALTED

    @property
    def max_counter(self) -> int:
        return max(max(v) for _, v in self.configs)


def run_bounded(
    m: MinskyMachine, bound: int, step_limit: int | None = None
) -> MachineRun:
    """Deterministic simulation from (initial, zeros).

    Stops when the final state is reached, a counter passes ``bound``
    right after a step, a configuration repeats, or the step limit
    (default |M| * bound^2) runs out.
    """
    errs = validate_machine(m)
    if errs:
        raise MachineFormatError("; ".join(errs))
    if step_limit is None:
        step_limit = m.size * bound * bound
    outgoing: dict[str, list[MachineTransition]] = {}
    for t in m.delta:
        outgoing.setdefault(t.src, []).append(t)

    state = m.initial
    counters = (0, 0)
    configs = [(state, counters)]
    taken: list[MachineTransition] = []
    seen = {(state, counters)}
    step = 0
    while True:
        if state == m.final:
            return MachineRun(configs, taken, RunOutcome(HALTED, step=step))
        if step >= step_limit:
            return MachineRun(configs, taken, RunOutcome(STEP_LIMIT, step=step))
        outs = outgoing.get(state, [])
        if len(outs) == 1:
            t = outs[0]
        else:
            value = counters[outs[0].counter - 1]
            wanted = ZERO if value == 0 else DEC
            t = next(o for o in outs if o.op == wanted)
        c = list(counters)
        if t.op == INC:
            c[t.counter - 1] += 1
        elif t.op == DEC:
            c[t.counter - 1] -= 1
        step += 1
        state = t.dst
        counters = (c[0], c[1])
        configs.append((state, counters))
        taken.append(t)
        if max(counters) > bound:
            return MachineRun(
                configs, taken, RunOutcome(BOUND_EXCEEDED, counter=t.counter, step=step)
            )
        if (state, counters) in seen:
            return MachineRun(configs, taken, RunOutcome(CYCLE_DETECTED, step=step))
        seen.add((state, counters))


def decide_bounded_halting(m: MinskyMachine, bound: int) -> bool:
    """True iff the machine halts with every counter staying within ``bound``."""
    return run_bounded(m, bound).halted


def parse_machine(text: str) -> MinskyMachine:
    """Parse the JSON machine format and enforce the determinism discipline."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise MachineFormatError(
            f"JSON syntax error at line {e.lineno}, column {e.colno}: {e.msg}"
        ) from None
    if not isinstance(doc, dict):
        raise MachineFormatError("top-level value must be an object")
    for key in ("states", "initial", "final", "delta"):
        if key not in doc:
            raise MachineFormatError(f"missing field {key!r}")
    rows = doc["delta"]
    if not isinstance(rows, list):
        raise MachineFormatError("'delta' must be an array")
    delta = []
    for i, row in enumerate(rows):
        if not (isinstance(row, list) and len(row) == 4):
            raise MachineFormatError(f"delta[{i}]: expected [src, op, counter, dst]")
        src, op, counter, dst = row
        if not isinstance(counter, int) or isinstance(counter, bool):
            raise MachineFormatError(f"delta[{i}]: counter must be an integer")
        delta.append(MachineTransition(src, op, counter, dst))
    m = MinskyMachine(
        states=tuple(doc["states"]),
        initial=doc["initial"],
        final=doc["final"],
        delta=tuple(delta),
    )
    errs = validate_machine(m)
    if errs:
        raise MachineFormatError("; ".join(errs))
    return m


def serialize_machine(m: MinskyMachine) -> str:
    doc = {
        "states": list(m.states),
        "initial": m.initial,
        "final": m.final,
        "delta": [[t.src, t.op, t.counter, t.dst] for t in m.delta],
    }
    return json.dumps(doc, indent=2) + "\n"
