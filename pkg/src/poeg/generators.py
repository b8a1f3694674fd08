"""Blind-game generators: machine-simulation gadgets, the pumping gadget,
and the combined hardness construction.

All generated games share the same play convention: the original
constructions open with a nondeterministic move into one of several
components before any letter is played, which the alternating format
cannot express, so a fresh start letter opens every game.  From the entry
state it nondeterministically enters each component at that component's
entry weight, and any other opening letter is punished.

Machine transitions double as letters, written ``src:op:counter:dst``.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .fgh import RewriteState, apply_rule, canonical_rule
from .game import Game, Transition, make_total
from .minsky import DEC, INC, ZERO, MachineTransition, MinskyMachine, validate_machine

START = "start"
HASH = "#"
BAD = "bot"


def transition_letter(t: MachineTransition) -> str:
    return f"{t.src}:{t.op}:{t.counter}:{t.dst}"


def machine_alphabet(m: MinskyMachine) -> list[str]:
    return [START, HASH] + [transition_letter(t) for t in m.delta]


class _Builder:
    """Accumulates states and edges, then closes the game off blind-total."""

    def __init__(self, alphabet: list[str]):
        self.alphabet = alphabet
        self.states: list[str] = []
        self.edges: list[Transition] = []

    def state(self, name: str) -> str:
        if name not in self.states:
            self.states.append(name)
        return name

    def edge(self, src: str, action: str, dst: str, weight: int) -> None:
        self.edges.append(Transition(src, action, dst, weight))

    def loop(self, state: str, actions: Iterable[str], weight: int) -> None:
        for a in actions:
            self.edge(state, a, state, weight)

    def build_blind(self, initial: str, *, complete: bool = True) -> Game:
        g = Game(
            states=tuple(self.states),
            initial=initial,
            alphabet=tuple(self.alphabet),
            transitions=tuple(self.edges),
            observations=(tuple(self.states),),
        )
        return make_total(g, -1, BAD) if complete else g


# ---------------------------------------------------------------------------
# Machine-simulation gadgets.  Each _add_gadget* wires one instance into a
# builder over the machine alphabet (minus the start letter) and returns
# (entry state, entry weight).

def _gm_letters(m: MinskyMachine) -> list[str]:
    return [HASH] + [transition_letter(t) for t in m.delta]


def _counter_letters(m: MinskyMachine, op: str, counter: int) -> set[str]:
    return {
        transition_letter(t) for t in m.delta if t.op == op and t.counter == counter
    }


def _add_gadget1(b: _Builder, m: MinskyMachine) -> tuple[str, int]:
    """First letter after the start must be the separator."""
    sigma = _gm_letters(m)
    entry, ok, bad = (b.state(f"G1/{s}") for s in ("in", "ok", "bad"))
    for a in sigma:
        b.edge(entry, a, ok if a == HASH else bad, 0)
    b.loop(ok, sigma, 0)
    b.loop(bad, sigma, -1)
    return entry, 0


def _add_gadget2(
    b: _Builder, m: MinskyMachine, trigger: str, allowed: set[str], tag: str
) -> tuple[str, int]:
    """Every occurrence of ``trigger`` must be followed by an allowed letter."""
    sigma = _gm_letters(m)
    entry, armed, ok, bad = (b.state(f"G2[{tag}]/{s}") for s in ("in", "armed", "ok", "bad"))
    b.loop(entry, sigma, 0)
    b.edge(entry, trigger, armed, 0)
    for a in sigma:
        b.edge(armed, a, ok if a in allowed else bad, 0)
    b.loop(ok, sigma, 0)
    b.loop(bad, sigma, -1)
    return entry, 0


def _add_gadget3(b: _Builder, m: MinskyMachine) -> tuple[str, int]:
    """Separators must recur, never more than |M|^3 letters apart."""
    sigma = _gm_letters(m)
    entry, mid, ok = (b.state(f"G3/{s}") for s in ("in", "mid", "ok"))
    b.loop(entry, sigma, 0)
    b.edge(entry, HASH, mid, 0)
    b.loop(mid, [a for a in sigma if a != HASH], -1)
    b.edge(mid, HASH, ok, 0)
    b.loop(ok, sigma, 0)
    return entry, m.size**3


def _add_gadget4(b: _Builder, m: MinskyMachine, counter: int) -> tuple[str, int]:
    """The running increment excess of one counter must stay within |M|."""
    inc = _counter_letters(m, INC, counter)
    dec = _counter_letters(m, DEC, counter)
    entry = b.state(f"G4c{counter}/in")
    for a in _gm_letters(m):
        b.edge(entry, a, entry, -1 if a in inc else (1 if a in dec else 0))
    return entry, m.size


def _add_gadget5(b: _Builder, m: MinskyMachine, counter: int) -> tuple[str, int]:
    """Zero-tests only at zero, decrements only above zero.

    One corner tracks the inverse of the counter and cashes in on a
    zero-test taken high (zero-cheat); the other tracks the counter itself
    and cashes in on a decrement taken at zero (positive cheat).  Each
    cheat costs the tracking play the counter's distance from the honest
    case, so cheating more often than the entry credit allows is fatal.
    """
    sigma = _gm_letters(m)
    inc = _counter_letters(m, INC, counter)
    dec = _counter_letters(m, DEC, counter)
    zero = _counter_letters(m, ZERO, counter)
    entry, chk0, chkpos, done = (
        b.state(f"G5c{counter}/{s}") for s in ("in", "chk0", "chkpos", "done")
    )
    b.loop(entry, sigma, 0)
    b.edge(entry, HASH, chk0, 0)
    b.edge(entry, HASH, chkpos, 0)
    for a in sigma:
        if a == HASH:
            b.edge(chk0, a, done, 0)
        elif a in zero:
            b.edge(chk0, a, entry, 0)
        else:
            b.edge(chk0, a, chk0, -1 if a in inc else (1 if a in dec else 0))
    for a in sigma:
        if a == HASH:
            b.edge(chkpos, a, done, 0)
        elif a in dec:
            # Both stay-and-track and cash-in exist: the adversary decides.
            b.edge(chkpos, a, chkpos, -1)
            b.edge(chkpos, a, entry, -1)
        else:
            b.edge(chkpos, a, chkpos, 1 if a in inc else 0)
    b.loop(done, sigma, 0)
    return entry, m.size**3


def _gadget2_pairs(m: MinskyMachine) -> list[tuple[str, str, set[str]]]:
    """(tag, trigger letter, allowed followers) for each letter that needs
    sequencing: a machine transition must be followed by an outgoing
    transition of its target, or by the separator once the target is
    final; the separator must be followed by an initial-state transition."""
    out: dict[str, set[str]] = {q: set() for q in m.states}
    for t in m.delta:
        out[t.src].add(transition_letter(t))
    pairs: list[tuple[str, str, set[str]]] = []
    pairs.append((HASH, HASH, set(out[m.initial])))
    for t in m.delta:
        allowed = set(out[t.dst])
        if t.dst == m.final:
            allowed.add(HASH)
        pairs.append((transition_letter(t), transition_letter(t), allowed))
    return pairs


def _standalone(add_gadget, m: MinskyMachine) -> Game:
    errs = validate_machine(m)
    if errs:
        raise ValueError("; ".join(errs))
    b = _Builder(machine_alphabet(m))
    q0 = b.state("q0")
    entry, weight = add_gadget(b)
    b.edge(q0, START, entry, weight)
    return b.build_blind(q0)


def gen_gadget1(m: MinskyMachine) -> Game:
    return _standalone(lambda b: _add_gadget1(b, m), m)


def gen_gadget2(m: MinskyMachine, trigger: str, allowed: set[str]) -> Game:
    return _standalone(lambda b: _add_gadget2(b, m, trigger, allowed, trigger), m)


def gen_gadget3(m: MinskyMachine) -> Game:
    return _standalone(lambda b: _add_gadget3(b, m), m)


def gen_gadget4(m: MinskyMachine, counter: int) -> Game:
    return _standalone(lambda b: _add_gadget4(b, m, counter), m)


def gen_gadget5(m: MinskyMachine, counter: int) -> Game:
    return _standalone(lambda b: _add_gadget5(b, m, counter), m)


def _add_all_gadgets(b: _Builder, m: MinskyMachine) -> dict[str, tuple[str, int]]:
    """Wire one instance of every gadget; keys name the instances."""
    entries: dict[str, tuple[str, int]] = {}
    entries["G1"] = _add_gadget1(b, m)
    for tag, trigger, allowed in _gadget2_pairs(m):
        entries[f"G2[{tag}]"] = _add_gadget2(b, m, trigger, allowed, tag)
    entries["G3"] = _add_gadget3(b, m)
    for k in (1, 2):
        entries[f"G4c{k}"] = _add_gadget4(b, m, k)
    for k in (1, 2):
        entries[f"G5c{k}"] = _add_gadget5(b, m, k)
    return entries


def gen_minsky_game(m: MinskyMachine) -> Game:
    """The blind game that is winnable with credit 0 exactly when the
    machine has an |M|-bounded halting run."""
    errs = validate_machine(m)
    if errs:
        raise ValueError("; ".join(errs))
    b = _Builder(machine_alphabet(m))
    q0 = b.state("q0")
    for entry, weight in _add_all_gadgets(b, m).values():
        b.edge(q0, START, entry, weight)
    return b.build_blind(q0)


# ---------------------------------------------------------------------------
# Pumping gadget.

def pump_alphabet(m: int) -> list[str]:
    return [START, "N0"] + [f"N1_{j}" for j in range(1, m + 1)] + ["N2"]


def _add_pump_copy(b: _Builder, m: int, prefix: str) -> tuple[str, str, list[str]]:
    """States and rule-letter edges of one pumping gadget copy (no entry
    edges, no N0 exit from the counting hub).  Returns (hub, top, levels)
    where levels[i] tracks the count at level i."""
    hub = b.state(f"{prefix}chi")
    levels = [b.state(f"{prefix}a{i}") for i in range(m + 1)]
    top = b.state(f"{prefix}top")
    for j in range(1, m + 1):
        letter = f"N1_{j}"
        b.edge(levels[j], letter, levels[j], -1)
        b.edge(hub, letter, levels[j - 1], 1)
        b.edge(hub, letter, hub, 0)
        b.edge(levels[j - 1], letter, top, 0)
        for i in range(m + 1):
            if i != j and i != j - 1:
                b.edge(levels[i], letter, levels[i], 0)
    b.edge(hub, "N2", hub, 1)
    b.edge(levels[0], "N2", levels[0], -1)
    for i in range(1, m + 1):
        b.edge(levels[i], "N2", levels[i], 0)
    for lvl in levels:
        b.edge(lvl, "N0", top, 0)
    return hub, top, levels


def gen_pump(m: int) -> Game:
    """The m+5 state blind game converting credit m into energy F_m(m).

    Entry weights: 1 into the top level, m into the counting hub, 0
    elsewhere.  Junk letters (reopening the start letter, or any letter
    from the entry state other than the start letter) self-loop at -1, so
    misplay bleeds energy without extra states.
    """
    if m < 1:
        raise ValueError("pumping gadget needs m >= 1")
    b = _Builder(pump_alphabet(m))
    q0 = b.state("q0")
    hub, top, levels = _add_pump_copy(b, m, "")
    out = b.state("f")
    b.edge(hub, "N0", out, 0)
    rules = [a for a in b.alphabet if a != START]
    b.loop(top, b.alphabet, 0)
    b.loop(out, b.alphabet, 0)
    b.edge(q0, START, hub, m)
    for i, lvl in enumerate(levels):
        b.edge(q0, START, lvl, 1 if i == m else 0)
    b.loop(q0, rules, -1)
    for s in [hub] + levels:
        b.edge(s, START, s, -1)
    return b.build_blind(q0, complete=False)


# ---------------------------------------------------------------------------
# Full construction: two pump copies feeding the machine-simulation gadgets.

def gen_full(m: MinskyMachine) -> Game:
    """Compose two pumping copies with the machine game: the first copy
    pumps the counter bound, the second pumps the budget for the
    sequencing and zero-test gadgets, and three exit letters thread the
    accumulated energy into the machine gadgets."""
    errs = validate_machine(m)
    if errs:
        raise ValueError("; ".join(errs))
    size = m.size
    alphabet = pump_alphabet(size) + _gm_letters(m)
    rule_letters = [a for a in pump_alphabet(size) if a != START]
    nonexit_rules = [a for a in rule_letters if a != "N0"]
    b = _Builder(alphabet)
    q0 = b.state("q0")
    a_hub, a_top, a_levels = _add_pump_copy(b, size, "A.")
    b_entry = b.state("B.q0")
    b_hub, b_top, b_levels = _add_pump_copy(b, size, "B.")
    s0, s1 = b.state("s0"), b.state("s1")
    entries = _add_all_gadgets(b, m)

    b.edge(q0, START, a_hub, size)
    for i, lvl in enumerate(a_levels):
        b.edge(q0, START, lvl, 1 if i == size else 0)

    # First exit: the first copy's hub hands its argument to the relay pair
    # and to the second copy's entry.
    b.edge(a_hub, "N0", s0, 0)
    b.edge(a_hub, "N0", b_entry, 0)
    # Second exit: the relay advances and the second copy starts counting
    # on top of the carried energy.
    b.loop(s0, nonexit_rules, 0)
    b.edge(s0, "N0", s1, 0)
    b.edge(b_entry, "N0", b_hub, size)
    for i, lvl in enumerate(b_levels):
        b.edge(b_entry, "N0", lvl, 1 if i == size else 0)
    # Third exit: the relay funds the counter-bound gadgets, the second hub
    # funds the sequencing and zero-test gadgets.
    b.loop(s1, nonexit_rules, 0)
    for k in (1, 2):
        b.edge(s1, "N0", entries[f"G4c{k}"][0], 0)
    for name, (entry, _w) in entries.items():
        if not name.startswith("G4"):
            b.edge(b_hub, "N0", entry, 0)

    both = rule_letters + _gm_letters(m)
    b.loop(a_top, both, 0)
    b.loop(b_top, both, 0)
    return b.build_blind(q0)


# ---------------------------------------------------------------------------
# Honest words.

def halting_run_letters(m: MinskyMachine, bound: int | None = None) -> list[str]:
    from .minsky import run_bounded

    run = run_bounded(m, m.size if bound is None else bound)
    if not run.halted:
        raise ValueError("machine has no bounded halting run at this bound")
    return [transition_letter(t) for t in run.taken]


def honest_word_minsky(m: MinskyMachine) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """(prefix, cycle) for the machine game: open, then replay the halting
    run behind a separator forever."""
    rho = halting_run_letters(m)
    return (START,), (HASH, *rho)


def honest_word_full(m: MinskyMachine) -> Iterator[str]:
    """The honest infinite word for the full construction, lazily.

    Pump the first copy to its value v, exit, relay, pump the second copy
    from the carried energy, exit into the gadgets, then replay the
    halting run behind separators forever.  Deliberately lazy: for any
    machine with three or more states the first schedule alone outlives
    any feasible simulation.
    """
    size = m.size
    yield START
    cur = RewriteState((0,) * size + (1,), size)
    while True:
        r = canonical_rule(cur)
        yield str(r)
        if r.kind == "N0":
            break
        cur = apply_rule(cur, r)
    v = cur.x
    yield "N0"
    cur = RewriteState((v,) * size + (v + 1,), v + size)
    while True:
        r = canonical_rule(cur)
        yield str(r)
        if r.kind == "N0":
            break
        cur = apply_rule(cur, r)
    bound = v if v > m.size else m.size
    rho = halting_run_letters(m, bound)
    while True:
        yield HASH
        for letter in rho:
            yield letter
