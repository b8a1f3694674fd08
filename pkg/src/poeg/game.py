"""Weighted games with partial observation: model, JSON file format, validation.

A game is a finite automaton with integer edge weights, an initial state,
and a partition of the states into observations.  One player picks letters,
the other resolves nondeterminism and reveals only the observation of the
state reached.  Declaration order of states, actions and observations is
canonical: it fixes vector encodings, successor enumeration and every
deterministic tie-break in the rest of the package.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Iterable, NamedTuple

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1


class GameFormatError(ValueError):
    """A game document is malformed or describes an invalid game."""


class Transition(NamedTuple):
    src: str
    action: str
    dst: str
    weight: int


@dataclass(frozen=True)
class Game:
    """Immutable game value; share freely, all operations on it are pure."""

    states: tuple[str, ...]
    initial: str
    alphabet: tuple[str, ...]
    transitions: tuple[Transition, ...]
    observations: tuple[tuple[str, ...], ...]

    @cached_property
    def state_index(self) -> dict[str, int]:
        return {q: i for i, q in enumerate(self.states)}

    @cached_property
    def action_set(self) -> frozenset[str]:
        return frozenset(self.alphabet)

    @cached_property
    def w_max(self) -> int:
        """Maximum absolute transition weight (0 for the all-zero game)."""
        return max((abs(t.weight) for t in self.transitions), default=0)

    @cached_property
    def successor_table(self) -> dict[tuple[int, str], tuple[tuple[int, int], ...]]:
        """(source index, action) -> ((target index, weight), ...) in file order."""
        table: dict[tuple[int, str], list[tuple[int, int]]] = {}
        idx = self.state_index
        for t in self.transitions:
            si, di = idx.get(t.src), idx.get(t.dst)
            if si is None or di is None:
                continue
            table.setdefault((si, t.action), []).append((di, t.weight))
        return {k: tuple(v) for k, v in table.items()}

    @cached_property
    def observation_of(self) -> tuple[int, ...]:
        """State index -> index of the first observation containing it (-1 if none)."""
        out = [-1] * len(self.states)
        idx = self.state_index
        for oi, block in enumerate(self.observations):
            for q in block:
                qi = idx.get(q)
                if qi is not None and out[qi] == -1:
                    out[qi] = oi
        return tuple(out)

    def is_blind(self) -> bool:
        return len(self.observations) == 1 and set(self.observations[0]) == set(self.states)

    def is_full_observation(self) -> bool:
        return all(len(block) == 1 for block in self.observations) and len(
            self.observations
        ) == len(self.states)

    def kind(self) -> str:
        """"blind", "full_observation" or "general" (blind wins the 1-state tie)."""
        if self.is_blind():
            return "blind"
        if self.is_full_observation():
            return "full_observation"
        return "general"


def validate(g: Game) -> list[str]:
    """Return all invariant violations, each naming the offending element.

    An empty list means the game is valid.  Violations are reported, never
    raised, so partially-built games can be inspected.
    """
    errs: list[str] = []
    seen_states: set[str] = set()
    for q in g.states:
        if not isinstance(q, str) or not q:
            errs.append(f"state identifier {q!r} is not a nonempty string")
        elif q in seen_states:
            errs.append(f"state {q!r} declared twice")
        seen_states.add(q)
    seen_actions: set[str] = set()
    for a in g.alphabet:
        if not isinstance(a, str) or not a:
            errs.append(f"action identifier {a!r} is not a nonempty string")
        elif a in seen_actions:
            errs.append(f"action {a!r} declared twice")
        seen_actions.add(a)
    if g.initial not in seen_states:
        errs.append(f"initial state {g.initial!r} is not declared")

    seen_triples: set[tuple[str, str, str]] = set()
    for i, t in enumerate(g.transitions):
        where = f"transitions[{i}]"
        if t.src not in seen_states:
            errs.append(f"{where}: unknown source state {t.src!r}")
        if t.dst not in seen_states:
            errs.append(f"{where}: unknown target state {t.dst!r}")
        if t.action not in seen_actions:
            errs.append(f"{where}: unknown action {t.action!r}")
        triple = (t.src, t.action, t.dst)
        if triple in seen_triples:
            errs.append(f"{where}: duplicate transition {triple}")
        seen_triples.add(triple)

    # Observation partition: every state in exactly one block, blocks nonempty.
    covered: dict[str, int] = {}
    for oi, block in enumerate(g.observations):
        if not block:
            errs.append(f"observations[{oi}] is empty")
        for q in block:
            if q not in seen_states:
                errs.append(f"observations[{oi}]: unknown state {q!r}")
            elif q in covered:
                errs.append(
                    f"state {q!r} appears in observations {covered[q]} and {oi}"
                )
            else:
                covered[q] = oi
    for q in g.states:
        if q in seen_states and q not in covered:
            errs.append(f"state {q!r} belongs to no observation")

    # Totality of the transition relation.
    outgoing = {(t.src, t.action) for t in g.transitions}
    for q in g.states:
        for a in g.alphabet:
            if (q, a) not in outgoing:
                errs.append(f"relation not total at ({q},{a})")
    return errs


def post_sigma(g: Game, s: Iterable[str], action: str) -> frozenset[str]:
    """All states reachable from the set ``s`` by one ``action`` transition."""
    if action not in g.action_set:
        raise ValueError(f"unknown action {action!r}")
    idx = g.state_index
    out: set[str] = set()
    for q in s:
        qi = idx.get(q)
        if qi is None:
            raise ValueError(f"unknown state {q!r}")
        for di, _w in g.successor_table.get((qi, action), ()):
            out.add(g.states[di])
    return frozenset(out)


def make_total(g: Game, sink_weight: int, sink_name: str = "sink") -> Game:
    """Complete a partial game by routing every missing (state, action) pair
    to one fresh sink state that self-loops at ``sink_weight`` on all actions.

    Total games are returned unchanged.  The sink joins the single
    observation of a blind game and otherwise gets a fresh singleton block.
    """
    outgoing = {(t.src, t.action) for t in g.transitions}
    missing = [
        (q, a) for q in g.states for a in g.alphabet if (q, a) not in outgoing
    ]
    if not missing:
        return g
    sink = sink_name
    existing = set(g.states)
    while sink in existing:
        sink += "_"
    new_transitions = list(g.transitions)
    for q, a in missing:
        new_transitions.append(Transition(q, a, sink, sink_weight))
    for a in g.alphabet:
        new_transitions.append(Transition(sink, a, sink, sink_weight))
    if g.is_blind():
        observations = ((*g.observations[0], sink),)
    else:
        observations = (*g.observations, (sink,))
    return replace(
        g,
        states=(*g.states, sink),
        transitions=tuple(new_transitions),
        observations=observations,
    )


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise GameFormatError(msg)


def parse_game(text: str) -> Game:
    """Parse the JSON game format; the result always passes :func:`validate`.

    Raises :class:`GameFormatError` with positional context on syntax
    errors, undeclared references, duplicate observation membership, or any
    invariant violation (e.g. a non-total relation).
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise GameFormatError(
            f"JSON syntax error at line {e.lineno}, column {e.colno}: {e.msg}"
        ) from None
    _require(isinstance(doc, dict), "top-level value must be an object")
    for key in ("states", "initial", "alphabet", "transitions", "observations"):
        _require(key in doc, f"missing field {key!r}")

    states = doc["states"]
    _require(
        isinstance(states, list) and states and all(isinstance(q, str) and q for q in states),
        "'states' must be a nonempty array of nonempty strings",
    )
    alphabet = doc["alphabet"]
    _require(
        isinstance(alphabet, list)
        and alphabet
        and all(isinstance(a, str) and a for a in alphabet),
        "'alphabet' must be a nonempty array of nonempty strings",
    )
    initial = doc["initial"]
    _require(isinstance(initial, str), "'initial' must be a string")

    state_set, action_set = set(states), set(alphabet)
    _require(initial in state_set, f"initial state {initial!r} is not declared")

    raw_trans = doc["transitions"]
    _require(isinstance(raw_trans, list), "'transitions' must be an array")
    transitions: list[Transition] = []
    for i, row in enumerate(raw_trans):
        where = f"transitions[{i}]"
        _require(
            isinstance(row, list) and len(row) == 4,
            f"{where}: expected [src, action, dst, weight]",
        )
        src, action, dst, weight = row
        _require(src in state_set, f"{where}: undeclared state {src!r}")
        _require(dst in state_set, f"{where}: undeclared state {dst!r}")
        _require(action in action_set, f"{where}: undeclared action {action!r}")
        _require(
            isinstance(weight, int) and not isinstance(weight, bool),
            f"{where}: weight must be an integer",
        )
        _require(
            INT64_MIN <= weight <= INT64_MAX,
            f"{where}: weight {weight} outside signed 64-bit range",
        )
        transitions.append(Transition(src, action, dst, weight))

    raw_obs = doc["observations"]
    if raw_obs == "blind":
        observations: tuple[tuple[str, ...], ...] = (tuple(states),)
    else:
        _require(isinstance(raw_obs, list), "'observations' must be \"blind\" or an array of arrays")
        seen: set[str] = set()
        blocks: list[tuple[str, ...]] = []
        for oi, block in enumerate(raw_obs):
            where = f"observations[{oi}]"
            _require(
                isinstance(block, list) and block and all(isinstance(q, str) for q in block),
                f"{where}: expected a nonempty array of state names",
            )
            for q in block:
                _require(q in state_set, f"{where}: undeclared state {q!r}")
                _require(q not in seen, f"{where}: state {q!r} already in another observation")
                seen.add(q)
            blocks.append(tuple(block))
        observations = tuple(blocks)

    game = Game(
        states=tuple(states),
        initial=initial,
        alphabet=tuple(alphabet),
        transitions=tuple(transitions),
        observations=observations,
    )
    violations = validate(game)
    if violations:
        raise GameFormatError("; ".join(violations))
    return game


def serialize_game(g: Game) -> str:
    """Inverse of :func:`parse_game` up to semantic equality.

    Blind games use the ``"observations": "blind"`` shorthand so generator
    output stays compact and byte-deterministic.
    """
    obs: object
    if g.is_blind() and g.observations[0] == g.states:
        obs = "blind"
    else:
        obs = [list(block) for block in g.observations]
    doc = {
        "states": list(g.states),
        "initial": g.initial,
        "alphabet": list(g.alphabet),
        "transitions": [[t.src, t.action, t.dst, t.weight] for t in g.transitions],
        "observations": obs,
    }
    return json.dumps(doc, indent=2) + "\n"
