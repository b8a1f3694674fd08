"""Finite-state controllers extracted from a solved arena, and adversarial play.

A controller state is a winning interior node of the belief tree.  Safe
leaves hand control back: a subsumed leaf replays its dominating ancestor
(the real belief there is pointwise at least the ancestor's, so every
guarantee transfers) and a duplicate leaf continues in the subtree it
shares.  The controller sees only observations, never states.
"""

from __future__ import annotations

import json
import random
import sys
from dataclasses import dataclass

from .belief import initial_belief, successors
from .game import Game
from .solver import (
    DUPLICATE_LEAF,
    INTERIOR,
    SUBSUMED_LEAF,
    SafetyGame,
)


@dataclass(frozen=True)
class MealyStrategy:
    """Observation-driven controller: emit ``output[s]``, then follow
    ``step[s][observation index]`` for the observation revealed."""

    start: int
    output: dict[int, str]
    step: dict[int, dict[int, int]]

    def initial_state(self) -> int:
        return self.start

    def action(self, state: int) -> str:
        return self.output[state]

    def next_state(self, state: int, obs_index: int) -> int:
        return self.step[state][obs_index]

    def to_json(self) -> str:
        doc = {
            "start": self.start,
            "nodes": sorted(self.output),
            "output": {str(k): v for k, v in sorted(self.output.items())},
            "step": {
                str(k): {str(o): t for o, t in sorted(v.items())}
                for k, v in sorted(self.step.items())
            },
        }
        return json.dumps(doc, indent=2) + "\n"

    @staticmethod
    def from_json(text: str) -> "MealyStrategy":
        doc = json.loads(text)
        return MealyStrategy(
            start=int(doc["start"]),
            output={int(k): v for k, v in doc["output"].items()},
            step={
                int(k): {int(o): int(t) for o, t in v.items()}
                for k, v in doc["step"].items()
            },
        )

    def to_dot(self) -> str:
        lines = ["digraph controller {", f"  init [shape=point];", f"  init -> n{self.start};"]
        for s in sorted(self.output):
            lines.append(f'  n{s} [label="{s} / {self.output[s]}"];')
        for s, table in sorted(self.step.items()):
            for o, t in sorted(table.items()):
                lines.append(f'  n{s} -> n{t} [label="obs {o}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class WordStrategy:
    """Play a fixed infinite word ``prefix . cycle^omega``, ignoring
    observations; the natural blind-game strategy format."""

    prefix: tuple[str, ...]
    cycle: tuple[str, ...]

    def __post_init__(self):
        if not self.cycle:
            raise ValueError("cycle must be nonempty (plays are infinite)")

    def initial_state(self) -> int:
        return 0

    def action(self, state: int) -> str:
        if state < len(self.prefix):
            return self.prefix[state]
        return self.cycle[(state - len(self.prefix)) % len(self.cycle)]

    def next_state(self, state: int, obs_index: int) -> int:
        n = len(self.prefix) + len(self.cycle)
        nxt = state + 1
        return len(self.prefix) if nxt >= n else nxt


class BufferedWordStrategy:
    """Play letters from a generator, buffering them so positions stay
    addressable.  Suits honest words too long to materialize."""

    def __init__(self, letters):
        self._iter = iter(letters)
        self._buf: list[str] = []

    def initial_state(self) -> int:
        return 0

    def action(self, state: int) -> str:
        while len(self._buf) <= state:
            self._buf.append(next(self._iter))
        return self._buf[state]

    def next_state(self, state: int, obs_index: int) -> int:
        return state + 1


@dataclass(frozen=True)
class SimulationResult:
    min_energy_seen: int  # running minimum of credit plus accumulated weight
    steps: int
    violated: bool


def extract_strategy(h: SafetyGame, winning: set[int]) -> MealyStrategy:
    """Build the controller from a completely built arena and its winning set.

    The action at each reachable winning interior node is the first one in
    alphabet order whose children are all winning; leaves are resolved
    through their back references before becoming controller states.
    """
    if SafetyGame.ROOT not in winning:
        raise ValueError("root is not winning; no strategy exists")
    if not h.complete:
        raise ValueError("arena construction was cut off by a resource limit")
    nodes = h.nodes
    g = h.game

    def resolve(nid: int) -> int:
        while nodes[nid].status in (SUBSUMED_LEAF, DUPLICATE_LEAF):
            nid = nodes[nid].ref
        if nodes[nid].status != INTERIOR or nid not in winning:
            raise AssertionError(f"node {nid} cannot carry the strategy")
        return nid

    output: dict[int, str] = {}
    step: dict[int, dict[int, int]] = {}
    start = resolve(SafetyGame.ROOT)
    queue = [start]
    while queue:
        nid = queue.pop()
        if nid in output:
            continue
        node = nodes[nid]
        by_action: dict[str, list[int]] = {}
        for cid in node.children:
            by_action.setdefault(nodes[cid].incoming_action, []).append(cid)
        chosen = None
        for action in g.alphabet:
            kids = by_action.get(action, ())
            if kids and all(c in winning for c in kids):
                chosen = action
                break
        if chosen is None:
            raise AssertionError(f"winning interior node {nid} has no safe action")
        output[nid] = chosen
        table: dict[int, int] = {}
        for cid in by_action[chosen]:
            child = nodes[cid]
            obs = g.observation_of[child.belief.support_indices()[0]]
            target = resolve(cid)
            table[obs] = target
            if target not in output:
                queue.append(target)
        step[nid] = table
    return MealyStrategy(start=start, output=output, step=step)


def _greedy_choice(g: Game, belief, state_idx: int, action: str):
    """Transition minimizing (successor-belief minimum, value at the target,
    canonical target index); a cheap spoiler heuristic, not an optimum."""
    succs = successors(g, belief, action)
    by_obs = {}
    for b in succs:
        by_obs[g.observation_of[b.support_indices()[0]]] = b
    best = None
    for di, w in g.successor_table[(state_idx, action)]:
        b = by_obs[g.observation_of[di]]
        key = (b.min_value, b.value_at(g, g.states[di]), di)
        if best is None or key < best[0]:
            best = (key, di, w, b)
    _, di, w, b = best
    return di, w, b


def simulate(
    g: Game,
    c0: int,
    strat,
    adam: str = "random",
    *,
    seed: int = 0,
    steps: int = 10**4,
    depth: int | None = None,
) -> SimulationResult:
    """Play the controller against an adversary and track the energy floor.

    ``adam`` is one of ``random`` (uniform transition choice, seeded),
    ``greedy`` (min-successor-belief heuristic), or ``exhaustive`` (all
    choices to ``depth``, reporting the worst play).  The run stops at the
    first violation.
    """
    if adam == "exhaustive":
        if depth is None:
            raise ValueError("exhaustive adversary needs a depth")
        return _simulate_exhaustive(g, c0, strat, depth)
    if adam not in ("random", "greedy"):
        raise ValueError(f"unknown adversary {adam!r}")

    rng = random.Random(seed)
    state_idx = g.state_index[g.initial]
    ctrl = strat.initial_state()
    belief = initial_belief(g, c0) if adam == "greedy" else None
    energy = c0
    lowest = c0
    taken = 0
    for i in range(1, steps + 1):
        action = strat.action(ctrl)
        if adam == "greedy":
            di, w, belief = _greedy_choice(g, belief, state_idx, action)
        else:
            di, w = rng.choice(g.successor_table[(state_idx, action)])
        energy += w
        state_idx = di
        ctrl = strat.next_state(ctrl, g.observation_of[di])
        taken = i
        if energy < lowest:
            lowest = energy
        if energy < 0:
            break
    return SimulationResult(min_energy_seen=lowest, steps=taken, violated=lowest < 0)


def _simulate_exhaustive(g: Game, c0: int, strat, depth: int) -> SimulationResult:
    """Worst energy floor over all adversary plays of length <= depth,
    by memoized recursion over (remaining, state, controller state)."""
    memo: dict[tuple[int, int, int], int] = {}
    table = g.successor_table
    obs_of = g.observation_of

    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * depth + 100))

    def floor(remaining: int, state_idx: int, ctrl) -> int:
        if remaining == 0:
            return 0
        key = (remaining, state_idx, ctrl)
        hit = memo.get(key)
        if hit is not None:
            return hit
        action = strat.action(ctrl)
        worst = 0
        for di, w in table[(state_idx, action)]:
            sub = w + floor(remaining - 1, di, strat.next_state(ctrl, obs_of[di]))
            if sub < worst:
                worst = sub
        memo[key] = worst
        return worst

    m = floor(depth, g.state_index[g.initial], strat.initial_state())
    return SimulationResult(
        min_energy_seen=c0 + m, steps=depth, violated=c0 + m < 0
    )
