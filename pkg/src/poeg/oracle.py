"""Independent decision procedure for full-observation games.

Classic value iteration for the least sufficient credit per state: a
memoryless view is enough under full observation, and any finite credit is
bounded by |Q| * w_max, so values exceeding that cap are infinite.  Used
to cross-validate the belief-tree solver.
"""

from __future__ import annotations

from dataclasses import dataclass

from .game import Game
from .solver import LOSE, WIN


@dataclass(frozen=True)
class CreditTable:
    """Minimal sufficient initial credit per state; None means no credit wins."""

    values: dict[str, int | None]

    def to_dict(self) -> dict[str, int | None]:
        return dict(self.values)


def min_credit(g: Game) -> CreditTable:
    """Least fixpoint of v(q) = min over actions of max over that action's
    transitions of max(0, v(target) - weight), values capped at |Q|*w_max."""
    if not g.is_full_observation():
        raise ValueError("oracle requires a full-observation game")
    n = len(g.states)
    cap = n * g.w_max
    inf = cap + 1  # internal sentinel; anything past the cap cannot be won back
    vals = [0] * n
    table = g.successor_table
    changed = True
    sweeps = 0
    while changed:
        changed = False
        sweeps += 1
        for qi in range(n):
            best = inf
            for action in g.alphabet:
                worst = 0
                for di, w in table.get((qi, action), ()):
                    need = vals[di] - w
                    if vals[di] >= inf:
                        need = inf
                    if need > worst:
                        worst = need
                if worst < best:
                    best = worst
            if best > cap:
                best = inf
            if best != vals[qi]:
                vals[qi] = best
                changed = True
        if sweeps > n * (cap + 2) + 2:
            raise AssertionError("value iteration failed to stabilize")
    return CreditTable(
        values={q: (None if vals[i] > cap else vals[i]) for i, q in enumerate(g.states)}
    )


def decide_fullobs(g: Game, c0: int) -> str:
    """Win iff the initial state's minimal credit is at most ``c0``."""
    if c0 < 0:
        raise ValueError("initial credit must be a natural number")
    v = min_credit(g).values[g.initial]
    return WIN if v is not None and v <= c0 else LOSE
