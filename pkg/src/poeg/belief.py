"""Belief functions: what the letter-picking player knows, and their encoding.

A belief maps each state it considers possible to the least energy any
consistent play could have there.  Beliefs are compared by the
same-support pointwise order; encoding them as natural vectors makes that
order coincide with the componentwise vector order, which is what the
solver's termination argument runs on.
"""

from __future__ import annotations

from dataclasses import dataclass

from .game import Game


@dataclass(frozen=True)
class BeliefFunction:
    """Partial map from states to integers over a fixed game's state order.

    Bit ``i`` of ``mask`` marks the i-th declared state as supported;
    ``values`` lists the supported values by ascending state index.
    Unsupported states carry no value.
    """

    mask: int
    values: tuple[int, ...]

    def support_indices(self) -> list[int]:
        out = []
        m = self.mask
        while m:
            low = m & -m
            out.append(low.bit_length() - 1)
            m ^= low
        return out

    def support(self, g: Game) -> frozenset[str]:
        return frozenset(g.states[i] for i in self.support_indices())

    def as_dict(self, g: Game) -> dict[str, int]:
        return {g.states[i]: v for i, v in zip(self.support_indices(), self.values)}

    def value_at(self, g: Game, state: str) -> int:
        qi = g.state_index[state]
        if not (self.mask >> qi) & 1:
            raise KeyError(f"state {state!r} not in support")
        rank = ((self.mask & ((1 << qi) - 1))).bit_count()
        return self.values[rank]

    @property
    def min_value(self) -> int:
        return min(self.values)


def belief_from_dict(g: Game, mapping: dict[str, int]) -> BeliefFunction:
    """Build a belief from ``{state: value}``; the support must be nonempty
    and contained in a single observation."""
    if not mapping:
        raise ValueError("belief support must be nonempty")
    idx = g.state_index
    pairs = []
    for q, v in mapping.items():
        if q not in idx:
            raise ValueError(f"unknown state {q!r}")
        pairs.append((idx[q], int(v)))
    pairs.sort()
    obs = {g.observation_of[i] for i, _ in pairs}
    if len(obs) != 1:
        raise ValueError(f"support spans observations {sorted(obs)}; beliefs live in one")
    mask = 0
    for i, _ in pairs:
        mask |= 1 << i
    return BeliefFunction(mask, tuple(v for _, v in pairs))


def initial_belief(g: Game, c0: int) -> BeliefFunction:
    """Belief before the first letter: the initial state holds the credit."""
    if c0 < 0:
        raise ValueError("initial credit must be a natural number")
    return BeliefFunction(1 << g.state_index[g.initial], (c0,))


def leq(f: BeliefFunction, h: BeliefFunction) -> bool:
    """Same support and pointwise <=; the order the solver prunes with."""
    return f.mask == h.mask and all(a <= b for a, b in zip(f.values, h.values))


def is_negative(f: BeliefFunction) -> bool:
    return any(v < 0 for v in f.values)


def successors(g: Game, f: BeliefFunction, action: str) -> list[BeliefFunction]:
    """All beliefs one round later, one per observation that can be revealed.

    The successor for observation ``o`` is supported on the o-part of the
    action's post set, each target valued by the minimum over incoming
    transitions of source value plus edge weight.  Results follow the
    canonical observation order; totality guarantees at least one.
    """
    if action not in g.action_set:
        raise ValueError(f"unknown action {action!r}")
    table = g.successor_table
    acc: dict[int, int] = {}
    for si, fv in zip(f.support_indices(), f.values):
        for di, w in table.get((si, action), ()):
            cand = fv + w
            prev = acc.get(di)
            if prev is None or cand < prev:
                acc[di] = cand
    buckets: dict[int, list[tuple[int, int]]] = {}
    for di in sorted(acc):
        buckets.setdefault(g.observation_of[di], []).append((di, acc[di]))
    out = []
    for oi in sorted(buckets):
        mask = 0
        vals = []
        for di, v in buckets[oi]:
            mask |= 1 << di
            vals.append(v)
        out.append(BeliefFunction(mask, tuple(vals)))
    return out


def encode_vector(g: Game, f: BeliefFunction) -> tuple[int, ...]:
    """Encode a non-negative belief as a vector of |Q|+2 naturals.

    Layout: (2^|Q| - beta, beta, value in declaration-reverse order) where
    beta is 1 plus the binary characteristic number of the support and
    unsupported positions carry the minimum supported value as placeholder.
    Beliefs compare by `leq` exactly when their encodings compare
    componentwise.
    """
    if is_negative(f):
        raise ValueError("negative beliefs have no natural-vector encoding")
    n = len(g.states)
    beta = 1 + f.mask
    placeholder = f.min_value
    gamma = [placeholder] * n
    for i, v in zip(f.support_indices(), f.values):
        gamma[i] = v
    return ((1 << n) - beta, beta, *reversed(gamma))


def vector_leq(u: tuple[int, ...], v: tuple[int, ...]) -> bool:
    return len(u) == len(v) and all(a <= b for a, b in zip(u, v))
