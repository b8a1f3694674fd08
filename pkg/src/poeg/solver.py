"""Belief-tree safety game: construction, fixpoint solving, and the decision.

The arena is the tree of belief-action sequences grown from the initial
belief.  A branch stops at a negative belief (losing leaf), at a belief
dominated by one of its own ancestors (safe leaf: the ancestor's strategy
can be replayed from a pointwise-higher belief), or at a belief equal to
the root of an already fully-built self-contained subtree (shared).  The
letter-picker wins from the root of the finite arena exactly when she wins
the energy game with the given credit.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .belief import (
    BeliefFunction,
    encode_vector,
    initial_belief,
    is_negative,
    successors,
)
from .game import Game

WIN = "Win"
LOSE = "Lose"
RESOURCE_LIMIT = "ResourceLimit"

INTERIOR = "interior"
NEGATIVE_LEAF = "negative_leaf"
SUBSUMED_LEAF = "subsumed_leaf"
DUPLICATE_LEAF = "duplicate_leaf"
FRONTIER = "frontier"

DEFAULT_MAX_NODES = 10**6
DEFAULT_MAX_TIME = 60.0


@dataclass(slots=True)
class TreeNode:
    id: int
    parent: int | None
    incoming_action: str | None
    belief: BeliefFunction
    depth: int
    status: str = FRONTIER
    ref: int | None = None  # subsumed: ancestor id; duplicate: shared subtree root
    children: list[int] | None = None  # creation order = action-major, obs-minor


@dataclass
class SolveReport:
    verdict: str | None
    nodes_built: int
    max_depth: int
    control_parameter: int
    elapsed: float

    def to_dict(self, include_elapsed: bool = False) -> dict:
        doc = {
            "verdict": self.verdict,
            "nodes_built": self.nodes_built,
            "max_depth": self.max_depth,
            "control_parameter": self.control_parameter,
        }
        if include_elapsed:
            doc["elapsed_seconds"] = self.elapsed
        return doc


@dataclass
class SafetyGame:
    """The built arena.  ``postorder`` lists completed nodes children-first,
    duplicates after their targets, so one pass evaluates any bottom-up fact.
    ``complete`` is False when construction stopped on a resource limit."""

    game: Game
    credit: int
    nodes: list[TreeNode]
    postorder: list[int]
    complete: bool

    ROOT = 0

    def safe(self, node_id: int) -> bool:
        return self.nodes[node_id].status != NEGATIVE_LEAF


@dataclass
class _Frame:
    node_id: int
    specs: list[tuple[str, BeliefFunction]]
    next_spec: int = 0
    # ids of ancestors above this node referenced by subsumption cuts in the
    # subtree built so far (directly or through reused subtrees)
    residual: set[int] = field(default_factory=set)


def build_safety_game(
    g: Game,
    c0: int,
    *,
    max_nodes: int | None = DEFAULT_MAX_NODES,
    max_time: float | None = DEFAULT_MAX_TIME,
    memoize: bool = True,
) -> tuple[SafetyGame, SolveReport]:
    """Depth-first construction of the belief tree.

    Actions are expanded in alphabet order and observations in canonical
    order; node ids follow creation order, so the arena is reproducible.

    With ``memoize`` a node whose belief equals the root of an earlier,
    fully built subtree may become a duplicate leaf sharing that subtree's
    verdict.  Sharing is equality-based only, never order-based pruning,
    and is admitted exactly when the reused verdict is position-free:
    losing verdicts always are (a lost subtree loses from any context,
    by the safety fixpoint's completeness), while a winning verdict is
    reused only if every ancestor its subtree's subsumption cuts lean on
    is also an ancestor of the reuse point, so each cut still back-links
    to a node of the surrounding play.
    """
    start = time.monotonic()
    f0 = initial_belief(g, c0)
    nodes: list[TreeNode] = []
    postorder: list[int] = []
    win: list[bool] = []
    # belief -> (node id, winning, residual above-references of its subtree)
    cache: dict[BeliefFunction, tuple[int, bool, frozenset[int]]] = {}
    path_by_mask: dict[int, list[int]] = {}
    on_stack: set[int] = set()
    alphabet = g.alphabet
    limited = False
    max_depth = 0

    def over_budget() -> bool:
        nonlocal limited
        if max_nodes is not None and len(nodes) >= max_nodes:
            limited = True
        elif max_time is not None and time.monotonic() - start > max_time:
            limited = True
        return limited

    def create(parent: int | None, action: str | None, belief: BeliefFunction, depth: int):
        """Create and classify a node; returns (id, refs) where refs is the
        set of ancestor ids the new leaf leans on, or None when the node
        still needs expansion."""
        nonlocal max_depth
        nid = len(nodes)
        node = TreeNode(nid, parent, action, belief, depth)
        nodes.append(node)
        win.append(False)
        if depth > max_depth:
            max_depth = depth
        if is_negative(belief):
            node.status = NEGATIVE_LEAF
            postorder.append(nid)
            return nid, ()
        ancestors = path_by_mask.get(belief.mask)
        if ancestors:
            vals = belief.values
            for aid in ancestors:  # root-to-leaf order: first hit is rootmost
                avals = nodes[aid].belief.values
                if all(a <= b for a, b in zip(avals, vals)):
                    node.status = SUBSUMED_LEAF
                    node.ref = aid
                    win[nid] = True
                    postorder.append(nid)
                    return nid, (aid,)
        if memoize:
            hit = cache.get(belief)
            if hit is not None:
                tid, twin, trefs = hit
                if not twin or trefs <= on_stack:
                    node.status = DUPLICATE_LEAF
                    node.ref = tid
                    win[nid] = twin
                    postorder.append(nid)
                    return nid, trefs
        return nid, None

    def push(nid: int) -> _Frame:
        node = nodes[nid]
        specs = [
            (action, succ)
            for action in alphabet
            for succ in successors(g, node.belief, action)
        ]
        node.children = []
        path_by_mask.setdefault(node.belief.mask, []).append(nid)
        on_stack.add(nid)
        frame = _Frame(nid, specs)
        stack.append(frame)
        return frame

    def interior_wins(node: TreeNode) -> bool:
        group_action = None
        group_ok = True
        for cid in node.children:
            act = nodes[cid].incoming_action
            if act != group_action:
                if group_action is not None and group_ok:
                    return True
                group_action = act
                group_ok = True
            if group_ok and not win[cid]:
                group_ok = False
        return group_action is not None and group_ok

    stack: list[_Frame] = []
    rid, refs = create(None, None, f0, 0)
    if refs is None:
        push(rid)

    while stack:
        frame = stack[-1]
        if frame.next_spec < len(frame.specs):
            if over_budget():
                break
            action, bel = frame.specs[frame.next_spec]
            frame.next_spec += 1
            node = nodes[frame.node_id]
            cid, refs = create(frame.node_id, action, bel, node.depth + 1)
            node.children.append(cid)
            if refs is None:
                push(cid)
            else:
                frame.residual.update(refs)
        else:
            node = nodes[frame.node_id]
            node.status = INTERIOR
            postorder.append(node.id)
            node_wins = interior_wins(node)
            win[node.id] = node_wins
            frame.residual.discard(node.id)
            if memoize:
                entry = (node.id, node_wins, frozenset(frame.residual))
                old = cache.get(node.belief)
                if old is None or (old[1] and (not node_wins or len(entry[2]) < len(old[2]))):
                    cache[node.belief] = entry
            siblings = path_by_mask[node.belief.mask]
            siblings.pop()
            if not siblings:
                del path_by_mask[node.belief.mask]
            on_stack.discard(node.id)
            stack.pop()
            if stack:
                stack[-1].residual.update(frame.residual)

    elapsed = time.monotonic() - start
    t = c0 + g.w_max + len(g.states)
    arena = SafetyGame(g, c0, nodes, postorder, complete=not limited)
    report = SolveReport(
        verdict=RESOURCE_LIMIT if limited else None,
        nodes_built=len(nodes),
        max_depth=max_depth,
        control_parameter=t,
        elapsed=elapsed,
    )
    return arena, report


def solve_safety(h: SafetyGame) -> set[int]:
    """Winning node set of the safety fixpoint.

    A node wins iff it is safe and either is a leaf (its implicit self-loop
    keeps the play among safe nodes) or some action has all its children
    winning.  Duplicate leaves take their target's verdict.  Nodes left
    unfinished by a resource limit count as not winning.
    """
    winning: dict[int, bool] = {}
    nodes = h.nodes
    for nid in h.postorder:
        node = nodes[nid]
        if node.status == NEGATIVE_LEAF:
            w = False
        elif node.status == SUBSUMED_LEAF:
            w = True
        elif node.status == DUPLICATE_LEAF:
            w = winning.get(node.ref, False)
        else:  # interior
            w = False
            group_action = None
            group_ok = True
            for cid in node.children:
                act = nodes[cid].incoming_action
                if act != group_action:
                    if group_action is not None and group_ok:
                        w = True
                        break
                    group_action = act
                    group_ok = True
                if group_ok and not winning.get(cid, False):
                    group_ok = False
            if not w and group_action is not None and group_ok:
                w = True
        winning[nid] = w
    return {nid for nid, w in winning.items() if w}


def decide(
    g: Game,
    c0: int,
    *,
    max_nodes: int | None = DEFAULT_MAX_NODES,
    max_time: float | None = DEFAULT_MAX_TIME,
    memoize: bool = True,
) -> SolveReport:
    """Decide the fixed initial credit problem for ``g`` and ``c0``.

    All-zero-weight games are trivially winning and are answered without
    expansion.  A resource limit is reported as its own verdict, distinct
    from Win and Lose.
    """
    if c0 < 0:
        raise ValueError("initial credit must be a natural number")
    if g.w_max == 0:
        return SolveReport(
            verdict=WIN,
            nodes_built=0,
            max_depth=0,
            control_parameter=c0 + len(g.states),
            elapsed=0.0,
        )
    arena, report = build_safety_game(
        g, c0, max_nodes=max_nodes, max_time=max_time, memoize=memoize
    )
    if not arena.complete:
        return report
    t0 = time.monotonic()
    winning = solve_safety(arena)
    report.elapsed += time.monotonic() - t0
    report.verdict = WIN if SafetyGame.ROOT in winning else LOSE
    return report


def check_control_invariant(h: SafetyGame, game: Game | None = None, credit: int | None = None) -> bool:
    """Check that every non-negative node's encoding stays under the
    control bound 2^(t+depth) + (t+depth)^2 with t = credit + w_max + |Q|."""
    g = game if game is not None else h.game
    c0 = credit if credit is not None else h.credit
    t = c0 + g.w_max + len(g.states)
    for node in h.nodes:
        if node.status == NEGATIVE_LEAF:
            continue
        vec = encode_vector(g, node.belief)
        norm = max(vec)
        x = t + node.depth
        if norm.bit_length() <= x:
            continue  # norm < 2^x
        if norm >= (1 << x) + x * x:
            return False
    return True


def tree_to_dot(h: SafetyGame) -> str:
    """DOT digraph of the arena: belief labels, leaf kinds color-coded."""
    colors = {
        NEGATIVE_LEAF: "red",
        SUBSUMED_LEAF: "blue",
        DUPLICATE_LEAF: "purple",
        FRONTIER: "gray",
        INTERIOR: "black",
    }
    g = h.game
    lines = ["digraph belief_tree {", "  node [shape=box];"]
    for node in h.nodes:
        label = ",".join(
            f"{q}:{v}" for q, v in node.belief.as_dict(g).items()
        )
        lines.append(
            f'  n{node.id} [label="{node.id}: {label}" color={colors[node.status]}];'
        )
        if node.parent is not None:
            lines.append(
                f'  n{node.parent} -> n{node.id} [label="{node.incoming_action}"];'
            )
        if node.ref is not None:
            style = "dashed" if node.status == SUBSUMED_LEAF else "dotted"
            lines.append(f"  n{node.id} -> n{node.ref} [style={style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
