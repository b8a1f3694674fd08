import copy
import random

from hypothesis import given, settings, strategies as st

from poeg import (
    LOSE,
    RESOURCE_LIMIT,
    WIN,
    build_safety_game,
    check_control_invariant,
    decide,
    solve_safety,
    tree_to_dot,
)
from poeg.belief import BeliefFunction
from poeg.solver import (
    DUPLICATE_LEAF,
    INTERIOR,
    NEGATIVE_LEAF,
    SUBSUMED_LEAF,
)

from helpers import distinguishing_game, fullobs_variant, random_game, tiny_game


def zero_loop():
    return tiny_game([("q", "a", "q", 0)], states=("q",), alphabet=("a",))


def drain_loop():
    return tiny_game([("q", "a", "q", -1)], states=("q",), alphabet=("a",))


def two_action_loop():
    return tiny_game(
        [("q", "a", "q", 0), ("q", "b", "q", -1)], states=("q",), alphabet=("a", "b")
    )


def test_zero_loop_tree_is_root_plus_subsumed_leaf():
    h, report = build_safety_game(zero_loop(), 0)
    assert h.complete
    assert len(h.nodes) == 2
    assert h.nodes[0].status == INTERIOR
    assert h.nodes[1].status == SUBSUMED_LEAF
    assert h.nodes[1].ref == 0
    assert report.max_depth == 1


def test_drain_loop_tree_is_three_node_negative_branch():
    h, _ = build_safety_game(drain_loop(), 1)
    beliefs = [n.belief.values for n in h.nodes]
    assert beliefs == [(1,), (0,), (-1,)]
    assert [n.status for n in h.nodes] == [INTERIOR, INTERIOR, NEGATIVE_LEAF]


def test_solve_safety_examples():
    h, _ = build_safety_game(zero_loop(), 0)
    assert solve_safety(h) == {0, 1}

    h, _ = build_safety_game(drain_loop(), 1)
    assert solve_safety(h) == set()

    h, _ = build_safety_game(two_action_loop(), 0)
    winning = solve_safety(h)
    assert 0 in winning  # the zero loop saves the root despite the draining action


def test_decide_examples():
    assert decide(zero_loop(), 0).verdict == WIN
    g = distinguishing_game()
    for c0 in range(6):
        assert decide(g, c0).verdict == LOSE
    assert decide(fullobs_variant(g), 0).verdict == WIN


def test_every_blind_distinguishing_branch_dies():
    # pure construction: no sharing, every maximal branch must end negative
    g = distinguishing_game()
    h, _ = build_safety_game(g, 1, memoize=False)
    leaves = [n for n in h.nodes if n.status != INTERIOR]
    assert leaves and all(n.status == NEGATIVE_LEAF for n in leaves)


def test_resource_limit_is_reported():
    report = decide(distinguishing_game(), 5, max_nodes=5)
    assert report.verdict == RESOURCE_LIMIT
    assert report.nodes_built <= 5


def test_all_zero_weights_win_without_expansion():
    g = tiny_game(
        [("a", "x", "a", 0), ("a", "x", "b", 0), ("b", "x", "b", 0)],
        states=("a", "b"),
        alphabet=("x",),
    )
    report = decide(g, 0)
    assert report.verdict == WIN
    assert report.nodes_built == 0


def test_duplicate_leaf_shares_equal_belief_subtree():
    g = tiny_game(
        [
            ("p", "a", "q", 1),
            ("p", "b", "q", 1),
            ("q", "a", "q", -1),
            ("q", "b", "q", -1),
        ],
        states=("p", "q"),
        alphabet=("a", "b"),
        observations="full",
    )
    h, _ = build_safety_game(g, 0)
    dups = [n for n in h.nodes if n.status == DUPLICATE_LEAF]
    assert len(dups) == 2  # {q:1} via action b, {q:0} inside the shared subtree
    for d in dups:
        target = h.nodes[d.ref]
        assert target.belief == d.belief
        assert target.status == INTERIOR


def test_memoization_never_changes_the_verdict():
    # sharing may only shrink the arena, never flip a completed verdict
    rng = random.Random(42)
    compared = 0
    for _ in range(120):
        g = random_game(rng, max_states=4)
        c0 = rng.randint(0, 4)
        lhs = decide(g, c0, memoize=True, max_time=None, max_nodes=200_000)
        rhs = decide(g, c0, memoize=False, max_time=None, max_nodes=200_000)
        if RESOURCE_LIMIT in (lhs.verdict, rhs.verdict):
            continue
        compared += 1
        assert lhs.verdict == rhs.verdict
        assert lhs.nodes_built <= rhs.nodes_built
    assert compared >= 100


def test_control_invariant_on_hand_trees():
    h, _ = build_safety_game(zero_loop(), 0)
    assert check_control_invariant(h)
    g = distinguishing_game()
    h, _ = build_safety_game(g, 3)
    assert check_control_invariant(h)


def test_control_invariant_rejects_corrupted_tree():
    h, _ = build_safety_game(distinguishing_game(), 3)
    bad = copy.deepcopy(h)
    victim = next(n for n in bad.nodes if n.status != NEGATIVE_LEAF)
    huge = 1 << (bad.credit + bad.game.w_max + len(bad.game.states) + victim.depth + 4)
    victim.belief = BeliefFunction(victim.belief.mask, (huge,) * len(victim.belief.values))
    assert not check_control_invariant(bad)


@given(st.integers(0, 10**6))
@settings(max_examples=40)
def test_decide_monotone_in_credit(seed):
    rng = random.Random(seed)
    g = random_game(rng, max_states=4)
    c0 = rng.randint(0, 3)
    if decide(g, c0, max_time=None).verdict == WIN:
        assert decide(g, c0 + 1, max_time=None).verdict == WIN


def test_tree_dot_dump_mentions_every_node():
    h, _ = build_safety_game(two_action_loop(), 0)
    dot = tree_to_dot(h)
    for n in h.nodes:
        assert f"n{n.id} " in dot
