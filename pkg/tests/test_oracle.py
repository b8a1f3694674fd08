import random

import pytest
from hypothesis import given, settings, strategies as st

from poeg import LOSE, WIN, decide, decide_fullobs, min_credit

from helpers import random_game, tiny_game


def test_zero_loop_needs_nothing():
    g = tiny_game(
        [("q", "a", "q", 0)], states=("q",), alphabet=("a",), observations="full"
    )
    assert min_credit(g).values == {"q": 0}


def test_two_state_chain_values():
    g = tiny_game(
        [("q0", "a", "q1", -2), ("q1", "a", "q1", 0)],
        states=("q0", "q1"),
        alphabet=("a",),
        observations="full",
    )
    assert min_credit(g).values == {"q0": 2, "q1": 0}
    assert decide_fullobs(g, 1) == LOSE
    assert decide_fullobs(g, 2) == WIN
    assert decide(g, 1).verdict == LOSE
    assert decide(g, 2).verdict == WIN


def test_drain_loop_is_hopeless():
    g = tiny_game(
        [("q", "a", "q", -1)], states=("q",), alphabet=("a",), observations="full"
    )
    assert min_credit(g).values == {"q": None}
    assert decide_fullobs(g, 10**9) == LOSE


def test_oracle_requires_full_observation():
    g = tiny_game(
        [("a", "x", "a", 0), ("b", "x", "b", 0)], states=("a", "b"), alphabet=("x",)
    )
    with pytest.raises(ValueError):
        min_credit(g)


@given(st.integers(0, 10**6))
@settings(max_examples=60)
def test_finite_values_respect_the_cutoff(seed):
    rng = random.Random(seed)
    g = random_game(rng, observation_mode="full")
    cap = len(g.states) * g.w_max
    for v in min_credit(g).values.values():
        assert v is None or 0 <= v <= cap


@given(st.integers(0, 10**6))
@settings(max_examples=40)
def test_oracle_agrees_with_tree_solver(seed):
    rng = random.Random(seed)
    g = random_game(rng, max_states=4, observation_mode="full")
    c0 = rng.randint(0, 5)
    assert decide_fullobs(g, c0) == decide(g, c0, max_time=None).verdict
