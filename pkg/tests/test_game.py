import json
import random

import pytest
from hypothesis import given, strategies as st

from poeg import (
    GameFormatError,
    Transition,
    gen_pump,
    make_total,
    parse_game,
    post_sigma,
    serialize_game,
    validate,
)

from helpers import random_game, tiny_game

ONE_STATE_DOC = json.dumps(
    {
        "states": ["q"],
        "initial": "q",
        "alphabet": ["a"],
        "transitions": [["q", "a", "q", 0]],
        "observations": [["q"]],
    }
)


def test_parse_smallest_total_game():
    g = parse_game(ONE_STATE_DOC)
    assert validate(g) == []
    assert g.states == ("q",)
    assert g.w_max == 0


def test_parse_rejects_missing_transition():
    doc = json.loads(ONE_STATE_DOC)
    doc["alphabet"] = ["a", "b"]
    with pytest.raises(GameFormatError, match=r"not total at \(q,b\)"):
        parse_game(json.dumps(doc))


def test_parse_reports_json_position():
    with pytest.raises(GameFormatError, match="line 1"):
        parse_game("{not json")


def test_parse_rejects_undeclared_references():
    doc = json.loads(ONE_STATE_DOC)
    doc["transitions"].append(["q", "a", "ghost", 1])
    with pytest.raises(GameFormatError, match="ghost"):
        parse_game(json.dumps(doc))


def test_parse_rejects_duplicate_observation_membership():
    doc = json.loads(ONE_STATE_DOC)
    doc["observations"] = [["q"], ["q"]]
    with pytest.raises(GameFormatError, match="already in another observation"):
        parse_game(json.dumps(doc))


def test_parse_rejects_duplicate_triple():
    doc = json.loads(ONE_STATE_DOC)
    doc["transitions"].append(["q", "a", "q", 5])
    with pytest.raises(GameFormatError, match="duplicate transition"):
        parse_game(json.dumps(doc))


def test_parse_rejects_overflowing_weight():
    doc = json.loads(ONE_STATE_DOC)
    doc["transitions"][0][3] = 2**63
    with pytest.raises(GameFormatError, match="64-bit"):
        parse_game(json.dumps(doc))


def test_blind_shorthand_round_trip():
    doc = json.loads(ONE_STATE_DOC)
    doc["observations"] = "blind"
    g = parse_game(json.dumps(doc))
    assert g.is_blind()
    assert '"blind"' in serialize_game(g)


def test_round_trip_on_generator_output():
    g = gen_pump(1)
    again = parse_game(serialize_game(g))
    assert again == g
    assert validate(again) == []


def test_round_trip_on_random_games():
    rng = random.Random(7)
    for _ in range(25):
        g = random_game(rng)
        assert validate(g) == []
        assert parse_game(serialize_game(g)) == g


def test_validate_reports_partition_violation():
    g = tiny_game(
        [("a", "x", "a", 0), ("b", "x", "b", 0)],
        states=("a", "b"),
        alphabet=("x",),
        observations=[("a", "b"), ("b",)],
    )
    assert any("appears in observations" in e for e in validate(g))


def test_validate_reports_totality_violation():
    g = tiny_game([("a", "x", "a", 0)], states=("a", "b"), alphabet=("x",))
    assert "relation not total at (b,x)" in validate(g)


def test_post_sigma_examples():
    g = tiny_game(
        [("a", "s", "a", 1), ("a", "s", "b", -2), ("b", "s", "b", 0)],
        states=("a", "b"),
        alphabet=("s",),
    )
    assert post_sigma(g, set(), "s") == frozenset()
    assert post_sigma(g, {"a"}, "s") == {"a", "b"}
    assert post_sigma(g, {"b"}, "s") == {"b"}
    with pytest.raises(ValueError):
        post_sigma(g, {"a"}, "nope")
    with pytest.raises(ValueError):
        post_sigma(g, {"ghost"}, "s")


@given(st.integers(0, 10**6))
def test_post_sigma_monotone(seed):
    rng = random.Random(seed)
    g = random_game(rng)
    action = rng.choice(g.alphabet)
    big = rng.sample(g.states, rng.randint(1, len(g.states)))
    small = rng.sample(big, rng.randint(0, len(big)))
    assert post_sigma(g, small, action) <= post_sigma(g, big, action)


def test_make_total_noop_on_total_game():
    g = parse_game(ONE_STATE_DOC)
    assert make_total(g, -1) is g


def test_make_total_adds_one_sink():
    g = tiny_game(
        [("q", "a", "q", 0), ("r", "a", "r", 0), ("r", "b", "r", 0)],
        states=("q", "r"),
        alphabet=("a", "b"),
        observations=[("q",), ("r",)],
    )
    total = make_total(g, -1)
    assert len(total.states) == 3
    assert validate(total) == []
    sink = total.states[-1]
    assert (sink,) in total.observations  # fresh singleton block
    assert Transition("q", "b", sink, -1) in total.transitions


def test_make_total_one_state_singleton_counts_as_blind():
    g = tiny_game(
        [("q", "a", "q", 0)],
        states=("q",),
        alphabet=("a", "b"),
        observations=[("q",)],
    )
    total = make_total(g, -1)
    assert len(total.states) == 2
    assert validate(total) == []
    assert total.is_blind()


def test_make_total_blind_sink_joins_single_block():
    g = tiny_game([("q", "a", "q", 0)], states=("q",), alphabet=("a", "b"))
    total = make_total(g, -1)
    assert validate(total) == []
    assert total.is_blind()


def test_kind_classification():
    blind = tiny_game(
        [("a", "x", "a", 0), ("b", "x", "b", 0)], states=("a", "b"), alphabet=("x",)
    )
    full = tiny_game(
        [("a", "x", "a", 0), ("b", "x", "b", 0)],
        states=("a", "b"),
        alphabet=("x",),
        observations="full",
    )
    assert blind.kind() == "blind" and blind.is_blind()
    assert full.kind() == "full_observation" and full.is_full_observation()
    one = parse_game(ONE_STATE_DOC)
    assert one.is_blind() and one.is_full_observation()
