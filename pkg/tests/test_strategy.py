import random

from hypothesis import given, settings, strategies as st

from poeg import (
    MealyStrategy,
    WordStrategy,
    build_safety_game,
    extract_strategy,
    simulate,
    solve_safety,
)

from helpers import distinguishing_game, fullobs_variant, random_game, tiny_game


def winning_controller(g, c0):
    h, _ = build_safety_game(g, c0)
    return extract_strategy(h, solve_safety(h))


def test_zero_loop_controller_outputs_the_only_letter_forever():
    g = tiny_game([("q", "a", "q", 0)], states=("q",), alphabet=("a",))
    strat = winning_controller(g, 0)
    assert len(strat.output) == 1
    s = strat.initial_state()
    for _ in range(5):
        assert strat.action(s) == "a"
        s = strat.next_state(s, 0)


def test_controller_avoids_the_draining_action():
    g = tiny_game(
        [("q", "a", "q", 0), ("q", "b", "q", -1)], states=("q",), alphabet=("a", "b")
    )
    strat = winning_controller(g, 0)
    assert strat.action(strat.initial_state()) == "a"


def test_fullobs_controller_reacts_to_the_revealed_observation():
    g = fullobs_variant(distinguishing_game())
    strat = winning_controller(g, 0)
    res = simulate(g, 0, strat, "exhaustive", depth=12)
    assert not res.violated
    # after seeing state b's observation the controller must switch letters
    s = strat.initial_state()
    obs_b = g.observation_of[g.state_index["b"]]
    assert strat.action(s) == "s1"
    s2 = strat.step[s].get(obs_b)
    assert s2 is not None and strat.action(s2) == "s2"


def test_deliberately_wrong_controller_is_falsified_quickly():
    g = tiny_game(
        [("q", "a", "q", 0), ("q", "b", "q", -1)], states=("q",), alphabet=("a", "b")
    )
    always_b = WordStrategy((), ("b",))
    res = simulate(g, 2, always_b, "random", seed=1, steps=100)
    assert res.violated and res.steps == 3
    assert res.min_energy_seen == -1


def test_word_strategy_cycles():
    w = WordStrategy(("x",), ("y", "z"))
    s = w.initial_state()
    seen = []
    for _ in range(6):
        seen.append(w.action(s))
        s = w.next_state(s, 0)
    assert seen == ["x", "y", "z", "y", "z", "y"]


def _brute_force_floor(g, c0, strat, depth):
    """Independent min-energy oracle: enumerate every adversary play."""
    worst = [c0]

    def walk(state_idx, ctrl, energy, remaining):
        if energy < worst[0]:
            worst[0] = energy
        if remaining == 0:
            return
        action = strat.action(ctrl)
        for di, w in g.successor_table[(g.state_index[g.states[state_idx]], action)]:
            walk(di, strat.next_state(ctrl, g.observation_of[di]), energy + w, remaining - 1)

    walk(g.state_index[g.initial], strat.initial_state(), c0, depth)
    return worst[0]


@given(st.integers(0, 10**6))
@settings(max_examples=30)
def test_exhaustive_simulation_matches_brute_force(seed):
    rng = random.Random(seed)
    g = random_game(rng, max_states=4, max_actions=2)
    word = WordStrategy((), tuple(rng.choice(g.alphabet) for _ in range(3)))
    c0 = rng.randint(0, 3)
    depth = rng.randint(1, 6)
    res = simulate(g, c0, word, "exhaustive", depth=depth)
    assert res.min_energy_seen == _brute_force_floor(g, c0, word, depth)
    assert res.violated == (res.min_energy_seen < 0)


def test_greedy_adversary_beats_random_on_a_trap():
    # adversary must pick the quietly losing branch to hurt the fixed word
    g = tiny_game(
        [
            ("s", "a", "good", 0),
            ("s", "a", "bad", -1),
            ("good", "a", "good", 0),
            ("bad", "a", "bad", -1),
        ],
        states=("s", "good", "bad"),
        alphabet=("a",),
    )
    word = WordStrategy((), ("a",))
    res = simulate(g, 2, word, "greedy", steps=20)
    assert res.violated and res.steps == 3


def test_strategy_json_round_trip():
    g = fullobs_variant(distinguishing_game())
    strat = winning_controller(g, 0)
    again = MealyStrategy.from_json(strat.to_json())
    assert again == strat
    assert "digraph" in strat.to_dot()


@given(st.integers(0, 10**6))
@settings(max_examples=25)
def test_extracted_strategies_survive_adversaries(seed):
    rng = random.Random(seed)
    g = random_game(rng, max_states=4)
    c0 = rng.randint(0, 3)
    h, _ = build_safety_game(g, c0, max_time=None)
    winning = solve_safety(h)
    if 0 not in winning:
        return
    strat = extract_strategy(h, winning)
    depth = 2 * max(n.depth for n in h.nodes)
    assert not simulate(g, c0, strat, "exhaustive", depth=max(depth, 1)).violated
    assert not simulate(g, c0, strat, "greedy", steps=500).violated
    assert not simulate(g, c0, strat, "random", seed=seed, steps=500).violated
