"""Shared test machinery: random game generation and fixture games/machines."""

from __future__ import annotations

import random

from poeg import (
    Game,
    MachineTransition,
    MinskyMachine,
    Transition,
    belief_from_dict,
)


def random_game(
    rng: random.Random,
    *,
    max_states: int = 6,
    max_actions: int = 3,
    weight_range: tuple[int, int] = (-3, 3),
    observation_mode: str = "random",
) -> Game:
    """A valid random game: total relation, no duplicate triples.

    ``observation_mode``: "full" (singletons), "blind" (one block) or
    "random" (random partition).
    """
    n = rng.randint(1, max_states)
    states = [f"q{i}" for i in range(n)]
    alphabet = [f"s{i}" for i in range(rng.randint(1, max_actions))]
    transitions = []
    lo, hi = weight_range
    for q in states:
        for a in alphabet:
            targets = rng.sample(states, rng.randint(1, min(2, n)))
            for t in targets:
                transitions.append(Transition(q, a, t, rng.randint(lo, hi)))
    if observation_mode == "full":
        observations = tuple((q,) for q in states)
    elif observation_mode == "blind":
        observations = (tuple(states),)
    else:
        shuffled = states[:]
        rng.shuffle(shuffled)
        blocks = []
        i = 0
        while i < n:
            size = rng.randint(1, n - i)
            blocks.append(tuple(shuffled[i : i + size]))
            i += size
        observations = tuple(blocks)
    return Game(
        states=tuple(states),
        initial=states[0],
        alphabet=tuple(alphabet),
        transitions=tuple(transitions),
        observations=observations,
    )


def random_belief(rng: random.Random, g: Game, *, non_negative: bool = True):
    """Random belief respecting the single-observation support invariant."""
    block = rng.choice(g.observations)
    support = rng.sample(block, rng.randint(1, len(block)))
    lo = 0 if non_negative else -5
    return belief_from_dict(g, {q: rng.randint(lo, 9) for q in support})


def tiny_game(transitions, *, states, alphabet, initial=None, observations="blind"):
    """Terse constructor for hand-built examples."""
    if observations == "blind":
        obs = (tuple(states),)
    elif observations == "full":
        obs = tuple((q,) for q in states)
    else:
        obs = tuple(tuple(b) for b in observations)
    return Game(
        states=tuple(states),
        initial=initial or states[0],
        alphabet=tuple(alphabet),
        transitions=tuple(Transition(*t) for t in transitions),
        observations=obs,
    )


def m_halt() -> MinskyMachine:
    """Three states: bump counter 1, then decrement to halt."""
    return MinskyMachine(
        states=("qI", "q1", "qF"),
        initial="qI",
        final="qF",
        delta=(
            MachineTransition("qI", "inc", 1, "q1"),
            MachineTransition("q1", "dec", 1, "qF"),
            MachineTransition("q1", "0?", 1, "qF"),
        ),
    )


def m_loop() -> MinskyMachine:
    return MinskyMachine(
        states=("qI", "qF"),
        initial="qI",
        final="qF",
        delta=(MachineTransition("qI", "inc", 1, "qI"),),
    )


def m_cycle() -> MinskyMachine:
    return MinskyMachine(
        states=("qI", "q1", "qF"),
        initial="qI",
        final="qF",
        delta=(
            MachineTransition("qI", "inc", 1, "q1"),
            MachineTransition("q1", "dec", 1, "qI"),
            MachineTransition("q1", "0?", 1, "qF"),
        ),
    )


def distinguishing_game() -> Game:
    """Blind two-state game neither pure word wins but full observation does.

    Each action keeps one state's component flat and bleeds the other; the
    weight-0 cross edges refresh components so every blind branch dies.
    """
    return tiny_game(
        [
            ("a", "s1", "a", 0),
            ("a", "s1", "b", 0),
            ("b", "s1", "b", -1),
            ("a", "s2", "a", -1),
            ("b", "s2", "b", 0),
            ("b", "s2", "a", 0),
        ],
        states=("a", "b"),
        alphabet=("s1", "s2"),
    )


def fullobs_variant(g: Game) -> Game:
    return Game(
        states=g.states,
        initial=g.initial,
        alphabet=g.alphabet,
        transitions=g.transitions,
        observations=tuple((q,) for q in g.states),
    )
