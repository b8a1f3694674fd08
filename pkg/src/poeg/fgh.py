"""Fast-growing functions, their vectorial form, and the N-rule calculus.

The hierarchy is F_0(x) = x+1 and F_{i+1}(x) = F_i applied x+1 times to x;
the diagonal F_x(x) is Ackermannian.  A vector of counts turns iterated
application into a rewriting process: rule N2 trades one innermost
application for an increment of the argument, N1_j trades one application
at level j for x+1 applications at level j-1, and N0 extracts the
argument.  Applied "properly" (only ever touching the lowest nonzero
level) the rules compute the composed value exactly; applied out of order
they can only lose value.

Values explode: everything takes a bit budget and raises
:class:`BudgetExceeded` instead of silently approximating.
"""

from __future__ import annotations

from dataclasses import dataclass

DEFAULT_BIT_BUDGET = 1 << 20


class BudgetExceeded(RuntimeError):
    """An intermediate value would outgrow the bit budget."""


class InapplicableRule(ValueError):
    """A rewrite rule's precondition does not hold in the current state."""


def _guard(bits: int, budget: int, what: str) -> None:
    if bits > budget:
        raise BudgetExceeded(
            f"{what} needs about {bits} bits, over the {budget}-bit budget"
        )


def fast_growing(i: int, x: int, *, bit_budget: int = DEFAULT_BIT_BUDGET) -> int:
    """Exact F_i(x); closed forms through level 2, definition above that.

    F_0(x) = x+1, F_1(x) = 2x+1, F_2(x) = 2^(x+1)(x+1) - 1.  Level 3 and up
    iterate the level below, so the budget trips after a few rounds of the
    level-2 exponential.
    """
    if i < 0 or x < 0:
        raise ValueError("level and argument must be naturals")
    if i == 0:
        return x + 1
    if i == 1:
        r = 2 * x + 1
        _guard(r.bit_length(), bit_budget, f"F_1({x})")
        return r
    if i == 2:
        est = x + 1 + (x + 1).bit_length()
        _guard(est, bit_budget, f"F_2(x) for an x of {x.bit_length()} bits")
        return ((x + 1) << (x + 1)) - 1
    v = x
    for _ in range(x + 1):
        v = fast_growing(i - 1, v, bit_budget=bit_budget)
    return v


def ackermann(x: int, *, bit_budget: int = DEFAULT_BIT_BUDGET) -> int:
    """The diagonal F_x(x)."""
    try:
        return fast_growing(x, x, bit_budget=bit_budget)
    except BudgetExceeded as e:
        raise BudgetExceeded(
            f"F_{x}({x}) is an iterated tower of F_2 exponentials: {e}"
        ) from None


def _iterate(level: int, times: int, x: int, *, bit_budget: int) -> int:
    """F_level applied ``times`` times to x, with closed forms for 0 and 1."""
    if times == 0:
        return x
    if level == 0:
        r = x + times
        _guard(r.bit_length(), bit_budget, f"F_0^{times}({x})")
        return r
    if level == 1:
        # x doubles-and-one per application: (x+1) * 2^times - 1.
        _guard(times + (x + 1).bit_length(), bit_budget, f"F_1^{times} iteration")
        return ((x + 1) << times) - 1
    v = x
    for _ in range(times):
        v = fast_growing(level, v, bit_budget=bit_budget)
    return v


@dataclass(frozen=True)
class RewriteState:
    """Pending application counts plus the running argument.

    ``a[j]`` counts remaining F_j applications (index 0 innermost); both
    the counts and ``x`` are arbitrary-precision naturals.
    """

    a: tuple[int, ...]
    x: int

    def __post_init__(self):
        if not self.a:
            raise ValueError("count vector must have at least one dimension")
        if any(v < 0 for v in self.a) or self.x < 0:
            raise ValueError("rewrite states hold naturals only")

    @property
    def k(self) -> int:
        return len(self.a) - 1

    def describe(self) -> str:
        return f"({','.join(str(v) for v in reversed(self.a))};{self.x})"


@dataclass(frozen=True)
class Rule:
    kind: str  # "N0", "N1" or "N2"
    j: int = 0  # level for N1, 1 <= j <= k

    def __post_init__(self):
        if self.kind not in ("N0", "N1", "N2"):
            raise ValueError(f"unknown rule kind {self.kind!r}")
        if self.kind == "N1" and self.j < 1:
            raise ValueError("N1 needs a level of at least 1")
        if self.kind != "N1" and self.j != 0:
            raise ValueError(f"{self.kind} carries no level")

    def __str__(self) -> str:
        return f"N1_{self.j}" if self.kind == "N1" else self.kind


def parse_rule(text: str) -> Rule:
    if text in ("N0", "N2"):
        return Rule(text)
    if text.startswith("N1_"):
        return Rule("N1", int(text[3:]))
    raise ValueError(f"not a rule name: {text!r}")


def eval_phi(s: RewriteState, *, bit_budget: int = DEFAULT_BIT_BUDGET) -> int:
    """The composed value F_k^(a_k)( ... F_1^(a_1)(F_0^(a_0)(x)) ... )."""
    v = s.x
    for level, reps in enumerate(s.a):
        v = _iterate(level, reps, v, bit_budget=bit_budget)
    return v


def applicable(s: RewriteState, r: Rule) -> bool:
    if r.kind == "N0":
        return True
    if r.kind == "N2":
        return s.a[0] >= 1
    return r.j <= s.k and s.a[r.j] >= 1


def apply_rule(s: RewriteState, r: Rule):
    """One rewriting step; N0 returns the extracted natural, the other
    rules return the next state.

    N2 decrements the innermost count and increments the argument.  N1_j
    decrements count j and overwrites count j-1 with x+1 (whatever was
    there is discarded; that is what makes out-of-order use lossy).
    """
    if r.kind == "N0":
        return s.x
    if r.kind == "N2":
        if s.a[0] < 1:
            raise InapplicableRule(f"N2 needs a positive innermost count in {s.describe()}")
        return RewriteState((s.a[0] - 1, *s.a[1:]), s.x + 1)
    if r.j > s.k:
        raise InapplicableRule(f"N1_{r.j} is out of range for {s.k + 1} dimensions")
    if s.a[r.j] < 1:
        raise InapplicableRule(f"N1_{r.j} needs a positive count at level {r.j} in {s.describe()}")
    a = list(s.a)
    a[r.j] -= 1
    a[r.j - 1] = s.x + 1
    return RewriteState(tuple(a), s.x)


def is_proper(s: RewriteState, r: Rule) -> bool:
    """N0 and N2 are always proper; N1_j only when every lower count is 0."""
    if not applicable(s, r):
        raise InapplicableRule(f"{r} is not applicable in {s.describe()}")
    if r.kind != "N1":
        return True
    return all(s.a[l] == 0 for l in range(r.j))


def canonical_rule(s: RewriteState) -> Rule:
    """Next step of the value-preserving schedule: N2 while the innermost
    count is positive, else N1 at the lowest positive level, else N0."""
    if s.a[0] > 0:
        return Rule("N2")
    for j in range(1, len(s.a)):
        if s.a[j] > 0:
            return Rule("N1", j)
    return Rule("N0")


def proper_sequence(s0: RewriteState, *, max_steps: int = 10**6) -> list[Rule]:
    """The maximal proper schedule from ``s0``, ending in N0.

    Replaying it through :func:`apply_rule` terminates with exactly
    :func:`eval_phi` of the start; its length tracks the computed value,
    hence the step budget.
    """
    rules: list[Rule] = []
    cur = s0
    while True:
        if len(rules) >= max_steps:
            raise BudgetExceeded(
                f"proper schedule exceeds {max_steps} steps; its length tracks the computed value"
            )
        r = canonical_rule(cur)
        rules.append(r)
        if r.kind == "N0":
            return rules
        cur = apply_rule(cur, r)


@dataclass(frozen=True)
class Replay:
    states: list[RewriteState]  # trace including the start state
    final: int | None  # set when the rule list ends in N0


def replay(s0: RewriteState, rules) -> Replay:
    """Apply rules in order, keeping the full state trace.

    Raises :class:`InapplicableRule` naming the step index when a rule's
    precondition fails or when rules follow an N0.
    """
    states = [s0]
    cur = s0
    final = None
    for i, r in enumerate(rules):
        if final is not None:
            raise InapplicableRule(f"step {i}: {r} after the value was extracted")
        try:
            result = apply_rule(cur, r)
        except InapplicableRule as e:
            raise InapplicableRule(f"step {i}: {e}") from None
        if r.kind == "N0":
            final = result
        else:
            cur = result
            states.append(cur)
    return Replay(states=states, final=final)
