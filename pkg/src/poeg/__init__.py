"""Partial-observation energy games: solver, strategies, and reductions."""

from .belief import (
    BeliefFunction,
    belief_from_dict,
    encode_vector,
    initial_belief,
    is_negative,
    leq,
    successors,
    vector_leq,
)
from .fgh import (
    BudgetExceeded,
    Rule,
    RewriteState,
    ackermann,
    apply_rule,
    canonical_rule,
    eval_phi,
    fast_growing,
    is_proper,
    parse_rule,
    proper_sequence,
    replay,
)
from .game import (
    Game,
    GameFormatError,
    Transition,
    make_total,
    parse_game,
    post_sigma,
    serialize_game,
    validate,
)
from .generators import (
    gen_full,
    gen_gadget1,
    gen_gadget2,
    gen_gadget3,
    gen_gadget4,
    gen_gadget5,
    gen_minsky_game,
    gen_pump,
    honest_word_full,
    honest_word_minsky,
    transition_letter,
)
from .minsky import (
    MachineFormatError,
    MachineTransition,
    MinskyMachine,
    decide_bounded_halting,
    parse_machine,
    run_bounded,
    serialize_machine,
    validate_machine,
)
from .oracle import CreditTable, decide_fullobs, min_credit
from .solver import (
    LOSE,
    RESOURCE_LIMIT,
    WIN,
    SafetyGame,
    SolveReport,
    TreeNode,
    build_safety_game,
    check_control_invariant,
    decide,
    solve_safety,
    tree_to_dot,
)
from .strategy import (
    BufferedWordStrategy,
    MealyStrategy,
    SimulationResult,
    WordStrategy,
    extract_strategy,
    simulate,
)

__version__ = "0.1.0"
