"""Binary constraint systems over scalars and Pauli strings, the
complete-graph pseudo-telepathy game family, dense operator strategies, and
shallow-circuit relation problems with lightcone hardness checks."""

from .bcs import (
    Bcs,
    Certificate,
    PauliSolution,
    chsh,
    classical_solve,
    eliminate_free_vars,
    build_sign_system,
    mermin_peres,
    parse_bcs,
    pauli_solve,
    serialize_bcs,
    serialize_solution,
    verify_certificate,
    verify_pauli_solution,
)
from .game import (
    GameBcs,
    GameClass,
    build_game_bcs,
    classify,
    clifford_bound,
    count_questions,
    enumerate_questions,
    sample_question,
)
from .pauli import PauliString, commutes, format_pauli, multiply, parse_pauli, to_matrix
from .quantum import (
    OperatorSolution,
    SharedState,
    audit_clifford_strategy,
    classical_to_operator,
    complete_solution,
    correlation,
    make_rng,
    measure_commuting,
    pauli_to_operator,
    permutation_solution,
    phi_plus,
    play_round,
    verify_operator_solution,
)
from .shallow import (
    CircuitDag,
    Gate,
    RelationInstance,
    backward_lightcone,
    build_strategy_dag,
    check_relation,
    compute_syndrome,
    depth_lower_bound,
    forward_lightcone,
    lightcone_disjoint_probability,
    random_instance,
    run_round1,
    run_round2,
    run_sampling_trial,
)

__version__ = "0.1.0"
