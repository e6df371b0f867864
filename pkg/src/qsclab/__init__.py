"""Sampling and adiabatic optimization toolkit for independent-set
constraints: exact distribution preparation by measure-and-reset (classical
and simulated-quantum), constraint stabilizer construction, and
subspace-corrected Trotterized evolution."""

from .graphs import (
    Graph,
    VertexAssignment,
    ViolationSet,
    enumerate_independent_sets,
    from_edge_list,
    gen_bounded_planar,
    gen_regular,
    gen_star,
    partition_function,
    violations,
)
from .prs import HaltCondition, SampleResult, bernoulli_vertex, empirical_distribution, sample_once
from .qsc import (
    QscRunResult,
    check_alpha_halt_structure,
    prepare_distribution,
    round_distribution_equivalence,
    verify_gibbs_law,
)
from .stabilizers import (
    Constraint,
    build_stabilizer,
    build_syndrome_unitary,
    check_stabilizer_algebra,
)
from .statevec import MeasurementOutcome, StateVector
from .adiabatic import (
    AdiabaticResult,
    Schedule,
    figure_of_merit,
    isolated_edge_state,
    moving_frame_hamiltonian,
    prepare_two_qubit,
    run_exact,
    run_trotter,
    u_b_1q,
)

__all__ = [
    "Graph",
    "VertexAssignment",
    "ViolationSet",
    "from_edge_list",
    "gen_regular",
    "gen_bounded_planar",
    "gen_star",
    "violations",
    "enumerate_independent_sets",
    "partition_function",
    "HaltCondition",
    "SampleResult",
    "bernoulli_vertex",
    "sample_once",
    "empirical_distribution",
    "StateVector",
    "MeasurementOutcome",
    "Constraint",
    "build_stabilizer",
    "build_syndrome_unitary",
    "check_stabilizer_algebra",
    "QscRunResult",
    "prepare_distribution",
    "verify_gibbs_law",
    "check_alpha_halt_structure",
    "round_distribution_equivalence",
    "Schedule",
    "AdiabaticResult",
    "u_b_1q",
    "run_exact",
    "run_trotter",
    "isolated_edge_state",
    "moving_frame_hamiltonian",
    "prepare_two_qubit",
    "figure_of_merit",
]

__version__ = "0.1.0"
