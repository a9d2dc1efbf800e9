"""Wielandt k-closures of finite permutation groups.

A small exact-computation library plus a CLI for verifying closure properties
of finite abelian groups at desk scale: tuple-orbit indexes, backtracking
closure search with an independent brute-force oracle, witness constructions,
and exhaustive enumeration of small faithful actions.
"""

from .abelian import (
    AbelianSpec,
    InvariantFactors,
    capital_N,
    factorize,
    invariant_factors,
    n_of,
    pi_part,
    primary_decomposition,
)
from .closure import (
    DEFAULT_BRUTE_DEGREE_CAP,
    DEFAULT_TUPLE_CAP,
    TupleOrbitIndex,
    abelian_sylow_subgroups,
    brute_force_k_closure,
    closure_product_check,
    closure_via_base_shortcut,
    in_k_closure,
    is_k_closed,
    k_closure,
    tuple_orbits,
)
from .constructions import (
    WitnessRep,
    disjoint_cyclic_rep,
    enumerate_faithful_actions,
    mixed_witness,
    pgroup_witness,
    regular_rep,
)
from .group import (
    DEFAULT_ELEMENT_CAP,
    CapExceededError,
    OrbitPartition,
    PermGroup,
    StabilizerChain,
    abelian_hall_subgroup,
    groups_equal,
)
from .perm import (
    Cycle,
    ParseError,
    Permutation,
    are_independent,
    compose,
    cycle_decomposition,
    format_cycle_notation,
    parse_cycle_notation,
    support,
)
from .report import ARTIFACT_VERSION, Check, VerificationReport

__version__ = ARTIFACT_VERSION

__all__ = [
    "AbelianSpec",
    "ARTIFACT_VERSION",
    "CapExceededError",
    "Check",
    "Cycle",
    "DEFAULT_BRUTE_DEGREE_CAP",
    "DEFAULT_ELEMENT_CAP",
    "DEFAULT_TUPLE_CAP",
    "InvariantFactors",
    "OrbitPartition",
    "ParseError",
    "PermGroup",
    "Permutation",
    "StabilizerChain",
    "TupleOrbitIndex",
    "VerificationReport",
    "WitnessRep",
    "abelian_hall_subgroup",
    "abelian_sylow_subgroups",
    "are_independent",
    "brute_force_k_closure",
    "capital_N",
    "closure_product_check",
    "closure_via_base_shortcut",
    "compose",
    "cycle_decomposition",
    "disjoint_cyclic_rep",
    "enumerate_faithful_actions",
    "factorize",
    "format_cycle_notation",
    "groups_equal",
    "in_k_closure",
    "invariant_factors",
    "is_k_closed",
    "k_closure",
    "mixed_witness",
    "n_of",
    "parse_cycle_notation",
    "pgroup_witness",
    "pi_part",
    "primary_decomposition",
    "regular_rep",
    "support",
    "tuple_orbits",
]
