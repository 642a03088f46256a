"""Bi-capacities and bi-cooperative games on the lattice Q(N).

The direct transform is reached as ``bicap.moebius.moebius``; the bare name
``bicap.moebius`` is the submodule.
"""
from .derivative import (
    DerivativeSpec,
    classical_delta,
    delta,
    delta_from_moebius,
    delta_left,
    delta_right,
    moebius_via_derivative,
)
from .game import (
    BiGame,
    Capacity,
    FormatError,
    bi_unanimity,
    conjugate,
    embed_capacity,
    make_additive,
    make_cpt,
    ternary_voting_check,
    unanimity,
    validate,
)
from .indices import (
    BiShapley,
    InteractionRep,
    comb_lemma,
    interaction_bi,
    interaction_bi_moebius,
    interaction_classical,
    interaction_table,
    recursion_check,
    shapley_bi,
    shapley_bi_moebius,
    shapley_classical,
)
from .lattice import BiSet, DomainError, enumerate_q, from_index, inf, leq, sup, to_index
from .moebius import MoebiusRep, fast_moebius, fast_zeta, mu, transform_matrix, zeta

__version__ = "0.1.0"
