"""Stable graphs, decorated strata and the R-matrix action on them."""

from .action import ActedCohft, ActionData, SymplecticError, TrivialCohft, edge_bivector, inverse_rmatrix, rmatrix_action, t_vector
from .elements import DecoratedStratum, StrataElement, forget_last_leg, glue, pushforward_forgotten
from .graphs import StableGraph, enumerate_stable_graphs, smooth_graph
from .relations import (
    RelationVector,
    UnexpectedDenominator,
    degree_vanishing_relations,
    extract_relations,
    polar_part,
    relations,
    spin_theory,
    witten_degree,
)

__all__ = [
    "ActedCohft",
    "ActionData",
    "DecoratedStratum",
    "RelationVector",
    "StableGraph",
    "StrataElement",
    "SymplecticError",
    "TrivialCohft",
    "UnexpectedDenominator",
    "degree_vanishing_relations",
    "edge_bivector",
    "enumerate_stable_graphs",
    "extract_relations",
    "forget_last_leg",
    "glue",
    "inverse_rmatrix",
    "polar_part",
    "pushforward_forgotten",
    "relations",
    "rmatrix_action",
    "smooth_graph",
    "spin_theory",
    "t_vector",
    "witten_degree",
]
