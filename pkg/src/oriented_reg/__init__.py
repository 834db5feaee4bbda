"""Regularity of edge ideals of vertex-weighted oriented graphs.

Closed-form regularity formulas for several graph families, each guarded
by a precondition checker, plus an exact Betti-number oracle (polarization
and Hochster's formula over GF(2) or the rationals) to confirm them.
"""

__version__ = "0.1.0"

from .errors import (
    OrientedRegError,
    PreconditionFailed,
    TooLarge,
    NoApplicableMethod,
)
from .graph import WeightedOrientedGraph, SimpleGraph, new_graph
from .monomial import Monomial, MonomialIdeal, edge_ideal, polarize
from .hypergraph import LabeledHypergraph, build_labeled_hypergraph
from .homology import (
    BettiTable,
    SimplicialComplex,
    betti_splitting_check,
    graded_betti,
    regularity_oracle,
)
from .formulas import RegularityResult, dispatch_regularity
from . import families, kernels

__all__ = [
    "OrientedRegError",
    "PreconditionFailed",
    "TooLarge",
    "NoApplicableMethod",
    "WeightedOrientedGraph",
    "SimpleGraph",
    "new_graph",
    "Monomial",
    "MonomialIdeal",
    "edge_ideal",
    "polarize",
    "LabeledHypergraph",
    "build_labeled_hypergraph",
    "BettiTable",
    "SimplicialComplex",
    "betti_splitting_check",
    "graded_betti",
    "regularity_oracle",
    "RegularityResult",
    "dispatch_regularity",
    "families",
    "kernels",
]
