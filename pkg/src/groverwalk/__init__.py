"""Grover walks on distance-regular graphs and the factorization of U^2 into
commuting continuous walks on the distance digraphs of the line digraph."""

from .arcs import ArcSpace, DistanceDigraphFamily, build_arc_space, distance_digraphs_bfs, distance_digraphs_formula
from .errors import GroverWalkError, HypothesisError, InternalConsistencyError, TheoremViolation, ValidationError
from .factorizer import FactorizationResult, GroverWalk, build_generator, factorize, grover_walk
from .graphs import Graph, build_family, check_distance_regular, distance_matrices
from .linalg import expand_in_basis, expm_skew, symmetric_eig
from .walks import ArcState, compare_evolutions, continuous_evolve, discrete_evolve

__all__ = [
    "ArcSpace",
    "ArcState",
    "DistanceDigraphFamily",
    "FactorizationResult",
    "Graph",
    "GroverWalk",
    "GroverWalkError",
    "HypothesisError",
    "InternalConsistencyError",
    "TheoremViolation",
    "ValidationError",
    "build_arc_space",
    "build_family",
    "build_generator",
    "check_distance_regular",
    "compare_evolutions",
    "continuous_evolve",
    "discrete_evolve",
    "distance_digraphs_bfs",
    "distance_digraphs_formula",
    "distance_matrices",
    "expand_in_basis",
    "expm_skew",
    "factorize",
    "grover_walk",
    "symmetric_eig",
]
