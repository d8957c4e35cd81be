"""Exact polyhedral tools for entropy cones of hypergraph models and coarse grainings."""

from .entrospace import EntropyVector, PartyPermutation, PartySet, apply_permutation, subset_index
from .ineq import family_instances
from .cone import HRepCone, VRepCone, double_description, is_extreme_ray
from .hypergraph import HypergraphModel, entropy_vector, fixture, min_cut
from .coarse import CoarseMap, build_delta, pullback
from .states import StateSpec, state_vector

__all__ = [
    "CoarseMap",
    "EntropyVector",
    "HRepCone",
    "HypergraphModel",
    "PartyPermutation",
    "PartySet",
    "StateSpec",
    "VRepCone",
    "apply_permutation",
    "build_delta",
    "double_description",
    "entropy_vector",
    "family_instances",
    "fixture",
    "is_extreme_ray",
    "min_cut",
    "pullback",
    "state_vector",
    "subset_index",
]
