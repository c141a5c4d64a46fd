"""Executable homotopical algebra over finite simplicial sets: exact
colimits, decidable lifting problems, cell presentations, staged
factorizations, and integer homology certificates."""

from ssetkit.core import (
    FiniteSimplicialSet,
    SimplexRef,
    SimplicialMap,
    boundary,
    boundary_inclusion,
    compose,
    empty_sset,
    enumerate_maps,
    enumerate_simplices,
    horn,
    horn_inclusion,
    identity,
    minimal_subcomplex,
    simplex,
    validate,
)

__all__ = [
    "FiniteSimplicialSet",
    "SimplexRef",
    "SimplicialMap",
    "boundary",
    "boundary_inclusion",
    "compose",
    "empty_sset",
    "enumerate_maps",
    "enumerate_simplices",
    "horn",
    "horn_inclusion",
    "identity",
    "minimal_subcomplex",
    "simplex",
    "validate",
]
