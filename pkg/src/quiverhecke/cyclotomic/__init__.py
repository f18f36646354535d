"""Finite-dimensional quotients and the transported spectral models."""

from .quotient import (
    CycloElement,
    CyclotomicQuotient,
    space_graded_ranks,
    symmetrize_max,
    symmetrize_min,
    two_sided_closure,
)

__all__ = [
    "CycloElement",
    "CyclotomicQuotient",
    "space_graded_ranks",
    "symmetrize_max",
    "symmetrize_min",
    "two_sided_closure",
]
