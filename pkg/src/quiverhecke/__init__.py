"""Exact-arithmetic engines for generalized quiver Hecke algebras.

Two graded algebra flavors over an exact field (rationals or a prime
field): one built on signed permutations with an extra period-two
crossing, one on the even-subgroup of signed permutations.  The package
provides rewriting engines with canonical graded bases, an independent
polynomial operator model, finite-dimensional cyclotomic quotients,
transported deformed-reflection (affine Hecke type) generators inside
those quotients, and machine-verification suites for the structural
isomorphisms connecting all of these — everything in exact arithmetic,
no floating point anywhere.
"""

from .scalars import Params, PrimeField, Rationals, TruncSeries, make_field
from .quiver import ArrowRelation, arrow_count, arrow_relation
from .weyl import Orbit, orbit, split_even_suborbit, dimension_vector
from .rewrite import BasisWord, Element
from .type_b import TypeBAlgebra, algebra_from_seed, rho, word_parity_even
from .type_d import (
    TypeDAlgebra,
    algebra_from_seed_d,
    fixed_point_basis_split,
    fixed_point_checks,
    phi,
    transport_to_b,
)
from .polrep import PolynomialModel, h_twist
from .cyclotomic import (
    CycloElement,
    CyclotomicQuotient,
    symmetrize_max,
    symmetrize_min,
)
from .cyclotomic.heckemodel import (
    HeckeModel,
    build_hecke_model,
    q_condition_checks,
    series_identity_checks,
)

__version__ = "0.1.0"

__all__ = [
    "ArrowRelation",
    "BasisWord",
    "CycloElement",
    "CyclotomicQuotient",
    "Element",
    "HeckeModel",
    "Orbit",
    "Params",
    "PolynomialModel",
    "PrimeField",
    "Rationals",
    "TruncSeries",
    "TypeBAlgebra",
    "TypeDAlgebra",
    "algebra_from_seed",
    "algebra_from_seed_d",
    "arrow_count",
    "arrow_relation",
    "build_hecke_model",
    "dimension_vector",
    "fixed_point_basis_split",
    "fixed_point_checks",
    "h_twist",
    "make_field",
    "orbit",
    "phi",
    "q_condition_checks",
    "rho",
    "series_identity_checks",
    "split_even_suborbit",
    "symmetrize_max",
    "symmetrize_min",
    "transport_to_b",
    "word_parity_even",
    "__version__",
]
