"""The residue quiver: vertices, arrows, and the inversion involution.

Vertices are nonzero field elements.  For a fixed q with q^2 != 1, the
quiver carries an arrow i --> q^2 i for every vertex i; consequently for an
ordered pair (i, j) of distinct vertices exactly one of four shapes holds:

* no arrow either way          (j != q^{\pm 2} i),
* an arrow i --> j only        (j = q^2 i != q^{-2} i),
* an arrow i <-- j only        (j = q^{-2} i != q^2 i),
* arrows both ways             (j = q^2 i = q^{-2} i, forcing q^2 = -1 and
                                j = -i).

The vertex sets of interest are unions of "components" I_lam, where
I_lam = {lam^{\pm 1} q^{2l} : l in Z}.  Each component is closed under the
involution i -> i^{-1} and under both arrow directions.  A tuple of lam
values is only admitted when the components are pairwise disjoint, so each
materialized vertex knows the unique component it belongs to.

Nothing here enumerates a component in full (over the rationals it is
infinite); membership is decided by walking the cyclic group generated by
q^2 (finite fields) or by a bounded exponent search (rationals, where
|q| != 1 holds automatically because q is rational and q^2 != 1).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .scalars import Params, Rationals, Scalar

__all__ = [
    "ArrowRelation",
    "LambdaClass",
    "Vertex",
    "LambdaTuple",
    "in_component",
    "check_lambda_tuple",
    "vertex_of",
    "arrow_relation",
    "arrow_count",
    "classify_lambda",
]

#: Bounded exponent window for membership searches over the rationals.
DEFAULT_EXPONENT_BOUND = 64


class ArrowRelation(enum.Enum):
    EQUAL = "equal"
    NONE = "none"
    RIGHT = "right"
    LEFT = "left"
    BOTH = "both"


class LambdaClass(enum.Enum):
    CASE_A = "case_a"  # lam in +-<q^2>: the component of a square root of 1
    CASE_B = "case_b"  # lam in +-q.<q^2> but not case_a
    CASE_C = "case_c"  # lam outside +-q^Z entirely


@dataclass(frozen=True)
class Vertex:
    """A residue together with the index of the component containing it."""

    value: Scalar
    component: int


@dataclass(frozen=True)
class LambdaTuple:
    """A validated tuple of component parameters with disjoint components."""

    entries: tuple[Scalar, ...]


def _qsq_powers(params: Params):
    """Yield (l, q^{2l}) walking the cyclic group generated by q^2.

    Finite fields: one full period.  Rationals: l = 0, 1, -1, 2, -2, ...
    out to the bounded window (sound and complete there because |q| != 1).
    """
    F = params.field
    if isinstance(F, Rationals):
        yield 0, F.one
        for l in range(1, DEFAULT_EXPONENT_BOUND + 1):
            yield l, F.pow(params.qsq, l)
            yield -l, F.pow(params.qsq, -l)
    else:
        e = params.qsq_order()
        x = F.one
        for l in range(e):
            yield l, x
            x = F.mul(x, params.qsq)


def in_component(x: Scalar, lam: Scalar, params: Params) -> tuple[int, int] | None:
    """Solve x = lam^eps q^{2l}; return (eps, l) or None.

    The scan is deterministic: l walks outward from 0 and eps = +1 is
    preferred at each l, so repeated runs agree on the witness.
    """
    F = params.field
    if x == F.zero or lam == F.zero:
        raise ValueError("vertices and component parameters must be nonzero")
    lam_inv = F.inv(lam)
    for l, q2l in _qsq_powers(params):
        if F.mul(lam, q2l) == x:
            return (1, l)
        if F.mul(lam_inv, q2l) == x:
            return (-1, l)
    return None


def check_lambda_tuple(entries, params: Params) -> LambdaTuple:
    """Validate pairwise disjointness of the components I_{lam_a}.

    Two components intersect iff one parameter lies in the other's
    component (the q^{2Z} factor absorbs any shift), so a membership test
    per unordered pair suffices.  Raises with a witness element otherwise.
    """
    F = params.field
    entries = tuple(entries)
    for lam in entries:
        if lam == F.zero:
            raise ValueError("component parameters must be nonzero")
    for a in range(len(entries)):
        for b in range(a + 1, len(entries)):
            if in_component(entries[b], entries[a], params) is not None:
                raise ValueError(
                    f"components {a} and {b} overlap: witness "
                    f"{F.fmt(entries[b])} lies in both"
                )
    return LambdaTuple(entries)


def vertex_of(x: Scalar, lt: LambdaTuple, params: Params) -> Vertex:
    """Locate x inside the validated tuple's components."""
    for a, lam in enumerate(lt.entries):
        if in_component(x, lam, params) is not None:
            return Vertex(x, a)
    raise ValueError(f"{params.field.fmt(x)} lies in no declared component")


def arrow_relation(i: Scalar, j: Scalar, params: Params) -> ArrowRelation:
    """The four-way (plus equality) adjacency shape of an ordered pair."""
    F = params.field
    if i == j:
        return ArrowRelation.EQUAL
    fwd = F.mul(params.qsq, i) == j  # arrow i --> j
    bwd = F.mul(params.qsq, j) == i  # arrow j --> i, i.e. i <-- j
    if fwd and bwd:
        return ArrowRelation.BOTH
    if fwd:
        return ArrowRelation.RIGHT
    if bwd:
        return ArrowRelation.LEFT
    return ArrowRelation.NONE


def arrow_count(i: Scalar, j: Scalar, params: Params) -> int:
    """Number of arrows with origin i and target j (0 or 1)."""
    return 1 if arrow_relation(i, j, params) in (ArrowRelation.RIGHT, ArrowRelation.BOTH) else 0


def classify_lambda(lam: Scalar, params: Params) -> LambdaClass:
    """Trichotomy for a component parameter.

    case_a: lam in +-<q^2> — the component contains a square root of 1, so
    the inversion involution has a fixed vertex there.  case_b: lam is an
    odd power of q up to sign, without being case_a.  case_c: lam avoids
    +-q^Z altogether.  When q has odd multiplicative order, q itself is an
    even power of q, so would-be case_b parameters report case_a; the
    precedence below makes that collapse automatic.
    """
    F = params.field
    if lam == F.zero:
        raise ValueError("lambda must be nonzero")
    even = False
    odd = False
    minus_one = F.neg(F.one)
    for _, q2l in _qsq_powers(params):
        if lam == q2l or lam == F.mul(minus_one, q2l):
            even = True
            break
        shifted = F.mul(params.q, q2l)
        if lam == shifted or lam == F.mul(minus_one, shifted):
            odd = True
    if even:
        return LambdaClass.CASE_A
    if odd:
        return LambdaClass.CASE_B
    return LambdaClass.CASE_C
