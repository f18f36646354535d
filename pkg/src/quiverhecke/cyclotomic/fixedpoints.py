"""Sign involution of the big crossing algebra and its fixed-point descent.

The algebra with the extra period-two crossing carries an involution that
negates that crossing and fixes every other generator.  Working inside
finite-dimensional cyclotomic quotients, this module machine-checks:

* the involution descends to the quotient — the defining ideal is stable
  row by row — and acts diagonally on the canonical residual basis with
  sign given by the parity of the extra letter in the chosen word
  (``involution_checks``, ``eigensplit_checks``);
* the fixed subalgebra has the same graded dimensions as the direct sum of
  the native even-flavor quotients built on the even-subgroup suborbits of
  the value orbit (``fixed_dim_checks``), refined block by block
  (``block_dim_checks``);
* the word-for-word transport from each native even-flavor quotient into
  the quotient of the big algebra kills the even-flavor ideal, preserves
  degrees, lands in the fixed part, hits each degree with full rank, and
  respects products on sampled pairs (``phi_quotient_checks``);
* the involution interacts with the transported invertible-generator model
  as expected — the composite reflection and all its companions are fixed
  while the bare extra crossing is negated (``eta_intertwine_checks``);
* for an asymmetric multiplicity map, reducing the even-flavor algebra
  through the max-symmetrized map by either of the two natural families of
  relations (the invertible-generator polynomial with the original
  multiplicities, or dot powers at the first strand) gives the same ideal
  and reproduces the native quotient's graded dimensions
  (``asymmetric_reduction_checks``);
* min-symmetrizing the multiplicity map leaves the big quotient's graded
  dimensions unchanged (``min_symmetrization_checks``).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .. import weyl
from ..report import CheckRecord
from ..rewrite import BasisWord, Element, RewriteEngine
from ..linalg import RowSpace
from ..type_b import word_parity_even
from ..type_d import TypeDAlgebra, transport_to_b
from ..weyl import Orbit
from .heckemodel import HeckeModel, x_element
from .quotient import (
    CycloElement,
    CyclotomicQuotient,
    space_graded_ranks,
    symmetrize_max,
    symmetrize_min,
    two_sided_closure,
)

__all__ = [
    "DescentContext",
    "asymmetric_reduction_checks",
    "descent_context",
    "eigensplit_checks",
    "eigensplit_dims",
    "eta_intertwine_checks",
    "fixed_dim_checks",
    "involution_checks",
    "min_symmetrization_checks",
    "block_dim_checks",
    "phi_quotient_checks",
    "rho_twist",
]


# ---------------------------------------------------------------------------
# the involution on quotient elements


def rho_twist(qt: CyclotomicQuotient, el: CycloElement) -> CycloElement:
    """Apply the sign involution to a quotient element.

    Residual words are eigenvectors: the sign is +1 when the chosen word
    contains an even number of extra-crossing letters, -1 otherwise, so no
    re-reduction is needed.
    """
    eng = qt.alg
    F = qt.field
    out = {}
    for w, c in el.terms.items():
        out[w] = c if word_parity_even(eng, w) else F.neg(c)
    return CycloElement(qt, out)


def _twist_nf(eng: RewriteEngine, nf: dict[BasisWord, object]) -> dict:
    F = eng.field
    return {w: (c if word_parity_even(eng, w) else F.neg(c)) for w, c in nf.items()}


def involution_checks(
    qt: CyclotomicQuotient, rng: random.Random, samples: int = 24
) -> list[CheckRecord]:
    """Verify that the sign involution is a well-defined quotient automorphism.

    Checks, in order: every stored ideal row is parity-homogeneous (so the
    diagonal action on residual words is legitimate); the twisted ideal rows
    still reduce to zero; the involution negates the extra crossing, fixes
    the other generators, and respects sampled products; twisting twice is
    the identity.
    """
    if qt.alg.flavor != "B":
        raise ValueError("the sign involution lives on flavor-B quotients")
    eng = qt.alg
    out: list[CheckRecord] = []

    mixed = []
    unstable = []
    for d, nf in qt.ideal_rows():
        parities = {word_parity_even(eng, w) for w in nf}
        if len(parities) > 1:
            mixed.append((d, nf))
        if qt.reduce_nf(_twist_nf(eng, nf)):
            unstable.append((d, nf))
    out.append(
        CheckRecord(
            "fixed-ideal-parity",
            "every defining-ideal row is homogeneous for the crossing-count parity",
            not mixed,
            witness=None if not mixed else f"degree {mixed[0][0]}: {mixed[0][1]}",
        )
    )
    out.append(
        CheckRecord(
            "fixed-ideal-stable",
            "the sign involution maps the defining ideal into itself",
            not unstable,
            witness=None if not unstable else f"degree {unstable[0][0]}: {unstable[0][1]}",
        )
    )

    gen_ok = True
    gen_wit = None
    pairs = [(qt.psi(0), qt.psi(0).scale(eng.field.neg(eng.field.one)), "extra crossing")]
    pairs += [(qt.psi(a), qt.psi(a), f"crossing {a}") for a in eng.letters() if a != 0]
    pairs += [(qt.y(k), qt.y(k), f"dot {k}") for k in range(1, eng.n + 1)]
    pairs += [(qt.idempotent(i), qt.idempotent(i), f"idempotent {i}") for i in eng.tuples]
    for el, expect, label in pairs:
        if rho_twist(qt, el) != expect:
            gen_ok = False
            gen_wit = label
            break
    out.append(
        CheckRecord(
            "fixed-generators",
            "the involution negates the extra crossing and fixes dots, other "
            "crossings, and idempotents",
            gen_ok,
            witness=gen_wit,
        )
    )

    basis = qt.basis_elements()
    hom_ok = True
    hom_wit = None
    invol_ok = True
    if basis:
        for _ in range(samples):
            a = basis[rng.randrange(len(basis))]
            b = basis[rng.randrange(len(basis))]
            if rho_twist(qt, a * b) != rho_twist(qt, a) * rho_twist(qt, b):
                hom_ok = False
                hom_wit = f"{a!r} * {b!r}"
                break
            if rho_twist(qt, rho_twist(qt, a)) != a:
                invol_ok = False
                break
    out.append(
        CheckRecord(
            "fixed-hom",
            f"the involution respects {samples} sampled residual products",
            hom_ok,
            witness=hom_wit,
        )
    )
    out.append(
        CheckRecord(
            "fixed-squares-to-id",
            "applying the involution twice is the identity on sampled elements",
            invol_ok,
        )
    )
    return out


# ---------------------------------------------------------------------------
# eigenspace bookkeeping


def eigensplit_dims(qt: CyclotomicQuotient) -> tuple[dict[int, int], dict[int, int]]:
    """Graded dimensions of the +1 and -1 eigenspaces on the residual basis."""
    eng = qt.alg
    plus: dict[int, int] = {}
    minus: dict[int, int] = {}
    for d, w in qt.basis_words():
        target = plus if word_parity_even(eng, w) else minus
        target[d] = target.get(d, 0) + 1
    return plus, minus


def eigensplit_checks(qt: CyclotomicQuotient) -> list[CheckRecord]:
    plus, minus = eigensplit_dims(qt)
    total = {d: plus.get(d, 0) + minus.get(d, 0) for d in set(plus) | set(minus)}
    dims = qt.graded_dims()
    ok = {d: v for d, v in total.items() if v} == {d: v for d, v in dims.items() if v}
    return [
        CheckRecord(
            "fixed-eigensplit-sum",
            "+1 and -1 eigenspace dimensions add up to the quotient's graded dimensions",
            ok,
            witness=None if ok else f"split {plus} + {minus} vs {dims}",
        )
    ]


# ---------------------------------------------------------------------------
# descent context: suborbits and native even-flavor quotients


@dataclass(frozen=True)
class DescentContext:
    """A flavor-B quotient together with its even-suborbit comparison data."""

    quotient: CyclotomicQuotient
    plus: Orbit
    minus: Orbit | None
    native: dict[str, CyclotomicQuotient]


def _check_symmetric(qt: CyclotomicQuotient) -> None:
    F = qt.field
    keys = set(qt.m) | {F.inv(v) for v in qt.m}
    for v in keys:
        if qt.m.get(v, 0) != qt.m.get(F.inv(v), 0):
            raise ValueError(
                "descent comparisons need an inversion-symmetric multiplicity map"
            )


def descent_context(qt: CyclotomicQuotient) -> DescentContext:
    """Split the value orbit and build the native even-flavor quotients."""
    if qt.alg.flavor != "B":
        raise ValueError("descent starts from a flavor-B quotient")
    _check_symmetric(qt)
    field = qt.field
    plus, minus = weyl.split_even_suborbit(qt.alg.beta, field)
    native = {"+": CyclotomicQuotient(TypeDAlgebra(qt.alg.params, plus), dict(qt.m))}
    if minus is not None:
        native["-"] = CyclotomicQuotient(TypeDAlgebra(qt.alg.params, minus), dict(qt.m))
    return DescentContext(qt, plus, minus, native)


def fixed_dim_checks(ctx: DescentContext) -> list[CheckRecord]:
    """Fixed-part graded dimensions equal the summed native even-flavor ones."""
    plus_dims, _ = eigensplit_dims(ctx.quotient)
    native_total: dict[int, int] = {}
    for qt_w in ctx.native.values():
        for d, v in qt_w.graded_dims().items():
            native_total[d] = native_total.get(d, 0) + v
    a = {d: v for d, v in plus_dims.items() if v}
    b = {d: v for d, v in native_total.items() if v}
    return [
        CheckRecord(
            "fixed-dims",
            "+1 eigenspace graded dimensions equal the direct sum of native "
            "even-flavor quotient dimensions over the suborbits",
            a == b,
            witness=None if a == b else f"fixed {a} vs native {b}",
        )
    ]


def block_dim_checks(ctx: DescentContext) -> list[CheckRecord]:
    """Per-suborbit refinement: even residual words sorted by value tuple."""
    qt = ctx.quotient
    eng = qt.alg
    out: list[CheckRecord] = []
    blocks: dict[str, dict[int, int]] = {s: {} for s in ctx.native}
    stray = 0
    for d, w in qt.basis_words():
        if not word_parity_even(eng, w):
            continue
        if w.tup in ctx.plus:
            tgt = blocks["+"]
        elif ctx.minus is not None and w.tup in ctx.minus:
            tgt = blocks["-"]
        else:
            stray += 1
            continue
        tgt[d] = tgt.get(d, 0) + 1
    out.append(
        CheckRecord(
            "fixed-block-cover",
            "every even residual word's value tuple lies in one of the suborbits",
            stray == 0,
            witness=None if stray == 0 else f"{stray} words uncovered",
        )
    )
    for sign, qt_w in sorted(ctx.native.items()):
        a = {d: v for d, v in blocks[sign].items() if v}
        b = {d: v for d, v in qt_w.graded_dims().items() if v}
        out.append(
            CheckRecord(
                f"fixed-block-{'plus' if sign == '+' else 'minus'}",
                f"even residual words over suborbit {sign} match the native "
                "even-flavor quotient degree by degree",
                a == b,
                witness=None if a == b else f"block {a} vs native {b}",
            )
        )
    return out


# ---------------------------------------------------------------------------
# the transport map on quotients


def _rand_scalar(field, rng: random.Random):
    p = field.characteristic
    if p:
        return field.of_int(rng.randrange(p))
    return field.of_int(rng.randint(-9, 9))


def phi_quotient_checks(
    ctx: DescentContext, rng: random.Random, samples: int = 25
) -> list[CheckRecord]:
    """Word transport native even-flavor quotient -> fixed part, per suborbit.

    For each suborbit: the transported ideal rows vanish in the big
    quotient (well-definedness); transported residual basis words stay
    homogeneous of the same degree, have even parity, and span each degree
    with rank equal to both the native dimension and the block count
    (injectivity onto the block); sampled products agree.
    """
    qt_v = ctx.quotient
    eng_v = qt_v.alg
    out: list[CheckRecord] = []

    v_words = [w for _, w in qt_v.basis_words()]
    col = {w: t for t, w in enumerate(v_words)}

    for sign, qt_w in sorted(ctx.native.items()):
        tag = "plus" if sign == "+" else "minus"
        delta = ctx.plus if sign == "+" else ctx.minus
        eng_w = qt_w.alg

        bad = None
        for d, nf in qt_w.ideal_rows():
            el = transport_to_b(Element(eng_w, dict(nf)), eng_v)
            if not qt_v.reduce(el).is_zero():
                bad = f"degree {d} row with {len(nf)} terms"
                break
        out.append(
            CheckRecord(
                f"phi-welldef-{tag}",
                "transported native ideal rows reduce to zero in the big quotient",
                bad is None,
                witness=bad,
            )
        )

        degree_ok = True
        parity_ok = True
        block_ok = True
        images: dict[int, list[dict[int, object]]] = {}
        wit = None
        for d, w in qt_w.basis_words():
            el = transport_to_b(Element(eng_w, {w: qt_w.field.one}), eng_v)
            cls = qt_v.reduce(el)
            if cls.is_zero() or cls.degrees() != [d]:
                degree_ok = False
                wit = wit or f"word at degree {d} maps with degrees {cls.degrees()}"
                continue
            for t in cls.terms:
                if not word_parity_even(eng_v, t):
                    parity_ok = False
                if t.tup not in delta:
                    block_ok = False
            images.setdefault(d, []).append({col[t]: c for t, c in cls.terms.items()})
        out.append(
            CheckRecord(
                f"phi-degree-{tag}",
                "transport sends each native residual word to a nonzero class "
                "of the same degree",
                degree_ok,
                witness=wit,
            )
        )
        out.append(
            CheckRecord(
                f"phi-parity-{tag}",
                "transported classes lie in the +1 eigenspace",
                parity_ok,
            )
        )
        out.append(
            CheckRecord(
                f"phi-block-{tag}",
                "transported classes only involve value tuples of their suborbit",
                block_ok,
            )
        )

        rank_ok = True
        rank_wit = None
        native_dims = qt_w.graded_dims()
        for d, vecs in sorted(images.items()):
            rs = RowSpace(qt_v.field)
            for v in vecs:
                rs.insert(v)
            if rs.rank != native_dims.get(d, 0):
                rank_ok = False
                rank_wit = f"degree {d}: rank {rs.rank} vs native {native_dims.get(d, 0)}"
                break
        if rank_ok and {d for d, v in native_dims.items() if v} != set(images):
            rank_ok = False
            rank_wit = f"degrees {sorted(images)} vs native {sorted(native_dims)}"
        out.append(
            CheckRecord(
                f"phi-rank-{tag}",
                "transported residual words are linearly independent and cover "
                "every native degree",
                rank_ok,
                witness=rank_wit,
            )
        )

        hom_ok = True
        hom_wit = None
        basis_w = qt_w.basis_words()
        if basis_w:
            for _ in range(samples):
                terms_a = {
                    basis_w[rng.randrange(len(basis_w))][1]: _rand_scalar(qt_w.field, rng)
                }
                terms_b = {
                    basis_w[rng.randrange(len(basis_w))][1]: _rand_scalar(qt_w.field, rng)
                }
                a = CycloElement(qt_w, {w: c for w, c in terms_a.items() if c != qt_w.field.zero})
                b = CycloElement(qt_w, {w: c for w, c in terms_b.items() if c != qt_w.field.zero})
                prod_w = a * b
                lhs = qt_v.reduce(transport_to_b(Element(eng_w, prod_w.terms), eng_v))
                rhs = qt_v.reduce(
                    transport_to_b(Element(eng_w, a.terms), eng_v)
                ) * qt_v.reduce(transport_to_b(Element(eng_w, b.terms), eng_v))
                if lhs != rhs:
                    hom_ok = False
                    hom_wit = f"{a!r} * {b!r}"
                    break
        out.append(
            CheckRecord(
                f"phi-hom-{tag}",
                f"transport respects {samples} sampled products of native classes",
                hom_ok,
                witness=hom_wit,
            )
        )
    return out


# ---------------------------------------------------------------------------
# interaction with the transported invertible-generator model


def eta_intertwine_checks(model: HeckeModel) -> list[CheckRecord]:
    """The sign involution fixes the transported invertible generators.

    The invertible coordinates, their inverses, the dressed crossings, and
    the composite reflection are all built from even words, so the
    involution fixes them; the bare extra crossing itself is negated.  This
    realizes the sign twist of the invertible-generator picture inside the
    quotient.
    """
    qt = model.quotient
    F = qt.field
    out: list[CheckRecord] = []

    fixed: list[tuple[str, CycloElement]] = []
    for k in range(1, qt.alg.n + 1):
        fixed.append((f"coordinate {k}", model.x[k]))
        fixed.append((f"inverse coordinate {k}", model.x_inv[k]))
    for a in qt.alg.letters():
        if a != 0:
            fixed.append((f"dressed crossing {a}", model.g[a]))
    if qt.alg.n >= 2:
        fixed.append(("composite reflection", model.t0()))

    bad = None
    for label, el in fixed:
        if rho_twist(qt, el) != el:
            bad = label
            break
    out.append(
        CheckRecord(
            "eta-fixes-even",
            "the involution fixes the invertible coordinates, dressed "
            "crossings, and the composite reflection",
            bad is None,
            witness=bad,
        )
    )

    g0 = model.g[0]
    out.append(
        CheckRecord(
            "eta-negates-g0",
            "the involution negates the bare extra crossing",
            rho_twist(qt, g0) == g0.scale(F.neg(F.one)),
        )
    )
    return out


# ---------------------------------------------------------------------------
# asymmetric multiplicity maps: reduction through the symmetrized quotient


def asymmetric_reduction_checks(
    params, seed: tuple, m: dict
) -> list[CheckRecord]:
    """Reduce the even-flavor algebra through the max-symmetrized map.

    Build the even-flavor quotient for the symmetrized multiplicities, then
    compare the ideal generated by the invertible-coordinate polynomial
    with the original multiplicities against the ideal generated by dot
    powers at the first strand; they must agree, be graded, and cut the
    symmetrized quotient down to the native quotient of the original map.
    """
    F = params.field
    delta = weyl.orbit(tuple(seed), "D", F)
    m_norm = {v: int(e) for v, e in m.items() if int(e) > 0}
    m_til = symmetrize_max(m_norm, F)
    qt_til = CyclotomicQuotient(TypeDAlgebra(params, delta), m_til)
    out: list[CheckRecord] = []

    if qt_til.is_zero_algebra:
        native = CyclotomicQuotient(TypeDAlgebra(params, delta), dict(m_norm))
        out.append(
            CheckRecord(
                "reduce-dims",
                "symmetrized quotient is zero, so the native quotient must be too",
                native.is_zero_algebra,
                witness=None if native.is_zero_algebra else str(native.graded_dims()),
            )
        )
        return out

    x1 = x_element(qt_til, 1)
    seed_el = qt_til.unit()
    for v, e in sorted(m_norm.items(), key=lambda kv: F.fmt(kv[0])):
        factor = x1 - qt_til.unit().scale(v)
        for _ in range(e):
            seed_el = seed_el * factor
    ideal_x, _ = two_sided_closure(qt_til, [seed_el])

    gens = []
    for i in qt_til.alg.tuples:
        e_i = qt_til.idempotent(i)
        el = e_i
        for _ in range(m_norm.get(i[0], 0)):
            el = qt_til.y(1) * el
        gens.append(el)
    ideal_y, index = two_sided_closure(qt_til, gens)

    out.append(
        CheckRecord(
            "reduce-rank",
            "invertible-coordinate ideal and dot-power ideal have equal rank",
            ideal_x.rank == ideal_y.rank,
            witness=None
            if ideal_x.rank == ideal_y.rank
            else f"{ideal_x.rank} vs {ideal_y.rank}",
        )
    )
    contain = all(ideal_y.contains(row) for row in ideal_x.basis_rows()) and all(
        ideal_x.contains(row) for row in ideal_y.basis_rows()
    )
    out.append(
        CheckRecord(
            "reduce-contain",
            "each ideal's reduced rows lie in the other (the ideals coincide)",
            contain,
        )
    )

    graded_ok = True
    ranks_x: dict[int, int] = {}
    ranks_y: dict[int, int] = {}
    try:
        ranks_x = space_graded_ranks(qt_til, ideal_x, index)
        ranks_y = space_graded_ranks(qt_til, ideal_y, index)
    except ValueError as exc:
        graded_ok = False
        wit = str(exc)
    else:
        wit = f"{ranks_x} vs {ranks_y}"
    out.append(
        CheckRecord(
            "reduce-graded",
            "both ideals are graded with identical per-degree ranks",
            graded_ok and ranks_x == ranks_y,
            witness=None if graded_ok and ranks_x == ranks_y else wit,
        )
    )

    native = CyclotomicQuotient(TypeDAlgebra(params, delta), dict(m_norm))
    til_dims = qt_til.graded_dims()
    reduced = {
        d: til_dims.get(d, 0) - ranks_y.get(d, 0)
        for d in set(til_dims) | set(ranks_y)
    }
    reduced = {d: v for d, v in reduced.items() if v}
    native_dims = {d: v for d, v in native.graded_dims().items() if v}
    out.append(
        CheckRecord(
            "reduce-dims",
            "symmetrized quotient modulo the common ideal matches the native "
            "quotient degree by degree",
            graded_ok and reduced == native_dims,
            witness=None
            if graded_ok and reduced == native_dims
            else f"reduced {reduced} vs native {native_dims}",
        )
    )
    return out


def min_symmetrization_checks(alg: RewriteEngine, m: dict) -> list[CheckRecord]:
    """Min-symmetrizing the multiplicity map preserves big-quotient dimensions."""
    if alg.flavor != "B":
        raise ValueError("min-symmetrization invariance is a flavor-B statement")
    F = alg.field
    m_norm = {v: int(e) for v, e in m.items() if int(e) > 0}
    m_min = symmetrize_min(m_norm, F)
    qt = CyclotomicQuotient(alg, dict(m_norm))
    qt_min = CyclotomicQuotient(alg, m_min)
    a = {d: v for d, v in qt.graded_dims().items() if v}
    b = {d: v for d, v in qt_min.graded_dims().items() if v}
    return [
        CheckRecord(
            "minsym-dims",
            "the quotient and its min-symmetrized companion have identical "
            "graded dimensions",
            a == b,
            witness=None if a == b else f"{a} vs {b}",
        )
    ]
