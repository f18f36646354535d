"""Shared fixtures-in-code for the test suite.

Configuration builders cover the four arrow regimes (equal letters, plain
arrow, double arrow at q^2 = -1, and the self-paired letter q = -1 case)
over both a prime field and the rationals, plus three-strand variants.

`operator_identity_failures` re-states the defining relations of the
algebra as identities of raw operators on the polynomial representation,
composed generator by generator in this file — it deliberately does not
call the engine's own relation checker, so the two routes stay
independent.
"""

from __future__ import annotations

from quiverhecke.polrep import PolynomialModel
from quiverhecke.quiver import ArrowRelation, arrow_relation
from quiverhecke.rewrite import compositions
from quiverhecke.scalars import Params, PrimeField, Rationals, make_field
from quiverhecke.type_b import algebra_from_seed
from quiverhecke.type_d import algebra_from_seed_d


# ---------------------------------------------------------------------------
# Standard configurations.
# ---------------------------------------------------------------------------


def params_f13_q2() -> Params:
    F = PrimeField(13)
    return Params(F, F.of_int(1), F.of_int(2))


def params_f13_q5() -> Params:
    # 5^2 = 25 = -1 mod 13: the double-arrow regime.
    F = PrimeField(13)
    return Params(F, F.of_int(1), F.of_int(5))


def params_f13_q2_pneg() -> Params:
    F = PrimeField(13)
    return Params(F, F.of_int(-1), F.of_int(2))


def params_q_q2() -> Params:
    F = Rationals()
    return Params(F, F.one, F.of_int(2))


def params_f5_q2() -> Params:
    F = PrimeField(5)
    return Params(F, F.of_int(1), F.of_int(2))


def params_f7_q2() -> Params:
    F = PrimeField(7)
    return Params(F, F.of_int(1), F.of_int(2))


def params_f13_q4() -> Params:
    F = PrimeField(13)
    return Params(F, F.of_int(1), F.of_int(4))


def alg_b(params: Params, seed: tuple[int, ...], lam: tuple[int, ...] | None = None):
    F = params.field
    return algebra_from_seed(params, tuple(F.of_int(s) for s in seed),
                             None if lam is None else tuple(F.of_int(x) for x in lam))


def alg_d(params: Params, seed: tuple[int, ...]):
    F = params.field
    return algebra_from_seed_d(params, tuple(F.of_int(s) for s in seed))


# The four regimes exercised by the relation tests (two strands), plus
# three-strand variants of the first two.  Each entry: (name, params
# factory, seed, lambda-tuple or None).
REGIME_CONFIGS = [
    ("f13-q2-fixed-letter", params_f13_q2, (1, 4), (1,)),
    ("f13-q2-generic", params_f13_q2, (2, 8), (2,)),
    ("f13-q5-double-arrow", params_f13_q5, (2, 11), (2,)),
    ("q-q2-selfpaired", params_q_q2, (3, 3), (3,)),
    ("f13-q2-fixed-letter-n3", params_f13_q2, (1, 4, 10), (1,)),
    ("f13-q5-double-arrow-n3", params_f13_q5, (2, 11, 2), (2,)),
]


def regime_algebra(name: str):
    for nm, pf, seed, lam in REGIME_CONFIGS:
        if nm == name:
            return alg_b(pf(), seed, lam)
    raise KeyError(name)


# ---------------------------------------------------------------------------
# Independent operator-identity prober on the polynomial representation.
# ---------------------------------------------------------------------------


def monos_up_to(n: int, cap: int):
    out = []
    for total in range(cap + 1):
        out.extend(compositions(total, n))
    return out


def _vec_sub(model: PolynomialModel, a, b):
    F = model.alg.params.field
    out = {i: dict(polys) for i, polys in a.items()}
    for i, polys in b.items():
        slot = out.setdefault(i, {})
        for mono, c in polys.items():
            s = F.add(slot.get(mono, F.zero), F.neg(c))
            if s == F.zero:
                slot.pop(mono, None)
            else:
                slot[mono] = s
    return {i: polys for i, polys in out.items() if polys}


def _vec_scale(model: PolynomialModel, c, a):
    F = model.alg.params.field
    if c == F.zero:
        return {}
    return {i: {m: F.mul(c, v) for m, v in polys.items()} for i, polys in a.items()}


def _vec_is_zero(a) -> bool:
    return not a


def operator_identity_failures(alg, mono_cap: int = 4) -> list[str]:
    """Check every defining relation as an identity of raw operators.

    Probes are the unit vectors e(i)*y^mono for every residue tuple of the
    block and every exponent tuple of total degree <= mono_cap.  Returns a
    list of human-readable failure descriptions (empty = all identities
    hold).
    """
    model = PolynomialModel(alg)
    F = alg.params.field
    n = alg.n
    failures: list[str] = []
    probes = []
    for i in alg.tuple_set:
        for mono in monos_up_to(n, mono_cap):
            probes.append((i, mono, {i: {mono: F.one}}))

    def check(label: str, lhs, rhs) -> None:
        if _vec_sub(model, lhs, rhs):
            failures.append(label)

    zero: dict = {}

    for i, mono, v in probes:
        # Idempotents: e(j) acts as the indicator of the summand.
        for j in alg.tuple_set:
            expect = v if j == i else zero
            check(f"idem[{j}] on {i}:{mono}", model.apply_idem(j, v), expect)

        # Dots commute with each other and with idempotents.
        for k in range(1, n + 1):
            for l in range(k, n + 1):
                check(f"y{k}y{l} comm on {i}:{mono}",
                      model.apply_y(k, model.apply_y(l, v)),
                      model.apply_y(l, model.apply_y(k, v)))
            check(f"y{k} e comm on {i}:{mono}",
                  model.apply_y(k, model.apply_idem(i, v)),
                  model.apply_idem(i, model.apply_y(k, v)))

        for a in alg.letters():
            # Crossings move idempotents across the strand action.
            ri = alg.act_letter(a, i)
            check(f"psi{a} e move on {i}:{mono}",
                  model.apply_psi(a, model.apply_idem(i, v)),
                  model.apply_idem(ri, model.apply_psi(a, v)))
            # Distant generators commute.
            for b in alg.letters():
                if abs(a - b) > 1:
                    check(f"psi{a}psi{b} comm on {i}:{mono}",
                          model.apply_psi(a, model.apply_psi(b, v)),
                          model.apply_psi(b, model.apply_psi(a, v)))

        # Dot-crossing straightening for the symmetric-group letters.
        for b in range(1, n):
            swap = list(range(n + 1))
            swap[b], swap[b + 1] = swap[b + 1], swap[b]
            for j in range(1, n + 1):
                lhs = _vec_sub(model,
                               model.apply_psi(b, model.apply_y(j, v)),
                               model.apply_y(swap[j], model.apply_psi(b, v)))
                if i[b - 1] == i[b] and j == b:
                    expect = _vec_scale(model, F.neg(F.one), v)
                elif i[b - 1] == i[b] and j == b + 1:
                    expect = v
                else:
                    expect = zero
                check(f"psi{b}y{j} straighten on {i}:{mono}", lhs, expect)

        # Crossing squares, by arrow shape between the two letters.
        for b in range(1, n):
            sq = model.apply_psi(b, model.apply_psi(b, v))
            rel = arrow_relation(i[b - 1], i[b], alg.params)
            if rel is ArrowRelation.EQUAL:
                expect = zero
            elif rel is ArrowRelation.NONE:
                expect = v
            elif rel is ArrowRelation.RIGHT:
                expect = _vec_sub(model, model.apply_y(b + 1, v),
                                  model.apply_y(b, v))
            elif rel is ArrowRelation.LEFT:
                expect = _vec_sub(model, model.apply_y(b, v),
                                  model.apply_y(b + 1, v))
            else:  # double arrow: (y_{b+1} - y_b)(y_b - y_{b+1}) as multiplication
                diff2 = _vec_sub(model, model.apply_y(b, v),
                                 model.apply_y(b + 1, v))
                expect = _vec_sub(model, model.apply_y(b + 1, diff2),
                                  model.apply_y(b, diff2))
            check(f"psi{b} square on {i}:{mono}", sq, expect)

        # Adjacent braid defect for the symmetric-group letters.
        for b in range(1, n - 1):
            lhs = _vec_sub(
                model,
                model.apply_psi(b, model.apply_psi(b + 1, model.apply_psi(b, v))),
                model.apply_psi(b + 1, model.apply_psi(b, model.apply_psi(b + 1, v))))
            x, y_, z = i[b - 1], i[b], i[b + 1]
            if x == z:
                rel = arrow_relation(x, y_, alg.params)
            else:
                rel = None
            if rel is ArrowRelation.RIGHT:
                expect = v
            elif rel is ArrowRelation.LEFT:
                expect = _vec_scale(model, F.neg(F.one), v)
            elif rel is ArrowRelation.BOTH:
                expect = _vec_sub(model, model.apply_y(b + 2, v),
                                  model.apply_y(b + 1, v))
                expect = _vec_sub(model, expect, model.apply_y(b + 1, v))
                expect = _vec_sub(model, expect,
                                  _vec_scale(model, F.neg(F.one), model.apply_y(b, v)))
            else:
                expect = zero
            check(f"braid{b} defect on {i}:{mono}", lhs, expect)

        if alg.flavor == "B":
            # Period-two crossing: anticommutes with the first dot, commutes
            # with the rest, squares to the identity, and satisfies the
            # order-four braid relation with the first adjacent crossing.
            check(f"psi0 y1 anticommute on {i}:{mono}",
                  model.apply_psi(0, model.apply_y(1, v)),
                  _vec_scale(model, F.neg(F.one), model.apply_y(1, model.apply_psi(0, v))))
            for j in range(2, n + 1):
                check(f"psi0 y{j} commute on {i}:{mono}",
                      model.apply_psi(0, model.apply_y(j, v)),
                      model.apply_y(j, model.apply_psi(0, v)))
            check(f"psi0 square on {i}:{mono}",
                  model.apply_psi(0, model.apply_psi(0, v)), v)
            if n >= 2:
                lhs = model.apply_psi(0, model.apply_psi(1, model.apply_psi(
                    0, model.apply_psi(1, v))))
                rhs = model.apply_psi(1, model.apply_psi(0, model.apply_psi(
                    1, model.apply_psi(0, v))))
                check(f"psi0psi1 order-four braid on {i}:{mono}", lhs, rhs)

    return failures
