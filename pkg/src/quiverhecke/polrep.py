"""Faithful polynomial operator model for the flavor-B algebra.

This module is an independent implementation route: it never calls the
rewriting engine's normal-form machinery.  The algebra acts on a direct
sum of polynomial rings K[Y_1..Y_n], one summand per residue tuple in the
orbit.  Generators act by

* e(j): projection onto the summand of j;
* y_k: multiplication by Y_k;
* psi_k (k >= 1) on the summand of i, depending on the adjacency of
  (i_k, i_{k+1}): the divided difference (r_k f - f)/(Y_k - Y_{k+1})
  staying on the same summand when the entries are equal; the plain swap
  r_k f moved to the summand of r_k(i) when there is an arrow
  i_k -> i_{k+1} or no arrow at all; and (Y_{k+1} - Y_k) r_k f moved to
  r_k(i) when an arrow runs i_k <- i_{k+1} (alone or with its reverse);
* psi_0 on the summand of i: f(Y_1, ...) -> f(-Y_1, ...) moved to the
  summand of r_0(i).

Every operator sends the summand of i into the summand of (letter . i), so
a basis word moves the summand of its right idempotent to the summand of
its left one.  Linear-independence certification exploits that: words are
grouped into blocks by (source tuple, target tuple) and probed per block.

All arithmetic is exact; divided differences divide exactly because their
numerators are antisymmetric, and the division helper asserts a zero
remainder rather than trusting that.
"""

from __future__ import annotations

import random

from .linalg import RowSpace
from .quiver import ArrowRelation, arrow_count, arrow_relation
from .report import CheckRecord, record
from .rewrite import BasisWord, Element, compositions
from .scalars import Scalar

__all__ = [
    "PolynomialModel",
    "h_twist",
    "independence_rank",
    "grown_independence_rank",
    "model_agreement_checks",
]

Mono = tuple[int, ...]
Poly = dict[Mono, Scalar]
PolVec = dict[tuple, Poly]  # residue tuple -> polynomial in that summand


class PolynomialModel:
    """Operators of the flavor-B generators on the summed polynomial ring."""

    def __init__(self, alg) -> None:
        if alg.flavor != "B":
            raise ValueError("the polynomial model is defined for the flavor-B algebra")
        self.alg = alg
        self.field = alg.field
        self.n = alg.n

    # -- polynomial helpers -------------------------------------------------

    def _padd(self, a: Poly, b: Poly, coeff: Scalar) -> Poly:
        F = self.field
        out = dict(a)
        for m, c in b.items():
            nc = F.add(out.get(m, F.zero), F.mul(coeff, c))
            if nc == F.zero:
                out.pop(m, None)
            else:
                out[m] = nc
        return out

    def _pmul_y(self, f: Poly, k: int) -> Poly:
        return {tuple(e + (1 if t == k - 1 else 0) for t, e in enumerate(m)): c for m, c in f.items()}

    def _swap(self, f: Poly, k: int) -> Poly:
        out: Poly = {}
        for m, c in f.items():
            lst = list(m)
            lst[k - 1], lst[k] = lst[k], lst[k - 1]
            out[tuple(lst)] = c
        return out

    def _negate_first(self, f: Poly) -> Poly:
        F = self.field
        return {m: (c if m[0] % 2 == 0 else F.neg(c)) for m, c in f.items()}

    def _divide_diff(self, f: Poly, k: int) -> Poly:
        """(r_k f - f) / (Y_k - Y_{k+1}), exact by antisymmetry."""
        F = self.field
        num = self._padd(self._swap(f, k), {m: F.neg(c) for m, c in f.items()}, F.one)
        quotient: Poly = {}
        while num:
            lead = max(num, key=lambda m: (m[k - 1], m))
            if lead[k - 1] == 0:  # pragma: no cover - antisymmetry is structural
                raise RuntimeError("divided-difference numerator not divisible")
            c = num.pop(lead)
            qm = tuple(e - (1 if t == k - 1 else 0) for t, e in enumerate(lead))
            quotient[qm] = F.add(quotient.get(qm, F.zero), c)
            # subtract c * Y^qm * (Y_k - Y_{k+1}); the Y_k part cancels lead
            other = tuple(e + (1 if t == k else 0) for t, e in enumerate(qm))
            nc = F.add(num.get(other, F.zero), c)
            if nc == F.zero:
                num.pop(other, None)
            else:
                num[other] = nc
        return {m: c for m, c in quotient.items() if c != F.zero}

    # -- generator operators --------------------------------------------------

    def apply_idem(self, j: tuple, vec: PolVec) -> PolVec:
        f = vec.get(tuple(j))
        return {tuple(j): f} if f else {}

    def apply_y(self, k: int, vec: PolVec) -> PolVec:
        return {i: self._pmul_y(f, k) for i, f in vec.items() if f}

    def apply_psi(self, a: int, vec: PolVec) -> PolVec:
        F = self.field
        alg = self.alg
        out: PolVec = {}

        def emit(i: tuple, f: Poly) -> None:
            if not f:
                return
            cur = out.get(i)
            out[i] = self._padd(cur, f, F.one) if cur else dict(f)

        for i, f in vec.items():
            if not f:
                continue
            if a == 0:
                emit(alg.act_letter(0, i), self._negate_first(f))
                continue
            rel = arrow_relation(i[a - 1], i[a], alg.params)
            if rel is ArrowRelation.EQUAL:
                emit(i, self._divide_diff(f, a))
            elif rel in (ArrowRelation.RIGHT, ArrowRelation.NONE):
                emit(alg.act_letter(a, i), self._swap(f, a))
            else:  # LEFT or BOTH
                g = self._swap(f, a)
                g = self._padd(self._pmul_y(g, a + 1), self._pmul_y(g, a), F.neg(F.one))
                emit(alg.act_letter(a, i), g)
        return {i: f for i, f in out.items() if f}

    # -- words and elements ---------------------------------------------------

    def apply_word(self, word: BasisWord, vec: PolVec) -> PolVec:
        out = self.apply_idem(word.tup, vec)
        for a in reversed(self.alg.chosen(word.perm)):
            out = self.apply_psi(a, out)
        for k in range(1, self.n + 1):
            for _ in range(word.mono[k - 1]):
                out = self.apply_y(k, out)
        return out

    def apply_element(self, x: Element | dict, vec: PolVec) -> PolVec:
        terms = x.terms if isinstance(x, Element) else x
        F = self.field
        out: PolVec = {}
        for word, coeff in terms.items():
            part = self.apply_word(word, vec)
            for i, f in part.items():
                cur = out.get(i, {})
                out[i] = self._padd(cur, f, coeff)
        return {i: f for i, f in out.items() if f}

    def unit_probe(self, i: tuple, mono: Mono | None = None) -> PolVec:
        return {tuple(i): {mono or (0,) * self.n: self.field.one}}


# ---------------------------------------------------------------------------
# net Y-exponent of the composite first-crossing action


def h_twist(params, i) -> int:
    """Exponent of (Y_2 - Y_1) carried by the composite first-crossing operator.

    For a residue tuple ``i`` (length at least 2): -1 when the first two
    entries are equal (the divided difference lowers degree), otherwise the
    number of arrows from the second entry to the first (a swap picks up
    one linear factor exactly when that arrow is present).
    """
    if len(i) < 2:
        raise ValueError("the composite twist needs at least two strands")
    if i[0] == i[1]:
        return -1
    return arrow_count(i[1], i[0], params)


# ---------------------------------------------------------------------------
# independence certification


def independence_rank(model: PolynomialModel, words: list[BasisWord], probe_degree_cap: int) -> int:
    """Rank of the operators of the given words, probed symbolically.

    Words are grouped by (source tuple, target tuple); distinct groups act
    between different summand pairs, so the total rank is the sum of block
    ranks.  Within a block, each word becomes the vector of coefficients of
    its images of all probe monomials up to the cap.
    """
    alg = model.alg
    blocks: dict[tuple, list[BasisWord]] = {}
    for w in words:
        blocks.setdefault((w.tup, alg.left_tuple(w)), []).append(w)
    total = 0
    for (src, _), block in sorted(blocks.items(), key=lambda kv: (kv[0][0], kv[0][1])):
        probes = []
        for d in range(probe_degree_cap + 1):
            probes.extend(compositions(d, model.n))
        rs = RowSpace(model.field)
        coord_index: dict[tuple, int] = {}
        for w in block:
            col: dict[int, Scalar] = {}
            for p_idx, mono in enumerate(probes):
                image = model.apply_word(w, model.unit_probe(src, mono))
                for i, f in image.items():
                    for m, c in f.items():
                        key = (p_idx, i, m)
                        idx = coord_index.setdefault(key, len(coord_index))
                        col[idx] = c
            rs.insert(col)
        total += rs.rank
    return total


def grown_independence_rank(
    model: PolynomialModel, words: list[BasisWord], start_cap: int, max_cap: int
) -> tuple[int, int]:
    """Grow the probe degree cap until every word is certified independent.

    Returns (rank, cap used).  The rank is monotone in the cap, so stopping
    as soon as it reaches len(words) is sound; reaching max_cap without full
    rank reports the last rank (which may understate independence).
    """
    cap = start_cap
    rank = independence_rank(model, words, cap)
    while rank < len(words) and cap < max_cap:
        cap += 1
        rank = independence_rank(model, words, cap)
    return rank, cap


def randomized_spot_rank(
    model: PolynomialModel, words: list[BasisWord], rng: random.Random, probes: int = 3
) -> int:
    """Cheaper randomized variant: probe random monomial vectors, still exact.

    A lower bound on the true rank; useful as a fallback when symbolic
    probing at full degree is too wide.
    """
    alg = model.alg
    blocks: dict[tuple, list[BasisWord]] = {}
    for w in words:
        blocks.setdefault((w.tup, alg.left_tuple(w)), []).append(w)
    total = 0
    for (src, _), block in sorted(blocks.items(), key=lambda kv: (kv[0][0], kv[0][1])):
        max_deg = max(sum(w.mono) for w in block) + model.n
        monos = []
        for _ in range(probes):
            monos.append(tuple(rng.randrange(0, max_deg + 1) for _ in range(model.n)))
        rs = RowSpace(model.field)
        coord_index: dict[tuple, int] = {}
        for w in block:
            col: dict[int, Scalar] = {}
            for p_idx, mono in enumerate(monos):
                image = model.apply_word(w, model.unit_probe(src, mono))
                for i, f in image.items():
                    for m, c in f.items():
                        key = (p_idx, i, m)
                        idx = coord_index.setdefault(key, len(coord_index))
                        col[idx] = c
            rs.insert(col)
        total += rs.rank
    return total


# ---------------------------------------------------------------------------
# engine-versus-model agreement


def model_agreement_checks(alg, rng: random.Random, samples: int = 40) -> list[CheckRecord]:
    """Certify the rewriting engine against the operator model.

    Random generator strings are normalized by the engine and both the
    string (composed operator by operator) and its normal form (word by
    word) are applied to probe vectors; the images must agree.  This is the
    independent dual route: a bug in either the rewriting rules or the
    operator definitions breaks the agreement.
    """
    model = PolynomialModel(alg)
    F = alg.field
    recs: list[CheckRecord] = []
    letters = alg.letters()
    gen_kinds: list[tuple] = [("psi", a) for a in letters]
    gen_kinds += [("y", k) for k in range(1, alg.n + 1)]

    ok = True
    witness = None
    for trial in range(samples):
        i0 = alg.tuples[rng.randrange(len(alg.tuples))]
        length = rng.randrange(1, 7)
        string = [gen_kinds[rng.randrange(len(gen_kinds))] for _ in range(length)]
        elem = alg.idempotent(i0)
        for kind, idx in reversed(string):
            gen = alg.psi(idx) if kind == "psi" else alg.y(idx)
            elem = gen * elem
        for probe_mono in [(0,) * alg.n, tuple(min(t, 2) for t in range(alg.n, 0, -1))]:
            vec = model.unit_probe(i0, probe_mono)
            direct = vec
            direct = model.apply_idem(i0, direct)
            for kind, idx in reversed(string):
                direct = (
                    model.apply_psi(idx, direct) if kind == "psi" else model.apply_y(idx, direct)
                )
            via_nf = model.apply_element(elem, vec)
            if direct != via_nf:
                ok, witness = False, (string, i0, probe_mono)
    recs.append(
        record(
            "model-agreement",
            f"engine normal forms act like the raw generator strings ({samples} random strings)",
            ok,
            witness,
        )
    )
    return recs
