"""Cyclotomic quotients by exact per-degree saturation.

The quotient kills the two-sided ideal generated by y_1^{m(i_1)} e(i) for
every tuple i in the orbit, where m assigns a multiplicity to each vertex
(absent vertices count 0, so a vanishing multiplicity kills the whole
component of that idempotent).  The generators are homogeneous, hence the
ideal is graded and can be computed degree by degree as a row space over
the canonical list of spanning words of each degree.

Two facts make the computation finite and certifiably complete:

* nilpotency: each y_k becomes nilpotent in the quotient, say of index
  N_k (y_k^{N_k} lands in the ideal);
* the cap: any word whose degree exceeds
      D* = 2 (N_1 + ... + N_n) + (largest crossing-part degree)
  has monomial exponent sum exceeding N_1 + ... + N_n, so some exponent
  reaches its N_k and the word already lies in the ideal.

The build runs in two phases.  Phase one grows a degree window and closes
the generators under one-sided multiplications *without* assuming the cap;
everything it proves inside the window is sound (a genuine ideal member),
so the first exponents N_k it finds are valid upper nilpotency witnesses.
Phase two fixes D* from those witnesses, re-closes with every word of
degree in (D*, D*+2] seeded as an ideal row — legitimate by the cap — and
then re-minimizes the N_k against the now-complete ideal, iterating if
they shrink.  Completeness of the final row spaces follows by induction on
multiplication chains: a single generator multiplication changes degree by
at most 2, so any chain that leaves the window passes through the fully
seeded band (D*, D*+2] on its way back down.

Reduced row echelon form is unique per degree, so pivot words, residual
(quotient basis) words, and all reported coordinates are independent of
the order in which rows were produced.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from ..linalg import RowSpace
from ..report import CheckRecord, record
from ..rewrite import BasisWord, Element, RewriteEngine, word_sort_key
from ..scalars import Scalar

__all__ = [
    "CyclotomicQuotient",
    "CycloElement",
    "symmetrize_min",
    "symmetrize_max",
    "two_sided_closure",
    "space_graded_ranks",
]

NF = dict[BasisWord, Scalar]


def _normalize_multiplicities(field, m: dict) -> dict:
    out: dict = {}
    for v, mult in m.items():
        if mult < 0:
            raise ValueError("multiplicities must be nonnegative")
        if int(mult) != mult:
            raise ValueError("multiplicities must be integers")
        out[v] = int(mult)
    return out


def symmetrize_min(m: dict, field) -> dict:
    """Pointwise minimum of m(v) and m(v^{-1}) over the inverse-closed support."""
    support = set(m) | {field.inv(v) for v in m}
    return {v: min(m.get(v, 0), m.get(field.inv(v), 0)) for v in sorted(support)}


def symmetrize_max(m: dict, field) -> dict:
    """Pointwise maximum of m(v) and m(v^{-1}) over the inverse-closed support."""
    support = set(m) | {field.inv(v) for v in m}
    return {v: max(m.get(v, 0), m.get(field.inv(v), 0)) for v in sorted(support)}


class CyclotomicQuotient:
    """The graded quotient, with canonical residual-word coordinates."""

    def __init__(
        self,
        alg: RewriteEngine,
        m: dict,
        *,
        safety_cap: int = 40,
        initial_margin: int | None = None,
        _seed_order: list[int] | None = None,
    ) -> None:
        self.alg = alg
        self.field = alg.field
        self.m = _normalize_multiplicities(alg.field, m)
        self.safety_cap = safety_cap
        self._seed_order = _seed_order
        self._dmin, self._max_psi_deg = alg.psi_degree_range()
        self._words: dict[int, list[BasisWord]] = {}
        self._index: dict[int, dict[BasisWord, int]] = {}
        self._ideal: dict[int, RowSpace] = {}
        self.nilpotency: dict[int, int] = {}
        self.star_degree: int = -1
        self._hi: int = -1
        margin = initial_margin
        if margin is None:
            margin = 2 * (1 + max(self.m.values(), default=0)) + 2
        self._build(margin)
        self._free: dict[int, list[BasisWord]] = {}
        for d in range(self._dmin, self.star_degree + 1):
            words = self._degree_words(d)
            pivots = set(self._ideal[d].pivots) if d in self._ideal else set()
            free = [w for t, w in enumerate(words) if t not in pivots]
            if free:
                self._free[d] = free

    # -- word tables --------------------------------------------------------

    def _degree_words(self, d: int) -> list[BasisWord]:
        words = self._words.get(d)
        if words is None:
            words = self.alg.basis_words_at_degree(d)
            self._words[d] = words
            self._index[d] = {w: t for t, w in enumerate(words)}
        return words

    def _vec_of(self, d: int, nf: NF) -> dict[int, Scalar]:
        index = self._index[d]
        return {index[w]: c for w, c in nf.items()}

    def _nf_of(self, d: int, vec: dict[int, Scalar]) -> NF:
        words = self._words[d]
        return {words[t]: c for t, c in vec.items()}

    def _slices(self, nf: NF) -> dict[int, NF]:
        out: dict[int, NF] = {}
        for w, c in nf.items():
            out.setdefault(self.alg.word_degree(w), {})[w] = c
        return out

    # -- saturation ----------------------------------------------------------

    def _generator_rows(self) -> list[tuple[int, NF]]:
        rows = []
        for i in self.alg.tuples:
            mult = self.m.get(i[0], 0)
            mono = (mult,) + (0,) * (self.alg.n - 1)
            word = BasisWord(mono, _identity_perm(self.alg), i)
            rows.append((2 * mult, {word: self.field.one}))
        if self._seed_order is not None:
            rows = [rows[t] for t in self._seed_order]
        return rows

    def _row_images(self, d: int, nf: NF) -> list[tuple[int, NF]]:
        """All one-generator left/right multiples of a homogeneous row."""
        alg = self.alg
        out: list[tuple[int, NF]] = []

        def push(res: NF) -> None:
            for dd, sl in self._slices(res).items():
                out.append((dd, sl))

        # idempotent projections on both sides (stay at degree d)
        by_left: dict[tuple, NF] = {}
        by_right: dict[tuple, NF] = {}
        for w, c in nf.items():
            by_left.setdefault(alg.left_tuple(w), {})[w] = c
            by_right.setdefault(w.tup, {})[w] = c
        if len(by_left) > 1:
            for sl in by_left.values():
                out.append((d, sl))
        if len(by_right) > 1:
            for sl in by_right.values():
                out.append((d, sl))

        for k in range(1, alg.n + 1):
            out.append((d + 2, alg.left_mul_y(k, nf)))
            acc: NF = {}
            for w, c in nf.items():
                alg._merge(acc, alg.word_times_y(w, k), c)
            out.append((d + 2, acc))
        for a in alg.letters():
            push(alg.left_mul_letter(a, nf))
            acc = {}
            for w, c in nf.items():
                alg._merge(acc, alg.word_times_psi(w, a), c)
            push(acc)
        return [(dd, sl) for dd, sl in out if sl]

    def _close(self, seeds: list[tuple[int, NF]], hi: int, overflow: dict[int, list[NF]]) -> None:
        """Worklist closure of the current ideal rows inside degrees <= hi."""
        pending: list[tuple[int, NF]] = []

        def offer(d: int, nf: NF) -> None:
            if not nf:
                return
            if d > hi:
                if d <= self.safety_cap + 2:
                    overflow.setdefault(d, []).append(nf)
                return
            self._degree_words(d)
            rs = self._ideal.setdefault(d, RowSpace(self.field))
            residue = rs.reduce(self._vec_of(d, nf))
            if not residue:
                return
            rs.insert(residue)
            pending.append((d, self._nf_of(d, residue)))

        for d, nf in seeds:
            offer(d, nf)
        while pending:
            d, nf = pending.pop()
            for dd, sl in self._row_images(d, nf):
                offer(dd, sl)

    def _membership_exponent(self, k: int, hi: int) -> int | None:
        """Least N with y_k^N in the (possibly partial) ideal, or None."""
        for N in range(1, hi // 2 + 1):
            d = 2 * N
            if d not in self._ideal:
                continue
            mono = tuple(N if t == k - 1 else 0 for t in range(self.alg.n))
            nf = {BasisWord(mono, _identity_perm(self.alg), i): self.field.one for i in self.alg.tuples}
            self._degree_words(d)
            if self._ideal[d].contains(self._vec_of(d, nf)):
                return N
        return None

    def _build(self, margin: int) -> None:
        overflow: dict[int, list[NF]] = {}
        hi = self._max_psi_deg + 2 * max(self.m.values(), default=0) + margin
        self._close(self._generator_rows(), hi, overflow)
        while True:
            exps = {k: self._membership_exponent(k, hi) for k in range(1, self.alg.n + 1)}
            if all(v is not None for v in exps.values()):
                break
            hi += 4
            if hi > self.safety_cap:
                raise RuntimeError(
                    f"nilpotency not detected below the safety cap {self.safety_cap}; "
                    "the quotient may be infinite-dimensional or the cap too low"
                )
            reinject = [
                (d, nf) for d in sorted(overflow) if d <= hi for nf in overflow.pop(d, [])
            ]
            self._close(reinject, hi, overflow)
        self.nilpotency = {k: int(v) for k, v in exps.items()}  # type: ignore[arg-type]

        while True:
            star = 2 * sum(self.nilpotency.values()) + self._max_psi_deg
            hi = star + 2
            band_rows: list[tuple[int, NF]] = []
            for d in (star + 1, star + 2):
                for w in self._degree_words(d):
                    band_rows.append((d, {w: self.field.one}))
            reinject = [
                (d, nf) for d in sorted(overflow) if d <= hi for nf in list(overflow.pop(d, []))
            ]
            self._close(band_rows + reinject, hi, overflow)
            improved = False
            for k in range(1, self.alg.n + 1):
                better = self._membership_exponent(k, hi)
                if better is not None and better < self.nilpotency[k]:
                    self.nilpotency[k] = better
                    improved = True
            if not improved:
                self.star_degree = star
                self._hi = hi
                break

        # The band under the final cap must be entirely ideal.
        for d in (self.star_degree + 1, self.star_degree + 2):
            words = self._degree_words(d)
            rs = self._ideal.get(d)
            if words and (rs is None or rs.rank != len(words)):  # pragma: no cover
                raise RuntimeError("band degrees are not fully saturated")

    # -- quotient interface ----------------------------------------------------

    @property
    def is_zero_algebra(self) -> bool:
        return not self._free

    def graded_dims(self) -> dict[int, int]:
        return {d: len(words) for d, words in sorted(self._free.items())}

    @property
    def total_dim(self) -> int:
        return sum(len(w) for w in self._free.values())

    def basis_words(self) -> list[tuple[int, BasisWord]]:
        out = []
        for d in sorted(self._free):
            out.extend((d, w) for w in self._free[d])
        return out

    def ideal_rows(self) -> list[tuple[int, NF]]:
        """Reduced row basis of the defining ideal, as (degree, coordinates).

        Only degrees up to the residual cap are materialized; beyond that the
        whole degree slice lies in the ideal and is never stored row by row.
        """
        out: list[tuple[int, NF]] = []
        for d in sorted(self._ideal):
            rs = self._ideal[d]
            out.extend((d, self._nf_of(d, row)) for row in rs.basis_rows())
        return out

    def reduce_nf(self, nf: NF) -> NF:
        """Canonical residual coordinates of an affine element."""
        F = self.field
        out: NF = {}
        for d, sl in self._slices(nf).items():
            if d > self.star_degree:
                continue  # entirely inside the ideal by the cap
            self._degree_words(d)
            rs = self._ideal.get(d)
            vec = self._vec_of(d, sl)
            residue = rs.reduce(vec) if rs is not None else vec
            for t, c in residue.items():
                out[self._words[d][t]] = c
        return {w: c for w, c in out.items() if c != F.zero}

    def reduce(self, x: Element) -> "CycloElement":
        return CycloElement(self, self.reduce_nf(x.terms))

    def element(self, nf: NF | None = None) -> "CycloElement":
        return CycloElement(self, self.reduce_nf(nf or {}))

    def idempotent(self, i) -> "CycloElement":
        return self.reduce(self.alg.idempotent(i))

    def unit(self) -> "CycloElement":
        return self.reduce(self.alg.unit())

    def y(self, k: int) -> "CycloElement":
        return self.reduce(self.alg.y(k))

    def psi(self, a: int) -> "CycloElement":
        return self.reduce(self.alg.psi(a))

    def basis_elements(self) -> list["CycloElement"]:
        return [CycloElement(self, {w: self.field.one}) for _, w in self.basis_words()]

    def multiply_nf(self, a: NF, b: NF) -> NF:
        return self.reduce_nf(self.alg.multiply(a, b))

    # -- post-hoc cross-checks ---------------------------------------------------

    def nilpotency_checks(self) -> list[CheckRecord]:
        """Recompute each nilpotency index by brute-force powering."""
        recs = []
        for k in sorted(self.nilpotency):
            yk = self.y(k)
            power = self.unit()
            steps = 0
            while not power.is_zero() and steps <= self.nilpotency[k] + 1:
                power = power * yk
                steps += 1
            ok = power.is_zero() and steps == self.nilpotency[k]
            recs.append(
                record(
                    f"nilpotency-y{k}",
                    f"least vanishing power of y_{k} is {self.nilpotency[k]}",
                    ok,
                    (k, steps),
                )
            )
        return recs

    def associativity_checks(self, rng: random.Random, exhaustive_limit: int = 60, samples: int = 1000) -> list[CheckRecord]:
        """(ab)c = a(bc) on basis triples, exhaustively in small dimension."""
        basis = self.basis_elements()
        dim = len(basis)
        ok = True
        witness = None
        if dim == 0:
            return [record("associativity", "associativity on basis triples (zero algebra)", True)]
        if dim <= exhaustive_limit and dim**3 <= 250_000:
            triples = itertools.product(range(dim), repeat=3)
        else:
            triples = ((rng.randrange(dim), rng.randrange(dim), rng.randrange(dim)) for _ in range(samples))
        count = 0
        for ia, ib, ic in triples:
            a, b, c = basis[ia], basis[ib], basis[ic]
            if (a * b) * c != a * (b * c):
                ok, witness = False, (ia, ib, ic)
                break
            count += 1
        return [
            record(
                "associativity",
                f"structure constants associate ({count} triples checked)",
                ok,
                witness,
            )
        ]

    def determinism_checks(self, rng: random.Random) -> list[CheckRecord]:
        """Rebuild with a shuffled seed order; pivots must not move."""
        order = list(range(len(self.alg.tuples)))
        rng.shuffle(order)
        clone = CyclotomicQuotient(
            self.alg, self.m, safety_cap=self.safety_cap, _seed_order=order
        )
        same_pivots = {
            d: rs.pivots for d, rs in sorted(self._ideal.items()) if d <= self.star_degree
        } == {d: rs.pivots for d, rs in sorted(clone._ideal.items()) if d <= clone.star_degree}
        ok = same_pivots and clone.nilpotency == self.nilpotency
        return [
            record(
                "determinism",
                "pivot words and nilpotency indices are insertion-order independent",
                ok,
                None,
            )
        ]


def _identity_perm(alg: RewriteEngine):
    from .. import weyl

    return weyl.identity(alg.n)


class CycloElement:
    """An element of the quotient in canonical residual coordinates."""

    __slots__ = ("quotient", "terms")

    def __init__(self, quotient: CyclotomicQuotient, terms: NF) -> None:
        self.quotient = quotient
        F = quotient.field
        self.terms = {w: c for w, c in terms.items() if c != F.zero}

    def __add__(self, other: "CycloElement") -> "CycloElement":
        F = self.quotient.field
        out = dict(self.terms)
        for w, c in other.terms.items():
            nc = F.add(out.get(w, F.zero), c)
            if nc == F.zero:
                out.pop(w, None)
            else:
                out[w] = nc
        return CycloElement(self.quotient, out)

    def __sub__(self, other: "CycloElement") -> "CycloElement":
        return self + other.scale(self.quotient.field.neg(self.quotient.field.one))

    def __neg__(self) -> "CycloElement":
        return self.scale(self.quotient.field.neg(self.quotient.field.one))

    def scale(self, c: Scalar) -> "CycloElement":
        F = self.quotient.field
        return CycloElement(self.quotient, {w: F.mul(c, x) for w, x in self.terms.items()})

    def __mul__(self, other: "CycloElement") -> "CycloElement":
        return CycloElement(self.quotient, self.quotient.multiply_nf(self.terms, other.terms))

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycloElement):
            return NotImplemented
        return self.quotient is other.quotient and self.terms == other.terms

    def __hash__(self):
        raise TypeError("quotient elements are not hashable")

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> list[int]:
        return sorted({self.quotient.alg.word_degree(w) for w in self.terms})

    def __repr__(self) -> str:
        return f"CycloElement({len(self.terms)} residual words)"


# ---------------------------------------------------------------------------
# two-sided closures of a set of quotient elements (ideals inside the quotient)


def two_sided_closure(
    quotient: CyclotomicQuotient, seeds: list[CycloElement]
) -> tuple[RowSpace, dict[BasisWord, int]]:
    """Row space of the two-sided ideal generated by the seeds in the quotient.

    Runs a worklist over quotient elements, multiplying by every generator
    on both sides; the quotient is finite-dimensional, so this terminates.
    Elements are NOT sliced by degree — an inhomogeneous seed generates an
    a-priori ungraded subspace, and pretending otherwise would overstate
    the ideal.  Columns are indexed by residual words ordered (degree,
    canonical word order), so homogeneous rows remain recognizably
    homogeneous in the reduced basis.
    """
    alg = quotient.alg
    F = quotient.field
    index: dict[BasisWord, int] = {}
    for _, w in quotient.basis_words():
        index[w] = len(index)
    space = RowSpace(F)
    words = [w for _, w in quotient.basis_words()]

    def offer(el: CycloElement) -> list[CycloElement]:
        if el.is_zero():
            return []
        vec = {index[w]: c for w, c in el.terms.items()}
        residue = space.reduce(vec)
        if not residue:
            return []
        space.insert(residue)
        return [CycloElement(quotient, {words[t]: c for t, c in residue.items()})]

    gens: list[CycloElement] = [quotient.idempotent(i) for i in alg.tuples]
    gens += [quotient.y(k) for k in range(1, alg.n + 1)]
    gens += [quotient.psi(a) for a in alg.letters()]

    pending: list[CycloElement] = []
    for s in seeds:
        pending.extend(offer(s))
    while pending:
        el = pending.pop()
        for g in gens:
            pending.extend(offer(g * el))
            pending.extend(offer(el * g))
    return space, index


def space_graded_ranks(quotient: CyclotomicQuotient, space: RowSpace, index: dict[BasisWord, int]) -> dict[int, int]:
    """Per-degree ranks of a row space whose reduced rows are homogeneous.

    Raises when a reduced row mixes degrees; for a genuinely graded
    subspace (e.g. one equal to an ideal with homogeneous generators) the
    reduced rows never do, because words of distinct degrees occupy
    distinct columns and homogeneous rows only eliminate against equal
    degrees.
    """
    words = [w for _, w in quotient.basis_words()]
    out: dict[int, int] = {}
    for row in space.basis_rows():
        degs = {quotient.alg.word_degree(words[t]) for t in row}
        if len(degs) != 1:
            raise ValueError("row space is not graded; per-degree ranks undefined")
        d = degs.pop()
        out[d] = out.get(d, 0) + 1
    return dict(sorted(out.items()))
