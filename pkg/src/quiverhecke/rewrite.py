"""Normal-form rewriting engine for the two flavors of quiver Hecke algebra.

Both algebras studied here have a distinguished spanning set indexed by
triples (monomial, group element, residue tuple), realized as the products

    y_1^{m_1} ... y_n^{m_n} . psi_{a_1} ... psi_{a_r} . e(i)

where (a_1, ..., a_r) is the chosen reduced word of the group element and
e(i) is the idempotent of a residue tuple in the fixed orbit.  The engine
rewrites any product of generators into an exact linear combination of
these basis words.  The strategy is local: every generator application is
reduced to three primitive steps,

* commuting a polynomial past one crossing generator, which twists the
  polynomial and may emit a divided-difference correction carrying no
  crossing at all;
* converting ``psi_letter . (chosen word)`` into the chosen word of the
  longer element by replaying a chain of braid moves, each of which may
  emit a correction with strictly fewer crossings;
* collapsing a square ``psi_letter^2`` (the descent case) through the
  quadratic relation of the letter, which turns crossings into polynomials.

Corrections always have strictly fewer crossing letters than the input, so
the recursion terminates; memoization on (letter, element, tuple) keeps the
whole computation polynomial at the scales used here.

The two flavors differ only in the behavior of the letter 0: its signed
permutation, its tuple action, how polynomials commute past it, its square,
which braid moves involve it, and its degree.  Subclasses provide those
hooks; every other rule is shared verbatim.
"""

from __future__ import annotations

import itertools
from typing import Iterator, NamedTuple

from . import weyl
from .quiver import ArrowRelation, arrow_count, arrow_relation
from .scalars import Params, Scalar
from .weyl import BraidMove, Orbit, SignedPerm

__all__ = ["BasisWord", "Element", "RewriteEngine", "compositions", "word_sort_key"]

Mono = tuple[int, ...]
Poly = dict[Mono, Scalar]  # sparse polynomial in y_1..y_n


class BasisWord(NamedTuple):
    """One spanning word: monomial exponents, group element, right idempotent."""

    mono: Mono
    perm: SignedPerm
    tup: tuple[Scalar, ...]


NF = dict[BasisWord, Scalar]  # normal form: word -> coefficient


def word_sort_key(word: BasisWord):
    return (word.perm.images, word.tup, word.mono)


def compositions(total: int, parts: int) -> Iterator[Mono]:
    """All exponent tuples with the given sum, lexicographically.

    >>> list(compositions(2, 2))
    [(0, 2), (1, 1), (2, 0)]
    """
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in compositions(total - head, parts - 1):
            yield (head,) + rest


def _add_mono(a: Mono, b: Mono) -> Mono:
    return tuple(x + y for x, y in zip(a, b))


class RewriteEngine:
    """Shared machinery; instantiate via the flavor subclasses."""

    flavor: str = "?"

    def __init__(self, params: Params, beta: Orbit) -> None:
        if beta.flavor != self.flavor:
            raise ValueError(f"orbit flavor {beta.flavor} does not match engine {self.flavor}")
        self.params = params
        self.field = params.field
        self.beta = beta
        self.n = len(beta.seed)
        self.tuples = beta.members
        self.tuple_set = set(beta.members)
        self.zero_mono: Mono = (0,) * self.n
        self._psi_perm_cache: dict[tuple[int, SignedPerm, tuple], NF] = {}
        self._left_tuple_cache: dict[tuple[SignedPerm, tuple], tuple] = {}
        self._perm_deg_cache: dict[tuple[SignedPerm, tuple], int] = {}
        self._right_y_cache: dict[tuple[SignedPerm, tuple, int], NF] = {}
        self._right_psi_cache: dict[tuple[SignedPerm, tuple, int], NF] = {}
        self._group: list[SignedPerm] | None = None

    # -- flavor hooks -----------------------------------------------------

    def letters(self) -> list[int]:
        return [a for a in range(self.n) if a >= 1 or self._letter0_available()]

    def _letter0_available(self) -> bool:
        return self.flavor == "B" or self.n >= 2

    def letter_perm(self, a: int) -> SignedPerm:
        return weyl.generator_perm(self.flavor, a, self.n)

    def act_letter(self, a: int, tup: tuple) -> tuple:
        return weyl.act_letter(self.flavor, a, tup, self.field)

    def act(self, w: SignedPerm, tup: tuple) -> tuple:
        return weyl.act(w, tup, self.field)

    def chosen(self, w: SignedPerm) -> tuple[int, ...]:
        raise NotImplementedError

    def _commute_mono_letter0(self, mono: Mono, jtup: tuple) -> tuple[Mono, Scalar, Poly]:
        """Move y^mono leftwards past the letter-0 generator.

        Returns (twisted monomial, its coefficient, correction polynomial);
        the correction multiplies the untouched word directly.
        """
        raise NotImplementedError

    def _square_poly_letter0(self, jtup: tuple) -> Poly:
        raise NotImplementedError

    def _deg_letter0(self, jtup: tuple) -> int:
        raise NotImplementedError

    def _braid_correction(self, kind: str, seg: tuple[int, ...], jtup: tuple) -> tuple[int, Poly] | None:
        """Correction (sign, poly) for a braid move whose old segment is seg.

        The defining identity is written with the segment starting on the
        smaller letter as the positive side; rewriting away from that side
        adds the case polynomial, rewriting towards it subtracts.
        """
        if kind in ("comm", "bbraid"):
            return None
        if kind == "sbraid":
            b = min(seg)  # letters are (b, b+1, b) or (b+1, b, b+1)
            poly = self._triple_braid_poly(b, jtup)
            if poly is None:
                return None
            return (1 if seg[0] == b else -1, poly)
        if kind == "dbraid":
            poly = self._letter0_braid_poly(jtup)
            if poly is None:
                return None
            return (1 if seg[0] == 0 else -1, poly)
        raise ValueError(f"unknown move kind {kind}")

    def _triple_braid_poly(self, b: int, j: tuple) -> Poly | None:
        """Defect of psi_b psi_{b+1} psi_b - psi_{b+1} psi_b psi_{b+1} on e(j).

        Nonzero only when j_b = j_{b+2}; then it is +-1 for a single arrow
        between j_b and j_{b+1} (sign following the arrow's direction) and
        the discrete second difference of y across the three slots when
        arrows run both ways.
        """
        F = self.field
        if j[b - 1] != j[b + 1]:
            return None
        rel = arrow_relation(j[b - 1], j[b], self.params)
        if rel is ArrowRelation.RIGHT:
            return {self.zero_mono: F.one}
        if rel is ArrowRelation.LEFT:
            return {self.zero_mono: F.neg(F.one)}
        if rel is ArrowRelation.BOTH:
            one = F.one
            two = F.of_int(2)
            e = lambda k: tuple(1 if t == k else 0 for t in range(self.n))
            return {e(b + 1): one, e(b): F.neg(two), e(b - 1): one}
        return None

    def _letter0_braid_poly(self, j: tuple) -> Poly | None:
        raise NotImplementedError

    # -- degrees ----------------------------------------------------------

    def deg_letter(self, a: int, jtup: tuple) -> int:
        """Degree of the letter-a generator applied on the idempotent e(jtup)."""
        if a == 0:
            return self._deg_letter0(jtup)
        i, j = jtup[a - 1], jtup[a]
        if i == j:
            return -2
        return arrow_count(i, j, self.params) + arrow_count(j, i, self.params)

    def perm_degree(self, w: SignedPerm, tup: tuple) -> int:
        key = (w, tup)
        cached = self._perm_deg_cache.get(key)
        if cached is not None:
            return cached
        d = 0
        cur = tup
        for a in reversed(self.chosen(w)):
            d += self.deg_letter(a, cur)
            cur = self.act_letter(a, cur)
        self._perm_deg_cache[key] = d
        return d

    def word_degree(self, word: BasisWord) -> int:
        return 2 * sum(word.mono) + self.perm_degree(word.perm, word.tup)

    def left_tuple(self, word: BasisWord) -> tuple:
        key = (word.perm, word.tup)
        cached = self._left_tuple_cache.get(key)
        if cached is None:
            cached = self.act(word.perm, word.tup)
            self._left_tuple_cache[key] = cached
        return cached

    # -- primitive left multiplications ------------------------------------

    def _merge(self, out: NF, extra: NF, coeff: Scalar) -> None:
        F = self.field
        if coeff == F.zero:
            return
        for w, c in extra.items():
            nc = F.add(out.get(w, F.zero), F.mul(coeff, c))
            if nc == F.zero:
                out.pop(w, None)
            else:
                out[w] = nc

    def _shift_mono(self, nf: NF, mono: Mono) -> NF:
        if not any(mono):
            return dict(nf)
        return {BasisWord(_add_mono(w.mono, mono), w.perm, w.tup): c for w, c in nf.items()}

    def _poly_times_nf(self, poly: Poly, nf: NF) -> NF:
        F = self.field
        out: NF = {}
        for mono, pc in poly.items():
            self._merge(out, self._shift_mono(nf, mono), pc)
        return out

    def _divided_difference(self, mono: Mono, a: int) -> Poly:
        """(y^mono - swapped) / (y_{a+1} - y_a) for the swap at slots a, a+1.

        With exponents alpha at slot a and beta at slot a+1 the quotient is
        a sum of alpha-beta (or beta-alpha) monomials with coefficient -1
        (alpha > beta) or +1 (beta > alpha); equal exponents give zero.
        """
        F = self.field
        alpha, beta = mono[a - 1], mono[a]
        if alpha == beta:
            return {}
        out: Poly = {}
        lst = list(mono)
        if alpha > beta:
            coeff = F.neg(F.one)
            for t in range(alpha - beta):
                lst[a - 1], lst[a] = beta + t, alpha - 1 - t
                out[tuple(lst)] = coeff
        else:
            coeff = F.one
            for t in range(beta - alpha):
                lst[a - 1], lst[a] = alpha + t, beta - 1 - t
                out[tuple(lst)] = coeff
        return out

    def _letter_times_word(self, a: int, word: BasisWord) -> NF:
        """Normal form of psi_a . (basis word)."""
        F = self.field
        mono, w, i = word
        if a == 0:
            tmono, tcoeff, corr = self._commute_mono_letter0(mono, self.left_tuple(word))
            out = self._shift_mono(self._psi_perm(0, w, i), tmono)
            if tcoeff != F.one:
                out = {k: F.mul(tcoeff, c) for k, c in out.items()}
            if corr:
                base = {BasisWord(self.zero_mono, w, i): F.one}
                self._merge(out, self._poly_times_nf(corr, base), F.one)
            return out
        j = self.left_tuple(word)
        tmono = list(mono)
        tmono[a - 1], tmono[a] = tmono[a], tmono[a - 1]
        out = self._shift_mono(self._psi_perm(a, w, i), tuple(tmono))
        if j[a - 1] == j[a]:
            corr = self._divided_difference(mono, a)
            if corr:
                base = {BasisWord(self.zero_mono, w, i): F.one}
                self._merge(out, self._poly_times_nf(corr, base), F.one)
        return out

    def left_mul_letter(self, a: int, nf: NF) -> NF:
        F = self.field
        out: NF = {}
        for word, c in nf.items():
            self._merge(out, self._letter_times_word(a, word), c)
        return out

    def left_mul_y(self, k: int, nf: NF) -> NF:
        """Multiply by y_k (1-based) on the left."""
        ek = tuple(1 if t == k - 1 else 0 for t in range(self.n))
        return self._shift_mono(nf, ek)

    def left_mul_idem(self, j: tuple, nf: NF) -> NF:
        return {w: c for w, c in nf.items() if self.left_tuple(w) == j}

    # -- the braid-replay core ---------------------------------------------

    def _word_nf(self, letters: tuple[int, ...], i: tuple) -> NF:
        """Normal form of psi_{letters} e(i) for an arbitrary letter string."""
        nf: NF = {BasisWord(self.zero_mono, weyl.identity(self.n), i): self.field.one}
        for a in reversed(letters):
            nf = self.left_mul_letter(a, nf)
        return nf

    def _replay(
        self, src: tuple[int, ...], dst: tuple[int, ...], i: tuple
    ) -> list[tuple[int, Poly, tuple[int, ...], tuple[int, ...]]]:
        """Rewrite src into dst collecting (sign, poly, left, right) corrections.

        The invariant maintained is
            psi_src e(i) = psi_cur e(i) + sum sign . psi_left . poly . psi_right e(i).
        """
        corrections: list[tuple[int, Poly, tuple[int, ...], tuple[int, ...]]] = []
        cur = tuple(src)
        for mv in weyl.braid_path(tuple(src), tuple(dst), self.flavor):
            width = {"comm": 2, "sbraid": 3, "bbraid": 4, "dbraid": 3}[mv.kind]
            seg = cur[mv.pos : mv.pos + width]
            right = cur[mv.pos + width :]
            if mv.kind in ("sbraid", "dbraid"):
                jtup = self.act(weyl.word_to_perm(right, self.flavor, self.n), i)
                found = self._braid_correction(mv.kind, seg, jtup)
                if found is not None:
                    sign, poly = found
                    corrections.append((sign, poly, cur[: mv.pos], right))
            cur = weyl.apply_move(cur, mv)
        if cur != tuple(dst):  # pragma: no cover - braid_path contract
            raise RuntimeError("braid replay did not reach the target word")
        return corrections

    def _corrections_nf(
        self,
        corrections: list[tuple[int, Poly, tuple[int, ...], tuple[int, ...]]],
        i: tuple,
        extra_letter: int | None,
    ) -> NF:
        F = self.field
        out: NF = {}
        for sign, poly, left, right in corrections:
            elem = self._poly_times_nf(poly, self._word_nf(right, i))
            for a in reversed(left):
                elem = self.left_mul_letter(a, elem)
            if extra_letter is not None:
                elem = self.left_mul_letter(extra_letter, elem)
            self._merge(out, elem, F.one if sign > 0 else F.neg(F.one))
        return out

    def _psi_perm(self, a: int, w: SignedPerm, i: tuple) -> NF:
        """Normal form of psi_a . psi_{chosen(w)} e(i), memoized."""
        key = (a, w, i)
        cached = self._psi_perm_cache.get(key)
        if cached is not None:
            return cached
        F = self.field
        v = self.letter_perm(a) * w
        cw = self.chosen(w)
        cv = self.chosen(v)
        if len(cv) == len(cw) + 1:
            # ascent: (a,) + cw is a reduced word of v
            corrections = self._replay((a,) + cw, cv, i)
            out: NF = {BasisWord(self.zero_mono, v, i): F.one}
            self._merge(out, self._corrections_nf(corrections, i, None), F.one)
        elif len(cv) == len(cw) - 1:
            # descent: cw rewrites to (a,) + cv, then the square collapses
            corrections = self._replay(cw, (a,) + cv, i)
            j = self.act(v, i)
            poly = self._square_letter(a, j)
            out = {}
            if poly:
                base = {BasisWord(self.zero_mono, v, i): F.one}
                self._merge(out, self._poly_times_nf(poly, base), F.one)
            self._merge(out, self._corrections_nf(corrections, i, a), F.one)
        else:  # pragma: no cover - generators change length by exactly 1
            raise RuntimeError("generator changed length by a value other than 1")
        self._psi_perm_cache[key] = out
        return out

    def _square_letter(self, a: int, j: tuple) -> Poly:
        """Case polynomial of psi_a^2 e(j)."""
        F = self.field
        if a == 0:
            return self._square_poly_letter0(j)
        rel = arrow_relation(j[a - 1], j[a], self.params)
        e = lambda k: tuple(1 if t == k else 0 for t in range(self.n))
        one = F.one
        if rel is ArrowRelation.EQUAL:
            return {}
        if rel is ArrowRelation.NONE:
            return {self.zero_mono: one}
        if rel is ArrowRelation.RIGHT:
            return {e(a): one, e(a - 1): F.neg(one)}
        if rel is ArrowRelation.LEFT:
            return {e(a - 1): one, e(a): F.neg(one)}
        # both directions: (y_{a+1} - y_a)(y_a - y_{a+1}) = -(y_a - y_{a+1})^2
        two = F.of_int(2)
        out: Poly = {}
        lst = [0] * self.n
        lst[a - 1] = 2
        out[tuple(lst)] = F.neg(one)
        lst = [0] * self.n
        lst[a] = 2
        out[tuple(lst)] = F.neg(one)
        lst = [0] * self.n
        lst[a - 1] = 1
        lst[a] = 1
        out[tuple(lst)] = two
        return out

    # -- right multiplications ---------------------------------------------

    def word_times_y(self, word: BasisWord, k: int) -> NF:
        """Normal form of (basis word) . y_k."""
        key = (word.perm, word.tup, k)
        cached = self._right_y_cache.get(key)
        if cached is None:
            ek = tuple(1 if t == k - 1 else 0 for t in range(self.n))
            nf: NF = {BasisWord(ek, weyl.identity(self.n), word.tup): self.field.one}
            for a in reversed(self.chosen(word.perm)):
                nf = self.left_mul_letter(a, nf)
            self._right_y_cache[key] = cached = nf
        return self._shift_mono(cached, word.mono)

    def word_times_psi(self, word: BasisWord, a: int) -> NF:
        """Normal form of (basis word) . psi_a."""
        key = (word.perm, word.tup, a)
        cached = self._right_psi_cache.get(key)
        if cached is None:
            i2 = self.act_letter(a, word.tup)
            nf: NF = {BasisWord(self.zero_mono, self.letter_perm(a), i2): self.field.one}
            for b in reversed(self.chosen(word.perm)):
                nf = self.left_mul_letter(b, nf)
            self._right_psi_cache[key] = cached = nf
        return self._shift_mono(cached, word.mono)

    # -- public element layer ----------------------------------------------

    def element(self, nf: NF | None = None) -> "Element":
        return Element(self, dict(nf or {}))

    def idempotent(self, i) -> "Element":
        i = tuple(i)
        if i not in self.tuple_set:
            raise ValueError(f"tuple {i} is not in the orbit")
        return self.element({BasisWord(self.zero_mono, weyl.identity(self.n), i): self.field.one})

    def unit(self) -> "Element":
        out: NF = {}
        for i in self.tuples:
            out[BasisWord(self.zero_mono, weyl.identity(self.n), i)] = self.field.one
        return self.element(out)

    def y(self, k: int) -> "Element":
        if not 1 <= k <= self.n:
            raise ValueError(f"y index {k} out of range")
        ek = tuple(1 if t == k - 1 else 0 for t in range(self.n))
        out: NF = {}
        for i in self.tuples:
            out[BasisWord(ek, weyl.identity(self.n), i)] = self.field.one
        return self.element(out)

    def psi(self, a: int) -> "Element":
        if a not in self.letters():
            raise ValueError(f"psi index {a} out of range")
        perm = self.letter_perm(a)
        out: NF = {}
        for i in self.tuples:
            out[BasisWord(self.zero_mono, perm, i)] = self.field.one
        return self.element(out)

    def multiply(self, A: NF, B: NF) -> NF:
        F = self.field
        out: NF = {}
        for wa, ca in A.items():
            letters = self.chosen(wa.perm)
            for wb, cb in B.items():
                if self.left_tuple(wb) != wa.tup:
                    continue
                x: NF = {wb: F.mul(ca, cb)}
                for a in reversed(letters):
                    x = self.left_mul_letter(a, x)
                x = self._shift_mono(x, wa.mono)
                self._merge(out, x, F.one)
        return out

    def group(self) -> list[SignedPerm]:
        if self._group is None:
            self._group = weyl.all_elements(self.n, self.flavor)
        return self._group

    def basis_words_at_degree(self, d: int) -> list[BasisWord]:
        """All spanning words of one degree, in a fixed canonical order."""
        out: list[BasisWord] = []
        for w in self.group():
            for i in self.tuples:
                rem = d - self.perm_degree(w, i)
                if rem < 0 or rem % 2:
                    continue
                for mono in compositions(rem // 2, self.n):
                    out.append(BasisWord(mono, w, i))
        out.sort(key=word_sort_key)
        return out

    def psi_degree_range(self) -> tuple[int, int]:
        degs = [self.perm_degree(w, i) for w in self.group() for i in self.tuples]
        return min(degs), max(degs)


class Element:
    """An exact algebra element in normal form."""

    __slots__ = ("engine", "terms")

    def __init__(self, engine: RewriteEngine, terms: NF) -> None:
        self.engine = engine
        F = engine.field
        self.terms = {w: c for w, c in terms.items() if c != F.zero}

    def __add__(self, other: "Element") -> "Element":
        out = dict(self.terms)
        self.engine._merge(out, other.terms, self.engine.field.one)
        return Element(self.engine, out)

    def __sub__(self, other: "Element") -> "Element":
        out = dict(self.terms)
        self.engine._merge(out, other.terms, self.engine.field.neg(self.engine.field.one))
        return Element(self.engine, out)

    def __neg__(self) -> "Element":
        F = self.engine.field
        return Element(self.engine, {w: F.neg(c) for w, c in self.terms.items()})

    def __mul__(self, other: "Element") -> "Element":
        return Element(self.engine, self.engine.multiply(self.terms, other.terms))

    def scale(self, c: Scalar) -> "Element":
        F = self.engine.field
        return Element(self.engine, {w: F.mul(c, x) for w, x in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.engine is other.engine and self.terms == other.terms

    def __hash__(self):
        raise TypeError("algebra elements are mutable aggregates; not hashable")

    def is_zero(self) -> bool:
        return not self.terms

    def degree_slices(self) -> dict[int, NF]:
        out: dict[int, NF] = {}
        for w, c in self.terms.items():
            out.setdefault(self.engine.word_degree(w), {})[w] = c
        return out

    def degrees(self) -> list[int]:
        return sorted(self.degree_slices())

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        F = self.engine.field
        bits = []
        for w in sorted(self.terms, key=word_sort_key):
            c = self.terms[w]
            mono = "".join(
                f"y{k+1}^{e}" if e > 1 else (f"y{k+1}" if e == 1 else "")
                for k, e in enumerate(w.mono)
            )
            letters = "".join(f"s{a}" for a in self.engine.chosen(w.perm))
            tup = ",".join(F.fmt(x) for x in w.tup)
            bits.append(f"{F.fmt(c)}*{mono}{letters}e({tup})")
        return " + ".join(bits)


if __name__ == "__main__":  # pragma: no cover
    import doctest

    doctest.testmod()
