"""Exact scalar arithmetic, deformation parameters, and truncated power series.

Coefficients live in one of two domains, both exact:

* the rationals (``fractions.Fraction``), used when the deformation parameter
  q has infinite multiplicative order;
* a prime field F_ell with ell an odd prime, used when q is a root of unity.

Characteristic 2 is excluded throughout: the sign-flip symmetry of the
algebras is split into +1/-1 eigenspaces, which needs 2 to be invertible.

The truncated-series tools exist for the change of coordinates between a
multiplicative spectral parameter X and an additive nilpotent one y.  The
series ``f(z) = z + z/(1-z) = 2z + z^2 + z^3 + ...`` has a compositional
inverse ``g`` (so f(g(z)) = g(f(z)) = z); writing h = 1 - g, the defining
equation transforms into 1/h - h = z, from which the reflection identity

    1/(1 - g(z)) = 1 - g(-z)

follows (both sides solve x - 1/x = z with constant term 1).  That identity
is what makes the coordinate change commute with inverting X, and it is
re-verified to high order in the test suite rather than assumed.

Field elements are plain ``Fraction`` or plain ``int`` values; a small
strategy object carries the arithmetic.  This keeps elements hashable and
orderable, which the rest of the package relies on for canonical sorting.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

__all__ = [
    "Rationals",
    "PrimeField",
    "Field",
    "make_field",
    "Params",
    "TruncSeries",
    "series_f",
    "series_comp_inverse",
    "eval_series_on_nilpotent",
]

Scalar = Union[Fraction, int]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Rationals:
    """Exact rational arithmetic; elements are ``Fraction`` values."""

    characteristic = 0

    def __init__(self) -> None:
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def of_int(self, k: int) -> Fraction:
        return Fraction(k)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / Fraction(a)

    def pow(self, a, k: int):
        if k >= 0:
            return a**k
        return self.inv(a) ** (-k)

    def parse(self, text: str) -> Fraction:
        return Fraction(text.strip())

    def fmt(self, a) -> str:
        return str(a)

    def __eq__(self, other) -> bool:
        return isinstance(other, Rationals)

    def __hash__(self) -> int:
        return hash("Q")

    def __repr__(self) -> str:
        return "Rationals()"


class PrimeField:
    """F_ell for an odd prime ell; elements are ints in ``range(ell)``."""

    def __init__(self, ell: int) -> None:
        if not _is_prime(ell):
            raise ValueError(f"{ell} is not prime")
        if ell == 2:
            raise ValueError("characteristic 2 is not supported")
        self.ell = ell
        self.characteristic = ell
        self.zero = 0
        self.one = 1

    def of_int(self, k: int) -> int:
        return k % self.ell

    def add(self, a, b):
        return (a + b) % self.ell

    def sub(self, a, b):
        return (a - b) % self.ell

    def mul(self, a, b):
        return (a * b) % self.ell

    def neg(self, a):
        return (-a) % self.ell

    def inv(self, a):
        if a % self.ell == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, -1, self.ell)

    def pow(self, a, k: int):
        return pow(a, k, self.ell) if k >= 0 else pow(self.inv(a), -k, self.ell)

    def parse(self, text: str) -> int:
        text = text.strip()
        if "/" in text:
            num, den = text.split("/")
            return self.mul(self.of_int(int(num)), self.inv(self.of_int(int(den))))
        return self.of_int(int(text))

    def fmt(self, a) -> str:
        return str(a % self.ell)

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.ell == self.ell

    def __hash__(self) -> int:
        return hash(("F", self.ell))

    def __repr__(self) -> str:
        return f"PrimeField({self.ell})"


Field = Union[Rationals, PrimeField]


def make_field(spec: str | int) -> Field:
    """Build a field from ``"Q"`` / ``"rationals"`` or a prime ``ell``.

    >>> make_field("Q")
    Rationals()
    >>> make_field(13)
    PrimeField(13)
    """
    if isinstance(spec, str):
        s = spec.strip().upper()
        if s in ("Q", "QQ", "RATIONALS"):
            return Rationals()
        return PrimeField(int(s))
    return PrimeField(spec)


@dataclass(frozen=True)
class Params:
    """The pair (p, q) of deformation parameters over a fixed field.

    p is required to square to 1 (so p = 1 or p = -1); q must be nonzero
    with q^2 != 1, otherwise the four-way adjacency classification on the
    residue set degenerates.
    """

    field: Field
    p: Scalar
    q: Scalar

    def __post_init__(self) -> None:
        F = self.field
        if F.mul(self.p, self.p) != F.one:
            raise ValueError("p^2 must equal 1")
        if self.q == F.zero:
            raise ValueError("q must be nonzero")
        if F.mul(self.q, self.q) == F.one:
            raise ValueError("q^2 must differ from 1")

    @property
    def qsq(self) -> Scalar:
        return self.field.mul(self.q, self.q)

    def qsq_order(self) -> int | None:
        """Multiplicative order e of q^2, or None when infinite (over Q)."""
        F = self.field
        if isinstance(F, Rationals):
            return None
        x = self.qsq
        e = 1
        while x != F.one:
            x = F.mul(x, self.qsq)
            e += 1
            if e > F.characteristic:
                raise RuntimeError("order search overran the group")
        return e


class TruncSeries:
    """A truncated formal power series in one or two variables.

    Coefficients are stored sparsely as ``{exponent_tuple: scalar}`` with
    total degree at most ``order``.  Arithmetic truncates at the smaller of
    the two operands' orders, so each series knows how far it can be trusted.
    """

    __slots__ = ("field", "nvars", "order", "coeffs")

    def __init__(self, field: Field, nvars: int, order: int, coeffs: dict) -> None:
        if nvars not in (1, 2):
            raise ValueError("only 1 or 2 variables are supported")
        if order < 0:
            raise ValueError("order must be >= 0")
        self.field = field
        self.nvars = nvars
        self.order = order
        self.coeffs = {
            e: c for e, c in coeffs.items() if c != field.zero and sum(e) <= order
        }

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def const(cls, field: Field, value, nvars: int, order: int) -> "TruncSeries":
        key = (0,) * nvars
        return cls(field, nvars, order, {key: value})

    @classmethod
    def zero(cls, field: Field, nvars: int, order: int) -> "TruncSeries":
        return cls(field, nvars, order, {})

    @classmethod
    def var(cls, field: Field, index: int, nvars: int, order: int) -> "TruncSeries":
        key = tuple(1 if i == index else 0 for i in range(nvars))
        return cls(field, nvars, order, {key: field.one})

    # ------------------------------------------------------------------
    # ring operations

    def _check(self, other: "TruncSeries") -> int:
        if self.field != other.field or self.nvars != other.nvars:
            raise ValueError("series domain mismatch")
        return min(self.order, other.order)

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        order = self._check(other)
        F = self.field
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = F.add(out.get(e, F.zero), c)
        return TruncSeries(F, self.nvars, order, out)

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        return self + (-other)

    def __neg__(self) -> "TruncSeries":
        F = self.field
        return TruncSeries(
            F, self.nvars, self.order, {e: F.neg(c) for e, c in self.coeffs.items()}
        )

    def scale(self, scalar) -> "TruncSeries":
        F = self.field
        return TruncSeries(
            F,
            self.nvars,
            self.order,
            {e: F.mul(scalar, c) for e, c in self.coeffs.items()},
        )

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        order = self._check(other)
        F = self.field
        out: dict = {}
        for e1, c1 in self.coeffs.items():
            d1 = sum(e1)
            for e2, c2 in other.coeffs.items():
                if d1 + sum(e2) > order:
                    continue
                key = tuple(a + b for a, b in zip(e1, e2))
                prev = out.get(key, F.zero)
                out[key] = F.add(prev, F.mul(c1, c2))
        return TruncSeries(F, self.nvars, order, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        # compare up to the shared trustworthy order
        order = min(self.order, other.order)
        a = {e: c for e, c in self.coeffs.items() if sum(e) <= order}
        b = {e: c for e, c in other.coeffs.items() if sum(e) <= order}
        return a == b and self.nvars == other.nvars and self.field == other.field

    def __hash__(self):
        raise TypeError("TruncSeries is not hashable")

    # ------------------------------------------------------------------
    # structural helpers

    def coefficient(self, *exps: int):
        return self.coeffs.get(tuple(exps), self.field.zero)

    @property
    def constant_term(self):
        return self.coeffs.get((0,) * self.nvars, self.field.zero)

    def is_zero(self) -> bool:
        return not self.coeffs

    def truncate(self, order: int) -> "TruncSeries":
        return TruncSeries(self.field, self.nvars, min(order, self.order), self.coeffs)

    def invert(self) -> "TruncSeries":
        """Multiplicative inverse; requires a nonzero constant term."""
        F = self.field
        c0 = self.constant_term
        if c0 == F.zero:
            raise ValueError("series with zero constant term has no inverse")
        c0inv = F.inv(c0)
        # 1/(c0 (1+u)) = c0^{-1} sum (-u)^k  with u = s/c0 - 1 nilpotent mod order
        u = self.scale(c0inv) - TruncSeries.const(F, F.one, self.nvars, self.order)
        acc = TruncSeries.const(F, F.one, self.nvars, self.order)
        power = TruncSeries.const(F, F.one, self.nvars, self.order)
        for _ in range(self.order):
            power = power * u
            if power.is_zero():
                break
            acc = acc + power.scale(F.neg(F.one) if _ % 2 == 0 else F.one)
        return acc.scale(c0inv)

    def compose(self, inner: "TruncSeries") -> "TruncSeries":
        """Substitute ``inner`` (constant term 0) into a one-variable series."""
        if self.nvars != 1:
            raise ValueError("composition is defined for one-variable series")
        if inner.constant_term != inner.field.zero:
            raise ValueError("inner series must have zero constant term")
        F = self.field
        order = min(self.order, inner.order)
        acc = TruncSeries.const(F, self.coefficient(0), inner.nvars, order)
        power = TruncSeries.const(F, F.one, inner.nvars, order)
        for k in range(1, order + 1):
            power = power * inner
            if power.is_zero():
                break
            ck = self.coefficient(k)
            if ck != F.zero:
                acc = acc + power.scale(ck)
        return acc

    # variable substitutions used by the two-variable twist conditions

    def neg_var(self) -> "TruncSeries":
        """z -> -z (one variable)."""
        if self.nvars != 1:
            raise ValueError("neg_var applies to one-variable series")
        F = self.field
        out = {
            e: (c if e[0] % 2 == 0 else F.neg(c)) for e, c in self.coeffs.items()
        }
        return TruncSeries(F, 1, self.order, out)

    def swap_vars(self) -> "TruncSeries":
        """(z, z') -> (z', z)."""
        if self.nvars != 2:
            raise ValueError("swap_vars applies to two-variable series")
        return TruncSeries(
            self.field, 2, self.order, {(b, a): c for (a, b), c in self.coeffs.items()}
        )

    def neg_swap_vars(self) -> "TruncSeries":
        """(z, z') -> (-z', -z) — the sign-flip twist on an adjacent pair."""
        if self.nvars != 2:
            raise ValueError("neg_swap_vars applies to two-variable series")
        F = self.field
        out = {}
        for (a, b), c in self.coeffs.items():
            out[(b, a)] = c if (a + b) % 2 == 0 else F.neg(c)
        return TruncSeries(F, 2, self.order, out)

    def lift_to_pair(self, slot: int) -> "TruncSeries":
        """View a one-variable series as a two-variable one in slot 0 or 1."""
        if self.nvars != 1:
            raise ValueError("lift_to_pair applies to one-variable series")
        if slot == 0:
            out = {(e[0], 0): c for e, c in self.coeffs.items()}
        else:
            out = {(0, e[0]): c for e, c in self.coeffs.items()}
        return TruncSeries(self.field, 2, self.order, out)

    def divided_difference(self) -> "TruncSeries":
        """(s(z') - s(z)) / (z' - z) as an exact two-variable series.

        Uses the telescoping identity (z'^k - z^k)/(z' - z) = sum z^t z'^{k-1-t};
        no division is performed, so the result is exact to ``order - 1``.
        """
        if self.nvars != 1:
            raise ValueError("divided_difference applies to one-variable series")
        F = self.field
        out: dict = {}
        for (k,), c in self.coeffs.items():
            for t in range(k):
                key = (t, k - 1 - t)
                out[key] = F.add(out.get(key, F.zero), c)
        return TruncSeries(F, 2, max(self.order - 1, 0), out)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "TruncSeries(0)"
        names = ("z", "w")[: self.nvars]
        bits = []
        for e in sorted(self.coeffs, key=lambda t: (sum(t), t)):
            c = self.coeffs[e]
            mono = "*".join(
                f"{names[i]}^{k}" if k > 1 else names[i]
                for i, k in enumerate(e)
                if k
            )
            bits.append(f"{self.field.fmt(c)}·{mono}" if mono else self.field.fmt(c))
        return "TruncSeries(" + " + ".join(bits) + f" + O^{self.order + 1})"


def series_f(field: Field, order: int) -> TruncSeries:
    """The coordinate-change series f(z) = z + z/(1-z) = 2z + z^2 + z^3 + ...

    >>> s = series_f(Rationals(), 4)
    >>> [s.coefficient(k) for k in range(5)]
    [Fraction(0, 1), Fraction(2, 1), Fraction(1, 1), Fraction(1, 1), Fraction(1, 1)]
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    F = field
    coeffs = {(k,): F.one for k in range(2, order + 1)}
    coeffs[(1,)] = F.of_int(2)
    return TruncSeries(F, 1, order, coeffs)


def series_comp_inverse(s: TruncSeries) -> TruncSeries:
    """Compositional inverse of a one-variable series with s(0)=0, s'(0) != 0.

    Solved degree by degree: once g is known below degree d, the degree-d
    coefficient of s(g + b z^d) is (degree-d coefficient of s(g)) + s'(0)·b,
    so b is forced.  The defining property s(g) = g(s) = z is re-checked by
    the caller's tests via substitution, not trusted from this construction.
    """
    if s.nvars != 1:
        raise ValueError("compositional inverse needs a one-variable series")
    F = s.field
    if s.constant_term != F.zero:
        raise ValueError("series must have zero constant term")
    a1 = s.coefficient(1)
    if a1 == F.zero:
        raise ValueError("series with zero linear term has no compositional inverse")
    a1_inv = F.inv(a1)
    order = s.order
    g = {(1,): a1_inv}
    for d in range(2, order + 1):
        partial = TruncSeries(F, 1, d, g)
        residue = s.truncate(d).compose(partial).coefficient(d)
        b = F.neg(F.mul(residue, a1_inv))
        if b != F.zero:
            g[(d,)] = b
    return TruncSeries(F, 1, order, g)


def eval_series_on_nilpotent(s: TruncSeries, args, bounds, one):
    """Evaluate a truncated series on commuting nilpotent algebra elements.

    ``args`` is a tuple of algebra elements (one per series variable), each
    satisfying args[i]**bounds[i] == 0; ``one`` is the algebra unit (or the
    relevant idempotent, when evaluating inside a corner of the algebra).
    Elements must support ``+``, ``*`` and ``.scale(scalar)``.

    The result is an exact finite sum: every monomial with an exponent at or
    above the corresponding bound vanishes and is skipped.  A truncation
    order below the largest potentially-surviving total degree would lose
    terms silently, so it is rejected.
    """
    if len(args) != s.nvars or len(bounds) != s.nvars:
        raise ValueError("argument count must match the series variables")
    needed = sum(max(b - 1, 0) for b in bounds)
    if s.order < needed:
        raise ValueError(
            f"truncation order {s.order} is below the nilpotency budget {needed}"
        )
    F = s.field
    # precompute powers below each bound
    powers = []
    for a, b in zip(args, bounds):
        row = [one]
        for _ in range(1, max(b, 1)):
            row.append(row[-1] * a)
        powers.append(row)
    result = None
    for exps in sorted(s.coeffs, key=lambda t: (sum(t), t)):
        if any(e >= b for e, b in zip(exps, bounds)):
            continue
        term = one.scale(s.coeffs[exps])
        for i, e in enumerate(exps):
            if e:
                term = term * powers[i][e]
        result = term if result is None else result + term
    if result is None:
        result = one.scale(F.zero)
    return result


if __name__ == "__main__":
    import doctest

    doctest.testmod()
