"""Exact incremental row reduction over the supported coefficient fields.

A :class:`RowSpace` maintains a reduced row echelon basis of the span of
the vectors inserted so far.  Vectors are sparse dicts from integer column
indices to nonzero scalars; callers map whatever structured keys they have
(basis words, probe coordinates) to dense integer indices themselves.

Reduced row echelon form is unique for a given row space, so everything a
caller derives from it — pivot columns, residues of further vectors, and
hence quotient coordinates — is independent of insertion order.  Over the
rationals each stored row is scaled to integer entries with content 1 and
positive pivot; over a prime field rows are monic at the pivot.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .scalars import Field, Rationals, Scalar

__all__ = ["RowSpace"]

Vec = dict[int, Scalar]


class RowSpace:
    """An exact row space in reduced row echelon form.

    >>> rs = RowSpace(Rationals())
    >>> rs.insert({0: Fraction(2), 1: Fraction(4)})
    True
    >>> rs.insert({0: Fraction(1), 1: Fraction(2)})
    False
    >>> rs.rank
    1
    """

    def __init__(self, field: Field) -> None:
        self.field = field
        # pivot column -> row (normalized, pivot coefficient 1 up to scaling)
        self.rows: dict[int, Vec] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def _normalize(self, vec: Vec) -> Vec:
        F = self.field
        pivot = min(vec)
        lead = vec[pivot]
        if isinstance(F, Rationals):
            denom_lcm = 1
            for c in vec.values():
                denom_lcm = denom_lcm * c.denominator // gcd(denom_lcm, c.denominator)
            ints = {k: c * denom_lcm for k, c in vec.items()}
            content = 0
            for c in ints.values():
                content = gcd(content, int(c))
            if ints[pivot] < 0:
                content = -content
            return {k: Fraction(int(c) // content) for k, c in ints.items()}
        inv = F.inv(lead)
        return {k: F.mul(inv, c) for k, c in vec.items()}

    def reduce(self, vec: Vec) -> Vec:
        """Residue of a vector modulo the row space (canonical by RREF)."""
        F = self.field
        out = {k: c for k, c in vec.items() if c != F.zero}
        for pivot in sorted(k for k in out if k in self.rows):
            c = out.get(pivot)
            if c is None or c == F.zero:
                continue
            row = self.rows[pivot]
            factor = F.mul(c, F.inv(row[pivot]))
            for k, rc in row.items():
                nc = F.sub(out.get(k, F.zero), F.mul(factor, rc))
                if nc == F.zero:
                    out.pop(k, None)
                else:
                    out[k] = nc
        return out

    def insert(self, vec: Vec) -> bool:
        """Add a vector to the span.  Returns True when the rank grew."""
        residue = self.reduce(vec)
        if not residue:
            return False
        row = self._normalize(residue)
        pivot = min(row)
        F = self.field
        # Back-eliminate the new pivot from existing rows to keep RREF.
        for p, old in list(self.rows.items()):
            c = old.get(pivot)
            if c is None or c == F.zero:
                continue
            factor = F.mul(c, F.inv(row[pivot]))
            merged = dict(old)
            for k, rc in row.items():
                nc = F.sub(merged.get(k, F.zero), F.mul(factor, rc))
                if nc == F.zero:
                    merged.pop(k, None)
                else:
                    merged[k] = nc
            self.rows[p] = self._normalize(merged) if merged else merged
        self.rows[pivot] = row
        return True

    def contains(self, vec: Vec) -> bool:
        return not self.reduce(vec)

    def basis_rows(self) -> list[Vec]:
        """The RREF rows ordered by pivot column."""
        return [dict(self.rows[p]) for p in sorted(self.rows)]


if __name__ == "__main__":  # pragma: no cover
    import doctest

    doctest.testmod()
