"""Fields, parameter validation, truncated series, and the coordinate change."""

from fractions import Fraction

import pytest

from quiverhecke.scalars import (
    Params,
    PrimeField,
    Rationals,
    TruncSeries,
    eval_series_on_nilpotent,
    make_field,
    series_comp_inverse,
    series_f,
)


# ---------------------------------------------------------------------------
# Fields
# ---------------------------------------------------------------------------


def test_rationals_arithmetic():
    F = Rationals()
    assert F.characteristic == 0
    a, b = F.of_int(3), F.parse("-7/2")
    assert F.add(a, b) == Fraction(-1, 2)
    assert F.mul(a, b) == Fraction(-21, 2)
    assert F.neg(b) == Fraction(7, 2)
    assert F.inv(b) == Fraction(-2, 7)
    assert F.sub(a, b) == Fraction(13, 2)
    assert F.pow(b, 2) == Fraction(49, 4)
    assert F.fmt(b) == "-7/2"
    with pytest.raises(ZeroDivisionError):
        F.inv(F.zero)


def test_prime_field_arithmetic():
    F = PrimeField(13)
    assert F.characteristic == 13
    assert F.of_int(-1) == 12
    assert F.add(F.of_int(9), F.of_int(7)) == 3
    assert F.mul(F.of_int(9), F.of_int(7)) == 11  # 63 = 4*13 + 11
    # Fermat inverse: 5 * 8 = 40 = 3*13 + 1.
    assert F.inv(F.of_int(5)) == 8
    assert F.mul(F.of_int(5), F.inv(F.of_int(5))) == F.one
    assert F.parse("-1") == 12
    with pytest.raises(ZeroDivisionError):
        F.inv(F.zero)


def test_prime_field_rejects_bad_modulus():
    for bad in (0, 1, 2, 9, 15):
        with pytest.raises(ValueError):
            PrimeField(bad)


def test_make_field():
    assert isinstance(make_field("Q"), Rationals)
    assert isinstance(make_field("rationals"), Rationals)
    F = make_field(13)
    assert isinstance(F, PrimeField)
    assert F.characteristic == 13
    with pytest.raises(ValueError):
        make_field("nonsense")


def test_field_equality_and_hash():
    assert PrimeField(13) == PrimeField(13)
    assert PrimeField(13) != PrimeField(7)
    assert Rationals() == Rationals()
    assert hash(PrimeField(13)) == hash(PrimeField(13))


# ---------------------------------------------------------------------------
# Params
# ---------------------------------------------------------------------------


def test_params_validation():
    F = PrimeField(13)
    Params(F, F.of_int(1), F.of_int(2))
    Params(F, F.of_int(-1), F.of_int(2))
    with pytest.raises(ValueError):
        Params(F, F.of_int(2), F.of_int(2))  # 2^2 != 1
    with pytest.raises(ValueError):
        Params(F, F.one, F.zero)  # q = 0
    with pytest.raises(ValueError):
        Params(F, F.one, F.of_int(-1))  # q^2 = 1
    with pytest.raises(ValueError):
        Params(F, F.one, F.one)


def test_params_qsq_order():
    F = PrimeField(13)
    assert Params(F, F.one, F.of_int(2)).qsq_order() == 6  # ord(4) mod 13
    assert Params(F, F.one, F.of_int(5)).qsq_order() == 2  # 5^2 = -1
    Q = Rationals()
    assert Params(Q, Q.one, Q.of_int(2)).qsq_order() is None


# ---------------------------------------------------------------------------
# Truncated series arithmetic
# ---------------------------------------------------------------------------


def test_series_ring_ops():
    F = Rationals()
    order = 8
    z = TruncSeries.var(F, 0, 1, order)
    one = TruncSeries.const(F, F.one, 1, order)
    s = one + z  # 1 + z
    t = one - z
    prod = s * t
    assert prod.coefficient(0) == F.one
    assert prod.coefficient(1) == F.zero
    assert prod.coefficient(2) == Fraction(-1)
    assert (s + (-s)).is_zero()
    assert s.scale(F.of_int(3)).coefficient(1) == Fraction(3)
    assert s.constant_term == F.one
    assert TruncSeries.zero(F, 1, order).is_zero()


def test_series_truncation_discipline():
    F = Rationals()
    z = TruncSeries.var(F, 0, 1, 6)
    w = TruncSeries.var(F, 0, 1, 4)
    # Mixed truncation orders combine at the coarser one.
    assert (z + w).order == 4
    assert z.truncate(4) + w == w.scale(F.of_int(2))
    with pytest.raises(ValueError):
        _ = z + TruncSeries.var(F, 0, 2, 6)  # variable-count mismatch
    with pytest.raises(ValueError):
        _ = z + TruncSeries.var(PrimeField(13), 0, 1, 6)  # field mismatch
    p = z * z * z  # z^3 at order 6
    assert p.coefficient(3) == F.one
    assert p.order == 6


def test_series_invert_geometric():
    F = Rationals()
    order = 7
    z = TruncSeries.var(F, 0, 1, order)
    one = TruncSeries.const(F, F.one, 1, order)
    inv = (one - z).invert()
    for k in range(order + 1):
        assert inv.coefficient(k) == F.one  # 1/(1-z) = sum z^k
    assert ((one - z) * inv) == one
    with pytest.raises(ValueError):
        z.invert()  # zero constant term is not invertible


def test_series_compose():
    F = Rationals()
    order = 6
    z = TruncSeries.var(F, 0, 1, order)
    one = TruncSeries.const(F, F.one, 1, order)
    # (1/(1-z)) o (z^2) = 1 + z^2 + z^4 + z^6
    inv = (one - z).invert()
    comp = inv.compose(z * z)
    for k in range(order + 1):
        assert comp.coefficient(k) == (F.one if k % 2 == 0 else F.zero)
    with pytest.raises(ValueError):
        inv.compose(one)  # inner series needs zero constant term


def test_series_variable_symmetries():
    F = Rationals()
    order = 5
    # One-variable sign flip.
    t = TruncSeries.var(F, 0, 1, order)
    u = t + t * t
    assert u.neg_var().coefficient(1) == Fraction(-1)
    assert u.neg_var().coefficient(2) == F.one
    assert u.neg_var().neg_var() == u
    # Two-variable swap and sign-swap.
    z = TruncSeries.var(F, 0, 2, order)
    w = TruncSeries.var(F, 1, 2, order)
    s = z + w * w
    assert s.swap_vars() == w + z * z
    # (z, z') -> (-z', -z): the linear term flips sign, the square does not.
    assert s.neg_swap_vars() == (-w) + z * z
    assert s.swap_vars().swap_vars() == s
    assert s.neg_swap_vars().neg_swap_vars() == s
    with pytest.raises(ValueError):
        s.neg_var()
    with pytest.raises(ValueError):
        u.swap_vars()


def test_series_lift_and_divided_difference():
    F = Rationals()
    order = 6
    z = TruncSeries.var(F, 0, 1, order)
    s = z * z * z  # z^3
    lifted0 = s.lift_to_pair(0)
    assert lifted0.coefficient(3, 0) == F.one
    lifted1 = s.lift_to_pair(1)
    assert lifted1.coefficient(0, 3) == F.one
    # (z'^3 - z^3)/(z' - z) = z^2 + z z' + z'^2
    dd = s.divided_difference()
    assert dd.coefficient(2, 0) == F.one
    assert dd.coefficient(1, 1) == F.one
    assert dd.coefficient(0, 2) == F.one
    assert dd.coefficient(3, 0) == F.zero
    # Exactness identity: (z' - z) * dd == s(z') - s(z), checked exactly.
    zp = TruncSeries.var(F, 1, 2, dd.order)
    zz = TruncSeries.var(F, 0, 2, dd.order)
    lhs = (zp - zz) * dd
    rhs = (s.lift_to_pair(1) - s.lift_to_pair(0)).truncate(dd.order)
    assert lhs == rhs


def test_divided_difference_random_property(rng):
    F = PrimeField(13)
    order = 9
    for _ in range(25):
        coeffs = {(k,): F.of_int(rng.randrange(13)) for k in range(1, order + 1)}
        s = TruncSeries(F, 1, order, {m: c for m, c in coeffs.items() if c != F.zero})
        dd = s.divided_difference()
        zp = TruncSeries.var(F, 1, 2, dd.order)
        zz = TruncSeries.var(F, 0, 2, dd.order)
        assert (zp - zz) * dd == (s.lift_to_pair(1) - s.lift_to_pair(0)).truncate(dd.order)
        # The divided difference of a series is symmetric in its variables.
        assert dd.swap_vars() == dd


# ---------------------------------------------------------------------------
# The coordinate-change series and its compositional inverse
# ---------------------------------------------------------------------------


def _oracle_inverse_coeffs(order: int) -> list[Fraction]:
    """Triangular solve for the inverse of 2z + z^2 + ... using raw Fractions.

    Completely independent of TruncSeries: polynomials are coefficient
    lists and composition is an explicit convolution.
    """
    f = [Fraction(0), Fraction(2)] + [Fraction(1)] * (order - 1)
    g = [Fraction(0)] * (order + 1)
    g[1] = Fraction(1, 2)
    for d in range(2, order + 1):
        total = Fraction(0)
        for k in range(1, d + 1):
            if f[k] == 0:
                continue
            cur = [Fraction(1)] + [Fraction(0)] * d
            for _ in range(k):
                nxt = [Fraction(0)] * (d + 1)
                for a in range(d + 1):
                    if cur[a] == 0:
                        continue
                    for b in range(1, d - a + 1):
                        nxt[a + b] += cur[a] * g[b]
                cur = nxt
            total += f[k] * cur[d]
        g[d] = -total / 2
    return g


def test_series_f_coefficients():
    F = Rationals()
    s = series_f(F, 6)
    assert s.coefficient(0) == F.zero
    assert s.coefficient(1) == Fraction(2)
    for k in range(2, 7):
        assert s.coefficient(k) == F.one
    with pytest.raises(ValueError):
        series_f(F, 0)


def test_comp_inverse_frozen_values():
    F = Rationals()
    g = series_comp_inverse(series_f(F, 8))
    frozen = [
        Fraction(1, 2),
        Fraction(-1, 8),
        Fraction(0),
        Fraction(1, 128),
        Fraction(0),
        Fraction(-1, 1024),
        Fraction(0),
        Fraction(5, 32768),
    ]
    assert [g.coefficient(k) for k in range(1, 9)] == frozen
    oracle = _oracle_inverse_coeffs(8)
    assert [g.coefficient(k) for k in range(1, 9)] == oracle[1:]


def test_comp_inverse_two_sided():
    for field in (Rationals(), PrimeField(13), PrimeField(5)):
        order = 9
        f = series_f(field, order)
        g = series_comp_inverse(f)
        z = TruncSeries.var(field, 0, 1, order)
        assert f.compose(g) == z
        assert g.compose(f) == z


def test_comp_inverse_rejects_bad_input():
    F = Rationals()
    one = TruncSeries.const(F, F.one, 1, 5)
    with pytest.raises(ValueError):
        series_comp_inverse(one)  # nonzero constant term
    z2 = TruncSeries.var(F, 0, 1, 5)
    with pytest.raises(ValueError):
        series_comp_inverse(z2 * z2)  # zero linear term


def test_comp_inverse_random_series(rng):
    F = PrimeField(13)
    order = 8
    for _ in range(20):
        coeffs = {(1,): F.of_int(rng.randrange(1, 13))}
        for k in range(2, order + 1):
            c = F.of_int(rng.randrange(13))
            if c != F.zero:
                coeffs[(k,)] = c
        s = TruncSeries(F, 1, order, coeffs)
        g = series_comp_inverse(s)
        z = TruncSeries.var(F, 0, 1, order)
        assert s.compose(g) == z
        assert g.compose(s) == z


# ---------------------------------------------------------------------------
# Evaluating series on nilpotent elements
# ---------------------------------------------------------------------------


class _NilPoly:
    """Tiny truncated polynomial algebra K[t]/(t^bound) for oracle use."""

    def __init__(self, field, bound, coeffs):
        self.field = field
        self.bound = bound
        self.coeffs = {k: c for k, c in coeffs.items() if k < bound and c != field.zero}

    def __add__(self, other):
        F = self.field
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            s = F.add(out.get(k, F.zero), c)
            if s == F.zero:
                out.pop(k, None)
            else:
                out[k] = s
        return _NilPoly(F, self.bound, out)

    def __mul__(self, other):
        F = self.field
        out: dict = {}
        for a, c in self.coeffs.items():
            for b, d in other.coeffs.items():
                if a + b >= self.bound:
                    continue
                k = a + b
                s = F.add(out.get(k, F.zero), F.mul(c, d))
                out[k] = s
        return _NilPoly(F, self.bound, out)

    def scale(self, c):
        F = self.field
        return _NilPoly(F, self.bound, {k: F.mul(c, v) for k, v in self.coeffs.items()})

    def __eq__(self, other):
        return self.coeffs == other.coeffs


def test_eval_series_on_nilpotent_matches_truncated_polynomial():
    F = Rationals()
    bound = 4
    one = _NilPoly(F, bound, {0: F.one})
    t = _NilPoly(F, bound, {1: F.one})
    s = series_f(F, 6)
    val = eval_series_on_nilpotent(s, (t,), (bound,), one)
    # f(t) = 2t + t^2 + t^3 in K[t]/(t^4)
    assert val == _NilPoly(F, bound, {1: F.of_int(2), 2: F.one, 3: F.one})


def test_eval_inverse_series_on_square_zero_element():
    # On an element with t^2 = 0 only the linear coefficient survives, so
    # the inverse coordinate series evaluates to t/2.
    F = Rationals()
    bound = 2
    one = _NilPoly(F, bound, {0: F.one})
    t = _NilPoly(F, bound, {1: F.one})
    g = series_comp_inverse(series_f(F, 6))
    val = eval_series_on_nilpotent(g, (t,), (bound,), one)
    assert val == t.scale(Fraction(1, 2))
    # A constant series evaluates to that constant times the unit.
    c = TruncSeries.const(F, F.of_int(7), 1, 6)
    assert eval_series_on_nilpotent(c, (t,), (bound,), one) == one.scale(F.of_int(7))


def test_eval_series_respects_truncation_budget():
    F = Rationals()
    bound = 6
    one = _NilPoly(F, bound, {0: F.one})
    t = _NilPoly(F, bound, {1: F.one})
    s = series_f(F, 3)  # order 3 < bound-1 = 5: must refuse
    with pytest.raises(ValueError):
        eval_series_on_nilpotent(s, (t,), (bound,), one)


def test_eval_series_two_variables():
    F = Rationals()
    bound = 3
    one = _NilPoly(F, bound, {0: F.one})
    t = _NilPoly(F, bound, {1: F.one})
    z = TruncSeries.var(F, 0, 2, 4)
    w = TruncSeries.var(F, 1, 2, 4)
    s = z * w + z
    val = eval_series_on_nilpotent(s, (t, t), (bound, bound), one)
    assert val == _NilPoly(F, bound, {1: F.one, 2: F.one})
