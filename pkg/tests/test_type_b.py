"""The rewriting engine for the flavor with a period-two first crossing."""

import pytest

from quiverhecke.report import all_passed
from quiverhecke.rewrite import BasisWord, Element, compositions
from quiverhecke.type_b import (
    algebra_from_seed,
    relation_checks,
    rho,
    right_span_checks,
    word_parity_even,
)
from support import (
    REGIME_CONFIGS,
    alg_b,
    params_f13_q2,
    params_f13_q5,
    regime_algebra,
)


@pytest.fixture(scope="module")
def algebras():
    return {name: regime_algebra(name) for name, *_ in REGIME_CONFIGS}


# ---------------------------------------------------------------------------
# Defining relations, via the engine's own normal forms
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("name", [name for name, *_ in REGIME_CONFIGS])
def test_relations_hold(algebras, name):
    recs = relation_checks(algebras[name])
    failed = [r for r in recs if not r.passed]
    assert not failed, [(r.check_id, r.witness) for r in failed]
    # Every relation family must actually have been exercised.
    ids = {r.check_id for r in recs}
    assert {"idem-orthogonal", "idem-partition", "poly-commute", "cross-idem",
            "cross-poly", "zero-poly", "square", "braid-distant",
            "zero-braid", "grading"} <= ids


@pytest.mark.parametrize("name", ["f13-q2-fixed-letter", "q-q2-selfpaired",
                                  "f13-q2-fixed-letter-n3"])
def test_right_handed_words_span(algebras, name):
    alg = algebras[name]
    extra = 4 if alg.n == 2 else 2
    recs = right_span_checks(alg, extra_degrees=extra)
    assert recs, "no degrees inspected"
    assert all_passed(recs), [(r.check_id, r.witness) for r in recs if not r.passed]


# ---------------------------------------------------------------------------
# Construction and validation
# ---------------------------------------------------------------------------


def test_algebra_from_seed_validates_components():
    P = params_f13_q2()
    F = P.field
    # Seed entry outside every declared component.
    with pytest.raises(ValueError):
        alg_b(P, (1, 2), lam=(1,))
    # Overlapping component parameters.
    with pytest.raises(ValueError):
        alg_b(P, (1, 4), lam=(1, 3))
    # Valid: both entries in the component of 1.
    alg = alg_b(P, (1, 4), lam=(1,))
    assert alg.n == 2
    assert len(alg.tuples) == 4


def test_unit_and_idempotents():
    alg = regime_algebra("f13-q2-fixed-letter")
    one = alg.unit()
    idems = [alg.idempotent(i) for i in alg.tuples]
    total = idems[0]
    for e in idems[1:]:
        total = total + e
    assert total == one
    x = alg.psi(1) * alg.y(2) + alg.y(1).scale(alg.field.of_int(3))
    assert one * x == x
    assert x * one == x
    with pytest.raises(ValueError):
        alg.idempotent((alg.field.of_int(2), alg.field.of_int(2)))
    with pytest.raises(ValueError):
        alg.y(3)
    with pytest.raises(ValueError):
        alg.psi(2)


def test_multiplication_is_associative_on_samples(rng):
    alg = regime_algebra("f13-q2-generic")
    gens = [alg.psi(0), alg.psi(1), alg.y(1), alg.y(2)] + [
        alg.idempotent(i) for i in alg.tuples]
    for _ in range(40):
        a, b, c = (rng.choice(gens) for _ in range(3))
        assert (a * b) * c == a * (b * c)


def test_products_are_graded(rng):
    alg = regime_algebra("f13-q2-fixed-letter")
    lo, hi = alg.psi_degree_range()
    for d1 in range(lo, hi + 3):
        for d2 in range(lo, hi + 3):
            ws1 = alg.basis_words_at_degree(d1)
            ws2 = alg.basis_words_at_degree(d2)
            if not ws1 or not ws2:
                continue
            w1 = rng.choice(ws1)
            w2 = rng.choice(ws2)
            prod = alg.element({w1: alg.field.one}) * alg.element({w2: alg.field.one})
            assert set(prod.degrees()) <= {d1 + d2}


def test_basis_word_counts_match_product_formula():
    # Words of bounded polynomial degree: |group| * #monomials * |orbit|.
    for name, expected_group in (("f13-q2-fixed-letter", 8),
                                 ("f13-q2-fixed-letter-n3", 48)):
        alg = regime_algebra(name)
        n = alg.n
        cap = 2 if n == 2 else 1
        monos = sum(1 for total in range(cap + 1) for _ in compositions(total, n))
        lo, hi = alg.psi_degree_range()
        words = set()
        for d in range(lo, hi + 2 * cap + 1):
            for w in alg.basis_words_at_degree(d):
                if sum(w.mono) <= cap:
                    words.add(w)
        assert len(words) == expected_group * monos * len(alg.tuples)


# ---------------------------------------------------------------------------
# The sign involution on the letter-0 generator
# ---------------------------------------------------------------------------


def test_rho_on_generators():
    alg = regime_algebra("f13-q2-fixed-letter")
    assert rho(alg.psi(0)) == -alg.psi(0)
    assert rho(alg.psi(1)) == alg.psi(1)
    assert rho(alg.y(1)) == alg.y(1)
    assert rho(alg.unit()) == alg.unit()
    for i in alg.tuples:
        assert rho(alg.idempotent(i)) == alg.idempotent(i)


def test_rho_is_an_involution_and_hom(rng):
    for name in ("f13-q2-fixed-letter", "f13-q5-double-arrow"):
        alg = regime_algebra(name)
        gens = [alg.psi(0), alg.psi(1), alg.y(1), alg.y(2)]
        for _ in range(60):
            x = rng.choice(gens) * rng.choice(gens)
            y = rng.choice(gens)
            assert rho(rho(x)) == x
            assert rho(x * y) == rho(x) * rho(y)
            assert rho(x + y) == rho(x) + rho(y)


def test_word_parity_matches_rho_sign():
    alg = regime_algebra("f13-q2-fixed-letter")
    lo, hi = alg.psi_degree_range()
    for d in range(lo, hi + 1):
        for w in alg.basis_words_at_degree(d):
            x = alg.element({w: alg.field.one})
            if word_parity_even(alg, w):
                assert rho(x) == x
            else:
                assert rho(x) == -x
