"""Signed permutations, chosen reduced words, braid paths, and tuple orbits."""

import pytest

from quiverhecke.scalars import PrimeField
from quiverhecke.weyl import (
    SignedPerm,
    act,
    act_letter,
    all_elements,
    apply_move,
    blocks_of_parseable_word,
    braid_path,
    chosen_word,
    chosen_word_d,
    dimension_vector,
    generator_perm,
    identity,
    in_even_subgroup,
    left_descents,
    length,
    orbit,
    split_even_suborbit,
    word_to_perm,
)


# ---------------------------------------------------------------------------
# Group structure
# ---------------------------------------------------------------------------


def test_group_orders():
    assert len(all_elements(2, "B")) == 8
    assert len(all_elements(3, "B")) == 48
    assert len(all_elements(2, "D")) == 4
    assert len(all_elements(3, "D")) == 24


def test_signed_perm_validation_and_ops():
    w = SignedPerm((-2, 1))
    assert w.n == 2
    assert w.neg_count() == 1
    assert (w * w.inv()).is_identity()
    assert (w.inv() * w).is_identity()
    with pytest.raises(ValueError):
        SignedPerm((1, 1))
    with pytest.raises(ValueError):
        SignedPerm((0, 2))


def test_generators():
    r0 = generator_perm("B", 0, 2)
    assert r0.images == (-1, 2)
    s0 = generator_perm("D", 0, 2)
    assert s0.images == (-2, -1)
    r1 = generator_perm("B", 1, 3)
    assert r1.images == (2, 1, 3)
    assert generator_perm("D", 1, 3) == r1
    # s0 = r0 r1 r0 as signed permutations.
    r0_3 = generator_perm("B", 0, 3)
    r1_3 = generator_perm("B", 1, 3)
    assert generator_perm("D", 0, 3) == r0_3 * r1_3 * r0_3
    with pytest.raises(ValueError):
        generator_perm("B", 3, 3)
    with pytest.raises(ValueError):
        generator_perm("D", 0, 1)


def test_length_and_descents():
    n = 2
    e = identity(n)
    assert length(e, "B") == 0
    w0 = SignedPerm((-1, -2))  # longest element of the order-8 group
    assert length(w0, "B") == 4  # n^2 for the full signed group
    assert length(w0, "D") == 2  # n(n-1) inside the even subgroup
    for a in (0, 1):
        g = generator_perm("B", a, n)
        assert length(g, "B") == 1
        assert a in left_descents(g, "B")
    assert left_descents(e, "B") == []
    # Multiplying by a non-descent generator increases length by one.
    for w in all_elements(3, "B"):
        for a in (0, 1, 2):
            g = generator_perm("B", a, 3)
            delta = length(g * w, "B") - length(w, "B")
            assert delta in (-1, 1)
            assert (delta == -1) == (a in left_descents(w, "B"))


def test_even_subgroup_detection():
    evens = [w for w in all_elements(2, "B") if in_even_subgroup(w)]
    assert len(evens) == 4
    assert set(tuple(w.images) for w in evens) == {
        (1, 2), (2, 1), (-1, -2), (-2, -1)}
    assert all(w.neg_count() % 2 == 0 for w in evens)


# ---------------------------------------------------------------------------
# Chosen words and block parsing
# ---------------------------------------------------------------------------


def test_chosen_words_are_reduced_and_correct():
    for n in (2, 3):
        for w in all_elements(n, "B"):
            word = chosen_word(w)
            assert len(word) == length(w, "B")
            assert word_to_perm(word, "B", n) == w


def test_chosen_words_of_even_elements_parse_into_blocks():
    for n in (2, 3):
        for w in all_elements(n, "D"):
            word = chosen_word(w)
            blocks = blocks_of_parseable_word(word)
            assert all(b == (0, 1, 0) or (len(b) == 1 and b[0] >= 1) for b in blocks)
            dword = chosen_word_d(w)
            assert dword == tuple(b[0] for b in blocks)
            assert len(dword) == length(w, "D")
            assert word_to_perm(dword, "D", n) == w


def test_chosen_word_d_rejects_odd_elements():
    with pytest.raises(ValueError):
        chosen_word_d(generator_perm("B", 0, 2))


def test_block_parse_rejects_bad_word():
    with pytest.raises(ValueError):
        blocks_of_parseable_word((0, 1, 1))
    with pytest.raises(ValueError):
        blocks_of_parseable_word((1, 0))


# ---------------------------------------------------------------------------
# Braid paths
# ---------------------------------------------------------------------------


def test_braid_path_replay_b2():
    src, dst = (0, 1, 0, 1), (1, 0, 1, 0)
    path = braid_path(src, dst, "B")
    cur = src
    for mv in path:
        cur = apply_move(cur, mv)
    assert cur == dst
    assert len(path) == 1  # one order-four move suffices


def test_braid_path_replay_all_reduced_words_b3():
    # For every element, every reduced word must be reachable from the
    # chosen one; sample the longest element, whose word graph is largest.
    n = 3
    w0 = SignedPerm((-1, -2, -3))
    assert length(w0, "B") == 9
    start = chosen_word(w0)
    # Generate a handful of other reduced words by applying random move
    # sequences, then find paths back.
    import random
    rng = random.Random(7)
    from quiverhecke.weyl import braid_moves_from
    words = {start}
    cur = start
    for _ in range(40):
        moves = braid_moves_from(cur, "B")
        cur = apply_move(cur, rng.choice(moves))
        words.add(cur)
    assert len(words) > 3
    for word in sorted(words):
        assert word_to_perm(word, "B", n) == w0
        path = braid_path(start, word, "B")
        replay = start
        for mv in path:
            replay = apply_move(replay, mv)
        assert replay == word


def test_braid_path_rejects_inequivalent_words():
    with pytest.raises(ValueError):
        braid_path((0,), (1,), "B")
    with pytest.raises(ValueError):
        braid_path((0, 1), (1,), "B")


def test_d_flavor_braid_moves():
    # In the D presentation 0 and 2 satisfy the order-three braid relation
    # and 0 commutes with 1.
    path = braid_path((0, 2, 0), (2, 0, 2), "D")
    cur = (0, 2, 0)
    for mv in path:
        cur = apply_move(cur, mv)
    assert cur == (2, 0, 2)
    assert word_to_perm((0, 1), "D", 3) == word_to_perm((1, 0), "D", 3)


# ---------------------------------------------------------------------------
# Action on residue tuples and orbits
# ---------------------------------------------------------------------------


def test_act_letter_frozen():
    F = PrimeField(13)
    t = (F.of_int(2), F.of_int(5))
    assert act_letter("B", 0, t, F) == (F.of_int(7), F.of_int(5))  # 2^{-1} = 7
    assert act_letter("B", 1, t, F) == (F.of_int(5), F.of_int(2))
    assert act_letter("D", 0, t, F) == (F.of_int(8), F.of_int(7))  # (5^{-1}, 2^{-1})


def test_act_is_a_left_action(rng):
    F = PrimeField(13)
    elems = all_elements(2, "B")
    tuples = [(F.of_int(a), F.of_int(b))
              for a in (1, 2, 4, 5) for b in (1, 2, 4, 5)]
    for _ in range(60):
        u = rng.choice(elems)
        v = rng.choice(elems)
        t = rng.choice(tuples)
        assert act(u * v, t, F) == act(u, act(v, t, F), F)
    # act agrees with letter-by-letter application of a chosen word.
    for w in elems:
        for t in tuples[:4]:
            step = t
            for a in reversed(chosen_word(w)):
                step = act_letter("B", a, step, F)
            assert act(w, t, F) == step


def test_orbit_frozen_membership():
    F = PrimeField(13)
    orb = orbit((F.of_int(1), F.of_int(4)), "B", F)
    assert orb.flavor == "B"
    expected = {(1, 4), (4, 1), (1, 10), (10, 1)}
    assert set(orb.members) == {(F.of_int(a), F.of_int(b)) for a, b in expected}
    assert (F.of_int(4), F.of_int(1)) in orb
    assert (F.of_int(2), F.of_int(1)) not in orb


def test_orbit_two_component():
    F = PrimeField(13)
    orb = orbit((F.of_int(2), F.of_int(5)), "B", F)
    assert len(orb.members) == 8  # {2,7} x {5,8} in either slot order


def _brute_closure(seed, gens, F):
    seen = {seed}
    frontier = [seed]
    while frontier:
        nxt = []
        for t in frontier:
            for g in gens:
                u = g(t)
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return seen


def test_repeated_letter_orbits_against_brute_force():
    # Seed (x, x) with x^2 != 1: the full orbit has size 4 and splits into
    # two even-suborbit classes of size 2.  The oracle closure below uses
    # hand-written reflection actions, not the module's.
    from quiverhecke.scalars import Rationals
    F = Rationals()
    x = F.of_int(3)
    seed = (x, x)
    r0 = lambda t: (F.inv(t[0]), t[1])
    r1 = lambda t: (t[1], t[0])
    s0 = lambda t: (F.inv(t[1]), F.inv(t[0]))
    brute_b = _brute_closure(seed, (r0, r1), F)
    brute_d = _brute_closure(seed, (s0, r1), F)
    xi = F.inv(x)
    assert brute_b == {(x, x), (x, xi), (xi, x), (xi, xi)}
    assert brute_d == {(x, x), (xi, xi)}
    orb = orbit(seed, "B", F)
    assert set(orb.members) == brute_b
    d_orb = orbit(seed, "D", F)
    assert set(d_orb.members) == brute_d
    plus, minus = split_even_suborbit(orb, F)
    assert set(plus.members) == brute_d
    assert minus is not None
    assert set(minus.members) == {(x, xi), (xi, x)}
    assert len(plus.members) + len(minus.members) == len(orb.members)


def test_split_even_suborbit_single():
    # With a self-inverse letter present, one sign flip can be undone
    # elsewhere, so the even subgroup already reaches the whole orbit.
    F = PrimeField(13)
    orb = orbit((F.of_int(1), F.of_int(4)), "B", F)
    plus, minus = split_even_suborbit(orb, F)
    assert minus is None
    assert set(plus.members) == set(orb.members)


def test_split_even_suborbit_pair():
    F = PrimeField(13)
    orb = orbit((F.of_int(2), F.of_int(5)), "B", F)
    plus, minus = split_even_suborbit(orb, F)
    assert minus is not None
    assert len(plus.members) == 4
    assert len(minus.members) == 4
    assert set(plus.members) | set(minus.members) == set(orb.members)
    assert not set(plus.members) & set(minus.members)
    two_five = (F.of_int(2), F.of_int(5))
    assert two_five in plus
    # Flipping exactly one slot moves to the other class.
    assert (F.of_int(7), F.of_int(5)) in minus


def test_split_requires_b_flavor():
    F = PrimeField(13)
    d_orb = orbit((F.of_int(2), F.of_int(5)), "D", F)
    with pytest.raises(ValueError):
        split_even_suborbit(d_orb, F)


def test_dimension_vector_frozen():
    F = PrimeField(13)
    orb = orbit((F.of_int(1), F.of_int(4)), "B", F)
    dv = dimension_vector(orb, F)
    # Every vertex of the orbit counts its inversion pair once per member.
    assert dv == {F.of_int(1): 1, F.of_int(4): 1, F.of_int(10): 1}
    orb2 = orbit((F.of_int(4), F.of_int(10)), "B", F)
    dv2 = dimension_vector(orb2, F)
    assert dv2 == {F.of_int(4): 2, F.of_int(10): 2}


def test_dimension_vector_counting_identity():
    # Vertices with x^2 != 1 are double-counted across the inversion pair:
    # sum/2 over those plus sum over self-inverse ones equals the length.
    from quiverhecke.scalars import Rationals
    Q = Rationals()
    x = Q.of_int(3)
    orb = orbit((x, x), "B", Q)
    dv = dimension_vector(orb, Q)
    assert dv == {Q.inv(x): 2, x: 2}
    F = PrimeField(13)
    orb_one = orbit((F.one, F.one), "B", F)
    dv_one = dimension_vector(orb_one, F)
    assert dv_one == {F.one: 2}
    n = 2
    for d, field in ((dv, Q), (dv_one, F)):
        total = 0.0
        for v, cnt in d.items():
            if field.mul(v, v) == field.one:
                total += cnt
            else:
                total += cnt / 2
        assert total == n
