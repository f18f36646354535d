"""Signed permutations, two reflection presentations, and orbits of residue tuples.

The hyperoctahedral group on n letters acts on the lattice spanned by
e_1..e_n by permuting coordinates and flipping signs.  We present it two
ways on the same concrete signed permutations:

* flavor "B": generators r_0 (flip e_1) and r_a (swap e_a, e_{a+1}) for
  1 <= a <= n-1; positive roots {2 e_a} union {e_b - e_a, e_a + e_b : a < b}.
* flavor "D": the index-two subgroup of elements with an even number of
  sign flips, generated by s_0 = r_0 r_1 r_0 (which sends e_1 -> -e_2,
  e_2 -> -e_1) and the same swaps s_a = r_a for a >= 1; positive roots
  drop the {2 e_a} line.

The embedding of the D-flavor group into the B-flavor one is the identity
on signed permutations; lengths differ by the number of sign flips.

Chosen reduced expressions.  Every element gets one distinguished reduced
word in the B generators, computed by a depth-first search over left
descents in increasing letter order.  For elements of the even subgroup
the search additionally requires the word to factor as a concatenation of
blocks drawn from {(0,1,0)} union {(a) : a >= 1}; such a factorization
always exists for those elements, and taking the lexicographically least
parseable word makes the block decomposition itself canonical.  Reading
the blocks (0,1,0) -> 0 and (a) -> a produces the chosen D-flavor word of
the same element, which is reduced for the D length.  Relabelling basis
words along this block reading is what later modules use to compare the
two Hecke-type algebras, so the two chosen words of one element must
always describe the same group element; that is asserted here.

Braid-move paths.  Any two reduced words of the same element are linked by
elementary moves.  ``braid_path`` finds a shortest such chain by
breadth-first search with deterministic tie-breaking and caches it; the
moves carry enough position data for callers to replay them with
correction terms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .scalars import Field, Scalar

__all__ = [
    "SignedPerm",
    "identity",
    "generator_perm",
    "all_elements",
    "length",
    "left_descents",
    "in_even_subgroup",
    "chosen_word",
    "chosen_word_d",
    "blocks_of_parseable_word",
    "word_to_perm",
    "BraidMove",
    "apply_move",
    "braid_moves_from",
    "braid_path",
    "act_letter",
    "act",
    "Orbit",
    "orbit",
    "split_even_suborbit",
    "dimension_vector",
]


# ---------------------------------------------------------------------------
# signed permutations


@dataclass(frozen=True)
class SignedPerm:
    """A signed permutation, stored as the tuple (w(e_1), ..., w(e_n)).

    Entry j-1 holds w(e_j) encoded as a signed 1-based index: the value
    ``+k`` means e_k and ``-k`` means -e_k.
    """

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.images)
        seen = {abs(v) for v in self.images}
        if 0 in seen or seen != set(range(1, n + 1)):
            raise ValueError(f"not a signed permutation: {self.images}")

    @property
    def n(self) -> int:
        return len(self.images)

    def __mul__(self, other: "SignedPerm") -> "SignedPerm":
        """Composition as functions: (self * other)(x) = self(other(x))."""
        out = []
        for v in other.images:
            u = self.images[abs(v) - 1]
            out.append(u if v > 0 else -u)
        return SignedPerm(tuple(out))

    def inv(self) -> "SignedPerm":
        out = [0] * self.n
        for j, v in enumerate(self.images, start=1):
            out[abs(v) - 1] = j if v > 0 else -j
        return SignedPerm(tuple(out))

    def is_identity(self) -> bool:
        return self.images == tuple(range(1, self.n + 1))

    def neg_count(self) -> int:
        """Number of coordinates sent to a negated basis vector."""
        return sum(1 for v in self.images if v < 0)


def identity(n: int) -> SignedPerm:
    return SignedPerm(tuple(range(1, n + 1)))


def generator_perm(flavor: str, a: int, n: int) -> SignedPerm:
    """The generator with letter ``a`` as a signed permutation."""
    img = list(range(1, n + 1))
    if a == 0:
        if flavor == "B":
            img[0] = -1
        elif flavor == "D":
            if n < 2:
                raise ValueError("flavor D needs n >= 2")
            img[0], img[1] = -2, -1
        else:
            raise ValueError(f"unknown flavor {flavor!r}")
    else:
        if not 1 <= a <= n - 1:
            raise ValueError(f"letter {a} out of range for n={n}")
        img[a - 1], img[a] = img[a], img[a - 1]
    return SignedPerm(tuple(img))


def all_elements(n: int, flavor: str = "B") -> list[SignedPerm]:
    """Materialize the whole group by closure from the generators."""
    if flavor == "D" and n < 2:
        raise ValueError("flavor D needs n >= 2")
    gens = [generator_perm(flavor, a, n) for a in range(n)]
    seen = {identity(n)}
    frontier = [identity(n)]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                u = g * w
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return sorted(seen, key=lambda w: w.images)


# ---------------------------------------------------------------------------
# roots, lengths, descents

_POSROOTS_CACHE: dict[tuple[str, int], frozenset[tuple[int, ...]]] = {}


def _positive_roots(flavor: str, n: int) -> frozenset[tuple[int, ...]]:
    key = (flavor, n)
    cached = _POSROOTS_CACHE.get(key)
    if cached is not None:
        return cached
    roots: set[tuple[int, ...]] = set()

    def vec(coeffs: dict[int, int]) -> tuple[int, ...]:
        return tuple(coeffs.get(k, 0) for k in range(1, n + 1))

    for a in range(1, n + 1):
        if flavor == "B":
            roots.add(vec({a: 2}))
        for b in range(a + 1, n + 1):
            roots.add(vec({b: 1, a: -1}))
            roots.add(vec({a: 1, b: 1}))
    out = frozenset(roots)
    _POSROOTS_CACHE[key] = out
    return out


def _apply_to_root(w: SignedPerm, root: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * w.n
    for k, c in enumerate(root, start=1):
        if c == 0:
            continue
        v = w.images[k - 1]
        out[abs(v) - 1] += c if v > 0 else -c
    return tuple(out)


def length(w: SignedPerm, flavor: str = "B") -> int:
    """Number of positive roots sent to negative roots."""
    pos = _positive_roots(flavor, w.n)
    return sum(1 for r in pos if _apply_to_root(w, r) not in pos)


def _simple_root(flavor: str, a: int, n: int) -> tuple[int, ...]:
    v = [0] * n
    if a == 0:
        if flavor == "B":
            v[0] = 2
        else:
            v[0] = 1
            v[1] = 1
    else:
        v[a] = 1
        v[a - 1] = -1
    return tuple(v)


def left_descents(w: SignedPerm, flavor: str = "B") -> list[int]:
    """Letters a with length(r_a w) < length(w), in increasing order.

    a is a left descent exactly when w^{-1} sends the a-th simple root to a
    negative root.
    """
    winv = w.inv()
    pos = _positive_roots(flavor, w.n)
    out = []
    for a in range(w.n):
        if flavor == "D" and w.n < 2 and a == 0:
            continue
        root = _simple_root(flavor, a, w.n)
        if _apply_to_root(winv, root) not in pos:
            out.append(a)
    return out


def in_even_subgroup(w: SignedPerm) -> bool:
    """Membership in the D-flavor subgroup: an even number of sign flips."""
    return w.neg_count() % 2 == 0


# ---------------------------------------------------------------------------
# chosen reduced expressions

# Parse states for the block machine over B-letters: blocks are (0,1,0) and
# single letters a >= 1.
_CLEAN, _AFTER0, _AFTER01, _DEAD = 0, 1, 2, 3


def _parse_step(state: int, letter: int) -> int:
    if state == _CLEAN:
        return _AFTER0 if letter == 0 else _CLEAN
    if state == _AFTER0:
        return _AFTER01 if letter == 1 else _DEAD
    if state == _AFTER01:
        return _CLEAN if letter == 0 else _DEAD
    return _DEAD


_CHOSEN_CACHE: dict[tuple[int, ...], tuple[int, ...]] = {}


def chosen_word(w: SignedPerm) -> tuple[int, ...]:
    """The distinguished reduced B-word of w.

    For elements of the even subgroup this is the lexicographically least
    reduced word that the block machine accepts; otherwise it is the plain
    lexicographically least reduced word (greedy smallest left descent).
    """
    cached = _CHOSEN_CACHE.get(w.images)
    if cached is not None:
        return cached

    if in_even_subgroup(w):
        failures: set[tuple[tuple[int, ...], int]] = set()

        def dfs(u: SignedPerm, state: int) -> tuple[int, ...] | None:
            if u.is_identity():
                return () if state == _CLEAN else None
            key = (u.images, state)
            if key in failures:
                return None
            for a in left_descents(u, "B"):
                nstate = _parse_step(state, a)
                if nstate == _DEAD:
                    continue
                sub = dfs(generator_perm("B", a, u.n) * u, nstate)
                if sub is not None:
                    return (a,) + sub
            failures.add(key)
            return None

        word = dfs(w, _CLEAN)
        if word is None:  # pragma: no cover - the factorization always exists
            raise RuntimeError(f"no block-parseable reduced word for {w.images}")
    else:
        letters: list[int] = []
        u = w
        while not u.is_identity():
            a = left_descents(u, "B")[0]
            letters.append(a)
            u = generator_perm("B", a, u.n) * u
        word = tuple(letters)

    if len(word) != length(w, "B"):  # pragma: no cover - internal consistency
        raise RuntimeError("chosen word is not reduced")
    _CHOSEN_CACHE[w.images] = word
    return word


def blocks_of_parseable_word(word: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Split a parseable word into its blocks (0,1,0) and (a)."""
    blocks: list[tuple[int, ...]] = []
    t = 0
    while t < len(word):
        if word[t] == 0:
            if word[t : t + 3] != (0, 1, 0):
                raise ValueError(f"word {word} is not block-parseable at {t}")
            blocks.append((0, 1, 0))
            t += 3
        else:
            blocks.append((word[t],))
            t += 1
    return blocks


_CHOSEN_D_CACHE: dict[tuple[int, ...], tuple[int, ...]] = {}


def chosen_word_d(w: SignedPerm) -> tuple[int, ...]:
    """The distinguished reduced D-word: read the B-word's blocks.

    Blocks (0,1,0) become the letter 0 and (a) stays a.  The result is
    reduced because the D length is the B length minus twice the number of
    long blocks... more precisely it is checked against ``length(w, "D")``.
    """
    cached = _CHOSEN_D_CACHE.get(w.images)
    if cached is not None:
        return cached
    if not in_even_subgroup(w):
        raise ValueError("element is outside the even subgroup")
    # Each block starts with its own D-letter: (0,1,0) -> 0 and (a,) -> a.
    word = tuple(b[0] for b in blocks_of_parseable_word(chosen_word(w)))
    if len(word) != length(w, "D"):  # pragma: no cover - internal consistency
        raise RuntimeError("block reading of the chosen word is not D-reduced")
    n = w.n
    check = identity(n)
    for a in word:
        check = check * generator_perm("D", a, n)
    if check != w:  # pragma: no cover - internal consistency
        raise RuntimeError("block reading changed the group element")
    _CHOSEN_D_CACHE[w.images] = word
    return word


def word_to_perm(word: Iterable[int], flavor: str, n: int) -> SignedPerm:
    w = identity(n)
    for a in word:
        w = w * generator_perm(flavor, a, n)
    return w


# ---------------------------------------------------------------------------
# braid moves and paths


@dataclass(frozen=True)
class BraidMove:
    """One elementary rewrite of a reduced word at a given position.

    kind is one of:
      "comm"   swap two adjacent commuting letters           (length 2)
      "sbraid" aba <-> bab for adjacent swap letters a,b>=1  (length 3)
      "bbraid" 0101 <-> 1010 in flavor B                     (length 4)
      "dbraid" 020 <-> 202 in flavor D                       (length 3)
    """

    kind: str
    pos: int


def _segment_after(word: tuple[int, ...], move: BraidMove) -> tuple[int, ...]:
    width = {"comm": 2, "sbraid": 3, "bbraid": 4, "dbraid": 3}[move.kind]
    seg = word[move.pos : move.pos + width]
    if move.kind == "comm":
        return (seg[1], seg[0])
    if move.kind in ("sbraid", "dbraid"):
        return (seg[1], seg[0], seg[1])
    return tuple(reversed(seg))  # bbraid: 0101 <-> 1010


def apply_move(word: tuple[int, ...], move: BraidMove) -> tuple[int, ...]:
    width = {"comm": 2, "sbraid": 3, "bbraid": 4, "dbraid": 3}[move.kind]
    return word[: move.pos] + _segment_after(word, move) + word[move.pos + width :]


def _letters_commute(flavor: str, a: int, b: int) -> bool:
    if flavor == "B":
        return abs(a - b) > 1
    # flavor D: 0 commutes with everything except 2; positive letters as in B.
    if 0 in (a, b):
        other = a + b  # the nonzero one (or 0 with itself, never adjacent here)
        return other != 2
    return abs(a - b) > 1


def braid_moves_from(word: tuple[int, ...], flavor: str) -> list[BraidMove]:
    """All elementary moves applicable to a word, in deterministic order."""
    moves: list[BraidMove] = []
    L = len(word)
    for t in range(L - 1):
        a, b = word[t], word[t + 1]
        if a != b and _letters_commute(flavor, a, b):
            moves.append(BraidMove("comm", t))
    for t in range(L - 2):
        a, b, c = word[t : t + 3]
        if a == c and a >= 1 and b >= 1 and abs(a - b) == 1:
            moves.append(BraidMove("sbraid", t))
        if flavor == "D" and (a, b, c) in ((0, 2, 0), (2, 0, 2)):
            moves.append(BraidMove("dbraid", t))
    if flavor == "B":
        for t in range(L - 3):
            if word[t : t + 4] in ((0, 1, 0, 1), (1, 0, 1, 0)):
                moves.append(BraidMove("bbraid", t))
    return moves


_PATH_CACHE: dict[tuple[str, tuple[int, ...], tuple[int, ...]], tuple[BraidMove, ...]] = {}


def braid_path(src: tuple[int, ...], dst: tuple[int, ...], flavor: str) -> tuple[BraidMove, ...]:
    """A shortest chain of elementary moves rewriting src into dst.

    Both words must be reduced expressions of the same element; the search
    space is the finite graph of its reduced words.  Breadth-first search
    with sorted neighbor expansion makes the result deterministic.
    """
    key = (flavor, tuple(src), tuple(dst))
    cached = _PATH_CACHE.get(key)
    if cached is not None:
        return cached
    src = tuple(src)
    dst = tuple(dst)
    if len(src) != len(dst):
        raise ValueError("words of different lengths cannot be braid-equivalent")
    parents: dict[tuple[int, ...], tuple[tuple[int, ...], BraidMove] | None] = {src: None}
    frontier = [src]
    while dst not in parents:
        if not frontier:
            raise ValueError(f"words {src} and {dst} are not braid-equivalent")
        nxt = []
        for word in frontier:
            steps = [(apply_move(word, mv), mv) for mv in braid_moves_from(word, flavor)]
            for new_word, mv in sorted(steps, key=lambda p: p[0]):
                if new_word not in parents:
                    parents[new_word] = (word, mv)
                    nxt.append(new_word)
        frontier = sorted(nxt)
    path: list[BraidMove] = []
    cur = dst
    while parents[cur] is not None:
        prev, mv = parents[cur]  # type: ignore[misc]
        path.append(mv)
        cur = prev
    path.reverse()
    out = tuple(path)
    _PATH_CACHE[key] = out
    return out


# ---------------------------------------------------------------------------
# action on residue tuples and orbits

Tuple = tuple  # residue tuples are plain tuples of scalars


def act_letter(flavor: str, a: int, tup: tuple[Scalar, ...], field: Field) -> tuple[Scalar, ...]:
    """Action of one generator on a residue tuple."""
    lst = list(tup)
    if a == 0:
        if flavor == "B":
            lst[0] = field.inv(lst[0])
        else:
            lst[0], lst[1] = field.inv(tup[1]), field.inv(tup[0])
    else:
        lst[a - 1], lst[a] = lst[a], lst[a - 1]
    return tuple(lst)


def act(w: SignedPerm, tup: tuple[Scalar, ...], field: Field) -> tuple[Scalar, ...]:
    """The left action: entry l of w.tup is entry |w^{-1}(l)| of tup,
    inverted when w^{-1}(l) is negative."""
    winv = w.inv()
    out = []
    for l in range(1, len(tup) + 1):
        v = winv.images[l - 1]
        x = tup[abs(v) - 1]
        out.append(x if v > 0 else field.inv(x))
    return tuple(out)


@dataclass(frozen=True)
class Orbit:
    """An orbit of residue tuples under one flavor's group action."""

    flavor: str
    seed: tuple[Scalar, ...]
    members: tuple[tuple[Scalar, ...], ...]

    def __contains__(self, tup) -> bool:
        return tuple(tup) in set(self.members)


def orbit(seed: tuple[Scalar, ...], flavor: str, field: Field) -> Orbit:
    """Closure of a seed tuple under the flavor's generators."""
    n = len(seed)
    seed = tuple(seed)
    if flavor == "D" and n < 2:
        raise ValueError("flavor D needs n >= 2")
    letters = list(range(n))
    seen = {seed}
    frontier = [seed]
    while frontier:
        nxt = []
        for t in frontier:
            for a in letters:
                u = act_letter(flavor, a, t, field)
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    members = tuple(sorted(seen))
    return Orbit(flavor, seed, members)


def split_even_suborbit(orb: Orbit, field: Field) -> tuple[Orbit, Orbit | None]:
    """Split a B-flavor orbit into even-subgroup suborbits.

    The suborbit of the seed consists exactly of the members reachable with
    an even number of inversions (the D-flavor orbit of the seed).  The
    complement is either empty or a second D-flavor orbit.
    """
    if orb.flavor != "B":
        raise ValueError("split applies to B-flavor orbits")
    plus = orbit(orb.seed, "D", field)
    rest = sorted(set(orb.members) - set(plus.members))
    if not rest:
        return plus, None
    minus = orbit(rest[0], "D", field)
    if set(plus.members) | set(minus.members) != set(orb.members):  # pragma: no cover
        raise RuntimeError("orbit did not split into two even-suborbit classes")
    return plus, minus


def dimension_vector(orb: Orbit, field: Field) -> dict[Scalar, int]:
    """Multiplicity of each vertex across the inversion pair {i, i^{-1}}.

    For every vertex appearing in the orbit, count occurrences of i and of
    i^{-1} in any single member (the count is member-independent).  The
    counts satisfy sum/2 over vertices with i^2 != 1 plus sum over
    i^2 == 1 equals the tuple length.
    """
    members = orb.members
    vertices: set[Scalar] = set()
    for m in members:
        vertices.update(m)
        vertices.update(field.inv(x) for x in m)
    ref = members[0]
    out: dict[Scalar, int] = {}
    for v in sorted(vertices):
        vi = field.inv(v)
        cnt = sum(1 for x in ref if x == v or x == vi)
        out[v] = cnt
    for m in members[1:]:
        for v, cnt in out.items():
            vi = field.inv(v)
            here = sum(1 for x in m if x == v or x == vi)
            if here != cnt:  # pragma: no cover - member-independence is structural
                raise RuntimeError("dimension vector is not member-independent")
    return out
