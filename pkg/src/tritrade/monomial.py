"""Monomial cubes, XOR-of-monomials representations, and exact rank.

A word v over {0,1,2} (2 standing for -1) encodes both the monomial
x^v = prod x_i^(v_i) with x^1 = x, x^(-1) = x xor 1, x^0 = 1, and the
boolean subcube {0,1}_0 x {1,2}_1 x {0,2}_2 ... picked coordinatewise by
the digits of v.  The restriction of the subcube's characteristic function
to Q_2^n is exactly the monomial's truth table, so XOR combinations of
monomials and symmetric differences of subcubes are the same thing and the
*rank* of a unitrade equals the minimal ESOP term count of its boolean
function.

Rank engines: a coset BFS over GF(2)^(2^n) gives the full rank table for
n <= 4 in one pass; an independent iterative-deepening branch-and-bound
(restriction ranks as the admissible bound) cross-checks it and handles
n = 5 on request.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from . import cube
from .errors import (
    DegenerateTriple,
    DimensionTooLarge,
    NotAUnitrade,
    ProfileHasEqualColumns,
    TooManyMonomials,
)
from .funcspace import BoolFn, TernFn, bool_from_unitrade
from .trade import TradeSet, is_unitrade

# per-digit 2-subsets of Q_3: digit of v -> member digits of the cube factor
CUBE_FACTOR = ((0, 1), (1, 2), (0, 2))

NEG_INF = float("-inf")


class MonomialSet:
    """A set of exponent words over Q_3^n (duplicates are not representable:
    x^v xor x^v cancels, so sets are the right container)."""

    __slots__ = ("n", "words")

    def __init__(self, n: int, words: Iterable[tuple[int, ...]]):
        ws = frozenset(tuple(w) for w in words)
        for w in ws:
            if len(w) != n or any(d not in (0, 1, 2) for d in w):
                raise ValueError(f"bad exponent word {w} for n={n}")
        self.n = n
        self.words = ws

    @staticmethod
    def from_text(n: int, text: str) -> "MonomialSet":
        words = [tuple(int(ch) for ch in part) for part in text.split(";") if part]
        return MonomialSet(n, words)

    def to_text(self) -> str:
        return ";".join(
            "".join(str(d) for d in w) for w in sorted(self.words)
        )

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self):
        return iter(sorted(self.words))

    def __eq__(self, other) -> bool:
        return isinstance(other, MonomialSet) and (self.n, self.words) == (
            other.n,
            other.words,
        )

    def __hash__(self) -> int:
        return hash((self.n, self.words))

    def __repr__(self) -> str:
        return f"MonomialSet(n={self.n}, {{{self.to_text()}}})"


# ---------------------------------------------------------------------------
# Cubes and truth tables
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _cube_masks(n: int) -> tuple[int, ...]:
    """Support bitmask over Q_3^n of every monomial cube, indexed by the
    cell of the exponent word."""
    masks = []
    for v in cube.all_words(n, 3):
        m = 0
        for combo in itertools.product(*(CUBE_FACTOR[d] for d in v)):
            m |= 1 << cube.cell_of_word(combo, 3)
        masks.append(m)
    return tuple(masks)


@lru_cache(maxsize=None)
def _monomial_tables(n: int) -> tuple[int, ...]:
    """Truth table bitmask over Q_2^n of every monomial, same indexing."""
    lit = []
    for i in range(n):
        ones = 0
        for c in range(1 << n):
            if (c >> (n - 1 - i)) & 1:
                ones |= 1 << c
        full = (1 << (1 << n)) - 1
        lit.append((full, ones, full ^ ones))  # digit 0, 1, 2 of v_i
    tables = []
    for v in cube.all_words(n, 3):
        t = (1 << (1 << n)) - 1
        for i, d in enumerate(v):
            t &= lit[i][d]
        tables.append(t)
    return tuple(tables)


def monomial_cube(v: tuple[int, ...]) -> TradeSet:
    """The boolean subcube picked by v; always a bitrade of size 2^n."""
    n = len(v)
    return TradeSet(n, 3, _cube_masks(n)[cube.cell_of_word(v, 3)])


def f_from_monomials(V: MonomialSet) -> BoolFn:
    """XOR of the monomials of V as a boolean function on Q_2^n."""
    tabs = _monomial_tables(V.n)
    bits = 0
    for w in V.words:
        bits ^= tabs[cube.cell_of_word(w, 3)]
    return BoolFn(V.n, bits)


def trade_from_monomials(V: MonomialSet) -> TradeSet:
    """Symmetric difference of the monomial cubes of V."""
    masks = _cube_masks(V.n)
    m = 0
    for w in V.words:
        m ^= masks[cube.cell_of_word(w, 3)]
    return TradeSet(V.n, 3, m)


def collapse_pair(u: tuple[int, ...], v: tuple[int, ...]) -> tuple[int, ...]:
    """x^u xor x^v for words at Hamming distance 1 is the single monomial
    whose differing digit is the third symbol."""
    diff = [i for i, (a, b) in enumerate(zip(u, v)) if a != b]
    if len(diff) != 1:
        raise ValueError("words are not at distance 1")
    i = diff[0]
    third = 3 - u[i] - v[i]
    return u[:i] + (third,) + u[i + 1:]


def normalize(V: MonomialSet) -> MonomialSet:
    """Collapse distance-1 pairs until none remain (duplicates cancel)."""
    words = set(V.words)
    changed = True
    while changed:
        changed = False
        for u, v in itertools.combinations(sorted(words), 2):
            if cube.hamming_distance(u, v) == 1:
                words.discard(u)
                words.discard(v)
                w = collapse_pair(u, v)
                if w in words:
                    words.discard(w)
                else:
                    words.add(w)
                changed = True
                break
    return MonomialSet(V.n, words)


# ---------------------------------------------------------------------------
# Exact rank (polynomial complexity)
# ---------------------------------------------------------------------------

_RANK_TABLE_MAX_N = 4


@lru_cache(maxsize=None)
def rank_table(n: int) -> bytes:
    """rank_table(n)[truth table] = minimal ESOP term count, for all 2^(2^n)
    boolean functions at once: BFS layering of the GF(2) span of the 3^n
    monomial truth tables (distance from 0 in the Cayley graph)."""
    if n > _RANK_TABLE_MAX_N:
        raise DimensionTooLarge(f"rank table infeasible at n={n}")
    tabs = _monomial_tables(n)
    size = 1 << (1 << n)
    dist = bytearray([255]) * size
    dist[0] = 0
    frontier = [0]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for t in frontier:
            for m in tabs:
                u = t ^ m
                if dist[u] == 255:
                    dist[u] = d
                    nxt.append(u)
        frontier = nxt
    return bytes(dist)


def rank_of_boolfn(f: BoolFn, allow_slow: bool = False) -> int:
    if f.n <= _RANK_TABLE_MAX_N:
        return rank_table(f.n)[f.bits]
    if f.n == 5 and allow_slow:
        return rank_branch_and_bound(f)
    raise DimensionTooLarge(
        f"exact rank requires n <= 4 (n=5 behind allow_slow), got n={f.n}"
    )


def rank(U: TradeSet, allow_slow: bool = False) -> int:
    """Minimal number of monomial cubes whose XOR is U."""
    if not is_unitrade(U):
        raise NotAUnitrade("rank is defined for unitrades")
    return rank_of_boolfn(bool_from_unitrade(U), allow_slow=allow_slow)


def _cofactor(bits: int, n: int, coord: int, value: int) -> int:
    out = 0
    for j, c in enumerate(cube.retract_cells(n, 2, coord, value)):
        if (bits >> c) & 1:
            out |= 1 << j
    return out


def _rank_lower_bound(bits: int, n: int) -> int:
    """Restriction to a hyperface maps every monomial to a monomial or
    kills it, so sub-function ranks bound rank from below."""
    if bits == 0:
        return 0
    if n <= _RANK_TABLE_MAX_N:
        return rank_table(n)[bits]
    sub = rank_table(n - 1)
    return max(
        sub[_cofactor(bits, n, i, c)] for i in range(n) for c in (0, 1)
    )


def rank_upper_bound(f: BoolFn) -> int:
    """Best of the Shannon and both Davio expansions over all coordinates,
    with exact cofactor ranks from the table one dimension down."""
    n = f.n
    if n <= _RANK_TABLE_MAX_N:
        return rank_table(n)[f.bits]
    sub = rank_table(n - 1)
    best = None
    for i in range(n):
        f0 = sub[_cofactor(f.bits, n, i, 0)]
        f1 = sub[_cofactor(f.bits, n, i, 1)]
        fx = sub[_cofactor(f.bits, n, i, 0) ^ _cofactor(f.bits, n, i, 1)]
        cand = min(f0 + f1, f0 + fx, f1 + fx)
        best = cand if best is None else min(best, cand)
    return best


def _covering_monomials(n: int, cell: int) -> tuple[int, ...]:
    """Truth tables of the 2^n monomials whose value at `cell` is 1."""
    tabs = _monomial_tables(n)
    word = cube.word_of_cell(cell, n, 2)
    choices = [(0, 1) if d else (0, 2) for d in word]
    return tuple(
        tabs[cube.cell_of_word(v, 3)] for v in itertools.product(*choices)
    )


def rank_branch_and_bound(f: BoolFn) -> int:
    """Exact rank by iterative deepening on the first uncovered cell.

    Independent of the BFS table above it; below it uses only restriction
    ranks one dimension down as the admissible bound.
    """
    n = f.n
    if f.bits == 0:
        return 0
    cover_cache: dict[int, tuple[int, ...]] = {}

    def dfs(bits: int, budget: int) -> bool:
        if bits == 0:
            return True
        if budget == 0 or _rank_lower_bound(bits, n) > budget:
            return False
        cell = (bits & -bits).bit_length() - 1
        covers = cover_cache.get(cell)
        if covers is None:
            covers = _covering_monomials(n, cell)
            cover_cache[cell] = covers
        return any(dfs(bits ^ m, budget - 1) for m in covers)

    budget = _rank_lower_bound(f.bits, n)
    ub = rank_upper_bound(f)
    while budget < ub:
        if dfs(f.bits, budget):
            return budget
        budget += 1
    return ub


# ---------------------------------------------------------------------------
# The r(W) statistic and the cardinality formula
# ---------------------------------------------------------------------------

def r_of(W: Iterable[tuple[int, ...]]):
    """Number of columns where all words of W agree; -inf when some column
    carries all three symbols (the cube intersection is then empty)."""
    rows = list(W)
    if not rows:
        raise ValueError("r is defined for nonempty word sets")
    equal = 0
    for col in zip(*rows):
        distinct = len(set(col))
        if distinct == 1:
            equal += 1
        elif distinct == 3:
            return NEG_INF
    return equal


def _pow2r(W: Sequence[tuple[int, ...]]) -> int:
    r = r_of(W)
    return 0 if r == NEG_INF else 1 << int(r)


MAX_FORMULA_MONOMIALS = 16


def cardinality_formula(V: MonomialSet) -> int:
    """|U[f^V]| from r-values alone: the signed inclusion-exclusion
    sum over subsets W of V of (-2)^(|W|-1) * 2^r(W)."""
    if len(V) > MAX_FORMULA_MONOMIALS:
        raise TooManyMonomials(
            f"{len(V)} monomials means 2^{len(V)} subset terms"
        )
    words = sorted(V.words)
    total = 0
    for t in range(1, len(words) + 1):
        sign = (-2) ** (t - 1)
        total += sign * sum(
            _pow2r(W) for W in itertools.combinations(words, t)
        )
    return total


# ---------------------------------------------------------------------------
# Rank-3 triples
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TripleProfile:
    """Column census of a 3 x n word table.

    k1 >= k2 >= k3 count the columns where exactly one row differs from the
    two agreeing others (sorted so the profile does not depend on row
    order); k4 counts all-distinct columns, k_eq all-equal ones.
    """

    k1: int
    k2: int
    k3: int
    k4: int
    k_eq: int

    @property
    def n(self) -> int:
        return self.k1 + self.k2 + self.k3 + self.k4 + self.k_eq


def triple_profile(V: MonomialSet) -> TripleProfile:
    if len(V) != 3:
        raise ValueError("profile is defined for triples")
    rows = sorted(V.words)
    counts = [0, 0, 0]  # odd row is rows[0] / rows[1] / rows[2]
    k4 = k_eq = 0
    for col in zip(*rows):
        p, q, r = col
        if p == q == r:
            k_eq += 1
        elif q == r:
            counts[0] += 1
        elif p == r:
            counts[1] += 1
        elif p == q:
            counts[2] += 1
        else:
            k4 += 1
    k1, k2, k3 = sorted(counts, reverse=True)
    return TripleProfile(k1, k2, k3, k4, k_eq)


def triple_cardinality(profile: TripleProfile, n: int) -> int:
    """|U[f^V]| for a triple with no all-equal column:
    3*2^n - 2*(2^k1 + 2^k2 + 2^k3) + 4*[k4 == 0]."""
    if profile.k_eq:
        raise ProfileHasEqualColumns("formula assumes no all-equal column")
    if profile.n != n:
        raise ValueError("profile does not cover n columns")
    delta = 4 if profile.k4 == 0 else 0
    return 3 * 2 ** n - 2 * (
        2 ** profile.k1 + 2 ** profile.k2 + 2 ** profile.k3
    ) + delta


def triple_is_bitrade(V: MonomialSet) -> tuple[bool, str]:
    """Bitrade verdict for a normalized monomial triple, with the rule that
    fired.  Agrees with the bipartition oracle on the generated set.

    Rules, checked in order on the columns where not all rows agree:
      * two-coordinates: the rows differ in at most 2 columns (the
        two-dimensional case, always bipartite);
      * dominated / blocked: no all-distinct column, and some row agrees
        with another in every column (bitrade) or none does (not);
      * parity: with all-distinct columns present, the pairwise distance
        sum is odd iff k4 is odd (bitrade exactly then).
    """
    words = sorted(V.words)
    if len(words) != 3:
        raise DegenerateTriple("need exactly three distinct monomials")
    for u, v in itertools.combinations(words, 2):
        if cube.hamming_distance(u, v) <= 1:
            raise DegenerateTriple(
                "distance-1 pair collapses; normalize first (rank <= 2 is "
                "always a bitrade)"
            )
    prof = triple_profile(V)
    active = prof.n - prof.k_eq  # columns where the rows are not all equal
    if active <= 2:
        return True, "two-coordinates"
    if prof.k4 == 0:
        if prof.k3 == 0:
            return True, "dominated"
        return False, "blocked-pattern"
    if prof.k4 % 2:
        return True, "odd-distance-sum"
    return False, "even-distance-sum"


# ---------------------------------------------------------------------------
# Sign functions of monomial cubes
# ---------------------------------------------------------------------------

def signed_cube_fn(v: tuple[int, ...]) -> TernFn:
    """Canonical signed function b_v on the cube of v: alternating signs,
    +1 at the cell whose digits take the low member of every factor."""
    n = len(v)
    vals = [0] * 3 ** n
    for combo in itertools.product(*(CUBE_FACTOR[d] for d in v)):
        parity = sum(
            1 for d, x in zip(v, combo) if x == CUBE_FACTOR[d][1]
        )
        vals[cube.cell_of_word(combo, 3)] = -1 if parity % 2 else 1
    return TernFn(n, tuple(vals))


def sign_consistency(u: tuple[int, ...], v: tuple[int, ...]) -> int:
    """Relative sign of b_u and b_v on their (always nonempty, connected)
    cube intersection: +1 when the canonical signings agree there, -1 when
    they oppose.  A pair alone can always be made consistent by flipping
    one sign; for triples in general position the three relations multiply
    to -1 exactly when the pairwise distance sum is odd.
    """
    n = len(u)
    inter = []
    for a, b in zip(u, v):
        fa, fb = set(CUBE_FACTOR[a]), set(CUBE_FACTOR[b])
        common = fa & fb
        if not common:
            raise ValueError("cube factors never have empty intersection")
        inter.append(sorted(common))
    bu, bv = signed_cube_fn(u), signed_cube_fn(v)
    x = tuple(ch[0] for ch in inter)
    c = cube.cell_of_word(x, 3)
    return bu.values[c] * bv.values[c]


def jointly_consistent(words: Sequence[tuple[int, ...]]) -> bool:
    """Whether signs sigma_v exist making every pair opposed on overlap
    (sigma_u * sigma_v * rel(u, v) = -1); parity propagation over the
    complete graph, so a contradiction is an odd relation cycle."""
    ws = list(words)
    sigma: dict[int, int] = {}
    for i in range(len(ws)):
        if i in sigma:
            continue
        sigma[i] = 1
        stack = [i]
        while stack:
            a = stack.pop()
            for b in range(len(ws)):
                if b == a:
                    continue
                need = -sign_consistency(ws[a], ws[b]) * sigma[a]
                if b in sigma:
                    if sigma[b] != need:
                        return False
                else:
                    sigma[b] = need
                    stack.append(b)
    return True


# ---------------------------------------------------------------------------
# Decomposability (Cartesian product over a coordinate split)
# ---------------------------------------------------------------------------

def is_decomposable(U: TradeSet) -> bool:
    """Whether U = A x B over some split of the coordinate set."""
    n = U.n
    if n < 2:
        return False
    words = U.words()
    if not words:
        return False
    coords = range(n)
    for size in range(1, n // 2 + 1):
        for S in itertools.combinations(coords, size):
            T = tuple(i for i in coords if i not in S)
            left = set()
            right = set()
            pairs = set()
            for w in words:
                a = tuple(w[i] for i in S)
                b = tuple(w[i] for i in T)
                left.add(a)
                right.add(b)
                pairs.add((a, b))
            if len(pairs) == len(left) * len(right):
                return True
    return False
