"""Geometry of the q-ary hypercube Q_k^n.

Words are tuples of n digits in {0..k-1}.  Every dense array in the package
is indexed by the *cell* of a word: the base-k integer value of its digits
with coordinate 0 as the most significant digit.  For k = 3 the digit 2
plays two roles at once: it is the maximal element of the partial order
(every other digit sits below it) and it represents -1 of GF(3) in the
centered convention used by the function-space layer.

A *line* is a 1-dimensional face: k pairwise adjacent words differing in a
single coordinate.  Lines are the maximal cliques of the Hamming graph and
everything trade-related is phrased through them, so their tables are
precomputed once per (n, k) and shared read-only.

Isometries of the cube are generated by coordinate permutations and by
independent symbol permutations in each coordinate.  ``Isometry`` carries an
extra ``sign_flip`` bit which only matters when acting on sign functions:
it swaps the two legs of a bitrade.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, NamedTuple


def ncells(n: int, k: int) -> int:
    return k ** n


def cell_of_word(word: tuple[int, ...], k: int) -> int:
    c = 0
    for d in word:
        c = c * k + d
    return c


def word_of_cell(cell: int, n: int, k: int) -> tuple[int, ...]:
    ds = [0] * n
    for i in range(n - 1, -1, -1):
        ds[i] = cell % k
        cell //= k
    return tuple(ds)


def all_words(n: int, k: int) -> Iterator[tuple[int, ...]]:
    return itertools.product(range(k), repeat=n)


@lru_cache(maxsize=None)
def digit_table(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    """digit_table(n,k)[cell] = word digits of that cell."""
    return tuple(word_of_cell(c, n, k) for c in range(k ** n))


def hamming_distance(u: tuple[int, ...], v: tuple[int, ...]) -> int:
    return sum(1 for a, b in zip(u, v) if a != b)


def weight(u: tuple[int, ...]) -> int:
    return sum(1 for a in u if a)


# ---------------------------------------------------------------------------
# Lines (1-dimensional faces / maximal cliques)
# ---------------------------------------------------------------------------

class Line(NamedTuple):
    direction: int
    base: tuple[int, ...]      # word with digit 0 at `direction`
    cells: tuple[int, ...]     # the k member cells in digit order


@lru_cache(maxsize=None)
def lines(n: int, k: int) -> tuple[Line, ...]:
    """All n*k^(n-1) lines, direction-major, base in lex order."""
    if n == 0:
        return ()
    out = []
    step_of = [k ** (n - 1 - i) for i in range(n)]
    for direction in range(n):
        step = step_of[direction]
        for base_word in itertools.product(
            *[range(k) if i != direction else (0,) for i in range(n)]
        ):
            base_cell = cell_of_word(base_word, k)
            cells = tuple(base_cell + d * step for d in range(k))
            out.append(Line(direction, base_word, cells))
    return tuple(out)


@lru_cache(maxsize=None)
def line_masks(n: int, k: int) -> tuple[int, ...]:
    """Per line, the support bitmask of its member cells."""
    masks = []
    for ln in lines(n, k):
        m = 0
        for c in ln.cells:
            m |= 1 << c
        masks.append(m)
    return tuple(masks)


@lru_cache(maxsize=None)
def lines_through(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    """lines_through(n,k)[cell] = indices of the n lines containing the cell."""
    table: list[list[int]] = [[] for _ in range(k ** n)]
    for idx, ln in enumerate(lines(n, k)):
        for c in ln.cells:
            table[c].append(idx)
    return tuple(tuple(t) for t in table)


# ---------------------------------------------------------------------------
# Partial order: digit k-1 is maximal, all other digits incomparable
# ---------------------------------------------------------------------------

def is_below(x: tuple[int, ...], y: tuple[int, ...], k: int) -> bool:
    """x <= y in the coordinatewise order where only k-1 dominates."""
    return all(a == b or b == k - 1 for a, b in zip(x, y))


def below(y: tuple[int, ...], k: int) -> list[tuple[int, ...]]:
    """Minimal words under y: each maximal digit replaced by any of 0..k-2.

    The result has (k-1)^s elements where s counts the maximal digits of y;
    it is the trace of the face G_y on the bottom subcube Q_{k-1}^n.
    """
    choices = [range(k - 1) if d == k - 1 else (d,) for d in y]
    return [tuple(w) for w in itertools.product(*choices)]


@lru_cache(maxsize=None)
def below_cells(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    """below_cells(n,k)[cell] = cells of the minimal words under that cell."""
    return tuple(
        tuple(cell_of_word(w, k) for w in below(word, k))
        for word in all_words(n, k)
    )


# ---------------------------------------------------------------------------
# Retract indexing
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def retract_cells(n: int, k: int, coord: int, value: int) -> tuple[int, ...]:
    """Cells of the hyperface x_coord = value, in sub-cube cell order.

    Entry j is the full-cube cell whose word, with the fixed coordinate
    dropped, has sub-cube cell index j.
    """
    if not 0 <= coord < n:
        raise ValueError(f"coord {coord} out of range for n={n}")
    if not 0 <= value < k:
        raise ValueError(f"value {value} out of range for k={k}")
    out = []
    for sub in itertools.product(range(k), repeat=n - 1):
        word = sub[:coord] + (value,) + sub[coord:]
        out.append(cell_of_word(word, k))
    return tuple(out)


def retract(obj, coord: int, value: int):
    """Restrict a TradeSet / TernFn / BoolFn to x_coord = value, re-indexed
    to dimension n-1.  Unitrade / bitrade / MDS status survives restriction.
    """
    return obj.retract(coord, value)


# ---------------------------------------------------------------------------
# Isometries
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Isometry:
    """coord_perm sends coordinate i of the source to coord_perm[i] of the
    image; symbol_perms[i] permutes the alphabet inside source coordinate i.
    On words: y[coord_perm[i]] = symbol_perms[i][x[i]].
    """

    coord_perm: tuple[int, ...]
    symbol_perms: tuple[tuple[int, ...], ...]
    sign_flip: bool = False

    @property
    def n(self) -> int:
        return len(self.coord_perm)

    @property
    def k(self) -> int:
        return len(self.symbol_perms[0]) if self.symbol_perms else 0

    @staticmethod
    def identity(n: int, k: int) -> "Isometry":
        return Isometry(tuple(range(n)), (tuple(range(k)),) * n, False)

    @staticmethod
    def random(rng: random.Random, n: int, k: int, allow_sign: bool = True) -> "Isometry":
        cp = list(range(n))
        rng.shuffle(cp)
        sps = []
        for _ in range(n):
            sp = list(range(k))
            rng.shuffle(sp)
            sps.append(tuple(sp))
        flip = allow_sign and bool(rng.getrandbits(1))
        return Isometry(tuple(cp), tuple(sps), flip)

    def apply_word(self, word: tuple[int, ...]) -> tuple[int, ...]:
        out = [0] * self.n
        for i, d in enumerate(word):
            out[self.coord_perm[i]] = self.symbol_perms[i][d]
        return tuple(out)

    def compose(self, other: "Isometry") -> "Isometry":
        """self after other: (self.compose(other))(x) = self(other(x))."""
        n = self.n
        cp = tuple(self.coord_perm[other.coord_perm[i]] for i in range(n))
        sps = []
        for i in range(n):
            inner = other.symbol_perms[i]
            outer = self.symbol_perms[other.coord_perm[i]]
            sps.append(tuple(outer[inner[d]] for d in range(len(inner))))
        return Isometry(cp, tuple(sps), self.sign_flip ^ other.sign_flip)

    def inverse(self) -> "Isometry":
        n = self.n
        inv_cp = [0] * n
        for i, j in enumerate(self.coord_perm):
            inv_cp[j] = i
        sps = [()] * n
        for i in range(n):
            sp = self.symbol_perms[i]
            inv_sp = [0] * len(sp)
            for d, e in enumerate(sp):
                inv_sp[e] = d
            sps[self.coord_perm[i]] = tuple(inv_sp)
        # note: inverse symbol perm for image coordinate j acts in source
        # coordinate position j of the inverse map
        return Isometry(tuple(inv_cp), tuple(sps), self.sign_flip)

    def cell_map(self, k: int) -> tuple[int, ...]:
        """cell_map[source cell] = image cell."""
        n = self.n
        pw = [k ** (n - 1 - i) for i in range(n)]
        contrib = [
            tuple(self.symbol_perms[i][d] * pw[self.coord_perm[i]] for d in range(k))
            for i in range(n)
        ]
        table = digit_table(n, k)
        return tuple(
            sum(contrib[i][ds[i]] for i in range(n)) for ds in table
        )


def apply_isometry(g: Isometry, obj):
    """Image of a TradeSet or TernFn under g.

    Cardinality, the unitrade predicate, bipartiteness and rank are all
    invariant; for TernFn, sign_flip additionally negates every value.
    """
    return obj.apply_isometry(g)
