"""Isometry-group action on ternary functions: orbits, canonical forms,
automorphism orders, and equivalence classification.

The group is generated by coordinate permutations and by independent symbol
permutations inside each coordinate, extended by a global sign flip (the
flip swaps the two legs of a bitrade; without it the one-point cube would
already split {-1,0,+1} into three classes instead of the two observed).
Order: 2 * n! * 6^n for k = 3.

Classification never canonicalizes the whole stream: orbits are closed
under a small generator set with hashed membership, and automorphism orders
come from an independent scan of the full group, so the orbit-stabilizer
identity is a real cross-check rather than a restatement.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Sequence

from . import cube
from .cube import Isometry
from .errors import OrbitTooLarge
from .funcspace import TernFn

_SYM3 = tuple(itertools.permutations((0, 1, 2)))
_ID3 = (0, 1, 2)


def group_order(n: int) -> int:
    return 2 * math.factorial(n) * 6 ** n


def generators(n: int) -> list[Isometry]:
    """Adjacent coordinate transpositions, one symbol transposition and one
    3-cycle per coordinate, and the sign flip."""
    gens = []
    ident = tuple(range(n))
    for i in range(n - 1):
        cp = list(ident)
        cp[i], cp[i + 1] = cp[i + 1], cp[i]
        gens.append(Isometry(tuple(cp), (_ID3,) * n))
    for i in range(n):
        for sp in ((1, 0, 2), (1, 2, 0)):
            sps = [_ID3] * n
            sps[i] = sp
            gens.append(Isometry(ident, tuple(sps)))
    gens.append(Isometry(ident, (_ID3,) * n, sign_flip=True))
    return gens


def all_isometries(n: int, with_sign: bool = True) -> Iterator[Isometry]:
    signs = (False, True) if with_sign else (False,)
    for flip in signs:
        for cp in itertools.permutations(range(n)):
            for sps in itertools.product(_SYM3, repeat=n):
                yield Isometry(cp, sps, flip)


@lru_cache(maxsize=None)
def _gen_cellperms(n: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Generators as (cell permutation, sign) pairs; new[j] = sign*old[p[j]]."""
    out = []
    for g in generators(n):
        fwd = g.cell_map(3)
        inv = [0] * len(fwd)
        for c, y in enumerate(fwd):
            inv[y] = c
        out.append((tuple(inv), -1 if g.sign_flip else 1))
    return tuple(out)


def _encode(values: Sequence[int]) -> bytes:
    return bytes(v + 1 for v in values)


# ---------------------------------------------------------------------------
# Canonical form
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _powers(n: int) -> tuple[int, ...]:
    return tuple(3 ** (n - 1 - i) for i in range(n))


def canonical_form(f: TernFn) -> str:
    """Lexicographically minimal value string over all group images.

    Scans the full group lazily: for every (sign, coordinate permutation,
    symbol permutations) the image is compared cell by cell against the
    incumbent and abandoned at the first losing position, so only
    near-minimal elements pay full cost.  Idempotent: the canonical form of
    the canonical form is itself.
    """
    n = f.n
    vals = f.values
    if n == 0:
        return TernFn(n, (min(vals[0], -vals[0]),)).to_text()
    digits = cube.digit_table(n, 3)
    pw = _powers(n)
    size = 3 ** n
    best: Optional[list[int]] = None
    for sign in (1, -1):
        fv = vals if sign == 1 else tuple(-v for v in vals)
        for cp in itertools.permutations(range(n)):
            for sps in itertools.product(_SYM3, repeat=n):
                # image[j] = fv[preimage cell]; source digit i reads target
                # digit cp[i] through the inverse symbol permutation
                contrib = []
                for i in range(n):
                    sp = sps[i]
                    inv = [0, 0, 0]
                    for d in range(3):
                        inv[sp[d]] = d
                    contrib.append((cp[i], tuple(x * pw[i] for x in inv)))
                if best is None:
                    cur = []
                    for j in range(size):
                        dj = digits[j]
                        src = 0
                        for pos, row in contrib:
                            src += row[dj[pos]]
                        cur.append(fv[src])
                    best = cur
                    continue
                verdict = 0  # -1 new wins, +1 incumbent wins
                cur = []
                for j in range(size):
                    dj = digits[j]
                    src = 0
                    for pos, row in contrib:
                        src += row[dj[pos]]
                    v = fv[src]
                    b = best[j]
                    if v != b:
                        verdict = -1 if v < b else 1
                        break
                    cur.append(v)
                if verdict == -1:
                    for j in range(len(cur), size):
                        dj = digits[j]
                        src = 0
                        for pos, row in contrib:
                            src += row[dj[pos]]
                        cur.append(fv[src])
                    best = cur
    return TernFn(n, tuple(best)).to_text()


# ---------------------------------------------------------------------------
# Orbits and stabilizers
# ---------------------------------------------------------------------------

DEFAULT_ORBIT_LIMIT = 2_000_000


def orbit_values(values: tuple[int, ...], n: int, limit: int = DEFAULT_ORBIT_LIMIT) -> set[bytes]:
    """Closure of a value tuple under the generators, as encoded byte keys."""
    gens = _gen_cellperms(n)
    start = _encode(values)
    seen = {start}
    frontier = [values]
    while frontier:
        nxt = []
        for g in frontier:
            for perm, sign in gens:
                if sign == 1:
                    img = tuple(g[p] for p in perm)
                else:
                    img = tuple(-g[p] for p in perm)
                key = _encode(img)
                if key not in seen:
                    if len(seen) >= limit:
                        raise OrbitTooLarge(f"orbit exceeds {limit} elements")
                    seen.add(key)
                    nxt.append(img)
        frontier = nxt
    return seen


def orbit(f: TernFn, limit: int = DEFAULT_ORBIT_LIMIT) -> set[TernFn]:
    keys = orbit_values(f.values, f.n, limit)
    return {TernFn(f.n, tuple(b - 1 for b in key)) for key in keys}


def aut_order(f: TernFn) -> int:
    """Number of group elements fixing f, by direct scan with early exit."""
    n = f.n
    vals = f.values
    if n == 0:
        return 2 if vals[0] == 0 else 1
    digits = cube.digit_table(n, 3)
    pw = _powers(n)
    size = 3 ** n
    count = 0
    for sign in (1, -1):
        fv = vals if sign == 1 else tuple(-v for v in vals)
        for cp in itertools.permutations(range(n)):
            for sps in itertools.product(_SYM3, repeat=n):
                contrib = []
                for i in range(n):
                    sp = sps[i]
                    inv = [0, 0, 0]
                    for d in range(3):
                        inv[sp[d]] = d
                    contrib.append((cp[i], tuple(x * pw[i] for x in inv)))
                ok = True
                for j in range(size):
                    dj = digits[j]
                    src = 0
                    for pos, row in contrib:
                        src += row[dj[pos]]
                    if fv[src] != vals[j]:
                        ok = False
                        break
                if ok:
                    count += 1
    return count


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

@dataclass
class ClassRecord:
    representative: TernFn
    orbit_size: int
    aut: int
    key: Optional[str] = None

    @property
    def cardinality(self) -> int:
        return self.representative.cardinality

    def to_json(self) -> dict:
        return {
            "key": self.key,
            "orbit": self.orbit_size,
            "aut": self.aut,
            "cardinality": self.cardinality,
        }


def classify(
    stream: Iterable[TernFn],
    n: int,
    with_aut: bool = True,
    with_keys: bool = False,
) -> list[ClassRecord]:
    """Partition a stream (each function exactly once) into orbit classes.

    Orbit sizes come from generator closure; automorphism orders (when
    requested) from the independent full-group scan, making
    orbit * aut == group order a nontrivial invariant.
    """
    seen: set[bytes] = set()
    records: list[ClassRecord] = []
    for f in stream:
        key = _encode(f.values)
        if key in seen:
            continue
        members = orbit_values(f.values, n)
        seen |= members
        records.append(ClassRecord(f, len(members), 0))
    for rec in records:
        if with_aut:
            rec.aut = aut_order(rec.representative)
        else:
            rec.aut = group_order(n) // rec.orbit_size
        if with_keys:
            rec.key = canonical_form(rec.representative)
    records.sort(key=lambda r: (r.cardinality, r.key or _encode(r.representative.values).hex()))
    return records


def double_count_check(classes: Sequence[ClassRecord], expected_total: int, n: int) -> bool:
    """Sum of group_order/aut over classes must reproduce the plain count."""
    return sum(group_order(n) // rec.aut for rec in classes) == expected_total


def equivalent(f: TernFn, g: TernFn) -> bool:
    """Whether some isometry (with optional sign flip) maps f to g."""
    return _match_count(f, g, find_one=True) > 0


def count_isometries_onto(f: TernFn, g: TernFn) -> int:
    """Number of group elements mapping f to g (0 when inequivalent)."""
    return _match_count(f, g, find_one=False)


def _value_counts(values: tuple[int, ...]) -> tuple[int, int, int]:
    p = m = 0
    for v in values:
        if v > 0:
            p += 1
        elif v < 0:
            m += 1
    return (p, m, len(values) - p - m)


def _match_count(f: TernFn, g: TernFn, find_one: bool) -> int:
    """Backtracking matcher: assign source coordinates and symbol
    permutations to target positions one at a time, pruning on value-count
    profiles of the aligned retract lists."""
    if f.n != g.n:
        return 0
    n = f.n
    total = 0
    for sign in (1, -1):
        fv = f.values if sign == 1 else tuple(-v for v in f.values)
        total += _match_rec([fv], [g.values], n)
        if find_one and total:
            return total
    return total


def _retract_tuple(values: tuple[int, ...], m: int, coord: int, val: int) -> tuple[int, ...]:
    cells = cube.retract_cells(m, 3, coord, val)
    return tuple(values[c] for c in cells)


def _match_rec(fs: list[tuple[int, ...]], gs: list[tuple[int, ...]], m: int) -> int:
    if m == 0:
        return 1 if all(a[0] == b[0] for a, b in zip(fs, gs)) else 0
    g_blocks = [
        [_retract_tuple(g, m, 0, s) for s in (0, 1, 2)] for g in gs
    ]
    g_counts = [[_value_counts(b) for b in blocks] for blocks in g_blocks]
    total = 0
    for c in range(m):
        f_blocks = [
            [_retract_tuple(f, m, c, s) for s in (0, 1, 2)] for f in fs
        ]
        f_counts = [[_value_counts(b) for b in blocks] for blocks in f_blocks]
        for sp in _SYM3:
            # target block s comes from source value sp^{-1}(s); iterate via
            # source value d landing in block sp[d]
            ok = True
            for fc, gc in zip(f_counts, g_counts):
                for d in range(3):
                    if fc[d] != gc[sp[d]]:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                continue
            new_fs = []
            new_gs = []
            for fb, gb in zip(f_blocks, g_blocks):
                for d in range(3):
                    new_fs.append(fb[d])
                    new_gs.append(gb[sp[d]])
            total += _match_rec(new_fs, new_gs, m - 1)
    return total
