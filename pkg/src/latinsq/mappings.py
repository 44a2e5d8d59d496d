"""Transversals and (quasi)complete mappings of a Latin square.

A transversal of an order-n square is a set of n cells, one per row and
one per column, covering every symbol exactly once.  Picking cell
(x, sigma(x)) in row x makes sigma a permutation; the induced map

    sigma_bar(x) = q(x, sigma(x))

is then also a permutation, and conversely any permutation sigma whose
sigma_bar is a permutation marks a transversal.  Such a sigma is a
complete mapping of the quasigroup.

Relaxing bijectivity one step gives quasicomplete mappings: sigma is a
permutation whose sigma_bar hits n - 1 distinct values, so exactly one
symbol (the repeated one) occurs at two arguments x1 < x2 (the duplicate
pair) and exactly one symbol (the special one) never occurs.  Complete
and quasicomplete mappings are the raw material of the prolongation
constructions in `latinsq.constructions`.

Enumeration is exhaustive backtracking over rows with column/symbol
bitmasks, emitting results in lexicographic sigma order.  Counts grow
quickly with n, so the finders accept a limit; `iter_*` variants yield
lazily.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .core import DomainError, LatinSquare, _check_perm


@dataclass(frozen=True)
class Transversal:
    """A transversal, stored as the column picked in each row.

    cols[x - 1] is the 1-based column chosen in row x; values[x - 1] is
    the symbol found there.  Both are permutations of 1..order.
    """

    order: int
    cols: tuple[int, ...]
    values: tuple[int, ...]

    def cells(self) -> list[tuple[int, int]]:
        """1-based (row, col) pairs, by row."""
        return [(x + 1, c) for x, c in enumerate(self.cols)]


@dataclass(frozen=True)
class MappingRecord:
    """A permutation sigma together with its conjugated map and class.

    kind is "complete" (sigma_bar bijective), "quasicomplete" (one value
    doubled, one missing) or "neither".  For quasicomplete records,
    special is the missing symbol and duplicate_pair the two arguments
    x1 < x2 with sigma_bar(x1) == sigma_bar(x2); both are None otherwise.
    """

    order: int
    sigma: tuple[int, ...]
    sigma_bar: tuple[int, ...]
    kind: str
    special: int | None = None
    duplicate_pair: tuple[int, int] | None = None


def transversal_of(square: LatinSquare, cols: Sequence[int]) -> Transversal:
    """Build (and check) the transversal picking column cols[x-1] in row x.

    Raises DomainError if cols is not a permutation or the chosen cells
    repeat a symbol.
    """
    n = square.order
    cols = tuple(_check_perm(cols, n, "transversal"))
    values = tuple(square.rows[x][cols[x] - 1] for x in range(n))
    if len(set(values)) != n:
        raise DomainError(
            f"cells at columns {cols} repeat a symbol: {values}")
    return Transversal(n, cols, values)


def conjugated_mapping(square: LatinSquare,
                       sigma: Sequence[int]) -> MappingRecord:
    """Classify the permutation sigma by its conjugated map on the square.

    sigma_bar(x) = q(x, sigma(x)).  The record carries the classification
    ("complete" / "quasicomplete" / "neither") plus the special symbol
    and duplicate pair when quasicomplete.
    """
    n = square.order
    sigma = tuple(_check_perm(sigma, n, "sigma"))
    bar = tuple(square.rows[x][sigma[x] - 1] for x in range(n))
    seen = set(bar)
    if len(seen) == n:
        return MappingRecord(n, sigma, bar, "complete")
    if len(seen) == n - 1:
        special = next(s for s in range(1, n + 1) if s not in seen)
        counts: dict[int, list[int]] = {}
        for x, v in enumerate(bar, start=1):
            counts.setdefault(v, []).append(x)
        x1, x2 = next(xs for xs in counts.values() if len(xs) == 2)
        return MappingRecord(n, sigma, bar, "quasicomplete",
                             special=special, duplicate_pair=(x1, x2))
    return MappingRecord(n, sigma, bar, "neither")


def transversal_to_mapping(transversal: Transversal) -> tuple[int, ...]:
    """The permutation sigma carried by a transversal: sigma(x) = its column.

    Classifying this sigma against the square the transversal came from
    always yields a complete mapping (sigma_bar = the transversal values).
    """
    return transversal.cols


def iter_transversals(square: LatinSquare) -> Iterator[Transversal]:
    """Yield every transversal, in lexicographic column order."""
    n = square.order
    rows = square.rows
    full = (1 << n) - 1

    def extend(x: int, cols_used: int, vals_used: int,
               picked: list[int]) -> Iterator[Transversal]:
        if x == n:
            cols = tuple(picked)
            yield Transversal(n, cols,
                              tuple(rows[i][cols[i] - 1] for i in range(n)))
            return
        avail = full & ~cols_used
        while avail:
            bit = avail & -avail
            avail -= bit
            c = bit.bit_length() - 1
            vbit = 1 << (rows[x][c] - 1)
            if vals_used & vbit:
                continue
            picked.append(c + 1)
            yield from extend(x + 1, cols_used | bit, vals_used | vbit, picked)
            picked.pop()

    yield from extend(0, 0, 0, [])


def find_transversals(square: LatinSquare,
                      limit: int | None = None) -> list[Transversal]:
    """All transversals (or the first `limit` of them, lexicographically)."""
    if limit is not None and limit < 1:
        raise DomainError(f"limit must be positive, got {limit}")
    out: list[Transversal] = []
    for t in iter_transversals(square):
        out.append(t)
        if limit is not None and len(out) >= limit:
            break
    return out


def find_disjoint_transversals(square: LatinSquare, k: int,
                               limit: int | None = None
                               ) -> list[tuple[Transversal, ...]]:
    """Families of k pairwise cell-disjoint transversals.

    Two transversals are disjoint when they share no cell, i.e. their
    column picks differ in every row.  Families are unordered; each is
    reported once, members sorted lexicographically, and the family list
    itself is in lexicographic order.  k = 1 yields one singleton family
    per transversal.
    """
    n = square.order
    if not 1 <= k <= n:
        raise DomainError(f"family size must be in 1..{n}, got {k}")
    if limit is not None and limit < 1:
        raise DomainError(f"limit must be positive, got {limit}")
    all_t = find_transversals(square)
    masks = []
    for t in all_t:
        m = 0
        for x, c in enumerate(t.cols):
            m |= 1 << (x * n + (c - 1))
        masks.append(m)

    out: list[tuple[Transversal, ...]] = []

    def extend(start: int, used: int, picked: list[int]) -> bool:
        if len(picked) == k:
            out.append(tuple(all_t[i] for i in picked))
            return limit is not None and len(out) >= limit
        for i in range(start, len(all_t)):
            if masks[i] & used:
                continue
            picked.append(i)
            if extend(i + 1, used | masks[i], picked):
                return True
            picked.pop()
        return False

    extend(0, 0, [])
    return out


def iter_quasicomplete_mappings(square: LatinSquare) -> Iterator[MappingRecord]:
    """Yield every quasicomplete mapping, in lexicographic sigma order.

    Backtracks over sigma row by row, tracking how often each value of
    sigma_bar has appeared; a branch dies as soon as any value appears
    three times or two distinct values appear twice.
    """
    n = square.order
    rows = square.rows
    full = (1 << n) - 1
    sigma = [0] * n
    counts = [0] * (n + 1)

    def extend(x: int, cols_used: int, doubled: int) -> Iterator[MappingRecord]:
        if x == n:
            if doubled:
                yield conjugated_mapping(square, sigma)
            return
        avail = full & ~cols_used
        while avail:
            bit = avail & -avail
            avail -= bit
            c = bit.bit_length() - 1
            v = rows[x][c]
            if counts[v] == 2 or (counts[v] == 1 and doubled):
                continue
            sigma[x] = c + 1
            counts[v] += 1
            yield from extend(x + 1, cols_used | bit,
                              doubled or counts[v] == 2)
            counts[v] -= 1

    yield from extend(0, 0, False)


def find_quasicomplete_mappings(square: LatinSquare,
                                limit: int | None = None) -> list[MappingRecord]:
    """All quasicomplete mappings (or the first `limit`, lexicographically)."""
    if limit is not None and limit < 1:
        raise DomainError(f"limit must be positive, got {limit}")
    out: list[MappingRecord] = []
    for rec in iter_quasicomplete_mappings(square):
        out.append(rec)
        if limit is not None and len(out) >= limit:
            break
    return out
