"""Prolongations and contractions of Latin squares.

A prolongation turns an order-n Latin square into an order-(n+k) one by
projecting the cells of k parameter objects (transversals, or
quasicomplete mappings) into k new rows and columns appended at indices
n+1..n+k, writing a fresh symbol into each vacated cell.  A contraction
is the exact inverse, removing one symbol and the last row and column.

Operations, by parameter object:

* transversal:            prolong_bruck, prolong_belyavskaya
* k disjoint transversals: prolong_disjoint, prolong_belyavskaya_gen
* quasicomplete mapping:   prolong_dd (one), prolong_dd_gen (k disjoint)
* two disjoint transversals, applied in sequence: two_step
* inverses:               contract_bruck, contract_except,
                          feasible_contractions

The single-parameter operations are fully deterministic.  The
generalized ones (prolong_belyavskaya_gen, prolong_dd_gen) place every
forced cell and hand the remainder to the completion solver, returning
one report per completion; an empty list is a legal outcome, not an
error.  New rows and columns always land at the end; use
`latinsq.core.permuted` to move them elsewhere afterwards.

Every report records, for each output cell, where its value came from
(see CellOrigin), which is what makes the contractions and the test
suite able to audit outputs cell by cell.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Sequence

from .core import (
    DomainError,
    GridError,
    InfeasibleError,
    LatinError,
    LatinSquare,
    PartialLatinSquare,
    _as_square,
    _check_perm,
    complete_partial,
    cyclic_square,
)
from .mappings import (
    MappingRecord,
    Transversal,
    conjugated_mapping,
    transversal_of,
)

ORIGIN_KINDS = frozenset({
    "unchanged", "projected_row", "projected_col", "vacated",
    "kept", "border_fill", "diagonal_seed", "completed",
})


@dataclass(frozen=True)
class CellOrigin:
    """Why an output cell holds its value.

    kind:
      unchanged      copied from the input square
      vacated        a projected parameter cell, refilled with a new symbol
      projected_col  a parameter cell's value, moved to its row's new column
      projected_row  a parameter cell's value, moved to its column's new row
      kept           a parameter cell exempted from projection
      border_fill    deterministic filler in the new rows/columns
      diagonal_seed  deterministic diagonal entry of the new block
      completed      resolved by the completion search

    step is the 1-based index of the parameter object (transversal or
    mapping) responsible, or None where no single one is (unchanged,
    completed, and the literal bottom block of prolong_disjoint).
    """

    kind: str
    step: int | None = None

    def __post_init__(self):
        if self.kind not in ORIGIN_KINDS:
            raise DomainError(f"unknown origin kind {self.kind!r}")

    def __str__(self) -> str:
        return self.kind if self.step is None else f"{self.kind}({self.step})"


@dataclass(frozen=True)
class ConstructionReport:
    """A constructed square plus a per-cell audit trail.

    provenance maps every 1-based (row, col) of the output to a
    CellOrigin.  completions_found is the number of completions the
    search produced (generalized constructions only; all reports of one
    call share the value).  intermediate is the classification record of
    the second-step mapping (two_step only).
    """

    output: LatinSquare
    provenance: Mapping[tuple[int, int], CellOrigin] = field(repr=False)
    completions_found: int | None = None
    intermediate: MappingRecord | None = None

    def __post_init__(self):
        m = self.output.order
        cells = {(r, c) for r in range(1, m + 1) for c in range(1, m + 1)}
        if set(self.provenance) != cells:
            raise DomainError("provenance must cover every output cell exactly once")
        object.__setattr__(self, "provenance",
                           MappingProxyType(dict(self.provenance)))


def _as_transversal(square: LatinSquare, t) -> Transversal:
    cols = t.cols if isinstance(t, Transversal) else t
    return transversal_of(square, cols)


def _as_quasicomplete(square: LatinSquare, m) -> MappingRecord:
    sigma = m.sigma if isinstance(m, MappingRecord) else m
    record = conjugated_mapping(square, sigma)
    if record.kind != "quasicomplete":
        raise DomainError(
            f"sigma {record.sigma} is {record.kind}, not quasicomplete")
    return record


def _check_disjoint(cell_sets: Sequence[Sequence[tuple[int, int]]],
                    what: str) -> None:
    seen: dict[tuple[int, int], int] = {}
    for j, cells in enumerate(cell_sets, start=1):
        for cell in cells:
            if cell in seen:
                raise DomainError(
                    f"{what} {seen[cell]} and {j} share cell {cell}")
            seen[cell] = j


def _plan(n: int, k: int, fill, col_assign, row_assign):
    """Validate the shared prolongation parameters; apply defaults."""
    if not 1 <= k <= n:
        raise DomainError(f"need between 1 and {n} parameter objects, got {k}")
    if fill is None:
        fill = tuple(range(n + 1, n + k + 1))
    fill = tuple(fill)
    if sorted(fill) != list(range(n + 1, n + k + 1)):
        raise DomainError(
            f"fill must be a bijection onto {n + 1}..{n + k}, got {fill}")
    ca = tuple(_check_perm(col_assign, k, "col_assign")) if col_assign \
        else tuple(range(1, k + 1))
    ra = tuple(_check_perm(row_assign, k, "row_assign")) if row_assign \
        else tuple(range(1, k + 1))
    return fill, ca, ra


def _base(square: LatinSquare, k: int):
    """Order-(n+k) working grid (0 = unfilled) with unchanged provenance."""
    n = square.order
    m = n + k
    grid = [[0] * m for _ in range(m)]
    prov: dict[tuple[int, int], CellOrigin] = {}
    for r in range(n):
        for c in range(n):
            grid[r][c] = square.rows[r][c]
            prov[(r + 1, c + 1)] = CellOrigin("unchanged")
    return grid, prov


def _finish(grid, prov, **extra) -> ConstructionReport:
    try:
        out = LatinSquare(tuple(tuple(row) for row in grid))
    except GridError as exc:  # unreachable for valid parameters
        raise LatinError(f"construction produced an invalid square: {exc}")
    return ConstructionReport(out, prov, **extra)


def prolong_bruck(square, transversal) -> ConstructionReport:
    """Order n+1 from one transversal.

    Each transversal cell's value moves into the new column of its row
    and the new row of its column; the cell itself receives the new
    symbol n+1, as does the corner (n+1, n+1).
    """
    square = _as_square(square)
    t = _as_transversal(square, transversal)
    n = square.order
    m = n + 1
    grid, prov = _base(square, 1)
    for x in range(1, n + 1):
        c, v = t.cols[x - 1], t.values[x - 1]
        grid[x - 1][c - 1] = m
        prov[(x, c)] = CellOrigin("vacated", 1)
        grid[x - 1][m - 1] = v
        prov[(x, m)] = CellOrigin("projected_col", 1)
        grid[m - 1][c - 1] = v
        prov[(m, c)] = CellOrigin("projected_row", 1)
    grid[m - 1][m - 1] = m
    prov[(m, m)] = CellOrigin("border_fill", 1)
    return _finish(grid, prov)


def prolong_disjoint(square, transversals, fill=None, col_assign=None,
                     row_assign=None, bottom=None) -> ConstructionReport:
    """Order n+k from k pairwise disjoint transversals.

    Transversal j's values are projected into new column n+col_assign(j)
    and new row n+row_assign(j); its vacated cells receive fill(j).  The
    k x k block at the new rows x new columns is copied literally from
    `bottom`, a Latin square on the symbols n+1..n+k (default: the
    cyclic square on those symbols).  With k = 1 and defaults this is
    exactly prolong_bruck.
    """
    square = _as_square(square)
    n = square.order
    ts = [_as_transversal(square, t) for t in transversals]
    k = len(ts)
    fill, ca, ra = _plan(n, k, fill, col_assign, row_assign)
    _check_disjoint([t.cells() for t in ts], "transversals")
    bot = _check_bottom(bottom, n, k)

    grid, prov = _base(square, k)
    for j, t in enumerate(ts, start=1):
        nc, nr = n + ca[j - 1], n + ra[j - 1]
        for x in range(1, n + 1):
            c, v = t.cols[x - 1], t.values[x - 1]
            grid[x - 1][c - 1] = fill[j - 1]
            prov[(x, c)] = CellOrigin("vacated", j)
            grid[x - 1][nc - 1] = v
            prov[(x, nc)] = CellOrigin("projected_col", j)
            grid[nr - 1][c - 1] = v
            prov[(nr, c)] = CellOrigin("projected_row", j)
    for i in range(k):
        for j in range(k):
            grid[n + i][n + j] = bot[i][j]
            prov[(n + i + 1, n + j + 1)] = CellOrigin("border_fill")
    return _finish(grid, prov)


def _check_bottom(bottom, n: int, k: int) -> tuple[tuple[int, ...], ...]:
    if bottom is None:
        return tuple(tuple(v + n for v in row) for row in cyclic_square(k).rows)
    rows = tuple(tuple(row) for row in bottom)
    if len(rows) != k or any(len(r) != k for r in rows):
        raise DomainError(f"bottom block must be {k}x{k}")
    try:
        LatinSquare(tuple(tuple(v - n for v in row) for row in rows))
    except (GridError, TypeError):
        raise DomainError(
            f"bottom block must be a Latin square on symbols "
            f"{n + 1}..{n + k}, got {rows}") from None
    return rows


def prolong_belyavskaya(square, transversal, excepted) -> ConstructionReport:
    """Order n+1 from a transversal with one cell exempted.

    As prolong_bruck, except the transversal cell `excepted` (1-based
    (row, col), which must lie on the transversal) keeps its value a;
    the border cells of its row and column receive the new symbol, and
    the corner receives a.  Equivalently: Bruck's output with the 2x2
    intercalate at rows {excepted.row, n+1} x cols {excepted.col, n+1}
    swapped.
    """
    square = _as_square(square)
    t = _as_transversal(square, transversal)
    n = square.order
    m = n + 1
    x0, y0 = excepted
    if not (1 <= x0 <= n and t.cols[x0 - 1] == y0):
        raise DomainError(
            f"excepted cell {excepted} does not lie on the transversal")
    a = t.values[x0 - 1]
    grid, prov = _base(square, 1)
    for x in range(1, n + 1):
        c, v = t.cols[x - 1], t.values[x - 1]
        if x == x0:
            prov[(x, c)] = CellOrigin("kept", 1)
            grid[x - 1][m - 1] = m
            prov[(x, m)] = CellOrigin("border_fill", 1)
            grid[m - 1][c - 1] = m
            prov[(m, c)] = CellOrigin("border_fill", 1)
            continue
        grid[x - 1][c - 1] = m
        prov[(x, c)] = CellOrigin("vacated", 1)
        grid[x - 1][m - 1] = v
        prov[(x, m)] = CellOrigin("projected_col", 1)
        grid[m - 1][c - 1] = v
        prov[(m, c)] = CellOrigin("projected_row", 1)
    grid[m - 1][m - 1] = a
    prov[(m, m)] = CellOrigin("diagonal_seed", 1)
    return _finish(grid, prov)


def prolong_belyavskaya_gen(square, pairs, fill=None, col_assign=None,
                            row_assign=None,
                            limit: int | None = None) -> list[ConstructionReport]:
    """Order n+k from k disjoint transversals, each with an exempted cell.

    pairs is a sequence of (transversal, excepted) with excepted a
    1-based (row, col) on its transversal.  Non-exempted cells are
    projected and vacated as in prolong_disjoint; each exempted cell
    keeps its value, and the border cells it would have projected into
    receive fill(j) instead.  The k x k bottom block is then resolved by
    the completion search: one report per completion (at most `limit`),
    in the solver's deterministic order.  An empty list means no
    completion exists.
    """
    square = _as_square(square)
    n = square.order
    ts = []
    excepts = []
    for t, e in pairs:
        t = _as_transversal(square, t)
        x0, y0 = e
        if not (1 <= x0 <= n and t.cols[x0 - 1] == y0):
            raise DomainError(
                f"excepted cell {tuple(e)} does not lie on its transversal")
        ts.append(t)
        excepts.append((x0, y0))
    k = len(ts)
    fill, ca, ra = _plan(n, k, fill, col_assign, row_assign)
    _check_disjoint([t.cells() for t in ts], "transversals")

    grid, prov = _base(square, k)
    for j, (t, (x0, y0)) in enumerate(zip(ts, excepts), start=1):
        nc, nr = n + ca[j - 1], n + ra[j - 1]
        for x in range(1, n + 1):
            c, v = t.cols[x - 1], t.values[x - 1]
            if x == x0:
                prov[(x, c)] = CellOrigin("kept", j)
                grid[x - 1][nc - 1] = fill[j - 1]
                prov[(x, nc)] = CellOrigin("border_fill", j)
                grid[nr - 1][c - 1] = fill[j - 1]
                prov[(nr, c)] = CellOrigin("border_fill", j)
                continue
            grid[x - 1][c - 1] = fill[j - 1]
            prov[(x, c)] = CellOrigin("vacated", j)
            grid[x - 1][nc - 1] = v
            prov[(x, nc)] = CellOrigin("projected_col", j)
            grid[nr - 1][c - 1] = v
            prov[(nr, c)] = CellOrigin("projected_row", j)
    return _complete_reports(grid, prov, n, k, limit)


def _complete_reports(grid, prov, n: int, k: int,
                      limit: int | None) -> list[ConstructionReport]:
    """Resolve the unfilled cells by search; one report per completion."""
    partial = PartialLatinSquare(tuple(
        tuple(v if v else None for v in row) for row in grid))
    for (r, c) in partial.empty_cells():
        prov[(r, c)] = CellOrigin("completed")
    completions = complete_partial(partial, limit=limit)
    return [ConstructionReport(sq, dict(prov), completions_found=len(completions))
            for sq in completions]


def prolong_dd(square, mapping, kept_x: int | None = None) -> ConstructionReport:
    """Order n+1 from a quasicomplete mapping.

    All cells (x, sigma(x)) with x != kept_x are projected and vacated
    as in prolong_bruck; the cell at kept_x (which must be one of the
    duplicate pair, default its larger element) keeps its value, its
    border cells receive the new symbol, and the corner receives the
    special element.
    """
    square = _as_square(square)
    rec = _as_quasicomplete(square, mapping)
    n = square.order
    m = n + 1
    if kept_x is None:
        kept_x = rec.duplicate_pair[1]
    if kept_x not in rec.duplicate_pair:
        raise DomainError(
            f"kept row {kept_x} is not in the duplicate pair {rec.duplicate_pair}")
    grid, prov = _base(square, 1)
    for x in range(1, n + 1):
        c, v = rec.sigma[x - 1], rec.sigma_bar[x - 1]
        if x == kept_x:
            prov[(x, c)] = CellOrigin("kept", 1)
            grid[x - 1][m - 1] = m
            prov[(x, m)] = CellOrigin("border_fill", 1)
            grid[m - 1][c - 1] = m
            prov[(m, c)] = CellOrigin("border_fill", 1)
            continue
        grid[x - 1][c - 1] = m
        prov[(x, c)] = CellOrigin("vacated", 1)
        grid[x - 1][m - 1] = v
        prov[(x, m)] = CellOrigin("projected_col", 1)
        grid[m - 1][c - 1] = v
        prov[(m, c)] = CellOrigin("projected_row", 1)
    grid[m - 1][m - 1] = rec.special
    prov[(m, m)] = CellOrigin("diagonal_seed", 1)
    return _finish(grid, prov)


def prolong_dd_gen(square, pairs, fill=None, col_assign=None, row_assign=None,
                   seed_diagonal: bool = True,
                   limit: int | None = None) -> list[ConstructionReport]:
    """Order n+k from k cell-disjoint quasicomplete mappings.

    pairs is a sequence of (mapping, kept_x) with kept_x in the
    mapping's duplicate pair (None = its larger element).  Non-kept
    cells are projected and vacated with fill(j); kept cells stay.  When
    seed_diagonal, the diagonal cell (n+row_assign(j), n+col_assign(j))
    is seeded with mapping j's special element.  The remaining border
    and block cells are resolved by the completion search: one report
    per completion (at most `limit`); empty list if none exists.
    """
    square = _as_square(square)
    n = square.order
    recs = []
    keeps = []
    for m_, kx in pairs:
        rec = _as_quasicomplete(square, m_)
        if kx is None:
            kx = rec.duplicate_pair[1]
        if kx not in rec.duplicate_pair:
            raise DomainError(
                f"kept row {kx} is not in the duplicate pair {rec.duplicate_pair}")
        recs.append(rec)
        keeps.append(kx)
    k = len(recs)
    fill, ca, ra = _plan(n, k, fill, col_assign, row_assign)
    _check_disjoint(
        [[(x, rec.sigma[x - 1]) for x in range(1, n + 1)] for rec in recs],
        "mappings")

    grid, prov = _base(square, k)
    for j, (rec, kx) in enumerate(zip(recs, keeps), start=1):
        nc, nr = n + ca[j - 1], n + ra[j - 1]
        for x in range(1, n + 1):
            c, v = rec.sigma[x - 1], rec.sigma_bar[x - 1]
            if x == kx:
                prov[(x, c)] = CellOrigin("kept", j)
                continue
            grid[x - 1][c - 1] = fill[j - 1]
            prov[(x, c)] = CellOrigin("vacated", j)
            grid[x - 1][nc - 1] = v
            prov[(x, nc)] = CellOrigin("projected_col", j)
            grid[nr - 1][c - 1] = v
            prov[(nr, c)] = CellOrigin("projected_row", j)
        if seed_diagonal:
            grid[nr - 1][nc - 1] = rec.special
            prov[(nr, nc)] = CellOrigin("diagonal_seed", j)
    return _complete_reports(grid, prov, n, k, limit)


def two_step(square, t1, t2, first: str = "bruck", excepted=None,
             kept_choice: int | None = None) -> ConstructionReport:
    """Order n+2 by a single-transversal step followed by a mapping step.

    Applies `first` ("bruck", or "belyavskaya" with its excepted cell)
    to (square, t1), then extends t2's columns to a permutation sigma2
    of 1..n+1 by sigma2(n+1) = n+1 and classifies it against the
    intermediate square.  Because t1 and t2 are disjoint, sigma2 is
    complete after a bruck first step (second step: prolong_bruck) and
    quasicomplete after a belyavskaya one (second step: prolong_dd with
    kept_choice, default n+1).  The report's provenance labels first-
    step cells with step 1 and second-step cells with step 2, and its
    `intermediate` field carries sigma2's classification record.
    """
    square = _as_square(square)
    ta = _as_transversal(square, t1)
    tb = _as_transversal(square, t2)
    n = square.order
    _check_disjoint([ta.cells(), tb.cells()], "transversals")

    if first == "bruck":
        rep1 = prolong_bruck(square, ta)
    elif first == "belyavskaya":
        if excepted is None:
            raise DomainError("a belyavskaya first step needs an excepted cell")
        rep1 = prolong_belyavskaya(square, ta, excepted)
    else:
        raise DomainError(f"first step must be bruck or belyavskaya, got {first!r}")

    qp = rep1.output
    sigma2 = tb.cols + (n + 1,)
    rec2 = conjugated_mapping(qp, sigma2)
    if rec2.kind == "complete":
        rep2 = prolong_bruck(qp, transversal_of(qp, sigma2))
    elif rec2.kind == "quasicomplete":
        kept = kept_choice if kept_choice is not None else n + 1
        rep2 = prolong_dd(qp, rec2, kept)
    else:  # impossible for disjoint transversals
        raise LatinError("two-step invariant violated: sigma2 is neither "
                         "complete nor quasicomplete")

    prov: dict[tuple[int, int], CellOrigin] = {}
    for cell, origin in rep2.provenance.items():
        if origin.kind == "unchanged":
            prov[cell] = rep1.provenance.get(cell, origin)
        else:
            prov[cell] = CellOrigin(origin.kind,
                                    2 if origin.step is not None else None)
    return ConstructionReport(rep2.output, prov, intermediate=rec2)


def contract_bruck(square, deleted: int) -> tuple[LatinSquare, Transversal]:
    """Invert prolong_bruck: remove one symbol and the last row and column.

    Requires the corner (m, m) to hold `deleted`.  In each remaining
    row, the cell holding `deleted` is repaired with that row's last-
    column value; those cells form the recovered transversal.  When
    deleted != m, surviving symbols above it shift down by one so the
    result uses 1..m-1.  Raises InfeasibleError when the corner does not
    match or the repaired grid is not Latin (not every square arises
    from a prolongation).
    """
    square = _as_square(square)
    m = square.order
    deleted = _check_deleted(m, deleted)
    if square.cell(m, m) != deleted:
        raise InfeasibleError(
            f"corner holds {square.cell(m, m)}, not the deleted symbol {deleted}")
    n = m - 1
    grid = [list(row[:n]) for row in square.rows[:n]]
    cols = []
    for r in range(1, n + 1):
        c = square.rows[r - 1].index(deleted) + 1
        cols.append(c)
        grid[r - 1][c - 1] = square.cell(r, m)
    result = _relabel(grid, deleted, m)
    return result, transversal_of(result, cols)


def contract_except(square, deleted: int) -> tuple[LatinSquare, MappingRecord]:
    """Invert prolong_belyavskaya / prolong_dd.

    Requires the corner (m, m) NOT to hold `deleted`; the row r0 and
    column c0 with q(r0, m) = q(m, c0) = deleted mark the cell that was
    exempted from projection, which is left untouched.  Every other row
    is repaired as in contract_bruck.  Returns the contracted square and
    the recovered sigma classified against it: complete means the input
    came from prolong_belyavskaya, quasicomplete from prolong_dd.
    """
    square = _as_square(square)
    m = square.order
    deleted = _check_deleted(m, deleted)
    if square.cell(m, m) == deleted:
        raise InfeasibleError(
            f"corner holds the deleted symbol {deleted}; use contract_bruck")
    n = m - 1
    r0 = next(r for r in range(1, n + 1) if square.cell(r, m) == deleted)
    c0 = square.rows[m - 1].index(deleted) + 1
    grid = [list(row[:n]) for row in square.rows[:n]]
    sigma = [0] * n
    sigma[r0 - 1] = c0
    for r in range(1, n + 1):
        if r == r0:
            continue
        c = square.rows[r - 1].index(deleted) + 1
        sigma[r - 1] = c
        grid[r - 1][c - 1] = square.cell(r, m)
    result = _relabel(grid, deleted, m)
    return result, conjugated_mapping(result, sigma)


def _check_deleted(m: int, deleted: int) -> int:
    if m < 2:
        raise DomainError("cannot contract an order-1 square")
    if not 1 <= deleted <= m:
        raise DomainError(f"deleted symbol must be in 1..{m}, got {deleted}")
    return deleted


def _relabel(grid, deleted: int, m: int) -> LatinSquare:
    rows = tuple(tuple(v - 1 if v > deleted else v for v in row)
                 for row in grid) if deleted != m \
        else tuple(tuple(row) for row in grid)
    try:
        return LatinSquare(rows)
    except GridError:
        raise InfeasibleError(
            f"removing symbol {deleted} does not leave a Latin square") from None


def feasible_contractions(square, method: str):
    """Try every deleted symbol; return [(deleted, square, parameter), ...].

    method is "bruck" or "except".  Symbols whose contraction raises
    InfeasibleError are skipped; the list may be empty.
    """
    if method not in ("bruck", "except"):
        raise DomainError(f"method must be bruck or except, got {method!r}")
    square = _as_square(square)
    op = contract_bruck if method == "bruck" else contract_except
    found = []
    for deleted in range(1, square.order + 1):
        try:
            small, param = op(square, deleted)
        except InfeasibleError:
            continue
        found.append((deleted, small, param))
    return found
