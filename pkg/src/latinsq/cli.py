"""Command-line front end for the Latin square toolkit.

Subcommands:

    verify FILE                      check a square against the invariants
    gen --order N [--seed S]         emit a seeded pseudo-random square
    complete FILE [--all|--limit N]  enumerate completions of a partial square
    transversals FILE [...]          count or list transversals / families
    qcmappings FILE [...]            count or list quasicomplete mappings
    prolong FILE --method M [...]    run a prolongation construction
    contract FILE --method M [...]   run a contraction

All squares travel in the LSQ text format (see latinsq.core); FILE may
be '-' for standard input.  Transversals and mappings on the command
line are one-line column permutations such as "3 1 2"; excepted cells
are named by row only (`--except ROW`, the column is implied by the
transversal), as are kept rows (`--keep ROW`).

Exit codes: 0 success; 1 `verify` found an invalid square; 2 usage,
parse, or parameter errors; 3 infeasible request (no completion or
contraction exists).  Output is byte-deterministic for identical
invocations.
"""

from __future__ import annotations

import argparse
import sys

from . import constructions, core, mappings
from .core import DomainError, GridError, InfeasibleError


def main() -> None:
    sys.exit(run())


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits itself on --help and usage errors
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except (GridError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latinsq",
        description="Latin square prolongations, contractions, and the "
                    "transversal/mapping enumeration behind them.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("verify", help="check a square file against the Latin invariants")
    p.add_argument("file", help="LSQ file, or - for stdin")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("gen", help="emit a seeded pseudo-random Latin square")
    p.add_argument("--order", type=int, required=True, metavar="N")
    p.add_argument("--seed", type=int, default=0, metavar="S")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("complete", help="enumerate completions of a partial square")
    p.add_argument("file")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--all", action="store_true", help="emit every completion")
    g.add_argument("--limit", type=int, default=1, metavar="N",
                   help="emit at most N completions (default 1; 0 = no limit)")
    p.set_defaults(func=_cmd_complete)

    for name, help_ in (("transversals", "count or list transversals"),
                        ("qcmappings", "count or list quasicomplete mappings")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("file")
        g = p.add_mutually_exclusive_group()
        g.add_argument("--count", dest="mode", action="store_const", const="count",
                       help="print only the count (default)")
        g.add_argument("--list", dest="mode", action="store_const", const="list",
                       help="print one line per result")
        if name == "transversals":
            p.add_argument("--disjoint", type=int, metavar="K",
                           help="work on families of K pairwise disjoint transversals")
        p.add_argument("--limit", type=int, metavar="N",
                       help="cap --list output at N lines (0 = no limit)")
        p.set_defaults(mode="count",
                       func=_cmd_transversals if name == "transversals"
                       else _cmd_qcmappings)

    p = sub.add_parser("prolong", help="run a prolongation construction")
    p.add_argument("file")
    p.add_argument("--method", required=True,
                   choices=["bruck", "disjoint", "belyavskaya", "gen-belyavskaya",
                            "dd", "gen-dd", "two-step"])
    p.add_argument("--transversal", action="append", metavar="PERM",
                   help="transversal columns 'c1 c2 ... cn' (repeatable)")
    p.add_argument("--sigma", action="append", metavar="PERM",
                   help="mapping 's1 s2 ... sn' (repeatable)")
    p.add_argument("--except", dest="excepts", action="append", type=int,
                   metavar="ROW", help="row of the cell exempted from projection")
    p.add_argument("--keep", dest="keeps", action="append", type=int,
                   metavar="ROW", help="kept row of a quasicomplete mapping")
    p.add_argument("--fill", metavar="LIST",
                   help="new symbol written into each transversal's vacated cells")
    p.add_argument("--cols", metavar="PERM",
                   help="new-column assignment (permutation of 1..k)")
    p.add_argument("--rows", metavar="PERM",
                   help="new-row assignment (permutation of 1..k)")
    p.add_argument("--bottom", metavar="FILE",
                   help="order-k LSQ square for the bottom block (symbols 1..k)")
    p.add_argument("--t1", metavar="PERM", help="first transversal (two-step)")
    p.add_argument("--t2", metavar="PERM", help="second transversal (two-step)")
    p.add_argument("--first", choices=["bruck", "belyavskaya"], default="bruck",
                   help="first step of two-step (default bruck)")
    p.add_argument("--limit", type=int, default=1, metavar="N",
                   help="completions per generalized construction "
                        "(default 1; 0 = no limit)")
    p.add_argument("--no-diag-seed", dest="diag_seed", action="store_false",
                   help="leave the gen-dd diagonal to the completion search")
    p.set_defaults(func=_cmd_prolong, diag_seed=True)

    p = sub.add_parser("contract", help="run a contraction (inverse prolongation)")
    p.add_argument("file")
    p.add_argument("--method", required=True, choices=["bruck", "except"])
    p.add_argument("--deleted", type=int, metavar="SYMBOL",
                   help="symbol removed by the contraction")
    p.add_argument("--try-all", dest="try_all", action="store_true",
                   help="report every feasible deleted symbol")
    p.set_defaults(func=_cmd_contract)
    return parser


# --- shared plumbing ---------------------------------------------------------

def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load_full(path: str) -> core.LatinSquare:
    grid = core.parse_lsq(_read_text(path))
    if isinstance(grid, core.PartialLatinSquare):
        raise DomainError(f"{path}: contains empty cells; a complete square is required")
    return grid


def _parse_ints(text: str, flag: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.split())
    except ValueError:
        raise DomainError(f"{flag}: expected whitespace-separated integers, "
                          f"got {text!r}") from None


def _opt_ints(text, flag):
    return None if text is None else _parse_ints(text, flag)


def _one(values, flag: str):
    if not values or len(values) != 1:
        raise DomainError(f"{flag} must be given exactly once for this method")
    return values[0]


def _many(values, flag: str):
    if not values:
        raise DomainError(f"{flag} must be given at least once for this method")
    return values


def _limit(value: int):
    return None if value == 0 else value


def _emit(blocks) -> int:
    sys.stdout.write("\n".join(blocks))
    return 0


def _fmt_perm(seq) -> str:
    return " ".join(str(v) for v in seq)


# --- subcommands -------------------------------------------------------------

def _cmd_verify(args) -> int:
    report = core.validate(core.parse_lsq_grid(_read_text(args.file)))
    print(report)
    return 0 if report.ok else 1


def _cmd_gen(args) -> int:
    return _emit([core.format_lsq(core.random_square(args.order, args.seed))])


def _cmd_complete(args) -> int:
    grid = core.parse_lsq(_read_text(args.file))
    limit = None if args.all else _limit(args.limit)
    found = core.complete_partial(grid, limit=limit)
    if not found:
        print("no completion exists", file=sys.stderr)
        return 3
    return _emit([core.format_lsq(sq) for sq in found])


def _list_results(args, enumerate_all, enumerate_capped, to_line) -> int:
    """Shared count/list logic: counts are exact, lists honor --limit."""
    if args.mode == "count":
        print(len(enumerate_all()))
        return 0
    limit = _limit(args.limit) if args.limit is not None else None
    items = enumerate_capped(None if limit is None else limit + 1)
    truncated = limit is not None and len(items) > limit
    for item in items[:limit]:
        print(to_line(item))
    if truncated:
        print(f"# truncated at {limit}")
    return 0


def _cmd_transversals(args) -> int:
    sq = _load_full(args.file)
    k = args.disjoint
    if k is None:
        return _list_results(
            args,
            lambda: mappings.find_transversals(sq),
            lambda cap: mappings.find_transversals(sq, limit=cap),
            lambda t: _fmt_perm(t.cols))
    return _list_results(
        args,
        lambda: mappings.find_disjoint_transversals(sq, k),
        lambda cap: mappings.find_disjoint_transversals(sq, k, limit=cap),
        lambda fam: " ; ".join(_fmt_perm(t.cols) for t in fam))


def _cmd_qcmappings(args) -> int:
    sq = _load_full(args.file)
    return _list_results(
        args,
        lambda: mappings.find_quasicomplete_mappings(sq),
        lambda cap: mappings.find_quasicomplete_mappings(sq, limit=cap),
        lambda rec: _fmt_perm(rec.sigma))


_PROLONG_FLAGS = {
    "transversal": "--transversal", "sigma": "--sigma", "excepts": "--except",
    "keeps": "--keep", "fill": "--fill", "cols": "--cols", "rows": "--rows",
    "bottom": "--bottom", "t1": "--t1", "t2": "--t2",
}

_PROLONG_ALLOWED = {
    "bruck": {"transversal"},
    "disjoint": {"transversal", "fill", "cols", "rows", "bottom"},
    "belyavskaya": {"transversal", "excepts"},
    "gen-belyavskaya": {"transversal", "excepts", "fill", "cols", "rows"},
    "dd": {"sigma", "keeps"},
    "gen-dd": {"sigma", "keeps", "fill", "cols", "rows"},
    "two-step": {"t1", "t2", "excepts", "keeps"},
}


def _excepted_cell(sq, cols, row):
    """Resolve `--except ROW` to a (row, col) cell on the transversal."""
    t = mappings.transversal_of(sq, cols)
    if not 1 <= row <= sq.order:
        raise DomainError(f"--except row {row} out of range 1..{sq.order}")
    return t, (row, t.cols[row - 1])


def _cmd_prolong(args) -> int:
    sq = _load_full(args.file)
    method = args.method
    allowed = _PROLONG_ALLOWED[method]
    for attr, flag in _PROLONG_FLAGS.items():
        if attr not in allowed and getattr(args, attr) is not None:
            raise DomainError(f"{flag} does not apply to --method {method}")
    if not args.diag_seed and method != "gen-dd":
        raise DomainError("--no-diag-seed applies only to --method gen-dd")

    if method == "bruck":
        cols = _parse_ints(_one(args.transversal, "--transversal"), "--transversal")
        return _emit_reports([constructions.prolong_bruck(sq, cols)])

    if method == "disjoint":
        perms = [_parse_ints(s, "--transversal")
                 for s in _many(args.transversal, "--transversal")]
        bottom = None
        if args.bottom is not None:
            bottom = tuple(tuple(v + sq.order for v in row)
                           for row in _load_full(args.bottom).rows)
        rep = constructions.prolong_disjoint(
            sq, perms, fill=_opt_ints(args.fill, "--fill"),
            col_assign=_opt_ints(args.cols, "--cols"),
            row_assign=_opt_ints(args.rows, "--rows"), bottom=bottom)
        return _emit_reports([rep])

    if method == "belyavskaya":
        cols = _parse_ints(_one(args.transversal, "--transversal"), "--transversal")
        t, cell = _excepted_cell(sq, cols, _one(args.excepts, "--except"))
        return _emit_reports([constructions.prolong_belyavskaya(sq, t, cell)])

    if method == "gen-belyavskaya":
        perms = [_parse_ints(s, "--transversal")
                 for s in _many(args.transversal, "--transversal")]
        rows = _many(args.excepts, "--except")
        if len(rows) != len(perms):
            raise DomainError("need exactly one --except per --transversal")
        pairs = [_excepted_cell(sq, cols, row) for cols, row in zip(perms, rows)]
        reports = constructions.prolong_belyavskaya_gen(
            sq, pairs, fill=_opt_ints(args.fill, "--fill"),
            col_assign=_opt_ints(args.cols, "--cols"),
            row_assign=_opt_ints(args.rows, "--rows"), limit=_limit(args.limit))
        return _emit_reports(reports)

    if method == "dd":
        sigma = _parse_ints(_one(args.sigma, "--sigma"), "--sigma")
        kept = _one(args.keeps, "--keep") if args.keeps is not None else None
        return _emit_reports([constructions.prolong_dd(sq, sigma, kept)])

    if method == "gen-dd":
        sigmas = [_parse_ints(s, "--sigma") for s in _many(args.sigma, "--sigma")]
        keeps = args.keeps
        if keeps is None:
            keeps = [None] * len(sigmas)
        elif len(keeps) != len(sigmas):
            raise DomainError("need exactly one --keep per --sigma, or none at all")
        reports = constructions.prolong_dd_gen(
            sq, list(zip(sigmas, keeps)), fill=_opt_ints(args.fill, "--fill"),
            col_assign=_opt_ints(args.cols, "--cols"),
            row_assign=_opt_ints(args.rows, "--rows"),
            seed_diagonal=args.diag_seed, limit=_limit(args.limit))
        return _emit_reports(reports)

    # two-step
    if args.t1 is None or args.t2 is None:
        raise DomainError("--t1 and --t2 are required for --method two-step")
    c1 = _parse_ints(args.t1, "--t1")
    c2 = _parse_ints(args.t2, "--t2")
    excepted = None
    if args.first == "belyavskaya":
        _, excepted = _excepted_cell(sq, c1, _one(args.excepts, "--except"))
    elif args.excepts is not None:
        raise DomainError("--except requires --first belyavskaya")
    kept = _one(args.keeps, "--keep") if args.keeps is not None else None
    rep = constructions.two_step(sq, c1, c2, first=args.first,
                                 excepted=excepted, kept_choice=kept)
    return _emit_reports([rep])


def _emit_reports(reports) -> int:
    if not reports:
        print("no completion exists", file=sys.stderr)
        return 3
    return _emit([core.format_lsq(rep.output) for rep in reports])


def _cmd_contract(args) -> int:
    sq = _load_full(args.file)
    if args.try_all == (args.deleted is not None):
        raise DomainError("give exactly one of --deleted or --try-all")
    if args.try_all:
        found = constructions.feasible_contractions(sq, args.method)
        if not found:
            print("no feasible contraction", file=sys.stderr)
            return 3
        return _emit([_contract_block(args.method, d, small, param)
                      for d, small, param in found])
    op = (constructions.contract_bruck if args.method == "bruck"
          else constructions.contract_except)
    small, param = op(sq, args.deleted)
    return _emit([_contract_block(args.method, args.deleted, small, param)])


def _contract_block(method: str, deleted: int, small, param) -> str:
    comments = [f"deleted: {deleted}"]
    if method == "bruck":
        comments.append(f"transversal: {_fmt_perm(param.cols)}")
    else:
        comments.append(f"sigma: {_fmt_perm(param.sigma)}")
        if param.kind == "quasicomplete":
            x1, x2 = param.duplicate_pair
            comments.append(f"classification: quasicomplete "
                            f"special={param.special} pair=({x1},{x2})")
        else:
            comments.append(f"classification: {param.kind}")
    return core.format_lsq(small, comments)


if __name__ == "__main__":
    main()
