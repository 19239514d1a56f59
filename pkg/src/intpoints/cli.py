"""Command-line entry point: ``intpoints <command> ...``."""

from __future__ import annotations

import argparse
import csv
import logging
import sys
from pathlib import Path

from .canonical import is_canonical, is_semi_canonical
from .enumerator import PositionMode, base_lists, enumerate_lists, lift_simplices, run_statistics
from .listio import ListFormatError, list_filename, load_list, save_list
from .metric import is_general_position, is_realizable, simplex_characteristics
from .search import NotFoundWithinBound, min_diameter

EXIT_OK, EXIT_USAGE, EXIT_NOT_FOUND, EXIT_VERIFY = 0, 1, 2, 3

log = logging.getLogger("intpoints")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}")


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="intpoints", description="Enumerate integral point sets and their minimum diameters.")
    p.add_argument("-v", "--verbose", action="count", default=0, help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("simplices", help="write canonical and semi-canonical simplex lists")
    s.add_argument("--dim", type=_positive, required=True)
    s.add_argument("--diameter", type=_positive, required=True)
    s.add_argument("--out", type=Path, required=True)

    s = sub.add_parser("pointsets", help="write canonical and semi-canonical point-set lists")
    s.add_argument("--dim", type=_positive, required=True)
    s.add_argument("--points", type=int, required=True)
    s.add_argument("--diameter", type=_positive, required=True)
    s.add_argument("--position", choices=[x.value for x in PositionMode], default="semi-general")
    s.add_argument("--no-char-pruning", action="store_true")
    s.add_argument("--in", dest="resume", type=Path, help="directory holding the saved (n-1)-point lists")
    s.add_argument("--out", type=Path, required=True)

    s = sub.add_parser("mindiam", help="minimum diameter of an n-point set")
    s.add_argument("--dim", type=_positive, required=True)
    s.add_argument("--points", type=int, required=True)
    s.add_argument("--position", choices=[x.value for x in PositionMode], default="semi-general")
    s.add_argument("--max-diameter", type=_positive, default=100)

    s = sub.add_parser("stats", help="combine-call statistics with and without characteristic pruning")
    s.add_argument("--dim", type=_positive, default=3)
    s.add_argument("--diameter-from", type=_positive, required=True)
    s.add_argument("--diameter-to", type=_positive, required=True)
    s.add_argument("--csv", action="store_true")

    s = sub.add_parser("verify", help="re-check every invariant of a stored list")
    s.add_argument("file", type=Path)
    return p


def _cmd_simplices(args) -> int:
    args.out.mkdir(parents=True, exist_ok=True)
    lc, ls = base_lists(args.diameter)
    save_list(lc, args.out / list_filename("c", 1, 2, args.diameter))
    save_list(ls, args.out / list_filename("s", 1, 2, args.diameter))
    for m in range(2, args.dim + 1):
        lc, ls = lift_simplices(lc, ls, m, args.diameter)
        save_list(lc, args.out / list_filename("c", m, m + 1, args.diameter))
        save_list(ls, args.out / list_filename("s", m, m + 1, args.diameter))
        print(f"m={m}: {len(lc)} canonical, {len(ls)} semi-canonical")
    return EXIT_OK


def _cmd_pointsets(args) -> int:
    m, n, delta = args.dim, args.points, args.diameter
    if n < 2:
        raise _UsageError("--points must be at least 2")
    position = PositionMode(args.position)
    start = None
    if args.resume is not None:
        try:
            lc = load_list(args.resume / list_filename("c", m, n - 1, delta))
            ls = load_list(args.resume / list_filename("s", m, n - 1, delta))
        except FileNotFoundError as exc:
            raise _UsageError(f"cannot resume: {exc.filename} is missing") from None
        start = (lc, ls)
    lc, ls = enumerate_lists(m, n, delta, position, prune=not args.no_char_pruning, start=start)
    args.out.mkdir(parents=True, exist_ok=True)
    save_list(lc, args.out / list_filename("c", m, n, delta))
    save_list(ls, args.out / list_filename("s", m, n, delta))
    print(f"m={m} n={n} delta<={delta} {position.value}: {len(lc)} canonical, {len(ls)} semi-canonical")
    return EXIT_OK


def _cmd_mindiam(args) -> int:
    try:
        report = min_diameter(args.dim, args.points, args.position, args.max_diameter)
    except NotFoundWithinBound as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_NOT_FOUND
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    print(report.min_diameter)
    print(f"m={report.m} n={report.n} position={report.mode.value}")
    print("witness:", " ".join(map(str, report.witness.word)))
    print(f"combine calls: {report.combine_calls}")
    log.info("elapsed %.2fs", report.elapsed)
    return EXIT_OK


def _cmd_stats(args) -> int:
    if args.diameter_to < args.diameter_from:
        raise _UsageError("--diameter-to is below --diameter-from")
    rows = [
        (r.delta, r.psi_hat, r.psi, r.alpha_tilde)
        for r in run_statistics(args.dim, range(args.diameter_from, args.diameter_to + 1))
    ]
    header = ("delta", "psi_hat", "psi", "alpha_tilde")
    if args.csv:
        out = csv.writer(sys.stdout, lineterminator="\n")
        out.writerow(header)
        out.writerows(rows)
        return EXIT_OK
    table = [header] + [tuple(map(str, r)) for r in rows]
    widths = [max(len(r[c]) for r in table) for c in range(len(header))]
    for r in table:
        print("  ".join(v.rjust(w) for v, w in zip(r, widths)))
    return EXIT_OK


def _verify_items(cands) -> list[str]:
    problems = []
    m = cands.m
    test = is_canonical if cands.kind == "c" else is_semi_canonical
    for idx, it in enumerate(cands.items):
        where = f"item {idx + 1}"
        if max(it.word) > cands.delta:
            problems.append(f"{where}: distance above the diameter bound {cands.delta}")
        if not test(it):
            problems.append(f"{where}: not {'canonical' if cands.kind == 'c' else 'semi-canonical'}")
        if not is_realizable(it, m):
            problems.append(f"{where}: not realizable in dimension {m}")
        if len(simplex_characteristics(it, m)) > 1:
            problems.append(f"{where}: simplices of different characteristic")
    return problems


def _cmd_verify(args) -> int:
    try:
        cands = load_list(args.file)
    except FileNotFoundError:
        raise _UsageError(f"no such file: {args.file}") from None
    except (ListFormatError, UnicodeDecodeError) as exc:
        print(f"{args.file}: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    problems = _verify_items(cands)
    for line in problems:
        print(f"{args.file}: {line}", file=sys.stderr)
    if problems:
        return EXIT_VERIFY
    general = sum(1 for it in cands.items if cands.n > cands.m + 1 and is_general_position(it, cands.m))
    print(f"{args.file}: {len(cands)} items ok", end="")
    print(f" ({general} in general position)" if cands.n > cands.m + 1 else "")
    return EXIT_OK


_COMMANDS = {
    "simplices": _cmd_simplices,
    "pointsets": _cmd_pointsets,
    "mindiam": _cmd_mindiam,
    "stats": _cmd_stats,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        level = logging.WARNING if args.verbose == 0 else logging.INFO if args.verbose == 1 else logging.DEBUG
        logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
