"""Command-line interface: classify, grundy, verify, export, serve.

Positions are given either as the JSON wire form
(``{"variant":"rook","pieces":[{"col":0,"row":0},{"col":1,"row":1}]}``),
as one ``c1,r1,c2,r2`` shorthand argument (both pieces on board, first
piece then second), or as two ``col,row`` arguments.  States with a
dropped piece require the JSON form.

Exit codes: 0 success (for ``verify``: zero mismatches), 1 operational
failure (mismatches found, I/O error), 2 bad usage or malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import closed_form, verifier
from .core import (MalformedPositionError, Position, Square, Variant,
                   move_text, position_from_json, validate,
                   variant_from_name)
from .solver import best_moves, grundy, memo_from_env
from .verifier import SweepSpec

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code


def _parse_coords(text: str, expect: int) -> list[int]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != expect:
        raise CliError(
            f"expected {expect} comma-separated integers, got {text!r}")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise CliError(f"non-integer coordinate in {text!r}") from None


def parse_position_args(args: list[str],
                        variant: Variant | None) -> tuple[Position, Variant]:
    """Positional position arguments -> validated (position, variant)."""
    if len(args) == 1 and args[0].lstrip().startswith("{"):
        try:
            obj = json.loads(args[0])
        except json.JSONDecodeError as exc:
            raise CliError(f"position is not valid JSON: {exc}") from None
        try:
            return position_from_json(obj, variant)
        except MalformedPositionError as exc:
            raise CliError(str(exc)) from None
    if variant is None:
        raise CliError("--variant is required with coordinate shorthand")
    if len(args) == 1:
        c1, r1, c2, r2 = _parse_coords(args[0], 4)
    elif len(args) == 2:
        c1, r1 = _parse_coords(args[0], 2)
        c2, r2 = _parse_coords(args[1], 2)
    else:
        raise CliError("give one c1,r1,c2,r2 argument, two col,row "
                       "arguments, or a JSON position")
    position = Position(Square(c1, r1), Square(c2, r2))
    if not validate(position, variant):
        raise CliError("malformed position")
    return position, variant


def _variant_arg(name: str | None) -> Variant | None:
    if name is None:
        return None
    try:
        return variant_from_name(name)
    except MalformedPositionError as exc:
        raise CliError(str(exc)) from None


def _open_out(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    try:
        return open(path, "w", encoding="utf-8", newline="\n"), True
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc}", EXIT_FAILURE) from None


def _bool_str(b: bool) -> str:
    return "true" if b else "false"


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_classify(args) -> int:
    variant = _variant_arg(args.variant)
    position, variant = parse_position_args(args.position, variant)
    if not closed_form.has_classifier(variant):
        raise CliError("no closed-form classifier for variant "
                       f"{variant.value!r} (its law is the value "
                       "decomposition; see 'verify --sum')")
    try:
        t = closed_form.position_tuple(position)
    except closed_form.ClassifierDomainError as exc:
        raise CliError(str(exc)) from None

    if variant is Variant.PUSH:
        nim = (t[0] - 1) ^ (t[1] - 1) ^ (t[2] - 1) ^ (t[3] - 1)
        p = closed_form.push_p_position(t)
        line = f"shifted_nimsum={nim} -> {'P' if p else 'N'}"
    elif variant is Variant.JUMP:
        p = closed_form.coin_nopush_p_position(t)
        line = (f"P0={_bool_str(closed_form.coin_in_p0(t))} "
                f"P1={_bool_str(closed_form.coin_in_p1(t))} "
                f"N0={_bool_str(closed_form.coin_in_n0(t))} "
                f"-> {'P' if p else 'N'}")
    else:
        nim = t[0] ^ t[1] ^ t[2] ^ t[3]
        p = closed_form.rook_p_position(t)
        line = (f"nimsum={nim} "
                f"P1={_bool_str(closed_form.rook_in_p1(t))} "
                f"N0={_bool_str(closed_form.rook_in_n0(t))} "
                f"E={_bool_str(closed_form.in_terminal_set(t))} "
                f"-> {'P' if p else 'N'}")
    print(line)

    # Cross-check against brute force when it is cheap; never silently
    # trust one side over the other.
    coords = [c for sq in (position.a, position.b)
              for c in (sq.col, sq.row)]
    if max(coords) <= 32:
        g = grundy(position, variant, memo_from_env())
        if (g == 0) != p:
            print(f"WARNING: closed form says {'P' if p else 'N'} but "
                  f"exhaustive search says {'P' if g == 0 else 'N'} "
                  f"(grundy {g}); one of them is wrong", file=sys.stderr)
            return EXIT_FAILURE
    return EXIT_OK


def cmd_grundy(args) -> int:
    variant = _variant_arg(args.variant)
    position, variant = parse_position_args(args.position, variant)
    memo = memo_from_env()
    g = grundy(position, variant, memo)
    moves = best_moves(position, variant, memo)
    rendered = ", ".join(move_text(m) for m in moves)
    print(f"G={g} outcome={'P' if g == 0 else 'N'} moves=[{rendered}]")
    if position.a is not None and position.b is not None and \
            closed_form.has_classifier(variant):
        p = closed_form.classify_position(position, variant)
        if p != (g == 0):
            print(f"WARNING: closed form says {'P' if p else 'N'} but "
                  f"exhaustive search says {'P' if g == 0 else 'N'}; "
                  "one of them is wrong", file=sys.stderr)
            return EXIT_FAILURE
    return EXIT_OK


def _report_text(report: verifier.DiscrepancyReport) -> str:
    lines = [f"check={report.check} variant={report.spec.variant.value} "
             f"bound={report.spec.bound} total={report.total_positions} "
             f"mismatches={len(report.mismatches)} "
             f"elapsed_ms={report.elapsed_s * 1000.0:.1f}"]
    for m in report.mismatches:
        lines.append(f"  pos={','.join(str(c) for c in m.pos)} "
                     f"brute={m.brute} closed={m.closed}")
    return "\n".join(lines)


def cmd_verify(args) -> int:
    memo = memo_from_env()
    if args.correspondence:
        report = verifier.verify_correspondence(args.bound, memo)
    elif args.sum:
        report = verifier.verify_sum_theorem(args.bound, memo)
    elif args.drop_losing:
        variant = _variant_arg(args.drop_losing)
        report = verifier.verify_drop_losing(args.bound, variant, memo=memo)
    elif args.local_law:
        report = verifier.verify_rook_local_law(args.bound)
    elif args.variant:
        variant = _variant_arg(args.variant)
        try:
            report = verifier.verify_variant(
                SweepSpec(variant, args.bound), memo=memo)
        except ValueError as exc:
            raise CliError(str(exc)) from None
        if variant is Variant.PUSH and report.mismatches:
            # The sweep arbitrates between the candidate push-rule
            # readings; report which one the theorem backs.
            counts = verifier.calibrate_push_rules(args.bound)
            print("calibration: mismatches per push rule "
                  + json.dumps(counts), file=sys.stderr)
    else:
        raise CliError("choose a check: --variant NAME, --correspondence, "
                       "--sum, --drop-losing NAME, or --local-law")

    out, close = _open_out(args.output)
    try:
        if args.format == "json":
            json.dump(report.json_obj(), out, indent=2)
            out.write("\n")
        elif args.format == "csv":
            out.write("w,x,y,z,brute,closed\n")
            for m in report.mismatches:
                out.write(",".join(str(c) for c in m.pos)
                          + f",{m.brute},{m.closed}\n")
        else:
            out.write(_report_text(report) + "\n")
    finally:
        if close:
            out.close()
    return EXIT_OK if report.clean else EXIT_FAILURE


def cmd_export(args) -> int:
    variant = _variant_arg(args.variant)
    if variant is None:
        raise CliError("--variant is required for export")
    try:
        spec = SweepSpec(variant, args.bound,
                         include_dropped_states=args.include_dropped)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    rows = verifier.sweep_rows(spec, memo=memo_from_env())
    if args.output is None or args.output == "-":
        import csv as _csv
        writer = _csv.DictWriter(sys.stdout, fieldnames=verifier.CSV_COLUMNS,
                                 lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
    else:
        try:
            verifier.write_table_csv(rows, args.output)
        except OSError as exc:
            raise CliError(f"cannot write {args.output}: {exc}",
                           EXIT_FAILURE) from None
    return EXIT_OK


def cmd_serve(args) -> int:
    from . import service
    try:
        service.serve(args.host, args.port)
    except OSError as exc:
        raise CliError(f"cannot bind {args.host}:{args.port}: {exc}",
                       EXIT_FAILURE) from None
    return EXIT_OK


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

VARIANT_NAMES = [v.value for v in Variant]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coinnim",
        description="Exact analysis of the two-coin sliding games and the "
                    "two-rook cornering game.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify",
                       help="closed-form set membership and P/N claim")
    p.add_argument("--variant", choices=VARIANT_NAMES)
    p.add_argument("position", nargs="+",
                   help="JSON position, c1,r1,c2,r2, or two col,row args")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("grundy",
                       help="exact value, outcome, and winning moves")
    p.add_argument("--variant", choices=VARIANT_NAMES)
    p.add_argument("position", nargs="+")
    p.set_defaults(func=cmd_grundy)

    p = sub.add_parser("verify", help="exhaustive sweep checks")
    p.add_argument("--variant", choices=VARIANT_NAMES)
    p.add_argument("--correspondence", action="store_true",
                   help="jump outcomes equal shifted rook outcomes")
    p.add_argument("--sum", action="store_true",
                   help="free-variant values decompose by xor")
    p.add_argument("--drop-losing", metavar="VARIANT",
                   choices=["push", "jump"],
                   help="dropping one coin early always loses")
    p.add_argument("--local-law", action="store_true",
                   help="rook predicate obeys the P/N recurrence "
                        "(no game values computed)")
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--format", choices=["json", "csv", "text"],
                   default="text")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", help="full grundy/outcome table as CSV")
    p.add_argument("--variant", choices=VARIANT_NAMES, required=True)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--include-dropped", action="store_true",
                   help="include states with dropped pieces (coordinate 0)")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("serve", help="run the HTTP analysis service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except MalformedPositionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # operational failures (I/O, caps, ...)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
