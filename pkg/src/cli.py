#!/usr/bin/env python3
"""
CLI for genus2-galois - subgroup lattices, divisor-class ledgers and
Galois-subspace decompositions for genus-2 curves
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional, Tuple

from dotenv import load_dotenv

from .core.config import setup_logging
from .core.errors import Genus2Error, NoSuchSubgroup, NotVeryAmple, UnknownGroup
from .core.verification_runner import VerificationRunner, print_summary
from .curves.decomp import DecompositionTable, decompose, decompose_by_order, decompose_table
from .curves.genus2 import AutGroupId, CurveContext, get_context, load_catalog, resolve_group_id
from .curves.picard import ell, get_ledger, zigzag_certificate
from .tools.fixtures import load_fixture
from .tools.report import FORMATS, render, render_certificate, render_lattice_dot

COMMANDS = ["list-groups", "subgroups", "decompose", "verify", "certificate", "lattice-dot"]


def _pair(text: str) -> Tuple[int, int]:
    try:
        h, n = text.split(":")
        return int(h), int(n)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected H:N subgroup indices, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="genus2-galois",
        description="Galois-subspace decompositions for genus-2 curves with many automorphisms"
    )
    parser.add_argument(
        "command",
        choices=COMMANDS,
        help="'list-groups' = catalog, 'subgroups' = enumerated subgroups of a group, "
             "'decompose' = component dimensions, 'verify' = audit against the reference tables, "
             "'certificate' = zig-zag derivation for a pair, 'lattice-dot' = subgroup lattice as DOT"
    )
    parser.add_argument("--group", "-g", help="Group id or alias (e.g. D6_12, D6, GL2F3)")
    parser.add_argument("--order", type=int, help="Order of H (decompose)")
    parser.add_argument("--subgroup-index", type=int, help="Enumeration index of H (decompose)")
    parser.add_argument("--format", "-f", choices=FORMATS, default="md", help="Output format (default: md)")
    parser.add_argument("--out", "-o", help="Write output to this file instead of stdout")
    parser.add_argument("--highlight", "--pair", type=_pair, dest="pair", metavar="H:N",
                        help="Subgroup indices H:N (certificate, lattice-dot)")
    parser.add_argument("--all", action="store_true", help="Verify every catalog group")
    parser.add_argument("--verbose", "-v", action="store_true", help="Show relation counts and debug logging")
    return parser


def _subgroup_flag(args) -> str:
    """The flag that selected H (or the pair) for the current command"""
    if args.command == "certificate":
        return "--pair"
    if args.command == "lattice-dot":
        return "--highlight"
    return "--order" if args.order is not None else "--subgroup-index"


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
        print(f"✅ Wrote {out}")
    else:
        sys.stdout.write(text)


def _p1_node(ctx: CurveContext, index: int):
    if not 0 <= index < len(ctx.all_subgroups):
        raise NoSuchSubgroup(f"{ctx.id.value} has {len(ctx.all_subgroups)} subgroups, no index {index}")
    h = ctx.all_subgroups[index]
    try:
        ctx.p1_index(h)
    except KeyError:
        raise NoSuchSubgroup(f"Subgroup #{index} of {ctx.id.value} does not have P1 quotient") from None
    return h


def cmd_list_groups(args) -> int:
    lines = ["id | order | label | aliases", "--- | --- | --- | ---"]
    for entry in load_catalog():
        lines.append(f"{entry.id.value} | {entry.group.order} | {entry.label} | {', '.join(entry.aliases)}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_subgroups(ctx: CurveContext, args) -> int:
    lattice = ctx.lattice
    lines = ["index | order | label | class | normal | P1 | generators", "--- | --- | --- | --- | --- | --- | ---"]
    for i, s in enumerate(ctx.all_subgroups):
        cls = lattice.class_of(i)
        p1 = "yes" if s in ctx.p1_subgroups else "no"
        gens = " ".join(ctx.group.label(g) for g in s.generators) or "-"
        lines.append(f"{i} | {s.order} | {lattice.labels[i]} | {cls.representative} ({cls.size}) | "
                     f"{'yes' if cls.is_normal else 'no'} | {p1} | {gens}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_decompose(ctx: CurveContext, args) -> int:
    ledger = get_ledger(ctx.id)
    fixture = load_fixture(ctx.id)

    if args.subgroup_index is not None:
        result = decompose(ctx, ledger, _p1_node(ctx, args.subgroup_index))
    elif args.order is not None:
        result = decompose_by_order(ctx, ledger, args.order)
    else:
        result = decompose_table(ctx, ledger)

    columns = None
    if fixture is not None and args.format != "json":
        rows = result.rows if isinstance(result, DecompositionTable) else [result]
        computed = {n for r in rows for n, count in r.histogram.items() if count}
        columns = sorted(set(fixture.columns) | computed)

    _emit(render(result, args.format, columns), args.out)
    return 0


def cmd_verify(args) -> int:
    groups = list(AutGroupId) if args.all else [resolve_group_id(args.group)]

    print(f"🔍 Verifying {len(groups)} group(s)")
    print(f"{'='*70}")

    runner = VerificationRunner(verbose=args.verbose)
    summary = runner.run_all(groups)
    print_summary(summary)
    return 0 if summary["success"] else 1


def cmd_certificate(ctx: CurveContext, args) -> int:
    h_index, n_index = args.pair
    h, n = _p1_node(ctx, h_index), _p1_node(ctx, n_index)
    space = ell(get_ledger(ctx.id), h, n)
    _emit(render_certificate(ctx, h_index, n_index, space), args.out)
    return 0


def cmd_lattice_dot(ctx: CurveContext, args) -> int:
    steps = None
    if args.pair:
        h_index, n_index = args.pair
        steps = zigzag_certificate(get_ledger(ctx.id), _p1_node(ctx, h_index), _p1_node(ctx, n_index))
    _emit(render_lattice_dot(ctx, steps), args.out)
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI entry point"""
    load_dotenv()

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    setup_logging("DEBUG" if args.verbose else None)

    if args.command not in ("list-groups", "verify") and not args.group:
        print(f"❌ Error: --group is required for '{args.command}'")
        return 2
    if args.command == "verify" and not (args.all or args.group):
        print("❌ Error: 'verify' needs --group or --all")
        return 2
    if args.command == "certificate" and not args.pair:
        print("❌ Error: 'certificate' needs --pair H:N")
        return 2
    if args.order is not None and args.subgroup_index is not None:
        print("❌ Error: --order and --subgroup-index are mutually exclusive")
        return 2

    try:
        if args.command == "list-groups":
            return cmd_list_groups(args)
        if args.command == "verify":
            return cmd_verify(args)

        ctx = get_context(resolve_group_id(args.group))
        if args.command == "subgroups":
            return cmd_subgroups(ctx, args)
        if args.command == "decompose":
            return cmd_decompose(ctx, args)
        if args.command == "certificate":
            return cmd_certificate(ctx, args)
        return cmd_lattice_dot(ctx, args)
    except UnknownGroup as e:
        print(f"❌ UnknownGroup: {e} (--group)")
        return 2
    except (NotVeryAmple, NoSuchSubgroup) as e:
        print(f"❌ {type(e).__name__}: {e} ({_subgroup_flag(args)})")
        return 2
    except Genus2Error as e:
        print(f"❌ {type(e).__name__}: {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
