"""Command-line entry point for cyclic tournament checks and conjecture sweeps."""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from dotenv import load_dotenv

from tournaments.automorphisms import automorphisms
from tournaments.digraph import ConnectorSet, Tournament, build_cyclic, build_pseudo_cyclic, paley_tournament
from tournaments.distinguishing import CheckMode, check_conjecture, distinguishing_cost
from tournaments.indegree import classify_vertices, indegree_classes, render_indegree_path
from tournaments.sweep import SweepConfig, sweep
from utils.config import get_settings

# Load environment variables
load_dotenv()

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_USAGE = 2


def format_result(result) -> str:
    """One-line verdict such as ``HOLDS (RotationGroup |Aut|=13)``."""
    status = "HOLDS" if result.holds else "FAILS"
    line = f"{status} ({result.method} |Aut|={result.group_order})"
    if result.witness is not None:
        line += f" witness {result.witness}"
    return line


def cmd_check(args) -> int:
    """Check whether the canonical labeling of T(2p+1;S-) is distinguishing."""
    t = build_cyclic(args.p, ConnectorSet.parse(args.neg, args.p))
    result = check_conjecture(t, CheckMode(args.mode))
    print(f"{t}: {format_result(result)}")
    return EXIT_OK if result.holds else EXIT_COUNTEREXAMPLE


def cmd_aut(args) -> int:
    """Print |Aut(T)| and every automorphism in cycle notation."""
    if args.file:
        t = Tournament.from_literal(Path(args.file).read_text(encoding="utf-8"))
        name = args.file
    elif args.p is not None:
        t = build_cyclic(args.p, ConnectorSet.parse(args.neg, args.p))
        name = str(t)
    else:
        raise ValueError("aut needs either --file or --p/--neg")

    group = automorphisms(t)
    print(f"{name}: |Aut|={group.order}")
    for g in group.elements:
        print(f"  {g.cycle_notation()}")
    return EXIT_OK


def cmd_profile(args) -> int:
    """Print the indegree sequence of P(p;N), its vertex kinds and indegree classes."""
    pc = build_pseudo_cyclic(args.p, ConnectorSet.parse(args.neg, args.p))
    profile = classify_vertices(pc)
    alpha, delta, pi = profile.counts

    print(f"{pc}")
    print(f"IS = ({','.join(str(d) for d in profile.values)})")
    print(f"alpha={alpha} delta={delta} pi={pi}")
    print("kinds: " + " ".join(kind.value for kind in profile.kinds))
    for d, vertices in indegree_classes(pc).classes.items():
        print(f"V_{d} = {{{','.join(str(v) for v in vertices)}}}")
    if args.plot:
        print(render_indegree_path(profile))
    return EXIT_OK


def cmd_paley(args) -> int:
    """Build QR_n, check the conjecture and report |Aut| and the cost of distinguishing."""
    t = paley_tournament(args.n)
    result = check_conjecture(t, CheckMode(args.mode))
    rho = distinguishing_cost(t)
    status = "HOLDS" if result.holds else "FAILS"
    print(f"{status}, |Aut|={result.group_order}, rho={rho}")
    return EXIT_OK if result.holds else EXIT_COUNTEREXAMPLE


def cmd_sweep(args) -> int:
    """Check every connector set for p in [p-min, p-max] and write JSON lines."""
    settings = get_settings()
    cfg = SweepConfig(
        p_min=args.p_min,
        p_max=args.p_max,
        mode=CheckMode(args.mode),
        dedup_converse=args.dedup,
        workers=args.workers or settings.workers,
        output_path=Path(args.out),
        summary_path=Path(args.summary) if args.summary else None,
        force=args.force,
        record_timings=not args.no_timings,
        quiet=args.quiet,
    )
    report = sweep(cfg)

    print(f"\n📊 {report.total} instances in {report.wall_seconds}s -> {report.output_path}")
    for method, count in report.by_method.items():
        print(f"  {method}: {count}")
    if not report.all_hold:
        print(f"\n❌ {len(report.failures)} counterexample(s), see {report.output_path}")
        return EXIT_COUNTEREXAMPLE
    print("✅ Canonical labeling is distinguishing for every instance")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Cyclic tournaments - automorphism groups and distinguishing 2-labelings"
    )
    parser.add_argument(
        '--log-level',
        type=str,
        default=None,
        help='Logging level (default: TOURNAMENT_LOG_LEVEL or INFO)'
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="Check the canonical labeling of T(2p+1;S-)")
    check.add_argument('--p', type=int, required=True, help='Half-order p (n = 2p+1)')
    check.add_argument('--neg', type=str, default="", help='Negative connectors, e.g. 2,5,6')
    check.add_argument('--mode', choices=[m.value for m in CheckMode], default=CheckMode.CERTIFIED.value)
    check.set_defaults(handler=cmd_check)

    aut = sub.add_parser("aut", help="Print the automorphism group")
    aut.add_argument('--p', type=int, default=None, help='Half-order p of T(2p+1;S-)')
    aut.add_argument('--neg', type=str, default="", help='Negative connectors, e.g. 2,5,6')
    aut.add_argument('--file', type=str, default=None, help='Tournament literal file instead of --p/--neg')
    aut.set_defaults(handler=cmd_aut)

    profile = sub.add_parser("profile", help="Indegree sequence and vertex kinds of P(p;N)")
    profile.add_argument('--p', type=int, required=True, help='Order parameter p (p+1 vertices)')
    profile.add_argument('--neg', type=str, default="", help='Negative connectors N, e.g. 2,4,5')
    profile.add_argument('--plot', action='store_true', help='Also draw the indegree path')
    profile.set_defaults(handler=cmd_profile)

    paley = sub.add_parser("paley", help="Build and check the Paley tournament QR_n")
    paley.add_argument('--n', type=int, required=True, help='Prime n = 3 (mod 4)')
    paley.add_argument('--mode', choices=[m.value for m in CheckMode], default=CheckMode.CERTIFIED.value)
    paley.set_defaults(handler=cmd_paley)

    sw = sub.add_parser("sweep", help="Check every connector set in a range of half-orders")
    sw.add_argument('--p-min', type=int, required=True)
    sw.add_argument('--p-max', type=int, required=True)
    sw.add_argument('--mode', choices=[m.value for m in CheckMode], default=CheckMode.CERTIFIED.value)
    sw.add_argument('--dedup', action='store_true', help='One representative per converse pair')
    sw.add_argument('--workers', type=int, default=None, help='Worker processes (default: TOURNAMENT_WORKERS or 1)')
    sw.add_argument('--out', type=str, required=True, help='JSON lines output path')
    sw.add_argument('--summary', type=str, default=None, help='Optional CSV summary path')
    sw.add_argument('--force', action='store_true', help='Allow p-max above the configured limit')
    sw.add_argument('--no-timings', action='store_true', help='Write ms=0 for byte-identical reruns')
    sw.add_argument('--quiet', action='store_true', help='No progress bar')
    sw.set_defaults(handler=cmd_sweep)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run one subcommand and return its exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)

    level = args.log_level or get_settings().log_level
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

    try:
        return args.handler(args)
    except (ValueError, OSError) as e:
        print(f"❌ Error: {str(e)}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
