"""Command-line interface.

Exit codes: 0 success or acceptance, 1 rejection (e.g. not a convex
geometry), 2 usage or parse error, 3 internal-consistency error.
"""

from __future__ import annotations

import argparse
import contextlib
import sys
from typing import Any, Sequence, TextIO

from . import textfmt
from .chains import compatible_orders, maximal_chains
from .core import ClosureSystem, join_systems, meet_systems
from .decomp import Decomposition, ej_decompose, min_order_cover, random_geometry
from .errors import (
    ConsistencyError,
    ConvGeomError,
    GroundSetMismatch,
    LimitExceeded,
    NotAGeometry,
    NotZeroClosed,
    TooLarge,
)
from .geometry import ConvexGeometry, recognize
from .symbolic import (
    sym_check_aep,
    sym_nonalgebraic_witness,
    sym_standardness_witness,
)
from .verify import BatteryConfig, render, run_battery

EXIT_OK, EXIT_REJECT, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class Output:
    """Buffers a report so it is written in one piece."""

    def __init__(self, fmt: str):
        self.fmt = fmt
        self.parts: list[str] = []

    def note(self, text: str) -> None:
        if self.fmt == "text":
            self.parts.append(f"# {text}\n")

    def emit(self, obj: Any) -> None:
        self.parts.append(textfmt.dumps(obj, self.fmt))

    def raw(self, text: str) -> None:
        self.parts.append(text if text.endswith("\n") else text + "\n")

    def flush(self, stream: TextIO) -> None:
        stream.write("".join(self.parts))
        stream.flush()


def _system(path: str) -> ClosureSystem:
    obj = textfmt.load(path)
    if isinstance(obj, ConvexGeometry):
        return obj.system
    if not isinstance(obj, ClosureSystem):
        raise textfmt.ParseError(f"{path}: expected a closure system document")
    return obj


def _geometry(path: str) -> ConvexGeometry:
    system = _system(path)
    if not system.zero_closed:
        raise NotAGeometry("not a convex geometry: the empty set is not closed")
    result = recognize(system)
    if result.geometry is None:
        raise NotAGeometry(f"not a convex geometry: {result.aep.reason} {result.aep.witness}")
    return result.geometry


def _verdict_on(system: ClosureSystem, out: Output) -> int:
    if not system.zero_closed:
        out.note("not a convex geometry (empty set not closed)")
        return EXIT_REJECT
    result = recognize(system)
    out.note("convex geometry" if result.ok else "not a convex geometry")
    return EXIT_OK if result.ok else EXIT_REJECT


def cmd_check(args: argparse.Namespace, out: Output) -> int:
    system = _system(args.files[0])
    if not system.zero_closed:
        out.note("not a convex geometry (empty set not closed)")
        out.emit(textfmt.Report(ok=False))
        return EXIT_REJECT
    result = recognize(system)
    out.note("convex geometry" if result.ok else "not a convex geometry")
    out.emit(result)
    return EXIT_OK if result.ok else EXIT_REJECT


def cmd_closure(args: argparse.Namespace, out: Output) -> int:
    system = _system(args.file)
    for lab in args.labels:
        if lab not in system.ground.labels:
            raise textfmt.ParseError("unknown label", token=lab)
    out.emit(system.closure(system.ground.subset(args.labels)))
    return EXIT_OK


def cmd_meet(args: argparse.Namespace, out: Output) -> int:
    a, b = (_system(p) for p in args.files)
    result = meet_systems(a, b)
    out.emit(result)
    return _verdict_on(result, out)


def cmd_join(args: argparse.Namespace, out: Output) -> int:
    result = join_systems([_system(p) for p in args.files])
    out.emit(result)
    return _verdict_on(result, out)


def cmd_chains(args: argparse.Namespace, out: Output) -> int:
    chains = maximal_chains(_system(args.files[0]), limit=args.limit)
    out.note(f"{len(chains)} maximal chains")
    out.emit(chains)
    return EXIT_OK


def cmd_orders(args: argparse.Namespace, out: Output) -> int:
    orders = compatible_orders(_geometry(args.files[0]), limit=args.limit)
    out.note(f"{len(orders)} compatible orders")
    out.emit(orders)
    return EXIT_OK


def cmd_decompose(args: argparse.Namespace, out: Output) -> int:
    mode = args.mode or "all"
    if mode not in ("all", "witness-per-set"):
        raise _Usage(f"decompose --mode must be all or witness-per-set, not {mode!r}")
    d = ej_decompose(_geometry(args.files[0]), mode)
    out.note(f"{len(d)} orders, mode {mode}")
    out.emit(d)
    return EXIT_OK


def cmd_mincover(args: argparse.Namespace, out: Output) -> int:
    mode = args.mode or "exact"
    if mode not in ("exact", "greedy"):
        raise _Usage(f"mincover --mode must be exact or greedy, not {mode!r}")
    g = _geometry(args.files[0])
    kwargs = {} if args.limit is None else {"max_orders": args.limit}
    d: Decomposition = min_order_cover(g, mode, **kwargs)
    out.note(f"{mode} cover size {len(d)}")
    out.emit(d)
    return EXIT_OK


def cmd_random(args: argparse.Namespace, out: Output) -> int:
    if args.n < 1 or args.k < 1:
        raise _Usage("--n and --k must be positive")
    g = random_geometry(args.n, args.k, args.seed)
    out.note(f"join of {args.k} random orders on {args.n} points, seed {args.seed}")
    out.emit(g)
    return EXIT_OK


def cmd_symbolic(args: argparse.Namespace, out: Output) -> int:
    std = sym_standardness_witness()
    fin = sym_nonalgebraic_witness()
    report = sym_check_aep(args.trials, args.seed)
    out.raw(
        f"standardness: phi({{x}}) = {std.point_closure}; phi({{x}})\\{{x}} = {std.punctured}; "
        f"phi({std.punctured}) = {std.punctured_closure}; fails = {str(std.fails).lower()}"
    )
    out.raw(
        f"finitary: A = {fin.subset}; phi(A) = {fin.closure}; union of finite closures = {fin.finite_union}; "
        f"gap = {{{','.join(map(str, fin.gap))}}}; fails = {str(fin.fails).lower()}"
    )
    out.raw(str(report))
    return EXIT_OK if report.ok else EXIT_INTERNAL


def cmd_verify(args: argparse.Namespace, out: Output) -> int:
    if args.max_n < 1:
        raise _Usage("--max-n must be positive")
    cfg = BatteryConfig(max_n=args.max_n, seed=args.seed)
    results = run_battery(cfg)
    out.raw(render(cfg, results))
    return EXIT_OK if all(r.ok for r in results) else EXIT_REJECT


class _Usage(Exception):
    pass


COMMANDS = {
    "check": (cmd_check, 1, "recognize a convex geometry"),
    "closure": (cmd_closure, None, "closure of a set of labels"),
    "meet": (cmd_meet, 2, "family intersection of two systems"),
    "join": (cmd_join, "+", "smallest closure system containing all inputs"),
    "chains": (cmd_chains, 1, "maximal chains of closed sets"),
    "orders": (cmd_orders, 1, "compatible total orders of a geometry"),
    "decompose": (cmd_decompose, 1, "decompose a geometry into compatible orders"),
    "mincover": (cmd_mincover, 1, "small set of orders reconstructing a geometry"),
    "random": (cmd_random, 0, "random geometry as a join of random orders"),
    "symbolic-demo": (cmd_symbolic, 0, "the infinite non-algebraic counterexample"),
    "verify": (cmd_verify, 0, "run the theorem-verification battery"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json-like"), default="text")
    common.add_argument("--mode", default=None, help="exact|greedy for mincover, all|witness-per-set for decompose")
    common.add_argument("--limit", type=int, default=None, help="cap on enumerated chains, orders or cover candidates")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-n", type=int, default=6)

    parser = argparse.ArgumentParser(prog="convgeom", description="Finite closure systems and convex geometries.")
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")
    for verb, (_, nfiles, help_text) in COMMANDS.items():
        p = sub.add_parser(verb, parents=[common], help=help_text)
        if verb == "closure":
            p.add_argument("file")
            p.add_argument("labels", nargs="*")
        elif nfiles == "+":
            p.add_argument("files", nargs="+")
        elif nfiles:
            p.add_argument("files", nargs=nfiles)
        if verb == "random":
            p.add_argument("--n", type=int, required=True)
            p.add_argument("--k", type=int, required=True)
        if verb == "symbolic-demo":
            p.add_argument("--trials", type=int, default=10_000)
    return parser


def run(argv: Sequence[str] | None = None, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    out = Output(args.format)
    handler = COMMANDS[args.verb][0]
    try:
        code = handler(args, out)
    except ConsistencyError as exc:
        stderr.write(f"internal consistency error: {exc}\n")
        return EXIT_INTERNAL
    except (NotAGeometry, NotZeroClosed) as exc:
        out.note(str(exc))
        out.flush(stdout)
        stderr.write(f"{exc}\n")
        return EXIT_REJECT
    except (textfmt.ParseError, OSError, GroundSetMismatch, TooLarge, LimitExceeded, _Usage) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except ConvGeomError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    out.flush(stdout)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
