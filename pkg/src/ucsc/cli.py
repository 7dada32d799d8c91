"""``ucsc`` command-line interface.

Exit codes: 0 success / holds / nothing found, 2 not applicable, 3 fails or
counterexample found, 64 usage error, 65 bad input file, 1 internal error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from typing import Sequence

from . import checkers
from .checkers import Status
from .enumeration import (
    CheckpointError,
    EnumCheckpoint,
    EnumerationError,
    EnumFilter,
    count_union_closed,
    partition_tasks,
    resume,
)
from .family import (
    FamilyError,
    PreconditionError,
    abundant_elements,
    elements_of,
    find_union_violation,
    frequency_profile,
    size_profile,
    t_value,
    union_closure,
)
from .io import family_to_json, format_family, read_family
from .search import (
    SearchError,
    SearchTarget,
    dump_findings,
    exhaustive_scan,
    random_closure_search,
    verify_paper_example,
)

EXIT_OK = 0
EXIT_NOT_APPLICABLE = 2
EXIT_FAILS = 3
EXIT_USAGE = 64
EXIT_DATAERR = 65
EXIT_INTERNAL = 1

log = logging.getLogger("ucsc")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits 2 by default, which we reserve
        raise UsageError(f"{self.prog}: {message}")


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"{text} must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ucsc", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="conjecture verdicts for a family file")
    c.add_argument("--conjecture", choices=["frankl", "s1", "s2", "all"], default="all")
    c.add_argument("--strict", action="store_true", help='"more than half" instead of "at least half"')
    c.add_argument("--json", action="store_true")
    c.add_argument("file")

    c = sub.add_parser("closure", help="union closure of a family file")
    c.add_argument("--json", action="store_true")
    c.add_argument("file")

    c = sub.add_parser("enumerate", help="enumerate union-closed families on {1..n}")
    c.add_argument("--n", type=_positive, required=True)
    g = c.add_mutually_exclusive_group()
    g.add_argument("--t-min", type=_positive)
    g.add_argument("--t-exact", type=_positive)
    c.add_argument("--max-m", type=_positive)
    c.add_argument("--canonical", action="store_true", help="only canonical representatives")
    c.add_argument("--count-only", action="store_true")
    c.add_argument("--check", choices=["s1", "s2", "frankl"])
    c.add_argument("--checkpoint", help="resume the subtree stored in this JSON file")
    c.add_argument("--partition", type=int, metavar="DEPTH", help="print subtree checkpoints and exit")
    c.add_argument("--threads", type=_positive, default=None)

    c = sub.add_parser("search", help="counterexample search")
    c.add_argument("--mode", choices=["exhaustive", "random"], required=True)
    c.add_argument("--n", type=_positive, required=True)
    c.add_argument("--target", choices=[t.value for t in SearchTarget], required=True)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--iters", type=int, default=10_000)
    c.add_argument("--gen-count", type=int, nargs=2, metavar=("LO", "HI"), default=(2, 6))
    c.add_argument("--gen-size", type=int, nargs=2, metavar=("LO", "HI"))
    c.add_argument("--max-findings", type=_positive, default=100)
    c.add_argument("--threads", type=_positive, default=None)
    c.add_argument("--json", action="store_true")

    c = sub.add_parser("verify-paper-example", help="check the nine-element S1 counterexample")
    c.add_argument("--json", action="store_true")

    c = sub.add_parser("stats", help="m, n, T(F), frequencies, size profile, abundant set")
    c.add_argument("--json", action="store_true")
    c.add_argument("file")
    return p


def _fmt_set(mask: int) -> str:
    return "{" + ",".join(map(str, elements_of(mask))) + "}"


def _threads(arg: int | None) -> int:
    return arg if arg is not None else (os.cpu_count() or 1)


def _status_code(statuses: Sequence[Status]) -> int:
    if Status.FAILS in statuses:
        return EXIT_FAILS
    if Status.NOT_APPLICABLE in statuses:
        return EXIT_NOT_APPLICABLE
    return EXIT_OK


def cmd_check(args) -> int:
    f = read_family(args.file)
    bad = find_union_violation(f)
    if bad is not None:
        a, b = bad
        print(f"not union-closed: {_fmt_set(a)} ∪ {_fmt_set(b)} = {_fmt_set(a | b)} is missing", file=sys.stderr)
        return EXIT_DATAERR
    names = ["frankl", "s1", "s2"] if args.conjecture == "all" else [args.conjecture]
    verdicts = [checkers.CHECKERS[name](f, strict=args.strict) for name in names]
    if args.json:
        out = [v.to_json() for v in verdicts]
        print(json.dumps(out[0] if len(out) == 1 else out))
    else:
        for v in verdicts:
            line = f"{v.conjecture}: {v.status.value}"
            if v.status is Status.HOLDS:
                line += f" witnesses={list(v.witnesses)}"
            elif v.status is Status.FAILS:
                line += f" required={v.required} achieved={v.achieved}"
            else:
                line += f" ({v.reason})"
            print(line)
    return _status_code([v.status for v in verdicts])


def cmd_closure(args) -> int:
    f = union_closure(read_family(args.file))
    if args.json:
        print(json.dumps(family_to_json(f)))
    else:
        sys.stdout.write(format_family(f))
    return EXIT_OK


def cmd_stats(args) -> int:
    f = read_family(args.file)
    try:
        t = t_value(f)
    except PreconditionError:
        t = None
    info = {
        "m": f.m,
        "n": f.n,
        "t_value": t,
        "frequencies": list(frequency_profile(f)),
        "size_profile": list(size_profile(f)),
        "abundant": list(abundant_elements(f)),
    }
    if args.json:
        print(json.dumps(info))
    else:
        for k, v in info.items():
            print(f"{k}: {v}")
    return EXIT_OK


class _Progress:
    def __init__(self, every: int = 100_000):
        self.every = every
        self.count = 0
        self.t0 = time.monotonic()

    def tick(self) -> None:
        self.count += 1
        if self.count % self.every == 0:
            rate = self.count / max(time.monotonic() - self.t0, 1e-9)
            log.info("%d families (%.0f/s)", self.count, rate)


def cmd_enumerate(args) -> int:
    n = args.n
    filt = EnumFilter(t_min=args.t_min, t_exact=args.t_exact, canonical_only=args.canonical, max_m=args.max_m)
    if args.partition is not None:
        for cp in partition_tasks(n, args.partition):
            print(json.dumps(cp.to_json()))
        return EXIT_OK
    cp = EnumCheckpoint.load(args.checkpoint) if args.checkpoint else EnumCheckpoint(n)
    if cp.n != n:
        raise UsageError(f"checkpoint is for n={cp.n}, not n={n}")
    threads = _threads(args.threads)

    if args.count_only and args.check is None and not args.checkpoint and threads > 1:
        print(count_union_closed(n, filt, threads=threads))
        return EXIT_OK

    checker = checkers.CHECKERS[args.check] if args.check else None
    progress = _Progress()
    failures = 0

    def sink(f) -> None:
        nonlocal failures
        progress.tick()
        if checker is not None:
            v = checker(f)
            if v.fails:
                failures += 1
                if not args.count_only:
                    print(json.dumps({"family": family_to_json(f), "verdict": v.to_json()}))
            return
        if not args.count_only:
            print(json.dumps(family_to_json(f)))

    total = resume(cp, filt, sink)
    if args.count_only:
        print(total)
    if checker is not None:
        print(f"# {total} families, {failures} {args.check} failures", file=sys.stderr)
        return EXIT_FAILS if failures else EXIT_OK
    return EXIT_OK


def cmd_search(args) -> int:
    target = SearchTarget(args.target)
    threads = _threads(args.threads)
    if args.mode == "exhaustive":
        findings = exhaustive_scan(args.n, [target], max_findings=args.max_findings, threads=threads)
    else:
        findings = random_closure_search(
            args.n,
            target,
            args.seed,
            args.iters,
            tuple(args.gen_count),
            tuple(args.gen_size) if args.gen_size else None,
            max_findings=args.max_findings,
            threads=threads,
        )
    if args.json:
        sys.stdout.write(dump_findings(findings))
    else:
        for fd in findings:
            v = fd.verdict
            print(f"{target.value}: {fd.family} required={v.required} achieved={v.achieved}")
        print(f"{len(findings)} findings ({findings.suppressed} suppressed)")
    return EXIT_FAILS if findings else EXIT_OK


def cmd_verify(args) -> int:
    report = verify_paper_example()
    if args.json:
        print(json.dumps(report.to_json()))
    else:
        print(report)
    return EXIT_OK if report.ok else EXIT_INTERNAL


COMMANDS = {
    "check": cmd_check,
    "closure": cmd_closure,
    "enumerate": cmd_enumerate,
    "search": cmd_search,
    "verify-paper-example": cmd_verify,
    "stats": cmd_stats,
}


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"ucsc: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CheckpointError as exc:
        print(f"ucsc: {exc}", file=sys.stderr)
        return EXIT_DATAERR
    except (EnumerationError, SearchError) as exc:
        print(f"ucsc: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FamilyError, PreconditionError, OSError, UnicodeDecodeError) as exc:
        print(f"ucsc: {exc}", file=sys.stderr)
        return EXIT_DATAERR
    except Exception as exc:  # noqa: BLE001
        log.exception("internal error")
        print(f"ucsc: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
