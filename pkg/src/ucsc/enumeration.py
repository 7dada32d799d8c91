"""Exhaustive enumeration of union-closed families over ``{1, ..., n}``.

Every emitted family contains the empty set and the full ground set. The
``2**n - 2`` proper nonempty masks are decided in a fixed order (decreasing
popcount, then increasing value); include-before-exclude depth-first search
over those decisions defines the emission order. Including a mask ``A`` is
legal iff ``A | B`` is already present for every included ``B``: since
``|A | B| > max(|A|, |B|)`` when the two are incomparable, that union was
decided earlier, so each legal prefix extends to a valid family and no
family is reached twice.
"""

from __future__ import annotations

import itertools
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterator

from .family import SetFamily, canonical_form, full_mask

log = logging.getLogger(__name__)

ORDER_VERSION = "popdesc-numasc-incl1st/v1"
MAX_ENUM_N = 6
MAX_NAIVE_N = 4

Sink = Callable[[SetFamily], None]


class EnumerationError(ValueError):
    pass


class CheckpointError(EnumerationError):
    pass


@dataclass(frozen=True)
class EnumFilter:
    t_min: int | None = None
    t_exact: int | None = None
    canonical_only: bool = False
    max_m: int | None = None

    def __post_init__(self) -> None:
        if self.t_min is not None and self.t_exact is not None:
            raise EnumerationError("t_min and t_exact are mutually exclusive")
        for v in (self.t_min, self.t_exact):
            if v is not None and v < 1:
                raise EnumerationError(f"T bound {v} must be >= 1")
        if self.max_m is not None and self.max_m < 1:
            raise EnumerationError("max_m must be >= 1")

    def validate(self, n: int) -> None:
        for v in (self.t_min, self.t_exact):
            if v is not None and v > n:
                raise EnumerationError(f"T bound {v} exceeds n={n}")


NO_FILTER = EnumFilter()


@dataclass(frozen=True)
class EnumCheckpoint:
    """Root of a subtree: the include/exclude decisions along a DFS prefix."""

    n: int
    decisions: str = ""
    order_version: str = ORDER_VERSION

    def to_json(self) -> dict:
        return {"n": self.n, "order_version": self.order_version, "decisions": self.decisions}

    @classmethod
    def from_json(cls, obj: dict) -> EnumCheckpoint:
        try:
            return cls(n=int(obj["n"]), decisions=str(obj["decisions"]), order_version=str(obj["order_version"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise CheckpointError(f"bad checkpoint object: {exc}") from None

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json()) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> EnumCheckpoint:
        try:
            obj = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise CheckpointError(f"checkpoint is not JSON: {exc}") from None
        return cls.from_json(obj)


def _check_n(n: int, limit: int = MAX_ENUM_N) -> None:
    if not 1 <= n <= limit:
        raise EnumerationError(f"n={n} outside 1..{limit}")


@lru_cache(maxsize=None)
def mask_order(n: int) -> tuple[int, ...]:
    """Proper nonempty masks in decision order."""
    top = full_mask(n)
    return tuple(sorted(range(1, top), key=lambda a: (-a.bit_count(), a)))


def _replay(n: int, decisions: str) -> tuple[list[int], bytearray]:
    order = mask_order(n)
    if len(decisions) > len(order) or set(decisions) - {"0", "1"}:
        raise CheckpointError(f"corrupt decision string {decisions!r}")
    present = bytearray(1 << n)
    present[0] = present[full_mask(n)] = 1
    included: list[int] = []
    for pos, d in enumerate(decisions):
        if d == "1":
            a = order[pos]
            if any(not present[a | b] for b in included):
                raise CheckpointError(f"infeasible prefix: mask {a:#x} at position {pos}")
            included.append(a)
            present[a] = 1
    return included, present


def _walk(n: int, decisions: str, filt: EnumFilter) -> Iterator[tuple[int, ...]]:
    """Yield the sorted member tuples of the subtree under ``decisions``."""
    order = mask_order(n)
    top = full_mask(n)
    included, present = _replay(n, decisions)
    start = len(decisions)

    t_lo = filt.t_exact if filt.t_exact is not None else (filt.t_min or 1)
    # masks below the T bound come last in the order; never include them
    end = len(order)
    while end > start and order[end - 1].bit_count() < t_lo:
        end -= 1
    if any(a.bit_count() < t_lo for a in included):
        return
    cands = [a for a in order[start:end] if all(present[a | b] for b in included)]
    max_extra = None if filt.max_m is None else filt.max_m - 2 - len(included)
    if max_extra is not None and max_extra < 0:
        return
    t_exact = filt.t_exact

    base = [0, top]

    def leaf_ok(members: list[int]) -> bool:
        if t_exact is None:
            return True
        last = members[-1] if members else top
        return last.bit_count() == t_exact

    # members grow in decision order, so members[-1] is a smallest-popcount one
    def rec(members: list[int], cands: list[int], budget: int | None) -> Iterator[tuple[int, ...]]:
        if budget is None or budget > 0:
            nb = None if budget is None else budget - 1
            for i, a in enumerate(cands):
                present[a] = 1
                members.append(a)
                rest = [c for c in cands[i + 1:] if present[c | a]]
                yield from rec(members, rest, nb)
                members.pop()
                present[a] = 0
        if leaf_ok(members):
            yield tuple(sorted(base + members))

    yield from rec(list(included), cands, max_extra)


def resume(checkpoint: EnumCheckpoint, filt: EnumFilter = NO_FILTER, sink: Sink | None = None) -> int:
    """Emit every family in the checkpoint's subtree; return how many."""
    if checkpoint.order_version != ORDER_VERSION:
        raise CheckpointError(
            f"checkpoint order {checkpoint.order_version!r} != current {ORDER_VERSION!r}"
        )
    n = checkpoint.n
    _check_n(n)
    filt.validate(n)
    count = 0
    for members in _walk(n, checkpoint.decisions, filt):
        f = SetFamily._trusted(n, members, closed=True)
        if filt.canonical_only and canonical_form(f).members != members:
            continue
        count += 1
        if sink is not None:
            sink(f)
    return count


def enumerate_union_closed(n: int, filt: EnumFilter = NO_FILTER, sink: Sink | None = None) -> int:
    """Emit all union-closed families with ``∅`` and ``{1..n}`` as members."""
    _check_n(n)
    return resume(EnumCheckpoint(n), filt, sink)


def iter_union_closed(n: int, filt: EnumFilter = NO_FILTER) -> list[SetFamily]:
    out: list[SetFamily] = []
    enumerate_union_closed(n, filt, out.append)
    return out


def partition_tasks(n: int, depth: int) -> list[EnumCheckpoint]:
    """Feasible decision prefixes of length ``depth``, in emission order."""
    _check_n(n)
    order = mask_order(n)
    if not 0 <= depth <= len(order):
        raise EnumerationError(f"depth {depth} outside 0..{len(order)}")
    out: list[EnumCheckpoint] = []

    def rec(prefix: str, included: list[int], present: bytearray) -> None:
        pos = len(prefix)
        if pos == depth:
            out.append(EnumCheckpoint(n, prefix))
            return
        a = order[pos]
        if all(present[a | b] for b in included):
            present[a] = 1
            included.append(a)
            rec(prefix + "1", included, present)
            included.pop()
            present[a] = 0
        rec(prefix + "0", included, present)

    present = bytearray(1 << n)
    present[0] = present[full_mask(n)] = 1
    rec("", [], present)
    return out


def _count_task(args: tuple[EnumCheckpoint, EnumFilter]) -> int:
    cp, filt = args
    return resume(cp, filt)


def parallel_map(fn: Callable, tasks: list, threads: int = 1) -> list:
    """Map ``fn`` over picklable tasks, results in task order."""
    if threads <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, tasks))


def count_union_closed(n: int, filt: EnumFilter = NO_FILTER, threads: int = 1, depth: int = 6) -> int:
    _check_n(n)
    if threads <= 1:
        return enumerate_union_closed(n, filt)
    tasks = partition_tasks(n, min(depth, len(mask_order(n))))
    return sum(parallel_map(_count_task, [(cp, filt) for cp in tasks], threads))


def naive_enumerate(n: int) -> list[SetFamily]:
    """Brute-force oracle: test every subset of proper masks for union-closedness."""
    _check_n(n, MAX_NAIVE_N)
    top = full_mask(n)
    proper = list(range(1, top))
    found: list[tuple[int, ...]] = []
    for bits in itertools.product((0, 1), repeat=len(proper)):
        members = [0, top] + [a for a, b in zip(proper, bits) if b]
        present = set(members)
        if all((a | b) in present for a, b in itertools.combinations(members, 2)):
            found.append(tuple(sorted(members)))
    # include-first DFS over the decision order = ascending on "excluded?" flags
    order = mask_order(n)
    found.sort(key=lambda ms: tuple(0 if a in ms else 1 for a in order))
    return [SetFamily(n, ms) for ms in found]
