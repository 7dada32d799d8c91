"""Counterexample search over union-closed families.

Three sources of candidate families:

* the fixed nine-element counterexample to the S1 strengthening
  (:func:`paper_example`),
* exhaustive enumeration for ``n <= 6`` (:func:`exhaustive_scan`,
  :func:`question_scan`),
* seeded random closures of generator sets (:func:`random_closure_search`).

Every :class:`Finding` carries enough provenance to be regenerated, and its
verdict can be recomputed from the stored family.
"""

from __future__ import annotations

import enum
import json
import logging
from dataclasses import dataclass, field
from importlib import resources
from typing import Any, Iterable, Iterator, Sequence

import numpy as np

from .checkers import (
    Verdict,
    check_frankl,
    check_s1,
    check_s2,
)
from .enumeration import (
    EnumCheckpoint,
    EnumFilter,
    mask_order,
    parallel_map,
    partition_tasks,
    resume,
)
from .family import (
    SetFamily,
    abundant_elements,
    frequency_profile,
    full_mask,
    is_union_closed,
    size_profile,
    t_value,
    union_closure,
)
from .io import family_from_json, family_to_json, format_family

log = logging.getLogger(__name__)

DEFAULT_MAX_FINDINGS = 100
# random search draws in fixed-size chunks so results do not depend on threads
RANDOM_CHUNK = 1000


class SearchError(ValueError):
    pass


class SearchTarget(str, enum.Enum):
    FRANKL_FAIL = "frankl-fail"
    S1_FAIL = "s1-fail"
    S2_FAIL = "s2-fail"
    Q1_FAIL = "q1"
    Q2_FAIL = "q2"
    Q3_FAIL = "q3"

    def applies(self, t: int, n: int) -> bool:
        """Whether a family with ``T(F) = t`` is in scope for this target."""
        if self is SearchTarget.FRANKL_FAIL:
            return True
        if self is SearchTarget.Q1_FAIL:
            return t == 3
        if self is SearchTarget.Q2_FAIL:
            return t == 2
        if self is SearchTarget.Q3_FAIL:
            return 2 * t > n
        return t >= 2 and n >= 2

    def enum_filter(self, n: int) -> EnumFilter:
        if self is SearchTarget.FRANKL_FAIL:
            return EnumFilter()
        if self is SearchTarget.Q1_FAIL:
            return EnumFilter(t_exact=3)
        if self is SearchTarget.Q2_FAIL:
            return EnumFilter(t_exact=2)
        if self is SearchTarget.Q3_FAIL:
            return EnumFilter(t_min=n // 2 + 1)
        return EnumFilter(t_min=2)

    def verdict(self, f: SetFamily) -> Verdict:
        """The checker whose failure this target looks for.

        Q1 and Q3 ask for ``T(F)`` abundant elements (the S1 claim restricted
        to their regime); Q2 asks for two, which is the S2 claim.
        """
        if self is SearchTarget.FRANKL_FAIL:
            return check_frankl(f)
        if self in (SearchTarget.S2_FAIL, SearchTarget.Q2_FAIL):
            return check_s2(f)
        return check_s1(f)

    def feasible(self, n: int) -> bool:
        if self is SearchTarget.Q1_FAIL:
            return n >= 3
        if self in (SearchTarget.FRANKL_FAIL, SearchTarget.Q3_FAIL):
            return True
        return n >= 2


@dataclass(frozen=True)
class Provenance:
    kind: str  # "exhaustive" | "random" | "fixture"
    checkpoint: EnumCheckpoint | None = None
    seed: int | None = None
    iteration: int | None = None

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"kind": self.kind}
        if self.checkpoint is not None:
            out["checkpoint"] = self.checkpoint.to_json()
        if self.seed is not None:
            out["seed"] = self.seed
            out["iteration"] = self.iteration
        return out

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> Provenance:
        cp = obj.get("checkpoint")
        return cls(
            kind=obj["kind"],
            checkpoint=EnumCheckpoint.from_json(cp) if cp is not None else None,
            seed=obj.get("seed"),
            iteration=obj.get("iteration"),
        )


FIXTURE = Provenance("fixture")


@dataclass(frozen=True)
class Finding:
    family: SetFamily
    target: SearchTarget
    verdict: Verdict
    provenance: Provenance

    def recheck(self) -> bool:
        """True iff the target's checker reproduces the stored verdict."""
        return self.target.verdict(self.family) == self.verdict

    def to_json(self) -> dict[str, Any]:
        return {
            "target": self.target.value,
            "family": family_to_json(self.family),
            "verdict": self.verdict.to_json(),
            "provenance": self.provenance.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> Finding:
        return cls(
            family=family_from_json(obj["family"]),
            target=SearchTarget(obj["target"]),
            verdict=Verdict.from_json(obj["verdict"]),
            provenance=Provenance.from_json(obj["provenance"]),
        )


class Findings(list):
    """List of findings plus the number dropped by the per-run cap."""

    def __init__(self, items: Iterable[Finding] = (), suppressed: int = 0):
        super().__init__(items)
        self.suppressed = suppressed


def dump_findings(findings: Iterable[Finding]) -> str:
    return "".join(json.dumps(f.to_json()) + "\n" for f in findings)


def load_findings(text: str) -> list[Finding]:
    return [Finding.from_json(json.loads(line)) for line in text.splitlines() if line.strip()]


# --- the nine-element counterexample -----------------------------------------

PAPER_EXAMPLE_SETS: tuple[tuple[int, ...], ...] = (
    (),
    (1, 2, 7, 8), (3, 4, 7, 9), (5, 6, 8, 9),
    (1, 2, 7, 8, 9), (3, 4, 7, 8, 9), (5, 6, 7, 8, 9),
    (1, 2, 3, 4, 7, 8, 9), (1, 2, 5, 6, 7, 8, 9), (3, 4, 5, 6, 7, 8, 9),
    (1, 2, 3, 4, 5, 6, 7, 8, 9),
)

# the three 4-sets and three 5-sets generate the whole family
PAPER_EXAMPLE_GENERATORS: tuple[tuple[int, ...], ...] = PAPER_EXAMPLE_SETS[1:7]


def paper_example() -> SetFamily:
    return SetFamily.from_sets(9, PAPER_EXAMPLE_SETS)


def golden_paper_example_text() -> str:
    return resources.files("ucsc").joinpath("data/paper_example.family").read_text(encoding="utf-8")


@dataclass
class CheckItem:
    name: str
    expected: Any
    actual: Any

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


@dataclass
class PaperExampleReport:
    items: list[CheckItem] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(i.ok for i in self.items)

    def to_json(self) -> dict[str, Any]:
        def plain(v: Any) -> Any:
            if isinstance(v, tuple):
                return [plain(x) for x in v]
            return v

        return {
            "ok": self.ok,
            "checks": [
                {"name": i.name, "ok": i.ok, "expected": plain(i.expected), "actual": plain(i.actual)}
                for i in self.items
            ],
        }

    def __str__(self) -> str:
        lines = [f"{'PASS' if i.ok else 'FAIL'}  {i.name}: {i.actual}" for i in self.items]
        lines.append("all checks passed" if self.ok else "MISMATCH")
        return "\n".join(lines)


def verify_paper_example() -> PaperExampleReport:
    f = paper_example()
    s1 = check_s1(f)
    s2 = check_s2(f)
    fr = check_frankl(f)
    rep = PaperExampleReport()
    add = rep.items.append
    add(CheckItem("union_closed", True, is_union_closed(f)))
    add(CheckItem("m", 11, f.m))
    add(CheckItem("n", 9, f.n))
    add(CheckItem("t_value", 4, t_value(f)))
    add(CheckItem("frequencies", (5, 5, 5, 5, 5, 5, 9, 9, 9), frequency_profile(f)))
    add(CheckItem("abundant", (7, 8, 9), abundant_elements(f)))
    add(CheckItem("size_profile", (1, 0, 0, 0, 3, 3, 0, 3, 0, 1), size_profile(f)))
    add(CheckItem("s1", ("fails", 4, 3), (s1.status.value, s1.required, s1.achieved)))
    add(CheckItem("s2", "holds", s2.status.value))
    add(CheckItem("frankl", "holds", fr.status.value))
    add(CheckItem("golden_file", golden_paper_example_text(), format_family(f)))
    return rep


# --- exhaustive -----------------------------------------------------------------

def _scan_task(args: tuple[EnumCheckpoint, tuple[SearchTarget, ...], int]) -> tuple[list[Finding], int, int]:
    cp, targets, cap = args
    n = cp.n
    findings: list[Finding] = []
    suppressed = 0
    checked = 0
    # one pass with the loosest filter among targets
    filt = _union_filter(targets, n)

    def sink(f: SetFamily) -> None:
        nonlocal suppressed, checked
        checked += 1
        t = t_value(f)
        for target in targets:
            if not target.applies(t, n):
                continue
            v = target.verdict(f)
            if v.fails:
                if len(findings) < cap:
                    findings.append(Finding(f, target, v, Provenance("exhaustive", checkpoint=cp)))
                else:
                    suppressed += 1

    resume(cp, filt, sink)
    return findings, suppressed, checked


def _union_filter(targets: Sequence[SearchTarget], n: int) -> EnumFilter:
    lows = []
    for target in targets:
        flt = target.enum_filter(n)
        lows.append(flt.t_exact or flt.t_min or 1)
    low = min(lows)
    return EnumFilter(t_min=low) if low > 1 else EnumFilter()


def exhaustive_scan(
    n: int,
    targets: Sequence[SearchTarget],
    *,
    max_findings: int = DEFAULT_MAX_FINDINGS,
    threads: int = 1,
    depth: int = 6,
) -> Findings:
    """Every enumerated family on which a target's claim fails.

    Findings come out in enumeration order, grouped by family; at most
    ``max_findings`` are kept and the rest are counted in ``.suppressed``.
    """
    targets = tuple(SearchTarget(t) for t in targets)
    targets = tuple(t for t in targets if t.feasible(n))
    if not targets:
        return Findings()
    if threads <= 1:
        tasks = [EnumCheckpoint(n)]
    else:
        tasks = partition_tasks(n, min(depth, len(mask_order(n))))
    results = parallel_map(_scan_task, [(cp, targets, max_findings) for cp in tasks], threads)
    out = Findings()
    checked = 0
    for found, supp, cnt in results:
        checked += cnt
        out.suppressed += supp
        for fd in found:
            if len(out) < max_findings:
                out.append(fd)
            else:
                out.suppressed += 1
    log.info("exhaustive n=%d: %d families checked, %d findings", n, checked, len(out) + out.suppressed)
    return out


@dataclass
class QuestionStats:
    question: str
    instances: int = 0
    violations: int = 0
    first_violation: SetFamily | None = None

    def to_json(self) -> dict[str, Any]:
        return {
            "question": self.question,
            "instances": self.instances,
            "violations": self.violations,
            "first_violation": None if self.first_violation is None else family_to_json(self.first_violation),
        }


def question_scan(n: int) -> dict[str, QuestionStats]:
    """Per-question instance and violation counts over all families on ``n``."""
    stats = {q: QuestionStats(q) for q in ("q1", "q2", "q3")}
    claims = {"q1": lambda t: 3, "q2": lambda t: 2, "q3": lambda t: t}

    def sink(f: SetFamily) -> None:
        t = t_value(f)
        k = len(abundant_elements(f))
        for q, applies in (("q1", t == 3), ("q2", t == 2), ("q3", 2 * t > n)):
            if not applies:
                continue
            st = stats[q]
            st.instances += 1
            if k < claims[q](t):
                st.violations += 1
                if st.first_violation is None:
                    st.first_violation = f

    resume(EnumCheckpoint(n), EnumFilter(t_min=2) if n >= 2 else EnumFilter(), sink)
    return stats


# --- random ---------------------------------------------------------------------

def _chunk_rng(seed: int, chunk: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed & (2**64 - 1), chunk]))


def _check_range(name: str, rng_: tuple[int, int], lo: int, hi: int) -> None:
    a, b = rng_
    if not lo <= a <= b <= hi:
        raise SearchError(f"{name} range {rng_} must satisfy {lo} <= lo <= hi <= {hi}")


def draw_generators(
    rng: np.random.Generator,
    n: int,
    gen_count_range: tuple[int, int],
    gen_size_range: tuple[int, int],
    pool: Sequence[int] | None = None,
) -> list[int]:
    """Random generator masks: uniform count, then uniform size and uniform
    subset of that size (or a uniform sample without replacement from ``pool``)."""
    count = int(rng.integers(gen_count_range[0], gen_count_range[1] + 1))
    if pool is not None:
        idx = rng.choice(len(pool), size=min(count, len(pool)), replace=False)
        return [pool[i] for i in idx]
    gens = []
    for _ in range(count):
        size = int(rng.integers(gen_size_range[0], gen_size_range[1] + 1))
        mask = 0
        for e in rng.choice(n, size=size, replace=False):
            mask |= 1 << int(e)
        gens.append(mask)
    return gens


def closure_with_empty(n: int, gens: Sequence[int]) -> SetFamily:
    return union_closure(SetFamily.from_masks(n, [0, *gens]))


def iter_random_closures(
    n: int,
    seed: int,
    iterations: int,
    gen_count_range: tuple[int, int] = (2, 6),
    gen_size_range: tuple[int, int] | None = None,
    pool: Sequence[int] | None = None,
    start: int = 0,
) -> Iterator[tuple[int, SetFamily]]:
    """Yield ``(iteration, family)`` for draws whose closure covers ``{1..n}``.

    Iteration ``i`` uses the generator of chunk ``i // RANDOM_CHUNK``, so any
    sub-range of iterations reproduces the same draws.
    """
    if not 1 <= n <= 16:
        raise SearchError(f"n={n} outside 1..16")
    if gen_size_range is None:
        gen_size_range = (1, n)
    _check_range("gen_count", gen_count_range, 1, 1 << 16)
    _check_range("gen_size", gen_size_range, 0, n)
    if iterations < 0:
        raise SearchError("iterations must be >= 0")
    top = full_mask(n)
    it = start
    end = start + iterations
    while it < end:
        chunk = it // RANDOM_CHUNK
        rng = _chunk_rng(seed, chunk)
        # fast-forward inside the chunk so a mid-chunk start stays reproducible
        for _ in range(it - chunk * RANDOM_CHUNK):
            draw_generators(rng, n, gen_count_range, gen_size_range, pool)
        stop = min(end, (chunk + 1) * RANDOM_CHUNK)
        while it < stop:
            gens = draw_generators(rng, n, gen_count_range, gen_size_range, pool)
            f = closure_with_empty(n, gens)
            if f.members[-1] == top:
                yield it, f
            it += 1


def _random_task(args) -> tuple[list[Finding], int]:
    n, target, seed, start, count, gcr, gsr, pool, cap = args
    found: list[Finding] = []
    suppressed = 0
    for it, f in iter_random_closures(n, seed, count, gcr, gsr, pool, start=start):
        t = t_value(f) if f.m > 1 else 0
        if t == 0 or not target.applies(t, n):
            continue
        v = target.verdict(f)
        if v.fails:
            if len(found) < cap:
                found.append(Finding(f, target, v, Provenance("random", seed=seed, iteration=it)))
            else:
                suppressed += 1
    return found, suppressed


def random_closure_search(
    n: int,
    target: SearchTarget,
    seed: int,
    iterations: int,
    gen_count_range: tuple[int, int] = (2, 6),
    gen_size_range: tuple[int, int] | None = None,
    *,
    pool: Sequence[Iterable[int]] | None = None,
    max_findings: int = DEFAULT_MAX_FINDINGS,
    threads: int = 1,
) -> Findings:
    """Sample closures of random generators and keep those failing ``target``.

    ``pool`` restricts generators to the given sets (element lists). The
    result depends only on the arguments, not on ``threads``.
    """
    target = SearchTarget(target)
    pool_masks = None
    if pool is not None:
        pool_masks = [SetFamily.from_sets(n, [s]).members[0] for s in pool]
    if gen_size_range is None:
        gen_size_range = (1, n)
    tasks = []
    for start in range(0, iterations, RANDOM_CHUNK):
        count = min(RANDOM_CHUNK, iterations - start)
        tasks.append((n, target, seed, start, count, gen_count_range, gen_size_range, pool_masks, max_findings))
    if not tasks:
        # still validates arguments
        list(iter_random_closures(n, seed, 0, gen_count_range, gen_size_range, pool_masks))
        return Findings()
    out = Findings()
    for found, supp in parallel_map(_random_task, tasks, threads):
        out.suppressed += supp
        for fd in found:
            if len(out) < max_findings:
                out.append(fd)
            else:
                out.suppressed += 1
    return out


def block_template_generators(blocks: int, block_size: int, spine: int, spine_per_block: int) -> tuple[int, list[int]]:
    """Generators shaped like the nine-element counterexample.

    ``blocks`` disjoint blocks of ``block_size`` private elements, followed by
    ``spine`` shared elements. Block ``b`` gets two generators: its private
    elements plus a cyclic window of ``spine_per_block`` spine elements, and
    the same plus the whole spine. Returns ``(n, generator masks)``.
    """
    if spine_per_block > spine:
        raise SearchError("spine_per_block exceeds spine size")
    n = blocks * block_size + spine
    if n > 16:
        raise SearchError(f"template needs n={n} > 16")
    spine_bits = [blocks * block_size + j for j in range(spine)]
    all_spine = sum(1 << b for b in spine_bits)
    gens = []
    for b in range(blocks):
        private = sum(1 << (b * block_size + j) for j in range(block_size))
        window = sum(1 << spine_bits[(b + j) % spine] for j in range(spine_per_block))
        gens.append(private | window)
        gens.append(private | all_spine)
    return n, gens


def template_search(max_n: int = 16, target: SearchTarget = SearchTarget.S1_FAIL) -> Findings:
    """Try every block template that fits in ``max_n`` elements."""
    target = SearchTarget(target)
    out = Findings()
    for blocks in range(2, 9):
        for block_size in range(1, 9):
            for spine in range(1, 9):
                if blocks * block_size + spine > max_n:
                    continue
                for per in range(1, spine + 1):
                    n, gens = block_template_generators(blocks, block_size, spine, per)
                    f = closure_with_empty(n, gens)
                    if f.members[-1] != full_mask(n):
                        continue
                    t = t_value(f)
                    if not target.applies(t, n):
                        continue
                    v = target.verdict(f)
                    if v.fails:
                        out.append(Finding(f, target, v, Provenance("fixture")))
    return out

