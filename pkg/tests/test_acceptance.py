"""Acceptance criteria, one test per criterion.

Each prints a single ``[criterion k] PASS|FAIL`` line (visible with ``-s`` or
in the captured output section). Tolerances are exact: every criterion
demands zero violations.
"""

import time
from contextlib import contextmanager

import numpy as np
import pytest

from ucsc import (
    EnumFilter,
    SetFamily,
    abundant_elements,
    averaging_argument,
    check_frankl,
    check_s1,
    check_s2,
    enumerate_union_closed,
    frequency_profile,
    is_union_closed,
    iter_union_closed,
    lemma_1_2_witness,
    naive_enumerate,
    permute,
    size_profile,
    t_value,
    union_closure,
)
from ucsc.enumeration import count_union_closed
from ucsc.search import SearchTarget, exhaustive_scan, iter_random_closures, verify_paper_example

from .conftest import oracle_union_closed

SEED = 20240601


@contextmanager
def criterion(k, title, budget_s=None):
    t0 = time.perf_counter()
    status = "FAIL"
    try:
        yield
        elapsed = time.perf_counter() - t0
        if budget_s is not None:
            assert elapsed < budget_s, f"runtime {elapsed:.1f}s exceeds {budget_s}s"
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - t0
        print(f"\n[criterion {k}] {status}  {title}  ({elapsed:.2f}s)")


def test_c1_paper_fixture():
    with criterion(1, "nine-element fixture reproduced exactly", budget_s=1.0):
        rep = verify_paper_example()
        got = {i.name: i.actual for i in rep.items}
        assert got["union_closed"] is True
        assert got["m"] == 11
        assert got["t_value"] == 4
        assert got["frequencies"] == (5, 5, 5, 5, 5, 5, 9, 9, 9)
        assert got["abundant"] == (7, 8, 9)
        assert got["s1"] == ("fails", 4, 3)
        assert got["s2"] == "holds"
        assert got["frankl"] == "holds"
        assert rep.ok


def test_c2_oracle_equivalence():
    with criterion(2, "DFS enumeration == brute-force oracle for n<=4", budget_s=10.0):
        expected = {1: 1, 2: 4, 3: 45}
        for n in (1, 2, 3, 4):
            fast = iter_union_closed(n)
            slow = naive_enumerate(n)
            assert [f.members for f in fast] == [f.members for f in slow]
            if n in expected:
                assert len(fast) == expected[n]


def test_c3_s1_small_n():
    with criterion(3, "no S1 failure for n in {2,3,4}", budget_s=30.0):
        for n in (2, 3, 4):
            assert exhaustive_scan(n, [SearchTarget.S1_FAIL], threads=1) == []


N5_TOTAL = 1373701


def test_c4_s1_n5():
    with criterion(4, "no S1 failure for n=5; enumeration count stable", budget_s=600.0):
        found = exhaustive_scan(5, [SearchTarget.S1_FAIL], threads=1)
        assert found == [] and found.suppressed == 0
        in_scope = enumerate_union_closed(5, EnumFilter(t_min=2))
        total = enumerate_union_closed(5)
        print(f"\n  n=5: {total} families, {in_scope} with T>=2")
        assert total == N5_TOTAL
        assert count_union_closed(5, threads=2, depth=6) == N5_TOTAL
        assert count_union_closed(5, EnumFilter(t_min=2), threads=2) == in_scope
        assert exhaustive_scan(5, [SearchTarget.S1_FAIL], threads=2) == []


def test_c5_implication_chain():
    with criterion(5, "S1 => S2 => Frankl, and Frankl holds, for all n<=5"):
        violations = 0
        frankl_fail = 0
        checked = 0

        def sink(f):
            nonlocal violations, frankl_fail, checked
            checked += 1
            s1, s2, fr = check_s1(f), check_s2(f), check_frankl(f)
            if not fr.holds:
                frankl_fail += 1
            if t_value(f) >= 2 and f.n >= 2:
                if s1.holds and not s2.holds:
                    violations += 1
                if s2.holds and not fr.holds:
                    violations += 1

        for n in range(1, 6):
            enumerate_union_closed(n, sink=sink)
        assert checked == 1 + 4 + 45 + 2271 + N5_TOTAL
        assert violations == 0
        assert frankl_fail == 0
        for n in range(1, 6):
            assert exhaustive_scan(n, [SearchTarget.FRANKL_FAIL]) == []


def test_c6_lemma_pairs():
    with criterion(6, "disjoint 2-set pair => two abundant elements, n<=5"):
        violations = 0
        with_pair = 0

        def sink(f):
            nonlocal violations, with_pair
            if lemma_1_2_witness(f) is not None:
                with_pair += 1
                if len(abundant_elements(f)) < 2:
                    violations += 1

        for n in range(2, 6):
            enumerate_union_closed(n, EnumFilter(t_exact=2), sink)
        assert with_pair > 0
        assert violations == 0


def _random_closed(n, count, seed):
    """``count`` accepted random closures, half with large generators so the
    2T >= n regime is well populated."""
    out = []
    half = count // 2
    for size_range, want, sub in (((1, n), half, 0), (((n + 1) // 2, n), count - half, 1)):
        got = 0
        start = 0
        while got < want:
            for _, f in iter_random_closures(n, seed * 10 + sub, 5000, (1, 6), size_range, start=start):
                out.append(f)
                got += 1
                if got == want:
                    break
            start += 5000
    return out


def test_c7_averaging():
    with criterion(7, "averaging witness is abundant; covers 2T>=n", budget_s=60.0):
        unsound = 0
        uncovered = 0
        regime = 0

        def visit(f):
            nonlocal unsound, uncovered, regime
            e = averaging_argument(f)
            if e is not None and e not in abundant_elements(f):
                unsound += 1
            if 2 * t_value(f) >= f.n:
                regime += 1
                if e is None:
                    uncovered += 1

        for n in range(1, 6):
            enumerate_union_closed(n, sink=visit)
        for n in range(6, 10):
            fams = _random_closed(n, 10_000, SEED + n)
            assert len(fams) == 10_000
            for f in fams:
                visit(f)
        assert regime > 0
        assert unsound == 0
        assert uncovered == 0


def test_c8_closure_properties():
    with criterion(8, "closure idempotent, sound, minimal", budget_s=30.0):
        violations = 0
        for n in range(3, 9):
            rng = np.random.default_rng([SEED, n])
            for _ in range(1000):
                k = int(rng.integers(1, 7))
                gens = SetFamily.from_masks(n, rng.integers(0, 1 << n, size=k).tolist())
                c = union_closure(gens)
                if union_closure(c) != c:
                    violations += 1
                if not (is_union_closed(SetFamily(n, c.members)) and oracle_union_closed(c.as_sets())):
                    violations += 1
                if not set(gens.members) <= set(c.members):
                    violations += 1
                for x in c.members:
                    below = 0
                    for g in gens.members:
                        if g & ~x == 0:
                            below |= g
                    if below != x:
                        violations += 1
        assert violations == 0


def test_c9_permutation_invariance():
    with criterion(9, "verdicts and profiles invariant/equivariant under relabelling"):
        violations = 0
        for n in range(3, 7):
            rng = np.random.default_rng([SEED, 100 + n])
            fams = [f for _, f in iter_random_closures(n, SEED + 100 + n, 4000, (1, 6), (1, n))][:500]
            assert len(fams) == 500
            for f in fams:
                p = [int(x) + 1 for x in rng.permutation(n)]
                g = permute(f, p)
                ok = (
                    t_value(g) == t_value(f)
                    and g.m == f.m
                    and size_profile(g) == size_profile(f)
                    and all(frequency_profile(g)[p[i] - 1] == frequency_profile(f)[i] for i in range(n))
                )
                for chk in (check_frankl, check_s1, check_s2):
                    a, b = chk(f), chk(g)
                    ok &= (a.status, a.required, a.achieved) == (b.status, b.required, b.achieved)
                    ok &= set(b.witnesses) == {p[e - 1] for e in a.witnesses}
                violations += not ok
        assert violations == 0
