"""
Searching for counterexamples
=============================

Exhaustive scans at small n, seeded random closures at larger n, and closures
of block-shaped generator templates modelled on the nine-element example.
"""

from ucsc import t_value
from ucsc.search import (
    PAPER_EXAMPLE_GENERATORS,
    SearchTarget,
    exhaustive_scan,
    question_scan,
    random_closure_search,
    template_search,
)

# nothing fails S1 on five points or fewer
for n in range(2, 6):
    print(n, len(exhaustive_scan(n, [SearchTarget.S1_FAIL])))

for q, stats in question_scan(5).items():
    print(q, stats.instances, stats.violations)

# random closures drawn from the fixture's six generators rediscover it
found = random_closure_search(9, SearchTarget.S1_FAIL, seed=0, iterations=200,
                              gen_count_range=(3, 6), pool=PAPER_EXAMPLE_GENERATORS)
print(len(found), "S1 failures;", len({f.family for f in found}), "distinct families")

# templates give failures with larger T(F)
for fd in template_search(12):
    f = fd.family
    print(f"n={f.n} m={f.m} T={t_value(f)} abundant={fd.verdict.achieved}")

# some of them sit in the 2T > n regime; each finding rechecks from its family
for fd in template_search(12, SearchTarget.Q3_FAIL):
    print("q3:", fd.family, fd.verdict.to_json(), fd.recheck())
