"""
Enumerating union-closed families
=================================

Count labeled union-closed families with the empty set and the full ground set,
stratify them by T(F), and split the search tree into resumable subtrees.
"""

import time

from ucsc import EnumFilter, enumerate_union_closed, naive_enumerate, partition_tasks, resume

# the depth-first enumerator agrees with brute force wherever brute force is feasible
for n in range(1, 5):
    print(n, enumerate_union_closed(n), len(naive_enumerate(n)))

# n = 5 takes a few seconds
t0 = time.perf_counter()
print("n=5:", enumerate_union_closed(5), f"({time.perf_counter() - t0:.1f}s)")

# how the families on 4 points distribute over T(F)
for k in range(1, 5):
    print("T =", k, enumerate_union_closed(4, EnumFilter(t_exact=k)))

# subtree roots for parallel or interrupted runs; their counts add up
tasks = partition_tasks(4, 3)
for cp in tasks:
    print(cp.to_json(), resume(cp))
print("total", sum(resume(cp) for cp in tasks))
