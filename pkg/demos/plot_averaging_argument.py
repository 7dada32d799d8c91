"""
The averaging argument
======================

When twice the rounded-up average frequency over proper members reaches their
number, the most frequent element is abundant. This always happens once
2 T(F) >= n.
"""

from ucsc import EnumFilter, averaging_argument, enumerate_union_closed, paper_example

print("fixture:", averaging_argument(paper_example()))

for n in range(2, 6):
    hits = total = 0

    def visit(f):
        global hits, total
        total += 1
        hits += averaging_argument(f) is not None

    enumerate_union_closed(n, sink=visit)
    regime = enumerate_union_closed(n, EnumFilter(t_min=(n + 1) // 2))
    print(f"n={n}: conclusive on {hits}/{total} families; {regime} have 2T >= n")
