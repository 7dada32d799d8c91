"""
The nine-element S1 counterexample
==================================

Load the fixture, look at its statistics, and run the three checkers.
"""

from ucsc import (
    abundant_elements,
    check_frankl,
    check_s1,
    check_s2,
    frequency_profile,
    is_union_closed,
    paper_example,
    size_profile,
    t_value,
)

f = paper_example()
print(f)

# the family is union-closed and its smallest nonempty member has 4 elements
print("union-closed:", is_union_closed(f), " m =", f.m, " T(F) =", t_value(f))

# elements 1..6 sit in 5 of the 11 sets, just short of half
print("frequencies:", frequency_profile(f))
print("abundant:   ", abundant_elements(f))
print("n_k:        ", size_profile(f))

# only three abundant elements although T(F) = 4, so S1 fails; S2 and Frankl hold
for check in (check_frankl, check_s1, check_s2):
    print(check(f).to_json())
