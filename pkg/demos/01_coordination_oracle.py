"""A 2x2 coordination game, checked by brute force and by the dominance relation."""

import numpy as np

from strongnash.game import example1, evaluate_payoffs
from strongnash.oracle import Kind, ans_set, enumerate_equilibria
from strongnash.relations import aumann_count, compare

g = example1()
labels = lambda rows: [g.format_profile(s) for s in rows]

# the payoff table, one profile per line
for s in np.ndindex(2, 2):
    print(g.format_profile(s), evaluate_payoffs(g, s))

# two pure Nash equilibria, but only one survives coalition deviations
print("Nash:       ", labels(enumerate_equilibria(g, Kind.NASH)))
print("strong Nash:", labels(enumerate_equilibria(g, Kind.STRONG_NASH)))

# (B,B) -> (A,A) lifts both players through the grand coalition: count 2
print("a((B,B),(A,A)) =", aumann_count(g, [1, 1], [0, 0]))
print("a((A,A),(B,B)) =", aumann_count(g, [0, 0], [1, 1]))
print("verdict:", compare(g, [0, 0], [1, 1]).verdict.name)

# the non-dominated profiles coincide with the strong Nash set
print("non-dominated:", labels(ans_set(g)))
