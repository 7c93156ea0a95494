"""How the two counting readings compare with brute force on small random games."""

import numpy as np

from strongnash.oracle import Kind, ans_set, enumerate_equilibria, random_game
from strongnash.relations import RelationConfig

rng = np.random.default_rng(7)
tally = {"literal": 0, "all_members": 0}
games = 0
for _ in range(100):
    n = int(rng.integers(2, 4))
    g = random_game(n, 2, rng)
    sne = {tuple(s) for s in enumerate_equilibria(g, Kind.STRONG_NASH).tolist()}
    if not sne:
        continue
    games += 1
    for reading in tally:
        found = {tuple(s) for s in ans_set(g, RelationConfig(reading=reading)).tolist()}
        tally[reading] += found == sne

for reading, hits in tally.items():
    print(f"{reading:12s} matches brute force on {hits}/{games} games with a strong Nash profile")
