"""Search a continuous game for its strong Nash equilibrium (1, -1)."""

import numpy as np

from strongnash.crde import SolverConfig, run
from strongnash.game import game1
from strongnash.relations import RelationConfig

g = game1()
ref = np.array([1.0, -1.0])

for rel in (RelationConfig(), RelationConfig(mode="prob", p=0.4)):
    cfg = SolverConfig(pop_size=50, F=0.5, pc=0.9, max_evaluations=10**6, relation=rel, seed=3)
    r = run(g, cfg, reference=ref)
    print(f"{rel.mode.value:5s} p={rel.p:.1f}  best={r.best_profile}  "
          f"distance={r.best_distance:.3g}  generations={r.generations}")

    # how fast the closest member approaches the equilibrium
    for s in (r.convergence[k] for k in (0, 1, 5, 20, 50, 100, 200, -1)):
        print(f"    gen {s.generation:5d}  evals {s.evaluations:8d}  best {s.best_distance:.3e}")

# the final non-dominated members all sit at the equilibrium
print(np.unique(r.final_nondominated.round(9), axis=0))
