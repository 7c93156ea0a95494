"""Seeded campaign on the minimum-effort game, written to ./min_effort_out.

Five runs per variant keep this to a few seconds.
"""

from pathlib import Path

from strongnash.harness import config_from_dict, format_report, run_experiment, smooth_series
from strongnash.harness import read_csv_distances

out = Path("min_effort_out")
cfg = config_from_dict({
    "game": "min_effort", "players": 5, "alpha": 0.5,
    "relation": ["full", "prob"], "p": [0.1, 0.4],
    "runs": 5, "seed": 0, "budget": 2e6, "out_dir": str(out),
})
report = run_experiment(cfg)
print(format_report(report))

# every run leaves a convergence CSV; smooth one the way convergence plots are drawn
d = read_csv_distances(out / "p10" / "run_0.csv")
s = smooth_series(d, 5)
print("raw head:     ", [f"{x:.2f}" for x in d[:8]])
print("smoothed head:", [f"{x:.2f}" for x in s[:8]])
