"""Multi-run experiment campaigns and their on-disk artifacts.

A campaign runs ``runs`` seeded solver runs for each relation variant and
writes, below ``out_dir``::

    report.txt               one block per variant: distance mean/std, timing
    result.json              seeds, final profiles and distances of every run
    <variant>/run_<k>.csv    convergence series of run k
"""

from __future__ import annotations

import csv
import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

import numpy as np

from .crde import RunResult, SolverConfig, run
from .exceptions import ConfigError, ParameterError
from .game import Game, distance_to_reference  # noqa: F401  (re-exported)
from .gamefile import game_from_dict, load_yaml
from .relations import Mode, RelationConfig

CSV_COLUMNS = ("generation", "evaluations", "best_distance", "nondominated_count", "mean_distance")


def _mode(value) -> Mode:
    try:
        return Mode(value)
    except ValueError as exc:
        raise ConfigError(f"relation must be 'full' or 'prob', got {value!r}") from exc


def smooth_series(series, window: int = 5) -> np.ndarray:
    """Centered moving average whose window shrinks symmetrically at the edges.

    Entry ``k`` averages the entries within ``min(k, len - 1 - k, (window - 1) // 2)``
    positions, so the first and last entries are kept as they are.

    >>> smooth_series([0.0, 3.0, 0.0, 3.0, 0.0], 3).tolist()
    [0.0, 1.0, 2.0, 1.0, 0.0]
    """
    x = np.asarray(series, dtype=float)
    if window < 1 or window % 2 == 0:
        raise ParameterError(f"window must be an odd positive integer, got {window}")
    if window > max(1, x.size):
        raise ParameterError("window longer than the series")
    half = (window - 1) // 2
    csum = np.concatenate([[0.0], np.cumsum(x)])
    k = np.arange(x.size)
    h = np.minimum(np.minimum(k, x.size - 1 - k), half)
    return (csum[k + h + 1] - csum[k - h]) / (2 * h + 1)


def default_reference(game: Game):
    """Known strong Nash equilibrium of a built-in game, or ``None``."""
    if game.name == "game1":
        return np.array([1.0, -1.0])
    if game.name == "min_effort":
        return game.upper.copy()
    if game.name == "example1":
        return np.array([0.0, 0.0])
    return None


@dataclass(frozen=True)
class ExperimentConfig:
    game: dict
    solver: SolverConfig = field(default_factory=SolverConfig)
    variants: tuple = ((Mode.FULL, 1.0),)
    runs: int = 10
    seed: int = 0
    reference: tuple | None = None
    out_dir: str | None = None
    success_tolerance: float = 1e-3

    def __post_init__(self):
        if self.runs < 1:
            raise ConfigError("runs must be at least 1")


@dataclass
class VariantReport:
    label: str
    mode: str
    p: float
    seeds: list
    distances: list
    seconds: list
    results: list = field(default_factory=list, repr=False)
    tolerance: float = 1e-3

    @property
    def mean_distance(self) -> float:
        return float(np.mean(self.distances))

    @property
    def std_distance(self) -> float:
        return _sample_std(self.distances)

    @property
    def successes(self) -> int:
        return len(self._success_times)

    @property
    def mean_seconds(self) -> float:
        return float(np.mean(self.seconds))

    @property
    def mean_success_seconds(self) -> float:
        t = self._success_times
        return float(np.mean(t)) if t else float("nan")

    @property
    def _success_times(self):
        return [t for d, t in zip(self.distances, self.seconds) if d <= self.tolerance]


@dataclass
class CampaignReport:
    config: ExperimentConfig
    variants: list

    def variant(self, label: str) -> VariantReport:
        for v in self.variants:
            if v.label == label:
                return v
        raise KeyError(label)


def _sample_std(values) -> float:
    if len(values) < 2:
        return 0.0
    return float(np.std(values, ddof=1))


def _round12(x: float) -> float:
    return float(f"{x:.12g}")


def variant_label(mode, p: float) -> str:
    if Mode(mode) is Mode.FULL:
        return "full"
    return f"p{round(p * 100, 6):g}"


def _as_list(value):
    if value is None:
        return []
    return list(value) if isinstance(value, (list, tuple)) else [value]


def config_from_dict(data: dict, base_dir: Path | None = None) -> ExperimentConfig:
    """Experiment configuration from a parsed config mapping."""
    data = dict(data)
    game_def = data.get("game")
    if game_def is None:
        raise ConfigError("config needs a 'game'")
    if isinstance(game_def, str) and game_def.endswith((".yaml", ".yml", ".json")):
        path = Path(game_def)
        if base_dir is not None and not path.is_absolute():
            path = base_dir / path
        game_def = load_yaml(path)
    elif isinstance(game_def, str):
        game_def = {"type": game_def}
        for key in ("players", "alpha", "bounds", "payoffs", "actions"):
            if key in data:
                game_def[key] = data[key]

    variants = []
    for v in _as_list(data.get("variants")):
        variants.append((_mode(v.get("relation", "full")), float(v.get("p", 1.0))))
    if not variants:
        probs = [float(p) for p in _as_list(data.get("p"))] or [1.0]
        for rel in _as_list(data.get("relation", "full")):
            if _mode(rel) is Mode.FULL:
                variants.append((Mode.FULL, 1.0))
            else:
                variants.extend((Mode.PROBABILISTIC, p) for p in probs)

    try:
        solver = SolverConfig(
            pop_size=int(data.get("pop_size", 50)),
            F=float(data.get("F", 0.5)),
            pc=float(data.get("pc", 0.9)),
            max_evaluations=int(float(data.get("budget", 1_000_000))),
            relation=RelationConfig(
                tolerance=float(data.get("tolerance", 0.0)),
                reading=data.get("reading", "literal"),
            ),
            snapshot_every=int(data.get("snapshot_every", 1)),
            budget_unit=data.get("budget_unit", "payoff_evaluations"),
            track_nondominated=bool(data.get("track_nondominated", False)),
            in_place=bool(data.get("in_place", True)),
        )
    except (ParameterError, ValueError) as exc:
        raise ConfigError(f"invalid solver settings: {exc}") from exc
    ref = data.get("reference")
    return ExperimentConfig(
        game=game_def,
        solver=solver,
        variants=tuple(variants),
        runs=int(data.get("runs", 10)),
        seed=int(data.get("seed", 0)),
        reference=None if ref is None else tuple(float(x) for x in ref),
        out_dir=data.get("out_dir"),
        success_tolerance=float(data.get("success_tolerance", 1e-3)),
    )


def load_config(path) -> ExperimentConfig:
    path = Path(path)
    return config_from_dict(load_yaml(path), base_dir=path.parent)


def _one_run(game: Game, solver: SolverConfig, reference):
    t0 = time.perf_counter()
    result = run(game, solver, reference=reference)
    return result, time.perf_counter() - t0


def _worker(args):
    definition, solver, reference = args
    return _one_run(game_from_dict(definition), solver, reference)


def _threads() -> int:
    raw = os.environ.get("STRONGNASH_THREADS")
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError as exc:
        raise ConfigError(f"STRONGNASH_THREADS must be an integer, got {raw!r}") from exc


def run_experiment(cfg: ExperimentConfig) -> CampaignReport:
    """Execute every variant's seeded runs and persist the artifacts.

    Run ``k`` of every variant uses seed ``cfg.seed + k``. Probabilistic
    variants that select no coalition are rejected before any run starts.
    """
    game = game_from_dict(cfg.game)
    n = game.n_players
    reference = np.array(cfg.reference) if cfg.reference is not None else default_reference(game)
    relations = []
    for mode, p in cfg.variants:
        try:
            rel = replace(cfg.solver.relation, mode=mode, p=p)
            rel.check_players(n)
        except ParameterError as exc:
            raise ConfigError(f"variant {variant_label(mode, p)}: {exc}") from exc
        relations.append(rel)

    threads = _threads()
    reports = []
    for (mode, p), rel in zip(cfg.variants, relations):
        seeds = [cfg.seed + k for k in range(cfg.runs)]
        solvers = [replace(cfg.solver, relation=rel, seed=s) for s in seeds]
        if threads > 1:
            with ProcessPoolExecutor(max_workers=threads) as pool:
                outcomes = list(pool.map(_worker, [(cfg.game, s, reference) for s in solvers]))
        else:
            outcomes = [_one_run(game, s, reference) for s in solvers]
        results = [r for r, _ in outcomes]
        if reference is not None:
            distances = [_round12(distance_to_reference(r.best_profile, reference)) for r in results]
        else:
            distances = [float("nan")] * len(results)
        reports.append(
            VariantReport(
                label=variant_label(mode, p),
                mode=Mode(mode).value,
                p=float(p),
                seeds=seeds,
                distances=distances,
                seconds=[t for _, t in outcomes],
                results=results,
                tolerance=cfg.success_tolerance,
            )
        )
    report = CampaignReport(cfg, reports)
    if cfg.out_dir is not None:
        write_outputs(report, Path(cfg.out_dir))
    return report


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return "nan" if math.isnan(x) else f"{x:.12g}"
    return str(x)


def write_convergence_csv(result: RunResult, path: Path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_COLUMNS)
        for s in result.convergence:
            w.writerow([s.generation, s.evaluations, _fmt(s.best_distance),
                        _fmt(s.nondominated_count), _fmt(s.mean_distance)])


def read_csv_distances(path) -> list:
    """``best_distance`` column of a convergence CSV."""
    with open(path, newline="") as fh:
        return [float(row["best_distance"]) for row in csv.DictReader(fh)]


def format_report(report: CampaignReport) -> str:
    cfg = report.config
    lines = [
        f"game: {cfg.game.get('type')}  players: {game_from_dict(cfg.game).n_players}",
        f"runs: {cfg.runs}  root seed: {cfg.seed}  budget: {cfg.solver.max_evaluations} "
        f"({cfg.solver.budget_unit})",
        "",
    ]
    for v in report.variants:
        lines += [
            f"[{v.label}]",
            f"mean_distance = {_fmt(v.mean_distance)}",
            f"std_distance = {_fmt(v.std_distance)}",
            f"successes = {v.successes}/{len(v.distances)}",
            f"mean_seconds_successful = {_fmt(v.mean_success_seconds)}",
            f"mean_seconds = {_fmt(v.mean_seconds)}",
            f"seeds = {' '.join(map(str, v.seeds))}",
            "",
        ]
    return "\n".join(lines)


def parse_report(text: str) -> dict:
    """Variant label -> {statistic: value} from a ``report.txt``."""
    out, current = {}, None
    for line in text.splitlines():
        line = line.strip()
        if line.startswith("[") and line.endswith("]"):
            current = out.setdefault(line[1:-1], {})
        elif current is not None and " = " in line:
            key, value = line.split(" = ", 1)
            current[key] = value
    return out


def write_outputs(report: CampaignReport, out_dir: Path):
    out_dir.mkdir(parents=True, exist_ok=True)
    game = game_from_dict(report.config.game)
    record = {"game": report.config.game, "variants": []}
    for v in report.variants:
        vdir = out_dir / v.label
        vdir.mkdir(exist_ok=True)
        runs = []
        for k, (r, d, t) in enumerate(zip(v.results, v.distances, v.seconds)):
            write_convergence_csv(r, vdir / f"run_{k}.csv")
            runs.append({
                "run": k,
                "seed": r.seed,
                "best_profile": [float(x) for x in r.best_profile],
                "best_profile_labels": [str(x) for x in game.format_profile(r.best_profile)],
                "distance": d,
                "evaluations": r.evaluations_used,
                "generations": r.generations,
                "seconds": t,
                "final_nondominated": r.final_nondominated.tolist(),
            })
        record["variants"].append({
            "label": v.label, "mode": v.mode, "p": v.p,
            "mean_distance": v.mean_distance, "std_distance": v.std_distance, "runs": runs,
        })
    (out_dir / "report.txt").write_text(format_report(report))
    solver = asdict(report.config.solver)
    solver["relation"]["mode"] = Mode(solver["relation"]["mode"]).value
    record["solver"] = solver
    (out_dir / "result.json").write_text(json.dumps(record, indent=2, default=str))

