"""Crowding differential evolution driven by strong Nash dominance.

Each generation visits every population slot ``l``: a DE/rand/1/exp offspring
is built from ``P[l]``, the nearest population member (Euclidean) is located,
and the offspring replaces it only when it strictly dominates it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import ParameterError
from . import _kernels
from .game import (
    EvaluationCounter,
    Game,
    as_profile,
    clamp_to_domain,
    distance_to_reference,
    draw_families,
    enumerate_coalitions,
)
from .relations import Mode, RelationConfig, Verdict, compare, dominated_mask, kernel_args


@dataclass(frozen=True)
class SolverConfig:
    pop_size: int = 50
    F: float = 0.5
    pc: float = 0.9
    max_evaluations: int = 1_000_000
    relation: RelationConfig = field(default_factory=RelationConfig)
    seed: int = 0
    snapshot_every: int = 1
    # "payoff_evaluations": evaluated profiles; "comparisons": per-player payoff comparisons
    budget_unit: str = "payoff_evaluations"
    track_nondominated: bool = False
    in_place: bool = True
    compiled: bool = True

    def __post_init__(self):
        if self.pop_size < 4:
            raise ParameterError("pop_size must be at least 4")
        if not 0.0 <= self.pc <= 1.0:
            raise ParameterError("pc must lie in [0, 1]")
        if self.max_evaluations < 0:
            raise ParameterError("max_evaluations must be nonnegative")
        if self.snapshot_every < 1:
            raise ParameterError("snapshot_every must be positive")
        if self.budget_unit not in ("comparisons", "payoff_evaluations"):
            raise ParameterError(f"unknown budget unit {self.budget_unit!r}")


@dataclass
class Population:
    members: np.ndarray
    generation: int = 0

    @property
    def size(self) -> int:
        return self.members.shape[0]


@dataclass(frozen=True)
class Snapshot:
    generation: int
    evaluations: int
    best_distance: float
    mean_distance: float
    nondominated_count: int | None


@dataclass
class RunResult:
    final_nondominated: np.ndarray
    best_profile: np.ndarray
    evaluations_used: int
    generations: int
    convergence: list
    seed: int
    population: np.ndarray
    counter: EvaluationCounter

    @property
    def best_distance(self) -> float:
        return self.convergence[-1].best_distance


def _streams(seed: int):
    init, offspring, coalitions, bookkeeping = np.random.SeedSequence(seed).spawn(4)
    return tuple(np.random.default_rng(s) for s in (init, offspring, coalitions, bookkeeping))


def repair(game: Game, o) -> np.ndarray:
    """Clamp to the box; discrete players are snapped to the nearest action index."""
    o = np.clip(np.asarray(o, dtype=float), game.lower, game.upper)
    disc = ~game.continuous_mask
    if disc.any():
        o[disc] = np.rint(o[disc])
    return clamp_to_domain(game, o)


def init_population(game: Game, cfg: SolverConfig, rng: np.random.Generator) -> Population:
    """Uniform random profiles; discrete players draw uniform action indices."""
    n = game.n_players
    u = rng.random((cfg.pop_size, n))
    members = game.lower + u * (game.upper - game.lower)
    disc = ~game.continuous_mask
    if disc.any():
        sizes = game.upper[disc] + 1
        members[:, disc] = np.minimum(np.floor(u[:, disc] * sizes), sizes - 1)
    return Population(members, 0)


@dataclass
class _Draws:
    """Random numbers consumed by offspring creation for a block of slots."""

    picks: np.ndarray  # (L, 3) distinct parent indices, none equal to the slot
    starts: np.ndarray  # (L,) first mutated coordinate
    cross: np.ndarray  # (L, dim) crossover uniforms; column 0 unused


def _draw(rng: np.random.Generator, slots: np.ndarray, k: int, dim: int) -> _Draws:
    keys = rng.random((slots.shape[0], k - 1))
    picks = np.argsort(keys, axis=1, kind="stable")[:, :3]
    picks = picks + (picks >= slots[:, None])
    starts = rng.integers(dim, size=slots.shape[0])
    cross = rng.random((slots.shape[0], dim))
    return _Draws(picks.astype(np.int64), starts.astype(np.int64), cross)


def _build(parents: np.ndarray, l: int, picks, start: int, cross, F: float, pc: float):
    i1, i2, i3 = picks
    dim = parents.shape[1]
    o = parents[l].copy()
    j = int(start)
    for t in range(dim):
        if t > 0 and not cross[t] < pc:
            break
        o[j] = parents[i1, j] + F * (parents[i2, j] - parents[i3, j])
        j = (j + 1) % dim
    return o


def make_offspring(
    pop: Population, l: int, cfg: SolverConfig, rng: np.random.Generator, game: Game | None = None
) -> np.ndarray:
    """DE/rand/1/exp offspring of member ``l``.

    Three distinct parents other than ``l`` give the donor
    ``P[i1] + F * (P[i2] - P[i3])``. The start coordinate is always taken from
    the donor; further coordinates follow in circular order while
    ``U(0, 1) < pc``. With ``game`` given the result is repaired into the domain.
    """
    P = pop.members
    d = _draw(rng, np.array([l]), P.shape[0], P.shape[1])
    o = _build(P, l, d.picks[0], d.starts[0], d.cross[0], cfg.F, cfg.pc)
    return o if game is None else repair(game, o)


def nearest_member(pop: Population, o) -> int:
    """Index of the member closest to ``o``; ties go to the lowest index."""
    diff = pop.members - np.asarray(o, dtype=float)
    d = np.sum(diff * diff, axis=1)
    return int(np.argmin(d))


def _generation_python(game, cfg, P, parents, draws, families, counter):
    for l in range(cfg.pop_size):
        o = repair(game, _build(parents, l, draws.picks[l], draws.starts[l], draws.cross[l],
                                cfg.F, cfg.pc))
        j = nearest_member(Population(P), o)
        fam = None if families is None else families[l]
        outcome = compare(game, o, P[j], cfg.relation, counter=counter, coalitions=fam)
        if outcome.verdict is Verdict.FIRST_DOMINATES:
            P[j] = o


def _generation_compiled(game, cfg, P, parents, draws, families, counter):
    kind, params, tol, cont, reading = kernel_args(game, cfg.relation)
    sampled = families is not None
    fams = families if sampled else np.zeros((1, 0), dtype=np.int64)
    full = enumerate_coalitions(game.n_players)
    tally = np.zeros(2, dtype=np.int64)
    _kernels.generation(kind, params, P, parents, game.lower, game.upper, cont, float(cfg.F),
                        float(cfg.pc), draws.picks, draws.starts, draws.cross, fams, full,
                        sampled, tol, reading, tally)
    counter.comparisons += int(tally[0])
    counter.payoff_evaluations += int(tally[1])


def _snapshot(game, P, gen, used, reference, cfg, rng, track) -> Snapshot:
    if reference is not None:
        d = np.linalg.norm(P - reference, axis=1)
        best, mean = float(d.min()), float(d.mean())
    else:
        best = mean = float("nan")
    nd = None
    if track:
        nd = int((~dominated_mask(game, P, cfg.relation, rng, compiled=cfg.compiled)).sum())
    return Snapshot(gen, used, best, mean, nd)


def run(
    game: Game,
    cfg: SolverConfig = SolverConfig(),
    reference=None,
    initial=None,
) -> RunResult:
    """Run the search until the evaluation budget cannot fund another generation.

    A generation runs only if its worst-case cost fits in the remaining budget,
    so ``evaluations_used`` never exceeds ``cfg.max_evaluations``.

    Parameters
    ----------
    reference : array_like, optional
        Known equilibrium; convergence records distances to it and
        ``best_profile`` is the final member closest to it.
    initial : array_like, optional
        Profiles that overwrite the first rows of the random initial population.
    """
    n = game.n_players
    cfg.relation.check_players(n)
    if reference is not None:
        reference = as_profile(game, reference)
    rng_init, rng_off, rng_coal, rng_book = _streams(cfg.seed)
    pop = init_population(game, cfg, rng_init)
    if initial is not None:
        initial = np.atleast_2d(np.asarray(initial, dtype=float))
        pop.members[: initial.shape[0]] = [repair(game, x) for x in initial]
    P = pop.members
    counter = EvaluationCounter()
    sampled = cfg.relation.mode is Mode.PROBABILISTIC
    step = _generation_compiled if cfg.compiled and game.kernel else _generation_python
    slots = np.arange(cfg.pop_size)

    cmp_cost, eval_cost = cfg.relation.max_cost(n)
    per_gen = cfg.pop_size * (cmp_cost if cfg.budget_unit == "comparisons" else eval_cost)

    def used():
        return counter.used(cfg.budget_unit)

    history = [_snapshot(game, P, 0, 0, reference, cfg, rng_book, cfg.track_nondominated)]
    while used() + per_gen <= cfg.max_evaluations:
        parents = P if cfg.in_place else P.copy()
        draws = _draw(rng_off, slots, cfg.pop_size, n)
        families = draw_families(n, cfg.relation.p, rng_coal, cfg.pop_size) if sampled else None
        step(game, cfg, P, parents, draws, families, counter)
        pop.generation += 1
        if pop.generation % cfg.snapshot_every == 0:
            history.append(
                _snapshot(game, P, pop.generation, used(), reference, cfg, rng_book,
                          cfg.track_nondominated)
            )

    nd_mask = ~dominated_mask(game, P, cfg.relation, rng_book, compiled=cfg.compiled)
    if history[-1].generation != pop.generation:
        history.append(_snapshot(game, P, pop.generation, used(), reference, cfg, rng_book, False))
    last = history[-1]
    history[-1] = Snapshot(
        last.generation, last.evaluations, last.best_distance, last.mean_distance, int(nd_mask.sum())
    )
    final = P[nd_mask]
    if reference is not None:
        best = P[int(np.argmin(np.linalg.norm(P - reference, axis=1)))].copy()
    else:
        # dominance can cycle, leaving no non-dominated member
        best = (final[0] if final.shape[0] else P[0]).copy()
    return RunResult(
        final_nondominated=final,
        best_profile=best,
        evaluations_used=used(),
        generations=pop.generation,
        convergence=history,
        seed=cfg.seed,
        population=P.copy(),
        counter=counter,
    )


def best_distance(result: RunResult, reference) -> float:
    return distance_to_reference(result.best_profile, reference)
