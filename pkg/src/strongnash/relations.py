"""Strong Nash dominance between strategy profiles.

``aumann_count(s_star, s)`` counts, over a family of coalitions, the members
who strictly gain when the coalition switches from ``s_star`` to ``s``. A
profile dominates another when its count is strictly smaller than the reverse
count. The probabilistic relation evaluates both counts on the same randomly
sampled coalition family.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .exceptions import ParameterError
from .game import (
    EvaluationCounter,
    Game,
    as_profile,
    coalition_matrix,
    draw_families,
    enumerate_coalitions,
    full_coalition_matrix,
    sample_coalitions,
    sample_size,
)

LITERAL = "literal"
ALL_MEMBERS = "all_members"


class Mode(str, enum.Enum):
    FULL = "full"
    PROBABILISTIC = "prob"


class Verdict(enum.Enum):
    FIRST_DOMINATES = "first"
    SECOND_DOMINATES = "second"
    NEITHER = "neither"


@dataclass(frozen=True)
class DominanceOutcome:
    count_forward: int
    count_backward: int

    @property
    def verdict(self) -> Verdict:
        if self.count_forward < self.count_backward:
            return Verdict.FIRST_DOMINATES
        if self.count_backward < self.count_forward:
            return Verdict.SECOND_DOMINATES
        return Verdict.NEITHER


@dataclass(frozen=True)
class RelationConfig:
    """How two profiles are compared.

    Parameters
    ----------
    mode : Mode
        Full coalition enumeration or a sampled family of coalitions.
    p : float
        Fraction of coalitions sampled in probabilistic mode.
    tolerance : float
        Continuous strategies count as different when ``|s_i - s*_i| > tolerance``.
    reading : str
        ``"literal"`` counts every gaining member of every coalition;
        ``"all_members"`` counts a coalition's members only when all of them
        change strategy and strictly gain.
    """

    mode: Mode = Mode.FULL
    p: float = 1.0
    tolerance: float = 0.0
    reading: str = LITERAL

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        if not 0.0 < self.p <= 1.0:
            raise ParameterError(f"p must lie in (0, 1], got {self.p}")
        if self.tolerance < 0:
            raise ParameterError("tolerance must be nonnegative")
        if self.reading not in (LITERAL, ALL_MEMBERS):
            raise ParameterError(f"unknown reading {self.reading!r}")

    def check_players(self, n: int):
        if self.mode is Mode.PROBABILISTIC and sample_size(n, self.p) == 0:
            raise ParameterError(
                f"p={self.p} selects no coalition among {(1 << n) - 1} for n={n}"
            )

    def max_cost(self, n: int) -> tuple[int, int]:
        """Upper bound on (comparisons, payoff evaluations) of one ``compare`` call."""
        if self.mode is Mode.FULL:
            m = (1 << n) - 1
            per_player = n << (n - 1)
        else:
            m = sample_size(n, self.p)
            per_player = _largest_size_sum(n, m)
        return 2 * per_player, 2 * (m + 1)


def _largest_size_sum(n: int, m: int) -> int:
    """Sum of the sizes of the ``m`` largest nonempty coalitions of ``n`` players."""
    from math import comb

    total, left = 0, m
    for k in range(n, 0, -1):
        take = min(left, comb(n, k))
        total += take * k
        left -= take
        if left == 0:
            break
    return total


def _differs(game: Game, s_star: np.ndarray, s: np.ndarray, tol: float) -> np.ndarray:
    diff = np.abs(s - s_star)
    if tol == 0:
        return diff > 0
    return np.where(game.continuous_mask, diff > tol, diff > 0)


def _count(game, s_star, s, members, tol, reading, counter):
    """Vectorized count for one direction over a boolean coalition matrix."""
    composite = np.where(members, s, s_star)
    u = game.payoffs(np.vstack([s_star[None, :], composite]))
    gains = (u[1:] > u[0]) & _differs(game, s_star, s, tol)
    if counter is not None:
        counter.payoff_evaluations += composite.shape[0] + 1
        counter.comparisons += int(members.sum())
    if reading == LITERAL:
        return int(np.count_nonzero(gains & members))
    unanimous = np.all(gains | ~members, axis=1)
    return int(members[unanimous].sum())


def aumann_count(
    game: Game,
    s_star,
    s,
    coalitions=None,
    tolerance: float = 0.0,
    reading: str = LITERAL,
    counter: EvaluationCounter | None = None,
) -> int:
    """Count of coalition members who gain by switching from ``s_star`` to ``s``.

    ``coalitions`` is a sequence of bitmasks (repeats are counted again); the
    default is every nonempty coalition.
    """
    s_star = as_profile(game, s_star)
    s = as_profile(game, s)
    n = game.n_players
    members = full_coalition_matrix(n) if coalitions is None else coalition_matrix(coalitions, n)
    return _count(game, s_star, s, members, tolerance, reading, counter)


def compare(
    game: Game,
    s,
    q,
    cfg: RelationConfig = RelationConfig(),
    rng: np.random.Generator | None = None,
    counter: EvaluationCounter | None = None,
    coalitions=None,
) -> DominanceOutcome:
    """Compare ``s`` against ``q``; both directions share one coalition family.

    In probabilistic mode a fresh family is drawn from ``rng`` unless
    ``coalitions`` supplies one explicitly.
    """
    s = as_profile(game, s)
    q = as_profile(game, q)
    n = game.n_players
    if coalitions is not None:
        members = coalition_matrix(coalitions, n)
    elif cfg.mode is Mode.FULL:
        members = full_coalition_matrix(n)
    else:
        if rng is None:
            raise ParameterError("probabilistic comparison needs a random generator")
        members = coalition_matrix(sample_coalitions(n, cfg.p, rng), n)
    fwd = _count(game, s, q, members, cfg.tolerance, cfg.reading, counter)
    bwd = _count(game, q, s, members, cfg.tolerance, cfg.reading, counter)
    return DominanceOutcome(fwd, bwd)


def count_matrix(game: Game, profiles, cfg: RelationConfig = RelationConfig(), chunk: int = 2_000_000):
    """Full-enumeration counts ``A[i, j] = a(P_i, P_j)`` for every ordered pair."""
    P = np.atleast_2d(np.asarray(profiles, dtype=float))
    k, n = P.shape
    members = full_coalition_matrix(n)
    m = members.shape[0]
    sizes = members.sum(axis=1)
    base = game.payoffs(P)
    A = np.zeros((k, k), dtype=np.int64)
    step = max(1, chunk // max(1, m * n))
    for i in range(k):
        s_star = P[i]
        for start in range(0, k, step):
            Q = P[start : start + step]
            composite = np.where(members[None, :, :], Q[:, None, :], s_star)
            u = game.payoffs(composite.reshape(-1, n)).reshape(Q.shape[0], m, n)
            differs = np.stack([_differs(game, s_star, q, cfg.tolerance) for q in Q])
            gains = (u > base[i]) & differs[:, None, :]
            if cfg.reading == LITERAL:
                A[i, start : start + Q.shape[0]] = np.count_nonzero(gains & members, axis=(1, 2))
            else:
                unanimous = np.all(gains | ~members, axis=2)
                A[i, start : start + Q.shape[0]] = (unanimous * sizes).sum(axis=1)
    return A


def kernel_args(game: Game, cfg: RelationConfig):
    """Positional arguments shared by the compiled counting kernels."""
    reading = _kernels.LITERAL if cfg.reading == LITERAL else _kernels.ALL_MEMBERS
    return (
        game.kernel,
        np.asarray(game.kernel_params, dtype=float),
        float(cfg.tolerance),
        np.ascontiguousarray(game.continuous_mask),
        reading,
    )


def dominated_mask(
    game: Game,
    profiles,
    cfg: RelationConfig = RelationConfig(),
    rng: np.random.Generator | None = None,
    counter: EvaluationCounter | None = None,
    compiled: bool = True,
    block_size: int = 4_000_000,
) -> np.ndarray:
    """``True`` where a profile is dominated by another profile of the set.

    Every unordered pair is compared once. In probabilistic mode pair
    ``(i, j)`` draws its own coalition family, row by row in ``i``.
    """
    P = np.ascontiguousarray(np.atleast_2d(np.asarray(profiles, dtype=float)))
    k, n = P.shape
    sampled = cfg.mode is Mode.PROBABILISTIC
    if sampled:
        if rng is None:
            raise ParameterError("probabilistic comparison needs a random generator")
        cfg.check_players(n)
    use_kernel = compiled and game.kernel != _kernels.PYTHON
    if not sampled and not use_kernel:
        A = count_matrix(game, P, cfg)
        if counter is not None:
            cmp_cost, eval_cost = cfg.max_cost(n)
            pairs = k * (k - 1) // 2
            counter.comparisons += pairs * cmp_cost
            counter.payoff_evaluations += pairs * eval_cost
        beats = A < A.T  # beats[i, j]: P_i dominates P_j
        np.fill_diagonal(beats, False)
        return beats.any(axis=0)

    dominated = np.zeros(k, dtype=bool)
    full = enumerate_coalitions(n)
    empty = np.zeros((1, 0), dtype=np.int64)
    if use_kernel:
        kind, params, tol, cont, reading = kernel_args(game, cfg)
        tally = np.zeros(2, dtype=np.int64)
    width = max(1, sample_size(n, cfg.p)) if sampled else 1
    for i0, i1 in _row_blocks(k, max(1, block_size // width)):
        ii, jj = _pairs(k, i0, i1)
        families = draw_families(n, cfg.p, rng, ii.shape[0]) if sampled else empty
        if use_kernel:
            out = np.zeros((ii.shape[0], 2), dtype=np.int64)
            _kernels.pair_counts(kind, params, P, i0, i1, families, full, sampled, tol, cont,
                                 reading, tally, out)
        else:
            out = np.array([
                astuple(compare(game, P[i], P[j], cfg, counter=counter,
                                coalitions=families[r] if sampled else None))
                for r, (i, j) in enumerate(zip(ii, jj))
            ]).reshape(-1, 2)
        fwd, bwd = out[:, 0], out[:, 1]
        np.logical_or.at(dominated, jj, fwd < bwd)
        np.logical_or.at(dominated, ii, bwd < fwd)
    if use_kernel and counter is not None:
        counter.comparisons += int(tally[0])
        counter.payoff_evaluations += int(tally[1])
    return dominated


def _pairs(k: int, i0: int, i1: int):
    """Pairs ``(i, j)`` with ``i0 <= i < i1`` and ``j > i`` in row-major order."""
    ii, jj = np.triu_indices(k, 1)
    keep = (ii >= i0) & (ii < i1)
    return ii[keep], jj[keep]


def _row_blocks(k: int, max_pairs: int):
    """Split rows ``0..k-2`` into consecutive blocks holding at most ~``max_pairs`` pairs."""
    i0 = 0
    while i0 < k - 1:
        i1, pairs = i0, 0
        while i1 < k - 1 and (pairs == 0 or pairs + (k - 1 - i1) <= max_pairs):
            pairs += k - 1 - i1
            i1 += 1
        yield i0, i1
        i0 = i1


def astuple(outcome: DominanceOutcome) -> tuple:
    return outcome.count_forward, outcome.count_backward


def nondominated_filter(
    game: Game,
    profiles,
    cfg: RelationConfig = RelationConfig(),
    rng: np.random.Generator | None = None,
    counter: EvaluationCounter | None = None,
) -> np.ndarray:
    """Profiles of the set that no other member of the set dominates."""
    P = np.atleast_2d(np.asarray(profiles, dtype=float))
    if P.shape[0] == 0:
        raise ParameterError("need at least one profile")
    return P[~dominated_mask(game, P, cfg, rng, counter)]
