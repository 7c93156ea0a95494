"""Strategic games, strategy profiles and coalitions.

A profile is a 1-d float array with one entry per player. Continuous players
carry a real in ``[lo, hi]``; discrete players carry an action index stored as
an integral float. A coalition is an int bitmask: bit ``i`` set means player
``i`` (0-based) is a member.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import _kernels
from .exceptions import CapacityError, ParameterError, ProfileError

MAX_PLAYERS = 30


@dataclass(frozen=True)
class Interval:
    """Closed real interval ``[lo, hi]``."""

    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ParameterError(f"interval needs lo < hi, got [{self.lo}, {self.hi}]")

    @property
    def continuous(self) -> bool:
        return True


@dataclass(frozen=True)
class Actions:
    """Ordered finite action list.

    ``values`` optionally attaches a numeric strategy value to every action
    (used by discretized continuous games).
    """

    labels: tuple
    values: tuple | None = None

    def __post_init__(self):
        if len(self.labels) < 1:
            raise ParameterError("a discrete domain needs at least one action")
        if self.values is not None and len(self.values) != len(self.labels):
            raise ParameterError("values and labels differ in length")

    @property
    def continuous(self) -> bool:
        return False

    @property
    def size(self) -> int:
        return len(self.labels)


@dataclass(frozen=True, eq=False)
class Game:
    """A non-cooperative game.

    ``payoff_fn`` is batched: it maps an ``(m, n)`` array of profiles to the
    ``(m, n)`` array of payoffs, row ``k`` holding ``u_1..u_n`` of profile ``k``.
    It must be deterministic.
    """

    domains: tuple
    payoff_fn: Callable[[np.ndarray], np.ndarray]
    name: str = "game"
    params: dict = field(default_factory=dict)
    # compiled payoff kernel id and parameter vector, 0 = plain Python payoff_fn
    kernel: int = 0
    kernel_params: np.ndarray = field(default_factory=lambda: np.zeros(1))

    def __post_init__(self):
        object.__setattr__(self, "domains", tuple(self.domains))
        if len(self.domains) < 2:
            raise ParameterError("a game needs at least 2 players")

    @property
    def n_players(self) -> int:
        return len(self.domains)

    @property
    def is_finite(self) -> bool:
        return all(not d.continuous for d in self.domains)

    @functools.cached_property
    def lower(self) -> np.ndarray:
        return np.array([d.lo if d.continuous else 0.0 for d in self.domains])

    @functools.cached_property
    def upper(self) -> np.ndarray:
        return np.array([d.hi if d.continuous else d.size - 1.0 for d in self.domains])

    @functools.cached_property
    def continuous_mask(self) -> np.ndarray:
        return np.array([d.continuous for d in self.domains])

    def payoffs(self, profiles) -> np.ndarray:
        """Evaluate a batch of profiles without bookkeeping or validation."""
        profiles = np.atleast_2d(np.asarray(profiles, dtype=float))
        return np.asarray(self.payoff_fn(profiles), dtype=float)

    def format_profile(self, s) -> tuple:
        """Human readable profile: action labels for discrete players."""
        out = []
        for d, v in zip(self.domains, np.asarray(s, dtype=float)):
            out.append(v.item() if d.continuous else d.labels[int(round(v))])
        return tuple(out)

    def strategy_values(self, s) -> np.ndarray:
        """Numeric strategy values; discrete actions map through ``values`` if set."""
        s = np.asarray(s, dtype=float)
        out = s.copy()
        for i, d in enumerate(self.domains):
            if not d.continuous and d.values is not None:
                out[i] = d.values[int(round(s[i]))]
        return out


@dataclass
class EvaluationCounter:
    """Per-run bookkeeping of payoff work.

    ``payoff_evaluations`` counts evaluated profiles, ``comparisons`` counts
    per-player payoff comparisons made inside dominance tests.
    """

    payoff_evaluations: int = 0
    comparisons: int = 0

    def used(self, unit: str) -> int:
        if unit == "comparisons":
            return self.comparisons
        if unit == "payoff_evaluations":
            return self.payoff_evaluations
        raise ParameterError(f"unknown budget unit {unit!r}")


def as_profile(game: Game, s) -> np.ndarray:
    s = np.asarray(s, dtype=float)
    if s.ndim != 1 or s.shape[0] != game.n_players:
        raise ProfileError(f"profile must have length {game.n_players}, got shape {s.shape}")
    return s


def check_profile(game: Game, s) -> np.ndarray:
    """Validate that ``s`` lies in the strategy space and return it as an array."""
    s = as_profile(game, s)
    if not np.all(np.isfinite(s)):
        raise ProfileError("profile contains non-finite entries")
    if np.any(s < game.lower) or np.any(s > game.upper):
        raise ProfileError(f"profile {s.tolist()} out of bounds")
    disc = ~game.continuous_mask
    if np.any(s[disc] != np.round(s[disc])):
        raise ProfileError("discrete players need integral action indices")
    return s


def evaluate_payoffs(game: Game, s, counter: EvaluationCounter | None = None) -> np.ndarray:
    """Payoff vector ``(u_1(s), ..., u_n(s))`` of a single in-domain profile."""
    s = check_profile(game, s)
    if counter is not None:
        counter.payoff_evaluations += 1
    return game.payoffs(s[None, :])[0]


def compose_deviation(s, q, coalition: int) -> np.ndarray:
    """Profile where members of ``coalition`` play from ``s`` and the rest from ``q``."""
    s = np.asarray(s, dtype=float)
    q = np.asarray(q, dtype=float)
    if s.shape != q.shape or s.ndim != 1:
        raise ProfileError(f"profiles differ in shape: {s.shape} vs {q.shape}")
    if coalition <= 0:
        raise ParameterError("coalition must be nonempty")
    return np.where(coalition_mask(coalition, s.shape[0]), s, q)


def coalition_mask(coalition: int, n: int) -> np.ndarray:
    """Boolean membership vector of length ``n``."""
    return ((coalition >> np.arange(n)) & 1).astype(bool)


def coalition_members(coalition: int, n: int) -> tuple:
    """0-based member indices of ``coalition``."""
    return tuple(i for i in range(n) if coalition >> i & 1)


def coalition_matrix(coalitions, n: int) -> np.ndarray:
    """Stack of membership vectors, shape ``(len(coalitions), n)``."""
    c = np.asarray(coalitions, dtype=np.int64).reshape(-1, 1)
    return ((c >> np.arange(n, dtype=np.int64)) & 1).astype(bool)


def _check_cap(n: int):
    if n < 1:
        raise ParameterError("need at least one player")
    if n > MAX_PLAYERS:
        raise CapacityError(f"coalition enumeration supports n <= {MAX_PLAYERS}, got {n}")


def enumerate_coalitions(n: int) -> np.ndarray:
    """All ``2**n - 1`` nonempty coalitions in ascending bitmask order."""
    _check_cap(n)
    return np.arange(1, 1 << n, dtype=np.int64)


@functools.lru_cache(maxsize=32)
def full_coalition_matrix(n: int) -> np.ndarray:
    m = coalition_matrix(enumerate_coalitions(n), n)
    m.setflags(write=False)
    return m


def sample_size(n: int, p: float) -> int:
    """Number of coalitions in a sampled family: ``floor(p * (2**n - 1))``."""
    if not 0.0 < p <= 1.0:
        raise ParameterError(f"p must lie in (0, 1], got {p}")
    _check_cap(n)
    # the small epsilon keeps values like 0.1 * 32767 = 3276.7 from drifting
    return int(np.floor(p * ((1 << n) - 1) + 1e-9))


def sample_coalitions(n: int, p: float, rng: np.random.Generator) -> np.ndarray:
    """Draw ``floor(p * (2**n - 1))`` distinct nonempty coalitions uniformly.

    Raises
    ------
    ParameterError
        If the sample size is zero.
    """
    return np.sort(draw_families(n, p, rng, 1)[0])


def draw_families(n: int, p: float, rng: np.random.Generator, rows: int) -> np.ndarray:
    """``rows`` independent coalition samples, shape ``(rows, floor(p * (2**n - 1)))``.

    Each row keeps the coalitions with the smallest of ``2**n - 1`` uniform keys,
    a uniform draw without replacement.
    """
    m = sample_size(n, p)
    if m == 0:
        raise ParameterError(f"p={p} selects no coalition among {(1 << n) - 1} for n={n}")
    total = (1 << n) - 1
    if m == total:
        return np.tile(enumerate_coalitions(n), (rows, 1))
    keys = rng.random((rows, total))
    picked = np.argpartition(keys, m - 1, axis=1)[:, :m] + 1
    return np.ascontiguousarray(picked, dtype=np.int64)


def clamp_to_domain(game: Game, s) -> np.ndarray:
    """Project continuous entries onto their intervals; discrete entries are kept."""
    s = as_profile(game, s)
    cont = game.continuous_mask
    return np.where(cont, np.clip(s, game.lower, game.upper), s)


def distance_to_reference(s, ref) -> float:
    """Euclidean distance between two profiles."""
    s = np.asarray(s, dtype=float)
    ref = np.asarray(ref, dtype=float)
    if s.shape != ref.shape:
        raise ProfileError(f"profiles differ in shape: {s.shape} vs {ref.shape}")
    return float(np.linalg.norm(s - ref))


# --- built-in games -------------------------------------------------------


def _game1_payoffs(x):
    s1, s2 = x[:, 0], x[:, 1]
    return np.stack([3 * s1**2 - s2**2 + 4 * s2, -(s1**2) + s1 - 2 * s2], axis=1)


def game1() -> Game:
    """Continuous two-player game on ``[-1, 1]^2`` whose strong Nash equilibrium is ``(1, -1)``."""
    return Game(
        (Interval(-1.0, 1.0), Interval(-1.0, 1.0)), _game1_payoffs, name="game1", kernel=_kernels.GAME1
    )


def min_effort(n: int = 2, alpha: float = 0.5, bounds=(0.0, 10.0)) -> Game:
    """Minimum-effort coordination game: ``u_i(s) = min(s) - alpha * s_i``."""
    if not alpha < 1:
        raise ParameterError(f"min_effort needs alpha < 1, got {alpha}")
    alpha = float(alpha)

    def payoff(x):
        return x.min(axis=1, keepdims=True) - alpha * x

    lo, hi = bounds
    return Game(
        tuple(Interval(float(lo), float(hi)) for _ in range(n)),
        payoff,
        name="min_effort",
        params={"players": n, "alpha": alpha, "bounds": [float(lo), float(hi)]},
        kernel=_kernels.MIN_EFFORT,
        kernel_params=np.array([alpha]),
    )


def matrix_game(payoffs, labels: Sequence[Sequence] | None = None, name: str = "matrix") -> Game:
    """Finite game from a payoff tensor of shape ``(k_1, ..., k_n, n)``."""
    table = np.array(payoffs, dtype=float)
    n = table.ndim - 1
    if n < 2 or table.shape[-1] != n:
        raise ParameterError(f"payoff tensor must have shape (k_1..k_n, n), got {table.shape}")
    if labels is None:
        labels = [tuple(str(a) for a in range(k)) for k in table.shape[:-1]]
    if [len(l) for l in labels] != list(table.shape[:-1]):
        raise ParameterError("action labels do not match the payoff tensor")
    table.setflags(write=False)

    def payoff(x):
        idx = np.rint(x).astype(np.intp)
        return table[tuple(idx.T)]

    return Game(
        tuple(Actions(tuple(l)) for l in labels),
        payoff,
        name=name,
        params={"table": table},
        kernel=_kernels.MATRIX,
        kernel_params=np.concatenate([np.array(table.shape[:-1], dtype=float), table.ravel()]),
    )


def example1() -> Game:
    """Two-player coordination game; ``(A, A)`` is its only strong Nash equilibrium."""
    table = [
        [[5, 5], [3, 1]],
        [[2, 3], [4, 4]],
    ]
    return matrix_game(table, [("A", "B"), ("A", "B")], name="example1")


BUILTIN_GAMES = {
    "game1": "continuous 2-player game on [-1,1]^2, SNE (1,-1)",
    "min_effort": "n-player minimum-effort coordination game on [0,10]^n, SNE (10,...,10)",
    "example1": "2x2 coordination game, SNE (A,A)",
    "matrix": "finite game from explicit payoff tables",
}


def builtin_game(name: str, **params) -> Game:
    """Construct a built-in game by identifier.

    >>> builtin_game("min_effort", players=3, alpha=0.5).n_players
    3
    """
    if name == "game1":
        return game1()
    if name == "min_effort":
        kw = {"n": int(params.get("players", 2)), "alpha": float(params.get("alpha", 0.5))}
        if params.get("bounds") is not None:
            kw["bounds"] = tuple(params["bounds"])
        return min_effort(**kw)
    if name == "example1":
        return example1()
    if name == "matrix":
        return matrix_game(params["payoffs"], params.get("labels"))
    raise ParameterError(f"unknown game {name!r}; choose from {sorted(BUILTIN_GAMES)}")


def all_profiles(game: Game) -> np.ndarray:
    """Every pure profile of a finite game, row-major over action indices."""
    if not game.is_finite:
        raise ProfileError("profile enumeration needs a finite game")
    sizes = [d.size for d in game.domains]
    return np.array(list(itertools.product(*(range(k) for k in sizes))), dtype=float).reshape(
        -1, game.n_players
    )
