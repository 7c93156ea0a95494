"""Exhaustive equilibrium checks for finite games.

Everything here enumerates the pure strategy space directly from the payoff
tensor and shares no code with the dominance relations, so it can arbitrate
them.
"""

from __future__ import annotations

import enum
import math

import numpy as np

from .exceptions import CapacityError, ProfileError
from .game import (
    Actions,
    Game,
    Interval,
    all_profiles,
    coalition_members,
    enumerate_coalitions,
    matrix_game,
)

MAX_CHECKS = 10**8
MAX_PROFILES = 10**7


class Kind(str, enum.Enum):
    NASH = "nash"
    PARETO = "pareto"
    STRONG_NASH = "strong-nash"


def _require_finite(game: Game):
    if not game.is_finite:
        raise ProfileError("oracle checks need a finite game; discretize it first")


def payoff_tensor(game: Game) -> np.ndarray:
    """Payoffs of every pure profile, shape ``(k_1, ..., k_n, n)``."""
    _require_finite(game)
    sizes = tuple(d.size for d in game.domains)
    if math.prod(sizes) > MAX_PROFILES:
        raise CapacityError(f"{math.prod(sizes)} profiles exceed the cap of {MAX_PROFILES}")
    table = game.params.get("table")
    if table is not None:
        return table
    return game.payoffs(all_profiles(game)).reshape(sizes + (game.n_players,))


def _index(game: Game, s) -> tuple:
    s = np.asarray(s, dtype=float)
    if s.shape != (game.n_players,):
        raise ProfileError(f"profile must have length {game.n_players}")
    idx = tuple(int(round(v)) for v in s)
    for i, d in zip(idx, game.domains):
        if not 0 <= i < d.size:
            raise ProfileError(f"action index {i} out of range")
    return idx


def is_nash(game: Game, s, tensor=None) -> bool:
    """No player has a strictly better unilateral deviation."""
    _require_finite(game)
    U = payoff_tensor(game) if tensor is None else tensor
    idx = _index(game, s)
    for i in range(game.n_players):
        line = list(idx)
        line[i] = slice(None)
        if np.any(U[tuple(line) + (i,)] > U[idx + (i,)]):
            return False
    return True


def is_pareto_efficient(game: Game, s, tensor=None) -> bool:
    """No profile weakly improves every payoff with at least one strict gain."""
    _require_finite(game)
    U = payoff_tensor(game) if tensor is None else tensor
    n = game.n_players
    flat = U.reshape(-1, n)
    u = U[_index(game, s)]
    better = np.all(flat >= u, axis=1) & np.any(flat > u, axis=1)
    return not bool(better.any())


def _deviation_checks(sizes, coalitions, n) -> int:
    return sum(math.prod(sizes[i] for i in coalition_members(int(c), n)) for c in coalitions)


def is_strong_nash(game: Game, s, coalitions=None, tensor=None) -> bool:
    """No coalition has a joint deviation that strictly improves all its members.

    ``coalitions`` restricts the deviating coalitions (bitmasks); by default
    every nonempty coalition is tried.
    """
    _require_finite(game)
    U = payoff_tensor(game) if tensor is None else tensor
    n = game.n_players
    coalitions = enumerate_coalitions(n) if coalitions is None else coalitions
    sizes = [d.size for d in game.domains]
    if _deviation_checks(sizes, coalitions, n) > MAX_CHECKS:
        raise CapacityError("strong Nash check exceeds the deviation cap")
    idx = _index(game, s)
    u = U[idx]
    for c in coalitions:
        members = coalition_members(int(c), n)
        sub = tuple(slice(None) if i in members else idx[i] for i in range(n))
        block = U[sub][..., list(members)]
        if np.any(np.all(block > u[list(members)], axis=-1)):
            return False
    return True


def enumerate_equilibria(game: Game, kind: Kind | str) -> np.ndarray:
    """All pure profiles of the requested equilibrium kind, in row-major order."""
    kind = Kind(kind)
    U = payoff_tensor(game)
    profiles = all_profiles(game)
    if kind is Kind.NASH:
        mask = np.ones(U.shape[:-1], dtype=bool)
        for i in range(game.n_players):
            mask &= U[..., i] == U[..., i].max(axis=i, keepdims=True)
        keep = mask.ravel()
    elif kind is Kind.PARETO:
        keep = np.array([is_pareto_efficient(game, s, U) for s in profiles], dtype=bool)
    else:
        keep = np.array([is_strong_nash(game, s, tensor=U) for s in profiles], dtype=bool)
    return profiles[keep]


def discretize(game: Game, k: int) -> Game:
    """Finite game on ``k`` equally spaced points per continuous axis, endpoints included."""
    if k < 2:
        raise ValueError("need at least 2 points per axis")
    grids, labels = [], []
    for d in game.domains:
        if isinstance(d, Interval):
            g = np.linspace(d.lo, d.hi, k)
            grids.append(g)
            labels.append(tuple(f"{v:.15g}" for v in g))
        else:
            grids.append(np.arange(d.size, dtype=float))
            labels.append(d.labels)
    if math.prod(len(g) for g in grids) > MAX_PROFILES:
        raise CapacityError("discretized game too large")
    mesh = np.meshgrid(*grids, indexing="ij")
    values = np.stack([m.ravel() for m in mesh], axis=1)
    table = game.payoffs(values).reshape(tuple(len(g) for g in grids) + (game.n_players,))
    finite = matrix_game(table, labels, name=f"{game.name}_k{k}")
    domains = tuple(
        Actions(lab, tuple(float(v) for v in g)) for lab, g in zip(labels, grids)
    )
    return Game(domains, finite.payoff_fn, name=finite.name, params=finite.params,
                kernel=finite.kernel, kernel_params=finite.kernel_params)


def random_game(n_players: int, n_actions, rng: np.random.Generator, high: int = 9) -> Game:
    """Finite game with integer payoffs drawn uniformly from ``0..high``."""
    if np.isscalar(n_actions):
        n_actions = [int(n_actions)] * n_players
    table = rng.integers(0, high + 1, size=tuple(n_actions) + (n_players,))
    return matrix_game(table, name="random")


def ans_set(game: Game, cfg=None) -> np.ndarray:
    """Profiles of a finite game that no other profile dominates under the relation."""
    from .relations import RelationConfig, nondominated_filter

    return nondominated_filter(game, all_profiles(game), cfg or RelationConfig())
