import numpy as np
import pytest

from conftest import loop_strong_nash
from strongnash.exceptions import CapacityError, ProfileError
from strongnash.game import game1, matrix_game, min_effort
from strongnash.oracle import (
    Kind,
    ans_set,
    discretize,
    enumerate_equilibria,
    is_nash,
    is_pareto_efficient,
    is_strong_nash,
    payoff_tensor,
)

A, B = 0, 1


def test_nash_examples(ex1):
    assert is_nash(ex1, [A, A])
    assert not is_nash(ex1, [A, B])
    assert is_nash(ex1, [B, B])


def test_pareto_examples(ex1):
    assert not is_pareto_efficient(ex1, [B, B])
    assert is_pareto_efficient(ex1, [A, A])
    single = matrix_game(np.array([[[1.0, 2.0]]]))
    assert is_pareto_efficient(single, [0, 0])


def test_strong_nash_examples(ex1):
    assert is_strong_nash(ex1, [A, A])
    assert not is_strong_nash(ex1, [B, B])


def test_enumerate_example1(ex1):
    assert enumerate_equilibria(ex1, Kind.NASH).tolist() == [[A, A], [B, B]]
    assert enumerate_equilibria(ex1, "strong-nash").tolist() == [[A, A]]


def test_game1_grid_keeps_equilibrium():
    d = discretize(game1(), 5)
    assert d.format_profile([4, 0]) == ("1", "-1")
    assert is_strong_nash(d, [4, 0])


def test_min_effort_grid_nash_is_diagonal():
    d = discretize(min_effort(2, 0.5), 11)
    ne = enumerate_equilibria(d, Kind.NASH)
    assert ne.tolist() == [[k, k] for k in range(11)]
    assert enumerate_equilibria(d, Kind.STRONG_NASH).tolist() == [[10, 10]]


@pytest.mark.parametrize("k,grid", [(3, [-1, 0, 1]), (2, [-1, 1])])
def test_discretize_grid(k, grid):
    d = discretize(game1(), k)
    assert [list(dom.values) for dom in d.domains] == [grid, grid]
    assert np.allclose(d.strategy_values([k - 1, 0]), [1, -1])


def test_discretize_min_effort_grid():
    d = discretize(min_effort(2, 0.5), 11)
    assert list(d.domains[0].values) == list(range(11))


def test_continuous_rejected():
    with pytest.raises(ProfileError):
        is_nash(game1(), [0, 0])
    with pytest.raises(ProfileError):
        enumerate_equilibria(game1(), Kind.STRONG_NASH)


def test_capacity():
    with pytest.raises(CapacityError):
        discretize(min_effort(8, 0.5), 11)


def test_strong_nash_matches_loop(game_corpus):
    for game in game_corpus:
        table = payoff_tensor(game)
        for s in np.ndindex(*table.shape[:-1]):
            assert is_strong_nash(game, s) == loop_strong_nash(table, s)


def test_ans_example1(ex1):
    assert ans_set(ex1).tolist() == [[A, A]]
