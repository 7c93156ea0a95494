import itertools

import numpy as np
import pytest

from strongnash.game import example1
from strongnash.oracle import random_game


def corpus(count=200, seed=20240101):
    """Seeded random 2- and 3-player games with integer payoffs 0..9."""
    rng = np.random.default_rng(seed)
    games = []
    for _ in range(count):
        n = int(rng.integers(2, 4))
        actions = rng.integers(2, 4, size=n).tolist()
        games.append(random_game(n, actions, rng))
    return games


def loop_count(payoff, s_star, s, n, reading="literal"):
    """Plain-loop count over every nonempty coalition, written without numpy.

    ``payoff(profile) -> list`` returns one payoff per player.
    """
    base = payoff(list(s_star))
    total = 0
    for size in range(1, n + 1):
        for coal in itertools.combinations(range(n), size):
            x = [s[i] if i in coal else s_star[i] for i in range(n)]
            u = payoff(x)
            gains = [i for i in coal if u[i] > base[i] and s[i] != s_star[i]]
            if reading == "literal":
                total += len(gains)
            elif len(gains) == len(coal):
                total += len(coal)
    return total


def loop_strong_nash(table, s):
    """Brute-force strong Nash check by explicit coalition deviations."""
    n = table.ndim - 1
    sizes = table.shape[:-1]
    base = table[tuple(s)]
    for size in range(1, n + 1):
        for coal in itertools.combinations(range(n), size):
            for dev in itertools.product(*(range(sizes[i]) for i in coal)):
                x = list(s)
                for i, a in zip(coal, dev):
                    x[i] = a
                u = table[tuple(x)]
                if all(u[i] > base[i] for i in coal):
                    return False
    return True


@pytest.fixture(scope="session")
def game_corpus():
    return corpus()


@pytest.fixture
def ex1():
    return example1()


# criterion number -> list of (ok, detail); printed once at the end of the session
ACCEPTANCE = {}


def record(criterion, ok, detail=""):
    ACCEPTANCE.setdefault(criterion, []).append((bool(ok), detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for c in sorted(ACCEPTANCE):
        rows = ACCEPTANCE[c]
        status = "PASS" if all(ok for ok, _ in rows) else "FAIL"
        failed = [d for ok, d in rows if not ok]
        shown = failed if failed else [d for _, d in rows]
        tr.write_line(f"criterion {c}: {status}  " + "; ".join(d for d in shown if d))
