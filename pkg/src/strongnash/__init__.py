"""Strong Nash equilibria via a generative dominance relation and crowding DE."""

from .crde import RunResult, SolverConfig, run
from .exceptions import CapacityError, ConfigError, ParameterError, ProfileError, StrongNashError
from .game import Game, example1, game1, matrix_game, min_effort
from .oracle import enumerate_equilibria, is_nash, is_pareto_efficient, is_strong_nash
from .relations import Mode, RelationConfig, aumann_count, compare, nondominated_filter

__version__ = "0.1.0"
