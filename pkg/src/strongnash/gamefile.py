"""Reading and writing game definition files (YAML or JSON)."""

from __future__ import annotations

import itertools
from pathlib import Path

import numpy as np
import yaml

from .exceptions import ConfigError, ParameterError
from .game import Game, builtin_game, matrix_game


def _parse_key(key, labels):
    if isinstance(key, str):
        parts = [p.strip() for p in key.replace(";", ",").split(",")]
        if len(parts) == 1:
            parts = key.split()
    else:
        parts = list(key)
    try:
        return tuple(lab.index(str(p)) for lab, p in zip(labels, parts))
    except ValueError as exc:
        raise ConfigError(f"unknown action in payoff key {key!r}") from exc


def game_from_dict(definition: dict) -> Game:
    """Build a game from a parsed definition.

    Keys: ``type`` (game1, min_effort, example1 or matrix), ``players``,
    ``alpha``, ``bounds``, and for matrix games ``actions`` plus ``payoffs``,
    either a nested ``(k_1, ..., k_n, n)`` list or a mapping from
    comma-separated action labels to payoff vectors.
    """
    definition = dict(definition)
    kind = definition.pop("type", definition.pop("game", None))
    if kind is None:
        raise ConfigError("game definition needs a 'type'")
    try:
        if kind != "matrix":
            return builtin_game(kind, **definition)
        payoffs = definition.get("payoffs")
        if payoffs is None:
            raise ConfigError("matrix game needs 'payoffs'")
        labels = definition.get("actions")
        if isinstance(payoffs, dict):
            if labels is None:
                raise ConfigError("a payoff mapping needs 'actions'")
            labels = [tuple(str(a) for a in lab) for lab in labels]
            n = len(labels)
            table = np.full(tuple(len(l) for l in labels) + (n,), np.nan)
            for key, vec in payoffs.items():
                table[_parse_key(key, labels)] = vec
            if np.isnan(table).any():
                raise ConfigError("payoff mapping does not cover every profile")
        else:
            table = np.array(payoffs, dtype=float)
            if labels is not None:
                labels = [tuple(str(a) for a in lab) for lab in labels]
        players = definition.get("players")
        if players is not None and int(players) != table.ndim - 1:
            raise ConfigError("'players' does not match the payoff table")
        return matrix_game(table, labels)
    except (ParameterError, TypeError, KeyError) as exc:
        raise ConfigError(f"invalid game definition: {exc}") from exc


def game_to_dict(game: Game) -> dict:
    """Definition dict that ``game_from_dict`` turns back into an equivalent game."""
    if game.name == "game1":
        return {"type": "game1"}
    if game.name == "min_effort":
        return {"type": "min_effort", **game.params}
    table = game.params.get("table")
    if table is None:
        raise ConfigError(f"game {game.name!r} has no serializable form")
    labels = [list(d.labels) for d in game.domains]
    payoffs = {}
    for idx in itertools.product(*(range(len(l)) for l in labels)):
        key = ",".join(labels[i][a] for i, a in enumerate(idx))
        payoffs[key] = [float(v) for v in table[idx]]
    return {"type": "matrix", "players": game.n_players, "actions": labels, "payoffs": payoffs}


def load_yaml(path) -> dict:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path} must hold a mapping")
    return data


def load_game(path) -> Game:
    return game_from_dict(load_yaml(path))


def dump_game(game: Game) -> str:
    return yaml.safe_dump(game_to_dict(game), sort_keys=False)
