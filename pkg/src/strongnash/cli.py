"""``strongnash`` command line entry point."""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .crde import SolverConfig, run
from .exceptions import StrongNashError
from .game import BUILTIN_GAMES, builtin_game, distance_to_reference
from .gamefile import dump_game, load_game
from .harness import default_reference, format_report, load_config, run_experiment
from .oracle import Kind, ans_set, discretize, enumerate_equilibria, is_nash, is_pareto_efficient
from .oracle import is_strong_nash
from .relations import RelationConfig


def _add_game_args(p):
    p.add_argument("--game", default="game1",
                   help="built-in game: game1, min_effort, example1 (default: game1)")
    p.add_argument("--game-file", type=Path, help="YAML/JSON game definition file")
    p.add_argument("--players", type=int, default=2)
    p.add_argument("--alpha", type=float, default=0.5)


def _game(args):
    if args.game_file is not None:
        return load_game(args.game_file)
    if args.game == "matrix":
        raise StrongNashError("matrix games need --game-file")
    return builtin_game(args.game, players=args.players, alpha=args.alpha)


def _fmt_profile(game, s) -> str:
    return "(" + ", ".join(f"{v:.12g}" if isinstance(v, float) else str(v)
                           for v in game.format_profile(s)) + ")"


def cmd_solve(args) -> int:
    game = _game(args)
    rel = RelationConfig(mode=args.relation, p=args.p, reading=args.reading,
                         tolerance=args.tolerance)
    cfg = SolverConfig(pop_size=args.pop_size, F=args.F, pc=args.pc, max_evaluations=args.budget,
                       relation=rel, seed=args.seed, budget_unit=args.budget_unit,
                       track_nondominated=False)
    ref = default_reference(game) if args.reference is None else np.array(args.reference)
    result = run(game, cfg, reference=ref)
    print(f"best profile: {_fmt_profile(game, result.best_profile)}")
    if ref is not None:
        print(f"distance to reference: {distance_to_reference(result.best_profile, ref):.12g}")
    print(f"generations: {result.generations}  evaluations: {result.evaluations_used}")
    print(f"non-dominated members: {result.final_nondominated.shape[0]}")
    return 0


def cmd_experiment(args) -> int:
    cfg = load_config(args.config)
    if args.out_dir is not None:
        cfg = replace(cfg, out_dir=str(args.out_dir))
    report = run_experiment(cfg)
    print(format_report(report))
    return 0


def cmd_oracle(args) -> int:
    game = _game(args)
    if not game.is_finite:
        game = discretize(game, args.points)
    if args.profile is not None:
        labels = [list(d.labels) for d in game.domains]
        try:
            s = [labels[i].index(a) for i, a in enumerate(args.profile)]
        except (ValueError, IndexError):
            raise StrongNashError(f"unknown profile {args.profile}") from None
        check = {"nash": is_nash, "pareto": is_pareto_efficient,
                 "strong-nash": is_strong_nash}.get(args.kind)
        if check is None:
            raise StrongNashError("--profile works with nash, pareto or strong-nash")
        print(str(check(game, s)).lower())
        return 0
    if args.kind == "ans":
        found = ans_set(game, RelationConfig(reading=args.reading))
    else:
        found = enumerate_equilibria(game, Kind(args.kind))
    for s in found:
        print(_fmt_profile(game, s))
    if len(found) == 0:
        print("(none)")
    return 0


def cmd_games(args) -> int:
    if args.dump is None:
        for name, desc in BUILTIN_GAMES.items():
            print(f"{name:12s} {desc}")
        return 0
    if args.dump == "matrix":
        raise StrongNashError("'matrix' is a game type, not a built-in instance")
    print(dump_game(builtin_game(args.dump, players=args.players, alpha=args.alpha)), end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="strongnash",
                                     description="Strong Nash equilibria by crowding DE.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run the solver once")
    _add_game_args(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=lambda x: int(float(x)), default=1_000_000)
    p.add_argument("--budget-unit", choices=["payoff_evaluations", "comparisons"],
                   default="payoff_evaluations")
    p.add_argument("--pop-size", type=int, default=50)
    p.add_argument("--F", type=float, default=0.5)
    p.add_argument("--pc", type=float, default=0.9)
    p.add_argument("--relation", choices=["full", "prob"], default="full")
    p.add_argument("--p", type=float, default=1.0)
    p.add_argument("--reading", choices=["literal", "all_members"], default="literal")
    p.add_argument("--tolerance", type=float, default=0.0)
    p.add_argument("--reference", type=float, nargs="+")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("experiment", help="run a campaign from a config file")
    p.add_argument("--config", type=Path, required=True)
    p.add_argument("--out-dir", type=Path)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("oracle", help="brute-force equilibria of a finite game")
    _add_game_args(p)
    p.add_argument("--kind", choices=["nash", "pareto", "strong-nash", "ans"],
                   default="strong-nash")
    p.add_argument("--points", type=int, default=11,
                   help="grid points per axis for continuous games")
    p.add_argument("--profile", nargs="+", help="check one profile given by action labels")
    p.add_argument("--reading", choices=["literal", "all_members"], default="literal")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("games", help="list built-in games or dump one")
    p.add_argument("--dump", metavar="NAME")
    p.add_argument("--players", type=int, default=2)
    p.add_argument("--alpha", type=float, default=0.5)
    p.set_defaults(func=cmd_games)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except StrongNashError as exc:
        print(f"strongnash: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
