import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from strongnash.exceptions import ConfigError, ParameterError
from strongnash.harness import (
    CSV_COLUMNS,
    config_from_dict,
    format_report,
    load_config,
    parse_report,
    read_csv_distances,
    run_experiment,
    smooth_series,
)


def _small(**extra):
    data = {"game": "min_effort", "players": 3, "budget": 20000, "runs": 3, "pop_size": 12}
    data.update(extra)
    return config_from_dict(data)


def test_smooth_examples():
    assert smooth_series([2.0] * 7).tolist() == [2.0] * 7
    x = [3.0, 1.0, 4.0, 1.0, 5.0]
    assert smooth_series(x, 1).tolist() == x
    assert smooth_series([0.0, 3.0, 0.0], 3).tolist() == [0.0, 1.0, 0.0]
    assert smooth_series([1.0, 2.0, 3.0, 4.0, 5.0, 6.0], 5).tolist() == [1, 2, 3, 4, 5, 6]
    assert np.allclose(smooth_series([0, 0, 5, 0, 0, 0, 0], 5), [0, 5 / 3, 1, 1, 1, 0, 0])


def test_smooth_errors():
    with pytest.raises(ParameterError):
        smooth_series([1.0, 2.0, 3.0], 2)
    with pytest.raises(ParameterError):
        smooth_series([1.0, 2.0], 5)


@given(st.lists(st.floats(-1e3, 1e3), min_size=5, max_size=40),
       st.floats(-10, 10), st.floats(-10, 10), st.sampled_from([1, 3, 5]))
def test_smooth_properties(x, a, b, w):
    x = np.array(x)
    y = smooth_series(x, w)
    assert y.shape == x.shape
    assert np.allclose(smooth_series(a * x + b, w), a * y + b, atol=1e-6)


def test_config_variants():
    cfg = config_from_dict({"game": "min_effort", "players": 5,
                            "relation": ["full", "prob"], "p": [0.1, 0.4]})
    assert [(m.value, p) for m, p in cfg.variants] == [("full", 1.0), ("prob", 0.1), ("prob", 0.4)]
    assert cfg.game == {"type": "min_effort", "players": 5}


def test_config_errors():
    with pytest.raises(ConfigError):
        config_from_dict({"players": 2})
    with pytest.raises(ConfigError):
        config_from_dict({"game": "game1", "relation": "sometimes"})
    with pytest.raises(ConfigError):
        config_from_dict({"game": "game1", "pop_size": 2})
    with pytest.raises(ConfigError):
        load_config("/nonexistent/config.yaml")


@pytest.mark.parametrize("p", [0.1, 0.2, 0.3])
def test_undefined_two_player_variant(p, tmp_path):
    cfg = config_from_dict({"game": "min_effort", "players": 2, "relation": "prob", "p": p,
                            "out_dir": str(tmp_path / "out")})
    with pytest.raises(ConfigError):
        run_experiment(cfg)
    assert not (tmp_path / "out").exists()


def test_single_run_std_zero():
    rep = run_experiment(_small(runs=1))
    assert rep.variants[0].std_distance == 0.0


def test_seeds_and_determinism():
    a = run_experiment(_small(seed=40))
    b = run_experiment(_small(seed=40))
    assert a.variants[0].seeds == [40, 41, 42]
    assert a.variants[0].distances == b.variants[0].distances
    for ra, rb in zip(a.variants[0].results, b.variants[0].results):
        assert np.array_equal(ra.best_profile, rb.best_profile)


def test_prob_cheaper_per_generation():
    rep = run_experiment(_small(relation=["full", "prob"], p=0.3, runs=1))
    full, prob = rep.variant("full").results[0], rep.variant("p30").results[0]
    assert full.evaluations_used / full.generations > prob.evaluations_used / prob.generations


def test_outputs_round_trip(tmp_path):
    cfg = _small(relation=["full", "prob"], p=0.4, out_dir=str(tmp_path), track_nondominated=True)
    rep = run_experiment(cfg)
    parsed = parse_report((tmp_path / "report.txt").read_text())
    assert set(parsed) == {"full", "p40"}
    for v in rep.variants:
        assert float(parsed[v.label]["mean_distance"]) == pytest.approx(v.mean_distance, rel=1e-11)
        assert parsed[v.label]["successes"] == f"{v.successes}/3"
        for k, r in enumerate(v.results):
            path = tmp_path / v.label / f"run_{k}.csv"
            header = path.read_text().splitlines()[0].split(",")
            assert tuple(header) == CSV_COLUMNS
            d = read_csv_distances(path)
            assert len(d) == len(r.convergence)
            assert d[-1] == pytest.approx(r.best_distance, rel=1e-11)
    record = json.loads((tmp_path / "result.json").read_text())
    assert [v["label"] for v in record["variants"]] == ["full", "p40"]
    assert format_report(rep) == (tmp_path / "report.txt").read_text()


def test_config_file_with_game_file(tmp_path):
    (tmp_path / "g.yaml").write_text("type: example1\n")
    (tmp_path / "c.yaml").write_text("game: g.yaml\nruns: 2\nbudget: 5000\npop_size: 8\n")
    cfg = load_config(tmp_path / "c.yaml")
    rep = run_experiment(cfg)
    assert rep.variants[0].distances == [0.0, 0.0]


def test_threads_env(monkeypatch):
    monkeypatch.setenv("STRONGNASH_THREADS", "two")
    with pytest.raises(ConfigError):
        run_experiment(_small())
