import subprocess
import sys

import pytest

from strongnash.cli import main


def test_oracle_example1(capsys):
    assert main(["oracle", "--game", "example1", "--kind", "strong-nash"]) == 0
    assert capsys.readouterr().out.strip() == "(A, A)"


def test_oracle_nash_and_profile(capsys):
    main(["oracle", "--game", "example1", "--kind", "nash"])
    assert capsys.readouterr().out.split("\n")[:2] == ["(A, A)", "(B, B)"]
    main(["oracle", "--game", "example1", "--kind", "strong-nash", "--profile", "B", "B"])
    assert capsys.readouterr().out.strip() == "false"


def test_oracle_discretizes_continuous(capsys):
    assert main(["oracle", "--game", "game1", "--points", "5", "--kind", "ans"]) == 0
    assert capsys.readouterr().out.strip() == "(1, -1)"


def test_solve_game1(capsys):
    assert main(["solve", "--game", "game1", "--seed", "7", "--budget", "1000000"]) == 0
    out = capsys.readouterr().out
    assert "best profile: (1, -1)" in out
    assert "distance to reference: 0" in out


def test_experiment(tmp_path, capsys):
    cfg = tmp_path / "c.yaml"
    cfg.write_text("game: min_effort\nplayers: 3\nruns: 2\nbudget: 1e4\npop_size: 10\n")
    assert main(["experiment", "--config", str(cfg), "--out-dir", str(tmp_path / "o")]) == 0
    assert "[full]" in capsys.readouterr().out
    assert (tmp_path / "o" / "full" / "run_1.csv").exists()


def test_missing_config(capsys):
    assert main(["experiment", "--config", "missing.file"]) == 1
    assert "cannot read" in capsys.readouterr().err


def test_games_listing(capsys):
    main(["games"])
    assert "min_effort" in capsys.readouterr().out
    main(["games", "--dump", "example1"])
    assert "type: matrix" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [["bogus"], ["solve", "--nope"]])
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "strongnash", "oracle", "--game", "example1"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.strip() == "(A, A)"
