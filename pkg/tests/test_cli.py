import json
import os

import pandas as pd
import pytest
import yaml

from systolic_atlas.cli import RunConfig, get_parser, run
from systolic_atlas.exceptions import ParamError
from systolic_atlas.graphs import heawood, petersen, theta, write_cmg
from systolic_atlas.utils import load_settings


def _run_json(capsys, argv):
    code = run(argv + ["--threads", "1"])
    captured = capsys.readouterr()
    assert code == 0, captured.err
    return json.loads(captured.out)


@pytest.fixture
def graph_files(tmp_path):
    paths = {}
    for name, graph in [("heawood", heawood()), ("petersen", petersen()), ("theta", theta())]:
        paths[name] = str(tmp_path / f"{name}.cmg")
        write_cmg(graph, paths[name])
    return paths


def test_help_and_usage_errors(capsys):
    assert run(["--help"]) == 0
    assert run([]) == 2
    assert run(["census"]) == 2
    assert run(["unknown-command"]) == 2
    capsys.readouterr()


def test_census_command(capsys):
    payload = _run_json(capsys, ["census", "--v", "6"])
    assert payload == {"V": 6, "count": 17, "simple_count": 2}


def test_census_with_oracle_and_list(capsys):
    payload = _run_json(capsys, ["census", "--v", "4", "--oracle", "--list"])
    assert payload["oracle_agrees"]
    assert payload["oracle_count"] == 5
    assert len(payload["codes"]) == 5


def test_census_csv_output(tmp_path):
    out = str(tmp_path / "census.csv")
    assert run(["census", "--v", "4", "--list", "--format", "csv", "--out", out, "--threads", "1"]) == 0
    frame = pd.read_csv(out)
    assert frame.shape == (5, 2)
    assert set(frame["V"]) == {4}


@pytest.mark.parametrize(
    "argv,exit_code",
    [
        (["census", "--v", "5"], 2),
        (["census", "--v", "16", "--allow-large"], 3),
        (["census", "--v", "14"], 3),
        (["census", "--v", "4", "--format", "xml"], 2),
        (["census", "--v", "4", "--seed", "-1"], 2),
        (["hairy-torus", "--m", "4"], 2),
        (["hairy-torus", "--m", "3", "--n", "3"], 2),
        (["girth-lift"], 2),
        (["mdp-ball", "--r", "1"], 2),
        (["mdp-ball", "--g", "8", "--r", "1"], 3),
        (["y-surface", "--input", "does_not_exist.cmg"], 2),
    ],
)
def test_exit_codes(capsys, argv, exit_code):
    assert run(argv + ["--threads", "1"]) == exit_code
    assert capsys.readouterr().err.startswith("error:")


def test_pentagon_command(capsys):
    payload = _run_json(capsys, ["pentagon"])
    assert payload["s"] == pytest.approx(4.3973, abs=1e-3)
    assert payload["cuff_distance"] == pytest.approx(payload["s_over_3"], abs=1e-6)
    assert payload["c"] == pytest.approx(payload["s"] / 12)


def test_hairy_torus_command(capsys):
    payload = _run_json(capsys, ["hairy-torus", "--m", "4", "--n", "4"])
    assert payload["genus"] == 9
    assert payload["bers_exceeds_2sqrt_g"]
    sweep = _run_json(capsys, ["hairy-torus", "--sweep"])
    assert [report["n"] for report in sweep] == load_settings()["sweeps"]["bers"]["n"]


def test_y_surface_command(capsys, graph_files):
    payload = _run_json(capsys, ["y-surface", "--input", graph_files["heawood"]])
    assert payload["input_girth"] == 6
    assert payload["surface"]["genus"] == 22
    assert payload["certificate"]["passed"]
    assert payload["filling"]["all_disks"]


def test_y_surface_needs_girth_six(capsys, graph_files):
    assert run(["y-surface", "--input", graph_files["petersen"], "--threads", "1"]) == 2
    assert "girth" in capsys.readouterr().err
    payload = _run_json(capsys, ["y-surface", "--input", graph_files["theta"], "--lift"])
    assert payload["input_girth"] == 2
    assert payload["lift"]["gadget_count"] >= 1
    assert payload["certificate"]["passed"]


def test_girth_lift_command(capsys, graph_files):
    payload = _run_json(capsys, ["girth-lift", "--v", "4"])
    assert len(payload["graphs"]) == 5
    assert payload["all_girth_at_least_6"]
    assert payload["max_a"] >= 1.0
    single = _run_json(capsys, ["girth-lift", "--input", graph_files["heawood"]])
    assert single["graphs"][0]["gadget_count"] == 0


def test_mdp_ball_command(capsys, graph_files):
    payload = _run_json(capsys, ["mdp-ball", "--g", "3", "--r", "1", "--seed", "5"])
    assert payload["g"] == 3
    assert payload["bound"] == 9
    assert payload["within_bound"]
    assert payload["distances"][payload["center"]] == 0
    # the Heawood graph is too large for neighbor generation
    assert run(["mdp-ball", "--input", graph_files["heawood"], "--r", "1", "--threads", "1"]) == 3


def test_sparsity_command(capsys, tmp_path):
    csv_path = str(tmp_path / "sparsity.csv")
    argv = ["sparsity", "--g-min", "2", "--g-max", "3", "--L", "1", "--h", "0.5", "--trials", "10", "--csv", csv_path]
    payload = _run_json(capsys, argv)
    assert [result["fraction"] for result in payload["results"]] == pytest.approx([0.5, 0.4])
    assert pd.read_csv(csv_path)["g"].tolist() == [2, 3]


def test_report_command(capsys, tmp_path):
    config_path = str(tmp_path / "small.yaml")
    with open(config_path, "w") as f:
        yaml.dump({"sparsity": {"g_max": 3, "L": 1, "h": 0.5, "trials": 10}, "sweeps": {"bers": {"n": [4, 6]}}}, f)
    html = str(tmp_path / "report" / "atlas.html")
    payload = _run_json(capsys, ["report", "--v-max", "6", "--config", config_path, "--html", html])
    claims = payload["claims"]
    assert claims["bers_sweep"]["n"] == [4, 6]
    assert claims["bers_sweep"]["all_exceed_2sqrt_g"]
    assert claims["ball_bounds"]["all_within_bound"]
    assert abs(claims["cuff_distance"]["error"]) < 1e-6
    assert [row["count"] for row in payload["growth"]] == [2, 5, 17]
    assert os.path.exists(html)


def test_invalid_numerics_config(tmp_path):
    config_path = str(tmp_path / "bad.yaml")
    with open(config_path, "w") as f:
        yaml.dump({"numerics": {"tolerance": 0.0}}, f)
    assert run(["pentagon", "--config", config_path, "--threads", "1"]) == 2


def test_run_config():
    args = get_parser().parse_args(["census", "--v", "4", "--threads", "2", "--seed", "7"])
    config = RunConfig.from_args(args)
    assert config.threads == 2
    assert config.seed == 7
    assert config.census_kwargs["settings"]["census"]["v_max"] == 12
    with pytest.raises(ParamError):
        RunConfig(subcommand="census", threads=0)


if __name__ == "__main__":
    pytest.main([__file__])
