"""Scenario parsing, CLI commands, exit codes, output determinism."""
import json
import pathlib

import pytest
import yaml

import hyperorlicz as hz
from hyperorlicz import cli
from hyperorlicz.report import record_line, render_csv, render_records

SCENARIO_DIR = pathlib.Path(__file__).resolve().parent.parent / "scenarios"

DOUBLING = {
    "id": "doubling",
    "hypergroup": {"family": "integers", "window": 64},
    "young": {"kind": "phi_p", "p": 2.0},
    "weight": {"form": "step", "threshold": 0, "low": 2.0, "high": 0.5},
    "eta": {"generator": "center_powers", "z": 1},
    "sets": {"E": [0]},
    "functions": {"f": {0: 1.0}, "g": {0: 1.0}},
    "run": {"horizon": 12, "k_max": 8, "series_cutoff": 5, "triple_bound": 6},
}


def write_scenario(tmp_path, data, name="sc.yaml"):
    path = tmp_path / name
    path.write_text(yaml.safe_dump(data))
    return str(path)


def test_shipped_scenarios_parse():
    for name in ("doubling_shift.yaml", "dr_axioms.yaml", "su2_sequence.yaml"):
        sc = hz.load_scenario(str(SCENARIO_DIR / name))
        assert sc.scenario_id
    sc = hz.load_scenario(str(SCENARIO_DIR / "doubling_shift.yaml"))
    assert sc.run.horizon == 16
    assert isinstance(sc.eta, hz.CenterPowers)


def test_parse_rejects_unknown_keys():
    bad = dict(DOUBLING)
    bad["surprise"] = 1
    with pytest.raises(hz.ScenarioError):
        hz.parse_scenario(bad)


def test_parse_rejects_bad_parameters():
    bad = json.loads(json.dumps(DOUBLING))
    bad["hypergroup"] = {"family": "dunkl_ramirez", "window": 8, "a": 0.75}
    with pytest.raises(hz.ScenarioError):
        hz.parse_scenario(_with_int_keys(bad))
    bad2 = json.loads(json.dumps(DOUBLING))
    bad2["young"] = {"kind": "phi_p", "p": 0.5}
    with pytest.raises(hz.ScenarioError):
        hz.parse_scenario(_with_int_keys(bad2))
    bad3 = json.loads(json.dumps(DOUBLING))
    bad3["sets"] = {"E": [99]}
    with pytest.raises(hz.ScenarioError):
        hz.parse_scenario(_with_int_keys(bad3))


def _with_int_keys(data):
    # JSON round-trips turn integer mapping keys into strings; YAML keeps them
    for section in ("functions",):
        if section in data:
            data[section] = {name: {int(k): v for k, v in mp.items()}
                             for name, mp in data[section].items()}
    return data


def test_parse_dry_runs_sequence_reachability():
    bad = json.loads(json.dumps(DOUBLING))
    bad = _with_int_keys(bad)
    bad["hypergroup"]["window"] = 8
    bad["run"]["horizon"] = 20  # powers of 1 leave the window before 20
    with pytest.raises(hz.ScenarioError):
        hz.parse_scenario(bad)


def test_parse_table_family():
    data = {
        "id": "cyclic-three",
        "hypergroup": {
            "family": "table",
            "window": 2,
            "identity": 0,
            "involution": {0: 0, 1: 2, 2: 1},
            "table": [[x, y, {(x + y) % 3: 1.0}] for x in range(3)
                      for y in range(3)],
        },
        "young": {"kind": "phi_p", "p": 2.0},
        "weight": {"form": "constant", "value": 1.0},
    }
    sc = hz.parse_scenario(data)
    assert sc.model.center_elements().members == (0, 1, 2)


def run_cli(args):
    return cli.main(args)


def test_cli_axioms_exit_zero(tmp_path, capsys):
    path = write_scenario(tmp_path, DOUBLING)
    assert run_cli(["--scenario", path, "--command", "axioms"]) == 0
    out = capsys.readouterr().out
    lines = out.strip().split("\n")
    head = json.loads(lines[0])
    assert head["record"] == "header" and head["command"] == "axioms"
    assert all(json.loads(l)["ok"] for l in lines[1:])


def test_cli_probe_center_holds(tmp_path, capsys):
    path = write_scenario(tmp_path, DOUBLING)
    code = run_cli(["--scenario", path, "--command", "probe",
                    "--args", "id=center"])
    assert code == 0
    lines = capsys.readouterr().out.strip().split("\n")
    verdict = json.loads(lines[-1])
    assert verdict["verdict"] == "holds_empirically"
    assert verdict["certification"].startswith("densely hypercyclic")
    row = json.loads(lines[1])
    assert row["sup_reciprocal"] == 0.5 and row["n"] == 1


def test_cli_probe_flat_weight_fails(tmp_path):
    data = json.loads(json.dumps(DOUBLING))
    data = _with_int_keys(data)
    data["weight"] = {"form": "constant", "value": 1.0}
    path = write_scenario(tmp_path, data)
    assert run_cli(["--scenario", path, "--command", "probe",
                    "--args", "id=center"]) == 1


def test_cli_missing_eta_is_precondition_failure(tmp_path):
    data = json.loads(json.dumps(DOUBLING))
    data = _with_int_keys(data)
    del data["eta"]
    path = write_scenario(tmp_path, data)
    assert run_cli(["--scenario", path, "--command", "aperiodic"]) == 2


def test_cli_bad_probe_id(tmp_path):
    path = write_scenario(tmp_path, DOUBLING)
    assert run_cli(["--scenario", path, "--command", "probe",
                    "--args", "id=mystery"]) == 2


def test_cli_window_overflow_exit_code(tmp_path, monkeypatch):
    path = write_scenario(tmp_path, DOUBLING)

    def boom(*args, **kwargs):
        raise hz.WindowOverflow("forced")

    monkeypatch.setattr(cli, "run_command", boom)
    assert run_cli(["--scenario", path, "--command", "axioms"]) == 3


def test_cli_witness_and_orbit(tmp_path, capsys):
    path = write_scenario(tmp_path, DOUBLING)
    assert run_cli(["--scenario", path, "--command", "witness"]) == 0
    out = capsys.readouterr().out
    final = json.loads(out.strip().split("\n")[-1])
    assert final["record"] == "witness" and final["values"]["0"] == 1.0
    assert run_cli(["--scenario", path, "--command", "orbit",
                    "--args", "f=f", "--args", "targets=g"]) == 0


def test_cli_haar_seeded(tmp_path, capsys):
    path = write_scenario(tmp_path, DOUBLING)
    assert run_cli(["--scenario", path, "--command", "haar",
                    "--seed", "5"]) == 0
    first = capsys.readouterr().out.strip().split("\n")[1:]
    assert run_cli(["--scenario", path, "--command", "haar",
                    "--seed", "5"]) == 0
    second = capsys.readouterr().out.strip().split("\n")[1:]
    assert first == second


def test_cli_out_file_and_csv(tmp_path):
    path = write_scenario(tmp_path, DOUBLING)
    out = tmp_path / "report.csv"
    code = run_cli(["--scenario", path, "--command", "probe",
                    "--args", "id=necessary-sup", "--format", "csv",
                    "--out", str(out)])
    assert code == 0
    lines = out.read_text().strip().split("\n")
    assert "sup_profile" in lines[0]
    assert len(lines) >= 5


def test_record_serialization_canonical():
    line = record_line({"b": 1.0, "a": 0.1234567890123456, "c": [1, 2]})
    assert line == '{"a":0.123456789012,"b":1.0,"c":[1,2]}'
    assert record_line({"x": float("nan")}) == '{"x":"nan"}'
    text = render_records("cmd", "sid", [{"v": 1}])
    head = json.loads(text.split("\n")[0])
    assert head["records"] == 1 and "sha256" in head
    csv_text = render_csv([{"a": 1, "b": "x,y"}])
    assert csv_text == 'a,b\n1,"x,y"\n'


def test_cli_bodies_byte_identical(tmp_path):
    path = write_scenario(tmp_path, DOUBLING)
    bodies = []
    for name in ("r1.txt", "r2.txt"):
        out = tmp_path / name
        assert run_cli(["--scenario", path, "--command", "probe",
                        "--args", "id=hereditary", "--out", str(out)]) == 0
        bodies.append(out.read_text().split("\n", 1)[1])
    assert bodies[0] == bodies[1]
