import json
from pathlib import Path

import pytest

from convex_spheres import commands
from convex_spheres import main as cli
from convex_spheres.config import RunConfig
from convex_spheres.errors import InvalidGeometry
from convex_spheres.geometry import family
from convex_spheres.main import EXIT_CHECK_FAILED, EXIT_INPUT_ERROR, EXIT_OK, EXIT_RESOURCE_LIMIT, run

SAMPLES = Path(__file__).parent.parent / "samples"
THREE = str(SAMPLES / "three_collinear.json")


@pytest.fixture(autouse=True)
def isolated_config(config_dir):
    return config_dir


def report(capsys):
    return json.loads(capsys.readouterr().out)


@pytest.mark.parametrize("command", ["lattice", "complex", "sphere", "qsym", "enriched"])
def test_commands_pass_on_three_collinear(command, capsys):
    assert run([command, "--input", THREE]) == EXIT_OK
    doc = report(capsys)
    assert doc["command"] == command
    assert doc["passed"] is True
    assert doc["geometry"]["name"] == "three-collinear"


def test_lattice_report(capsys):
    run(["lattice", "--input", THREE])
    section = report(capsys)["lattice"]
    assert section["closed_set_count"] == 7
    assert section["extreme_points"] == [1, 3]
    assert section["nu"] == 6


def test_sphere_report(capsys):
    run(["sphere", "--input", THREE])
    section = report(capsys)["sphere"]
    assert section["pm_delta"]["f_vector"] == [18, 48, 32]
    assert section["pm_delta"]["h_vector"] == [1, 15, 15, 1]
    assert section["q_poset"]["coatoms"] == 4


def test_verify_all_samples(capsys):
    for name in ("three_collinear", "boolean2", "chain3_upper", "triangle_center"):
        assert run(["verify", "--input", str(SAMPLES / f"{name}.json"), "--m-max", "2"]) == EXIT_OK
        doc = report(capsys)
        assert all(check["passed"] for check in doc["checks"])
        assert doc["qsym"]["passed"]


def test_output_is_deterministic(capsys):
    run(["verify", "--input", THREE, "--m-max", "2"])
    first = capsys.readouterr().out
    run(["verify", "--input", THREE, "--m-max", "2"])
    assert capsys.readouterr().out == first


def test_files_written_to_out(tmp_path):
    out = tmp_path / "out"
    code = run(["sphere", "--input", THREE, "--out", str(out), "--emit", "json,dot,off"])
    assert code == EXIT_OK
    names = {p.name for p in out.iterdir()}
    assert names == {"sphere.json", "q_poset.json", "pm_delta.json", "q_poset.dot", "pm_delta.off"}
    off = (out / "pm_delta.off").read_text().splitlines()
    assert off[0] == "OFF"
    assert off[1] == "18 32 0"
    assert (out / "q_poset.dot").read_text().startswith("digraph")


def test_lattice_dot_export(tmp_path):
    run(["lattice", "--input", THREE, "--out", str(tmp_path), "--emit", "dot"])
    assert (tmp_path / "lattice.dot").exists()
    closed = json.loads((tmp_path / "closed_sets.json").read_text())
    assert len(closed["elements"]) == 7 and len(closed["covers"]) == 9
    assert json.loads((tmp_path / "lattice.json").read_text())["passed"]


def test_exit_codes_for_bad_input(tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text('{"n": 2, ')
    assert run(["lattice", "--input", str(broken)]) == EXIT_INPUT_ERROR
    assert run(["lattice", "--input", str(SAMPLES / "not_convex.json")]) == EXIT_INPUT_ERROR
    assert run(["lattice", "--input", str(tmp_path / "absent.json")]) == EXIT_INPUT_ERROR
    assert run(["sphere", "--input", THREE, "--max-facets", "2000000"]) == EXIT_INPUT_ERROR
    assert run(["sphere", "--input", THREE, "--emit", "png"]) == EXIT_INPUT_ERROR


def test_exit_code_for_resource_limits():
    assert run(["sphere", "--input", THREE, "--max-facets", "1"]) == EXIT_RESOURCE_LIMIT


def test_failed_checks_give_exit_one(monkeypatch):
    def failing(config):
        return commands.CommandResult("lattice", {}, [commands.Check("always_fails", False)])

    monkeypatch.setitem(commands.COMMAND_TABLE, "lattice", failing)
    assert run(["lattice", "--input", THREE]) == EXIT_CHECK_FAILED


def test_config_file_supplies_defaults(config_dir, capsys):
    config_dir.mkdir(parents=True)
    (config_dir / "config.json").write_text(json.dumps({"m_max": 1}))
    run(["enriched", "--input", THREE])
    counts = next(c for c in report(capsys)["checks"] if c["name"] == "enriched_counts")
    assert [row["m"] for row in counts["detail"]["rows"]] == [1]


def test_workbench_rejects_invalid_geometry():
    config = RunConfig("lattice", Path("unused.json"))
    with pytest.raises(InvalidGeometry):
        commands.Workbench(family(2, [[], [1, 2]]), config)


def test_single_point_passes_everything(tmp_path, capsys):
    point = tmp_path / "point.json"
    point.write_text('{"n": 1, "kind": "family", "sets": [[], [1]]}')
    assert run(["verify", "--input", str(point)]) == EXIT_OK
    assert report(capsys)["passed"] is True


def test_unwritable_out_is_an_input_error(tmp_path):
    blocker = tmp_path / "file.txt"
    blocker.write_text("")
    assert run(["lattice", "--input", THREE, "--out", str(blocker / "sub")]) == EXIT_INPUT_ERROR


def test_write_failures_are_input_errors(tmp_path, monkeypatch):
    def refuse(directory, name, text):
        raise PermissionError(13, "Permission denied", str(directory / name))

    monkeypatch.setattr(cli, "write_text", refuse)
    assert run(["lattice", "--input", THREE, "--out", str(tmp_path)]) == EXIT_INPUT_ERROR


def test_invalid_utf8_input_is_an_input_error(tmp_path):
    path = tmp_path / "bad.json"
    path.write_bytes(b'{"n": 1, "kind": "family", "sets": [[], [1]], "name": "\xff\xfe"}')
    assert run(["lattice", "--input", str(path)]) == EXIT_INPUT_ERROR


def test_exports_without_out_are_reported(monkeypatch, capsys):
    warnings = []
    monkeypatch.setattr(cli.logger, "warning", lambda msg, *args: warnings.append(msg % args))
    assert run(["sphere", "--input", THREE, "--emit", "dot,off"]) == EXIT_OK
    assert report(capsys)["command"] == "sphere"
    assert warnings == ["no --out directory, skipped exports: pm_delta.off, q_poset.dot"]


def test_cell_report(capsys):
    run(["sphere", "--input", THREE])
    check = next(c for c in report(capsys)["checks"] if c["name"] == "cell_boundaries")
    cells = check["detail"]["cells"]
    assert len(cells) == 18
    assert check["detail"]["failures"] == []
    top = [c for c in cells if c["rank"] == 3]
    assert len(top) == 4
    assert all(c["size"] == 8 for c in top)
    assert all(c["boundary"] == 0 for c in cells if c["rank"] == 1)
