import json

import pytest

from hahn_paths.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def test_enumerate_counts(capsys):
    doc = run_json(capsys, "enumerate", "--model", "2,1,2")
    assert doc["family_count"] == 3
    assert doc["schema_version"] == 1
    assert doc["model"] == {"N": 2, "S": 1, "T": 2}
    doc = run_json(capsys, "enumerate", "--model", "1,0,5")
    assert doc["family_count"] == 1


def test_enumerate_query_exact_fields(capsys):
    doc = run_json(capsys, "enumerate", "--model", "1,1,2", "--query", "0:1")
    corr = doc["oracle_correlation"]
    assert corr["decimal"] == 0.5
    assert corr["rational"] == "1/2"


def test_hexagon_mapping(capsys):
    doc = run_json(capsys, "enumerate", "--hexagon", "2,1,1")
    assert doc["model"] == {"N": 2, "S": 1, "T": 2}
    assert doc["family_count"] == 3


def test_model_and_hexagon_mutually_exclusive(capsys):
    code, _, err = run(capsys, "enumerate", "--model", "1,1,2", "--hexagon", "1,1,1")
    assert code == 2
    code, _, _ = run(capsys, "enumerate")
    assert code == 2


def test_enumerate_cap_exit_code(capsys, monkeypatch):
    monkeypatch.setenv("HAHN_PATHS_CAP", "1")
    code, _, err = run(capsys, "enumerate", "--model", "2,1,2")
    assert code == 2
    assert "cap" in err


def test_kernel_trace_and_query(capsys):
    doc = run_json(capsys, "kernel", "--model", "2,1,3", "--static-t", "1", "--query", "0:1,1:1")
    assert doc["static_trace"]["rational"] == "2/1"
    assert len(doc["kernel_matrix"]) == 2
    # cross-command agreement with the enumeration oracle
    oracle = run_json(capsys, "enumerate", "--model", "2,1,3", "--query", "0:1,1:1")
    assert doc["correlation"]["rational"] == oracle["oracle_correlation"]["rational"]


def test_kernel_empty_query(capsys):
    doc = run_json(capsys, "kernel", "--model", "2,1,3", "--query", "")
    assert doc["correlation"]["decimal"] == 1.0


def test_kernel_float_mode_reports_conditioning(capsys):
    doc = run_json(
        capsys, "kernel", "--model", "2,1,3", "--query", "0:1,1:2", "--mode", "float"
    )
    assert "conditioning" in doc
    assert doc["conditioning"]["condition_hint"] >= 1.0


def test_kernel_invalid_query_exit_2(capsys):
    code, _, _ = run(capsys, "kernel", "--model", "2,1,3", "--query", "0:99")
    assert code == 2


def test_kernel_csv_matrix(capsys, tmp_path):
    out = tmp_path / "k.csv"
    code, _, err = run(
        capsys, "kernel", "--model", "2,1,3", "--static-t", "1",
        "--format", "csv", "--out", str(out),
    )
    assert code == 0, err
    lines = out.read_text().strip().splitlines()
    assert lines[0].startswith("x\\y,")
    assert len(lines) == 1 + len(lines[0].split(",")) - 1


def test_sample_deterministic_and_densities(capsys, tmp_path):
    out = tmp_path / "s.json"
    args = ("sample", "--model", "1,1,2", "--samples", "400", "--seed", "7",
            "--out", str(out))
    code, _, err = run(capsys, *args)
    assert code == 0, err
    first = out.read_bytes()
    first_traj = (tmp_path / "s.json.trajectories.json").read_bytes()
    code, _, _ = run(capsys, *args)
    assert out.read_bytes() == first
    assert (tmp_path / "s.json.trajectories.json").read_bytes() == first_traj
    doc = json.loads(first)
    freq = doc["empirical_density"]["1"]["0"]
    assert abs(freq - 0.5) < 0.1
    assert doc["trajectory_file"].endswith(".trajectories.json")


def test_sample_requires_out(capsys):
    code, _, _ = run(capsys, "sample", "--model", "1,1,2", "--samples", "1")
    assert code == 2


def test_sample_forced_model_identical_trajectories(capsys, tmp_path):
    out = tmp_path / "flat.json"
    run(capsys, "sample", "--model", "2,0,4", "--samples", "5", "--out", str(out))
    doc = json.loads((tmp_path / "flat.json.trajectories.json").read_text())
    assert all(rec == doc["trajectories"][0] for rec in doc["trajectories"])


def test_sampler_size_exit_3(capsys, tmp_path):
    code, _, _ = run(
        capsys, "sample", "--model", "25,1,2", "--samples", "1",
        "--out", str(tmp_path / "x.json"),
    )
    assert code == 3


def test_limit_report(capsys):
    doc = run_json(capsys, "limit", "--regime", "1,1,2,1,1", "--dmax", "3")
    assert doc["density"] == pytest.approx(2 / 3)
    assert doc["region"] == "inside"
    assert doc["sine_kernel"]["0"] == pytest.approx(2 / 3)
    assert max(abs(v) for v in doc["duality_residuals"].values()) < 1e-10


def test_limit_frozen_report(capsys):
    doc = run_json(capsys, "limit", "--regime", "1,1,2,1,1.95")
    assert doc["region"] == "frozen_empty"
    assert doc["density"] == 0.0


def test_limit_boundary_exit_4(capsys):
    code, _, _ = run(capsys, "limit", "--regime", "1,1,2,1,0")
    assert code == 4


def test_limit_convergence_table(capsys):
    doc = run_json(
        capsys, "limit", "--regime", "1,1,2,1,1", "--rhos", "4,8",
        "--offsets", "0:0,1:0,0:1",
    )
    errors = [row["max_error"] for row in doc["convergence"]]
    assert errors[0] >= errors[1]


def test_render_roundtrip(capsys, tmp_path):
    out = tmp_path / "s.json"
    run(capsys, "sample", "--model", "2,2,4", "--samples", "2", "--seed", "3",
        "--out", str(out))
    svg_path = tmp_path / "t.svg"
    code, _, err = run(
        capsys, "render", "--model", "2,2,4",
        "--trajectory", str(tmp_path / "s.json.trajectories.json"),
        "--style", "rhombi", "--out", str(svg_path),
    )
    assert code == 0, err
    text = svg_path.read_text()
    assert text.count('class="up"') == 4
    code2, out2, _ = run(
        capsys, "render", "--model", "2,2,4",
        "--trajectory", str(tmp_path / "s.json.trajectories.json"),
        "--style", "rhombi",
    )
    assert code2 == 0 and out2 == text


def test_render_bad_trajectory_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, _ = run(capsys, "render", "--model", "1,1,2", "--trajectory", str(bad))
    assert code == 2
    missing_index = tmp_path / "ok.json"
    run(capsys, "sample", "--model", "1,1,2", "--samples", "1",
        "--out", str(tmp_path / "s2.json"))
    code, _, _ = run(
        capsys, "render", "--model", "1,1,2",
        "--trajectory", str(tmp_path / "s2.json.trajectories.json"), "--index", "9",
    )
    assert code == 2
