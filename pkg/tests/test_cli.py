"""End-to-end command-line checks, run in process through cli.main."""

import csv
import io
import json
import os
from pathlib import Path

import numpy as np
import pytest

from cgar.cli import main, resolve_model, run_benchmark

GOLDEN = Path(__file__).parent / "golden"

URDF_TEXT = """<robot name="tiny">
  <link name="base"/>
  <link name="tip">
    <inertial>
      <mass value="1.0"/>
      <inertia ixx="0.01" iyy="0.01" izz="0.01" ixy="0" ixz="0" iyz="0"/>
    </inertial>
  </link>
  <joint name="spin" type="revolute">
    <parent link="base"/>
    <child link="tip"/>
    <origin xyz="0 0 0.5"/>
    <axis xyz="0 0 1"/>
    <limit lower="-3.0" upper="3.0" velocity="1.0" effort="5.0"/>
  </joint>
</robot>
"""


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_fk_text_output(capsys):
    code, out, err = run_cli(capsys, ["fk", "--model", "panda"])
    assert code == 0 and err == ""
    assert "model: panda" in out
    assert "homogeneous:" in out


def test_fk_json_matches_golden(capsys):
    code, out, _ = run_cli(capsys, ["fk", "--model", "panda", "--json"])
    assert code == 0
    assert out == (GOLDEN / "fk_panda_zero.json").read_text()
    payload = json.loads(out)
    H = np.array(payload["homogeneous"])
    np.testing.assert_allclose(H[:3, 3], [0.088, 0.0, 0.926], atol=1e-12)


def test_rnea_json_matches_golden(capsys):
    code, out, _ = run_cli(capsys, [
        "rnea", "--model", "ur5", "--q", "0.1,-0.2,0.3,-0.4,0.5,-0.6",
        "--json"])
    assert code == 0
    assert out == (GOLDEN / "rnea_ur5.json").read_text()


def test_jacobian_shapes(capsys):
    code, out, _ = run_cli(capsys, ["jacobian", "--model", "ur5", "--json"])
    assert code == 0
    payload = json.loads(out)
    assert np.array(payload["geometric"]).shape == (6, 6)
    assert np.array(payload["analytic"]).shape == (8, 6)


def test_aba_inverts_rnea(capsys):
    q = "0.2,0.1,-0.3,0.4,0.0,-0.1,0.5"
    code, out, _ = run_cli(capsys, [
        "rnea", "--model", "panda", "--q", q, "--json"])
    assert code == 0
    tau = json.loads(out)["tau"]
    code, out, _ = run_cli(capsys, [
        "aba", "--model", "panda", "--q", q,
        "--tau", ",".join(f"{t!r}" for t in tau), "--json"])
    assert code == 0
    qdd = np.array(json.loads(out)["qdd"])
    assert np.abs(qdd).max() < 1e-8


def test_ik_pose_target_succeeds(capsys):
    # target taken from a forward solve, so it is exactly reachable
    code, out, _ = run_cli(capsys, [
        "ik", "--model", "panda",
        "--target", "pose:0.4,0.1,0.5,0,3.14159,0", "--json", "--seed", "3"])
    payload = json.loads(out)
    assert code == 0
    assert payload["success"] is True
    assert payload["residual_norm"] < 1e-6
    assert len(payload["q"]) == 7


def test_ik_unreachable_exits_two(capsys):
    code, out, _ = run_cli(capsys, [
        "ik", "--model", "panda", "--target", "point:10,10,10", "--json"])
    assert code == 2
    payload = json.loads(out)
    assert payload["success"] is False


def test_ik_plane_target(capsys):
    code, out, _ = run_cli(capsys, [
        "ik", "--model", "ur5", "--target", "plane:0,0,1,0.3", "--json"])
    assert code == 0
    assert json.loads(out)["residual_norm"] < 1e-6


def test_ik_deterministic_given_seed(capsys):
    argv = ["ik", "--model", "panda", "--target", "point:0.4,0.2,0.5",
            "--seed", "7", "--json"]
    _, out1, _ = run_cli(capsys, argv)
    _, out2, _ = run_cli(capsys, argv)
    assert out1 == out2


def test_bench_csv_schema(capsys):
    for suite, expected_ops in (
            ("algebra", {"geometric", "inner", "outer", "reverse", "dual",
                         "inverse"}),
            ("robot", {"forward_kinematics", "geometric_jacobian",
                       "inverse_dynamics", "forward_dynamics"})):
        code, out, _ = run_cli(capsys, [
            "bench", "--suite", suite, "--repetitions", "5", "--seed", "1"])
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "# seed=1"
        reader = csv.DictReader(io.StringIO("\n".join(lines[1:])))
        rows = list(reader)
        assert reader.fieldnames == ["suite", "operation", "n_samples",
                                     "mean_ns", "stddev_ns", "min_ns"]
        assert {row["operation"] for row in rows} == expected_ops
        for row in rows:
            assert row["suite"] == suite
            assert int(row["n_samples"]) == 5
            assert float(row["mean_ns"]) > 0
            assert float(row["min_ns"]) <= float(row["mean_ns"])
            assert float(row["stddev_ns"]) >= 0


def test_bench_writes_file(tmp_path, capsys):
    out_file = tmp_path / "bench.csv"
    code, out, _ = run_cli(capsys, [
        "bench", "--suite", "algebra", "--repetitions", "3",
        "--out", str(out_file)])
    assert code == 0 and out == ""
    assert out_file.read_text().startswith("# seed=0")


def test_run_benchmark_deterministic_header():
    text = run_benchmark("algebra", 3, seed=42)
    assert text.startswith("# seed=42\n")


def test_convert_urdf_then_fk(tmp_path, capsys):
    urdf = tmp_path / "tiny.urdf"
    urdf.write_text(URDF_TEXT)
    yaml_out = tmp_path / "tiny.yaml"
    code, _, _ = run_cli(capsys, [
        "convert-urdf", str(urdf), "--out", str(yaml_out)])
    assert code == 0
    code, out, _ = run_cli(capsys, [
        "fk", "--model", str(yaml_out), "--q", "1.5707963267948966", "--json"])
    assert code == 0
    H = np.array(json.loads(out)["homogeneous"])
    np.testing.assert_allclose(H[:3, 3], [0, 0, 0.5], atol=1e-12)
    np.testing.assert_allclose(H[:2, :2], [[0, -1], [1, 0]], atol=1e-12)


def test_model_search_path(tmp_path, capsys, monkeypatch):
    doc_text = resolve_model("panda")
    (tmp_path / "mybot.yaml").write_text(doc_text)
    monkeypatch.setenv("CGA_MODEL_PATH", str(tmp_path))
    code, out, _ = run_cli(capsys, ["fk", "--model", "mybot", "--json"])
    assert code == 0
    assert json.loads(out)["model"] == "panda"


def test_unknown_model_exits_one(capsys):
    code, out, err = run_cli(capsys, ["fk", "--model", "nonexistent"])
    assert code == 1
    assert "error:" in err
    assert out == ""


def test_wrong_q_length_exits_one(capsys):
    code, _, err = run_cli(capsys, ["fk", "--model", "panda", "--q", "0,0"])
    assert code == 1
    assert "7" in err  # names the expected dof


def test_bad_target_grammar_exits_one(capsys):
    code, _, err = run_cli(capsys, [
        "ik", "--model", "panda", "--target", "blob:1,2,3"])
    assert code == 1
    assert "target" in err


def test_output_file_writing(tmp_path, capsys):
    out_file = tmp_path / "fk.json"
    code, out, _ = run_cli(capsys, [
        "fk", "--model", "ur5", "--json", "--out", str(out_file)])
    assert code == 0 and out == ""
    payload = json.loads(out_file.read_text())
    assert payload["model"] == "ur5"
