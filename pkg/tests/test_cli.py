"""
End-to-end tests for the xspec-eval command line
"""

import json

import numpy as np
import pytest
from click.testing import CliRunner

from xspec_eval.cli import main
from xspec_eval.schema import Tensor
from xspec_eval.scores import write_scores
from xspec_eval.tensorcore import write_tensor

from tests.conftest import make_scores


@pytest.fixture
def runner():
    return CliRunner()


def _read_json(path):
    return json.loads(path.read_text(encoding="utf-8"))


def _error_record(result):
    lines = result.stderr.strip().splitlines()
    assert len(lines) == 1
    return json.loads(lines[0])


def test_eval_separated_set(runner, tmp_path, separated_scores):
    scores = write_scores(separated_scores, tmp_path / "scores.csv")
    out = tmp_path / "out"
    result = runner.invoke(main, ["eval", "--scores", str(scores), "--out", str(out)])
    assert result.exit_code == 0, result.output
    report = _read_json(out / "report.json")
    assert report["eer"] == 0.0
    assert report["auc"] == 1.0
    assert set(report["gar_at_far"]) == {"0.1", "0.001"}
    assert (out / "roc.csv").read_text(encoding="utf-8").startswith("threshold,far,gar\ninf,0.0,0.0\n")
    assert (out / "roc.svg").read_text(encoding="utf-8").startswith("<svg")


def test_eval_custom_far_points(runner, tmp_path, scores_csv):
    out = tmp_path / "out"
    result = runner.invoke(main, ["eval", "--scores", str(scores_csv), "--out", str(out), "--far-points", "0.5"])
    assert result.exit_code == 0, result.output
    assert _read_json(out / "report.json")["gar_at_far"] == {"0.5": 1.0}


def test_fuse_identical_inputs(runner, tmp_path, scores_csv):
    out = tmp_path / "out"
    result = runner.invoke(
        main, ["fuse", "--scores-vis", str(scores_csv), "--scores-ir", str(scores_csv), "--out", str(out)]
    )
    assert result.exit_code == 0, result.output
    sawf = (out / "fused_sawf.csv").read_bytes()
    assert sawf == (out / "fused_arithmetic_average.csv").read_bytes()
    weights = _read_json(out / "weights.json")
    assert weights["sawf"] == {"w1": 0.5, "w2": 0.5}

    comparison = (out / "comparison.csv").read_text(encoding="utf-8").splitlines()
    assert comparison[0] == "rule,gar_pct_at_far_0.1,gar_pct_at_far_0.001,eer_pct,d_prime,auc"
    rules = [line.split(",")[0] for line in comparison[1:]]
    assert rules[:3] == ["visible", "infrared", "sawf"]
    assert "median" in rules
    for rule in rules[2:]:
        assert (out / f"report_{rule}.json").exists()


def test_fuse_failure_removes_partial_outputs(runner, tmp_path, hand_scores):
    vis = write_scores(make_scores([0.9, 0.8, -0.3], [0.7, 0.2, 0.1]), tmp_path / "vis.csv")
    ir = write_scores(hand_scores, tmp_path / "ir.csv")
    out = tmp_path / "out"
    result = runner.invoke(main, ["fuse", "--scores-vis", str(vis), "--scores-ir", str(ir), "--out", str(out)])
    assert result.exit_code == 1
    record = _error_record(result)
    assert record["error"] == "ArgumentError"
    assert "geometric" in record["message"]
    assert list(out.iterdir()) == []


def test_parse_error_is_one_json_line(runner, tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("probe_id,probe_subject,gallery_id,gallery_subject,score\na,x,b,x,high\n", encoding="utf-8")
    out = tmp_path / "out"
    result = runner.invoke(main, ["eval", "--scores", str(bad), "--out", str(out)])
    assert result.exit_code == 1
    record = _error_record(result)
    assert record["error"] == "ParseError"
    assert record["message"].startswith("line 2:")
    assert not (out / "report.json").exists()


def test_invalid_far_points(runner, tmp_path, scores_csv):
    result = runner.invoke(
        main, ["eval", "--scores", str(scores_csv), "--out", str(tmp_path / "out"), "--far-points", "1.5"]
    )
    assert result.exit_code == 1
    assert "1.5" in _error_record(result)["message"]


def test_synth_is_deterministic(runner, tmp_path):
    outputs = []
    for name in ("a", "b"):
        out = tmp_path / name
        result = runner.invoke(main, ["synth", "--seed", "7", "--n-genuine", "20", "--n-impostor", "30", "--out", str(out)])
        assert result.exit_code == 0, result.output
        outputs.append((out / "scores.csv").read_bytes())
    assert outputs[0] == outputs[1]
    assert len(outputs[0].decode("utf-8").splitlines()) == 51


def test_synth_pair_then_fuse(runner, tmp_path):
    synth_out = tmp_path / "synth"
    result = runner.invoke(main, ["synth", "--pair", "--n-genuine", "50", "--n-impostor", "200", "--out", str(synth_out)])
    assert result.exit_code == 0, result.output
    out = tmp_path / "fused"
    result = runner.invoke(
        main,
        [
            "fuse",
            "--scores-vis",
            str(synth_out / "scores_vis.csv"),
            "--scores-ir",
            str(synth_out / "scores_ir.csv"),
            "--normalize",
            "minmax",
            "--out",
            str(out),
        ],
    )
    assert result.exit_code == 0, result.output
    weights = _read_json(out / "weights.json")["sawf"]
    assert weights["w1"] + weights["w2"] == 1.0


def test_fid_command(runner, tmp_path):
    x = tmp_path / "x.csv"
    y = tmp_path / "y.csv"
    x.write_text("sample_id,f0,f1\na,1.0,0.0\nb,-1.0,0.0\nc,0.0,1.0\nd,0.0,-1.0\n", encoding="utf-8")
    y.write_text("sample_id,f0,f1\na,4.0,4.0\nb,2.0,4.0\nc,3.0,5.0\nd,3.0,3.0\n", encoding="utf-8")
    out = tmp_path / "out"
    result = runner.invoke(main, ["fid", "--features-x", str(x), "--features-y", str(y), "--out", str(out)])
    assert result.exit_code == 0, result.output
    assert _read_json(out / "fid.json")["fid"] == pytest.approx(25.0, abs=1e-9)


def _write_loss_inputs(tmp_path, fgv_size=4):
    tensors = tmp_path / "tensors"
    tensors.mkdir()
    for name, value in [("v", 0.0), ("i", 0.0), ("g_v", 0.0), ("f_i", 0.1), ("gfi", 0.1)]:
        write_tensor(Tensor.from_array(np.full((1, 4, 4), value)), tensors / f"{name}.tnsr")
    write_tensor(Tensor.from_array(np.full((1, fgv_size, fgv_size), 0.1)), tensors / "fgv.tnsr")
    for name in ("d_real_ir", "d_fake_ir", "d_real_vis", "d_fake_vis"):
        write_tensor(Tensor.from_array(np.full((3, 3), 0.5)), tensors / f"{name}.tnsr")

    header = "sample_id," + ",".join(f"f{k}" for k in range(128))
    visible = "vis," + ",".join(["0.0"] * 128)
    infrared = "ir,0.3," + ",".join(["0.0"] * 127)
    embeddings = tmp_path / "embeddings.csv"
    embeddings.write_text("\n".join([header, visible, infrared]) + "\n", encoding="utf-8")
    return tensors, embeddings


def test_losses_command(runner, tmp_path):
    tensors, embeddings = _write_loss_inputs(tmp_path)
    out = tmp_path / "out"
    result = runner.invoke(
        main, ["losses", "--tensors", str(tensors), "--embeddings", str(embeddings), "--out", str(out)]
    )
    assert result.exit_code == 0, result.output
    report = _read_json(out / "losses.json")
    assert set(report) == {"l_gan", "l_cyc", "l_syn", "l_idr", "total"}
    assert report["total"] == pytest.approx(5.227411, abs=1e-6)


def test_losses_mismatched_bundle_is_shape_error(runner, tmp_path):
    tensors, embeddings = _write_loss_inputs(tmp_path, fgv_size=3)
    out = tmp_path / "out"
    result = runner.invoke(
        main, ["losses", "--tensors", str(tensors), "--embeddings", str(embeddings), "--out", str(out)]
    )
    assert result.exit_code == 1
    record = _error_record(result)
    assert record["error"] == "ShapeError"
    assert "fgv=(1, 3, 3)" in record["message"]
    assert not (out / "losses.json").exists()


def test_losses_missing_tensor(runner, tmp_path):
    tensors = tmp_path / "tensors"
    tensors.mkdir()
    embeddings = tmp_path / "embeddings.csv"
    embeddings.write_text("sample_id,f0\na,1\n", encoding="utf-8")
    result = runner.invoke(
        main, ["losses", "--tensors", str(tensors), "--embeddings", str(embeddings), "--out", str(tmp_path / "out")]
    )
    assert result.exit_code == 1
    assert _error_record(result)["error"] == "FileNotFoundError"


def test_netspec_command(runner, tmp_path):
    out = tmp_path / "out"
    result = runner.invoke(main, ["netspec", "--network", "discriminator", "--out", str(out)])
    assert result.exit_code == 0, result.output
    assert "parameters: 2764481" in result.stdout
    assert "receptive_field: 70" in result.stdout
    report = _read_json(out / "netspec.json")
    assert report["params"] == 2764481
    assert report["layers"][-1]["output_shape"] == [1, 30, 30]
    assert (out / "netspec.txt").read_text(encoding="utf-8") == result.stdout


def test_netspec_generator_has_no_receptive_field(runner, tmp_path):
    out = tmp_path / "out"
    result = runner.invoke(main, ["netspec", "--network", "generator", "--out", str(out)])
    assert result.exit_code == 0, result.output
    assert _read_json(out / "netspec.json")["receptive_field"] is None
    assert "parameters: 11376131" in result.stdout


def test_reference_command(runner, tmp_path):
    out = tmp_path / "out"
    result = runner.invoke(main, ["reference", "--setting", "casia", "--out", str(out)])
    assert result.exit_code == 0, result.output
    assert result.stdout == "casia: w1=0.497382 w2=0.502618\n"
    assert set(_read_json(out / "reference.json")) == {"casia"}


def test_reference_unknown_setting(runner, tmp_path):
    result = runner.invoke(main, ["reference", "--setting", "lfw", "--out", str(tmp_path / "out")])
    assert result.exit_code == 1
    assert _error_record(result)["error"] == "ArgumentError"


def _rerun_arguments(command, tmp_path, fusion_pair):
    if command in ("eval", "fuse"):
        vis, ir = fusion_pair
        vis_path = write_scores(vis, tmp_path / "vis.csv")
        ir_path = write_scores(ir, tmp_path / "ir.csv")
        if command == "eval":
            return ["eval", "--scores", str(ir_path), "--normalize", "zscore"]
        return ["fuse", "--scores-vis", str(vis_path), "--scores-ir", str(ir_path)]
    if command == "fid":
        rng = np.random.default_rng(5)
        paths = []
        for name, loc in (("x", 0.0), ("y", 0.7)):
            rows = rng.normal(loc=loc, size=(40, 3))
            lines = ["sample_id,f0,f1,f2"] + [f"{name}{k}," + ",".join(repr(v) for v in row) for k, row in enumerate(rows)]
            path = tmp_path / f"{name}.csv"
            path.write_text("\n".join(lines) + "\n", encoding="utf-8")
            paths.append(path)
        return ["fid", "--features-x", str(paths[0]), "--features-y", str(paths[1])]
    if command == "losses":
        tensors, embeddings = _write_loss_inputs(tmp_path)
        return ["losses", "--tensors", str(tensors), "--embeddings", str(embeddings)]
    return ["netspec", "--network", "discriminator"]


@pytest.mark.parametrize("command", ["eval", "fuse", "fid", "losses", "netspec"])
def test_reruns_are_byte_identical(runner, tmp_path, fusion_pair, command):
    arguments = _rerun_arguments(command, tmp_path, fusion_pair)
    first, second = tmp_path / "first", tmp_path / "second"
    results = [runner.invoke(main, arguments + ["--out", str(out)]) for out in (first, second)]
    for result in results:
        assert result.exit_code == 0, result.output
    assert results[0].stdout == results[1].stdout

    names = sorted(path.name for path in first.iterdir())
    assert names
    assert names == sorted(path.name for path in second.iterdir())
    for name in names:
        assert (first / name).read_bytes() == (second / name).read_bytes(), name
