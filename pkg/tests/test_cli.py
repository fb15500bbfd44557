import json

import pytest
from typer.testing import CliRunner

import cli.main as main_module
import cli.verify as verify_module
from cli.main import app
from cli.models import Command, JobConfig, parse_factor
from quatforms.errors import ConfigValidationError, SingularToPrecision
from quatforms.hecke import AutForm
from quatforms.spectral import EigenApprox, IterationResult

runner = CliRunner()


def _run(args, tmp_path, name="report.json"):
    out = tmp_path / name
    result = runner.invoke(app, args + ["--out", str(out)])
    report = json.loads(out.read_text(encoding="utf-8")) if out.exists() else None
    return result, report


def test_classset_report(tmp_path):
    result, report = _run(["classset", "--p", "7", "--precision", "5"], tmp_path)
    assert result.exit_code == 0, result.output
    assert report["size"] == 2
    assert report["kernel_class_count"] == 2
    assert report["level"]["precision"] == 5
    assert [len(rep["lift"]) for rep in report["reps"]] == [4, 4]
    assert all(rep["y"] == 0 for rep in report["reps"])


def test_classset_table_output():
    result = runner.invoke(app, ["classset", "--p", "5", "--e", "1", "--precision", "4", "--format", "table"])
    assert result.exit_code == 0, result.output
    assert "Class set" in result.output


def test_classset_projective_count(tmp_path):
    result, report = _run(["classset", "--p", "5", "--e", "3", "--gamma-style", "projective", "--precision", "4"], tmp_path)
    assert result.exit_code == 0, result.output
    assert report["size"] == 12


@pytest.mark.parametrize(
    "args",
    [
        ["classset", "--p", "9"],
        ["classset", "--p", "7", "--e", "6"],
        ["classset", "--p", "7", "--precision", "1"],
        ["hecke", "--op", "T7", "--p", "7"],
        ["hecke", "--op", "T3", "--p", "7", "--weight", "1"],
        ["hecke", "--op", "T3", "--p", "7", "--gamma-style", "projective", "--weight", "4"],
        ["hecke", "--op", "T3", "--p", "7", "--expect-factor", "2*x+1"],
        ["slopes", "--p", "7", "--character", "6"],
        ["eigenform", "--p", "5", "--n", "2", "--character", "1"],
    ],
)
def test_invalid_input_exits_with_one(args):
    result = runner.invoke(app, args)
    assert result.exit_code == 1


def test_hecke_lift_with_expected_factor(tmp_path):
    args = [
        "hecke", "--op", "T3", "--p", "7", "--weight", "5", "--precision", "10",
        "--expect-factor", "x^4+288*x^2+20448", "--expect-factor", "x-5",
    ]
    result, report = _run(args, tmp_path)
    assert result.exit_code == 0, result.output
    assert report["dim"] == 8
    assert report["charpoly_int"][-1] == "1"
    assert report["factor_checks"] == {"x^4+288*x^2+20448": True, "x-5": False}
    assert report["lift_precision"] >= 10


def test_hecke_matrix_and_charpoly(tmp_path):
    args = ["hecke", "--op", "U5", "--p", "5", "--weight", "2", "--precision", "6", "--matrix", "--charpoly", "--slopes"]
    result, report = _run(args, tmp_path)
    assert result.exit_code == 0, result.output
    assert report["matrix"] == [["5"]]
    assert report["charpoly"] == [str(5**6 - 5), "1"]
    assert report["slopes"] == [{"value": "1", "multiplicity": 1, "reliable": True}]
    assert report["charpoly_int"] is None


def test_slopes_command(tmp_path):
    args = ["slopes", "--p", "5", "--weight", "2", "--precision", "10", "--truncation", "4", "--count", "2"]
    result, report = _run(args, tmp_path)
    assert result.exit_code == 0, result.output
    assert len(report["lowest"]) == 2
    assert sum(s["multiplicity"] for s in report["slopes"]) == 4
    assert report["level"]["truncation"] == 4


def test_eigenform_slope_one(tmp_path):
    args = [
        "eigenform", "--p", "5", "--weight", "2", "--model", "classical", "--precision", "10",
        "--slope", "1", "--iters", "3", "--seed", "1", "--op", "U5", "--op", "T3",
        "--classicality", "--dmax", "1",
    ]
    result, report = _run(args, tmp_path)
    assert result.exit_code == 0, result.output
    (form,) = report["forms"]
    assert form["eigenvalues"] == {"U5": "5", "T3": "4"}
    assert report["slope"] == 1 and report["iterations"] == 3
    (evidence,) = report["classicality"]
    assert evidence["operator"] == "T3"
    assert [-4, 1] in evidence["matches"]


def test_eigenform_rank_deficiency_exits_with_two(tmp_path):
    args = ["eigenform", "--p", "5", "--weight", "2", "--model", "classical", "--precision", "6", "--iters", "6"]
    result, report = _run(args, tmp_path)
    assert result.exit_code == 2
    assert report is None


def test_eigenform_reports_an_unsplit_span(tmp_path, monkeypatch):
    def two_basis_forms(space, dim, **kwargs):
        forms = [AutForm.basis(space, i) for i in range(dim)]
        return IterationResult(forms=forms, seeds=[1, 2], precision_loss=0, pivots=[0, 0])

    def keep_unsplit(forms, w, known_loss=0):
        return [EigenApprox(form=f, precision_loss=known_loss, split=False) for f in forms]

    monkeypatch.setattr(main_module, "power_iterate", two_basis_forms)
    monkeypatch.setattr(main_module, "split_by_W", keep_unsplit)
    args = [
        "eigenform", "--p", "7", "--weight", "2", "--model", "classical", "--precision", "6",
        "--dim", "2", "--op", "T3", "--format", "table",
    ]
    result, report = _run(args, tmp_path)
    assert result.exit_code == 0, result.output
    assert report["split"] is False
    assert report["shared"] is None
    assert [form["eigenvalues"] for form in report["forms"]] == [{}, {}]
    assert "eigenforms" in result.output


def test_slopes_command_with_character(tmp_path):
    args = [
        "slopes", "--p", "5", "--weight", "2", "--precision", "10", "--truncation", "4",
        "--count", "1", "--character", "0", "--no-stability",
    ]
    result, report = _run(args, tmp_path)
    assert result.exit_code == 0, result.output
    assert report["level"]["character"] == 0
    assert sum(s["multiplicity"] for s in report["slopes"]) == 4


def test_config_file_supplies_defaults(tmp_path):
    config = tmp_path / "quatforms.conf"
    config.write_text("# defaults\nprecision = 6\ngamma-style = unit-column\n", encoding="utf-8")
    result, report = _run(["classset", "--p", "7", "--config", str(config)], tmp_path)
    assert result.exit_code == 0, result.output
    assert report["level"]["precision"] == 6


def test_verify_reports_failures(tmp_path, monkeypatch):
    monkeypatch.setitem(verify_module.CRITERIA, "1", ("always fails", lambda cache: (False, "forced")))
    result, report = _run(["verify", "--only", "1"], tmp_path)
    assert result.exit_code == 3
    assert report["all_passed"] is False
    assert report["results"][0]["detail"] == "forced"


def test_verify_counts_raised_errors_as_failures(tmp_path, monkeypatch):
    def broken(cache):
        raise SingularToPrecision("no pivot")

    monkeypatch.setitem(verify_module.CRITERIA, "1", ("raises", broken))
    monkeypatch.setitem(verify_module.CRITERIA, "2", ("passes", lambda cache: (True, "ok")))
    result, report = _run(["verify", "--only", "1", "--only", "2"], tmp_path)
    assert result.exit_code == 3
    assert [r["passed"] for r in report["results"]] == [False, True]
    assert "SingularToPrecision" in report["results"][0]["detail"]


def test_verify_skips_negative_control(tmp_path, monkeypatch):
    monkeypatch.setitem(verify_module.CRITERIA, "2n", ("control", lambda cache: (False, "not run")))
    report = verify_module.run_verify(["2n"], negative_control=False)
    assert report.results == [] and report.all_passed


def test_verify_rejects_unknown_ids():
    result = runner.invoke(app, ["verify", "--only", "99"])
    assert result.exit_code == 1


def test_verify_classset_criterion(tmp_path):
    result, report = _run(["verify", "--only", "1", "--cache-dir", str(tmp_path / "cache")], tmp_path)
    assert result.exit_code == 0, result.output
    assert report["all_passed"] is True


def test_verify_negative_control_criterion(tmp_path):
    result, report = _run(["verify", "--only", "2n", "--cache-dir", str(tmp_path / "cache")], tmp_path)
    assert result.exit_code == 0, result.output
    (control,) = report["results"]
    assert control["passed"] is True
    assert "changes the charpoly" in control["detail"]


@pytest.mark.slow
def test_verify_full_suite(tmp_path):
    result, report = _run(["verify", "--cache-dir", str(tmp_path / "cache")], tmp_path)
    assert result.exit_code == 0, result.output
    assert [r["id"] for r in report["results"]] == list(verify_module.CRITERIA)


def test_job_config_merges_defaults_and_flags():
    job = JobConfig.from_sources(Command.HECKE, {"precision": 12, "weight": 4, "unused": 1}, {"p": 7, "weight": None, "ops": ["t3"]})
    assert (job.precision, job.weight, job.ops) == (12, 4, ["T3"])


@pytest.mark.parametrize(
    "flags",
    [
        {"p": 7, "model": "overconvergent", "lift": True},
        {"p": 7, "gamma_style": "projective", "weight": 3},
        {"p": 7, "ops": ["U5"]},
        {"p": 7, "dim": 0},
    ],
)
def test_job_config_rejects(flags):
    with pytest.raises(ConfigValidationError):
        JobConfig.from_sources(Command.HECKE, {}, flags)


def test_parse_factor():
    assert parse_factor("x^2-14*x+121").all_coeffs() == [1, -14, 121]
    with pytest.raises(ValueError):
        parse_factor("2*x + 1")
    with pytest.raises(ValueError):
        parse_factor("x/2 + 1")
