import json
import random

import pytest

import main as cli
from acceptance import CRITERIA, SuiteScale, check_newton, check_toric
from errors import InvariantViolation, PreconditionError
from main import RunConfig, build_parser, main, run
from orchestrator import (
    EXIT_INVARIANT,
    EXIT_OK,
    EXIT_PRECONDITION,
    OctodpOrchestrator,
    error_kind,
    exit_status,
)
from stages.lines_stage import LinesStage
from stages.octanomial_stage import OctanomialStage
from utils.exporters import dumps_json, newick_lines, schlafli_dot, write_text
from utils.pdf_generator import generate_classification_pdf


# ── configuration ──────────────────────────────────────────────────

def test_run_config_validation(d0):
    with pytest.raises(PreconditionError, match="Unknown command"):
        RunConfig("bogus")
    with pytest.raises(PreconditionError, match="needs moduli"):
        RunConfig("classify")
    with pytest.raises(PreconditionError):
        RunConfig("triangulations", prime=4)
    with pytest.raises(PreconditionError, match="writes json or dot"):
        RunConfig("lines", moduli=d0, format="pdf")
    assert RunConfig("trees", moduli=d0, format="newick").format == "newick"


def test_from_args_parses_moduli():
    args = build_parser().parse_args(["classify", "-d", "0,1,2,3,4,5", "-p", "7"])
    config = RunConfig.from_args(args)
    assert str(config.moduli) == "0,1,2,3,4,5"
    assert config.prime == 7


def test_inadmissible_moduli_exit_with_status_one(capsys):
    assert main(["lines", "-d", "1,1,2,3,4,5"]) == EXIT_PRECONDITION
    assert "d1-d2" in capsys.readouterr().err


def test_composite_prime_exits_with_status_one(capsys):
    assert main(["classify", "-d", "0,1,2,3,4,5", "-p", "9"]) == EXIT_PRECONDITION
    assert "prime" in capsys.readouterr().err


# ── commands ───────────────────────────────────────────────────────

def test_lines_command_writes_dot(d0):
    status, text = run(RunConfig("lines", moduli=d0, format="dot"))
    assert status == EXIT_OK
    assert text.startswith("graph schlafli {")
    assert text.count(" -- ") == 135


def test_lines_command_to_file(tmp_path):
    out = tmp_path / "census.json"
    assert main(["lines", "-d", "0,1,2,3,4,5", "-o", str(out)]) == EXIT_OK
    data = json.loads(out.read_text(encoding="utf-8"))
    assert len(data["incidences"]) == 135


def test_run_maps_invariant_violations(d0, monkeypatch):
    def broken(config):
        raise InvariantViolation("census check failed")

    monkeypatch.setitem(cli.HANDLERS, "lines", broken)
    status, text = run(RunConfig("lines", moduli=d0))
    assert status == EXIT_INVARIANT
    assert text == "internal error: census check failed\n"


@pytest.mark.slow
def test_triangulations_command():
    status, text = run(RunConfig("triangulations"))
    data = json.loads(text)
    assert status == EXIT_OK
    assert data["regular_triangulations"] == 70
    assert data["orbits"] == 14
    assert data["unimodular_triangulations"] == 53
    assert data["unimodular_orbits"] == 10


# ── exit status ────────────────────────────────────────────────────

def test_exit_status():
    assert exit_status({"status": "completed", "error_kinds": []}) == EXIT_OK
    assert exit_status({"status": "failed", "error_kinds": []}) == EXIT_INVARIANT
    assert exit_status({"error_kinds": ["precondition", "precondition"]}) == EXIT_PRECONDITION
    assert exit_status({"error_kinds": ["precondition", "invariant"]}) == EXIT_INVARIANT
    assert error_kind(PreconditionError("x")) == "precondition"
    assert error_kind(InvariantViolation("x")) == "invariant"
    assert error_kind(KeyError("x")) == "unexpected"


# ── orchestration ──────────────────────────────────────────────────

def test_criteria_names():
    assert len(CRITERIA) == 12
    assert [name for name, _ in CRITERIA][:2] == ["parametrization", "discriminant_oracle"]


def test_cheap_criteria_pass():
    scale = SuiteScale.reduced()
    assert check_toric(scale, random.Random(0), 1)["passed"]
    assert check_newton(scale, random.Random(0), 1)["passed"]


def test_verify_suite_selection_and_timing():
    results = OctodpOrchestrator(5).verify_suite(
        SuiteScale.reduced(), only=["toric_ideal", "newton_criterion"], threads=1, seed=3
    )
    assert results["status"] == "passed"
    assert results["passed"] == results["total"] == 2
    assert all("duration_s" in c for c in results["criteria"].values())
    assert exit_status(results) == EXIT_OK


def test_verify_suite_reports_failures():
    def fails(scale, rng, workers):
        return {"passed": False}

    def bad_input(scale, rng, workers):
        raise PreconditionError("no samples")

    orchestrator = OctodpOrchestrator(5)
    failed = orchestrator.verify_suite(
        SuiteScale.reduced(), only=["toric_ideal"], threads=1, overrides={"toric_ideal": fails}
    )
    assert exit_status(failed) == EXIT_INVARIANT
    rejected = orchestrator.verify_suite(
        SuiteScale.reduced(), only=["toric_ideal"], threads=1, overrides={"toric_ideal": bad_input}
    )
    assert rejected["criteria"]["toric_ideal"]["error"] == "no samples"
    assert exit_status(rejected) == EXIT_PRECONDITION


def test_verify_streams_are_seeded_per_criterion():
    seen = []

    def record(scale, rng, workers):
        seen.append(rng.random())
        return {"passed": True}

    orchestrator = OctodpOrchestrator(5)
    for _ in range(2):
        orchestrator.verify_suite(
            SuiteScale.reduced(),
            only=["newton_criterion"],
            seed=8,
            overrides={"newton_criterion": record},
        )
    assert seen[0] == seen[1]


@pytest.mark.slow
def test_pipeline_on_naruki_general_moduli(aaaa_example):
    results = OctodpOrchestrator(aaaa_example.prime).run_pipeline(aaaa_example.moduli)
    assert results["status"] == "completed"
    assert exit_status(results) == EXIT_OK
    assert results["summary"]["type"] == "(aaaa)"
    assert results["summary"]["blowdown"] is True
    assert results["steps"]["octanomial"]["parametrization"] is True
    assert results["steps"]["lines"]["triplet_formulas"] is True
    assert "_census" not in json.loads(dumps_json(results))


@pytest.mark.slow
def test_pipeline_reports_eckardt_coincidence_on_reference_moduli(d0):
    # d1 + d6 = d2 + d5 = d3 + d4 puts an Eckardt point on F16, F25 and F34
    results = OctodpOrchestrator(5).run_pipeline(d0)
    assert results["status"] == "completed_with_errors"
    assert results["error_kinds"] == ["precondition"]
    assert "F16: points with F25 and F34 coincide" in results["steps"]["tropical"]["error"]
    assert results["steps"]["lines"]["triplet_formulas"] is True
    assert results["summary"]["blowdown"] is True
    assert exit_status(results) == EXIT_PRECONDITION


def test_classify_rejects_coincident_points_on_reference_moduli(d0):
    status, text = run(RunConfig("classify", moduli=d0, prime=5))
    assert status == EXIT_PRECONDITION
    assert "F16: points with F25 and F34 coincide" in text


# ── stages ─────────────────────────────────────────────────────────

def test_stage_requires_moduli():
    with pytest.raises(PreconditionError, match="moduli are required"):
        LinesStage(5).run({})


def test_octanomial_stage_accepts_text():
    result = OctanomialStage(5).run({"moduli": "0,1,2,3,4,5"})
    assert result["coefficient_sum_zero"]
    assert result["parametrization"]
    assert all(result["equivariance"].values())
    assert result["delta_invariant"]
    assert result["coefficients"]["a"] == "-936"


# ── exporters ──────────────────────────────────────────────────────

def test_dumps_json_drops_private_keys():
    text = dumps_json({"a": 1, "_b": object(), "c": [{"_d": 2, "e": 3}]})
    assert json.loads(text) == {"a": 1, "c": [{"e": 3}]}
    assert text.endswith("\n")


def test_write_text(tmp_path, capsys):
    write_text("hello\n", tmp_path / "sub" / "out.txt")
    assert (tmp_path / "sub" / "out.txt").read_text(encoding="utf-8") == "hello\n"
    write_text("stdout\n", "-")
    assert capsys.readouterr().out == "stdout\n"


def test_schlafli_dot(census):
    dot = schlafli_dot(census)
    assert dot.count('  "E1" -- ') == 10
    assert dot.rstrip().endswith("}")


def test_newick_and_pdf_exports(aaaa_report, tmp_path):
    text = newick_lines(aaaa_report.trees)
    assert len(text.splitlines()) == 27
    assert text.startswith("E1\t(")
    path = generate_classification_pdf(aaaa_report, tmp_path / "report.pdf")
    assert path.read_bytes().startswith(b"%PDF")
