"""
Tests for the command line and the certificate report
"""
import json

import pytest
from pydantic import ValidationError

from app.errors import EvaluationError
from app.main import EXIT_FAILED, EXIT_OK, EXIT_USAGE, main
from app.orchestrator.commands import cmd_eval
from app.orchestrator import CertificateReport, RunConfig, parse_grid, parse_order, strip_volatile


@pytest.fixture(autouse=True)
def _no_disk_cache(mock_settings):
    return mock_settings


def run_cli(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


class TestRunConfig:
    def test_defaults(self):
        config = RunConfig()
        assert config.order == 60
        assert config.digits == 30
        assert config.format == "json"

    def test_invariants(self):
        with pytest.raises(ValidationError):
            RunConfig(order=5)
        with pytest.raises(ValidationError):
            RunConfig(digits=3)
        with pytest.raises(ValidationError):
            RunConfig(jobs=0)
        with pytest.raises(ValidationError):
            RunConfig(format="xml")

    def test_fault_parsing(self):
        assert RunConfig(inject_fault="E4:6").inject_fault == ("E4", 6)
        with pytest.raises(ValidationError):
            RunConfig(inject_fault="E4")

    def test_parse_order(self):
        assert parse_order("q60") == 60
        assert parse_order("50") == 50

    def test_parse_grid(self):
        points = parse_grid("0:1:5")
        assert len(points) == 5
        assert points[-1] == 1
        with pytest.raises(ValueError):
            parse_grid("0:1")


class TestReport:
    def make_report(self, **overrides):
        fields = dict(
            truncation_order=50,
            catalog_hash="abc",
            form_hashes={},
            identities={"passed": True},
            bounds={"empirical": {"phi": {"ok": True}}},
            flagship_tail={"ok": True},
            lemmas=[{"lemma_id": "A1", "status": "ok"}],
            fhat_gap={"lemma_id": "fhat_gap", "status": "ok"},
            special_values={},
            density={},
        )
        fields.update(overrides)
        return CertificateReport(**fields)

    def test_status_ok(self):
        assert self.make_report().compute_status() == "ok"

    def test_any_failure_fails(self):
        assert self.make_report(identities={"passed": False}).compute_status() == "failed"
        assert self.make_report(lemmas=[{"status": "roots_found"}]).compute_status() == "failed"
        assert self.make_report(errors=[{"task": "A1", "error": "boom"}]).compute_status() == "failed"
        assert self.make_report(lemmas=[]).compute_status() == "failed"

    def test_json_uses_schema_alias(self):
        payload = json.loads(self.make_report().to_json())
        assert payload["schema"] == 1
        assert "timestamp" in payload

    def test_strip_volatile(self):
        payload = {"timestamp": "x", "lemmas": [{"wall_time": 1.0, "status": "ok"}]}
        assert strip_volatile(payload) == {"lemmas": [{"status": "ok"}]}


class TestExpand:
    def test_phi_text(self, capsys):
        code, out = run_cli(capsys, "expand", "phi", "--order", "3", "--format", "text")
        assert code == EXIT_OK
        assert "−3657830400·q − 314573414400·q² − 13716864000000·q³" in out

    def test_delta_text(self, capsys):
        code, out = run_cli(capsys, "expand", "delta", "--order", "3", "--format", "text")
        assert code == EXIT_OK
        assert "q − 24·q² + 252·q³" in out

    def test_phi1_carries_its_factor(self, capsys):
        code, out = run_cli(capsys, "expand", "Phi1", "--order", "1", "--format", "text")
        assert code == EXIT_OK
        assert out.startswith("Phi1 = (i/π)·(725760·q⁻¹ + 113218560")

    def test_json(self, capsys):
        code, out = run_cli(capsys, "expand", "psiS", "--order", "2", "--format", "json")
        assert code == EXIT_OK
        payload = json.loads(out)[0]
        assert payload["form"] == "psiS"
        assert payload["coefficients"][0] == [1, "-7340032/1"]

    def test_csv_to_file(self, capsys, tmp_path):
        target = tmp_path / "delta.csv"
        code, out = run_cli(capsys, "expand", "Delta", "--order", "3", "--format", "csv", "--out", str(target))
        assert code == EXIT_OK
        assert out == ""
        lines = target.read_text().splitlines()
        assert lines[0] == "twice_exp,coefficient,factor"
        assert lines[1] == "2,1/1,1"

    def test_unknown_form(self, capsys):
        code, _ = run_cli(capsys, "expand", "nosuchform", "--order", "3")
        assert code == EXIT_USAGE


class TestUsageErrors:
    def test_negative_radius(self, capsys):
        code, _ = run_cli(capsys, "eval", "f", "--r", "-1")
        assert code == EXIT_USAGE

    def test_bad_jobs(self, capsys):
        code, _ = run_cli(capsys, "values", "--jobs", "0")
        assert code == EXIT_USAGE

    def test_small_order(self, capsys):
        code, _ = run_cli(capsys, "certify", "--order", "q5")
        assert code == EXIT_USAGE

    def test_bad_fault(self, capsys):
        code, _ = run_cli(capsys, "certify", "--order", "50", "--inject-fault", "E4")
        assert code == EXIT_USAGE

    def test_missing_command(self, capsys):
        code, _ = run_cli(capsys)
        assert code == EXIT_USAGE


class TestEvaluationFailures:
    def test_digits_beyond_truncation_exit_failed(self, capsys):
        code, _ = run_cli(capsys, "eval", "a", "--r", "1", "--order", "10", "--digits", "200")
        assert code == EXIT_FAILED

    def test_grid_beyond_truncation_exit_failed(self, capsys):
        code, _ = run_cli(capsys, "eval", "f", "--grid", "0.5:1.5:2", "--order", "10", "--digits", "200")
        assert code == EXIT_FAILED

    def test_worker_error_is_kept(self):
        with pytest.raises(EvaluationError, match="PrecisionError") as excinfo:
            cmd_eval("b", ["1"], config=RunConfig(order=10, digits=200))
        assert excinfo.value.item_id == "b@0"


@pytest.mark.slow
class TestNumericCommands:
    def test_eval_f_at_zero(self, capsys):
        code, out = run_cli(capsys, "eval", "f", "--r", "0", "--format", "json")
        assert code == EXIT_OK
        row = json.loads(out)[0]
        assert set(row) == {"r", "f", "f_radius", "rigor"}
        assert abs(float(row["f"]) - 1) < 1e-20

    def test_eval_b_near_root(self, capsys):
        code, out = run_cli(capsys, "eval", "b", "--r", "1.4142135623730950488016887242097", "--format", "json")
        assert code == EXIT_OK
        assert abs(float(json.loads(out)[0]["value"])) < 1e-20

    def test_grid_csv(self, capsys):
        code, out = run_cli(capsys, "eval", "fhat", "--grid", "0.5:1.5:3", "--format", "csv", "--digits", "20")
        assert code == EXIT_OK
        lines = out.splitlines()
        assert lines[0] == "r,f,f_radius,fhat,fhat_radius,rigor"
        assert len(lines) == 4

    def test_values_table(self, capsys):
        code, out = run_cli(capsys, "values", "--format", "json", "--digits", "20")
        assert code == EXIT_OK
        rows = {row["name"]: row for row in json.loads(out)}
        assert rows["a(0)"]["exact"] == "113218560·i/π"
        assert rows["f'(√2)"]["exact"] == "−146·√2/4095"
        assert rows["density"]["exact"] == "π¹²/12! = 0.0019295743…"
        assert {row["provenance"] for row in rows.values()} == {"exact-symbolic", "numeric"}


@pytest.mark.slow
class TestCertifyCommand:
    def test_certificate_passes(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, _ = run_cli(capsys, "certify", "--order", "q50", "--out", str(target))
        assert code == EXIT_OK
        payload = json.loads(target.read_text())
        assert payload["status"] == "ok"
        assert payload["schema"] == 1
        assert payload["truncation_order"] == 50
        assert [lemma["lemma_id"] for lemma in payload["lemmas"]] == ["A1", "A2", "A3"]
        assert payload["fhat_gap"]["status"] == "ok"
        assert payload["flagship_tail"]["ok"]

    def test_report_is_deterministic(self, capsys, tmp_path):
        first, second = tmp_path / "a.json", tmp_path / "b.json"
        run_cli(capsys, "certify", "--order", "50", "--out", str(first))
        run_cli(capsys, "certify", "--order", "50", "--out", str(second), "--jobs", "2")
        a = strip_volatile(json.loads(first.read_text()))
        b = strip_volatile(json.loads(second.read_text()))
        assert a == b

    def test_injected_fault_fails(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, _ = run_cli(capsys, "certify", "--order", "50", "--inject-fault", "E4:6", "--out", str(target))
        assert code == EXIT_FAILED
        payload = json.loads(target.read_text())
        assert payload["status"] == "failed"
        assert payload["fault_injected"] == {"form": "E4", "twice_exp": 6}
        assert not payload["identities"]["passed"]
