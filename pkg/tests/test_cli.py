import json
import sys

import pytest
from openpyxl import load_workbook

from phenostruct import cli
from phenostruct.catalog import all_entries
from phenostruct.cli import ConfigError, RunConfig, VerificationReport


def _strip_times(records):
    return [{k: v for k, v in r.items() if k != "wall_time"} for r in records]


@pytest.mark.parametrize(
    "kwargs",
    [
        {"samples": 0},
        {"tol_identity": 0.0},
        {"tol_rank": -1.0},
        {"jobs": -1},
        {"format": "yaml"},
        {"law": "hooke"},
        {"suite": ("one/2d/nowhere",)},
    ],
)
def test_invalid_settings(kwargs):
    with pytest.raises(ConfigError):
        RunConfig(**kwargs)


def test_module_and_entry_suites_are_accepted():
    cfg = RunConfig(suite=("heap", "one/2d/euclid"))
    assert cfg.as_dict()["suite"] == ["heap", "one/2d/euclid"]


def test_entry_plan():
    cfg = RunConfig(suite=("one/2d/euclid",))
    assert cli.plan(cfg) == [
        ("identity", "one/2d/euclid"),
        ("rank", "one/2d/euclid"),
        ("invariance", "one/2d/euclid"),
    ]


def test_plan_drops_duplicates():
    cfg = RunConfig(suite=("one/1d/line", "one/1d/line"))
    assert len(cli.plan(cfg)) == len(set(cli.plan(cfg)))


def test_negative_entries_plan_no_relation():
    assert ("no_relation", "two/x/cubic") in cli.entry_tasks("two/x/cubic")
    assert ("rank", "two/x/cubic") not in cli.entry_tasks("two/x/cubic")


def test_laws_module_plan():
    tasks = cli.module_tasks("laws")
    assert len(tasks) == 3 * 6
    with pytest.raises(ConfigError):
        cli.module_tasks("optics")


def test_run_entry_suite():
    cfg = RunConfig(suite=("one/2d/euclid",), samples=20, jobs=1)
    report = cli.run_suite(cfg)
    assert [r["check"] for r in report.checks] == ["identity", "rank", "invariance"]
    assert report.ok, report.checks
    assert all(r["seed"] == 42 for r in report.checks)


def test_tight_tolerance_fails_identity():
    cfg = RunConfig(suite=("one/2d/euclid",), samples=20, jobs=1, tol_identity=1e-300)
    record = cli.run_check(("identity", "one/2d/euclid"), cfg)
    assert not record["passed"]
    assert record["residual"] is not None


def test_error_becomes_failed_record():
    cfg = RunConfig(samples=5, jobs=1)
    record = cli.run_check(("law_relation", "thicklens"), cfg)
    assert record["passed"]
    failing = cli.run_check(("identity", "one/2d/helmholtz"), cfg)
    assert not failing["passed"]
    assert failing["detail"].startswith("IdentityMissing")


def test_runs_are_reproducible():
    cfg = RunConfig(suite=("one/1d/line",), samples=10, jobs=1)
    first = cli.run_suite(cfg)
    second = cli.run_suite(cfg)
    assert _strip_times(first.checks) == _strip_times(second.checks)


def test_report_json(tmp_path):
    report = VerificationReport(42, RunConfig().as_dict())
    out = tmp_path / "report.json"
    cli.emit_report(report, "json", str(out))
    data = json.loads(out.read_text())
    assert data["checks"] == []
    assert data["summary"] == {"pass": 0, "fail": 0}
    assert data["seed"] == 42
    assert data["version"] == "phenostruct-report/1"


def test_report_needs_a_path():
    with pytest.raises(ConfigError):
        cli.emit_report(VerificationReport(42, {}), "json", None)


def test_report_workbook(tmp_path):
    record = cli._record("rank", "one/1d/line", "line", True, None, "1/1", 3)
    report = VerificationReport(42, {}, [dict(record, seed=42, wall_time=0.1)])
    out = tmp_path / "report.xlsx"
    cli.emit_report(report, "xlsx", str(out))
    wb = load_workbook(out)
    assert wb.sheetnames == ["checks", "summary"]
    assert wb["checks"]["A2"].value == "rank"


def test_text_report_to_stdout(capsys):
    cli.emit_report(VerificationReport(42, {}), "text", None)
    assert "summary: {'pass': 0, 'fail': 0}" in capsys.readouterr().out


def test_laws_subcommand(tmp_path):
    out = tmp_path / "newton.csv"
    cfg = RunConfig(command="laws", law="newton", sizes=(4, 3), out=str(out))
    assert cli._laws(cfg) == 0
    assert out.read_text(encoding="utf-8").startswith("# law=newton seed=42")


def test_laws_subcommand_rejects_small_table():
    cfg = RunConfig(command="laws", law="thicklens", sizes=(2, 2))
    with pytest.raises(ConfigError):
        cli._laws(cfg)


def test_main_exits_on_bad_settings(monkeypatch, capsys):
    monkeypatch.setattr(sys, "argv", ["phenostruct", "verify", "--samples", "0"])
    with pytest.raises(SystemExit) as exc:
        cli.main()
    assert exc.value.code == 2
    assert "❌" in capsys.readouterr().out


def test_main_list(monkeypatch, tmp_path):
    out = tmp_path / "catalog.csv"
    monkeypatch.setattr(sys, "argv", ["phenostruct", "list", "-o", str(out)])
    with pytest.raises(SystemExit) as exc:
        cli.main()
    assert exc.value.code == 0
    assert out.exists()


@pytest.mark.slow
@pytest.mark.parametrize("entry_id", [e.id for e in all_entries()])
def test_catalog_entry_passes(entry_id):
    report = cli.run_suite(RunConfig(suite=(entry_id,), samples=50, jobs=1))
    assert report.ok, [r for r in report.checks if not r["passed"]]
