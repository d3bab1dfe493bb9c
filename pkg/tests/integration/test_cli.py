"""
Integration tests for the command-line entrypoint.
"""

import textwrap
from pathlib import Path

import pytest

from app.cli import main


CSV_HEADER = "alpha,m,lhs,rhs,slack,quadrature_error,verdict\n"


@pytest.fixture
def write_job(tmp_path):
    def _write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(textwrap.dedent(text), encoding="utf-8")
        return str(path)
    return _write


INTEGRATE_JOB = """
    command = integrate
    kernel = rl
    f = 1
    a = 0
    b = 2
    t = 1
    alpha = 0.5
    tolerance = 1e-11
"""

CHECK_JOB = """
    command = check
    inequality_id = mercer_discrete
    phi = square
    points = 0, 1
    weights = 0.5, 0.5
"""

SWEEP_JOB = """
    [job]
    command = sweep
    inequality_id = mercer_m_discrete
    phi = square
    points = 0, 1, 2

    [grid]
    m = {0.25, 1, 4}
"""


def test_integrate_prints_value(write_job, capsys):
    exit_code = main(["integrate", "--job", write_job("integrate.ini", INTEGRATE_JOB)])
    captured = capsys.readouterr()
    assert exit_code == 0
    assert "1.12837916" in captured.out


def test_integrate_csv(write_job, tmp_path):
    output = tmp_path / "integrate.csv"
    exit_code = main(["integrate", "--job", write_job("integrate.ini", INTEGRATE_JOB),
                      "--format", "csv", "--output", str(output)])
    assert exit_code == 0
    lines = output.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "value,error_estimate"
    assert float(lines[1].split(",")[0]) == pytest.approx(1.1283791670955126, abs=1e-9)


def test_check_csv_bytes(write_job, tmp_path):
    output = tmp_path / "check.csv"
    exit_code = main(["check", "--job", write_job("check.ini", CHECK_JOB), "--format", "csv", "--output", str(output)])
    assert exit_code == 0
    assert output.read_bytes() == (CSV_HEADER + ",,0.25,0.5,0.25,0,holds\n").encode("utf-8")


def test_sweep_is_deterministic(write_job, tmp_path):
    job = write_job("sweep.ini", SWEEP_JOB)
    first, second = tmp_path / "first.csv", tmp_path / "second.csv"
    assert main(["sweep", "--job", job, "--format", "csv", "--output", str(first)]) == 0
    assert main(["sweep", "--job", job, "--format", "csv", "--output", str(second), "--seed", "42"]) == 0
    assert first.read_bytes() == second.read_bytes()
    assert len(first.read_text(encoding="utf-8").splitlines()) == 5


def test_sweep_excel(write_job, tmp_path):
    from openpyxl import load_workbook

    output = tmp_path / "sweep.xlsx"
    assert main(["sweep", "--job", write_job("sweep.ini", SWEEP_JOB), "--format", "excel", "--output", str(output)]) == 0

    workbook = load_workbook(output)
    sheet = workbook["Sweep"]
    assert sheet.cell(row=1, column=1).font.bold is True
    assert [sheet.cell(row=i, column=2).value for i in range(2, 6)] == [0.25, 0.5, 0.75, 1.0]
    assert sheet.column_dimensions["A"].width >= 12


def test_hypothesis_failed_exit_code(write_job):
    job = write_job("concave.ini", """
        command = check
        inequality_id = jensen_classical
        phi = neg_square
        f = x
        measure = uniform
        c = 0
        d = 1
    """)
    assert main(["check", "--job", job]) == 4


def test_falsify_exit_code(write_job, capsys):
    job = write_job("falsify.ini", """
        command = falsify
        inequality_id = jensen_classical
        phi = neg_square
        relaxation = drop_convexity
        budget = 50
    """)
    assert main(["falsify", "--job", job]) == 3
    assert "CONTRAEJEMPLO" in capsys.readouterr().out


def test_numerical_failure_exit_code(write_job):
    job = write_job("divergent.ini", INTEGRATE_JOB.replace("f = 1", "f = abs(1 - x)^(-0.6)").replace("1e-11", "1e-8"))
    assert main(["integrate", "--job", job]) == 2


@pytest.mark.parametrize("text", [
    INTEGRATE_JOB + "    colour = blue\n",
    INTEGRATE_JOB.replace("alpha = 0.5", "alpha = {0.1, 0.9, 3}"),
    INTEGRATE_JOB.replace("f = 1", "f = tan(x)"),
])
def test_config_errors_exit_one(write_job, text):
    assert main(["integrate", "--job", write_job("bad.ini", text)]) == 1


def test_command_mismatch_exit_one(write_job):
    assert main(["check", "--job", write_job("integrate.ini", INTEGRATE_JOB)]) == 1


def test_missing_job_file(tmp_path):
    assert main(["check", "--job", str(tmp_path / "missing.ini")]) == 1


def test_usage_error():
    assert main(["integrate"]) == 1


JOBS_DIR = Path(__file__).resolve().parents[2] / "jobs"


@pytest.mark.parametrize("command,name", [
    ("integrate", "integrate_rl.ini"),
    ("integrate", "integrate_hadamard.ini"),
    ("derive", "derive_rl.ini"),
    ("check", "check_mercer.ini"),
    ("check", "check_fractional_mercer.ini"),
    ("sweep", "sweep_mercer_m.ini"),
    ("sweep", "sweep_fractional.ini"),
])
def test_shipped_jobs_run_without_format_flag(command, name, capsys):
    assert main([command, "--job", str(JOBS_DIR / name)]) == 0
    assert capsys.readouterr().out


def test_default_format_is_text(write_job, capsys):
    assert main(["check", "--job", write_job("check.ini", CHECK_JOB)]) == 0
    output = capsys.readouterr().out
    assert "FRACJENSEN: CHECK" in output
    assert not output.startswith(CSV_HEADER)
