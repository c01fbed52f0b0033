import json
import textwrap

import pytest

from conftest import SHIPPED_CONFIG, SHIPPED_RESPONSES
from robustwheel.pipeline.cli import EXIT_IO, EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def two_factor_config(tmp_path):
    path = tmp_path / "two.config"
    path.write_text(textwrap.dedent(
        """\
        factors:
          - {name: Module Length, role: module_length, levels: [240, 260, 280]}
          - {name: Radius of Parent Circle, role: parent_radius, levels: [40, 45, 50]}
        """
    ))
    return path


def test_analyze(capsys, tmp_path):
    code, out, _ = run(capsys, "analyze", "--config", str(SHIPPED_CONFIG), "--responses",
                       str(SHIPPED_RESPONSES), "--out-dir", str(tmp_path), "--no-bounds")
    assert code == EXIT_OK
    assert "optimal setting: (260, 45, 16)" in out
    assert "Module Length = 260 mm" in (tmp_path / "summary.txt").read_text()


def test_shipped_inputs_found_by_name(capsys, tmp_path):
    code, out, _ = run(capsys, "analyze", "--config", "paper.config", "--responses",
                       "paper_table2.csv", "--out-dir", str(tmp_path), "--formats", "",
                       "--no-bounds")
    assert code == EXIT_OK
    assert [p.name for p in tmp_path.iterdir()] == ["summary.txt"]


def test_oa_output_accepted_by_analyze(capsys, tmp_path):
    plan = tmp_path / "plan.csv"
    assert run(capsys, "oa", "--out", str(plan))[0] == EXIT_OK
    code, _, err = run(capsys, "analyze", "--plan", str(plan), "--out-dir", str(tmp_path / "o"),
                       "--formats", "csv", "--no-bounds")
    assert code == EXIT_OK, err
    assert (tmp_path / "o" / "plan.csv").read_text() == plan.read_text()


def test_foreign_plan_rejected(capsys, tmp_path):
    plan = tmp_path / "plan.csv"
    run(capsys, "oa", "--out", str(plan))
    lines = plan.read_text().splitlines()
    lines[1], lines[2] = lines[2].replace("2,", "1,", 1), lines[1].replace("1,", "2,", 1)
    plan.write_text("\n".join(lines) + "\n")
    code, _, err = run(capsys, "analyze", "--plan", str(plan), "--no-bounds", "--formats", "",
                       "--out-dir", str(tmp_path))
    assert code == EXIT_VALIDATION
    assert "ValidationError" in err


def test_oa_stdout(capsys):
    code, out, _ = run(capsys, "oa")
    assert code == EXIT_OK
    assert out.splitlines()[5] == "5,2,2,3,260.000000,45.000000,20.000000"


def test_oa_two_factors(capsys, two_factor_config):
    code, _, err = run(capsys, "oa", "--config", str(two_factor_config))
    assert code == EXIT_VALIDATION
    assert err.startswith("ArityError")


def test_wheel(capsys, tmp_path):
    code, out, _ = run(capsys, "wheel", "--rp", "45", "--rc", "10", "--nc", "16",
                       "--out-dir", str(tmp_path))
    assert code == EXIT_OK
    assert "amplitude=0.8647 mm" in out and "frequency=16" in out
    assert (tmp_path / "wheel_rp45_rc10_nc16.svg").exists()
    assert (tmp_path / "wheel_rp45_rc10_nc16.csv").read_text().startswith("x_mm,y_mm\n")


def test_wheel_with_gaps(capsys):
    code, _, err = run(capsys, "wheel", "--rp", "50", "--nc", "15")
    assert code == EXIT_VALIDATION
    assert "DisjointChildCircles" in err


def test_design(capsys):
    code, out, _ = run(capsys, "design", "--csv")
    assert code == EXIT_OK
    assert out.splitlines()[1] == "parent_radius_mm,21.750000,56.675000"
    assert out.splitlines()[3] == "child_count,16,20"


def test_confirm(capsys, tmp_path):
    stored = tmp_path / "prediction.json"
    stored.write_text(json.dumps({"predicted": 0.7296, "best_run_grade": 0.709,
                                  "optimal_setting": [260, 45, 16]}))
    code, out, _ = run(capsys, "confirm", "--grade", "0.795383", "--prediction", str(stored))
    assert code == EXIT_OK
    assert "absolute gap      : 0.065783" in out


def test_confirm_without_prediction(capsys, tmp_path):
    code, _, err = run(capsys, "confirm", "--grade", "0.7", "--prediction",
                       str(tmp_path / "missing.json"))
    assert code == EXIT_IO
    assert "missing.json" in err


def test_missing_responses(capsys, tmp_path):
    code, _, _ = run(capsys, "analyze", "--responses", str(tmp_path / "none.csv"),
                     "--no-bounds")
    assert code == EXIT_IO


def test_unknown_flag(capsys):
    code, _, err = run(capsys, "oa", "--bogus")
    assert code == EXIT_USAGE
    assert "usage error" in err


def test_no_subcommand(capsys):
    assert run(capsys)[0] == EXIT_USAGE


def test_bad_config(capsys, tmp_path):
    path = tmp_path / "bad.config"
    path.write_text("factors: 3\nzeta: 0\n")
    code, _, err = run(capsys, "oa", "--config", str(path))
    assert code == EXIT_VALIDATION
    assert "zeta" in err
