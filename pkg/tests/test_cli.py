import json

import pytest

from gradia.cli import main


@pytest.fixture
def sources(tmp_path):
    files = {
        "ok.sdc": "assume secret :^H Unit;\neta^H secret\n",
        "leak.sdc": "assume secret :^H Unit;\nsecret\n",
        "broken.ddc": "\\x:^bot Unit.\n",
        "id.ddc": "(\\A:^top Type. \\y:^bot A. y) Unit^top unit^bot\n",
        "omega.ddc": "(\\x:^bot Unit. x x) (\\x:^bot Unit. x x)\n",
        "unseal.seal": "unseal^H (seal^H unit)\n",
    }
    for name, text in files.items():
        (tmp_path / name).write_text(text)
    return tmp_path


def test_check_ok(sources, capsys):
    assert main(["check", str(sources / "ok.sdc"), "--level", "L"]) == 0
    assert capsys.readouterr().out.strip() == "T^H Unit"


def test_check_type_error(sources, capsys):
    assert main(["check", str(sources / "leak.sdc"), "--level", "L"]) == 1
    err = capsys.readouterr().err
    assert "SDC-Var" in err
    assert "VarGradeTooHigh" in err


def test_check_many_files_reports_each(sources, capsys):
    code = main(["check", str(sources / "ok.sdc"), str(sources / "leak.sdc"), "--level", "L"])
    assert code == 1
    captured = capsys.readouterr()
    assert "ok.sdc: T^H Unit" in captured.out
    assert "leak.sdc" in captured.err


def test_check_with_trace(sources, capsys):
    assert main(["check", str(sources / "ok.sdc"), "--level", "L", "--trace"]) == 0
    assert "SDC-Return" in capsys.readouterr().out


def test_syntax_error(sources, capsys):
    assert main(["check", str(sources / "broken.ddc")]) == 2
    assert "Syntax" in capsys.readouterr().err


def test_missing_file(sources):
    assert main(["check", str(sources / "absent.sdc")]) == 4


def test_bad_lattice(sources, capsys):
    assert main(["check", str(sources / "ok.sdc"), "--lattice", "no-such-lattice"]) == 4


def test_usage_error(sources, capsys):
    assert main(["eval", str(sources / "id.ddc"), "--fuel", "0"]) == 4
    assert "Usage" in capsys.readouterr().err


def test_eval(sources, capsys):
    assert main(["eval", str(sources / "id.ddc")]) == 0
    assert capsys.readouterr().out.strip() == "unit"


def test_eval_out_of_fuel(sources):
    assert main(["eval", str(sources / "omega.ddc"), "--fuel", "20"]) == 3


def test_eval_sealing(sources, capsys):
    assert main(["eval", str(sources / "unseal.seal")]) == 0
    assert capsys.readouterr().out.strip() == "unit"


def test_translate_sealing(sources, capsys):
    assert main(["translate", str(sources / "unseal.seal"), "--to", "sdc"]) == 0
    assert capsys.readouterr().out.strip().startswith("bind^H")


def test_translate_unsupported_pair(sources):
    assert main(["translate", str(sources / "ok.sdc"), "--to", "icc"]) == 4


def test_eq(sources, capsys):
    (sources / "unit.ddc").write_text("unit\n")
    (sources / "redex.ddc").write_text("(\\x:^bot Unit. x) unit\n")
    assert main(["eq", str(sources / "unit.ddc"), str(sources / "redex.ddc"), "--level", "C"]) == 0
    assert capsys.readouterr().out.strip() == "Equal"


@pytest.mark.parametrize(
    "left, right, level",
    [
        ("(\\x:Unit. x) unit", "unit", "H"),
        ("bind^H x = eta^H unit in eta^H x", "eta^H unit", "H"),
        ("pi2 (eta^H unit, (\\x:Unit. x) unit)", "unit", "L"),
    ],
)
def test_eq_reduces_sdc_terms(tmp_path, capsys, left, right, level):
    (tmp_path / "left.sdc").write_text(left)
    (tmp_path / "right.sdc").write_text(right)
    assert main(["eq", str(tmp_path / "left.sdc"), str(tmp_path / "right.sdc"), "--level", level]) == 0
    assert capsys.readouterr().out.strip() == "Equal"


def test_eq_reduces_sealing_terms(tmp_path, capsys):
    (tmp_path / "left.seal").write_text("assume x :^L T^H Unit; seal^H (unseal^H x)")
    (tmp_path / "right.seal").write_text("assume x :^L T^H Unit; seal^H (unseal^H (seal^H (unseal^H x)))")
    assert main(["eq", str(tmp_path / "left.seal"), str(tmp_path / "right.seal"), "--level", "H"]) == 0
    assert capsys.readouterr().out.strip() == "Equal"


def test_noninterfere_writes_reports(tmp_path, capsys):
    reports = tmp_path / "reports"
    code = main(
        [
            "noninterfere",
            "--suite", "progress",
            "--fragment", "sdc",
            "--trials", "4",
            "--max-size", "6",
            "--seed", "2",
            "--report-dir", str(reports),
        ]
    )
    assert code == 0
    assert "progress" in capsys.readouterr().out
    detail = json.loads((reports / "progress-sdc-2.json").read_text())
    assert detail["trials"] == 4
    assert detail["failed"] == 0


def test_noninterfere_unknown_suite(tmp_path):
    assert main(["noninterfere", "--suite", "confluence", "--report-dir", str(tmp_path)]) == 4
