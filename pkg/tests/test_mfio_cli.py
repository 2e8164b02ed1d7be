import json

import pytest

from stablelc import FormatError, dump_mf, load_mf, parse_mf
from stablelc.cli import cmd_run

from conftest import DATA, FIXTURES


def run(argv, capsys):
    code = cmd_run([str(a) for a in argv])
    cap = capsys.readouterr()
    return code, cap.out, cap.err


@pytest.mark.parametrize("path", sorted(DATA.glob("*.mf")), ids=lambda p: p.name)
def test_shipped_files_validate(path, capsys):
    code, out, _ = run(["validate", path], capsys)
    assert code == 0 and out.startswith("valid")


def test_round_trip():
    for path in DATA.glob("*.mf"):
        mf = load_mf(path)
        assert parse_mf(dump_mf(mf)) == mf


def test_format_errors_have_locations():
    with pytest.raises(FormatError) as exc:
        load_mf(FIXTURES / "syntax_error.mf")
    assert exc.value.line == 5
    with pytest.raises(FormatError) as exc:
        parse_mf('field = "QQ"\nvars = [x]\nf = "x^2"\nA = [["x"]]\n')
    assert "missing key 'B'" in str(exc.value)
    with pytest.raises(FormatError) as exc:
        parse_mf('field = "QQ"\nbogus = 1\n')
    assert exc.value.line == 2
    with pytest.raises(FormatError) as exc:
        load_mf(FIXTURES / "bad_entry.mf")
    assert exc.value.line == 4 and "byte" in str(exc.value)


def test_validate_x2(capsys):
    code, out, _ = run(["validate", DATA / "x2_k.mf"], capsys)
    assert code == 0 and out.strip() == "valid, minimal"


@pytest.mark.parametrize("name", ["wrong_f.mf", "not_factorization.mf", "syntax_error.mf", "bad_entry.mf"])
def test_validate_rejects_corrupt_files(name, capsys):
    code, _, _ = run(["validate", FIXTURES / name], capsys)
    assert code == 2


def test_slc_xy_table(capsys):
    code, out, _ = run(["slc", DATA / "xy_rx.mf", "--from", -10, "--to", -1, "--json"], capsys)
    assert code == 0
    rows = dict(map(tuple, json.loads(out)["hilbert"]["rows"]))
    assert rows == {**{j: 1 for j in range(-10, -1)}, -1: 0}


def test_slc_basis_output(capsys):
    code, out, _ = run(["slc", DATA / "xy_rx.mf", "--from", -4, "--to", -1, "--basis"], capsys)
    assert code == 0
    assert "degree -4: x^-3*y^-1" in out and "degree -2: x^-1*y^-1" in out


def test_verify_coincide(capsys):
    code, out, _ = run(["verify", DATA / "xy_rx.mf", "--suite", "coincide", "--from", -12, "--to", -2], capsys)
    assert code == 0 and "[PASS]" in out


def test_verify_flags_failure(capsys):
    code, _, _ = run(["verify", DATA / "xy_with_units.mf", "--suite", "coincide", "--from", -6, "--to", -2], capsys)
    assert code == 1


def test_json_is_byte_deterministic(capsys):
    argv = ["toplc", DATA / "x2y2_tensor.mf", "--from", -8, "--to", 0, "--json", "--basis"]
    first = run(argv, capsys)[1]
    assert first == run(argv, capsys)[1]
    assert json.loads(first)["object"] == "toplc"


def test_other_verbs(capsys):
    code, out, _ = run(["reduce", DATA / "xy_with_units.mf"], capsys)
    assert code == 0 and parse_mf(out).r == 1
    code, out, _ = run(["oracle", DATA / "cubic_gf7.mf", "--from", -8, "--to", 0], capsys)
    assert code == 0 and out.strip().endswith("pass")
    code, out, _ = run(["hilbert", DATA / "xy_rx.mf", "--object", "coker", "--to", 3, "--json"], capsys)
    assert code == 0 and json.loads(out)["hilbert"]["rows"] == [[0, 1], [1, 1], [2, 1], [3, 1]]
    code, out, _ = run(["verify", "--seed", 2, "--suite", "periodicity", "--from", -6, "--to", 0], capsys)
    assert code == 0


def test_input_errors_exit_2(capsys):
    assert run(["slc", DATA / "missing.mf"], capsys)[0] == 2
    assert run(["slc", DATA / "xy_rx.mf", "--from", 0, "--to", -1], capsys)[0] == 2
    assert run(["slc", DATA / "xy_rx.mf", "--from", -600, "--to", 0], capsys)[0] == 2
    assert run(["slc", DATA / "xy_rx.mf", "--from", -600, "--to", 0, "--max-width", 1000], capsys)[0] == 0
    assert run(["frobnicate"], capsys)[0] == 2
    assert run(["verify"], capsys)[0] == 2
    code, _, err = run(["slc", FIXTURES / "syntax_error.mf"], capsys)
    assert code == 2 and "line 5" in err
