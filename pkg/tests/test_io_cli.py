import json
import shutil
import subprocess
from pathlib import Path

import pytest

from lix import fixtures, io
from lix.cli import main
from lix.solver import solve_mc
from make_goldens import CASES

HERE = Path(__file__).parent
FIX = HERE / "fixtures"
GOLD = HERE / "golden"

EXIT_CODES = json.loads((GOLD / "exit_codes.json").read_text())


def run_cli(argv, monkeypatch, capsys):
    monkeypatch.chdir(FIX)
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden_output(name, monkeypatch, capsys):
    code, out, _ = run_cli(CASES[name], monkeypatch, capsys)
    assert code == EXIT_CODES[name]
    assert out == (GOLD / f"{name}.json").read_text()


@pytest.mark.parametrize("name", ["oracle_a2", "formality_exact", "specseq_a3"])
def test_output_is_deterministic(name, monkeypatch, capsys):
    first = run_cli(CASES[name], monkeypatch, capsys)
    second = run_cli(CASES[name], monkeypatch, capsys)
    assert first == second


@pytest.mark.parametrize("make", [fixtures.a1, fixtures.a2, fixtures.a3, fixtures.low_curvature])
def test_algebra_round_trip(make):
    alg = make()
    back = io.algebra_from_json(json.loads(io.dumps(io.algebra_to_json(alg))))
    assert back.space == alg.space
    assert back.entries == alg.entries
    assert back.max_arity == alg.max_arity


@pytest.mark.parametrize("make", [fixtures.dual_numbers, fixtures.truncated_poly, fixtures.massey_m3])
def test_ainfty_round_trip(make):
    alg = make()
    back = io.ainfty_from_json(json.loads(io.dumps(io.ainfty_to_json(alg))))
    assert back.space == alg.space
    assert back.ops == alg.ops


def test_certificate_round_trip():
    alg = fixtures.a2()
    cert = solve_mc(alg, 1)
    back = io.certificate_from_json(alg.space, json.loads(io.dumps(io.certificate_to_json(cert))))
    assert back.alpha == cert.alpha
    assert back.trace == cert.trace


def test_unshifted_input_matches_shifted():
    shifted = io.algebra_from_json(json.loads((FIX / "a1.json").read_text()))
    unshifted = io.algebra_from_json(json.loads((FIX / "a1_unshifted.json").read_text()), unshifted=True)
    assert unshifted.space == shifted.space
    assert unshifted.entries == shifted.entries


def test_rationals_are_strings():
    text = io.dumps(io.algebra_to_json(fixtures.a2()))
    assert '"-1"' in text or '"1"' in text
    assert text.endswith("\n")


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


def test_malformed_json_exits_2(tmp_path, capsys):
    path = write(tmp_path, "bad.json", "{not json")
    assert main(["validate", path]) == 2
    assert "SchemaError" in capsys.readouterr().err


def test_missing_field_exits_2(tmp_path, capsys):
    path = write(tmp_path, "bad.json", {"space": {"basis": [{"id": "a"}]}})
    assert main(["validate", path]) == 2


def test_unknown_basis_id_exits_2(tmp_path, capsys):
    obj = json.loads((FIX / "a1.json").read_text())
    obj["brackets"][0]["value"] = {"nope": "1"}
    assert main(["validate", write(tmp_path, "a.json", obj)]) == 2


def test_duplicate_id_exits_2(tmp_path):
    obj = json.loads((FIX / "a1.json").read_text())
    obj["space"]["basis"].append(dict(obj["space"]["basis"][0]))
    assert main(["validate", write(tmp_path, "a.json", obj)]) == 2


def test_missing_file_exits_2(tmp_path):
    assert main(["validate", str(tmp_path / "absent.json")]) == 2


def test_dimension_cap(monkeypatch, capsys):
    monkeypatch.setenv("LIX_MAX_DIM", "1")
    code, _, err = run_cli(["validate", "a1.json"], monkeypatch, capsys)
    assert code == 2
    assert "LIX_MAX_DIM" in err


def test_console_script(tmp_path):
    exe = shutil.which("lix")
    if exe is None:
        pytest.skip("lix is not on PATH")
    res = subprocess.run([exe, "validate", str(FIX / "a2.json")], capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout == (GOLD / "validate_a2.json").read_text()
