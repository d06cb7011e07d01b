"""Regenerate the CLI golden files from the JSON fixtures."""
import contextlib
import io as _io
import json
import os
from pathlib import Path

from lix.cli import main

ROOT = Path(__file__).resolve().parents[1] / "tests"
FIX = ROOT / "fixtures"
GOLD = ROOT / "golden"

CASES = {
    "validate_a1": ["validate", "a1.json"],
    "validate_a2": ["validate", "a2.json"],
    "validate_unshifted_a1": ["validate", "--unshifted", "a1_unshifted.json"],
    "validate_bad_m1": ["validate", "bad_m1.json"],
    "validate_massey": ["validate", "massey_m3.json"],
    "oracle_a2": ["oracle", "a2.json"],
    "specseq_a1_deg1": ["specseq", "--page", "2", "--total-degree", "1", "a1.json"],
    "specseq_a3": ["specseq", "--page", "2", "a3.json"],
    "specseq_low": ["specseq", "--page", "2", "low_curvature.json"],
    "solve_a1": ["solve-mc", "--r", "1", "a1.json"],
    "solve_a2": ["solve-mc", "--r", "1", "a2.json"],
    "solve_a3": ["solve-mc", "--r", "1", "a3.json"],
    "verify_a2": ["verify", "a2.json", "a2_certificate.json"],
    "verify_a2_bad": ["verify", "a2.json", "a2_bad_certificate.json"],
    "defcomplex_dual": ["defcomplex", "dual_numbers.json", "dual_numbers.json", "--weight-cap", "1"],
    "formality_dual": ["formality", "dual_numbers.json", "dual_numbers.json", "--weight-cap", "3"],
    "formality_exact": ["formality", "truncated_poly.json", "exact_m3.json", "--weight-cap", "3"],
    "formality_massey": ["formality", "trivial_products.json", "massey_m3.json", "--weight-cap", "3"],
}


def run(argv):
    out = _io.StringIO()
    err = _io.StringIO()
    cwd = os.getcwd()
    os.chdir(FIX)
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = main(argv)
    finally:
        os.chdir(cwd)
    return code, out.getvalue()


def write_certificates():
    code, text = run(["solve-mc", "--r", "1", "a2.json"])
    assert code == 0
    (FIX / "a2_certificate.json").write_text(text, encoding="utf-8")
    bad = json.loads(text)
    bad["alpha"] = {"b": "-1"}
    (FIX / "a2_bad_certificate.json").write_text(json.dumps(bad, indent=2) + "\n", encoding="utf-8")


def main_():
    write_certificates()
    GOLD.mkdir(exist_ok=True)
    codes = {}
    for name, argv in CASES.items():
        code, text = run(argv)
        codes[name] = code
        (GOLD / f"{name}.json").write_text(text, encoding="utf-8")
    (GOLD / "exit_codes.json").write_text(json.dumps(codes, indent=2, sort_keys=True) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main_()
