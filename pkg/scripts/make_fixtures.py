"""Write the JSON fixtures used by the CLI tests."""
import sys
from pathlib import Path

from lix import fixtures, io

OUT = Path(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).resolve().parents[1] / "tests" / "fixtures")


def write(name, obj):
    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / name).write_text(io.dumps(obj), encoding="utf-8")


def unshift(obj):
    for b in obj["space"]["basis"]:
        b["degree"] += 1
    return obj


def main():
    for name in ("a1", "a2", "a3", "flat_pair", "low_curvature"):
        write(f"{name}.json", io.algebra_to_json(getattr(fixtures, name)()))
    write("a1_unshifted.json", unshift(io.algebra_to_json(fixtures.a1())))
    for name in ("dual_numbers", "truncated_poly", "exact_m3", "trivial_products", "massey_m3"):
        write(f"{name}.json", io.ainfty_to_json(getattr(fixtures, name)()))
    bad = io.ainfty_to_json(fixtures.contractible_pair())
    bad["ops"].append({"arity": 1, "args": ["v"], "value": {"x": "1"}})
    bad["space"]["basis"][0]["degree"] = 1
    write("bad_m1.json", bad)


if __name__ == "__main__":
    main()
