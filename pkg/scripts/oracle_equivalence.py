"""Sweep random algebras and compare the relation check with the master-equation oracle.

    python3 scripts/oracle_equivalence.py --count 500 --seed 3
"""
import argparse
import random
import time
from dataclasses import asdict, dataclass, fields

from lix.generate import random_algebra, repair
from lix.linfty import check_relations
from lix.oracle import check_master_equation, polarization_samples


@dataclass
class SweepConfig:
    count: int = 200
    seed: int = 0
    max_dim: int = 4
    max_arity: int = 3
    density: float = 0.7
    repair_fraction: float = 0.5


def run(cfg: SweepConfig) -> dict:
    rng = random.Random(cfg.seed)
    tally = {"valid": 0, "invalid": 0, "disagree": 0}
    start = time.perf_counter()
    for _ in range(cfg.count):
        A = random_algebra(rng, dim=rng.randint(1, cfg.max_dim), max_arity=cfg.max_arity, density=cfg.density)
        if rng.random() < cfg.repair_fraction:
            A = repair(A, rng, cfg.max_arity)
        rel = check_relations(A, cfg.max_arity).ok
        master = check_master_equation(A, polarization_samples(A, cfg.max_arity)).ok
        tally["valid" if rel else "invalid"] += 1
        tally["disagree"] += rel != master
    tally["seconds"] = round(time.perf_counter() - start, 2)
    return tally


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for f in fields(SweepConfig):
        ap.add_argument("--" + f.name.replace("_", "-"), type=type(f.default), default=f.default)
    cfg = SweepConfig(**vars(ap.parse_args()))
    print(asdict(cfg))
    print(run(cfg))


if __name__ == "__main__":
    main()
