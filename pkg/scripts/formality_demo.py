"""Run the formality check on the bundled A-infinity examples at several weight caps."""
import argparse
import time
from dataclasses import dataclass

from lix import fixtures
from lix.ainfty import intrinsic_formality_check

PAIRS = {
    "dual numbers": (fixtures.dual_numbers, fixtures.dual_numbers),
    "exact m3": (fixtures.truncated_poly, fixtures.exact_m3),
    "massey m3": (fixtures.trivial_products, fixtures.massey_m3),
}


@dataclass
class DemoConfig:
    min_cap: int = 2
    max_cap: int = 4


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--min-cap", type=int, default=DemoConfig.min_cap)
    ap.add_argument("--max-cap", type=int, default=DemoConfig.max_cap)
    cfg = DemoConfig(**vars(ap.parse_args()))
    print(f"{'example':<14}{'cap':>4}{'dim':>7}{'F(mu0)':>8}  {'vanish':<7}{'verdict':<11}{'steps':>5}{'secs':>7}")
    for name, (strict, transferred) in PAIRS.items():
        for cap in range(cfg.min_cap, cfg.max_cap + 1):
            t = time.perf_counter()
            res = intrinsic_formality_check(strict(cap), transferred(cap), cap)
            steps = len(res.certificate.steps) if res.certificate else "-"
            verdict = "formal" if res.formal else f"obstr. w{res.obstruction_weight}"
            print(f"{name:<14}{cap:>4}{len(res.complex.space):>7}{str(res.curvature_weight):>8}  "
                  f"{str(res.vanishing):<7}{verdict:<11}{steps:>5}{time.perf_counter() - t:>7.2f}")


if __name__ == "__main__":
    main()
