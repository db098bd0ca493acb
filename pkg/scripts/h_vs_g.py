"""Sampled comparison of the images of h_{r,s} and g_{rs}.

A heuristic only: the symmetric nearest-neighbour distance between two finite
samples shrinks as the sample count grows, so it is printed for a sweep.

    python3 scripts/h_vs_g.py --r 3 --s 5 --samples 100000 1000000 4000000
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass, field

from periodviz.asymptotic import compare_h_g_images


@dataclass
class Config:
    r: int = 3
    s: int = 5
    samples: list[int] = field(default_factory=lambda: [100_000, 1_000_000, 2_000_000])
    seed: int = 0


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--r", type=int, default=3)
    ap.add_argument("--s", type=int, default=5)
    ap.add_argument("--samples", type=int, nargs="+", default=Config().samples)
    ap.add_argument("--seed", type=int, default=0)
    cfg = Config(**vars(ap.parse_args()))
    for k in cfg.samples:
        rep = compare_h_g_images(cfg.r, cfg.s, samples=k, seed=cfg.seed)
        print(f"r={cfg.r} s={cfg.s} samples={k:>9d} gap={rep.max_defect:.4f} "
              f"tolerance={rep.tolerance:.3f} {'within' if rep.passed else 'outside'} ({rep.elapsed:.1f}s)")


if __name__ == "__main__":
    main()
