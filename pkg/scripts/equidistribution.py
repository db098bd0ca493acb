"""Weyl sums and grid-box discrepancy for Lambda_q along q = 1 mod d.

Prints discrepancy estimates at several grid resolutions and optionally
writes torus scatter plots.

    python3 scripts/equidistribution.py --d 3 --q 73 961 3571 19 37 --scatter out/
"""
from __future__ import annotations

import argparse
import itertools
from dataclasses import dataclass, field
from pathlib import Path

from periodviz import RenderConfig, discrepancy_estimate, lambda_set, scatter_torus, weyl_sum, write_image


@dataclass
class Config:
    d: int = 3
    qs: list[int] = field(default_factory=lambda: [73, 961, 3571])
    grids: list[int] = field(default_factory=lambda: [10, 20, 40])
    weyl_box: int = 3
    scatter_dir: str | None = None
    scatter_size: int = 512


def run(cfg: Config) -> None:
    header = "q".rjust(8) + " root".rjust(8) + "".join(f"  D(grid={g})".rjust(14) for g in cfg.grids) + "  weyl max|S-pred|"
    print(header)
    for q in cfg.qs:
        lam = lambda_set(q, cfg.d)
        ests = [discrepancy_estimate(lam, g) if lam.dim <= 3 else float("nan") for g in cfg.grids]
        worst = 0.0
        for v in itertools.product(range(-cfg.weyl_box, cfg.weyl_box + 1), repeat=lam.dim):
            c, p = weyl_sum(lam, v)
            worst = max(worst, abs(c - p))
        print(f"{q:8d}{lam.root:8d}" + "".join(f"{e:14.6f}" for e in ests) + f"  {worst:.2e}")
        if cfg.scatter_dir and lam.dim == 2:
            out = Path(cfg.scatter_dir)
            out.mkdir(parents=True, exist_ok=True)
            write_image(scatter_torus(lam, RenderConfig(size_px=cfg.scatter_size)), out / f"lambda_{q}.png")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--d", type=int, default=3)
    ap.add_argument("--q", type=int, nargs="+", default=[73, 961, 3571])
    ap.add_argument("--grid", type=int, nargs="+", default=[10, 20, 40])
    ap.add_argument("--scatter", default=None, help="directory for torus scatter plots")
    args = ap.parse_args()
    run(Config(d=args.d, qs=args.q, grids=args.grid, scatter_dir=args.scatter))


if __name__ == "__main__":
    main()
