"""Render the catalogue of (n, omega, c) images to a directory.

    python3 scripts/gallery.py --out gallery --size 1024
    python3 scripts/gallery.py --only atoms-k11 --size 512
"""
from __future__ import annotations

import argparse
import time
from dataclasses import dataclass
from pathlib import Path

from periodviz import OrbitSpec, RenderConfig, image, rasterize, write_image


@dataclass(frozen=True)
class Figure:
    name: str
    n: int
    omega: int
    c: int = 1


FIGURES = [
    Figure("eye", 29 * 109 * 113, 8862, 113),
    Figure("jewel", 37 * 97 * 113, 5507, 113),
    Figure("disco-ball", 3 * 5 * 17 * 29 * 37, 184747, 3 * 17),
    Figure("loudspeaker", 13 * 127 * 199, 6077, 13),
    Figure("mite", 13 * 127 * 199, 9247, 127),
    Figure("moth", 3 * 7 * 211 * 223, 710216, 211),
    Figure("atoms-k11", 3 * 5 * 7 * 11 * 13 * 17, 254, 11),
    Figure("atoms-k7", 3**2 * 5**2 * 7 * 17**2, 3599, 17**2),
    Figure("bird", 31 * 73 * 211, 2547, 31),
    Figure("spacecraft", 3 * 31 * 73 * 211, 1463, 73),
    Figure("product-left", 251 * 281, 54184),
    Figure("product-right", 5 * 251 * 281, 54184, 5),
    Figure("golden", 5, 4),
    Figure("layered", 127**2 * 401, 6085605, 401),
    Figure("deltoid", 97**3, 61074),
    Figure("pentagram-region", 31**4, 62996),
    Figure("heptagram-region", 1933**2, 537832),
    Figure("nine-a", 19**3, 956),
    Figure("nine-b", 37**3, 16074),
    Figure("nine-c", 1009**2, 84669),
]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--out", default="gallery")
    ap.add_argument("--size", type=int, default=1024)
    ap.add_argument("--format", choices=["png", "ppm"], default="png")
    ap.add_argument("--only", nargs="*", help="figure names to render")
    ap.add_argument("--threads", type=int, default=None)
    args = ap.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    cfg = RenderConfig(size_px=args.size)
    for fig in FIGURES:
        if args.only and fig.name not in args.only:
            continue
        t0 = time.perf_counter()
        img = image(OrbitSpec(fig.n, fig.omega), fig.c, threads=args.threads)
        path = out / f"{fig.name}.{args.format}"
        write_image(rasterize(img, cfg), path)
        print(f"{fig.name:18s} n={fig.n:<10d} omega={fig.omega:<8d} c={fig.c:<4d} "
              f"|X|={img.spec.order:<3d} distinct={len(img.distinct):<8d} {time.perf_counter() - t0:6.2f}s -> {path}")


if __name__ == "__main__":
    main()
