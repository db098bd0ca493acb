"""How much of the sampled g_d image is reached by Gaussian periods mod q.

For primes q = 1 mod d, take omega of order d and report the fraction of
occupied grid cells of the g_d image that also contain a period value.
The fraction should grow with q.

    python3 scripts/coverage.py --d 3 --count 8
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass

from periodviz.arith import is_prime
from periodviz.asymptotic import coverage_fraction, find_root_of_unity


@dataclass
class Config:
    d: int = 3
    count: int = 8
    start: int = 7
    samples: int = 200_000
    cell: float = 0.1
    seed: int = 0


def primes_one_mod(d: int, start: int, count: int, growth: float = 2.0):
    """First prime = 1 mod d at or above start, start*growth, start*growth^2, ..."""
    q = start
    for _ in range(count):
        while not (q % d == 1 and is_prime(q)):
            q += 1
        yield q
        q = int(q * growth)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    for name, default in vars(Config()).items():
        ap.add_argument(f"--{name}", type=type(default), default=default)
    cfg = Config(**vars(ap.parse_args()))
    for q in primes_one_mod(cfg.d, cfg.start, cfg.count):
        w = find_root_of_unity(q, cfg.d)
        frac = coverage_fraction(q, w, samples=cfg.samples, seed=cfg.seed, cell=cfg.cell)
        print(f"q={q:<8d} omega={w:<8d} coverage={frac:.3f}")


if __name__ == "__main__":
    main()
