"""Cyclic supercharacter values (Gaussian periods) over Z/nZ.

For a unit w mod n with orbit X = {1, w, ..., w^(d-1)},

    sigma_X(y) = sum_{x in X} e(x y / n),    e(t) = exp(2 pi i t).

sigma_X is constant on the orbits of y under multiplication by w
(superclasses), so an image is computed by evaluating one representative
per superclass, the smallest element, and broadcasting.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

import numpy as np
from scipy.spatial import cKDTree

from ._parallel import map_chunks
from .arith import OrbitSpec, crt_split, mult_order
from .errors import InvalidLayerModulus, NotCoprime, OrdersNotCoprime
from .report import VerifyReport

DEDUP_GRID = 1e-6
SET_TOL = 1e-6
POINT_TOL = 1e-9


@lru_cache(maxsize=8)
def root_table(n: int) -> np.ndarray:
    """e(t/n) for t = 0..n-1, one cos/sin evaluation each."""
    t = np.arange(n, dtype=np.float64)
    ang = (2.0 * np.pi / n) * t
    table = np.cos(ang) + 1j * np.sin(ang)
    table[0] = 1.0
    table.setflags(write=False)
    return table


def _mulmod(a: np.ndarray, w: int, n: int) -> np.ndarray:
    # n <= 2^32 keeps every product below 2^64
    return (a.astype(np.uint64) * np.uint64(w)) % np.uint64(n)


def eval_supercharacter(spec: OrbitSpec, y: int) -> complex:
    n = spec.modulus
    table = root_table(n)
    y %= n
    return complex(sum(table[(x * y) % n] for x in spec.orbit))


def superclass_minima(spec: OrbitSpec) -> np.ndarray:
    """For every y in Z/n, the smallest element of its superclass.

    Pointer doubling: after k rounds, entry y holds the minimum over
    y, w y, ..., w^(2^k - 1) y.
    """
    n, w, d = spec.modulus, spec.omega, spec.order
    ys = np.arange(n, dtype=np.uint64)
    mins = ys.astype(np.int64)
    window, step = 1, w
    while window < d:
        mins = np.minimum(mins, mins[_mulmod(ys, step, n).astype(np.int64)])
        window *= 2
        step = (step * step) % n
    return mins


def _evaluate(spec: OrbitSpec, reps: np.ndarray, threads=None) -> np.ndarray:
    n = spec.modulus
    table = root_table(n)
    orbit = spec.orbit
    reps_u = reps.astype(np.uint64)

    def work(a, b):
        chunk = reps_u[a:b]
        acc = np.zeros(b - a, dtype=np.complex128)
        for x in orbit:
            acc += table[_mulmod(chunk, x, n).astype(np.int64)]
        return acc

    return map_chunks(work, len(reps), threads)


def _dedup(values: np.ndarray) -> np.ndarray:
    """Deduplicate on a DEDUP_GRID grid, keeping the first stored value per cell.

    Output is ordered by grid cell, (real, imaginary) lexicographically.
    """
    if len(values) == 0:
        return values.copy()
    cells = np.stack(
        [np.round(values.real / DEDUP_GRID), np.round(values.imag / DEDUP_GRID)], axis=1
    ).astype(np.int64)
    _, first = np.unique(cells, axis=0, return_index=True)
    return values[first]


@dataclass
class PeriodImage:
    """All values of sigma_X on Z/n, stored per superclass.

    ``representatives`` are superclass minima in increasing order and
    ``rep_values`` their sigma values; ``rep_index[y]`` locates the
    superclass of y.
    """

    spec: OrbitSpec
    layer_mod: int
    representatives: np.ndarray
    rep_values: np.ndarray
    rep_index: np.ndarray = field(repr=False)
    distinct: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return self.spec.modulus

    @property
    def ys(self) -> np.ndarray:
        return np.arange(self.n, dtype=np.int64)

    @property
    def layers(self) -> np.ndarray:
        return self.ys % self.layer_mod

    @property
    def values(self) -> np.ndarray:
        """sigma_X(y) for y = 0..n-1."""
        return self.rep_values[self.rep_index]

    @property
    def points(self) -> list[tuple[complex, int, int]]:
        """(value, layer, y) for every y, ascending in y."""
        vals = self.values
        c = self.layer_mod
        return [(complex(vals[y]), y % c, y) for y in range(self.n)]

    def layer_counts(self) -> np.ndarray:
        return np.bincount(self.layers, minlength=self.layer_mod)


def image(spec: OrbitSpec, c: int = 1, threads: int | None = None) -> PeriodImage:
    """Evaluate sigma_X on all of Z/n with layer labels y mod c."""
    n = spec.modulus
    c = int(c)
    if c < 1 or n % c != 0 or (c == n and c != 1):
        raise InvalidLayerModulus(f"layer modulus {c} must be a proper divisor of {n}")
    mins = superclass_minima(spec)
    reps = np.flatnonzero(mins == np.arange(n))
    rep_index = np.searchsorted(reps, mins)
    rep_values = _evaluate(spec, reps, threads)
    return PeriodImage(spec, c, reps, rep_values, rep_index, _dedup(rep_values))


@dataclass
class SymmetryReport:
    k: int
    max_conjugation_defect: float
    max_rotation_defect: float
    passed: bool
    tolerance: float = SET_TOL


def _nearest_distance(queries: np.ndarray, targets: np.ndarray) -> float:
    if len(queries) == 0:
        return 0.0
    tree = cKDTree(np.column_stack([targets.real, targets.imag]))
    dist, _ = tree.query(np.column_stack([queries.real, queries.imag]))
    return float(dist.max())


def verify_symmetry(img: PeriodImage, tolerance: float = SET_TOL) -> SymmetryReport:
    """Check conjugation and rotation by 2 pi / k, k = gcd(n, w - 1).

    Each distinct value is mapped and matched against the nearest value in
    the image (all superclass values, so grid rounding of ``distinct``
    cannot introduce a spurious defect).
    """
    k = img.spec.symmetry_order
    z = img.distinct
    conj = _nearest_distance(np.conj(z), img.rep_values)
    rot = _nearest_distance(z * np.exp(2j * np.pi / k), img.rep_values)
    return SymmetryReport(k, conj, rot, conj < tolerance and rot < tolerance, tolerance)


def _factor_values(w: int, m: int, threads=None) -> np.ndarray:
    # Z/1Z has the single value sigma(0) = 1
    if m == 1:
        return np.array([1.0 + 0j])
    return image(OrbitSpec(m, w), threads=threads).rep_values


def verify_multiplicativity(
    m: int, n: int, w: int, tolerance: float = SET_TOL, threads: int | None = None
) -> VerifyReport:
    """Compare the image mod m*n with the product set of the images mod m and mod n."""
    t0 = time.perf_counter()
    m, n = int(m), int(n)
    if gcd(m, n) != 1:
        raise NotCoprime(f"gcd({m}, {n}) != 1")
    w_m, w_n = crt_split(w, m, n)
    d_m = mult_order(w_m, m) if m > 1 else 1
    d_n = mult_order(w_n, n) if n > 1 else 1
    if gcd(d_m, d_n) != 1:
        raise OrdersNotCoprime(f"orders {d_m} (mod {m}) and {d_n} (mod {n}) are not coprime")
    left = _factor_values(w_m, m, threads)
    right = _factor_values(w_n, n, threads)
    product = np.unique(np.multiply.outer(left, right).ravel())
    full = _factor_values(int(w) % (m * n), m * n, threads)
    forward = _nearest_distance(product, full)
    backward = _nearest_distance(full, product)
    defect = max(forward, backward)
    return VerifyReport(
        check="multiplicativity",
        params={"m": m, "n": n, "omega": int(w) % (m * n)},
        passed=defect < tolerance,
        max_defect=defect,
        tolerance=tolerance,
        elapsed=time.perf_counter() - t0,
        details={
            "omega_m": w_m,
            "omega_n": w_n,
            "order_m": d_m,
            "order_n": d_n,
            "product_to_image": forward,
            "image_to_product": backward,
            "distinct_image": int(len(_dedup(full))),
            "distinct_product": int(len(_dedup(product))),
        },
    )
