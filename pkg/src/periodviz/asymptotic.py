"""Laurent maps on the torus, hypocycloids and equidistribution experiments.

Conventions: a torus point is a length-phi(d) vector of unit complex
numbers; batches are arrays whose last axis holds the coordinates.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from math import cos, gcd, pi, sin, sqrt

import numpy as np
from scipy.spatial import cKDTree

from ._parallel import map_chunks
from .arith import OrbitSpec, factorize, is_prime, totient
from .cyclotomic import reduction_matrix
from .errors import DimensionTooHigh, HypothesisViolated, NoSuchRoot
from .report import VerifyReport
from .supercharacter import image, root_table

UNIT_TOL = 1e-12
DEFAULT_BOUNDARY_SAMPLES = 4096


# ---------------------------------------------------------------- torus


@dataclass(frozen=True)
class TorusPoint:
    coordinates: tuple[complex, ...]

    def __post_init__(self):
        z = np.asarray(self.coordinates, dtype=np.complex128)
        if np.any(np.abs(np.abs(z) - 1.0) >= UNIT_TOL):
            raise ValueError("torus coordinates must have modulus 1")
        object.__setattr__(self, "coordinates", tuple(complex(c) for c in z))

    @classmethod
    def from_angles(cls, thetas) -> "TorusPoint":
        """Point (e(t_1), ..., e(t_m)) for angles given in turns."""
        return cls(tuple(np.exp(2j * np.pi * np.asarray(thetas, dtype=float))))

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.coordinates, dtype=dtype or np.complex128)

    def __len__(self):
        return len(self.coordinates)


def sample_torus(dim: int, samples: int, seed: int) -> np.ndarray:
    """``samples`` uniform points on the dim-torus from a seeded PCG64 stream."""
    rng = np.random.default_rng(seed)
    return np.exp(2j * np.pi * rng.random((samples, dim)))


def _ipow(z: np.ndarray, e: int) -> np.ndarray:
    """z**e for unit-modulus z; negative powers via conjugation."""
    if e < 0:
        z, e = np.conj(z), -e
    out = np.ones_like(z)
    base = z
    while e:
        if e & 1:
            out = out * base
        e >>= 1
        if e:
            base = base * base
    return out


def _matrix(d: int) -> np.ndarray:
    if d == 1:
        return np.ones((1, 1), dtype=np.int64)
    return reduction_matrix(d).entries


def eval_g(d: int, z) -> complex | np.ndarray:
    """g_d(z) = sum_k prod_j z_j^{c_jk} with c_jk from x^k mod Phi_d(x).

    ``z`` is one torus point or a batch of shape (..., phi(d)).
    """
    c = _matrix(int(d))
    phi = c.shape[0]
    z = np.asarray(z, dtype=np.complex128)
    if z.shape[-1] != phi:
        raise ValueError(f"g_{d} takes {phi} coordinates, got {z.shape[-1]}")
    # powers[j][e] for every exponent e occurring in row j
    powers = [{e: _ipow(z[..., j], int(e)) for e in np.unique(c[j])} for j in range(phi)]
    total = np.zeros(z.shape[:-1], dtype=np.complex128)
    for k in range(c.shape[1]):
        term = np.ones(z.shape[:-1], dtype=np.complex128)
        for j in range(phi):
            e = c[j, k]
            if e:
                term = term * powers[j][e]
        total = total + term
    return complex(total) if total.ndim == 0 else total


def g_prime_closed(z) -> complex | np.ndarray:
    """g_r for r prime: z_1 + ... + z_{r-1} + 1 / (z_1 ... z_{r-1})."""
    z = np.asarray(z, dtype=np.complex128)
    out = z.sum(axis=-1) + np.conj(z.prod(axis=-1))
    return complex(out) if out.ndim == 0 else out


def eval_h(r: int, s: int, z, variant: str = "corrected") -> complex | np.ndarray:
    """The four-term Laurent map for d = r s, r and s distinct odd primes.

    ``z`` has shape (..., r-1, s-1). ``variant="printed"`` starts the first
    double sum at column 1 instead of 0, which drops r - 1 terms.
    """
    if r == s or not (is_prime(r) and is_prime(s)) or r % 2 == 0 or s % 2 == 0:
        raise ValueError("h is defined here for distinct odd primes r, s")
    z = np.asarray(z, dtype=np.complex128)
    if z.shape[-2:] != (r - 1, s - 1):
        raise ValueError(f"expected a ({r - 1}, {s - 1}) grid, got {z.shape[-2:]}")
    start = {"corrected": 0, "printed": 1}[variant]
    zc = np.conj(z)
    out = (
        z[..., :, start:].sum(axis=(-2, -1))
        + zc.prod(axis=-1).sum(axis=-1)
        + zc.prod(axis=-2).sum(axis=-1)
        + z.prod(axis=(-2, -1))
    )
    return complex(out) if out.ndim == 0 else out


def compare_h_g_images(r: int, s: int, samples: int = 2_000_000, seed: int = 0) -> VerifyReport:
    """Heuristic: sampled images of h_rs and g_rs are mutually close.

    Not a verification: both images are approximated by random samples and
    compared with bidirectional nearest-neighbour distance, tolerance 0.05 d.
    """
    t0 = time.perf_counter()
    d = r * s
    rng_seed = np.random.SeedSequence(seed).spawn(2)
    zg = sample_torus(totient(d), samples, int(rng_seed[0].generate_state(1)[0]))
    zh = sample_torus((r - 1) * (s - 1), samples, int(rng_seed[1].generate_state(1)[0]))
    gv = eval_g(d, zg)
    hv = eval_h(r, s, zh.reshape(samples, r - 1, s - 1))
    tree_g = cKDTree(np.column_stack([gv.real, gv.imag]))
    tree_h = cKDTree(np.column_stack([hv.real, hv.imag]))
    h_to_g = float(tree_g.query(np.column_stack([hv.real, hv.imag]))[0].max())
    g_to_h = float(tree_h.query(np.column_stack([gv.real, gv.imag]))[0].max())
    tol = 0.05 * d
    defect = max(h_to_g, g_to_h)
    return VerifyReport(
        check="h-vs-g (heuristic)",
        params={"r": r, "s": s, "samples": samples, "seed": seed},
        passed=defect < tol,
        max_defect=defect,
        tolerance=tol,
        elapsed=time.perf_counter() - t0,
        details={"h_to_g": h_to_g, "g_to_h": g_to_h, "heuristic": True},
    )


# ---------------------------------------------------------------- containment


def _odd_prime_power_base(q: int) -> int:
    pairs = factorize(q).pairs if q >= 2 else ()
    if len(pairs) != 1 or pairs[0][0] == 2:
        raise HypothesisViolated(f"{q} is not a power of an odd prime")
    return pairs[0][0]


def verify_containment(
    q: int, w: int, tolerance: float = 1e-8, threads: int | None = None
) -> VerifyReport:
    """Check sigma_X(y) = g_d(e(y/q), e(w y/q), ..., e(w^(phi(d)-1) y/q)) per superclass."""
    t0 = time.perf_counter()
    q = int(q)
    p = _odd_prime_power_base(q)
    spec = OrbitSpec(q, w)
    d = spec.order
    if (p - 1) % d:
        raise HypothesisViolated(f"order {d} of {w} mod {q} does not divide p - 1 = {p - 1}")
    img = image(spec, threads=threads)
    reps = img.representatives.astype(np.uint64)
    table = root_table(q)
    phi = totient(d)
    powers = [pow(spec.omega, j, q) for j in range(phi)]

    def work(a, b):
        chunk = reps[a:b]
        coords = np.stack(
            [table[((chunk * np.uint64(x)) % np.uint64(q)).astype(np.int64)] for x in powers],
            axis=-1,
        )
        return np.abs(img.rep_values[a:b] - eval_g(d, coords))

    defects = map_chunks(work, len(reps), threads)
    worst = float(defects.max())
    return VerifyReport(
        check="containment",
        params={"modulus": q, "omega": spec.omega},
        passed=worst < tolerance,
        max_defect=worst,
        tolerance=tolerance,
        elapsed=time.perf_counter() - t0,
        details={"d": d, "p": p, "superclasses": int(len(reps))},
    )


# ---------------------------------------------------------------- hypocycloids


@dataclass(frozen=True)
class HypocycloidRegion:
    """Region bounded by theta -> (r-1) e(theta) + e((1-r) theta).

    ``boundary`` holds the samples at theta = k/N; the closing edge from the
    last sample back to the first is implicit.
    """

    r: int
    boundary: np.ndarray

    @property
    def closed_boundary(self) -> np.ndarray:
        return np.append(self.boundary, self.boundary[:1])


def hypocycloid_point(r: int, theta):
    return (r - 1) * np.exp(2j * np.pi * np.asarray(theta)) + np.exp(
        2j * np.pi * (1 - r) * np.asarray(theta)
    )


def hypocycloid(r: int, n_samples: int = DEFAULT_BOUNDARY_SAMPLES) -> HypocycloidRegion:
    if r < 2:
        raise ValueError("a hypocycloid needs r >= 2")
    if n_samples < 1024:
        raise ValueError("use at least 1024 boundary samples")
    theta = np.arange(n_samples) / n_samples
    b = hypocycloid_point(r, theta)
    b[0] = r  # exact cusp
    b.setflags(write=False)
    return HypocycloidRegion(r, b)


def _segment_distance(z: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Distance from each z (shape (m, 1)) to each segment [a, b] (shape (N,))."""
    ab = b - a
    denom = np.abs(ab) ** 2
    denom = np.where(denom == 0, 1.0, denom)
    t = np.clip(((z - a) * np.conj(ab)).real / denom, 0.0, 1.0)
    return np.abs(z - (a + t * ab))


def _winding(z: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Winding number of the closed polyline about each z (crossing-number form)."""
    ay, by = a.imag, b.imag
    cross = (b.real - a.real) * (z.imag - ay) - (z.real - a.real) * (by - ay)
    up = (ay <= z.imag) & (by > z.imag) & (cross > 0)
    down = (ay > z.imag) & (by <= z.imag) & (cross < 0)
    return up.sum(axis=-1) - down.sum(axis=-1)


def _edge_bins(a: np.ndarray, b: np.ndarray, lo: float, hi: float, nbins: int) -> list[np.ndarray]:
    """Indices of the edges whose closed y-span meets each horizontal bin."""
    width = (hi - lo) / nbins
    ymin = np.minimum(a.imag, b.imag)
    ymax = np.maximum(a.imag, b.imag)
    first = np.clip(np.floor((ymin - lo) / width).astype(np.int64) - 1, 0, nbins - 1)
    last = np.clip(np.floor((ymax - lo) / width).astype(np.int64) + 1, 0, nbins - 1)
    bins: list[list[int]] = [[] for _ in range(nbins)]
    for e, (f, l) in enumerate(zip(first, last)):
        for k in range(f, l + 1):
            bins[k].append(e)
    return [np.asarray(x, dtype=np.int64) for x in bins]


def contains(region: HypocycloidRegion, zs, eps: float = 1e-6, chunk: int = 2048) -> np.ndarray:
    """Vectorized membership: winding number nonzero or within eps of the boundary.

    Only edges whose y-span meets a point's horizontal bin can contribute to
    its crossing count, so points are processed bin by bin.
    """
    zs = np.atleast_1d(np.asarray(zs, dtype=np.complex128))
    out = np.zeros(zs.shape, dtype=bool)
    r = region.r
    mod = np.abs(zs)
    # H_r lies in the disk of radius r and contains the disk of radius r - 2
    out[mod < r - 2] = True
    todo = np.flatnonzero((mod >= r - 2) & (mod <= r + eps))
    if len(todo) == 0:
        return out
    a = region.boundary
    b = np.roll(a, -1)
    nbins = 512
    lo, hi = -float(r) - 1.0, float(r) + 1.0
    bins = _edge_bins(a, b, lo, hi, nbins)
    which = np.clip(np.floor((zs[todo].imag - lo) / ((hi - lo) / nbins)).astype(np.int64), 0, nbins - 1)
    order = np.argsort(which, kind="stable")
    todo, which = todo[order], which[order]
    starts = np.searchsorted(which, np.arange(nbins + 1))
    outside = []
    for k in range(nbins):
        edges = bins[k]
        for s0 in range(starts[k], starts[k + 1], chunk):
            idx = todo[s0 : min(s0 + chunk, starts[k + 1])]
            inside = _winding(zs[idx][:, None], a[edges], b[edges]) != 0
            out[idx] = inside
            outside.append(idx[~inside])
    rest = np.concatenate(outside)
    for s0 in range(0, len(rest), 256):
        idx = rest[s0 : s0 + 256]
        out[idx] = _segment_distance(zs[idx][:, None], a, b).min(axis=-1) < eps
    return out


def in_hypocycloid(region: HypocycloidRegion, z: complex, eps: float = 1e-6) -> bool:
    return bool(contains(region, [z], eps)[0])


def boundary_distance(region: HypocycloidRegion, zs) -> np.ndarray:
    zs = np.atleast_1d(np.asarray(zs, dtype=np.complex128))
    a = region.boundary
    b = np.roll(a, -1)
    return np.concatenate(
        [_segment_distance(zs[i : i + 256][:, None], a, b).min(axis=-1) for i in range(0, len(zs), 256)]
    )


def verify_hypocycloid(
    q: int,
    w: int,
    eps: float = 1e-6,
    n_boundary: int = DEFAULT_BOUNDARY_SAMPLES,
    diagonal_samples: int = 1000,
    seed: int = 0,
    threads: int | None = None,
) -> VerifyReport:
    """Every period value lies in H_r (r = d odd prime), and g_r on the diagonal lands on the boundary."""
    t0 = time.perf_counter()
    q = int(q)
    p = _odd_prime_power_base(q)
    spec = OrbitSpec(q, w)
    r = spec.order
    if not (is_prime(r) and r % 2 == 1):
        raise HypothesisViolated(f"orbit size {r} is not an odd prime")
    if (p - 1) % r:
        raise HypothesisViolated(f"orbit size {r} does not divide p - 1 = {p - 1}")
    region = hypocycloid(r, n_boundary)
    vals = image(spec, threads=threads).distinct
    inside = contains(region, vals, eps)
    theta = np.random.default_rng(seed).random(diagonal_samples)
    diag = g_prime_closed(np.repeat(np.exp(2j * np.pi * theta)[:, None], r - 1, axis=1))
    param_defect = float(np.abs(diag - hypocycloid_point(r, theta)).max())
    boundary_defect = float(boundary_distance(region, diag).max())
    # chord sagitta of the polygon itself, measured at the sample midpoints;
    # it exceeds eps once r >= 5 at the default N
    mids = hypocycloid_point(r, (np.arange(n_boundary) + 0.5) / n_boundary)
    polygon_error = float(boundary_distance(region, mids).max())
    band = max(eps, 1.5 * polygon_error)
    passed = bool(inside.all()) and boundary_defect < band and param_defect < 1e-12
    return VerifyReport(
        check="hypocycloid",
        params={"modulus": q, "omega": spec.omega, "seed": seed},
        passed=passed,
        max_defect=boundary_defect,
        tolerance=band,
        elapsed=time.perf_counter() - t0,
        details={
            "r": r,
            "eps": eps,
            "polygon_error": polygon_error,
            "values": int(len(vals)),
            "outside": int((~inside).sum()),
            "diagonal_parametrization_defect": param_defect,
            "boundary_samples": n_boundary,
        },
    )


# ---------------------------------------------------------------- equidistribution


def find_root_of_unity(q: int, d: int) -> int:
    """Smallest unit mod q of multiplicative order exactly d."""
    q, d = int(q), int(d)
    phi = totient(q)
    if d < 1 or phi % d:
        raise NoSuchRoot(f"{d} does not divide phi({q}) = {phi}")
    if d == 1:
        return 1
    primes = [p for p, _ in factorize(d).pairs]
    for w in range(2, q):
        if gcd(w, q) != 1 or pow(w, d, q) != 1:
            continue
        if all(pow(w, d // p, q) != 1 for p in primes):
            return w
    raise NoSuchRoot(f"no element of order {d} modulo {q}")


@dataclass(frozen=True)
class LambdaSet:
    """The q points (l/q)(1, w, ..., w^(phi(d)-1)) mod 1, stored as integer numerators."""

    q: int
    d: int
    root: int
    numerators: np.ndarray

    @property
    def points(self) -> np.ndarray:
        return self.numerators / self.q

    @property
    def dim(self) -> int:
        return self.numerators.shape[1]

    def __len__(self):
        return self.q


def lambda_set(q: int, d: int) -> LambdaSet:
    q, d = int(q), int(d)
    _odd_prime_power_base(q)
    if d < 2:
        raise ValueError("lambda_set needs d >= 2")
    w = find_root_of_unity(q, d)
    ell = np.arange(q, dtype=np.int64)
    cols = [(ell * pow(w, j, q)) % q for j in range(totient(d))]
    nums = np.stack(cols, axis=1)
    nums.setflags(write=False)
    return LambdaSet(q, d, w, nums)


def weyl_sum(lam: LambdaSet, v) -> tuple[complex, complex]:
    """Direct sum of e(u . v) over the set, and the 0-or-q value predicted from f(w)."""
    v = np.asarray(v, dtype=np.int64)
    if v.shape != (lam.dim,):
        raise ValueError(f"frequency vector must have length {lam.dim}")
    computed = complex(np.exp(2j * np.pi * (lam.points @ v.astype(float))).sum())
    f_at_root = sum(int(vj) * pow(lam.root, j, lam.q) for j, vj in enumerate(v))
    predicted = complex(lam.q if f_at_root % lam.q == 0 else 0)
    return computed, predicted


def _cell_index(points, grid: int):
    if isinstance(points, LambdaSet):
        return (points.numerators * grid) // points.q
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    return np.minimum(np.floor(pts * grid).astype(np.int64), grid - 1)


def discrepancy_estimate(points, grid: int) -> float:
    """Max |fraction inside - volume| over boxes whose corners lie on {k/grid}.

    Accepts a LambdaSet (cells computed in exact integer arithmetic) or an
    (N, m) array of points in [0, 1)^m, m <= 3.
    """
    grid = int(grid)
    if grid < 2:
        raise ValueError("grid must be >= 2")
    cells = _cell_index(points, grid)
    n_pts, dim = cells.shape
    if dim > 3:
        raise DimensionTooHigh(f"dimension {dim} > 3")
    hist = np.zeros((grid,) * dim, dtype=np.int64)
    np.add.at(hist, tuple(cells.T), 1)
    cum = hist
    for ax in range(dim):
        cum = np.cumsum(cum, axis=ax)
    # prefix[i1,..,im] = number of points with cell < i along every axis
    prefix = np.zeros((grid + 1,) * dim, dtype=np.int64)
    prefix[(slice(1, None),) * dim] = cum
    lo, hi = np.triu_indices(grid + 1, k=1)
    lengths = (hi - lo) / grid
    count = np.zeros((len(lo),) * dim, dtype=np.int64)
    for corner in itertools.product((0, 1), repeat=dim):
        idx = np.ix_(*[hi if c else lo for c in corner])
        sign = (-1) ** (dim - sum(corner))
        count += sign * prefix[idx]
    volume = np.ones((len(lo),) * dim)
    for ax in range(dim):
        shape = [1] * dim
        shape[ax] = -1
        volume = volume * lengths.reshape(shape)
    return float(np.abs(count / n_pts - volume).max())


# ---------------------------------------------------------------- prime powers


def sfs_radius(r: int) -> float:
    """Shapley-Folkman-Starr distance bound 2 sqrt(2) r sin(pi / r)."""
    return 2.0 * sqrt(2.0) * r * sin(pi / r)


def minkowski_decomposition_check(
    b: int, r: int, samples: int = 10_000, seed: int = 0, tolerance: float = 1e-9
) -> VerifyReport:
    """g_{r^b}(z) against the sum of r^(b-1) copies of g_r on interleaved coordinates."""
    t0 = time.perf_counter()
    if b < 2 or not is_prime(r) or r % 2 == 0:
        raise HypothesisViolated("need b >= 2 and r an odd prime")
    d = r**b
    block = r ** (b - 1)
    phi = totient(d)
    z = sample_torus(phi, samples, seed)
    lhs = eval_g(d, z)
    # 0-based: group j uses coordinates j, j + block, ..., j + (r-2) block
    rhs = sum(g_prime_closed(z[:, j : j + (r - 1) * block : block]) for j in range(block))
    defects = np.abs(lhs - rhs)
    ones = eval_g(d, np.ones(phi))
    radius = sfs_radius(r)
    worst = float(defects.max())
    return VerifyReport(
        check="minkowski",
        params={"r": r, "b": b, "samples": samples, "seed": seed},
        passed=worst < tolerance and abs(ones - d) < tolerance,
        max_defect=worst,
        tolerance=tolerance,
        elapsed=time.perf_counter() - t0,
        details={"sfs_radius": radius, "all_ones_value": ones, "summands": block},
    )


def gauss17_check() -> tuple[float, float, float]:
    """16 cos(2 pi / 17) against Gauss' nested radical."""
    s17 = sqrt(17.0)
    lhs = 16.0 * cos(2.0 * pi / 17.0)
    inner = sqrt(34.0 - 2.0 * s17)
    rhs = -1.0 + s17 + inner + 2.0 * sqrt(17.0 + 3.0 * s17 - inner - 2.0 * sqrt(34.0 + 2.0 * s17))
    return lhs, rhs, abs(lhs - rhs)


def g_image_samples(d: int, samples: int, seed: int, threads: int | None = None) -> np.ndarray:
    z = sample_torus(totient(d) if d > 1 else 1, samples, seed)
    return map_chunks(lambda a, b: np.atleast_1d(eval_g(d, z[a:b])), samples, threads)


def coverage_fraction(q: int, w: int, samples: int = 200_000, seed: int = 0, cell: float = 0.1) -> float:
    """Fraction of occupied cells of the sampled g_d image that also hold a period value.

    Qualitative witness of the filling-out statement: it should grow along a
    sequence of moduli q = 1 mod d.
    """
    spec = OrbitSpec(q, w)
    g = g_image_samples(spec.order, samples, seed)
    vals = image(spec).distinct

    def cells(zs):
        return set(map(tuple, np.floor(np.column_stack([zs.real, zs.imag]) / cell).astype(np.int64)))

    target = cells(g)
    return len(target & cells(vals)) / len(target)

