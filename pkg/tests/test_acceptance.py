"""Acceptance criteria C1 to C11, one printed PASS/FAIL line per criterion.

Run alone with ``pytest tests/test_acceptance.py -v``; the lines are also
collected into a terminal summary section.
"""
import cmath
import subprocess
import sys
import time
from itertools import product
from math import gcd, sqrt

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from periodviz.arith import OrbitSpec, mult_order
from periodviz.asymptotic import (
    discrepancy_estimate,
    eval_g,
    gauss17_check,
    lambda_set,
    minkowski_decomposition_check,
    sample_torus,
    verify_containment,
    verify_hypocycloid,
    weyl_sum,
)
from periodviz.cli import run
from periodviz.cyclotomic import cyclotomic_poly
from periodviz.supercharacter import image, verify_multiplicativity, verify_symmetry


def report(tag, ok, detail):
    line = f"{tag} {'PASS' if ok else 'FAIL'}: {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def test_c01_golden_ratio_image(capsys):
    image(OrbitSpec(5, 4))  # warm the root table
    times = []
    for _ in range(20):
        t0 = time.perf_counter()
        img = image(OrbitSpec(5, 4))
        times.append(time.perf_counter() - t0)
    want = np.array([2, (sqrt(5) - 1) / 2, -(sqrt(5) + 1) / 2])
    got = img.distinct
    assert run(["periods", "--modulus", "5", "--omega", "4"]) == 0
    csv_vals = {
        tuple(map(float, l.split(",")[2:])) for l in capsys.readouterr().out.splitlines()[1:]
    }
    ok = (
        len(got) == 3
        and all(np.abs(got - w).min() < 1e-9 for w in want)
        and all(np.abs(want - v).min() < 1e-9 for v in got)
        and len({round(re, 9) for re, _ in csv_vals}) == 3
        and min(times) < 1e-3
    )
    report("C1", ok, f"distinct={len(got)} values={np.round(got.real, 12).tolist()} best={min(times) * 1e3:.3f}ms")


def test_c02_cyclotomic_ledger():
    listed = {1: (-1, 1), 2: (1, 1), 3: (1, 1, 1), 4: (1, 0, 1), 5: (1, 1, 1, 1, 1)}
    t0 = time.perf_counter()
    polys = {d: cyclotomic_poly(d).coefficients for d in range(1, 201)}
    elapsed = time.perf_counter() - t0
    small = all(set(polys[d]) <= {-1, 0, 1} for d in range(1, 105))
    ok = all(polys[d] == c for d, c in listed.items()) and small and -2 in polys[105] and elapsed < 1
    report("C2", ok, f"Phi_1..5 exact, unit coefficients below 105={small}, min(Phi_105)={min(polys[105])}, {elapsed:.3f}s")


def test_c03_containment():
    cases = [(7, 2), (31, 5), (97**3, 61074)]
    results = []
    for q, w in cases:
        t0 = time.perf_counter()
        rep = verify_containment(q, w, tolerance=1e-8)
        results.append((q, rep.details["d"], rep.max_defect, time.perf_counter() - t0, rep.passed))
    ok = all(r[-1] for r in results) and results[-1][3] < 60 and results[-1][1] == 3
    detail = "; ".join(f"q={q} d={d} defect={e:.1e} {t:.2f}s" for q, d, e, t, _ in results)
    report("C3", ok, detail)


def test_c04_hypocycloid():
    rep = verify_hypocycloid(97**3, 61074, eps=1e-6)
    ok = rep.passed and rep.details["outside"] == 0 and rep.max_defect < 1e-6 and rep.tolerance == 1e-6
    report("C4", ok, f"values={rep.details['values']} outside={rep.details['outside']} diagonal-to-polyline={rep.max_defect:.1e}")


def test_c05_dihedral_symmetry():
    out = []
    for n, w, k in [(255255, 254, 11), (455175, 3599, 7)]:
        rep = verify_symmetry(image(OrbitSpec(n, w)), 1e-6)
        out.append(rep.k == k and rep.passed)
    units = [w for w in range(1, 1001) if gcd(w, 1001) == 1]
    fast = all(verify_symmetry(image(OrbitSpec(1001, w)), 1e-6).passed for w in units)
    report("C5", all(out) and fast, f"k=11 case {out[0]}, k=7 case {out[1]}, all {len(units)} units of 1001 {fast}")


def brute_image(n, w):
    orbit = [pow(w, j, n) for j in range(mult_order(w, n) if n > 1 else 1)]
    return [sum(cmath.exp(2j * cmath.pi * x * y / n) for x in orbit) for y in range(n)]


def test_c06_multiplicativity():
    left, right = brute_image(7, 9 % 7), brute_image(5, 9 % 5)
    full = brute_image(35, 9)
    prod_set = [a * b for a in left for b in right]
    brute = max(
        max(min(abs(p - f) for f in full) for p in prod_set),
        max(min(abs(p - f) for p in prod_set) for f in full),
    )
    small = verify_multiplicativity(7, 5, 9, tolerance=1e-9)
    large = verify_multiplicativity(70531, 5, 54184, tolerance=1e-6)
    ok = brute < 1e-9 and small.passed and large.passed
    report("C6", ok, f"brute (7,5,9) defect={brute:.1e}, library={small.max_defect:.1e}, (70531,5,54184) defect={large.max_defect:.1e}")


def test_c07_weyl_and_discrepancy():
    lam = lambda_set(7, 3)
    worst = 0.0
    for v in product(range(-3, 4), repeat=2):
        if v == (0, 0):
            continue
        c, p = weyl_sum(lam, v)
        worst = max(worst, abs(c - p))
    weyl_ok = lam.root == 2 and worst < 1e-9 * 7
    est = [discrepancy_estimate(lambda_set(q, 3), 20) for q in (73, 961, 3571)]
    decreasing = all(a > b for a, b in zip(est, est[1:]))
    report(
        "C7",
        weyl_ok and decreasing,
        f"weyl max defect={worst:.1e} ({'ok' if weyl_ok else 'bad'}); "
        f"discrepancy 73/961/3571 = {', '.join(f'{e:.6f}' for e in est)} strictly decreasing={decreasing}",
    )


def test_c08_minkowski():
    rep = minkowski_decomposition_check(2, 3, samples=10_000, seed=0, tolerance=1e-9)
    radius_err = abs(rep.details["sfs_radius"] - 3 * sqrt(6))
    ok = rep.passed and rep.max_defect < 1e-9 and radius_err < 1e-12
    report("C8", ok, f"max defect={rep.max_defect:.1e} over 10^4 samples, SFS radius error={radius_err:.1e}")


def test_c09_even_reality_and_range():
    z4 = sample_torus(2, 10_000, seed=4)
    z6 = sample_torus(2, 10_000, seed=6)
    g4, g6 = eval_g(4, z4), eval_g(6, z6)
    imag = max(np.abs(g4.imag).max(), np.abs(g6.imag).max())
    in_range = g4.real.min() >= -4 - 1e-9 and g4.real.max() <= 4 + 1e-9
    top, bottom = eval_g(4, np.array([1, 1])), eval_g(4, np.array([-1, -1]))
    ends = abs(top - 4) < 1e-12 and abs(bottom + 4) < 1e-12
    report("C9", imag < 1e-9 and in_range and ends, f"max|Im|={imag:.1e}, g4 range ok={in_range}, endpoints {top.real:g}/{bottom.real:g}")


def test_c10_gauss17():
    lhs, rhs, defect = gauss17_check()
    report("C10", defect < 1e-12, f"16cos(2pi/17)={lhs:.15f} radical={rhs:.15f} defect={defect:.1e}")


def test_c11_render_determinism(tmp_path):
    base = ["render", "--modulus", "5", "--omega", "4", "--size", "256"]
    files = []
    for i, threads in enumerate(["1", "1", "4"]):
        path = tmp_path / f"a{i}.ppm"
        assert run(base + ["--threads", threads, "--out", str(path)]) == 0
        files.append(path.read_bytes())
    sub = tmp_path / "sub.ppm"
    subprocess.run([sys.executable, "-m", "periodviz", *base, "--out", str(sub)], check=True)
    files.append(sub.read_bytes())
    ok = all(f == files[0] for f in files) and files[0].startswith(b"P6\n256 256\n255\n")
    report("C11", ok, f"{len(files)} renders ({len(files[0])} bytes) identical={ok}")
