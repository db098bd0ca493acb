import cmath
import time

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from periodviz.arith import divisors, totient
from periodviz.cyclotomic import (
    _div_one_minus,
    cyclotomic_poly,
    reduction_matrix,
)
from periodviz.errors import CoefficientOverflow


# --- oracle: Phi_d = (x^d - 1) / prod_{e | d, e < d} Phi_e by exact long division


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def poly_divmod(num, den):
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        coef = num[i + len(den) - 1] // den[-1]
        q[i] = coef
        for j, c in enumerate(den):
            num[i + j] -= coef * c
    return q, num[: len(den) - 1]


_oracle_memo = {}


def oracle_phi(d):
    if d not in _oracle_memo:
        num = [-1] + [0] * (d - 1) + [1]
        den = [1]
        for e in divisors(d)[:-1]:
            den = poly_mul(den, oracle_phi(e))
        q, rem = poly_divmod(num, den)
        assert not any(rem)
        _oracle_memo[d] = q
    return _oracle_memo[d]


def test_first_five():
    assert cyclotomic_poly(1).coefficients == (-1, 1)
    assert cyclotomic_poly(2).coefficients == (1, 1)
    assert cyclotomic_poly(3).coefficients == (1, 1, 1)
    assert cyclotomic_poly(4).coefficients == (1, 0, 1)
    assert cyclotomic_poly(5).coefficients == (1, 1, 1, 1, 1)
    assert str(cyclotomic_poly(4)) == "x^2 + 1"
    assert str(cyclotomic_poly(1)) == "x - 1"


def test_matches_long_division_oracle():
    for d in range(1, 201):
        assert list(cyclotomic_poly(d).coefficients) == oracle_phi(d), d


def test_small_coefficients_below_105():
    for d in range(1, 105):
        assert set(cyclotomic_poly(d).coefficients) <= {-1, 0, 1}
    phi105 = cyclotomic_poly(105)
    assert phi105.degree == 48
    assert -2 in phi105.coefficients


def test_degree_bookkeeping():
    for d in range(1, 300):
        assert sum(cyclotomic_poly(e).degree for e in divisors(d)) == d
        assert cyclotomic_poly(d).coefficients[-1] == 1


@pytest.mark.parametrize("d", [1, 7, 12, 30, 105, 210, 997])
def test_vanishes_at_primitive_roots(d):
    poly = cyclotomic_poly(d)
    for k in range(1, d + 1):
        if np.gcd(k, d) == 1:
            assert abs(poly(cmath.exp(2j * cmath.pi * k / d))) < 1e-9


def test_large_index_is_fast_and_exact():
    t0 = time.perf_counter()
    p = cyclotomic_poly(255255)
    assert time.perf_counter() - t0 < 5
    assert p.degree == totient(255255)
    # a value from the literature on cyclotomic coefficient heights
    assert max(abs(c) for c in p.coefficients) == 532


def test_overflow_raises():
    a = np.full(8, 2**61, dtype=np.int64)
    with pytest.raises(CoefficientOverflow):
        _div_one_minus(a, 1)


def test_index_range():
    with pytest.raises(ValueError):
        cyclotomic_poly(0)


def test_reduction_examples():
    m3 = reduction_matrix(3)
    assert [m3.column(k) for k in range(3)] == [(1, 0), (0, 1), (-1, -1)]
    m2 = reduction_matrix(2)
    assert [m2.column(k) for k in range(2)] == [(1,), (-1,)]
    assert reduction_matrix(4).column(3) == (0, -1)


@given(st.integers(min_value=2, max_value=120))
def test_reduction_matrix_identities(d):
    m = reduction_matrix(d)
    phi = totient(d)
    assert m.entries.shape == (phi, d)
    assert np.array_equal(m.entries[:, :phi], np.eye(phi, dtype=np.int64))
    zeta = cmath.exp(2j * cmath.pi / d)
    poly = list(cyclotomic_poly(d).coefficients)
    for k in range(d):
        col = m.column(k)
        assert abs(sum(c * zeta**j for j, c in enumerate(col)) - zeta**k) < 1e-9
        # exact: x^k - sum_j c_jk x^j is divisible by Phi_d
        diff = [-c for c in col] + [0] * max(0, k + 1 - phi)
        diff[k] += 1
        if len(diff) >= len(poly):
            _, rem = poly_divmod(diff, poly)
            assert not any(rem)
        else:
            assert not any(diff)
