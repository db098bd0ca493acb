"""Cyclotomic polynomials and the power-basis reduction matrix.

Polynomials are integer coefficient sequences, lowest degree first.
Coefficients are kept in the signed 64-bit range; leaving it raises
:class:`CoefficientOverflow` instead of wrapping.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from threading import Lock

import numpy as np

from .arith import divisors, factorize, totient
from .errors import CoefficientOverflow

INT64_MAX = 2**63 - 1
MAX_INDEX = 10**6


@dataclass(frozen=True)
class CyclotomicPolynomial:
    index: int
    coefficients: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        # Horner, highest degree first
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = "x" if k == 1 else f"x^{k}"
                body = mono if mag == 1 else f"{mag}{mono}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def _check_range(bound: int, where: str) -> None:
    if bound > INT64_MAX // 2:
        raise CoefficientOverflow(f"coefficient magnitude too large while {where}")


def _mul_one_minus(a: np.ndarray, e: int) -> np.ndarray:
    """a(x) * (1 - x^e), truncated to len(a)."""
    _check_range(2 * int(np.abs(a).max()), f"multiplying by 1 - x^{e}")
    out = a.copy()
    out[e:] -= a[:-e]
    return out


def _div_one_minus(a: np.ndarray, e: int) -> np.ndarray:
    """a(x) / (1 - x^e) as a power series truncated to len(a).

    1/(1 - x^e) = 1 + x^e + x^2e + ..., so the quotient is a cumulative sum
    taken down blocks of length e.
    """
    n = len(a)
    blocks = -(-n // e)
    _check_range(int(np.abs(a).max()) * blocks, f"dividing by 1 - x^{e}")
    padded = np.zeros(blocks * e, dtype=np.int64)
    padded[:n] = a
    return np.cumsum(padded.reshape(blocks, e), axis=0).reshape(-1)[:n]


def _mobius(n: int) -> int:
    pairs = factorize(n).pairs
    if any(e > 1 for _, e in pairs):
        return 0
    return -1 if len(pairs) % 2 else 1


_memo_lock = Lock()


@lru_cache(maxsize=None)
def _cyclotomic_coeffs(d: int) -> tuple[int, ...]:
    if d == 1:
        return (-1, 1)
    # For d > 1, Phi_d(x) = prod_{e | d} (1 - x^e)^{mu(d/e)} exactly, and only
    # terms up to x^phi(d) matter.
    length = totient(d) + 1
    series = np.zeros(length, dtype=np.int64)
    series[0] = 1
    for e in divisors(d):
        if e >= length:
            break
        mu = _mobius(d // e)
        if mu == 1:
            series = _mul_one_minus(series, e)
        elif mu == -1:
            series = _div_one_minus(series, e)
    return tuple(int(c) for c in series)


def cyclotomic_poly(d: int) -> CyclotomicPolynomial:
    """Integer coefficients of the d-th cyclotomic polynomial."""
    d = int(d)
    if not 1 <= d <= MAX_INDEX:
        raise ValueError(f"cyclotomic index must lie in [1, {MAX_INDEX}], got {d}")
    with _memo_lock:
        coeffs = _cyclotomic_coeffs(d)
    if len(coeffs) - 1 != totient(d):
        raise ArithmeticError(f"degree of Phi_{d} is {len(coeffs) - 1}, expected phi(d)")
    return CyclotomicPolynomial(d, coeffs)


@dataclass(frozen=True)
class ReductionMatrix:
    """``entries[j, k]`` is the coefficient of x^j in x^k mod Phi_d(x)."""

    index: int
    entries: np.ndarray

    @property
    def phi(self) -> int:
        return self.entries.shape[0]

    def column(self, k: int) -> tuple[int, ...]:
        return tuple(int(c) for c in self.entries[:, k])


@lru_cache(maxsize=64)
def _reduction_entries(d: int) -> np.ndarray:
    phi_poly = cyclotomic_poly(d).coefficients
    m = len(phi_poly) - 1
    cols = np.zeros((m, d), dtype=np.int64)
    cur = [0] * m
    cur[0] = 1
    for k in range(d):
        if max(abs(c) for c in cur) > INT64_MAX:
            raise CoefficientOverflow(f"reduction of x^{k} mod Phi_{d} overflows int64")
        cols[:, k] = cur
        # multiply by x, then eliminate the x^m term with Phi_d (monic)
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(m):
                cur[j] -= top * phi_poly[j]
    cols.setflags(write=False)
    return cols


def reduction_matrix(d: int) -> ReductionMatrix:
    """Matrix of x^k mod Phi_d(x) for k = 0..d-1, in the basis 1, x, ..., x^(phi(d)-1)."""
    d = int(d)
    if d < 2:
        raise ValueError(f"reduction matrix needs d >= 2, got {d}")
    return ReductionMatrix(d, _reduction_entries(d))
