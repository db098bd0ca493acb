"""Exact modular arithmetic on Python integers.

Everything here is a pure function; residues are normalized to [0, n).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

from .errors import NotAUnit, NotCoprime

# Trial division is only intended for desk-scale moduli.
MAX_MODULUS = 2**32


@dataclass(frozen=True)
class Factorization:
    """Prime factorization as ``(prime, exponent)`` pairs, primes increasing."""

    pairs: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.pairs]

    def value(self) -> int:
        out = 1
        for p, e in self.pairs:
            out *= p**e
        return out

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    i = 5
    while i * i <= n:
        if n % i == 0 or n % (i + 2) == 0:
            return False
        i += 6
    return True


@lru_cache(maxsize=4096)
def _factor_pairs(n: int) -> tuple[tuple[int, int], ...]:
    pairs = []
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            pairs.append((p, e))
    p = 5
    step = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            pairs.append((p, e))
        p += step
        step = 6 - step
    if n > 1:
        pairs.append((n, 1))
    return tuple(pairs)


def factorize(n: int) -> Factorization:
    """Factor ``n >= 1`` by trial division; ``factorize(1)`` is empty."""
    n = int(n)
    if n < 1:
        raise ValueError(f"factorize expects n >= 1, got {n}")
    return Factorization(_factor_pairs(n))


def totient(n: int) -> int:
    n = int(n)
    if n < 1:
        raise ValueError(f"totient expects n >= 1, got {n}")
    out = n
    for p, _ in _factor_pairs(n):
        out -= out // p
    return out


def divisors(n: int) -> list[int]:
    """All positive divisors of n in increasing order."""
    divs = [1]
    for p, e in _factor_pairs(int(n)):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def is_odd_prime_power(q: int) -> bool:
    pairs = _factor_pairs(int(q)) if q >= 2 else ()
    return len(pairs) == 1 and pairs[0][0] % 2 == 1


def _require_unit(w: int, n: int) -> int:
    w %= n
    if gcd(w, n) != 1:
        raise NotAUnit(f"{w} is not a unit modulo {n}")
    return w


def mult_order(w: int, n: int) -> int:
    """Multiplicative order of ``w`` modulo ``n``.

    Starts from phi(n) and strips prime factors while the power stays 1.
    """
    n = int(n)
    if n < 2:
        raise ValueError(f"modulus must be >= 2, got {n}")
    w = _require_unit(int(w), n)
    order = totient(n)
    for p, e in _factor_pairs(order):
        for _ in range(e):
            if pow(w, order // p, n) == 1:
                order //= p
            else:
                break
    return order


def crt_combine(residues, moduli) -> int:
    """Solve x = r_i (mod m_i) for pairwise coprime moduli; result in [0, prod m_i)."""
    x, m = 0, 1
    for r, mi in zip(residues, moduli):
        if gcd(m, mi) != 1:
            raise NotCoprime(f"moduli {m} and {mi} share a factor")
        # x + m*t = r (mod mi)
        t = ((r - x) * pow(m, -1, mi)) % mi if mi > 1 else 0
        x += m * t
        m *= mi
    return x % m


def crt_split(w: int, m: int, n: int) -> tuple[int, int]:
    """Image of the unit ``w`` mod ``m*n`` under (Z/mn)^x -> (Z/m)^x x (Z/n)^x."""
    m, n = int(m), int(n)
    if gcd(m, n) != 1:
        raise NotCoprime(f"gcd({m}, {n}) = {gcd(m, n)}")
    mn = m * n
    w = int(w) % mn
    if gcd(w, mn) != 1:
        raise NotAUnit(f"{w} is not a unit modulo {mn}")
    return w % m, w % n


def orbit(w: int, n: int, y: int = 1) -> list[int]:
    """``[y, w*y, w^2*y, ...] mod n`` up to the first repetition."""
    n = int(n)
    w = _require_unit(int(w), n)
    y = int(y) % n
    out = [y]
    x = (y * w) % n
    while x != y:
        out.append(x)
        x = (x * w) % n
    return out


@dataclass(frozen=True)
class OrbitSpec:
    """A modulus, a unit generator and the orbit of 1 it generates."""

    modulus: int
    omega: int
    order: int = field(init=False)
    orbit: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        n = int(self.modulus)
        if n < 2:
            raise ValueError(f"modulus must be >= 2, got {n}")
        if n > MAX_MODULUS:
            raise ValueError(f"modulus {n} exceeds supported range 2^32")
        w = _require_unit(int(self.omega), n)
        object.__setattr__(self, "modulus", n)
        object.__setattr__(self, "omega", w)
        d = mult_order(w, n)
        object.__setattr__(self, "order", d)
        xs = [1]
        for _ in range(d - 1):
            xs.append((xs[-1] * w) % n)
        object.__setattr__(self, "orbit", tuple(xs))

    @property
    def n(self) -> int:
        return self.modulus

    @property
    def d(self) -> int:
        return self.order

    @property
    def symmetry_order(self) -> int:
        """k = gcd(n, omega - 1)."""
        return gcd(self.modulus, self.omega - 1)

