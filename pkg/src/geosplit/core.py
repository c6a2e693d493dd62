"""Exact arithmetic foundation: 2x2 integer matrices, the projective
residue group Xi(N) = SL2(Z/N)/{+-I}, congruence subgroup membership,
partitions and small number-theoretic helpers.

Group elements are stored as canonical 4-tuples (a, b, c, d) of residues:
the lexicographically smaller of the tuple and its negation mod N.  All
hot loops work on bare tuples; the thin wrapper classes below exist for
the public API and validate their invariants on construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

# exact rationals throughout the density pipeline
Rational = Fraction

DEFAULT_GROUP_CAP = 10**7


class CapExceeded(Exception):
    """A group or coset enumeration exceeded the configured size cap."""


class ConsistencyError(Exception):
    """Two routes that must agree disagreed; indicates an implementation bug."""


class Family(str, Enum):
    GAMMA0 = "gamma0"
    GAMMA1 = "gamma1"
    GAMMA = "gamma"


@dataclass(frozen=True)
class SubgroupSpec:
    family: Family
    level: int

    def __post_init__(self):
        if self.level < 2:
            raise ValueError("level must be >= 2")

    def __str__(self):
        return f"{self.family.value}({self.level})"


# ---------------------------------------------------------------------------
# projective residue matrices as canonical tuples

def canon(a, b, c, d, n):
    """Canonical representative of {M, -M} mod n: the lex-smaller tuple."""
    a %= n; b %= n; c %= n; d %= n
    na = (n - a) % n; nb = (n - b) % n; nc = (n - c) % n; nd = (n - d) % n
    if (na, nb, nc, nd) < (a, b, c, d):
        return (na, nb, nc, nd)
    return (a, b, c, d)


def mul(x, y, n):
    """Product in Xi(n) of canonical tuples x, y."""
    a, b, c, d = x
    e, f, g, h = y
    return canon(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h, n)


def inv(x, n):
    """Inverse in Xi(n): adjugate of a determinant-one matrix."""
    a, b, c, d = x
    return canon(d, -b, -c, a, n)


def identity(n):
    return canon(1, 0, 0, 1, n)


def matpow(x, k, n):
    """k-th power in Xi(n), k >= 0, by binary exponentiation."""
    r = identity(n)
    while k:
        if k & 1:
            r = mul(r, x, n)
        x = mul(x, x, n)
        k >>= 1
    return r


@dataclass(frozen=True)
class ProjectiveResidueMatrix:
    """An element of Xi(N) = SL2(Z/N)/{+-I}, stored canonically."""

    a: int
    b: int
    c: int
    d: int
    level: int

    def __post_init__(self):
        n = self.level
        if n < 2:
            raise ValueError("level must be >= 2")
        if (self.a * self.d - self.b * self.c) % n != 1 % n:
            raise ValueError("determinant must be 1 mod level")
        t = canon(self.a, self.b, self.c, self.d, n)
        if t != (self.a, self.b, self.c, self.d):
            object.__setattr__(self, "a", t[0])
            object.__setattr__(self, "b", t[1])
            object.__setattr__(self, "c", t[2])
            object.__setattr__(self, "d", t[3])

    @property
    def tuple(self):
        return (self.a, self.b, self.c, self.d)

    def __mul__(self, other):
        if self.level != other.level:
            raise ValueError("level mismatch")
        return ProjectiveResidueMatrix(*mul(self.tuple, other.tuple, self.level), self.level)

    def inverse(self):
        return ProjectiveResidueMatrix(*inv(self.tuple, self.level), self.level)


def proj(a, b, c, d, level):
    return ProjectiveResidueMatrix(a, b, c, d, level)


# ---------------------------------------------------------------------------
# integer matrices (hyperbolic representatives); Python ints are unbounded,
# so powers of norm ~1e6 matrices need no overflow handling

@dataclass(frozen=True)
class IntegerMatrix:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError("determinant must be 1")

    @property
    def trace(self):
        return self.a + self.d

    def __mul__(self, other):
        return IntegerMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative powers not needed")
        r = IntegerMatrix(1, 0, 0, 1)
        x = self
        while k:
            if k & 1:
                r = r * x
            x = x * x
            k >>= 1
        return r

    def reduce_mod(self, level):
        """Projection SL2(Z) -> Xi(level)."""
        return ProjectiveResidueMatrix(self.a, self.b, self.c, self.d, level)


def reduce_mod(m: IntegerMatrix, level: int) -> ProjectiveResidueMatrix:
    return m.reduce_mod(level)


# ---------------------------------------------------------------------------
# subgroup membership and element order

def is_member_tuple(g, family, n):
    """Does some lift +-M of g satisfy the congruences of the family mod n?"""
    a, b, c, d = g
    if c % n != 0:
        return False
    if family == Family.GAMMA0:
        return True
    diag_ok = (a % n == 1 % n and d % n == 1 % n) or (a % n == n - 1 and d % n == n - 1)
    if not diag_ok:
        return False
    if family == Family.GAMMA1:
        return True
    return b % n == 0


def is_member(g: ProjectiveResidueMatrix, s: SubgroupSpec) -> bool:
    if g.level != s.level:
        raise ValueError("level mismatch")
    return is_member_tuple(g.tuple, s.family, s.level)


def order_in_xi_tuple(g, n):
    """Least m >= 1 with g^m = I in Xi(n)."""
    e = identity(n)
    x = g
    m = 1
    while x != e:
        x = mul(x, g, n)
        m += 1
    return m


def order_in_xi(g: ProjectiveResidueMatrix) -> int:
    return order_in_xi_tuple(g.tuple, g.level)


# ---------------------------------------------------------------------------
# enumeration of Xi(N)

def xi_order(n):
    """|Xi(N)|: |SL2(Z/N)| / 2 for N > 2 (where -I != I), 6 for N = 2."""
    if n == 2:
        return 6
    f = Fraction(n**3, 2)
    for p in prime_factors(n):
        f *= Fraction(p * p - 1, p * p)
    assert f.denominator == 1
    return int(f)


@lru_cache(maxsize=32)
def enumerate_xi(n, cap=DEFAULT_GROUP_CAP):
    """Sorted list of all canonical tuples of Xi(n).

    Walks unimodular first columns (a, c); completions of a column form a
    single orbit (b, d) -> (b + ta, d + tc), so each element is produced
    exactly once for N > 2 after fixing the column sign.
    """
    if xi_order(n) > cap:
        raise CapExceeded(f"|Xi({n})| = {xi_order(n)} exceeds cap {cap}")
    if n == 2:
        out = [
            (a, b, c, d)
            for a in range(2) for b in range(2) for c in range(2) for d in range(2)
            if (a * d - b * c) % 2 == 1
        ]
        return sorted(out)
    out = []
    for a in range(n):
        for c in range(n):
            if math.gcd(math.gcd(a, c), n) != 1:
                continue
            if ((n - a) % n, (n - c) % n) < (a, c):
                continue  # one column per {+-} pair
            g, u, v = _ext_gcd(a, c)
            ginv = pow(g, -1, n)
            d0 = (u * ginv) % n
            b0 = (-v * ginv) % n
            for t in range(n):
                out.append(canon(a, b0 + t * a, c, d0 + t * c, n))
    out.sort()
    assert len(out) == xi_order(n)
    return out


def _ext_gcd(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


# ---------------------------------------------------------------------------
# partitions: weakly decreasing tuples of positive ints

def partition(parts):
    t = tuple(sorted((int(p) for p in parts), reverse=True))
    if any(p <= 0 for p in t):
        raise ValueError("partition parts must be positive")
    return t


def partition_str(lam):
    return ",".join(str(p) for p in lam)


def parse_partition(s):
    return partition(int(tok) for tok in s.split(","))


def partition_weight(lam):
    return sum(lam)


# ---------------------------------------------------------------------------
# small arithmetic helpers

def prime_factors(n):
    out = []
    x = n
    p = 2
    while p * p <= x:
        if x % p == 0:
            out.append(p)
            while x % p == 0:
                x //= p
        p += 1
    if x > 1:
        out.append(x)
    return out


def factorize(n):
    """n = prod p^e as a list of (p, e)."""
    out = []
    x = n
    p = 2
    while p * p <= x:
        if x % p == 0:
            e = 0
            while x % p == 0:
                x //= p
                e += 1
            out.append((p, e))
        p += 1
    if x > 1:
        out.append((x, 1))
    return out


def divisors(n):
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i != n // i:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def moebius(n):
    if n == 1:
        return 1
    res = 1
    for _, e in factorize(n):
        if e > 1:
            return 0
        res = -res
    return res


def euler_phi(n):
    res = n
    for p in prime_factors(n):
        res -= res // p
    return res


def vp(x, p):
    """p-adic valuation of x; None for x = 0."""
    if x == 0:
        return None
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v
