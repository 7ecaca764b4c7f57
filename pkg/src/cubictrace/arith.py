"""Integer arithmetic helpers: factorization, congruences, discriminants, 2x2 matrices.

Everything here is exact integer arithmetic (no floats anywhere); the square
root comparisons elsewhere in the package are done by squaring, so these
helpers stick to math.isqrt and friends.
"""
from __future__ import annotations

import math
from functools import lru_cache, reduce

# ---------------------------------------------------------------------------
# gcd / congruences


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b), g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def solve_linear_congruence(a: int, b: int, m: int) -> tuple[int, int] | None:
    """Solve a*x == b (mod m).  Return (x0, m1) describing all solutions
    x == x0 (mod m1), or None if there is no solution.  m must be positive."""
    assert m > 0
    g, inv, _ = xgcd(a % m, m)
    if b % g:
        return None
    m1 = m // g
    x0 = ((b // g) * inv) % m1
    return x0, m1


def content(coeffs) -> int:
    """gcd of an integer sequence (0 for the empty/zero sequence)."""
    return reduce(math.gcd, coeffs, 0)


# ---------------------------------------------------------------------------
# primality / factorization

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond 2**64."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = (d & -d).bit_length() - 1
    d >>= r
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """Brent-cycle Pollard rho; n must be odd composite, not a prime power trap."""
    if n % 2 == 0:
        return 2
    for c in range(1, 50):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError(f"rho failed on {n}")  # pragma: no cover


def factorint(n: int) -> dict[int, int]:
    """Prime factorization {p: e} of |n|; trial division then Pollard rho."""
    n = abs(n)
    if n in (0, 1):
        return {}
    out: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    p = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while p * p <= n and p < 1_000_000:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += wheel[i]
        i = (i + 1) % 8
    if n > 1:
        stack = [n]
        while stack:
            m = stack.pop()
            if m == 1:
                continue
            if is_prime(m):
                out[m] = out.get(m, 0) + 1
                continue
            d = _pollard_rho(m)
            stack.extend((d, m // d))
    return out


def divisors(n: int) -> list[int]:
    """Sorted positive divisors of |n| (n != 0)."""
    assert n != 0
    divs = [1]
    for p, e in factorint(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Write n = core * sq**2 with core squarefree (core carries the sign)."""
    assert n != 0
    core, sq = (1 if n > 0 else -1), 1
    for p, e in factorint(n).items():
        if e % 2:
            core *= p
        sq *= p ** (e // 2)
    return core, sq


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


@lru_cache(maxsize=None)
def is_fundamental_discriminant(d: int) -> bool:
    """True for discriminants of quadratic fields: d = 1 is excluded."""
    if d == 0 or d == 1:
        return False
    if d % 4 == 1:
        core, sq = squarefree_decomposition(d)
        return sq == 1
    if d % 4 == 0:
        m = d // 4
        if m % 4 not in (2, 3):
            return False
        core, sq = squarefree_decomposition(m)
        return sq == 1
    return False


def fundamental_discriminants(lo: int, hi: int) -> list[int]:
    """All fundamental discriminants d with lo <= d <= hi, ascending."""
    return [d for d in range(lo, hi + 1) if is_fundamental_discriminant(d)]


@lru_cache(maxsize=8)
def primes_up_to(n: int) -> tuple[int, ...]:
    """Sieve of Eratosthenes."""
    if n < 2:
        return ()
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return tuple(i for i, v in enumerate(sieve) if v)


# ---------------------------------------------------------------------------
# 2x2 integer matrices, stored as ((r, s), (t, u))

MAT2_ID = ((1, 0), (0, 1))
MAT2_NEG_ID = ((-1, 0), (0, -1))
MAT2_SWAP = ((0, 1), (1, 0))  # det -1
MAT2_FLIP_Y = ((1, 0), (0, -1))  # det -1

Mat2 = tuple[tuple[int, int], tuple[int, int]]


def mat2_mul(m: Mat2, n: Mat2) -> Mat2:
    (a, b), (c, d) = m
    (e, f), (g, h) = n
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def mat2_det(m: Mat2) -> int:
    (a, b), (c, d) = m
    return a * d - b * c


def mat2_inv(m: Mat2) -> Mat2:
    """Inverse of a matrix with det +-1."""
    (a, b), (c, d) = m
    det = a * d - b * c
    assert det in (1, -1), "only unimodular matrices can be inverted exactly"
    return ((d * det, -b * det), (-c * det, a * det))


def mat2_pow(m: Mat2, k: int) -> Mat2:
    if k < 0:
        return mat2_pow(mat2_inv(m), -k)
    out = MAT2_ID
    base = m
    while k:
        if k & 1:
            out = mat2_mul(out, base)
        base = mat2_mul(base, base)
        k >>= 1
    return out


def mat2_transpose(m: Mat2) -> Mat2:
    (a, b), (c, d) = m
    return ((a, c), (b, d))
