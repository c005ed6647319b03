"""Small deterministic integer helpers (trial division is enough at this scale)."""
from __future__ import annotations

from math import gcd, isqrt


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of ``|n|`` as ``{p: e}``; empty for 0 and +-1."""
    n = abs(n)
    out: dict[int, int] = {}
    if n < 2:
        return out
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        f += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    f = 5
    r = isqrt(n)
    while f <= r:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


def prime_power(n: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` when ``n = p**k`` with ``k >= 1``, else None."""
    fac = factorize(n)
    if len(fac) != 1:
        return None
    ((p, k),) = fac.items()
    return p, k


def v3(n: int) -> int:
    """3-adic valuation of a nonzero integer."""
    n = abs(n)
    k = 0
    while n % 3 == 0:
        n //= 3
        k += 1
    return k


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b) if a and b else 0
