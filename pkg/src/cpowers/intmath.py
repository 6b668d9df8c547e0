"""Exact integer number theory helpers shared across the package.

Everything here is exact big-integer arithmetic (gmpy2 mpz under the hood);
no floats, so results feed directly into certified counting code.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, Iterator, List, Tuple

import gmpy2


def primes_up_to(n: int) -> List[int]:
    """Simple sieve up to n inclusive."""
    if n < 2:
        return []
    sieve = bytearray(b"\x01") * (n + 1)
    sieve[:2] = b"\x00\x00"
    for p in range(2, gmpy2.isqrt(n) + 1):
        if sieve[p]:
            start = p * p
            sieve[start : n + 1 : p] = b"\x00" * ((n - start) // p + 1)
    return [i for i, v in enumerate(sieve) if v]


def prime_pi(n: int) -> int:
    return len(primes_up_to(n))


@lru_cache(maxsize=8)
def _spf_table(limit: int) -> List[int]:
    """Smallest-prime-factor table for 0..limit."""
    spf = list(range(limit + 1))
    for p in range(2, gmpy2.isqrt(limit) + 1):
        if spf[p] == p:
            for m in range(p * p, limit + 1, p):
                if spf[m] == m:
                    spf[m] = p
    return spf


def factor_small(n: int, limit: int) -> Dict[int, int]:
    """Factor n <= limit using a cached smallest-prime-factor sieve."""
    spf = _spf_table(limit)
    out: Dict[int, int] = {}
    while n > 1:
        p = spf[n]
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        out[p] = e
    return out


def _pollard_rho(n: int) -> int:
    """One nontrivial factor of composite odd n."""
    n = int(n)
    if n % 2 == 0:
        return 2
    seed = 1
    while True:
        x = y = 2
        c = seed
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = gmpy2.gcd(x - y, n)
        if d != n:
            return int(d)
        seed += 1


def factorize(n: int) -> Dict[int, int]:
    """Prime factorization of n >= 1 (exact; handles 64-bit scale inputs)."""
    if n < 1:
        raise ValueError("factorize expects n >= 1")
    out: Dict[int, int] = {}
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if gmpy2.is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return dict(sorted(out.items()))


def floor_root(n: int, q: int) -> int:
    """floor(n**(1/q)) by exact integer root."""
    if n < 0:
        raise ValueError("negative radicand")
    root, _exact = gmpy2.iroot(gmpy2.mpz(n), q)
    return int(root)


def power_free_part(x: int, q: int, limit: int | None = None) -> Tuple[int, int]:
    """Decompose x = a**q * b with b q-th-power-free; returns (a, b)."""
    if x < 1:
        raise ValueError("power_free_part expects x >= 1")
    fac = factor_small(x, limit) if limit is not None and x <= limit else factorize(x)
    a = 1
    b = 1
    for p, e in fac.items():
        a *= p ** (e // q)
        b *= p ** (e % q)
    return a, b


def is_power_free(x: int, q: int, limit: int | None = None) -> bool:
    _, b = power_free_part(x, q, limit)
    return b == x


def power_free_numbers(q: int, limit: int) -> Iterator[int]:
    """Yield the q-th-power-free integers in [1, limit] in order."""
    bad = bytearray(limit + 1)
    k = 2
    while k**q <= limit:
        step = k**q
        for m in range(step, limit + 1, step):
            bad[m] = 1
        k += 1
    for n in range(1, limit + 1):
        if not bad[n]:
            yield n


def sigma0_squared_sum(limit: int) -> int:
    """sum_{n <= limit} sigma_0(n)^2 via a divisor-count sieve."""
    import numpy as np

    d = np.zeros(limit + 1, dtype=np.int64)
    for i in range(1, limit + 1):
        d[i::i] += 1
    return int(np.sum(d[1:] * d[1:], dtype=object))


def sigma0(n: int) -> int:
    """Divisor count of n, by direct trial division (cross-check oracle)."""
    count = 0
    i = 1
    while i * i <= n:
        if n % i == 0:
            count += 1 if i * i == n else 2
        i += 1
    return count
