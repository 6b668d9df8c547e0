"""Dense integer polynomials with exact sign evaluation, gcd and Sturm counting.

Coefficient lists are little-endian: coeffs[k] is the coefficient of x**k.
All arithmetic is exact (int / Fraction), which keeps every root-isolation
decision certifiable.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import List, Sequence, Tuple

IntPoly = Tuple[int, ...]


def normalize(coeffs: Sequence[int]) -> IntPoly:
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def degree(p: Sequence[int]) -> int:
    return len(normalize(p)) - 1


def is_zero(p: Sequence[int]) -> bool:
    return len(normalize(p)) == 0


def add(p: Sequence[int], q: Sequence[int]) -> IntPoly:
    n = max(len(p), len(q))
    return normalize([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def neg(p: Sequence[int]) -> IntPoly:
    return tuple(-c for c in p)


def sub(p: Sequence[int], q: Sequence[int]) -> IntPoly:
    return add(p, neg(q))


def mul(p: Sequence[int], q: Sequence[int]) -> IntPoly:
    if is_zero(p) or is_zero(q):
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] += a * b
    return normalize(out)


def derivative(p: Sequence[int]) -> IntPoly:
    return normalize([i * c for i, c in enumerate(p)][1:])


def content(p: Sequence[int]) -> int:
    g = 0
    for c in p:
        g = gcd(g, abs(c))
    return g or 1


def primitive(p: Sequence[int]) -> IntPoly:
    p = normalize(p)
    if not p:
        return ()
    g = content(p)
    sign = 1 if p[-1] > 0 else -1
    return tuple(sign * c // g for c in p)


def eval_at_fraction(p: Sequence[int], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(normalize(p)):
        acc = acc * x + c
    return acc


def sign_at(p: Sequence[int], x: Fraction) -> int:
    """Exact sign of p(x) at a rational point (denominator-cleared Horner)."""
    p = normalize(p)
    if not p:
        return 0
    x = Fraction(x)
    num, den = x.numerator, x.denominator
    # p(n/d) * d^deg via Horner: acc <- acc*n + c_k * d^(deg-k), k = deg..0
    d = len(p) - 1
    acc = 0
    for k in range(d, -1, -1):
        acc = acc * num + p[k] * den ** (d - k)
    return (acc > 0) - (acc < 0)


def divmod_exact(p: Sequence[int], q: Sequence[int]) -> Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]:
    """Polynomial division over Q; returns (quotient, remainder) as Fractions."""
    q = normalize(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem: List[Fraction] = [Fraction(c) for c in normalize(p)]
    quo: List[Fraction] = [Fraction(0)] * max(0, len(rem) - len(q) + 1)
    lead = Fraction(q[-1])
    while len(rem) >= len(q):
        factor = rem[-1] / lead
        shift = len(rem) - len(q)
        quo[shift] = factor
        for i, c in enumerate(q):
            rem[shift + i] -= factor * c
        while rem and rem[-1] == 0:
            rem.pop()
    return tuple(quo), tuple(rem)


def divides(q: Sequence[int], p: Sequence[int]) -> bool:
    _, r = divmod_exact(p, q)
    return all(c == 0 for c in r)


def div_by_linear_root_one(p: Sequence[int]) -> IntPoly:
    """Divide p by (x - 1); requires p(1) == 0. Exact synthetic division."""
    p = normalize(p)
    if sum(p) != 0:
        raise ValueError("(x - 1) does not divide p")
    out = [0] * (len(p) - 1)
    carry = 0
    for k in range(len(p) - 1, 0, -1):
        carry += p[k]
        out[k - 1] = carry
    return normalize(out)


def poly_gcd(p: Sequence[int], q: Sequence[int]) -> IntPoly:
    """Primitive gcd over Q, computed with Fraction Euclid (small degrees)."""
    a = [Fraction(c) for c in normalize(p)]
    b = [Fraction(c) for c in normalize(q)]
    while b:
        _, r = _frac_divmod(a, b)
        a, b = b, list(r)
    if not a:
        return ()
    # clear denominators, make primitive with positive lead
    den = 1
    for c in a:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in a]
    return primitive(ints)


def _frac_divmod(p: List[Fraction], q: List[Fraction]) -> Tuple[List[Fraction], List[Fraction]]:
    rem = list(p)
    if not q:
        raise ZeroDivisionError
    while rem and rem[-1] == 0:
        rem.pop()
    quo: List[Fraction] = []
    lead = q[-1]
    while len(rem) >= len(q):
        factor = rem[-1] / lead
        shift = len(rem) - len(q)
        for i, c in enumerate(q):
            rem[shift + i] -= factor * c
        while rem and rem[-1] == 0:
            rem.pop()
    return quo, rem


def squarefree_part(p: Sequence[int]) -> IntPoly:
    p = normalize(p)
    if len(p) <= 1:
        return p
    g = poly_gcd(p, derivative(p))
    if degree(g) == 0:
        return primitive(p)
    quo, rem = divmod_exact(p, g)
    assert all(c == 0 for c in rem)
    den = 1
    for c in quo:
        den = den * c.denominator // gcd(den, c.denominator)
    return primitive([int(c * den) for c in quo])


def _scale_positive(fracs: Sequence[Fraction]) -> IntPoly:
    """Clear denominators and divide by the content, scaling by a POSITIVE
    rational only (sign-preserving; required for Sturm chains)."""
    fracs = [Fraction(c) for c in fracs]
    while fracs and fracs[-1] == 0:
        fracs.pop()
    if not fracs:
        return ()
    den = 1
    for c in fracs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in fracs]
    g = content(ints)
    return tuple(c // g for c in ints)


def sturm_chain(p: Sequence[int]) -> List[IntPoly]:
    chain: List[IntPoly] = [squarefree_part(p)]
    d = derivative(chain[0])
    if not is_zero(d):
        chain.append(_scale_positive([Fraction(c) for c in d]))
        while True:
            _, rem = divmod_exact(chain[-2], chain[-1])
            if all(c == 0 for c in rem):
                break
            chain.append(_scale_positive([-c for c in rem]))
    return chain


def _sign_changes(chain: List[IntPoly], x: Fraction) -> int:
    signs = [sign_at(q, x) for q in chain]
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a * b < 0)


def count_roots(p: Sequence[int], lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of p in the half-open interval (lo, hi]."""
    chain = sturm_chain(p)
    return _sign_changes(chain, lo) - _sign_changes(chain, hi)


def isolate_in(p: Sequence[int], lo: Fraction, hi: Fraction) -> Tuple[Fraction, Fraction]:
    """Shrink (lo, hi) until it contains exactly one root of p, with a sign change.

    Raises ValueError if (lo, hi] contains no root.
    """
    p = squarefree_part(p)
    if sign_at(p, lo) == 0 or sign_at(p, hi) == 0:
        raise ValueError("endpoints must not be roots")
    total = count_roots(p, lo, hi)
    if total == 0:
        raise ValueError("no root in interval")
    while count_roots(p, lo, hi) > 1 or sign_at(p, lo) * sign_at(p, hi) > 0:
        mid = (lo + hi) / 2
        while sign_at(p, mid) == 0:
            mid = (lo + mid) / 2
        if count_roots(p, lo, mid) >= 1:
            hi = mid
        else:
            lo = mid
    return lo, hi


def refine_root(p: Sequence[int], lo: Fraction, hi: Fraction, width: Fraction) -> Tuple[Fraction, Fraction]:
    """Bisect a sign-change bracket of p down to the requested width."""
    slo = sign_at(p, lo)
    shi = sign_at(p, hi)
    if slo == 0 or shi == 0 or slo == shi:
        raise ValueError("refine_root needs a strict sign change")
    while hi - lo > width:
        mid = (lo + hi) / 2
        sm = sign_at(p, mid)
        if sm == 0:
            # rational root: return the exact point as a degenerate bracket
            return mid, mid
        if sm == slo:
            lo = mid
        else:
            hi = mid
    return lo, hi
