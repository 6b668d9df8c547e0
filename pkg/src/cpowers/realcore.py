"""Certified real arithmetic: midpoint-radius balls over MPFR directed rounding,
exponent representations, and the sum-comparison kernel.

Soundness contract: every operation returns an enclosure containing the exact
mathematical result for all members of the input enclosures.  MPFR guarantees
correctly rounded results per rounding mode, so endpoint arithmetic with
RoundDown/RoundUp is sound and bit-reproducible.

Equality of power sums is never concluded from interval overlap.  Two exact
escapes certify equality: radical canonicalization for rational exponents, and
reduction modulo the defining polynomial for algebraic-log exponents whose
points are powers of the base.  Numeric refinement (doubling precision) decides
strict inequalities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import gmpy2
from gmpy2 import mpfr

from . import intmath, polys

INITIAL_PRECISION = 128
MAX_PRECISION = 4096
GUARD_BITS = 16


class BallDomainError(ValueError):
    """Operation applied outside its real domain (log of <=0, division by a
    ball containing zero, ...)."""


class TailUnbounded(RuntimeError):
    """A digit-sequence exponent ran out of positions before its tail could be
    bounded at the requested precision."""


class UnresolvedComparison(RuntimeError):
    """A comparison could not be certified at the allowed precision."""


# ---------------------------------------------------------------------------
# directed-rounding contexts
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _ctx(prec: int, rnd) -> gmpy2.context:
    return gmpy2.context(precision=prec, round=rnd)


def _dn(prec: int) -> gmpy2.context:
    return _ctx(prec, gmpy2.RoundDown)


def _up(prec: int) -> gmpy2.context:
    return _ctx(prec, gmpy2.RoundUp)


def _mpfr_exact_int(n: int) -> mpfr:
    return mpfr(n, max(2, abs(int(n)).bit_length() + 1))


def _neg_exact(x: mpfr) -> mpfr:
    # bare unary minus re-rounds through the thread context; this never does
    return _ctx(x.precision, gmpy2.RoundToNearest).minus(x)


def mpfr_to_fraction(x: mpfr) -> Fraction:
    if not gmpy2.is_finite(x):
        raise BallDomainError("non-finite mpfr")
    m, e = x.as_mantissa_exp()
    m, e = int(m), int(e)
    return Fraction(m) * Fraction(2) ** e if e < 0 else Fraction(m * (1 << e))


def _fraction_endpoints(f: Fraction, prec: int) -> Tuple[mpfr, mpfr]:
    num = _mpfr_exact_int(f.numerator)
    den = _mpfr_exact_int(f.denominator)
    return _dn(prec).div(num, den), _up(prec).div(num, den)


class RealBall:
    """Closed interval [lo, hi] of exact dyadic endpoints (mpfr values)."""

    __slots__ = ("lo", "hi", "prec")

    def __init__(self, lo: mpfr, hi: mpfr, prec: int):
        if not (gmpy2.is_finite(lo) and gmpy2.is_finite(hi)):
            raise BallDomainError("non-finite endpoint")
        if lo > hi:
            raise BallDomainError("inverted interval")
        self.lo = lo
        self.hi = hi
        self.prec = prec

    # -- constructors ------------------------------------------------------

    @classmethod
    def exact_int(cls, n: int, prec: int = INITIAL_PRECISION) -> "RealBall":
        v = _mpfr_exact_int(n)
        return cls(v, v, prec)

    @classmethod
    def from_fraction(cls, f: Fraction, prec: int) -> "RealBall":
        f = Fraction(f)
        lo, hi = _fraction_endpoints(f, prec)
        return cls(lo, hi, prec)

    @classmethod
    def from_interval(cls, lo: Fraction, hi: Fraction, prec: int) -> "RealBall":
        llo, _ = _fraction_endpoints(Fraction(lo), prec)
        _, hhi = _fraction_endpoints(Fraction(hi), prec)
        return cls(llo, hhi, prec)

    @classmethod
    def from_mid_rad(cls, mid: Fraction, rad: Fraction, prec: int) -> "RealBall":
        mid, rad = Fraction(mid), Fraction(rad)
        if rad < 0:
            raise BallDomainError("negative radius")
        return cls.from_interval(mid - rad, mid + rad, prec)

    # -- views --------------------------------------------------------------

    @property
    def midpoint(self) -> Fraction:
        return (mpfr_to_fraction(self.lo) + mpfr_to_fraction(self.hi)) / 2

    @property
    def radius(self) -> Fraction:
        return (mpfr_to_fraction(self.hi) - mpfr_to_fraction(self.lo)) / 2

    @property
    def precision_bits(self) -> int:
        return self.prec

    def lo_fraction(self) -> Fraction:
        return mpfr_to_fraction(self.lo)

    def hi_fraction(self) -> Fraction:
        return mpfr_to_fraction(self.hi)

    def mid_float(self) -> float:
        return float(gmpy2.mpfr((self.lo + self.hi) / 2, 53))

    def is_exact(self) -> bool:
        return self.lo == self.hi

    def __repr__(self) -> str:
        return f"RealBall({self.mid_float():.12g} ± {float(gmpy2.mpfr(self.hi - self.lo, 53)) / 2:.3g} @{self.prec}b)"

    # -- predicates ----------------------------------------------------------

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def contains_fraction(self, f: Fraction) -> bool:
        f = Fraction(f)
        return self.lo_fraction() <= f <= self.hi_fraction()

    def overlaps(self, other: "RealBall") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def sign(self) -> Optional[int]:
        """Certified sign: -1/+1 if the ball excludes zero, 0 if exactly zero,
        None when zero is interior."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == 0 and self.hi == 0:
            return 0
        return None

    # -- arithmetic ----------------------------------------------------------

    def _p(self, other: Optional["RealBall"] = None) -> int:
        if other is None:
            return self.prec
        return max(self.prec, other.prec)

    def __neg__(self) -> "RealBall":
        return RealBall(_neg_exact(self.hi), _neg_exact(self.lo), self.prec)

    def __add__(self, other: "RealBall") -> "RealBall":
        p = self._p(other)
        return RealBall(_dn(p).add(self.lo, other.lo), _up(p).add(self.hi, other.hi), p)

    def __sub__(self, other: "RealBall") -> "RealBall":
        p = self._p(other)
        return RealBall(_dn(p).sub(self.lo, other.hi), _up(p).sub(self.hi, other.lo), p)

    def __mul__(self, other: "RealBall") -> "RealBall":
        p = self._p(other)
        dn, up = _dn(p), _up(p)
        cands_dn = [dn.mul(a, b) for a in (self.lo, self.hi) for b in (other.lo, other.hi)]
        cands_up = [up.mul(a, b) for a in (self.lo, self.hi) for b in (other.lo, other.hi)]
        return RealBall(min(cands_dn), max(cands_up), p)

    def __truediv__(self, other: "RealBall") -> "RealBall":
        if other.contains_zero():
            raise BallDomainError("division by ball containing zero")
        p = self._p(other)
        dn, up = _dn(p), _up(p)
        cands_dn = [dn.div(a, b) for a in (self.lo, self.hi) for b in (other.lo, other.hi)]
        cands_up = [up.div(a, b) for a in (self.lo, self.hi) for b in (other.lo, other.hi)]
        return RealBall(min(cands_dn), max(cands_up), p)

    def scale_int(self, k: int) -> "RealBall":
        p = self.prec
        kk = _mpfr_exact_int(k)
        if k >= 0:
            return RealBall(_dn(p).mul(self.lo, kk), _up(p).mul(self.hi, kk), p)
        return RealBall(_dn(p).mul(self.hi, kk), _up(p).mul(self.lo, kk), p)

    def hull(self, other: "RealBall") -> "RealBall":
        return RealBall(min(self.lo, other.lo), max(self.hi, other.hi), self._p(other))

    def abs(self) -> "RealBall":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return RealBall(mpfr(0, 2), max(_neg_exact(self.lo), self.hi), self.prec)

    def round_to(self, prec: int) -> "RealBall":
        """Outward rounding to a (typically coarser) precision."""
        return RealBall(_dn(prec).add(self.lo, mpfr(0, 2)), _up(prec).add(self.hi, mpfr(0, 2)), prec)

    # -- transcendental (monotone: endpoint evaluation is tight and sound) ---

    def exp(self) -> "RealBall":
        p = self.prec
        lo, hi = _dn(p).exp(self.lo), _up(p).exp(self.hi)
        if not (gmpy2.is_finite(lo) and gmpy2.is_finite(hi)):
            raise BallDomainError("exp overflow; use LogMagnitude for this range")
        return RealBall(lo, hi, p)

    def log(self) -> "RealBall":
        if self.lo <= 0:
            raise BallDomainError("log of ball touching (-inf, 0]")
        p = self.prec
        return RealBall(_dn(p).log(self.lo), _up(p).log(self.hi), p)

    def sqrt(self) -> "RealBall":
        return self.rootn(2)

    def rootn(self, n: int) -> "RealBall":
        if self.lo < 0:
            raise BallDomainError("rootn of negative ball")
        p = self.prec
        return RealBall(_dn(p).rootn(self.lo, n), _up(p).rootn(self.hi, n), p)

    def ipow(self, k: int) -> "RealBall":
        """Integer power; requires a positive ball for negative k."""
        if k == 0:
            return RealBall.exact_int(1, self.prec)
        if k < 0:
            return RealBall.exact_int(1, self.prec) / self.ipow(-k)
        p = self.prec
        dn, up = _dn(p), _up(p)
        if self.lo >= 0:
            lo = self.lo
            hi = self.hi
            rlo, rhi = mpfr(1, 2), mpfr(1, 2)
            for _ in range(k):
                rlo = dn.mul(rlo, lo)
                rhi = up.mul(rhi, hi)
            return RealBall(rlo, rhi, p)
        # general sign handling via repeated interval multiplication
        acc = RealBall.exact_int(1, p)
        for _ in range(k):
            acc = acc * self
        return acc

    def pow_fraction(self, a: int, q: int) -> "RealBall":
        """self ** (a/q) for a positive ball."""
        if self.lo <= 0:
            raise BallDomainError("fractional power of non-positive ball")
        base = self if q == 1 else self.rootn(q)
        return base.ipow(a)

    # Lipschitz-1 enclosure around an interior point; sound for any interval.
    def _lipschitz_trig(self, fn_name: str) -> "RealBall":
        p = self.prec
        dn, up = _dn(p), _up(p)
        ctx = _ctx(p, gmpy2.RoundToNearest)
        m = ctx.div(ctx.add(self.lo, self.hi), 2)
        dev = max(up.sub(self.hi, m), up.sub(m, self.lo))
        vlo = getattr(dn, fn_name)(m)
        vhi = getattr(up, fn_name)(m)
        lo = dn.sub(vlo, dev)
        hi = up.add(vhi, dev)
        return RealBall(max(lo, mpfr(-1, 2)), min(hi, mpfr(1, 2)), p)

    def sin(self) -> "RealBall":
        return self._lipschitz_trig("sin")

    def cos(self) -> "RealBall":
        return self._lipschitz_trig("cos")


def ball_pi(prec: int) -> RealBall:
    return RealBall(_dn(prec).const_pi(), _up(prec).const_pi(), prec)


def ball_log_int(n: int, prec: int) -> RealBall:
    if n < 1:
        raise BallDomainError("log of non-positive integer")
    v = _mpfr_exact_int(n)
    return RealBall(_dn(prec).log(v), _up(prec).log(v), prec)


def ball_sum(balls: Iterable[RealBall], prec: int) -> RealBall:
    acc = RealBall.exact_int(0, prec)
    for b in balls:
        acc = acc + b
    return acc


# ---------------------------------------------------------------------------
# exponent representations
# ---------------------------------------------------------------------------


class Exponent:
    """Tagged representation of the exponent c; determines which equality
    certification strategy applies."""

    kind: str = "abstract"

    def enclosure(self, prec: int) -> RealBall:
        raise NotImplementedError

    def descriptor(self) -> str:
        raise NotImplementedError

    def is_certified_zero(self) -> bool:
        return False

    def __repr__(self) -> str:
        return f"<Exponent {self.descriptor()}>"


class RationalExponent(Exponent):
    kind = "rational"

    def __init__(self, a: int, q: int):
        if q == 0:
            raise ValueError("zero denominator")
        if q < 0:
            a, q = -a, -q
        g = gmpy2.gcd(a, q)
        self.a = int(a // g)
        self.q = int(q // g)

    def enclosure(self, prec: int) -> RealBall:
        return RealBall.from_fraction(Fraction(self.a, self.q), prec)

    def descriptor(self) -> str:
        return f"rational:{self.a}/{self.q}"

    def is_certified_zero(self) -> bool:
        return self.a == 0

    def as_fraction(self) -> Fraction:
        return Fraction(self.a, self.q)


class NumericBallExponent(Exponent):
    """A fixed numeric enclosure of c.  Not refinable: comparisons bottom out
    at the stored radius and report Unresolved honestly beyond it."""

    kind = "numeric"

    def __init__(self, ball: RealBall, label: Optional[str] = None):
        self.ball = ball
        self.label = label

    def enclosure(self, prec: int) -> RealBall:
        return self.ball

    def descriptor(self) -> str:
        if self.label:
            return f"ball:{self.label}"
        m = self.ball.midpoint
        r = self.ball.radius
        return f"ball:{m.numerator}/{m.denominator}±{r.numerator}/{r.denominator}"

    def is_certified_zero(self) -> bool:
        return self.ball.lo == 0 and self.ball.hi == 0


class AlgebraicLogExponent(Exponent):
    """c = log_base(phi) for the unique root phi of the given integer
    polynomial inside the isolation interval."""

    kind = "alglog"

    def __init__(self, base: int, coeffs: Sequence[int], iso_lo: Fraction, iso_hi: Fraction):
        if base < 2:
            raise ValueError("base must be >= 2")
        self.base = int(base)
        self.coeffs = polys.normalize(coeffs)
        if polys.degree(self.coeffs) < 1:
            raise ValueError("constant polynomial has no roots")
        lo, hi = Fraction(iso_lo), Fraction(iso_hi)
        if not (0 < lo < hi):
            raise ValueError("isolation interval must be positive and ordered")
        self._sqfree = polys.squarefree_part(self.coeffs)
        if polys.sign_at(self._sqfree, lo) == 0 or polys.sign_at(self._sqfree, hi) == 0:
            raise ValueError("isolation endpoints must not be roots")
        if polys.count_roots(self._sqfree, lo, hi) != 1:
            raise ValueError("isolation interval must contain exactly one root")
        if polys.sign_at(self._sqfree, lo) * polys.sign_at(self._sqfree, hi) >= 0:
            raise ValueError("isolation interval must bracket a sign change")
        self.iso_lo = lo
        self.iso_hi = hi
        self._bracket = (lo, hi)

    def phi_bracket(self, width: Fraction) -> Tuple[Fraction, Fraction]:
        lo, hi = self._bracket
        if hi - lo > width:
            lo, hi = polys.refine_root(self._sqfree, lo, hi, width)
            self._bracket = (lo, hi)
        return self._bracket

    def phi_ball(self, prec: int) -> RealBall:
        lo, hi = self.phi_bracket(Fraction(1, 2 ** (prec + 8)))
        if lo == hi:  # rational root
            return RealBall.from_fraction(lo, prec)
        return RealBall.from_interval(lo, hi, prec)

    def enclosure(self, prec: int) -> RealBall:
        p = prec + GUARD_BITS
        phi = self.phi_ball(p)
        return phi.log() / ball_log_int(self.base, p)

    def descriptor(self) -> str:
        cs = ",".join(str(c) for c in self.coeffs)
        return f"alglog:{self.base}:{cs}:{self.iso_lo},{self.iso_hi}"

    def power_index(self, x: int) -> Optional[int]:
        """k with x == base**k, else None."""
        if x == 1:
            return 0
        k = 0
        while x % self.base == 0:
            x //= self.base
            k += 1
        return k if x == 1 else None

    def sum_is_zero(self, coeff_by_power: Dict[int, int]) -> bool:
        """Exact decision of sum coeff * phi**k == 0 by gcd with the defining
        polynomial and a sign change across the isolation bracket."""
        s = [0] * (max(coeff_by_power) + 1)
        for k, cf in coeff_by_power.items():
            s[k] = cf
        s_poly = polys.normalize(s)
        if polys.is_zero(s_poly):
            return True
        g = polys.poly_gcd(s_poly, self.coeffs)
        if polys.degree(g) < 1:
            return False
        h = polys.squarefree_part(g)
        lo, hi = self._bracket
        slo, shi = polys.sign_at(h, lo), polys.sign_at(h, hi)
        # endpoints are non-roots of the defining polynomial, hence of h | p
        return slo * shi < 0


class DigitSequenceExponent(Exponent):
    """c = sum radix**(-d_n) over a lazily enumerated increasing sequence of
    positions.  Positions may be plain ints or tower-magnitude objects that
    implement greater_than_int()."""

    kind = "digits"

    def __init__(self, radix: int, make_positions: Callable[[], Iterator], label: str = "custom"):
        if radix < 2:
            raise ValueError("radix must be >= 2")
        self.radix = int(radix)
        self.make_positions = make_positions
        self.label = label
        self._prefix: List[int] = []  # materialized int positions, increasing
        self._prefix_complete_to: int = 0  # all positions <= this value are in _prefix

    def descriptor(self) -> str:
        return f"digits:{self.radix}:{self.label}"

    @staticmethod
    def _position_exceeds(pos, bound: int) -> bool:
        if isinstance(pos, int):
            return pos > bound
        exceeds = getattr(pos, "greater_than_int", None)
        if exceeds is None:
            raise TypeError(f"unsupported position type {type(pos)!r}")
        return bool(exceeds(bound))

    def _scan(self, bound: int) -> Tuple[List[int], Optional[object]]:
        """Materialize all positions <= bound; return them plus the first
        position beyond the bound (the tail lookahead), or None if the
        iterator was exhausted first."""
        positions: List[int] = []
        last = 0
        for pos in self.make_positions():
            if not self._position_exceeds(pos, bound):
                ip = int(pos)
                if ip <= last:
                    raise ValueError("digit positions must be strictly increasing")
                positions.append(ip)
                last = ip
            else:
                return positions, pos
        return positions, None

    def enclosure(self, prec: int) -> RealBall:
        bound = prec + 64
        positions, lookahead = self._scan(bound)
        if lookahead is None:
            raise TailUnbounded(
                f"digit sequence {self.label!r} exhausted before the tail could "
                f"be bounded at precision {prec}"
            )
        partial = Fraction(0)
        r = Fraction(self.radix)
        for d in positions:
            partial += r ** (-d)
        if isinstance(lookahead, int):
            tail = r ** (1 - lookahead)
        else:
            # tower-sized next position: tail < radix**(1-d) <= 2**-(bound)
            tail = Fraction(1, 2**bound)
        return RealBall.from_interval(partial, partial + tail, prec)

    def digit_at(self, position: int) -> int:
        """1 iff position is one of the d_n (0 otherwise); raises if the
        generator cannot decide (see dissociation.digit_query for the
        Unknown-wrapping front end)."""
        for pos in self.make_positions():
            if isinstance(pos, int):
                if pos == position:
                    return 1
                if pos > position:
                    return 0
            else:
                if self._position_exceeds(pos, position):
                    return 0
                raise TailUnbounded("position comparison exceeded representable depth")
        return 0


# convenience constructors ---------------------------------------------------


def rational_exponent(a: int, q: int = 1) -> RationalExponent:
    return RationalExponent(a, q)


def sqrt_ball_exponent(n: int, prec: int = MAX_PRECISION) -> NumericBallExponent:
    """Exponent c = sqrt(n) as a fixed high-precision ball."""
    v = _mpfr_exact_int(n)
    ball = RealBall(_dn(prec).sqrt(v), _up(prec).sqrt(v), prec)
    return NumericBallExponent(ball, label=f"sqrt{n}")

def pi_fraction_exponent(num: int = 1, den: int = 4, prec: int = MAX_PRECISION) -> NumericBallExponent:
    """Exponent c = pi * num/den as a fixed high-precision ball."""
    ball = ball_pi(prec).scale_int(num) / RealBall.exact_int(den, prec)
    return NumericBallExponent(ball, label=f"pi*{num}/{den}")


def fraction_ball_exponent(f: Fraction, prec: int = MAX_PRECISION, label: Optional[str] = None) -> NumericBallExponent:
    return NumericBallExponent(RealBall.from_fraction(Fraction(f), prec), label=label)


# ---------------------------------------------------------------------------
# comparison kernel
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CompareVerdict:
    kind: str  # "less" | "greater" | "equal" | "unresolved"
    witness: Optional[str] = None
    precision_reached: int = 0

    @property
    def is_equal(self) -> bool:
        return self.kind == "equal"

    @property
    def is_resolved(self) -> bool:
        return self.kind != "unresolved"


Term = Tuple[int, int]  # (coefficient, point)


def _merge_terms(lhs: Sequence[Term], rhs: Sequence[Term]) -> Dict[int, int]:
    merged: Dict[int, int] = {}
    for coeff, x in lhs:
        if x < 1:
            raise ValueError("points must be positive integers")
        merged[x] = merged.get(x, 0) + int(coeff)
    for coeff, x in rhs:
        if x < 1:
            raise ValueError("points must be positive integers")
        merged[x] = merged.get(x, 0) - int(coeff)
    return {x: cf for x, cf in merged.items() if cf != 0}


def _radical_canonical_sum(terms: Dict[int, int], a: int, q: int) -> Dict[Tuple[Tuple[int, int], ...], Fraction]:
    """Group sum coeff * x**(a/q) by radical kernel.

    x**(a/q) = (product p**floor(e_p*a/q)) * product p**(frac_p) with
    frac_p = (e_p*a mod q)/q; terms with equal fractional-exponent kernels are
    combined, and by linear independence of distinct radical kernels the sum
    vanishes iff every kernel's rational coefficient vanishes.
    """
    groups: Dict[Tuple[Tuple[int, int], ...], Fraction] = {}
    for x, coeff in terms.items():
        fac = intmath.factorize(x)
        rational_part = Fraction(1)
        kernel: List[Tuple[int, int]] = []
        for p, e in fac.items():
            t = e * a
            frac_num = t % q
            whole = (t - frac_num) // q
            rational_part *= Fraction(p) ** whole
            if frac_num:
                kernel.append((p, frac_num))
        key = tuple(sorted(kernel))
        groups[key] = groups.get(key, Fraction(0)) + coeff * rational_part
    return groups


def rational_sum_is_zero(terms: Dict[int, int], a: int, q: int) -> bool:
    groups = _radical_canonical_sum(terms, a, q)
    return all(v == 0 for v in groups.values())


def power_ball(x: int, c: Exponent, precision: int = INITIAL_PRECISION) -> RealBall:
    """Sound enclosure of x**c at the requested precision.

    Radius is within the documented guard margin (2**(-precision+GUARD_BITS)
    relative) for refinable exponents; for fixed NumericBall exponents the
    stored radius of c sets the attainable floor.  Results are memoized per
    exponent instance (pure function of (x, precision)).
    """
    if x < 1:
        raise ValueError("x must be a positive integer")
    if precision < 32:
        raise ValueError("precision must be >= 32")
    if x == 1:
        return RealBall.exact_int(1, precision)
    cache = getattr(c, "_pow_cache", None)
    if cache is None:
        cache = {}
        try:
            c._pow_cache = cache
        except AttributeError:
            cache = None
    if cache is not None and (x, precision) in cache:
        return cache[(x, precision)]
    if isinstance(c, RationalExponent):
        if c.a == 0:
            result = RealBall.exact_int(1, precision)
        else:
            p = precision + GUARD_BITS
            result = RealBall.exact_int(x, p).pow_fraction(c.a, c.q)
    else:
        p = precision + GUARD_BITS
        cb = c.enclosure(p)
        result = (cb * ball_log_int(x, p)).exp()
    if cache is not None:
        cache[(x, precision)] = result
    return result


def sum_ball(terms: Dict[int, int], c: Exponent, precision: int) -> RealBall:
    acc = RealBall.exact_int(0, precision + GUARD_BITS)
    for x in sorted(terms):
        acc = acc + power_ball(x, c, precision).scale_int(terms[x])
    return acc


def compare_sums(
    lhs: Sequence[Term],
    rhs: Sequence[Term],
    c: Exponent,
    max_precision: int = MAX_PRECISION,
    *,
    initial_precision: int = INITIAL_PRECISION,
    exact_paths: bool = True,
) -> CompareVerdict:
    """Decide sum(lhs) vs sum(rhs) where each term is coeff * x**c.

    Adaptive refinement doubles the working precision until the enclosures are
    disjoint or max_precision is reached.  Equality is only ever certified by
    an exact (non-interval) argument; with exact_paths disabled every equal
    case degrades to Unresolved.
    """
    terms = _merge_terms(lhs, rhs)
    if not terms:
        return CompareVerdict("equal", witness="syntactic", precision_reached=0)

    if exact_paths:
        if isinstance(c, RationalExponent):
            if rational_sum_is_zero(terms, c.a, c.q):
                return CompareVerdict("equal", witness="radical-grouping", precision_reached=0)
        elif isinstance(c, AlgebraicLogExponent):
            powers = {x: c.power_index(x) for x in terms}
            if all(k is not None for k in powers.values()):
                coeff_by_power = {powers[x]: terms[x] for x in terms}
                if c.sum_is_zero(coeff_by_power):
                    return CompareVerdict("equal", witness="defining-polynomial", precision_reached=0)

    prec = initial_precision
    while True:
        ball = sum_ball(terms, c, prec)
        if ball.hi < 0:
            return CompareVerdict("less", precision_reached=prec)
        if ball.lo > 0:
            return CompareVerdict("greater", precision_reached=prec)
        if prec >= max_precision:
            return CompareVerdict("unresolved", precision_reached=prec)
        prec = min(2 * prec, max_precision)
