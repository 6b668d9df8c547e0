"""Signed magnitudes in log space, with a lazy tower form for values whose
logarithm itself overflows plain representation.

A LogMagnitude is (sign, log|value|).  The log payload is a Real:

  Fraction            exact
  RealBall            certified enclosure
  Tower(base, e, ±1)  sign * base**e with e again a Real (positive value)

Exact integers and fractions are kept plain up to PLAIN_BITS_LIMIT bits and
normalize to towers beyond that (so -2**600 stays an exact big integer while
-2**9600 becomes a signed tower).  Comparisons descend through logarithms;
bit-identical representations compare equal, which is sound here because all
constructors are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple, Union

from .realcore import (
    BallDomainError,
    RealBall,
    UnresolvedComparison,
    ball_log_int,
)

PLAIN_BITS_LIMIT = 4096
MAG_PREC = 192


class TowerOverflow(RuntimeError):
    """A tower-represented value was asked to materialize beyond its range."""


@dataclass(frozen=True)
class Tower:
    """sign * base**exponent; exponent is a Real with positive value."""

    base: int
    exponent: "Real"
    sign: int = 1

    def __post_init__(self):
        if self.base < 2:
            raise ValueError("tower base must be >= 2")
        if self.sign not in (-1, 1):
            raise ValueError("tower sign must be +-1")

    def depth(self) -> int:
        return 1 + real_depth(self.exponent)

    def greater_than_int(self, bound: int) -> bool:
        """Protocol hook for digit-sequence positions: self > bound?"""
        if self.sign < 0:
            return False
        return real_cmp(self, Fraction(bound)) > 0

    def __repr__(self) -> str:
        s = "-" if self.sign < 0 else ""
        return f"{s}{self.base}^({real_repr(self.exponent)})"


Real = Union[Fraction, RealBall, Tower]


def real_depth(x: Real) -> int:
    return x.depth() if isinstance(x, Tower) else 1


def real_repr(x: Real) -> str:
    if isinstance(x, Fraction):
        if x.denominator == 1 and abs(x.numerator) < 10**40:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}" if abs(x.numerator) < 10**40 else f"~10^{_frac_log10_estimate(x):.6g}"
    if isinstance(x, RealBall):
        return f"~{x.mid_float():.12g}"
    return repr(x)


def _frac_log10_estimate(x: Fraction) -> float:
    import math

    n, d = abs(x.numerator), x.denominator
    return (n.bit_length() - d.bit_length()) * math.log10(2)


def real_sign(x: Real) -> int:
    if isinstance(x, Fraction):
        return (x > 0) - (x < 0)
    if isinstance(x, RealBall):
        s = x.sign()
        if s is None:
            raise UnresolvedComparison("ball sign straddles zero")
        return s
    return x.sign


def normalize_real(x: Real, prefer_base: int = 2) -> Real:
    """Promote oversized exact fractions to towers (exactly for powers of the
    base, via a log enclosure otherwise)."""
    if not isinstance(x, Fraction):
        return x
    if x == 0:
        return x
    mag_bits = abs(x.numerator).bit_length() - x.denominator.bit_length()
    if mag_bits <= PLAIN_BITS_LIMIT:
        return x
    sign = 1 if x > 0 else -1
    h = abs(x)
    # exact when h is a pure power of the base
    if h.denominator == 1:
        n = h.numerator
        k = 0
        m = n
        while m % prefer_base == 0:
            m //= prefer_base
            k += 1
        if m == 1:
            return Tower(prefer_base, Fraction(k), sign)
    log_ball = _ball_log_fraction(h, MAG_PREC) / ball_log_int(prefer_base, MAG_PREC)
    return Tower(prefer_base, log_ball, sign)


def _ball_log_fraction(f: Fraction, prec: int) -> RealBall:
    if f <= 0:
        raise BallDomainError("log of non-positive fraction")
    return RealBall.from_fraction(f, prec + 8).log()


def real_to_ball(x: Real, prec: int = MAG_PREC) -> RealBall:
    """Materialize a Real as a ball; towers materialize only while their
    exponent is modest (else TowerOverflow)."""
    if isinstance(x, Fraction):
        return RealBall.from_fraction(x, prec)
    if isinstance(x, RealBall):
        return x
    e = real_to_ball(x.exponent, prec)
    if e.hi_fraction() * x.base.bit_length() > (1 << 40):
        raise TowerOverflow(f"tower exponent too large to materialize: {x!r}")
    ball = (e * ball_log_int(x.base, prec)).exp()
    return ball if x.sign > 0 else -ball


def real_log_abs(x: Real, prec: int = MAG_PREC) -> Real:
    """log |x| as a Real (exact descent for towers)."""
    if isinstance(x, Tower):
        return real_mul(x.exponent, ball_log_int(x.base, prec))
    if isinstance(x, Fraction):
        if x == 0:
            raise BallDomainError("log of zero")
        return _ball_log_fraction(abs(x), prec)
    return x.abs().log()


def real_neg(x: Real) -> Real:
    if isinstance(x, Fraction):
        return -x
    if isinstance(x, RealBall):
        return -x
    return Tower(x.base, x.exponent, -x.sign)


def real_cmp(x: Real, y: Real, prec: int = MAG_PREC) -> int:
    """Total-order comparison; raises UnresolvedComparison on genuinely
    overlapping distinct enclosures.  Identical representations are equal."""
    if x is y:
        return 0
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return (x > y) - (x < y)
    if isinstance(x, Tower) or isinstance(y, Tower):
        sx = real_sign(x) if not isinstance(x, Fraction) or x != 0 else 0
        sy = real_sign(y) if not isinstance(y, Fraction) or y != 0 else 0
        if sx != sy:
            return (sx > sy) - (sx < sy)
        if sx == 0:
            return 0
        if isinstance(x, Tower) and isinstance(y, Tower) and x.base == y.base and x.sign == y.sign:
            c = real_cmp(x.exponent, y.exponent, prec)
            return c if x.sign > 0 else -c
        # descend through logs; the non-tower side must be positive here
        c = real_cmp(real_log_abs(x, prec), real_log_abs(y, prec), prec)
        return c if sx > 0 else -c
    bx = real_to_ball(x, prec)
    by = real_to_ball(y, prec)
    if bx.lo == by.lo and bx.hi == by.hi:
        return 0
    if bx.hi < by.lo:
        return -1
    if by.hi < bx.lo:
        return 1
    raise UnresolvedComparison(f"overlapping enclosures: {bx!r} vs {by!r}")


def real_max(x: Real, y: Real, prec: int = MAG_PREC) -> Real:
    """Value max; for overlapping balls returns the interval max (sound)."""
    try:
        return x if real_cmp(x, y, prec) >= 0 else y
    except UnresolvedComparison:
        bx, by = real_to_ball(x, prec), real_to_ball(y, prec)
        return RealBall(max(bx.lo, by.lo), max(bx.hi, by.hi), max(bx.prec, by.prec))


def real_add(x: Real, y: Real, prec: int = MAG_PREC) -> Real:
    x, y = normalize_real(x), normalize_real(y)
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return normalize_real(x + y)
    if not isinstance(x, Tower) and not isinstance(y, Tower):
        return real_to_ball(x, prec) + real_to_ball(y, prec)
    if isinstance(y, Tower) and not isinstance(x, Tower):
        x, y = y, x
    # x is a tower; absorb y when it is certifiably negligible, else combine
    assert isinstance(x, Tower)
    if isinstance(y, Fraction) and y == 0:
        return x
    lx = real_log_abs(x, prec)
    if isinstance(y, RealBall):
        # dominance needs only an upper bound on |y|; avoids log of a ball
        # touching zero
        bound = max(abs(y.lo_fraction()), abs(y.hi_fraction()))
        if bound == 0:
            return x
        ly: Real = _ball_log_fraction(bound, prec)
    else:
        ly = real_log_abs(y, prec)
    margin = Fraction(32)
    try:
        dominated = real_cmp(real_add_plain(ly, margin, prec), lx, prec) < 0
    except (UnresolvedComparison, TowerOverflow):
        dominated = False
    if dominated:
        # |y| <= |x| * 2^-32-ish: |log_b(1 + y/x)| <= 2^-30
        eps = RealBall.from_interval(Fraction(-1, 1 << 30), Fraction(1, 1 << 30), prec)
        return Tower(x.base, real_add_plain(x.exponent, eps, prec), x.sign)
    if isinstance(y, Tower) and y.base == x.base:
        d = real_sub_plain(y.exponent, x.exponent, prec)
        db = real_to_ball(d, prec)  # may raise TowerOverflow if incomparable
        ratio = (db * ball_log_int(x.base, prec)).exp()
        signed_ratio = ratio if y.sign == x.sign else -ratio
        one = RealBall.exact_int(1, prec)
        factor = one + signed_ratio
        if factor.sign() is None or factor.sign() <= 0:
            raise UnresolvedComparison("tower addition cancels to uncertifiable sign")
        delta = factor.log() / ball_log_int(x.base, prec)
        return Tower(x.base, real_add_plain(x.exponent, delta, prec), x.sign)
    raise UnresolvedComparison(f"cannot add {y!r} to tower {x!r} soundly")


def real_add_plain(x: Real, y: Real, prec: int = MAG_PREC) -> Real:
    """Addition for plain (non-tower) payloads in tower exponents."""
    if isinstance(x, Tower) or isinstance(y, Tower):
        return real_add(x, y, prec)
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return x + y
    return real_to_ball(x, prec) + real_to_ball(y, prec)


def real_sub_plain(x: Real, y: Real, prec: int = MAG_PREC) -> Real:
    return real_add_plain(x, real_neg(y), prec)


def _exact_base_power(f: Fraction, base: int) -> Optional[Fraction]:
    """k with |f| == base**k exactly (k integer, possibly negative), else None."""
    h = abs(f)
    if h == 0:
        return None
    if h.denominator == 1:
        n, k = h.numerator, 0
        while n % base == 0:
            n //= base
            k += 1
        return Fraction(k) if n == 1 else None
    if h.numerator == 1:
        n, k = h.denominator, 0
        while n % base == 0:
            n //= base
            k += 1
        return Fraction(-k) if n == 1 else None
    return None


def real_mul(x: Real, y: Real, prec: int = MAG_PREC) -> Real:
    x, y = normalize_real(x), normalize_real(y)
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return normalize_real(x * y)
    if not isinstance(x, Tower) and not isinstance(y, Tower):
        return real_to_ball(x, prec) * real_to_ball(y, prec)
    if isinstance(y, Tower) and not isinstance(x, Tower):
        x, y = y, x
    assert isinstance(x, Tower)
    sy = real_sign(y)
    if sy == 0:
        return Fraction(0)
    if isinstance(y, Tower):
        if y.base == x.base:
            return Tower(x.base, real_add_plain(x.exponent, y.exponent, prec), x.sign * y.sign)
        shift = real_mul(y.exponent, ball_log_int(y.base, prec) / ball_log_int(x.base, prec), prec)
        return Tower(x.base, real_add_plain(x.exponent, shift, prec), x.sign * y.sign)
    if isinstance(y, Fraction):
        k = _exact_base_power(y, x.base)
        if k is not None:
            return Tower(x.base, real_add_plain(x.exponent, k, prec), x.sign * sy)
    log_y = real_log_abs(y, prec)
    shift = (
        real_to_ball(log_y, prec) / ball_log_int(x.base, prec)
        if not isinstance(log_y, Tower)
        else real_mul(log_y, RealBall.exact_int(1, prec) / ball_log_int(x.base, prec), prec)
    )
    return Tower(x.base, real_add_plain(x.exponent, shift, prec), x.sign * sy)


def real_pow_int(x: Real, k: int, prec: int = MAG_PREC) -> Real:
    if isinstance(x, Fraction):
        return normalize_real(x**k)
    if isinstance(x, RealBall):
        return x.ipow(k)
    if k == 0:
        return Fraction(1)
    if k < 0:
        raise ValueError("negative tower powers unsupported")
    return Tower(x.base, real_mul(x.exponent, Fraction(k), prec), x.sign if k % 2 else 1)


# ---------------------------------------------------------------------------
# LogMagnitude
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LogMagnitude:
    """sign and natural log of |value|; the universal currency for the
    explicit threshold/bound formulas, whose values routinely dwarf floats."""

    sign: int  # -1, 0, +1
    log: Optional[Real]  # None iff sign == 0

    @classmethod
    def zero(cls) -> "LogMagnitude":
        return cls(0, None)

    @classmethod
    def from_log(cls, sign: int, log: Real) -> "LogMagnitude":
        if sign == 0:
            return cls.zero()
        return cls(sign, normalize_real(log))

    @classmethod
    def from_fraction(cls, f: Fraction) -> "LogMagnitude":
        f = Fraction(f)
        if f == 0:
            return cls.zero()
        return cls.from_log((f > 0) - (f < 0), _ball_log_fraction(abs(f), MAG_PREC))

    # value ops (log-space) ---------------------------------------------------

    def __mul__(self, other: "LogMagnitude") -> "LogMagnitude":
        if self.sign == 0 or other.sign == 0:
            return LogMagnitude.zero()
        return LogMagnitude.from_log(self.sign * other.sign, real_add(self.log, other.log))

    def __truediv__(self, other: "LogMagnitude") -> "LogMagnitude":
        if other.sign == 0:
            raise ZeroDivisionError
        if self.sign == 0:
            return LogMagnitude.zero()
        sign = self.sign * other.sign
        try:
            if real_cmp(self.log, other.log) == 0:
                return LogMagnitude.from_log(sign, Fraction(0))
        except UnresolvedComparison:
            pass
        if isinstance(self.log, Tower) or isinstance(other.log, Tower):
            return LogMagnitude.from_log(sign, real_add(self.log, real_neg(other.log)))
        return LogMagnitude.from_log(sign, real_sub_plain(self.log, other.log))

    def pow_int(self, k: int) -> "LogMagnitude":
        if self.sign == 0:
            return self if k > 0 else LogMagnitude.from_log(1, Fraction(0))
        if self.sign < 0 and k % 2 == 0:
            return LogMagnitude.from_log(1, real_mul(self.log, Fraction(k)))
        return LogMagnitude.from_log(self.sign, real_mul(self.log, Fraction(k)))

    def __neg__(self) -> "LogMagnitude":
        if self.sign == 0:
            return self
        return LogMagnitude(-self.sign, self.log)

    def abs(self) -> "LogMagnitude":
        if self.sign == 0:
            return self
        return LogMagnitude(1, self.log)

    # comparisons --------------------------------------------------------------

    def cmp(self, other: "LogMagnitude") -> int:
        if self.sign != other.sign:
            return (self.sign > other.sign) - (self.sign < other.sign)
        if self.sign == 0:
            return 0
        c = real_cmp(self.log, other.log)
        return c if self.sign > 0 else -c

    def __lt__(self, other: "LogMagnitude") -> bool:
        return self.cmp(other) < 0

    def __le__(self, other: "LogMagnitude") -> bool:
        return self.cmp(other) <= 0

    # accessors -----------------------------------------------------------------

    def log_exact(self) -> Fraction:
        if self.sign == 0:
            raise ValueError("zero magnitude has no log")
        if not isinstance(self.log, Fraction):
            raise ValueError("log is not exactly represented")
        return self.log

    def log_ball(self, prec: int = MAG_PREC) -> RealBall:
        if self.sign == 0:
            raise ValueError("zero magnitude has no log")
        return real_to_ball(self.log, prec)

    def log_is_tower(self) -> bool:
        return isinstance(self.log, Tower)

    def depth(self) -> int:
        """Representation depth: 1 for plain payloads, 1 + exponent depth for
        towers (100^20001 has depth 2)."""
        if self.sign == 0:
            return 1
        return real_depth(self.log)

    def log_float(self) -> Optional[float]:
        if self.sign == 0:
            return None
        try:
            return real_to_ball(self.log, 64).mid_float()
        except TowerOverflow:
            return None

    def to_json_dict(self) -> Dict[str, object]:
        return {"sign": {1: "+", 0: "0", -1: "-"}[self.sign], "log": _real_json(self.log)}

    def describe(self) -> str:
        if self.sign == 0:
            return "0"
        s = "-" if self.sign < 0 else ""
        return f"{s}exp({real_repr(self.log)})"


def _real_json(x: Optional[Real]) -> object:
    if x is None:
        return None
    if isinstance(x, Fraction):
        if x.denominator == 1 and abs(x.numerator) < 2**53:
            return int(x)
        if abs(x.numerator).bit_length() <= PLAIN_BITS_LIMIT and x.denominator.bit_length() <= PLAIN_BITS_LIMIT:
            return {"exact": str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"}
        return {"exact_log10": _frac_log10_estimate(x)}
    if isinstance(x, RealBall):
        return {"ball_mid": x.mid_float(), "ball_rad": float(x.radius)}
    return {"tower": {"base": x.base, "sign": x.sign, "exponent": _real_json(x.exponent)}}
