"""Exponential sums over the certified pair-sum profile: D(t), representation
counts, the exact discrete Parseval identity, the fourth-moment identity, the
large-values count, and the smoothing-window pair count.

The Fourier identities are computed over the index group of size Q (the exactly
true reading); where a literal real-exponent sum is also defined, it is
computed and reported "as written" so the discrepancy between the two readings
is measurable rather than asserted away.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .energy import PairGroup, pair_sum_groups
from .realcore import (
    GUARD_BITS,
    INITIAL_PRECISION,
    MAX_PRECISION,
    Exponent,
    RealBall,
    UnresolvedComparison,
    ball_pi,
    compare_sums,
    power_ball,
)


@dataclass(frozen=True)
class ComplexBall:
    re: RealBall
    im: RealBall

    def __add__(self, other: "ComplexBall") -> "ComplexBall":
        return ComplexBall(self.re + other.re, self.im + other.im)

    def abs_squared(self) -> RealBall:
        return _ball_square(self.re) + _ball_square(self.im)

    def abs(self) -> RealBall:
        return self.abs_squared().sqrt()

    def mid_complex(self) -> complex:
        return complex(self.re.mid_float(), self.im.mid_float())


def _ball_square(b: RealBall) -> RealBall:
    a = b.abs()
    return a * a


@dataclass
class RepCountProfile:
    """phi[k] = ordered pairs (n1, n2) in [N]^2 with n1^c + n2^c equal to the
    k-th distinct pair-sum value (values sorted ascending)."""

    N: int
    c_descriptor: str
    Q: int
    values: List[RealBall]
    phi: List[int]
    unresolved: int

    @property
    def certified(self) -> bool:
        return self.unresolved == 0

    @property
    def energy(self) -> int:
        return sum(w * w for w in self.phi)

    def to_json_dict(self) -> Dict[str, object]:
        return {
            "schema_version": 1,
            "N": self.N,
            "c_descriptor": self.c_descriptor,
            "Q": self.Q,
            "phi": list(self.phi),
            "energy": self.energy,
            "unresolved": self.unresolved,
            "certified": self.certified,
        }


def rep_count_profile(
    c: Exponent, N: int, max_precision: int = MAX_PRECISION, **kwargs
) -> RepCountProfile:
    groups, unresolved, scale, _prec = pair_sum_groups(c, N, max_precision, **kwargs)
    prec = kwargs.get("initial_precision", INITIAL_PRECISION)
    return RepCountProfile(
        N=N,
        c_descriptor=c.descriptor(),
        Q=len(groups),
        values=[g.value_ball(scale, prec) for g in groups],
        phi=[g.weight for g in groups],
        unresolved=unresolved,
    )


# ---------------------------------------------------------------------------
# D(t)
# ---------------------------------------------------------------------------


def exp_sum_D(
    c: Exponent, N: int, t: Union[int, Fraction, float], precision: int = 96
) -> ComplexBall:
    """Sound complex enclosure of D(t) = sum_{n<=N} e(-n^c t)."""
    t = Fraction(t)
    p = precision + GUARD_BITS
    if t == 0:
        return ComplexBall(RealBall.exact_int(N, p), RealBall.exact_int(0, p))
    two_pi_t = ball_pi(p).scale_int(2) * RealBall.from_fraction(t, p)
    re = RealBall.exact_int(0, p)
    im = RealBall.exact_int(0, p)
    for n in range(1, N + 1):
        theta = power_ball(n, c, p) * two_pi_t
        re = re + theta.cos()
        im = im - theta.sin()
    return ComplexBall(re, im)


def _d_magnitudes(c: Exponent, N: int, Q: int, precision: int = 96) -> List[RealBall]:
    """|D(a/Q)|^2 balls for a = 1..Q, sharing the power evaluations."""
    p = precision + GUARD_BITS
    two_pi = ball_pi(p).scale_int(2)
    betas = [power_ball(n, c, p) * two_pi for n in range(1, N + 1)]
    qb = RealBall.exact_int(Q, p)
    out: List[RealBall] = []
    for a in range(1, Q + 1):
        re = RealBall.exact_int(0, p)
        im = RealBall.exact_int(0, p)
        for beta in betas:
            theta = beta.scale_int(a) / qb
            re = re + theta.cos()
            im = im - theta.sin()
        out.append(ComplexBall(re, im).abs_squared())
    return out


# ---------------------------------------------------------------------------
# Parseval
# ---------------------------------------------------------------------------


@dataclass
class ParsevalResult:
    Q: int
    lhs: int  # sum phi^2, exact
    rhs: float  # Q * sum |phi_hat|^2, double DFT
    residual: float
    relative: float
    certified_contains: Optional[bool] = None  # ball DFT encloses the exact lhs

    def to_json_dict(self) -> Dict[str, object]:
        return {
            "schema_version": 1,
            "Q": self.Q,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "residual": self.residual,
            "relative": self.relative,
            "certified_contains": self.certified_contains,
        }


def parseval_check(
    profile: Union[RepCountProfile, Sequence[int]], certified: bool = False, precision: int = 96
) -> ParsevalResult:
    """Both sides of sum |phi|^2 = Q sum |phi_hat|^2 over the index group of
    size Q; exact integers against a double-precision DFT, plus an optional
    ball-arithmetic DFT whose enclosure must contain the exact value."""
    phi = list(profile.phi) if isinstance(profile, RepCountProfile) else [int(v) for v in profile]
    q = len(phi)
    if q == 0:
        raise ValueError("empty profile")
    lhs = sum(w * w for w in phi)
    arr = np.asarray(phi, dtype=np.float64)
    phihat = np.fft.fft(arr) / q
    rhs = float(q * np.sum(np.abs(phihat) ** 2))
    residual = abs(lhs - rhs)
    relative = residual / lhs if lhs else 0.0
    contains: Optional[bool] = None
    if certified:
        contains = _parseval_ball_contains(phi, lhs, precision)
    return ParsevalResult(Q=q, lhs=lhs, rhs=rhs, residual=residual, relative=relative, certified_contains=contains)


def _parseval_ball_contains(phi: List[int], lhs: int, precision: int) -> bool:
    q = len(phi)
    if q > 4096:
        raise ValueError("ball-arithmetic DFT is limited to Q <= 4096")
    p = precision + GUARD_BITS
    two_pi_over_q = ball_pi(p).scale_int(2) / RealBall.exact_int(q, p)
    # unit-circle table e(-k/q), k = 0..q-1
    table = []
    for k in range(q):
        theta = two_pi_over_q.scale_int(k)
        table.append((theta.cos(), -theta.sin()))
    total = RealBall.exact_int(0, p)
    for xi in range(q):
        re = RealBall.exact_int(0, p)
        im = RealBall.exact_int(0, p)
        for idx, w in enumerate(phi):
            if w == 0:
                continue
            cr, ci = table[((idx + 1) * xi) % q]
            re = re + cr.scale_int(w)
            im = im + ci.scale_int(w)
        total = total + _ball_square(re) + _ball_square(im)
    rhs_ball = total / RealBall.exact_int(q, p)
    return rhs_ball.contains_fraction(Fraction(lhs))


# ---------------------------------------------------------------------------
# fourth moment
# ---------------------------------------------------------------------------


@dataclass
class FourthMomentReport:
    N: int
    Q: int
    energy: int
    identity_value: int  # Q * E, the exact index-group fourth moment
    prediction: int  # 2 N^2 Q
    as_written_sum: float  # literal real-exponent fourth moment, for comparison
    certified: bool

    @property
    def difference(self) -> int:
        return self.prediction - self.identity_value

    def to_json_dict(self) -> Dict[str, object]:
        return {
            "schema_version": 1,
            "N": self.N,
            "Q": self.Q,
            "energy": self.energy,
            "identity_value": self.identity_value,
            "prediction": self.prediction,
            "difference": self.difference,
            "as_written_sum": self.as_written_sum,
            "certified": self.certified,
        }


def fourth_moment_report(c: Exponent, N: int, max_precision: int = MAX_PRECISION, **kwargs) -> FourthMomentReport:
    """The index-group fourth moment equals Q*E exactly (Parseval); the report
    also carries the literal real-exponent sum sum_xi |sum_n e_Q(-n^c xi)|^4,
    flagged as-written, so the two readings can be compared numerically."""
    profile = rep_count_profile(c, N, max_precision, **kwargs)
    q = profile.Q
    xc = np.array([power_ball(n, c, 64).mid_float() for n in range(1, N + 1)])
    xi = np.arange(1, q + 1)
    phases = np.exp(-2j * np.pi * np.outer(xc, xi) / q)
    dvals = phases.sum(axis=0)
    as_written = float(np.sum(np.abs(dvals) ** 4))
    return FourthMomentReport(
        N=N,
        Q=q,
        energy=profile.energy,
        identity_value=q * profile.energy,
        prediction=2 * N * N * q,
        as_written_sum=as_written,
        certified=profile.certified,
    )


# ---------------------------------------------------------------------------
# large values of D
# ---------------------------------------------------------------------------


@dataclass
class LargeValuesResult:
    N: int
    Q: int
    V: float
    count: int
    bound: float  # (N/V)^4

    @property
    def ratio(self) -> float:
        return self.count / self.bound if self.bound else float("inf")

    def to_json_dict(self) -> Dict[str, object]:
        return {
            "schema_version": 1,
            "N": self.N,
            "Q": self.Q,
            "V": self.V,
            "count": self.count,
            "bound": self.bound,
            "ratio": self.ratio,
        }


def large_values_sweep(
    c: Exponent,
    N: int,
    Vs: Sequence[Union[int, Fraction, float]],
    max_precision: int = MAX_PRECISION,
    precision: int = 96,
    **kwargs,
) -> List[LargeValuesResult]:
    """Certified counts of a <= Q with |D(a/Q)| >= V, for a sweep of V values
    sharing one set of enclosures."""
    profile = rep_count_profile(c, N, max_precision, **kwargs)
    q = profile.Q
    mags = _d_magnitudes(c, N, q, precision)
    out: List[LargeValuesResult] = []
    for v in Vs:
        vf = Fraction(v)
        v2 = vf * vf
        count = 0
        for a, m2 in enumerate(mags, start=1):
            if m2.lo_fraction() >= v2:
                count += 1
            elif m2.hi_fraction() >= v2:
                # borderline: refine this single a at higher precision
                refined = _refine_d_magnitude(c, N, q, a, max_precision)
                if refined.lo_fraction() >= v2:
                    count += 1
                elif refined.hi_fraction() >= v2:
                    raise UnresolvedComparison(f"|D({a}/{q})| vs V={float(v)} unresolved")
        out.append(
            LargeValuesResult(N=N, Q=q, V=float(v), count=count, bound=(N / float(v)) ** 4)
        )
    return out


def _refine_d_magnitude(c: Exponent, N: int, Q: int, a: int, max_precision: int) -> RealBall:
    p = 256
    while True:
        wp = p + GUARD_BITS
        two_pi = ball_pi(wp).scale_int(2)
        qb = RealBall.exact_int(Q, wp)
        re = RealBall.exact_int(0, wp)
        im = RealBall.exact_int(0, wp)
        for n in range(1, N + 1):
            theta = power_ball(n, c, wp) * two_pi * (RealBall.exact_int(a, wp) / qb)
            re = re + theta.cos()
            im = im - theta.sin()
        ball = ComplexBall(re, im).abs_squared()
        if float(ball.radius) < 1e-30 or p >= max_precision:
            return ball
        p *= 2


def large_values_count(
    c: Exponent, N: int, V: Union[int, Fraction, float], max_precision: int = MAX_PRECISION, **kwargs
) -> LargeValuesResult:
    return large_values_sweep(c, N, [V], max_precision, **kwargs)[0]


# ---------------------------------------------------------------------------
# window pair count
# ---------------------------------------------------------------------------


def window_pair_count(
    c: Exponent,
    N: int,
    y: Union[int, Fraction, float, RealBall],
    max_precision: int = MAX_PRECISION,
    precision: int = INITIAL_PRECISION,
    delta: Optional[Fraction] = None,
) -> int:
    """Number of ordered pairs with x1^c - x2^c in [y - delta, y + delta],
    where delta defaults to half the certified minimal nonzero gap among the
    pairwise differences (the admissibility condition for the smoothing
    window: the window isolates a single difference value)."""
    p = precision + GUARD_BITS
    powers = [power_ball(x, c, precision) for x in range(1, N + 1)]
    diffs: List[Tuple[RealBall, int, int]] = []
    for i in range(N):
        for j in range(N):
            if i == j:
                diffs.append((RealBall.exact_int(0, p), i + 1, j + 1))
            else:
                diffs.append((powers[i] - powers[j], i + 1, j + 1))
    diffs.sort(key=lambda t: (t[0].lo, t[0].hi, t[1], t[2]))

    # group overlapping enclosures, resolving each component by the kernel
    groups: List[List[Tuple[RealBall, int, int]]] = []
    hull_hi = None
    component: List[Tuple[RealBall, int, int]] = []

    def close() -> None:
        if not component:
            return
        if len(component) == 1:
            groups.append(list(component))
            return
        labels = list(range(len(component)))

        def find(i: int) -> int:
            while labels[i] != i:
                labels[i] = labels[labels[i]]
                i = labels[i]
            return i

        for ai in range(len(component)):
            for bi in range(ai + 1, len(component)):
                if find(ai) == find(bi):
                    continue
                _, i1, j1 = component[ai]
                _, i2, j2 = component[bi]
                verdict = compare_sums(
                    [(1, i1), (-1, j1)], [(1, i2), (-1, j2)], c, max_precision
                )
                if verdict.is_equal:
                    labels[find(ai)] = find(bi)
                elif not verdict.is_resolved:
                    raise UnresolvedComparison(f"difference collision unresolved: {(i1, j1)} vs {(i2, j2)}")
        buckets: Dict[int, List[Tuple[RealBall, int, int]]] = {}
        for idx, item in enumerate(component):
            buckets.setdefault(find(idx), []).append(item)
        groups.extend(sorted(buckets.values(), key=lambda ms: (ms[0][0].lo, ms[0][1], ms[0][2])))

    for item in diffs:
        if hull_hi is None or item[0].lo <= hull_hi:
            component.append(item)
            hull_hi = item[0].hi if hull_hi is None else max(hull_hi, item[0].hi)
        else:
            close()
            component = [item]
            hull_hi = item[0].hi
    close()

    if delta is None:
        min_gap: Optional[Fraction] = None
        prev_hi: Optional[Fraction] = None
        for g in groups:
            lo = min(b.lo_fraction() for b, _, _ in g)
            hi = max(b.hi_fraction() for b, _, _ in g)
            if prev_hi is not None:
                gap = lo - prev_hi
                if gap <= 0:
                    raise UnresolvedComparison("adjacent difference groups not separated at this precision")
                if min_gap is None or gap < min_gap:
                    min_gap = gap
            prev_hi = hi
        if min_gap is None:
            raise ValueError("need at least two distinct difference values")
        delta = min_gap / 2

    yball = y if isinstance(y, RealBall) else RealBall.from_fraction(Fraction(y), p)
    win_lo_strict = yball.hi_fraction() - delta
    win_hi_strict = yball.lo_fraction() + delta
    win_lo_wide = yball.lo_fraction() - delta
    win_hi_wide = yball.hi_fraction() + delta
    count = 0
    for ball, i, j in diffs:
        lo, hi = ball.lo_fraction(), ball.hi_fraction()
        if win_lo_strict <= lo and hi <= win_hi_strict:
            count += 1
        elif hi < win_lo_wide or lo > win_hi_wide:
            continue
        else:
            refined = _refine_difference(c, i, j, max_precision)
            lo, hi = refined.lo_fraction(), refined.hi_fraction()
            if win_lo_strict <= lo and hi <= win_hi_strict:
                count += 1
            elif hi < win_lo_wide or lo > win_hi_wide:
                continue
            else:
                raise UnresolvedComparison(f"pair ({i},{j}) straddles the window boundary")
    return count


def _refine_difference(c: Exponent, i: int, j: int, max_precision: int) -> RealBall:
    if i == j:
        return RealBall.exact_int(0, 64)
    return power_ball(i, c, max_precision) - power_ball(j, c, max_precision)
