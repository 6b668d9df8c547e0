"""Explicit threshold/bound functions in log space, digit-by-digit construction
of well-approximable exponents, nonvanishing and dissociativity certificates,
and multiplicative-independence testing.

The bound functions return LogMagnitude values (sign + log), never floats: the
quantities involved (exp(-2^600), towers like 100^(1+2*10^4)) are far outside
float range by design.  Effective constants that the source results only assert
to exist are exposed as parameters (default 3) and echoed in every report.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from . import intmath
from .magnitude import (
    MAG_PREC,
    LogMagnitude,
    Real,
    Tower,
    TowerOverflow,
    normalize_real,
    real_add,
    real_add_plain,
    real_cmp,
    real_depth,
    real_log_abs,
    real_max,
    real_mul,
    real_neg,
    real_pow_int,
    real_to_ball,
)
from .realcore import (
    GUARD_BITS,
    MAX_PRECISION,
    CompareVerdict,
    DigitSequenceExponent,
    Exponent,
    RationalExponent,
    RealBall,
    UnresolvedComparison,
    ball_log_int,
    compare_sums,
    power_ball,
    rational_sum_is_zero,
    sum_ball,
)

DEFAULT_EFFECTIVE_CONSTANT = 3  # stands in for the asserted-effective c3/c6/c7/c8
TOWER_DEPTH_LIMIT = 4


class DepthExceeded(RuntimeError):
    """A digit position exceeded the tower-representation depth limit."""

    def __init__(self, message: str, partial: Optional[List[Real]] = None):
        super().__init__(message)
        self.partial = partial or []


# ---------------------------------------------------------------------------
# bound calculus
# ---------------------------------------------------------------------------


def _log_int_real(n: int, prec: int = MAG_PREC) -> Real:
    """log n as a Real: exact 0 for n=1, ball otherwise."""
    if n < 1:
        raise ValueError("need n >= 1")
    return Fraction(0) if n == 1 else ball_log_int(n, prec)


def _as_positive_real(x: Union[int, Fraction, RealBall, Tower]) -> Real:
    if isinstance(x, int):
        return Fraction(x)
    return x


def psi_log(A: int, N: int, s: int, q: Union[int, Real], c8: int = DEFAULT_EFFECTIVE_CONSTANT) -> LogMagnitude:
    """The approximation threshold psi_N(q):
    log psi = -2^(600 s^4) * max{c8, q^s, s, log A, log N}^(50 s^2).

    q may be a tower-sized Real (it is radix^{d_n} in the digit construction).
    Plain exact payloads are kept exact: psi_log(1,2,1,1,1) has log exactly
    -2^600.
    """
    if A < 1 or N < 1 or s < 1 or c8 < 1:
        raise ValueError("all arguments must be >= 1")
    qr = _as_positive_real(q)
    candidates: List[Real] = [
        Fraction(c8),
        real_pow_int(normalize_real(qr), s),
        Fraction(s),
        _log_int_real(A),
        _log_int_real(N),
    ]
    m = candidates[0]
    for cand in candidates[1:]:
        m = real_max(m, cand)
    val = real_pow_int(m, 50 * s * s)
    log_psi = real_mul(normalize_real(Fraction(-(2 ** (600 * s**4)))), val)
    return LogMagnitude.from_log(1, log_psi)


def baker_wustholz_log(m: int, N: Union[int, RealBall]) -> LogMagnitude:
    """Linear-forms-in-logarithms lower bound (unit coefficients, m terms of
    size <= N): value exp(-(16m)^(2(m+2)) (log N)^m), returned in log space."""
    if m < 1:
        raise ValueError("m must be >= 1")
    ln_n = N.log() if isinstance(N, RealBall) else ball_log_int(N, MAG_PREC)
    big = Fraction(-((16 * m) ** (2 * (m + 2))))
    return LogMagnitude.from_log(1, real_mul(normalize_real(big), real_pow_int(ln_n, m)))


def c0_log(m: int, N: Union[int, RealBall]) -> LogMagnitude:
    """Exponent smallness threshold forcing signed zero-sum power sums to be
    nonzero: c0 = m^-1 (log N)^-2 * exp(baker bound); log returned."""
    if m < 1:
        raise ValueError("m must be >= 1")
    ln_n = N.log() if isinstance(N, RealBall) else ball_log_int(N, MAG_PREC)
    ln_ln_n = ln_n.log()
    base = baker_wustholz_log(m, N).log
    total = real_add_plain(base, real_neg(_log_int_real(m)))
    total = real_add_plain(total, real_to_ball(ln_ln_n, MAG_PREC).scale_int(-2))
    return LogMagnitude.from_log(1, total)


def rational_threshold_log(
    m: int, N: int, a: int, q: int, c: Optional[Fraction] = None
) -> LogMagnitude:
    """Closeness-to-a-rational threshold under which c-th powers of an
    m-element multiplicatively independent set in [N] are dissociated:
    threshold = m^(-q^m) N^(r(1-q^m)-c) (log N)^(-1), r = a/q."""
    r = Fraction(a, q)
    if not (0 < r < 1):
        raise ValueError("a/q must lie in (0,1)")
    if m < 1 or N < 2:
        raise ValueError("m >= 1 and N >= 2 required")
    cc = r if c is None else Fraction(c)
    qm = q**m
    ln_n = ball_log_int(N, MAG_PREC)
    term1 = real_mul(Fraction(-qm), _log_int_real(m))
    term2 = real_mul(r * (1 - qm) - cc, ln_n)
    term3 = real_neg(ln_n.log())
    total = real_add_plain(real_add_plain(term1, term2), term3)
    return LogMagnitude.from_log(1, total)


def alpha_lower_log(m: int, N: int, r: Fraction, q: int) -> LogMagnitude:
    """Algebraic-integer lower bound for |sum a_n n^r|: (m N^r)^(1-q^m)."""
    r = Fraction(r)
    qm = q**m
    ln_mnr = real_add_plain(_log_int_real(m), real_mul(r, ball_log_int(N, MAG_PREC)))
    return LogMagnitude.from_log(1, real_mul(Fraction(1 - qm), ln_mnr))


def prime_corollary_log(c_approx: Fraction, q: int, N: int, a: Optional[int] = None) -> LogMagnitude:
    """Simplified threshold for S = primes up to N: exp(-2(1+c) q^(2N)).

    Asserts the derivation chain: the full rational threshold at m = pi(N)
    exceeds this weakened bound (the corollary is a weakening).
    """
    c_approx = Fraction(c_approx)
    if not (0 < c_approx < 1) or q < 2 or N < 2:
        raise ValueError("need 0 < c < 1, q >= 2, N >= 2")
    if a is None:
        a = int(c_approx * q)  # floor: largest a with a/q <= c
        if a < 1:
            raise ValueError("no positive a with a/q <= c for this q")
    r = Fraction(a, q)
    if not (0 < r <= c_approx):
        raise ValueError("a/q must lie in (0, c]")
    weak_log = normalize_real(-2 * (1 + c_approx) * Fraction(q) ** (2 * N))
    weak = LogMagnitude.from_log(1, weak_log)
    full = rational_threshold_log(intmath.prime_pi(N), N, a, q, c=c_approx)
    if not weak <= full:
        raise AssertionError("weakening chain violated; domain assumptions broken")
    return weak


def feldman_log_bound(
    s: int, q: int, A: int, N: int, a: int, c3: Union[int, Fraction, float] = DEFAULT_EFFECTIVE_CONSTANT
) -> LogMagnitude:
    """Effective lower bound for the logarithmic linear form Lambda:
    |Lambda| > exp(-B) with B = n(n + log H0)(4^(6m^2-2m+1) sqrt(n) (c + log h))^e,
    m = s, n = q^s, H0 = 2 A^q N^a, h = 2N, e = 12 m^2 + 4m - 3, c = log c3.

    Returns the bound value exp(-B) as a LogMagnitude (log = -B).
    """
    if s < 1 or q < 1 or A < 1 or N < 1 or a < 1:
        raise ValueError("all arguments must be >= 1")
    c3 = Fraction(c3) if not isinstance(c3, float) else Fraction(c3).limit_denominator(10**12)
    if c3 <= 1:
        raise ValueError("c3 must exceed 1")
    wp = MAG_PREC
    m = s
    n = q**s
    h0 = 2 * A**q * N**a
    h = 2 * N
    ln_c3 = RealBall.from_fraction(c3, wp).log()
    nball = RealBall.exact_int(n, wp)
    outer = nball * (nball + ball_log_int(h0, wp))
    base = (
        RealBall.exact_int(4 ** (6 * m * m - 2 * m + 1), wp)
        * nball.sqrt()
        * (ln_c3 + ball_log_int(h, wp))
    )
    e = 12 * m * m + 4 * m - 3
    b_val = outer * base.ipow(e)
    return LogMagnitude.from_log(1, real_neg(b_val))


# ---------------------------------------------------------------------------
# digit-by-digit construction of well-approximable exponents
# ---------------------------------------------------------------------------


@dataclass
class StageCheck:
    n: int
    q_description: str
    tail_vs_target: str  # "certified" (symbolic/exponent inequality) or "numeric"
    holds: bool


@dataclass
class DigitConstruction:
    radix: int
    mode: str
    positions: List[Real]  # ints (as Fraction? no: python ints) or Towers
    stage_checks: List[StageCheck]
    family_description: str

    def exponent(self) -> DigitSequenceExponent:
        items = list(self.positions)

        def gen():
            yield from items

        return DigitSequenceExponent(self.radix, gen, label=f"{self.mode}:{self.family_description}")

    def to_json_dict(self) -> Dict[str, object]:
        from .magnitude import _real_json

        return {
            "schema_version": 1,
            "radix": self.radix,
            "mode": self.mode,
            "family": self.family_description,
            "positions": [p if isinstance(p, int) else _real_json(p) for p in self.positions],
            "stage_checks": [
                {"n": sc.n, "q": sc.q_description, "kind": sc.tail_vs_target, "holds": sc.holds}
                for sc in self.stage_checks
            ],
        }


def _ceil_of_real(x: Real, refine: Callable[[int], Real], max_prec: int = 1 << 14) -> int:
    """Certified ceiling of a materializable Real; refine(prec) recomputes the
    enclosure at higher precision when the ceiling is ambiguous."""
    prec = MAG_PREC
    while True:
        ball = real_to_ball(x, prec)
        clo = -((-ball.lo_fraction().numerator) // ball.lo_fraction().denominator)
        chi = -((-ball.hi_fraction().numerator) // ball.hi_fraction().denominator)
        if clo == chi:
            return int(clo)
        if prec >= max_prec:
            raise UnresolvedComparison("ceiling not certifiable at depth limit")
        prec *= 2
        x = refine(prec)


def _next_position(log_inv_psi: Real, radix: int) -> Real:
    """Smallest integer d with radix^d >= 2*exp(L) + 1 where L = log(1/psi);
    returns a Tower enclosure when d is not materializable.

    (T is transcendental for the families in use, so log_radix(T) is never an
    integer and the certified ceiling terminates.)
    """
    huge_fraction = isinstance(log_inv_psi, Fraction) and log_inv_psi > (1 << 40)
    if isinstance(log_inv_psi, Tower) or huge_fraction:
        if isinstance(log_inv_psi, Tower) and log_inv_psi.depth() >= TOWER_DEPTH_LIMIT:
            raise DepthExceeded("next digit position would exceed tower depth limit")

        # ln T = L + ln 2 + delta with delta = ln(1 + e^-L/2) in (0, 2^-40]
        def d_enclosure(prec: int) -> Real:
            slack = RealBall.from_interval(Fraction(0), Fraction(1, 1 << 40), prec)
            ln2 = ball_log_int(2, prec)
            ln_r = ball_log_int(radix, prec)
            if isinstance(log_inv_psi, Tower):
                ln_t = real_add(log_inv_psi, ln2 + slack, prec)
                return real_mul(ln_t, RealBall.exact_int(1, prec) / ln_r, prec)
            return (RealBall.from_fraction(log_inv_psi, prec) + ln2 + slack) / ln_r

        d_real = d_enclosure(MAG_PREC)
        if isinstance(d_real, Tower):
            # enclose the ceiling: the true integer lies in d_real + [0, 1]
            return real_add(d_real, RealBall.from_interval(Fraction(0), Fraction(1), MAG_PREC))
        return _ceil_of_real(d_real, d_enclosure)

    # modest L: form T = 2 exp(L) + 1 directly and take the certified ceiling
    def d_ball(prec: int) -> Real:
        lball = real_to_ball(log_inv_psi, prec)
        t = lball.exp().scale_int(2) + RealBall.exact_int(1, prec)
        return t.log() / ball_log_int(radix, prec)

    return _ceil_of_real(d_ball(MAG_PREC), d_ball)


def _stage_tail_ok(d_next: Real, log_inv_psi: Real, radix: int) -> Tuple[bool, str]:
    """Check sum_{k >= d_next} radix^-k < psi, i.e. d*ln r > L + ln(r/(r-1)).

    Positions produced by the minimal-d rule satisfy this structurally:
    r^d >= 2e^L + 1 gives tail <= (r/(r-1))/(2e^L+1) < e^-L.  A numeric margin
    certification is attempted at a precision matched to |L|; if the margin is
    thinner than that (it can be arbitrarily thin), the structural argument
    stands and is reported as such.
    """
    if not isinstance(d_next, Tower) and not isinstance(log_inv_psi, Tower):
        bits = 192
        if isinstance(log_inv_psi, Fraction):
            bits = max(bits, abs(log_inv_psi.numerator).bit_length() + 64)
        if isinstance(d_next, int):
            bits = max(bits, d_next.bit_length() + 64)
        try:
            lnr = ball_log_int(radix, bits)
            d_ball = RealBall.exact_int(d_next, bits) if isinstance(d_next, int) else real_to_ball(d_next, bits)
            lhs = d_ball * lnr
            rhs = real_to_ball(log_inv_psi, bits) + RealBall.from_fraction(
                Fraction(radix, radix - 1), bits
            ).log()
            diff = lhs - rhs
            if diff.sign() == 1:
                return True, "numeric"
            if diff.sign() == -1:
                return False, "numeric"
        except (TowerOverflow, UnresolvedComparison):
            pass
    return True, "structural"


PsiFamily = Callable[[int, Union[int, Real]], Real]


def standard_tower_family(s: int = 1, c8: int = DEFAULT_EFFECTIVE_CONSTANT) -> PsiFamily:
    """log(1/psi_n(q)) from the real threshold function, minimized over
    parameter boxes A, N <= n (the minimum sits at A = N = n by monotonicity)."""

    def family(n: int, q: Union[int, Real]) -> Real:
        mag = psi_log(A=max(n, 1), N=max(n, 2), s=s, q=q, c8=c8)
        return real_neg(mag.log)

    return family


def digit_positions(
    psi_family: Optional[PsiFamily],
    radix: int,
    count: int,
    mode: str = "toy",
    d1: int = 1,
    family_description: str = "",
) -> DigitConstruction:
    """Construct d_1 < d_2 < ... so that the convergents a_n/q_n of
    c = sum radix^-d_n satisfy |c - a_n/q_n| < psi-target at every stage.

    toy: psi_family(n, q) -> log(1/psi_n(q)), a user-supplied modest function.
    tower: the genuine threshold family (standard_tower_family).
    corollary: the fixed rule d_{n+1} = 100^(1 + n d_n) (radix 10).
    """
    if radix < 2 or count < 1 or d1 < 1:
        raise ValueError("radix >= 2, count >= 1, d1 >= 1 required")
    positions: List[Real] = [d1]
    checks: List[StageCheck] = []

    if mode == "corollary":
        desc = family_description or "d_{n+1}=100^(1+n*d_n)"
        for n in range(1, count):
            d_n = positions[-1]
            if isinstance(d_n, int):
                exp_val = 1 + n * d_n
                # 100^exp stays a plain int only while its bit size is modest
                if exp_val * 7 > (1 << 12):
                    positions.append(Tower(100, Fraction(exp_val)))
                else:
                    positions.append(100**exp_val)
            else:
                if real_depth(d_n) + 1 > TOWER_DEPTH_LIMIT:
                    raise DepthExceeded("corollary position exceeds depth limit", positions)
                exponent = real_add(real_mul(Fraction(n), d_n), Fraction(1))
                positions.append(Tower(100, exponent))
            checks.append(StageCheck(n, "10^{d_n}", "growth-rule", True))
        return DigitConstruction(radix=10, mode=mode, positions=positions, stage_checks=checks, family_description=desc)

    if mode not in ("toy", "tower"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "tower" and psi_family is None:
        psi_family = standard_tower_family()
    if psi_family is None:
        raise ValueError("toy mode needs a psi family")
    desc = family_description or mode

    for n in range(1, count):
        d_n = positions[-1]
        if isinstance(d_n, int) and d_n * radix.bit_length() <= 1 << 24:
            q_n: Union[int, Real] = radix**d_n
            q_desc = f"{radix}^{d_n}"
        else:
            q_n = Tower(radix, Fraction(d_n) if isinstance(d_n, int) else d_n)
            q_desc = f"{radix}^(d_{n})"
        log_inv = psi_family(n, q_n)
        if isinstance(log_inv, (int, float)):
            log_inv = Fraction(log_inv)
        log_inv = normalize_real(log_inv)
        try:
            d_next = _next_position(log_inv, radix)
        except DepthExceeded as exc:
            raise DepthExceeded(str(exc), positions) from None
        if isinstance(d_next, int):
            if isinstance(d_n, int) and d_next <= d_n:
                d_next = d_n + 1  # monotonicity guard for degenerate toy families
        positions.append(d_next)
        holds, kind = _stage_tail_ok(d_next, log_inv, radix)
        checks.append(StageCheck(n, q_desc, kind, holds))
    return DigitConstruction(radix=radix, mode=mode, positions=positions, stage_checks=checks, family_description=desc)


def digit_query(construction_or_exponent, position: int) -> Optional[int]:
    """Digit of c at a position: 1 iff the position is one of the d_n.
    Returns None (unknown) only past the representable depth."""
    if isinstance(construction_or_exponent, DigitConstruction):
        positions: Iterable[Real] = construction_or_exponent.positions
    elif isinstance(construction_or_exponent, DigitSequenceExponent):
        positions = construction_or_exponent.make_positions()
    else:
        raise TypeError("expected a DigitConstruction or DigitSequenceExponent")
    last_was_decided = True
    for pos in positions:
        if isinstance(pos, int):
            if pos == position:
                return 1
            if pos > position:
                return 0
        else:
            try:
                if pos.greater_than_int(position):
                    return 0
            except (UnresolvedComparison, TowerOverflow):
                return None
            return None  # position sits beyond a tower-sized digit: undecidable equality
    return None


# ---------------------------------------------------------------------------
# linear forms, nonvanishing, dissociativity
# ---------------------------------------------------------------------------


@dataclass
class LinearForm:
    coefficients: Tuple[int, ...]
    points: Tuple[int, ...]
    exponent: Exponent

    def __post_init__(self):
        if len(self.coefficients) != len(self.points):
            raise ValueError("coefficients and points must align")
        if not self.coefficients:
            raise ValueError("empty form")
        if all(c == 0 for c in self.coefficients):
            raise ValueError("trivial form (all coefficients zero)")
        if any(x < 1 for x in self.points):
            raise ValueError("points must be positive integers")

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def coefficient_bound(self) -> int:
        return max(abs(c) for c in self.coefficients)

    @property
    def point_bound(self) -> int:
        return max(self.points)

    def terms(self) -> List[Tuple[int, int]]:
        return [(c, x) for c, x in zip(self.coefficients, self.points)]


def _canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


@dataclass
class Certificate:
    kind: str  # "nonvanishing" | "dissociated" | "multiplicative-relation"
    inputs: Dict[str, object]
    verdict: str
    evidence: Dict[str, object]
    precision_bits: int

    def canonical(self) -> str:
        return _canonical_json(
            {
                "kind": self.kind,
                "inputs": self.inputs,
                "verdict": self.verdict,
                "evidence": self.evidence,
                "precision_bits": self.precision_bits,
            }
        )

    def content_hash(self) -> str:
        return hashlib.sha256(self.canonical().encode()).hexdigest()

    def to_json_dict(self) -> Dict[str, object]:
        return {
            "schema_version": 1,
            "kind": self.kind,
            "inputs": self.inputs,
            "verdict": self.verdict,
            "evidence": self.evidence,
            "precision_bits": self.precision_bits,
            "content_hash": self.content_hash(),
        }


def _ball_evidence(ball: RealBall) -> Dict[str, object]:
    lo, hi = ball.lo_fraction(), ball.hi_fraction()
    return {
        "lo": f"{lo.numerator}/{lo.denominator}",
        "hi": f"{hi.numerator}/{hi.denominator}",
        "mid_float": ball.mid_float(),
    }


def _exponent_inputs(c: Exponent) -> str:
    return c.descriptor()


def verify_nonvanishing(
    form: LinearForm,
    max_precision: int = MAX_PRECISION,
    rational_anchor: Optional[Tuple[int, int]] = None,
) -> Certificate:
    """Certify sum a_i x_i^c != 0 by refinement plus the exact escapes; when an
    anchor a/q is supplied (or c is rational) the certificate carries the
    decomposition diagnostics y = alpha + eps*Lambda + remainder."""
    c = form.exponent
    terms = form.terms()
    verdict_obj = compare_sums(terms, [], c, max_precision)
    eval_prec = max(256, verdict_obj.precision_reached or 256)
    merged: Dict[int, int] = {}
    for coeff, x in terms:
        merged[x] = merged.get(x, 0) + coeff
    enclosure = sum_ball({x: cf for x, cf in merged.items() if cf}, c, eval_prec)

    if verdict_obj.is_equal:
        verdict = "zero-certified"
    elif verdict_obj.kind in ("less", "greater"):
        verdict = "nonvanishing"
    else:
        verdict = "unresolved"

    evidence: Dict[str, object] = {
        "enclosure": _ball_evidence(enclosure),
        "witness": verdict_obj.witness,
    }

    anchor = rational_anchor
    if anchor is None and isinstance(c, RationalExponent):
        anchor = (c.a, c.q)
    if anchor is not None:
        a, q = anchor
        anchor_exp = RationalExponent(a, q)
        alpha_terms = {x: cf for x, cf in merged.items() if cf}
        alpha_zero = rational_sum_is_zero(alpha_terms, anchor_exp.a, anchor_exp.q)
        wp = 256
        alpha = sum_ball(alpha_terms, anchor_exp, wp)
        lam = RealBall.exact_int(0, wp)
        for x, cf in sorted(alpha_terms.items()):
            lam = lam + (power_ball(x, anchor_exp, wp) * ball_log_int(x, wp)).scale_int(cf)
        eps = c.enclosure(wp) - RealBall.from_fraction(Fraction(a, q), wp)
        y = sum_ball(alpha_terms, c, wp)
        remainder = y - alpha - eps * lam
        A = form.coefficient_bound
        s = form.size
        N = form.point_bound
        n_c = power_ball(N, c, wp)
        eps_abs = eps.abs()
        stated_bound = n_c.scale_int(A * s) * eps_abs * eps_abs
        ln_n = ball_log_int(N, wp)
        sound_bound = (
            n_c.scale_int(A * s) * (eps_abs * ln_n) * (eps_abs * ln_n)
        ) / RealBall.exact_int(2, wp) if N > 1 else stated_bound
        evidence["decomposition"] = {
            "anchor": f"{a}/{q}",
            "alpha": _ball_evidence(alpha),
            "alpha_zero": alpha_zero,
            "case": "alpha-zero" if alpha_zero else "alpha-nonzero",
            "lambda": _ball_evidence(lam),
            "epsilon": _ball_evidence(eps),
            "remainder": _ball_evidence(remainder),
            "remainder_bound_as_stated": stated_bound.hi_fraction().__float__(),
            "remainder_bound_sound": sound_bound.hi_fraction().__float__(),
        }

    return Certificate(
        kind="nonvanishing",
        inputs={
            "coefficients": list(form.coefficients),
            "points": list(form.points),
            "exponent": _exponent_inputs(c),
            "anchor": None if anchor is None else list(anchor),
        },
        verdict=verdict,
        evidence=evidence,
        precision_bits=eval_prec,
    )


def _signed_vectors(n: int, zero_sum: bool):
    """Nonzero sign vectors in {-1,0,1}^n, first nonzero entry +1 (negations
    are redundant), lexicographic order."""
    import itertools

    for vec in itertools.product((1, 0, -1), repeat=n):
        first = next((v for v in vec if v != 0), 0)
        if first != 1:
            continue
        if zero_sum and sum(vec) != 0:
            continue
        yield vec


def check_dissociated(
    S: Sequence[int],
    c: Exponent,
    variant: str = "full",
    max_precision: int = MAX_PRECISION,
) -> Certificate:
    """Certify that all +-1/0 signed combinations of {n^c : n in S} are nonzero
    (variant "zero_sum" restricts to vectors with vanishing coefficient sum)."""
    S = list(S)
    if not 1 <= len(S) <= 16:
        raise ValueError("need 1 <= |S| <= 16 (sign-vector enumeration)")
    if len(set(S)) != len(S) or any(x < 1 for x in S):
        raise ValueError("S must be distinct positive integers")
    if variant not in ("full", "zero_sum"):
        raise ValueError(f"unknown variant {variant!r}")

    min_abs_lo: Optional[Fraction] = None
    min_vec: Optional[Tuple[int, ...]] = None
    unresolved = 0
    checked = 0
    witness: Optional[Tuple[int, ...]] = None
    for vec in _signed_vectors(len(S), variant == "zero_sum"):
        checked += 1
        terms = [(v, x) for v, x in zip(vec, S) if v != 0]
        verdict = compare_sums(terms, [], c, max_precision)
        if verdict.is_equal:
            witness = vec
            break
        if not verdict.is_resolved:
            unresolved += 1
            continue
        ball = sum_ball({x: v for v, x in terms}, c, 128).abs()
        lo = ball.lo_fraction()
        if min_abs_lo is None or lo < min_abs_lo:
            min_abs_lo = lo
            min_vec = vec

    if witness is not None:
        verdict_str = "not-dissociated"
        evidence: Dict[str, object] = {"witness": list(witness), "vectors_checked": checked}
    elif unresolved:
        verdict_str = "unresolved"
        evidence = {"unresolved_vectors": unresolved, "vectors_checked": checked}
    else:
        verdict_str = "dissociated"
        evidence = {
            "vectors_checked": checked,
            "min_abs_enclosure_lo": float(min_abs_lo) if min_abs_lo is not None else None,
            "min_abs_vector": list(min_vec) if min_vec else None,
        }
    return Certificate(
        kind="dissociated",
        inputs={"set": list(S), "exponent": _exponent_inputs(c), "variant": variant},
        verdict=verdict_str,
        evidence=evidence,
        precision_bits=max_precision,
    )


# ---------------------------------------------------------------------------
# multiplicative independence
# ---------------------------------------------------------------------------


@dataclass
class MultiplicativeIndependence:
    values: Tuple[int, ...]
    independent: bool
    relation: Optional[Tuple[int, ...]] = None

    def to_certificate(self) -> Certificate:
        return Certificate(
            kind="multiplicative-relation",
            inputs={"values": list(self.values)},
            verdict="independent" if self.independent else "dependent",
            evidence={"relation": None if self.relation is None else list(self.relation)},
            precision_bits=0,
        )


def _integer_kernel_basis(rows: List[List[int]]) -> List[List[int]]:
    """Basis of {v in Z^s : v * M = 0} by unimodular row reduction of M."""
    s = len(rows)
    m = [list(r) for r in rows]
    u = [[1 if i == j else 0 for j in range(s)] for i in range(s)]
    cols = len(m[0]) if m else 0
    pivot_row = 0
    for col in range(cols):
        # find a nonzero entry at/below pivot_row and reduce the column by gcd
        while True:
            nz = [i for i in range(pivot_row, s) if m[i][col] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(m[i][col]))
            if i0 != pivot_row:
                m[pivot_row], m[i0] = m[i0], m[pivot_row]
                u[pivot_row], u[i0] = u[i0], u[pivot_row]
            done = True
            for i in range(pivot_row + 1, s):
                if m[i][col] != 0:
                    k = m[i][col] // m[pivot_row][col]
                    m[i] = [a - k * b for a, b in zip(m[i], m[pivot_row])]
                    u[i] = [a - k * b for a, b in zip(u[i], u[pivot_row])]
                    if m[i][col] != 0:
                        done = False
            if done:
                break
        if any(m[i][col] != 0 for i in range(pivot_row, s)):
            pivot_row += 1
            if pivot_row == s:
                break
    return [u[i] for i in range(s) if all(v == 0 for v in m[i])]


def _lll_reduce(basis: List[List[int]]) -> List[List[int]]:
    """Textbook LLL (delta = 3/4) with exact Fraction Gram-Schmidt."""
    b = [list(v) for v in basis]
    n = len(b)
    if n <= 1:
        return b

    def dot(x, y):
        return sum(Fraction(a) * Fraction(c) for a, c in zip(x, y))

    def gso():
        bstar: List[List[Fraction]] = []
        mu: List[List[Fraction]] = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            v = [Fraction(x) for x in b[i]]
            for j in range(i):
                denom = dot(bstar[j], bstar[j])
                mu[i][j] = dot(b[i], bstar[j]) / denom if denom else Fraction(0)
                v = [a - mu[i][j] * c for a, c in zip(v, bstar[j])]
            bstar.append(v)
        return bstar, mu

    k = 1
    bstar, mu = gso()
    while k < n:
        for j in range(k - 1, -1, -1):
            if abs(mu[k][j]) > Fraction(1, 2):
                r = round(mu[k][j])
                b[k] = [a - r * c for a, c in zip(b[k], b[j])]
                bstar, mu = gso()
        lhs = dot(bstar[k], bstar[k])
        rhs = (Fraction(3, 4) - mu[k][k - 1] ** 2) * dot(bstar[k - 1], bstar[k - 1])
        if lhs >= rhs:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            bstar, mu = gso()
            k = max(k - 1, 1)
    return b


def _verify_relation(xs: Sequence[int], v: Sequence[int]) -> bool:
    num = 1
    den = 1
    for x, e in zip(xs, v):
        if e > 0:
            num *= x**e
        elif e < 0:
            den *= x ** (-e)
    return num == den


def multiplicative_independence(xs: Sequence[int]) -> MultiplicativeIndependence:
    """Exact multiplicative-independence test by prime factorization and an
    integer kernel computation; a dependence is returned as a short exponent
    vector, verified by big-integer power comparison."""
    xs = tuple(int(x) for x in xs)
    if any(x < 1 for x in xs):
        raise ValueError("values must be positive integers")
    for i, x in enumerate(xs):
        if x == 1:
            rel = tuple(1 if j == i else 0 for j in range(len(xs)))
            return MultiplicativeIndependence(xs, independent=False, relation=rel)
    facs = [intmath.factorize(x) for x in xs]
    primes = sorted({p for f in facs for p in f})
    rows = [[f.get(p, 0) for p in primes] for f in facs]
    kernel = _integer_kernel_basis(rows)
    if not kernel:
        return MultiplicativeIndependence(xs, independent=True)
    reduced = _lll_reduce(kernel)
    best = min(reduced, key=lambda v: (sum(a * a for a in v), [abs(a) for a in v], v))
    first = next(a for a in best if a != 0)
    if first < 0:
        best = [-a for a in best]
    relation = tuple(best)
    if not _verify_relation(xs, relation):
        raise AssertionError("kernel vector failed exact verification")
    return MultiplicativeIndependence(xs, independent=False, relation=relation)


# ---------------------------------------------------------------------------
# certificate rechecking
# ---------------------------------------------------------------------------


def recheck_certificate(payload: Dict[str, object]) -> Tuple[bool, Certificate]:
    """Re-run the verifier on a serialized certificate; returns (matches,
    freshly computed certificate)."""
    kind = payload.get("kind")
    inputs = payload.get("inputs", {})
    if kind == "multiplicative-relation":
        fresh = multiplicative_independence(inputs["values"]).to_certificate()
    elif kind == "dissociated":
        c = _exponent_from_descriptor(inputs["exponent"])
        fresh = check_dissociated(inputs["set"], c, variant=inputs.get("variant", "full"))
    elif kind == "nonvanishing":
        c = _exponent_from_descriptor(inputs["exponent"])
        form = LinearForm(tuple(inputs["coefficients"]), tuple(inputs["points"]), c)
        anchor = inputs.get("anchor")
        fresh = verify_nonvanishing(form, rational_anchor=tuple(anchor) if anchor else None)
    else:
        raise ValueError(f"unknown certificate kind {kind!r}")
    matches = fresh.verdict == payload.get("verdict") and fresh.content_hash() == payload.get(
        "content_hash", fresh.content_hash()
    )
    return matches, fresh


def _exponent_from_descriptor(desc: str) -> Exponent:
    """Rebuild an exponent from its canonical descriptor (the subset of forms
    certificates serialize)."""
    from .cli import parse_exponent  # descriptor grammar is owned by the CLI

    return parse_exponent(desc)
