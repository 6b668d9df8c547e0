from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cpowers import polys
from cpowers.realcore import (
    AlgebraicLogExponent,
    DigitSequenceExponent,
    NumericBallExponent,
    RealBall,
    TailUnbounded,
    ball_pi,
    compare_sums,
    power_ball,
    rational_exponent,
    sqrt_ball_exponent,
)

PLASTIC_EXP = AlgebraicLogExponent(2, (-1, -1, 0, 1), F(13, 10), F(14, 10))


def as_mp(fr: F):
    return mpmath.mpf(fr.numerator) / fr.denominator


def contains_ref(ball: RealBall, ref) -> bool:
    return as_mp(ball.lo_fraction()) <= ref <= as_mp(ball.hi_fraction())


# ---------------------------------------------------------------------------
# ball arithmetic
# ---------------------------------------------------------------------------


@given(
    a=st.fractions(min_value=-1000, max_value=1000),
    b=st.fractions(min_value=-1000, max_value=1000),
    r1=st.fractions(min_value=0, max_value=1),
    r2=st.fractions(min_value=0, max_value=1),
)
@settings(max_examples=100, deadline=None)
def test_ball_ops_contain_exact_points(a, b, r1, r2):
    x = RealBall.from_mid_rad(a, r1, 64)
    y = RealBall.from_mid_rad(b, r2, 64)
    assert x.contains_fraction(a) and y.contains_fraction(b)
    assert (x + y).contains_fraction(a + b)
    assert (x - y).contains_fraction(a - b)
    assert (x * y).contains_fraction(a * b)
    if not y.contains_zero():
        assert (x / y).contains_fraction(F(a) / F(b))
    assert (-x).contains_fraction(-a)
    assert x.abs().contains_fraction(abs(a))


@given(x=st.fractions(min_value=F(1, 100), max_value=10**6))
@settings(max_examples=80, deadline=None)
def test_ball_exp_log_sound(x):
    mpmath.mp.prec = 300
    b = RealBall.from_fraction(x, 96)
    assert contains_ref(b.log(), mpmath.log(as_mp(F(x))))
    if x < 500:
        assert contains_ref(b.exp(), mpmath.e ** as_mp(F(x)))


@given(x=st.fractions(min_value=-50, max_value=50))
@settings(max_examples=80, deadline=None)
def test_ball_trig_sound(x):
    mpmath.mp.prec = 300
    b = RealBall.from_fraction(x, 96)
    assert contains_ref(b.sin(), mpmath.sin(as_mp(F(x))))
    assert contains_ref(b.cos(), mpmath.cos(as_mp(F(x))))


def test_pi_ball():
    mpmath.mp.prec = 300
    assert contains_ref(ball_pi(128), mpmath.pi)
    assert float(ball_pi(128).radius) < 2.0**-120


# ---------------------------------------------------------------------------
# pow
# ---------------------------------------------------------------------------


def test_pow_of_one_is_exact():
    for c in (rational_exponent(7, 3), sqrt_ball_exponent(2), PLASTIC_EXP):
        b = power_ball(1, c, 64)
        assert b.is_exact() and b.lo_fraction() == 1


def test_pow_rational_exact_square_root():
    b = power_ball(4, rational_exponent(1, 2), 64)
    assert b.is_exact() and b.lo_fraction() == 2


def test_pow_sixteen_alglog_is_phi_fourth():
    # independent oracle: phi by exact bisection, raised to the 4th power
    lo, hi = polys.refine_root((-1, -1, 0, 1), F(1), F(2), F(1, 2**200))
    ref_lo, ref_hi = lo**4, hi**4
    ball = power_ball(16, PLASTIC_EXP, 128)
    assert ball.lo_fraction() <= ref_hi and ref_lo <= ball.hi_fraction()
    assert abs(ball.mid_float() - 3.0795956234914392) < 1e-12


@given(x=st.integers(min_value=2, max_value=2000), prec=st.sampled_from([64, 128]))
@settings(max_examples=60, deadline=None)
def test_pow_soundness_and_guard_radius(x, prec):
    mpmath.mp.prec = 4 * prec
    # rational 3/2
    b = power_ball(x, rational_exponent(3, 2), prec)
    ref = mpmath.mpf(x) ** mpmath.mpf("1.5")
    assert contains_ref(b, ref)
    assert b.radius <= F(2) ** (-prec + 16) * abs(b.midpoint)
    # algebraic log
    b2 = power_ball(x, PLASTIC_EXP, prec)
    phi = mpmath.findroot(lambda t: t**3 - t - 1, mpmath.mpf("1.3247"))
    ref2 = mpmath.e ** (mpmath.log(phi) / mpmath.log(2) * mpmath.log(x))
    assert contains_ref(b2, ref2)
    assert b2.radius <= F(2) ** (-prec + 16) * abs(b2.midpoint)
    # negative rational exponent
    b3 = power_ball(x, rational_exponent(-2, 3), prec)
    ref3 = mpmath.mpf(x) ** (mpmath.mpf(-2) / 3)
    assert contains_ref(b3, ref3)


def test_pow_monotone_in_x():
    c = sqrt_ball_exponent(2)
    prev = power_ball(1, c, 96)
    for x in range(2, 40):
        cur = power_ball(x, c, 96)
        assert prev.hi < cur.lo
        prev = cur


def test_pow_validates_inputs():
    with pytest.raises(ValueError):
        power_ball(0, rational_exponent(1, 2), 64)
    with pytest.raises(ValueError):
        power_ball(2, rational_exponent(1, 2), 16)


# ---------------------------------------------------------------------------
# compare_sums
# ---------------------------------------------------------------------------


def test_syntactic_identity():
    v = compare_sums([(1, 2), (1, 2)], [(1, 2), (1, 2)], sqrt_ball_exponent(2))
    assert v.is_equal and v.witness == "syntactic"


def test_sporadic_identity_certified_algebraically():
    v = compare_sums([(1, 16), (1, 1)], [(1, 8), (1, 4)], PLASTIC_EXP)
    assert v.is_equal and v.witness == "defining-polynomial"


def test_radical_grouping_certifies_rational_equality():
    v = compare_sums([(1, 1), (1, 9)], [(1, 4), (1, 4)], rational_exponent(1, 2))
    assert v.is_equal and v.witness == "radical-grouping"
    # sqrt8 = 2 sqrt2
    v2 = compare_sums([(1, 8)], [(2, 2)], rational_exponent(1, 2))
    assert v2.is_equal


def test_numeric_verdict_sign():
    v = compare_sums([(1, 2), (1, 3)], [(1, 1), (1, 4)], sqrt_ball_exponent(2))
    assert v.kind == "less"  # 2^s2 + 3^s2 - 1 - 4^s2 ~ -0.709
    v2 = compare_sums([(1, 2), (1, 8)], [(1, 1), (1, 9)], rational_exponent(1, 2))
    assert v2.kind == "greater"


def test_exactness_escape_toggle():
    # deleting the exact paths must turn every equal case into Unresolved
    v = compare_sums([(1, 16), (1, 1)], [(1, 8), (1, 4)], PLASTIC_EXP, exact_paths=False)
    assert v.kind == "unresolved" and v.precision_reached == 4096
    v2 = compare_sums([(1, 1), (1, 9)], [(1, 4), (1, 4)], rational_exponent(1, 2), exact_paths=False)
    assert v2.kind == "unresolved"


def test_monotone_refinement():
    lhs, rhs = [(1, 2), (1, 3)], [(1, 1), (1, 4)]
    c = sqrt_ball_exponent(2)
    first = compare_sums(lhs, rhs, c, max_precision=128)
    for mp in (256, 512, 1024, 4096):
        again = compare_sums(lhs, rhs, c, max_precision=mp)
        assert again.kind == first.kind


def test_numeric_ball_exponent_unresolvable_equality_is_honest():
    # artificial wide exponent ball: 2^c vs 2^c via different syntactic terms
    wide = NumericBallExponent(RealBall.from_mid_rad(F(1, 2), F(1, 1000), 64))
    v = compare_sums([(1, 4)], [(1, 5)], wide)
    # 4^c vs 5^c with c in [0.499, 0.501]: separable
    assert v.kind == "less"
    v2 = compare_sums([(1, 1000000)], [(1, 1000001)], wide)
    # separation smaller than the c-ball floor: must stay unresolved, never guessed
    assert v2.kind in ("less", "unresolved")


# ---------------------------------------------------------------------------
# exponent representations
# ---------------------------------------------------------------------------


def test_alglog_validation():
    with pytest.raises(ValueError):
        AlgebraicLogExponent(2, (-1, -1, 0, 1), F(0), F(3))  # endpoints/root count
    with pytest.raises(ValueError):
        AlgebraicLogExponent(2, (2,), F(1), F(2))  # constant
    with pytest.raises(ValueError):
        AlgebraicLogExponent(1, (-1, -1, 0, 1), F(1), F(2))  # base < 2


def test_alglog_power_index():
    assert PLASTIC_EXP.power_index(1) == 0
    assert PLASTIC_EXP.power_index(16) == 4
    assert PLASTIC_EXP.power_index(12) is None


def test_digit_sequence_tail_and_errors():
    def gen3():
        yield 1
        yield 5
        yield 200

    d = DigitSequenceExponent(2, gen3, "t")
    ball = d.enclosure(64)  # scan bound 128 < 200, so 200 is the tail lookahead
    partial = F(1, 2) + F(1, 32)
    assert ball.lo_fraction() <= partial <= ball.hi_fraction()
    # tail bound plus one outward-rounding ulp at 64 bits
    assert ball.hi_fraction() <= partial + F(2) ** (1 - 200) + F(1, 2**58)

    def gen_short():
        yield 1

    with pytest.raises(TailUnbounded):
        DigitSequenceExponent(2, gen_short, "s").enclosure(64)

    def gen_bad():
        yield 5
        yield 3

    with pytest.raises(ValueError):
        DigitSequenceExponent(2, gen_bad, "b").enclosure(64)


def test_descriptors_are_stable():
    assert rational_exponent(2, 4).descriptor() == "rational:1/2"
    assert sqrt_ball_exponent(2).descriptor() == "ball:sqrt2"
    assert PLASTIC_EXP.descriptor() == "alglog:2:-1,-1,0,1:13/10,7/5"
