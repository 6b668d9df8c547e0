import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cpowers.energy import construct_sporadic
from cpowers.expsum import (
    exp_sum_D,
    fourth_moment_report,
    large_values_sweep,
    parseval_check,
    rep_count_profile,
    window_pair_count,
)
from cpowers.realcore import RealBall, UnresolvedComparison, power_ball, rational_exponent, sqrt_ball_exponent


def test_exp_sum_at_zero_is_exact_N():
    d = exp_sum_D(sqrt_ball_exponent(2), 7, 0)
    assert d.re.is_exact() and d.re.lo_fraction() == 7
    assert d.im.is_exact() and d.im.lo_fraction() == 0


def test_exp_sum_triangle_inequality():
    c = sqrt_ball_exponent(2)
    for t in (F(1, 3), F(2, 7), F(9, 11)):
        d = exp_sum_D(c, 9, t)
        assert d.abs().lo_fraction() <= 9 + F(1, 1000)


def test_exp_sum_alternating_cancellation():
    d = exp_sum_D(rational_exponent(1, 1), 4, F(1, 2))
    assert d.re.contains_zero() and d.im.contains_zero()
    assert float(d.abs().hi_fraction()) < 1e-20


def test_profile_small_cases():
    p = rep_count_profile(sqrt_ball_exponent(2), 2)
    assert (p.Q, p.phi) == (3, [1, 2, 1])
    p = rep_count_profile(rational_exponent(1, 1), 3)
    assert (p.Q, p.phi) == (5, [1, 2, 3, 2, 1])
    assert p.energy == 19


def test_profile_consistency_invariants():
    sp = construct_sporadic(2)
    for c, n in ((sqrt_ball_exponent(2), 12), (sp.c, 16), (rational_exponent(1, 2), 10)):
        p = rep_count_profile(c, n)
        assert sum(p.phi) == n * n
        assert p.certified
        # values sorted ascending
        mids = [v.mid_float() for v in p.values]
        assert mids == sorted(mids)


def test_profile_saturated_case():
    p = rep_count_profile(sqrt_ball_exponent(2), 32)
    assert p.Q == 528
    assert p.energy == 2 * 32 * 32 - 32


def test_parseval_tiny_and_exact():
    r = parseval_check([1, 2, 1])
    assert r.lhs == 6 and abs(r.rhs - 6) < 1e-12
    r = parseval_check([1, 2, 3, 2, 1], certified=True)
    assert r.lhs == 19 and r.relative < 1e-12 and r.certified_contains


@given(st.lists(st.integers(min_value=0, max_value=100), min_size=1, max_size=64))
@settings(max_examples=60, deadline=None)
def test_parseval_random_profiles(phi):
    if not any(phi):
        phi = phi + [1]
    r = parseval_check(phi)
    assert r.relative <= 1e-9


def test_parseval_certified_random():
    rng = random.Random(3)
    phi = [rng.randint(0, 30) for _ in range(48)]
    r = parseval_check(phi, certified=True)
    assert r.certified_contains


def test_fourth_moment_identities():
    fm = fourth_moment_report(rational_exponent(1, 1), 3)
    assert fm.Q == 5 and fm.energy == 19
    assert fm.identity_value == 95 and fm.prediction == 90
    fm32 = fourth_moment_report(sqrt_ball_exponent(2), 32)
    assert fm32.identity_value == 528 * 2016 == 1_064_448
    assert fm32.prediction == 2 * 32 * 32 * 528 == 1_081_344
    assert fm32.difference == 32 * 528  # E = 2N^2 - N makes it exactly NQ
    sp = construct_sporadic(2)
    fm16 = fourth_moment_report(sp.c, 16)
    assert fm16.energy == 2 * 16 * 16 - 16 + 8
    assert fm16.Q == 135
    assert fm16.identity_value == 135 * 504


def test_large_values_trivial_threshold():
    res = large_values_sweep(sqrt_ball_exponent(2), 8, [9])
    assert res[0].count == 0


def test_large_values_sweep_small():
    results = large_values_sweep(sqrt_ball_exponent(2), 8, [F(8), F(4), F(2)])
    counts = [r.count for r in results]
    assert counts == sorted(counts)  # monotone in shrinking V
    for r in results:
        assert r.count <= 16 * r.bound


def test_window_counts():
    c = sqrt_ball_exponent(2)
    assert window_pair_count(c, 8, 0) == 8
    y = power_ball(2, c, 256) - RealBall.exact_int(1, 256)
    assert window_pair_count(c, 8, y) == 1
    assert window_pair_count(c, 8, 100) == 0
    # difference profile convolution spot check: y = 3^c - 2^c hits only (3,2)
    y2 = power_ball(3, c, 256) - power_ball(2, c, 256)
    assert window_pair_count(c, 8, y2) == 1


def test_window_count_matches_profile_differences():
    c = rational_exponent(2, 1)
    # squares: differences coincide (e.g. 4-1 = 3 has (2,1); 9-4=5 none else <= 5)
    assert window_pair_count(c, 5, 3) == 1
    # x^2 - y^2 = 5: (3,2); also 9-4 ... only one pair for N=5
    assert window_pair_count(c, 5, 5) == 1
    # value with two representations: 16-1 = 15, 25-9... 15 only (4,1) for N=5;
    # use 5: 9-4 and ... stick with a doubled case: 21-? skip; check y=0 diag
    assert window_pair_count(c, 5, 0) == 5


def test_window_exact_boundaries_are_decided_inclusively():
    c = rational_exponent(1, 1)
    # integer differences, delta = 1/2, closed window [1, 2]: diffs 1 and 2
    # both certifiably on the boundary, 3 + 2 pairs
    assert window_pair_count(c, 4, F(3, 2)) == 5


def test_window_unresolved_on_irrational_boundary():
    c = sqrt_ball_exponent(2)
    delta = F(1, 10)
    # center the window so that the difference 2^c - 1 sits exactly on its
    # lower edge: membership can never be certified either way
    y = (power_ball(2, c, 256) - RealBall.exact_int(1, 256)) + RealBall.from_fraction(delta, 256)
    with pytest.raises(UnresolvedComparison):
        window_pair_count(c, 8, y, delta=delta)
