import math
import random
from fractions import Fraction as F

import pytest

from cpowers.dissociation import (
    DepthExceeded,
    LinearForm,
    alpha_lower_log,
    baker_wustholz_log,
    c0_log,
    check_dissociated,
    digit_positions,
    digit_query,
    feldman_log_bound,
    multiplicative_independence,
    prime_corollary_log,
    psi_log,
    rational_threshold_log,
    recheck_certificate,
    verify_nonvanishing,
)
from cpowers.energy import construct_sporadic
from cpowers.magnitude import LogMagnitude, Tower, real_depth
from cpowers.realcore import RealBall, fraction_ball_exponent, rational_exponent, sqrt_ball_exponent


# ---------------------------------------------------------------------------
# bound calculus
# ---------------------------------------------------------------------------


def test_psi_log_exact_base_case():
    mag = psi_log(1, 2, 1, 1, c8=1)
    assert mag.log_exact() == -(2**600)
    assert len(str(2**600)) == 181


def test_psi_log_tower_for_s2():
    mag = psi_log(1, 1, 2, 1, c8=1)
    assert mag.log_is_tower()
    # max{c8, q^s, s, logA, logN} = s = 2, so the exponent is 600*16 + 50*4*1
    assert mag.log.exponent == 9800 and mag.log.sign == -1


def test_psi_monotone_probe():
    assert psi_log(1, 2, 1, 2, c8=1) < psi_log(1, 2, 1, 1, c8=1)


def _grid_monotone(fn, grids, n_samples=120, seed=5):
    rng = random.Random(seed)
    for _ in range(n_samples):
        point = {k: rng.choice(v) for k, v in grids.items()}
        for key, values in grids.items():
            lower = dict(point)
            higher = dict(point)
            lo_v, hi_v = sorted(rng.sample(values, 2)) if len(values) > 1 else (values[0], values[0])
            lower[key], higher[key] = lo_v, hi_v
            assert fn(**higher) <= fn(**lower), (key, lower, higher)


def test_psi_monotone_grid():
    _grid_monotone(
        lambda A, N, s, q: psi_log(A, N, s, q),
        {"A": [1, 2, 8, 100], "N": [2, 3, 50, 1000], "s": [1, 2], "q": [1, 2, 5, 11]},
    )


def test_c0_monotone_grid():
    _grid_monotone(lambda m, N: c0_log(m, N), {"m": [1, 2, 3, 5], "N": [16, 32, 100, 1000]})


def test_feldman_monotone_grid():
    _grid_monotone(
        lambda s, q, A, N: feldman_log_bound(s, q, A, N, a=1),
        {"s": [1, 2], "q": [1, 2, 3], "A": [1, 2, 10], "N": [2, 10, 100]},
    )


def test_baker_values():
    b = baker_wustholz_log(2, 10)
    assert abs(b.log_float() - (-(32**8) * math.log(10) ** 2)) < 1e-3
    e_ball = RealBall.exact_int(1, 256).exp()
    b1 = baker_wustholz_log(1, e_ball)
    assert abs(b1.log_float() + 16**6) < 1e-6
    b3 = baker_wustholz_log(3, 5)
    assert abs(b3.log_float() - (-(48**10) * math.log(5) ** 3)) < 1e2


def test_c0_values_and_ordering():
    e_ball = RealBall.exact_int(1, 256).exp()
    c0 = c0_log(1, e_ball)
    assert abs(c0.log_float() + 16**6) < 1e-4
    c2 = c0_log(2, 10)
    assert abs(c2.log_float() - (baker_wustholz_log(2, 10).log_float() - math.log(2) - 2 * math.log(math.log(10)))) < 1e-2
    # c0 < baker for N past e^e
    for m, n in ((1, 16), (2, 100), (3, 1000)):
        assert c0_log(m, n) < baker_wustholz_log(m, n)


def test_rational_threshold_example():
    rt = rational_threshold_log(1, 2, 1, 2, c=F(1, 2))
    expect = -math.log(2) - math.log(math.log(2))
    assert abs(rt.log_float() - expect) < 1e-12


def test_alpha_lower_example():
    al = alpha_lower_log(1, 2, F(1, 2), 2)
    assert abs(al.log_float() + math.log(2) / 2) < 1e-12


def test_prime_corollary_chain():
    pc = prime_corollary_log(F(1, 2), 2, 3, a=1)
    assert pc.log_exact() == -192
    # chain holds across a small domain grid
    for q in (2, 3):
        for n in (2, 3, 5, 8):
            prime_corollary_log(F(1, 2), q, n, a=1)  # raises if the chain breaks


def test_feldman_value_and_growth_exponent():
    # with c3 = e, A=1, q=1, a=1: ln B = 65 ln 4 + 14 ln(1 + ln 2N) exactly
    e_frac = F(27182818284590452, 10**16)
    xs = []
    ys = []
    for n in (2, 2**4, 2**10, 2**16, 2**20):
        mag = feldman_log_bound(1, 1, 1, n, 1, c3=e_frac)
        b_val = -mag.log_float()
        xs.append(math.log(1.0 + math.log(2 * n)))
        ys.append(math.log(b_val))
    slopes = [(ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]) for i in range(len(xs) - 1)]
    for sl in slopes:
        assert abs(sl - 14.0) < 0.05  # 12 s^2 + 4 s - 2 at s = 1
    b = feldman_log_bound(1, 1, 1, 2, 1, c3=e_frac)
    ref = (1 + math.log(4)) * (4**5 * (1 + math.log(4))) ** 13
    assert abs(-b.log_float() / ref - 1) < 1e-6


def test_feldman_is_a_true_lower_bound_sample():
    # |Lambda| for multiplicatively independent points far exceeds exp(-B)
    import gmpy2

    lam = RealBall.exact_int(0, 256)
    anchor = rational_exponent(1, 2)
    from cpowers.realcore import ball_log_int, power_ball

    for cf, x in ((1, 2), (1, 3), (-1, 5)):
        lam = lam + (power_ball(x, anchor, 256) * ball_log_int(x, 256)).scale_int(cf)
    mag_lam = LogMagnitude.from_fraction(lam.midpoint)
    bound = feldman_log_bound(3, 2, 1, 5, 1)
    assert bound < mag_lam.abs()


# ---------------------------------------------------------------------------
# digit construction
# ---------------------------------------------------------------------------


def test_toy_worked_example_matches_trace():
    toy = digit_positions(
        lambda n, q: F(n) + F(q), 2, 3, mode="toy", d1=1, family_description="n+q"
    )
    # threshold 2e^3 + 1 ~ 41.17: 2^6 = 64 >= it, 2^5 = 32 < it
    assert toy.positions == [1, 6, 97]
    assert all(c.holds for c in toy.stage_checks)


def test_toy_positions_strictly_increasing_and_verified():
    def fam(n, q):
        return F(n) + F((int(q).bit_length() - 1) ** 2)

    toy = digit_positions(fam, 2, 6, mode="toy", d1=1, family_description="n+log2q^2")
    assert toy.positions == sorted(toy.positions)
    assert len(toy.positions) == 6
    assert all(isinstance(p, int) for p in toy.positions)
    assert all(c.holds for c in toy.stage_checks)


def test_tower_mode_first_position_is_huge_integer():
    tw = digit_positions(None, 2, 3, mode="tower", d1=1)
    d2 = tw.positions[1]
    assert isinstance(d2, int) and len(str(d2)) >= 180
    assert isinstance(tw.positions[2], Tower)
    assert all(c.holds for c in tw.stage_checks)


def test_tower_mode_depth_limit():
    with pytest.raises(DepthExceeded) as exc_info:
        digit_positions(None, 2, 7, mode="tower", d1=1)
    assert len(exc_info.value.partial) >= 4


def test_corollary_positions_and_queries():
    cor = digit_positions(None, 10, 4, mode="corollary")
    assert cor.positions[0] == 1
    assert cor.positions[1] == 10000
    d3 = cor.positions[2]
    assert isinstance(d3, Tower) and d3.base == 100 and d3.exponent == 20001
    assert real_depth(d3) == 2
    assert real_depth(cor.positions[3]) == 3
    assert digit_query(cor, 1) == 1
    assert digit_query(cor, 9999) == 0
    assert digit_query(cor, 10000) == 1
    assert digit_query(cor, 10**6) == 0


def test_digit_query_speed():
    import time

    cor = digit_positions(None, 10, 4, mode="corollary")
    t0 = time.perf_counter()
    for pos in (1, 17, 9999, 10000, 12345, 10**6):
        digit_query(cor, pos)
    assert (time.perf_counter() - t0) / 6 < 1e-3


def test_convergent_inequality_at_256_bits():
    # |c - a_n/q_n| <= 2^(1-d_{n+1}) < psi-target, verified in log space at
    # 256 bits (the tail magnitudes themselves dwarf any fixed precision)
    from cpowers.realcore import ball_log_int

    def fam(n, q):
        return F(n) + F((int(q).bit_length() - 1) ** 2)

    toy = digit_positions(fam, 2, 6, mode="toy", d1=1)
    ds = toy.positions
    ln2 = ball_log_int(2, 256)
    for n in range(1, len(ds)):
        # log of the geometric tail bound: (1 - d_{n+1}) ln 2
        lhs = ln2.scale_int(1 - ds[n])
        target = F(n) + F(ds[n - 1] ** 2)  # log(1/psi_n(q_n)), q_n = 2^{d_n}
        rhs = RealBall.from_fraction(-target, 256)
        assert lhs.hi < rhs.lo
    # cross-check the early stages against explicit partial sums: the true
    # tail is below sum_{n<j<=4} 2^-d_j + 2^(1-d_5) (positions 5+ are geometric)
    for n in (1, 2, 3):
        tail_hi = sum(F(2) ** (-d) for d in ds[n:4]) + F(2) ** (1 - ds[4])
        target = F(n) + F(ds[n - 1] ** 2)
        lhs = RealBall.from_fraction(tail_hi, 256).log()
        rhs = RealBall.from_fraction(-target, 256)
        assert lhs.hi < rhs.lo


# ---------------------------------------------------------------------------
# nonvanishing and dissociation certificates
# ---------------------------------------------------------------------------


def test_verify_nonvanishing_surd_example():
    form = LinearForm((1, 1, 1, -4), (2, 3, 5, 7), rational_exponent(1, 2))
    cert = verify_nonvanishing(form)
    assert cert.verdict == "nonvanishing"
    assert abs(cert.evidence["enclosure"]["mid_float"] + 5.2006728968) < 1e-8
    d = cert.evidence["decomposition"]
    assert d["case"] == "alpha-nonzero" and not d["alpha_zero"]


def test_verify_nonvanishing_zero_certified():
    sp = construct_sporadic(2)
    cert = verify_nonvanishing(LinearForm((1, 1, -1, -1), (16, 1, 8, 4), sp.c))
    assert cert.verdict == "zero-certified"
    assert cert.evidence["witness"] == "defining-polynomial"


def test_trivial_form_rejected():
    with pytest.raises(ValueError):
        LinearForm((0, 0), (2, 3), rational_exponent(1, 2))


def test_decomposition_identity_small_eps():
    # c = 1/2 + eps with eps an exact dyadic; remainder must obey the sound
    # bound, while the as-stated bound (no log^2 factor) is violated for x=7
    for k in (20, 40):
        eps = F(1, 2**k)
        c = fraction_ball_exponent(F(1, 2) + eps, 512)
        form = LinearForm((1,), (7,), c)
        cert = verify_nonvanishing(form, rational_anchor=(1, 2))
        d = cert.evidence["decomposition"]
        rem = abs(d["remainder"]["mid_float"])
        assert rem <= d["remainder_bound_sound"] * (1 + 1e-6)
        assert rem > d["remainder_bound_as_stated"]  # the stated bound drops log^2 x
    # multi-term form stays within the sound bound too
    c = fraction_ball_exponent(F(1, 2) + F(1, 2**20), 512)
    form = LinearForm((1, 1, -2), (2, 3, 5), c)
    cert = verify_nonvanishing(form, rational_anchor=(1, 2))
    d = cert.evidence["decomposition"]
    assert abs(d["remainder"]["mid_float"]) <= d["remainder_bound_sound"] * (1 + 1e-6)


def test_check_dissociated_examples():
    cert = check_dissociated([2, 3, 5], rational_exponent(1, 2))
    assert cert.verdict == "dissociated"
    assert cert.evidence["vectors_checked"] == 13  # (3^3 - 1)/2 canonical reps

    sp = construct_sporadic(2)
    cert2 = check_dissociated([16, 8, 4, 1], sp.c)
    assert cert2.verdict == "not-dissociated"
    assert cert2.evidence["witness"] == [1, -1, -1, 1]

    assert check_dissociated([1], sqrt_ball_exponent(2)).verdict == "dissociated"


def test_check_dissociated_zero_sum_variant():
    cert = check_dissociated([2, 3, 5], rational_exponent(1, 2), variant="zero_sum")
    assert cert.verdict == "dissociated"
    assert cert.evidence["vectors_checked"] == 3  # (1,-1,0),(1,0,-1),(0,1,-1)


def test_check_dissociated_input_validation():
    with pytest.raises(ValueError):
        check_dissociated([], rational_exponent(1, 2))
    with pytest.raises(ValueError):
        check_dissociated([2, 2], rational_exponent(1, 2))
    with pytest.raises(ValueError):
        check_dissociated(list(range(1, 19)), rational_exponent(1, 2))


# ---------------------------------------------------------------------------
# multiplicative independence
# ---------------------------------------------------------------------------


def test_multiplicative_independence_examples():
    assert multiplicative_independence((2, 3, 5)).independent
    r = multiplicative_independence((4, 8))
    assert r.relation == (3, -2)
    r2 = multiplicative_independence((16, 8, 4))
    assert not r2.independent
    v = r2.relation
    assert sum(a * a for a in v) <= 6  # at least as short as (1,-2,1)
    num = den = 1
    for x, e in zip((16, 8, 4), v):
        num *= x ** max(e, 0)
        den *= x ** max(-e, 0)
    assert num == den and any(v)


def test_one_is_always_dependent():
    r = multiplicative_independence((7, 1))
    assert r.relation == (0, 1)


def test_relation_soundness_random():
    rng = random.Random(11)
    for _ in range(25):
        xs = tuple(rng.randint(2, 400) for _ in range(rng.randint(2, 5)))
        res = multiplicative_independence(xs)
        if res.relation is not None:
            num = den = 1
            for x, e in zip(xs, res.relation):
                num *= x ** max(e, 0)
                den *= x ** max(-e, 0)
            assert num == den and any(res.relation)
        else:
            # spot-check independence: no small relation exists
            import itertools

            for vec in itertools.product(range(-2, 3), repeat=len(xs)):
                if any(vec):
                    num = den = 1
                    for x, e in zip(xs, vec):
                        num *= x ** max(e, 0)
                        den *= x ** max(-e, 0)
                    assert num != den


def test_contrapositive_of_dissociation_thresholds():
    # {2,3,5} is multiplicatively independent yet 2^c + 3^c = 5^c at c=1;
    # the witness exponent must violate every smallness threshold
    assert multiplicative_independence((2, 3, 5)).independent
    cert = check_dissociated([2, 3, 5], rational_exponent(1, 1))
    assert cert.verdict == "not-dissociated"
    assert cert.evidence["witness"] == [1, 1, -1]
    c_mag = LogMagnitude.from_fraction(F(1))
    assert c0_log(3, 5) < c_mag  # c = 1 is far above the c0 threshold
    for q in (2, 3, 4):
        a = q - 1  # nearest a/q below c = 1
        gap = LogMagnitude.from_fraction(F(1) - F(a, q))
        assert rational_threshold_log(3, 5, a, q, c=F(1)) < gap


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------


def test_certificate_roundtrip_dissociated():
    cert = check_dissociated([2, 3, 5], rational_exponent(1, 2))
    payload = cert.to_json_dict()
    matches, fresh = recheck_certificate(payload)
    assert matches and fresh.content_hash() == payload["content_hash"]


def test_certificate_roundtrip_nonvanishing_and_relation():
    form = LinearForm((1, 1, 1, -4), (2, 3, 5, 7), rational_exponent(1, 2))
    cert = verify_nonvanishing(form)
    matches, _ = recheck_certificate(cert.to_json_dict())
    assert matches
    rel = multiplicative_independence((4, 8)).to_certificate()
    matches2, _ = recheck_certificate(rel.to_json_dict())
    assert matches2


def test_certificate_detects_tampering():
    cert = check_dissociated([2, 3, 5], rational_exponent(1, 2))
    payload = cert.to_json_dict()
    payload["verdict"] = "not-dissociated"
    matches, _ = recheck_certificate(payload)
    assert not matches
