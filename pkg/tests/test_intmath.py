from cpowers import intmath


def test_primes_and_pi():
    assert intmath.primes_up_to(20) == [2, 3, 5, 7, 11, 13, 17, 19]
    assert intmath.prime_pi(3) == 2
    assert intmath.prime_pi(100) == 25


def test_factorize_matches_reconstruction():
    for n in [1, 2, 12, 97, 360, 2**20 - 1, 10**12 + 39]:
        fac = intmath.factorize(n)
        prod = 1
        for p, e in fac.items():
            assert intmath.factorize(p) == {p: 1}  # p really is prime
            prod *= p**e
        assert prod == n


def test_floor_root():
    assert intmath.floor_root(80, 2) == 8
    assert intmath.floor_root(81, 2) == 9
    assert intmath.floor_root(1000, 3) == 10
    assert intmath.floor_root(999, 3) == 9


def test_power_free_decomposition():
    a, b = intmath.power_free_part(36, 2)
    assert (a, b) == (6, 1)
    a, b = intmath.power_free_part(12, 2)
    assert (a, b) == (2, 3) and a * a * b == 12
    assert intmath.is_power_free(10, 2)
    assert not intmath.is_power_free(12, 2)
    assert intmath.is_power_free(12, 3)


def test_power_free_numbers_squarefree_prefix():
    sqfree = list(intmath.power_free_numbers(2, 20))
    assert sqfree == [1, 2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19]


def test_sigma0_sums():
    # sum_{n<=2} sigma_0(n)^2 = 1 + 4
    assert intmath.sigma0_squared_sum(2) == 5
    want = sum(intmath.sigma0(n) ** 2 for n in range(1, 201))
    assert intmath.sigma0_squared_sum(200) == want
