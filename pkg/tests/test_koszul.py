import random
from itertools import permutations
from math import comb

from hypothesis import given, strategies as st

from lix.koszul import koszul_sign, unshuffles


def sign_by_random_swaps(sigma, degrees, rng):
    """Sort the arrangement by random adjacent swaps, tracking odd-odd crossings."""
    seq = list(sigma)
    sign = 1
    while seq != sorted(seq):
        i = rng.choice([k for k in range(len(seq) - 1) if seq[k] > seq[k + 1]])
        if degrees[seq[i] - 1] % 2 and degrees[seq[i + 1] - 1] % 2:
            sign = -sign
        seq[i], seq[i + 1] = seq[i + 1], seq[i]
    return sign


def test_small_unshuffles():
    assert unshuffles(0, 2) == [(1, 2)]
    assert unshuffles(1, 1) == [(1, 2), (2, 1)]
    assert len(unshuffles(2, 3)) == 10
    assert unshuffles(2, 3) == sorted(unshuffles(2, 3))


def test_odd_swap_and_three_cycle():
    assert koszul_sign((2, 1), [1, 1]) == -1
    assert koszul_sign((2, 1), [1, 0]) == 1
    # bringing the even argument to the front is free
    assert koszul_sign((3, 1, 2), [1, 1, 0]) == 1
    # moving the first odd argument past the other odd one costs a sign
    assert koszul_sign((2, 3, 1), [1, 1, 0]) == -1


def test_all_permutations_match_random_factorizations():
    rng = random.Random(0)
    for n in range(1, 6):
        for degrees in ([1] * n, [0, 1] * n, [1, 0, 2, 3, 1][:n]):
            degrees = degrees[:n]
            for sigma in permutations(range(1, n + 1)):
                expected = sign_by_random_swaps(sigma, degrees, rng)
                assert koszul_sign(sigma, degrees) == expected
                assert sign_by_random_swaps(sigma, degrees, rng) == expected


perms = st.integers(1, 5).flatmap(lambda n: st.tuples(st.permutations(range(1, n + 1)),
                                                       st.permutations(range(1, n + 1)),
                                                       st.lists(st.integers(-2, 3), min_size=n, max_size=n)))


@given(perms)
def test_cocycle(data):
    sigma, tau, degrees = data
    n = len(sigma)
    # applying sigma then tau: (x_sigma(tau(1)), ...)
    composite = tuple(sigma[tau[i] - 1] for i in range(n))
    permuted = [degrees[s - 1] for s in sigma]
    assert koszul_sign(composite, degrees) == koszul_sign(sigma, degrees) * koszul_sign(tau, permuted)


def test_unshuffle_decomposition():
    # every permutation factors uniquely as an unshuffle followed by block permutations
    for n in range(6):
        for i in range(n + 1):
            us = unshuffles(i, n - i)
            assert len(us) == comb(n, i)
            seen = set()
            for u in us:
                for a in permutations(range(1, i + 1)):
                    for b in permutations(range(i + 1, n + 1)):
                        block = a + b
                        seen.add(tuple(u[block[k] - 1] for k in range(n)))
            assert len(seen) == len(set(permutations(range(1, n + 1))))
