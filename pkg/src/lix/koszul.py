"""Signs and unshuffles for graded-symmetric multilinear maps.

Permutations are in one-line notation with entries ``1..n``; applying
``sigma`` to ``(x_1, ..., x_n)`` gives ``(x_sigma(1), ..., x_sigma(n))``.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import comb


@lru_cache(maxsize=None)
def _sign(perm: tuple[int, ...], parities: tuple[int, ...]) -> int:
    # bubble-sort the arrangement back to the identity; every swap of two
    # odd entries flips the sign
    seq = list(perm)
    sign = 1
    for end in range(len(seq) - 1, 0, -1):
        for i in range(end):
            if seq[i] > seq[i + 1]:
                if parities[seq[i] - 1] and parities[seq[i + 1] - 1]:
                    sign = -sign
                seq[i], seq[i + 1] = seq[i + 1], seq[i]
    return sign


def koszul_sign(sigma, degrees) -> int:
    """Sign of rearranging arguments of the given degrees by ``sigma``."""
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(1, len(sigma) + 1)) or len(degrees) != len(sigma):
        raise ValueError(f"not a permutation of 1..{len(degrees)}: {sigma}")
    return _sign(sigma, tuple(d & 1 for d in degrees))


def sort_sign(keys, degrees) -> tuple[tuple[int, ...], int]:
    """Permutation sorting ``keys`` ascending (stable) and its Koszul sign."""
    order = tuple(sorted(range(1, len(keys) + 1), key=lambda i: keys[i - 1]))
    return order, koszul_sign(order, degrees)


@lru_cache(maxsize=None)
def _unshuffles(i: int, j: int) -> tuple[tuple[int, ...], ...]:
    n = i + j
    out = []
    for head in combinations(range(1, n + 1), i):
        rest = tuple(k for k in range(1, n + 1) if k not in head)
        out.append(head + rest)
    return tuple(out)


def unshuffles(i: int, j: int) -> list[tuple[int, ...]]:
    """(i, j)-unshuffles in lexicographic order; there are C(i+j, i) of them."""
    if i < 0 or j < 0:
        raise ValueError("negative block size")
    res = list(_unshuffles(i, j))
    assert len(res) == comb(i + j, i)
    return res
