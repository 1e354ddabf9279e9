"""Elementary number theory helpers."""

import math

import pytest

from fiberscope.errors import PreconditionError
from fiberscope.ntheory import (
    centered,
    factorize,
    is_prime,
    multiplicative_order,
    prime_divisors,
    primes_upto,
    require_prime,
    smallest_prime_factor,
    valuation,
)


def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}
    for n in range(-2, 50):
        assert is_prime(n) == (n in primes)


def test_is_prime_large():
    assert is_prime(2**31 - 1)
    assert not is_prime(2**32 + 1)
    assert not is_prime(561)          # Carmichael
    assert not is_prime(25326001)     # strong pseudoprime to 2, 3, 5


def test_primes_upto():
    assert primes_upto(13) == [2, 3, 5, 7, 11, 13]
    assert primes_upto(1) == []
    assert len(primes_upto(1000)) == 168


def test_require_prime():
    require_prime(7)
    with pytest.raises(PreconditionError):
        require_prime(8)


def test_factorize():
    assert factorize(1) == {}
    assert factorize(2**5 * 3**2 * 17) == {2: 5, 3: 2, 17: 1}
    assert prime_divisors(360) == [2, 3, 5]


def test_smallest_prime_factor():
    assert smallest_prime_factor(2) == 2
    assert smallest_prime_factor(91) == 7
    assert smallest_prime_factor(97) == 97


def test_multiplicative_order():
    assert multiplicative_order(2, 7) == 3
    assert multiplicative_order(3, 7) == 6
    assert multiplicative_order(1, 5) == 1
    # order divides the group order for a sample of units
    for m in (9, 10, 21):
        for a in range(1, m):
            if math.gcd(a, m) == 1:
                k = multiplicative_order(a, m)
                assert pow(a, k, m) == 1


def test_valuation():
    assert valuation(12, 2) == 2
    assert valuation(7, 2) == 0
    assert valuation(5**6 * 3, 5) == 6


def test_centered():
    assert centered(3, 7) == 3
    assert centered(5, 7) == -2
    assert centered(0, 7) == 0
    for n in range(20):
        c = centered(n, 7)
        assert (c - n) % 7 == 0 and abs(c) <= 3
