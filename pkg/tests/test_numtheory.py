from fractions import Fraction

import pytest

from twistlab.numtheory import (
    divisors,
    euler_phi,
    factorize,
    fraction_kth_root,
    integer_kth_root,
    is_squarefree,
    lcm_all,
    moebius,
    parse_rational,
    primes_up_to,
    primitive_root,
    radical,
    reduced_residues,
    unitary_divisors,
)


def test_primes_and_factorization():
    assert primes_up_to(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert factorize(360) == ((2, 3), (3, 2), (5, 1))
    assert factorize(1) == ()


def test_divisor_enumeration():
    assert divisors(36) == [1, 2, 3, 4, 6, 9, 12, 18, 36]
    assert unitary_divisors(36) == [1, 4, 9, 36]
    assert unitary_divisors(12) == [1, 3, 4, 12]


def test_multiplicative_functions():
    assert [euler_phi(q) for q in (1, 2, 3, 6, 8, 30)] == [1, 1, 2, 2, 4, 8]
    assert [moebius(n) for n in (1, 2, 4, 6, 30)] == [1, -1, 0, 1, -1]
    assert radical(1) == 1
    assert radical(72) == 6
    assert is_squarefree(30) and not is_squarefree(12)


def test_reduced_residues():
    assert reduced_residues(1) == [1]
    assert reduced_residues(6) == [1, 5]


def test_primitive_roots():
    for q in (3, 5, 7, 9, 25, 27, 49):
        g = primitive_root(q)
        seen = {pow(g, k, q) for k in range(euler_phi(q))}
        assert len(seen) == euler_phi(q)
    with pytest.raises(ValueError):
        primitive_root(8)


def test_exact_roots():
    assert integer_kth_root(27, 3) == 3
    assert integer_kth_root(28, 3) is None
    assert integer_kth_root(10**30, 2) == 10**15
    assert fraction_kth_root(Fraction(8, 27), 3) == Fraction(2, 3)
    assert fraction_kth_root(Fraction(8, 28), 3) is None


def test_lcm_and_rational_parsing():
    assert lcm_all([4, 6, 9]) == 36
    assert lcm_all([]) == 1
    assert parse_rational("4/36") == Fraction(1, 9)
    assert parse_rational(" 7 ") == 7
    assert parse_rational("0.25") == Fraction(1, 4)
