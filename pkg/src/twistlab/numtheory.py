"""Exact integer and rational helpers shared across the package.

Everything here is plain integer arithmetic (no floats): factorization,
divisor enumeration, multiplicative functions, primitive roots, and exact
k-th root tests used for integrality decisions.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt


def primes_up_to(n: int) -> list[int]:
    """Primes <= n by a byte sieve."""
    if n < 2:
        return []
    sieve = bytearray(b"\x01") * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            start = p * p
            sieve[start : n + 1 : p] = b"\x00" * ((n - start) // p + 1)
    return [i for i, v in enumerate(sieve) if v]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of n >= 1 as ((p, e), ...) with p ascending."""
    if n < 1:
        raise ValueError(f"factorize expects n >= 1, got {n}")
    out = []
    m = n
    for p in (2, 3):
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e:
            out.append((p, e))
    f = 5
    while f * f <= m:
        for p in (f, f + 2):
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            if e:
                out.append((p, e))
        f += 6
    if m > 1:
        out.append((m, 1))
    return tuple(out)


def prime_divisors(n: int) -> list[int]:
    return [p for p, _ in factorize(n)]


def divisors(n: int) -> list[int]:
    """All positive divisors of n, sorted ascending."""
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def unitary_divisors(n: int) -> list[int]:
    """Divisors k | n with gcd(k, n/k) = 1, sorted ascending."""
    divs = [1]
    for p, e in factorize(n):
        divs = [d * f for d in divs for f in (1, p**e)]
    return sorted(divs)


def euler_phi(n: int) -> int:
    phi = 1
    for p, e in factorize(n):
        phi *= p ** (e - 1) * (p - 1)
    return phi


def moebius(n: int) -> int:
    mu = 1
    for _, e in factorize(n):
        if e > 1:
            return 0
        mu = -mu
    return mu


def radical(n: int) -> int:
    """Product of the distinct primes dividing n; radical(1) = 1."""
    r = 1
    for p, _ in factorize(n):
        r *= p
    return r


def is_squarefree(n: int) -> bool:
    return all(e == 1 for _, e in factorize(n))


def reduced_residues(q: int) -> list[int]:
    """Representatives of (Z/qZ)*, ascending; [1] for q = 1."""
    if q == 1:
        return [1]
    return [a for a in range(1, q + 1) if gcd(a, q) == 1]


@lru_cache(maxsize=None)
def primitive_root(q: int) -> int:
    """Smallest primitive root mod q for q an odd prime power (or q in {2, 4})."""
    if q == 2:
        return 1
    if q == 4:
        return 3
    fac = factorize(q)
    if len(fac) != 1 or fac[0][0] == 2:
        raise ValueError(f"no primitive root search implemented for q={q}")
    order = euler_phi(q)
    order_primes = prime_divisors(order)
    for g in range(2, q):
        if gcd(g, q) != 1:
            continue
        if all(pow(g, order // p, q) != 1 for p in order_primes):
            return g
    raise ValueError(f"no primitive root found mod {q}")


def integer_kth_root(n: int, k: int) -> int | None:
    """Exact r with r**k == n for n >= 0, else None."""
    if n < 0 or k < 1:
        return None
    if n in (0, 1):
        return n
    r = round(n ** (1.0 / k))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand**k == n:
            return cand
    # float seed can be off for huge n; fall back to bisection
    lo, hi = 0, 1 << (n.bit_length() // k + 2)
    while lo <= hi:
        mid = (lo + hi) // 2
        v = mid**k
        if v == n:
            return mid
        if v < n:
            lo = mid + 1
        else:
            hi = mid - 1
    return None


def fraction_kth_root(x: Fraction, k: int) -> Fraction | None:
    """Exact k-th root of a nonnegative rational, else None."""
    if x < 0:
        return None
    pn = integer_kth_root(x.numerator, k)
    pd = integer_kth_root(x.denominator, k)
    if pn is None or pd is None:
        return None
    return Fraction(pn, pd)


def fraction_is_positive_integer(x: Fraction) -> bool:
    return x.denominator == 1 and x.numerator >= 1


def lcm_all(values) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


def parse_rational(text: str) -> Fraction:
    """Parse 'p', 'p/q', or a decimal literal into an exact Fraction."""
    s = text.strip()
    if "/" in s:
        num, den = s.split("/", 1)
        return Fraction(int(num), int(den))
    if any(c in s for c in ".eE"):
        return Fraction(s)
    return Fraction(int(s))
