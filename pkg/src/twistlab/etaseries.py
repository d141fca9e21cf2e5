"""Exact Ramanujan tau values via the eta-product power series.

q * prod_{k>=1} (1 - q^k)^24 is computed as the 8th power of the sparse
cube prod (1 - q^k)^3 = sum_{k>=0} (-1)^k (2k+1) q^{k(k+1)/2} (Jacobi):
one sparse-by-sparse square followed by two dense integer squarings.
Dense squaring uses Kronecker substitution (pack coefficients into one
big integer, square, unpack), which keeps everything exact; gmpy2 does
the big multiplication when available.
"""

from __future__ import annotations

from functools import lru_cache

try:
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _mpz = int


def eta_cubed_sparse(n_max: int) -> list[tuple[int, int]]:
    """(exponent, coefficient) pairs of prod (1-q^k)^3 up to q^n_max."""
    out = []
    k = 0
    while k * (k + 1) // 2 <= n_max:
        out.append((k * (k + 1) // 2, (2 * k + 1) * (-1 if k % 2 else 1)))
        k += 1
    return out


def _sparse_square(pairs: list[tuple[int, int]], n_max: int) -> list[int]:
    dense = [0] * (n_max + 1)
    for i, (e1, c1) in enumerate(pairs):
        if 2 * e1 > n_max:
            break
        dense[2 * e1] += c1 * c1
        for e2, c2 in pairs[i + 1 :]:
            e = e1 + e2
            if e > n_max:
                break
            dense[e] += 2 * c1 * c2
    return dense


def _pack(coeffs: list[int], width: int) -> int:
    buf = bytearray(width * len(coeffs))
    for i, c in enumerate(coeffs):
        if c:
            buf[i * width : i * width + width] = c.to_bytes(width, "little")
    return int.from_bytes(bytes(buf), "little")


def _unpack(z: int, width: int, count: int) -> list[int]:
    nbytes = max((z.bit_length() + 7) // 8, 1)
    nbytes = ((nbytes + width - 1) // width) * width
    raw = z.to_bytes(nbytes, "little")
    out = []
    for i in range(count):
        chunk = raw[i * width : (i + 1) * width]
        out.append(int.from_bytes(chunk, "little") if chunk else 0)
    return out


def _kronecker_mul_nonneg(a: list[int], b: list[int], n_max: int) -> list[int]:
    """Product of polynomials with nonnegative int coefficients, truncated."""
    max_a = max(a, default=0)
    max_b = max(b, default=0)
    if max_a == 0 or max_b == 0:
        return [0] * (n_max + 1)
    bits = (
        max_a.bit_length() + max_b.bit_length() + (min(len(a), len(b))).bit_length() + 1
    )
    width = (bits + 7) // 8
    prod = int(_mpz(_pack(a, width)) * _mpz(_pack(b, width)))
    return _unpack(prod, width, n_max + 1)


def poly_square_int(coeffs: list[int], n_max: int) -> list[int]:
    """Exact square of an integer polynomial, truncated to degree n_max.

    Signs are handled by a positive/negative split: (P-Q)^2 = P^2 + Q^2 - 2PQ.
    """
    coeffs = coeffs[: n_max + 1]
    pos = [c if c > 0 else 0 for c in coeffs]
    neg = [-c if c < 0 else 0 for c in coeffs]
    pp = _kronecker_mul_nonneg(pos, pos, n_max)
    qq = _kronecker_mul_nonneg(neg, neg, n_max)
    pq = _kronecker_mul_nonneg(pos, neg, n_max)
    return [a + b - 2 * c for a, b, c in zip(pp, qq, pq)]


@lru_cache(maxsize=4)
def ramanujan_tau_table(n_max: int) -> tuple[int, ...]:
    """tau(n) for n = 0..n_max as exact integers (index 0 unused, kept 0)."""
    if n_max < 1:
        return (0,) * (n_max + 1)
    m = n_max - 1  # eta-product exponent range after the leading q shift
    eta3 = eta_cubed_sparse(m)
    eta6 = _sparse_square(eta3, m)
    eta12 = poly_square_int(eta6, m)
    eta24 = poly_square_int(eta12, m)
    return (0,) + tuple(eta24)
