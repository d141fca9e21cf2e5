"""Truncated Dirichlet-series coefficient algebra.

A CoefficientSeries carries a(1..N) plus growth metadata |a(n)| <= K n^c.
On top of it: Dirichlet convolution, coprime restriction, character
twisting, detection of polynomial local-factor inverses

    F_p(s)^(-1) = sum_{l=0}^{deg_p} A_l(p) p^(-l s),

their multiplicative extension B_m over m | D^* = prod_{p|D} p^deg_p, and
the coefficient identity a(n) chi0(n) = sum_{m | (n, D^*)} B_m a(n/m).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, isqrt

import numpy as np

from .characters import DirichletCharacter
from .etaseries import ramanujan_tau_table
from .numtheory import divisors, factorize, is_squarefree, prime_divisors

__all__ = [
    "CoefficientSeries",
    "LocalFactorInverse",
    "SplitTable",
    "NotSplitError",
    "InsufficientCoefficientsError",
    "dirichlet_convolve",
    "restrict_coprime",
    "twist_by_character",
    "detect_polynomial_split",
    "build_split_table",
    "verify_lemma2",
    "lemma2_sweep",
    "divisor_series",
    "delta_normalized",
    "zeta_times_L",
    "ones_series",
    "unit_series",
    "series_from_local_factor",
]


class NotSplitError(ValueError):
    """No polynomial local-factor inverse within the degree bound."""

    def __init__(self, p: int, message: str = ""):
        self.p = p
        super().__init__(message or f"series does not split polynomially at p={p}")


class InsufficientCoefficientsError(ValueError):
    """Truncation too short to certify a local recurrence."""


class CoefficientSeries:
    """Coefficients a(1..N) with growth metadata |a(n)| <= K n^c.

    Access outside 1..N raises; the zero-at-non-integer convention for
    fractional indices is a caller-side exact test, never a silent default.
    """

    __slots__ = ("label", "N", "growth_exponent", "growth_constant", "_a")

    def __init__(self, label, values, growth_exponent=0.0):
        vals = np.asarray(values, dtype=np.complex128)
        if vals.ndim != 1 or len(vals) < 1:
            raise ValueError("need a one-dimensional, nonempty coefficient array")
        self.label = str(label)
        self.N = len(vals)
        self.growth_exponent = float(growth_exponent)
        a = np.zeros(self.N + 1, dtype=np.complex128)
        a[1:] = vals
        a.flags.writeable = False
        self._a = a
        n = np.arange(1, self.N + 1, dtype=np.float64)
        self.growth_constant = float(
            max(1.0, np.max(np.abs(vals) / n**self.growth_exponent))
        )

    def a(self, n: int) -> complex:
        if not 1 <= n <= self.N:
            raise IndexError(f"index {n} outside truncation 1..{self.N}")
        return complex(self._a[n])

    @property
    def values(self) -> np.ndarray:
        """Read-only view of a(1..N)."""
        return self._a[1:]

    @property
    def padded(self) -> np.ndarray:
        """Read-only view with a leading zero so padded[n] = a(n)."""
        return self._a

    def __repr__(self):
        return (
            f"CoefficientSeries({self.label!r}, N={self.N}, "
            f"c={self.growth_exponent}, K={self.growth_constant:.3g})"
        )


def dirichlet_convolve(x: CoefficientSeries, y: CoefficientSeries) -> CoefficientSeries:
    """c(n) = sum_{d | n} x(d) y(n/d), truncated to min(Nx, Ny)."""
    n = min(x.N, y.N)
    xa, ya = x.padded, y.padded
    out = np.zeros(n + 1, dtype=np.complex128)
    for d in range(1, n + 1):
        xd = xa[d]
        if xd != 0:
            out[d::d] += xd * ya[1 : n // d + 1]
    return CoefficientSeries(
        f"{x.label}*{y.label}",
        out[1:],
        growth_exponent=x.growth_exponent + y.growth_exponent + 0.5,
    )


def restrict_coprime(x: CoefficientSeries, M: int) -> CoefficientSeries:
    """Zero out every a(n) with gcd(n, M) > 1."""
    if M < 1:
        raise ValueError(f"M must be positive, got {M}")
    vals = x.values.copy()
    for p in prime_divisors(M):
        vals[p - 1 :: p] = 0
    return CoefficientSeries(f"{x.label}|{M}", vals, x.growth_exponent)


def twist_by_character(x: CoefficientSeries, chi: DirichletCharacter) -> CoefficientSeries:
    """b(n) = a(n) chi(n)."""
    chi_vals = chi.values_up_to(x.N)[1:]
    return CoefficientSeries(
        f"{x.label}^chi({chi.q};{','.join(map(str, chi.exponents))})",
        x.values * chi_vals,
        x.growth_exponent,
    )


@dataclass(frozen=True)
class LocalFactorInverse:
    """Inverse local factor at p: coefficients A_0=1, ..., A_degree != 0."""

    p: int
    degree: int
    coeffs: tuple[complex, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.degree + 1:
            raise ValueError("coefficient count must be degree + 1")
        if self.coeffs[0] != 1:
            raise ValueError("A_0 must equal 1")
        if self.degree > 0 and self.coeffs[-1] == 0:
            raise ValueError("leading coefficient A_degree must be nonzero")

    def recurrence_residual(self, x: CoefficientSeries, k: int) -> float:
        """|sum_l A_l a(p^(k-l))| for one recurrence row k > degree."""
        s = sum(self.coeffs[l] * x.a(self.p ** (k - l)) for l in range(self.degree + 1))
        return abs(s)


@dataclass(frozen=True)
class SplitTable:
    """Per-prime inverse factors for p | D plus the multiplicative B_m map."""

    D: int
    locals: dict[int, LocalFactorInverse] = field(compare=False)
    d_star: int = 0
    B: dict[int, complex] = field(default_factory=dict, compare=False)

    @staticmethod
    def from_locals(D: int, locals_: dict[int, LocalFactorInverse]) -> "SplitTable":
        d_star = 1
        for p, lf in locals_.items():
            d_star *= p**lf.degree
        B = {}
        for m in divisors(d_star):
            val = 1 + 0j
            for p, e in factorize(m):
                val *= locals_[p].coeffs[e]
            B[m] = val
        return SplitTable(D, locals_, d_star, B)

    def dstar_of(self, d: int) -> int:
        """(d)^* = prod_{p | d} p^degree_p for d | D."""
        out = 1
        for p in prime_divisors(d):
            out *= p ** self.locals[p].degree
        return out

    def restrict(self, d: int) -> "SplitTable":
        """Table for a divisor d | D, reusing the per-prime data."""
        if self.D % d != 0:
            raise ValueError(f"{d} does not divide D={self.D}")
        return SplitTable.from_locals(d, {p: self.locals[p] for p in prime_divisors(d)})


def _local_coefficients(x: CoefficientSeries, p: int) -> np.ndarray:
    k_max = 0
    while p ** (k_max + 1) <= x.N:
        k_max += 1
    return np.array([x.a(p**k) for k in range(k_max + 1)])


def detect_polynomial_split(
    x: CoefficientSeries, p: int, degree_max: int = 8, tol: float = 1e-8
) -> LocalFactorInverse | None:
    """Minimal-degree inverse local factor at p, or None if no degree fits.

    Solves the linear recurrence sum_l A_l a(p^(k-l)) = 0 over all available
    rows k > degree by least squares and accepts the smallest degree whose
    residual stays below tol (scaled by the local coefficient size). Needs
    floor(log_p N) >= 2*degree_max rows of data.
    """
    v = _local_coefficients(x, p)
    k_max = len(v) - 1
    if k_max < 2 * degree_max:
        raise InsufficientCoefficientsError(
            f"need p^(2*{degree_max}) <= N for p={p}; have only a(p^k) up to k={k_max}"
        )
    scale = max(1.0, float(np.max(np.abs(v))))
    for deg in range(degree_max + 1):
        rows = range(deg + 1, k_max + 1)
        if deg == 0:
            resid = max((abs(v[k]) for k in rows), default=0.0)
            coeffs = np.array([1.0 + 0j])
        else:
            M = np.array([[v[k - l] for l in range(1, deg + 1)] for k in rows])
            b = -v[list(rows)]
            sol, *_ = np.linalg.lstsq(M, b, rcond=None)
            coeffs = np.concatenate(([1.0 + 0j], sol))
            resid = float(np.max(np.abs(M @ sol - b)))
        if resid <= tol * scale:
            if deg > 0 and abs(coeffs[-1]) <= tol * max(1.0, float(np.max(np.abs(coeffs)))):
                continue  # leading coefficient vanished: not a degree-deg factor
            return LocalFactorInverse(p, deg, tuple(coeffs))
    return None


def build_split_table(
    x: CoefficientSeries, D: int, degree_max: int | None = None, tol: float = 1e-8
) -> SplitTable:
    """Detect inverse local factors at every p | D and assemble B_m.

    degree_max=None adapts per prime to min(8, floor(log_p N)/2) so the
    default stays usable on desk-scale truncations.
    """
    if not is_squarefree(D):
        raise ValueError(f"D must be squarefree, got {D}")
    locals_: dict[int, LocalFactorInverse] = {}
    for p in prime_divisors(D):
        if degree_max is None:
            k_max = 0
            while p ** (k_max + 1) <= x.N:
                k_max += 1
            dm = min(8, k_max // 2)
            if dm < 1:
                raise InsufficientCoefficientsError(
                    f"N={x.N} too short to probe any local factor at p={p}"
                )
        else:
            dm = degree_max
        lf = detect_polynomial_split(x, p, dm, tol)
        if lf is None:
            raise NotSplitError(p)
        locals_[p] = lf
    return SplitTable.from_locals(D, locals_)


def verify_lemma2(x: CoefficientSeries, table: SplitTable, n: int) -> float:
    """Residual of a(n) chi0(n) = sum over m | n, m | D^* of B_m a(n/m)."""
    lhs = x.a(n) if gcd(n, table.D) == 1 else 0j
    rhs = sum(B * x.a(n // m) for m, B in table.B.items() if n % m == 0)
    return abs(lhs - rhs)


def lemma2_sweep(x: CoefficientSeries, table: SplitTable, n_max: int) -> tuple[float, int]:
    """Vectorized residual over n <= n_max; returns (max residual, witness n)."""
    if n_max > x.N:
        raise IndexError(f"n_max={n_max} exceeds truncation {x.N}")
    a = x.padded
    lhs = a[1 : n_max + 1].copy()
    for p in prime_divisors(table.D):
        lhs[p - 1 :: p] = 0
    rhs = np.zeros(n_max + 1, dtype=np.complex128)
    for m, B in table.B.items():
        if m <= n_max and B != 0:
            rhs[m::m] += B * a[1 : n_max // m + 1]
    resid = np.abs(lhs - rhs[1:])
    n_at = int(np.argmax(resid)) + 1
    return float(resid[n_at - 1]), n_at


# ---------------------------------------------------------------------------
# fixture generators: concrete degree-2 coefficient sequences


def divisor_series(N: int) -> CoefficientSeries:
    """a(n) = d(n), the divisor count (square of the zeta coefficients).

    Uses the sqrt-split d(n) = 2 #{d <= sqrt(n): d | n} - [n is a square]
    so generation is O(sqrt(N)) numpy passes.
    """
    counts = np.zeros(N + 1, dtype=np.int64)
    for d in range(1, isqrt(N) + 1):
        counts[d * d :: d] += 1
    counts *= 2
    squares = np.arange(1, isqrt(N) + 1) ** 2
    counts[squares] -= 1
    return CoefficientSeries("zeta^2", counts[1:], growth_exponent=0.5)


def delta_normalized(N: int) -> CoefficientSeries:
    """a(n) = tau(n) / n^(11/2), critical line shifted to sigma = 1/2."""
    tau = ramanujan_tau_table(N)
    n = np.arange(1, N + 1, dtype=np.float64)
    vals = np.array([float(t) for t in tau[1:]]) / n**5.5
    return CoefficientSeries("delta", vals, growth_exponent=0.5)


def ones_series(N: int) -> CoefficientSeries:
    return CoefficientSeries("zeta", np.ones(N), growth_exponent=0.0)


def unit_series(N: int) -> CoefficientSeries:
    """Convolution identity: a(1) = 1, a(n) = 0 otherwise."""
    vals = np.zeros(N)
    vals[0] = 1.0
    return CoefficientSeries("one", vals, growth_exponent=0.0)


def zeta_times_L(chi: DirichletCharacter, N: int) -> CoefficientSeries:
    """a(n) = sum_{d | n} chi(d): coefficients of zeta(s) L(s, chi)."""
    out = dirichlet_convolve(ones_series(N), twist_by_character(ones_series(N), chi))
    return CoefficientSeries(f"zeta*L(chi mod {chi.q})", out.values, growth_exponent=0.5)


def series_from_local_factor(
    p: int, coeffs, N: int, label: str = "synthetic"
) -> CoefficientSeries:
    """Series supported on powers of p whose inverse local factor is coeffs.

    a(p^k) follows the recurrence sum_l A_l a(p^(k-l)) = 0 with a(1) = 1;
    all other indices are zero. Used for detection round-trip tests.
    """
    A = list(coeffs)
    if A[0] != 1:
        raise ValueError("A_0 must be 1")
    vals = np.zeros(N, dtype=np.complex128)
    vals[0] = 1.0
    u = [1.0 + 0j]
    k = 1
    while p**k <= N:
        s = -sum(A[l] * u[k - l] for l in range(1, min(k, len(A) - 1) + 1))
        u.append(s)
        vals[p**k - 1] = s
        k += 1
    return CoefficientSeries(label, vals, growth_exponent=0.0)
