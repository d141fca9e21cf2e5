"""Stationary-phase numerics for the additive phase f(n) = beta n + alpha n^lam.

The saddle analysis runs through

    Phi(z, xi) = z^(1/2) - 2 pi q beta z / xi - 2 pi alpha q^lam z^lam / xi^lam,
    q = q_F / (4 pi)^2,

whose z-critical point x0 = x0(xi) satisfies

    x0^(1/2) = 4 pi q beta (x0/xi) psi(x0/xi),
    psi(u) = 1 + (alpha lam / beta) q^(lam-1) u^(lam-1).

Dropping the decaying part of the large-xi expansion of Phi(x0, xi)/(2 pi)
leaves (1/(q_F beta)) xi - (alpha / (beta^(2 lam) q_F^lam)) xi^lam, i.e. the
dual phase f*(n) = n/(q_F beta) - alpha n^lam / (beta^(2 lam) q_F^lam).
For lam = 1/2 the expansion carries an extra constant term; the residual
helper accepts an optional constant so callers can fit and remove it.

All internal arithmetic uses numpy longdouble: the o(xi^lam) remainder dips
below float64 resolution at the far end of the xi grids exercised here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .characters import RootOfUnityValue
from .numtheory import fraction_kth_root

__all__ = [
    "PhaseParams",
    "DualPhaseParams",
    "NoConvergenceError",
    "phi",
    "solve_critical_point",
    "critical_point_residual",
    "asymptotic_residual",
    "fit_expansion_constant",
    "dual_phase",
    "dual_phase_exact",
    "reduced_shift_root",
]

_LD = np.longdouble
_PI = _LD("3.14159265358979323846264338327950288")


class NoConvergenceError(RuntimeError):
    """Critical-point solve failed; carries the iteration trace."""

    def __init__(self, message: str, trace: list):
        super().__init__(message)
        self.trace = trace


@dataclass(frozen=True)
class PhaseParams:
    """q_F > 0, beta > 0, alpha real, 0 < lam <= 1/2."""

    q_F: float
    beta: float
    alpha: float
    lam: float

    def __post_init__(self):
        if self.q_F <= 0:
            raise ValueError(f"q_F must be positive, got {self.q_F}")
        if self.beta <= 0:
            raise ValueError(f"beta must be positive, got {self.beta}")
        if not 0 < self.lam <= 0.5:
            raise ValueError(f"lam must lie in (0, 1/2], got {self.lam}")

    @property
    def q(self) -> float:
        return self.q_F / (4 * np.pi) ** 2


@dataclass(frozen=True)
class DualPhaseParams:
    beta_star: float
    alpha_star: float
    lam: float


def _psi(u, p: PhaseParams):
    return 1 + (p.alpha * p.lam / _LD(p.beta)) * _q_ld(p) ** _LD(p.lam - 1) * u ** _LD(
        p.lam - 1
    )


def _q_ld(p: PhaseParams):
    return _LD(p.q_F) / (4 * _PI) ** 2


def phi(z: float, xi: float, p: PhaseParams) -> float:
    """Phi(z, xi) for z, xi > 0."""
    if z <= 0 or xi <= 0:
        raise ValueError("phi needs z > 0 and xi > 0")
    z, xi = _LD(z), _LD(xi)
    q = _q_ld(p)
    lam = _LD(p.lam)
    val = (
        np.sqrt(z)
        - 2 * _PI * q * _LD(p.beta) * z / xi
        - 2 * _PI * _LD(p.alpha) * q**lam * z**lam / xi**lam
    )
    return float(val)


def critical_point_residual(x0: float, xi: float, p: PhaseParams) -> float:
    """Relative defect |x0^(1/2) - 4 pi q beta (x0/xi) psi(x0/xi)| / x0^(1/2)."""
    x0, xi = _LD(x0), _LD(xi)
    u = x0 / xi
    lhs = np.sqrt(x0)
    rhs = 4 * _PI * _q_ld(p) * _LD(p.beta) * u * _psi(u, p)
    return float(abs(lhs - rhs) / lhs)


def _critical_g(u, sqrt_xi, p: PhaseParams):
    """g(u) = 4 pi q beta u^(1/2) + 4 pi alpha lam q^lam u^(lam-1/2) - xi^(1/2).

    The critical-point equation divided by u^(1/2); strictly increasing in
    the neighborhood of the large root used here.
    """
    q = _q_ld(p)
    lam = _LD(p.lam)
    return (
        4 * _PI * q * _LD(p.beta) * np.sqrt(u)
        + 4 * _PI * _LD(p.alpha) * lam * q**lam * u ** (lam - _LD(0.5))
        - sqrt_xi
    )


def solve_critical_point(
    xi: float, p: PhaseParams, tol: float = 1e-10, max_iter: int = 200
) -> float:
    """x0 solving the critical-point equation to relative residual < tol.

    Damped fixed-point iteration on u = x0/xi around the leading-order
    location u ~ (4 pi / (beta q_F))^2 xi, with a geometrically widened
    bisection bracket as fallback.
    """
    if xi <= 0:
        raise ValueError(f"xi must be positive, got {xi}")
    xi_ld = _LD(xi)
    q = _q_ld(p)
    scale = (4 * _PI * q * _LD(p.beta)) ** -2 * xi_ld  # leading-order u
    trace: list[tuple[int, float, float]] = []

    u = scale
    for it in range(max_iter):
        ps = _psi(u, p)
        if not np.isfinite(ps) or ps <= 0:
            break
        u_next = scale * ps ** _LD(-2)
        if u_next <= 0 or not np.isfinite(u_next):
            break
        u_next = (u + u_next) / 2  # damping
        x0 = u_next * xi_ld
        res = critical_point_residual(float(x0), xi, p)
        trace.append((it, float(u_next), res))
        u = u_next
        if res < tol:
            return float(x0)

    # bisection fallback on g(u); widen around the leading-order point
    sqrt_xi = np.sqrt(xi_ld)
    lo = hi = scale
    glo = _critical_g(lo, sqrt_xi, p)
    widen = 0
    while glo > 0 and widen < 120:
        lo /= 2
        glo = _critical_g(lo, sqrt_xi, p)
        widen += 1
    ghi = _critical_g(hi, sqrt_xi, p)
    while ghi < 0 and widen < 240:
        hi *= 2
        ghi = _critical_g(hi, sqrt_xi, p)
        widen += 1
    if glo > 0 or ghi < 0:
        raise NoConvergenceError(
            f"no sign change bracketing the critical point at xi={xi}", trace
        )
    for it in range(max_iter):
        mid = (lo + hi) / 2
        if _critical_g(mid, sqrt_xi, p) < 0:
            lo = mid
        else:
            hi = mid
        res = critical_point_residual(float(mid * xi_ld), xi, p)
        trace.append((max_iter + it, float(mid), res))
        if res < tol:
            return float(mid * xi_ld)
    raise NoConvergenceError(
        f"critical-point residual failed to contract below {tol} at xi={xi}", trace
    )


def asymptotic_residual(xi: float, p: PhaseParams, constant: float = 0.0) -> float:
    """|Phi(x0, xi)/(2 pi) - (xi/(q_F beta) - alpha xi^lam/(beta^(2 lam) q_F^lam))
    - constant| / xi^lam.

    Decreases along geometric xi grids; for lam = 1/2 pass the fitted
    extra constant to expose the decay of the remaining error.
    """
    x0 = solve_critical_point(xi, p)
    x0, xi_ld = _LD(x0), _LD(xi)
    q = _q_ld(p)
    lam = _LD(p.lam)
    phi_over_2pi = (
        np.sqrt(x0)
        - 2 * _PI * q * _LD(p.beta) * x0 / xi_ld
        - 2 * _PI * _LD(p.alpha) * q**lam * x0**lam / xi_ld**lam
    ) / (2 * _PI)
    predicted = xi_ld / (_LD(p.q_F) * _LD(p.beta)) - _LD(p.alpha) * xi_ld**lam / (
        _LD(p.beta) ** (2 * lam) * _LD(p.q_F) ** lam
    )
    return float(abs(phi_over_2pi - predicted - _LD(constant)) / xi_ld**lam)


def fit_expansion_constant(p: PhaseParams, xi_grid) -> float:
    """Least-squares constant offset of Phi/(2 pi) from the kept terms.

    Used for lam = 1/2, where the expansion legitimately carries an extra
    constant; the fit is the mean deviation over the grid.
    """
    devs = []
    for xi in xi_grid:
        x0 = solve_critical_point(xi, p)
        x0_ld, xi_ld = _LD(x0), _LD(xi)
        q = _q_ld(p)
        lam = _LD(p.lam)
        phi_over_2pi = (
            np.sqrt(x0_ld)
            - 2 * _PI * q * _LD(p.beta) * x0_ld / xi_ld
            - 2 * _PI * _LD(p.alpha) * q**lam * x0_ld**lam / xi_ld**lam
        ) / (2 * _PI)
        predicted = xi_ld / (_LD(p.q_F) * _LD(p.beta)) - _LD(p.alpha) * xi_ld**lam / (
            _LD(p.beta) ** (2 * lam) * _LD(p.q_F) ** lam
        )
        devs.append(phi_over_2pi - predicted)
    return float(np.mean(np.array(devs, dtype=_LD)))


def dual_phase(p: PhaseParams) -> DualPhaseParams:
    """beta* = 1/(q_F beta), alpha* = -alpha/(beta^(2 lam) q_F^lam); involutive."""
    beta_star = 1.0 / (p.q_F * p.beta)
    alpha_star = -p.alpha / (p.beta ** (2 * p.lam) * p.q_F**p.lam)
    return DualPhaseParams(beta_star, alpha_star, p.lam)


def dual_phase_exact(
    beta: Fraction, alpha: Fraction, lam: Fraction, q_F: Fraction
) -> tuple[Fraction, Fraction]:
    """Exact-rational dual parameters; raises if the powers are irrational."""
    two_lam = 2 * Fraction(lam)
    b_pow = _rational_power(Fraction(beta), two_lam)
    q_pow = _rational_power(Fraction(q_F), Fraction(lam))
    if b_pow is None or q_pow is None:
        raise ValueError("beta^(2 lam) or q_F^lam is not rational for these inputs")
    return Fraction(1) / (Fraction(q_F) * Fraction(beta)), -Fraction(alpha) / (
        b_pow * q_pow
    )


def _rational_power(x: Fraction, expo: Fraction) -> Fraction | None:
    """x**expo as an exact Fraction when it exists (x > 0)."""
    if x <= 0:
        return None
    root = fraction_kth_root(x, expo.denominator)
    if root is None:
        return None
    return root**expo.numerator


def reduced_shift_root(D: int, q_F: int, n: int) -> tuple[RootOfUnityValue, RootOfUnityValue]:
    """Exact pair (e(-(D/q_F) n), e(-n/q_F)); equal whenever D = 1 (mod q_F)."""
    return (
        RootOfUnityValue.from_fraction(Fraction(-D * n, q_F)),
        RootOfUnityValue.from_fraction(Fraction(-n, q_F)),
    )
