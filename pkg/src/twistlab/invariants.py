"""Functional-equation invariants and standard-twist pole prediction.

From gamma-factor data (Q, {(lambda_j, mu_j)}, omega) the triple

    d = 2 sum lambda_j,   q = (2 pi)^d Q^2 prod lambda_j^(2 lambda_j),
    theta = (2/d) Im sum mu_j

is computed. The standard twist by alpha > 0 can have at most a simple pole
at s0 = 1/2 + 1/(2d) - i theta, indexed by n_alpha = q d^(-d) alpha^d; the
pole is absent whenever n_alpha is not a positive integer, so integrality
is decided in exact rational arithmetic, never by float comparison.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .numtheory import fraction_is_positive_integer, fraction_kth_root
from .series import CoefficientSeries

__all__ = [
    "GammaFactorData",
    "InvariantTriple",
    "PolePrediction",
    "AlphaValue",
    "DegreeZeroError",
    "compute_invariants",
    "duplication_split",
    "predict_pole",
    "alpha_nu",
    "twist_pole_index",
]


class DegreeZeroError(ValueError):
    """Internal shift is undefined when the degree vanishes."""


@dataclass(frozen=True)
class GammaFactorData:
    """gamma(s) = Q^s prod_j Gamma(lambda_j s + mu_j), root number omega."""

    Q: float
    factors: tuple[tuple[float, complex], ...]
    omega: complex = 1.0 + 0j

    def __post_init__(self):
        if self.Q <= 0:
            raise ValueError(f"Q must be positive, got {self.Q}")
        for lam, mu in self.factors:
            if lam <= 0:
                raise ValueError(f"lambda must be positive, got {lam}")
            if complex(mu).real < 0:
                raise ValueError(f"Re(mu) must be nonnegative, got {mu}")
        if abs(abs(complex(self.omega)) - 1.0) > 1e-12:
            raise ValueError(f"|omega| must be 1, got {self.omega}")

    def to_json_dict(self) -> dict:
        return {
            "Q": self.Q,
            "factors": [
                {"lambda": lam, "mu": [complex(mu).real, complex(mu).imag]}
                for lam, mu in self.factors
            ],
            "omega": [complex(self.omega).real, complex(self.omega).imag],
        }

    @staticmethod
    def from_json_dict(d: dict) -> "GammaFactorData":
        return GammaFactorData(
            Q=float(d["Q"]),
            factors=tuple(
                (float(f["lambda"]), complex(f["mu"][0], f["mu"][1]))
                for f in d["factors"]
            ),
            omega=complex(d["omega"][0], d["omega"][1]),
        )


@dataclass(frozen=True)
class InvariantTriple:
    degree: float
    conductor: float
    shift: float


def compute_invariants(g: GammaFactorData) -> InvariantTriple:
    """(degree, conductor, internal shift) from gamma-factor data."""
    d = 2.0 * sum(lam for lam, _ in g.factors)
    if d == 0:
        raise DegreeZeroError("degree 0: internal shift undefined")
    q = (2 * math.pi) ** d * g.Q**2
    for lam, _ in g.factors:
        q *= lam ** (2 * lam)
    theta = (2.0 / d) * sum(complex(mu).imag for _, mu in g.factors)
    return InvariantTriple(d, q, theta)


def duplication_split(g: GammaFactorData, index: int) -> GammaFactorData:
    """Reshape one gamma factor by Legendre duplication.

    Gamma(2z) = 2^(2z-1) pi^(-1/2) Gamma(z) Gamma(z + 1/2) turns the factor
    (lambda, mu) into (lambda/2, mu/2), (lambda/2, (mu+1)/2) with Q scaled
    by 2^lambda; constants drop out of the invariant formulas.
    """
    lam, mu = g.factors[index]
    mu = complex(mu)
    new_factors = (
        g.factors[:index]
        + ((lam / 2, mu / 2), (lam / 2, (mu + 1) / 2))
        + g.factors[index + 1 :]
    )
    return GammaFactorData(g.Q * 2**lam, new_factors, g.omega)


@dataclass(frozen=True)
class AlphaValue:
    """Positive real alpha = coeff * base^(1/root) with exact rational parts.

    Covers rational alpha (root=1), sqrt forms like 2*sqrt(3) (root=2), and
    the audit grid points d0 (nu/q0)^(1/d0) (root=d0). approx is the float
    embedding; exact powers alpha^k stay in Fraction arithmetic.
    """

    coeff: Fraction
    base: Fraction
    root: int

    def __post_init__(self):
        if self.coeff <= 0 or self.base <= 0 or self.root < 1:
            raise ValueError("alpha must be positive with a positive root index")

    @staticmethod
    def from_rational(r) -> "AlphaValue":
        return AlphaValue(Fraction(r), Fraction(1), 1)

    @staticmethod
    def from_sqrt(r) -> "AlphaValue":
        """alpha = sqrt(r) for rational r > 0."""
        return AlphaValue(Fraction(1), Fraction(r), 2)

    @property
    def approx(self) -> float:
        return float(self.coeff) * float(self.base) ** (1.0 / self.root)

    def __float__(self) -> float:
        return self.approx

    def power(self, k: int) -> tuple[Fraction, int]:
        """alpha^k as (rational, root): alpha^k = rational^(1/root)."""
        # (alpha^k)^(root/g) = coeff^(k root/g) * base^(k/g) with g = gcd(k, root)
        g = math.gcd(k, self.root)
        r = self.root // g
        val = self.coeff ** (k * r) * self.base ** (k // g)
        return val, r


def _coerce_alpha(alpha) -> AlphaValue:
    if isinstance(alpha, AlphaValue):
        return alpha
    if isinstance(alpha, (int, Fraction)):
        return AlphaValue.from_rational(alpha)
    if isinstance(alpha, float):
        # a float is an exact binary rational; honor it as such
        return AlphaValue.from_rational(Fraction(alpha))
    raise TypeError(f"unsupported alpha type {type(alpha)!r}")


@dataclass(frozen=True)
class PolePrediction:
    s0: complex
    n_alpha: float
    n_alpha_exact: Fraction | None  # None when n_alpha is irrational
    integral: bool
    residue_shape: complex | None  # None when coefficients were not supplied


def twist_pole_index(q, d: int, alpha) -> tuple[Fraction | None, bool, float]:
    """n_alpha = q d^(-d) alpha^d, exactly.

    Returns (exact rational value or None if irrational, integrality flag,
    float approximation). q must be rational, d a positive integer.
    """
    if d < 1:
        raise ValueError(f"degree must be a positive integer, got {d}")
    q = Fraction(q)
    av = _coerce_alpha(alpha)
    pow_val, r = av.power(d)  # alpha^d = pow_val^(1/r)
    nk = q**r * Fraction(1, d**d) ** r * pow_val  # = n_alpha^r
    exact = fraction_kth_root(nk, r)
    approx = float(q) * float(d) ** (-d) * av.approx**d
    if exact is not None:
        return exact, fraction_is_positive_integer(exact), float(exact)
    # irrational n_alpha cannot be a positive integer
    return None, False, approx


def predict_pole(
    d: int,
    q,
    theta: float,
    alpha,
    chi_star=None,
    coefficients: CoefficientSeries | None = None,
) -> PolePrediction:
    """Pole location and residue shape of the standard twist by alpha.

    s0 = 1/2 + 1/(2d) - i theta. When n_alpha = q d^(-d) alpha^d is a
    positive integer within the truncation, the residue shape is
    conj(a(n_alpha)) conj(chi*(n_alpha)) n_alpha^(s0 - 1) with the unknown
    nonzero constant fixed to 1; otherwise the twist is holomorphic at s0
    and the shape is 0.
    """
    s0 = complex(0.5 + 1.0 / (2 * d), -theta)
    exact, integral, approx = twist_pole_index(q, d, alpha)
    if not integral:
        return PolePrediction(s0, approx, exact, False, 0j)
    n_int = int(exact)
    if coefficients is None:
        return PolePrediction(s0, float(n_int), exact, True, None)
    a_val = coefficients.a(n_int)  # raises outside the truncation
    chi_val = chi_star.value_complex(n_int) if chi_star is not None else 1.0 + 0j
    shape = (
        a_val.conjugate()
        * complex(chi_val).conjugate()
        * cmath.exp((s0 - 1) * math.log(n_int))
    )
    return PolePrediction(s0, float(n_int), exact, True, shape)


def alpha_nu(d0: float, q0, nu: int) -> AlphaValue | float:
    """Grid point alpha = d0 (nu/q0)^(1/d0) indexing integer pole positions.

    For integer d0 the result carries exact power data, so downstream
    integrality tests stay rational. Non-integer degrees fall back to a
    float (the audit path never needs exact alpha there: its indices
    q(chi*) m nu / q0 are rational independently of alpha).
    """
    if nu < 1:
        raise ValueError(f"nu must be a positive integer, got {nu}")
    q0 = Fraction(q0)
    if q0 <= 0:
        raise ValueError(f"q0 must be positive, got {q0}")
    if float(d0) <= 0:
        raise ValueError(f"d0 must be positive, got {d0}")
    if float(d0).is_integer():
        k = int(d0)
        return AlphaValue(Fraction(k), Fraction(nu) / q0, k)
    return float(d0) * (nu / float(q0)) ** (1.0 / float(d0))
