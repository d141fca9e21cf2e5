"""Exact Dirichlet-character arithmetic.

A character mod q is stored as an exponent vector over a fixed generator
set of (Z/qZ)*: one generator per cyclic CRT component, where odd prime
powers p^e use the smallest primitive root and the component at 2^k
(k >= 3) uses the pair {-1, 5}. Values are exact roots of unity; complex
numbers are materialized only at evaluation boundaries, so multiplicative
identities hold exactly.

The q = 1 character is identically 1 on all integers (including arguments
sharing factors with any ambient modulus); the coefficient formulas below
rely on that convention when the conductor collapses to 1.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np

from .numtheory import (
    divisors,
    euler_phi,
    factorize,
    moebius,
    primitive_root,
    reduced_residues,
)

__all__ = [
    "RootOfUnityValue",
    "DirichletCharacter",
    "GaussSumValue",
    "enumerate_characters",
    "conductor",
    "primitive_inducing",
    "gauss_sum",
    "c_coefficient",
    "c_coefficient_direct",
    "verify_lemma1",
    "lemma1_sweep",
]


def e_of(x: float) -> complex:
    """e(x) = exp(2*pi*i*x)."""
    return cmath.exp(2j * cmath.pi * x)


@dataclass(frozen=True)
class RootOfUnityValue:
    """Either zero or the exact root of unity e(k/n) with 0 <= k < n.

    Multiplication and conjugation stay exact; ``to_complex`` is the only
    lossy operation.
    """

    zero: bool
    turns: Fraction  # value = e(turns); normalized into [0, 1)

    @staticmethod
    def make_zero() -> "RootOfUnityValue":
        return RootOfUnityValue(True, Fraction(0))

    @staticmethod
    def one() -> "RootOfUnityValue":
        return RootOfUnityValue(False, Fraction(0))

    @staticmethod
    def from_fraction(turns: Fraction) -> "RootOfUnityValue":
        return RootOfUnityValue(False, turns % 1)

    @property
    def k(self) -> int:
        return self.turns.numerator

    @property
    def n(self) -> int:
        return self.turns.denominator

    def __mul__(self, other: "RootOfUnityValue") -> "RootOfUnityValue":
        if self.zero or other.zero:
            return RootOfUnityValue.make_zero()
        return RootOfUnityValue(False, (self.turns + other.turns) % 1)

    def conjugate(self) -> "RootOfUnityValue":
        if self.zero:
            return self
        return RootOfUnityValue(False, (-self.turns) % 1)

    def to_complex(self) -> complex:
        if self.zero:
            return 0j
        return e_of(float(self.turns))

    def is_one(self) -> bool:
        return not self.zero and self.turns == 0


@dataclass(frozen=True)
class _Component:
    """One cyclic factor of (Z/qZ)*: chi(generator) = e(exponent/order)."""

    modulus: int  # the prime power this component lives at
    generator: int
    order: int


@lru_cache(maxsize=None)
def _unit_group(q: int) -> tuple[tuple[_Component, ...], dict]:
    """Cyclic components of (Z/qZ)* plus a discrete-log table.

    The dlog table maps each residue coprime to q to its exponent tuple on
    the generators. Built by brute force; moduli stay desk-scale here.
    """
    comps: list[_Component] = []
    for p, e in factorize(q) if q > 1 else ():
        pe = p**e
        if p == 2:
            if e == 1:
                continue
            if e == 2:
                comps.append(_Component(4, 3, 2))
            else:
                comps.append(_Component(pe, pe - 1, 2))
                comps.append(_Component(pe, 5, 2 ** (e - 2)))
        else:
            comps.append(_Component(pe, primitive_root(pe), euler_phi(pe)))

    # enumerate generator-power tuples; each unit mod q appears exactly once
    from itertools import product

    dlog: dict[int, tuple[int, ...]] = {}
    if not comps:
        dlog[1 % q] = ()
        return tuple(comps), dlog
    for tup in product(*[range(c.order) for c in comps]):
        residue_by_pp: dict[int, int] = {}
        for c, t in zip(comps, tup):
            cur = residue_by_pp.get(c.modulus, 1)
            residue_by_pp[c.modulus] = cur * pow(c.generator, t, c.modulus) % c.modulus
        n, mod = 1, 1
        for p, e in factorize(q):
            pe = p**e
            n = _crt_pair(n, mod, residue_by_pp.get(pe, 1 % pe), pe)
            mod *= pe
        dlog[n % q] = tup
    return tuple(comps), dlog


def _crt_pair(a: int, m: int, b: int, n: int) -> int:
    """x mod mn with x=a (mod m), x=b (mod n), gcd(m,n)=1."""
    if m == 1:
        return b % n
    g, inv = 1, pow(m, -1, n)
    return (a + m * ((b - a) * inv % n)) % (m * n)


@dataclass(frozen=True)
class DirichletCharacter:
    """Character mod q given by exponents on the fixed generators.

    chi(g_i) = e(exponents[i] / order_i); chi(n) = 0 iff gcd(n, q) > 1,
    except q = 1 where chi is identically 1.
    """

    q: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        comps, _ = _unit_group(self.q)
        if len(self.exponents) != len(comps):
            raise ValueError(
                f"expected {len(comps)} exponents for modulus {self.q}, "
                f"got {len(self.exponents)}"
            )
        for x, c in zip(self.exponents, comps):
            if not 0 <= x < c.order:
                raise ValueError(f"exponent {x} out of range for order {c.order}")

    @property
    def is_principal(self) -> bool:
        return all(x == 0 for x in self.exponents)

    def value(self, n: int) -> RootOfUnityValue:
        if self.q == 1:
            return RootOfUnityValue.one()
        r = n % self.q
        if gcd(r, self.q) != 1:
            return RootOfUnityValue.make_zero()
        comps, dlog = _unit_group(self.q)
        tup = dlog[r]
        turns = Fraction(0)
        for x, t, c in zip(self.exponents, tup, comps):
            turns += Fraction(x * t, c.order)
        return RootOfUnityValue.from_fraction(turns)

    def value_complex(self, n: int) -> complex:
        return self.value(n).to_complex()

    def period_values(self) -> np.ndarray:
        """chi(n) for n = 0..q-1 as a complex array (index = n mod q)."""
        return _period_values_cached(self.q, self.exponents).copy()

    def values_up_to(self, n_max: int) -> np.ndarray:
        """chi(n) for n = 0..n_max (index n), by tiling one period."""
        period = _period_values_cached(self.q, self.exponents)
        reps = n_max // self.q + 1
        return np.tile(period, reps)[: n_max + 1]

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        if self.q != other.q:
            raise ValueError("character product needs a common modulus")
        comps, _ = _unit_group(self.q)
        exps = tuple(
            (a + b) % c.order for a, b, c in zip(self.exponents, other.exponents, comps)
        )
        return DirichletCharacter(self.q, exps)

    def conjugate(self) -> "DirichletCharacter":
        comps, _ = _unit_group(self.q)
        exps = tuple((-a) % c.order for a, c in zip(self.exponents, comps))
        return DirichletCharacter(self.q, exps)


@lru_cache(maxsize=None)
def _period_values_cached(q: int, exponents: tuple[int, ...]) -> np.ndarray:
    chi = DirichletCharacter(q, exponents)
    vals = np.zeros(q, dtype=np.complex128)
    if q == 1:
        vals[0] = 1.0
        return vals
    for n in range(q):
        v = chi.value(n)
        if not v.zero:
            vals[n] = v.to_complex()
    vals.flags.writeable = False
    return vals


def enumerate_characters(q: int) -> list[DirichletCharacter]:
    """All phi(q) characters mod q, principal first, in generator-exponent order."""
    if q < 1:
        raise ValueError(f"modulus must be positive, got {q}")
    comps, _ = _unit_group(q)
    from itertools import product

    return [
        DirichletCharacter(q, tup) for tup in product(*[range(c.order) for c in comps])
    ]


@lru_cache(maxsize=None)
def _conductor_cached(q: int, exponents: tuple[int, ...]) -> int:
    chi = DirichletCharacter(q, exponents)
    for f in divisors(q):
        # chi is induced mod f iff it is trivial on {n = 1 (mod f), gcd(n,q)=1}
        ok = True
        for n in range(1, q + 1, f):
            if gcd(n, q) == 1 and not chi.value(n).is_one():
                ok = False
                break
        if ok:
            return f
    return q


def conductor(chi: DirichletCharacter) -> int:
    """Least f | q such that chi agrees with a character mod f on units."""
    return _conductor_cached(chi.q, chi.exponents)


@lru_cache(maxsize=None)
def _primitive_inducing_cached(q: int, exponents: tuple[int, ...]) -> DirichletCharacter:
    chi = DirichletCharacter(q, exponents)
    f = conductor(chi)
    if f == q:
        return chi
    units = reduced_residues(q)
    for psi in enumerate_characters(f):
        if all(psi.value(n) == chi.value(n) for n in units):
            return psi
    raise RuntimeError(f"no inducing character mod {f} found for modulus {q}")


def primitive_inducing(chi: DirichletCharacter) -> DirichletCharacter:
    """The primitive character mod conductor(chi) inducing chi."""
    return _primitive_inducing_cached(chi.q, chi.exponents)


@dataclass(frozen=True)
class GaussSumValue:
    """tau(chi) = sum over n mod q of chi(n) e(n/q)."""

    value: complex
    computed_by: str  # "direct-sum" or "closed-form"

    def __complex__(self) -> complex:
        return self.value


@lru_cache(maxsize=None)
def _gauss_sum_direct(q: int, exponents: tuple[int, ...]) -> complex:
    if q == 1:
        return 1 + 0j
    chi = DirichletCharacter(q, exponents)
    total = 0j
    for n in range(1, q + 1):
        v = chi.value(n)
        if not v.zero:
            total += (v * RootOfUnityValue.from_fraction(Fraction(n, q))).to_complex()
    return total


def gauss_sum(chi: DirichletCharacter, method: str = "direct-sum") -> GaussSumValue:
    """Gauss sum of chi.

    "direct-sum" evaluates the defining sum; "closed-form" reduces to the
    primitive inducer via tau(chi) = mu(q/f) chi*(q/f) tau(chi*).
    """
    if method == "direct-sum":
        return GaussSumValue(_gauss_sum_direct(chi.q, chi.exponents), method)
    if method == "closed-form":
        star = primitive_inducing(chi)
        f = star.q
        tau_star = _gauss_sum_direct(star.q, star.exponents)
        val = moebius(chi.q // f) * star.value_complex(chi.q // f) * tau_star
        return GaussSumValue(val, method)
    raise ValueError(f"unknown gauss_sum method {method!r}")


def c_coefficient(chi: DirichletCharacter, a: int) -> complex:
    """Expansion coefficient of chi in the basis dual to e(-an/D), closed form:

        c(chi, a/D) = mu(D/f) chi*(a) conj(chi*(D/f)) conj(tau(chi*))

    with D = chi.q, f the conductor and chi* the primitive inducer.
    Requires gcd(a, D) = 1.
    """
    D = chi.q
    if gcd(a, D) != 1:
        raise ValueError(f"a={a} must be coprime to the modulus {D}")
    star = primitive_inducing(chi)
    f = star.q
    mu = moebius(D // f)
    if mu == 0:
        return 0j
    tau_star = _gauss_sum_direct(star.q, star.exponents)
    return (
        mu
        * star.value_complex(a)
        * star.value_complex(D // f).conjugate()
        * tau_star.conjugate()
    )


def c_coefficient_direct(chi: DirichletCharacter, a: int) -> complex:
    """Defining sum: sum over n mod D of conj(chi(n)) e(-an/D)."""
    D = chi.q
    if gcd(a, D) != 1:
        raise ValueError(f"a={a} must be coprime to the modulus {D}")
    if D == 1:
        return 1 + 0j
    total = 0j
    for n in range(1, D + 1):
        v = chi.value(n)
        if not v.zero:
            term = v.conjugate() * RootOfUnityValue.from_fraction(Fraction(-a * n, D))
            total += term.to_complex()
    return total


def verify_lemma1(D: int, a: int, n: int) -> float:
    """Residual of the principal-character exponential expansion

        chi0(n) e(-an/D) = (1/phi(D)) sum_chi c(chi, a/D) chi(n)

    evaluated in complex arithmetic. Requires gcd(a, D) = 1.
    """
    if gcd(a, D) != 1:
        raise ValueError(f"a={a} must be coprime to D={D}")
    lhs = e_of(-(a * n % D) / D) if gcd(n, D) == 1 else 0j
    rhs = 0j
    for chi in enumerate_characters(D):
        rhs += c_coefficient(chi, a) * chi.value_complex(n)
    rhs /= euler_phi(D)
    return abs(lhs - rhs)


def lemma1_sweep(D: int, n_max: int) -> tuple[float, tuple, float, tuple]:
    """Vectorized check of the expansion for all units a and all n <= n_max.

    Returns (max identity residual, its (a, n) witness,
             max closed-vs-direct coefficient gap, its (chi index, a) witness).
    """
    chars = enumerate_characters(D)
    units = reduced_residues(D)
    phi = len(chars)
    X = np.vstack([c.period_values() for c in chars])  # (phi, D)

    res_mod = np.arange(D)
    E = np.exp(
        (-2j * np.pi / D) * (np.outer(np.asarray(units), res_mod) % D)
    )  # E[j, r] = e(-a_j r / D)
    C_closed = np.array(
        [[c_coefficient(chi, a) for a in units] for chi in chars]
    )  # (phi, #a)
    C_direct = np.conjugate(X) @ E.T  # (phi, #a)
    gap = np.abs(C_closed - C_direct)
    gi, gj = np.unravel_index(int(np.argmax(gap)), gap.shape)

    n = np.arange(1, n_max + 1)
    n_mod = n % D
    coprime = np.array([gcd(int(r), D) == 1 for r in range(D)])[n_mod]
    lhs = np.where(
        coprime,
        np.exp((-2j * np.pi / D) * (np.outer(np.asarray(units), n) % D)),
        0.0,
    )  # (#a, n_max)
    rhs = (C_closed.T @ X[:, n_mod]) / phi
    resid = np.abs(lhs - rhs)
    ri, rj = np.unravel_index(int(np.argmax(resid)), resid.shape)

    return (
        float(resid[ri, rj]),
        (units[ri], int(n[rj])),
        float(gap[gi, gj]),
        (int(gi), units[gj]),
    )
