"""Executable contradiction audit for hypothetical twist invariants.

Given per-character hypotheses (d_chi*, theta_chi*, q(chi*)) over the
characters mod D, the audit builds the extremal sets

    d0 = max d_chi*,  A0 = argmax,  theta0 = min theta over A0,  B0,
    q0 = max_{B0} (D/f_chi)^* q(chi*),  C0 = argmax,  lambda0 = 1/d0,

classifies every residue term n = q(chi*) m nu / q0 by an exact rational
integrality test (terms off C0 or with m a proper divisor of (D/f)^* have
non-integral index for gcd(nu, M D) = 1 and vanish), and scans for a
witness nu with

    a(nu) * sum_{chi in C0} conj(ell(chi)) chi*(nu) != 0,

    ell(chi) = f(chi, (D/f)^*, 1) prod_{p | D/f} A_deg(p) p^(-deg s0),

which contradicts the forced vanishing of the residue sum at
s0 = 1/2 + 1/(2 d0) - i theta0. Unknown nonzero residue constants are set
to 1; only their nonvanishing enters the argument.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import numpy as np

from .characters import DirichletCharacter, enumerate_characters, primitive_inducing
from .numtheory import divisors, lcm_all, parse_rational
from .series import CoefficientSeries, SplitTable
from .twistdecomp import f_coefficient

__all__ = [
    "HypothesisEntry",
    "TwistHypothesis",
    "CharAuditInfo",
    "AuditSets",
    "AuditReport",
    "SaturationReport",
    "ZeroLeadingCoefficientError",
    "saturation_check",
    "independence_rank",
    "compute_sets",
    "classify_residue_term",
    "ell_coefficients",
    "find_contradiction",
]

VANISH_NONINTEGRAL = "VANISH-NONINTEGRAL"
VANISH_PROPER_DIVISOR = "VANISH-PROPER-DIVISOR"
ACTIVE = "ACTIVE"


class ZeroLeadingCoefficientError(ValueError):
    """A leading local coefficient A_deg(p) vanished; inverses must be exact."""


@dataclass(frozen=True)
class HypothesisEntry:
    """Hypothetical invariants of one twisted series: degree, shift, conductor."""

    d: float
    theta: float
    q: Fraction

    def __post_init__(self):
        if self.d < 2:
            raise ValueError(f"twisted degree must be >= 2, got {self.d}")
        if self.q <= 0:
            raise ValueError(f"twisted conductor must be positive, got {self.q}")


@dataclass(frozen=True)
class TwistHypothesis:
    """One HypothesisEntry per character mod D, keyed by enumeration index."""

    D: int
    entries: dict[int, HypothesisEntry] = field(compare=False)

    def __post_init__(self):
        n_chars = len(enumerate_characters(self.D))
        missing = [i for i in range(n_chars) if i not in self.entries]
        if missing:
            raise ValueError(f"hypothesis missing character indices {missing}")

    @staticmethod
    def uniform(D: int, d: float, theta: float, q) -> "TwistHypothesis":
        entry = HypothesisEntry(float(d), float(theta), Fraction(q))
        n = len(enumerate_characters(D))
        return TwistHypothesis(D, {i: entry for i in range(n)})

    @staticmethod
    def from_json_dict(raw: dict) -> "TwistHypothesis":
        D = int(raw["D"])
        n = len(enumerate_characters(D))
        entries: dict[int, HypothesisEntry] = {}
        if "default" in raw:
            e = raw["default"]
            default = HypothesisEntry(
                float(e["d"]), float(e.get("theta", 0.0)), parse_rational(str(e["q"]))
            )
            entries = {i: default for i in range(n)}
        for e in raw.get("assignments", ()):
            entries[int(e["chi_index"])] = HypothesisEntry(
                float(e["d"]), float(e.get("theta", 0.0)), parse_rational(str(e["q"]))
            )
        return TwistHypothesis(D, entries)

    @staticmethod
    def load(path) -> "TwistHypothesis":
        with open(path, encoding="utf-8") as fh:
            return TwistHypothesis.from_json_dict(json.load(fh))


@dataclass(frozen=True)
class CharAuditInfo:
    index: int
    conductor: int
    dstar_cofactor: int  # (D / f_chi)^*
    d: float
    theta: float
    q: Fraction


@dataclass(frozen=True)
class AuditSets:
    D: int
    d0: float
    lambda0: float
    theta0: float
    A0: tuple[int, ...]
    B0: tuple[int, ...]
    q0: Fraction
    C0: tuple[int, ...]
    M: int
    m_denominators: dict[int, int] = field(compare=False)
    info: dict[int, CharAuditInfo] = field(compare=False)
    theta_branch: bool = False

    def to_json_dict(self) -> dict:
        return {
            "D": self.D,
            "d0": self.d0,
            "lambda0": self.lambda0,
            "theta0": self.theta0,
            "A0": list(self.A0),
            "B0": list(self.B0),
            "q0": str(self.q0),
            "C0": list(self.C0),
            "M": self.M,
            "m_denominators": {str(k): v for k, v in self.m_denominators.items()},
            "theta_branch": self.theta_branch,
        }


def compute_sets(
    D: int, h: TwistHypothesis, split: SplitTable, theta_F: float | None = None
) -> AuditSets:
    """Extremal sets of the audit; exact rationals for all conductor ratios.

    With every degree equal to 2 the shift branch applies: theta0 is then
    the smallest hypothesized shift differing from theta_F and lambda0
    becomes 1/2.
    """
    if h.D != D or split.D != D:
        raise ValueError("hypothesis/split modulus mismatch")
    chars = enumerate_characters(D)
    info: dict[int, CharAuditInfo] = {}
    for i, chi in enumerate(chars):
        f = primitive_inducing(chi).q
        entry = h.entries[i]
        info[i] = CharAuditInfo(
            index=i,
            conductor=f,
            dstar_cofactor=split.dstar_of(D // f),
            d=entry.d,
            theta=entry.theta,
            q=entry.q,
        )

    d0 = max(ci.d for ci in info.values())
    if d0 > 2:
        theta_branch = False
        A0 = tuple(i for i, ci in info.items() if ci.d == d0)
        theta0 = min(info[i].theta for i in A0)
        B0 = tuple(i for i in A0 if info[i].theta == theta0)
        lambda0 = 1.0 / d0
    else:
        if theta_F is None:
            raise ValueError("the all-degree-2 branch needs the base shift theta_F")
        theta_branch = True
        A0 = tuple(info)
        off = [i for i, ci in info.items() if ci.theta != theta_F]
        if not off:
            raise ValueError(
                "hypothesis matches the expected invariants; no extremal sets exist"
            )
        theta0 = min(info[i].theta for i in off)
        B0 = tuple(i for i in off if info[i].theta == theta0)
        lambda0 = 0.5

    q0 = max(info[i].dstar_cofactor * info[i].q for i in B0)
    C0 = tuple(i for i in B0 if info[i].dstar_cofactor * info[i].q == q0)
    m_denoms: dict[int, int] = {}
    for i in B0:
        if i in C0:
            continue
        ratio = info[i].dstar_cofactor * info[i].q / q0
        if ratio.denominator <= 1:
            raise RuntimeError(f"off-C0 conductor ratio {ratio} is not a proper fraction")
        m_denoms[i] = ratio.denominator
    M = lcm_all(m_denoms.values()) if m_denoms else 1
    return AuditSets(
        D, d0, lambda0, theta0, A0, B0, q0, C0, M, m_denoms, info, theta_branch
    )


def classify_residue_term(
    chi_index: int, m: int, nu: int, sets: AuditSets
) -> tuple[str, Fraction]:
    """Label one (chi, m) residue term at grid index nu.

    Returns (label, exact index q(chi*) m nu / q0). Requires chi in B0 and
    gcd(nu, M D) = 1; the only integral case is chi in C0 with
    m = (D/f_chi)^*, where the index collapses to nu.
    """
    if chi_index not in sets.B0:
        raise ValueError(f"character {chi_index} is not in B0")
    if gcd(nu, sets.M * sets.D) != 1:
        raise ValueError(f"nu={nu} must be coprime to M*D = {sets.M * sets.D}")
    ci = sets.info[chi_index]
    if ci.dstar_cofactor % m != 0:
        raise ValueError(f"m={m} does not divide (D/f)^* = {ci.dstar_cofactor}")
    index = ci.q * m * nu / sets.q0
    integral = index.denominator == 1
    if chi_index in sets.C0 and m == ci.dstar_cofactor:
        if not integral or index != nu:
            raise RuntimeError(f"active index {index} failed to collapse to nu={nu}")
        return ACTIVE, index
    if integral:
        raise RuntimeError(
            f"vanishing term (chi={chi_index}, m={m}, nu={nu}) has integral index {index}"
        )
    if chi_index in sets.C0:
        return VANISH_PROPER_DIVISOR, index
    return VANISH_NONINTEGRAL, index


def ell_coefficients(
    D: int, sets: AuditSets, s0: complex, split: SplitTable
) -> dict[int, complex]:
    """ell(chi) for chi in C0, with residue constants normalized to 1."""
    chars = enumerate_characters(D)
    out: dict[int, complex] = {}
    for i in sets.C0:
        chi = chars[i]
        ci = sets.info[i]
        val = f_coefficient(chi, ci.dstar_cofactor, 1, split)
        cofactor = D // ci.conductor
        for p, lf in split.locals.items():
            if cofactor % p == 0:
                lead = lf.coeffs[lf.degree]
                if lead == 0:
                    raise ZeroLeadingCoefficientError(
                        f"A_{lf.degree}({p}) = 0 violates the inverse-factor contract"
                    )
                val *= lead * cmath.exp(-lf.degree * s0 * math.log(p))
        out[i] = val
    return out


@dataclass(frozen=True)
class SaturationReport:
    D: int
    search_bound: int
    witnesses: dict[tuple[int, int], int | None] = field(compare=False)  # (M, a) -> nu
    verdict: str = ""

    def to_json_dict(self) -> dict:
        return {
            "D": self.D,
            "search_bound": self.search_bound,
            "witnesses": [
                {"M": M, "residue": a, "nu": nu}
                for (M, a), nu in sorted(self.witnesses.items())
            ],
            "verdict": self.verdict,
        }


def saturation_check(
    x: CoefficientSeries,
    D: int,
    M_list,
    search_bound: int,
    zero_tol: float = 1e-12,
) -> SaturationReport:
    """Witness nu = a (mod D), gcd(nu, M) = 1, a(nu) != 0 for each (M, a).

    Scans nu <= search_bound; a missing witness flags the pair rather than
    deciding non-saturation (the scan is finite).
    """
    if search_bound > x.N:
        raise IndexError(f"search_bound={search_bound} exceeds truncation {x.N}")
    nu = np.arange(1, search_bound + 1)
    nonzero = np.abs(x.values[:search_bound]) > zero_tol
    witnesses: dict[tuple[int, int], int | None] = {}
    residues = [a for a in range(1, D + 1) if gcd(a, D) == 1] if D > 1 else [1]
    for M in M_list:
        coprime = np.array([gcd(int(v), M) == 1 for v in nu])
        for a in residues:
            mask = nonzero & coprime & (nu % D == a % D)
            hits = nu[mask]
            witnesses[(int(M), a)] = int(hits[0]) if len(hits) else None
    verdict = (
        "SATURATED-UP-TO-BOUND"
        if all(v is not None for v in witnesses.values())
        else "COUNTEREXAMPLE-CANDIDATE"
    )
    return SaturationReport(D, search_bound, witnesses, verdict)


def independence_rank(x: CoefficientSeries, D: int, M: int, cutoff: int) -> int:
    """Numerical rank of the twisted-coefficient matrix over n <= cutoff.

    Rows a(n) chi(n) per character, columns restricted to gcd(n, M) = 1;
    full rank phi(D) is the saturated expectation.
    """
    if cutoff > x.N:
        raise IndexError(f"cutoff={cutoff} exceeds truncation {x.N}")
    cols = [n for n in range(1, cutoff + 1) if gcd(n, M) == 1]
    a_vals = x.padded[cols]
    rows = []
    for chi in enumerate_characters(D):
        chi_vals = chi.values_up_to(cutoff)
        rows.append(a_vals * chi_vals[cols])
    return int(np.linalg.matrix_rank(np.vstack(rows), tol=1e-8))


@dataclass(frozen=True)
class AuditReport:
    verdict: str
    witness: int | None
    witness_value: complex | None
    s0: complex | None
    sets: AuditSets | None
    ell: dict[int, complex] | None
    classifications: tuple[dict, ...]
    saturation: SaturationReport | None
    nu_bound: int
    notes: tuple[str, ...]

    def to_json_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "witness": self.witness,
            "witness_value": (
                [self.witness_value.real, self.witness_value.imag]
                if self.witness_value is not None
                else None
            ),
            "s0": [self.s0.real, self.s0.imag] if self.s0 is not None else None,
            "sets": self.sets.to_json_dict() if self.sets else None,
            "ell": (
                {str(k): [v.real, v.imag] for k, v in sorted(self.ell.items())}
                if self.ell
                else None
            ),
            "classifications": list(self.classifications),
            "saturation": self.saturation.to_json_dict() if self.saturation else None,
            "nu_bound": self.nu_bound,
            "notes": list(self.notes),
        }


CONTRADICTION = "CONTRADICTION"
NO_WITNESS = "NO-WITNESS-UP-TO-BOUND"
CONSISTENT = "HYPOTHESIS-CONSISTENT"


def find_contradiction(
    x: CoefficientSeries,
    D: int,
    h: TwistHypothesis,
    split: SplitTable,
    theta_F: float,
    nu_bound: int = 10_000,
    witness_tol: float = 1e-9,
) -> AuditReport:
    """Scan for nu with gcd(nu, M D) = 1 breaking the forced residue vanishing.

    A hypothesis matching the expected conclusion (all degrees 2, all
    shifts theta_F) returns HYPOTHESIS-CONSISTENT without scanning. The
    exhausted scan reports NO-WITNESS-UP-TO-BOUND, never consistency.
    """
    entries = h.entries
    if all(e.d == 2 for e in entries.values()) and all(
        e.theta == theta_F for e in entries.values()
    ):
        return AuditReport(
            CONSISTENT,
            None,
            None,
            None,
            None,
            None,
            (),
            None,
            nu_bound,
            ("hypothesis assigns degree 2 and shift theta_F to every twist",),
        )

    sets = compute_sets(D, h, split, theta_F)
    s0 = complex(0.5 + 1.0 / (2 * sets.d0), -sets.theta0)
    ell = ell_coefficients(D, sets, s0, split)
    bound = min(nu_bound, x.N)
    chars = enumerate_characters(D)

    nu = np.arange(1, bound + 1)
    MD = sets.M * D
    coprime = np.array([gcd(int(v), MD) == 1 for v in nu])
    weighted = np.zeros(bound, dtype=np.complex128)
    for i in sets.C0:
        star = primitive_inducing(chars[i])
        weighted += np.conjugate(ell[i]) * star.values_up_to(bound)[1:]
    vals = x.values[:bound] * weighted
    hits = np.nonzero(coprime & (np.abs(vals) > witness_tol))[0]

    notes = [
        "residue constants c(F^chi*) are not computable from coefficients; "
        "all are normalized to 1 and only their nonvanishing is used",
        "the additive-shift coefficient f(chi, m, 1/D) is evaluated at a = 1 "
        "(the twist F(s, 1/D, ...) has numerator 1)",
        "conductor hypotheses are rational by construction; the irrational "
        "q(chi*)/q0 exclusion is unreachable for these inputs",
    ]
    if sets.theta_branch:
        notes.append(
            "shift branch: lambda0 = 1/2 and s0 = 3/4 - i theta0 avoids the "
            "boundary ray of the half-plane twist, so the residue sum must vanish"
        )
    else:
        notes.append(
            "degree branch: lambda0 = 1/d0 < 1/2 makes the additively twisted "
            "series entire, so the residue sum must vanish"
        )
    if len(sets.C0) > 1:
        notes.append(
            "|C0| > 1: verdict holds assuming nonzero constants; the witness "
            "exhibits a nontrivial dependence relation among the C0 characters"
        )

    saturation = saturation_check(x, D, [MD], bound)

    if len(hits) == 0:
        return AuditReport(
            NO_WITNESS,
            None,
            None,
            s0,
            sets,
            ell,
            (),
            saturation,
            bound,
            tuple(notes + [f"scan exhausted nu <= {bound} without a witness"]),
        )

    witness = int(nu[hits[0]])
    classifications = []
    for i in sets.B0:
        ci = sets.info[i]
        for m in divisors(ci.dstar_cofactor):
            label, index = classify_residue_term(i, m, witness, sets)
            classifications.append(
                {
                    "chi_index": i,
                    "m": m,
                    "label": label,
                    "index": str(index),
                }
            )
    return AuditReport(
        CONTRADICTION,
        witness,
        complex(vals[hits[0]]),
        s0,
        sets,
        ell,
        tuple(classifications),
        saturation,
        bound,
        tuple(notes),
    )
