"""Fixture documents: coefficient data plus gamma-factor metadata, as JSON.

Schema (UTF-8 JSON, canonical form = sorted keys, compact separators):

    {
      "label": str,
      "N": int,
      "coefficients": [[re, im], ...],       # 1-indexed order: entry 0 is a(1)
      "growth_exponent": float,
      "gamma": {"Q": float,
                "factors": [{"lambda": float, "mu": [re, im]}, ...],
                "omega": [re, im]},
      "notes": str                            # optional
    }

Round-trips are bit-exact: floats serialize via repr and parse back to the
same doubles, and dumps(load(text)) reproduces the canonical text.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .characters import enumerate_characters
from .invariants import GammaFactorData
from .series import (
    CoefficientSeries,
    delta_normalized,
    divisor_series,
    zeta_times_L,
)

__all__ = [
    "FixtureDocument",
    "FixtureFormatError",
    "dumps_fixture",
    "loads_fixture",
    "load_fixture",
    "save_fixture",
    "make_fixture",
    "FAMILIES",
]


class FixtureFormatError(ValueError):
    """Malformed fixture document; carries a human-readable location."""


@dataclass
class FixtureDocument:
    label: str
    series: CoefficientSeries
    gamma: GammaFactorData
    notes: str = ""

    def to_json_dict(self) -> dict:
        vals = self.series.values
        doc = {
            "label": self.label,
            "N": self.series.N,
            "coefficients": [[float(v.real), float(v.imag)] for v in vals],
            "growth_exponent": self.series.growth_exponent,
            "gamma": self.gamma.to_json_dict(),
        }
        if self.notes:
            doc["notes"] = self.notes
        return doc


def dumps_fixture(doc: FixtureDocument) -> str:
    return json.dumps(doc.to_json_dict(), sort_keys=True, separators=(",", ":"))


def _require(cond: bool, where: str, what: str):
    if not cond:
        raise FixtureFormatError(f"{where}: {what}")


def loads_fixture(text: str, source: str = "<string>") -> FixtureDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FixtureFormatError(
            f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}"
        ) from exc
    _require(isinstance(raw, dict), source, "top level must be an object")
    for key in ("label", "N", "coefficients", "growth_exponent", "gamma"):
        _require(key in raw, source, f"missing required key {key!r}")
    n = raw["N"]
    coeffs = raw["coefficients"]
    _require(isinstance(n, int) and n >= 1, source, "N must be a positive integer")
    _require(
        isinstance(coeffs, list) and len(coeffs) == n,
        source,
        f"coefficients must hold exactly N={n} entries (got {len(coeffs)})",
    )
    vals = np.empty(n, dtype=np.complex128)
    for i, pair in enumerate(coeffs):
        _require(
            isinstance(pair, list) and len(pair) == 2,
            f"{source} coefficients[{i}]",
            "each entry must be [re, im]",
        )
        vals[i] = complex(pair[0], pair[1])
    _require(
        bool(np.all(np.isfinite(vals.view(np.float64)))),
        source,
        "coefficients must be finite",
    )
    try:
        gamma = GammaFactorData.from_json_dict(raw["gamma"])
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise FixtureFormatError(f"{source} gamma: {exc}") from exc
    series = CoefficientSeries(raw["label"], vals, float(raw["growth_exponent"]))
    return FixtureDocument(raw["label"], series, gamma, raw.get("notes", ""))


def load_fixture(path) -> FixtureDocument:
    with open(path, encoding="utf-8") as fh:
        return loads_fixture(fh.read(), source=str(path))


def save_fixture(doc: FixtureDocument, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_fixture(doc))
        fh.write("\n")


# ---------------------------------------------------------------------------
# built-in families: degree-2 data with integer conductor


def _zeta_squared(N: int) -> FixtureDocument:
    gamma = GammaFactorData(1 / math.pi, ((0.5, 0j), (0.5, 0j)))
    return FixtureDocument("zeta-squared", divisor_series(N), gamma)


def _delta(N: int) -> FixtureDocument:
    gamma = GammaFactorData(1 / (2 * math.pi), ((1.0, 5.5 + 0j),))
    return FixtureDocument("delta-normalized", delta_normalized(N), gamma)


def _zeta_l_chi4(N: int) -> FixtureDocument:
    chi4 = enumerate_characters(4)[1]
    gamma = GammaFactorData(2 / math.pi, ((0.5, 0j), (0.5, 0.5 + 0j)))
    return FixtureDocument("zeta-l-chi4", zeta_times_L(chi4, N), gamma)


FAMILIES = {
    "zeta-squared": _zeta_squared,
    "delta-normalized": _delta,
    "zeta-l-chi4": _zeta_l_chi4,
}


def make_fixture(family: str, N: int) -> FixtureDocument:
    if family not in FAMILIES:
        raise ValueError(
            f"unknown family {family!r}; choose from {sorted(FAMILIES)}"
        )
    return FAMILIES[family](N)
