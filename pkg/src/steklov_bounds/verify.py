"""Pass/fail verification of the eigenvalue inequalities on model geometries.

Margins are signed slack values, nonnegative exactly when the inequality
holds:

    margin12 = sigma_k^2 + A*sigma_k - lambda_k
    margin13 = B + sqrt(B^2 + lambda_k) - sigma_k
    marginGap = max(A, 2B) - |sigma_k - sqrt(lambda_k)|

Eigenvalue pairing is strictly by ascending sorted index on both lists,
mirroring the min-max indexing; no mode-aware pairing is exposed.  Indices
k <= ell (number of boundary components) have lambda_k = 0, where margin13
reduces to the 2B - sigma_k form automatically.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

import numpy as np

from .constants import ConstantsResult, cylindrical_constants
from .spectra import (
    Circle,
    Cylinder,
    ModelGeometry,
    boundary_components,
    boundary_laplace_spectrum,
    describe,
    steklov_spectrum,
)

__all__ = [
    "MarginRow",
    "VerificationReport",
    "TwoManifoldReport",
    "SandwichReport",
    "CollarMismatchError",
    "DEFAULT_TOLERANCE",
    "margin_rows",
    "verify_inequalities",
    "verify_two_manifolds",
    "verify_cylinder_sandwich",
]

#: closed forms are accurate to ~1e-12 and ODE-based spectra to ~1e-8, so
#: margins are accepted down to this absolute slack
DEFAULT_TOLERANCE = 1e-9


class CollarMismatchError(ValueError):
    """The two manifolds do not share an isometric boundary collar."""


def _fmt(x: float) -> float:
    return float(f"{x:.12g}")


@dataclass(frozen=True)
class MarginRow:
    k: int
    sigma: float
    lam: float
    margin12: float
    margin13: float
    margin_gap: float
    boundary_index: bool

    def min_margin(self) -> float:
        return min(self.margin12, self.margin13, self.margin_gap)


def margin_rows(
    sigmas: np.ndarray,
    lambdas: np.ndarray,
    cr: ConstantsResult,
    ell: int,
) -> list[MarginRow]:
    """Per-index margins for sorted eigenvalue lists of equal length."""
    if cr.A is None:
        raise ValueError(f"{cr.regime.value} certificate lacks A; cannot verify both sides")
    sigmas = np.sort(np.asarray(sigmas, dtype=float))
    lambdas = np.sort(np.asarray(lambdas, dtype=float))
    if sigmas.size != lambdas.size:
        raise ValueError("sigma and lambda lists must have equal length")
    A, B = cr.A, cr.B
    gap = cr.gap
    rows = []
    for k, (s, lam) in enumerate(zip(sigmas, lambdas), start=1):
        rows.append(
            MarginRow(
                k=k,
                sigma=float(s),
                lam=float(lam),
                margin12=s * s + A * s - lam,
                margin13=B + math.sqrt(B * B + lam) - s,
                margin_gap=gap - abs(s - math.sqrt(lam)),
                boundary_index=k <= ell,
            )
        )
    return rows


@dataclass
class VerificationReport:
    """Margins of the quadratic, square-root and gap inequalities."""

    geometry: str
    constants: ConstantsResult
    tolerance: float
    rows: list[MarginRow]

    @property
    def passed(self) -> bool:
        return all(r.min_margin() >= -self.tolerance for r in self.rows)

    @property
    def worst(self) -> dict[str, float]:
        return {
            "margin12": min(r.margin12 for r in self.rows),
            "margin13": min(r.margin13 for r in self.rows),
            "marginGap": min(r.margin_gap for r in self.rows),
        }

    def failing_indices(self) -> list[int]:
        return [r.k for r in self.rows if r.min_margin() < -self.tolerance]

    def to_json_dict(self) -> dict:
        return {
            "geometry": self.geometry,
            "constants": {
                "A": _fmt(self.constants.A),
                "B": _fmt(self.constants.B),
                "regime": self.constants.regime.value,
                "gap": _fmt(self.constants.gap),
            },
            "tolerance": self.tolerance,
            "pass": self.passed,
            "worst": {k: _fmt(v) for k, v in self.worst.items()},
            "rows": [
                {
                    "k": r.k,
                    "sigma": _fmt(r.sigma),
                    "lambda": _fmt(r.lam),
                    "margin12": _fmt(r.margin12),
                    "margin13": _fmt(r.margin13),
                    "marginGap": _fmt(r.margin_gap),
                    "pass": r.min_margin() >= -self.tolerance,
                }
                for r in self.rows
            ],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["k", "sigma", "lambda", "margin12", "margin13", "marginGap", "pass"])
        for r in self.rows:
            writer.writerow(
                [
                    r.k,
                    f"{r.sigma:.12g}",
                    f"{r.lam:.12g}",
                    f"{r.margin12:.12g}",
                    f"{r.margin13:.12g}",
                    f"{r.margin_gap:.12g}",
                    str(r.min_margin() >= -self.tolerance).lower(),
                ]
            )
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)


def verify_inequalities(
    g: ModelGeometry,
    k_max: int,
    cr: ConstantsResult,
    tolerance: float = DEFAULT_TOLERANCE,
) -> VerificationReport:
    """Check the quadratic, square-root and gap inequalities for k <= k_max
    on a model geometry with the given certificate."""
    sigmas = steklov_spectrum(g, k_max)
    lambdas = boundary_laplace_spectrum(g, k_max)
    rows = margin_rows(sigmas, lambdas, cr, boundary_components(g))
    return VerificationReport(describe(g), cr, tolerance, rows)


@dataclass
class TwoManifoldReport:
    """Per-index Steklov differences of two manifolds sharing a collar,
    checked against the uniform bound 2C from the collar certificate."""

    geometry_1: str
    geometry_2: str
    collar_width: float
    bound: float
    tolerance: float
    ks: list[int]
    sigma_1: list[float]
    sigma_2: list[float]

    @property
    def differences(self) -> list[float]:
        return [abs(a - b) for a, b in zip(self.sigma_1, self.sigma_2)]

    @property
    def passed(self) -> bool:
        return all(d <= self.bound + self.tolerance for d in self.differences)

    def to_json_dict(self) -> dict:
        return {
            "geometry1": self.geometry_1,
            "geometry2": self.geometry_2,
            "collarWidth": self.collar_width,
            "bound": _fmt(self.bound),
            "tolerance": self.tolerance,
            "pass": self.passed,
            "rows": [
                {
                    "k": k,
                    "sigma1": _fmt(s1),
                    "sigma2": _fmt(s2),
                    "difference": _fmt(abs(s1 - s2)),
                    "pass": abs(s1 - s2) <= self.bound + self.tolerance,
                }
                for k, s1, s2 in zip(self.ks, self.sigma_1, self.sigma_2)
            ],
        }


def verify_two_manifolds(
    g1: ModelGeometry,
    g2: ModelGeometry,
    collar_width: float,
    k_max: int,
    tolerance: float = DEFAULT_TOLERANCE,
) -> TwoManifoldReport:
    """Check |sigma_k(M1) - sigma_k(M2)| <= 2C for manifolds with isometric
    boundary collars.

    Built-in supported pair: two product cylinders over the same cross
    section with different lengths; the shared collar is a product collar,
    so C comes from the cylindrical certificate at the collar width.
    """
    if not (isinstance(g1, Cylinder) and isinstance(g2, Cylinder)):
        raise CollarMismatchError("built-in comparison supports product cylinders")
    if g1.cross_section != g2.cross_section:
        # distinct cross sections have distinct boundary spectra
        l1 = boundary_laplace_spectrum(g1, max(k_max, 8))
        l2 = boundary_laplace_spectrum(g2, max(k_max, 8))
        if not np.allclose(l1, l2, rtol=0.0, atol=1e-12):
            raise CollarMismatchError("boundary spectra differ; collars are not isometric")
    max_width = min(g1.length, g2.length) / 2.0
    if not 0.0 < collar_width <= max_width:
        raise CollarMismatchError(
            f"collar width must lie in (0, {max_width}] for these cylinders"
        )
    bound = 2.0 * cylindrical_constants(collar_width).gap
    s1 = steklov_spectrum(g1, k_max)
    s2 = steklov_spectrum(g2, k_max)
    return TwoManifoldReport(
        geometry_1=describe(g1),
        geometry_2=describe(g2),
        collar_width=collar_width,
        bound=bound,
        tolerance=tolerance,
        ks=list(range(1, k_max + 1)),
        sigma_1=[float(v) for v in s1],
        sigma_2=[float(v) for v in s2],
    )


@dataclass(frozen=True)
class SandwichRow:
    k: int
    sigma: float
    lam: float
    margin_lower: float
    margin_upper: float
    margin_gap: float

    def min_margin(self) -> float:
        return min(self.margin_lower, self.margin_upper, self.margin_gap)


@dataclass
class SandwichReport:
    """tanh/coth sandwich and gap margins for a product cylinder.

    The sandwich interval is evaluated at the maximal product-collar width
    of the model, i.e. half its length (the boundary has two components, so
    a boundary neighbourhood isometric to Sigma x [0, w) exists exactly for
    w <= L/2).  The gap is checked against 1/L.  Indices k <= ell are
    skipped.
    """

    geometry: str
    collar_width: float
    gap_constant: float
    tolerance: float
    rows: list[SandwichRow]

    @property
    def passed(self) -> bool:
        return all(r.min_margin() >= -self.tolerance for r in self.rows)

    def to_json_dict(self) -> dict:
        return {
            "geometry": self.geometry,
            "collarWidth": self.collar_width,
            "gapConstant": _fmt(self.gap_constant),
            "tolerance": self.tolerance,
            "pass": self.passed,
            "rows": [
                {
                    "k": r.k,
                    "sigma": _fmt(r.sigma),
                    "lambda": _fmt(r.lam),
                    "marginLower": _fmt(r.margin_lower),
                    "marginUpper": _fmt(r.margin_upper),
                    "marginGap": _fmt(r.margin_gap),
                    "pass": r.min_margin() >= -self.tolerance,
                }
                for r in self.rows
            ],
        }


def verify_cylinder_sandwich(
    g: Cylinder,
    k_max: int,
    tolerance: float = 1e-10,
) -> SandwichReport:
    """Check the tanh/coth sandwich and the 1/L gap on a product cylinder,
    pairing sorted Steklov values against sorted boundary eigenvalues."""
    if not isinstance(g, Cylinder):
        raise TypeError("sandwich check needs a product cylinder")
    ell = boundary_components(g)
    sigmas = steklov_spectrum(g, k_max)
    lambdas = boundary_laplace_spectrum(g, k_max)
    w = g.length / 2.0
    gap_constant = 1.0 / g.length
    rows = []
    for k in range(ell + 1, k_max + 1):
        s, lam = float(sigmas[k - 1]), float(lambdas[k - 1])
        root = math.sqrt(lam)
        lower = root * math.tanh(root * w)
        upper = root / math.tanh(root * w) if root > 0.0 else math.inf
        rows.append(
            SandwichRow(
                k=k,
                sigma=s,
                lam=lam,
                margin_lower=s - lower,
                margin_upper=upper - s,
                margin_gap=gap_constant - abs(s - root),
            )
        )
    return SandwichReport(describe(g), w, gap_constant, tolerance, rows)
