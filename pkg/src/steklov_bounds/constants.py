"""Certified comparison constants for eigenvalue inequalities.

A pair (A, B) is a certificate for a class of manifolds when every member
satisfies, for all k,

    lambda_k <= sigma_k^2 + A * sigma_k            (quadratic inequality)
    sigma_k  <= B + sqrt(B^2 + lambda_k)           (square-root inequality)

which together force |sigma_k - sqrt(lambda_k)| <= max(A, 2B).  The general
route produces A and B from the intermediate dimensionless quantities

    Abar = sup_{0 <= delta < h_tilde} (h_tilde - delta) (a(delta) - (n-1) b(delta))
    Bbar = n * sup_{0 <= delta < roll} (roll - delta) mu(delta)

via A >= (1 + Abar)/h_tilde and B >= (1 + Bbar)/(2 roll).  Closed upper
bounds exist:

    Abar <= h_tilde * sqrt(|alpha| + kappa_minus^2) + (n - 1)
    Bbar <= roll * n * sqrt(|alpha| + kappa_minus^2)

and substituting them gives the standard explicit certificate

    A = n/h_tilde + sqrt(|alpha| + kappa_minus^2)
    B = 1/(2 roll) + (n/2) sqrt(|alpha| + kappa_minus^2).

Several geometrically rigid regimes (totally geodesic boundary, horoconvex
boundary, flat ambient space, positive curvature with convex boundary,
product collars, ...) admit sharper closed certificates; ``regime_constants``
evaluates every one whose numeric preconditions hold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .comparison import (
    ComparisonTriple,
    GeometryBounds,
    RegimeConditionError,
    comparison_functions,
)
from .riccati import RiccatiCase, RiccatiSolution, evaluate

__all__ = [
    "Regime",
    "ConstantsResult",
    "BarConstants",
    "CheegerData",
    "RegimeHints",
    "abar_bbar",
    "general_constants",
    "regime_constants",
    "cylindrical_constants",
    "best_certificate",
    "gap_bound",
    "sigma2_lower_bound",
    "two_manifold_bound",
]

#: grid resolution for the tight suprema; endpoints then refined by
#: golden-section search (the maximized functions are smooth and unimodal
#: in the regimes we use)
GRID_POINTS = 2048

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class Regime(Enum):
    GENERAL = "General"
    GENERAL_WEAK = "GeneralWeak"
    TOTALLY_GEODESIC_MIXED = "TotallyGeodesicMixed"
    TOTALLY_GEODESIC_NEG = "TotallyGeodesicNeg"
    TOTALLY_GEODESIC_POS = "TotallyGeodesicPos"
    MINIMAL_RICCI = "MinimalRicci"
    HOROCONVEX = "Horoconvex"
    POSITIVE_CONVEX = "PositiveConvex"
    XIONG_NEG = "XiongNeg"
    XIONG_POS = "XiongPos"
    FLAT_MIXED = "FlatMixed"
    FLAT_CONVEX = "FlatConvex"
    FLAT_CONCAVE = "FlatConcave"
    CYLINDRICAL = "Cylindrical"


@dataclass(frozen=True)
class ConstantsResult:
    """A certified pair (A, B) plus its intermediates and regime label.

    ``A`` is None for certificates that only support the square-root
    inequality (GeneralWeak, MinimalRicci).  ``gap`` is max(A, 2B).
    """

    A: float | None
    B: float
    regime: Regime
    A_bar: float | None = None
    B_bar: float | None = None

    @property
    def gap(self) -> float:
        if self.A is None:
            raise ValueError(f"{self.regime.value} certifies only the B-side")
        return max(self.A, 2.0 * self.B)

    def scale_A(self, factor: float) -> "ConstantsResult":
        """Same certificate with A multiplied by ``factor`` (negative-control
        helper; the result is generally *not* a valid certificate)."""
        if self.A is None:
            raise ValueError("no A to scale")
        return ConstantsResult(self.A * factor, self.B, self.regime, self.A_bar, self.B_bar)


@dataclass(frozen=True)
class BarConstants:
    """Tight (grid), explicit (closed-bound) and reported Abar/Bbar values."""

    a_bar: float | None
    b_bar: float
    a_bar_tight: float | None
    b_bar_tight: float
    a_bar_explicit: float | None
    b_bar_explicit: float


@dataclass(frozen=True)
class CheegerData:
    """Cheeger constant of the closed boundary; meaningful only when the
    boundary is connected."""

    h_sigma: float
    boundary_components: int = 1


def _golden_max(f, lo: float, hi: float, tol: float = 1e-12) -> float:
    """Golden-section maximization of a unimodal f on [lo, hi]."""
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol * max(1.0, abs(a) + abs(b)):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    return max(fc, fd)


def _sup_on_halfopen(f, hi: float) -> float:
    """sup of f over [0, hi): 2048-point grid plus golden refinement around
    the best grid cell.  f must accept ndarrays."""
    xs = np.linspace(0.0, hi, GRID_POINTS, endpoint=False)
    vals = np.asarray(f(xs), dtype=float)
    i = int(np.argmax(vals))
    lo_b = xs[max(i - 1, 0)]
    hi_b = xs[i + 1] if i + 1 < GRID_POINTS else hi * (1.0 - 1e-12)
    refined = _golden_max(lambda x: float(f(np.asarray([x]))[0]), lo_b, hi_b)
    return max(float(vals[i]), refined)


def _mu_nonpositive_on(mu: RiccatiSolution, h_bar: float) -> bool:
    """Exact closed-form test for mu(delta) <= 0 on all of [0, h_bar]."""
    kappa, alpha = mu.kappa, mu.curvature
    if kappa < 0.0:
        return False  # mu(0) = -kappa > 0
    if alpha >= 0.0:
        return True  # mu(0) <= 0 and mu is nonincreasing
    lam = math.sqrt(-alpha)
    if kappa >= lam:
        return True  # contracting / horosphere branches stay <= -lam
    # hypercycle: mu crosses zero at atanh(kappa/lam)/lam
    return h_bar <= math.atanh(kappa / lam) / lam


def _sqrt_term(gb: GeometryBounds) -> float:
    return math.sqrt(abs(gb.alpha) + gb.kappa_minus**2)


def abar_bbar(gb: GeometryBounds) -> BarConstants:
    """Tight and explicit Abar/Bbar for the general certificate route.

    The reported values are the componentwise minima of the grid suprema and
    the closed bounds, clamped below at zero; Bbar collapses to 0 outright
    whenever mu <= 0 on the whole collar.
    """
    triple = comparison_functions(gb)
    n, h_bar = gb.dim_n, gb.roll
    root = _sqrt_term(gb)

    b_bar_explicit = h_bar * n * root
    if _mu_nonpositive_on(triple.mu, h_bar):
        b_bar_tight = 0.0
    else:
        b_bar_tight = max(
            0.0,
            n * _sup_on_halfopen(lambda d: (h_bar - d) * evaluate(triple.mu, d), h_bar),
        )
    b_bar = max(0.0, min(b_bar_tight, b_bar_explicit))

    if gb.weak_hypotheses:
        return BarConstants(None, b_bar, None, b_bar_tight, None, b_bar_explicit)

    ht = gb.h_tilde
    a_bar_explicit = ht * root + (n - 1)

    def integrand(d):
        return (ht - d) * (evaluate(triple.a, d) - (n - 1) * evaluate(triple.b, d))

    a_bar_tight = max(0.0, _sup_on_halfopen(integrand, ht))
    a_bar = max(0.0, min(a_bar_tight, a_bar_explicit))
    return BarConstants(a_bar, b_bar, a_bar_tight, b_bar_tight, a_bar_explicit, b_bar_explicit)


def general_constants(gb: GeometryBounds, tight: bool = False) -> ConstantsResult:
    """The general certificate for the bound class described by ``gb``.

    By default returns the standard explicit pair

        A = n/h_tilde + sqrt(|alpha| + kappa_minus^2)
        B = 1/(2 roll) + (n/2) sqrt(|alpha| + kappa_minus^2),

    which equals (1 + Abar_explicit)/h_tilde, (1 + Bbar_explicit)/(2 roll)
    identically.  With ``tight=True`` the reported (grid-refined) Abar/Bbar
    are substituted instead, yielding a smaller certified pair.

    Under weak hypotheses only B is produced (regime GeneralWeak).
    """
    n, h_bar, root = gb.dim_n, gb.roll, _sqrt_term(gb)
    if gb.weak_hypotheses:
        bars = abar_bbar(gb)
        b_bar = bars.b_bar if tight else bars.b_bar_explicit
        return ConstantsResult(
            A=None,
            B=(1.0 + b_bar) / (2.0 * h_bar),
            regime=Regime.GENERAL_WEAK,
            A_bar=None,
            B_bar=b_bar,
        )
    if tight:
        bars = abar_bbar(gb)
        a_bar, b_bar = bars.a_bar, bars.b_bar
        return ConstantsResult(
            A=(1.0 + a_bar) / gb.h_tilde,
            B=(1.0 + b_bar) / (2.0 * h_bar),
            regime=Regime.GENERAL,
            A_bar=a_bar,
            B_bar=b_bar,
        )
    return ConstantsResult(
        A=n / gb.h_tilde + root,
        B=1.0 / (2.0 * h_bar) + (n / 2.0) * root,
        regime=Regime.GENERAL,
        A_bar=gb.h_tilde * root + (n - 1),
        B_bar=h_bar * n * root,
    )


@dataclass(frozen=True)
class RegimeHints:
    """Structural facts that cannot be read off the numeric bounds.

    ``minimal_ricci`` asserts a minimal boundary with the matching Ricci
    bound, ``xiong`` that M is a domain in a complete manifold (enabling the
    convex-domain certificates), and ``collar_width`` that a boundary
    neighbourhood is isometric to the product Sigma x [0, L).
    """

    minimal_ricci: bool = False
    xiong: bool = False
    collar_width: float | None = None


def cylindrical_constants(collar_width: float) -> ConstantsResult:
    """Certificate A = 1/L, B = 1/(2L) for a product boundary collar of
    width L (flat normal curvature, totally geodesic boundary)."""
    if not collar_width > 0.0:
        raise RegimeConditionError("collar width L > 0 required")
    return ConstantsResult(
        A=1.0 / collar_width,
        B=1.0 / (2.0 * collar_width),
        regime=Regime.CYLINDRICAL,
        A_bar=0.0,
        B_bar=0.0,
    )


def _totally_geodesic(gb: GeometryBounds) -> ConstantsResult | None:
    if gb.kappa_minus != 0.0 or gb.kappa_plus != 0.0:
        return None
    n, h_bar = gb.dim_n, gb.roll
    if gb.beta <= 0.0:
        if gb.alpha == 0.0:
            return None  # flat: handled by the flat regimes
        lam = math.sqrt(-gb.alpha)
        return ConstantsResult(
            A=1.0 / h_bar + lam,
            B=0.5 * (1.0 / h_bar + n * lam),
            regime=Regime.TOTALLY_GEODESIC_NEG,
            A_bar=h_bar * lam,
            B_bar=n * h_bar * lam,
        )
    if gb.alpha >= 0.0:
        lam = math.sqrt(gb.beta)
        return ConstantsResult(
            A=n * max(1.0 / h_bar, 2.0 * lam / math.pi),
            B=1.0 / (2.0 * h_bar),
            regime=Regime.TOTALLY_GEODESIC_POS,
            A_bar=float(n - 1),
            B_bar=0.0,
        )
    lam = math.sqrt(max(-gb.alpha, gb.beta))
    return ConstantsResult(
        A=n * max(1.0 / h_bar, 2.0 * lam / math.pi) + lam,
        B=0.5 * (1.0 / h_bar + n * lam),
        regime=Regime.TOTALLY_GEODESIC_MIXED,
    )


def _flat(gb: GeometryBounds) -> list[ConstantsResult]:
    if gb.alpha != 0.0 or gb.beta != 0.0:
        return []
    n, h_bar = gb.dim_n, gb.roll
    km, kp = gb.kappa_minus, gb.kappa_plus
    out = [
        ConstantsResult(
            A=n * max(1.0 / h_bar, kp) + abs(km),
            B=0.5 * (1.0 / h_bar + n * abs(km)),
            regime=Regime.FLAT_MIXED,
        )
    ]
    if km >= 0.0:
        out.append(
            ConstantsResult(
                A=n * max(1.0 / h_bar, kp),
                B=1.0 / (2.0 * h_bar),
                regime=Regime.FLAT_CONVEX,
                A_bar=float(n - 1),
                B_bar=0.0,
            )
        )
    if kp <= 0.0:
        out.append(
            ConstantsResult(
                A=1.0 / h_bar + abs(km),
                B=0.5 * (1.0 / h_bar + n * abs(km)),
                regime=Regime.FLAT_CONCAVE,
            )
        )
    return out


def _horoconvex(gb: GeometryBounds, claimed: bool) -> ConstantsResult | None:
    if gb.alpha >= 0.0 or gb.beta > 0.0:
        if claimed:
            raise RegimeConditionError("horoconvex needs -lam^2 <= K <= 0 with lam > 0")
        return None
    lam = math.sqrt(-gb.alpha)
    if not gb.kappa_minus > lam:
        if claimed:
            raise RegimeConditionError("horoconvex needs kappa_minus > lam")
        return None
    return ConstantsResult(
        A=gb.dim_n * max(gb.kappa_plus, 1.0 / gb.roll),
        B=1.0 / (2.0 * gb.roll),
        regime=Regime.HOROCONVEX,
        A_bar=float(gb.dim_n - 1),
        B_bar=0.0,
    )


def _positive_convex(gb: GeometryBounds, claimed: bool) -> ConstantsResult | None:
    if not (gb.alpha > 0.0 and gb.kappa_minus >= 0.0):
        if claimed:
            raise RegimeConditionError(
                "positive-convex needs 0 < K and kappa_minus >= 0"
            )
        return None
    lam = math.sqrt(gb.beta)
    return ConstantsResult(
        A=gb.dim_n * max(1.0 / gb.roll, math.hypot(lam, gb.kappa_plus)),
        B=1.0 / (2.0 * gb.roll),
        regime=Regime.POSITIVE_CONVEX,
        A_bar=float(gb.dim_n - 1),
        B_bar=0.0,
    )


def _xiong(gb: GeometryBounds) -> ConstantsResult:
    if gb.beta <= 0.0:
        lam = math.sqrt(-gb.alpha) if gb.alpha < 0.0 else 0.0
        if not gb.kappa_minus > lam:
            raise RegimeConditionError("Xiong nonpositive case needs kappa_minus > lam")
        return ConstantsResult(
            A=gb.dim_n * gb.kappa_plus,
            B=0.5 * gb.kappa_plus,
            regime=Regime.XIONG_NEG,
        )
    if gb.alpha > 0.0:
        if not gb.kappa_minus > 0.0:
            raise RegimeConditionError("Xiong positive case needs kappa_minus > 0")
        lam = math.sqrt(gb.beta)
        val = math.hypot(lam, gb.kappa_plus)
        return ConstantsResult(
            A=gb.dim_n * val,
            B=0.5 * val,
            regime=Regime.XIONG_POS,
        )
    raise RegimeConditionError("Xiong regimes need K <= 0 or K > 0 throughout")


def regime_constants(
    gb: GeometryBounds, hints: RegimeHints | None = None
) -> list[ConstantsResult]:
    """All certificates applicable to ``gb``.

    Regimes derivable from the numeric bounds alone (general route, totally
    geodesic, flat, horoconvex, positive-convex) are detected automatically;
    structural regimes (minimal boundary with Ricci bound, domain in a
    complete manifold, product collar) come from ``hints`` and their numeric
    preconditions are validated, raising RegimeConditionError on violation.
    """
    hints = hints or RegimeHints()
    results: list[ConstantsResult] = []
    if gb.weak_hypotheses:
        results.append(general_constants(gb))
        if hints.minimal_ricci:
            results.append(_minimal_ricci(gb))
        return results

    results.append(general_constants(gb))
    tg = _totally_geodesic(gb)
    if tg is not None:
        results.append(tg)
    results.extend(_flat(gb))
    horo = _horoconvex(gb, claimed=False)
    if horo is not None:
        results.append(horo)
    pos = _positive_convex(gb, claimed=False)
    if pos is not None:
        results.append(pos)
    if hints.minimal_ricci:
        results.append(_minimal_ricci(gb))
    if hints.xiong:
        results.append(_xiong(gb))
    if hints.collar_width is not None:
        if hints.collar_width > gb.roll:
            raise RegimeConditionError("collar width exceeds roll")
        results.append(cylindrical_constants(hints.collar_width))
    return results


def _minimal_ricci(gb: GeometryBounds) -> ConstantsResult:
    if gb.kappa_minus > 0.0:
        raise RegimeConditionError(
            "minimal boundary contradicts mean-curvature bound kappa_minus > 0"
        )
    lam = math.sqrt(abs(gb.alpha))
    return ConstantsResult(
        A=None,
        B=0.5 * (1.0 / gb.roll + gb.dim_n * lam),
        regime=Regime.MINIMAL_RICCI,
    )


def best_certificate(results: list[ConstantsResult]) -> tuple[float | None, float]:
    """Componentwise minimum over a list of certificates.

    Any certified pair is valid, so the pointwise minimum of the A's and of
    the B's is again a certificate (each inequality only needs one witness).
    """
    a_values = [r.A for r in results if r.A is not None]
    best_a = min(a_values) if a_values else None
    best_b = min(r.B for r in results)
    return best_a, best_b


def gap_bound(cr: ConstantsResult) -> float:
    """Uniform eigenvalue gap bound max(A, 2B)."""
    return cr.gap


def sigma2_lower_bound(cr: ConstantsResult, cd: CheegerData) -> float:
    """Lower bound (1/2)(-A + sqrt(A^2 + h_Sigma^2)) for the first nonzero
    Steklov eigenvalue, valid when the boundary is connected."""
    if cd.boundary_components != 1:
        raise ValueError("Cheeger route needs a connected boundary")
    if cd.h_sigma < 0.0:
        raise ValueError("h_sigma must be nonnegative")
    A = cr.A
    if A is None:
        raise ValueError("certificate lacks A")
    return 0.5 * (-A + math.hypot(A, cd.h_sigma))


def two_manifold_bound(gb_shared: GeometryBounds) -> float:
    """Uniform bound 2C on |sigma_k(M1) - sigma_k(M2)| for two manifolds
    sharing an isometric boundary collar described by ``gb_shared`` (whose
    roll is the shared collar width)."""
    return 2.0 * general_constants(gb_shared).gap
