"""Comparison functions for parallel hypersurfaces and admissible depths.

Given curvature/convexity bounds (alpha <= K <= beta on the boundary collar,
kappa_minus <= kappa_i <= kappa_plus on the boundary itself) the principal
curvatures of the hypersurface parallel to the boundary at depth delta are
sandwiched between -a(delta) and -b(delta), where a and b solve the scalar
Riccati problem with data (alpha, kappa_minus) and (beta_plus, kappa_plus)
respectively, beta_plus = max(0, beta).  The upper comparison is only valid
up to the admissible depth

    h_tilde = min(m(beta_plus, kappa_plus), roll),

while the lower one holds on the whole collar of width roll.  The mean
curvature admits the same lower comparison mu = a under the weaker Ricci /
mean-curvature hypotheses, which is what the ``weak_hypotheses`` flag keeps
track of.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .riccati import RiccatiSolution, max_existence, solve_closed_form

__all__ = [
    "GeometryBounds",
    "ComparisonTriple",
    "InvalidGeometryBounds",
    "RegimeConditionError",
    "DonnellyLeeRegime",
    "comparison_functions",
    "h_tilde",
    "roll_upper_bound",
    "donnelly_lee_roll",
    "principal_curvature_envelope",
]


class InvalidGeometryBounds(ValueError):
    """Bound data that no manifold of the comparison class can satisfy."""


class RegimeConditionError(ValueError):
    """A claimed regime's numeric precondition fails; message names it."""


@dataclass(frozen=True)
class GeometryBounds:
    """Collar bound data (n, alpha, beta, kappa_-, kappa_+, roll).

    ``dim_n`` is the boundary dimension (the manifold has dimension n+1).
    With ``weak_hypotheses`` set, only the Ricci lower bound n*alpha and the
    mean-curvature lower bound kappa_minus are asserted; beta and kappa_plus
    may then be None and every operation that needs them refuses to run.
    """

    dim_n: int
    alpha: float
    beta: float | None
    kappa_minus: float
    kappa_plus: float | None
    roll: float
    boundary_components: int = 1
    weak_hypotheses: bool = False

    def __post_init__(self):
        if self.dim_n < 1:
            raise InvalidGeometryBounds("dim_n must be a positive integer")
        if self.boundary_components < 1:
            raise InvalidGeometryBounds("boundary_components must be >= 1")
        if not self.roll > 0.0:
            raise InvalidGeometryBounds("roll must be positive")
        if not self.weak_hypotheses:
            if self.beta is None or self.kappa_plus is None:
                raise InvalidGeometryBounds(
                    "beta and kappa_plus are required unless weak_hypotheses is set"
                )
            if self.alpha > self.beta:
                raise InvalidGeometryBounds("alpha <= beta violated")
            if self.kappa_minus > self.kappa_plus:
                raise InvalidGeometryBounds("kappa_minus <= kappa_plus violated")
        # roll(M) <= m(alpha, kappa_minus) is forced by the lower comparison;
        # data violating it describes no manifold at all.
        if self.roll > max_existence(self.alpha, self.kappa_minus):
            raise InvalidGeometryBounds(
                "roll exceeds m(alpha, kappa_minus) = "
                f"{max_existence(self.alpha, self.kappa_minus)}"
            )

    @property
    def beta_plus(self) -> float:
        if self.beta is None:
            raise InvalidGeometryBounds("beta unavailable under weak hypotheses")
        return max(0.0, self.beta)

    @property
    def h_tilde(self) -> float:
        return h_tilde(self)

    def scaled(self, t: float) -> "GeometryBounds":
        """Bounds after scaling all lengths by t > 0."""
        return GeometryBounds(
            dim_n=self.dim_n,
            alpha=self.alpha / t**2,
            beta=None if self.beta is None else self.beta / t**2,
            kappa_minus=self.kappa_minus / t,
            kappa_plus=None if self.kappa_plus is None else self.kappa_plus / t,
            roll=self.roll * t,
            boundary_components=self.boundary_components,
            weak_hypotheses=self.weak_hypotheses,
        )


@dataclass(frozen=True)
class ComparisonTriple:
    """Riccati solutions a, b, mu bounding principal/mean curvatures.

    a and mu share parameters (alpha, kappa_minus); b always uses beta_plus,
    never beta.  Under weak hypotheses only mu exists.
    """

    a: RiccatiSolution | None
    b: RiccatiSolution | None
    mu: RiccatiSolution


def comparison_functions(gb: GeometryBounds) -> ComparisonTriple:
    """Build the comparison triple (a, b, mu) for the given bounds."""
    mu = solve_closed_form(gb.alpha, gb.kappa_minus)
    if gb.weak_hypotheses:
        return ComparisonTriple(a=None, b=None, mu=mu)
    a = solve_closed_form(gb.alpha, gb.kappa_minus)
    b = solve_closed_form(gb.beta_plus, gb.kappa_plus)
    return ComparisonTriple(a=a, b=b, mu=mu)


def h_tilde(gb: GeometryBounds) -> float:
    """Admissible depth min(m(beta_plus, kappa_plus), roll)."""
    if gb.weak_hypotheses:
        raise InvalidGeometryBounds("h_tilde needs beta and kappa_plus")
    return min(max_existence(gb.beta_plus, gb.kappa_plus), gb.roll)


def roll_upper_bound(gb: GeometryBounds) -> float:
    """m(alpha, kappa_minus), an a-priori upper bound for roll(M)."""
    return max_existence(gb.alpha, gb.kappa_minus)


def principal_curvature_envelope(gb: GeometryBounds, delta: float) -> tuple[float, float]:
    """Interval [-a(delta), -b(delta)] containing every principal curvature
    of the parallel hypersurface at depth delta, for 0 < delta < h_tilde."""
    ht = h_tilde(gb)
    if not 0.0 < delta < ht:
        raise ValueError(f"delta must lie in (0, h_tilde) = (0, {ht})")
    triple = comparison_functions(gb)
    return (-triple.a(delta), -triple.b(delta))


class DonnellyLeeRegime(Enum):
    """Curvature window of the convex-domain rolling-radius table."""

    MIXED = "mixed"  # |K| < lam^2
    NONPOSITIVE = "nonpositive"  # -lam^2 <= K <= 0
    POSITIVE = "positive"  # 0 < K < lam^2


def _acot(x: float) -> float:
    # branch fixed by arctan(x) + arccot(x) = pi/2
    return math.pi / 2.0 - math.atan(x)


def donnelly_lee_roll(
    regime: DonnellyLeeRegime,
    lam: float,
    kappa_minus: float,
    kappa_plus: float,
) -> float:
    """Rolling-radius estimate for convex boundaries in a complete manifold.

    The six table rows, selected by the curvature window and the position of
    kappa_minus relative to lam:

        |K| < lam^2,        0 < kappa_- < lam : min(atanh(k-/lam), acot(k+/lam))/lam
        |K| < lam^2,        kappa_- >= lam    : acot(k+/lam)/lam
        -lam^2 <= K <= 0,   0 < kappa_- < lam : min(1/k+, acot(k+/lam)/lam)
        -lam^2 <= K <= 0,   kappa_- >= lam    : 1/k+
        0 < K < lam^2,      k+ > k- >= 0      : acot(k+/lam)/lam
        0 < K < lam^2,      k- = k+ = 0       : pi/(2 lam)

    Raises RegimeConditionError naming the violated row predicate.
    """
    if not lam > 0.0:
        raise RegimeConditionError("lam > 0 required")
    if kappa_minus > kappa_plus:
        raise RegimeConditionError("kappa_minus <= kappa_plus required")
    if regime is DonnellyLeeRegime.POSITIVE:
        if kappa_minus == 0.0 and kappa_plus == 0.0:
            return math.pi / (2.0 * lam)
        if not (kappa_plus > kappa_minus >= 0.0):
            raise RegimeConditionError(
                "positive-curvature rows need kappa_plus > kappa_minus >= 0"
            )
        return _acot(kappa_plus / lam) / lam
    if not kappa_minus > 0.0:
        raise RegimeConditionError("convexity kappa_minus > 0 required")
    if regime is DonnellyLeeRegime.MIXED:
        if kappa_minus >= lam:
            return _acot(kappa_plus / lam) / lam
        return min(math.atanh(kappa_minus / lam), _acot(kappa_plus / lam)) / lam
    if regime is DonnellyLeeRegime.NONPOSITIVE:
        if kappa_minus >= lam:
            return 1.0 / kappa_plus
        return min(1.0 / kappa_plus, _acot(kappa_plus / lam) / lam)
    raise RegimeConditionError(f"unknown regime {regime!r}")
