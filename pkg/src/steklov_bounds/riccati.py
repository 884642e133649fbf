"""Scalar Riccati comparison calculus.

Everything in this module revolves around the initial value problem

    y' + y^2 + K = 0,      y(0) = -kappa,

whose solutions describe the principal curvature of a family of parallel
umbilical hypersurfaces in the space form of constant curvature K.  With
lam = sqrt(|K|) the closed forms are:

    K = 0   kappa > 0     y(s) = 1/(s - 1/kappa)                 m = 1/kappa
            kappa < 0     y(s) = 1/(s - 1/kappa)                 m = inf
            kappa = 0     y(s) = 0                               m = inf
    K > 0   any kappa     y(s) = -lam*tan(lam*s + atan(kappa/lam))
                                          m = (pi/2 - atan(kappa/lam))/lam
    K < 0   kappa = 0     y(s) = lam*tanh(lam*s)                 m = inf
            |kappa| < lam y(s) = lam*tanh(lam*s - atanh(kappa/lam))   m = inf
            kappa < -lam  y(s) = lam*coth(lam*s - acoth(kappa/lam))   m = inf
            kappa > lam   y(s) = lam*coth(lam*s - acoth(kappa/lam))
                                          m = acoth(kappa/lam)/lam
            |kappa| = lam y(s) = -kappa (constant)               m = inf

m = m(K, kappa) is the maximal existence time: y is finite on [0, m) and,
when m is finite, y(s) -> -inf as s -> m.  Infinite existence time is
represented by ``math.inf``; comparisons against it are exact.

A fixed-step classical Runge-Kutta integrator is provided as an independent
numerical oracle for the closed forms, including blow-up detection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "RiccatiCase",
    "RiccatiSolution",
    "Trajectory",
    "DomainError",
    "solve_closed_form",
    "evaluate",
    "max_existence",
    "f_value",
    "integrate_numeric",
    "rk4_trajectories",
    "BLOWUP_THRESHOLD",
]

#: |y| beyond this value counts as blown up.  The closed forms diverge like
#: 1/(m - s), so the threshold locates m to roughly 1e-8.
BLOWUP_THRESHOLD = 1e8


class DomainError(ValueError):
    """Evaluation point outside [0, m(K, kappa))."""


class RiccatiCase(Enum):
    """The nine umbilical-hypersurface families, keyed by (sign K, kappa vs lam)."""

    FLAT_CONTRACTING = "FlatContracting"
    FLAT_EXPANDING = "FlatExpanding"
    FLAT_HYPERPLANE = "FlatHyperplane"
    SPHERE_GEODESIC_SPHERE = "SphereGeodesicSphere"
    HYP_SUBSPACE = "HypSubspace"
    HYP_HYPERCYCLE = "HypHypercycle"
    HYP_EXPANDING = "HypExpanding"
    HYP_CONTRACTING = "HypContracting"
    HYP_HOROSPHERE = "HypHorosphere"


def _acoth(x: float) -> float:
    # real branch, defined for |x| > 1
    return math.atanh(1.0 / x)


def max_existence(curvature: float, kappa: float) -> float:
    """Maximal existence time m(K, kappa); ``math.inf`` when y never blows up."""
    if curvature == 0.0:
        return 1.0 / kappa if kappa > 0.0 else math.inf
    if curvature > 0.0:
        lam = math.sqrt(curvature)
        return (math.pi / 2.0 - math.atan(kappa / lam)) / lam
    lam = math.sqrt(-curvature)
    if kappa > lam:
        return _acoth(kappa / lam) / lam
    return math.inf


def _classify(curvature: float, kappa: float) -> RiccatiCase:
    if curvature == 0.0:
        if kappa > 0.0:
            return RiccatiCase.FLAT_CONTRACTING
        if kappa < 0.0:
            return RiccatiCase.FLAT_EXPANDING
        return RiccatiCase.FLAT_HYPERPLANE
    if curvature > 0.0:
        return RiccatiCase.SPHERE_GEODESIC_SPHERE
    lam = math.sqrt(-curvature)
    if abs(kappa) == lam:
        # constant solutions; ties go here by convention
        return RiccatiCase.HYP_HOROSPHERE
    if kappa == 0.0:
        return RiccatiCase.HYP_SUBSPACE
    if abs(kappa) < lam:
        return RiccatiCase.HYP_HYPERCYCLE
    if kappa > lam:
        return RiccatiCase.HYP_CONTRACTING
    return RiccatiCase.HYP_EXPANDING


@dataclass(frozen=True)
class RiccatiSolution:
    """Closed-form solution descriptor of y' + y^2 + K = 0, y(0) = -kappa."""

    curvature: float
    kappa: float
    case_tag: RiccatiCase
    max_time: float

    def __call__(self, s):
        return evaluate(self, s)


def solve_closed_form(curvature: float, kappa: float) -> RiccatiSolution:
    """Classify (K, kappa) and return the closed-form solution descriptor."""
    return RiccatiSolution(
        curvature=float(curvature),
        kappa=float(kappa),
        case_tag=_classify(float(curvature), float(kappa)),
        max_time=max_existence(float(curvature), float(kappa)),
    )


def evaluate(sol: RiccatiSolution, s):
    """Evaluate y(s) from the closed form of the active case.

    Accepts a scalar or an ndarray of abscissae; every entry must lie in
    [0, m(K, kappa)).
    """
    arr = np.asarray(s, dtype=float)
    if np.any(arr < 0.0) or np.any(arr >= sol.max_time):
        raise DomainError(
            f"abscissa outside [0, {sol.max_time}) for case {sol.case_tag.value}"
        )
    K, kappa = sol.curvature, sol.kappa
    tag = sol.case_tag
    if tag is RiccatiCase.FLAT_HYPERPLANE:
        out = np.zeros_like(arr)
    elif tag in (RiccatiCase.FLAT_CONTRACTING, RiccatiCase.FLAT_EXPANDING):
        out = 1.0 / (arr - 1.0 / kappa)
    elif tag is RiccatiCase.SPHERE_GEODESIC_SPHERE:
        lam = math.sqrt(K)
        out = -lam * np.tan(lam * arr + math.atan(kappa / lam))
    elif tag is RiccatiCase.HYP_SUBSPACE:
        lam = math.sqrt(-K)
        out = lam * np.tanh(lam * arr)
    elif tag is RiccatiCase.HYP_HYPERCYCLE:
        lam = math.sqrt(-K)
        out = lam * np.tanh(lam * arr - math.atanh(kappa / lam))
    elif tag in (RiccatiCase.HYP_EXPANDING, RiccatiCase.HYP_CONTRACTING):
        lam = math.sqrt(-K)
        out = lam / np.tanh(lam * arr - _acoth(kappa / lam))
    else:  # HYP_HOROSPHERE: the constant solving y(0) = -kappa, y^2 = -K
        out = np.full_like(arr, -kappa)
    if np.isscalar(s) or arr.ndim == 0:
        return float(out)
    return out


def f_value(h: float, curvature: float, kappa: float, x) -> float:
    """The comparison quantity f(x) = -(h - x) * y(x).

    Requires 0 <= x < h <= m(K, kappa).  For K >= 0 the value is at most 1
    and at least min(0, h*kappa); for K < 0 with kappa >= sqrt(|K|) it lies
    in [0, h*kappa].
    """
    sol = solve_closed_form(curvature, kappa)
    if not 0.0 < h <= sol.max_time:
        raise DomainError(f"h must lie in (0, m] = (0, {sol.max_time}]")
    arr = np.asarray(x, dtype=float)
    if np.any(arr >= h):
        raise DomainError("x must satisfy 0 <= x < h")
    y = evaluate(sol, x)
    return -(h - np.asarray(x, dtype=float)) * y if isinstance(y, np.ndarray) else -(h - x) * y


@dataclass(frozen=True)
class Trajectory:
    """Fixed-step RK4 samples of y' = -y^2 - K, truncated at blow-up."""

    s: np.ndarray
    y: np.ndarray
    blew_up: bool
    blowup_abscissa: float | None


def integrate_numeric(
    curvature: float,
    kappa: float,
    s_end: float,
    step: float,
    blowup_threshold: float = BLOWUP_THRESHOLD,
) -> Trajectory:
    """Classical 4th-order Runge-Kutta oracle for the closed forms.

    Marches y' = -y^2 - K from y(0) = -kappa with the given fixed step until
    s_end, aborting with a blow-up signal once |y| exceeds the threshold (or
    stops being finite).  The blow-up abscissa is the first offending sample.
    """
    if step <= 0.0:
        raise ValueError("step must be positive")
    if s_end <= 0.0:
        raise ValueError("s_end must be positive")
    K = float(curvature)
    n = int(math.ceil(s_end / step))
    ss = [0.0]
    ys = [-float(kappa)]
    y = -float(kappa)
    s = 0.0
    for i in range(n):
        h = min(step, s_end - s)
        k1 = -y * y - K
        y2 = y + 0.5 * h * k1
        k2 = -y2 * y2 - K
        y3 = y + 0.5 * h * k2
        k3 = -y3 * y3 - K
        y4 = y + h * k3
        k4 = -y4 * y4 - K
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        s = s + h
        if not math.isfinite(y) or abs(y) > blowup_threshold:
            return Trajectory(np.array(ss), np.array(ys), True, s)
        ss.append(s)
        ys.append(y)
    return Trajectory(np.array(ss), np.array(ys), False, None)


def rk4_trajectories(
    curvature: np.ndarray,
    kappa: np.ndarray,
    s_end: np.ndarray,
    n_steps: int,
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized RK4 sweep over a batch of (K, kappa) pairs.

    Each column i integrates its own interval [0, s_end[i]] in exactly
    ``n_steps`` steps of size s_end[i]/n_steps.  No blow-up handling beyond
    letting values overflow to non-finite; callers slice what they need.
    Returns (s, y), both of shape (n_steps + 1, len(K)).
    """
    K = np.asarray(curvature, dtype=float).ravel()
    y0 = -np.asarray(kappa, dtype=float).ravel()
    h = np.asarray(s_end, dtype=float).ravel() / n_steps
    y = y0.copy()
    out = np.empty((n_steps + 1, K.size))
    out[0] = y
    with np.errstate(over="ignore", invalid="ignore"):
        for i in range(n_steps):
            k1 = -y * y - K
            y2 = y + 0.5 * h * k1
            k2 = -y2 * y2 - K
            y3 = y + 0.5 * h * k2
            k3 = -y3 * y3 - K
            y4 = y + h * k3
            k4 = -y4 * y4 - K
            y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            out[i + 1] = y
    s = np.arange(n_steps + 1)[:, None] * h[None, :]
    return s, out
