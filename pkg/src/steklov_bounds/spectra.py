"""Exact and semi-analytic spectra of model geometries.

For each model the Steklov spectrum (eigenvalues of the Dirichlet-to-Neumann
map) and the Laplace spectrum of the boundary are produced as ascending
lists with multiplicities expanded, exact up to the stated solver tolerance:

* Ball of radius R in R^(n+1): sigma = l/R and lambda = l(l+n-1)/R^2 with
  spherical-harmonic multiplicities.
* Planar annulus r0 < |x| < R: separation into Fourier modes; each mode is
  a 2x2 generalized symmetric eigenproblem on span{r^m, r^-m} (m >= 1) or
  span{1, log r} (m = 0).
* Product cylinder Sigma x [0, L] over a circle or a flat torus: per
  cross-section eigenvalue nu > 0 the two branches sqrt(nu)tanh(sqrt(nu)L/2)
  and sqrt(nu)coth(sqrt(nu)L/2); the nu = 0 pair is {0, 2/L}.
* Surface of revolution dr^2 + rho(r)^2 dtheta^2 on [0, L]: the mode ODE
  (rho u')' - (m^2/rho) u = 0 is integrated numerically and the 2x2 mode
  Dirichlet-to-Neumann matrix assembled at the two boundary circles.

Modes are enumerated until the smallest value of the first untruncated mode
exceeds the k-th collected value, so the returned prefix is exact.

The module also extracts collar bound data from each model and evaluates
the Pohozaev identity residual on disks and annuli by tensor-product
Gauss-Legendre quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import eigh

from .comparison import GeometryBounds
from .profiles import Profile

__all__ = [
    "Ball",
    "Annulus",
    "Circle",
    "FlatTorus",
    "Cylinder",
    "SurfaceOfRevolution",
    "ModelGeometry",
    "SpectrumResult",
    "ModeSolveError",
    "steklov_spectrum",
    "boundary_laplace_spectrum",
    "spectrum",
    "boundary_components",
    "geometry_bounds_of",
    "describe",
    "pohozaev_residual",
]

#: eigenvalues this close to zero are snapped to exact zero
_ZERO_SNAP = 1e-9

#: relative tolerance of the mode ODE integrator
_ODE_RTOL = 1e-11


class ModeSolveError(RuntimeError):
    """The mode ODE solve failed to converge; carries the mode index."""

    def __init__(self, mode: int, message: str):
        super().__init__(f"mode {mode}: {message}")
        self.mode = mode


@dataclass(frozen=True)
class Ball:
    """Euclidean ball of radius R in R^(n+1); the boundary is S^n(R)."""

    n: int
    radius: float

    def __post_init__(self):
        if self.n < 1 or self.radius <= 0.0:
            raise ValueError("need n >= 1 and radius > 0")


@dataclass(frozen=True)
class Annulus:
    """Planar annulus r_inner < |x| < r_outer."""

    r_inner: float
    r_outer: float

    def __post_init__(self):
        if not 0.0 < self.r_inner < self.r_outer:
            raise ValueError("need 0 < r_inner < r_outer")


@dataclass(frozen=True)
class Circle:
    radius: float

    def __post_init__(self):
        if self.radius <= 0.0:
            raise ValueError("radius must be positive")


@dataclass(frozen=True)
class FlatTorus:
    lengths: tuple[float, ...]

    def __post_init__(self):
        if not self.lengths or any(l <= 0.0 for l in self.lengths):
            raise ValueError("lattice lengths must be positive")


@dataclass(frozen=True)
class Cylinder:
    """Product Sigma x [0, length] over a circle or flat torus."""

    length: float
    cross_section: Union[Circle, FlatTorus]

    def __post_init__(self):
        if self.length <= 0.0:
            raise ValueError("length must be positive")


@dataclass(frozen=True)
class SurfaceOfRevolution:
    """Warped band dr^2 + profile(r)^2 dtheta^2 on [0, length]."""

    profile: Profile
    length: float

    def __post_init__(self):
        if self.length <= 0.0:
            raise ValueError("length must be positive")


ModelGeometry = Union[Ball, Annulus, Cylinder, SurfaceOfRevolution]


@dataclass(frozen=True)
class SpectrumResult:
    """Ascending Steklov and boundary-Laplace eigenvalues, multiplicities
    expanded; the first ``boundary_components`` Laplace entries are zero."""

    sigmas: np.ndarray
    lambdas: np.ndarray
    boundary_components: int


def boundary_components(g: ModelGeometry) -> int:
    return 1 if isinstance(g, Ball) else 2


def describe(g: ModelGeometry) -> str:
    if isinstance(g, Ball):
        return f"ball(n={g.n}, R={g.radius:g})"
    if isinstance(g, Annulus):
        return f"annulus(r0={g.r_inner:g}, R={g.r_outer:g})"
    if isinstance(g, Cylinder):
        if isinstance(g.cross_section, Circle):
            return f"cylinder(L={g.length:g}, circle rho={g.cross_section.radius:g})"
        return f"cylinder(L={g.length:g}, torus {g.cross_section.lengths})"
    expr = g.profile.expression or "<callable>"
    return f"revolution(L={g.length:g}, rho={expr})"


def _expand_sorted(pairs: list[tuple[float, int]], k_max: int) -> np.ndarray:
    values = np.repeat([p[0] for p in pairs], [p[1] for p in pairs])
    values.sort()
    if values.size < k_max:
        raise ValueError("insufficient spectrum length collected")
    return values[:k_max]


def _sphere_multiplicity(n: int, l: int) -> int:
    # dimension of degree-l spherical harmonics on S^n
    if l == 0:
        return 1
    return math.comb(n + l, n) - math.comb(n + l - 2, n)


# ---------------------------------------------------------------------------
# cross-section (closed-manifold) spectra


def _circle_eigs(radius: float, count: int) -> list[tuple[float, int]]:
    out = [(0.0, 1)]
    m = 1
    total = 1
    while total < count:
        out.append(((m / radius) ** 2, 2))
        total += 2
        m += 1
    return out


def _torus_eigs(lengths: tuple[float, ...], count: int) -> list[tuple[float, int]]:
    # dual-lattice norms squared; grow the cutoff until enough are certain
    cutoff = max((2.0 * math.pi / l) ** 2 for l in lengths)
    while True:
        counts: dict[float, int] = {}
        ranges = [range(-int(math.sqrt(cutoff) * l / (2 * math.pi)) - 1,
                        int(math.sqrt(cutoff) * l / (2 * math.pi)) + 2)
                  for l in lengths]
        idx = [0] * len(lengths)
        grids = np.meshgrid(*[np.array(list(r)) for r in ranges], indexing="ij")
        nu = sum(((2.0 * math.pi / l) * k) ** 2 for l, k in zip(lengths, grids))
        nu = nu.ravel()
        nu = nu[nu <= cutoff]
        vals, cnts = np.unique(np.round(nu, 12), return_counts=True)
        if cnts.sum() >= count:
            return [(float(v), int(c)) for v, c in zip(vals, cnts)]
        cutoff *= 2.0
        del idx


def _cross_section_eigs(cs: Union[Circle, FlatTorus], count: int) -> list[tuple[float, int]]:
    if isinstance(cs, Circle):
        return _circle_eigs(cs.radius, count)
    return _torus_eigs(cs.lengths, count)


# ---------------------------------------------------------------------------
# Steklov spectra


def _ball_sigma_pairs(g: Ball, k_max: int) -> list[tuple[float, int]]:
    pairs = []
    total = 0
    l = 0
    while total < k_max:
        mult = _sphere_multiplicity(g.n, l)
        pairs.append((l / g.radius, mult))
        total += mult
        l += 1
    return pairs


def _annulus_mode_sigmas(g: Annulus, m: int) -> np.ndarray:
    """The two Steklov eigenvalues of Fourier mode m on the annulus."""
    r0, R = g.r_inner, g.r_outer
    if m == 0:
        # basis {1, log r}
        K = np.array([[0.0, 0.0], [0.0, math.log(R / r0)]])
        M = np.array(
            [
                [R + r0, R * math.log(R) + r0 * math.log(r0)],
                [R * math.log(R) + r0 * math.log(r0),
                 R * math.log(R) ** 2 + r0 * math.log(r0) ** 2],
            ]
        )
    else:
        # scaled basis {(r/R)^m, (r0/r)^m}; t keeps all entries O(1)
        t = (r0 / R) ** m
        K = m * (1.0 - t * t) * np.eye(2)
        M = np.array([[R + r0 * t * t, (R + r0) * t], [(R + r0) * t, R * t * t + r0]])
    vals = eigh(K, M, eigvals_only=True)
    vals[np.abs(vals) < _ZERO_SNAP] = 0.0
    return np.sort(vals)


def _annulus_sigma_pairs(g: Annulus, k_max: int) -> list[tuple[float, int]]:
    pairs: list[tuple[float, int]] = [(float(v), 1) for v in _annulus_mode_sigmas(g, 0)]
    total = 2
    m = 1
    while True:
        vals = _annulus_mode_sigmas(g, m)
        if total >= k_max:
            collected = _expand_sorted(pairs, k_max)
            if vals[0] > collected[-1]:
                return pairs
        pairs.extend((float(v), 2) for v in vals)
        total += 4
        m += 1


def _cylinder_sigma_pairs(g: Cylinder, k_max: int) -> list[tuple[float, int]]:
    L = g.length
    pairs: list[tuple[float, int]] = [(0.0, 1), (2.0 / L, 1)]
    total = 2
    needed = max(k_max, 4)
    cross = _cross_section_eigs(g.cross_section, needed)
    i = 1  # skip nu = 0
    while True:
        if i >= len(cross):
            cross = _cross_section_eigs(g.cross_section, 2 * len(cross) + 8)
        nu, mult = cross[i]
        root = math.sqrt(nu)
        low = root * math.tanh(root * L / 2.0)
        if total >= k_max:
            collected = _expand_sorted(pairs, k_max)
            if low > collected[-1]:
                return pairs
        pairs.append((low, mult))
        pairs.append((root / math.tanh(root * L / 2.0), mult))
        total += 2 * mult
        i += 1


def _revolution_mode_sigmas(g: SurfaceOfRevolution, m: int) -> np.ndarray:
    """Eigenvalues of the 2x2 mode Dirichlet-to-Neumann matrix.

    Two fundamental solutions of (rho u')' - (m^2/rho) u = 0 are integrated
    from r = 0 with unit value/derivative normalization; the identity
    rho (a b' - a' b) = rho(0) then yields the off-diagonal entry without
    cancellation, making the assembled matrix exactly symmetric.
    """
    rho, L = g.profile, g.length

    def rhs(r, y):
        p = rho(r)
        dp = rho.deriv1(r)
        coef = (m * m) / (p * p)
        return [y[1], coef * y[0] - (dp / p) * y[1],
                y[3], coef * y[2] - (dp / p) * y[3]]

    sol = solve_ivp(
        rhs, (0.0, L), [1.0, 0.0, 0.0, 1.0],
        method="DOP853", rtol=_ODE_RTOL, atol=1e-13, dense_output=False,
    )
    if not sol.success:
        raise ModeSolveError(m, sol.message)
    aL, apL, bL, bpL = sol.y[:, -1]
    if not all(map(math.isfinite, (aL, apL, bL, bpL))):
        raise ModeSolveError(m, "mode solution overflowed")
    rho0, rhoL = float(rho(0.0)), float(rho(L))
    wronskian = rhoL * (aL * bpL - apL * bL)
    if abs(wronskian - rho0) > 1e-6 * max(1.0, rho0):
        raise ModeSolveError(m, f"Wronskian drift {wronskian - rho0:.3e}")
    K = np.array(
        [
            [rho0 * aL / bL, -rho0 / bL],
            [-rho0 / bL, rhoL * bpL / bL],
        ]
    )
    M = np.diag([rho0, rhoL])
    vals = eigh(K, M, eigvals_only=True)
    vals[np.abs(vals) < _ZERO_SNAP] = 0.0
    return np.sort(vals)


def _revolution_sigma_pairs(g: SurfaceOfRevolution, k_max: int) -> list[tuple[float, int]]:
    pairs: list[tuple[float, int]] = [(float(v), 1) for v in _revolution_mode_sigmas(g, 0)]
    total = 2
    m = 1
    while True:
        vals = _revolution_mode_sigmas(g, m)
        if total >= k_max:
            collected = _expand_sorted(pairs, k_max)
            if vals[0] > collected[-1]:
                return pairs
        pairs.extend((float(v), 2) for v in vals)
        total += 4
        m += 1


def steklov_spectrum(g: ModelGeometry, k_max: int) -> np.ndarray:
    """First k_max Steklov eigenvalues of the model, ascending."""
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    if isinstance(g, Ball):
        pairs = _ball_sigma_pairs(g, k_max)
    elif isinstance(g, Annulus):
        pairs = _annulus_sigma_pairs(g, k_max)
    elif isinstance(g, Cylinder):
        pairs = _cylinder_sigma_pairs(g, k_max)
    elif isinstance(g, SurfaceOfRevolution):
        pairs = _revolution_sigma_pairs(g, k_max)
    else:
        raise TypeError(f"unsupported geometry {type(g).__name__}")
    return _expand_sorted(pairs, k_max)


# ---------------------------------------------------------------------------
# boundary Laplace spectra


def boundary_laplace_spectrum(g: ModelGeometry, k_max: int) -> np.ndarray:
    """First k_max Laplace eigenvalues of the boundary, ascending."""
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    if isinstance(g, Ball):
        pairs = []
        total = 0
        l = 0
        while total < k_max:
            mult = _sphere_multiplicity(g.n, l)
            pairs.append((l * (l + g.n - 1) / g.radius**2, mult))
            total += mult
            l += 1
        return _expand_sorted(pairs, k_max)
    if isinstance(g, Annulus):
        radii = [g.r_inner, g.r_outer]
    elif isinstance(g, Cylinder):
        cross = _cross_section_eigs(g.cross_section, k_max)
        pairs = [(nu, 2 * mult) for nu, mult in cross]
        return _expand_sorted(pairs, k_max)
    elif isinstance(g, SurfaceOfRevolution):
        radii = [float(g.profile(0.0)), float(g.profile(g.length))]
    else:
        raise TypeError(f"unsupported geometry {type(g).__name__}")
    pairs = []
    for rho in radii:
        pairs.extend(_circle_eigs(rho, k_max))
    return _expand_sorted(pairs, k_max)


def spectrum(g: ModelGeometry, k_max: int) -> SpectrumResult:
    return SpectrumResult(
        sigmas=steklov_spectrum(g, k_max),
        lambdas=boundary_laplace_spectrum(g, k_max),
        boundary_components=boundary_components(g),
    )


# ---------------------------------------------------------------------------
# collar bound extraction


def geometry_bounds_of(g: ModelGeometry, samples: int = 2049) -> GeometryBounds:
    """Exact collar bound data (n, alpha, beta, kappa_-, kappa_+, roll, ell).

    Principal curvatures are taken with respect to the outward normal, so
    they are positive on sphere boundaries and negative on the inner circle
    of an annulus.  Rolling radii are exact: R for the ball, half the gap
    for the annulus, half the length for cylinders and revolution surfaces
    (whose distance-to-boundary is min(r, L - r) because ds^2 >= dr^2).
    For revolution surfaces the curvature range of K = -rho''/rho is sampled
    on a uniform grid.
    """
    if isinstance(g, Ball):
        k = 1.0 / g.radius
        return GeometryBounds(g.n, 0.0, 0.0, k, k, g.radius, boundary_components=1)
    if isinstance(g, Annulus):
        return GeometryBounds(
            1, 0.0, 0.0, -1.0 / g.r_inner, 1.0 / g.r_outer,
            (g.r_outer - g.r_inner) / 2.0, boundary_components=2,
        )
    if isinstance(g, Cylinder):
        n = 1 if isinstance(g.cross_section, Circle) else len(g.cross_section.lengths)
        return GeometryBounds(n, 0.0, 0.0, 0.0, 0.0, g.length / 2.0, boundary_components=2)
    if isinstance(g, SurfaceOfRevolution):
        rho, L = g.profile, g.length
        rr = np.linspace(0.0, L, samples)
        curv = -np.asarray(rho.deriv2(rr), dtype=float) / np.asarray(rho(rr), dtype=float)
        kappas = (-float(rho.deriv1(0.0)) / float(rho(0.0)),
                  float(rho.deriv1(L)) / float(rho(L)))
        return GeometryBounds(
            1, float(curv.min()), float(curv.max()),
            min(kappas), max(kappas), L / 2.0, boundary_components=2,
        )
    raise TypeError(f"unsupported geometry {type(g).__name__}")


# ---------------------------------------------------------------------------
# Pohozaev identity residual


def _gauss_nodes(order: int, lo: float, hi: float) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(order)
    half = 0.5 * (hi - lo)
    return lo + half * (x + 1.0), half * w


def pohozaev_residual(g: ModelGeometry, mode: int, h: float, order: int = 64) -> float:
    """|LHS - RHS| of the distance-function Pohozaev identity on a collar.

    For a harmonic Fourier mode u the identity equates the boundary defect
    integral of |grad_Sigma u|^2 - (du/dn)^2 with (1/h) times the collar
    integral of Delta(eta)|grad u|^2 - 2 Hess(eta)(grad u, grad u), where
    eta = (1/2)(h - dist(., boundary))^2.  Both sides are evaluated with
    ``order``-point Gauss-Legendre rules (tensor-product over the collar),
    so the returned residual is pure quadrature error.

    Supported geometries: the disk (Ball with n = 1, mode u = (r/R)^m cos m
    theta) and the annulus (u = (r/R)^m cos m theta + (r0/r)^m cos m theta,
    with {1, log r} at m = 0).  The mode coefficients are normalized so that
    u stays O(1); the identity is homogeneous in u, so this only rescales
    the residual.
    """
    if mode < 0:
        raise ValueError("mode must be >= 0")
    if isinstance(g, Ball) and g.n == 1:
        R = g.radius
        roll = R
        a_cf, b_cf = R ** (-mode), 0.0
        circles = [(R, +1)]
        strips = [(R - h, R, +1)]
    elif isinstance(g, Annulus):
        r0, R = g.r_inner, g.r_outer
        roll = (R - r0) / 2.0
        a_cf, b_cf = R ** (-mode), (1.0 if mode == 0 else r0**mode)
        circles = [(r0, -1), (R, +1)]
        strips = [(r0, r0 + h, -1), (R - h, R, +1)]
    else:
        raise TypeError("Pohozaev residual supports the disk and the annulus")
    if not 0.0 < h < roll:
        raise ValueError(f"h must lie in (0, roll) = (0, {roll})")

    m = mode

    def u_r(r):
        if m == 0:
            return b_cf / r
        return m * (a_cf * r ** (m - 1) - b_cf * r ** (-m - 1))

    def u_theta(r, theta):
        if m == 0:
            return np.zeros_like(theta)
        return -m * (a_cf * r**m + b_cf * r ** (-m)) * np.sin(m * theta)

    theta, w_theta = _gauss_nodes(order, 0.0, 2.0 * math.pi)

    lhs = 0.0
    for rho_b, _sign in circles:
        tangential = (u_theta(rho_b, theta) / rho_b) ** 2
        normal = np.full_like(theta, u_r(rho_b) ** 2) * np.cos(m * theta) ** 2 \
            if m > 0 else np.full_like(theta, u_r(rho_b) ** 2)
        lhs += float(np.sum(w_theta * (tangential - normal)) * rho_b)

    rhs = 0.0
    for lo, hi, orient in strips:
        r, w_r = _gauss_nodes(order, lo, hi)
        ftilde = (r - lo) if orient > 0 else (hi - r)
        eta_prime = orient * ftilde  # radial derivative of eta = ftilde^2/2
        rr = r[:, None]
        ct = np.cos(m * theta)[None, :] if m > 0 else np.ones((1, theta.size))
        ur2 = (u_r(r)[:, None] * ct) ** 2
        ut2 = (u_theta(rr, theta[None, :]) / rr) ** 2
        grad2 = ur2 + ut2
        lap_eta = (1.0 + eta_prime / r)[:, None]
        hess = ur2 + (eta_prime / r)[:, None] * ut2  # Hess(eta)(grad u, grad u)
        integrand = (lap_eta * grad2 - 2.0 * hess) * rr
        rhs += float(w_r @ integrand @ w_theta)
    rhs /= h
    return abs(lhs - rhs)
