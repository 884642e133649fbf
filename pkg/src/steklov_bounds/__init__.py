"""Steklov vs boundary-Laplacian comparison toolkit.

Certified constants (A, B) with lambda_k <= sigma_k^2 + A sigma_k and
sigma_k <= B + sqrt(B^2 + lambda_k) from collar curvature data, the scalar
Riccati comparison calculus behind them, exact model-geometry spectra, and
a verification harness for every checkable inequality.
"""

from .comparison import (
    ComparisonTriple,
    DonnellyLeeRegime,
    GeometryBounds,
    InvalidGeometryBounds,
    RegimeConditionError,
    comparison_functions,
    donnelly_lee_roll,
    h_tilde,
    principal_curvature_envelope,
    roll_upper_bound,
)
from .constants import (
    BarConstants,
    CheegerData,
    ConstantsResult,
    Regime,
    RegimeHints,
    abar_bbar,
    best_certificate,
    cylindrical_constants,
    gap_bound,
    general_constants,
    regime_constants,
    sigma2_lower_bound,
    two_manifold_bound,
)
from .profiles import Profile, ProfileSyntaxError, parse_profile
from .riccati import (
    DomainError,
    RiccatiCase,
    RiccatiSolution,
    Trajectory,
    evaluate,
    f_value,
    integrate_numeric,
    max_existence,
    solve_closed_form,
)
from .spectra import (
    Annulus,
    Ball,
    Circle,
    Cylinder,
    FlatTorus,
    ModeSolveError,
    ModelGeometry,
    SpectrumResult,
    SurfaceOfRevolution,
    boundary_components,
    boundary_laplace_spectrum,
    geometry_bounds_of,
    pohozaev_residual,
    spectrum,
    steklov_spectrum,
)
from .verify import (
    CollarMismatchError,
    SandwichReport,
    TwoManifoldReport,
    VerificationReport,
    verify_cylinder_sandwich,
    verify_inequalities,
    verify_two_manifolds,
)

__version__ = "0.1.0"
