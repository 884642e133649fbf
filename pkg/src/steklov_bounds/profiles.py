"""Warping profiles for surfaces of revolution.

A profile is a strictly positive function rho on [0, L] together with its
first two derivatives (the metric is dr^2 + rho(r)^2 dtheta^2, so rho''
carries the Gauss curvature and rho' the boundary geodesic curvatures).

Profiles can be built from explicit callables or parsed from a small
whitelisted expression grammar in the variable ``r``:

    +  -  *  /  **  cosh  sinh  exp  numeric constants  parentheses

Anything else (names, other calls, attribute access) is rejected before
evaluation.  Derivatives of parsed profiles are exact, obtained
symbolically.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

__all__ = ["Profile", "ProfileSyntaxError", "parse_profile"]

_ALLOWED_CALLS = ("cosh", "sinh", "exp")


class ProfileSyntaxError(ValueError):
    """Expression uses something outside the whitelisted grammar."""


@dataclass(frozen=True)
class Profile:
    """Positive warping function with exact first and second derivatives."""

    func: Callable
    deriv1: Callable
    deriv2: Callable
    expression: str | None = field(default=None, compare=False)

    def __call__(self, r):
        return self.func(r)

    @staticmethod
    def constant(value: float) -> "Profile":
        return Profile(
            func=lambda r: np.full_like(np.asarray(r, dtype=float), value) if np.ndim(r) else value,
            deriv1=lambda r: np.zeros_like(np.asarray(r, dtype=float)) if np.ndim(r) else 0.0,
            deriv2=lambda r: np.zeros_like(np.asarray(r, dtype=float)) if np.ndim(r) else 0.0,
            expression=repr(float(value)),
        )


def _check_node(node: ast.AST) -> None:
    if isinstance(node, ast.Expression):
        _check_node(node.body)
    elif isinstance(node, ast.BinOp):
        if not isinstance(node.op, (ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow)):
            raise ProfileSyntaxError(f"operator {type(node.op).__name__} not allowed")
        _check_node(node.left)
        _check_node(node.right)
    elif isinstance(node, ast.UnaryOp):
        if not isinstance(node.op, (ast.UAdd, ast.USub)):
            raise ProfileSyntaxError(f"operator {type(node.op).__name__} not allowed")
        _check_node(node.operand)
    elif isinstance(node, ast.Call):
        if not (isinstance(node.func, ast.Name) and node.func.id in _ALLOWED_CALLS):
            raise ProfileSyntaxError("only cosh, sinh and exp calls are allowed")
        if len(node.args) != 1 or node.keywords:
            raise ProfileSyntaxError("calls take exactly one positional argument")
        _check_node(node.args[0])
    elif isinstance(node, ast.Name):
        if node.id != "r":
            raise ProfileSyntaxError(f"unknown name {node.id!r}; the variable is 'r'")
    elif isinstance(node, ast.Constant):
        if not isinstance(node.value, (int, float)):
            raise ProfileSyntaxError("only numeric constants are allowed")
    else:
        raise ProfileSyntaxError(f"syntax element {type(node).__name__} not allowed")


def parse_profile(expression: str) -> Profile:
    """Parse a whitelisted expression in ``r`` into a Profile.

    Raises ProfileSyntaxError for anything outside the grammar.
    """
    try:
        tree = ast.parse(expression, mode="eval")
    except SyntaxError as exc:
        raise ProfileSyntaxError(f"cannot parse {expression!r}: {exc}") from exc
    _check_node(tree)

    import sympy  # deferred: only expression-backed profiles need it

    r = sympy.Symbol("r")
    expr = sympy.sympify(
        expression,
        locals={"r": r, "cosh": sympy.cosh, "sinh": sympy.sinh, "exp": sympy.exp},
    )
    d1 = sympy.diff(expr, r)
    d2 = sympy.diff(d1, r)
    return Profile(
        func=sympy.lambdify(r, expr, modules="numpy"),
        deriv1=sympy.lambdify(r, d1, modules="numpy"),
        deriv2=sympy.lambdify(r, d2, modules="numpy"),
        expression=expression,
    )
