"""Univariate numeric helpers: grid-plus-golden-section argmax and bracketed roots."""

from __future__ import annotations

import math
from collections.abc import Callable

import numpy as np
from scipy import optimize

INV_PHI = (math.sqrt(5) - 1) / 2


def golden_section_maximize(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-9,
) -> tuple[float, float]:
    """Derivative-free maximization of a unimodal f on [a, b].

    Returns:
        Tuple of (x, f(x)) at the midpoint of the final bracket.
    """
    c = b - (b - a) * INV_PHI
    d = a + (b - a) * INV_PHI
    fc = f(c)
    fd = f(d)

    while abs(b - a) > tol:
        if fc < fd:
            a, c, fc = c, d, fd
            d = a + (b - a) * INV_PHI
            fd = f(d)
        else:
            b, d, fd = d, c, fc
            c = b - (b - a) * INV_PHI
            fc = f(c)

    x = (a + b) / 2
    return x, f(x)


def grid_argmax(
    f: Callable[[float], float],
    lower: float,
    upper: float,
    grid_points: int = 481,
    tol: float = 1e-9,
) -> float:
    """Global argmax of f on [lower, upper]: coarse grid, then golden-section polish.

    Ties resolve to the leftmost maximizer: the polished point replaces the
    grid point only when it is strictly better.
    """
    grid = np.linspace(lower, upper, grid_points)
    values = [f(float(x)) for x in grid]
    # first occurrence wins ties
    idx = int(np.argmax(values))
    best_x = float(grid[idx])
    best_val = values[idx]

    left = float(grid[max(idx - 1, 0)])
    right = float(grid[min(idx + 1, grid_points - 1)])
    if right > left:
        x, val = golden_section_maximize(f, left, right, tol)
        if val > best_val:
            best_x, best_val = x, val
    return best_x


def bisect_root(
    f: Callable[[float], float],
    lower: float,
    upper: float,
    xtol: float = 1e-12,
) -> float:
    """Root of f on a sign-changing bracket [lower, upper]."""
    return float(optimize.bisect(f, lower, upper, xtol=xtol, maxiter=500))
