"""Finite-difference oracles and small grid utilities.

The 5-point central stencils are O(h^4); one Richardson level against the
half step pushes them to O(h^6).  These are deliberately kept independent of
the analytic derivative formulas elsewhere in the library - they are the
second route of every dual-route check.
"""

import numpy as np


def fd_derivative(f, x, order: int = 1, h: float = 1e-3, richardson: bool = True):
    """Derivative of callable f at x (scalar or ndarray) by central differences.

    f must accept shifted copies of x and return complex values of the same
    shape.  order is 1 or 2.
    """
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")

    def stencil(hh):
        fm2, fm1 = f(x - 2 * hh), f(x - hh)
        fp1, fp2 = f(x + hh), f(x + 2 * hh)
        if order == 1:
            return (fm2 - 8 * fm1 + 8 * fp1 - fp2) / (12 * hh)
        f0 = f(x)
        return (-fm2 + 16 * fm1 - 30 * f0 + 16 * fp1 - fp2) / (12 * hh * hh)

    coarse = stencil(h)
    if not richardson:
        return coarse
    fine = stencil(h / 2)
    return (16.0 * fine - coarse) / 15.0


def fd_second_on_grid(values, dx: float):
    """Second derivative of uniformly sampled values; interior points only.

    Returns (d2, sl) where sl is the slice of the original grid the stencil
    covers (two points trimmed per edge).
    """
    v = np.asarray(values)
    if v.shape[-1] < 5:
        raise ValueError("need at least 5 samples")
    d2 = (-v[..., :-4] + 16 * v[..., 1:-3] - 30 * v[..., 2:-2] + 16 * v[..., 3:-1] - v[..., 4:]) / (
        12 * dx * dx
    )
    return d2, slice(2, -2)


def linear_grid(x_min: float, x_max: float, points: int):
    if points < 2:
        raise ValueError("need at least 2 grid points")
    return np.linspace(float(x_min), float(x_max), int(points))


def trapezoid(values, grid):
    return np.trapezoid(values, grid)


def ratio_spread(num, den) -> float:
    """max_rel_spread of num/den, ignoring points where den vanishes."""
    with np.errstate(divide="ignore", invalid="ignore"):
        return max_rel_spread(np.asarray(num) / np.asarray(den))


def max_rel_spread(ratio) -> float:
    """Relative spread of a set of pointwise ratios around their mean.

    Used for every 'proportional up to a constant' contract: the spread is
    max |r - mean| / |mean| over finite entries.
    """
    r = np.asarray(ratio)
    r = r[np.isfinite(r)]
    if r.size == 0:
        return np.inf
    mean = r.mean()
    if mean == 0:
        return float(np.max(np.abs(r)))
    return float(np.max(np.abs(r - mean)) / np.abs(mean))
