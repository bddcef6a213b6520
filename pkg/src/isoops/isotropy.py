"""Rotation-invariance diagnostics for the 3x3 stencil family.

Three quantitative checks live here:

* `anisotropy_index`: the angular standard deviation of the Laplacian
  discretization error on a Gaussian bump, maximized over radii.  A
  perfectly rotation-invariant scheme scores 0; the w=4 member wins.
* `taylor_residual_*`: sup-norm residuals of the w=4 derivative and
  Laplacian stencils after subtracting their leading corrections,
  D_x|4 = d/dx + (h^2/6) L d/dx + O(h^4) and
  L|4  = L    + (h^2/12) L^2   + O(h^4).
* `rotation_residual`: discrete-minus-continuous quasi-Laplacian at the
  origin for analytically rotated inputs; the theta-dependence decays
  one order faster for the (2/3, 1/3) mix than for the five-point
  scheme.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.ndimage import map_coordinates

from .stencils import (
    Boundary,
    GridField,
    StaggeredDiffusivity,
    apply,
    dx_stencil,
    laplacian_stencil,
    quasi_laplacian_apply,
)


def gauss(x, y):
    """The radially symmetric test bump exp(-(x^2+y^2))."""
    return np.exp(-(x**2 + y**2))


def gauss_dx(x, y):
    return -2 * x * gauss(x, y)


def gauss_lap(x, y):
    r2 = x**2 + y**2
    return (4 * r2 - 4) * gauss(x, y)


def gauss_lap_dx(x, y):
    """Laplacian of the x-derivative of the bump: 8x(2-r^2)exp(-r^2)."""
    r2 = x**2 + y**2
    return 8 * x * (2 - r2) * gauss(x, y)


def gauss_lap2(x, y):
    """Bi-Laplacian of the bump: (16r^4 - 64r^2 + 32)exp(-r^2)."""
    r2 = x**2 + y**2
    return (16 * r2**2 - 64 * r2 + 32) * gauss(x, y)


def bump_grid(h: float, half_extent: float = 2.0, boundary: Boundary = Boundary.MIRROR):
    """Gaussian bump sampled on [-half_extent, half_extent]^2.

    Returns (field, X, Y) with X, Y the coordinate arrays.
    """
    n = int(round(2 * half_extent / h)) + 1
    coords = -half_extent + h * np.arange(n)
    X, Y = np.meshgrid(coords, coords)
    return GridField(gauss(X, Y), h, boundary), X, Y


def polar_samples(values: np.ndarray, h: float, half_extent: float, radii, n_angles: int):
    """Bilinear samples of a grid on concentric circles about the origin.

    Returns an array of shape (len(radii), n_angles).
    """
    radii = np.asarray(radii, dtype=float)
    theta = 2 * math.pi * np.arange(n_angles) / n_angles
    x = radii[:, None] * np.cos(theta)[None, :]
    y = radii[:, None] * np.sin(theta)[None, :]
    rows = (y + half_extent) / h
    cols = (x + half_extent) / h
    return map_coordinates(values, [rows.ravel(), cols.ravel()], order=1).reshape(
        len(radii), n_angles
    )


def anisotropy_index(
    w: float,
    h: float = 0.05,
    half_extent: float = 2.0,
    radii=None,
    n_angles: int = 360,
) -> float:
    """Directional nonuniformity of the Laplacian stencil error on the bump.

    Maximum over radii of the angular standard deviation of
    (Delta - L_w)[g] sampled on circles by bilinear interpolation.
    """
    if radii is None:
        radii = np.arange(0.3, 1.5 + 1e-12, 0.05)
    field, X, Y = bump_grid(h, half_extent)
    err = gauss_lap(X, Y) - apply(laplacian_stencil(w, h), field).values
    rings = polar_samples(err, h, half_extent, radii, n_angles)
    return float(rings.std(axis=1).max())


def taylor_residual_dx4(h: float, half_extent: float = 2.0, margin: int = 4) -> float:
    """Sup-norm of D_x|4[g] - g_x - (h^2/6) Lap(g_x) away from the boundary."""
    field, X, Y = bump_grid(h, half_extent)
    d = apply(dx_stencil(4, h), field).values
    resid = d - gauss_dx(X, Y) - h**2 / 6.0 * gauss_lap_dx(X, Y)
    return float(np.abs(resid[margin:-margin, margin:-margin]).max())


def taylor_residual_lap4(h: float, half_extent: float = 2.0, margin: int = 4) -> float:
    """Sup-norm of L|4[g] - Lap g - (h^2/12) Lap^2 g away from the boundary."""
    field, X, Y = bump_grid(h, half_extent)
    lap = apply(laplacian_stencil(4, h), field).values
    resid = lap - gauss_lap(X, Y) - h**2 / 12.0 * gauss_lap2(X, Y)
    return float(np.abs(resid[margin:-margin, margin:-margin]).max())


def richardson_slope(hs, errs) -> float:
    """Least-squares slope of log(err) against log(h)."""
    hs = np.asarray(hs, dtype=float)
    errs = np.asarray(errs, dtype=float)
    return float(np.polyfit(np.log(hs), np.log(errs), 1)[0])


# Smooth, generic diffusivity/field pair for the equivariance probe; both
# are off-center so that no accidental symmetry hides anisotropy.
_A_CENTER = (-0.1, 0.4)
_F_CENTER = (0.3, -0.2)


def _probe_a(x, y):
    return 1.0 + 0.5 * np.exp(-((x - _A_CENTER[0]) ** 2 + (y - _A_CENTER[1]) ** 2))


def _probe_f(x, y):
    return np.exp(-((x - _F_CENTER[0]) ** 2 + (y - _F_CENTER[1]) ** 2))


def _probe_exact_at_origin() -> float:
    """Continuous div(a grad f) at (0,0) for the probe pair."""
    ax, ay = _A_CENTER
    fx, fy = _F_CENTER
    ga = math.exp(-(ax**2 + ay**2))
    gf = math.exp(-(fx**2 + fy**2))
    a0 = 1.0 + 0.5 * ga
    grad_a = 0.5 * np.array([2 * ax, 2 * ay]) * ga  # -2(x-c) at x=0 is +2c
    grad_f = np.array([2 * fx, 2 * fy]) * gf
    lap_f = (4 * (fx**2 + fy**2) - 4) * gf
    return float(a0 * lap_f + grad_a @ grad_f)


def rotation_residual(alpha: float, beta: float, theta: float, h: float, half_cells: int = 3) -> float:
    """Discretization error of the quasi-Laplacian at the origin, rotated inputs.

    The diffusivity and field are rotated analytically by theta and the
    divergence-form stencil mix is evaluated on a small grid centered at
    the origin; the continuous operator value is rotation-invariant at
    the origin, so the return value isolates the scheme's error.
    """
    c, s = math.cos(theta), math.sin(theta)

    def rot_a(x, y):
        return _probe_a(c * x + s * y, -s * x + c * y)

    def rot_f(x, y):
        return _probe_f(c * x + s * y, -s * x + c * y)

    n = 2 * half_cells + 1
    coords = h * (np.arange(n) - half_cells)
    X, Y = np.meshgrid(coords, coords)
    field = GridField(rot_f(X, Y), h)
    diff = StaggeredDiffusivity.from_callable(
        rot_a, n, n, h, origin=(-half_cells * h, -half_cells * h)
    )
    out = quasi_laplacian_apply(alpha, beta, diff, field)
    return float(out.values[half_cells, half_cells] - _probe_exact_at_origin())


def rotation_residual_slope(alpha: float, beta: float, theta: float = math.pi / 6, hs=(0.2, 0.1, 0.05)) -> float:
    """Richardson slope of |E(theta, h) - E(0, h)| for the stencil mix."""
    diffs = [
        abs(rotation_residual(alpha, beta, theta, h) - rotation_residual(alpha, beta, 0.0, h))
        for h in hs
    ]
    return richardson_slope(hs, diffs)
