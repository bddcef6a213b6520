"""The parameterized 3x3 stencil family and divergence-form quasi-Laplacian.

A rectangle with edge lengths 2 and w circumscribed in the doubled-angle
picture yields one-parameter families of x-derivative and Laplacian
stencils; w=1 gives Prewitt, w=2 Sobel, w=inf the plain central
difference / five-point Laplacian and w=4 the rotation-optimal member.
The Laplacian family decomposes as alpha*L_plus + beta*L_cross with
alpha = w/(w+2), beta = 2/(w+2).

Grid convention: fields are indexed values[i, j] with x = x0 + j*h and
y = y0 + i*h; kernels are applied as correlations, so the right column
of a 3x3 kernel multiplies samples at x + h.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np


class Boundary(Enum):
    MIRROR = "mirror"  # zero-flux: ghost cell copies the edge cell
    PERIODIC = "periodic"

    @property
    def pad_mode(self) -> str:
        return "symmetric" if self is Boundary.MIRROR else "wrap"


@dataclass(frozen=True)
class GridField:
    """2D scalar field with uniform spacing and a boundary policy."""

    values: np.ndarray
    h: float
    boundary: Boundary = Boundary.MIRROR

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 2 or v.shape[0] < 3 or v.shape[1] < 3:
            raise ValueError("field must be 2D with both extents >= 3")
        if not self.h > 0:
            raise ValueError("spacing must be positive")
        object.__setattr__(self, "values", v)

    @property
    def height(self) -> int:
        return self.values.shape[0]

    @property
    def width(self) -> int:
        return self.values.shape[1]

    def like(self, values: np.ndarray) -> "GridField":
        return GridField(values=values, h=self.h, boundary=self.boundary)


@dataclass(frozen=True)
class Stencil3:
    """A 3x3 kernel with its grid spacing and global prefactor kept apart."""

    coeffs: np.ndarray  # raw 3x3 pattern
    h: float
    scale: float

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float)
        if c.shape != (3, 3):
            raise ValueError("stencil must be 3x3")
        object.__setattr__(self, "coeffs", c)

    def full(self) -> np.ndarray:
        """Kernel with the prefactor folded in."""
        return self.coeffs * self.scale


def _check_w(w: float) -> float:
    w = float(w)
    if math.isnan(w) or w <= -2 and not math.isinf(w):
        raise ValueError("stencil parameter must satisfy w > -2 (or w = inf)")
    if w == -2:
        raise ValueError("w = -2 degenerates the stencil family")
    return w


def dx_stencil(w: float, h: float = 1.0) -> Stencil3:
    """x-derivative stencil 1/(2h(w+2)) [-1 0 1; -w 0 w; -1 0 1].

    w = inf returns the plain central difference row.
    """
    w = _check_w(w)
    if math.isinf(w):
        return Stencil3(np.array([[0.0, 0, 0], [-1, 0, 1], [0, 0, 0]]), h, 1.0 / (2 * h))
    pattern = np.array([[-1.0, 0, 1], [-w, 0, w], [-1, 0, 1]])
    return Stencil3(pattern, h, 1.0 / (2 * h * (w + 2)))


def dy_stencil(w: float, h: float = 1.0) -> Stencil3:
    """y-derivative stencil: the x-derivative pattern rotated by a quarter turn."""
    dx = dx_stencil(w, h)
    return Stencil3(dx.coeffs.T, h, dx.scale)


def laplacian_stencil(w: float, h: float = 1.0) -> Stencil3:
    """Laplacian stencil 1/(h^2(w+2)) [1 w 1; w -4(w+1) w; 1 w 1].

    w = inf gives the five-point L_plus, w = 0 the diagonal L_cross.
    """
    w = _check_w(w)
    if math.isinf(w):
        return Stencil3(np.array([[0.0, 1, 0], [1, -4, 1], [0, 1, 0]]), h, 1.0 / h**2)
    pattern = np.array([[1.0, w, 1], [w, -4 * (w + 1), w], [1, w, 1]])
    return Stencil3(pattern, h, 1.0 / (h**2 * (w + 2)))


def alpha_beta(w: float) -> tuple[float, float]:
    """Basis coefficients (alpha, beta) with L(w) = alpha*L_plus + beta*L_cross."""
    w = _check_w(w)
    if math.isinf(w):
        return 1.0, 0.0
    return w / (w + 2), 2 / (w + 2)


def apply(stencil: Stencil3, field: GridField) -> GridField:
    """Correlate the kernel with the field; boundary handled by ghost cells.

    Summation order over kernel entries is fixed, so outputs are
    bit-reproducible; zero kernel entries contribute nothing.
    """
    K = stencil.full()
    p = np.pad(field.values, 1, mode=field.boundary.pad_mode)
    ny, nx = field.values.shape
    out = np.zeros_like(field.values)
    for r in range(3):
        for c in range(3):
            if K[r, c] != 0.0:
                out += K[r, c] * p[r : r + ny, c : c + nx]
    return field.like(out)


@dataclass(frozen=True)
class StaggeredDiffusivity:
    """Diffusivity sampled at half-integer grid offsets.

    ax[i, j]: value at (x_{j-1/2}, y_i), shape (ny, nx+1);
    ay[i, j]: value at (x_j, y_{i-1/2}), shape (ny+1, nx);
    ad[i, j]: value at (x_{j-1/2}, y_{i-1/2}), shape (ny+1, nx+1).
    """

    ax: np.ndarray
    ay: np.ndarray
    ad: np.ndarray

    def __post_init__(self):
        ny = self.ax.shape[0]
        nx = self.ay.shape[1]
        if self.ax.shape != (ny, nx + 1) or self.ay.shape != (ny + 1, nx) or self.ad.shape != (
            ny + 1,
            nx + 1,
        ):
            raise ValueError("inconsistent staggered array shapes")

    @property
    def shape(self) -> tuple[int, int]:
        return self.ax.shape[0], self.ay.shape[1]

    @property
    def min_value(self) -> float:
        return float(min(self.ax.min(), self.ay.min(), self.ad.min()))

    @classmethod
    def uniform(cls, ny: int, nx: int, value: float = 1.0) -> "StaggeredDiffusivity":
        return cls(
            ax=np.full((ny, nx + 1), value),
            ay=np.full((ny + 1, nx), value),
            ad=np.full((ny + 1, nx + 1), value),
        )

    @classmethod
    def from_callable(cls, fn, ny: int, nx: int, h: float, origin=(0.0, 0.0)) -> "StaggeredDiffusivity":
        """Evaluate a(x, y) exactly at every needed half-point."""
        x0, y0 = origin
        xc = x0 + h * np.arange(nx)
        yc = y0 + h * np.arange(ny)
        xh = x0 + h * (np.arange(nx + 1) - 0.5)
        yh = y0 + h * (np.arange(ny + 1) - 0.5)
        return cls(
            ax=fn(xh[None, :], yc[:, None]),
            ay=fn(xc[None, :], yh[:, None]),
            ad=fn(xh[None, :], yh[:, None]),
        )

    @classmethod
    def from_cell_values(cls, a: np.ndarray, boundary: Boundary) -> "StaggeredDiffusivity":
        """Average cell-center values onto the staggered points.

        Axis midpoints average the 2 adjacent cells, diagonal midpoints
        the 4 surrounding cells; ghost cells follow the boundary policy.
        """
        p = np.pad(np.asarray(a, dtype=float), 1, mode=boundary.pad_mode)
        ax = 0.5 * (p[1:-1, :-1] + p[1:-1, 1:])
        ay = 0.5 * (p[:-1, 1:-1] + p[1:, 1:-1])
        ad = 0.25 * (p[:-1, :-1] + p[:-1, 1:] + p[1:, :-1] + p[1:, 1:])
        return cls(ax=ax, ay=ay, ad=ad)


def quasi_laplacian_apply(
    alpha: float, beta: float, diff: StaggeredDiffusivity, field: GridField
) -> GridField:
    """Divergence-form alpha*L^a_plus + beta*L^a_cross.

    Fluxes across shared cell interfaces cancel exactly, so with the
    mirror boundary the output sums to zero.  Nonpositive diffusivity is
    flagged with a warning (it signals a bad contrast parameter) but the
    combination is still evaluated.
    """
    if abs(alpha + beta - 1.0) > 1e-12:
        raise ValueError("stencil mix must satisfy alpha + beta = 1")
    if diff.shape != field.values.shape:
        raise ValueError("diffusivity shape does not match field")
    if diff.min_value <= 0:
        warnings.warn("nonpositive diffusivity encountered", RuntimeWarning, stacklevel=2)
    u = field.values
    h2 = field.h**2
    p = np.pad(u, 1, mode=field.boundary.pad_mode)
    ny, nx = u.shape
    uc = p[1:-1, 1:-1]
    lp = (
        diff.ax[:, 1:] * (p[1:-1, 2:] - uc)
        + diff.ax[:, :-1] * (p[1:-1, :-2] - uc)
        + diff.ay[1:, :] * (p[2:, 1:-1] - uc)
        + diff.ay[:-1, :] * (p[:-2, 1:-1] - uc)
    ) / h2
    lx = (
        diff.ad[1:, 1:] * (p[2:, 2:] - uc)
        + diff.ad[1:, :-1] * (p[2:, :-2] - uc)
        + diff.ad[:-1, 1:] * (p[:-2, 2:] - uc)
        + diff.ad[:-1, :-1] * (p[:-2, :-2] - uc)
    ) / (2 * h2)
    return field.like(alpha * lp + beta * lx)


def gershgorin_radius(alpha: float, beta: float, diff: StaggeredDiffusivity, h: float) -> float:
    """Largest absolute row sum of the quasi-Laplacian operator matrix.

    The center coefficient equals minus the sum of the neighbor
    coefficients, so the row sum is twice the center magnitude.
    """
    center = (
        alpha * (diff.ax[:, 1:] + diff.ax[:, :-1] + diff.ay[1:, :] + diff.ay[:-1, :])
        + 0.5 * beta * (diff.ad[1:, 1:] + diff.ad[1:, :-1] + diff.ad[:-1, 1:] + diff.ad[:-1, :-1])
    ) / h**2
    return 2.0 * float(center.max())


def corrected_dx(field: GridField, h: float | None = None) -> GridField:
    """Fourth-order x-derivative: (1 - (h^2/12) L) D_x at w = 4.

    Composes the w=4 derivative stencil with a Laplacian correction that
    cancels the h^2/12 truncation term.
    """
    h = field.h if h is None else h
    g = apply(dx_stencil(4, h), field)
    lap_g = apply(laplacian_stencil(4, h), g)
    return field.like(g.values - h**2 / 12.0 * lap_g.values)
