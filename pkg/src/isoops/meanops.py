"""Discrete circular/spherical means of directional-derivative samples.

Given directions with mean-value weights, weighted sums of sampled
directional derivatives reconstruct differential operators: the mean of
second directional derivatives is Delta f / d (d the ambient dimension),
the mean of squared first derivatives is |grad f|^2 / d, and so on.
Every operation here returns the full operator value, absorbing that
dimension factor (which is the classical 1/2 in the plane).

The star-stencil path handles irregular neighborhoods: each spoke
carries a forward and a backward sample along a line through the
center, combined by the unequal-spacing second difference and weighted
by the Veronese construction on the spoke directions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PairingRefused
from .veronese import BasisKind
from .weights import DirectionSet, veronese_weights

#: scattered neighbors must be separated by more than this to form a spoke
PAIRING_MIN_ANGLE_DEG = 120.0


@dataclass(frozen=True)
class DirectionalSamples:
    """Directional derivative samples attached to a weighted direction set."""

    dirs: DirectionSet
    first_derivs: np.ndarray | None = None
    second_derivs: np.ndarray | None = None

    def __post_init__(self):
        for name in ("first_derivs", "second_derivs"):
            vals = getattr(self, name)
            if vals is not None:
                vals = np.asarray(vals, dtype=float)
                if vals.shape != (len(self.dirs),):
                    raise ValueError(f"{name} must have one entry per direction")
                object.__setattr__(self, name, vals)
        if self.dirs.weights is None:
            raise ValueError("direction set must carry weights")


@dataclass(frozen=True)
class Spoke:
    """One line through the star center: forward and backward samples."""

    direction: np.ndarray  # unit vector
    rho1: float  # forward radius
    f1: float  # value at center + rho1 * direction
    rho2: float  # backward radius
    f2: float  # value at center - rho2 * direction

    def __post_init__(self):
        d = np.asarray(self.direction, dtype=float)
        object.__setattr__(self, "direction", d)
        if self.rho1 <= 0 or self.rho2 <= 0:
            raise ValueError("spoke radii must be positive")


@dataclass(frozen=True)
class StarStencil:
    """A center value and spokes with two collinear samples each."""

    center: np.ndarray
    f_center: float
    spokes: list[Spoke]

    @property
    def ambient_dim(self) -> int:
        return np.asarray(self.center).shape[0]


def second_diff_unequal(f_p: float, f_q1: float, f_q2: float, rho1: float, rho2: float) -> float:
    """Second derivative along a line from unequally spaced samples.

    (2/(rho1*rho2)) * ((f_q1/rho1 + f_q2/rho2)/(1/rho1 + 1/rho2) - f_p);
    exact on quadratics restricted to the line, and the central second
    difference when rho1 == rho2.
    """
    if rho1 <= 0 or rho2 <= 0:
        raise ValueError("radii must be positive")
    blend = (f_q1 / rho1 + f_q2 / rho2) / (1.0 / rho1 + 1.0 / rho2)
    return 2.0 / (rho1 * rho2) * (blend - f_p)


def mean_laplacian(samples: DirectionalSamples) -> float:
    """Laplacian from weighted second directional derivatives: d * sum w_k s_k."""
    if samples.second_derivs is None:
        raise ValueError("second-derivative samples are required")
    d = samples.dirs.ambient_dim
    return d * float(np.dot(samples.dirs.weights, samples.second_derivs))


def mean_grad_sq(samples: DirectionalSamples) -> float:
    """Squared gradient norm from weighted first derivatives: d * sum w_k d_k^2."""
    if samples.first_derivs is None:
        raise ValueError("first-derivative samples are required")
    d = samples.dirs.ambient_dim
    return d * float(np.dot(samples.dirs.weights, samples.first_derivs**2))


def mean_directional(samples: DirectionalSamples, a: float, b: float) -> float:
    """a*df/dx + b*df/dy from weighted plane first derivatives.

    2D only; the direction angles are recovered from the direction set.
    """
    if samples.first_derivs is None:
        raise ValueError("first-derivative samples are required")
    if samples.dirs.ambient_dim != 2:
        raise ValueError("directional reconstruction is a plane operation")
    cos_phi = samples.dirs.dirs[:, 0]
    sin_phi = samples.dirs.dirs[:, 1]
    proj = a * cos_phi + b * sin_phi
    return 2.0 * float(np.dot(samples.dirs.weights, proj * samples.first_derivs))


def mean_quasi_laplacian(dirs: DirectionSet, samples) -> float:
    """div(a grad f) from samples of d/de (a df/de): d * sum w_k t_k."""
    t = np.asarray(samples, dtype=float)
    if dirs.weights is None:
        raise ValueError("direction set must carry weights")
    if t.shape != (len(dirs),):
        raise ValueError("need one sample per direction")
    return dirs.ambient_dim * float(np.dot(dirs.weights, t))


def irregular_laplacian(star: StarStencil) -> float:
    """Discrete Laplacian at the center of an irregular star.

    Directional second derivatives come from the unequal-spacing second
    difference on each spoke; weights come from the harmonic degree-2
    Veronese construction on the spoke directions, so the result is
    exact on quadratic polynomials.  Weight-construction failures
    (RankDeficient) propagate.
    """
    dirs = np.array([s.direction for s in star.spokes])
    ds = veronese_weights(dirs, degree=2, kind=BasisKind.HARMONIC)
    sdd = np.array(
        [
            second_diff_unequal(star.f_center, s.f1, s.f2, s.rho1, s.rho2)
            for s in star.spokes
        ]
    )
    return star.ambient_dim * float(np.dot(ds.weights, sdd))


def star_from_scatter(center, f_center: float, points, values) -> StarStencil:
    """Pair scattered neighbors into spokes around a center.

    Each neighbor is matched with the neighbor of maximal angular
    distance from it (as seen from the center); the pair must subtend
    more than 120 degrees, otherwise PairingRefused is raised.  The
    partner's sample is carried at its projected distance along the
    spoke's backward ray.
    """
    center = np.asarray(center, dtype=float)
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    vals = np.asarray(values, dtype=float)
    if pts.shape[0] != vals.shape[0]:
        raise ValueError("need one value per neighbor point")
    offsets = pts - center
    radii = np.linalg.norm(offsets, axis=1)
    if np.any(radii == 0):
        raise ValueError("neighbor coincides with the center")
    units = offsets / radii[:, None]
    cosines = units @ units.T
    max_cos = np.cos(np.deg2rad(PAIRING_MIN_ANGLE_DEG))
    spokes = []
    for i in range(pts.shape[0]):
        j = int(np.argmin(cosines[i]))
        if cosines[i, j] >= max_cos:
            raise PairingRefused(
                f"neighbor {i} has no partner beyond {PAIRING_MIN_ANGLE_DEG:.0f} deg "
                f"(best separation {np.degrees(np.arccos(cosines[i, j])):.1f} deg)"
            )
        back = -float(offsets[j] @ units[i])  # projected backward distance
        spokes.append(
            Spoke(direction=units[i], rho1=float(radii[i]), f1=float(vals[i]),
                  rho2=back, f2=float(vals[j]))
        )
    return StarStencil(center=center, f_center=float(f_center), spokes=spokes)
