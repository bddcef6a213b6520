"""Mean-value weights for direction sets.

Three constructions live here:

* the 2D circumscribed-polygon weights for directions parameterized by
  angles in [0, pi),
* the general Veronese construction: solve the linear system that makes
  a weighted sum of basis-polynomial evaluations hit its target (zero
  for harmonics, the analytic sphere mean for the full basis),
* equal weights on the regular midpoint lattices M_m.

The frame diagnostic shows why n+1 generic points never admit a
mean-value formula: (A^T A)^{-1} must be diagonal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

from .errors import GapTooLarge, NumericalError, RankDeficient, TooFewDirections
from .veronese import BasisKind, evaluate_basis, full_basis, harmonic_basis

#: residual tolerance at unit scale for weight conditions
RESIDUAL_TOL = 1e-12
#: singular values below this fraction of the largest do not count toward rank
RANK_RTOL = 1e-10


@dataclass(frozen=True)
class DirectionSet:
    """Unit vectors on S^n with optional normalized weights."""

    dirs: np.ndarray  # (N, n+1)
    weights: np.ndarray | None = None

    def __post_init__(self):
        dirs = np.atleast_2d(np.asarray(self.dirs, dtype=float))
        object.__setattr__(self, "dirs", dirs)
        norms = np.linalg.norm(dirs, axis=1)
        if np.any(np.abs(norms - 1.0) > 1e-9):
            raise ValueError("directions must be unit vectors (within 1e-9)")
        if self.weights is not None:
            w = np.asarray(self.weights, dtype=float)
            if w.shape != (dirs.shape[0],):
                raise ValueError("weights must have one entry per direction")
            if abs(w.sum() - 1.0) > 1e-12:
                raise ValueError("weights must sum to 1 (within 1e-12)")
            object.__setattr__(self, "weights", w)

    @property
    def ambient_dim(self) -> int:
        return self.dirs.shape[1]

    def __len__(self) -> int:
        return self.dirs.shape[0]


@dataclass(frozen=True)
class MidpointLattice:
    """The set M_m of vectors with exactly m coordinates +-1/sqrt(m)."""

    ambient_dim: int
    m: int
    points: np.ndarray  # (#M_m, ambient_dim)

    @property
    def count(self) -> int:
        return self.points.shape[0]

    @property
    def normalizer(self) -> float:
        """C_m = #M_1 / #M_m."""
        return 2 * self.ambient_dim / self.count


@dataclass(frozen=True)
class FrameResult:
    """Outcome of the n+1 point interpolation-formula diagnostic."""

    diagonal: bool
    weights: np.ndarray | None
    offdiag_norm: float


def circular_weights(angles) -> DirectionSet:
    """Circumscribed-polygon weights for directions at angles in [0, pi).

    The direction angles are doubled onto the full circle; the weight of
    each direction is the side length of the polygon circumscribed about
    the unit circle whose outward edge normals are the doubled-angle
    vectors, normalized to total 1.

    Parameters
    ----------
    angles : array-like
        Sorted angles phi_k in [0, pi).  Repeated angles are allowed
        (their weight is shared); a cyclic doubled-angle gap of pi/2 or
        more raises GapTooLarge, fewer than 3 angles raises
        TooFewDirections.
    """
    phi = np.asarray(angles, dtype=float)
    if phi.ndim != 1 or phi.size < 3:
        raise TooFewDirections("need at least 3 direction angles")
    if np.any(np.diff(phi) < 0):
        raise ValueError("angles must be sorted increasingly")
    if phi[0] < 0 or phi[-1] >= math.pi:
        raise ValueError("angles must lie in [0, pi)")
    gaps = np.diff(phi, append=phi[0] + math.pi)
    if np.any(gaps >= math.pi / 2):
        k = int(np.argmax(gaps))
        raise GapTooLarge(
            f"doubled-angle gap {2 * gaps[k]:.4f} rad at index {k} reaches pi"
        )
    tans = np.tan(gaps)
    sides = np.roll(tans, 1) + tans  # tan(beta_{j-1}) + tan(beta_j)
    weights = sides / sides.sum()
    dirs = np.column_stack([np.cos(phi), np.sin(phi)])
    return DirectionSet(dirs=dirs, weights=weights)


def sphere_monomial_mean(exponents, ambient_dim: int) -> float:
    """Average of the monomial x^a over the unit sphere S^(d-1).

    Zero when any exponent is odd; otherwise the classical Gaussian
    moment ratio prod (a_i-1)!! / (2^(k/2) Gamma((d+k)/2)/Gamma(d/2)).
    """
    exps = tuple(int(a) for a in exponents)
    if any(a % 2 for a in exps):
        return 0.0
    k = sum(exps)
    num = 1.0
    for a in exps:
        num *= math.prod(range(a - 1, 0, -2)) if a else 1.0
    denom = 2 ** (k / 2) * math.gamma((ambient_dim + k) / 2) / math.gamma(ambient_dim / 2)
    return num / denom


def veronese_weights(points, degree: int, kind: BasisKind = BasisKind.HARMONIC) -> DirectionSet:
    """Mean-value weights for arbitrary unit points via the Veronese map.

    Harmonic kind: weights with sum 1 whose weighted sum of every
    degree-k harmonic polynomial over the points vanishes.  Full kind:
    weights with sum 1 whose weighted sum of every degree-k polynomial
    equals its sphere average (for k=2 this is the image condition
    sum w_i V(P_i) = (1,...,1;0,...,0)/(n+1)).

    The underdetermined linear system is solved in the least-norm sense;
    no positivity is imposed.  If the stacked system (image coordinates
    plus the all-ones row) is inconsistent, RankDeficient is raised with
    the achieved rank, which happens in particular for too few points or
    degenerate configurations.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if degree < 1:
        raise ValueError("degree must be >= 1")
    d = points.shape[1]
    norms = np.linalg.norm(points, axis=1)
    if np.any(np.abs(norms - 1.0) > 1e-9):
        raise ValueError("points must lie on the unit sphere (within 1e-9)")
    basis = harmonic_basis(d, degree) if kind is BasisKind.HARMONIC else full_basis(d, degree)
    Q = evaluate_basis(basis, points).points  # (N, q)
    if kind is BasisKind.HARMONIC:
        target = np.zeros(Q.shape[1])
    else:
        target = np.array(
            [sphere_monomial_mean(m, d) for m in basis.monomial_list]
        )
    M = np.vstack([Q.T, np.ones(points.shape[0])])
    t = np.append(target, 1.0)
    w, _, rank, sv = np.linalg.lstsq(M, t, rcond=RANK_RTOL)
    residual = np.linalg.norm(M @ w - t)
    scale = max(1.0, float(np.abs(Q).max(initial=0.0)) * float(np.abs(w).sum()))
    if residual > 1e-10 * scale:
        raise RankDeficient(
            f"no weights satisfy the mean-value conditions "
            f"(residual {residual:.2e}, rank {rank} of {M.shape[0]} conditions)",
            rank=rank,
        )
    return DirectionSet(dirs=points, weights=w / w.sum())


def midpoint_lattice(ambient_dim: int, m: int) -> MidpointLattice:
    """Full enumeration of M_m: C(d, m) * 2^m vectors, m entries +-1/sqrt(m)."""
    if not 1 <= m <= ambient_dim:
        raise ValueError(f"m must be in [1, {ambient_dim}]")
    pts = []
    for support in combinations(range(ambient_dim), m):
        for signs in product((1.0, -1.0), repeat=m):
            v = np.zeros(ambient_dim)
            v[list(support)] = np.array(signs) / math.sqrt(m)
            pts.append(v)
    return MidpointLattice(ambient_dim=ambient_dim, m=m, points=np.array(pts))


def lattice_mean(quad, lattice: MidpointLattice, constant: float = 0.0) -> float:
    """Average of x^T A x + constant over the lattice points.

    Equals the sphere average trace(A)/d + constant for every symmetric A.
    """
    A = np.asarray(quad, dtype=float)
    d = lattice.ambient_dim
    if A.shape != (d, d):
        raise ValueError(f"quadratic form must be a {d}x{d} matrix")
    P = lattice.points
    vals = np.einsum("ij,jk,ik->i", P, A, P)
    return float(vals.mean() + constant)


def sphere_mean_quadratic(quad, constant: float = 0.0) -> float:
    """Analytic sphere average of x^T A x + constant: trace(A)/d + constant."""
    A = np.asarray(quad, dtype=float)
    return float(np.trace(A) / A.shape[0] + constant)


def frame_weights(points) -> FrameResult:
    """Diagnostic for interpolation weights from exactly n+1 unit vectors.

    Stacks the points as columns of A and inverts A^T A.  If the inverse
    is diagonal (off-diagonal entries below 1e-10), its diagonal is the
    weight vector and an interpolation formula exists; otherwise no
    mean-value formula exists for this frame and the off-diagonal norm
    is reported.
    """
    P = np.atleast_2d(np.asarray(points, dtype=float))
    d = P.shape[1]
    if P.shape[0] != d:
        raise ValueError(f"expected exactly {d} points in dimension {d}")
    A = P.T  # columns are the points
    G = A.T @ A
    try:
        Ginv = np.linalg.inv(G)
    except np.linalg.LinAlgError as exc:
        raise NumericalError("frame Gram matrix is singular") from exc
    off = Ginv - np.diag(np.diag(Ginv))
    offnorm = float(np.linalg.norm(off))
    if np.all(np.abs(off) < 1e-10):
        return FrameResult(diagonal=True, weights=np.diag(Ginv).copy(), offdiag_norm=offnorm)
    return FrameResult(diagonal=False, weights=None, offdiag_norm=offnorm)
