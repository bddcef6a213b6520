"""Full and harmonic Veronese maps in arbitrary dimension.

A degree-k Veronese map evaluates a basis of degree-k homogeneous
polynomials at points of the unit sphere.  The *full* map uses all
monomials; the *harmonic* map uses a basis of the kernel of the
Laplacian acting on homogeneous polynomials, whose restrictions to the
sphere are the spherical harmonics of degree k.

Coefficients are kept as exact integers so that harmonicity can be
verified exactly; they are converted to floating point only when a
basis is evaluated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations_with_replacement

import numpy as np


class BasisKind(Enum):
    FULL = "full"
    HARMONIC = "harmonic"


def binom(m: int, n: int) -> int:
    """C(m, n) with the convention that it vanishes for m < n or n < 0."""
    if m < n or n < 0:
        return 0
    return math.comb(m, n)


def monomials(ambient_dim: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent tuples of total degree `degree` in `ambient_dim` variables.

    Ordering is graded lexicographic (largest exponent tuple first), except
    for degree 2 where the squares x_i^2 come first, followed by the cross
    terms x_i x_j in lexicographic order.  This pins the position of the
    squares block, which downstream weight constructions rely on.
    """
    if ambient_dim < 1:
        raise ValueError("ambient_dim must be >= 1")
    if degree < 0:
        raise ValueError("degree must be >= 0")
    if degree == 2:
        squares = []
        for i in range(ambient_dim):
            e = [0] * ambient_dim
            e[i] = 2
            squares.append(tuple(e))
        crosses = []
        for i, j in combinations_with_replacement(range(ambient_dim), 2):
            if i == j:
                continue
            e = [0] * ambient_dim
            e[i] = 1
            e[j] = 1
            crosses.append(tuple(e))
        return squares + crosses
    out = []
    for combo in combinations_with_replacement(range(ambient_dim), degree):
        e = [0] * ambient_dim
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    # combinations_with_replacement of indices enumerates exponent tuples in
    # descending lexicographic order already (x1^k first).
    return out


@dataclass(frozen=True)
class PolyBasis:
    """A basis of degree-k homogeneous polynomials in n+1 variables.

    Each row of `coeffs` holds the integer coefficients of one basis
    element with respect to `monomial_list`.
    """

    ambient_dim: int
    degree: int
    kind: BasisKind
    monomial_list: list[tuple[int, ...]]
    coeffs: np.ndarray  # integer matrix, shape (n_elements, n_monomials)

    def __post_init__(self):
        if self.coeffs.ndim != 2 or self.coeffs.shape[1] != len(self.monomial_list):
            raise ValueError("coefficient matrix does not match monomial list")

    def __len__(self) -> int:
        return self.coeffs.shape[0]

    @property
    def elements(self) -> list[list[tuple[tuple[int, ...], int]]]:
        """Each element as a sparse list of (exponent tuple, coefficient)."""
        out = []
        for row in self.coeffs:
            out.append([(m, int(c)) for m, c in zip(self.monomial_list, row) if c != 0])
        return out


@dataclass(frozen=True)
class VeroneseImage:
    """Evaluation of a polynomial basis at a point collection."""

    basis: PolyBasis
    source_points: np.ndarray  # (N, n+1)
    points: np.ndarray  # (N, q)
    special_vector: np.ndarray | None = field(default=None)


def laplacian_matrix(ambient_dim: int, degree: int) -> np.ndarray:
    """Integer matrix of the Laplacian from degree-k to degree-(k-2) monomials.

    Acts on coefficient vectors relative to `monomials(ambient_dim, degree)`;
    the output is relative to `monomials(ambient_dim, degree - 2)`.
    """
    src = monomials(ambient_dim, degree)
    if degree < 2:
        return np.zeros((0, len(src)), dtype=np.int64)
    dst = monomials(ambient_dim, degree - 2)
    index = {m: r for r, m in enumerate(dst)}
    L = np.zeros((len(dst), len(src)), dtype=np.int64)
    for c, mono in enumerate(src):
        for i, a in enumerate(mono):
            if a >= 2:
                lowered = list(mono)
                lowered[i] -= 2
                L[index[tuple(lowered)], c] += a * (a - 1)
    return L


def _integer_nullspace(M: np.ndarray) -> np.ndarray:
    """Integer echelon basis of the nullspace of an integer matrix.

    Uses exact rational arithmetic; each returned row is scaled to
    coprime integers.
    """
    from sympy import Matrix, lcm

    if M.shape[0] == 0:
        return np.eye(M.shape[1], dtype=np.int64)
    null = Matrix(M.tolist()).nullspace()
    rows = []
    for vec in null:
        denoms = [term.q for term in vec]
        scaled = vec * lcm(denoms)
        g = math.gcd(*(abs(int(v)) for v in scaled)) or 1
        rows.append([int(v) // g for v in scaled])
    return np.array(rows, dtype=np.int64).reshape(len(rows), M.shape[1])


def full_basis(ambient_dim: int, degree: int) -> PolyBasis:
    """Basis of all degree-k monomials (the full Veronese map).

    For k = 2 the first n+1 entries are the squares x_i^2, so the
    distinguished vector (1,...,1;0,...,0) aligns with the squares block.
    """
    monos = monomials(ambient_dim, degree)
    return PolyBasis(
        ambient_dim=ambient_dim,
        degree=degree,
        kind=BasisKind.FULL,
        monomial_list=monos,
        coeffs=np.eye(len(monos), dtype=np.int64),
    )


def harmonic_basis(ambient_dim: int, degree: int) -> PolyBasis:
    """Integer basis of harmonic homogeneous polynomials of the given degree.

    Computed as the exact nullspace of `laplacian_matrix`.  The element
    count is C(n+k, n) - C(n+k-2, n); degenerate degrees (0 and 1, where
    everything is harmonic) return the forced basis.
    """
    monos = monomials(ambient_dim, degree)
    coeffs = _integer_nullspace(laplacian_matrix(ambient_dim, degree))
    expected = binom(ambient_dim - 1 + degree, ambient_dim - 1) - binom(
        ambient_dim - 3 + degree, ambient_dim - 1
    )
    if coeffs.shape[0] != expected:
        raise AssertionError(
            f"nullspace dimension {coeffs.shape[0]} != expected {expected}"
        )
    return PolyBasis(
        ambient_dim=ambient_dim,
        degree=degree,
        kind=BasisKind.HARMONIC,
        monomial_list=monos,
        coeffs=coeffs,
    )


def custom_basis(
    ambient_dim: int,
    degree: int,
    kind: BasisKind,
    coeff_rows,
) -> PolyBasis:
    """Basis with caller-supplied integer coefficient rows.

    Rows are relative to `monomials(ambient_dim, degree)`.
    """
    monos = monomials(ambient_dim, degree)
    coeffs = np.asarray(coeff_rows, dtype=np.int64)
    return PolyBasis(ambient_dim, degree, kind, monos, coeffs)


def evaluate_monomials(monos, points: np.ndarray) -> np.ndarray:
    """Evaluate each exponent tuple at each point; shape (N, n_monomials)."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    vals = np.ones((points.shape[0], len(monos)))
    for c, mono in enumerate(monos):
        for i, a in enumerate(mono):
            if a:
                vals[:, c] *= points[:, i] ** a
    return vals


def evaluate_basis(basis: PolyBasis, points) -> VeroneseImage:
    """Evaluate a polynomial basis at a point collection.

    Parameters
    ----------
    basis : PolyBasis
    points : array-like, shape (N, n+1)
        Points in the basis's ambient space (unit vectors in the intended
        use, though evaluation itself does not require it).

    Returns
    -------
    VeroneseImage
        Image points of shape (N, len(basis)); for a full degree-2 basis
        the special vector (1,...,1;0,...,0) is attached.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if points.shape[1] != basis.ambient_dim:
        raise ValueError(
            f"points have dimension {points.shape[1]}, basis expects {basis.ambient_dim}"
        )
    mono_vals = evaluate_monomials(basis.monomial_list, points)
    images = mono_vals @ basis.coeffs.astype(float).T
    special = None
    if basis.kind is BasisKind.FULL and basis.degree == 2:
        special = np.concatenate(
            [np.ones(basis.ambient_dim), np.zeros(len(basis) - basis.ambient_dim)]
        )
    return VeroneseImage(
        basis=basis, source_points=points, points=images, special_vector=special
    )


def is_harmonic(basis: PolyBasis) -> bool:
    """Exact coefficient-level check that every element is annihilated by the Laplacian."""
    L = laplacian_matrix(basis.ambient_dim, basis.degree)
    if L.shape[0] == 0:
        return True
    image = L.astype(object) @ basis.coeffs.astype(object).T
    return not np.any(image)
