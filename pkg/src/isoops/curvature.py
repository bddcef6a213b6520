"""Mean curvature and curvedness at mesh vertices from 1-ring circular means.

For a vertex P with unit normal n and ring neighbors Q_j, the chord
formula k_j = 2 (Q_j - P) . n / |Q_j - P|^2 estimates the directional
curvature along each projected edge, and the normal difference quotient
(n(Q_j) - n(P))/|Q_j - P| estimates dn/dt.  Weighted circular means of
these samples give the mean curvature H and the curvedness
R = sqrt((k_max^2 + k_min^2)/2); the weights are the circumscribed
polygon weights on the tangent-plane edge angles reduced mod pi.

Sign convention: the chord formula is kept verbatim, so a unit sphere
with outward normals reports H = -1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BoundaryVertex, DegenerateProjection, GapTooLarge
from .weights import circular_weights


class TriMesh:
    """Indexed triangle mesh with per-vertex normals and ordered 1-rings.

    Supplied normals take precedence; otherwise angle-weighted averages
    of incident face normals are computed.  Ring order follows triangle
    orientation; a vertex whose ring does not close is a boundary
    vertex.
    """

    def __init__(self, vertices, triangles, normals=None):
        self.vertices = np.asarray(vertices, dtype=float)
        self.triangles = np.asarray(triangles, dtype=np.int64)
        if self.vertices.ndim != 2 or self.vertices.shape[1] != 3:
            raise ValueError("vertices must be an (n, 3) array")
        if self.triangles.ndim != 2 or self.triangles.shape[1] != 3:
            raise ValueError("triangles must be an (m, 3) index array")
        if self.triangles.size and self.triangles.max() >= len(self.vertices):
            raise ValueError("triangle index out of range")
        if self.triangles.min(initial=0) < 0:
            raise ValueError("triangle index out of range")
        if normals is not None:
            normals = np.asarray(normals, dtype=float)
            if normals.shape != self.vertices.shape:
                raise ValueError("normals must match vertices in shape")
            if np.any(np.abs(np.linalg.norm(normals, axis=1) - 1.0) > 1e-9):
                raise ValueError("supplied normals must be unit length")
            self.normals = normals
        else:
            self.normals = vertex_normals(self)
        self.one_rings, self.is_boundary = _build_rings(self.triangles, len(self.vertices))

    def __len__(self) -> int:
        return len(self.vertices)


def vertex_normals(mesh: TriMesh) -> np.ndarray:
    """Angle-weighted average of incident face normals, normalized.

    Zero-area faces are skipped; isolated vertices get a nan normal.
    """
    V = mesh.vertices
    acc = np.zeros_like(V)
    for tri in mesh.triangles:
        p = V[tri]
        fn = np.cross(p[1] - p[0], p[2] - p[0])
        norm = np.linalg.norm(fn)
        if norm < 1e-14:
            continue
        fn = fn / norm
        for corner in range(3):
            e1 = p[(corner + 1) % 3] - p[corner]
            e2 = p[(corner + 2) % 3] - p[corner]
            cosang = np.clip(
                e1 @ e2 / (np.linalg.norm(e1) * np.linalg.norm(e2)), -1.0, 1.0
            )
            acc[tri[corner]] += math.acos(cosang) * fn
    lens = np.linalg.norm(acc, axis=1)
    out = np.full_like(V, np.nan)
    ok = lens > 1e-14
    out[ok] = acc[ok] / lens[ok, None]
    return out


def _build_rings(triangles: np.ndarray, n_vertices: int):
    """Ordered 1-ring neighbor lists and boundary flags.

    Each incident triangle contributes the directed opposite edge; the
    edges are chained into a cycle (interior) or an open path (boundary).
    """
    succ: list[dict[int, int]] = [dict() for _ in range(n_vertices)]
    for a, b, c in triangles:
        succ[a][b] = c
        succ[b][c] = a
        succ[c][a] = b
    rings: list[list[int]] = []
    boundary = np.zeros(n_vertices, dtype=bool)
    for v in range(n_vertices):
        nxt = succ[v]
        if not nxt:
            rings.append([])
            boundary[v] = True
            continue
        preds = set(nxt.values())
        starts = [k for k in nxt if k not in preds]
        start = starts[0] if starts else next(iter(nxt))
        ring = [start]
        while True:
            cur = nxt.get(ring[-1])
            if cur is None or cur == start:
                break
            ring.append(cur)
            if len(ring) > len(nxt) + 1:  # non-manifold guard
                break
        closed = len(ring) == len(nxt) and nxt.get(ring[-1]) == start
        rings.append(ring)
        boundary[v] = not closed
    return rings, boundary


@dataclass(frozen=True)
class RingFrame:
    """Per-edge samples around a vertex, sorted by tangent angle."""

    phi: np.ndarray  # tangent-plane angles in [0, 2pi), increasing
    rho: np.ndarray  # edge lengths
    k: np.ndarray  # directional curvature samples
    dn: np.ndarray  # (m, 3) normal difference quotients


@dataclass(frozen=True)
class VertexCurvature:
    H: float
    R: float
    valid: bool


def ring_frame(mesh: TriMesh, vertex: int) -> RingFrame:
    """Tangent angles, edge lengths and curvature samples of the 1-ring.

    Raises BoundaryVertex for open rings or rings with fewer than 3
    neighbors, DegenerateProjection if an edge is (numerically) normal
    to the tangent plane.
    """
    ring = mesh.one_rings[vertex]
    if mesh.is_boundary[vertex] or len(ring) < 3:
        raise BoundaryVertex(f"vertex {vertex} has no closed ring of >= 3 neighbors")
    P = mesh.vertices[vertex]
    n = mesh.normals[vertex]
    Q = mesh.vertices[ring]
    edges = Q - P
    rho = np.linalg.norm(edges, axis=1)
    k = 2.0 * (edges @ n) / rho**2
    dn = (mesh.normals[ring] - n) / rho[:, None]
    tang = edges - np.outer(edges @ n, n)
    tnorm = np.linalg.norm(tang, axis=1)
    if np.any(tnorm < 1e-8 * rho):
        bad = int(np.argmin(tnorm / rho))
        raise DegenerateProjection(
            f"ring edge to vertex {ring[bad]} projects to zero tangent length"
        )
    u1 = tang[0] / tnorm[0]
    u2 = np.cross(n, u1)
    phi = np.mod(np.arctan2(tang @ u2, tang @ u1), 2 * math.pi)
    order = np.argsort(phi, kind="stable")
    return RingFrame(phi=phi[order], rho=rho[order], k=k[order], dn=dn[order])


def _ring_weights(phi: np.ndarray) -> np.ndarray:
    """Circumscribed-polygon weights on ring angles reduced mod pi.

    Raises GapTooLarge when the reduced directions leave a gap of pi/2
    or more (callers fall back to uniform weights).
    """
    reduced = np.mod(phi, math.pi)
    order = np.argsort(reduced, kind="stable")
    ds = circular_weights(reduced[order])
    weights = np.empty_like(reduced)
    weights[order] = ds.weights
    return weights


def vertex_curvature(mesh: TriMesh, vertex: int) -> VertexCurvature:
    """Mean curvature H and curvedness R at one interior vertex.

    Falls back to uniform weights (valid=False) when the ring direction
    set degenerates; BoundaryVertex/DegenerateProjection propagate.
    """
    frame = ring_frame(mesh, vertex)
    try:
        w = _ring_weights(frame.phi)
        valid = True
    except GapTooLarge:
        w = np.full(len(frame.phi), 1.0 / len(frame.phi))
        valid = False
    H = float(w @ frame.k)
    R = math.sqrt(max(float(w @ (frame.dn**2).sum(axis=1)), 0.0))
    return VertexCurvature(H=H, R=R, valid=valid)


@dataclass(frozen=True)
class MeshCurvature:
    """Per-vertex curvature with simple aggregate statistics."""

    per_vertex: list[VertexCurvature]
    summary: dict

    @property
    def H(self) -> np.ndarray:
        return np.array([vc.H for vc in self.per_vertex])

    @property
    def R(self) -> np.ndarray:
        return np.array([vc.R for vc in self.per_vertex])

    @property
    def valid(self) -> np.ndarray:
        return np.array([vc.valid for vc in self.per_vertex])


def mesh_curvature(mesh: TriMesh) -> MeshCurvature:
    """vertex_curvature over all vertices; boundary vertices are invalid."""
    out: list[VertexCurvature] = []
    for v in range(len(mesh)):
        try:
            out.append(vertex_curvature(mesh, v))
        except (BoundaryVertex, DegenerateProjection):
            out.append(VertexCurvature(H=math.nan, R=math.nan, valid=False))
    valid = [vc for vc in out if vc.valid]
    summary = {
        "n_vertices": len(out),
        "n_valid": len(valid),
        "H_median": float(np.median([vc.H for vc in valid])) if valid else math.nan,
        "R_median": float(np.median([vc.R for vc in valid])) if valid else math.nan,
        "H_mean": float(np.mean([vc.H for vc in valid])) if valid else math.nan,
        "R_mean": float(np.mean([vc.R for vc in valid])) if valid else math.nan,
    }
    return MeshCurvature(per_vertex=out, summary=summary)
