"""Synthetic triangle meshes with known analytic curvature.

These stand in for scanned models: the unit sphere (H = -1, curvedness 1
with outward normals), the cylinder (H = -1/2, curvedness 1/sqrt(2) away
from the rims) and the flat grid (everything 0).
"""

from __future__ import annotations

import math

import numpy as np


def plane_grid(nx: int = 12, ny: int = 12, spacing: float = 0.5):
    """Flat z=0 grid split into triangles; returns (vertices, triangles)."""
    xs = spacing * np.arange(nx)
    ys = spacing * np.arange(ny)
    X, Y = np.meshgrid(xs, ys)
    verts = np.column_stack([X.ravel(), Y.ravel(), np.zeros(nx * ny)])
    tris = []
    for i in range(ny - 1):
        for j in range(nx - 1):
            a = i * nx + j
            b = a + 1
            c = a + nx
            d = c + 1
            tris.append((a, b, d))
            tris.append((a, d, c))
    return verts, np.array(tris, dtype=np.int64)


def icosphere(subdivisions: int = 3, radius: float = 1.0):
    """Icosahedron subdivided `subdivisions` times, projected to the sphere.

    Edge length is roughly 1.05 * radius / 2**subdivisions; triangles are
    oriented outward.
    """
    t = (1.0 + math.sqrt(5.0)) / 2.0
    verts = np.array(
        [
            (-1, t, 0), (1, t, 0), (-1, -t, 0), (1, -t, 0),
            (0, -1, t), (0, 1, t), (0, -1, -t), (0, 1, -t),
            (t, 0, -1), (t, 0, 1), (-t, 0, -1), (-t, 0, 1),
        ],
        dtype=float,
    )
    verts /= np.linalg.norm(verts, axis=1, keepdims=True)
    tris = [
        (0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11),
        (1, 5, 9), (5, 11, 4), (11, 10, 2), (10, 7, 6), (7, 1, 8),
        (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8), (3, 8, 9),
        (4, 9, 5), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1),
    ]
    verts = [tuple(v) for v in verts]
    for _ in range(subdivisions):
        cache: dict[tuple[int, int], int] = {}

        def midpoint(i, j):
            key = (min(i, j), max(i, j))
            if key not in cache:
                m = np.array(verts[i]) + np.array(verts[j])
                m /= np.linalg.norm(m)
                cache[key] = len(verts)
                verts.append(tuple(m))
            return cache[key]

        new_tris = []
        for a, b, c in tris:
            ab, bc, ca = midpoint(a, b), midpoint(b, c), midpoint(c, a)
            new_tris += [(a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca)]
        tris = new_tris
    return radius * np.array(verts), np.array(tris, dtype=np.int64)


def cylinder(n_theta: int = 48, n_z: int = 24, radius: float = 1.0, height: float = 3.0):
    """Open cylinder (no caps); rim vertices are boundary vertices."""
    thetas = 2 * math.pi * np.arange(n_theta) / n_theta
    zs = np.linspace(-height / 2, height / 2, n_z)
    verts = []
    for z in zs:
        for th in thetas:
            verts.append((radius * math.cos(th), radius * math.sin(th), z))
    tris = []
    for i in range(n_z - 1):
        for j in range(n_theta):
            a = i * n_theta + j
            b = i * n_theta + (j + 1) % n_theta
            c = a + n_theta
            d = b + n_theta
            tris.append((a, b, d))
            tris.append((a, d, c))
    return np.array(verts), np.array(tris, dtype=np.int64)
