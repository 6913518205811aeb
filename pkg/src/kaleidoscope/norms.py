"""Scores used to order direction vectors.

The order in which Farey vectors are taken decides the shape of the central
pattern of the resulting fractal: an L^p ball gives a superellipse, a linear
map applied before scoring stretches or rotates it, and the polygon gauge
gives an arbitrary star-shaped polygon.

All scores are positively homogeneous: ``score(t * v) == t * score(v)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .errors import DomainError, PolygonError
from .farey import GridVector

__all__ = [
    "LpNorm",
    "TransformedLpNorm",
    "PolygonNorm",
    "NormSpec",
    "StarPolygon",
    "lp_score",
    "transformed_score",
    "polygon_score",
    "sort_vectors",
    "sort_order",
    "rotation",
    "norm_from_dict",
]


def _as_points(v):
    v = np.asarray(v, dtype=float)
    if v.shape[-1] != 2:
        raise DomainError("vectors must have two components")
    return v


def _lp(pts, p):
    if not p > 0:
        raise DomainError(f"p must be positive, got {p}")
    a = np.abs(pts)
    if p == 1:
        return a[..., 0] + a[..., 1]
    if p == 2:
        return np.sqrt(a[..., 0] ** 2 + a[..., 1] ** 2)
    if np.isinf(p):
        return np.maximum(a[..., 0], a[..., 1])
    return (a[..., 0] ** p + a[..., 1] ** p) ** (1.0 / p)


def lp_score(v, p: float = 2.0):
    """``(|x|^p + |y|^p)^(1/p)``; a quasi-norm when ``p < 1``.

    Accepts a single vector or an ``(n, 2)`` array.
    """
    out = _lp(_as_points(v), p)
    return float(out) if out.ndim == 0 else out


def _check_matrix(matrix):
    matrix = np.asarray(matrix, dtype=float)
    if matrix.shape != (2, 2):
        raise DomainError("transform must be a 2x2 matrix")
    if abs(np.linalg.det(matrix)) <= 1e-12:
        raise DomainError("transform matrix is singular")
    return matrix


def transformed_score(v, matrix, p: float = 2.0):
    """L^p score of ``matrix @ v``.

    To dilate the central pattern by ``s`` along an axis, pass the inverse
    scaling (``1/s`` on that axis): vectors are compressed in score space, so
    more of them fit under the same threshold along that axis.
    """
    matrix = _check_matrix(matrix)
    return lp_score(_as_points(v) @ matrix.T, p)


def rotation(degrees: float) -> np.ndarray:
    """Anticlockwise rotation matrix."""
    t = np.radians(degrees)
    c, s = np.cos(t), np.sin(t)
    return np.array([[c, -s], [s, c]])


def _cross(a, b):
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


@dataclass(frozen=True)
class StarPolygon:
    """Polygon star-shaped about the origin, vertices counter-clockwise.

    Every consecutive vertex pair must turn strictly anticlockwise about the
    origin and the vertices must wind around it exactly once.
    """

    vertices: np.ndarray = field(repr=False)

    def __post_init__(self):
        verts = np.array(self.vertices, dtype=float)
        if verts.ndim != 2 or verts.shape[1] != 2:
            raise PolygonError("vertices must be a list of [x, y] pairs")
        if len(verts) < 3:
            raise PolygonError("a polygon needs at least three vertices")
        for i, v in enumerate(verts):
            if not np.all(np.isfinite(v)):
                raise PolygonError("coordinates must be finite", vertex=i)
            if v[0] == 0 and v[1] == 0:
                raise PolygonError("vertex coincides with the origin", vertex=i)
        nxt = np.roll(verts, -1, axis=0)
        cr = _cross(verts, nxt)
        for i in range(len(verts)):
            if cr[i] <= 0:
                raise PolygonError(
                    "origin is not strictly inside the kernel of the edge "
                    f"to vertex {(i + 1) % len(verts)}",
                    vertex=i,
                )
        turn = np.arctan2(cr, np.einsum("ij,ij->i", verts, nxt)).sum()
        if not np.isclose(turn, 2 * np.pi):
            raise PolygonError(
                f"vertices wind {turn / (2 * np.pi):.3g} times around the origin"
            )
        verts.setflags(write=False)
        object.__setattr__(self, "vertices", verts)

    def __len__(self):
        return len(self.vertices)

    @property
    def centrally_symmetric(self) -> bool:
        """True when the vertex set is closed under negation."""
        verts = self.vertices
        return all(np.any(np.all(np.isclose(verts, -v), axis=1)) for v in verts)

    @classmethod
    def regular(cls, n: int, radius: float = 1.0, phase: float = 0.0) -> "StarPolygon":
        t = phase + 2 * np.pi * np.arange(n) / n
        return cls(radius * np.stack([np.cos(t), np.sin(t)], axis=1))

    @classmethod
    def star(cls, points: int, outer: float, inner: float, phase: float = 0.0):
        """Star with ``points`` tips alternating between two radii."""
        n = 2 * points
        t = phase + 2 * np.pi * np.arange(n) / n
        r = np.where(np.arange(n) % 2 == 0, outer, inner)
        return cls(np.stack([r * np.cos(t), r * np.sin(t)], axis=1))

    def to_list(self) -> list[list[float]]:
        return self.vertices.tolist()


def polygon_score(v, poly: StarPolygon):
    """Smallest factor by which ``poly`` must be scaled to contain ``v``.

    The sector ``(v_i, v_{i+1})`` holding the direction of ``v`` is the one
    with ``cross(v_i, v) >= 0`` and ``cross(v, v_{i+1}) > 0``. Within it the
    answer is ``cross(v, d) / cross(v_i, d)`` where ``d = v_{i+1} - v_i``.
    """
    pts = _as_points(v)
    flat = np.atleast_2d(pts)
    if np.any(np.all(flat == 0, axis=1)):
        raise DomainError("polygon score is undefined for the zero vector")
    verts = poly.vertices
    out = np.full(len(flat), np.nan)
    for i in range(len(verts)):
        a, b = verts[i], verts[(i + 1) % len(verts)]
        inside = (_cross(a, flat) >= 0) & (_cross(flat, b) > 0) & np.isnan(out)
        if not inside.any():
            continue
        d = b - a
        out[inside] = _cross(flat[inside], d) / _cross(a, d)
    if np.isnan(out).any():
        raise PolygonError("polygon sectors do not cover every direction")
    return float(out[0]) if pts.ndim == 1 else out


@dataclass(frozen=True)
class LpNorm:
    p: float = 2.0

    def __post_init__(self):
        if not self.p > 0:
            raise DomainError(f"p must be positive, got {self.p}")

    def score(self, v):
        return lp_score(v, self.p)

    def to_dict(self):
        return {"kind": "lp", "p": self.p}


@dataclass(frozen=True)
class TransformedLpNorm:
    p: float
    matrix: tuple

    def __post_init__(self):
        if not self.p > 0:
            raise DomainError(f"p must be positive, got {self.p}")
        m = _check_matrix(self.matrix)
        object.__setattr__(self, "matrix", tuple(map(tuple, m.tolist())))

    def score(self, v):
        return transformed_score(v, self.matrix, self.p)

    def to_dict(self):
        return {"kind": "transformed_lp", "p": self.p, "matrix": [list(r) for r in self.matrix]}


@dataclass(frozen=True)
class PolygonNorm:
    polygon: StarPolygon

    def score(self, v):
        return polygon_score(v, self.polygon)

    def to_dict(self):
        return {"kind": "polygon", "vertices": self.polygon.to_list()}


NormSpec = Union[LpNorm, TransformedLpNorm, PolygonNorm]


def norm_from_dict(d: dict) -> NormSpec:
    kind = d.get("kind")
    if kind == "lp":
        return LpNorm(float(d["p"]))
    if kind == "transformed_lp":
        return TransformedLpNorm(float(d["p"]), d["matrix"])
    if kind == "polygon":
        return PolygonNorm(StarPolygon(d["vertices"]))
    raise DomainError(f"unknown norm kind {kind!r}")


def sort_order(x, y, spec: NormSpec) -> np.ndarray:
    """Indices sorting vectors by score, then angle, then ``(x, y)``."""
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    if np.any((x == 0) & (y == 0)):
        raise DomainError("cannot sort the zero vector")
    score = spec.score(np.stack([x, y], axis=-1))
    angle = np.arctan2(y, x)
    return np.lexsort((y, x, angle, score))


def sort_vectors(vecs: Sequence, spec: NormSpec) -> list[GridVector]:
    """Vectors in ascending score order with deterministic tie-breaking."""
    if len(vecs) == 0:
        return []
    arr = np.asarray(vecs, dtype=np.int64).reshape(-1, 2)
    idx = sort_order(arr[:, 0], arr[:, 1], spec)
    return [GridVector(int(a), int(b)) for a, b in arr[idx]]
