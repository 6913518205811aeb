"""Farey sequences and the direction vectors they generate."""

from __future__ import annotations

from typing import Iterable, NamedTuple

import numpy as np

from .errors import DomainError

__all__ = [
    "FareyFraction",
    "GridVector",
    "farey_arrays",
    "farey_sequence",
    "mediant",
    "verify_farey",
    "to_grid_vectors",
    "symmetrize_octant",
    "orbit_arrays",
    "half_plane",
    "half_plane_orbit",
]


class FareyFraction(NamedTuple):
    num: int
    den: int

    def __float__(self):
        return self.num / self.den

    def __str__(self):
        return f"{self.num}/{self.den}"


class GridVector(NamedTuple):
    """Integer direction: ``x`` pixels across and ``y`` pixels up."""

    x: int
    y: int


def mediant(f: FareyFraction, g: FareyFraction) -> FareyFraction:
    return FareyFraction(f.num + g.num, f.den + g.den)


def farey_arrays(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Numerators and denominators of F_order in ascending order."""
    if order < 1:
        raise DomainError(f"Farey order must be >= 1, got {order}")
    counts = np.arange(2, order + 2)
    den = np.repeat(np.arange(1, order + 1, dtype=np.int64), counts)
    num = np.arange(den.size, dtype=np.int64) - np.repeat(np.cumsum(counts) - counts, counts)
    keep = np.gcd(num, den) == 1
    num, den = num[keep], den[keep]
    # exact rational ordering: sort by value, values are distinct once reduced
    order_idx = np.argsort(num / den, kind="stable")
    num, den = num[order_idx], den[order_idx]
    verify_farey(num, den)
    return num, den


def verify_farey(num, den) -> None:
    """Check neighbour determinants and the mediant property of a Farey sequence.

    Every consecutive pair p/q < r/s must satisfy ``r*q - p*s == 1`` and every
    interior term must equal the mediant of its neighbours after reduction.
    """
    num = np.asarray(num, dtype=np.int64)
    den = np.asarray(den, dtype=np.int64)
    if num.size < 2:
        raise DomainError("a Farey sequence has at least two terms")
    det = num[1:] * den[:-1] - num[:-1] * den[1:]
    if not np.all(det == 1):
        bad = int(np.flatnonzero(det != 1)[0])
        raise AssertionError(f"neighbour determinant fails between terms {bad} and {bad + 1}")
    lhs = num[1:-1] * (den[:-2] + den[2:])
    rhs = den[1:-1] * (num[:-2] + num[2:])
    if not np.array_equal(lhs, rhs):
        bad = int(np.flatnonzero(lhs != rhs)[0]) + 1
        raise AssertionError(f"term {bad} is not the mediant of its neighbours")


def farey_sequence(order: int) -> list[FareyFraction]:
    """F_order: all irreducible ``a/b`` in [0, 1] with ``b <= order``, ascending.

    >>> [str(f) for f in farey_sequence(3)]
    ['0/1', '1/3', '1/2', '2/3', '1/1']
    """
    num, den = farey_arrays(order)
    return [FareyFraction(int(a), int(b)) for a, b in zip(num, den)]


def to_grid_vectors(fracs: Iterable[FareyFraction]) -> list[GridVector]:
    """Map each fraction ``a/b`` to the vector ``(b, a)``."""
    return [GridVector(int(f[1]), int(f[0])) for f in fracs]


def _orbit(x, y):
    return [(x, y), (y, x), (-y, x), (-x, y), (-x, -y), (-y, -x), (y, -x), (x, -y)]


def symmetrize_octant(vecs: Iterable[GridVector]) -> list[GridVector]:
    """Deduplicated orbit of first-octant vectors under the 8 grid symmetries.

    Order is deterministic: input order, then the orbit in counter-clockwise
    order starting at the input vector.
    """
    out: dict[GridVector, None] = {}
    for v in vecs:
        x, y = int(v[0]), int(v[1])
        if not 0 <= y <= x:
            raise DomainError(f"vector {(x, y)} is not in the first octant")
        for w in _orbit(x, y):
            out.setdefault(GridVector(*w), None)
    return list(out)


def _unique_pairs(x, y):
    span = int(max(np.abs(x).max(initial=0), np.abs(y).max(initial=0)))
    width = 2 * span + 1
    keys = np.unique((x + span) * width + (y + span))
    return keys // width - span, keys % width - span


def orbit_arrays(x, y) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised :func:`symmetrize_octant` for first-octant integer arrays.

    Output is sorted by ``(x, y)`` rather than in orbit order.
    """
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    if np.any((y < 0) | (y > x)):
        raise DomainError("vectors must lie in the first octant")
    orbit = _orbit(x, y)
    return _unique_pairs(
        np.concatenate([p[0] for p in orbit]), np.concatenate([p[1] for p in orbit])
    )


def half_plane(x, y) -> tuple[np.ndarray, np.ndarray]:
    """Keep one vector from each ``{v, -v}`` pair: ``y > 0``, or ``y == 0, x > 0``.

    ``v`` and ``-v`` generate the same periodic line.
    """
    x = np.asarray(x)
    y = np.asarray(y)
    keep = (y > 0) | ((y == 0) & (x > 0))
    return x[keep], y[keep]


def half_plane_orbit(x, y) -> tuple[np.ndarray, np.ndarray]:
    """``half_plane(*orbit_arrays(x, y))`` without building the full orbit."""
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    if np.any((y < 0) | (y > x)):
        raise DomainError("vectors must lie in the first octant")
    # the other four orbit members are the negatives of these
    return half_plane(*_unique_pairs(np.concatenate([x, y, -y, -x]), np.concatenate([y, x, x, y])))
