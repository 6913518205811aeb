"""Central patterns for explicit fractal construction.

Every generator returns an ``(n, 2)`` integer array of ``(x, y)`` points in
signed coordinates about the DC origin, sorted by ``(y, x)`` and free of
duplicates so that the output is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

__all__ = ["PatternRecipe", "block", "disc", "bowtie", "spiral", "RECIPES"]


def _canonical(pts):
    pts = np.asarray(pts, dtype=np.int64).reshape(-1, 2)
    pts = np.unique(pts, axis=0)
    return pts[np.lexsort((pts[:, 0], pts[:, 1]))]


def _lattice(half_width):
    r = np.arange(-half_width, half_width + 1)
    x, y = np.meshgrid(r, r)
    return x.ravel(), y.ravel()


def block(half_width: int) -> np.ndarray:
    """All points with ``max(|x|, |y|) <= half_width``.

    ``half_width = N // 6`` covers the middle ninth of an ``N x N`` grid.
    """
    if half_width < 0:
        raise DomainError("half_width must be nonnegative")
    x, y = _lattice(half_width)
    return _canonical(np.stack([x, y], axis=1))


def disc(radius: float) -> np.ndarray:
    if radius < 0:
        raise DomainError("radius must be nonnegative")
    x, y = _lattice(int(np.floor(radius)))
    keep = x * x + y * y <= radius * radius
    return _canonical(np.stack([x[keep], y[keep]], axis=1))


def bowtie(half_width: int) -> np.ndarray:
    """Points with ``|y| <= |x| <= half_width``: two triangles meeting at the origin."""
    if half_width < 0:
        raise DomainError("half_width must be nonnegative")
    x, y = _lattice(half_width)
    keep = np.abs(y) <= np.abs(x)
    return _canonical(np.stack([x[keep], y[keep]], axis=1))


def spiral(radius: float, turns: float, arms: int = 1, symmetric: bool = False) -> np.ndarray:
    """Archimedean spiral from the origin out to ``radius``, rasterised.

    The curve is sampled at steps of at most a quarter pixel of arc length and
    rounded to the nearest lattice point. ``arms`` equally rotated copies are
    drawn; ``symmetric`` also adds the point reflection.
    """
    if radius <= 0 or turns <= 0 or arms < 1:
        raise DomainError("radius, turns and arms must be positive")
    theta_max = 2 * np.pi * turns
    n = int(np.ceil(4 * radius * theta_max)) + 2
    theta = np.linspace(0.0, theta_max, n)
    r = radius * theta / theta_max
    pts = []
    for k in range(arms):
        phase = 2 * np.pi * k / arms
        pts.append(np.stack([r * np.cos(theta + phase), r * np.sin(theta + phase)], axis=1))
    pts = np.rint(np.concatenate(pts)).astype(np.int64)
    if symmetric:
        pts = np.concatenate([pts, -pts])
    return _canonical(pts)


RECIPES = {"block": block, "disc": disc, "bowtie": bowtie, "spiral": spiral}


@dataclass(frozen=True)
class PatternRecipe:
    """Named pattern generator plus keyword parameters; JSON-friendly."""

    name: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.name not in RECIPES:
            raise DomainError(f"unknown pattern recipe {self.name!r}")

    def points(self) -> np.ndarray:
        return RECIPES[self.name](**self.params)

    def to_dict(self) -> dict:
        return {"recipe": self.name, "params": dict(self.params)}

    @classmethod
    def from_dict(cls, d: dict) -> "PatternRecipe":
        return cls(d["recipe"], dict(d.get("params", {})))
