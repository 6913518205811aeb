"""Fractal dimension, sampling fraction and mask comparison."""

from __future__ import annotations

import csv
import io
import json
import warnings
from dataclasses import asdict, dataclass

import numpy as np

from .builder import SamplingMask
from .errors import DomainError

__all__ = [
    "BoxCountReport",
    "MaskComparison",
    "default_box_sizes",
    "box_counts",
    "box_counting_dimension",
    "sampling_fraction",
    "reduction_factor",
    "mask_compare",
]

R2_WARN = 0.98


@dataclass(frozen=True)
class BoxCountReport:
    """Result of a box-counting fit.

    ``dimension`` is the least-squares slope of ``log(count)`` against
    ``log(1/size)``. Boxes are anchored at index ``(0, 0)``; ``anchor`` says
    whether partial boxes along the far edges were counted or cropped away.
    """

    sizes: tuple[int, ...]
    counts: tuple[int, ...]
    dimension: float
    intercept: float
    r2: float
    anchor: str = "origin, partial edge boxes counted"

    def to_json(self, **kw) -> str:
        return json.dumps(asdict(self), **kw)

    def to_csv(self) -> str:
        """Two columns, ``log_size`` and ``log_count`` (natural logs)."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["log_size", "log_count"])
        for s, c in zip(self.sizes, self.counts):
            w.writerow([repr(float(np.log(s))), repr(float(np.log(c)))])
        return buf.getvalue()


def default_box_sizes(rows: int, cols: int) -> list[int]:
    """Powers of two from 2 up to half the smaller grid side.

    Size 1 only measures the pixel raster and sizes above half the grid leave
    a single ragged strip, so both ends are dropped.
    """
    limit = min(rows, cols) // 2
    sizes = []
    s = 2
    while s <= limit:
        sizes.append(s)
        s *= 2
    return sizes


def _support(mask):
    if isinstance(mask, SamplingMask):
        return mask.support
    arr = np.asarray(mask)
    if arr.ndim != 2:
        raise DomainError("mask must be two-dimensional")
    return arr > 0


def box_counts(support: np.ndarray, size: int, edges: str = "pad") -> int:
    """Number of ``size x size`` boxes containing at least one sample.

    ``edges="pad"`` counts partial boxes on the far edges; ``"crop"`` drops
    the rows and columns that do not fill a whole box.
    """
    if edges == "crop":
        M, N = support.shape
        support = support[: M - M % size, : N - N % size]
    elif edges != "pad":
        raise DomainError(f"edges must be 'pad' or 'crop', got {edges!r}")
    M, N = support.shape
    pm, pn = -M % size, -N % size
    padded = np.pad(support, ((0, pm), (0, pn)))
    blocks = padded.reshape((M + pm) // size, size, (N + pn) // size, size)
    return int(blocks.any(axis=(1, 3)).sum())


def box_counting_dimension(mask, sizes=None, edges: str = "pad") -> BoxCountReport:
    """Minkowski-Bouligand dimension estimate by box counting.

    Parameters
    ----------
    mask : SamplingMask or 2D array
        Cells with a positive value count as sampled.
    sizes : sequence of int, optional
        Box side lengths; defaults to :func:`default_box_sizes`. At least
        three distinct sizes, none larger than the smaller grid side.
    edges : {"pad", "crop"}
        Count partial boxes on the far edges, or crop them away. Padding
        inflates coarse counts when a side is just over a power of two (a
        full 257 x 257 grid reads about 1.83); cropping is exact for full
        grids and lines but sees less of the mask.

    Warns when the fit has ``r2 < 0.98``.
    """
    support = _support(mask)
    M, N = support.shape
    if sizes is None:
        sizes = default_box_sizes(M, N)
    sizes = sorted({int(s) for s in sizes})
    if len(sizes) < 3:
        raise DomainError("box counting needs at least three distinct sizes")
    if sizes[0] < 1 or sizes[-1] > min(M, N):
        raise DomainError(f"box sizes must lie in [1, {min(M, N)}]")
    if not support.any():
        raise DomainError("box counting of an empty mask")
    counts = [box_counts(support, s, edges) for s in sizes]
    x = np.log(1.0 / np.asarray(sizes, dtype=float))
    y = np.log(np.asarray(counts, dtype=float))
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 if ss_tot == 0 else 1.0 - float((resid**2).sum()) / ss_tot
    if r2 < R2_WARN:
        warnings.warn(f"box-counting fit is poor (r2 = {r2:.4f})", stacklevel=2)
    anchor = "origin, partial edge boxes " + ("counted" if edges == "pad" else "cropped")
    return BoxCountReport(
        tuple(sizes), tuple(counts), float(slope) + 0.0, float(intercept), r2, anchor
    )


def sampling_fraction(mask) -> float:
    """Fraction of grid cells sampled at least once."""
    support = _support(mask)
    return float(support.sum()) / support.size


def reduction_factor(mask) -> float:
    """Reciprocal of the sampling fraction (``inf`` for an empty mask)."""
    f = sampling_fraction(mask)
    return float("inf") if f == 0 else 1.0 / f


@dataclass(frozen=True)
class MaskComparison:
    equal_support: bool
    symmetric_difference: int
    overlap_fraction: float


def mask_compare(a, b) -> MaskComparison:
    """Compare supports; ``overlap_fraction`` is intersection over union.

    Two empty masks compare as fully overlapping.
    """
    sa, sb = _support(a), _support(b)
    if sa.shape != sb.shape:
        raise DomainError(f"mask shapes differ: {sa.shape} vs {sb.shape}")
    diff = int((sa ^ sb).sum())
    union = int((sa | sb).sum())
    overlap = 1.0 if union == 0 else int((sa & sb).sum()) / union
    return MaskComparison(diff == 0, diff, overlap)
