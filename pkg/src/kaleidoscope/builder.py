"""Sampling-mask construction.

Grid convention: a point ``(x, y)`` is ``x`` columns across and ``y`` rows up
from the origin, stored at ``counts[y % M, x % N]`` of an ``M x N`` array. The
DC term sits at ``counts[0, 0]``; use ``np.fft.fftshift`` to centre it for
display.

Three constructions are provided:

* :func:`build_from_lines` superposes the periodic lines generated by the
  lowest-scoring direction vectors, stopping at the requested Katz number.
* :func:`build_from_scaled_images` superposes ``ceil(N/2)`` scaled copies of
  the same vector set (with reflections). Its support equals the line build.
* :func:`build_explicit` superposes multiples of an arbitrary point pattern,
  optionally only those multipliers that act as unity-smear kaleidoscope
  transforms.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, PolygonError, UnsatisfiableTargetError
from .farey import farey_arrays, half_plane_orbit
from .kmap import divisors
from .norms import LpNorm, NormSpec, PolygonNorm, norm_from_dict, sort_order
from . import patterns

__all__ = [
    "Mode",
    "SamplingMask",
    "FractalSpec",
    "periodic_line",
    "line_span",
    "katz_number",
    "select_prefix",
    "candidate_vectors",
    "select_vectors",
    "scaled_image",
    "build_from_lines",
    "build_from_scaled_images",
    "build_explicit",
    "explicit_multipliers",
    "build",
]


class Mode(str, enum.Enum):
    LINES = "lines"
    SCALED = "scaled"
    EXPLICIT = "explicit"


@dataclass
class SamplingMask:
    """Hit counts over an ``M x N`` grid of DFT samples.

    ``generators`` holds the selected direction vectors (line-based builds)
    and ``multipliers`` the scale factors used (explicit builds).
    """

    counts: np.ndarray
    generators: np.ndarray | None = None
    katz: float | None = None
    multipliers: tuple[int, ...] | None = None

    def __post_init__(self):
        counts = np.asarray(self.counts)
        if counts.ndim != 2 or 0 in counts.shape:
            raise DomainError("mask counts must be a non-empty 2D array")
        if counts.size and counts.min() < 0:
            raise DomainError("mask counts must be nonnegative")
        self.counts = counts.astype(np.int64, copy=False)

    @property
    def shape(self) -> tuple[int, int]:
        return self.counts.shape

    @property
    def rows(self) -> int:
        return self.counts.shape[0]

    @property
    def cols(self) -> int:
        return self.counts.shape[1]

    @property
    def R(self) -> int | None:
        return None if self.generators is None else len(self.generators)

    @property
    def support(self) -> np.ndarray:
        return self.counts >= 1

    def binarize(self) -> "SamplingMask":
        return SamplingMask(self.support.astype(np.int64))

    def __eq__(self, other):
        if not isinstance(other, SamplingMask):
            return NotImplemented
        return np.array_equal(self.counts, other.counts)

    @classmethod
    def empty(cls, rows: int, cols: int) -> "SamplingMask":
        return cls(np.zeros((rows, cols), dtype=np.int64))


@dataclass(frozen=True)
class FractalSpec:
    """Complete recipe for one mask.

    ``pattern`` is used only by the explicit mode and is either a point array
    or a :class:`~kaleidoscope.patterns.PatternRecipe`. ``smear`` restricts
    explicit unity-smear multipliers to one sign (``+1``: divisors of
    ``m*N + 1``; ``-1``: divisors of ``m*N - 1``). ``order`` overrides the
    Farey order, which defaults to ``max(rows, cols)``.
    """

    rows: int
    cols: int
    norm: NormSpec | None = field(default_factory=LpNorm)
    pattern: object = None
    katz: float = 1.0
    mode: Mode = Mode.LINES
    unity_only: bool = False
    m_max: int = 1
    smear: int | None = None
    order: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        if self.rows < 1 or self.cols < 1:
            raise DomainError("grid dimensions must be positive")
        if not self.katz > 0:
            raise DomainError(f"Katz target must be positive, got {self.katz}")
        if self.m_max < 1:
            raise DomainError("m_max must be >= 1")
        if self.smear not in (None, 1, -1):
            raise DomainError("smear restriction must be +1 or -1")
        if self.mode is Mode.EXPLICIT:
            if self.pattern is None:
                raise DomainError("explicit mode needs a pattern")
        else:
            if self.pattern is not None:
                raise DomainError("an explicit pattern requires explicit mode")
            if self.norm is None:
                raise DomainError(f"{self.mode.value} mode needs a norm")
        if isinstance(self.pattern, (list, tuple, np.ndarray)):
            pts = np.asarray(self.pattern, dtype=np.int64).reshape(-1, 2)
            pts.setflags(write=False)
            object.__setattr__(self, "pattern", pts)

    @property
    def dims(self) -> tuple[int, int]:
        return self.rows, self.cols

    def pattern_points(self) -> np.ndarray:
        if isinstance(self.pattern, patterns.PatternRecipe):
            return self.pattern.points()
        return self.pattern

    def to_dict(self) -> dict:
        d = {
            "rows": self.rows,
            "cols": self.cols,
            "mode": self.mode.value,
            "katz": self.katz,
            "unity_only": self.unity_only,
            "m_max": self.m_max,
            "smear": self.smear,
            "order": self.order,
            "norm": None if self.norm is None else self.norm.to_dict(),
        }
        if self.mode is Mode.EXPLICIT:
            d["norm"] = None
            if isinstance(self.pattern, patterns.PatternRecipe):
                d["pattern"] = self.pattern.to_dict()
            else:
                d["pattern"] = self.pattern.tolist()
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "FractalSpec":
        mode = Mode(d.get("mode", "lines"))
        pattern = d.get("pattern")
        if isinstance(pattern, dict):
            pattern = patterns.PatternRecipe.from_dict(pattern)
        norm = d.get("norm")
        if norm is not None:
            norm = norm_from_dict(norm)
        elif mode is not Mode.EXPLICIT:
            norm = LpNorm()
        return cls(
            rows=int(d["rows"]),
            cols=int(d["cols"]),
            norm=norm,
            pattern=pattern,
            katz=float(d.get("katz", 1.0)),
            mode=mode,
            unity_only=bool(d.get("unity_only", False)),
            m_max=int(d.get("m_max", 1)),
            smear=d.get("smear"),
            order=d.get("order"),
        )


def _dims(dims):
    if isinstance(dims, int):
        return dims, dims
    M, N = dims
    if M < 1 or N < 1:
        raise DomainError("grid dimensions must be positive")
    return int(M), int(N)


def periodic_line(v, dims, span: int | None = None) -> np.ndarray:
    """Multiples ``k * v`` wrapped onto the grid, as ``(x, y)`` rows.

    ``dims`` is ``(M, N)`` (rows, cols) or a single int for a square grid.
    By default ``k`` runs over one full period, giving
    ``lcm(N / gcd(x, N), M / gcd(y, M))`` points. With ``span`` only
    ``-span <= k <= span`` is used (duplicates removed).
    """
    M, N = _dims(dims)
    x, y = int(v[0]), int(v[1])
    if x % N == 0 and y % M == 0:
        raise DomainError(f"vector {(x, y)} is zero on a {M}x{N} grid")
    if span is None:
        period = math.lcm(N // math.gcd(x, N), M // math.gcd(y, M))
        k = np.arange(period, dtype=np.int64)
        return np.stack([(k * x) % N, (k * y) % M], axis=1)
    k = np.arange(-span, span + 1, dtype=np.int64)
    keys = np.unique(((k * y) % M) * N + (k * x) % N)
    return np.stack([keys % N, keys // N], axis=1)


def line_span(dims) -> int | None:
    """Multiples used per line by :func:`build_from_lines`.

    ``None`` (the full period) on square grids. On an ``M x N`` grid with
    ``M != N`` a full period can wrap over the whole torus (for coprime sides
    it visits every cell), so lines are cut to ``|k| <= max(M, N) // 2``: the
    same multiples that the superposed scaled images of the central pattern
    contain.
    """
    M, N = _dims(dims)
    return None if M == N else max(M, N) // 2


def katz_number(vecs, N: int, M: int | None = None) -> float:
    """``max(sum|y| / M, sum|x| / N)``; ``M`` defaults to ``N``.

    The direction vectors are ``(x, y) = (b, a)`` so the column sum is
    compared with the grid width and the row sum with its height.
    """
    arr = np.asarray(vecs, dtype=np.int64).reshape(-1, 2)
    if len(arr) == 0:
        raise DomainError("Katz number of an empty vector set")
    M = N if M is None else M
    return max(np.abs(arr[:, 1]).sum() / M, np.abs(arr[:, 0]).sum() / N)


def _cumulative_katz(arr, N, M):
    a = np.cumsum(np.abs(arr[:, 1])) / M
    b = np.cumsum(np.abs(arr[:, 0])) / N
    return np.maximum(a, b)


def select_prefix(sorted_vecs, N: int, K_target: float = 1.0, M: int | None = None):
    """Shortest prefix whose Katz number reaches ``K_target``.

    Returns ``(prefix, R, K)`` with ``prefix`` an ``(R, 2)`` array.
    """
    if not K_target > 0:
        raise DomainError("Katz target must be positive")
    arr = np.asarray(sorted_vecs, dtype=np.int64).reshape(-1, 2)
    if len(arr) == 0:
        raise UnsatisfiableTargetError(K_target, 0.0)
    M = N if M is None else M
    ks = _cumulative_katz(arr, N, M)
    # a relative epsilon keeps exact rational hits (e.g. sum == N) on target
    hit = np.flatnonzero(ks >= K_target * (1 - 1e-12))
    if hit.size == 0:
        raise UnsatisfiableTargetError(K_target, float(ks[-1]))
    R = int(hit[0]) + 1
    return arr[:R], R, float(ks[R - 1])


def candidate_vectors(rows: int, cols: int, norm: NormSpec, order: int | None = None):
    """Sorted half-plane direction vectors from the Farey sequence.

    One generator per line: of ``v`` and ``-v`` only the one with ``y > 0``
    (or ``y == 0, x > 0``) is kept. Returns an ``(n, 2)`` array of ``(x, y)``.
    """
    if isinstance(norm, PolygonNorm) and not norm.polygon.centrally_symmetric:
        raise PolygonError(
            "periodic-line patterns need a polygon symmetric under 180 degree rotation"
        )
    order = max(rows, cols) if order is None else order
    num, den = farey_arrays(order)
    x, y = half_plane_orbit(den, num)
    idx = sort_order(x, y, norm)
    return np.stack([x[idx], y[idx]], axis=1)


def select_vectors(spec: FractalSpec):
    """Candidate vectors of ``spec`` cut at its Katz target: ``(prefix, R, K)``."""
    cand = candidate_vectors(spec.rows, spec.cols, spec.norm, spec.order)
    return select_prefix(cand, spec.cols, spec.katz, M=spec.rows)


def _accumulate(counts, pts):
    M, N = counts.shape
    np.add.at(counts.ravel(), (pts[:, 1] % M) * N + (pts[:, 0] % N), 1)


def _grid_condition_warning(M, N):
    if M == N:
        return
    if not any(math.gcd(M + s, N + t) > 1 for s in (-1, 1) for t in (-1, 1)):
        warnings.warn(
            f"for a {M}x{N} grid no pair M+-1, N+-1 shares a factor; "
            "no multiplier is a unity-smear transform on both axes",
            stacklevel=3,
        )


def build_from_lines(spec: FractalSpec) -> SamplingMask:
    """Superpose the periodic lines of the selected generators."""
    if spec.mode is not Mode.LINES:
        raise DomainError(f"spec mode is {spec.mode.value}, expected lines")
    _grid_condition_warning(spec.rows, spec.cols)
    vecs, R, K = select_vectors(spec)
    counts = np.zeros(spec.dims, dtype=np.int64)
    span = line_span(spec.dims)
    for v in vecs:
        _accumulate(counts, periodic_line(v, spec.dims, span))
    return SamplingMask(counts, generators=vecs, katz=K)


def scaled_image(vecs, m: int, dims, reflect: bool = True) -> np.ndarray:
    """Points ``m * v`` (and ``-m * v``) for every generator, deduplicated."""
    M, N = _dims(dims)
    arr = np.asarray(vecs, dtype=np.int64).reshape(-1, 2)
    pts = m * arr
    if reflect:
        pts = np.concatenate([pts, -pts])
    keys = np.unique((pts[:, 1] % M) * N + (pts[:, 0] % N))
    return np.stack([keys % N, keys // N], axis=1)


def build_from_scaled_images(spec: FractalSpec) -> SamplingMask:
    """Superpose ``ceil(N/2)`` scaled images of the selected generators.

    Image ``m`` holds ``m * v`` and its reflection for every generator; the
    origin is added once. Counts differ from the line build (a point hit by
    ``m v`` and ``-m v`` counts once per image) but the support is the same.
    """
    if spec.mode is not Mode.SCALED:
        raise DomainError(f"spec mode is {spec.mode.value}, expected scaled")
    if spec.rows != spec.cols:
        raise DomainError("scaled-image construction needs a square grid")
    vecs, R, K = select_vectors(spec)
    N = spec.cols
    counts = np.zeros(spec.dims, dtype=np.int64)
    for m in range(1, -(-N // 2) + 1):
        _accumulate(counts, scaled_image(vecs, m, N))
    counts[0, 0] += 1
    return SamplingMask(counts, generators=vecs, katz=K)


def _unity_set(n, m_max, signs):
    out = set()
    for m in range(1, m_max + 1):
        for s in signs:
            out.update(L for L in divisors(m * n + s) if L >= 2)
    return out


def explicit_multipliers(dims, unity_only: bool = False, m_max: int = 1,
                         smear: int | None = None) -> list[int]:
    """Multipliers used by :func:`build_explicit`.

    Without ``unity_only``: ``1 .. ceil(max(M, N) / 2)``. With it: ``1`` (the
    identity transform) plus every ``L`` dividing ``m*N +- 1`` and
    ``m'*M +- 1`` for some ``m, m' <= m_max``. Multipliers that act
    identically on the grid (same residues mod ``N`` and ``M``) are merged,
    keeping the smallest.
    """
    M, N = _dims(dims)
    if not unity_only:
        return list(range(1, -(-max(M, N) // 2) + 1))
    signs = (-1, 1) if smear is None else (smear,)
    common = _unity_set(N, m_max, signs)
    if M != N:
        common &= _unity_set(M, m_max, signs)
    seen = {}
    for L in sorted(common | {1}):
        seen.setdefault((L % N, L % M), L)
    return sorted(seen.values())


def build_explicit(pattern, dims, unity_only: bool = False, m_max: int = 1,
                   smear: int | None = None) -> SamplingMask:
    """Superpose scaled copies ``L * p`` of a point pattern.

    ``pattern`` holds ``(x, y)`` points, signed or in ``[0, N)``; each
    multiplier adds one to every distinct cell of its copy.
    """
    M, N = _dims(dims)
    pts = np.asarray(pattern, dtype=np.int64).reshape(-1, 2)
    if len(pts) == 0:
        raise DomainError("explicit pattern is empty")
    if np.any((np.abs(pts[:, 0]) >= N) | (np.abs(pts[:, 1]) >= M)):
        raise DomainError(f"pattern points fall outside the {M}x{N} grid")
    _grid_condition_warning(M, N)
    mults = explicit_multipliers((M, N), unity_only, m_max, smear)
    counts = np.zeros((M, N), dtype=np.int64)
    for L in mults:
        _accumulate(counts, scaled_image(pts, L, (M, N), reflect=False))
    return SamplingMask(counts, multipliers=tuple(mults))


def build(spec: FractalSpec) -> SamplingMask:
    """Dispatch on ``spec.mode``."""
    if spec.mode is Mode.LINES:
        return build_from_lines(spec)
    if spec.mode is Mode.SCALED:
        return build_from_scaled_images(spec)
    return build_explicit(
        spec.pattern_points(), spec.dims, spec.unity_only, spec.m_max, spec.smear
    )


def line_spec(N: int, norm: NormSpec | None = None, katz: float = 1.0, **kw) -> FractalSpec:
    """Shorthand for a square line-based spec."""
    return FractalSpec(N, N, norm=norm or LpNorm(), katz=katz, **kw)
