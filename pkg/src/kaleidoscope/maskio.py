"""Reading and writing masks, images, recipes and patterns.

Masks are stored as Netpbm rasters: PBM (``P4``) for the binary support and
PGM (``P5``) for hit counts, 8-bit or big-endian 16-bit depending on
``maxval``. Raster row 0 is mask row 0 (``y = 0``), so viewers show the DC
sample in the top-left corner. Plain-text ``P1``/``P2`` files are accepted on
read. Everything that is not a raster goes in a JSON sidecar.
"""

from __future__ import annotations

import csv
import hashlib
import json
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .builder import FractalSpec, SamplingMask, build
from .errors import DomainError, FormatError, PolygonError
from .norms import StarPolygon

__all__ = [
    "encode_mask",
    "decode_netpbm",
    "write_mask",
    "read_mask",
    "read_image",
    "write_image",
    "read_pattern",
    "read_polygon",
    "load_spec",
    "save_spec",
    "RunMetadata",
    "mask_digest",
    "write_metadata",
    "read_metadata",
    "rebuild_from_metadata",
]

_WS = b" \t\n\r\v\f"
_UMASK = os.umask(0)
os.umask(_UMASK)


def _atomic_write(path, data: bytes):
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.chmod(tmp, 0o666 & ~_UMASK)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def encode_mask(mask, fmt: str = "pgm") -> bytes:
    """Serialise a mask (or 2D integer array) as PBM or PGM bytes."""
    counts = mask.counts if isinstance(mask, SamplingMask) else np.asarray(mask)
    M, N = counts.shape
    fmt = fmt.lower()
    if fmt == "pbm":
        bits = np.packbits(counts >= 1, axis=1)
        return f"P4\n{N} {M}\n".encode() + bits.tobytes()
    if fmt == "pgm":
        top = int(counts.max()) if counts.size else 0
        if counts.size and counts.min() < 0:
            raise FormatError("PGM cannot store negative counts")
        maxval = max(top, 1)
        if maxval > 65535:
            raise FormatError(f"count {top} exceeds the PGM maximum 65535")
        dtype = ">u1" if maxval < 256 else ">u2"
        header = f"P5\n{N} {M}\n{maxval}\n".encode()
        return header + counts.astype(dtype).tobytes()
    raise DomainError(f"unknown mask format {fmt!r}")


class _Header:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 2

    def _skip(self):
        data = self.data
        while self.pos < len(data):
            c = data[self.pos]
            if c == ord("#"):
                end = data.find(b"\n", self.pos)
                self.pos = len(data) if end < 0 else end + 1
            elif c in _WS:
                self.pos += 1
            else:
                break

    def integer(self, what):
        self._skip()
        start = self.pos
        while self.pos < len(self.data) and self.data[self.pos : self.pos + 1].isdigit():
            self.pos += 1
        if self.pos == start:
            raise FormatError(f"expected {what} in header", offset=start)
        return int(self.data[start : self.pos])

    def end(self):
        # exactly one whitespace byte separates the header from the raster
        if self.pos >= len(self.data) or self.data[self.pos] not in _WS:
            raise FormatError("missing whitespace after header", offset=self.pos)
        self.pos += 1
        return self.pos


def decode_netpbm(data: bytes) -> np.ndarray:
    """Decode P1/P2/P4/P5 bytes into an ``int64`` array (PBM: 1 = sampled)."""
    magic = data[:2]
    if magic not in (b"P1", b"P2", b"P4", b"P5"):
        raise FormatError(f"unsupported magic number {magic!r}", offset=0)
    hdr = _Header(data)
    N = hdr.integer("width")
    M = hdr.integer("height")
    if N < 1 or M < 1:
        raise FormatError("image dimensions must be positive", offset=hdr.pos)
    maxval = 1
    if magic in (b"P2", b"P5"):
        maxval = hdr.integer("maxval")
        if not 0 < maxval < 65536:
            raise FormatError(f"maxval {maxval} out of range", offset=hdr.pos)
    start = hdr.end()
    body = data[start:]
    if magic == b"P4":
        stride = -(-N // 8)
        need = stride * M
        if len(body) < need:
            raise FormatError(f"truncated raster: {len(body)} of {need} bytes", offset=len(data))
        bits = np.frombuffer(body[:need], dtype=np.uint8).reshape(M, stride)
        return np.unpackbits(bits, axis=1)[:, :N].astype(np.int64)
    width = None
    if magic == b"P5":
        width = 1 if maxval < 256 else 2
        need = M * N * width
        if len(body) < need:
            raise FormatError(f"truncated raster: {len(body)} of {need} bytes", offset=len(data))
        arr = np.frombuffer(body[:need], dtype=">u1" if width == 1 else ">u2")
        arr = arr.reshape(M, N).astype(np.int64)
    else:
        tokens = body.replace(b"\n", b" ").split() if magic == b"P2" else [
            bytes([c]) for c in body if c in b"01"
        ]
        if len(tokens) < M * N:
            raise FormatError(f"truncated raster: {len(tokens)} of {M * N} samples", offset=len(data))
        arr = np.array([int(t) for t in tokens[: M * N]], dtype=np.int64).reshape(M, N)
    if arr.size and arr.max() > maxval:
        bad = int(np.argmax(arr.ravel() > maxval))
        raise FormatError(
            f"sample {bad} = {int(arr.ravel()[bad])} exceeds maxval {maxval}",
            offset=None if width is None else start + bad * width,
        )
    return arr


def write_mask(mask, path, fmt: str | None = None) -> None:
    """Write a mask atomically; ``fmt`` defaults to the file extension."""
    fmt = fmt or Path(path).suffix.lstrip(".") or "pgm"
    _atomic_write(path, encode_mask(mask, fmt))


def read_mask(path) -> SamplingMask:
    return SamplingMask(decode_netpbm(Path(path).read_bytes()))


def read_image(path) -> np.ndarray:
    """Load a 2D array from ``.npy`` or any supported Netpbm file."""
    path = Path(path)
    if path.suffix == ".npy":
        arr = np.load(path)
        if arr.ndim != 2:
            raise FormatError(f"{path} does not hold a 2D array")
        return arr
    return decode_netpbm(path.read_bytes())


def write_image(arr, path) -> None:
    """Save to ``.npy`` (any values) or PGM/PBM (nonnegative integers)."""
    path = Path(path)
    arr = np.asarray(arr)
    if path.suffix == ".npy":
        with tempfile.NamedTemporaryFile(dir=path.parent, suffix=".npy", delete=False) as fh:
            np.save(fh, arr)
        os.replace(fh.name, path)
        return
    rounded = np.rint(arr)
    if not np.allclose(arr, rounded):
        raise FormatError("Netpbm output needs integer samples; use .npy instead")
    write_mask(rounded.astype(np.int64), path)


def _load_pairs(path):
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".json" or text.lstrip().startswith("["):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid JSON: {exc.msg}", offset=exc.pos) from None
        if isinstance(data, dict):
            data = data.get("points", data.get("vertices"))
        pairs = data
    else:
        pairs = []
        for row in csv.reader(line for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")):
            try:
                pairs.append([float(row[0]), float(row[1])])
            except (ValueError, IndexError):
                if pairs:
                    raise FormatError(f"bad CSV row {row!r}") from None
                # header line
    if not isinstance(pairs, list) or not all(
        isinstance(p, (list, tuple)) and len(p) == 2 for p in pairs
    ):
        raise FormatError("expected an array of [x, y] pairs")
    return pairs


def read_pattern(path, dims=None) -> np.ndarray:
    """Integer ``(x, y)`` points from JSON or CSV; optional grid bounds check.

    With ``dims = (M, N)`` each point must satisfy ``|x| < N`` and ``|y| < M``.
    """
    pairs = _load_pairs(path)
    pts = np.asarray(pairs, dtype=float).reshape(-1, 2)
    if not np.all(pts == np.rint(pts)):
        raise FormatError("pattern points must be integers")
    pts = pts.astype(np.int64)
    if dims is not None:
        M, N = dims
        for i, (x, y) in enumerate(pts):
            if abs(x) >= N or abs(y) >= M:
                raise DomainError(f"point {i} = {(int(x), int(y))} lies outside the {M}x{N} grid")
    return pts


def read_polygon(path) -> StarPolygon:
    """Star polygon from a JSON array of ``[x, y]`` vertices (counter-clockwise)."""
    pairs = _load_pairs(path)
    for i, p in enumerate(pairs):
        if not all(isinstance(c, (int, float)) for c in p):
            raise PolygonError("coordinates must be numbers", vertex=i)
    return StarPolygon(pairs)


def save_spec(spec: FractalSpec, path) -> None:
    _atomic_write(path, (json.dumps(spec.to_dict(), indent=2) + "\n").encode())


def load_spec(path) -> FractalSpec:
    data = json.loads(Path(path).read_text())
    return FractalSpec.from_dict(data.get("spec", data))


def mask_digest(mask) -> str:
    """SHA-256 of the PGM encoding of the counts."""
    return hashlib.sha256(encode_mask(mask, "pgm")).hexdigest()


@dataclass(frozen=True)
class RunMetadata:
    spec: FractalSpec
    R: int | None
    katz: float | None
    sampling_fraction: float
    digest: str
    version: str = __version__
    generators: list | None = None
    multipliers: list | None = None

    @classmethod
    def from_mask(cls, spec: FractalSpec, mask: SamplingMask) -> "RunMetadata":
        from .analysis import sampling_fraction

        return cls(
            spec=spec,
            R=mask.R,
            katz=mask.katz,
            sampling_fraction=sampling_fraction(mask),
            digest=mask_digest(mask),
            generators=None if mask.generators is None else mask.generators.tolist(),
            multipliers=None if mask.multipliers is None else list(mask.multipliers),
        )

    def to_dict(self) -> dict:
        return {
            "tool": "kaleidoscope",
            "version": self.version,
            "spec": self.spec.to_dict(),
            "R": self.R,
            "katz": self.katz,
            "sampling_fraction": self.sampling_fraction,
            "sha256": self.digest,
            "generators": self.generators,
            "multipliers": self.multipliers,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "RunMetadata":
        return cls(
            spec=FractalSpec.from_dict(d["spec"]),
            R=d.get("R"),
            katz=d.get("katz"),
            sampling_fraction=d.get("sampling_fraction", float("nan")),
            digest=d.get("sha256", ""),
            version=d.get("version", ""),
            generators=d.get("generators"),
            multipliers=d.get("multipliers"),
        )


def write_metadata(meta: RunMetadata, path) -> None:
    _atomic_write(path, (json.dumps(meta.to_dict(), indent=2) + "\n").encode())


def read_metadata(path) -> RunMetadata:
    return RunMetadata.from_dict(json.loads(Path(path).read_text()))


def rebuild_from_metadata(meta) -> SamplingMask:
    """Rebuild the mask described by ``meta`` and check its digest."""
    if not isinstance(meta, RunMetadata):
        meta = read_metadata(meta)
    mask = build(meta.spec)
    if meta.digest and mask_digest(mask) != meta.digest:
        raise FormatError("rebuilt mask does not match the recorded digest")
    return mask
