"""Kaleidoscope mappings and transforms.

The nu, sigma kaleidoscope mapping over Z_N sends index ``n`` to::

    (L * (n mod nu) + sigma * floor(n / nu)) mod N

where ``L = ceil(N / nu)`` for the upper branch and ``floor(N / nu)`` for the
lower branch. The kaleidoscope transform moves every sample of a sequence to
its mapped position and sums collisions. With ``sigma = 1`` and ``nu | N`` it is
exactly "take the nu downsampled subsequences and concatenate them".

When ``N = L * nu - sigma`` with ``|sigma| < nu`` the mapping reduces to
multiplication by ``L`` modulo ``N``; :func:`params_from_multiplier` and
:func:`unity_smear_multipliers` expose that correspondence.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParameterError

__all__ = [
    "Branch",
    "KaleidoscopeParams",
    "MultiplierDecomposition",
    "UnityMultiplier",
    "kappa_upper",
    "kappa_lower",
    "kappa",
    "kappa_table",
    "kt_1d",
    "kt_2d",
    "params_from_multiplier",
    "unity_smear_multipliers",
    "downsample_concat_oracle",
    "divisors",
]


class Branch(enum.Enum):
    UPPER = "upper"
    LOWER = "lower"


@dataclass(frozen=True)
class KaleidoscopeParams:
    """Parameters of one kaleidoscope mapping over Z_N.

    ``branch`` may be left as ``None``; it then follows the sign of ``smear``
    (upper for ``smear >= 0``, lower for ``smear < 0``).
    """

    modulus: int
    downsample: int
    smear: int
    branch: Branch | None = None

    def __post_init__(self):
        for name in ("modulus", "downsample", "smear"):
            if not isinstance(getattr(self, name), (int, np.integer)):
                raise ParameterError(f"{name} must be an integer")
        if self.modulus < 1:
            raise ParameterError(f"modulus must be >= 1, got {self.modulus}")
        if self.downsample < 1:
            raise ParameterError(f"downsample must be >= 1, got {self.downsample}")
        branch = self.branch
        if branch is None:
            branch = Branch.LOWER if self.smear < 0 else Branch.UPPER
        elif isinstance(branch, str):
            branch = Branch(branch.lower())
        if self.smear > 0 and branch is not Branch.UPPER:
            raise ParameterError("positive smear requires the upper branch")
        if self.smear < 0 and branch is not Branch.LOWER:
            raise ParameterError("negative smear requires the lower branch")
        object.__setattr__(self, "branch", branch)

    @property
    def block(self) -> int:
        """Length of each downsampled block: ceil(N/nu) or floor(N/nu)."""
        N, nu = self.modulus, self.downsample
        if self.branch is Branch.UPPER:
            return -(-N // nu)
        return N // nu

    @classmethod
    def identity(cls, modulus: int) -> "KaleidoscopeParams":
        return cls(modulus, 1, 1)


@dataclass(frozen=True)
class MultiplierDecomposition:
    multiplier: int
    params: KaleidoscopeParams


@dataclass(frozen=True)
class UnityMultiplier:
    """A multiplier ``L`` dividing ``m*N + sign``; ``exact`` when ``m == 1``."""

    multiplier: int
    m: int
    sign: int

    @property
    def exact(self) -> bool:
        return self.m == 1

    @property
    def smear(self) -> int:
        # L | mN + 1  <=>  mN = L*nu - 1, i.e. sigma = +1
        return self.sign


def _check_index(n, N):
    n = np.asarray(n)
    if not np.issubdtype(n.dtype, np.integer):
        raise DomainError("indices must be integers")
    if n.size and (n.min() < 0 or n.max() >= N):
        raise DomainError(f"index out of range for Z_{N}")
    return n.astype(np.int64)


def _kappa(n, N, block, nu, sigma):
    out = (block * (n % nu) + sigma * (n // nu)) % N
    return out if out.ndim else int(out)


def kappa_upper(n, p: KaleidoscopeParams):
    """Upper mapping ``(ceil(N/nu) (n mod nu) + sigma floor(n/nu)) mod N``.

    Works elementwise on integer arrays. The branch stored in ``p`` is ignored.
    """
    N, nu = p.modulus, p.downsample
    n = _check_index(n, N)
    return _kappa(n, N, -(-N // nu), nu, p.smear)


def kappa_lower(n, p: KaleidoscopeParams):
    """Lower mapping, as :func:`kappa_upper` with ``floor(N/nu)``."""
    N, nu = p.modulus, p.downsample
    n = _check_index(n, N)
    return _kappa(n, N, N // nu, nu, p.smear)


def kappa(n, p: KaleidoscopeParams):
    """Unified mapping: dispatches on ``p.branch``."""
    if p.branch is Branch.UPPER:
        return kappa_upper(n, p)
    return kappa_lower(n, p)


def kappa_table(p: KaleidoscopeParams) -> np.ndarray:
    """Destination index of every ``n`` in ``0..N-1``."""
    return kappa(np.arange(p.modulus), p)


def kt_1d(x, p: KaleidoscopeParams) -> np.ndarray:
    """Kaleidoscope transform of a 1D sequence; collisions are summed."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.shape[0] != p.modulus:
        raise DomainError(
            f"sequence length {x.shape} does not match modulus {p.modulus}"
        )
    return np.bincount(kappa_table(p), weights=x, minlength=p.modulus)


def kt_2d(img, p_row: KaleidoscopeParams, p_col: KaleidoscopeParams) -> np.ndarray:
    """Kaleidoscope transform of an M x N image.

    ``p_row`` acts on the row index (modulus M) and ``p_col`` on the column
    index (modulus N).
    """
    img = np.asarray(img, dtype=float)
    if img.ndim != 2:
        raise DomainError("image must be two-dimensional")
    M, N = img.shape
    if p_row.modulus != M or p_col.modulus != N:
        raise DomainError(
            f"image shape {img.shape} does not match moduli "
            f"({p_row.modulus}, {p_col.modulus})"
        )
    dest = kappa_table(p_row)[:, None] * N + kappa_table(p_col)[None, :]
    out = np.bincount(dest.ravel(), weights=img.ravel(), minlength=M * N)
    return out.reshape(M, N)


def params_from_multiplier(N: int, L: int) -> list[MultiplierDecomposition]:
    """All ``(nu, sigma)`` with ``N = L*nu - sigma``, ``|sigma| < nu <= N``.

    Sorted by ``|sigma|`` with positive smear first on ties, so the head is the
    canonical decomposition. An empty list means no decomposition exists.
    """
    if N < 1 or L < 1:
        raise DomainError("N and L must be positive")
    found = []
    for nu in range(1, N + 1):
        sigma = L * nu - N
        if abs(sigma) < nu:
            found.append(MultiplierDecomposition(L, KaleidoscopeParams(N, nu, sigma)))
    found.sort(key=lambda d: (abs(d.params.smear), d.params.smear < 0))
    return found


def divisors(n: int) -> list[int]:
    """Positive divisors of ``n`` in ascending order."""
    if n < 1:
        return []
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def unity_smear_multipliers(N: int, m_max: int = 1) -> list[UnityMultiplier]:
    """Multipliers ``L >= 2`` that divide ``m*N - 1`` or ``m*N + 1``, ``m <= m_max``.

    Each ``L`` is reported once, with the smallest qualifying ``m`` and, for
    that ``m``, the minus sign before the plus sign. Sorted by ``L``.
    """
    if N < 2:
        raise DomainError("N must be >= 2")
    if m_max < 1:
        raise DomainError("m_max must be >= 1")
    seen: dict[int, UnityMultiplier] = {}
    for m in range(1, m_max + 1):
        for sign in (-1, 1):
            for L in divisors(m * N + sign):
                if L >= 2 and L not in seen:
                    seen[L] = UnityMultiplier(L, m, sign)
    return [seen[L] for L in sorted(seen)]


def downsample_concat_oracle(x, nu: int) -> np.ndarray:
    """Concatenate the ``nu`` downsampled subsequences ``x[m::nu]``.

    Only defined when ``nu`` divides ``len(x)``. Independent reference for
    ``kt_1d`` with unity smear on the upper branch.
    """
    x = np.asarray(x)
    if nu < 1 or x.ndim != 1 or x.shape[0] % nu:
        raise DomainError(f"downsample factor {nu} must divide length {x.shape[0]}")
    return np.concatenate([x[m::nu] for m in range(nu)])
