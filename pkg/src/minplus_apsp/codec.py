"""Exponential encoding of distance matrices and floor-log decoding.

A distance a maps to base**(x_tilde - a) with base = n + 1, so that an
ordinary matrix product simulates the min-plus product: the largest term of
each sum dominates because at most n terms contribute and every term is a
power of base > n. Distances come back via a floored logarithm.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import INF, DistMatrix

# largest usable binary exponent per float width, matching published limits
EMAX = {32: 127.9, 64: 1024.0}

# additive guard inside the floored log; base**k is not always exactly
# representable, so values can round to just below an integer boundary
FLOOR_LOG_GUARD = {32: 1e-5, 64: 1e-9}

_DTYPES = {32: np.float32, 64: np.float64}


class FeasibilityError(RuntimeError):
    """Encoding would overflow the float exponent range."""


class DecodeError(RuntimeError):
    """Product matrix cannot be decoded back to distances."""


class NegativeEntryError(DecodeError):
    """Negative entry in a product matrix: the kernel corrupted the data."""


class NonFiniteEntryError(DecodeError):
    """Inf/NaN entry in a product matrix: the exponent range overflowed."""


@dataclass(frozen=True)
class EncodeParams:
    """Parameters shared by encode and decode of one distance product."""

    base: int
    x_tilde: int
    width: int = 64

    def __post_init__(self):
        if self.base < 2:
            raise ValueError(f"base must be >= 2, got {self.base}")
        if self.x_tilde < 0:
            raise ValueError(f"x_tilde must be >= 0, got {self.x_tilde}")
        if self.width not in EMAX:
            raise ValueError(f"width must be 32 or 64, got {self.width}")

    def exponent_budget(self) -> float:
        """Binary exponent of the worst product entry, n * base**(2*x_tilde)."""
        return 2 * self.x_tilde * math.log2(self.base) + math.log2(self.base - 1)

    def is_feasible(self) -> bool:
        return self.exponent_budget() <= EMAX[self.width]


@dataclass(frozen=True)
class EncodedMatrix:
    """Exponential image of a DistMatrix; 0 marks unreachable pairs."""

    data: np.ndarray

    @property
    def n(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return 32 if self.data.dtype == np.float32 else 64


@dataclass(frozen=True)
class PrecisionLimits:
    """Maximum diameter supported by a float width at a given node count."""

    n: int
    width: int
    emax: float
    paper_limit: float
    safe_limit: float


def params_for(m: DistMatrix, width: int = 64) -> EncodeParams:
    return EncodeParams(base=m.n + 1, x_tilde=max_finite(m), width=width)


def max_finite(m: DistMatrix) -> int:
    """Largest finite entry; 0 when all off-diagonal entries are unreachable."""
    # the diagonal is always finite, so the reduction is never empty
    return int(np.amax(m.data, initial=0.0, where=np.isfinite(m.data)))


def encode(m: DistMatrix, p: EncodeParams, *, enforce: bool = True) -> EncodedMatrix:
    """Map finite entry a to base**(x_tilde - a), unreachable to 0.

    With enforce=True, refuses when the safe exponent budget is exceeded
    (the product would overflow); with enforce=False, overflowed entries
    become inf and decode reports them.
    """
    if p.base != m.n + 1:
        raise ValueError(f"base {p.base} does not match n + 1 = {m.n + 1}")
    if enforce and not p.is_feasible():
        raise FeasibilityError(
            f"x_tilde={p.x_tilde} needs a binary exponent budget of "
            f"{p.exponent_budget():.1f} bits, above the {p.width}-bit limit "
            f"{EMAX[p.width]}"
        )
    dtype = _DTYPES[p.width]
    a = m.data
    mask = np.isfinite(a)
    # exponent lookup table keeps the hot path at one gather per entry;
    # staged in int32 to bound peak memory at scale
    exps = np.where(mask, a, 0.0).astype(np.int32)
    np.subtract(p.x_tilde, exps, out=exps)
    if exps.min() < 0:
        raise ValueError("x_tilde is smaller than the largest finite entry")
    with np.errstate(over="ignore"):
        powers = dtype(p.base) ** np.arange(p.x_tilde + 1, dtype=dtype)
    out = powers[exps]
    del exps
    out[~mask] = 0
    return EncodedMatrix(out)


def decode(c_prime: EncodedMatrix, p: EncodeParams) -> DistMatrix:
    """Recover distances from a product of two encoded matrices.

    Entry v > 0 becomes 2*x_tilde - floor(log_base(v) + guard); 0 becomes inf.
    """
    arr = c_prime.data
    if not np.isfinite(arr).all():
        raise NonFiniteEntryError(
            "non-finite entry in product matrix: float exponent range "
            "overflowed (feasibility guard failed or was overridden)"
        )
    if arr.min() < 0:
        raise NegativeEntryError("negative entry in product matrix")
    guard = FLOOR_LOG_GUARD[c_prime.width]
    mask = arr > 0
    logs = np.zeros(arr.shape, dtype=np.float64)
    np.log(arr, out=logs, where=mask)
    logs /= math.log(p.base)
    logs += guard
    np.floor(logs, out=logs)
    np.negative(logs, out=logs)
    logs += 2 * p.x_tilde
    logs[~mask] = INF
    return DistMatrix(logs)


def precision_limits(n: int, width: int) -> PrecisionLimits:
    """Diameter limits imposed by the float exponent range at node count n.

    paper_limit bounds base**D itself; safe_limit bounds the worst product
    term n * base**(2*D) that actually occurs during decode, and is what the
    solver enforces by default.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if width not in EMAX:
        raise ValueError(f"width must be 32 or 64, got {width}")
    emax = EMAX[width]
    log_base = math.log2(n + 1)
    paper = emax / log_base
    safe = (emax - math.log2(n)) / (2 * log_base)
    return PrecisionLimits(n=n, width=width, emax=emax, paper_limit=paper, safe_limit=safe)
