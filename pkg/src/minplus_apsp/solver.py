"""Repeated-squaring distance product with sparseness and convergence
judgments, plus a Floyd-Warshall oracle and per-epoch statistics.

One epoch = encode -> select kernel by density -> multiply -> decode. The
squared matrix doubles the path-edge budget, so convergence needs at most
ceil(log2(n - 1)) improving epochs plus one confirming epoch.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .codec import EncodeParams, FeasibilityError, decode, encode, max_finite
from .graph import DistMatrix, density
from .kernels import DENSE_BLOCKED, SPARSE, KernelChoice

NAIVE = "naive"
STRASSEN = "strassen"

_KERNEL_NAMES = ("auto", NAIVE, "blocked", STRASSEN, SPARSE)


@dataclass
class SolveOptions:
    """Knobs for the solve loop.

    max_epochs caps improving epochs (default ceil(log2(n - 1))); one extra
    confirming epoch is always allowed on top. diameter_hint with
    trust_hint=True stops as soon as the doubled path budget covers the hint,
    skipping the confirming epoch.
    """

    width: int = 64
    kernel_choice: KernelChoice = field(default_factory=KernelChoice)
    kernel: str = "auto"
    max_epochs: int | None = None
    diameter_hint: int | None = None
    trust_hint: bool = False
    enforce_precision: bool = True

    def __post_init__(self):
        if self.kernel not in _KERNEL_NAMES:
            raise ValueError(f"unknown kernel {self.kernel!r}")
        if self.max_epochs is not None and self.max_epochs < 1:
            raise ValueError("max_epochs must be >= 1")


@dataclass
class EpochStats:
    """Per-epoch convergence record.

    convergence_quantity/_pct are defined against the final unreachable set
    and are back-filled once the solve finishes.
    """

    epoch: int
    max_element: int
    finite_before: int
    finite_after: int
    convergence_quantity: int | None = None
    convergence_pct: float | None = None

    @property
    def delta(self) -> int:
        return self.finite_after - self.finite_before

    def finalize(self, unreachable_count: int, n: int) -> None:
        self.convergence_quantity = self.finite_after + unreachable_count
        self.convergence_pct = 100.0 * self.convergence_quantity / (n * n)


@dataclass(frozen=True)
class SolveResult:
    distances: DistMatrix
    epochs: list[EpochStats]
    converged: bool
    kernel_trace: list[str]


EPOCH_CSV_COLUMNS = (
    "epoch",
    "max_element",
    "finite_before",
    "finite_after",
    "delta",
    "convergence_quantity",
    "convergence_pct",
)


def epoch_stats_csv(epochs: list[EpochStats]) -> str:
    """Epoch records as CSV, one row per epoch."""
    lines = [",".join(EPOCH_CSV_COLUMNS)]
    for st in epochs:
        pct = "" if st.convergence_pct is None else f"{st.convergence_pct:.3f}"
        q = "" if st.convergence_quantity is None else str(st.convergence_quantity)
        lines.append(
            f"{st.epoch},{st.max_element},{st.finite_before},{st.finite_after},"
            f"{st.delta},{q},{pct}"
        )
    return "\n".join(lines) + "\n"


def converged(before: DistMatrix, after: DistMatrix) -> bool:
    """True iff every entry is equal (inf counts as equal to inf)."""
    if before.n != after.n:
        raise ValueError(f"dimension mismatch: {before.n} vs {after.n}")
    return bool(np.array_equal(before.data, after.data))


def epoch_stats(before: DistMatrix, after: DistMatrix, epoch: int) -> EpochStats:
    if before.n != after.n:
        raise ValueError(f"dimension mismatch: {before.n} vs {after.n}")
    return EpochStats(
        epoch=epoch,
        max_element=max_finite(after),
        finite_before=int(np.isfinite(before.data).sum()),
        finite_after=int(np.isfinite(after.data).sum()),
    )


def _distance_product(l: DistMatrix, opts: SolveOptions) -> tuple[DistMatrix, str]:
    p = EncodeParams(base=l.n + 1, x_tilde=max_finite(l), width=opts.width)
    if opts.enforce_precision and not p.is_feasible():
        raise FeasibilityError(
            f"max element {p.x_tilde} exceeds the safe diameter limit for "
            f"width {opts.width} at n={l.n} "
            f"(exponent budget {p.exponent_budget():.1f} > {opts.width}-bit limit)"
        )
    if opts.kernel == "auto":
        kind = kernels.choose_kernel(density(l), opts.kernel_choice)
    else:
        kind = opts.kernel
    enc = encode(l, p, enforce=opts.enforce_precision)
    # free each intermediate as soon as possible: at scale every full matrix
    # is a large fraction of RAM
    if kind == SPARSE:
        csr = kernels.to_csr(enc)
        del enc
        prod_csr = kernels.multiply_sparse(csr, csr)
        del csr
        prod = kernels.from_csr(prod_csr)
        del prod_csr
    elif kind in (DENSE_BLOCKED, "blocked"):
        prod = kernels.multiply_dense_blocked(enc, enc, opts.kernel_choice.block)
        del enc
    elif kind == NAIVE:
        prod = kernels.multiply_naive(enc, enc)
        del enc
    elif kind == STRASSEN:
        prod = kernels.multiply_strassen(enc, enc)
        del enc
    else:
        raise ValueError(f"unknown kernel {kind!r}")
    result = decode(prod, p)
    trace_kind = DENSE_BLOCKED if kind == "blocked" else kind
    return result, trace_kind


def distance_product(l: DistMatrix, opts: SolveOptions | None = None) -> DistMatrix:
    """Min-plus square of l via the encode/multiply/decode pipeline."""
    result, _ = _distance_product(l, opts or SolveOptions())
    return result


def _epoch_budget(n: int) -> int:
    return 0 if n < 3 else math.ceil(math.log2(n - 1))


def power_law_bound(w: DistMatrix, opts: SolveOptions | None = None) -> SolveResult:
    """Solve APSP by repeated min-plus squaring with convergence detection.

    Stops when an epoch leaves the matrix unchanged, when the doubled path
    budget reaches a trusted diameter hint, or when the epoch budget runs out
    (converged=False on the partial result in that case).
    """
    opts = opts or SolveOptions()
    n = w.n
    budget = opts.max_epochs if opts.max_epochs is not None else _epoch_budget(n)
    total = budget + 1  # room for the confirming epoch
    stats: list[EpochStats] = []
    trace: list[str] = []
    is_converged = False
    current = w
    m = 1
    for epoch in range(1, total + 1):
        nxt, kind = _distance_product(current, opts)
        trace.append(kind)
        stats.append(epoch_stats(current, nxt, epoch))
        same = converged(current, nxt)
        current = nxt
        if same:
            is_converged = True
            break
        m *= 2
        if (
            opts.diameter_hint is not None
            and opts.trust_hint
            and m >= opts.diameter_hint
        ):
            is_converged = True
            break
    unreachable = n * n - int(np.isfinite(current.data).sum())
    for st in stats:
        st.finalize(unreachable, n)
    return SolveResult(
        distances=current, epochs=stats, converged=is_converged, kernel_trace=trace
    )


def fixed_squaring(w: DistMatrix, opts: SolveOptions | None = None) -> tuple[DistMatrix, int]:
    """Non-reusing baseline: exactly ceil(log2(n - 1)) squarings, no
    convergence short-circuit. Returns (distances, iterations)."""
    opts = opts or SolveOptions()
    iterations = max(1, _epoch_budget(w.n))
    current = w
    for _ in range(iterations):
        current, _ = _distance_product(current, opts)
    return current, iterations


def floyd_warshall(w: DistMatrix) -> DistMatrix:
    """Ground-truth triple-loop relaxation (vectorized over the inner pair)."""
    d = w.data.copy()
    n = w.n
    for k in range(n):
        np.minimum(d, d[:, k, None] + d[None, k, :], out=d)
    return DistMatrix(d)
