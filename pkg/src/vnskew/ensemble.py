"""Monte Carlo sampling of random bipartite pure states and streaming cumulant estimates.

A draw is an m x n complex Gaussian matrix X.  The reduced density matrix
XX^dagger / tr(XX^dagger) has the fixed-trace spectrum whose entropy S we
track; the unnormalized spectrum of XX^dagger gives the induced entropy T.
"""

from __future__ import annotations

import csv
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate

from .cumulants import Dims, _dims
from .laguerre import NonConvergenceError

if os.environ.get("VNSKEW_PURE") == "1":
    from . import _kernels_py as _kernels

    BACKEND = "python"
else:
    try:
        from . import _kernels  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:  # extension not built
        from . import _kernels_py as _kernels

        BACKEND = "python"

DEFAULT_BATCHES = 100
TRACE_TOL = 1e-12
CLAMP_TOL = 1e-14
MAX_SWEEPS = 100


class EigenSolverError(ArithmeticError):
    """The Jacobi iteration did not converge within the sweep cap."""


@dataclass(frozen=True)
class EigenSpectrum:
    values: np.ndarray  # non-increasing
    normalized: bool

    def __post_init__(self):
        if self.normalized and abs(float(np.sum(self.values)) - 1.0) > TRACE_TOL:
            raise ValueError("normalized spectrum must sum to 1")


def batch_rng(seed: int, batch: int) -> np.random.Generator:
    """Independent substream for one batch, keyed by (seed, batch index)."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(seed), int(batch)])))


def sample_ginibre(d, rng: np.random.Generator, count: Optional[int] = None) -> np.ndarray:
    """Standard complex Gaussian matrix (E|x|^2 = 1), or a stack of ``count`` of them."""
    d = _dims(d)
    shape = (d.m, d.n) if count is None else (count, d.m, d.n)
    z = rng.standard_normal(shape + (2,))
    return (z[..., 0] + 1j * z[..., 1]) * math.sqrt(0.5)


def _hermitian_square(x: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(x @ np.conj(np.swapaxes(x, -1, -2)))


def wishart_eigenvalues(x: np.ndarray) -> np.ndarray:
    """Eigenvalues of XX^dagger for a stack of matrices, sorted non-increasing per row."""
    x = np.asarray(x)
    single = x.ndim == 2
    w = _hermitian_square(x[None] if single else x)
    vals, sweeps = _kernels.jacobi_eigvals_batch(w, TRACE_TOL, MAX_SWEEPS)
    if np.any(np.asarray(sweeps) < 0):
        raise EigenSolverError(f"Jacobi did not converge within {MAX_SWEEPS} sweeps")
    vals = -np.sort(-np.asarray(vals), axis=1)
    return vals[0] if single else vals


def _normalize(theta: np.ndarray) -> np.ndarray:
    trace = theta.sum(axis=-1, keepdims=True)
    lam = theta / trace
    if np.any(lam < -CLAMP_TOL):
        raise EigenSolverError("negative eigenvalue beyond rounding level")
    return np.maximum(lam, 0.0)


def fixed_trace_eigenvalues(x: np.ndarray) -> EigenSpectrum:
    x = np.asarray(x)
    if x.shape[0] > x.shape[1]:
        raise ValueError("need m <= n")
    return EigenSpectrum(_normalize(wishart_eigenvalues(x)), True)


def entropy_S(spec) -> float:
    lam = np.asarray(spec.values if isinstance(spec, EigenSpectrum) else spec, dtype=float)
    return float(np.asarray(_kernels.entropy_batch(np.ascontiguousarray(lam[None])))[0])


def induced_T(theta) -> float:
    th = np.asarray(theta.values if isinstance(theta, EigenSpectrum) else theta, dtype=float)
    pos = th[th > 0]
    return float(np.sum(pos * np.log(pos)))


def entropy_from_T(r: float, t: float) -> float:
    """S recovered from the trace r and the induced entropy T."""
    return (r * math.log(r) - t) / r


# ---------------------------------------------------------------------------
# streaming statistics


@dataclass(frozen=True)
class BatchSummary:
    """Count, mean and central power sums M2..M4 of one batch."""

    count: int
    mean: float
    m2: float
    m3: float
    m4: float

    @classmethod
    def from_values(cls, values) -> "BatchSummary":
        v = np.asarray(values, dtype=float)
        if v.size == 0:
            return cls(0, 0.0, 0.0, 0.0, 0.0)
        mu = float(np.mean(v))
        dev = v - mu
        d2 = dev * dev
        return cls(int(v.size), mu, float(np.sum(d2)), float(np.sum(d2 * dev)), float(np.sum(d2 * d2)))

    def combine(self, other: "BatchSummary") -> "BatchSummary":
        na, nb = self.count, other.count
        if na == 0:
            return other
        if nb == 0:
            return self
        n = na + nb
        delta = other.mean - self.mean
        mean = self.mean + delta * nb / n
        m2 = self.m2 + other.m2 + delta * delta * na * nb / n
        m3 = (self.m3 + other.m3 + delta ** 3 * na * nb * (na - nb) / n ** 2
              + 3 * delta * (na * other.m2 - nb * self.m2) / n)
        m4 = (self.m4 + other.m4 + delta ** 4 * na * nb * (na * na - na * nb + nb * nb) / n ** 3
              + 6 * delta * delta * (na * na * other.m2 + nb * nb * self.m2) / n ** 2
              + 4 * delta * (na * other.m3 - nb * self.m3) / n)
        return BatchSummary(n, mean, m2, m3, m4)

    def kstats(self) -> Tuple[float, float, float]:
        """Unbiased k-statistics k1, k2, k3."""
        n = self.count
        if n < 3:
            raise ValueError("k-statistics up to order 3 need at least 3 values")
        return self.mean, self.m2 / (n - 1), n * self.m3 / ((n - 1) * (n - 2))


@dataclass(frozen=True)
class SampleStats:
    """Ordered batch summaries; totals are always a left fold in batch order, so merging is exact."""

    batches: Tuple[BatchSummary, ...]
    samples: Optional[np.ndarray] = field(default=None, compare=False, repr=False)

    @classmethod
    def from_values(cls, values, batches: int = DEFAULT_BATCHES, keep: bool = False) -> "SampleStats":
        v = np.asarray(values, dtype=float)
        parts = np.array_split(v, batches)
        return cls(tuple(BatchSummary.from_values(p) for p in parts), v.copy() if keep else None)

    def merge(self, other: "SampleStats") -> "SampleStats":
        samples = None
        if self.samples is not None and other.samples is not None:
            samples = np.concatenate([self.samples, other.samples])
        return SampleStats(self.batches + other.batches, samples)

    @property
    def total(self) -> BatchSummary:
        acc = BatchSummary(0, 0.0, 0.0, 0.0, 0.0)
        for b in self.batches:
            acc = acc.combine(b)
        return acc

    @property
    def count(self) -> int:
        return sum(b.count for b in self.batches)

    @property
    def mean(self) -> float:
        return self.total.mean


@dataclass(frozen=True)
class CumulantEstimate:
    k: Tuple[float, float, float]
    stderr: Tuple[float, float, float]

    def z_scores(self, exact: Sequence[float]) -> Tuple[float, ...]:
        out = []
        for est, se, ref in zip(self.k, self.stderr, exact):
            if se == 0:
                out.append(0.0 if est == ref else math.copysign(math.inf, est - ref))
            else:
                out.append((est - ref) / se)
        return tuple(out)


def empirical_cumulants(stats: SampleStats) -> CumulantEstimate:
    """k-statistics of the full stream with batch-means standard errors.

    Each batch contributes the batch average of the influence function of
    k_j about the pooled mean (x - mu, (x - mu)^2, (x - mu)^3 - 3 k2 (x - mu)),
    so any batch size works, including a single draw per batch.
    """
    total = stats.total
    if total.count < 10:
        raise ValueError("need at least 10 values for cumulant estimates")
    k = total.kstats()
    used = [b for b in stats.batches if b.count > 0]
    if len(used) < 2:
        raise ValueError("standard errors need at least two non-empty batches")
    mu, k2 = total.mean, k[1]
    u = np.empty((len(used), 3))
    for i, b in enumerate(used):
        dl = b.mean - mu
        s2 = (b.m2 + b.count * dl * dl) / b.count
        s3 = (b.m3 + 3 * dl * b.m2 + b.count * dl ** 3) / b.count
        u[i] = (b.mean, s2, s3 - 3 * k2 * dl)
    se = u.std(axis=0, ddof=1) / math.sqrt(len(used))
    return CumulantEstimate(tuple(float(x) for x in k), tuple(float(x) for x in se))


# ---------------------------------------------------------------------------
# batch driver


def _chunk_size(d: Dims) -> int:
    return max(1, 1_000_000 // (d.m * d.n))


def draw_statistic(d, count: int, rng: np.random.Generator, statistic: str = "S") -> np.ndarray:
    """``count`` independent draws of S or T, consuming ``rng`` in fixed-size chunks."""
    d = _dims(d)
    out = np.empty(count)
    step = _chunk_size(d)
    for start in range(0, count, step):
        size = min(step, count - start)
        theta = wishart_eigenvalues(sample_ginibre(d, rng, size))
        if statistic == "S":
            lam = _normalize(theta)
            if np.any(np.abs(lam.sum(axis=1) - 1.0) > TRACE_TOL):
                raise EigenSolverError("fixed-trace constraint violated")
            out[start:start + size] = _kernels.entropy_batch(np.ascontiguousarray(lam))
        elif statistic == "T":
            pos = np.where(theta > 0, theta, 1.0)
            out[start:start + size] = np.sum(np.where(theta > 0, theta * np.log(pos), 0.0), axis=1)
        else:
            raise ValueError(f"unknown statistic {statistic!r}")
    return out


def batch_sizes(samples: int, batches: int) -> List[int]:
    base, extra = divmod(samples, batches)
    return [base + (1 if i < extra else 0) for i in range(batches)]


def run_batch(
    d,
    samples: int,
    seed: int,
    batches: int = DEFAULT_BATCHES,
    threads: int = 1,
    statistic: str = "S",
    keep_samples: bool = False,
) -> SampleStats:
    """Simulate ``samples`` draws split over ``batches`` independent substreams.

    The result depends only on (d, samples, seed, batches); ``threads`` only
    changes how batches are scheduled.
    """
    d = _dims(d)
    if samples < batches:
        raise ValueError(f"need at least {batches} samples for {batches} batches")
    sizes = batch_sizes(samples, batches)

    def one(i):
        vals = draw_statistic(d, sizes[i], batch_rng(seed, i), statistic)
        return BatchSummary.from_values(vals), (vals if keep_samples else None)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(one, range(batches)))
    else:
        results = [one(i) for i in range(batches)]
    kept = np.concatenate([r[1] for r in results]) if keep_samples else None
    return SampleStats(tuple(r[0] for r in results), kept)


def write_samples_csv(path_or_file, samples: Sequence[float]) -> None:
    def emit(fh):
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["sample_index", "S"])
        for i, s in enumerate(samples):
            w.writerow([i, f"{float(s):.17g}"])

    if hasattr(path_or_file, "write"):
        emit(path_or_file)
    else:
        with open(path_or_file, "w", newline="") as fh:
            emit(fh)


# ---------------------------------------------------------------------------
# m = 2 oracle


def binary_entropy(lam):
    lam = np.asarray(lam, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = -np.where(lam > 0, lam * np.log(lam), 0.0) - np.where(lam < 1, (1 - lam) * np.log1p(-lam), 0.0)
    return out if out.ndim else float(out)


def simplex_quadrature_m2(n: int, integrand: Callable[[float], float], tol: float = 1e-11) -> float:
    """Expectation over the m = 2 fixed-trace density of one eigenvalue on (0, 1)."""
    if not isinstance(n, int) or n < 2:
        raise ValueError("need integer n >= 2")

    def weight(x):
        return (2 * x - 1) ** 2 * (x * (1 - x)) ** (n - 2)

    def run(f):
        val, err = integrate.quad(f, 0.0, 1.0, epsabs=0.0, epsrel=tol, limit=200)
        if err > 10 * tol * max(1.0, abs(val)):
            raise NonConvergenceError(f"adaptive quadrature stalled at error {err:g}")
        return val

    norm = run(weight)
    return run(lambda x: weight(x) * integrand(x)) / norm
