"""Finite differences, singular values and residual bookkeeping."""

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Optional

import numpy as np

from phenostruct.core import (
    Cortege,
    Family,
    MetricSpec,
    PhenostructError,
    eval_metric,
)
from phenostruct.utils import CONFIG


class NonFinite(PhenostructError):
    """A finite-difference step produced a non-finite value."""


@dataclass(frozen=True)
class RankReport:
    observed_rank: int
    singular_values: tuple[float, ...]
    tol_rel: float
    gap_ratio: float
    predicted_rank: Optional[int] = None
    n_corteges: int = 1
    agreement: float = 1.0

    @property
    def confident(self) -> bool:
        return self.gap_ratio >= CONFIG["numeric"]["gap_ratio"]

    @property
    def matches(self) -> bool:
        return self.predicted_rank is not None and self.observed_rank == self.predicted_rank


@dataclass(frozen=True)
class ResidualStats:
    n_samples: int
    max_abs: float
    mean_abs: float
    normalization: str

    def passes(self, tol: float) -> bool:
        return self.max_abs < tol


def finite_diff_jacobian(
    fn: Callable[[np.ndarray], np.ndarray],
    at: np.ndarray,
    h_base: float = CONFIG["numeric"]["h_base"],
) -> np.ndarray:
    """Central-difference Jacobian, rows = outputs, columns = inputs."""
    at = np.asarray(at, dtype=float)
    columns = []
    for k in range(at.size):
        h = h_base * max(1.0, abs(at[k]))
        up, down = at.copy(), at.copy()
        up[k] += h
        down[k] -= h
        try:
            f_up = np.atleast_1d(np.asarray(fn(up), dtype=float))
            f_down = np.atleast_1d(np.asarray(fn(down), dtype=float))
        except PhenostructError as err:
            raise NonFinite(f"step along coordinate {k} left the domain: {err}") from err
        if not (np.all(np.isfinite(f_up)) and np.all(np.isfinite(f_down))):
            raise NonFinite(f"step along coordinate {k} produced a non-finite value")
        columns.append((f_up - f_down) / (2.0 * h))
    return np.column_stack(columns)


def numeric_rank(
    matrix: np.ndarray, tol_rel: float = CONFIG["numeric"]["tol_rank"]
) -> RankReport:
    """Rank as the count of singular values above tol_rel·σ_max."""
    matrix = np.asarray(matrix, dtype=float)
    if matrix.size == 0:
        return RankReport(0, (), tol_rel, math.inf)
    sigma = np.linalg.svd(matrix, compute_uv=False)
    sigma_max = sigma[0] if sigma.size else 0.0
    if sigma_max == 0.0:
        return RankReport(0, tuple(float(x) for x in sigma), tol_rel, math.inf)
    rank = int(np.sum(sigma > tol_rel * sigma_max))
    if rank == sigma.size:
        gap = math.inf
    elif sigma[rank] == 0.0:
        gap = math.inf
    else:
        gap = float(sigma[rank - 1] / sigma[rank])
    return RankReport(rank, tuple(float(x) for x in sigma), tol_rel, gap)


def equilibrate(matrix: np.ndarray) -> np.ndarray:
    """Scale rows, then columns, to unit Euclidean norm (rank preserving)."""
    out = np.array(matrix, dtype=float)
    for axis in (1, 0):
        norms = np.linalg.norm(out, axis=axis, keepdims=True)
        norms[norms == 0.0] = 1.0
        out = out / norms
    return out


def cortege_pairs(spec: MetricSpec, cortege: Cortege) -> list[tuple[int, int]]:
    """Rows of the functional matrix in cortege order: ij, ik, ..., or iα, iβ, ..."""
    lenA, lenB = cortege.lengths
    if spec.family is Family.ONE_SET:
        return list(combinations(range(lenA), 2))
    return [(i, a) for i in range(lenA) for a in range(lenB)]


def functional_matrix(spec: MetricSpec, cortege: Cortege) -> np.ndarray:
    """Jacobian of all pair values of a cortege with respect to all coordinates.

    Each pair only depends on its own two points, so only those column blocks
    are filled; every other entry stays an exact zero.
    """
    lenA, _ = cortege.lengths
    dimA, dimB = spec.dimA, spec.dimB
    offsets_a = [i * dimA for i in range(lenA)]
    offsets_b = [lenA * dimA + a * dimB for a in range(len(cortege.setB or ()))]
    coords = cortege.coordinates()
    pairs = cortege_pairs(spec, cortege)
    matrix = np.zeros((len(pairs) * spec.s, coords.size))
    for row, (i, j) in enumerate(pairs):
        if spec.family is Family.ONE_SET:
            left, right = offsets_a[i], offsets_a[j]
            a, b = cortege.setA[i], cortege.setA[j]
        else:
            left, right = offsets_a[i], offsets_b[j]
            a, b = cortege.setA[i], cortege.setB[j]
        da = a.size

        def pair_value(u, spec=spec, da=da):
            return eval_metric(spec, u[:da], u[da:])

        block = finite_diff_jacobian(pair_value, np.concatenate([a, b]))
        rows = slice(row * spec.s, (row + 1) * spec.s)
        matrix[rows, left : left + da] = block[:, :da]
        matrix[rows, right : right + b.size] = block[:, da:]
    return matrix


def residual_stats(values: Iterable[float], normalization: str) -> ResidualStats:
    """Aggregate absolute residuals."""
    arr = np.abs(np.asarray(list(values), dtype=float))
    if arr.size == 0:
        return ResidualStats(0, 0.0, 0.0, normalization)
    if not np.all(np.isfinite(arr)):
        raise NonFinite(f"non-finite residual under {normalization}")
    return ResidualStats(int(arr.size), float(arr.max()), float(arr.mean()), normalization)


def merge_stats(stats: Iterable[ResidualStats]) -> ResidualStats:
    stats = [s for s in stats if s.n_samples]
    if not stats:
        return ResidualStats(0, 0.0, 0.0, "none")
    total = sum(s.n_samples for s in stats)
    mean = sum(s.mean_abs * s.n_samples for s in stats) / total
    return ResidualStats(total, max(s.max_abs for s in stats), mean, stats[0].normalization)


def hadamard_bound(matrix: np.ndarray) -> float:
    """Product of the row norms, an upper bound of |det|."""
    norms = np.linalg.norm(np.asarray(matrix, dtype=float), axis=1)
    return float(np.prod(np.maximum(norms, np.finfo(float).tiny)))


def pfaffian(matrix: np.ndarray) -> float:
    """Pfaffian of an even-order antisymmetric matrix by row expansion.

    Only the strictly upper triangle is read.
    """
    n = matrix.shape[0]
    if n % 2:
        return 0.0
    if n == 0:
        return 1.0
    total = 0.0
    rest = list(range(1, n))
    for pos, j in enumerate(rest):
        keep = [k for k in rest if k != j]
        minor = matrix[np.ix_(keep, keep)]
        total += (-1) ** pos * matrix[0, j] * pfaffian(minor)
    return total
