"""Degrees of group symmetry from counting functions and coordinates.

Everything here is exact integer arithmetic. A structure of rank
(M_1, ..., M_p) and arity (q_1, ..., q_p) on manifolds of dimensions
m_1, ..., m_p has, on a cortege of lengths M', exactly
N(M') = s·[Π C(M'_i, q_i) − Π C(M'_i − M_i + q_i, q_i)] independent
functions, and r' = Σ M'_i m_i − N(M') free parameters left for motions.
"""

from dataclasses import dataclass
from itertools import combinations, product
from typing import Optional, Sequence, Union

import numpy as np
import pandas as pd
from scipy.linalg import block_diag
from scipy.special import comb

from phenostruct.core import PhenostructError
from phenostruct.numeric import numeric_rank
from phenostruct.utils import CONFIG


class Inconclusive(PhenostructError):
    """The scan ended before the parameter count settled."""


@dataclass(frozen=True)
class SetShape:
    m: int
    q: int
    M: int


@dataclass(frozen=True)
class StructureShape:
    s: int
    sets: tuple[SetShape, ...]

    def __post_init__(self):
        if self.s < 1 or not self.sets:
            raise ValueError("a structure needs s ≥ 1 and at least one set")
        for part in self.sets:
            if min(part.m, part.q, part.M) < 1 or part.M <= part.q:
                raise ValueError(f"invalid set shape {part}")


@dataclass(frozen=True)
class Finite:
    r: int


@dataclass(frozen=True)
class NoGroupSymmetry:
    reason: str


@dataclass(frozen=True)
class Saturated:
    witness: tuple[int, ...]


@dataclass(frozen=True)
class Unbounded:
    growth: tuple[int, ...]


Verdict = Union[Finite, NoGroupSymmetry, Saturated, Unbounded]


def _c(n: int, k: int) -> int:
    return int(comb(n, k, exact=True))


def one_set_degree(s: int, M: int, m: int) -> Union[Finite, NoGroupSymmetry]:
    """r = s(M − 1)(M − 2)/2 when m = s(M − 2)."""
    if M < 3:
        raise ValueError("rank of a one-set geometry is at least 3")
    expected = s * (M - 2)
    if m == expected:
        return Finite(s * (M - 1) * (M - 2) // 2)
    side = ">" if m > expected else "<"
    return NoGroupSymmetry(f"m {side} s(M − 2) = {expected}")


def two_set_degree(s: int, M: int, N: int, m: int, n: int) -> Union[Finite, NoGroupSymmetry]:
    """r = s(M − 1)(N − 1) when m = s(N − 1) and n = s(M − 1)."""
    if M < 2 or N < 2:
        raise ValueError("rank of a two-set structure is at least (2, 2)")
    misses = []
    if m != s * (N - 1):
        misses.append(f"m = {m} ≠ s(N − 1) = {s * (N - 1)}")
    if n != s * (M - 1):
        misses.append(f"n = {n} ≠ s(M − 1) = {s * (M - 1)}")
    if misses:
        return NoGroupSymmetry("; ".join(misses))
    return Finite(s * (M - 1) * (N - 1))


def _as_tuple(value) -> tuple[int, ...]:
    return tuple(value) if isinstance(value, (tuple, list)) else (value,)


def dependent_count(
    q: Union[int, Sequence[int]],
    M: Union[int, Sequence[int]],
    M_prime: Union[int, Sequence[int]],
    s: int = 1,
) -> int:
    """Relations among the functions of a cortege of lengths M': s·Π C(M'_i − M_i + q_i, q_i)."""
    q, M, M_prime = _as_tuple(q), _as_tuple(M), _as_tuple(M_prime)
    total = 1
    for qi, Mi, Pi in zip(q, M, M_prime):
        if Pi < Mi:
            raise ValueError(f"cortege length {Pi} below the rank {Mi}")
        total *= _c(Pi - Mi + qi, qi)
    return s * total


def _distance_jacobian(dim: int, points: int, rng: np.random.Generator) -> np.ndarray:
    """Jacobian of the squared distances of random points of R^dim."""
    u = rng.standard_normal((points, dim))
    pairs = list(combinations(range(points), 2))
    jac = np.zeros((len(pairs), points * dim))
    for row, (i, j) in enumerate(pairs):
        d = 2.0 * (u[i] - u[j])
        jac[row, i * dim:(i + 1) * dim] = d
        jac[row, j * dim:(j + 1) * dim] = -d
    return jac


def _pairing_jacobian(ranks: tuple[int, ...], lengths: tuple[int, ...], rng) -> np.ndarray:
    """Jacobian of f(iα) = ⟨u_i, v_α⟩ over random points of the two sets.

    Both sides live in R^k with k = max(A, B) − 1; the side of larger rank has one
    coordinate fewer, its last entry being the constant 1.
    """
    A, B = ranks
    P, Q = lengths
    k = max(A, B) - 1
    free_u = k - 1 if A > B else k
    free_v = k - 1 if B > A else k
    u = np.hstack([rng.standard_normal((P, free_u)), np.ones((P, k - free_u))])
    v = np.hstack([rng.standard_normal((Q, free_v)), np.ones((Q, k - free_v))])
    jac = np.zeros((P * Q, P * free_u + Q * free_v))
    offset = P * free_u
    for i in range(P):
        for a in range(Q):
            row = i * Q + a
            jac[row, i * free_u:(i + 1) * free_u] = v[a, :free_u]
            jac[row, offset + a * free_v:offset + (a + 1) * free_v] = u[i, :free_v]
    return jac


def superposition_count(
    q: Union[int, Sequence[int]],
    M: Union[int, Sequence[int]],
    M_prime: Union[int, Sequence[int]],
    s: int = 1,
    rng: Optional[np.random.Generator] = None,
) -> int:
    """Dependent functions of a cortege, counted on a concrete structure of the given rank.

    One set (q = 2): squared distances in R^(M − 2). Two sets (q = (1, 1)) of
    ranks differing by at most one: a bilinear pairing. Each of the s
    components is an independent copy; the count is the number of functions
    minus the numerical rank of their Jacobian, so no binomial appears.
    """
    q, M, M_prime = _as_tuple(q), _as_tuple(M), _as_tuple(M_prime)
    rng = rng if rng is not None else np.random.default_rng(0)
    for Mi, Pi in zip(M, M_prime):
        if Pi < Mi:
            raise ValueError(f"cortege length {Pi} below the rank {Mi}")
    if q == (2,) and M[0] >= 3:
        blocks = [_distance_jacobian(M[0] - 2, M_prime[0], rng) for _ in range(s)]
    elif q == (1, 1) and abs(M[0] - M[1]) <= 1:
        blocks = [_pairing_jacobian(M, M_prime, rng) for _ in range(s)]
    else:
        raise ValueError(f"no realization for arity {q} and rank {M}")
    jac = block_diag(*blocks)
    return jac.shape[0] - numeric_rank(jac).observed_rank


def independent_functions(shape: StructureShape, lengths: Sequence[int]) -> int:
    full = 1
    for part, length in zip(shape.sets, lengths):
        full *= _c(length, part.q)
    q = [p.q for p in shape.sets]
    M = [p.M for p in shape.sets]
    return shape.s * full - dependent_count(q, M, list(lengths), shape.s)


def free_parameters(shape: StructureShape, lengths: Sequence[int]) -> int:
    coords = sum(part.m * length for part, length in zip(shape.sets, lengths))
    return coords - independent_functions(shape, lengths)


def polyary_group_symmetry(
    shape: StructureShape, search_bound: int = CONFIG["counting"]["search_bound"]
) -> Verdict:
    """Scan cortege lengths up to ``search_bound`` and classify the motion count r'.

    Saturated when some cortege has no more coordinates than independent
    functions; Finite when r' is the same everywhere; Unbounded when r' is
    affine in the lengths with non-negative growth.
    """
    if search_bound < max(p.M for p in shape.sets):
        raise ValueError("search bound below the rank")
    grid = list(product(*(range(p.M, search_bound + 1) for p in shape.sets)))
    table: dict[tuple[int, ...], int] = {}
    for lengths in grid:
        free = free_parameters(shape, lengths)
        if free <= 0:
            return Saturated(lengths)
        table[lengths] = free
    values = set(table.values())
    if len(values) == 1:
        return Finite(values.pop())
    growth = _affine_growth(shape, table, search_bound)
    if growth is not None and min(growth) >= 0:
        return Unbounded(growth)
    raise Inconclusive(f"r' still varies at search bound {search_bound}")


def _affine_growth(shape: StructureShape, table, bound: int) -> Optional[tuple[int, ...]]:
    """Per-axis increments of r' if they are constant over the scan."""
    growth = []
    for axis in range(len(shape.sets)):
        steps = set()
        for lengths, value in table.items():
            if lengths[axis] == bound:
                continue
            nxt = list(lengths)
            nxt[axis] += 1
            steps.add(table[tuple(nxt)] - value)
        if len(steps) > 1:
            return None
        growth.append(steps.pop() if steps else 0)
    return tuple(growth)


def one_set_shape(s: int, M: int, m: int, q: int = 2) -> StructureShape:
    return StructureShape(s, (SetShape(m, q, M),))


def two_set_shape(s: int, M: int, N: int, m: int, n: int) -> StructureShape:
    """Binary two-set shape: the set of rank M lives on an m-manifold, the other on an n-manifold."""
    return StructureShape(s, (SetShape(m, 1, M), SetShape(n, 1, N)))


# -- classification tables ---------------------------------------------------------------

def one_set_solved(s: int, n: int) -> bool:
    """Complete classification known: s = 1 up to n = 3, s = 2, 3, 4 on the line."""
    return (s == 1 and n <= 3) or (s in (2, 3, 4) and n == 1)


def two_set_solved(s: int, M: int, N: int) -> bool:
    """Complete classification known for rank (M, N), M ≥ N."""
    if s == 1:
        return True
    if s == 2:
        return N == 2
    return s in (3, 4) and M == N == 2


def problem_table_one_set(max_s: int = 5, max_M: int = 6) -> pd.DataFrame:
    """Ranks, dimensions and degrees of one-set geometries with the solved flag."""
    rows = []
    for s in range(1, max_s + 1):
        for M in range(3, max_M + 1):
            m = s * (M - 2)
            rows.append(
                {
                    "s": s,
                    "M": M,
                    "n": M - 2,
                    "m": m,
                    "r": one_set_degree(s, M, m).r,
                    "solved": one_set_solved(s, M - 2),
                }
            )
    return pd.DataFrame(rows)


def problem_table_two_set(max_s: int = 5, max_M: int = 5) -> pd.DataFrame:
    """Ranks (M, N) with M ≥ N, dimensions and degrees of two-set structures with the solved flag."""
    rows = []
    for s in range(1, max_s + 1):
        for M in range(2, max_M + 1):
            for N in range(2, M + 1):
                m, n = s * (N - 1), s * (M - 1)
                rows.append(
                    {
                        "s": s,
                        "M": M,
                        "N": N,
                        "m": m,
                        "n": n,
                        "r": two_set_degree(s, M, N, m, n).r,
                        "solved": two_set_solved(s, M, N),
                    }
                )
    return pd.DataFrame(rows)
