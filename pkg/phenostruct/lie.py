"""Lie operators, infinitesimal invariance and the registry of planar and spatial algebras."""

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
import pandas as pd

from phenostruct.core import PhenostructError
from phenostruct.numeric import finite_diff_jacobian, numeric_rank
from phenostruct.utils import CONFIG

Field = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class LieOperator:
    """X = λ^μ(x) ∂/∂x^μ on M, paired with Ξ = σ^ν(ξ) ∂/∂ξ^ν on N for two sets."""

    name: str
    on_a: Field
    on_b: Optional[Field] = None

    def field(self, point: np.ndarray, second: bool = False) -> np.ndarray:
        fn = self.on_b if second and self.on_b is not None else self.on_a
        return np.asarray(fn(np.asarray(point, dtype=float)), dtype=float)


ZERO = lambda p: 0.0  # noqa: E731
ONE = lambda p: 1.0  # noqa: E731


def coord(k: int, factor: float = 1.0) -> Callable:
    return lambda p: factor * p[k]


def apply_operator(
    operator: LieOperator,
    metric: Callable[[np.ndarray, np.ndarray], np.ndarray],
    a: np.ndarray,
    b: np.ndarray,
    two_set: bool = False,
) -> np.ndarray:
    """X(i)f(ij) + X(j)f(ij), or X(i)f(iα) + Ξ(α)f(iα), by a central difference."""
    va = operator.field(a)
    vb = operator.field(b, second=two_set)

    def along(t):
        return metric(a + t[0] * va, b + t[0] * vb)

    return finite_diff_jacobian(along, np.zeros(1))[:, 0]


def bracket(x: Field, y: Field, point: np.ndarray) -> np.ndarray:
    """[X, Y]^μ = X^ν ∂_ν Y^μ − Y^ν ∂_ν X^μ at one point."""
    point = np.asarray(point, dtype=float)
    jx = finite_diff_jacobian(x, point)
    jy = finite_diff_jacobian(y, point)
    return jy @ x(point) - jx @ y(point)


@dataclass(frozen=True)
class LieAlgebra:
    id: str
    anchor: str
    dim: int
    operators: tuple[Field, ...]
    transitive: bool = True
    box: tuple[float, float] = (-1.0, 1.0)


class AlgebraNotClosed(PhenostructError):
    """A bracket of two operators left the span of the basis."""


@dataclass(frozen=True)
class AlgebraReport:
    id: str
    closure_residual: float
    structure_constants: np.ndarray
    orbit_rank: int
    transitive: bool

    @property
    def passes(self) -> bool:
        algebra = ALGEBRAS[self.id]
        return (
            self.closure_residual < CONFIG["tolerances"]["infinitesimal"]
            and self.transitive == algebra.transitive
        )


def _stack(fields: Sequence[Field], points: Sequence[np.ndarray]) -> np.ndarray:
    """Columns are the operators evaluated on all points, concatenated."""
    return np.column_stack([np.concatenate([f(p) for p in points]) for f in fields])


def check_lie_algebra(
    algebra_id: str, rng: np.random.Generator, n_points: int = 8, strict: bool = False
) -> AlgebraReport:
    """Bracket closure with least-squares structure constants and the orbit dimension."""
    algebra = ALGEBRAS[algebra_id]
    lo, hi = algebra.box
    points = [rng.uniform(lo, hi, algebra.dim) for _ in range(n_points)]
    basis = _stack(algebra.operators, points)
    r = len(algebra.operators)
    constants = np.zeros((r, r, r))
    worst = 0.0
    for a in range(r):
        for b in range(a + 1, r):
            target = np.concatenate(
                [bracket(algebra.operators[a], algebra.operators[b], p) for p in points]
            )
            coef, *_ = np.linalg.lstsq(basis, target, rcond=None)
            miss = np.linalg.norm(basis @ coef - target) / max(1.0, np.linalg.norm(target))
            worst = max(worst, float(miss))
            constants[a, b] = coef
            constants[b, a] = -coef
    ranks = [
        numeric_rank(np.column_stack([f(p) for f in algebra.operators])).observed_rank
        for p in points
    ]
    orbit = min(ranks)
    report = AlgebraReport(algebra_id, worst, constants, orbit, orbit == algebra.dim)
    if strict and worst >= CONFIG["tolerances"]["infinitesimal"]:
        raise AlgebraNotClosed(f"{algebra_id}: closure residual {worst:.2e}")
    return report


def _algebra(id, anchor, dim, *operators, transitive=True, box=(-1.0, 1.0)):
    return LieAlgebra(id, anchor, dim, tuple(operators), transitive, box)


def _vec(*coeffs):
    return lambda p: np.array([c(p) for c in coeffs], dtype=float)


X, Y, Z = coord(0), coord(1), coord(2)
P = CONFIG["params"]["p"]
Q = CONFIG["params"]["q"]

ALGEBRAS = {
    a.id: a
    for a in (
        _algebra("plane/shear", "two-dimensional intransitive pair", 2,
                 _vec(ONE, ZERO), _vec(Y, ZERO), transitive=False),
        _algebra("plane/translations", "abelian translations of the plane", 2,
                 _vec(ONE, ZERO), _vec(ZERO, ONE)),
        _algebra("plane/affine-line", "affine line with a trivial second coordinate", 2,
                 _vec(ONE, ZERO), _vec(X, ZERO), transitive=False),
        _algebra("plane/affine-shift", "non-abelian transitive pair", 2,
                 _vec(ONE, ZERO), _vec(X, ONE)),
        _algebra("space/translations", "abelian translations of space", 3,
                 _vec(ONE, ZERO, ZERO), _vec(ZERO, ONE, ZERO), _vec(ZERO, ZERO, ONE)),
        _algebra("space/heisenberg", "nilpotent with a central shift", 3,
                 _vec(ONE, ZERO, ZERO), _vec(ZERO, ONE, ZERO), _vec(Y, ZERO, ONE)),
        _algebra("space/jordan", "solvable with a Jordan block", 3,
                 _vec(ONE, ZERO, ZERO), _vec(ZERO, ONE, ZERO),
                 _vec(lambda p: p[0] + p[1], Y, ONE)),
        _algebra("space/diagonal", "solvable with a diagonal block", 3,
                 _vec(ONE, ZERO, ZERO), _vec(ZERO, ONE, ZERO),
                 _vec(X, lambda p: P * p[1], ONE)),
        _algebra("space/rotation", "solvable with a rotation block", 3,
                 _vec(ONE, ZERO, ZERO), _vec(ZERO, ONE, ZERO),
                 _vec(lambda p: -p[1], lambda p: p[0] + Q * p[1], ONE)),
        _algebra(
            "space/so3", "compact simple algebra in angular coordinates", 3,
            _vec(ONE, ZERO, ZERO),
            _vec(lambda p: np.tan(p[1]) * np.sin(p[0]), lambda p: np.cos(p[0]),
                 lambda p: np.sin(p[0]) / np.cos(p[1])),
            _vec(lambda p: np.tan(p[1]) * np.cos(p[0]), lambda p: -np.sin(p[0]),
                 lambda p: np.cos(p[0]) / np.cos(p[1])),
            box=(-1.0, 1.0),
        ),
        _algebra(
            "space/sl2", "non-compact simple algebra", 3,
            _vec(ONE, ZERO, ZERO),
            _vec(lambda p: np.sin(p[0]), lambda p: np.cos(p[0]),
                 lambda p: np.exp(p[1]) * np.sin(p[0])),
            _vec(lambda p: np.cos(p[0]), lambda p: -np.sin(p[0]),
                 lambda p: np.exp(p[1]) * np.cos(p[0])),
        ),
    )
}


def algebra_frame() -> pd.DataFrame:
    return pd.DataFrame(
        [
            {
                "id": a.id,
                "anchor": a.anchor,
                "dim": a.dim,
                "operators": len(a.operators),
                "transitive": a.transitive,
            }
            for a in ALGEBRAS.values()
        ]
    )
