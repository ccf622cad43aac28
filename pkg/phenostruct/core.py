"""Points, corteges, metric evaluation and domain-aware sampling.

Every other module works on the types defined here. A metric function is
an s-component two-point function; one-set geometries pair points of a
single manifold, two-set structures pair a point of M with a point of N.
"""

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable, Mapping, Optional, Sequence

import numpy as np

from phenostruct.utils import CONFIG


class PhenostructError(Exception):
    """Base class of every error raised by the package."""


class DomainExhausted(PhenostructError):
    """Rejection sampling ran out of draws."""


class DomainViolation(PhenostructError):
    """A metric was evaluated outside its domain."""


class Family(str, Enum):
    ONE_SET = "one-set"
    TWO_SET = "two-set"


class Side(str, Enum):
    A = "A"
    B = "B"


Point = np.ndarray
Box = Sequence[tuple[float, float]]
Evaluator = Callable[[np.ndarray, np.ndarray, Mapping[str, float]], np.ndarray]
PairPredicate = Callable[[np.ndarray, np.ndarray, Mapping[str, float]], bool]
PointPredicate = Callable[[np.ndarray, Mapping[str, float]], bool]


def default_box(dim: int, angular: Sequence[int] = ()) -> tuple[tuple[float, float], ...]:
    """Sampling box with the angular coordinates moved into the chart interior."""
    box = [CONFIG["sampling"]["box"]] * dim
    for idx in angular:
        box[idx] = CONFIG["sampling"]["angle_box"]
    return tuple(box)


@dataclass(frozen=True)
class MetricSpec:
    """A metric function together with its domain and sampling chart."""

    id: str
    family: Family
    s: int
    dimA: int
    evaluator: Evaluator
    dimB: Optional[int] = None
    params: Mapping[str, float] = field(default_factory=dict)
    pair_ok: Optional[PairPredicate] = None
    point_ok_A: Optional[PointPredicate] = None
    point_ok_B: Optional[PointPredicate] = None
    boxA: Optional[Box] = None
    boxB: Optional[Box] = None

    def __post_init__(self):
        if self.family is Family.TWO_SET and self.dimB is None:
            raise ValueError(f"{self.id}: two-set metric needs dimB")
        if self.family is Family.ONE_SET and self.dimB is None:
            object.__setattr__(self, "dimB", self.dimA)

    def dim(self, side: Side) -> int:
        return self.dimA if side is Side.A else self.dimB

    def box(self, side: Side) -> Box:
        if self.family is Family.ONE_SET or side is Side.A:
            return self.boxA or default_box(self.dimA)
        return self.boxB or default_box(self.dimB)

    def point_ok(self, p: Point, side: Side) -> bool:
        check = self.point_ok_A
        if self.family is Family.TWO_SET and side is Side.B:
            check = self.point_ok_B
        return check is None or bool(check(p, self.params))

    def domain(self, a: Point, b: Point) -> bool:
        """Pair predicate including the per-point constraints."""
        side_b = Side.A if self.family is Family.ONE_SET else Side.B
        if not (self.point_ok(a, Side.A) and self.point_ok(b, side_b)):
            return False
        return self.pair_ok is None or bool(self.pair_ok(a, b, self.params))

    def eval(self, a: Point, b: Point) -> np.ndarray:
        return np.atleast_1d(
            np.asarray(self.evaluator(a, b, self.params), dtype=float)
        )

    def with_params(self, **params) -> "MetricSpec":
        return replace(self, params={**self.params, **params})


@dataclass(frozen=True)
class Cortege:
    setA: tuple[Point, ...]
    setB: Optional[tuple[Point, ...]] = None

    @property
    def lengths(self) -> tuple[int, Optional[int]]:
        return len(self.setA), None if self.setB is None else len(self.setB)

    def coordinates(self) -> np.ndarray:
        """All point coordinates, set A first."""
        points = list(self.setA) + list(self.setB or ())
        return np.concatenate(points)


@dataclass(frozen=True)
class ScalingMap:
    """Componentwise strictly monotone maps ψ with optional inverses."""

    components: tuple[Callable[[float], float], ...]
    inverses: tuple[Optional[Callable[[float], float]], ...] = ()

    def __call__(self, values: np.ndarray) -> np.ndarray:
        return np.array([psi(v) for psi, v in zip(self.components, values)])

    def inverse(self, k: int) -> Optional[Callable[[float], float]]:
        if k < len(self.inverses):
            return self.inverses[k]
        return None


def sample_point(spec: MetricSpec, side: Side, rng: np.random.Generator) -> Point:
    """Draw a point uniformly from the chart box until its constraints hold."""
    box = np.array(spec.box(side), dtype=float)
    for _ in range(CONFIG["sampling"]["budget"]):
        p = rng.uniform(box[:, 0], box[:, 1])
        if spec.point_ok(p, side):
            return p
    raise DomainExhausted(f"{spec.id}: no admissible point on side {side.value}")


def required_pairs(spec: MetricSpec, lengths: tuple[int, Optional[int]]):
    """Index pairs whose values a check may read.

    One-set corteges need every ordered pair of distinct points; two-set
    corteges need every (i, α).
    """
    lenA, lenB = lengths
    if spec.family is Family.ONE_SET:
        return [(i, j) for i in range(lenA) for j in range(lenA) if i != j]
    return [(i, a) for i in range(lenA) for a in range(lenB)]


def pair_points(spec: MetricSpec, cortege: Cortege, key: tuple[int, int]):
    i, j = key
    if spec.family is Family.ONE_SET:
        return cortege.setA[i], cortege.setA[j]
    return cortege.setA[i], cortege.setB[j]


def sample_cortege(
    spec: MetricSpec,
    lengths: tuple[int, Optional[int]],
    rng: np.random.Generator,
) -> Cortege:
    """Draw a cortege whose every required pair lies in the domain."""
    lenA, lenB = lengths
    if spec.family is Family.TWO_SET and lenB is None:
        raise ValueError(f"{spec.id}: two-set cortege needs two lengths")
    pairs = required_pairs(spec, lengths)
    side_b = Side.A if spec.family is Family.ONE_SET else Side.B
    for _ in range(CONFIG["sampling"]["budget"]):
        setA = tuple(sample_point(spec, Side.A, rng) for _ in range(lenA))
        setB = None
        if spec.family is Family.TWO_SET:
            setB = tuple(sample_point(spec, side_b, rng) for _ in range(lenB))
        cortege = Cortege(setA, setB)
        if all(spec.domain(*pair_points(spec, cortege, key)) for key in pairs):
            return cortege
    raise DomainExhausted(f"{spec.id}: no admissible cortege of lengths {lengths}")


def eval_metric(spec: MetricSpec, a: Point, b: Point) -> np.ndarray:
    """Evaluate the metric on an admissible pair."""
    if not spec.domain(a, b):
        raise DomainViolation(f"{spec.id}: pair outside the domain")
    value = spec.eval(a, b)
    if value.shape != (spec.s,) or not np.all(np.isfinite(value)):
        raise DomainViolation(f"{spec.id}: non-finite value {value}")
    return value


def apply_scaling(spec: MetricSpec, psi: ScalingMap) -> MetricSpec:
    """Compose the metric with a scaling map; the domain is unchanged."""
    inner = spec.evaluator

    def scaled(a, b, params):
        return psi(np.atleast_1d(inner(a, b, params)))

    return replace(spec, id=f"{spec.id}~scaled", evaluator=scaled)
