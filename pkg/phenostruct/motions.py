"""Groups of motions: actions, two-point invariance, local group laws and Lie operators.

A motion acts on M by ``actA`` and, for two sets, on N by ``actB``. Every
check here is pure given the generator it receives.
"""

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.linalg import expm, logm
from scipy.optimize import least_squares
from scipy.spatial.transform import Rotation

from phenostruct.core import (
    Family,
    MetricSpec,
    PhenostructError,
    Side,
    eval_metric,
    pair_points,
    sample_cortege,
)
from phenostruct.lie import ONE, ZERO, LieOperator, apply_operator, coord
from phenostruct.numeric import (
    ResidualStats,
    finite_diff_jacobian,
    numeric_rank,
    residual_stats,
)
from phenostruct.utils import CONFIG

MARGIN = CONFIG["motions"]["margin"]
TOL = CONFIG["tolerances"]

Action = Callable[[np.ndarray, np.ndarray], np.ndarray]


class ParamDomain(PhenostructError):
    """Parameters outside the admissible domain of a motion."""


class InvarianceViolation(PhenostructError):
    """A motion changed the metric function."""


class GroupLawViolation(PhenostructError):
    """Closure, identity or inverse failed for a motion family."""


@dataclass(frozen=True)
class MotionSpec:
    name: str
    anchor: str
    param_count: int
    identity_params: tuple[float, ...]
    dims: tuple[int, Optional[int]]
    actA: Action
    actB: Optional[Action] = None
    param_domain: Optional[Callable[[np.ndarray], bool]] = None
    compose_params: Optional[Callable[[np.ndarray, np.ndarray], np.ndarray]] = None
    param_box: Optional[Sequence[tuple[float, float]]] = None
    admissible: Optional[Callable[[np.ndarray, np.ndarray, np.ndarray], bool]] = None
    point_box: Optional[Sequence[tuple[float, float]]] = None
    embed: Optional[Callable[[np.ndarray], np.ndarray]] = None

    def params_ok(self, params: np.ndarray) -> bool:
        return self.param_domain is None or bool(self.param_domain(params))


def apply_motion(ms: MotionSpec, params, p, side: Side = Side.A) -> np.ndarray:
    params = np.asarray(params, dtype=float)
    if params.shape != (ms.param_count,) or not ms.params_ok(params):
        raise ParamDomain(f"{ms.name}: parameters {params} outside the domain")
    act = ms.actB if side is Side.B and ms.actB is not None else ms.actA
    return np.asarray(act(np.asarray(p, dtype=float), params), dtype=float)


def draw_params(ms: MotionSpec, rng: np.random.Generator, local: bool = True) -> np.ndarray:
    """Parameters in a ball around identity, or anywhere in the admissible box."""
    ident = np.asarray(ms.identity_params, dtype=float)
    for _ in range(CONFIG["sampling"]["budget"]):
        if local:
            step = rng.uniform(-1.0, 1.0, ms.param_count)
            params = ident + CONFIG["motions"]["local_radius"] * step / np.sqrt(ms.param_count)
        else:
            box = np.array(ms.param_box or [CONFIG["motions"]["param_box"]] * ms.param_count)
            params = rng.uniform(box[:, 0], box[:, 1])
        if ms.params_ok(params):
            return params
    raise ParamDomain(f"{ms.name}: no admissible parameters drawn")


# -- invariance ------------------------------------------------------------------------

def _pair_lengths(spec: MetricSpec):
    return (2, None) if spec.family is Family.ONE_SET else (1, 1)


def _moved(ms: MotionSpec, spec: MetricSpec, params, a, b):
    side_b = Side.A if spec.family is Family.ONE_SET else Side.B
    return apply_motion(ms, params, a, Side.A), apply_motion(ms, params, b, side_b)


def check_invariance(entry, n_samples: int, rng: np.random.Generator, strict: bool = False) -> ResidualStats:
    """|f(g i, g j) − f(i, j)| relative to max(1, |f|), half near identity and half far."""
    ms, spec = entry.motions, entry.spec
    lengths = _pair_lengths(spec)
    key = (0, 1) if spec.family is Family.ONE_SET else (0, 0)
    residuals = []
    for k in range(n_samples):
        for _ in range(CONFIG["sampling"]["budget"]):
            params = draw_params(ms, rng, local=bool(k % 2))
            a, b = pair_points(spec, sample_cortege(spec, lengths, rng), key)
            if ms.admissible is not None and not ms.admissible(params, a, b):
                continue
            a2, b2 = _moved(ms, spec, params, a, b)
            if np.all(np.isfinite(a2)) and np.all(np.isfinite(b2)) and spec.domain(a2, b2):
                break
        else:
            raise ParamDomain(f"{entry.id}: moved pairs keep leaving the domain")
        before = eval_metric(spec, a, b)
        after = eval_metric(spec, a2, b2)
        residuals.append(np.max(np.abs(after - before) / np.maximum(1.0, np.abs(before))))
    stats = residual_stats(residuals, "relative to max(1, |f|)")
    if strict and not stats.passes(TOL["invariance"]):
        raise InvarianceViolation(f"{entry.id}: residual {stats.max_abs:.2e}")
    return stats


# -- group laws -------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupLawReport:
    name: str
    identity: float
    closure: float
    inverse: float

    @property
    def passes(self) -> bool:
        return (
            self.identity < TOL["identity_action"]
            and self.closure < TOL["group"]
            and self.inverse < TOL["group"]
        )


def _sample_points(ms: MotionSpec, rng: np.random.Generator, count: int, params=()):
    """Points on both sides whose images under every listed parameter set stay finite."""
    dimA, dimB = ms.dims
    box = np.array(ms.point_box or [(-1.0, 1.0)] * (dimA + (dimB or 0)))
    out = []
    for _ in range(CONFIG["sampling"]["budget"]):
        if len(out) == count:
            return out
        coords = rng.uniform(box[:, 0], box[:, 1])
        a = coords[:dimA]
        b = None if dimB is None else coords[dimA:]
        images = [
            apply_motion(ms, p, pt, side)
            for p in params
            for side, pt in ((Side.A, a), (Side.B, b))
            if pt is not None
        ]
        if all(np.all(np.isfinite(img)) and np.max(np.abs(img)) < 1e6 for img in images):
            out.append((a, b))
    raise ParamDomain(f"{ms.name}: no points with finite images")


def _flat(points) -> np.ndarray:
    return np.concatenate([c for pair in points for c in pair if c is not None])


def _embed(ms: MotionSpec, points):
    """Chart points mapped to the coordinates comparisons are made in."""
    if ms.embed is None:
        return points
    return [(ms.embed(a), None if b is None else ms.embed(b)) for a, b in points]


def _image(ms: MotionSpec, params, points, raw: bool = False) -> np.ndarray:
    moved = [
        (
            apply_motion(ms, params, a, Side.A),
            None if b is None else apply_motion(ms, params, b, Side.B),
        )
        for a, b in points
    ]
    return _flat(moved if raw else _embed(ms, moved))


def _unflat(ms: MotionSpec, flat: np.ndarray, count: int):
    dimA, dimB = ms.dims
    width = dimA + (dimB or 0)
    rows = flat.reshape(count, width)
    return [(r[:dimA], None if dimB is None else r[dimA:]) for r in rows]


def _chain(ms: MotionSpec, first, second, points) -> np.ndarray:
    moved = _unflat(ms, _image(ms, first, points, raw=True), len(points))
    return _image(ms, second, moved)


def _solve_params(ms: MotionSpec, goal: np.ndarray, start: np.ndarray, points) -> np.ndarray:
    """Parameters whose action on ``points`` lands on ``goal``."""
    def residual(q):
        try:
            return _image(ms, q, points) - goal
        except ParamDomain:
            return np.full(goal.shape, 1e6)

    fit = least_squares(
        residual,
        start,
        xtol=1e-15,
        ftol=1e-15,
        gtol=1e-15,
        max_nfev=2000,
    )
    return fit.x


def check_group_laws(
    ms: MotionSpec, n_samples: int, rng: np.random.Generator, strict: bool = False
) -> GroupLawReport:
    """Identity, closure and inverse near identity.

    Composite parameters come from ``compose_params`` when given and from a
    least-squares fit on separate points otherwise; inverses are always fitted.
    """
    n_points = CONFIG["motions"]["group_points"]
    ident = np.asarray(ms.identity_params, dtype=float)
    worst_id = worst_closure = worst_inverse = 0.0
    for _ in range(n_samples):
        p1, p2 = draw_params(ms, rng), draw_params(ms, rng)
        fit_points = _sample_points(ms, rng, n_points, (p1, p2))
        check_points = _sample_points(ms, rng, n_points, (p1, p2))
        start = _flat(_embed(ms, check_points))

        worst_id = max(worst_id, float(np.max(np.abs(_image(ms, ident, check_points) - start))))

        if ms.compose_params is not None:
            p3 = np.asarray(ms.compose_params(p1, p2), dtype=float)
        else:
            p3 = _solve_params(ms, _chain(ms, p1, p2, fit_points), p1 + p2 - ident, fit_points)
        closure = np.max(np.abs(_image(ms, p3, check_points) - _chain(ms, p1, p2, check_points)))
        worst_closure = max(worst_closure, float(closure))

        moved = _unflat(ms, _image(ms, p1, fit_points, raw=True), n_points)
        inverse = _solve_params(ms, _flat(_embed(ms, fit_points)), 2.0 * ident - p1, moved)
        back = _chain(ms, p1, inverse, check_points)
        worst_inverse = max(worst_inverse, float(np.max(np.abs(back - start))))

    report = GroupLawReport(ms.name, worst_id, worst_closure, worst_inverse)
    if strict and not report.passes:
        raise GroupLawViolation(
            f"{ms.name}: identity {worst_id:.1e}, closure {worst_closure:.1e}, inverse {worst_inverse:.1e}"
        )
    return report


# -- infinitesimal invariance -------------------------------------------------------

def check_infinitesimal_invariance(
    entry, n_samples: int, rng: np.random.Generator
) -> ResidualStats:
    """X(i)f + X(j)f (or X(i)f + Ξ(α)f) for every stored operator, relative to max(1, |f|)."""
    spec = entry.spec
    two_set = spec.family is Family.TWO_SET
    key = (0, 0) if two_set else (0, 1)
    metric = spec.eval
    residuals = []
    for _ in range(n_samples):
        a, b = pair_points(spec, sample_cortege(spec, _pair_lengths(spec), rng), key)
        scale = np.maximum(1.0, np.abs(eval_metric(spec, a, b)))
        for operator in entry.lie_basis:
            value = apply_operator(operator, metric, a, b, two_set=two_set)
            residuals.append(np.max(np.abs(value) / scale))
    return residual_stats(residuals, "relative to max(1, |f|)")


def check_lie_consistency(entry, rng: np.random.Generator) -> float:
    """Largest relative distance between the derivative of the action at identity and the basis span.

    Both sides are sampled on the same points, so the comparison is between
    vector fields rather than between tangent spaces at one point.
    """
    ms, basis, spec = entry.motions, entry.lie_basis, entry.spec
    two_set = spec.family is Family.TWO_SET
    points = []
    for _ in range(CONFIG["motions"]["group_points"]):
        cortege = sample_cortege(spec, _pair_lengths(spec), rng)
        a, b = pair_points(spec, cortege, (0, 0) if two_set else (0, 1))
        points.append((a, b if two_set else None))
        if not two_set:
            points.append((b, None))

    ident = np.asarray(ms.identity_params, dtype=float)
    generated = finite_diff_jacobian(lambda q: _image(ms, q, points, raw=True), ident)
    stored = np.column_stack(
        [
            np.concatenate(
                [
                    np.concatenate([op.field(a)] + ([op.field(b, second=True)] if b is not None else []))
                    for a, b in points
                ]
            )
            for op in basis
        ]
    )
    worst = 0.0
    for left, right in ((generated, stored), (stored, generated)):
        coef, *_ = np.linalg.lstsq(right, left, rcond=None)
        miss = np.linalg.norm(right @ coef - left, axis=0)
        norms = np.maximum(np.linalg.norm(left, axis=0), 1.0)
        worst = max(worst, float(np.max(miss / norms)))
    if numeric_rank(generated).observed_rank != numeric_rank(stored).observed_rank:
        return float("inf")
    return worst


# -- the motion library -----------------------------------------------------------------

def _nonzero(*idx, margin=MARGIN):
    return lambda q: all(abs(q[k]) >= margin for k in idx)


def _translations(name, anchor, dim, sign_b=None):
    act_b = None
    if sign_b is not None:
        act_b = lambda p, q: p + sign_b * q  # noqa: E731
    return MotionSpec(
        name,
        anchor,
        dim,
        (0.0,) * dim,
        (dim, None if sign_b is None else dim),
        lambda p, q: p + q,
        act_b,
        compose_params=lambda q1, q2: q1 + q2,
    )


def _rot2(theta):
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def _euclid_plane():
    def act(p, q):
        return _rot2(q[0]) @ p + q[1:]

    def compose(q1, q2):
        return np.concatenate([[q1[0] + q2[0]], _rot2(q2[0]) @ q1[1:] + q2[1:]])

    return MotionSpec(
        "plane/euclid", "rotations and translations of the plane", 3, (0.0, 0.0, 0.0), (2, None),
        act, compose_params=compose,
    )


def _boost(phi):
    c, s = np.cosh(phi), np.sinh(phi)
    return np.array([[c, s], [s, c]])


def _minkowski_plane():
    def act(p, q):
        return _boost(q[0]) @ p + q[1:]

    def compose(q1, q2):
        return np.concatenate([[q1[0] + q2[0]], _boost(q2[0]) @ q1[1:] + q2[1:]])

    return MotionSpec(
        "plane/minkowski", "boosts and translations of the pseudo-Euclidean plane", 3,
        (0.0, 0.0, 0.0), (2, None), act, compose_params=compose,
    )


def _simplicial_plane():
    def act(p, q):
        return np.array([q[0] * p[0] + q[1], q[0] * p[1] + q[2]])

    def compose(q1, q2):
        return np.array([q2[0] * q1[0], q2[0] * q1[1] + q2[1], q2[0] * q1[2] + q2[2]])

    return MotionSpec(
        "plane/simplicial", "homotheties and translations", 3, (1.0, 0.0, 0.0), (2, None),
        act, param_domain=_nonzero(0), compose_params=compose,
    )


def _helmholtz_plane(gamma: float):
    def act(p, q):
        return np.exp(-gamma * q[0]) * (_rot2(q[0]) @ p) + q[1:]

    def compose(q1, q2):
        head = np.exp(-gamma * q2[0]) * (_rot2(q2[0]) @ q1[1:]) + q2[1:]
        return np.concatenate([[q1[0] + q2[0]], head])

    def same_branch(q, a, b):
        d = a - b
        d2 = _rot2(q[0]) @ d
        if abs(d[0]) < MARGIN or abs(d2[0]) < MARGIN:
            return False
        return abs(np.arctan(d2[1] / d2[0]) - np.arctan(d[1] / d[0]) - q[0]) < 1e-9

    return MotionSpec(
        "plane/helmholtz", "spiral similarities and translations", 3, (0.0, 0.0, 0.0), (2, None),
        act, compose_params=compose, param_box=[(-1.0, 1.0), (-2.0, 2.0), (-2.0, 2.0)],
        admissible=same_branch,
    )


def _to_sphere2(p):
    x, y = p
    return np.array([np.sin(y) * np.cos(x), np.sin(y) * np.sin(x), np.cos(y)])


def _from_sphere2(u):
    return np.array([np.arctan2(u[1], u[0]), np.arccos(np.clip(u[2], -1.0, 1.0))])


def _sphere_plane():
    def act(p, q):
        return _from_sphere2(Rotation.from_rotvec(q).apply(_to_sphere2(p)))

    def compose(q1, q2):
        return (Rotation.from_rotvec(q2) * Rotation.from_rotvec(q1)).as_rotvec()

    return MotionSpec(
        "plane/sphere", "rotations of the unit sphere", 3, (0.0, 0.0, 0.0), (2, None), act,
        compose_params=compose, param_box=[(-1.5, 1.5)] * 3,
        point_box=[(-1.0, 1.0), (0.3, np.pi - 0.3)], embed=_to_sphere2,
    )


def _euclid_space():
    def act(p, q):
        return Rotation.from_rotvec(q[:3]).apply(p) + q[3:]

    def compose(q1, q2):
        r2 = Rotation.from_rotvec(q2[:3])
        return np.concatenate([(r2 * Rotation.from_rotvec(q1[:3])).as_rotvec(), r2.apply(q1[3:]) + q2[3:]])

    return MotionSpec(
        "space/euclid", "rotations and translations of space", 6, (0.0,) * 6, (3, None), act,
        compose_params=compose, param_box=[(-1.5, 1.5)] * 3 + [(-2.0, 2.0)] * 3,
    )


_UPPER4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def _so4(q):
    w = np.zeros((4, 4))
    for value, (r, c) in zip(q, _UPPER4):
        w[r, c], w[c, r] = value, -value
    return expm(w)


def _to_sphere3(p):
    x, y, z = p
    return np.array(
        [np.sin(z) * np.sin(y) * np.cos(x), np.sin(z) * np.sin(y) * np.sin(x), np.sin(z) * np.cos(y), np.cos(z)]
    )


def _from_sphere3(u):
    z = np.arccos(np.clip(u[3], -1.0, 1.0))
    y = np.arccos(np.clip(u[2] / np.sin(z), -1.0, 1.0))
    return np.array([np.arctan2(u[1], u[0]), y, z])


def _sphere_space():
    def act(p, q):
        return _from_sphere3(_so4(q) @ _to_sphere3(p))

    def compose(q1, q2):
        w = np.real(logm(_so4(q2) @ _so4(q1)))
        return np.array([w[r, c] for r, c in _UPPER4])

    return MotionSpec(
        "space/sphere", "rotations of the unit three-sphere", 6, (0.0,) * 6, (3, None), act,
        compose_params=compose, param_box=[(-0.7, 0.7)] * 6,
        point_box=[(-1.0, 1.0), (0.3, np.pi - 0.3), (0.3, np.pi - 0.3)],
        embed=_to_sphere3,
    )


def _thermal_plane():
    def act(p, q):
        return np.array([q[0] * p[0] + q[1], p[1] / q[0]])

    return MotionSpec(
        "plane/thermal", "S' = aS + b, T' = T/a", 2, (1.0, 0.0), (2, None), act,
        param_domain=_nonzero(0),
        compose_params=lambda q1, q2: np.array([q2[0] * q1[0], q2[0] * q1[1] + q2[1]]),
    )


def _thermo_space():
    def act(p, q):
        return np.array([p[0] + q[0], p[1] + q[1], p[2] - q[1] * p[0] + q[2]])

    def compose(q1, q2):
        return np.array([q1[0] + q2[0], q1[1] + q2[1], q1[2] + q2[2] - q2[1] * q1[0]])

    return MotionSpec(
        "space/thermo", "translations with a shear of the third coordinate", 3, (0.0,) * 3,
        (3, None), act, compose_params=compose,
    )


def _r32():
    def act_a(p, q):
        return np.array([q[0] * p[0] + q[1]])

    def act_b(p, q):
        return np.array([p[0] / q[0], p[1] - q[1] * p[0] / q[0]])

    return MotionSpec(
        "two/affine-line", "x' = ax + b, ξ' = ξ/a, η' = η − bξ/a", 2, (1.0, 0.0), (1, 2),
        act_a, act_b, param_domain=_nonzero(0),
        compose_params=lambda q1, q2: np.array([q2[0] * q1[0], q2[0] * q1[1] + q2[1]]),
    )


def _unimodular(q):
    """[[a, b], [c, d]] with ad − bc = sign(a); m and −m give the same motion."""
    a, b, c = q
    return np.array([[a, b], [c, (np.sign(a) + b * c) / a]])


def _unimodular_params(m):
    if np.sign(np.linalg.det(m)) != np.sign(m[0, 0]):
        m = -m
    return np.array([m[0, 0], m[0, 1], m[1, 0]])


def _r42():
    def act_a(p, q):
        m = _unimodular(q)
        return np.array([(m[0, 0] * p[0] + m[0, 1]) / (m[1, 0] * p[0] + m[1, 1])])

    def act_b(p, q):
        (a, b), (c, d) = _unimodular(q)
        xi, eta, theta = p
        den = d - c * theta
        return np.array([(d * xi - c * eta) / den, (a * eta - b * xi) / den, (a * theta - b) / den])

    def compose(q1, q2):
        return _unimodular_params(_unimodular(q2) @ _unimodular(q1))

    def admissible(q, a, b):
        (_, _), (c, d) = _unimodular(q)
        return abs(c * a[0] + d) >= MARGIN and abs(d - c * b[2]) >= MARGIN

    return MotionSpec(
        "two/projective-line", "linear-fractional motions of the line with ad − bc = ±1",
        3, (1.0, 0.0, 0.0), (1, 3), act_a, act_b, param_domain=_nonzero(0),
        compose_params=compose, admissible=admissible,
    )


def _square(q, m):
    return np.asarray(q[: m * m], dtype=float).reshape(m, m)


def _conditioned(m):
    return lambda q: abs(np.linalg.det(_square(q, m))) >= MARGIN


def _linear(m: int, anchor: str, name: str):
    def act_a(p, q):
        return _square(q, m) @ p

    def act_b(p, q):
        return np.linalg.inv(_square(q, m)).T @ p

    return MotionSpec(
        name, anchor, m * m, tuple(np.eye(m).ravel()), (m, m), act_a, act_b,
        param_domain=_conditioned(m),
        compose_params=lambda q1, q2: (_square(q2, m) @ _square(q1, m)).ravel(),
        param_box=[(-1.0, 1.0)] * (m * m),
    )


def _r33_shift():
    def act_a(p, q):
        a, b, c, d = q
        return np.array([a * p[0] + b, p[1] + c * p[0] + d])

    def act_b(p, q):
        a, b, c, d = q
        return np.array([(p[0] - c) / a, p[1] - b * p[0] / a - (a * d - b * c) / a])

    def compose(q1, q2):
        a1, b1, c1, d1 = q1
        a2, b2, c2, d2 = q2
        return np.array([a2 * a1, a2 * b1 + b2, c1 + c2 * a1, d1 + d2 + c2 * b1])

    return MotionSpec(
        "two/shift-bilinear", "x' = ax + b, y' = y + cx + d with the dual action on (ξ, η)", 4,
        (1.0, 0.0, 0.0, 0.0), (2, 2), act_a, act_b, param_domain=_nonzero(0),
        compose_params=compose,
    )


def _affine_tail(m: int):
    """x' = A x + b on M with ξ' = A^{-T} ξ and the tail ξ^{m+1} − (A^{-1} b)·ξ on N."""

    def parts(q):
        return _square(q, m), np.asarray(q[m * m :], dtype=float)

    def act_a(p, q):
        a, b = parts(q)
        return a @ p + b

    def act_b(p, q):
        a, b = parts(q)
        inv = np.linalg.inv(a)
        return np.concatenate([inv.T @ p[:m], [p[m] - (inv @ b) @ p[:m]]])

    def compose(q1, q2):
        a1, b1 = parts(q1)
        a2, b2 = parts(q2)
        return np.concatenate([(a2 @ a1).ravel(), a2 @ b1 + b2])

    return MotionSpec(
        "two/affine-tail", "affine motions of the plane with the dual tail action", m * m + m,
        tuple(np.eye(m).ravel()) + (0.0,) * m, (m, m + 1), act_a, act_b,
        param_domain=_conditioned(m), compose_params=compose,
        param_box=[(-1.0, 1.0)] * (m * m) + [(-2.0, 2.0)] * m,
    )


def _shift_tail(m: int):
    """x'^ν = Σ a x + b^ν, x'^m = x^m + c·x + b^m with the compensating action on N."""
    k = m - 1

    def parts(q):
        q = np.asarray(q, dtype=float)
        a = q[: k * k].reshape(k, k)
        c = q[k * k : k * k + k]
        b = q[k * k + k :]
        return a, c, b

    def act_a(p, q):
        a, c, b = parts(q)
        head = a @ p[:k] + b[:k]
        return np.concatenate([head, [p[k] + c @ p[:k] + b[k]]])

    def act_b(p, q):
        a, c, b = parts(q)
        inv = np.linalg.inv(a)
        shifted = p[:k] - c
        return np.concatenate([inv.T @ shifted, [p[k] - (inv @ b[:k]) @ shifted - b[k]]])

    return MotionSpec(
        "two/shift-tail", "affine motions with a sheared last coordinate", k * k + k + m,
        tuple(np.eye(k).ravel()) + (0.0,) * (k + m), (m, m), act_a, act_b,
        param_domain=lambda q: abs(np.linalg.det(parts(q)[0])) >= MARGIN,
        param_box=[(-1.0, 1.0)] * (k * k) + [(-2.0, 2.0)] * (k + m),
    )


def _dimetric_product():
    def act_a(p, q):
        return np.array([q[0] * p[0] + q[1], p[1] / q[0]])

    def act_b(p, q):
        return np.array([q[0] * p[0] - q[1], p[1] / q[0]])

    return MotionSpec(
        "two/scaled-sum", "x' = ax + b, y' = y/a, ξ' = aξ − b, η' = η/a", 2, (1.0, 0.0), (2, 2),
        act_a, act_b, param_domain=_nonzero(0),
        compose_params=lambda q1, q2: np.array([q2[0] * q1[0], q2[0] * q1[1] + q2[1]]),
    )


def area_motion() -> MotionSpec:
    """x' = ax + by + c, y' = gx + hy + d with ah − bg = 1."""

    def act(p, q):
        a, b, g, c, d = q
        h = (1.0 + b * g) / a
        return np.array([a * p[0] + b * p[1] + c, g * p[0] + h * p[1] + d])

    return MotionSpec(
        "plane/unimodular", "unimodular affine motions preserving oriented area", 5,
        (1.0, 0.0, 0.0, 0.0, 0.0), (2, None), act, param_domain=_nonzero(0),
    )


def motion_library() -> dict[str, MotionSpec]:
    gamma = CONFIG["params"]["gamma"]
    motions = [
        _translations("line/translation", "translations of the line", 1),
        _euclid_plane(),
        _minkowski_plane(),
        _simplicial_plane(),
        _helmholtz_plane(gamma),
        _sphere_plane(),
        _euclid_space(),
        _sphere_space(),
        _translations("plane/translations", "translations of the plane", 2),
        _thermal_plane(),
        _translations("space/translations", "translations of space", 3),
        _thermo_space(),
        _translations("two/translation", "x' = x + a, ξ' = ξ − a", 1, sign_b=-1.0),
        _r32(),
        _r42(),
        _linear(2, "x' = A x, ξ' = A^{-T} ξ", "two/linear-2"),
        _linear(3, "x' = A x, ξ' = A^{-T} ξ", "two/linear-3"),
        _r33_shift(),
        _shift_tail(3),
        _affine_tail(2),
        _translations("two/translation-2", "x' = x + a, ξ' = ξ − a in both coordinates", 2, sign_b=-1.0),
        _dimetric_product(),
        area_motion(),
    ]
    return {m.name: m for m in motions}


MOTIONS = motion_library()


# -- Lie bases ---------------------------------------------------------------------------

def _field(*coeffs):
    return lambda p: np.array([c(p) for c in coeffs], dtype=float)


_m1 = lambda p: -1.0  # noqa: E731


def lie_bases() -> dict[str, tuple[LieOperator, ...]]:
    gamma = CONFIG["params"]["gamma"]
    return {
        "line": (LieOperator("∂x", _field(ONE)),),
        "euclid": (
            LieOperator("∂x", _field(ONE, ZERO)),
            LieOperator("∂y", _field(ZERO, ONE)),
            LieOperator("y∂x − x∂y", _field(coord(1), coord(0, -1.0))),
        ),
        "simplicial": (
            LieOperator("∂x", _field(ONE, ZERO)),
            LieOperator("∂y", _field(ZERO, ONE)),
            LieOperator("x∂x + y∂y", _field(coord(0), coord(1))),
        ),
        "helmholtz": (
            LieOperator("∂x", _field(ONE, ZERO)),
            LieOperator("∂y", _field(ZERO, ONE)),
            LieOperator(
                "(−y − γx)∂x + (x − γy)∂y",
                _field(lambda p: -p[1] - gamma * p[0], lambda p: p[0] - gamma * p[1]),
            ),
        ),
        "translations-2": (
            LieOperator("∂x", _field(ONE, ZERO)),
            LieOperator("∂y", _field(ZERO, ONE)),
        ),
        "thermal": (
            LieOperator("∂x", _field(ONE, ZERO)),
            LieOperator("x∂x − y∂y", _field(coord(0), coord(1, -1.0))),
        ),
        "translations-3": (
            LieOperator("∂x", _field(ONE, ZERO, ZERO)),
            LieOperator("∂y", _field(ZERO, ONE, ZERO)),
            LieOperator("∂z", _field(ZERO, ZERO, ONE)),
        ),
        "thermo": (
            LieOperator("∂x", _field(ONE, ZERO, ZERO)),
            LieOperator("∂z", _field(ZERO, ZERO, ONE)),
            LieOperator("∂y − x∂z", _field(ZERO, ONE, coord(0, -1.0))),
        ),
        "two/translation": (LieOperator("∂x ⊕ −∂ξ", _field(ONE), _field(_m1)),),
        "two/affine-line": (
            LieOperator("∂x ⊕ −ξ∂η", _field(ONE), _field(ZERO, coord(0, -1.0))),
            LieOperator("x∂x ⊕ −ξ∂ξ", _field(coord(0)), _field(coord(0, -1.0), ZERO)),
        ),
        "two/linear-2": (
            LieOperator("x∂x ⊕ −ξ∂ξ", _field(coord(0), ZERO), _field(coord(0, -1.0), ZERO)),
            LieOperator("y∂x ⊕ −ξ∂η", _field(coord(1), ZERO), _field(ZERO, coord(0, -1.0))),
            LieOperator("x∂y ⊕ −η∂ξ", _field(ZERO, coord(0)), _field(coord(1, -1.0), ZERO)),
            LieOperator("y∂y ⊕ −η∂η", _field(ZERO, coord(1)), _field(ZERO, coord(1, -1.0))),
        ),
        "two/shift-bilinear": (
            LieOperator("x∂x ⊕ −ξ∂ξ", _field(coord(0), ZERO), _field(coord(0, -1.0), ZERO)),
            LieOperator("∂x ⊕ −ξ∂η", _field(ONE, ZERO), _field(ZERO, coord(0, -1.0))),
            LieOperator("x∂y ⊕ −∂ξ", _field(ZERO, coord(0)), _field(_m1, ZERO)),
            LieOperator("∂y ⊕ −∂η", _field(ZERO, ONE), _field(ZERO, _m1)),
        ),
        "two/translation-2": (
            LieOperator("∂x ⊕ −∂ξ", _field(ONE, ZERO), _field(_m1, ZERO)),
            LieOperator("∂y ⊕ −∂η", _field(ZERO, ONE), _field(ZERO, _m1)),
        ),
        "two/scaled-sum": (
            LieOperator("x∂x − y∂y ⊕ ξ∂ξ − η∂η", _field(coord(0), coord(1, -1.0)), _field(coord(0), coord(1, -1.0))),
            LieOperator("∂x ⊕ −∂ξ", _field(ONE, ZERO), _field(_m1, ZERO)),
        ),
    }


LIE_BASES = lie_bases()
