"""Checks run against catalog entries and a few stand-alone functional relations.

Identity checks only ever see metric values: a form receives the mapping
produced by ``cortege_values`` and never the coordinates behind it.
"""

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Callable, Optional

import numpy as np
from scipy.optimize import brentq

from phenostruct.catalog import CatalogEntry
from phenostruct.core import (
    Cortege,
    DomainExhausted,
    DomainViolation,
    Family,
    MetricSpec,
    PhenostructError,
    ScalingMap,
    apply_scaling,
    eval_metric,
    sample_cortege,
)
from phenostruct.forms import IdentityForm, Values
from phenostruct.motions import apply_motion, area_motion, draw_params
from phenostruct.numeric import (
    NonFinite,
    RankReport,
    ResidualStats,
    equilibrate,
    finite_diff_jacobian,
    functional_matrix,
    numeric_rank,
    residual_stats,
)
from phenostruct.utils import CONFIG

TOL = CONFIG["tolerances"]
NUMERIC = CONFIG["numeric"]
BUDGET = CONFIG["sampling"]["budget"]


class IdentityMissing(PhenostructError):
    """The entry carries no identity form."""


class IdentityViolation(PhenostructError):
    """The identity residual exceeded its tolerance."""


class RankMismatch(PhenostructError):
    """Observed functional-matrix rank differs from the predicted one."""


class UnexpectedRelation(PhenostructError):
    """A structure expected to have no relation shows a rank deficit."""


class InverseFailure(PhenostructError):
    """A scaling map could not be inverted on the sampled range."""


# -- values of a cortege ----------------------------------------------------------------

def cortege_values(spec: MetricSpec, cortege: Cortege, diagonal: bool = False) -> dict:
    """Metric values keyed by index pair; (i, i) holds f(ii) when asked for."""
    lenA, lenB = cortege.lengths
    values = {}
    if spec.family is Family.ONE_SET:
        for i, j in combinations(range(lenA), 2):
            values[(i, j)] = eval_metric(spec, cortege.setA[i], cortege.setA[j])
        if diagonal:
            for i in range(lenA):
                values[(i, i)] = spec.eval(cortege.setA[i], cortege.setA[i])
    else:
        for i in range(lenA):
            for a in range(lenB):
                values[(i, a)] = eval_metric(spec, cortege.setA[i], cortege.setB[a])
    return values


def _form_sample(spec: MetricSpec, form: IdentityForm, lengths, rng) -> tuple[Values, float]:
    """One admissible cortege, its values and the normalized residual.

    Quasigroup forms substitute values back into the metric, so a cortege
    is redrawn when that substitution leaves the domain.
    """
    for _ in range(BUDGET):
        values = cortege_values(spec, sample_cortege(spec, lengths, rng), form.diagonal)
        try:
            residual = form.residual(values)
        except DomainViolation:
            continue
        if np.isfinite(residual):
            return values, residual
    raise DomainExhausted(f"{spec.id}: no cortege with a finite identity residual")


def _split(n: int, parts: int) -> int:
    return max(1, -(-n // parts))


# -- identities --------------------------------------------------------------------------

def check_identity(
    entry: CatalogEntry, n_samples: int, rng: np.random.Generator, strict: bool = False
) -> ResidualStats:
    """Hadamard-normalized identity residual, swept over the parameter variants."""
    if entry.identity is None:
        raise IdentityMissing(f"{entry.id}: no identity form")
    specs = entry.specs()
    residuals = []
    for spec in specs:
        form = entry.identity_for(spec)
        for _ in range(_split(n_samples, len(specs))):
            residuals.append(_form_sample(spec, form, entry.lengths, rng)[1])
    stats = residual_stats(residuals, "hadamard")
    if strict and not stats.passes(TOL["identity"]):
        raise IdentityViolation(f"{entry.id}: identity residual {stats.max_abs:.2e}")
    return stats


@dataclass(frozen=True)
class SensitivityReport:
    n_samples: int
    weakest_position: str
    min_response: float

    def passes(self, tol: float = TOL["sensitivity"]) -> bool:
        return self.min_response > tol


def check_sensitivity(
    entry: CatalogEntry,
    n_samples: int = CONFIG["run"]["sensitivity_samples"],
    rng: Optional[np.random.Generator] = None,
    delta: float = TOL["perturbation"],
) -> SensitivityReport:
    """Response of the identity to shifting one distance value by ``delta``.

    The response is |Φ(f + δe)| / ‖∇_f Φ(f)‖ per equation, maximised over
    equations and samples; the weakest position decides the report. A
    perturbed value outside the domain counts as detected.
    """
    if entry.identity is None:
        raise IdentityMissing(f"{entry.id}: no identity form")
    rng = rng if rng is not None else np.random.default_rng()
    specs = entry.specs()
    best: dict[tuple, float] = {}
    used = 0
    for k in range(n_samples * 5):
        if used == n_samples:
            break
        spec = specs[k % len(specs)]
        form = entry.identity_for(spec)
        values, _ = _form_sample(spec, form, entry.lengths, rng)
        positions = [(key, c) for key in values if key[0] != key[1] or spec.family is Family.TWO_SET
                     for c in range(spec.s)]
        base = np.array([values[key][c] for key, c in positions])

        def rebuild(flat, values=values, positions=positions):
            out = {key: np.array(v, dtype=float) for key, v in values.items()}
            for (key, c), v in zip(positions, flat):
                out[key][c] = v
            return out

        try:
            grad = finite_diff_jacobian(lambda u: form.raw(rebuild(u)), base)
        except PhenostructError:
            continue
        norms = np.maximum(np.linalg.norm(grad, axis=1), np.finfo(float).tiny)
        used += 1
        for idx, position in enumerate(positions):
            shifted = base.copy()
            shifted[idx] += delta
            try:
                raw = form.raw(rebuild(shifted))
                response = float(np.max(np.abs(raw) / norms))
            except PhenostructError:
                response = np.inf
            if not np.isfinite(response):
                response = np.inf
            best[position] = max(best.get(position, 0.0), response)
    if not best:
        raise DomainExhausted(f"{entry.id}: no cortege admitted a gradient")
    (key, comp), weakest = min(best.items(), key=lambda item: item[1])
    return SensitivityReport(used, f"f{key}[{comp}]", weakest)


# -- ranks ---------------------------------------------------------------------------------

def _cortege_rank(spec: MetricSpec, lengths, rng, tol_rel: float) -> RankReport:
    """Rank of one equilibrated functional matrix, resampled while the gap is unclear."""
    report = None
    for _ in range(NUMERIC["resample"]):
        try:
            matrix = functional_matrix(spec, sample_cortege(spec, lengths, rng))
        except NonFinite:
            continue
        report = numeric_rank(equilibrate(matrix), tol_rel)
        if report.confident:
            return report
    if report is None:
        raise DomainExhausted(f"{spec.id}: no cortege with a finite functional matrix")
    return report


def _rank_over(
    spec_list, lengths, predicted: int, n_corteges: int, rng, tol_rel: float
) -> RankReport:
    observed = []
    worst = None
    per_spec = _split(n_corteges, len(spec_list))
    for spec in spec_list:
        for _ in range(per_spec):
            report = _cortege_rank(spec, lengths, rng, tol_rel)
            observed.append(report.observed_rank)
            if worst is None or report.gap_ratio < worst.gap_ratio:
                worst = report
    counts = Counter(observed)
    top = max(observed) if max(observed) > predicted else counts.most_common(1)[0][0]
    return RankReport(
        top,
        worst.singular_values,
        tol_rel,
        worst.gap_ratio,
        predicted,
        len(observed),
        counts[predicted] / len(observed),
    )


def rank_passes(report: RankReport) -> bool:
    return report.matches and report.agreement >= NUMERIC["agreement"]


def check_rank_predicate(
    entry: CatalogEntry,
    n_corteges: int,
    rng: np.random.Generator,
    tol_rel: float = NUMERIC["tol_rank"],
    strict: bool = False,
) -> RankReport:
    """Observed rank of the functional matrix against the predicted one."""
    report = _rank_over(entry.specs(), entry.lengths, entry.predicted_rank, n_corteges, rng, tol_rel)
    if strict and not rank_passes(report):
        raise RankMismatch(
            f"{entry.id}: observed {report.observed_rank}, predicted {report.predicted_rank}, "
            f"spectrum {report.singular_values}"
        )
    return report


def full_count(entry: CatalogEntry) -> int:
    """Number of functions of the minimal cortege."""
    lenA, lenB = entry.lengths
    if entry.family is Family.ONE_SET:
        return entry.s * lenA * (lenA - 1) // 2
    return entry.s * lenA * lenB


@dataclass(frozen=True)
class NoRelationReport:
    rank: RankReport
    candidate_residual: Optional[float] = None

    @property
    def passes(self) -> bool:
        if not rank_passes(self.rank):
            return False
        return self.candidate_residual is None or self.candidate_residual > TOL["candidate"]


def check_no_relation(
    entry: CatalogEntry,
    rng: np.random.Generator,
    n_corteges: int = 20,
    n_candidate: int = 100,
    strict: bool = False,
) -> NoRelationReport:
    """Full rank on the minimal cortege, and a failing candidate form when one is proposed."""
    report = _rank_over(
        entry.specs(), entry.lengths, full_count(entry), n_corteges, rng, NUMERIC["tol_rank"]
    )
    candidate = None
    if entry.identity is not None:
        candidate = max(
            _form_sample(entry.spec, entry.identity, entry.lengths, rng)[1]
            for _ in range(n_candidate)
        )
    out = NoRelationReport(report, candidate)
    if strict and not out.passes:
        raise UnexpectedRelation(
            f"{entry.id}: observed rank {report.observed_rank} of {report.predicted_rank} functions"
        )
    return out


def check_scaling_rank(
    entry: CatalogEntry,
    n_corteges: int,
    rng: np.random.Generator,
    psi: Optional[ScalingMap] = None,
) -> RankReport:
    """The rank survives composing the metric with a strictly monotone scaling."""
    psi = psi or monotone_scaling(entry.s)
    specs = [apply_scaling(spec, psi) for spec in entry.specs()]
    return _rank_over(
        specs, entry.lengths, entry.predicted_rank, n_corteges, rng, NUMERIC["tol_rank"]
    )


def monotone_scaling(s: int) -> ScalingMap:
    """v ↦ v + v³/10 on every component."""
    return ScalingMap(tuple((lambda v: v + 0.1 * v**3) for _ in range(s)))


# -- oriented area ---------------------------------------------------------------------------

def oriented_area(p, q, r) -> float:
    """S = ½ det[[x_p, x_q, x_r], [y_p, y_q, y_r], [1, 1, 1]]."""
    return 0.5 * ((q[0] - p[0]) * (r[1] - p[1]) - (r[0] - p[0]) * (q[1] - p[1]))


def _figure_areas(flat: np.ndarray) -> np.ndarray:
    """S(0jk) for 0 < j < k of a seven-point figure, S(012) left out."""
    points = flat.reshape(-1, 2)
    triples = [(0, j, k) for j, k in combinations(range(1, len(points)), 2)][1:]
    return np.array([oriented_area(*(points[t] for t in triple)) for triple in triples])


@dataclass(frozen=True)
class AreaReport:
    relation: ResidualStats
    invariance: ResidualStats
    rank: RankReport
    figure_ranks: tuple[int, ...] = ()

    @property
    def passes(self) -> bool:
        return (
            self.relation.passes(TOL["area"])
            and self.invariance.passes(TOL["area"])
            and self.rank.matches
            and all(r == self.rank.predicted_rank for r in self.figure_ranks)
        )


def check_area_ternary(
    rng: np.random.Generator, n_samples: int = 100, strict: bool = False
) -> AreaReport:
    """Alternating sum of four triangle areas, invariance and the rank over random seven-point figures.

    Every one of the ``n_samples`` figures must reach rank 14 - 5; the report carries the worst one.
    """
    lo, hi = CONFIG["sampling"]["box"]
    relation = []
    invariance = []
    motion = area_motion()
    for _ in range(n_samples):
        i, j, k, l = rng.uniform(lo, hi, (4, 2))
        parts = [oriented_area(i, j, k), -oriented_area(i, j, l), oriented_area(i, k, l),
                 -oriented_area(j, k, l)]
        relation.append(abs(sum(parts)) / max(1.0, sum(abs(p) for p in parts)))
        params = draw_params(motion, rng, local=False)
        moved = [apply_motion(motion, params, p) for p in (i, j, k)]
        before = oriented_area(i, j, k)
        invariance.append(abs(oriented_area(*moved) - before) / max(1.0, abs(before)))
    expected = 14 - motion.param_count
    reports = [
        numeric_rank(finite_diff_jacobian(_figure_areas, rng.uniform(lo, hi, 14)))
        for _ in range(n_samples)
    ]
    # worst figure: off rank first, then the smallest gap
    worst = min(reports, key=lambda r: (r.observed_rank == expected, r.gap_ratio))
    ranks = tuple(r.observed_rank for r in reports)
    rank = RankReport(
        worst.observed_rank, worst.singular_values, worst.tol_rel, worst.gap_ratio,
        expected, n_corteges=len(reports),
        agreement=sum(r == expected for r in ranks) / len(reports),
    )
    report = AreaReport(
        residual_stats(relation, "relative to Σ|S|"),
        residual_stats(invariance, "relative to max(1, |S|)"),
        rank,
        ranks,
    )
    if strict and not report.passes:
        raise RankMismatch(f"oriented area: rank {rank.observed_rank}, expected {rank.predicted_rank}")
    return report


# -- symmetry of one-component metrics ----------------------------------------------------------

class Symmetry(str, Enum):
    SYMMETRIC = "symmetric"
    ANTISYMMETRIC = "antisymmetric"
    NEITHER = "neither"


def classify_distance_symmetry(
    spec: MetricSpec, rng: np.random.Generator, n_samples: int = 50
) -> Symmetry:
    """Compare f(ij) with ±f(ji) on random admissible pairs."""
    if spec.s != 1:
        raise ValueError(f"{spec.id}: symmetry is classified for one component only")
    sym = anti = 0.0
    for _ in range(n_samples):
        a, b = sample_cortege(spec, (2, None), rng).setA
        forward, backward = eval_metric(spec, a, b)[0], eval_metric(spec, b, a)[0]
        scale = max(1.0, abs(forward))
        sym = max(sym, abs(forward - backward) / scale)
        anti = max(anti, abs(forward + backward) / scale)
    tol = TOL["symmetry"]
    if sym < tol:
        return Symmetry.SYMMETRIC
    if anti < tol:
        return Symmetry.ANTISYMMETRIC
    return Symmetry.NEITHER


# -- cycles ------------------------------------------------------------------------------------

@dataclass(frozen=True)
class CycleCurve:
    name: str
    x: Callable[[float], float]
    y: Callable[[float], float]
    interval: tuple[float, float]

    def point(self, t: float) -> np.ndarray:
        return np.array([self.x(t), self.y(t)], dtype=float)


CURVES = {
    c.name: c
    for c in (
        CycleCurve("circle", np.cos, np.sin, (-3.0, 3.0)),
        CycleCurve("line", lambda t: t, lambda t: 2.0 * t + 1.0, (-2.0, 2.0)),
        CycleCurve("parabola", lambda t: t, lambda t: t * t, (-2.0, 2.0)),
    )
}


def check_cycle(
    curve: CycleCurve, spec: MetricSpec, rng: np.random.Generator, n_samples: int = 100
) -> ResidualStats:
    """|f(t_i, t_j) − f(t_i + Δ, t_j + Δ)| along the curve."""
    if spec.family is not Family.ONE_SET or spec.dimA != 2:
        raise ValueError(f"{spec.id}: cycles live on a two-dimensional single set")
    lo, hi = curve.interval
    width = hi - lo
    residuals = []
    for _ in range(n_samples):
        shift = rng.uniform(-width / 4.0, width / 4.0)
        ti, tj = rng.uniform(lo + width / 4.0, hi - width / 4.0, 2)
        pairs = [(curve.point(ti), curve.point(tj)), (curve.point(ti + shift), curve.point(tj + shift))]
        if not all(spec.domain(a, b) for a, b in pairs):
            continue
        before, after = (eval_metric(spec, a, b) for a, b in pairs)
        residuals.append(float(np.max(np.abs(after - before))))
    return residual_stats(residuals, "absolute")


# -- the translation form of the distance of a single line ------------------------------------------

def _inverse(psi: Callable[[float], float], bracket: tuple[float, float]):
    lo, hi = bracket

    def inv(u: float) -> float:
        try:
            return brentq(lambda t: psi(t) - u, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps)
        except ValueError as err:
            raise InverseFailure(f"no root of ψ(t) = {u} on {bracket}") from err

    return inv


def check_translation_form(
    psi: ScalingMap,
    rng: np.random.Generator,
    n_samples: int = 100,
    t_box: tuple[float, float] = (-1.0, 1.0),
    bracket: tuple[float, float] = (-10.0, 10.0),
    strict: bool = False,
) -> ResidualStats:
    """φ(u, v) = ψ(ψ⁻¹(u) − ψ⁻¹(v)) satisfies φ(φ(x, z), φ(y, z)) = φ(x, y).

    The inverse is ``psi.inverse(0)`` when given, otherwise found by brentq
    on ``bracket``.
    """
    fn = psi.components[0]
    inv = psi.inverse(0) or _inverse(fn, bracket)

    def phi(u, v):
        return fn(inv(u) - inv(v))

    residuals = []
    for _ in range(n_samples):
        x, y, z = (fn(t) for t in rng.uniform(*t_box, 3))
        target = phi(x, y)
        residuals.append(abs(phi(phi(x, z), phi(y, z)) - target) / max(1.0, abs(target)))
    stats = residual_stats(residuals, "relative to max(1, |φ|)")
    if strict and not stats.passes(TOL["translation"]):
        raise InverseFailure(f"translation form residual {stats.max_abs:.2e}")
    return stats
