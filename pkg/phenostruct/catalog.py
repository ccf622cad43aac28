"""Registry of the geometries and two-set structures the laboratory checks.

Every entry pairs a metric specification with its expected rank, the
identity form it should satisfy (when a closed form is known), and the
motion group and Lie basis used by the invariance checks.
"""

from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Callable, Iterable, Mapping, Optional, Union

import pandas as pd

from phenostruct import metrics as mx
from phenostruct import forms as fx
from phenostruct.core import Family, MetricSpec, PhenostructError, default_box
from phenostruct.forms import FormKind, IdentityForm
from phenostruct.lie import LieOperator
from phenostruct.motions import LIE_BASES, MOTIONS, MotionSpec
from phenostruct.utils import CONFIG

PARAMS = CONFIG["params"]

# Defining metric function of every entry. Differences Δx = x_i − x_j; a point
# of M is (x, y, z, t), a point of N is (ξ, η, μ, ν, ρ, τ, φ, ω) or (ξ, η, θ)
# for three components; c(ij) = sin y_i sin y_j cos Δx + cos y_i cos y_j;
# Δ(i, k, l) = det[[u, v, 1], ...] over the point i of M and the coordinate
# pairs 1 = (ξ, η), 2 = (μ, ν), 3 = (ρ, τ), 4 = (φ, ω) of a point of N;
# z = x + e·y, w = ξ + e·η, m = μ + e·ν, r = ρ + e·τ with e² = ε; T = t_i + t_j.
FORMULAS = {
    "one/1d/line": "f = x_i − x_j",
    "one/2d/euclid": "f = Δx² + Δy²",
    "one/2d/sphere": "f = c(ij)",
    "one/2d/lobachevsky": "f = sh y_i sh y_j cos Δx − ch y_i ch y_j",
    "one/2d/minkowski": "f = Δx² − Δy²",
    "one/2d/hyperboloid": "f = ch y_i ch y_j cos Δx − sh y_i sh y_j",
    "one/2d/symplectic": "f = x_i y_j − x_j y_i",
    "one/2d/simplicial": "f = Δy/Δx",
    "one/2d/pseudo-helmholtz": "f = (Δx² − Δy²) exp(2β arcth(Δy/Δx))",
    "one/2d/dual-helmholtz": "f = Δx² exp(2Δy/Δx)",
    "one/2d/helmholtz": "f = (Δx² + Δy²) exp(2γ arctg(Δy/Δx))",
    "one/2d/disconnected": "f = (Δx² + ε_i y_i² + ε_j y_j²)/(y_i y_j)",
    "one/3d/euclid": "f = Δx² + Δy² + Δz²",
    "one/3d/sphere": "f = sin z_i sin z_j c(ij) + cos z_i cos z_j",
    "one/3d/lobachevsky": "f = sh z_i sh z_j c(ij) − ch z_i ch z_j",
    "one/3d/pseudo-euclid": "f = Δx² + Δy² − Δz²",
    "one/3d/hyperboloid-one": "f = ch z_i ch z_j c(ij) − sh z_i sh z_j",
    "one/3d/hyperboloid-two": "f = ch z_i ch z_j (ch y_i ch y_j cos Δx − sh y_i sh y_j) − sh z_i sh z_j",
    "one/3d/symplectic": "f = x_i y_j − x_j y_i + z_i − z_j",
    "one/3d/simplicial-additive": "f = Δy/Δx + z_i + z_j",
    "one/3d/simplicial-multiplicative": "f = (Δy/Δx) exp(z_i + z_j)",
    "one/3d/special-minkowski": "f = (Δx² − Δy²) exp 2(z_i + z_j)",
    "one/3d/special-euclid": "f = (Δx² + Δy²) exp 2(z_i + z_j)",
    "one/3d/pseudo-helmholtz": "f = (Δx² − Δy²) exp(2β arcth(Δy/Δx) + 2(z_i + z_j))",
    "one/3d/dual-helmholtz": "f = Δx² exp(2Δy/Δx + 2(z_i + z_j))",
    "one/3d/helmholtz": "f = (Δx² + Δy²) exp(2γ arctg(Δy/Δx) + 2(z_i + z_j))",
    "one/3d/disconnected": "f = (Δx² ± Δy² + ε_i z_i² + ε_j z_j²)/(z_i z_j)",
    "one/4d/euclid": "f = Δx² + Δy² + Δz² + Δt²",
    "one/4d/pseudo-euclid-1": "f = Δx² + Δy² + Δz² − Δt²",
    "one/4d/pseudo-euclid-2": "f = Δx² + Δy² − Δz² − Δt²",
    "one/4d/special-euclid": "f = (Δx² + Δy² + Δz²) exp 2T",
    "one/4d/special-pseudo-euclid": "f = (Δx² + Δy² − Δz²) exp 2T",
    "one/4d/sphere": "f = sin t_i sin t_j (sin z_i sin z_j c(ij) + cos z_i cos z_j) + cos t_i cos t_j",
    "one/4d/sphere-hyperbolic": "f = ch t_i ch t_j (sin z_i sin z_j c(ij) + cos z_i cos z_j) − sh t_i sh t_j",
    "one/4d/lobachevsky": "f = sh t_i sh t_j (sin z_i sin z_j c(ij) + cos z_i cos z_j) − ch t_i ch t_j",
    "one/4d/hyperbolic-hyperbolic": "f = ch t_i ch t_j (ch z_i ch z_j c(ij) − sh z_i sh z_j) − sh t_i sh t_j",
    "one/4d/hyperbolic-lobachevsky": "f = sh t_i sh t_j (ch z_i ch z_j c(ij) − sh z_i sh z_j) − ch t_i ch t_j",
    "one/4d/symplectic": "f = x_i y_j − x_j y_i + z_i t_j − z_j t_i",
    "one/4d/disconnected": "f = (Δx² ± Δy² ± Δz² + ε_i t_i² + ε_j t_j²)/(t_i t_j)",
    "one/2d/s2-additive": "f = (Δx, Δy)",
    "one/2d/s2-thermal": "f = (Δx y_i, Δx y_j)",
    "one/3d/s3-additive": "f = (Δx, Δy, Δz)",
    "one/3d/s3-thermo": "f = (Δy, Δx y_i + Δz, Δx y_j + Δz)",
    "one/3d/s3-dual-helmholtz": "f = (Δx² exp(2Δy/Δx), Δx z_i, Δx z_j)",
    "one/3d/s3-simplicial": "f = (Δy/Δx, Δx z_i, Δx z_j)",
    "one/3d/s3-product": "f = (Δx Δy, Δx z_i, Δx z_j)",
    "one/3d/s3-split": "f = (Δy, Δx z_i, Δx z_j)",
    "one/3d/s3-power": "f = (|Δx|^p/Δy, Δx z_i, Δx z_j)",
    "one/3d/s3-polar": "f = (Δx² + Δy², z_i + arctg(Δy/Δx), z_j + arctg(Δy/Δx))",
    "one/3d/s3-helmholtz": "f = ((Δx² + Δy²) exp(2γ arctg(Δy/Δx)), z_i + arctg(Δy/Δx), z_j + arctg(Δy/Δx))",
    "one/3d/s3-sphere": (
        "f = (c(ij), z_i − arcsin(sin Δx sin y_j/√(1 − c²)), z_j + arcsin(sin Δx sin y_i/√(1 − c²)))"
    ),
    "one/3d/s3-cubic": "f = (Δx y_i y_j, z_i + 1/(Δx y_i²), z_j − 1/(Δx y_j²))",
    "one/4d/s4-k1": "f = (Δx² exp εT, Δy² exp kT, Δz² exp lT, Δt)",
    "one/4d/s4-k2": "f = ((Δx² + Δy²) exp(−2k arctg(Δy/Δx)), 2 arctg(Δy/Δx) + T, Δz² exp lT, Δt)",
    "one/4d/s4-k3": "f = (Δx² exp(−2kΔy/Δx), 2Δy/Δx + T, Δz² exp εT, Δt)",
    "one/4d/s4-k4": "f = (Δx, 2Δy/Δx − T, Δz − Δy²/(2Δx), Δt)",
    "one/4d/s4-k5": "f = (Δx, 2Δy/Δx − T, Δx ln|Δx + Δy + Δz| − Δy, Δt)",
    "one/4d/s4-k6": "f = (Δx² exp(−2kΔy/Δx), 2Δy/Δx − T, kΔy − Δx − k²Δz, Δt)",
    "one/4d/s4-k7": "f = (Δx² exp(−2kΔy/Δx), 2Δy/Δx − T, 2Δz/Δx − k(Δy/Δx)², Δt)",
    "one/4d/s4-k8": "f = ((Δx − z_i Δy)² exp cT, (Δx − z_j Δy)² exp cT, Δy² exp T, Δt)",
    "one/4d/s4-k9": "f = (Δx exp z_i, Δx exp z_j, Δy exp t_i, Δy exp t_j)",
    "one/4d/s4-k10": "f = ((Δx² + Δy²) exp(z_i + z_j), 2 arctg(Δy/Δx) + T, Δz, Δt)",
    "one/4d/s4-k11": (
        "f = (c(ij), z_i − arcsin(sin Δx sin y_j/√(1 − c²)), z_j + arcsin(sin Δx sin y_i/√(1 − c²)), Δt)"
    ),
    "one/4d/s4-k12": "f = (Δx y_i y_j, z_i + 1/(Δx y_i²), z_j − 1/(Δx y_j²), Δt)",
    "two/u/r22": "f = x + ξ",
    "two/u/r32": "f = xξ + η",
    "two/u/r42": "f = (xξ + η)/(x + μ)",
    "two/u/r44": "f = xξ + yη + zμ",
    "two/u/r44-shift": "f = xξ + yη + z + μ",
    "two/u/r43": "f = xξ + yη + μ",
    "two/u/r33": "f = xξ + yη",
    "two/u/r33-shift": "f = xξ + y + η",
    "two/d/r22-additive": "f = (x + ξ, y + η)",
    "two/d/r22-mult": "f = ((x + ξ)y, (x + ξ)η)",
    "two/d/r32-eps": "f = (xξ + εyη + μ, xη + yξ + ν)",
    "two/d/r32-power": "f = (xξ + μ, xη + yξ^c + ν)",
    "two/d/r32-log": "f = (xξ + μ, xη + yξ² + x²ξ² ln ξ + ν)",
    "two/d/r32-linear": "f = (xξ + yμ, xη + yν)",
    "two/d/r42-eps": "f¹ + e·f² = (zw + m)/(z + r)",
    "two/d/r42-mobius": "f = ((xξ + μ)/(x + ρ), (xη + yν + τ)/(x + ρ))",
    "two/d/r42-affine": "f = (xξ + yμ + ρ, xη + yν + τ)",
    "two/d/r52-projective": "f = ((xξ + yμ + ρ)/(xφ + y + ω), (xη + yν + τ)/(xφ + y + ω))",
    "two/q/r22-additive": "f = (x − ξ, y − η)",
    "two/q/r22-mult": "f = ((x − ξ)η, y/η)",
    "two/q/r32-eps": "f¹ + e·f² = (z − m)/(w − m)",
    "two/q/r32-power": "f = ((x − μ)/(ξ − μ), −Δ(i, 1, 2)/(ξ − μ)^(c + 1))",
    "two/q/r32-log": (
        "f = ((x − μ)/(ξ − μ), (−Δ(i, 1, 2) − (ξ − μ)(x − ξ)(x − μ) ln|ξ − μ|)/(ξ − μ)³)"
    ),
    "two/q/r32-linear": "f = ((xν − yμ)/(ξν − ημ), (xη − yξ)/(ξν − ημ))",
    "two/q/r42-eps": "f¹ + e·f² = (z − m)(w − r)/((z − r)(w − m))",
    "two/q/r42-mobius": (
        "f = ((x − μ)(ξ − ρ)/((x − ρ)(ξ − μ)), "
        "−(μ − ρ)(ξ − ρ)Δ(i, 1, 2)/((x − ρ)(ξ − μ)Δ(1, 2, 3)))"
    ),
    "two/q/r42-affine": "f = (Δ(i, 2, 3)/Δ(1, 2, 3), Δ(i, 1, 3)/Δ(1, 2, 3))",
    "two/q/r52-projective": (
        "f = (Δ(i, 2, 4)Δ(1, 3, 4)/(Δ(1, 2, 4)Δ(i, 3, 4)), Δ(i, 1, 3)Δ(2, 3, 4)/(Δ(1, 2, 3)Δ(i, 3, 4)))"
    ),
    "two/t/r22-additive": "f = (x + ξ, y + η, z + θ)",
    "two/t/r22-heisenberg": "f = (y − η, (x + ξ)y + z + θ, (x + ξ)η + z + θ)",
    "two/t/r22-log": "f = ((x + ξ)² exp(2(y + η)/(x + ξ)), (x + ξ)z, (x + ξ)θ)",
    "two/t/r22-ratio": "f = ((x + ξ)/(y + η), (x + ξ)z, (x + ξ)θ)",
    "two/t/r22-product": "f = ((x + ξ)(y + η), (x + ξ)z, (x + ξ)θ)",
    "two/t/r22-shift": "f = (y + η, (x + ξ)z, (x + ξ)θ)",
    "two/t/r22-power": "f = (|x + ξ|^p/(y + η), (x + ξ)z, (x + ξ)θ)",
    "two/t/r22-polar": (
        "f = ((x + ξ)² + (y + η)², z + arctg((y + η)/(x + ξ)), θ + arctg((y + η)/(x + ξ)))"
    ),
    "two/t/r22-helmholtz": (
        "f = (((x + ξ)² + (y + η)²) exp(2γ arctg((y + η)/(x + ξ))), "
        "z + arctg((y + η)/(x + ξ)), θ + arctg((y + η)/(x + ξ)))"
    ),
    "two/t/r22-sphere": (
        "f = (c, z + arcsin(sin(x + ξ) sin η/√(1 − c²)), θ + arcsin(sin(x + ξ) sin y/√(1 − c²))), "
        "c = sin y sin η cos(x + ξ) + cos y cos η"
    ),
    "two/t/r22-cubic": "f = ((x + ξ)yη, z + 1/((x + ξ)y²), θ + 1/((x + ξ)η²))",
    "two/tq/r22-additive": "f = (x − ξ, y − η, z − θ)",
    "two/tq/r22-heisenberg": "f = (x − ξ, y − η, (x − ξ)η + z − θ)",
    "two/tq/r22-log": "f = ((x − ξ)θ, (y − η − (x − ξ) ln θ)θ, z/θ)",
    "two/tq/r22-ratio": "f = ((x − ξ)θ, (y − η)θ, z/θ)",
    "two/tq/r22-product": "f = ((x − ξ)θ, (y − η)/θ, z/θ)",
    "two/tq/r22-shift": "f = ((x − ξ)θ, y − η, z/θ)",
    "two/tq/r22-power": "f = ((x − ξ)θ, (y − η)θ^p, z/θ)",
    "two/tq/r22-polar": "f = ((x − ξ) cos θ − (y − η) sin θ, (x − ξ) sin θ + (y − η) cos θ, z − θ)",
    "two/tq/r22-helmholtz": (
        "f = (e^(−θ)((x − ξ) cos θ − (y − η) sin θ), e^(−θ)((x − ξ) sin θ + (y − η) cos θ), z − θ)"
    ),
    "two/tq/r22-sphere": "f = s_α u − s_i w + u × w, u = (x, y, z), w = (ξ, η, θ), s = √(1 − |·|²)",
    "two/tq/r22-cubic": "f = (dη²/r, ry/η, z − θη²/(ry²)), d = x − ξ, r = 1 − dθη²",
    "two/x/cubic": "f = xξ + ξ³",
    "two/x/r53-candidate": "f = (xξ + yη + μ)/(xy + ν)",
}


class UnknownId(PhenostructError):
    """No catalog entry carries the requested identifier."""


class Representation(str, Enum):
    CANONICAL = "canonical"
    QUASIGROUP = "quasigroup"
    CANDIDATE = "candidate"


FormSource = Union[IdentityForm, Callable[[MetricSpec], IdentityForm], None]


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    spec: MetricSpec
    predicted_rank: int
    anchor: str
    form: Optional[Callable[[MetricSpec], IdentityForm]] = None
    motion: Optional[str] = None
    lie: Optional[str] = None
    representation: Representation = Representation.CANONICAL
    expect_no_structure: bool = False
    variants: tuple[Mapping[str, float], ...] = ()

    @property
    def family(self) -> Family:
        return self.spec.family

    @property
    def s(self) -> int:
        return self.spec.s

    @property
    def n(self) -> int:
        """Coordinates per metric component on M."""
        return self.spec.dimA // self.spec.s

    @property
    def lengths(self) -> tuple[int, Optional[int]]:
        """Cortege lengths of the rank: (n + 2,) for one set, (m + 1, n + 1) for two."""
        spec = self.spec
        if spec.family is Family.ONE_SET:
            return spec.dimA // spec.s + 2, None
        return spec.dimB // spec.s + 1, spec.dimA // spec.s + 1

    @property
    def identity(self) -> Optional[IdentityForm]:
        return self.identity_for(self.spec)

    def identity_for(self, spec: MetricSpec) -> Optional[IdentityForm]:
        return None if self.form is None else self.form(spec)

    @property
    def motions(self) -> Optional[MotionSpec]:
        return None if self.motion is None else MOTIONS[self.motion]

    @property
    def lie_basis(self) -> Optional[tuple[LieOperator, ...]]:
        return None if self.lie is None else LIE_BASES[self.lie]

    def specs(self) -> list[MetricSpec]:
        """The base specification, or one per parameter variant."""
        if not self.variants:
            return [self.spec]
        return [self.spec.with_params(**v) for v in self.variants]


# -- registry -----------------------------------------------------------------------

_REGISTRY: dict[str, CatalogEntry] = {}


def register(entry: CatalogEntry) -> None:
    if entry.id in _REGISTRY:
        raise ValueError(f"duplicate catalog id {entry.id}")
    _REGISTRY[entry.id] = entry


def register_required_entries() -> int:
    """Fill the registry once and return its size."""
    if not _REGISTRY:
        for build in (
            _line,
            _planes,
            _spaces,
            _four_spaces,
            _dimetric_planes,
            _trimetric_spaces,
            _four_metric_spaces,
            _two_set_single,
            _two_set_dimetric,
            _two_set_trimetric,
            _negative,
        ):
            for entry in build():
                register(entry)
    return len(_REGISTRY)


def get_entry(entry_id: str) -> CatalogEntry:
    register_required_entries()
    try:
        return _REGISTRY[entry_id]
    except KeyError:
        raise UnknownId(f"unknown catalog id: {entry_id}") from None


def list_entries(
    family: Optional[Family] = None,
    s: Optional[int] = None,
    n: Optional[int] = None,
    representation: Optional[Representation] = Representation.CANONICAL,
    prefix: Optional[str] = None,
) -> list[CatalogEntry]:
    """Entries in registration order; ``representation=None`` keeps every representation."""
    register_required_entries()
    out = []
    for entry in _REGISTRY.values():
        if family is not None and entry.family is not Family(family):
            continue
        if s is not None and entry.s != s:
            continue
        if n is not None and entry.n != n:
            continue
        if representation is not None and entry.representation is not Representation(representation):
            continue
        if prefix is not None and not entry.id.startswith(prefix):
            continue
        out.append(entry)
    return out


def all_entries() -> list[CatalogEntry]:
    return list_entries(representation=None)


def catalog_frame(entries: Optional[Iterable[CatalogEntry]] = None) -> pd.DataFrame:
    rows = []
    for entry in entries if entries is not None else all_entries():
        identity = entry.identity
        rows.append(
            {
                "id": entry.id,
                "family": entry.family.value,
                "s": entry.s,
                "dimA": entry.spec.dimA,
                "dimB": entry.spec.dimB,
                "lengths": "/".join(str(k) for k in entry.lengths if k is not None),
                "predicted_rank": entry.predicted_rank,
                "identity": None if identity is None else identity.kind.value,
                "motions": entry.motion,
                "lie_basis": entry.lie,
                "representation": entry.representation.value,
                "variants": len(entry.variants),
                "anchor": entry.anchor,
            }
        )
    return pd.DataFrame(rows)


# -- entry builders -------------------------------------------------------------------

def _form(source: FormSource) -> Optional[Callable[[MetricSpec], IdentityForm]]:
    if source is None or not isinstance(source, IdentityForm):
        return source
    return lambda spec: source


def _box(dim: int, angular=(), **fixed):
    """Default chart box with angular coordinates and per-index overrides (``c<k>=(lo, hi)``)."""
    box = list(default_box(dim, angular))
    for key, bounds in fixed.items():
        box[int(key[1:])] = bounds
    return tuple(box)


def _rank(spec: MetricSpec) -> int:
    if spec.family is Family.ONE_SET:
        m = spec.dimA // spec.s + 2
        return spec.s * m * (m - 1) // 2 - spec.s
    len_a, len_b = spec.dimB // spec.s + 1, spec.dimA // spec.s + 1
    return spec.s * len_a * len_b - spec.s


def _one(
    entry_id: str,
    anchor: str,
    s: int,
    dim: int,
    evaluator,
    form: FormSource = None,
    motion: Optional[str] = None,
    lie: Optional[str] = None,
    params: Optional[Mapping[str, float]] = None,
    pair_ok=None,
    point_ok=None,
    box=None,
    variants=(),
) -> CatalogEntry:
    spec = MetricSpec(
        entry_id, Family.ONE_SET, s, dim, evaluator,
        params=dict(params or {}), pair_ok=pair_ok, point_ok_A=point_ok, boxA=box,
    )
    return CatalogEntry(
        entry_id, spec, _rank(spec), f"{anchor}; {FORMULAS[entry_id]}", _form(form), motion, lie,
        variants=tuple(variants),
    )


def _two(
    entry_id: str,
    anchor: str,
    s: int,
    dims: tuple[int, int],
    evaluator,
    form: FormSource = None,
    motion: Optional[str] = None,
    lie: Optional[str] = None,
    params: Optional[Mapping[str, float]] = None,
    pair_ok=None,
    point_ok_A=None,
    point_ok_B=None,
    boxA=None,
    boxB=None,
    variants=(),
    representation: Representation = Representation.CANONICAL,
    no_structure: bool = False,
) -> CatalogEntry:
    spec = MetricSpec(
        entry_id, Family.TWO_SET, s, dims[0], evaluator, dims[1],
        params=dict(params or {}), pair_ok=pair_ok,
        point_ok_A=point_ok_A, point_ok_B=point_ok_B, boxA=boxA, boxB=boxB,
    )
    rank = _rank(spec)
    if no_structure:
        rank += spec.s
    if representation is Representation.QUASIGROUP and form is None:
        form = fx.quasigroup
    return CatalogEntry(
        entry_id, spec, rank, f"{anchor}; {FORMULAS[entry_id]}", _form(form), motion, lie,
        representation, no_structure, tuple(variants),
    )


EPS_SWEEP = ({"eps": -1.0}, {"eps": 0.0}, {"eps": 1.0})


def _disconnected_variants(signs) -> list[dict]:
    eps = [(0.0, 0.0), (-1.0, -1.0), (1.0, -1.0), (0.0, 1.0)]
    return [
        {"eps_pos": ep, "eps_neg": en, "sign": sg, "sign_last": sl}
        for (ep, en), (sg, sl) in product(eps, signs)
    ]


def _disconnected(entry_id, anchor, dim, signs):
    return _one(
        entry_id, anchor, 1, dim, mx.disconnected(dim - 1), fx.gram(dim + 2),
        params={"eps_pos": 0.0, "eps_neg": 0.0, "sign": 1.0, "sign_last": 1.0},
        point_ok=mx.nonzero(dim - 1, margin=0.2),
        variants=_disconnected_variants(signs),
    )


# -- one set, one component ------------------------------------------------------------

def _line():
    return [
        _one("one/1d/line", "the line with the difference metric", 1, 1, mx.line,
             fx.cocycle([0]), "line/translation", "line"),
    ]


def _planes():
    beta, gamma = PARAMS["beta"], PARAMS["gamma"]
    return [
        _one("one/2d/euclid", "Euclidean plane", 1, 2, mx.flat([1, 1]),
             fx.cayley_menger(4), "plane/euclid", "euclid"),
        _one("one/2d/sphere", "unit sphere in angular coordinates", 1, 2, mx.sphere_2d,
             fx.gram(4), "plane/sphere", box=_box(2, angular=[1])),
        _one("one/2d/lobachevsky", "Lobachevsky plane on the upper sheet", 1, 2,
             mx.lobachevsky_2d, fx.gram(4)),
        _one("one/2d/minkowski", "Minkowski plane", 1, 2, mx.flat([1, -1]),
             fx.cayley_menger(4), "plane/minkowski"),
        _one("one/2d/hyperboloid", "one-sheeted hyperboloid", 1, 2, mx.hyperboloid_2d, fx.gram(4)),
        _one("one/2d/symplectic", "symplectic plane", 1, 2, mx.symplectic, fx.pfaffian(4)),
        _one("one/2d/simplicial", "simplicial plane of slopes", 1, 2, mx.simplicial,
             fx.simplicial_plane(), "plane/simplicial", "simplicial",
             pair_ok=mx.bounded_slope(1, 0)),
        _one("one/2d/pseudo-helmholtz", "pseudo-Helmholtz plane", 1, 2, mx.pseudo_helmholtz,
             params={"beta": beta}, pair_ok=mx.off_light_cone),
        _one("one/2d/dual-helmholtz", "dual Helmholtz plane", 1, 2, mx.dual_helmholtz,
             pair_ok=mx.bounded_slope(1, 0, cap=3.0)),
        _one("one/2d/helmholtz", "Helmholtz plane", 1, 2, mx.helmholtz,
             motion="plane/helmholtz", lie="helmholtz",
             params={"gamma": gamma}, pair_ok=mx.apart(0)),
        _disconnected("one/2d/disconnected", "plane of disconnected half-planes", 2,
                      [(1.0, 1.0)]),
    ]


def _spaces():
    beta, gamma = PARAMS["beta"], PARAMS["gamma"]
    return [
        _one("one/3d/euclid", "Euclidean space", 1, 3, mx.flat([1, 1, 1]),
             fx.cayley_menger(5), "space/euclid"),
        _one("one/3d/sphere", "unit three-sphere", 1, 3, mx.sphere_3d, fx.gram(5),
             "space/sphere", box=_box(3, angular=[1, 2])),
        _one("one/3d/lobachevsky", "Lobachevsky space", 1, 3, mx.lobachevsky_3d, fx.gram(5),
             box=_box(3, angular=[1])),
        _one("one/3d/pseudo-euclid", "pseudo-Euclidean space", 1, 3, mx.flat([1, 1, -1]),
             fx.cayley_menger(5)),
        _one("one/3d/hyperboloid-one", "hyperboloid with a spherical section", 1, 3,
             mx.hyperboloid_one_3d, fx.gram(5), box=_box(3, angular=[1])),
        _one("one/3d/hyperboloid-two", "hyperboloid with a hyperbolic section", 1, 3,
             mx.hyperboloid_two_3d, fx.gram(5)),
        _one("one/3d/symplectic", "odd symplectic space", 1, 3, mx.symplectic_odd,
             fx.pfaffian(5, bordered=True)),
        _one("one/3d/simplicial-additive", "simplicial space, additive extension", 1, 3,
             mx.simplicial_additive_3d, pair_ok=mx.bounded_slope(1, 0)),
        _one("one/3d/simplicial-multiplicative", "simplicial space, exponential extension", 1, 3,
             mx.simplicial_multiplicative_3d, pair_ok=mx.bounded_slope(1, 0)),
        _one("one/3d/special-minkowski", "special extension of the Minkowski plane", 1, 3,
             mx.flat_special([1, -1]), fx.gram(5)),
        _one("one/3d/special-euclid", "special extension of the Euclidean plane", 1, 3,
             mx.flat_special([1, 1]), fx.gram(5)),
        _one("one/3d/pseudo-helmholtz", "special extension of the pseudo-Helmholtz plane", 1, 3,
             mx.pseudo_helmholtz_3d, params={"beta": beta}, pair_ok=mx.off_light_cone),
        _one("one/3d/dual-helmholtz", "special extension of the dual Helmholtz plane", 1, 3,
             mx.dual_helmholtz_3d, pair_ok=mx.bounded_slope(1, 0, cap=3.0)),
        _one("one/3d/helmholtz", "special extension of the Helmholtz plane", 1, 3,
             mx.helmholtz_3d, params={"gamma": gamma}, pair_ok=mx.apart(0)),
        _disconnected("one/3d/disconnected", "space of disconnected half-spaces", 3,
                      [(1.0, 1.0), (-1.0, -1.0)]),
    ]


def _four_spaces():
    return [
        _one("one/4d/euclid", "Euclidean four-space", 1, 4, mx.flat([1, 1, 1, 1]),
             fx.cayley_menger(6)),
        _one("one/4d/pseudo-euclid-1", "pseudo-Euclidean four-space of index one", 1, 4,
             mx.flat([1, 1, 1, -1]), fx.cayley_menger(6)),
        _one("one/4d/pseudo-euclid-2", "pseudo-Euclidean four-space of index two", 1, 4,
             mx.flat([1, 1, -1, -1]), fx.cayley_menger(6)),
        _one("one/4d/special-euclid", "special extension of Euclidean space", 1, 4,
             mx.flat_special([1, 1, 1]), fx.gram(6)),
        _one("one/4d/special-pseudo-euclid", "special extension of pseudo-Euclidean space", 1, 4,
             mx.flat_special([1, 1, -1]), fx.gram(6)),
        _one("one/4d/sphere", "unit four-sphere", 1, 4, mx.sphere_4d, fx.gram(6),
             box=_box(4, angular=[1, 2, 3])),
        _one("one/4d/sphere-hyperbolic", "hyperboloid over a two-sphere section", 1, 4,
             mx.sphere_hyperbolic_4d, fx.gram(6), box=_box(4, angular=[1, 2])),
        _one("one/4d/lobachevsky", "Lobachevsky four-space", 1, 4, mx.lobachevsky_4d, fx.gram(6),
             box=_box(4, angular=[1, 2])),
        _one("one/4d/hyperbolic-hyperbolic", "hyperboloid over a hyperbolic section", 1, 4,
             mx.hyperbolic_hyperbolic_4d, fx.gram(6), box=_box(4, angular=[1])),
        _one("one/4d/hyperbolic-lobachevsky", "upper sheet over a hyperbolic section", 1, 4,
             mx.hyperbolic_lobachevsky_4d, fx.gram(6), box=_box(4, angular=[1])),
        _one("one/4d/symplectic", "symplectic four-space", 1, 4, mx.symplectic, fx.pfaffian(6)),
        _disconnected("one/4d/disconnected", "four-space of disconnected half-spaces", 4,
                      [(1.0, 1.0), (1.0, -1.0), (-1.0, -1.0)]),
    ]


# -- one set, several components -------------------------------------------------------

def _dimetric_planes():
    return [
        _one("one/2d/s2-additive", "additive dimetric plane", 2, 2, mx.additive,
             fx.cocycle([0, 1]), "plane/translations", "translations-2"),
        _one("one/2d/s2-thermal", "heat-like dimetric plane", 2, 2, mx.thermal,
             fx.thermal(), "plane/thermal", "thermal", pair_ok=mx.apart(0)),
    ]


def _trimetric_spaces():
    p, gamma = PARAMS["p"], PARAMS["gamma"]
    return [
        _one("one/3d/s3-additive", "additive trimetric space", 3, 3, mx.additive,
             fx.cocycle([0, 1, 2]), "space/translations", "translations-3"),
        _one("one/3d/s3-thermo", "thermodynamic trimetric space", 3, 3, mx.tri_thermo,
             fx.thermodynamic(), "space/thermo", "thermo", pair_ok=mx.apart(1)),
        _one("one/3d/s3-dual-helmholtz", "dual Helmholtz trimetric space", 3, 3,
             mx.tri_dual_helmholtz, pair_ok=mx.bounded_slope(1, 0, cap=3.0)),
        _one("one/3d/s3-simplicial", "simplicial trimetric space", 3, 3, mx.tri_simplicial,
             pair_ok=mx.bounded_slope(1, 0)),
        _one("one/3d/s3-product", "product trimetric space", 3, 3, mx.tri_product,
             pair_ok=mx.apart(0)),
        _one("one/3d/s3-split", "additive coordinate with a heat-like pair", 3, 3, mx.tri_split,
             fx.split_thermal(), pair_ok=mx.apart(0)),
        _one("one/3d/s3-power", "power trimetric space", 3, 3, mx.tri_power,
             params={"p": p}, pair_ok=mx.both(mx.apart(0), mx.apart(1))),
        _one("one/3d/s3-polar", "polar trimetric space", 3, 3, mx.tri_polar, pair_ok=mx.apart(0)),
        _one("one/3d/s3-helmholtz", "Helmholtz trimetric space", 3, 3, mx.tri_helmholtz,
             params={"gamma": gamma}, pair_ok=mx.apart(0)),
        _one("one/3d/s3-sphere", "spherical trimetric space", 3, 3, mx.tri_sphere,
             pair_ok=mx.sphere_pair_safe, box=_box(3, angular=[1])),
        _one("one/3d/s3-cubic", "cubic trimetric space", 3, 3, mx.tri_cubic,
             pair_ok=mx.apart(0), box=_box(3, c1=(0.3, 2.0))),
    ]


def _four_metric_spaces():
    params = {**PARAMS, "eps": 0.5}
    evaluators = [getattr(mx, f"four_metric_{k}") for k in range(1, 13)]
    pair_ok = {
        2: mx.apart(0), 3: mx.apart(0), 4: mx.apart(0), 5: mx.log_sum_apart,
        6: mx.apart(0), 7: mx.apart(0), 10: mx.apart(0), 11: mx.sphere_pair_safe,
        12: mx.apart(0),
    }
    boxes = {11: _box(4, angular=[1]), 12: _box(4, c1=(0.3, 2.0))}
    return [
        _one(f"one/4d/s4-k{k}", f"four-metric space, family {k}", 4, 4, fn,
             params=params, pair_ok=pair_ok.get(k), box=boxes.get(k))
        for k, fn in enumerate(evaluators, start=1)
    ]


# -- two sets, one component ---------------------------------------------------------------

def _two_set_single():
    return [
        _two("two/u/r22", "sum of coordinates", 1, (1, 1), mx.sum_xi,
             fx.grid_additive([0]), "two/translation", "two/translation"),
        _two("two/u/r32", "affine action on the line", 1, (1, 2), mx.affine_xi,
             fx.affine_rows(3), "two/affine-line", "two/affine-line"),
        _two("two/u/r42", "projective action on the line", 1, (1, 3), mx.mobius_xi,
             fx.mobius_rows(), "two/projective-line", pair_ok=mx.sum_apart(0, 2)),
        _two("two/u/r44", "bilinear pairing of three-vectors", 1, (3, 3), mx.bilinear,
             fx.square_rows(4), "two/linear-3"),
        _two("two/u/r44-shift", "bilinear pairing with shifted last coordinates", 1, (3, 3),
             mx.bilinear_shift, fx.bordered_rows(4), "two/shift-tail"),
        _two("two/u/r43", "bilinear pairing with a free last coordinate", 1, (2, 3),
             mx.bilinear_tail, fx.affine_rows(4), "two/affine-tail"),
        _two("two/u/r33", "bilinear pairing of plane vectors", 1, (2, 2), mx.bilinear,
             fx.square_rows(3), "two/linear-2", "two/linear-2"),
        _two("two/u/r33-shift", "bilinear pairing with shifted second coordinates", 1, (2, 2),
             mx.bilinear_shift, fx.bordered_rows(3), "two/shift-bilinear", "two/shift-bilinear"),
    ]


# -- two sets, two components ----------------------------------------------------------------

def _eps_form(build):
    return lambda spec: build(spec.params["eps"])


def _two_set_dimetric():
    c = PARAMS["c"]
    q = Representation.QUASIGROUP
    canonical = [
        _two("two/d/r22-additive", "additive pair", 2, (2, 2), mx.di_additive,
             fx.grid_additive([0, 1]), "two/translation-2", "two/translation-2"),
        _two("two/d/r22-mult", "scaled sum pair", 2, (2, 2), mx.di_multiplicative,
             fx.scaled_product_pair(), "two/scaled-sum", "two/scaled-sum",
             pair_ok=mx.sum_apart(0, 0)),
        _two("two/d/r32-eps", "affine action over complex, dual or double numbers", 2, (2, 4),
             mx.di_eps, _eps_form(fx.eps_pair), params={"eps": -1.0}, variants=EPS_SWEEP),
        _two("two/d/r32-power", "affine pair with a power column", 2, (2, 4), mx.di_power,
             lambda spec: fx.power_pair(spec.params["c"]), params={"c": c},
             boxB=_box(4, c0=(0.3, 2.0))),
        _two("two/d/r32-log", "affine pair with a logarithmic column", 2, (2, 4), mx.di_log,
             fx.log_pair(), boxB=_box(4, c0=(0.2, 2.0))),
        _two("two/d/r32-linear", "linear action of the plane", 2, (2, 4), mx.di_linear,
             fx.linear_pair()),
        _two("two/d/r42-eps", "linear-fractional action over ε-numbers", 2, (2, 6),
             mx.di_eps_mobius, _eps_form(fx.eps_mobius), params={"eps": -1.0},
             pair_ok=mx.eps_denominator, variants=EPS_SWEEP),
        _two("two/d/r42-mobius", "linear-fractional pair with a shared denominator", 2, (2, 6),
             mx.di_mobius, fx.mobius_pair(), pair_ok=mx.sum_apart(0, 4)),
        _two("two/d/r42-affine", "affine action of the plane", 2, (2, 6), mx.di_affine,
             fx.affine_pair()),
        _two("two/d/r52-projective", "projective action of the plane", 2, (2, 8),
             mx.di_projective, fx.projective_pair(), pair_ok=mx.projective_denominator),
    ]
    quasigroup = [
        _two("two/q/r22-additive", "additive pair, quasigroup form", 2, (2, 2), mx.dq_additive,
             representation=q),
        _two("two/q/r22-mult", "scaled sum pair, quasigroup form", 2, (2, 2),
             mx.dq_multiplicative, point_ok_A=mx.nonzero(1), point_ok_B=mx.nonzero(1),
             boxA=_box(2, c1=(0.3, 2.0)), boxB=_box(2, c1=(0.3, 2.0)), representation=q),
        _two("two/q/r32-eps", "ε-number affine pair, quasigroup form", 2, (2, 4), mx.dq_eps,
             params={"eps": -1.0}, pair_ok=mx.eps_gap, variants=EPS_SWEEP, representation=q),
        _two("two/q/r32-power", "power pair, quasigroup form", 2, (2, 4), mx.dq_power,
             params={"c": c}, pair_ok=mx.coords_apart((1, 2)), representation=q),
        _two("two/q/r32-log", "logarithmic pair, quasigroup form", 2, (2, 4), mx.dq_log,
             pair_ok=mx.coords_apart((1, 2)), representation=q),
        _two("two/q/r32-linear", "linear pair, quasigroup form", 2, (2, 4), mx.dq_linear,
             pair_ok=mx.cross_apart, representation=q),
        _two("two/q/r42-eps", "ε-number cross-ratio", 2, (2, 6), mx.dq_eps_cross_ratio,
             params={"eps": -1.0}, pair_ok=mx.eps_cross_ratio_safe, variants=EPS_SWEEP,
             representation=q),
        _two("two/q/r42-mobius", "linear-fractional pair, quasigroup form", 2, (2, 6),
             mx.dq_mobius,
             pair_ok=mx.both(mx.coords_apart((0, 3), (1, 2)), mx.dets_apart((1, 2, 3))),
             representation=q),
        _two("two/q/r42-affine", "barycentric coordinates", 2, (2, 6), mx.dq_affine,
             pair_ok=mx.dets_apart((1, 2, 3)), representation=q),
        _two("two/q/r52-projective", "projective coordinates", 2, (2, 8), mx.dq_projective,
             pair_ok=mx.dets_apart((0, 3, 4), (1, 2, 4), (1, 2, 3)), representation=q),
    ]
    return canonical + quasigroup


# -- two sets, three components ----------------------------------------------------------------

def _two_set_trimetric():
    p, gamma = PARAMS["p"], PARAMS["gamma"]
    q = Representation.QUASIGROUP
    third = _box(3, c2=(0.5, 1.5))
    small = _box(3, c0=(-0.3, 0.3), c1=(-0.3, 0.3), c2=(-0.3, 0.3))
    cubic_box = _box(3, c0=(-0.3, 0.3), c1=(0.7, 1.3), c2=(-0.3, 0.3))
    positive_y = _box(3, c1=(0.3, 2.0))
    sphere_box = _box(3, angular=[1])
    dims = (3, 3)
    canonical = [
        _two("two/t/r22-additive", "additive triple", 3, dims, mx.tri_two_additive,
             fx.grid_additive([0, 1, 2])),
        _two("two/t/r22-heisenberg", "Heisenberg-like triple", 3, dims, mx.tri_two_heisenberg),
        _two("two/t/r22-log", "logarithmic triple", 3, dims, mx.tri_two_log,
             pair_ok=mx.sum_apart(0, 0)),
        _two("two/t/r22-ratio", "ratio triple", 3, dims, mx.tri_two_ratio,
             pair_ok=mx.sum_apart(1, 1)),
        _two("two/t/r22-product", "product triple", 3, dims, mx.tri_two_product),
        _two("two/t/r22-shift", "shift triple", 3, dims, mx.tri_two_shift),
        _two("two/t/r22-power", "power triple", 3, dims, mx.tri_two_power, params={"p": p},
             pair_ok=mx.both(mx.sum_apart(0, 0), mx.sum_apart(1, 1))),
        _two("two/t/r22-polar", "polar triple", 3, dims, mx.tri_two_polar,
             pair_ok=mx.sum_apart(0, 0)),
        _two("two/t/r22-helmholtz", "Helmholtz triple", 3, dims, mx.tri_two_helmholtz,
             params={"gamma": gamma}, pair_ok=mx.sum_apart(0, 0)),
        _two("two/t/r22-sphere", "spherical triple", 3, dims, mx.tri_two_sphere,
             pair_ok=mx.two_sphere_safe, boxA=sphere_box, boxB=sphere_box),
        _two("two/t/r22-cubic", "cubic triple", 3, dims, mx.tri_two_cubic,
             pair_ok=mx.sum_apart(0, 0), boxA=positive_y, boxB=positive_y),
    ]
    quasigroup = [
        _two("two/tq/r22-additive", "additive triple, quasigroup form", 3, dims, mx.tq_additive,
             representation=q),
        _two("two/tq/r22-heisenberg", "Heisenberg-like triple, quasigroup form", 3, dims,
             mx.tq_heisenberg, representation=q),
        _two("two/tq/r22-log", "logarithmic triple, quasigroup form", 3, dims, mx.tq_log,
             pair_ok=mx.third_positive, boxA=third, boxB=third, representation=q),
        _two("two/tq/r22-ratio", "ratio triple, quasigroup form", 3, dims, mx.tq_ratio,
             boxA=third, boxB=third, representation=q),
        _two("two/tq/r22-product", "product triple, quasigroup form", 3, dims, mx.tq_product,
             boxA=third, boxB=third, representation=q),
        _two("two/tq/r22-shift", "shift triple, quasigroup form", 3, dims, mx.tq_shift,
             boxA=third, boxB=third, representation=q),
        _two("two/tq/r22-power", "power triple, quasigroup form", 3, dims, mx.tq_power,
             params={"p": p}, pair_ok=mx.third_positive, boxA=third, boxB=third,
             representation=q),
        _two("two/tq/r22-polar", "polar triple, quasigroup form", 3, dims, mx.tq_polar,
             representation=q),
        _two("two/tq/r22-helmholtz", "Helmholtz triple, quasigroup form", 3, dims,
             mx.tq_helmholtz, representation=q),
        _two("two/tq/r22-sphere", "unit quaternion triple, quasigroup form", 3, dims,
             mx.tq_sphere, pair_ok=mx.inside_unit_ball, boxA=small, boxB=small,
             representation=q),
        _two("two/tq/r22-cubic", "cubic triple, quasigroup form", 3, dims, mx.tq_cubic,
             pair_ok=mx.cubic_quasigroup_safe, boxA=cubic_box, boxB=cubic_box,
             representation=q),
    ]
    return canonical + quasigroup


# -- entries that must not carry a structure ----------------------------------------------------

def _candidate_denominator(a, b, p) -> bool:
    return abs(a[0] * a[1] + b[3]) >= mx.DELTA


def _negative():
    return [
        _two("two/x/cubic", "cubic correction without a rank-(2,2) relation", 1, (1, 1),
             mx.cubic_negative, no_structure=True),
        _two("two/x/r53-candidate", "rank (5,3) candidate with a proposed determinant", 1,
             (2, 4), mx.rank53_candidate,
             fx.with_kind(fx.candidate_rows(), FormKind.CANDIDATE),
             pair_ok=_candidate_denominator,
             representation=Representation.CANDIDATE, no_structure=True),
    ]
