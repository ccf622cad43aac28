"""Physical laws as two-set structures

Each law relates a row object i (a body, a resistor, a ray...) to a column
object α (a force, a source, a medium...) through one measured number. The
module draws hidden parameters, produces the table of measurements, checks
the law's phenomenological relation on the measurements alone, and maps the
hidden parameters onto the catalog structure the law instantiates.
"""

from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Callable, Mapping, Optional

import numpy as np
import pandas as pd
from openpyxl import Workbook
from openpyxl.styles import Font
from openpyxl.utils.dataframe import dataframe_to_rows

from phenostruct.catalog import get_entry
from phenostruct.core import MetricSpec, PhenostructError, ScalingMap, apply_scaling, eval_metric
from phenostruct.numeric import ResidualStats, residual_stats
from phenostruct.utils import CONFIG

RANGES = CONFIG["laws"]
TOL = CONFIG["tolerances"]

Hidden = Mapping[str, np.ndarray]


class ShapeError(PhenostructError):
    """An observation table is smaller than the law's cortege."""


# -- relations on a block of g-values --------------------------------------------------------
# A block has one row per element of M and two columns; each relation is linear in every cell.

def _det2(b: np.ndarray) -> float:
    return b[0, 0] * b[1, 1] - b[0, 1] * b[1, 0]


def _affine3(b: np.ndarray) -> float:
    """det[g(iα), g(iβ), 1] after subtracting the first row."""
    return (b[1, 0] - b[0, 0]) * (b[2, 1] - b[0, 1]) - (b[2, 0] - b[0, 0]) * (b[1, 1] - b[0, 1])


def _mobius4(b: np.ndarray) -> float:
    """det[g(iα), g(iβ), g(iα)g(iβ), 1]."""
    return float(np.linalg.det(np.column_stack([b[:, 0], b[:, 1], b[:, 0] * b[:, 1], np.ones(4)])))


@dataclass(frozen=True)
class LawSpec:
    id: str
    anchor: str
    rows: tuple[str, ...]
    cols: tuple[str, ...]
    units: str
    observe: Callable[[Hidden, Hidden], np.ndarray]
    sample: Callable[[tuple[int, int], np.random.Generator], tuple[dict, dict]]
    catalog_id: str
    coords: Callable[[Hidden, Hidden], tuple[np.ndarray, np.ndarray]]
    transcript: str
    transform: Callable[[np.ndarray], np.ndarray]
    relation: Callable[[np.ndarray], float]
    cortege: tuple[int, int]
    scaling: Optional[ScalingMap] = None


@dataclass
class ObservationTable:
    law: LawSpec
    values: np.ndarray
    hidden: tuple[dict, dict] = field(repr=False)
    seed: Optional[int] = None

    def to_frame(self) -> pd.DataFrame:
        m, n = self.values.shape
        return pd.DataFrame(
            self.values,
            index=pd.Index([f"i{k + 1}" for k in range(m)], name="M"),
            columns=[f"a{k + 1}" for k in range(n)],
        )

    def hidden_frame(self) -> pd.DataFrame:
        """Long table of hidden parameters: set, index, parameter, value."""
        records = []
        for side, params in zip(("M", "N"), self.hidden):
            for name, values in params.items():
                for k, value in enumerate(np.atleast_1d(values)):
                    records.append({"set": side, "index": k + 1, "parameter": name, "value": float(value)})
        return pd.DataFrame(records)


@dataclass(frozen=True)
class Embedding:
    catalog_id: str
    transcript: str
    coords: Callable[[Hidden, Hidden], tuple[np.ndarray, np.ndarray]]
    scaling: Optional[ScalingMap]

    def spec(self) -> MetricSpec:
        spec = get_entry(self.catalog_id).spec
        return apply_scaling(spec, self.scaling) if self.scaling is not None else spec

    def reproduce(self, hidden_M: Hidden, hidden_N: Hidden) -> np.ndarray:
        """Evaluate the catalog metric on the mapped coordinates."""
        spec = self.spec()
        xs, xis = self.coords(hidden_M, hidden_N)
        return np.array([[eval_metric(spec, x, xi)[0] for xi in xis] for x in xs])


# -- the laws ------------------------------------------------------------------------------

def _col(values) -> np.ndarray:
    return np.asarray(values, dtype=float)[:, None]


def _row(values) -> np.ndarray:
    return np.asarray(values, dtype=float)[None, :]


def _uniform(rng: np.random.Generator, key: str, size: int) -> np.ndarray:
    lo, hi = RANGES[key]
    return rng.uniform(lo, hi, size)


def _points(*columns) -> np.ndarray:
    return np.column_stack([np.asarray(c, dtype=float) for c in columns])


def _newton() -> LawSpec:
    return LawSpec(
        id="newton",
        anchor="acceleration of a body under a force, a = F/m",
        rows=("m",),
        cols=("F",),
        units="m/s²",
        observe=lambda M, N: _row(N["F"]) / _col(M["m"]),
        sample=lambda sizes, rng: (
            {"m": _uniform(rng, "mass", sizes[0])},
            {"F": _uniform(rng, "force", sizes[1])},
        ),
        catalog_id="two/u/r22",
        coords=lambda M, N: (_points(-np.log(M["m"])), _points(np.log(N["F"]))),
        transcript="a = exp(x + ξ) with x = −ln m, ξ = ln F; multiplicatively a = x·ξ with x = 1/m, ξ = F",
        transform=lambda a: a,
        relation=_det2,
        cortege=(2, 2),
        scaling=ScalingMap((np.exp,), (np.log,)),
    )


def _ohm() -> LawSpec:
    return LawSpec(
        id="ohm",
        anchor="current in a closed circuit, I = ℰ/(R + r)",
        rows=("R",),
        cols=("emf", "r"),
        units="A",
        observe=lambda M, N: _row(N["emf"]) / (_col(M["R"]) + _row(N["r"])),
        sample=lambda sizes, rng: (
            {"R": _uniform(rng, "resistance", sizes[0])},
            {"emf": _uniform(rng, "emf", sizes[1]), "r": _uniform(rng, "internal", sizes[1])},
        ),
        catalog_id="two/u/r32",
        coords=lambda M, N: (
            _points(M["R"]),
            _points(1.0 / np.asarray(N["emf"]), np.asarray(N["r"]) / np.asarray(N["emf"])),
        ),
        transcript="1/I = x·ξ + η with x = R, ξ = 1/ℰ, η = r/ℰ",
        transform=lambda current: 1.0 / current,
        relation=_affine3,
        cortege=(3, 2),
        scaling=ScalingMap((lambda v: 1.0 / v,), (lambda u: 1.0 / u,)),
    )


def _refraction() -> LawSpec:
    return LawSpec(
        id="refraction",
        anchor="refraction of a ray, sin φ / sin ψ = n",
        rows=("phi",),
        cols=("n",),
        units="rad",
        observe=lambda M, N: np.arcsin(np.sin(_col(M["phi"])) / _row(N["n"])),
        sample=lambda sizes, rng: (
            {"phi": np.radians(_uniform(rng, "incidence_deg", sizes[0]))},
            {"n": _uniform(rng, "index", sizes[1])},
        ),
        catalog_id="two/u/r22",
        coords=lambda M, N: (_points(np.log(np.sin(M["phi"]))), _points(-np.log(N["n"]))),
        transcript="ψ = arcsin(exp(x + ξ)) with x = ln sin φ, ξ = −ln n; multiplicatively sin ψ = x·ξ",
        transform=np.sin,
        relation=_det2,
        cortege=(2, 2),
        scaling=ScalingMap(
            (lambda v: np.arcsin(np.exp(v)),), (lambda u: np.log(np.sin(u)),)
        ),
    )


def _thermal() -> LawSpec:
    return LawSpec(
        id="thermal",
        anchor="thermal expansion of a rod, L = L₀(1 + E t)",
        rows=("t",),
        cols=("L0", "E"),
        units="m",
        observe=lambda M, N: _row(N["L0"]) * (1.0 + _row(N["E"]) * _col(M["t"])),
        sample=lambda sizes, rng: (
            {"t": _uniform(rng, "temperature", sizes[0])},
            {"L0": _uniform(rng, "length", sizes[1]), "E": _uniform(rng, "expansion", sizes[1])},
        ),
        catalog_id="two/u/r32",
        coords=lambda M, N: (
            _points(M["t"]),
            _points(np.asarray(N["L0"]) * np.asarray(N["E"]), N["L0"]),
        ),
        transcript="L = x·ξ + η with x = t, ξ = L₀E, η = L₀",
        transform=lambda length: length,
        relation=_affine3,
        cortege=(3, 2),
    )


def _thick_lens(M: Hidden, N: Hidden) -> np.ndarray:
    x = _col(M["x"])
    F, lam, sigma = _row(N["F"]), _row(N["lam"]), _row(N["sigma"])
    return (x * (F - sigma) + (lam + sigma) * F - lam * sigma) / (x + lam - F)


def _sample_lenses(sizes, rng):
    lenses = {
        "F": _uniform(rng, "focus", sizes[1]),
        "lam": _uniform(rng, "lens_offset", sizes[1]),
        "sigma": _uniform(rng, "lens_offset", sizes[1]),
    }
    near = lenses["F"].max() + RANGES["object_gap"]
    objects = {"x": rng.uniform(near, RANGES["object_far"], sizes[0])}
    return objects, lenses


def _thicklens() -> LawSpec:
    return LawSpec(
        id="thicklens",
        anchor="image distance of a thick lens",
        rows=("x",),
        cols=("F", "lam", "sigma"),
        units="m",
        observe=_thick_lens,
        sample=_sample_lenses,
        catalog_id="two/u/r42",
        coords=lambda M, N: (
            _points(M["x"]),
            _points(
                np.asarray(N["F"]) - np.asarray(N["sigma"]),
                (np.asarray(N["lam"]) + np.asarray(N["sigma"])) * np.asarray(N["F"])
                - np.asarray(N["lam"]) * np.asarray(N["sigma"]),
                np.asarray(N["lam"]) - np.asarray(N["F"]),
            ),
        ),
        transcript="u = (x·ξ + η)/(x + ϑ) with ξ = F − σ, η = (λ + σ)F − λσ, ϑ = λ − F",
        transform=lambda u: u,
        relation=_mobius4,
        cortege=(4, 2),
    )


def _intersection(M: Hidden, N: Hidden) -> np.ndarray:
    t = np.tan(_col(M["phi"]))
    a, b, theta = _row(N["a"]), _row(N["b"]), _row(N["theta"])
    return (-a * t / np.cos(theta) + b / np.cos(theta)) / (t - np.tan(theta))


def _sample_lines(sizes, rng):
    """Rays through the origin kept at a slope gap of at least 0.1 from every pencil line."""
    lo, hi = np.radians(RANGES["line_angle_deg"])
    pencils = {
        "a": _uniform(rng, "line_offset", sizes[1]),
        "b": _uniform(rng, "line_offset", sizes[1]),
        "theta": rng.uniform(lo, hi, sizes[1]),
    }
    slopes = np.tan(pencils["theta"])
    phis = []
    while len(phis) < sizes[0]:
        phi = rng.uniform(lo, hi)
        if np.all(np.abs(np.tan(phi) - slopes) >= 0.1):
            phis.append(phi)
    return {"phi": np.array(phis)}, pencils


def _lines() -> LawSpec:
    return LawSpec(
        id="lines",
        anchor="signed distance from a point to the crossing of two lines",
        rows=("phi",),
        cols=("a", "b", "theta"),
        units="length",
        observe=_intersection,
        sample=_sample_lines,
        catalog_id="two/u/r42",
        coords=lambda M, N: (
            _points(np.tan(M["phi"])),
            _points(
                -np.asarray(N["a"]) / np.cos(N["theta"]),
                np.asarray(N["b"]) / np.cos(N["theta"]),
                -np.tan(N["theta"]),
            ),
        ),
        transcript="f = (x·ξ + η)/(x + ϑ) with x = tan φ, ξ = −a/cos θ, η = b/cos θ, ϑ = −tan θ",
        transform=lambda f: f,
        relation=_mobius4,
        cortege=(4, 2),
    )


LAWS: dict[str, LawSpec] = {
    law.id: law for law in (_newton(), _ohm(), _refraction(), _thermal(), _thicklens(), _lines())
}


def get_law(law_id: str) -> LawSpec:
    try:
        return LAWS[law_id]
    except KeyError:
        raise ValueError(f"unknown law {law_id!r}; choose from {sorted(LAWS)}") from None


# -- operations ------------------------------------------------------------------------------

def observe(law: LawSpec, hidden_M: Hidden, hidden_N: Hidden) -> np.ndarray:
    """Measurements of every (row, column) pair."""
    return np.asarray(law.observe(hidden_M, hidden_N), dtype=float)


def generate_observations(
    law: LawSpec,
    sizes: tuple[int, int],
    rng: np.random.Generator,
    seed: Optional[int] = None,
) -> ObservationTable:
    if sizes[0] < law.cortege[0] or sizes[1] < law.cortege[1]:
        raise ShapeError(f"{law.id}: table {sizes} smaller than the cortege {law.cortege}")
    hidden_M, hidden_N = law.sample(tuple(sizes), rng)
    values = observe(law, hidden_M, hidden_N)
    return ObservationTable(law, values, (hidden_M, hidden_N), seed)


def _predict(relation: Callable[[np.ndarray], float], block: np.ndarray, cell: tuple[int, int]) -> float:
    """Value of ``cell`` that makes the relation vanish, given the rest of the block."""
    trial = block.copy()
    trial[cell] = 0.0
    constant = relation(trial)
    trial[cell] = 1.0
    slope = relation(trial) - constant
    return -constant / slope


def check_law_relation(law: LawSpec, table) -> ResidualStats:
    """Relative misprediction of every cell of every sub-cortege from the others."""
    values = table.values if isinstance(table, ObservationTable) else np.asarray(table, dtype=float)
    rows, cols = law.cortege
    if values.shape[0] < rows or values.shape[1] < cols:
        raise ShapeError(f"{law.id}: table {values.shape} smaller than the cortege {law.cortege}")
    g = law.transform(values)
    errors = []
    for r in combinations(range(g.shape[0]), rows):
        for c in combinations(range(g.shape[1]), cols):
            block = g[np.ix_(r, c)]
            for cell in np.ndindex(block.shape):
                pred = _predict(law.relation, block, cell)
                errors.append(abs(block[cell] - pred) / abs(block[cell]))
    return residual_stats(errors, "relative")


def canonical_embedding(law: LawSpec) -> Embedding:
    return Embedding(law.catalog_id, law.transcript, law.coords, law.scaling)


def embedding_error(law: LawSpec, table: ObservationTable) -> float:
    """Largest relative gap between the catalog metric on mapped coordinates and the table."""
    reproduced = canonical_embedding(law).reproduce(*table.hidden)
    return float(np.max(np.abs(reproduced - table.values) / np.abs(table.values)))


# -- export ----------------------------------------------------------------------------------

def save_observations_csv(table: ObservationTable, output: str) -> None:
    """CSV with a commented header line naming the law and the seed."""
    Path(output).parent.mkdir(parents=True, exist_ok=True)
    with open(output, "w", newline="", encoding="utf-8") as handle:
        handle.write(f"# law={table.law.id} seed={table.seed} units={table.law.units}\n")
        table.to_frame().to_csv(handle)


def save_observations_xlsx(table: ObservationTable, output: str) -> None:
    """Workbook with the measurements and a hidden, protected sheet of hidden parameters."""
    Path(output).parent.mkdir(parents=True, exist_ok=True)
    wb = Workbook()
    ws = wb.active
    ws.title = "observations"
    for r in dataframe_to_rows(table.to_frame().reset_index(), index=False, header=True):
        ws.append(r)
    ws2 = wb.create_sheet("hidden")
    for row in dataframe_to_rows(table.hidden_frame(), index=False, header=True):
        ws2.append(row)

    # Style the worksheets.
    ft = Font(bold=True)
    for cell in ws[1]:
        cell.font = ft
    for cell in ws2[1]:
        cell.font = ft
    ws2.column_dimensions["C"].width = 14
    ws2.column_dimensions["D"].width = 24
    ws2.sheet_state = "hidden"
    ws2.protection.sheet = True
    wb.properties.title = f"{table.law.id} (seed {table.seed})"
    wb.save(output)
