"""Verification runner

Runs the checks of the catalog and of the stand-alone modules, prints the
failures and writes a report. Subcommands:

    verify   run a suite and write the report (json, text, xlsx or csv)
    list     dump the catalog as a table
    tables   print the classification tables of the counting module
    laws     export a synthetic table of measurements of one physical law
"""

import json
import os
import sys
import time
from dataclasses import dataclass, field
from functools import partial
from multiprocessing import Pool, cpu_count
from pathlib import Path
from typing import Callable, Optional

import numpy as np
import pandas as pd
from openpyxl import Workbook
from openpyxl.styles import Font
from openpyxl.utils.dataframe import dataframe_to_rows

from phenostruct import counting, heap, laws
from phenostruct.catalog import UnknownId, all_entries, catalog_frame, get_entry
from phenostruct.core import Family, PhenostructError, ScalingMap
from phenostruct.lie import ALGEBRAS, check_lie_algebra
from phenostruct.motions import (
    MOTIONS,
    check_group_laws,
    check_infinitesimal_invariance,
    check_invariance,
    check_lie_consistency,
)
from phenostruct.utils import CONFIG, get_args, preview, rng_for, save_table
from phenostruct.verify import (
    CURVES,
    Symmetry,
    check_area_ternary,
    check_cycle,
    check_identity,
    check_no_relation,
    check_rank_predicate,
    check_scaling_rank,
    check_sensitivity,
    check_translation_form,
    classify_distance_symmetry,
    rank_passes,
)

TOL = CONFIG["tolerances"]
MODULE_SUITES = ("verify", "motions", "counting", "heap", "laws")
SCALING_ENTRIES = ("one/2d/euclid", "one/3d/euclid", "two/u/r22", "two/d/r22-additive")
SYMMETRY_CASES = {
    "one/2d/euclid": Symmetry.SYMMETRIC,
    "one/2d/symplectic": Symmetry.ANTISYMMETRIC,
    "one/2d/simplicial": Symmetry.SYMMETRIC,
}
CYCLE_CASES = {"circle": True, "line": True, "parabola": False}
TRANSLATION_CASES = {
    "identity": (ScalingMap((lambda t: t,), (lambda u: u,)), (-1.0, 1.0)),
    "exp": (ScalingMap((np.exp,), (np.log,)), (-1.0, 1.0)),
    "tanh": (ScalingMap((np.tanh,)), (-0.5, 0.5)),
}
HEAP_GROUPS = (
    "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "S3", "D4", "Z2×Z2", "Z2×Z4", "Z5*", "Z7*",
)


class ConfigError(PhenostructError):
    """Invalid command-line settings."""


@dataclass(frozen=True)
class RunConfig:
    command: str = "verify"
    suite: tuple[str, ...] = ("all",)
    samples: int = CONFIG["run"]["samples"]
    tol_identity: float = CONFIG["tolerances"]["identity"]
    tol_rank: float = CONFIG["numeric"]["tol_rank"]
    seed: int = CONFIG["run"]["seed"]
    out: Optional[str] = None
    format: str = CONFIG["run"]["format"]
    law: str = "newton"
    sizes: tuple[int, int] = (6, 4)
    jobs: int = 0
    dryrun: bool = False
    verbose: bool = False
    noprint: bool = False

    def __post_init__(self):
        if self.samples < 1:
            raise ConfigError(f"--samples must be at least 1, got {self.samples}")
        if self.tol_identity <= 0 or self.tol_rank <= 0:
            raise ConfigError("tolerances must be positive")
        if self.jobs < 0:
            raise ConfigError("--jobs must be non-negative")
        if self.format not in ("json", "text", "xlsx", "csv"):
            raise ConfigError(f"unknown format {self.format!r}")
        if self.law not in laws.LAWS:
            raise ConfigError(f"unknown law {self.law!r}; choose from {sorted(laws.LAWS)}")
        for name in self.suite:
            if name == "all" or name in MODULE_SUITES:
                continue
            try:
                get_entry(name)
            except UnknownId as err:
                raise ConfigError(str(err)) from None
        if self.out:
            parent = Path(self.out).resolve().parent
            while not parent.exists():
                parent = parent.parent
            if not os.access(parent, os.W_OK):
                raise ConfigError(f"cannot write to {self.out}")

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        return cls(
            command=args.command,
            suite=tuple(s.strip() for s in args.suite.split(",") if s.strip()) or ("all",),
            samples=args.samples,
            tol_identity=args.tol_identity,
            tol_rank=args.tol_rank,
            seed=args.seed,
            out=args.out,
            format=args.format,
            law=args.law,
            sizes=tuple(args.sizes),
            jobs=args.jobs,
            dryrun=args.dryrun,
            verbose=args.verbose,
            noprint=args.noprint,
        )

    def as_dict(self) -> dict:
        """Settings that decide the outcome of the checks."""
        return {
            "suite": list(self.suite),
            "samples": self.samples,
            "tol_identity": self.tol_identity,
            "tol_rank": self.tol_rank,
            "seed": self.seed,
        }


@dataclass
class VerificationReport:
    seed: int
    config: dict
    checks: list[dict] = field(default_factory=list)

    @property
    def summary(self) -> dict:
        passed = sum(1 for r in self.checks if r["passed"])
        return {"pass": passed, "fail": len(self.checks) - passed}

    @property
    def ok(self) -> bool:
        return self.summary["fail"] == 0

    def to_dict(self) -> dict:
        return {
            "version": CONFIG["report"]["version"],
            "seed": self.seed,
            "config": self.config,
            "checks": self.checks,
            "summary": self.summary,
        }

    def to_frame(self) -> pd.DataFrame:
        columns = ["check", "entry", "anchor", "passed", "residual", "rank", "samples", "seed", "wall_time", "detail"]
        return pd.DataFrame(self.checks, columns=columns)


# -- checks ----------------------------------------------------------------------------------
# A task is (check name, target). Every task owns an rng stream derived from its name, so the
# outcome does not depend on how tasks are spread over processes.

Task = tuple[str, str]


def _record(check, entry, anchor, passed, residual=None, rank=None, samples=0, detail=""):
    return {
        "check": check,
        "entry": entry,
        "anchor": anchor,
        "passed": bool(passed),
        "residual": None if residual is None else float(residual),
        "rank": rank,
        "samples": int(samples),
        "detail": detail,
    }


def _rank_pair(report) -> str:
    return f"{report.observed_rank}/{report.predicted_rank}"


def _entry_identity(cfg: RunConfig, entry_id: str, rng) -> dict:
    entry = get_entry(entry_id)
    stats = check_identity(entry, cfg.samples, rng)
    sens = check_sensitivity(entry, min(cfg.samples, CONFIG["run"]["sensitivity_samples"]), rng)
    passed = stats.passes(cfg.tol_identity) and sens.passes()
    detail = f"max residual {stats.max_abs:.2e}; weakest response {sens.min_response:.2e} at {sens.weakest_position}"
    return _record("identity", entry_id, entry.anchor, passed, stats.max_abs, None, stats.n_samples, detail)


def _entry_rank(cfg: RunConfig, entry_id: str, rng) -> dict:
    entry = get_entry(entry_id)
    report = check_rank_predicate(entry, cfg.samples, rng, cfg.tol_rank)
    passed = rank_passes(report)
    detail = f"agreement {report.agreement:.3f}"
    return _record("rank", entry_id, entry.anchor, passed, None, _rank_pair(report), report.n_corteges, detail)


def _entry_no_relation(cfg: RunConfig, entry_id: str, rng) -> dict:
    entry = get_entry(entry_id)
    report = check_no_relation(entry, rng, n_corteges=min(cfg.samples, 20), n_candidate=min(cfg.samples, 100))
    detail = "" if report.candidate_residual is None else f"candidate residual {report.candidate_residual:.2e}"
    return _record(
        "no_relation", entry_id, entry.anchor, report.passes, report.candidate_residual,
        _rank_pair(report.rank), report.rank.n_corteges, detail,
    )


def _entry_invariance(cfg: RunConfig, entry_id: str, rng) -> dict:
    entry = get_entry(entry_id)
    stats = check_invariance(entry, cfg.samples, rng)
    passed = stats.passes(TOL["invariance"])
    return _record("invariance", entry_id, entry.motions.anchor, passed, stats.max_abs, None, stats.n_samples,
                   f"max residual {stats.max_abs:.2e}")


def _lie_consistency(cfg: RunConfig, entry_id: str, rng) -> dict:
    entry = get_entry(entry_id)
    residual = check_lie_consistency(entry, rng)
    return _record("lie_consistency", entry_id, entry.motions.anchor, residual < TOL["infinitesimal"], residual)


def _infinitesimal(cfg: RunConfig, entry_id: str, rng) -> dict:
    entry = get_entry(entry_id)
    stats = check_infinitesimal_invariance(entry, min(cfg.samples, 100), rng)
    return _record("infinitesimal", entry_id, entry.motions.anchor, stats.passes(TOL["infinitesimal"]),
                   stats.max_abs, None, stats.n_samples)


def _group_laws(cfg: RunConfig, name: str, rng) -> dict:
    ms = MOTIONS[name]
    report = check_group_laws(ms, min(cfg.samples, 100), rng)
    detail = f"identity {report.identity:.1e}, closure {report.closure:.1e}, inverse {report.inverse:.1e}"
    worst = max(report.identity, report.closure, report.inverse)
    return _record("group_laws", name, ms.anchor, report.passes, worst, None, min(cfg.samples, 100), detail)


def _lie_algebra(cfg: RunConfig, algebra_id: str, rng) -> dict:
    report = check_lie_algebra(algebra_id, rng)
    detail = f"orbit rank {report.orbit_rank}, transitive {report.transitive}"
    return _record("lie_algebra", algebra_id, ALGEBRAS[algebra_id].anchor, report.passes,
                   report.closure_residual, None, 0, detail)


def _area(cfg: RunConfig, target: str, rng) -> dict:
    report = check_area_ternary(rng, min(cfg.samples, 100))
    return _record("area", target, "oriented area of a triangle", report.passes, report.relation.max_abs,
                   _rank_pair(report.rank), report.relation.n_samples,
                   f"invariance {report.invariance.max_abs:.1e}; "
                   f"{len(report.figure_ranks)} figures, agreement {report.rank.agreement:.2f}")


def _cycle(cfg: RunConfig, curve: str, rng) -> dict:
    spec = get_entry("one/2d/euclid").spec
    stats = check_cycle(CURVES[curve], spec, rng, min(cfg.samples, 100))
    is_cycle = stats.passes(TOL["cycle"])
    expected = CYCLE_CASES[curve]
    detail = f"{'cycle' if is_cycle else 'not a cycle'} (expected {'cycle' if expected else 'not a cycle'})"
    return _record("cycle", curve, "shift invariance along a curve", is_cycle == expected, stats.max_abs,
                   None, stats.n_samples, detail)


def _symmetry(cfg: RunConfig, entry_id: str, rng) -> dict:
    entry = get_entry(entry_id)
    found = classify_distance_symmetry(entry.spec, rng)
    expected = SYMMETRY_CASES[entry_id]
    return _record("symmetry", entry_id, entry.anchor, found is expected, None, None, 50,
                   f"{found.value} (expected {expected.value})")


def _translation(cfg: RunConfig, name: str, rng) -> dict:
    psi, box = TRANSLATION_CASES[name]
    stats = check_translation_form(psi, rng, min(cfg.samples, 100), t_box=box)
    return _record("translation_form", name, "φ(u, v) = ψ(ψ⁻¹(u) − ψ⁻¹(v))", stats.passes(TOL["translation"]),
                   stats.max_abs, None, stats.n_samples)


def _scaling(cfg: RunConfig, entry_id: str, rng) -> dict:
    entry = get_entry(entry_id)
    report = check_scaling_rank(entry, min(cfg.samples, 100), rng)
    return _record("scaling_rank", entry_id, entry.anchor, rank_passes(report), None, _rank_pair(report),
                   report.n_corteges)


def _degree_cross(cfg: RunConfig, target: str, rng) -> dict:
    """Closed-form degrees against the scan for s ≤ 3 and ranks up to 8."""
    misses = []
    for s in range(1, 4):
        for M in range(3, 9):
            m = s * (M - 2)
            scan = counting.polyary_group_symmetry(counting.one_set_shape(s, M, m), search_bound=M + 6)
            if scan != counting.one_set_degree(s, M, m):
                misses.append(f"one-set s={s} M={M}")
        for M in range(2, 9):
            for N in range(2, 9):
                m, n = s * (N - 1), s * (M - 1)
                shape = counting.two_set_shape(s, M, N, m, n)
                scan = counting.polyary_group_symmetry(shape, search_bound=max(M, N) + 4)
                if scan != counting.two_set_degree(s, M, N, m, n):
                    misses.append(f"two-set s={s} M={M} N={N}")
    return _record("degree_formulas", target, "degree of group symmetry", not misses, None, None, 0,
                   "; ".join(misses[:5]))


def _dependent_oracle(cfg: RunConfig, target: str, rng) -> dict:
    cases = [(2, M, P) for M in range(3, 7) for P in range(M, 11)]
    cases += [
        ((1, 1), ranks, (P, Q))
        for ranks in ((2, 2), (3, 2), (3, 3))
        for P in range(ranks[0], 6)
        for Q in range(ranks[1], 6)
    ]
    misses = [
        (M, P)
        for q, M, P in cases
        if counting.dependent_count(q, M, P) != counting.superposition_count(q, M, P, rng=rng)
    ]
    return _record("dependent_count", target, "count of dependent functions", not misses, None, None, 0,
                   f"mismatches {misses[:5]}" if misses else "")


def _saturation(cfg: RunConfig, target: str, rng) -> dict:
    shapes = {
        "ternary one set": counting.StructureShape(1, (counting.SetShape(2, 3, 4),)),
        "ternary two sets": counting.StructureShape(1, (counting.SetShape(1, 2, 3), counting.SetShape(1, 1, 2))),
        "ternary three sets": counting.StructureShape(
            1, tuple(counting.SetShape(1, 1, 2) for _ in range(3))
        ),
        "quaternary one set": counting.StructureShape(1, (counting.SetShape(3, 4, 5),)),
        "quaternary two sets": counting.StructureShape(1, (counting.SetShape(2, 2, 3), counting.SetShape(2, 2, 3))),
    }
    misses = [
        name for name, shape in shapes.items()
        if not isinstance(counting.polyary_group_symmetry(shape, search_bound=20), counting.Saturated)
    ]
    return _record("saturation", target, "polyary structures have no group symmetry", not misses, None, None,
                   len(shapes), ", ".join(misses))


def _motion_degree(cfg: RunConfig, entry_id: str, rng) -> dict:
    entry = get_entry(entry_id)
    lenA, lenB = entry.lengths
    if entry.family is Family.ONE_SET:
        verdict = counting.one_set_degree(entry.s, lenA, entry.spec.dimA)
    else:
        verdict = counting.two_set_degree(entry.s, lenA, lenB, entry.spec.dimA, entry.spec.dimB)
    count = entry.motions.param_count
    degree = getattr(verdict, "r", None)
    return _record("motion_degree", entry_id, entry.motions.anchor, degree == count, None, None, 0,
                   f"degree {degree}, motion parameters {count}")


def _heap_group(cfg: RunConfig, name: str, rng) -> dict:
    grp = _groups()[name]
    op = heap.heap_from_group(grp)
    found = {d.value: heap.check_heap_identities(op, d) for d in heap.Definition}
    bad = {k: v[0] for k, v in found.items() if v}
    return _record("heap_from_group", name, "x·y⁻¹·z is a heap", not bad, None, None, grp.order**5,
                   "; ".join(f"{k}: {v.identity} at {v.args}" for k, v in bad.items()))


def _heap_equivalence(cfg: RunConfig, target: str, rng) -> dict:
    h = CONFIG["heap"]
    g = h["random_carrier"]
    stacks = [
        heap.random_tables(g, h["random_tables"], rng),
        heap.permutation_sum(g, 1000, rng),
        heap.relabelled_heap(heap.cyclic(g), 1000, rng),
    ]
    tables = np.concatenate(stacks)
    verdicts = heap.definitions_agree(tables)
    disagree = verdicts["disagree"]
    heaps = int(verdicts[heap.Definition.D2.value].sum())
    return _record("heap_equivalence", target, "the definitions of a heap are equivalent", disagree.size == 0,
                   None, None, len(tables), f"{heaps} heaps, {disagree.size} disagreements")


def _heap_structure(cfg: RunConfig, target: str, rng) -> dict:
    cases = {
        "Z5 additive": (heap.cyclic(5), range(5), range(5)),
        "Z5 multiplicative": (heap.units_mod(5), range(4), range(4)),
    }
    misses = []
    for name, (grp, xs, xis) in cases.items():
        f = heap.f_table_from_group(grp, list(xs), list(xis))
        op = heap.heap_from_group(grp)
        if heap.check_structure_relation(f, op) or heap.structure_defines_heap(f, op) != []:
            misses.append(name)
    return _record("heap_structure", target, "a rank (2,2) structure defines a heap", not misses, None, None,
                   len(cases), ", ".join(misses))


def _law_relation(cfg: RunConfig, law_id: str, rng) -> dict:
    law = laws.get_law(law_id)
    sizes = (law.cortege[0] + 1, 3)
    n = min(cfg.samples, 1000)
    worst = max(
        laws.check_law_relation(law, laws.generate_observations(law, sizes, rng)).max_abs for _ in range(n)
    )
    return _record("law_relation", law_id, law.anchor, worst < TOL["law"], worst, None, n)


def _law_perturbation(cfg: RunConfig, law_id: str, rng) -> dict:
    law = laws.get_law(law_id)
    sizes = (law.cortege[0] + 1, 3)
    n = min(cfg.samples, 100)
    weakest = np.inf
    for _ in range(n):
        table = laws.generate_observations(law, sizes, rng)
        i, a = rng.integers(sizes[0]), rng.integers(sizes[1])
        table.values[i, a] *= 1.01
        weakest = min(weakest, laws.check_law_relation(law, table).max_abs)
    return _record("law_perturbation", law_id, law.anchor, weakest > TOL["sensitivity"], weakest, None, n,
                   f"smallest residual after a 1% change {weakest:.2e}")


def _law_embedding(cfg: RunConfig, law_id: str, rng) -> dict:
    law = laws.get_law(law_id)
    n = min(cfg.samples, 100)
    worst = max(laws.embedding_error(law, laws.generate_observations(law, (5, 4), rng)) for _ in range(n))
    return _record("law_embedding", law_id, law.transcript, worst < TOL["embedding"], worst, None, n,
                   law.catalog_id)


CHECKS: dict[str, Callable[[RunConfig, str, np.random.Generator], dict]] = {
    "identity": _entry_identity,
    "rank": _entry_rank,
    "no_relation": _entry_no_relation,
    "invariance": _entry_invariance,
    "lie_consistency": _lie_consistency,
    "infinitesimal": _infinitesimal,
    "group_laws": _group_laws,
    "lie_algebra": _lie_algebra,
    "area": _area,
    "cycle": _cycle,
    "symmetry": _symmetry,
    "translation_form": _translation,
    "scaling_rank": _scaling,
    "degree_formulas": _degree_cross,
    "dependent_count": _dependent_oracle,
    "saturation": _saturation,
    "motion_degree": _motion_degree,
    "heap_from_group": _heap_group,
    "heap_equivalence": _heap_equivalence,
    "heap_structure": _heap_structure,
    "law_relation": _law_relation,
    "law_perturbation": _law_perturbation,
    "law_embedding": _law_embedding,
}


def _groups() -> dict[str, heap.FiniteGroup]:
    groups = [heap.cyclic(n) for n in range(2, 9)]
    groups += [heap.symmetric(3), heap.dihedral(4), heap.units_mod(5), heap.units_mod(7)]
    groups += [heap.product(heap.cyclic(2), heap.cyclic(2)), heap.product(heap.cyclic(2), heap.cyclic(4))]
    return {g.name: g for g in groups}


def entry_tasks(entry_id: str) -> list[Task]:
    entry = get_entry(entry_id)
    tasks = []
    if entry.identity is not None:
        tasks.append(("identity", entry_id))
    tasks.append(("no_relation" if entry.expect_no_structure else "rank", entry_id))
    if entry.motion is not None:
        tasks.append(("invariance", entry_id))
    return tasks


def module_tasks(module: str) -> list[Task]:
    entries = all_entries()
    if module == "motions":
        tasks = [("group_laws", name) for name in MOTIONS]
        tasks += [("lie_algebra", algebra_id) for algebra_id in ALGEBRAS]
        for entry in entries:
            if entry.lie is not None:
                tasks += [("lie_consistency", entry.id), ("infinitesimal", entry.id)]
        return tasks
    if module == "verify":
        tasks = [("area", "ternary")]
        tasks += [("cycle", name) for name in CYCLE_CASES]
        tasks += [("symmetry", entry_id) for entry_id in SYMMETRY_CASES]
        tasks += [("translation_form", name) for name in TRANSLATION_CASES]
        tasks += [("scaling_rank", entry_id) for entry_id in SCALING_ENTRIES]
        return tasks
    if module == "counting":
        tasks = [("degree_formulas", "closed forms"), ("dependent_count", "binary"), ("saturation", "polyary")]
        tasks += [("motion_degree", e.id) for e in entries if e.motion is not None]
        return tasks
    if module == "heap":
        tasks = [("heap_from_group", name) for name in HEAP_GROUPS]
        return tasks + [("heap_equivalence", "random tables"), ("heap_structure", "Z5")]
    if module == "laws":
        return [(check, law_id) for law_id in laws.LAWS for check in ("law_relation", "law_perturbation", "law_embedding")]
    raise ConfigError(f"unknown module suite {module!r}")


def plan(cfg: RunConfig) -> list[Task]:
    """Tasks of the selected suites, without duplicates, in a stable order."""
    tasks: list[Task] = []
    for name in cfg.suite:
        if name == "all":
            for entry in all_entries():
                tasks += entry_tasks(entry.id)
            for module in MODULE_SUITES:
                tasks += module_tasks(module)
        elif name in MODULE_SUITES:
            tasks += module_tasks(name)
        else:
            tasks += entry_tasks(name)
    return list(dict.fromkeys(tasks))


def run_check(task: Task, cfg: RunConfig) -> dict:
    """Run one task; a raised PhenostructError becomes a failed record."""
    check, target = task
    rng = rng_for(cfg.seed, f"{check}:{target}")
    start = time.perf_counter()
    try:
        record = CHECKS[check](cfg, target, rng)
    except PhenostructError as err:
        record = _record(check, target, "", False, detail=f"{type(err).__name__}: {err}")
    record["seed"] = cfg.seed
    record["wall_time"] = round(time.perf_counter() - start, 4)
    return record


def run_suite(cfg: RunConfig) -> VerificationReport:
    tasks = plan(cfg)
    if cfg.jobs == 1 or len(tasks) < 2:
        records = [run_check(task, cfg) for task in tasks]
    else:
        processes = cfg.jobs or cpu_count()
        with Pool(processes=processes) as pool:
            records = pool.map(partial(run_check, cfg=cfg), tasks)
    return VerificationReport(cfg.seed, cfg.as_dict(), records)


def emit_report(report: VerificationReport, fmt: str, path: Optional[str]) -> None:
    """Write the report; the text format goes to stdout when no path is given."""
    if fmt == "text":
        text = report.to_frame().to_string(index=False) + f"\n\nsummary: {report.summary}\n"
        if path is None:
            print(text)
            return
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(text, encoding="utf-8")
        return
    if path is None:
        raise ConfigError(f"format {fmt} needs --out")
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    if fmt == "json":
        Path(path).write_text(json.dumps(report.to_dict(), indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    elif fmt == "csv":
        report.to_frame().to_csv(path, index=False)
    elif fmt == "xlsx":
        _report_workbook(report, path)
    else:
        raise ConfigError(f"unknown format {fmt!r}")


def _report_workbook(report: VerificationReport, output: str) -> None:
    """Helper function: workbook with a checks sheet and a summary sheet."""
    wb = Workbook()
    ws = wb.active
    ws.title = "checks"
    for r in dataframe_to_rows(report.to_frame(), index=False, header=True):
        ws.append(r)
    ws2 = wb.create_sheet("summary")
    summary = pd.DataFrame(
        [{"key": "version", "value": CONFIG["report"]["version"]}, {"key": "seed", "value": report.seed}]
        + [{"key": k, "value": v} for k, v in report.summary.items()]
    )
    for row in dataframe_to_rows(summary, index=False, header=True):
        ws2.append(row)

    # Style the worksheets.
    ft = Font(bold=True)
    for cell in ws[1]:
        cell.font = ft
    for cell in ws2[1]:
        cell.font = ft
    ws.column_dimensions["A"].width = 18
    ws.column_dimensions["B"].width = 28
    ws.column_dimensions["C"].width = 48
    ws.column_dimensions["J"].width = 60
    wb.save(output)


# -- subcommands -------------------------------------------------------------------------------

def _verify(cfg: RunConfig) -> int:
    print(f"Running suite {', '.join(cfg.suite)} with seed {cfg.seed}...")
    report = run_suite(cfg)
    for record in report.checks:
        if not record["passed"]:
            print(f"❌ {record['check']} {record['entry']}: {record['detail']}")
        elif cfg.verbose:
            print(f"✅ {record['check']} {record['entry']}")
    if cfg.verbose:
        preview(report.to_frame(), "check records")
    print(f"\n{report.summary['pass']} passed, {report.summary['fail']} failed")
    if not (cfg.dryrun or cfg.noprint):
        if cfg.out:
            print(f"📄 Saving copy of report to: {cfg.out}...")
        emit_report(report, cfg.format, cfg.out)
    return 0 if report.ok else 1


def _list(cfg: RunConfig) -> int:
    df = catalog_frame(all_entries())
    if cfg.verbose or not cfg.out:
        preview(df, "catalog")
    if cfg.out and not (cfg.dryrun or cfg.noprint):
        save_table(df, cfg.out)
    return 0


def _tables(cfg: RunConfig) -> int:
    tables = {
        "one_set": counting.problem_table_one_set(),
        "two_set": counting.problem_table_two_set(),
    }
    for name, df in tables.items():
        preview(df, f"{name.replace('_', '-')} classification table")
        if cfg.out and not (cfg.dryrun or cfg.noprint):
            out = Path(cfg.out)
            save_table(df, str(out.with_name(f"{out.stem}_{name}{out.suffix or '.csv'}")))
    return 0


def _laws(cfg: RunConfig) -> int:
    law = laws.get_law(cfg.law)
    rng = rng_for(cfg.seed, f"laws:{law.id}")
    try:
        table = laws.generate_observations(law, cfg.sizes, rng, seed=cfg.seed)
    except laws.ShapeError as err:
        raise ConfigError(str(err)) from None
    stats = laws.check_law_relation(law, table)
    print(f"{law.id}: relation residual {stats.max_abs:.2e} over {stats.n_samples} predictions")
    if cfg.verbose:
        preview(table.to_frame(), f"{law.id} measurements")
    if cfg.out and not (cfg.dryrun or cfg.noprint):
        print(f"📄 Saving copy of measurements to: {cfg.out}...")
        if cfg.format == "xlsx":
            laws.save_observations_xlsx(table, cfg.out)
        else:
            laws.save_observations_csv(table, cfg.out)
    return 0


COMMANDS = {"verify": _verify, "list": _list, "tables": _tables, "laws": _laws}


def main():
    """Main function."""
    args = get_args("verify")
    try:
        cfg = RunConfig.from_args(args)
    except ConfigError as err:
        print(f"❌ {err}")
        sys.exit(2)

    if cfg.dryrun:
        print("\n❗❗❗ WARNING:", "dryrun is enabled (no files will be written)\n")

    try:
        status = COMMANDS[cfg.command](cfg)
    except ConfigError as err:
        print(f"❌ {err}")
        sys.exit(2)
    print("\n\nDONE ✅")
    sys.exit(status)


if __name__ == "__main__":
    main()
