from dataclasses import replace

import numpy as np
import pytest

from phenostruct import forms as fx
from phenostruct.catalog import get_entry
from phenostruct.core import ScalingMap
from phenostruct.utils import CONFIG
from phenostruct.verify import (
    CURVES,
    IdentityMissing,
    IdentityViolation,
    InverseFailure,
    RankMismatch,
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
    full_count,
    rank_passes,
)

TOL = CONFIG["tolerances"]


@pytest.mark.parametrize(
    "entry_id",
    ["one/1d/line", "one/2d/euclid", "one/2d/sphere", "one/2d/symplectic", "one/2d/simplicial",
     "two/u/r22", "two/u/r32", "two/u/r42"],
)
def test_identity_holds(entry_id, rng):
    stats = check_identity(get_entry(entry_id), 40, rng)
    assert stats.n_samples == 40
    assert stats.passes(TOL["identity"])


def test_identity_over_variants(rng):
    entry = get_entry("two/d/r32-eps")
    stats = check_identity(entry, 30, rng)
    assert stats.n_samples == 30
    assert stats.passes(TOL["identity"])


def test_missing_identity(rng):
    with pytest.raises(IdentityMissing):
        check_identity(get_entry("one/2d/helmholtz"), 5, rng)


def test_wrong_identity_is_reported(rng):
    entry = replace(get_entry("one/2d/euclid"), form=lambda spec: fx.gram(4, diagonal=0.0))
    assert not check_identity(entry, 10, rng).passes(TOL["identity"])
    with pytest.raises(IdentityViolation):
        check_identity(entry, 10, rng, strict=True)


def test_identity_is_sensitive(rng):
    report = check_sensitivity(get_entry("one/2d/euclid"), 5, rng)
    assert report.n_samples == 5
    assert report.passes()
    assert report.weakest_position.startswith("f(")


@pytest.mark.parametrize("entry_id", ["one/1d/line", "one/2d/euclid", "one/3d/euclid", "two/u/r32", "two/u/r33"])
def test_rank_predicate(entry_id, rng):
    report = check_rank_predicate(get_entry(entry_id), 10, rng)
    assert report.matches
    assert rank_passes(report)
    assert report.n_corteges == 10


def test_rank_mismatch_is_raised(rng):
    entry = replace(get_entry("one/2d/euclid"), predicted_rank=6)
    assert not rank_passes(check_rank_predicate(entry, 5, rng))
    with pytest.raises(RankMismatch):
        check_rank_predicate(entry, 5, rng, strict=True)


def test_no_relation_for_negative_entries(rng):
    assert check_no_relation(get_entry("two/x/cubic"), rng, n_corteges=10).passes
    candidate = check_no_relation(get_entry("two/x/r53-candidate"), rng, n_corteges=10, n_candidate=50)
    assert candidate.candidate_residual > TOL["candidate"]
    assert candidate.passes


def test_no_relation_fails_for_a_structure(rng):
    entry = get_entry("one/2d/euclid")
    report = check_no_relation(entry, rng, n_corteges=5, n_candidate=5)
    assert full_count(entry) == 6
    assert report.rank.observed_rank == 5
    assert not report.passes


def test_scaling_keeps_rank(rng):
    report = check_scaling_rank(get_entry("one/2d/euclid"), 10, rng)
    assert rank_passes(report)
    psi = ScalingMap((np.exp,), (np.log,))
    assert rank_passes(check_scaling_rank(get_entry("two/u/r22"), 10, rng, psi))


def test_oriented_area(rng):
    report = check_area_ternary(rng, 30)
    assert report.passes
    assert report.rank.observed_rank == 14 - 5


def test_oriented_area_rank_on_every_figure(rng):
    report = check_area_ternary(rng, 12)
    assert len(report.figure_ranks) == 12
    assert set(report.figure_ranks) == {9}
    assert report.rank.n_corteges == 12
    assert report.rank.agreement == 1.0


def test_oriented_area_fails_on_one_bad_figure(rng):
    report = check_area_ternary(rng, 5)
    broken = replace(report, figure_ranks=report.figure_ranks[:-1] + (8,))
    assert not broken.passes


def test_distance_symmetry(rng):
    assert classify_distance_symmetry(get_entry("one/2d/euclid").spec, rng) is Symmetry.SYMMETRIC
    assert classify_distance_symmetry(get_entry("one/2d/symplectic").spec, rng) is Symmetry.ANTISYMMETRIC
    assert classify_distance_symmetry(get_entry("one/2d/simplicial").spec, rng) is Symmetry.SYMMETRIC
    with pytest.raises(ValueError):
        classify_distance_symmetry(get_entry("one/2d/s2-additive").spec, rng)


def test_distance_symmetry_uses_its_own_tolerance(rng, monkeypatch):
    spec = get_entry("one/2d/euclid").spec
    monkeypatch.setitem(TOL, "cycle", 0.0)
    assert classify_distance_symmetry(spec, rng) is Symmetry.SYMMETRIC
    monkeypatch.setitem(TOL, "symmetry", 0.0)
    assert classify_distance_symmetry(spec, rng) is Symmetry.NEITHER


def test_cycles(rng):
    spec = get_entry("one/2d/euclid").spec
    assert check_cycle(CURVES["circle"], spec, rng, 50).passes(TOL["cycle"])
    assert check_cycle(CURVES["line"], spec, rng, 50).passes(TOL["cycle"])
    assert check_cycle(CURVES["parabola"], spec, rng, 50).max_abs > 1e-3
    with pytest.raises(ValueError):
        check_cycle(CURVES["circle"], get_entry("one/1d/line").spec, rng)


@pytest.mark.parametrize(
    "psi, box",
    [
        (ScalingMap((lambda t: t,), (lambda u: u,)), (-1.0, 1.0)),
        (ScalingMap((np.exp,), (np.log,)), (-1.0, 1.0)),
        (ScalingMap((np.tanh,)), (-0.5, 0.5)),
    ],
    ids=["identity", "exp", "tanh"],
)
def test_translation_form(psi, box, rng):
    assert check_translation_form(psi, rng, 50, t_box=box).passes(TOL["translation"])


def test_translation_form_without_root(rng):
    with pytest.raises(InverseFailure):
        check_translation_form(ScalingMap((np.tanh,)), rng, 5, t_box=(-0.5, 0.5), bracket=(2.0, 3.0))
