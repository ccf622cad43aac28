import pytest

from phenostruct import counting
from phenostruct.catalog import all_entries
from phenostruct.core import Family
from phenostruct.counting import (
    Finite,
    Inconclusive,
    NoGroupSymmetry,
    Saturated,
    SetShape,
    StructureShape,
    Unbounded,
)


@pytest.mark.parametrize(
    "s, M, m, r",
    [(1, 3, 1, 1), (1, 4, 2, 3), (1, 5, 3, 6), (2, 3, 2, 2), (3, 3, 3, 3), (1, 6, 4, 10)],
)
def test_one_set_degree(s, M, m, r):
    assert counting.one_set_degree(s, M, m) == Finite(r)


def test_one_set_degree_without_symmetry():
    verdict = counting.one_set_degree(1, 4, 3)
    assert isinstance(verdict, NoGroupSymmetry)
    assert ">" in verdict.reason


@pytest.mark.parametrize(
    "args, r",
    [((1, 2, 2, 1, 1), 1), ((1, 3, 2, 1, 2), 2), ((1, 3, 3, 2, 2), 4), ((2, 2, 2, 2, 2), 2)],
)
def test_two_set_degree(args, r):
    assert counting.two_set_degree(*args) == Finite(r)


def test_two_set_degree_reports_both_misses():
    verdict = counting.two_set_degree(1, 3, 3, 1, 1)
    assert isinstance(verdict, NoGroupSymmetry)
    assert verdict.reason.count("≠") == 2


def test_dependent_count_examples():
    assert counting.dependent_count(2, 4, 4) == 1
    assert counting.dependent_count(2, 4, 5) == 3
    assert counting.dependent_count((1, 1), (2, 2), (3, 3)) == 4
    assert counting.dependent_count(2, 4, 5, s=3) == 9


def test_dependent_count_rejects_short_cortege():
    with pytest.raises(ValueError):
        counting.dependent_count(2, 4, 3)


def test_dependent_count_matches_realized_rank():
    for M in range(3, 7):
        for P in range(M, 11):
            assert counting.dependent_count(2, M, P) == counting.superposition_count(2, M, P), (M, P)
    for ranks in [(2, 2), (3, 2), (2, 3), (3, 3), (4, 3)]:
        for P in range(ranks[0], 6):
            for Q in range(ranks[1], 6):
                assert counting.dependent_count((1, 1), ranks, (P, Q)) == counting.superposition_count(
                    (1, 1), ranks, (P, Q)
                ), (ranks, P, Q)


def test_realized_count_scales_with_components():
    assert counting.superposition_count(2, 4, 5, s=3) == 9
    assert counting.superposition_count((1, 1), (2, 2), (3, 3), s=2) == 8


def test_realized_count_detects_a_wrong_rank():
    assert counting.superposition_count(2, 4, 6) != counting.dependent_count(2, 5, 6)


def test_realized_count_needs_a_known_shape():
    with pytest.raises(ValueError):
        counting.superposition_count(3, 4, 5)
    with pytest.raises(ValueError):
        counting.superposition_count((1, 1), (4, 2), (5, 5))
    with pytest.raises(ValueError):
        counting.superposition_count(2, 4, 3)


def test_invalid_shapes():
    with pytest.raises(ValueError):
        StructureShape(1, (SetShape(2, 3, 3),))
    with pytest.raises(ValueError):
        StructureShape(0, (SetShape(2, 2, 4),))
    with pytest.raises(ValueError):
        counting.polyary_group_symmetry(counting.one_set_shape(1, 6, 4), search_bound=5)


def test_binary_shapes_have_constant_motion_count():
    assert counting.polyary_group_symmetry(counting.one_set_shape(1, 4, 2), 12) == Finite(3)
    assert counting.polyary_group_symmetry(counting.two_set_shape(1, 3, 3, 2, 2), 10) == Finite(4)


def test_oversized_dimension_grows_without_bound():
    assert counting.polyary_group_symmetry(counting.one_set_shape(1, 4, 3), 12) == Unbounded((1,))


@pytest.mark.parametrize(
    "shape",
    [
        StructureShape(1, (SetShape(2, 3, 4),)),
        StructureShape(1, (SetShape(1, 2, 3), SetShape(1, 1, 2))),
        StructureShape(1, tuple(SetShape(1, 1, 2) for _ in range(3))),
        StructureShape(1, (SetShape(3, 4, 5),)),
        StructureShape(1, (SetShape(2, 2, 3), SetShape(2, 2, 3))),
    ],
)
def test_polyary_structures_saturate(shape):
    assert isinstance(counting.polyary_group_symmetry(shape, search_bound=20), Saturated)


def test_ternary_saturation_witness():
    shape = StructureShape(1, (SetShape(2, 3, 4),))
    assert counting.polyary_group_symmetry(shape, search_bound=20) == Saturated((7,))


def test_short_scan_is_inconclusive():
    with pytest.raises(Inconclusive):
        counting.polyary_group_symmetry(StructureShape(1, (SetShape(10, 3, 4),)), search_bound=10)


def test_motion_parameters_match_degree():
    for entry in all_entries():
        if entry.motions is None:
            continue
        lenA, lenB = entry.lengths
        if entry.family is Family.ONE_SET:
            verdict = counting.one_set_degree(entry.s, lenA, entry.spec.dimA)
        else:
            verdict = counting.two_set_degree(entry.s, lenA, lenB, entry.spec.dimA, entry.spec.dimB)
        assert verdict == Finite(entry.motions.param_count), entry.id


def test_problem_tables():
    one = counting.problem_table_one_set()
    assert len(one) == 20
    plane = one[(one["s"] == 1) & (one["M"] == 4)].iloc[0]
    assert plane["m"] == 2 and plane["r"] == 3 and plane["solved"]
    solved = {(row.s, row.n) for row in one.itertuples() if row.solved}
    assert solved == {(1, 1), (1, 2), (1, 3), (2, 1), (3, 1), (4, 1)}
    four_space = one[(one["s"] == 1) & (one["M"] == 6)].iloc[0]
    assert four_space["r"] == 10 and not four_space["solved"]

    two = counting.problem_table_two_set()
    assert (two["N"] <= two["M"]).all()
    row = two[(two["s"] == 1) & (two["M"] == 3) & (two["N"] == 2)].iloc[0]
    assert row["r"] == 2 and row["solved"]
    assert two[two["s"] == 1]["solved"].all()
    assert two[(two["s"] == 2) & (two["N"] == 2)]["solved"].all()
    assert not two[(two["s"] == 2) & (two["N"] == 3)]["solved"].any()
    for s in (3, 4):
        flags = two[two["s"] == s].set_index(["M", "N"])["solved"]
        assert flags[(2, 2)] and flags.sum() == 1
    assert not two[two["s"] == 5]["solved"].any()
