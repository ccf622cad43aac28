import numpy as np
import pytest

from phenostruct import heap
from phenostruct.heap import Condition, Definition, FiniteTernaryOp, InvalidGroup


GROUPS = [heap.cyclic(n) for n in range(2, 9)] + [
    heap.symmetric(3),
    heap.dihedral(4),
    heap.product(heap.cyclic(2), heap.cyclic(2)),
    heap.units_mod(7),
]


def _op(name, fn, g):
    x, y, z = np.ogrid[:g, :g, :g]
    return FiniteTernaryOp(name, np.broadcast_to(fn(x, y, z), (g, g, g)) % g)


def test_group_orders():
    assert heap.symmetric(3).order == 6
    assert heap.dihedral(4).order == 8
    assert heap.units_mod(5).order == 4
    assert heap.product(heap.cyclic(2), heap.cyclic(4)).name == "Z2×Z4"


def test_invalid_group():
    mul = np.array([[0, 1], [0, 1]])
    with pytest.raises(InvalidGroup):
        heap.FiniteGroup("broken", mul, np.array([0, 1]), 0).validate()


def test_table_shape_is_checked():
    with pytest.raises(ValueError):
        FiniteTernaryOp("flat", np.zeros((2, 2, 3), dtype=int))
    with pytest.raises(ValueError):
        FiniteTernaryOp("outside", np.full((2, 2, 2), 2))


def test_heap_of_cyclic_group():
    op = heap.heap_from_group(heap.cyclic(5))
    assert op(2, 3, 4) == 3
    assert heap.check_heap_identities(op, Definition.D2) == []


@pytest.mark.parametrize("grp", GROUPS, ids=lambda g: g.name)
def test_group_heaps_satisfy_every_definition(grp):
    op = heap.heap_from_group(grp)
    for definition in Definition:
        assert heap.check_heap_identities(op, definition) == [], definition


def test_xor_is_the_heap_of_z2():
    op = heap.heap_from_group(heap.cyclic(2))
    x, y, z = np.indices((2, 2, 2))
    assert np.array_equal(op.table, x ^ y ^ z)


def test_sum_is_not_a_heap():
    op = _op("x+y+z", lambda x, y, z: x + y + z, 5)
    found = heap.check_heap_identities(op, Definition.D2)
    assert found
    assert found[0].identity == "φ(x,y,z) = φ(φ(x,y,s),s,z)"


def test_constant_operation_fails_surjectivity():
    op = FiniteTernaryOp("const", np.zeros((3, 3, 3), dtype=int))
    assert not heap.check_surjectivity(op, Condition.B)
    assert not heap.check_surjectivity(op, Condition.C)
    violations = heap.check_heap_identities(op, Definition.D4)
    assert violations[0].identity == "condition B"


def test_group_heap_satisfies_conditions():
    op = heap.heap_from_group(heap.symmetric(3))
    assert heap.check_surjectivity(op, Condition.B)
    assert heap.check_surjectivity(op, Condition.C)


def test_condition_a():
    grp = heap.cyclic(4)
    assert heap.check_surjectivity(heap.f_table_from_group(grp, range(4), range(4)), Condition.A, 4)
    assert not heap.check_surjectivity(np.zeros((4, 4), dtype=int), Condition.A, 4)
    with pytest.raises(ValueError):
        heap.check_surjectivity(np.zeros((4, 4), dtype=int), Condition.A)


def test_sampled_mode(rng):
    op = heap.heap_from_group(heap.cyclic(11))
    assert heap.check_heap_identities(op, Definition.CLASSICAL, mode="sampled", rng=rng, n_samples=2000) == []
    with pytest.raises(ValueError):
        heap.check_heap_identities(op, mode="everything")


def test_batch_agrees_with_single_table(rng):
    tables = np.concatenate(
        [heap.random_tables(3, 200, rng), heap.relabelled_heap(heap.cyclic(3), 20, rng)]
    )
    for definition in Definition:
        mask = heap.batch_satisfies(tables, definition, chunk=64)
        single = [not heap.check_heap_identities(FiniteTernaryOp("t", t), definition) for t in tables]
        assert mask.tolist() == single
    assert heap.batch_satisfies(tables[-20:], Definition.D2).all()


def test_permutation_sums_satisfy_condition_b(rng):
    tables = heap.permutation_sum(4, 50, rng)
    for t in tables:
        assert heap.check_surjectivity(FiniteTernaryOp("sum", t), Condition.B)


def test_definitions_agree_on_sampled_tables(rng):
    tables = np.concatenate(
        [
            heap.random_tables(3, 5000, rng),
            heap.permutation_sum(3, 500, rng),
            heap.relabelled_heap(heap.cyclic(3), 500, rng),
        ]
    )
    verdicts = heap.definitions_agree(tables)
    assert verdicts["disagree"].size == 0
    assert verdicts[Definition.D2.value].sum() >= 500


@pytest.mark.slow
def test_definitions_agree_on_full_sample(rng):
    tables = heap.random_tables(3, 100_000, rng)
    assert heap.definitions_agree(tables)["disagree"].size == 0


@pytest.mark.parametrize(
    "grp, xs",
    [(heap.cyclic(5), range(5)), (heap.units_mod(5), range(4))],
    ids=["Z5 additive", "Z5 multiplicative"],
)
def test_structure_relation_defines_heap(grp, xs):
    f = heap.f_table_from_group(grp, list(xs), list(xs))
    op = heap.heap_from_group(grp)
    assert heap.check_structure_relation(f, op) == []
    assert heap.structure_defines_heap(f, op) == []
    induced = heap.induced_operation(f, grp.order)
    assert induced is not None
    assert np.array_equal(induced.table, op.table)


def test_structure_relation_fails_for_wrong_operation():
    grp = heap.cyclic(5)
    f = heap.f_table_from_group(grp, range(5), range(5))
    op = _op("x+y+z", lambda x, y, z: x + y + z, 5)
    assert heap.check_structure_relation(f, op)
    assert heap.structure_defines_heap(f, op) is None


def test_incomplete_structure_induces_nothing():
    grp = heap.cyclic(5)
    f = heap.f_table_from_group(grp, [0, 1], [0, 1])
    assert heap.induced_operation(f, 5) is None
