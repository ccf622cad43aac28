import pytest

from phenostruct import catalog
from phenostruct.catalog import Representation, UnknownId
from phenostruct.core import Family


def test_registry_is_filled_once(catalog_size):
    assert catalog.register_required_entries() == catalog_size
    assert len(catalog.all_entries()) == catalog_size


@pytest.mark.parametrize(
    "family, s, n, count",
    [
        (Family.ONE_SET, 1, 1, 1),
        (Family.ONE_SET, 1, 2, 11),
        (Family.ONE_SET, 1, 3, 15),
        (Family.ONE_SET, 1, 4, 12),
        (Family.ONE_SET, 2, 1, 2),
        (Family.ONE_SET, 3, 1, 11),
        (Family.ONE_SET, 4, 1, 12),
    ],
)
def test_one_set_counts(family, s, n, count):
    assert len(catalog.list_entries(family, s, n)) == count


def test_two_set_counts():
    assert len(catalog.list_entries(Family.TWO_SET, 2)) == 10
    assert len(catalog.list_entries(Family.TWO_SET, 3)) == 11
    assert len(catalog.list_entries(Family.TWO_SET, 2, representation=Representation.QUASIGROUP)) == 10
    assert len(catalog.list_entries(Family.TWO_SET, 3, representation=Representation.QUASIGROUP)) == 11
    assert len(catalog.list_entries(prefix="two/d/r22")) == 2


def test_unknown_id():
    with pytest.raises(UnknownId):
        catalog.get_entry("one/2d/flatland")


def test_duplicate_registration():
    with pytest.raises(ValueError):
        catalog.register(catalog.get_entry("one/2d/euclid"))


@pytest.mark.parametrize(
    "entry_id, rank, lengths",
    [
        ("one/1d/line", 2, (3, None)),
        ("one/2d/euclid", 5, (4, None)),
        ("one/3d/euclid", 9, (5, None)),
        ("one/4d/euclid", 14, (6, None)),
        ("one/2d/s2-thermal", 4, (3, None)),
        ("one/3d/s3-thermo", 6, (3, None)),
        ("one/4d/s4-k1", 8, (3, None)),
        ("two/u/r22", 3, (2, 2)),
        ("two/u/r32", 5, (3, 2)),
        ("two/u/r42", 7, (4, 2)),
        ("two/u/r33", 8, (3, 3)),
        ("two/d/r52-projective", 18, (5, 2)),
        ("two/x/cubic", 4, (2, 2)),
    ],
)
def test_predicted_rank_and_lengths(entry_id, rank, lengths):
    entry = catalog.get_entry(entry_id)
    assert entry.predicted_rank == rank
    assert entry.lengths == lengths


def test_identity_is_absent_where_unknown():
    for entry_id in ("one/2d/helmholtz", "one/3d/helmholtz", "one/3d/simplicial-additive"):
        assert catalog.get_entry(entry_id).identity is None
    assert catalog.get_entry("one/2d/euclid").identity.kind.value == "cayley-menger"


def test_variants_expand_specs():
    entry = catalog.get_entry("two/d/r32-eps")
    assert [spec.params["eps"] for spec in entry.specs()] == [-1.0, 0.0, 1.0]
    assert len(catalog.get_entry("one/2d/euclid").specs()) == 1


def test_motions_and_lie_bases():
    entry = catalog.get_entry("one/2d/euclid")
    assert entry.motions.param_count == 3
    assert len(entry.lie_basis) == 3
    assert catalog.get_entry("one/2d/lobachevsky").motions is None


def test_negative_entries():
    negatives = [e for e in catalog.all_entries() if e.expect_no_structure]
    assert {e.id for e in negatives} == {"two/x/cubic", "two/x/r53-candidate"}


def test_catalog_frame(catalog_size):
    df = catalog.catalog_frame()
    assert len(df) == catalog_size
    assert df["id"].is_unique
    row = df[df["id"] == "two/u/r42"].iloc[0]
    assert row["lengths"] == "4/2"
    assert row["predicted_rank"] == 7
    assert row["identity"] == "custom-determinant"


def test_anchors_state_the_metric_function():
    entries = catalog.all_entries()
    assert {e.id for e in entries} == set(catalog.FORMULAS)
    for entry in entries:
        label, _, formula = entry.anchor.partition("; ")
        assert label and formula.startswith("f"), entry.id
        assert " = " in formula, entry.id
    assert catalog.get_entry("one/2d/euclid").anchor == "Euclidean plane; f = Δx² + Δy²"
