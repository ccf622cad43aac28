import numpy as np
import pytest

from phenostruct import forms as fx
from phenostruct.catalog import get_entry
from phenostruct.core import Cortege, sample_cortege
from phenostruct.verify import cortege_values


def _points(*coords):
    return tuple(np.array(c, dtype=float) for c in coords)


def _values(entry_id, setA, setB=None, diagonal=False):
    spec = get_entry(entry_id).spec
    return cortege_values(spec, Cortege(_points(*setA), None if setB is None else _points(*setB)), diagonal)


def test_cayley_menger_on_the_unit_square():
    values = _values("one/2d/euclid", [(0, 0), (1, 0), (1, 1), (0, 1)])
    assert values[(0, 2)][0] == pytest.approx(2.0)
    assert fx.cayley_menger(4).residual(values) < 1e-12


def test_cayley_menger_of_three_points():
    collinear = {(0, 1): np.array([1.0]), (0, 2): np.array([9.0]), (1, 2): np.array([4.0])}
    triangle = {(0, 1): np.array([9.0]), (0, 2): np.array([16.0]), (1, 2): np.array([25.0])}
    form = fx.cayley_menger(3)
    assert form.residual(collinear) < 1e-12
    assert form.raw(triangle)[0] == pytest.approx(-576.0)
    assert form.residual(triangle) > 1e-3


def test_gram_on_the_sphere(rng):
    entry = get_entry("one/2d/sphere")
    form = entry.identity
    assert form.diagonal
    for _ in range(10):
        values = cortege_values(entry.spec, sample_cortege(entry.spec, entry.lengths, rng), diagonal=True)
        assert values[(1, 1)][0] == pytest.approx(1.0)
        assert form.residual(values) < 1e-8


def test_fixed_diagonal_gram():
    assert not fx.gram(4, diagonal=1.0).diagonal
    assert fx.gram(4).kind is fx.FormKind.GRAM


def test_pfaffian_of_the_symplectic_plane(rng):
    entry = get_entry("one/2d/symplectic")
    for _ in range(10):
        values = cortege_values(entry.spec, sample_cortege(entry.spec, entry.lengths, rng))
        assert fx.pfaffian(4).residual(values) < 1e-8


def test_cocycle_on_the_line():
    values = _values("one/1d/line", [(0.5,), (-1.0,), (2.0,)])
    assert fx.cocycle([0]).residual(values) == 0.0
    values[(1, 2)] = values[(1, 2)] + 0.5
    assert fx.cocycle([0]).residual(values) > 0.05


def test_grid_additive():
    values = _values("two/u/r22", [(0.1,), (0.7,)], [(-0.3,), (1.2,)])
    assert fx.grid_additive([0]).residual(values) < 1e-14


def test_affine_rows():
    values = _values("two/u/r32", [(0.1,), (0.7,), (-1.3,)], [(0.5, 1.0), (-0.2, 0.4)])
    assert fx.affine_rows(3).residual(values) < 1e-12


def test_mobius_rows():
    values = _values(
        "two/u/r42", [(0.1,), (0.7,), (-1.3,), (1.9,)], [(0.5, 1.0, 0.3), (-0.2, 0.4, 1.1)]
    )
    assert fx.mobius_rows().residual(values) < 1e-10
    values[(0, 0)] = values[(0, 0)] * 1.1
    assert fx.mobius_rows().residual(values) > 1e-6


def test_with_kind():
    form = fx.with_kind(fx.candidate_rows(), fx.FormKind.CANDIDATE)
    assert form.kind is fx.FormKind.CANDIDATE
    assert form.label == fx.candidate_rows().label
