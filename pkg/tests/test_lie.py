import numpy as np
import pytest

from phenostruct.lie import ALGEBRAS, algebra_frame, bracket, check_lie_algebra


def test_bracket_of_translation_and_dilation():
    dx = lambda p: np.array([1.0, 0.0])  # noqa: E731
    dilation = lambda p: np.array([p[0], p[1]])  # noqa: E731
    assert np.allclose(bracket(dx, dilation, np.array([0.3, -0.7])), [1.0, 0.0], atol=1e-6)


@pytest.mark.parametrize("algebra_id", sorted(ALGEBRAS))
def test_algebras_close(algebra_id, rng):
    report = check_lie_algebra(algebra_id, rng)
    assert report.passes, report.closure_residual
    assert report.structure_constants.shape == (len(ALGEBRAS[algebra_id].operators),) * 3


def test_structure_constants_are_antisymmetric(rng):
    c = check_lie_algebra("space/heisenberg", rng).structure_constants
    assert np.allclose(c, -np.transpose(c, (1, 0, 2)))


def test_intransitive_algebra(rng):
    report = check_lie_algebra("plane/shear", rng)
    assert report.orbit_rank == 1
    assert not report.transitive


def test_algebra_frame():
    df = algebra_frame()
    assert len(df) == len(ALGEBRAS)
    assert set(df.columns) == {"id", "anchor", "dim", "operators", "transitive"}
