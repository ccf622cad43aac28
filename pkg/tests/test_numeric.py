import math

import numpy as np
import pytest

from phenostruct.catalog import get_entry
from phenostruct.core import sample_cortege
from phenostruct.numeric import (
    NonFinite,
    ResidualStats,
    equilibrate,
    finite_diff_jacobian,
    functional_matrix,
    hadamard_bound,
    merge_stats,
    numeric_rank,
    pfaffian,
    residual_stats,
)


def test_rank_of_singular_matrix():
    report = numeric_rank(np.diag([1.0, 1.0, 0.0]))
    assert report.observed_rank == 2
    assert report.gap_ratio == math.inf
    assert report.confident


def test_rank_gap():
    report = numeric_rank(np.diag([1.0, 1e-9]))
    assert report.observed_rank == 1
    assert report.gap_ratio == pytest.approx(1e9)


def test_rank_of_zero_matrix():
    assert numeric_rank(np.zeros((3, 3))).observed_rank == 0
    assert numeric_rank(np.zeros((0, 0))).observed_rank == 0


def test_unclear_gap_is_not_confident():
    report = numeric_rank(np.diag([1.0, 1e-6 * 2.0, 1e-6 / 2.0]))
    assert report.observed_rank == 2
    assert not report.confident


def test_jacobian():
    jac = finite_diff_jacobian(lambda u: np.array([u[0] ** 2, u[0] * u[1]]), np.array([1.0, 2.0]))
    assert np.allclose(jac, [[2.0, 0.0], [2.0, 1.0]], atol=1e-8)


def test_jacobian_rejects_non_finite():
    with pytest.raises(NonFinite):
        finite_diff_jacobian(lambda u: np.array([1.0 / u[0] if u[0] > 0 else np.inf]), np.array([0.0]))


def test_equilibrate_normalizes_columns():
    out = equilibrate(np.array([[1.0, 100.0], [2.0, 0.0], [0.0, 0.0]]))
    assert np.allclose(np.linalg.norm(out, axis=0), 1.0)
    assert np.all(out[2] == 0.0)


def test_functional_matrix_of_the_plane(rng):
    spec = get_entry("one/2d/euclid").spec
    matrix = functional_matrix(spec, sample_cortege(spec, (4, None), rng))
    assert matrix.shape == (6, 8)
    assert numeric_rank(equilibrate(matrix)).observed_rank == 5


def test_functional_matrix_of_two_sets(rng):
    spec = get_entry("two/u/r32").spec
    matrix = functional_matrix(spec, sample_cortege(spec, (3, 2), rng))
    assert matrix.shape == (6, 3 + 2 * 2)
    assert numeric_rank(equilibrate(matrix)).observed_rank == 5


def test_residual_stats():
    stats = residual_stats([1e-3, -2e-3], "absolute")
    assert stats.n_samples == 2
    assert stats.max_abs == pytest.approx(2e-3)
    assert stats.mean_abs == pytest.approx(1.5e-3)
    assert stats.passes(1e-2) and not stats.passes(1e-3)
    assert residual_stats([], "absolute").n_samples == 0
    with pytest.raises(NonFinite):
        residual_stats([np.nan], "absolute")


def test_merge_stats():
    merged = merge_stats([ResidualStats(1, 1.0, 1.0, "a"), ResidualStats(3, 0.5, 0.2, "a")])
    assert merged.n_samples == 4
    assert merged.max_abs == 1.0
    assert merged.mean_abs == pytest.approx(0.4)


def test_hadamard_bound(rng):
    m = rng.normal(size=(5, 5))
    assert abs(np.linalg.det(m)) <= hadamard_bound(m) + 1e-12


def test_pfaffian():
    assert pfaffian(np.array([[0.0, 3.0], [-3.0, 0.0]])) == pytest.approx(3.0)
    a, b, c, d, e, f = 1.0, 2.0, 3.0, 4.0, 5.0, 6.0
    m = np.array([[0, a, b, c], [-a, 0, d, e], [-b, -d, 0, f], [-c, -e, -f, 0]])
    assert pfaffian(m) == pytest.approx(a * f - b * e + c * d)
    assert pfaffian(m) ** 2 == pytest.approx(np.linalg.det(m))
    assert pfaffian(np.zeros((3, 3))) == 0.0
