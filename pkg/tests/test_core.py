import numpy as np
import pytest

from phenostruct import metrics as mx
from phenostruct.catalog import get_entry
from phenostruct.core import (
    Cortege,
    DomainExhausted,
    DomainViolation,
    Family,
    MetricSpec,
    ScalingMap,
    Side,
    apply_scaling,
    eval_metric,
    required_pairs,
    sample_cortege,
    sample_point,
)


def test_one_set_spec_mirrors_dimension():
    spec = MetricSpec("plane", Family.ONE_SET, 1, 2, mx.flat([1, 1]))
    assert spec.dimB == 2
    assert spec.box(Side.B) == spec.box(Side.A)


def test_two_set_spec_needs_second_dimension():
    with pytest.raises(ValueError):
        MetricSpec("half", Family.TWO_SET, 1, 1, mx.sum_xi)


def test_eval_euclid():
    spec = get_entry("one/2d/euclid").spec
    value = eval_metric(spec, np.array([0.0, 0.0]), np.array([3.0, 4.0]))
    assert value.shape == (1,)
    assert value[0] == pytest.approx(25.0)


def test_eval_outside_domain():
    spec = get_entry("one/2d/simplicial").spec
    with pytest.raises(DomainViolation):
        eval_metric(spec, np.array([1.0, 0.0]), np.array([1.0, 2.0]))


def test_with_params_keeps_original():
    spec = get_entry("one/2d/helmholtz").spec
    other = spec.with_params(gamma=3.0)
    assert other.params["gamma"] == 3.0
    assert spec.params["gamma"] != 3.0


def test_sample_point_exhausts():
    spec = MetricSpec("empty", Family.ONE_SET, 1, 1, mx.line, point_ok_A=lambda p, params: False)
    with pytest.raises(DomainExhausted):
        sample_point(spec, Side.A, np.random.default_rng(0))


def test_sampled_cortege_is_admissible(rng):
    entry = get_entry("two/u/r42")
    cortege = sample_cortege(entry.spec, entry.lengths, rng)
    assert cortege.lengths == (4, 2)
    for i, a in required_pairs(entry.spec, cortege.lengths):
        assert entry.spec.domain(cortege.setA[i], cortege.setB[a])


def test_required_pairs():
    one = get_entry("one/2d/euclid").spec
    two = get_entry("two/u/r32").spec
    assert len(required_pairs(one, (4, None))) == 12
    assert len(required_pairs(two, (3, 2))) == 6
    with pytest.raises(ValueError):
        sample_cortege(two, (3, None), np.random.default_rng(0))


def test_cortege_coordinates():
    cortege = Cortege((np.array([1.0, 2.0]),), (np.array([3.0]), np.array([4.0])))
    assert cortege.lengths == (1, 2)
    assert cortege.coordinates().tolist() == [1.0, 2.0, 3.0, 4.0]


def test_apply_scaling():
    spec = get_entry("one/2d/euclid").spec
    scaled = apply_scaling(spec, ScalingMap((np.sqrt,), (np.square,)))
    assert scaled.id == "one/2d/euclid~scaled"
    value = eval_metric(scaled, np.array([0.0, 0.0]), np.array([3.0, 4.0]))
    assert value[0] == pytest.approx(5.0)


def test_scaling_inverse():
    psi = ScalingMap((np.exp,), (np.log,))
    assert psi.inverse(0)(np.e) == pytest.approx(1.0)
    assert ScalingMap((np.tanh,)).inverse(0) is None
