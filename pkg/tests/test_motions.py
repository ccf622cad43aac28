import numpy as np
import pytest

from phenostruct.catalog import all_entries, get_entry
from phenostruct.core import Side
from phenostruct.motions import (
    MOTIONS,
    ParamDomain,
    apply_motion,
    area_motion,
    check_group_laws,
    check_infinitesimal_invariance,
    check_invariance,
    check_lie_consistency,
    draw_params,
)
from phenostruct.utils import CONFIG

TOL = CONFIG["tolerances"]

WITH_MOTIONS = [e.id for e in all_entries() if e.motion is not None]
WITH_LIE = [e.id for e in all_entries() if e.lie is not None and e.motion is not None]


def test_euclid_rotation_about_origin():
    ms = MOTIONS["plane/euclid"]
    moved = apply_motion(ms, [np.pi / 2, 0.0, 0.0], [1.0, 0.0])
    assert np.allclose(moved, [0.0, 1.0])


def test_parameters_outside_the_domain():
    ms = area_motion()
    with pytest.raises(ParamDomain):
        apply_motion(ms, [0.0, 0.0, 0.0, 0.0, 0.0], [1.0, 1.0])
    with pytest.raises(ParamDomain):
        apply_motion(ms, [1.0, 0.0], [1.0, 1.0])


def test_two_set_translation_moves_sides_oppositely():
    ms = MOTIONS["two/translation"]
    assert apply_motion(ms, [0.5], [1.0], Side.A)[0] == pytest.approx(1.5)
    assert apply_motion(ms, [0.5], [1.0], Side.B)[0] == pytest.approx(0.5)


def test_local_parameters_stay_near_identity(rng):
    ms = MOTIONS["plane/euclid"]
    for _ in range(20):
        params = draw_params(ms, rng)
        assert np.linalg.norm(params - np.asarray(ms.identity_params)) <= CONFIG["motions"]["local_radius"]


@pytest.mark.parametrize("entry_id", WITH_MOTIONS)
def test_motions_preserve_the_metric(entry_id, rng):
    stats = check_invariance(get_entry(entry_id), 20, rng)
    assert stats.n_samples == 20
    assert stats.passes(TOL["invariance"])


@pytest.mark.parametrize("name", ["line/translation", "plane/euclid", "plane/simplicial", "two/affine-line"])
def test_group_laws(name, rng):
    report = check_group_laws(MOTIONS[name], 5, rng)
    assert report.passes, report


@pytest.mark.slow
@pytest.mark.parametrize("name", sorted(MOTIONS))
def test_group_laws_full(name, rng):
    assert check_group_laws(MOTIONS[name], 20, rng).passes


@pytest.mark.parametrize("entry_id", WITH_LIE)
def test_lie_basis_annihilates_the_metric(entry_id, rng):
    entry = get_entry(entry_id)
    assert check_infinitesimal_invariance(entry, 20, rng).passes(TOL["infinitesimal"])
    assert check_lie_consistency(entry, rng) < TOL["infinitesimal"]


def test_projective_line_reverses_orientation():
    entry = get_entry("two/u/r42")
    ms, metric = entry.motions, entry.spec.eval
    flip = np.array([-1.0, 0.3, 0.5])  # d = 0.85, ad − bc = −1
    left, right = apply_motion(ms, flip, [0.1]), apply_motion(ms, flip, [0.2])
    assert left[0] > right[0]
    a, b = np.array([0.1]), np.array([0.7, -0.4, 1.3])
    moved = metric(apply_motion(ms, flip, a, Side.A), apply_motion(ms, flip, b, Side.B))
    assert np.allclose(moved, metric(a, b), atol=1e-12)

    twice = ms.compose_params(flip, flip)
    assert twice[0] > 0
    assert np.allclose(apply_motion(ms, twice, a), apply_motion(ms, flip, apply_motion(ms, flip, a)))
    assert np.allclose(apply_motion(ms, twice, b, Side.B),
                       apply_motion(ms, flip, apply_motion(ms, flip, b, Side.B), Side.B))


def test_projective_line_draws_both_components(rng):
    ms = MOTIONS["two/projective-line"]
    signs = {np.sign(draw_params(ms, rng, local=False)[0]) for _ in range(40)}
    assert signs == {-1.0, 1.0}
