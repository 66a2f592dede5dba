import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lorcat.errors import NotComposableError, SuperluminalError, UnknownFrameError
from lorcat.frames import (
    Frame,
    FrameSpace,
    check_category_axioms,
    compose,
    defect,
    deviation,
    inverse,
)
from lorcat.kinematics import boost_matrix, einstein_add, gyration
from lorcat.vecmat import rotation_from_axis_angle

from conftest import ball


def random_lorentz(rng, n, vmax=0.99, c=1.0, rotate=True):
    vel = {"f0": [0, 0, 0]}
    rots = {}
    for k, v in enumerate(ball(rng, vmax * c, n - 1), start=1):
        vel[f"f{k}"] = v
        if rotate:
            rots[f"f{k}"] = rotation_from_axis_angle(rng.normal(size=3), rng.uniform(-np.pi, np.pi))
    return FrameSpace.lorentz(vel, c=c, rotations=rots)


def test_hom_between_rest_and_moving():
    space = FrameSpace.lorentz({"lab": [0, 0, 0], "ship": [0.6, 0, 0]})
    f = space.hom("lab", "ship")
    assert f.velocity.tolist() == pytest.approx([0.6, 0, 0])
    assert np.allclose(f.matrix, boost_matrix([0.6, 0, 0]))
    assert defect(f) < 1e-15


def test_identity_is_exact():
    space = random_lorentz(np.random.default_rng(1), 4)
    for a in space.ids:
        assert np.array_equal(space.hom(a, a).matrix, np.eye(4))


def test_relative_boost_carries_thomas_rotation():
    u, v = np.array([0, 0.5, 0]), np.array([0.5, 0, 0])
    space = FrameSpace.lorentz(
        {"O": [0, 0, 0], "B": v, "C": einstein_add(u, v)},
        rotations={"C": gyration(u, v)},
    )
    f = space.hom("B", "C")
    assert np.allclose(f.velocity, u, atol=1e-14)
    assert np.allclose(f.rotation, np.eye(3), atol=1e-14)
    direct = space.hom("O", "C")
    assert direct.decomposition.angle == pytest.approx(0.14334756890536543, abs=1e-12)


def test_galilean_homs():
    space = FrameSpace.galilean({"a": [0, 0, 0], "b": [1, 2, 3], "c": [-1, 0, 5]})
    f = space.hom("b", "c")
    assert f.velocity.tolist() == [-2, -2, 2]
    assert deviation(compose(space.hom("c", "a"), space.hom("a", "c")), space.identity("a")) == 0


def test_validation():
    with pytest.raises(SuperluminalError):
        FrameSpace.lorentz({"a": [0, 0, 0], "b": [1.0, 0, 0]})
    with pytest.raises(ValueError):
        FrameSpace.lorentz({"a": [0.1, 0, 0]})
    with pytest.raises(ValueError):
        FrameSpace("lorentz", [Frame("a", [0, 0, 0]), Frame("a", [0.1, 0, 0])])
    with pytest.raises(ValueError):
        FrameSpace("galilean", [Frame("a", [0, 0, 0]), Frame("b", [0, 0, 0], rotation_from_axis_angle([0, 0, 1], 1))])
    with pytest.raises(ValueError):
        FrameSpace.lorentz({"a": [0, 0, 0]}, rotations={"a": np.diag([1.0, 1.0, -1.0])})
    space = FrameSpace.lorentz({"a": [0, 0, 0]})
    with pytest.raises(UnknownFrameError):
        space.hom("a", "zzz")
    with pytest.raises(UnknownFrameError):
        FrameSpace.lorentz({"a": [0, 0, 0]}, anchor="b")


def test_anchor_choice():
    space = FrameSpace.lorentz({"m": [0.3, 0, 0], "r": [0, 0, 0]}, anchor="r")
    assert space.anchor == "r"
    assert space.hom("r", "m").velocity.tolist() == pytest.approx([0.3, 0, 0])


def test_compose_requires_matching_endpoints():
    space = FrameSpace.lorentz({"a": [0, 0, 0], "b": [0.1, 0, 0], "c": [0, 0.2, 0]})
    with pytest.raises(NotComposableError):
        compose(space.hom("a", "b"), space.hom("a", "c"))
    gal = FrameSpace.galilean({"a": [0, 0, 0], "b": [1, 0, 0]})
    with pytest.raises(NotComposableError):
        compose(gal.hom("a", "b"), space.hom("b", "a"))


def test_inverse_both_regimes(rng):
    space = random_lorentz(rng, 6)
    for a in space.ids:
        for b in space.ids:
            f = space.hom(a, b)
            g = inverse(f)
            assert (g.source, g.target) == (b, a)
            assert deviation(compose(g, f), space.identity(a)) < 1e-9
            assert defect(g) < 1e-9
    gal = FrameSpace.galilean({"a": [0, 0, 0], "b": [3, -1, 2]})
    f = gal.hom("a", "b")
    assert deviation(compose(inverse(f), f), gal.identity("a")) < 1e-12


def test_axioms_pass_on_random_spaces(rng):
    for _ in range(5):
        space = random_lorentz(rng, 8)
        rep = check_category_axioms(space, samples=300, seed=3)
        assert rep.passed, rep.failures()
        assert rep.worst.residual < 1e-9


def test_axioms_exhaustive_on_small_space():
    space = FrameSpace.galilean({"a": [0, 0, 0], "b": [1, 0, 0], "c": [0, 2, 0]})
    rep = check_category_axioms(space, samples=1000)
    assert rep.passed


def test_perturbed_anchor_is_located():
    space = random_lorentz(np.random.default_rng(5), 5, vmax=0.6)
    bad = space.perturb_anchor("f3", 1e-3)
    rep = check_category_axioms(bad, samples=500)
    assert not rep.passed
    assert rep.laws["frames"].where == ("f3",)
    assert 1e-4 < rep.worst.residual < 1e-2
    # the original space is untouched
    assert check_category_axioms(space, samples=200).passed


def test_morphism_from_velocity_is_not_the_hom():
    space = FrameSpace.lorentz({"a": [0, 0, 0], "b": [0.5, 0, 0]})
    stray = space.morphism_from_velocity("a", "b", [0.4, 0, 0])
    assert defect(stray) < 1e-15
    assert deviation(stray, space.hom("a", "b")) > 0.05


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_closure_under_composition(seed):
    rng = np.random.default_rng(seed)
    space = random_lorentz(rng, 4, vmax=0.95)
    a, b, c = rng.choice(space.ids, size=3)
    gf = compose(space.hom(b, c), space.hom(a, b))
    assert deviation(gf, space.hom(a, c)) < 1e-9
    assert defect(gf) < 1e-9
