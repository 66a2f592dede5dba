import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lorcat.errors import NonOrthochronousError, NotLorentzError, SuperluminalError
from lorcat.kinematics import (
    BoostDecomposition,
    boost_apply,
    boost_matrix,
    classical_add,
    decompose_lorentz,
    einstein_add,
    galilean_apply,
    galilean_matrix,
    gyration,
    interval,
    lorentz_factor,
    thomas_angle,
)
from lorcat.vecmat import Event, rotation_axis_angle, rotation_from_axis_angle

from conftest import ball, oracle_boost, oracle_rotation, oracle_sum

coord = st.floats(-0.57, 0.57, allow_nan=False)
velocity = st.tuples(coord, coord, coord).map(np.array)


def test_lorentz_factor_values():
    assert lorentz_factor([0.6, 0, 0]) == pytest.approx(1.25, abs=1e-15)
    assert lorentz_factor([0, 0.8, 0]) == pytest.approx(5 / 3, abs=1e-15)
    assert lorentz_factor([0, 0, 0]) == 1.0
    assert lorentz_factor([3.0, 0, 0], c=5.0) == pytest.approx(1.25, abs=1e-15)


def test_superluminal_rejected():
    for v in ([1, 0, 0], [0.6, 0.8, 0], [2, 0, 0]):
        with pytest.raises(SuperluminalError):
            boost_matrix(v)
    with pytest.raises(ValueError):
        boost_matrix([0.1, 0, 0], c=0.0)


def test_boost_of_unit_time_event():
    e = boost_apply([0.6, 0, 0], 1.0, Event(1.0, [0, 0, 0]))
    assert e.t == pytest.approx(1.25, abs=1e-15)
    assert e.x.tolist() == pytest.approx([-0.75, 0, 0], abs=1e-15)


def test_galilean_apply_and_matrix():
    e = Event(2.0, [1, 1, 1])
    out = galilean_apply([1, 0, -1], e)
    assert out.t == 2.0 and out.x.tolist() == [-1, 1, 3]
    assert np.array_equal(galilean_matrix([1, 0, -1]) @ e.as_array(), out.as_array())


def test_boost_matrix_matches_oracle(rng):
    for v in ball(rng, 0.99, 200):
        assert np.max(np.abs(boost_matrix(v) - oracle_boost(v))) < 1e-11


def test_boost_apply_matches_matrix(rng):
    for v in ball(rng, 0.9, 50):
        e = Event(*[rng.normal()], rng.normal(size=3))
        assert np.allclose(boost_apply(v, 1.0, e).as_array(), boost_matrix(v) @ e.as_array(), atol=1e-13)


def test_half_plus_half():
    w = einstein_add([0.5, 0, 0], [0.5, 0, 0])
    assert abs(w[0] - 0.8) < 1e-12
    assert w[1] == w[2] == 0


def test_einstein_matches_matrix_oracle(rng):
    for u, v in zip(ball(rng, 0.99, 300), ball(rng, 0.99, 300)):
        assert np.max(np.abs(einstein_add(u, v) - oracle_sum(u, v))) < 1e-10


def test_einstein_not_commutative_but_same_speed():
    u, v = np.array([0.5, 0, 0]), np.array([0, 0.5, 0])
    a, b = einstein_add(u, v), einstein_add(v, u)
    assert np.linalg.norm(a - b) > 0.05
    assert np.linalg.norm(a) == pytest.approx(np.linalg.norm(b), abs=1e-14)
    # the two sums differ by the gyration
    assert np.allclose(gyration(u, v) @ a, b, atol=1e-14)


def test_einstein_not_associative():
    u, v, w = np.array([0.5, 0, 0]), np.array([0, 0.5, 0]), np.array([0.5, 0, 0])
    left = einstein_add(einstein_add(u, v), w)
    right = einstein_add(u, einstein_add(v, w))
    assert np.linalg.norm(left - right) > 1e-3


def test_classical_add():
    assert classical_add([1, 2, 3], [1, 1, 1]).tolist() == [2, 3, 4]


def test_gyration_matches_oracle(rng):
    for u, v in zip(ball(rng, 0.95, 200), ball(rng, 0.95, 200)):
        assert np.max(np.abs(gyration(u, v) - oracle_rotation(u, v))) < 1e-9


def test_gyration_sign_for_perpendicular_boosts():
    # x-boost then y-boost from the composite's point of view: clockwise about z
    axis, angle = rotation_axis_angle(gyration([0.5, 0, 0], [0, 0.5, 0]))
    assert axis.tolist() == pytest.approx([0, 0, -1], abs=1e-15)
    assert angle == pytest.approx(0.14334756890536543, abs=1e-14)


def test_small_speed_thomas_angle_is_quadratic():
    betas = np.array([1e-3, 2e-3, 5e-3, 1e-2, 2e-2])
    angles = [thomas_angle([b, 0, 0], [0, b, 0]) for b in betas]
    slope = np.polyfit(betas**2, angles, 1)[0]
    assert slope == pytest.approx(0.5, abs=1e-3)


def test_collinear_gyration_is_identity():
    assert np.array_equal(gyration([0.3, 0, 0], [-0.9, 0, 0]), np.eye(3))


def test_interval_preserved(rng):
    for v in ball(rng, 0.99, 200):
        e = Event(rng.normal(), rng.normal(size=3))
        i0 = interval(e)
        i1 = interval(boost_apply(v, 1.0, e))
        assert abs(i1 - i0) <= 1e-9 * max(1.0, abs(i0), e.t**2 * lorentz_factor(v) ** 2)


def test_decompose_round_trip(rng):
    for v in ball(rng, 0.99, 100):
        r = rotation_from_axis_angle(rng.normal(size=3), rng.uniform(-3, 3))
        m = BoostDecomposition(r, v, 1.0).matrix()
        dec = decompose_lorentz(m)
        assert np.allclose(dec.velocity, v, atol=1e-12)
        assert np.allclose(dec.rotation, r, atol=1e-9)


def test_decompose_rejects():
    with pytest.raises(NotLorentzError):
        decompose_lorentz(np.diag([1.0, 2.0, 1.0, 1.0]))
    with pytest.raises(NonOrthochronousError):
        decompose_lorentz(np.diag([-1.0, 1.0, 1.0, 1.0]))
    with pytest.raises(NotLorentzError):
        decompose_lorentz(np.diag([1.0, -1.0, 1.0, 1.0]))


@settings(max_examples=300, deadline=None)
@given(velocity, velocity)
def test_decomposition_then_matches_product(u, v):
    f = BoostDecomposition(rotation_from_axis_angle([1, 2, 3], 0.4), v, 1.0)
    g = BoostDecomposition(np.eye(3), u, 1.0)
    gf = f.then(g)
    assert np.max(np.abs(gf.matrix() - g.matrix() @ f.matrix())) < 1e-10


@settings(max_examples=300, deadline=None)
@given(velocity)
def test_decomposition_inverse(v):
    f = BoostDecomposition(rotation_from_axis_angle([0, 1, 1], -1.1), v, 1.0)
    assert np.max(np.abs(f.inverse().matrix() @ f.matrix() - np.eye(4))) < 1e-12


@settings(max_examples=300, deadline=None)
@given(velocity, velocity)
def test_gyration_law(u, v):
    lhs = boost_matrix(u) @ boost_matrix(v)
    r = np.eye(4)
    r[1:, 1:] = gyration(u, v)
    # rounding grows with the entries, which scale like gamma^2
    assert np.max(np.abs(r @ boost_matrix(einstein_add(u, v)) - lhs)) < 1e-13 * np.max(np.abs(lhs)) ** 2


def test_extreme_speed_stays_finite():
    v = [0.999999, 0, 0]
    g = lorentz_factor(v)
    assert g == pytest.approx(1 / math.sqrt(1 - 0.999999**2), rel=1e-9)
    m = boost_matrix(v)
    assert np.all(np.isfinite(m))
    w = einstein_add([0, 0.999999, 0], v)
    assert np.linalg.norm(w) < 1.0


def test_opposite_boosts_near_c_compose_below_c():
    b = 0.999999
    g = lorentz_factor([b, 0, 0])
    f = BoostDecomposition(np.eye(3), np.array([-b, 0, 0]), 1.0)
    ff = f.then(f)
    # gamma of the composite is gamma^2 (1 + b^2), about 1e6
    assert ff.gamma == pytest.approx(g * g * (1 + b * b), rel=1e-12)
    assert np.linalg.norm(ff.velocity) < 1.0
    assert np.max(np.abs(ff.matrix() - boost_matrix([-b, 0, 0]) @ boost_matrix([-b, 0, 0]))) < 1e-15 * ff.gamma**2


def test_from_proper_rejects_rounding_to_c():
    with pytest.raises(SuperluminalError):
        BoostDecomposition.from_proper(np.eye(3), [1e12, 0, 0], 1.0)
