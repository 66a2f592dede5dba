"""Galilean and Lorentz boosts, velocity addition and the Thomas rotation.

Velocities are 3-vectors in length/time units. Every relativistic entry
point takes the light speed ``c`` explicitly and rejects ``|v| >= c``.

Composition convention: ``boost_matrix(u) @ boost_matrix(v)`` is "first
boost by ``v``, then by ``u``" and factors as::

    boost_matrix(u) @ boost_matrix(v)
        == embed_rotation(gyration(u, v)) @ boost_matrix(einstein_add(u, v))

i.e. the rotation sits on the left of the pure boost.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _config
from .errors import NonOrthochronousError, NotLorentzError, SuperluminalError
from .vecmat import (
    Event,
    embed_rotation,
    lorentz_defect,
    mat4,
    minkowski_metric,
    rotation_axis_angle,
    vec3,
    _rodrigues,
)

DEFAULT_C = 1.0


def check_c(c):
    c = float(c)
    if not (np.isfinite(c) and c > 0):
        raise ValueError(f"light speed must be positive and finite, got {c}")
    return c


def relativistic_velocity(v, c):
    """Validate ``|v| < c`` and return ``v`` as a frozen 3-vector."""
    v = vec3(v)
    c = check_c(c)
    beta = math.hypot(v[0], v[1], v[2]) / c
    if not beta < 1.0:
        raise SuperluminalError(f"|v| = {beta:.17g} c is not below c")
    return v


def lorentz_factor(v, c=DEFAULT_C):
    """``1 / sqrt(1 - |v|^2 / c^2)``."""
    v = relativistic_velocity(v, c)
    return _gamma(v, c)


def _gamma(v, c):
    beta = math.hypot(v[0], v[1], v[2]) / c
    # (1 - b)(1 + b) keeps relative precision as b -> 1
    return 1.0 / math.sqrt((1.0 - beta) * (1.0 + beta))


def _boost_coefficient(gamma, c):
    # (gamma - 1) / |v|^2 rewritten so that it stays finite at v = 0
    return gamma * gamma / (c * c * (gamma + 1.0))


def galilean_apply(v, e):
    """``(t, x) -> (t, x - v t)``."""
    v = vec3(v)
    return Event(e.t, e.x - v * e.t)


def boost_apply(v, c, e):
    """Pure Lorentz boost of the event ``e`` into a frame moving with ``v``."""
    v = relativistic_velocity(v, c)
    g = lorentz_factor(v, c)
    vx = float(np.dot(v, e.x))
    t = g * (e.t - vx / (c * c))
    x = e.x + _boost_coefficient(g, c) * vx * v - g * v * e.t
    return Event(t, x)


def galilean_matrix(v):
    v = vec3(v)
    m = np.eye(4)
    m[1:, 0] = -v
    return mat4(m)


def boost_matrix(v, c=DEFAULT_C):
    m = _boost_matrix(relativistic_velocity(v, c), c)
    m.setflags(write=False)
    return m


def _boost_matrix(v, c):
    return _boost_matrix_p(_gamma(v, c) * v, c)


def _proper_gamma(p, c):
    return math.sqrt(1.0 + (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]) / (c * c))


def _boost_matrix_p(p, c):
    # in terms of the proper velocity p = gamma v, which fixes gamma exactly
    g = _proper_gamma(p, c)
    m = np.empty((4, 4))
    m[0, 0] = g
    m[0, 1:] = -p / (c * c)
    m[1:, 0] = -p
    m[1:, 1:] = np.eye(3) + np.outer(p, p) / (c * c * (g + 1.0))
    return m


def classical_add(u, v):
    return vec3(np.asarray(u, dtype=float) + np.asarray(v, dtype=float))


def einstein_add(u, v, c=DEFAULT_C):
    """Relativistic velocity of the composite ``boost(u) o boost(v)``.

    Not commutative: ``einstein_add(u, v)`` and ``einstein_add(v, u)`` have
    the same magnitude but differ by the Thomas rotation.
    """
    u = relativistic_velocity(u, c)
    v = relativistic_velocity(v, c)
    return relativistic_velocity(_einstein_add(u, v, c), c)


def _einstein_add(u, v, c):
    p = _proper_add(_gamma(u, c) * u, _gamma(v, c) * v, c)
    return p / _proper_gamma(p, c)


def _proper_add(pu, pv, c):
    # proper velocity of boost(u) o boost(v); unlike the velocity form there
    # is no division by 1 + <u, v>/c^2, which cancels for opposite inputs
    gu, gv = _proper_gamma(pu, c), _proper_gamma(pv, c)
    uv = pu[0] * pv[0] + pu[1] * pv[1] + pu[2] * pv[2]
    return pu + (gu + uv / (c * c * (1.0 + gv))) * pv


def gyration(u, v, c=DEFAULT_C):
    """Thomas rotation ``R`` with ``B(u) B(v) = R B(einstein_add(u, v))``.

    Closed form: the rotation is about ``v x u`` by ``eps`` with
    ``tan(eps / 2) = a_u a_v |u x v| / (1 + a_u a_v <u, v>)`` and
    ``a = gamma / (c (gamma + 1))``.
    """
    u = relativistic_velocity(u, c)
    v = relativistic_velocity(v, c)
    return _gyration(u, v, c)


def _gyration(u, v, c):
    return _gyration_p(_gamma(u, c) * u, _gamma(v, c) * v, c)


def _gyration_p(pu, pv, c):
    gu, gv = _proper_gamma(pu, c), _proper_gamma(pv, c)
    k = 1.0 / (c * c * (gu + 1.0) * (gv + 1.0))
    axis = np.array([
        pv[1] * pu[2] - pv[2] * pu[1],
        pv[2] * pu[0] - pv[0] * pu[2],
        pv[0] * pu[1] - pv[1] * pu[0],
    ])
    s = math.hypot(axis[0], axis[1], axis[2])
    if s == 0.0:
        r = np.eye(3)
        r.setflags(write=False)
        return r
    uv = pu[0] * pv[0] + pu[1] * pv[1] + pu[2] * pv[2]
    eps = 2.0 * math.atan2(k * s, 1.0 + k * uv)
    return _rodrigues(axis / s, eps)


def thomas_angle(u, v, c=DEFAULT_C):
    """Unsigned angle of :func:`gyration` in radians."""
    return rotation_axis_angle(gyration(u, v, c))[1]


def interval(e, c=DEFAULT_C):
    """``c^2 t^2 - |x|^2``."""
    return float(c * c * e.t * e.t - np.dot(e.x, e.x))


@dataclass(frozen=True, eq=False)
class BoostDecomposition:
    """A proper orthochronous Lorentz transform split as ``rotation o boost(velocity)``.

    ``proper`` is the proper velocity ``gamma * velocity``. Compositions
    carry it along so that gamma never has to be recovered from a speed
    close to ``c``, where ``1 - |v| / c`` has lost most of its digits.
    """

    rotation: np.ndarray
    velocity: np.ndarray
    c: float = DEFAULT_C
    proper: np.ndarray = None

    def __post_init__(self):
        if self.proper is None:
            object.__setattr__(self, "proper", _gamma(self.velocity, self.c) * np.asarray(self.velocity))

    @classmethod
    def from_proper(cls, rotation, proper, c=DEFAULT_C):
        proper = np.asarray(proper, dtype=float)
        velocity = proper / _proper_gamma(proper, c)
        if not math.hypot(velocity[0], velocity[1], velocity[2]) < c:
            raise SuperluminalError("speed rounds to c at this precision")
        return cls(rotation, velocity, c, proper)

    @property
    def gamma(self):
        return _proper_gamma(self.proper, self.c)

    def matrix(self):
        m = _boost_matrix_p(self.proper, self.c)
        m[1:, :] = self.rotation @ m[1:, :]
        m.setflags(write=False)
        return m

    def inverse(self):
        # (R B(w))^-1 = B(-w) R^T = R^T B(-R w)
        return BoostDecomposition(
            self.rotation.T, -(self.rotation @ self.velocity), self.c, -(self.rotation @ self.proper)
        )

    def then(self, other):
        """Decomposition of ``other o self`` (apply ``self`` first)."""
        # R_g B(w_g) R_f B(w_f) = R_g R_f B(R_f^T w_g) B(w_f)
        rf, pf = self.rotation, self.proper
        rg, pg = other.rotation, other.proper
        pulled = rf.T @ pg
        rot = rg @ rf @ _gyration_p(pulled, pf, self.c)
        return BoostDecomposition.from_proper(rot, _proper_add(pulled, pf, self.c), self.c)

    @property
    def angle(self):
        return rotation_axis_angle(self.rotation)[1]


def decompose_lorentz(m, c=DEFAULT_C, tol=None):
    """Split a proper orthochronous Lorentz matrix into rotation and boost.

    The velocity is read from the top row, which left multiplication by a
    spatial rotation leaves untouched; the rotation is what remains after
    undoing that boost.
    """
    tol = _config.resolve(tol)
    c = check_c(c)
    m = np.asarray(m, dtype=float)
    scale = max(1.0, float(np.max(np.abs(m))) ** 2)
    defect = lorentz_defect(m, c)
    if not defect < tol * scale:
        raise NotLorentzError(f"matrix does not preserve the Minkowski form (defect {defect:.3e})")
    if not m[0, 0] > 0:
        raise NonOrthochronousError(f"time-time entry {m[0, 0]:.6g} is not positive")
    # top row is (gamma, -p / c^2) whatever rotation sits on the left
    p = -c * c * m[0, 1:]
    undo = _boost_matrix_p(-p, c)
    rot = (m @ undo)[1:, 1:].copy()
    if np.linalg.det(rot) < 0.0:
        raise NotLorentzError("matrix contains a spatial reflection; only proper transforms decompose")
    rot.setflags(write=False)
    return BoostDecomposition.from_proper(rot, p, c)


__all__ = [
    "BoostDecomposition",
    "DEFAULT_C",
    "boost_apply",
    "boost_matrix",
    "check_c",
    "classical_add",
    "decompose_lorentz",
    "einstein_add",
    "galilean_apply",
    "galilean_matrix",
    "gyration",
    "interval",
    "lorentz_factor",
    "minkowski_metric",
    "relativistic_velocity",
    "thomas_angle",
]
