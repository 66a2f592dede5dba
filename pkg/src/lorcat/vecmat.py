"""Small fixed-size linear algebra for spacetime kinematics.

Conventions used everywhere in the package:

* 4-vectors and 4x4 matrices are ordered ``(t, x, y, z)``.
* The Minkowski form is ``eta = diag(c**2, -1, -1, -1)`` so that the
  interval of a displacement ``(t, x)`` is ``c**2 t**2 - |x|**2``.
* Row 0 of a 4x4 transform is the time row, column 0 the time column and
  the lower-right 3x3 block acts on spatial displacements.

Vectors and matrices are plain read-only ``numpy`` float arrays.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _config
from .errors import SingularMatrixError, ZeroAxisError

IDENTITY3 = np.eye(3)
IDENTITY4 = np.eye(4)
IDENTITY3.setflags(write=False)
IDENTITY4.setflags(write=False)


def _frozen(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


def vec3(v):
    """Validate and freeze a 3-vector."""
    a = np.array(v, dtype=float).reshape(-1)
    if a.shape != (3,):
        raise ValueError(f"expected 3 components, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"non-finite vector component in {a}")
    a.setflags(write=False)
    return a


def mat3(m):
    a = np.array(m, dtype=float)
    if a.shape != (3, 3):
        raise ValueError(f"expected 3x3 matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("non-finite matrix entry")
    a.setflags(write=False)
    return a


def mat4(m):
    a = np.array(m, dtype=float)
    if a.shape != (4, 4):
        raise ValueError(f"expected 4x4 matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("non-finite matrix entry")
    a.setflags(write=False)
    return a


def dot(a, b):
    return float(np.dot(a, b))


def norm(a):
    return float(np.linalg.norm(a))


def cross(a, b):
    return _frozen(np.cross(a, b))


def inf_norm(m):
    """Largest absolute entry; the deviation metric for vectors and matrices."""
    m = np.asarray(m, dtype=float)
    return float(np.max(np.abs(m))) if m.size else 0.0


def mat4_mul(a, b):
    return _frozen(np.asarray(a, dtype=float) @ np.asarray(b, dtype=float))


def mat4_invert(m, tol=None):
    """Inverse of a 4x4 matrix.

    Raises :class:`SingularMatrixError` when ``|det(m)| <= tol``.
    """
    tol = _config.resolve(tol)
    m = np.asarray(m, dtype=float)
    det = np.linalg.det(m)
    if not abs(det) > tol:
        raise SingularMatrixError(f"matrix is singular (det={det:.3e})")
    return _frozen(np.linalg.inv(m))


def minkowski_metric(c):
    return _frozen(np.diag([c * c, -1.0, -1.0, -1.0]))


def lorentz_defect(m, c):
    """``||m^T eta m - eta||_inf``; zero for an exact Lorentz transform."""
    m = np.asarray(m, dtype=float)
    eta = minkowski_metric(c)
    return inf_norm(m.T @ eta @ m - eta)


def is_lorentz(m, c, tol=None):
    return lorentz_defect(m, c) < _config.resolve(tol)


def lorentz_inverse(m, c):
    """Inverse of a Lorentz matrix via ``eta^-1 m^T eta``.

    Exact up to the ``c**2`` scalings, so it stays accurate for large boost
    factors where a general inverse loses digits. Only meaningful when ``m``
    preserves ``eta``.
    """
    m = np.asarray(m, dtype=float)
    out = m.T.copy()
    out[0, 1:] /= c * c
    out[1:, 0] *= c * c
    # eta^-1 m^T eta flips signs on the mixed blocks
    out[0, 1:] *= -1.0
    out[1:, 0] *= -1.0
    out.setflags(write=False)
    return out


def rotation_from_axis_angle(axis, angle, tol=None):
    """Proper rotation by ``angle`` (right-hand rule) about ``axis`` (Rodrigues)."""
    axis = np.asarray(axis, dtype=float)
    n = np.linalg.norm(axis)
    if not n > _config.resolve(tol):
        raise ZeroAxisError(f"rotation axis too short: |axis| = {n:.3e}")
    return _rodrigues(axis / n, angle)


def _rodrigues(unit_axis, angle):
    x, y, z = unit_axis
    k = np.array([[0.0, -z, y], [z, 0.0, -x], [-y, x, 0.0]])
    # 2 sin^2(a/2) instead of 1 - cos(a): no cancellation for small angles
    r = np.eye(3) + math.sin(angle) * k + (2.0 * math.sin(angle / 2.0) ** 2) * (k @ k)
    r.setflags(write=False)
    return r


def rotation_defect(r):
    """Worst of orthonormality ``||R^T R - I||_inf`` and ``|det R - 1|``."""
    r = np.asarray(r, dtype=float)
    return max(inf_norm(r.T @ r - np.eye(3)), abs(np.linalg.det(r) - 1.0))


def is_rotation(r, tol=None):
    return rotation_defect(r) < _config.resolve(tol)


def rotation_axis_angle(r):
    """Return ``(unit_axis, angle)`` with ``angle`` in ``[0, pi]``.

    The axis is arbitrary (``e_z``) for the identity.
    """
    r = np.asarray(r, dtype=float)
    w = np.array([r[2, 1] - r[1, 2], r[0, 2] - r[2, 0], r[1, 0] - r[0, 1]])
    s = np.linalg.norm(w)
    angle = float(np.arctan2(s / 2.0, (np.trace(r) - 1.0) / 2.0))
    cos = (np.trace(r) - 1.0) / 2.0
    if cos >= 0.0:
        if s > 1e-300:
            return w / s, angle
        return np.array([0.0, 0.0, 1.0]), 0.0
    # obtuse: w carries little signal, so read the axis off the symmetric
    # part (1 - cos) n n^T and take only its sign from w
    b = (r + r.T) / 2.0 - cos * np.eye(3)
    i = int(np.argmax(np.diag(b)))
    axis = b[:, i] / np.linalg.norm(b[:, i])
    if axis @ w < 0.0:
        axis = -axis
    return axis, angle


def rotation_angle(r):
    return rotation_axis_angle(r)[1]


def embed_rotation(r):
    """Rotation as a 4x4 spacetime transform with trivial time row and column."""
    m = np.eye(4)
    m[1:, 1:] = r
    m.setflags(write=False)
    return m


def spatial_block(m):
    return _frozen(np.asarray(m, dtype=float)[1:, 1:])


@dataclass(frozen=True, eq=False)
class Event:
    """A spacetime displacement: time difference ``t`` and spatial difference ``x``."""

    t: float
    x: np.ndarray

    def __post_init__(self):
        t = float(self.t)
        if not np.isfinite(t):
            raise ValueError(f"non-finite time component {self.t}")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "x", vec3(self.x))

    @classmethod
    def from_array(cls, a):
        a = np.asarray(a, dtype=float).reshape(-1)
        if a.shape != (4,):
            raise ValueError(f"expected 4 components (t, x, y, z), got {a.shape}")
        return cls(a[0], a[1:])

    def as_array(self):
        return np.concatenate(([self.t], self.x))

    def __add__(self, other):
        return Event(self.t + other.t, self.x + other.x)

    def __sub__(self, other):
        return Event(self.t - other.t, self.x - other.x)

    def __mul__(self, k):
        return Event(k * self.t, k * self.x)

    __rmul__ = __mul__

    def __repr__(self):
        return f"Event(t={self.t!r}, x={self.x.tolist()!r})"


def apply(m, e):
    """Apply a 4x4 transform to an :class:`Event`."""
    return Event.from_array(np.asarray(m, dtype=float) @ e.as_array())
