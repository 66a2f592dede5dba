"""Frame spaces: the categories Gal and Lor over a finite set of inertial frames.

Each frame is anchored by the transform from a distinguished anchor frame,
so the unique morphism between any two frames is forced::

    hom(a, b) = L_b @ L_a^-1

Every frame keeps its anchor transform twice: as kinematic data
(velocity, plus a rotation in the relativistic regime) and as a stored 4x4
matrix. Morphisms carry both routes as well, the matrix product and the
closed-form composition of velocities and Thomas rotations. The axiom and
limit checkers compare the two, which is what lets a corrupted anchor show
up as a located residual.
"""

import itertools
from dataclasses import dataclass, field, replace

import numpy as np

from . import _config
from .errors import NotComposableError, SuperluminalError, UnknownFrameError
from .kinematics import (
    BoostDecomposition,
    check_c,
    galilean_matrix,
    relativistic_velocity,
)
from .vecmat import (
    IDENTITY3,
    IDENTITY4,
    inf_norm,
    is_rotation,
    lorentz_defect,
    lorentz_inverse,
    mat3,
    mat4,
    mat4_invert,
    rotation_defect,
    vec3,
)

GALILEAN = "galilean"
LORENTZ = "lorentz"
REGIMES = (GALILEAN, LORENTZ)


@dataclass(frozen=True, eq=False)
class Frame:
    """An inertial frame and its transform from the anchor frame."""

    id: str
    velocity: np.ndarray
    rotation: np.ndarray = IDENTITY3
    matrix: np.ndarray = None

    def kinematic_matrix(self, regime, c):
        if regime == GALILEAN:
            return galilean_matrix(self.velocity)
        return BoostDecomposition(self.rotation, self.velocity, c).matrix()

    def decomposition(self, c):
        return BoostDecomposition(self.rotation, self.velocity, c)


@dataclass(frozen=True, eq=False)
class GalMorphism:
    source: str
    target: str
    velocity: np.ndarray
    matrix: np.ndarray
    regime = GALILEAN

    def kinematic_matrix(self):
        return galilean_matrix(self.velocity)

    def __repr__(self):
        return f"GalMorphism({self.source!r} -> {self.target!r}, v={self.velocity.tolist()})"


@dataclass(frozen=True, eq=False)
class LorMorphism:
    source: str
    target: str
    matrix: np.ndarray
    decomposition: BoostDecomposition
    regime = LORENTZ

    @property
    def velocity(self):
        return self.decomposition.velocity

    @property
    def rotation(self):
        return self.decomposition.rotation

    def kinematic_matrix(self):
        return self.decomposition.matrix()

    def __repr__(self):
        return (
            f"LorMorphism({self.source!r} -> {self.target!r}, "
            f"v={self.velocity.tolist()}, angle={self.decomposition.angle:.6g})"
        )


def defect(f):
    """Disagreement between a morphism's matrix and its kinematic data."""
    return inf_norm(f.matrix - f.kinematic_matrix())


def deviation(f, g):
    """``||f.matrix - g.matrix||_inf``; the single metric for both categories."""
    return inf_norm(np.asarray(f.matrix) - np.asarray(g.matrix))


class FrameSpace:
    """An immutable collection of inertial frames in one regime.

    ``frames`` maps ids to anchor velocities (and, for ``lorentz``, optional
    rotations). The anchor defaults to the first frame and must be at rest
    with no rotation.

    >>> space = FrameSpace.lorentz({"lab": [0, 0, 0], "ship": [0.6, 0, 0]})
    >>> space.hom("lab", "ship").velocity.tolist()
    [0.6, 0.0, 0.0]
    """

    def __init__(self, regime, frames, anchor=None, c=1.0, tol=None):
        if regime not in REGIMES:
            raise ValueError(f"regime must be one of {REGIMES}, got {regime!r}")
        self.regime = regime
        self.c = check_c(c)
        tol = _config.resolve(tol)
        frames = list(frames)
        if not frames:
            raise ValueError("a frame space needs at least one frame")
        by_id = {}
        for fr in frames:
            if fr.id in by_id:
                raise ValueError(f"duplicate frame id {fr.id!r}")
            by_id[fr.id] = self._validated(fr, tol)
        self._frames = by_id
        self._homs = {}
        self.anchor = frames[0].id if anchor is None else anchor
        if self.anchor not in by_id:
            raise UnknownFrameError(self.anchor)
        a = by_id[self.anchor]
        if np.any(a.velocity != 0.0) or inf_norm(a.rotation - IDENTITY3) > tol:
            raise ValueError(f"anchor frame {self.anchor!r} must be at rest with identity rotation")

    def _validated(self, fr, tol):
        if self.regime == LORENTZ:
            try:
                v = relativistic_velocity(fr.velocity, self.c)
            except SuperluminalError as exc:
                raise SuperluminalError(f"frame {fr.id!r}: {exc}") from None
            r = mat3(fr.rotation)
            if not is_rotation(r, tol):
                raise ValueError(f"frame {fr.id!r}: rotation is not proper orthonormal")
        else:
            v = vec3(fr.velocity)
            r = mat3(fr.rotation)
            if inf_norm(r - IDENTITY3) > 0:
                raise ValueError(f"frame {fr.id!r}: Galilean frames carry no rotation")
        stored = fr.matrix
        fr = Frame(str(fr.id), v, r, None)
        m = fr.kinematic_matrix(self.regime, self.c) if stored is None else mat4(stored)
        return replace(fr, matrix=m)

    @classmethod
    def galilean(cls, velocities, anchor=None):
        frames = [Frame(k, v) for k, v in velocities.items()]
        return cls(GALILEAN, frames, anchor=anchor)

    @classmethod
    def lorentz(cls, velocities, c=1.0, rotations=None, anchor=None):
        rotations = rotations or {}
        frames = [Frame(k, v, rotations.get(k, IDENTITY3)) for k, v in velocities.items()]
        return cls(LORENTZ, frames, anchor=anchor, c=c)

    @property
    def ids(self):
        return list(self._frames)

    def __len__(self):
        return len(self._frames)

    def __contains__(self, frame_id):
        return frame_id in self._frames

    def __getitem__(self, frame_id):
        try:
            return self._frames[frame_id]
        except KeyError:
            raise UnknownFrameError(frame_id) from None

    def __repr__(self):
        return f"FrameSpace({self.regime!r}, ids={self.ids!r}, c={self.c})"

    def with_anchor_matrix(self, frame_id, matrix):
        """Copy of this space with one stored anchor matrix replaced.

        The kinematic data is left alone, so the two routes disagree by
        exactly the change made. Used for fault injection.
        """
        new = object.__new__(FrameSpace)
        new.__dict__.update(self.__dict__)
        new._frames = dict(self._frames)
        new._homs = {}
        new._frames[frame_id] = replace(self[frame_id], matrix=mat4(matrix))
        return new

    def perturb_anchor(self, frame_id, delta, entry=(1, 0)):
        m = np.array(self[frame_id].matrix)
        m[entry] += delta
        return self.with_anchor_matrix(frame_id, m)

    def _invert_anchor(self, m):
        if self.regime == LORENTZ:
            return lorentz_inverse(m, self.c)
        return mat4_invert(m)

    def identity(self, a):
        self[a]
        if self.regime == GALILEAN:
            return GalMorphism(a, a, vec3([0, 0, 0]), IDENTITY4)
        dec = BoostDecomposition(IDENTITY3, vec3([0, 0, 0]), self.c)
        return LorMorphism(a, a, IDENTITY4, dec)

    def hom(self, a, b):
        """The unique morphism ``a -> b``."""
        try:
            return self._homs[a, b]
        except KeyError:
            pass
        f = self._homs[a, b] = self._hom(a, b)
        return f

    def _hom(self, a, b):
        fa, fb = self[a], self[b]
        if a == b:
            return self.identity(a)
        m = mat4(fb.matrix @ self._invert_anchor(fa.matrix))
        if self.regime == GALILEAN:
            return GalMorphism(a, b, vec3(fb.velocity - fa.velocity), m)
        dec = fa.decomposition(self.c).inverse().then(fb.decomposition(self.c))
        return LorMorphism(a, b, m, dec)

    def morphism_from_velocity(self, a, b, velocity, rotation=IDENTITY3):
        """A kinematically consistent morphism ``a -> b`` that need not be ``hom(a, b)``."""
        self[a], self[b]
        if self.regime == GALILEAN:
            v = vec3(velocity)
            return GalMorphism(a, b, v, galilean_matrix(v))
        dec = BoostDecomposition(mat3(rotation), relativistic_velocity(velocity, self.c), self.c)
        return LorMorphism(a, b, dec.matrix(), dec)


def hom(space, a, b):
    return space.hom(a, b)


def compose(g, f):
    """``g o f``: apply ``f`` first."""
    if f.target != g.source:
        raise NotComposableError(f"cannot compose {g!r} after {f!r}")
    if f.regime != g.regime:
        raise NotComposableError("morphisms belong to different categories")
    m = mat4(g.matrix @ f.matrix)
    if f.regime == GALILEAN:
        return GalMorphism(f.source, g.target, vec3(g.velocity + f.velocity), m)
    if f.decomposition.c != g.decomposition.c:
        raise NotComposableError("morphisms use different light speeds")
    return LorMorphism(f.source, g.target, m, f.decomposition.then(g.decomposition))


def inverse(f):
    m = mat4_invert(f.matrix)
    if f.regime == GALILEAN:
        return GalMorphism(f.target, f.source, vec3(-f.velocity), m)
    return LorMorphism(f.target, f.source, m, f.decomposition.inverse())


@dataclass
class LawResult:
    name: str
    residual: float = 0.0
    where: tuple = ()

    def update(self, residual, where):
        if residual > self.residual or not np.isfinite(residual):
            self.residual = residual
            self.where = where


@dataclass
class AxiomReport:
    tol: float
    laws: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(r.residual < self.tol for r in self.laws.values())

    @property
    def worst(self):
        return max(self.laws.values(), key=lambda r: r.residual)

    def failures(self):
        return [r for r in self.laws.values() if not r.residual < self.tol]


def check_frames(space):
    """Per-frame consistency: anchor is the identity, stored matrix matches kinematics."""
    res = LawResult("frames")
    res.update(inf_norm(space[space.anchor].matrix - IDENTITY4), (space.anchor,))
    for fid in space.ids:
        fr = space[fid]
        res.update(inf_norm(fr.matrix - fr.kinematic_matrix(space.regime, space.c)), (fid,))
        if space.regime == LORENTZ:
            res.update(lorentz_defect(fr.matrix, space.c), (fid,))
            res.update(rotation_defect(fr.rotation), (fid,))
    return res


def check_category_axioms(space, samples=1000, seed=0, tol=None):
    """Sample frame quadruples and measure every category law.

    Laws: frame consistency, identity, associativity, closure of composition
    under the singleton homs, inverses, and matrix/kinematics coherence of
    every morphism touched.
    """
    tol = _config.resolve(tol)
    report = AxiomReport(tol)
    laws = {n: LawResult(n) for n in ("identity", "associativity", "closure", "inverse", "coherence")}
    report.laws["frames"] = check_frames(space)
    report.laws.update(laws)
    ids = space.ids
    rng = np.random.default_rng(seed)
    if len(ids) ** 4 <= samples:
        quads = itertools.product(ids, repeat=4)
    else:
        picks = rng.integers(0, len(ids), size=(samples, 4))
        quads = ([ids[i] for i in row] for row in picks)
    for a, b, c, d in quads:
        f, g, h = space.hom(a, b), space.hom(b, c), space.hom(c, d)
        where = (a, b, c, d)
        for m in (f, g, h):
            laws["coherence"].update(defect(m), (m.source, m.target))
        laws["identity"].update(deviation(compose(space.identity(b), f), f), (a, b))
        laws["identity"].update(deviation(compose(f, space.identity(a)), f), (a, b))
        gf = compose(g, f)
        laws["associativity"].update(deviation(compose(h, gf), compose(compose(h, g), f)), where)
        laws["closure"].update(deviation(gf, space.hom(a, c)), (a, b, c))
        laws["coherence"].update(defect(gf), (a, b, c))
        laws["inverse"].update(deviation(compose(inverse(f), f), space.identity(a)), (a, b))
    return report
