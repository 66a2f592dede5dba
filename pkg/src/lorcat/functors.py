"""The limit functor L: Lor -> Gal, its left adjoint M, and c -> infinity scans.

Both categories are indiscrete over the same frame ids, so a functor is an
object map plus the forced choice of the unique morphism between images.
``L`` keeps ids and boost velocities and drops anchor rotations; ``M`` embeds
a classical space at a chosen ``c`` with identity rotations.
"""

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import _config
from .diagrams import Diagram, survey_limits
from .errors import EmbeddingError, UnknownFrameError
from .frames import GALILEAN, LORENTZ, Frame, FrameSpace, compose, defect, deviation
from .kinematics import (
    boost_apply,
    check_c,
    einstein_add,
    galilean_apply,
    gyration,
    relativistic_velocity,
)
from .vecmat import IDENTITY3, Event, inf_norm, vec3

L_DIRECTION = "L"
M_DIRECTION = "M"

SLOPE_WINDOW = (-2.2, -1.8)
NOISE_FLOOR = 1e2 * np.finfo(float).eps


@dataclass
class FunctorMap:
    """A functor between a Lorentz space and a Galilean space on the same ids."""

    direction: str
    source: FrameSpace
    target: FrameSpace

    def __post_init__(self):
        if set(self.source.ids) != set(self.target.ids):
            raise ValueError("paired spaces must share their frame ids")
        want = (LORENTZ, GALILEAN) if self.direction == L_DIRECTION else (GALILEAN, LORENTZ)
        if (self.source.regime, self.target.regime) != want:
            raise ValueError(f"functor {self.direction} maps {want[0]} -> {want[1]}")

    def on_object(self, frame_id):
        self.source[frame_id]
        return frame_id

    def on_morphism(self, f):
        """The unique target morphism between the images of ``f``'s endpoints."""
        return self.target.hom(self.on_object(f.source), self.on_object(f.target))


def pair_spaces(lor_space):
    """Classical shadow of a relativistic space: same ids, boost velocities kept."""
    if lor_space.regime != LORENTZ:
        raise ValueError("pair_spaces expects a lorentz frame space")
    frames = [Frame(fid, lor_space[fid].velocity) for fid in lor_space.ids]
    return FrameSpace(GALILEAN, frames, anchor=lor_space.anchor)


def limit_functor(lor_space, gal_space=None):
    return FunctorMap(L_DIRECTION, lor_space, gal_space or pair_spaces(lor_space))


def L_on_morphism(f, paired):
    """Image of a Lorentz morphism under the limit functor."""
    if f.source not in paired or f.target not in paired:
        missing = f.source if f.source not in paired else f.target
        raise UnknownFrameError(missing)
    return paired.hom(f.source, f.target)


def M_functor(gal_space, c):
    """Embed a classical space as a relativistic one at light speed ``c``."""
    c = check_c(c)
    frames = []
    for fid in gal_space.ids:
        v = gal_space[fid].velocity
        if not np.linalg.norm(v) < c:
            raise EmbeddingError(f"frame {fid!r} moves at {np.linalg.norm(v):.6g} >= c = {c:g}")
        frames.append(Frame(fid, v, IDENTITY3))
    lor = FrameSpace(LORENTZ, frames, anchor=gal_space.anchor, c=c)
    return FunctorMap(M_DIRECTION, gal_space, lor)


@dataclass
class FunctorReport:
    tol: float
    structural_failures: list = field(default_factory=list)
    identity_residual: float = 0.0
    composition_residual: float = 0.0
    hom_cardinalities: dict = field(default_factory=dict)

    @property
    def structural_residual(self):
        """0 when every image morphism has the right endpoints, else infinity.

        This is the residual of the laws themselves: in an indiscrete
        category a morphism is determined by its endpoints.
        """
        return 0.0 if not self.structural_failures else math.inf

    @property
    def full_and_faithful(self):
        return all(n == (1, 1) for n in self.hom_cardinalities.values())

    @property
    def passed(self):
        return (
            not self.structural_failures
            and self.full_and_faithful
            and self.identity_residual < self.tol
            and self.composition_residual < self.tol
        )


def _hom_set(space, a, b):
    # indiscrete: exactly the one forced morphism
    return [space.hom(a, b)]


def check_functor_laws(F, samples=1000, seed=0, tol=None):
    """Identity and composition preservation plus the full/faithful hom check.

    Equality of morphisms in an indiscrete category is equality of
    endpoints; that structural comparison must be exact. The numerical
    residuals compare the matrix representations on top.
    """
    tol = _config.resolve(tol)
    rep = FunctorReport(tol)
    src, tgt = F.source, F.target
    for a in src.ids:
        fid = F.on_morphism(src.identity(a))
        if (fid.source, fid.target) != (F.on_object(a), F.on_object(a)):
            rep.structural_failures.append(("identity", a))
        rep.identity_residual = max(rep.identity_residual, deviation(fid, tgt.identity(F.on_object(a))))
    for a, b in itertools.product(src.ids, repeat=2):
        rep.hom_cardinalities[a, b] = (len(_hom_set(src, a, b)), len(_hom_set(tgt, F.on_object(a), F.on_object(b))))
    ids = src.ids
    rng = np.random.default_rng(seed)
    for i, j, k in rng.integers(0, len(ids), size=(samples, 3)):
        a, b, c = ids[i], ids[j], ids[k]
        f, g = src.hom(a, b), src.hom(b, c)
        lhs = F.on_morphism(compose(g, f))
        rhs = compose(F.on_morphism(g), F.on_morphism(f))
        if (lhs.source, lhs.target) != (rhs.source, rhs.target):
            rep.structural_failures.append(("composition", a, b, c))
        rep.composition_residual = max(rep.composition_residual, deviation(lhs, rhs))
    return rep


def check_limit_preservation(F, diagram, tol=None):
    """Every limit vertex in the source maps to a limit of the image diagram.

    Returns ``(preserved, detail)`` where ``detail`` maps each source limit
    vertex to the image :class:`~lorcat.diagrams.LimitReport`.
    """
    src_reports = survey_limits(F.source, diagram, tol)
    image = Diagram(diagram.index, F.target, {o: F.on_object(f) for o, f in diagram.object_map.items()})
    tgt_reports = survey_limits(F.target, image, tol)
    detail = {v: tgt_reports[F.on_object(v)] for v, r in src_reports.items() if r.is_limit}
    return all(r.is_limit for r in detail.values()), detail


@dataclass
class AdjunctionReport:
    tol: float
    bijection_failures: list = field(default_factory=list)
    naturality_residual: float = 0.0
    unit_residual: float = 0.0
    counit_residual: float = 0.0
    triangle_residual: float = 0.0
    comma_residual: float = 0.0
    comma_checked: int = 0

    @property
    def passed(self):
        return not self.bijection_failures and max(
            self.naturality_residual,
            self.unit_residual,
            self.counit_residual,
            self.triangle_residual,
            self.comma_residual,
        ) < self.tol


def check_adjunction(M, L, samples=200, seed=0, tol=None):
    """Verify ``M -| L`` on sampled objects.

    ``M`` maps Gal -> Lor and ``L`` maps Lor -> Gal over the same ids. The
    hom bijection ``Lor(M A, B) ~ Gal(A, L B)`` sends ``g`` to
    ``L(g) o unit_A``; both sides are singletons. Naturality squares,
    triangle identities and initiality in sampled comma categories
    ``(A => L)`` are measured numerically.
    """
    tol = _config.resolve(tol)
    gal, lor = M.source, L.source
    if M.target is not lor and set(M.target.ids) != set(lor.ids):
        raise ValueError("M must land in the source category of L")
    rep = AdjunctionReport(tol)
    ids = gal.ids

    def unit(a):
        return gal.hom(a, L.on_object(M.on_object(a)))

    def counit(b):
        return lor.hom(M.on_object(L.on_object(b)), b)

    def phi(g, a):
        return compose(L.on_morphism(g), unit(a))

    for a in ids:
        rep.unit_residual = max(rep.unit_residual, deviation(unit(a), gal.identity(a)), defect(unit(a)))
    for b in lor.ids:
        rep.counit_residual = max(rep.counit_residual, deviation(counit(b), lor.identity(b)), defect(counit(b)))
    for a, b in itertools.product(ids, lor.ids):
        left = [lor.hom(M.on_object(a), b)]
        right = [gal.hom(a, L.on_object(b))]
        if len(left) != 1 or len(right) != 1:
            rep.bijection_failures.append((a, b))
            continue
        image = phi(left[0], a)
        if (image.source, image.target) != (right[0].source, right[0].target):
            rep.bijection_failures.append((a, b))
        rep.naturality_residual = max(rep.naturality_residual, deviation(image, right[0]))

    rng = np.random.default_rng(seed)
    for i, j, k, m in rng.integers(0, len(ids), size=(samples, 4)):
        # h: A' -> A in Gal, g: M A -> B and k: B -> B' in Lor
        a2, a, b, b2 = ids[i], ids[j], ids[k], ids[m]
        h = gal.hom(a2, a)
        g = lor.hom(M.on_object(a), b)
        kk = lor.hom(b, b2)
        lhs = phi(compose(kk, compose(g, M.on_morphism(h))), a2)
        rhs = compose(L.on_morphism(kk), compose(phi(g, a), h))
        rep.naturality_residual = max(rep.naturality_residual, deviation(lhs, rhs))
        # triangle identities
        t1 = compose(L.on_morphism(counit(b)), unit(L.on_object(b)))
        t2 = compose(counit(M.on_object(a)), M.on_morphism(unit(a)))
        rep.triangle_residual = max(
            rep.triangle_residual,
            deviation(t1, gal.identity(L.on_object(b))),
            deviation(t2, lor.identity(M.on_object(a))),
        )

    # comma categories (A => L) on at most four objects
    for a in ids:
        picks = rng.choice(len(lor.ids), size=min(4, len(lor.ids)), replace=False)
        objs = [(lor.ids[p], gal.hom(a, L.on_object(lor.ids[p]))) for p in picks]
        for (b, gb), (b2, gb2) in itertools.product(objs, repeat=2):
            lam = lor.hom(b, b2)
            tri = compose(L.on_morphism(lam), gb)
            rep.comma_residual = max(rep.comma_residual, deviation(tri, gb2), defect(lam))
            rep.comma_checked += 1
    return rep


@dataclass
class ConvergenceTable:
    """Deviation of relativistic quantities from their classical limits."""

    c_values: list
    morphism: list
    addition: list
    gyration: list
    slopes: dict = field(default_factory=dict)

    def rows(self):
        return list(zip(self.c_values, self.morphism, self.addition, self.gyration))

    def flagged(self, window=SLOPE_WINDOW):
        lo, hi = window
        return [k for k, s in self.slopes.items() if not (s is not None and lo <= s <= hi)]


def fit_loglog_slope(xs, ys, floor=NOISE_FLOOR):
    """Least-squares slope of log y against log x, ignoring y below ``floor``."""
    pts = [(math.log(x), math.log(y)) for x, y in zip(xs, ys) if y >= floor]
    if len(pts) < 2:
        return None
    lx, ly = np.array(pts).T
    return float(np.polyfit(lx, ly, 1)[0])


def companion_velocity(v):
    """A velocity of the same magnitude perpendicular to ``v``."""
    v = vec3(v)
    speed = np.linalg.norm(v)
    if speed == 0.0:
        return vec3([0, 0, 0])
    helper = np.eye(3)[int(np.argmin(np.abs(v)))]
    w = np.cross(v, helper)
    return vec3(w / np.linalg.norm(w) * speed)


def limit_scan(v, e, c_values, companion=None):
    """Deviations from the Galilean limit as ``c`` grows.

    Columns: boosted event versus Galilean event, Einstein versus classical
    sum of ``(v, companion)``, and distance of their Thomas rotation from
    the identity. Slopes are fitted on log-log axes.
    """
    v = vec3(v)
    if not isinstance(e, Event):
        e = Event.from_array(e)
    c_values = [check_c(c) for c in c_values]
    if any(b <= a for a, b in zip(c_values, c_values[1:])):
        raise ValueError("c values must be strictly increasing")
    w = companion_velocity(v) if companion is None else vec3(companion)
    table = ConvergenceTable(list(c_values), [], [], [])
    for c in c_values:
        relativistic_velocity(v, c)
        relativistic_velocity(w, c)
        table.morphism.append(inf_norm(boost_apply(v, c, e).as_array() - galilean_apply(v, e).as_array()))
        table.addition.append(inf_norm(einstein_add(v, w, c) - (v + w)))
        table.gyration.append(inf_norm(gyration(v, w, c) - IDENTITY3))
    for name in ("morphism", "addition", "gyration"):
        table.slopes[name] = fit_loglog_slope(c_values, getattr(table, name))
    return table
