"""Frames with an origin: boosts, rotations and translations together.

Objects are pairs ``(frame, origin)``. Rotations are automorphisms,
translations move the origin, boosts change the frame. Hom-sets stop
being singletons once rotations are admitted; the boost-only
sub-category is the original indiscrete one.

Every morphism keeps ``target.origin == source.origin + translation``.
"""

from dataclasses import dataclass

import numpy as np

from . import _config
from .errors import NotComposableError
from .vecmat import IDENTITY4, embed_rotation, inf_norm, is_rotation, mat3, mat4, rotation_from_axis_angle, vec3

BOOST = "boost"
ROTATION = "rotation"
TRANSLATION = "translation"
COMPOSITE = "composite"


@dataclass(frozen=True)
class ExtendedObject:
    frame: str
    origin: tuple = (0.0, 0.0, 0.0)

    def __post_init__(self):
        object.__setattr__(self, "origin", tuple(float(x) for x in vec3(self.origin)))

    def same_as(self, other, tol=None):
        tol = _config.resolve(tol)
        return self.frame == other.frame and inf_norm(np.subtract(self.origin, other.origin)) <= tol


@dataclass(frozen=True, eq=False)
class ExtendedMorphism:
    source: ExtendedObject
    target: ExtendedObject
    kind: str
    matrix: np.ndarray
    translation: np.ndarray


class ExtendedCategory:
    """Pairs ``(frame, origin)`` over a :class:`~lorcat.frames.FrameSpace`."""

    def __init__(self, space):
        self.space = space

    def obj(self, frame_id, origin=(0.0, 0.0, 0.0)):
        self.space[frame_id]
        return ExtendedObject(frame_id, origin)

    def identity(self, a):
        return ExtendedMorphism(a, a, ROTATION, IDENTITY4, vec3([0, 0, 0]))

    def boost(self, a, b):
        m = self.space.hom(a.frame, b.frame).matrix
        shift = vec3(np.subtract(b.origin, a.origin))
        return ExtendedMorphism(a, b, BOOST, m, shift)

    def rotation(self, a, rot):
        rot = mat3(rot)
        if not is_rotation(rot):
            raise ValueError("not a proper rotation")
        return ExtendedMorphism(a, a, ROTATION, embed_rotation(rot), vec3([0, 0, 0]))

    def translation(self, a, shift):
        shift = vec3(shift)
        b = ExtendedObject(a.frame, np.add(a.origin, shift))
        return ExtendedMorphism(a, b, TRANSLATION, IDENTITY4, shift)


def extended_compose(g, f, tol=None):
    """``g o f``; matrices multiply and origin shifts accumulate."""
    if not f.target.same_as(g.source, tol):
        raise NotComposableError(f"target {f.target} does not match source {g.source}")
    if f.kind == g.kind and f.kind in (ROTATION, TRANSLATION):
        kind = f.kind
    else:
        kind = COMPOSITE
    return ExtendedMorphism(
        f.source, g.target, kind, mat4(g.matrix @ f.matrix), vec3(f.translation + g.translation)
    )


def extended_hom_count_witness(category, a, b, rotation=None):
    """Two morphisms ``a -> b``: the boost alone and the boost after a rotation of ``a``.

    With the default quarter turn about ``z`` their matrices differ, so the
    hom-set has at least two elements. Passing the identity rotation gives
    the same morphism twice.
    """
    if rotation is None:
        rotation = rotation_from_axis_angle([0.0, 0.0, 1.0], np.pi / 2)
    lam = category.boost(a, b)
    plain = extended_compose(lam, category.identity(a))
    rotated = extended_compose(lam, category.rotation(a, rotation))
    return plain, rotated
