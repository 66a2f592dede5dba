"""Scene files: JSON documents declaring a frame space, diagrams and checks.

Example::

    {
      "regime": "lorentz",
      "c": 1.0,
      "tolerance": 1e-9,
      "frames": [
        {"id": "lab", "velocity": [0, 0, 0]},
        {"id": "ship", "velocity": [0.5, 0, 0],
         "rotation": {"axis": [0, 0, 1], "angle": 0.1}}
      ],
      "diagrams": [
        {"name": "span", "objects": ["I", "J"],
         "arrows": [["f", "I", "J"]], "relations": [],
         "object_map": {"I": "lab", "J": "ship"}}
      ],
      "checks": ["axioms", "diagrams", "no_privileged_frame"]
    }

Velocities are in length/time units. The first frame is the anchor unless
``anchor`` names another; it must be at rest. A frame may also carry a
measured ``matrix`` (4x4 rows) for its anchor transform, which ``check``
cross-validates against the velocity and rotation.
"""

import json
import os
from dataclasses import dataclass, field

import numpy as np

from . import _config
from .diagrams import DEFAULT_CAP, DEFAULT_PATH_BOUND, Diagram, build_index
from .errors import LorcatError, SceneError, SuperluminalError
from .frames import GALILEAN, LORENTZ, Frame, FrameSpace
from .vecmat import IDENTITY3, rotation_from_axis_angle

REGIMES = (GALILEAN, LORENTZ)
KNOWN_CHECKS = ("axioms", "diagrams", "no_privileged_frame", "functor", "adjunction")
TOP_LEVEL_KEYS = ("regime", "c", "tolerance", "anchor", "frames", "diagrams", "checks")


@dataclass
class DiagramSpec:
    name: str
    objects: list
    arrows: list
    relations: list
    object_map: dict
    vertex: str = None
    path_bound: int = DEFAULT_PATH_BOUND
    cap: int = DEFAULT_CAP


@dataclass
class Scene:
    regime: str
    c: float
    tolerance: float
    space: FrameSpace
    diagrams: list = field(default_factory=list)
    checks: list = None
    source: str = None

    def build_diagram(self, spec, space=None):
        space = space or self.space
        index = build_index(spec.objects, spec.arrows, spec.relations, spec.path_bound, spec.cap)
        return Diagram(index, space, spec.object_map)


def _number(value, locus):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SceneError(f"expected a number, got {value!r}", locus)
    if not np.isfinite(value):
        raise SceneError("number must be finite", locus)
    return float(value)


def _triple(value, locus):
    if not isinstance(value, list) or len(value) != 3:
        raise SceneError(f"expected a list of 3 numbers, got {value!r}", locus)
    return [_number(x, f"{locus}[{i}]") for i, x in enumerate(value)]


def _frame(raw, k, regime, c):
    locus = f"frames[{k}]"
    if not isinstance(raw, dict):
        raise SceneError("frame must be an object", locus)
    if "id" not in raw or not isinstance(raw["id"], str) or not raw["id"]:
        raise SceneError("frame needs a non-empty string id", f"{locus}.id")
    fid = raw["id"]
    velocity = _triple(raw.get("velocity"), f"{locus}.velocity")
    if regime == LORENTZ and not np.linalg.norm(velocity) < c:
        raise SceneError(
            f"frame {fid!r} moves at {np.linalg.norm(velocity) / c:.17g} c; relativistic speeds must be below c",
            f"{locus}.velocity",
        )
    rotation = IDENTITY3
    if raw.get("rotation") is not None:
        if regime == GALILEAN:
            raise SceneError(f"frame {fid!r}: galilean frames take no rotation", f"{locus}.rotation")
        rot = raw["rotation"]
        if not isinstance(rot, dict):
            raise SceneError("rotation must be {axis, angle}", f"{locus}.rotation")
        axis = _triple(rot.get("axis"), f"{locus}.rotation.axis")
        angle = _number(rot.get("angle"), f"{locus}.rotation.angle")
        try:
            rotation = rotation_from_axis_angle(axis, angle)
        except LorcatError as exc:
            raise SceneError(str(exc), f"{locus}.rotation.axis") from None
    matrix = None
    if raw.get("matrix") is not None:
        m = raw["matrix"]
        if not isinstance(m, list) or len(m) != 4:
            raise SceneError("matrix must be 4 rows of 4 numbers", f"{locus}.matrix")
        matrix = [
            [_number(x, f"{locus}.matrix[{i}][{j}]") for j, x in enumerate(_row(row, f"{locus}.matrix[{i}]"))]
            for i, row in enumerate(m)
        ]
    return Frame(fid, velocity, rotation, matrix)


def _row(row, locus):
    if not isinstance(row, list) or len(row) != 4:
        raise SceneError("matrix row must have 4 numbers", locus)
    return row


def _diagram(raw, k, frame_ids):
    locus = f"diagrams[{k}]"
    if not isinstance(raw, dict):
        raise SceneError("diagram must be an object", locus)
    objects = raw.get("objects")
    if not isinstance(objects, list) or not objects or not all(isinstance(o, str) for o in objects):
        raise SceneError("objects must be a non-empty list of strings", f"{locus}.objects")
    arrows = []
    for i, a in enumerate(raw.get("arrows", [])):
        if isinstance(a, dict):
            a = [a.get("id"), a.get("source"), a.get("target")]
        if not (isinstance(a, list) and len(a) == 3 and all(isinstance(x, str) for x in a)):
            raise SceneError("arrow must be [id, source, target]", f"{locus}.arrows[{i}]")
        arrows.append(tuple(a))
    relations = []
    for i, r in enumerate(raw.get("relations", [])):
        if not (isinstance(r, list) and len(r) == 2 and all(isinstance(p, list) for p in r)):
            raise SceneError("relation must be a pair of paths", f"{locus}.relations[{i}]")
        relations.append((r[0], r[1]))
    omap = raw.get("object_map")
    if not isinstance(omap, dict):
        raise SceneError("object_map must map index objects to frame ids", f"{locus}.object_map")
    for o, fid in omap.items():
        if fid not in frame_ids:
            raise SceneError(f"unknown frame {fid!r}", f"{locus}.object_map.{o}")
    vertex = raw.get("vertex")
    if vertex is not None and vertex not in frame_ids:
        raise SceneError(f"unknown frame {vertex!r}", f"{locus}.vertex")
    bound = raw.get("path_bound", DEFAULT_PATH_BOUND)
    cap = raw.get("cap", DEFAULT_CAP)
    for key, val in (("path_bound", bound), ("cap", cap)):
        if isinstance(val, bool) or not isinstance(val, int) or val < 1:
            raise SceneError("must be a positive integer", f"{locus}.{key}")
    spec = DiagramSpec(
        name=str(raw.get("name", f"diagram{k}")),
        objects=objects,
        arrows=arrows,
        relations=relations,
        object_map=omap,
        vertex=vertex,
        path_bound=bound,
        cap=cap,
    )
    try:
        build_index(spec.objects, spec.arrows, spec.relations, spec.path_bound, spec.cap)
    except (LorcatError, ValueError) as exc:
        raise SceneError(str(exc), locus) from None
    missing = [o for o in objects if o not in omap]
    if missing:
        raise SceneError(f"object_map misses {missing}", f"{locus}.object_map")
    return spec


def load_scene(doc, source=None, c=None, tol=None):
    """Build a :class:`Scene` from an already-decoded JSON document."""
    if not isinstance(doc, dict):
        raise SceneError("scene must be a JSON object", "top level")
    unknown = sorted(set(doc) - set(TOP_LEVEL_KEYS))
    if unknown:
        raise SceneError(f"unknown keys {unknown}", "top level")
    regime = doc.get("regime")
    if regime not in REGIMES:
        raise SceneError(f"regime must be one of {list(REGIMES)}", "regime")
    light = _number(doc.get("c", 1.0), "c") if c is None else float(c)
    if not light > 0:
        raise SceneError("c must be positive", "c")
    if tol is None:
        tol = _number(doc["tolerance"], "tolerance") if "tolerance" in doc else _config.get_tolerance()
    if not tol > 0:
        raise SceneError("tolerance must be positive", "tolerance")
    raw_frames = doc.get("frames")
    if not isinstance(raw_frames, list) or not raw_frames:
        raise SceneError("frames must be a non-empty list", "frames")
    frames = [_frame(f, k, regime, light) for k, f in enumerate(raw_frames)]
    anchor = doc.get("anchor")
    try:
        space = FrameSpace(regime, frames, anchor=anchor, c=light, tol=tol)
    except SuperluminalError as exc:
        raise SceneError(str(exc), "frames") from None
    except (LorcatError, ValueError) as exc:
        raise SceneError(str(exc), "frames" if anchor is None else "anchor") from None
    ids = set(space.ids)
    raw_diagrams = doc.get("diagrams", [])
    if not isinstance(raw_diagrams, list):
        raise SceneError("diagrams must be a list", "diagrams")
    diagrams = [_diagram(d, k, ids) for k, d in enumerate(raw_diagrams)]
    names = [d.name for d in diagrams]
    if len(set(names)) != len(names):
        raise SceneError("diagram names must be unique", "diagrams")
    checks = doc.get("checks")
    if checks is not None:
        if not isinstance(checks, list) or not all(isinstance(x, str) for x in checks):
            raise SceneError("checks must be a list of names", "checks")
        bad = [x for x in checks if x not in KNOWN_CHECKS]
        if bad:
            raise SceneError(f"unknown checks {bad}; known: {list(KNOWN_CHECKS)}", "checks")
    return Scene(regime, light, tol, space, diagrams, checks, source)


def parse_scene(path, c=None, tol=None):
    """Read and validate a scene file.

    ``c`` and ``tol`` override the values in the file.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SceneError(f"cannot read scene: {exc.strerror}", os.fspath(path)) from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SceneError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    return load_scene(doc, source=os.fspath(path), c=c, tol=tol)
