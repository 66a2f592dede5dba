"""Finite diagrams in Gal and Lor, cones over them, and limit verification.

An index category is given by a finite presentation: objects, generating
arrows and relations between arrow paths. Paths are lists of arrow ids in
the order they are applied, so ``["f", "g"]`` means ``g o f``. The token
``"id:I"`` stands for the identity on object ``I``.

Morphisms of the index category are equivalence classes of paths up to a
length bound; presentations with more classes than ``cap`` are rejected.
"""

from dataclasses import dataclass, field

import numpy as np

from . import _config
from .errors import DanglingEndpointError, ExplosionError, UnknownFrameError
from .frames import compose, defect, deviation

DEFAULT_PATH_BOUND = 4
DEFAULT_CAP = 64


@dataclass(frozen=True)
class IndexMorphism:
    source: str
    target: str
    path: tuple

    @property
    def is_identity(self):
        return not self.path


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb, key=_path_order)] = min(ra, rb, key=_path_order)


def _path_order(key):
    src, path = key
    return (len(path), path, src)


class IndexCategory:
    def __init__(self, objects, arrows, relations, path_bound, cap):
        self.objects = tuple(objects)
        self.arrows = dict(arrows)
        self.relations = tuple(relations)
        self.path_bound = path_bound
        self.cap = cap
        self._classes = {}
        self._members = {}

    def morphisms(self):
        """One :class:`IndexMorphism` per class, shortest representative path."""
        return list(self._classes.values())

    def members(self, m):
        """Every path (up to the bound) in the class of ``m``."""
        return self._members[(m.source, m.path)]

    def __len__(self):
        return len(self._classes)

    def identity(self, obj):
        return self._classes[(obj, ())]

    def endpoints(self, src, path):
        if not path:
            return src, src
        return self.arrows[path[0]][0], self.arrows[path[-1]][1]

    def classify(self, src, path):
        """The class of a path, or ``None`` if it exceeds the bound."""
        key = (src, tuple(path))
        return self._lookup.get(key)

    def compose(self, g, f):
        """``g o f`` for index morphisms, ``None`` when past the path bound."""
        if f.target != g.source:
            raise ValueError("index morphisms are not composable")
        return self.classify(f.source, f.path + g.path)


def _parse_path(tokens, objects, arrows, where):
    tokens = list(tokens)
    if len(tokens) == 1 and isinstance(tokens[0], str) and tokens[0].startswith("id:"):
        obj = tokens[0][3:]
        if obj not in objects:
            raise DanglingEndpointError(f"{where}: identity on unknown object {obj!r}")
        return obj, obj, ()
    if not tokens:
        raise ValueError(f"{where}: empty path (write 'id:<object>' for an identity)")
    for a in tokens:
        if a not in arrows:
            raise DanglingEndpointError(f"{where}: unknown arrow {a!r}")
    for a, b in zip(tokens, tokens[1:]):
        if arrows[a][1] != arrows[b][0]:
            raise ValueError(f"{where}: arrows {a!r} and {b!r} are not composable")
    return arrows[tokens[0]][0], arrows[tokens[-1]][1], tuple(tokens)


def build_index(objects, arrows=(), relations=(), path_bound=DEFAULT_PATH_BOUND, cap=DEFAULT_CAP):
    """Build an :class:`IndexCategory` from a finite presentation.

    ``arrows`` is a sequence of ``(id, source, target)``; ``relations`` a
    sequence of path pairs declared equal.

    >>> len(build_index(["I", "J"], [("f", "I", "J"), ("g", "I", "J")]))
    4
    """
    objects = list(dict.fromkeys(objects))
    if path_bound < 1:
        raise ValueError("path_bound must be at least 1")
    arrow_map = {}
    for aid, src, tgt in arrows:
        if src not in objects or tgt not in objects:
            raise DanglingEndpointError(f"arrow {aid!r}: endpoint not among declared objects")
        if aid in arrow_map:
            raise ValueError(f"duplicate arrow id {aid!r}")
        arrow_map[aid] = (src, tgt)

    rels = []
    for k, (p, q) in enumerate(relations):
        ps, pt, pp = _parse_path(p, objects, arrow_map, f"relation {k}")
        qs, qt, qp = _parse_path(q, objects, arrow_map, f"relation {k}")
        if (ps, pt) != (qs, qt):
            raise ValueError(f"relation {k}: paths have different endpoints")
        rels.append(((ps, pp), (qs, qp)))

    # every path up to the bound, grouped by length
    raw_limit = 100 * cap
    out_arrows = {o: [a for a, (s, _) in arrow_map.items() if s == o] for o in objects}
    layer = [(o, ()) for o in objects]
    paths = list(layer)
    for _ in range(path_bound):
        nxt = []
        for src, path in layer:
            end = arrow_map[path[-1]][1] if path else src
            for a in out_arrows[end]:
                nxt.append((src, path + (a,)))
        paths.extend(nxt)
        layer = nxt
        if len(paths) > raw_limit:
            raise ExplosionError(f"more than {raw_limit} paths within bound {path_bound}")

    uf = _UnionFind()
    for key in paths:
        uf.find(key)
    # bucket by (endpoint, length) so whiskering only visits paths that fit
    by_end = {}
    by_start = {}
    for src, path in paths:
        s, t = (src, src) if not path else (arrow_map[path[0]][0], arrow_map[path[-1]][1])
        by_end.setdefault((t, len(path)), []).append((s, path))
        by_start.setdefault((s, len(path)), []).append(path)
    for (ps, pp), (_, qp) in rels:
        pt = arrow_map[pp[-1]][1] if pp else ps
        room = path_bound - max(len(pp), len(qp))
        for i in range(room + 1):
            for start, pre in by_end.get((ps, i), ()):
                for j in range(room - i + 1):
                    for post in by_start.get((pt, j), ()):
                        uf.union((start, pre + pp + post), (start, pre + qp + post))

    index = IndexCategory(objects, arrow_map, rels, path_bound, cap)
    members = {}
    for key in paths:
        members.setdefault(uf.find(key), []).append(key)
    if len(members) > cap:
        raise ExplosionError(f"{len(members)} morphism classes exceed the cap of {cap}")
    lookup = {}
    for root, keys in sorted(members.items(), key=lambda kv: _path_order(kv[0])):
        src, path = root
        s, t = index.endpoints(src, path)
        m = IndexMorphism(s, t, path)
        index._classes[root] = m
        index._members[root] = [p for _, p in sorted(keys, key=_path_order)]
        for key in keys:
            lookup[key] = m
    index._lookup = lookup
    return index


class Diagram:
    """A functor from an index category into a frame space.

    Each generating arrow goes to the unique morphism between the image
    frames; a path goes to the composite of its arrows' images.
    """

    def __init__(self, index, space, object_map):
        missing = [o for o in index.objects if o not in object_map]
        if missing:
            raise ValueError(f"object map misses index objects {missing}")
        for o in index.objects:
            if object_map[o] not in space:
                raise UnknownFrameError(object_map[o])
        self.index = index
        self.space = space
        self.object_map = dict(object_map)
        self._images = {}
        self._image_defect = None

    def __call__(self, obj):
        return self.object_map[obj]

    def path_image(self, src, path):
        key = (src, tuple(path))
        if key not in self._images:
            f = self.space.identity(self.object_map[src])
            for a in path:
                s, t = self.index.arrows[a]
                f = compose(self.space.hom(self.object_map[s], self.object_map[t]), f)
            self._images[key] = f
        return self._images[key]

    def image(self, m):
        return self.path_image(m.source, m.path)

    def image_defect(self):
        """Worst matrix/kinematics disagreement over the images of all morphisms."""
        if self._image_defect is None:
            self._image_defect = max((defect(self.image(m)) for m in self.index.morphisms()), default=0.0)
        return self._image_defect

    def relation_residual(self):
        """Worst disagreement between images of paths in the same class."""
        worst = 0.0
        for m in self.index.morphisms():
            ref = self.image(m)
            for p in self.index.members(m)[1:]:
                worst = max(worst, deviation(self.path_image(m.source, p), ref))
        return worst


@dataclass(eq=False)
class Cone:
    vertex: str
    legs: dict


@dataclass
class LimitReport:
    vertex: str
    is_cone: bool
    is_limit: bool
    worst: float
    cone_residual: float
    competitor_residuals: dict = field(default_factory=dict)


def cone_from_vertex(space, diagram, vertex):
    space[vertex]
    return Cone(vertex, {o: space.hom(vertex, diagram(o)) for o in diagram.index.objects})


def _cone_residual(diagram, cone):
    worst = diagram.image_defect()
    for o in diagram.index.objects:
        leg = cone.legs.get(o)
        if leg is None or leg.source != cone.vertex or leg.target != diagram(o):
            return np.inf
        worst = max(worst, defect(leg))
    for m in diagram.index.morphisms():
        fm = diagram.image(m)
        worst = max(worst, deviation(compose(fm, cone.legs[m.source]), cone.legs[m.target]))
    return worst


def is_cone(space, diagram, cone, tol=None):
    """Check every triangle ``D(f) o leg_I == leg_J``; returns ``(ok, worst)``."""
    tol = _config.resolve(tol)
    worst = _cone_residual(diagram, cone)
    return bool(worst < tol), worst


def is_limit(space, diagram, cone, competitors=None, tol=None, _cone_cache=None):
    """Check that every competitor cone factors through ``cone``.

    Competitors default to every frame of the space. For each competitor
    vertex the unique morphism into the cone vertex is the mediating map.
    """
    tol = _config.resolve(tol)
    cache = {} if _cone_cache is None else _cone_cache
    if _cone_cache is not None and cone.vertex in cache:
        # survey_limits only passes the canonical cone at each vertex
        cone_res = cache[cone.vertex]
        ok = bool(cone_res < tol)
    else:
        ok, cone_res = is_cone(space, diagram, cone, tol)
    competitors = space.ids if competitors is None else list(competitors)
    residuals = {}
    for b in competitors:
        other = cone_from_vertex(space, diagram, b)
        if b not in cache:
            cache[b] = _cone_residual(diagram, other)
        u = space.hom(b, cone.vertex)
        res = max(defect(u), cache[b])
        for o in diagram.index.objects:
            res = max(res, deviation(compose(cone.legs[o], u), other.legs[o]))
        residuals[b] = res
    worst = max([cone_res, *residuals.values()])
    return LimitReport(
        vertex=cone.vertex,
        is_cone=ok,
        is_limit=bool(ok and worst < tol),
        worst=worst,
        cone_residual=cone_res,
        competitor_residuals=residuals,
    )


def survey_limits(space, diagram, tol=None):
    """:class:`LimitReport` for the cone at every frame, all others competing."""
    cones = {v: cone_from_vertex(space, diagram, v) for v in space.ids}
    cache = {v: _cone_residual(diagram, c) for v, c in cones.items()}
    return {v: is_limit(space, diagram, cones[v], tol=tol, _cone_cache=cache) for v in space.ids}


def no_privileged_frame(space, diagram, tol=None):
    """True iff every frame of the space is a limit of ``diagram``."""
    return all(r.is_limit for r in survey_limits(space, diagram, tol).values())
