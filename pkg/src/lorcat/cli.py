"""Command-line front end.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or parse error.
Reports go to stdout, diagnostics to stderr.
"""

import argparse
import json
import math
import sys

import numpy as np

from . import _config
from .diagrams import build_index, Diagram, is_limit, cone_from_vertex, survey_limits
from .errors import LorcatError, SceneError
from .frames import LORENTZ, check_category_axioms, compose
from .functors import (
    SLOPE_WINDOW,
    M_functor,
    check_adjunction,
    check_functor_laws,
    check_limit_preservation,
    limit_functor,
    limit_scan,
    pair_spaces,
)
from .kinematics import decompose_lorentz
from .scene import KNOWN_CHECKS, parse_scene
from .vecmat import Event, apply, inf_norm, rotation_axis_angle

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _num(x):
    x = float(x)
    if math.isfinite(x):
        return x
    return "inf" if x > 0 else ("-inf" if x < 0 else "nan")


def _fmt(x):
    return f"{x:.12g}"


def _vec(v, scene):
    """Velocity for output: in units of c when relativistic."""
    v = np.asarray(v, dtype=float)
    if scene.regime == LORENTZ:
        v = v / scene.c
    return [_num(x) for x in v]


def _check(name, passed, residual, details):
    return {"name": name, "passed": bool(passed), "residual": _num(residual), "details": details}


def _default_diagram(space):
    # one index object per frame, no arrows
    index = build_index(list(space.ids), [], [], 1, max(64, len(space)))
    return Diagram(index, space, {f: f for f in space.ids})


def _diagrams(scene, space=None):
    specs = scene.diagrams
    if not specs:
        return [("frames", _default_diagram(space or scene.space), None)]
    return [(s.name, scene.build_diagram(s, space), s.vertex) for s in specs]


def run_axioms(scene, samples, seed):
    rep = check_category_axioms(scene.space, samples=samples, seed=seed, tol=scene.tolerance)
    details = {
        name: {"residual": _num(r.residual), "where": list(r.where)} for name, r in sorted(rep.laws.items())
    }
    return _check("axioms", rep.passed, rep.worst.residual, details)


def run_diagrams(scene):
    out = []
    for name, diagram, vertex in _diagrams(scene):
        vertex = vertex or scene.space.anchor
        rel = diagram.relation_residual()
        lim = is_limit(scene.space, diagram, cone_from_vertex(scene.space, diagram, vertex), tol=scene.tolerance)
        worst = max(rel, lim.worst)
        bad = sorted(k for k, r in lim.competitor_residuals.items() if not r < scene.tolerance)
        details = {
            "vertex": vertex,
            "index_morphisms": len(diagram.index),
            "relation_residual": _num(rel),
            "is_cone": lim.is_cone,
            "is_limit": lim.is_limit,
            "failing_competitors": bad,
        }
        out.append(_check(f"diagram:{name}", lim.is_limit and rel < scene.tolerance, worst, details))
    return out


def run_no_privileged_frame(scene):
    worst = 0.0
    passed = True
    details = {}
    for name, diagram, _ in _diagrams(scene):
        reports = survey_limits(scene.space, diagram, tol=scene.tolerance)
        w = max(r.worst for r in reports.values())
        failing = sorted(v for v, r in reports.items() if not r.is_limit)
        worst = max(worst, w)
        passed = passed and not failing
        details[name] = {"worst": _num(w), "non_limit_vertices": failing}
    return _check("no_privileged_frame", passed, worst, details)


def _functor_pair(scene):
    if scene.regime == LORENTZ:
        lor = scene.space
        gal = pair_spaces(lor)
        return lor, gal, M_functor(gal, scene.c), limit_functor(lor, gal)
    gal = scene.space
    M = M_functor(gal, scene.c)
    return M.target, gal, M, limit_functor(M.target, gal)


def run_functor(scene, samples, seed):
    try:
        lor, gal, M, L = _functor_pair(scene)
    except LorcatError as exc:
        return _check("functor", True, 0.0, {"skipped": str(exc)})
    laws = check_functor_laws(L, samples=samples, seed=seed, tol=scene.tolerance)
    preserved = True
    pres = {}
    for name, diagram, _ in _diagrams(scene, lor):
        ok, detail = check_limit_preservation(L, diagram, tol=scene.tolerance)
        preserved = preserved and ok
        pres[name] = {"preserved": ok, "limits_checked": len(detail)}
    details = {
        "structural_failures": [list(x) for x in laws.structural_failures],
        "identity_residual": _num(laws.identity_residual),
        "composition_residual": _num(laws.composition_residual),
        "full_and_faithful": laws.full_and_faithful,
        "limit_preservation": pres,
    }
    residual = max(laws.identity_residual, laws.composition_residual)
    return _check("functor", laws.passed and preserved, residual, details)


def run_adjunction(scene, samples, seed):
    try:
        lor, gal, M, L = _functor_pair(scene)
    except LorcatError as exc:
        return _check("adjunction", True, 0.0, {"skipped": str(exc)})
    rep = check_adjunction(M, L, samples=samples, seed=seed, tol=scene.tolerance)
    fields = ("naturality_residual", "unit_residual", "counit_residual", "triangle_residual", "comma_residual")
    details = {f: _num(getattr(rep, f)) for f in fields}
    details["bijection_failures"] = [list(x) for x in rep.bijection_failures]
    details["comma_checked"] = rep.comma_checked
    residual = max(getattr(rep, f) for f in fields)
    return _check("adjunction", rep.passed, residual, details)


def cmd_check(scene, samples=1000, seed=0):
    """Run the checks named by the scene (all of them when unspecified)."""
    names = KNOWN_CHECKS if scene.checks is None else scene.checks
    results = []
    for name in dict.fromkeys(names):
        if name == "axioms":
            results.append(run_axioms(scene, samples, seed))
        elif name == "diagrams":
            results.extend(run_diagrams(scene))
        elif name == "no_privileged_frame":
            results.append(run_no_privileged_frame(scene))
        elif name == "functor":
            results.append(run_functor(scene, samples, seed))
        elif name == "adjunction":
            results.append(run_adjunction(scene, samples, seed))
    results.sort(key=lambda r: r["name"])
    failing = [r["residual"] for r in results if not r["passed"]]
    shown = failing or [r["residual"] for r in results]
    return {
        "command": "check",
        "scene": scene.source,
        "regime": scene.regime,
        "c": _num(scene.c),
        "tolerance": _num(scene.tolerance),
        "seed": seed,
        "samples": samples,
        "passed": all(r["passed"] for r in results),
        "residual": _num(max((float(x) for x in shown), default=0.0)),
        "checks": results,
    }


def cmd_transform(scene, frame_id, event):
    """Apply the morphism anchor -> frame to an event."""
    f = scene.space.hom(scene.space.anchor, frame_id)
    out = apply(f.matrix, event)
    return {
        "command": "transform",
        "scene": scene.source,
        "regime": scene.regime,
        "from": scene.space.anchor,
        "to": frame_id,
        "event": [_num(x) for x in event.as_array()],
        "result": [_num(x) for x in out.as_array()],
    }


def _morphism_summary(f, scene):
    d = {"source": f.source, "target": f.target, "velocity": _vec(f.velocity, scene)}
    if scene.regime == LORENTZ:
        axis, angle = rotation_axis_angle(f.rotation)
        d["rotation_angle"] = _num(angle)
        d["rotation_axis"] = [_num(x) for x in axis]
    return d


def cmd_compose(scene, a, b, c):
    """Compose ``hom(b, c) o hom(a, b)`` and compare with ``hom(a, c)``."""
    space = scene.space
    f, g = space.hom(a, b), space.hom(b, c)
    gf = compose(g, f)
    direct = space.hom(a, c)
    report = {
        "command": "compose",
        "scene": scene.source,
        "regime": scene.regime,
        "first": _morphism_summary(f, scene),
        "second": _morphism_summary(g, scene),
        "composite": _morphism_summary(gf, scene),
        "residual_vs_direct": _num(inf_norm(gf.matrix - direct.matrix)),
    }
    if scene.regime == LORENTZ:
        # the same quantities read off the matrix product alone
        dec = decompose_lorentz(g.matrix @ f.matrix, space.c, tol=scene.tolerance)
        report["wigner_angle"] = _num(gf.decomposition.angle)
        report["matrix_route"] = {
            "velocity": _vec(dec.velocity, scene),
            "wigner_angle": _num(dec.angle),
        }
        report["angle_discrepancy"] = _num(abs(dec.angle - gf.decomposition.angle))
    else:
        report["velocity_sum"] = _vec(g.velocity + f.velocity, scene)
    return report


def cmd_cscan(velocity, c_values, event):
    table = limit_scan(velocity, event, c_values)
    flagged = table.flagged()
    return {
        "command": "cscan",
        "velocity": [_num(x) for x in velocity],
        "event": [_num(x) for x in event.as_array()],
        "rows": [
            {"c": _num(c), "morphism": _num(m), "addition": _num(a), "gyration": _num(g)}
            for c, m, a, g in table.rows()
        ],
        "slopes": {k: (None if v is None else _num(v)) for k, v in sorted(table.slopes.items())},
        "window": list(SLOPE_WINDOW),
        "flagged": flagged,
        "passed": not flagged,
    }


def _print_check(rep, out):
    print(f"scene: {rep['scene']}  regime: {rep['regime']}  c: {_fmt(rep['c'])}  tol: {rep['tolerance']:g}", file=out)
    for r in rep["checks"]:
        res = r["residual"]
        res = _fmt(res) if isinstance(res, float) else res
        print(f"  [{'PASS' if r['passed'] else 'FAIL'}] {r['name']:<24} residual {res}", file=out)
        if not r["passed"]:
            print(f"         {json.dumps(r['details'], sort_keys=True)}", file=out)
    res = rep["residual"]
    res = _fmt(res) if isinstance(res, float) else res
    print(f"{'PASSED' if rep['passed'] else 'FAILED'}  residual {res}", file=out)


def _print_transform(rep, out):
    print(f"{rep['from']} -> {rep['to']} ({rep['regime']})", file=out)
    print("  event:  " + " ".join(_fmt(x) for x in rep["event"]), file=out)
    print("  result: " + " ".join(_fmt(x) for x in rep["result"]), file=out)


def _print_compose(rep, out):
    unit = " c" if rep["regime"] == LORENTZ else ""
    for key in ("first", "second", "composite"):
        m = rep[key]
        line = f"  {key:<9} {m['source']} -> {m['target']}: v = [{', '.join(_fmt(x) for x in m['velocity'])}]{unit}"
        if "rotation_angle" in m:
            line += f"  rotation {_fmt(m['rotation_angle'])} rad"
        print(line, file=out)
    if rep["regime"] == LORENTZ:
        print(f"  wigner angle          {_fmt(rep['wigner_angle'])} rad", file=out)
        print(f"  wigner angle (matrix) {_fmt(rep['matrix_route']['wigner_angle'])} rad", file=out)
    else:
        print(f"  velocity sum          [{', '.join(_fmt(x) for x in rep['velocity_sum'])}]", file=out)
    print(f"  residual vs direct    {_fmt(rep['residual_vs_direct'])}", file=out)


def _print_cscan(rep, out):
    print(f"{'c':>12} {'morphism':>14} {'addition':>14} {'gyration':>14}", file=out)
    for r in rep["rows"]:
        print(f"{r['c']:>12g} {r['morphism']:>14.6e} {r['addition']:>14.6e} {r['gyration']:>14.6e}", file=out)
    for k, s in rep["slopes"].items():
        flag = "  <-- outside window" if k in rep["flagged"] else ""
        print(f"  slope {k:<9} {'n/a' if s is None else f'{s:.4f}'}{flag}", file=out)


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report on stdout")
    common.add_argument("--tol", type=float, default=None, help="absolute tolerance override")
    common.add_argument("--c", type=float, default=None, help="light speed override")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=1000)

    p = argparse.ArgumentParser(prog="lorcat", description="Inertial frames as categories.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="run the scene's checks")
    s.add_argument("--scene", required=True)

    s = sub.add_parser("transform", parents=[common], help="transform an event from the anchor frame")
    s.add_argument("--scene", required=True)
    s.add_argument("--frame", required=True)
    s.add_argument("--event", type=float, nargs=4, required=True, metavar=("T", "X", "Y", "Z"))

    s = sub.add_parser("compose", parents=[common], help="compose hom(b, c) after hom(a, b)")
    s.add_argument("--scene", required=True)
    s.add_argument("--frames", nargs=3, required=True, metavar=("A", "B", "C"))

    s = sub.add_parser("cscan", parents=[common], help="convergence to the Galilean limit as c grows")
    s.add_argument("--scene", default=None, help="optional; supplies the tolerance")
    s.add_argument("--velocity", type=float, nargs=3, required=True, metavar=("VX", "VY", "VZ"))
    s.add_argument("--c-values", type=float, nargs="+", default=[1e1, 1e2, 1e3, 1e4, 1e5])
    s.add_argument("--event", type=float, nargs=4, default=[1.0, 0.0, 1.0, 0.0], metavar=("T", "X", "Y", "Z"))
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    args = _parser().parse_args(argv)
    if args.tol is not None and not args.tol > 0:
        print("lorcat: --tol must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.command == "cscan":
            if args.scene:
                parse_scene(args.scene, c=args.c, tol=args.tol)
            rep = cmd_cscan(args.velocity, args.c_values, Event.from_array(args.event))
            code = EXIT_OK if rep["passed"] else EXIT_FAIL
            printer = _print_cscan
        else:
            scene = parse_scene(args.scene, c=args.c, tol=args.tol)
            if args.command == "check":
                rep = cmd_check(scene, samples=args.samples, seed=args.seed)
                code = EXIT_OK if rep["passed"] else EXIT_FAIL
                printer = _print_check
            elif args.command == "transform":
                rep = cmd_transform(scene, args.frame, Event.from_array(args.event))
                code, printer = EXIT_OK, _print_transform
            else:
                rep = cmd_compose(scene, *args.frames)
                code, printer = EXIT_OK, _print_compose
    except SceneError as exc:
        print(f"lorcat: scene error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (LorcatError, ValueError) as exc:
        print(f"lorcat: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.json:
        out.write(json.dumps(rep, sort_keys=True, indent=2) + "\n")
    else:
        printer(rep, out)
    return code


if __name__ == "__main__":
    sys.exit(main())
