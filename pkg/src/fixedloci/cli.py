"""Command-line front end: problem files in, machine-readable reports out.

Subcommands: toric, quiver, grassmann, kempf.  Input is a JSON problem file
validated against the shipped schema; output is a JSON report (default), a
human-readable table, or DOT graphs for fans and quivers.  Reports are
byte-identical across runs for the same input and seed; timing goes to
stderr under --verbose only.

Exit codes: 0 success, 2 validation or domain-precondition error, 3
guard/limit error.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import os
import sys
import time
from fractions import Fraction
from importlib import resources

from . import __version__
from .common import Status
from .errors import FixedLociError, TooLarge, ValidationError
from .grassmann import GrassmannProblem, classify
from .hmtorus import (
    WeightItem,
    WeightedAction,
    is_semistable_support,
    is_stable_support,
    limit_cone,
)
from .hmtorus import _kempf_data  # internal reuse: one projection for value + ray
from .linalg import IntMatrix
from .quiver import (
    Arrow,
    ArrowWeights,
    Quiver,
    box_from_radius,
    check_stability_pairing,
    component_dimension,
    default_window_radius,
    enumerate_covers,
)
from .repfield import certify_component
from .toric import fixed_points_toric, quotient_fan, toric_context


def _load_schema(name):
    with resources.files("fixedloci.schemas").joinpath(name).open("r") as fh:
        return json.load(fh)


def load_problem(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ValidationError("cannot read %s: %s" % (path, exc))
    except json.JSONDecodeError as exc:
        raise ValidationError("%s: invalid JSON at line %d column %d: %s"
                              % (path, exc.lineno, exc.colno, exc.msg))
    import jsonschema

    schema = _load_schema("problem.schema.json")
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        loc = "/".join(str(p) for p in e.absolute_path) or "(root)"
        raise ValidationError("%s: at %s: %s" % (path, loc, e.message))
    return data


def validate_report(report):
    import jsonschema

    jsonschema.validate(report, _load_schema("report.schema.json"))


# ---------------------------------------------------------------------------
# problem construction

def _action_from_toric(data):
    items = tuple(
        WeightItem(tuple(w["chi"]), mult=int(w.get("mult", 1)))
        for w in data["weights"]
    )
    return WeightedAction(int(data["g_rank"]), 0, items, tuple(data["theta"]))


def _action_from_weights(data):
    aux = int(data.get("aux_rank", 0))
    items = tuple(
        WeightItem(tuple(w["chi"]), tuple(w.get("w", [0] * aux)), int(w.get("mult", 1)))
        for w in data["items"]
    )
    return WeightedAction(int(data["g_rank"]), aux, items, tuple(data["theta"]))


def _quiver_from_data(data):
    Q = Quiver(
        tuple(data["vertices"]),
        tuple(Arrow(a["id"], a["src"], a["tgt"]) for a in data["arrows"]),
    )
    alpha = {v: int(n) for v, n in data["alpha"].items()}
    theta = {v: int(n) for v, n in data["theta"].items()}
    for v in set(alpha) | set(theta):
        if v not in set(Q.vertices):
            raise ValidationError("alpha/theta mention unknown vertex %r" % v)
    check_stability_pairing(theta, alpha)
    if "arrow_weights" in data:
        W = ArrowWeights.from_dict(
            int(data["arrow_weights"]["aux_rank"]), data["arrow_weights"]["weights"]
        )
        known = {a.id for a in Q.arrows}
        given = {k for k, _ in W.weights}
        if known != given:
            raise ValidationError("arrow_weights must grade exactly the arrows: %s" % sorted(known ^ given))
    else:
        W = ArrowWeights.full(Q)
    return Q, W, alpha, theta


# ---------------------------------------------------------------------------
# report assembly

def _frac_str(x):
    return None if x is None else str(Fraction(x))


def _toric_report(data, seed):
    action = _action_from_toric(data)
    section = None
    opts = data.get("options", {})
    if "section" in opts:
        section = IntMatrix.from_rows(opts["section"], len(opts["section"][0]) if opts["section"] else 0)
    fan = quotient_fan(action, section)
    comps = fixed_points_toric(action, section)
    _, used_section = toric_context(action, section)

    m = action.total_dim
    flat = {idx: action.flat_index(idx) for idx in action.indices()}
    comp_json = []
    for c in comps:
        sup_flat = sorted(flat[i] for i in c.support)
        pattern = "".join("1" if j in sup_flat else "0" for j in range(m))
        comp_json.append({
            "rho": [list(r) for r in c.rho.matrix.entries],
            "support": [list(i) for i in c.support],
            "support_flat": sup_flat,
            "point_pattern": pattern,
            "g_rho": c.g_descriptor,
            "dimension": c.dimension,
            "status": c.status.value,
        })
    maximal = set(fan.maximal_cones)
    fan_json = {
        "lattice_rank": fan.lattice_rank,
        "rays": [list(r) for r in fan.rays],
        "cones": [
            {
                "rays": list(c),
                "orbit_dimension": fan.lattice_rank - len(c),
                "maximal": c in maximal,
            }
            for c in fan.cones
        ],
    }
    return {
        "tool": "fixedloci",
        "version": __version__,
        "kind": "toric",
        "seed": seed,
        "input": data,
        "components": comp_json,
        "fan": fan_json,
        "counts": {
            "fixed_points": len(comp_json),
            "section_rows": used_section.nrows,
        },
    }


def _point_json(point):
    v, chi = point
    return [v, list(chi)]


def _witness_json(witness):
    if witness is None:
        return None
    return {
        "prime": witness.prime,
        "dims": [[_point_json(v), d] for v, d in witness.dims],
        "mats": [[[a[0], list(a[1])], [list(r) for r in m]] for a, m in witness.mats],
    }


def _quiver_report(data, seed, prime, trials, window):
    Q, W, alpha, theta = _quiver_from_data(data)
    opts = data.get("options", {})
    seed = seed if seed is not None else int(opts.get("seed", 0))
    prime = prime if prime is not None else int(opts.get("prime", 5))
    trials = trials if trials is not None else int(opts.get("trials", 200))
    radius = window if window is not None else opts.get("window")
    if radius is None:
        radius = default_window_radius(alpha, W)
    box = box_from_radius(W.aux_rank, int(radius))

    total = sum(alpha.values())
    if total > 8:
        raise TooLarge("total dimension %d exceeds the certification guard 8" % total)
    covers = enumerate_covers(Q, W, alpha, box)
    cands = []
    for c in covers:
        if not c.items:
            continue
        if component_dimension(Q, W, c) >= 0:
            cands.append(c)

    workers = max(1, int(os.environ.get("FIXEDLOCI_THREADS", "1")))

    def certify(c):
        return certify_component(Q, W, c, theta, trials=trials, prime=prime, seed=seed)

    if workers > 1 and len(cands) > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(certify, cands))
    else:
        results = [certify(c) for c in cands]

    comp_json = []
    for c, r in zip(cands, results):
        blocks = sorted(n for _, n in c.items)
        comp_json.append({
            "beta": [[_point_json(k), n] for k, n in c.items],
            "dimension": component_dimension(Q, W, c),
            "g_rho": "torus" if all(n == 1 for n in blocks) else blocks,
            "status": r.status.value,
            "witness": _witness_json(r.witness),
            "witness_trial": r.witness_trial,
            "destabilizer": None if r.destabilizer is None
            else [[_point_json(k), n] for k, n in r.destabilizer],
        })
    counts = {
        "candidates": len(cands),
        "nonempty_verified": sum(1 for r in results if r.status is Status.NONEMPTY_VERIFIED),
        "empty_verified": sum(1 for r in results if r.status is Status.EMPTY_VERIFIED),
        "candidate_only": sum(1 for r in results if r.status is Status.CANDIDATE_ONLY),
    }
    return {
        "tool": "fixedloci",
        "version": __version__,
        "kind": "quiver",
        "seed": seed,
        "input": data,
        "components": comp_json,
        "classes_enumerated": len(covers),
        "counts": counts,
    }


def _grassmann_report(data):
    problem = GrassmannProblem(int(data["m"]), int(data["n"]), tuple(data["weights"]))
    comps = classify(problem)
    comp_json = [
        {
            "factors": [list(f) for f in c.factors],
            "s_seq": list(c.s_seq),
            "j_seq": list(c.j_seq),
            "dimension": c.dimension,
        }
        for c in comps
    ]
    return {
        "tool": "fixedloci",
        "version": __version__,
        "kind": "grassmann",
        "seed": None,
        "input": data,
        "components": comp_json,
        "counts": {"components": len(comps)},
    }


def _kempf_report(data, support_arg, inner_product_arg=None):
    action = _action_from_weights(data)
    if support_arg is not None:
        support = [tuple(p) for p in json.loads(support_arg)]
    elif "support" in data:
        support = [tuple(p) for p in data["support"]]
    else:
        support = list(action.indices())
    if inner_product_arg is not None:
        Q = json.loads(inner_product_arg)
    else:
        Q = data.get("options", {}).get("inner_product")
    cone = limit_cone(action, support)
    mv, lam, _ = _kempf_data(action, frozenset(support), Q)
    return {
        "tool": "fixedloci",
        "version": __version__,
        "kind": "kempf",
        "seed": None,
        "input": data,
        "kempf": {
            "support": [list(p) for p in sorted(support)],
            "semistable": is_semistable_support(action, support),
            "stable": is_stable_support(action, support),
            "m_sign": mv.sign,
            "m_squared": _frac_str(mv.m_squared),
            "adapted": None if lam is None else list(lam),
            "limit_cone": [list(g) for g in cone.generators],
        },
    }


# ---------------------------------------------------------------------------
# rendering

def render_json(report):
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def render_table(report):
    lines = ["fixedloci %s report (%s)" % (report["version"], report["kind"])]
    if report["kind"] == "kempf":
        k = report["kempf"]
        for key in ("support", "semistable", "stable", "m_sign", "m_squared", "adapted"):
            lines.append("%-12s %s" % (key, k[key]))
        return "\n".join(lines) + "\n"
    comps = report.get("components", [])
    lines.append("components: %d" % len(comps))
    for i, c in enumerate(comps):
        if report["kind"] == "toric":
            desc = "rho=%s support=%s" % (c["rho"], c["point_pattern"])
        elif report["kind"] == "quiver":
            desc = "beta=%s" % (c["beta"],)
        else:
            desc = "factors=%s" % (c["factors"],)
        lines.append("%3d  dim=%d  %s  %s" % (i, c["dimension"], c.get("status", ""), desc))
    if "counts" in report:
        lines.append("counts: %s" % json.dumps(report["counts"], sort_keys=True))
    return "\n".join(lines) + "\n"


def render_dot(report):
    kind = report["kind"]
    if kind == "toric":
        fan = report["fan"]
        out = ["graph fan {"]
        for i, ray in enumerate(fan["rays"]):
            out.append('  r%d [label="%s" shape=box];' % (i, tuple(ray)))
        for j, cone in enumerate(fan["cones"]):
            if not cone["maximal"] or not cone["rays"]:
                continue
            out.append('  c%d [label="cone %d"];' % (j, j))
            for i in cone["rays"]:
                out.append("  c%d -- r%d;" % (j, i))
        out.append("}")
        return "\n".join(out) + "\n"
    if kind == "quiver":
        data = report["input"]
        Q, W, _alpha, _theta = _quiver_from_data(data)
        points = set()
        for c in report["components"]:
            for pt, _n in c["beta"]:
                points.add((pt[0], tuple(pt[1])))
        out = ["digraph cover_supports {"]
        names = {}
        for pt in sorted(points):
            names[pt] = "v%d" % len(names)
            out.append('  %s [label="%s %s"];' % (names[pt], pt[0], list(pt[1])))
        for a in Q.arrows:
            w = W.of(a.id)
            for (v, chi) in sorted(points):
                if v != a.src:
                    continue
                tgt = (a.tgt, tuple(c + x for c, x in zip(chi, w)))
                if tgt in points:
                    out.append('  %s -> %s [label="%s"];' % (names[(v, chi)], names[tgt], a.id))
        out.append("}")
        base = ["digraph quiver {"]
        for v in data["vertices"]:
            base.append('  "%s";' % v)
        for a in data["arrows"]:
            base.append('  "%s" -> "%s" [label="%s"];' % (a["src"], a["tgt"], a["id"]))
        base.append("}")
        return "\n".join(out) + "\n" + "\n".join(base) + "\n"
    raise ValidationError("dot output is only available for toric and quiver reports")


# ---------------------------------------------------------------------------
# entry point

def build_parser():
    p = argparse.ArgumentParser(prog="fixedloci",
                                description="torus fixed points of GIT quotients")
    p.add_argument("--version", action="version", version="fixedloci " + __version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("file", help="JSON problem file")
        sp.add_argument("--out", help="write the report here instead of stdout")
        sp.add_argument("--format", choices=("json", "table", "dot"), default="json")
        sp.add_argument("--verbose", action="store_true", help="timing on stderr")

    t = sub.add_parser("toric", help="fan + fixed points of a toric quotient")
    common(t)
    q = sub.add_parser("quiver", help="cover classes + certification for quiver moduli")
    common(q)
    q.add_argument("--seed", type=int, default=None)
    q.add_argument("--prime", type=int, default=None)
    q.add_argument("--trials", type=int, default=None)
    q.add_argument("--window", type=int, default=None)
    g = sub.add_parser("grassmann", help="fixed components of a weighted Grassmannian")
    common(g)
    k = sub.add_parser("kempf", help="stability and optimal destabilizer for a support")
    common(k)
    k.add_argument("--support", default=None,
                   help='JSON list of [item, copy] pairs; default: the full support')
    k.add_argument("--inner-product", dest="inner_product", default=None,
                   help="JSON matrix overriding the problem file's inner product")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    t0 = time.monotonic()
    try:
        data = load_problem(args.file)
        if data["kind"] != ("weights" if args.command == "kempf" else args.command):
            raise ValidationError(
                "problem kind %r does not match subcommand %r" % (data["kind"], args.command)
            )
        if args.command == "toric":
            report = _toric_report(data, seed=None)
        elif args.command == "quiver":
            report = _quiver_report(data, args.seed, args.prime, args.trials, args.window)
        elif args.command == "grassmann":
            report = _grassmann_report(data)
        else:
            report = _kempf_report(data, args.support, args.inner_product)
    except TooLarge as exc:
        print("guard error: %s" % exc, file=sys.stderr)
        return 3
    except FixedLociError as exc:
        print("validation error: %s" % exc, file=sys.stderr)
        return 2

    if args.format == "json":
        text = render_json(report)
    elif args.format == "table":
        text = render_table(report)
    else:
        try:
            text = render_dot(report)
        except FixedLociError as exc:
            print("validation error: %s" % exc, file=sys.stderr)
            return 2
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.verbose:
        print("elapsed: %.3fs" % (time.monotonic() - t0), file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
