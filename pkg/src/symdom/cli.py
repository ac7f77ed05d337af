"""Command-line interface: ``symdom <command> ...``.

Exit codes: 0 success, 1 failing verification, 2 malformed input or
configuration, 3 point outside the domain, 4 numeric limit did not converge.
"""

import argparse
import json
import math
import os
import sys
from datetime import datetime, timezone

from . import boundary, geometry, maps, verify
from .config import default_tol
from .serialize import (
    MalformedInput,
    dumps,
    element_from_json,
    map_from_json,
    spec_from_json,
)
from .triple import OutsideDomainError, ShapeError

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_OUTSIDE, EXIT_NONCONVERGENCE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path} is not valid JSON: {exc}") from None


def _schedule(text):
    if text is None:
        return None
    try:
        values = tuple(float(t) for t in text.split(","))
    except ValueError:
        raise MalformedInput(f"bad schedule {text!r}; expected t1,t2,...") from None
    if len(values) < 2:
        raise MalformedInput("a schedule needs at least two values")
    return values


def _limit_json(rep):
    return {
        "value": rep.value,
        "converged": rep.converged,
        "divergent": rep.divergent,
        "trace": [[t, v] for t, v in rep.trace],
    }


def _point(path):
    x = element_from_json(_load(path))
    if not x.in_ball():
        raise OutsideDomainError(f"{path}: element has norm >= 1")
    return x


def cmd_dist(args):
    x, y = _point(args.x), _point(args.y)
    if x.space != y.space:
        raise MalformedInput("elements live in different spaces")
    out = {}
    if args.metric in ("both", "caratheodory"):
        out["caratheodory"] = geometry.caratheodory_distance(x, y)
    if args.metric in ("both", "bergman"):
        out["bergman"] = geometry.bergman_distance(x, y)
    return out, EXIT_OK


def cmd_horo(args):
    spec = spec_from_json(_load(args.spec))
    z = _point(args.z)
    rep = boundary.horofunction_eval(spec, z, _schedule(args.schedule) or (10.0, 15.0, 20.0))
    out = _limit_json(rep)
    if len(spec.tripotents) == 1:
        out["closed_form"] = boundary.singleton_eval(spec.tripotents[0], z)
    return out, EXIT_OK if rep.converged else EXIT_NONCONVERGENCE


def _minimal(path):
    spec = spec_from_json(_load(path))
    if len(spec.tripotents) != 1:
        raise MalformedInput(f"{path}: expected a single minimal tripotent")
    return spec.tripotents[0]


def cmd_gromov(args):
    u, v = _minimal(args.u), _minimal(args.v)
    sched = _schedule(args.schedule)
    closed = boundary.gromov_singletons(u, v)
    if sched is None:
        rep = boundary.gromov_numeric(u, v)
    else:
        ks = []
        for t in sched:
            if not 0.0 < t < 1.0:
                raise MalformedInput("gromov schedule values must lie in (0, 1)")
            ks.append(-math.log10(1.0 - t))
        rep = boundary.gromov_numeric(u, v, ks)
    out = {"value": closed, "numeric": _limit_json(rep)}
    ok = rep.converged or (rep.divergent and closed == float("inf"))
    return out, EXIT_OK if ok else EXIT_NONCONVERGENCE


def cmd_detour(args):
    xi, eta = spec_from_json(_load(args.xi)), spec_from_json(_load(args.eta))
    if xi.space != eta.space:
        raise MalformedInput("specs live in different spaces")
    h_xy, h_yx = boundary.detour_cost(xi, eta), boundary.detour_cost(eta, xi)
    out = {"H_xy": h_xy, "H_yx": h_yx, "delta": h_xy + h_yx, "same_part": h_xy + h_yx < float("inf")}
    code = EXIT_OK
    if args.numeric:
        sched = _schedule(args.schedule)
        numeric = {}
        for key, (a, b) in (("H_xy", (xi, eta)), ("H_yx", (eta, xi))):
            rep = boundary.detour_cost_numeric(a, b, sched)
            numeric[key] = _limit_json(rep)
            if not (rep.converged or rep.divergent):
                code = EXIT_NONCONVERGENCE
        out["numeric"] = numeric
    return out, code


def cmd_map_check(args):
    phi = map_from_json(_load(args.map))
    report = {"name": phi.name}
    if isinstance(phi, maps.LinearTripleMap) and not phi.conjugate_linear:
        report["homomorphism"] = maps.is_triple_homomorphism(phi, args.samples, args.seed).as_dict()
        report["mobius_invariance"] = maps.mobius_invariance_check(phi, min(args.samples, 50), args.seed).as_dict()
    for metric in ("caratheodory", "bergman"):
        report[f"isometry_{metric}"] = maps.is_isometry_sampled(phi, metric, args.samples, args.seed).as_dict()
    report["rank_genus"] = maps.rank_genus_report(phi.domain, phi.codomain).as_dict()
    return report, EXIT_OK


def cmd_verify(args):
    stamp = datetime.now(timezone.utc).isoformat() if args.timestamp else None
    try:
        rep = verify.run(args.suite, args.seed, fault=args.inject_fault, timestamp=stamp)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    for e in rep.entries:
        print(f"{e.verdict.upper():4s} {e.lemma_id:36s} n={e.n_cases:<4d} resid={e.max_residual:.3e} tol={e.tolerance:.0e}", file=sys.stderr)
    return rep.as_dict(), EXIT_OK if rep.passed else EXIT_FAIL


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS, help="default relative tolerance (overrides SYMDOM_TOL)")
    common.add_argument("--out", default=argparse.SUPPRESS, help="write the JSON result here instead of stdout")
    parser = argparse.ArgumentParser(
        prog="symdom", description="Geometry of bounded symmetric domains of type I.", parents=[common]
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", parents=[common], help="Carathéodory and Bergman distances between two points")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--metric", choices=("both", "caratheodory", "bergman"), default="both")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("horo", parents=[common], help="horofunction value at a point, by ray limits")
    p.add_argument("spec")
    p.add_argument("z")
    p.add_argument("--schedule", help="t1,t2,... (default 10,15,20)")
    p.set_defaults(func=cmd_horo)

    p = sub.add_parser("gromov", parents=[common], help="Gromov product of two singletons")
    p.add_argument("u")
    p.add_argument("v")
    p.add_argument("--schedule", help="t1,t2,... in (0,1) (default 1-10^-k, k=3..8)")
    p.set_defaults(func=cmd_gromov)

    p = sub.add_parser("detour", parents=[common], help="detour costs and detour metric of two horofunctions")
    p.add_argument("xi")
    p.add_argument("eta")
    p.add_argument("--numeric", action="store_true", help="also evaluate both costs by ray limits")
    p.add_argument("--schedule", help="t1,t2,... for the numeric limits")
    p.set_defaults(func=cmd_detour)

    p = sub.add_parser("map-check", parents=[common], help="sampled homomorphism and isometry report for a map")
    p.add_argument("map")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_map_check)

    p = sub.add_parser("verify", parents=[common], help="run the lemma suite")
    p.add_argument("--suite", choices=verify.SUITES, default="all")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--inject-fault", choices=sorted(verify.FAULTS), help="replace one formula by a perturbed copy")
    p.add_argument("--timestamp", action="store_true", help="record the run time in the report")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    tol, out = getattr(args, "tol", None), getattr(args, "out", None)
    if tol is not None:
        if not tol > 0:
            print("symdom: --tol must be positive", file=sys.stderr)
            return EXIT_INPUT
        os.environ["SYMDOM_TOL"] = repr(tol)
    try:
        default_tol()
    except ValueError as exc:
        print(f"symdom: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        result, code = args.func(args)
    except (MalformedInput, ShapeError, UsageError) as exc:
        print(f"symdom: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OutsideDomainError as exc:
        print(f"symdom: {exc}", file=sys.stderr)
        return EXIT_OUTSIDE
    except ValueError as exc:
        # invalid tripotents, bad SYMDOM_TOL and similar
        print(f"symdom: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = dumps(result)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
