"""Command-line front end.

Subcommands: transform, moments, resultant, boundary, special, probe,
verify.  Complex literals use the form "a+bi" (spaces allowed); CSV floats
carry 17 significant digits for round-trip fidelity.  Exit codes: 0 on
success, 1 when `verify` finds a failing check, 2 on input/domain parse
errors, 3 on evaluation-region errors.

The environment variable EXPTRANSFORM_THREADS caps the worker count of the
underlying linear-algebra thread pools.
"""

import argparse
import json
import os
import sys

import numpy as np

from . import verify as verify_mod
from .analysis import probe_samples, rationality_probe
from .domains import (
    boundary_components,
    domain_from_json,
    quadrature_rule,
)
from .moments import moment_table
from .polyalg import ComplexPoly, RationalFn
from .resultants import meromorphic_resultant, sylvester_resultant
from .specialfn import (
    F2Params,
    appell_f2_integral,
    appell_f2_series,
    bernoulli_exp_transform,
    hubbell_integral,
)
from .transforms import (
    EvaluationRegionError,
    HermitianRational,
    exp_transform_closed,
    exp_transform_moments,
    exp_transform_quadrature,
    pushforward_root,
)

FLOAT_FMT = "%.17g"


def parse_complex(text):
    """Parse 'a+bi' with optional spaces; plain reals and 'bi' also work."""
    cleaned = text.replace(" ", "").replace("i", "j")
    try:
        return complex(cleaned)
    except ValueError as exc:
        raise ValueError(f"cannot parse complex literal {text!r}") from exc


def _fmt(x):
    return FLOAT_FMT % float(x)


def _load_domain(path):
    with open(path, "r", encoding="utf-8") as fh:
        return domain_from_json(json.load(fh))


def _apply_thread_cap():
    cap = os.environ.get("EXPTRANSFORM_THREADS")
    if not cap:
        return
    try:
        n = max(1, int(cap))
    except ValueError:
        return
    try:
        import threadpoolctl

        threadpoolctl.threadpool_limits(limits=n)
    except Exception:
        os.environ.setdefault("OMP_NUM_THREADS", str(n))


# ----------------------------------------------------------------------
# subcommands


def cmd_transform(args):
    try:
        D = _load_domain(args.domain)
        z = parse_complex(args.z)
        w = parse_complex(args.w)
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        if args.method == "quadrature":
            sample = exp_transform_quadrature(D, z, w, tol=args.tol, resolution=args.resolution)
        elif args.method == "moments":
            table = moment_table(D, args.maxdeg, tol=args.tol)
            sample = exp_transform_moments(table, z, w, tol=args.tol)
        elif args.method == "closed":
            sample = exp_transform_closed(D, z, w)
        else:  # pushforward
            if not args.map:
                print("error: --method pushforward requires --map", file=sys.stderr)
                return 2
            with open(args.map, "r", encoding="utf-8") as fh:
                f = RationalFn.from_json(json.load(fh))
            E1 = _closed_form_hermitian(D)
            value = pushforward_root(E1, f, f.degree, z, w)
            sample = type("S", (), {"value": value, "est_error": 0.0, "method": "pushforward"})
    except EvaluationRegionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    out = {
        "value": [sample.value.real, sample.value.imag],
        "est_error": sample.est_error,
        "method": sample.method,
    }
    print(json.dumps(out))
    return 0


def _closed_form_hermitian(D):
    from .domains import Annulus, Disk

    if isinstance(D, Disk):
        return HermitianRational.disk_exterior(D.a, D.R)
    if isinstance(D, Annulus):
        return HermitianRational.annulus_exterior(D.r, D.R)
    raise ValueError("pushforward source needs a disk or annulus domain")


def cmd_moments(args):
    try:
        D = _load_domain(args.domain)
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    kwargs = {}
    if args.resolution:
        kwargs["resolution"] = args.resolution
    table = moment_table(D, args.maxdeg, **kwargs)
    if args.closed_form and table.source != "closed_form":
        print("error: no closed form for this domain", file=sys.stderr)
        return 2
    print("p,q,re,im")
    for p in range(args.maxdeg + 1):
        for q in range(args.maxdeg + 1):
            v = table[p, q]
            print(f"{p},{q},{_fmt(v.real)},{_fmt(v.imag)}")
    return 0


def cmd_resultant(args):
    try:
        if args.f and args.g:
            with open(args.f, "r", encoding="utf-8") as fh:
                f = RationalFn.from_json(json.load(fh))
            with open(args.g, "r", encoding="utf-8") as fh:
                g = RationalFn.from_json(json.load(fh))
            value = meromorphic_resultant(f, g)
        elif args.A and args.B:
            A = ComplexPoly.from_json(json.loads(args.A) if args.A.startswith("[") else json.load(open(args.A)))
            B = ComplexPoly.from_json(json.loads(args.B) if args.B.startswith("[") else json.load(open(args.B)))
            value = sylvester_resultant(A, B)
        else:
            print("error: need --A/--B (polynomials) or --f/--g (rational functions)", file=sys.stderr)
            return 2
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"{_fmt(value.real)} {_fmt(value.imag)}")
    return 0


def cmd_boundary(args):
    try:
        D = _load_domain(args.domain)
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        comps = boundary_components(D, args.count)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    first = True
    for comp in comps:
        if not first:
            print()
        first = False
        for pt in comp:
            print(f"{_fmt(pt.real)},{_fmt(pt.imag)}")
    if args.ray:
        # diagonal transform along an outward ray from the first boundary
        # point: decays to zero approaching the curve
        b = comps[0][0]
        direction = b / abs(b) if abs(b) > 0 else 1.0
        print()
        print("offset,E")
        for off in np.geomspace(args.ray_max, 1e-3, args.ray_points):
            z = b + off * direction
            try:
                val = exp_transform_quadrature(D, z, z, resolution=300, depth=4).value
            except ValueError:
                continue
            print(f"{_fmt(off)},{_fmt(val.real)}")
    return 0


def cmd_special(args):
    try:
        if args.what == "f2":
            p = F2Params(
                args.a, args.b, args.bp, args.c, args.cp, parse_complex(args.x), parse_complex(args.y)
            )
            if args.method == "series":
                val = appell_f2_series(p, tol=args.tol)
            else:
                val = appell_f2_integral(p, tol=args.tol)
            out = {"value": [val.real, val.imag], "method": args.method}
        elif args.what == "hubbell":
            val = hubbell_integral(args.s, args.t, tol=args.tol)
            out = {"value": val, "method": "antiderivative-quadrature"}
        else:  # bernoulli-e
            val = bernoulli_exp_transform(parse_complex(args.z), parse_complex(args.w))
            out = {"value": [val.real, val.imag], "method": "closed_form"}
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    print(json.dumps(out))
    return 0


def cmd_probe(args):
    try:
        D = _load_domain(args.domain)
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    nodes, weights = quadrature_rule(D, args.resolution, 5)
    cn = np.conj(nodes)

    def evaluator(z, w):
        return np.exp(-np.sum(weights / ((nodes - z) * (cn - np.conj(w)))) / np.pi)

    try:
        samples = probe_samples(D, evaluator, args.samples)
        reports = rationality_probe(samples, args.dmax)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    print(json.dumps([{"d": r.d, "residual": r.residual} for r in reports]))
    return 0


def cmd_verify(args):
    results = verify_mod.run_checks(only=args.only, seed=args.seed)
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status}  {r.name:<{width}}  {r.seconds:7.2f}s  {r.detail}")
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return 1 if failed else 0


# ----------------------------------------------------------------------


def build_parser():
    ap = argparse.ArgumentParser(prog="exptransform", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    t = sub.add_parser("transform", help="evaluate the exponential transform")
    t.add_argument("eval", nargs="?", default="eval", choices=["eval"], help=argparse.SUPPRESS)
    t.add_argument("--domain", required=True)
    t.add_argument("--z", required=True)
    t.add_argument("--w", required=True)
    t.add_argument(
        "--method", default="quadrature", choices=["quadrature", "moments", "closed", "pushforward"]
    )
    t.add_argument("--tol", type=float, default=1e-8)
    t.add_argument("--resolution", type=int, default=600)
    t.add_argument("--maxdeg", type=int, default=40, help="moment table size for --method moments")
    t.add_argument("--map", help="rational map JSON for --method pushforward")
    t.set_defaults(func=cmd_transform)

    m = sub.add_parser("moments", help="moment table as CSV")
    m.add_argument("--domain", required=True)
    m.add_argument("--maxdeg", type=int, required=True)
    m.add_argument("--closed-form", action="store_true", dest="closed_form")
    m.add_argument("--resolution", type=int, default=0)
    m.set_defaults(func=cmd_moments)

    r = sub.add_parser("resultant", help="polynomial or meromorphic resultant")
    r.add_argument("--A", help="polynomial JSON (inline or file path)")
    r.add_argument("--B", help="polynomial JSON (inline or file path)")
    r.add_argument("--f", help="rational function JSON file")
    r.add_argument("--g", help="rational function JSON file")
    r.set_defaults(func=cmd_resultant)

    b = sub.add_parser("boundary", help="boundary contour CSV")
    b.add_argument("--domain", required=True)
    b.add_argument("--count", type=int, default=256)
    b.add_argument("--ray", action="store_true", help="append diagonal-transform decay along a ray")
    b.add_argument("--ray-max", type=float, default=1.0)
    b.add_argument("--ray-points", type=int, default=12)
    b.set_defaults(func=cmd_boundary)

    s = sub.add_parser("special", help="special function evaluations")
    ssub = s.add_subparsers(dest="what", required=True)
    f2 = ssub.add_parser("f2")
    f2.add_argument("--a", type=float, required=True)
    f2.add_argument("--b", type=float, required=True)
    f2.add_argument("--bp", type=float, required=True)
    f2.add_argument("--c", type=float, required=True)
    f2.add_argument("--cp", type=float, required=True)
    f2.add_argument("--x", required=True)
    f2.add_argument("--y", required=True)
    f2.add_argument("--method", default="series", choices=["series", "integral"])
    f2.add_argument("--tol", type=float, default=1e-10)
    f2.set_defaults(func=cmd_special)
    hb = ssub.add_parser("hubbell")
    hb.add_argument("--s", type=float, required=True)
    hb.add_argument("--t", type=float, required=True)
    hb.add_argument("--tol", type=float, default=1e-10)
    hb.set_defaults(func=cmd_special)
    be = ssub.add_parser("bernoulli-e")
    be.add_argument("--z", required=True)
    be.add_argument("--w", required=True)
    be.set_defaults(func=cmd_special)

    p = sub.add_parser("probe", help="rationality probe")
    p.add_argument("--domain", required=True)
    p.add_argument("--dmax", type=int, default=6)
    p.add_argument("--samples", type=int, default=900)
    p.add_argument("--resolution", type=int, default=400)
    p.set_defaults(func=cmd_probe)

    v = sub.add_parser("verify", help="run the acceptance checks")
    v.add_argument("--only", default=None)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)
    return ap


def main(argv=None):
    _apply_thread_cap()
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
