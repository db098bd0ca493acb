"""Command-line entry point.

Exit codes: 0 success / check passed, 1 check failed, 2 usage or input
error, 3 the inputs fall outside the hypotheses of the requested check.

JSON field names (``--format json``):

  periods       modulus, omega, order, layer_mod, points[{y, layer, re, im}], distinct[[re, im]]
  cyclotomic    d, degree, coefficients (lowest degree first)
  weyl          q, d, root, v, computed[re, im], predicted[re, im], passed
  discrepancy   d, grid, q_list, roots, estimates, strictly_decreasing
  verify ...    check, params, passed, max_defect, tolerance, details
                (plus elapsed with --timing; sampling checks carry params.seed)
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
import time
from pathlib import Path

from . import asymptotic, cyclotomic, render, supercharacter
from ._parallel import resolve_threads
from .arith import OrbitSpec
from .errors import HypothesisViolated, PeriodvizError
from .report import VerifyReport

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_HYPOTHESIS = 0, 1, 2, 3

_INT_RE = re.compile(r"^[+-]?\d+(_\d+)*$")


def _int(text: str) -> int:
    """Integer with optional underscore digit separators, e.g. ``357_193``."""
    text = text.strip()
    if not _INT_RE.match(text):
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(text.replace("_", ""))


def _int_list(text: str) -> list[int]:
    return [_int(t) for t in text.split(",") if t.strip()]


def _emit(text: str, out: str | None = None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _report_dict(rep: VerifyReport, timing: bool) -> dict:
    d = rep.to_dict()
    if not timing:
        d.pop("elapsed")
    return d


def _print_report(rep: VerifyReport, args) -> int:
    if args.format == "json":
        _emit(json.dumps(_report_dict(rep, args.timing), sort_keys=True) + "\n")
    else:
        status = "PASS" if rep.passed else "FAIL"
        params = " ".join(f"{k}={v}" for k, v in rep.params.items())
        lines = [f"{status} {rep.check} {params} max_defect={rep.max_defect:.3e} tolerance={rep.tolerance:.1e}"]
        lines += [f"  {k}: {v}" for k, v in rep.details.items()]
        if args.timing:
            lines.append(f"  elapsed: {rep.elapsed:.3f}s")
        _emit("\n".join(lines) + "\n")
    return EXIT_OK if rep.passed else EXIT_FAIL


# ---------------------------------------------------------------- subcommands


def cmd_periods(args) -> int:
    spec = OrbitSpec(args.modulus, args.omega)
    img = supercharacter.image(spec, args.layer_mod, threads=args.threads)
    vals = img.values
    layers = img.layers
    if args.format == "json":
        doc = {
            "modulus": spec.modulus,
            "omega": spec.omega,
            "order": spec.order,
            "layer_mod": img.layer_mod,
            "points": [
                {"y": y, "layer": int(layers[y]), "re": float(vals[y].real), "im": float(vals[y].imag)}
                for y in range(spec.modulus)
            ],
            "distinct": [[float(z.real), float(z.imag)] for z in img.distinct],
        }
        _emit(json.dumps(doc) + "\n", args.out)
    else:
        buf = io.StringIO()
        buf.write("y,layer,re,im\n")
        for y in range(spec.modulus):
            z = vals[y]
            buf.write(f"{y},{layers[y]},{z.real:.17g},{z.imag:.17g}\n")
        _emit(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_cyclotomic(args) -> int:
    poly = cyclotomic.cyclotomic_poly(args.d)
    if args.format == "json":
        doc = {"d": poly.index, "degree": poly.degree, "coefficients": list(poly.coefficients)}
        _emit(json.dumps(doc) + "\n")
    else:
        _emit(" ".join(str(c) for c in poly.coefficients) + "\n")
    return EXIT_OK


def cmd_gd(args) -> int:
    vals = asymptotic.g_image_samples(args.d, args.samples, args.seed, threads=args.threads)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["re", "im"])
    for z in vals:
        writer.writerow([f"{z.real:.17g}", f"{z.imag:.17g}"])
    _emit(buf.getvalue(), args.out)
    if args.out:
        sys.stderr.write(f"wrote {len(vals)} samples of g_{args.d} (seed {args.seed}) to {args.out}\n")
    return EXIT_OK


def cmd_weyl(args) -> int:
    lam = asymptotic.lambda_set(args.q, args.d)
    computed, predicted = asymptotic.weyl_sum(lam, args.v)
    tol = args.tolerance if args.tolerance is not None else 1e-9
    ok = abs(computed - predicted) < tol * lam.q
    doc = {
        "q": lam.q,
        "d": lam.d,
        "root": lam.root,
        "v": list(args.v),
        "computed": [computed.real, computed.imag],
        "predicted": [predicted.real, predicted.imag],
        "passed": bool(ok),
    }
    if args.format == "json":
        _emit(json.dumps(doc) + "\n")
    else:
        _emit(
            f"{'PASS' if ok else 'FAIL'} weyl q={lam.q} d={lam.d} root={lam.root} v={list(args.v)} "
            f"computed={computed.real:.12g}{computed.imag:+.3g}i predicted={predicted.real:g}\n"
        )
    return EXIT_OK if ok else EXIT_FAIL


def cmd_discrepancy(args) -> int:
    sets = [asymptotic.lambda_set(q, args.d) for q in args.q_list]
    est = [asymptotic.discrepancy_estimate(lam, args.grid) for lam in sets]
    decreasing = all(a > b for a, b in zip(est, est[1:]))
    if args.format == "json":
        doc = {
            "d": args.d,
            "grid": args.grid,
            "q_list": list(args.q_list),
            "roots": [lam.root for lam in sets],
            "estimates": est,
            "strictly_decreasing": decreasing,
        }
        _emit(json.dumps(doc) + "\n")
    else:
        lines = [f"q={lam.q} root={lam.root} discrepancy~{e:.6f}" for lam, e in zip(sets, est)]
        lines.append(f"strictly_decreasing={decreasing}")
        _emit("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_render(args) -> int:
    spec = OrbitSpec(args.modulus, args.omega)
    img = supercharacter.image(spec, args.layer_mod, threads=args.threads)
    cfg = render.RenderConfig(
        size_px=args.size, viewport_radius=args.viewport, point_radius_px=args.point_radius
    )
    render.write_image(render.rasterize(img, cfg), args.out)
    return EXIT_OK


def cmd_render_torus(args) -> int:
    lam = asymptotic.lambda_set(args.q, args.d)
    cfg = render.RenderConfig(size_px=args.size, point_radius_px=args.point_radius)
    render.write_image(render.scatter_torus(lam, cfg), args.out)
    return EXIT_OK


def _tol(args, default: float) -> float:
    return args.tolerance if args.tolerance is not None else default


def verify_gauss17(args) -> int:
    t0 = time.perf_counter()
    lhs, rhs, defect = asymptotic.gauss17_check()
    tol = _tol(args, 1e-12)
    rep = VerifyReport(
        "gauss17", {}, defect < tol, defect, tol, time.perf_counter() - t0, {"lhs": lhs, "rhs": rhs}
    )
    return _print_report(rep, args)


def verify_symmetry(args) -> int:
    t0 = time.perf_counter()
    spec = OrbitSpec(args.modulus, args.omega)
    tol = _tol(args, supercharacter.SET_TOL)
    img = supercharacter.image(spec, threads=args.threads)
    sym = supercharacter.verify_symmetry(img, tol)
    rep = VerifyReport(
        "symmetry",
        {"modulus": spec.modulus, "omega": spec.omega},
        sym.passed,
        max(sym.max_conjugation_defect, sym.max_rotation_defect),
        tol,
        time.perf_counter() - t0,
        {
            "k": sym.k,
            "conjugation_defect": sym.max_conjugation_defect,
            "rotation_defect": sym.max_rotation_defect,
            "distinct_values": int(len(img.distinct)),
        },
    )
    return _print_report(rep, args)


def verify_containment(args) -> int:
    rep = asymptotic.verify_containment(
        args.modulus, args.omega, _tol(args, 1e-8), threads=args.threads
    )
    return _print_report(rep, args)


def verify_hypocycloid(args) -> int:
    rep = asymptotic.verify_hypocycloid(
        args.modulus, args.omega, eps=_tol(args, supercharacter.SET_TOL), seed=args.seed,
        threads=args.threads,
    )
    return _print_report(rep, args)


def verify_minkowski(args) -> int:
    rep = asymptotic.minkowski_decomposition_check(
        args.b, args.r, args.samples, args.seed, _tol(args, supercharacter.POINT_TOL)
    )
    return _print_report(rep, args)


def verify_multiplicativity(args) -> int:
    rep = supercharacter.verify_multiplicativity(
        args.m, args.n, args.omega, _tol(args, supercharacter.SET_TOL), threads=args.threads
    )
    return _print_report(rep, args)


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=_int, default=None,
                        help="worker count (default: $PERIODVIZ_THREADS, else all cores)")
    common.add_argument("--tolerance", type=float, default=None,
                        help="override the check tolerance (pointwise 1e-9, set matching 1e-6)")
    common.add_argument("--timing", action="store_true", help="include elapsed time in reports")

    parser = argparse.ArgumentParser(prog="periodviz", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_, parent=sub):
        p = parent.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    def orbit_args(p):
        p.add_argument("--modulus", type=_int, required=True)
        p.add_argument("--omega", type=_int, required=True)

    p = add("periods", cmd_periods, "list sigma(y) for every y")
    orbit_args(p)
    p.add_argument("--layer-mod", type=_int, default=1)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out")

    p = add("cyclotomic", cmd_cyclotomic, "coefficients of Phi_d, lowest degree first")
    p.add_argument("--d", type=_int, required=True)
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = add("gd", cmd_gd, "sample the Laurent map g_d on the torus")
    p.add_argument("--d", type=_int, required=True)
    p.add_argument("--samples", type=_int, required=True)
    p.add_argument("--seed", type=_int, required=True)
    p.add_argument("--out")

    p = add("weyl", cmd_weyl, "exponential sum over Lambda_q against its 0-or-q prediction")
    p.add_argument("--q", type=_int, required=True)
    p.add_argument("--d", type=_int, required=True)
    p.add_argument("--v", type=_int_list, required=True)
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = add("discrepancy", cmd_discrepancy, "grid-box discrepancy estimates along a q sequence")
    p.add_argument("--d", type=_int, required=True)
    p.add_argument("--q-list", type=_int_list, required=True)
    p.add_argument("--grid", type=_int, default=20)
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = add("render", cmd_render, "rasterize a period image to .png or .ppm")
    orbit_args(p)
    p.add_argument("--layer-mod", type=_int, default=1)
    p.add_argument("--size", type=_int, default=1024)
    p.add_argument("--viewport", type=float, default=None)
    p.add_argument("--point-radius", type=_int, default=1)
    p.add_argument("--out", required=True)

    p = add("render-torus", cmd_render_torus, "scatter plot of Lambda_q on the 2-torus")
    p.add_argument("--q", type=_int, required=True)
    p.add_argument("--d", type=_int, required=True)
    p.add_argument("--size", type=_int, default=512)
    p.add_argument("--point-radius", type=_int, default=1)
    p.add_argument("--out", required=True)

    vp = sub.add_parser("verify", help="run a verification check")
    vsub = vp.add_subparsers(dest="check", required=True)

    def vadd(name, func, help_):
        p = add(name, func, help_, parent=vsub)
        p.add_argument("--format", choices=["text", "json"], default="text")
        return p

    vadd("gauss17", verify_gauss17, "16 cos(2 pi/17) against the nested radical")
    orbit_args(vadd("symmetry", verify_symmetry, "k-fold dihedral symmetry, k = gcd(n, w-1)"))
    orbit_args(vadd("containment", verify_containment, "sigma values equal g_d at torus points"))
    p = vadd("hypocycloid", verify_hypocycloid, "period values lie in H_r")
    orbit_args(p)
    p.add_argument("--seed", type=_int, default=0)
    p = vadd("minkowski", verify_minkowski, "g_{r^b} as a sum of g_r copies")
    p.add_argument("--r", type=_int, required=True)
    p.add_argument("--b", type=_int, required=True)
    p.add_argument("--samples", type=_int, default=10_000)
    p.add_argument("--seed", type=_int, default=0)
    p = vadd("multiplicativity", verify_multiplicativity, "image mod mn as a product set")
    p.add_argument("--m", type=_int, required=True)
    p.add_argument("--n", type=_int, required=True)
    p.add_argument("--omega", type=_int, required=True)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    # "--v -2,1" would otherwise be read as an option
    for i in range(len(argv) - 1):
        if argv[i] == "--v" and argv[i + 1].startswith("-"):
            argv[i : i + 2] = [f"--v={argv[i + 1]}", ""]
    argv = [a for a in argv if a != ""]
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    args.threads = resolve_threads(args.threads)
    try:
        return args.func(args)
    except HypothesisViolated as exc:
        sys.stderr.write(f"periodviz: hypothesis not satisfied: {exc}\n")
        return EXIT_HYPOTHESIS
    except (PeriodvizError, ValueError) as exc:
        sys.stderr.write(f"periodviz: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
