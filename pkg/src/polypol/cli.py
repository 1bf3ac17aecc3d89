"""Command-line interface.

One binary, one subcommand per capability:

    validate, area, moments, mgf-series,
    transform {eval, grid, series}, polygon-polar,
    canonical, residues, adjoint,
    harmonic [check-restriction], dual-locus, probe, scan, verify

Regions come from builder names (--shape) or region JSON files
(--region).  Every output document embeds the run configuration; exact
values print as "p/q", floats with 17 significant digits.  Exit codes:
0 success, 1 computation failure (structured JSON error on stderr),
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import acceptance, canonical, fantappie, harmonic, moments, singular
from .algebra import format_rational, poly2_to_json
from .config import RunConfig, from_env
from .errors import PolypolError
from .region import (ValidationReport, centered_square, from_json, polygon,
                     rectangle, sector_from_tau, signed_area,
                     standard_triangle, to_json, unit_disk, upper_half_disk,
                     validate)


def _fmt(x):
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, float):
        return float(f"{x:.17g}")
    if isinstance(x, complex):
        return [float(f"{x.real:.17g}"), float(f"{x.imag:.17g}")]
    return x


def parse_shape(text: str):
    """Builder names, optionally parametrized:

    triangle | square | disk | half-disk | rectangle:A,B |
    sector:TAU0,TAU1 (TAU1 may be 'inf') | polygon:x1,y1;x2,y2;...
    """
    name, _, arg = text.partition(":")
    if name == "triangle":
        return standard_triangle()
    if name == "square":
        return centered_square()
    if name == "disk":
        return unit_disk()
    if name == "half-disk":
        return upper_half_disk()
    if name == "rectangle":
        a, b = (Fraction(s) for s in arg.split(","))
        return rectangle(a, b)
    if name == "sector":
        t0, t1 = arg.split(",")
        return sector_from_tau(Fraction(t0), None if t1 == "inf" else Fraction(t1))
    if name == "polygon":
        verts = [tuple(Fraction(c) for c in pair.split(","))
                 for pair in arg.split(";")]
        return polygon(verts)
    raise PolypolError(f"unknown shape {text!r}")


def _load_region(args):
    if getattr(args, "region", None):
        with open(args.region) as fh:
            return from_json(json.load(fh))
    if getattr(args, "shape", None):
        return parse_shape(args.shape)
    raise PolypolError("provide --shape or --region")


def _config(args) -> RunConfig:
    overrides = {}
    if getattr(args, "seed", None) is not None:
        overrides["seed"] = args.seed
    if getattr(args, "output", None):
        overrides["output"] = args.output
    return from_env(**overrides)


def _emit_json(config: RunConfig, result: dict) -> None:
    print(json.dumps({"config": config.header(), "result": result}, indent=2))


def _emit_csv(config: RunConfig, header: list[str], rows) -> None:
    for key, val in config.header().items():
        print(f"# {key}={val}")
    print(",".join(header))
    for row in rows:
        print(",".join(str(_fmt(c)) for c in row))


def _poly2_doc(p):
    return poly2_to_json(p)


# ---------------------------------------------------------------------------
# subcommand handlers

def cmd_validate(args):
    cfg = _config(args)
    p = _load_region(args)
    report: ValidationReport = validate(p, cfg)
    _emit_json(cfg, {
        "all_passed": report.all_passed,
        "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail}
                   for c in report.checks]})
    return 0 if report.all_passed else 1


def cmd_area(args):
    cfg = _config(args)
    p = _load_region(args)
    _emit_json(cfg, {"area": _fmt(signed_area(p, cfg))})
    return 0


def cmd_moments(args):
    cfg = _config(args)
    p = _load_region(args)
    table = moments.moment_table(p, args.max_degree, cfg)
    if cfg.output == "csv":
        rows = [(i, j, _fmt(v)) for (i, j), v in sorted(table.values.items())]
        _emit_csv(cfg, ["i", "j", "value"], rows)
    else:
        _emit_json(cfg, {"max_degree": table.max_degree,
                         "fingerprint": table.fingerprint,
                         "values": {f"({i},{j})": _fmt(v)
                                    for (i, j), v in sorted(table.values.items())}})
    return 0


def _series_doc(series):
    return {"order": series.order,
            "coefficients": {f"({i},{j})": _fmt(c)
                             for (i, j), c in sorted(series.coefficients.items())}}


def cmd_mgf_series(args):
    cfg = _config(args)
    p = _load_region(args)
    _emit_json(cfg, _series_doc(moments.normalized_mgf_series(p, args.order, cfg)))
    return 0


def cmd_transform(args):
    cfg = _config(args)
    p = _load_region(args)
    if args.transform_cmd == "eval":
        tv = fantappie.transform_eval(p, (args.u, args.v), cfg)
        _emit_json(cfg, {"value": _fmt(tv.value), "method": tv.method,
                         "error_estimate": _fmt(tv.error_estimate)})
    elif args.transform_cmd == "series":
        _emit_json(cfg, _series_doc(fantappie.transform_series(p, args.order, cfg)))
    else:                                  # grid
        import numpy as np
        rows = []
        for u in np.linspace(args.umin, args.umax, args.n):
            for v in np.linspace(args.vmin, args.vmax, args.n):
                try:
                    tv = fantappie.transform_eval(p, (u, v), cfg, fast_check=True)
                    rows.append((float(u), float(v), _fmt(tv.value), "ok"))
                except PolypolError as exc:
                    rows.append((float(u), float(v), "", type(exc).__name__))
        _emit_csv(cfg, ["u", "v", "F", "status"], rows)
    return 0


def cmd_polygon_polar(args):
    cfg = _config(args)
    verts = [tuple(Fraction(c) for c in pair.split(","))
             for pair in args.vertices.split(";")]
    p = polygon(verts)
    F = fantappie.polygon_transform_exact(p)
    res = fantappie.polar_duality_check(p)
    _emit_json(cfg, {
        "transform": {"num": _poly2_doc(F.num), "den": _poly2_doc(F.den)},
        "adjoint": _poly2_doc(res.adjoint),
        "degree_ok": res.degree_ok})
    return 0


def cmd_canonical(args):
    cfg = _config(args)
    p = _load_region(args)
    form = canonical.canonical_form(p, cfg)
    _emit_json(cfg, {
        "kappa": _fmt(form.kappa),
        "numerator": _poly2_doc(form.numerator),
        "factors": [_poly2_doc(f) for f in form.denominator_factors]})
    return 0


def cmd_residues(args):
    cfg = _config(args)
    p = _load_region(args)
    form = canonical.canonical_form(p, cfg)
    rows = []
    for v in p.genuine_vertices:
        r = canonical.iterated_residue(form, v, cfg)
        rows.append({"vertex": [_fmt(v.point[0]), _fmt(v.point[1])],
                     "residue": _fmt(r)})
    _emit_json(cfg, {"residues": rows})
    return 0


def cmd_adjoint(args):
    cfg = _config(args)
    p = _load_region(args)
    adj = canonical.adjoint(p, cfg)
    _emit_json(cfg, {"adjoint": _poly2_doc(adj), "degree": adj.degree})
    return 0


def cmd_harmonic(args):
    cfg = _config(args)
    p = _load_region(args)
    if args.mode == "check-restriction":
        rep = harmonic.restriction_identity_check(p, args.order, cfg)
        _emit_json(cfg, {
            "order": rep.order,
            "exact": rep.exact,
            "passed": rep.all_exact if rep.exact else rep.max_delta <= 1e-9,
            "max_delta": _fmt(rep.max_delta),
            "rows": [{"j": r.j, "delta": _fmt(r.delta),
                      "exact_match": r.exact_match} for r in rep.rows]})
        return 0
    series = harmonic.harmonic_moments(p, args.order, cfg)
    def cx(z):
        if hasattr(z, "re"):
            return [_fmt(z.re), _fmt(z.im)]
        return _fmt(complex(z))
    _emit_json(cfg, {"order": series.order,
                     "mu": [cx(m) for m in series.mu],
                     "S": [cx(m) for m in series.S_coeffs],
                     "G": [cx(m) for m in series.G_coeffs]})
    return 0


def cmd_dual_locus(args):
    cfg = _config(args)
    p = _load_region(args)
    sup = singular.singular_support(p, cfg)
    _emit_json(cfg, {
        "vertex_lines": [_poly2_doc(l) for l in sup.vertex_lines],
        "never_singular": list(sup.never_singular),
        "dual_curves": [_poly2_doc(c) for c in sup.dual_curves]})
    return 0


def cmd_probe(args):
    cfg = _config(args)
    p = _load_region(args)
    sup = singular.singular_support(p, cfg)
    comps = sup.active_components()
    if not 0 <= args.component < len(comps):
        raise PolypolError(f"component index out of range (have {len(comps)})")
    base = tuple(float(s) for s in args.base.split(","))
    direction = tuple(float(s) for s in args.dir.split(","))
    est = singular.probe_exponent(p, comps[args.component], base, direction, cfg)
    _emit_json(cfg, {
        "component": _poly2_doc(est.component),
        "base_point": [est.base_point.u, est.base_point.v],
        "direction": [est.direction.u, est.direction.v],
        "exponent": _fmt(est.exponent),
        "residual": _fmt(est.residual),
        "classification": est.classification,
        "samples": [[_fmt(e), _fmt(f)] for e, f in est.samples]})
    return 0


def cmd_scan(args):
    cfg = _config(args)
    p = _load_region(args)
    window = tuple(float(s) for s in args.window.split(",")) if args.window \
        else (-2.0, 2.0, -2.0, 2.0)
    rep = singular.conjecture_scan(p, grid=args.grid, window=window, config=cfg)
    print(f"# note={rep.note}")
    print(f"# flagged_contained={rep.flagged_contained}")
    _emit_csv(cfg, ["u", "v", "absF", "flagged", "nearest_component", "distance"],
              [(r.u, r.v, _fmt(r.abs_value),
                {"ok": 0, "flagged": 1, "kernel_on_boundary": ""}[r.status],
                r.nearest_component, _fmt(r.distance)) for r in rep.rows])
    return 0 if rep.flagged_contained else 1


def cmd_verify(args):
    cfg = _config(args)
    if args.suite not in (None, "paper-examples"):
        raise PolypolError(f"unknown suite {args.suite!r}")
    if args.only:
        results = [acceptance.run_criterion(cid, cfg) for cid in args.only]
    else:
        results = acceptance.run_all(cfg)
    width = max(len(r.name) for r in results)
    all_ok = True
    for r in results:
        mark = "PASS" if r.passed else "FAIL"
        all_ok &= r.passed
        print(f"[{mark}] {r.cid:>2}  {r.name:<{width}}  {r.seconds:6.1f}s  {r.detail}")
    print(f"{'all criteria passed' if all_ok else 'FAILURES present'} "
          f"(seed {cfg.seed})")
    return 0 if all_ok else 1


def cmd_emit_region(args):
    cfg = _config(args)
    p = _load_region(args)
    _emit_json(cfg, to_json(p))
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="polypol",
        description="moments, transforms, adjoints and canonical forms of "
                    "plane regions with rational boundary arcs")

    def add_region(sp):
        sp.add_argument("--shape", help="builder name, e.g. triangle, disk, "
                        "rectangle:1,2, sector:0,1, polygon:0,0;1,0;0,1")
        sp.add_argument("--region", help="path to a region JSON file")
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--output", choices=["json", "csv"], default=None)

    sub = ap.add_subparsers(dest="cmd", required=True)

    add_region(sub.add_parser("validate", help="run the region validator"))
    add_region(sub.add_parser("area", help="signed area"))

    sp = sub.add_parser("moments", help="moment table")
    add_region(sp)
    sp.add_argument("--max-degree", type=int, required=True)

    sp = sub.add_parser("mgf-series", help="normalized moment series")
    add_region(sp)
    sp.add_argument("--order", type=int, required=True)

    sp = sub.add_parser("transform", help="transform evaluation")
    tsub = sp.add_subparsers(dest="transform_cmd", required=True)
    spe = tsub.add_parser("eval")
    add_region(spe)
    spe.add_argument("--u", type=float, required=True)
    spe.add_argument("--v", type=float, required=True)
    spg = tsub.add_parser("grid")
    add_region(spg)
    for flag in ("--umin", "--umax", "--vmin", "--vmax"):
        spg.add_argument(flag, type=float, required=True)
    spg.add_argument("--n", type=int, required=True)
    sps = tsub.add_parser("series")
    add_region(sps)
    sps.add_argument("--order", type=int, required=True)

    sp = sub.add_parser("polygon-polar", help="exact polygon transform and polar adjoint")
    sp.add_argument("--vertices", required=True, help="x1,y1;x2,y2;...")
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--output", choices=["json", "csv"], default=None)

    add_region(sub.add_parser("canonical", help="canonical form"))
    add_region(sub.add_parser("residues", help="iterated residues at vertices"))
    add_region(sub.add_parser("adjoint", help="adjoint curve"))

    sp = sub.add_parser("harmonic", help="harmonic moments and generating functions")
    sp.add_argument("mode", nargs="?", choices=["check-restriction"])
    add_region(sp)
    sp.add_argument("--order", type=int, required=True)

    add_region(sub.add_parser("dual-locus", help="singular support in the dual plane"))

    sp = sub.add_parser("probe", help="local exponent probe")
    add_region(sp)
    sp.add_argument("--component", type=int, required=True,
                    help="index into the active support components")
    sp.add_argument("--base", required=True, help="u,v near the component")
    sp.add_argument("--dir", required=True, help="du,dv approach direction")

    sp = sub.add_parser("scan", help="dual-plane blow-up scan")
    add_region(sp)
    sp.add_argument("--grid", type=int, default=101)
    sp.add_argument("--window", help="umin,umax,vmin,vmax (default -2,2,-2,2)")

    sp = sub.add_parser("verify", help="run the acceptance suite")
    sp.add_argument("--suite", default="paper-examples")
    sp.add_argument("--only", type=int, action="append",
                    help="run a single criterion (repeatable)")
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--output", choices=["json", "csv"], default=None)

    add_region(sub.add_parser("emit-region", help="print a builder as region JSON"))
    return ap


_HANDLERS = {
    "validate": cmd_validate,
    "area": cmd_area,
    "moments": cmd_moments,
    "mgf-series": cmd_mgf_series,
    "transform": cmd_transform,
    "polygon-polar": cmd_polygon_polar,
    "canonical": cmd_canonical,
    "residues": cmd_residues,
    "adjoint": cmd_adjoint,
    "harmonic": cmd_harmonic,
    "dual-locus": cmd_dual_locus,
    "probe": cmd_probe,
    "scan": cmd_scan,
    "verify": cmd_verify,
    "emit-region": cmd_emit_region,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _HANDLERS[args.cmd](args)
    except PolypolError as exc:
        json.dump({"error": type(exc).__name__, "message": str(exc)},
                  sys.stderr, indent=2)
        sys.stderr.write("\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
