"""Command line entry point: ``devgeom {frenet,forms,surface,classify,verify}``.

Exit codes: 0 success, 1 verification failure, 2 usage or configuration
error, 3 numeric, singular or I/O error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

import numpy as np

from .classification import (
    KNOWN_DEFECTS,
    THEOREM_KINDS,
    TOL,
    VerifyGrid,
    classify_parameter_curves,
    verify_theorem,
)
from .curves import CLASS_TOL, classify_curve, default_samples, frenet_apparatus, parse_curve, series_at
from .errors import (
    ClassificationError,
    ConstructionError,
    DomainError,
    GeometryError,
    NumericError,
    PreconditionError,
)
from .export import dumps_json, export_mesh, fmt_num, mesh_from_surface
from .ruled import KINDS, fundamental_forms, gaussian_from_forms, gaussian_ruled, surface_jet
from .special import closed_form_forms, make_special

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    curve: str
    kind: str | None = None
    s: float | None = None
    v: float | None = None
    s_range: tuple | None = None
    v_range: tuple = (-2.0, 2.0)
    grid: tuple | None = None
    tol: float | None = None
    out: str | None = None
    fmt: str | None = None
    theorem: str | None = None

    def __post_init__(self):
        for rng in (self.s_range, self.v_range):
            if rng is not None and not rng[0] < rng[1]:
                raise UsageError(f"empty range {rng[0]}:{rng[1]}")
        if self.grid is not None and min(self.grid) < 2:
            raise UsageError("grid dimensions must be at least 2")
        if self.tol is not None and not self.tol > 0:
            raise UsageError("tolerance must be positive")


def _range(text):
    try:
        a, b = (float(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a:b, got {text!r}") from None
    return a, b


def _grid(text):
    try:
        r, c = (int(x) for x in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected RxC, got {text!r}") from None
    return r, c


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="devgeom", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats, default_fmt):
        sp.add_argument("--curve", required=True,
                        help="line | circle:r=R | helix:a=A,b=B | slant:sigma=S | twisted-cubic | FILE.json")
        sp.add_argument("--tol", type=float)
        sp.add_argument("--out", help="output file (default: standard output)")
        sp.add_argument("--format", dest="fmt", choices=formats, default=default_fmt)

    sp = sub.add_parser("frenet", help="Frenet frame, curvature, torsion and sigma at a point")
    common(sp, ("text", "json"), "text")
    sp.add_argument("--s", type=float)

    sp = sub.add_parser("forms", help="fundamental forms of a special surface at (s, v)")
    common(sp, ("text", "json"), "text")
    sp.add_argument("--type", dest="kind", choices=KINDS, required=True)
    sp.add_argument("--s", type=float)
    sp.add_argument("--v", type=float, default=0.5)

    sp = sub.add_parser("surface", help="sample a special surface and export a mesh")
    common(sp, ("obj", "csv", "json"), "obj")
    sp.add_argument("--type", dest="kind", choices=KINDS, required=True)
    sp.add_argument("--s-range", type=_range)
    sp.add_argument("--v-range", type=_range, default=(-2.0, 2.0))
    sp.add_argument("--grid", type=_grid, default=(32, 16))

    sp = sub.add_parser("classify", help="curve class, or parameter curves of a surface with --type")
    common(sp, ("text", "json"), "text")
    sp.add_argument("--type", dest="kind", choices=KINDS)
    sp.add_argument("--s-range", type=_range)
    sp.add_argument("--v-range", type=_range, default=(-2.0, 2.0))
    sp.add_argument("--grid", type=_grid)

    sp = sub.add_parser("verify", help="check a parameter-curve theorem (4..10 or all)")
    common(sp, ("text", "json"), "text")
    sp.add_argument("--theorem", default="all", help="4..10 or 'all'")
    sp.add_argument("--v-range", type=_range, default=(-2.0, 2.0))
    sp.add_argument("--grid", type=_grid, default=(64, 16))
    return p


def _config(ns) -> RunConfig:
    return RunConfig(
        command=ns.command, curve=ns.curve, kind=getattr(ns, "kind", None),
        s=getattr(ns, "s", None), v=getattr(ns, "v", None),
        s_range=getattr(ns, "s_range", None), v_range=getattr(ns, "v_range", (-2.0, 2.0)),
        grid=getattr(ns, "grid", None), tol=ns.tol, out=ns.out, fmt=ns.fmt,
        theorem=getattr(ns, "theorem", None),
    )


def _vec(x):
    return " ".join(fmt_num(c) for c in x)


def _point_s(curve, s):
    if s is None:
        a, b = curve.domain
        return 0.0 if a <= 0.0 <= b else 0.5 * (a + b)
    return s


def _cmd_frenet(cfg, curve):
    s = _point_s(curve, cfg.s)
    fd = frenet_apparatus(curve.jet(s, 5))
    q = series_at(curve, s).scalars()
    doc = {
        "schema": 1, "curve": curve.name, "s": s,
        "kappa": fd.kappa, "tau": fd.tau, "sigma": q["sigma"], "rho": q["rho"],
        "T": fd.T, "N": fd.N, "B": fd.B,
    }
    if cfg.fmt == "json":
        return dumps_json(doc), EXIT_OK
    lines = [f"curve  {curve.name}", f"s      {fmt_num(s)}"]
    lines += [f"{k:<6} {fmt_num(doc[k])}" for k in ("kappa", "tau", "sigma", "rho")]
    lines += [f"{k:<6} {_vec(doc[k])}" for k in ("T", "N", "B")]
    return "\n".join(lines) + "\n", EXIT_OK


def _cmd_forms(cfg, curve):
    s = _point_s(curve, cfg.s)
    surf = make_special(cfg.kind, curve, v_domain=(min(-2.0, cfg.v), max(2.0, cfg.v)))
    ff = fundamental_forms(surface_jet(surf, s, cfg.v))
    cf = closed_form_forms(cfg.kind, curve, s, cfg.v)
    doc = {
        "schema": 1, "curve": curve.name, "surface": cfg.kind, "s": s, "v": cfg.v,
        "generic": ff.as_dict(), "closed_form": cf.as_dict(), "orientation": cf.orientation,
        "K_forms": gaussian_from_forms(ff), "K_ruled": gaussian_ruled(surf, s, cfg.v),
        "U": ff.U,
    }
    if cfg.fmt == "json":
        return dumps_json(doc), EXIT_OK
    lines = [f"{cfg.kind} surface of {curve.name} at s={fmt_num(s)} v={fmt_num(cfg.v)}",
             f"{'':<3}{'generic':>20}{'closed form':>20}"]
    for k in ("E", "F", "G", "e", "f", "g"):
        lines.append(f"{k:<3}{fmt_num(getattr(ff, k)):>20}{fmt_num(getattr(cf, k)):>20}")
    lines.append(f"K  (forms) {fmt_num(doc['K_forms'])}   (ruled) {fmt_num(doc['K_ruled'])}")
    lines.append(f"U  {_vec(ff.U)}")
    return "\n".join(lines) + "\n", EXIT_OK


def _s_values(curve, s_range, n):
    a, b = s_range or curve.domain
    if a < curve.domain[0] or b > curve.domain[1]:
        raise DomainError(f"s-range {a}:{b} outside curve domain {curve.domain}")
    return np.linspace(a, b, n)


def _cmd_surface(cfg, curve):
    surf = make_special(cfg.kind, curve, v_domain=cfg.v_range)
    rows, cols = cfg.grid
    grid = mesh_from_surface(surf, _s_values(curve, cfg.s_range, rows), np.linspace(*cfg.v_range, cols))
    if grid.mask.any():
        print(f"{int(grid.mask.sum())} singular vertices masked", file=sys.stderr)
    return export_mesh(grid, cfg.fmt), EXIT_OK


def _cmd_classify(cfg, curve):
    tol = cfg.tol if cfg.tol is not None else CLASS_TOL
    if cfg.kind is None:
        n = cfg.grid[0] if cfg.grid else 64
        samples = default_samples(curve, n) if cfg.s_range is None else _s_values(curve, cfg.s_range, n)
        cc = classify_curve(curve, samples, tol)
        doc = {"schema": 1, "curve": curve.name, "verdict": cc.verdict, "evidence": cc.evidence,
               "deviations": cc.deviations, "tol": tol}
        if cfg.fmt == "json":
            return dumps_json(doc), EXIT_OK
        lines = [f"{curve.name}: {cc.verdict} (evidence {fmt_num(cc.evidence)}, tol {fmt_num(tol)})"]
        lines += [f"  dev {k:<8} {fmt_num(v)}" for k, v in sorted(cc.deviations.items())]
        return "\n".join(lines) + "\n", EXIT_OK
    rows, cols = cfg.grid or (32, 9)
    tol = cfg.tol if cfg.tol is not None else TOL
    surf = make_special(cfg.kind, curve, v_domain=cfg.v_range)
    rep = classify_parameter_curves(surf, _s_values(curve, cfg.s_range, rows),
                                    np.linspace(*cfg.v_range, cols), tol)
    if cfg.fmt == "json":
        return dumps_json({**rep.to_dict(), "curve": curve.name, "surface": cfg.kind}), EXIT_OK
    lines = [f"{cfg.kind} surface of {curve.name}: parameter curves (tol {fmt_num(tol)})",
             f"{'dir':<4}{'fixed':>10}{'geodesic':>13}{'asymptotic':>13}{'|F|':>11}{'|f|':>11}  verdicts"]
    for e in rep.entries:
        flags = [name for name, key in (("geodesic", "is_geodesic"), ("asymptotic", "is_asymptotic"),
                                        ("curvature-line", "is_line_of_curvature")) if e[key]]
        lines.append(f"{e['direction']:<4}{e['fixed']:>10.4f}{e['geodesic']:>13.3e}{e['asymptotic']:>13.3e}"
                     f"{e['F']:>11.3e}{e['f']:>11.3e}  {','.join(flags) or '-'}")
    if rep.skipped:
        lines.append(f"{len(rep.skipped)} singular samples skipped")
    return "\n".join(lines) + "\n", EXIT_OK


def _cmd_verify(cfg, curve):
    if cfg.theorem == "all":
        ids = sorted(THEOREM_KINDS)
    else:
        try:
            ids = [int(cfg.theorem)]
        except ValueError:
            raise UsageError(f"--theorem expects 4..10 or 'all', got {cfg.theorem!r}") from None
        if ids[0] not in THEOREM_KINDS:
            raise UsageError(f"--theorem expects 4..10 or 'all', got {cfg.theorem!r}")
    tol = cfg.tol if cfg.tol is not None else TOL
    n_s, n_v = cfg.grid
    grid = VerifyGrid(tuple(default_samples(curve, n_s)), tuple(np.linspace(*cfg.v_range, n_v)))
    reports = [verify_theorem(i, curve, grid, tol) for i in ids]
    code = EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL
    if cfg.fmt == "json":
        doc = {"schema": 1, "curve": curve.name, "passed": code == EXIT_OK,
               "known_defects": sorted(f"{t} {c}" for t, c in KNOWN_DEFECTS),
               "reports": [r.to_dict() for r in reports]}
        return dumps_json(doc), code
    text = "\n\n".join(r.render_text() for r in reports)
    return text + "\n", code


COMMANDS = {
    "frenet": _cmd_frenet,
    "forms": _cmd_forms,
    "surface": _cmd_surface,
    "classify": _cmd_classify,
    "verify": _cmd_verify,
}


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        cfg = _config(ns)
        curve = parse_curve(cfg.curve)
        text, code = COMMANDS[cfg.command](cfg, curve)
    except (UsageError, ConstructionError, DomainError, PreconditionError,
            ClassificationError, ValueError) as exc:
        print(f"devgeom: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericError, GeometryError, ArithmeticError) as exc:
        print(f"devgeom: numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"devgeom: I/O error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    try:
        if cfg.out:
            with open(cfg.out, "w", newline="\n", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"devgeom: I/O error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return code


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
