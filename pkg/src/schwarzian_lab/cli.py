"""Command-line front end.

Subcommands emit symbolic expansions, verification reports, and norm tables.
Reports are plain data: ``--format json`` serializes them canonically
(schema "v1", sorted keys, complex numbers as [re, im] pairs), so a fixed
command line and seed produce byte-identical output.  Exit status: 0 when
every check in the report passed, 1 when one failed, 2 for invalid usage.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import checks
from .automorphic import (
    GroupError,
    PairingSpec,
    automorphy_residual,
    bergman_project,
    fundamental_annulus_grid,
    group_ball,
    group_from_descriptor,
    poincare_theta,
    projection_symmetry_check,
    wp_pairing,
)
from .integrals import (
    DensityFn,
    ahlfors_weill,
    ahlfors_weill_density,
    d0_beta,
    d0_beta_norm_bound,
    disc_quadrature,
    exterior_disc_quadrature,
    half_plane_quadrature,
    kernel_criterion_check,
    repro_check,
)
from .jets import jet_from_coeffs
from .maps import DISC, EXTERIOR_DISC, AnalyticFn, catalog, poincare_density, rotated_koebe, schlicht_family
from .norms import SampleGrid, bn_norm_report, bound_check, sigma_phi
from .ode import homogeneous_a_check, homogeneous_b_residual, ode_residual, schwarzian_solve
from .symbolic import classical, evaluate_jet, monomial_part, series_constant, to_string


# -- report plumbing -----------------------------------------------------------


def _usage_error(msg: str) -> SystemExit:
    print(f"schwarzian-lab: error: {msg}", file=sys.stderr)
    return SystemExit(2)


def _jsonify(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    if isinstance(obj, (bool, int, str)) or obj is None:
        return obj
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, (np.complexfloating, complex)):
        z = complex(obj)
        return [z.real, z.imag]
    if isinstance(obj, np.integer):
        return int(obj)
    return str(obj)


def _text_lines(obj, indent: int = 0):
    pad = "  " * indent
    if isinstance(obj, dict):
        for k in obj:
            v = obj[k]
            if isinstance(v, (dict, list)):
                yield f"{pad}{k}:"
                yield from _text_lines(v, indent + 1)
            else:
                yield f"{pad}{k}: {v}"
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                yield f"{pad}-"
                yield from _text_lines(v, indent + 1)
            else:
                yield f"{pad}- {v}"
    else:
        yield f"{pad}{obj}"


def _emit(report: dict, args) -> None:
    data = _jsonify(report)
    if args.format == "json":
        text = json.dumps(data, sort_keys=True, indent=2)
    elif args.format == "csv":
        rows = data.get("rows")
        if not rows:
            raise _usage_error("csv format is only available for tabular reports (norm, bound)")
        cols = list(rows[0])
        lines = [",".join(cols)]
        for row in rows:
            lines.append(",".join(str(row[c]) for c in cols))
        text = "\n".join(lines)
    else:
        text = "\n".join(_text_lines(data))
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        print(text, file=out)
    finally:
        if args.out:
            out.close()


# -- argument parsing helpers --------------------------------------------------


def _complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from exc


def _complex_list(text: str) -> list:
    return [_complex(part) for part in text.split(",") if part.strip()]


def parse_function(spec: str) -> AnalyticFn:
    """Function descriptors: catalog names (koebe, identity, cayley),
    ``rotation:theta``, ``rotated-koebe:theta``, ``taylor:c0,c1,...``,
    inline JSON descriptors, or ``@path`` to a JSON file."""
    if spec.startswith("@"):
        with open(spec[1:]) as fh:
            return AnalyticFn(json.load(fh))
    if spec.startswith("{"):
        return AnalyticFn(json.loads(spec))
    if spec.startswith("taylor:"):
        coeffs = _complex_list(spec[len("taylor:") :])
        return AnalyticFn({"kind": "taylor", "center": [0.0, 0.0], "coeffs": [[c.real, c.imag] for c in coeffs]})
    if spec.startswith("rotation:"):
        return catalog("rotation", theta=float(spec.split(":", 1)[1]))
    if spec.startswith("rotated-koebe:"):
        return rotated_koebe(float(spec.split(":", 1)[1]))
    try:
        return catalog(spec)
    except (KeyError, ValueError) as exc:
        raise argparse.ArgumentTypeError(f"unknown function spec {spec!r}") from exc


def parse_density(spec: str) -> DensityFn:
    """Densities on the exterior disc: ``aw:<function>`` for the bounded
    section of a holomorphic function, or ``const:<c>``."""
    if spec.startswith("aw:"):
        return ahlfors_weill_density(parse_function(spec[3:]))
    if spec.startswith("const:"):
        c = _complex(spec[len("const:") :])
        return DensityFn(lambda eta: np.full_like(np.asarray(eta, dtype=complex), c), EXTERIOR_DISC, abs(c))
    raise argparse.ArgumentTypeError(f"unknown density spec {spec!r} (use aw:<fn> or const:<c>)")


def inverse_power_fn(q: int) -> AnalyticFn:
    """(z - i)^(-2q) as a rational descriptor (binomial denominator)."""
    den = [math.comb(2 * q, k) * (-1j) ** (2 * q - k) for k in range(2 * q + 1)]
    return AnalyticFn({"kind": "rational", "num": [[1.0, 0.0]], "den": [[c.real, c.imag] for c in den]})


def _group(args) -> tuple:
    try:
        desc = json.loads(args.group)
    except json.JSONDecodeError as exc:
        raise _usage_error(f"invalid group descriptor: {exc}")
    try:
        return group_from_descriptor(desc), desc
    except GroupError as exc:
        raise _usage_error(str(exc))


# -- subcommands ---------------------------------------------------------------


def cmd_expand(args) -> dict:
    expr = checks.sigma_expr(args.series, args.n)
    return {
        "schema": "v1",
        "operation": "expand",
        "inputs": {"series": args.series, "n": args.n},
        "expression": to_string(expr),
        "monomial_part": to_string(monomial_part(expr)),
        "series_constant": str(series_constant(expr)),
        "weights": sorted(int(w) for w in expr.weights()),
        "ok": True,
    }


def cmd_verify(args) -> dict:
    suite = checks.VERIFY_SUITES[args.target]
    kwargs = {"trials": args.trials, "seed": args.seed}
    if args.target == "covariance":
        kwargs["series"] = args.series
        if args.n:
            kwargs["n_values"] = tuple(args.n)
    elif args.target != "weights":
        if args.n:
            kwargs["n_values"] = tuple(args.n)
    if args.tol is not None and args.target != "weights":
        kwargs["tol"] = args.tol
    report = suite(**kwargs)
    report["schema"] = "v1"
    return report


def cmd_norm(args) -> dict:
    fn = parse_function(args.function)
    expr = checks.sigma_expr(args.series, args.n)
    grid = SampleGrid(J=args.grid_j, M=args.grid_m)
    rep = bn_norm_report(sigma_phi(fn, expr), args.n - 1, grid)
    row = bound_check(args.series, args.n, fn, expr, grid)
    return {
        "schema": "v1",
        "operation": "norm",
        "inputs": {"function": args.function, "series": args.series, "n": args.n},
        "report": rep,
        "rows": [{"function": args.function, **row}],
        "ok": bool(row["margin"] >= -1e-9 * max(1.0, row["bound"])),
    }


def cmd_bound(args) -> dict:
    fams = schlicht_family()
    rows = []
    ok = True
    for name, fn in fams:
        if args.function != "all" and args.function != name:
            continue
        for n in args.n:
            row = bound_check(args.series, n, fn)
            rows.append({"function": name, **row})
            ok = ok and row["margin"] >= -1e-9 * max(1.0, row["bound"])
    if not rows:
        names = [name for name, _ in fams]
        raise _usage_error(f"unknown catalog function {args.function!r}; have {names} or 'all'")
    return {
        "schema": "v1",
        "operation": "bound",
        "inputs": {"series": args.series, "n": args.n, "function": args.function},
        "rows": rows,
        "ok": bool(ok),
    }


def cmd_dzero(args) -> dict:
    nu = parse_density(args.density)
    grid = exterior_disc_quadrature(R=args.grid_r, M=args.grid_m)
    expr = checks.sigma_expr(args.series, args.n)
    val = d0_beta(expr, nu, args.z, grid)
    lam = poincare_density(DISC, args.z)
    weighted = abs(val) * lam ** (1 - args.n)
    bound = d0_beta_norm_bound(args.n, args.series) * nu.sup_bound
    return {
        "schema": "v1",
        "operation": "dzero",
        "inputs": {"series": args.series, "n": args.n, "z": args.z, "density": args.density, "grid": grid.meta},
        "value": val,
        "weighted_magnitude": weighted,
        "norm_bound": bound,
        "ok": bool(weighted <= bound),
    }


def cmd_aw(args) -> dict:
    phi = parse_function(args.phi)
    if abs(args.z) <= 1:
        raise _usage_error("--z must lie outside the closed unit disc")
    sval = ahlfors_weill(phi, args.z)
    nu = ahlfors_weill_density(phi)
    w = 1 / np.conj(args.z)
    grid = exterior_disc_quadrature(R=args.grid_r, M=args.grid_m)
    round_trip = d0_beta(checks.sigma_expr("A", 3), nu, w, grid)
    target = complex(phi(w))
    relerr = abs(round_trip - target) / max(abs(target), 1e-300)
    return {
        "schema": "v1",
        "operation": "aw",
        "inputs": {"phi": args.phi, "z": args.z, "grid": grid.meta},
        "section_value": sval,
        "sup_bound": nu.sup_bound,
        "roundtrip": {"lhs": round_trip, "rhs": target, "relerr": relerr},
        "ok": bool(relerr < args.tol),
    }


def cmd_repro(args) -> dict:
    phi = parse_function(args.phi) if args.phi else inverse_power_fn(args.q)
    grid = half_plane_quadrature(R=args.grid_r, M=args.grid_m, radius=args.radius)
    rep = repro_check(phi, args.q, args.z, grid)
    rep.update(
        {
            "schema": "v1",
            "operation": "repro",
            "inputs": {"q": args.q, "z": args.z, "phi": args.phi or f"(z-i)^(-{2 * args.q})"},
            "ok": bool(rep["relerr"] < args.tol),
        }
    )
    return rep


def cmd_kernel_criterion(args) -> dict:
    nu = parse_density(args.density)
    grid = exterior_disc_quadrature(R=args.grid_r, M=args.grid_m)
    rep = kernel_criterion_check(nu, args.n, args.z, args.series, grid)
    rep.update(
        {
            "schema": "v1",
            "operation": "kernel-criterion",
            "inputs": {"series": args.series, "n": args.n, "z": args.z, "density": args.density},
            "ok": bool(rep["relerr"] < args.tol),
        }
    )
    return rep


def cmd_theta(args) -> dict:
    gens, desc = _group(args)
    ball = group_ball(gens, args.radius)
    f = parse_function(args.f)
    rep = poincare_theta(f, args.q, ball, args.z)
    res = automorphy_residual(f, args.q, ball, args.z) if gens else 0.0
    return {
        "schema": "v1",
        "operation": "theta",
        "inputs": {"group": desc, "radius": args.radius, "q": args.q, "f": args.f, "z": args.z},
        "value": rep.value,
        "tail_estimate": rep.tail_estimate,
        "automorphy_bound": rep.automorphy_bound,
        "automorphy_residual": res,
        "ball_size": len(ball),
        "ok": bool(res <= rep.automorphy_bound),
    }


def cmd_pairing(args) -> dict:
    f = parse_function(args.f)
    g = parse_function(args.g)
    spec = PairingSpec(args.s)
    if args.group:
        gens, desc = _group(args)
        if len(gens) != 1:
            raise _usage_error("fundamental-domain pairing needs a cyclic group")
        t1, t2 = desc["fixpoints"]
        grid = fundamental_annulus_grid(t1, t2, desc["multiplier"], n_rad=args.grid_r, n_ang=args.grid_m)
        domain_note = "cyclic fundamental domain"
    else:
        grid = disc_quadrature(R=args.grid_r, M=args.grid_m)
        domain_note = "unit disc"
    val = wp_pairing(f, g, spec, grid)
    flipped = wp_pairing(g, f, spec, grid)
    sym = abs(val - np.conj(flipped)) / max(abs(val), 1e-300)
    return {
        "schema": "v1",
        "operation": "pairing",
        "inputs": {"f": args.f, "g": args.g, "s": args.s, "domain": domain_note, "grid": grid.meta},
        "value": val,
        "conjugate_symmetry_relerr": sym,
        "ok": bool(sym < 1e-9),
    }


def cmd_bergman(args) -> dict:
    grid = disc_quadrature(R=args.grid_r, M=args.grid_m)
    zs = np.array([0.0, 0.3 + 0.2j, -0.5j, 0.6])
    checks_list = []
    worst = 0.0
    for k in range(args.k + 1):
        f = lambda w, k=k: np.asarray(w, dtype=complex) ** k
        vals = bergman_project(f, args.s, zs, grid)
        err = float(np.max(np.abs(vals - zs**k)))
        worst = max(worst, err)
        checks_list.append({"check": f"fixes w^{k}", "max_abs_err": err})
    one = lambda w: np.ones_like(np.asarray(w, dtype=complex))
    v0 = bergman_project(one, args.s, 0.0, grid)
    checks_list.append({"check": "constant at origin", "lhs": v0, "rhs": 1.0, "abs_err": abs(v0 - 1)})
    sym = projection_symmetry_check(
        lambda w: np.asarray(w) ** 2 * np.conj(w), lambda w: np.asarray(w) + np.conj(w), args.s
    )
    checks_list.append({"check": "pairing symmetry", "relerr": sym["relerr"]})
    ok = worst < args.tol and abs(v0 - 1) < args.tol and sym["relerr"] < 1e-2
    return {
        "schema": "v1",
        "operation": "bergman",
        "inputs": {"s": args.s, "k": args.k, "grid": grid.meta},
        "checks": checks_list,
        "ok": bool(ok),
    }


def cmd_solve(args) -> dict:
    if args.what == "ode":
        coeffs = args.phi or [0.5 + 0j]
        phi = jet_from_coeffs(list(coeffs) + [0j] * max(0, args.order - len(coeffs) + 1), 0.0)
        sol = schwarzian_solve(phi, args.order)
        s_f = evaluate_jet(classical("schwarzian"), sol.f)
        m = min(s_f.order, phi.order)
        residual = max(abs(complex(a - b)) for a, b in zip(s_f.coeffs[: m + 1], phi.coeffs[: m + 1]))
        return {
            "schema": "v1",
            "operation": "solve-ode",
            "inputs": {"phi": list(coeffs), "order": args.order},
            "f_coeffs": list(sol.f.coeffs),
            "wronskian": sol.wronskian,
            "linear_residual": ode_residual(sol),
            "schwarzian_residual": residual,
            "ok": bool(residual < args.tol),
        }
    if args.what == "homog-b":
        res = homogeneous_b_residual(args.n, args.alpha, order=args.order)
        return {
            "schema": "v1",
            "operation": "solve-homog-b",
            "inputs": {"n": args.n, "alpha": list(args.alpha), "order": args.order},
            "residual": res,
            "ok": bool(res < args.tol),
        }
    res = homogeneous_a_check(args.poly, args.n, order=args.order)
    return {
        "schema": "v1",
        "operation": "solve-homog-a",
        "inputs": {"n": args.n, "poly": list(args.poly), "order": args.order},
        "residual": res,
        "ok": bool(res < args.tol),
    }


# -- parser --------------------------------------------------------------------


def _add_common(p, tol: float | None = None) -> None:
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--out", help="write the report to this path instead of stdout")
    if tol is not None:
        p.add_argument("--tol", type=float, default=tol)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="schwarzian-lab",
        description="Construct higher Schwarzian operators, evaluate them on "
        "holomorphic functions, and verify the identities and bounds they satisfy.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="print a higher Schwarzian operator in canonical form")
    p.add_argument("--series", choices=("A", "B"), required=True)
    p.add_argument("--n", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("verify", help="randomized identity suites")
    p.add_argument("target", choices=sorted(checks.VERIFY_SUITES))
    p.add_argument("--series", choices=("A", "B"), default="A", help="series for the covariance law")
    p.add_argument("--n", type=int, nargs="*", help="operator orders to draw from")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    _add_common(p)
    p.add_argument("--tol", type=float, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("norm", help="hyperbolic sup-norm estimate of sigma_n applied to a function")
    p.add_argument("--function", required=True)
    p.add_argument("--series", choices=("A", "B"), default="A")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--grid-j", type=int, default=14)
    p.add_argument("--grid-m", type=int, default=256)
    _add_common(p)
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("bound", help="sharp-bound table over the schlicht catalog")
    p.add_argument("--series", choices=("A", "B"), default="A")
    p.add_argument("--n", type=int, nargs="+", default=[3, 4, 5])
    p.add_argument("--function", default="all")
    _add_common(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("dzero", help="differential of the higher Bers map at the origin")
    p.add_argument("--series", choices=("A", "B"), default="A")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--z", type=_complex, default=0.2 + 0.1j)
    p.add_argument("--density", default="aw:identity")
    p.add_argument("--grid-r", type=int, default=96)
    p.add_argument("--grid-m", type=int, default=256)
    _add_common(p)
    p.set_defaults(func=cmd_dzero)

    p = sub.add_parser("aw", help="bounded holomorphic section and its round trip through the differential")
    p.add_argument("--phi", default="identity")
    p.add_argument("--z", type=_complex, default=2 + 0j, help="exterior evaluation point")
    p.add_argument("--grid-r", type=int, default=96)
    p.add_argument("--grid-m", type=int, default=256)
    _add_common(p, tol=2e-2)
    p.set_defaults(func=cmd_aw)

    p = sub.add_parser("repro", help="half-plane reproducing formula for Bers-type densities")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--z", type=_complex, default=-2j)
    p.add_argument("--phi", default=None, help="defaults to (z-i)^(-2q)")
    p.add_argument("--grid-r", type=int, default=128)
    p.add_argument("--grid-m", type=int, default=128)
    p.add_argument("--radius", type=float, default=40.0)
    _add_common(p, tol=1e-2)
    p.set_defaults(func=cmd_repro)

    p = sub.add_parser("kernel-criterion", help="pairing form of the differential against the kernel power")
    p.add_argument("--series", choices=("A", "B"), default="A")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--z", type=_complex, default=0.3 + 0.1j)
    p.add_argument("--density", default="aw:taylor:0,0,1")
    p.add_argument("--grid-r", type=int, default=96)
    p.add_argument("--grid-m", type=int, default=256)
    _add_common(p, tol=1e-2)
    p.set_defaults(func=cmd_kernel_criterion)

    p = sub.add_parser("theta", help="truncated Poincare series with tail and automorphy bounds")
    p.add_argument("--group", default='{"kind": "cyclic", "fixpoints": [0.5, 2.8], "multiplier": 4.0}')
    p.add_argument("--radius", type=int, default=8)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--f", default="taylor:0,0.5,1")
    p.add_argument("--z", type=_complex, default=0.3 + 0.2j)
    _add_common(p)
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("pairing", help="Weil-Petersson pairing over the disc or a cyclic fundamental domain")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--s", type=int, default=2)
    p.add_argument("--group", default=None)
    p.add_argument("--grid-r", type=int, default=96)
    p.add_argument("--grid-m", type=int, default=256)
    _add_common(p)
    p.set_defaults(func=cmd_pairing)

    p = sub.add_parser("bergman", help="weighted Bergman projection checks")
    p.add_argument("--s", type=int, default=2)
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--grid-r", type=int, default=96)
    p.add_argument("--grid-m", type=int, default=256)
    _add_common(p, tol=1e-3)
    p.set_defaults(func=cmd_bergman)

    p = sub.add_parser("solve", help="power-series solutions of the Schwarzian equations")
    p.add_argument("what", choices=("ode", "homog-a", "homog-b"))
    p.add_argument("--phi", type=_complex_list, default=None, help="Taylor coefficients of the target Schwarzian")
    p.add_argument("--alpha", type=_complex_list, default=[1 + 0j, 0j, 1 + 0j])
    p.add_argument("--poly", type=_complex_list, default=[0.5 + 0j])
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--order", type=int, default=14)
    _add_common(p, tol=1e-9)
    p.set_defaults(func=cmd_solve)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = args.func(args)
    except (argparse.ArgumentTypeError, FileNotFoundError) as exc:
        raise _usage_error(str(exc))
    _emit(report, args)
    return 0 if report.get("ok", False) else 1


if __name__ == "__main__":
    sys.exit(main())
