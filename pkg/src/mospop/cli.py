"""Command line front end.

Subcommands: classify, fixed-points, stability, simulate, simplex, sweep,
verify.  Every subcommand accepts --json for a single machine-readable
object on stdout; the default output is a short human-readable report.

Numeric output is printed with 12 significant digits everywhere, CSV files
use '.' decimals, ',' separators, a header row and LF line endings, and
repeated invocations with identical flags produce byte-identical output.

Exit codes: 0 success, 1 failed verification, 2 invalid parameters or
usage, 3 I/O failure.  The environment variable MOSPOP_TOL overrides the
default convergence tolerance of `simulate` (flag --tol still wins).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Optional, Sequence

import numpy as np

from .dynamics import orbit, step
from .fixed_points import (
    DEFAULT_CONTINUUM_GRID,
    FixedPointKind,
    find_fixed_points,
)
from .oracles import (
    fd_derivative,
    fd_jacobian,
    grid_period_scan,
    quad_roots,
    sample_invariance_pairs,
    sample_region,
)
from .params import (
    Params,
    basic_offspring_number,
    birth_threshold,
    boundary_report,
    classify,
    preserves_quadrant,
    primary_region,
    validate,
)
from .simplex import (
    SimplexParams,
    analyze,
    fixed_point_u,
    u_derivative,
    u_map,
    u_orbit_limit,
)
from .stability import (
    classify_fixed_point,
    declared_type_table,
    eigenvalues,
    jacobian,
)

TOL_ENV = "MOSPOP_TOL"
SWEEP_QUANTITIES = (
    "region",
    "r0",
    "fixed_point_count",
    "spectral_radius_at_origin",
    "x_star",
)


def fmt(v) -> str:
    """12-significant-digit rendering for floats, plain str otherwise."""
    if isinstance(v, float):
        if math.isfinite(v):
            return format(v, ".12g")
        return "inf" if v > 0 else ("-inf" if v < 0 else "nan")
    return str(v)


def _jnum(v: float):
    """Floats rounded to 12 significant digits for JSON payloads."""
    if isinstance(v, float):
        if math.isfinite(v):
            return float(format(v, ".12g"))
        return fmt(v)
    return v


def _jcomplex(z: complex) -> dict:
    return {"re": _jnum(z.real), "im": _jnum(z.imag)}


def _usage_error(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)
    raise SystemExit(2)


def _default_tol() -> float:
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return 1e-9
    try:
        v = float(raw)
    except ValueError:
        _usage_error(f"{TOL_ENV} must be a float, got {raw!r}")
    if not (v > 0 and math.isfinite(v)):
        _usage_error(f"{TOL_ENV} must be a positive float, got {raw!r}")
    return v


def _params_from_args(args) -> Params:
    return validate(args.alpha, args.beta, args.mu, args.d0, args.d1)


def _emit(args, payload: dict, human: list[str]) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in human:
            print(line)


# ---------------------------------------------------------------------------
# classify
# ---------------------------------------------------------------------------


def cmd_classify(args) -> int:
    p = _params_from_args(args)
    label = classify(p)
    r0 = basic_offspring_number(p)
    thr = birth_threshold(p)
    flags = {
        "in_omega_star": label.in_omega_star,
        "in_phi1": label.in_phi1,
        "in_phi2": label.in_phi2,
        "in_psi": label.in_psi,
        "in_theta": label.in_theta,
        "in_theta1": label.in_theta1,
        "in_theta2": label.in_theta2,
        "in_theta_star": label.in_theta_star,
        "in_phi_star": label.in_phi_star,
        "in_psi_star": label.in_psi_star,
    }
    payload = {
        "params": {k: _jnum(v) for k, v in zip(
            ("alpha", "beta", "mu", "d0", "d1"), p.astuple())},
        "primary_region": primary_region(p),
        "flags": flags,
        "simplex_class": label.simplex_class.value,
        "r0": _jnum(r0),
        "birth_threshold": _jnum(thr),
    }
    human = [
        f"primary region: {payload['primary_region']}",
        f"r0: {fmt(r0)}  (birth threshold for beta: {fmt(thr)})",
        "flags: " + ", ".join(k for k, v in flags.items() if v),
        f"simplex class: {label.simplex_class.value}",
    ]
    if label.in_psi:
        human.append("note: continuum of fixed points (matched rates, "
                     "no larval death)")
    if args.eps is not None:
        near = boundary_report(p, args.eps)
        payload["boundaries_within_eps"] = near
        human.append(
            "boundaries within eps: " + ("; ".join(near) if near else "none")
        )
    _emit(args, payload, human)
    return 0


# ---------------------------------------------------------------------------
# fixed-points
# ---------------------------------------------------------------------------


def _point_payload(report) -> dict:
    return {
        "x": _jnum(report.location.x),
        "y": _jnum(report.location.y),
        "formula": report.formula.value,
        "residual": _jnum(report.residual),
    }


def cmd_fixed_points(args) -> int:
    p = _params_from_args(args)
    grid = DEFAULT_CONTINUUM_GRID
    if args.samples is not None:
        if args.samples < 2:
            _usage_error("--samples must be at least 2")
        hi = DEFAULT_CONTINUUM_GRID[-1]
        grid = tuple(hi * k / (args.samples - 1) for k in range(args.samples))
    fps = find_fixed_points(p, sample_grid=grid)
    payload = {
        "kind": fps.kind.value,
        "points": [_point_payload(r) for r in fps.points],
    }
    if fps.quad_discriminant is not None:
        payload["discriminant"] = _jnum(fps.quad_discriminant)
    if fps.kind is FixedPointKind.CONTINUUM:
        payload["curve"] = "y = alpha*x/(mu*(1+x)) for all x >= 0"
        payload["sample_grid"] = [_jnum(x) for x in fps.sample_grid]

    human = [f"kind: {fps.kind.value}"]
    for r in fps.points:
        human.append(
            f"  ({fmt(r.location.x)}, {fmt(r.location.y)})"
            f"  formula={r.formula.value}  residual={fmt(r.residual)}"
        )
    if fps.quad_discriminant is not None:
        human.append(f"quadratic discriminant: {fmt(fps.quad_discriminant)}")
    if fps.kind is FixedPointKind.CONTINUUM:
        human.insert(1, "curve: y = alpha*x/(mu*(1+x)), sampled at "
                     + ", ".join(fmt(x) for x in fps.sample_grid))

    if args.verify:
        checks = {}
        worst = 0.0
        for r in fps.points:
            nx, ny = step(p, r.location)
            worst = max(worst, abs(nx - r.location.x), abs(ny - r.location.y))
        checks["max_step_residual"] = _jnum(worst)
        c = p.d0 + p.alpha * (1.0 - p.beta / p.mu)
        worst_q = 0.0
        for r in fps.points:
            x = r.location.x
            if x > 0.0:
                worst_q = max(
                    worst_q, abs(p.d1 * x * x + (p.d0 + p.d1) * x + c)
                )
        checks["max_quadratic_residual"] = _jnum(worst_q)
        payload["verification"] = checks
        human.append(
            f"verification: max step residual {fmt(worst)}, "
            f"max quadratic residual {fmt(worst_q)}"
        )
    _emit(args, payload, human)
    return 0


# ---------------------------------------------------------------------------
# stability
# ---------------------------------------------------------------------------


def _stability_payload(p: Params, z, tol: float, want_verify: bool) -> dict:
    report = classify_fixed_point(p, z, tol=tol)
    lam1, lam2 = report.eigenvalues
    payload = {
        "location": {"x": _jnum(float(z[0])), "y": _jnum(float(z[1]))},
        "jacobian": [[_jnum(float(v)) for v in row] for row in report.jacobian],
        "eigenvalues": [_jcomplex(lam1), _jcomplex(lam2)],
        "moduli": [_jnum(abs(lam1)), _jnum(abs(lam2))],
        "g": _jnum(report.g_value),
        "f": _jnum(report.f_value),
        "type": report.type.value,
    }
    if want_verify:
        fd = fd_jacobian(lambda x, y: step(p, (x, y)), z)
        rel = float(
            np.max(np.abs(fd - report.jacobian))
            / max(1.0, float(np.max(np.abs(report.jacobian))))
        )
        lapack = sorted(
            np.linalg.eigvals(report.jacobian),
            key=lambda lam: (-abs(lam), -lam.real, -lam.imag),
        )
        diff = max(
            abs(complex(a) - complex(b))
            for a, b in zip(lapack, report.eigenvalues)
        )
        payload["verification"] = {
            "fd_jacobian_rel_error": _jnum(rel),
            "eigenvalue_cross_check": _jnum(diff),
        }
    return payload


def cmd_stability(args) -> int:
    p = _params_from_args(args)
    tol = args.tol if args.tol is not None else 1e-9
    targets: list[tuple[float, float]] = []
    if args.at is not None:
        targets.append((args.at[0], args.at[1]))
    else:
        fps = find_fixed_points(p)
        targets.extend((r.location.x, r.location.y) for r in fps.points)

    reports = [_stability_payload(p, z, tol, args.verify) for z in targets]
    payload: dict = {"points": reports}

    human = []
    for rep in reports:
        loc = rep["location"]
        lam = rep["eigenvalues"]
        human.append(
            f"({fmt(float(loc['x']))}, {fmt(float(loc['y']))}): {rep['type']}"
        )
        human.append(
            f"  eigenvalues: {fmt(float(lam[0]['re']))}{float(lam[0]['im']):+.12g}j, "
            f"{fmt(float(lam[1]['re']))}{float(lam[1]['im']):+.12g}j"
        )
        if "verification" in rep:
            v = rep["verification"]
            human.append(
                f"  verify: fd jacobian rel err {fmt(float(v['fd_jacobian_rel_error']))}, "
                f"eig cross-check {fmt(float(v['eigenvalue_cross_check']))}"
            )

    if preserves_quadrant(p) and args.at is None:
        table = declared_type_table(p)
        payload["declared_types"] = [
            {
                "x": _jnum(d.location.x),
                "y": _jnum(d.location.y),
                "declared": None if d.declared is None else d.declared.value,
                "numeric": d.numeric.value,
                "agrees": d.agrees,
                "note": d.note,
            }
            for d in table
        ]
        for d in table:
            dec = "deferred" if d.declared is None else d.declared.value
            human.append(
                f"declared at ({fmt(d.location.x)}, {fmt(d.location.y)}): {dec}"
                f" [numeric {d.numeric.value}, agrees={d.agrees}]"
            )
    _emit(args, payload, human)
    return 0


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------


def _write_csv(path: str, samples) -> None:
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write("iter,x,y\n")
        for n, s in samples:
            fh.write(f"{n},{fmt(s.x)},{fmt(s.y)}\n")


def render_trajectory_svg(samples, width: int = 720, height: int = 460) -> str:
    """Minimal two-polyline SVG of the sampled trajectory, with axis ticks."""
    ml, mr, mt, mb = 64, 18, 42, 50
    ns = [float(n) for n, _ in samples]
    xs = [s.x for _, s in samples]
    ys = [s.y for _, s in samples]
    n_hi = max(ns) if max(ns) > 0 else 1.0
    v_lo = min(0.0, min(xs), min(ys))
    v_hi = max(max(xs), max(ys))
    if v_hi <= v_lo:
        v_hi = v_lo + 1.0

    def px(n: float) -> float:
        return ml + (width - ml - mr) * n / n_hi

    def py(v: float) -> float:
        return height - mb - (height - mt - mb) * (v - v_lo) / (v_hi - v_lo)

    def pts(series) -> str:
        return " ".join(
            f"{px(n):.2f},{py(v):.2f}" for n, v in zip(ns, series)
        )

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{ml}" y1="{height - mb}" x2="{width - mr}" '
        f'y2="{height - mb}" stroke="black"/>',
        f'<line x1="{ml}" y1="{mt}" x2="{ml}" y2="{height - mb}" '
        f'stroke="black"/>',
    ]
    for i in range(6):
        n = n_hi * i / 5.0
        x = px(n)
        parts.append(
            f'<line x1="{x:.2f}" y1="{height - mb}" x2="{x:.2f}" '
            f'y2="{height - mb + 6}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{x:.2f}" y="{height - mb + 22}" font-size="12" '
            f'text-anchor="middle">{n:.6g}</text>'
        )
        v = v_lo + (v_hi - v_lo) * i / 5.0
        y = py(v)
        parts.append(
            f'<line x1="{ml - 6}" y1="{y:.2f}" x2="{ml}" y2="{y:.2f}" '
            f'stroke="black"/>'
        )
        parts.append(
            f'<text x="{ml - 10}" y="{y + 4:.2f}" font-size="12" '
            f'text-anchor="end">{v:.6g}</text>'
        )
    parts.append(
        f'<text x="{(ml + width - mr) / 2:.2f}" y="{height - 12}" '
        f'font-size="13" text-anchor="middle">iteration</text>'
    )
    parts.append(
        f'<polyline fill="none" stroke="#205494" stroke-width="1.5" '
        f'points="{pts(xs)}"/>'
    )
    parts.append(
        f'<polyline fill="none" stroke="#b0413e" stroke-width="1.5" '
        f'points="{pts(ys)}"/>'
    )
    parts.append(
        f'<text x="{width - mr - 120}" y="{mt - 16}" font-size="13" '
        f'fill="#205494">x (larvae)</text>'
    )
    parts.append(
        f'<text x="{width - mr - 50}" y="{mt - 16}" font-size="13" '
        f'fill="#b0413e">y (adults)</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def cmd_simulate(args) -> int:
    p = _params_from_args(args)
    tol = args.tol if args.tol is not None else _default_tol()
    result = orbit(
        p,
        (args.x0, args.y0),
        max_iter=args.iters,
        tol=tol,
        divergence_threshold=args.divergence_threshold,
    )
    final_n, final_s = result.samples[-1]
    payload = {
        "verdict": result.verdict.value,
        "iterations_used": result.iterations_used,
        "left_positive_quadrant": result.left_positive_quadrant,
        "final": {"iteration": final_n, "x": _jnum(final_s.x), "y": _jnum(final_s.y)},
        "samples": [
            {"iteration": n, "x": _jnum(s.x), "y": _jnum(s.y)}
            for n, s in result.samples
        ],
    }
    human = [
        f"verdict: {result.verdict.value} after {result.iterations_used} iterations",
        f"final state: ({fmt(final_s.x)}, {fmt(final_s.y)})",
    ]
    if result.limit is not None:
        payload["limit"] = {"x": _jnum(result.limit.x), "y": _jnum(result.limit.y)}
        human.append(f"limit: ({fmt(result.limit.x)}, {fmt(result.limit.y)})")
    if result.y_limit_estimate is not None:
        payload["y_limit_estimate"] = _jnum(result.y_limit_estimate)
        human.append(f"y limit estimate: {fmt(result.y_limit_estimate)}")
    if result.period is not None:
        payload["period"] = result.period
        human.append(f"period: {result.period}")
    if result.left_positive_quadrant:
        human.append("note: orbit left the positive quadrant")

    if args.csv:
        _write_csv(args.csv, result.samples)
        human.append(f"wrote CSV: {args.csv}")
    if args.svg:
        with open(args.svg, "w", encoding="ascii", newline="") as fh:
            fh.write(render_trajectory_svg(result.samples))
        human.append(f"wrote SVG: {args.svg}")
    _emit(args, payload, human)
    return 0


# ---------------------------------------------------------------------------
# simplex
# ---------------------------------------------------------------------------


def cmd_simplex(args) -> int:
    sp = SimplexParams(args.alpha, args.beta)
    report = analyze(sp)
    inv = report.invariance
    payload: dict = {
        "alpha": _jnum(sp.alpha),
        "beta": _jnum(sp.beta),
        "invariant": inv.invariant,
        "invariance_region": inv.region.value,
        "x_star": _jnum(report.x_star),
        "u_prime_at_star": _jnum(report.u_prime_at_star),
        "stability": report.stability.value,
        "shape_class": report.shape_class.value,
        "monotonic_shape": report.monotonic_shape.value,
        "period2": {
            "kind": report.period2.kind.value,
            "roots": [_jnum(r) for r in report.period2.roots],
            "containment_holds": report.period2.containment_holds,
        },
    }
    human = [
        f"invariant: {inv.invariant} (region {inv.region.value})",
        f"x*: {fmt(report.x_star)}  U'(x*): {fmt(report.u_prime_at_star)}"
        f"  [{report.stability.value}]",
        f"shape class: {report.shape_class.value} "
        f"({report.monotonic_shape.value})",
        f"period-2 set: {report.period2.kind.value}"
        + (
            "  roots: " + ", ".join(fmt(r) for r in report.period2.roots)
            if report.period2.roots
            else ""
        ),
    ]
    if inv.witness is not None:
        payload["witness"] = {
            "x": _jnum(inv.witness),
            "u_of_x": _jnum(inv.witness_image),
        }
        human.append(
            f"witness: U({fmt(inv.witness)}) = {fmt(inv.witness_image)}"
        )
    if report.x_min is not None:
        payload["x_min"] = _jnum(report.x_min)
        human.append(f"interior minimum of U at x = {fmt(report.x_min)}")
    if report.proof_roots is not None:
        payload["invariance_quadratic_roots"] = [
            _jnum(r) for r in report.proof_roots
        ]
        human.append(
            "invariance quadratic roots: "
            + ", ".join(fmt(r) for r in report.proof_roots)
        )

    if args.x0 is not None:
        limit = u_orbit_limit(sp, args.x0)
        lim_payload: dict = {"kind": limit.kind.value,
                             "iterations_used": limit.iterations_used}
        if limit.limit is not None:
            lim_payload["limit"] = _jnum(limit.limit)
            human.append(
                f"orbit from {fmt(args.x0)}: {limit.kind.value} at "
                f"{fmt(limit.limit)} ({limit.iterations_used} iterations)"
            )
        if limit.cycle is not None:
            lim_payload["cycle"] = [_jnum(v) for v in limit.cycle]
            human.append(
                f"orbit from {fmt(args.x0)}: 2-cycle "
                f"{{{fmt(limit.cycle[0])}, {fmt(limit.cycle[1])}}}"
            )
        payload["orbit"] = lim_payload

        if args.orbit:
            xs = [float(args.x0)]
            for _ in range(args.orbit):
                xs.append(float(u_map(sp, xs[-1])))
            if args.csv:
                with open(args.csv, "w", encoding="ascii", newline="") as fh:
                    fh.write("iter,x\n")
                    for i, v in enumerate(xs):
                        fh.write(f"{i},{fmt(v)}\n")
                human.append(f"wrote CSV: {args.csv}")
            else:
                payload["orbit"]["iterates"] = [_jnum(v) for v in xs]

    if args.verify:
        xs_fp = fixed_point_u(sp)
        resid = abs(float(u_map(sp, xs_fp)) - xs_fp)
        fd = fd_derivative(lambda x: float(u_map(sp, x)), xs_fp)
        scan = grid_period_scan(
            lambda x: u_map(sp, x), (0.0, 1.0), 2, grid=512
        )
        payload["verification"] = {
            "fixed_point_residual": _jnum(resid),
            "fd_derivative_gap": _jnum(abs(fd - float(u_derivative(sp, xs_fp)))),
            "period2_scan_count": len(scan),
        }
        human.append(
            f"verification: |U(x*)-x*| = {fmt(resid)}, period-2 scan found "
            f"{len(scan)} points"
        )
    _emit(args, payload, human)
    return 0


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------


def _parse_axis(spec: str):
    try:
        name, lo, hi, step_ = spec.split(":")
        lo, hi, step_ = float(lo), float(hi), float(step_)
    except ValueError:
        _usage_error(f"bad axis spec {spec!r}, expected name:lo:hi:step")
    if name not in ("alpha", "beta", "mu", "d0", "d1"):
        _usage_error(f"unknown axis parameter {name!r}")
    if step_ <= 0 or hi < lo:
        _usage_error(f"empty axis range in {spec!r}")
    count = int(math.floor((hi - lo) / step_ + 1e-9)) + 1
    return name, [lo + k * step_ for k in range(count)]


def _sweep_value(quantity: str, values: dict) -> str:
    if quantity == "x_star":
        sp = SimplexParams(values["alpha"], values["beta"])
        return fmt(fixed_point_u(sp))
    p = validate(values["alpha"], values["beta"], values["mu"],
                 values["d0"], values["d1"])
    if quantity == "region":
        return primary_region(p)
    if quantity == "r0":
        return fmt(basic_offspring_number(p))
    if quantity == "fixed_point_count":
        fps = find_fixed_points(p)
        if fps.kind is FixedPointKind.CONTINUUM:
            return "inf"
        return str(len(fps.points))
    if quantity == "spectral_radius_at_origin":
        lam1, _ = eigenvalues(jacobian(p, (0.0, 0.0)))
        return fmt(abs(lam1))
    raise ValueError(f"unknown quantity {quantity!r}")


def cmd_sweep(args) -> int:
    name1, vals1 = _parse_axis(args.axis1)
    name2, vals2 = _parse_axis(args.axis2)
    if name1 == name2:
        _usage_error("the two axes must name distinct parameters")

    fixed = {"alpha": args.alpha, "beta": args.beta, "mu": args.mu,
             "d0": args.d0, "d1": args.d1}
    needed = ("alpha", "beta") if args.quantity == "x_star" else (
        "alpha", "beta", "mu", "d0", "d1")
    for name in needed:
        if name in (name1, name2):
            continue
        if fixed[name] is None:
            _usage_error(
                f"--{name} is required (not an axis) for quantity "
                f"{args.quantity!r}"
            )

    lines = [f"{name1},{name2},{args.quantity}"]
    rows = []
    for v1 in vals1:
        for v2 in vals2:
            values = dict(fixed)
            values[name1] = v1
            values[name2] = v2
            cell = _sweep_value(args.quantity, values)
            lines.append(f"{fmt(v1)},{fmt(v2)},{cell}")
            rows.append([_jnum(v1), _jnum(v2), cell])
    text = "\n".join(lines) + "\n"
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="ascii", newline="") as fh:
            fh.write(text)
        if args.json:
            print(json.dumps(
                {"axis1": name1, "axis2": name2, "quantity": args.quantity,
                 "cells": len(rows), "output": args.output, "rows": rows},
                indent=2, sort_keys=True))
        else:
            print(f"wrote {len(rows)} cells: {args.output}")
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _check(name: str, ok: bool, detail: str, results: list) -> None:
    results.append({"name": name, "pass": bool(ok), "detail": detail})


def cmd_verify(args) -> int:
    rng = np.random.default_rng(args.seed)
    n = args.draws
    results: list[dict] = []

    worst = 0.0
    for _ in range(n):
        scale = 10.0 ** rng.uniform(-4, 8)
        a = float(rng.normal()) or 1.0
        b = float(rng.normal()) * scale
        c = float(rng.normal())
        for r in quad_roots(a, b, c):
            num = abs(a * r * r + b * r + c)
            den = max(abs(a) * abs(r) ** 2, abs(b) * abs(r), abs(c), 1.0)
            worst = max(worst, num / den)
    _check("quad_roots_residual", worst <= 1e-10,
           f"worst relative residual {fmt(worst)} over {n} draws", results)

    worst = 0.0
    for p in sample_region("omega", n, rng):
        x = float(rng.uniform(0.0, 5.0))
        y = float(rng.uniform(0.0, 5.0))
        an = jacobian(p, (x, y))
        fd = fd_jacobian(lambda u, v: step(p, (u, v)), (x, y))
        rel = float(np.max(np.abs(fd - an)) / max(1.0, float(np.max(np.abs(an)))))
        worst = max(worst, rel)
    _check("fd_jacobian_agreement", worst <= 1e-5,
           f"worst relative error {fmt(worst)} over {n} draws", results)

    worst = 0.0
    for p in sample_region("omega", n, rng):
        x = float(rng.uniform(0.0, 5.0))
        m = jacobian(p, (x, rng.uniform(0.0, 5.0)))
        ours = eigenvalues(m)
        lapack = sorted(
            np.linalg.eigvals(m),
            key=lambda lam: (-abs(lam), -lam.real, -lam.imag),
        )
        worst = max(
            worst,
            max(abs(complex(l) - o) for l, o in zip(lapack, ours)),
        )
    _check("eigenvalue_cross_check", worst <= 1e-9,
           f"worst |difference| {fmt(worst)} over {n} draws", results)

    bad = 0
    for p in sample_region("omega", n, rng):
        lhs = basic_offspring_number(p) > 1.0
        rhs = p.beta > birth_threshold(p)
        bad += lhs != rhs
    _check("r0_threshold_equivalence", bad == 0,
           f"{bad} disagreements over {n} draws", results)

    worst = 0.0
    for region in ("omega_star", "phi1", "phi2", "psi"):
        for p in sample_region(region, max(1, n // 4), rng):
            fps = find_fixed_points(p)
            for rpt in fps.points:
                scale = max(1.0, abs(rpt.location.x), abs(rpt.location.y))
                worst = max(worst, rpt.residual / scale)
    _check("fixed_point_residuals", worst <= 1e-10,
           f"worst scaled residual {fmt(worst)}", results)

    worst = 0.0
    worst_scan = 0
    for alpha, beta in sample_invariance_pairs(max(1, n // 10), rng):
        sp = SimplexParams(alpha, beta)
        xs = fixed_point_u(sp)
        worst = max(worst, abs(float(u_map(sp, xs)) - xs))
        if (alpha - 2.0) ** 2 + (beta - 1.0) ** 2 > 1e-3:
            scan = grid_period_scan(lambda x: u_map(sp, x), (0.0, 1.0), 2,
                                    grid=256)
            worst_scan = max(worst_scan, len(scan))
    ok = worst <= 1e-12 and worst_scan == 0
    _check("simplex_fixed_point_and_cycles", ok,
           f"worst |U(x*)-x*| {fmt(worst)}, stray 2-cycles {worst_scan}",
           results)

    all_ok = all(r["pass"] for r in results)
    if args.json:
        print(json.dumps({"checks": results, "pass": all_ok},
                         indent=2, sort_keys=True))
    else:
        for r in results:
            mark = "PASS" if r["pass"] else "FAIL"
            print(f"{mark} {r['name']}: {r['detail']}")
        print("verification " + ("passed" if all_ok else "FAILED"))
    return 0 if all_ok else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_param_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--alpha", type=float, required=True,
                     help="emergence rate, > 0")
    sub.add_argument("--beta", type=float, required=True,
                     help="oviposition rate, > 0")
    sub.add_argument("--mu", type=float, required=True,
                     help="adult death rate, > 0")
    sub.add_argument("--d0", type=float, default=0.0,
                     help="linear larval death, >= 0 (default 0)")
    sub.add_argument("--d1", type=float, default=0.0,
                     help="density-dependent larval death, >= 0 (default 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mospop",
        description="Analysis toolkit for a discrete-time two-stage "
        "mosquito population map.",
        epilog=f"Environment: {TOL_ENV} overrides the default simulate "
        "tolerance (1e-9).",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    s = subs.add_parser("classify", help="region membership and r0")
    _add_param_flags(s)
    s.add_argument("--eps", type=float, default=None,
                   help="also list boundaries within eps (report only)")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_classify)

    s = subs.add_parser("fixed-points", help="enumerate fixed points")
    _add_param_flags(s)
    s.add_argument("--samples", type=int, default=None,
                   help="evenly spaced curve samples for the continuum case "
                   "(default grid: 0, 0.5, 1, 2, 10)")
    s.add_argument("--verify", action="store_true",
                   help="cross-check residuals with the oracle routines")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_fixed_points)

    s = subs.add_parser("stability", help="linearize and type fixed points")
    _add_param_flags(s)
    grp = s.add_mutually_exclusive_group()
    grp.add_argument("--at", type=float, nargs=2, metavar=("X", "Y"),
                     default=None, help="classify this state instead of all "
                     "fixed points")
    grp.add_argument("--all-fixed-points", action="store_true",
                     help="classify every fixed point (the default)")
    s.add_argument("--tol", type=float, default=None,
                   help="fixed-point residual tolerance (default 1e-9)")
    s.add_argument("--verify", action="store_true",
                   help="cross-check with finite differences and LAPACK")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_stability)

    s = subs.add_parser("simulate", help="iterate the map from a state")
    _add_param_flags(s)
    s.add_argument("--x0", type=float, required=True)
    s.add_argument("--y0", type=float, required=True)
    s.add_argument("--iters", type=int, default=1_000_000,
                   help="iteration budget (default 1e6)")
    s.add_argument("--tol", type=float, default=None,
                   help=f"convergence tolerance (default 1e-9, or {TOL_ENV})")
    s.add_argument("--divergence-threshold", type=float, default=1e9,
                   help="x beyond this is a divergence verdict (default 1e9)")
    s.add_argument("--csv", type=str, default=None,
                   help="write sampled iterates to this CSV file")
    s.add_argument("--svg", type=str, default=None,
                   help="write a trajectory plot to this SVG file")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_simulate)

    s = subs.add_parser("simplex", help="matched-rates case on the simplex")
    s.add_argument("--alpha", type=float, required=True)
    s.add_argument("--beta", type=float, required=True)
    s.add_argument("--x0", type=float, default=None,
                   help="also report the U orbit limit from this start")
    s.add_argument("--orbit", type=int, default=0,
                   help="with --x0: record this many U iterates")
    s.add_argument("--csv", type=str, default=None,
                   help="write recorded U iterates to this CSV file")
    s.add_argument("--verify", action="store_true",
                   help="cross-check with the oracle routines")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_simplex)

    s = subs.add_parser("sweep", help="tabulate a quantity over a 2D grid")
    s.add_argument("--axis1", type=str, required=True,
                   help="first axis as name:lo:hi:step (rows)")
    s.add_argument("--axis2", type=str, required=True,
                   help="second axis as name:lo:hi:step (columns)")
    s.add_argument("--quantity", type=str, required=True,
                   choices=SWEEP_QUANTITIES)
    s.add_argument("--output", type=str, required=True,
                   help="CSV output path, or - for stdout")
    s.add_argument("--json", action="store_true",
                   help="print a JSON summary object instead of the "
                   "plain confirmation line")
    for name in ("alpha", "beta", "mu"):
        s.add_argument(f"--{name}", type=float, default=None,
                       help=f"fixed {name} when it is not an axis")
    for name in ("d0", "d1"):
        s.add_argument(f"--{name}", type=float, default=0.0,
                       help=f"fixed {name} when it is not an axis (default 0)")
    s.set_defaults(func=cmd_sweep)

    s = subs.add_parser("verify", help="run the oracle cross-check suite")
    s.add_argument("--seed", type=int, default=20260821)
    s.add_argument("--draws", type=int, default=300)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_verify)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        # DomainError and every library-defined condition failure derive
        # from ValueError: all count as invalid input to the CLI.
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
