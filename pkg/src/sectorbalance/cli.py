"""Command-line front end: areas, residual, solve, sweep, render, verify.

Exit codes: 0 success, 1 usage error, 2 domain error (invalid circle, fan,
or interval), 3 solver or tolerance failure.  Angles are radians unless
``--degrees`` is given, which converts command-line angle flags at the
boundary; reports always use radians.
"""

from __future__ import annotations

import argparse
import itertools
import math
import sys
from pathlib import Path

from .conditions import (
    CASE_EIGHT,
    CASE_FOUR,
    CASE_GENERAL,
    CASE_SIX,
    VARIANT_AS_PRINTED,
    VARIANT_CORRECTED,
    case_residual,
    residual_six,
)
from .geometry import (
    TWO_PI,
    ChordFan,
    CircleConfig,
    DomainError,
    area_report,
    build_partition,
)
from .oracle import (
    MonteCarloSpec,
    QuadratureError,
    QuadratureSpec,
    montecarlo_area,
    quadrature_report,
    quadrature_residual,
)
from .render import render_svg
from .serialize import ConfigError, Report, area_rows, read_config, write_report
from .solver import (
    SolveRequest,
    SolverError,
    SweepAxis,
    feasible_interval,
    scan_sign_change,
    solve_free_angle,
    solve_pole_radius,
    sweep_grid,
)
from .verify import run_checks

_CLI_CASES = {
    "four": CASE_FOUR,
    "six": CASE_SIX,
    "eight": CASE_EIGHT,
    "general": CASE_GENERAL,
}

_TAG_BY_SIZE = {2: CASE_FOUR, 3: CASE_SIX, 4: CASE_EIGHT}


_DEG = math.pi / 180.0


def _effective_tag(case_tag: str | None, chords: tuple[float, ...]) -> str:
    if case_tag is not None:
        return case_tag
    return _TAG_BY_SIZE.get(len(chords), CASE_GENERAL)


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad usage; this tool reserves 2 for domain errors."""

    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _parse_floats(text: str, flag: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(","))
    except ValueError as exc:
        raise ConfigError(f"{flag} expects comma-separated numbers, got {text!r}") from exc


def _parse_grid_axis(text: str) -> SweepAxis:
    head, sep, tail = text.partition("=")
    parts = tail.split(":")
    if not sep or len(parts) != 3:
        raise ConfigError(f"--grid expects axis=lo:hi:n, got {text!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
        count = int(parts[2])
    except ValueError as exc:
        raise ConfigError(f"--grid expects numeric lo:hi:n, got {text!r}") from exc
    return SweepAxis(name=head, lo=lo, hi=hi, count=count)


def _add_circle_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("--a", type=float, help="circle radius")
    p.add_argument("--r0", type=float, help="pole-to-centre distance (default 0)")
    p.add_argument("--theta0", type=float, help="direction of the centre from the pole (default 0)")
    p.add_argument("--chords", help="comma-separated chord base angles")
    p.add_argument("--config", help="JSON config file; flags override its fields")
    p.add_argument("--degrees", action="store_true", help="interpret angle flags in degrees")


def _add_output_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), default="json")


def _resolved_inputs(args) -> tuple[CircleConfig, tuple[float, ...], str, float | None, int]:
    """Merge config file and flags into (circle, chords, mode, tol, seed)."""
    a = r0 = theta0 = None
    chords: tuple[float, ...] | None = None
    mode = "closed"
    tol = None
    seed = 0
    if args.config:
        try:
            text = Path(args.config).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from exc
        rc = read_config(text)
        a, r0, theta0 = rc.circle.a, rc.circle.r0, rc.circle.theta0
        chords, mode, tol, seed = rc.chords, rc.mode, rc.tol, rc.seed

    scale = _DEG if args.degrees else 1.0
    if args.a is not None:
        a = args.a
    if args.r0 is not None:
        r0 = args.r0
    if args.theta0 is not None:
        theta0 = args.theta0 * scale
    if args.chords is not None:
        chords = tuple(t * scale for t in _parse_floats(args.chords, "--chords"))
    if getattr(args, "mode", None) is not None:
        mode = args.mode
    if getattr(args, "tol", None) is not None:
        tol = args.tol
    if getattr(args, "seed", None) is not None:
        seed = args.seed

    if a is None:
        raise ConfigError("missing circle radius: pass --a or --config")
    if chords is None:
        raise ConfigError("missing chord angles: pass --chords or --config")
    circle = CircleConfig(a=a, r0=r0 if r0 is not None else 0.0,
                          theta0=theta0 if theta0 is not None else 0.0)
    return circle, chords, mode, tol, seed


def _quad_spec(cfg: CircleConfig, tol: float | None) -> QuadratureSpec:
    return QuadratureSpec(abs_tol=(tol if tol is not None else 1e-12 * cfg.a * cfg.a))


def _circle_fields(cfg: CircleConfig, chords: tuple[float, ...]) -> dict:
    return {"a": cfg.a, "r0": cfg.r0, "theta0": cfg.theta0, "chords": list(chords)}


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        Path(out_path).write_text(text, encoding="utf-8", newline="")
    else:
        sys.stdout.write(text)


def _cmd_areas(args) -> int:
    cfg, chords, mode, tol, seed = _resolved_inputs(args)
    part = build_partition(ChordFan(chords))
    bounds = part.boundaries
    uppers = bounds[1:] + (bounds[0] + TWO_PI,)

    payload = {"command": "areas", "mode": mode, **_circle_fields(cfg, chords)}
    sectors: list[dict] = []
    if mode == "montecarlo":
        spec = MonteCarloSpec(samples=args.samples, seed=seed)
        estimates = montecarlo_area(cfg, part, spec)
        payload["samples"] = spec.samples
        payload["seed"] = spec.seed
        areas = [est for est, _ in estimates]
        for i, ((est, se), lo, hi) in enumerate(zip(estimates, bounds, uppers), start=1):
            sectors.append(
                {"index": i, "theta_lo": lo, "theta_hi": hi, "area": est,
                 "stderr": se, "parity": "odd" if i % 2 else "even"}
            )
        odd = math.fsum(areas[0::2])
        even = math.fsum(areas[1::2])
    else:
        if mode == "quadrature":
            report = quadrature_report(cfg, part, _quad_spec(cfg, tol))
        elif mode == "closed":
            report = area_report(cfg, part)
        else:
            raise ConfigError(f"areas does not support mode {mode!r}")
        areas = list(report.sector_areas)
        for i, (area, lo, hi) in enumerate(zip(areas, bounds, uppers), start=1):
            sectors.append(
                {"index": i, "theta_lo": lo, "theta_hi": hi, "area": area,
                 "parity": "odd" if i % 2 else "even"}
            )
        odd, even = report.odd_sum, report.even_sum
    payload["sectors"] = sectors
    payload["odd_sum"] = odd
    payload["even_sum"] = even
    payload["total"] = odd + even

    report_obj = Report(
        payload=payload,
        csv_header=("index", "theta_lo", "theta_hi", "area", "parity"),
        csv_rows=area_rows(bounds, uppers, areas),
    )
    _emit(write_report(report_obj, args.format), args.out)
    return 0


def _cmd_residual(args) -> int:
    cfg, chords, mode, tol, _ = _resolved_inputs(args)
    case_tag = _CLI_CASES[args.case] if args.case else None
    closed = case_residual(cfg, chords, case_tag)
    if mode == "quadrature":
        value = quadrature_residual(cfg, chords, _quad_spec(cfg, tol))
    elif mode == "closed":
        value = closed.residual
    else:
        raise ConfigError(f"residual does not support mode {mode!r}")

    payload = {
        "command": "residual",
        "case": closed.case_tag,
        "variant": closed.variant,
        "mode": mode,
        **_circle_fields(cfg, chords),
        "residual": value,
    }
    rows = [(closed.case_tag, closed.variant, value)]
    if args.audit:
        audit = {
            VARIANT_CORRECTED: closed.residual,
            "quadrature": quadrature_residual(cfg, chords, _quad_spec(cfg, tol)),
        }
        if closed.case_tag == CASE_SIX:
            printed = residual_six(cfg, *chords, variant=VARIANT_AS_PRINTED)
            audit[VARIANT_AS_PRINTED] = printed.residual
        payload["audit"] = audit
        rows.extend((closed.case_tag, variant, v) for variant, v in audit.items())
    _emit(
        write_report(
            Report(payload=payload, csv_header=("case", "variant", "residual"),
                   csv_rows=tuple(rows)),
            args.format,
        ),
        args.out,
    )
    return 0


def _cmd_solve(args) -> int:
    cfg, chords, _, tol, _ = _resolved_inputs(args)
    case_tag = _CLI_CASES[args.case] if args.case else None
    tol = tol if tol is not None else 1e-11
    scale = _DEG if args.degrees else 1.0

    if args.free_index is not None:
        k = args.free_index
        if not 1 <= k <= len(chords):
            raise ConfigError(f"--free-index must be in 1..{len(chords)}, got {k}")
        fixed = chords[: k - 1] + chords[k:]
        if args.bracket is not None:
            ends = _parse_floats(args.bracket, "--bracket")
            if len(ends) != 2:
                raise ConfigError(f"--bracket expects lo,hi, got {args.bracket!r}")
            bracket = (ends[0] * scale, ends[1] * scale)
        else:
            # Heuristic: scan the feasible interval for a sign change.
            lo, hi = feasible_interval(fixed, k - 1)
            margin = 1e-6 * max(1.0, abs(lo), abs(hi))

            def f(value: float) -> float:
                return case_residual(cfg, fixed[: k - 1] + (value,) + fixed[k - 1:], case_tag).residual

            bracket = scan_sign_change(f, lo + margin, hi - margin)
        outcome = solve_free_angle(
            SolveRequest(cfg=cfg, fixed_angles=fixed, free_index=k - 1,
                         bracket=bracket, tol=tol, case_tag=case_tag)
        )
        free_name = f"theta{k}"
        bracket_field: list[float] | None = [bracket[0], bracket[1]]
    else:
        if case_tag not in (CASE_FOUR, CASE_EIGHT):
            raise ConfigError(
                "pole-radius solve needs --case four or eight; pass --free-index to solve for an angle"
            )
        outcome = solve_pole_radius(chords, cfg.theta0, cfg.a, case_tag, tol)
        free_name = "r0"
        bracket_field = None

    payload = {
        "command": "solve",
        "case": _effective_tag(case_tag, chords),
        "free_parameter": free_name,
        "bracket": bracket_field,
        **_circle_fields(cfg, chords),
        "root": outcome.root,
        "residual_at_root": outcome.residual_at_root,
        "iterations": outcome.iterations,
        "oracle_check": outcome.oracle_check,
    }
    rows = ((free_name, outcome.root, outcome.residual_at_root, outcome.iterations,
             outcome.oracle_check),)
    _emit(
        write_report(
            Report(payload=payload,
                   csv_header=("free_parameter", "root", "residual_at_root",
                               "iterations", "oracle_check"),
                   csv_rows=rows),
            args.format,
        ),
        args.out,
    )
    return 0


def _cmd_sweep(args) -> int:
    cfg, chords, _, _, _ = _resolved_inputs(args)
    case_tag = _CLI_CASES[args.case] if args.case else None
    if not args.grid:
        raise ConfigError("sweep needs at least one --grid axis=lo:hi:n")
    axes = []
    for text in args.grid:
        ax = _parse_grid_axis(text)
        if args.degrees and ax.name.startswith("theta"):
            ax = SweepAxis(name=ax.name, lo=ax.lo * _DEG, hi=ax.hi * _DEG, count=ax.count)
        axes.append(ax)
    grid = sweep_grid(cfg, chords, axes, case_tag)

    payload = {
        "command": "sweep",
        "case": _effective_tag(case_tag, chords),
        **_circle_fields(cfg, chords),
        "axes": [{"name": ax.name, "lo": ax.lo, "hi": ax.hi, "count": ax.count}
                 for ax in grid.axes],
        "values": list(grid.values),
    }
    coords = itertools.product(*(ax.grid_values() for ax in grid.axes))
    rows = tuple((*point, value) for point, value in zip(coords, grid.values))
    _emit(
        write_report(
            Report(payload=payload,
                   csv_header=tuple(ax.name for ax in grid.axes) + ("residual",),
                   csv_rows=rows),
            args.format,
        ),
        args.out,
    )
    return 0


def _cmd_render(args) -> int:
    cfg, chords, _, _, _ = _resolved_inputs(args)
    part = build_partition(ChordFan(chords))
    _emit(render_svg(cfg, part, area_report(cfg, part)), args.out)
    return 0


def _cmd_verify(args) -> int:
    trials = args.trials
    results = run_checks(
        seed=args.seed if args.seed is not None else 0,
        trials=trials,
        poles=max(4, trials // 10),
        solver_trials=max(5, trials // 20),
        mc_samples=args.samples,
    )
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        print(f"{status} {result.name}: {result.detail}", file=sys.stderr)
    payload = {
        "command": "verify",
        "checks": [
            {"name": r.name, "passed": r.passed, "detail": r.detail} for r in results
        ],
        "passed": all(r.passed for r in results),
    }
    _emit(
        write_report(
            Report(payload=payload, csv_header=("name", "passed", "detail"),
                   csv_rows=tuple((r.name, r.passed, r.detail) for r in results)),
            args.format,
        ),
        args.out,
    )
    return 0 if payload["passed"] else 3


def build_parser() -> _Parser:
    parser = _Parser(prog="sectorbalance",
                     description="Sector areas and equal-area balance conditions "
                                 "for chord fans through an interior pole.")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    p_areas = sub.add_parser("areas", help="per-sector areas and alternating sums")
    _add_circle_opts(p_areas)
    _add_output_opts(p_areas)
    p_areas.add_argument("--mode", choices=("closed", "quadrature", "montecarlo"))
    p_areas.add_argument("--tol", type=float, help="quadrature absolute tolerance")
    p_areas.add_argument("--seed", type=int, help="Monte Carlo seed")
    p_areas.add_argument("--samples", type=int, default=1_000_000)
    p_areas.set_defaults(handler=_cmd_areas)

    p_res = sub.add_parser("residual", help="balance residual of a fan")
    _add_circle_opts(p_res)
    _add_output_opts(p_res)
    p_res.add_argument("--case", choices=tuple(_CLI_CASES))
    p_res.add_argument("--mode", choices=("closed", "quadrature"))
    p_res.add_argument("--tol", type=float, help="quadrature absolute tolerance")
    p_res.add_argument("--audit", action="store_true",
                       help="add corrected/as-printed/quadrature comparison")
    p_res.set_defaults(handler=_cmd_residual)

    p_solve = sub.add_parser("solve", help="solve for a balancing angle or pole radius")
    _add_circle_opts(p_solve)
    _add_output_opts(p_solve)
    p_solve.add_argument("--case", choices=tuple(_CLI_CASES))
    p_solve.add_argument("--free-index", type=int, dest="free_index",
                         help="1-based chord angle to free; omit to solve for r0")
    p_solve.add_argument("--bracket", help="lo,hi bracket for the freed angle")
    p_solve.add_argument("--tol", type=float, help="root tolerance (default 1e-11)")
    p_solve.set_defaults(handler=_cmd_solve)

    p_sweep = sub.add_parser("sweep", help="residual grid over r0/theta0/theta<k> axes")
    _add_circle_opts(p_sweep)
    _add_output_opts(p_sweep)
    p_sweep.add_argument("--case", choices=tuple(_CLI_CASES))
    p_sweep.add_argument("--grid", action="append",
                         help="axis=lo:hi:n (repeatable; axes r0, theta0, theta<k>)")
    p_sweep.set_defaults(handler=_cmd_sweep)

    p_render = sub.add_parser("render", help="standalone SVG diagram of the fan")
    _add_circle_opts(p_render)
    p_render.add_argument("--out", help="write the SVG here instead of stdout")
    p_render.set_defaults(handler=_cmd_render)

    p_verify = sub.add_parser("verify", help="run the oracle-equivalence and audit battery")
    _add_output_opts(p_verify)
    p_verify.add_argument("--seed", type=int, help="battery seed (default 0)")
    p_verify.add_argument("--trials", type=int, default=1000,
                          help="randomized trials per identity check")
    p_verify.add_argument("--samples", type=int, default=1_000_000,
                          help="Monte Carlo samples per pole")
    p_verify.set_defaults(handler=_cmd_verify)

    return parser


def run_cli(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse help/usage paths
        code = exc.code
        return code if isinstance(code, int) else 1
    try:
        return args.handler(args)
    except ConfigError as exc:
        print(f"sectorbalance: error: {exc}", file=sys.stderr)
        return 1
    except DomainError as exc:
        print(f"sectorbalance: domain error: {exc}", file=sys.stderr)
        return 2
    except (SolverError, QuadratureError) as exc:
        print(f"sectorbalance: solver error: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run_cli())
