"""Command-line front end.

Every subcommand reads one material (a JSON file, or the name of a built-in
preset), computes one thing and writes it once, atomically, as CSV or JSON.
Failures print a JSON error record on stderr and exit with 1 (usage),
2 (material) or 3 (numerical).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__, classical, rayleigh, stroh
from .errors import CosseratError
from .impedance import DEFAULT_N, NEAR_SONIC, riccati_residual
from .material import CosseratMaterial, aluminum_epoxy, characteristic_speeds, check_conditions

PRESETS = {"aluminum-epoxy": aluminum_epoxy}
EXIT = {"usage": 1, "material": 2, "numerical": 3}


class UsageError(CosseratError):
    category = "usage"


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit 2, which is reserved for materials
        raise UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    command: str
    material: str
    k: float
    k_min: float
    k_max: float
    k_points: int
    k_scale: str
    v_points: int
    out: str | None
    fmt: str
    quad_n: int
    tol: float | None

    def __post_init__(self) -> None:
        if not self.k > 0:
            raise UsageError(f"--k must be positive, got {self.k}")
        if not 0 < self.k_min < self.k_max:
            raise UsageError(f"need 0 < --k-min < --k-max, got {self.k_min}, {self.k_max}")
        if self.k_points < 2 or self.v_points < 2:
            raise UsageError("--k-points and --v-points must be at least 2")
        if self.quad_n < 16:
            raise UsageError("--quad-n must be at least 16")

    def k_grid(self) -> np.ndarray:
        if self.k_scale == "log":
            return np.geomspace(self.k_min, self.k_max, self.k_points)
        return np.linspace(self.k_min, self.k_max, self.k_points)


def load_material(spec: str) -> CosseratMaterial:
    if spec in PRESETS:
        return PRESETS[spec]()
    try:
        text = Path(spec).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read material file {spec}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"material file {spec} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError("material file must hold a JSON object")
    return CosseratMaterial.from_mapping(data)


# ---------------------------------------------------------------------------
# output


@dataclass
class Table:
    description: str
    columns: list[str]
    rows: list[list[float]]
    extra: dict | None = None


def _clean(x):
    """JSON-safe copy: complex as [re, im], NaN as null, arrays as lists."""
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, np.ndarray):
        return _clean(x.tolist())
    if isinstance(x, (complex, np.complexfloating)):
        return [_clean(float(x.real)), _clean(float(x.imag))]
    if isinstance(x, (np.floating, float)):
        return None if not math.isfinite(float(x)) else float(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    return x


def _fmt(x: float) -> str:
    return "nan" if not math.isfinite(x) else f"{x:.9g}"


def render(command: str, material: CosseratMaterial, result, fmt: str) -> str:
    if fmt == "csv":
        if not isinstance(result, Table):
            raise UsageError(f"{command} produces a record, use --format json")
        lines = [f"# {result.description}; columns: {', '.join(result.columns)}", ",".join(result.columns)]
        lines += [",".join(_fmt(float(v)) for v in row) for row in result.rows]
        return "\n".join(lines) + "\n"
    if isinstance(result, Table):
        body = {"description": result.description, "columns": result.columns, "rows": result.rows}
        if result.extra:
            body.update(result.extra)
    else:
        body = result
    doc = {"command": command, "version": __version__, "material": material.to_mapping(), "result": body}
    return json.dumps(_clean(doc), indent=2, sort_keys=True, allow_nan=False) + "\n"


def write_atomic(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    target = Path(path)
    fd, tmp = tempfile.mkstemp(dir=target.parent or Path("."), prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


# ---------------------------------------------------------------------------
# subcommands


def cmd_check(cfg: RunConfig, m: CosseratMaterial):
    report = check_conditions(m)
    return {"conditions": report.as_dict(), "speeds": characteristic_speeds(m).as_dict()}


def _k_values(cfg: RunConfig, explicit_k: bool) -> np.ndarray:
    return np.array([cfg.k]) if explicit_k else cfg.k_grid()


def cmd_limit_speed(cfg: RunConfig, m: CosseratMaterial, explicit_k: bool = True):
    rows = []
    for k in _k_values(cfg, explicit_k):
        ctx = stroh.context(m, float(k))
        rows.append([float(k), stroh.limiting_speed_analytic(ctx), stroh.limiting_speed_scan(ctx)])
    return Table("limiting speed", ["k", "v_hat_analytic", "v_hat_scan"], rows)


def cmd_solve(cfg: RunConfig, m: CosseratMaterial, method: str = "bisection"):
    ctx = stroh.context(m, cfg.k)
    if method == "newton":
        coarse = rayleigh.solve(ctx, tol=1e-3 * stroh.limiting_speed_analytic(ctx), n=cfg.quad_n)
        sol = rayleigh.solve_newton(ctx, (coarse.M_at_root, coarse.v_R))
    elif method == "stroh":
        sol = rayleigh.solve_stroh(ctx, n=cfg.quad_n)
    else:
        sol = rayleigh.solve(ctx, tol=cfg.tol, n=cfg.quad_n)
    spec = np.linalg.eigvals(sol.E)
    return {
        "k": cfg.k,
        "v_R": sol.v_R,
        "v_hat": sol.v_hat,
        "margin": sol.margin,
        "method": sol.method.value,
        "y0": sol.y0,
        "z0": sol.z0,
        "spectrum_E": spec[np.argsort(spec.real)],
        "M": sol.M_at_root,
        "E": sol.E,
        "residuals": {
            "det": sol.det_residual,
            "riccati": riccati_residual(ctx.T, ctx.R, ctx.Q(sol.v_R), sol.M_at_root),
            "traction": rayleigh.boundary_traction_residual(sol, ctx),
        },
    }


def cmd_secular_curve(cfg: RunConfig, m: CosseratMaterial):
    ctx = stroh.context(m, cfg.k)
    v_hat = stroh.limiting_speed_analytic(ctx)
    grid = np.linspace(0.0, (1.0 - NEAR_SONIC) * v_hat, cfg.v_points)
    dets = rayleigh.det_curve(ctx, grid, cfg.quad_n)
    rows = [[float(v), float(d), stroh.stroh_secular(ctx, float(v))] for v, d in zip(grid, dets)]
    return Table(f"secular functions at k={cfg.k:g}", ["v", "det_M", "s_stroh"], rows, {"v_hat": v_hat})


def cmd_dispersion(cfg: RunConfig, m: CosseratMaterial):
    table = rayleigh.dispersion_sweep(m, cfg.k_grid(), n=cfg.quad_n, tol=cfg.tol)
    rows = [list(map(float, r)) for r in zip(table.k, table.v_R, table.omega, table.group_velocity)]
    return Table("dispersion", ["k", "v_R", "omega", "group_velocity"], rows,
                 {"failed": {str(i): rec for i, rec in table.errors.items()}})


def cmd_field(cfg: RunConfig, m: CosseratMaterial, x1_points: int, x2_points: int,
              depth: float | None, t: float, phase: complex):
    ctx = stroh.context(m, cfg.k)
    sol = rayleigh.solve(ctx, tol=cfg.tol, n=cfg.quad_n)
    alpha = float(np.min(np.linalg.eigvals(sol.E).real))
    if depth is None:
        depth = 5.0 / (ctx.k * alpha)
    grid = rayleigh.FieldGrid(
        x1=tuple(np.linspace(0.0, 2.0 * math.pi / ctx.k, x1_points)),
        x2=tuple(np.linspace(0.0, depth, x2_points)),
        t=(t,),
        phase=phase,
    )
    samples = rayleigh.wavefield(sol, ctx, grid)
    rows = [[s.x1, s.x2, s.t, s.u1, s.u2, s.theta3] for s in samples]
    return Table(f"wave field at k={cfg.k:g}, v_R={sol.v_R:.9g}", ["x1", "x2", "t", "u1", "u2", "theta3"], rows,
                 {"v_R": sol.v_R, "traction_residual": rayleigh.boundary_traction_residual(sol, ctx)})


def cmd_classical(cfg: RunConfig, m: CosseratMaterial):
    speeds = classical.ClassicalSpeeds.from_lame(m.lambda_e, m.mu_e, m.rho)
    roots = {
        "mielke_fu": classical.rayleigh_speed(speeds, "mielke_fu"),
        "classic": classical.rayleigh_speed(speeds, "classic"),
        "stroh": classical.rayleigh_speed_stroh(m),
    }
    grid = np.linspace(0.0, speeds.c_t, cfg.v_points + 1)[:-1]
    rows = [[float(v), classical.secular_mielke_fu(speeds, float(v), cfg.k),
             classical.secular_classic(speeds, float(v)), classical.secular_stroh_classical(m, float(v))]
            for v in grid]
    return Table("classical secular forms", ["v", "s_mielke_fu", "s_classic", "s_stroh"], rows, {"roots": roots})


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--material", required=True,
                        help="material JSON file, or a preset name: " + ", ".join(PRESETS))
    common.add_argument("--k", type=float, default=None, help="wavenumber (default 1)")
    common.add_argument("--k-min", type=float, default=0.1)
    common.add_argument("--k-max", type=float, default=100.0)
    common.add_argument("--k-points", type=int, default=50)
    common.add_argument("--k-scale", choices=("lin", "log"), default="log")
    common.add_argument("--v-points", type=int, default=101)
    common.add_argument("--out", default=None, help="output path (stdout if omitted)")
    common.add_argument("--format", dest="fmt", choices=("csv", "json"), default=None)
    common.add_argument("--quad-n", type=int, default=DEFAULT_N)
    common.add_argument("--tol", type=float, default=None, help="root bracket width")

    parser = _Parser(prog="cosserat-rayleigh", description="Rayleigh waves in Cosserat half-spaces")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("check", parents=[common], help="condition sets and bulk speeds")
    sub.add_parser("limit-speed", parents=[common], help="limiting speed at --k, or over the k grid")
    p = sub.add_parser("solve", parents=[common], help="Rayleigh speed and boundary amplitude")
    p.add_argument("--method", choices=("bisection", "newton", "stroh"), default="bisection")
    sub.add_parser("secular-curve", parents=[common], help="det M and the Stroh function on a v grid")
    sub.add_parser("dispersion", parents=[common], help="v_R, omega and group velocity over the k grid")
    p = sub.add_parser("field", parents=[common], help="displacement and micro-rotation on an (x1, x2) grid")
    p.add_argument("--x1-points", type=int, default=41)
    p.add_argument("--x2-points", type=int, default=41)
    p.add_argument("--depth", type=float, default=None, help="deepest x2 (default 5 decay lengths)")
    p.add_argument("--t", type=float, default=0.0)
    p.add_argument("--phase", type=complex, default=1.0, help="complex amplitude factor, e.g. 1j")
    sub.add_parser("classical", parents=[common], help="classical secular forms and their roots")
    return parser


_TABLE_COMMANDS = {"limit-speed", "secular-curve", "dispersion", "field", "classical"}


def run(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        fmt = args.fmt or ("csv" if args.command in _TABLE_COMMANDS else "json")
        cfg = RunConfig(
            command=args.command, material=args.material, k=1.0 if args.k is None else args.k,
            k_min=args.k_min, k_max=args.k_max, k_points=args.k_points, k_scale=args.k_scale,
            v_points=args.v_points, out=args.out, fmt=fmt, quad_n=args.quad_n, tol=args.tol,
        )
        m = load_material(cfg.material)
        status = 0
        if cfg.command == "check":
            result = cmd_check(cfg, m)
            if not result["conditions"]["in_plane_real_waves"]["holds"]:
                status = EXIT["material"]
        elif cfg.command == "limit-speed":
            result = cmd_limit_speed(cfg, m, explicit_k=args.k is not None)
        elif cfg.command == "solve":
            result = cmd_solve(cfg, m, args.method)
        elif cfg.command == "secular-curve":
            result = cmd_secular_curve(cfg, m)
        elif cfg.command == "dispersion":
            result = cmd_dispersion(cfg, m)
        elif cfg.command == "field":
            if args.x1_points < 1 or args.x2_points < 1:
                raise UsageError("--x1-points and --x2-points must be positive")
            result = cmd_field(cfg, m, args.x1_points, args.x2_points, args.depth, args.t, args.phase)
        else:
            result = cmd_classical(cfg, m)
        write_atomic(cfg.out, render(cfg.command, m, result, cfg.fmt))
        if status:
            _report({"error": "InadmissibleMaterial", "category": "material",
                     "message": "in-plane real-wave conditions fail"})
        return status
    except CosseratError as exc:
        _report(exc.record())
        return EXIT.get(exc.category, 3)
    except OSError as exc:
        _report({"error": type(exc).__name__, "category": "usage", "message": str(exc)})
        return EXIT["usage"]


def _report(record: dict) -> None:
    sys.stderr.write(json.dumps(record, sort_keys=True) + "\n")


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
