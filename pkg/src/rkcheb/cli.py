"""Command-line front end: the four experiments as reproducible CSV emitters.

Subcommands:
  rkc-domain         complex-plane |R| raster of the single-rate scheme
  arkc-domain        spectral-radius raster of the coupled 2x2 model problem
  model-instability  norm-vs-time of the multirate run and its single-rate control
  heat-convergence   step-size ladder of the heat benchmark

All outputs are headed CSV with >= 15 significant digits; identical
configurations produce byte-identical files.  An optional TOML config file
(--config) may preset any flag per subcommand section; explicit flags win.
Exit codes: 0 success, 2 usage error, 1 runtime error.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from rkcheb.arkc import arkc_integrate
from rkcheb.chebyshev import build_coefficients
from rkcheb.heatbench import STUDY_EPS, build_heat_problem, convergence_study, reference_solution
from rkcheb.rkc import OdeProblem, integrate
from rkcheb.stability import ModelProblem, scan_arkc_domain, scan_rkc_domain, spectral_radius_2x2

__all__ = ["main"]


def _write_csv(path: str, header: str, rows: Iterable[Sequence[float]]) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(f"{value:.17g}" for value in row) + "\n")


def _cmd_rkc_domain(args: argparse.Namespace) -> None:
    coeffs = build_coefficients(args.order, args.s, args.eps)
    xmin = args.xmin if args.xmin is not None else -1.05 * coeffs.ell - 1.0
    xmax = args.xmax if args.xmax is not None else max(1.0, 0.05 * coeffs.ell)
    ymax = args.ymax if args.ymax is not None else max(4.0, 0.12 * coeffs.ell)
    grid = scan_rkc_domain(
        args.order,
        args.s,
        args.eps,
        (xmin, xmax),
        (-ymax, ymax),
        nx=args.res,
        ny=args.res,
    )
    rows = (
        (grid.x_axis[ix], grid.y_axis[iy], grid.abs_r[iy, ix])
        for iy in range(grid.y_axis.size)
        for ix in range(grid.x_axis.size)
    )
    _write_csv(args.out, "x,y,absR", rows)


def _cmd_arkc_domain(args: argparse.Namespace) -> None:
    grid = scan_arkc_domain(
        args.s, args.m, args.order, args.eps, args.theta, nz=args.res, nw=args.res
    )
    rows = (
        (grid.z_axis[iz], grid.w_axis[iw], grid.rho[iw, iz])
        for iw in range(grid.w_axis.size)
        for iz in range(grid.z_axis.size)
    )
    _write_csv(args.out, "z,w,rho", rows)


def _cmd_model_instability(args: argparse.Namespace) -> None:
    lam, zeta = args.lam, args.zeta
    if lam > 0 or zeta > 0:
        raise ValueError("lambda and zeta must be nonpositive")
    model = ModelProblem(z=args.tau * lam, w=args.tau * zeta, theta=args.theta)
    split = model.split_ode()
    # undo the step-scaling: integrate y' = A y with A = B_theta / tau
    matrix = model.matrix() / args.tau
    fast_proj = split.mask.astype(float)
    slow_proj = 1.0 - fast_proj
    split.f_fast = lambda t, y: fast_proj * (matrix @ y)
    split.f_slow = lambda t, y: slow_proj * (matrix @ y)
    split.rho_fast = lambda t, y: abs(lam)
    split.rho_slow = lambda t, y: abs(zeta)
    split.y0 = np.array([1.0, 1.0])

    t_end = args.steps * args.tau
    multirate = arkc_integrate(split, t_end, args.tau, order=args.order, eps=args.eps)
    _write_csv(
        args.out,
        "t,l2N",
        ((rec.t, float(np.linalg.norm(rec.y))) for rec in multirate),
    )

    control_problem = OdeProblem(
        n=2,
        rhs=lambda t, y: matrix @ y,
        spectral_radius=lambda t, y: spectral_radius_2x2(matrix),
        y0=np.array([1.0, 1.0]),
    )
    control = integrate(control_problem, t_end, args.tau, order=args.order, eps=args.eps)
    control_out = args.control_out
    if control_out is None:
        path = Path(args.out)
        control_out = str(path.with_name(path.stem + "_rkc" + path.suffix))
    _write_csv(
        control_out,
        "t,l2N",
        ((rec.t, float(np.linalg.norm(rec.y))) for rec in control),
    )


def _cmd_heat_convergence(args: argparse.Namespace) -> None:
    problem = build_heat_problem()
    y_ref = reference_solution(problem, eps=args.eps)
    table = convergence_study(
        problem, k_min=args.kmin, k_max=args.kmax, eps=args.eps, y_ref=y_ref
    )
    _write_csv(args.out, "dt,err", table)


_DEFAULTS = {
    "rkc-domain": {
        "order": 1, "s": 5, "eps": 0.0, "res": 400,
        "xmin": None, "xmax": None, "ymax": None,
    },
    "arkc-domain": {
        "order": 1, "s": 4, "m": 8, "theta": 0.0, "eps": 0.05, "res": 400,
    },
    "model-instability": {
        "lam": -100.0, "zeta": -28.0, "theta": 0.2, "tau": 1.0, "steps": 50,
        "order": 1, "eps": 0.05, "control_out": None,
    },
    "heat-convergence": {
        "kmin": 1, "kmax": 11, "eps": STUDY_EPS,
    },
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rkcheb",
        description="Stabilized explicit integrator experiments; CSV outputs.",
    )
    parser.add_argument("--config", help="TOML file presetting flags per subcommand")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rkc-domain", help="complex stability-domain raster (x,y,absR)")
    p.add_argument("--order", type=int, choices=(1, 2))
    p.add_argument("--s", type=int)
    p.add_argument("--eps", type=float)
    p.add_argument("--res", type=int)
    p.add_argument("--xmin", type=float)
    p.add_argument("--xmax", type=float)
    p.add_argument("--ymax", type=float)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_rkc_domain)

    p = sub.add_parser("arkc-domain", help="coupled-model stability raster (z,w,rho)")
    p.add_argument("--order", type=int, choices=(1, 2))
    p.add_argument("--s", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--theta", type=float)
    p.add_argument("--eps", type=float)
    p.add_argument("--res", type=int)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_arkc_domain)

    p = sub.add_parser(
        "model-instability",
        help="norm growth of the multirate run vs its single-rate control (t,l2N)",
    )
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--zeta", type=float)
    p.add_argument("--theta", type=float)
    p.add_argument("--tau", type=float)
    p.add_argument("--steps", type=int)
    p.add_argument("--order", type=int, choices=(1, 2))
    p.add_argument("--eps", type=float)
    p.add_argument("--out", required=True)
    p.add_argument("--control-out", dest="control_out")
    p.set_defaults(func=_cmd_model_instability)

    p = sub.add_parser("heat-convergence", help="heat-benchmark step-size ladder (dt,err)")
    p.add_argument("--kmin", type=int)
    p.add_argument("--kmax", type=int)
    p.add_argument("--eps", type=float)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_heat_convergence)
    return parser


def _apply_defaults(args: argparse.Namespace) -> None:
    """Fill unset flags from the TOML config (if any), then from defaults."""
    config = {}
    if args.config:
        with open(args.config, "rb") as fh:
            config = tomllib.load(fh).get(args.command, {})
    for key, default in _DEFAULTS[args.command].items():
        if getattr(args, key, None) is None:
            flag = key.replace("_", "-")
            setattr(args, key, config.get(flag, config.get(key, default)))


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_defaults(args)
        args.func(args)
    except (ValueError, OSError, RuntimeError) as exc:
        operation = getattr(args, "command", "rkcheb")
        print(f"error: {operation}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
