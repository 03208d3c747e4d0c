"""Command-line front end: audit batteries, ad-hoc transforms and wavelet constants.

Exit codes: 0 success, 1 audit failure, 2 usage or config error, 3 numerical error.
"""

import argparse
import csv
import sys
from pathlib import Path

import numpy as np

from .errors import ConfigError, DomainError, NumericalError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


def _err(msg):
    print(f"hankelet: {msg}", file=sys.stderr)


def cmd_audit(args):
    from .audit.battery import run_battery
    from .config import load_config

    cfg = load_config(args.config)
    if args.out_dir:
        cfg.out_dir = args.out_dir
    if args.no_figures:
        cfg.figures = False
    result = run_battery(cfg, keep_scalograms=cfg.figures)
    report = result.report
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / cfg.json_name).write_text(report.to_json())
    (out / cfg.csv_name).write_text(report.to_csv())
    if cfg.figures:
        from .plots import write_figures

        write_figures(result, out)
    counts = report.counts()
    print(",".join(f"{k}={v}" for k, v in counts.items()))
    for e in report.failures():
        print(f"FAIL {e.id} alpha={e.alpha:g} {e.wavelet} {e.function} {e.params} ratio={e.ratio:.12g}")
    print(f"report: {out / cfg.json_name}")
    return EXIT_OK if report.all_passed else EXIT_FAIL


def cmd_transform(args):
    from .families import FunctionSpec
    from .hankel import hankel_transform
    from .radial import RadialGrid

    spec = FunctionSpec(args.family, args.width, args.degree)
    grid = RadialGrid.composite(args.alpha, radius=args.radius, n_nodes=args.nodes, panels=args.panels)
    out = hankel_transform(spec.sample(grid))
    exact = spec.transform_rule(args.alpha)(grid.nodes)
    err = float(np.max(np.abs(out.samples - exact)))
    stream = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    try:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(["xi", "H(f)(xi)"])
        for xi, v in zip(grid.nodes, out.samples):
            writer.writerow([f"{xi:.12g}", f"{v:.12g}"])
        stream.write(f"# {spec.label} alpha={args.alpha:g} max_abs_error_vs_closed_form={err:.3e}\n")
    finally:
        if stream is not sys.stdout:
            stream.close()
    return EXIT_OK


def cmd_wavelet_info(args):
    from .audit.constants import log_constant_hankel, mellin_of_wavelet
    from .wavelet import (
        admissibility_constant, log_mean_quadrature, make_bessel_hat, mellin_quadrature, norm_sq_quadrature,
    )

    w = make_bessel_hat(args.alpha, args.k, args.sigma)
    cf = w.closed_form
    rows = [
        ("c_psi", w.c_admissible, admissibility_constant(w)),
        ("||psi||^2", w.l2_norm_sq, norm_sq_quadrature(w)),
        ("c_psi/||psi||^2", w.contrast, admissibility_constant(w) / norm_sq_quadrature(w)),
        ("C_psi", cf.log_mean(), log_mean_quadrature(w)),
        ("C_alpha(psi)", log_constant_hankel(w.alpha) - cf.log_mean(),
         log_constant_hankel(w.alpha) - log_mean_quadrature(w)),
    ]
    for z in (-2.0, -1.0, 0.0, 1.0):
        if z < 2 * cf.k:
            rows.append((f"M(|H psi|^2)({z:g})", mellin_of_wavelet(w, z, check=False), mellin_quadrature(w, z)))
    print(f"{w.label} alpha={w.alpha:g}")
    print(f"{'quantity':<22}{'closed form':>20}{'quadrature':>20}")
    for name, exact, quad in rows:
        print(f"{name:<22}{exact:>20.12g}{quad:>20.12g}")
    verdict = "OK" if w.entropy_precondition else "FAILED"
    print(f"entropy precondition ||psi||^2 <= c_psi: {verdict} (ratio {w.contrast:.12g})")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="hankelet", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("audit", help="run an inequality battery from a TOML config")
    p.add_argument("config", help="config path, or 'default' for the bundled battery")
    p.add_argument("--out-dir", help="override [output].dir")
    p.add_argument("--no-figures", action="store_true", help="skip PNG figures")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("transform", help="Hankel transform of a built-in function as CSV")
    p.add_argument("--family", required=True, help="gaussian | poly_gaussian | zero")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--width", type=float, default=1.0)
    p.add_argument("--degree", type=int, default=0)
    p.add_argument("--radius", type=float, default=12.0)
    p.add_argument("--nodes", type=int, default=512)
    p.add_argument("--panels", type=int, default=16)
    p.add_argument("--out", default="-", help="output CSV path ('-' for stdout)")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("wavelet-info", help="constants of a Bessel-hat wavelet")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.set_defaults(func=cmd_wavelet_info)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, DomainError) as exc:
        _err(str(exc))
        return EXIT_USAGE
    except NumericalError as exc:
        _err(f"numerical error: {exc}")
        return EXIT_NUMERIC
    except OSError as exc:
        _err(str(exc))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
