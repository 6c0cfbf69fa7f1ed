"""Command-line entry point: ``kaczmarz-rkhs <command> [options]``.

Every command writes one table (CSV or JSON) to ``--out`` or stdout.
Exit status: 0 on success, 1 when ``verify`` records a failing check,
2 on invalid input or IO errors (reported before any computation).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from .clark import clark_family
from .config import DEFAULT_SEED, SUITES, builtin_measures, load_config, load_spec, parse_config
from .duals import analysis_energy, frame_bounds_empirical, mixture_dual, reconstruction_residuals, weighted_dual
from .errors import ConfigError, KaczmarzError
from .kaczmarz import alpha, g_from_alpha, gram
from .kernels import ClosedDBR, GramSeries, reproduction_errors
from .measures import atoms, delta, fourier_table, sample_exponential
from .series import PowerSeries
from .suites import VerificationReport, kernel_grid, run_suite
from .transforms import InnerSeries, inner_from_measure, normalized_cauchy
from .wold import wold_layers, wold_reconstruct

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


# --------------------------------------------------------------------------
# output


def _cell(v):
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return "" if v is None else str(v)


def _jsonable(v):
    if isinstance(v, (np.bool_,)):
        return bool(v)
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if np.isfinite(v) else str(v)
    return v


def render(rows: list[dict], fmt: str, meta: dict | None = None) -> str:
    columns = list(rows[0]) if rows else []
    if fmt == "json":
        payload = dict(meta or {})
        payload["columns"] = columns
        payload["rows"] = [{k: _jsonable(r[k]) for k in columns} for r in rows]
        return json.dumps(payload, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_cell(r[k]) for k in columns])
    return buf.getvalue()


def write_output(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    Path(out).write_text(text)


def report_rows(report: VerificationReport, timing: bool = True) -> list[dict]:
    rows = []
    for r in report.records:
        row = r.as_row()
        if not timing:
            row["seconds"] = 0.0
        rows.append(row)
    return rows


def emit(report: VerificationReport, fmt: str = "csv", out: str | None = None, timing: bool = True) -> int:
    """Write the report and return the exit status it implies."""
    meta = {
        "seed": report.seed,
        "suites": list(report.suites),
        "overall": report.overall,
        "notes": {r.name: r.note for r in report.records if r.note},
    }
    text = render(report_rows(report, timing), fmt, meta)
    try:
        write_output(text, out)
    except OSError as exc:
        print(f"error: cannot write {out}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_INPUT
    if not report.overall:
        for r in report.failures():
            print(f"FAIL {r.name}: error {r.error:.3e} vs bound {r.bound:.3e}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


# --------------------------------------------------------------------------
# argument handling


def _global_flags() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    p.add_argument("--order", "-N", type=int, help="series order N (>= 8)")
    p.add_argument("--depth", "-d", type=int, help="quadrature depth for IFS measures")
    p.add_argument("--seed", type=lambda s: int(s, 0), help=f"generator seed (default {DEFAULT_SEED:#x})")
    p.add_argument("--tol-scale", type=float, help="multiply every tolerance by this factor")
    p.add_argument("--out", "-o", help="output path (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), help="output format (default csv)")
    p.add_argument("--measure", "-m", help="builtin measure name or a YAML/JSON spec file")
    return p


GLOBAL_DEFAULTS = {
    "order": None,
    "depth": None,
    "seed": DEFAULT_SEED,
    "tol_scale": 1.0,
    "out": None,
    "format": "csv",
    "measure": None,
}


def build_parser() -> argparse.ArgumentParser:
    flags = _global_flags()
    parser = argparse.ArgumentParser(
        prog="kaczmarz-rkhs",
        description="Kaczmarz sequences, inner functions and kernels of singular measures on the circle.",
        parents=[flags],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("fourier", parents=[flags], help="Fourier coefficients mu_hat(0..N)")
    sub.add_parser("alpha", parents=[flags], help="reciprocal coefficients alpha_0..alpha_N")
    p = sub.add_parser("gram", parents=[flags], help="Gram matrix <g_n, g_m> in long form")
    p.add_argument("--full", action="store_true", help="emit all entries, not only |G| > 1e-15")

    p = sub.add_parser("transform", parents=[flags], help="normalized Cauchy transform, two paths")
    p.add_argument("--exponent", "-k", type=int, default=1, help="test function e_k (default e_1)")
    p.add_argument("--radius", type=float, default=0.7, help="grid radius")

    p = sub.add_parser("kernel", parents=[flags], help="closed vs series de Branges-Rovnyak kernel")
    p.add_argument("--radius", type=float, default=0.7, help="grid radius")

    p = sub.add_parser("dual", parents=[flags], help="frame bounds and residuals of a dual family")
    p.add_argument("--kind", choices=("mixture", "weighted"), default="mixture")
    p.add_argument("--partner", help="nu (mixture) or lambda (weighted); name or spec file")
    p.add_argument("--eta", type=float, default=0.5)
    p.add_argument("--exponent", "-k", type=int, default=1, help="test function e_k")

    p = sub.add_parser("clark", parents=[flags], help="per-moment Clark decomposition residuals")
    p.add_argument("--inner", default=None, help="'z^m' for a monomial, otherwise b of --measure")
    p.add_argument("-n", type=int, default=2, help="number of Clark measures")

    p = sub.add_parser("wold", parents=[flags], help="Wold layers of a Szego kernel")
    p.add_argument("--layers", "-M", type=int, default=8)
    p.add_argument("--point", type=complex, default=0.4, help="f = k_point truncated at N")

    p = sub.add_parser("verify", parents=[flags], help="run a named verification suite")
    p.add_argument("suite", choices=("all",) + SUITES)
    p.add_argument("--config", "-c", help="YAML/JSON suite config")
    p.add_argument("--no-timing", action="store_true", help="write 0 in the seconds column")
    return parser


def _resolve_measure(value: str | None, default: str = "mu3"):
    value = value or default
    named = builtin_measures()
    if value in named:
        return value, named[value]
    if Path(value).exists():
        return Path(value).stem, load_spec(value)
    raise InputError(f"unknown measure {value!r}; builtins are {', '.join(named)}")


def _order(args, default: int) -> int:
    n = args.order if args.order is not None else default
    if n < 8:
        raise InputError("--order must be >= 8")
    return n


def _depth(args, default: int = 12) -> int:
    d = args.depth if args.depth is not None else default
    if d < 1:
        raise InputError("--depth must be >= 1")
    return d


def _c(prefix: str, z: complex) -> dict:
    return {f"{prefix}_re": float(np.real(z)), f"{prefix}_im": float(np.imag(z))}


# --------------------------------------------------------------------------
# commands: each returns a prepared closure so input errors surface before work


def cmd_fourier(args):
    _, spec = _resolve_measure(args.measure)
    N = _order(args, 64)

    def run():
        t = fourier_table(spec, N).values
        return [{"k": k, **_c("mu_hat", v), "abs": abs(v)} for k, v in enumerate(t)]

    return run


def cmd_alpha(args):
    _, spec = _resolve_measure(args.measure)
    N = _order(args, 64)

    def run():
        table = fourier_table(spec, N)
        a = alpha(table).alpha
        return [{"k": k, **_c("alpha", v)} for k, v in enumerate(a)]

    return run


def cmd_gram(args):
    _, spec = _resolve_measure(args.measure)
    N = _order(args, 16)

    def run():
        table = fourier_table(spec, N)
        G = gram(table, g_from_alpha(alpha(table))).entries
        return [
            {"n": n, "m": m, **_c("gram", G[n, m])}
            for n in range(N + 1)
            for m in range(N + 1)
            if args.full or abs(G[n, m]) > 1e-15
        ]

    return run


def _grid(radius: float) -> list[complex]:
    if not (0 < radius < 1):
        raise InputError("--radius must lie in (0, 1)")
    return kernel_grid(radius)


def cmd_transform(args):
    _, spec = _resolve_measure(args.measure)
    N, depth = _order(args, 256), _depth(args)
    grid = _grid(args.radius)

    def run():
        table = fourier_table(spec, N)
        g = g_from_alpha(alpha(table))
        f = sample_exponential(args.exponent, atoms(spec, depth))
        rows = []
        for z in grid:
            ratio, series = normalized_cauchy(f, table, g, z)
            rows.append({**_c("z", z), **_c("via_ratio", ratio), **_c("via_series", series), "diff": abs(ratio - series)})
        return rows

    return run


def cmd_kernel(args):
    _, spec = _resolve_measure(args.measure)
    N, depth = _order(args, 512), _depth(args)
    grid = _grid(args.radius)

    def run():
        table = fourier_table(spec, N)
        closed = ClosedDBR(inner_from_measure(table))
        series = GramSeries.canonical(table)
        err = reproduction_errors(closed, atoms(spec, depth), grid)
        rows = []
        for i, z in enumerate(grid):
            for j, w in enumerate(grid):
                rows.append({
                    **_c("z", z), **_c("w", w),
                    **_c("K_closed", closed(z, w)), **_c("K_series", series(z, w)),
                    "reproduce_err": err[i, j],
                })
        return rows

    return run


def cmd_dual(args):
    _, mu = _resolve_measure(args.measure, "delta0")
    if args.partner is not None:
        _, partner = _resolve_measure(args.partner)
    else:
        partner = builtin_measures()["two-atom"] if args.kind == "weighted" else delta(0.5)
    N, depth = _order(args, 64), _depth(args)
    if args.kind == "mixture" and not (0 < args.eta <= 1):
        raise InputError("--eta must lie in (0, 1]")

    def run():
        if args.kind == "mixture":
            fam = mixture_dual(mu, partner, args.eta, N, depth=depth)
        else:
            fam = weighted_dual(mu, partner, N)
        lo, hi = frame_bounds_empirical(fam, seed=args.seed)
        f = sample_exponential(args.exponent, fam.mu_rule)
        energy = analysis_energy(f, fam)
        resid = reconstruction_residuals(f, fam)
        rows = [
            {"quantity": "frame_lower", "k": None, "value": lo},
            {"quantity": "frame_upper", "k": None, "value": hi},
        ]
        rows += [{"quantity": "energy", "k": k, "value": v} for k, v in enumerate(energy)]
        rows += [{"quantity": "residual", "k": k, "value": v} for k, v in enumerate(resid)]
        return rows

    return run


def _parse_inner(text: str, args) -> InnerSeries:
    t = text.replace(" ", "")
    if t == "z":
        return InnerSeries.monomial(1, _order(args, 128))
    if t.startswith("z^") and t[2:].isdigit() and int(t[2:]) >= 1:
        return InnerSeries.monomial(int(t[2:]), _order(args, 128))
    raise InputError(f"--inner must be 'z' or 'z^m', got {text!r}")


def cmd_clark(args):
    if args.n < 1:
        raise InputError("-n must be >= 1")
    b = _parse_inner(args.inner, args) if args.inner else None
    spec = None if b else _resolve_measure(args.measure)[1]

    def run():
        bb = b or inner_from_measure(fourier_table(spec, _order(args, 128)))
        r = clark_family(bb, args.n).residuals()
        return [{"k": k, "residual": v} for k, v in enumerate(r)]

    return run


def cmd_wold(args):
    _, spec = _resolve_measure(args.measure)
    N = _order(args, 512)
    if args.layers < 0:
        raise InputError("--layers must be >= 0")
    if abs(args.point) >= 1:
        raise InputError("--point must lie in the open disc")

    def run():
        b = inner_from_measure(fourier_table(spec, N))
        f = PowerSeries(np.conj(args.point) ** np.arange(N + 1))
        w = wold_layers(f, b, args.layers)
        recon = float(np.max(np.abs(wold_reconstruct(w).coeffs - f.coeffs)))
        member = w.membership_errors()
        return [
            {"layer": n, "norm": v, "membership_error": member[n], "reconstruction_error": recon,
             "pythagoras_gap": w.pythagoras_gap()}
            for n, v in enumerate(w.layer_norms())
        ]

    return run


COMMANDS = {
    "fourier": cmd_fourier,
    "alpha": cmd_alpha,
    "gram": cmd_gram,
    "transform": cmd_transform,
    "kernel": cmd_kernel,
    "dual": cmd_dual,
    "clark": cmd_clark,
    "wold": cmd_wold,
}


def _verify(args) -> int:
    overrides = dict(suite=args.suite, order=args.order, depth=args.depth, seed=args.seed,
                     tol_scale=args.tol_scale if args.tol_scale != 1.0 else None)
    if args.config:
        cfg = load_config(args.config, **overrides)
    else:
        cfg = parse_config({}, None, **overrides)
    if args.measure:
        name, spec = _resolve_measure(args.measure)
        cfg.measures = {name: cfg.measures.get(name, spec)}
    report = run_suite(cfg)
    return emit(report, args.format, args.out, timing=not args.no_timing)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for k, v in GLOBAL_DEFAULTS.items():
        if not hasattr(args, k):
            setattr(args, k, v)
    try:
        if args.command == "verify":
            return _verify(args)
        run = COMMANDS[args.command](args)
        rows = run()
    except (InputError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except KaczmarzError as exc:
        # invalid measures and similar input problems raised by the library
        if isinstance(exc, ArithmeticError):
            print(f"numerical failure: {exc}", file=sys.stderr)
            return EXIT_FAIL
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        write_output(render(rows, args.format, {"command": args.command}), args.out)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
