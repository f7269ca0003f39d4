"""Command-line front end.

Every command echoes its canonicalized parameters in the output, and the
same arguments always give byte-identical output. Floats are written with
17 significant digits; infinite ``beta_m`` (the vacuum) is written ``inf``.

Exit status: 0 on success, 1 for invalid arguments, 2 for numerical
failures (and for ``validate`` when any grid point misses tolerance).
Errors are reported on stderr as one line ``error: code=<code> reason=<text>``.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import __version__
from .analysis import (
    SPEC_COLUMNS,
    SWEEP_AXES,
    _spec_row,
    cross_validate,
    figure_data,
    mass_grid,
    mutual_information_antipodal,
    parameter_sweep,
    thread_count,
)
from .asymptotics import ContinuumSpec, continuum_entropy, continuum_lambda0, thermal_continuum_lambda0
from .entropy import entropy_from_spectrum
from .errors import InvalidInput, NumericalFailure, SublatticeError
from .model import VACUUM, LatticeSpec
from .symplectic import spectrum

PROG = "sublattice-ee"
EXIT_OK, EXIT_INVALID, EXIT_NUMERICAL = 0, 1, 2

JSON_DEFAULT = {"spectrum", "entropy", "mutual-info", "continuum"}


class UsageError(InvalidInput):
    code = "invalid-argument"


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; route them to exit 1 instead."""

    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------- formatting

def fmt_value(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return format(v, ".17g")
    return str(v)


def _json(obj) -> str:
    # hand-rolled so floats get exactly 17 significant digits
    if isinstance(obj, dict):
        items = ", ".join(f"{_json(str(k))}: {_json(v)}" for k, v in obj.items())
        return "{" + items + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_json(v) for v in obj) + "]"
    if obj is None:
        return "null"
    if isinstance(obj, str):
        return '"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(obj, (float, np.floating)) and not math.isfinite(obj):
        return '"' + fmt_value(obj) + '"'
    return fmt_value(obj)


def canonical_params(params: dict) -> str:
    return " ".join(f"{k}={fmt_value(v)}" for k, v in sorted(params.items()))


def render_csv(command: str, params: dict, columns, rows) -> str:
    lines = [f"# {PROG} v{__version__} {command} {canonical_params(params)}".rstrip(),
             ",".join(columns)]
    lines += [",".join(fmt_value(r[c]) for c in columns) for r in rows]
    return "\n".join(lines) + "\n"


def render_json(command: str, params: dict, body: dict) -> str:
    doc = {"version": __version__, "command": command,
           "params": dict(sorted(params.items()))}
    doc.update(body)
    return _json(doc) + "\n"


# ---------------------------------------------------------------- arguments

def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer: {text!r}")
    return v


def _finite_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"must be finite: {text!r} (use --vacuum for T = 0)")
    return v


def _float_list(text):
    return [_finite_float(t) for t in text.split(",") if t.strip()]


def _add_output(p, default_format):
    p.add_argument("--format", choices=("csv", "json"), default=default_format,
                   help=f"output format (default {default_format})")
    p.add_argument("--output", "-o", default=None, help="write to this path instead of stdout")


def _add_state(p, required=True):
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--vacuum", action="store_true", help="zero-temperature state")
    g.add_argument("--beta-m", type=_finite_float, help="inverse temperature times mass")


def _add_lattice(p):
    p.add_argument("--n", type=_positive_int, help="ring size N")
    p.add_argument("--p", type=_positive_int, help="sublattice stride p")
    p.add_argument("--n-sub", type=_positive_int, help="sublattice size N_A = N/p")
    p.add_argument("--mass-eps", type=_finite_float, required=True, help="m * eps")
    _add_state(p)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog=PROG, description="Entanglement entropy of periodic sublattices "
                     "of a lattice scalar field on a ring.")
    parser.add_argument("--version", action="version", version=f"{PROG} {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("spectrum", help="symplectic eigenvalues of a sublattice")
    _add_lattice(p)
    _add_output(p, "json")

    p = sub.add_parser("entropy", help="entanglement entropy of a sublattice")
    _add_lattice(p)
    _add_output(p, "json")

    p = sub.add_parser("sweep", help="vary one parameter, others fixed")
    p.add_argument("--axis", choices=SWEEP_AXES, required=True)
    p.add_argument("--values", type=_float_list, help="comma-separated grid")
    p.add_argument("--start", type=_finite_float, help="log grid start (mass_eps/beta_m axes)")
    p.add_argument("--stop", type=_finite_float, help="log grid stop")
    p.add_argument("--num", type=_positive_int, default=60, help="log grid points (default 60)")
    p.add_argument("--n", type=_positive_int)
    p.add_argument("--p", type=_positive_int)
    p.add_argument("--n-sub", type=_positive_int)
    p.add_argument("--mass-eps", type=_finite_float)
    _add_state(p, required=False)
    _add_output(p, "csv")

    p = sub.add_parser("mutual-info", help="I(A:B) for two antipodal sites")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--mass-eps", type=_finite_float, required=True)
    _add_state(p)
    _add_output(p, "json")

    p = sub.add_parser("continuum", help="N_A points in the p -> infinity limit")
    p.add_argument("--n-sub", type=_positive_int, default=1)
    p.add_argument("--mass-eps", type=_finite_float, required=True)
    _add_state(p)
    _add_output(p, "json")

    p = sub.add_parser("figure", help="plot-ready series (fig4, fig5, fig6, fig7)")
    p.add_argument("figure_id", choices=("fig4", "fig5", "fig6", "fig7"))
    p.add_argument("--resolution", type=_positive_int, default=60, help="mass grid points")
    p.add_argument("--start", type=_finite_float, default=1e-6, help="mass grid start")
    p.add_argument("--stop", type=_finite_float, default=1e2, help="mass grid stop")
    p.add_argument("--mass-eps", type=_finite_float, default=1e-6, help="fig7 only")
    p.add_argument("--n-max", type=_positive_int, default=1024, help="fig7 only")
    _add_output(p, "csv")

    p = sub.add_parser("validate", help="closed form vs dense oracle grid")
    p.add_argument("--max-n", type=_positive_int, default=24)
    p.add_argument("--tol", type=_finite_float, default=1e-10)
    _add_output(p, "csv")
    return parser


def _beta(args) -> float:
    if getattr(args, "vacuum", False) or getattr(args, "beta_m", None) is None:
        return VACUUM
    return args.beta_m


def _lattice(args) -> LatticeSpec:
    n, p, na = args.n, args.p, args.n_sub
    if sum(v is not None for v in (n, p, na)) < 2:
        raise InvalidInput("give two of --n, --p, --n-sub")
    if n is None:
        n = na * p
    elif p is None:
        if n % na:
            raise InvalidInput(f"N_A={na} does not divide N={n}")
        p = n // na
    spec = LatticeSpec(n, p, args.mass_eps, _beta(args))
    if na is not None and spec.n_sub != na:
        raise InvalidInput(f"inconsistent lattice: N/p = {spec.n_sub} but --n-sub {na}")
    return spec


def _lattice_params(spec: LatticeSpec) -> dict:
    return {"N": spec.n_sites, "p": spec.stride, "N_A": spec.n_sub,
            "mass_eps": spec.mass_eps, "beta_m": spec.beta_m}


# ---------------------------------------------------------------- commands

def _cmd_spectrum(args):
    spec = _lattice(args)
    sp = spectrum(spec)
    res = entropy_from_spectrum(sp)
    cols = ("l", "lambda", "lambda_phi", "lambda_pi", "mode_energy")
    rows = [{"l": l, "lambda": sp.lam[l], "lambda_phi": sp.lambda_phi[l],
             "lambda_pi": sp.lambda_pi[l], "mode_energy": res.mode_energies[l]}
            for l in range(len(sp))]
    body = {"lambda": sp.lam, "lambda_phi": sp.lambda_phi, "lambda_pi": sp.lambda_pi,
            "mode_energies": res.mode_energies}
    return _lattice_params(spec), cols, rows, body


def _cmd_entropy(args):
    spec = _lattice(args)
    res = entropy_from_spectrum(spectrum(spec))
    row = _spec_row(spec)
    body = {"lambda": res.lam, "entropy": res.entropy, "per_mode": res.per_mode_entropy,
            "mode_energies": res.mode_energies, "entropy_per_site": res.entropy / spec.n_sub}
    return _lattice_params(spec), SPEC_COLUMNS, [row], body


def _cmd_sweep(args):
    if args.values is not None:
        if args.start is not None or args.stop is not None:
            raise InvalidInput("give either --values or --start/--stop, not both")
        values = args.values
    else:
        if args.start is None or args.stop is None:
            raise InvalidInput("give --values or both --start and --stop")
        if args.axis not in ("mass_eps", "beta_m"):
            raise InvalidInput("--start/--stop grids apply to the mass_eps and beta_m axes only")
        if not 0 < args.start < args.stop:
            raise InvalidInput("need 0 < --start < --stop")
        values = [float(v) for v in mass_grid(args.start, args.stop, args.num)]
    if args.axis in ("n_sites", "n_sub", "stride"):
        if any(v != int(v) or v < 1 for v in values):
            raise InvalidInput(f"{args.axis} values must be positive integers")
        values = [int(v) for v in values]
    if args.axis == "beta_m" and args.vacuum:
        raise InvalidInput("--vacuum conflicts with a beta_m sweep")
    fixed = {"n_sites": args.n, "stride": args.p, "n_sub": args.n_sub,
             "mass_eps": args.mass_eps, "beta_m": _beta(args)}
    fixed.pop(args.axis)
    res = parameter_sweep(args.axis, values, **fixed)
    params = {"axis": args.axis, "values": ";".join(fmt_value(v) for v in values)}
    params.update({k: v for k, v in fixed.items() if v is not None})
    return params, res.columns, res.rows, None


def _cmd_mutual_info(args):
    r = mutual_information_antipodal(args.n, args.mass_eps, _beta(args))
    row = {"N": r.n_sites, "I_AB": r.i_ab, "S_A": r.s_a, "S_B": r.s_b, "S_AB": r.s_ab}
    params = {"N": args.n, "mass_eps": args.mass_eps, "beta_m": _beta(args)}
    return params, tuple(row), [row], None


def _cmd_continuum(args):
    c = ContinuumSpec(args.n_sub, args.mass_eps, _beta(args))
    lam0 = continuum_lambda0(c.mass_eps) if c.is_vacuum else thermal_continuum_lambda0(c)
    s = continuum_entropy(c)
    row = {"N_A": c.n_sub, "mass_eps": c.mass_eps, "beta_m": c.beta_m,
           "lambda0": lam0, "entropy": s, "entropy_per_site": s / c.n_sub}
    params = {"N_A": c.n_sub, "mass_eps": c.mass_eps, "beta_m": c.beta_m}
    return params, tuple(row), [row], None


def _cmd_figure(args):
    if args.figure_id == "fig7":
        params = {"figure": "fig7", "mass_eps": args.mass_eps, "n_max": args.n_max}
    else:
        if not 0 < args.start < args.stop:
            raise InvalidInput("need 0 < --start < --stop")
        params = {"figure": args.figure_id, "resolution": args.resolution,
                  "start": args.start, "stop": args.stop}
    res = figure_data(args.figure_id, args.resolution, mass_eps=args.mass_eps,
                      n_max=args.n_max, mass_range=(args.start, args.stop))
    return params, res.columns, res.rows, None


class ValidationFailed(NumericalFailure):
    code = "validation-failed"


def _cmd_validate(args):
    res = cross_validate(args.max_n, tol=args.tol)
    params = {"max_n": args.max_n, "tol": args.tol}
    bad = [r for r in res.rows if not r["ok"]]
    failure = None
    if bad:
        worst = max(bad, key=lambda r: r["lambda_rel_err"])
        failure = ValidationFailed(
            f"{len(bad)} of {len(res.rows)} grid points exceed tol {fmt_value(args.tol)}; "
            f"worst N={worst['N']} p={worst['p']} lambda_rel_err={fmt_value(worst['lambda_rel_err'])}"
        )
    return params, res.columns, res.rows, None, failure


COMMANDS = {
    "spectrum": _cmd_spectrum,
    "entropy": _cmd_entropy,
    "sweep": _cmd_sweep,
    "mutual-info": _cmd_mutual_info,
    "continuum": _cmd_continuum,
    "figure": _cmd_figure,
    "validate": _cmd_validate,
}


def run(argv=None, stdout=None) -> str:
    """Parse ``argv`` and return the serialized output (raises on error)."""
    args = build_parser().parse_args(argv)
    thread_count()  # reject a malformed thread setting before any work
    out = COMMANDS[args.command](args)
    params, columns, rows, body = out[:4]
    failure = out[4] if len(out) > 4 else None
    if args.format == "csv":
        text = render_csv(args.command, params, columns, rows)
    else:
        if body is None:
            body = {"columns": list(columns), "rows": rows} if len(rows) != 1 else dict(rows[0])
        text = render_json(args.command, params, body)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        (stdout or sys.stdout).write(text)
    if failure is not None:
        raise failure
    return text


def _reason(exc) -> str:
    return " ".join(str(exc).split()) or type(exc).__name__


def main(argv=None) -> int:
    try:
        run(argv)
    except SystemExit as exc:  # --help / --version
        return exc.code if isinstance(exc.code, int) else EXIT_OK
    except InvalidInput as exc:
        print(f"error: code={exc.code} reason={_reason(exc)}", file=sys.stderr)
        return EXIT_INVALID
    except NumericalFailure as exc:
        print(f"error: code={exc.code} reason={_reason(exc)}", file=sys.stderr)
        return EXIT_NUMERICAL
    except SublatticeError as exc:
        print(f"error: code={exc.code} reason={_reason(exc)}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
