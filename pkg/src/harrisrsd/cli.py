"""Batch command line: ``harrisrsd <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage or configuration
error. CSV output uses ``,`` separators, ``.`` decimals and a header row.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import decompose as dec
from .processes import ModelConfig, replicate_marginal, simulate
from .samplers import LAWS, RngStream, SamplerSpec
from .transforms import (
    CF, GeometricPGF, HarrisPGF, NegBinPGF, PoissonPGF, evaluate, from_json,
    standard_cf_grid, standard_pgf_grid, to_dict,
)
from .verify import SUITES, extract_pgf_coeffs, run_suite

__all__ = ["main", "run_cli", "build_parser"]


class UsageError(Exception):
    pass


def _u64(text):
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _floats(text):
    return [float(x) for x in text.split(",") if x.strip()]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="harrisrsd", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("sample", help="draw variates from a named law")
    sp.add_argument("--law", required=True, choices=LAWS)
    sp.add_argument("--n", type=int, required=True, help="number of draws")
    sp.add_argument("--seed", type=_u64, required=True)
    sp.add_argument("--stream", type=_u64, default=0)
    for name in ("alpha", "lam", "mu", "r", "theta", "q", "a", "c", "p"):
        sp.add_argument(f"--{name}", type=float)
    sp.add_argument("--k", type=int)
    sp.add_argument("--coeffs", type=_floats, help="comma-separated probabilities (from_coeffs)")
    sp.add_argument("--output", "-o")

    for name, helptext in (("simulate", "simulate one chain and write its trajectory"),
                           ("replicate", "aggregate snapshots from independent chains")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--config", help="JSON file with ModelConfig fields; flags override it")
        p.add_argument("--family", choices=("gamma", "negbin"))
        p.add_argument("--k", type=int)
        p.add_argument("--c", type=float)
        p.add_argument("--p", type=float)
        p.add_argument("--lam", type=float)
        p.add_argument("--T", type=int)
        p.add_argument("--B", type=int)
        p.add_argument("--init", choices=("stationary", "zero"))
        p.add_argument("--seed", type=_u64)
        p.add_argument("--output", "-o")
        if name == "replicate":
            p.add_argument("--R", type=int)
            p.add_argument("--observe-time", type=int)

    p = sub.add_parser("decompose", help="build SD, HID and innovation factors")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--family", choices=("gamma", "negbin", "linnik"))
    src.add_argument("--expr", help="JSON expression tree file")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--lam", type=float, default=1.0)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--grid", type=_floats, help="comma-separated evaluation points")
    p.add_argument("--json", help="write the factor trees here")
    p.add_argument("--output", "-o", help="CSV of factor values (default stdout)")

    p = sub.add_parser("coeffs", help="extract PGF coefficients")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--pgf", choices=("harris", "negbin", "poisson", "geometric",
                                       "nb_sd", "nb_hid", "nb_innov"))
    src.add_argument("--expr", help="JSON expression tree file")
    p.add_argument("--a", type=float)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--lam", type=float, default=1.0)
    p.add_argument("--mu", type=float)
    p.add_argument("--q", type=float)
    p.add_argument("--c", type=float)
    p.add_argument("--p", type=float)
    p.add_argument("--N", type=int, default=4096)
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--precision", type=int, default=6)
    p.add_argument("--output", "-o")

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True, choices=tuple(SUITES))
    p.add_argument("--seed", type=_u64, required=True)
    p.add_argument("--json", help="write the JSON report here")
    p.add_argument("--n", type=int, help="draws per sampler (samplers suite)")
    p.add_argument("--R", type=int, help="replicates (stationarity suite)")
    return ap


# ---------------------------------------------------------------------------


def _fmt(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return repr(float(v))


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"missing required option(s): {', '.join('--' + m for m in missing)}")


def _cmd_sample(args) -> int:
    if args.n < 0:
        raise UsageError("--n must be nonnegative")
    names = {"gamma": ("alpha", "lam"), "poisson": ("mu",), "negbin": ("r", "theta"),
             "geometric": ("q",), "harris": ("a", "k"), "stable_sym": ("alpha",),
             "linnik": ("alpha", "k"), "gamma_sd_innov": ("k", "lam", "c"),
             "nb_dsd_innov": ("k", "lam", "c"), "gamma_hrsd_innov": ("k", "lam", "c", "p"),
             "nb_dhrsd_innov": ("k", "lam", "c", "p"), "from_coeffs": ("coeffs",)}[args.law]
    _need(args, *names)
    spec = SamplerSpec(args.law, {n: getattr(args, n) for n in names})
    x = spec.draw(RngStream(args.seed, args.stream), args.n)
    buf = io.StringIO()
    buf.write("value\n")
    for v in np.asarray(x).ravel():
        buf.write(_fmt(v) + "\n")
    _emit(buf.getvalue(), args.output)
    return 0


def _model_config(args, extra=()) -> ModelConfig:
    base = {}
    if args.config:
        with open(args.config) as fh:
            base = json.load(fh)
        if not isinstance(base, dict):
            raise UsageError("config file must hold a JSON object")
    for name in ("family", "k", "c", "p", "lam", "T", "B", "init", "seed") + tuple(extra):
        v = getattr(args, name)
        if v is not None:
            base[name] = v
    if "seed" not in base:
        raise UsageError("a seed is required (--seed or config file)")
    return ModelConfig.from_dict(base)


def _cmd_simulate(args) -> int:
    cfg = _model_config(args)
    _emit(simulate(cfg).to_csv(), args.output)
    return 0


def _cmd_replicate(args) -> int:
    cfg = _model_config(args, extra=("R",))
    t = args.observe_time if args.observe_time is not None else cfg.T
    x = replicate_marginal(cfg, t)
    _emit("X\n" + "".join(_fmt(v) + "\n" for v in x), args.output)
    return 0


def _cmd_decompose(args) -> int:
    if args.expr:
        with open(args.expr) as fh:
            psi = from_json(fh.read())
    elif args.family == "linnik":
        from .transforms import linnik_cf
        psi = linnik_cf(args.alpha, args.k)
    else:
        psi = dec.family_law(args.family, args.k, args.lam)
    prm = dec.FactorizationParams(args.c, args.p, args.k)
    factors = {
        "sd": dec.sd_factor(psi, prm.c),
        "hid": dec.hid_factor(psi, prm.p, prm.k),
        "innovation": dec.hrsd_innovation(psi, prm),
    }
    if args.json:
        with open(args.json, "w") as fh:
            json.dump({k: to_dict(v) for k, v in factors.items()}, fh, indent=2)
            fh.write("\n")
    if args.grid is not None:
        pts = np.asarray(args.grid, dtype=float)
    else:
        pts = (standard_cf_grid() if psi.domain == CF else standard_pgf_grid()).array
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t_or_s"] + [f"{n}_{part}" for n in factors for part in ("re", "im")])
    vals = {n: evaluate(e, pts) for n, e in factors.items()}
    for i, x in enumerate(pts):
        row = [_fmt(x)]
        for n in factors:
            row += [_fmt(vals[n][i].real), _fmt(vals[n][i].imag)]
        w.writerow(row)
    _emit(buf.getvalue(), args.output)
    return 0


def _coeff_expr(args):
    if args.expr:
        with open(args.expr) as fh:
            return from_json(fh.read())
    kind = args.pgf
    if kind == "harris":
        _need(args, "a")
        return HarrisPGF(args.a, args.k)
    if kind == "negbin":
        return NegBinPGF(1.0 / args.k, args.lam)
    if kind == "poisson":
        _need(args, "mu")
        return PoissonPGF(args.mu)
    if kind == "geometric":
        _need(args, "q")
        return GeometricPGF(args.q)
    nb = dec.negbin_law(args.k, args.lam)
    if kind == "nb_sd":
        _need(args, "c")
        return dec.sd_factor(nb, args.c)
    if kind == "nb_hid":
        _need(args, "p")
        return dec.hid_factor(nb, args.p, args.k)
    _need(args, "c", "p")
    return dec.hrsd_innovation(nb, dec.FactorizationParams(args.c, args.p, args.k))


def _cmd_coeffs(args) -> int:
    series = extract_pgf_coeffs(_coeff_expr(args), args.N, args.radius)
    buf = io.StringIO()
    buf.write("n,coef\n")
    for n, v in enumerate(series.coefficients):
        text = f"{v:.{args.precision}f}"
        if float(text) == 0.0:
            text = f"{0.0:.{args.precision}f}"
        buf.write(f"{n},{text}\n")
    _emit(buf.getvalue(), args.output)
    return 0


def _cmd_verify(args) -> int:
    opts = {}
    if args.n is not None:
        opts["n"] = args.n
    if args.R is not None:
        opts["R"] = args.R
    report = run_suite(args.suite, args.seed, **opts)
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(report.to_json())
    sys.stdout.write(report.summary() + "\n")
    return 0 if report.passed else 1


_COMMANDS = {
    "sample": _cmd_sample,
    "simulate": _cmd_simulate,
    "replicate": _cmd_replicate,
    "decompose": _cmd_decompose,
    "coeffs": _cmd_coeffs,
    "verify": _cmd_verify,
}


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (UsageError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"harrisrsd {args.command}: error: {exc}", file=sys.stderr)
        return 2


def main(argv=None):
    sys.exit(run_cli(argv))
