"""thermolen command line: length, metric, verify, sweep, work, classify.

Exit codes: 0 ok, 2 config/usage, 3 stability domain, 4 numerical failure,
5 verification flagged.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from .config import load_config
from .eos import StatePoint
from .errors import (ConfigError, ConvergenceError, DegeneracyError, DomainError,
                     NullVectorError, SignatureError, StabilityError, ThermolenError,
                     UnsupportedOrderError)
from .length import (isotherm_length_closed, isotherm_length_quadrature,
                     isotherm_length_theorem)
from .metric import Signature, assemble, classify_vector, null_directions, signature
from .quad import integrate
from .response import from_eos
from .verify import (DEFAULT_INTERVALS, DEFAULT_TEMPERATURES, FLAG, THIRD_ORDER_NOTE,
                     exit_status, run_verification)

EXIT_OK, EXIT_USAGE, EXIT_STABILITY, EXIT_NUMERIC, EXIT_FLAG = 0, 2, 3, 4, 5


def _h(x):
    """Human-mode number."""
    return f"{x:.6g}"


def _m(x):
    """Machine-mode number (17 significant digits)."""
    return f"{x:.17g}"


def _emit(out, payload, lines, machine):
    if machine:
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        width = max(len(k) for k, _ in lines)
        for key, val in lines:
            out.write(f"{key:<{width}}  {val}\n")


# -- subcommands ------------------------------------------------------------

def cmd_length(args, out):
    cfg = load_config(args.config)
    eos = cfg.to_eos()
    method = args.method
    if method == "auto":
        try:
            rep = isotherm_length_closed(eos, args.T, args.v1, args.v2)
        except (UnsupportedOrderError, DomainError):
            rep = isotherm_length_quadrature(eos, args.T, args.v1, args.v2, cfg.quadrature)
    elif method == "closed":
        rep = isotherm_length_closed(eos, args.T, args.v1, args.v2)
    elif method == "quadrature":
        rep = isotherm_length_quadrature(eos, args.T, args.v1, args.v2, cfg.quadrature)
    else:
        form = "sum_35" if method == "theorem35" else "sum_36"
        rep = isotherm_length_theorem(eos, args.T, args.v1, args.v2, form, cfg.quadrature)
    payload = {"length": rep.value, "method": rep.method, "err_estimate": rep.err_estimate,
               "work": rep.work, "orientation": rep.orientation,
               "decomposition": rep.decomposition or {}}
    lines = [("length", _h(rep.value)), ("method", rep.method),
             ("err_estimate", _h(rep.err_estimate)), ("work", _h(rep.work)),
             ("orientation", str(rep.orientation))]
    lines += [(f"term[{k}]", _h(v)) for k, v in (rep.decomposition or {}).items()]
    _emit(out, payload, lines, args.json)
    return EXIT_OK


def cmd_metric(args, out):
    cfg = load_config(args.config)
    eos = cfg.to_eos()
    state = StatePoint(args.T, args.v)
    r = from_eos(eos, state, cfg.cv_model)
    tol = cfg.metric_tol
    m = assemble(r, state, tol=tol, allow_degenerate=True)
    sig = signature(m, tol)
    scale = m.scale
    residuals = {
        "det_identity": abs(m.det + r.c_p / (args.T * args.v * r.kappa_T)) / abs(m.det)
        if m.det else math.nan,
        "det_eigen": abs(m.det - m.lambda1 * m.lambda2) / abs(m.det) if m.det else math.nan,
        "mayer": abs(r.mayer_residual(args.T, args.v)) / abs(r.c_p),
        "reconstruction": float(abs(m.reconstruct() - m.matrix).max() / scale),
    }
    payload = {
        "T": args.T, "v": args.v,
        "response": {"c_v": r.c_v, "c_p": r.c_p, "alpha": r.alpha, "kappa_T": r.kappa_T},
        "eta11": m.eta11, "eta12": m.eta12, "eta22": m.eta22, "det": m.det,
        "delta": m.delta, "lambda1": m.lambda1, "lambda2": m.lambda2,
        "xi1": m.xi1.tolist(), "xi2": m.xi2.tolist(), "signature": sig.value,
        "residuals": residuals,
    }
    lines = [("eta11", _h(m.eta11)), ("eta12", _h(m.eta12)), ("eta22", _h(m.eta22)),
             ("det", _h(m.det)), ("delta", _h(m.delta)), ("lambda1", _h(m.lambda1)),
             ("lambda2", _h(m.lambda2)),
             ("xi1", f"({_h(m.xi1[0])}, {_h(m.xi1[1])})"),
             ("xi2", f"({_h(m.xi2[0])}, {_h(m.xi2[1])})"),
             ("signature", sig.value)]
    lines += [(f"residual[{k}]", _h(v)) for k, v in residuals.items()]
    if sig is Signature.LORENTZIAN:
        slopes = null_directions(m, tol)
        payload["null_slopes"] = list(slopes)
        lines.append(("null_slopes", f"{_h(slopes[0])}, {_h(slopes[1])}"))
    if args.dT is not None or args.dv is not None:
        t = classify_vector(m, args.dT or 0.0, args.dv or 0.0, tol)
        payload["vector"] = {"dT": t.dT, "dv": t.dv, "q": t.q, "character": t.character.value}
        lines.append(("vector", f"{t.character.value} (q={_h(t.q)})"))
    _emit(out, payload, lines, args.json)
    return EXIT_OK


def _parse_grid(text):
    """'T=100,300;v=0.012:0.024,0.012:0.12' -> (temperatures, intervals)."""
    temps, intervals = DEFAULT_TEMPERATURES, DEFAULT_INTERVALS
    try:
        for part in filter(None, (p.strip() for p in text.split(";"))):
            key, _, val = part.partition("=")
            key = key.strip()
            if key == "T":
                temps = tuple(float(x) for x in val.split(","))
            elif key == "v":
                intervals = tuple(tuple(float(y) for y in x.split(":")) for x in val.split(","))
                if any(len(iv) != 2 for iv in intervals):
                    raise ValueError("intervals are lo:hi")
            else:
                raise ValueError(f"unknown grid key {key!r}")
    except ValueError as exc:
        raise ConfigError(f"bad --grid {text!r}: {exc}") from exc
    return temps, intervals


def cmd_verify(args, out):
    cfg = load_config(args.config)
    eos = cfg.to_eos()
    temps, intervals = _parse_grid(args.grid) if args.grid else (DEFAULT_TEMPERATURES,
                                                                DEFAULT_INTERVALS)
    rows = run_verification(eos, temps, intervals, cfg.quadrature)
    status = exit_status(rows)
    third_only = all(r.note == THIRD_ORDER_NOTE for r in rows if r.verdict == FLAG)
    if args.json:
        out.write(json.dumps({"rows": [r.as_dict() for r in rows], "exit_status": status},
                             indent=2, sort_keys=True) + "\n")
    else:
        out.write(f"{'check':<32} {'T':>8} {'v1':>10} {'v2':>10} {'candidate':>14} "
                  f"{'quadrature/ref':>14} {'rel_dev':>10} {'tol':>8}  verdict\n")
        for r in rows:
            out.write(f"{r.check:<32} {_h(r.T):>8} {_h(r.v1):>10} {_h(r.v2):>10} "
                      f"{_h(r.candidate):>14} {_h(r.reference):>14} {_h(r.rel_dev):>10} "
                      f"{_h(r.tol):>8}  {r.verdict}{'  ' + r.note if r.note else ''}\n")
        counts = {v: sum(r.verdict == v for r in rows) for v in ("PASS", "FLAG", "SKIP")}
        out.write(f"summary: {counts['PASS']} PASS, {counts['FLAG']} FLAG, "
                  f"{counts['SKIP']} SKIP\n")
        if status and third_only:
            out.write(f"note: all flagged rows are {THIRD_ORDER_NOTE}s\n")
    return status


def cmd_sweep(args, out):
    cfg = load_config(args.config)
    eos = cfg.to_eos()
    if args.steps < 1:
        raise ConfigError("--steps must be >= 1")
    if not args.vmax > args.vmin:
        raise ConfigError("--vmax must exceed --vmin")
    T = args.T
    eos.check_state(T, args.vmin)
    from .eos import require_stable
    require_stable(eos, T, args.vmin, args.vmax)
    vs = [args.vmin + (args.vmax - args.vmin) * i / args.steps for i in range(args.steps)]
    vs.append(args.vmax)
    pieces = [0.0]
    for a, b in zip(vs[:-1], vs[1:]):
        pieces.append(integrate(lambda v: eos.isotherm_integrand(T, v), a, b,
                                cfg.quadrature)[0])
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["v", "p", "dp_dv", "integrand", "L_cumulative", "W_cumulative"])
    for i, v in enumerate(vs):
        dpdv = eos.dp_dv(T, v)
        writer.writerow([_m(v), _m(eos.pressure(T, v)), _m(dpdv), _m(math.sqrt(-dpdv)),
                         _m(math.fsum(pieces[:i + 1])), _m(eos.work(T, vs[0], v))])
    text = buf.getvalue()
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


def cmd_work(args, out):
    cfg = load_config(args.config)
    eos = cfg.to_eos()
    w = eos.work(args.T, args.v1, args.v2)
    f = eos.helmholtz_relative(args.T, args.v1, args.v2)
    _emit(out, {"work": w, "helmholtz_relative": f},
          [("work", _h(w)), ("helmholtz_relative", _h(f))], args.json)
    return EXIT_OK


def cmd_classify(args, out):
    cfg = load_config(args.config)
    eos = cfg.to_eos()
    state = StatePoint(args.T, args.v)
    m = assemble(from_eos(eos, state, cfg.cv_model), state, tol=cfg.metric_tol,
                 allow_degenerate=True)
    t = classify_vector(m, args.dT, args.dv, cfg.metric_tol)
    _emit(out, {"dT": t.dT, "dv": t.dv, "q": t.q, "character": t.character.value},
          [("character", t.character.value), ("q", _h(t.q))], args.json)
    return EXIT_OK


# -- wiring -----------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(prog="thermolen",
                                     description="Helmholtz-metric thermodynamic length tools")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", required=True,
                       help="TOML config path or bundled name "
                            "(ideal, quasi_ideal, virial2, virial3)")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        return p

    p = common(sub.add_parser("length", help="isotherm length between two volumes"))
    p.add_argument("--T", type=float, required=True)
    p.add_argument("--v1", type=float, required=True)
    p.add_argument("--v2", type=float, required=True)
    p.add_argument("--method", default="auto",
                   choices=["auto", "closed", "quadrature", "theorem35", "theorem36"])
    p.set_defaults(func=cmd_length)

    p = common(sub.add_parser("metric", help="metric, eigenstructure and identity residuals"))
    p.add_argument("--T", type=float, required=True)
    p.add_argument("--v", type=float, required=True)
    p.add_argument("--dT", type=float)
    p.add_argument("--dv", type=float)
    p.set_defaults(func=cmd_metric)

    p = common(sub.add_parser("verify", help="closed forms vs quadrature over a grid"))
    p.add_argument("--grid", help="e.g. 'T=100,300;v=0.012:0.024,0.012:0.12'")
    p.set_defaults(func=cmd_verify)

    p = common(sub.add_parser("sweep", help="CSV of integrand and cumulative length/work"))
    p.add_argument("--T", type=float, required=True)
    p.add_argument("--vmin", type=float, required=True)
    p.add_argument("--vmax", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = common(sub.add_parser("work", help="isothermal work and relative Helmholtz potential"))
    p.add_argument("--T", type=float, required=True)
    p.add_argument("--v1", type=float, required=True)
    p.add_argument("--v2", type=float, required=True)
    p.set_defaults(func=cmd_work)

    p = common(sub.add_parser("classify", help="causal character of a tangent vector"))
    p.add_argument("--T", type=float, required=True)
    p.add_argument("--v", type=float, required=True)
    p.add_argument("--dT", type=float, required=True)
    p.add_argument("--dv", type=float, required=True)
    p.set_defaults(func=cmd_classify)
    return parser


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (StabilityError, DegeneracyError, SignatureError) as exc:
        err.write(f"thermolen: stability error: {exc}\n")
        return EXIT_STABILITY
    except ConvergenceError as exc:
        err.write(f"thermolen: numerical failure: {exc}\n")
        return EXIT_NUMERIC
    except (ConfigError, DomainError, UnsupportedOrderError, NullVectorError) as exc:
        err.write(f"thermolen: {exc}\n")
        return EXIT_USAGE
    except ThermolenError as exc:
        err.write(f"thermolen: {exc}\n")
        return EXIT_NUMERIC
    except OSError as exc:
        err.write(f"thermolen: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
