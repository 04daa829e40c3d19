"""Command-line front end: sweeps, operator application and cross-checks.

Every subcommand writes one dataset as CSV or JSON. JSON output is
``{"meta": {...}, "rows": [...]}``; CSV output starts with ``#`` comment
lines carrying the same meta, then a header row and the records.

Exit codes: 0 on success, 2 on invalid input, 1 on a numerical-domain error.
"""

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import __version__
from .admissible import A, Indicator, ResolventKernel, SpectralSet, spec_from_json
from .errors import DomainError, NotAdmissibleError, ValidationError
from .mellin import REFERENCE_PLAN, TransformPlan, forward_transform, inverse_transform, parseval_defect
from .model_ops import (
    apply_adjoint,
    apply_fourier,
    apply_operator_function,
    apply_resolvent,
    operator_norm,
    spectral_projector_apply,
)
from .resolvent_calculus import calculus_via_resolvent
from .signals import SIGNAL_NAMES, closed_form_output, make_signal
from .symbol import OMEGA, resolvent_norm_bounds, spectrum_endpoints, zeta_modulus

DEFAULTS = {
    "s_min": REFERENCE_PLAN[0],
    "s_max": REFERENCE_PLAN[1],
    "n": REFERENCE_PLAN[2],
    "format": "csv",
    "out": None,
    "mu_max": 10.0,
    "samples": 201,
    "r": 0.3,
    "offsets": [1e-1, 1e-2, 1e-3, 1e-4],
    "eps_list": [0.2, 0.1, 0.05, 0.02],
    "signal": "exp-decay",
    "signal_params": {},
    "op": "fourier",
    "z": [2.0, 0.0],
    "set": [[-A, A]],
    "h": {"kind": "constant", "value": 1.0},
    "eps_ladder": [0.1, 0.03, 0.01, 0.003, 0.001],
    "signals": ["exp-decay", "log-bump", "gaussian-in-s", "wave-packet"],
}


def _float_list(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _json_arg(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise argparse.ArgumentTypeError(f"invalid JSON: {exc}") from None


def _complex_arg(text):
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a complex number like 0.1+0.2j, got {text!r}") from None


def build_parser():
    parser = argparse.ArgumentParser(prog="truncfourier", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--smin", dest="s_min", type=float, help="lower end of the s = ln t grid")
    common.add_argument("--smax", dest="s_max", type=float, help="upper end of the s = ln t grid")
    common.add_argument("--n", type=int, help="number of grid points (power of two)")
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--format", choices=["csv", "json"], help="output format")
    common.add_argument("--config", help="JSON file with defaults for any option")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", parents=[common], help="eigenvalue curve zeta(mu)")
    p.add_argument("--mu-max", dest="mu_max", type=float)
    p.add_argument("--samples", type=int)

    p = sub.add_parser("resolvent-sweep", parents=[common], help="resolvent norm along the normal at r")
    p.add_argument("--r", type=float)
    p.add_argument("--offsets", type=_float_list, help="comma-separated distances delta")

    p = sub.add_parser("projector-norms", parents=[common], help="norms of P(Delta_+(eps)) and P(Delta(eps))")
    p.add_argument("--eps", dest="eps_list", type=_float_list)

    p = sub.add_parser("apply", parents=[common], help="apply an operator to a named signal")
    p.add_argument("--signal", help=f"one of {', '.join(SIGNAL_NAMES)}")
    p.add_argument("--signal-params", dest="signal_params", type=_json_arg, help="JSON object of signal parameters")
    p.add_argument("--op", choices=["fourier", "adjoint", "resolvent", "projector", "function"])
    p.add_argument("--z", type=_complex_arg, help="resolvent point")
    p.add_argument("--set", type=_json_arg, help="spectral set as JSON [[r_lo, r_hi], ...]")
    p.add_argument("--h", type=_json_arg, help="function spec as tagged JSON")

    p = sub.add_parser("calculus-compare", parents=[common], help="resolvent calculus vs model calculus")
    p.add_argument("--h", type=_json_arg)
    p.add_argument("--eps", dest="eps_ladder", type=_float_list)
    p.add_argument("--signal")
    p.add_argument("--signal-params", dest="signal_params", type=_json_arg)

    p = sub.add_parser("parseval-check", parents=[common], help="Parseval defect and roundtrip error per signal")
    p.add_argument("--signals", type=lambda s: [v for v in s.split(",") if v])
    return parser


def resolve_config(args):
    """Merge flags over the config file over the defaults."""
    cfg = dict(DEFAULTS)
    if args.config:
        try:
            with open(args.config) as fh:
                loaded = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"cannot read config {args.config!r}: {exc}") from None
        if not isinstance(loaded, dict):
            raise ValidationError("config file must hold a JSON object")
        cfg.update({k.replace("-", "_"): v for k, v in loaded.items()})
    for key, value in vars(args).items():
        if value is not None and key not in ("config", "command"):
            cfg[key] = value
    cfg["command"] = args.command
    return cfg


def _plan(cfg):
    return TransformPlan(cfg["s_min"], cfg["s_max"], cfg["n"])


def cmd_spectrum(cfg):
    samples = int(cfg["samples"])
    if samples < 2 or not cfg["mu_max"] > 0:
        raise ValidationError("need samples >= 2 and mu_max > 0")
    mu = np.linspace(0.0, float(cfg["mu_max"]), samples)
    r = zeta_modulus(mu)
    zeta = OMEGA * r
    rows = [
        {"mu": float(m), "re_zeta": float(z.real), "im_zeta": float(z.imag), "abs_zeta": float(a)}
        for m, z, a in zip(mu, zeta, r)
    ]
    lo, hi = spectrum_endpoints()
    extra = {"endpoints": [[lo.real, lo.imag], [hi.real, hi.imag]]}
    return ["mu", "re_zeta", "im_zeta", "abs_zeta"], rows, extra


def cmd_resolvent_sweep(cfg):
    r = float(cfg["r"])
    if not -A <= r <= A:
        raise ValidationError(f"r must lie in [-1/sqrt 2, 1/sqrt 2], got {r}")
    offsets = [float(d) for d in cfg["offsets"]]
    if not offsets or any(d <= 0 for d in offsets):
        raise ValidationError("offsets must be positive")
    plan = _plan(cfg)
    zeta = r * OMEGA
    normal = np.exp(0.75j * np.pi)
    rows = []
    for d in offsets:
        z = zeta + d * normal
        norm = operator_norm(ResolventKernel(z), plan)
        lower, upper = resolvent_norm_bounds(z, zeta)
        product = norm * abs(z) ** 2 if r == 0 else norm * d
        rows.append({"delta": d, "norm": norm, "upper": upper, "lower": lower, "product": float(product)})
    return ["delta", "norm", "upper", "lower", "product"], rows, {"r": r}


def cmd_projector_norms(cfg):
    eps_list = [float(e) for e in cfg["eps_list"]]
    if not eps_list or any(not 0 < e <= A for e in eps_list):
        raise ValidationError("each eps must lie in (0, 1/sqrt 2]")
    plan = _plan(cfg)
    rows = []
    for e in eps_list:
        rows.append(
            {
                "eps": e,
                "asym_norm": operator_norm(Indicator(SpectralSet.delta_plus(e)), plan),
                "asym_analytic": float(np.sqrt(1 + 2 * e * e) / (2 * e)),
                "sym_norm": operator_norm(Indicator(SpectralSet.delta_sym(e)), plan),
                "sym_analytic": 1.0,
            }
        )
    return ["eps", "asym_norm", "asym_analytic", "sym_norm", "sym_analytic"], rows, {}


def _signal(cfg, plan):
    params = cfg.get("signal_params") or {}
    if not isinstance(params, dict):
        raise ValidationError("signal parameters must be a JSON object")
    return make_signal(cfg["signal"], plan, **params)


def cmd_apply(cfg):
    plan = _plan(cfg)
    x = _signal(cfg, plan)
    op = cfg["op"]
    if op == "fourier":
        y = apply_fourier(x)
    elif op == "adjoint":
        y = apply_adjoint(x)
    elif op == "resolvent":
        z = cfg["z"]
        z = complex(*z) if isinstance(z, (list, tuple)) else complex(z)
        y = apply_resolvent(z, x)
    elif op == "projector":
        y = spectral_projector_apply(SpectralSet.from_json(cfg["set"]), x)
    elif op == "function":
        y = apply_operator_function(spec_from_json(cfg["h"]), x)
    else:
        raise ValidationError(f"unknown op {op!r}")
    exact = closed_form_output(cfg["signal"], op, plan.t)
    header = ["t", "x_re", "x_im", "y_re", "y_im"]
    if exact is not None:
        header += ["exact_re", "exact_im"]
    rows = []
    for j in range(plan.n):
        row = {
            "t": float(plan.t[j]),
            "x_re": float(x.values[j].real),
            "x_im": float(x.values[j].imag),
            "y_re": float(y.values[j].real),
            "y_im": float(y.values[j].imag),
        }
        if exact is not None:
            row["exact_re"] = float(exact[j].real)
            row["exact_im"] = float(exact[j].imag)
        rows.append(row)
    extra = {"signal": cfg["signal"], "op": op}
    if exact is not None:
        m = plan.interior()
        w = np.exp(0.5 * plan.s[m])
        extra["interior_rel_l2_error"] = float(
            np.linalg.norm(w * (y.values[m] - exact[m])) / np.linalg.norm(w * exact[m])
        )
    return header, rows, extra


def cmd_calculus_compare(cfg):
    plan = _plan(cfg)
    x = _signal(cfg, plan)
    h = spec_from_json(cfg["h"])
    ladder = [float(e) for e in cfg["eps_ladder"]]
    if not ladder or any(e <= 0 for e in ladder):
        raise ValidationError("eps values must be positive")
    ref = apply_operator_function(h, x)
    nx = x.norm()
    rows = [{"eps": e, "rel_l2_error": (calculus_via_resolvent(h, e, x) - ref).norm() / nx} for e in ladder]
    return ["eps", "rel_l2_error"], rows, {"signal": cfg["signal"], "h": h.to_json()}


def cmd_parseval_check(cfg):
    plan = _plan(cfg)
    rows = []
    for name in cfg["signals"]:
        x = make_signal(name, plan)
        back = inverse_transform(forward_transform(x))
        rows.append(
            {
                "signal": name,
                "parseval_defect": parseval_defect(x),
                "roundtrip_error": (back - x).norm() / x.norm(),
            }
        )
    return ["signal", "parseval_defect", "roundtrip_error"], rows, {}


COMMANDS = {
    "spectrum": cmd_spectrum,
    "resolvent-sweep": cmd_resolvent_sweep,
    "projector-norms": cmd_projector_norms,
    "apply": cmd_apply,
    "calculus-compare": cmd_calculus_compare,
    "parseval-check": cmd_parseval_check,
}


def render(header, rows, meta, fmt):
    if fmt == "json":
        return json.dumps({"meta": meta, "rows": rows}, indent=1) + "\n"
    buf = io.StringIO()
    for key, value in meta.items():
        buf.write(f"# {key}: {json.dumps(value)}\n")
    writer = csv.DictWriter(buf, fieldnames=header, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: repr(float(v)) if isinstance(v, (float, np.floating)) else v for k, v in row.items()})
    return buf.getvalue()


def run(argv=None):
    args = build_parser().parse_args(argv)
    cfg = resolve_config(args)
    _plan(cfg)  # validate the grid for every command so meta is always meaningful
    header, rows, extra = COMMANDS[args.command](cfg)
    meta = {
        "command": args.command,
        "plan": {"s_min": float(cfg["s_min"]), "s_max": float(cfg["s_max"]), "n": int(cfg["n"])},
        "version": __version__,
    }
    meta.update(extra)
    text = render(header, rows, meta, cfg["format"])
    if cfg["out"]:
        try:
            with open(cfg["out"], "w") as fh:
                fh.write(text)
        except OSError as exc:
            raise ValidationError(f"cannot write {cfg['out']!r}: {exc}") from None
    else:
        sys.stdout.write(text)
    return 0


def main(argv=None):
    try:
        return run(argv)
    except NotAdmissibleError as exc:
        print(json.dumps({"error": "not-admissible", "detail": str(exc)}), file=sys.stderr)
        return 1
    except ValidationError as exc:
        print(json.dumps({"error": "validation", "detail": str(exc)}), file=sys.stderr)
        return 2
    except DomainError as exc:
        print(json.dumps({"error": "domain", "detail": str(exc)}), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
