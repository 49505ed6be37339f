"""Command line interface: ``smb <subcommand> ...``.

Output is JSON on stdout unless ``--format csv`` is given.  Exit codes:
0 success, 1 a verification failed, 2 usage or domain error, 3 numerical
failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction

import numpy as np

from .errors import DomainError, NumericalFailure, UnsupportedParameter, UsageError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


# ---------------------------------------------------------------------------
# argument types


def real(text: str) -> float:
    """Finite real from a decimal or ``P/Q`` string."""
    try:
        v = float(Fraction(text)) if "/" in text else float(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"not a finite number: {text!r}")
    return v


def rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational P/Q: {text!r}") from None


def cplx(text: str) -> complex:
    try:
        v = complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None
    if not (math.isfinite(v.real) and math.isfinite(v.imag)):
        raise argparse.ArgumentTypeError(f"not finite: {text!r}")
    return v


def grid_spec(text: str) -> np.ndarray:
    """``lo:hi:n``; logarithmic spacing when ``lo > 0``, prefix ``lin:`` for linear."""
    lin = text.startswith("lin:")
    parts = text[4:].split(":") if lin else text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"grid must be lo:hi:n, got {text!r}")
    lo, hi = real(parts[0]), real(parts[1])
    try:
        n = int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid size must be an integer: {text!r}") from None
    if n < 1 or not lo <= hi:
        raise argparse.ArgumentTypeError(f"empty grid {text!r}")
    if lin or lo <= 0:
        return np.linspace(lo, hi, n)
    return np.geomspace(lo, hi, n)


def kv_spec(text: str) -> tuple:
    """``name`` or ``name:key=val,key=val``."""
    name, _, rest = text.partition(":")
    params = {}
    for item in filter(None, rest.split(",")):
        k, eq, v = item.partition("=")
        if not eq:
            raise argparse.ArgumentTypeError(f"expected key=value in {text!r}")
        params[k.strip()] = real(v.strip())
    return name.strip(), params


def positive_int(text: str) -> int:
    try:
        v = int(float(text))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


# ---------------------------------------------------------------------------
# measures from flags


FAMILIES = ("boolean", "free", "monotone", "classical", "cauchy", "mp", "pareto", "delta",
            "gb2_mixing", "shifted_beta", "beta_half")


def make_family(name: str, p: dict):
    from . import lln  # noqa: F401  (registers example families)
    from .measures import FAMILY_REGISTRY, delta
    from .stable_laws import (MarchenkoPastur, Pareto, boolean_stable, cauchy_rho, classical_stable,
                              free_stable, monotone_stable)

    def need(*keys):
        miss = [k for k in keys if p.get(k) is None]
        if miss:
            raise UsageError(f"family {name!r} needs {', '.join('--' + k for k in miss)}")
        return [p[k] for k in keys]

    if name in ("boolean", "free", "monotone", "classical"):
        a, r = need("alpha", "rho")
        return {"boolean": boolean_stable, "free": free_stable, "monotone": monotone_stable,
                "classical": classical_stable}[name](a, r)
    if name == "cauchy":
        return cauchy_rho(*need("rho"))
    if name == "mp":
        return MarchenkoPastur()
    if name == "pareto":
        return Pareto(*need("r"))
    if name == "delta":
        return delta(*need("at"))
    if name == "gb2_mixing":
        return FAMILY_REGISTRY[name](*need("alpha", "beta"))
    if name == "shifted_beta":
        return FAMILY_REGISTRY[name](*need("a"))
    if name == "beta_half":
        return FAMILY_REGISTRY[name]()
    raise UsageError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")


def _measure_from_args(args, prefix=""):
    path = getattr(args, prefix + "measure", None)
    if path:
        from .measures import measure_from_json

        try:
            with open(path) as fh:
                return measure_from_json(json.load(fh))
        except OSError as e:
            raise UsageError(f"cannot read {path}: {e.strerror}") from None
        except json.JSONDecodeError as e:
            raise UsageError(f"{path}: invalid JSON ({e.msg})") from None
    name = getattr(args, prefix + "family", None)
    if not name:
        raise UsageError(f"give --{prefix}family or --{prefix}measure")
    keys = ("alpha", "rho", "beta", "r", "at", "a")
    return make_family(name, {k: getattr(args, prefix + k, None) for k in keys})


def _family_flags(p, prefix="", family_required=False, help_prefix=""):
    flag = prefix.replace("_", "-")
    p.add_argument(f"--{flag}family", choices=FAMILIES, required=family_required,
                   help=f"{help_prefix}catalog family")
    p.add_argument(f"--{flag}measure", metavar="FILE", help=f"{help_prefix}measure JSON file")
    for k in ("alpha", "rho", "beta", "r", "at", "a"):
        p.add_argument(f"--{flag}{k}", type=real, default=None)


def _xs(args):
    if getattr(args, "grid", None) is not None:
        return np.asarray(args.grid, dtype=float)
    if getattr(args, "x", None):
        return np.asarray(args.x, dtype=float)
    raise UsageError("give --x or --grid")


# ---------------------------------------------------------------------------
# output


def _num(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (complex, np.complexfloating)):
        return [float(v.real), float(v.imag)]
    if isinstance(v, (np.floating, np.integer, np.bool_)):
        return _num(v.item())
    if isinstance(v, np.ndarray):
        return [_num(u) for u in v.tolist()]
    if isinstance(v, (list, tuple)):
        return [_num(u) for u in v]
    if isinstance(v, dict):
        return {k: _num(u) for k, u in v.items()}
    if isinstance(v, float) and not math.isfinite(v):
        return str(v)
    return v


def emit(obj, fmt: str = "json", rows=None, header=None, out=None):
    out = out or sys.stdout
    if fmt == "csv":
        if rows is None:
            raise UsageError("this command has no tabular output; use --format json")
        w = csv.writer(out, lineterminator="\n")
        if header:
            w.writerow(header)
        for row in rows:
            w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])
        return
    out.write(json.dumps(_num(obj)) + "\n")


# ---------------------------------------------------------------------------
# subcommands


def cmd_density(args):
    m = _measure_from_args(args)
    x = _xs(args)
    d = np.asarray(m.density(x), dtype=float)
    if x.size == 1 and args.x:
        return emit({"x": float(x[0]), "density": float(d[0])}, args.format, [(x[0], d[0])], ["x", "density"])
    return emit({"x": x, "density": d}, args.format, zip(x, d), ["x", "density"])


def cmd_transform(args):
    from . import transforms as T

    m = _measure_from_args(args)
    rows, out = [], []
    for z in args.z:
        if args.kind == "G":
            v = complex(np.asarray(T.cauchy(m, np.array([z])))[0])
        elif args.kind == "F":
            v = complex(np.asarray(T.f_transform(m, np.array([z])))[0])
        elif args.kind == "eta":
            v = complex(np.asarray(T.eta(m, np.array([z])))[0])
        elif args.kind in ("sigma", "S"):
            if z.imag != 0:
                raise DomainError(f"{args.kind} is evaluated at real points")
            v = (T.sigma if args.kind == "sigma" else T.s_transform)(m, z.real)
        else:
            v = complex(np.asarray(T.voiculescu_phi(m, z)).ravel()[0])
        out.append({"z": z, "value": v})
        rows.append((z.real, z.imag, v.real, v.imag))
    return emit({"kind": args.kind, "values": out}, args.format, rows, ["re_z", "im_z", "re", "im"])


def cmd_mixture_density(args):
    from .mixtures import MixtureSpec, mixture_density

    mix = _measure_from_args(args, "mixing_")
    spec = MixtureSpec.of(mix, args.alpha, args.rho, raw=args.raw_mixing)
    x = _xs(args)
    d = mixture_density(spec, x)
    return emit({"x": x, "density": d, "raw_mixing": args.raw_mixing}, args.format, zip(x, d),
                ["x", "density"])


def cmd_convolve(args):
    from .identities import lower_grid
    from .mixtures import (SForm, boolean_convolve, free_mult_families, monotone_mult_convolve,
                           sform_of)
    from .transforms import eta

    left, right = make_family(*args.left), make_family(*args.right)
    if args.op == "free-mult":
        res = free_mult_families(left, right)
        s = res.sform if hasattr(res, "sform") else sform_of(res)
        body = {"op": args.op, "sform": {"c": complex(s.c), "a": s.a, "b": s.b},
                "family": getattr(res, "family", None), "params": getattr(res, "params", None)}
        if args.z:
            body["S"] = [{"z": z.real, "value": complex(SForm.__call__(s, z.real))} for z in args.z]
        return emit(body, args.format)
    m = boolean_convolve(left, right) if args.op == "boolean" else monotone_mult_convolve(left, right)
    zs = np.asarray(args.z, dtype=complex) if args.z else lower_grid()
    vals = np.asarray(eta(m, zs))
    return emit({"op": args.op, "eta": [{"z": z, "value": v} for z, v in zip(zs, vals)]}, args.format,
                [(z.real, z.imag, v.real, v.imag) for z, v in zip(zs, vals)], ["re_z", "im_z", "re", "im"])


_VERIFY_KEYS = ("alpha", "beta", "rho", "t", "s", "a", "x", "c", "r")


def cmd_verify(args):
    from .identities import IdentityCase, catalog, verify, verify_all

    if args.list:
        return emit(catalog(), args.format)
    if args.seed is None:
        raise UsageError("verify needs --seed")
    if args.all:
        reps = verify_all(args.seed, draws=args.draws, samples=args.samples, workers=args.workers)
        emit([r.to_json() for r in reps], args.format)
        return EXIT_OK if all(r.passed for r in reps) else EXIT_FAIL
    if not args.identity:
        raise UsageError("give --identity ID, --all or --list")
    params = json.loads(args.params) if args.params else {}
    for k in _VERIFY_KEYS:
        v = getattr(args, k)
        if v is not None:
            params[k] = v
    if args.mixing:
        params["mixing"] = args.mixing
    if args.identity == "I15":
        for k in ("s", "t"):
            if k in params:
                params[k] = str(Fraction(params[k]).limit_denominator(10 ** 9))
    rep = verify(IdentityCase(args.identity.upper(), params, args.method, args.tol, args.samples, args.seed))
    emit(rep.to_json(), args.format)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_moments(args):
    from .moments import MomentSeq, float_moments

    if args.exact:
        seq = MomentSeq.exact(args.kind, args.s, args.t, args.n)
        vals = seq.values
    else:
        vals = list(float_moments(args.kind, float(args.s), float(args.t), args.n))
    return emit({"kind": args.kind, "s": args.s, "t": args.t, "moments": vals}, args.format,
                [(k, str(v) if args.exact else v) for k, v in enumerate(vals)], ["n", "moment"])


def cmd_hankel(args):
    from .moments import MomentSeq, hamburger_scan, phase_grid

    if args.phase_grid:
        parts = args.phase_grid.split(":")
        if len(parts) != 3:
            raise UsageError("--phase-grid takes lo:hi:n")
        lo, hi, n = real(parts[0]), real(parts[1]), int(parts[2])
        rows = phase_grid(lo, hi, n, args.max_order)
        return emit(None, "csv", [(s, t, st, "" if k is None else k) for s, t, st, k in rows],
                    ["s", "t", "status", "first_failing_order"])
    if args.s is None or args.t is None:
        raise UsageError("hankel needs --s and --t (or --phase-grid)")
    seq = MomentSeq.exact(args.kind, args.s, args.t, 2 * args.max_order)
    res = hamburger_scan(seq, args.max_order)
    return emit(res.to_json(), args.format, [(k, str(d)) for k, d in enumerate(res.dets)], ["order", "det"])


def cmd_lln(args):
    from .lln import lln_cdf, lln_density_boolean
    from .measures import delta
    from .stable_laws import MarchenkoPastur, boolean_stable, free_stable

    x = _xs(args)
    if args.family == "boolean":
        m = boolean_stable(args.alpha, 1.0)
    elif args.family == "free":
        m = free_stable(args.alpha, 1.0)
    elif args.family == "mp":
        m = MarchenkoPastur()
    else:
        m = delta(args.at)
    cdf = lln_cdf(m, x)
    body = {"family": args.family, "x": x, "cdf": cdf}
    rows = [(a, b) for a, b in zip(x, cdf)]
    header = ["x", "cdf"]
    if args.family == "boolean" and 0 < args.alpha < 1:
        d = lln_density_boolean(args.alpha, x)
        body["density"] = d
        rows = [(a, b, c) for a, b, c in zip(x, cdf, d)]
        header.append("density")
    return emit(body, args.format, rows, header)


def cmd_example(args):
    from . import lln

    p = dict(args.params or {})
    x = _xs(args) if (args.x or args.grid is not None) else np.geomspace(1e-2, 1e2, 41)
    from .mixtures import MixtureSpec, mixture_density
    from .stable_laws import AdmissiblePair

    b = AdmissiblePair(0.5, 1.0)
    if args.name == "gb2":
        a, be = p.get("alpha", 0.8), p.get("beta", 1.0)
        if abs(a * be - 1) < 1e-12:
            x = x[np.abs(x - 1) > 1e-3]
        num = mixture_density(MixtureSpec(lln.GB2Mixing(a, be), b, raw=True), x)
        ref = lln.gb2_density(a, be, x)
    elif args.name == "shifted-beta":
        a = p.get("a", 0.3)
        num = mixture_density(MixtureSpec(lln.ShiftedBetaMixing(a), b, raw=True), x)
        ref = lln.shifted_beta_mixture_density(a, x)
    else:
        num = mixture_density(MixtureSpec(lln.BetaHalf(), b, raw=True), x)
        ref = lln.beta_log_mixture_density(x)
    rel = np.abs(num / ref - 1)
    return emit({"name": args.name, "x": x, "mixture": num, "closed": ref, "max_rel_err": float(rel.max())},
                args.format, zip(x, num, ref), ["x", "mixture_density", "closed_form"])


def cmd_fid_region(args):
    from .fid import fid_region_boolean
    from .stable_laws import AdmissiblePair

    return emit({"alpha": args.alpha, "rho": args.rho,
                 "region": fid_region_boolean(AdmissiblePair(args.alpha, args.rho))}, args.format)


def cmd_pick_scan(args):
    from . import fid
    from .stable_laws import AdmissiblePair

    if args.family == "boolean":
        rep = fid.scan_boolean(AdmissiblePair(args.alpha, args.rho))
    elif args.family == "lambda":
        rep = fid.scan_lambda_power(fid.LambdaParams(args.t, args.rho), args.power)
    elif args.family == "lln-boolean":
        from .lln import phi_boolean_pick_scan

        rep = phi_boolean_pick_scan(args.alpha)
    else:
        from .stable_laws import free_stable

        m = free_stable(args.alpha, args.rho)
        rep = fid.pick_scan(lambda z: m.phi_closed(np.array([z]))[0])
    return emit(rep.to_json(), args.format)


def cmd_lambda(args):
    from . import fid

    p = fid.LambdaParams(args.t, args.rho)
    ind = fid.lambda_indicator(p)
    body = {"t": args.t, "rho": args.rho, "fid": fid.lambda_fid(p), "indicator": ind,
            "indicator_float": float(ind)}
    if args.z:
        body["phi"] = [{"z": z, "value": complex(fid.lambda_phi(p, z))} for z in args.z]
    return emit(body, args.format)


def cmd_char_zero(args):
    from .fid import char_zero_counterexample

    return emit(char_zero_counterexample(args.rho).to_json(), args.format)


def cmd_sample(args):
    from .sampler import sample_measure

    m = _measure_from_args(args)
    batch = sample_measure(m, args.n, args.seed)
    text = "".join(f"{v!r}\n" for v in batch.values.tolist())
    if args.output:
        try:
            with open(args.output, "w") as fh:
                fh.write(text)
        except OSError as e:
            raise UsageError(f"cannot write {args.output}: {e.strerror}") from None
        return emit({"written": args.output, "n": batch.size, "seed": batch.seed}, "json")
    sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="smb", description="Scale mixtures of Boolean stable laws.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=fn)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        return p

    p = add("density", cmd_density, "density of a catalog law")
    _family_flags(p)
    p.add_argument("--x", type=real, nargs="+")
    p.add_argument("--grid", type=grid_spec)

    p = add("transform", cmd_transform, "G, F, eta, sigma, S or phi of a law")
    _family_flags(p)
    p.add_argument("--kind", choices=("G", "F", "eta", "sigma", "S", "phi"), required=True)
    p.add_argument("--z", type=cplx, nargs="+", required=True)

    p = add("mixture-density", cmd_mixture_density, "density of a scale mixture of b_{alpha,rho}")
    _family_flags(p, "mixing_", help_prefix="mixing ")
    p.add_argument("--alpha", type=real, required=True)
    p.add_argument("--rho", type=real, required=True)
    p.add_argument("--raw-mixing", action="store_true",
                   help="use the mixing law as the law of the scale factor (no 1/alpha power)")
    p.add_argument("--x", type=real, nargs="+")
    p.add_argument("--grid", type=grid_spec)

    p = add("convolve", cmd_convolve, "Boolean, monotone or free multiplicative convolution")
    p.add_argument("--op", choices=("boolean", "monotone-mult", "free-mult"), required=True)
    p.add_argument("--left", type=kv_spec, required=True, help="family[:key=val,...]")
    p.add_argument("--right", type=kv_spec, required=True, help="family[:key=val,...]")
    p.add_argument("--z", type=cplx, nargs="+")

    p = add("verify", cmd_verify, "check catalog identities")
    p.add_argument("--identity")
    p.add_argument("--all", action="store_true")
    p.add_argument("--list", action="store_true")
    p.add_argument("--method")
    p.add_argument("--samples", type=positive_int, default=100_000)
    p.add_argument("--seed", type=int)
    p.add_argument("--draws", type=positive_int, default=5)
    p.add_argument("--workers", type=positive_int, default=1)
    p.add_argument("--tol", type=real)
    p.add_argument("--params", help="JSON object of parameters")
    p.add_argument("--mixing", choices=("boolean", "mp", "delta", "pareto"))
    for k in _VERIFY_KEYS:
        p.add_argument(f"--{k}", type=real)

    p = add("moments", cmd_moments, "Fuss-Narayana moments")
    p.add_argument("--kind", choices=("bessel", "tilde"), default="tilde")
    p.add_argument("--s", type=rational, required=True)
    p.add_argument("--t", type=rational, required=True)
    p.add_argument("--n", type=positive_int, required=True)
    p.add_argument("--exact", action="store_true")

    p = add("hankel", cmd_hankel, "Hankel positivity scan")
    p.add_argument("--kind", choices=("bessel", "tilde"), default="tilde")
    p.add_argument("--s", type=rational)
    p.add_argument("--t", type=rational)
    p.add_argument("--max-order", type=positive_int, default=50)
    p.add_argument("--phase-grid", help="lo:hi:n grid of (s, t); CSV output")

    p = add("lln", cmd_lln, "free multiplicative law of large numbers")
    p.add_argument("--family", choices=("boolean", "free", "mp", "delta"), required=True)
    p.add_argument("--alpha", type=real)
    p.add_argument("--at", type=real)
    p.add_argument("--x", type=real, nargs="+")
    p.add_argument("--grid", type=grid_spec)

    p = add("example", cmd_example, "explicit mixture densities (CSV)")
    p.set_defaults(format=None)
    p.add_argument("--name", choices=("gb2", "shifted-beta", "beta-log"), required=True)
    p.add_argument("--params", type=lambda s: kv_spec("x:" + s)[1], help="key=val,...")
    p.add_argument("--x", type=real, nargs="+")
    p.add_argument("--grid", type=grid_spec)

    p = add("fid-region", cmd_fid_region, "free infinite divisibility region of mixtures")
    p.add_argument("--alpha", type=real, required=True)
    p.add_argument("--rho", type=real, required=True)

    p = add("pick-scan", cmd_pick_scan, "Pick-property scan of a Voiculescu transform")
    p.add_argument("--family", choices=("boolean", "free", "lambda", "lln-boolean"), default="boolean")
    p.add_argument("--alpha", type=real)
    p.add_argument("--rho", type=real)
    p.add_argument("--t", type=real)
    p.add_argument("--power", type=real, default=1.0, help="Boolean power of the lambda law")

    p = add("lambda", cmd_lambda, "lambda_{t,rho}: indicator, FID, phi")
    p.add_argument("--t", type=real, required=True)
    p.add_argument("--rho", type=real, required=True)
    p.add_argument("--z", type=cplx, nargs="+")

    p = add("char-zero", cmd_char_zero, "zero of the characteristic function")
    p.add_argument("--rho", type=real, required=True)

    p = add("sample", cmd_sample, "seeded variates, one per line")
    _family_flags(p)
    p.add_argument("-n", type=positive_int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("-o", "--output")
    return ap


def _check_required(args):
    need = {"pick-scan": {"boolean": ("alpha", "rho"), "free": ("alpha", "rho"), "lambda": ("t", "rho"),
                          "lln-boolean": ("alpha",)},
            "lln": {"boolean": ("alpha",), "free": ("alpha",), "delta": ("at",), "mp": ()}}
    table = need.get(args.command)
    if table:
        miss = [k for k in table[args.family] if getattr(args, k) is None]
        if miss:
            raise UsageError(f"{args.command} --family {args.family} needs "
                             + ", ".join("--" + k for k in miss))


def main(argv=None) -> int:
    from .measures import QuadratureSpec

    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        QuadratureSpec.default()
        _check_required(args)
        if getattr(args, "format", None) is None:
            args.format = "csv"
        code = args.func(args)
        return EXIT_OK if code is None else int(code)
    except (DomainError, UnsupportedParameter, UsageError) as e:
        sys.stderr.write(f"smb {args.command}: error: {e}\n")
        return EXIT_USAGE
    except NumericalFailure as e:
        sys.stderr.write(f"smb {args.command}: numerical failure: {e}\n")
        return EXIT_NUMERIC


def run(argv) -> int:
    """Run the CLI on ``argv`` and return the exit code."""
    return main(argv)


def run_captured(argv) -> tuple:
    """``(exit code, stdout, stderr)`` of a CLI run; for tests and scripting."""
    out, err = io.StringIO(), io.StringIO()
    old = sys.stdout, sys.stderr
    sys.stdout, sys.stderr = out, err
    try:
        code = main(argv)
    finally:
        sys.stdout, sys.stderr = old
    return code, out.getvalue(), err.getvalue()


if __name__ == "__main__":
    raise SystemExit(main())
