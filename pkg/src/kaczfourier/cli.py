"""Command-line front end.

Exit status: 0 on success, 1 when a numerical cross-check fails, 2 when
an input file or option is invalid.
"""

import argparse
import math
import sys
import warnings

import numpy as np

from . import io as kio
from .analytic import cauchy_grid, polar_grid
from .exceptions import (ConditioningWarning, DomainError, ResourceError, ValidationError)
from .kaczmarz import alpha_recursive, g_triangle, kaczmarz_iterate
from .measures import AtomicMeasure, flatten_ifs, fourier_stieltjes
from .sampling import BandlimitedFunction, sampling_rows
from .series import (coefficients_via_alpha, expand_to_tolerance, mixture_h_expansion,
                     synthesize)
from .verify import DEFAULT_DEPTH, run_suite


class ContractViolation(RuntimeError):
    """A computed quantity failed its numerical contract."""


def parse_grid(text):
    """``START:STOP:STEP`` with STOP included when it lies on the grid."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"grid must be START:STOP:STEP, got {text!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid values must be numbers, got {text!r}") from None
    if not step > 0 or stop < start or not all(map(math.isfinite, (start, stop, step))):
        raise argparse.ArgumentTypeError("grid needs STEP > 0 and STOP >= START")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    if count > 1_000_000:
        raise argparse.ArgumentTypeError(f"grid has {count} points; cap is 1e6")
    return start + step * np.arange(count)


def parse_int_list(text):
    try:
        vals = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not vals or min(vals) < 0:
        raise argparse.ArgumentTypeError("need at least one nonnegative integer")
    return vals


def nonneg_int(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {v}")
    return v


def positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def positive_float(text):
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {v}")
    return v


def _measure(args):
    return kio.read_measure(args.measure)


def _atomic(m, args):
    if isinstance(m, AtomicMeasure):
        return m
    return flatten_ifs(m, args.depth)


def _function(A, args):
    if args.function is None:
        return kio.generate_function(A, f"random({args.seed})")
    return kio.parse_function_file(args.function, A)


# --- commands ---------------------------------------------------------------

def cmd_transform(args):
    m = _measure(args)
    y = args.grid
    kio.write_csv(["y", "re", "im"],
                  [(float(a), float(v.real), float(v.imag))
                   for a, v in zip(y, np.atleast_1d(fourier_stieltjes(m, y)))], args.out)


def cmd_alpha(args):
    alpha = alpha_recursive(_measure(args), args.N)
    kio.write_csv(["n", "re", "im"], kio.complex_rows(alpha.values), args.out)


def cmd_gtriangle(args):
    gt = g_triangle(alpha_recursive(_measure(args), args.N))
    rows = [(n, j, float(v.real), float(v.imag))
            for n in range(gt.N + 1) for j, v in enumerate(gt.row(n))]
    kio.write_csv(["n", "j", "re", "im"], rows, args.out)


def cmd_kaczmarz(args):
    A = _atomic(_measure(args), args)
    trace = kaczmarz_iterate(_function(A, args), args.N, tol=args.tol)
    if args.tol is not None and trace.converged_at is None:
        raise ContractViolation(
            f"residual {trace.residuals[-1]:.3e} above {args.tol:g}*||f|| after N={args.N}")
    kio.write_csv(["n", "residual"], [(n, float(r)) for n, r in enumerate(trace.residuals)],
                  args.out)


def cmd_coeffs(args):
    A = _atomic(_measure(args), args)
    f = _function(A, args)
    if args.N is None:
        try:
            e = expand_to_tolerance(f, args.tol, args.max_N)
        except RuntimeError as exc:
            raise ContractViolation(str(exc)) from None
    else:
        e = coefficients_via_alpha(f, args.N)
    kio.write_json(kio.expansion_to_dict(e), args.out)


def cmd_synth(args):
    A = _atomic(_measure(args), args)
    e = kio.expansion_from_dict(kio.load_json(args.coeffs))
    kio.write_json(kio.function_to_json(synthesize(e, A)), args.out)


def cmd_mixture(args):
    mu = _atomic(_measure(args), args)
    nu = _atomic(kio.read_measure(args.nu), args)
    e = mixture_h_expansion(mu, nu, args.eta, _function(mu, args), args.N)
    kio.write_json(kio.expansion_to_dict(e), args.out)


def cmd_cauchy(args):
    A = _atomic(_measure(args), args)
    f = _function(A, args)
    z = polar_grid(args.grid, args.angles)
    rows = cauchy_grid(f, z, N=args.N, eps=args.tol)
    kio.write_csv(["re_z", "im_z", "re_V", "im_V", "tail_bound"], rows, args.out)


def cmd_sample(args):
    A = _atomic(_measure(args), args)
    bf = BandlimitedFunction.from_function(_function(A, args), max(args.N))
    rows = sampling_rows(bf, args.grid, args.N)
    kio.write_csv(["N", "y", "re_rec", "im_rec", "re_true", "im_true", "abs_err"], rows, args.out)


def cmd_verify(args):
    m = _measure(args)
    checks, alpha, seconds = run_suite(m, depth=args.depth, seed=args.seed, tol=args.tol)
    shown = ", ".join(_fmt_complex(a) for a in alpha[:8])
    print(f"alpha[0..7]: ({shown}, ...)")
    width = max(len(c.name) for c in checks)
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        print(f"{status}  {c.name:<{width}}  {c.value:.3e} {c.op} {c.limit:.0e}")
    print(f"{sum(c.passed for c in checks)}/{len(checks)} checks passed in {seconds:.2f}s")
    if args.out:
        kio.write_json({"alpha": [kio.encode_complex(a) for a in alpha],
                        "checks": [{"name": c.name, "value": float(c.value), "limit": c.limit,
                                    "op": c.op, "passed": bool(c.passed)} for c in checks]},
                       args.out)
    failed = [c for c in checks if not c.passed]
    if failed:
        raise ContractViolation("; ".join(f"{c.name} = {c.value:.3e}" for c in failed))


def _fmt_complex(z, digits=6):
    re_, im_ = round(z.real, digits) + 0.0, round(z.imag, digits) + 0.0
    if im_ == 0.0:
        return f"{re_:g}"
    return f"{re_:g}{im_:+g}i"


# --- parser -----------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(
        prog="kaczfourier",
        description="Kaczmarz-based expansions in exponentials on singular measures.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_, *opts):
        sp = sub.add_parser(name, help=help_, description=help_)
        sp.add_argument("--measure", required=True, help="measure JSON file")
        for opt in opts:
            opt(sp)
        sp.add_argument("--out", default=None, help="output path (default: stdout)")
        sp.set_defaults(func=func)
        return sp

    def N(required=False, default=None):
        return lambda sp: sp.add_argument("--N", type=nonneg_int, required=required,
                                          default=default, help="truncation index")

    def depth(sp):
        sp.add_argument("--depth", type=positive_int, default=DEFAULT_DEPTH,
                        help="flattening depth for self-similar measures")

    def function(sp):
        sp.add_argument("--function", default=None,
                        help="function JSON file (default: random(SEED) generator)")
        sp.add_argument("--seed", type=nonneg_int, default=0)

    def grid(default):
        return lambda sp: sp.add_argument("--grid", type=parse_grid, default=parse_grid(default),
                                          help=f"START:STOP:STEP (default {default})")

    def tol(default):
        return lambda sp: sp.add_argument("--tol", type=positive_float, default=default)

    add("transform", cmd_transform, "Fourier-Stieltjes transform on a grid", grid("0:16:1"))
    add("alpha", cmd_alpha, "alpha coefficients as CSV (n, re, im)", N(default=32))
    add("gtriangle", cmd_gtriangle, "coefficients of g_n in e_0..e_n (n, j, re, im)",
        N(default=16))
    add("kaczmarz", cmd_kaczmarz, "Kaczmarz residual history (n, residual)",
        N(default=1000), depth, function, tol(None))
    coeffs = add("coeffs", cmd_coeffs, "Fourier coefficients as expansion JSON",
                 N(), depth, function, tol(1e-3))
    coeffs.add_argument("--max-N", dest="max_N", type=nonneg_int, default=20000,
                        help="cap for the adaptive choice of N when --N is omitted")
    synth = add("synth", cmd_synth, "evaluate an expansion on the atoms", depth)
    synth.add_argument("--coeffs", required=True, help="expansion JSON file")
    mixture = add("mixture", cmd_mixture, "mixture-based coefficients <f, eta h_n>_mu",
                  N(default=200), depth, function)
    mixture.add_argument("--nu", required=True, help="measure JSON file, singular to --measure")
    mixture.add_argument("--eta", type=float, required=True, help="mixture weight in (0, 1]")
    cauchy = add("cauchy", cmd_cauchy, "normalized Cauchy transform on a polar grid",
                 N(), depth, function, grid("0.1:0.9:0.2"), tol(1e-12))
    cauchy.add_argument("--angles", type=positive_int, default=16,
                        help="angles per radius")
    sample = add("sample", cmd_sample, "sampling reconstruction report", depth, function,
                 grid("-8:8:0.25"))
    sample.add_argument("--N", type=parse_int_list, default=[4, 16, 64],
                        help="comma-separated truncation indices")
    add("verify", cmd_verify, "run the cross-check suite and print a pass/fail table",
        depth, tol(1e-3), lambda sp: sp.add_argument("--seed", type=nonneg_int, default=0))
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "mixture" and not (0.0 < args.eta <= 1.0):
        parser.error(f"--eta must lie in (0, 1], got {args.eta}")
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always", ConditioningWarning)
            warnings.showwarning = _show_warning
            args.func(args)
    except (ValidationError, DomainError, ResourceError) as exc:
        print(f"kaczfourier {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except ContractViolation as exc:
        print(f"kaczfourier {args.command}: contract violation: {exc}", file=sys.stderr)
        return 1
    return 0


def _show_warning(message, category, filename, lineno, file=None, line=None):
    print(f"warning: {message}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
