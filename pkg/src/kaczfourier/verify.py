"""
Cross-check suite run by ``kaczfourier verify``.

Each check compares two independent computations of the same quantity
(or a computed quantity against a proven bound) and records the observed
value next to its limit.
"""

import time
from dataclasses import dataclass

import numpy as np

from .analytic import (cauchy_integral, normalized_cauchy_direct, normalized_cauchy_series,
                       reciprocal_series)
from .kaczmarz import (alpha_recursive, g_gram_schmidt, g_triangle, kaczmarz_iterate,
                       partial_sum_identity_check)
from .measures import (AtomicMeasure, FunctionOnSupport, SelfSimilarMeasure, flatten_ifs,
                       fourier_stieltjes, norm)
from .oracle import alpha_by_compositions, alpha_by_gram_inversion, projection_oracle
from .sampling import BandlimitedFunction, uniform_error_report
from .series import coefficients_via_alpha, coefficients_via_g

DEFAULT_DEPTH = 4
SAMPLING_NS = (4, 16, 64, 256)


@dataclass
class Check:
    name: str
    value: float
    limit: float
    op: str = "<="

    @property
    def passed(self):
        if not np.isfinite(self.value):
            return False
        if self.op == "<=":
            return self.value <= self.limit
        return self.value > self.limit


def random_functions(m, seed, count):
    """``count`` complex Gaussian functions on ``m`` from independent child streams."""
    children = np.random.SeedSequence(seed).spawn(count)
    out = []
    for ss in children:
        rng = np.random.default_rng(ss)
        v = rng.standard_normal(m.size) + 1j * rng.standard_normal(m.size)
        out.append(FunctionOnSupport(m, v / np.sqrt(2.0)))
    return out


def disk_points(count, rmax, seed):
    rng = np.random.default_rng(seed)
    r = rmax * np.sqrt(rng.random(count))
    return r * np.exp(2j * np.pi * rng.random(count))


def _maxdiff(a, b):
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


def transform_checks(m):
    y = np.linspace(-64.0, 64.0, 513)
    mh = fourier_stieltjes(m, y)
    checks = [
        Check("transform: |mu_hat(0) - 1|", abs(fourier_stieltjes(m, 0.0) - 1.0), 1e-12),
        Check("transform: max |mu_hat(y)| - 1", float(np.max(np.abs(mh))) - 1.0, 1e-9),
        Check("transform: mu_hat(-y) vs conj mu_hat(y)", _maxdiff(mh[::-1], np.conj(mh)), 1e-12),
    ]
    if isinstance(m, SelfSimilarMeasure):
        yy = y[np.abs(y) <= 32]
        depth = 12 if m.R ** 12 <= 2 ** 52 else 6
        flat = flatten_ifs(m, depth)
        gap = np.abs(fourier_stieltjes(flat, yy) - mh[np.abs(y) <= 32])
        slack = gap - m.tail_bound(yy, depth)
        checks.append(Check(f"transform: flatten depth {depth} minus tail bound",
                            float(np.max(slack)), 1e-12))
    return checks


def alpha_checks(m, N_comp=16, N=64):
    a_rec = alpha_recursive(m, N).values
    a_cmp = alpha_by_compositions(m, N_comp).values
    a_gram = alpha_by_gram_inversion(m, N).values
    a_inv = reciprocal_series(m, N)
    checks = [
        Check(f"alpha: compositions vs recursion (n<={N_comp})", _maxdiff(a_cmp, a_rec[:N_comp + 1]), 1e-9),
        Check(f"alpha: Gram inversion vs recursion (n<={N})", _maxdiff(a_gram, a_rec), 1e-9),
        Check(f"alpha: 1/F power series vs recursion (n<={N})", _maxdiff(a_inv, a_rec), 1e-10),
    ]
    return checks, a_rec


def function_checks(A, fs, N_max=20000, tol=1e-3, N_ident=64):
    out = {k: 0.0 for k in ("gs", "ident", "resid", "mono", "sandwich", "energy", "parseval",
                            "dual", "cauchy", "re_f", "sampling")}
    out["gs"] = _maxdiff(g_gram_schmidt(A, 24).matrix,
                         g_triangle(alpha_recursive(A, 24)).matrix)
    zs = disk_points(50, 0.9, 7)
    out["re_f"] = float(np.min(cauchy_integral(A, zs).real))
    for f in fs:
        fn = norm(f)
        out["ident"] = max(out["ident"], partial_sum_identity_check(f, N_ident))
        trace = kaczmarz_iterate(f, N_max, tol=tol)
        if trace.converged_at is None:
            out["resid"] = np.inf
            continue
        Nc = trace.converged_at
        out["resid"] = max(out["resid"], trace.residuals[-1] / fn)
        out["mono"] = max(out["mono"], float(np.max(np.diff(trace.residuals), initial=0.0)))
        for n in sorted({min(Nc, k) for k in (0, 1, 2, 4, 8, 16, 64)}):
            proj = projection_oracle(f, n)
            out["sandwich"] = max(out["sandwich"], norm(f - proj) - trace.residuals[n])
        c = coefficients_via_alpha(f, Nc).coefficients
        energy = fn ** 2 - trace.residuals ** 2
        out["energy"] = max(out["energy"], _maxdiff(energy, np.cumsum(np.abs(c) ** 2)))
        out["parseval"] = max(out["parseval"], abs(np.sum(np.abs(c) ** 2) - fn ** 2)
                              - 2.0 * trace.residuals[-1] * fn)
        Nd = min(Nc, 128)
        out["dual"] = max(out["dual"], _maxdiff(coefficients_via_g(f, Nd).coefficients,
                                                coefficients_via_alpha(f, Nd).coefficients))
        direct = normalized_cauchy_direct(f, zs)
        series, bound = normalized_cauchy_series(f, zs, eps=1e-10)
        out["cauchy"] = max(out["cauchy"], float(np.max(np.abs(direct - series) - bound)))
        bf = BandlimitedFunction.from_function(f, max(SAMPLING_NS))
        rows = uniform_error_report(bf, np.linspace(-20.0, 20.0, 81), SAMPLING_NS)
        out["sampling"] = max(out["sampling"], max(err - res for _, err, res in rows))
    return [
        Check("g: Gram-Schmidt vs alpha closed form (N=24)", out["gs"], 1e-10),
        Check(f"kaczmarz: partial-sum identity (n<={N_ident})", out["ident"], 1e-10),
        Check(f"kaczmarz: final residual / ||f|| (N<={N_max})", out["resid"], tol),
        Check("kaczmarz: max residual increase", out["mono"], 1e-12),
        Check("kaczmarz: projection sandwich violation", out["sandwich"], 1e-9),
        Check("parseval: energy identity deviation", out["energy"], 1e-9),
        Check("parseval: excess over 2*residual*||f||", out["parseval"], 1e-9),
        Check("series: <f,g_n> vs alpha * fhat", out["dual"], 1e-10),
        Check("cauchy: min Re F(z), |z|<=0.9", out["re_f"], 0.5, ">"),
        Check("cauchy: |direct - series| minus tail bound", out["cauchy"], 1e-12),
        Check("sampling: sup error minus residual", out["sampling"], 1e-9),
    ]


def run_suite(m, depth=DEFAULT_DEPTH, seed=0, n_functions=3, N_max=20000, tol=1e-3):
    """Run every check on ``m``; returns ``(checks, alpha_values, seconds)``.

    Self-similar measures are discretized with :func:`flatten_ifs` at
    ``depth`` for the checks that need functions in L^2(mu).
    """
    t0 = time.perf_counter()
    checks = transform_checks(m)
    a_checks, alpha = alpha_checks(m)
    checks += a_checks
    A = m if isinstance(m, AtomicMeasure) else flatten_ifs(m, depth)
    checks += function_checks(A, random_functions(A, seed, n_functions), N_max=N_max, tol=tol)
    return checks, alpha, time.perf_counter() - t0
