"""
Fourier coefficients with respect to the Kaczmarz auxiliary sequence.

For a singular probability measure every f in L^2(mu) satisfies
``f = sum_n c_n e_n`` with ``c_n = <f, g_n> = sum_j alpha_{n-j} fhat(j)``
and ``sum |c_n|^2 = ||f||^2``.  The coefficients are not unique; the
mixture construction and the quaternary Cantor spectrum give others.
"""

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError, ValidationError
from .kaczmarz import alpha_recursive, g_triangle, kaczmarz_iterate
from .measures import (TWO_PI, AtomicMeasure, FunctionOnSupport, exp_matrix, measure_id, mix,
                       norm)

DISTINCT_TOL = 1e-9


@dataclass(eq=False)
class Expansion:
    measure_id: str
    coefficients: np.ndarray
    parseval_partial: float
    residual: float

    @property
    def N(self):
        return self.coefficients.size - 1


def fhat(f, y):
    """``int f(x) exp(-2 pi i y x) dmu(x)``, vectorized over ``y``."""
    m = f.measure
    y = np.asarray(y, dtype=float)
    out = np.exp(-1j * TWO_PI * np.multiply.outer(y, m.points)) @ (m.weights * f.values)
    return out if y.ndim else complex(out)


def synthesize_values(coefficients, m):
    """``sum_n c_n e_n(x)`` at each atom of ``m``."""
    c = np.asarray(coefficients, dtype=complex)
    return c @ exp_matrix(m, c.size - 1)


def synthesize(expansion, m):
    return FunctionOnSupport(m, synthesize_values(expansion.coefficients, m))


def _expansion(f, c):
    c = np.asarray(c, dtype=complex)
    r = norm(f - FunctionOnSupport(f.measure, synthesize_values(c, f.measure)))
    return Expansion(measure_id(f.measure), c, float(np.sum(np.abs(c) ** 2)), r)


def convolve_alpha(alpha_values, samples):
    """``c_n = sum_{j<=n} alpha_{n-j} s_j`` for n = 0..len(samples)-1."""
    s = np.asarray(samples, dtype=complex)
    return np.convolve(np.asarray(alpha_values)[:s.size], s)[:s.size]


def coefficients_via_g(f, N):
    """``c_n = <f, g_n>`` with g_n evaluated pointwise on the atoms."""
    m = f.measure
    G = g_triangle(alpha_recursive(m, N)).evaluate(m)
    return _expansion(f, G.conj() @ (m.weights * f.values))


def coefficients_via_alpha(f, N):
    """``c_n = sum_j alpha_{n-j} fhat(j)``: alpha convolved with the integer samples of fhat."""
    alpha = alpha_recursive(f.measure, N)
    return _expansion(f, convolve_alpha(alpha.values, fhat(f, np.arange(N + 1))))


def steps_to_tolerance(f, tol, N_max=20000):
    """Smallest N with ``||f - sum_{n<=N} c_n e_n|| <= tol * ||f||``, or None.

    Uses the Kaczmarz residuals, which coincide with the partial-sum
    residuals.
    """
    trace = kaczmarz_iterate(f, N_max, tol=tol)
    return trace.converged_at


def expand_to_tolerance(f, tol=1e-3, N_max=20000):
    """Expansion truncated at the first N reaching ``tol * ||f||``.

    Raises RuntimeError when ``N_max`` steps are not enough.
    """
    N = steps_to_tolerance(f, tol, N_max)
    if N is None:
        raise RuntimeError(f"residual did not reach {tol:g}*||f|| within {N_max} steps")
    return coefficients_via_alpha(f, N)


def convex_combination(sequences, weights):
    """Weighted average of coefficient sequences (zero-padded to equal length).

    Any convex combination of reproducing coefficient sequences reproduces f.
    """
    w = np.asarray(weights, dtype=float)
    if w.size != len(sequences) or np.any(w < 0) or abs(math.fsum(w) - 1.0) > 1e-12:
        raise DomainError("weights must be nonnegative, one per sequence, and sum to 1")
    L = max(len(s) for s in sequences)
    out = np.zeros(L, dtype=complex)
    for wi, s in zip(w, sequences):
        out[:len(s)] += wi * np.asarray(s, dtype=complex)
    return out


# --- mixtures ---------------------------------------------------------------

def lift_to_mixture(f, lam):
    """Extend f on mu by zero to the atoms of a mixture lam containing mu's atoms."""
    idx = np.searchsorted(lam.points, f.measure.points)
    if np.any(lam.points[np.minimum(idx, lam.size - 1)] != f.measure.points):
        raise ValidationError("mixture does not contain the atoms of f's measure", field="measure")
    v = np.zeros(lam.size, dtype=complex)
    v[idx] = f.values
    return FunctionOnSupport(lam, v)


def mixture_h_values(mu, nu, eta, N):
    """``eta * h_n`` on the atoms of mu for n = 0..N, h_n the auxiliary sequence of the mixture."""
    lam = mix(mu, nu, eta)
    return eta * g_triangle(alpha_recursive(lam, N)).evaluate(mu)


def mixture_h_expansion(mu, nu, eta, f, N):
    """Coefficients ``d_n = <f, eta h_n>_mu`` reproducing f in L^2(mu).

    The h_n come from the Kaczmarz algorithm in L^2 of the mixture
    ``eta mu + (1 - eta) nu``; the inner product is over mu only.
    """
    if f.measure != mu:
        raise ValidationError("f must be defined on mu", field="function")
    H = mixture_h_values(mu, nu, eta, N)
    return _expansion(f, H.conj() @ (mu.weights * f.values))


def mixture_distinctness(mu, nu, eta, nu2, eta2, N=32, tol=DISTINCT_TOL):
    """First n where ``eta h_n`` and ``eta2 h2_n`` differ in L^2(mu), else None."""
    H1 = mixture_h_values(mu, nu, eta, N)
    H2 = mixture_h_values(mu, nu2, eta2, N)
    gap = np.sqrt(np.abs(H1 - H2) ** 2 @ mu.weights)
    hits = np.flatnonzero(gap > tol)
    return int(hits[0]) if hits.size else None


# --- quaternary Cantor spectrum ----------------------------------------------

def quaternary_spectrum(limit):
    """Elements below ``limit`` of {sum_k a_k 4^k : a_k in {0, 1}}."""
    out, k = [0], 0
    while 4 ** k < limit:
        out = out + [x + 4 ** k for x in out]
        k += 1
    return sorted(x for x in out if x < limit)


def _is_cantor4(m):
    src = getattr(m, "origin", None)
    if not src:
        return False
    ifs = src[0]
    return (ifs.R == 4 and ifs.digits == (0, 2)
            and abs(ifs.probs[0] - 0.5) < 1e-15 and abs(ifs.probs[1] - 0.5) < 1e-15)


def spectral_h_rows(N):
    """Coefficient matrix of ``h_n = e_n`` (n in the spectrum) or 0 for n = 0..N."""
    H = np.zeros((N + 1, N + 1), dtype=complex)
    for lam in quaternary_spectrum(N + 1):
        H[lam, lam] = 1.0
    return H


def spectral_expansion_mu4(f, N):
    """``<f, h_n>`` for the orthonormal spectrum of the quaternary Cantor measure."""
    m = f.measure
    if not isinstance(m, AtomicMeasure) or not _is_cantor4(m):
        raise ValidationError("spectral expansion needs a flattened quaternary Cantor measure",
                              field="measure")
    c = np.zeros(N + 1, dtype=complex)
    lam = np.array(quaternary_spectrum(N + 1))
    c[lam] = fhat(f, lam.astype(float))
    return _expansion(f, c)
