"""
Reconstruction of mu-bandlimited functions from their integer samples.

A function ``F(y) = int f(x) exp(-2 pi i y x) dmu(x)`` is recovered as
``F(y) = sum_n c_n mu_hat(y - n)`` with ``c_n = sum_{j<=n} alpha_{n-j} F(j)``.
Because ``|F(y)| <= ||f||``, the error of the N-term sum is bounded
uniformly in y by the L^2(mu) residual of the N-term Fourier series.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError, ValidationError
from .kaczmarz import alpha_recursive
from .measures import FunctionOnSupport, fourier_stieltjes, norm
from .series import convolve_alpha, fhat, synthesize_values


@dataclass(eq=False)
class BandlimitedFunction:
    """Integer samples ``F(0..N)`` of a mu-bandlimited function.

    ``source`` is the generating f when known; the sample-driven path
    never looks at it.
    """
    measure: object
    samples: np.ndarray
    source: FunctionOnSupport = None

    @classmethod
    def from_function(cls, f, N):
        return cls(f.measure, np.asarray(fhat(f, np.arange(N + 1)), dtype=complex), f)

    @classmethod
    def from_samples(cls, measure, samples):
        return cls(measure, np.asarray(samples, dtype=complex))

    @property
    def N(self):
        return self.samples.size - 1

    def exact(self, y):
        if self.source is None:
            raise ValidationError("no source function attached", field="source")
        return fhat(self.source, y)


def sample_coefficients(bf, N=None):
    """``c_n = sum_{j<=n} alpha_{n-j} F(j)`` from the samples alone."""
    N = bf.N if N is None else N
    if N > bf.N:
        raise DomainError(f"only {bf.N + 1} samples available, N={N} requested")
    alpha = alpha_recursive(bf.measure, N)
    return convolve_alpha(alpha.values, bf.samples[:N + 1])


def reconstruct(bf, y, N=None):
    """N-term sampling series ``sum_{n<=N} c_n mu_hat(y - n)``, vectorized over ``y``."""
    c = sample_coefficients(bf, N)
    y = np.asarray(y, dtype=float)
    shifts = np.subtract.outer(y, np.arange(c.size, dtype=float))
    out = fourier_stieltjes(bf.measure, shifts) @ c
    return complex(out) if y.ndim == 0 else out


def series_residual(bf, N):
    """``||f - sum_{n<=N} c_n e_n||_{L^2(mu)}``, the uniform error bound at N."""
    f = bf.source
    if f is None:
        raise ValidationError("the residual bound needs the source function", field="source")
    c = sample_coefficients(bf, N)
    return norm(f - FunctionOnSupport(f.measure, synthesize_values(c, f.measure)))


def uniform_error_report(bf, y_grid, N_list):
    """For each N: ``(N, sup_y |reconstruct - F|, residual_N)`` over ``y_grid``."""
    y = np.asarray(y_grid, dtype=float)
    if y.size == 0 or len(N_list) == 0:
        raise DomainError("grids must be nonempty")
    truth = bf.exact(y)
    rows = []
    for N in N_list:
        err = float(np.max(np.abs(reconstruct(bf, y, N) - truth)))
        rows.append((int(N), err, series_residual(bf, N)))
    return rows


def sampling_rows(bf, y_grid, N_list):
    """Rows ``(N, y, re rec, im rec, re true, im true, abs_err)`` for CSV output."""
    y = np.asarray(y_grid, dtype=float)
    truth = bf.exact(y)
    rows = []
    for N in N_list:
        rec = reconstruct(bf, y, N)
        for yy, r, t in zip(y, rec, truth):
            rows.append((int(N), float(yy), r.real, r.imag, t.real, t.imag, abs(r - t)))
    return rows
