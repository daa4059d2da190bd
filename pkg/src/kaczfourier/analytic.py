"""
Cauchy integrals of mu in the unit disk.

``F(z) = int dmu(x) / (1 - z exp(-2 pi i x)) = sum_n mu_hat(n) z^n`` has
real part above 1/2 on the disk, its reciprocal has Taylor coefficients
alpha_n, and the normalized Cauchy transform ``V f = (int f / (1 - z e^{-2 pi i x})) / F``
has Taylor coefficients ``<f, g_n>``.
"""

import math

import numpy as np

from .exceptions import DomainError
from .measures import TWO_PI, AtomicMeasure, integer_transform, norm
from .series import coefficients_via_g

DISK_MARGIN = 1e-9


def check_disk(z, margin=DISK_MARGIN):
    """Return ``z`` as a complex array after checking ``|z| <= 1 - margin``."""
    z = np.asarray(z, dtype=complex)
    if np.any(~np.isfinite(z)) or np.any(np.abs(z) > 1.0 - margin):
        raise DomainError(f"|z| must be at most 1 - {margin:g}")
    return z


def _kernel(m, z):
    # 1 / (1 - z exp(-2 pi i x_j)), shape z.shape + (n_atoms,)
    return 1.0 / (1.0 - np.multiply.outer(z, np.exp(-1j * TWO_PI * m.points)))


def _scalar(z, out):
    return complex(out) if z.ndim == 0 else out


def cauchy_integral(m, z):
    """Exact ``F(z)`` for an atomic measure, vectorized over ``z``."""
    if not isinstance(m, AtomicMeasure):
        raise DomainError("the closed-form Cauchy integral needs an atomic measure")
    z = check_disk(z)
    return _scalar(z, _kernel(m, z) @ m.weights)


def cauchy_integral_series(m, z, K):
    """``sum_{n<=K} mu_hat(n) z^n`` and the tail bound ``|z|^(K+1) / (1 - |z|)``."""
    z = check_disk(z)
    mh = integer_transform(m, K)
    value = np.polynomial.polynomial.polyval(z, mh)
    bound = np.abs(z) ** (K + 1) / (1.0 - np.abs(z))
    return _scalar(z, value), (float(bound) if z.ndim == 0 else bound)


def reciprocal_series(m, N):
    """Taylor coefficients 0..N of ``1 / F`` by Newton iteration on truncated power series.

    Each step ``b <- b (2 - a b) mod z^(2k)`` doubles the number of correct
    coefficients; this route shares nothing with the linear alpha recursion.
    """
    a = integer_transform(m, N)
    b = np.array([1.0 / a[0]], dtype=complex)
    k = 1
    while k < N + 1:
        k = min(2 * k, N + 1)
        ab = np.convolve(a[:k], b)[:k]
        corr = -ab
        corr[0] += 2.0
        b = np.convolve(b, corr)[:k]
    return b[:N + 1]


def normalized_cauchy_direct(f, z):
    """``V f(z)`` as the ratio of the two exact atomic sums."""
    m = f.measure
    z = check_disk(z)
    K = _kernel(m, z)
    return _scalar(z, (K @ (m.weights * f.values)) / (K @ m.weights))


def series_terms_for(f, z, eps):
    """Smallest N with ``||f|| |z|^(N+1) / sqrt(1 - |z|^2) <= eps``."""
    r = float(np.max(np.abs(z)))
    fn = norm(f)
    if r == 0.0 or fn == 0.0:
        return 0
    need = math.log(eps * math.sqrt(1.0 - r * r) / fn) / math.log(r) - 1.0
    return max(0, math.ceil(need))


def normalized_cauchy_series(f, z, N=None, eps=1e-12):
    """``sum_{n<=N} <f, g_n> z^n`` together with its Cauchy-Schwarz tail bound.

    The bound ``||f|| |z|^(N+1) / sqrt(1 - |z|^2)`` follows from
    ``sum |c_n|^2 = ||f||^2``.  When ``N`` is omitted it is chosen so the
    bound is at most ``eps``.

    Returns
    -------
    (value, tail_bound)
    """
    z = check_disk(z)
    if N is None:
        N = series_terms_for(f, z, eps)
    c = coefficients_via_g(f, N).coefficients
    value = np.polynomial.polynomial.polyval(z, c)
    bound = norm(f) * np.abs(z) ** (N + 1) / np.sqrt(1.0 - np.abs(z) ** 2)
    return _scalar(z, value), (float(bound) if z.ndim == 0 else bound)


def polar_grid(radii, n_angles):
    """Points ``r exp(2 pi i k / n_angles)`` for each radius, radius-major."""
    radii = np.atleast_1d(np.asarray(radii, dtype=float))
    theta = TWO_PI * np.arange(n_angles) / n_angles
    return (radii[:, None] * np.exp(1j * theta)[None, :]).ravel()


def cauchy_grid(f, z, N=None, eps=1e-12):
    """Rows ``(re z, im z, re V, im V, tail_bound)`` for the series evaluation at each ``z``."""
    z = check_disk(np.atleast_1d(z))
    if N is None:
        N = series_terms_for(f, z, eps)
    v, bound = normalized_cauchy_series(f, z, N=N)
    return [(float(zz.real), float(zz.imag), float(vv.real), float(vv.imag), float(bb))
            for zz, vv, bb in zip(z, v, bound)]
