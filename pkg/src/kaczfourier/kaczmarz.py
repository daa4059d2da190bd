"""
The Kaczmarz algorithm run on the exponentials e_0, e_1, ... in L^2(mu).

The auxiliary sequence g_n produced by the algorithm has the closed form
``g_n = sum_j conj(alpha_{n-j}) e_j``, where the scalars alpha_n come from
a linear recursion in the integer moments mu_hat(1), mu_hat(2), ...
"""

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .exceptions import ConditioningWarning, DomainError
from .measures import (TWO_PI, exp_matrix, integer_transform, measure_id, norm)

ALPHA_WARN = 1e12


@dataclass(frozen=True, eq=False)
class AlphaSequence:
    measure_id: str
    values: np.ndarray

    def __len__(self):
        return self.values.size

    def __getitem__(self, n):
        return self.values[n]

    @property
    def N(self):
        return self.values.size - 1


def alpha_from_moments(moments):
    """alpha_0..alpha_N from ``moments = (mu_hat(0), ..., mu_hat(N))``.

    Uses ``alpha_n = -sum_{j<n} mu_hat(n - j) alpha_j``; ``moments[0]`` is
    ignored (it is 1 for a probability measure).
    """
    mh = np.asarray(moments, dtype=complex)
    N = mh.size - 1
    a = np.zeros(N + 1, dtype=complex)
    a[0] = 1.0
    for n in range(1, N + 1):
        a[n] = -np.dot(mh[n:0:-1], a[:n])
    return a


def alpha_recursive(m, N, warn_threshold=ALPHA_WARN):
    """The scalars alpha_0..alpha_N of the measure ``m``.

    Emits :class:`ConditioningWarning` (does not raise) when
    ``max |alpha_n|`` exceeds ``warn_threshold``.
    """
    if N < 0:
        raise DomainError(f"N must be >= 0, got {N}")
    a = alpha_from_moments(integer_transform(m, N))
    amax = float(np.max(np.abs(a)))
    if not math.isfinite(amax) or amax > warn_threshold:
        warnings.warn(f"max |alpha_n| = {amax:.3g} for n <= {N}; results may be unreliable",
                      ConditioningWarning, stacklevel=2)
    return AlphaSequence(measure_id(m), _readonly(a))


def _readonly(a):
    a.setflags(write=False)
    return a


class GTriangle:
    """Lower-triangular coefficients of g_0..g_N in the basis e_0..e_N.

    ``matrix[n, j]`` is the coefficient of e_j in g_n.  Built either from
    an :class:`AlphaSequence` (rows are reversed conjugated prefixes) or
    from an explicit matrix.
    """

    def __init__(self, matrix=None, alpha=None):
        if (matrix is None) == (alpha is None):
            raise ValueError("give exactly one of matrix or alpha")
        self._matrix = None if matrix is None else _readonly(np.array(matrix, dtype=complex))
        self.alpha = alpha

    @property
    def N(self):
        return (self.alpha.N if self.alpha is not None else self._matrix.shape[0] - 1)

    @property
    def matrix(self):
        if self._matrix is None:
            a = np.conj(self.alpha.values)
            n = np.arange(a.size)
            diff = n[:, None] - n[None, :]
            mat = np.where(diff >= 0, a[np.clip(diff, 0, None)], 0.0)
            self._matrix = _readonly(mat.astype(complex))
        return self._matrix

    def row(self, n):
        if self.alpha is not None:
            return np.conj(self.alpha.values[n::-1])
        return self._matrix[n, :n + 1].copy()

    @property
    def rows(self):
        return [self.row(n) for n in range(self.N + 1)]

    def evaluate(self, m):
        """Values of g_0..g_N on the atoms of ``m``, shape ``(N + 1, n_atoms)``."""
        E = exp_matrix(m, self.N)
        if self.alpha is None:
            return self._matrix @ E
        # each column is a causal convolution of conj(alpha) with e_j(x)
        a = np.conj(self.alpha.values)
        out = np.empty_like(E)
        for k in range(E.shape[1]):
            out[:, k] = np.convolve(a, E[:, k])[:self.N + 1]
        return out


def g_triangle(alpha):
    return GTriangle(alpha=alpha)


def g_gram_schmidt(m, N):
    """g_0..g_N straight from ``g_n = e_n - sum_{i<n} <e_n, e_i> g_i``.

    The inner products come from the atoms, not from the alpha recursion,
    so this is an independent route to the same triangle.
    """
    E = exp_matrix(m, N)
    gram = (E * m.weights) @ E.conj().T  # gram[n, i] = <e_n, e_i>
    C = np.zeros((N + 1, N + 1), dtype=complex)
    for n in range(N + 1):
        C[n, n] = 1.0
        if n:
            C[n, :n] -= gram[n, :n] @ C[:n, :n]
    return GTriangle(matrix=C)


@dataclass(eq=False)
class KaczmarzTrace:
    """Output of :func:`kaczmarz_iterate`.

    ``coefficients[n]`` is the step size ``<f - x_{n-1}, e_n>``, which by
    the partial-sum identity equals ``<f, g_n>``.
    """
    residuals: np.ndarray
    coefficients: np.ndarray
    fnorm: float
    iterates: list = field(default=None, repr=False)
    converged_at: int = None

    @property
    def N(self):
        return self.residuals.size - 1


def kaczmarz_iterate(f, N, store_iterates=False, tol=None):
    """Run ``x_n = x_{n-1} + <f - x_{n-1}, e_n> e_n`` for n = 0..N (x_{-1} = 0).

    Parameters
    ----------
    f : FunctionOnSupport
    N : int
        Last index. Fewer steps are taken when ``tol`` is reached.
    store_iterates : bool
        Keep every x_n (as value arrays); off by default to save memory.
    tol : float, optional
        Stop at the first n with ``||f - x_n|| <= tol * ||f||``.

    Returns
    -------
    KaczmarzTrace
        Residuals are recomputed from ``f - x_n`` at every step, not
        updated through the energy identity.
    """
    m = f.measure
    w, pts, fv = m.weights, m.points, f.values
    fnorm = norm(f)
    x = np.zeros_like(fv)
    res, coef, its = [], [], [] if store_iterates else None
    converged = None
    target = None if tol is None else tol * fnorm
    for n in range(N + 1):
        e = np.exp(1j * TWO_PI * n * pts)
        c = np.sum(w * (fv - x) * np.conj(e))
        x = x + c * e
        r = math.sqrt(float(np.sum(w * np.abs(fv - x) ** 2)))
        res.append(r)
        coef.append(c)
        if store_iterates:
            its.append(x)
        if target is not None and r <= target:
            converged = n
            break
    return KaczmarzTrace(np.array(res), np.array(coef, dtype=complex), fnorm, its, converged)


def partial_sums(f, coefficients):
    """Pointwise ``sum_{i<=n} c_i e_i`` on the atoms for every n."""
    E = exp_matrix(f.measure, len(coefficients) - 1)
    return np.cumsum(np.asarray(coefficients)[:, None] * E, axis=0)


def partial_sum_identity_check(f, N):
    """Max pointwise gap between Kaczmarz iterates and ``sum_{i<=n} <f, g_i> e_i``.

    The right side uses g_i evaluated from the alpha closed form; the left
    side is the iteration itself.
    """
    trace = kaczmarz_iterate(f, N, store_iterates=True)
    G = g_triangle(alpha_recursive(f.measure, N)).evaluate(f.measure)
    c = G.conj() @ (f.measure.weights * f.values)
    S = partial_sums(f, c)
    return float(np.max(np.abs(np.array(trace.iterates) - S)))


def frame_energy(f, N):
    """Cumulative ``sum_{n<=N} |<f, g_n>|^2`` for n = 0..N."""
    G = g_triangle(alpha_recursive(f.measure, N)).evaluate(f.measure)
    c = G.conj() @ (f.measure.weights * f.values)
    return np.cumsum(np.abs(c) ** 2)


def pseudo_dual_sum(f, h, N):
    """``sum_{n<=N} <f, g_n> <e_n, h>``, which tends to ``<f, h>``."""
    m = f.measure
    f._check(h)
    G = g_triangle(alpha_recursive(m, N)).evaluate(m)
    c = G.conj() @ (m.weights * f.values)
    E = exp_matrix(m, N)
    eh = E @ (m.weights * np.conj(h.values))
    return complex(np.sum(c * eh))


def bessel_ratio(f, N):
    """Diagnostic ``sum_{n<=N} |<f, e_n>|^2 / ||f||^2`` for n = 0..N.

    For a singular measure the exponentials are not a Bessel sequence, so
    this ratio has no uniform bound; it is reported, never asserted.
    """
    m = f.measure
    E = exp_matrix(m, N)
    fh = E.conj() @ (m.weights * f.values)
    return np.cumsum(np.abs(fh) ** 2) / norm(f) ** 2
