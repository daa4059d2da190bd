"""
Brute-force reference computations.

Every function here reaches its answer by a route unrelated to the fast
paths in :mod:`kaczfourier.kaczmarz` and :mod:`kaczfourier.series`, and is
used only to cross-check them.  Nothing here is meant to be fast.
"""

import math
from functools import lru_cache

import numpy as np
import scipy.linalg

from .exceptions import ResourceError
from .kaczmarz import AlphaSequence
from .measures import FunctionOnSupport, exp_matrix, integer_transform, measure_id

MAX_COMPOSITION_N = 20
MAX_COMPOSITION_ALPHA_N = 18
MAX_GRAM_N = 512


@lru_cache(maxsize=None)
def _compositions(n):
    if n == 0:
        return ((),)
    return tuple((first,) + rest
                 for first in range(1, n + 1)
                 for rest in _compositions(n - first))


def compositions(n):
    """All compositions of ``n`` (ordered tuples of positive integers), lexicographic.

    >>> compositions(3)
    [(1, 1, 1), (1, 2), (2, 1), (3,)]
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > MAX_COMPOSITION_N:
        raise ResourceError(f"{2 ** (n - 1)} compositions of {n}; cap is n <= {MAX_COMPOSITION_N}")
    return list(_compositions(n))


def alpha_by_compositions(m, N):
    """alpha_n as a signed sum over compositions of n of products of moments."""
    if N > MAX_COMPOSITION_ALPHA_N:
        raise ResourceError(f"N={N} exceeds the composition cap {MAX_COMPOSITION_ALPHA_N}")
    mh = list(integer_transform(m, max(N, 0)))
    out = [1.0 + 0.0j]
    for n in range(1, N + 1):
        total = 0.0j
        for p in compositions(n):
            term = math.prod(mh[k] for k in p)
            total += -term if len(p) % 2 else term
        out.append(total)
    return AlphaSequence(measure_id(m), np.array(out, dtype=complex))


def gram_matrix(m, N):
    """Lower-triangular Gram matrix ``G[i, j] = <e_i, e_j> = mu_hat(j - i)`` for i >= j."""
    mh = integer_transform(m, N)
    i = np.arange(N + 1)
    diff = i[:, None] - i[None, :]
    return np.where(diff >= 0, np.conj(mh[np.clip(diff, 0, None)]), 0.0)


def alpha_by_gram_inversion(m, N):
    """alpha from the first column of the inverse lower-triangular Gram matrix.

    ``alpha_n = conj((G^-1)[n, 0])``.  G has unit diagonal, so the
    forward substitution never breaks down.
    """
    if N > MAX_GRAM_N:
        raise ResourceError(f"N={N} exceeds the Gram cap {MAX_GRAM_N}")
    G = gram_matrix(m, N)
    rhs = np.zeros(N + 1, dtype=complex)
    rhs[0] = 1.0
    col = scipy.linalg.solve_triangular(G, rhs, lower=True, unit_diagonal=True)
    return AlphaSequence(measure_id(m), np.conj(col))


def projection_oracle(f, N):
    """Orthogonal projection of f onto span(e_0..e_N) by dense least squares.

    Works in the weighted coordinates ``sqrt(w) * values`` so the Euclidean
    norm is the L^2(mu) norm.  Rank-deficient spans (aliased exponentials)
    get the minimum-norm solution, which still yields the projection.
    """
    m = f.measure
    s = np.sqrt(m.weights)
    A = (exp_matrix(m, N) * s).T
    b = s * f.values
    coef, *_ = np.linalg.lstsq(A, b, rcond=None)
    return FunctionOnSupport(m, (A @ coef) / s)
