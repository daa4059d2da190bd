"""
Singular probability measures on [0, 1) and the Hilbert space L^2(mu).

Two families are supported:

* ``AtomicMeasure``      -- finitely many point masses.
* ``SelfSimilarMeasure`` -- Cantor-type measures generated by the maps
  ``x -> (x + d) / R`` with probabilities ``p_d``.

Functions in L^2(mu) are only represented on atomic measures (a
self-similar measure is first discretized with :func:`flatten_ifs`),
which keeps every inner product an exact finite sum.
"""

import hashlib
import json
import math

import numpy as np

from .exceptions import DomainError, ResourceError, SingularityError, ValidationError

MASS_TOL = 1e-12
# IFS product truncation: K = max(ceil(log_R(max(|y|, 1) / EPS0)), K_MIN)
EPS0 = 1e-14
K_MIN = 20
MAX_ATOMS = 1 << 22
# y-chunk so that an outer product stays below ~4M entries
_CHUNK_ENTRIES = 1 << 22

TWO_PI = 2.0 * math.pi


def _readonly(a):
    a.setflags(write=False)
    return a


class AtomicMeasure:
    """A finite sum of point masses on [0, 1).

    Atoms are stored in ascending order of position; values of any
    :class:`FunctionOnSupport` follow the same order.

    Parameters
    ----------
    points : array_like of float
        Atom positions, distinct, in [0, 1).
    weights : array_like of float
        Strictly positive masses summing to 1 within ``MASS_TOL``.
    origin : tuple, optional
        ``(SelfSimilarMeasure, depth)`` when produced by :func:`flatten_ifs`.
    """

    __slots__ = ("points", "weights", "origin")

    def __init__(self, points, weights, origin=None):
        x = np.asarray(points, dtype=float).ravel()
        w = np.asarray(weights, dtype=float).ravel()
        if x.size == 0:
            raise ValidationError("an atomic measure needs at least one atom", field="atoms")
        if x.shape != w.shape:
            raise ValidationError(
                f"{x.size} positions but {w.size} weights", field="atoms")
        if not np.all(np.isfinite(x)) or np.any(x < 0.0) or np.any(x >= 1.0):
            bad = int(np.flatnonzero(~((x >= 0.0) & (x < 1.0)))[0])
            raise ValidationError(
                f"atom position {x[bad]!r} outside [0, 1)", field=f"atoms[{bad}].x")
        if not np.all(np.isfinite(w)) or np.any(w <= 0.0):
            bad = int(np.flatnonzero(~(w > 0.0))[0])
            raise ValidationError(
                f"atom weight {w[bad]!r} is not strictly positive", field=f"atoms[{bad}].w")
        total = math.fsum(w)
        if abs(total - 1.0) > MASS_TOL:
            raise ValidationError(
                f"weights sum to {total!r}, not 1", field="atoms[].w")
        order = np.argsort(x, kind="stable")
        x, w = x[order], w[order]
        dup = np.flatnonzero(np.diff(x) == 0.0)
        if dup.size:
            raise ValidationError(
                f"duplicate atom position {x[dup[0]]!r}", field="atoms[].x")
        object.__setattr__(self, "points", _readonly(x))
        object.__setattr__(self, "weights", _readonly(w))
        object.__setattr__(self, "origin", origin)

    def __setattr__(self, name, value):
        raise AttributeError("AtomicMeasure is immutable")

    @classmethod
    def from_atoms(cls, atoms):
        """Build from an iterable of ``(position, weight)`` pairs."""
        atoms = list(atoms)
        return cls([a[0] for a in atoms], [a[1] for a in atoms])

    @classmethod
    def dirac(cls, x0=0.0):
        return cls([x0], [1.0])

    @property
    def size(self):
        return self.points.size

    @property
    def mass(self):
        return math.fsum(self.weights)

    def transform(self, y):
        """Fourier-Stieltjes transform, vectorized over ``y``."""
        y = np.asarray(y, dtype=float)
        flat = y.ravel()
        out = np.empty(flat.shape, dtype=complex)
        step = max(1, _CHUNK_ENTRIES // self.size)
        for s in range(0, flat.size, step):
            yy = flat[s:s + step]
            out[s:s + step] = np.exp(-1j * TWO_PI * np.outer(yy, self.points)) @ self.weights
        return out.reshape(y.shape) if y.ndim else complex(out[0])

    def __eq__(self, other):
        if not isinstance(other, AtomicMeasure):
            return NotImplemented
        return (np.array_equal(self.points, other.points)
                and np.array_equal(self.weights, other.weights))

    def __hash__(self):
        return hash((self.points.tobytes(), self.weights.tobytes()))

    def __repr__(self):
        return f"AtomicMeasure(n_atoms={self.size})"


class SelfSimilarMeasure:
    """Cantor-type measure with scale ``R``, digit set and probabilities.

    The measure is the invariant measure of ``x -> (x + d) / R``; with
    ``2 <= len(digits) < R`` the support has Lebesgue measure zero.

    >>> mu4 = SelfSimilarMeasure(4, [0, 2])
    >>> abs(mu4.transform(3.0)) < 1e-8
    True
    """

    __slots__ = ("R", "digits", "probs")

    def __init__(self, R, digits, probs=None):
        if isinstance(R, bool) or not isinstance(R, (int, np.integer)) or R < 2:
            raise ValidationError(f"scale must be an integer >= 2, got {R!r}", field="R")
        digits = list(digits)
        if any(isinstance(d, bool) or not isinstance(d, (int, np.integer)) for d in digits):
            raise ValidationError("digits must be integers", field="digits")
        if len(digits) < 2 or len(digits) >= R:
            raise ValidationError(
                f"need 2 <= len(digits) < R, got {len(digits)} digits for R={R}",
                field="digits")
        if any(b <= a for a, b in zip(digits, digits[1:])):
            raise ValidationError("digits must be strictly increasing", field="digits")
        if digits[0] < 0 or digits[-1] >= R:
            raise ValidationError(f"digits must lie in [0, {R})", field="digits")
        if probs is None:
            probs = [1.0 / len(digits)] * len(digits)
        probs = [float(p) for p in probs]
        if len(probs) != len(digits):
            raise ValidationError(
                f"{len(probs)} probabilities for {len(digits)} digits", field="probs")
        if any(not (p > 0.0) or not math.isfinite(p) for p in probs):
            raise ValidationError("probabilities must be strictly positive", field="probs")
        total = math.fsum(probs)
        if abs(total - 1.0) > MASS_TOL:
            raise ValidationError(f"probabilities sum to {total!r}, not 1", field="probs")
        object.__setattr__(self, "R", int(R))
        object.__setattr__(self, "digits", tuple(int(d) for d in digits))
        object.__setattr__(self, "probs", tuple(probs))

    def __setattr__(self, name, value):
        raise AttributeError("SelfSimilarMeasure is immutable")

    @classmethod
    def cantor3(cls):
        return cls(3, [0, 2])

    @classmethod
    def cantor4(cls):
        return cls(4, [0, 2])

    def truncation_depth(self, y):
        """Number of product factors used for ``|y|`` (scalar or array max)."""
        ymax = float(np.max(np.abs(y))) if np.size(y) else 0.0
        k = math.ceil(math.log(max(ymax, 1.0) / EPS0, self.R))
        return max(k, K_MIN)

    def tail_bound(self, y, K):
        """Certified bound on ``|mu_hat(y) - prod_{k<=K} factor_k(y)|``.

        Each discarded factor satisfies ``|1 - factor_k| <= 2 pi |y| max(d) R^-k``;
        summing the geometric tail gives the bound.
        """
        return TWO_PI * np.abs(y) * max(self.digits) / (self.R ** K * (self.R - 1))

    def factor(self, y, k):
        d = np.asarray(self.digits, dtype=float)
        p = np.asarray(self.probs)
        y = np.asarray(y, dtype=float)
        return np.exp(-1j * TWO_PI * np.multiply.outer(y, d) / self.R ** k) @ p

    def transform(self, y, K=None):
        y = np.asarray(y, dtype=float)
        if K is None:
            K = self.truncation_depth(y)
        out = np.ones(y.shape, dtype=complex)
        for k in range(1, K + 1):
            out = out * self.factor(y, k)
        return out if y.ndim else complex(out)

    def __eq__(self, other):
        if not isinstance(other, SelfSimilarMeasure):
            return NotImplemented
        return (self.R, self.digits, self.probs) == (other.R, other.digits, other.probs)

    def __hash__(self):
        return hash((self.R, self.digits, self.probs))

    def __repr__(self):
        return f"SelfSimilarMeasure(R={self.R}, digits={list(self.digits)}, probs={list(self.probs)})"


class FunctionOnSupport:
    """An element of L^2(mu) given by its values on the atoms of ``measure``."""

    __slots__ = ("measure", "values")

    def __init__(self, measure, values):
        if not isinstance(measure, AtomicMeasure):
            raise ValidationError("functions live on atomic measures; flatten first",
                                  field="measure")
        v = np.array(values, dtype=complex).ravel()
        if v.size != measure.size:
            raise ValidationError(
                f"{v.size} values for a measure with {measure.size} atoms", field="values")
        self.measure = measure
        self.values = _readonly(v)

    def _check(self, other):
        if not isinstance(other, FunctionOnSupport):
            return NotImplemented
        if other.measure is not self.measure and other.measure != self.measure:
            raise ValidationError("functions are defined on different measures", field="measure")
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return FunctionOnSupport(self.measure, self.values + other.values)

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return FunctionOnSupport(self.measure, self.values - other.values)

    def __mul__(self, scalar):
        if not np.isscalar(scalar):
            return NotImplemented
        return FunctionOnSupport(self.measure, scalar * self.values)

    __rmul__ = __mul__

    def __neg__(self):
        return FunctionOnSupport(self.measure, -self.values)

    def __len__(self):
        return self.values.size

    def __repr__(self):
        return f"FunctionOnSupport(n_atoms={self.values.size})"


def _validated(m):
    if not isinstance(m, (AtomicMeasure, SelfSimilarMeasure)):
        raise ValidationError(f"not a measure: {type(m).__name__}", field="measure")
    return m


def fourier_stieltjes(m, y):
    """Fourier-Stieltjes transform ``mu_hat(y) = int exp(-2 pi i x y) dmu(x)``.

    Exact for atomic measures; for self-similar measures the infinite
    product is truncated with a certified tail below ~1e-13.
    Vectorized over ``y``.
    """
    return _validated(m).transform(y)


def integer_transform(m, N, start=0):
    """``mu_hat(start), ..., mu_hat(N)`` as a complex array."""
    return np.atleast_1d(fourier_stieltjes(m, np.arange(start, N + 1, dtype=float)))


def inner_product(f, g):
    """``<f, g> = sum_j w_j f(x_j) conj(g(x_j))``."""
    f._check(g)
    return complex(np.sum(f.measure.weights * f.values * np.conj(g.values)))


def norm(f):
    return math.sqrt(float(np.sum(f.measure.weights * np.abs(f.values) ** 2)))


def exp_vector(m, n):
    """The exponential ``e_n(x) = exp(2 pi i n x)`` restricted to the atoms."""
    return FunctionOnSupport(m, np.exp(1j * TWO_PI * n * m.points))


def exp_matrix(m, N):
    """Rows ``e_0..e_N`` evaluated on the atoms, shape ``(N + 1, n_atoms)``."""
    return np.exp(1j * TWO_PI * np.outer(np.arange(N + 1), m.points))


def flatten_ifs(m, depth, max_atoms=MAX_ATOMS):
    """Depth-``depth`` iterate of the IFS applied to a point mass at 0.

    Atoms sit at ``sum_k d_k R^-k`` over all digit strings with weight the
    product of the digit probabilities, so the transform of the result is
    exactly the product truncated after ``depth`` factors.
    """
    if not isinstance(m, SelfSimilarMeasure):
        raise ValidationError("flatten_ifs needs a self-similar measure", field="measure")
    if isinstance(depth, bool) or int(depth) != depth or depth < 1:
        raise DomainError(f"depth must be a positive integer, got {depth!r}")
    depth = int(depth)
    if m.R ** depth > 2 ** 52:
        raise DomainError(
            f"R^depth = {m.R}^{depth} exceeds double-precision position resolution")
    count = len(m.digits) ** depth
    if count > max_atoms:
        raise ResourceError(f"{count} atoms exceeds the cap of {max_atoms}")
    idx = np.zeros(1, dtype=np.int64)
    w = np.ones(1)
    d = np.asarray(m.digits, dtype=np.int64)
    p = np.asarray(m.probs)
    for _ in range(depth):
        idx = (idx[:, None] * m.R + d[None, :]).ravel()
        w = (w[:, None] * p[None, :]).ravel()
    # weights can drift ~1e-16 per level; renormalize only that rounding
    w = w / math.fsum(w)
    return AtomicMeasure(idx / float(m.R) ** depth, w, origin=(m, depth))


def mix(mu, nu, eta):
    """The convex combination ``eta * mu + (1 - eta) * nu`` of mutually singular atomic measures."""
    for name, m in (("mu", mu), ("nu", nu)):
        if not isinstance(m, AtomicMeasure):
            raise ValidationError(f"{name} must be atomic (flatten self-similar measures first)",
                                  field=name)
    eta = float(eta)
    if not (0.0 < eta <= 1.0):
        raise DomainError(f"eta must lie in (0, 1], got {eta!r}")
    common = np.intersect1d(mu.points, nu.points)
    if common.size:
        raise SingularityError(
            f"mu and nu share atom(s) at {common[:3].tolist()}; they are not mutually singular",
            field="nu")
    if eta == 1.0:
        return mu
    return AtomicMeasure(np.concatenate([mu.points, nu.points]),
                         np.concatenate([eta * mu.weights, (1.0 - eta) * nu.weights]))


def measure_to_dict(m):
    if isinstance(m, AtomicMeasure):
        return {"type": "atomic",
                "atoms": [{"x": float(x), "w": float(w)} for x, w in zip(m.points, m.weights)]}
    if isinstance(m, SelfSimilarMeasure):
        return {"type": "ifs", "R": m.R, "digits": list(m.digits), "probs": list(m.probs)}
    raise ValidationError(f"not a measure: {type(m).__name__}")


def measure_id(m):
    """Short content hash identifying a measure."""
    blob = json.dumps(measure_to_dict(m), sort_keys=True, separators=(",", ":"))
    return hashlib.sha1(blob.encode()).hexdigest()[:12]
