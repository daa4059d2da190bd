import numpy as np
import pytest

from kaczfourier import (AtomicMeasure, FunctionOnSupport, SelfSimilarMeasure, exp_vector,
                         flatten_ifs, inner_product, mix, norm)
from kaczfourier.exceptions import DomainError, SingularityError, ValidationError
from kaczfourier.kaczmarz import alpha_recursive, g_triangle, kaczmarz_iterate
from kaczfourier.series import (coefficients_via_alpha, coefficients_via_g, convex_combination,
                                expand_to_tolerance, fhat, lift_to_mixture, mixture_distinctness,
                                mixture_h_expansion, quaternary_spectrum, spectral_expansion_mu4,
                                spectral_h_rows, steps_to_tolerance, synthesize, synthesize_values)

from conftest import random_atomic, random_function


def test_fhat_constant(rng):
    m = random_atomic(rng, 5)
    assert abs(fhat(exp_vector(m, 0), 0.0) - 1.0) < 1e-15


def test_fhat_two_atom(two_atom):
    f = FunctionOnSupport(two_atom, [1, -1])
    assert np.allclose(fhat(f, np.arange(3.0)), [0, 1, 0], atol=1e-15)


def test_fhat_norm_bound(random_measures, rng):
    y = np.linspace(-40, 40, 161)
    for m in random_measures:
        f = random_function(rng, m)
        assert np.all(np.abs(fhat(f, y)) <= norm(f) + 1e-12)


def test_coefficients_of_constant(random_measures):
    for m in random_measures:
        c = coefficients_via_g(exp_vector(m, 0), 20).coefficients
        assert abs(c[0] - 1) < 1e-10
        assert np.max(np.abs(c[1:])) < 1e-10


def test_coefficients_two_atom(two_atom):
    f = FunctionOnSupport(two_atom, [1, -1])
    for path in (coefficients_via_g, coefficients_via_alpha):
        e = path(f, 6)
        assert np.allclose(e.coefficients, [0, 1, 0, 0, 0, 0, 0], atol=1e-15)
        assert e.residual < 1e-15
        assert abs(e.parseval_partial - 1.0) < 1e-15


def test_first_coefficient_is_mean(rng):
    m = random_atomic(rng, 4)
    f = random_function(rng, m)
    assert abs(coefficients_via_alpha(f, 3).coefficients[0] - fhat(f, 0.0)) < 1e-15


def test_dual_paths_agree(random_measures, rng):
    for m in random_measures:
        f = random_function(rng, m)
        a = coefficients_via_g(f, 200).coefficients
        b = coefficients_via_alpha(f, 200).coefficients
        assert np.max(np.abs(a - b)) < 1e-10


def test_dual_paths_agree_on_flattened_cantor(rng):
    for ifs in (SelfSimilarMeasure.cantor3(), SelfSimilarMeasure.cantor4()):
        m = flatten_ifs(ifs, 4)
        f = random_function(rng, m)
        a = coefficients_via_g(f, 300).coefficients
        b = coefficients_via_alpha(f, 300).coefficients
        assert np.max(np.abs(a - b)) < 1e-10


def test_linearity(rng):
    m = random_atomic(rng, 5)
    f, h = random_function(rng, m), random_function(rng, m)
    a, b = 0.7 - 1.2j, -2.0 + 0.5j
    lhs = coefficients_via_alpha(a * f + b * h, 64).coefficients
    rhs = a * coefficients_via_alpha(f, 64).coefficients + b * coefficients_via_alpha(h, 64).coefficients
    assert np.max(np.abs(lhs - rhs)) < 1e-12


def test_expansion_invariants_and_parseval(random_measures, rng):
    for m in random_measures:
        f = random_function(rng, m)
        e = expand_to_tolerance(f, tol=1e-6)
        fn = norm(f)
        eps = e.residual
        assert 0 <= eps <= 1e-6 * fn * (1 + 1e-9)
        assert e.parseval_partial <= fn ** 2 + 1e-9
        assert abs(e.parseval_partial - fn ** 2) <= 2 * eps * fn + eps ** 2 + 1e-12


def test_residual_matches_kaczmarz(rng):
    m = random_atomic(rng, 6)
    f = random_function(rng, m)
    tr = kaczmarz_iterate(f, 60)
    for N in (0, 1, 5, 20, 60):
        assert abs(coefficients_via_g(f, N).residual - tr.residuals[N]) < 1e-9


def test_steps_to_tolerance_is_minimal(rng):
    m = random_atomic(rng, 4)
    f = random_function(rng, m)
    N = steps_to_tolerance(f, 1e-3)
    assert coefficients_via_alpha(f, N).residual <= 1e-3 * norm(f)
    assert coefficients_via_alpha(f, N - 1).residual > 1e-3 * norm(f)


def test_expand_to_tolerance_failure():
    m = flatten_ifs(SelfSimilarMeasure.cantor4(), 6)
    f = FunctionOnSupport(m, np.where(m.points < 0.5, 1.0, 0.0))
    with pytest.raises(RuntimeError):
        expand_to_tolerance(f, tol=1e-3, N_max=50)


# --- synthesis ---------------------------------------------------------------

def test_synthesize_constant(rng):
    m = random_atomic(rng, 3)
    assert np.allclose(synthesize_values([1, 0, 0, 0], m), 1.0)


def test_synthesize_two_atom(two_atom):
    f = FunctionOnSupport(two_atom, [1, -1])
    e = coefficients_via_g(f, 1)
    assert np.allclose(synthesize(e, two_atom).values, [1, -1], atol=1e-15)


def test_synthesis_converges(rng):
    m = random_atomic(rng, 5)
    f = random_function(rng, m)
    r = [norm(f - synthesize(coefficients_via_g(f, N), m)) for N in (10, 100, 1000)]
    assert r[0] >= r[1] >= r[2]
    assert r[2] < 1e-3 * norm(f)


def test_convex_combination_reproduces(rng):
    mu = AtomicMeasure([0.1, 0.45, 0.8], [1 / 3, 1 / 3, 1 / 3])
    f = random_function(rng, mu)
    N = 400
    c = coefficients_via_alpha(f, N).coefficients
    d = mixture_h_expansion(mu, AtomicMeasure.dirac(0.3), 0.5, f, N).coefficients
    avg = convex_combination([c, d], [0.25, 0.75])
    err = norm(f - FunctionOnSupport(mu, synthesize_values(avg, mu)))
    bound = 0.25 * norm(f - FunctionOnSupport(mu, synthesize_values(c, mu))) \
        + 0.75 * norm(f - FunctionOnSupport(mu, synthesize_values(d, mu)))
    assert err <= bound + 1e-12
    assert err < 1e-3 * norm(f)


def test_convex_combination_rejects_bad_weights():
    with pytest.raises(DomainError):
        convex_combination([[1], [2]], [0.5, 0.6])
    with pytest.raises(DomainError):
        convex_combination([[1], [2]], [1.5, -0.5])


# --- mixtures ----------------------------------------------------------------

def test_mixture_eta_one_is_plain_expansion(rng):
    mu = random_atomic(rng, 3)
    f = random_function(rng, mu)
    d = mixture_h_expansion(mu, AtomicMeasure.dirac(0.999), 1.0, f, 30).coefficients
    assert np.max(np.abs(d - coefficients_via_g(f, 30).coefficients)) < 1e-12


def test_mixture_point_masses():
    mu = AtomicMeasure.dirac(0.0)
    f = FunctionOnSupport(mu, [1.0])
    e = mixture_h_expansion(mu, AtomicMeasure.dirac(0.5), 0.5, f, 5)
    assert np.allclose(e.coefficients, [0.5, 0.5, 0, 0, 0, 0], atol=1e-15)
    assert abs(synthesize_values(e.coefficients, mu)[0] - 1.0) < 1e-15


def test_mixture_error_bound(rng):
    mu = random_atomic(rng, 3)
    nu = AtomicMeasure([0.93, 0.97], [0.4, 0.6])
    f = random_function(rng, mu)
    for eta in (0.3, 0.6, 0.9):
        lam = mix(mu, nu, eta)
        ft = lift_to_mixture(f, lam)
        for N in (5, 40, 200):
            d = mixture_h_expansion(mu, nu, eta, f, N).coefficients
            on_mu = norm(f - FunctionOnSupport(mu, synthesize_values(d, mu)))
            on_lam = norm(ft - FunctionOnSupport(lam, synthesize_values(d, lam)))
            assert on_mu <= on_lam / np.sqrt(eta) + 1e-12


def test_mixture_requires_singularity(two_atom, rng):
    f = random_function(rng, two_atom)
    with pytest.raises(SingularityError):
        mixture_h_expansion(two_atom, AtomicMeasure.dirac(0.5), 0.5, f, 4)


def test_mixture_requires_f_on_mu(two_atom, rng):
    other = random_atomic(rng, 2)
    with pytest.raises(ValidationError):
        mixture_h_expansion(two_atom, AtomicMeasure.dirac(0.3), 0.5, random_function(rng, other), 4)


def test_lift_to_mixture(two_atom):
    lam = mix(two_atom, AtomicMeasure.dirac(0.25), 0.5)
    ft = lift_to_mixture(FunctionOnSupport(two_atom, [2, 3]), lam)
    assert np.array_equal(ft.values, [2, 0, 3])


def test_distinctness_examples():
    mu = AtomicMeasure.dirac(0.0)
    nu = AtomicMeasure.dirac(0.5)
    assert mixture_distinctness(mu, nu, 0.5, nu, 1 / 3) == 0
    assert mixture_distinctness(mu, nu, 0.5, nu, 0.5) is None
    assert mixture_distinctness(mu, AtomicMeasure.dirac(1 / 3), 0.5, nu, 0.5) == 1


def test_distinctness_is_first_alpha_difference(rng):
    mu = random_atomic(rng, 3)
    nu1, nu2 = AtomicMeasure.dirac(0.99), AtomicMeasure([0.97, 0.99], [0.5, 0.5])
    if np.intersect1d(mu.points, [0.97, 0.99]).size:
        pytest.skip("atom collision")
    idx = mixture_distinctness(mu, nu1, 0.4, nu2, 0.4)
    a1 = alpha_recursive(mix(mu, nu1, 0.4), 32).values
    a2 = alpha_recursive(mix(mu, nu2, 0.4), 32).values
    assert idx == int(np.flatnonzero(np.abs(a1 - a2) > 1e-9)[0])


def test_distinct_mixtures_reproduce_same_f(rng):
    mu = AtomicMeasure([0.1, 0.45, 0.8], [1 / 3, 1 / 3, 1 / 3])
    f = random_function(rng, mu)
    N = 3000
    d1 = mixture_h_expansion(mu, AtomicMeasure.dirac(0.3), 0.5, f, N)
    d2 = mixture_h_expansion(mu, AtomicMeasure([0.6, 0.95], [0.5, 0.5]), 0.7, f, N)
    s1 = synthesize_values(d1.coefficients, mu)
    s2 = synthesize_values(d2.coefficients, mu)
    assert np.max(np.abs(d1.coefficients - d2.coefficients)) > 1e-3
    assert norm(FunctionOnSupport(mu, s1 - s2)) <= d1.residual + d2.residual + 1e-6


# --- quaternary spectrum -----------------------------------------------------

def test_spectrum_prefix():
    assert quaternary_spectrum(22) == [0, 1, 4, 5, 16, 17, 20, 21]
    assert quaternary_spectrum(1) == [0]


def test_spectral_rows_match_g_for_first_two():
    m = flatten_ifs(SelfSimilarMeasure.cantor4(), 8)
    H = spectral_h_rows(5)
    G = g_triangle(alpha_recursive(m, 5)).matrix
    assert np.allclose(H[0], G[0], atol=1e-12)
    assert np.allclose(H[1], G[1], atol=1e-12)
    assert np.all(H[2] == 0)
    assert np.max(np.abs(G[2])) > 0.1


def test_spectrum_near_orthonormal():
    m = flatten_ifs(SelfSimilarMeasure.cantor4(), 12)
    lam = quaternary_spectrum(22)
    for a in lam:
        for b in lam:
            ip = inner_product(exp_vector(m, a), exp_vector(m, b))
            assert abs(ip - (1.0 if a == b else 0.0)) < 1e-6


def test_spectral_expansion_converges(rng):
    m = flatten_ifs(SelfSimilarMeasure.cantor4(), 4)
    f = random_function(rng, m)
    # the first 16 spectrum points (< 256) are an orthonormal basis of the 16 atoms
    e = spectral_expansion_mu4(f, 255)
    assert e.residual < 1e-10
    assert abs(e.parseval_partial - norm(f) ** 2) < 1e-10


def test_spectral_expansion_wrong_family(rng):
    m = flatten_ifs(SelfSimilarMeasure.cantor3(), 4)
    with pytest.raises(ValidationError):
        spectral_expansion_mu4(random_function(rng, m), 10)
    hand = AtomicMeasure(flatten_ifs(SelfSimilarMeasure.cantor4(), 2).points, [0.25] * 4)
    with pytest.raises(ValidationError):
        spectral_expansion_mu4(random_function(rng, hand), 10)
