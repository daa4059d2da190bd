"""Fourier series, sampling and Cauchy transforms for singular measures on [0, 1)."""

from .exceptions import (ConditioningWarning, DomainError, ResourceError, SingularityError,
                         ValidationError)
from .measures import (AtomicMeasure, FunctionOnSupport, SelfSimilarMeasure, exp_vector,
                       flatten_ifs, fourier_stieltjes, inner_product, mix, norm)
from .kaczmarz import (AlphaSequence, GTriangle, KaczmarzTrace, alpha_recursive,
                       g_gram_schmidt, g_triangle, kaczmarz_iterate, partial_sum_identity_check)
from .series import (Expansion, coefficients_via_alpha, coefficients_via_g, fhat,
                     mixture_distinctness, mixture_h_expansion, spectral_expansion_mu4,
                     synthesize)
from .analytic import (cauchy_integral, normalized_cauchy_direct, normalized_cauchy_series,
                       reciprocal_series)
from .sampling import BandlimitedFunction, reconstruct, uniform_error_report

__version__ = "0.1.0"
