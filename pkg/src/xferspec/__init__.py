"""Spectral radii, bounds and eigenfunctions of weighted transfer operators on the circle."""

from .weights import (
    PeriodicWeight,
    TrigPolynomial,
    classify_weight,
    cos_power,
    eval_weight,
    fourier_coefficients,
    parse_weight,
    sin_power,
    sine_envelopes,
    step_weight,
    trig_weight,
)
from .transfer import (
    GridSample,
    ResourceGuardError,
    SpectralInterval,
    collatz_wielandt_interval,
    eigen_residual,
    h1_profile,
    integral_In,
    iterate_extrema,
    quotient_interval,
    submultiplicative_interval,
    transfer_value_hn,
    weight_product_fn,
)
from .fourier_matrix import (
    c_even_exact,
    composition_matrix_T,
    dominant_eigenvalue,
    In_coefficient_recursion,
    sine_upper_bound,
    symmetric_matrix_C,
    transfer_matrix_L,
)
from .special import cot_poly, hurwitz_zeta, riemann_zeta
from .cosine_expansion import exact_bounds_d3
from .lp import lp_operator_norm, lp_spectral_radius
from .multiplier import delta_threshold

__version__ = "0.1.0"
