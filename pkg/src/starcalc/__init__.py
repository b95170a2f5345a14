"""Symbolic-numeric calculus for the deformed product on entire functions."""

from .errors import (
    BranchSingularity,
    ClassViolation,
    DegreeOverflow,
    DivergentProduct,
    DomainViolation,
    GrowthViolation,
    NonUnit,
    ParseError,
    PathInadmissible,
    QuadratureNonConvergence,
    ResultantZero,
    RootFindingFailure,
    StarCalcError,
    TruncationNotConverged,
    UndefinedProduct,
)
from .core import (
    BranchSheet,
    GEPElement,
    StarFactorization,
    StarPolynomial,
    TauPoint,
    as_tau,
    continued_sqrt,
    evaluate_terms,
    heat_flow,
    infinitesimal_intertwiner,
    intertwine,
    max_degree,
    radius_probe,
    star_factorize,
    star_power,
    star_power_exact,
    star_product_exact,
    star_product_gep,
    star_product_poly,
    window_grid,
)
from .exponentials import (
    StarElement,
    branch_loop_path,
    gaussian_inversion,
    linear_star_exponential,
    naive_sheet_values,
    quad_exponential_law_check,
    quadratic_star_element,
    quadratic_star_exponential,
    sinh_cosh_quadratic,
    star_cos,
    star_sin,
)
from .families import (
    HalfSeries,
    PolynomialFamily,
    bernoulli_identity_check,
    bessel,
    bessel_addition_residual,
    bessel_sum_residual,
    euler_identity_check,
    half_series_inverse,
    half_series_mul,
    hermite,
    hermite_binomial_convolution,
    hermite_normalized_exact,
    hermite_orthogonality,
    laguerre,
    laguerre_exact,
    laguerre_gen_orthogonality,
    laguerre_orthogonality,
    laguerre_rodrigues,
    legendre,
    legendre_moment,
    legendre_orthogonality,
    star_product_terms,
)
from .ratpoly import RatPoly2, RatSeries, bernoulli_numbers, euler_numbers
from .resolvent import (
    AssociativityGuard,
    DiscreteInverse,
    InverseElement,
    OddExponentialSeries,
    ResolventExpression,
    bezout_vanishing,
    cauchy_contour_residual,
    constant_variation_gap,
    constant_variation_inverse,
    cos_star_inverse,
    delta_associativity_guard,
    delta_pair_pointwise_norm,
    delta_product_rules,
    discrete_base_residual,
    eigenvalue_rule_residual,
    heaviside_lift,
    imaginary_axis_inverse,
    integral_inverse_sin,
    inverse_decay_profile,
    inverse_discrete,
    inverse_linear,
    pf_lift,
    poly_star_inverse,
    quadratic_difference_fit,
    quadratic_sum_inverse,
    resolvent_product,
    sgn_lift,
    sign_difference_delta,
    sin_integral_pair_sum_residual,
    sin_integral_reflection_residual,
    sin_integral_shift_residual,
    sin_residual_check,
    sin_star_inverse,
    star_apply,
    symbol_lift_product,
    theta3_split_residual,
    theta_derivative_vanishing,
    trig_inverse_base_residual,
    trig_inverse_theta_residual,
    vanishing_check,
    vp_lift,
)
from .theta import (
    DeltaElement,
    ThetaSeries,
    alpha_determination,
    annihilator_solution,
    comb_terms,
    delta_monodromy,
    delta_quadrature,
    delta_scaling_residual,
    delta_total_mass,
    jacobi_imaginary,
    periodic_lift,
    periodization_check,
    sawtooth_fourier_coefficient,
    sawtooth_square_fourier_coefficient,
    star_delta,
    theta,
    theta_tilde,
    translation_kernel,
)

__version__ = "0.1.0"
