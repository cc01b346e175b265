"""Closed forms and quadrature for slotted and non-slotted Aloha."""
from .constants import k_beta, k_beta_quadrature, k_prime_beta, k_prime_integral
from .coverage import (CoverageResult, Method, coverage, laplace_I_mean_rain, laplace_I_slotted,
                       p_ns, p_rain_mean, p_renewal_mean, p_slot, renewal_pair_deficit)
from .fourier import coverage_general_fading
from .quadrature import QuadratureSettings
from .tuning import (OptimalTuning, density_of_successes, goodput_ratio, optimal_p, optimal_r,
                     optimal_tau, optimized_goodput_ratio, optimized_progress_ratio)

__all__ = [
    "k_beta", "k_beta_quadrature", "k_prime_beta", "k_prime_integral",
    "CoverageResult", "Method", "coverage", "laplace_I_mean_rain", "laplace_I_slotted",
    "p_ns", "p_rain_mean", "p_renewal_mean", "p_slot", "renewal_pair_deficit",
    "coverage_general_fading", "QuadratureSettings", "OptimalTuning", "density_of_successes",
    "goodput_ratio", "optimal_p", "optimal_r", "optimal_tau", "optimized_goodput_ratio",
    "optimized_progress_ratio",
]
