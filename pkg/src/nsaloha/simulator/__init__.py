"""Monte Carlo simulation of slotted and non-slotted Aloha."""
from .engine import (Boundary, Constraint, InterferenceSample, SimConfig, SweepPoint, SweepResult,
                     estimate_density_of_success, mac_for_tau, model_name, sample_interference,
                     simulate, simulate_outcomes, simulate_rain, simulate_renewal,
                     simulate_slotted)
from .estimate import Estimate, bernoulli_estimate, wilson_interval
from .sampling import (renewal_overlap_probability, sample_overlapping_renewal_epochs, sample_ppp,
                       sample_ppp_batch, sample_renewal_interferer_epochs, stream,
                       weight_h)
from .timeline import InterferenceTimeline, batch_max_level

__all__ = [
    "Boundary", "Constraint", "InterferenceSample", "SimConfig", "SweepPoint", "SweepResult",
    "estimate_density_of_success", "mac_for_tau", "model_name", "sample_interference",
    "simulate", "simulate_outcomes", "simulate_rain", "simulate_renewal", "simulate_slotted",
    "Estimate", "bernoulli_estimate", "wilson_interval", "sample_ppp", "sample_ppp_batch",
    "sample_renewal_interferer_epochs", "sample_overlapping_renewal_epochs",
    "renewal_overlap_probability", "stream", "weight_h", "InterferenceTimeline",
    "batch_max_level",
]
