"""
Closed forms for slotted and non-slotted Aloha
==============================================

Run with ``python3 demos/01_closed_forms.py``.
"""
import numpy as np

from nsaloha import NetworkParams, NonSlottedRenewal, PoissonRain, PowerLaw, Slotted
from nsaloha.analytic import (k_beta, k_prime_beta, optimal_p, optimal_tau,
                              optimized_goodput_ratio, p_rain_mean, p_renewal_mean, p_slot)

# the two path-loss constants and their ratio
print("beta      K       K'    K/K'")
for beta in (2.5, 3.0, 4.0, 5.0, 6.0):
    k, kp = k_beta(beta), k_prime_beta(beta)
    print(f"{beta:4.1f} {k:8.4f} {kp:8.4f}  {k / kp:.4f}")

# K/K' equals (beta + 2) / (2 beta), so the optimum ratio is 3/4 at beta = 4
print("optimized good-put ratio at beta 4:", optimized_goodput_ratio(4.0))

# success probability of the three models at equal channel occupation
net = NetworkParams()
print("\n tau    slotted   rain      renewal")
for tau in (0.01, 0.05, 0.1, 0.2):
    s = p_slot(net, Slotted(tau)).probability
    rain = p_rain_mean(net, PoissonRain.matching(net.lam, tau)).probability
    ren = p_renewal_mean(net, NonSlottedRenewal.from_tau(tau)).probability
    print(f"{tau:5.2f}  {s:.5f}  {rain:.5f}  {ren:.5f}")

# optimal tuning of each scheme
best_p, best_tau = optimal_p(net), optimal_tau(net)
print(f"\nslotted optimum p = {best_p.control:.4f}, d_suc = {best_p.objective_value:.4e}")
print(f"non-slotted optimum tau = {best_tau.control:.4f}, d_suc = {best_tau.objective_value:.4e}")

# the slotted advantage shrinks as beta grows
betas = np.linspace(2.2, 6.0, 5)
ratios = [optimized_goodput_ratio(b) for b in betas]
print("\nbeta:", np.round(betas, 2))
print("ratio:", np.round(ratios, 4))

# a steeper attenuation with the same network
print("p_slot at beta 3:", p_slot(NetworkParams(path_loss=PowerLaw(1.0, 3.0)), Slotted(0.05)).probability)
