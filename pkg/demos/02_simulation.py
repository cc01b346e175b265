"""
Monte Carlo against the closed forms
====================================

Run with ``python3 demos/02_simulation.py``; takes about half a minute.
"""
from nsaloha import NetworkParams, NonSlottedRenewal, PoissonRain, PowerLaw, Slotted
from nsaloha.analytic import p_rain_mean, p_renewal_mean, p_slot
from nsaloha.simulator import Boundary, SimConfig, simulate

net = NetworkParams()
tau = 0.05
cases = [
    ("slotted", Slotted(tau), p_slot),
    ("rain", PoissonRain.matching(net.lam, tau), p_rain_mean),
    ("renewal", NonSlottedRenewal.from_tau(tau), p_renewal_mean),
]

# torus boundary: periodic copies plus the mean far field
for name, mac, exact in cases:
    est = simulate(SimConfig(net, mac, replications=20_000, rng_seed=1))
    print(f"{name:8s} simulated {est}  analytic {exact(net, mac).probability:.6f}")

# without boundary correction the far interferers are missing;
# the effect is visible at beta = 3 where the tail decays slowly
net3 = NetworkParams(path_loss=PowerLaw(1.0, 3.0))
print("\nbeta 3, slotted, analytic", round(p_slot(net3, Slotted(tau)).probability, 4))
for boundary in (Boundary.NONE, Boundary.TORUS):
    est = simulate(SimConfig(net3, Slotted(tau), boundary=boundary, replications=20_000,
                             rng_seed=1))
    print(f"  {boundary.value:6s} {est}")
