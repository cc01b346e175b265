"""Regenerates the frozen renewal success probabilities used in the tests.

Integrates ``E[1/((1 + a h(R)) (1 + a h(S)))]`` directly over the law of the
last and next packet starts of a renewal interferer with nested adaptive
quadrature, independently of the library's rearranged form.  B = 1,
default network.  Run by hand (about 30 s); not collected by pytest.
"""
import math

from scipy import integrate

LAM, R, T = 1e-3, math.sqrt(1000.0), 10.0
LR = R ** 4
TOL = dict(epsabs=1e-14, epsrel=1e-12)


def h(s):
    return max(1.0 - abs(s), 0.0)


def direct_deficit(a, eb):
    eps = eb
    # idle at 0: only the next packet, starting after Exp(eps), can overlap
    idle = integrate.quad(lambda s: eps * math.exp(-eps * s) / (1 + a * h(s)), 0, 1, **TOL)[0]
    idle += math.exp(-eps)

    # busy since -u: next start 1 - u + e with e ~ Exp(eps)
    def inner(u):
        g = lambda e: eps * math.exp(-eps * e) / ((1 + a * h(-u)) * (1 + a * h(1 - u + e)))
        return integrate.quad(g, 0, u, **TOL)[0] + math.exp(-eps * u) / (1 + a * h(-u))

    busy = integrate.quad(inner, 0, 1, **TOL)[0]
    return 1 - (idle + eb * busy) / (1 + eb)


def p_ren(tau):
    eb = tau / (1 - tau)
    f = lambda u: u * direct_deficit(T * LR / u ** 4, eb) if u > 0 else 0.0
    scale = (T * LR) ** 0.25
    cuts = [0, scale / 8, scale, 8 * scale, 64 * scale]
    val = sum(integrate.quad(f, lo, hi, epsabs=0, epsrel=1e-10, limit=400)[0]
              for lo, hi in zip(cuts, cuts[1:]))
    # beyond 64 scales the deficit is tau * a to relative accuracy a < 1e-7
    val += tau * T * LR / (2 * cuts[-1] ** 2)
    return math.exp(-2 * math.pi * LAM * val)


if __name__ == "__main__":
    for a in (1e-3, 1.0, 1e3):
        print("deficit", a, 0.25, repr(direct_deficit(a, 0.25)))
    for tau in (0.01, 0.05, 0.2, 0.3):
        print("p_ren", tau, repr(p_ren(tau)))
