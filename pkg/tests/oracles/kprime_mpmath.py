"""Regenerates the frozen K and K' values used in the tests (mpmath, 40 digits).

Run by hand: ``python3 tests/oracles/kprime_mpmath.py``.  Not collected by pytest.
"""
import mpmath as mp

mp.mp.dps = 40

for beta in (2.5, 3, 4, 5, 6):
    b = mp.mpf(beta)
    a = 2 / b
    K = 2 * mp.pi * mp.quad(lambda v: v / (1 + v ** b), [0, 1, mp.inf])
    # K' split at u = 1, the upper half folded by w = 1/u
    cuts = [0, mp.mpf("1e-6"), mp.mpf("1e-3"), 1]
    head = mp.quad(lambda u: u ** (a - 1) * (1 - u * mp.log1p(1 / u)), cuts)
    tail = mp.quad(lambda w: w ** (-a - 1) * (1 - mp.log1p(w) / w), cuts)
    print(beta, mp.nstr(K, 17), mp.nstr(4 * mp.pi / b * (head + tail), 17))
