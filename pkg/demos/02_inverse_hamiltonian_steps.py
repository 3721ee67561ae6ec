"""Hamiltonian steps and potential masses from a measure's moments.

The running example is the measure sqrt(2 pi) delta_0 + (1/sqrt(2 pi)) m.
Periodized at half-period T it has moments
a_0 = (sqrt(2 pi) + 2T/sqrt(2 pi))/(2T), a_n = sqrt(2 pi)/T, and its
Hamiltonian steps admit the closed form

    h_n = sqrt(2 pi) T^2 / ((n pi + T)(n pi + T + pi)).

Both reconstruction routes (Toeplitz entry sums and orthonormal-polynomial
values at 1) reproduce it to machine precision, and the recovered masses
(1/2) log(h_n/h_{n-1}) track the density -2/(1 + 2t).
"""
import math

import numpy as np

from nlft import inverse_nlft, opuc_h11, periodize, toeplitz_h11, trig_moments
from nlft._corpus import flagship_h_step, flagship_measure

T = math.pi
mu_T = periodize(flagship_measure(), T)
mom = trig_moments(mu_T, 16)
print("moments a_0..a_4:", [round(a, 12) for a in mom.coeffs[:5]])

h_t = toeplitz_h11(mom, 16)
h_o = opuc_h11(mom, 16)
exact = [flagship_h_step(n, T) for n in range(16)]
print(f"\n{'n':>3} {'toeplitz':>20} {'opuc':>20} {'closed form':>20}")
for n in range(8):
    print(f"{n:>3} {h_t.steps[n]:>20.14f} {h_o.steps[n]:>20.14f} {exact[n]:>20.14f}")
print("max |toeplitz - opuc|      :", np.max(np.abs(np.array(h_t.steps) - np.array(h_o.steps))))
print("max rel err vs closed form :", np.max(np.abs(np.array(h_t.steps) / exact - 1)))

pot = inverse_nlft(mu_T, 12)
print("\nrecovered masses vs density -2/(1+2t) per step width:")
w = pot.spacing
for n, c in enumerate(pot.masses[:8], start=1):
    t = n * w
    print(f"t = {t:5.2f}: mass/width = {c / w:+.5f}   f(t) = {-2 / (1 + 2 * t):+.5f}")
