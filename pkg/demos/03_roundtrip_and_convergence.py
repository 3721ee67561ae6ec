"""Round trip and periodization convergence.

Forward-of-inverse reproduces the measure's Schur function at machine
precision (the identity that pins every sign and phase convention in the
library), and the periodized transforms f^T converge to f with errors
shrinking roughly like 1/T at fixed z off the real axis.
"""
import math

from nlft import (convergence_sweep, default_zgrid, error_ratios,
                  roundtrip_residual, schur_from_measure)
from nlft._corpus import flagship_measure

mu = flagship_measure()

print("-- round trip at T = pi --")
for N in (25, 50, 100, 200):
    res = roundtrip_residual(mu, math.pi, N, zgrid=default_zgrid(20))
    print(f"N = {N:4d}: max residual over the grid = {res:.3e}")

print("\n-- f^T(i) -> f(i) over doubling T --")
Ts = [math.pi, 2 * math.pi, 4 * math.pi, 8 * math.pi]
rows = convergence_sweep(mu, Ts, [1j])
target = schur_from_measure(mu, 1j).value
print(f"f(i) = {target:.8f}")
for r in rows:
    print(f"T = {r.T / math.pi:3.0f} pi: f^T(i) = {r.approx:.8f}   "
          f"|f^T - f| = {r.abs_err:.6f}")
print("decay factors per doubling:", [round(v, 3) for v in error_ratios(rows)[1j]])
