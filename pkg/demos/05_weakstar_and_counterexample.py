"""Weak-star convergence of Hamiltonians, and why logs do not commute with it.

Part 1: the reconstructed step Hamiltonians h11^T of the periodized flagship
measure converge weak-star to the closed form sqrt(2 pi)/(1 + 2t)^2: their
averages against a hat function approach the oracle's average.

Part 2: weak limits do not commute with the logarithm.  The compressed step
f0(T t), with f0 taking 1 on [0, 1/2) and 1/4 on [1/2, 1), averages to
(1 + 1/4)/2 = 5/8, while log f0(T t) averages to -log 2, which differs from
log(5/8).  So a family of Hamiltonians can converge weakly while the
corresponding potentials (half the log-derivative) do not follow the naive
limit.
"""
import math

from nlft import HatFunction, oscillating_step_average, weakstar_h11_check
from nlft._corpus import flagship_h11, flagship_measure

print("-- weak-star convergence of h11^T --")
hat = HatFunction.triangle(0.0, 1.0, 2.0)
Ts = [math.pi, 2 * math.pi, 4 * math.pi, 8 * math.pi]
diffs = weakstar_h11_check(flagship_measure(), Ts, hat, flagship_h11)
for T, d in zip(Ts, diffs):
    print(f"T = {T / math.pi:.0f} pi: |<h11^T, hat> - <h11, hat>| = {d:.6f}")

print("\n-- log does not pass through the weak limit --")
breaks, values = [0.0, 0.5, 1.0], [1.0, 0.25]
for T in (10.0, 1e3, 1e6):
    avg = oscillating_step_average(breaks, values, T, hat)
    lavg = oscillating_step_average(breaks, values, T, hat, transform=math.log)
    print(f"T = {T:8.0f}: <f^T, hat> = {avg:.8f}   <log f^T, hat> = {lavg:.8f}")
print(f"limits: 5/8 = {5 / 8:.8f}, -log 2 = {-math.log(2):.8f}, "
      f"log(5/8) = {math.log(5 / 8):.8f}  (not equal)")
