"""Forward transform of discrete potentials against closed forms.

Three stories:
  1. A single point mass c at position tau transforms to
     (a, b) = (cosh c, e^{2 i z tau} sinh c) exactly.
  2. The geometric-step chain with masses (1/2) log((k+2)/k) at k/2 has the
     closed-form transform b/a = e^{iz}/(2 - e^{iz}).
  3. Small potentials linearise to the ordinary Fourier sum
     sum c_n e^{2 i z n D}, with cubic error in the scale.
"""
import numpy as np

from nlft import (DiscretePotential, forward_discrete, fourier_linear,
                  point_mass_factor, schur_ratio)

print("-- single point mass --")
c, tau = 0.8, 1.5
for z in (1j, 0.3 + 0.9j, 2.0 - 0.0j):
    f = point_mass_factor(c, tau, z)
    print(f"z = {z}: a = {f.a:.6f} (cosh c = {np.cosh(c):.6f}), "
          f"b/e^(2iz tau) = {f.b / np.exp(2j * z * tau):.6f} "
          f"(sinh c = {np.sinh(c):.6f})")

print("\n-- geometric chain: masses log((k+2)/k)/2 at k/2 --")
masses = [0.5 * np.log((k + 2) / k) for k in range(1, 51)]
pot = DiscretePotential(0.5, tuple(masses))
for z in (1j, 0.5 + 0.7j, -1.0 + 0.4j):
    got = schur_ratio(forward_discrete(pot, z)).value
    want = np.exp(1j * z) / (2 - np.exp(1j * z))
    print(f"z = {z}: b/a = {got:.10f}   closed form = {want:.10f}   "
          f"diff = {abs(got - want):.2e}")

print("\n-- linearisation: error is cubic in the potential scale --")
rng = np.random.default_rng(3)
g = DiscretePotential(0.5, tuple(rng.normal(scale=0.8, size=6)))
grid = np.linspace(-3, 3, 25)
prev = None
for eps in (1e-1, 1e-2, 1e-3):
    scaled = DiscretePotential(g.spacing, tuple(eps * m for m in g.masses))
    err = max(abs(schur_ratio(forward_discrete(scaled, x)).value
                  - eps * fourier_linear(g, x)) for x in grid)
    note = f"   (shrank {prev / err:.0f}x)" if prev else ""
    print(f"eps = {eps:g}: max |b/a - eps*fourier| = {err:.3e}{note}")
    prev = err
