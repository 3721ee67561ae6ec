"""Shared fixtures and independent oracles for the test suite.

The oracles here deliberately avoid the library's closed-form code paths:
brute lattice sums for periodic transforms, adaptive quadrature for moments
and for transforms of non-periodic measures, exact rational inversion for
Toeplitz entry sums (provided by the library as a separate route).
"""
import math

import numpy as np
import pytest
from scipy.integrate import quad

from nlft import Measure
from nlft._corpus import corpus_measures, corpus_moments

SQRT_2PI = math.sqrt(2 * math.pi)


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


@pytest.fixture(scope="session")
def measures():
    return corpus_measures()


@pytest.fixture(scope="session")
def moment_corpus():
    return corpus_moments()


def schwarz_kernel(t, z):
    return (1 / (t - z) - t / (1 + t * t)) / (math.pi * 1j)


def schwarz_quad_oracle(mu: Measure, z: complex, cutoff: float = 2e4) -> complex:
    """Schwarz transform of a non-periodic measure by plain quadrature.

    The symmetric window [-cutoff, cutoff] controls the conditionally
    convergent constant-density part; its tail is O(|z| / cutoff).
    """
    assert not mu.is_periodic
    total = sum(m * schwarz_kernel(x, z) for x, m in mu.atoms)
    for part in (np.real, np.imag):
        def integrand(t):
            return part(complex(mu.ac.density(t) * schwarz_kernel(t, z)))
        sup = mu.ac.support()
        if sup is None:
            continue
        lo, hi = max(sup[0], -cutoff), min(sup[1], cutoff)
        val = 0.0
        # split at table kinks, at Re z and at 0 to help the adaptive rule
        pts = {lo, hi, min(max(z.real, lo), hi), min(max(0.0, lo), hi)}
        pts |= {x for x in mu.ac.xs if lo < x < hi}
        pts = sorted(pts)
        for a, b in zip(pts, pts[1:]):
            if b > a:
                val += quad(integrand, a, b, limit=800, epsabs=1e-12)[0]
        total += val if part is np.real else 1j * val
    return complex(total)


def schwarz_lattice_brute(x: float, mass: float, period: float, z: complex,
                          m_max: int = 10 ** 6, tail_correction: bool = False) -> complex:
    """Direct paired lattice sum for one periodic atom orbit.

    Pairs (m, -m) telescope the normalisation term; a pair at index m
    contributes 2z/(m P)^2 + O(m^-3), so the raw tail after m_max pairs is
    about 2|z|/(pi P^2 m_max).  With ``tail_correction`` that integral
    estimate of the tail is added back.
    """
    ms = np.arange(1, m_max + 1, dtype=float)
    total = schwarz_kernel(x, z)
    for chunk in np.array_split(ms, max(1, m_max // 250000)):
        tp, tm_ = x + chunk * period, x - chunk * period
        total += np.sum((1 / (tp - z) - tp / (1 + tp * tp))
                        + (1 / (tm_ - z) - tm_ / (1 + tm_ * tm_))) / (math.pi * 1j)
    if tail_correction:
        total += 2 * z / (period ** 2 * m_max) / (math.pi * 1j)
    return complex(mass * total)


def trig_moment_quad_oracle(mu: Measure, n: int) -> float:
    """Moment a_n of a periodic measure by quadrature over the base window."""
    assert mu.is_periodic
    T = mu.half_period
    if n == 0:
        atom_part = sum(m for _, m in mu.atoms)
        dens = quad(mu.ac.density, -T, T, limit=800, epsabs=1e-13)[0]
        return (atom_part + dens) / (2 * T)
    w = n * math.pi / T
    atom_part = sum(m * math.cos(w * x) for x, m in mu.atoms)
    dens = quad(lambda t: mu.ac.density(t) * math.cos(w * t), -T, T,
                limit=800, epsabs=1e-13)[0]
    return (atom_part + dens) / T
