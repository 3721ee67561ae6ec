"""Built-in measures and moment sequences used by tests and `nlft check`.

The flagship measure sqrt(2 pi) delta_0 + (1/sqrt(2 pi)) m has fully closed
reference data: periodized at half-period T its Hamiltonian steps are

    h_n = sqrt(2 pi) T^2 / ((n pi + T)(n pi + T + pi)),

its moments are a_0 = (sqrt(2 pi) + 2T/sqrt(2 pi))/(2T), a_n = sqrt(2 pi)/T,
and the underlying potential density is -2/(1 + 2t).
"""
from __future__ import annotations

import math

from .measure import AcPart, Measure, TrigMoments, periodize, trig_moments

SQRT_2PI = math.sqrt(2 * math.pi)


def lebesgue(density: float = 1.0) -> Measure:
    return Measure(ac=AcPart(kind="constant", value=density))


def flagship_measure() -> Measure:
    """sqrt(2 pi) delta_0 + (1/sqrt(2 pi)) * Lebesgue."""
    return Measure(ac=AcPart(kind="constant", value=1 / SQRT_2PI),
                   atoms=((0.0, SQRT_2PI),))


def atom_plus_lebesgue(beta: float) -> Measure:
    """Lebesgue + beta*pi*delta_0 (unit mean density)."""
    return Measure(ac=AcPart(kind="constant", value=1.0),
                   atoms=((0.0, beta * math.pi),))


def flagship_h_step(n, T: float):
    """Closed form of the n-th Hamiltonian step of the periodized flagship."""
    return SQRT_2PI * T * T / ((n * math.pi + T) * (n * math.pi + T + math.pi))


def flagship_moments(T: float, n_max: int) -> TrigMoments:
    a0 = (SQRT_2PI + 2 * T / SQRT_2PI) / (2 * T)
    return TrigMoments(T, (a0,) + (SQRT_2PI / T,) * n_max)


def flagship_potential_density(t: float) -> float:
    return -2.0 / (1.0 + 2.0 * t)


def flagship_h11(t: float) -> float:
    return SQRT_2PI / (1.0 + 2.0 * t) ** 2


def bernstein_szego_moments(alpha: float, n_max: int, scale: float = 1.0) -> TrigMoments:
    """Moments of the density scale*(1-alpha^2)/|1 - alpha e^{ix}|^2, 2pi-periodic."""
    return TrigMoments(math.pi,
                       (scale,) + tuple(2 * scale * alpha ** k for k in range(1, n_max + 1)))


def even_table_measure() -> Measure:
    """Symmetric triangular density bump plus a mirrored pair of atoms."""
    return Measure(ac=AcPart(kind="table", xs=(-2.0, 0.0, 2.0), ys=(0.0, 1.0, 0.0)),
                   atoms=((-1.0, 0.7), (1.0, 0.7)))


def atoms_and_density_measure() -> Measure:
    """2pi-periodic: atoms pi/2 at +-pi/2 over constant density 1/2."""
    return Measure(ac=AcPart(kind="constant", value=0.5),
                   atoms=((-math.pi / 2, math.pi / 2), (math.pi / 2, math.pi / 2)),
                   period=2 * math.pi)


def corpus_measures() -> list[tuple[str, Measure]]:
    """Positive measures for transform-level property tests."""
    return [
        ("lebesgue", lebesgue()),
        ("flagship", flagship_measure()),
        ("atom+lebesgue b=0.5", atom_plus_lebesgue(0.5)),
        ("atom+lebesgue b=1", atom_plus_lebesgue(1.0)),
        ("atom+lebesgue b=2", atom_plus_lebesgue(2.0)),
        ("even table", even_table_measure()),
        ("periodic atoms+density", atoms_and_density_measure()),
        ("periodized flagship T=pi", periodize(flagship_measure(), math.pi)),
        ("periodized table T=4", periodize(even_table_measure(), 4.0)),
    ]


def corpus_moments(n_max: int = 130) -> list[tuple[str, TrigMoments]]:
    """Positive-definite moment sequences for route-equality tests.

    All members keep both solver routes agreeing to ~1e-13 absolute up to
    order 128 (conditioning stays moderate).
    """
    seqs: list[tuple[str, TrigMoments]] = []
    for T in (math.pi, 2 * math.pi, 4 * math.pi, 8 * math.pi):
        seqs.append((f"flagship T={T/math.pi:g}pi", flagship_moments(T, n_max)))
    seqs.append(("lebesgue", TrigMoments(math.pi, (1.0,) + (0.0,) * n_max)))
    seqs.append(("lebesgue x3", TrigMoments(math.pi, (3.0,) + (0.0,) * n_max)))
    seqs.append(("bernstein-szego -tanh1", bernstein_szego_moments(-math.tanh(1.0), n_max)))
    seqs.append(("bernstein-szego +0.5", bernstein_szego_moments(0.5, n_max)))
    seqs.append(("half cosine", TrigMoments(math.pi, (1.0, 0.5) + (0.0,) * (n_max - 1))))
    seqs.append(("second harmonic", TrigMoments(math.pi, (1.0, 0.0, 0.5) + (0.0,) * (n_max - 2))))
    seqs.append(("periodic atoms+density",
                 trig_moments(atoms_and_density_measure(), n_max)))
    return seqs
