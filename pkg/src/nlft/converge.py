"""Discrete-to-continuous convergence experiments.

Periodizing a measure at half-period T yields a discrete potential through
the inverse pipeline; its transform approximates the transform of the
original measure, pointwise off the real axis and in the weak-star sense at
the Hamiltonian level.  This module orchestrates those comparisons: Schur
sweeps over growing T, weak-star tests of h11 against hat functions, the
forward-of-inverse round-trip residual (the library's convention anchor),
and the scaled-mass rows behind the reconstruction figures.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import quad

from .errors import DomainError
from .forward import forward_discrete, schur_ratio
from .herglotz import SchurValue, schur_from_measure
from .inverse import inverse_nlft, toeplitz_h11
from .measure import Measure, periodize, trig_moments


@dataclass(frozen=True)
class HatFunction:
    """Continuous, compactly supported, piecewise-linear test function."""

    xs: tuple[float, ...]
    ys: tuple[float, ...]

    def __post_init__(self):
        if len(self.xs) != len(self.ys) or len(self.xs) < 2:
            raise DomainError("hat needs matching xs/ys with >= 2 nodes")
        if any(b <= a for a, b in zip(self.xs, self.xs[1:])):
            raise DomainError("hat xs must be strictly increasing")
        if self.ys[0] != 0.0 or self.ys[-1] != 0.0:
            raise DomainError("hat must vanish at its support endpoints")

    @classmethod
    def triangle(cls, left: float, peak: float, right: float, height: float = 1.0):
        return cls((left, peak, right), (0.0, height, 0.0))

    @property
    def support(self) -> tuple[float, float]:
        return self.xs[0], self.xs[-1]

    def __call__(self, t):
        return np.interp(t, self.xs, self.ys, left=0.0, right=0.0)

    def antiderivative(self, t):
        """Exact running integral from the left support end (vectorised)."""
        t = np.asarray(t, dtype=float)
        xs, ys = np.asarray(self.xs), np.asarray(self.ys)
        seg_int = np.concatenate(([0.0], np.cumsum(np.diff(xs) * (ys[1:] + ys[:-1]) / 2)))
        tc = np.clip(t, xs[0], xs[-1])
        idx = np.clip(np.searchsorted(xs, tc, side="right") - 1, 0, len(xs) - 2)
        x0, y0 = xs[idx], ys[idx]
        slope = (ys[idx + 1] - y0) / (xs[idx + 1] - x0)
        local = y0 * (tc - x0) + slope * (tc - x0) ** 2 / 2
        return seg_int[idx] + local

    def integral(self, a: float, b: float) -> float:
        if b <= a:
            return 0.0
        hi, lo = self.antiderivative(np.array([b, a]))
        return float(hi - lo)


@dataclass(frozen=True)
class ConvergenceRow:
    T: float
    z: complex
    approx: complex
    target: complex
    abs_err: float


def default_zgrid(n: int = 50, re_range: tuple[float, float] = (-5.0, 5.0),
                  im_levels: Sequence[float] = (0.5, 1.0, 2.0)) -> list[complex]:
    """Deterministic grid in the upper half-plane, away from the real axis."""
    res = np.linspace(re_range[0], re_range[1], n)
    return [complex(r, im_levels[k % len(im_levels)]) for k, r in enumerate(res)]


def periodized_schur(mu: Measure, T: float, z: complex, tol: float = 1e-12) -> SchurValue:
    """Transform of the 2T-periodization of a non-periodic measure."""
    return schur_from_measure(periodize(mu, T), z, tol)


def convergence_sweep(mu: Measure, Ts: Sequence[float], grid: Sequence[complex],
                      tol: float = 1e-12) -> list[ConvergenceRow]:
    """|f^T(z) - f(z)| rows over all (T, z), sorted by (T, Re z, Im z)."""
    targets = {z: schur_from_measure(mu, z, tol).value for z in grid}
    rows = []
    for T in Ts:
        muT = periodize(mu, T)
        for z in grid:
            approx = schur_from_measure(muT, z, tol).value
            rows.append(ConvergenceRow(T, complex(z), approx, targets[z],
                                       abs(approx - targets[z])))
    rows.sort(key=lambda r: (r.T, r.z.real, r.z.imag))
    return rows


def error_ratios(rows: Sequence[ConvergenceRow]) -> dict[complex, list[float]]:
    """Per grid point, err(T_k)/err(T_{k+1}) over the sorted distinct T."""
    by_z: dict[complex, list[ConvergenceRow]] = {}
    for r in rows:
        by_z.setdefault(r.z, []).append(r)
    out = {}
    for z, rs in by_z.items():
        rs = sorted(rs, key=lambda r: r.T)
        out[z] = [rs[k].abs_err / rs[k + 1].abs_err if rs[k + 1].abs_err > 0 else math.inf
                  for k in range(len(rs) - 1)]
    return out


def weakstar_h11_check(mu: Measure, Ts: Sequence[float], testfn: HatFunction,
                       h11_oracle: Callable[[float], float],
                       method: str = "toeplitz") -> list[float]:
    """|integral(h11^T phi) - integral(h11 phi)| for each T.

    h11^T comes from the Toeplitz route on the periodization; the step
    function integrates against the hat exactly.  The oracle h11 is a
    closed-form callable integrated by adaptive quadrature.
    """
    lo, hi = testfn.support
    if hi <= 0:
        raise DomainError("test function must meet the positive half-line")
    target, _ = quad(lambda t: h11_oracle(t) * float(testfn(t)), max(lo, 0.0), hi,
                     points=[x for x in testfn.xs if max(lo, 0.0) < x < hi],
                     limit=400, epsabs=1e-11)
    out = []
    for T in Ts:
        muT = periodize(mu, T)
        width = math.pi / (2 * T)
        nsteps = int(math.ceil(hi / width)) + 1
        mom = trig_moments(muT, nsteps - 1)
        h = toeplitz_h11(mom, nsteps, method="cholesky" if method == "toeplitz" else method)
        approx = sum(hn * testfn.integral(n * width, (n + 1) * width)
                     for n, hn in enumerate(h.steps))
        out.append(abs(approx - target))
    return out


def oscillating_step_average(breaks: Sequence[float], values: Sequence[float],
                             T: float, testfn: HatFunction,
                             transform: Callable[[float], float] | None = None) -> float:
    """integral over t of g(f0(T t)) phi(t) dt, exactly.

    f0 is the 1-periodic step function taking values[j] on
    [breaks[j], breaks[j+1]) with breaks[0] = 0, breaks[-1] = 1; g is an
    optional pointwise transform (e.g. log).  Compression by T makes the
    factor oscillate; the piecewise structure is integrated segment by
    segment against the hat's exact antiderivative.
    """
    breaks = np.asarray(breaks, dtype=float)
    if breaks[0] != 0.0 or breaks[-1] != 1.0 or np.any(np.diff(breaks) <= 0):
        raise DomainError("breaks must increase from 0 to 1")
    if len(values) != len(breaks) - 1:
        raise DomainError("need one value per subinterval")
    vals = np.asarray(values, dtype=float)
    if transform is not None:
        vals = np.asarray([transform(v) for v in vals])
    lo, hi = testfn.support
    k0, k1 = math.floor(lo * T), math.ceil(hi * T)
    periods = np.arange(k0, k1 + 1)
    # all segment edges (k + breaks[j]) / T that overlap the support
    edges = ((periods[:, None] + breaks[None, :-1]) / T).ravel()
    seg_vals = np.tile(vals, len(periods))
    order = np.argsort(edges, kind="stable")
    edges, seg_vals = edges[order], seg_vals[order]
    ends = np.append(edges[1:], (k1 + 1) / T)
    F1 = testfn.antiderivative(ends)
    F0 = testfn.antiderivative(edges)
    return float(np.sum(seg_vals * (F1 - F0)))


def roundtrip_residual(mu: Measure, T: float, N: int,
                       zgrid: Sequence[complex] | None = None,
                       method: str = "toeplitz", tol: float = 1e-12) -> float:
    """max over the grid of |forward(inverse(mu_T)) - schur(mu_T)|.

    This residual is the library's convention anchor: it vanishes (up to
    truncation) exactly when the forward factors, the Hamiltonian-step
    extraction, the mass formula and the measure-to-Schur map are mutually
    consistent.
    """
    if zgrid is None:
        zgrid = default_zgrid()
    for z in zgrid:
        if not (0 < complex(z).imag):
            raise DomainError("round-trip grid must lie in the open upper half-plane")
    muT = periodize(mu, T)
    pot = inverse_nlft(muT, N, method=method)
    worst = 0.0
    for z in zgrid:
        lhs = schur_ratio(forward_discrete(pot, z)).value
        rhs = schur_from_measure(muT, z, tol).value
        worst = max(worst, abs(lhs - rhs))
    return worst


@dataclass(frozen=True)
class Figure1Row:
    t: float
    scaled_mass: float
    oracle_f: float


@dataclass(frozen=True)
class Figure1Report:
    T: float
    rows: tuple[Figure1Row, ...]
    notes: tuple[str, ...]

    def max_deviation(self, t_max: float = math.inf) -> float:
        return max((abs(r.scaled_mass - r.oracle_f) for r in self.rows if r.t <= t_max),
                   default=0.0)


def figure1_data(mu: Measure, T: float, N: int,
                 oracle: Callable[[float], float] | None = None,
                 h11_oracle: Callable[[float], float] | None = None,
                 alt_oracle_note: str | None = None,
                 method: str = "toeplitz") -> Figure1Report:
    """Rows (t_n, c_n * 2T/pi, oracle_f(t_n)) for n = 1..N.

    The oracle is the target potential density; when only a closed-form h11
    is supplied it is differentiated as f = (1/2) d/dt log h11 by central
    differences (step 1e-5).  Scaled masses approximate the density because
    each mass carries the running integral of f over one step of width
    pi/(2T).
    """
    if oracle is None:
        if h11_oracle is None:
            raise DomainError("supply oracle or h11_oracle")
        hstep = 1e-5

        def oracle(t, _h=h11_oracle):
            return 0.5 * (math.log(_h(t + hstep)) - math.log(_h(t - hstep))) / (2 * hstep)

    pot = inverse_nlft(periodize(mu, T), N, method=method)
    width = pot.spacing
    scale = 2 * T / math.pi
    rows = tuple(Figure1Row(n * width, c * scale, float(oracle(n * width)))
                 for n, c in enumerate(pot.masses, start=1))
    notes = ("oracle: f(t) = (1/2) d/dt log h11(t)",)
    if alt_oracle_note:
        notes += (f"alternative oracle candidate on record: {alt_oracle_note}",)
    return Figure1Report(T, rows, notes)
