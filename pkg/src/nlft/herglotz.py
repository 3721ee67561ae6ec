"""Schwarz, Poisson and conjugate Poisson transforms of measures.

For a positive Poisson-finite measure mu the Schwarz transform is

    S_mu(z) = (1/(pi i)) * integral ( 1/(t - z) - t/(1 + t^2) ) dmu(t),

which maps the upper half-plane into the closed right half-plane, with
decomposition S_mu = P_mu + i Q_mu into the Poisson and conjugate Poisson
integrals

    P_mu(z) = (1/pi) integral y/((t-x)^2 + y^2) dmu(t),
    Q_mu(z) = (1/pi) integral ( (x-t)/((x-t)^2 + y^2) + t/(1+t^2) ) dmu(t).

Atoms are summed exactly; constant densities contribute their value exactly
(S = P = value, Q = 0); piecewise-linear tables integrate in closed form.
Periodic measures use exact cotangent lattice sums for atom orbits and
adaptive quadrature of the orbit kernel against the window density.

The non-linear Fourier transform of a measure is the Moebius image

    schur_from_measure(mu, z) = (1 - S~) / (1 + S~),   S~ = S_mu(z) / abar,

where abar is the measure's mean density.  The normalisation makes the map
the exact inverse of the transfer-matrix forward transform (the underlying
first-order system carries h11(0+) = 1, i.e. unit mean density); the Moebius
orientation is likewise fixed by that round-trip identity.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from . import _kernels as K
from .errors import DomainError, NumericalError, QuadratureError, ResonanceError
from .measure import Measure

REAL_AXIS_CLEARANCE = 1e-9


@dataclass(frozen=True)
class HerglotzValue:
    z: complex
    value: complex


@dataclass(frozen=True)
class SchurValue:
    z: complex
    value: complex


def _lattice_distance(x: float, t: float, P: float) -> float:
    """Distance from x to the orbit {t + mP}."""
    r = (x - t) % P
    return min(r, P - r)


def _check_eval_point(mu: Measure, z: complex):
    z = complex(z)
    if z.imag > 0:
        return
    if z.imag < 0:
        raise DomainError("evaluation point must satisfy Im z >= 0")
    x = z.real
    if mu.is_periodic:
        P = mu.period
        for t, _ in mu.atoms:
            if _lattice_distance(x, t, P) < REAL_AXIS_CLEARANCE:
                raise DomainError(f"real evaluation point {x} lies on an atom orbit")
        sup = mu.ac.support()
        if sup is not None:
            lo, hi = sup
            T = mu.half_period
            rep = (x + T) % P - T
            if lo - REAL_AXIS_CLEARANCE <= rep <= hi + REAL_AXIS_CLEARANCE:
                raise DomainError("real evaluation point lies in the density support")
        return
    for t, _ in mu.atoms:
        if abs(x - t) < REAL_AXIS_CLEARANCE:
            raise DomainError(f"real evaluation point {x} lies on an atom")
    sup = mu.ac.support()
    if sup is not None:
        lo, hi = sup
        if lo - REAL_AXIS_CLEARANCE <= x <= hi + REAL_AXIS_CLEARANCE:
            raise DomainError("real evaluation point lies in the density support")


def _quad_orbit(mu: Measure, kernel, z: complex, tol: float) -> complex:
    """Integrate density(t) * kernel(t) over the base window by adaptive
    quadrature, splitting at table nodes and at the point under z."""
    T = mu.half_period
    pieces = list(mu.ac.segments(-T, T))
    if not pieces:
        return 0.0
    splits = {x0 for x0, *_ in pieces} | {x1 for _, x1, *_ in pieces}
    if abs(complex(z).imag) < 1e-3:
        rep = (complex(z).real + T) % (2 * T) - T
        splits.add(min(max(rep, -T), T))
    total = 0.0 + 0.0j
    err_budget = 0.0
    for x0, x1, al, be in pieces:
        cuts = sorted({x0, x1} | {s for s in splits if x0 < s < x1})
        for a, b in zip(cuts, cuts[1:]):
            for part, proj in ((0, np.real), (1, np.imag)):
                val, err = quad(lambda t: proj(complex((al + be * t) * kernel(t))),
                                a, b, epsabs=tol / 8, epsrel=1e-12, limit=400)
                total += val if part == 0 else 1j * val
                err_budget += err
    if err_budget > max(tol, 1e-13):
        raise QuadratureError(f"quadrature error estimate {err_budget:g} exceeds tol {tol:g}")
    return total


def schwarz_transform(mu: Measure, z: complex, tol: float = 1e-12) -> HerglotzValue:
    """S_mu(z) with absolute error below ``tol``.

    Requires Im z > 0, or Im z = 0 with z at distance >= 1e-9 from every atom
    (every atom orbit, when periodic) and from the density support.
    """
    z = complex(z)
    _check_eval_point(mu, z)
    if mu.is_periodic:
        P = mu.period
        val = sum(m * K.schwarz_orbit(x, P, z) for x, m in mu.atoms)
        if mu.ac.kind == "constant":
            val += mu.ac.value  # periodized constant density is globally constant
        elif mu.ac.kind == "table":
            val += _quad_orbit(mu, lambda t: K.schwarz_orbit(t, P, z), z, tol)
    else:
        val = sum(m * K.schwarz_point(x, z) for x, m in mu.atoms)
        if mu.ac.kind == "constant":
            if mu.ac.value != 0.0 and z.imag == 0.0:
                raise DomainError("real evaluation point lies in the density support")
            val += mu.ac.value
        elif mu.ac.kind == "table":
            val += sum(K.schwarz_segment(x0, x1, al, be, z)
                       for x0, x1, al, be in mu.ac.segments())
    return HerglotzValue(z, complex(val))


def poisson_integral(mu: Measure, z: complex, tol: float = 1e-12) -> float:
    """P_mu(z) for Im z > 0; strictly positive for nonzero positive measures."""
    z = complex(z)
    if z.imag <= 0:
        raise DomainError("poisson_integral requires Im z > 0")
    if mu.is_periodic:
        P = mu.period
        val = sum(m * K.poisson_orbit(x, P, z) for x, m in mu.atoms)
        if mu.ac.kind == "constant":
            val += mu.ac.value
        elif mu.ac.kind == "table":
            val += complex(_quad_orbit(mu, lambda t: K.poisson_orbit(t, P, z), z, tol)).real
    else:
        val = sum(m * K.poisson_point(x, z) for x, m in mu.atoms)
        if mu.ac.kind == "constant":
            val += mu.ac.value
        elif mu.ac.kind == "table":
            val += sum(K.poisson_segment(x0, x1, al, be, z)
                       for x0, x1, al, be in mu.ac.segments())
    return float(val)


def conjugate_poisson_integral(mu: Measure, z: complex, tol: float = 1e-12) -> float:
    """Q_mu(z) for Im z > 0; satisfies S_mu = P_mu + i Q_mu."""
    z = complex(z)
    if z.imag <= 0:
        raise DomainError("conjugate_poisson_integral requires Im z > 0")
    if mu.is_periodic:
        P = mu.period
        val = sum(m * K.conj_poisson_orbit(x, P, z) for x, m in mu.atoms)
        if mu.ac.kind == "table":
            val += complex(_quad_orbit(mu, lambda t: K.conj_poisson_orbit(t, P, z),
                                       z, tol)).real
        # a globally constant density has Q = 0
    else:
        val = sum(m * K.conj_poisson_point(x, z) for x, m in mu.atoms)
        if mu.ac.kind == "table":
            val += sum(K.conj_poisson_segment(x0, x1, al, be, z)
                       for x0, x1, al, be in mu.ac.segments())
    return float(val)


def schur_from_measure(mu: Measure, z: complex, tol: float = 1e-12) -> SchurValue:
    """The non-linear Fourier transform of ``mu``: (1 - S~)/(1 + S~) with
    S~ = S_mu(z)/abar, abar the mean density of the measure.

    Measures without a positive mean density (compact support, pure atoms)
    are mapped with abar = 1; such measures are flagged by pw_diagnostic and
    do not arise as spectral data of the systems in scope.
    """
    S = schwarz_transform(mu, z, tol).value
    abar = mu.mean_density()
    if abar <= 0:
        abar = 1.0
    St = S / abar
    if abs(1 + St) < 1e-14:
        raise ResonanceError("Schur representation pole: normalised transform = -1")
    return SchurValue(complex(z), (1 - St) / (1 + St))


# -- finite-interval identity check -----------------------------------------


@dataclass(frozen=True)
class ClarkIdentityReport:
    """Residuals of the boundary-data identity B/A = -i * S over [0, b].

    ``zeros``/``masses`` describe the located spectral atoms -pi/(A'(x) C(x))
    on the zero set of A inside [-R, R].  ``residual`` is
    |B(b,z0)/A(b,z0) - (-i S)| with S the truncated Schwarz sum over those
    atoms; ``residual_reciprocal`` records the same comparison against the
    reciprocal variant -i/S, which does not converge and is kept only as a
    reference column.  The companion fields repeat the construction for
    D/C with masses pi/(A C') on the zero set of C.
    """

    z0: complex
    window: float
    zeros: tuple[float, ...]
    masses: tuple[float, ...]
    residual: float
    residual_reciprocal: float
    companion_zeros: tuple[float, ...] = ()
    companion_masses: tuple[float, ...] = ()
    companion_residual: float | None = None


def _real_zeros(fn, R: float, scan_per_unit: int = 40) -> list[float]:
    xs = np.linspace(-R, R, int(2 * R * scan_per_unit) + 1)
    vals = np.array([fn(x) for x in xs])
    zeros = []
    for i in range(len(xs) - 1):
        f0, f1 = vals[i], vals[i + 1]
        if f0 == 0.0:
            zeros.append(float(xs[i]))
            continue
        if f0 * f1 < 0:
            lo, hi, flo = xs[i], xs[i + 1], f0
            for _ in range(80):
                mid = 0.5 * (lo + hi)
                fm = fn(mid)
                if fm == 0.0:
                    lo = hi = mid
                    break
                if flo * fm < 0:
                    hi = mid
                else:
                    lo, flo = mid, fm
            zeros.append(0.5 * (lo + hi))
    if vals[-1] == 0.0:
        zeros.append(float(xs[-1]))
    return zeros


def validate_clark_identity(pot, b: float, z0: complex, window: float,
                            companion: bool = False) -> ClarkIdentityReport:
    """Check B/A = -i * S at z0 for the matrix solution on [0, b].

    Zeros of A on [-window, window] are located by sign scan + bisection
    (A is real on the real axis for real potentials); A' uses a central
    difference with step 1e-6*(1+|x|); the atom masses are -pi/(A'C).
    """
    from .forward import propagate_matrix  # local import to avoid a cycle

    z0 = complex(z0)
    if z0.imag <= 0:
        raise DomainError("z0 must lie in the open upper half-plane")
    if window <= 0 or b <= 0:
        raise DomainError("b and window must be positive")

    def entry(which):
        r, c = which
        return lambda x: propagate_matrix(pot, b, x)[r, c].real

    A, C = entry((0, 0)), entry((1, 0))

    zeros = _real_zeros(A, window)
    if not zeros:
        raise NumericalError("no zeros found in window")
    if len(zeros) < 5:
        raise DomainError(f"window too small: only {len(zeros)} zeros of A in "
                          f"[-{window}, {window}], need >= 5")

    masses = []
    for x in zeros:
        h = 1e-6 * (1 + abs(x))
        Ap = (A(x + h) - A(x - h)) / (2 * h)
        Cx = C(x)
        if abs(Ap * Cx) < 1e-12:
            raise NumericalError(f"degenerate zero of A at {x}: A'C = 0")
        masses.append(-math.pi / (Ap * Cx))

    S = sum(m * K.schwarz_point(x, z0) for x, m in zip(zeros, masses))
    M = propagate_matrix(pot, b, z0)
    ba = M[0, 1] / M[0, 0]
    residual = abs(ba - (-1j * S))
    residual_recip = abs(ba - (-1j / S)) if S != 0 else math.inf

    comp_zeros: tuple[float, ...] = ()
    comp_masses: tuple[float, ...] = ()
    comp_res = None
    if companion:
        czeros = _real_zeros(C, window)
        cmasses = []
        for x in czeros:
            h = 1e-6 * (1 + abs(x))
            Cp = (C(x + h) - C(x - h)) / (2 * h)
            Ax = A(x)
            if abs(Ax * Cp) < 1e-12:
                raise NumericalError(f"degenerate zero of C at {x}: AC' = 0")
            cmasses.append(math.pi / (Ax * Cp))
        Sc = sum(m * K.schwarz_point(x, z0) for x, m in zip(czeros, cmasses))
        comp_res = abs(M[1, 1] / M[1, 0] - (-1j * Sc))
        comp_zeros, comp_masses = tuple(czeros), tuple(cmasses)

    return ClarkIdentityReport(
        z0=z0, window=window,
        zeros=tuple(zeros), masses=tuple(masses),
        residual=residual, residual_reciprocal=residual_recip,
        companion_zeros=comp_zeros, companion_masses=comp_masses,
        companion_residual=comp_res,
    )
