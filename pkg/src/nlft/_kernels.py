"""Closed-form kernels used by the transform evaluators.

Point kernels, for a unit mass at t observed from z = x + iy:

    schwarz:       (1/(pi i)) * (1/(t - z) - t/(1 + t^2))
    poisson:       (1/pi) * y / ((t - x)^2 + y^2)
    conj poisson:  (1/pi) * ((x - t)/((x - t)^2 + y^2) + t/(1 + t^2))

For P-periodic orbits {t + mP} the symmetric lattice sums collapse to
cotangents,

    sum_m 1/(t + mP - z)      = (pi/P) cot(pi (t - z)/P),
    sum_m t_m/(1 + t_m^2)     = (pi/P) Re cot(pi (t - i)/P)      (t real),

which this module evaluates through the overflow-safe form
cot(w) = -i (1 + q)/(1 - q), q = exp(2iw), valid for Im w >= 0.

Linear densities alpha + beta*t on a segment [x0, x1] integrate against the
point kernels in closed form (log/atan antiderivatives); those segment
integrals are exact up to rounding.
"""
from __future__ import annotations

import math

import numpy as np


def cot(w: complex) -> complex:
    """Cotangent, stable for large |Im w|."""
    w = complex(w)
    if w.imag < 0:
        return np.conj(cot(np.conj(w)))
    q = np.exp(2j * w)
    return -1j * (1 + q) / (1 - q)


# -- point kernels -----------------------------------------------------------

def schwarz_point(t: float, z: complex) -> complex:
    return (1 / (t - z) - t / (1 + t * t)) / (math.pi * 1j)


def poisson_point(t: float, z: complex) -> float:
    x, y = z.real, z.imag
    return y / ((t - x) ** 2 + y * y) / math.pi


def conj_poisson_point(t: float, z: complex) -> float:
    x, y = z.real, z.imag
    return ((x - t) / ((x - t) ** 2 + y * y) + t / (1 + t * t)) / math.pi


# -- periodic orbit kernels --------------------------------------------------

def lattice_norm(t: float, P: float) -> float:
    """sum_m t_m/(1 + t_m^2) over the orbit t_m = t + mP (symmetric limit)."""
    return (math.pi / P) * cot(math.pi * (t - 1j) / P).real


def schwarz_orbit(t: float, P: float, z: complex) -> complex:
    main = (math.pi / P) * cot(math.pi * (t - z) / P)
    return (main - lattice_norm(t, P)) / (math.pi * 1j)


def poisson_orbit(t: float, P: float, z: complex) -> float:
    return -cot(math.pi * (z - t) / P).imag / P


def conj_poisson_orbit(t: float, P: float, z: complex) -> float:
    return cot(math.pi * (z - t) / P).real / P + lattice_norm(t, P) / math.pi


# -- segment integrals (linear density, non-periodic) ------------------------

def schwarz_segment(x0: float, x1: float, alpha: float, beta: float, z: complex) -> complex:
    """integral over [x0,x1] of (alpha+beta t) * schwarz kernel dt, closed form.

    Valid for Im z > 0 and for real z outside [x0, x1]; the log stays on a
    branch-cut-free path in both cases.
    """
    log_main = np.log((x1 - z) / (x0 - z))
    log_norm = 0.5 * math.log((1 + x1 * x1) / (1 + x0 * x0))
    datan = math.atan(x1) - math.atan(x0)
    return ((alpha + beta * z) * log_main - alpha * log_norm + beta * datan) / (math.pi * 1j)


def poisson_segment(x0: float, x1: float, alpha: float, beta: float, z: complex) -> float:
    x, y = z.real, z.imag
    u0, u1 = x0 - x, x1 - x
    datan = math.atan2(u1, y) - math.atan2(u0, y)
    dlog = 0.5 * math.log((u1 * u1 + y * y) / (u0 * u0 + y * y))
    return ((alpha + beta * x) * datan + beta * y * dlog) / math.pi


def conj_poisson_segment(x0: float, x1: float, alpha: float, beta: float, z: complex) -> float:
    x, y = z.real, z.imag
    u0, u1 = x0 - x, x1 - x
    dlog_u = 0.5 * math.log((u1 * u1 + y * y) / (u0 * u0 + y * y))
    datan_u = math.atan2(u1, y) - math.atan2(u0, y)
    dlog_t = 0.5 * math.log((1 + x1 * x1) / (1 + x0 * x0))
    datan_t = math.atan(x1) - math.atan(x0)
    return (-(alpha + beta * x) * dlog_u + beta * y * datan_u
            + alpha * dlog_t - beta * datan_t) / math.pi
