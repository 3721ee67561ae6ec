"""Positive measures on the real line and their trigonometric moments.

A measure is an absolutely continuous part (none, a constant density, or a
piecewise-linear table) plus finitely many atoms, optionally repeated with
period ``P = 2T``.  Periodic measures are described by their content on the
half-open base window ``[-T, T)``; the point ``-T`` belongs to the window,
``+T`` does not, so periodic extension never double-counts an edge atom.

Trigonometric moments of an even ``2T``-periodic measure follow the cosine
normalisation

    a_0 = mu([-T, T)) / (2T),
    a_n = (1/T) * integral_{-T}^{T} cos(n pi x / T) dmu(x),   n >= 1,

so that formally ``dmu(x) = sum_n a_n cos(n pi x / T) dx``.  Sine moments
vanish for even measures and are not represented.
"""
from __future__ import annotations

import json
import math
from bisect import bisect_left
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, SpecDocumentError

EVENNESS_TOL = 1e-9


@dataclass(frozen=True)
class AcPart:
    """Absolutely continuous part: ``none``, ``constant`` or a linear table.

    A table is interpreted piecewise-linearly between its nodes and as zero
    outside the node range.
    """

    kind: str = "none"
    value: float = 0.0
    xs: tuple[float, ...] = ()
    ys: tuple[float, ...] = ()

    def __post_init__(self):
        if self.kind not in ("none", "constant", "table"):
            raise DomainError(f"unknown ac kind {self.kind!r}")
        if self.kind == "constant" and (not math.isfinite(self.value) or self.value < 0):
            raise DomainError("constant density must be finite and >= 0")
        if self.kind == "table":
            if len(self.xs) != len(self.ys) or len(self.xs) < 2:
                raise DomainError("table needs matching xs/ys with >= 2 nodes")
            if any(b <= a for a, b in zip(self.xs, self.xs[1:])):
                raise DomainError("table xs must be strictly increasing")
            if any(not math.isfinite(y) or y < 0 for y in self.ys):
                raise DomainError("table densities must be finite and >= 0")

    @property
    def is_zero(self) -> bool:
        return self.kind == "none" or (self.kind == "constant" and self.value == 0.0) \
            or (self.kind == "table" and all(y == 0.0 for y in self.ys))

    def density(self, x: float) -> float:
        if self.kind == "none":
            return 0.0
        if self.kind == "constant":
            return self.value
        return float(np.interp(x, self.xs, self.ys, left=0.0, right=0.0))

    def segments(self, lo: float = -math.inf, hi: float = math.inf):
        """Linear pieces ``(x0, x1, alpha, beta)`` with density alpha + beta*t,
        clipped to [lo, hi].  Constant densities yield one piece on [lo, hi]."""
        if self.kind == "none":
            return
        if self.kind == "constant":
            if self.value != 0.0 and lo < hi:
                if not (math.isfinite(lo) and math.isfinite(hi)):
                    raise DomainError("constant density has unbounded support")
                yield lo, hi, self.value, 0.0
            return
        for x0, x1, y0, y1 in zip(self.xs, self.xs[1:], self.ys, self.ys[1:]):
            a, b = max(x0, lo), min(x1, hi)
            if a < b:
                beta = (y1 - y0) / (x1 - x0)
                alpha = y0 - beta * x0
                yield a, b, alpha, beta

    def integral(self, a: float, b: float) -> float:
        if a >= b or self.kind == "none":
            return 0.0
        if self.kind == "constant":
            return self.value * (b - a)
        tot = 0.0
        for x0, x1, al, be in self.segments(a, b):
            tot += al * (x1 - x0) + be * (x1 * x1 - x0 * x0) / 2
        return tot

    def support(self) -> tuple[float, float] | None:
        """Interval hull of the support, None if empty."""
        if self.is_zero:
            return None
        if self.kind == "constant":
            return (-math.inf, math.inf)
        return (self.xs[0], self.xs[-1])


@dataclass(frozen=True)
class Measure:
    """Positive measure: ac part + atoms, optionally ``2T``-periodic.

    ``atoms`` is sorted by position with exact duplicates merged.  For a
    periodic measure the atoms and the ac description refer to the base
    window ``[-T, T)`` and repeat with period ``P = 2T``.
    """

    ac: AcPart = field(default_factory=AcPart)
    atoms: tuple[tuple[float, float], ...] = ()
    period: float | None = None

    def __post_init__(self):
        for x, m in self.atoms:
            if not (math.isfinite(x) and math.isfinite(m)):
                raise DomainError("atom position/mass must be finite")
            if m <= 0:
                raise DomainError("atom masses must be strictly positive")
        merged: list[list[float]] = []
        for x, m in sorted(self.atoms):
            if merged and merged[-1][0] == x:
                merged[-1][1] += m
            else:
                merged.append([x, m])
        object.__setattr__(self, "atoms", tuple((x, m) for x, m in merged))
        if self.period is not None:
            if not (math.isfinite(self.period) and self.period > 0):
                raise DomainError("period must be a positive real")
            T = self.period / 2
            for x, _ in self.atoms:
                if not (-T <= x < T):
                    raise DomainError(f"atom at {x} outside base window [-T, T), T = {T}")

    # -- basic queries ---------------------------------------------------

    @property
    def is_periodic(self) -> bool:
        return self.period is not None

    @property
    def half_period(self) -> float:
        if self.period is None:
            raise DomainError("measure is not periodic")
        return self.period / 2

    def window_mass(self) -> float:
        """mu([-T, T)) of a periodic measure."""
        T = self.half_period
        return self.ac.integral(-T, T) + sum(m for _, m in self.atoms)

    def mean_density(self) -> float:
        """Average mass per unit length at large scales.

        Periodic: window mass over the period.  Non-periodic: the constant
        density value (atoms and compactly supported tables average out to 0).
        """
        if self.is_periodic:
            return self.window_mass() / self.period
        if self.ac.kind == "constant":
            return self.ac.value
        return 0.0

    def mass(self, a: float, b: float) -> float:
        """Mass of the half-open interval [a, b)."""
        if b <= a:
            return 0.0
        if not self.is_periodic:
            pos = [x for x, _ in self.atoms]
            i0, i1 = bisect_left(pos, a), bisect_left(pos, b)
            return self.ac.integral(a, b) + sum(m for _, m in self.atoms[i0:i1])
        P, T = self.period, self.half_period
        tot = 0.0
        k0 = math.floor((a + T) / P)
        k1 = math.floor((b + T) / P)
        for k in range(k0, k1 + 1):
            lo, hi = max(a, k * P - T), min(b, k * P + T)
            if hi > lo:
                tot += self.ac.integral(lo - k * P, hi - k * P)
            for x, m in self.atoms:
                if a <= x + k * P < b:
                    tot += m
        return tot

    def poisson_norm(self) -> float:
        """integral of dmu(t)/(1+t^2); finite for every representable measure.

        Periodic orbits sum in closed form through
        sum_m 1/(1 + (t + mP)^2) = Im (pi/P) cot(pi (t - i)/P).
        """
        if self.is_periodic:
            from ._kernels import cot
            P = self.period
            orbit = lambda t: ((math.pi / P) * cot(math.pi * (t - 1j) / P)).imag
            tot = sum(m * orbit(x) for x, m in self.atoms)
            if self.ac.kind == "constant":
                tot += self.ac.value * math.pi
            else:
                T = self.half_period
                for x0, x1, al, be in self.ac.segments(-T, T):
                    n = max(8, int(40 * (x1 - x0)))
                    xs = np.linspace(x0, x1, n)
                    tot += float(np.trapezoid([(al + be * x) * orbit(x) for x in xs],
                                              xs))
            return tot
        tot = sum(m / (1 + x * x) for x, m in self.atoms)
        if self.ac.kind == "constant":
            tot += self.ac.value * math.pi
        else:
            for x0, x1, al, be in self.ac.segments():
                tot += al * (math.atan(x1) - math.atan(x0)) \
                    + be / 2 * math.log((1 + x1 * x1) / (1 + x0 * x0))
        return tot

    def is_even(self, tol: float = EVENNESS_TOL) -> bool:
        """Evenness of the measure (of its periodic extension when periodic).

        Atoms must come in +-x pairs with masses matching to ``tol``; an atom
        at -T is its own periodic mirror.  Densities are compared at mirrored
        sample points.
        """
        T = self.half_period if self.is_periodic else None
        unpaired = list(self.atoms)
        while unpaired:
            x, m = unpaired.pop()
            if x == 0.0 or (T is not None and abs(x + T) <= tol):
                continue
            for i, (x2, m2) in enumerate(unpaired):
                if abs(x2 + x) <= tol:
                    if abs(m2 - m) > tol:
                        return False
                    unpaired.pop(i)
                    break
            else:
                return False
        if self.ac.kind == "table":
            pts = np.asarray(self.ac.xs)
            dens = np.array([self.ac.density(x) for x in pts])
            mirrored = np.array([self.ac.density(-x) for x in pts])
            if np.max(np.abs(dens - mirrored)) > tol:
                return False
        return True


# -- construction from documents ------------------------------------------


def _require(cond: bool, path: str, msg: str):
    if not cond:
        raise SpecDocumentError(path, msg)


def measure_from_spec(document: str | bytes | dict) -> Measure:
    """Build a Measure from its JSON document.

    Schema::

        {"ac": {"kind": "none"|"constant"|"table",
                "value"?: number, "xs"?: [number], "ys"?: [number]},
         "atoms": [{"x": number, "mass": number}],
         "period": number|null}

    Violations are rejected with the JSON path of the offending field.
    """
    if isinstance(document, (str, bytes)):
        try:
            doc = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SpecDocumentError("$", f"malformed JSON: {exc}") from exc
    else:
        doc = document
    _require(isinstance(doc, dict), "$", "document must be a JSON object")

    ac_doc = doc.get("ac", {"kind": "none"})
    _require(isinstance(ac_doc, dict), "ac", "must be an object")
    kind = ac_doc.get("kind")
    _require(kind in ("none", "constant", "table"), "ac.kind",
             "must be one of 'none', 'constant', 'table'")
    if kind == "constant":
        val = ac_doc.get("value")
        _require(isinstance(val, (int, float)) and math.isfinite(val),
                 "ac.value", "must be a finite number")
        _require(val >= 0, "ac.value", "negative density")
        ac = AcPart(kind="constant", value=float(val))
    elif kind == "table":
        xs, ys = ac_doc.get("xs"), ac_doc.get("ys")
        _require(isinstance(xs, list) and isinstance(ys, list), "ac.xs", "xs/ys must be arrays")
        _require(len(xs) == len(ys) and len(xs) >= 2, "ac.xs",
                 "xs and ys must have equal length >= 2")
        for i, (x, y) in enumerate(zip(xs, ys)):
            _require(isinstance(x, (int, float)) and math.isfinite(x), f"ac.xs[{i}]",
                     "must be a finite number")
            _require(isinstance(y, (int, float)) and math.isfinite(y), f"ac.ys[{i}]",
                     "must be a finite number")
            _require(y >= 0, f"ac.ys[{i}]", "negative density")
        for i in range(len(xs) - 1):
            _require(xs[i] < xs[i + 1], f"ac.xs[{i + 1}]", "xs must be strictly increasing")
        ac = AcPart(kind="table", xs=tuple(float(x) for x in xs),
                    ys=tuple(float(y) for y in ys))
    else:
        ac = AcPart()

    atoms_doc = doc.get("atoms", [])
    _require(isinstance(atoms_doc, list), "atoms", "must be an array")
    atoms = []
    for i, entry in enumerate(atoms_doc):
        _require(isinstance(entry, dict), f"atoms[{i}]", "must be an object")
        x, m = entry.get("x"), entry.get("mass")
        _require(isinstance(x, (int, float)) and math.isfinite(x), f"atoms[{i}].x",
                 "must be a finite number")
        _require(isinstance(m, (int, float)) and math.isfinite(m), f"atoms[{i}].mass",
                 "must be a finite number")
        _require(m > 0, f"atoms[{i}].mass", "negative mass" if m < 0 else "zero mass")
        atoms.append((float(x), float(m)))

    period = doc.get("period")
    if period is not None:
        _require(isinstance(period, (int, float)) and math.isfinite(period) and period > 0,
                 "period", "must be a positive number or null")
        T = float(period) / 2
        for i, (x, _) in enumerate(atoms):
            _require(-T <= x < T, f"atoms[{i}].x",
                     f"atom outside base window [-T, T) for periodic input, T = {T}")
        period = float(period)

    return Measure(ac=ac, atoms=tuple(atoms), period=period)


def measure_to_spec(mu: Measure) -> dict:
    """Inverse of measure_from_spec (JSON-serialisable dict)."""
    if mu.ac.kind == "none":
        ac = {"kind": "none"}
    elif mu.ac.kind == "constant":
        ac = {"kind": "constant", "value": mu.ac.value}
    else:
        ac = {"kind": "table", "xs": list(mu.ac.xs), "ys": list(mu.ac.ys)}
    return {"ac": ac,
            "atoms": [{"x": x, "mass": m} for x, m in mu.atoms],
            "period": mu.period}


# -- periodization ---------------------------------------------------------


def periodize(mu: Measure, T: float) -> Measure:
    """The 2T-periodic measure agreeing with ``mu`` on [-T, T).

    The ac description is restricted to the window; atoms outside [-T, T)
    are discarded.
    """
    if mu.is_periodic:
        raise DomainError("measure is already periodic")
    if not (math.isfinite(T) and T > 0):
        raise DomainError("T must be a positive real")
    if mu.ac.kind == "table":
        xs = [x for x in mu.ac.xs if -T < x < T]
        grid = sorted({-T, *xs, T})
        lo, hi = mu.ac.support() or (0.0, 0.0)
        grid = [x for x in grid if lo <= x <= hi] or [-T, T]
        if len(grid) < 2:
            ac = AcPart()
        else:
            ys = [mu.ac.density(x) for x in grid]
            ac = AcPart(kind="table", xs=tuple(grid), ys=tuple(ys)) \
                if any(y != 0 for y in ys) else AcPart()
    else:
        ac = mu.ac
    atoms = tuple((x, m) for x, m in mu.atoms if -T <= x < T)
    return Measure(ac=ac, atoms=atoms, period=2 * T)


# -- trigonometric moments --------------------------------------------------


@dataclass(frozen=True)
class TrigMoments:
    """Cosine moments a_0 ... a_N of an even 2T-periodic measure."""

    half_period: float
    coeffs: tuple[float, ...]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __add__(self, other: "TrigMoments") -> "TrigMoments":
        if other.half_period != self.half_period:
            raise DomainError("cannot add moments with different half-periods")
        n = min(len(self.coeffs), len(other.coeffs))
        return TrigMoments(self.half_period,
                           tuple(a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])))


def _cos_linear_integral(x0: float, x1: float, alpha: float, beta: float, w: float) -> float:
    # integral of (alpha + beta t) cos(w t) over [x0, x1]
    s1, c1 = math.sin(w * x1), math.cos(w * x1)
    s0, c0 = math.sin(w * x0), math.cos(w * x0)
    return ((alpha + beta * x1) * s1 - (alpha + beta * x0) * s0) / w \
        + beta * (c1 - c0) / (w * w)


def trig_moments(mu: Measure, n_max: int, evenness_tol: float = EVENNESS_TOL) -> TrigMoments:
    """Moments a_0 ... a_{n_max} of an even periodic measure.

    Atoms and the piecewise-linear/constant densities are integrated in
    closed form, so the results are exact up to rounding.
    """
    if not mu.is_periodic:
        raise DomainError("trig_moments requires a periodic measure")
    if not mu.is_even(evenness_tol):
        raise DomainError("trig_moments requires an even measure")
    if n_max < 0:
        raise DomainError("n_max must be >= 0")
    T = mu.half_period
    a = np.zeros(n_max + 1)
    a[0] = mu.window_mass() / (2 * T)
    for n in range(1, n_max + 1):
        w = n * math.pi / T
        s = sum(m * math.cos(w * x) for x, m in mu.atoms)
        if mu.ac.kind == "table":
            for x0, x1, al, be in mu.ac.segments(-T, T):
                s += _cos_linear_integral(x0, x1, al, be, w)
        # constant density integrates to zero against every cos(n pi x / T)
        a[n] = s / T
    return TrigMoments(T, tuple(a))


# -- sampling diagnostics ----------------------------------------------------


@dataclass(frozen=True)
class PwDiagnostic:
    """Advisory report on sampling-measure behaviour over a window.

    ``verdict`` is one of "consistent with PW", "fails boundedness",
    "fails locally infinite support", "fails interval density".  The report
    is a heuristic aid, never a hard gate.
    """

    window: tuple[float, float]
    sup_unit_interval_mass: float
    sup_half_window: float
    growing: bool
    locally_infinite: bool | None
    atoms_per_period: int | None
    packing_delta: float
    packing_count: int
    required_count: float
    verdict: str
    notes: tuple[str, ...]


def _unit_interval_sup(mu: Measure, w0: float, w1: float) -> float:
    ks = range(math.ceil(w0), math.floor(w1))
    return max((mu.mass(k, k + 1) for k in ks), default=0.0)


def _greedy_packing_count(mu: Measure, w0: float, w1: float, delta: float) -> int:
    """Greedy count of disjoint intervals I with mu(I) > delta, |I| > delta,
    each intersecting [w0, w1]."""
    count = 0
    x = w0
    guard = 0
    while x < w1 and guard < 100000:
        guard += 1
        lo, hi = x, x + max(delta, 1e-9)
        # grow hi until enough mass (doubling), then shrink by bisection
        while mu.mass(x, hi) <= delta and hi < w1 + 10 * (w1 - w0):
            lo, hi = hi, x + 2 * (hi - x)
        if mu.mass(x, hi) <= delta:
            break
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if mu.mass(x, mid) > delta:
                hi = mid
            else:
                lo = mid
        end = max(hi * (1 + 1e-12) + 1e-300, x + delta * (1 + 1e-12))
        count += 1
        x = end
    return count


def pw_diagnostic(mu: Measure, window: tuple[float, float], d: float) -> PwDiagnostic:
    """Heuristic sampling diagnostics on ``window`` with target density ``d``.

    Reports (i) the sup of masses of integer-aligned unit intervals in the
    window, (ii) for periodic measures a locally-infinite-support verdict,
    (iii) the largest delta for which at least d*|window| disjoint
    (mass, length) > delta intervals meet the window (greedy packing).
    """
    w0, w1 = float(window[0]), float(window[1])
    if w1 - w0 < 10:
        raise DomainError("window length must be >= 10")
    notes: list[str] = []

    sup_full = _unit_interval_sup(mu, w0, w1)
    mid = 0.5 * (w0 + w1)
    half = 0.25 * (w1 - w0)
    sup_half = _unit_interval_sup(mu, mid - half, mid + half)
    growing = sup_full > 1.5 * sup_half + 1e-12 and sup_full > 0

    locally_infinite: bool | None = None
    atoms_per_period: int | None = None
    if mu.is_periodic:
        atoms_per_period = len(mu.atoms)
        locally_infinite = not mu.ac.is_zero
        if not locally_infinite:
            notes.append(f"finite support per period ({atoms_per_period} atoms)")

    required = d * (w1 - w0)
    best_delta, best_count = 0.0, 0
    total = mu.mass(w0, w1)
    start = max(total / max(required, 1.0), 1e-6)
    for j in range(60):
        delta = start * 0.5 ** j
        if delta <= 0:
            break
        cnt = _greedy_packing_count(mu, w0, w1, delta)
        if cnt >= required:
            best_delta, best_count = delta, cnt
            break

    if mu.is_periodic and locally_infinite is False:
        verdict = "fails locally infinite support"
    elif growing:
        verdict = "fails boundedness"
        notes.append(f"unit-interval masses grow with the window "
                     f"({sup_half:g} -> {sup_full:g})")
    elif best_delta == 0.0 and total > 0:
        verdict = "fails interval density"
    else:
        verdict = "consistent with PW"

    return PwDiagnostic(
        window=(w0, w1),
        sup_unit_interval_mass=sup_full,
        sup_half_window=sup_half,
        growing=growing,
        locally_infinite=locally_infinite,
        atoms_per_period=atoms_per_period,
        packing_delta=best_delta,
        packing_count=best_count,
        required_count=required,
        verdict=verdict,
        notes=tuple(notes),
    )
