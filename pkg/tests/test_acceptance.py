"""Acceptance suite: every criterion at its stated tolerance, one printed
pass/fail line each (run with ``pytest -s`` for the readable report).

Criterion 3 (the forward-of-inverse round trip) is the binding anchor for
every sign, phase and factor convention in the library.  Three statements
conflict with that anchor and with each other; each is kept here verbatim as
a strict xfail, with the inconsistency stated and a corrected companion that
passes:

* criterion 4's target: positive masses log((k+2)/k) cannot produce a
  negative transform at z = i (every factor entry is positive there), and
  the consistent mass normalisation carries a factor 1/2;
* criterion 5's target: the opposite Moebius orientation of the
  measure-to-Schur map does not round-trip (criterion 3 would then fail by
  two sign flips of the same quantity);
* criterion 8's linearization band [50, 200] per epsilon decade: b/a is odd
  under negating the potential, so the error against the linear transform is
  cubic, decaying ~1000x per decade; and criterion 8's Parseval constant:
  under the phase convention e^{2 i z t} the linearised energy identity
  carries the constant pi, not 2 (int |f^(x)|^2 dx = pi ||f||^2 for small f),
  so the log form integrates to pi ||f||^2.
"""
import math
import time

import numpy as np
import pytest

from nlft import (DiscretePotential, StepPotential, default_zgrid, figure1_data,
                  forward_continuous, forward_continuous_grid, forward_discrete,
                  forward_discrete_grid, fourier_linear, opuc_h11,
                  oscillating_step_average, periodize, roundtrip_residual,
                  schur_from_measure, schur_ratio, toeplitz_entry_sum_exact,
                  toeplitz_h11, trig_moments)
from nlft._corpus import (atom_plus_lebesgue, flagship_h_step, flagship_measure,
                          flagship_potential_density)
from nlft.converge import HatFunction

from test_inverse import random_positive_moments

TS = (math.pi, 2 * math.pi, 4 * math.pi, 8 * math.pi)


def report(num, status, detail):
    print(f"criterion {num}: {status}  [{detail}]")


def test_criterion_1_toeplitz_reconstruction():
    start = time.perf_counter()
    worst = 0.0
    for T in TS:
        mom = trig_moments(periodize(flagship_measure(), T), 40)
        h = toeplitz_h11(mom, 33)
        exact = np.array([flagship_h_step(n, T) for n in range(33)])
        worst = max(worst, float(np.max(np.abs(np.array(h.steps) / exact - 1))))
    elapsed = time.perf_counter() - start
    report(1, "PASS", f"max rel err {worst:.2e} over n <= 32, T in {{pi..8pi}}; "
                      f"{elapsed:.2f} s")
    assert worst <= 1e-8
    assert elapsed <= 5.0


def test_criterion_2_route_equivalence(moment_corpus):
    start = time.perf_counter()
    assert len(moment_corpus) >= 10
    worst = 0.0
    for name, mom in moment_corpus:
        ht = toeplitz_h11(mom, 128)
        ho = opuc_h11(mom, 128)
        diff = float(np.max(np.abs(np.array(ht.steps) - np.array(ho.steps))))
        worst = max(worst, diff)
        assert diff <= 1e-10, name
    elapsed = time.perf_counter() - start
    report(2, "PASS", f"{len(moment_corpus)} sequences, N = 128, "
                      f"max entrywise diff {worst:.2e}; {elapsed:.2f} s")
    assert elapsed <= 30.0


def test_criterion_3_round_trip_fixes_conventions():
    start = time.perf_counter()
    residual = roundtrip_residual(flagship_measure(), math.pi, 200,
                                  zgrid=default_zgrid(50))
    elapsed = time.perf_counter() - start
    report(3, "PASS", f"T = pi, N = 200, 50-point grid, residual {residual:.2e}; "
                      f"{elapsed:.2f} s")
    assert residual <= 1e-6
    assert elapsed <= 60.0


CHAIN_TARGET = -math.exp(-1) / (2 - math.exp(-1))


@pytest.mark.xfail(strict=True, reason=(
    "positive masses give a positive b/a at z = i (all factor entries are "
    "positive there), and the stated masses are twice the value consistent "
    "with the round-trip anchor; the corrected companion below passes"))
def test_criterion_4_as_stated():
    masses = tuple(math.log((k + 2) / k) for k in range(1, 51))
    got = schur_ratio(forward_discrete(DiscretePotential(0.5, masses), 1j)).value
    assert got == pytest.approx(CHAIN_TARGET, abs=1e-8)


def test_criterion_4_corrected_chain_closed_form():
    masses = tuple(0.5 * math.log((k + 2) / k) for k in range(1, 51))
    pot = DiscretePotential(0.5, masses)
    got = schur_ratio(forward_discrete(pot, 1j)).value
    want_i = -CHAIN_TARGET  # = +e^{-1}/(2 - e^{-1}), the orientation that round-trips
    err_i = abs(got - want_i)
    assert err_i <= 1e-8
    rng = np.random.default_rng(42)
    worst = 0.0
    for _ in range(20):
        z = complex(rng.uniform(-4, 4), rng.uniform(0.3, 3.0))
        s = schur_ratio(forward_discrete(pot, z)).value
        worst = max(worst, abs(s - np.exp(1j * z) / (2 - np.exp(1j * z))))
    report(4, "PASS (corrected)", f"halved masses, opposite sign: err(z=i) "
                                  f"{err_i:.2e}, 20 pts Im >= 0.3: {worst:.2e}; "
                                  f"as-stated variant xfails")
    assert worst <= 1e-6


@pytest.mark.xfail(strict=True, reason=(
    "the Moebius orientation (S-1)/(S+1) is the negative of the map that "
    "satisfies the criterion-3 round trip; the corrected companion passes"))
def test_criterion_5_as_stated():
    grid = default_zgrid(50)
    for beta in (0.5, 1.0, 2.0):
        mu = atom_plus_lebesgue(beta)
        for z in grid:
            got = schur_from_measure(mu, z).value
            assert got == pytest.approx(beta * 1j / (2 * z + beta * 1j), abs=1e-9)


def test_criterion_5_corrected_orientation():
    grid = default_zgrid(50)
    worst = 0.0
    for beta in (0.5, 1.0, 2.0):
        mu = atom_plus_lebesgue(beta)
        for z in grid:
            got = schur_from_measure(mu, z).value
            worst = max(worst, abs(got - (-beta * 1j / (2 * z + beta * 1j))))
    report(5, "PASS (corrected)", f"-beta i/(2z + beta i), 50 pts x 3 beta, "
                                  f"max err {worst:.2e}; as-stated sign xfails")
    assert worst <= 1e-9


def test_criterion_6_pointwise_convergence_rate():
    target = schur_from_measure(flagship_measure(), 1j).value
    errs = [abs(schur_from_measure(periodize(flagship_measure(), T), 1j).value - target)
            for T in TS]
    ratios = [errs[k] / errs[k + 1] for k in range(3)]
    report(6, "PASS", "errors " + ", ".join(f"{e:.4f}" for e in errs)
           + "; ratios " + ", ".join(f"{r:.3f}" for r in ratios))
    assert all(a > b for a, b in zip(errs, errs[1:]))
    assert all(1.5 <= r <= 3.0 for r in ratios)


def test_criterion_7_scaled_mass_reconstruction():
    devs = []
    for T in TS:
        rep = figure1_data(flagship_measure(), T, max(16, int(math.ceil(3 * 2 * T / math.pi)) + 4),
                           oracle=flagship_potential_density,
                           alt_oracle_note="-4*sqrt(2pi)/(1+2t) scaling variant")
        devs.append(rep.max_deviation(t_max=3.0))
        assert any("alternative oracle" in n for n in rep.notes)
    report(7, "PASS", "max |scaled - oracle| on [0,3]: "
           + ", ".join(f"{d:.4f}" for d in devs) + " (oracle -2/(1+2t))")
    assert devs[-1] <= 0.05
    assert all(a > b for a, b in zip(devs, devs[1:]))


class TestCriterion8PropertySuite:
    def test_determinant(self, rng):
        worst = 0.0
        xs = np.linspace(-8, 8, 200)
        for _ in range(100):
            n = int(rng.integers(1, 10))
            pot = DiscretePotential(float(rng.uniform(0.2, 1.2)),
                                    tuple(rng.normal(scale=0.6, size=n)))
            a_arr, b_arr = forward_discrete_grid(pot, xs)
            worst = max(worst, float(np.max(np.abs(np.abs(a_arr) ** 2
                                                   - np.abs(b_arr) ** 2 - 1))))
        report("8a", "PASS", f"determinant drift {worst:.2e} <= 1e-11 "
                             f"(100 potentials x 200-point real grid)")
        assert worst <= 1e-11

    def test_translation(self, rng):
        worst = 0.0
        for _ in range(100):
            n = int(rng.integers(1, 8))
            pot = DiscretePotential(float(rng.uniform(0.2, 1.2)),
                                    tuple(rng.normal(scale=0.6, size=n)))
            k = int(rng.integers(1, 5))
            z = complex(rng.uniform(-3, 3), rng.uniform(0.0, 2.0))
            t0 = forward_discrete(pot, z)
            t1 = forward_discrete(DiscretePotential(pot.spacing,
                                                    (0.0,) * k + pot.masses), z)
            phase = np.exp(2j * z * k * pot.spacing)
            worst = max(worst, abs(t1.b - phase * t0.b), abs(t1.a - t0.a))
        report("8b", "PASS", f"translation phase err {worst:.2e} <= 1e-12")
        assert worst <= 1e-12

    def test_scaling(self, rng):
        worst = 0.0
        for _ in range(100):
            k = int(rng.integers(1, 4))
            pot = StepPotential(tuple(np.cumsum(rng.uniform(0.2, 1.0, size=k))),
                                tuple(rng.uniform(-0.8, 0.8, size=k)))
            afac = float(rng.uniform(0.4, 2.5))
            scaled = StepPotential(tuple(b / afac for b in pot.breakpoints),
                                   tuple(afac * v for v in pot.values))
            z = complex(rng.uniform(-3, 3), rng.uniform(0.0, 2.0))
            lhs = forward_continuous(scaled, z)
            rhs = forward_continuous(pot, z / afac)
            worst = max(worst, abs(lhs.a - rhs.a), abs(lhs.b - rhs.b))
        report("8c", "PASS", f"time-scaling err {worst:.2e} <= 1e-9")
        assert worst <= 1e-9

    @pytest.mark.xfail(strict=True, reason=(
        "the error against the linear transform is cubic for real "
        "potentials (b/a is odd in the potential), so the per-decade factor "
        "is ~1000, outside [50, 200]; the corrected band below passes"))
    def test_linearization_as_stated(self, rng):
        ratios = self._linearization_ratios(rng, 10)
        assert all(50 <= r <= 200 for r in ratios)

    def test_linearization_corrected_band(self, rng):
        ratios = self._linearization_ratios(rng, 100)
        report("8d", "PASS (corrected)", f"decade factors in "
               f"[{min(ratios):.0f}, {max(ratios):.0f}] (cubic order); "
               f"as-stated band [50, 200] xfails")
        assert all(500 <= r <= 2000 for r in ratios)

    @staticmethod
    def _linearization_ratios(rng, count):
        grid = np.linspace(-3, 3, 41)
        ratios = []
        for _ in range(count):
            g = DiscretePotential(0.5, tuple(rng.normal(scale=1.0, size=8)))
            errs = []
            for eps in (1e-2, 1e-3):
                pot = DiscretePotential(g.spacing, tuple(eps * c for c in g.masses))
                errs.append(max(abs(schur_ratio(forward_discrete(pot, x)).value
                                    - eps * fourier_linear(g, x)) for x in grid))
            ratios.append(errs[0] / errs[1])
        return ratios

    def test_riemann_lebesgue(self, rng):
        worst = -math.inf
        for _ in range(100):
            n = int(rng.integers(1, 10))
            pot = DiscretePotential(float(rng.uniform(0.2, 1.2)),
                                    tuple(rng.normal(scale=0.8, size=n)))
            x = float(rng.uniform(-10, 10))
            s = schur_ratio(forward_discrete(pot, x)).value
            worst = max(worst, abs(s) - math.tanh(pot.l1_norm()))
        report("8e", "PASS", f"|b/a| - tanh(sum |c|) <= {worst:.2e} <= 1e-12")
        assert worst <= 1e-12

    @staticmethod
    def _log_abs_a_integral(pot):
        # int_R log|a(x)| dx by trapezoid + Richardson for the C/x tail
        X = 250.0
        dx = min(0.02, math.pi / (40 * pot.length))
        xs = np.arange(0.0, 2 * X + dx, dx)
        a_arr, _ = forward_continuous_grid(pot, xs)
        vals = np.log(np.abs(a_arr))
        n1 = int(round(X / dx))
        I1 = 2 * np.trapezoid(vals[: n1 + 1], dx=dx)
        I2 = 2 * np.trapezoid(vals, dx=dx)
        return I2 + (I2 - I1)

    @pytest.mark.xfail(strict=True, reason=(
        "with the phase convention e^{2 i z t} the linearised energy "
        "identity carries the constant pi (int |f^|^2 = pi ||f||^2), so "
        "int -log(1 - |f^|^2) = pi ||f||^2, not 2 ||f||^2; the corrected "
        "constant below passes"))
    def test_parseval_as_stated(self, rng):
        pot, lhs, rhs = self._parseval_instance(rng)
        assert rhs == pytest.approx(2 * pot.norm_l2_squared(), rel=1e-3)

    def _parseval_instance(self, rng):
        while True:
            k = int(rng.integers(1, 4))
            pot = StepPotential(tuple(np.cumsum(rng.uniform(0.3, 1.2, size=k))),
                                tuple(rng.uniform(-0.7, 0.7, size=k)))
            lhs = math.pi * pot.norm_l2_squared()
            if lhs > 1e-3:
                return pot, lhs, 2 * self._log_abs_a_integral(pot)

    def test_parseval_corrected_constant(self, rng):
        worst = 0.0
        for _ in range(100):
            pot, lhs, rhs = self._parseval_instance(rng)
            worst = max(worst, abs(rhs - lhs) / lhs)
        report("8f", "PASS (corrected)", f"pi ||f||^2 identity, max rel err "
               f"{worst:.2e} <= 1e-3; as-stated constant 2 xfails")
        assert worst <= 1e-3

    def test_toeplitz_exact_inverse_oracle(self, rng):
        worst = 0.0
        for _ in range(100):
            mom = random_positive_moments(rng)
            sums = np.cumsum(toeplitz_h11(mom, 8).steps)
            n = int(rng.integers(0, 8))
            worst = max(worst, abs(sums[n] - toeplitz_entry_sum_exact(mom, n)))
        report("8g", "PASS", f"entry-sum vs exact rational inverse: {worst:.2e} "
               f"<= 1e-12 (orders <= 8)")
        assert worst <= 1e-12


def test_criterion_9_weakstar_counterexample():
    hat = HatFunction.triangle(0.0, 1.0, 2.0)
    breaks, values = [0.0, 0.5, 1.0], [1.0, 0.25]
    T = 1.0e6 + 0.25
    avg = oscillating_step_average(breaks, values, T, hat)
    lavg = oscillating_step_average(breaks, values, T, hat, transform=math.log)
    report(9, "PASS", f"<f^T, hat> = {avg:.8f} (5/8), <log f^T, hat> = "
           f"{lavg:.8f} (-log 2 = {-math.log(2):.8f}); log(5/8) = "
           f"{math.log(5 / 8):.8f} differs")
    assert avg == pytest.approx(5 / 8, abs=1e-6)
    assert lavg == pytest.approx(-math.log(2), abs=1e-6)
    assert abs(lavg - math.log(avg)) > 0.2
