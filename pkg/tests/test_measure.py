import json
import math

import numpy as np
import pytest

from nlft import (AcPart, DomainError, Measure, SpecDocumentError, measure_from_spec,
                  measure_to_spec, periodize, pw_diagnostic, trig_moments)
from nlft._corpus import SQRT_2PI, atom_plus_lebesgue, flagship_measure

from conftest import trig_moment_quad_oracle


class TestFromSpec:
    def test_lebesgue_document(self):
        mu = measure_from_spec('{"ac": {"kind": "constant", "value": 1.0}, '
                               '"atoms": [], "period": null}')
        assert mu.ac.kind == "constant" and mu.ac.value == 1.0
        assert mu.atoms == () and mu.period is None

    def test_flagship_document(self):
        doc = {"ac": {"kind": "constant", "value": 0.3989422804014327},
               "atoms": [{"x": 0, "mass": 2.5066282746310002}], "period": None}
        mu = measure_from_spec(doc)
        assert mu.atoms == ((0.0, 2.5066282746310002),)
        assert mu.ac.value == pytest.approx(1 / SQRT_2PI, abs=1e-12)

    def test_negative_mass_rejected_with_path(self):
        with pytest.raises(SpecDocumentError, match=r"atoms\[0\].mass: negative mass"):
            measure_from_spec({"ac": {"kind": "none"}, "atoms": [{"x": 0, "mass": -1}]})

    def test_negative_density_rejected(self):
        with pytest.raises(SpecDocumentError, match="ac.value: negative density"):
            measure_from_spec({"ac": {"kind": "constant", "value": -0.5}, "atoms": []})

    def test_malformed_json(self):
        with pytest.raises(SpecDocumentError, match="malformed JSON"):
            measure_from_spec("{not json")

    def test_atom_outside_periodic_window(self):
        with pytest.raises(SpecDocumentError, match=r"atoms\[0\].x: atom outside"):
            measure_from_spec({"ac": {"kind": "none"},
                               "atoms": [{"x": 1.5, "mass": 1.0}], "period": 2.0})

    def test_table_validation(self):
        with pytest.raises(SpecDocumentError, match=r"ac.ys\[1\]: negative density"):
            measure_from_spec({"ac": {"kind": "table", "xs": [0, 1], "ys": [0, -1]},
                               "atoms": []})
        with pytest.raises(SpecDocumentError, match=r"ac.xs\[1\]: xs must be strictly"):
            measure_from_spec({"ac": {"kind": "table", "xs": [1, 1], "ys": [0, 0]},
                               "atoms": []})

    def test_scientific_notation_accepted(self):
        mu = measure_from_spec('{"ac": {"kind": "constant", "value": 1e-3}, '
                               '"atoms": [{"x": 1.0e1, "mass": 2E-2}]}')
        assert mu.atoms == ((10.0, 0.02),)

    def test_roundtrip_through_document(self):
        mu = periodize(flagship_measure(), math.pi)
        again = measure_from_spec(json.dumps(measure_to_spec(mu)))
        assert again == mu


class TestMeasureInvariants:
    def test_atoms_sorted_and_merged(self):
        mu = Measure(atoms=((2.0, 1.0), (-1.0, 0.5), (2.0, 0.25)))
        assert mu.atoms == ((-1.0, 0.5), (2.0, 1.25))

    def test_nonpositive_mass_rejected(self):
        with pytest.raises(DomainError):
            Measure(atoms=((0.0, 0.0),))

    def test_poisson_norm_finite_on_corpus(self, measures):
        for name, mu in measures:
            assert math.isfinite(mu.poisson_norm()), name

    def test_mass_half_open_window(self):
        mu = Measure(atoms=((0.0, 1.0), (1.0, 2.0)))
        assert mu.mass(0.0, 1.0) == 1.0
        assert mu.mass(0.0, 1.0 + 1e-12) == 3.0

    def test_periodic_mass_repeats(self):
        mu = Measure(atoms=((0.0, 1.0),), period=2.0)
        assert mu.mass(-1.0, 5.0) == 3.0  # atoms at 0, 2, 4


class TestPeriodize:
    def test_atom_plus_lebesgue(self):
        muT = periodize(atom_plus_lebesgue(0.7), math.pi)
        assert muT.period == pytest.approx(2 * math.pi)
        assert muT.ac.value == 1.0
        assert muT.atoms == ((0.0, 0.7 * math.pi),)

    def test_atom_outside_window_discarded(self):
        muT = periodize(Measure(atoms=((1.5, 1.0),)), 1.0)
        assert muT.atoms == () and muT.period == 2.0

    def test_edge_atom_at_minus_T_kept_plus_T_dropped(self):
        muT = periodize(Measure(atoms=((-1.0, 1.0), (1.0, 2.0))), 1.0)
        assert muT.atoms == ((-1.0, 1.0),)

    def test_flagship_periodization(self):
        muT = periodize(flagship_measure(), 3.0)
        assert muT.atoms == ((0.0, SQRT_2PI),)
        assert muT.ac.value == pytest.approx(1 / SQRT_2PI)

    def test_requires_positive_T(self):
        with pytest.raises(DomainError):
            periodize(flagship_measure(), 0.0)

    def test_table_clipped_to_window(self):
        mu = Measure(ac=AcPart(kind="table", xs=(-3.0, 0.0, 3.0), ys=(0.0, 1.0, 0.0)))
        muT = periodize(mu, 1.0)
        assert muT.ac.xs[0] == -1.0 and muT.ac.xs[-1] == 1.0
        assert muT.ac.density(0.5) == pytest.approx(mu.ac.density(0.5))

    def test_content_invariance_of_moments(self):
        # adding mass strictly outside [-T, T) cannot change the periodization
        base = atom_plus_lebesgue(1.0)
        extended = Measure(ac=base.ac, atoms=base.atoms + ((7.3, 4.2),))
        m1 = trig_moments(periodize(base, math.pi), 12)
        m2 = trig_moments(periodize(extended, math.pi), 12)
        np.testing.assert_allclose(m1.coeffs, m2.coeffs, rtol=0, atol=1e-15)


class TestTrigMoments:
    def test_lebesgue_any_half_period(self):
        for T in (0.7, math.pi, 5.0):
            mom = trig_moments(periodize(Measure(ac=AcPart("constant", 1.0)), T), 6)
            np.testing.assert_allclose(mom.coeffs, [1.0] + [0.0] * 6, atol=1e-15)

    @pytest.mark.parametrize("T", [math.pi, 2 * math.pi, 4 * math.pi])
    def test_flagship_closed_form(self, T):
        # one atom of mass sqrt(2pi) at 0 plus constant density 1/sqrt(2pi):
        # a_0 = (sqrt(2pi) + 2T/sqrt(2pi))/(2T), a_n = sqrt(2pi)/T
        muT = periodize(flagship_measure(), T)
        mom = trig_moments(muT, 8)
        assert mom.coeffs[0] == pytest.approx((SQRT_2PI + 2 * T / SQRT_2PI) / (2 * T),
                                              abs=1e-14)
        np.testing.assert_allclose(mom.coeffs[1:], [SQRT_2PI / T] * 8, atol=1e-14)
        for n in range(4):
            assert mom.coeffs[n] == pytest.approx(trig_moment_quad_oracle(muT, n),
                                                  abs=1e-10)

    def test_pure_atom_moments(self):
        muT = Measure(atoms=((0.0, 2 * math.pi),), period=2 * math.pi)
        mom = trig_moments(muT, 5)
        np.testing.assert_allclose(mom.coeffs, [1.0] + [2.0] * 5, atol=1e-15)

    def test_table_density_against_quadrature(self):
        mu = Measure(ac=AcPart(kind="table", xs=(-2.0, 0.0, 2.0), ys=(0.0, 1.0, 0.0)))
        muT = periodize(mu, 3.0)
        mom = trig_moments(muT, 6)
        for n in range(7):
            assert mom.coeffs[n] == pytest.approx(trig_moment_quad_oracle(muT, n),
                                                  abs=1e-11)

    def test_linearity(self):
        a = periodize(flagship_measure(), math.pi)
        b = periodize(Measure(ac=AcPart("constant", 0.5), atoms=((1.0, 0.3), (-1.0, 0.3))),
                      math.pi)
        combined = Measure(ac=AcPart("constant", a.ac.value + b.ac.value),
                           atoms=a.atoms + b.atoms, period=a.period)
        lhs = trig_moments(combined, 10)
        rhs = trig_moments(a, 10) + trig_moments(b, 10)
        np.testing.assert_allclose(lhs.coeffs, rhs.coeffs, atol=1e-12)

    def test_total_mass_recovered_from_a0(self, measures):
        for name, mu in measures:
            if not mu.is_periodic:
                mu = periodize(mu, 2.5)
            mom = trig_moments(mu, 0)
            assert mom.coeffs[0] * 2 * mu.half_period == pytest.approx(
                mu.window_mass(), abs=1e-10), name

    def test_edge_atom_self_paired(self):
        muT = Measure(atoms=((-2.0, 1.0),), period=4.0)
        mom = trig_moments(muT, 3)  # must not raise: -T pairs with its image at +T
        assert mom.coeffs[0] == pytest.approx(0.25)

    def test_rejects_asymmetric(self):
        muT = Measure(atoms=((0.5, 1.0),), period=4.0)
        with pytest.raises(DomainError, match="even"):
            trig_moments(muT, 3)

    def test_rejects_nonperiodic(self):
        with pytest.raises(DomainError, match="periodic"):
            trig_moments(flagship_measure(), 3)


class TestPwDiagnostic:
    def test_lebesgue_consistent(self):
        rep = pw_diagnostic(Measure(ac=AcPart("constant", 1.0)), (-10, 10), 0.5)
        assert rep.sup_unit_interval_mass == pytest.approx(1.0)
        assert rep.verdict == "consistent with PW"
        assert rep.packing_delta > 0

    def test_single_atom_per_period_fails_support(self):
        mu = Measure(atoms=((0.0, 1.0),), period=2.0)
        rep = pw_diagnostic(mu, (-10, 10), 0.5)
        assert rep.verdict == "fails locally infinite support"
        assert rep.locally_infinite is False and rep.atoms_per_period == 1

    def test_growing_masses_fail_boundedness(self):
        atoms = tuple((float(n), float(abs(n))) for n in range(-12, 13) if n != 0)
        rep = pw_diagnostic(Measure(atoms=atoms), (-10, 10), 0.5)
        assert rep.verdict == "fails boundedness"
        assert rep.growing

    def test_periodic_with_density_consistent(self):
        rep = pw_diagnostic(periodize(flagship_measure(), math.pi), (-20, 20), 0.5)
        assert rep.locally_infinite is True
        assert rep.verdict == "consistent with PW"

    def test_small_window_rejected(self):
        with pytest.raises(DomainError):
            pw_diagnostic(Measure(ac=AcPart("constant", 1.0)), (0, 5), 0.5)
