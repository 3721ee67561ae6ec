"""Forward and inverse non-linear Fourier transforms of half-line systems.

The library models positive measures on the line, evaluates their Schwarz /
Poisson transforms, runs the transfer-matrix forward transform of discrete
and step potentials, reconstructs Hamiltonian steps and potentials from
trigonometric moments (Toeplitz and orthogonal-polynomial routes), and
orchestrates the periodization experiments connecting the two.
"""
from .converge import (ConvergenceRow, Figure1Report, Figure1Row, HatFunction,
                       convergence_sweep, default_zgrid, error_ratios, figure1_data,
                       oscillating_step_average, periodized_schur, roundtrip_residual,
                       weakstar_h11_check)
from .errors import (DomainError, InputError, NlftError, NotPositiveDefiniteError,
                     NumericalError, QuadratureError, ResonanceError,
                     SpecDocumentError)
from .forward import (DiscretePotential, StepPotential, TransferMatrix,
                      forward_continuous, forward_continuous_grid, forward_discrete,
                      forward_discrete_grid, fourier_linear, magnitude_a_from_schur,
                      point_mass_factor, potential_from_spec, potential_to_spec,
                      propagate_matrix, schur_ratio, step_propagator)
from .herglotz import (ClarkIdentityReport, HerglotzValue, SchurValue,
                       conjugate_poisson_integral, poisson_integral,
                       schur_from_measure, schwarz_transform,
                       validate_clark_identity)
from .inverse import (StepHamiltonian, ToeplitzSystem, inverse_nlft, opuc_h11,
                      potential_from_h11, toeplitz_entry_sum_exact, toeplitz_h11,
                      verblunsky_coefficients)
from .measure import (AcPart, Measure, PwDiagnostic, TrigMoments, measure_from_spec,
                      measure_to_spec, periodize, pw_diagnostic, trig_moments)

__version__ = "0.1.0"

__all__ = [
    "AcPart", "ClarkIdentityReport", "ConvergenceRow", "DiscretePotential",
    "DomainError", "Figure1Report", "Figure1Row", "HatFunction", "HerglotzValue",
    "InputError", "Measure", "NlftError", "NotPositiveDefiniteError",
    "NumericalError", "PwDiagnostic", "QuadratureError", "ResonanceError",
    "SchurValue", "SpecDocumentError", "StepHamiltonian", "StepPotential",
    "ToeplitzSystem", "TransferMatrix", "TrigMoments",
    "conjugate_poisson_integral", "convergence_sweep", "default_zgrid",
    "error_ratios", "figure1_data", "forward_continuous", "forward_continuous_grid",
    "forward_discrete", "forward_discrete_grid",
    "fourier_linear", "inverse_nlft", "magnitude_a_from_schur",
    "measure_from_spec", "measure_to_spec", "opuc_h11", "oscillating_step_average",
    "periodize", "periodized_schur", "point_mass_factor", "poisson_integral",
    "potential_from_h11", "potential_from_spec", "potential_to_spec",
    "propagate_matrix", "pw_diagnostic", "roundtrip_residual", "schur_from_measure",
    "schur_ratio", "schwarz_transform", "step_propagator",
    "toeplitz_entry_sum_exact", "toeplitz_h11", "trig_moments",
    "validate_clark_identity", "verblunsky_coefficients", "weakstar_h11_check",
]
