"""Inverse spectral reconstruction from trigonometric moments.

Two routes recover the first Hamiltonian entry of the system behind an even
2T-periodic measure with moments a_0, a_1, ...:

* Toeplitz route.  With J_n the (n+1)x(n+1) symmetric Toeplitz matrix with
  diagonal a_0 and k-th off-diagonal a_k/2, the n-th step of h11 (step width
  pi/(2T)) is

      h_n = Sigma(J_n^{-1}) - Sigma(J_{n-1}^{-1}),   Sigma(J_{-1}^{-1}) = 0,

  where Sigma sums all matrix entries, computed as 1^T x with J_n x = 1.

* Polynomial route.  The same J_n is the Gram matrix of 1, w, .., w^n in
  L^2 of the circle measure with Fourier coefficients (a_0, a_1/2, ...);
  running the Szego recursion for the monic orthogonal polynomials Phi_n and
  their reflection coefficients alpha_n gives h_n = |phi_n(1)|^2 for the
  orthonormal phi_n.  The two routes agree through the reproducing-kernel
  identity Sigma(J_n^{-1}) = sum_{k<=n} |phi_k(1)|^2.

The potential of the underlying first-order system has masses

    c_n = (1/2) log(h_n / h_{n-1})     at positions n pi/(2T),

because h11 = exp(2 * running integral of the potential).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.linalg import cho_factor, cho_solve, solve_toeplitz, toeplitz

from .errors import DomainError, NotPositiveDefiniteError
from .forward import DiscretePotential
from .measure import Measure, TrigMoments, trig_moments

PIVOT_RTOL = 1e-12


@dataclass(frozen=True)
class StepHamiltonian:
    """Step values h_0, h_1, ... of h11 on ((n)w, (n+1)w], w = pi/(2T)."""

    step_width: float
    steps: tuple[float, ...]

    def __post_init__(self):
        if not (math.isfinite(self.step_width) and self.step_width > 0):
            raise DomainError("step width must be positive")
        if any(h <= 0 or not math.isfinite(h) for h in self.steps):
            raise DomainError("all Hamiltonian steps must be strictly positive")

    def __len__(self) -> int:
        return len(self.steps)

    def value(self, t: float) -> float:
        """h11(t) on (0, N w]; constant continuation beyond the last step."""
        if t <= 0:
            raise DomainError("t must be positive")
        n = min(int(math.ceil(t / self.step_width)) - 1, len(self.steps) - 1)
        return self.steps[n]


class ToeplitzSystem:
    """Moment matrices J_n: diagonal a_0, k-th off-diagonal a_k/2."""

    def __init__(self, moments: TrigMoments):
        self.moments = moments
        a = np.asarray(moments.coeffs, dtype=float)
        self.first_column = np.concatenate(([a[0]], a[1:] / 2))

    def max_order(self) -> int:
        return len(self.first_column) - 1

    def matrix(self, n: int) -> np.ndarray:
        if n > self.max_order():
            raise DomainError(f"order {n} needs {n + 1} moments, have {len(self.first_column)}")
        return toeplitz(self.first_column[: n + 1])


def _entry_sums_cholesky(col: np.ndarray, N: int) -> np.ndarray:
    a0 = col[0]
    sums = np.empty(N)
    for n in range(N):
        J = toeplitz(col[: n + 1])
        try:
            factor = cho_factor(J, lower=True, check_finite=False)
        except np.linalg.LinAlgError as exc:
            raise NotPositiveDefiniteError(
                "moments not positive definite (not a PW spectral measure)") from exc
        if np.min(np.diag(factor[0])) ** 2 < PIVOT_RTOL * a0:
            raise NotPositiveDefiniteError(
                "moments not positive definite (not a PW spectral measure)")
        x = cho_solve(factor, np.ones(n + 1), check_finite=False)
        sums[n] = x.sum()
    return sums


def _entry_sums_levinson(col: np.ndarray, N: int) -> np.ndarray:
    sums = np.empty(N)
    for n in range(N):
        try:
            x = solve_toeplitz(col[: n + 1], np.ones(n + 1), check_finite=False)
        except np.linalg.LinAlgError as exc:
            raise NotPositiveDefiniteError(
                "moments not positive definite (not a PW spectral measure)") from exc
        if not np.all(np.isfinite(x)):
            raise NotPositiveDefiniteError(
                "moments not positive definite (not a PW spectral measure)")
        sums[n] = x.sum()
    return sums


def toeplitz_h11(mom: TrigMoments, N: int, method: str = "cholesky") -> StepHamiltonian:
    """First N steps of h11 from the Toeplitz entry-sum increments.

    ``method`` selects the linear solver: "cholesky" (trusted default) or
    "levinson" (fast Toeplitz path); the two agree to well below 1e-10 on
    positive-definite inputs.
    """
    if N < 1:
        raise DomainError("N must be >= 1")
    if len(mom.coeffs) < N:
        raise DomainError(f"need at least {N} moment coefficients, have {len(mom.coeffs)}")
    col = ToeplitzSystem(mom).first_column
    if method == "cholesky":
        sums = _entry_sums_cholesky(col, N)
    elif method == "levinson":
        sums = _entry_sums_levinson(col, N)
    else:
        raise DomainError(f"unknown method {method!r}")
    h = np.diff(sums, prepend=0.0)
    if np.any(h <= 0):
        raise NotPositiveDefiniteError(
            "moments not positive definite (not a PW spectral measure)")
    width = math.pi / (2 * mom.half_period)
    return StepHamiltonian(width, tuple(float(v) for v in h))


def verblunsky_coefficients(mom: TrigMoments, N: int) -> np.ndarray:
    """First N reflection coefficients of the circle measure behind ``mom``.

    Szego recursion on the monic polynomials, driven by the circle moments
    m_0 = a_0, m_k = a_k/2:

        alpha_n = <z Phi_n, 1> / <Phi_n^*, 1>,
        Phi_{n+1} = z Phi_n - alpha_n Phi_n^*.

    Coefficients are real for even measures.
    """
    if len(mom.coeffs) < N + 1:
        raise DomainError(f"need {N + 1} moment coefficients for {N} reflection "
                          f"coefficients, have {len(mom.coeffs)}")
    a = np.asarray(mom.coeffs, dtype=float)
    m = np.concatenate(([a[0]], a[1:] / 2))
    if m[0] <= 0:
        raise NotPositiveDefiniteError("total mass must be positive")
    p = np.array([1.0])
    alphas = np.empty(N)
    for n in range(N):
        num = float(p @ m[1:n + 2])
        den = float(p @ m[n::-1])
        if den <= 0:
            raise NotPositiveDefiniteError("measure not nontrivial on the circle")
        alpha = num / den
        if abs(alpha) >= 1:
            raise NotPositiveDefiniteError("measure not nontrivial on the circle")
        alphas[n] = alpha
        p = np.concatenate(([0.0], p)) - alpha * np.concatenate((p[::-1], [0.0]))
    return alphas


def opuc_h11(mom: TrigMoments, N: int) -> StepHamiltonian:
    """First N steps of h11 as |phi_n(1)|^2 of the orthonormal polynomials.

    Uses Phi_{n+1}(1) = (1 - alpha_n) Phi_n(1) and the norm recursion
    ||Phi_{n+1}||^2 = (1 - alpha_n^2) ||Phi_n||^2.
    """
    if N < 1:
        raise DomainError("N must be >= 1")
    alphas = verblunsky_coefficients(mom, N - 1)
    h = np.empty(N)
    val1 = 1.0
    norm2 = float(mom.coeffs[0])
    h[0] = val1 * val1 / norm2
    for n, alpha in enumerate(alphas, start=1):
        val1 *= 1 - alpha
        norm2 *= 1 - alpha * alpha
        h[n] = val1 * val1 / norm2
    width = math.pi / (2 * mom.half_period)
    return StepHamiltonian(width, tuple(float(v) for v in h))


def potential_from_h11(h: StepHamiltonian) -> DiscretePotential:
    """Masses c_n = (1/2) log(h_n / h_{n-1}) at positions n * step_width."""
    steps = np.asarray(h.steps)
    masses = 0.5 * np.log(steps[1:] / steps[:-1])
    return DiscretePotential(h.step_width, tuple(float(c) for c in masses))


def inverse_nlft(mu: Measure, N: int, method: str = "toeplitz") -> DiscretePotential:
    """Inverse transform of an even periodic measure: N potential masses.

    Pipeline: trig_moments -> {toeplitz_h11 | opuc_h11} -> potential_from_h11.
    """
    if N < 1:
        raise DomainError("N must be >= 1")
    mom = trig_moments(mu, N)
    if method == "toeplitz":
        h = toeplitz_h11(mom, N + 1)
    elif method == "opuc":
        h = opuc_h11(mom, N + 1)
    else:
        raise DomainError(f"unknown method {method!r}")
    return potential_from_h11(h)


def toeplitz_entry_sum_exact(mom: TrigMoments, n: int) -> float:
    """Sigma(J_n^{-1}) by exact rational Gauss-Jordan elimination.

    Independent oracle for the solver paths; intended for small orders
    (n <= 8), where exact arithmetic stays cheap.
    """
    size = n + 1
    a = mom.coeffs
    if len(a) < size:
        raise DomainError("not enough moments")
    col = [Fraction(a[0])] + [Fraction(a[k]) / 2 for k in range(1, size)]
    M = [[col[abs(i - j)] for j in range(size)] for i in range(size)]
    inv = [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]
    for k in range(size):
        piv_row = max(range(k, size), key=lambda r: abs(M[r][k]))
        if M[piv_row][k] == 0:
            raise NotPositiveDefiniteError("moments not positive definite "
                                           "(not a PW spectral measure)")
        M[k], M[piv_row] = M[piv_row], M[k]
        inv[k], inv[piv_row] = inv[piv_row], inv[k]
        piv = M[k][k]
        M[k] = [v / piv for v in M[k]]
        inv[k] = [v / piv for v in inv[k]]
        for r in range(size):
            if r != k and M[r][k] != 0:
                f = M[r][k]
                M[r] = [vr - f * vk for vr, vk in zip(M[r], M[k])]
                inv[r] = [vr - f * vk for vr, vk in zip(inv[r], inv[k])]
    return float(sum(sum(row) for row in inv))
