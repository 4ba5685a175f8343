"""Deformed su(2) generators in the spin-1/2 representation and the
per-mode 2x2 Hamiltonians.

Ground truth is the explicit 2x2 matrix built from the deformed
generators; the closed-form eigenvalue expression is kept separately
(`paper_lambda`) as a cross-check.  The two differ by a q^(2w) factor on
the delta^2 term under the square root whenever w != 0; `lambda_discrepancy`
quantifies it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import CoherentAmplitude, ModelParams, effective_coupling, state_location

__all__ = [
    "q_bracket",
    "xi",
    "ModeEnergies",
    "mode_energies",
    "deformed_mode_matrix",
    "mode_eigenvalues",
    "paper_lambda",
    "lambda_discrepancy",
]

# spin-1/2 generators of the undeformed algebra
_K3 = np.diag([0.5, -0.5])
_KP = np.array([[0.0, 1.0], [0.0, 0.0]])
_KM = _KP.T


def q_bracket(x: float, q: float) -> float:
    """q-number [x]_q = (q^x - q^-x)/(q - q^-1); -> x as q -> 1."""
    if q <= 0:
        raise ValueError(f"q must be positive, got {q}")
    if abs(q - 1.0) < 1e-8:
        return float(x)
    return (q**x - q**-x) / (q - 1.0 / q)


def xi(q: float, w: float) -> float:
    """Normalization xi_q = 2 q^-w / (q + q^-1); equals 1 at q = 1."""
    if q <= 0:
        raise ValueError(f"q must be positive, got {q}")
    return 2.0 * q**-w / (q + 1.0 / q)


@dataclass(frozen=True)
class ModeEnergies:
    """Mode-k energies eps = g cosh(loc) cos(pi k/L), delta = g sinh(loc) sin(pi k/L)."""

    k: int
    epsilon: float
    delta: float


def mode_energies(params: ModelParams, z: CoherentAmplitude, k: int) -> ModeEnergies:
    if not 0 <= k < params.big_l:
        raise ValueError(f"mode index {k} outside [0, {params.big_l - 1}]")
    g = effective_coupling(params)
    loc = state_location(params, z)
    theta = math.pi * k / params.big_l
    return ModeEnergies(
        k=k,
        epsilon=g * math.cosh(loc) * math.cos(theta),
        delta=g * math.sinh(loc) * math.sin(theta),
    )


def _deformed_generators(q: float, w: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """J_+, J_-, J_3 of the deformed algebra in the spin-1/2 representation."""
    xq = xi(q, w)
    pref = q**w * math.sqrt(xq)
    jp = pref * np.diag([q ** (-0.5 + 0.5), q ** (0.5 + 0.5)]) @ _KP
    jm = pref * np.diag([q ** (-0.5 - 0.5), q ** (0.5 - 0.5)]) @ _KM
    j3 = q ** (2 * w) * (xq / 2.0) * (q * _KP @ _KM - (1.0 / q) * _KM @ _KP)
    return jp, jm, j3


def deformed_mode_matrix(params: ModelParams, mode: ModeEnergies) -> np.ndarray:
    """H_k as a real symmetric 2x2 matrix: -2 eps J_3 - delta (J_+ + J_-)."""
    jp, jm, j3 = _deformed_generators(params.q, params.w)
    return -2.0 * mode.epsilon * j3 - mode.delta * (jp + jm)


def mode_eigenvalues(matrix: np.ndarray) -> tuple[float, float]:
    """(lambda_plus, lambda_minus) with lambda_plus <= lambda_minus.

    lambda_plus is the filled lower branch.  Computed from the 2x2 matrix,
    not from the printed closed form.
    """
    a, d = matrix[0, 0], matrix[1, 1]
    b = matrix[0, 1]
    half_tr = 0.5 * (a + d)
    root = math.hypot(0.5 * (a - d), b)
    return half_tr - root, half_tr + root


def paper_lambda(params: ModelParams, mode: ModeEnergies) -> tuple[float, float]:
    """The closed-form eigenvalues, transcribed verbatim for cross-checking."""
    q, w = params.q, params.w
    xq = xi(q, w)
    shift = -0.5 * mode.epsilon * (q - 1.0 / q) * q ** (2 * w) * xq
    root = math.sqrt(q ** (2 * w) * mode.epsilon**2 + xq * mode.delta**2)
    return shift - root, shift + root


def lambda_discrepancy(params: ModelParams, mode: ModeEnergies) -> float:
    """Max abs difference between matrix and closed-form eigenvalues."""
    lm = mode_eigenvalues(deformed_mode_matrix(params, mode))
    lp = paper_lambda(params, mode)
    return max(abs(lm[0] - lp[0]), abs(lm[1] - lp[1]))
