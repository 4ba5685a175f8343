"""Semiclassical phase-space dynamics of the staggering amplitude.

`script_p` is the non-linear drive/damping kernel of the restricted
equation of motion along x = p,

    x'' = (x - P)(1 - P_x) - x' P_x ,

integrated by classical fixed-step RK4.  By default the kernel argument
generalizes to sqrt(2)*(zeta*x + kappa*p); `strict_paper=True` pins
zeta = kappa = 1, which is the form the kernel was originally written in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal

from .algebra import xi
from .landscape import (
    DomainError,
    PhononNorm,
    total_gradient,
)
from .model import CoherentAmplitude, ModelParams, effective_coupling
from .special import de_dm, elliptic_e

__all__ = [
    "PhaseState",
    "Trajectory",
    "script_p",
    "script_p_x",
    "ode_rhs",
    "fixed_point_branches",
    "integrate",
    "canonical_flow",
]


@dataclass(frozen=True)
class PhaseState:
    x: float
    v: float
    t: float = 0.0


@dataclass
class Trajectory:
    states: list[PhaseState]
    params: ModelParams
    method: str
    dt: float
    termination: str = "completed"

    @property
    def final(self) -> PhaseState:
        return self.states[-1]


def script_p(params: ModelParams, x: float, p: float, strict_paper: bool = False) -> float:
    """The drive kernel P(x, p).

    (4*sqrt(2)*g/pi) * sinh(u)/(xi*(q+1/q)) * (E(m) - xi*(E(m)-F(m))/(m*cosh(u)^2))
    with u = sqrt(2)*(zeta*x + kappa*p), m = 1 - xi*tanh(u)^2 and E, F in
    the hypergeometric normalization.  (E-F)/m is series-evaluated near
    m = 0; the sinh(u) factor makes the value vanish at u = 0.
    """
    zeta, kappa = (1.0, 1.0) if strict_paper else (params.zeta, params.kappa)
    u = math.sqrt(2.0) * (zeta * x + kappa * p)
    if u == 0.0:
        return 0.0
    q = params.q
    xq = xi(q, params.w)
    m = 1.0 - xq * math.tanh(u) ** 2
    if abs(m) > 1.0:
        raise DomainError(f"elliptic parameter m={m} outside [-1, 1]")
    g = effective_coupling(params)
    pref = 4.0 * math.sqrt(2.0) * g / (math.pi * xq * (q + 1.0 / q))
    # bracket in hypergeometric normalization; (E-F)/m == (4/pi) dE/dm
    if m == 1.0:
        # u small enough that m rounds to 1; the log-divergent dE/dm term
        # is suppressed by tanh(u)^2 and drops out
        bracket = (2.0 / math.pi) * elliptic_e(m)
    else:
        bracket = (2.0 / math.pi) * elliptic_e(m) - xq * (4.0 / math.pi) * de_dm(m) / math.cosh(u) ** 2
    return pref * math.sinh(u) * bracket


def script_p_x(params: ModelParams, x: float, p: float, strict_paper: bool = False) -> float:
    """Partial dP/dx at fixed p, by central difference (step 1e-6*(1+|x|))."""
    h = 1e-6 * (1.0 + abs(x))
    return (script_p(params, x + h, p, strict_paper) - script_p(params, x - h, p, strict_paper)) / (2.0 * h)


def ode_rhs(params: ModelParams, state: PhaseState, strict_paper: bool = False) -> tuple[float, float]:
    """(dx/dt, dv/dt) of the restricted oscillator, with P evaluated at p = x."""
    x, v = state.x, state.v
    pval = script_p(params, x, x, strict_paper)
    px = script_p_x(params, x, x, strict_paper)
    return v, (x - pval) * (1.0 - px) - v * px


def fixed_point_branches(
    params: ModelParams, x: float, tol: float = 1e-8, strict_paper: bool = False
) -> tuple[bool, bool]:
    """Which stationarity branch a v = 0 fixed point satisfies.

    Returns (x equals the kernel value, kernel slope equals one); a point
    with both False is not a fixed point of the restricted oscillator.
    """
    on_kernel = abs(x - script_p(params, x, x, strict_paper)) < tol
    unit_slope = abs(script_p_x(params, x, x, strict_paper) - 1.0) < tol
    return on_kernel, unit_slope


def integrate(
    params: ModelParams,
    initial: PhaseState,
    dt: float,
    steps: int,
    strict_paper: bool = False,
    settle_tol: float | None = None,
) -> Trajectory:
    """Fixed-step RK4 trajectory of the restricted equation of motion.

    Aborts (with a recorded termination reason) if the state leaves the
    elliptic domain or becomes non-finite.  With `settle_tol` set, stops
    early once both |v| and |dv/dt| fall below the tolerance.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    x, v, t = initial.x, initial.v, initial.t
    states = [PhaseState(x, v, t)]
    termination = "completed"
    for _ in range(steps):
        try:
            k1x, k1v = ode_rhs(params, PhaseState(x, v, t), strict_paper)
            k2x, k2v = ode_rhs(params, PhaseState(x + 0.5 * dt * k1x, v + 0.5 * dt * k1v, t), strict_paper)
            k3x, k3v = ode_rhs(params, PhaseState(x + 0.5 * dt * k2x, v + 0.5 * dt * k2v, t), strict_paper)
            k4x, k4v = ode_rhs(params, PhaseState(x + dt * k3x, v + dt * k3v, t), strict_paper)
        except DomainError:
            termination = "domain-exit"
            break
        x += dt * (k1x + 2.0 * k2x + 2.0 * k3x + k4x) / 6.0
        v += dt * (k1v + 2.0 * k2v + 2.0 * k3v + k4v) / 6.0
        t += dt
        if not (math.isfinite(x) and math.isfinite(v)):
            termination = "non-finite"
            break
        states.append(PhaseState(x, v, t))
        if settle_tol is not None and abs(v) < settle_tol and abs(k1v) < settle_tol:
            termination = "settled"
            break
    return Trajectory(states=states, params=params, method="rk4", dt=dt, termination=termination)


FlowConvention = Literal["hamiltonian", "gradient"]


def canonical_flow(
    params: ModelParams,
    z: CoherentAmplitude,
    energy: Callable[[CoherentAmplitude], float] | None = None,
    convention: FlowConvention = "hamiltonian",
    phonon_norm: PhononNorm = "per-cell",
) -> complex:
    """Velocity dz/dt from the Wirtinger derivative of the energy functional.

    With the default ground-state functional the gradient is analytic;
    a custom `energy` callable is differentiated by central differences.
    "hamiltonian" returns -i dE/dzbar (energy-conserving); "gradient"
    returns dE/dzbar verbatim.
    """
    if energy is None:
        gre, gim = total_gradient(params, z, phonon_norm)
    else:
        h = 1e-6 * (1.0 + abs(z.re) + abs(z.im))
        gre = (energy(CoherentAmplitude(z.re + h, z.im)) - energy(CoherentAmplitude(z.re - h, z.im))) / (2.0 * h)
        gim = (energy(CoherentAmplitude(z.re, z.im + h)) - energy(CoherentAmplitude(z.re, z.im - h))) / (2.0 * h)
    dz_dzbar = 0.5 * complex(gre, gim)
    return -1j * dz_dzbar if convention == "hamiltonian" else dz_dzbar
