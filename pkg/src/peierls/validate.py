"""Cross-module validation suite.

Each check measures a deviation against an independent oracle (adaptive
quadrature, dense eigensolver, closed forms) and compares it to a fixed
threshold.  The suite also measures and reports, without asserting,
quantities whose expected value is a bookkeeping convention: the
real-space/mode proportionality constant, the mode-sum convergence slope,
and the printed-vs-matrix eigenvalue discrepancy at nonzero w.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from scipy.integrate import quad

from .algebra import deformed_mode_matrix, mode_eigenvalues, xi
from .kink import KinkConfiguration, difference_operator, kink_spectrum, zero_subspace, _omega
from .landscape import (
    electronic_density_continuum,
    electronic_density_modesum,
    total_density,
    total_gradient,
)
from .model import (
    CoherentAmplitude,
    ModelParams,
    effective_coupling,
    spectrum,
    single_particle_matrix,
    staggered_bonds,
    state_location,
)
from .special import elliptic_e, elliptic_k

__all__ = ["ValidationCheck", "ValidationReport", "run_validation"]

CORRUPT_XI_ENV = "PEIERLS_TEST_CORRUPT_XI"


@dataclass(frozen=True)
class ValidationCheck:
    name: str
    passed: bool
    measured: float
    threshold: float
    detail: str = ""


@dataclass
class ValidationReport:
    checks: list[ValidationCheck] = field(default_factory=list)
    info: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, measured: float, threshold: float, detail: str = "") -> None:
        self.checks.append(ValidationCheck(name, bool(measured <= threshold), float(measured), threshold, detail))

    def as_dict(self) -> dict[str, Any]:
        return {
            "passed": self.passed,
            "checks": [
                {
                    "name": c.name,
                    "passed": c.passed,
                    "measured": c.measured,
                    "threshold": c.threshold,
                    "detail": c.detail,
                }
                for c in self.checks
            ],
            "info": self.info,
        }


def _quad_e(m: float) -> float:
    return quad(lambda th: math.sqrt(max(0.0, 1.0 - m * math.sin(th) ** 2)), 0.0, math.pi / 2, epsabs=1e-13)[0]


def _quad_k(m: float) -> float:
    return quad(lambda th: 1.0 / math.sqrt(1.0 - m * math.sin(th) ** 2), 0.0, math.pi / 2, epsabs=1e-13)[0]


def _check_special(report: ValidationReport) -> None:
    ms_e = np.arange(-1.0, 0.991, 0.25).tolist() + [0.99]
    err_e = max(abs(elliptic_e(m) - _quad_e(m)) for m in ms_e)
    report.add("elliptic-e-quadrature", err_e, 1e-10, "max |E_agm - E_quad| on m in [-1, 0.99]")
    ms_k = np.arange(-1.0, 0.951, 0.25).tolist() + [0.95]
    err_k = max(abs(elliptic_k(m) - _quad_k(m)) for m in ms_k)
    report.add("elliptic-k-quadrature", err_k, 1e-10, "max |K_agm - K_quad| on m in [-1, 0.95]")
    # Legendre relation E(m)K(1-m) + E(1-m)K(m) - K(m)K(1-m) = pi/2
    worst = 0.0
    for m in np.linspace(0.04, 0.96, 20):
        lhs = (
            elliptic_e(m) * elliptic_k(1.0 - m)
            + elliptic_e(1.0 - m) * elliptic_k(m)
            - elliptic_k(m) * elliptic_k(1.0 - m)
        )
        worst = max(worst, abs(lhs - math.pi / 2.0))
    report.add("legendre-relation", worst, 1e-10, "20 interior points")


def _reference_state(loc: float = 0.4, big_l: int = 64, q: float = 1.0, w: float = 0.0):
    """Parameters with g = 1 and an amplitude giving the requested location."""
    params = ModelParams(t=math.exp(-1.0), zeta=1.0, kappa=0.0, big_l=big_l, q=q, w=w)
    z = CoherentAmplitude(loc / (2.0 * math.sqrt(2.0)), 0.0)
    return params, z


def _mode_pair(params: ModelParams, z: CoherentAmplitude, k: int):
    from .algebra import mode_energies

    return mode_eigenvalues(deformed_mode_matrix(params, mode_energies(params, z, k)))


def _check_contraction(report: ValidationReport) -> None:
    p1, z = _reference_state(q=1.0)
    p2, _ = _reference_state(q=1.0 + 1e-7)
    worst = 0.0
    for k in range(p1.big_l):
        a = _mode_pair(p1, z, k)
        b = _mode_pair(p2, z, k)
        worst = max(worst, abs(a[0] - b[0]), abs(a[1] - b[1]))
    report.add("q-to-1-contraction", worst, 1e-6, "max eigenvalue shift under q = 1 + 1e-7")


def _printed_eigenvalues(eps: float, delta: float, q: float, w: float, xq: float):
    shift = -0.5 * eps * (q - 1.0 / q) * q ** (2 * w) * xq
    root = math.sqrt(q ** (2 * w) * eps**2 + xq * delta**2)
    return shift - root, shift + root


def _check_lambda_forms(report: ValidationReport) -> None:
    corrupt = float(os.environ.get(CORRUPT_XI_ENV, "0.0"))
    params, z = _reference_state(q=1.5, w=0.0)
    from .algebra import mode_energies

    xq = xi(params.q, params.w) + corrupt
    worst = 0.0
    for k in range(params.big_l):
        mode = mode_energies(params, z, k)
        matrix_eigs = mode_eigenvalues(deformed_mode_matrix(params, mode))
        printed = _printed_eigenvalues(mode.epsilon, mode.delta, params.q, params.w, xq)
        worst = max(worst, abs(matrix_eigs[0] - printed[0]), abs(matrix_eigs[1] - printed[1]))
    report.add("lambda-printed-vs-matrix", worst, 1e-12, "w = 0, q = 1.5; forms must coincide")
    # at w != 0 the printed closed form and the matrix disagree on the
    # delta^2 weight under the root; measured and reported, not asserted
    pw, zw = _reference_state(q=1.5, w=-1.0)
    disc = 0.0
    for k in range(pw.big_l):
        mode = mode_energies(pw, zw, k)
        matrix_eigs = mode_eigenvalues(deformed_mode_matrix(pw, mode))
        printed = _printed_eigenvalues(mode.epsilon, mode.delta, pw.q, pw.w, xi(pw.q, pw.w))
        disc = max(disc, abs(matrix_eigs[0] - printed[0]), abs(matrix_eigs[1] - printed[1]))
    report.info["lambda-discrepancy-w=-1"] = disc


def _check_modesum(report: ValidationReport) -> None:
    ls = [64, 128, 256, 512]
    errs = []
    for big_l in ls:
        params, z = _reference_state(big_l=big_l)
        ms = electronic_density_modesum(params, z)
        ct = electronic_density_continuum(params, z)
        errs.append(abs(ms - ct))
    slope = float(np.polyfit(np.log(ls), np.log(np.maximum(errs, 1e-300)), 1)[0])
    report.info["modesum-errors"] = dict(zip(map(str, ls), errs))
    report.info["modesum-fitted-slope"] = slope
    params, z = _reference_state(big_l=4096)
    ms = electronic_density_modesum(params, z)
    ct = electronic_density_continuum(params, z)
    report.add("modesum-continuum-L4096", abs(ms - ct) / abs(ct), 2e-3, "relative agreement at L = 4096")


def _check_landscape(report: ValidationReport, params: ModelParams) -> None:
    rng = np.random.default_rng(20260823)
    parity = 0.0
    grad_err = 0.0
    checked = 0
    while checked < 50:
        z = CoherentAmplitude(*(rng.uniform(-0.08, 0.08, size=2)))
        try:
            e_plus = total_density(params, z).total
            e_minus = total_density(params, -z).total
            grad = total_gradient(params, z)
        except ValueError:
            continue
        parity = max(parity, abs(e_plus - e_minus))
        h = 1e-6
        fd = np.array(
            [
                (total_density(params, CoherentAmplitude(z.re + h, z.im)).total
                 - total_density(params, CoherentAmplitude(z.re - h, z.im)).total) / (2 * h),
                (total_density(params, CoherentAmplitude(z.re, z.im + h)).total
                 - total_density(params, CoherentAmplitude(z.re, z.im - h)).total) / (2 * h),
            ]
        )
        scale = max(1.0, float(np.linalg.norm(fd)))
        grad_err = max(grad_err, float(np.linalg.norm(grad - fd)) / scale)
        checked += 1
    report.add("landscape-parity", parity, 1e-12, "total density even under z -> -z")
    report.add("landscape-gradient", grad_err, 1e-6, "analytic vs central-difference gradient, 50 points")


def _check_kink(report: ValidationReport, params: ModelParams) -> None:
    n_sites = 200
    cfg0 = KinkConfiguration(n=n_sites // 2, z=CoherentAmplitude(0.0, 0.0), n_sites=n_sites)
    evals, _, _ = kink_spectrum(params, cfg0)
    g = effective_coupling(params)
    oracle = np.sort(-2.0 * g * np.cos(np.pi * np.arange(1, n_sites + 1) / (n_sites + 1)))
    report.add("kink-z0-spectrum", float(np.max(np.abs(evals - oracle))), 1e-10, "open-chain closed form, N = 200")
    z = CoherentAmplitude(0.026169004324320, 0.026169004324320)
    cfg = KinkConfiguration(n=n_sites // 2, z=z, n_sites=n_sites)
    loc = state_location(params, z)
    om = _omega(params, loc, cfg.n)
    block = difference_operator(params, cfg)[cfg.n : cfg.n + 3, cfg.n : cfg.n + 3]
    eigs = np.sort(np.linalg.eigvalsh(block))
    target = np.sort([-math.sqrt(2.0) * abs(om), 0.0, math.sqrt(2.0) * abs(om)])
    report.add("kink-difference-block-eigs", float(np.max(np.abs(eigs - target))), 1e-10, "{0, +-sqrt(2) omega_n}")
    dim, basis = zero_subspace(params, cfg)
    kernel_err = 1.0
    if dim == 1:
        overlap = abs(float(basis[0] @ (np.array([1.0, 0.0, 1.0]) / math.sqrt(2.0))))
        kernel_err = abs(1.0 - overlap)
    report.add("kink-zero-subspace", kernel_err, 1e-10, "one-dimensional kernel along (1, 0, 1)/sqrt(2)")


def _check_proportionality(report: ValidationReport) -> None:
    params, z = _reference_state()
    dense = spectrum(single_particle_matrix(staggered_bonds(params, z)))
    from .algebra import mode_energies

    mode_vals = []
    for k in range(params.big_l):
        m = mode_energies(params, z, k)
        mode_vals.append(math.hypot(m.epsilon, m.delta))
    positive = np.sort(dense[dense > 0.0])
    mode_sorted = np.sort(mode_vals)[-len(positive):]
    ratios = positive / mode_sorted
    const = float(np.mean(ratios))
    spread = float(np.max(np.abs(ratios - const)) / abs(const))
    report.info["real-space-to-mode-constant"] = const
    report.add("proportionality-constant-uniform", spread, 1e-9, "ratio constant across modes")


def run_validation(params: ModelParams | None = None) -> ValidationReport:
    """Execute the full cross-module suite; landscape/kink checks use the
    shipped kink/dynamics reference parameters unless others are given."""
    if params is None:
        params = ModelParams(t=0.05727103620628195, zeta=1.4, kappa=0.35, big_l=64, q=1.5, w=-1.0)
    report = ValidationReport()
    _check_special(report)
    _check_contraction(report)
    _check_lambda_forms(report)
    _check_modesum(report)
    _check_landscape(report, params)
    _check_kink(report, params)
    _check_proportionality(report)
    return report
