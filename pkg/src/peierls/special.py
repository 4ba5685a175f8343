"""Complete elliptic integrals via arithmetic-geometric-mean iteration.

Parameter convention: the argument is the *parameter* m = k^2, not the
modulus k.  Two normalizations are exposed:

* ``elliptic_e`` / ``elliptic_k`` -- the bare integrals over [0, pi/2];
* ``hyp_e`` / ``hyp_f`` -- the Gauss-hypergeometric normalization
  2F1(1/2, -1/2; 1; m) and 2F1(1/2, 1/2; 1; m), i.e. (2/pi) times the
  bare integrals.

Negative parameters are handled by the standard imaginary-modulus
transformation (Abramowitz & Stegun 17.4.17-18).
"""

from __future__ import annotations

import math

__all__ = [
    "elliptic_e",
    "elliptic_k",
    "hyp_e",
    "hyp_f",
    "de_dm",
]

_AGM_TOL = 1e-16
_AGM_MAX_ITER = 64


def _check_finite(m: float) -> float:
    m = float(m)
    if not math.isfinite(m):
        raise ValueError(f"elliptic parameter must be finite, got {m!r}")
    return m


def _agm_ek(m: float) -> tuple[float, float]:
    """K(m) and E(m) for 0 <= m < 1 by AGM with the c_n correction sum."""
    a, b = 1.0, math.sqrt(1.0 - m)
    c_sq_sum = 0.5 * m  # 2^{n-1} c_n^2 accumulated, n = 0 term
    pow2 = 0.5
    for _ in range(_AGM_MAX_ITER):
        c = 0.5 * (a - b)
        if abs(c) < _AGM_TOL * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
        pow2 *= 2.0
        c_sq_sum += pow2 * c * c
    k = math.pi / (2.0 * a)
    e = k * (1.0 - c_sq_sum)
    return k, e


def elliptic_k(m: float) -> float:
    """Complete elliptic integral of the first kind, parameter m < 1."""
    m = _check_finite(m)
    if m >= 1.0:
        raise ValueError(f"elliptic_k requires m < 1, got {m}")
    if m == 0.0:
        return math.pi / 2.0
    if m < 0.0:
        mu = -m
        return elliptic_k(mu / (1.0 + mu)) / math.sqrt(1.0 + mu)
    return _agm_ek(m)[0]


def elliptic_e(m: float) -> float:
    """Complete elliptic integral of the second kind, parameter m <= 1."""
    m = _check_finite(m)
    if m > 1.0:
        raise ValueError(f"elliptic_e requires m <= 1, got {m}")
    if m == 1.0:
        return 1.0
    if m == 0.0:
        return math.pi / 2.0
    if m < 0.0:
        mu = -m
        return math.sqrt(1.0 + mu) * elliptic_e(mu / (1.0 + mu))
    return _agm_ek(m)[1]


def hyp_e(m: float) -> float:
    """2F1(1/2, -1/2; 1; m) = (2/pi) E(m)."""
    return (2.0 / math.pi) * elliptic_e(m)


def hyp_f(m: float) -> float:
    """2F1(1/2, 1/2; 1; m) = (2/pi) K(m)."""
    return (2.0 / math.pi) * elliptic_k(m)


# Maclaurin coefficients of dE/dm = (E - K)/(2m) = -(pi/8) sum c_n m^n
_DE_DM_SERIES = (1.0, 3.0 / 8.0, 15.0 / 64.0, 175.0 / 1024.0, 2205.0 / 16384.0)


def de_dm(m: float) -> float:
    """dE/dm = (E(m) - K(m)) / (2m), series-evaluated for |m| < 1e-4.

    The direct quotient cancels catastrophically near m = 0; the series
    branch keeps the combination smooth there.
    """
    m = _check_finite(m)
    if abs(m) < 1e-4:
        acc = 0.0
        for c in reversed(_DE_DM_SERIES):
            acc = acc * m + c
        return -(math.pi / 8.0) * acc
    return (elliptic_e(m) - elliptic_k(m)) / (2.0 * m)
