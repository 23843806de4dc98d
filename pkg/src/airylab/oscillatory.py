"""Damped cubic-phase oscillatory integrals by contour-deformed quadrature.

cubic_phase_integral evaluates

    I(c3, c2, c1; eta) = Integral dp exp(i (c3 p^3 + c2 p^2 + c1 p)) exp(-eta p^2)

The integrand is entire, so the line of integration may be bent into
directions where the leading phase term decays; adaptive quadrature then
converges rapidly.  For eta = 0 the value is obtained from the damped
sequence eta in {1e-2, 1e-3, 1e-4, 1e-5} by polynomial (Neville)
extrapolation to eta -> 0.
"""

from __future__ import annotations

import numpy as np
from scipy.integrate import quad

from .core import AirylabError, QuadratureError

ETA_SEQUENCE = (1e-2, 1e-3, 1e-4, 1e-5)

_QUAD_OPTS = dict(epsabs=1e-11, epsrel=1e-11, limit=400, complex_func=True)


def _quad_c(func, lo, hi) -> tuple[complex, float]:
    val, err = quad(func, lo, hi, **_QUAD_OPTS)
    return complex(val), float(np.max(np.abs(np.atleast_1d(err))))


def _damped_positive_c3(c3: float, c2: float, c1: float, eta: float) -> tuple[complex, float]:
    """Contour: real segment [-a, a], then rays a + s e^(i pi/6) and
    -a + s e^(i 5 pi/6).  Requires c3 > 0; on both rays every exponent term
    has non-positive real part once the cubic dominates, which the choice
    of a guarantees."""

    def f(p):
        return np.exp(1j * (c3 * p ** 3 + c2 * p ** 2 + c1 * p) - eta * p * p)

    # a beyond the stationary points and the scale where |c2| p^2 competes
    stat = (abs(c2) + np.sqrt(c2 * c2 + 3.0 * c3 * abs(c1))) / (3.0 * c3)
    a = max(10.0, 2.0 * stat, (abs(c2) + 1.0) / c3)

    seg, e1 = _quad_c(f, -a, a)
    w_r = np.exp(1j * np.pi / 6)
    ray_r, e2 = _quad_c(lambda s: f(a + w_r * s) * w_r, 0.0, np.inf)
    w_l = np.exp(1j * 5 * np.pi / 6)
    ray_l, e3 = _quad_c(lambda s: f(-a + w_l * s) * w_l, 0.0, np.inf)
    # the left ray is parametrized outward, i.e. traversed toward -infinity
    return seg + ray_r - ray_l, e1 + e2 + e3


def _damped_quadratic(c2: float, c1: float, eta: float) -> tuple[complex, float]:
    """c3 = 0, c2 > 0: rotate the whole line to p = s e^(i pi/4), where the
    quadratic phase becomes a real Gaussian decay."""

    w = np.exp(1j * np.pi / 4)

    def f(s):
        p = w * s
        return np.exp(1j * (c2 * p * p + c1 * p) - eta * p * p) * w

    val, err = _quad_c(f, -np.inf, np.inf)
    return val, err


def _damped_linear(c1: float, eta: float) -> tuple[complex, float]:
    """c3 = c2 = 0: plain Gaussian times linear phase, real-line quadrature."""
    if eta <= 0.0:
        raise AirylabError(
            "cubic_phase_integral with eta = 0 requires c3 != 0 or c2 != 0")

    def f(p):
        return np.exp(1j * c1 * p - eta * p * p)

    span = 12.0 / np.sqrt(eta)
    val, err = _quad_c(f, -span, span)
    return val, err


def _damped_value(c3: float, c2: float, c1: float, eta: float) -> tuple[complex, float]:
    """I(c3,c2,c1;eta) with sign normalized to c3 >= 0 via conjugation:
    I(-c3,-c2,-c1;eta) = conj(I(c3,c2,c1;eta))."""
    if c3 < 0.0 or (c3 == 0.0 and c2 < 0.0):
        val, err = _damped_value(-c3, -c2, -c1, eta)
        return np.conj(val), err
    if c3 > 0.0:
        return _damped_positive_c3(c3, c2, c1, eta)
    if c2 > 0.0:
        return _damped_quadratic(c2, c1, eta)
    return _damped_linear(c1, eta)


def _neville_to_zero(xs: list[float], ys: list[complex]) -> tuple[complex, float]:
    """Neville tableau evaluated at 0; the magnitude of the final correction
    serves as the extrapolation error estimate."""
    n = len(xs)
    q = list(ys)
    last_corr = 0.0
    for k in range(1, n):
        nxt = []
        for i in range(n - k):
            num = q[i + 1] * (0.0 - xs[i]) - q[i] * (0.0 - xs[i + k])
            nxt.append(num / (xs[i + k] - xs[i]))
        last_corr = abs(nxt[0] - q[0]) if k == n - 1 else last_corr
        q = nxt
    return q[0], float(last_corr)


def cubic_phase_integral(c3: float, c2: float, c1: float, damping: float,
                         tol: float = 1e-8) -> complex:
    """Evaluate the damped cubic-phase integral defined above.

    damping > 0 returns the damped value itself.  damping = 0 returns the
    eta -> 0 limit by Neville extrapolation over ETA_SEQUENCE, and requires
    c3 != 0 or c2 != 0 (a bare linear phase has no eta -> 0 limit).
    Raises QuadratureError, carrying the achieved estimate, when the
    combined quadrature and extrapolation error estimate exceeds
    tol * max(1, |value|).
    """
    for name, val in (("c3", c3), ("c2", c2), ("c1", c1), ("damping", damping)):
        if not np.isfinite(val):
            raise AirylabError(f"{name} must be finite, got {val}")
    if damping < 0.0:
        raise AirylabError(f"damping must be >= 0, got {damping}")

    if damping > 0.0:
        value, err = _damped_value(c3, c2, c1, damping)
        if err > tol * max(1.0, abs(value)):
            raise QuadratureError("oscillatory quadrature did not converge", err)
        return value

    if c3 == 0.0 and c2 == 0.0:
        raise AirylabError(
            "cubic_phase_integral with damping = 0 requires c3 != 0 or c2 != 0")

    values = []
    quad_err = 0.0
    for eta in ETA_SEQUENCE:
        v, e = _damped_value(c3, c2, c1, eta)
        values.append(v)
        quad_err += e
    value, extrap_err = _neville_to_zero(list(ETA_SEQUENCE), values)
    est = 1.3 * quad_err + extrap_err
    if est > tol * max(1.0, abs(value)):
        raise QuadratureError("eta -> 0 extrapolation did not converge", est)
    return complex(value)
