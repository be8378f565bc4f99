"""Scalar special functions: Gamma, the Gauss hypergeometric 2F1(1/3,2/3;1;t)
including its logarithmic region, and the four Jacobi theta functions.

Conventions
-----------
Jacobi thetas use the period-1 convention

    theta3(z|tau) = sum_n exp(i pi n^2 tau + 2 pi i n z),

with theta1, theta2, theta4 obtained by the standard half-integer
characteristic shifts of this series.  All functions are pure and safe to
call concurrently.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError, NonConvergenceError

_EULER_GAMMA = 0.57721566490153286060651209008240243

# Lanczos coefficients, g = 7, n = 9.  Good to ~1e-15 relative in double
# precision on the positive real axis.
_LANCZOS_G = 7.0
_LANCZOS_C = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

_SERIES_MAX_TERMS = 10_000
_QSERIES_STOP = 1e-16


def gamma_fn(x: float) -> float:
    """Gamma(x) for real x > 0 via the Lanczos approximation."""
    if not (x > 0.0) or not math.isfinite(x):
        raise DomainError(f"gamma_fn requires x > 0, got {x}")
    if x < 0.5:
        # reflection keeps the rational approximation on x >= 0.5
        return math.pi / (math.sin(math.pi * x) * gamma_fn(1.0 - x))
    xx = x - 1.0
    acc = _LANCZOS_C[0]
    for k in range(1, len(_LANCZOS_C)):
        acc += _LANCZOS_C[k] / (xx + k)
    t = xx + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (xx + 0.5) * math.exp(-t) * acc


def _hyp_series(t: float) -> float:
    """Direct Gauss series for 2F1(1/3,2/3;1;t); converges for |t| < 1."""
    term = 1.0
    total = 1.0
    for k in range(_SERIES_MAX_TERMS):
        term *= (1.0 / 3.0 + k) * (2.0 / 3.0 + k) / ((k + 1.0) ** 2) * t
        total += term
        if abs(term) < 1e-17 * abs(total):
            return total
    raise NonConvergenceError(f"2F1 series did not converge at t={t}")


def _hyp_log_connection(t: float) -> float:
    """2F1(1/3,2/3;1;t) for t near 1 via the c = a+b connection formula.

    DLMF 15.8.10 with a = 1/3, b = 2/3, c = 1: the expansion runs in powers
    of w = 1-t with digamma coefficients

        F(t) = (sqrt(3)/(2 pi)) * sum_k r_k [2 psi(k+1) - psi(k+1/3)
                                             - psi(k+2/3) - log(w)] w^k,

    r_k = (1/3)_k (2/3)_k / (k!)^2.  The digamma values start from the exact
    psi(1), psi(1/3), psi(2/3) and advance by recurrence.
    """
    w = 1.0 - t
    logw = math.log(w)
    psi1 = -_EULER_GAMMA
    psia = -_EULER_GAMMA - 1.5 * math.log(3.0) - math.pi / (2.0 * math.sqrt(3.0))
    psib = -_EULER_GAMMA - 1.5 * math.log(3.0) + math.pi / (2.0 * math.sqrt(3.0))
    coef = 1.0
    wk = 1.0
    total = 0.0
    for k in range(_SERIES_MAX_TERMS):
        term = coef * wk * (2.0 * psi1 - psia - psib - logw)
        total += term
        if k > 2 and abs(term) < 1e-17 * abs(total):
            return total * math.sqrt(3.0) / (2.0 * math.pi)
        coef *= (1.0 / 3.0 + k) * (2.0 / 3.0 + k) / ((k + 1.0) ** 2)
        wk *= w
        psi1 += 1.0 / (k + 1.0)
        psia += 1.0 / (1.0 / 3.0 + k)
        psib += 1.0 / (2.0 / 3.0 + k)
    raise NonConvergenceError(f"2F1 connection series did not converge at t={t}")


def hyp2f1_13_23(t: float) -> float:
    """2F1(1/3, 2/3; 1; t) on 0 < t < 1.

    Direct series for t <= 1/2; for t > 1/2 the logarithmic connection
    formula, since c - a - b = 0 makes t = 1 a log singularity where the
    plain series is uselessly slow.
    """
    if not (0.0 < t < 1.0):
        raise DomainError(f"hypergeometric argument must lie in (0,1), got {t}")
    if t <= 0.5:
        return _hyp_series(t)
    return _hyp_log_connection(t)


def f_ratio(t: float) -> float:
    """2F1(1/3,2/3;1;t) / 2F1(1/3,2/3;1;1-t); strictly increasing on (0,1)."""
    return hyp2f1_13_23(t) / hyp2f1_13_23(1.0 - t)


def _theta_sum(z, tau, half: bool, sign_alt: bool):
    """Common q-series driver.

    half=False sums over integers n (theta3/theta4 family), half=True over
    n + 1/2 (theta1/theta2 family).  sign_alt inserts (-1)^n.  z may be a
    scalar or an array; summation stops when the latest term falls below
    1e-16 of the running-max partial sum, after passing the term-magnitude
    peak at n ~ |Im z| / Im tau.
    """
    z = np.asarray(z, dtype=complex)
    tau = complex(tau)
    if not (tau.imag > 0.0):
        raise NonConvergenceError(f"theta series requires Im(tau) > 0, got {tau}")
    out = np.zeros(z.shape, dtype=complex)
    if not half:
        out += 1.0  # n = 0 term
    n_peak = int(np.ceil(np.max(np.abs(z.imag), initial=0.0) / tau.imag)) + 2
    running_max = float(np.max(np.abs(out), initial=0.0))
    for n in range(_SERIES_MAX_TERMS):
        idx = n + 0.5 if half else float(n + 1)
        base = np.exp(1j * math.pi * idx * idx * tau)
        term = base * (np.exp(2j * math.pi * idx * z) + np.exp(-2j * math.pi * idx * z))
        if sign_alt:
            term = term * (-1.0) ** n
        out += term
        running_max = max(running_max, float(np.max(np.abs(out))))
        if n > n_peak and float(np.max(np.abs(term))) < _QSERIES_STOP * running_max:
            return out
    raise NonConvergenceError("theta q-series hit the term cap before converging")


def jacobi_theta(k: int, z, tau):
    """Jacobi theta_k(z|tau), k in 1..4, for Im(tau) > 0.

    z may be a complex scalar or array; the return matches its shape.
    """
    scalar = np.isscalar(z) or np.asarray(z).ndim == 0
    val = _jacobi_theta_arr(k, z, tau)
    return complex(val) if scalar else val


def _jacobi_theta_arr(k: int, z, tau):
    if k == 3:
        return _theta_sum(z, tau, half=False, sign_alt=False)
    if k == 4:
        return _theta_sum(np.asarray(z, dtype=complex) + 0.5, tau, half=False, sign_alt=False)
    if k == 2:
        return _theta_sum(z, tau, half=True, sign_alt=False)
    if k == 1:
        # theta1(z) = -i sum (-1)^n exp(i pi (n+1/2)^2 tau + 2 pi i (n+1/2) z);
        # the paired-sum driver needs the odd combination, so build it from
        # exponential differences.
        z = np.asarray(z, dtype=complex)
        tau_c = complex(tau)
        if not (tau_c.imag > 0.0):
            raise NonConvergenceError(f"theta series requires Im(tau) > 0, got {tau_c}")
        out = np.zeros(z.shape, dtype=complex)
        n_peak = int(np.ceil(np.max(np.abs(z.imag), initial=0.0) / tau_c.imag)) + 2
        running_max = 0.0
        for n in range(_SERIES_MAX_TERMS):
            idx = n + 0.5
            base = np.exp(1j * math.pi * idx * idx * tau_c) * (-1.0) ** n
            term = -1j * base * (np.exp(2j * math.pi * idx * z) - np.exp(-2j * math.pi * idx * z))
            out += term
            running_max = max(running_max, float(np.max(np.abs(out))), 1e-300)
            if n > n_peak and float(np.max(np.abs(term))) < _QSERIES_STOP * max(running_max, 1.0):
                return out
        raise NonConvergenceError("theta q-series hit the term cap before converging")
    raise DomainError(f"theta index must be 1..4, got {k}")
