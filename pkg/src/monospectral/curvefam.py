"""The C3-symmetric charge-3 spectral-curve family.

Integer pairs (n, m) index curves eta^3 + chi (zeta^6 + b zeta^3 - 1) = 0
through a hypergeometric ratio equation; this module solves that equation,
produces the curve parameters (b, chi), assembles the closed-form genus-4
period matrix and winding vector, checks the reality involution, and
evaluates Ramanujan's signature-3 modular relation.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateCurveError, DomainError, NoRootError
from .specfun import f_ratio, hyp2f1_13_23

# Primitive cube root of unity.  The conjugate orientation is used so the
# assembled period matrices land in the upper Siegel half-space (the other
# choice gives negative-definite imaginary parts and a divergent theta
# series); see tau_from_integers.
RHO = cmath.exp(-2j * math.pi / 3)

_H_DIAG = np.diag([1.0, 1.0, 1.0, -1.0])


@dataclass(frozen=True)
class ESIntegers:
    """Coprime integer pair indexing candidate solutions of H1 + H2.

    Requires gcd(|n|, |m|) = 1 and (m+n)(m-2n) < 0; the strict inequality
    also guards the divisions by m+n and 2n-m downstream.
    """

    n: int
    m: int

    def __post_init__(self):
        if math.gcd(abs(self.n), abs(self.m)) != 1:
            raise DomainError(f"(n, m) = ({self.n}, {self.m}) must be coprime")
        if (self.m + self.n) * (self.m - 2 * self.n) >= 0:
            raise DomainError(
                f"(n, m) = ({self.n}, {self.m}) violates (m+n)(m-2n) < 0"
            )

    @property
    def target_ratio(self) -> float:
        return (2 * self.n - self.m) / (self.m + self.n)


@dataclass(frozen=True)
class BCurveParams:
    """Parameters (b, chi) of eta^3 + chi (zeta^6 + b zeta^3 - 1) = 0."""

    b: float
    chi: float

    def __post_init__(self):
        if self.chi == 0.0:
            raise DomainError("chi must be nonzero")


@dataclass(frozen=True)
class C3CurveParams:
    """Coefficients of eta^3 + alpha eta zeta^2 + beta zeta^6 + gamma zeta^3 - beta = 0.

    Fields may be complex-valued so the reality test below can exercise
    perturbed coefficient sets; genuine family members have real entries.
    """

    alpha: complex
    beta: complex
    gamma: complex

    def __post_init__(self):
        if self.beta == 0:
            raise DomainError("beta must be nonzero")


@dataclass(frozen=True)
class ESVectors:
    """Integer 4-vectors expressing the winding vector as a half-period."""

    n_vec: tuple
    m_vec: tuple


def es_vectors(es: ESIntegers) -> ESVectors:
    """Exact integer 4-vectors (n, m-n, -m, 2n-m) and (-m, n, m-n, 3n)."""
    n, m = es.n, es.m
    return ESVectors(
        n_vec=(n, m - n, -m, 2 * n - m),
        m_vec=(-m, n, m - n, 3 * n),
    )


def solve_t(es: ESIntegers) -> float:
    """Root t of f_ratio(t) = (2n-m)/(m+n), unique by monotonicity.

    Bisection bracketed on (eps, 1-eps) followed by secant polishing on
    log f_ratio; bisection is unconditionally safe near the logarithmic
    endpoints.
    """
    target = es.target_ratio
    if target <= 0.0:
        raise NoRootError(f"target ratio {target} is not positive")
    log_target = math.log(target)
    eps = 1e-9
    lo, hi = eps, 1.0 - eps

    def g(t: float) -> float:
        return math.log(f_ratio(t)) - log_target

    if g(lo) > 0.0 or g(hi) < 0.0:
        raise NoRootError(f"target ratio {target} is outside the bracketed range")
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if g(mid) < 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-12:
            break
    t0, t1 = lo, hi
    g0, g1 = g(t0), g(t1)
    for _ in range(4):
        if g1 == g0:
            break
        t2 = t1 - g1 * (t1 - t0) / (g1 - g0)
        if not (eps < t2 < 1.0 - eps):
            break
        t0, g0, t1, g1 = t1, g1, t2, g(t2)
    return t1


def curve_parameters(t: float, es: ESIntegers) -> BCurveParams:
    """Curve parameters of the subfamily: b = (1-2t)/sqrt(t(1-t)) and

        chi = -(n+m) * (2^(7/6) pi / 3) * (t(1-t))^(1/3) * 2F1(1/3,2/3;1;t).

    The chi normalization is pinned by the tetrahedral anchors: both
    (n,m) = (1,0) and (1,1) give chi = -Gamma(1/6)Gamma(1/3)/(6*2^(1/6)*sqrt(pi)),
    and the expression is invariant under the inversion pairing
    (n, m) -> (n, n-m), which swaps t and 1-t.
    """
    if not (0.0 < t < 1.0):
        raise DomainError(f"t must lie in (0,1), got {t}")
    b = (1.0 - 2.0 * t) / math.sqrt(t * (1.0 - t))
    chi = (
        -(es.n + es.m)
        * (2.0 ** (7.0 / 6.0) * math.pi / 3.0)
        * (t * (1.0 - t)) ** (1.0 / 3.0)
        * hyp2f1_13_23(t)
    )
    return BCurveParams(b=b, chi=chi)


def bcurve_to_c3(params: BCurveParams) -> C3CurveParams:
    """Embed the subfamily into the general family: (alpha, beta, gamma) = (0, chi, b chi)."""
    return C3CurveParams(alpha=0.0, beta=params.chi, gamma=params.b * params.chi)


def wellstein_tau(X) -> np.ndarray:
    """Genus-4 period matrix from the a-period vector X of dz/w:

        tau = rho^2 (H + (rho^2 - 1) H X X^T H / (X^T H X)),  H = diag(1,1,1,-1).

    Scale-invariant in X; raises if the quadratic form X^T H X vanishes.
    """
    X = np.asarray(X, dtype=complex).reshape(4)
    H = _H_DIAG
    denom = X @ (H @ X)
    if abs(denom) < 1e-14 * max(1.0, float(np.abs(X).max()) ** 2):
        raise DegenerateCurveError("X^T H X = 0: period matrix is degenerate")
    M = np.outer(H @ X, H @ X)
    tau = RHO**2 * (H + (RHO**2 - 1.0) * M / denom)
    return 0.5 * (tau + tau.T)


def tau_from_integers(es: ESIntegers) -> np.ndarray:
    """Closed-form genus-4 period matrix of the (n, m) curve:

        tau = rho^2 H + (rho - rho^2) q q^T / (q^T H q),  q = n_vec + rho^2 H m_vec.

    Equals wellstein_tau(H q) by the algebraic identity rho^2(rho^2-1) = rho - rho^2.
    """
    vecs = es_vectors(es)
    n_arr = np.array(vecs.n_vec, dtype=float)
    m_arr = np.array(vecs.m_vec, dtype=float)
    H = _H_DIAG
    q = n_arr + RHO**2 * (H @ m_arr)
    denom = q @ (H @ q)
    if abs(denom) < 1e-14:
        raise DegenerateCurveError("q^T H q = 0: period matrix is degenerate")
    tau = RHO**2 * H + (RHO - RHO**2) * np.outer(q, q) / denom
    return 0.5 * (tau + tau.T)


def winding_vector(es: ESIntegers, tau) -> np.ndarray:
    """Winding vector U = (1/2) n_vec + (1/2) tau m_vec of the theta flow."""
    tau = np.asarray(tau, dtype=complex)
    if tau.shape != (4, 4):
        raise DomainError(f"tau must be 4x4, got {tau.shape}")
    vecs = es_vectors(es)
    return 0.5 * np.array(vecs.n_vec, dtype=complex) + 0.5 * tau @ np.array(
        vecs.m_vec, dtype=float
    )


def check_h1(c: C3CurveParams, tol: float = 1e-12) -> bool:
    """True iff the curve is fixed (up to scale) by the antiholomorphic
    involution (zeta, eta) -> (-1/conj(zeta), -conj(eta)/conj(zeta)^2).

    At the coefficient level the transformed polynomial has coefficients
    (1, conj(alpha), conj(beta), conj(gamma), -conj(beta)) against the
    original (1, alpha, beta, gamma, -beta), so H1 holds iff the
    coefficients are real (within tol, scaled).
    """
    coeffs = np.array([1.0, c.alpha, c.beta, c.gamma, -c.beta], dtype=complex)
    transformed = np.conj(coeffs)
    scale = float(np.abs(coeffs).max())
    return bool(np.abs(transformed - coeffs).max() <= tol * scale)


def ramanujan_residual(x: float, y: float) -> float:
    """Residual (xy)^(1/3) + ((1-x)(1-y))^(1/3) - 1 of the signature-3,
    degree-2 modular relation; zero certifies the pairing of x and y."""
    if not (0.0 < x < 1.0 and 0.0 < y < 1.0):
        raise DomainError(f"(x, y) must lie in (0,1)^2, got ({x}, {y})")
    return (x * y) ** (1.0 / 3.0) + ((1.0 - x) * (1.0 - y)) ** (1.0 / 3.0) - 1.0
