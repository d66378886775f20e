"""Special functions used by the closed-form spectra.

Gamma ratios are evaluated through ``math.lgamma`` so that quantities such as
``(2c)_n / Gamma(2c)`` stay finite for large exponents.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from ._accel import jit

__all__ = [
    "pochhammer",
    "KummerPoly",
    "kummer_1f1",
    "lemma1_integral",
    "bessel_k_int",
    "log_bessel_k_real",
    "bessel_k_real",
    "exp_power_integral",
    "log_exp_power_integral",
    "normalization_coulomb",
    "normalization_bessel",
    "normalization_exp_power",
    "NotBoundStateError",
]

EULER_GAMMA = 0.57721566490153286061


class NotBoundStateError(ValueError):
    """Energy outside the bound-state window ``|E| < M``."""


def pochhammer(a: float, k: int) -> float:
    """Rising factorial ``a (a+1) ... (a+k-1)``; ``(a)_0 = 1``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    out = 1.0
    for j in range(k):
        out *= a + j
    return out


def _is_nonpositive_int(x: float) -> bool:
    return x <= 0 and float(x).is_integer()


@dataclass(frozen=True)
class KummerPoly:
    """Terminating confluent hypergeometric series ``1F1(-n; alpha; x)``."""

    n: int
    alpha: float

    @property
    def coefficients(self) -> np.ndarray:
        coef = np.empty(self.n + 1)
        coef[0] = 1.0
        for k in range(self.n):
            coef[k + 1] = coef[k] * (k - self.n) / ((self.alpha + k) * (k + 1))
        return coef

    def __call__(self, x):
        return np.polynomial.polynomial.polyval(x, self.coefficients)

    def roots(self) -> np.ndarray:
        if self.n == 0:
            return np.empty(0)
        return np.sort(np.polynomial.polynomial.polyroots(self.coefficients).real)


def kummer_1f1(a: float, b: float, x, rtol: float = 1e-12, max_terms: int = 10_000):
    """Kummer's function ``1F1(a; b; x)``.

    For ``a = -n`` the exact degree-``n`` polynomial is evaluated; otherwise the
    series is summed until the relative term size drops below ``rtol``.  Negative
    arguments go through Kummer's transformation to avoid cancellation.
    """
    if _is_nonpositive_int(b):
        raise ValueError(f"1F1 undefined for nonpositive integer b={b}")
    if _is_nonpositive_int(a):
        return KummerPoly(int(-a), b)(x)

    x_arr = np.asarray(x, dtype=float)
    out = np.vectorize(lambda t: _kummer_series(a, b, t, rtol, max_terms), otypes=[float])(x_arr)
    return out if out.ndim else float(out)


def _kummer_series(a, b, x, rtol, max_terms):
    if x < 0:
        return math.exp(x) * _kummer_series(b - a, b, -x, rtol, max_terms)
    term = 1.0
    total = 1.0
    for k in range(max_terms):
        term *= (a + k) / (b + k) * x / (k + 1)
        total += term
        if abs(term) <= rtol * abs(total) and k > abs(a):
            return total
    raise RuntimeError(f"1F1({a}; {b}; {x}) series did not converge")


def lemma1_integral(n: int, m: int, alpha: float) -> float:
    """Closed form of ``int_0^inf rho^alpha e^-rho 1F1(-n;alpha;rho) 1F1(-m;alpha;rho)``."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if n < 0 or m < 0:
        raise ValueError("n and m must be nonnegative")
    lg = math.lgamma
    if m == n:
        return (alpha + 2 * n) * math.exp(lg(n + 1) + 2 * lg(alpha) - lg(alpha + n))
    if m == n - 1:
        return -math.exp(2 * lg(alpha) + lg(n + 1) - lg(alpha + n - 1))
    if m == n + 1:
        return -math.exp(2 * lg(alpha) + lg(n + 2) - lg(alpha + n))
    return 0.0


@jit
def _k01_small(x):
    # power series, x <= 2
    y = 0.25 * x * x
    lnh = math.log(0.5 * x)
    i0 = 0.0
    i1 = 0.0
    s0 = 0.0
    s1 = 0.0
    term0 = 1.0  # y^k / (k!)^2
    term1 = 1.0  # y^k / (k! (k+1)!)
    harm = 0.0  # H_k
    for k in range(60):
        if k > 0:
            term0 *= y / (k * k)
            term1 *= y / (k * (k + 1))
            harm += 1.0 / k
        i0 += term0
        i1 += term1
        s0 += term0 * harm
        # psi(k+1) + psi(k+2) = -2 gamma + 2 H_k + 1/(k+1)
        s1 += term1 * (-2.0 * 0.57721566490153286061 + 2.0 * harm + 1.0 / (k + 1))
        if term0 < 1e-17 * i0 and k > 2:
            break
    i1 *= 0.5 * x
    k0 = -(lnh + 0.57721566490153286061) * i0 + s0
    k1 = 1.0 / x + lnh * i1 - 0.25 * x * s1
    return k0, k1


@jit
def _k01_large(x):
    # Steed's continued fraction (Temme), x > 2
    b = 2.0 * (1.0 + x)
    d = 1.0 / b
    h = d
    delh = d
    q1 = 0.0
    q2 = 1.0
    a1 = 0.25
    q = a1
    c = a1
    a = -a1
    s = 1.0 + q * delh
    for i in range(1, 100000):
        a -= 2 * i
        c = -a * c / (i + 1.0)
        qnew = (q1 - b * q2) / a
        q1 = q2
        q2 = qnew
        q += c * qnew
        b += 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h += delh
        dels = q * delh
        s += dels
        if abs(dels / s) < 1e-17:
            break
    h = a1 * h
    k0 = math.sqrt(math.pi / (2.0 * x)) * math.exp(-x) / s
    k1 = k0 * (x + 0.5 - h) / x
    return k0, k1


@jit
def _bessel_k_int(order, x):
    nu = abs(order)
    if x <= 2.0:
        k0, k1 = _k01_small(x)
    else:
        k0, k1 = _k01_large(x)
    if nu == 0:
        return k0
    km, kc = k0, k1
    for j in range(1, nu):
        km, kc = kc, km + 2.0 * j / x * kc
    return kc


def bessel_k_int(order: int, x: float) -> float:
    """Modified Bessel function ``K_order(x)`` for integer order, ``x > 0``."""
    if int(order) != order:
        raise ValueError("order must be an integer")
    if not x > 0:
        raise ValueError("x must be positive")
    return float(_bessel_k_int(int(order), float(x)))


def log_bessel_k_real(nu: float, x: float) -> float:
    """``log K_nu(x)`` for real order from ``K_nu(x) = int_0^inf e^{-x cosh t} cosh(nu t) dt``."""
    if not x > 0:
        raise ValueError("x must be positive")
    nu = abs(float(nu))
    # exponent phi(t) = nu t - x cosh t peaks at sinh t = nu / x
    t_peak = math.asinh(nu / x)
    phi_peak = nu * t_peak - x * math.cosh(t_peak)

    def integrand(t):
        return 0.5 * (math.exp(nu * t - x * math.cosh(t) - phi_peak) + math.exp(-nu * t - x * math.cosh(t) - phi_peak))

    # tail beyond where phi has dropped by ~60
    t_hi = t_peak + 1.0
    while nu * t_hi - x * math.cosh(t_hi) - phi_peak > -60.0:
        t_hi += 1.0
    points = [t_peak] if 0 < t_peak < t_hi else None
    val, err = integrate.quad(integrand, 0.0, t_hi, points=points, epsabs=0.0, epsrel=1e-13, limit=200)
    return math.log(val) + phi_peak


def bessel_k_real(nu: float, x: float) -> float:
    if float(nu).is_integer() and abs(nu) < 1000:
        return bessel_k_int(int(nu), x)
    return math.exp(log_bessel_k_real(nu, x))


def log_exp_power_integral(C: float, A: float, B: float) -> float:
    """``log int_0^inf r^C exp(-B r - A/r) dr = log[2 (A/B)^((C+1)/2) K_{-C-1}(2 sqrt(AB))]``."""
    if not (A > 0 and B > 0):
        raise ValueError("A and B must be positive")
    z = 2.0 * math.sqrt(A * B)
    order = C + 1.0
    if float(order).is_integer():
        logk = math.log(bessel_k_int(int(order), z))
    else:
        logk = log_bessel_k_real(order, z)
    return math.log(2.0) + 0.5 * (C + 1.0) * math.log(A / B) + logk


def exp_power_integral(C: float, A: float, B: float) -> float:
    return math.exp(log_exp_power_integral(C, A, B))


def _kappa(M: float, E: float) -> float:
    if not abs(E) < M:
        raise NotBoundStateError(f"not a bound state: |E|={abs(E)} >= M={M}")
    return math.sqrt(M * M - E * E)


def normalization_coulomb(c: float, n: int, M: float, E: float) -> float:
    """Normalization of ``r^c e^{-kappa r} 1F1(-n; 2c; 2 kappa r)`` on ``(0, inf)``."""
    if c <= 0:
        raise ValueError("c must be positive")
    kappa = _kappa(M, E)
    lg = math.lgamma
    log_n2 = (
        (2 * c + 1) * math.log(2 * kappa)
        + lg(2 * c + n)
        - 2 * lg(2 * c)
        - math.log(2 * (c + n))
        - lg(n + 1)
    )
    return math.exp(0.5 * log_n2)


def normalization_exp_power(c: float, M: float, E: float, s2: float, v2: float) -> float:
    """Normalization of ``r^c exp(-kappa r - lam / r)``, ``lam = sqrt(s2^2 - v2^2)``.

    Valid for real ``c``: the integral of the square is
    ``2 (lam/kappa)^((2c+1)/2) K_{2c+1}(4 sqrt(lam kappa))``.
    """
    if s2 * s2 <= v2 * v2:
        raise ValueError("exponential regularization absent: need s2^2 > v2^2")
    kappa = _kappa(M, E)
    lam = math.sqrt(s2 * s2 - v2 * v2)
    return math.exp(-0.5 * log_exp_power_integral(2.0 * c, 2.0 * lam, 2.0 * kappa))


def normalization_bessel(n: int, M: float, E: float, s2: float, v2: float) -> float:
    """Normalization of the nodeless state ``r^n exp(-kappa r - lam / r)``."""
    if int(n) != n:
        raise ValueError("n must be an integer")
    return normalization_exp_power(float(n), M, E, s2, v2)
