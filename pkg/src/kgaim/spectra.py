"""Closed-form spectra and wavefunctions.

Families
--------
``coulomb_1f1``
    Coulomb scalar and vector couplings, ``u = N r^c e^{-kappa r} 1F1(-n; 2c; 2 kappa r)``.
``kratzer_1f1``
    Equal scalar and vector Kratzer potentials, same functional form.
``nodeless_bessel``
    Unequal Kratzer potentials, ``u = C r^c exp(b r + a/r)``; normalized through
    the integral ``int r^C e^{-B r - A/r} dr`` (a modified Bessel function).
``monic_poly``
    Unequal Kratzer potentials with a monic polynomial factor of degree ``n``.

For unequal potentials the solutions exist only on constrained parameter sets.
Every unequal-family state therefore carries ``defects``: the scaled
residuals of the three coefficient conditions (``1/r``, ``1/r^2``, ``1/r^3``),
and for excited families the polynomial solvability condition.  ``exact`` is
true when all of them vanish to ``1e-10``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial import Polynomial
from scipy import optimize

from .model import (
    OvercriticalError,
    PotentialParams,
    ProblemSpec,
    coulomb_exponent,
    decay_a,
    decay_b,
    equal_kratzer_exponent,
    unequal_G,
)
from .specfun import (
    KummerPoly,
    NotBoundStateError,
    log_exp_power_integral,
    normalization_coulomb,
    normalization_exp_power,
)

__all__ = [
    "BoundState",
    "MonicSystem",
    "NoBoundStateError",
    "SpuriousBranchError",
    "ComplexBranchError",
    "scan_roots",
    "coulomb_energy",
    "coulomb_wavefunction",
    "equal_kratzer_energy",
    "equal_kratzer_nonrel",
    "equal_kratzer_wavefunction",
    "unequal_ground_energy_equation",
    "unequal_ground_solve",
    "unequal_family_solutions",
    "unequal_constraint_solve",
    "excited_exponent_eq69",
    "g_excited_solve",
    "g1_excited_solve",
    "g2_excited_solve",
    "condition_polynomial",
    "condition_value",
    "monic_coefficients",
    "monic_solve",
]

EXACT_TOL = 1e-10


class NoBoundStateError(ValueError):
    pass


class SpuriousBranchError(ValueError):
    pass


class ComplexBranchError(ValueError):
    pass


@dataclass(frozen=True)
class BoundState:
    """A bound state together with everything needed to evaluate ``u(r)``.

    ``u(r) = norm * r^c * exp(b r + a / r) * f(r)`` where ``f`` is
    ``1F1(-n; 2c; -2 b r)`` for the ``*_1f1`` families, ``1`` for
    ``nodeless_bessel`` and the monic polynomial with coefficients
    ``poly_coeffs`` (lowest degree first) for ``monic_poly``.
    """

    n: int
    E: float
    c: float
    family: str
    norm: float
    M: float
    b: float
    a: float = 0.0
    poly_coeffs: tuple[float, ...] | None = None
    poly_roots: tuple[complex, ...] | None = None
    G: float | None = None
    defects: dict = field(default_factory=dict)

    def __post_init__(self):
        if not abs(self.E) < self.M:
            raise NotBoundStateError(f"|E|={abs(self.E)} >= M={self.M}")
        if not self.c > 0:
            raise ValueError(f"irregular solution: c={self.c} <= 0")

    @property
    def kappa(self) -> float:
        return -self.b

    @property
    def exact(self) -> bool:
        return all(abs(v) <= EXACT_TOL for v in self.defects.values())

    def factor(self, r):
        r = np.asarray(r, dtype=float)
        if self.family in ("coulomb_1f1", "kratzer_1f1"):
            return KummerPoly(self.n, 2 * self.c)(-2 * self.b * r)
        if self.family == "nodeless_bessel":
            return np.ones_like(r)
        return np.polynomial.polynomial.polyval(r, np.asarray(self.poly_coeffs))

    def log_envelope(self, r):
        r = np.asarray(r, dtype=float)
        out = math.log(self.norm) + self.c * np.log(r) + self.b * r
        if self.a != 0.0:
            out = out + self.a / r
        return out

    def u(self, r):
        r = np.asarray(r, dtype=float)
        val = np.exp(self.log_envelope(r)) * self.factor(r)
        return val if val.ndim else float(val)

    __call__ = u

    @property
    def nodes(self) -> int:
        """Number of zeros of ``u`` on ``(0, inf)``."""
        if self.family in ("coulomb_1f1", "kratzer_1f1"):
            return self.n
        if self.family == "nodeless_bessel":
            return 0
        return sum(1 for s in self.poly_roots if abs(s.imag) <= 1e-9 * (1 + abs(s)) and s.real > 0)

    def as_row(self) -> dict:
        return {"n": self.n, "E": self.E, "c": self.c, "norm": self.norm}


def scan_roots(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    points: int = 2000,
    xtol: float = 1e-14,
    accept: Callable[[float], bool] | None = None,
) -> list[float]:
    """All sign changes of ``f`` on a uniform scan, refined by Brent's method.

    ``f`` may return ``nan`` where it is undefined; such points split the scan.
    A sign change across a pole is rejected unless ``accept`` says otherwise:
    by default the refined point must make ``|f|`` smaller than at both ends.
    """
    xs = np.linspace(lo, hi, points)
    with np.errstate(all="ignore"):
        fs = np.array([f(x) for x in xs], dtype=float)
    roots = []
    for i in range(points - 1):
        fa, fb = fs[i], fs[i + 1]
        if not (np.isfinite(fa) and np.isfinite(fb)):
            continue
        if fa == 0.0:
            roots.append(float(xs[i]))
            continue
        if fa * fb < 0:
            x = optimize.brentq(f, xs[i], xs[i + 1], xtol=xtol, rtol=4 * np.finfo(float).eps, maxiter=500)
            ok = accept(x) if accept else abs(f(x)) <= min(abs(fa), abs(fb))
            if ok:
                roots.append(float(x))
    if np.isfinite(fs[-1]) and fs[-1] == 0.0:
        roots.append(float(xs[-1]))
    return roots


def _energy_window(M: float) -> tuple[float, float]:
    eps = 1e-6 * M
    return -M + eps, M - eps


# ---------------------------------------------------------------- Coulomb


def coulomb_energy(spec: ProblemSpec, s: float, v: float, n: int, branch: str = "plus") -> float:
    """Coulomb eigenvalue from the closed form, with the branch validated.

    The squared-out equation admits two roots; a root is kept only if
    ``(M s + E v) / sqrt(M^2 - E^2)`` equals ``n + c`` (positive side).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if branch not in ("plus", "minus"):
        raise ValueError("branch must be 'plus' or 'minus'")
    M = spec.M
    c = coulomb_exponent(spec, s, v)
    beta = n + c
    disc = beta * beta + v * v - s * s
    if disc < 0:
        raise NoBoundStateError(f"no real energy: beta^2 + v^2 - s^2 = {disc:.6g} < 0")
    sign = 1.0 if branch == "plus" else -1.0
    E = M * (-s * v + sign * beta * math.sqrt(disc)) / (beta * beta + v * v)
    if not abs(E) < M:
        raise NoBoundStateError(f"{branch} branch gives |E| = {abs(E)} >= M")
    lhs = (M * s + E * v) / math.sqrt(M * M - E * E)
    if not (M * s + E * v > 0 and abs(lhs - beta) <= 1e-10 * beta):
        raise SpuriousBranchError(f"{branch} branch does not satisfy the unsquared eigenvalue equation")
    return E


def coulomb_wavefunction(
    spec: ProblemSpec, s: float, v: float, n: int, E: float | None = None, branch: str = "plus"
) -> BoundState:
    if E is None:
        E = coulomb_energy(spec, s, v, n, branch)
    c = coulomb_exponent(spec, s, v)
    norm = normalization_coulomb(c, n, spec.M, E)
    return BoundState(n=n, E=E, c=c, family="coulomb_1f1", norm=norm, M=spec.M, b=decay_b(spec.M, E))


# ------------------------------------------------------- equal Kratzer


def _equal_kratzer_mismatch(spec: ProblemSpec, A: float, B: float, n: int):
    M, k = spec.M, spec.k

    def f(E):
        disc = (k - 2) ** 2 + 8 * A * (M + E)
        if disc < 0:
            return math.nan
        return 2 * B * (M + E) / math.sqrt(M * M - E * E) - (2 * n + 1) - math.sqrt(disc)

    return f


def equal_kratzer_energy(spec: ProblemSpec, A: float, B: float, n: int, points: int = 2000) -> float:
    """Lowest root of the equal-Kratzer eigenvalue equation in ``(-M, M)``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if B <= 0:
        raise NoBoundStateError(f"no bound state at n={n}: B must be positive")
    lo, hi = _energy_window(spec.M)
    roots = scan_roots(_equal_kratzer_mismatch(spec, A, B, n), lo, hi, points)
    if not roots:
        raise NoBoundStateError(f"no bound state at n={n}")
    return roots[0]


def equal_kratzer_nonrel(spec: ProblemSpec, A: float, B: float, n: int) -> float:
    """Leading non-relativistic binding energy ``E - M``."""
    M, k = spec.M, spec.k
    disc = (k - 2) ** 2 + 16 * A * M
    if disc < 0:
        raise OvercriticalError(f"overcritical inverse-square coupling: {disc:.6g} < 0")
    return -8 * M * B * B / (2 * n + 1 + math.sqrt(disc)) ** 2


def equal_kratzer_wavefunction(
    spec: ProblemSpec, A: float, B: float, n: int, E: float | None = None
) -> BoundState:
    if E is None:
        E = equal_kratzer_energy(spec, A, B, n)
    c = equal_kratzer_exponent(spec, A, E)
    norm = normalization_coulomb(c, n, spec.M, E)
    return BoundState(n=n, E=E, c=c, family="kratzer_1f1", norm=norm, M=spec.M, b=decay_b(spec.M, E))


# ---------------------------------------------- unequal Kratzer helpers


def _lam(params: PotentialParams) -> float:
    d = params.s2**2 - params.v2**2
    if d <= 0:
        raise ValueError("exponential regularization absent: need s2^2 > v2^2")
    return math.sqrt(d)


def _scaled(total: float, *terms: float) -> float:
    size = sum(abs(t) for t in terms)
    return total / size if size > 0 else total


def _defects(spec: ProblemSpec, params: PotentialParams, E: float, c: float) -> dict:
    """Scaled residuals of the ``1/r``, ``1/r^2`` and ``1/r^3`` conditions at ``f = const``."""
    M, p = spec.M, params
    a, b = decay_a(p), decay_b(M, E)
    coulombic = M * p.s1 + E * p.v1
    mixed = p.v1 * p.v2 - p.s1 * p.s2
    g_terms = (
        2 * M * p.s2,
        2 * E * p.v2,
        p.s1**2,
        -(p.v1**2),
        spec.centrifugal,
        -c * c,
        c,
        2 * a * b,
    )
    return {
        "inverse_r": _scaled(coulombic + c * b, coulombic, c * b),
        "inverse_r2": _scaled(sum(g_terms), *g_terms),
        "inverse_r3": _scaled(mixed - a + c * a, mixed, a, c * a),
    }


def _exp_power_norm(c: float, a: float, b: float, coeffs: Sequence[float] = (1.0,)) -> float:
    """Normalization of ``r^c exp(b r + a/r) sum_k coeffs[k] r^k``."""
    A, B = -2.0 * a, -2.0 * b
    logs = []
    signs = []
    for i, ci in enumerate(coeffs):
        for j, cj in enumerate(coeffs):
            w = ci * cj
            if w == 0:
                continue
            logs.append(math.log(abs(w)) + log_exp_power_integral(2 * c + i + j, A, B))
            signs.append(math.copysign(1.0, w))
    top = max(logs)
    total = sum(s * math.exp(l - top) for s, l in zip(signs, logs))
    if total <= 0:
        raise ArithmeticError("normalization integral is not positive")
    return math.exp(-0.5 * (top + math.log(total)))


def unequal_ground_energy_equation(spec: ProblemSpec, params: PotentialParams) -> Callable[[float], float]:
    """Mismatch ``lhs(E) - rhs(E)`` of the unequal-Kratzer ground-state equation.

    Returns ``nan`` where the square root is undefined.
    """
    M, k, p = spec.M, spec.k, params
    lam = _lam(p)

    def f(E):
        kappa = math.sqrt(M * M - E * E)
        coulombic = M * p.s1 + E * p.v1
        disc = (
            (k / 2 - 1) ** 2
            + 2 * coulombic * lam
            - 2 * (p.v1 * p.v2 - p.s1 * p.s2) * kappa
            + 2 * (M * p.s2 + E * p.v2)
            + p.s1**2
            - p.v1**2
        )
        if disc < 0:
            return math.nan
        return coulombic / kappa - 0.5 - math.sqrt(disc)

    return f


def _pick(states: list[BoundState]) -> BoundState:
    def badness(s: BoundState):
        return max(abs(v) for v in s.defects.values())

    return min(states, key=lambda s: (badness(s), -s.E))


def unequal_ground_solve(spec: ProblemSpec, params: PotentialParams, points: int = 2000) -> BoundState:
    """Nodeless ``r^c exp(b r + a/r)`` state from the ground-state energy equation.

    All roots in ``(-M, M)`` with ``c > 0`` are examined and the one with the
    smallest coefficient defects is returned.  Off the constrained parameter
    set the returned state is not an exact eigenfunction; see ``defects``.
    """
    M, p = spec.M, params
    a = decay_a(p)
    _lam(p)
    lo, hi = _energy_window(M)
    roots = scan_roots(unequal_ground_energy_equation(spec, p), lo, hi, points)
    if not roots:
        raise NoBoundStateError("no root of the ground-state equation in (-M, M)")
    states = []
    for E in roots:
        b = decay_b(M, E)
        c = (M * p.s1 + E * p.v1) / -b
        if c <= 0:
            continue
        states.append(
            BoundState(
                n=0,
                E=E,
                c=c,
                family="nodeless_bessel",
                norm=normalization_exp_power(c, M, E, p.s2, p.v2),
                M=M,
                b=b,
                a=a,
                defects=_defects(spec, p, E, c),
            )
        )
    if not states:
        raise ValueError("irregular solution: every root has c <= 0")
    return _pick(states)


# ---------------------------------------------------- monic polynomials


def monic_coefficients(n: int, a: float, b: float, c: float, G) -> list:
    """Coefficients ``a_0..a_n`` (``a_n = 1``) from the top-down recursion.

    ``G`` may be a number or a :class:`numpy.polynomial.Polynomial`, in which
    case each coefficient is returned as a polynomial in ``G``.  Also returns
    the left-over lowest-order condition ``G a_0 + 2 a a_1``.
    """
    if not b < 0:
        raise ValueError("b must be negative")
    one = G * 0 + 1
    coef = {n: one, n + 1: G * 0}
    for m in range(n, 0, -1):
        pivot = 2 * b * (m - 1 - n)
        coef[m - 1] = -((m * (m - 1) + 2 * c * m - G) * coef[m] - 2 * a * (m + 1) * coef[m + 1]) / pivot
    leftover = G * coef[0] + 2 * a * coef.get(1, G * 0)
    return [coef[m] for m in range(n + 1)], leftover


def condition_value(n: int, a: float, b: float, c: float, G: float) -> float:
    """Monic solvability polynomial evaluated at a numeric ``G``."""
    _, left = monic_coefficients(n, a, b, c, G)
    lead = 1.0
    for m in range(1, n + 1):
        lead /= 2 * b * (m - 1 - n)
    return left / lead


def condition_polynomial(n: int, a: float, b: float, c: float) -> np.ndarray:
    """Monic solvability polynomial in ``G``, coefficients lowest degree first."""
    _, cond = monic_coefficients(n, a, b, c, Polynomial([0.0, 1.0]))
    coef = np.asarray(cond.coef, dtype=float)
    coef = np.concatenate([coef, np.zeros(n + 2 - len(coef))])
    return coef / coef[-1]


@dataclass(frozen=True)
class MonicSystem:
    n: int
    a_decay: float
    b_decay: float
    c_exp: float
    G: float
    coefficients: tuple[float, ...]

    @property
    def roots(self) -> np.ndarray:
        if self.n == 0:
            return np.empty(0, dtype=complex)
        return np.polynomial.polynomial.polyroots(np.asarray(self.coefficients)).astype(complex)

    def relations(self) -> np.ndarray:
        """Scaled residuals of the linear relations between the coefficients."""
        n, a, b, c, G = self.n, self.a_decay, self.b_decay, self.c_exp, self.G
        F = 2 * n * b
        co = list(self.coefficients) + [0.0, 0.0]
        out = []
        for m in range(n + 1):
            lower = co[m - 1] if m >= 1 else 0.0
            terms = (
                (m * (m - 1) + 2 * c * m - G) * co[m],
                -2 * a * (m + 1) * co[m + 1],
                (2 * b * (m - 1) - F) * lower,
            )
            out.append(_scaled(sum(terms), *terms))
        return np.asarray(out)


def _real_roots(coef: np.ndarray) -> list[float]:
    roots = np.polynomial.polynomial.polyroots(coef)
    poly = Polynomial(coef)
    dpoly = poly.deriv()
    out = []
    for z in roots:
        if abs(z.imag) <= 1e-7 * (1 + abs(z)):
            x = z.real
            for _ in range(3):
                d = dpoly(x)
                if d == 0:
                    break
                x -= poly(x) / d
            out.append(float(x))
    return sorted(out)


def monic_solve(n: int, a: float, b: float, c: float) -> tuple[np.ndarray, list[MonicSystem]]:
    """Solvability polynomial in ``G`` and the monic solutions for its real roots."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if a > 0:
        raise ValueError("a must be nonpositive")
    cond = condition_polynomial(n, a, b, c)
    systems = []
    for G in _real_roots(cond):
        coeffs, _ = monic_coefficients(n, a, b, c, G)
        systems.append(MonicSystem(n, a, b, c, G, tuple(float(x) for x in coeffs)))
    return cond, systems


# -------------------------------------------- unequal Kratzer families


def unequal_family_solutions(
    spec: ProblemSpec, s2: float, v2: float, degree: int, c: float, points: int = 4000
) -> list[tuple[PotentialParams, float]]:
    """Couplings ``(s1, v1)`` and energies admitting an exact state of given form.

    The state is ``r^c exp(b r + a/r) f(r)`` with ``f`` monic of ``degree``.
    For each trial ``E`` the ``1/r`` and ``1/r^3`` conditions are linear in
    ``(s1, v1)``; the remaining scalar condition (``G = 0`` for degree 0, the
    solvability polynomial otherwise) is solved in ``E``.
    """
    M = spec.M
    if s2 * s2 <= v2 * v2:
        raise ValueError("need s2^2 > v2^2")
    if c <= 0:
        raise ValueError("c must be positive")
    lam = math.sqrt(s2 * s2 - v2 * v2)

    def couplings(E):
        kappa = math.sqrt(M * M - E * E)
        mat = np.array([[-s2, v2], [M, E]])
        rhs = np.array([(c - 1) * lam, (c + degree) * kappa])
        if abs(np.linalg.det(mat)) < 1e-14 * (abs(s2 * E) + abs(v2 * M)):
            return None
        s1, v1 = np.linalg.solve(mat, rhs)
        return PotentialParams(s1=float(s1), v1=float(v1), s2=s2, v2=v2)

    def condition(E):
        p = couplings(E)
        if p is None:
            return math.nan
        kappa = math.sqrt(M * M - E * E)
        ab = lam * kappa
        G = unequal_G(spec, p, E, c, ab)
        if degree == 0:
            return G
        return condition_value(degree, -lam, -kappa, c, G) / max(1.0, abs(G)) ** (degree + 1)

    lo, hi = _energy_window(M)
    out = []
    for E in scan_roots(condition, lo, hi, points):
        p = couplings(E)
        if p is not None:
            out.append((p, E))
    return out


def unequal_constraint_solve(
    spec: ProblemSpec, s2: float, v2: float, n: int, E_guess: float | None = None
) -> tuple[PotentialParams, BoundState]:
    """Couplings for which ``u = C r^n exp(b r + a/r)`` is an exact nodeless state.

    ``s1``, ``v1`` and ``E`` are solved from the three coefficient conditions.
    Only attractive Coulomb tails (``s1 > 0``, ``v1 > 0``) are accepted.  Among
    several solutions the one closest to ``E_guess`` (default: the lowest
    energy) is returned.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    sols = unequal_family_solutions(spec, s2, v2, 0, float(n))
    sols = [(p, E) for p, E in sols if p.s1 > 0 and p.v1 > 0 and spec.M * p.s1 + E * p.v1 > 0]
    if not sols:
        raise NoBoundStateError(f"no bound state with r^{n} prefactor for s2={s2}, v2={v2}")
    if E_guess is None:
        p, E = min(sols, key=lambda t: t[1])
    else:
        p, E = min(sols, key=lambda t: abs(t[1] - E_guess))
    M = spec.M
    state = BoundState(
        n=n,
        E=E,
        c=float(n),
        family="nodeless_bessel",
        norm=normalization_exp_power(float(n), M, E, s2, v2),
        M=M,
        b=decay_b(M, E),
        a=decay_a(p),
        defects=_defects(spec, p, E, float(n)),
    )
    return p, state


def excited_exponent_eq69(mu: float, ab: float) -> float:
    """Closed-form exponent for the one-node family, ``c = sqrt(2 + 4mu + 2 sqrt(4mu + 1 + 16ab)) / 2``.

    This root corresponds to ``G = c - sqrt(c^2 + 4ab)``.
    """
    inner = 4 * mu + 1 + 16 * ab
    if inner < 0:
        raise ComplexBranchError("4 mu + 1 + 16 ab < 0")
    return 0.5 * math.sqrt(2 + 4 * mu + 2 * math.sqrt(inner))


def _excited_pieces(spec: ProblemSpec, params: PotentialParams, n: int, E: float):
    M, p = spec.M, params
    lam = _lam(p)
    kappa = math.sqrt(M * M - E * E)
    coulombic = M * p.s1 + E * p.v1
    c = coulombic / kappa - n
    ab = (coulombic * lam - (p.v1 * p.v2 - p.s1 * p.s2) * kappa) / (n + 1)
    G = unequal_G(spec, p, E, c, ab)
    return c, ab, G


def g_excited_solve(spec: ProblemSpec, params: PotentialParams, n: int, points: int = 4000) -> BoundState:
    """Unequal-Kratzer state with a degree-``n`` monic polynomial factor.

    The energy solves the degree-``n`` solvability condition with ``c`` from
    the ``1/r`` quantization and ``ab`` eliminated through the ``1/r^3``
    condition.  Roots are kept when ``c > 0``; the least defective is returned.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    M, p = spec.M, params
    a = decay_a(p)
    _lam(p)

    def cond(E):
        c, ab, G = _excited_pieces(spec, p, n, E)
        if c <= 0:
            return math.nan
        # ab enters only through the product a*b, so a unit split is enough
        return condition_value(n, -1.0, -ab, c, G) / max(1.0, abs(G), abs(c)) ** (n + 1)

    lo, hi = _energy_window(M)
    roots = scan_roots(cond, lo, hi, points)
    if not roots:
        if n == 1:
            cs = [(_excited_pieces(spec, p, n, E)) for E in np.linspace(lo, hi, 200)]
            if all(c * c + 4 * ab < 0 for c, ab, _ in cs if c > 0) and any(c > 0 for c, _, _ in cs):
                raise ComplexBranchError("c^2 + 4ab < 0 throughout: no real solution")
        raise NoBoundStateError(f"no root of the degree-{n} condition in (-M, M)")

    states = []
    for E in roots:
        c, ab, G = _excited_pieces(spec, p, n, E)
        b = decay_b(M, E)
        coeffs, _ = monic_coefficients(n, a, b, c, G)
        coeffs = tuple(float(x) for x in coeffs)
        roots_f = np.polynomial.polynomial.polyroots(np.asarray(coeffs)).astype(complex)
        defects = _defects(spec, p, E, c)
        # the 1/r condition for degree n is c + n = lhs; shift the reported defect accordingly
        coulombic = M * p.s1 + E * p.v1
        defects["inverse_r"] = _scaled(coulombic + (c + n) * b, coulombic, (c + n) * b)
        G_true = unequal_G(spec, p, E, c, a * b)
        defects["inverse_r2"] = condition_value(n, a, b, c, G_true) / max(1.0, abs(G_true), abs(c)) ** (n + 1)
        try:
            norm = _exp_power_norm(c, a, b, coeffs)
        except ArithmeticError:
            continue
        states.append(
            BoundState(
                n=n,
                E=E,
                c=c,
                family="monic_poly",
                norm=norm,
                M=M,
                b=b,
                a=a,
                poly_coeffs=coeffs,
                poly_roots=tuple(roots_f),
                G=G,
                defects=defects,
            )
        )
    if not states:
        raise ValueError("irregular solution: no root with c > 0")
    return _pick(states)


def g1_excited_solve(spec: ProblemSpec, params: PotentialParams) -> BoundState:
    return g_excited_solve(spec, params, 1)


def g2_excited_solve(spec: ProblemSpec, params: PotentialParams) -> BoundState:
    return g_excited_solve(spec, params, 2)
