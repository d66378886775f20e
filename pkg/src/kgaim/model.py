"""Radial Klein-Gordon problem with Kratzer-type scalar and vector potentials.

The reduced radial function obeys ``u'' = Q(r) u`` with

    Q(r) = (k-1)(k-3)/(4 r^2) + (M + S(r))^2 - (E - V(r))^2,
    S(r) = -s1/r + s2/r^2,  V(r) = -v1/r + v2/r^2,  k = d + 2 l.

Natural units (hbar = c = 1) throughout.  Decay constants follow the negative
sign convention ``a = -sqrt(s2^2 - v2^2)``, ``b = -sqrt(M^2 - E^2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .laurent import LaurentPoly
from .specfun import NotBoundStateError

__all__ = [
    "ProblemSpec",
    "PotentialParams",
    "RadialEquation",
    "FactorizationAnsatz",
    "OvercriticalError",
    "build_radial",
    "coulomb_exponent",
    "equal_kratzer_exponent",
    "unequal_exponent",
    "decay_b",
    "decay_a",
    "build_aim_inputs",
    "unequal_G",
]


class OvercriticalError(ValueError):
    """No real indicial exponent: the coupling is overcritical."""


@dataclass(frozen=True)
class ProblemSpec:
    M: float
    d: int = 3
    l: int = 0
    k: int = field(init=False)

    def __post_init__(self):
        if not self.M > 0:
            raise ValueError("mass M must be positive")
        if self.d < 1 or self.l < 0:
            raise ValueError("need d >= 1 and l >= 0")
        object.__setattr__(self, "k", self.d + 2 * self.l)

    @property
    def centrifugal(self) -> float:
        return (self.k - 1) * (self.k - 3) / 4.0


@dataclass(frozen=True)
class PotentialParams:
    s1: float = 0.0
    v1: float = 0.0
    s2: float = 0.0
    v2: float = 0.0

    @classmethod
    def coulomb(cls, s: float, v: float) -> "PotentialParams":
        return cls(s1=s, v1=v)

    @classmethod
    def equal_kratzer(cls, A: float, B: float) -> "PotentialParams":
        return cls(s1=B, v1=B, s2=A, v2=A)

    def scalar(self, r):
        return -self.s1 / r + self.s2 / r**2

    def vector(self, r):
        return -self.v1 / r + self.v2 / r**2


@dataclass(frozen=True)
class RadialEquation:
    """Coefficients of ``u'' = (c1/r + c2/r^2 + c3/r^3 + c4/r^4 - const) u``.

    ``const`` is ``E^2 - M^2``.
    """

    c1: float
    c2: float
    c3: float
    c4: float
    const: float

    def Q(self, r):
        return self.c1 / r + self.c2 / r**2 + self.c3 / r**3 + self.c4 / r**4 - self.const

    def terms(self, r):
        """Individual potential terms, for residual scaling."""
        return (self.c1 / r, self.c2 / r**2, self.c3 / r**3, self.c4 / r**4)


@dataclass(frozen=True)
class FactorizationAnsatz:
    """``u(r) = r^c exp(b r + a / r) f(r)`` with ``a <= 0``, ``b <= 0``."""

    c: float
    a: float
    b: float

    def __post_init__(self):
        if self.a > 0 or self.b > 0:
            raise ValueError("decay constants a and b must be nonpositive")

    def envelope(self, r):
        import numpy as np

        r = np.asarray(r, dtype=float)
        return r**self.c * np.exp(self.b * r + self.a / r)


def build_radial(spec: ProblemSpec, params: PotentialParams, E: float) -> RadialEquation:
    M = spec.M
    if not abs(E) < M:
        raise NotBoundStateError(f"|E|={abs(E)} must be below M={M}")
    p = params
    return RadialEquation(
        c1=-2.0 * (M * p.s1 + E * p.v1),
        c2=2.0 * M * p.s2 + p.s1**2 + 2.0 * E * p.v2 - p.v1**2 + spec.centrifugal,
        c3=2.0 * (p.v1 * p.v2 - p.s1 * p.s2),
        c4=p.s2**2 - p.v2**2,
        const=E * E - M * M,
    )


def _half_plus_sqrt(disc: float, what: str) -> float:
    if disc < 0:
        raise OvercriticalError(f"overcritical {what}: indicial discriminant {disc:.6g} < 0")
    return 0.5 + math.sqrt(disc)


def coulomb_exponent(spec: ProblemSpec, s: float, v: float) -> float:
    return _half_plus_sqrt((spec.k / 2 - 1) ** 2 + s * s - v * v, "vector coupling")


def equal_kratzer_exponent(spec: ProblemSpec, A: float, E: float) -> float:
    return _half_plus_sqrt((spec.k / 2 - 1) ** 2 + 2 * A * (spec.M + E), "inverse-square coupling")


def unequal_exponent(params: PotentialParams) -> float:
    """Exponent that removes the ``1/r^3`` term after factoring ``exp(a/r)``.

    The result may be nonpositive; callers reject such values.
    """
    p = params
    if p.s2 * p.s2 <= p.v2 * p.v2:
        raise ValueError("need s2^2 > v2^2")
    return (p.v1 * p.v2 - p.s1 * p.s2) / math.sqrt(p.s2**2 - p.v2**2) + 1.0


def decay_b(M: float, E: float) -> float:
    if not abs(E) < M:
        raise NotBoundStateError(f"|E|={abs(E)} must be below M={M}")
    return -math.sqrt(M * M - E * E)


def decay_a(params: PotentialParams) -> float:
    d = params.s2**2 - params.v2**2
    if d < 0:
        raise ValueError("need s2^2 >= v2^2")
    return -math.sqrt(d)


def unequal_G(spec: ProblemSpec, params: PotentialParams, E: float, c: float, ab: float) -> float:
    """Coefficient of ``1/r^2`` in the reduced equation for ``f``."""
    p = params
    M = spec.M
    return 2 * (M * p.s2 + E * p.v2) + p.s1**2 - p.v1**2 + spec.centrifugal - c * c + c + 2 * ab


def build_aim_inputs(
    case: str,
    spec: ProblemSpec,
    params: PotentialParams,
    E: float,
    c: float | None = None,
) -> tuple[LaurentPoly, LaurentPoly]:
    """``(lambda0, s0)`` of the reduced equation for ``f`` after factoring the asymptotics.

    ``case`` is ``"coulomb"``, ``"equal_kratzer"`` or ``"unequal_kratzer"``.  When
    ``c`` is omitted it is taken from the matching exponent rule.
    """
    M = spec.M
    b = decay_b(M, E)
    p = params
    if case == "coulomb":
        if c is None:
            c = coulomb_exponent(spec, p.s1, p.v1)
        lam0 = LaurentPoly({-1: -2 * c, 0: -2 * b})
        s0 = LaurentPoly({-1: -2 * (M * p.s1 + E * p.v1) - 2 * c * b})
        return lam0, s0
    if case == "equal_kratzer":
        B, A = p.s1, p.s2
        if c is None:
            c = equal_kratzer_exponent(spec, A, E)
        lam0 = LaurentPoly({-1: -2 * c, 0: -2 * b})
        s0 = LaurentPoly({-1: -2 * B * (M + E) - 2 * c * b})
        return lam0, s0
    if case == "unequal_kratzer":
        a = decay_a(p)
        if c is None:
            c = unequal_exponent(p)
        G = unequal_G(spec, p, E, c, a * b)
        lam0 = LaurentPoly({-2: 2 * a, -1: -2 * c, 0: -2 * b})
        s0 = LaurentPoly({-2: G, -1: -2 * (M * p.s1 + E * p.v1) - 2 * c * b})
        return lam0, s0
    raise ValueError(f"unknown case {case!r}")
