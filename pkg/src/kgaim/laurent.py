"""Sparse Laurent polynomials and the asymptotic iteration method (AIM).

A :class:`LaurentPoly` is a finite map from integer exponents (negative ones
allowed) to real coefficients.  AIM acts on equations of the form

    y'' = lambda0(r) y' + s0(r) y

by iterating

    lambda_n = lambda_{n-1}' + s_{n-1} + lambda0 * lambda_{n-1}
    s_n      = s_{n-1}'      + s0 * lambda_{n-1}

and declaring termination when ``delta_n = lambda_n s_{n-1} - lambda_{n-1} s_n``
vanishes identically.  With the seed ``(lambda_{-1}, s_{-1}) = (1, 0)`` the same
recursion reproduces ``(lambda0, s0)``, which gives ``delta_0 = -s0``: the
condition for a constant solution.  Hence ``delta_n`` is the condition for a
polynomial solution of degree ``n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping

import numpy as np

__all__ = [
    "LaurentPoly",
    "AIMSession",
    "AIMOverflowError",
    "AIMNotConvergingError",
    "NoRootInBracketError",
    "laurent_arith",
    "laurent_diff",
    "aim_iterate",
    "delta_is_zero",
    "aim_numeric_root",
]


class AIMOverflowError(ArithmeticError):
    """Raised when an AIM iterate leaves the representable float range."""

    def __init__(self, index: int):
        super().__init__(f"coefficient overflow at AIM iteration {index}")
        self.index = index


class AIMNotConvergingError(RuntimeError):
    pass


class NoRootInBracketError(ValueError):
    pass


class LaurentPoly(Mapping[int, float]):
    """Immutable sparse Laurent polynomial ``sum_e c_e x**e``.

    Exactly-zero coefficients are never stored.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, float] | Iterable[tuple[int, float]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[int, float] = {}
        for e, c in items:
            if int(e) != e:
                raise ValueError(f"exponent {e!r} is not an integer")
            e = int(e)
            clean[e] = clean.get(e, 0.0) + float(c)
        self._terms = {e: c for e, c in sorted(clean.items()) if c != 0.0}

    @classmethod
    def constant(cls, value: float) -> "LaurentPoly":
        return cls({0: value})

    @classmethod
    def monomial(cls, exponent: int, coeff: float = 1.0) -> "LaurentPoly":
        return cls({exponent: coeff})

    # Mapping protocol
    def __getitem__(self, e: int) -> float:
        return self._terms[e]

    def __iter__(self) -> Iterator[int]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def get(self, e, default=0.0):
        return self._terms.get(e, default)

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, float)):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __repr__(self) -> str:
        if not self._terms:
            return "LaurentPoly(0)"
        body = " + ".join(f"{c:.6g}*x^{e}" for e, c in self._terms.items())
        return f"LaurentPoly({body})"

    # Arithmetic
    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, float, np.floating, np.integer)):
            return LaurentPoly.constant(float(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0.0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, float] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0.0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def diff(self) -> "LaurentPoly":
        return LaurentPoly({e - 1: e * c for e, c in self._terms.items() if e != 0})

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        total = np.zeros_like(x)
        for e, c in self._terms.items():
            total = total + c * x**e
        return total if total.ndim else float(total)

    # Inspection
    @property
    def is_zero(self) -> bool:
        return not self._terms

    def exponent_range(self) -> tuple[int, int] | None:
        if not self._terms:
            return None
        keys = list(self._terms)
        return keys[0], keys[-1]

    def max_abs(self) -> float:
        return max((abs(c) for c in self._terms.values()), default=0.0)

    def is_finite(self) -> bool:
        return all(math.isfinite(c) for c in self._terms.values())


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1.0)


def laurent_arith(a: LaurentPoly, b: LaurentPoly, op: str) -> LaurentPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def laurent_diff(a: LaurentPoly) -> LaurentPoly:
    return a.diff()


def delta_is_zero(delta: LaurentPoly, tol: float = 1e-9, scale: float = 0.0) -> bool:
    """Relative-scale zero test: ``max|delta| <= tol * (scale + 1)``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    return delta.max_abs() <= tol * (scale + 1.0)


@dataclass(frozen=True)
class AIMSession:
    """AIM iterates ``(lambda_n, s_n)`` and termination polynomials ``delta_n``.

    ``iterates[n]`` and ``deltas[n]`` are indexed by ``n = 0..n_max``.
    """

    lambda0: LaurentPoly
    s0: LaurentPoly
    iterates: list[tuple[LaurentPoly, LaurentPoly]] = field(default_factory=list)
    deltas: list[LaurentPoly] = field(default_factory=list)

    @property
    def n_max(self) -> int:
        return len(self.deltas) - 1

    def scale(self, n: int) -> float:
        """Magnitude of the two products whose difference is ``delta_n``."""
        lam_n, s_n = self.iterates[n]
        lam_p, s_p = self.iterates[n - 1] if n > 0 else (ONE, ZERO)
        return max((lam_n * s_p).max_abs(), (lam_p * s_n).max_abs())

    def relative_defect(self, n: int) -> float:
        return self.deltas[n].max_abs() / (self.scale(n) + 1.0)

    def terminated(self, n: int, tol: float = 1e-9) -> bool:
        return delta_is_zero(self.deltas[n], tol, self.scale(n))


def aim_iterate(lambda0: LaurentPoly, s0: LaurentPoly, n_max: int) -> AIMSession:
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    iterates = [(lambda0, s0)]
    deltas = [-s0]
    lam_p, s_p = lambda0, s0
    for n in range(1, n_max + 1):
        lam_n = lam_p.diff() + s_p + lambda0 * lam_p
        s_n = s_p.diff() + s0 * lam_p
        if not (lam_n.is_finite() and s_n.is_finite()):
            raise AIMOverflowError(n)
        delta = lam_n * s_p - lam_p * s_n
        if not delta.is_finite():
            raise AIMOverflowError(n)
        iterates.append((lam_n, s_n))
        deltas.append(delta)
        lam_p, s_p = lam_n, s_n
    return AIMSession(lambda0, s0, iterates, deltas)


def _delta_at(build, n: int, E: float, r0: float) -> float:
    lam0, s0 = build(E)
    if n == 0:
        return -s0(r0)
    session = aim_iterate(lam0, s0, n)
    return session.deltas[n](r0)


def aim_numeric_root(
    build: Callable[[float], tuple[LaurentPoly, LaurentPoly]],
    n: int,
    bracket: tuple[float, float],
    r0: float | Callable[[float], float] | None = None,
    M: float | None = None,
    samples: int = 64,
    xtol: float = 1e-12,
    check_convergence: bool = False,
) -> float:
    """Root of ``delta_n(r0; E)`` in ``E`` by scan-and-bisect.

    ``build(E)`` returns ``(lambda0, s0)`` at energy ``E``.  ``r0`` defaults to
    the length scale ``1/sqrt(M**2 - E**2)`` (requires ``M``).  The lowest sign
    change found on a ``samples``-point scan of the bracket is refined.
    """
    lo, hi = bracket
    if not lo < hi:
        raise ValueError("bracket must satisfy E_lo < E_hi")
    if M is not None and not (-M < lo and hi < M):
        raise ValueError("bracket must lie inside (-M, M)")
    if r0 is None:
        if M is None:
            raise ValueError("either r0 or M is required")
        r0_of = lambda E: 1.0 / math.sqrt(M * M - E * E)
    elif callable(r0):
        r0_of = r0
    else:
        if r0 <= 0:
            raise ValueError("r0 must be positive")
        r0_of = lambda E: r0

    f = lambda E: _delta_at(build, n, E, r0_of(E))
    grid = np.linspace(lo, hi, max(samples, 2))
    vals = [f(E) for E in grid]
    root = None
    for i in range(len(grid) - 1):
        if vals[i] == 0.0:
            root = grid[i]
            break
        if vals[i] * vals[i + 1] < 0:
            a, b, fa = grid[i], grid[i + 1], vals[i]
            while b - a > xtol:
                m = 0.5 * (a + b)
                fm = f(m)
                if fm == 0.0:
                    a = b = m
                    break
                if fa * fm < 0:
                    b = m
                else:
                    a, fa = m, fm
            root = 0.5 * (a + b)
            break
    if root is None:
        if vals[-1] == 0.0:
            root = grid[-1]
        else:
            raise NoRootInBracketError(f"no root in bracket ({lo}, {hi}) for delta_{n}")

    if check_convergence and n >= 1:
        prev = aim_numeric_root(build, n - 1, bracket, r0, M, samples, xtol)
        nxt = aim_numeric_root(build, n + 1, bracket, r0, M, samples, xtol)
        if abs(nxt - root) > abs(root - prev) + 10 * xtol:
            raise AIMNotConvergingError(
                f"AIM not converging: |E{n+1}-E{n}|={abs(nxt-root):.3g} > |E{n}-E{n-1}|={abs(root-prev):.3g}"
            )
    return float(root)
