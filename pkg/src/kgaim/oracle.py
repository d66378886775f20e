"""Numerical cross-checks that do not rely on any closed form.

* :func:`shoot_eigenvalue` integrates ``u'' = Q(r) u`` directly, with ``Q``
  assembled from the scalar and vector potentials, using Numerov's method on a
  logarithmic grid.  With ``r = e^x`` and ``u = r^(1/2) w`` the equation becomes
  ``w'' = (r^2 Q + 1/4) w``, which is regular at both ends of the grid.
* :func:`quad_adaptive` is adaptive quadrature on finite or semi-infinite
  ranges.
* :func:`residual` measures how well a candidate ``u`` satisfies the radial
  equation using fourth-order finite differences.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate, optimize

from ._kernels import count_nodes, numerov_inward, numerov_outward
from .model import PotentialParams, ProblemSpec, build_radial

__all__ = [
    "ShootingConfig",
    "ShootingResult",
    "ShootingError",
    "StiffStartError",
    "QuadratureError",
    "GridTooCoarseError",
    "q_direct",
    "node_count_at",
    "shoot_state",
    "shoot_eigenvalue",
    "quad_adaptive",
    "residual",
    "norm_defect",
]


class ShootingError(RuntimeError):
    pass


class StiffStartError(ShootingError):
    """The equation cannot be started near the origin (collapse to the centre)."""

    def __init__(self, msg: str, r_min: float):
        super().__init__(f"{msg} (smallest reachable r = {r_min:.6g})")
        self.r_min = r_min


class QuadratureError(RuntimeError):
    pass


class GridTooCoarseError(RuntimeError):
    pass


@dataclass(frozen=True)
class ShootingConfig:
    """Grid settings.  Lengths are in units of ``1/kappa``, ``kappa = sqrt(M^2-E^2)``.

    ``r_min=None`` picks the start point from the singularity type at the
    origin; ``match=None`` matches at the outermost classical turning point.
    ``points``, when given, overrides ``step``.
    """

    r_min: float | None = None
    r_max: float = 60.0
    step: float = 0.002
    points: int | None = None
    match: float | None = None
    node_tol: float = 0.0
    regular_start: float = 1e-9
    essential_depth: float = 650.0


def q_direct(spec: ProblemSpec, params: PotentialParams, E: float, r):
    """``Q(r)`` straight from ``(M+S)^2 - (E-V)^2``, written as a product."""
    S = params.scalar(r)
    V = params.vector(r)
    return spec.centrifugal / r**2 + (spec.M + S - E + V) * (spec.M + S + E - V)


@dataclass
class _Grid:
    x: np.ndarray
    r: np.ndarray
    h: float
    irregular: bool
    kappa: float


def _start_point(spec, params, kappa, cfg: ShootingConfig, n_nodes: int):
    p = params
    a4 = p.s2**2 - p.v2**2
    a3 = 2.0 * (p.v1 * p.v2 - p.s1 * p.s2)
    if cfg.r_min is not None:
        return cfg.r_min / kappa, a4 > 0 or (a4 == 0 and a3 > 0)
    if a4 > 0:
        return math.sqrt(a4) / cfg.essential_depth, True
    if a4 < 0:
        raise StiffStartError("inverse-quartic term is attractive: no regular start", 0.0)
    if a3 > 0:
        return a3 / (0.5 * cfg.essential_depth) ** 2, True
    if a3 < 0:
        raise StiffStartError("inverse-cubic term is attractive: no regular start", 0.0)
    return cfg.regular_start / kappa, False


def _make_grid(spec, params, kappa, cfg: ShootingConfig, n_nodes: int) -> _Grid:
    r_lo, irregular = _start_point(spec, params, kappa, cfg, n_nodes)
    r_hi = (cfg.r_max + 4.0 * n_nodes) / kappa
    if r_hi <= r_lo:
        raise ShootingError("empty integration window")
    x0, x1 = math.log(r_lo), math.log(r_hi)
    if cfg.points is not None:
        npts = int(cfg.points)
    else:
        npts = int(math.ceil((x1 - x0) / cfg.step)) + 1
    x = np.linspace(x0, x1, npts)
    return _Grid(x=x, r=np.exp(x), h=x[1] - x[0], irregular=irregular, kappa=kappa)


def _g(spec, params, E, grid: _Grid):
    return grid.r**2 * q_direct(spec, params, E, grid.r) + 0.25


def _outward_start(spec, params, E, grid: _Grid, g):
    h = grid.h
    if grid.irregular:
        if g[0] <= 0 or g[1] <= 0:
            raise StiffStartError("no decaying solution at the origin", grid.r[0])
        return 1.0, math.exp(0.5 * h * (math.sqrt(g[0]) + math.sqrt(g[1])))
    # regular singular point: r^2 Q + 1/4 = g0 + c1 r - const r^2 exactly, so
    # start on the Frobenius series w = r^nu (1 + a1 r + a2 r^2)
    R = build_radial(spec, params, E)
    g0 = R.c2 + 0.25
    if g0 < -1e-12:
        raise StiffStartError("overcritical coupling: complex indicial exponent", grid.r[0])
    nu = math.sqrt(max(g0, 0.0))
    a1 = R.c1 / (2.0 * nu + 1.0)
    a2 = (R.c1 * a1 - R.const) / (4.0 * nu + 4.0)
    r0, r1 = grid.r[0], grid.r[1]
    return 1.0 + r0 * (a1 + a2 * r0), math.exp(nu * h) * (1.0 + r1 * (a1 + a2 * r1))


def _inward_start(g, h):
    if g[-1] <= 0 or g[-2] <= 0:
        raise ShootingError("outer boundary lies in the classically allowed region")
    return 1.0, math.exp(0.5 * h * (math.sqrt(g[-1]) + math.sqrt(g[-2])))


def _outward_nodes(spec, params, E, grid: _Grid, node_tol: float) -> int:
    g = _g(spec, params, E, grid)
    w0, w1 = _outward_start(spec, params, E, grid, g)
    allowed = np.nonzero(g < 0)[0]
    turning = int(allowed[-1]) if allowed.size else 0
    w, nodes = numerov_outward(g, grid.h, w0, w1, len(g) - 1, turning)
    if node_tol > 0:
        nodes = count_nodes(w, node_tol)
    return nodes


def node_count_at(
    spec: ProblemSpec,
    params: PotentialParams,
    E: float,
    config: ShootingConfig | None = None,
    n_hint: int = 0,
) -> int:
    """Sign changes of the outward solution at energy ``E`` (Dirichlet at ``r_max``)."""
    cfg = config or ShootingConfig()
    kappa = math.sqrt(spec.M**2 - E**2)
    grid = _make_grid(spec, params, kappa, cfg, n_hint)
    return _outward_nodes(spec, params, E, grid, cfg.node_tol)


def _match_index(g, grid: _Grid, cfg: ShootingConfig) -> int:
    npts = len(g)
    if cfg.match is not None:
        m = int(np.searchsorted(grid.r, cfg.match / grid.kappa))
    else:
        allowed = np.nonzero(g < 0)[0]
        m = int(allowed[-1]) if allowed.size else int(np.searchsorted(grid.r, 1.0 / grid.kappa))
    return min(max(m, 2), npts - 4)


def _two_sided(spec, params, E, grid: _Grid, m: int):
    g = _g(spec, params, E, grid)
    h = grid.h
    w0, w1 = _outward_start(spec, params, E, grid, g)
    wo, no = numerov_outward(g, h, w0, w1, m + 1, -1)
    wl, wl1 = _inward_start(g, h)
    wi, ni = numerov_inward(g, h, wl, wl1, m)
    t = h * h / 12.0
    # Numerov's conserved Casoratian uses z = (1 - t g) w
    zo0, zo1 = (1 - t * g[m]) * wo[m], (1 - t * g[m + 1]) * wo[m + 1]
    zi0, zi1 = (1 - t * g[m]) * wi[m], (1 - t * g[m + 1]) * wi[m + 1]
    cas = zo0 * zi1 - zo1 * zi0
    scale = math.hypot(zo0, zo1) * math.hypot(zi0, zi1)
    return cas / scale, wo, wi, g


@dataclass
class ShootingResult:
    E: float
    nodes: int
    r: np.ndarray
    u: np.ndarray  # normalized so that int u^2 dr = 1 on the grid


def _bisect_nodes(spec, params, n_nodes, lo, hi, grid, cfg, width):
    n_lo = _outward_nodes(spec, params, lo, grid, cfg.node_tol)
    n_hi = _outward_nodes(spec, params, hi, grid, cfg.node_tol)
    if not (n_lo <= n_nodes < n_hi):
        raise ShootingError(
            f"no matching E in bracket ({lo:.12g}, {hi:.12g}): node counts {n_lo}..{n_hi}, wanted {n_nodes}"
        )
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        if _outward_nodes(spec, params, mid, grid, cfg.node_tol) <= n_nodes:
            lo = mid
        else:
            hi = mid
    return lo, hi


def shoot_state(
    spec: ProblemSpec,
    params: PotentialParams,
    n_nodes: int,
    bracket: tuple[float, float],
    config: ShootingConfig | None = None,
) -> ShootingResult:
    """Locate the bound state with ``n_nodes`` interior nodes inside ``bracket``."""
    cfg = config or ShootingConfig()
    M = spec.M
    lo, hi = map(float, bracket)
    if not (-M < lo < hi < M):
        raise ValueError("bracket must satisfy -M < E_lo < E_hi < M")

    # coarse: node-count bisection on a grid wide enough for the whole bracket
    kappa_wide = math.sqrt(M * M - max(lo * lo, hi * hi))
    grid = _make_grid(spec, params, kappa_wide, cfg, n_nodes)
    b_lo, b_hi = lo, hi
    lo, hi = _bisect_nodes(spec, params, n_nodes, lo, hi, grid, cfg, 1e-4 * M)
    # keep the ends away from the eigenvalue, where the node count is ambiguous
    width = hi - lo
    lo, hi = max(lo - width, b_lo), min(hi + width, b_hi)

    # refine on a grid scaled to the state itself
    E0 = 0.5 * (lo + hi)
    grid = _make_grid(spec, params, math.sqrt(M * M - E0 * E0), cfg, n_nodes)
    lo, hi = _bisect_nodes(spec, params, n_nodes, lo, hi, grid, cfg, 1e-9 * M)
    E0 = 0.5 * (lo + hi)
    m = _match_index(_g(spec, params, E0, grid), grid, cfg)

    mismatch = lambda E: _two_sided(spec, params, E, grid, m)[0]
    delta = max(hi - lo, 1e-10 * M)
    a, b = E0 - delta, E0 + delta
    fa, fb = mismatch(a), mismatch(b)
    while fa * fb > 0:
        delta *= 4.0
        if delta > 1e-3 * M:
            raise ShootingError("logarithmic-derivative matching found no sign change near the node-count estimate")
        a, b = max(E0 - delta, -M * (1 - 1e-15)), min(E0 + delta, M * (1 - 1e-15))
        fa, fb = mismatch(a), mismatch(b)
    E = optimize.brentq(mismatch, a, b, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)

    _, wo, wi, _ = _two_sided(spec, params, E, grid, m)
    w = np.empty_like(grid.x)
    w[: m + 1] = wo[: m + 1]
    ratio = wo[m] / wi[m] if wi[m] != 0 else wo[m + 1] / wi[m + 1]
    w[m + 1 :] = wi[m + 1 :] * ratio
    u = w * np.sqrt(grid.r)
    nodes = int(count_nodes(w, max(cfg.node_tol, 1e-10)))
    norm2 = integrate.simpson(u * u * grid.r, x=grid.x)
    u = u / math.sqrt(norm2)
    if u[np.argmax(np.abs(u))] < 0:
        u = -u
    if nodes != n_nodes:
        raise ShootingError(f"matched solution has {nodes} nodes, expected {n_nodes}")
    return ShootingResult(E=float(E), nodes=nodes, r=grid.r, u=u)


def shoot_eigenvalue(
    spec: ProblemSpec,
    params: PotentialParams,
    n_nodes: int,
    bracket: tuple[float, float],
    config: ShootingConfig | None = None,
) -> float:
    return shoot_state(spec, params, n_nodes, bracket, config).E


def quad_adaptive(
    f: Callable[[float], float],
    lo: float,
    hi: float = math.inf,
    rel_tol: float = 1e-10,
    scale: float = 1.0,
    max_pieces: int = 400,
) -> float:
    """Adaptive quadrature of ``f`` over ``[lo, hi]``.

    Semi-infinite ranges are covered piecewise on geometrically growing
    intervals (starting at ``scale``) until the integrand has fallen below
    ``1e-16`` of its largest sampled value and the last pieces no longer
    contribute at ``rel_tol``.
    """
    if rel_tol <= 0:
        raise ValueError("rel_tol must be positive")

    def piece(a, b):
        with warnings.catch_warnings():
            warnings.simplefilter("error", integrate.IntegrationWarning)
            try:
                eps = max(rel_tol * 1e-2, 1e-13)
                # oscillating pieces may integrate to ~0: bound the error by the
                # size of |f| instead of the signed value
                size = integrate.quad(lambda t: abs(f(t)), a, b, epsrel=1e-6, limit=500)[0]
                val, err = integrate.quad(f, a, b, epsabs=eps * size, epsrel=eps, limit=500)
            except integrate.IntegrationWarning as exc:
                raise QuadratureError(f"no convergence on [{a}, {b}]: {exc}") from exc
        return val

    if math.isfinite(hi):
        return piece(lo, hi)

    total = 0.0
    peak = 0.0
    a = lo
    width = scale
    quiet = 0
    for _ in range(max_pieces):
        b = a + width
        val = piece(a, b)
        total += val
        samples = np.abs([f(t) for t in np.linspace(a, b, 9)[1:]])
        peak = max(peak, float(samples.max()))
        tail_small = samples[-1] <= 1e-16 * peak
        if abs(val) <= 1e-3 * rel_tol * abs(total) and tail_small:
            quiet += 1
            if quiet >= 2:
                return total
        else:
            quiet = 0
        a = b
        width *= 1.5
    raise QuadratureError("semi-infinite integral did not settle within the piece cap")


def norm_defect(u: Callable, kappa: float, rel_tol: float = 1e-11) -> float:
    """``int_0^inf u^2 dr - 1`` for a callable ``u``."""
    val = quad_adaptive(lambda r: float(u(r)) ** 2, 0.0, math.inf, rel_tol=rel_tol, scale=1.0 / kappa)
    return val - 1.0


def _d1_d2(y, h):
    # fourth-order central differences, interior points [2, n-3]
    d1 = (-y[4:] + 8 * y[3:-1] - 8 * y[1:-3] + y[:-4]) / (12 * h)
    d2 = (-y[4:] + 16 * y[3:-1] - 30 * y[2:-2] + 16 * y[1:-3] - y[:-4]) / (12 * h * h)
    return d1, d2


def residual(
    spec: ProblemSpec,
    params: PotentialParams,
    E: float,
    u: Callable,
    points: int = 4001,
    span: tuple[float, float] = (1e-2, 1e2),
    max_discretization: float = 1e-9,
) -> float:
    """Scaled residual of ``-u'' + Q u = 0`` on a log grid over ``span / kappa``.

    With ``r = e^x`` the equation is multiplied by ``r^2``, so that
    ``r^2 u'' = u_xx - u_x`` comes straight from fourth-order differences in
    ``x`` and rounding noise is uniform along the grid.  The result is
    ``max r^2 |u'' - Q u|`` divided by the largest ``r^2``-weighted term
    (``u''``, each power of ``1/r`` times ``u``, ``(E^2-M^2) u``) anywhere on the
    grid.  Raises :class:`GridTooCoarseError` when the Richardson estimate of
    the finite-difference error exceeds ``max_discretization``.
    """
    kappa = math.sqrt(spec.M**2 - E**2)
    x = np.linspace(math.log(span[0] / kappa), math.log(span[1] / kappa), points)
    h = x[1] - x[0]
    r = np.exp(x)
    y = np.asarray(u(r), dtype=float)
    if not np.any(y):
        return 0.0

    d1, d2 = _d1_d2(y, h)
    ri = r[2:-2]
    r2upp = d2 - d1
    yi = y[2:-2]
    r2 = ri * ri

    rad = build_radial(spec, params, E)
    terms = [np.abs(r2upp), np.abs(rad.const * yi * r2)] + [np.abs(t * yi * r2) for t in rad.terms(ri)]
    scale = max(float(t.max()) for t in terms)
    res = np.abs(r2upp - r2 * q_direct(spec, params, E, ri) * yi)

    # same stencil with step 2h on every other point
    d1c, d2c = _d1_d2(y[::2], 2 * h)
    common = r2upp[2::2][: len(d2c)]
    disc = float(np.max(np.abs(common - (d2c - d1c)))) / 15.0 / scale
    if disc > max_discretization:
        raise GridTooCoarseError(f"finite-difference error estimate {disc:.3g} exceeds {max_discretization:.3g}")
    return float(res.max() / scale)
