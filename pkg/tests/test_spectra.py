import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.polynomial import Polynomial

from kgaim.laurent import LaurentPoly, aim_iterate
from kgaim.model import OvercriticalError, PotentialParams, ProblemSpec
from kgaim.oracle import norm_defect, residual, shoot_state
from kgaim.spectra import (
    BoundState,
    ComplexBranchError,
    NoBoundStateError,
    SpuriousBranchError,
    condition_polynomial,
    condition_value,
    coulomb_energy,
    coulomb_wavefunction,
    equal_kratzer_energy,
    equal_kratzer_nonrel,
    equal_kratzer_wavefunction,
    excited_exponent_eq69,
    g1_excited_solve,
    g2_excited_solve,
    g_excited_solve,
    monic_coefficients,
    monic_solve,
    unequal_constraint_solve,
    unequal_family_solutions,
    unequal_ground_energy_equation,
    unequal_ground_solve,
    scan_roots,
)
from kgaim.specfun import NotBoundStateError


def printed_conditions(a, b, c):
    ab = a * b
    return {
        1: [-4 * ab, -2 * c, 1],
        2: [16 * ab * (2 * c + 1), 4 * (2 * c * c + c - 4 * ab), -2 * (3 * c + 1), 1],
        3: [
            -144 * ab + 144 * ab**2 - 432 * c * ab - 288 * c * c * ab,
            192 * ab - 72 * c * c + 240 * c * ab - 24 * c - 48 * c**3,
            4 * (11 * c * c + 3 + 13 * c - 10 * ab),
            -4 * (3 * c + 2),
            1,
        ],
    }


# ------------------------------------------------------------ Coulomb


def test_coulomb_examples(spec3):
    assert coulomb_energy(spec3, 0.5, 0.5, 0) == pytest.approx(0.6, abs=1e-15)
    assert coulomb_energy(spec3, 0.5, 0.0, 0) == pytest.approx(0.910180, abs=1e-6)
    # pure vector: E = beta / sqrt(beta^2 + v^2)
    beta = 0.5 + math.sqrt(0.25 - 0.0625)
    assert coulomb_energy(spec3, 0.0, 0.25, 0) == pytest.approx(beta / math.hypot(beta, 0.25), rel=1e-15)
    assert coulomb_energy(spec3, 0.0, 0.25, 0) == pytest.approx(0.965926, abs=1e-6)


def test_coulomb_branches(spec3):
    E = coulomb_energy(spec3, 0.6, 0.3, 0, "minus")
    assert -1 < E < 0
    with pytest.raises(SpuriousBranchError):
        coulomb_energy(spec3, 0.0, 0.25, 0, "minus")
    with pytest.raises(OvercriticalError):
        coulomb_energy(ProblemSpec(1.0, 2), 0.0, 0.5, 0)
    with pytest.raises(ValueError):
        coulomb_energy(spec3, 0.5, 0.5, -1)


@settings(max_examples=60)
@given(st.floats(0.0, 1.5), st.floats(0.0, 0.9), st.integers(0, 6), st.integers(1, 6), st.integers(0, 3))
def test_coulomb_unsquared_equation(s, v, n, d, l):
    spec = ProblemSpec(1.0, d, l)
    try:
        E = coulomb_energy(spec, s, v, n)
    except (NoBoundStateError, OvercriticalError, SpuriousBranchError):
        return
    c = 0.5 + math.sqrt((spec.k / 2 - 1) ** 2 + s * s - v * v)
    assert abs(E) < 1
    # rounding in E is amplified by 1/(1 - |E|) in sqrt(1 - E^2)
    tol = 1e-12 + 4e-16 / (1 - abs(E))
    assert (s + E * v) / math.sqrt((1 - E) * (1 + E)) == pytest.approx(n + c, rel=tol)


def test_coulomb_wavefunction(spec3):
    st0 = coulomb_wavefunction(spec3, 0.5, 0.5, 0)
    r = np.geomspace(1e-3, 40, 400)
    assert np.all(st0.u(r) > 0) and st0.nodes == 0
    st1 = coulomb_wavefunction(spec3, 0.5, 0.5, 1)
    # 1F1(-1; 2c; x) vanishes at x = 2c, i.e. r = c / kappa
    assert st1.u(st1.c / st1.kappa) == pytest.approx(0.0, abs=1e-14)
    assert abs(norm_defect(st1.u, st1.kappa)) < 1e-8


def test_bound_state_invariants():
    with pytest.raises(NotBoundStateError):
        BoundState(n=0, E=1.0, c=1.0, family="coulomb_1f1", norm=1.0, M=1.0, b=0.0)
    with pytest.raises(ValueError):
        BoundState(n=0, E=0.5, c=-0.1, family="coulomb_1f1", norm=1.0, M=1.0, b=-0.8)


# ------------------------------------------------------ equal Kratzer


def test_equal_kratzer_examples(spec3):
    assert equal_kratzer_energy(spec3, 0.0, 0.5, 0) == pytest.approx(0.6, abs=1e-12)
    assert equal_kratzer_energy(spec3, 0.1, 0.5, 0) == pytest.approx(0.7325, abs=1e-4)
    with pytest.raises(NoBoundStateError):
        equal_kratzer_energy(spec3, 0.1, 0.0, 0)


def test_equal_kratzer_reduces_to_coulomb(spec3):
    for n in range(4):
        assert equal_kratzer_energy(spec3, 0.0, 0.4, n) == pytest.approx(coulomb_energy(spec3, 0.4, 0.4, n), abs=1e-12)


def test_equal_kratzer_nonrel_examples(spec3):
    for n in range(3):
        assert equal_kratzer_nonrel(spec3, 0.0, 0.3, n) == pytest.approx(-2 * 0.09 / (n + 1) ** 2)
    assert equal_kratzer_nonrel(spec3, 0.1, 0.0, 0) == 0.0
    assert abs(equal_kratzer_nonrel(spec3, 0.1, 0.1, 0) - (equal_kratzer_energy(spec3, 0.1, 0.1, 0) - 1)) < 1e-3


def test_equal_kratzer_wavefunction(spec3):
    p = PotentialParams.equal_kratzer(0.1, 0.5)
    for n in range(3):
        st = equal_kratzer_wavefunction(spec3, 0.1, 0.5, n)
        assert st.family == "kratzer_1f1" and st.nodes == n
        assert abs(norm_defect(st.u, st.kappa)) < 1e-8
        assert residual(spec3, p, st.E, st.u) < 1e-8


# --------------------------------------------------- unequal Kratzer


def test_ground_equation_limits(spec3):
    # vanishing inverse-square terms: roots approach the Coulomb ground state
    p = PotentialParams(0.6, 0.3, 1e-9, 0.0)
    roots = scan_roots(unequal_ground_energy_equation(spec3, p), -1 + 1e-6, 1 - 1e-6)
    assert min(abs(E - coulomb_energy(spec3, 0.6, 0.3, 0)) for E in roots) < 1e-6
    # pure scalar: the mismatch is the specialised printed equation
    ps = PotentialParams(0.7, 0.0, 0.2, 0.0)
    f = unequal_ground_energy_equation(spec3, ps)
    for E in (-0.5, 0.1, 0.6):
        kap = math.sqrt(1 - E * E)
        ref = 0.7 / kap - 0.5 - math.sqrt(0.25 + 2 * 0.7 * 0.2 + 2 * 0.7 * 0.2 * kap + 2 * 0.2 + 0.49)
        assert f(E) == pytest.approx(ref, abs=1e-14)


def test_constraint_example(spec3):
    p, st = unequal_constraint_solve(spec3, 0.5, 0.3, 1)
    assert p.v1 == pytest.approx(5 / 3 * p.s1, rel=1e-12)
    assert -0.01 < st.E < 0.0
    assert st.exact and st.nodes == 0
    r = np.geomspace(1e-3, 1e3, 2000)
    assert np.all(st.u(r) >= 0) and np.all(st.u(r[100:1500]) > 0)
    assert p.s2 > p.v2 and p.v1 > p.s1
    assert abs(norm_defect(st.u, st.kappa)) < 1e-8
    assert residual(spec3, p, st.E, st.u) < 1e-8
    res = shoot_state(spec3, p, 0, (-0.05, 0.05))
    assert abs(res.E - st.E) < 1e-6


def test_constraint_errors(spec3):
    with pytest.raises(ValueError):
        unequal_constraint_solve(spec3, 0.3, 0.3, 1)
    with pytest.raises(ValueError):
        unequal_constraint_solve(spec3, 0.5, 0.3, 0)
    with pytest.raises(NoBoundStateError):
        unequal_constraint_solve(spec3, 0.5, 0.3, 2)


def test_ground_state_off_manifold_is_flagged(spec3, kratzer_params):
    st = unequal_ground_solve(spec3, kratzer_params)
    assert st.defects["inverse_r"] == pytest.approx(0.0, abs=1e-12)
    assert not st.exact


def test_eq69_exponent_is_g1_root():
    # the closed form solves G^2 - 2cG - 4ab = 0 with G = mu - c^2 + c, on the G < 0 root
    for mu, ab in [(1.3, 0.2), (0.4, 0.05), (2.0, 1.0)]:
        c = excited_exponent_eq69(mu, ab)
        G = mu - c * c + c
        assert G * G - 2 * c * G - 4 * ab == pytest.approx(0.0, abs=1e-12)
        assert G == pytest.approx(c - math.sqrt(c * c + 4 * ab), abs=1e-12)
    with pytest.raises(ComplexBranchError):
        excited_exponent_eq69(-1.0, 0.0)


def _families(spec, deg, c=0.8, s2=0.5, v2=0.3):
    sols = [(p, E) for p, E in unequal_family_solutions(spec, s2, v2, deg, c) if p.s1 > 0]
    assert len(sols) == 2
    return sols


def _family(spec, deg):
    return _families(spec, deg)[0]


@pytest.mark.parametrize("deg", [1, 2, 3])
@pytest.mark.parametrize("which", [0, 1])
def test_excited_families_on_manifold(spec3, deg, which):
    p, E = _families(spec3, deg)[which]
    st = g_excited_solve(spec3, p, deg)
    assert st.E == pytest.approx(E, abs=1e-10)
    assert st.exact
    coeffs = st.poly_coeffs
    assert coeffs[-1] == 1.0 and len(coeffs) == deg + 1
    assert np.allclose(Polynomial(coeffs)(np.array(st.poly_roots)), 0, atol=1e-8)
    assert abs(norm_defect(st.u, st.kappa)) < 1e-8
    assert residual(spec3, p, st.E, st.u) < 1e-8
    res = shoot_state(spec3, p, st.nodes, (max(E - 0.05, -0.9999), min(E + 0.05, 0.9999)))
    assert abs(res.E - st.E) < 1e-6


def test_g1_g2_wrappers(spec3):
    p, E = _family(spec3, 1)
    st = g1_excited_solve(spec3, p)
    # one-node factor r - 2a/G
    assert st.poly_coeffs[0] == pytest.approx(-2 * st.a / st.G, rel=1e-10)
    p2, E2 = _family(spec3, 2)
    st2 = g2_excited_solve(spec3, p2)
    assert st2.n == 2 and st2.E == pytest.approx(E2, abs=1e-10)


def test_excited_off_manifold_is_flagged(spec3, kratzer_params):
    st = g1_excited_solve(spec3, kratzer_params)
    assert not st.exact


# ------------------------------------------------------ monic systems


@given(st.floats(-2, -0.01), st.floats(-2, -0.05), st.floats(0.1, 3.0))
def test_condition_polynomials_match_printed(a, b, c):
    printed = printed_conditions(a, b, c)
    for n in (1, 2, 3):
        got = condition_polynomial(n, a, b, c)
        ref = np.array(printed[n])
        assert np.all(np.abs(got - ref) <= 1e-9 * np.maximum(1.0, np.abs(ref)))


def test_condition_polynomial_depends_on_product_only():
    assert np.allclose(condition_polynomial(3, -0.5, -0.8, 1.2), condition_polynomial(3, -1.0, -0.4, 1.2), rtol=1e-13)


def test_g2_at_zero_a_factorises():
    # with ab = 0: G (G^2 - 2(3c+1)G + 4(2c^2+c)) = G (G - 2c)(G - 2(c+1)) ... the G_1 factor G(G - 2c) appears
    c = 1.3
    g2 = Polynomial(condition_polynomial(2, 0.0, -0.7, c))
    assert g2(0.0) == pytest.approx(0.0, abs=1e-14)
    assert g2(2 * c) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_monic_systems(n):
    a, b, c = -0.4, -0.8, 1.5
    cond, systems = monic_solve(n, a, b, c)
    assert len(cond) == n + 2 and cond[-1] == 1.0
    assert len(systems) == n + 1  # all roots real for these parameters
    for sysm in systems:
        assert sysm.coefficients[-1] == 1.0
        assert np.all(np.abs(sysm.relations()) <= 1e-9)
        assert Polynomial(cond)(sysm.G) == pytest.approx(0.0, abs=1e-9 * max(1, abs(sysm.G)) ** (n + 1))
        # elementary symmetric polynomials: a_{n-1} = -sum sigma
        assert sysm.coefficients[-2] == pytest.approx(-np.sum(sysm.roots).real, rel=1e-9, abs=1e-12)


def test_monic_errors():
    with pytest.raises(ValueError):
        monic_solve(0, -0.1, -0.5, 1.0)
    with pytest.raises(ValueError):
        monic_solve(2, -0.1, 0.5, 1.0)
    with pytest.raises(ValueError):
        monic_solve(2, 0.1, -0.5, 1.0)
    # complex roots only: empty solution list
    cond, systems = monic_solve(1, -1.0, -1.0, 0.1)
    assert systems == [] or all(np.isreal(s.G) for s in systems)


def _reduced_inputs(n, a, b, c, G):
    lam0 = LaurentPoly({-2: 2 * a, -1: -2 * c, 0: -2 * b})
    s0 = LaurentPoly({-2: G, -1: 2 * n * b})
    return lam0, s0


@pytest.mark.parametrize("n", [1, 2, 3])
def test_monic_agrees_with_aim_termination(n):
    a, b, c = -0.35, -0.6, 1.4
    _, systems = monic_solve(n, a, b, c)
    r0 = 1 / abs(b)
    for sysm in systems:
        sess = aim_iterate(*_reduced_inputs(n, a, b, c, sysm.G), n)
        assert sess.relative_defect(n) <= 1e-9
    # and the AIM root set in G (sampled at r0) coincides with the polynomial roots
    g_delta = lambda G: aim_iterate(*_reduced_inputs(n, a, b, c, G), n).deltas[n](r0)
    Gs = np.linspace(-5, 15, 4001)
    vals = np.array([g_delta(G) for G in Gs])
    from scipy.optimize import brentq

    roots = [brentq(g_delta, Gs[i], Gs[i + 1], xtol=1e-14) for i in range(len(Gs) - 1) if vals[i] * vals[i + 1] < 0]
    poly_roots = sorted(s.G for s in systems)
    assert len(roots) == len(poly_roots)
    assert np.allclose(roots, poly_roots, atol=1e-9)


def test_monic_coefficients_symbolic_consistency():
    coeffs, cond = monic_coefficients(2, -0.3, -0.7, 1.1, Polynomial([0.0, 1.0]))
    assert coeffs[-1] == Polynomial([1.0])
    assert cond.degree() == 3


@given(st.integers(1, 4), st.floats(-2, 0), st.floats(-2, -0.05), st.floats(0.1, 3), st.floats(-5, 5))
def test_condition_value_matches_polynomial(n, a, b, c, G):
    ref = Polynomial(condition_polynomial(n, a, b, c))(G)
    assert condition_value(n, a, b, c, G) == pytest.approx(ref, rel=1e-9, abs=1e-9 * max(1, abs(G)) ** (n + 1) * 10)
