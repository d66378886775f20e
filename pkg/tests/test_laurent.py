import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kgaim.laurent import (
    ONE,
    ZERO,
    AIMOverflowError,
    LaurentPoly,
    NoRootInBracketError,
    aim_iterate,
    aim_numeric_root,
    delta_is_zero,
    laurent_arith,
    laurent_diff,
)
from kgaim.model import PotentialParams, ProblemSpec, build_aim_inputs
from kgaim.spectra import coulomb_energy

coef = st.floats(-3, 3, allow_nan=False).filter(lambda x: abs(x) > 1e-3)
polys = st.dictionaries(st.integers(-4, 3), coef, max_size=4).map(LaurentPoly)


def _ref_mul(a, b):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            out[ea + eb] = out.get(ea + eb, 0.0) + ca * cb
    return out


def _close(p, q, tol=1e-12):
    keys = set(p) | set(q)
    return all(abs(p.get(k, 0.0) - q.get(k, 0.0)) <= tol * (1 + abs(q.get(k, 0.0))) for k in keys)


@given(polys, polys)
def test_product_matches_reference(a, b):
    assert _close(a * b, _ref_mul(a, b))


@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    assert _close(a + b, b + a)
    assert _close(a * (b + c), a * b + a * c, 1e-9)
    assert (a - a).is_zero


@given(polys, polys)
def test_leibniz_rule(a, b):
    assert _close((a * b).diff(), a.diff() * b + a * b.diff(), 1e-9)


@given(polys, st.floats(0.3, 3.0))
def test_evaluation_is_homomorphism(a, x):
    assert math.isclose((a * a)(x), a(x) ** 2, rel_tol=1e-9, abs_tol=1e-9)


def test_functional_forms():
    a = LaurentPoly({-1: 2.0, 0: 1.0})
    b = LaurentPoly({1: 3.0})
    assert laurent_arith(a, b, "add") == a + b
    assert laurent_arith(a, b, "sub") == a - b
    assert laurent_arith(a, b, "mul") == a * b
    assert laurent_diff(a) == LaurentPoly({-2: -2.0})
    assert LaurentPoly({0: 0.0}).is_zero
    assert a.exponent_range() == (-1, 0)
    with pytest.raises(ValueError):
        laurent_arith(a, b, "/")


def _ref_iterate(lam0, s0, n):
    # independent straightforward re-implementation on plain dicts
    def d(p):
        return {e - 1: e * c for e, c in p.items() if e != 0}

    def add(*ps):
        out = {}
        for p in ps:
            for e, c in p.items():
                out[e] = out.get(e, 0.0) + c
        return out

    lam, s = dict(lam0), dict(s0)
    L0, S0 = dict(lam0), dict(s0)
    for _ in range(n):
        lam, s = add(d(lam), s, _ref_mul(L0, lam)), add(d(s), _ref_mul(S0, lam))
    return lam, s


@settings(max_examples=40)
@given(polys, polys, st.integers(1, 4))
def test_recursion_matches_independent_implementation(lam0, s0, n):
    sess = aim_iterate(lam0, s0, n)
    lam, s = _ref_iterate(lam0, s0, n)
    assert _close(sess.iterates[n][0], lam, 1e-9)
    assert _close(sess.iterates[n][1], s, 1e-9)


def test_zero_equation_terminates_everywhere():
    sess = aim_iterate(ZERO, ZERO, 5)
    assert all(d.is_zero for d in sess.deltas)


def test_delta_support_grows_linearly():
    spec = ProblemSpec(1.0)
    lam0, s0 = build_aim_inputs("unequal_kratzer", spec, PotentialParams(1, 0.5, 0.5, 0.3), 0.3, c=1.2)
    sess = aim_iterate(lam0, s0, 8)
    for n in range(9):
        lo, hi = sess.deltas[n].exponent_range()
        assert lo >= -(4 * n + 2) and hi <= 0


def _coulomb(E, s=0.5, v=0.5, spec=ProblemSpec(1.0)):
    return build_aim_inputs("coulomb", spec, PotentialParams.coulomb(s, v), E)


def test_delta0_vanishes_iff_quantization_holds():
    lam0, s0 = _coulomb(0.6)
    sess = aim_iterate(lam0, s0, 1)
    assert sess.deltas[0].max_abs() < 1e-15
    assert not aim_iterate(*_coulomb(0.5), 1).terminated(0)


def test_delta_is_zero_examples():
    assert delta_is_zero(ZERO)
    assert delta_is_zero(LaurentPoly({-1: 1e-18}), 1e-9, 1.0)
    assert not delta_is_zero(LaurentPoly({-1: 1e-3}), 1e-9, 1.0)


def test_coulomb_termination_index_matches_n():
    spec = ProblemSpec(1.0)
    for n in range(4):
        E = coulomb_energy(spec, 0.6, 0.3, n)
        sess = aim_iterate(*_coulomb(E, 0.6, 0.3), n + 1)
        assert sess.terminated(n)
        for m in range(n):
            assert not sess.terminated(m)


def test_overflow_reports_index():
    big = LaurentPoly({0: 1e200, 1: 1e200})
    with pytest.raises(AIMOverflowError) as info:
        aim_iterate(big, big, 5)
    assert info.value.index >= 1


def test_numeric_root_examples():
    E = aim_numeric_root(_coulomb, 0, (0.0, 0.999), M=1.0)
    assert abs(E - 0.6) < 1e-11
    build = lambda E: _coulomb(E, 0.5, 0.0)
    assert abs(aim_numeric_root(build, 0, (0.0, 0.999), M=1.0) - 0.910179721124) < 1e-11
    # delta_2 also vanishes at the two lower levels; bracket the third one alone
    E2 = coulomb_energy(ProblemSpec(1.0), 0.5, 0.0, 2)
    assert abs(aim_numeric_root(build, 2, (0.98, 0.999), M=1.0) - E2) < 1e-11
    assert abs(aim_numeric_root(build, 2, (0.0, 0.999), M=1.0) - 0.910179721124) < 1e-11


def test_numeric_root_empty_bracket():
    build = lambda E: _coulomb(E, 0.5, 0.0)
    with pytest.raises(NoRootInBracketError):
        aim_numeric_root(build, 0, (0.92, 0.95), M=1.0)
