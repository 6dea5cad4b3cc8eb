import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boostlets.errors import InvalidArgumentError
from boostlets.geometry import (
    MAX_RAPIDITY,
    MINKOWSKI,
    GroupElement,
    Matrix2,
    SpaceTimePoint,
    boost_dilation,
    boost_matrix,
    dilation_matrix,
    group_inverse,
    group_product,
    invert_boost_dilation,
    minkowski_quadratic,
    warp_frequencies,
)

rapidity = st.floats(-5, 5, allow_nan=False)
dilation = st.floats(0.1, 10, allow_nan=False)
shift = st.tuples(st.floats(-10, 10), st.floats(-10, 10))
elements = st.builds(GroupElement, dilation, st.floats(-3, 3), shift)


def test_boost_at_zero_is_identity():
    assert boost_matrix(0.0) == Matrix2.identity()


def test_boost_at_one():
    B = boost_matrix(1.0)
    assert B.a11 == pytest.approx(1.5430806348152437, abs=1e-15)
    assert B.a12 == pytest.approx(-1.1752011936438014, abs=1e-15)
    assert B.a21 == B.a12 and B.a22 == B.a11


def test_rapidities_add():
    assert (boost_matrix(0.3) @ boost_matrix(0.5)).allclose(boost_matrix(0.8), 1e-12)


@given(rapidity, rapidity)
def test_rapidity_addition_law(a, b):
    lhs = (boost_matrix(a) @ boost_matrix(b)).as_array()
    rhs = boost_matrix(a + b).as_array()
    # entries reach cosh(10); compare relative to that scale
    assert np.max(np.abs(lhs - rhs)) <= 1e-12 * max(1.0, np.max(np.abs(rhs)))


@given(st.floats(-3, 3))
def test_boost_preserves_metric(a):
    B = boost_matrix(a).as_array()
    eta = MINKOWSKI.as_array()
    assert np.max(np.abs(B.T @ eta @ B - eta)) < 1e-12


# cosh^2 - sinh^2 cancels; past |alpha| ~ 3 the rounding of the entries
# alone exceeds 1e-12
moderate = st.floats(-3, 3, allow_nan=False)


@given(moderate)
def test_boost_shape_invariants(a):
    B = boost_matrix(a)
    assert B.a11 == B.a22 and B.a12 == B.a21
    assert B.det == pytest.approx(1.0, rel=1e-12)


@pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
def test_boost_rejects_non_finite(bad):
    with pytest.raises(InvalidArgumentError):
        boost_matrix(bad)


def test_rapidity_clamp():
    boost_matrix(MAX_RAPIDITY)
    with pytest.raises(InvalidArgumentError):
        boost_matrix(MAX_RAPIDITY + 0.1)


def test_dilation():
    assert dilation_matrix(1.0) == Matrix2.identity()
    assert dilation_matrix(2.0) == Matrix2(2.0, 0.0, 0.0, 2.0)
    assert dilation_matrix(0.5).det == 0.25
    for bad in (0.0, -1.0, math.nan):
        with pytest.raises(InvalidArgumentError):
            dilation_matrix(bad)


def test_boost_dilation_examples():
    assert boost_dilation(1, 0) == Matrix2.identity()
    assert boost_dilation(2, 0) == Matrix2(2.0, 0.0, 0.0, 2.0)
    for c in (0.5, 1.0, 3.0):
        for a in (-1.0, 0.0, 2.0):
            M = boost_dilation(c, a)
            assert M.det == pytest.approx(c * c, rel=1e-12)
            assert M.allclose(dilation_matrix(c) @ boost_matrix(a), 1e-12)
            assert M == M.T


@given(dilation, moderate)
def test_boost_dilation_determinant(c, a):
    assert boost_dilation(c, a).det == pytest.approx(c * c, rel=1e-12)


def test_inverse_boost_dilation():
    assert invert_boost_dilation(1, 0).allclose(Matrix2.identity())
    M, Minv = boost_dilation(2, 0.7), invert_boost_dilation(2, 0.7)
    assert (M @ Minv).allclose(Matrix2.identity(), 1e-12)
    nu, tau = (0.3, -1.1), (2.0, 0.5)
    mu = tuple(a + b for a, b in zip(M.apply(nu), tau))
    back = Minv.apply((mu[0] - tau[0], mu[1] - tau[1]))
    assert np.allclose(back, nu, rtol=0, atol=1e-12)


def test_matrix_from_array_roundtrip():
    M = boost_dilation(1.7, -0.4)
    assert Matrix2.from_array(M.as_array()) == M
    with pytest.raises(InvalidArgumentError):
        Matrix2.from_array(np.eye(3))


def test_group_identity_and_inverse():
    e = GroupElement.identity()
    g = GroupElement(2.0, 0.3, (1.0, -4.0))
    assert (g * e).allclose(g) and (e * g).allclose(g)
    assert group_product(g, group_inverse(g)).allclose(e, 1e-12)
    assert group_inverse(e).allclose(e)
    assert group_inverse(GroupElement(2, 0, (4, 0))).allclose(GroupElement(0.5, 0, (-2, 0)))
    assert group_inverse(group_inverse(g)).allclose(g, 1e-12)


def test_group_associativity_example():
    g1 = GroupElement(2, 0.3, (1, 0))
    g2 = GroupElement(0.5, -0.1, (0, 2))
    g3 = GroupElement(3, 1, (-1, 1))
    assert ((g1 * g2) * g3).allclose(g1 * (g2 * g3), 1e-12)


def test_group_product_formula():
    g1 = GroupElement(2.0, 0.5, (1.0, 2.0))
    g2 = GroupElement(3.0, -0.2, (0.5, -1.0))
    g = g1 * g2
    ch, sh = math.cosh(0.5), math.sinh(0.5)
    expect = (1.0 + 2 * (ch * 0.5 + sh * 1.0), 2.0 + 2 * (-sh * 0.5 - ch * 1.0))
    assert g.c == 6.0 and g.alpha == pytest.approx(0.3)
    assert np.allclose(g.tau, expect, atol=1e-14)


@settings(max_examples=200)
@given(elements, elements, elements)
def test_group_axioms(a, b, c):
    left, right = (a * b) * c, a * (b * c)
    l = np.array([left.c, left.alpha, *left.tau])
    r = np.array([right.c, right.alpha, *right.tau])
    assert np.all(np.abs(l - r) <= 1e-12 * np.maximum(1.0, np.abs(l)))
    e = GroupElement.identity()
    assert (a * group_inverse(a)).allclose(e, 1e-11)
    assert (group_inverse(a) * a).allclose(e, 1e-11)


def test_group_element_validation():
    with pytest.raises(InvalidArgumentError):
        GroupElement(0.0)
    with pytest.raises(InvalidArgumentError):
        GroupElement(1.0, 0.0, (math.nan, 0.0))
    with pytest.raises(InvalidArgumentError):
        GroupElement(1.0, 25.0)


def test_minkowski_quadratic():
    assert minkowski_quadratic(SpaceTimePoint(1, 1)) == 0
    assert minkowski_quadratic((2, 1)) == 3
    mu = (1.3, -0.4)
    for a in (-2.0, 0.5, 3.0):
        boosted = boost_matrix(a).apply(mu)
        assert minkowski_quadratic(boosted) == pytest.approx(minkowski_quadratic(mu), abs=1e-10)
    with pytest.raises(InvalidArgumentError):
        SpaceTimePoint(math.inf, 0.0)


def test_warp_matches_matrix():
    c, a = 0.7, -1.2
    ws, wt = np.array([0.3, 1.0]), np.array([-0.2, 0.4])
    xs, xt = warp_frequencies(c, a, ws, wt)
    M = boost_dilation(c, a).T
    ref = M.apply((ws, wt))
    assert np.allclose(xs, ref[0], atol=1e-14) and np.allclose(xt, ref[1], atol=1e-14)
