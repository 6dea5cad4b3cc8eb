import cmath
import math
import time

import numpy as np
import pytest

from boostlets.closed_form import (
    ClosedFormInputs,
    closed_form_component,
    example_cbt,
    example_intermediates,
    example_sweep,
    negated_first_component,
    tau_zero_value,
)
from boostlets.errors import InvalidArgumentError, NearPoleError

POLE = 1 / math.sqrt(2)


def test_intermediates_axis_point():
    k = example_intermediates(ClosedFormInputs(0.5, 0.0, 1.0, 0.0))
    assert (k.L_s, k.L_t, k.L_s1, k.L_t1, k.C) == (1.0, 0.0, -1.0, 0.0, 1.0)


def test_intermediates_origin():
    k = example_intermediates(ClosedFormInputs(0.3, 1.2, 0.0, 0.0))
    assert k.L_s == k.L_t == k.L_s1 == k.L_t1 == k.C == 0


def test_intermediates_boosted():
    k = example_intermediates(ClosedFormInputs(0.5, 0.5, 1.0, 1.0))
    assert k.L_s == pytest.approx(math.exp(0.5), abs=1e-14)
    assert k.L_t == pytest.approx(-math.exp(0.5), abs=1e-14)
    assert k.L_s == pytest.approx(1.6487212707, abs=1e-10)


def test_q1_entries():
    k = example_intermediates(ClosedFormInputs(0.4, 0.0, 0.0, 0.0, epsilon=0.2))
    assert k.q1 == (complex(1 - 2 * 0.16), complex(2 * 0.16 - 1, -0.2))


@pytest.mark.parametrize("kw", [{"c": 0.0}, {"c": -1.0}, {"epsilon": 0.0}, {"alpha": math.nan},
                                {"tau_s": math.inf}])
def test_input_validation(kw):
    args = dict(c=0.5, alpha=0.0, tau_s=0.0, tau_t=0.0, epsilon=0.1)
    args.update(kw)
    with pytest.raises(InvalidArgumentError):
        ClosedFormInputs(**args)


@pytest.mark.parametrize("c", [0.2, 0.45, 0.65, 0.9, 1.5])
def test_tau_zero_reduction(c):
    eps = 0.1
    expect = c * 2 * math.pi / cmath.sqrt((1 - 2 * c * c) * (2 * c * c - 1 - 1j * eps))
    first, second = example_cbt(ClosedFormInputs(c, 0.7, 0.0, 0.0, eps))
    assert abs(first - expect) <= 1e-12 * abs(expect)
    assert abs(second - expect) <= 1e-12 * abs(expect)
    assert tau_zero_value(c, eps) == expect


def test_printed_formula():
    x = ClosedFormInputs(0.4, -0.3, 0.6, -0.2, 0.1)
    k = example_intermediates(x)
    qs, qt = 1 - 2 * 0.16, complex(2 * 0.16 - 1, -0.1)
    pref = 0.4 * 2 * math.pi / cmath.sqrt(qs * qt)
    first = pref * math.exp(k.C) * cmath.exp(2 * 0.16 * (k.L_s**2 / qs + k.L_t**2 / qt))
    second = pref * math.exp(-k.C) * cmath.exp(2 * 0.16 * (k.L_s1**2 / qs + k.L_t1**2 / qt))
    got = example_cbt(x)
    assert abs(got[0] - first) < 1e-13 * abs(first)
    assert abs(got[1] - second) < 1e-13 * abs(second)


def test_principal_branch():
    # (1 - 2c^2)(2c^2 - 1 - i eps) has negative real part; principal root has Re > 0
    z = (1 - 2 * 0.09) * complex(2 * 0.09 - 1, -0.1)
    assert z.real < 0
    v = tau_zero_value(0.3, 0.1)
    assert v == pytest.approx(0.3 * 2 * math.pi / cmath.sqrt(z))
    assert cmath.sqrt(z).real > 0


@pytest.mark.parametrize("c", [0.25, 0.5, 0.65, 0.8])
def test_negation_identity_at_zero_rapidity(c):
    for ts in np.linspace(-1, 1, 7):
        for tt in np.linspace(-1, 1, 7):
            x = ClosedFormInputs(c, 0.0, ts, tt)
            second = example_cbt(x)[1]
            assert abs(negated_first_component(x) - second) <= 1e-12 * abs(second)


def test_negation_identity_fails_off_zero_rapidity():
    # the printed second component is not the first at -tau once alpha != 0
    x = ClosedFormInputs(0.5, 0.5, 1.0, 1.0)
    second = example_cbt(x)[1]
    assert abs(negated_first_component(x) - second) > 0.1 * abs(second)


def test_negation_identity_on_axes():
    # with tau_s tau_t = 0 the identity holds for every alpha
    for a in (-1.0, 0.4, 2.0):
        for tau in ((0.7, 0.0), (0.0, -0.4)):
            x = ClosedFormInputs(0.45, a, *tau)
            second = example_cbt(x)[1]
            assert abs(negated_first_component(x) - second) <= 1e-12 * abs(second)


def test_swap_of_tau_is_not_a_symmetry():
    # exchanging tau_s and tau_t does not exchange the components
    a, b = ClosedFormInputs(0.5, 0.0, 0.8, 0.3), ClosedFormInputs(0.5, 0.0, 0.3, 0.8)
    first_a, second_a = example_cbt(a)
    first_b, second_b = example_cbt(b)
    assert abs(abs(first_a) - abs(second_b)) > 1e-3 * abs(first_a)


def test_component_ratio_at_zero_rapidity():
    x = ClosedFormInputs(0.45, 0.0, 0.6, -0.3)
    first, second = example_cbt(x)
    C = 0.36 - 0.09
    assert second / first == pytest.approx(math.exp(-2 * C), rel=1e-12)


def test_near_pole():
    with pytest.raises(NearPoleError):
        example_cbt(ClosedFormInputs(POLE, 0.0, 0.0, 0.0))
    with pytest.raises(NearPoleError):
        tau_zero_value(POLE, 0.1)
    example_cbt(ClosedFormInputs(POLE + 1e-6, 0.0, 0.0, 0.0))


def test_square_root_singularity():
    c1, c2 = POLE + 1e-3, POLE - 1e-3
    m1 = abs(example_cbt(ClosedFormInputs(c1, 0.0, 0.0, 0.0))[0])
    m2 = abs(example_cbt(ClosedFormInputs(c2, 0.0, 0.0, 0.0))[0])
    expect = math.sqrt(abs(1 - 2 * c2 * c2) / abs(1 - 2 * c1 * c1))
    assert m1 / m2 == pytest.approx(expect, rel=0.05)


def test_continuity_away_from_pole():
    base = example_cbt(ClosedFormInputs(0.5, 0.2, 0.3, -0.1))
    near = example_cbt(ClosedFormInputs(0.5 + 1e-9, 0.2 + 1e-9, 0.3, -0.1 + 1e-9))
    for a, b in zip(base, near):
        assert abs(a - b) < 1e-6 * abs(a)


def test_epsilon_monotonicity():
    # 2c^2 - 1 > 0 makes Re(L_t^2 / q_t) grow as eps shrinks, and |q_t| shrinks,
    # so both components grow monotonically along this line
    eps = np.geomspace(1.0, 1e-3, 40)
    mags = np.array([[abs(v) for v in example_cbt(ClosedFormInputs(0.8, 0.3, 0.5, 0.2, e))]
                     for e in eps])
    assert np.all(np.diff(mags, axis=0) > 0)


def test_vectorised_component_matches_scalar():
    c = np.array([0.3, 0.5])
    out = closed_form_component(c, np.array([0.2, 0.2]), np.array([-0.1, -0.1]), 0.05, 0.1)
    for k, ck in enumerate(c):
        k1 = example_cbt(ClosedFormInputs(ck, 0.0, 0.2, 0.1))[0]
        assert out[k] == pytest.approx(k1 * math.exp(0.05 - (0.04 - 0.01)), rel=1e-12)


def sweep_axes():
    return (np.linspace(0.2, 0.65, 16), np.linspace(-2, 2, 16),
            np.linspace(-1, 1, 32), np.linspace(-1, 1, 32))


def test_sweep_matches_point_evaluation():
    c, a, ts, tt = sweep_axes()
    sw = example_sweep(c, a, ts, tt, 0.1)
    assert sw.values.shape == (2, 32, 32, 16, 16)
    for idx in [(0, 0, 0, 0), (5, 17, 3, 9), (31, 31, 15, 15)]:
        i, j, k, l = idx
        pt = example_cbt(ClosedFormInputs(c[k], a[l], ts[i], tt[j], 0.1))
        for comp in (0, 1):
            assert abs(sw.values[(comp,) + idx] - pt[comp]) <= 1e-12 * abs(pt[comp])


def test_sweep_finite_and_fast():
    t0 = time.perf_counter()
    sw = example_sweep(*sweep_axes(), 0.1)
    assert time.perf_counter() - t0 < 10.0
    assert np.all(np.isfinite(sw.values)) and not sw.pole_rows
    assert sw.magnitude.shape == (32, 32, 16, 16)


def test_sweep_deterministic():
    a, b = example_sweep(*sweep_axes(), 0.1), example_sweep(*sweep_axes(), 0.1)
    assert a.values.tobytes() == b.values.tobytes()


def test_sweep_flags_pole_rows():
    c = np.array([0.5, POLE, 0.6])
    sw = example_sweep(c, [0.0], [0.0, 0.5], [0.0], 0.1)
    assert sw.pole_rows == (1,)
    assert np.all(np.isnan(sw.values[:, :, :, 1])) and np.all(np.isfinite(sw.values[:, :, :, 0]))


def test_sweep_validation():
    with pytest.raises(InvalidArgumentError):
        example_sweep([0.0], [0.0], [0.0], [0.0])
    with pytest.raises(InvalidArgumentError):
        example_sweep([0.5], [0.0], [0.0], [0.0], epsilon=0.0)
