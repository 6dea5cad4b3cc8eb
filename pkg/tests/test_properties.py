import numpy as np
import pytest

from boostlets.properties import (
    PropertyResult,
    group_axiom_residual,
    metric_residual,
    relative_residual,
    run_property_suite,
    translation_covariance,
)
from boostlets.signals import random_band_limited


@pytest.fixture(scope="module")
def results(mother):
    return {r.name: r for r in run_property_suite(mother, seed=0)}


def test_suite_passes(results):
    failed = [r.line() for r in results.values() if r.passed is False]
    assert not failed
    assert sum(r.passed is True for r in results.values()) == 8


def test_stated_variants_are_informational(results):
    info = {k: r for k, r in results.items() if r.tolerance is None}
    assert set(info) == {"reflection (leading minus)", "scaling (lambda^-1, lambda=2)",
                         "homogeneity |a|^2 form"}
    for r in info.values():
        assert r.passed is None and r.line().startswith("info")
    # the stated forms are really off, not marginally
    assert info["reflection (leading minus)"].residual > 1.0
    assert info["scaling (lambda^-1, lambda=2)"].residual > 0.5
    assert info["homogeneity |a|^2 form"].residual > 0.1


def test_corrected_forms(results):
    assert results["reflection (sign-free)"].residual < 1e-10
    assert results["scaling (lambda^-2, lambda=2)"].residual < 1e-4
    assert results["linearity"].residual < 1e-12
    assert results["translation covariance k=(3, 5)"].residual < 1e-10


def test_seed_determines_suite(mother):
    a = [r.residual for r in run_property_suite(mother, seed=3, pairs=[(1.0, 0.2)])]
    b = [r.residual for r in run_property_suite(mother, seed=3, pairs=[(1.0, 0.2)])]
    assert a == b


def test_group_and_metric_residuals():
    assert group_axiom_residual(np.random.default_rng(1), 200) < 1e-12
    assert metric_residual(np.linspace(-3, 3, 101)) < 1e-12


@pytest.mark.parametrize("k", [(0, 0), (1, -2), (64, 7)])
def test_translation_covariance_shifts(mother, k):
    f = random_band_limited(mother.grid, np.random.default_rng(2))
    assert translation_covariance(f, mother, 0.9, 0.3, k) < 1e-10


def test_relative_residual():
    assert relative_residual(np.ones(3), np.full(3, 2.0)) == 0.5
    assert relative_residual(np.ones(3), np.zeros(3)) == 1.0


def test_result_line():
    ok = PropertyResult("x", 1e-13, 1e-12)
    bad = PropertyResult("x", 2e-12, 1e-12)
    assert ok.passed is True and ok.line().startswith("PASS")
    assert bad.passed is False and bad.line().startswith("FAIL") and "(tol 1e-12)" in bad.line()
