"""The randomized verification suites, run at reduced trial counts.

The full-size runs live in the acceptance bench; these just pin the report
shapes, the determinism of the seeded draws, and that each identity actually
holds on a handful of instances.
"""

import pytest

from schwarzian_lab.checks import (
    VERIFY_SUITES,
    affine_suite,
    altrec_suite,
    bol_suite,
    covariance_suite,
    schwinv_suite,
    series_bound_constant,
    sigma_expr,
    weight_suite,
)


@pytest.mark.parametrize("series", ["A", "B"])
def test_covariance_small(series):
    rep = covariance_suite(series, trials=20)
    assert rep["ok"]
    assert rep["max_relerr"] < 1e-9
    assert rep["inputs"]["series"] == series


def test_altrec_small():
    rep = altrec_suite(trials=20)
    assert rep["ok"] and rep["max_relerr"] < 1e-8


def test_schwinv_small():
    rep = schwinv_suite(trials=20)
    assert rep["ok"] and rep["max_relerr"] < 1e-8


def test_affine_small():
    rep = affine_suite(trials=20)
    assert rep["ok"] and rep["max_relerr"] < 1e-8


def test_bol_small():
    rep = bol_suite(trials=20)
    assert rep["ok"] and rep["max_relerr"] < 1e-8
    with pytest.raises(ValueError):
        bol_suite(n_values=(4, 5), trials=1)


def test_weight_suite_exhausts_orders():
    rep = weight_suite(trials=50)
    assert rep["ok"]
    assert rep["failures"] == []


def test_suites_are_deterministic():
    a = covariance_suite("A", trials=10, seed=7)
    b = covariance_suite("A", trials=10, seed=7)
    assert a == b
    c = covariance_suite("A", trials=10, seed=8)
    assert c["max_relerr"] != a["max_relerr"]


def test_registry_and_constants():
    assert set(VERIFY_SUITES) == {"covariance", "altrec", "schwinv", "affine", "bol", "weights"}
    assert series_bound_constant("A", 5) == 1
    assert series_bound_constant("B", 5) == 3
    with pytest.raises(ValueError):
        sigma_expr("C", 4)


def test_report_shape():
    rep = affine_suite(trials=5)
    assert set(rep) == {"operation", "inputs", "max_relerr", "tolerance", "ok"}
    assert rep["operation"] == "affine"
