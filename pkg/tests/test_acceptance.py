"""Acceptance battery: one test per verification criterion, each printing
its own pass/fail line.  The checks run once per session (they share the
cached quadrature decompositions) and every criterion asserts at its own
stated tolerance inside exptransform.verify.
"""

import pytest

from exptransform import verify

_RESULTS = {}


@pytest.fixture(scope="module", autouse=True)
def run_battery():
    for result in verify.run_checks(seed=0):
        _RESULTS[result.name] = result
    yield


def _criterion(name):
    result = _RESULTS[name]
    status = "PASS" if result.passed else "FAIL"
    print(f"{status}  {name}: {result.detail}")
    assert result.passed, f"{name}: {result.detail}"


def test_disk_closed_form_criterion():
    _criterion("disk-closed-form")


def test_annulus_criterion():
    _criterion("annulus")


def test_ellipse_criterion():
    _criterion("ellipse")


def test_bernoulli_moments_criterion():
    _criterion("bernoulli-moments")


def test_bernoulli_cauchy_criterion():
    _criterion("bernoulli-cauchy")


def test_bernoulli_transform_criterion():
    _criterion("bernoulli-transform")


def test_appell_f2_criterion():
    _criterion("appell-f2")


def test_resultants_criterion():
    _criterion("resultants")


def test_pushforward_criterion():
    _criterion("pushforward")


def test_factor_extraction_criterion():
    _criterion("factor-extraction")


def test_rationality_dichotomy_criterion():
    _criterion("rationality-dichotomy")


def test_rose_moments_criterion():
    _criterion("rose-moments")


def test_quadrature_identity_criterion():
    _criterion("quadrature-identity")
