import numpy as np
import pytest

from exptransform.polyalg import ComplexPoly, HermPoly2, RationalFn, is_primitive, principal_divisor
from exptransform.analysis import (
    exterior_circle_samples,
    fz_polynomial,
    nested_resultant,
    nested_resultant_factors,
    probe_point_cloud,
    probe_samples,
    rationality_probe,
    regular_rational_check,
    separability_test,
)
from exptransform.transforms import HermitianRational, annulus_transform, disk_transform

P = ComplexPoly


def test_regular_check_disk_and_annulus():
    disk = HermitianRational.disk_exterior(0, 1)
    rep = regular_rational_check(disk, [2.0, 3j, -1.5 - 1.5j])
    assert rep.verdict and rep.leading_match
    assert rep.degrees == (1, 1, 1, 1)
    ann = HermitianRational.annulus_exterior(1, 1.5)
    assert regular_rational_check(ann, [2.0 + 1j]).verdict


def test_regular_check_degree_mismatch_fails():
    bad = HermitianRational(HermPoly2([[1.0]]), HermPoly2([[-1, 0], [0, 1]]))
    rep = regular_rational_check(bad, [2.0])
    assert not rep.verdict


def test_regular_check_witness_failure_inside():
    # probing the disk transform at z0 = 0 (a point inside the disk, where
    # the denominator z wbar degenerates entirely) must fail condition (iii)
    disk = HermitianRational.disk_exterior(0, 1)
    rep = regular_rational_check(disk, [0.0])
    assert not rep.verdict
    z0, j, k, passed = rep.condition_iii_witnesses[0]
    assert not passed


def test_separability():
    ok, chi = separability_test(HermitianRational.disk_exterior(0, 1))
    assert ok and chi.coeffs.tolist() == [0, 1]
    ok2, chi2 = separability_test(HermitianRational.annulus_exterior(1, 1.5))
    assert not ok2 and chi2 is None
    const = HermitianRational(HermPoly2([[-1, 0], [0, 1]]), HermPoly2([[2.0]]))
    ok3, chi3 = separability_test(const)
    assert ok3 and chi3.degree == 0


def test_separability_shifted_disk():
    E = HermitianRational.disk_exterior(0.7 - 0.2j, 1.0)
    ok, chi = separability_test(E)
    assert ok
    # chi is monic and vanishes at the disk center
    assert abs(chi.leading - 1) < 1e-12
    assert abs(chi(0.7 - 0.2j)) < 1e-10


def test_fz_polynomial():
    f = RationalFn(P([-1, 0, 1]))
    assert fz_polynomial(f, 0).coeffs.tolist() == [-1, 0, 1]
    g = RationalFn(P([-1, 0, 1]), P([0, 1]))
    assert fz_polynomial(g, 3).coeffs.tolist() == [-1, -3, 1]
    rng = np.random.default_rng(1)
    for _ in range(3):
        z = complex(rng.standard_normal(), rng.standard_normal())
        assert fz_polynomial(g, z).degree == g.degree


def test_nested_resultant_constant():
    f = RationalFn(P([0, 0, 1]))
    out = nested_resultant(f, HermPoly2([[1.0]]))
    assert out.degree == 0
    assert abs(out.coeff[0, 0] - 1) < 1e-12


def test_nested_resultant_monomial():
    f = RationalFn(P([0, 0, 1]))
    out = nested_resultant(f, HermPoly2([[0, 0], [0, 1]]))
    expect = np.zeros((3, 3))
    expect[2, 2] = 1
    assert np.abs(out.coeff - expect).max() < 1e-10


def test_nested_resultant_multiplicative():
    rng = np.random.default_rng(2)
    f = RationalFn(P([0.3, 0, 1]))
    for _ in range(4):
        m1 = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        m2 = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        p1 = HermPoly2(m1 + m1.conj().T)
        p2 = HermPoly2(m2 + m2.conj().T)
        lhs = nested_resultant(f, p1 * p2)
        r1 = nested_resultant(f, p1)
        r2 = nested_resultant(f, p2)
        rhs = r1 * r2
        n = max(lhs.coeff.shape[0], rhs.coeff.shape[0])
        a = np.zeros((n, n), dtype=complex)
        b = np.zeros((n, n), dtype=complex)
        a[: lhs.coeff.shape[0], : lhs.coeff.shape[0]] = lhs.coeff
        b[: rhs.coeff.shape[0], : rhs.coeff.shape[0]] = rhs.coeff
        assert np.abs(a - b).max() <= 1e-8 * np.abs(b).max()


def test_nested_resultant_keeps_primitivity():
    # pulled-back primitive polynomials stay primitive
    rng = np.random.default_rng(4)
    f = RationalFn(P([0, 0, 1]))
    for _ in range(4):
        m = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        phi0 = HermPoly2(m + m.conj().T)
        if not is_primitive(phi0):
            continue
        out = nested_resultant(f, phi0)
        assert principal_divisor(out).degree == 0


def test_factor_extraction_lemma():
    f = RationalFn(P([0, 0, 1]))
    a = P([0, 1.0])
    phi0 = HermPoly2([[-1, 0], [0, 1]])
    phi = HermPoly2.from_sesquilinear(a) * phi0
    T, theta, full = nested_resultant_factors(f, phi)
    assert np.abs(T.coeffs - P([0, 0, 1]).coeffs).max() < 1e-9
    assert principal_divisor(theta).degree == 0
    recon = HermPoly2.from_sesquilinear(T) * theta
    assert np.abs(recon.coeff - full.coeff).max() <= 1e-9 * np.abs(full.coeff).max()


def test_probe_disk_rational_collapse():
    samples = exterior_circle_samples(lambda z, w: disk_transform(0, 1, z, w), 1.5, 100)
    reports = rationality_probe(samples, 2)
    assert reports[0].residual < 1e-10
    assert reports[0].d == 1
    # fitted matrices reproduce the transform shape
    phi, psi = reports[0].phi_coeff, reports[0].psi_coeff
    assert abs(phi[0, 0] + 1) < 1e-7 and abs(psi[0, 0]) < 1e-7


def test_probe_annulus_rational_collapse():
    samples = exterior_circle_samples(lambda z, w: annulus_transform(1, 1.5, z, w), 2.3, 100)
    assert rationality_probe(samples, 1)[0].residual < 1e-9


def test_probe_monotone_on_transcendental():
    # residuals are nonincreasing in d for a fixed sample set
    def target(z, w):
        return np.exp(1.0 / (z * np.conj(w)))

    samples = exterior_circle_samples(target, 1.3, 144)
    reports = rationality_probe(samples, 5)
    res = [r.residual for r in reports]
    assert all(a >= b - 1e-12 for a, b in zip(res, res[1:]))
    assert res[0] > 1e-6  # genuinely not bidegree-1 rational


def test_probe_degenerate_samples():
    samples = [(2.0, 2.0, 0.75)] * 40
    with pytest.raises(ValueError, match="degenerate"):
        rationality_probe(samples, 1)
    with pytest.raises(ValueError, match="degenerate"):
        rationality_probe([(2.0, 2.0, 0.75)], 2)


def test_probe_point_cloud_excludes_domain():
    from exptransform.domains import Annulus, Disk, _inside

    disk = Disk(0, 1.0)
    pts = probe_point_cloud(disk, 900)
    assert len(pts) >= 25
    assert not np.any(_inside(disk, pts))
    ann = Annulus(1, 1.5)
    pts = probe_point_cloud(ann, 900)
    assert np.all(np.abs(pts) > 1.5)


def test_probe_samples_hermitian_grid():
    samples = probe_samples(
        __import__("exptransform.domains", fromlist=["Disk"]).Disk(0, 1.0),
        lambda z, w: disk_transform(0, 1, z, w),
        count=64,
    )
    zs = {round(s.z.real, 12) + 1j * round(s.z.imag, 12) for s in samples}
    assert len(samples) == len(zs) ** 2
