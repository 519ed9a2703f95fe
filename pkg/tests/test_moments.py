import numpy as np
import pytest

from exptransform.polyalg import ComplexPoly, RationalFn
from exptransform.domains import Annulus, Disk, Ellipse, LemniscateSublevel, LemniscateComponent
from exptransform.moments import (
    MomentTable,
    QuadratureData,
    bernoulli_even_moment,
    bernoulli_moment,
    disk_moment,
    moment_array,
    moment_quadrature,
    moment_table,
    quadrature_identity_check,
    rose_moment,
    rose_moment_ij,
)

P = ComplexPoly
BERNOULLI = LemniscateSublevel(RationalFn(P([-1, 0, 1])))


def test_unit_disk_moments_quadrature():
    D = Disk(0, 1.0)
    assert abs(moment_quadrature(D, 0, 0, resolution=300) - 1.0) < 1e-8
    assert abs(moment_quadrature(D, 1, 1, resolution=300) - 0.5) < 1e-8
    assert abs(moment_quadrature(D, 1, 0, resolution=300)) < 1e-9
    with pytest.raises(ValueError):
        moment_quadrature(D, -1, 0)


def test_disk_closed_form_matches_quadrature_offset():
    D = Disk(0.4 + 0.3j, 1.2)
    for p, q in ((0, 0), (2, 1), (3, 3), (4, 0)):
        closed = disk_moment(D.a, D.R, p, q)
        quad = moment_quadrature(D, p, q, resolution=400)
        assert abs(closed - quad) < 1e-7


def test_bernoulli_spot_values():
    assert abs(bernoulli_moment(0, 0) - 2 / np.pi) < 1e-15
    assert bernoulli_moment(1, 1) == 0.5
    assert abs(bernoulli_moment(2, 0) - 4 / (3 * np.pi)) < 1e-15
    assert bernoulli_moment(1, 0) == 0.0
    assert bernoulli_moment(0, 3) == 0.0


def test_bernoulli_even_moment_consistency():
    # the even-moment factorial form agrees with the two-index Gamma form
    for k in range(7):
        assert abs(bernoulli_moment(2 * k, 0) - bernoulli_even_moment(k)) < 1e-12


def test_bernoulli_odd_odd_binomial_form():
    from math import comb

    for k in range(4):
        for m in range(4):
            expect = comb(k + m + 2, k + 1) / (2 * (k + m + 2))
            assert abs(bernoulli_moment(2 * k + 1, 2 * m + 1) - expect) < 1e-12


def test_bernoulli_moment_vs_quadrature():
    arr = moment_array(BERNOULLI, 6, resolution=600, depth=6)
    for p in range(7):
        for q in range(7 - p):
            assert abs(arr[p, q] - bernoulli_moment(p, q)) < 1e-7


def test_rose_consistency_with_bernoulli():
    assert abs(rose_moment(2, 0, 0, 1) - 0.5) < 1e-14
    assert abs(rose_moment(2, 0, 0, 0) - 2 / np.pi) < 1e-14


def test_rose_errors():
    with pytest.raises(ValueError):
        rose_moment(3, 0, 0, 3)
    with pytest.raises(ValueError):
        rose_moment(1, 0, 0, 0)
    assert rose_moment_ij(3, 4, 2) == 0.0  # 4 - 2 not divisible by 3


def test_rose3_base_moment_vs_quadrature():
    f = RationalFn(P([-1, 0, 0, 1]))
    D = LemniscateSublevel(f)
    closed = rose_moment(3, 0, 0, 0)
    quad = moment_quadrature(D, 0, 0, resolution=500)
    assert abs(closed - quad) < 1e-5


def test_moment_table_disk_diagonal():
    table = moment_table(Disk(0, 1.5), 5)
    assert table.source == "closed_form"
    for p in range(6):
        assert abs(table[p, p] - 1.5 ** (2 * p + 2) / (p + 1)) < 1e-12
        for q in range(6):
            if q != p:
                assert abs(table[p, q]) < 1e-12


def test_moment_table_annulus_and_degenerate():
    table = moment_table(Annulus(1, 1.5), 4)
    for p in range(5):
        assert abs(table[p, p] - (1.5 ** (2 * p + 2) - 1) / (p + 1)) < 1e-12
    empty = moment_table(Annulus(1, 1), 4)
    assert np.abs(empty.entries).max() == 0.0


def test_moment_table_bernoulli_closed_form_detected():
    table = moment_table(BERNOULLI, 6)
    assert table.source == "closed_form"
    for p in range(7):
        for q in range(7):
            if (p + q) % 2 == 1:
                assert table[p, q] == 0.0
            else:
                assert abs(table[p, q] - bernoulli_moment(p, q)) < 1e-14


def test_moment_table_quadrature_hermitian():
    table = moment_table(Ellipse(2, 1), 5, resolution=300)
    assert table.source == "quadrature"
    m = table.entries
    assert np.abs(m - m.conj().T).max() < 1e-9
    assert m[0, 0].real > 0


def test_rose_selection_rule_quadrature():
    f = RationalFn(P([-1, 0, 0, 1]))
    arr = moment_array(LemniscateSublevel(f), 5, resolution=500)
    for i in range(6):
        for j in range(6):
            if (i - j) % 3 != 0:
                assert abs(arr[i, j]) < 1e-6


def test_radius_estimate():
    table = moment_table(Disk(0, 1.5), 8)
    r = table.radius_estimate()
    assert 1.2 < r <= 1.5 + 1e-9


def test_quadrature_data_validation():
    with pytest.raises(ValueError):
        QuadratureData(((0, 0),), ((1.0,),))
    with pytest.raises(ValueError):
        QuadratureData(((0, 2),), ((1.0,),))
    Q = QuadratureData(((0.5, 2), (1.0, 1)), ((1.0, 0.5), (2.0,)))
    assert Q.order == 3


def test_disk_mean_value_identity():
    D = Disk(0.3 + 0.2j, 1.1)
    Q = QuadratureData(((D.a, 1),), ((np.pi * D.R**2,),))
    residual = quadrature_identity_check(D, Q, 8)
    assert residual < 1e-6


def test_one_node_rule_fails_on_petal():
    petal = LemniscateComponent(RationalFn(P([-1, 0, 1])), 1.0)
    from exptransform.domains import domain_area

    area = domain_area(petal, 300, 5)
    Q = QuadratureData(((1.0, 1),), ((area,),))
    residual = quadrature_identity_check(petal, Q, 8, resolution=300)
    assert residual > 1e-2


def test_identity_check_area_only():
    # with maxdeg 0 the residual is exactly |area - coefficient sum|
    D = Disk(0, 1.0)
    Q = QuadratureData(((0.0, 1),), ((np.pi + 0.25,),))
    residual = quadrature_identity_check(D, Q, 0)
    assert abs(residual - 0.25) < 1e-9


def test_moment_table_shape_guard():
    with pytest.raises(ValueError):
        MomentTable(2, np.zeros((2, 2)), "quadrature")
