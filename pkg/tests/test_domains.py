import numpy as np
import pytest

from exptransform.polyalg import ComplexPoly, RationalFn
from exptransform.domains import (
    Annulus,
    CircularDomain,
    Disk,
    Ellipse,
    LemniscateComponent,
    LemniscateSublevel,
    boundary_components,
    boundary_sample,
    component_of,
    contains,
    domain_area,
    domain_from_json,
    domain_to_json,
    quadrature_rule,
    schwarz_ellipse,
)

P = ComplexPoly
BERNOULLI = RationalFn(P([-1, 0, 1]))


def test_contains_disk():
    assert contains(Disk(0, 1), 0)
    assert not contains(Disk(0, 1), 1.0)  # boundary is outside (strict interior)
    assert contains(Disk(1 + 1j, 0.5), 1.2 + 1j)


def test_contains_bernoulli_boundary_point():
    # |f(0)| = |0 - 1| = 1: the origin sits on the curve, not inside
    assert not contains(LemniscateSublevel(BERNOULLI), 0.0)
    assert contains(LemniscateSublevel(BERNOULLI), 1.0)
    assert contains(LemniscateSublevel(BERNOULLI), -1.0)


def test_component_restricts_to_seed_petal():
    right = LemniscateComponent(BERNOULLI, 1.0)
    assert contains(right, 1.0)
    assert not contains(right, -1.0)


def test_annulus_and_circular_membership():
    A = Annulus(1, 2)
    assert contains(A, 1.5)
    assert not contains(A, 0.5) and not contains(A, 2.5)
    C = CircularDomain(Disk(0, 2), (Disk(0.9, 0.4), Disk(-0.9, 0.4)))
    assert contains(C, 1.7j)
    assert not contains(C, 0.9)  # inside a hole
    with pytest.raises(ValueError):
        CircularDomain(Disk(0, 1), (Disk(0.8, 0.5),))  # hole pokes out
    with pytest.raises(ValueError):
        CircularDomain(Disk(0, 2), (Disk(0.3, 0.4), Disk(-0.3, 0.4)))  # overlap


def test_component_of_unit_disk_area():
    f = RationalFn(P([0, 1]))  # f = z, sublevel set is the unit disk
    gm = component_of(f, 0.0, 400)
    assert abs(gm.area() - np.pi) / np.pi < 0.02


def test_component_of_petal_area_and_disjointness():
    gm1 = component_of(BERNOULLI, 1.0, 400)
    gm2 = component_of(BERNOULLI, -1.0, 400)
    # each petal carries half of the total lemniscate area 2
    assert abs(gm1.area() - 1.0) < 0.02
    assert abs(gm2.area() - 1.0) < 0.02
    assert not np.any(gm1.mask & gm2.mask)


def test_component_seed_outside_errors():
    with pytest.raises(ValueError):
        component_of(BERNOULLI, 0.0, 200)  # boundary point
    with pytest.raises(ValueError):
        LemniscateComponent(BERNOULLI, 5.0)


@pytest.mark.parametrize("n", [2, 3])
def test_petal_count_small_level(n):
    # at a sublevel r < 1 the petals of z^n - 1 are genuinely separated
    # (the r = 1 petals touch at the origin, where grid connectivity is
    # resolution-limited); each n-th root of unity seeds its own component
    r = 0.8
    coeffs = np.array([-1.0] + [0.0] * (n - 1) + [1.0]) / r
    f = RationalFn(P(coeffs))
    masks = [component_of(f, np.exp(2j * np.pi * k / n), 300) for k in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            assert not np.any(masks[i].mask & masks[j].mask)
    # the Bernoulli case also separates at level 1 (the pinch is diagonal)
    if n == 2:
        m1 = component_of(BERNOULLI, 1.0, 300)
        m2 = component_of(BERNOULLI, -1.0, 300)
        assert not np.any(m1.mask & m2.mask)


def test_gridmask_area_converges():
    coarse = component_of(BERNOULLI, 1.0, 300)
    fine = component_of(BERNOULLI, 1.0, 600)
    assert abs(coarse.area() - fine.area()) / fine.area() < 0.01


def test_boundary_disk_four_points():
    pts = boundary_sample(Disk(0, 2.0), 4)
    assert np.allclose(pts, [2, 2j, -2, -2j], atol=1e-12)


def test_boundary_ellipse_parametric():
    pts = np.asarray(boundary_sample(Ellipse(2, 1), 32))
    residual = np.abs((pts.real / 2) ** 2 + pts.imag**2 - 1)
    assert residual.max() < 1e-12


def test_boundary_bernoulli_residual():
    comps = boundary_components(LemniscateSublevel(BERNOULLI), 64)
    assert len(comps) == 2
    for comp in comps:
        residual = np.abs(np.abs(BERNOULLI(np.asarray(comp))) - 1)
        assert residual.max() <= 1e-8


def test_boundary_membership_flip():
    # boundary points are limits of interior and exterior points
    for D in (Disk(0.3, 1.2), Ellipse(2, 1), LemniscateComponent(BERNOULLI, 1.0)):
        pts = np.asarray(boundary_sample(D, 24))
        tang = np.roll(pts, -1) - np.roll(pts, 1)
        normal = 1j * tang / np.abs(tang)
        eps = 1e-6
        plus = np.array([contains(D, p + eps * n) for p, n in zip(pts, normal)])
        minus = np.array([contains(D, p - eps * n) for p, n in zip(pts, normal)])
        assert np.all(plus ^ minus)


def test_annulus_boundary_components():
    comps = boundary_components(Annulus(1, 2), 32)
    assert len(comps) == 2
    assert np.allclose(np.abs(comps[0]), 2)
    assert np.allclose(np.abs(comps[1]), 1)


def test_schwarz_values():
    val = schwarz_ellipse(2, 1, 3.0, "minus")
    assert abs(val - (5 - 4 / 3 * np.sqrt(6))) < 1e-12
    assert abs(schwarz_ellipse(2, 1, 2.0, "minus") - 2.0) < 1e-12
    z = 1.3 + 0.7j
    total = schwarz_ellipse(2, 1, z, "plus") + schwarz_ellipse(2, 1, z, "minus")
    assert abs(total - 2 * 5 * z / 3) < 1e-12


def test_schwarz_is_conjugate_on_boundary():
    pts = np.asarray(boundary_sample(Ellipse(2, 1), 64))
    pts = pts[np.abs(pts.imag) > 1e-3]  # keep off the focal segment's line
    vals = schwarz_ellipse(2, 1, pts, "minus")
    assert np.abs(vals - np.conj(pts)).max() < 1e-10


def test_schwarz_branch_cut_error():
    with pytest.raises(ValueError, match="branch cut"):
        schwarz_ellipse(2, 1, 0.5, "minus")
    with pytest.raises(ValueError):
        schwarz_ellipse(1, 2, 3.0, "minus")  # needs b < a


def test_quadrature_rule_area():
    assert abs(domain_area(Disk(0, 1), 300, 5) - np.pi) < 1e-7
    assert abs(domain_area(Annulus(1, 1.5), 300, 5) - np.pi * 1.25) < 1e-7
    assert abs(domain_area(Ellipse(2, 1), 300, 5) - 2 * np.pi) < 1e-7
    assert abs(domain_area(LemniscateSublevel(BERNOULLI), 300, 5) - 2.0) < 1e-7


def test_degenerate_annulus_is_empty():
    assert domain_area(Annulus(1, 1), 128, 3) == 0.0


def test_domain_json_round_trip():
    domains = [
        Disk(0.5 - 0.25j, 1.5),
        Annulus(1, 2),
        CircularDomain(Disk(0, 2), (Disk(0.9, 0.4),)),
        Ellipse(2, 1),
        LemniscateSublevel(BERNOULLI),
        LemniscateComponent(BERNOULLI, 1.0),
    ]
    for D in domains:
        assert domain_from_json(domain_to_json(D)) == D
    with pytest.raises(ValueError):
        domain_from_json({"kind": "triangle"})
