import numpy as np
import pytest

from exptransform.specialfn import (
    F2Params,
    appell_f2_integral,
    appell_f2_series,
    bernoulli_exp_transform,
    bernoulli_s_even,
    bernoulli_s_odd,
    bernoulli_s_odd_series,
    f2_transform,
    gamma_fn,
    hubbell_integral,
    log_gamma,
    pochhammer,
    rose_slambda_chain,
    rose_slambda_series,
)
from exptransform.moments import bernoulli_moment, rose_moment


def test_gamma_values():
    assert abs(gamma_fn(1.5) - np.sqrt(np.pi) / 2) < 1e-14
    assert abs(gamma_fn(5.0) - 24.0) < 1e-11
    assert abs(gamma_fn(0.5) - np.sqrt(np.pi)) < 1e-14
    # reflection branch
    assert abs(gamma_fn(-0.5) - (-2 * np.sqrt(np.pi))) < 1e-12
    with pytest.raises(ValueError):
        gamma_fn(0.0)
    with pytest.raises(ValueError):
        gamma_fn(-3)


def test_gamma_precision_band():
    import math

    for x in np.linspace(0.5, 20, 40):
        assert abs(gamma_fn(x) - math.gamma(x)) <= 1e-12 * math.gamma(x)
        assert abs(log_gamma(x) - math.lgamma(x)) <= 1e-12 * max(1, abs(math.lgamma(x)))


def test_pochhammer():
    assert pochhammer(1, 5) == 120
    assert abs(pochhammer(1.5, 2) - 3.75) < 1e-15
    assert pochhammer(2.5, 0) == 1.0
    with pytest.raises(ValueError):
        pochhammer(1.0, -1)


def test_f2_at_origin():
    p = F2Params(1, 1, 1, 1.5, 1.5, 0, 0)
    assert abs(appell_f2_series(p) - 1) < 1e-14
    assert abs(appell_f2_integral(p) - 1) < 1e-12


def test_f2_reduces_to_gauss_series_at_y_zero():
    x = 0.3
    p = F2Params(1, 1, 1, 1.5, 1.5, x, 0)
    direct = sum(
        pochhammer(1, k) * pochhammer(1, k) / (pochhammer(1.5, k) * pochhammer(1, k)) * x**k
        for k in range(80)
    )
    assert abs(appell_f2_series(p) - direct) < 1e-12


def test_f2_series_vs_integral():
    p = F2Params(1, 1, 1, 1.5, 1.5, 1 / 9, 1 / 9)
    s = appell_f2_series(p, tol=1e-13)
    i = appell_f2_integral(p, tol=1e-12)
    assert abs(s - i) <= 1e-8


def test_f2_three_way_grid():
    # series, integral, and transformed-then-integral agree on the grid
    for x in np.linspace(0.05, 0.25, 3):
        for y in np.linspace(0.05, 0.2, 3):
            p = F2Params(1, 1, 1, 1.5, 1.5, x, y)
            s = appell_f2_series(p, tol=1e-13)
            i = appell_f2_integral(p, tol=1e-12)
            q, pref = f2_transform(p)
            t = pref * appell_f2_integral(q, tol=1e-12)
            assert abs(s - i) <= 1e-7 * abs(s)
            assert abs(s - t) <= 1e-7 * abs(s)


def test_f2_series_domain_guard():
    with pytest.raises(ValueError, match="convergence"):
        appell_f2_series(F2Params(1, 1, 1, 1.5, 1.5, 0.7, 0.4))


def test_f2_integral_parameter_guard():
    with pytest.raises(ValueError):
        appell_f2_integral(F2Params(1, -0.5, 1, 1.5, 1.5, 0.1, 0.1))


def test_f2_transform_fixed_point():
    p = F2Params(1, 1, 1, 1.5, 1.5, 0.0, 0.0)
    q, pref = f2_transform(p)
    assert pref == 1.0
    assert q.x == 0 and q.y == 0
    with pytest.raises(ValueError):
        f2_transform(F2Params(1, 1, 1, 1.5, 1.5, 0.6, 0.4))


def test_f2_transform_identity_value():
    p = F2Params(1, 1, 1, 1.5, 1.5, 0.1, 0.2)
    lhs = appell_f2_series(p, tol=1e-13)
    q, pref = f2_transform(p)
    rhs = pref * appell_f2_integral(q, tol=1e-12)
    assert abs(lhs - rhs) <= 1e-9


def test_hubbell_zeros_and_symmetry():
    assert hubbell_integral(0, 2.0) == 0.0
    assert hubbell_integral(1.3, 0) == 0.0
    assert abs(hubbell_integral(0.3, 0.8) - hubbell_integral(0.8, 0.3)) < 1e-12


def test_hubbell_against_midpoint_oracle():
    # brute-force 2-D midpoint quadrature of the defining integrand
    s = t = 1 / np.sqrt(2)
    n = 2000
    xi = (np.arange(n) + 0.5) * s / n
    eta = (np.arange(n) + 0.5) * t / n
    grid = 1.0 / (1.0 + xi[:, None] ** 2 + eta[None, :] ** 2)
    brute = grid.sum() * (s / n) * (t / n)
    assert abs(hubbell_integral(s, t) - brute) < 1e-8


def test_hubbell_monotone():
    vals = [hubbell_integral(s, 0.9) for s in (0.2, 0.5, 1.0, 2.0)]
    assert all(a < b for a, b in zip(vals, vals[1:]))
    vals_t = [hubbell_integral(0.7, t) for t in (0.1, 0.6, 1.4)]
    assert all(a < b for a, b in zip(vals_t, vals_t[1:]))


def test_hubbell_partial_derivative():
    # dH/ds equals the inner antiderivative arctan(t/sqrt(1+s^2))/sqrt(1+s^2)
    s, t = 0.8, 1.1
    h = 1e-5
    fd = (hubbell_integral(s + h, t) - hubbell_integral(s - h, t)) / (2 * h)
    r = np.sqrt(1 + s * s)
    assert abs(fd - np.arctan(t / r) / r) < 1e-6


def test_s_odd_closed_form():
    val = bernoulli_s_odd(2, 2)
    assert abs(val - (-0.5 * np.log(8 / 9))) < 1e-14
    assert abs(val - 0.058891517828191756) < 1e-12


def test_s_odd_series_agreement():
    for z, w in ((2, 2), (2.5 + 0.5j, 3 - 1j)):
        assert abs(bernoulli_s_odd(z, w) - bernoulli_s_odd_series(z, w)) < 1e-10


def test_s_odd_partial_sum_identity():
    # the n = 0 shell is M_{1,1} z^-2 wbar^-2 = (1/4)((z^-2 + wbar^-2)^2 - z^-4 - wbar^-4)
    z, w = 2.3, 1.9 - 0.4j
    zi2, wi2 = 1 / z**2, 1 / np.conj(w) ** 2
    shell = bernoulli_moment(1, 1) * zi2 * wi2
    identity = 0.25 * ((zi2 + wi2) ** 2 - zi2**2 - wi2**2)
    assert abs(shell - identity) < 1e-15


def test_s_odd_region_guard():
    with pytest.raises(ValueError):
        bernoulli_s_odd(1.2, 2.0)


def test_s_even_three_routes():
    f2 = bernoulli_s_even(2, 2, "f2")
    hb = bernoulli_s_even(2, 2, "hubbell")
    se = bernoulli_s_even(2, 2, "series")
    assert abs(f2 - hb) < 1e-7
    assert abs(f2 - se) < 1e-7
    assert abs(hb - se) < 1e-7


def test_s_even_hermitian_swap():
    z, w = 2.1 + 0.3j, 2.6 - 0.8j
    assert abs(bernoulli_s_even(z, w) - np.conj(bernoulli_s_even(w, z))) < 1e-10


def test_s_even_hubbell_guard():
    with pytest.raises(ValueError):
        bernoulli_s_even(2 + 1j, 2, "hubbell")


def test_bernoulli_transform_value():
    val = bernoulli_exp_transform(2, 2)
    h = hubbell_integral(1 / np.sqrt(2), 1 / np.sqrt(2))
    assert abs(val - np.sqrt(8 / 9) * np.exp(-2 / np.pi * h)) < 1e-9


def test_bernoulli_transform_hermitian():
    a, b = 2.0, 2.0 + 1.0j
    assert abs(bernoulli_exp_transform(a, b) - np.conj(bernoulli_exp_transform(b, a))) < 1e-10


def test_bernoulli_odd_even_split_identity():
    # exp(-S_odd - S_even) reproduces the square-root closed form exactly
    for z, w in ((2, 2), (1.9 + 0.8j, 2.4 - 0.3j)):
        full = np.exp(-bernoulli_s_odd(z, w) - bernoulli_s_even(z, w))
        assert abs(full - bernoulli_exp_transform(z, w)) < 1e-10


def test_bernoulli_diagonal_decay():
    zs = np.sqrt(2) + np.array([0.5, 0.2, 0.05, 0.01, 0.002])
    vals = [bernoulli_exp_transform(z, z) for z in zs]
    assert all(abs(v.imag) < 1e-12 and v.real > 0 for v in vals)
    assert all(a.real > b.real for a, b in zip(vals, vals[1:]))
    assert vals[-1].real < 0.05


def test_rose_slambda_chain_matches_series_and_moments():
    # the transformed-integral route and the raw series both reproduce the
    # rose moment sums for n = 2, 3 and lambda = 0, 1
    for n, lam in ((2, 0), (2, 1), (3, 0), (3, 1)):
        x, y = 0.06, 0.09
        series = rose_slambda_series(n, lam, x, y, tol=1e-13)
        chain = rose_slambda_chain(n, lam, x, y, tol=1e-12)
        direct = sum(
            rose_moment(n, k, m, lam) * x**k * y**m for k in range(40) for m in range(40)
        )
        assert abs(series - direct) < 1e-10
        assert abs(chain - series) <= 1e-8 * abs(series)
