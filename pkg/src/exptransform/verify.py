"""End-to-end verification checks: every closed formula is pitted against
an independent route (direct quadrature, series, or both), the resultant
laws are exercised on random instances, and the rationality probe is run
on both sides of the quadrature-domain / lemniscate divide.

Each check returns a CheckResult; run_checks drives any subset and is the
backend of the command-line `verify` subcommand and of the acceptance test
suite.
"""

import time
from dataclasses import dataclass

import numpy as np

from . import analysis as an
from . import domains as dm
from . import moments as mo
from . import specialfn as sf
from . import transforms as tr
from .polyalg import ComplexPoly, HermPoly2, RationalFn, principal_divisor
from .resultants import (
    meromorphic_resultant,
    poisson_resultant,
    resultant_scale,
    sylvester_resultant,
)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float


def _bernoulli():
    return dm.LemniscateSublevel(RationalFn(ComplexPoly([-1, 0, 1])))


def _right_petal():
    return dm.LemniscateComponent(RationalFn(ComplexPoly([-1, 0, 1])), 1.0)


def _rose3():
    return dm.LemniscateSublevel(RationalFn(ComplexPoly([-1, 0, 0, 1])))


def check_disk_closed_form(seed=0):
    """Disk transform: quadrature within 1e-6 of 1 - R^2/(z conj(w)) in
    under 5 s at the 600^2 grid; 40-shell moment series within 1e-10."""
    t0 = time.time()
    sample = tr.exp_transform_quadrature(dm.Disk(0.0, 1.0), 2.0, 2.0, resolution=600)
    elapsed = time.time() - t0
    err_quad = abs(sample.value - 0.75)
    table = mo.moment_table(dm.Disk(0.0, 1.0), 40)
    err_mom = abs(tr.exp_transform_moments(table, 2.0, 2.0).value - 0.75)
    ok = err_quad <= 1e-6 and elapsed < 5.0 and err_mom <= 1e-10
    return ok, f"quad err {err_quad:.2e} in {elapsed:.2f}s, moment err {err_mom:.2e}"


def check_annulus(seed=0):
    """Annulus r=1, R=1.5: quadrature vs closed form at 20 random exterior
    pairs (rel err <= 1e-5); mixed-region value identically 1."""
    rng = np.random.default_rng(seed)
    D = dm.Annulus(1.0, 1.5)
    worst = 0.0
    for _ in range(20):
        z = (1.8 + 1.5 * rng.random()) * np.exp(2j * np.pi * rng.random())
        w = (1.8 + 1.5 * rng.random()) * np.exp(2j * np.pi * rng.random())
        closed = (z * np.conj(w) - 2.25) / (z * np.conj(w) - 1.0)
        quad = tr.exp_transform_quadrature(D, z, w, resolution=600).value
        worst = max(worst, abs(quad - closed) / abs(closed))
    mixed = tr.circular_domain_transform(D, 2.2, 0.4 + 0.3j)
    ok = worst <= 1e-5 and mixed == 1.0
    return ok, f"worst rel err {worst:.2e}, mixed-region value {mixed}"


def check_ellipse(seed=0):
    """Ellipse a=2, b=1: closed form at z=w=3 near 0.72121 and within 1e-4
    of quadrature; diagonal transform decays to 0 at the right vertex."""
    E = dm.Ellipse(2.0, 1.0)
    closed = tr.ellipse_transform(2.0, 1.0, 3.0, 3.0)
    quad = tr.exp_transform_quadrature(E, 3.0, 3.0, resolution=600).value
    err_ref = abs(closed - 0.72121)
    err_quad = abs(closed - quad)
    edge = tr.ellipse_transform(2.0, 1.0, 2.0 + 1e-3, 2.0 + 1e-3)
    ok = err_ref <= 1e-4 and err_quad <= 1e-4 and abs(edge) < 0.05
    return ok, f"|E-0.72121| {err_ref:.2e}, vs quad {err_quad:.2e}, edge {abs(edge):.3f}"


def check_bernoulli_moments(seed=0):
    """Bernoulli moments: Gamma closed form vs quadrature for p+q <= 12
    (abs err <= 1e-6 at the 800^2 grid), plus the classic spot values."""
    arr = mo.moment_array(_bernoulli(), 12, resolution=800, depth=6)
    worst = 0.0
    for p in range(13):
        for q in range(13 - p):
            worst = max(worst, abs(arr[p, q] - mo.bernoulli_moment(p, q)))
    spots = (
        abs(mo.bernoulli_moment(0, 0) - 2 / np.pi),
        abs(mo.bernoulli_moment(1, 1) - 0.5),
        abs(mo.bernoulli_moment(2, 0) - 4 / (3 * np.pi)),
    )
    ok = worst <= 1e-6 and max(spots) <= 1e-12
    return ok, f"worst quadrature err {worst:.2e}, spot errs {max(spots):.2e}"


def check_bernoulli_cauchy(seed=0):
    """Cauchy transform of the Bernoulli set at z=2: the even-moment series
    reaches 2/(3 sqrt(3)) within 1e-6 by 30 terms and the quadrature
    transform agrees to 1e-5."""
    target = 2.0 / (3.0 * np.sqrt(3.0))
    series = sum(mo.bernoulli_even_moment(k) / 2.0 ** (2 * k + 1) for k in range(30))
    quad = tr.cauchy_transform(_bernoulli(), 2.0, resolution=600)
    err_s = abs(series - target)
    err_q = abs(quad - target)
    ok = err_s <= 1e-6 and err_q <= 1e-5
    return ok, f"series err {err_s:.2e}, quadrature err {err_q:.2e}"


def check_bernoulli_transform(seed=0):
    """Bernoulli exponential transform at z=w=2 by three routes: the
    square-root/Hubbell closed form, the 30-shell moment series, and direct
    quadrature, pairwise within 1e-5."""
    h = sf.hubbell_integral(1 / np.sqrt(2), 1 / np.sqrt(2))
    reference = np.sqrt(8 / 9) * np.exp(-2 / np.pi * h)
    closed = sf.bernoulli_exp_transform(2.0, 2.0)
    table = mo.moment_table(_bernoulli(), 30)
    series = tr.exp_transform_moments(table, 2.0, 2.0).value
    quad = tr.exp_transform_quadrature(_bernoulli(), 2.0, 2.0, resolution=600).value
    errs = (
        abs(closed - reference),
        abs(closed - series),
        abs(closed - quad),
        abs(series - quad),
    )
    ok = max(errs) <= 1e-5
    return ok, f"max pairwise err {max(errs):.2e} (value {closed:.8f})"


def check_appell_f2(seed=0):
    """F2 series vs Euler integral on a 5x5 grid with |x|+|y| <= 0.5
    (rel err <= 1e-7); the fractional-linear transformation identity at 10
    random points (err <= 1e-8)."""
    worst = 0.0
    for x in np.linspace(0.02, 0.3, 5):
        for y in np.linspace(0.02, 0.2, 5):
            p = sf.F2Params(1, 1, 1, 1.5, 1.5, x, y)
            s = sf.appell_f2_series(p, tol=1e-13)
            i = sf.appell_f2_integral(p, tol=1e-12)
            worst = max(worst, abs(s - i) / abs(s))
    rng = np.random.default_rng(seed)
    worst_t = 0.0
    for _ in range(10):
        x, y = 0.02 + 0.35 * rng.random(2)
        p = sf.F2Params(1, 1, 1, 1.5, 1.5, x, y)
        lhs = sf.appell_f2_series(p, tol=1e-13)
        q, pref = sf.f2_transform(p)
        rhs = pref * sf.appell_f2_integral(q, tol=1e-12)
        worst_t = max(worst_t, abs(lhs - rhs))
    ok = worst <= 1e-7 and worst_t <= 1e-8
    return ok, f"series/integral rel {worst:.2e}, transform err {worst_t:.2e}"


def _random_poly(rng, degmax, degmin=1):
    deg = rng.integers(degmin, degmax + 1)
    c = rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1)
    while abs(c[-1]) < 0.2:
        c[-1] = rng.standard_normal() + 1j * rng.standard_normal()
    return ComplexPoly(c)


def check_resultants(seed=0):
    """Sylvester vs Poisson on 100 random pairs (deg <= 8, rel <= 1e-8);
    multiplicativity, skew-symmetry and conjugation law; meromorphic
    resultant symmetry on 50 random rational pairs (rel <= 1e-7)."""
    rng = np.random.default_rng(seed)
    worst_sp = 0.0
    for _ in range(100):
        A = _random_poly(rng, 8)
        B = _random_poly(rng, 8)
        s = sylvester_resultant(A, B)
        p = poisson_resultant(A, B)
        worst_sp = max(worst_sp, abs(s - p) / max(abs(s), 1e-30))

    worst_law = 0.0
    for _ in range(30):
        A1 = _random_poly(rng, 4)
        A2 = _random_poly(rng, 4)
        B = _random_poly(rng, 4)
        lhs = sylvester_resultant(A1 * A2, B)
        rhs = sylvester_resultant(A1, B) * sylvester_resultant(A2, B)
        worst_law = max(worst_law, abs(lhs - rhs) / max(abs(lhs), 1e-30))
        n, m = A1.degree, B.degree
        skew = sylvester_resultant(A1, B) - (-1) ** (n * m) * sylvester_resultant(B, A1)
        worst_law = max(worst_law, abs(skew) / max(abs(sylvester_resultant(A1, B)), 1e-30))
        conj_lhs = np.conj(sylvester_resultant(A1, B))
        conj_rhs = sylvester_resultant(A1.conj(), B.conj())
        worst_law = max(worst_law, abs(conj_lhs - conj_rhs) / max(abs(conj_lhs), 1e-30))

    worst_mero = 0.0
    done = 0
    while done < 50:
        f = RationalFn(_random_poly(rng, 3), _random_poly(rng, 2).monic())
        g = RationalFn(_random_poly(rng, 3), _random_poly(rng, 2).monic())
        try:
            ab = meromorphic_resultant(f, g)
            ba = meromorphic_resultant(g, f)
        except ValueError:
            continue
        worst_mero = max(worst_mero, abs(ab - ba) / max(abs(ab), 1e-30))
        done += 1

    ok = worst_sp <= 1e-8 and worst_law <= 1e-8 and worst_mero <= 1e-7
    return ok, f"sylv/poisson {worst_sp:.2e}, laws {worst_law:.2e}, symmetry {worst_mero:.2e}"


def check_pushforward(seed=0):
    """Pushforward through f = zeta^2 from the unit disk: numeric nested
    resultant equals 0.5625 at z=w=2 to 1e-12; the symbolic quotient equals
    ((z conj(w) - 1)/(z conj(w)))^2 coefficientwise to 1e-10."""
    E1 = tr.HermitianRational.disk_exterior(0.0, 1.0)
    f = RationalFn(ComplexPoly([0, 0, 1]))
    numeric = tr.pushforward_transform(E1, f, 2, 2.0, 2.0)
    err_num = abs(numeric - 0.5625)

    sym = tr.pushforward_symbolic(E1, f)
    num_expect = HermPoly2([[1, 0, 0], [0, -2, 0], [0, 0, 1]])  # (z wbar - 1)^2
    den_expect = HermPoly2([[0, 0, 0], [0, 0, 0], [0, 0, 1]])  # (z wbar)^2
    lhs = (sym.num * den_expect).coeff
    rhs = (sym.den * num_expect).coeff
    mask = np.abs(rhs) > 1e-6
    ratios = lhs[mask] / rhs[mask]
    scale = np.abs(ratios[0])
    err_sym = max(
        np.abs(ratios - ratios[0]).max() / scale,
        np.abs(lhs[~mask]).max() / max(np.abs(lhs).max(), 1e-300),
    )
    ok = err_num <= 1e-12 and err_sym <= 1e-10
    return ok, f"numeric err {err_num:.2e}, symbolic mismatch {err_sym:.2e}"


def check_factor_extraction(seed=0):
    """Principal factorization of the nested resultant for
    phi = xi conj(eta) (xi conj(eta) - 1) pulled through f = zeta^2:
    T(z) proportional to Res(f_z, xi)^2 = z^2, theta primitive,
    reconstruction error <= 1e-9."""
    f = RationalFn(ComplexPoly([0, 0, 1]))
    a = ComplexPoly([0, 1.0])
    phi0 = HermPoly2([[-1, 0], [0, 1]])
    phi = HermPoly2.from_sesquilinear(a) * phi0
    T, theta, full = an.nested_resultant_factors(f, phi)

    t_expect = np.zeros(3, dtype=complex)
    t_expect[2] = 1.0  # z^2, monic
    err_t = np.abs(np.pad(T.coeffs, (0, 3 - len(T.coeffs))) - t_expect).max()
    primitive = principal_divisor(theta).degree == 0
    recon = HermPoly2.from_sesquilinear(T) * theta
    nmax = max(recon.coeff.shape[0], full.coeff.shape[0])
    ra = np.zeros((nmax, nmax), dtype=complex)
    rb = np.zeros((nmax, nmax), dtype=complex)
    ra[: recon.coeff.shape[0], : recon.coeff.shape[0]] = recon.coeff
    rb[: full.coeff.shape[0], : full.coeff.shape[0]] = full.coeff
    err_rec = np.abs(ra - rb).max() / np.abs(rb).max()
    ok = err_t <= 1e-9 and primitive and err_rec <= 1e-9
    return ok, f"T err {err_t:.2e}, theta primitive {primitive}, recon {err_rec:.2e}"


def check_rationality_dichotomy(seed=0):
    """Near-boundary probe: disk and annulus samples fit a bidegree-1
    rational transform below 1e-8, while the Bernoulli right petal stays
    above 1e-3 for every d <= 6 with 900 samples."""
    disk = dm.Disk(0.0, 1.0)
    sd = an.probe_samples(disk, lambda z, w: tr.disk_transform(0, 1, z, w), 900, method="closed_form")
    disk_res = an.rationality_probe(sd, 1)[0].residual

    ann = dm.Annulus(1.0, 1.5)
    sa = an.probe_samples(ann, lambda z, w: tr.annulus_transform(1, 1.5, z, w), 900, method="closed_form")
    ann_res = an.rationality_probe(sa, 1)[0].residual

    petal = _right_petal()
    nodes, weights = dm.quadrature_rule(petal, 400, 6)
    cn = np.conj(nodes)

    def petal_eval(z, w):
        return np.exp(-np.sum(weights / ((nodes - z) * (cn - np.conj(w)))) / np.pi)

    sp = an.probe_samples(petal, petal_eval, 900)
    petal_reports = an.rationality_probe(sp, 6)
    petal_min = min(r.residual for r in petal_reports)

    ok = disk_res < 1e-8 and ann_res < 1e-8 and petal_min > 1e-3 and len(sp) == 900
    return ok, (
        f"disk {disk_res:.1e}, annulus {ann_res:.1e}, petal min over d<=6 {petal_min:.1e}"
    )


def check_rose_moments(seed=0):
    """Rose |z^3 - 1| < 1: closed-form moments vs quadrature for k, m <= 2
    and every lambda (abs err <= 1e-5); selection rule |M_ij| <= 1e-6 off
    the congruence i == j (mod 3)."""
    arr = mo.moment_array(_rose3(), 8, resolution=800, depth=6)
    worst = 0.0
    for lam in range(3):
        for k in range(3):
            for m in range(3):
                i, j = 3 * k + lam, 3 * m + lam
                if i <= 8 and j <= 8:
                    worst = max(worst, abs(arr[i, j] - mo.rose_moment(3, k, m, lam)))
    worst_sel = 0.0
    for i in range(9):
        for j in range(9):
            if (i - j) % 3 != 0:
                worst_sel = max(worst_sel, abs(arr[i, j]))
    ok = worst <= 1e-5 and worst_sel <= 1e-6
    return ok, f"closed vs quad {worst:.2e}, selection rule {worst_sel:.2e}"


def check_quadrature_identity(seed=0):
    """One-node quadrature identity on a disk (node = center, coefficient
    pi R^2): monomials to degree 8 integrate with residual <= 1e-6;
    a one-node rule on the Bernoulli petal stays visibly wrong."""
    D = dm.Disk(0.3 + 0.2j, 1.1)
    Q = mo.QuadratureData(((0.3 + 0.2j, 1),), ((np.pi * 1.1**2,),))
    res_disk = mo.quadrature_identity_check(D, Q, 8)

    petal = _right_petal()
    area = dm.domain_area(petal, 400, 6)
    Qp = mo.QuadratureData(((1.0, 1),), ((area,),))
    res_petal = mo.quadrature_identity_check(petal, Qp, 8, resolution=400)
    ok = res_disk <= 1e-6 and res_petal > 1e-2
    return ok, f"disk residual {res_disk:.2e}, petal one-node residual {res_petal:.2e}"


ALL_CHECKS = (
    ("disk-closed-form", check_disk_closed_form),
    ("annulus", check_annulus),
    ("ellipse", check_ellipse),
    ("bernoulli-moments", check_bernoulli_moments),
    ("bernoulli-cauchy", check_bernoulli_cauchy),
    ("bernoulli-transform", check_bernoulli_transform),
    ("appell-f2", check_appell_f2),
    ("resultants", check_resultants),
    ("pushforward", check_pushforward),
    ("factor-extraction", check_factor_extraction),
    ("rationality-dichotomy", check_rationality_dichotomy),
    ("rose-moments", check_rose_moments),
    ("quadrature-identity", check_quadrature_identity),
)


def run_checks(only=None, seed=0):
    """Run the verification battery; returns a list of CheckResult."""
    results = []
    for name, fn in ALL_CHECKS:
        if only is not None and name != only:
            continue
        t0 = time.time()
        try:
            passed, detail = fn(seed=seed)
        except Exception as exc:  # a crash is a failure with its reason
            passed, detail = False, f"raised {type(exc).__name__}: {exc}"
        results.append(CheckResult(name, bool(passed), detail, time.time() - t0))
    if not results:
        raise ValueError(f"no check named {only!r}")
    return results
