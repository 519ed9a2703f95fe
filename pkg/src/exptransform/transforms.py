"""Exponential transform engines: direct area quadrature, moment series,
closed forms for disks, annuli, circular domains and ellipses, and the
pushforward identity that transports a transform through a proper rational
map via nested meromorphic resultants.

The defining double integral lives on pairs of points outside the closure
of the domain; interior evaluations are served only by the closed forms,
which are valid in every region.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .domains import (
    Annulus,
    CircularDomain,
    Disk,
    Ellipse,
    LemniscateComponent,
    LemniscateSublevel,
    boundary_sample,
    contains,
    quadrature_rule,
    schwarz_ellipse,
)
from .polyalg import ComplexPoly, HermPoly2, RationalFn, poly_gcd, principal_divisor
from .resultants import INF, divisor_of, meromorphic_resultant

EXTERIOR_MARGIN = 1e-6

METHODS = ("quadrature", "moments", "closed_form", "pushforward")


@dataclass(frozen=True)
class TransformSample:
    """One evaluation E(z, w) with the method used and an error heuristic."""

    z: complex
    w: complex
    value: complex
    method: str
    est_error: float

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if not np.isfinite(self.value):
            raise ValueError("transform value must be finite")
        if self.est_error < 0:
            raise ValueError("error estimate must be nonnegative")


class EvaluationRegionError(ValueError):
    """Evaluation point in (or too close to) the closed domain."""


@lru_cache(maxsize=32)
def _boundary_cloud(D):
    return np.asarray(boundary_sample(D, 256), dtype=complex)


def _require_exterior(D, z, margin=EXTERIOR_MARGIN):
    """Demand that z lies outside closure(D) with a small clearance."""
    z = complex(z)
    if isinstance(D, Disk):
        if abs(z - D.a) <= D.R + margin:
            raise EvaluationRegionError("evaluation point in domain")
        return
    if isinstance(D, Annulus):
        r = abs(z)
        if not (r >= D.R + margin or r <= D.r - margin):
            raise EvaluationRegionError("evaluation point in domain")
        return
    if isinstance(D, CircularDomain):
        if abs(z - D.outer.a) >= D.outer.R + margin:
            return
        for h in D.holes:
            if abs(z - h.a) <= h.R - margin:
                return
        raise EvaluationRegionError("evaluation point in domain")
    if isinstance(D, Ellipse):
        if (z.real / D.a) ** 2 + (z.imag / D.b) ** 2 <= 1 + margin:
            raise EvaluationRegionError("evaluation point in domain")
        return
    if isinstance(D, LemniscateSublevel):
        if abs(D.f(z)) <= 1 + margin:
            raise EvaluationRegionError("evaluation point in domain")
        return
    if isinstance(D, LemniscateComponent):
        if contains(D, z):
            raise EvaluationRegionError("evaluation point in domain")
        if abs(D.f(z)) <= 1 + margin:
            # near or inside the sublevel set: require geometric clearance
            # from this component's boundary
            if np.abs(_boundary_cloud(D) - z).min() <= margin:
                raise EvaluationRegionError("evaluation point in domain")
        return
    raise TypeError(f"unknown domain {type(D).__name__}")


# ----------------------------------------------------------------------
# direct quadrature


def _transform_integral(D, z, w, resolution, depth):
    nodes, weights = quadrature_rule(D, resolution, depth)
    integrand = weights / ((nodes - z) * (np.conj(nodes) - np.conj(w)))
    return np.exp(-np.sum(integrand) / np.pi)


def exp_transform_quadrature(D, z, w, tol=1e-6, resolution=600, depth=6):
    """E(z, w) by the defining area integral over the quadrature
    decomposition of D.

    est_error is the Richardson-style difference against a half-resolution
    evaluation -- a heuristic, not a bound.
    """
    z, w = complex(z), complex(w)
    _require_exterior(D, z)
    _require_exterior(D, w)
    fine = _transform_integral(D, z, w, resolution, depth)
    coarse = _transform_integral(D, z, w, max(resolution // 2, 64), max(depth - 1, 2))
    return TransformSample(z, w, complex(fine), "quadrature", float(abs(fine - coarse)))


def cauchy_transform(D, z, resolution=600, depth=6):
    """Cauchy transform -(1/pi) * integral dxdy / (zeta - z), z exterior.

    Equals R^2/z for the disk |zeta| < R; decays like area/(pi z)."""
    z = complex(z)
    _require_exterior(D, z)
    nodes, weights = quadrature_rule(D, resolution, depth)
    return complex(-np.sum(weights / (nodes - z)) / np.pi)


# ----------------------------------------------------------------------
# moment series


def exp_transform_moments(M, z, w, tol=1e-12):
    """E(z, w) = exp(-sum M_pq / (z^(p+1) conj(w)^(q+1))), full shells
    p + q <= maxdeg; est_error is the magnitude of the last included shell
    pushed through the exponential."""
    z, w = complex(z), complex(w)
    r_est = M.radius_estimate()
    if abs(z) <= r_est or abs(w) <= r_est:
        raise ValueError("outside convergence region: |z|, |w| under the moment radius")
    zi, wi = 1.0 / z, 1.0 / np.conj(w)
    zp = zi ** np.arange(1, M.maxdeg + 2)
    wq = wi ** np.arange(1, M.maxdeg + 2)
    total = 0j
    last = 0.0
    grow = 0
    prev = np.inf
    for s in range(M.maxdeg + 1):
        shell = 0j
        for p in range(s + 1):
            q = s - p
            shell += M.entries[p, q] * zp[p] * wq[q]
        total += shell
        last = abs(shell)
        if s > 5:
            grow = grow + 1 if last > prev else 0
            if grow >= 5:
                raise ValueError("outside convergence region: shell growth detected")
        prev = last
    value = np.exp(-total)
    return TransformSample(z, w, complex(value), "moments", float(abs(value) * last))


# ----------------------------------------------------------------------
# closed forms


def disk_transform(a, R, z, w):
    """Exponential transform of the disk |zeta - a| < R, all four regions."""
    a, z, w = complex(a), complex(z), complex(w)
    num, den, k = _disk_factor(a, R, z, w)
    if abs(den) < 1e-300:
        raise ValueError("pole of closed form")
    return complex(num / den * (abs(z - w) ** 2) ** k)


def _disk_factor(a, R, z, w):
    """(num, den, k) with E_disk = num/den * |z-w|^(2k)."""
    zin = abs(z - a) < R
    win = abs(w - a) < R
    zz, ww = z - a, np.conj(w) - np.conj(a)
    if not zin and not win:
        return zz * ww - R * R, zz * ww, 0
    if zin and not win:
        return -(np.conj(z) - np.conj(w)), ww, 0
    if not zin and win:
        return z - w, zz, 0
    return 1.0 + 0j, R * R - zz * ww, 1


def circular_domain_transform(D, z, w, boundary_tol=1e-12):
    """Transform of a disk minus disjoint subdisks, as the quotient of the
    member disk transforms; z and w must each lie in a complement component
    (the unbounded exterior or one of the holes).

    The |z-w|^2 powers from interior disk branches are tracked explicitly
    so that quotients like the annulus inner-region formula stay finite on
    the diagonal."""
    if isinstance(D, Annulus):
        D = CircularDomain(Disk(0.0, D.R), (Disk(0.0, D.r),))
    z, w = complex(z), complex(w)
    for pt in (z, w):
        for disk in (D.outer, *D.holes):
            if abs(abs(pt - disk.a) - disk.R) <= boundary_tol * max(1.0, disk.R):
                raise ValueError("evaluation point on a boundary circle")
        if contains(D, pt):
            raise EvaluationRegionError("evaluation point in domain")
    num, den, k = _disk_factor(D.outer.a, D.outer.R, z, w)
    for h in D.holes:
        hn, hd, hk = _disk_factor(h.a, h.R, z, w)
        num, den, k = num * hd, den * hn, k - hk
    if abs(den) < 1e-300:
        raise ValueError("pole of closed form")
    d2 = abs(z - w) ** 2
    if k < 0:
        if d2 == 0.0:
            raise ValueError("pole of closed form")
        return complex(num / den / d2 ** (-k))
    return complex(num / den * d2**k)


def annulus_transform(r, R, z, w):
    """Annulus r < |zeta| < R: ((z conj(w) - R^2)/(z conj(w) - r^2))^eps."""
    return circular_domain_transform(Annulus(r, R), z, w)


def ellipse_transform(a, b, z, w):
    """Transform of the ellipse x^2/a^2 + y^2/b^2 < 1 through its Schwarz
    function branches S_pm, in all four regions."""
    a, b = float(a), float(b)
    z, w = complex(z), complex(w)
    kf = (a + b) / (a - b)

    def inside(p):
        return (p.real / a) ** 2 + (p.imag / b) ** 2 < 1

    zin, win = inside(z), inside(w)
    if not zin and not win:
        num = z - np.conj(schwarz_ellipse(a, b, w, "minus"))
        den = np.conj(w) - schwarz_ellipse(a, b, z, "plus")
        val = -kf * num / den
    elif not zin and win:
        den = np.conj(w) - schwarz_ellipse(a, b, z, "plus")
        val = -kf * (z - w) / den
    elif zin and not win:
        den = z - np.conj(schwarz_ellipse(a, b, w, "plus"))
        val = kf * (np.conj(z) - np.conj(w)) / den
    else:
        den = (np.conj(w) - schwarz_ellipse(a, b, z, "plus")) * (
            np.conj(w) - schwarz_ellipse(a, b, z, "minus")
        )
        val = kf * (z - w) * (np.conj(z) - np.conj(w)) / den
    if not np.isfinite(val):
        raise ValueError("pole of closed form")
    return complex(val)


def exp_transform_closed(D, z, w):
    """Closed-form transform for the domains that have one."""
    z, w = complex(z), complex(w)
    if isinstance(D, Disk):
        value = disk_transform(D.a, D.R, z, w)
    elif isinstance(D, (Annulus, CircularDomain)):
        value = circular_domain_transform(D, z, w)
    elif isinstance(D, Ellipse):
        value = ellipse_transform(D.a, D.b, z, w)
    elif isinstance(D, LemniscateSublevel) and _is_bernoulli(D):
        from .specialfn import bernoulli_exp_transform

        value = bernoulli_exp_transform(z, w)
    else:
        raise ValueError("no closed form for this domain")
    return TransformSample(z, w, value, "closed_form", 0.0)


def _is_bernoulli(D):
    f = D.f
    return f.den.degree == 0 and f.num.degree == 2 and np.all(f.num.coeffs == (-1, 0, 1))


# ----------------------------------------------------------------------
# Hermitian rational transforms and the pushforward identity


class HermitianRational:
    """Rational exponential transform phi(z, w) / psi(z, w) on one
    complement region, phi and psi Hermitian with coprime principal
    divisors."""

    __slots__ = ("num", "den", "region")

    def __init__(self, num, den, region="exterior"):
        if not isinstance(num, HermPoly2) or not isinstance(den, HermPoly2):
            raise TypeError("num and den must be Hermitian polynomials")
        pn = principal_divisor(num)
        pd = principal_divisor(den)
        if pn.degree > 0 and pd.degree > 0 and poly_gcd(pn, pd).degree > 0:
            raise ValueError("num and den share a Hermitian factor")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "region", region)

    def __call__(self, z, w):
        return self.num(z, w) / self.den(z, w)

    def rational_in_u_at(self, z0):
        """E(z0, .) as numerator/denominator polynomials in u = conj(w)."""
        return self.num.poly_in_u_at(z0), self.den.poly_in_u_at(z0)

    def rational_at_z_infinity(self):
        """Leading z-row ratio: E(infinity, .) as polynomials in u.

        Defined when the numerator and denominator have equal z-degree
        (true for any transform that is regular near infinity)."""
        if self.num.degree != self.den.degree:
            raise ValueError("transform degenerate at infinity (unequal degrees)")
        d = self.num.degree
        return ComplexPoly(self.num.coeff[d, :]), ComplexPoly(self.den.coeff[d, :])

    def __repr__(self):
        return f"HermitianRational(deg {self.num.degree}/{self.den.degree}, {self.region})"

    @classmethod
    def one(cls):
        return cls(HermPoly2([[1.0]]), HermPoly2([[1.0]]), region="everywhere")

    @classmethod
    def disk_exterior(cls, a=0.0, R=1.0):
        a = complex(a)
        base = np.array([[a * np.conj(a), -a], [-np.conj(a), 1.0]])
        num = base.copy()
        num[0, 0] -= R * R
        return cls(HermPoly2(num), HermPoly2(base))

    @classmethod
    def annulus_exterior(cls, r, R):
        return cls(
            HermPoly2([[-R * R, 0.0], [0.0, 1.0]]),
            HermPoly2([[-r * r, 0.0], [0.0, 1.0]]),
        )


def _reduced_rational(num, den, tol=1e-10):
    """RationalFn num/den with the approximate common factor divided out."""
    if num.is_zero():
        raise ValueError("divisor overlap: vanishing numerator section")
    g = poly_gcd(num, den, tol)
    if g.degree > 0:
        num, _ = divmod(num, g)
        den, _ = divmod(den, g)
    return RationalFn(num, den)


def pushforward_transform(E1, f, n, z, w):
    """E2(z, w)^n via the nested meromorphic resultant identity, where f is
    a proper n-valent rational map carrying the domain of E1 onto the
    domain of E2 and fixing infinity.

    The inner resultant pairs conj(f(eta)) - conj(w) with E1(xi, .); the
    outer one pairs f(xi) - z with the resulting function of xi, evaluated
    over the divisor of f - z (including its pole at infinity)."""
    z, w = complex(z), complex(w)
    if not f.fixes_infinity:
        raise ValueError("pushforward needs deg num > deg den (f fixes infinity)")
    if int(n) != f.degree:
        raise ValueError("n must equal the degree of f")

    abar, bbar = f.num.conj(), f.den.conj()
    fw = _reduced_rational(abar - bbar * np.conj(w), bbar)

    def h_at(xi):
        nu, de = E1.rational_in_u_at(xi)
        return meromorphic_resultant(fw, _reduced_rational(nu, de))

    f_minus_z = _reduced_rational(f.num - f.den * z, f.den)
    out = 1.0 + 0j
    for pt, order in divisor_of(f_minus_z):
        if pt == INF or np.isinf(pt.real):
            nu, de = E1.rational_at_z_infinity()
            h = meromorphic_resultant(fw, _reduced_rational(nu, de))
        else:
            h = h_at(pt)
        if h == 0:
            raise ValueError("divisor overlap in the outer resultant")
        out *= h**order
    return complex(out)


def pushforward_sample(E1, f, n, z, w):
    return TransformSample(complex(z), complex(w), pushforward_transform(E1, f, n, z, w), "pushforward", 0.0)


def pushforward_symbolic(E1, f):
    """The pushforward as a Hermitian rational function: nested polynomial
    resultants applied to numerator and denominator separately.  The
    quotient equals E2(z, w)^n up to a positive constant."""
    from .analysis import nested_resultant

    num = nested_resultant(f, E1.num)
    den = nested_resultant(f, E1.den)
    return HermitianRational(num, den, region=E1.region)


def pushforward_root(E1, f, n, z, w, steps=48, start_scale=64.0):
    """E2(z, w) itself: the n-th root of the pushforward value, branch
    chosen by continuity along a radial path from far away, where the
    transform tends to 1."""
    z, w = complex(z), complex(w)
    n = int(n)
    lam = np.linspace(start_scale, 1.0, steps)
    root = 1.0 + 0j
    for t in lam:
        val = pushforward_transform(E1, f, n, z * t, w * t)
        cands = [
            abs(val) ** (1.0 / n) * np.exp(1j * (np.angle(val) + 2 * np.pi * k) / n)
            for k in range(n)
        ]
        root = min(cands, key=lambda c: abs(c - root))
    return complex(root)
