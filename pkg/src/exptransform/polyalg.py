"""Complex univariate polynomials, rational functions, and bivariate
Hermitian polynomials with principal factorization.

Polynomials are dense coefficient lists over complex numbers in ascending
degree order (coeffs[k] multiplies z**k) with trailing zeros trimmed.
A Hermitian polynomial phi(z, w) = sum_ij c[i, j] * z**i * conj(w)**j is
stored as its (d+1) x (d+1) coefficient matrix, which must equal its own
conjugate transpose.

Everything here is immutable after construction and all operations are
pure functions, so the module is safe to use from multiple threads.
"""

import numpy as np
from numpy.polynomial import polynomial as npoly

# Tolerance defaults.  The gcd cutoff is configuration rather than a law of
# nature: floating coefficients never share exact roots, so "common factor"
# always means "common factor up to this relative remainder norm".
GCD_TOL = 1e-10
HERM_ASYM_TOL = 1e-9
ROOT_CLUSTER_TOL = 1e-8


class ComplexPoly:
    """Dense complex polynomial, ascending coefficients, trailing zeros trimmed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = np.atleast_1d(np.asarray(coeffs, dtype=complex)).ravel()
        n = len(c)
        while n > 0 and c[n - 1] == 0:
            n -= 1
        object.__setattr__(self, "coeffs", c[:n].copy())
        self.coeffs.flags.writeable = False

    # -- basic queries -------------------------------------------------

    @property
    def degree(self):
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self):
        return len(self.coeffs) == 0

    @property
    def leading(self):
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __call__(self, z):
        if self.is_zero():
            return np.zeros_like(np.asarray(z, dtype=complex)) + 0j if np.ndim(z) else 0j
        return npoly.polyval(np.asarray(z, dtype=complex), self.coeffs)

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        other = _as_poly(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        return ComplexPoly(npoly.polyadd(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_poly(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return ComplexPoly(-other.coeffs)
        return ComplexPoly(npoly.polysub(self.coeffs, other.coeffs))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __neg__(self):
        return ComplexPoly(-self.coeffs) if not self.is_zero() else self

    def __mul__(self, other):
        if np.isscalar(other):
            if other == 0 or self.is_zero():
                return ComplexPoly([])
            return ComplexPoly(self.coeffs * other)
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return ComplexPoly([])
        return ComplexPoly(npoly.polymul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, k):
        out = ComplexPoly([1.0])
        base = self
        k = int(k)
        while k > 0:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other):
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero() or self.degree < other.degree:
            return ComplexPoly([]), self
        q, r = npoly.polydiv(self.coeffs, other.coeffs)
        return ComplexPoly(q), ComplexPoly(r)

    def derivative(self):
        if self.degree <= 0:
            return ComplexPoly([])
        return ComplexPoly(npoly.polyder(self.coeffs))

    def monic(self):
        if self.is_zero():
            raise ValueError("cannot normalize the zero polynomial")
        return ComplexPoly(self.coeffs / self.leading)

    def conj(self):
        """Polynomial with conjugated coefficients, i.e. conj(p(conj(z)))."""
        return ComplexPoly(np.conj(self.coeffs))

    def trim(self, tol):
        """Drop leading coefficients below tol relative to the largest one."""
        if self.is_zero():
            return self
        scale = np.abs(self.coeffs).max()
        c = self.coeffs.copy()
        n = len(c)
        while n > 0 and abs(c[n - 1]) <= tol * scale:
            n -= 1
        return ComplexPoly(c[:n])

    # -- interop -------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, ComplexPoly):
            return NotImplemented
        return self.coeffs.shape == other.coeffs.shape and bool(
            np.all(self.coeffs == other.coeffs)
        )

    def __hash__(self):
        return hash(self.coeffs.tobytes())

    def __repr__(self):
        if self.is_zero():
            return "ComplexPoly(0)"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c != 0:
                terms.append(f"({c:.6g})*z^{k}" if k else f"({c:.6g})")
        return "ComplexPoly(" + " + ".join(terms) + ")"

    def to_json(self):
        """JSON form: [[re, im], ...] ascending degree."""
        return [[float(c.real), float(c.imag)] for c in self.coeffs]

    @classmethod
    def from_json(cls, data):
        return cls([complex(re, im) for re, im in data])

    @classmethod
    def from_roots(cls, roots, leading=1.0):
        out = cls([leading])
        for r in roots:
            out = out * cls([-r, 1.0])
        return out


def _as_poly(p):
    if isinstance(p, ComplexPoly):
        return p
    if np.isscalar(p):
        return ComplexPoly([p])
    return ComplexPoly(p)


def poly_arith(p, q, op):
    """Exact coefficient arithmetic; op is one of 'add', 'sub', 'mul'."""
    p, q = _as_poly(p), _as_poly(q)
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown op {op!r}")


# ----------------------------------------------------------------------
# root finding


def poly_roots(p, cluster_tol=ROOT_CLUSTER_TOL, maxiter=400):
    """All roots of p with multiplicities, as a list of (root, mult) pairs.

    Uses Aberth-Ehrlich simultaneous iteration started from a perturbed
    circle (fixed internal seed, so results are reproducible), then clusters
    nearby approximations to assign multiplicities.  The requested
    cluster_tol is widened to ~eps**(1/2) scale because the approximations
    to an m-fold root spread like eps**(1/m); the cluster centroid is then
    polished with Newton steps on the (m-1)-th derivative.

    Roots are returned sorted lexicographically by (re, im).
    """
    p = _as_poly(p)
    if p.is_zero():
        raise ValueError("undefined roots: zero polynomial")
    if p.degree < 1:
        raise ValueError("undefined roots: constant polynomial")

    # exact zero-root block: leading zeros in the ascending coefficient list
    c = p.coeffs
    k0 = 0
    while c[k0] == 0:
        k0 += 1
    c = c[k0:]
    n = len(c) - 1

    roots = _aberth(c, maxiter) if n >= 1 else np.zeros(0, dtype=complex)

    scale = 1.0 + (np.abs(roots).max() if len(roots) else 0.0)
    tol = max(cluster_tol, 64.0 * np.sqrt(np.finfo(float).eps)) * scale
    clusters = _cluster(roots, tol)

    out = []
    for pts in clusters:
        m = len(pts)
        center = np.mean(pts)
        if m > 1:
            center = _polish_multiple(c, center, m)
        out.append((complex(center), m))
    if k0 > 0:
        out.append((0j, k0))
    out.sort(key=lambda rm: (rm[0].real, rm[0].imag))
    return out


def _aberth(c, maxiter):
    """Aberth-Ehrlich iteration for the roots of sum c[k] z^k, c[-1] != 0."""
    n = len(c) - 1
    dc = npoly.polyder(c)
    rng = np.random.default_rng(0x5EED)
    radius = 1.0 + np.abs(c[:-1] / c[-1]).max()  # Cauchy bound
    angles = 2 * np.pi * (np.arange(n) + 0.35) / n
    z = radius * np.exp(1j * angles) * (1 + 0.05 * rng.standard_normal(n))

    eps_stop = 1e-14
    for _ in range(maxiter):
        pv = npoly.polyval(z, c)
        dv = npoly.polyval(z, dc)
        # Newton ratio with a nudge away from critical points
        bad = dv == 0
        if np.any(bad):
            z = np.where(bad, z * (1 + 1e-8 + 1e-8j), z)
            pv = npoly.polyval(z, c)
            dv = npoly.polyval(z, dc)
        w = pv / dv
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        s = inv.sum(axis=1)
        denom = 1.0 - w * s
        denom = np.where(denom == 0, 1e-30, denom)
        step = w / denom
        z = z - step
        if np.abs(step).max() <= eps_stop * (1.0 + np.abs(z).max()):
            break
    return z


def _cluster(points, tol):
    """Single-linkage clustering of complex points with distance tol."""
    pts = list(points)
    m = len(pts)
    parent = list(range(m))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(m):
        for j in range(i + 1, m):
            if abs(pts[i] - pts[j]) <= tol:
                parent[find(i)] = find(j)
    groups = {}
    for i in range(m):
        groups.setdefault(find(i), []).append(pts[i])
    return list(groups.values())


def _polish_multiple(c, x, m):
    """Newton steps on the (m-1)-th derivative near an m-fold root."""
    d = np.asarray(c, dtype=complex)
    for _ in range(m - 1):
        d = npoly.polyder(d)
    dd = npoly.polyder(d)
    for _ in range(8):
        fv = npoly.polyval(x, d)
        gv = npoly.polyval(x, dd)
        if gv == 0:
            break
        step = fv / gv
        x = x - step
        if abs(step) <= 1e-15 * (1 + abs(x)):
            break
    return x


def poly_gcd(p, q, tol=GCD_TOL):
    """Approximate monic gcd via the Euclidean remainder sequence.

    Remainders with sup-norm below tol (relative to sup-norm-normalized
    inputs) are treated as zero.  gcd(p, 0) = monic(p).
    """
    p, q = _as_poly(p), _as_poly(q)
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd undefined for two zero polynomials")
    a, b = p, q
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        a_n = ComplexPoly(a.coeffs / np.abs(a.coeffs).max())
        b_n = ComplexPoly(b.coeffs / np.abs(b.coeffs).max())
        _, r = divmod(a_n, b_n)
        if r.is_zero() or np.abs(r.coeffs).max() <= tol:
            return b_n.monic()
        a, b = b_n, r.trim(tol)
    return a.monic()


def poly_gcd_many(polys, tol=GCD_TOL):
    """gcd of a sequence of polynomials (zero entries are skipped)."""
    acc = None
    for p in polys:
        p = _as_poly(p)
        if p.is_zero():
            continue
        acc = p if acc is None else poly_gcd(acc, p, tol)
        if acc.degree == 0:
            return ComplexPoly([1.0])
    if acc is None:
        raise ValueError("gcd undefined for all-zero family")
    return acc.monic()


# ----------------------------------------------------------------------
# rational functions


class RationalFn:
    """Rational function num/den with den monic and num, den coprime.

    Whether deg num > deg den (the function fixes infinity) is not imposed
    here; consumers that rely on that normalization check fixes_infinity.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=(1.0,), gcd_tol=GCD_TOL):
        num = _as_poly(num)
        den = _as_poly(den)
        if den.is_zero():
            raise ValueError("denominator is zero")
        if num.is_zero():
            raise ValueError("numerator is zero")
        lead = den.leading
        object.__setattr__(self, "num", ComplexPoly(num.coeffs / lead))
        object.__setattr__(self, "den", den.monic())
        if self.den.degree > 0:
            g = poly_gcd(self.num, self.den, gcd_tol)
            if g.degree > 0:
                raise ValueError("num and den share a root (not coprime)")

    @property
    def degree(self):
        """deg f = max(deg num, deg den)."""
        return max(self.num.degree, self.den.degree)

    @property
    def fixes_infinity(self):
        return self.num.degree > self.den.degree

    def __call__(self, z):
        return self.num(z) / self.den(z)

    def value_at_infinity(self):
        """Limit at infinity: inf, 0, or the ratio of leading coefficients."""
        dn, dd = self.num.degree, self.den.degree
        if dn > dd:
            return complex(np.inf, 0)
        if dn < dd:
            return 0j
        return self.num.leading / self.den.leading

    def reciprocal(self):
        return RationalFn(self.den, self.num)

    def __mul__(self, other):
        if isinstance(other, RationalFn):
            return RationalFn(self.num * other.num, self.den * other.den)
        return RationalFn(self.num * other, self.den)

    def __eq__(self, other):
        if not isinstance(other, RationalFn):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFn({self.num!r} / {self.den!r})"

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data):
        return cls(ComplexPoly.from_json(data["num"]), ComplexPoly.from_json(data["den"]))


# ----------------------------------------------------------------------
# Hermitian bivariate polynomials


class HermPoly2:
    """Hermitian polynomial phi(z, w) = sum c[i, j] z^i conj(w)^j.

    The coefficient matrix must satisfy c[j, i] == conj(c[i, j]).  The
    constructor symmetrizes its input as (M + M^H)/2 and rejects it when
    the asymmetry norm exceeds asym_tol (relative to the matrix norm).
    The stored matrix is square with its outer row/column not identically
    zero, so shape-1 gives the true bidegree.
    """

    __slots__ = ("coeff", "asym")

    def __init__(self, coeff, asym_tol=HERM_ASYM_TOL):
        m = np.atleast_2d(np.asarray(coeff, dtype=complex))
        if m.shape[0] != m.shape[1]:
            k = max(m.shape)
            sq = np.zeros((k, k), dtype=complex)
            sq[: m.shape[0], : m.shape[1]] = m
            m = sq
        herm = 0.5 * (m + m.conj().T)
        scale = max(np.abs(m).max(), 1e-300)
        asym = np.abs(m - m.conj().T).max() / scale
        if asym > asym_tol:
            raise ValueError(f"coefficient matrix is not Hermitian (asymmetry {asym:.3g})")
        # trim zero outer rows/columns (they come in conjugate pairs)
        d = herm.shape[0] - 1
        while d > 0 and np.all(herm[d, :] == 0) and np.all(herm[:, d] == 0):
            d -= 1
        object.__setattr__(self, "coeff", herm[: d + 1, : d + 1].copy())
        object.__setattr__(self, "asym", float(asym))
        self.coeff.flags.writeable = False

    @property
    def degree(self):
        """Common bidegree d (matrix is (d+1) x (d+1))."""
        return self.coeff.shape[0] - 1

    def is_zero(self):
        return bool(np.all(self.coeff == 0))

    def __call__(self, z, w):
        """Evaluate at (z, w); w enters through its conjugate."""
        return npoly.polyval2d(np.asarray(z, dtype=complex), np.conj(w), self.coeff)

    def eval_zu(self, z, u):
        """Evaluate with the second slot given directly as u = conj(w)."""
        return npoly.polyval2d(np.asarray(z, dtype=complex), np.asarray(u, dtype=complex), self.coeff)

    def wbar_coeff_polys(self):
        """Columns as z-polynomials: phi(z, w) = sum_j col[j](z) conj(w)^j."""
        return [ComplexPoly(self.coeff[:, j]) for j in range(self.coeff.shape[1])]

    def poly_in_u_at(self, z0):
        """phi(z0, .) as a polynomial in u = conj(w)."""
        vals = npoly.polyval(z0, self.coeff)  # evaluates along axis 0
        return ComplexPoly(vals)

    def __add__(self, other):
        other = other if isinstance(other, HermPoly2) else HermPoly2([[other]])
        n = max(self.coeff.shape[0], other.coeff.shape[0])
        out = np.zeros((n, n), dtype=complex)
        out[: self.coeff.shape[0], : self.coeff.shape[1]] += self.coeff
        out[: other.coeff.shape[0], : other.coeff.shape[1]] += other.coeff
        return HermPoly2(out, asym_tol=np.inf)

    def __mul__(self, other):
        if np.isscalar(other):
            if np.imag(other) != 0:
                raise ValueError("scaling a Hermitian polynomial needs a real factor")
            return HermPoly2(self.coeff * other, asym_tol=np.inf)
        a, b = self.coeff, other.coeff
        out = np.zeros((a.shape[0] + b.shape[0] - 1, a.shape[1] + b.shape[1] - 1), dtype=complex)
        for i in range(a.shape[0]):
            for j in range(a.shape[1]):
                if a[i, j] != 0:
                    out[i : i + b.shape[0], j : j + b.shape[1]] += a[i, j] * b
        return HermPoly2(out, asym_tol=np.inf)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, HermPoly2):
            return NotImplemented
        return self.coeff.shape == other.coeff.shape and bool(np.all(self.coeff == other.coeff))

    def __hash__(self):
        return hash(self.coeff.tobytes())

    def __repr__(self):
        return f"HermPoly2(degree={self.degree})"

    def to_json(self):
        """JSON form: {"d": d, "coeff": [[[re, im], ...], ...]} row-major."""
        return {
            "d": self.degree,
            "coeff": [[[float(c.real), float(c.imag)] for c in row] for row in self.coeff],
        }

    @classmethod
    def from_json(cls, data):
        m = [[complex(re, im) for re, im in row] for row in data["coeff"]]
        return cls(m)

    @classmethod
    def from_sesquilinear(cls, a, b=None):
        """Build a(z) * conj(b(w)) + conj(a(w)) * b(z) style products.

        With b omitted returns a(z) * conj(a(w)), which is always Hermitian.
        """
        a = _as_poly(a)
        if b is None:
            c = np.outer(a.coeffs, np.conj(a.coeffs))
            return cls(c)
        b = _as_poly(b)
        c = np.outer(a.coeffs, np.conj(b.coeffs))
        return cls(c + c.conj().T, asym_tol=np.inf)


def hermitian_from_zw_product(pz, qw):
    """General product p(z) * conj(q(w)) as a raw (possibly non-Hermitian) matrix."""
    pz, qw = _as_poly(pz), _as_poly(qw)
    return np.outer(pz.coeffs, np.conj(qw.coeffs))


def principal_divisor(phi, tol=GCD_TOL):
    """Monic gcd in z of the coefficient polynomials of phi; 1 iff primitive."""
    if phi.is_zero():
        raise ValueError("principal divisor undefined for the zero polynomial")
    return poly_gcd_many(phi.wbar_coeff_polys(), tol)


def is_primitive(phi, tol=GCD_TOL):
    """True iff no z0 kills phi(z0, w) identically, i.e. principal divisor is 1."""
    return principal_divisor(phi, tol).degree == 0


def principal_factorization(phi, tol=GCD_TOL, residual_tol=1e-8):
    """Split phi = a(z) * conj(a(w)) * phi0 with a monic and phi0 primitive.

    Raises ValueError("factorization failed") when the divisions leave a
    residual above residual_tol relative to the coefficient scale.
    """
    a = principal_divisor(phi, tol)
    if a.degree == 0:
        return ComplexPoly([1.0]), phi

    scale = np.abs(phi.coeff).max()
    d = phi.degree
    da = a.degree
    # divide each conj(w)-column by a(z)
    mid = np.zeros((d - da + 1, d + 1), dtype=complex)
    for j in range(d + 1):
        col = ComplexPoly(phi.coeff[:, j])
        if col.is_zero():
            continue
        q, r = divmod(col, a)
        if not r.is_zero() and np.abs(r.coeffs).max() > residual_tol * scale:
            raise ValueError("factorization failed: column residual too large")
        mid[: len(q.coeffs), j] = q.coeffs
    # divide each z-row by conj(a)(u)
    abar = a.conj()
    out = np.zeros((d - da + 1, d - da + 1), dtype=complex)
    for i in range(d - da + 1):
        row = ComplexPoly(mid[i, :])
        if row.is_zero():
            continue
        q, r = divmod(row, abar)
        if not r.is_zero() and np.abs(r.coeffs).max() > residual_tol * scale:
            raise ValueError("factorization failed: row residual too large")
        out[i, : len(q.coeffs)] = q.coeffs

    phi0 = HermPoly2(out, asym_tol=1e-6)
    # round-trip check
    recon = HermPoly2.from_sesquilinear(a) * phi0
    nr, nc = recon.coeff.shape[0], phi.coeff.shape[0]
    n = max(nr, nc)
    ra = np.zeros((n, n), dtype=complex)
    rb = np.zeros((n, n), dtype=complex)
    ra[:nr, :nr] = recon.coeff
    rb[:nc, :nc] = phi.coeff
    if np.abs(ra - rb).max() > residual_tol * scale:
        raise ValueError("factorization failed: reconstruction residual too large")
    return a, phi0
