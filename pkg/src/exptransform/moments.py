"""Complex moments M_pq = (1/pi) * integral over the domain of
z^p conj(z)^q dxdy: numerical quadrature for any domain, closed forms for
disks, circular domains and the Bernoulli/rose lemniscates, moment tables,
and the quadrature-identity residual check.

The area form used here agrees with the (-1/(2 pi i)) dz^dzbar
normalization, since dz ^ dzbar = -2i dxdy.
"""

from dataclasses import dataclass
from math import comb

import numpy as np

from .domains import (
    CircularDomain,
    Annulus,
    Disk,
    LemniscateSublevel,
    quadrature_rule,
)
from .specialfn import log_gamma


def _resolution_for(tol):
    return 800 if tol < 1e-6 else 600


def moment_quadrature(D, p, q, tol=1e-7, resolution=None, depth=6):
    """M_pq of D by the cached quadrature decomposition."""
    if p < 0 or q < 0:
        raise ValueError("moment indices must be nonnegative")
    if resolution is None:
        resolution = _resolution_for(tol)
    nodes, weights = quadrature_rule(D, resolution, depth)
    vals = weights * nodes**p * np.conj(nodes) ** q
    return complex(np.sum(vals) / np.pi)


def moment_array(D, maxdeg, resolution=600, depth=6):
    """All M_pq for p, q <= maxdeg in one pass over the quadrature nodes.

    Hermitian symmetry M_qp = conj(M_pq) holds exactly because each entry
    pair sums exactly conjugate terms.
    """
    nodes, weights = quadrature_rule(D, resolution, depth)
    powers = np.vander(nodes, maxdeg + 1, increasing=True).T  # (maxdeg+1, N)
    weighted = powers * weights
    return (weighted @ powers.conj().T) / np.pi


def bernoulli_moment(p, q):
    """Closed-form moment of the Bernoulli set |z^2 - 1| < 1.

    Zero for odd p+q; otherwise
    (1/2) Gamma((p+q)/2 + 1) / (Gamma((p+1)/2 + 1) Gamma((q+1)/2 + 1)).
    """
    p, q = int(p), int(q)
    if p < 0 or q < 0:
        raise ValueError("moment indices must be nonnegative")
    if (p + q) % 2 == 1:
        return 0.0
    return 0.5 * np.exp(
        log_gamma((p + q) / 2 + 1) - log_gamma((p + 1) / 2 + 1) - log_gamma((q + 1) / 2 + 1)
    )


def bernoulli_even_moment(k):
    """M_{2k} (= M_{2k, 0}) of the Bernoulli set: 2^(2k+1) (k!)^2 / (pi (2k+1)!)."""
    k = int(k)
    return (
        2.0 ** (2 * k + 1)
        / np.pi
        * np.exp(2 * log_gamma(k + 1) - log_gamma(2 * k + 2))
    )


def rose_moment(n, k, m, lam):
    """Closed-form moment M_{kn+lam, mn+lam} of the rose |z^n - 1| < 1:

        (1/n) Gamma(k + m + 2(1+lam)/n)
              / (Gamma(k + 1 + (1+lam)/n) Gamma(m + 1 + (1+lam)/n)).

    Indices with i - j not divisible by n have vanishing moments; use
    rose_moment_ij for the general index form.
    """
    n, k, m, lam = int(n), int(k), int(m), int(lam)
    if n < 2:
        raise ValueError("rose lemniscate needs n >= 2")
    if not 0 <= lam <= n - 1:
        raise ValueError("lambda out of range 0..n-1")
    if k < 0 or m < 0:
        raise ValueError("moment indices must be nonnegative")
    ln = (1.0 + lam) / n
    return (1.0 / n) * np.exp(
        log_gamma(k + m + 2 * ln) - log_gamma(k + 1 + ln) - log_gamma(m + 1 + ln)
    )


def rose_moment_ij(n, i, j):
    """M_ij of the rose |z^n - 1| < 1 for arbitrary indices (0 off the
    selection rule i == j mod n)."""
    n, i, j = int(n), int(i), int(j)
    if i < 0 or j < 0:
        raise ValueError("moment indices must be nonnegative")
    if (i - j) % n != 0:
        return 0.0
    lam = i % n
    return rose_moment(n, (i - lam) // n, (j - lam) // n, lam)


def disk_moment(a, R, p, q):
    """Closed-form disk moment via the binomial expansion about the center:

        M_pq = sum_i C(p,i) C(q,i) a^(p-i) conj(a)^(q-i) R^(2i+2) / (i+1).
    """
    a = complex(a)
    out = 0j
    for i in range(min(p, q) + 1):
        out += (
            comb(p, i)
            * comb(q, i)
            * a ** (p - i)
            * np.conj(a) ** (q - i)
            * R ** (2 * i + 2)
            / (i + 1)
        )
    return complex(out)


def _rose_order(f):
    """n when f is exactly z^n - 1, else None."""
    if f.den.degree != 0:
        return None
    c = f.num.coeffs
    n = len(c) - 1
    if n >= 2 and c[0] == -1 and c[-1] == 1 and np.all(c[1:-1] == 0):
        return n
    return None


@dataclass(frozen=True)
class MomentTable:
    """Dense table of M_pq, p, q <= maxdeg, Hermitian by construction."""

    maxdeg: int
    entries: np.ndarray
    source: str  # "quadrature" or "closed_form"

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=complex)
        if m.shape != (self.maxdeg + 1, self.maxdeg + 1):
            raise ValueError("entries shape must be (maxdeg+1, maxdeg+1)")
        herm = 0.5 * (m + m.conj().T)
        object.__setattr__(self, "entries", herm)
        self.entries.flags.writeable = False

    def __getitem__(self, pq):
        p, q = pq
        return self.entries[p, q]

    def radius_estimate(self):
        """Convergence-radius estimate sup |M_pq|^(1/(p+q+2)).

        For a domain inside |z| <= r every moment satisfies
        |M_pq| <= r^(p+q+2), so this is a lower bound for the r any
        moment series in 1/z needs to clear.
        """
        best = 0.0
        for p in range(self.maxdeg + 1):
            for q in range(self.maxdeg + 1):
                mag = abs(self.entries[p, q])
                if mag > 0:
                    best = max(best, mag ** (1.0 / (p + q + 2)))
        return best


def moment_table(D, maxdeg, tol=1e-7, resolution=None, depth=6):
    """Moment table of D; closed forms for disks, circular domains and
    z^n - 1 lemniscate sublevel sets, quadrature otherwise."""
    if maxdeg < 0:
        raise ValueError("maxdeg must be nonnegative")
    size = maxdeg + 1

    if isinstance(D, Disk):
        m = np.array([[disk_moment(D.a, D.R, p, q) for q in range(size)] for p in range(size)])
        return MomentTable(maxdeg, m, "closed_form")
    if isinstance(D, (Annulus, CircularDomain)):
        if isinstance(D, Annulus):
            outer, holes = Disk(0.0, D.R), (Disk(0.0, D.r),)
        else:
            outer, holes = D.outer, D.holes
        m = np.array(
            [[disk_moment(outer.a, outer.R, p, q) for q in range(size)] for p in range(size)]
        )
        for h in holes:
            m -= np.array(
                [[disk_moment(h.a, h.R, p, q) for q in range(size)] for p in range(size)]
            )
        return MomentTable(maxdeg, m, "closed_form")
    if isinstance(D, LemniscateSublevel):
        n = _rose_order(D.f)
        if n is not None:
            m = np.array(
                [[rose_moment_ij(n, p, q) for q in range(size)] for p in range(size)],
                dtype=complex,
            )
            return MomentTable(maxdeg, m, "closed_form")

    if resolution is None:
        resolution = _resolution_for(tol)
    return MomentTable(maxdeg, moment_array(D, maxdeg, resolution, depth), "quadrature")


# ----------------------------------------------------------------------
# quadrature identities


@dataclass(frozen=True)
class QuadratureData:
    """Candidate quadrature-identity data: nodes (z_k, s_k) and
    coefficients c_kj, j = 1..s_k, acting as
    sum_k sum_j c_kj h^(j-1)(z_k)."""

    nodes: tuple  # ((z_k, s_k), ...)
    coeffs: tuple  # ((c_k1, ..., c_k s_k), ...)

    def __post_init__(self):
        nodes = tuple((complex(z), int(s)) for z, s in self.nodes)
        coeffs = tuple(tuple(complex(c) for c in row) for row in self.coeffs)
        if len(nodes) != len(coeffs):
            raise ValueError("one coefficient row per node required")
        for (z, s), row in zip(nodes, coeffs):
            if s < 1:
                raise ValueError("node multiplicities must be >= 1")
            if len(row) != s:
                raise ValueError("coefficient row length must equal the node multiplicity")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def order(self):
        return sum(s for _, s in self.nodes)

    def apply(self, p, q=0):
        """Evaluate the node sum for h(z) = z^p (q unused placeholder)."""
        out = 0j
        for (z, _s), row in zip(self.nodes, self.coeffs):
            for j, c in enumerate(row, start=1):
                # (j-1)-th derivative of z^p
                if p - (j - 1) >= 0:
                    fall = 1.0
                    for t in range(j - 1):
                        fall *= p - t
                    out += c * fall * z ** (p - (j - 1))
        return out


def quadrature_identity_check(D, Q, maxdeg, tol=1e-7, resolution=None, depth=6):
    """Max residual | integral_D z^j dxdy - node sum | over j = 0..maxdeg.

    Near zero certifies the quadrature data on the monomial basis (a finite
    surrogate for all integrable analytic test functions).
    """
    table = moment_table(D, maxdeg, tol=tol, resolution=resolution, depth=depth)
    worst = 0.0
    for j in range(maxdeg + 1):
        exact = np.pi * table[j, 0]  # integral of z^j dxdy
        approx = Q.apply(j)
        worst = max(worst, abs(exact - approx))
    return worst
