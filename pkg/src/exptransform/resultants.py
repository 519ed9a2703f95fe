"""Polynomial resultants (Sylvester determinant and Poisson product form)
and the meromorphic resultant of rational functions on the Riemann sphere.

The divisor of a rational function records its zeros and poles, including
the point at infinity; the meromorphic resultant of f and g is the product
of g over the divisor of f.  It is evaluated through four polynomial
resultants plus order-at-infinity prefactors, with the convention that a
zeroth power is 1 even when the base would be 0 or infinite.
"""

import numpy as np

from .polyalg import ComplexPoly, RationalFn, _as_poly, poly_roots

INF = complex(np.inf, 0.0)

# |Res| below ZERO_RES_TOL times the Hadamard-style coefficient scale is
# treated as a vanishing resultant (shared root).
ZERO_RES_TOL = 1e-9


def is_infinite(point):
    return bool(np.isinf(np.real(point)) or np.isinf(np.imag(point)))


class Divisor:
    """Finite list of (point-or-infinity, signed order) with distinct points."""

    __slots__ = ("entries",)

    def __init__(self, entries, merge_tol=1e-9):
        merged = []
        for pt, order in entries:
            order = int(order)
            if order == 0:
                continue
            pt = INF if is_infinite(pt) else complex(pt)
            for k, (q, o) in enumerate(merged):
                same = (is_infinite(q) and is_infinite(pt)) or (
                    not is_infinite(q) and not is_infinite(pt) and abs(q - pt) <= merge_tol * (1 + abs(q))
                )
                if same:
                    merged[k] = (q, o + order)
                    break
            else:
                merged.append((pt, order))
        object.__setattr__(self, "entries", tuple((p, o) for p, o in merged if o != 0))

    def total_order(self):
        return sum(o for _, o in self.entries)

    def points(self):
        return [p for p, _ in self.entries]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __repr__(self):
        parts = ", ".join(
            ("inf" if is_infinite(p) else f"{p:.6g}") + f":{o:+d}" for p, o in self.entries
        )
        return f"Divisor({parts})"


# ----------------------------------------------------------------------
# polynomial resultants


def _sylvester_det(a, n, b, m):
    """det of the (n+m) Sylvester matrix for formal degrees n, m.

    a, b are ascending coefficient arrays, padded/truncated to the formal
    degrees; entries beyond the stored length count as zero.  Determinant
    by LAPACK partial-pivot LU (degrees here stay small).
    """
    if n == 0 and m == 0:
        return 1.0 + 0j
    aa = np.zeros(n + 1, dtype=complex)
    bb = np.zeros(m + 1, dtype=complex)
    aa[: min(len(a), n + 1)] = a[: n + 1]
    bb[: min(len(b), m + 1)] = b[: m + 1]
    size = n + m
    s = np.zeros((size, size), dtype=complex)
    arow = aa[::-1]  # descending: A_n ... A_0
    brow = bb[::-1]
    for k in range(m):
        s[k, k : k + n + 1] = arow
    for k in range(n):
        s[m + k, k : k + m + 1] = brow
    return complex(np.linalg.det(s))


def resultant_scale(A, B, n=None, m=None):
    """Hadamard-style magnitude scale ||A||^m * ||B||^n for zero tests."""
    A, B = _as_poly(A), _as_poly(B)
    n = A.degree if n is None else n
    m = B.degree if m is None else m
    na = np.linalg.norm(A.coeffs) if not A.is_zero() else 0.0
    nb = np.linalg.norm(B.coeffs) if not B.is_zero() else 0.0
    return max(na, 1e-300) ** m * max(nb, 1e-300) ** n


def sylvester_resultant(A, B):
    """Resultant of A and B as the Sylvester matrix determinant.

    Degrees are the stored (trimmed) degrees.  Two constants give 1 by the
    empty-determinant convention.
    """
    A, B = _as_poly(A), _as_poly(B)
    if A.is_zero() or B.is_zero():
        raise ValueError("resultant requires nonzero polynomials")
    return _sylvester_det(A.coeffs, A.degree, B.coeffs, B.degree)


def poisson_resultant(A, B):
    """Resultant via the product formula lead(A)^deg(B) * prod B(roots of A)."""
    A, B = _as_poly(A), _as_poly(B)
    if A.is_zero() or B.is_zero():
        raise ValueError("resultant requires nonzero polynomials")
    n, m = A.degree, B.degree
    if n == 0:
        return complex(A.coeffs[0] ** m)
    out = complex(A.leading**m)
    if m == 0:
        return out * complex(B.coeffs[0] ** n)
    for root, mult in poly_roots(A):
        out *= complex(B(root)) ** mult
    return out


def resultant_is_zero(value, A, B, tol=ZERO_RES_TOL):
    """Declare a vanishing resultant relative to the coefficient scale."""
    return abs(value) <= tol * resultant_scale(A, B)


# ----------------------------------------------------------------------
# orders and divisors


def _mult_at(p, a, tol=1e-8):
    """Multiplicity of a as root of p, by repeated deflation."""
    p = _as_poly(p)
    if p.is_zero():
        raise ValueError("multiplicity undefined for the zero polynomial")
    mult = 0
    linear = ComplexPoly([-a, 1.0])
    while p.degree >= 1:
        scale = float(np.sum(np.abs(p.coeffs) * np.abs(a) ** np.arange(len(p.coeffs))))
        if abs(p(a)) > tol * max(scale, 1e-300):
            break
        q, _ = divmod(p, linear)
        p = q
        mult += 1
    return mult


def ord_at(f, a, tol=1e-8):
    """Order of f at a: positive for zeros, negative for poles, else 0.

    At infinity the local variable is 1/z, so the order is
    deg(den) - deg(num).
    """
    if is_infinite(a):
        return f.den.degree - f.num.degree
    return _mult_at(f.num, a, tol) - _mult_at(f.den, a, tol)


def divisor_of(f):
    """Divisor of a nonconstant rational function; orders sum to zero."""
    if f.degree < 1:
        raise ValueError("divisor undefined for a constant function")
    entries = []
    if f.num.degree >= 1:
        entries += [(r, m) for r, m in poly_roots(f.num)]
    if f.den.degree >= 1:
        entries += [(r, -m) for r, m in poly_roots(f.den)]
    inf_order = f.den.degree - f.num.degree
    if inf_order != 0:
        entries.append((INF, inf_order))
    div = Divisor(entries)
    assert div.total_order() == 0
    return div


# ----------------------------------------------------------------------
# meromorphic resultant


def meromorphic_resultant(f, g, tol=ZERO_RES_TOL):
    """Res*(f, g): the product of g over the divisor of f.

    Computed from the four polynomial resultants of the num/den pairs,
    times f(inf)^ord_inf(g) * g(inf)^ord_inf(f); a factor with zero
    exponent is 1 regardless of its base.  Raises when the divisors of f
    and g share a point (including infinity).
    """
    a1, a2 = f.num, f.den
    b1, b2 = g.num, g.den

    oif = f.den.degree - f.num.degree  # ord of f at infinity
    oig = g.den.degree - g.num.degree
    if oif != 0 and oig != 0:
        raise ValueError("resultant undefined (common divisor point)")

    r11 = sylvester_resultant(a1, b1)
    r22 = sylvester_resultant(a2, b2)
    r12 = sylvester_resultant(a1, b2)
    r21 = sylvester_resultant(a2, b1)
    for val, p, q in ((r11, a1, b1), (r22, a2, b2), (r12, a1, b2), (r21, a2, b1)):
        if resultant_is_zero(val, p, q, tol):
            raise ValueError("resultant undefined (common divisor point)")

    out = r11 * r22 / (r12 * r21)
    if oig != 0:
        fv = f.value_at_infinity()
        out *= complex(fv) ** oig
    if oif != 0:
        gv = g.value_at_infinity()
        out *= complex(gv) ** oif
    return complex(out)


def meromorphic_resultant_divisor(div, g):
    """Multiplicative action prod g(a_i)^n_i of g on an explicit divisor.

    Infinite points use g's limit there; a zero or infinite value raised
    to a nonzero order signals a shared divisor point and raises.
    """
    out = 1.0 + 0j
    for pt, order in div:
        val = g.value_at_infinity() if is_infinite(pt) else complex(g(pt))
        if order != 0 and (val == 0 or np.isinf(val.real) or np.isinf(val.imag) or np.isnan(val.real)):
            raise ValueError("resultant undefined (common divisor point)")
        out *= val**order
    return out
