"""Structure analysis of Hermitian rational transforms: the regularity
conditions any exterior exponential transform must satisfy, the separable
(quadrature-domain) denominator test, nested polynomial resultants against
a rational map, and a least-squares rationality probe that exhibits the
rational / non-rational dichotomy numerically.
"""

from dataclasses import dataclass

import numpy as np

from .polyalg import ComplexPoly, HermPoly2, principal_factorization
from .resultants import _sylvester_det
from .transforms import HermitianRational, TransformSample


@dataclass(frozen=True)
class RegularityReport:
    """Outcome of the three regularity conditions.

    degrees: (deg_z num, deg_wbar num, deg_z den, deg_wbar den)
    condition_iii_witnesses: tuples (z0, j, k, passed) with j, k the first
    nonvanishing coefficient indices of denominator and numerator at z0.
    """

    degrees: tuple
    leading_match: bool
    condition_iii_witnesses: tuple
    verdict: bool


def regular_rational_check(E, probes, tol=1e-8):
    """Check the degree, leading-coefficient, and degeneracy-matching
    conditions of a Hermitian rational transform at the given probe points
    (which should lie in the region where E represents a transform)."""
    num, den = E.num, E.den
    # Hermitian symmetry forces deg_z == deg_wbar on each of num and den
    degrees = (num.degree, num.degree, den.degree, den.degree)
    degrees_ok = num.degree == den.degree
    d = num.degree

    leading_match = False
    if degrees_ok:
        lead_n = num.coeff[:, d]
        lead_d = den.coeff[:, d]
        scale = max(np.abs(lead_n).max(), np.abs(lead_d).max(), 1e-300)
        leading_match = bool(np.abs(lead_n - lead_d).max() <= tol * scale)

    witnesses = []
    all_pass = True
    for z0 in probes:
        z0 = complex(z0)
        nv = num.poly_in_u_at(z0).coeffs
        dv = den.poly_in_u_at(z0).coeffs
        scale = max(
            float(np.sum(np.abs(num.coeff) * np.abs(z0) ** np.arange(d + 1)[:, None])),
            float(np.sum(np.abs(den.coeff) * np.abs(z0) ** np.arange(den.degree + 1)[:, None])),
            1e-300,
        )
        k = _top_nonzero(nv, tol * scale)
        j = _top_nonzero(dv, tol * scale)
        if k is None or j is None:
            passed = False
        else:
            passed = j == k and abs(nv[k] - dv[j]) <= 10 * tol * scale
        witnesses.append((z0, j, k, passed))
        all_pass &= passed

    return RegularityReport(
        degrees=degrees,
        leading_match=leading_match,
        condition_iii_witnesses=tuple(witnesses),
        verdict=bool(degrees_ok and leading_match and all_pass),
    )


def _top_nonzero(coeffs, cutoff):
    for k in range(len(coeffs) - 1, -1, -1):
        if abs(coeffs[k]) > cutoff:
            return k
    return None


def separability_test(E, tol=1e-8):
    """Does the denominator split as chi(z) * conj(chi(w))?

    Equivalent to its Hermitian coefficient matrix having rank one, decided
    spectrally; returns (True, monic chi) or (False, None)."""
    m = E.den.coeff
    if m.shape == (1, 1):
        return True, ComplexPoly([1.0])
    evals, evecs = np.linalg.eigh(m)
    mags = np.abs(evals)
    top = int(np.argmax(mags))
    if mags[top] <= 0:
        return False, None
    rest = np.delete(mags, top).max()
    if rest > tol * mags[top]:
        return False, None
    c = np.sqrt(mags[top]) * evecs[:, top]
    chi = ComplexPoly(c)
    return True, chi.monic()


def fz_polynomial(f, z):
    """The pencil member A(zeta) - z * B(zeta); its degree equals deg f for
    every z because deg A > deg B."""
    if not f.fixes_infinity:
        raise ValueError("pencil needs deg num > deg den")
    return f.num - f.den * complex(z)


# ----------------------------------------------------------------------
# nested resultants
#
# Res_xi(f_z(xi), Res_ubar(conj(f_w)(ubar), phi(xi, ubar))) is a Hermitian
# polynomial in (z, conj(w)) of bidegree at most n*d, n = deg f,
# d = deg phi.  Rather than computing determinants over a bivariate
# polynomial ring, evaluate the whole expression numerically on tensor
# roots-of-unity grids (fixed formal degrees keep the determinant a
# polynomial function of the parameters) and recover the coefficient
# matrix by inverse FFT.


def nested_resultant(f, phi, herm_tol=1e-9, trim_tol=1e-11):
    if not f.fixes_infinity:
        raise ValueError("nested resultant needs deg num > deg den")
    n = f.degree
    d = phi.degree
    a = f.num.coeffs
    b = np.zeros(n + 1, dtype=complex)
    b[: len(f.den.coeffs)] = f.den.coeffs
    abar, bbar = np.conj(a), np.conj(b)

    big = n * d
    kz = big + 1
    ku = big + 1
    kxi = big + 1
    z_nodes = np.exp(2j * np.pi * np.arange(kz) / kz)
    u_nodes = np.exp(2j * np.pi * np.arange(ku) / ku)
    xi_nodes = np.exp(2j * np.pi * np.arange(kxi) / kxi)

    # phi(xi, .) coefficient arrays for every xi node: (kxi, d+1)
    phi_at_xi = np.array(
        [[np.polynomial.polynomial.polyval(xi, phi.coeff[:, j]) for j in range(d + 1)] for xi in xi_nodes]
    )

    values = np.empty((kz, ku), dtype=complex)
    for jw, u in enumerate(u_nodes):
        fw = abar - u * bbar  # formal degree n in ubar
        inner_vals = np.array(
            [_sylvester_det(fw, n, phi_at_xi[i], d) for i in range(kxi)]
        )
        # coefficient recovery from values on roots of unity is the forward
        # DFT divided by the node count
        inner_coeffs = np.fft.fft(inner_vals) / kxi  # polynomial in xi
        for lz, zv in enumerate(z_nodes):
            fz = a - zv * b
            values[lz, jw] = _sylvester_det(fz, n, inner_coeffs, big)

    coeff = np.fft.fft2(values) / (kz * ku)
    scale = np.abs(coeff).max()
    coeff[np.abs(coeff) < trim_tol * max(scale, 1e-300)] = 0.0

    asym = np.abs(coeff - coeff.conj().T).max() / max(scale, 1e-300)
    if asym > herm_tol:
        raise ValueError(f"nested resultant lost Hermitian symmetry ({asym:.3g})")
    return HermPoly2(coeff, asym_tol=herm_tol)


def nested_resultant_factors(f, phi):
    """Principal factorization T(z) conj(T(w)) theta(z, w) of the nested
    resultant; returns (T monic, theta primitive, full result)."""
    full = nested_resultant(f, phi)
    T, theta = principal_factorization(full)
    return T, theta, full


# ----------------------------------------------------------------------
# rationality probe


@dataclass(frozen=True)
class FitReport:
    """Least-squares fit of a bidegree-d Hermitian rational model to
    transform samples; residual is the RMS of the scale-normalized
    equations phi - E psi = 0."""

    d: int
    residual: float
    phi_coeff: np.ndarray
    psi_coeff: np.ndarray


def _herm_param_columns(zs, ws, d, factor):
    """Real-parametrized columns for a free Hermitian (d x d) lower block
    entering as factor * sum block_ij z^i wbar^j.

    Returns (columns, assemblers): complex design columns per real
    parameter and functions scattering the solved parameters into the
    block matrix."""
    cols = []
    where = []
    zp = zs[:, None] ** np.arange(d)
    wq = np.conj(ws)[:, None] ** np.arange(d)
    for i in range(d):
        cols.append(factor * zp[:, i] * wq[:, i])
        where.append(("diag", i))
    for i in range(d):
        for j in range(i + 1, d):
            A = factor * zp[:, i] * wq[:, j]
            B = factor * zp[:, j] * wq[:, i]
            cols.append(A + B)
            where.append(("re", i, j))
            cols.append(1j * (A - B))
            where.append(("im", i, j))
    return cols, where


def rationality_probe(samples, dmax, rcond=None):
    """Fit Hermitian rational models of bidegree d = 1..dmax to transform
    samples and report the residual per degree.

    The model ties numerator and denominator to a shared monic leading
    coefficient polynomial chi of degree d (which pins the scale and rules
    out the zero fit); everything else is linear least squares over real
    parameters.  For samples of a genuinely rational transform of bidegree
    d0 the residual collapses to machine level at d >= d0; for a
    non-rational transform it stalls."""
    pts = [
        (s.z, s.w, s.value) if isinstance(s, TransformSample) else (s[0], s[1], s[2])
        for s in samples
    ]
    zs = np.array([p[0] for p in pts], dtype=complex)
    ws = np.array([p[1] for p in pts], dtype=complex)
    es = np.array([p[2] for p in pts], dtype=complex)
    ns = len(pts)

    reports = []
    for d in range(1, int(dmax) + 1):
        nparams = 2 * d + 2 * d * d
        if 2 * ns < nparams or ns < (d + 1) ** 2:
            raise ValueError("degenerate sample set: not enough samples")
        # the sample geometry must separate all bidegree-d monomials; an
        # exactly-fitting model may still leave the normal equations
        # rank-deficient (non-unique representation), which is benign and
        # handled by the minimum-norm solve below
        monos = np.stack(
            [zs**i * np.conj(ws) ** j for i in range(d + 1) for j in range(d + 1)], axis=1
        )
        if np.linalg.matrix_rank(monos) < (d + 1) ** 2:
            raise ValueError("degenerate sample set")

        wbar = np.conj(ws)
        norm = (np.abs(zs) ** d) * (np.abs(ws) ** d) * (1.0 + np.abs(es))
        one_minus_e = (1.0 - es) / norm

        cols = []
        # chi coefficients chi_i, i < d (complex): appear in both phi and psi
        for i in range(d):
            A = one_minus_e * zs**i * wbar**d
            B = one_minus_e * zs**d * wbar**i
            cols.append(A + B)
            cols.append(1j * (A - B))
        alpha_cols, alpha_where = _herm_param_columns(zs, ws, d, 1.0 / norm)
        beta_cols, beta_where = _herm_param_columns(zs, ws, d, -es / norm)
        cols += alpha_cols + beta_cols

        rhs = -one_minus_e * zs**d * wbar**d
        Ac = np.stack(cols, axis=1)
        A = np.concatenate([Ac.real, Ac.imag], axis=0)
        bvec = np.concatenate([rhs.real, rhs.imag])

        # column equilibration: a pure reparametrization that keeps the
        # minimizer but tames the dynamic range of the monomial columns
        colscale = np.linalg.norm(A, axis=0)
        colscale[colscale == 0] = 1.0
        sol, _, _, _ = np.linalg.lstsq(A / colscale, bvec, rcond=rcond)
        sol = sol / colscale
        res_rows = A @ sol - bvec
        residual = float(np.sqrt(np.sum(res_rows**2) / ns))

        phi = np.zeros((d + 1, d + 1), dtype=complex)
        psi = np.zeros((d + 1, d + 1), dtype=complex)
        phi[d, d] = psi[d, d] = 1.0
        for i in range(d):
            chi_i = sol[2 * i] + 1j * sol[2 * i + 1]
            phi[i, d] = psi[i, d] = chi_i
            phi[d, i] = psi[d, i] = np.conj(chi_i)
        off = 2 * d
        _scatter_herm(phi, sol[off : off + d * d], alpha_where)
        _scatter_herm(psi, sol[off + d * d : off + 2 * d * d], beta_where)
        reports.append(FitReport(d, residual, phi, psi))
    return reports


def _scatter_herm(mat, params, where):
    k = 0
    for spec in where:
        if spec[0] == "diag":
            i = spec[1]
            mat[i, i] += params[k]
            k += 1
        elif spec[0] == "re":
            _, i, j = spec
            mat[i, j] += params[k]
            mat[j, i] += params[k]
            k += 1
        else:
            _, i, j = spec
            mat[i, j] += 1j * params[k]
            mat[j, i] += -1j * params[k]
            k += 1


def exterior_circle_samples(evaluator, rho, count, method="closed_form"):
    """Hermitian-closed tensor samples on the circle |z| = |w| = rho.

    evaluator(z, w) -> complex transform value; count is rounded up to a
    square grid m x m.  Using one circle for both slots makes the grid
    closed under the swap (z, w) -> (w, z)."""
    m = int(np.ceil(np.sqrt(count)))
    angles = 2 * np.pi * (np.arange(m) + 0.3) / m
    ring = rho * np.exp(1j * angles)
    out = []
    for z in ring:
        for w in ring:
            out.append(TransformSample(z, w, complex(evaluator(z, w)), method, 0.0))
    return out


def probe_point_cloud(D, count, clearances=(0.005, 0.02, 0.06)):
    """Exterior evaluation points hugging the boundary of D.

    Boundary samples are pushed along their outward normal (estimated from
    neighboring samples, sign fixed by a membership test) at interleaved
    clearances.  Sampling close to the boundary is what makes the probe
    decisive: far away every transform is nearly rational, while
    approaching the curve a non-rational transform resists bidegree-d fits
    at any d.  For domains with holes only points in the unbounded
    complement component are kept.
    """
    from .domains import Annulus, CircularDomain, boundary_sample, _inside

    m = int(np.floor(np.sqrt(count)))
    bpts = np.asarray(boundary_sample(D, m), dtype=complex)
    tangents = np.roll(bpts, -1) - np.roll(bpts, 1)
    normals = 1j * tangents / np.maximum(np.abs(tangents), 1e-300)
    probe = 0.25 * np.abs(np.roll(bpts, -1) - bpts)
    flip = _inside(D, bpts + probe * normals)
    normals = np.where(flip, -normals, normals)
    clear = np.asarray([clearances[i % len(clearances)] for i in range(len(bpts))])
    pts = bpts + clear * normals
    pts = pts[~_inside(D, pts)]
    if isinstance(D, Annulus):
        pts = pts[np.abs(pts) > D.R]
    elif isinstance(D, CircularDomain):
        pts = pts[np.abs(pts - D.outer.a) > D.outer.R]
    return pts


def probe_samples(D, evaluator, count=900, clearances=(0.005, 0.02, 0.06), method="quadrature"):
    """Tensor product of a near-boundary exterior cloud with itself,
    evaluated with evaluator(z, w); Hermitian-closed by construction."""
    pts = probe_point_cloud(D, count, clearances)
    out = []
    for z in pts:
        for w in pts:
            out.append(TransformSample(complex(z), complex(w), complex(evaluator(z, w)), method, 0.0))
    return out
