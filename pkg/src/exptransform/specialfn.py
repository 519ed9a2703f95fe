"""Gamma and Pochhammer, the Appell F2 double hypergeometric function
(series, Euler integral representation, fractional-linear transformation),
the Hubbell rectangular-source integral, and the closed forms built from
them for the Bernoulli lemniscate transform.

Branch policy: every logarithm and square root is principal, pinned by the
normalization that the exponential transform tends to 1 at infinity.
"""

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.special import roots_jacobi

# Lanczos approximation, g = 7, 9 coefficients: relative error below 1e-13
# across the right half plane, which covers the <= 1e-12 contract on
# [0.5, 20].
_LANCZOS_G = 7.0
_LANCZOS_C = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def gamma_fn(x):
    """Gamma(x) for real x, Lanczos accuracy; poles raise ValueError."""
    x = float(x)
    if x <= 0 and x == int(x):
        raise ValueError("gamma pole at nonpositive integer")
    if x < 0.5:
        # reflection through sin(pi x)
        return np.pi / (np.sin(np.pi * x) * gamma_fn(1.0 - x))
    return float(np.exp(log_gamma(x)))


def log_gamma(x):
    """log Gamma(x) for real x > 0."""
    x = float(x)
    if x <= 0:
        raise ValueError("log_gamma needs a positive argument")
    if x < 0.5:
        return np.log(np.pi / np.sin(np.pi * x)) - log_gamma(1.0 - x)
    z = x - 1.0
    acc = _LANCZOS_C[0]
    for i, ci in enumerate(_LANCZOS_C[1:], start=1):
        acc += ci / (z + i)
    t = z + _LANCZOS_G + 0.5
    return 0.5 * np.log(2 * np.pi) + (z + 0.5) * np.log(t) - t + np.log(acc)


def pochhammer(a, k):
    """Rising factorial (a)_k = a (a+1) ... (a+k-1) for integer k >= 0."""
    k = int(k)
    if k < 0:
        raise ValueError("pochhammer needs k >= 0")
    out = 1.0
    for i in range(k):
        out *= a + i
    return out


@dataclass(frozen=True)
class F2Params:
    """Parameters (a; b, b'; c, c') and arguments (x, y) of Appell F2."""

    a: float
    b: float
    bp: float
    c: float
    cp: float
    x: complex
    y: complex

    def __post_init__(self):
        for name in ("c", "cp"):
            v = getattr(self, name)
            if v <= 0 and v == int(v):
                raise ValueError(f"parameter {name} is a nonpositive integer")
        object.__setattr__(self, "x", complex(self.x))
        object.__setattr__(self, "y", complex(self.y))


_SERIES_MARGIN = 0.02


def appell_f2_series(params, tol=1e-12, max_shells=600):
    """F2 by anti-diagonal shell summation with Kahan compensation.

    Requires |x| + |y| < 1 - margin (the classical convergence domain).
    Stops once three consecutive shells fall below tol/10; five
    consecutive growing shells raise a divergence error.
    """
    p = params
    if abs(p.x) + abs(p.y) >= 1.0 - _SERIES_MARGIN:
        raise ValueError("outside convergence region: |x|+|y| too close to 1")

    # rb[k] = (b)_k / ((c)_k k!), advanced incrementally per shell
    rb = [1.0]
    rbp = [1.0]
    xpow = [1.0 + 0j]
    ypow = [1.0 + 0j]

    total = 0.0 + 0j
    comp = 0.0 + 0j  # Kahan compensation
    a_poch = 1.0  # (a)_s
    small_run = 0
    grow_run = 0
    last_mag = np.inf
    for s in range(max_shells):
        if s > 0:
            k = s - 1
            rb.append(rb[-1] * (p.b + k) / ((p.c + k) * (k + 1)))
            rbp.append(rbp[-1] * (p.bp + k) / ((p.cp + k) * (k + 1)))
            xpow.append(xpow[-1] * p.x)
            ypow.append(ypow[-1] * p.y)
            a_poch *= p.a + k
        shell = a_poch * sum(
            rb[k] * rbp[s - k] * xpow[k] * ypow[s - k] for k in range(s + 1)
        )
        y_ = shell - comp
        t_ = total + y_
        comp = (t_ - total) - y_
        total = t_

        mag = abs(shell)
        small_run = small_run + 1 if mag < tol / 10 else 0
        if small_run >= 3:
            return total
        if s > 10:
            grow_run = grow_run + 1 if mag > last_mag else 0
            if grow_run >= 5:
                raise ValueError("outside convergence region: shells growing")
        last_mag = mag
    return total


def _jacobi_axis(n, bexp, cexp):
    """Nodes/weights on [0, 1] for weight u^(bexp-1) (1-u)^(cexp-bexp-1)."""
    t, w = roots_jacobi(n, cexp - bexp - 1.0, bexp - 1.0)
    u = 0.5 * (1.0 + t)
    return u, w * 0.5 ** (cexp - 1.0)


def appell_f2_integral(params, tol=1e-10, max_order=256):
    """F2 via the Euler-type double integral

        C * int_0^1 int_0^1 u^(b-1) v^(b'-1) (1-u)^(c-b-1) (1-v)^(c'-b'-1)
                            (1 - x u - y v)^(-a) du dv,

    C = Gamma(c) Gamma(c') / (Gamma(b) Gamma(b') Gamma(c-b) Gamma(c'-b')),
    with tensor Gauss-Jacobi nodes absorbing both endpoint weight
    singularities exactly.  The order doubles until two successive values
    agree to tol.
    """
    p = params
    if p.b <= 0 or p.bp <= 0 or p.c - p.b <= 0 or p.cp - p.bp <= 0:
        raise ValueError("integral representation needs b, b' > 0 and c-b, c'-b' > 0")

    const = np.exp(
        log_gamma(p.c)
        + log_gamma(p.cp)
        - log_gamma(p.b)
        - log_gamma(p.bp)
        - log_gamma(p.c - p.b)
        - log_gamma(p.cp - p.bp)
    )

    def value(n):
        u, wu = _jacobi_axis(n, p.b, p.c)
        v, wv = _jacobi_axis(n, p.bp, p.cp)
        base = 1.0 - p.x * u[:, None] - p.y * v[None, :]
        if np.abs(base).min() < 1e-12:
            raise ValueError("integrand pole inside the unit square")
        if np.any((base.real <= 0) & (np.abs(base.imag) < 1e-14 * np.abs(base.real))):
            raise ValueError("integrand crosses the branch cut")
        core = np.exp(-p.a * np.log(base))
        return const * complex(wu @ core @ wv)

    n = 32
    prev = value(n)
    while n < max_order:
        n *= 2
        cur = value(n)
        if abs(cur - prev) <= tol * (1.0 + abs(cur)):
            return cur
        prev = cur
    return prev


def f2_transform(params):
    """Fractional-linear transformation of F2.

    Returns (transformed_params, prefactor) with

        F2(a; b, b'; c, c'; x, y)
            = prefactor * F2(a; c-b, c'-b'; c, c'; x/(x+y-1), y/(x+y-1)),

    prefactor = (1 - x - y)^(-a).
    """
    p = params
    s = p.x + p.y - 1.0
    if abs(s) < 1e-14:
        raise ValueError("transformation undefined at x + y = 1")
    transformed = F2Params(p.a, p.c - p.b, p.cp - p.bp, p.c, p.cp, p.x / s, p.y / s)
    prefactor = (-s) ** (-p.a) if np.isrealobj(s) and (-s).real > 0 else np.exp(
        -p.a * np.log(-s + 0j)
    )
    return transformed, complex(prefactor)


def hubbell_integral(s, t, tol=1e-10):
    """H(s, t) = int_0^s int_0^t dxi deta / (1 + xi^2 + eta^2).

    The inner integral has the exact antiderivative
    arctan(t / sqrt(1 + xi^2)) / sqrt(1 + xi^2), leaving one smooth 1-D
    integral.  Monotone in s and t, symmetric in (s, t).
    """
    s, t = float(s), float(t)
    if s < 0 or t < 0:
        raise ValueError("hubbell integral needs s, t >= 0")
    if s == 0.0 or t == 0.0:
        return 0.0

    def inner(xi):
        r = np.sqrt(1.0 + xi * xi)
        return np.arctan(t / r) / r

    val, _ = quad(inner, 0.0, s, epsabs=tol / 2, epsrel=tol / 2, limit=200)
    return float(val)


# ----------------------------------------------------------------------
# Bernoulli lemniscate closed forms
#
# For the full sublevel set |z^2 - 1| < 1 the moment generating sums split
# into an odd part with an elementary logarithm and an even part expressed
# through F2(1; 1, 1; 3/2, 3/2; 1/z^2, 1/conj(w)^2), equivalently through
# the Hubbell integral for real arguments.

_SQRT2 = float(np.sqrt(2.0))


def _require_exterior(z, w):
    if abs(z) <= _SQRT2 or abs(w) <= _SQRT2:
        raise ValueError("outside convergence region: need |z|, |w| > sqrt(2)")


def _odd_log_argument(z, w):
    return 1.0 - 1.0 / ((z * z - 1.0) * (np.conj(w) ** 2 - 1.0))


def bernoulli_s_odd(z, w):
    """Odd-moment sum: -(1/2) log(1 - 1/((z^2-1)(conj(w)^2-1))), principal."""
    z, w = complex(z), complex(w)
    _require_exterior(z, w)
    arg = _odd_log_argument(z, w)
    if arg.real <= 0 and abs(arg.imag) < 1e-14 * abs(arg.real):
        raise ValueError("branch cut: log argument on the negative real axis")
    return -0.5 * np.log(arg)


def bernoulli_s_odd_series(z, w, tol=1e-12, max_shells=400):
    """Odd-moment double series, shell-summed (independent check of the log form)."""
    from .moments import bernoulli_moment

    z, w = complex(z), complex(w)
    _require_exterior(z, w)
    zi2, wi2 = 1.0 / (z * z), 1.0 / (np.conj(w) ** 2)
    total = 0j
    small = 0
    for n in range(max_shells):
        shell = 0j
        for k in range(n + 1):
            m = n - k
            shell += bernoulli_moment(2 * k + 1, 2 * m + 1) * zi2 ** (k + 1) * wi2 ** (m + 1)
        total += shell
        small = small + 1 if abs(shell) < tol / 10 else 0
        if small >= 3:
            break
    return total


def bernoulli_s_even(z, w, method="f2", tol=1e-10):
    """Even-moment sum S_even(z, w), by one of three routes.

    method 'f2':      (2 / (pi z conj(w))) * F2(1; 1, 1; 3/2, 3/2; z^-2, conj(w)^-2)
    method 'hubbell': (2/pi) * H(s, t) with s = 1/(z sqrt(1 - z^-2 - conj(w)^-2)),
                      t likewise; real z, w > sqrt(2) only (the substitution
                      chain is justified for real parameters)
    method 'series':  the raw double moment series
    """
    z, w = complex(z), complex(w)
    _require_exterior(z, w)
    wbar = np.conj(w)
    if method == "f2":
        params = F2Params(1.0, 1.0, 1.0, 1.5, 1.5, 1.0 / (z * z), 1.0 / (wbar * wbar))
        if abs(params.x) + abs(params.y) < 1.0 - _SERIES_MARGIN:
            f2 = appell_f2_series(params, tol=tol)
        else:
            f2 = appell_f2_integral(params, tol=tol)
        return 2.0 / (np.pi * z * wbar) * f2
    if method == "hubbell":
        if z.imag != 0 or w.imag != 0 or z.real <= _SQRT2 or w.real <= _SQRT2:
            raise ValueError("hubbell route is reserved for real z, w > sqrt(2)")
        disc = 1.0 - 1.0 / z.real**2 - 1.0 / w.real**2
        if disc <= 0:
            raise ValueError("branch cut: 1 - z^-2 - w^-2 not positive")
        s = 1.0 / (z.real * np.sqrt(disc))
        t = 1.0 / (w.real * np.sqrt(disc))
        return complex(2.0 / np.pi * hubbell_integral(s, t, tol=tol))
    if method == "series":
        from .moments import bernoulli_moment

        zi2, wi2 = 1.0 / (z * z), 1.0 / (wbar * wbar)
        total = 0j
        small = 0
        for n in range(400):
            shell = 0j
            for k in range(n + 1):
                m = n - k
                shell += bernoulli_moment(2 * k, 2 * m) * zi2**k * wi2**m
            total += shell
            small = small + 1 if abs(shell) < tol / 10 else 0
            if small >= 3:
                break
        return total / (z * wbar)
    raise ValueError(f"unknown method {method!r}")


def bernoulli_exp_transform(z, w):
    """Exponential transform of the full Bernoulli set |z^2 - 1| < 1 at
    exterior points |z|, |w| > sqrt(2):

        E(z, w) = sqrt(1 - 1/((z^2-1)(conj(w)^2-1))) * exp(-S_even(z, w)),

    principal square root (so E -> 1 at infinity).
    """
    z, w = complex(z), complex(w)
    _require_exterior(z, w)
    arg = _odd_log_argument(z, w)
    if arg.real <= 0 and abs(arg.imag) < 1e-14 * abs(arg.real):
        raise ValueError("branch cut: square root argument on the negative real axis")
    return np.sqrt(arg) * np.exp(-bernoulli_s_even(z, w, method="f2"))


# ----------------------------------------------------------------------
# rose-lemniscate moment sums S_lambda (used to validate the F2 transform
# chain against the raw rose moments)


def rose_slambda_series(n, lam, x, y, tol=1e-12):
    """S_lambda(x, y) = Gamma(2 l) / Gamma(1 + l)^2 * F2(2l; 1, 1; l+1, l+1; x, y)
    with l = (1 + lambda)/n, summed as a series."""
    ln = (1.0 + lam) / n
    pref = np.exp(log_gamma(2 * ln) - 2 * log_gamma(1 + ln))
    params = F2Params(2 * ln, 1.0, 1.0, ln + 1.0, ln + 1.0, x, y)
    return pref * appell_f2_series(params, tol=tol)


def rose_slambda_chain(n, lam, x, y, tol=1e-10):
    """Same quantity through the fractional-linear transformation and the
    Euler integral: exercises the b = l < 1 endpoint weights."""
    ln = (1.0 + lam) / n
    pref = np.exp(log_gamma(2 * ln) - 2 * log_gamma(1 + ln))
    params = F2Params(2 * ln, 1.0, 1.0, ln + 1.0, ln + 1.0, x, y)
    transformed, factor = f2_transform(params)
    return pref * factor * appell_f2_integral(transformed, tol=tol)
