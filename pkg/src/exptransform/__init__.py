"""Exponential transforms, Cauchy transforms, complex moments, and
polynomial/meromorphic resultants for planar domains (disks, annuli,
circular domains, ellipses, lemniscate components).

The package exposes closed formulas where they exist, moment-series and
direct quadrature engines everywhere, and a numerical rationality probe
that exhibits the dichotomy between quadrature domains (rational,
separable transforms) and lemniscate domains (non-rational transforms).
"""

from .polyalg import (
    ComplexPoly,
    HermPoly2,
    RationalFn,
    is_primitive,
    poly_arith,
    poly_gcd,
    poly_roots,
    principal_divisor,
    principal_factorization,
)
from .resultants import (
    INF,
    Divisor,
    divisor_of,
    meromorphic_resultant,
    ord_at,
    poisson_resultant,
    sylvester_resultant,
)
from .domains import (
    Annulus,
    CircularDomain,
    Disk,
    Ellipse,
    GridMask,
    LemniscateComponent,
    LemniscateSublevel,
    boundary_sample,
    component_of,
    contains,
    domain_from_json,
    domain_to_json,
    schwarz_ellipse,
)
from .moments import (
    MomentTable,
    QuadratureData,
    bernoulli_moment,
    moment_quadrature,
    moment_table,
    quadrature_identity_check,
    rose_moment,
)
from .transforms import (
    HermitianRational,
    TransformSample,
    cauchy_transform,
    circular_domain_transform,
    disk_transform,
    ellipse_transform,
    exp_transform_moments,
    exp_transform_quadrature,
    pushforward_symbolic,
    pushforward_transform,
)
from .specialfn import (
    F2Params,
    appell_f2_integral,
    appell_f2_series,
    bernoulli_exp_transform,
    bernoulli_s_even,
    bernoulli_s_odd,
    f2_transform,
    gamma_fn,
    hubbell_integral,
    pochhammer,
)
from .analysis import (
    FitReport,
    RegularityReport,
    fz_polynomial,
    nested_resultant,
    rationality_probe,
    regular_rational_check,
    separability_test,
)

__version__ = "0.1.0"
