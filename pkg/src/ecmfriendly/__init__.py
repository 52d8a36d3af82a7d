"""Torsion statistics of elliptic curves modulo primes, exact and
empirical, plus generators and divisibility certificates for the
classical ECM-friendly curve families."""

from .arith import PrimeStream, Rat, Residue, legendre, sieve_primes, sqrt_mod, square_class
from .curves import (
    INFINITY,
    CubicCurve,
    Montgomery,
    ShortWeierstrass,
    TwistedEdwards,
    add_points,
    montgomery_edwards_convert,
    parse_curve,
    reduce_curve,
    scalar_mul,
    to_weierstrass,
)
from .divpoly import division_poly, division_poly_new, torsion_size_mod_p
from .families import (
    Certificate,
    SuyamaCurve,
    divisibility_certificate,
    e_square_generator,
    edwards_eight_torsion,
    edwards_family,
    parse_family_spec,
    satisfies_eq11,
    satisfies_eq94,
    suyama,
    suyama11_sigma,
    suyama94_sigma,
    z2z4_param,
)
from .gl2 import (
    ProbTable,
    SubgroupImage,
    average_valuation,
    enumerate_group,
    extend_table,
    fix_shape,
    lift_constants,
    prob_power_divides,
    prob_table,
    reduce_image,
    shape_probability,
    shape_probability_conditional,
    subgroup_closure,
)
from .harness import (
    ComparisonRow,
    DensityEstimate,
    ValuationReport,
    density_scan,
    export,
    identify_image,
    image_order_estimate,
    reproduce,
    valuation_scan,
)
from .structure import count_points_naive, group_order, group_shape, torsion_shape

__version__ = "0.1.0"
