"""Numerics for the growth-restricted holomorphic function algebras on the disk.

The package treats truncated Taylor series as exact polynomials and
provides: series arithmetic and circle functionals, two equivalent
seminorm families with their metrics, coefficient-growth membership
probes, point-evaluation ideals with quotient structure, and seeded
verification harnesses over random corpora.
"""

from ._quad import QuadratureError
from .series import (
    TruncatedSeries,
    DiskPoint,
    synthetic_divide,
    max_modulus,
    mean_modulus_p,
    series_from_json,
    series_to_json,
)
from .seminorms import (
    SpaceParams,
    SeminormSpec,
    coeff_seminorm,
    integral_seminorm,
    privalov_metric,
    envelope_metric,
    equivalence_constants,
)
from .membership import (
    CoefficientRule,
    Verdict,
    MembershipVerdict,
    growth_profile,
    classify,
    radial_growth_probe,
    privalov_mean,
)
from .ideals import (
    PointIdeal,
    Coset,
    ContainmentCheck,
    point_functional,
    ideal_contains,
    coset_of,
    quotient_seminorm_bounds,
    quotient_submultiplicativity_check,
    spectral_point,
)
from .verify import (
    Corpus,
    generate_corpus,
    VerificationReport,
    check_seminorm_domination,
    estimate_equivalence_constant,
    check_functional_axioms,
    hurwitz_closure_suite,
)

__version__ = "0.1.0"

__all__ = [
    "QuadratureError",
    "TruncatedSeries",
    "DiskPoint",
    "synthetic_divide",
    "max_modulus",
    "mean_modulus_p",
    "series_from_json",
    "series_to_json",
    "SpaceParams",
    "SeminormSpec",
    "coeff_seminorm",
    "integral_seminorm",
    "privalov_metric",
    "envelope_metric",
    "equivalence_constants",
    "CoefficientRule",
    "Verdict",
    "MembershipVerdict",
    "growth_profile",
    "classify",
    "radial_growth_probe",
    "privalov_mean",
    "PointIdeal",
    "Coset",
    "ContainmentCheck",
    "point_functional",
    "ideal_contains",
    "coset_of",
    "quotient_seminorm_bounds",
    "quotient_submultiplicativity_check",
    "spectral_point",
    "Corpus",
    "generate_corpus",
    "VerificationReport",
    "check_seminorm_domination",
    "estimate_equivalence_constant",
    "check_functional_axioms",
    "hurwitz_closure_suite",
]
