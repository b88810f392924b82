"""Point-evaluation functionals, their kernels, and quotient structure.

For a point lambda inside the disk, evaluation f -> f(lambda) is a
multiplicative linear functional; its kernel (series vanishing at lambda)
is a closed maximal ideal, and the quotient algebra collapses to the
complex numbers with f(lambda) as the coset representative.  Everything
here is exact up to evaluation roundoff except the quotient seminorm,
which is bracketed by an explicit witness family and a maximum-principle
lower bound.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .series import TruncatedSeries, DiskPoint, synthetic_divide

__all__ = [
    "PointIdeal",
    "Coset",
    "ContainmentCheck",
    "point_functional",
    "ideal_contains",
    "coset_of",
    "quotient_seminorm_bounds",
    "quotient_submultiplicativity_check",
    "spectral_point",
]


@dataclass(frozen=True)
class PointIdeal:
    """The ideal of series vanishing at a fixed disk point."""

    point: DiskPoint

    def __init__(self, lam):
        if not isinstance(lam, DiskPoint):
            lam = DiskPoint(complex(lam))
        object.__setattr__(self, "point", lam)

    @property
    def lam(self) -> complex:
        return self.point.value


@dataclass(frozen=True)
class Coset:
    """A coset of the point ideal, identified by its constant representative.

    Cosets of f and g coincide exactly when f(lambda) = g(lambda); the
    stored factor certifies membership of f - representative in the ideal
    through f = representative + factor * (z - lambda).
    """

    representative: complex
    ideal: PointIdeal
    factor: TruncatedSeries

    def reconstruct(self) -> TruncatedSeries:
        lam = self.ideal.lam
        linear = TruncatedSeries([-lam, 1.0])
        return self.factor.mul(linear) + self.representative


@dataclass(frozen=True)
class ContainmentCheck:
    contains: bool
    value: complex
    tol: float


def point_functional(f: TruncatedSeries, lam) -> complex:
    """gamma_lambda(f) = f(lambda); linear and multiplicative."""
    lam = lam.value if isinstance(lam, DiskPoint) else complex(lam)
    return f.eval(lam)


def ideal_contains(ideal: PointIdeal, f: TruncatedSeries,
                   tol: float = 0.0) -> ContainmentCheck:
    """Whether f vanishes at the ideal's point, up to tol; f(lambda) is the witness."""
    if tol < 0.0:
        raise ValueError("tol must be >= 0")
    value = f.eval(ideal.lam)
    return ContainmentCheck(bool(abs(value) <= tol), value, float(tol))


def coset_of(f: TruncatedSeries, ideal: PointIdeal) -> Coset:
    """Project f to its coset: representative f(lambda) plus certificate.

    The synthetic-division factor A satisfies
    f(z) = f(lambda) + A(z)(z - lambda) identically, exhibiting
    f - f(lambda) as an ideal element.
    """
    lam = ideal.lam
    rep = f.eval(lam)
    factor = synthetic_divide(f, lam)
    return Coset(representative=rep, ideal=ideal, factor=factor)


def quotient_seminorm_bounds(f: TruncatedSeries, ideal: PointIdeal, r: float,
                             k_budget: int = 64) -> tuple[float, float]:
    """Bracket inf_{h in ideal} max_{|z|=r} |f + h| without searching.

    Upper bound: the witnesses h_k = f(lambda) (z/lambda)^k - f lie in the
    ideal and give max-modulus |f(lambda)| (r/|lambda|)^k on the circle
    (k = 0 is the constant representative; higher k only when lambda != 0).
    Lower bound: |f(lambda)| when r >= |lambda|, since every element of the
    coset takes the value f(lambda) at a point inside the circle; 0 below.

    For r >= |lambda| the bracket pinches to |f(lambda)| exactly; below,
    the geometric factor drives the upper bound to zero, identifying the
    quotient seminorm as 0 there.
    """
    if not 0.0 <= r < 1.0:
        raise ValueError("radius must satisfy 0 <= r < 1")
    if k_budget < 0:
        raise ValueError("k_budget must be >= 0")
    lam = ideal.lam
    rep = abs(f.eval(lam))
    if lam == 0 or r >= abs(lam):
        upper = rep
    else:
        upper = rep * (r / abs(lam)) ** k_budget
    lower = rep if r >= abs(lam) else 0.0
    return lower, upper


def quotient_submultiplicativity_check(f: TruncatedSeries, g: TruncatedSeries,
                                       ideal: PointIdeal, r: float,
                                       slack: float = 1e-12) -> bool:
    """Check |[fg]|_r <= |[f]|_r |[g]|_r in the regime r >= |lambda|.

    There the quotient seminorm is exactly the modulus of the
    representative, so the inequality reduces to
    |f(lambda) g(lambda)| <= |f(lambda)| |g(lambda)| and holds with
    equality; the comparison allows the stated slack for roundoff.
    """
    lam = ideal.lam
    if r < abs(lam):
        raise ValueError("submultiplicativity check requires r >= |lambda|")
    product = f.mul(g)
    lhs = abs(product.eval(lam))
    rhs = abs(f.eval(lam)) * abs(g.eval(lam))
    return lhs <= rhs + slack * max(1.0, rhs)


def spectral_point(f: TruncatedSeries, ideal: PointIdeal) -> complex:
    """The scalar whose difference with f is non-invertible mod the ideal.

    That scalar is f(lambda): the coset of f(lambda) - f has representative
    zero, so it cannot be inverted in the quotient field.
    """
    return f.eval(ideal.lam)
