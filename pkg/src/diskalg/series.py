"""Truncated Taylor series on the unit disk: arithmetic and circle functionals.

A :class:`TruncatedSeries` stores a finite coefficient vector a_0..a_N and is
treated as an exact polynomial everywhere in the package; the only error
sources downstream are quadrature and sampling, which are reported.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from ._quad import (
    QuadratureError,
    CircleSampler,
    adaptive_circle_mean,
    circle_values,
)

__all__ = [
    "TruncatedSeries",
    "DiskPoint",
    "synthetic_divide",
    "max_modulus",
    "mean_modulus_p",
    "series_to_json",
    "series_from_json",
    "QuadratureError",
]


class TruncatedSeries:
    """Immutable finite Taylor series sum_n a_n z^n with complex a_n.

    Supports +, -, scalar and series multiplication, and evaluation by
    call.  Products carry the full degree of the convolution unless an
    explicit truncation degree is requested.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs):
        arr = np.atleast_1d(np.asarray(coeffs, dtype=complex)).copy()
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("need a one-dimensional, non-empty coefficient list")
        if not np.all(np.isfinite(arr.view(float))):
            raise ValueError("coefficients must be finite")
        arr.flags.writeable = False
        self._coeffs = arr

    # -- basic structure ---------------------------------------------------

    @property
    def coeffs(self) -> np.ndarray:
        return self._coeffs

    @property
    def degree(self) -> int:
        return self._coeffs.size - 1

    def __len__(self):
        return self._coeffs.size

    def __getitem__(self, n):
        return self._coeffs[n]

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self._coeffs.size == other._coeffs.size
                and bool(np.all(self._coeffs == other._coeffs)))

    def __hash__(self):
        return hash(self._coeffs.tobytes())

    def __repr__(self):
        head = np.array2string(self._coeffs[:4], precision=6, separator=", ")
        tail = "" if len(self) <= 4 else f" ... <{len(self)} coeffs>"
        return f"TruncatedSeries({head}{tail})"

    @classmethod
    def zero(cls) -> "TruncatedSeries":
        return cls([0.0])

    @classmethod
    def one(cls) -> "TruncatedSeries":
        return cls([1.0])

    @classmethod
    def monomial(cls, n: int, coeff: complex = 1.0) -> "TruncatedSeries":
        arr = np.zeros(n + 1, dtype=complex)
        arr[n] = coeff
        return cls(arr)

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            n = max(len(self), len(other))
            out = np.zeros(n, dtype=complex)
            out[: len(self)] += self._coeffs
            out[: len(other)] += other._coeffs
            return TruncatedSeries(out)
        if np.isscalar(other):
            out = self._coeffs.copy()
            out[0] += other
            return TruncatedSeries(out)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(-self._coeffs)

    def __sub__(self, other):
        if isinstance(other, TruncatedSeries):
            return self + (-other)
        if np.isscalar(other):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.mul(other)
        if np.isscalar(other):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def scale(self, s: complex) -> "TruncatedSeries":
        return TruncatedSeries(self._coeffs * complex(s))

    def mul(self, other: "TruncatedSeries", trunc: int | None = None) -> "TruncatedSeries":
        """Cauchy product; degree N_f + N_g unless trunc caps it."""
        prod = np.convolve(self._coeffs, other._coeffs)
        if trunc is not None:
            prod = prod[: int(trunc) + 1]
            if prod.size == 0:
                prod = np.zeros(1, dtype=complex)
        return TruncatedSeries(prod)

    # -- evaluation -----------------------------------------------------------

    def __call__(self, z: complex) -> complex:
        return self.eval(z)

    def eval(self, z):
        """Horner evaluation; accepts a scalar or an array of points."""
        z = np.asarray(z, dtype=complex)
        acc = np.full(z.shape, self._coeffs[-1], dtype=complex)
        for a in self._coeffs[-2::-1]:
            acc = acc * z + a
        if acc.shape == ():
            return complex(acc)
        return acc


@dataclass(frozen=True)
class DiskPoint:
    """A point strictly inside the unit disk."""

    value: complex

    def __post_init__(self):
        v = complex(self.value)
        if not (np.isfinite(v.real) and np.isfinite(v.imag)):
            raise ValueError("disk point must be finite")
        if abs(v) >= 1.0:
            raise ValueError(f"|lambda| = {abs(v):.6g} is not < 1")
        object.__setattr__(self, "value", v)

    def __complex__(self):
        return self.value


def _as_point(lam) -> complex:
    return complex(lam.value) if isinstance(lam, DiskPoint) else complex(lam)


def synthetic_divide(f: TruncatedSeries, lam) -> TruncatedSeries:
    """Deflation quotient A with f(z) - f(lam) = A(z) (z - lam).

    Plain synthetic division; A has degree deg f - 1 and [0] when f is
    constant.  The remainder it discards is exactly f(lam).
    """
    lam = _as_point(lam)
    a = f.coeffs
    n = a.size
    if n == 1:
        return TruncatedSeries.zero()
    b = np.empty(n - 1, dtype=complex)
    b[-1] = a[-1]
    for k in range(n - 2, 0, -1):
        b[k - 1] = a[k] + lam * b[k]
    return TruncatedSeries(b)


# ---------------------------------------------------------------------------
# circle functionals
# ---------------------------------------------------------------------------


def _golden_refine(f, r, lo, hi, iters=40):
    """Golden-section maximization of |f(r e^{i t})| on [lo, hi]."""
    inv_phi = (np.sqrt(5.0) - 1.0) / 2.0

    def val(t):
        return abs(f.eval(r * np.exp(1j * t)))

    x1 = hi - inv_phi * (hi - lo)
    x2 = lo + inv_phi * (hi - lo)
    f1, f2 = val(x1), val(x2)
    for _ in range(iters):
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + inv_phi * (hi - lo)
            f2 = val(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - inv_phi * (hi - lo)
            f1 = val(x1)
    return max(f1, f2)


def max_modulus(f: TruncatedSeries, r: float, samples: int | None = None,
                refine_iters: int = 40, full_output: bool = False):
    """Estimate max_{|z|=r} |f(z)| (equals the closed-disk max).

    Scans ``samples`` equispaced points on the circle (default
    max(4 deg + 4, 256)) and refines the winning arc by golden-section
    search.  The estimate never exceeds the true maximum; the returned
    bound caps how far below it can sit, via the Bernstein curvature bound
    pi^2 N^2 M / (2 K^2) for the pre-refinement grid.
    """
    if not 0.0 <= r < 1.0:
        raise ValueError("radius must satisfy 0 <= r < 1")
    deg = f.degree
    k = int(samples) if samples else max(4 * deg + 4, 256)
    vals = np.abs(circle_values(f.coeffs, r, k))
    j = int(np.argmax(vals))
    best = float(vals[j])
    if best == 0.0:
        return (0.0, 0.0) if full_output else 0.0
    theta = 2.0 * np.pi * j / k
    h = 2.0 * np.pi / k
    refined = _golden_refine(f, r, theta - h, theta + h, refine_iters)
    est = max(best, float(refined))
    bound = (np.pi * deg) ** 2 * est / (2.0 * k * k)
    return (est, bound) if full_output else est


def mean_modulus_p(f: TruncatedSeries, r: float, p: float, tol: float = 1e-10,
                   k_cap: int = 1 << 20, full_output: bool = False):
    """Circle mean (int |f(r e^{it})|^p dt / 2 pi)^{1/p} by trapezoid rule.

    The grid doubles until the value settles within tol; non-convergence
    inside the sample budget raises :class:`QuadratureError` with the
    achieved residual.  For p = 2 the rule is exact once the grid exceeds
    twice the degree, which is where it starts.
    """
    if not 0.0 <= r < 1.0:
        raise ValueError("radius must satisfy 0 <= r < 1")
    if p < 1.0:
        raise ValueError("p must be >= 1")
    if not np.any(f.coeffs):
        return (0.0, 0.0, 0) if full_output else 0.0
    sampler = CircleSampler(f.coeffs, k_cap=k_cap)
    half = p / 2.0
    vals, resid, k_used = adaptive_circle_mean(
        sampler, "mean", [r],
        transform=lambda abs2: abs2**half,
        finalize=lambda m: m ** (1.0 / p),
        targets=tol,
    )
    value, residual, k = float(vals[0]), float(resid[0]), int(k_used[0])
    if residual > tol:
        raise QuadratureError(
            "circle mean did not settle within the sample budget",
            residual=residual, nodes=k,
        )
    if full_output:
        return value, residual, k
    return value


# ---------------------------------------------------------------------------
# JSON wire format: {"coeffs": [[re, im], ...]} with index = power
# ---------------------------------------------------------------------------


def series_to_json(f: TruncatedSeries) -> str:
    pairs = [[float(c.real), float(c.imag)] for c in f.coeffs]
    return json.dumps({"coeffs": pairs})


def series_from_json(text: str) -> TruncatedSeries:
    data = json.loads(text)
    pairs = data["coeffs"]
    if not isinstance(pairs, list) or not pairs:
        raise ValueError("series JSON needs a non-empty 'coeffs' list")
    return TruncatedSeries([complex(re, im) for re, im in pairs])
