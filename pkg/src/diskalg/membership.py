"""Membership probes for the disk growth algebras.

A coefficient sequence belongs to the exponent-p algebra exactly when
log^+ |a_n| / n^(1/(p+1)) tends to zero.  No finite probe can decide an
asymptotic statement, so verdicts here are explicitly numerical evidence
at a stated horizon: the profile is computed in log space, window maxima
are tracked across doubling checkpoints, and their limit is extrapolated
by a small non-negative least-squares fit.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import nnls

from ._quad import CircleSampler, QuadratureError, adaptive_circle_mean
from .seminorms import SpaceParams
from .series import TruncatedSeries, max_modulus

__all__ = [
    "CoefficientRule",
    "Verdict",
    "MembershipVerdict",
    "growth_profile",
    "classify",
    "radial_growth_probe",
    "privalov_mean",
]

_MAX_LOG = 700.0  # exp() overflows just above this


@dataclass(frozen=True)
class CoefficientRule:
    """Closed-form generator n -> a_n, handled in log space.

    Only log |a_n| is ever produced, so rules may grow far past the range
    of floating point magnitudes.  ``scaled`` multiplies the whole
    sequence by a constant, which shifts every log by the same amount.
    """

    kind: str
    params: dict = field(default_factory=dict)
    log_scale: float = 0.0
    fn: Callable[[np.ndarray], np.ndarray] | None = None

    # -- factories ---------------------------------------------------------

    @classmethod
    def geometric(cls, rho: float) -> "CoefficientRule":
        if not (np.isfinite(rho) and rho > 0.0):
            raise ValueError("rho must be a positive finite number")
        return cls("geometric", {"rho": float(rho)})

    @classmethod
    def stretched_exp(cls, eps: float, beta: float) -> "CoefficientRule":
        if not 0.0 < beta < 1.0:
            raise ValueError("beta must lie in (0, 1)")
        return cls("stretched_exp", {"eps": float(eps), "beta": float(beta)})

    @classmethod
    def stretched_exp_damped(cls, beta: float) -> "CoefficientRule":
        if not 0.0 < beta < 1.0:
            raise ValueError("beta must lie in (0, 1)")
        return cls("stretched_exp_damped", {"beta": float(beta)})

    @classmethod
    def power_table(cls, values) -> "CoefficientRule":
        arr = np.atleast_1d(np.asarray(values, dtype=complex))
        if arr.size < 1 or not np.all(np.isfinite(arr.view(float))):
            raise ValueError("table must be non-empty and finite")
        return cls("power_table", {"table": arr})

    @classmethod
    def custom(cls, name: str, log_abs_fn: Callable) -> "CoefficientRule":
        return cls("custom", {"name": name}, fn=log_abs_fn)

    def scaled(self, factor: float) -> "CoefficientRule":
        if not (np.isfinite(factor) and factor > 0.0):
            raise ValueError("scale factor must be positive and finite")
        return CoefficientRule(self.kind, self.params,
                               self.log_scale + float(np.log(factor)), self.fn)

    # -- evaluation ----------------------------------------------------------

    def log_abs(self, n) -> np.ndarray:
        """log |a_n| for an array of indices, never materializing a_n."""
        n = np.asarray(n, dtype=float)
        if self.kind == "geometric":
            out = n * np.log(self.params["rho"])
        elif self.kind == "stretched_exp":
            out = self.params["eps"] * n ** self.params["beta"]
        elif self.kind == "stretched_exp_damped":
            out = n ** self.params["beta"] / np.log(n + 2.0)
        elif self.kind == "power_table":
            table = self.params["table"]
            if np.any(n >= table.size):
                raise ValueError("index beyond the stored table horizon")
            with np.errstate(divide="ignore"):
                out = np.log(np.abs(table[n.astype(int)]))
        elif self.kind == "custom":
            out = np.asarray(self.fn(n), dtype=float)
        else:
            raise ValueError(f"unknown rule kind {self.kind!r}")
        return out + self.log_scale

    def truncate(self, degree: int) -> TruncatedSeries:
        """Materialize a_0..a_degree (positive real phase)."""
        logs = self.log_abs(np.arange(degree + 1))
        logs = np.where(np.isfinite(logs), logs, -np.inf)
        if np.any(logs > _MAX_LOG):
            raise OverflowError("rule magnitudes exceed floating point range")
        return TruncatedSeries(np.exp(logs).astype(complex))


class Verdict(str, enum.Enum):
    MEMBER = "member"
    NON_MEMBER = "non_member"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class MembershipVerdict:
    """Outcome of a finite-horizon membership probe.

    ``limsup_estimate`` is the extrapolated limit of the tail window
    maxima of the growth profile: at most ``threshold`` for MEMBER,
    at least ``threshold`` for NON_MEMBER.
    """

    verdict: Verdict
    limsup_estimate: float
    threshold: float
    horizon: int
    evidence_window: tuple[int, int]
    window_max: float
    window_min: float
    checkpoints: tuple[tuple[int, float], ...]
    fit: dict | None
    profile_indices: np.ndarray
    profile_values: np.ndarray
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "limsup_estimate": self.limsup_estimate,
            "threshold": self.threshold,
            "horizon": self.horizon,
            "evidence_window": list(self.evidence_window),
            "window_max": self.window_max,
            "window_min": self.window_min,
            "checkpoints": [[h, m] for h, m in self.checkpoints],
            "fit": self.fit,
            "profile": {
                "n": [int(i) for i in self.profile_indices],
                "s": [float(v) for v in self.profile_values],
            },
            "note": self.note,
        }


def growth_profile(rule: CoefficientRule, sp, n_max: int) -> np.ndarray:
    """s_n = log^+ |a_n| / n^(1/(p+1)) for n = 1..n_max.

    s_n is the smallest c_n making the growth bound
    |a_n| <= exp(c_n n^(1/(p+1))) tight at index n.
    """
    sp = SpaceParams.of(sp)
    if n_max < 16:
        raise ValueError("n_max must be at least 16")
    n = np.arange(1, int(n_max) + 1)
    return np.maximum(rule.log_abs(n), 0.0) / n.astype(float)**sp.alpha


def _window_max(s: np.ndarray, horizon: int) -> float:
    # s is 1-based in n: s[n-1] = s_n ; window is [horizon/2, horizon]
    return float(np.max(s[horizon // 2 - 1: horizon]))


def _extrapolate(horizons, maxima, alpha):
    """Non-negative LS fit of window maxima against vanishing profiles.

    Basis: a constant plateau, the canonical slow null sequence
    1/log(n+2), and the power decay n^-alpha produced by rescaling a
    sequence; each column is evaluated the way the data is, as the
    window maximum of a decreasing model (its value at the window's left
    edge).  The constant coefficient estimates the limit.
    """
    lefts = np.asarray(horizons, dtype=float) / 2.0
    design = np.stack([
        np.ones_like(lefts),
        1.0 / np.log(lefts + 2.0),
        lefts**-alpha,
    ], axis=1)
    target = np.asarray(maxima, dtype=float)
    coef, rnorm = nnls(design, target)
    scale = max(float(target.max()), 1e-30)
    rel_resid = rnorm / (scale * np.sqrt(target.size))
    return float(coef[0]), [float(x) for x in coef], float(rel_resid)


def classify(rule: CoefficientRule, sp, n_max: int = 2**14,
             threshold: float = 0.01) -> MembershipVerdict:
    """Three-way membership verdict from the growth profile.

    MEMBER when the tail window maxima either sit below the threshold or
    decrease along a profile whose extrapolated limit does; NON_MEMBER
    when the tail stays above the threshold with no such decay;
    INCONCLUSIVE otherwise.  Checkpoints are the doubling horizons
    n_max, n_max/2, ... down to 256.
    """
    sp = SpaceParams.of(sp)
    n_max = int(n_max)
    if n_max < 256:
        raise ValueError("n_max must be at least 256")
    if not (threshold > 0.0):
        raise ValueError("threshold must be positive")

    s = growth_profile(rule, sp, n_max)
    window = (n_max // 2, n_max)
    tail = s[window[0] - 1:]
    wmax, wmin = float(tail.max()), float(tail.min())

    horizons = []
    h = n_max
    while h >= 256:
        horizons.append(h)
        h //= 2
    horizons = horizons[::-1]
    maxima = np.array([_window_max(s, h) for h in horizons])
    scale = max(float(maxima.max()), 1e-30)
    slack = 1e-9 * (1.0 + scale)
    non_increasing = bool(np.all(np.diff(maxima) <= slack))
    clearly_decreasing = maxima[0] - maxima[-1] > 0.01 * scale

    fit = None
    gamma = wmax
    good_fit = False
    if len(horizons) >= 3:
        gamma, coef, rel_resid = _extrapolate(horizons, maxima, sp.alpha)
        good_fit = rel_resid <= 0.02
        fit = {"limit": gamma, "coefficients": coef,
               "relative_residual": rel_resid, "converged": good_fit}

    note = (f"numerical evidence at horizon n_max={n_max}; "
            "membership is an asymptotic property and is not proven")

    if wmax <= threshold and non_increasing:
        verdict, limsup = Verdict.MEMBER, wmax
    elif wmin >= threshold:
        if good_fit and non_increasing and gamma < threshold:
            verdict, limsup = Verdict.MEMBER, gamma
        elif good_fit and gamma >= threshold:
            verdict, limsup = Verdict.NON_MEMBER, gamma
        elif not clearly_decreasing:
            verdict, limsup = Verdict.NON_MEMBER, wmax
        else:
            verdict, limsup = Verdict.INCONCLUSIVE, gamma
    else:
        verdict, limsup = Verdict.INCONCLUSIVE, gamma if good_fit else wmax

    # thin the profile for reporting: log-spaced indices up to n_max
    count = min(512, n_max)
    idx = np.unique(np.geomspace(1, n_max, count).astype(int))
    return MembershipVerdict(
        verdict=verdict,
        limsup_estimate=float(limsup),
        threshold=float(threshold),
        horizon=n_max,
        evidence_window=window,
        window_max=wmax,
        window_min=wmin,
        checkpoints=tuple((h, float(m)) for h, m in zip(horizons, maxima)),
        fit=fit,
        profile_indices=idx,
        profile_values=s[idx - 1],
        note=note,
    )


def radial_growth_probe(f, sp, r_grid: Sequence[float],
                        truncation_degree: int = 4096) -> np.ndarray:
    """(1-r)^(1/p) log^+ max_{|z|<=r} |f| on an increasing radius grid.

    The limit of this quantity as r -> 1 defines the growth algebra.
    Accepts a series directly or a coefficient rule, which is truncated
    at ``truncation_degree`` first (a heuristic: the truncation should
    comfortably out-resolve the largest grid radius).
    """
    sp = SpaceParams.of(sp)
    r_grid = np.asarray(r_grid, dtype=float)
    if np.any(r_grid < 0.0) or np.any(r_grid >= 1.0) or np.any(np.diff(r_grid) <= 0.0):
        raise ValueError("r_grid must be increasing inside [0, 1)")
    if isinstance(f, CoefficientRule):
        f = f.truncate(truncation_degree)
    out = np.empty(r_grid.size)
    for i, r in enumerate(r_grid):
        m = max_modulus(f, float(r))
        out[i] = (1.0 - r) ** (1.0 / sp.p) * max(np.log(m) if m > 0 else 0.0, 0.0)
    return out


def privalov_mean(f: TruncatedSeries, sp, r: float, tol: float = 1e-9,
                  full_output: bool = False):
    """Circle mean of (log^+ |f|)^p at radius r.

    Uniform boundedness of these means over r < 1 is the classical
    log-integrability condition.  The integrand has kinks where |f|
    crosses 1, so the trapezoid grid doubles until the value settles.
    """
    sp = SpaceParams.of(sp)
    if not 0.0 <= r < 1.0:
        raise ValueError("radius must satisfy 0 <= r < 1")
    if not np.any(f.coeffs):
        return (0.0, 0.0, 0) if full_output else 0.0
    p = sp.p

    def transform(abs2):
        return np.maximum(0.5 * np.log(np.maximum(abs2, 1e-300)), 0.0)**p

    sampler = CircleSampler(f.coeffs)
    vals, resid, k_used = adaptive_circle_mean(
        sampler, "privalov", [float(r)], transform=transform, targets=tol,
    )
    if float(resid[0]) > tol:
        raise QuadratureError(
            "circle mean did not settle within the sample budget",
            residual=float(resid[0]), nodes=int(k_used[0]),
        )
    if full_output:
        return float(vals[0]), float(resid[0]), int(k_used[0])
    return float(vals[0])
