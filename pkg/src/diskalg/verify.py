"""Property-level verification harnesses over seeded random corpora.

Each harness sweeps a reproducible corpus of random truncated series and
emits a deterministic machine-readable report: identical seeds and
parameter grids give byte-identical JSON.  Reductions are max/sum
aggregations, so the corpus map could fan out across workers without
changing any reported number.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

import numpy as np

from ._quad import QuadratureError, WeightedRadialQuadrature
from .seminorms import SpaceParams, coeff_seminorm, equivalence_constants
from .series import TruncatedSeries, max_modulus
from .ideals import PointIdeal

__all__ = [
    "Corpus",
    "generate_corpus",
    "VerificationReport",
    "check_seminorm_domination",
    "estimate_equivalence_constant",
    "check_functional_axioms",
    "hurwitz_closure_suite",
]


# ---------------------------------------------------------------------------
# corpus generation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Corpus:
    """A seeded list of random series; regeneration is bit-identical.

    Entries are drawn sequentially from one generator stream, so a corpus
    of size 2n extends the corpus of size n entry for entry.
    """

    seed: int
    entries: tuple
    generator_spec: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def spec_dict(self) -> dict:
        return {"seed": self.seed, "size": len(self.entries),
                **self.generator_spec}


def generate_corpus(seed: int, size: int, degree_range=(4, 256),
                    decay_exponents=(0, 1)) -> Corpus:
    """Random series with log-uniform degrees and complex Gaussian coefficients.

    Each entry picks a decay exponent gamma from ``decay_exponents`` and
    scales coefficient n by max(n, 1)^-gamma, spanning flat and decaying
    spectra.
    """
    lo, hi = int(degree_range[0]), int(degree_range[1])
    if not 1 <= lo <= hi:
        raise ValueError("degree_range must satisfy 1 <= lo <= hi")
    rng = np.random.default_rng(int(seed))
    entries = []
    for _ in range(int(size)):
        deg = int(np.clip(np.exp(rng.uniform(np.log(lo), np.log(hi))), lo, hi))
        gamma = decay_exponents[int(rng.integers(len(decay_exponents)))]
        n = np.arange(deg + 1, dtype=float)
        coeffs = rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1)
        coeffs /= np.maximum(n, 1.0) ** gamma
        entries.append(TruncatedSeries(coeffs))
    return Corpus(
        seed=int(seed), entries=tuple(entries),
        generator_spec={"degree_range": [lo, hi],
                        "decay_exponents": list(decay_exponents)},
    )


def corpus_to_json(corpus: Corpus) -> str:
    payload = {
        "seed": corpus.seed,
        "generator": corpus.generator_spec,
        "entries": [
            [[float(c.real), float(c.imag)] for c in f.coeffs]
            for f in corpus
        ],
    }
    return json.dumps(payload, sort_keys=True)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


def _plain(value):
    """Recursively convert numpy scalars for JSON emission."""
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, (np.integer, int)):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one harness run over a parameter grid."""

    check: str
    parameters: dict
    checked: int
    passed: int
    failed: int
    quadrature_failures: int = 0
    worst_margin: dict | None = None
    empirical: dict = field(default_factory=dict)
    per_cell: list = field(default_factory=list)
    notes: str = ""

    def __post_init__(self):
        if self.checked != self.passed + self.failed:
            raise ValueError("checked must equal passed + failed")

    def to_dict(self) -> dict:
        return _plain({
            "check": self.check,
            "parameters": self.parameters,
            "checked": self.checked,
            "passed": self.passed,
            "failed": self.failed,
            "quadrature_failures": self.quadrature_failures,
            "worst_margin": self.worst_margin,
            "empirical": self.empirical,
            "per_cell": self.per_cell,
            "notes": self.notes,
        })

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def margins_csv(self) -> str:
        """Per-entry margin rows when the harness recorded them."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["p", "c", "entry", "degree", "margin"])
        for cell in self.per_cell:
            for row in cell.get("margins", []):
                writer.writerow([cell["p"], cell["c"], row[0], row[1], repr(row[2])])
        return buf.getvalue()


def _as_grid(values):
    if np.isscalar(values):
        return [float(values)]
    return [float(v) for v in values]


# ---------------------------------------------------------------------------
# seminorm-family equivalence harnesses
# ---------------------------------------------------------------------------


def check_seminorm_domination(corpus: Corpus, ps, cs, tol: float = 1e-9,
                              slack_factor: float = 3.0,
                              keep_margins: bool = False) -> VerificationReport:
    """Integral seminorm at c never exceeds the coefficient seminorm at c1.

    For every entry and every grid cell (p, c) the harness compares the
    radially weighted seminorm against the coefficient seminorm at
    c1 = c^(p/(p+1)), allowing ``slack_factor`` times the quadrature
    tolerance.  Entries whose quadrature cannot reach the tolerance are
    counted separately, never as violations.
    """
    ps, cs = _as_grid(ps), _as_grid(cs)
    checked = passed = failed = quad_failures = 0
    worst = None
    per_cell = {(p, c): {"p": p, "c": c, "violations": 0,
                         "worst_margin": None, "margins": []}
                for p in ps for c in cs}
    slack = slack_factor * tol
    c_min = min(cs)
    for idx, f in enumerate(corpus):
        quad = WeightedRadialQuadrature(f.coeffs, tol=tol)
        quad.prepare([(p, c_min) for p in ps])
        for p in ps:
            sp = SpaceParams(p)
            try:
                integrals = quad.integrate(p, cs)
            except QuadratureError:
                quad_failures += len(cs)
                continue
            for c in cs:
                value, residual, _ = integrals[c]
                if residual > tol * quad.tol_scale():
                    quad_failures += 1
                    continue
                c1, _ = equivalence_constants(sp, c)
                rhs = coeff_seminorm(f, sp, c1)
                margin = rhs - value
                checked += 1
                cell = per_cell[(p, c)]
                if keep_margins:
                    cell["margins"].append((idx, f.degree, margin))
                if margin < -slack * quad.tol_scale():
                    failed += 1
                    cell["violations"] += 1
                else:
                    passed += 1
                record = {"margin": margin, "entry": idx, "degree": f.degree,
                          "p": p, "c": c}
                if worst is None or margin < worst["margin"]:
                    worst = record
                if (cell["worst_margin"] is None
                        or margin < cell["worst_margin"]["margin"]):
                    cell["worst_margin"] = record
    return VerificationReport(
        check="seminorm-domination",
        parameters={"p_grid": ps, "c_grid": cs, "tol": tol,
                    "slack": slack, "corpus": corpus.spec_dict()},
        checked=checked, passed=passed, failed=failed,
        quadrature_failures=quad_failures,
        worst_margin=worst,
        per_cell=[per_cell[(p, c)] for p in ps for c in cs],
        notes="margin = coefficient seminorm at c1 minus integral seminorm "
              "at c; tolerances and slack scale with each entry's "
              "coefficient mass",
    )


def estimate_equivalence_constant(corpus: Corpus, ps, cs, tol: float = 1e-9,
                                  tiny: float = 1e-300) -> VerificationReport:
    """Empirical constant A with coeff seminorm at c <= A * integral at c2.

    A-hat is the corpus maximum of the ratio; entries whose integral
    seminorm falls below ``tiny`` are excluded.  As a stability
    diagnostic the ratio maximum is recomputed on the first half of the
    corpus, exploiting the prefix property of corpus generation (a run on
    a doubled corpus extends the smaller run).  No closed form for the
    true constant is known; only the estimate is reported.
    """
    ps, cs = _as_grid(ps), _as_grid(cs)
    half = len(corpus) // 2
    checked = quad_failures = 0
    c2_of = {p: {c: equivalence_constants(SpaceParams(p), c)[1] for c in cs}
             for p in ps}
    ratios = {(p, c): [] for p in ps for c in cs}
    for idx, f in enumerate(corpus):
        quad = WeightedRadialQuadrature(f.coeffs, tol=tol)
        quad.prepare([(p, min(c2_of[p].values())) for p in ps])
        for p in ps:
            sp = SpaceParams(p)
            try:
                integrals = quad.integrate(p, sorted(set(c2_of[p].values())))
            except QuadratureError:
                quad_failures += len(cs)
                continue
            for c in cs:
                value, residual, _ = integrals[c2_of[p][c]]
                if residual > tol * quad.tol_scale():
                    quad_failures += 1
                    continue
                checked += 1
                if value < tiny:
                    continue
                ratios[(p, c)].append((coeff_seminorm(f, sp, c) / value, idx))
    cells = []
    for p in ps:
        for c in cs:
            usable = ratios[(p, c)]
            cell = {"p": p, "c": c, "c2": c2_of[p][c], "used": len(usable)}
            if not usable:
                cell["inconclusive"] = True
            else:
                a_hat, at = max(usable)
                cell["a_hat"] = a_hat
                cell["attained_at"] = at
                first_half = [rv for rv in usable if rv[1] < half]
                if first_half:
                    a_half = max(first_half)[0]
                    cell["a_hat_half_corpus"] = a_half
                    cell["relative_change_on_doubling"] = (
                        (a_hat - a_half) / a_half if a_half > 0 else np.inf)
            cells.append(cell)
    return VerificationReport(
        check="equivalence-constant",
        parameters={"p_grid": ps, "c_grid": cs, "tol": tol,
                    "corpus": corpus.spec_dict()},
        checked=checked, passed=checked, failed=0,
        quadrature_failures=quad_failures,
        empirical={"cells": cells},
        per_cell=cells,
        notes="a_hat = max over corpus of coeff seminorm / integral seminorm at c2",
    )


# ---------------------------------------------------------------------------
# point-functional axioms
# ---------------------------------------------------------------------------


def check_functional_axioms(corpus: Corpus, lam, sp=2.0, rel_tol: float = 1e-12,
                            small_c: float = 0.01, pair_seed: int = 0,
                            pairs: int | None = None) -> VerificationReport:
    """Additivity, homogeneity, multiplicativity and continuity of f -> f(lambda).

    Pairs are drawn from the corpus with a seeded stream.  The continuity
    surrogate is the concrete chain |f(lambda)| <= sum |a_n| |lambda|^n
    <= sum |a_n| <= exp(c N^(1/(p+1))) * coefficient seminorm at a small c.
    """
    sp = SpaceParams.of(sp)
    ideal = PointIdeal(lam)
    lam = ideal.lam
    rng = np.random.default_rng(int(pair_seed))
    n_entries = len(corpus)
    checked = passed = failed = 0
    worst = None
    axes = {"additivity": 0.0, "homogeneity": 0.0, "multiplicativity": 0.0,
            "continuity": 0.0}

    def record(kind, err, idx):
        nonlocal checked, passed, failed, worst
        checked += 1
        ok = err <= rel_tol
        passed += ok
        failed += not ok
        axes[kind] = max(axes[kind], err)
        if worst is None or err > worst["margin"]:
            worst = {"margin": err, "axiom": kind, "entry": idx}

    for idx in range(n_entries if pairs is None else int(pairs)):
        f = corpus[int(rng.integers(n_entries))]
        g = corpus[int(rng.integers(n_entries))]
        s = complex(rng.standard_normal(), rng.standard_normal())
        vf, vg = f.eval(lam), g.eval(lam)
        scale = 1.0 + abs(vf) + abs(vg)
        record("additivity", abs((f + g).eval(lam) - vf - vg) / scale, idx)
        record("homogeneity", abs(f.scale(s).eval(lam) - s * vf) / (1.0 + abs(s * vf)), idx)
        record("multiplicativity", abs(f.mul(g).eval(lam) - vf * vg) / (1.0 + abs(vf * vg)), idx)
        absf = np.abs(f.coeffs)
        chain1 = float(np.sum(absf * np.abs(lam) ** np.arange(len(f))))
        chain2 = float(np.sum(absf))
        bound = (np.exp(small_c * f.degree**sp.alpha)
                 * coeff_seminorm(f, sp, small_c))
        eps = 1e-12 * (1.0 + chain2)
        ok = abs(vf) <= chain1 + eps and chain1 <= chain2 + eps and chain2 <= bound + eps
        record("continuity", 0.0 if ok else 1.0, idx)

    return VerificationReport(
        check="functional-axioms",
        parameters={"lambda": [lam.real, lam.imag], "p": sp.p,
                    "rel_tol": rel_tol, "small_c": small_c,
                    "pair_seed": pair_seed, "corpus": corpus.spec_dict()},
        checked=checked, passed=passed, failed=failed,
        worst_margin=worst,
        empirical={"worst_errors": axes},
    )


# ---------------------------------------------------------------------------
# closedness under uniform-on-compacta limits
# ---------------------------------------------------------------------------


def hurwitz_closure_suite(lam, r: float, seed: int = 0, sequences: int = 8,
                          terms: int = 24, degree: int = 12,
                          explicit=None) -> VerificationReport:
    """Limits of ideal elements stay in the ideal, quantitatively.

    Generates sequences f_k = (z - lambda)(g + h/k) of functions vanishing
    at lambda that converge uniformly on |z| <= r (r > |lambda|), and checks
    the closure bound |f(lambda)| <= sup_{|z|<=r} |f_k - f| at every k,
    where f is the limit.  A supplied sequence whose sup distances fail to
    decrease is reported as invalid input rather than checked.

    ``explicit`` accepts a list of (members, limit) pairs to probe
    hand-built sequences, including ones whose limit leaves the ideal.
    """
    ideal = PointIdeal(lam)
    lam_c = ideal.lam
    if not r > abs(lam_c):
        raise ValueError("need r > |lambda| for a compact set around the point")
    if not r < 1.0:
        raise ValueError("radius must stay inside the disk")
    rng = np.random.default_rng(int(seed))
    linear = TruncatedSeries([-lam_c, 1.0])

    suites = []
    if explicit is None:
        for _ in range(int(sequences)):
            g = TruncatedSeries(rng.standard_normal(degree + 1)
                                + 1j * rng.standard_normal(degree + 1))
            h = TruncatedSeries(rng.standard_normal(degree + 1)
                                + 1j * rng.standard_normal(degree + 1))
            members = [linear.mul(g + h.scale(1.0 / k))
                       for k in range(1, int(terms) + 1)]
            suites.append((members, linear.mul(g)))
    else:
        suites = [(list(members), limit) for members, limit in explicit]

    checked = passed = failed = 0
    invalid = 0
    worst = None
    records = []
    for si, (members, limit) in enumerate(suites):
        dists = [max_modulus(fk - limit, r) for fk in members]
        member_values = [abs(fk.eval(lam_c)) for fk in members]
        limit_value = abs(limit.eval(lam_c))
        # a constant sequence (all distances zero) is trivially convergent
        non_convergent = (len(dists) >= 2 and dists[0] > 0.0
                          and dists[-1] >= dists[0])
        members_ok = max(member_values) <= 1e-9 * (1.0 + max(dists))
        rec = {"sequence": si, "limit_value": limit_value,
               "distances": dists, "member_values": member_values,
               "members_in_ideal": bool(members_ok),
               "invalid_input": bool(non_convergent or not members_ok)}
        records.append(rec)
        if rec["invalid_input"]:
            invalid += 1
            continue
        for k, d in enumerate(dists):
            checked += 1
            margin = d - limit_value
            ok = margin >= -1e-12 * (1.0 + d)
            passed += ok
            failed += not ok
            if worst is None or margin < worst["margin"]:
                worst = {"margin": margin, "sequence": si, "k": k + 1}
    return VerificationReport(
        check="hurwitz-closure",
        parameters={"lambda": [lam_c.real, lam_c.imag], "r": r, "seed": seed,
                    "sequences": sequences, "terms": terms, "degree": degree,
                    "explicit": explicit is not None},
        checked=checked, passed=passed, failed=failed,
        quadrature_failures=0,
        worst_margin=worst,
        empirical={"invalid_sequences": invalid, "records": records},
        notes="bound checked: |limit(lambda)| <= sup_{|z|<=r} |f_k - limit| at every k",
    )
