"""Shared quadrature machinery: FFT circle sampling and graded radial rules.

Everything here works on raw complex coefficient arrays (index = power).
The public modules wrap these helpers behind their own signatures.
"""

from __future__ import annotations

import numpy as np
from scipy.fft import ifft

__all__ = [
    "QuadratureError",
    "circle_values",
    "CircleSampler",
    "adaptive_circle_mean",
    "WeightedRadialQuadrature",
]


class QuadratureError(RuntimeError):
    """A quadrature did not reach the requested tolerance within budget."""

    def __init__(self, message, residual, nodes):
        super().__init__(message)
        self.residual = float(residual)
        self.nodes = int(nodes)


# ---------------------------------------------------------------------------
# circle sampling
# ---------------------------------------------------------------------------


def _scaled_coeffs(coeffs, radii):
    """Rows a_n * r^n for each radius, via cumulative products."""
    radii = np.atleast_1d(np.asarray(radii, dtype=float))
    m = radii.size
    n = coeffs.size
    powers = np.empty((m, n), dtype=float)
    powers[:, 0] = 1.0
    if n > 1:
        powers[:, 1:] = radii[:, None]
        np.cumprod(powers, axis=1, out=powers)
    return powers * coeffs[None, :]


def _sample_abs2(scaled, k):
    """|f(r e^{i theta_j})|^2 at k equispaced angles, one row per radius.

    Coefficients beyond index k are folded modulo k, which keeps the sample
    values exact for any k (the fold is what the DFT sees anyway).
    """
    m, n = scaled.shape
    if n <= k:
        folded = np.zeros((m, k), dtype=complex)
        folded[:, :n] = scaled
    else:
        blocks = -(-n // k)
        buf = np.zeros((m, blocks * k), dtype=complex)
        buf[:, :n] = scaled
        folded = buf.reshape(m, blocks, k).sum(axis=1)
    samples = ifft(folded, axis=1, overwrite_x=True) * k
    return samples.real**2 + samples.imag**2


def _abs2_power(abs2, p):
    """abs2^(p/2) with sqrt factorizations for the common exponents."""
    if p == 2.0:
        return abs2
    if p == 1.0:
        return np.sqrt(abs2)
    if p == 3.0:
        return abs2 * np.sqrt(abs2)
    if p == 1.5:
        root = np.sqrt(abs2)
        return root * np.sqrt(root)
    if p == 4.0:
        return abs2 * abs2
    return abs2 ** (p / 2.0)


def circle_values(coeffs, r, k):
    """Values f(r e^{2 pi i j / k}) for j = 0..k-1."""
    scaled = _scaled_coeffs(np.asarray(coeffs, dtype=complex), [float(r)])
    n = scaled.shape[1]
    blocks = -(-n // k)
    buf = np.zeros((1, blocks * k), dtype=complex)
    buf[:, :n] = scaled
    folded = buf.reshape(1, blocks, k).sum(axis=1)
    return (ifft(folded, axis=1) * k)[0]


def _effective_bandwidth(coeffs, radii, rel=1e-17):
    """Largest power still contributing at each radius.

    Smallest index m such that max_{n>m} |a_n| r^n falls below rel * scale;
    used to pick the initial angular sample count.
    """
    a = np.abs(np.asarray(coeffs))
    n = a.size
    radii = np.atleast_1d(np.asarray(radii, dtype=float))
    if n == 1:
        return np.zeros(radii.shape, dtype=int)
    scale = a.max() + 1e-300
    suf = np.maximum.accumulate(a[::-1])[::-1]
    thresh = np.log(rel * scale / (suf + 1e-300))
    logr = np.log(np.maximum(radii, 1e-300))
    ok = np.outer(logr, np.arange(n)) <= thresh[None, :]
    first = np.argmax(ok, axis=1)
    out = np.where(ok[np.arange(radii.size), first], first, n - 1)
    out[logr >= 0.0] = n - 1
    return out.astype(int)


def _round_k(k):
    """Round an angular count up to an FFT-friendly 5-smooth size."""
    k = max(int(k), 16)
    best = 1 << (k - 1).bit_length()
    for shape in (3, 5, 9, 15):
        doublings = max(0, -(-k // shape) - 1).bit_length()
        cand = shape << doublings
        if k <= cand < best:
            best = cand
    return best


class CircleSampler:
    """Per-series cache of |f|^2 circle samples, keyed by radius block.

    One instance is shared across every growth exponent p and weight
    parameter c that needs the same series, so FFT work is paid once.
    """

    def __init__(self, coeffs, k_cap=1 << 18):
        self.coeffs = np.asarray(coeffs, dtype=complex)
        self.k_cap = int(k_cap)
        self._scaled = {}
        self._abs2 = {}
        self.fft_points = 0

    def scaled(self, key, radii):
        got = self._scaled.get(key)
        if got is None:
            got = _scaled_coeffs(self.coeffs, radii)
            self._scaled[key] = got
        return got

    def abs2(self, key, radii, k):
        got = self._abs2.get((key, k))
        if got is None:
            got = _sample_abs2(self.scaled(key, radii), k)
            self._abs2[(key, k)] = got
            self.fft_points += got.size
            # keep only the two largest k per block to bound memory
            ks = sorted(kk for (b, kk) in self._abs2 if b == key)
            for kk in ks[:-2]:
                del self._abs2[(key, kk)]
        return got

    def initial_k(self, radii):
        bw = _effective_bandwidth(self.coeffs, radii)
        return _round_k(2 * int(bw.max()) + 16)


def adaptive_circle_mean(sampler, key, radii, transform, targets,
                         finalize=None, k0=None, k_cap=None):
    """Angular means of transform(|f|^2), refined until they settle.

    Doubles the sample count until successive finalized estimates move by
    less than the per-radius absolute target, or the cap is hit.  Returns
    (values, residuals, k_used); residuals are the last observed movement
    per radius, which callers compare against their tolerance.
    """
    radii = np.atleast_1d(np.asarray(radii, dtype=float))
    targets = np.broadcast_to(np.asarray(targets, dtype=float), radii.shape)
    if finalize is None:
        finalize = lambda x: x
    k_cap = sampler.k_cap if k_cap is None else int(k_cap)
    k = int(k0) if k0 else sampler.initial_k(radii)
    values = finalize(transform(sampler.abs2(key, radii, k)).mean(axis=1))
    resid = np.full(radii.size, np.inf)
    k_used = np.full(radii.size, k, dtype=int)
    active = np.ones(radii.size, dtype=bool)
    while active.any() and 2 * k <= k_cap:
        k *= 2
        new = finalize(transform(sampler.abs2(key, radii, k)).mean(axis=1))
        delta = np.abs(new - values)
        resid[active] = delta[active]
        k_used[active] = k
        values = new
        active &= delta > targets
    # a cap hit without a single refinement leaves no movement estimate;
    # fall back to the magnitude of the values themselves
    unmeasured = ~np.isfinite(resid)
    resid[unmeasured] = np.abs(values[unmeasured])
    return values, resid, k_used


# ---------------------------------------------------------------------------
# Gauss-Kronrod 7-15 (standard QUADPACK constants)
# ---------------------------------------------------------------------------

_GK_NODES = np.array([
    -0.991455371120812639206854697526329,
    -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926,
    -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730,
    -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245,
    0.0,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329,
])

_GK_WEIGHTS = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970,
])

# the embedded 7-point Gauss rule lives on the odd Kronrod nodes
_G7_WEIGHTS = np.zeros(15)
_G7_WEIGHTS[1::2] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
    0.381830050505118944950369775488975,
    0.279705391489276667901467771423780,
    0.129484966168869693270611432679082,
]


# ---------------------------------------------------------------------------
# radial quadrature against exp(-c (1-r)^{-1/p}) weights
# ---------------------------------------------------------------------------


def _dyadic_panels(depth):
    """[0, 1/2] followed by [1 - 2^-k, 1 - 2^-(k+1)] for k = 1..depth."""
    panels = [(0.0, 0.5)]
    for k in range(1, depth + 1):
        panels.append((1.0 - 2.0 ** (-k), 1.0 - 2.0 ** (-k - 1)))
    return panels


def _weight(radii, p, c):
    s = np.maximum(1.0 - radii, 1e-300)
    return np.exp(-c * s ** (-1.0 / p))


def _panel_depth(p, c, coeff_sum, tol):
    """Depth at which the untouched tail of the integral drops below tol/8."""
    bound = max(coeff_sum, 1e-300)
    for k in range(1, 64):
        if bound * 2.0 ** (-k) * np.exp(-c * 2.0 ** (k / p)) <= tol / 8.0:
            return k
    return 63


class WeightedRadialQuadrature:
    """Adaptive evaluation of int_0^1 exp(-c (1-r)^{-1/p}) M_p(r, f) dr.

    Runs a Gauss-Kronrod 7-15 pair on dyadic panels graded toward r = 1,
    splitting panels until the embedded error estimate clears the requested
    tolerance.  One instance can serve several growth exponents p and any
    number of weight parameters c per p; the circle samples of f are shared
    across all of them, batched into as few FFT calls as possible.

    ``integrate`` never raises; callers inspect the returned residuals.
    """

    def __init__(self, coeffs, tol=1e-9, node_budget=20000, k_cap=1 << 18,
                 parseval_for_p2=True):
        coeffs = np.asarray(coeffs, dtype=complex)
        self.mass = float(np.sum(np.abs(coeffs)))
        # all adaptive decisions run on unit-mass coefficients, which makes
        # the whole rule exactly equivariant under scaling (bitwise so for
        # power-of-two factors); tol is honored per unit of mass
        if self.mass > 0.0:
            self.coeffs = coeffs / self.mass
            self.tol = float(tol) / min(self.mass, 1.0)
        else:
            self.coeffs = coeffs
            self.tol = float(tol)
        self.coeff_sum = 1.0 if self.mass > 0.0 else 0.0
        self.node_budget = int(node_budget)
        self.parseval_for_p2 = bool(parseval_for_p2)
        self.sampler = CircleSampler(self.coeffs, k_cap=k_cap)
        self._mean_cache = {}
        self._k0 = {}

    def tol_scale(self):
        """Factor translating the nominal tol into the result's units."""
        return max(1.0, self.mass)

    # -- panel geometry and budgets ----------------------------------------

    def _panel_radii(self, panel):
        lo, hi = panel
        return 0.5 * (lo + hi) + 0.5 * (hi - lo) * _GK_NODES

    def _panel_target(self, panel, p, c_min, weighted_measure, n_panels):
        """Absolute angular target on M_p over one panel.

        Splits the tol/4 angular budget two ways: a uniform error density
        against the weighted measure sum(width * w_max), plus an equal
        per-panel share that frees panels with dead weight from sampling
        finely.  Their combined weighted total stays below tol/4.
        """
        width = panel[1] - panel[0]
        w_max = float(_weight(np.array([panel[0]]), p, c_min)[0])
        scale = self.coeff_sum + 1.0
        density = self.tol / (8.0 * max(weighted_measure, 1e-300))
        share = self.tol / (8.0 * n_panels * max(width * w_max, 1e-300))
        return float(np.clip(max(density, share), 1e-14 * scale, 0.05 * scale))

    def _initial_panels(self, p, c_min):
        """Dyadic panels graded toward r = 1, deep enough for the weight tail."""
        depth = _panel_depth(p, c_min, self.coeff_sum, self.tol)
        return _dyadic_panels(depth), depth

    # -- batched circle means ----------------------------------------------

    def _ensure_scaled(self, panels):
        missing = [q for q in panels if q not in self.sampler._scaled]
        if not missing:
            return
        radii = np.concatenate([self._panel_radii(q) for q in missing])
        scaled = _scaled_coeffs(self.coeffs, radii)
        for i, q in enumerate(missing):
            self.sampler._scaled[q] = scaled[15 * i: 15 * (i + 1)]

    def _k0_of(self, panel):
        got = self._k0.get(panel)
        if got is None:
            bw = _effective_bandwidth(self.coeffs, self._panel_radii(panel))
            got = _round_k(2 * int(bw.max()) + 16)
            self._k0[panel] = got
        return got

    def _batched_means(self, jobs):
        """Fill the mean cache for (panel, p, target) jobs in few FFT passes.

        Panels that start at the same angular count advance in lockstep:
        each doubling round samples only the rows some job still needs, so
        the expensive kink-resolving radii shrink to a small subset while
        the FFT work stays batched.  All p values share every sample, and
        a job whose cached values were built to a looser target resumes its
        doubling chain instead of starting over.
        """
        work = []
        for q, p, t in jobs:
            if p == 2.0 and self.parseval_for_p2:
                continue
            cached = self._mean_cache.get((q, p))
            if cached is not None and cached[2] <= 4.0 * t:
                continue
            work.append((q, p, t, cached))
        if not work:
            return
        self._ensure_scaled(sorted({q for q, _, _, _ in work}))
        groups = {}
        for q, p, t, cached in work:
            start_k = cached[3] if cached is not None else self._k0_of(q)
            groups.setdefault(start_k, []).append((q, p, t, cached))
        for start_k, gwork in groups.items():
            panels = sorted({q for q, _, _, _ in gwork})
            offset = {q: 15 * i for i, q in enumerate(panels)}
            rows = np.concatenate([self.sampler._scaled[q] for q in panels])
            state = {}
            fresh_panels = sorted({q for q, _, _, cached in gwork
                                   if cached is None})
            abs2 = None
            if fresh_panels:
                fresh_rows = np.concatenate(
                    [self.sampler._scaled[q] for q in fresh_panels])
                abs2 = _sample_abs2(fresh_rows, start_k)
                self.sampler.fft_points += abs2.size
                fresh_offset = {q: 15 * i for i, q in enumerate(fresh_panels)}
            for q, p, t, cached in gwork:
                if cached is None:
                    sl = slice(fresh_offset[q], fresh_offset[q] + 15)
                    vals = _abs2_power(abs2[sl], p).mean(axis=1) ** (1.0 / p)
                    resid = np.abs(vals)
                    live = np.arange(offset[q], offset[q] + 15)
                else:
                    vals = cached[0].copy()
                    resid = cached[1].copy()
                    live = offset[q] + np.flatnonzero(resid > t)
                state[(q, p)] = {"vals": vals, "resid": resid, "target": t,
                                 "live": live, "k": start_k}
            k = start_k
            while 2 * k <= self.sampler.k_cap:
                need = np.unique(np.concatenate(
                    [s["live"] for s in state.values()]))
                if need.size == 0:
                    break
                k *= 2
                abs2 = _sample_abs2(rows[need], k)
                self.sampler.fft_points += abs2.size
                powed = {}
                for (q, p), s in state.items():
                    if s["live"].size == 0:
                        continue
                    if p not in powed:
                        powed[p] = _abs2_power(abs2, p)
                    pos = np.searchsorted(need, s["live"])
                    new = powed[p][pos].mean(axis=1) ** (1.0 / p)
                    local = s["live"] - offset[q]
                    delta = np.abs(new - s["vals"][local])
                    s["vals"][local] = new
                    s["resid"][local] = delta
                    s["live"] = s["live"][delta > s["target"]]
                    s["k"] = k
            for (q, p), s in state.items():
                self._mean_cache[(q, p)] = (
                    s["vals"], s["resid"], s["target"], s["k"])

    def prepare(self, specs):
        """Prime the sample cache for several (p, c_min) pairs at once.

        Callers that will ask for integrals at different growth exponents
        over the same series should declare them here first; the initial
        panel grids of all exponents then share one batched sampling pass.
        """
        if self.coeff_sum == 0.0:
            return
        jobs = []
        for p, c_min in specs:
            p = float(p)
            panels, _ = self._initial_panels(p, float(c_min))
            measure, n_panels = self._weighted_measure(p, float(c_min), panels)
            for q in panels:
                jobs.append((q, p, self._panel_target(
                    q, p, float(c_min), measure, n_panels)))
        self._batched_means(jobs)

    def _weighted_measure(self, p, c_min, panels):
        widths = np.array([hi - lo for lo, hi in panels])
        w_max = _weight(np.array([lo for lo, _ in panels]), p, c_min)
        return float(np.sum(widths * w_max)), len(panels)

    # -- per-panel values ----------------------------------------------------

    def _mp_on_panel(self, panel, p, target):
        """(M_p values, angular residuals) on the Kronrod radii of a panel."""
        cached = self._mean_cache.get((panel, p))
        if cached is not None and cached[2] <= 4.0 * target:
            return cached[0], cached[1]
        if p == 2.0 and self.parseval_for_p2:
            self._ensure_scaled([panel])
            scaled = self.sampler._scaled[panel]
            vals = np.sqrt(np.sum(scaled.real**2 + scaled.imag**2, axis=1))
            out = (vals, np.zeros_like(vals), 0.0, 0)
            self._mean_cache[(panel, p)] = out
            return out[0], out[1]
        self._batched_means([(panel, p, target)])
        got = self._mean_cache[(panel, p)]
        return got[0], got[1]

    # -- assembly -------------------------------------------------------------

    def integrate(self, p, c_list):
        """Integrals for every c in c_list, sharing all circle samples.

        Returns {c: (value, residual, radial_node_count)}.  The residual
        combines the Kronrod estimate, angular refinement movement and the
        untouched tail beyond the deepest panel.
        """
        p = float(p)
        c_list = [float(c) for c in c_list]
        if self.coeff_sum == 0.0:
            return {c: (0.0, 0.0, 0) for c in c_list}
        c_min = min(c_list)
        panels, depth = self._initial_panels(p, c_min)
        measure, n_panels = self._weighted_measure(p, c_min, panels)
        targets = {q: self._panel_target(q, p, c_min, measure, n_panels)
                   for q in panels}
        self._batched_means([(q, p, targets[q]) for q in panels])
        nodes = 15 * n_panels

        while True:
            pa = np.asarray(panels)
            lo, hi = pa[:, 0], pa[:, 1]
            half_w = 0.5 * (hi - lo)
            radii = 0.5 * (lo + hi)[:, None] + half_w[:, None] * _GK_NODES[None, :]
            vals = np.empty_like(radii)
            theta = np.empty_like(radii)
            for i, q in enumerate(panels):
                vals[i], theta[i] = self._mp_on_panel(q, p, targets[q])
            cells = {}
            errs = {}
            for c in c_list:
                w = _weight(radii, p, c)
                wv = w * vals
                k15 = half_w * (wv @ _GK_WEIGHTS)
                g7 = half_w * (wv @ _G7_WEIGHTS)
                # the movement estimate can trail the true angular error
                # when per-level decay is slow; doubled for safety
                th = 2.0 * half_w * ((w * theta) @ _GK_WEIGHTS)
                cells[c] = (k15, np.abs(k15 - g7), th)
                errs[c] = float(np.sum(cells[c][1]) + np.sum(th))
            if all(errs[c] <= self.tol / 2.0 for c in c_list):
                break
            if nodes >= self.node_budget:
                break
            # refine every panel that materially contributes to the worst
            # estimate, in one batched round
            worst_c = max(c_list, key=lambda c: errs[c])
            _, rad_err, th_err = cells[worst_c]
            panel_err = rad_err + th_err
            cut = max(self.tol / (4.0 * len(panels)), 0.05 * float(panel_err.max()))
            offenders = np.flatnonzero(panel_err > cut)
            fresh = []
            new_panels = list(panels)
            for i in offenders:
                q = panels[i]
                if th_err[i] > rad_err[i]:
                    targets[q] = targets[q] / 8.0
                    fresh.append(q)
                else:
                    qlo, qhi = q
                    mid = 0.5 * (qlo + qhi)
                    new_panels.remove(q)
                    del targets[q]
                    for child in ((qlo, mid), (mid, qhi)):
                        targets[child] = self._panel_target(
                            child, p, c_min, measure, n_panels)
                        new_panels.append(child)
                        fresh.append(child)
            panels = new_panels
            self._batched_means([(q, p, targets[q]) for q in fresh])
            nodes += 15 * len(fresh)
        results = {}
        tail_width = 2.0 ** (-depth)
        for c in c_list:
            k15, rad_err, th = cells[c]
            value = float(np.sum(k15))
            resid = float(np.sum(rad_err) + np.sum(th))
            resid += self.coeff_sum * tail_width * np.exp(-c * 2.0 ** (depth / p))
            results[c] = (value * self.mass, resid * self.mass, nodes)
        return results
