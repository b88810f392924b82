"""Coefficient growth at the membership frontier of the exponent-p algebra.

Membership is equivalent to log^+ |a_n| / n^(1/(p+1)) -> 0, so families
with |a_n| = exp(eps n^(1/(p+1))) sit exactly on the frontier: any fixed
eps > 0 is outside, while a slowly vanishing prefactor stays inside.
"""

import numpy as np

from diskalg import CoefficientRule, SpaceParams, classify, growth_profile, radial_growth_probe

p = 2.0
sp = SpaceParams(p)
beta = sp.alpha
print(f"p = {p}, frontier exponent n^{{1/(p+1)}} = n^{beta:.4f}\n")

rules = {
    "a_n = 1           (inside)  ": CoefficientRule.geometric(1.0),
    "a_n = e^{0.1 n^b}  (outside) ": CoefficientRule.stretched_exp(0.1, beta),
    "a_n = e^{n^b/log n} (inside) ": CoefficientRule.stretched_exp_damped(beta),
}

for label, rule in rules.items():
    verdict = classify(rule, sp, n_max=2**14)
    print(f"{label}: {verdict.verdict.value:12s} "
          f"limsup estimate {verdict.limsup_estimate:.5f} "
          f"(threshold {verdict.threshold})")
    maxima = ", ".join(f"{m:.4f}" for _, m in verdict.checkpoints[-4:])
    print(f"   window maxima across last doubling checkpoints: {maxima}")

# the profiles themselves: the outside family is flat at 0.1, the damped
# one decays like 1/log n -- too slowly to see without extrapolation
n = np.array([64, 512, 4096, 16384])
for label, rule in rules.items():
    s = growth_profile(rule, sp, 2**14)
    print(f"\n{label} s_n at n={n.tolist()}:", np.round(s[n - 1], 5))

# the defining radial-growth quantity for a truncation of 1/(1-z):
# (1-r)^(1/p) log^+ M_inf decays toward the boundary for members
probe = radial_growth_probe(CoefficientRule.geometric(1.0), sp,
                            [0.9, 0.99, 0.999], truncation_degree=4096)
print("\nradial growth probe for truncated 1/(1-z):", np.round(probe, 5))
