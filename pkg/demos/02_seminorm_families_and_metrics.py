"""The two seminorm families, the constants linking them, and both metrics."""

import numpy as np

from diskalg import (
    TruncatedSeries,
    coeff_seminorm,
    envelope_metric,
    equivalence_constants,
    integral_seminorm,
    privalov_metric,
)

rng = np.random.default_rng(0)
f = TruncatedSeries(rng.standard_normal(33) + 1j * rng.standard_normal(33))
p = 2.0

# the coefficient family sum |a_n| exp(-c n^(1/(p+1))) decreases in c
print("coefficient seminorms of a random degree-32 series:")
for c in (0.25, 0.5, 1.0, 2.0, 4.0):
    print(f"  c={c:4}: {coeff_seminorm(f, p, c):.6f}")

# the radially weighted family, with its quadrature residual
print("\nintegral seminorms (value, residual, radial nodes):")
for c in (0.5, 1.0, 2.0):
    value, resid, nodes = integral_seminorm(f, p, c, full_output=True)
    print(f"  c={c:4}: {value:.8f}  resid={resid:.2e}  nodes={nodes}")

# the domination constants: the integral family at c is below the
# coefficient family at c1, and above 1/A times the one at c2
c = 1.0
c1, c2 = equivalence_constants(p, c)
lhs = integral_seminorm(f, p, c)
rhs = coeff_seminorm(f, p, c1)
print(f"\nc={c}: c1={c1:.4f}, c2={c2:.4f}")
print(f"integral at c   = {lhs:.6f}")
print(f"coefficient at c1 = {rhs:.6f}  (domination margin {rhs - lhs:.6f})")

# metrics: the boundary log-metric and the seminorm-family metric
g = TruncatedSeries(rng.standard_normal(33) + 1j * rng.standard_normal(33))
print("\nd_p(f, g)      =", privalov_metric(f, g, p))
print("lambda_p(f, g) =", envelope_metric(f, g, p))
print("lambda_p is bounded by 1 by construction; d_p of a constant shift"
      " of modulus 1 is log 2:")
print("d_p(f, f-1)    =", privalov_metric(f, f - 1, p), "vs", np.log(2.0))
