"""Build truncated series, evaluate them, and probe circle functionals."""

import numpy as np

from diskalg import TruncatedSeries, max_modulus, mean_modulus_p, synthetic_divide

# a small polynomial: f(z) = 1 + 2z - z^3
f = TruncatedSeries([1.0, 2.0, 0.0, -1.0])
print("f coeffs:", f.coeffs)
print("f(0.5)  :", f(0.5))
print("degree  :", f.degree)

# ring operations carry full degree
g = TruncatedSeries([0.0, 1.0])        # g(z) = z
print("\n(f*g) coeffs:", f.mul(g).coeffs)
print("(f+g) coeffs:", (f + g).coeffs)

# deflation: f(z) - f(lam) = A(z) (z - lam) exactly
lam = 0.3 + 0.4j
A = synthetic_divide(f, lam)
rebuilt = A.mul(TruncatedSeries([-lam, 1.0])) + f(lam)
print("\ndeflation factor A:", A.coeffs)
print("reconstruction error:", np.max(np.abs(rebuilt.coeffs - f.coeffs)))

# modulus functionals on circles |z| = r; the max is attained on the
# boundary, and both grow with the radius
for r in (0.2, 0.5, 0.8, 0.95):
    mx = max_modulus(f, r)
    m2 = mean_modulus_p(f, r, 2.0)
    m15 = mean_modulus_p(f, r, 1.5)
    print(f"r={r:4}:  M_inf={mx:.6f}  M_2={m2:.6f}  M_1.5={m15:.6f}")

# Parseval check for the p = 2 mean
r = 0.8
n = np.arange(len(f))
parseval = np.sqrt(np.sum(np.abs(f.coeffs) ** 2 * r ** (2 * n)))
print("\nParseval at r=0.8:", parseval, "vs quadrature",
      mean_modulus_p(f, r, 2.0))
