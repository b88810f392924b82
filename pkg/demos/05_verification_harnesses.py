"""Seeded corpus sweeps: seminorm domination, the empirical constant,
functional axioms, and closure under uniform limits.

Reports are deterministic given the seed; rerunning this script produces
byte-identical JSON.
"""

from diskalg import (
    check_functional_axioms,
    check_seminorm_domination,
    estimate_equivalence_constant,
    generate_corpus,
    hurwitz_closure_suite,
)

corpus = generate_corpus(seed=7, size=400)
print(f"corpus: {len(corpus)} series, degrees "
      f"{min(f.degree for f in corpus)}..{max(f.degree for f in corpus)}\n")

# first domination inequality: zero violations expected
rep = check_seminorm_domination(corpus, [1.5, 2.0, 3.0], [0.5, 1.0, 2.0],
                                tol=1e-7)
print("seminorm domination:")
print(f"  checked {rep.checked}, violations {rep.failed}, "
      f"quadrature failures {rep.quadrature_failures}")
print(f"  worst margin {rep.worst_margin['margin']:.5f} at entry "
      f"{rep.worst_margin['entry']} (degree {rep.worst_margin['degree']})\n")

# the reverse inequality holds up to a constant; estimate it per cell
rep = estimate_equivalence_constant(corpus, [2.0], [0.5, 1.0, 2.0], tol=1e-6)
print("empirical equivalence constants (p=2):")
for cell in rep.per_cell:
    print(f"  c={cell['c']}: A-hat={cell['a_hat']:.3f} "
          f"(c2={cell['c2']:.4f}, attained at entry {cell['attained_at']})")

# evaluation axioms at a fixed disk point
rep = check_functional_axioms(corpus, 0.35 + 0.2j, pairs=200)
print("\nfunctional axioms: failures =", rep.failed,
      "worst errors =", {k: f"{v:.2e}"
                         for k, v in rep.empirical["worst_errors"].items()})

# sequences in the kernel converging uniformly keep their limit there
rep = hurwitz_closure_suite(0.3, 0.8, seed=1, sequences=6, terms=20)
print("\nclosure suite: checked", rep.checked, "bounds, failures", rep.failed)
record = rep.empirical["records"][0]
print("  sample distance decay:",
      [f"{d:.4f}" for d in record["distances"][:6]], "...")
