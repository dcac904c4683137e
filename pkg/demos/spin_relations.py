"""Tautological relations from the 3-spin theory.

Reconstructing the A_2 CohFT by the R-matrix action gives classes whose
coefficients are rational in t1. Poles along the discriminant t1 = 0 cannot
appear in the true class, so their coefficients are relations among
decorated strata. On M_{1,1} this recovers the classical relation between
psi, kappa_1 and the boundary.
"""

from fractions import Fraction

from cohft.strata import enumerate_stable_graphs, relations, spin_theory, witten_degree

# %% the stable graphs that index the strata
for g, n in [(1, 1), (0, 4), (2, 0)]:
    print(f"({g},{n}):", len(enumerate_stable_graphs(g, n)), "stable graphs")

# %% reconstruct Omega_{1,1}(X) and read off its polar part
theory = spin_theory(1, 1)
print("disc:", theory.disc)
print("degree of the 3-spin class:", witten_degree(3, 1, (1,)))
print(theory.reconstruct(1, 1, (1,)))

(vec,) = relations(1, 1, 1, 1, (1,))
for sid, c in sorted(vec.coefficients.items()):
    print(f"  {str(c):>6}  [{sid}]")

# %% psi and kappa_1 integrate to 1/24 on M_{1,1}-bar, the boundary point to 1
integrals = {"g1|L0^1|E|K": Fraction(1, 24), "g1|L0^0|E|K1": Fraction(1, 24), "g0|L0^0|E0^0-0^0|K": Fraction(1)}
print("integral of the relation:", sum(c * integrals[s] for s, c in vec.coefficients.items()))

# %% genus zero, four points: the relation between boundary points, psi and kappa
for vec in relations(1, 0, 4, 1):
    print(vec.label, "with", len(vec.coefficients), "strata")
