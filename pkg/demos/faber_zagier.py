"""The A_2 R-matrix and the Faber-Zagier series.

For m = 1 the hat-frame R-matrix has closed-form entries built from
a_n = (6n)!/((3n)!(2n)!) and b_n = a_n (1+6n)/(1-6n). This script solves
the quantum differential equation, expands the oscillating integral at its
two critical points, and compares both against the closed form.
"""

from fractions import Fraction

from cohft.frobenius import AmModel
from cohft.oscillating import fz_series, rmatrix_from_saddles_a
from cohft.qde import solve_r_a

ORDER = 6

model = AmModel(1)
print("roots:", model.roots)
print("Delta_i:", model.deltas)
print("disc:", model.disc())

# %% solve the QDE and expand the saddles
qde = solve_r_a(model, ORDER)
saddle = rmatrix_from_saddles_a(model, ORDER)
for n in range(3):
    print(f"z^{n}:", qde.hat.coeffs[n])

# %% compare with the closed form in the variable -z/(72 Delta^3)
fz = fz_series(ORDER)
print("a_n:", [str(x) for x in fz.a])
print("b_n:", [str(x) for x in fz.b])
mismatches = 0
for n in range(ORDER):
    for i in range(2):
        for k in range(2):
            ab = fz.a[n] + fz.b[n] if i == k else fz.a[n] - fz.b[n]
            want = Fraction(ab, 2) * (Fraction(-1, 72) / qde.deltas[k] ** 3) ** n
            mismatches += qde.hat.coeffs[n][i][k] != want
            mismatches += saddle.hat.coeffs[n][i][k] != want
print("entries checked:", 2 * 4 * ORDER, "mismatches:", mismatches)
