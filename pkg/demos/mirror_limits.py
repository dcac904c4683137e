"""Recovering the A_{m+1} R-matrix from equivariant P^m.

Rescaling z by the spread of the weights and expanding the P^m R-matrix
in that parameter leaves no positive powers, and the leading term is the
A-side R-matrix after substituting the matchup of parameters. In the
Airy limit the comparison needs an intermediate R-matrix built from the
series phi, which solves a first-order ODE; without the rescaling its
entries would have poles.
"""

from cohft.comparison import intermediate_r, obstruction_m2, phi_series, thm1_check

# %% lambda expansion for m = 1 at the smallest interesting orders
rep = thm1_check(1, 3, 3)
print(rep.line())
print("positive powers before rescaling:", rep.details["unscaledPositivePowers"])

# %% the phi series and its ODE
for m in (1, 2):
    ph = phi_series(m, 6)
    print(f"m={m} phi inverse coefficients:", [str(x) for x in ph.inverse_coeffs])
    print(f"m={m} ODE residual vanishes:", ph.ode_residual().is_zero())

# %% intermediate R-matrix in the Airy limit
_, rep = intermediate_r(1, 3, 6)
print(rep.line())

# %% away from the Airy limit the z^1 coefficient acquires disc poles for m = 2
rep = obstruction_m2()
print(rep.line())
print("first summand at t1 = 0:", rep.details["firstAtT1Zero"])
