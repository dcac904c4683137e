"""R-matrix container and the connection data shared by all constructions.

An R-matrix in normalized idempotents has entries R_ij = sqrt(Delta_i / Delta_j) R^_ij.
We store the square-root-free hat frame R^ together with the Delta_i, and
convert to the flat basis 1, X, .., X^m by R~ = M R^ M^{-1}.
"""

from __future__ import annotations

from .algebra.series import SeriesMatrix, mat_mul
from .charts import synthetic_division, poly_from_roots


class RMatrix:
    """z-series R-matrix in the hat frame.

    ``side`` is "A" or "P"; ``provenance`` records which construction
    produced it ("qde", "saddle", ...); ``chart`` is the differential field
    of the entries when there is one.
    """

    def __init__(self, hat: SeriesMatrix, roots, deltas, side="A", provenance="qde", chart=None, kappa=1):
        self.hat = hat
        self.roots = list(roots)
        self.deltas = list(deltas)
        self.side = side
        self.provenance = provenance
        self.chart = chart
        self.kappa = kappa

    @property
    def order(self) -> int:
        return self.hat.order

    @property
    def dim(self) -> int:
        return self.hat.dim

    def __repr__(self):
        return f"RMatrix(side={self.side}, provenance={self.provenance}, dim={self.dim}, order={self.order})"

    def coefficient(self, n, i, j):
        return self.hat.coeffs[n][i][j]

    def map(self, fn, roots=None, deltas=None, chart=None) -> "RMatrix":
        return RMatrix(
            self.hat.map(fn),
            self.roots if roots is None else roots,
            self.deltas if deltas is None else deltas,
            self.side,
            self.provenance,
            chart,
        )

    def truncate(self, order) -> "RMatrix":
        return RMatrix(self.hat.truncate(order), self.roots, self.deltas, self.side, self.provenance, self.chart, self.kappa)

    def flat(self) -> SeriesMatrix:
        """M R^ M^{-1}: the same endomorphism in the power basis."""
        m_, minv = change_of_basis(self.roots, self.deltas)
        return self.hat.conjugate(m_, minv)


def change_of_basis(roots, deltas):
    """M (columns prod_{j != i}(X - Q_j)) and M^{-1} (rows Q_i^a / Delta_i)."""
    n = len(roots)
    f = poly_from_roots(roots, roots[0] * 0 + 1)
    m_ = [[None] * n for _ in range(n)]
    for i, qi in enumerate(roots):
        col = synthetic_division(f, qi)
        for a in range(n):
            m_[a][i] = col[a]
    minv = [[qi**a / d for a in range(n)] for qi, d in zip(roots, deltas)]
    return m_, minv


def connection(roots, deltas, diff):
    """(A, B) with A = M^{-1} dM and B = diag(dDelta / (2 Delta)); A_jj = B_jj is asserted."""
    m_, minv = change_of_basis(roots, deltas)
    dm = [[diff(x) for x in row] for row in m_]
    a = mat_mul(minv, dm)
    b = [diff(d) / (2 * d) for d in deltas]
    for j, bj in enumerate(b):
        if not (a[j][j] - bj) == 0:
            raise ArithmeticError("connection diagonal does not match dDelta / 2Delta")
    return a, b


def is_identity_matrix(mat) -> bool:
    return all((x == 1) if i == j else (x == 0) for i, row in enumerate(mat) for j, x in enumerate(row))
