"""The exactly solvable infinite-dimension core.

The limiting eigenproblem is governed by a Kac-type tridiagonal matrix T
(zero diagonal, subdiagonal N-n, superdiagonal n+1) whose spectrum is the
integer arithmetic sequence -N+1, -N+3, ..., N-1.  Its eigenvector matrix
P is an involution, P^2 = I; column j holds the coefficients of
(1+x)^(N-1-j) * (1-x)^j, and P = M / 2^((N-1)/2) with M integer.  Storing
(M, scale power) keeps every downstream combination rational: P X P is
always evaluated as M X M / 2^(N-1).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .exact import ExactMatrix


def kac_matrix(n: int) -> ExactMatrix:
    """Tridiagonal integer matrix with zero diagonal, subdiagonal n-i,
    superdiagonal i+1 at row i."""
    _check_size(n)
    rows = [[0] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = n - i
    for i in range(n - 1):
        rows[i][i + 1] = i + 1
    return ExactMatrix(rows)


def kac_eigenvalues(n: int) -> tuple[int, ...]:
    """Eigenvalues of :func:`kac_matrix`, descending: n-1, n-3, ..., -n+1."""
    _check_size(n)
    return tuple(n - 1 - 2 * j for j in range(n))


@dataclass(frozen=True)
class KacDecomposition:
    """Exact eigendecomposition of the Kac-type matrix.

    ``m`` is the integer eigenvector matrix; the involution is
    ``m / 2^(scale_pow / 2)`` and satisfies ``m @ m == 2^scale_pow * I``.
    Column j of ``m`` is a right eigenvector for eigenvalue ``z[j]`` and
    row j a left eigenvector for the same value.
    """

    n: int
    t_matrix: ExactMatrix
    z: tuple[int, ...]
    m: ExactMatrix
    scale_pow: int

    def conjugate(self, x: ExactMatrix) -> ExactMatrix:
        """Rational similarity P X P computed as M X M / 2^(n-1)."""
        from fractions import Fraction

        return (self.m @ x @ self.m) * Fraction(1, 2**self.scale_pow)


def kac_involution(n: int) -> KacDecomposition:
    """Build the integer eigenvector matrix and its eigenvalue list."""
    _check_size(n)
    columns = [_eigenvector_column(n, j) for j in range(n)]
    rows = [[columns[j][i] for j in range(n)] for i in range(n)]
    return KacDecomposition(
        n=n,
        t_matrix=kac_matrix(n),
        z=kac_eigenvalues(n),
        m=ExactMatrix(rows),
        scale_pow=n - 1,
    )


def _eigenvector_column(n: int, j: int) -> list[int]:
    # coefficients of (1+x)^(n-1-j) * (1-x)^j, degree n-1
    a, b = n - 1 - j, j
    out = [0] * n
    for i in range(a + 1):
        ca = comb(a, i)
        for s in range(b + 1):
            out[i + s] += ca * comb(b, s) * (-1) ** s
    return out


def _check_size(n: int):
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"matrix size must be a positive integer, got {n!r}")
