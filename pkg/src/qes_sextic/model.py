"""Physical model: the sextic-oscillator matrices and the 1/sqrt(D) split.

The radial problem

    -psi'' + [l(l+1)/r^2 + a r^2 + b r^4 + c r^6] psi = E psi,
    l = k + (D-3)/2,  b = 2*beta*gamma,  c = gamma^2,

with the quadratic coupling tuned to a = beta^2 - gamma*(4N + 2l + 1)
admits N bound states whose energies are the eigenvalues of an N x N
tridiagonal matrix with rational entries (for rational beta, gamma, D):

    sub      A_n = 4*gamma*(n - N)
    diag     B_n = beta*(4n + 2k + D)
    super    C_n = -2*(n+1)*(2n + 2k + D)

Rescaling rows/columns by rho^n with rho = sqrt(D/(2*gamma)), subtracting
beta*D and dividing by 2*sqrt(2*gamma*D) yields, identically in
lambda = 1/sqrt(D),

    H(lambda) = H0 + lambda*H1 + lambda^2*H2

where H0 has subdiagonal -(N-n) and superdiagonal -(n+1), H1 is the
diagonal t*(2n+k) with t = beta/sqrt(2*gamma), and H2 has the single
superdiagonal -(n+1)*(2n+2k).  The expansion terminates: there is no
lambda^3 term.  Energies map back through

    E = beta*D + 2*sqrt(2*gamma*D) * eps = sqrt(2*gamma) * (t*D + 2*sqrt(D)*eps).

All construction here is exact; floating point appears only in the final
energy map and in wavefunction evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exact import ExactMatrix, Scalar, TPoly, as_rational


@dataclass(frozen=True)
class ModelParams:
    """QES block size n, angular momentum k and positive couplings.

    The dimensionless coupling t = beta/sqrt(2*gamma) is irrational in
    general and is kept symbolic throughout the exact layer;
    :meth:`exact_t` returns its rational value when beta^2/(2*gamma)
    happens to be a perfect square of a rational.
    """

    n: int
    k: int
    beta: Fraction
    gamma: Fraction

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError("block size n must be a positive integer")
        if not isinstance(self.k, int) or self.k < 0:
            raise ValueError("angular momentum k must be a non-negative integer")
        object.__setattr__(self, "beta", as_rational(self.beta))
        object.__setattr__(self, "gamma", as_rational(self.gamma))
        if self.beta <= 0:
            raise ValueError("beta must be positive")
        if self.gamma <= 0:
            raise ValueError("gamma must be positive")

    def ell(self, dim: Scalar) -> Fraction:
        """Angular factor l = k + (D-3)/2 (a half-integer for even D)."""
        return self.k + Fraction(as_rational(dim) - 3, 2)

    @property
    def t_squared(self) -> Fraction:
        return self.beta**2 / (2 * self.gamma)

    def exact_t(self) -> Fraction | None:
        """Rational t if beta^2/(2*gamma) is a perfect rational square."""
        sq = self.t_squared
        num, den = sq.numerator, sq.denominator
        rn, rd = math.isqrt(num), math.isqrt(den)
        if rn * rn == num and rd * rd == den:
            return Fraction(rn, rd)
        return None

    def t_float(self) -> float:
        return float(self.beta) / math.sqrt(2.0 * float(self.gamma))


@dataclass(frozen=True)
class PerturbationSplit:
    """The exact two-term split H(lambda) = h0 + lambda*h1 + lambda^2*h2."""

    h0: ExactMatrix
    h1: ExactMatrix
    h2: ExactMatrix
    n: int
    k: int


def qes_coupling(params: ModelParams, dim: Scalar) -> Fraction:
    """Quadratic coupling a = beta^2 - gamma*(4n + 2l + 1) that terminates
    the wavefunction's power series after n terms."""
    d = _check_dim(dim)
    return params.beta**2 - params.gamma * (4 * params.n + 2 * params.k + d - 2)


def qes_matrix(params: ModelParams, dim: Scalar) -> ExactMatrix:
    """The n x n tridiagonal matrix whose eigenvalues are the n exactly
    terminating bound-state energies."""
    d = _check_dim(dim)
    n, k, beta, gamma = params.n, params.k, params.beta, params.gamma
    rows = [[Fraction(0)] * n for _ in range(n)]
    for m in range(n):
        rows[m][m] = beta * (4 * m + 2 * k + d)
        if m >= 1:
            rows[m][m - 1] = 4 * gamma * (m - n)
        if m + 1 < n:
            rows[m][m + 1] = -2 * (m + 1) * (2 * m + 2 * k + d)
    return ExactMatrix(rows)


def general_matrix(
    n_trunc: int, coupling_a: Scalar, params: ModelParams, dim: Scalar
) -> ExactMatrix:
    """Truncation of the un-terminated infinite matrix with a free
    quadratic coupling: subdiagonal gamma*(4m + 2l + 1) + a - beta^2.

    With ``coupling_a = qes_coupling(params, dim)`` the subdiagonal entry
    at row ``params.n`` vanishes exactly, so the matrix is block
    lower-triangular and its spectrum contains that of
    :func:`qes_matrix` for any truncation size >= params.n.
    """
    if not isinstance(n_trunc, int) or n_trunc < 1:
        raise ValueError("truncation size must be a positive integer")
    d = _check_dim(dim)
    a = as_rational(coupling_a)
    k, beta, gamma = params.k, params.beta, params.gamma
    rows = [[Fraction(0)] * n_trunc for _ in range(n_trunc)]
    for m in range(n_trunc):
        rows[m][m] = beta * (4 * m + 2 * k + d)
        if m >= 1:
            rows[m][m - 1] = gamma * (4 * m + 2 * k + d - 2) + a - beta**2
        if m + 1 < n_trunc:
            rows[m][m + 1] = -2 * (m + 1) * (2 * m + 2 * k + d)
    return ExactMatrix(rows)


def perturbation_split(params: ModelParams) -> PerturbationSplit:
    """Exact dimensionless split of the rescaled matrix in powers of
    lambda = 1/sqrt(D); terminates at lambda^2."""
    n, k = params.n, params.k
    zero = TPoly.zero()

    h0 = [[zero] * n for _ in range(n)]
    h1 = [[zero] * n for _ in range(n)]
    h2 = [[zero] * n for _ in range(n)]
    for m in range(n):
        h1[m][m] = TPoly((0, 2 * m + k))
        if m >= 1:
            h0[m][m - 1] = TPoly.constant(m - n)
        if m + 1 < n:
            h0[m][m + 1] = TPoly.constant(-(m + 1))
            h2[m][m + 1] = TPoly.constant(-(m + 1) * (2 * m + 2 * k))
    return PerturbationSplit(
        h0=ExactMatrix(h0), h1=ExactMatrix(h1), h2=ExactMatrix(h2), n=n, k=k
    )


def energy_from_epsilon(eps: float, dim: float, params: ModelParams) -> float:
    """Map a dimensionless eigenvalue back to the physical energy,
    E = beta*D + 2*sqrt(2*gamma*D)*eps.  Floating point by design."""
    d = float(dim)
    if d <= 0:
        raise ValueError("dimension D must be positive")
    return float(params.beta) * d + 2.0 * math.sqrt(
        2.0 * float(params.gamma) * d
    ) * float(eps)


def split_reassembly_residual(params: ModelParams, rho: int) -> ExactMatrix:
    """Exact residual of the split identity at D = 2*gamma*rho^2.

    For integer rho the rescaling factor sqrt(D/(2*gamma)) = rho and the
    energy scale sqrt(2*gamma*D) = 2*gamma*rho are rational, so

        S Q S^-1 - beta*D*I - 2*sqrt(2*gamma*D) * (h0 + lambda*h1 + lambda^2*h2)

    is a rational matrix that must vanish identically.  Returns it.
    """
    if not isinstance(rho, int) or rho < 1:
        raise ValueError("rho must be a positive integer")
    gamma, beta = params.gamma, params.beta
    d = 2 * gamma * rho**2
    q = qes_matrix(params, d)

    # S Q S^-1 with S = diag(rho^j): subdiagonal * rho, superdiagonal / rho
    n = params.n
    rescaled = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            entry = q[i, j].coefficient(0)
            if entry:
                rescaled[i][j] = entry * Fraction(rho) ** (i - j)

    split = perturbation_split(params)
    lam_t = beta / (2 * gamma * rho)  # lambda * t, rational here
    lam_sq = Fraction(1) / d
    h1_num = ExactMatrix(
        [[e.evaluate(lam_t) for e in row] for row in split.h1.rows]
    )
    assembled = split.h0 + h1_num + split.h2 * lam_sq
    scale = 2 * (2 * gamma * rho)  # 2*sqrt(2*gamma*D)
    expected = ExactMatrix.diagonal([beta * d] * n) + assembled * scale
    return ExactMatrix(rescaled) - expected


@dataclass(frozen=True)
class RadialWavefunction:
    """Terminating bound-state wavefunction in the numeric layer.

    psi(r) = sum_n h[n] * r^(2n + ell + 1) * exp(-beta*r^2/2 - gamma*r^4/4)
    """

    h: tuple[float, ...]
    beta: float
    gamma: float
    ell: float

    def value(self, r: float) -> float:
        if r <= 0:
            raise ValueError("radius must be positive")
        envelope = math.exp(-0.5 * self.beta * r * r - 0.25 * self.gamma * r**4)
        poly = 0.0
        for coeff in reversed(self.h):
            poly = poly * r * r + coeff
        return poly * r ** (self.ell + 1.0) * envelope


def _check_dim(dim: Scalar) -> Fraction:
    d = as_rational(dim)
    if d <= 0:
        raise ValueError("dimension D must be positive")
    return d
