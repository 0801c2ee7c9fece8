"""Tests for the floating-point cross-check solver."""

import math
import random
from fractions import Fraction

import pytest

from qes_sextic.kac import kac_involution, kac_matrix
from qes_sextic.model import ModelParams, qes_coupling, qes_matrix
from qes_sextic.oracle import (
    TridiagonalReal,
    bisection_eigenvalues,
    inverse_iteration,
    qes_spectrum,
    radial_wavefunction,
    symmetrize,
    tridiagonal_spectrum,
)


def test_symmetrize_example():
    m = TridiagonalReal(diag=(3.0, 7.0), lower=(-4.0,), upper=(-6.0,))
    diag, off = symmetrize(m)
    assert diag == (3.0, 7.0)
    assert off == (math.sqrt(24.0),)


def test_symmetrize_keeps_symmetric_input():
    m = TridiagonalReal(diag=(1.0, 2.0, 3.0), lower=(0.5, 0.25), upper=(0.5, 0.25))
    diag, off = symmetrize(m)
    assert diag == (1.0, 2.0, 3.0)
    assert off == (0.5, 0.25)


def test_symmetrize_rejects_nonpositive_products():
    with pytest.raises(ValueError):
        symmetrize(TridiagonalReal(diag=(0.0, 0.0), lower=(0.0,), upper=(1.0,)))
    with pytest.raises(ValueError):
        symmetrize(TridiagonalReal(diag=(0.0, 0.0), lower=(-1.0,), upper=(1.0,)))


def test_bisection_two_by_two():
    values = bisection_eigenvalues((0.0, 0.0), (1.0,), 1e-12)
    assert values[0] == pytest.approx(-1.0, abs=1e-12)
    assert values[1] == pytest.approx(1.0, abs=1e-12)


def test_bisection_on_limit_matrix():
    m = TridiagonalReal.from_exact(kac_matrix(4))
    values = tridiagonal_spectrum(m, 1e-12)
    for got, want in zip(values, (-3.0, -1.0, 1.0, 3.0)):
        assert got == pytest.approx(want, abs=1e-11)


def test_bisection_matches_dense_reference():
    # reference: eigenvalues as roots of the characteristic polynomial
    # computed by bisection on its sign changes (independent of the
    # Sturm-count implementation)
    rng = random.Random(808)
    for _ in range(10):
        n = rng.randint(2, 7)
        diag = tuple(rng.uniform(-5, 5) for _ in range(n))
        off = tuple(rng.uniform(0.2, 3.0) for _ in range(n - 1))

        def charpoly(x):
            p_prev, p = 1.0, diag[0] - x
            for i in range(1, n):
                p_prev, p = p, (diag[i] - x) * p - off[i - 1] ** 2 * p_prev
            return p

        got = bisection_eigenvalues(diag, off, 1e-10)
        for value in got:
            assert abs(charpoly(value)) <= 1e-5 * max(
                1.0, abs(charpoly(value + 1.0)), abs(charpoly(value - 1.0))
            )
        # count and separation: n simple roots
        assert len(got) == n
        for a, b in zip(got, got[1:]):
            assert b - a > 1e-9


def test_spectrum_is_simple_for_model_matrices():
    for n, k in ((2, 0), (4, 1), (6, 2)):
        p = ModelParams(n, k, Fraction(1), Fraction(1))
        values = qes_spectrum(p, 5, 1e-12)
        assert len(values) == n
        for a, b in zip(values, values[1:]):
            assert b - a > 1e-6


def test_block_splitting_at_zero_coupling():
    # lower*upper == 0 decouples the spectrum into blocks
    m = TridiagonalReal(
        diag=(1.0, 2.0, 10.0, 11.0),
        lower=(0.5, 0.0, 0.5),
        upper=(0.5, 3.0, 0.5),
    )
    got = tridiagonal_spectrum(m, 1e-12)
    upper_left = bisection_eigenvalues((1.0, 2.0), (0.5,), 1e-12)
    lower_right = bisection_eigenvalues((10.0, 11.0), (0.5,), 1e-12)
    for a, b in zip(got, sorted(upper_left + lower_right)):
        assert a == pytest.approx(b, abs=1e-11)


def test_tridiagonal_spectrum_rejects_negative_products():
    m = TridiagonalReal(diag=(0.0, 0.0), lower=(1.0,), upper=(-1.0,))
    with pytest.raises(ValueError):
        tridiagonal_spectrum(m)


def test_characteristic_polynomial_preserved_by_symmetrization():
    # exact char-poly coefficients of the rational matrix vs the float
    # recurrence on the symmetrized data; the recurrence only sees the
    # off-diagonal products, which symmetrization preserves
    for n, k in ((2, 0), (3, 1), (4, 0), (5, 2)):
        p = ModelParams(n, k, Fraction(1), Fraction(1))
        q = qes_matrix(p, 7)

        exact = [Fraction(1)]  # leading coefficient of p_0
        polys = [[Fraction(1)], [-q[0, 0].coefficient(0), Fraction(1)]]
        for i in range(1, n):
            d = q[i, i].coefficient(0)
            prod = q[i, i - 1].coefficient(0) * q[i - 1, i].coefficient(0)
            nxt = [Fraction(0)] * (i + 2)
            for m_idx, c in enumerate(polys[-1]):
                nxt[m_idx + 1] += c
                nxt[m_idx] += -d * c
            for m_idx, c in enumerate(polys[-2]):
                nxt[m_idx] += -prod * c
            polys.append(nxt)
        exact = polys[-1]

        tri = TridiagonalReal.from_exact(q)
        diag, off = symmetrize(tri)
        numeric = [1.0]
        prev, curr = [1.0], [-diag[0], 1.0]
        for i in range(1, n):
            nxt = [0.0] * (i + 2)
            for m_idx, c in enumerate(curr):
                nxt[m_idx + 1] += c
                nxt[m_idx] += -diag[i] * c
            for m_idx, c in enumerate(prev):
                nxt[m_idx] += -(off[i - 1] ** 2) * c
            prev, curr = curr, nxt
        numeric = curr

        for ec, nc in zip(exact, numeric):
            assert nc == pytest.approx(float(ec), rel=1e-10, abs=1e-10)


def test_inverse_iteration_single_state():
    m = TridiagonalReal(diag=(5.0,), lower=(), upper=())
    assert inverse_iteration(m, 5.0) == [1.0]


def test_inverse_iteration_limit_matrix_direction():
    m = TridiagonalReal.from_exact(kac_matrix(3))
    vec = inverse_iteration(m, 2.0)
    expected = [1.0 / math.sqrt(6), 2.0 / math.sqrt(6), 1.0 / math.sqrt(6)]
    for got, want in zip(vec, expected):
        assert got == pytest.approx(want, abs=1e-9)


def test_inverse_iteration_residual_bound():
    p = ModelParams(2, 0, Fraction(1), Fraction(1))
    m = TridiagonalReal.from_exact(qes_matrix(p, 3))
    eigenvalue = qes_spectrum(p, 3)[0]
    vec = inverse_iteration(m, eigenvalue)
    applied = m.apply(vec)
    residual = math.sqrt(
        sum((a - eigenvalue * v) ** 2 for a, v in zip(applied, vec))
    )
    assert residual <= 1e-10 * m.inf_norm()


def test_eigenvector_matches_exact_column():
    # the limit matrix has exactly known integer eigenvectors
    dec = kac_involution(5)
    m = TridiagonalReal.from_exact(dec.t_matrix)
    for j, z in enumerate(dec.z):
        vec = inverse_iteration(m, float(z))
        column = [float(dec.m[i, j].coefficient(0)) for i in range(5)]
        norm = math.sqrt(sum(c * c for c in column))
        column = [c / norm for c in column]
        # compare up to overall sign
        direct = max(abs(g - w) for g, w in zip(vec, column))
        flipped = max(abs(g + w) for g, w in zip(vec, column))
        assert min(direct, flipped) <= 1e-9


def test_single_state_spectrum_exact():
    p = ModelParams(1, 2, Fraction(5, 2), Fraction(1))
    assert qes_spectrum(p, 9)[0] == pytest.approx(float(Fraction(5, 2) * 13), abs=1e-12)


def test_wavefunction_residual_against_radial_equation():
    # finite-difference residual of the second-order ODE at sampled radii,
    # relative to the size of the equation's individual terms
    p = ModelParams(2, 0, Fraction(1), Fraction(1))
    d = 3
    wf, energy = radial_wavefunction(p, d, state=0)
    a = float(qes_coupling(p, d))
    b = 2.0 * float(p.beta) * float(p.gamma)
    c = float(p.gamma) ** 2
    ell = wf.ell

    h = 2.5e-4
    worst_rel = 0.0
    for r in [0.5 + 0.1 * i for i in range(16)]:
        psi = wf.value(r)
        second = (wf.value(r + h) - 2.0 * psi + wf.value(r - h)) / (h * h)
        potential = ell * (ell + 1) / (r * r) + a * r**2 + b * r**4 + c * r**6
        residual = -second + potential * psi - energy * psi
        scale = max(abs(second), abs(potential * psi), abs(energy * psi))
        worst_rel = max(worst_rel, abs(residual) / scale)
    assert worst_rel <= 1e-6


def test_wavefunction_coefficients_solve_exact_system():
    # h must satisfy the terminating three-term recursion: Q h = E h
    p = ModelParams(4, 1, Fraction(1), Fraction(2))
    wf, energy = radial_wavefunction(p, 5, state=2)
    m = TridiagonalReal.from_exact(qes_matrix(p, 5))
    applied = m.apply(list(wf.h))
    for got, hv in zip(applied, wf.h):
        assert got == pytest.approx(energy * hv, abs=1e-8)
