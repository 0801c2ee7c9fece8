"""Tests for the model matrices, the lambda-split and the energy map."""

import math
import random
from fractions import Fraction

import pytest

from qes_sextic.exact import ExactMatrix, TPoly
from qes_sextic.model import (
    ModelParams,
    RadialWavefunction,
    energy_from_epsilon,
    general_matrix,
    perturbation_split,
    qes_coupling,
    qes_matrix,
    split_reassembly_residual,
)
from qes_sextic.oracle import qes_spectrum, truncated_spectrum


def params(n=2, k=0, beta=1, gamma=1):
    return ModelParams(n, k, Fraction(beta), Fraction(gamma))


def test_parameter_validation():
    with pytest.raises(ValueError):
        ModelParams(0, 0, Fraction(1), Fraction(1))
    with pytest.raises(ValueError):
        ModelParams(2, -1, Fraction(1), Fraction(1))
    with pytest.raises(ValueError):
        ModelParams(2, 0, Fraction(-1), Fraction(1))
    with pytest.raises(ValueError):
        ModelParams(2, 0, Fraction(1), Fraction(0))
    with pytest.raises(TypeError):
        ModelParams(2, 0, 1.0, Fraction(1))


def test_exact_t_detection():
    # beta^2/(2*gamma) = 1 when beta=1, gamma=1/2
    assert params(beta=1, gamma=Fraction(1, 2)).exact_t() == 1
    assert params(beta=3, gamma=Fraction(1, 2)).exact_t() == 3
    assert params(beta=1, gamma=1).exact_t() is None  # t = 1/sqrt(2)
    assert params(beta=2, gamma=Fraction(9, 8)).exact_t() == Fraction(4, 3)


def test_coupling_values():
    assert qes_coupling(params(2, 0), 3) == -8
    assert qes_coupling(params(1, 0), 3) == -4
    assert qes_coupling(params(6, 2, beta=1, gamma=2), 5) == -61


def test_single_state_matrix():
    for k, beta, d in [(0, 1, 3), (3, 2, 5), (1, Fraction(1, 2), 7)]:
        m = qes_matrix(params(1, k, beta=beta), d)
        assert m.n == 1
        assert m[0, 0] == TPoly.constant(Fraction(beta) * (2 * k + d))


def test_two_state_matrix_entries():
    m = qes_matrix(params(2, 0), 3)
    assert m == ExactMatrix([[3, -6], [-4, 7]])


def test_two_state_eigenvalues_match_quadratic_formula():
    # char poly of [[3,-6],[-4,7]] is E^2 - 10E - 3, roots 5 +/- 2*sqrt(7)
    lo, hi = qes_spectrum(params(2, 0), 3)
    assert lo == pytest.approx(5 - 2 * math.sqrt(7), abs=1e-11)
    assert hi == pytest.approx(5 + 2 * math.sqrt(7), abs=1e-11)


def test_general_matrix_terminating_row_vanishes():
    p = params(3, 1, beta=Fraction(2, 3), gamma=Fraction(5, 4))
    d = Fraction(7, 2)
    a = qes_coupling(p, d)
    g = general_matrix(10, a, p, d)
    assert g[p.n, p.n - 1].is_zero  # exact zero, not small
    # and the terminating block equals the dedicated constructor
    q = qes_matrix(p, d)
    for i in range(p.n):
        for j in range(p.n):
            assert g[i, j] == q[i, j]


def test_general_matrix_equals_qes_matrix_at_same_size():
    p = params(4, 2, beta=2, gamma=3)
    d = 5
    a = qes_coupling(p, d)
    assert general_matrix(4, a, p, d) == qes_matrix(p, d)


def test_truncated_spectrum_contains_terminating_block():
    p = params(2, 0)
    exact_pair = [5 - 2 * math.sqrt(7), 5 + 2 * math.sqrt(7)]
    spectrum = truncated_spectrum(p, 3, 42)
    for value in exact_pair:
        deviation = min(abs(g - value) for g in spectrum) / abs(value)
        assert deviation <= 1e-8


@pytest.mark.parametrize("margin", [0, 20, 40])
def test_embedding_at_several_truncation_margins(margin):
    for n, k, beta, gamma, d in [
        (2, 0, 1, 1, 3),
        (3, 1, 2, Fraction(1, 2), 5),
        (5, 2, Fraction(1, 2), 3, Fraction(7, 2)),
    ]:
        p = params(n, k, beta=beta, gamma=gamma)
        block = qes_spectrum(p, d)
        big = truncated_spectrum(p, d, n + margin)
        for value in block:
            deviation = min(abs(g - value) for g in big)
            assert deviation <= 1e-9 * max(1.0, abs(value))


def test_split_small_cases():
    s = perturbation_split(params(2, 0))
    assert s.h0 == ExactMatrix([[0, -1], [-1, 0]])
    assert s.h1 == ExactMatrix.diagonal([TPoly.zero(), TPoly((0, 2))])
    assert s.h2.is_zero  # superdiagonal entry -(1)*(0) = 0

    s = perturbation_split(params(3, 1))
    t = TPoly.t()
    assert s.h1 == ExactMatrix.diagonal([t, 3 * t, 5 * t])
    assert s.h2[0, 1] == TPoly.constant(-2)
    assert s.h2[1, 2] == TPoly.constant(-8)
    assert s.h2[1, 0].is_zero and s.h2[2, 1].is_zero


def test_split_band_structure():
    p = params(5, 2, beta=3, gamma=Fraction(1, 2))
    s = perturbation_split(p)
    n = p.n
    for i in range(n):
        assert s.h0[i, i].is_zero
        if i >= 1:
            assert s.h0[i, i - 1] == TPoly.constant(-(n - i))
        if i + 1 < n:
            assert s.h0[i, i + 1] == TPoly.constant(-(i + 1))
            assert s.h2[i, i + 1] == TPoly.constant(-(i + 1) * (2 * i + 2 * p.k))
        assert s.h1[i, i] == TPoly((0, 2 * i + p.k))
        assert s.h1[i, i].degree <= 1


def test_split_reassembly_is_exactly_zero():
    cases = [
        (params(2, 0), 1),
        (params(2, 0), 2),
        (params(4, 2, beta=Fraction(3, 2), gamma=2), 2),
        (params(6, 1, beta=Fraction(1, 3), gamma=Fraction(5, 4)), 3),
        (params(3, 0, beta=5, gamma=Fraction(7, 3)), 4),
    ]
    for p, rho in cases:
        assert split_reassembly_residual(p, rho).is_zero


def test_reassembled_split_reproduces_numeric_spectrum():
    # fixes all sign conventions: assemble h0 + lam*h1 + lam^2*h2 at
    # D=100, map eigenvalues through the energy formula and compare with
    # the spectrum of the physical matrix
    from qes_sextic.oracle import TridiagonalReal, tridiagonal_spectrum

    p = params(4, 0)
    d = 100
    lam = 1.0 / math.sqrt(d)
    t0 = p.t_float()
    s = perturbation_split(p)
    n = p.n

    diag = [s.h1[i, i].evaluate_float(t0) * lam for i in range(n)]
    lower = [s.h0[i + 1, i].evaluate_float(t0) for i in range(n - 1)]
    upper = [
        s.h0[i, i + 1].evaluate_float(t0)
        + s.h2[i, i + 1].evaluate_float(t0) * lam * lam
        for i in range(n - 1)
    ]
    eps_values = tridiagonal_spectrum(
        TridiagonalReal(tuple(diag), tuple(lower), tuple(upper))
    )
    mapped = [energy_from_epsilon(e, d, p) for e in eps_values]
    reference = qes_spectrum(p, d)
    for got, want in zip(mapped, reference):
        assert got == pytest.approx(want, abs=1e-12 * max(1.0, abs(want)))


def test_energy_map_at_origin():
    assert energy_from_epsilon(0.0, 4.0, params(1, 0)) == pytest.approx(4.0)


def test_energy_map_single_state_exact_solvability():
    # the 1x1 block has eigenvalue beta*(2k+D); eps = 0 at k = 0
    p = params(1, 0, beta=Fraction(3, 2))
    assert energy_from_epsilon(0.0, 6.0, p) == pytest.approx(9.0)
    assert qes_spectrum(p, 6)[0] == pytest.approx(9.0, abs=1e-12)


def test_energy_map_rejects_bad_dimension():
    with pytest.raises(ValueError):
        energy_from_epsilon(0.0, -1.0, params())


def test_offdiagonal_products_strictly_positive():
    rng = random.Random(555)
    for _ in range(30):
        p = ModelParams(
            rng.randint(2, 9),
            rng.randint(0, 4),
            Fraction(rng.randint(1, 20), rng.randint(1, 10)),
            Fraction(rng.randint(1, 20), rng.randint(1, 10)),
        )
        d = Fraction(rng.randint(1, 30), rng.randint(1, 4))
        q = qes_matrix(p, d)
        for i in range(1, p.n):
            product = q[i, i - 1].coefficient(0) * q[i - 1, i].coefficient(0)
            assert product > 0


def test_wavefunction_single_term_value():
    wf = RadialWavefunction(h=(1.0,), beta=1.0, gamma=1.0, ell=0.0)
    assert wf.value(1.0) == pytest.approx(math.exp(-0.75))


def test_wavefunction_leading_power_scaling():
    wf = RadialWavefunction(h=(1.0, 0.0), beta=1.0, gamma=1.0, ell=2.0)
    for r in (1e-3, 1e-4, 1e-5):
        assert wf.value(r) / r ** (wf.ell + 1) == pytest.approx(1.0, rel=1e-5)


def test_wavefunction_requires_positive_radius():
    wf = RadialWavefunction(h=(1.0,), beta=1.0, gamma=1.0, ell=0.0)
    with pytest.raises(ValueError):
        wf.value(0.0)
