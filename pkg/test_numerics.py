#!/usr/bin/env python3
"""
Tests for the numerical kernel: Jacobi eigensolver, Gauss-Laguerre rules,
the Stieltjes procedure and exact rationals.
"""

import math
import sys
from fractions import Fraction

import numpy as np
import pytest
from scipy.special import gamma, roots_genlaguerre

from numerics import (DomainError, PrecisionError, SymMatrix, gauss_laguerre, half_line_moment,
                      parse_rational, rational_range, require_rational, stieltjes_recurrence, sym_eigen)


def test_sym_eigen_diagonal():
    values, vectors = sym_eigen(np.diag([3.0, -1.0, 2.0]))
    assert values.tolist() == [-1.0, 2.0, 3.0]
    assert np.allclose(np.abs(vectors), np.eye(3)[:, [1, 2, 0]])


def test_sym_eigen_matches_lapack():
    rng = np.random.default_rng(7)
    a = rng.standard_normal((12, 12))
    m = SymMatrix.symmetrized(a)
    values, vectors = sym_eigen(m)
    assert np.allclose(values, np.linalg.eigvalsh(m.entries), atol=1e-10)
    assert np.allclose(vectors.T @ vectors, np.eye(12), atol=1e-10)
    assert np.allclose(vectors @ np.diag(values) @ vectors.T, m.entries, atol=1e-10)


def test_sym_matrix_rejects_bad_input():
    with pytest.raises(DomainError):
        SymMatrix(np.array([[1.0, 2.0], [0.0, 1.0]]))
    with pytest.raises(DomainError):
        SymMatrix(np.zeros((0, 0)))
    with pytest.raises(DomainError):
        SymMatrix(np.array([[np.nan]]))


def test_gauss_laguerre_is_exact_on_polynomials():
    rule = gauss_laguerre(0.5, 5, s=2.0)
    expected = gamma(4.5) / 2.0 ** 4.5
    assert rule.integrate(lambda t: t ** 3) == pytest.approx(expected, rel=1e-12)


def test_gauss_laguerre_matches_scipy_nodes():
    rule = gauss_laguerre(0.3, 10)
    nodes, weights = roots_genlaguerre(10, 0.3)
    assert np.allclose(rule.nodes, nodes, rtol=1e-12)
    assert np.allclose(rule.weights, weights, rtol=1e-10)


def test_gauss_laguerre_domain():
    with pytest.raises(DomainError):
        gauss_laguerre(-1.0, 4)
    with pytest.raises(DomainError):
        gauss_laguerre(0.0, 4, s=0.0)
    with pytest.raises(PrecisionError):
        gauss_laguerre(0.0, 400)


def test_half_line_moment():
    assert half_line_moment(0.0, 1.0) == pytest.approx(math.sqrt(math.pi) / 2)
    assert half_line_moment(1.0, 2.0) == pytest.approx(0.25)
    with pytest.raises(DomainError):
        half_line_moment(-1.0, 1.0)


def test_stieltjes_on_gaussian_moments():
    # weight e^{-x^2} on R: odd moments vanish, even ones are Gamma(j + 1/2)
    def moment(j):
        return 0 if j % 2 else Fraction(math.factorial(2 * (j // 2)), 4 ** (j // 2) * math.factorial(j // 2))

    betas = stieltjes_recurrence(moment, 6)
    assert betas == pytest.approx([k / 2 for k in range(1, 7)], rel=1e-12)


def test_require_rational():
    assert require_rational(3) == Fraction(3)
    assert require_rational("3/4") == Fraction(3, 4)
    with pytest.raises(TypeError):
        require_rational(0.5)
    with pytest.raises(TypeError):
        require_rational(True)


@pytest.mark.parametrize("text, expected", [
    ("3/4", Fraction(3, 4)),
    ("−1/2", Fraction(-1, 2)),
    (" 7 ", Fraction(7)),
])
def test_parse_rational(text, expected):
    assert parse_rational(text) == expected


@pytest.mark.parametrize("text", ["0.5", "1e3", "", "1/0", "abc"])
def test_parse_rational_refuses(text):
    with pytest.raises(DomainError):
        parse_rational(text)


def test_rational_range():
    grid = rational_range(0, 1, "1/4")
    assert grid == [Fraction(i, 4) for i in range(5)]
    with pytest.raises(DomainError):
        rational_range(1, 0, "1/4")


def main():
    from conftest import run_summary
    return run_summary("Numerics Tests", __file__)


if __name__ == "__main__":
    sys.exit(main())
