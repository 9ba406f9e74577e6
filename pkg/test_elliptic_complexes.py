#!/usr/bin/env python3
"""
Tests for the length-one and length-two complexes, the exclusion lemma,
cone assembly and the finite Hilbert complex oracle.
"""

import math
import sys
from fractions import Fraction as F

import numpy as np
import pytest

from elliptic_complexes import (UNKNOWN, Complex2Spec, UnknownAssignmentError, complex1_assignment,
                                complex1_sign_table, complex1_spectrum, complex1_value, complex2_assignment,
                                complex2_first_terms, complex2_parameters, complex2_shift, complex2_spectra,
                                complex2_spectrum_source, cone_harmonic_dims, cone_witten_spectrum,
                                ev_odd_match, exclusion_lemma_check, finite_complex_oracle,
                                hilbert_complex_check, in_excluded_set, kappa, kernel_dims)
from link_spectra import circle_link
from numerics import DomainError


def test_kappa():
    assert kappa(3, 1, F(1)) == 0
    assert kappa(5, 1, 1) == 1
    assert kappa(2, 1, F(1, 2)) == F(-1, 4)
    with pytest.raises(DomainError):
        kappa(3, 4, F(1))


def test_complex1_values():
    assert complex1_value(F(0), '-', 'A2', 0) == 4
    assert complex1_value(F(0), '+', 'A1', 0) == 0
    assert complex1_value(F(0), '+', 'B1', 1) == 4
    assert complex1_spectrum(F(0), '-', 'A2', 3, s=2.0).tolist() == [8.0, 16.0, 24.0]


def test_complex1_zero_sits_at_first_odd_index():
    assert complex1_sign_table(F(-1, 2), 'B1', '-')[1] == '0'
    assert complex1_sign_table(F(-1, 2), 'B2', '-')[1] == '0'
    assert complex1_sign_table(F(-1, 2), 'B2', '-')[3] == '+'


def test_complex1_undefined_realization():
    assert set(complex1_sign_table(F(-1), 'A1', '+').values()) == {'?'}
    with pytest.raises(DomainError):
        complex1_value(F(-1), '+', 'A1', 0)
    with pytest.raises(DomainError):
        complex1_value(F(0), '+', 'A1', 1)


def test_complex1_assignment():
    assert complex1_assignment(F(0), 'max').tags == {0: 'A1', 1: 'B1'}
    assert complex1_assignment(F(0), 'min').tags == {0: 'A2', 1: 'B2'}
    assert complex1_assignment(F(1), 'min').tags == {0: 'A1', 1: 'B1'}
    assert complex1_assignment(F(-1), 'max').tags == {0: 'A2', 1: 'B2'}


def test_complex2_assignment():
    assert complex2_assignment(F(0), F(1, 2), 'max', 0) == 'P1'
    assert complex2_assignment(F(0), F(3, 10), 'min', 1) == UNKNOWN
    assert complex2_assignment(F(-1), F(1, 2), 'max', 2) == 'Q2'
    with pytest.raises(DomainError):
        complex2_assignment(F(0), F(1), 'max', 0)
    with pytest.raises(DomainError):
        complex2_assignment(F(0), F(1, 2), 'max', 3)


def test_complex2_parameter_rows():
    rows = complex2_parameters(F(0), F(1, 2))
    w21 = rows['W21']
    assert (w21.sigma, w21.tau, w21.theta) == (F(1), F(1, 2), F(1, 2))
    assert w21.table_valid and w21.predicate_valid
    assert not rows['W12'].table_valid and not rows['W12'].predicate_valid


def test_complex2_spectrum_source():
    assert complex2_spectrum_source(F(1), F(1, 2), 'max', 'odd') == ('W11',)
    assert complex2_spectrum_source(F(1), F(1, 2), 'max', 'ev') == ('P1', 'Q1')
    assert complex2_spectrum_source(F(2, 5), F(3, 10), 'min', 'ev') is None
    assert complex2_spectrum_source(F(0), F(3, 10), 'min', 'ev') == ('P2', 'Q2')


def test_complex2_shift_and_first_terms():
    assert complex2_shift(F(0), F(1, 2), '+', 1) == (-1, 0)
    assert complex2_first_terms(F(0), F(1, 2), 'P1', '+', 0, count=2) == [(0, 0), (2, 4)]
    with pytest.raises(DomainError):
        complex2_first_terms(F(0), F(1, 2), 'P1', '+', 1)


def test_unit_exponent_is_exact():
    spec = Complex2Spec(1.0, F(0), F(1), 1.0, '+')
    spectra = complex2_spectra(spec, 'max', K=5)
    assert spectra[0][0] == pytest.approx(2 * math.sqrt(1.25) - 1)
    assert np.allclose(spectra[1], np.sort(np.concatenate([spectra[0], spectra[2]])))


def test_grey_range_raises():
    spec = Complex2Spec(1.0, F(0), F(3, 10), 1.0, '+')
    with pytest.raises(UnknownAssignmentError):
        complex2_spectra(spec, 'min', K=10, degrees=(1,))


@pytest.mark.parametrize("kappa_value, u", [(F(1), F(1, 2)), (F(-1), F(1, 4))])
def test_even_and_odd_spectra_match(kappa_value, u):
    spec = Complex2Spec(1.0, kappa_value, u, 1.0, '+')
    report = ev_odd_match(spec, 'max')
    assert report.passed, report.deviation


@pytest.mark.parametrize("sign", ['+', '-'])
@pytest.mark.parametrize("kappa_value, u", [(F(1, 2), F(9, 10)), (F(1, 4), F(1, 2)), (F(9, 10), F(9, 10))])
def test_w11_spectrum_converges_near_the_validity_edge(kappa_value, u, sign):
    spec = Complex2Spec(1.0, kappa_value, u, 1.0, sign)
    report = ev_odd_match(spec, 'max', K=60)
    assert report.odd_source == ('W11',)
    assert report.passed, report.deviation


def test_exclusion_lemma():
    good = exclusion_lemma_check(3, F(1, 2))
    assert good.condition and good.avoids and good.equivalent
    bad = exclusion_lemma_check(2, F(1, 2))
    assert not bad.condition and not bad.avoids and bad.equivalent
    assert bad.hits[0] == (0, F(1, 4))
    assert not exclusion_lemma_check(4, F(1)).applicable
    assert in_excluded_set(F(1, 4), F(1, 2))
    assert not in_excluded_set(F(1, 2), F(1, 2))


@pytest.mark.parametrize("sign, choice, expected", [
    ('+', 'max', (1, 0, 0)),
    ('+', 'min', (1, 0, 0)),
    ('-', 'max', (0, 0, 1)),
    ('-', 'min', (0, 0, 1)),
])
def test_cone_over_circle_harmonic_dims(sign, choice, expected):
    assert cone_harmonic_dims((1, 1), 2, F(1), sign, choice).dims == expected


def test_cone_harmonic_dims_needs_full_link():
    with pytest.raises(DomainError):
        cone_harmonic_dims((1, 0, 1), 2, F(1), '+', 'max')


@pytest.mark.parametrize("sign, expected", [('+', (1, 0, 0)), ('-', (0, 0, 1))])
def test_cone_spectrum_kernel_matches_harmonic_dims(sign, expected):
    cone = cone_witten_spectrum(circle_link(cutoff=3), 2, F(1), 1.0, sign, 'max', K=8)
    assert cone.kernel_dims(1.0) == expected
    assert cone.contributions == 2 + 6


def test_kernel_dims():
    assert kernel_dims({0: np.array([0.0, 1.0]), 1: np.array([1e-12, 2.0])}, 1.0) == (1, 1)


def test_hilbert_complex_check():
    zero = hilbert_complex_check([np.zeros((2, 3))])
    assert zero.kernel_dims == (3, 2) and zero.passed
    assert zero.even_positive.size == 0
    scalar = hilbert_complex_check([np.array([[2.0]])])
    assert scalar.kernel_dims == (0, 0)
    assert scalar.even_positive.tolist() == pytest.approx([4.0])
    with pytest.raises(DomainError):
        hilbert_complex_check([np.array([[1.0, 0.0]]), np.array([[1.0]])])


@pytest.mark.parametrize("seed", range(5))
def test_random_complexes_pass_oracle(seed):
    assert finite_complex_oracle(seed).passed


def main():
    from conftest import run_summary
    return run_summary("Elliptic Complex Tests", __file__)


if __name__ == "__main__":
    sys.exit(main())
